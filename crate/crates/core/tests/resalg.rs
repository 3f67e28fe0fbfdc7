mod common;

use common::*;
use dualis::bitset::BitSet;
use dualis::lang::{syntactic_morphism, FiniteMonoid};
use dualis::resalg::io::ResAlgJson;
use dualis::resalg::{
    audit_residuation_closure, dual_boolean_map, dual_relation, extract_monoid, generate_residuation_ideal,
    is_functional, is_residuation_ideal, FiniteResAlg,
};

/// Pool algebras together with the residuation-ideal coarsenings of each.
fn ideal_pairs() -> Vec<(String, FiniteResAlg, FiniteResAlg)> {
    let mut out = Vec::new();
    for (name, c) in algebra_pool() {
        for blocks in set_partitions(c.atom_count()) {
            if !is_residuation_ideal(&coarsening_members(&c, &blocks), &c).unwrap() {
                continue;
            }
            let sub = FiniteResAlg::from_partition(c.morphism().clone(), coarsening_atoms(&c, &blocks)).unwrap();
            out.push((name.clone(), c.clone(), sub));
        }
    }
    out
}

#[test]
fn relation_matches_set_products() {
    for (name, c) in algebra_pool() {
        let r = dual_relation(&c);
        let m = c.morphism().monoid();
        let atoms = c.atoms();
        for x in 0..atoms.len() {
            for y in 0..atoms.len() {
                let xy = m.set_product(&atoms[x], &atoms[y]);
                for z in 0..atoms.len() {
                    assert_eq!(r.contains(x, y, z), xy.intersects(&atoms[z]), "{name} at ({x}, {y}, {z})");
                }
            }
        }
        r.check_order_compatible().unwrap();
    }
}

#[test]
fn extracted_monoid_follows_the_relation() {
    for (name, c) in algebra_pool() {
        let r = dual_relation(&c);
        let em = extract_monoid(&c).unwrap();
        let m = &em.monoid;
        assert_eq!(m.len(), c.atom_count(), "{name}");
        assert!(c.atoms()[m.identity()].contains(c.morphism().monoid().identity()), "{name}");
        for x in 0..m.len() {
            for y in 0..m.len() {
                assert_eq!(r.outputs(x, y), vec![m.mul(x, y)], "{name}");
            }
        }
    }
}

#[test]
fn generated_ideals_are_closed() {
    for (name, c) in algebra_pool() {
        assert!(c.is_residuation_closed().unwrap(), "{name}");
        assert_eq!(audit_residuation_closure(&c, 1 << 16).unwrap(), None, "{name}");
    }
}

#[test]
fn generators_belong_to_their_ideal() {
    let eta = syntactic_morphism(&lang("(a|b)*ab(a|b)*", "ab"));
    let n = eta.monoid().len();
    for mask in 0u64..(1 << n) {
        let g = BitSet::from_mask(n, mask);
        let c = generate_residuation_ideal(std::slice::from_ref(&g), &eta).unwrap();
        assert!(c.contains(&g));
        // the ideal is the least one: any ideal coarsening of it that still
        // holds g is all of it
        for blocks in set_partitions(c.atom_count()) {
            let sub = coarsening_members(&c, &blocks);
            if blocks.len() < c.atom_count() && sub.contains(&g) {
                assert!(!is_residuation_ideal(&sub, &c).unwrap(), "smaller ideal holds {g}");
            }
        }
    }
}

#[test]
fn residuals_inside_an_ideal_agree() {
    let pairs = ideal_pairs();
    assert!(!pairs.is_empty());
    for (name, c, sub) in pairs {
        assert!(is_functional(&dual_relation(&sub)).is_functional(), "{name}");
        for a in sub.carrier().unwrap() {
            for q in sub.carrier().unwrap() {
                let inner = sub.residuals_in(&a, &q).unwrap();
                assert_eq!(inner, c.residuals_in(&a, &q).unwrap(), "{name}");
                assert!(sub.contains(&inner.0) && sub.contains(&inner.1), "{name}");
            }
        }
    }
}

/// Every monoid morphism between two small monoids.
fn homomorphisms(from: &FiniteMonoid, to: &FiniteMonoid) -> Vec<Vec<usize>> {
    let (n, k) = (from.len(), to.len());
    let mut out = Vec::new();
    let mut map = vec![0; n];
    loop {
        if from.check_homomorphism(to, &map).is_ok() {
            out.push(map.clone());
        }
        let mut i = 0;
        while i < n && map[i] + 1 == k {
            map[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        map[i] += 1;
    }
}

#[test]
fn dual_maps_are_lax_for_residuals() {
    let pool = algebra_pool();
    let mut maps = 0;
    for (_, b) in pool.iter().take(12) {
        let mb = extract_monoid(b).unwrap().monoid;
        for (_, c) in pool.iter().take(12) {
            let mc = extract_monoid(c).unwrap().monoid;
            let members = c.carrier().unwrap();
            for phi in homomorphisms(&mb, &mc) {
                maps += 1;
                let h = |q: &BitSet| dual_boolean_map(&phi, &c.atoms_of(q).unwrap());
                for c1 in &members {
                    for c2 in &members {
                        let lhs = h(&c.residuals_in(c1, c2).unwrap().0);
                        let rhs = b.atoms_of(&b.residuals_in(&b.union_of_atoms(&h(c1)), &b.union_of_atoms(&h(c2))).unwrap().0);
                        assert!(lhs.is_subset(&rhs.unwrap()));
                    }
                }
            }
        }
    }
    assert!(maps > 12);
}

#[test]
fn algebra_json_round_trips() {
    for (name, c) in algebra_pool() {
        let js = ResAlgJson::from_alg(&c).unwrap();
        let text = serde_json::to_string_pretty(&js).unwrap();
        let back: ResAlgJson = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text, "{name}");
        assert_eq!(back.to_alg().unwrap(), c, "{name}");
    }
}
