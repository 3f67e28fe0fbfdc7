//! Isomorphism search and exhaustive enumeration for small posets.
//!
//! Isomorphisms are found by backtracking over candidate images, pruned by
//! a per-element fingerprint (number of elements below and above). Inputs of
//! up to eight elements are in practice searched exhaustively; the
//! fingerprints keep larger inputs tractable.

use super::{FinLattice, Poset};

fn fingerprint(p: &Poset, i: usize) -> (usize, usize) {
    let n = p.len();
    let down = (0..n).filter(|&j| p.leq(j, i)).count();
    let up = (0..n).filter(|&j| p.leq(i, j)).count();
    (down, up)
}

/// An order isomorphism `a -> b` as an index map, if one exists.
pub fn poset_isomorphism(a: &Poset, b: &Poset) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let fa: Vec<_> = (0..n).map(|i| fingerprint(a, i)).collect();
    let fb: Vec<_> = (0..n).map(|i| fingerprint(b, i)).collect();
    let mut sa = fa.clone();
    let mut sb = fb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        i: usize,
        a: &Poset,
        b: &Poset,
        fa: &[(usize, usize)],
        fb: &[(usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == a.len() {
            return true;
        }
        for c in 0..b.len() {
            if used[c] || fa[i] != fb[c] {
                continue;
            }
            let consistent = (0..i).all(|j| a.leq(i, j) == b.leq(c, map[j]) && a.leq(j, i) == b.leq(map[j], c));
            if !consistent {
                continue;
            }
            map[i] = c;
            used[c] = true;
            if extend(i + 1, a, b, fa, fb, map, used) {
                return true;
            }
            used[c] = false;
        }
        false
    }
    extend(0, a, b, &fa, &fb, &mut map, &mut used).then_some(map)
}

pub fn lattice_isomorphism(a: &FinLattice, b: &FinLattice) -> Option<Vec<usize>> {
    poset_isomorphism(&a.as_poset(), &b.as_poset())
}

/// Every partial order on `0..n` (labeled), by filtering all strict relations.
/// Exhaustive, so only meant for `n <= 4`.
pub fn all_posets(n: usize) -> Vec<Poset> {
    assert!(n <= 4, "all_posets is exhaustive over 2^(n(n-1)) relations");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel = |i: usize, j: usize| {
            i == j || pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| mask >> k & 1 == 1)
        };
        if let Ok(p) = Poset::from_fn(n, rel) {
            out.push(p);
        }
    }
    out
}
