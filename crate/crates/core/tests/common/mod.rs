//! Fixtures and brute-force reference checks shared by the integration
//! targets. Nothing here calls the library's closure or duality code paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dualis::bitset::BitSet;
use dualis::lang::{syntactic_morphism, Alphabet, RegularLanguage};
use dualis::resalg::{generate_residuation_ideal, FiniteResAlg, TernaryRel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Expression tree kept next to its text so tests can match words against
/// it by backtracking instead of through automata.
#[derive(Debug, Clone)]
pub enum Re {
    Empty,
    Eps,
    Sym(char),
    Alt(Box<Re>, Box<Re>),
    Cat(Box<Re>, Box<Re>),
    Star(Box<Re>),
    Plus(Box<Re>),
}

impl Re {
    pub fn text(&self) -> String {
        match self {
            Re::Empty => "0".into(),
            Re::Eps => "1".into(),
            Re::Sym(c) => c.to_string(),
            Re::Alt(a, b) => format!("({}|{})", a.text(), b.text()),
            Re::Cat(a, b) => format!("({}{})", a.text(), b.text()),
            Re::Star(a) => format!("({})*", a.text()),
            Re::Plus(a) => format!("({})+", a.text()),
        }
    }

    /// Positions `j` such that `w[i..j]` matches.
    pub fn ends(&self, w: &[char], i: usize) -> BTreeSet<usize> {
        match self {
            Re::Empty => BTreeSet::new(),
            Re::Eps => BTreeSet::from([i]),
            Re::Sym(c) => (w.get(i) == Some(c)).then_some(i + 1).into_iter().collect(),
            Re::Alt(a, b) => a.ends(w, i).union(&b.ends(w, i)).copied().collect(),
            Re::Cat(a, b) => a.ends(w, i).into_iter().flat_map(|j| b.ends(w, j)).collect(),
            Re::Star(a) => {
                let mut reach = BTreeSet::from([i]);
                let mut frontier = vec![i];
                while let Some(j) = frontier.pop() {
                    for k in a.ends(w, j) {
                        if reach.insert(k) {
                            frontier.push(k);
                        }
                    }
                }
                reach
            }
            Re::Plus(a) => a.ends(w, i).into_iter().flat_map(|j| Re::Star(a.clone()).ends(w, j)).collect(),
        }
    }

    pub fn matches(&self, w: &[char]) -> bool {
        self.ends(w, 0).contains(&w.len())
    }
}

/// A random expression over `letters` with at most `depth` nested operators.
pub fn random_re(rng: &mut ChaCha8Rng, letters: &[char], depth: usize) -> Re {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..12) {
            0 => Re::Eps,
            1 => Re::Empty,
            _ => Re::Sym(letters[rng.gen_range(0..letters.len())]),
        };
    }
    let a = Box::new(random_re(rng, letters, depth - 1));
    match rng.gen_range(0..5) {
        0 => Re::Alt(a, Box::new(random_re(rng, letters, depth - 1))),
        1 | 2 => Re::Cat(a, Box::new(random_re(rng, letters, depth - 1))),
        3 => Re::Star(a),
        _ => Re::Plus(a),
    }
}

/// A random language whose minimal DFA has at most `max_states` states.
pub fn random_language(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_states: usize) -> (Re, RegularLanguage) {
    loop {
        let re = random_re(rng, alphabet.symbols(), 4);
        let l = RegularLanguage::parse(&re.text(), alphabet).expect("generated expressions parse");
        if l.state_count() <= max_states {
            return (re, l);
        }
    }
}

pub fn lang(re: &str, alphabet: &str) -> RegularLanguage {
    RegularLanguage::parse(re, &Alphabet::parse(alphabet).unwrap()).unwrap()
}

/// All set partitions of `0..n`, blocks as sorted vectors.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            go(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        go(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// The Boolean sub-algebra of `c` whose atoms are the unions of the blocks,
/// as the list of its members (element-level sets).
pub fn coarsening_members(c: &FiniteResAlg, blocks: &[Vec<usize>]) -> Vec<BitSet> {
    let n = c.monoid_size();
    let block_sets: Vec<BitSet> = blocks
        .iter()
        .map(|b| b.iter().fold(BitSet::empty(n), |acc, &x| acc.union(&c.atoms()[x])))
        .collect();
    (0u64..(1 << block_sets.len()))
        .map(|mask| {
            (0..block_sets.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(BitSet::empty(n), |acc, i| acc.union(&block_sets[i]))
        })
        .collect()
}

pub fn coarsening_atoms(c: &FiniteResAlg, blocks: &[Vec<usize>]) -> Vec<BitSet> {
    let n = c.monoid_size();
    blocks.iter().map(|b| b.iter().fold(BitSet::empty(n), |acc, &x| acc.union(&c.atoms()[x]))).collect()
}

/// `n\q` straight from the multiplication table.
fn left_res(c: &FiniteResAlg, d: &BitSet, q: &BitSet) -> BitSet {
    let m = c.morphism().monoid();
    let n = m.len();
    BitSet::from_indices(n, (0..n).filter(|&x| d.iter().all(|y| q.contains(m.table()[y][x]))))
}

fn right_res(c: &FiniteResAlg, q: &BitSet, d: &BitSet) -> BitSet {
    let m = c.morphism().monoid();
    let n = m.len();
    BitSet::from_indices(n, (0..n).filter(|&x| d.iter().all(|y| q.contains(m.table()[x][y]))))
}

/// Every member of `outer` as divisor, every member of `sub` as numerator.
pub fn brute_is_residuation_ideal(sub: &[BitSet], outer: &[BitSet], c: &FiniteResAlg) -> bool {
    let s: BTreeSet<&BitSet> = sub.iter().collect();
    let closed = sub.iter().all(|a| sub.iter().all(|b| s.contains(&a.union(b)) && s.contains(&a.intersection(b))));
    closed
        && outer.iter().all(|d| {
            sub.iter().all(|q| s.contains(&left_res(c, d, q)) && s.contains(&right_res(c, q, d)))
        })
}

/// `x ⪯ y` iff every set in `family` holding `y` holds `x`.
pub fn brute_theory(points: usize, family: &[BitSet]) -> Vec<Vec<bool>> {
    (0..points)
        .map(|x| (0..points).map(|y| family.iter().all(|a| !a.contains(y) || a.contains(x))).collect())
        .collect()
}

pub fn brute_is_congruence(q: &[Vec<bool>], r: &TernaryRel) -> bool {
    let k = r.points();
    let extends = (0..k).all(|x| (0..k).all(|y| !r.order.leq(x, y) || q[x][y]));
    extends
        && r.triples.iter().all(|&[x, y, z]| {
            (0..k).filter(|&x2| q[x][x2]).all(|x2| {
                (0..k).filter(|&y2| q[y][y2]).all(|y2| (0..k).any(|z2| q[z][z2] && r.contains(x2, y2, z2)))
            })
        })
}

/// Residuation-closed Boolean algebras with at most four atoms: the
/// residuation ideals generated by each subset of small syntactic monoids,
/// deduplicated.
pub fn algebra_pool() -> Vec<(String, FiniteResAlg)> {
    let specs = [
        ("(aaa)*", "a"),
        ("(aa)*", "a"),
        ("a", "a"),
        ("aa", "a"),
        ("a*", "ab"),
        ("(a|b)*a", "ab"),
        ("a(a|b)*", "ab"),
        ("(a|b)*ab(a|b)*", "ab"),
        ("a*b*", "ab"),
        ("(ab)*", "ab"),
        ("((a|b)(a|b))*", "ab"),
        ("(a|b)*a(a|b)", "ab"),
    ];
    let mut pool: Vec<(String, FiniteResAlg)> = Vec::new();
    for (re, a) in specs {
        let eta = syntactic_morphism(&lang(re, a));
        let n = eta.monoid().len();
        if n > 8 {
            continue;
        }
        for mask in 0u64..(1 << n) {
            let g = BitSet::from_mask(n, mask);
            let c = generate_residuation_ideal(std::slice::from_ref(&g), &eta).unwrap();
            if c.atom_count() <= 4 && !pool.iter().any(|(_, d)| *d == c) {
                pool.push((format!("{re} over {{{a}}}, generator {g}"), c));
            }
        }
    }
    pool
}
