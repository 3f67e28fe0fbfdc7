//! Finite monoids given by multiplication tables.

use crate::bitset::BitSet;

use super::{LangError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteMonoid {
    /// Validates the table, the identity and associativity.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(LangError::MonoidLaw("a monoid has at least one element".into()));
        }
        if labels.len() != n {
            return Err(LangError::MonoidLaw(format!("{} labels for {} elements", labels.len(), n)));
        }
        if identity >= n {
            return Err(LangError::MonoidLaw(format!("identity {identity} out of range")));
        }
        if let Some(r) = table.iter().position(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(LangError::MonoidLaw(format!("row {r} is malformed")));
        }
        let m = FiniteMonoid { labels, table, identity };
        m.check_laws()?;
        Ok(m)
    }

    /// Construction from a table already known to satisfy the laws.
    pub(crate) fn new_unchecked(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Self {
        FiniteMonoid { labels, table, identity }
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.len();
        let label = |i: usize| &self.labels[i];
        for a in 0..n {
            if self.table[self.identity][a] != a || self.table[a][self.identity] != a {
                return Err(LangError::MonoidLaw(format!("{} is not neutral for {}", label(self.identity), label(a))));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a][b];
                for c in 0..n {
                    if self.table[ab][c] != self.table[a][self.table[b][c]] {
                        return Err(LangError::MonoidLaw(format!(
                            "({}{}){} differs from {}({}{})",
                            label(a),
                            label(b),
                            label(c),
                            label(a),
                            label(b),
                            label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Z/nZ` with labels `0..n`.
    pub fn cyclic_group(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMonoid::new_unchecked((0..n).map(|i| i.to_string()).collect(), table, 0)
    }

    pub fn trivial() -> Self {
        FiniteMonoid::new_unchecked(vec!["1".into()], vec![vec![0]], 0)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn product<'a>(&self, elems: impl IntoIterator<Item = &'a usize>) -> usize {
        elems.into_iter().fold(self.identity, |acc, &x| self.table[acc][x])
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.table[acc][a])
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.table[a][a] == a
    }

    /// The unique idempotent among the powers `a, a², …`.
    pub fn omega_power(&self, a: usize) -> usize {
        let mut p = a;
        for _ in 0..=self.len() {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.table[p][a];
        }
        unreachable!("every element of a finite monoid has an idempotent power")
    }

    pub fn set_product(&self, x: &BitSet, y: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.len());
        for a in x.iter() {
            for b in y.iter() {
                out.insert(self.table[a][b]);
            }
        }
        out
    }

    /// `N\Q = {m | n·m ∈ Q for all n ∈ N}`.
    pub fn left_residual(&self, n: &BitSet, q: &BitSet) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&m| n.iter().all(|x| q.contains(self.table[x][m]))))
    }

    /// `Q/N = {m | m·n ∈ Q for all n ∈ N}`.
    pub fn right_residual(&self, q: &BitSet, n: &BitSet) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&m| n.iter().all(|x| q.contains(self.table[m][x]))))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.len()).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Checks that `map` is a monoid morphism into `target`; reports a
    /// failing pair, or `None` for the identity.
    pub fn check_homomorphism(&self, target: &FiniteMonoid, map: &[usize]) -> std::result::Result<(), Option<(usize, usize)>> {
        if map[self.identity] != target.identity {
            return Err(None);
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                if map[self.table[a][b]] != target.table[map[a]][map[b]] {
                    return Err(Some((a, b)));
                }
            }
        }
        Ok(())
    }
}
