//! Finite posets, finite distributive lattices and their discrete duality.
//!
//! A finite distributive lattice is represented concretely; its dual is the
//! poset of join-irreducible elements, and the lattice is recovered as the
//! down-sets of that poset (see [`birkhoff`]). Join-preserving operations on
//! down-set lattices correspond to order-compatible relations on the poset
//! ([`operator`]), and bounded sublattices correspond to quasiorders
//! extending the order ([`galois`]).

pub mod birkhoff;
pub mod galois;
pub mod io;
pub mod iso;
pub mod operator;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitset::BitSet;

pub use birkhoff::{birkhoff_iso, downset_lattice, join_irreducibles, BirkhoffIso, DownsetLattice, JoinIrreducibles};
pub use galois::{is_bounded_sublattice, models_of_pairs, theory_of_family};
pub use iso::{lattice_isomorphism, poset_isomorphism};
pub use operator::{operator_to_relation, relation_to_operator, residual_op, OrderRelation, RelationalOperator, Residual};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("order matrix has {rows} rows (or ragged rows) for {labels} labels")]
    Dimension { labels: usize, rows: usize },
    #[error("order is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("order is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("lattice has no elements")]
    EmptyLattice,
    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(usize, usize),
    #[error("elements {0} and {1} have no greatest lower bound")]
    NoMeet(usize, usize),
    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
    #[error("quasiorder does not extend the base order at ({0}, {1})")]
    NotExtending(usize, usize),
    #[error("operation is not join-preserving in coordinate {coordinate}: {witness}")]
    NotJoinPreserving { coordinate: usize, witness: String },
    #[error("operation value is not a down-set: {0}")]
    NotDownset(String),
    #[error("relation is not order-compatible: {tuple:?} in R but {moved:?} is not")]
    NotOrderCompatible { tuple: Vec<usize>, moved: Vec<usize> },
    #[error("tuple {0:?} has wrong length or out-of-range entries")]
    BadTuple(Vec<usize>),
    #[error("coordinate {coordinate} out of range for arity {arity}")]
    BadCoordinate { coordinate: usize, arity: usize },
    #[error("Birkhoff map fails: {0}")]
    Birkhoff(String),
}

pub type Result<T> = std::result::Result<T, OrderError>;

fn check_square(n: usize, m: &[Vec<bool>]) -> Result<()> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(OrderError::Dimension { labels: n, rows: m.len() });
    }
    Ok(())
}

fn check_preorder(m: &[Vec<bool>]) -> Result<()> {
    let n = m.len();
    for i in 0..n {
        if !m[i][i] {
            return Err(OrderError::NotReflexive(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !m[i][j] {
                continue;
            }
            for k in 0..n {
                if m[j][k] && !m[i][k] {
                    return Err(OrderError::NotTransitive(i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// A finite partially ordered set. `leq[i][j]` means element `i` is below `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        check_square(labels.len(), &leq)?;
        check_preorder(&leq)?;
        let n = labels.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(OrderError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    /// Poset on `0..n` with labels `"0"`, `"1"`, ... from an order predicate.
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let m = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        Poset::new(labels, m)
    }

    pub fn antichain(n: usize) -> Self {
        Poset::from_fn(n, |i, j| i == j).expect("antichain is a poset")
    }

    pub fn chain(n: usize) -> Self {
        Poset::from_fn(n, |i, j| i <= j).expect("chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn principal_downset(&self, i: usize) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&j| self.leq[j][i]))
    }

    pub fn principal_upset(&self, i: usize) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&j| self.leq[i][j]))
    }

    pub fn is_downset(&self, s: &BitSet) -> bool {
        s.iter().all(|i| self.principal_downset(i).is_subset(s))
    }

    /// All down-sets, sorted in numeric bit-set order.
    pub fn downsets(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut all: BTreeSet<BitSet> = BTreeSet::new();
        all.insert(BitSet::empty(n));
        for i in 0..n {
            let p = self.principal_downset(i);
            let extra: Vec<BitSet> = all.iter().map(|d| d.union(&p)).collect();
            all.extend(extra);
        }
        all.into_iter().collect()
    }

    /// Cover pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |i: usize, j: usize| i != j && self.leq[i][j];
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A reflexive, transitive relation on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quasiorder {
    rel: Vec<Vec<bool>>,
}

impl Quasiorder {
    pub fn new(rel: Vec<Vec<bool>>) -> Result<Self> {
        check_square(rel.len(), &rel)?;
        check_preorder(&rel)?;
        Ok(Quasiorder { rel })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Quasiorder::new((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    }

    pub fn discrete(n: usize) -> Self {
        Quasiorder::from_fn(n, |i, j| i == j).expect("equality is a quasiorder")
    }

    pub fn total(n: usize) -> Self {
        Quasiorder::from_fn(n, |_, _| true).expect("total relation is a quasiorder")
    }

    pub fn of_poset(p: &Poset) -> Self {
        Quasiorder { rel: p.leq.clone() }
    }

    /// Reflexive-transitive closure of a set of pairs on `0..n`.
    pub fn closure_of(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            rel[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        Quasiorder { rel }
    }

    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.rel[i][j]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.rel
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.rel[i][j]).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.rel[i][j] == self.rel[j][i]))
    }

    pub fn check_extends(&self, base: &Poset) -> Result<()> {
        check_square(base.len(), &self.rel)?;
        for i in 0..base.len() {
            for j in 0..base.len() {
                if base.leq(i, j) && !self.rel[i][j] {
                    return Err(OrderError::NotExtending(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn extends(&self, base: &Poset) -> bool {
        self.check_extends(base).is_ok()
    }

    /// Is `s` closed downward along the quasiorder?
    pub fn is_downset(&self, s: &BitSet) -> bool {
        s.iter().all(|y| (0..self.len()).all(|x| !self.rel[x][y] || s.contains(x)))
    }

    /// Equivalence classes of `≼ ∩ ≽`, ordered by least member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let block: Vec<usize> = (0..n).filter(|&j| self.rel[i][j] && self.rel[j][i]).collect();
            for &j in &block {
                seen[j] = true;
            }
            out.push(block);
        }
        out
    }

    /// Block index of every point, matching [`Quasiorder::blocks`].
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (b, block) in self.blocks().iter().enumerate() {
            for &i in block {
                out[i] = b;
            }
        }
        out
    }
}

/// A finite lattice with its order and derived join/meet tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinLattice {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    distributive: bool,
}

impl FinLattice {
    /// Validates the order, derives join and meet, and checks distributivity.
    /// With `require_distributive`, a failing triple is an error.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>, require_distributive: bool) -> Result<Self> {
        let poset = Poset::new(labels, leq)?;
        let n = poset.len();
        if n == 0 {
            return Err(OrderError::EmptyLattice);
        }
        let le = |a: usize, b: usize| poset.leq(a, b);
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let ub: Vec<usize> = (0..n).filter(|&u| le(a, u) && le(b, u)).collect();
                join[a][b] = *ub
                    .iter()
                    .find(|&&u| ub.iter().all(|&v| le(u, v)))
                    .ok_or(OrderError::NoJoin(a, b))?;
                let lb: Vec<usize> = (0..n).filter(|&l| le(l, a) && le(l, b)).collect();
                meet[a][b] = *lb
                    .iter()
                    .find(|&&l| lb.iter().all(|&v| le(v, l)))
                    .ok_or(OrderError::NoMeet(a, b))?;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| le(b, x))).ok_or(OrderError::NoMeet(0, 0))?;
        let top = (0..n).find(|&t| (0..n).all(|x| le(x, t))).ok_or(OrderError::NoJoin(0, 0))?;
        let mut witness = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                        witness = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        if let (true, Some((a, b, c))) = (require_distributive, witness) {
            return Err(OrderError::NotDistributive(a, b, c));
        }
        let Poset { labels, leq } = poset;
        Ok(FinLattice { labels, leq, join, meet, bottom, top, distributive: witness.is_none() })
    }

    /// The lattice of the given subsets ordered by inclusion.
    pub fn of_sets(labels: Vec<String>, sets: &[BitSet], require_distributive: bool) -> Result<Self> {
        let leq = sets.iter().map(|a| sets.iter().map(|b| a.is_subset(b)).collect()).collect();
        FinLattice::new(labels, leq, require_distributive)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    pub fn as_poset(&self) -> Poset {
        Poset { labels: self.labels.clone(), leq: self.leq.clone() }
    }
}
