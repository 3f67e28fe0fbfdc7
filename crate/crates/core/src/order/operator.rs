//! Complete operators on down-set lattices and their dual relations.
//!
//! An `n`-ary operator `f` on the down-sets of `X` corresponds to the
//! `(n+1)`-ary relation `R_f = {(x̄, x) | x ∈ f(↓x₁, …, ↓xₙ)}` and back via
//! `f_R(U₁, …, Uₙ) = R[U₁, …, Uₙ, _]`. Coordinates are 0-based here.

use std::collections::BTreeSet;

use crate::bitset::BitSet;

use super::{OrderError, Poset, Result};

/// An `(arity + 1)`-ary relation on a poset; the last entry is the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRelation {
    poset: Poset,
    arity: usize,
    tuples: BTreeSet<Vec<usize>>,
}

/// Every vector in `0..k` of length `n`, in lexicographic order.
pub(crate) fn product_indices(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..k).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

impl OrderRelation {
    pub fn new(poset: Poset, arity: usize, tuples: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let n = poset.len();
        let tuples: BTreeSet<Vec<usize>> = tuples.into_iter().collect();
        if let Some(t) = tuples.iter().find(|t| t.len() != arity + 1 || t.iter().any(|&x| x >= n)) {
            return Err(OrderError::BadTuple(t.clone()));
        }
        Ok(OrderRelation { poset, arity, tuples })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &BTreeSet<Vec<usize>> {
        &self.tuples
    }

    pub fn contains(&self, t: &[usize]) -> bool {
        self.tuples.contains(t)
    }

    /// Checks closure under raising an input or lowering the output by one
    /// order step; all larger moves are compositions of these.
    pub fn check_order_compatible(&self) -> Result<()> {
        let n = self.poset.len();
        for t in &self.tuples {
            for c in 0..=self.arity {
                for y in 0..n {
                    let allowed = if c < self.arity {
                        self.poset.leq(t[c], y)
                    } else {
                        self.poset.leq(y, t[c])
                    };
                    if !allowed {
                        continue;
                    }
                    let mut moved = t.clone();
                    moved[c] = y;
                    if !self.tuples.contains(&moved) {
                        return Err(OrderError::NotOrderCompatible { tuple: t.clone(), moved });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_order_compatible(&self) -> bool {
        self.check_order_compatible().is_ok()
    }

    /// `R[U₁, …, Uₙ, _]`: outputs related to some tuple drawn from the `Uᵢ`.
    pub fn image(&self, args: &[BitSet]) -> BitSet {
        assert_eq!(args.len(), self.arity);
        let mut out = BitSet::empty(self.poset.len());
        for t in &self.tuples {
            if t[..self.arity].iter().zip(args).all(|(&x, u)| u.contains(x)) {
                out.insert(t[self.arity]);
            }
        }
        out
    }
}

fn describe(args: &[BitSet]) -> String {
    args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
}

/// Dual relation of a join-preserving operator on the down-sets of `poset`.
pub fn operator_to_relation(
    poset: &Poset,
    arity: usize,
    f: impl Fn(&[BitSet]) -> BitSet,
) -> Result<OrderRelation> {
    let downsets = poset.downsets();
    let k = downsets.len();
    let n = poset.len();
    let all_args = product_indices(k, arity);
    let eval = |ix: &[usize]| {
        let args: Vec<BitSet> = ix.iter().map(|&i| downsets[i].clone()).collect();
        (f(&args), args)
    };
    for ix in &all_args {
        let (v, args) = eval(ix);
        if !poset.is_downset(&v) {
            return Err(OrderError::NotDownset(format!("f({}) = {}", describe(&args), v)));
        }
    }
    let empty_index = downsets.iter().position(|d| d.is_empty()).expect("∅ is a down-set");
    for c in 0..arity {
        for ix in &all_args {
            let (base, args) = eval(ix);
            if ix[c] == empty_index && !base.is_empty() {
                return Err(OrderError::NotJoinPreserving {
                    coordinate: c,
                    witness: format!("f({}) = {} but the empty join must give ∅", describe(&args), base),
                });
            }
            for other in 0..k {
                let mut jx = ix.clone();
                jx[c] = other;
                let (v2, _) = eval(&jx);
                let joined = downsets[ix[c]].union(&downsets[other]);
                let mut kx = ix.clone();
                kx[c] = downsets.iter().position(|d| *d == joined).expect("union of down-sets");
                let (vj, argsj) = eval(&kx);
                if vj != base.union(&v2) {
                    return Err(OrderError::NotJoinPreserving {
                        coordinate: c,
                        witness: format!(
                            "f({}) = {} differs from the join {} of the split values",
                            describe(&argsj),
                            vj,
                            base.union(&v2)
                        ),
                    });
                }
            }
        }
    }
    let mut tuples = Vec::new();
    for xs in product_indices(n, arity) {
        let args: Vec<BitSet> = xs.iter().map(|&x| poset.principal_downset(x)).collect();
        let v = f(&args);
        for x in v.iter() {
            let mut t = xs.clone();
            t.push(x);
            tuples.push(t);
        }
    }
    OrderRelation::new(poset.clone(), arity, tuples)
}

/// `f_R`: the complete operator dual to an order-compatible relation.
#[derive(Debug, Clone)]
pub struct RelationalOperator {
    rel: OrderRelation,
}

impl RelationalOperator {
    pub fn arity(&self) -> usize {
        self.rel.arity
    }

    pub fn apply(&self, args: &[BitSet]) -> BitSet {
        self.rel.image(args)
    }

    pub fn relation(&self) -> &OrderRelation {
        &self.rel
    }
}

pub fn relation_to_operator(rel: &OrderRelation) -> Result<RelationalOperator> {
    rel.check_order_compatible()?;
    Ok(RelationalOperator { rel: rel.clone() })
}

/// Upper residual of `f_R` in one coordinate.
///
/// `apply` takes `n` down-sets where position `slot` holds the bound `c`;
/// the result `r` satisfies `f_R(…, a, …) ⊆ c ⟺ a ⊆ r`.
#[derive(Debug, Clone)]
pub struct Residual {
    rel: OrderRelation,
    slot: usize,
}

impl Residual {
    pub fn slot(&self) -> usize {
        self.slot
    }

    pub fn apply(&self, args: &[BitSet]) -> BitSet {
        let arity = self.rel.arity;
        assert_eq!(args.len(), arity);
        let outside = args[self.slot].complement();
        let mut blocked = BitSet::empty(self.rel.poset.len());
        for t in &self.rel.tuples {
            let others_ok = (0..arity).filter(|&j| j != self.slot).all(|j| args[j].contains(t[j]));
            if others_ok && outside.contains(t[arity]) {
                blocked.insert(t[self.slot]);
            }
        }
        blocked.complement()
    }
}

pub fn residual_op(rel: &OrderRelation, slot: usize) -> Result<Residual> {
    if slot >= rel.arity {
        return Err(OrderError::BadCoordinate { coordinate: slot, arity: rel.arity });
    }
    rel.check_order_compatible()?;
    Ok(Residual { rel: rel.clone(), slot })
}
