//! JSON dump and DOT export for residuation algebras.
//!
//! JSON: `{"morphism":{…},"carrier":[[…],…],"atoms":[[…],…],"relation":[[x,y,z],…]}`
//! where sets are sorted lists of monoid element indices (atoms and carrier
//! in bit order) and relation triples index the atoms.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::lang::io::MorphismJson;

use super::{dual_relation, FiniteResAlg, ResAlgError, Result, TernaryRel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResAlgJson {
    pub morphism: MorphismJson,
    pub carrier: Vec<Vec<usize>>,
    pub atoms: Vec<Vec<usize>>,
    pub relation: Vec<[usize; 3]>,
}

impl ResAlgJson {
    pub fn from_alg(c: &FiniteResAlg) -> Result<Self> {
        Ok(ResAlgJson {
            morphism: MorphismJson::from_morphism(c.morphism()),
            carrier: c.carrier()?.iter().map(BitSet::to_vec).collect(),
            atoms: c.atoms().iter().map(BitSet::to_vec).collect(),
            relation: dual_relation(c).triples.into_iter().collect(),
        })
    }

    /// Rebuilds the algebra from morphism and carrier, then checks that the
    /// stored atoms and relation match the recomputed ones.
    pub fn to_alg(&self) -> Result<FiniteResAlg> {
        let eta = self.morphism.to_morphism()?;
        let n = eta.monoid().len();
        let mut members = Vec::with_capacity(self.carrier.len());
        for m in &self.carrier {
            if let Some(&x) = m.iter().find(|&&x| x >= n) {
                return Err(ResAlgError::NotMember(format!("element {x} out of range")));
            }
            members.push(BitSet::from_indices(n, m.iter().copied()));
        }
        let alg = FiniteResAlg::from_family(eta, &members)?;
        let again = ResAlgJson::from_alg(&alg)?;
        if again.atoms != self.atoms {
            return Err(ResAlgError::NotPartition("stored atoms differ from the carrier's atoms".into()));
        }
        if again.relation != self.relation || again.carrier != self.carrier {
            return Err(ResAlgError::NotMember("stored relation or carrier order differs from the recomputed one".into()));
        }
        Ok(alg)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per point, one edge `x → z` labelled `y` per triple.
pub fn relation_dot(r: &TernaryRel, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    for x in 0..r.points() {
        writeln!(out, "  p{x} [label=\"{}\"];", escape(r.label(x))).unwrap();
    }
    for &[x, y, z] in &r.triples {
        writeln!(out, "  p{x} -> p{z} [label=\"{}\"];", escape(r.label(y))).unwrap();
    }
    out.push_str("}\n");
    out
}
