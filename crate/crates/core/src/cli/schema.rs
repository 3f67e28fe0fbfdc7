//! JSON documents printed under `--format json`.
//!
//! Every document deserializes back into the same struct and serializes to
//! the same bytes, so downstream tools can parse, edit and feed them back.

use serde::{Deserialize, Serialize};

use crate::lang::io::{DfaJson, MonoidJson, MorphismJson};
use crate::resalg::io::ResAlgJson;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualOutput {
    /// `K\L`
    pub left: DfaJson,
    /// `L/K`
    pub right: DfaJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonFunctionalJson {
    pub x: usize,
    pub y: usize,
    pub maximal: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualOutput {
    pub algebra: ResAlgJson,
    pub atom_labels: Vec<String>,
    pub functional: bool,
    pub witness: Option<NonFunctionalJson>,
    /// The monoid read off a functional relation; atoms index its elements.
    pub monoid: Option<MonoidJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealOutput {
    pub algebra: ResAlgJson,
    pub member_labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisOutput {
    pub direction: String,
    pub points: usize,
    pub sets: Vec<Vec<usize>>,
    /// Pairs `[x, y]` with `x ⪯ y`, reflexive pairs omitted.
    pub order: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub equation: String,
    /// The equation after `--assign` substitution.
    pub instance: String,
    pub holds: bool,
    pub lhs: usize,
    pub lhs_label: String,
    pub rhs: usize,
    pub rhs_label: String,
    pub context: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutput {
    pub morphism: MorphismJson,
    pub verdicts: Vec<VerdictJson>,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalOutput {
    pub term: String,
    pub element: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefineOutput {
    pub joint: MorphismJson,
    /// `projections[i][m]`: the element of `factors[i]` under joint element `m`.
    pub projections: Vec<Vec<usize>>,
    pub factors: Vec<MorphismJson>,
}
