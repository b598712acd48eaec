//! The two wild degree functions with computable witnesses, and the unique
//! expansion in products of the iterated squares `F_i`.

mod construction_a;
mod construction_b;
mod expand;

use serde::Serialize;
use thiserror::Error;

use crate::degfun::DegreeError;
use crate::fields::FieldError;
use crate::laurent::LaurentError;
use crate::poly::PolyError;
use crate::value::GroupValue;

pub use construction_a::{ASeries, ConstructionA, GenericCheckRow, DEFAULT_A_TERMS};
pub use construction_b::{BConfig, BSeries, CheckRecord, ConstructionB, MonoidReport, NegativeDegreeElement};
pub use expand::{expand, f_sequence, reconstruct, Expansion, ExpansionTerm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WildError {
    #[error("construction failed at step {step}: {reason}")]
    Construction { step: usize, reason: String },
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("expansion needs {needed} values a_i, got {given}")]
    InsufficientA { needed: usize, given: usize },
    #[error("cannot expand the zero polynomial")]
    ZeroInput,
}

impl From<LaurentError> for WildError {
    fn from(e: LaurentError) -> Self {
        WildError::Degree(e.into())
    }
}

impl WildError {
    pub fn is_precision(&self) -> bool {
        matches!(self, WildError::Degree(d) if d.is_precision())
    }
}

/// One row of a divergence witness: `deg g`, `deg Dg` and `δ_D(g)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessRow {
    #[serde(rename = "p_or_n")]
    pub index: usize,
    pub deg: GroupValue,
    #[serde(rename = "degD")]
    pub deg_d: GroupValue,
    pub delta: GroupValue,
}

impl WitnessRow {
    fn new(index: usize, deg: GroupValue, deg_d: GroupValue) -> Self {
        let delta = deg_d.checked_sub(&deg).unwrap_or(GroupValue::NegInfinity);
        Self { index, deg, deg_d, delta }
    }
}
