//! Degree functions `deg: B -> G ∪ {-inf}` and the machinery built on them:
//! the jump `δ_D`, tame formulas for `deg(D)`, and the associated graded
//! maps `gr` and `gr(D)`.

mod axioms;
mod localized;
mod pullback;
pub mod sample;

use serde::Serialize;
use thiserror::Error;

use crate::fields::Field;
use crate::laurent::LaurentError;
use crate::poly::{Derivation, Poly, PolyError, Weighting};
use crate::value::GroupValue;

pub use axioms::{check_axioms, sample_rng, AxiomConfig, AxiomFailure, AxiomReport, JumpFn, SampleError, RNG_NAME};
pub use localized::{delta_localized, localized_derivation, LocalizedElem, Localized};
pub use pullback::{FixedSeries, LaurentPullback, SeriesSource};

/// Iteration cap for local nilpotency checks.
pub const DEFAULT_LND_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DegreeError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("iteration cap {cap} reached: derivation not shown to be locally nilpotent")]
    NotNilpotent { cap: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("generator {index} is not homogeneous")]
    NonHomogeneous { index: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl DegreeError {
    /// True when the failure came from exhausting series precision.
    pub fn is_precision(&self) -> bool {
        matches!(self, DegreeError::Laurent(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum DegreeKind {
    Graded,
    Laurent,
    Lnd,
    Localized,
}

pub trait DegreeFunction<E>: Sync {
    fn kind(&self) -> DegreeKind;
    fn degree(&self, x: &E) -> Result<GroupValue, DegreeError>;
}

/// Ring operations needed by the axiom harness.
pub trait RingElem: Clone + Send + Sync {
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn render(&self) -> String;
}

impl<F: Field> RingElem for Poly<F> {
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// The degree function of a grading: the largest weight of a monomial.
#[derive(Clone, Debug)]
pub struct Graded {
    weighting: Weighting,
}

impl Graded {
    pub fn new(weighting: Weighting) -> Self {
        Self { weighting }
    }

    pub fn weighting(&self) -> &Weighting {
        &self.weighting
    }
}

impl<F: Field> DegreeFunction<Poly<F>> for Graded {
    fn kind(&self) -> DegreeKind {
        DegreeKind::Graded
    }

    fn degree(&self, f: &Poly<F>) -> Result<GroupValue, DegreeError> {
        f.check_var_count(self.weighting.var_count())?;
        Ok(self.weighting.degree(f))
    }
}

/// `deg_Δ(f) = max{n : Δ^n f != 0}` for a locally nilpotent `Δ`.
#[derive(Clone)]
pub struct Lnd<F> {
    delta: Derivation<F>,
    cap: usize,
}

impl<F: Field> Lnd<F> {
    /// Fails unless every variable is killed by `Δ^n` for some `n <= cap`.
    pub fn new(delta: Derivation<F>, cap: usize) -> Result<Self, DegreeError> {
        if !delta.is_locally_nilpotent_within(cap)? {
            return Err(DegreeError::NotNilpotent { cap });
        }
        Ok(Self { delta, cap })
    }

    pub fn derivation(&self) -> &Derivation<F> {
        &self.delta
    }
}

impl<F: Field> DegreeFunction<Poly<F>> for Lnd<F> {
    fn kind(&self) -> DegreeKind {
        DegreeKind::Lnd
    }

    fn degree(&self, f: &Poly<F>) -> Result<GroupValue, DegreeError> {
        match self.delta.nilpotency_index(f, self.cap)? {
            Some(0) => Ok(GroupValue::NegInfinity),
            Some(n) => Ok(GroupValue::int(n as i64 - 1)),
            None => Err(DegreeError::NotNilpotent { cap: self.cap }),
        }
    }
}

/// `δ_D(f) = deg(Df) - deg(f)`, with `δ_D(0) = -inf`.
pub fn delta<F: Field, DF: DegreeFunction<Poly<F>> + ?Sized>(
    df: &DF,
    d: &Derivation<F>,
    f: &Poly<F>,
) -> Result<GroupValue, DegreeError> {
    if f.is_zero() {
        return Ok(GroupValue::NegInfinity);
    }
    let image = d.apply(f)?;
    if image.is_zero() {
        return Ok(GroupValue::NegInfinity);
    }
    let top = df.degree(&image)?;
    let base = df.degree(f)?;
    Ok(top.checked_sub(&base).expect("nonzero element has finite degree"))
}

/// Result of a tame formula: `deg(D)` and the generator attaining it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TameCertificate {
    pub value: GroupValue,
    /// Index into the generator list, `None` when every jump is `-inf`.
    pub argmax: Option<usize>,
    /// `δ_D` of each generator in order.
    pub deltas: Vec<GroupValue>,
}

impl TameCertificate {
    fn from_deltas(deltas: Vec<GroupValue>) -> Self {
        let value = GroupValue::max_of(&deltas);
        let argmax = if value.is_neg_infinity() { None } else { deltas.iter().position(|d| *d == value) };
        Self { value, argmax, deltas }
    }
}

fn check_homogeneous<F: Field>(w: &Weighting, gens: &[Poly<F>], offset: usize) -> Result<(), DegreeError> {
    for (i, g) in gens.iter().enumerate() {
        match w.homogeneous_degree(g) {
            Some(d) if d.is_finite() => {}
            _ => return Err(DegreeError::NonHomogeneous { index: offset + i }),
        }
    }
    Ok(())
}

/// `deg(D) = max δ_D` over the generators `zs ++ xs` of a graded ring.
///
/// `xs` must be homogeneous and generate the ring over its degree-0 part;
/// `zs` generate the degree-0 part up to algebraic closure. The latter is
/// the caller's responsibility.
pub fn deg_of_derivation_graded<F: Field>(
    w: &Weighting,
    zs: &[Poly<F>],
    xs: &[Poly<F>],
    d: &Derivation<F>,
) -> Result<TameCertificate, DegreeError> {
    check_homogeneous(w, zs, 0)?;
    check_homogeneous(w, xs, zs.len())?;
    let df = Graded::new(w.clone());
    let deltas = zs.iter().chain(xs).map(|g| delta(&df, d, g)).collect::<Result<Vec<_>, _>>()?;
    Ok(TameCertificate::from_deltas(deltas))
}

/// `deg_Δ(D) = max{δ_D(z_1), ..., δ_D(z_m), δ_D(t)}` where `Δt != 0`,
/// `Δ²t = 0` and `ker Δ` is algebraic over the `z_i` (asserted, not checked).
/// Generators are reported in the order `zs ++ [t]`.
pub fn deg_of_derivation_lnd<F: Field>(
    lnd: &Derivation<F>,
    t: &Poly<F>,
    zs: &[Poly<F>],
    d: &Derivation<F>,
) -> Result<TameCertificate, DegreeError> {
    let df = Lnd::new(lnd.clone(), DEFAULT_LND_CAP)?;
    let dt = lnd.apply(t)?;
    if dt.is_zero() {
        return Err(DegreeError::Precondition("Δ(t) = 0".into()));
    }
    if !lnd.apply(&dt)?.is_zero() {
        return Err(DegreeError::Precondition("Δ²(t) ≠ 0".into()));
    }
    for (i, z) in zs.iter().enumerate() {
        if !lnd.apply(z)?.is_zero() {
            return Err(DegreeError::Precondition(format!("generator {i} is not in ker Δ")));
        }
    }
    let deltas = zs.iter().chain(std::iter::once(t)).map(|g| delta(&df, d, g)).collect::<Result<Vec<_>, _>>()?;
    Ok(TameCertificate::from_deltas(deltas))
}

/// `deg(D) = max_i δ_D(X_i)` on `k[X_1..X_n]` graded by possibly negative
/// weights, as for a ring between `k[X]` and `k[X^{±1}]`.
pub fn deg_of_derivation_laurent_sandwich<F: Field>(
    w: &Weighting,
    d: &Derivation<F>,
) -> Result<TameCertificate, DegreeError> {
    if d.var_count() != w.var_count() {
        return Err(PolyError::VarCountMismatch { expected: w.var_count(), found: d.var_count() }.into());
    }
    let n = w.var_count();
    let vars: Vec<Poly<F>> = (0..n).map(|i| Poly::var(n, i)).collect();
    deg_of_derivation_graded(w, &[], &vars, d)
}

/// The image of `f` in the associated graded ring: its top homogeneous component.
pub fn gr<F: Field>(w: &Weighting, f: &Poly<F>) -> Poly<F> {
    w.leading_form(f)
}

/// The homogeneous derivation `gr(D)`: each `X_i` goes to the degree
/// `w_i + deg(D)` component of `D(X_i)`.
pub fn gr_derivation<F: Field>(w: &Weighting, d: &Derivation<F>) -> Result<Derivation<F>, DegreeError> {
    let cert = deg_of_derivation_laurent_sandwich(w, d)?;
    let n = w.var_count();
    if cert.value.is_neg_infinity() {
        return Ok(Derivation::zero(n));
    }
    let images = (0..n)
        .map(|i| w.homogeneous_component(d.image(i), &w.weights()[i].add(&cert.value)))
        .collect();
    Ok(Derivation::new(images)?)
}

/// Outcome of sampling `δ_D` against a claimed `deg(D)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct OracleReport {
    pub checked: usize,
    /// Sample indices where `δ_D(f)` exceeded the bound.
    pub violations: Vec<usize>,
    /// Sample indices whose jump equals the bound.
    pub attained: Vec<usize>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `δ_D(f) <= bound` on every sample.
pub fn oracle_check<F: Field, DF: DegreeFunction<Poly<F>> + ?Sized>(
    df: &DF,
    d: &Derivation<F>,
    bound: &GroupValue,
    samples: &[Poly<F>],
) -> Result<OracleReport, DegreeError> {
    let mut report = OracleReport::default();
    for (i, f) in samples.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let jump = delta(df, d, f)?;
        report.checked += 1;
        if jump > *bound {
            report.violations.push(i);
        } else if jump == *bound {
            report.attained.push(i);
        }
    }
    Ok(report)
}
