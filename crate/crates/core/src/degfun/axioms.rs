use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{DegreeError, DegreeFunction, DegreeKind, RingElem};
use crate::value::GroupValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomConfig {
    pub samples: usize,
    pub seed: u64,
}

/// Sample `i` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`.
pub const RNG_NAME: &str = "ChaCha8Rng(seed_from_u64(seed), stream = sample index)";

pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomFailure {
    pub sample: usize,
    pub input: String,
    pub axiom: &'static str,
    pub lhs: GroupValue,
    pub rhs: GroupValue,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleError {
    pub sample: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub kind: DegreeKind,
    pub samples: usize,
    pub seed: u64,
    pub rng: &'static str,
    pub failures: Vec<AxiomFailure>,
    /// Samples skipped because a degree could not be determined.
    pub errors: Vec<SampleError>,
    /// Every finite degree seen on a sample.
    pub observed_degrees: BTreeSet<GroupValue>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Outcome {
    failures: Vec<AxiomFailure>,
    error: Option<SampleError>,
    degrees: Vec<GroupValue>,
}

/// A `δ_D` evaluator used for the subadditivity check `δ(xy) <= max(δx, δy)`.
pub type JumpFn<'a, E> = &'a (dyn Fn(&E) -> Result<GroupValue, DegreeError> + Sync);

/// Checks the degree-function axioms on `cfg.samples` pairs drawn by `sampler`:
/// `deg x = -inf iff x = 0`, `deg(xy) = deg x + deg y`,
/// `deg(x+y) <= max(deg x, deg y)` with equality when the degrees differ, and
/// (when `jump` is given) `δ(xy) <= max(δ x, δ y)`.
pub fn check_axioms<E, DF, S>(df: &DF, cfg: &AxiomConfig, sampler: S, jump: Option<JumpFn<'_, E>>) -> AxiomReport
where
    E: RingElem,
    DF: DegreeFunction<E>,
    S: Fn(&mut ChaCha8Rng) -> (E, E) + Sync,
{
    let outcomes: Vec<Outcome> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(cfg.seed, i);
            let (x, y) = sampler(&mut rng);
            match check_pair(df, i, &x, &y, jump) {
                Ok((failures, degrees)) => Outcome { failures, error: None, degrees },
                Err(e) => Outcome {
                    failures: Vec::new(),
                    error: Some(SampleError { sample: i, message: e.to_string() }),
                    degrees: Vec::new(),
                },
            }
        })
        .collect();
    let mut report = AxiomReport {
        kind: df.kind(),
        samples: cfg.samples,
        seed: cfg.seed,
        rng: RNG_NAME,
        failures: Vec::new(),
        errors: Vec::new(),
        observed_degrees: BTreeSet::new(),
    };
    for o in outcomes {
        report.failures.extend(o.failures);
        report.errors.extend(o.error);
        report.observed_degrees.extend(o.degrees.into_iter().filter(GroupValue::is_finite));
    }
    report
}

fn check_pair<E: RingElem, DF: DegreeFunction<E>>(
    df: &DF,
    sample: usize,
    x: &E,
    y: &E,
    jump: Option<JumpFn<'_, E>>,
) -> Result<(Vec<AxiomFailure>, Vec<GroupValue>), DegreeError> {
    let sum = x.add(y);
    let prod = x.mul(y);
    let dx = df.degree(x)?;
    let dy = df.degree(y)?;
    let ds = df.degree(&sum)?;
    let dp = df.degree(&prod)?;
    let input = || format!("x = {}; y = {}", x.render(), y.render());
    let mut failures = Vec::new();
    let mut fail = |axiom, lhs: &GroupValue, rhs: &GroupValue| {
        failures.push(AxiomFailure { sample, input: input(), axiom, lhs: lhs.clone(), rhs: rhs.clone() });
    };
    for (e, d) in [(x, &dx), (y, &dy), (&sum, &ds), (&prod, &dp)] {
        if e.is_zero() != d.is_neg_infinity() {
            fail("zero", d, &GroupValue::NegInfinity);
        }
    }
    let expected = dx.add(&dy);
    if dp != expected {
        fail("product", &dp, &expected);
    }
    let top = dx.clone().max(dy.clone());
    if ds > top {
        fail("sum", &ds, &top);
    }
    if dx != dy && ds != top {
        fail("sum-equality", &ds, &top);
    }
    if let Some(jump) = jump {
        let jp = jump(&prod)?;
        let jm = jump(x)?.max(jump(y)?);
        if jp > jm {
            fail("delta-product", &jp, &jm);
        }
    }
    Ok((failures, vec![dx, dy, ds, dp]))
}
