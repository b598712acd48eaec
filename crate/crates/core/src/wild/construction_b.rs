use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{WildError, WitnessRow};
use crate::degfun::{sample, sample_rng, DegreeFunction, LaurentPullback, SampleError, SeriesSource, RNG_NAME};
use crate::fields::{Field, MultiQuad, RatFunc};
use crate::laurent::{substitute, LaurentError, LaurentSeries, PrecisionPolicy};
use crate::poly::Poly;
use crate::value::GroupValue;

type Series = LaurentSeries<MultiQuad>;

/// Parameters of construction B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BConfig {
    /// `P`: the witness covers `y_0 .. y_P`.
    pub steps: usize,
    /// `N`: the tower `Q(s)(u_1..u_N)` holding the `a_p` and `e_p`.
    pub level: usize,
    /// `y` is computed below `t^window`.
    pub window: i64,
}

impl Default for BConfig {
    fn default() -> Self {
        Self { steps: 5, level: 8, window: 18 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub step: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// `x = t^-2`, `y = t^-3 sum_n a_n t^{3n}` over `K_N = Q(s)(u_1..u_N)`,
/// where the `a_n` are solved so that `y_p`, defined by `y_0 = y` and
/// `y_{p+1} = y_p^2 - e_p^2 x^3`, starts with `e_p t^-3` and `e_p = u_{p+1}`.
#[derive(Clone, Debug)]
pub struct ConstructionB {
    config: BConfig,
    a: Vec<MultiQuad>,
    e: Vec<MultiQuad>,
    e_sq: Vec<MultiQuad>,
    f: Vec<Poly<RatFunc>>,
    checks: Vec<CheckRecord>,
    policy: PrecisionPolicy,
}

/// Series source for the pullback degree function of construction B.
#[derive(Clone, Debug)]
pub struct BSeries {
    a: Arc<Vec<MultiQuad>>,
}

impl BSeries {
    /// The exponent below which `y` is known.
    pub fn max_precision(&self) -> i64 {
        3 * (self.a.len() as i64 - 1)
    }

    pub fn y(&self, window: i64) -> Series {
        y_series(&self.a, window.min(self.max_precision()))
    }
}

impl SeriesSource<MultiQuad> for BSeries {
    fn var_count(&self) -> usize {
        2
    }

    fn series_at(&self, window: i64) -> Result<Vec<Series>, LaurentError> {
        Ok(vec![LaurentSeries::monomial(MultiQuad::one(), -2), self.y(window)])
    }
}

/// `t^-3 sum_{n} a_n t^{3n}` using the given `a`, known below `t^prec`.
fn y_series(a: &[MultiQuad], prec: i64) -> Series {
    let mut coeffs = Vec::new();
    for (n, an) in a.iter().enumerate() {
        let e = 3 * n as i64 - 3;
        if e >= prec {
            break;
        }
        while (coeffs.len() as i64) < e + 3 {
            coeffs.push(MultiQuad::zero());
        }
        coeffs.push(an.clone());
    }
    LaurentSeries::new(-3, coeffs, Some(prec))
}

/// `y_0 .. y_steps` from `y_0`, by `y_{k+1} = y_k^2 - e_k^2 t^-6`.
fn chain(y0: Series, e_sq: &[MultiQuad], steps: usize) -> Vec<Series> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(y0);
    for k in 0..steps {
        let last = out.last().expect("nonempty");
        let next = last.square().sub(&LaurentSeries::monomial(e_sq[k].clone(), -6));
        out.push(next);
    }
    out
}

/// The leading term of `∂y_p/∂a_q`: `y'_0 = t^{3q-3}`, `y'_{k+1} = 2 y_k y'_k`.
/// Only leading terms of the `y_k` matter, so they are truncated first.
fn tangent_lead(ys: &[Series], q: usize, p: usize) -> Result<(i64, MultiQuad), LaurentError> {
    let mut d = LaurentSeries::monomial(MultiQuad::one(), 3 * q as i64 - 3);
    for y in &ys[..p] {
        let ord = y.ord()?;
        let lead = y.truncate(ord + 1);
        d = lead.mul(&d).scale(&MultiQuad::from_int(2));
    }
    d.leading_term()
}

impl ConstructionB {
    pub fn build(config: BConfig) -> Result<Self, WildError> {
        let n = config.level;
        if n == 0 || n > crate::fields::MAX_LEVEL {
            return Err(WildError::Precondition(format!("level {n} out of range")));
        }
        if config.steps + 1 > n {
            return Err(WildError::Precondition(format!("steps {} need level at least {}", config.steps, config.steps + 1)));
        }
        let horizon = if config.window >= 0 { ((config.window + 2) / 3) as usize } else { 0 };
        let mut checks = Vec::new();
        let mut m = horizon.max(config.steps);
        if m + 1 > n {
            checks.push(CheckRecord {
                step: 0,
                name: "horizon",
                passed: true,
                detail: format!("window {} needs a_0..a_{m}; level {n} limits this to a_0..a_{}", config.window, n - 1),
            });
            m = n - 1;
        }

        let e: Vec<MultiQuad> = (0..=m).map(|p| MultiQuad::u(p + 1, n)).collect::<Result<_, _>>()?;
        let mut e_sq = Vec::with_capacity(e.len());
        for (p, ep) in e.iter().enumerate() {
            let sq = ep.mul(ep);
            let expected = MultiQuad::scalar(n, RatFunc::s_minus(p as i64 + 1));
            if sq != expected {
                return Err(WildError::Construction { step: p, reason: format!("e_{p}^2 = {sq} is not s - {}", p + 1) });
            }
            e_sq.push(sq);
        }
        let distinct = e.iter().enumerate().all(|(i, x)| e[..i].iter().all(|y| y != x));
        checks.push(CheckRecord { step: m, name: "e-distinct", passed: distinct, detail: format!("e_0..e_{m} pairwise distinct") });

        let mut a = vec![e[0].clone()];
        for p in 0..m {
            // f_{p+1,p+1}(a_0..a_p, X) = r + c X; solve r + c a_{p+1} = e_{p+1}
            let mut trial = a.clone();
            trial.push(MultiQuad::zero());
            let ys = chain(y_series(&trial, 3 * (p as i64 + 1)), &e_sq, p + 1);
            let r = ys[p + 1].coeff(-3)?;
            let (ord, c) = tangent_lead(&ys, p + 1, p + 1)?;
            if ord != -3 || c.is_zero() {
                return Err(WildError::Construction {
                    step: p + 1,
                    reason: format!("coefficient of X_{0} in f_{{{0},{0}}} vanishes", p + 1),
                });
            }
            a.push(e[p + 1].sub(&r).div(&c)?);
        }

        let mut out = Self { config, a, e, e_sq, f: Vec::new(), checks, policy: PrecisionPolicy::default() };
        out.verify_recursion()?;
        out.build_polynomials()?;
        Ok(out)
    }

    /// Index of the last solved `a_p`.
    pub fn depth(&self) -> usize {
        self.a.len() - 1
    }

    pub fn config(&self) -> BConfig {
        self.config
    }

    pub fn a(&self) -> &[MultiQuad] {
        &self.a
    }

    pub fn e(&self) -> &[MultiQuad] {
        &self.e
    }

    /// `F_0 .. F_P` in `Q(s)[X, Y]`.
    pub fn f_polys(&self) -> &[Poly<RatFunc>] {
        &self.f
    }

    pub fn checks(&self) -> &[CheckRecord] {
        &self.checks
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn with_policy(mut self, policy: PrecisionPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn source(&self) -> BSeries {
        BSeries { a: Arc::new(self.a.clone()) }
    }

    /// `deg = -ord` on polynomials in `x, y`.
    pub fn degree_function(&self) -> LaurentPullback<MultiQuad, BSeries> {
        LaurentPullback::new(self.source(), self.policy)
    }

    /// Series `y_0 .. y_p` from `y` known below `t^window`.
    pub fn y_chain(&self, window: i64, p: usize) -> Vec<Series> {
        chain(self.source().y(window), &self.e_sq, p)
    }

    /// Checks `f_{p,p}(a_0..a_p) = e_p` for every solved `p`, and that the
    /// `X_i`-coefficient of `f_{p,i}` stays nonzero after substituting `a`
    /// for every `i` up to the depth.
    fn verify_recursion(&mut self) -> Result<(), WildError> {
        let m = self.depth();
        let ys = self.y_chain(3 * m as i64, m);
        for (p, y) in ys.iter().enumerate() {
            let lead = y.leading_term()?;
            self.checks.push(CheckRecord {
                step: p,
                name: "f_pp",
                passed: lead == (-3, self.e[p].clone()),
                detail: format!("y_{p} = ({}) t^{} + ...", lead.1, lead.0),
            });
        }
        for p in 0..=m {
            let mut ok = true;
            for i in p + 1..=m {
                let (ord, c) = tangent_lead(&ys, i, p)?;
                ok &= ord == 3 * (i as i64 - p as i64) - 3 && !c.is_zero();
            }
            self.checks.push(CheckRecord {
                step: p,
                name: "linear-in-next",
                passed: ok,
                detail: format!("X_i-coefficient of f_{{{p},i}} nonzero for i = {}..{m}", p + 1),
            });
        }
        Ok(())
    }

    fn build_polynomials(&mut self) -> Result<(), WildError> {
        let x = Poly::<RatFunc>::var(2, 0);
        let y = Poly::<RatFunc>::var(2, 1);
        let x3 = x.pow(3);
        let mut f = vec![y.clone()];
        for p in 0..self.config.steps {
            let last = f.last().expect("nonempty");
            f.push(last.mul(last).sub(&x3.scale(&RatFunc::s_minus(p as i64 + 1))));
        }
        for (p, fp) in f.iter().enumerate() {
            // ∂F_p/∂Y = 2^p F_0 ... F_{p-1}
            let product = f[..p].iter().fold(Poly::constant(2, RatFunc::from_int(1 << p)), |acc, g| acc.mul(g));
            self.checks.push(CheckRecord {
                step: p,
                name: "dF-factorization",
                passed: fp.partial(1) == product,
                detail: format!("dF_{p}/dY = 2^{p} F_0..F_{}", p as i64 - 1),
            });
        }
        // direct substitution of F_p agrees with the recursion where it is affordable
        let window = 3 * self.depth() as i64;
        let src = self.source();
        let args = src.series_at(window)?;
        let ys = self.y_chain(window, self.config.steps.min(2));
        for (p, yp) in ys.iter().enumerate() {
            let direct = substitute(&f[p], &args)?;
            let diff = direct.sub(yp);
            self.checks.push(CheckRecord {
                step: p,
                name: "substitution-matches-recursion",
                passed: diff.all_known_zero(),
                detail: format!("pi(F_{p}) and y_{p} agree below t^{}", diff.precision().unwrap_or(i64::MAX)),
            });
        }
        self.f = f;
        Ok(())
    }

    /// Rows `(p, deg y_p, deg D y_p, δ)` for `D = ∂/∂y` and `p = 0..=p_max`.
    ///
    /// `y_p` comes from the recursion and `D y_p = 2^p y_0 ... y_{p-1}`, the
    /// image of `∂F_p/∂Y` (checked as a polynomial identity at build time).
    /// Degrees are read off the series.
    pub fn witness(&self, p_max: usize) -> Result<Vec<WitnessRow>, WildError> {
        if p_max > self.config.steps {
            return Err(WildError::Precondition(format!("p_max {p_max} exceeds steps {}", self.config.steps)));
        }
        let rows = self.policy.run(|window| {
            let ys = self.y_chain(window, p_max);
            let mut rows = Vec::with_capacity(p_max + 1);
            let mut dy = LaurentSeries::constant(MultiQuad::one());
            for (p, y) in ys.iter().enumerate() {
                rows.push(WitnessRow::new(p, GroupValue::int(-y.ord()?), GroupValue::int(-dy.ord()?)));
                dy = dy.mul(y).scale(&MultiQuad::from_int(2));
            }
            Ok(rows)
        })?;
        Ok(rows)
    }

    /// Draws random nonzero polynomials over `Q(s)` in `x, y` and checks that
    /// each degree lies in `<2, 3>`. Consecutive distinct samples are also
    /// checked to have distinct images.
    pub fn monoid_check(&self, samples: usize, seed: u64, max_deg: u32) -> MonoidReport {
        let df = self.degree_function();
        let draw = |i: usize| {
            let mut rng = sample_rng(seed, i);
            sample::random_nonzero_poly(&mut rng, 2, max_deg, 6, sample::nonzero_ratfunc)
        };
        let polys: Vec<Poly<RatFunc>> = (0..samples).map(draw).collect();
        let results: Vec<Result<GroupValue, String>> =
            polys.par_iter().map(|f| df.degree(f).map_err(|e| e.to_string())).collect();
        let collisions: Vec<Result<bool, String>> = (1..samples)
            .into_par_iter()
            .map(|i| {
                let diff = polys[i].sub(&polys[i - 1]);
                if diff.is_zero() {
                    return Ok(false);
                }
                match df.degree(&diff) {
                    Ok(_) => Ok(false),
                    Err(e) if e.is_precision() => Ok(true),
                    Err(e) => Err(e.to_string()),
                }
            })
            .collect();
        let mut report = MonoidReport {
            samples,
            seed,
            rng: RNG_NAME,
            failures: Vec::new(),
            errors: Vec::new(),
            observed_degrees: BTreeSet::new(),
            distinct_pairs: 0,
            collisions: Vec::new(),
        };
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(d) => {
                    let v = d.as_int().unwrap_or(-1);
                    if v < 0 || v == 1 {
                        report.failures.push(MonoidFailure { sample: i, input: polys[i].to_string_with(&["x", "y"]), degree: d.clone() });
                    }
                    report.observed_degrees.insert(d);
                }
                Err(message) => report.errors.push(SampleError { sample: i, message }),
            }
        }
        for (k, r) in collisions.into_iter().enumerate() {
            let i = k + 1;
            if polys[i] != polys[i - 1] {
                report.distinct_pairs += 1;
            }
            match r {
                Ok(true) => report.collisions.push(i),
                Ok(false) => {}
                Err(message) => report.errors.push(SampleError { sample: i, message }),
            }
        }
        report
    }

    /// `w = y^2 - a_0^2 x^3 - 2 a_1 y - 2 a_0 a_2 + a_1^2` over `K_N`.
    pub fn negative_degree_element(&self) -> Result<NegativeDegreeElement, WildError> {
        if self.depth() < 3 {
            return Err(WildError::Precondition("w needs a_0..a_3".into()));
        }
        let a = &self.a;
        let x = Poly::<MultiQuad>::var(2, 0);
        let y = Poly::<MultiQuad>::var(2, 1);
        let c = |v: MultiQuad| Poly::constant(2, v);
        let w = y
            .pow(2)
            .sub(&x.pow(3).scale(&a[0].mul(&a[0])))
            .sub(&y.scale(&a[1].scale_int(2)))
            .sub(&c(a[0].mul(&a[2]).scale_int(2)))
            .add(&c(a[1].mul(&a[1])));
        let series = self.degree_function().series(&w)?;
        let (ord, leading) = series.leading_term()?;
        let expected = a[0].mul(&a[3]).scale_int(2);
        Ok(NegativeDegreeElement {
            rendered: w.to_string_with(&["x", "y"]),
            poly: w,
            degree: GroupValue::int(-ord),
            leading: leading.to_string(),
            expected_leading: expected.to_string(),
            leading_matches: leading == expected,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonoidFailure {
    pub sample: usize,
    pub input: String,
    pub degree: GroupValue,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonoidReport {
    pub samples: usize,
    pub seed: u64,
    pub rng: &'static str,
    /// Samples whose degree is 1 or negative.
    pub failures: Vec<MonoidFailure>,
    pub errors: Vec<SampleError>,
    pub observed_degrees: BTreeSet<GroupValue>,
    /// Consecutive sample pairs that differ as polynomials.
    pub distinct_pairs: usize,
    /// Indices `i` where samples `i-1` and `i` differ but their images agree
    /// to the available precision.
    pub collisions: Vec<usize>,
}

impl MonoidReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty() && self.collisions.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeDegreeElement {
    #[serde(skip)]
    pub poly: Poly<MultiQuad>,
    #[serde(rename = "w")]
    pub rendered: String,
    pub degree: GroupValue,
    pub leading: String,
    #[serde(rename = "expectedLeading")]
    pub expected_leading: String,
    #[serde(rename = "leadingMatches")]
    pub leading_matches: bool,
}
