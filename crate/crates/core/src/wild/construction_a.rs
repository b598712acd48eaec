use rand::Rng;
use serde::Serialize;

use super::{WildError, WitnessRow};
use crate::degfun::{sample_rng, sample, DegreeFunction, LaurentPullback, SeriesSource};
use crate::fields::{Field, Rational};
use crate::laurent::{substitute, LaurentError, LaurentSeries, PrecisionPolicy};
use crate::poly::{Derivation, Poly};

/// Number of coefficients of `f(t)` kept by default; covers the default cap.
pub const DEFAULT_A_TERMS: usize = 128;

/// `x = t^-1`, `y = f(t) = sum_j a_j t^j` in `Q((t))`, with `deg = -ord`
/// on `Q[x, y]`. Only finitely many `a_j` are stored, so `y` carries an
/// explicit precision bound.
#[derive(Clone, Debug)]
pub struct ConstructionA {
    coeffs: Vec<Rational>,
    policy: PrecisionPolicy,
}

/// `x = t^-1` and the truncation of `f(t)`.
#[derive(Clone, Debug)]
pub struct ASeries {
    coeffs: Vec<Rational>,
}

impl ASeries {
    pub fn y(&self, window: i64) -> LaurentSeries<Rational> {
        let keep = (window.max(0) as usize).min(self.coeffs.len());
        LaurentSeries::new(0, self.coeffs[..keep].to_vec(), Some(keep as i64))
    }
}

impl SeriesSource<Rational> for ASeries {
    fn var_count(&self) -> usize {
        2
    }

    fn series_at(&self, window: i64) -> Result<Vec<LaurentSeries<Rational>>, LaurentError> {
        Ok(vec![LaurentSeries::monomial(Rational::one(), -1), self.y(window)])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GenericCheckRow {
    pub n: usize,
    /// `t^n D(g_n)` and `t^2 (α_n + ε_n) u - v` agree below `checked_below`.
    pub agrees: bool,
    pub checked_below: Option<i64>,
}

impl ConstructionA {
    pub fn new(coeffs: Vec<Rational>, policy: PrecisionPolicy) -> Self {
        Self { coeffs, policy }
    }

    /// `a_j = 1` for all `j`.
    pub fn ones(len: usize) -> Self {
        Self::new(vec![Rational::one(); len], PrecisionPolicy::default())
    }

    /// Random small rationals, zero with probability 1/4.
    pub fn seeded(seed: u64, len: usize) -> Self {
        let mut rng = sample_rng(seed, 0);
        let coeffs = (0..len)
            .map(|_| if rng.gen_ratio(1, 4) { Rational::zero() } else { sample::nonzero_rational(&mut rng, 9) })
            .collect();
        Self::new(coeffs, PrecisionPolicy::default())
    }

    pub fn with_policy(mut self, policy: PrecisionPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn source(&self) -> ASeries {
        ASeries { coeffs: self.coeffs.clone() }
    }

    pub fn degree_function(&self) -> LaurentPullback<Rational, ASeries> {
        LaurentPullback::new(self.source(), self.policy)
    }

    fn a(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// `g_n = x^n y - sum_{j<n} a_j x^{n-j}` in `Q[x, y]`.
    pub fn g(&self, n: usize) -> Poly<Rational> {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let mut g = x.pow(n as u32).mul(&y);
        for j in 0..n {
            g = g.sub(&x.pow((n - j) as u32).scale(&self.a(j)));
        }
        g
    }

    /// Rows `(n, deg g_n, deg ∂g_n/∂y, δ)` for `n = 0..=n_max`, each value
    /// read off a series. Rows with `a_n = 0` are omitted.
    pub fn witness(&self, n_max: usize) -> Result<Vec<WitnessRow>, WildError> {
        if n_max >= self.coeffs.len() {
            return Err(WildError::Precondition(format!("n_max {n_max} needs more than {} coefficients", self.coeffs.len())));
        }
        let df = self.degree_function();
        let d = Derivation::partial(2, 1);
        let mut rows = Vec::new();
        for n in 0..=n_max {
            if self.a(n).is_zero() {
                continue;
            }
            let g = self.g(n);
            let deg = df.degree(&g)?;
            let deg_d = df.degree(&d.apply(&g)?)?;
            rows.push(WitnessRow::new(n, deg, deg_d));
        }
        Ok(rows)
    }

    /// Indices `n <= n_max` with `a_n = 0`, skipped by [`Self::witness`].
    pub fn skipped(&self, n_max: usize) -> Vec<usize> {
        (0..=n_max).filter(|&n| self.a(n).is_zero()).collect()
    }

    /// `α_n + ε_n = sum_{j<n} j a_j t^{j-1} + sum_{j>=n} n a_j t^{j-1}`, to the stored precision.
    pub fn alpha_plus_epsilon(&self, n: usize, window: i64) -> LaurentSeries<Rational> {
        let keep = (window.max(0) as usize).min(self.coeffs.len());
        let coeffs = (0..keep)
            .map(|j| {
                let weight = if j < n { j } else { n };
                self.coeffs[j].scale_int(weight as i64)
            })
            .collect();
        LaurentSeries::new(-1, coeffs, Some(keep as i64 - 1))
    }

    /// Compares `t^n D(g_n)` with `t^2 (α_n + ε_n) u - v` for
    /// `D = u ∂/∂x - v ∂/∂y`, coefficientwise below the common precision.
    pub fn generic_check(
        &self,
        u: &Poly<Rational>,
        v: &Poly<Rational>,
        n_max: usize,
        window: i64,
    ) -> Result<Vec<GenericCheckRow>, WildError> {
        let d = Derivation::new(vec![u.clone(), v.neg()])?;
        let src = self.source();
        let args = src.series_at(window)?;
        let pu = substitute(u, &args)?;
        let pv = substitute(v, &args)?;
        let mut rows = Vec::new();
        for n in 0..=n_max {
            let lhs = substitute(&d.apply(&self.g(n))?, &args)?.shift(n as i64);
            let rhs = self.alpha_plus_epsilon(n, window).shift(2).mul(&pu).sub(&pv);
            let diff = lhs.sub(&rhs);
            rows.push(GenericCheckRow { n, agrees: diff.all_known_zero(), checked_below: diff.precision() });
        }
        Ok(rows)
    }
}
