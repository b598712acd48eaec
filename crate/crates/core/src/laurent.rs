//! Truncated Laurent series in `t` with explicit precision tracking, the order
//! valuation, and substitution of series into polynomials.
//!
//! A series knows its coefficients for every exponent below its precision
//! bound; anything at or above the bound is unknown. Exact series (Laurent
//! polynomials such as `t^-2`) have no bound. Arithmetic propagates bounds
//! pessimistically, and [`LaurentSeries::ord`] refuses to answer when every
//! known coefficient vanishes.

use std::fmt;
use std::sync::RwLock;

use thiserror::Error;

use crate::fields::{Embed, Field};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("precision exhausted: no nonzero coefficient below t^{bound}")]
    PrecisionExhausted { bound: i64 },
    #[error("order of an exact zero series is undefined")]
    ZeroSeries,
    #[error("precision cap {cap} reached without determining the order")]
    PrecisionCap { cap: i64 },
    #[error("coefficient of t^{exponent} is beyond the precision bound {bound}")]
    BeyondPrecision { exponent: i64, bound: i64 },
    #[error("expected {expected} series arguments, found {found}")]
    ArgCount { expected: usize, found: usize },
    #[error("series source cannot provide precision {requested}: {reason}")]
    Unavailable { requested: i64, reason: String },
}

impl LaurentError {
    /// Whether retrying at a higher precision could help.
    pub fn is_precision_shortfall(&self) -> bool {
        matches!(self, LaurentError::PrecisionExhausted { .. } | LaurentError::BeyondPrecision { .. })
    }
}

/// Exclusive precision bound; `None` means exact.
pub type Precision = Option<i64>;

fn min_prec(a: Precision, b: Precision) -> Precision {
    match (a, b) {
        (None, p) | (p, None) => p,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

fn shift_prec(p: Precision, k: i64) -> Precision {
    p.map(|x| x + k)
}

/// `sum_{e = low}^{low + len - 1} coeffs[e - low] t^e + O(t^prec)`.
///
/// Invariants: no leading or trailing zero is stored; exponents between the
/// last stored coefficient and `prec` are known zeros; `low + len <= prec`.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries<F> {
    low: i64,
    coeffs: Vec<F>,
    prec: Precision,
}

impl<F: Field> LaurentSeries<F> {
    /// Series with coefficients `coeffs` starting at `t^low`, known below `prec`.
    /// Coefficients at or beyond `prec` are discarded.
    pub fn new(low: i64, mut coeffs: Vec<F>, prec: Precision) -> Self {
        if let Some(p) = prec {
            let keep = (p - low).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        let mut out = Self { low, coeffs, prec };
        out.normalize();
        out
    }

    pub fn exact(low: i64, coeffs: Vec<F>) -> Self {
        Self::new(low, coeffs, None)
    }

    /// `c * t^e`, exact.
    pub fn monomial(c: F, e: i64) -> Self {
        Self::exact(e, vec![c])
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// `O(t^prec)`.
    pub fn unknown_from(prec: i64) -> Self {
        Self { low: prec, coeffs: Vec::new(), prec: Some(prec) }
    }

    pub fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new(), prec: None }
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        while self.coeffs.last().is_some_and(F::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            if let Some(p) = self.prec {
                self.low = p;
            }
        }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True for the exact zero series.
    pub fn is_exact_zero(&self) -> bool {
        self.prec.is_none() && self.coeffs.is_empty()
    }

    /// Every known coefficient is zero.
    pub fn all_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lower bound on the order: exact when some known coefficient is nonzero.
    fn order_bound(&self) -> Precision {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.low)
        }
    }

    /// Least exponent with a nonzero coefficient.
    pub fn ord(&self) -> Result<i64, LaurentError> {
        if !self.coeffs.is_empty() {
            return Ok(self.low);
        }
        match self.prec {
            Some(bound) => Err(LaurentError::PrecisionExhausted { bound }),
            None => Err(LaurentError::ZeroSeries),
        }
    }

    /// `(ord, leading coefficient)`.
    pub fn leading_term(&self) -> Result<(i64, F), LaurentError> {
        let ord = self.ord()?;
        Ok((ord, self.coeffs[0].clone()))
    }

    pub fn coeff(&self, e: i64) -> Result<F, LaurentError> {
        if let Some(bound) = self.prec {
            if e >= bound {
                return Err(LaurentError::BeyondPrecision { exponent: e, bound });
            }
        }
        if e < self.low || self.coeffs.is_empty() {
            return Ok(F::zero());
        }
        Ok(self.coeffs.get((e - self.low) as usize).cloned().unwrap_or_else(F::zero))
    }

    /// Known nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Lowers the precision bound to `prec` (no-op if already lower).
    pub fn truncate(&self, prec: i64) -> Self {
        let p = min_prec(self.prec, Some(prec));
        Self::new(self.low, self.coeffs.clone(), p)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = min_prec(self.prec, rhs.prec);
        if self.coeffs.is_empty() {
            return rhs.with_prec(prec);
        }
        if rhs.coeffs.is_empty() {
            return self.with_prec(prec);
        }
        let low = self.low.min(rhs.low);
        let end = (self.low + self.coeffs.len() as i64).max(rhs.low + rhs.coeffs.len() as i64);
        let end = prec.map_or(end, |p| end.min(p));
        let mut coeffs = Vec::with_capacity((end - low).max(0) as usize);
        for e in low..end {
            let a = self.stored(e);
            let b = rhs.stored(e);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => F::zero(),
            });
        }
        Self::new(low, coeffs, prec)
    }

    fn with_prec(&self, prec: Precision) -> Self {
        Self::new(self.low, self.coeffs.clone(), min_prec(self.prec, prec))
    }

    fn stored(&self, e: i64) -> Option<&F> {
        if e < self.low {
            return None;
        }
        self.coeffs.get((e - self.low) as usize)
    }

    pub fn neg(&self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(F::neg).collect(), prec: self.prec }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return match self.prec {
                None => Self::zero(),
                // 0 * O(t^p) is exactly zero
                Some(_) => Self::zero(),
            };
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(), prec: self.prec }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { low: self.low + k, coeffs: self.coeffs.clone(), prec: shift_prec(self.prec, k) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return Self::zero();
        }
        // (a + O(t^pa)) (b + O(t^pb)) is known below min(pa + ord b, pb + ord a)
        let prec = min_prec(
            match (self.prec, rhs.order_bound()) {
                (Some(p), Some(o)) => Some(p + o),
                (Some(p), None) => Some(p),
                (None, _) => None,
            },
            match (rhs.prec, self.order_bound()) {
                (Some(p), Some(o)) => Some(p + o),
                (Some(p), None) => Some(p),
                (None, _) => None,
            },
        );
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            let bound = prec.expect("an empty non-exact factor bounds the product");
            return Self::unknown_from(bound);
        }
        let low = self.low + rhs.low;
        let full_end = low + (self.coeffs.len() + rhs.coeffs.len() - 1) as i64;
        let end = prec.map_or(full_end, |p| full_end.min(p));
        if end <= low {
            return Self::new(low, Vec::new(), prec);
        }
        let len = (end - low) as usize;
        let mut coeffs = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(low, coeffs, prec)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(F::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Applies a coefficient embedding.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> LaurentSeries<G> {
        LaurentSeries::new(self.low, self.coeffs.iter().map(f).collect(), self.prec)
    }
}

impl<F: Field> fmt::Display for LaurentSeries<F> {
    /// Renders `c·t^e + … + O(t^k)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms() {
            let c = if c.needs_parens() || c.is_negative() { format!("({c})") } else { c.to_string() };
            parts.push(if e == 0 { c } else { format!("{c}·t^{e}") });
        }
        if let Some(p) = self.prec {
            parts.push(format!("O(t^{p})"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

/// Evaluation of polynomials at fixed series arguments, with cached powers.
///
/// This is the substitution homomorphism `X_i -> args[i]`.
pub struct Substitution<F> {
    args: Vec<LaurentSeries<F>>,
    powers: Vec<RwLock<Vec<LaurentSeries<F>>>>,
}

impl<F: Field> Substitution<F> {
    pub fn new(args: Vec<LaurentSeries<F>>) -> Self {
        let powers = args.iter().map(|_| RwLock::new(vec![LaurentSeries::constant(F::one())])).collect();
        Self { args, powers }
    }

    pub fn args(&self) -> &[LaurentSeries<F>] {
        &self.args
    }

    fn power(&self, var: usize, e: u32) -> LaurentSeries<F> {
        let e = e as usize;
        if let Some(p) = self.powers[var].read().expect("power cache").get(e) {
            return p.clone();
        }
        let mut cache = self.powers[var].write().expect("power cache");
        while cache.len() <= e {
            let next = cache.last().expect("nonempty").mul(&self.args[var]);
            cache.push(next);
        }
        cache[e].clone()
    }

    pub fn eval<C: Field>(&self, f: &Poly<C>) -> Result<LaurentSeries<F>, LaurentError>
    where
        F: Embed<C>,
    {
        if f.var_count() != self.args.len() {
            return Err(LaurentError::ArgCount { expected: f.var_count(), found: self.args.len() });
        }
        let mut acc = LaurentSeries::zero();
        for (mono, c) in f.terms() {
            let mut term = LaurentSeries::constant(F::embed(c));
            for (var, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&self.power(var, e));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// `f(args)`, the image of `f` under `X_i -> args[i]`.
pub fn substitute<C: Field, F: Embed<C>>(
    f: &Poly<C>,
    args: &[LaurentSeries<F>],
) -> Result<LaurentSeries<F>, LaurentError> {
    Substitution::new(args.to_vec()).eval(f)
}

/// Retry schedule for computations that need enough precision to see a
/// nonzero coefficient: start at `start`, double up to `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start: i64,
    pub cap: i64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self { start: 24, cap: 96 }
    }
}

impl PrecisionPolicy {
    /// Runs `attempt` at increasing precision until it stops reporting a
    /// precision shortfall.
    pub fn run<T>(&self, mut attempt: impl FnMut(i64) -> Result<T, LaurentError>) -> Result<T, LaurentError> {
        let mut window = self.start.min(self.cap);
        loop {
            match attempt(window) {
                Err(e) if e.is_precision_shortfall() => {
                    if window >= self.cap {
                        return Err(LaurentError::PrecisionCap { cap: self.cap });
                    }
                    window = (window.max(1) * 2).min(self.cap);
                }
                other => return other,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Rational;

    type S = LaurentSeries<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn series(low: i64, cs: &[i64], prec: Option<i64>) -> S {
        S::new(low, cs.iter().map(|&c| q(c)).collect(), prec)
    }

    #[test]
    fn order_of_simple_series() {
        // t^-2 + t, known below t^5
        let f = series(-2, &[1, 0, 0, 1], Some(5));
        assert_eq!(f.ord().unwrap(), -2);
        let g = S::monomial(q(1), -2).mul(&S::monomial(q(1), 3));
        assert_eq!(g.ord().unwrap(), 1);
    }

    #[test]
    fn exhausted_precision_is_an_error() {
        let f = series(0, &[0, 0, 0], Some(3));
        assert_eq!(f.ord(), Err(LaurentError::PrecisionExhausted { bound: 3 }));
        let g = series(0, &[1, 1], Some(2));
        assert!(g.sub(&g).ord().is_err());
        assert_eq!(S::zero().ord(), Err(LaurentError::ZeroSeries));
    }

    #[test]
    fn product_precision() {
        // (t^-1 + O(t^2)) * (t^-3 exact) = t^-4 + O(t^-1)
        let a = series(-1, &[1], Some(2));
        let b = S::monomial(q(1), -3);
        let p = a.mul(&b);
        assert_eq!(p.precision(), Some(-1));
        assert_eq!(p.ord().unwrap(), -4);
        // (1 + t + O(t^3))^2 = 1 + 2t + t^2 + O(t^3)
        let c = series(0, &[1, 1], Some(3));
        let sq = c.square();
        assert_eq!(sq.precision(), Some(3));
        assert_eq!(sq.coeff(2).unwrap(), q(1));
        assert!(sq.coeff(3).is_err());
    }

    #[test]
    fn substitution_of_monomials() {
        let x = S::monomial(q(1), -1);
        let y = S::monomial(q(1), 1);
        let xy = Poly::<Rational>::var(2, 0).mul(&Poly::var(2, 1));
        let v = substitute(&xy, &[x.clone(), y]).unwrap();
        assert_eq!(v, S::constant(q(1)));
        let x3 = Poly::<Rational>::var(1, 0).pow(3);
        let v = substitute(&x3, &[S::monomial(q(1), -2)]).unwrap();
        assert_eq!(v, S::monomial(q(1), -6));
        assert_eq!(substitute(&x3, &[x.clone(), x]), Err(LaurentError::ArgCount { expected: 1, found: 2 }));
    }

    #[test]
    fn adaptive_policy_doubles_then_gives_up() {
        let policy = PrecisionPolicy { start: 8, cap: 40 };
        let mut seen = Vec::new();
        let out = policy.run(|w| {
            seen.push(w);
            if w >= 30 { Ok(w) } else { Err(LaurentError::PrecisionExhausted { bound: w }) }
        });
        assert_eq!(out, Ok(32));
        assert_eq!(seen, vec![8, 16, 32]);
        let never = policy.run(|w| -> Result<(), _> { Err(LaurentError::PrecisionExhausted { bound: w }) });
        assert_eq!(never, Err(LaurentError::PrecisionCap { cap: 40 }));
    }

    #[test]
    fn rendering() {
        let f = series(-2, &[1, 0, -3], Some(4));
        assert_eq!(f.to_string(), "1·t^-2 + (-3) + O(t^4)");
    }
}
