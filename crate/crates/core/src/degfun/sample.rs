//! Random inputs for property checks. All draws go through a caller-supplied
//! RNG so runs are reproducible from a seed.

use rand::Rng;

use super::LocalizedElem;
use crate::fields::{Field, RatFunc, Rational, UPoly};
use crate::poly::{Monomial, Poly, Weighting};

/// `p/q` with `|p| <= bound`, `1 <= q <= bound`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound.max(1));
    Rational::new(p.into(), q.into())
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = small_rational(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A nonzero element `(a + b s) / d(s)` of `Q(s)` with `d` either `1` or `s - k`.
pub fn nonzero_ratfunc<R: Rng + ?Sized>(rng: &mut R) -> RatFunc {
    loop {
        let num = UPoly::from_coeffs(vec![small_rational(rng, 4), small_rational(rng, 3)]);
        if num.is_zero() {
            continue;
        }
        let den = if rng.gen_bool(0.5) { UPoly::one() } else { UPoly::s_minus(rng.gen_range(0..=4)) };
        return RatFunc::new(num, den).expect("nonzero denominator");
    }
}

/// A monomial of total degree at most `max_deg`.
pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, var_count: usize, max_deg: u32) -> Monomial {
    let mut exps = vec![0u32; var_count];
    if var_count > 0 {
        for _ in 0..rng.gen_range(0..=max_deg) {
            exps[rng.gen_range(0..var_count)] += 1;
        }
    }
    Monomial::new(exps)
}

/// Sum of up to `max_terms` random terms of total degree at most `max_deg`.
/// Cancellation can make the result zero.
pub fn random_poly<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    var_count: usize,
    max_deg: u32,
    max_terms: usize,
    mut coeff: impl FnMut(&mut R) -> F,
) -> Poly<F> {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut out = Poly::zero(var_count);
    for _ in 0..terms {
        let m = random_monomial(rng, var_count, max_deg);
        let c = coeff(rng);
        out = out.add(&Poly::monomial(var_count, m, c));
    }
    out
}

/// Like [`random_poly`] but never zero.
pub fn random_nonzero_poly<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    var_count: usize,
    max_deg: u32,
    max_terms: usize,
    mut coeff: impl FnMut(&mut R) -> F,
) -> Poly<F> {
    loop {
        let f = random_poly(rng, var_count, max_deg, max_terms, &mut coeff);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A nonzero homogeneous polynomial: one randomly chosen homogeneous
/// component of a random polynomial.
pub fn random_homogeneous<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    w: &Weighting,
    max_deg: u32,
    max_terms: usize,
    mut coeff: impl FnMut(&mut R) -> F,
) -> Poly<F> {
    let f = random_nonzero_poly(rng, w.var_count(), max_deg, max_terms, &mut coeff);
    let parts: Vec<Poly<F>> = w.components(&f).into_values().collect();
    parts[rng.gen_range(0..parts.len())].clone()
}

/// Axiom-suite input over `Q`: usually nonzero, occasionally exactly zero.
pub fn rational_poly<R: Rng + ?Sized>(rng: &mut R, var_count: usize, max_deg: u32) -> Poly<Rational> {
    if rng.gen_ratio(1, 16) {
        return Poly::zero(var_count);
    }
    random_poly(rng, var_count, max_deg, 4, |r| small_rational(r, 6))
}

/// Axiom-suite input over `Q(s)` in two variables.
pub fn ratfunc_poly<R: Rng + ?Sized>(rng: &mut R, max_deg: u32) -> Poly<RatFunc> {
    if rng.gen_ratio(1, 16) {
        return Poly::zero(2);
    }
    random_poly(rng, 2, max_deg, 4, nonzero_ratfunc)
}

/// A fraction with a random numerator (possibly zero) and nonzero denominator.
pub fn localized_elem<R: Rng + ?Sized>(rng: &mut R, var_count: usize, max_deg: u32) -> LocalizedElem<Rational> {
    let num = rational_poly(rng, var_count, max_deg);
    let den = random_nonzero_poly(rng, var_count, max_deg, 3, |r| nonzero_rational(r, 6));
    LocalizedElem::new(num, den).expect("nonzero denominator")
}
