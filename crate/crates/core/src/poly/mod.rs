//! Sparse multivariate polynomials, derivations, weighted gradings and the
//! expression parser/printer.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::fields::Field;

mod derivation;
mod parse;
mod weighting;

pub use derivation::Derivation;
pub use parse::{parse_poly, ParseError, ParseErrorKind, PolyParser};
pub use weighting::Weighting;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VarCountMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {var_count} variables")]
    VariableOutOfRange { index: usize, var_count: usize },
    #[error("weights must be finite values of a common arity")]
    InvalidWeights,
}

/// Exponent vector, ordered graded-lexicographically (total degree first, then
/// lexicographic with the first variable most significant).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(var_count: usize) -> Self {
        Monomial(vec![0; var_count])
    }

    pub fn var(var_count: usize, index: usize) -> Self {
        let mut exps = vec![0; var_count];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Polynomial in `var_count` variables over the field `F`.
///
/// Zero coefficients are never stored; the zero polynomial has no terms.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    var_count: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(var_count: usize) -> Self {
        Self { var_count, terms: BTreeMap::new() }
    }

    pub fn one(var_count: usize) -> Self {
        Self::constant(var_count, F::one())
    }

    pub fn constant(var_count: usize, c: F) -> Self {
        Self::monomial(var_count, Monomial::one(var_count), c)
    }

    pub fn var(var_count: usize, index: usize) -> Self {
        Self::monomial(var_count, Monomial::var(var_count, index), F::one())
    }

    pub fn monomial(var_count: usize, mono: Monomial, c: F) -> Self {
        assert_eq!(mono.0.len(), var_count, "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Self { var_count, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(var_count: usize, terms: impl IntoIterator<Item = (Vec<u32>, F)>) -> Self {
        let mut out = Self::zero(var_count);
        for (exps, c) in terms {
            assert_eq!(exps.len(), var_count, "monomial arity");
            out.add_term(Monomial(exps), c);
        }
        out
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> F {
        self.terms.get(mono).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one(self.var_count))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Coefficient of `X_var^k`, as a polynomial not involving `X_var`.
    pub fn coefficient_in(&self, var: usize, k: u32) -> Self {
        let mut out = Self::zero(self.var_count);
        for (m, c) in &self.terms {
            if m.0[var] == k {
                let mut exps = m.0.clone();
                exps[var] = 0;
                out.terms.insert(Monomial(exps), c.clone());
            }
        }
        out
    }

    pub fn check_var_count(&self, expected: usize) -> Result<(), PolyError> {
        if self.var_count == expected {
            Ok(())
        } else {
            Err(PolyError::VarCountMismatch { expected, found: self.var_count })
        }
    }

    fn add_term(&mut self, mono: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(slot) => {
                let sum = slot.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.var_count, rhs.var_count, "variable count mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { var_count: self.var_count, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.var_count, rhs.var_count, "variable count mismatch");
        let mut out = Self::zero(self.var_count);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.var_count);
        }
        Self { var_count: self.var_count, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.var_count);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `X_var`.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.var_count);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(Monomial(exps), c.scale_int(i64::from(e)));
        }
        out
    }

    /// Maps coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut out = Poly::zero(self.var_count);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Self {
            var_count: self.var_count,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Renders with the given variable names (graded-lex, highest term first).
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, names: NameSource::Given(names) }
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        self.display_with(names).to_string()
    }
}

enum NameSource<'a> {
    Given(&'a [&'a str]),
    Default,
}

pub struct PolyDisplay<'a, F> {
    poly: &'a Poly<F>,
    names: NameSource<'a>,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.poly;
        if poly.is_zero() {
            return write!(f, "0");
        }
        let name = |i: usize| -> String {
            match &self.names {
                NameSource::Given(names) => names[i].to_string(),
                NameSource::Default => format!("x{i}"),
            }
        };
        for (k, (m, c)) in poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { c.neg() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !mag.is_one() {
                if mag.needs_parens() {
                    factors.push(format!("({mag})"));
                } else {
                    factors.push(mag.to_string());
                }
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(name(i)),
                    _ => factors.push(format!("{}^{e}", name(i))),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay { poly: self, names: NameSource::Default }.fmt(f)
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.var_count)
    }
}
