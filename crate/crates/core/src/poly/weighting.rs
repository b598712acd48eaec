use std::collections::BTreeMap;

use super::{Monomial, Poly, PolyError};
use crate::fields::Field;
use crate::value::GroupValue;

/// A grading of `k[X_1, ..., X_n]` in which `X_i` is homogeneous of degree
/// `weights[i]`. Every monomial is homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting {
    weights: Vec<GroupValue>,
}

impl Weighting {
    pub fn new(weights: Vec<GroupValue>) -> Result<Self, PolyError> {
        let arity = weights.first().and_then(GroupValue::arity).unwrap_or(1);
        if weights.iter().any(|w| w.arity() != Some(arity)) {
            return Err(PolyError::InvalidWeights);
        }
        Ok(Self { weights })
    }

    pub fn from_ints(weights: &[i64]) -> Self {
        Self { weights: weights.iter().map(|&w| GroupValue::int(w)).collect() }
    }

    pub fn var_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[GroupValue] {
        &self.weights
    }

    pub fn arity(&self) -> usize {
        self.weights.first().and_then(GroupValue::arity).unwrap_or(1)
    }

    pub fn monomial_degree(&self, mono: &Monomial) -> GroupValue {
        mono.exps()
            .iter()
            .zip(&self.weights)
            .fold(GroupValue::zero(self.arity()), |acc, (&e, w)| acc.add(&w.times(e)))
    }

    /// Largest monomial weight occurring in `f`; `-inf` for zero.
    pub fn degree<F: Field>(&self, f: &Poly<F>) -> GroupValue {
        f.terms().map(|(m, _)| self.monomial_degree(m)).max().unwrap_or(GroupValue::NegInfinity)
    }

    /// Sum of the terms of `f` of weight exactly `d`.
    pub fn homogeneous_component<F: Field>(&self, f: &Poly<F>, d: &GroupValue) -> Poly<F> {
        f.filter_terms(|m| self.monomial_degree(m) == *d)
    }

    /// All nonzero homogeneous components keyed by degree.
    pub fn components<F: Field>(&self, f: &Poly<F>) -> BTreeMap<GroupValue, Poly<F>> {
        let mut out: BTreeMap<GroupValue, Poly<F>> = BTreeMap::new();
        for (m, c) in f.terms() {
            let term = Poly::monomial(f.var_count(), m.clone(), c.clone());
            out.entry(self.monomial_degree(m))
                .and_modify(|p| *p = p.add(&term))
                .or_insert(term);
        }
        out
    }

    /// The common degree of a homogeneous polynomial (`-inf` for zero), or
    /// `None` when `f` mixes degrees.
    pub fn homogeneous_degree<F: Field>(&self, f: &Poly<F>) -> Option<GroupValue> {
        let mut degrees = f.terms().map(|(m, _)| self.monomial_degree(m));
        let first = match degrees.next() {
            None => return Some(GroupValue::NegInfinity),
            Some(d) => d,
        };
        degrees.all(|d| d == first).then_some(first)
    }

    /// Top-degree homogeneous component.
    pub fn leading_form<F: Field>(&self, f: &Poly<F>) -> Poly<F> {
        let top = self.degree(f);
        if top.is_neg_infinity() {
            return f.clone();
        }
        self.homogeneous_component(f, &top)
    }
}
