use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use super::{DegreeError, DegreeFunction, DegreeKind};
use crate::fields::{Embed, Field};
use crate::laurent::{LaurentError, LaurentSeries, PrecisionPolicy, Substitution};
use crate::poly::{Poly, PolyError};
use crate::value::GroupValue;

/// Supplies the series images of the variables at a requested precision.
pub trait SeriesSource<F>: Send + Sync {
    fn var_count(&self) -> usize;

    /// Series known at least below `t^window`, or as far as the source can go.
    fn series_at(&self, window: i64) -> Result<Vec<LaurentSeries<F>>, LaurentError>;
}

/// Arguments that do not depend on the requested window.
#[derive(Clone)]
pub struct FixedSeries<F>(pub Vec<LaurentSeries<F>>);

impl<F: Field> SeriesSource<F> for FixedSeries<F> {
    fn var_count(&self) -> usize {
        self.0.len()
    }

    fn series_at(&self, _window: i64) -> Result<Vec<LaurentSeries<F>>, LaurentError> {
        Ok(self.0.clone())
    }
}

/// `deg(f) = -ord f(args)` for series arguments making the substitution injective.
pub struct LaurentPullback<F, S> {
    source: S,
    policy: PrecisionPolicy,
    cache: RwLock<BTreeMap<i64, Arc<Substitution<F>>>>,
}

impl<F: Field, S: SeriesSource<F>> LaurentPullback<F, S> {
    pub fn new(source: S, policy: PrecisionPolicy) -> Self {
        Self { source, policy, cache: RwLock::new(BTreeMap::new()) }
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn policy(&self) -> PrecisionPolicy {
        self.policy
    }

    fn substitution(&self, window: i64) -> Result<Arc<Substitution<F>>, LaurentError> {
        if let Some(sub) = self.cache.read().expect("series cache").get(&window) {
            return Ok(sub.clone());
        }
        let sub = Arc::new(Substitution::new(self.source.series_at(window)?));
        self.cache.write().expect("series cache").entry(window).or_insert(sub.clone());
        Ok(sub)
    }

    /// `f(args)` at the first window on which its order is determined.
    pub fn series<C: Field>(&self, f: &Poly<C>) -> Result<LaurentSeries<F>, DegreeError>
    where
        F: Embed<C>,
    {
        if f.var_count() != self.source.var_count() {
            return Err(PolyError::VarCountMismatch { expected: self.source.var_count(), found: f.var_count() }.into());
        }
        if f.is_zero() {
            return Ok(LaurentSeries::zero());
        }
        let out = self.policy.run(|window| {
            let s = self.substitution(window)?.eval(f)?;
            s.ord()?;
            Ok(s)
        })?;
        Ok(out)
    }
}

impl<C: Field, F: Embed<C>, S: SeriesSource<F>> DegreeFunction<Poly<C>> for LaurentPullback<F, S> {
    fn kind(&self) -> DegreeKind {
        DegreeKind::Laurent
    }

    fn degree(&self, f: &Poly<C>) -> Result<GroupValue, DegreeError> {
        if f.is_zero() {
            return Ok(GroupValue::NegInfinity);
        }
        let ord = self.series(f)?.ord()?;
        Ok(GroupValue::int(-ord))
    }
}
