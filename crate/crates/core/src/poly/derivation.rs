use std::fmt;

use super::{Poly, PolyError};
use crate::fields::Field;

/// A `k`-derivation of `k[X_1, ..., X_n]`, determined by the images of the
/// variables: `D(f) = sum_i (df/dX_i) * D(X_i)`.
#[derive(Clone, PartialEq)]
pub struct Derivation<F> {
    images: Vec<Poly<F>>,
}

impl<F: Field> Derivation<F> {
    pub fn new(images: Vec<Poly<F>>) -> Result<Self, PolyError> {
        let n = images.len();
        for img in &images {
            img.check_var_count(n)?;
        }
        Ok(Self { images })
    }

    pub fn zero(var_count: usize) -> Self {
        Self { images: vec![Poly::zero(var_count); var_count] }
    }

    /// `d/dX_var`.
    pub fn partial(var_count: usize, var: usize) -> Self {
        let mut images = vec![Poly::zero(var_count); var_count];
        images[var] = Poly::one(var_count);
        Self { images }
    }

    pub fn var_count(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Poly<F>] {
        &self.images
    }

    pub fn image(&self, var: usize) -> &Poly<F> {
        &self.images[var]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, f: &Poly<F>) -> Result<Poly<F>, PolyError> {
        f.check_var_count(self.var_count())?;
        let mut out = Poly::zero(self.var_count());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                out = out.add(&d.mul(img));
            }
        }
        Ok(out)
    }

    /// `D^k(f)`.
    pub fn apply_n(&self, f: &Poly<F>, k: usize) -> Result<Poly<F>, PolyError> {
        let mut cur = f.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// Least `n` with `D^n(f) = 0`, searched up to `cap` applications.
    pub fn nilpotency_index(&self, f: &Poly<F>, cap: usize) -> Result<Option<usize>, PolyError> {
        let mut cur = f.clone();
        for n in 0..=cap {
            if cur.is_zero() {
                return Ok(Some(n));
            }
            cur = self.apply(&cur)?;
        }
        Ok(None)
    }

    /// Checks `D^n(X_i) = 0` for every variable within `cap` steps. A `false`
    /// answer means the cap was hit, not that `D` is not locally nilpotent.
    pub fn is_locally_nilpotent_within(&self, cap: usize) -> Result<bool, PolyError> {
        for i in 0..self.var_count() {
            let x = Poly::var(self.var_count(), i);
            if self.nilpotency_index(&x, cap)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f * D`.
    pub fn scale_by(&self, f: &Poly<F>) -> Result<Self, PolyError> {
        f.check_var_count(self.var_count())?;
        Ok(Self { images: self.images.iter().map(|g| g.mul(f)).collect() })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, PolyError> {
        if rhs.var_count() != self.var_count() {
            return Err(PolyError::VarCountMismatch { expected: self.var_count(), found: rhs.var_count() });
        }
        Ok(Self { images: self.images.iter().zip(&rhs.images).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> DerivationDisplay<'a, F> {
        DerivationDisplay { d: self, names }
    }
}

pub struct DerivationDisplay<'a, F> {
    d: &'a Derivation<F>,
    names: &'a [&'a str],
}

impl<F: Field> fmt::Display for DerivationDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, img) in self.d.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*d/d{}", img.display_with(self.names), self.names[i])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Derivation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Derivation").field("images", &self.images).finish()
    }
}
