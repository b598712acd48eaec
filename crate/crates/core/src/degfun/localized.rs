use std::fmt;

use super::{DegreeError, DegreeFunction, DegreeKind, RingElem};
use crate::fields::Field;
use crate::poly::{Derivation, Poly};
use crate::value::GroupValue;

/// A fraction `num / den` in a localization of a polynomial ring.
/// Fractions are not reduced; degrees do not depend on the representative.
#[derive(Clone, PartialEq)]
pub struct LocalizedElem<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> LocalizedElem<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self, DegreeError> {
        if den.is_zero() {
            return Err(DegreeError::ZeroDenominator);
        }
        num.check_var_count(den.var_count())?;
        Ok(Self { num, den })
    }

    pub fn from_poly(num: Poly<F>) -> Self {
        let den = Poly::one(num.var_count());
        Self { num, den }
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    /// Equality of fractions: `a/b = c/d` iff `ad = bc`.
    pub fn same_fraction(&self, rhs: &Self) -> bool {
        self.num.mul(&rhs.den) == rhs.num.mul(&self.den)
    }
}

impl<F: Field> RingElem for LocalizedElem<F> {
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self { num: self.num.add(&rhs.num), den: self.den.clone() };
        }
        Self { num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), den: self.den.mul(&rhs.den) }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self { num: self.num.mul(&rhs.num), den: self.den.mul(&rhs.den) }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl<F: Field> fmt::Display for LocalizedElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl<F: Field> fmt::Debug for LocalizedElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalizedElem({self})")
    }
}

/// The unique extension `DEG(x/s) = deg x - deg s` of a base degree function.
#[derive(Clone, Debug)]
pub struct Localized<D> {
    base: D,
}

impl<D> Localized<D> {
    pub fn new(base: D) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &D {
        &self.base
    }
}

impl<F: Field, D: DegreeFunction<Poly<F>>> DegreeFunction<LocalizedElem<F>> for Localized<D> {
    fn kind(&self) -> DegreeKind {
        DegreeKind::Localized
    }

    fn degree(&self, e: &LocalizedElem<F>) -> Result<GroupValue, DegreeError> {
        if e.num.is_zero() {
            return Ok(GroupValue::NegInfinity);
        }
        let top = self.base.degree(&e.num)?;
        let bottom = self.base.degree(&e.den)?;
        Ok(top.checked_sub(&bottom).expect("nonzero denominator has finite degree"))
    }
}

/// `S⁻¹D(x/s) = (D(x)s - xD(s)) / s²`.
pub fn localized_derivation<F: Field>(d: &Derivation<F>, e: &LocalizedElem<F>) -> Result<LocalizedElem<F>, DegreeError> {
    let dn = d.apply(&e.num)?;
    let ds = d.apply(&e.den)?;
    let num = dn.mul(&e.den).sub(&e.num.mul(&ds));
    LocalizedElem::new(num, e.den.mul(&e.den))
}

/// `δ_{S⁻¹D}(e) = DEG(S⁻¹D e) - DEG(e)`.
pub fn delta_localized<F: Field, D: DegreeFunction<Poly<F>>>(
    df: &Localized<D>,
    d: &Derivation<F>,
    e: &LocalizedElem<F>,
) -> Result<GroupValue, DegreeError> {
    if e.num.is_zero() {
        return Ok(GroupValue::NegInfinity);
    }
    let image = localized_derivation(d, e)?;
    if image.num.is_zero() {
        return Ok(GroupValue::NegInfinity);
    }
    let top = df.degree(&image)?;
    let base = df.degree(e)?;
    Ok(top.checked_sub(&base).expect("finite"))
}
