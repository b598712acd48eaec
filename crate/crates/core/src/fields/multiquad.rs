use std::collections::BTreeMap;
use std::fmt;

use super::{Field, FieldError, RatFunc, Rational, UPoly};

/// Largest supported tower level. Inversion costs `2^level` products.
pub const MAX_LEVEL: usize = 24;

/// Subset `F` of `{1, ..., N}` encoded as a bitmask: bit `j - 1` stands for `u_j`.
pub type SubsetMask = u32;

/// Element of `K_N = Q(s)(u_1, ..., u_N)` with `u_j^2 = s - j`.
///
/// Stored in the basis `mu(F) = prod_{j in F} u_j` indexed by subsets of
/// `{1, ..., N}`. Zero coordinates are never stored, so the element is zero
/// exactly when `coords` is empty.
#[derive(Clone)]
pub struct MultiQuad {
    level: usize,
    coords: BTreeMap<SubsetMask, RatFunc>,
}

fn mask_bits(mask: SubsetMask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
}

/// `prod_{j in mask} (s - j)`.
fn square_product(mask: SubsetMask) -> UPoly {
    mask_bits(mask).fold(UPoly::one(), |acc, j| acc.mul(&UPoly::s_minus(j as i64)))
}

fn highest_bit(mask: SubsetMask) -> usize {
    (32 - mask.leading_zeros()) as usize
}

impl MultiQuad {
    pub fn scalar(level: usize, c: RatFunc) -> Self {
        let mut coords = BTreeMap::new();
        if !c.is_zero() {
            coords.insert(0, c);
        }
        Self { level, coords }
    }

    /// The generator `u_j = sqrt(s - j)` viewed in `K_level`.
    pub fn u(j: usize, level: usize) -> Result<Self, FieldError> {
        if j == 0 || j > level {
            return Err(FieldError::LevelMismatch { left: j, right: level });
        }
        Self::basis(1 << (j - 1), level)
    }

    /// The basis element `mu(F)`.
    pub fn basis(mask: SubsetMask, level: usize) -> Result<Self, FieldError> {
        Self::from_coords(level, [(mask, RatFunc::one())])
    }

    pub fn from_coords(
        level: usize,
        coords: impl IntoIterator<Item = (SubsetMask, RatFunc)>,
    ) -> Result<Self, FieldError> {
        if level > MAX_LEVEL {
            return Err(FieldError::LevelTooLarge(level));
        }
        let mut out = Self { level, coords: BTreeMap::new() };
        for (mask, c) in coords {
            if highest_bit(mask) > level {
                return Err(FieldError::LevelMismatch { left: highest_bit(mask), right: level });
            }
            out.accumulate(mask, c);
        }
        Ok(out)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coords(&self) -> &BTreeMap<SubsetMask, RatFunc> {
        &self.coords
    }

    pub fn coord(&self, mask: SubsetMask) -> RatFunc {
        self.coords.get(&mask).cloned().unwrap_or_default()
    }

    /// Smallest level the element lives in.
    pub fn support_level(&self) -> usize {
        self.coords.keys().map(|&m| highest_bit(m)).max().unwrap_or(0)
    }

    pub fn is_scalar(&self) -> bool {
        self.coords.keys().all(|&m| m == 0)
    }

    fn accumulate(&mut self, mask: SubsetMask, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.coords.get_mut(&mask) {
            Some(slot) => {
                let sum = slot.add(&c);
                if sum.is_zero() {
                    self.coords.remove(&mask);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.coords.insert(mask, c);
            }
        }
    }

    /// Reinterprets the element in `K_new_level`.
    pub fn lift(&self, new_level: usize) -> Result<Self, FieldError> {
        if new_level < self.level {
            return Err(FieldError::LevelDecrease { from: self.level, to: new_level });
        }
        if new_level > MAX_LEVEL {
            return Err(FieldError::LevelTooLarge(new_level));
        }
        Ok(Self { level: new_level, coords: self.coords.clone() })
    }

    /// Product of two elements of the same tower level.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, FieldError> {
        if self.level != rhs.level {
            return Err(FieldError::LevelMismatch { left: self.level, right: rhs.level });
        }
        Ok(self.mul_unchecked(rhs, self.level))
    }

    fn mul_unchecked(&self, rhs: &Self, level: usize) -> Self {
        let mut out = Self { level, coords: BTreeMap::new() };
        for (&f, a) in &self.coords {
            for (&g, b) in &rhs.coords {
                let common = f & g;
                let mut prod = a.mul(b);
                if common != 0 {
                    prod = prod.mul_poly(&square_product(common));
                }
                out.accumulate(f ^ g, prod);
            }
        }
        out
    }

    /// Multiplication by an element of `Q(s)`.
    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self { level: self.level, coords: BTreeMap::new() };
        }
        Self { level: self.level, coords: self.coords.iter().map(|(&m, a)| (m, a.mul(c))).collect() }
    }

    /// The automorphism `u_j -> -u_j`.
    pub fn conjugate(&self, j: usize) -> Self {
        let bit = 1u32 << (j - 1);
        let coords = self
            .coords
            .iter()
            .map(|(&m, a)| (m, if m & bit != 0 { a.neg() } else { a.clone() }))
            .collect();
        Self { level: self.level, coords }
    }

    /// Inverse by successive conjugation: `x * sigma_j(x)` no longer involves
    /// `u_j`, so after clearing every generator the product is a scalar.
    pub fn try_inv(&self) -> Result<Self, FieldError> {
        if self.coords.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        let mut norm = self.clone();
        let mut cofactor = Self::scalar(self.level, RatFunc::one());
        for j in (1..=self.support_level()).rev() {
            let conj = norm.conjugate(j);
            cofactor = cofactor.mul_unchecked(&conj, self.level);
            norm = norm.mul_unchecked(&conj, self.level);
        }
        debug_assert!(norm.is_scalar());
        let r = norm.coord(0);
        Ok(cofactor.scale(&r.inv()?))
    }
}

impl PartialEq for MultiQuad {
    /// Mathematical equality: elements of different levels compare through the
    /// tower embedding.
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Field for MultiQuad {
    fn zero() -> Self {
        Self { level: 0, coords: BTreeMap::new() }
    }

    fn one() -> Self {
        Self::scalar(0, RatFunc::one())
    }

    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn is_one(&self) -> bool {
        self.coords.len() == 1 && self.coords.get(&0).is_some_and(|c| c.is_one())
    }

    fn add(&self, rhs: &Self) -> Self {
        let (big, small) = if self.coords.len() >= rhs.coords.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        out.level = self.level.max(rhs.level);
        for (&m, c) in &small.coords {
            out.accumulate(m, c.clone());
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> Self {
        Self { level: self.level, coords: self.coords.iter().map(|(&m, a)| (m, a.neg())).collect() }
    }

    /// Lifts both operands to the larger level; see [`MultiQuad::try_mul`] for
    /// the level-checked product.
    fn mul(&self, rhs: &Self) -> Self {
        if rhs.is_scalar() {
            let mut out = self.scale(&rhs.coord(0));
            out.level = self.level.max(rhs.level);
            return out;
        }
        if self.is_scalar() {
            let mut out = rhs.scale(&self.coord(0));
            out.level = self.level.max(rhs.level);
            return out;
        }
        self.mul_unchecked(rhs, self.level.max(rhs.level))
    }

    fn inv(&self) -> Result<Self, FieldError> {
        self.try_inv()
    }

    fn from_rational(q: &Rational) -> Self {
        Self::scalar(0, RatFunc::constant(q.clone()))
    }

    fn needs_parens(&self) -> bool {
        self.coords.len() > 1 || self.coords.iter().any(|(&m, c)| m != 0 || c.needs_parens())
    }
}

impl fmt::Display for MultiQuad {
    /// Renders `sum_F c_F * sqrt(prod_{j in F} (s - j))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (i, (&mask, c)) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if mask == 0 {
                write!(f, "({c})")?;
                continue;
            }
            let radicand: Vec<String> = mask_bits(mask).map(|j| format!("(s - {j})")).collect();
            let radicand = radicand.join("*");
            if c.is_one() {
                write!(f, "sqrt({radicand})")?;
            } else {
                write!(f, "({c})*sqrt({radicand})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiQuad[N={}]({self})", self.level)
    }
}

impl Default for MultiQuad {
    fn default() -> Self {
        <Self as Field>::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(j: usize, n: usize) -> MultiQuad {
        MultiQuad::u(j, n).unwrap()
    }

    fn one(n: usize) -> MultiQuad {
        MultiQuad::scalar(n, RatFunc::one())
    }

    #[test]
    fn generator_squares() {
        // u1 * u1 = (s - 1)
        let sq = u(1, 2).try_mul(&u(1, 2)).unwrap();
        assert_eq!(sq, MultiQuad::scalar(2, RatFunc::s_minus(1)));
        // u1 * u2 = mu({1,2})
        assert_eq!(u(1, 2).try_mul(&u(2, 2)).unwrap(), MultiQuad::basis(0b11, 2).unwrap());
    }

    #[test]
    fn conjugate_pair_product() {
        // (1 + u1)(1 - u1) = 2 - s
        let a = one(1).add(&u(1, 1));
        let b = one(1).sub(&u(1, 1));
        let expected = MultiQuad::scalar(1, RatFunc::from_poly(UPoly::from_ints(&[2, -1])));
        assert_eq!(a.try_mul(&b).unwrap(), expected);
    }

    #[test]
    fn inverse_examples() {
        let inv = u(1, 1).try_inv().unwrap();
        let expected = MultiQuad::from_coords(1, [(1, RatFunc::s_minus(1).inv().unwrap())]).unwrap();
        assert_eq!(inv, expected);

        let a = one(1).add(&u(1, 1));
        let two_minus_s = RatFunc::from_poly(UPoly::from_ints(&[2, -1]));
        let expected = one(1).sub(&u(1, 1)).scale(&two_minus_s.inv().unwrap());
        assert_eq!(a.try_inv().unwrap(), expected);
        assert_eq!(MultiQuad::zero().try_inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn level_errors() {
        assert!(matches!(u(1, 1).try_mul(&u(1, 2)), Err(FieldError::LevelMismatch { .. })));
        assert!(matches!(u(1, 3).lift(2), Err(FieldError::LevelDecrease { .. })));
        let lifted = u(1, 1).lift(3).unwrap();
        assert_eq!(lifted.level(), 3);
        assert_eq!(lifted.try_mul(&lifted).unwrap(), MultiQuad::scalar(3, RatFunc::s_minus(1)));
    }

    #[test]
    fn display() {
        let x = one(2).add(&u(1, 2).try_mul(&u(2, 2)).unwrap().scale(&RatFunc::constant(Rational::new(1.into(), 2.into()))));
        assert_eq!(x.to_string(), "(1) + (1/2)*sqrt((s - 1)*(s - 2))");
    }
}
