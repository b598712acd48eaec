use std::fmt;


use super::{Field, FieldError, Rational, UPoly};

/// Element of `Q(s)`: `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(num: UPoly) -> Self {
        Self { num, den: UPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        Self::from_poly(UPoly::s())
    }

    /// `s - j`.
    pub fn s_minus(j: i64) -> Self {
        Self::from_poly(UPoly::s_minus(j))
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Reduces to canonical form. `den` must be nonzero.
    fn normalized(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self { num, den: UPoly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Multiplies by a polynomial, keeping canonical form.
    pub fn mul_poly(&self, p: &UPoly) -> Self {
        if p.is_zero() || self.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self { num: self.num.mul(p), den: UPoly::one() };
        }
        let g = p.gcd(&self.den);
        if g.is_one() {
            Self { num: self.num.mul(p), den: self.den.clone() }
        } else {
            Self { num: self.num.mul(&p.div_exact(&g)), den: self.den.div_exact(&g) }
        }
    }

    pub fn eval(&self, at: &Rational) -> Result<Rational, FieldError> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.num.eval(at) / d)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self { num: UPoly::zero(), den: UPoly::one() }
    }

    fn one() -> Self {
        Self { num: UPoly::one(), den: UPoly::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&rhs.num));
            }
            return Self::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            // coprime monic denominators: the sum is already reduced
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return Self { num, den: self.den.mul(&rhs.den) };
        }
        let left = rhs.den.div_exact(&g);
        let right = self.den.div_exact(&g);
        let num = self.num.mul(&left).add(&rhs.num.mul(&right));
        if num.is_zero() {
            return Self::zero();
        }
        // any common factor of num and b*(d/g) divides g
        let h = num.gcd(&g);
        if h.is_one() {
            Self { num, den: self.den.mul(&left) }
        } else {
            Self { num: num.div_exact(&h), den: self.den.div_exact(&h).mul(&left) }
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        // cross-cancel, result is canonical without a final gcd
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        let num = a.mul(&c);
        let den = b.mul(&d);
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let lc = self.num.leading_coeff().expect("nonzero").recip();
        Ok(Self { num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }

    fn needs_parens(&self) -> bool {
        !self.den.is_one() || !self.num.is_monomial()
    }

    fn is_negative(&self) -> bool {
        use num_traits::Signed;
        self.den.is_one() && self.num.leading_coeff().is_some_and(Signed::is_negative)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &UPoly| {
            let text = p.to_string();
            if p.is_monomial() && !text.contains('/') {
                text
            } else {
                format!("({text})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        <Self as Field>::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(UPoly::from_ints(num), UPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn canonical_after_construction() {
        // (2s - 2) / (2s^2 - 2) = 1/(s + 1)
        let x = rf(&[-2, 2], &[-2, 0, 2]);
        assert_eq!(x.numer(), &UPoly::one());
        assert_eq!(x.denom(), &UPoly::from_ints(&[1, 1]));
        assert!(RatFunc::new(UPoly::one(), UPoly::zero()).is_err());
    }

    #[test]
    fn field_ops() {
        let a = rf(&[1, 1], &[-1, 1]);
        let b = rf(&[3], &[2, 0, 1]);
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one());
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert_eq!(a.sub(&a), RatFunc::zero());
        // 1/(s-1) + 1/(s+1) = 2s/(s^2-1)
        let sum = rf(&[1], &[-1, 1]).add(&rf(&[1], &[1, 1]));
        assert_eq!(sum, rf(&[0, 2], &[-1, 0, 1]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(rf(&[1], &[-2, 2]).to_string(), "(1/2)/(s - 1)");
        assert_eq!(rf(&[1, 1], &[0, 1]).to_string(), "(s + 1)/s");
    }
}
