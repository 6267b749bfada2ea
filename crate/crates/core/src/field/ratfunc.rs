//! Reduced quotients of Laurent polynomials.
//!
//! Canonical form: the denominator is a polynomial divisible by neither `q`
//! nor `rho`, has a positive leading coefficient, and shares no factor
//! (integer content included) with the numerator. Zero is `0/1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::{Exp, LaurentPoly};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(BigInt::from(c)))
    }

    pub fn monomial(c: i64, e: Exp) -> Self {
        Self::from_poly(LaurentPoly::monomial(BigInt::from(c), e))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_univariate(&self) -> bool {
        self.num.is_univariate() && self.den.is_univariate()
    }

    /// Builds `num/den` and reduces it. Panics if `den` is zero; callers
    /// check for zero divisors before getting here.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::reduce(num, den)
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (dm, d0) = den.split_monomial();
        let num = num.shift((-dm.0, -dm.1));
        if d0.is_one() {
            return Self { num, den: d0 };
        }
        if let Some(c) = d0.as_constant() {
            let g = num.int_content().gcd(&c);
            let mut n = if g.is_one() {
                num
            } else {
                num.div_int_exact(&g)
            };
            let mut d = c / &g;
            if d.is_negative() {
                n = n.neg();
                d = -d;
            }
            return Self {
                num: n,
                den: LaurentPoly::constant(d),
            };
        }
        let (nm, n0) = num.split_monomial();
        let g = LaurentPoly::gcd_poly(&n0, &d0);
        let (mut n, mut d) = if g.is_one() {
            (num, d0)
        } else {
            (n0.div_exact_poly(&g).shift(nm), d0.div_exact_poly(&g))
        };
        if d.leading().is_some_and(|(_, c)| c.is_negative()) {
            n = n.neg();
            d = d.neg();
        }
        Self { num: n, den: d }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::reduce(num, self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Some(out)
    }

    /// Substitutes `rho = sign * q^k`; `None` if the denominator vanishes.
    pub fn substitute_rho(&self, sign: i8, k: i32) -> Option<Self> {
        let d = self.den.substitute_rho(sign, k);
        if d.is_zero() {
            return None;
        }
        Some(Self::reduce(self.num.substitute_rho(sign, k), d))
    }

    /// Is the value an integer constant?
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::monomial(1, (1, 0))
    }
    fn rho() -> RatFunc {
        RatFunc::monomial(1, (0, 1))
    }

    #[test]
    fn canonical_after_cancellation() {
        // (q^2 - 1)/(q - 1) == q + 1 regardless of path
        let one = RatFunc::one();
        let a = q().mul(&q()).sub(&one);
        let b = q().sub(&one);
        let lhs = a.mul(&b.inv().unwrap());
        assert_eq!(lhs, q().add(&one));
        assert!(lhs.is_laurent());
    }

    #[test]
    fn delta_reduces() {
        let z = q().sub(&q().inv().unwrap());
        let d = rho().sub(&rho().inv().unwrap()).mul(&z.inv().unwrap());
        // numerator q (rho^2 - 1) rho^-1, denominator q^2 - 1
        let back = d.mul(&z);
        assert_eq!(back, rho().sub(&rho().inv().unwrap()));
    }
}
