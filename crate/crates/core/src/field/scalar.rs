//! Field elements. A scalar is either a reduced rational function (generic
//! and one-variable fields), an exact rational, or a residue mod a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::poly::LaurentPoly;
use super::ratfunc::RatFunc;
use super::FieldError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Fn(RatFunc),
    Q(BigRational),
    Fp { v: u32, p: u32 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fn(f) => f.is_zero(),
            Scalar::Q(x) => x.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fn(f) => f.is_one(),
            Scalar::Q(x) => x.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// An integer constant in the same field as `self`.
    pub fn int_like(&self, c: i64) -> Scalar {
        match self {
            Scalar::Fn(_) => Scalar::Fn(RatFunc::from_int(c)),
            Scalar::Q(_) => Scalar::Q(BigRational::from_integer(BigInt::from(c))),
            Scalar::Fp { p, .. } => Scalar::Fp {
                v: c.rem_euclid(*p as i64) as u32,
                p: *p,
            },
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.int_like(0)
    }

    pub fn one_like(&self) -> Scalar {
        self.int_like(1)
    }

    fn compatible(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Fn(_), Scalar::Fn(_)) | (Scalar::Q(_), Scalar::Q(_)) => true,
            (Scalar::Fp { p, .. }, Scalar::Fp { p: p2, .. }) => p == p2,
            _ => false,
        }
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match (self, o) {
            (Scalar::Fn(a), Scalar::Fn(b)) => Scalar::Fn(a.add(b)),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: p2 }) if p == p2 => Scalar::Fp {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => return Err(FieldError::Mismatch),
        })
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        if !self.compatible(o) {
            return Err(FieldError::Mismatch);
        }
        self.checked_add(&o.neg_ref())
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match (self, o) {
            (Scalar::Fn(a), Scalar::Fn(b)) => Scalar::Fn(a.mul(b)),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: p2 }) if p == p2 => Scalar::Fp {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => return Err(FieldError::Mismatch),
        })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Fn(a) => Scalar::Fn(a.inv().expect("nonzero")),
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v, *p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        if !self.compatible(o) {
            return Err(FieldError::Mismatch);
        }
        self.checked_mul(&o.inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Fn(a) => Scalar::Fn(a.neg()),
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Scalar, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = self.one_like();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &b;
            }
            b = &b * &b;
            n >>= 1;
        }
        Ok(out)
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match self {
            Scalar::Fn(f) => Some(f),
            _ => None,
        }
    }
}

pub(crate) fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let mut r: u64 = 1;
    let mut x = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * x % p as u64;
        }
        x = x * x % p as u64;
        e >>= 1;
    }
    r as u32
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$checked(o)
                    .expect("scalar operands from different fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o)
            .expect("division by zero or mixed fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

// ---------------------------------------------------------------------------
// Text format.

fn fmt_monomial(a: i32, b: i32) -> Vec<String> {
    let mut v = Vec::new();
    if a != 0 {
        v.push(if a == 1 {
            "q".to_string()
        } else {
            format!("q^{a}")
        });
    }
    if b != 0 {
        v.push(if b == 1 {
            "rho".to_string()
        } else {
            format!("rho^{b}")
        });
    }
    v
}

/// Formats a Laurent polynomial as a sparse `c*q^a*rho^b` term list, highest
/// exponent first.
pub fn format_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, ((a, b), c)) in p.terms().iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        let mut factors = fmt_monomial(*a, *b);
        if !mag.is_one() || factors.is_empty() {
            factors.insert(0, mag.to_string());
        }
        let body = factors.join("*");
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Serialized in the textual format accepted by `Field::parse_scalar`.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fn(r) => {
                if r.is_laurent() {
                    write!(f, "{}", format_poly(r.num()))
                } else {
                    write!(f, "({})/({})", format_poly(r.num()), format_poly(r.den()))
                }
            }
            Scalar::Q(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}
