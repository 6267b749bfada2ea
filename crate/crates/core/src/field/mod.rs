//! Ground fields for the parameters `q` and `rho`.
//!
//! Four kinds of field are supported: the generic field Q(q, rho), the
//! one-variable field Q(q) with rho sent to `±q^a`, Q with rational images
//! of q and rho, and GF(p) with images of q and rho in the unit group.

mod parse;
pub mod poly;
pub mod ratfunc;
pub mod scalar;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use poly::LaurentPoly;
pub use ratfunc::RatFunc;
pub use scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields")]
    Mismatch,
    #[error("q−q^{{-1}} not invertible")]
    QMinusQInvNotInvertible,
    #[error("invalid field spec: {0}")]
    InvalidSpec(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
    #[error("specialization undefined: {0}")]
    Specialization(String),
}

/// Which field the parameters live in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// Q(q, rho).
    Generic,
    /// Q(q) with rho = sign * q^exp.
    OneVar { sign: i8, exp: i32 },
    /// Q with the given images of q and rho.
    Rational { q: BigRational, rho: BigRational },
    /// GF(p) with the given residues for q and rho.
    Prime { p: u32, q: u32, rho: u32 },
}

impl FieldSpec {
    pub fn q_power(n: i32) -> Self {
        FieldSpec::OneVar { sign: 1, exp: n }
    }

    pub fn rho_branch(sign: i8, a: i32) -> Self {
        FieldSpec::OneVar { sign, exp: a }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Generic => write!(f, "generic"),
            FieldSpec::OneVar { sign: 1, exp: 0 } => write!(f, "delta-zero"),
            FieldSpec::OneVar { sign: -1, exp: 0 } => write!(f, "delta-zero:neg"),
            FieldSpec::OneVar { sign: 1, exp } => write!(f, "q-power:{exp}"),
            FieldSpec::OneVar { exp, .. } => write!(f, "neg-q-power:{exp}"),
            FieldSpec::Rational { q, rho } => write!(f, "rational:{q},{rho}"),
            FieldSpec::Prime { p, q, rho } => write!(f, "gfp:{p},{q},{rho}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Parses `generic`, `q-power:<n>`, `neg-q-power:<n>`, `delta-zero`,
    /// `delta-zero:neg`, `rational:<q>,<rho>` and `gfp:<p>,<q>,<rho>`.
    /// `rho2:<a>` denotes two fields and is expanded by [`parse_field_specs`].
    fn from_str(s: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::InvalidSpec(s.to_string());
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        match (head, tail) {
            ("generic", None) => Ok(FieldSpec::Generic),
            ("delta-zero", None) => Ok(FieldSpec::OneVar { sign: 1, exp: 0 }),
            ("delta-zero", Some("neg")) => Ok(FieldSpec::OneVar { sign: -1, exp: 0 }),
            ("q-power", Some(n)) => Ok(FieldSpec::q_power(n.parse().map_err(|_| bad())?)),
            ("neg-q-power", Some(n)) => Ok(FieldSpec::OneVar {
                sign: -1,
                exp: n.parse().map_err(|_| bad())?,
            }),
            ("rational", Some(t)) => {
                let (a, b) = t.split_once(',').ok_or_else(bad)?;
                let parse = |x: &str| -> Result<BigRational, FieldError> {
                    let x = x.trim();
                    match x.split_once('/') {
                        Some((n, d)) => {
                            let n: BigInt = n.parse().map_err(|_| bad())?;
                            let d: BigInt = d.parse().map_err(|_| bad())?;
                            if d.is_zero() {
                                return Err(bad());
                            }
                            Ok(BigRational::new(n, d))
                        }
                        None => Ok(BigRational::from_integer(x.parse().map_err(|_| bad())?)),
                    }
                };
                Ok(FieldSpec::Rational {
                    q: parse(a)?,
                    rho: parse(b)?,
                })
            }
            ("gfp", Some(t)) => {
                let v: Vec<i64> = t
                    .split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad())?;
                if v.len() != 3 || v[0] <= 2 || v[0] > (1 << 30) {
                    return Err(bad());
                }
                let p = v[0];
                Ok(FieldSpec::Prime {
                    p: p as u32,
                    q: v[1].rem_euclid(p) as u32,
                    rho: v[2].rem_euclid(p) as u32,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// Parses a command-line field spec; `rho2:<a>` expands to the two branches
/// rho = q^a and rho = -q^a.
pub fn parse_field_specs(s: &str) -> Result<Vec<FieldSpec>, FieldError> {
    if let Some(a) = s.strip_prefix("rho2:") {
        let a: i32 = a
            .parse()
            .map_err(|_| FieldError::InvalidSpec(s.to_string()))?;
        return Ok(vec![
            FieldSpec::rho_branch(1, a),
            FieldSpec::rho_branch(-1, a),
        ]);
    }
    Ok(vec![s.parse()?])
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Quantum characteristic: least `e` with `1 + q^2 + ... + q^{2(e-1)} = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuantumChar {
    Finite(u32),
    Infinite,
}

impl QuantumChar {
    /// `e > n`.
    pub fn exceeds(&self, n: usize) -> bool {
        match self {
            QuantumChar::Infinite => true,
            QuantumChar::Finite(e) => *e as usize > n,
        }
    }

    /// Characteristic zero, with `q^2` a primitive `m`-th root of unity
    /// (`m = 0` meaning `q^2` is not a root of unity).
    pub fn of_root_of_unity(m: u32) -> Self {
        if m <= 1 {
            QuantumChar::Infinite
        } else {
            QuantumChar::Finite(m)
        }
    }

    /// GF(p) with the given residue for q. Unlike algebra fields this also
    /// accepts `q^2 = 1`, where the answer is `p`.
    pub fn of_prime_field(p: u32, q: u32) -> Self {
        let q2 = (q as u64 * q as u64 % p as u64) as u32;
        if q2 == 0 {
            return QuantumChar::Infinite;
        }
        if q2 == 1 {
            return QuantumChar::Finite(p);
        }
        let mut x = q2 as u64;
        let mut k = 1u32;
        while x != 1 {
            x = x * q2 as u64 % p as u64;
            k += 1;
        }
        QuantumChar::Finite(k)
    }
}

impl fmt::Display for QuantumChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumChar::Finite(e) => write!(f, "{e}"),
            QuantumChar::Infinite => write!(f, "inf"),
        }
    }
}

/// A concrete field with cached images of the parameters.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: Scalar,
    rho: Scalar,
    q_inv: Scalar,
    rho_inv: Scalar,
    z: Scalar,
    delta: Scalar,
}

impl PartialEq for Field {
    fn eq(&self, o: &Self) -> bool {
        self.spec == o.spec
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let (q, rho) = match &spec {
            FieldSpec::Generic => (
                Scalar::Fn(RatFunc::monomial(1, (1, 0))),
                Scalar::Fn(RatFunc::monomial(1, (0, 1))),
            ),
            FieldSpec::OneVar { sign, exp } => {
                if *sign != 1 && *sign != -1 {
                    return Err(FieldError::InvalidSpec(spec.to_string()));
                }
                (
                    Scalar::Fn(RatFunc::monomial(1, (1, 0))),
                    Scalar::Fn(RatFunc::monomial(*sign as i64, (*exp, 0))),
                )
            }
            FieldSpec::Rational { q, rho } => (Scalar::Q(q.clone()), Scalar::Q(rho.clone())),
            FieldSpec::Prime { p, q, rho } => {
                if *p % 2 == 0 || !is_prime(*p) {
                    return Err(FieldError::InvalidSpec(format!("{p} is not an odd prime")));
                }
                (
                    Scalar::Fp { v: q % p, p: *p },
                    Scalar::Fp { v: rho % p, p: *p },
                )
            }
        };
        if q.is_zero() || rho.is_zero() {
            return Err(FieldError::InvalidSpec("q and rho must be units".into()));
        }
        let q_inv = q.inv()?;
        let rho_inv = rho.inv()?;
        let z = &q - &q_inv;
        if z.is_zero() {
            return Err(FieldError::QMinusQInvNotInvertible);
        }
        let delta = (&rho - &rho_inv).checked_div(&z)?;
        Ok(Self {
            spec,
            q,
            rho,
            q_inv,
            rho_inv,
            z,
            delta,
        })
    }

    pub fn generic() -> Self {
        Self::new(FieldSpec::Generic).expect("generic field")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn rho(&self) -> &Scalar {
        &self.rho
    }

    pub fn q_inv(&self) -> &Scalar {
        &self.q_inv
    }

    pub fn rho_inv(&self) -> &Scalar {
        &self.rho_inv
    }

    /// `q - q^{-1}`.
    pub fn z(&self) -> &Scalar {
        &self.z
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    pub fn q_pow(&self, e: i32) -> Scalar {
        self.q.pow(e).expect("q is a unit")
    }

    pub fn rho_pow(&self, e: i32) -> Scalar {
        self.rho.pow(e).expect("rho is a unit")
    }

    pub fn int(&self, c: i64) -> Scalar {
        self.q.int_like(c)
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn delta_is_zero(&self) -> bool {
        self.delta.is_zero()
    }

    pub fn is_generic(&self) -> bool {
        self.spec == FieldSpec::Generic
    }

    pub fn quantum_characteristic(&self) -> QuantumChar {
        match &self.spec {
            // q is transcendental; over Q the only rational roots of unity
            // are ±1, and q^2 = 1 is excluded.
            FieldSpec::Generic | FieldSpec::OneVar { .. } | FieldSpec::Rational { .. } => {
                QuantumChar::Infinite
            }
            FieldSpec::Prime { p, q, .. } => QuantumChar::of_prime_field(*p, *q),
        }
    }

    /// Is `rho^2 = q^{2a}` in this field?
    pub fn rho_squared_is_q_power(&self, a: i32) -> bool {
        let lhs = &self.rho * &self.rho;
        lhs == self.q_pow(2 * a)
    }

    /// Image of a generic element under the ring map fixed by this field.
    pub fn specialize(&self, x: &RatFunc) -> Result<Scalar, FieldError> {
        match &self.spec {
            FieldSpec::Generic => Ok(Scalar::Fn(x.clone())),
            FieldSpec::OneVar { sign, exp } => x
                .substitute_rho(*sign, *exp)
                .map(Scalar::Fn)
                .ok_or_else(|| FieldError::Specialization("denominator vanishes".into())),
            _ => {
                let num = self.eval_poly(x.num());
                let den = self.eval_poly(x.den());
                if den.is_zero() {
                    return Err(FieldError::Specialization("denominator vanishes".into()));
                }
                num.checked_div(&den)
            }
        }
    }

    fn eval_poly(&self, p: &LaurentPoly) -> Scalar {
        let mut acc = self.zero();
        for ((a, b), c) in p.terms() {
            let coef = self.bigint(c);
            let term = &(&coef * &self.q_pow(*a)) * &self.rho_pow(*b);
            acc += &term;
        }
        acc
    }

    pub fn bigint(&self, c: &BigInt) -> Scalar {
        match &self.q {
            Scalar::Fn(_) => Scalar::Fn(RatFunc::from_poly(LaurentPoly::constant(c.clone()))),
            Scalar::Q(_) => Scalar::Q(BigRational::from_integer(c.clone())),
            Scalar::Fp { p, .. } => {
                let m = BigInt::from(*p);
                let mut r = c % &m;
                if r.is_negative() {
                    r += &m;
                }
                Scalar::Fp {
                    v: r.try_into().expect("residue fits"),
                    p: *p,
                }
            }
        }
    }

    /// Parses a scalar in the textual format (sums of `c*q^a*rho^b` terms,
    /// with parentheses and `/`).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        parse::parse(self, s)
    }

    /// Content scalar of a node of residue `k` on the given side.
    pub fn content_scalar(&self, side: u8, k: i32) -> Scalar {
        let one = self.one();
        if side == 1 {
            &(&one - &self.q_pow(2 * k)) / &self.z
        } else {
            &(&one - &self.q_pow(-2 * k)) / &(-&self.z)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}

/// `true` when `x` is a rational integer power of `q` in the one-variable
/// field; used for pretty printing.
pub fn is_unit_monomial(x: &Scalar) -> bool {
    match x {
        Scalar::Fn(r) => {
            r.is_laurent() && r.num().is_monomial() && {
                let c = &r.num().terms()[0].1;
                c.is_one() || (-c).is_one()
            }
        }
        Scalar::Q(v) => !v.is_zero(),
        Scalar::Fp { v, .. } => *v != 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_in_each_kind() {
        let g = Field::generic();
        assert!(!g.delta_is_zero());
        let f = Field::new("delta-zero".parse().unwrap()).unwrap();
        assert!(f.delta_is_zero());
        let f = Field::new("delta-zero:neg".parse().unwrap()).unwrap();
        assert!(f.delta_is_zero());
        let f = Field::new("rational:2,4".parse().unwrap()).unwrap();
        assert_eq!(f.delta().to_string(), "5/2");
    }

    #[test]
    fn q_squared_one_is_rejected() {
        let e = Field::new("gfp:7,6,2".parse().unwrap()).unwrap_err();
        assert_eq!(e, FieldError::QMinusQInvNotInvertible);
        assert_eq!(e.to_string(), "q−q^{-1} not invertible");
        assert!(Field::new("rational:-1,3".parse().unwrap()).is_err());
    }

    #[test]
    fn quantum_characteristic_examples() {
        assert_eq!(
            Field::generic().quantum_characteristic(),
            QuantumChar::Infinite
        );
        assert_eq!(QuantumChar::of_prime_field(3, 1), QuantumChar::Finite(3));
        let f = Field::new("gfp:7,3,2".parse().unwrap()).unwrap();
        assert_eq!(f.quantum_characteristic(), QuantumChar::Finite(3));
    }

    #[test]
    fn content_scalars() {
        let g = Field::generic();
        assert!(g.content_scalar(1, 0).is_zero());
        assert!(g.content_scalar(2, 0).is_zero());
        assert_eq!(g.content_scalar(1, 1), -g.q());
        assert_eq!(g.content_scalar(2, 1), -g.q_inv());
    }
}
