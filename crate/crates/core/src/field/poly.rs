//! Laurent polynomials in `q` and `rho` with integer coefficients, and the
//! polynomial gcd machinery used to keep rational functions reduced.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent pair `(power of q, power of rho)`.
pub type Exp = (i32, i32);

/// Sparse Laurent polynomial. Terms are sorted by exponent (lexicographic,
/// q first) and never carry a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: Vec<(Exp, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, (0, 0))
    }

    pub fn monomial(c: BigInt, e: Exp) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(e, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Exp, BigInt)>>(it: I) -> Self {
        let mut acc: BTreeMap<Exp, BigInt> = BTreeMap::new();
        for (e, c) in it {
            *acc.entry(e).or_default() += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Exp, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    /// The constant value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [((0, 0), c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// True when no term involves rho.
    pub fn is_univariate(&self) -> bool {
        self.terms.iter().all(|((_, b), _)| *b == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Exp, BigInt)> {
        self.terms.last()
    }

    /// Componentwise minimum exponent.
    pub fn min_exp(&self) -> Exp {
        let a = self.terms.iter().map(|(e, _)| e.0).min().unwrap_or(0);
        let b = self.terms.iter().map(|(e, _)| e.1).min().unwrap_or(0);
        (a, b)
    }

    /// Multiplies by the monomial `q^a rho^b`.
    pub fn shift(&self, (a, b): Exp) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Divides every coefficient by `k`, which must divide each exactly.
    pub fn div_int_exact(&self, k: &BigInt) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c / k)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.shift(*e).scale(c);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.shift(*e).scale(c);
        }
        let mut acc: BTreeMap<Exp, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry((ea.0 + eb.0, ea.1 + eb.1)).or_default() += ca * cb;
            }
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// gcd of the integer coefficients (non-negative).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Substitutes rho by `sign * q^k`, giving a polynomial in q alone.
    pub fn substitute_rho(&self, sign: i8, k: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|((a, b), c)| {
            let c = if sign < 0 && b.rem_euclid(2) == 1 {
                -c
            } else {
                c.clone()
            };
            ((a + k * b, 0), c)
        }))
    }

    /// Dense form in `q` with coefficients dense in `rho`, after removing the
    /// monomial `q^min rho^min`. Returns `(dense, removed_monomial)`.
    fn to_dense(&self) -> (Dense2, Exp) {
        let (ma, mb) = self.min_exp();
        let da = self.terms.iter().map(|(e, _)| e.0 - ma).max().unwrap_or(0) as usize;
        let mut d: Dense2 = vec![Vec::new(); da + 1];
        for ((a, b), c) in &self.terms {
            let row = &mut d[(a - ma) as usize];
            let idx = (b - mb) as usize;
            if row.len() <= idx {
                row.resize(idx + 1, BigInt::zero());
            }
            row[idx] = c.clone();
        }
        (d, (ma, mb))
    }

    fn from_dense(d: &Dense2, shift: Exp) -> Self {
        let mut terms = Vec::new();
        for (a, row) in d.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push(((a as i32 + shift.0, b as i32 + shift.1), c.clone()));
                }
            }
        }
        terms.sort_by_key(|x| x.0);
        Self { terms }
    }

    /// Splits off the largest monomial factor: `self = q^a rho^b * rest` where
    /// `rest` is a polynomial divisible by neither q nor rho.
    pub fn split_monomial(&self) -> (Exp, Self) {
        let m = self.min_exp();
        (m, self.shift((-m.0, -m.1)))
    }

    /// Polynomial gcd of two polynomials that have no monomial factor; the
    /// result has positive leading coefficient.
    pub fn gcd_poly(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalize_sign();
        }
        if b.is_zero() {
            return a.normalize_sign();
        }
        if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
            return Self::constant(x.gcd(&y));
        }
        if let Some(x) = a.as_constant() {
            return Self::constant(x.gcd(&b.int_content()));
        }
        if let Some(y) = b.as_constant() {
            return Self::constant(y.gcd(&a.int_content()));
        }
        // Monomials are units; only the monomial-free parts matter.
        let (da, _) = a.to_dense();
        let (db, _) = b.to_dense();
        let g = gcd2(&da, &db);
        Self::from_dense(&g, (0, 0)).normalize_sign()
    }

    /// Exact division by a polynomial `d` that divides `self`.
    pub fn div_exact_poly(&self, d: &Self) -> Self {
        if d.is_one() {
            return self.clone();
        }
        if let Some(c) = d.as_constant() {
            return self.div_int_exact(&c);
        }
        let (nm, n0) = self.split_monomial();
        let (dm, d0) = d.split_monomial();
        let (dn, _) = n0.to_dense();
        let (dd, _) = d0.to_dense();
        let qd = div2_exact(&dn, &dd).expect("inexact polynomial division");
        Self::from_dense(&qd, (nm.0 - dm.0, nm.1 - dm.1))
    }

    /// Flips the sign so that the leading coefficient is positive.
    pub fn normalize_sign(&self) -> Self {
        match self.terms.last() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Dense arithmetic: Z[rho] coefficients (ascending) inside polynomials in q.

type Dense1 = Vec<BigInt>;
type Dense2 = Vec<Dense1>;

fn trim1(a: &mut Dense1) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn trim2(a: &mut Dense2) {
    for c in a.iter_mut() {
        trim1(c);
    }
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
}

fn add1(a: &Dense1, b: &Dense1) -> Dense1 {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim1(&mut out);
    out
}

fn sub1(a: &Dense1, b: &Dense1) -> Dense1 {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim1(&mut out);
    out
}

fn mul1(a: &Dense1, b: &Dense1) -> Dense1 {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim1(&mut out);
    out
}

fn content1(a: &Dense1) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn div1_int(a: &Dense1, k: &BigInt) -> Dense1 {
    a.iter().map(|c| c / k).collect()
}

/// Exact division in Z[rho]; `None` when the division is not exact.
fn div1_exact(a: &Dense1, b: &Dense1) -> Option<Dense1> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if b.len() > a.len() {
        return None;
    }
    let mut rem = a.clone();
    let lb = b.last().unwrap();
    let mut quo = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + b.len() - 1];
        if c.is_zero() {
            continue;
        }
        let (qc, r) = c.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &qc * bj;
        }
        quo[k] = qc;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim1(&mut quo);
    Some(quo)
}

fn prem1(a: &Dense1, b: &Dense1) -> Dense1 {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let k = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &lr * bj;
        }
        trim1(&mut r);
    }
    r
}

fn pp1(a: &Dense1) -> Dense1 {
    let c = content1(a);
    let mut out = if c.is_one() || c.is_zero() {
        a.clone()
    } else {
        div1_int(a, &c)
    };
    if out.last().is_some_and(|x| x.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

fn gcd1(a: &Dense1, b: &Dense1) -> Dense1 {
    if a.is_empty() {
        return pp1_keep_content(b);
    }
    if b.is_empty() {
        return pp1_keep_content(a);
    }
    let c = content1(a).gcd(&content1(b));
    let (mut x, mut y) = (pp1(a), pp1(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem1(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { pp1(&r) };
    }
    x.iter().map(|v| v * &c).collect()
}

fn pp1_keep_content(a: &Dense1) -> Dense1 {
    if a.last().is_some_and(|x| x.is_negative()) {
        a.iter().map(|x| -x).collect()
    } else {
        a.clone()
    }
}

fn content2(a: &Dense2) -> Dense1 {
    let mut g: Dense1 = Vec::new();
    for c in a {
        if c.is_empty() {
            continue;
        }
        g = gcd1(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn pp2(a: &Dense2) -> Dense2 {
    let c = content2(a);
    let mut out: Dense2 = if c.len() == 1 && c[0].is_one() {
        a.clone()
    } else {
        a.iter()
            .map(|x| div1_exact(x, &c).expect("content divides"))
            .collect()
    };
    if leading_negative(&out) {
        for row in out.iter_mut() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    out
}

fn leading_negative(a: &Dense2) -> bool {
    a.last()
        .and_then(|row| row.last())
        .is_some_and(|c| c.is_negative())
}

fn prem2(a: &Dense2, b: &Dense2) -> Dense2 {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let k = r.len() - b.len();
        for c in r.iter_mut() {
            *c = mul1(c, &lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = sub1(&r[k + j], &mul1(&lr, bj));
        }
        trim2(&mut r);
    }
    r
}

fn gcd2(a: &Dense2, b: &Dense2) -> Dense2 {
    let ca = content2(a);
    let cb = content2(b);
    let c = gcd1(&ca, &cb);
    let (mut x, mut y) = (pp2(a), pp2(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            // A nonzero constant in q: the primitive gcd is 1.
            x = vec![vec![BigInt::one()]];
            break;
        }
        let r = prem2(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { pp2(&r) };
    }
    let g = pp2(&x);
    g.iter().map(|row| mul1(row, &c)).collect()
}

fn div2_exact(a: &Dense2, b: &Dense2) -> Option<Dense2> {
    let mut rem = a.clone();
    trim2(&mut rem);
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if b.len() > rem.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut quo: Dense2 = vec![Vec::new(); rem.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let c = rem[k + b.len() - 1].clone();
        if c.is_empty() {
            continue;
        }
        let qc = div1_exact(&c, lb)?;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = sub1(&rem[k + j], &mul1(&qc, bj));
        }
        quo[k] = qc;
    }
    trim2(&mut rem);
    if !rem.is_empty() {
        return None;
    }
    trim2(&mut quo);
    Some(quo)
}

#[allow(dead_code)]
fn add2(a: &Dense2, b: &Dense2) -> Dense2 {
    let n = a.len().max(b.len());
    let empty = Vec::new();
    let mut out: Dense2 = (0..n)
        .map(|i| add1(a.get(i).unwrap_or(&empty), b.get(i).unwrap_or(&empty)))
        .collect();
    trim2(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((i32, i32), i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|(e, c)| (*e, BigInt::from(*c))))
    }

    #[test]
    fn gcd_recovers_common_factor() {
        // (q + rho)(q - 1) and (q + rho)(rho + 2)
        let f = p(&[((1, 0), 1), ((0, 1), 1)]);
        let a = f.mul(&p(&[((1, 0), 1), ((0, 0), -1)]));
        let b = f.mul(&p(&[((0, 1), 1), ((0, 0), 2)]));
        assert_eq!(LaurentPoly::gcd_poly(&a, &b), f);
    }

    #[test]
    fn gcd_with_integer_content() {
        let a = p(&[((1, 0), 6), ((0, 0), 4)]);
        let b = p(&[((0, 1), 4), ((0, 0), 2)]);
        assert_eq!(LaurentPoly::gcd_poly(&a, &b), p(&[((0, 0), 2)]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = p(&[((2, 1), 3), ((0, 0), -1), ((1, 3), 2)]);
        let b = p(&[((1, 0), 1), ((0, 2), -5), ((0, 0), 7)]);
        assert_eq!(a.mul(&b).div_exact_poly(&b), a);
    }
}
