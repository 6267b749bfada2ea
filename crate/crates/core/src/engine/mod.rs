//! The algebra `B_{r,s}` as an explicit right regular module.
//!
//! An engine is built by linear coset enumeration from the defining
//! relations. A first run over a prime-field probe compatible with the
//! target field finds a prefix-closed basis of words (breadth-first, tokens
//! in the order `e < g_i < g*_j < inverses`); a second run over the target
//! field, seeded with those words, yields the right action of each
//! generator directly in the word basis.

mod enumerate;
mod export;
pub mod relations;
pub mod special;
pub mod token;
pub mod verify;

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::field::{Field, FieldError, FieldSpec, Scalar};
use crate::linalg::{sv_axpy, sv_scale, Accum, Echelon, SVec};

use enumerate::{Enumerator, Relator};
pub use export::{EngineExport, EXPORT_VERSION};
pub use relations::{defining_relations, expand_word, LinWord, Relation};
pub use special::{central_linword, e_ij_word, e_power_word, ebar_ij_word};
pub use token::{format_word, g_range, invert_word, parse_word, Tok, Word};
pub use verify::{CheckEntry, RelationReport};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("elements belong to different engines")]
    Mismatch,
}

/// Default upper bound on `r + s` for the generic field.
pub const GENERIC_BOUND: usize = 5;
/// Default upper bound on `r + s` for specialized fields.
pub const SPECIAL_BOUND: usize = 7;

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Immutable multiplication structure of `B_{r,s}` over a field.
pub struct Engine {
    r: usize,
    s: usize,
    field: Field,
    words: Vec<Word>,
    parent: Vec<Option<(u32, Tok)>>,
    /// `right[slot][i] = w_i . t` for each positive token slot.
    right: Vec<Vec<SVec>>,
    sigma_cache: OnceLock<Vec<SVec>>,
    left_cache: OnceLock<Vec<Vec<SVec>>>,
    central_cache: OnceLock<Element>,
}

/// An element of a particular engine, in word-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    r: usize,
    s: usize,
    spec: FieldSpec,
    v: SVec,
}

impl Element {
    pub fn coords(&self) -> &SVec {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_empty()
    }

    fn same_engine(&self, o: &Element) -> bool {
        self.r == o.r && self.s == o.s && self.spec == o.spec
    }

    fn with(&self, v: SVec) -> Element {
        Element {
            r: self.r,
            s: self.s,
            spec: self.spec.clone(),
            v,
        }
    }

    pub fn add(&self, o: &Element) -> Result<Element, EngineError> {
        if !self.same_engine(o) {
            return Err(EngineError::Mismatch);
        }
        let one = match self.v.first().or(o.v.first()) {
            Some((_, c)) => c.one_like(),
            None => return Ok(self.clone()),
        };
        Ok(self.with(sv_axpy(&self.v, &one, &o.v)))
    }

    pub fn sub(&self, o: &Element) -> Result<Element, EngineError> {
        if !self.same_engine(o) {
            return Err(EngineError::Mismatch);
        }
        let one = match self.v.first().or(o.v.first()) {
            Some((_, c)) => c.one_like(),
            None => return Ok(self.clone()),
        };
        Ok(self.with(sv_axpy(&self.v, &-one, &o.v)))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        self.with(sv_scale(&self.v, c))
    }
}

/// Picks a prime-field point on which the target field behaves generically.
fn probe_spec(spec: &FieldSpec, attempt: u32) -> Option<FieldSpec> {
    const P: u32 = 2_147_483_629;
    let pick = |k: u32| -> u32 {
        // deterministic pseudo-random residues
        let x = (k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 33;
        (x % (P as u64 - 3)) as u32 + 2
    };
    let pow = |b: u32, e: i32| -> u32 {
        let e = e.rem_euclid(P as i32 - 1) as u32;
        crate::field::scalar::pow_mod(b, e, P)
    };
    let red = |x: &num_rational::BigRational| -> Option<u32> {
        let p = BigInt::from(P);
        let n = x.numer().mod_floor(&p).to_u32()?;
        let d = x.denom().mod_floor(&p).to_u32()?;
        if d == 0 || n == 0 {
            return None;
        }
        Some((n as u64 * pow(d, -1) as u64 % P as u64) as u32)
    };
    Some(match spec {
        FieldSpec::Generic => FieldSpec::Prime {
            p: P,
            q: pick(2 * attempt),
            rho: pick(2 * attempt + 1),
        },
        FieldSpec::OneVar { sign, exp } => {
            let q = pick(2 * attempt);
            let mut rho = pow(q, *exp);
            if *sign < 0 {
                rho = P - rho;
            }
            FieldSpec::Prime { p: P, q, rho }
        }
        FieldSpec::Rational { q, rho } => {
            if attempt > 0 {
                return None;
            }
            FieldSpec::Prime {
                p: P,
                q: red(q)?,
                rho: red(rho)?,
            }
        }
        FieldSpec::Prime { .. } => {
            if attempt > 0 {
                return None;
            }
            spec.clone()
        }
    })
}

fn relators_for(r: usize, s: usize, f: &Field) -> Vec<Relator> {
    defining_relations(r, s, f)
        .iter()
        .map(|rel| {
            let mut out = Vec::new();
            for (c, w) in relations::expand_relator(rel, f.z()) {
                let slots: Vec<u8> = w
                    .iter()
                    .map(|t| t.slot(r).expect("positive") as u8)
                    .collect();
                out.push((c, slots));
            }
            out
        })
        .collect()
}

/// Prefix-closed word basis by breadth-first closure with elimination.
fn closure_words(
    r: usize,
    s: usize,
    f: &Field,
    images: &[Vec<SVec>],
) -> (Vec<Word>, Vec<Option<(u32, Tok)>>) {
    let apply = |v: &SVec, t: Tok| -> SVec {
        let slot = t.positive().slot(r).expect("slot");
        let mut acc = Accum::new();
        for (i, c) in v {
            acc.add_scaled(&images[slot][*i as usize], c);
        }
        let out = acc.finish();
        if t.is_inverse() {
            sv_axpy(&out, &-f.z().clone(), v)
        } else {
            out
        }
    };
    let mut ech = Echelon::new();
    let start: SVec = vec![(0, f.one())];
    ech.insert(&start);
    let mut words = vec![Vec::new()];
    let mut parent = vec![None];
    let mut vecs = vec![start];
    let toks = Tok::all(r, s);
    let mut k = 0;
    while k < words.len() {
        for &t in &toks {
            let v = apply(&vecs[k], t);
            if ech.insert(&v) {
                let mut wd = words[k].clone();
                wd.push(t);
                words.push(wd);
                parent.push(Some((k as u32, t)));
                vecs.push(v);
            }
        }
        k += 1;
    }
    (words, parent)
}

impl Engine {
    /// Builds `B_{r,s}` over `field`.
    pub fn build(r: usize, s: usize, field: Field) -> Result<Engine, EngineError> {
        Self::build_with_bound(r, s, field, None)
    }

    /// As [`Engine::build`], overriding the default size bound.
    pub fn build_with_bound(
        r: usize,
        s: usize,
        field: Field,
        bound: Option<usize>,
    ) -> Result<Engine, EngineError> {
        if r == 0 || s == 0 {
            return Err(EngineError::Invalid("r and s must be positive".into()));
        }
        let bound = bound.unwrap_or(if field.is_generic() {
            GENERIC_BOUND
        } else {
            SPECIAL_BOUND
        });
        if r + s > bound {
            return Err(EngineError::Invalid(format!(
                "r+s = {} exceeds the bound {bound} for field {}",
                r + s,
                field.spec()
            )));
        }
        let n = factorial(r + s);
        let limit = 200 * n + 1000;
        let ntok = r + s - 1;
        let mut seeded = None;
        for attempt in 0..4 {
            let Some(pspec) = probe_spec(field.spec(), attempt) else {
                break;
            };
            let Ok(pf) = Field::new(pspec) else { continue };
            let (table, _) =
                Enumerator::new(pf.one(), ntok, relators_for(r, s, &pf), limit).run()?;
            let (words, parent) = closure_words(r, s, &pf, &table.images);
            if words.len() != n {
                return Err(EngineError::Integrity(format!(
                    "closure found {} basis words, expected {n}",
                    words.len()
                )));
            }
            if let Some(e) = Self::seeded(r, s, &field, &words, &parent, limit)? {
                seeded = Some(e);
                break;
            }
        }
        match seeded {
            Some(e) => Ok(e),
            None => {
                // Unseeded enumeration over the target field itself.
                let (table, _) =
                    Enumerator::new(field.one(), ntok, relators_for(r, s, &field), limit).run()?;
                if table.live.len() != n {
                    return Err(EngineError::Integrity(format!(
                        "enumeration found dimension {}, expected {n}",
                        table.live.len()
                    )));
                }
                let (words, parent) = closure_words(r, s, &field, &table.images);
                Self::seeded(r, s, &field, &words, &parent, limit)?.ok_or_else(|| {
                    EngineError::Integrity("seeded enumeration lost a basis word".into())
                })
            }
        }
    }

    fn seeded(
        r: usize,
        s: usize,
        field: &Field,
        words: &[Word],
        parent: &[Option<(u32, Tok)>],
        limit: usize,
    ) -> Result<Option<Engine>, EngineError> {
        let n = words.len();
        let ntok = r + s - 1;
        let mut en = Enumerator::new(field.one(), ntok, relators_for(r, s, field), limit);
        let seeds: Vec<(u32, u8)> = parent[1..]
            .iter()
            .map(|p| {
                let (k, t) = p.expect("non-root word has a parent");
                (
                    k,
                    t.slot(r).expect("closure words use positive tokens") as u8,
                )
            })
            .collect();
        en.seed(&seeds);
        let (table, _) = en.run()?;
        if table.live.len() != n
            || table
                .live
                .iter()
                .enumerate()
                .any(|(i, &id)| id as usize != i)
        {
            return Ok(None);
        }
        Ok(Some(Engine {
            r,
            s,
            field: field.clone(),
            words: words.to_vec(),
            parent: parent.to_vec(),
            right: table.images,
            sigma_cache: OnceLock::new(),
            left_cache: OnceLock::new(),
            central_cache: OnceLock::new(),
        }))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn parents(&self) -> &[Option<(u32, Tok)>] {
        &self.parent
    }

    pub fn element(&self, v: SVec) -> Element {
        Element {
            r: self.r,
            s: self.s,
            spec: self.field.spec().clone(),
            v,
        }
    }

    fn check(&self, x: &Element) -> Result<(), EngineError> {
        if x.r != self.r || x.s != self.s || &x.spec != self.field.spec() {
            return Err(EngineError::Mismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> Element {
        self.element(Vec::new())
    }

    pub fn one(&self) -> Element {
        self.element(vec![(0, self.field.one())])
    }

    pub fn scalar(&self, c: &Scalar) -> Element {
        self.one().scale(c)
    }

    /// Right action of one token on a coordinate vector.
    pub fn right_tok(&self, v: &[(u32, Scalar)], t: Tok) -> SVec {
        let slot = t.positive().slot(self.r).expect("slot");
        let mut acc = Accum::new();
        for (i, c) in v {
            acc.add_scaled(&self.right[slot][*i as usize], c);
        }
        let out = acc.finish();
        if t.is_inverse() {
            sv_axpy(&out, &-self.field.z().clone(), v)
        } else {
            out
        }
    }

    pub fn right_word(&self, v: &[(u32, Scalar)], w: &[Tok]) -> SVec {
        let mut cur = v.to_vec();
        for &t in w {
            if cur.is_empty() {
                break;
            }
            cur = self.right_tok(&cur, t);
        }
        cur
    }

    /// `v . (sum of c * word)`.
    pub fn right_lin(&self, v: &[(u32, Scalar)], lw: &[(Scalar, Word)]) -> SVec {
        let mut acc = Accum::new();
        for (c, w) in lw {
            acc.add_scaled(&self.right_word(v, w), c);
        }
        acc.finish()
    }

    pub fn validate_word(&self, w: &[Tok]) -> Result<(), EngineError> {
        match w.iter().find(|t| !t.valid_for(self.r, self.s)) {
            Some(t) => Err(EngineError::Invalid(format!(
                "token {t} is not a generator of B_{{{},{}}}",
                self.r, self.s
            ))),
            None => Ok(()),
        }
    }

    /// The element of a word.
    pub fn word(&self, w: &[Tok]) -> Result<Element, EngineError> {
        self.validate_word(w)?;
        Ok(self.element(self.right_word(&self.one().v, w)))
    }

    /// The element of a linear combination of words.
    pub fn lin(&self, lw: &[(Scalar, Word)]) -> Result<Element, EngineError> {
        for (_, w) in lw {
            self.validate_word(w)?;
        }
        Ok(self.element(self.right_lin(&self.one().v, lw)))
    }

    /// The element of a product of linear combinations of words.
    pub fn product(&self, factors: &[LinWord]) -> Result<Element, EngineError> {
        let mut v = self.one().v;
        for f in factors {
            for (_, w) in f {
                self.validate_word(w)?;
            }
            v = self.right_lin(&v, f);
        }
        Ok(self.element(v))
    }

    pub fn tok(&self, t: Tok) -> Result<Element, EngineError> {
        self.word(&[t])
    }

    /// `x * y`, walking the word tree of `y`'s support.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, EngineError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(self.mul_vec(&x.v, &y.v)))
    }

    fn mul_vec(&self, x: &[(u32, Scalar)], y: &[(u32, Scalar)]) -> SVec {
        if x.is_empty() || y.is_empty() {
            return Vec::new();
        }
        let mut memo: HashMap<u32, SVec> = HashMap::new();
        memo.insert(0, x.to_vec());
        let mut acc = Accum::new();
        for (j, c) in y {
            let xj = self.x_times_word(&mut memo, *j);
            acc.add_scaled(&xj, c);
        }
        acc.finish()
    }

    fn x_times_word(&self, memo: &mut HashMap<u32, SVec>, j: u32) -> SVec {
        if let Some(v) = memo.get(&j) {
            return v.clone();
        }
        let (p, t) = self.parent[j as usize].expect("non-root word");
        let xp = self.x_times_word(memo, p);
        let v = self.right_tok(&xp, t);
        memo.insert(j, v.clone());
        v
    }

    /// Left multiplication by a token, `t * x`.
    pub fn left_tok(&self, t: Tok, x: &Element) -> Result<Element, EngineError> {
        self.check(x)?;
        let slot = t.positive().slot(self.r).expect("slot");
        let cols = &self.left_matrices()[slot];
        let mut acc = Accum::new();
        for (j, c) in &x.v {
            acc.add_scaled(&cols[*j as usize], c);
        }
        let out = acc.finish();
        Ok(self.element(if t.is_inverse() {
            sv_axpy(&out, &-self.field.z().clone(), &x.v)
        } else {
            out
        }))
    }

    /// `left[slot][j] = t * w_j`.
    pub fn left_matrices(&self) -> &Vec<Vec<SVec>> {
        self.left_cache.get_or_init(|| {
            Tok::positives(self.r, self.s)
                .into_iter()
                .map(|t| {
                    let tv = self.right_tok(&self.one().v, t);
                    let mut memo = HashMap::new();
                    memo.insert(0, tv);
                    (0..self.dim() as u32)
                        .map(|j| self.x_times_word(&mut memo, j))
                        .collect()
                })
                .collect()
        })
    }

    /// `right[slot][i] = w_i . t` for the positive tokens in closure order.
    pub fn right_matrices(&self) -> &Vec<Vec<SVec>> {
        &self.right
    }

    /// The anti-involution fixing all generators.
    pub fn sigma(&self, x: &Element) -> Result<Element, EngineError> {
        self.check(x)?;
        let images = self.sigma_cache.get_or_init(|| {
            self.words
                .iter()
                .map(|w| {
                    let rev: Word = w.iter().rev().copied().collect();
                    self.right_word(&self.one().v, &rev)
                })
                .collect()
        });
        let mut acc = Accum::new();
        for (j, c) in &x.v {
            acc.add_scaled(&images[*j as usize], c);
        }
        Ok(self.element(acc.finish()))
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Engine(B_{{{},{}}} over {}, dim {})",
            self.r,
            self.s,
            self.field,
            self.dim()
        )
    }
}
