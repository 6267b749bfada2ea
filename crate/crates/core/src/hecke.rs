//! The Hecke algebra `H_n` of type A on the basis `{g_w}`, with the
//! symmetrizers `m_λ`, `n_λ`, the Murphy basis and Specht modules.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::combinat::{std_count, Partition, Perm, StdTableau};
use crate::engine::{LinWord, Tok};
use crate::field::{Field, Scalar};
use crate::linalg::{Lu, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("elements of H_{0} and H_{1} cannot be combined")]
    Rank(usize, usize),
    #[error("generator index {k} out of range for H_{n}")]
    Generator { n: usize, k: usize },
    #[error("partition {0} has the wrong size")]
    Size(Partition),
    #[error("Murphy transition matrix is singular")]
    Singular,
}

/// An element `Σ c_w g_w` of `H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Perm, Scalar>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, field: &Field) -> Self {
        Self::basis(&Perm::identity(n), field)
    }

    pub fn basis(w: &Perm, field: &Field) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.clone(), field.one());
        Self { n: w.n(), terms }
    }

    /// `g_{k_1} ... g_{k_m}` for an arbitrary (not necessarily reduced) word.
    pub fn from_word(n: usize, word: &[usize], field: &Field) -> Result<Self, HeckeError> {
        let mut x = Self::one(n, field);
        for &k in word {
            x = x.right_gen(k, field)?;
        }
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Perm, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, w: &Perm) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(terms: &mut BTreeMap<Perm, Scalar>, w: Perm, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn check_gen(&self, k: usize) -> Result<(), HeckeError> {
        if k == 0 || k >= self.n {
            return Err(HeckeError::Generator { n: self.n, k });
        }
        Ok(())
    }

    /// `self * g_k`.
    pub fn right_gen(&self, k: usize, field: &Field) -> Result<Self, HeckeError> {
        self.check_gen(k)?;
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let ws = w.times_simple(k);
            let pos = w.inverse();
            if pos.image(k) < pos.image(k + 1) {
                Self::add_term(&mut out, ws, c.clone());
            } else {
                // g_w g_k = z g_w + g_{w s_k}
                Self::add_term(&mut out, w.clone(), c * field.z());
                Self::add_term(&mut out, ws, c.clone());
            }
        }
        Ok(Self {
            n: self.n,
            terms: out,
        })
    }

    /// `g_k * self`.
    pub fn left_gen(&self, k: usize, field: &Field) -> Result<Self, HeckeError> {
        self.check_gen(k)?;
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let sw = Perm::simple(self.n, k).then(w);
            if w.image(k) < w.image(k + 1) {
                Self::add_term(&mut out, sw, c.clone());
            } else {
                Self::add_term(&mut out, w.clone(), c * field.z());
                Self::add_term(&mut out, sw, c.clone());
            }
        }
        Ok(Self {
            n: self.n,
            terms: out,
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self, HeckeError> {
        if self.n != o.n {
            return Err(HeckeError::Rank(self.n, o.n));
        }
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            Self::add_term(&mut terms, w.clone(), c.clone());
        }
        Ok(Self { n: self.n, terms })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self, field: &Field) -> Result<Self, HeckeError> {
        if self.n != o.n {
            return Err(HeckeError::Rank(self.n, o.n));
        }
        let mut out = Self::zero(self.n);
        for (w, c) in &o.terms {
            let mut x = self.clone();
            for k in w.reduced_word() {
                x = x.right_gen(k, field)?;
            }
            out = out.add(&x.scale(c))?;
        }
        Ok(out)
    }

    /// The anti-involution `g_w -> g_{w^{-1}}`.
    pub fn sigma(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.inverse(), c.clone()))
                .collect(),
        }
    }

    /// Coordinates in the basis `Perm::all(n)`.
    pub fn dense(&self, index: &BTreeMap<Perm, usize>, field: &Field) -> Vec<Scalar> {
        let mut v = vec![field.zero(); index.len()];
        for (w, c) in &self.terms {
            v[index[w]] = c.clone();
        }
        v
    }

    /// Engine tokens: `g_w` becomes `g_{k+offset}` (or `g*`) along a reduced word.
    pub fn to_linword(&self, offset: usize, starred: bool) -> LinWord {
        self.terms
            .iter()
            .map(|(w, c)| {
                let word = w
                    .reduced_word()
                    .into_iter()
                    .map(|k| {
                        if starred {
                            Tok::H((k + offset) as u8)
                        } else {
                            Tok::G((k + offset) as u8)
                        }
                    })
                    .collect();
                (c.clone(), word)
            })
            .collect()
    }
}

/// Elements of the row stabilizer `S_λ` of `t^λ`.
pub fn young_subgroup(l: &Partition) -> Vec<Perm> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for &p in l.parts() {
        let block = Perm::all(p);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                block.iter().map(move |b| {
                    let mut v = prefix.clone();
                    v.extend(b.0.iter().map(|x| x + start));
                    v
                })
            })
            .collect();
        start += p;
    }
    out.into_iter().map(Perm).collect()
}

/// `(m_λ, n_λ)`: `Σ q^{ℓ(w)} g_w` and `Σ (-q)^{-ℓ(w)} g_w` over `S_λ`.
pub fn symmetrizers(l: &Partition, field: &Field) -> (HeckeElement, HeckeElement) {
    let n = l.size();
    let mut m = HeckeElement::zero(n);
    let mut nn = HeckeElement::zero(n);
    let mq = -field.q_inv();
    for w in young_subgroup(l) {
        let len = w.length() as i32;
        HeckeElement::add_term(&mut m.terms, w.clone(), field.q_pow(len));
        HeckeElement::add_term(&mut nn.terms, w, mq.pow(len).expect("unit"));
    }
    (m, nn)
}

/// `n_λ` as a product of per-row factors, each a product of
/// `1 + x g_{k-1} + x² g_{k-1} g_{k-2} + ...` with `x = -q^{-1}`. The
/// tokens carry the given offset. Used to apply `n_λ` inside the engine
/// without expanding all `|S_λ|` terms.
pub fn n_lambda_factors(
    l: &Partition,
    offset: usize,
    starred: bool,
    field: &Field,
) -> Vec<LinWord> {
    let x = -field.q_inv();
    let mk = |k: usize| {
        if starred {
            Tok::H((k + offset) as u8)
        } else {
            Tok::G((k + offset) as u8)
        }
    };
    let mut out = Vec::new();
    let mut start = 0;
    for &p in l.parts() {
        for m in 2..=p {
            // positions start+1..start+m; generator indices start+1..start+m-1
            let mut lw: LinWord = vec![(field.one(), Vec::new())];
            let mut word = Vec::new();
            let mut c = field.one();
            for k in (start + 1..start + m).rev() {
                word.push(mk(k));
                c = &c * &x;
                lw.push((c.clone(), word.clone()));
            }
            out.push(lw);
        }
        start += p;
    }
    out
}

/// A Murphy basis element `n_{st}` with its label.
#[derive(Clone, Debug)]
pub struct MurphyElement {
    pub shape: Partition,
    pub s: StdTableau,
    pub t: StdTableau,
    pub element: HeckeElement,
}

/// `n_{st} = g_{d(s)^{-1}} n_λ g_{d(t)}`.
pub fn murphy_element(
    s: &StdTableau,
    t: &StdTableau,
    field: &Field,
) -> Result<HeckeElement, HeckeError> {
    let n = s.size();
    let (_, nl) = symmetrizers(&s.shape, field);
    let left = HeckeElement::basis(&s.d_perm(), field).sigma();
    let right = HeckeElement::basis(&t.d_perm(), field);
    left.mul(&nl, field)?.mul(&right, field).inspect(|x| {
        debug_assert_eq!(x.n(), n);
    })
}

/// The Murphy basis of `H_n`, grouped by shape (most dominant first).
pub fn murphy_basis(n: usize, field: &Field) -> Result<Vec<MurphyElement>, HeckeError> {
    let mut out = Vec::new();
    for l in Partition::all(n) {
        let tabs = StdTableau::all(&l, 0);
        for s in &tabs {
            for t in &tabs {
                out.push(MurphyElement {
                    shape: l.clone(),
                    s: s.clone(),
                    t: t.clone(),
                    element: murphy_element(s, t, field)?,
                });
            }
        }
    }
    Ok(out)
}

/// The transition matrix from the Murphy basis to `{g_w}`: row `i` holds
/// the coordinates of the `i`-th Murphy element.
pub fn murphy_transition(basis: &[MurphyElement], n: usize, field: &Field) -> Matrix {
    let index: BTreeMap<Perm, usize> = Perm::all(n)
        .into_iter()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let rows = basis
        .iter()
        .map(|m| m.element.dense(&index, field))
        .collect();
    Matrix::from_rows(rows, &field.zero())
}

/// `m_λ g_{d(t_λ)} n_{λ'} g_{d(t)}` for `t ∈ Std(λ')`.
pub fn specht_basis(l: &Partition, field: &Field) -> Result<Vec<HeckeElement>, HeckeError> {
    let conj = l.conjugate();
    let (m, _) = symmetrizers(l, field);
    let (_, nc) = symmetrizers(&conj, field);
    let dt = HeckeElement::basis(&StdTableau::column_reading(l, 0).d_perm(), field);
    let head = m.mul(&dt, field)?.mul(&nc, field)?;
    StdTableau::all(&conj, 0)
        .iter()
        .map(|t| head.mul(&HeckeElement::basis(&t.d_perm(), field), field))
        .collect()
}

/// Murphy-basis coordinates and the cell modules of `H_n`.
pub struct HeckeCells {
    n: usize,
    field: Field,
    basis: Vec<MurphyElement>,
    lu: Lu,
    index: BTreeMap<Perm, usize>,
}

impl HeckeCells {
    pub fn new(n: usize, field: &Field) -> Result<Self, HeckeError> {
        let basis = murphy_basis(n, field)?;
        let p = murphy_transition(&basis, n, field).transpose();
        let lu = Lu::new(&p).ok_or(HeckeError::Singular)?;
        let index = Perm::all(n)
            .into_iter()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        Ok(Self {
            n,
            field: field.clone(),
            basis,
            lu,
            index,
        })
    }

    pub fn basis(&self) -> &[MurphyElement] {
        &self.basis
    }

    /// Coordinates of `x` in the Murphy basis.
    pub fn coords(&self, x: &HeckeElement) -> Vec<Scalar> {
        self.lu.solve(&x.dense(&self.index, &self.field))
    }

    fn position(&self, l: &Partition, s: &StdTableau, t: &StdTableau) -> usize {
        self.basis
            .iter()
            .position(|m| &m.shape == l && &m.s == s && &m.t == t)
            .expect("label in basis")
    }

    /// Gram matrix of the Murphy cell module `C(λ)`, with entries read off
    /// `n_{t^λ s} n_{t t^λ} ≡ φ(s,t) n_{t^λ t^λ}`.
    pub fn gram(&self, l: &Partition) -> Result<Matrix, HeckeError> {
        if l.size() != self.n {
            return Err(HeckeError::Size(l.clone()));
        }
        let tl = StdTableau::row_reading(l, 0);
        let tabs = StdTableau::all(l, 0);
        let target = self.position(l, &tl, &tl);
        let elems: Vec<&HeckeElement> = tabs
            .iter()
            .map(|t| &self.basis[self.position(l, &tl, t)].element)
            .collect();
        let mut rows = Vec::new();
        for a in &elems {
            let mut row = Vec::new();
            for b in &elems {
                let prod = a.mul(&b.sigma(), &self.field)?;
                row.push(self.coords(&prod)[target].clone());
            }
            rows.push(row);
        }
        Ok(Matrix::from_rows(rows, &self.field.zero()))
    }

    /// Dimension of `C(λ)` restricted to `H_{n-1}` against the sum over its
    /// sections `C(λ \ p)`.
    pub fn branching_dims(l: &Partition) -> (usize, usize) {
        let sections = l
            .removable_nodes(1)
            .iter()
            .map(|p| std_count(&l.remove_node(p).expect("removable")))
            .sum();
        (std_count(l), sections)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen() -> Field {
        Field::generic()
    }

    #[test]
    fn quadratic() {
        let f = gen();
        let g = HeckeElement::from_word(3, &[1], &f).unwrap();
        let gg = g.mul(&g, &f).unwrap();
        let expect = g.scale(f.z()).add(&HeckeElement::one(3, &f)).unwrap();
        assert_eq!(gg, expect);
    }

    #[test]
    fn braid() {
        let f = gen();
        let a = HeckeElement::from_word(3, &[1, 2, 1], &f).unwrap();
        let b = HeckeElement::from_word(3, &[2, 1, 2], &f).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.terms().len(), 1);
    }

    #[test]
    fn two_row_symmetrizers() {
        let f = gen();
        let (m, n) = symmetrizers(&Partition::new(vec![2]).unwrap(), &f);
        let g1 = HeckeElement::from_word(2, &[1], &f).unwrap();
        let one = HeckeElement::one(2, &f);
        assert_eq!(m, one.add(&g1.scale(f.q())).unwrap());
        assert_eq!(n, one.add(&g1.scale(&-f.q_inv())).unwrap());
    }

    #[test]
    fn factored_n_lambda() {
        let f = gen();
        let l = Partition::new(vec![3, 2]).unwrap();
        let (_, n) = symmetrizers(&l, &f);
        let mut x = HeckeElement::one(5, &f);
        for lw in n_lambda_factors(&l, 0, false, &f) {
            let mut acc = HeckeElement::zero(5);
            for (c, w) in lw {
                let ks: Vec<usize> = w
                    .iter()
                    .map(|t| match t {
                        Tok::G(k) => *k as usize,
                        _ => unreachable!(),
                    })
                    .collect();
                acc = acc
                    .add(
                        &x.mul(&HeckeElement::from_word(5, &ks, &f).unwrap(), &f)
                            .unwrap()
                            .scale(&c),
                    )
                    .unwrap();
            }
            x = acc;
        }
        assert_eq!(x, n);
    }

    #[test]
    fn murphy_small() {
        let f = gen();
        for n in 1..=3 {
            let b = murphy_basis(n, &f).unwrap();
            assert_eq!(b.len(), (1..=n).product::<usize>());
            assert_eq!(murphy_transition(&b, n, &f).rank(), b.len());
        }
    }
}
