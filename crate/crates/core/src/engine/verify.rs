//! Relation suites: the defining relations as identities of right-action
//! matrices, the derived identities among the `e_i`, and relation transport
//! along the subalgebra and swap maps.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::combinat::Perm;
use crate::field::{Field, Scalar};
use crate::hecke::HeckeElement;

use super::relations::{defining_relations, LinWord};
use super::special::e_ij_word;
use super::token::{format_word, Tok, Word};
use super::{Element, Engine, EngineError};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub r: usize,
    pub s: usize,
    pub field: String,
    pub entries: Vec<CheckEntry>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| !e.passed).collect()
    }
}

impl Engine {
    /// Does `lhs - rhs` act as zero on every basis vector?
    fn matrix_identity(&self, lhs: &LinWord, rhs: &LinWord) -> bool {
        (0..self.dim() as u32).all(|i| {
            let v = vec![(i, self.field.one())];
            self.right_lin(&v, lhs) == self.right_lin(&v, rhs)
        })
    }

    fn lin_eq(&self, lhs: &LinWord, rhs: &LinWord) -> Result<bool, EngineError> {
        Ok(self.lin(lhs)? == self.lin(rhs)?)
    }

    /// The defining relations, each checked on every basis vector.
    pub fn verify_defining(&self) -> Vec<CheckEntry> {
        defining_relations(self.r, self.s, &self.field)
            .into_iter()
            .map(|rel| CheckEntry {
                passed: self.matrix_identity(&rel.lhs, &rel.rhs),
                name: format!("defining {}", rel.name),
            })
            .collect()
    }

    /// Identities among the `e_i = e_{i,i}` that follow from the defining
    /// relations.
    pub fn verify_derived(&self) -> Result<Vec<CheckEntry>, EngineError> {
        use Tok::*;
        let f = &self.field;
        let one = f.one();
        let m = self.r.min(self.s);
        let mut out = Vec::new();
        let w1 = |w: Word| -> LinWord { vec![(one.clone(), w)] };
        let cat = |parts: &[&[Tok]]| -> Word { parts.concat() };
        let mut push = |name: String, ok: bool| out.push(CheckEntry { name, passed: ok });
        let e = |i: usize| e_ij_word(i, i);
        for i in 1..=m {
            let ei = e(i);
            for k in i + 1..self.r {
                let g = [G(k as u8)];
                push(
                    format!("e_{i} g_{k} = g_{k} e_{i}"),
                    self.lin_eq(&w1(cat(&[&ei, &g])), &w1(cat(&[&g, &ei])))?,
                );
            }
            for l in i + 1..self.s {
                let g = [H(l as u8)];
                push(
                    format!("e_{i} g*_{l} = g*_{l} e_{i}"),
                    self.lin_eq(&w1(cat(&[&ei, &g])), &w1(cat(&[&g, &ei])))?,
                );
            }
            push(
                format!("e_{i}^2 = delta e_{i}"),
                self.lin_eq(
                    &w1(cat(&[&ei, &ei])),
                    &vec![(f.delta().clone(), ei.clone())],
                )?,
            );
        }
        for i in 1..m {
            let (ei, ej) = (e(i), e(i + 1));
            let b = i as u8;
            for (t, name) in [(G(b), "g"), (H(b), "g*")] {
                push(
                    format!("e_{i} {name}_{i} e_{i} = rho e_{i}"),
                    self.lin_eq(
                        &w1(cat(&[&ei, &[t], &ei])),
                        &vec![(f.rho().clone(), ei.clone())],
                    )?,
                );
                let ti = t.inverse().expect("invertible");
                push(
                    format!("e_{i} {name}_{i}^-1 e_{i} = rho^-1 e_{i}"),
                    self.lin_eq(
                        &w1(cat(&[&ei, &[ti], &ei])),
                        &vec![(f.rho_inv().clone(), ei.clone())],
                    )?,
                );
            }
            let prod = w1(cat(&[&ei, &ej]));
            push(
                format!("e_{i} g_{i} g*_{i}^-1 e_{i} = e_{i} e_{}", i + 1),
                self.lin_eq(&w1(cat(&[&ei, &[G(b), HInv(b)], &ei])), &prod)?,
            );
            push(
                format!("e_{i} g*_{i} g_{i}^-1 e_{i} = e_{i} e_{}", i + 1),
                self.lin_eq(&w1(cat(&[&ei, &[H(b), GInv(b)], &ei])), &prod)?,
            );
            push(
                format!("e_{i} e_{j} = e_{j} e_{i}", j = i + 1),
                self.lin_eq(&prod, &w1(cat(&[&ej, &ei])))?,
            );
            push(
                format!("e_{i} e_{j} g_{i} = e_{j} e_{i} g*_{i}", j = i + 1),
                self.lin_eq(
                    &w1(cat(&[&ei, &ej, &[G(b)]])),
                    &w1(cat(&[&ej, &ei, &[H(b)]])),
                )?,
            );
            push(
                format!("g_{i} e_{i} e_{j} = g*_{i} e_{j} e_{i}", j = i + 1),
                self.lin_eq(
                    &w1(cat(&[&[G(b)], &ei, &ej])),
                    &w1(cat(&[&[H(b)], &ej, &ei])),
                )?,
            );
            push(
                format!("e_{i} g_{i}^-1 g*_{i} e_{i} g_{i} = e_{i} g_{i}^-1 g*_{i} e_{i} g*_{i}"),
                self.lin_eq(
                    &w1(cat(&[&ei, &[GInv(b), H(b)], &ei, &[G(b)]])),
                    &w1(cat(&[&ei, &[GInv(b), H(b)], &ei, &[H(b)]])),
                )?,
            );
            push(
                format!("g_{i} e_{i} g_{i}^-1 g*_{i} e_{i} = g*_{i} e_{i} g_{i}^-1 g*_{i} e_{i}"),
                self.lin_eq(
                    &w1(cat(&[&[G(b)], &ei, &[GInv(b), H(b)], &ei])),
                    &w1(cat(&[&[H(b)], &ei, &[GInv(b), H(b)], &ei])),
                )?,
            );
        }
        for i in 1..=m {
            for j in i + 1..=m {
                push(
                    format!("e_{i} e_{j} = e_{j} e_{i}"),
                    self.lin_eq(&w1(cat(&[&e(i), &e(j)])), &w1(cat(&[&e(j), &e(i)])))?,
                );
            }
        }
        Ok(out)
    }

    /// The full relation suite.
    pub fn verify_relations(&self) -> Result<RelationReport, EngineError> {
        let mut entries = self.verify_defining();
        entries.extend(self.verify_derived()?);
        Ok(RelationReport {
            r: self.r,
            s: self.s,
            field: self.field.spec().to_string(),
            entries,
        })
    }

    /// Checks that the images of the generators of `B_{r',s'}` under `map`
    /// satisfy every defining relation of `B_{r',s'}` in this engine. When
    /// `r'` or `s'` is zero only the Hecke relations of the other side apply.
    pub fn transport_relations(
        &self,
        r2: usize,
        s2: usize,
        map: impl Fn(Tok) -> Word,
    ) -> Result<Vec<CheckEntry>, EngineError> {
        let image = |lw: &LinWord| -> LinWord {
            lw.iter()
                .map(|(c, w)| {
                    let img: Word = w
                        .iter()
                        .flat_map(|&t| {
                            let im = map(t.positive());
                            if t.is_inverse() {
                                super::token::invert_word(&im)
                                    .expect("image of an invertible token")
                            } else {
                                im
                            }
                        })
                        .collect();
                    (c.clone(), img)
                })
                .collect()
        };
        let mut out = Vec::new();
        for rel in source_relations(r2, s2, &self.field) {
            let ok = self.lin_eq(&image(&rel.lhs), &image(&rel.rhs))?;
            out.push(CheckEntry {
                name: format!("transported {}", rel.name),
                passed: ok,
            });
        }
        Ok(out)
    }

    /// `B_{r-f,s-f} -> B_{r,s}(f)`: `e_1 -> e_{f+1}`, `g_i -> g_{f+i}`,
    /// `g*_j -> g*_{f+j}`.
    pub fn verify_shift_map(&self, f: usize) -> Result<Vec<CheckEntry>, EngineError> {
        if f > self.r.min(self.s) {
            return Err(EngineError::Invalid(format!("f = {f} exceeds min(r, s)")));
        }
        self.transport_relations(self.r - f, self.s - f, |t| shift_token(t, f))
    }

    /// `B_{r-1,s} -> B̃_{r-1,s}`: `e_1 -> g_1^{-1} e_1 g_1`, `g_i -> g_{i+1}`;
    /// with `starred` the roles of the two sides swap.
    pub fn verify_tilde_map(&self, starred: bool) -> Result<Vec<CheckEntry>, EngineError> {
        if (starred && self.s < 2) || (!starred && self.r < 2) {
            return Err(EngineError::Invalid(
                "the tilde map needs r >= 2 (or s >= 2 when starred)".into(),
            ));
        }
        let (r2, s2) = if starred {
            (self.r, self.s - 1)
        } else {
            (self.r - 1, self.s)
        };
        self.transport_relations(r2, s2, |t| tilde_token(t, starred))
    }

    /// `B_{s,r} -> B_{r,s}` swapping `g_i` and `g*_i`.
    pub fn verify_swap(&self) -> Result<Vec<CheckEntry>, EngineError> {
        self.transport_relations(self.s, self.r, |t| vec![t.swap_sides()])
    }
}

fn source_relations(r2: usize, s2: usize, f: &Field) -> Vec<super::relations::Relation> {
    if r2 == 0 || s2 == 0 {
        // Hecke relations on the surviving side only.
        let (r, s) = (r2.max(1), s2.max(1));
        defining_relations(r, s, f)
            .into_iter()
            .filter(|rel| {
                let uses = |t: &Tok| match t {
                    Tok::E => true,
                    Tok::G(_) | Tok::GInv(_) => r2 == 0,
                    Tok::H(_) | Tok::HInv(_) => s2 == 0,
                };
                !rel.lhs
                    .iter()
                    .chain(&rel.rhs)
                    .any(|(_, w)| w.iter().any(uses))
            })
            .collect()
    } else {
        defining_relations(r2, s2, f)
    }
}

pub fn shift_token(t: Tok, f: usize) -> Word {
    match t {
        Tok::E => e_ij_word(f + 1, f + 1),
        Tok::G(i) => vec![Tok::G(i + f as u8)],
        Tok::H(j) => vec![Tok::H(j + f as u8)],
        Tok::GInv(i) => vec![Tok::GInv(i + f as u8)],
        Tok::HInv(j) => vec![Tok::HInv(j + f as u8)],
    }
}

pub fn tilde_token(t: Tok, starred: bool) -> Word {
    match (t, starred) {
        (Tok::E, false) => vec![Tok::GInv(1), Tok::E, Tok::G(1)],
        (Tok::E, true) => vec![Tok::HInv(1), Tok::E, Tok::H(1)],
        (Tok::G(i), false) => vec![Tok::G(i + 1)],
        (Tok::H(j), true) => vec![Tok::H(j + 1)],
        (Tok::GInv(i), false) => vec![Tok::GInv(i + 1)],
        (Tok::HInv(j), true) => vec![Tok::HInv(j + 1)],
        (other, _) => vec![other],
    }
}

/// An element of `H_a ⊗ H_b` as a map from pairs of permutations.
pub type HeckeTensor = BTreeMap<(Perm, Perm), Scalar>;

/// The image of a word of `B_{r,s}(f)` in `H_{r-f} ⊗ H_{s-f}`, where the
/// token `E` stands for `e_{f+1}`: words containing it map to zero, `g_{f+i}` to `g_i` in
/// the first factor and `g*_{f+j}` to `g_j` in the second.
pub fn hecke_quotient_word(
    word: &[Tok],
    r: usize,
    s: usize,
    f: usize,
    field: &Field,
) -> Result<HeckeTensor, EngineError> {
    let (a, b) = (r - f, s - f);
    let mut left = HeckeElement::one(a, field);
    let mut right = HeckeElement::one(b, field);
    let bad = || {
        EngineError::Invalid(format!(
            "word {} is not in B_{{{r},{s}}}({f})",
            format_word(word)
        ))
    };
    let idx = |k: u8, n: usize| -> Option<usize> {
        let k = k as usize;
        (k > f && k - f < n).then_some(k - f)
    };
    for &t in word {
        match t {
            Tok::E => return Ok(HeckeTensor::new()),
            Tok::G(k) => {
                left = left
                    .right_gen(idx(k, a).ok_or_else(bad)?, field)
                    .map_err(|_| bad())?
            }
            Tok::H(k) => {
                right = right
                    .right_gen(idx(k, b).ok_or_else(bad)?, field)
                    .map_err(|_| bad())?
            }
            Tok::GInv(k) => {
                let g = left
                    .right_gen(idx(k, a).ok_or_else(bad)?, field)
                    .map_err(|_| bad())?;
                left = g.add(&left.scale(&-field.z())).map_err(|_| bad())?;
            }
            Tok::HInv(k) => {
                let g = right
                    .right_gen(idx(k, b).ok_or_else(bad)?, field)
                    .map_err(|_| bad())?;
                right = g.add(&right.scale(&-field.z())).map_err(|_| bad())?;
            }
        }
    }
    let mut out = HeckeTensor::new();
    for (x, c) in left.terms() {
        for (y, d) in right.terms() {
            out.insert((x.clone(), y.clone()), c * d);
        }
    }
    Ok(out)
}

/// The quotient map applied to a linear combination of words.
pub fn hecke_quotient(
    lw: &LinWord,
    r: usize,
    s: usize,
    f: usize,
    field: &Field,
) -> Result<HeckeTensor, EngineError> {
    let mut out = HeckeTensor::new();
    for (c, w) in lw {
        for (k, v) in hecke_quotient_word(w, r, s, f, field)? {
            let e = out.entry(k).or_insert_with(|| field.zero());
            *e += &(&v * c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Checks that the quotient map `B_{r-f,s-f} -> H_{r-f} ⊗ H_{s-f}` respects
/// every defining relation (through the shift by `f`).
pub fn verify_hecke_quotient(
    r: usize,
    s: usize,
    f: usize,
    field: &Field,
) -> Result<Vec<CheckEntry>, EngineError> {
    if f > r.min(s) {
        return Err(EngineError::Invalid(format!("f = {f} exceeds min(r, s)")));
    }
    let mut out = Vec::new();
    let shift = |lw: &LinWord| -> LinWord {
        lw.iter()
            .map(|(c, w)| {
                // e_{f+1} maps to zero; keep it as a bare E so the quotient sees it
                let img = w
                    .iter()
                    .flat_map(|&t| {
                        if t == Tok::E {
                            vec![Tok::E]
                        } else {
                            shift_token(t, f)
                        }
                    })
                    .collect();
                (c.clone(), img)
            })
            .collect()
    };
    for rel in source_relations(r - f, s - f, field) {
        let lhs = hecke_quotient(&shift(&rel.lhs), r, s, f, field)?;
        let rhs = hecke_quotient(&shift(&rel.rhs), r, s, f, field)?;
        out.push(CheckEntry {
            name: format!("quotient {}", rel.name),
            passed: lhs == rhs,
        });
    }
    let kill = hecke_quotient(&vec![(field.one(), vec![Tok::E])], r, s, f, field);
    if f < r.min(s) {
        out.push(CheckEntry {
            name: format!("quotient kills e_{}", f + 1),
            passed: kill?.is_empty(),
        });
    }
    Ok(out)
}

impl Engine {
    /// Ranks of `e_1 B e_1`, `B(1) e_1` and their sum.
    pub fn e1_corner_spans(&self) -> Result<(usize, usize, usize), EngineError> {
        let e1 = self.tok(Tok::E)?;
        let mut a = crate::linalg::Echelon::new();
        let mut b = crate::linalg::Echelon::new();
        for i in 0..self.dim() as u32 {
            let w = self.element(vec![(i, self.field.one())]);
            let x = self.mul(&self.mul(&e1, &w)?, &e1)?;
            a.insert(x.coords());
        }
        // B(1) is generated by e_2, g_i (i >= 2), g*_j (j >= 2); span it by closure.
        let gens: Vec<Element> = {
            let mut g = Vec::new();
            if self.r.min(self.s) >= 2 {
                g.push(self.word(&e_ij_word(2, 2))?);
            }
            for i in 2..self.r {
                g.push(self.tok(Tok::G(i as u8))?);
            }
            for j in 2..self.s {
                g.push(self.tok(Tok::H(j as u8))?);
            }
            g
        };
        let mut sub = crate::linalg::Echelon::new();
        let mut basis = vec![self.one()];
        sub.insert(self.one().coords());
        let mut k = 0;
        while k < basis.len() {
            for g in &gens {
                let x = self.mul(&basis[k], g)?;
                if sub.insert(x.coords()) {
                    basis.push(x);
                }
            }
            k += 1;
        }
        for x in &basis {
            b.insert(self.mul(x, &e1)?.coords());
        }
        let mut both = crate::linalg::Echelon::new();
        for x in &basis {
            both.insert(self.mul(x, &e1)?.coords());
        }
        for i in 0..self.dim() as u32 {
            let w = self.element(vec![(i, self.field.one())]);
            both.insert(self.mul(&self.mul(&e1, &w)?, &e1)?.coords());
        }
        Ok((a.len(), b.len(), both.len()))
    }

    /// `dim B e_1`.
    pub fn left_ideal_dim(&self, x: &Element) -> Result<usize, EngineError> {
        let mut ech = crate::linalg::Echelon::new();
        for i in 0..self.dim() as u32 {
            let w = self.element(vec![(i, self.field.one())]);
            ech.insert(self.mul(&w, x)?.coords());
        }
        Ok(ech.len())
    }
}
