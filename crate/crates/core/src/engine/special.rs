//! Distinguished elements: `e_{i,j}`, `ē_{i,j}`, `e^f`, the idempotents
//! `ẽ_{1,2}` and `f_{2,1}`, coset words `g_d` and the central element.

use crate::combinat::CosetRep;
use crate::field::Field;

use super::token::{g_range, invert_word, Tok, Word};
use super::{Element, Engine, EngineError, LinWord};

fn inv(w: &[Tok]) -> Word {
    invert_word(w).expect("positive generator words are invertible")
}

/// `g_{1,i}^{-1} g*_{j,1} e_1 g_{1,i} (g*_{j,1})^{-1}`.
pub fn e_ij_word(i: usize, j: usize) -> Word {
    let gi = g_range(1, i, false);
    let hj = g_range(j, 1, true);
    let mut w = inv(&gi);
    w.extend(&hj);
    w.push(Tok::E);
    w.extend(&gi);
    w.extend(inv(&hj));
    w
}

/// `g_{1,i}^{-1} g*_{j,1} e_1 g*_{1,j} g_{i,1}^{-1}`.
pub fn ebar_ij_word(i: usize, j: usize) -> Word {
    let mut w = inv(&g_range(1, i, false));
    w.extend(g_range(j, 1, true));
    w.push(Tok::E);
    w.extend(g_range(1, j, true));
    w.extend(inv(&g_range(i, 1, false)));
    w
}

/// `e^f = e_1 e_2 ... e_f`.
pub fn e_power_word(f: usize) -> Word {
    (1..=f).flat_map(|i| e_ij_word(i, i)).collect()
}

impl Engine {
    fn check_ij(&self, i: usize, j: usize) -> Result<(), EngineError> {
        if i == 0 || j == 0 || i > self.r || j > self.s {
            return Err(EngineError::Invalid(format!(
                "index ({i}, {j}) out of range for B_{{{},{}}}",
                self.r, self.s
            )));
        }
        Ok(())
    }

    pub fn e_ij(&self, i: usize, j: usize) -> Result<Element, EngineError> {
        self.check_ij(i, j)?;
        self.word(&e_ij_word(i, j))
    }

    pub fn ebar_ij(&self, i: usize, j: usize) -> Result<Element, EngineError> {
        self.check_ij(i, j)?;
        self.word(&ebar_ij_word(i, j))
    }

    /// `e_i = e_{i,i}`.
    pub fn e_i(&self, i: usize) -> Result<Element, EngineError> {
        self.e_ij(i, i)
    }

    /// `e^f`; `e^0 = 1`.
    pub fn e_power(&self, f: usize) -> Result<Element, EngineError> {
        if f > self.r.min(self.s) {
            return Err(EngineError::Invalid(format!("f = {f} exceeds min(r, s)")));
        }
        self.word(&e_power_word(f))
    }

    /// `ẽ_{1,2} = ρ^{-1} e_1 g*_1`, an idempotent when `s >= 2`.
    pub fn e_tilde_12(&self) -> Result<Element, EngineError> {
        if self.s < 2 {
            return Err(EngineError::Invalid("ẽ_{1,2} needs s >= 2".into()));
        }
        Ok(self.word(&[Tok::E, Tok::H(1)])?.scale(self.field.rho_inv()))
    }

    /// `f_{2,1} = ρ^{-1} e_1 g_1`, an idempotent when `r >= 2`.
    pub fn f_21(&self) -> Result<Element, EngineError> {
        if self.r < 2 {
            return Err(EngineError::Invalid("f_{2,1} needs r >= 2".into()));
        }
        Ok(self.word(&[Tok::E, Tok::G(1)])?.scale(self.field.rho_inv()))
    }

    pub fn g_d(&self, d: &CosetRep) -> Result<Element, EngineError> {
        if d.i.iter().any(|&x| x > self.r) || d.j.iter().any(|&x| x > self.s) {
            return Err(EngineError::Invalid(format!("coset rep {d} out of range")));
        }
        self.word(&d.word())
    }

    /// `c_{r,s}`.
    pub fn central_element(&self) -> Element {
        self.central_cache
            .get_or_init(|| {
                self.element(self.right_lin(
                    self.one().coords(),
                    &central_linword(self.r, self.s, &self.field),
                ))
            })
            .clone()
    }
}

/// `c_{r,s}` as a linear combination of words in the generators of `B_{r,s}`.
pub fn central_linword(r: usize, s: usize, field: &Field) -> LinWord {
    let mut out: LinWord = Vec::new();
    for i in 1..=r {
        for j in 1..=s {
            out.push((field.one(), ebar_ij_word(i, j)));
        }
    }
    let m_rho_inv = -field.rho_inv();
    for i in 2..=r {
        for j in 1..i {
            let mut w = inv(&g_range(j, i, false));
            w.extend(inv(&g_range(i, j + 1, false)));
            out.push((m_rho_inv.clone(), w));
        }
    }
    let m_rho = -field.rho();
    for i in 2..=s {
        for j in 1..i {
            let mut w = g_range(i, j, true);
            w.extend(g_range(j + 1, i, true));
            out.push((m_rho.clone(), w));
        }
    }
    out
}
