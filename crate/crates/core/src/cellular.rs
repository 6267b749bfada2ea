//! The cellular basis `C_{(s,e)(t,d)} = σ(g_e) e^f n_{st} g_d`, cell
//! modules, invariant forms and the cell-datum axioms.
//!
//! Coordinates in the cellular basis come from one LU factorization of the
//! matrix `M` whose rows are the cellular elements in the word basis. The
//! `k`-th coordinate of `x` is `y_k . x` where `M y_k = e_k`; these dual
//! vectors are computed lazily and cached.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::combinat::{coset_reps, std_bitableaux, CellLabel, CosetRep, Dominance, StdTableau};
use crate::engine::{Element, Engine, EngineError, LinWord, Tok, Word};
use crate::field::Scalar;
use crate::hecke::n_lambda_factors;
use crate::linalg::{to_dense, Lu, Matrix, SVec};

#[derive(Debug, Error)]
pub enum CellularError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("label {0} is not valid for B_{{{1},{2}}}")]
    InvalidLabel(String, usize, usize),
}

/// One label's part of the basis: `I(f,λ) = Std(λ) × D^f_{r,s}`.
#[derive(Clone, Debug)]
pub struct CellBlock {
    pub label: CellLabel,
    pub tableaux: Vec<(StdTableau, StdTableau)>,
    pub cosets: Vec<CosetRep>,
    /// Position of the block's first element in the basis.
    pub offset: usize,
}

/// An element of `I(f,λ)`: indices into the block's tableau and coset lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CellIndex {
    pub tableau: usize,
    pub coset: usize,
}

impl CellBlock {
    /// `|Std(λ)| · |D^f_{r,s}|`.
    pub fn dim(&self) -> usize {
        self.tableaux.len() * self.cosets.len()
    }

    pub fn pos(&self, x: CellIndex) -> usize {
        x.tableau * self.cosets.len() + x.coset
    }

    pub fn index(&self, pos: usize) -> CellIndex {
        CellIndex {
            tableau: pos / self.cosets.len(),
            coset: pos % self.cosets.len(),
        }
    }

    /// Basis position of `C_{x,y}`.
    pub fn element(&self, x: usize, y: usize) -> usize {
        self.offset + x * self.dim() + y
    }

    /// Human-readable name of an index: the tableau pair and coset rep.
    pub fn describe(&self, pos: usize) -> String {
        let i = self.index(pos);
        let (a, b) = &self.tableaux[i.tableau];
        format!("({a},{b}; {})", self.cosets[i.coset])
    }
}

pub struct CellularBasis<'e> {
    engine: &'e Engine,
    blocks: Vec<CellBlock>,
    elements: Vec<SVec>,
    lu: Lu,
    duals: Vec<OnceLock<Vec<Scalar>>>,
}

fn sigma_word(w: &[Tok]) -> Word {
    w.iter().rev().copied().collect()
}

/// `g_{d(t)}` for a tableau pair, both with offset `f`.
fn tableau_word(t: &(StdTableau, StdTableau), f: usize) -> Word {
    let mut w = crate::combinat::perm_word(&t.0.d_perm(), f, false);
    w.extend(crate::combinat::perm_word(&t.1.d_perm(), f, true));
    w
}

impl<'e> CellularBasis<'e> {
    pub fn new(engine: &'e Engine) -> Result<Self, CellularError> {
        let (r, s) = (engine.r(), engine.s());
        let field = engine.field();
        let mut blocks = Vec::new();
        let mut elements = Vec::new();
        for label in CellLabel::all(r, s) {
            let f = label.f;
            let tableaux = std_bitableaux(&label.lambda, f);
            let cosets =
                coset_reps(r, s, f).map_err(|e| CellularError::Integrity(e.to_string()))?;
            let block = CellBlock {
                label: label.clone(),
                tableaux,
                cosets,
                offset: elements.len(),
            };
            let mut n_factors: Vec<LinWord> =
                n_lambda_factors(&label.lambda.first, f, false, field);
            n_factors.extend(n_lambda_factors(&label.lambda.second, f, true, field));
            let ef = crate::engine::e_power_word(f);
            let mut lefts = Vec::with_capacity(block.dim());
            let mut rights = Vec::with_capacity(block.dim());
            for t in &block.tableaux {
                for d in &block.cosets {
                    // left: σ(g_e) e^f σ(g_{d(s)}); right: g_{d(t)} g_d
                    let mut lw = sigma_word(&d.word());
                    lw.extend(&ef);
                    lw.extend(sigma_word(&tableau_word(t, f)));
                    lefts.push(lw);
                    let mut rw = tableau_word(t, f);
                    rw.extend(d.word());
                    rights.push(rw);
                }
            }
            for lw in &lefts {
                let mut v = engine.word(lw)?.coords().clone();
                for factor in &n_factors {
                    v = engine.right_lin(&v, factor);
                }
                for rw in &rights {
                    elements.push(engine.right_word(&v, rw));
                }
            }
            blocks.push(block);
        }
        let n = engine.dim();
        if elements.len() != n {
            return Err(CellularError::Integrity(format!(
                "cellular basis has {} elements, algebra has dimension {n}",
                elements.len()
            )));
        }
        let zero = field.zero();
        let rows: Vec<Vec<Scalar>> = elements.iter().map(|v| to_dense(v, n, &zero)).collect();
        let lu = Lu::new(&Matrix::from_rows(rows, &zero)).ok_or_else(|| {
            CellularError::Integrity("cellular transition matrix is singular".into())
        })?;
        let duals = (0..n).map(|_| OnceLock::new()).collect();
        Ok(Self {
            engine,
            blocks,
            elements,
            lu,
            duals,
        })
    }

    pub fn engine(&self) -> &'e Engine {
        self.engine
    }

    pub fn blocks(&self) -> &[CellBlock] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, k: usize) -> Element {
        self.engine.element(self.elements[k].clone())
    }

    pub fn element_coords(&self, k: usize) -> &SVec {
        &self.elements[k]
    }

    /// Determinant of the transition matrix to the word basis.
    pub fn transition_det(&self) -> Scalar {
        self.lu.det()
    }

    pub fn block(&self, label: &CellLabel) -> Result<usize, CellularError> {
        self.blocks
            .iter()
            .position(|b| &b.label == label)
            .ok_or_else(|| {
                CellularError::InvalidLabel(label.to_string(), self.engine.r(), self.engine.s())
            })
    }

    /// Block containing basis position `k`.
    pub fn block_of(&self, k: usize) -> usize {
        self.blocks.partition_point(|b| b.offset <= k) - 1
    }

    fn dual(&self, k: usize) -> &Vec<Scalar> {
        self.duals[k].get_or_init(|| {
            let n = self.len();
            let field = self.engine.field();
            let mut e = vec![field.zero(); n];
            e[k] = field.one();
            self.lu.solve(&e)
        })
    }

    /// The `k`-th cellular coordinate of a word-basis vector.
    pub fn coord(&self, k: usize, x: &[(u32, Scalar)]) -> Scalar {
        let y = self.dual(k);
        let mut acc = self.engine.field().zero();
        for (i, c) in x {
            let d = &y[*i as usize];
            if !d.is_zero() {
                acc += &(d * c);
            }
        }
        acc
    }

    /// All cellular coordinates of a word-basis vector.
    pub fn coords(&self, x: &[(u32, Scalar)]) -> Vec<Scalar> {
        (0..self.len()).map(|k| self.coord(k, x)).collect()
    }

    /// The cell module of a label.
    pub fn cell_module(&self, label: &CellLabel) -> Result<CellModule, CellularError> {
        self.cell_module_at(self.block(label)?, 0)
    }

    /// The cell module of block `b`, realized on `C_{u,·}` for the block
    /// index `u` (`u = 0` is `(t^λ, identity)`).
    pub fn cell_module_at(&self, b: usize, u: usize) -> Result<CellModule, CellularError> {
        let block = &self.blocks[b];
        let m = block.dim();
        let field = self.engine.field();
        let zero = field.zero();
        let toks = Tok::positives(self.engine.r(), self.engine.s());
        let mut action = Vec::new();
        for &t in &toks {
            let mut rows = Vec::with_capacity(m);
            for x in 0..m {
                let v = self
                    .engine
                    .right_tok(&self.elements[block.element(u, x)], t);
                rows.push(
                    (0..m)
                        .map(|y| self.coord(block.element(u, y), &v))
                        .collect(),
                );
            }
            action.push(Matrix::from_rows(rows, &zero));
        }
        let gram = self.gram_at(b, u)?;
        Ok(CellModule {
            label: block.label.clone(),
            basis: (0..m).map(|x| block.describe(x)).collect(),
            tokens: toks,
            action,
            gram,
        })
    }

    /// `G[x][y]`: the coefficient of `C_{u,u}` in `C_{u,x} C_{y,u}`.
    pub fn gram_at(&self, b: usize, u: usize) -> Result<Matrix, CellularError> {
        let block = &self.blocks[b];
        let m = block.dim();
        let target = block.element(u, u);
        let mut rows = Vec::with_capacity(m);
        for x in 0..m {
            let cx = self.element(block.element(u, x));
            let mut row = Vec::with_capacity(m);
            for y in 0..m {
                let cy = self.element(block.element(y, u));
                let prod = self.engine.mul(&cx, &cy)?;
                row.push(self.coord(target, prod.coords()));
            }
            rows.push(row);
        }
        Ok(Matrix::from_rows(rows, &self.engine.field().zero()))
    }

    pub fn gram(&self, label: &CellLabel) -> Result<Matrix, CellularError> {
        self.gram_at(self.block(label)?, 0)
    }

    /// Coordinates of `v` on the row `C_{u,·}` of block `b`.
    pub fn row_vector(&self, b: usize, u: usize, v: &[(u32, Scalar)]) -> Vec<Scalar> {
        let block = &self.blocks[b];
        (0..block.dim())
            .map(|y| self.coord(block.element(u, y), v))
            .collect()
    }

    /// Coordinates of `v` on the column `C_{·,u}` of block `b`.
    pub fn column_vector(&self, b: usize, u: usize, v: &[(u32, Scalar)]) -> Vec<Scalar> {
        let block = &self.blocks[b];
        (0..block.dim())
            .map(|x| self.coord(block.element(x, u), v))
            .collect()
    }

    /// Is `v` in the span of the basis elements of labels `⊵` block `b`'s?
    pub fn in_ideal(&self, b: usize, v: &[(u32, Scalar)]) -> bool {
        let label = &self.blocks[b].label;
        self.coords(v)
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || self.blocks[self.block_of(k)].label.compare(label).ge())
    }

    /// Right multiplication by `x` on the cell module realized on `C_{u,·}`:
    /// row `y` holds the coordinates of `C_{u,y} x`.
    pub fn right_action(&self, b: usize, u: usize, x: &Element) -> Result<Matrix, CellularError> {
        let block = &self.blocks[b];
        let mut rows = Vec::with_capacity(block.dim());
        for y in 0..block.dim() {
            let v = self.engine.mul(&self.element(block.element(u, y)), x)?;
            rows.push(self.row_vector(b, u, v.coords()));
        }
        Ok(Matrix::from_rows(rows, &self.engine.field().zero()))
    }

    /// Left multiplication by `x` on the left cell module realized on
    /// `C_{·,u}`: row `y` holds the coordinates of `x C_{y,u}`.
    pub fn left_action(&self, b: usize, u: usize, x: &Element) -> Result<Matrix, CellularError> {
        let block = &self.blocks[b];
        let mut rows = Vec::with_capacity(block.dim());
        for y in 0..block.dim() {
            let v = self.engine.mul(x, &self.element(block.element(y, u)))?;
            rows.push(self.column_vector(b, u, v.coords()));
        }
        Ok(Matrix::from_rows(rows, &self.engine.field().zero()))
    }

    /// Checks the cell-datum axioms exhaustively.
    pub fn validate(&self) -> Result<CellDatumReport, CellularError> {
        let n = self.len();
        // (a): the transition matrix factored, so the elements form a basis.
        let basis = true;
        let mut involution = true;
        for b in &self.blocks {
            let m = b.dim();
            for x in 0..m {
                for y in 0..m {
                    let sx = self.engine.sigma(&self.element(b.element(x, y)))?;
                    if sx.coords() != &self.elements[b.element(y, x)] {
                        involution = false;
                    }
                }
            }
        }
        let mut triangular = true;
        let mut independent = true;
        let mut first_failure = None;
        let toks = Tok::positives(self.engine.r(), self.engine.s());
        for (bi, b) in self.blocks.iter().enumerate() {
            let m = b.dim();
            for &t in &toks {
                let mut reference: Option<Vec<Scalar>> = None;
                for x in 0..m {
                    for y in 0..m {
                        let v = self.engine.right_tok(&self.elements[b.element(x, y)], t);
                        let c = self.coords(&v);
                        let mut row = Vec::with_capacity(m);
                        for (k, ck) in c.iter().enumerate() {
                            if ck.is_zero() {
                                continue;
                            }
                            let bk = self.block_of(k);
                            let same_row = bk == bi && (k - b.offset) / m == x;
                            let higher =
                                self.blocks[bk].label.compare(&b.label) == Dominance::Greater;
                            if !same_row && !higher {
                                triangular = false;
                                first_failure.get_or_insert(format!(
                                    "{} . {t} has a coefficient outside the allowed span",
                                    b.label
                                ));
                            }
                        }
                        for y2 in 0..m {
                            row.push(c[b.element(x, y2)].clone());
                        }
                        // Coefficients for (x, y) must match those for (0, y).
                        match &reference {
                            Some(rf) if x > 0 => {
                                if rf[y * m..(y + 1) * m] != row[..] {
                                    independent = false;
                                    first_failure.get_or_insert(format!(
                                        "{}: right action of {t} depends on the left index",
                                        b.label
                                    ));
                                }
                            }
                            _ => {
                                reference.get_or_insert_with(Vec::new).extend(row);
                            }
                        }
                    }
                }
            }
        }
        Ok(CellDatumReport {
            r: self.engine.r(),
            s: self.engine.s(),
            field: self.engine.field().spec().to_string(),
            dimension: n,
            labels: self.blocks.len(),
            basis,
            involution,
            triangular,
            left_independent: independent,
            first_failure,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellDatumReport {
    pub r: usize,
    pub s: usize,
    pub field: String,
    pub dimension: usize,
    pub labels: usize,
    /// Axiom (a).
    pub basis: bool,
    /// Axiom (b): `σ(C_{S,T}) = C_{T,S}`.
    pub involution: bool,
    /// Axiom (c): right action triangular modulo higher labels.
    pub triangular: bool,
    /// Axiom (c): structure coefficients independent of the left index.
    pub left_independent: bool,
    pub first_failure: Option<String>,
}

impl CellDatumReport {
    pub fn passed(&self) -> bool {
        self.basis && self.involution && self.triangular && self.left_independent
    }
}

/// A cell module `C(f,λ)` with its generator action and Gram matrix.
#[derive(Clone, Debug)]
pub struct CellModule {
    pub label: CellLabel,
    pub basis: Vec<String>,
    /// Positive generators, in the order of `action`.
    pub tokens: Vec<Tok>,
    /// `action[k][x][y]`: `v_x . t_k = Σ_y a v_y`.
    pub action: Vec<Matrix>,
    pub gram: Matrix,
}

impl CellModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn action_of(&self, t: Tok) -> Option<&Matrix> {
        self.tokens
            .iter()
            .position(|&x| x == t)
            .map(|k| &self.action[k])
    }

    /// `(rank φ, dim Rad)`.
    pub fn radical_rank(&self) -> (usize, usize) {
        let rank = self.gram.rank();
        (rank, self.dim() - rank)
    }

    /// Matrix of a word acting on the right; `z = q - q^{-1}` expands
    /// inverse tokens.
    pub fn word_matrix(&self, w: &[Tok], z: &Scalar) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::identity(n, &z.zero_like());
        for &t in w {
            let mut a = self
                .action_of(t.positive())
                .expect("generator of this algebra")
                .clone();
            if t.is_inverse() {
                for i in 0..n {
                    let v = a.get(i, i) - z;
                    a.set(i, i, v);
                }
            }
            m = m.mul(&a);
        }
        m
    }
}
