//! Representation theory on top of the cell datum: central characters,
//! simple modules, quasi-heredity, semisimplicity, Gram zero loci,
//! branching filtrations, Schur-functor truncation and submodule witnesses.
//!
//! Branching restricts along the natural inclusion `B_{r-1,s} ⊂ B_{r,s}`
//! (generators `e_1`, `g_1..g_{r-2}` and all `g*_j`). Left cell modules are
//! realized on the column `C_{·,u}` with `u = (t^λ, 1)`, so that
//! `C_{u,u} = n_λ e^f` is the generator.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cellular::{CellModule, CellularBasis, CellularError};
use crate::combinat::{coset_count, std_count, Bipartition, CellLabel, Node, Partition};
use crate::engine::{
    central_linword, e_power_word, g_range, invert_word, Element, Engine, EngineError, LinWord, Tok,
};
use crate::field::{Field, FieldError, FieldSpec, QuantumChar, Scalar};
use crate::hecke::{n_lambda_factors, symmetrizers};
use crate::linalg::{to_sparse, Echelon, Matrix};

#[derive(Debug, Error)]
pub enum RepthyError {
    #[error(transparent)]
    Cellular(#[from] CellularError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, RepthyError>;

fn std_bi(l: &Bipartition) -> usize {
    std_count(&l.first) * std_count(&l.second)
}

/// `dim C(f,λ)` for `B_{r,s}`.
pub fn cell_dim(r: usize, s: usize, label: &CellLabel) -> usize {
    std_bi(&label.lambda) * coset_count(r, s, label.f)
}

fn vec_mat(v: &[Scalar], m: &Matrix) -> Vec<Scalar> {
    let zero = v.first().map(|x| x.zero_like());
    (0..m.cols)
        .map(|j| {
            let mut acc = zero.clone().unwrap_or_else(|| m.get(0, j).zero_like());
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    acc += &(x * m.get(i, j));
                }
            }
            acc
        })
        .collect()
}

fn trace(m: &Matrix) -> Scalar {
    let mut acc = m.get(0, 0).zero_like();
    for i in 0..m.rows {
        acc += m.get(i, i);
    }
    acc
}

fn is_scalar_matrix(m: &Matrix, c: &Scalar) -> bool {
    (0..m.rows).all(|i| {
        (0..m.cols).all(|j| {
            if i == j {
                m.get(i, j) == c
            } else {
                m.get(i, j).is_zero()
            }
        })
    })
}

// ---------------------------------------------------------------------------
// Central characters

/// `fδ − ρ^{-1} Σ_{p∈λ^(1)} c(p) − ρ Σ_{p∈λ^(2)} c(p)`.
pub fn central_scalar(label: &CellLabel, field: &Field) -> Scalar {
    let mut x = &field.int(label.f as i64) * field.delta();
    for p in label.lambda.first.nodes(1) {
        x -= &(field.rho_inv() * &p.content_scalar(field));
    }
    for p in label.lambda.second.nodes(2) {
        x -= &(field.rho() * &p.content_scalar(field));
    }
    x
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralCharacter {
    pub label: CellLabel,
    pub scalar: Scalar,
    pub dim: usize,
    /// Whether `c_{r,s}` acts on the cell module as `scalar · I`; `None`
    /// when only the closed form was evaluated.
    pub acts_as_scalar: Option<bool>,
}

pub fn central_character(
    r: usize,
    s: usize,
    label: &CellLabel,
    field: &Field,
) -> Result<CentralCharacter> {
    if !label.is_valid(r, s) {
        return Err(CellularError::InvalidLabel(label.to_string(), r, s).into());
    }
    Ok(CentralCharacter {
        label: label.clone(),
        scalar: central_scalar(label, field),
        dim: cell_dim(r, s, label),
        acts_as_scalar: None,
    })
}

/// Closed-form scalars checked against the action of `c_{r,s}` on every
/// cell module.
pub fn verify_central_characters(cb: &CellularBasis) -> Result<Vec<CentralCharacter>> {
    let engine = cb.engine();
    let c = engine.central_element();
    let mut out = Vec::new();
    for (b, block) in cb.blocks().iter().enumerate() {
        let scalar = central_scalar(&block.label, engine.field());
        let m = cb.right_action(b, 0, &c)?;
        out.push(CentralCharacter {
            label: block.label.clone(),
            dim: block.dim(),
            acts_as_scalar: Some(is_scalar_matrix(&m, &scalar)),
            scalar,
        });
    }
    Ok(out)
}

/// Pairs of distinct labels with equal central scalars.
pub fn central_collisions(r: usize, s: usize, field: &Field) -> Vec<(CellLabel, CellLabel)> {
    let labels = CellLabel::all(r, s);
    let scalars: Vec<Scalar> = labels.iter().map(|l| central_scalar(l, field)).collect();
    let mut out = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if scalars[i] == scalars[j] {
                out.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Simple modules and quasi-heredity

/// Labels `(f,λ)` with `D^{f,λ} ≠ 0`: `λ` is `e`-restricted, and when
/// `δ = 0` and `r = s` the label `f = r` is dropped.
pub fn classify_simples(r: usize, s: usize, field: &Field) -> Vec<CellLabel> {
    let e = field.quantum_characteristic();
    let degenerate = field.delta_is_zero() && r == s;
    CellLabel::all(r, s)
        .into_iter()
        .filter(|l| l.lambda.is_e_restricted(e) && !(degenerate && l.f == r))
        .collect()
}

/// Labels whose Gram matrix has positive rank.
pub fn simples_by_gram(cb: &CellularBasis) -> Result<Vec<CellLabel>> {
    let mut out = Vec::new();
    for (b, block) in cb.blocks().iter().enumerate() {
        if cb.gram_at(b, 0)?.rank() > 0 {
            out.push(block.label.clone());
        }
    }
    Ok(out)
}

pub fn is_quasi_hereditary(r: usize, s: usize, field: &Field) -> bool {
    field.quantum_characteristic().exceeds(r.max(s)) && (!field.delta_is_zero() || r != s)
}

// ---------------------------------------------------------------------------
// Semisimplicity

/// Pairs `(r,s)` that stay semisimple at `δ = 0`.
pub const DELTA_ZERO_SEMISIMPLE: [(usize, usize); 4] = [(1, 2), (2, 1), (1, 3), (3, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reason {
    /// `e ≤ max(r,s)`.
    QuantumCharTooSmall {
        e: QuantumChar,
    },
    /// `δ = 0`; the verdict is membership in [`DELTA_ZERO_SEMISIMPLE`].
    DeltaZeroExceptional,
    /// `ρ² = q^{2a}` with `0 < |a| ≤ r+s−2`.
    RhoPowerCoincidence {
        a: i32,
    },
    Generic,
}

impl std::fmt::Display for Reason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Reason::QuantumCharTooSmall { e } => {
                write!(f, "quantum characteristic too small (e = {e})")
            }
            Reason::DeltaZeroExceptional => write!(f, "delta-zero exceptional list"),
            Reason::RhoPowerCoincidence { a } => write!(f, "rho-power coincidence (a = {a})"),
            Reason::Generic => write!(f, "generic"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    ClosedForm,
    Gram,
    Both,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemisimplicityVerdict {
    pub r: usize,
    pub s: usize,
    pub field: String,
    pub semisimple: bool,
    pub reason: Reason,
    pub closed_form: Option<bool>,
    pub gram: Option<bool>,
    /// Labels with singular Gram matrices, when computed.
    pub witnesses: Vec<CellLabel>,
    /// Closed form and Gram verdicts agree; `None` unless both ran.
    pub agree: Option<bool>,
}

/// The closed-form criterion.
pub fn closed_form(r: usize, s: usize, field: &Field) -> (bool, Reason) {
    let e = field.quantum_characteristic();
    if !e.exceeds(r.max(s)) {
        return (false, Reason::QuantumCharTooSmall { e });
    }
    if field.delta_is_zero() {
        return (
            DELTA_ZERO_SEMISIMPLE.contains(&(r, s)),
            Reason::DeltaZeroExceptional,
        );
    }
    let bound = (r + s) as i32 - 2;
    for a in (1..=bound).flat_map(|a| [a, -a]) {
        if field.rho_squared_is_q_power(a) {
            return (false, Reason::RhoPowerCoincidence { a });
        }
    }
    (true, Reason::Generic)
}

/// Labels whose Gram determinant vanishes.
pub fn gram_witnesses(cb: &CellularBasis) -> Result<Vec<CellLabel>> {
    let one = cb.engine().field().one();
    let mut out = Vec::new();
    for (b, block) in cb.blocks().iter().enumerate() {
        if cb.gram_at(b, 0)?.det(&one).is_zero() {
            out.push(block.label.clone());
        }
    }
    Ok(out)
}

fn assess(
    r: usize,
    s: usize,
    field: &Field,
    mode: Mode,
    bound: Option<usize>,
) -> Result<SemisimplicityVerdict> {
    let (cf, reason) = closed_form(r, s, field);
    let short = matches!(reason, Reason::QuantumCharTooSmall { .. });
    let mut gram = None;
    let mut witnesses = Vec::new();
    if mode != Mode::ClosedForm && !short {
        let engine = Engine::build_with_bound(r, s, field.clone(), bound)?;
        let cb = CellularBasis::new(&engine)?;
        witnesses = gram_witnesses(&cb)?;
        gram = Some(witnesses.is_empty());
    }
    let closed = (mode != Mode::Gram || short).then_some(cf);
    let agree = match (closed, gram) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(SemisimplicityVerdict {
        r,
        s,
        field: field.spec().to_string(),
        semisimple: gram.unwrap_or(cf),
        reason,
        closed_form: closed,
        gram,
        witnesses,
        agree,
    })
}

/// Decides semisimplicity. `Gram` and `Both` build the engine (subject to
/// `bound`); `Both` fails on disagreement. When `e ≤ max(r,s)` the answer
/// is `false` without any Gram work.
pub fn semisimplicity(
    r: usize,
    s: usize,
    field: &Field,
    mode: Mode,
    bound: Option<usize>,
) -> Result<SemisimplicityVerdict> {
    let v = assess(r, s, field, mode, bound)?;
    if v.agree == Some(false) {
        let msg = match v.witnesses.first() {
            Some(w) => {
                format!("closed form says semisimple but the Gram determinant of {w} vanishes")
            }
            None => format!(
                "closed form says not semisimple ({}) but no Gram determinant vanishes",
                v.reason
            ),
        };
        return Err(RepthyError::Integrity(msg));
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    /// `ρ = sign · q^a`.
    pub sign: i8,
    pub a: i32,
    pub verdict: SemisimplicityVerdict,
}

/// Both-mode verdicts on the grid `ρ = ±q^a`, `|a| ≤ r+s`. Disagreements
/// are reported, not raised.
pub fn semisimplicity_sweep(r: usize, s: usize, bound: Option<usize>) -> Result<Vec<SweepPoint>> {
    let n = (r + s) as i32;
    let points: Vec<(i8, i32)> = (-n..=n).flat_map(|a| [(1, a), (-1, a)]).collect();
    points
        .par_iter()
        .map(|&(sign, a)| {
            let field = Field::new(FieldSpec::rho_branch(sign, a))?;
            Ok(SweepPoint {
                sign,
                a,
                verdict: assess(r, s, &field, Mode::Both, bound)?,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// One-arc Gram zero loci

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Row,
    Column,
}

impl ArcKind {
    /// `(1, ((r−1), ∅))` or `(1, ((1^{r−1}), ∅))`.
    pub fn label(self, r: usize) -> CellLabel {
        let p = match self {
            ArcKind::Row => Partition::new(vec![r - 1]),
            ArcKind::Column => Partition::new(vec![1; r - 1]),
        }
        .expect("valid partition");
        CellLabel::new(1, Bipartition::new(p, Partition::empty()))
    }

    /// Exponents `a` with `det G = 0` exactly when `ρ² = q^{2a}`.
    pub fn expected(self, r: usize) -> Vec<i32> {
        let r = r as i32;
        let mut v = match self {
            ArcKind::Row => vec![-1, r - 1],
            ArcKind::Column => vec![1, 1 - r],
        };
        v.sort();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusPoint {
    pub sign: i8,
    pub a: i32,
    pub det: Scalar,
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroLocusReport {
    pub r: usize,
    pub kind: ArcKind,
    pub label: CellLabel,
    pub size: usize,
    pub points: Vec<LocusPoint>,
    /// Vanishing exponents for `ρ = q^a` and for `ρ = −q^a`.
    pub vanishing_plus: Vec<i32>,
    pub vanishing_minus: Vec<i32>,
    pub expected: Vec<i32>,
    pub matches: bool,
}

/// `det G_{1,λ}` for `B_{r,1}` on the grid `ρ = ±q^a`, `|a| ≤ r+1`.
pub fn one_arc_zero_locus(
    r: usize,
    kind: ArcKind,
    bound: Option<usize>,
) -> Result<ZeroLocusReport> {
    if r < 2 {
        return Err(RepthyError::Invalid(
            "the one-arc locus needs r >= 2".into(),
        ));
    }
    let label = kind.label(r);
    let n = r as i32 + 1;
    let grid: Vec<(i8, i32)> = (-n..=n).flat_map(|a| [(1, a), (-1, a)]).collect();
    let points = grid
        .par_iter()
        .map(|&(sign, a)| {
            let field = Field::new(FieldSpec::rho_branch(sign, a))?;
            let engine = Engine::build_with_bound(r, 1, field, bound)?;
            let cb = CellularBasis::new(&engine)?;
            let det = cb.gram(&label)?.det(&engine.field().one());
            Ok(LocusPoint {
                sign,
                a,
                vanishes: det.is_zero(),
                det,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pick = |sg: i8| -> Vec<i32> {
        points
            .iter()
            .filter(|p| p.sign == sg && p.vanishes)
            .map(|p| p.a)
            .collect()
    };
    let (plus, minus) = (pick(1), pick(-1));
    let expected = kind.expected(r);
    Ok(ZeroLocusReport {
        r,
        kind,
        size: cell_dim(r, 1, &label),
        label,
        points,
        matches: plus == expected && minus == expected,
        vanishing_plus: plus,
        vanishing_minus: minus,
        expected,
    })
}

// ---------------------------------------------------------------------------
// Gram determinants at δ = 0

#[derive(Clone, Debug, Serialize)]
pub struct DeltaZeroCheck {
    pub r: usize,
    pub s: usize,
    pub label: CellLabel,
    /// `ρ = sign`.
    pub sign: i8,
    pub size: usize,
    pub det: Scalar,
    pub vanishes: bool,
}

/// The labels checked at `δ = 0`, with their algebras.
pub fn delta_zero_cases() -> Vec<(usize, usize, CellLabel)> {
    let p = |v: Vec<usize>| Partition::new(v).expect("valid partition");
    vec![
        (
            3,
            2,
            CellLabel::new(1, Bipartition::new(p(vec![2]), p(vec![1]))),
        ),
        (
            4,
            1,
            CellLabel::new(1, Bipartition::new(p(vec![2, 1]), Partition::empty())),
        ),
        (
            4,
            2,
            CellLabel::new(1, Bipartition::new(p(vec![1, 1, 1]), p(vec![1]))),
        ),
    ]
}

/// `det G_{1,λ}` at `ρ = 1` and `ρ = −1` for each of [`delta_zero_cases`].
pub fn delta_zero_gram_checks(bound: Option<usize>) -> Result<Vec<DeltaZeroCheck>> {
    let jobs: Vec<(usize, usize, CellLabel, i8)> = delta_zero_cases()
        .into_iter()
        .flat_map(|(r, s, l)| [(r, s, l.clone(), 1), (r, s, l, -1)])
        .collect();
    jobs.par_iter()
        .map(|(r, s, label, sign)| {
            let field = Field::new(FieldSpec::rho_branch(*sign, 0))?;
            let engine = Engine::build_with_bound(*r, *s, field, bound)?;
            let cb = CellularBasis::new(&engine)?;
            let g = cb.gram(label)?;
            let det = g.det(&engine.field().one());
            Ok(DeltaZeroCheck {
                r: *r,
                s: *s,
                label: label.clone(),
                sign: *sign,
                size: g.rows,
                vanishes: det.is_zero(),
                det,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Branching

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionKind {
    /// A node removed from `λ^(1)`, same `f`.
    Alpha,
    /// A node added to `λ^(2)`, `f − 1`.
    Beta,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub kind: SectionKind,
    pub node: Node,
    /// Label for `B_{r-1,s}`.
    pub label: CellLabel,
    pub dim: usize,
    pub scalar: Scalar,
    /// The generator `y_α` or `z_β` lies in `B^{⊵(f,λ)}`.
    pub generator_in_ideal: bool,
    /// Its image in `C(f,λ)` is nonzero.
    pub generator_nonzero: bool,
    /// `dim N_k − dim N_{k−1}` for the submodules generated so far.
    pub increment: usize,
    /// `c_{r−1,s}` acts on `N_k / N_{k−1}` by `scalar`.
    pub central_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchingReport {
    pub r: usize,
    pub s: usize,
    pub field: String,
    pub label: CellLabel,
    pub dim: usize,
    pub sections: Vec<Section>,
    pub section_dim_sum: usize,
    pub dimension_identity: bool,
    /// Trace of `c_{r−1,s}` on the restriction.
    pub trace: Scalar,
    /// `Σ scalar · dim` over the sections.
    pub trace_expected: Scalar,
    pub trace_identity: bool,
    /// Every generator is a nonzero element of `C(f,λ)` and together they
    /// generate it.
    pub filtration: bool,
    /// Each increment equals its section dimension and carries the expected
    /// central scalar.
    pub sections_exact: bool,
}

impl BranchingReport {
    pub fn passed(&self) -> bool {
        self.dimension_identity && self.trace_identity && self.filtration
    }
}

/// Sections of the restriction of `C(f,λ)` to `B_{r-1,s}`, in filtration
/// order, each with the prefix `h` of its generator `h n_λ e^f`.
fn branching_sections(
    r: usize,
    s: usize,
    label: &CellLabel,
    field: &Field,
) -> Vec<(SectionKind, Node, CellLabel, LinWord)> {
    let f = label.f;
    let (l1, l2) = (&label.lambda.first, &label.lambda.second);
    let prefix_sum = |p: &Partition, rows: usize| -> usize { (0..rows).map(|i| p.part(i)).sum() };
    let mut out = Vec::new();
    for p in l1.removable_nodes(1) {
        let alpha = Bipartition::new(l1.remove_node(&p).expect("removable"), l2.clone());
        let a_k = f + prefix_sum(l1, p.row);
        out.push((
            SectionKind::Alpha,
            p,
            CellLabel::new(f, alpha),
            vec![(field.one(), g_range(r, a_k, false))],
        ));
    }
    if f >= 1 {
        let tail = g_range(r, f, false);
        for q in l2.addable_nodes(2) {
            let beta = Bipartition::new(l1.clone(), l2.add_node(&q).expect("addable"));
            let c_k = f + prefix_sum(l2, q.row);
            // A node opening a new row leaves the sum empty; keep its last term.
            let d_k = (f + prefix_sum(l2, q.row - 1) + 1).min(c_k);
            let inv = invert_word(&g_range(f, c_k, true)).expect("invertible");
            let mq = -field.q();
            let mut lw = LinWord::new();
            for j in d_k..=c_k {
                let mut w = g_range(j, c_k, true);
                w.extend(&inv);
                w.extend(&tail);
                lw.push((mq.pow(j as i32 - c_k as i32).expect("unit"), w));
            }
            out.push((SectionKind::Beta, q, CellLabel::new(f - 1, beta), lw));
        }
    }
    debug_assert!(out.iter().all(|(_, _, l, _)| l.is_valid(r - 1, s)));
    out
}

/// Checks the restriction of `C(f,λ)` to `B_{r-1,s}`: the dimension
/// identity, the trace of `c_{r-1,s}`, and the filtration by the submodules
/// generated by `y_α` and `z_β`.
pub fn branching_check(cb: &CellularBasis, label: &CellLabel) -> Result<BranchingReport> {
    let engine = cb.engine();
    let (r, s) = (engine.r(), engine.s());
    if r < 2 {
        return Err(RepthyError::Invalid("branching needs r >= 2".into()));
    }
    let field = engine.field();
    let b = cb.block(label)?;
    let dim = cb.blocks()[b].dim();
    let f = label.f;

    let gens = Tok::positives(r - 1, s)
        .into_iter()
        .map(|t| Ok(cb.left_action(b, 0, &engine.tok(t)?)?))
        .collect::<Result<Vec<Matrix>>>()?;
    let c_sub = engine.lin(&central_linword(r - 1, s, field))?;
    let c_mat = cb.left_action(b, 0, &c_sub)?;
    let trace = trace(&c_mat);

    let mut tail: Vec<LinWord> = n_lambda_factors(&label.lambda.first, f, false, field);
    tail.extend(n_lambda_factors(&label.lambda.second, f, true, field));
    tail.push(vec![(field.one(), e_power_word(f))]);

    let mut span = Echelon::new();
    let mut sections = Vec::new();
    let mut trace_expected = field.zero();
    for (kind, node, sub, prefix) in branching_sections(r, s, label, field) {
        let sub_dim = cell_dim(r - 1, s, &sub);
        let scalar = central_scalar(&sub, field);
        trace_expected += &(&field.int(sub_dim as i64) * &scalar);

        let mut factors = vec![prefix];
        factors.extend(tail.iter().cloned());
        let x = engine.product(&factors)?;
        let in_ideal = cb.in_ideal(b, x.coords());
        let v = cb.column_vector(b, 0, x.coords());
        let nonzero = v.iter().any(|c| !c.is_zero());

        let before = span.clone();
        let mut fresh = Vec::new();
        let mut queue = vec![v];
        while let Some(w) = queue.pop() {
            if span.insert(&to_sparse(&w)) {
                queue.extend(gens.iter().map(|m| vec_mat(&w, m)));
                fresh.push(w);
            }
        }
        let central_ok = fresh.iter().all(|w| {
            let cw = vec_mat(w, &c_mat);
            let d: Vec<Scalar> = cw.iter().zip(w).map(|(a, b)| a - &(&scalar * b)).collect();
            before.reduce(&to_sparse(&d)).is_empty()
        });
        sections.push(Section {
            kind,
            node,
            label: sub,
            dim: sub_dim,
            scalar,
            generator_in_ideal: in_ideal,
            generator_nonzero: nonzero,
            increment: fresh.len(),
            central_ok,
        });
    }
    let section_dim_sum = sections.iter().map(|s| s.dim).sum();
    let filtration = sections
        .iter()
        .all(|x| x.generator_in_ideal && x.generator_nonzero)
        && span.len() == dim;
    let sections_exact = sections
        .iter()
        .all(|x| x.increment == x.dim && x.central_ok);
    Ok(BranchingReport {
        r,
        s,
        field: field.spec().to_string(),
        label: label.clone(),
        dim,
        dimension_identity: section_dim_sum == dim,
        section_dim_sum,
        trace_identity: trace == trace_expected,
        trace,
        trace_expected,
        sections,
        filtration,
        sections_exact,
    })
}

// ---------------------------------------------------------------------------
// Schur functor

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Idempotent {
    /// `ẽ_{1,2} = ρ^{-1} e_1 g*_1`.
    ETilde,
    /// `f_{2,1} = ρ^{-1} e_1 g_1`.
    F21,
}

impl Idempotent {
    /// `ẽ_{1,2}` when `s ≥ 2`, else `f_{2,1}` when `r ≥ 2`.
    pub fn default_for(r: usize, s: usize) -> Option<Idempotent> {
        if s >= 2 {
            Some(Idempotent::ETilde)
        } else if r >= 2 {
            Some(Idempotent::F21)
        } else {
            None
        }
    }

    pub fn exists(self, r: usize, s: usize) -> bool {
        match self {
            Idempotent::ETilde => s >= 2,
            Idempotent::F21 => r >= 2,
        }
    }

    pub fn element(self, engine: &Engine) -> Result<Element> {
        Ok(match self {
            Idempotent::ETilde => engine.e_tilde_12()?,
            Idempotent::F21 => engine.f_21()?,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationReport {
    pub label: CellLabel,
    pub choice: Idempotent,
    pub dim: usize,
    /// Rank of the idempotent acting on `C(f,λ)`.
    pub rank: usize,
    /// `dim C(f−1,λ)` for `B_{r−1,s−1}`, or 0 when `f = 0`.
    pub expected: usize,
    pub passed: bool,
}

pub fn schur_truncation_check(
    cb: &CellularBasis,
    label: &CellLabel,
    choice: Idempotent,
) -> Result<TruncationReport> {
    let engine = cb.engine();
    let (r, s) = (engine.r(), engine.s());
    if !choice.exists(r, s) {
        return Err(RepthyError::Invalid(format!(
            "{choice:?} does not exist in B_{{{r},{s}}}"
        )));
    }
    let b = cb.block(label)?;
    let rank = cb.right_action(b, 0, &choice.element(engine)?)?.rank();
    let expected = if label.f == 0 {
        0
    } else {
        cell_dim(
            r - 1,
            s - 1,
            &CellLabel::new(label.f - 1, label.lambda.clone()),
        )
    };
    Ok(TruncationReport {
        label: label.clone(),
        choice,
        dim: cb.blocks()[b].dim(),
        rank,
        expected,
        passed: rank == expected,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurBookkeeping {
    pub r: usize,
    pub s: usize,
    pub choice: Idempotent,
    pub idempotent: bool,
    /// `dim B 𝔢`.
    pub ideal_dim: usize,
    /// `dim B e_1`.
    pub e1_ideal_dim: usize,
    /// `(r+s−1)!`.
    pub expected: usize,
    /// `Σ dim C(f,λ) · rank(𝔢 on C(f,λ))`, which counts `B 𝔢` through its
    /// cell filtration; each `f ≥ 1` term is `dim G(F(C(f,λ))) · dim F(C(f,λ))`.
    pub section_sum: usize,
    pub truncations: Vec<TruncationReport>,
    pub passed: bool,
}

/// Truncation on every label plus the global count of `B 𝔢`.
pub fn schur_bookkeeping(cb: &CellularBasis, choice: Idempotent) -> Result<SchurBookkeeping> {
    let engine = cb.engine();
    let (r, s) = (engine.r(), engine.s());
    let idem = choice.element(engine)?;
    let idempotent = engine.mul(&idem, &idem)? == idem;
    let ideal_dim = engine.left_ideal_dim(&idem)?;
    let e1_ideal_dim = engine.left_ideal_dim(&engine.tok(Tok::E)?)?;
    let expected = crate::engine::factorial(r + s - 1);
    let truncations = cb
        .blocks()
        .iter()
        .map(|bl| schur_truncation_check(cb, &bl.label, choice))
        .collect::<Result<Vec<_>>>()?;
    let section_sum = truncations.iter().map(|t| t.dim * t.rank).sum();
    let passed = idempotent
        && ideal_dim == expected
        && e1_ideal_dim == expected
        && section_sum == expected
        && truncations.iter().all(|t| t.passed);
    Ok(SchurBookkeeping {
        r,
        s,
        choice,
        idempotent,
        ideal_dim,
        e1_ideal_dim,
        expected,
        section_sum,
        truncations,
        passed,
    })
}

// ---------------------------------------------------------------------------
// Submodule witnesses

/// `δ − ρ(1 − q^{∓2m})/(q − q^{-1})` with `m = r+s−2`; upper sign for rows.
pub fn witness_scalar(r: usize, s: usize, kind: ArcKind, field: &Field) -> Scalar {
    let m = (r + s) as i32 - 2;
    let e = match kind {
        ArcKind::Row => -2 * m,
        ArcKind::Column => 2 * m,
    };
    let t = &(field.rho() * &(&field.one() - &field.q_pow(e))) / field.z();
    field.delta() - &t
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub r: usize,
    pub s: usize,
    pub kind: ArcKind,
    pub field: String,
    /// `(1, μ)`.
    pub label: CellLabel,
    pub in_ideal: bool,
    pub v_nonzero: bool,
    /// `e_1 v` is a multiple of the generator `e_1 n_μ`.
    pub proportional: bool,
    pub coefficient: Scalar,
    pub expected: Scalar,
    /// `coefficient / expected` when `expected ≠ 0`.
    pub ratio: Option<Scalar>,
    /// The coefficient is `expected` times a nonzero factor free of `ρ`.
    pub coefficient_matches: bool,
    /// `e_1 v = 0` in `C(1,μ)`.
    pub annihilated: bool,
}

/// `v = n_λ e_1 n_μ` (rows) or `m_{λ'} e_1 n_μ` (columns) in `C(1,μ)` and
/// the action of `e_1` on it.
pub fn submodule_witness(cb: &CellularBasis, kind: ArcKind) -> Result<WitnessReport> {
    let engine = cb.engine();
    let (r, s) = (engine.r(), engine.s());
    let field = engine.field();
    let p = |v: Vec<usize>| Partition::new(v).expect("valid partition");
    let (first, second, mu) = match kind {
        ArcKind::Row => {
            let (_, n1) = symmetrizers(&p(vec![r]), field);
            let (_, n2) = symmetrizers(&p(vec![s]), field);
            (n1, n2, Bipartition::new(p(vec![r - 1]), p(vec![s - 1])))
        }
        ArcKind::Column => {
            let (m1, _) = symmetrizers(&p(vec![r]), field);
            let (m2, _) = symmetrizers(&p(vec![s]), field);
            (
                m1,
                m2,
                Bipartition::new(p(vec![1; r - 1]), p(vec![1; s - 1])),
            )
        }
    };
    let label = CellLabel::new(1, mu);
    let b = cb.block(&label)?;
    let mut factors = vec![
        first.to_linword(0, false),
        second.to_linword(0, true),
        vec![(field.one(), vec![Tok::E])],
    ];
    factors.extend(n_lambda_factors(&label.lambda.first, 1, false, field));
    factors.extend(n_lambda_factors(&label.lambda.second, 1, true, field));
    let v = engine.product(&factors)?;
    let in_ideal = cb.in_ideal(b, v.coords());
    let v_nonzero = cb
        .column_vector(b, 0, v.coords())
        .iter()
        .any(|c| !c.is_zero());
    let ev = engine.left_tok(Tok::E, &v)?;
    let col = cb.column_vector(b, 0, ev.coords());
    let proportional = col[1..].iter().all(Scalar::is_zero);
    let coefficient = col[0].clone();
    let expected = witness_scalar(r, s, kind, field);
    let ratio = (!expected.is_zero()).then(|| &coefficient / &expected);
    let coefficient_matches = match &ratio {
        Some(x) => !x.is_zero() && x.as_ratfunc().is_none_or(|f| f.is_univariate()),
        None => coefficient.is_zero(),
    };
    Ok(WitnessReport {
        r,
        s,
        kind,
        field: field.spec().to_string(),
        label,
        in_ideal,
        v_nonzero,
        proportional,
        ratio,
        coefficient_matches,
        annihilated: col.iter().all(Scalar::is_zero),
        coefficient,
        expected,
    })
}

// ---------------------------------------------------------------------------
// Homomorphisms C(0,λ) → C(1,μ)

/// Dimension of `Hom(a, b)` for right modules given by generator matrices,
/// and whether every such map lands in the radical of `b`.
pub fn hom_space(a: &CellModule, b: &CellModule) -> (usize, bool) {
    let (n, m) = (a.dim(), b.dim());
    let cols = n * m;
    let zero = b
        .gram
        .data
        .first()
        .or(a.gram.data.first())
        .map(|x| x.zero_like());
    let Some(zero) = zero else {
        return (0, true);
    };
    let mut rows = Vec::new();
    for (ta, tb) in a.action.iter().zip(&b.action) {
        // (A X − X B)[i][j] = 0 with X[i][j] at column i*m + j.
        for i in 0..n {
            for j in 0..m {
                let mut row = vec![zero.clone(); cols];
                for k in 0..n {
                    row[k * m + j] += ta.get(i, k);
                }
                for k in 0..m {
                    row[i * m + k] -= tb.get(k, j);
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(rows, &zero);
    let homs = sys.nullspace();
    let in_radical = homs.iter().all(|x| {
        let xm = Matrix::from_rows(x.chunks(m).map(|c| c.to_vec()).collect(), &zero);
        xm.mul(&b.gram).is_zero()
    });
    (homs.len(), in_radical)
}

/// The node of `big / small` when `small ⊂ big` differ by exactly one node.
pub fn single_node_difference(big: &Partition, small: &Partition, side: u8) -> Option<Node> {
    if big.size() != small.size() + 1 {
        return None;
    }
    let mut found = None;
    for i in 0..big.len() {
        match big.part(i).checked_sub(small.part(i))? {
            0 => {}
            1 if found.is_none() => {
                found = Some(Node {
                    row: i + 1,
                    col: big.part(i),
                    side,
                })
            }
            _ => return None,
        }
    }
    found
}

#[derive(Clone, Debug, Serialize)]
pub struct HomWitness {
    pub lambda: CellLabel,
    pub mu: CellLabel,
    pub hom_dim: usize,
    pub image_in_radical: bool,
    pub nodes: Option<(Node, Node)>,
    pub residue_sum: Option<i32>,
    /// Node shape and `ρ² = q^{2(res p_1 + res p_2)}` both hold.
    pub consistent: bool,
}

/// Every nonzero `Hom(C(0,λ), C(1,μ))`, with the node and residue
/// conditions evaluated.
pub fn cell_hom_witnesses(cb: &CellularBasis) -> Result<Vec<HomWitness>> {
    let field = cb.engine().field();
    let mut zeros = Vec::new();
    let mut ones = Vec::new();
    for (b, block) in cb.blocks().iter().enumerate() {
        match block.label.f {
            0 => zeros.push(cb.cell_module_at(b, 0)?),
            1 => ones.push(cb.cell_module_at(b, 0)?),
            _ => {}
        }
    }
    let mut out = Vec::new();
    for a in &zeros {
        for m in &ones {
            let (hom_dim, image_in_radical) = hom_space(a, m);
            if hom_dim == 0 {
                continue;
            }
            let (l, u) = (&a.label.lambda, &m.label.lambda);
            let nodes = single_node_difference(&l.first, &u.first, 1)
                .zip(single_node_difference(&l.second, &u.second, 2));
            let residue_sum = nodes.map(|(p1, p2)| p1.residue() + p2.residue());
            let consistent = residue_sum.is_some_and(|k| field.rho_squared_is_q_power(k));
            out.push(HomWitness {
                lambda: a.label.clone(),
                mu: m.label.clone(),
                hom_dim,
                image_in_radical,
                nodes,
                residue_sum,
                consistent,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str, f: usize) -> CellLabel {
        CellLabel::new(f, s.parse().unwrap())
    }

    #[test]
    fn central_scalar_examples() {
        let g = Field::generic();
        assert_eq!(central_scalar(&label("[];[]", 1), &g), g.delta().clone());
        assert!(central_scalar(&label("[1];[1]", 0), &g).is_zero());
        assert_eq!(
            central_scalar(&label("[2];[1]", 0), &g),
            g.rho_inv() * g.q()
        );
    }

    #[test]
    fn closed_form_examples() {
        let f = |s: &str| Field::new(s.parse().unwrap()).unwrap();
        assert_eq!(
            closed_form(2, 1, &f("q-power:1")),
            (false, Reason::RhoPowerCoincidence { a: 1 })
        );
        assert!(closed_form(3, 1, &f("delta-zero")).0);
        assert!(!closed_form(2, 2, &f("delta-zero")).0);
        assert!(closed_form(2, 2, &Field::generic()).0);
        assert!(closed_form(2, 3, &f("q-power:5")).0);
        let (v, reason) = closed_form(3, 1, &f("gfp:7,3,2"));
        assert!(!v);
        assert_eq!(
            reason,
            Reason::QuantumCharTooSmall {
                e: QuantumChar::Finite(3)
            }
        );
    }

    #[test]
    fn single_node() {
        let p = |v: Vec<usize>| Partition::new(v).unwrap();
        assert_eq!(
            single_node_difference(&p(vec![2, 1]), &p(vec![2]), 1),
            Some(Node {
                row: 2,
                col: 1,
                side: 1
            })
        );
        assert_eq!(
            single_node_difference(&p(vec![2, 1]), &p(vec![1, 1]), 1),
            Some(Node {
                row: 1,
                col: 2,
                side: 1
            })
        );
        assert_eq!(single_node_difference(&p(vec![3]), &p(vec![1, 1]), 1), None);
        assert_eq!(
            single_node_difference(&p(vec![1]), &Partition::empty(), 2),
            Some(Node {
                row: 1,
                col: 1,
                side: 2
            })
        );
    }

    #[test]
    fn arc_expectations() {
        assert_eq!(ArcKind::Row.expected(2), vec![-1, 1]);
        assert_eq!(ArcKind::Row.expected(3), vec![-1, 2]);
        assert_eq!(ArcKind::Column.expected(3), vec![-2, 1]);
    }
}
