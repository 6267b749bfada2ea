//! One function per subcommand, each producing a [`Run`] for one field.

use serde::Serialize;

use qwb::cellular::CellularBasis;
use qwb::combinat::CellLabel;
use qwb::engine::{factorial, Engine, GENERIC_BOUND, SPECIAL_BOUND};
use qwb::field::Field;
use qwb::repthy::{self, Mode};

use crate::cache::Cache;
use crate::output::{Run, Table};
use crate::{parse_label, CliError, Common};

pub struct Context {
    pub r: usize,
    pub s: usize,
    pub bound: Option<usize>,
    cache: Cache,
}

impl Context {
    pub fn new(c: &Common) -> Self {
        Self {
            r: c.r,
            s: c.s,
            bound: c.bound,
            cache: Cache::new(c.cache_dir.clone()),
        }
    }

    fn engine(&self, field: &Field) -> Result<Engine, CliError> {
        self.cache.engine(self.r, self.s, field, self.bound)
    }

    fn in_range(&self, field: &Field) -> bool {
        let default = if field.is_generic() {
            GENERIC_BOUND
        } else {
            SPECIAL_BOUND
        };
        self.r + self.s <= self.bound.unwrap_or(default)
    }

    fn label(&self, f: usize, lambda: &str) -> Result<CellLabel, CliError> {
        parse_label(self.r, self.s, f, lambda)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(b: Option<bool>) -> &'static str {
    b.map_or("-", yes)
}

fn labels(ls: &[CellLabel]) -> String {
    ls.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct DimRow {
    label: CellLabel,
    dim: usize,
    dim_squared: usize,
}

#[derive(Serialize)]
struct Dims {
    labels: Vec<DimRow>,
    sum_of_squares: usize,
    expected: usize,
}

pub fn dims(ctx: &Context, field: &Field) -> Run {
    let rows: Vec<DimRow> = CellLabel::all(ctx.r, ctx.s)
        .into_iter()
        .map(|label| {
            let dim = repthy::cell_dim(ctx.r, ctx.s, &label);
            DimRow {
                label,
                dim,
                dim_squared: dim * dim,
            }
        })
        .collect();
    let sum: usize = rows.iter().map(|x| x.dim_squared).sum();
    let expected = factorial(ctx.r + ctx.s);
    let mut t = Table::new(&["label", "dim", "dim_squared"]);
    for x in &rows {
        t.push([
            x.label.to_string(),
            x.dim.to_string(),
            x.dim_squared.to_string(),
        ]);
    }
    let result = Dims {
        labels: rows,
        sum_of_squares: sum,
        expected,
    };
    Run::new(field.spec().to_string(), sum == expected, &result, t)
        .note(format!("sum of squares {sum}, (r+s)! = {expected}"))
}

pub fn relations(ctx: &Context, field: &Field) -> Result<Run, CliError> {
    let rep = ctx.engine(field)?.verify_relations()?;
    let mut t = Table::new(&["relation", "passed"]);
    for e in &rep.entries {
        t.push([e.name.as_str(), yes(e.passed)]);
    }
    let note = format!(
        "{} of {} identities hold",
        rep.entries.len() - rep.failures().len(),
        rep.entries.len()
    );
    Ok(Run::new(field.spec().to_string(), rep.all_passed(), &rep, t).note(note))
}

#[derive(Serialize)]
struct BlockRow {
    label: CellLabel,
    dim: usize,
}

#[derive(Serialize)]
struct Cellular {
    report: qwb::cellular::CellDatumReport,
    blocks: Vec<BlockRow>,
}

pub fn cellular(ctx: &Context, field: &Field) -> Result<Run, CliError> {
    let engine = ctx.engine(field)?;
    let cb = CellularBasis::new(&engine)?;
    let report = cb.validate()?;
    let blocks: Vec<BlockRow> = cb
        .blocks()
        .iter()
        .map(|b| BlockRow {
            label: b.label.clone(),
            dim: b.dim(),
        })
        .collect();
    let mut t = Table::new(&["label", "dim"]);
    for b in &blocks {
        t.push([b.label.to_string(), b.dim.to_string()]);
    }
    let mut notes = vec![
        format!("basis: {}", yes(report.basis)),
        format!("involution: {}", yes(report.involution)),
        format!("triangular: {}", yes(report.triangular)),
        format!("left_independent: {}", yes(report.left_independent)),
    ];
    if let Some(f) = &report.first_failure {
        notes.push(format!("first failure: {f}"));
    }
    let ok = report.passed();
    let mut run = Run::new(
        field.spec().to_string(),
        ok,
        &Cellular { report, blocks },
        t,
    );
    run.notes = notes;
    Ok(run)
}

#[derive(Serialize)]
struct Gram {
    label: CellLabel,
    dim: usize,
    matrix: Vec<Vec<String>>,
    det: String,
    rank: usize,
    radical_dim: usize,
    symmetric: bool,
}

pub fn gram(ctx: &Context, field: &Field, f: usize, lambda: &str) -> Result<Run, CliError> {
    let label = ctx.label(f, lambda)?;
    let engine = ctx.engine(field)?;
    let cb = CellularBasis::new(&engine)?;
    let g = cb.gram(&label)?;
    let matrix: Vec<Vec<String>> = (0..g.rows)
        .map(|i| (0..g.cols).map(|j| g.get(i, j).to_string()).collect())
        .collect();
    let rank = g.rank();
    let res = Gram {
        label,
        dim: g.rows,
        det: g.det(&field.one()).to_string(),
        rank,
        radical_dim: g.rows - rank,
        symmetric: g.is_symmetric(),
        matrix,
    };
    let mut t = Table::new(&["row", "entries"]);
    for (i, row) in res.matrix.iter().enumerate() {
        t.push([i.to_string(), row.join(" | ")]);
    }
    let note = format!(
        "label {}, dim {}, det {}, rank {}",
        res.label, res.dim, res.det, res.rank
    );
    Ok(Run::new(field.spec().to_string(), res.symmetric, &res, t).note(note))
}

#[derive(Serialize)]
struct Central {
    characters: Vec<repthy::CentralCharacter>,
    collisions: Vec<(CellLabel, CellLabel)>,
}

pub fn central(ctx: &Context, field: &Field) -> Result<Run, CliError> {
    let engine = ctx.engine(field)?;
    let cb = CellularBasis::new(&engine)?;
    let characters = repthy::verify_central_characters(&cb)?;
    let collisions = repthy::central_collisions(ctx.r, ctx.s, field);
    let ok = characters.iter().all(|c| c.acts_as_scalar == Some(true));
    let mut t = Table::new(&["label", "dim", "scalar", "acts_as_scalar"]);
    for c in &characters {
        t.push([
            c.label.to_string(),
            c.dim.to_string(),
            c.scalar.to_string(),
            opt(c.acts_as_scalar).into(),
        ]);
    }
    let note = format!("{} colliding pairs", collisions.len());
    Ok(Run::new(
        field.spec().to_string(),
        ok,
        &Central {
            characters,
            collisions,
        },
        t,
    )
    .note(note))
}

#[derive(Serialize)]
struct Simples {
    quantum_characteristic: String,
    quasi_hereditary: bool,
    classified: Vec<CellLabel>,
    /// `None` when `r+s` exceeds the engine bound.
    by_gram: Option<Vec<CellLabel>>,
    agree: Option<bool>,
}

pub fn simples(ctx: &Context, field: &Field) -> Result<Run, CliError> {
    let classified = repthy::classify_simples(ctx.r, ctx.s, field);
    let by_gram = if ctx.in_range(field) {
        let engine = ctx.engine(field)?;
        Some(repthy::simples_by_gram(&CellularBasis::new(&engine)?)?)
    } else {
        None
    };
    let agree = by_gram.as_ref().map(|g| *g == classified);
    let res = Simples {
        quantum_characteristic: field.quantum_characteristic().to_string(),
        quasi_hereditary: repthy::is_quasi_hereditary(ctx.r, ctx.s, field),
        classified,
        by_gram,
        agree,
    };
    let mut t = Table::new(&["label", "simple", "gram_rank_positive"]);
    for l in CellLabel::all(ctx.r, ctx.s) {
        let g = res.by_gram.as_ref().map(|g| g.contains(&l));
        t.push([
            l.to_string(),
            yes(res.classified.contains(&l)).into(),
            opt(g).into(),
        ]);
    }
    let note = format!(
        "e = {}, quasi-hereditary: {}, {} simples",
        res.quantum_characteristic,
        yes(res.quasi_hereditary),
        res.classified.len()
    );
    Ok(Run::new(field.spec().to_string(), agree != Some(false), &res, t).note(note))
}

pub fn semisimple(ctx: &Context, field: &Field, mode: Mode) -> Result<Run, CliError> {
    let v = repthy::semisimplicity(ctx.r, ctx.s, field, mode, ctx.bound)?;
    let mut t = Table::new(&["semisimple", "reason", "closed_form", "gram", "witnesses"]);
    t.push([
        yes(v.semisimple).to_string(),
        v.reason.to_string(),
        opt(v.closed_form).into(),
        opt(v.gram).into(),
        labels(&v.witnesses),
    ]);
    Ok(Run::new(field.spec().to_string(), true, &v, t))
}

pub fn branch(ctx: &Context, field: &Field, f: usize, lambda: &str) -> Result<Run, CliError> {
    let label = ctx.label(f, lambda)?;
    if ctx.r < 2 {
        return Err(CliError::Usage("branch needs r ≥ 2".into()));
    }
    let engine = ctx.engine(field)?;
    let cb = CellularBasis::new(&engine)?;
    let rep = repthy::branching_check(&cb, &label)?;
    let mut t = Table::new(&[
        "kind",
        "node",
        "label",
        "dim",
        "scalar",
        "increment",
        "central_ok",
    ]);
    for x in &rep.sections {
        let kind = match x.kind {
            repthy::SectionKind::Alpha => "alpha",
            repthy::SectionKind::Beta => "beta",
        };
        t.push([
            kind.to_string(),
            x.node.to_string(),
            x.label.to_string(),
            x.dim.to_string(),
            x.scalar.to_string(),
            x.increment.to_string(),
            yes(x.central_ok).into(),
        ]);
    }
    let ok = rep.passed();
    let notes = [
        format!(
            "dim {} = {} over sections: {}",
            rep.dim,
            rep.section_dim_sum,
            yes(rep.dimension_identity)
        ),
        format!(
            "trace {} = {}: {}",
            rep.trace,
            rep.trace_expected,
            yes(rep.trace_identity)
        ),
        format!("generators span the module: {}", yes(rep.filtration)),
        format!("sections exact: {}", yes(rep.sections_exact)),
    ];
    let mut run = Run::new(field.spec().to_string(), ok, &rep, t);
    for n in notes {
        run = run.note(n);
    }
    Ok(run)
}

pub fn sweep(ctx: &Context) -> Result<Run, CliError> {
    let points = repthy::semisimplicity_sweep(ctx.r, ctx.s, ctx.bound)?;
    let mut t = Table::new(&["sign", "a", "closed_form", "gram", "agree", "reason"]);
    for p in &points {
        let v = &p.verdict;
        t.push([
            if p.sign > 0 { "+" } else { "-" }.to_string(),
            p.a.to_string(),
            opt(v.closed_form).into(),
            opt(v.gram).into(),
            opt(v.agree).into(),
            v.reason.to_string(),
        ]);
    }
    let ok = points.iter().all(|p| p.verdict.agree != Some(false));
    let agreeing = points
        .iter()
        .filter(|p| p.verdict.agree != Some(false))
        .count();
    Ok(Run::new("rho=±q^a", ok, &points, t)
        .note(format!("{agreeing} of {} points agree", points.len())))
}
