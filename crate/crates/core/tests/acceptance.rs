//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use qwb::cellular::CellularBasis;
use qwb::combinat::{brute_force_cosets, coset_count, coset_reps, CellLabel};
use qwb::engine::{factorial, Engine, Tok};
use qwb::field::{Field, FieldSpec};
use qwb::repthy::*;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn field(s: &str) -> Field {
    Field::new(s.parse().unwrap()).unwrap()
}

/// `(r, s)` with `r, s ≥ 1` and `r + s ≤ n`.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (2..=n)
        .flat_map(|t| (1..t).map(move |r| (r, t - r)))
        .collect()
}

fn build(r: usize, s: usize, f: &Field) -> Engine {
    Engine::build(r, s, f.clone()).unwrap_or_else(|e| panic!("B_{{{r},{s}}} over {f}: {e}"))
}

fn dimensions() -> Outcome {
    let mut jobs: Vec<(usize, usize, Field)> = pairs(5)
        .into_iter()
        .map(|(r, s)| (r, s, Field::generic()))
        .collect();
    jobs.extend(
        pairs(6)
            .into_iter()
            .map(|(r, s)| (r, s, field("gfp:101,3,5"))),
    );
    let results: Vec<(bool, Duration, String)> = jobs
        .par_iter()
        .map(|(r, s, f)| {
            let t = Instant::now();
            let e = build(*r, *s, f);
            let elapsed = t.elapsed();
            let cb = CellularBasis::new(&e).unwrap();
            let squares: usize = cb.blocks().iter().map(|b| b.dim() * b.dim()).sum();
            let n = factorial(r + s);
            let ok = e.dim() == n && squares == n && elapsed < Duration::from_secs(300);
            (ok, elapsed, format!("({r},{s}) {f}"))
        })
        .collect();
    let slowest = results.iter().max_by_key(|x| x.1).unwrap();
    let bad: Vec<&str> = results
        .iter()
        .filter(|x| !x.0)
        .map(|x| x.2.as_str())
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "{} engines, slowest {} in {:.2?}; failures {:?}",
            results.len(),
            slowest.2,
            slowest.1,
            bad
        ),
    )
}

fn relations() -> Outcome {
    let reports: Vec<_> = pairs(5)
        .par_iter()
        .map(|&(r, s)| build(r, s, &Field::generic()).verify_relations().unwrap())
        .collect();
    let checks: usize = reports.iter().map(|r| r.entries.len()).sum();
    let failures: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.failures()
                .into_iter()
                .map(move |c| format!("({},{}) {}", r.r, r.s, c.name))
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!(
            "{checks} exact identities over {} algebras; failures {failures:?}",
            reports.len()
        ),
    )
}

fn cosets() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for r in 1..=4 {
        for s in 1..=4 {
            for f in 0..=r.min(s) {
                n += 1;
                let reps = coset_reps(r, s, f).unwrap().len();
                let (count, exact) = brute_force_cosets(r, s, f).unwrap();
                if !(exact && reps == count && count == coset_count(r, s, f)) {
                    bad.push((r, s, f));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{n} triples (r,s,f); failures {bad:?}"),
    )
}

fn cell_datum() -> Outcome {
    let reports: Vec<_> = pairs(5)
        .par_iter()
        .map(|&(r, s)| {
            let e = build(r, s, &Field::generic());
            CellularBasis::new(&e).unwrap().validate().unwrap()
        })
        .collect();
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("({},{}) {:?}", r.r, r.s, r.first_failure))
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "axioms (a), (b), (c) and left-index independence on {} algebras; failures {bad:?}",
            reports.len()
        ),
    )
}

fn central() -> Outcome {
    let results: Vec<(bool, bool, usize, String)> = pairs(5)
        .par_iter()
        .map(|&(r, s)| {
            let e = build(r, s, &Field::generic());
            let c = e.central_element();
            let commutes = Tok::positives(r, s).into_iter().all(|t| {
                let g = e.tok(t).unwrap();
                e.mul(&c, &g).unwrap() == e.mul(&g, &c).unwrap()
            });
            let cb = CellularBasis::new(&e).unwrap();
            let chars = verify_central_characters(&cb).unwrap();
            let scalar = chars.iter().all(|x| x.acts_as_scalar == Some(true));
            (commutes, scalar, chars.len(), format!("({r},{s})"))
        })
        .collect();
    let labels: usize = results.iter().map(|x| x.2).sum();
    let bad: Vec<&str> = results
        .iter()
        .filter(|x| !(x.0 && x.1))
        .map(|x| x.3.as_str())
        .collect();
    outcome(
        bad.is_empty(),
        format!("{labels} cell modules act by the content scalar; failures {bad:?}"),
    )
}

fn zero_loci() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for r in 2..=4 {
        for kind in [ArcKind::Row, ArcKind::Column] {
            let z = one_arc_zero_locus(r, kind, None).unwrap();
            pass &= z.matches;
            parts.push(format!(
                "r={r} {kind:?} {:?}/{:?}",
                z.vanishing_plus, z.vanishing_minus
            ));
        }
    }
    outcome(
        pass,
        format!("vanishing a for rho = +q^a/-q^a: {}", parts.join(", ")),
    )
}

fn semisimplicity_grid() -> Outcome {
    let mut points = 0;
    let mut bad = Vec::new();
    for (r, s) in pairs(5) {
        for p in semisimplicity_sweep(r, s, None).unwrap() {
            points += 1;
            if p.verdict.agree != Some(true) {
                bad.push(format!("({r},{s}) {}", p.verdict.field));
            }
        }
        for n in [r + s, r + s + 1] {
            let v = semisimplicity(
                r,
                s,
                &Field::new(FieldSpec::q_power(n as i32)).unwrap(),
                Mode::Both,
                None,
            );
            if !v.as_ref().is_ok_and(|v| v.semisimple) {
                bad.push(format!("({r},{s}) q-power:{n}"));
            }
        }
        for f in ["delta-zero", "delta-zero:neg"] {
            let v = semisimplicity(r, s, &field(f), Mode::Gram, None).unwrap();
            if v.semisimple != DELTA_ZERO_SEMISIMPLE.contains(&(r, s)) {
                bad.push(format!("({r},{s}) {f}"));
            }
        }
    }
    let b22 = semisimplicity(2, 2, &field("delta-zero"), Mode::Both, None).unwrap();
    if b22.semisimple {
        bad.push("(2,2) delta-zero".into());
    }
    outcome(bad.is_empty(), format!("{points} grid points agree; rho = q^n for n >= r+s semisimple; delta-zero list exact; failures {bad:?}"))
}

fn delta_zero_grams() -> Outcome {
    let checks = delta_zero_gram_checks(None).unwrap();
    let pass = checks
        .iter()
        .all(|c| c.vanishes && (c.size == 6 || c.size == 8));
    let desc: Vec<String> = checks
        .iter()
        .filter(|c| c.sign == 1)
        .map(|c| format!("({},{}) {} size {}", c.r, c.s, c.label, c.size))
        .collect();
    outcome(
        pass,
        format!("det = 0 at rho = 1 and rho = -1 for {}", desc.join("; ")),
    )
}

fn branching() -> Outcome {
    let jobs: Vec<(usize, usize)> = pairs(5).into_iter().filter(|&(r, _)| r >= 2).collect();
    let results: Vec<(usize, Vec<String>)> = jobs
        .par_iter()
        .map(|&(r, s)| {
            let e = build(r, s, &Field::generic());
            let cb = CellularBasis::new(&e).unwrap();
            let labels = CellLabel::all(r, s);
            let bad = labels
                .iter()
                .filter(|l| {
                    let rep = branching_check(&cb, l).unwrap();
                    !(rep.dimension_identity && rep.trace_identity && rep.filtration)
                })
                .map(|l| format!("({r},{s}) {l}"))
                .collect();
            (labels.len(), bad)
        })
        .collect();
    let n: usize = results.iter().map(|x| x.0).sum();
    let bad: Vec<String> = results.into_iter().flat_map(|x| x.1).collect();
    outcome(
        bad.is_empty(),
        format!("dimension and trace identities on {n} labels; failures {bad:?}"),
    )
}

fn schur() -> Outcome {
    let results: Vec<(usize, Vec<String>)> = pairs(5)
        .par_iter()
        .filter(|&&(r, s)| r >= 2 || s >= 2)
        .map(|&(r, s)| {
            let e = build(r, s, &Field::generic());
            let cb = CellularBasis::new(&e).unwrap();
            let mut bad = Vec::new();
            let mut n = 0;
            for choice in [Idempotent::ETilde, Idempotent::F21] {
                if !choice.exists(r, s) {
                    continue;
                }
                let b = schur_bookkeeping(&cb, choice).unwrap();
                n += b.truncations.len();
                if !b.passed {
                    bad.push(format!("({r},{s}) {choice:?}"));
                }
            }
            (n, bad)
        })
        .collect();
    let n: usize = results.iter().map(|x| x.0).sum();
    let bad: Vec<String> = results.into_iter().flat_map(|x| x.1).collect();
    outcome(
        bad.is_empty(),
        format!("{n} truncation ranks and dim B e_1 = (r+s-1)!; failures {bad:?}"),
    )
}

fn simples() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for spec in ["generic", "delta-zero", "delta-zero:neg", "gfp:7,3,2"] {
        let f = field(spec);
        for (r, s) in pairs(4) {
            let e = build(r, s, &f);
            let cb = CellularBasis::new(&e).unwrap();
            n += 1;
            if classify_simples(r, s, &f) != simples_by_gram(&cb).unwrap() {
                bad.push(format!("({r},{s}) {spec}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{n} algebras over generic, delta-zero (both signs), e = 3; failures {bad:?}"),
    )
}

fn witnesses() -> Outcome {
    let mut bad = Vec::new();
    let mut points = 0;
    for (r, s) in [(2, 2), (3, 2)] {
        let m = (r + s) as i32 - 2;
        let e = build(r, s, &Field::generic());
        let cb = CellularBasis::new(&e).unwrap();
        for kind in [ArcKind::Row, ArcKind::Column] {
            let w = submodule_witness(&cb, kind).unwrap();
            if !(w.in_ideal
                && w.v_nonzero
                && w.proportional
                && w.coefficient_matches
                && !w.annihilated)
            {
                bad.push(format!("({r},{s}) {kind:?} generic"));
            }
        }
        let n = (r + s) as i32;
        let grid: Vec<(i8, i32)> = (-n..=n).flat_map(|a| [(1, a), (-1, a)]).collect();
        let found: Vec<Vec<String>> = grid
            .par_iter()
            .map(|&(sign, a)| {
                let f = Field::new(FieldSpec::rho_branch(sign, a)).unwrap();
                let e = build(r, s, &f);
                let cb = CellularBasis::new(&e).unwrap();
                let mut bad = Vec::new();
                for (kind, target) in [(ArcKind::Row, m), (ArcKind::Column, -m)] {
                    let w = submodule_witness(&cb, kind).unwrap();
                    if !w.v_nonzero || w.annihilated != (a == target) {
                        bad.push(format!("({r},{s}) {kind:?} {f}"));
                    }
                }
                bad
            })
            .collect();
        points += grid.len();
        bad.extend(found.into_iter().flatten());
    }
    outcome(
        bad.is_empty(),
        format!(
            "e_1 v = 0 exactly at rho^2 = q^(+-2(r+s-2)) on {points} grid points; failures {bad:?}"
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("dimension counts", dimensions),
        ("relation suite", relations),
        ("coset count", cosets),
        ("cell datum", cell_datum),
        ("central element", central),
        ("gram zero loci", zero_loci),
        ("semisimplicity criterion", semisimplicity_grid),
        ("delta-zero gram determinants", delta_zero_grams),
        ("branching", branching),
        ("schur truncation", schur),
        ("simple-module classification", simples),
        ("submodule witnesses", witnesses),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "[{}] {:>2} {name}: {} ({:.1?})",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
