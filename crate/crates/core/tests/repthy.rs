use qwb::cellular::CellularBasis;
use qwb::combinat::CellLabel;
use qwb::engine::Engine;
use qwb::field::{Field, FieldSpec};
use qwb::repthy::*;

fn field(s: &str) -> Field {
    Field::new(s.parse().unwrap()).unwrap()
}

fn label(f: usize, s: &str) -> CellLabel {
    CellLabel::new(f, s.parse().unwrap())
}

#[test]
fn central_character_examples() {
    let g = Field::generic();
    assert_eq!(
        central_character(1, 1, &label(1, "[];[]"), &g)
            .unwrap()
            .scalar,
        g.delta().clone()
    );
    assert!(central_character(1, 1, &label(0, "[1];[1]"), &g)
        .unwrap()
        .scalar
        .is_zero());
    assert_eq!(
        central_character(2, 1, &label(0, "[2];[1]"), &g)
            .unwrap()
            .scalar,
        g.rho_inv() * g.q()
    );
    assert!(central_character(2, 1, &label(0, "[2];[2]"), &g).is_err());
}

#[test]
fn central_scalars_separate_labels_for_small_algebras() {
    for n in 2..=4 {
        for r in 1..n {
            assert!(
                central_collisions(r, n - r, &Field::generic()).is_empty(),
                "({r},{})",
                n - r
            );
        }
    }
    // Specializations do merge labels.
    assert!(!central_collisions(2, 1, &field("q-power:1")).is_empty());
}

#[test]
fn central_characters_act_as_scalars() {
    for spec in ["generic", "delta-zero", "gfp:7,3,2", "q-power:2"] {
        for (r, s) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let e = Engine::build(r, s, field(spec)).unwrap();
            let cb = CellularBasis::new(&e).unwrap();
            for c in verify_central_characters(&cb).unwrap() {
                assert_eq!(c.acts_as_scalar, Some(true), "{spec} ({r},{s}) {}", c.label);
            }
        }
    }
}

#[test]
fn simples_examples() {
    let g = Field::generic();
    assert_eq!(
        classify_simples(1, 1, &g),
        vec![label(1, "[];[]"), label(0, "[1];[1]")]
    );
    assert_eq!(
        classify_simples(1, 1, &field("delta-zero")),
        vec![label(0, "[1];[1]")]
    );
    let e2 = field("gfp:5,2,3");
    for l in classify_simples(3, 2, &e2) {
        for p in [&l.lambda.first, &l.lambda.second] {
            let parts = p.parts();
            for i in 0..parts.len() {
                assert!(parts[i] - parts.get(i + 1).copied().unwrap_or(0) < 2, "{l}");
            }
        }
    }
}

#[test]
fn quasi_heredity() {
    assert!(is_quasi_hereditary(3, 2, &Field::generic()));
    assert!(!is_quasi_hereditary(2, 2, &field("delta-zero")));
    assert!(is_quasi_hereditary(2, 1, &field("delta-zero")));
    assert!(!is_quasi_hereditary(2, 1, &field("gfp:5,2,3")));
}

#[test]
fn semisimplicity_examples() {
    for n in 2..=5 {
        for r in 1..n {
            let s = n - r;
            let v =
                semisimplicity(r, s, &field(&format!("q-power:{n}")), Mode::Both, None).unwrap();
            assert!(v.semisimple && v.agree == Some(true), "({r},{s})");
        }
    }
    for (r, s) in [(2, 1), (3, 1)] {
        let v = semisimplicity(r, s, &field("delta-zero"), Mode::Both, None).unwrap();
        assert!(v.semisimple);
        assert_eq!(v.reason, Reason::DeltaZeroExceptional);
    }
    let v = semisimplicity(2, 1, &field("q-power:1"), Mode::Both, None).unwrap();
    assert!(!v.semisimple);
    assert_eq!(v.reason, Reason::RhoPowerCoincidence { a: 1 });
    assert_eq!(v.witnesses, vec![label(1, "[1];[]")]);
    let v = semisimplicity(3, 1, &field("gfp:7,3,2"), Mode::Gram, None).unwrap();
    assert!(!v.semisimple && v.gram.is_none());
}

#[test]
fn one_arc_examples() {
    let z = one_arc_zero_locus(2, ArcKind::Row, None).unwrap();
    assert_eq!(z.vanishing_plus, vec![-1, 1]);
    assert_eq!(z.size, 2);
    let z = one_arc_zero_locus(3, ArcKind::Row, None).unwrap();
    assert_eq!(z.vanishing_plus, vec![-1, 2]);
    assert!(z.matches);
    let z = one_arc_zero_locus(3, ArcKind::Column, None).unwrap();
    assert_eq!(z.vanishing_minus, vec![-2, 1]);
    assert!(z.matches);
    assert!(one_arc_zero_locus(1, ArcKind::Row, None).is_err());
}

#[test]
fn branching_examples() {
    let e = Engine::build(2, 1, Field::generic()).unwrap();
    let cb = CellularBasis::new(&e).unwrap();
    let rep = branching_check(&cb, &label(1, "[1];[]")).unwrap();
    let sections: Vec<(String, usize)> = rep
        .sections
        .iter()
        .map(|s| (s.label.to_string(), s.dim))
        .collect();
    assert_eq!(
        sections,
        vec![
            ("(1, ([],[]))".to_string(), 1),
            ("(0, ([1],[1]))".to_string(), 1)
        ]
    );
    assert!(rep.passed() && rep.sections_exact);

    let e = Engine::build(3, 1, Field::generic()).unwrap();
    let cb = CellularBasis::new(&e).unwrap();
    for l in CellLabel::all(3, 1).into_iter().filter(|l| l.f == 0) {
        let rep = branching_check(&cb, &l).unwrap();
        assert!(rep.sections.iter().all(|s| s.kind == SectionKind::Alpha));
        assert!(rep.passed() && rep.sections_exact, "{l}");
    }

    let e = Engine::build(2, 2, Field::generic()).unwrap();
    let cb = CellularBasis::new(&e).unwrap();
    let rep = branching_check(&cb, &label(1, "[1];[1]")).unwrap();
    assert!(rep.dimension_identity && rep.trace_identity && rep.filtration);
    // The first β generator already generates both β sections.
    assert_eq!(
        rep.sections.iter().map(|s| s.increment).collect::<Vec<_>>(),
        vec![2, 2, 0]
    );
}

#[test]
fn schur_examples() {
    let e = Engine::build(2, 2, Field::generic()).unwrap();
    let cb = CellularBasis::new(&e).unwrap();
    let t = schur_truncation_check(&cb, &label(1, "[1];[1]"), Idempotent::ETilde).unwrap();
    assert_eq!((t.rank, t.expected), (1, 1));
    for l in CellLabel::all(2, 2) {
        let a = schur_truncation_check(&cb, &l, Idempotent::ETilde).unwrap();
        let b = schur_truncation_check(&cb, &l, Idempotent::F21).unwrap();
        assert_eq!(a.rank, b.rank);
        if l.f == 0 {
            assert_eq!(a.rank, 0);
        }
    }
    let e = Engine::build(2, 1, Field::generic()).unwrap();
    let cb = CellularBasis::new(&e).unwrap();
    assert!(schur_truncation_check(&cb, &label(1, "[1];[]"), Idempotent::ETilde).is_err());
    assert_eq!(Idempotent::default_for(2, 1), Some(Idempotent::F21));
    assert_eq!(Idempotent::default_for(1, 1), None);
}

#[test]
fn witness_examples() {
    let e = Engine::build(2, 2, Field::generic()).unwrap();
    let cb = CellularBasis::new(&e).unwrap();
    for kind in [ArcKind::Row, ArcKind::Column] {
        let w = submodule_witness(&cb, kind).unwrap();
        assert!(w.v_nonzero && w.proportional && w.coefficient_matches && !w.annihilated);
    }
    let e = Engine::build(2, 2, Field::new(FieldSpec::q_power(2)).unwrap()).unwrap();
    let cb = CellularBasis::new(&e).unwrap();
    assert!(submodule_witness(&cb, ArcKind::Row).unwrap().annihilated);
    assert!(!submodule_witness(&cb, ArcKind::Column).unwrap().annihilated);
    let e = Engine::build(2, 2, Field::new(FieldSpec::q_power(-2)).unwrap()).unwrap();
    let cb = CellularBasis::new(&e).unwrap();
    assert!(submodule_witness(&cb, ArcKind::Column).unwrap().annihilated);
}

#[test]
fn cell_module_homomorphisms() {
    for n in 2..=4 {
        for r in 1..n {
            let s = n - r;
            let e = Engine::build(r, s, Field::generic()).unwrap();
            assert!(cell_hom_witnesses(&CellularBasis::new(&e).unwrap())
                .unwrap()
                .is_empty());
            for a in -(n as i32)..=(n as i32) {
                for sign in [1, -1] {
                    let e =
                        Engine::build(r, s, Field::new(FieldSpec::rho_branch(sign, a)).unwrap())
                            .unwrap();
                    for h in cell_hom_witnesses(&CellularBasis::new(&e).unwrap()).unwrap() {
                        assert!(
                            h.image_in_radical,
                            "({r},{s}) a={a} {} -> {}",
                            h.lambda, h.mu
                        );
                        assert!(h.consistent, "({r},{s}) a={a} {} -> {}", h.lambda, h.mu);
                    }
                }
            }
        }
    }
    let e = Engine::build(2, 1, Field::new(FieldSpec::q_power(1)).unwrap()).unwrap();
    let homs = cell_hom_witnesses(&CellularBasis::new(&e).unwrap()).unwrap();
    assert_eq!(homs.len(), 1);
    assert_eq!(
        (homs[0].lambda.clone(), homs[0].mu.clone()),
        (label(0, "[2];[1]"), label(1, "[1];[]"))
    );
}
