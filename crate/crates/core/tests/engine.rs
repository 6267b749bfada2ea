use qwb::combinat::coset_reps;
use qwb::engine::verify::{hecke_quotient, verify_hecke_quotient};
use qwb::engine::{factorial, Engine, Tok};
use qwb::field::{Field, FieldSpec};

fn generic(r: usize, s: usize) -> Engine {
    Engine::build(r, s, Field::generic()).unwrap()
}

#[test]
fn small_dimensions() {
    let e = generic(1, 1);
    assert_eq!(e.dim(), 2);
    assert_eq!(e.words()[1], vec![Tok::E]);
    assert_eq!(generic(2, 1).dim(), 6);
    assert_eq!(generic(2, 2).dim(), 24);
}

#[test]
fn product_examples() {
    let e = generic(2, 2);
    let f = e.field().clone();
    let e1 = e.tok(Tok::E).unwrap();
    let g1 = e.tok(Tok::G(1)).unwrap();
    let gi = e.tok(Tok::GInv(1)).unwrap();
    assert_eq!(e.mul(&e1, &e1).unwrap(), e1.scale(f.delta()));
    assert_eq!(
        e.mul(&e.mul(&e1, &g1).unwrap(), &e1).unwrap(),
        e1.scale(f.rho())
    );
    assert_eq!(e.mul(&g1, &gi).unwrap(), e.one());
}

#[test]
fn sigma_examples() {
    let e = generic(3, 1);
    let x = e.word(&[Tok::G(1), Tok::G(2)]).unwrap();
    assert_eq!(
        e.sigma(&x).unwrap(),
        e.word(&[Tok::G(2), Tok::G(1)]).unwrap()
    );
    let e2 = generic(2, 2);
    for f in 0..=2 {
        let ef = e2.e_power(f).unwrap();
        assert_eq!(e2.sigma(&ef).unwrap(), ef);
    }
}

#[test]
fn relation_suite_22() {
    let e = generic(2, 2);
    let rep = e.verify_relations().unwrap();
    assert!(rep.all_passed(), "{:?}", rep.failures());
    assert!(rep.entries.iter().any(|c| c.name == "defining (m)"));
    assert!(rep
        .entries
        .iter()
        .any(|c| c.name == "e_1 g_1 g*_1^-1 e_1 = e_1 e_2"));
}

#[test]
fn special_elements() {
    let e = generic(2, 2);
    assert_eq!(e.e_ij(1, 1).unwrap(), e.tok(Tok::E).unwrap());
    let t = e.e_tilde_12().unwrap();
    assert_eq!(e.mul(&t, &t).unwrap(), t);
    let f = e.f_21().unwrap();
    assert_eq!(e.mul(&f, &f).unwrap(), f);
    for d in coset_reps(2, 2, 1).unwrap() {
        assert!(!e.g_d(&d).unwrap().is_zero());
    }
    assert!(e.e_ij(3, 1).is_err());
}

#[test]
fn central_element() {
    let e = generic(1, 1);
    assert_eq!(e.central_element(), e.tok(Tok::E).unwrap());
    for (r, s) in [(2, 1), (1, 2), (2, 2), (3, 1)] {
        let e = generic(r, s);
        let c = e.central_element();
        for t in Tok::positives(r, s) {
            let g = e.tok(t).unwrap();
            assert_eq!(
                e.mul(&c, &g).unwrap(),
                e.mul(&g, &c).unwrap(),
                "({r},{s}) {t}"
            );
        }
        assert_eq!(e.sigma(&c).unwrap(), c);
    }
}

#[test]
fn subalgebra_maps() {
    let e = generic(2, 2);
    for f in 0..=2 {
        assert!(e.verify_shift_map(f).unwrap().iter().all(|c| c.passed));
        assert!(verify_hecke_quotient(2, 2, f, e.field())
            .unwrap()
            .iter()
            .all(|c| c.passed));
    }
    assert!(e.verify_tilde_map(false).unwrap().iter().all(|c| c.passed));
    assert!(e.verify_tilde_map(true).unwrap().iter().all(|c| c.passed));
    let q = hecke_quotient(
        &vec![(e.field().one(), vec![Tok::E, Tok::H(2)])],
        3,
        3,
        1,
        e.field(),
    )
    .unwrap();
    assert!(q.is_empty());
    let q = hecke_quotient(
        &vec![(e.field().one(), vec![Tok::G(2)])],
        3,
        3,
        1,
        e.field(),
    )
    .unwrap();
    assert_eq!(q.len(), 1);
}

#[test]
fn swap_isomorphism() {
    for (r, s) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let e = generic(r, s);
        assert!(e.verify_swap().unwrap().iter().all(|c| c.passed));
    }
}

#[test]
fn corner_and_left_ideal() {
    for (r, s) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        let e = generic(r, s);
        let (a, b, both) = e.e1_corner_spans().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, both);
        let e1 = e.tok(Tok::E).unwrap();
        assert_eq!(e.left_ideal_dim(&e1).unwrap(), factorial(r + s - 1));
    }
}

#[test]
fn export_roundtrip() {
    for spec in ["generic", "gfp:101,3,5", "q-power:2", "rational:2,3"] {
        let field = Field::new(spec.parse::<FieldSpec>().unwrap()).unwrap();
        let e = Engine::build(2, 2, field).unwrap();
        let ex = e.export();
        let json = serde_json::to_string(&ex).unwrap();
        let back: qwb::engine::EngineExport = serde_json::from_str(&json).unwrap();
        let e2 = Engine::from_export(&back).unwrap();
        assert_eq!(e2.right_matrices(), e.right_matrices());
        assert_eq!(e2.export(), ex);
    }
}

#[test]
fn bounds_enforced() {
    assert!(Engine::build(3, 3, Field::generic()).is_err());
    assert!(Engine::build(0, 2, Field::generic()).is_err());
}

mod random {
    use std::sync::OnceLock;

    use proptest::prelude::*;
    use qwb::engine::{Element, Engine};
    use qwb::field::Field;

    fn engines() -> &'static [Engine] {
        static E: OnceLock<Vec<Engine>> = OnceLock::new();
        E.get_or_init(|| {
            vec![
                Engine::build(2, 2, Field::generic()).unwrap(),
                Engine::build(3, 1, Field::generic()).unwrap(),
                Engine::build(3, 2, Field::new("gfp:101,3,5".parse().unwrap()).unwrap()).unwrap(),
            ]
        })
    }

    type Spec = Vec<(usize, i64)>;

    fn elem(e: &Engine, spec: &Spec) -> Element {
        let f = e.field();
        let mut x = e.zero();
        for (i, c) in spec {
            x = x
                .add(&e.element(vec![((i % e.dim()) as u32, f.int(*c))]))
                .unwrap();
        }
        x
    }

    fn spec() -> impl Strategy<Value = Spec> {
        prop::collection::vec((0usize..720, -3i64..=3), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn associativity(a in spec(), b in spec(), c in spec(), k in 0usize..3) {
            let e = &engines()[k];
            let (x, y, z) = (elem(e, &a), elem(e, &b), elem(e, &c));
            let lhs = e.mul(&e.mul(&x, &y).unwrap(), &z).unwrap();
            let rhs = e.mul(&x, &e.mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sigma_is_an_involutive_anti_automorphism(a in spec(), b in spec(), k in 0usize..3) {
            let e = &engines()[k];
            let (x, y) = (elem(e, &a), elem(e, &b));
            prop_assert_eq!(e.sigma(&e.sigma(&x).unwrap()).unwrap(), x.clone());
            let lhs = e.sigma(&e.mul(&x, &y).unwrap()).unwrap();
            let rhs = e.mul(&e.sigma(&y).unwrap(), &e.sigma(&x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn central_element_is_sigma_fixed_and_central(a in spec(), k in 0usize..3) {
            let e = &engines()[k];
            let c = e.central_element();
            let x = elem(e, &a);
            prop_assert_eq!(e.mul(&c, &x).unwrap(), e.mul(&x, &c).unwrap());
            prop_assert_eq!(e.sigma(&c).unwrap(), c);
        }
    }
}
