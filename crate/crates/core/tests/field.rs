use proptest::prelude::*;
use qwb::field::{Field, FieldSpec, QuantumChar, RatFunc, Scalar};

fn fields() -> Vec<Field> {
    [
        "generic",
        "q-power:3",
        "neg-q-power:-2",
        "delta-zero",
        "rational:2,3",
        "gfp:101,3,5",
    ]
    .iter()
    .map(|s| Field::new(s.parse().unwrap()).unwrap())
    .collect()
}

type Terms = Vec<(i64, i32, i32)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((-5i64..=5, -3i32..=3, -3i32..=3), 1..5)
}

fn build(f: &Field, t: &Terms) -> Scalar {
    let mut acc = f.zero();
    for (c, a, b) in t {
        acc += &(&(&f.int(*c) * &f.q_pow(*a)) * &f.rho_pow(*b));
    }
    acc
}

fn ratfunc(t: &Terms) -> RatFunc {
    build(&Field::generic(), t).as_ratfunc().unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in terms(), b in terms(), c in terms()) {
        for f in fields() {
            let (x, y, z) = (build(&f, &a), build(&f, &b), build(&f, &c));
            prop_assert_eq!(&x + &f.zero(), x.clone());
            prop_assert_eq!(&x * &f.one(), x.clone());
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn canonical_representation(a in terms(), b in terms()) {
        for f in fields() {
            let (x, y) = (build(&f, &a), build(&f, &b));
            prop_assert_eq!((&(&x + &y) - &y).to_string(), x.to_string());
            if !y.is_zero() {
                prop_assert_eq!((&(&x * &y) / &y).to_string(), x.to_string());
                let w = &x / &y;
                prop_assert_eq!((&(&w * &y) / &y).to_string(), w.to_string());
            }
        }
    }

    #[test]
    fn textual_roundtrip(a in terms(), b in terms()) {
        for f in fields() {
            let (x, y) = (build(&f, &a), build(&f, &b));
            let w = if y.is_zero() { x } else { &x / &y };
            prop_assert_eq!(f.parse_scalar(&w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn specialization_is_a_ring_map(a in terms(), b in terms()) {
        let (x, y) = (ratfunc(&a), ratfunc(&b));
        for f in fields() {
            let (sx, sy) = (f.specialize(&x).unwrap(), f.specialize(&y).unwrap());
            prop_assert_eq!(f.specialize(&x.mul(&y)).unwrap(), &sx * &sy);
            prop_assert_eq!(f.specialize(&x.add(&y)).unwrap(), &sx + &sy);
        }
    }
}

#[test]
fn delta_zero_iff_rho_squared_one() {
    let mut specs: Vec<FieldSpec> = vec![FieldSpec::Generic];
    for a in -3..=3 {
        specs.push(FieldSpec::rho_branch(1, a));
        specs.push(FieldSpec::rho_branch(-1, a));
    }
    for s in [
        "rational:2,1",
        "rational:2,-1",
        "rational:2,3",
        "gfp:7,3,1",
        "gfp:7,3,6",
        "gfp:7,3,2",
    ] {
        specs.push(s.parse().unwrap());
    }
    for spec in specs {
        let f = Field::new(spec).unwrap();
        let rho2_is_one = (f.rho() * f.rho()).is_one();
        assert_eq!(f.delta_is_zero(), rho2_is_one, "{f}");
        assert_eq!(f.delta().is_zero(), rho2_is_one, "{f}");
    }
}

#[test]
fn delta_formula() {
    let f = Field::generic();
    assert_eq!(f.z(), &(f.q() - f.q_inv()));
    assert_eq!(&(f.delta() * f.z()), &(f.rho() - f.rho_inv()));
}

#[test]
fn quantum_characteristic() {
    let e = |s: &str| {
        Field::new(s.parse().unwrap())
            .unwrap()
            .quantum_characteristic()
    };
    assert_eq!(e("generic"), QuantumChar::Infinite);
    assert_eq!(e("gfp:7,3,2"), QuantumChar::Finite(3));
    assert!(!e("gfp:7,3,2").exceeds(3));
    assert!(e("gfp:7,3,2").exceeds(2));
    assert!(Field::new("gfp:5,1,2".parse().unwrap()).is_err());
}
