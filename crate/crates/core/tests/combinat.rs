use proptest::prelude::*;
use qwb::combinat::*;
use qwb::engine::factorial;

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

#[test]
fn std_count_matches_enumeration_and_recursion() {
    for n in 0..=8 {
        for l in Partition::all(n) {
            let enumerated = StdTableau::all(&l, 0).len();
            assert_eq!(std_count(&l), enumerated, "{l}");
            if n > 0 {
                let rec: usize = l
                    .removable_nodes(1)
                    .iter()
                    .map(|x| std_count(&l.remove_node(x).unwrap()))
                    .sum();
                assert_eq!(rec, enumerated, "{l}");
            }
        }
    }
}

#[test]
fn squared_cell_dims_sum_to_factorial() {
    for n in 2..=7 {
        for r in 1..n {
            let s = n - r;
            let total: usize = CellLabel::all(r, s)
                .iter()
                .map(|l| {
                    let d = std_count(&l.lambda.first)
                        * std_count(&l.lambda.second)
                        * coset_count(r, s, l.f);
                    d * d
                })
                .sum();
            assert_eq!(total, factorial(r + s), "({r},{s})");
        }
    }
}

#[test]
fn coset_reps_match_brute_force() {
    for r in 1..=4 {
        for s in 1..=4 {
            for f in 0..=r.min(s) {
                let reps = coset_reps(r, s, f).unwrap();
                assert_eq!(reps.len(), coset_count(r, s, f));
                let (count, exact) = brute_force_cosets(r, s, f).unwrap();
                assert_eq!(count, reps.len(), "({r},{s},{f})");
                assert!(exact, "({r},{s},{f})");
            }
        }
    }
    assert!(coset_reps(2, 1, 2).is_err());
}

#[test]
fn coset_examples() {
    assert_eq!(coset_reps(2, 1, 1).unwrap().len(), 2);
    let id = coset_reps(3, 2, 0).unwrap();
    assert_eq!(id.len(), 1);
    assert!(id[0].is_identity());
    assert_eq!(coset_reps(2, 2, 2).unwrap().len(), 2);
}

#[test]
fn node_orderings() {
    let l = p(&[3, 1]);
    let rem: Vec<(usize, usize)> = l
        .removable_nodes(1)
        .iter()
        .map(|x| (x.row, x.col))
        .collect();
    assert_eq!(rem, vec![(2, 1), (1, 3)]);
    let add: Vec<(usize, usize)> = l.addable_nodes(2).iter().map(|x| (x.row, x.col)).collect();
    assert_eq!(add, vec![(1, 4), (2, 2), (3, 1)]);
    assert_eq!(
        Node {
            row: 2,
            col: 5,
            side: 1
        }
        .residue(),
        3
    );
}

#[test]
fn label_order_is_a_linear_extension() {
    for (r, s) in [(2, 2), (3, 2), (4, 3)] {
        let labels = CellLabel::all(r, s);
        for i in 0..labels.len() {
            for j in 0..labels.len() {
                if labels[i].above(&labels[j]) {
                    assert!(i < j, "{} {}", labels[i], labels[j]);
                }
            }
        }
    }
}

#[test]
fn e_restricted_examples() {
    let b = |s: &str| s.parse::<Bipartition>().unwrap();
    assert!(b("[5,5];[3]").is_e_restricted(qwb::field::QuantumChar::Infinite));
    assert!(!b("[2];[]").is_e_restricted(qwb::field::QuantumChar::Finite(2)));
    assert!(b("[2,1];[1,1]").is_e_restricted(qwb::field::QuantumChar::Finite(3)));
    assert!(!b("[3];[]").is_e_restricted(qwb::field::QuantumChar::Finite(3)));
}

#[test]
fn semistandard_truncation_exhaustive() {
    let mut strict_seen = false;
    let mut equal_seen = false;
    for n in 2..=6 {
        for lambda in Partition::all(n) {
            for mu in Partition::all(n)
                .into_iter()
                .filter(|m| m.parts().last() == Some(&1))
            {
                let mut nu = mu.parts().to_vec();
                nu.pop();
                let nu = p(&nu);
                let from_nu = nu
                    .addable_nodes(1)
                    .iter()
                    .any(|x| nu.add_node(x).unwrap() == lambda);
                let mut attained = false;
                for s in StdTableau::all(&lambda, 0) {
                    let big = type_tableau(&s, mu.parts());
                    let Ok(chk) = semistandard_truncation_check(&lambda, &mu, &big, &s) else {
                        continue;
                    };
                    assert!(chk.holds(), "{lambda} {mu} {s}");
                    strict_seen |= chk.strict;
                    equal_seen |= chk.restricted == chk.nu;
                    attained |= chk.restricted == chk.nu;
                }
                assert_eq!(attained, from_nu, "{lambda} {mu}");
            }
        }
    }
    assert!(strict_seen && equal_seen);
}

#[test]
fn semistandard_precondition() {
    let lambda = p(&[2, 1]);
    let mu = p(&[2, 1]);
    let s = StdTableau::row_reading(&lambda, 0);
    let bad = vec![vec![2, 1], vec![1]];
    assert!(semistandard_truncation_check(&lambda, &mu, &bad, &s).is_err());
    let good = type_tableau(&s, mu.parts());
    let chk = semistandard_truncation_check(&lambda, &mu, &good, &s).unwrap();
    assert_eq!(chk.restricted, p(&[2]));
    assert!(chk.holds());
}

fn partition_of(n: usize) -> impl Strategy<Value = Partition> {
    let all = Partition::all(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #[test]
    fn dominance_is_a_partial_order(
        (a, b, c) in (1usize..=8).prop_flat_map(|n| (partition_of(n), partition_of(n), partition_of(n)))
    ) {
        prop_assert!(a.dominance(&a).ge());
        if a.dominance(&b).ge() && b.dominance(&a).ge() {
            prop_assert_eq!(&a, &b);
        }
        if a.dominance(&b).ge() && b.dominance(&c).ge() {
            prop_assert!(a.dominance(&c).ge());
        }
        prop_assert_eq!(a.dominance(&b).ge(), b.conjugate().dominance(&a.conjugate()).ge());
    }

    #[test]
    fn label_order_is_a_partial_order(r in 1usize..=4, s in 1usize..=4, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let labels = CellLabel::all(r, s);
        let (a, b, c) = (&labels[i % labels.len()], &labels[j % labels.len()], &labels[k % labels.len()]);
        prop_assert!(a.compare(a).ge());
        if a.compare(b).ge() && b.compare(a).ge() {
            prop_assert_eq!(a, b);
        }
        if a.compare(b).ge() && b.compare(c).ge() {
            prop_assert!(a.compare(c).ge());
        }
    }
}
