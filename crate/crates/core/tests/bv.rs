mod common;

use common::*;
use multibrace::algebra::Algebra;
use multibrace::bv::*;
use multibrace::linalg::Matrix;
use multibrace::maps::{all_tuples, MegaMap, PartitionedMap};
use multibrace::{Error, GradedSpace, Partition, Scalar, Vector};
use proptest::prelude::*;

fn row<'a>(
    r: &'a multibrace::homotopy::StructureReport,
    label: &str,
) -> &'a multibrace::homotopy::ReportRow {
    r.rows
        .iter()
        .find(|x| x.label == label)
        .unwrap_or_else(|| panic!("no row {label} in\n{r}"))
}

fn structure(a: &Algebra) -> MegaMap {
    MegaMap::new()
        .with(a.product())
        .with(PartitionedMap::identity_selector())
}

fn table1(s: &GradedSpace, degree: i64, f: impl Fn(usize) -> Vector) -> PartitionedMap {
    PartitionedMap::table(
        s,
        Partition::plain(1),
        degree,
        (0..s.dim()).map(|i| (vec![i], f(i))),
    )
    .unwrap()
}

/// `B(ab) - B(a)b - (-1)^{|a||B|} aB(b)`, written out directly.
fn phi2_oracle(a: &Algebra, b: &PartitionedMap, x: usize, y: usize) -> Vector {
    let s = &a.space;
    let ap = |v: &Vector| b.eval_flat(&[v]);
    let (ex, ey) = (Vector::basis(x), Vector::basis(y));
    let mut v = ap(&a.mul(&ex, &ey));
    v.add_scaled(&a.mul(&ap(&ex), &ey), Scalar::MINUS_ONE);
    v.add_scaled(
        &a.mul(&ex, &ap(&ey)),
        -Scalar::sign(s.degree(x) * b.degree()),
    );
    v
}

#[test]
fn phi_two_matches_direct_formula() {
    let mut r = rng(3);
    for a in [
        Algebra::nilpotent_generators(&[1, 2]),
        Algebra::nilpotent_generators(&[1, 1, 2]),
        Algebra::dual_numbers(),
    ] {
        for deg in [-1, 1, -2] {
            let b = random_map(&mut r, &a.space, Partition::plain(1), deg, 0.7);
            let p2 = phi(&a.space, &b, &a.product(), 2).unwrap();
            for t in all_tuples(a.dim(), 2) {
                assert_eq!(p2.eval_basis(&t), phi2_oracle(&a, &b, t[0], t[1]));
            }
        }
    }
}

#[test]
fn differential_order_of_standard_operators() {
    let d = euler_data(1);
    let (s, m2) = (&d.space, d.component("(2)"));
    assert_eq!(diff_order(s, &d.b, &m2, 3).unwrap(), Some(2));
    assert_eq!(
        diff_order(s, &PartitionedMap::zero(Partition::plain(1), -1), &m2, 3).unwrap(),
        Some(0)
    );
    // d/dt1 is a derivation
    let dt = table1(s, -1, |i| match s.name(i) {
        "t1" => Vector::basis(0),
        "t1t2" => Vector::basis(s.index_of("t2").unwrap()),
        _ => Vector::zero(),
    });
    assert_eq!(diff_order(s, &dt, &m2, 3).unwrap(), Some(1));
    assert!(phi(s, &dt, &m2, 0).is_err());
}

#[test]
fn euler_instance_bracket_values() {
    let d = euler_data(1);
    let s = &d.space;
    let (t1, t2) = (s.index_of("t1").unwrap(), s.index_of("t2").unwrap());
    let p2 = d.phi(2).unwrap();
    assert_eq!(p2.eval_basis(&[t1, t2]), Vector::basis(t2));
    assert_eq!(p2.eval_basis(&[t2, t1]), Vector::basis(t2));
    assert!(d.phi(3).unwrap().is_zero());
    let br = d.bracket_table().unwrap();
    assert_eq!(
        br.eval_basis(&[t1, t2]),
        Vector::basis(t2).scaled(Scalar::MINUS_ONE)
    );
    assert_eq!(br.eval_basis(&[t2, t1]), Vector::basis(t2));
}

#[test]
fn bracket_with_zero_and_with_differential() {
    let d = euler_data(2);
    let s = &d.space;
    for ty in ["(1)", "(2)", "(3)"] {
        let z = PartitionedMap::zero(ty.parse().unwrap(), 0);
        assert!(bv_bracket(s, &d.b, &z).unwrap().is_zero());
    }
    let w = WeightOperator::new(&d).unwrap();
    assert!(w.map.is_zero());
    assert_eq!(w.weights(), Some(vec![Scalar::ZERO]));
}

#[test]
fn preconditions_on_operator() {
    let a = Algebra::nilpotent_generators(&[1, 2]);
    let even = table1(&a.space, 0, Vector::basis);
    assert!(matches!(
        BvData::new(a.space.clone(), structure(&a), even),
        Err(Error::Precondition(_))
    ));
    let s = space(&[0, 1, 2]);
    let up = table1(&s, 1, |i| {
        if i < 2 {
            Vector::basis(i + 1)
        } else {
            Vector::zero()
        }
    });
    let e = BvData::new(s.clone(), MegaMap::new(), up).unwrap_err();
    assert!(matches!(e, Error::Precondition(m) if m.contains("square-zero")));
    let once = table1(&s, 1, |i| {
        if i == 0 {
            Vector::basis(1)
        } else {
            Vector::zero()
        }
    });
    assert!(BvData::new(s.clone(), MegaMap::new(), once).is_ok());
    let wrong = PartitionedMap::zero(Partition::plain(2), 1);
    assert!(matches!(
        BvData::new(s, MegaMap::new(), wrong),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn literal_exterior_instance_has_even_operator() {
    let d = exterior_data(2);
    assert_eq!(d.b.degree(), -2);
    let r = check_weakly_homotopy_bv(&d, 3).unwrap();
    assert!(!row(&r, "B odd").zero);
    assert!(row(&r, "B^2").zero);
    let dict = dictionary_defects(&d).unwrap();
    assert!(!row(&dict, "8 BV bracket symmetric up to homotopy").zero);
    let h = descend(&d).unwrap();
    assert!(!h.classical_checks().verdict());
}

#[test]
fn euler_instances_are_weakly_homotopy_bv() {
    for k in [1, 2] {
        let d = euler_data(k);
        let r = check_weakly_homotopy_bv(&d, 3).unwrap();
        assert!(r.verdict(), "{r}");
        let dict = dictionary_defects(&d).unwrap();
        assert!(dict.verdict(), "{dict}");
        let h = descend(&d).unwrap();
        assert_eq!(h.dim(), d.space.dim());
        let c = h.classical_checks();
        assert!(c.verdict(), "{c}");
    }
    let h = descend(&euler_data(1)).unwrap();
    assert_eq!(
        h.dimensions().into_iter().collect::<Vec<_>>(),
        vec![(0, 1), (1, 1), (2, 1), (3, 1)]
    );
}

/// `u, w` even and `v` odd; `m_(1)(u) = v`, `B(v) = u`.
fn weighted() -> BvData {
    let s = GradedSpace::from_degrees(&[
        ("u".to_string(), 0),
        ("v".to_string(), 1),
        ("w".to_string(), 0),
    ])
    .unwrap();
    let m1 = table1(&s, 1, |i| {
        if i == 0 {
            Vector::basis(1)
        } else {
            Vector::zero()
        }
    });
    let b = table1(&s, -1, |i| {
        if i == 1 {
            Vector::basis(0)
        } else {
            Vector::zero()
        }
    });
    let m = MegaMap::new()
        .with(m1)
        .with(PartitionedMap::identity_selector());
    BvData::new(s, m, b).unwrap()
}

#[test]
fn nonzero_weights_and_cohomology() {
    let d = weighted();
    let w = WeightOperator::new(&d).unwrap();
    assert_eq!(w.weights(), Some(vec![Scalar::ZERO, Scalar::ONE]));
    assert_eq!(w.map.eval_basis(&[0]), Vector::basis(0));
    assert_eq!(w.map.eval_basis(&[1]), Vector::basis(1));
    assert!(w.map.eval_basis(&[2]).is_zero());
    let r = check_weakly_homotopy_bv(&d, 3).unwrap();
    assert!(r.verdict(), "{r}");
    let h = descend(&d).unwrap();
    assert_eq!(h.dim(), 1);
    assert_eq!(h.representatives, vec![Vector::basis(2)]);
    assert!(h.classical_checks().verdict());
    let dict = dictionary_defects(&d).unwrap();
    assert!(dict.verdict(), "{dict}");
}

#[test]
fn non_associative_product_fails_at_arity_three() {
    let s = space(&[0, 0]);
    let mult = vec![
        vec![Vector::basis(1), Vector::zero()],
        vec![Vector::basis(0), Vector::zero()],
    ];
    let a = Algebra::new(s.clone(), mult).unwrap();
    let b = PartitionedMap::zero(Partition::plain(1), -1);
    let d = BvData::new(s, structure(&a), b).unwrap();
    let r = check_weakly_homotopy_bv(&d, 3).unwrap();
    assert!(!r.verdict());
    assert!(!row(&r, "(3)").zero, "{r}");
    assert!(!plain_identity(&d, 3).is_zero());
}

fn random_data(r: &mut rand_chacha::ChaCha8Rng, s: &GradedSpace) -> BvData {
    let mut m = MegaMap::new();
    for (n, deg) in [(1, 1), (2, 0), (3, -1)] {
        m.insert(random_map(r, s, Partition::plain(n), deg, 0.6));
    }
    let b = random_map(r, s, Partition::plain(1), -1, 0.6);
    BvData::unchecked(s.clone(), m, b)
}

/// `[B, -]` is a derivation of composition, so bracketing the identity term
/// by term equals bracketing its value.
#[test]
fn bracketed_identity_is_bracket_of_identity() {
    let mut r = rng(17);
    for _ in 0..6 {
        let s = space(&[0, 1, 1, 2]);
        let d = random_data(&mut r, &s);
        for n in [2, 3] {
            let (_, got) = bracketed_identity(&d, n).unwrap();
            let want = bv_bracket(&s, &d.b, &plain_identity(&d, n)).unwrap();
            assert!(got.same_values(&want, s.dim()), "arity {n}");
        }
    }
}

#[test]
fn left_poisson_defect_is_third_phi() {
    let mut r = rng(9);
    let a = Algebra::nilpotent_generators(&[1, 1, 2]);
    for _ in 0..4 {
        let b = random_map(&mut r, &a.space, Partition::plain(1), -1, 0.7);
        let d = BvData::unchecked(a.space.clone(), structure(&a), b);
        let lp = left_poisson_defect(&d).unwrap();
        let p3 = d.phi(3).unwrap();
        for t in all_tuples(a.dim(), 3) {
            let sign = Scalar::sign(a.space.degree(t[0]) * d.b.degree());
            assert_eq!(lp.eval_basis(&t), p3.eval_basis(&t).scaled(sign));
        }
    }
}

/// Identity 9 holds for square-zero order-two operators; random odd
/// operators on the same algebra break it.
#[test]
fn leibniz_identity_needs_square_zero_second_order() {
    let mut r = rng(11);
    let a = Algebra::nilpotent_generators(&[1, 2]);
    let mut broken = 0;
    for _ in 0..12 {
        let b = random_map(&mut r, &a.space, Partition::plain(1), -1, 0.7);
        let d = BvData::unchecked(a.space.clone(), structure(&a), b);
        let zero = row(&dictionary_defects(&d).unwrap(), "9 Leibniz").zero;
        if d.b_squared().is_zero() && d.phi(3).unwrap().is_zero() {
            assert!(zero);
        }
        broken += usize::from(!zero);
    }
    assert!(broken > 0);
    for d in [euler_data(1), euler_data(2), weighted()] {
        assert!(row(&dictionary_defects(&d).unwrap(), "9 Leibniz").zero);
    }
}

fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::ONE;
    }
    let mut total = Scalar::ZERO;
    for j in 0..n {
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| *x)
                    .collect()
            })
            .collect();
        total += Scalar::sign(j as i64) * m[0][j] * det(&minor);
    }
    total
}

fn ints(rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_rows(
        &rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect::<Vec<_>>(),
    )
}

#[test]
fn diagonalization_outcomes() {
    let diag = diagonalize(&ints(&[vec![2, 0, 0], vec![0, -1, 0], vec![0, 0, 2]]));
    match diag {
        Diagonalization::Diagonal(e) => {
            assert_eq!(
                e.iter().map(|(l, v)| (*l, v.len())).collect::<Vec<_>>(),
                vec![(Scalar::from_int(-1), 1), (Scalar::from_int(2), 2)]
            );
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        diagonalize(&ints(&[vec![3, 1], vec![0, 3]])),
        Diagonalization::Defective(Scalar::from_int(3))
    );
    assert!(matches!(
        diagonalize(&ints(&[vec![0, -1], vec![1, 0]])),
        Diagonalization::Unverified(_)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn char_poly_is_determinant(entries in prop::collection::vec(-3i64..=3, 9), ts in prop::collection::vec(-4i64..=4, 3)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let p = char_poly(&ints(&rows));
        prop_assert_eq!(p.len(), 4);
        for t in ts {
            let t = Scalar::from_int(t);
            let shifted: Vec<Vec<Scalar>> = (0..3).map(|i| (0..3).map(|j| {
                let a = Scalar::from_int(rows[i][j]);
                if i == j { t - a } else { -a }
            }).collect()).collect();
            let mut value = Scalar::ZERO;
            for c in p.iter().rev() {
                value = value * t + *c;
            }
            prop_assert_eq!(value, det(&shifted));
        }
    }

    #[test]
    fn certified_eigenvectors_are_eigenvectors(entries in prop::collection::vec(-2i64..=2, 9)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let a = ints(&rows);
        if let Diagonalization::Diagonal(e) = diagonalize(&a) {
            prop_assert_eq!(e.iter().map(|(_, v)| v.len()).sum::<usize>(), 3);
            for (l, vs) in &e {
                for v in vs {
                    prop_assert_eq!(a.apply(v), v.scaled(*l));
                }
            }
        }
    }

    #[test]
    fn bracket_is_phi_two_up_to_sign(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = Algebra::nilpotent_generators(&[1, 2]);
        let b = random_map(&mut r, &a.space, Partition::plain(1), -1, 0.7);
        let d = BvData::unchecked(a.space.clone(), structure(&a), b);
        let br = d.bracket_table().unwrap();
        for t in all_tuples(a.dim(), 2) {
            let want = phi2_oracle(&a, &d.b, t[0], t[1]).scaled(Scalar::sign(a.space.degree(t[0])));
            prop_assert_eq!(br.eval_basis(&t), want);
        }
    }
}
