mod common;

use common::*;
use multibrace::braces::{compose, compose_plain, expand_nested, g_bracket, BraceExpression};
use multibrace::maps::{all_tuples, PartitionedMap};
use multibrace::partitions::{count_terms, enumerate_splittings};
use multibrace::sign::exchange_sign;
use multibrace::{Partition, Scalar, Vector};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

/// Direct single-insertion formula for plain maps:
/// `sum_j (-1)^{|y| (|a_1|+...+|a_{j-1}|) + d(y)(-1)(j-1)} x(.., y(a_j..), ..)`.
fn oracle_single(
    s: &multibrace::GradedSpace,
    x: &PartitionedMap,
    y: &PartitionedMap,
    t: &[usize],
) -> Vector {
    let q = y.arity();
    let mut out = Vector::zero();
    for j in 0..=(t.len() - q) {
        let before: i64 = t[..j].iter().map(|&i| s.degree(i)).sum();
        let e = y.degree() * before - y.ty().d() * j as i64;
        let inner = y.eval_basis(&t[j..j + q]);
        for (b, c) in inner.iter() {
            let mut args: Vec<usize> = t[..j].to_vec();
            args.push(b);
            args.extend_from_slice(&t[j + q..]);
            x.eval_basis_into(&args, *c * Scalar::sign(e), &mut out);
        }
    }
    out
}

#[test]
fn single_insertion_matches_direct_formula() {
    let mut r = rng(7);
    for _ in 0..40 {
        let s = random_space(&mut r, 3);
        let x = random_plain(&mut r, &s, 3);
        let y = random_plain(&mut r, &s, 3);
        let c = compose_plain(&s, &x, &[&y]).unwrap();
        for t in all_tuples(s.dim(), c.arity()) {
            assert_eq!(c.eval_basis(&t), oracle_single(&s, &x, &y, &t));
        }
    }
}

#[test]
fn bilinear_into_four_linear_example() {
    // x bilinear even, z 4-linear odd; degrees of a1 vary
    let s = space(&[0, 1]);
    let mut r = rng(3);
    let x = random_map(&mut r, &s, Partition::plain(2), 0, 1.0);
    let z = random_map(&mut r, &s, Partition::plain(4), 1, 1.0);
    let c = compose(&s, &x, &[&z], &Partition::plain(5));
    for t in all_tuples(2, 5) {
        let mut expect = Vector::zero();
        for (b, cb) in z.eval_basis(&t[..4]).iter() {
            x.eval_basis_into(&[b, t[4]], *cb, &mut expect);
        }
        let sgn = -Scalar::sign(s.degree(t[0]) * z.degree());
        for (b, cb) in z.eval_basis(&t[1..]).iter() {
            x.eval_basis_into(&[t[0], b], *cb * sgn, &mut expect);
        }
        assert_eq!(c.eval_basis(&t), expect);
    }
}

#[test]
fn two_inner_example_sign() {
    // {x}{y,z} with x bilinear: single placement x(y(a1..), z(..)), sign -(-1)^{|a1||z|} when y is linear
    let s = space(&[0, 1]);
    let mut r = rng(11);
    let x = random_map(&mut r, &s, Partition::plain(2), 0, 1.0);
    let y = random_map(&mut r, &s, Partition::plain(1), 0, 1.0);
    let z = random_map(&mut r, &s, Partition::plain(4), 1, 1.0);
    let c = compose(&s, &x, &[&y, &z], &Partition::plain(5));
    for t in all_tuples(2, 5) {
        let mut expect = Vector::zero();
        let sgn = -Scalar::sign(s.degree(t[0]) * z.degree());
        for (b1, c1) in y.eval_basis(&t[..1]).iter() {
            for (b2, c2) in z.eval_basis(&t[1..]).iter() {
                x.eval_basis_into(&[b1, b2], *c1 * *c2 * sgn, &mut expect);
            }
        }
        assert_eq!(c.eval_basis(&t), expect);
    }
}

#[test]
fn associativity_as_brace_square() {
    // dual numbers: e*e = e, e*x = x*e = x, x*x = 0
    let s = space(&[0, 0]);
    let m = PartitionedMap::table(
        &s,
        Partition::plain(2),
        0,
        [
            (vec![0, 0], Vector::basis(0)),
            (vec![0, 1], Vector::basis(1)),
            (vec![1, 0], Vector::basis(1)),
        ],
    )
    .unwrap();
    assert!(compose_plain(&s, &m, &[&m]).unwrap().is_zero());
}

#[test]
fn selector_gives_commutator() {
    let s = space(&[0, 1, 1]);
    let mut r = rng(5);
    let m = random_map(&mut r, &s, Partition::plain(2), 0, 1.0);
    let sel = PartitionedMap::identity_selector();
    let c = compose(&s, &m, &[&sel], &p("(1|1)"));
    for t in all_tuples(3, 2) {
        let eps = Scalar::sign(s.degree(t[0]) * s.degree(t[1]));
        let expect = m
            .eval_basis(&t)
            .difference(&m.eval_basis(&[t[1], t[0]]).scaled(eps));
        assert_eq!(c.eval_basis(&t), expect);
    }
}

#[test]
fn counts_agree_with_enumeration() {
    // every slot tuple with total <= 7 and every valid inner tuple
    let mut checked = 0;
    for slots in 1..=3usize {
        for n in Partition::all_with(slots, 7) {
            if n.arity() > 7 {
                continue;
            }
            for i in Partition::all_with(slots, 7) {
                if i.slots().iter().zip(n.slots()).any(|(a, b)| a > b) {
                    continue;
                }
                let outer = n.arity() - i.arity() + 1;
                let terms = multibrace::braces::enumerate_terms(
                    &Partition::plain(outer),
                    std::slice::from_ref(&i),
                    &[false],
                    &n,
                );
                assert_eq!(
                    terms.len() as u128,
                    count_terms(n.slots(), i.slots()),
                    "n={n} i={i}"
                );
                let splits = enumerate_splittings(n.slots(), i.slots());
                let expect: usize = n
                    .slots()
                    .iter()
                    .zip(i.slots())
                    .map(|(a, b)| a - b + 1)
                    .product();
                assert_eq!(splits.len(), expect);
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn right_pre_lie() {
    let mut r = rng(101);
    for _ in 0..120 {
        let s = random_space(&mut r, 3);
        let a = random_plain(&mut r, &s, 3);
        let b = random_plain(&mut r, &s, 2);
        let c = random_plain(&mut r, &s, 2);
        let o = |x: &PartitionedMap, y: &PartitionedMap| compose_plain(&s, x, &[y]).unwrap();
        let lhs = o(&o(&a, &b), &c)
            .add(&o(&a, &o(&b, &c)).scaled(Scalar::MINUS_ONE), s.dim())
            .unwrap();
        let eps = exchange_sign(&b.bidegree(), &c.bidegree());
        let rhs = o(&o(&a, &c), &b)
            .add(&o(&a, &o(&c, &b)).scaled(Scalar::MINUS_ONE), s.dim())
            .unwrap()
            .scaled(eps);
        assert!(lhs.same_values(&rhs, s.dim()));
    }
}

#[test]
fn nested_expansion_identity() {
    // {x}{y}{z} = {x}{{y}{z}} + {x}{y,z} + eps(y,z) {x}{z,y}
    let mut r = rng(17);
    for _ in 0..30 {
        let s = random_space(&mut r, 2);
        let x = random_plain(&mut r, &s, 3);
        let y = random_plain(&mut r, &s, 2);
        let z = random_plain(&mut r, &s, 2);
        if x.arity() < 2 {
            continue;
        }
        let nested = expand_nested(
            &s,
            &BraceExpression {
                head: x.clone(),
                layers: vec![vec![y.clone()], vec![z.clone()]],
            },
        )
        .unwrap();
        let yz = compose_plain(&s, &y, &[&z]).unwrap();
        let eps = exchange_sign(&y.bidegree(), &z.bidegree());
        let rhs = compose_plain(&s, &x, &[&yz])
            .unwrap()
            .add(&compose_plain(&s, &x, &[&y, &z]).unwrap(), s.dim())
            .unwrap()
            .add(
                &compose_plain(&s, &x, &[&z, &y]).unwrap().scaled(eps),
                s.dim(),
            )
            .unwrap();
        assert!(nested.same_values(&rhs, s.dim()));
    }
}

#[test]
fn vectors_as_zero_ary_maps_antisymmetrize() {
    // {m}{a1}{a2} = m(a1,a2) - (-1)^{|a1||a2|} m(a2,a1) up to the placement sign
    let s = space(&[0, 1]);
    let mut r = rng(23);
    let m = random_map(&mut r, &s, Partition::plain(2), 0, 1.0);
    for i in 0..2 {
        for j in 0..2 {
            let a = PartitionedMap::from_vector(&s, &Vector::basis(i)).unwrap();
            let b = PartitionedMap::from_vector(&s, &Vector::basis(j)).unwrap();
            let nested = expand_nested(
                &s,
                &BraceExpression {
                    head: m.clone(),
                    layers: vec![vec![a.clone()], vec![b.clone()]],
                },
            )
            .unwrap();
            let both = compose_plain(&s, &m, &[&a, &b]).unwrap();
            let swapped = compose_plain(&s, &m, &[&b, &a]).unwrap();
            let eps = exchange_sign(&a.bidegree(), &b.bidegree());
            let rhs = both.add(&swapped.scaled(eps), s.dim()).unwrap();
            assert!(nested.same_values(&rhs, s.dim()));
            assert_eq!(nested.arity(), 0);
        }
    }
}

#[test]
fn bracket_antisymmetry_and_jacobi() {
    let mut r = rng(202);
    for _ in 0..110 {
        let s = random_space(&mut r, 3);
        let x = random_plain(&mut r, &s, 2);
        let y = random_plain(&mut r, &s, 2);
        let z = random_plain(&mut r, &s, 2);
        let br = |a: &PartitionedMap, b: &PartitionedMap| g_bracket(&s, a, b).unwrap();
        let exy = exchange_sign(&x.bidegree(), &y.bidegree());
        assert!(br(&x, &y).same_values(&br(&y, &x).scaled(-exy), s.dim()));
        let lhs = br(&x, &br(&y, &z));
        let rhs = br(&br(&x, &y), &z)
            .add(&br(&y, &br(&x, &z)).scaled(exy), s.dim())
            .unwrap();
        assert!(lhs.same_values(&rhs, s.dim()));
    }
}

#[test]
fn gradings_preserved() {
    let mut r = rng(31);
    for _ in 0..30 {
        let s = random_space(&mut r, 3);
        let x = random_plain(&mut r, &s, 3);
        let y = random_plain(&mut r, &s, 3);
        let c = compose_plain(&s, &x, &[&y]).unwrap();
        assert_eq!(c.degree(), x.degree() + y.degree());
        assert_eq!(c.bidegree().d, x.bidegree().d + y.bidegree().d);
        assert!(c.validate(&s).is_ok());
    }
}

#[test]
fn linear_bracket_is_super_commutator() {
    let s = space(&[0, 1, 1]);
    let mut r = rng(41);
    let x = random_map(&mut r, &s, Partition::plain(1), 1, 1.0);
    let y = random_map(&mut r, &s, Partition::plain(1), 1, 1.0);
    let b = g_bracket(&s, &x, &y).unwrap();
    for i in 0..3 {
        let xy = y.eval_flat(&[&Vector::basis(i)]);
        let yx = x.eval_flat(&[&Vector::basis(i)]);
        let expect = x.eval_flat(&[&xy]).sum(&y.eval_flat(&[&yx]));
        assert_eq!(b.eval_basis(&[i]), expect);
    }
}
