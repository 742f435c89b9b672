//! Higher order differential operators, BV brackets, and descent of a
//! weakly homotopy BV structure to `m_(1)`-cohomology.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::braces::{g_bracket, BraceSum, Composite, SignMode};
use crate::homotopy::{format_tuple, is_homotopy_g, mega_sum, StructureReport, DEFAULT_MAX_INNER};
use crate::linalg::{kernel_image, Matrix, Quotient};
use crate::maps::{all_tuples, MegaMap, PartitionedMap};
use crate::partitions::Partition;
use crate::scalar::Scalar;
use crate::sign::exchange_sign;
use crate::space::{BasisElement, GradedSpace, Vector};
use crate::Error;

/// Table of the map `f` over every basis tuple of `ty`.
fn tabulate<F>(space: &GradedSpace, ty: Partition, degree: i64, aux: i64, f: F) -> PartitionedMap
where
    F: Fn(&[usize]) -> Vector + Sync,
{
    let table: HashMap<Vec<usize>, Vector> = all_tuples(space.dim(), ty.arity())
        .into_par_iter()
        .filter_map(|t| {
            let v = f(&t);
            (!v.is_zero()).then_some((t, v))
        })
        .collect();
    PartitionedMap::from_table_unchecked(ty, degree, aux, table)
}

fn first_witness(space: &GradedSpace, m: &PartitionedMap) -> Option<String> {
    let mut e = m.entries();
    e.sort_by(|a, b| a.0.cmp(b.0));
    e.first()
        .map(|(t, v)| format!("{} -> {}", format_tuple(space, m.ty(), t), space.render(v)))
}

fn require_type(m: &PartitionedMap, ty: &str, what: &str) -> Result<(), Error> {
    if m.ty().to_string() != ty {
        return Err(Error::Precondition(format!(
            "{what} must have type {ty}, not {}",
            m.ty()
        )));
    }
    Ok(())
}

/// `Phi_B^r` with respect to the bilinear map `m2`.
///
/// `Phi^1 = B`, and `Phi^{r+1}(a.., b, c)` is `Phi^r(a.., bc) - Phi^r(a.., b) c
/// - (-1)^{|b|(|B| + sum |a|)} b Phi^r(a.., c)`.
pub fn phi(
    space: &GradedSpace,
    b: &PartitionedMap,
    m2: &PartitionedMap,
    r: usize,
) -> Result<PartitionedMap, Error> {
    if r == 0 {
        return Err(Error::Precondition("Phi^r needs r >= 1".into()));
    }
    require_type(b, "(1)", "B")?;
    require_type(m2, "(2)", "the product")?;
    let mut cur = b.to_table(space.dim());
    for k in 1..r {
        let prev = &cur;
        let next = tabulate(
            space,
            Partition::plain(k + 1),
            b.degree() + k as i64 * m2.degree(),
            b.aux(),
            |t| {
                let (a, rest) = t.split_at(k - 1);
                let (x, y) = (rest[0], rest[1]);
                let mut out = Vector::zero();
                let mut args = a.to_vec();
                args.push(0);
                for (e, c) in m2.eval_basis(&[x, y]).iter() {
                    args[k - 1] = e;
                    prev.eval_basis_into(&args, *c, &mut out);
                }
                args[k - 1] = x;
                out.add_scaled(
                    &m2.eval_flat(&[&prev.eval_basis(&args), &Vector::basis(y)]),
                    Scalar::MINUS_ONE,
                );
                args[k - 1] = y;
                let sa: i64 = a.iter().map(|&i| space.degree(i)).sum();
                let sign = -Scalar::sign(space.degree(x) * (b.degree() + sa));
                out.add_scaled(
                    &m2.eval_flat(&[&Vector::basis(x), &prev.eval_basis(&args)]),
                    sign,
                );
                out
            },
        );
        cur = next;
    }
    Ok(cur)
}

/// Smallest `r <= max_r` with `Phi^{r+1}` identically zero.
pub fn diff_order(
    space: &GradedSpace,
    b: &PartitionedMap,
    m2: &PartitionedMap,
    max_r: usize,
) -> Result<Option<usize>, Error> {
    for r in 0..=max_r {
        if phi(space, b, m2, r + 1)?.is_zero() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// `[B, m] = {B}{m} - (-1)^{|B||m|} {m}{B}` at the type of `m`.
pub fn bv_bracket(
    space: &GradedSpace,
    b: &PartitionedMap,
    m: &PartitionedMap,
) -> Result<PartitionedMap, Error> {
    require_type(b, "(1)", "B")?;
    let ty = m.ty().clone();
    let eps = exchange_sign(&b.bidegree(), &m.bidegree());
    let mut sum = BraceSum::new(ty.clone());
    sum.push(Composite::new(
        Scalar::ONE,
        b,
        vec![m],
        &ty,
        SignMode::Plain,
    ));
    sum.push(Composite::new(-eps, m, vec![b], &ty, SignMode::Plain));
    let mut out = sum.to_map(space);
    if sum.num_terms() == 0 {
        out = PartitionedMap::zero_with_aux(ty, b.degree() + m.degree(), b.aux() + m.aux());
    }
    Ok(out)
}

/// Degree a component of type `ty` needs for its suspension to be odd.
fn natural_degree(ty: &Partition) -> i64 {
    3 - ty.arity() as i64 - ty.slots().len() as i64
}

/// Same values, read as a plain map of the same arity.
fn plain_view(space: &GradedSpace, m: &PartitionedMap) -> PartitionedMap {
    let table = m.to_table(space.dim());
    let entries: HashMap<Vec<usize>, Vector> = table
        .entries()
        .into_iter()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    PartitionedMap::from_table_unchecked(Partition::plain(m.arity()), m.degree(), m.aux(), entries)
}

/// A homotopy G candidate together with a BV operator.
#[derive(Clone, Debug)]
pub struct BvData {
    pub space: GradedSpace,
    pub m: MegaMap,
    pub b: PartitionedMap,
}

impl BvData {
    /// Checks that `b` is linear, odd and square-zero.
    pub fn new(space: GradedSpace, m: MegaMap, b: PartitionedMap) -> Result<Self, Error> {
        let d = BvData::unchecked(space, m, b);
        require_type(&d.b, "(1)", "B")?;
        if d.b.degree().rem_euclid(2) != 1 {
            return Err(Error::Precondition(format!(
                "B has even degree {}",
                d.b.degree()
            )));
        }
        if let Some(w) = first_witness(&d.space, &d.b_squared()) {
            return Err(Error::Precondition(format!("B is not square-zero: B^2{w}")));
        }
        Ok(d)
    }

    /// No checks; [`check_weakly_homotopy_bv`] reports what fails.
    pub fn unchecked(space: GradedSpace, m: MegaMap, b: PartitionedMap) -> Self {
        BvData { space, m, b }
    }

    /// The component of type `ty`, or the zero map of the natural degree.
    pub fn component(&self, ty: &str) -> PartitionedMap {
        let p: Partition = ty.parse().expect("valid partition literal");
        self.m
            .get(&p)
            .cloned()
            .unwrap_or_else(|| PartitionedMap::zero(p.clone(), natural_degree(&p)))
    }

    pub fn b_squared(&self) -> PartitionedMap {
        let b = &self.b;
        tabulate(
            &self.space,
            Partition::plain(1),
            2 * b.degree(),
            2 * b.aux(),
            |t| b.eval_flat(&[&b.eval_basis(t)]),
        )
    }

    /// `Phi_B^r` with respect to `m_(2)`.
    pub fn phi(&self, r: usize) -> Result<PartitionedMap, Error> {
        phi(&self.space, &self.b, &self.component("(2)"), r)
    }

    /// `[a, b]_B = (-1)^{|a||B|} Phi_B^2(a, b)` on basis elements; for odd
    /// `B` the factor is `(-1)^{|a|}`.
    pub fn bracket_table(&self) -> Result<PartitionedMap, Error> {
        let p2 = self.phi(2)?;
        let s = &self.space;
        let db = self.b.degree();
        Ok(tabulate(
            s,
            Partition::plain(2),
            p2.degree(),
            p2.aux(),
            |t| p2.eval_basis(t).scaled(Scalar::sign(s.degree(t[0]) * db)),
        ))
    }
}

/// Monomials of [`Algebra::nilpotent_generators`] as generator lists.
fn monomials(a: &Algebra) -> Vec<Vec<usize>> {
    (0..a.dim())
        .map(|m| {
            a.space
                .name(m)
                .split('t')
                .skip(1)
                .map(|x| x.parse::<usize>().expect("generator index"))
                .collect()
        })
        .collect()
}

/// Left derivative by generator `g` (numbered from 1).
fn derivative(mons: &[Vec<usize>], degrees: &[i64], g: usize, v: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (m, c) in v.iter() {
        if let Some(pos) = mons[m].iter().position(|&x| x == g) {
            let passed: i64 = mons[m][..pos].iter().map(|&x| degrees[x - 1]).sum();
            let rest: Vec<usize> = mons[m].iter().copied().filter(|&x| x != g).collect();
            let idx = mons
                .iter()
                .position(|n| *n == rest)
                .expect("monomial present");
            out.add_term(idx, *c * Scalar::sign(passed * degrees[g - 1]));
        }
    }
    out
}

/// The exterior algebra on `k` odd generators with its product, the
/// identity selector, and `B = sum over i < j of d_j d_i`, which sends
/// `t_i t_j` to 1. This `B` has degree -2, so the data is unchecked.
pub fn exterior_data(k: usize) -> BvData {
    let a = Algebra::exterior(k);
    let degrees = vec![1; k];
    let mons = monomials(&a);
    let entries = (0..a.dim()).map(|m| {
        let mut v = Vector::zero();
        for i in 1..=k {
            for j in i + 1..=k {
                let di = derivative(&mons, &degrees, i, &Vector::basis(m));
                v.add_scaled(&derivative(&mons, &degrees, j, &di), Scalar::ONE);
            }
        }
        (vec![m], v)
    });
    let b = PartitionedMap::table(&a.space, Partition::plain(1), -2, entries)
        .expect("homogeneous operator");
    let m = MegaMap::new()
        .with(a.product())
        .with(PartitionedMap::identity_selector());
    BvData::unchecked(a.space, m, b)
}

/// Odd generators `t1..tk` and an even generator `t(k+1)` of degree 2, all
/// squaring to zero, with `B = x d_x (d_1 + ... + d_k)` for `x = t(k+1)`:
/// an odd, square-zero operator of order 2.
pub fn euler_data(k: usize) -> BvData {
    let mut degrees = vec![1; k];
    degrees.push(2);
    let a = Algebra::nilpotent_generators(&degrees);
    let mons = monomials(&a);
    let entries = (0..a.dim()).map(|m| {
        let mut v = Vector::zero();
        if mons[m].contains(&(k + 1)) {
            for i in 1..=k {
                v.add_scaled(
                    &derivative(&mons, &degrees, i, &Vector::basis(m)),
                    Scalar::ONE,
                );
            }
        }
        (vec![m], v)
    });
    let b = PartitionedMap::table(&a.space, Partition::plain(1), -1, entries)
        .expect("homogeneous operator");
    let m = MegaMap::new()
        .with(a.product())
        .with(PartitionedMap::identity_selector());
    BvData::new(a.space, m, b).expect("odd square-zero operator")
}

/// Outcome of the exact diagonalization of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagonalization {
    /// Rational eigenvalues with eigenspace bases spanning the space.
    Diagonal(Vec<(Scalar, Vec<Vector>)>),
    /// The characteristic polynomial splits but an eigenspace is short.
    Defective(Scalar),
    /// Some eigenvalue is irrational, or the roots could not be certified.
    Unverified(String),
}

/// `L = [B, m_(1)]` as a matrix with its diagonalization.
#[derive(Clone, Debug)]
pub struct WeightOperator {
    pub map: PartitionedMap,
    pub matrix: Matrix,
    pub diagonalization: Diagonalization,
}

impl WeightOperator {
    pub fn new(data: &BvData) -> Result<Self, Error> {
        let map = bv_bracket(&data.space, &data.b, &data.component("(1)"))?;
        let n = data.space.dim();
        let cols: Vec<Vector> = (0..n).map(|i| map.eval_basis(&[i])).collect();
        let matrix = Matrix::from_columns(&cols, n);
        let diagonalization = diagonalize(&matrix);
        Ok(WeightOperator {
            map,
            matrix,
            diagonalization,
        })
    }

    /// Weights in increasing order, if certified.
    pub fn weights(&self) -> Option<Vec<Scalar>> {
        match &self.diagonalization {
            Diagonalization::Diagonal(e) => Some(e.iter().map(|(l, _)| *l).collect()),
            _ => None,
        }
    }
}

/// Characteristic polynomial `det(xI - A)`, lowest coefficient first, by
/// Faddeev-LeVerrier.
pub fn char_poly(a: &Matrix) -> Vec<Scalar> {
    let n = a.rows;
    let mut c = vec![Scalar::ZERO; n + 1];
    c[n] = Scalar::ONE;
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&mk);
        for i in 0..n {
            next[(i, i)] += c[n - k + 1];
        }
        let am = a.mul(&next);
        let tr: Scalar = (0..n).map(|i| am[(i, i)]).sum();
        c[n - k] = -tr / Scalar::from_int(k as i64);
        mk = next;
    }
    c
}

fn eval_poly(p: &[Scalar], x: Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::ZERO, |acc, &c| acc * x + c)
}

/// `p / (x - r)` for a root `r`.
fn deflate(p: &[Scalar], r: Scalar) -> Vec<Scalar> {
    let n = p.len() - 1;
    let mut q = vec![Scalar::ZERO; n];
    let mut carry = Scalar::ZERO;
    for i in (0..n).rev() {
        carry = p[i + 1] + carry * r;
        q[i] = carry;
    }
    q
}

fn divisors(n: i128) -> Option<Vec<i128>> {
    let n = n.abs();
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut d = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            d.push(i);
            d.push(n / i);
        }
        i += 1;
    }
    Some(d)
}

/// Rational roots with multiplicity, or `None` when the candidate search
/// would be too large.
pub fn rational_roots(p: &[Scalar]) -> Option<Vec<(Scalar, usize)>> {
    let mut p: Vec<Scalar> = p.to_vec();
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut roots: BTreeMap<Scalar, usize> = BTreeMap::new();
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        *roots.entry(Scalar::ZERO).or_default() += 1;
    }
    if p.len() > 1 {
        let lcm = p.iter().fold(1i128, |l, c| num_integer::lcm(l, c.denom()));
        let ints: Vec<i128> = p.iter().map(|c| c.numer() * (lcm / c.denom())).collect();
        let lead = divisors(*ints.last().unwrap())?;
        let constant = divisors(ints[0])?;
        let mut candidates: Vec<Scalar> = Vec::new();
        for &num in &constant {
            for &den in &lead {
                candidates.push(Scalar::new(num, den));
                candidates.push(Scalar::new(-num, den));
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            while p.len() > 1 && eval_poly(&p, r).is_zero() {
                p = deflate(&p, r);
                *roots.entry(r).or_default() += 1;
            }
        }
    }
    Some(roots.into_iter().collect())
}

pub fn diagonalize(a: &Matrix) -> Diagonalization {
    let n = a.rows;
    let Some(roots) = rational_roots(&char_poly(a)) else {
        return Diagonalization::Unverified("characteristic polynomial too large to factor".into());
    };
    if roots.iter().map(|r| r.1).sum::<usize>() < n {
        return Diagonalization::Unverified(
            "characteristic polynomial has irrational roots".into(),
        );
    }
    let mut spaces = Vec::new();
    for (l, mult) in roots {
        let cols: Vec<Vector> = (0..n)
            .map(|j| {
                let mut v = a.column(j);
                v.add_term(j, -l);
                v
            })
            .collect();
        let (ker, _) = kernel_image(&cols, n);
        if ker.len() < mult {
            return Diagonalization::Defective(l);
        }
        spaces.push((l, ker));
    }
    Diagonalization::Diagonal(spaces)
}

fn commutator(
    space: &GradedSpace,
    x: &PartitionedMap,
    y: &PartitionedMap,
) -> Result<PartitionedMap, Error> {
    g_bracket(space, x, y)
}

/// Homotopy G identities up to `bound`, then the conditions on `B` and `L`.
pub fn check_weakly_homotopy_bv(data: &BvData, bound: usize) -> Result<StructureReport, Error> {
    let s = &data.space;
    let mut r = StructureReport::new("weakly homotopy BV");
    r.merge(is_homotopy_g(s, &data.m, bound));
    require_type(&data.b, "(1)", "B")?;
    let odd = data.b.degree().rem_euclid(2) == 1;
    r.push_check("B odd", odd, Some(format!("degree {}", data.b.degree())));
    r.push_defect(s, "B^2", 1, &data.b_squared(), 0);
    r.push_defect(s, "Phi_B^3", 1, &data.phi(3)?, 0);
    let l = WeightOperator::new(data)?;
    let even = l.map.is_zero() || l.map.degree().rem_euclid(2) == 0;
    r.push_check("L even", even, Some(format!("degree {}", l.map.degree())));
    let moves = (0..s.dim()).find_map(|i| {
        let v = l.map.eval_basis(&[i]);
        let bad = v.support().any(|j| {
            s.degree(j) != s.degree(i) || s.aux(j) != s.aux(i) || s.weight(j) != s.weight(i)
        });
        bad.then(|| format!("L({}) = {}", s.name(i), s.render(&v)))
    });
    r.push_check("L preserves gradings", moves.is_none(), moves);
    r.push_defect(s, "[L,B]", 2, &commutator(s, &l.map, &data.b)?, 0);
    r.push_defect(
        s,
        "[L,m_(1)]",
        2,
        &commutator(s, &l.map, &data.component("(1)"))?,
        0,
    );
    match &l.diagonalization {
        Diagonalization::Diagonal(_) => r.push_check("L diagonalizable", true, None),
        Diagonalization::Defective(w) => r.push_check(
            "L diagonalizable",
            false,
            Some(format!("eigenvalue {w} has a short eigenspace")),
        ),
        Diagonalization::Unverified(why) => r
            .warnings
            .push(format!("L diagonalizability unverified: {why}")),
    }
    Ok(r)
}

/// Products and brackets induced on `H = Ker m_(1) / Im m_(1)`, computed on
/// the weight-zero part.
#[derive(Clone, Debug)]
pub struct Cohomology {
    /// Basis of classes; names are the rendered representatives.
    pub space: GradedSpace,
    pub representatives: Vec<Vector>,
    pub product: PartitionedMap,
    /// Antisymmetrization of `m_(1|1)`.
    pub g_bracket: PartitionedMap,
    /// `[a, b]_B = (-1)^{|a||B|} Phi_B^2(a, b)`.
    pub bv_bracket: PartitionedMap,
    pub b: PartitionedMap,
}

/// Degree-wise quotients with homogeneous representatives.
struct Classes {
    blocks: Vec<(i64, Quotient)>,
    m1_image: Vec<Vector>,
}

impl Classes {
    /// Classes of the weight-zero subcomplex `Ker L`; when `L` is
    /// diagonalizable the other weights are acyclic.
    fn new(space: &GradedSpace, m1: &PartitionedMap, l: &PartitionedMap) -> Result<Self, Error> {
        let n = space.dim();
        let mut degrees: Vec<i64> = (0..n).map(|i| space.degree(i)).collect();
        degrees.sort();
        degrees.dedup();
        let weight_zero: Vec<(i64, Vec<Vector>)> = degrees
            .iter()
            .map(|&d| {
                let idx: Vec<usize> = (0..n).filter(|&i| space.degree(i) == d).collect();
                let local: Vec<Vector> = idx.iter().map(|&i| l.eval_basis(&[i])).collect();
                let (ker, _) = kernel_image(&local, n);
                (
                    d,
                    ker.iter()
                        .map(|k| Vector::from_terms(k.iter().map(|(j, c)| (idx[j], *c))))
                        .collect(),
                )
            })
            .collect();
        let all: Vec<Vector> = weight_zero
            .iter()
            .flat_map(|(_, w)| w.iter().map(|v| m1.eval_flat(&[v])))
            .collect();
        let (_, all_image) = kernel_image(&all, n);
        let mut blocks = Vec::new();
        for (d, w) in &weight_zero {
            let local: Vec<Vector> = w.iter().map(|v| m1.eval_flat(&[v])).collect();
            let (ker, _) = kernel_image(&local, n);
            let ker: Vec<Vector> = ker
                .iter()
                .map(|k| {
                    let mut v = Vector::zero();
                    for (j, c) in k.iter() {
                        v.add_scaled(&w[j], *c);
                    }
                    v
                })
                .collect();
            let im: Vec<Vector> = all_image
                .iter()
                .filter(|v| v.support().all(|j| space.degree(j) == *d))
                .cloned()
                .collect();
            let q = Quotient::new(&im, &ker, n).map_err(|_| {
                Error::Precondition(format!("m_(1) does not square to zero in degree {}", d - 1))
            })?;
            blocks.push((*d, q));
        }
        Ok(Classes {
            blocks,
            m1_image: all_image,
        })
    }

    /// Class of `v` in the concatenated class coordinates.
    fn project(&self, space: &GradedSpace, v: &Vector) -> Option<Vector> {
        let mut out = Vec::new();
        for (d, q) in &self.blocks {
            let part = Vector::from_terms(
                v.iter()
                    .filter(|(j, _)| space.degree(*j) == *d)
                    .map(|(j, c)| (j, *c)),
            );
            out.extend(q.project(&part).ok()?);
        }
        Some(Vector::from_dense(&out))
    }
}

/// Induces `f` on classes; fails with a witness when the value on
/// representatives is not closed or changes along `Im m_(1)`.
fn induce(
    space: &GradedSpace,
    classes: &Classes,
    reps: &[Vector],
    f: &PartitionedMap,
    name: &str,
) -> Result<PartitionedMap, Error> {
    let n = f.arity();
    let k = reps.len();
    let mut table = HashMap::new();
    for t in all_tuples(k, n) {
        let args: Vec<&Vector> = t.iter().map(|&i| &reps[i]).collect();
        let v = f.eval_flat(&args);
        let c = classes.project(space, &v).ok_or_else(|| {
            Error::Precondition(format!(
                "{name} of cocycles {} is not closed",
                t.iter()
                    .map(|&i| space.render(&reps[i]))
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })?;
        if !c.is_zero() {
            table.insert(t.clone(), c);
        }
        for pos in 0..n {
            for x in &classes.m1_image {
                let mut args: Vec<&Vector> = t.iter().map(|&i| &reps[i]).collect();
                args[pos] = x;
                let w = f.eval_flat(&args);
                if classes.project(space, &w).is_none_or(|c| !c.is_zero()) {
                    return Err(Error::Precondition(format!(
                        "{name} is not well defined on classes: coboundary {} in argument {}",
                        space.render(x),
                        pos + 1
                    )));
                }
            }
        }
    }
    Ok(PartitionedMap::from_table_unchecked(
        Partition::plain(n),
        f.degree(),
        f.aux(),
        table,
    ))
}

pub fn descend(data: &BvData) -> Result<Cohomology, Error> {
    let s = &data.space;
    let l = bv_bracket(s, &data.b, &data.component("(1)"))?;
    let classes = Classes::new(s, &data.component("(1)"), &l)?;
    let mut reps = Vec::new();
    let mut basis = Vec::new();
    for (d, q) in &classes.blocks {
        for r in q.representatives() {
            basis.push(BasisElement {
                name: format!("[{}]", s.render(&r)),
                degree: *d,
                aux: 0,
                weight: 0,
            });
            reps.push(r);
        }
    }
    let hs = GradedSpace::new(basis)?;
    let m2 = data.component("(2)");
    let m11 = plain_view(s, &data.component("(1|1)"));
    let g = tabulate(s, Partition::plain(2), m11.degree(), m11.aux(), |t| {
        let mut v = m11.eval_basis(t);
        let e = (s.degree(t[0]) + 1) * (s.degree(t[1]) + 1);
        v.add_scaled(&m11.eval_basis(&[t[1], t[0]]), -Scalar::sign(e));
        v
    });
    let product = induce(s, &classes, &reps, &m2, "m_(2)")?;
    let g_bracket = induce(s, &classes, &reps, &g, "the m_(1|1) bracket")?;
    let bv_bracket = induce(s, &classes, &reps, &data.bracket_table()?, "the BV bracket")?;
    let b = induce(s, &classes, &reps, &data.b, "B")?;
    Ok(Cohomology {
        space: hs,
        representatives: reps,
        product,
        g_bracket,
        bv_bracket,
        b,
    })
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Dimension of `H` per degree.
    pub fn dimensions(&self) -> BTreeMap<i64, usize> {
        let mut d = BTreeMap::new();
        for i in 0..self.dim() {
            *d.entry(self.space.degree(i)).or_default() += 1;
        }
        d
    }

    fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.product.eval_flat(&[x, y])
    }

    /// Commutative associative product, Gerstenhaber axioms for both
    /// brackets, and the BV relations, on basis classes.
    pub fn classical_checks(&self) -> StructureReport {
        let s = &self.space;
        let n = self.dim();
        let deg = |i: usize| s.degree(i);
        let e = Vector::basis;
        let mut r = StructureReport::new("classical BV on cohomology");
        let find = |f: &dyn Fn(&[usize]) -> Vector, arity: usize| -> Option<String> {
            all_tuples(n, arity).into_iter().find_map(|t| {
                let v = f(&t);
                (!v.is_zero()).then(|| {
                    format!(
                        "{} -> {}",
                        format_tuple(s, &Partition::plain(arity), &t),
                        s.render(&v)
                    )
                })
            })
        };
        let comm = find(
            &|t| {
                let mut v = self.mul(&e(t[0]), &e(t[1]));
                v.add_scaled(
                    &self.mul(&e(t[1]), &e(t[0])),
                    -Scalar::sign(deg(t[0]) * deg(t[1])),
                );
                v
            },
            2,
        );
        r.push_check("product super commutative", comm.is_none(), comm);
        let assoc = find(
            &|t| {
                let mut v = self.mul(&self.mul(&e(t[0]), &e(t[1])), &e(t[2]));
                v.add_scaled(
                    &self.mul(&e(t[0]), &self.mul(&e(t[1]), &e(t[2]))),
                    Scalar::MINUS_ONE,
                );
                v
            },
            3,
        );
        r.push_check("product associative", assoc.is_none(), assoc);
        for (name, br) in [("G", &self.g_bracket), ("BV", &self.bv_bracket)] {
            let b = |x: &Vector, y: &Vector| br.eval_flat(&[x, y]);
            let anti = find(
                &|t| {
                    let mut v = b(&e(t[0]), &e(t[1]));
                    v.add_scaled(
                        &b(&e(t[1]), &e(t[0])),
                        Scalar::sign((deg(t[0]) - 1) * (deg(t[1]) - 1)),
                    );
                    v
                },
                2,
            );
            r.push_check(format!("{name} (i) antisymmetry"), anti.is_none(), anti);
            let leibniz = find(
                &|t| {
                    let (a, bb, c) = (e(t[0]), e(t[1]), e(t[2]));
                    let mut v = b(&a, &b(&bb, &c));
                    v.add_scaled(&b(&b(&a, &bb), &c), Scalar::MINUS_ONE);
                    v.add_scaled(
                        &b(&bb, &b(&a, &c)),
                        -Scalar::sign((deg(t[0]) - 1) * (deg(t[1]) - 1)),
                    );
                    v
                },
                3,
            );
            r.push_check(format!("{name} (ii) Leibniz"), leibniz.is_none(), leibniz);
            let poisson = find(
                &|t| {
                    let (a, bb, c) = (e(t[0]), e(t[1]), e(t[2]));
                    let mut v = b(&a, &self.mul(&bb, &c));
                    v.add_scaled(&self.mul(&b(&a, &bb), &c), Scalar::MINUS_ONE);
                    v.add_scaled(
                        &self.mul(&bb, &b(&a, &c)),
                        -Scalar::sign((deg(t[0]) - 1) * deg(t[1])),
                    );
                    v
                },
                3,
            );
            r.push_check(format!("{name} (iii) Poisson"), poisson.is_none(), poisson);
        }
        let bb = self.b.clone();
        let apply = |v: &Vector| bb.eval_flat(&[v]);
        let sq = find(&|t| apply(&apply(&e(t[0]))), 1);
        r.push_check("B^2 = 0", sq.is_none(), sq);
        let relation = find(
            &|t| {
                let (a, c) = (e(t[0]), e(t[1]));
                let mut v = self.bv_bracket.eval_flat(&[&a, &c]);
                let mut phi2 = apply(&self.mul(&a, &c));
                phi2.add_scaled(&self.mul(&apply(&a), &c), Scalar::MINUS_ONE);
                phi2.add_scaled(
                    &self.mul(&a, &apply(&c)),
                    -Scalar::sign(deg(t[0]) * bb.degree()),
                );
                v.add_scaled(&phi2, -Scalar::sign(deg(t[0])));
                v
            },
            2,
        );
        r.push_check("BV bracket from B", relation.is_none(), relation);
        r
    }
}

/// Sign of the homotopy terms `[m_(1), [B, m_(1|1)]]` and
/// `[m_(1), [m_(2), [B, m_(1|1)]]]` in the symmetry and right Poisson
/// identities. No instance at hand has these terms nonzero while the
/// identities hold, so the value is a convention.
pub const HOMOTOPY_TERM_SIGN: i64 = 1;

/// Defects of the dictionary identities between the homotopy G maps, `B`
/// and the BV bracket. Left pre-Lie of the product is only reported as a
/// warning.
pub fn dictionary_defects(data: &BvData) -> Result<StructureReport, Error> {
    let s = &data.space;
    let mut r = StructureReport::new("dictionary");
    let mega = |ty: &str| -> (usize, PartitionedMap) {
        let t: Partition = ty.parse().expect("valid partition literal");
        let sum = mega_sum(&data.m, &t, DEFAULT_MAX_INNER);
        (sum.num_terms(), sum.to_map(s))
    };
    let (n, d) = mega("(1|1)");
    r.push_defect(s, "5 product commutative up to homotopy", n, &d, 0);
    let (n, d) = mega("(3)");
    r.push_defect(s, "6 product associative up to homotopy", n, &d, 0);
    let (n, d) = bracketed_identity(data, 2)?;
    r.push_defect(s, "7 m_(1) derivation of the BV bracket", n, &d, 0);
    r.push_defect(
        s,
        "8 BV bracket symmetric up to homotopy",
        3,
        &symmetry_defect(data, HOMOTOPY_TERM_SIGN)?,
        0,
    );
    let b = &data.b;
    let m2 = data.component("(2)");
    let b2 = data.b_squared();
    let mut d9 = phi(s, &b2, &m2, 3)?;
    d9 = d9.add(
        &commutator(s, b, &data.phi(3)?)?.scaled(Scalar::MINUS_ONE),
        s.dim(),
    )?;
    r.push_defect(s, "9 Leibniz", 3, &d9, 0);
    r.push_defect(s, "10 left Poisson", 3, &left_poisson_defect(data)?, 0);
    r.push_defect(
        s,
        "11 right Poisson up to homotopy",
        4,
        &right_poisson_defect(data, HOMOTOPY_TERM_SIGN)?,
        0,
    );
    let (n, d) = bracketed_identity(data, 3)?;
    r.push_defect(s, "13 bracketed associativity", n, &d, 0);
    let pre_lie = tabulate(s, Partition::plain(3), 2 * m2.degree(), 0, |t| {
        let assoc = |x: usize, y: usize, z: usize| {
            let mut v = m2.eval_flat(&[&m2.eval_basis(&[x, y]), &Vector::basis(z)]);
            v.add_scaled(
                &m2.eval_flat(&[&Vector::basis(x), &m2.eval_basis(&[y, z])]),
                Scalar::MINUS_ONE,
            );
            v
        };
        let mut v = assoc(t[0], t[1], t[2]);
        v.add_scaled(
            &assoc(t[1], t[0], t[2]),
            -Scalar::sign(s.degree(t[0]) * s.degree(t[1])),
        );
        v
    });
    if let Some(w) = first_witness(s, &pre_lie) {
        r.warnings
            .push(format!("12 product is not left pre-Lie: {w}"));
    }
    Ok(r)
}

/// Plain A-infinity identity `sum (-1)^j {m_j}{m_k}` at arity `n`, as
/// `(coefficient, outer arity, inner arity)`.
fn a_infinity_parts(n: usize) -> Vec<(Scalar, usize, usize)> {
    (1..=n)
        .map(|j| (Scalar::sign(j as i64), j, n + 1 - j))
        .collect()
}

/// The plain A-infinity identity at arity `n`.
pub fn plain_identity(data: &BvData, n: usize) -> PartitionedMap {
    let maps: Vec<(Scalar, PartitionedMap, PartitionedMap)> = a_infinity_parts(n)
        .into_iter()
        .map(|(c, j, k)| {
            (
                c,
                data.component(&format!("({j})")),
                data.component(&format!("({k})")),
            )
        })
        .collect();
    sum_of(&data.space, Partition::plain(n), &maps).1
}

fn sum_of(
    space: &GradedSpace,
    target: Partition,
    maps: &[(Scalar, PartitionedMap, PartitionedMap)],
) -> (usize, PartitionedMap) {
    let mut sum = BraceSum::new(target.clone());
    for (c, a, b) in maps {
        sum.push(Composite::new(*c, a, vec![b], &target, SignMode::Plain));
    }
    let n = sum.num_terms();
    let degree = maps.first().map_or(0, |(_, a, b)| a.degree() + b.degree());
    let mut d = sum.to_map(space);
    if n == 0 {
        d = PartitionedMap::zero(target, degree);
    }
    (n, d)
}

/// The plain A-infinity identity at arity `n` bracketed with `B` term by
/// term, `[B, {a}{b}] = {[B,a]}{b} + (-1)^{|B||a|} {a}{[B,b]}`. With
/// `[B, m_(1)] = L` this is the identity that `B` transports.
pub fn bracketed_identity(data: &BvData, n: usize) -> Result<(usize, PartitionedMap), Error> {
    let s = &data.space;
    let mut maps = Vec::new();
    for (c, j, k) in a_infinity_parts(n) {
        let (a, b) = (
            data.component(&format!("({j})")),
            data.component(&format!("({k})")),
        );
        let ba = bv_bracket(s, &data.b, &a)?;
        let bb = bv_bracket(s, &data.b, &b)?;
        let sign = Scalar::sign(data.b.degree() * a.degree());
        maps.push((c, ba, b.clone()));
        maps.push((c * sign, a, bb));
    }
    Ok(sum_of(s, Partition::plain(n), &maps))
}

/// `[B, m_(1|1)]`, `[m_(2), .]` of it and `[m_(1), .]` of that, with
/// `m_(1|1)` read as a plain bilinear map.
fn homotopy_terms(data: &BvData) -> Result<(PartitionedMap, PartitionedMap), Error> {
    let s = &data.space;
    let m11 = plain_view(s, &data.component("(1|1)"));
    let m1 = data.component("(1)");
    let inner = bv_bracket(s, &data.b, &m11)?;
    let sym = commutator(s, &m1, &inner)?;
    let poisson = commutator(s, &m1, &commutator(s, &data.component("(2)"), &inner)?)?;
    Ok((sym, poisson))
}

/// Shifted parity of `x` for a bracket of degree `delta`.
fn shifted(space: &GradedSpace, x: usize, delta: i64) -> i64 {
    space.degree(x) + delta
}

/// `[a, b]_B + (-1)^{a' b'} [b, a]_B - sign [m_(1), [B, m_(1|1)]](a, b)`,
/// primes denoting degrees shifted by the bracket's.
pub fn symmetry_defect(data: &BvData, sign: i64) -> Result<PartitionedMap, Error> {
    let s = &data.space;
    let br = data.bracket_table()?;
    let (k, _) = homotopy_terms(data)?;
    let delta = br.degree();
    Ok(tabulate(
        s,
        Partition::plain(2),
        br.degree(),
        br.aux(),
        |t| {
            let mut v = br.eval_basis(t);
            v.add_scaled(
                &br.eval_basis(&[t[1], t[0]]),
                Scalar::sign(shifted(s, t[0], delta) * shifted(s, t[1], delta)),
            );
            v.add_scaled(&k.eval_basis(t), -Scalar::from_int(sign));
            v
        },
    ))
}

/// `[a, bc]_B - [a, b]_B c - (-1)^{a' |b|} b [a, c]_B`; equal to
/// `(-1)^{|a||B|} Phi_B^3(a, b, c)`.
pub fn left_poisson_defect(data: &BvData) -> Result<PartitionedMap, Error> {
    let s = &data.space;
    let br = data.bracket_table()?;
    let m2 = data.component("(2)");
    let delta = data.b.degree();
    let e = Vector::basis;
    Ok(tabulate(
        s,
        Partition::plain(3),
        br.degree() + m2.degree(),
        br.aux(),
        |t| {
            let (a, b, c) = (e(t[0]), e(t[1]), e(t[2]));
            let mut v = br.eval_flat(&[&a, &m2.eval_flat(&[&b, &c])]);
            v.add_scaled(
                &m2.eval_flat(&[&br.eval_flat(&[&a, &b]), &c]),
                Scalar::MINUS_ONE,
            );
            v.add_scaled(
                &m2.eval_flat(&[&b, &br.eval_flat(&[&a, &c])]),
                -Scalar::sign(shifted(s, t[0], delta) * s.degree(t[1])),
            );
            v
        },
    ))
}

/// `[uv, t]_B - u[v, t]_B - (-1)^{|v| t'} [u, t]_B v
/// - sign [m_(1), [m_(2), [B, m_(1|1)]]](u, v, t)`.
pub fn right_poisson_defect(data: &BvData, sign: i64) -> Result<PartitionedMap, Error> {
    let s = &data.space;
    let br = data.bracket_table()?;
    let m2 = data.component("(2)");
    let (_, k) = homotopy_terms(data)?;
    let delta = data.b.degree();
    let e = Vector::basis;
    Ok(tabulate(
        s,
        Partition::plain(3),
        br.degree() + m2.degree(),
        br.aux(),
        |t| {
            let (u, v, w) = (e(t[0]), e(t[1]), e(t[2]));
            let mut x = br.eval_flat(&[&m2.eval_flat(&[&u, &v]), &w]);
            x.add_scaled(
                &m2.eval_flat(&[&u, &br.eval_flat(&[&v, &w])]),
                Scalar::MINUS_ONE,
            );
            x.add_scaled(
                &m2.eval_flat(&[&br.eval_flat(&[&u, &w]), &v]),
                -Scalar::sign(s.degree(t[1]) * shifted(s, t[2], delta)),
            );
            x.add_scaled(&k.eval_basis(t), -Scalar::from_int(sign));
            x
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn phi_tower_on_exterior_algebra() {
        let d = euler_data(1);
        let (a, b) = (
            Algebra::from_product(d.space.clone(), &d.component("(2)")).unwrap(),
            d.b.clone(),
        );
        let m2 = a.product();
        let p2 = phi(&a.space, &b, &m2, 2).unwrap();
        let t1 = a.space.index_of("t1").unwrap();
        let t2 = a.space.index_of("t2").unwrap();
        assert_eq!(p2.eval_basis(&[t1, t2]), Vector::basis(t2));
        assert_eq!(p2.eval_basis(&[t2, t1]), Vector::basis(t2));
        assert!(phi(&a.space, &b, &m2, 3).unwrap().is_zero());
        assert_eq!(diff_order(&a.space, &b, &m2, 4).unwrap(), Some(2));
    }

    #[test]
    fn char_poly_and_roots() {
        let m = Matrix::from_rows(&[
            vec![Scalar::from_int(2), Scalar::ONE],
            vec![Scalar::ZERO, Scalar::from_int(3)],
        ]);
        let p = char_poly(&m);
        assert_eq!(
            p,
            vec![Scalar::from_int(6), Scalar::from_int(-5), Scalar::ONE]
        );
        assert_eq!(
            rational_roots(&p).unwrap(),
            vec![(Scalar::from_int(2), 1), (Scalar::from_int(3), 1)]
        );
        // x^2 - 2 has no rational roots
        let q = vec![Scalar::from_int(-2), Scalar::ZERO, Scalar::ONE];
        assert_eq!(rational_roots(&q).unwrap(), vec![]);
        assert!(matches!(
            diagonalize(&Matrix::from_rows(&[
                vec![Scalar::ZERO, Scalar::from_int(2)],
                vec![Scalar::ONE, Scalar::ZERO]
            ])),
            Diagonalization::Unverified(_)
        ));
        let jordan = Matrix::from_rows(&[
            vec![Scalar::ONE, Scalar::ONE],
            vec![Scalar::ZERO, Scalar::ONE],
        ]);
        assert_eq!(
            diagonalize(&jordan),
            Diagonalization::Defective(Scalar::ONE)
        );
    }
}
