//! The truncated Hochschild space of a finite-dimensional algebra, its
//! homotopy G-structure, and lifts of structures on the base space.
//!
//! A basis element of the truncated space is a single-entry cochain
//! `b(w1,...,wn)`: the suspended map sending the suspended word `sw` to `sb`
//! and every other word to zero. Its super degree is `|b| - |w|` and its
//! auxiliary degree is the d-degree `n - 1`; signs use their sum. Braces of
//! such cochains are computed directly on words; a value whose arity exceeds
//! the cap is dropped and flagged, so identity checks skip the affected
//! tuples.
//!
//! Operators on the Hochschild space itself act on [`TruncatedHochschild::meta`],
//! the same basis graded by the single total degree `|x| + n`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::braces::tilde_sign;
use rayon::prelude::*;

use crate::braces::{decode_tuple, BraceSum};
use crate::homotopy::{check_mega_with, mega_sum, ReportRow, StructureReport, DEFAULT_MAX_INNER};
use crate::maps::{
    all_tuples, flag_overflow, take_overflow, MapFn, MapKind, MegaMap, PartitionedMap,
};
use crate::partitions::Partition;
use crate::scalar::Scalar;
use crate::space::{BasisElement, GradedSpace, Vector};
use crate::Error;

#[derive(Clone, Debug)]
pub struct TruncatedHochschild {
    pub base: GradedSpace,
    pub cap: usize,
    /// The truncated space with its bigrading: super degree, and the
    /// d-degree as auxiliary grading.
    pub space: GradedSpace,
    /// The same basis graded by total degree, with no auxiliary grading.
    pub meta: GradedSpace,
    cells: Vec<(Vec<usize>, usize)>,
    index: HashMap<(Vec<usize>, usize), usize>,
}

impl TruncatedHochschild {
    pub fn new(base: &GradedSpace, cap: usize) -> Result<Self, Error> {
        if base.has_aux() {
            return Err(Error::Unsupported(
                "Hochschild space over a space with an auxiliary grading".into(),
            ));
        }
        let mut cells = Vec::new();
        let mut basis = Vec::new();
        let mut meta = Vec::new();
        for n in 0..=cap {
            for w in all_tuples(base.dim(), n) {
                for b in 0..base.dim() {
                    let names: Vec<&str> = w.iter().map(|&i| base.name(i)).collect();
                    let wdeg: i64 = w.iter().map(|&i| base.degree(i)).sum();
                    let name = format!("{}({})", base.name(b), names.join(","));
                    let degree = base.degree(b) - wdeg;
                    meta.push(BasisElement {
                        name: name.clone(),
                        degree: degree + n as i64,
                        weight: 0,
                        aux: 0,
                    });
                    basis.push(BasisElement {
                        name,
                        degree,
                        weight: 0,
                        aux: n as i64 - 1,
                    });
                    cells.push((w.clone(), b));
                }
            }
        }
        let index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(TruncatedHochschild {
            base: base.clone(),
            cap,
            space: GradedSpace::new(basis)?,
            meta: GradedSpace::new(meta)?,
            cells,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    /// Word and output of a basis cochain.
    pub fn cell(&self, i: usize) -> (&[usize], usize) {
        (&self.cells[i].0, self.cells[i].1)
    }

    /// Arity of a basis cochain.
    pub fn arity_of(&self, i: usize) -> usize {
        self.cells[i].0.len()
    }

    pub fn index_of(&self, word: &[usize], out: usize) -> Option<usize> {
        self.index.get(&(word.to_vec(), out)).copied()
    }

    fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&i| self.base.degree(i)).sum()
    }

    fn tilde_of(&self, w: &[usize]) -> Scalar {
        let degs: Vec<i64> = w.iter().map(|&i| self.base.degree(i)).collect();
        tilde_sign(&degs)
    }

    /// A plain map on the base space as an element of the truncated space:
    /// the coefficients are those of its suspension, so they differ from the
    /// map's values by the tilde sign of the input word.
    pub fn embed(&self, m: &PartitionedMap) -> Result<Vector, Error> {
        if !m.ty().is_plain() {
            return Err(Error::Unsupported(format!(
                "embedding a map of type {}",
                m.ty()
            )));
        }
        if m.arity() > self.cap {
            return Err(Error::Precondition(format!(
                "arity {} exceeds the cap {}",
                m.arity(),
                self.cap
            )));
        }
        let mut v = Vector::zero();
        for w in all_tuples(self.base.dim(), m.arity()) {
            let t = self.tilde_of(&w);
            for (b, c) in m.eval_basis(&w).iter() {
                v.add_term(self.index[&(w.clone(), b)], *c * t);
            }
        }
        Ok(v)
    }

    /// The component of arity `n` of an element, as a map on the base space.
    pub fn component(&self, v: &Vector, n: usize) -> Result<PartitionedMap, Error> {
        let mut entries: HashMap<Vec<usize>, Vector> = HashMap::new();
        let mut degree = None;
        for (i, c) in v.iter() {
            let (w, b) = self.cell(i);
            if w.len() != n {
                continue;
            }
            degree.get_or_insert(self.space.degree(i));
            entries
                .entry(w.to_vec())
                .or_default()
                .add_term(b, *c * self.tilde_of(w));
        }
        entries.retain(|_, v| !v.is_zero());
        PartitionedMap::table(
            &self.base,
            Partition::plain(n),
            degree.unwrap_or(0),
            entries,
        )
    }

    /// `{x}{y1,...,yk}` on basis cochains, added to `out` with `coeff`.
    pub fn brace_into(&self, x: usize, ys: &[usize], coeff: Scalar, out: &mut Vector) {
        if ys.is_empty() {
            out.add_term(x, coeff);
            return;
        }
        let (w, b) = self.cell(x);
        let k = ys.len();
        if k > w.len() {
            return;
        }
        let mut pos = Vec::with_capacity(k);
        self.place(w, b, ys, 0, &mut pos, coeff, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        &self,
        w: &[usize],
        b: usize,
        ys: &[usize],
        from: usize,
        pos: &mut Vec<usize>,
        coeff: Scalar,
        out: &mut Vector,
    ) {
        let i = pos.len();
        if i == ys.len() {
            self.emit(w, b, ys, pos, coeff, out);
            return;
        }
        let c = self.cells[ys[i]].1;
        let last = w.len() - (ys.len() - i);
        for p in from..=last {
            if w[p] == c {
                pos.push(p);
                self.place(w, b, ys, p + 1, pos, coeff, out);
                pos.pop();
            }
        }
    }

    fn emit(
        &self,
        w: &[usize],
        b: usize,
        ys: &[usize],
        pos: &[usize],
        coeff: Scalar,
        out: &mut Vector,
    ) {
        let new_len = w.len() - ys.len() + ys.iter().map(|&y| self.arity_of(y)).sum::<usize>();
        if new_len > self.cap {
            flag_overflow();
            return;
        }
        let mut word = Vec::with_capacity(new_len);
        let mut exponent = 0i64;
        let mut prev = 0;
        for (&y, &p) in ys.iter().zip(pos) {
            word.extend_from_slice(&w[prev..p]);
            let (u, _) = self.cell(y);
            // suspended y passes every suspended letter placed before it
            let ydeg = self.space.degree(y);
            let yd = self.space.aux(y);
            exponent += (ydeg + yd) * (self.word_degree(&word) + word.len() as i64);
            word.extend_from_slice(u);
            prev = p + 1;
        }
        word.extend_from_slice(&w[prev..]);
        out.add_term(self.index[&(word, b)], coeff * Scalar::sign(exponent));
    }

    /// Multilinear `{x}{ys}` on elements.
    pub fn brace(&self, x: &Vector, ys: &[&Vector]) -> Vector {
        let mut out = Vector::zero();
        let mut tuple = Vec::with_capacity(ys.len());
        self.brace_expand(x, ys, &mut tuple, Scalar::ONE, &mut out);
        out
    }

    fn brace_expand(
        &self,
        x: &Vector,
        ys: &[&Vector],
        tuple: &mut Vec<usize>,
        coeff: Scalar,
        out: &mut Vector,
    ) {
        if tuple.len() == ys.len() {
            for (i, c) in x.iter() {
                self.brace_into(i, tuple, coeff * *c, out);
            }
            return;
        }
        for (j, c) in ys[tuple.len()].iter() {
            tuple.push(j);
            self.brace_expand(x, ys, tuple, coeff * *c, out);
            tuple.pop();
        }
    }

    /// Takes a value whose cells carry the words of `tuple` in order and
    /// rearranges every word into the order `order`, with the Koszul sign of
    /// moving the suspended word blocks.
    pub fn reorder_words(&self, v: &Vector, tuple: &[usize], order: &[usize]) -> Vector {
        let blocks: Vec<&[usize]> = tuple.iter().map(|&x| self.cell(x).0).collect();
        let par: Vec<i64> = blocks
            .iter()
            .map(|w| self.word_degree(w) + w.len() as i64)
            .collect();
        let mut exponent = 0;
        for i in 0..order.len() {
            for j in (i + 1)..order.len() {
                if order[i] > order[j] {
                    exponent += par[order[i]] * par[order[j]];
                }
            }
        }
        let word: Vec<usize> = order
            .iter()
            .flat_map(|&j| blocks[j].iter().copied())
            .collect();
        let sign = Scalar::sign(exponent);
        let mut out = Vector::zero();
        for (i, c) in v.iter() {
            out.add_term(self.index[&(word.clone(), self.cell(i).1)], *c * sign);
        }
        out
    }

    /// Tilde sign of a tuple of basis cochains in the total grading.
    pub fn meta_tilde_sign(&self, tuple: &[usize]) -> Scalar {
        let degs: Vec<i64> = tuple.iter().map(|&i| self.meta.degree(i)).collect();
        tilde_sign(&degs)
    }

    /// Exchange sign of two homogeneous elements given by basis cochains.
    pub fn exchange(&self, x: usize, y: usize) -> Scalar {
        Scalar::sign(
            self.space.degree(x) * self.space.degree(y) + self.space.aux(x) * self.space.aux(y),
        )
    }

    /// Gerstenhaber bracket `{x}{y} - (-1)^{(|x|+d(x))(|y|+d(y))} {y}{x}` with
    /// `x` homogeneous of the given bidegree and `y` a basis cochain.
    fn bracket_into(
        &self,
        x: &Vector,
        x_deg: (i64, i64),
        y: usize,
        coeff: Scalar,
        out: &mut Vector,
    ) {
        let e = Scalar::sign((x_deg.0 + x_deg.1) * (self.space.degree(y) + self.space.aux(y)));
        for (i, c) in x.iter() {
            self.brace_into(i, &[y], coeff * *c, out);
        }
        let mut tmp = Vector::zero();
        let mut one = vec![0usize; 1];
        for (i, c) in x.iter() {
            one[0] = i;
            self.brace_into(y, &one, *c, &mut tmp);
        }
        out.add_scaled(&tmp, -coeff * e);
    }
}

struct Differential {
    h: Arc<TruncatedHochschild>,
    m: Vector,
}

impl MapFn for Differential {
    fn eval_into(&self, tuple: &[usize], coeff: Scalar, out: &mut Vector) {
        self.h.bracket_into(
            &self.m,
            (0, 1),
            tuple[0],
            -coeff * self.h.meta_tilde_sign(tuple),
            out,
        );
    }
}

struct Product {
    h: Arc<TruncatedHochschild>,
    m: Vector,
}

impl MapFn for Product {
    fn eval_into(&self, tuple: &[usize], coeff: Scalar, out: &mut Vector) {
        let s = coeff * self.h.meta_tilde_sign(tuple);
        for (i, c) in self.m.iter() {
            self.h.brace_into(i, tuple, s * *c, out);
        }
    }
}

struct Brace {
    h: Arc<TruncatedHochschild>,
}

impl MapFn for Brace {
    fn eval_into(&self, tuple: &[usize], coeff: Scalar, out: &mut Vector) {
        self.h.brace_into(
            tuple[0],
            &tuple[1..],
            coeff * self.h.meta_tilde_sign(tuple),
            out,
        );
    }
}

/// The homotopy G-structure on the truncated Hochschild space of an
/// associative algebra, as maps on the meta grading: `M_(1) = -[m,.]`,
/// `M_(2) = {m}{.,.}`, the identity selector and `M_(1|n) = {.}{...}`.
/// Every operator carries the tilde sign of its meta arguments.
pub fn gv_structure(h: &Arc<TruncatedHochschild>, algebra: &Algebra) -> Result<MegaMap, Error> {
    if let Some((i, j, k)) = algebra.associativity_witness() {
        let s = &algebra.space;
        return Err(Error::Precondition(format!(
            "product is not associative at ({},{},{})",
            s.name(i),
            s.name(j),
            s.name(k)
        )));
    }
    if h.cap < 2 {
        return Err(Error::Precondition(
            "the arity cap must be at least 2".into(),
        ));
    }
    let m = h.embed(&algebra.product())?;
    let mut out = MegaMap::new()
        .with(PartitionedMap::from_fn(
            Partition::plain(1),
            1,
            0,
            Arc::new(Differential {
                h: h.clone(),
                m: m.clone(),
            }),
        ))
        .with(PartitionedMap::from_fn(
            Partition::plain(2),
            0,
            0,
            Arc::new(Product { h: h.clone(), m }),
        ))
        .with(PartitionedMap::identity_selector());
    for n in 1..=h.cap {
        let ty = Partition::new(vec![1, n])?;
        out.insert(PartitionedMap::from_fn(
            ty,
            -(n as i64),
            0,
            Arc::new(Brace { h: h.clone() }),
        ));
    }
    Ok(out)
}

/// Tilde sign of a partitioned argument list, with one degree-0 entry per
/// slot bar.
fn barred_tilde(ty: &Partition, degrees: impl IntoIterator<Item = i64>) -> Scalar {
    let mut it = degrees.into_iter();
    let mut degs = Vec::with_capacity(ty.arity() + ty.num_slots());
    for (q, &c) in ty.slots().iter().enumerate() {
        if q > 0 {
            degs.push(0);
        }
        degs.extend(it.by_ref().take(c));
    }
    tilde_sign(&degs)
}

struct Lifted {
    h: Arc<TruncatedHochschild>,
    m: PartitionedMap,
    /// Whether `m` already holds the values of its suspension, as the
    /// suspended brace engine returns them.
    suspended: bool,
}

impl MapFn for Lifted {
    fn eval_into(&self, tuple: &[usize], coeff: Scalar, out: &mut Vector) {
        let h = &self.h;
        let len: usize = tuple.iter().map(|&x| h.arity_of(x)).sum();
        if len > h.cap {
            flag_overflow();
            return;
        }
        let ty = self.m.ty();
        let meta = barred_tilde(ty, tuple.iter().map(|&x| h.meta.degree(x)));
        // every suspended cochain passes the suspended letters before it
        let mut exponent = 0i64;
        let mut passed = 0i64;
        let mut word = Vec::with_capacity(len);
        let mut outputs = Vec::with_capacity(tuple.len());
        let mut j = 0;
        for (q, &c) in ty.slots().iter().enumerate() {
            if q > 0 {
                // a bar is an odd constant passing the words before it
                exponent += passed;
            }
            for &x in &tuple[j..j + c] {
                let (w, b) = h.cell(x);
                exponent += (h.space.degree(x) + h.space.aux(x)) * passed;
                passed += h.word_degree(w) + w.len() as i64;
                word.extend_from_slice(w);
                outputs.push(b);
            }
            j += c;
        }
        let inner = if self.suspended {
            Scalar::ONE
        } else {
            barred_tilde(ty, outputs.iter().map(|&b| h.base.degree(b)))
        };
        let sign = coeff * meta * inner * Scalar::sign(exponent);
        for (c, v) in self.m.eval_basis(&outputs).iter() {
            out.add_term(h.index[&(word.clone(), c)], sign * *v);
        }
    }
}

/// Post-composition lift `M(x1,...,xn) = m(x1,...,xn)` of one component, as
/// a map on the meta grading. The identity selector and the zero map lift to
/// themselves.
pub fn lift_map(h: &Arc<TruncatedHochschild>, m: &PartitionedMap) -> PartitionedMap {
    lift_with(h, m, false)
}

/// Lift of a map given by the values of its suspension, such as a defect
/// returned by [`mega_sum`].
pub fn lift_suspended(h: &Arc<TruncatedHochschild>, m: &PartitionedMap) -> PartitionedMap {
    lift_with(h, m, true)
}

fn lift_with(h: &Arc<TruncatedHochschild>, m: &PartitionedMap, suspended: bool) -> PartitionedMap {
    match m.kind() {
        MapKind::IdentitySelector | MapKind::ZeroMap => m.clone(),
        _ => PartitionedMap::from_fn(
            m.ty().clone(),
            m.degree(),
            0,
            Arc::new(Lifted {
                h: h.clone(),
                m: m.clone(),
                suspended,
            }),
        ),
    }
}

/// Lift of a whole structure on the base space to the truncated space.
pub fn lift(h: &Arc<TruncatedHochschild>, m: &MegaMap) -> MegaMap {
    let mut out = MegaMap::new();
    for c in m.components() {
        out.insert(lift_map(h, c));
    }
    out
}

/// Lift of a BV operator on the base space.
pub fn lift_b(
    h: &Arc<TruncatedHochschild>,
    beta: &PartitionedMap,
) -> Result<PartitionedMap, Error> {
    if beta.ty() != &Partition::plain(1) {
        return Err(Error::Precondition(format!(
            "a BV operator has type (1), not {}",
            beta.ty()
        )));
    }
    Ok(lift_map(h, beta))
}

struct Commutator {
    h: Arc<TruncatedHochschild>,
    m: Vector,
    parity: i64,
}

impl MapFn for Commutator {
    fn eval_into(&self, tuple: &[usize], coeff: Scalar, out: &mut Vector) {
        self.h.bracket_into(
            &self.m,
            (self.parity, 0),
            tuple[0],
            coeff * self.h.meta_tilde_sign(tuple),
            out,
        );
    }
}

/// The differential `x -> [m, x]` built from the plain components of `m`
/// embedded as one cochain. It squares to zero only when `{m}{m} = 0`.
pub fn commutator_differential(
    h: &Arc<TruncatedHochschild>,
    m: &MegaMap,
) -> Result<PartitionedMap, Error> {
    let mut v = Vector::zero();
    let mut parity = None;
    for c in m
        .components()
        .filter(|c| c.ty().is_plain() && c.arity() > 0)
    {
        let p = (c.degree() + c.ty().d()).rem_euclid(2);
        if *parity.get_or_insert(p) != p {
            return Err(Error::Precondition(
                "components of mixed suspended parity".into(),
            ));
        }
        v.add_scaled(&h.embed(c)?, Scalar::ONE);
    }
    let parity = parity.unwrap_or(1);
    Ok(PartitionedMap::from_fn(
        Partition::plain(1),
        parity,
        0,
        Arc::new(Commutator {
            h: h.clone(),
            m: v,
            parity,
        }),
    ))
}

/// Compares the mega identity of the lifted structure with the lifted
/// source defect, composite by composite, on every tuple whose total arity
/// fits the cap. Each source term is lifted by post-composition and its
/// input words are then put in the order in which the term uses its
/// arguments. A row is zero when all composites agree.
pub fn lift_report(
    h: &Arc<TruncatedHochschild>,
    m: &MegaMap,
    targets: &[Partition],
) -> StructureReport {
    let lifted = lift(h, m);
    let mut report = StructureReport::new("lift");
    for target in targets {
        let source = mega_sum(m, target, DEFAULT_MAX_INNER);
        let meta = mega_sum(&lifted, target, DEFAULT_MAX_INNER);
        if source.parts.is_empty() {
            continue;
        }
        assert_eq!(
            source.parts.len(),
            meta.parts.len(),
            "lift preserves factorizations"
        );
        let mut witness = None;
        let mut skipped = 0;
        for (ps, pm) in source.parts.iter().zip(&meta.parts) {
            let lifted_terms: Vec<(PartitionedMap, Vec<usize>)> = (0..ps.terms.len())
                .map(|k| {
                    let mut one = BraceSum::new(target.clone());
                    one.push(ps.single_term(k));
                    (
                        lift_suspended(h, &one.to_map(&h.base)),
                        ps.terms[k].argument_order(),
                    )
                })
                .collect();
            let n = target.arity();
            let dim = h.dim();
            let total = dim.checked_pow(n as u32).expect("tuple count overflow");
            let bad: Vec<(Option<Vec<usize>>, usize)> = (0..total)
                .into_par_iter()
                .filter_map(|code| {
                    let t = decode_tuple(code, dim, n);
                    if t.iter().map(|&x| h.arity_of(x)).sum::<usize>() > h.cap {
                        return None;
                    }
                    take_overflow();
                    let mut got = Vector::zero();
                    pm.eval_into(&h.meta, &t, &mut got);
                    if take_overflow() {
                        return Some((None, 1));
                    }
                    // both sides as values of suspended maps
                    let tilde = barred_tilde(target, t.iter().map(|&x| h.meta.degree(x)));
                    let mut want = Vector::zero();
                    for (lz, order) in &lifted_terms {
                        let v = lz.eval_basis(&t);
                        if !v.is_zero() {
                            want.add_scaled(&h.reorder_words(&v, &t, order), tilde);
                        }
                    }
                    (got != want).then_some((Some(t), 0))
                })
                .collect();
            skipped += bad.iter().map(|b| b.1).sum::<usize>();
            if witness.is_none() {
                if let Some(t) = bad.into_iter().filter_map(|b| b.0).min() {
                    let names: Vec<&str> = t.iter().map(|&x| h.space.name(x)).collect();
                    witness = Some(format!("{} on ({})", pm.outer.ty(), names.join(",")));
                }
            }
        }
        report.rows.push(ReportRow {
            label: format!("{target}"),
            terms: meta.num_terms(),
            zero: witness.is_none(),
            witness,
            skipped,
        });
    }
    report
}

/// The identities (i)-(vi) of the homotopy G-structure, each the mega
/// identity at one target: `(1)`, `(2)`, `(3)`, `(1|n+1)`, `(2|n)` and
/// `(1|1)`. Tuples that cannot stay within the cap are not evaluated;
/// overflowing ones are counted as skipped.
pub fn check_gv_identities(h: &Arc<TruncatedHochschild>, structure: &MegaMap) -> StructureReport {
    let cap = h.cap;
    let mut targets: Vec<(String, Partition)> = vec![
        ("(i)".into(), Partition::plain(1)),
        ("(ii)".into(), Partition::plain(2)),
        ("(iii)".into(), Partition::plain(3)),
    ];
    for n in 1..cap {
        targets.push((
            format!("(iv) n={n}"),
            Partition::new(vec![1, n + 1]).unwrap(),
        ));
    }
    for n in 1..cap {
        targets.push((format!("(v) n={n}"), Partition::new(vec![2, n]).unwrap()));
    }
    targets.push(("(vi)".into(), Partition::new(vec![1, 1]).unwrap()));
    let mut report = StructureReport::new("homotopy G on the Hochschild space");
    for (label, target) in targets {
        let mut r = check_mega_with(&h.meta, structure, std::slice::from_ref(&target), |_, t| {
            representable(h, t)
        });
        for row in &mut r.rows {
            row.label = format!("{label} {target}");
        }
        report.merge(r);
    }
    report
}

/// Whether some term on this tuple can stay within the cap: braces remove
/// at most one input per further argument.
fn representable(h: &TruncatedHochschild, tuple: &[usize]) -> bool {
    tuple.iter().map(|&x| h.arity_of(x)).sum::<usize>() < h.cap + tuple.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_names() {
        let a = Algebra::dual_numbers();
        let h = TruncatedHochschild::new(&a.space, 3).unwrap();
        assert_eq!(h.dim(), 2 * (1 + 2 + 4 + 8));
        let i = h.index_of(&[1, 0], 1).unwrap();
        assert_eq!(h.space.name(i), "e(e,1)");
        assert_eq!(h.space.aux(i), 1);
        assert_eq!(h.space.name(h.index_of(&[], 0).unwrap()), "1()");
    }

    #[test]
    fn empty_brace_is_identity_and_vectors_absorb_nothing() {
        let h = TruncatedHochschild::new(&Algebra::exterior(1).space, 2).unwrap();
        let v = h.index_of(&[], 1).unwrap();
        let mut out = Vector::zero();
        h.brace_into(v, &[], Scalar::ONE, &mut out);
        assert_eq!(out, Vector::basis(v));
        let mut out = Vector::zero();
        h.brace_into(v, &[v], Scalar::ONE, &mut out);
        assert!(out.is_zero());
    }
}
