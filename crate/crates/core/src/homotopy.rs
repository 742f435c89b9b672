//! Suspension signs and the defects of homotopy structures.
//!
//! Plain structures are checked in the unsuspended `(-1)^j` form; partitioned
//! ones through the mega identity `{m~}{m~, m~, ...}` in the suspended form.

use std::fmt;

use crate::braces::{tilde_sign, BraceSum, Composite, SignMode};
use crate::maps::{all_tuples, MapKind, MegaMap, PartitionedMap};
use crate::partitions::{factorizations_among, Partition};
use crate::scalar::Scalar;
use crate::sign::{koszul_sign, BiDegree};
use crate::space::{GradedSpace, Vector};
use crate::Error;

/// A mega map read in the suspended picture.
#[derive(Clone, Debug)]
pub struct TildeMap {
    pub underlying: MegaMap,
}

pub fn tilde(m: &MegaMap) -> TildeMap {
    TildeMap {
        underlying: m.clone(),
    }
}

impl TildeMap {
    /// Value of the suspended component on a basis tuple.
    pub fn eval(&self, space: &GradedSpace, ty: &Partition, tuple: &[usize]) -> Vector {
        let Some(c) = self.underlying.get(ty) else {
            return Vector::zero();
        };
        let degs: Vec<i64> = tuple.iter().map(|&i| space.degree(i)).collect();
        c.eval_basis(tuple).scaled(tilde_sign(&degs))
    }

    /// Suspended degree `|m| + d` of every component.
    pub fn suspended_degrees(&self) -> Vec<(Partition, i64)> {
        self.underlying
            .components()
            .map(|c| (c.ty().clone(), c.degree() + c.ty().d()))
            .collect()
    }
}

/// Plain components whose degree parity differs from their arity's.
pub fn grading_warnings(m: &MegaMap) -> Vec<String> {
    m.components()
        .filter(|c| {
            c.ty().is_plain() && !c.is_zero() && (c.degree() - c.arity() as i64).rem_euclid(2) != 0
        })
        .map(|c| {
            format!(
                "component {} has degree {} of parity unlike its arity",
                c.ty(),
                c.degree()
            )
        })
        .collect()
}

fn plain_components(m: &MegaMap) -> Result<Vec<&PartitionedMap>, Error> {
    if !m.is_plain() {
        return Err(Error::Precondition("expected a plain mega map".into()));
    }
    Ok(m.components().filter(|c| c.arity() >= 1).collect())
}

/// `sum_{j+k=n+1} (-1)^j {m_j}{m_k}` as a brace sum.
pub fn a_infinity_sum<'a>(m: &'a MegaMap, n: usize) -> Result<BraceSum<'a>, Error> {
    let comps = plain_components(m)?;
    let target = Partition::plain(n);
    let mut sum = BraceSum::new(target.clone());
    for x in &comps {
        for y in &comps {
            if x.arity() + y.arity() == n + 1 {
                sum.push(Composite::new(
                    Scalar::sign(x.arity() as i64),
                    x,
                    vec![*y],
                    &target,
                    SignMode::Plain,
                ));
            }
        }
    }
    Ok(sum)
}

pub fn a_infinity_defect(
    space: &GradedSpace,
    m: &MegaMap,
    n: usize,
) -> Result<PartitionedMap, Error> {
    Ok(a_infinity_sum(m, n)?.to_map(space))
}

/// `sum_{j+k=n+1} {m~_j}{m~_k}`, the suspended form of the same identity.
pub fn tilde_defect(space: &GradedSpace, m: &MegaMap, n: usize) -> Result<PartitionedMap, Error> {
    let comps = plain_components(m)?;
    let target = Partition::plain(n);
    let mut sum = BraceSum::new(target.clone());
    for x in &comps {
        for y in &comps {
            if x.arity() + y.arity() == n + 1 {
                sum.push(Composite::new(
                    Scalar::ONE,
                    x,
                    vec![*y],
                    &target,
                    SignMode::Suspended,
                ));
            }
        }
    }
    Ok(sum.to_map(space))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn vector_bidegree(space: &GradedSpace, i: usize) -> BiDegree {
    BiDegree::with_aux(space.degree(i), -1, space.aux(i))
}

/// The A∞ defect antisymmetrized over the pair `(a1, a2)` (left) or
/// `(a_{n-1}, a_n)` (right).
pub fn pre_l_infinity_defect(
    space: &GradedSpace,
    m: &MegaMap,
    n: usize,
    side: Side,
) -> Result<PartitionedMap, Error> {
    let d = a_infinity_defect(space, m, n)?;
    if n < 2 {
        return Ok(d);
    }
    let p = match side {
        Side::Left => 0,
        Side::Right => n - 2,
    };
    let mut table = std::collections::HashMap::new();
    for tuple in all_tuples(space.dim(), n) {
        let mut sw = tuple.clone();
        sw.swap(p, p + 1);
        let s = -crate::sign::exchange_sign(
            &vector_bidegree(space, tuple[p]),
            &vector_bidegree(space, tuple[p + 1]),
        );
        let v = d.eval_basis(&tuple).sum(&d.eval_basis(&sw).scaled(s));
        if !v.is_zero() {
            table.insert(tuple, v);
        }
    }
    Ok(PartitionedMap::from_table_unchecked(
        d.ty().clone(),
        d.degree(),
        d.aux(),
        table,
    ))
}

/// Full antisymmetrization of the A∞ defect.
pub fn l_infinity_defect(
    space: &GradedSpace,
    m: &MegaMap,
    n: usize,
) -> Result<PartitionedMap, Error> {
    a_infinity_defect(space, m, n)?.antisymmetrize(space)
}

/// Antisymmetrization of a single plain map, term for term: the sum over
/// permutations of the signed, permuted evaluations.
pub fn antisymmetrized_value(space: &GradedSpace, f: &PartitionedMap, tuple: &[usize]) -> Vector {
    let degs: Vec<BiDegree> = tuple.iter().map(|&i| vector_bidegree(space, i)).collect();
    let mut out = Vector::zero();
    for p in crate::maps::permutations(tuple.len()) {
        let permuted: Vec<usize> = p.iter().map(|&src| tuple[src]).collect();
        f.eval_basis_into(&permuted, koszul_sign(&degs, &p), &mut out);
    }
    out
}

/// `{m~}{m~, ..., m~}` restricted to the target type, summed over every
/// factorization among the component types of `m` with at most
/// `max_inner` inner maps. Several inner maps must share one outer slot.
pub fn mega_sum<'a>(m: &'a MegaMap, target: &Partition, max_inner: usize) -> BraceSum<'a> {
    let types: Vec<Partition> = m.partitions().cloned().collect();
    let mut sum = BraceSum::new(target.clone());
    for f in factorizations_among(target, max_inner, &types) {
        if f.inners.len() > 1
            && !f
                .placements
                .iter()
                .any(|c| c.inner_slot.windows(2).all(|w| w[0] == w[1]))
        {
            continue;
        }
        let outer = m.get(&f.outer).expect("factorization over present types");
        let inners: Vec<&PartitionedMap> = f
            .inners
            .iter()
            .map(|p| m.get(p).expect("present type"))
            .collect();
        sum.push(
            Composite::new(Scalar::ONE, outer, inners, target, SignMode::Suspended).merged_only(),
        );
    }
    sum
}

/// Default bound on the number of inner maps in a factorization.
pub const DEFAULT_MAX_INNER: usize = 2;

pub fn mega_defect(
    space: &GradedSpace,
    m: &MegaMap,
    target: &Partition,
    max_inner: usize,
) -> PartitionedMap {
    mega_sum(m, target, max_inner).to_map(space)
}

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub label: String,
    pub terms: usize,
    pub zero: bool,
    pub witness: Option<String>,
    /// Tuples left out because an evaluation left the truncation.
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub name: String,
    pub rows: Vec<ReportRow>,
    pub warnings: Vec<String>,
}

impl StructureReport {
    pub fn new(name: impl Into<String>) -> Self {
        StructureReport {
            name: name.into(),
            rows: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn verdict(&self) -> bool {
        self.rows.iter().all(|r| r.zero)
    }

    pub fn first_failure(&self) -> Option<&ReportRow> {
        self.rows.iter().find(|r| !r.zero)
    }

    /// Adds a row for a defect map.
    pub fn push_defect(
        &mut self,
        space: &GradedSpace,
        label: impl Into<String>,
        terms: usize,
        defect: &PartitionedMap,
        skipped: usize,
    ) {
        let witness = defect.entries().first().map(|(t, v)| {
            format!(
                "{} -> {}",
                format_tuple(space, defect.ty(), t),
                space.render(v)
            )
        });
        self.rows.push(ReportRow {
            label: label.into(),
            terms,
            zero: witness.is_none(),
            witness,
            skipped,
        });
    }

    pub fn push_check(&mut self, label: impl Into<String>, ok: bool, witness: Option<String>) {
        self.rows.push(ReportRow {
            label: label.into(),
            terms: 0,
            zero: ok,
            witness: if ok { None } else { witness },
            skipped: 0,
        });
    }

    pub fn merge(&mut self, other: StructureReport) {
        self.rows.extend(other.rows);
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.name,
            if self.verdict() { "pass" } else { "FAIL" }
        )?;
        let w = self
            .rows
            .iter()
            .map(|r| r.label.len())
            .max()
            .unwrap_or(0)
            .max(9);
        writeln!(
            f,
            "  {:<w$}  {:>6}  {:<7}  witness",
            "identity", "terms", "defect"
        )?;
        for r in &self.rows {
            let mut line = format!(
                "  {:<w$}  {:>6}  {:<7}  {}",
                r.label,
                r.terms,
                if r.zero { "zero" } else { "nonzero" },
                r.witness.as_deref().unwrap_or("-")
            );
            if r.skipped > 0 {
                line.push_str(&format!("  ({} tuples beyond truncation)", r.skipped));
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        Ok(())
    }
}

/// `(a,b|c)` with basis names.
pub fn format_tuple(space: &GradedSpace, ty: &Partition, tuple: &[usize]) -> String {
    let mut slots = Vec::new();
    let mut at = 0;
    for &s in ty.slots() {
        let names: Vec<&str> = tuple[at..at + s].iter().map(|&i| space.name(i)).collect();
        slots.push(names.join(","));
        at += s;
    }
    format!("({})", slots.join("|"))
}

pub fn check_a_infinity(
    space: &GradedSpace,
    m: &MegaMap,
    max_n: usize,
) -> Result<StructureReport, Error> {
    let mut r = StructureReport::new("A-infinity");
    r.warnings = grading_warnings(m);
    for n in 1..=max_n {
        let sum = a_infinity_sum(m, n)?;
        r.push_defect(
            space,
            format!("({n})"),
            sum.num_terms(),
            &sum.to_map(space),
            0,
        );
    }
    Ok(r)
}

pub fn check_l_infinity(
    space: &GradedSpace,
    m: &MegaMap,
    max_n: usize,
) -> Result<StructureReport, Error> {
    let mut r = StructureReport::new("L-infinity");
    r.warnings = grading_warnings(m);
    for n in 1..=max_n {
        let terms = a_infinity_sum(m, n)?.num_terms();
        r.push_defect(
            space,
            format!("({n})"),
            terms,
            &l_infinity_defect(space, m, n)?,
            0,
        );
    }
    Ok(r)
}

pub fn check_pre_l_infinity(
    space: &GradedSpace,
    m: &MegaMap,
    max_n: usize,
    side: Side,
) -> Result<StructureReport, Error> {
    let name = match side {
        Side::Left => "left pre-L-infinity",
        Side::Right => "right pre-L-infinity",
    };
    let mut r = StructureReport::new(name);
    r.warnings = grading_warnings(m);
    for n in 1..=max_n {
        let terms = a_infinity_sum(m, n)?.num_terms();
        r.push_defect(
            space,
            format!("({n})"),
            terms,
            &pre_l_infinity_defect(space, m, n, side)?,
            0,
        );
    }
    Ok(r)
}

/// Targets checked for a bound: arity `1..=bound`, at most `bound` slots,
/// no empty slot. An empty target slot can only be fed by selectors, and
/// there the identity fails by construction (`(1|0)` into itself).
pub fn targets_up_to(bound: usize) -> Vec<Partition> {
    Partition::all_up_to(bound, bound)
        .into_iter()
        .filter(|p| !p.has_zero_slot())
        .collect()
}

/// Mega identity on each target that has at least one factorization among
/// the component types of `m`. `keep` filters the basis tuples evaluated.
pub fn check_mega_with<F>(
    space: &GradedSpace,
    m: &MegaMap,
    targets: &[Partition],
    keep: F,
) -> StructureReport
where
    F: Fn(&Partition, &[usize]) -> bool + Sync,
{
    let mut r = StructureReport::new("weakly homotopy");
    for target in targets {
        let sum = mega_sum(m, target, DEFAULT_MAX_INNER);
        if sum.parts.is_empty() {
            continue;
        }
        if sum.degree_parities().len() > 1 {
            r.warnings
                .push(format!("defect at {target} mixes degree parities"));
        }
        let (defect, skipped) = sum.evaluate(space, |t| keep(target, t));
        r.push_defect(
            space,
            target.to_string(),
            sum.num_terms(),
            &defect,
            skipped.len(),
        );
    }
    r
}

pub fn check_mega(space: &GradedSpace, m: &MegaMap, bound: usize) -> StructureReport {
    check_mega_with(space, m, &targets_up_to(bound), |_, _| true)
}

/// Selector conditions: `m_(1|0)` is the identity selector and `m_(0|1)`
/// vanishes.
pub fn selector_checks(space: &GradedSpace, m: &MegaMap) -> StructureReport {
    let mut r = StructureReport::new("selectors");
    let sel = m.get(&Partition::selector());
    let ok = sel.is_some_and(|c| {
        matches!(c.kind(), MapKind::IdentitySelector)
            || c.same_values(&PartitionedMap::identity_selector(), space.dim())
    });
    let witness = match sel {
        None => "missing".to_string(),
        Some(c) => (0..space.dim())
            .find(|&i| c.eval_basis(&[i]) != Vector::basis(i))
            .map(|i| {
                format!(
                    "(|{}) -> {}",
                    space.name(i),
                    space.render(&c.eval_basis(&[i]))
                )
            })
            .unwrap_or_else(|| "not the identity selector".into()),
    };
    r.push_check("(1|0) identity", ok, Some(witness));
    let co = m.get(&Partition::co_selector());
    let ok = co.is_none_or(|c| c.to_table(space.dim()).is_zero());
    let witness = co.and_then(|c| {
        (0..space.dim())
            .find(|&i| !c.eval_basis(&[i]).is_zero())
            .map(|i| {
                format!(
                    "(|{}) -> {}",
                    space.name(i),
                    space.render(&c.eval_basis(&[i]))
                )
            })
    });
    r.push_check("(0|1) zero", ok, witness);
    r
}

pub fn is_homotopy_g(space: &GradedSpace, m: &MegaMap, bound: usize) -> StructureReport {
    let mut r = StructureReport::new("homotopy G");
    r.merge(selector_checks(space, m));
    r.merge(check_mega(space, m, bound));
    r
}
