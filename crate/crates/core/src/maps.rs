//! Partitioned multilinear maps on a finite graded space, and mega maps.

use std::cell::Cell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::partitions::Partition;
use crate::scalar::Scalar;
use crate::sign::{koszul_sign, BiDegree};
use crate::space::{GradedSpace, Vector};
use crate::Error;

thread_local! {
    static OVERFLOW: Cell<bool> = const { Cell::new(false) };
}

/// Records that a computed value was truncated (see [`MapFn`]).
pub fn flag_overflow() {
    OVERFLOW.with(|c| c.set(true));
}

/// Returns and clears the truncation flag of the current thread.
pub fn take_overflow() -> bool {
    OVERFLOW.with(|c| c.replace(false))
}

/// A map computed on demand. Implementations that drop part of a value
/// (for instance above an arity cap) must call [`flag_overflow`].
pub trait MapFn: Send + Sync {
    fn eval_into(&self, tuple: &[usize], coeff: Scalar, out: &mut Vector);
}

struct ScaledFn(Arc<dyn MapFn>, Scalar);

impl MapFn for ScaledFn {
    fn eval_into(&self, tuple: &[usize], coeff: Scalar, out: &mut Vector) {
        self.0.eval_into(tuple, coeff * self.1, out);
    }
}

#[derive(Clone)]
pub enum MapKind {
    /// Sparse table over flat basis tuples; missing tuples map to zero.
    Table(HashMap<Vec<usize>, Vector>),
    /// Type `(1|0)`: returns the single vector of its first slot.
    IdentitySelector,
    /// Type `(0|1)`: always zero.
    ZeroMap,
    /// Values computed by a function.
    Func(Arc<dyn MapFn>),
}

impl PartialEq for MapKind {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (MapKind::Table(a), MapKind::Table(b)) => a == b,
            (MapKind::IdentitySelector, MapKind::IdentitySelector) => true,
            (MapKind::ZeroMap, MapKind::ZeroMap) => true,
            (MapKind::Func(a), MapKind::Func(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl Eq for MapKind {}

/// A multilinear map of a given partition type.
///
/// Arguments are passed flat, slot after slot. `degree` is the super degree;
/// `aux` shifts the auxiliary grading of the space the same way.
#[derive(Clone, PartialEq, Eq)]
pub struct PartitionedMap {
    ty: Partition,
    degree: i64,
    aux: i64,
    kind: MapKind,
}

impl PartitionedMap {
    /// Table map, validated for shape and homogeneity against `space`.
    pub fn table<I>(
        space: &GradedSpace,
        ty: Partition,
        degree: i64,
        entries: I,
    ) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vec<usize>, Vector)>,
    {
        Self::table_with_aux(space, ty, degree, 0, entries)
    }

    pub fn table_with_aux<I>(
        space: &GradedSpace,
        ty: Partition,
        degree: i64,
        aux: i64,
        entries: I,
    ) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vec<usize>, Vector)>,
    {
        let mut table: HashMap<Vec<usize>, Vector> = HashMap::new();
        for (key, value) in entries {
            if key.len() != ty.arity() {
                return Err(Error::ArityMismatch {
                    expected: ty.arity(),
                    found: key.len(),
                });
            }
            if let Some(&bad) = key
                .iter()
                .chain(value.support().collect::<Vec<_>>().iter())
                .find(|&&i| i >= space.dim())
            {
                return Err(Error::UnknownName(format!("basis index {bad}")));
            }
            if value.is_zero() {
                continue;
            }
            let e = table.entry(key).or_default();
            *e = e.sum(&value);
        }
        table.retain(|_, v| !v.is_zero());
        let map = PartitionedMap {
            ty,
            degree,
            aux,
            kind: MapKind::Table(table),
        };
        map.validate(space)?;
        Ok(map)
    }

    /// Table map built by trusted engine code; skips validation.
    pub(crate) fn from_table_unchecked(
        ty: Partition,
        degree: i64,
        aux: i64,
        table: HashMap<Vec<usize>, Vector>,
    ) -> Self {
        PartitionedMap {
            ty,
            degree,
            aux,
            kind: MapKind::Table(table),
        }
    }

    /// Map whose values come from `f`; degrees are trusted.
    pub fn from_fn(ty: Partition, degree: i64, aux: i64, f: Arc<dyn MapFn>) -> Self {
        PartitionedMap {
            ty,
            degree,
            aux,
            kind: MapKind::Func(f),
        }
    }

    pub fn identity_selector() -> Self {
        PartitionedMap {
            ty: Partition::selector(),
            degree: 0,
            aux: 0,
            kind: MapKind::IdentitySelector,
        }
    }

    pub fn zero_selector() -> Self {
        PartitionedMap {
            ty: Partition::co_selector(),
            degree: 0,
            aux: 0,
            kind: MapKind::ZeroMap,
        }
    }

    /// The zero map of any type, stored as an empty table.
    pub fn zero(ty: Partition, degree: i64) -> Self {
        PartitionedMap {
            ty,
            degree,
            aux: 0,
            kind: MapKind::Table(HashMap::new()),
        }
    }

    pub fn zero_with_aux(ty: Partition, degree: i64, aux: i64) -> Self {
        PartitionedMap {
            ty,
            degree,
            aux,
            kind: MapKind::Table(HashMap::new()),
        }
    }

    /// A vector viewed as a map of type `(0)`.
    pub fn from_vector(space: &GradedSpace, v: &Vector) -> Result<Self, Error> {
        let degree = space
            .homogeneous_degree(v)
            .ok_or_else(|| Error::NotHomogeneous {
                map: "vector".into(),
                detail: space.render(v),
            })?;
        let aux = v.support().next().map_or(0, |i| space.aux(i));
        Ok(PartitionedMap::from_table_unchecked(
            Partition::plain(0),
            degree,
            aux,
            std::iter::once((Vec::new(), v.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        ))
    }

    pub fn ty(&self) -> &Partition {
        &self.ty
    }

    pub fn arity(&self) -> usize {
        self.ty.arity()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn aux(&self) -> i64 {
        self.aux
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn is_selector(&self) -> bool {
        matches!(self.kind, MapKind::IdentitySelector)
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::with_aux(self.degree, self.ty.d(), self.aux)
    }

    /// True when the map is zero on every input.
    pub fn is_zero(&self) -> bool {
        match &self.kind {
            MapKind::Table(t) => t.is_empty(),
            MapKind::IdentitySelector | MapKind::Func(_) => false,
            MapKind::ZeroMap => true,
        }
    }

    /// Table entries sorted by tuple. Selector and zero kinds have none.
    pub fn entries(&self) -> Vec<(&Vec<usize>, &Vector)> {
        match &self.kind {
            MapKind::Table(t) => {
                let mut e: Vec<_> = t.iter().collect();
                e.sort_by(|a, b| a.0.cmp(b.0));
                e
            }
            _ => Vec::new(),
        }
    }

    pub fn num_entries(&self) -> usize {
        match &self.kind {
            MapKind::Table(t) => t.len(),
            _ => 0,
        }
    }

    /// Checks table shape and that every output has degree `sum + degree`
    /// (and the same for the auxiliary grading when the space carries one).
    pub fn validate(&self, space: &GradedSpace) -> Result<(), Error> {
        let MapKind::Table(t) = &self.kind else {
            return Ok(());
        };
        for (key, value) in t {
            let deg: i64 = key.iter().map(|&i| space.degree(i)).sum::<i64>() + self.degree;
            let aux: i64 = key.iter().map(|&i| space.aux(i)).sum::<i64>() + self.aux;
            for o in value.support() {
                if space.degree(o) != deg || (space.has_aux() && space.aux(o) != aux) {
                    let names: Vec<&str> = key.iter().map(|&i| space.name(i)).collect();
                    return Err(Error::NotHomogeneous {
                        map: self.ty.to_string(),
                        detail: format!("({}) -> {}", names.join(","), space.render(value)),
                    });
                }
            }
        }
        Ok(())
    }

    /// Adds `coeff * m(tuple)` to `out` for a flat basis tuple.
    pub fn eval_basis_into(&self, tuple: &[usize], coeff: Scalar, out: &mut Vector) {
        match &self.kind {
            MapKind::Table(t) => {
                if let Some(v) = t.get(tuple) {
                    out.add_scaled(v, coeff);
                }
            }
            MapKind::IdentitySelector => out.add_term(tuple[0], coeff),
            MapKind::ZeroMap => {}
            MapKind::Func(f) => f.eval_into(tuple, coeff, out),
        }
    }

    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        let mut out = Vector::zero();
        self.eval_basis_into(tuple, Scalar::ONE, &mut out);
        out
    }

    /// Multilinear evaluation on flat vector arguments.
    pub fn eval_flat(&self, args: &[&Vector]) -> Vector {
        let mut out = Vector::zero();
        if self.is_zero() {
            return out;
        }
        let mut tuple = Vec::with_capacity(args.len());
        expand_into(self, args, &mut tuple, Scalar::ONE, &mut out);
        out
    }

    /// Evaluation with per-slot argument lists.
    pub fn evaluate(&self, args: &[Vec<Vector>]) -> Result<Vector, Error> {
        if args.len() != self.ty.num_slots() {
            return Err(Error::ArityMismatch {
                expected: self.ty.num_slots(),
                found: args.len(),
            });
        }
        for (slot, (a, &n)) in args.iter().zip(self.ty.slots()).enumerate() {
            if a.len() != n {
                return Err(Error::Precondition(format!(
                    "slot {} of a map of type {} takes {n} arguments, got {}",
                    slot + 1,
                    self.ty,
                    a.len()
                )));
            }
        }
        let flat: Vec<&Vector> = args.iter().flatten().collect();
        Ok(self.eval_flat(&flat))
    }

    pub fn scaled(&self, c: Scalar) -> PartitionedMap {
        match &self.kind {
            MapKind::Table(t) => {
                let table = if c.is_zero() {
                    HashMap::new()
                } else {
                    t.iter().map(|(k, v)| (k.clone(), v.scaled(c))).collect()
                };
                PartitionedMap {
                    kind: MapKind::Table(table),
                    ..self.clone()
                }
            }
            MapKind::Func(f) => PartitionedMap {
                kind: MapKind::Func(Arc::new(ScaledFn(f.clone(), c))),
                ..self.clone()
            },
            _ => {
                assert!(c.is_one() || self.is_zero(), "scaling a selector map");
                self.clone()
            }
        }
    }

    /// Table form of any kind, over a space of dimension `dim`.
    pub fn to_table(&self, dim: usize) -> PartitionedMap {
        match &self.kind {
            MapKind::Table(_) => self.clone(),
            MapKind::Func(_) => {
                let table = all_tuples(dim, self.arity())
                    .into_iter()
                    .filter_map(|t| {
                        let v = self.eval_basis(&t);
                        (!v.is_zero()).then_some((t, v))
                    })
                    .collect();
                PartitionedMap::from_table_unchecked(self.ty.clone(), self.degree, self.aux, table)
            }
            MapKind::ZeroMap => {
                PartitionedMap::zero_with_aux(self.ty.clone(), self.degree, self.aux)
            }
            MapKind::IdentitySelector => PartitionedMap::from_table_unchecked(
                self.ty.clone(),
                self.degree,
                self.aux,
                (0..dim).map(|i| (vec![i], Vector::basis(i))).collect(),
            ),
        }
    }

    /// Sum of two maps of the same type; the result is a table.
    pub fn add(&self, other: &PartitionedMap, dim: usize) -> Result<PartitionedMap, Error> {
        if self.ty != other.ty {
            return Err(Error::Precondition(format!(
                "cannot add maps of types {} and {}",
                self.ty, other.ty
            )));
        }
        let a = self.to_table(dim);
        let b = other.to_table(dim);
        let (MapKind::Table(ta), MapKind::Table(tb)) = (&a.kind, &b.kind) else {
            unreachable!()
        };
        let mut table = ta.clone();
        for (k, v) in tb {
            let e = table.entry(k.clone()).or_default();
            *e = e.sum(v);
        }
        table.retain(|_, v| !v.is_zero());
        let degree = if ta.is_empty() {
            other.degree
        } else {
            self.degree
        };
        Ok(PartitionedMap::from_table_unchecked(
            self.ty.clone(),
            degree,
            self.aux,
            table,
        ))
    }

    /// Equality as functions on basis tuples.
    pub fn same_values(&self, other: &PartitionedMap, dim: usize) -> bool {
        self.ty == other.ty && self.to_table(dim).kind == other.to_table(dim).kind
    }

    /// Signed sum over all permutations of the arguments of a plain map.
    pub fn antisymmetrize(&self, space: &GradedSpace) -> Result<PartitionedMap, Error> {
        if !self.ty.is_plain() {
            return Err(Error::Unsupported(format!(
                "antisymmetrization of the partitioned type {}",
                self.ty
            )));
        }
        let n = self.arity();
        let perms = permutations(n);
        let mut table = HashMap::new();
        for tuple in all_tuples(space.dim(), n) {
            let degs: Vec<BiDegree> = tuple
                .iter()
                .map(|&i| BiDegree::with_aux(space.degree(i), -1, space.aux(i)))
                .collect();
            let mut out = Vector::zero();
            let mut permuted = vec![0; n];
            for p in &perms {
                for (k, &src) in p.iter().enumerate() {
                    permuted[k] = tuple[src];
                }
                self.eval_basis_into(&permuted, koszul_sign(&degs, p), &mut out);
            }
            if !out.is_zero() {
                table.insert(tuple, out);
            }
        }
        Ok(PartitionedMap::from_table_unchecked(
            self.ty.clone(),
            self.degree,
            self.aux,
            table,
        ))
    }

    /// Whether swapping two adjacent arguments multiplies the value by the
    /// exchange sign of the two vectors (`antisymmetric`) or by its
    /// negative (`symmetric` in the suspended sense).
    pub fn has_exchange_symmetry(&self, space: &GradedSpace, antisymmetric: bool) -> bool {
        let n = self.arity();
        if !self.ty.is_plain() || n < 2 {
            return true;
        }
        for tuple in all_tuples(space.dim(), n) {
            let v = self.eval_basis(&tuple);
            for k in 0..n - 1 {
                let mut sw = tuple.clone();
                sw.swap(k, k + 1);
                let x = BiDegree::with_aux(space.degree(tuple[k]), -1, space.aux(tuple[k]));
                let y = BiDegree::with_aux(space.degree(tuple[k + 1]), -1, space.aux(tuple[k + 1]));
                let mut s = crate::sign::exchange_sign(&x, &y);
                if !antisymmetric {
                    s = -s;
                }
                if self.eval_basis(&sw) != v.scaled(s) {
                    return false;
                }
            }
        }
        true
    }
}

fn expand_into(
    m: &PartitionedMap,
    args: &[&Vector],
    tuple: &mut Vec<usize>,
    coeff: Scalar,
    out: &mut Vector,
) {
    let k = tuple.len();
    if k == args.len() {
        m.eval_basis_into(tuple, coeff, out);
        return;
    }
    for (i, c) in args[k].iter() {
        tuple.push(i);
        expand_into(m, args, tuple, coeff * *c, out);
        tuple.pop();
    }
}

impl fmt::Debug for PartitionedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            MapKind::Table(t) => format!("table[{}]", t.len()),
            MapKind::IdentitySelector => "identity-selector".into(),
            MapKind::ZeroMap => "zero".into(),
            MapKind::Func(_) => "function".into(),
        };
        write!(
            f,
            "PartitionedMap{} deg {} aux {} {}",
            self.ty, self.degree, self.aux, kind
        )
    }
}

/// All flat basis tuples of the given length, lexicographically.
pub fn all_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let total = dim.checked_pow(len as u32).expect("tuple count overflow");
    let mut out = Vec::with_capacity(total);
    if dim == 0 && len > 0 {
        return out;
    }
    let mut cur = vec![0usize; len];
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < dim {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// All permutations of `0..n` as position lists, lexicographically.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    crate::partitions::interleavings(&vec![1; n])
}

/// Finite formal sum of partitioned maps, one per partition.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct MegaMap {
    components: BTreeMap<Partition, PartitionedMap>,
}

impl MegaMap {
    pub fn new() -> Self {
        MegaMap::default()
    }

    /// Inserts a component keyed by its type, replacing any previous one.
    pub fn insert(&mut self, m: PartitionedMap) {
        self.components.insert(m.ty().clone(), m);
    }

    pub fn with(mut self, m: PartitionedMap) -> Self {
        self.insert(m);
        self
    }

    pub fn get(&self, p: &Partition) -> Option<&PartitionedMap> {
        self.components.get(p)
    }

    pub fn plain(&self, n: usize) -> Option<&PartitionedMap> {
        self.get(&Partition::plain(n))
    }

    pub fn components(&self) -> impl Iterator<Item = &PartitionedMap> {
        self.components.values()
    }

    pub fn partitions(&self) -> impl Iterator<Item = &Partition> {
        self.components.keys()
    }

    pub fn is_plain(&self) -> bool {
        self.components.keys().all(|p| p.is_plain())
    }

    pub fn max_plain_arity(&self) -> usize {
        self.components
            .keys()
            .filter(|p| p.is_plain())
            .map(|p| p.arity())
            .max()
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Debug for MegaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.components.values()).finish()
    }
}
