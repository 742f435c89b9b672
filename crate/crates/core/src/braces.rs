//! Signed expansion of brace expressions `{x}{y1,...,yk}`.
//!
//! Terms are enumerated once per type signature and then evaluated on basis
//! tuples. A term records where every inner map and every argument ends up;
//! its sign is the Koszul sign of the permutation from the written order
//! (head, inner maps left to right, arguments in target order) to the
//! substituted order.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::maps::{take_overflow, PartitionedMap};
use crate::partitions::{configurations, interleavings, Configuration, Partition};
use crate::scalar::Scalar;
use crate::sign::BiDegree;
use crate::space::{GradedSpace, Vector};
use crate::Error;

/// How term signs and map values are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignMode {
    /// Bidegree exchange signs on unsuspended maps.
    Plain,
    /// Suspended picture: vectors have parity `|a|+1`, maps `|m|+d`, and
    /// every map value carries its tilde sign.
    Suspended,
}

/// One argument position of the head map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Inner(usize),
    /// Flat index into the target argument list.
    Arg(usize),
}

/// One fully placed substitution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraceTerm {
    pub configuration: Configuration,
    /// Head arguments, per head slot.
    pub outer: Vec<Vec<Entry>>,
    /// Flat target indices consumed by each inner map, slot after slot.
    pub inner_args: Vec<Vec<usize>>,
    /// Substituted order of the written symbols: `0` is the head, `1..=k`
    /// the inner maps, `k+1+a` the argument with flat index `a`.
    pub order: Vec<usize>,
    /// Written-index pairs that the substitution swaps.
    pub inversions: Vec<(usize, usize)>,
}

impl BraceTerm {
    pub fn num_inner(&self) -> usize {
        self.inner_args.len()
    }

    /// Flat argument indices in substituted order.
    pub fn argument_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for e in self.outer_flat() {
            match e {
                Entry::Arg(a) => out.push(*a),
                Entry::Inner(i) => out.extend(&self.inner_args[*i]),
            }
        }
        out
    }

    /// Flat head arguments, slot after slot.
    pub fn outer_flat(&self) -> impl Iterator<Item = &Entry> {
        self.outer.iter().flatten()
    }

    /// Sign for written symbols with the given bidegrees.
    pub fn plain_sign(&self, written: &[BiDegree]) -> Scalar {
        let odd = self
            .inversions
            .iter()
            .filter(|(p, q)| written[*p].exchange_parity(&written[*q]))
            .count();
        Scalar::sign(odd as i64)
    }

    /// Sign for written symbols with suspended `(parity, aux)` degrees.
    pub fn suspended_sign(&self, written: &[(i64, i64)]) -> Scalar {
        let odd = self
            .inversions
            .iter()
            .filter(|(p, q)| {
                (written[*p].0 * written[*q].0 + written[*p].1 * written[*q].1).rem_euclid(2) == 1
            })
            .count();
        Scalar::sign(odd as i64)
    }
}

/// Every term of `{outer}{inners}` with result type `target`, canonically
/// ordered. `selectors[i]` marks inner maps of identity-selector kind; such a
/// map must take the first vector of its first target slot.
pub fn enumerate_terms(
    outer: &Partition,
    inners: &[Partition],
    selectors: &[bool],
    target: &Partition,
) -> Vec<BraceTerm> {
    let k = inners.len();
    let offsets = target.offsets();
    let mut out = Vec::new();
    for config in configurations(outer, inners, target) {
        // per head slot: fixed inner positions plus label sequences for free positions
        let mut slot_choices: Vec<Vec<Vec<Option<usize>>>> = Vec::new();
        for (a, &size) in outer.slots().iter().enumerate() {
            let (start, len) = config.ranges[a];
            let here: Vec<usize> = (0..k).filter(|&i| config.inner_slot[i] == a).collect();
            let counts: Vec<usize> = (0..len)
                .map(|q| {
                    target.slots()[start + q]
                        - here.iter().map(|&i| inners[i].slots()[q]).sum::<usize>()
                })
                .collect();
            let mut seqs = Vec::new();
            for labels in interleavings(&counts) {
                let mut seq = vec![None; size];
                let mut it = labels.into_iter();
                for (p, s) in seq.iter_mut().enumerate() {
                    if !here.iter().any(|&i| config.inner_pos[i] == p) {
                        *s = Some(start + it.next().unwrap());
                    }
                }
                seqs.push(seq);
            }
            slot_choices.push(seqs);
        }
        let mut idx = vec![0usize; slot_choices.len()];
        'outer: loop {
            if let Some(term) = build_term(
                &config,
                inners,
                selectors,
                target,
                &offsets,
                &slot_choices,
                &idx,
            ) {
                out.push(term);
            }
            let mut j = idx.len();
            loop {
                if j == 0 {
                    break 'outer;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < slot_choices[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }
    out
}

fn build_term(
    config: &Configuration,
    inners: &[Partition],
    selectors: &[bool],
    target: &Partition,
    offsets: &[usize],
    slot_choices: &[Vec<Vec<Option<usize>>>],
    idx: &[usize],
) -> Option<BraceTerm> {
    let k = inners.len();
    let mut next = vec![0usize; target.num_slots()];
    let mut outer = Vec::with_capacity(slot_choices.len());
    let mut inner_args = vec![Vec::new(); k];
    let mut order = vec![0usize];
    for (a, choices) in slot_choices.iter().enumerate() {
        let (start, _) = config.ranges[a];
        let mut entries = Vec::new();
        for (p, label) in choices[idx[a]].iter().enumerate() {
            match label {
                Some(t) => {
                    let flat = offsets[*t] + next[*t];
                    next[*t] += 1;
                    entries.push(Entry::Arg(flat));
                    order.push(k + 1 + flat);
                }
                None => {
                    let i = (0..k)
                        .find(|&i| config.inner_slot[i] == a && config.inner_pos[i] == p)
                        .unwrap();
                    if selectors.get(i).copied().unwrap_or(false) && next[start] != 0 {
                        return None;
                    }
                    order.push(i + 1);
                    for (q, &c) in inners[i].slots().iter().enumerate() {
                        let t = start + q;
                        for _ in 0..c {
                            let flat = offsets[t] + next[t];
                            next[t] += 1;
                            inner_args[i].push(flat);
                            order.push(k + 1 + flat);
                        }
                    }
                    entries.push(Entry::Inner(i));
                }
            }
        }
        outer.push(entries);
    }
    let mut inversions = Vec::new();
    for x in 0..order.len() {
        for y in (x + 1)..order.len() {
            if order[x] > order[y] {
                inversions.push((order[y], order[x]));
            }
        }
    }
    Some(BraceTerm {
        configuration: config.clone(),
        outer,
        inner_args,
        order,
        inversions,
    })
}

/// A written symbol in the suspended picture, where slot bars are odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Head,
    Inner(usize),
    Arg(usize),
    /// Bar after target slot `t`; several inner maps sharing a range carry
    /// one copy each.
    Bar(usize, usize),
}

impl BraceTerm {
    /// Swapped token pairs from written order (head, inners, arguments with
    /// the target bars) to substituted order, bars included.
    /// The count is the number of extra bar copies merged into the target.
    pub fn bar_inversions(
        &self,
        inners: &[Partition],
        target: &Partition,
    ) -> (Vec<(Token, Token)>, usize) {
        let k = inners.len();
        let offsets = target.offsets();
        let last = target.num_slots().saturating_sub(1);
        let mut copies = vec![1usize; target.num_slots()];
        let mut subst = vec![Token::Head];
        let mut used = vec![0usize; target.num_slots()];
        for (a, entries) in self.outer.iter().enumerate() {
            let (start, len) = self.configuration.ranges[a];
            for e in entries {
                match *e {
                    Entry::Arg(x) => subst.push(Token::Arg(x)),
                    Entry::Inner(i) => {
                        subst.push(Token::Inner(i));
                        let mut it = self.inner_args[i].iter();
                        let slots = inners[i].slots();
                        for (q, &c) in slots.iter().enumerate() {
                            for _ in 0..c {
                                subst.push(Token::Arg(*it.next().unwrap()));
                            }
                            if q + 1 < slots.len() {
                                let t = start + q;
                                subst.push(Token::Bar(t, used[t]));
                                used[t] += 1;
                            }
                        }
                    }
                }
            }
            if a + 1 < self.outer.len() {
                let t = start + len - 1;
                subst.push(Token::Bar(t, used[t]));
                used[t] += 1;
            }
        }
        for t in 0..last {
            copies[t] = used[t].max(1);
        }
        let mut written = vec![Token::Head];
        written.extend((0..k).map(Token::Inner));
        for t in 0..target.num_slots() {
            if t < last {
                written.extend((1..copies[t]).map(|c| Token::Bar(t, c)));
            }
            written.extend((offsets[t]..offsets[t] + target.slots()[t]).map(Token::Arg));
            if t < last {
                written.push(Token::Bar(t, 0));
            }
        }
        let pos: HashMap<Token, usize> = written.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let mut out = Vec::new();
        for x in 0..subst.len() {
            for y in (x + 1)..subst.len() {
                if pos[&subst[x]] > pos[&subst[y]] {
                    out.push((subst[y], subst[x]));
                }
            }
        }
        let merged = copies.iter().map(|c| c - 1).sum();
        (out, merged)
    }
}

/// Terms of `{x}{ys}` for concrete maps.
pub fn expand(x: &PartitionedMap, ys: &[&PartitionedMap], target: &Partition) -> Vec<BraceTerm> {
    let types: Vec<Partition> = ys.iter().map(|y| y.ty().clone()).collect();
    let selectors: Vec<bool> = ys.iter().map(|y| y.is_selector()).collect();
    enumerate_terms(x.ty(), &types, &selectors, target)
}

/// Tilde sign of a map of arity `k` on arguments of the given degrees:
/// `(-1)^{(k-1)|a1| + (k-2)|a2| + ... + |a_{k-1}| + k(k-1)/2}`.
pub fn tilde_sign(degrees: &[i64]) -> Scalar {
    let k = degrees.len() as i64;
    let mut e = k * (k - 1) / 2;
    for (l, g) in degrees.iter().enumerate() {
        e += (k - 1 - l as i64) * g;
    }
    Scalar::sign(e)
}

/// Suspended degree of a map: parity `|m| + d + d_bar + 1`, plus its aux
/// shift. For plain maps this is `|m| + d`; every slot bar adds one.
pub fn suspended_map_degree(m: &PartitionedMap) -> (i64, i64) {
    (m.degree() + m.ty().d() + m.ty().d_bar() + 1, m.aux())
}

/// A scaled brace composition `coeff * {outer}{inners}` at a fixed target.
#[derive(Clone, Debug)]
pub struct Composite<'a> {
    pub coeff: Scalar,
    pub outer: &'a PartitionedMap,
    pub inners: Vec<&'a PartitionedMap>,
    pub terms: Vec<BraceTerm>,
    pub mode: SignMode,
    bar_inversions: Vec<(Vec<(Token, Token)>, usize)>,
}

impl<'a> Composite<'a> {
    pub fn new(
        coeff: Scalar,
        outer: &'a PartitionedMap,
        inners: Vec<&'a PartitionedMap>,
        target: &Partition,
        mode: SignMode,
    ) -> Self {
        let terms = if coeff.is_zero() || outer.is_zero() || inners.iter().any(|y| y.is_zero()) {
            Vec::new()
        } else {
            expand(outer, &inners, target)
        };
        let bar_inversions = match mode {
            SignMode::Plain => Vec::new(),
            SignMode::Suspended => {
                let types: Vec<Partition> = inners.iter().map(|y| y.ty().clone()).collect();
                terms
                    .iter()
                    .map(|t| t.bar_inversions(&types, target))
                    .collect()
            }
        };
        Composite {
            coeff,
            outer,
            inners,
            terms,
            mode,
            bar_inversions,
        }
    }

    /// The composite restricted to its `k`-th term.
    pub fn single_term(&self, k: usize) -> Self {
        let mut c = self.clone();
        c.terms = vec![self.terms[k].clone()];
        if !c.bar_inversions.is_empty() {
            c.bar_inversions = vec![self.bar_inversions[k].clone()];
        }
        c
    }

    /// Keeps only the terms whose inner maps all sit in one outer slot.
    pub fn merged_only(mut self) -> Self {
        let keep: Vec<bool> = self
            .terms
            .iter()
            .map(|t| t.configuration.inner_slot.windows(2).all(|w| w[0] == w[1]))
            .collect();
        let mut it = keep.iter();
        self.terms.retain(|_| *it.next().unwrap());
        if !self.bar_inversions.is_empty() {
            let mut it = keep.iter();
            self.bar_inversions.retain(|_| *it.next().unwrap());
        }
        self
    }

    pub fn degree(&self) -> i64 {
        self.outer.degree() + self.inners.iter().map(|y| y.degree()).sum::<i64>()
    }

    pub fn aux(&self) -> i64 {
        self.outer.aux() + self.inners.iter().map(|y| y.aux()).sum::<i64>()
    }

    /// Adds the value on a flat basis tuple to `out`.
    pub fn eval_into(&self, space: &GradedSpace, tuple: &[usize], out: &mut Vector) {
        if self.terms.is_empty() {
            return;
        }
        let k = self.inners.len();
        match self.mode {
            SignMode::Plain => {
                let mut written: Vec<BiDegree> = Vec::with_capacity(k + 1 + tuple.len());
                written.push(self.outer.bidegree());
                written.extend(self.inners.iter().map(|y| y.bidegree()));
                written.extend(
                    tuple
                        .iter()
                        .map(|&i| BiDegree::with_aux(space.degree(i), -1, space.aux(i))),
                );
                for term in &self.terms {
                    let sign = term.plain_sign(&written) * self.coeff;
                    self.eval_term(term, tuple, sign, None, space, out);
                }
            }
            SignMode::Suspended => {
                let parity = |t: &Token| match *t {
                    Token::Head => suspended_map_degree(self.outer),
                    Token::Inner(i) => suspended_map_degree(self.inners[i]),
                    Token::Arg(a) => (space.degree(tuple[a]) + 1, space.aux(tuple[a])),
                    Token::Bar(..) => (1, 0),
                };
                for (term, (inv, _)) in self.terms.iter().zip(&self.bar_inversions) {
                    let odd = inv
                        .iter()
                        .filter(|(p, q)| {
                            let (a, b) = (parity(p), parity(q));
                            (a.0 * b.0 + a.1 * b.1).rem_euclid(2) == 1
                        })
                        .count();
                    let sign = Scalar::sign(odd as i64) * self.coeff;
                    self.eval_term(term, tuple, sign, Some(()), space, out);
                }
            }
        }
    }

    fn eval_term(
        &self,
        term: &BraceTerm,
        tuple: &[usize],
        mut sign: Scalar,
        tilde: Option<()>,
        space: &GradedSpace,
        out: &mut Vector,
    ) {
        let k = self.inners.len();
        let mut inner_vals: Vec<Vector> = Vec::with_capacity(k);
        let mut inner_degs: Vec<i64> = Vec::with_capacity(k);
        let mut args = Vec::new();
        for (i, y) in self.inners.iter().enumerate() {
            args.clear();
            args.extend(term.inner_args[i].iter().map(|&a| tuple[a]));
            let v = y.eval_basis(&args);
            if v.is_zero() {
                return;
            }
            let deg = args.iter().map(|&b| space.degree(b)).sum::<i64>() + y.degree();
            if tilde.is_some() {
                let mut degs = Vec::with_capacity(args.len() + y.ty().num_slots());
                let mut it = args.iter();
                for (q, &c) in y.ty().slots().iter().enumerate() {
                    if q > 0 {
                        degs.push(0);
                    }
                    degs.extend(it.by_ref().take(c).map(|&b| space.degree(b)));
                }
                sign *= tilde_sign(&degs);
            }
            inner_vals.push(v);
            inner_degs.push(deg);
        }
        if tilde.is_some() {
            let mut degs = Vec::new();
            for (a, entries) in term.outer.iter().enumerate() {
                if a > 0 {
                    degs.push(0);
                }
                degs.extend(entries.iter().map(|e| match e {
                    Entry::Inner(i) => inner_degs[*i],
                    Entry::Arg(a) => space.degree(tuple[*a]),
                }));
            }
            sign *= tilde_sign(&degs);
        }
        // fast path: every inner output is a single basis vector
        let mut flat = Vec::with_capacity(self.outer.arity());
        let mut coeff = sign;
        let mut simple = true;
        for e in term.outer_flat() {
            match e {
                Entry::Arg(a) => flat.push(tuple[*a]),
                Entry::Inner(i) => {
                    let v = &inner_vals[*i];
                    if v.len() == 1 {
                        let (b, c) = v.iter().next().unwrap();
                        flat.push(b);
                        coeff *= *c;
                    } else {
                        simple = false;
                        break;
                    }
                }
            }
        }
        if simple {
            self.outer.eval_basis_into(&flat, coeff, out);
            return;
        }
        let basis: Vec<Vector> = tuple.iter().map(|&b| Vector::basis(b)).collect();
        let vals: Vec<&Vector> = term
            .outer_flat()
            .map(|e| match e {
                Entry::Inner(i) => &inner_vals[*i],
                Entry::Arg(a) => &basis[*a],
            })
            .collect();
        out.add_scaled(&self.outer.eval_flat(&vals), sign);
    }
}

/// A linear combination of brace compositions sharing one target type.
#[derive(Clone, Debug)]
pub struct BraceSum<'a> {
    pub target: Partition,
    pub parts: Vec<Composite<'a>>,
}

impl<'a> BraceSum<'a> {
    pub fn new(target: Partition) -> Self {
        BraceSum {
            target,
            parts: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Composite<'a>) {
        self.parts.push(c);
    }

    pub fn num_terms(&self) -> usize {
        self.parts.iter().map(|p| p.terms.len()).sum()
    }

    pub fn eval(&self, space: &GradedSpace, tuple: &[usize]) -> Vector {
        let mut out = Vector::zero();
        for p in &self.parts {
            p.eval_into(space, tuple, &mut out);
        }
        out
    }

    /// Super degree of the parts that have terms; the first one wins.
    pub fn degree(&self) -> i64 {
        self.parts
            .iter()
            .find(|p| !p.terms.is_empty())
            .map_or(0, |p| p.degree())
    }

    pub fn aux(&self) -> i64 {
        self.parts
            .iter()
            .find(|p| !p.terms.is_empty())
            .map_or(0, |p| p.aux())
    }

    /// Parities of the super degrees of the parts that have terms.
    pub fn degree_parities(&self) -> Vec<i64> {
        let mut p: Vec<i64> = self
            .parts
            .iter()
            .filter(|c| !c.terms.is_empty())
            .map(|c| c.degree().rem_euclid(2))
            .collect();
        p.sort();
        p.dedup();
        p
    }

    /// Evaluates on every basis tuple accepted by `keep`, in parallel.
    /// Tuples whose evaluation hit a truncation are left out of the table
    /// and returned, sorted, as the skip list.
    pub fn evaluate<F>(&self, space: &GradedSpace, keep: F) -> (PartitionedMap, Vec<Vec<usize>>)
    where
        F: Fn(&[usize]) -> bool + Sync,
    {
        let n = self.target.arity();
        let dim = space.dim();
        let mut skipped = Vec::new();
        let mut table = HashMap::new();
        if self.num_terms() > 0 {
            let total = dim.checked_pow(n as u32).expect("tuple count overflow");
            let results: Vec<(Vec<usize>, Option<Vector>)> = (0..total)
                .into_par_iter()
                .filter_map(|code| {
                    let tuple = decode_tuple(code, dim, n);
                    if !keep(&tuple) {
                        return None;
                    }
                    take_overflow();
                    let v = self.eval(space, &tuple);
                    if take_overflow() {
                        return Some((tuple, None));
                    }
                    (!v.is_zero()).then_some((tuple, Some(v)))
                })
                .collect();
            for (t, v) in results {
                match v {
                    Some(v) => {
                        table.insert(t, v);
                    }
                    None => skipped.push(t),
                }
            }
            skipped.sort();
        }
        (
            PartitionedMap::from_table_unchecked(
                self.target.clone(),
                self.degree(),
                self.aux(),
                table,
            ),
            skipped,
        )
    }

    pub fn to_map(&self, space: &GradedSpace) -> PartitionedMap {
        self.evaluate(space, |_| true).0
    }
}

/// Tuple with lexicographic index `code` (most significant first).
pub fn decode_tuple(mut code: usize, dim: usize, len: usize) -> Vec<usize> {
    let mut t = vec![0usize; len];
    for slot in t.iter_mut().rev() {
        *slot = code % dim;
        code /= dim;
    }
    t
}

/// `{x}{ys}` as a map of the target type.
pub fn compose(
    space: &GradedSpace,
    x: &PartitionedMap,
    ys: &[&PartitionedMap],
    target: &Partition,
) -> PartitionedMap {
    let mut sum = BraceSum::new(target.clone());
    sum.push(Composite::new(
        Scalar::ONE,
        x,
        ys.to_vec(),
        target,
        SignMode::Plain,
    ));
    let mut m = sum.to_map(space);
    if sum.num_terms() == 0 {
        m = PartitionedMap::zero_with_aux(
            target.clone(),
            x.degree() + ys.iter().map(|y| y.degree()).sum::<i64>(),
            x.aux() + ys.iter().map(|y| y.aux()).sum::<i64>(),
        );
    }
    m
}

/// Plain arity of `{x}{ys}`.
pub fn plain_result_arity(x: &PartitionedMap, ys: &[&PartitionedMap]) -> Result<usize, Error> {
    let n = x.arity() as i64 - ys.len() as i64 + ys.iter().map(|y| y.arity() as i64).sum::<i64>();
    usize::try_from(n)
        .map_err(|_| Error::Precondition("brace composition with negative arity".into()))
}

/// `{x}{ys}` for plain maps, at the natural plain arity.
pub fn compose_plain(
    space: &GradedSpace,
    x: &PartitionedMap,
    ys: &[&PartitionedMap],
) -> Result<PartitionedMap, Error> {
    if !x.ty().is_plain() || ys.iter().any(|y| !y.ty().is_plain()) {
        return Err(Error::Unsupported(
            "plain composition of partitioned maps".into(),
        ));
    }
    let n = plain_result_arity(x, ys)?;
    Ok(compose(space, x, ys, &Partition::plain(n)))
}

/// `[x,y] = {x}{y} - (-1)^{|x||y| + d(x)d(y)} {y}{x}` for plain maps.
pub fn g_bracket(
    space: &GradedSpace,
    x: &PartitionedMap,
    y: &PartitionedMap,
) -> Result<PartitionedMap, Error> {
    if !x.ty().is_plain() || !y.ty().is_plain() {
        return Err(Error::Unsupported(
            "Gerstenhaber bracket of partitioned maps".into(),
        ));
    }
    let n = (x.arity() + y.arity())
        .checked_sub(1)
        .ok_or_else(|| Error::Precondition("bracket of two vectors".into()))?;
    let target = Partition::plain(n);
    let eps = crate::sign::exchange_sign(&x.bidegree(), &y.bidegree());
    let mut sum = BraceSum::new(target.clone());
    sum.push(Composite::new(
        Scalar::ONE,
        x,
        vec![y],
        &target,
        SignMode::Plain,
    ));
    sum.push(Composite::new(-eps, y, vec![x], &target, SignMode::Plain));
    let mut m = sum.to_map(space);
    if sum.num_terms() == 0 {
        m = PartitionedMap::zero_with_aux(target, x.degree() + y.degree(), x.aux() + y.aux());
    }
    Ok(m)
}

/// A head followed by layers of plain maps, `{x}{y...}{z...}...`.
#[derive(Clone, Debug)]
pub struct BraceExpression {
    pub head: PartitionedMap,
    pub layers: Vec<Vec<PartitionedMap>>,
}

/// Evaluates a layered brace expression by composing layers left to right.
pub fn expand_nested(space: &GradedSpace, expr: &BraceExpression) -> Result<PartitionedMap, Error> {
    if !expr.head.ty().is_plain() || expr.layers.iter().flatten().any(|m| !m.ty().is_plain()) {
        return Err(Error::Unsupported(
            "nested braces over partitioned maps".into(),
        ));
    }
    let mut acc = expr.head.clone();
    for layer in &expr.layers {
        let refs: Vec<&PartitionedMap> = layer.iter().collect();
        acc = compose_plain(space, &acc, &refs)?;
    }
    Ok(acc)
}

/// Names of target arguments: `a1, a2, ...` for one slot, otherwise one
/// letter per slot.
pub fn argument_names(target: &Partition) -> Vec<String> {
    let mut out = Vec::new();
    for (t, &n) in target.slots().iter().enumerate() {
        let letter = (b'a' + (t % 26) as u8) as char;
        for j in 0..n {
            out.push(format!("{letter}{}", j + 1));
        }
    }
    out
}

/// One line of the term dump: `sign  placement  argument-order`.
///
/// The sign is symbolic in the super degrees; `d`-degree contributions are
/// folded into the leading `+`/`-`.
pub fn render_term(
    term: &BraceTerm,
    outer: &Partition,
    inners: &[Partition],
    target: &Partition,
) -> String {
    let k = inners.len();
    let args = argument_names(target);
    let inner_names: Vec<String> = if k == 1 {
        vec!["y".into()]
    } else {
        (1..=k).map(|i| format!("y{i}")).collect()
    };
    let name = |w: usize| -> String {
        if w == 0 {
            "x".into()
        } else if w <= k {
            inner_names[w - 1].clone()
        } else {
            args[w - k - 1].clone()
        }
    };
    let d_of = |w: usize| -> i64 {
        if w == 0 {
            outer.d()
        } else if w <= k {
            inners[w - 1].d()
        } else {
            -1
        }
    };
    let mut constant = 0i64;
    let mut symbolic = Vec::new();
    for &(p, q) in &term.inversions {
        constant += d_of(p) * d_of(q);
        symbolic.push(format!("|{}||{}|", name(p), name(q)));
    }
    let lead = if constant.rem_euclid(2) == 0 {
        "+"
    } else {
        "-"
    };
    let sign = if symbolic.is_empty() {
        lead.to_string()
    } else {
        format!("{lead}(-1)^{{{}}}", symbolic.join("+"))
    };

    let render_inner = |i: usize| -> String {
        let mut slots = Vec::new();
        let mut it = term.inner_args[i].iter();
        for &c in inners[i].slots() {
            let names: Vec<String> = it.by_ref().take(c).map(|&a| args[a].clone()).collect();
            slots.push(names.join(","));
        }
        format!("{}({})", inner_names[i], slots.join("|"))
    };
    let slots: Vec<String> = term
        .outer
        .iter()
        .map(|entries| {
            entries
                .iter()
                .map(|e| match e {
                    Entry::Inner(i) => render_inner(*i),
                    Entry::Arg(a) => args[*a].clone(),
                })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let placement = format!("x({})", slots.join("|"));
    let order: Vec<String> = term
        .order
        .iter()
        .filter(|&&w| w > k)
        .map(|&w| name(w))
        .collect();
    format!("{sign}  {placement}  {}", order.join(" "))
}
