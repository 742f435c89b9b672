//! Partitions and the combinatorics of substitution.
//!
//! A [`Partition`] `(j1|...|js)` is the slot structure of a multilinear map.
//! [`SubstitutionPattern`]s are rigid placements of maps into an outer map and
//! compose by summing runs of entries. [`configurations`] enumerates the
//! slot-level placements behind partitioned braces, and [`factorizations`]
//! finds every `outer * [inners]` product that contains a target partition.

use std::fmt;
use std::str::FromStr;

use crate::scalar::Scalar;
use crate::sign::{koszul_sign, BiDegree};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    slots: Vec<usize>,
}

impl Partition {
    pub fn new(slots: Vec<usize>) -> Result<Self, Error> {
        if slots.is_empty() {
            return Err(Error::EmptyPartition);
        }
        Ok(Partition { slots })
    }

    pub fn plain(n: usize) -> Self {
        Partition { slots: vec![n] }
    }

    /// `(1|0)`, the type of the identity selector.
    pub fn selector() -> Self {
        Partition { slots: vec![1, 0] }
    }

    /// `(0|1)`.
    pub fn co_selector() -> Self {
        Partition { slots: vec![0, 1] }
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn num_slots(&self) -> usize {
        self.slots.len()
    }

    pub fn arity(&self) -> usize {
        self.slots.iter().sum()
    }

    pub fn is_plain(&self) -> bool {
        self.slots.len() == 1
    }

    pub fn has_zero_slot(&self) -> bool {
        self.slots.contains(&0)
    }

    /// Arity minus one.
    pub fn d(&self) -> i64 {
        self.arity() as i64 - 1
    }

    /// Number of slots minus two.
    pub fn d_bar(&self) -> i64 {
        self.slots.len() as i64 - 2
    }

    /// Starting offset of each slot in the flat argument list.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.slots
            .iter()
            .map(|s| {
                let o = acc;
                acc += s;
                o
            })
            .collect()
    }

    /// All partitions with exactly `num_slots` slots, each at most `max_slot`,
    /// in lexicographic order.
    pub fn all_with(num_slots: usize, max_slot: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = vec![0; num_slots];
        loop {
            out.push(Partition { slots: cur.clone() });
            let mut i = num_slots;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < max_slot {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Every partition whose slot sum lies in `1..=max_sum` and whose slot
    /// count is at most `max_slots`.
    pub fn all_up_to(max_sum: usize, max_slots: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        for s in 1..=max_slots {
            for p in Partition::all_with(s, max_sum) {
                if (1..=max_sum).contains(&p.arity()) {
                    out.push(p);
                }
            }
        }
        out.sort_by(|a, b| {
            (a.arity(), a.num_slots(), &a.slots).cmp(&(b.arity(), b.num_slots(), &b.slots))
        });
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slots.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join("|"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(1|2)`, `1|2` or `3`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let slots = inner
            .split('|')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Syntax(format!("bad partition `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(slots)
    }
}

/// One entry of a rigid substitution pattern.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PatternEntry {
    /// `r` consecutive arguments of the outer map left empty.
    Free(usize),
    /// A specific map of the given type placed in one argument.
    Slot(Partition),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubstitutionPattern {
    pub entries: Vec<PatternEntry>,
}

impl SubstitutionPattern {
    pub fn new(entries: Vec<PatternEntry>) -> Self {
        SubstitutionPattern { entries }
    }

    /// Arity of the resulting map: every integer in the symbol, with or
    /// without parentheses.
    pub fn arity(&self) -> usize {
        self.entries
            .iter()
            .map(|e| match e {
                PatternEntry::Free(r) => *r,
                PatternEntry::Slot(p) => p.arity(),
            })
            .sum()
    }

    /// Arity of the outer map the pattern substitutes into.
    pub fn outer_arity(&self) -> usize {
        self.entries
            .iter()
            .map(|e| match e {
                PatternEntry::Free(r) => *r,
                PatternEntry::Slot(_) => 1,
            })
            .sum()
    }

    /// Number of maps a right-hand pattern must supply: the sum of the
    /// parenthesized arities.
    pub fn demanded(&self) -> usize {
        self.entries
            .iter()
            .map(|e| match e {
                PatternEntry::Free(_) => 0,
                PatternEntry::Slot(p) => p.arity(),
            })
            .sum()
    }

    /// Right-hand free runs `r` become `r` copies of `(1)`.
    fn expanded(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for e in &self.entries {
            match e {
                PatternEntry::Free(r) => out.extend(std::iter::repeat_n(Partition::plain(1), *r)),
                PatternEntry::Slot(p) => out.push(p.clone()),
            }
        }
        out
    }
}

impl fmt::Display for SubstitutionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| match e {
                PatternEntry::Free(r) => r.to_string(),
                PatternEntry::Slot(p) => p.to_string(),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Splits `s` at top-level occurrences of any of `seps`, keeping separators.
fn split_top_level(s: &str, seps: &[char]) -> Result<Vec<(String, Option<char>)>, Error> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Syntax(format!("unbalanced parentheses in `{s}`")));
                }
                cur.push(ch);
            }
            c if depth == 0 && seps.contains(&c) => {
                out.push((std::mem::take(&mut cur), Some(c)));
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Syntax(format!("unbalanced parentheses in `{s}`")));
    }
    out.push((cur, None));
    Ok(out)
}

fn strip_outer(s: &str) -> Result<&str, Error> {
    let t = s.trim();
    t.strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Syntax(format!("expected a parenthesized list, got `{s}`")))
}

impl FromStr for SubstitutionPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let body = strip_outer(s)?;
        let mut entries = Vec::new();
        for (item, _) in split_top_level(body, &[','])? {
            let item = item.trim();
            if item.starts_with('(') {
                entries.push(PatternEntry::Slot(item.parse()?));
            } else {
                let r: usize = item
                    .parse()
                    .map_err(|_| Error::Syntax(format!("bad pattern entry `{item}`")))?;
                if r == 0 {
                    return Err(Error::Syntax("free runs must be positive".into()));
                }
                entries.push(PatternEntry::Free(r));
            }
        }
        Ok(SubstitutionPattern { entries })
    }
}

/// Composes two rigid substitution patterns.
///
/// Each parenthesized outer entry `(n)` absorbs the next `n` right-hand
/// entries and becomes their merged type; outer free runs are copied.
pub fn compose_patterns(
    outer: &SubstitutionPattern,
    inner: &SubstitutionPattern,
) -> Result<SubstitutionPattern, Error> {
    let supply = inner.expanded();
    let demanded = outer.demanded();
    if supply.len() != demanded {
        return Err(Error::ArityMismatch {
            expected: demanded,
            found: supply.len(),
        });
    }
    let mut it = supply.into_iter();
    let mut entries = Vec::with_capacity(outer.entries.len());
    for e in &outer.entries {
        match e {
            PatternEntry::Free(r) => entries.push(PatternEntry::Free(*r)),
            PatternEntry::Slot(p) => {
                if !p.is_plain() {
                    return Err(Error::Unsupported(format!(
                        "pattern composition into the partitioned entry {p}"
                    )));
                }
                let items: Vec<MergeItem> =
                    it.by_ref().take(p.arity()).map(MergeItem::Part).collect();
                entries.push(PatternEntry::Slot(merge(&items)));
            }
        }
    }
    Ok(SubstitutionPattern { entries })
}

/// Items of a merge list: partitions, free runs, and outer bars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MergeItem {
    Part(Partition),
    Free(usize),
    Bar,
}

/// Type of a rigid partitioned substitution: inner parentheses are erased,
/// bars survive and commas become additions. Free runs act as `(r)`.
pub fn merge(items: &[MergeItem]) -> Partition {
    let mut slots = vec![0usize];
    for item in items {
        match item {
            MergeItem::Part(p) => {
                *slots.last_mut().unwrap() += p.slots[0];
                slots.extend_from_slice(&p.slots[1..]);
            }
            MergeItem::Free(r) => *slots.last_mut().unwrap() += r,
            MergeItem::Bar => slots.push(0),
        }
    }
    Partition { slots }
}

/// Parses merge lists such as `((1|2),3,(5|7)|6)`.
pub fn parse_merge_items(s: &str) -> Result<Vec<MergeItem>, Error> {
    let body = strip_outer(s)?;
    let mut items = Vec::new();
    for (item, sep) in split_top_level(body, &[',', '|'])? {
        let item = item.trim();
        if item.starts_with('(') {
            items.push(MergeItem::Part(item.parse()?));
        } else {
            let r: usize = item
                .parse()
                .map_err(|_| Error::Syntax(format!("bad merge entry `{item}`")))?;
            items.push(MergeItem::Free(r));
        }
        if sep == Some('|') {
            items.push(MergeItem::Bar);
        }
    }
    Ok(items)
}

/// Per argument slot: left leftovers, consumed block, right leftovers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Splitting {
    pub parts: Vec<(usize, usize, usize)>,
}

/// Every way of cutting slot `j` of `n_j` vectors into `(u, i_j, v)`.
/// Empty when some `i_j > n_j`.
pub fn enumerate_splittings(arg_slots: &[usize], inner_slots: &[usize]) -> Vec<Splitting> {
    assert_eq!(
        arg_slots.len(),
        inner_slots.len(),
        "slot lists must have equal length"
    );
    if arg_slots.iter().zip(inner_slots).any(|(n, i)| i > n) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut u = vec![0usize; arg_slots.len()];
    loop {
        out.push(Splitting {
            parts: arg_slots
                .iter()
                .zip(inner_slots)
                .zip(&u)
                .map(|((n, i), u)| (*u, *i, n - i - u))
                .collect(),
        });
        let mut j = u.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if u[j] < arg_slots[j] - inner_slots[j] {
                u[j] += 1;
                for x in u.iter_mut().skip(j + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// A permutation of concatenated blocks preserving each block's order.
///
/// `order[k]` is the position, in the concatenation, of the symbol placed at
/// position `k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Unshuffle {
    pub order: Vec<usize>,
    pub sign: Scalar,
}

/// Every interleaving of the blocks that keeps each block in order, with the
/// Koszul sign of the rearrangement.
pub fn unshuffles(blocks: &[Vec<BiDegree>]) -> Vec<Unshuffle> {
    let sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let degrees: Vec<BiDegree> = blocks.iter().flatten().copied().collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    interleavings(&sizes)
        .into_iter()
        .map(|labels| {
            let mut next = vec![0usize; sizes.len()];
            let order: Vec<usize> = labels
                .iter()
                .map(|&b| {
                    let pos = offsets[b] + next[b];
                    next[b] += 1;
                    pos
                })
                .collect();
            let sign = koszul_sign(&degrees, &order);
            Unshuffle { order, sign }
        })
        .collect()
}

/// All sequences with `counts[b]` copies of label `b`, lexicographically.
pub fn interleavings(counts: &[usize]) -> Vec<Vec<usize>> {
    fn rec(counts: &mut [usize], cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for b in 0..counts.len() {
            if counts[b] > 0 {
                counts[b] -= 1;
                cur.push(b);
                rec(counts, cur, total, out);
                cur.pop();
                counts[b] += 1;
            }
        }
    }
    let total = counts.iter().sum();
    let mut out = Vec::new();
    rec(
        &mut counts.to_vec(),
        &mut Vec::with_capacity(total),
        total,
        &mut out,
    );
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of order-preserving interleavings of blocks with the given sizes.
pub fn unshuffle_count(sizes: &[usize]) -> u128 {
    let mut rest: usize = sizes.iter().sum();
    let mut acc = 1u128;
    for &s in sizes {
        acc *= binomial(rest, s);
        rest -= s;
    }
    acc
}

/// Number of terms in `{m_(n)}{m_(i1|...|ik)}{a^(1)|...|a^(k)}` with
/// `n_j` vectors in slot `j`.
pub fn count_terms(arg_slots: &[usize], inner_slots: &[usize]) -> u128 {
    enumerate_splittings(arg_slots, inner_slots)
        .iter()
        .map(|sp| {
            let u: Vec<usize> = sp.parts.iter().map(|p| p.0).collect();
            let v: Vec<usize> = sp.parts.iter().map(|p| p.2).collect();
            unshuffle_count(&u) * unshuffle_count(&v)
        })
        .sum()
}

/// Slot-level placement of inner maps into an outer map for a target type.
///
/// Inner `i` sits in outer slot `inner_slot[i]` at argument position
/// `inner_pos[i]` of that slot. Outer slot `a` covers the target slots
/// `ranges[a].0 .. ranges[a].0 + ranges[a].1`; every inner placed there covers
/// that whole range with its own slots, and the free arguments of the outer
/// slot are drawn from the same range.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub inner_slot: Vec<usize>,
    pub inner_pos: Vec<usize>,
    pub ranges: Vec<(usize, usize)>,
}

impl Configuration {
    /// Rigid pattern for plain outer maps, e.g. `(1,(1|3),2)`.
    pub fn pattern(&self, outer: &Partition, inners: &[Partition]) -> String {
        let mut slot_strs = Vec::new();
        for (a, &size) in outer.slots().iter().enumerate() {
            let mut entries: Vec<String> = Vec::new();
            let mut free = 0;
            for p in 0..size {
                match (0..inners.len()).find(|&i| self.inner_slot[i] == a && self.inner_pos[i] == p)
                {
                    Some(i) => {
                        if free > 0 {
                            entries.push(free.to_string());
                            free = 0;
                        }
                        entries.push(inners[i].to_string());
                    }
                    None => free += 1,
                }
            }
            if free > 0 {
                entries.push(free.to_string());
            }
            slot_strs.push(entries.join(","));
        }
        format!("({})", slot_strs.join("|"))
    }
}

/// All slot-level configurations of `{outer}{inners}` whose result has the
/// `target` type, in canonical order. Argument-level interleavings are left
/// to the braces engine.
pub fn configurations(
    outer: &Partition,
    inners: &[Partition],
    target: &Partition,
) -> Vec<Configuration> {
    let k = inners.len();
    let r = outer.num_slots();
    let mut out = Vec::new();
    // non-decreasing slot assignment, then increasing positions inside slots
    let mut assign = vec![0usize; k];
    loop {
        let ok_counts =
            (0..r).all(|a| assign.iter().filter(|&&s| s == a).count() <= outer.slots()[a]);
        if ok_counts {
            if let Some(ranges) = slot_ranges(outer, inners, &assign, target) {
                for pos in positions_for(outer, &assign) {
                    out.push(Configuration {
                        inner_slot: assign.clone(),
                        inner_pos: pos,
                        ranges: ranges.clone(),
                    });
                }
            }
        }
        // next non-decreasing sequence over 0..r
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if assign[i] + 1 < r {
                let v = assign[i] + 1;
                for x in assign.iter_mut().skip(i) {
                    *x = v;
                }
                break;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

fn slot_ranges(
    outer: &Partition,
    inners: &[Partition],
    assign: &[usize],
    target: &Partition,
) -> Option<Vec<(usize, usize)>> {
    let mut ranges = Vec::with_capacity(outer.num_slots());
    let mut start = 0;
    for (a, &size) in outer.slots().iter().enumerate() {
        let here: Vec<&Partition> = assign
            .iter()
            .zip(inners)
            .filter(|(s, _)| **s == a)
            .map(|(_, p)| p)
            .collect();
        let len = match here.first() {
            Some(p) => p.num_slots(),
            None => 1,
        };
        if here.iter().any(|p| p.num_slots() != len) {
            return None;
        }
        if start + len > target.num_slots() {
            return None;
        }
        let free = size - here.len();
        let mut leftover_total = 0;
        for q in 0..len {
            let consumed: usize = here.iter().map(|p| p.slots()[q]).sum();
            let avail = target.slots()[start + q];
            if consumed > avail {
                return None;
            }
            leftover_total += avail - consumed;
        }
        if leftover_total != free {
            return None;
        }
        ranges.push((start, len));
        start += len;
    }
    (start == target.num_slots()).then_some(ranges)
}

fn positions_for(outer: &Partition, assign: &[usize]) -> Vec<Vec<usize>> {
    let mut per_slot: Vec<Vec<Vec<usize>>> = Vec::new();
    for (a, &size) in outer.slots().iter().enumerate() {
        let m = assign.iter().filter(|&&s| s == a).count();
        per_slot.push(combinations(size, m));
    }
    let mut out = vec![Vec::new()];
    for choices in per_slot {
        let mut next = Vec::new();
        for prefix in &out {
            for c in &choices {
                let mut p: Vec<usize> = prefix.clone();
                p.extend_from_slice(c);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Increasing `m`-subsets of `0..n`, lexicographically.
pub fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < m - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// A product `outer * [inners]` that contains the target type.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Factorization {
    pub outer: Partition,
    pub inners: Vec<Partition>,
    /// Slot-level placements realizing the target.
    pub placements: Vec<Configuration>,
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.inners.iter().map(|p| p.to_string()).collect();
        if inner.len() == 1 {
            write!(f, "{}*{}", self.outer, inner[0])
        } else {
            write!(f, "{}*[{}]", self.outer, inner.join(","))
        }
    }
}

/// Whether `inners` may appear together as a multi-map product. A single
/// inner of any type is allowed; two or more must each span at least two
/// slots with no empty slot.
pub fn admissible_inner_list(inners: &[Partition]) -> bool {
    inners.len() <= 1
        || inners
            .iter()
            .all(|p| p.num_slots() >= 2 && !p.has_zero_slot())
}

/// Every product `outer * [inner_1, ..., inner_k]` with `1 <= k <= max_inner`
/// whose expansion contains the `target` type. Maps of total arity zero are
/// excluded. Output is sorted by inner count, then outer, then inners.
pub fn factorizations(target: &Partition, max_inner: usize) -> Vec<Factorization> {
    let n = target.arity();
    let s = target.num_slots();
    let max_slot = *target.slots().iter().max().unwrap_or(&0);
    let mut out = Vec::new();
    // inner candidates: any slot count up to s, slot sizes up to the largest target slot
    let mut inner_candidates = Vec::new();
    for c in 1..=s {
        for p in Partition::all_with(c, max_slot) {
            if p.arity() >= 1 && p.arity() <= n {
                inner_candidates.push(p);
            }
        }
    }
    for k in 1..=max_inner {
        for inners in inner_lists(&inner_candidates, k) {
            if !admissible_inner_list(&inners) {
                continue;
            }
            let inner_total: usize = inners.iter().map(|p| p.arity()).sum();
            // n = N - k + inner_total
            if n + k < inner_total {
                continue;
            }
            let outer_arity = n + k - inner_total;
            if outer_arity == 0 {
                continue;
            }
            for r in 1..=s {
                for outer in Partition::all_with(r, outer_arity) {
                    if outer.arity() != outer_arity {
                        continue;
                    }
                    let placements = configurations(&outer, &inners, target);
                    if !placements.is_empty() {
                        out.push(Factorization {
                            outer,
                            inners: inners.clone(),
                            placements,
                        });
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.inners.len(), &a.outer, &a.inners).cmp(&(b.inners.len(), &b.outer, &b.inners))
    });
    out
}

/// Like [`factorizations`], with outer and inner types drawn from `types`.
pub fn factorizations_among(
    target: &Partition,
    max_inner: usize,
    types: &[Partition],
) -> Vec<Factorization> {
    let n = target.arity();
    let usable: Vec<Partition> = types.iter().filter(|p| p.arity() >= 1).cloned().collect();
    let mut out = Vec::new();
    for k in 1..=max_inner {
        for inners in inner_lists(&usable, k) {
            if !admissible_inner_list(&inners) {
                continue;
            }
            let inner_total: usize = inners.iter().map(|p| p.arity()).sum();
            for outer in &usable {
                if outer.arity() + inner_total != n + k {
                    continue;
                }
                let placements = configurations(outer, &inners, target);
                if !placements.is_empty() {
                    out.push(Factorization {
                        outer: outer.clone(),
                        inners: inners.clone(),
                        placements,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.inners.len(), &a.outer, &a.inners).cmp(&(b.inners.len(), &b.outer, &b.inners))
    });
    out
}

fn inner_lists(candidates: &[Partition], k: usize) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for prefix in &out {
            for c in candidates {
                let mut p: Vec<Partition> = prefix.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}
