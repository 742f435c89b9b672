//! The truncated tensor coalgebra `T^{<=N} V` and coderivations.
//!
//! Words are lists of basis indices. An element of `T V` is a sparse
//! combination of words; an element of `T V (x)' T V` is a combination of
//! word pairs.

use std::collections::BTreeMap;

use crate::maps::{MegaMap, PartitionedMap};
use crate::partitions::Partition;
use crate::scalar::Scalar;
use crate::sign::BiDegree;
use crate::space::GradedSpace;
use crate::Error;

pub type TensorWord = Vec<usize>;

/// Combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElem(pub BTreeMap<TensorWord, Scalar>);

/// Combination of word pairs (second-level words with two blocks).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorPair(pub BTreeMap<(TensorWord, TensorWord), Scalar>);

impl TensorElem {
    pub fn word(w: TensorWord) -> Self {
        let mut m = BTreeMap::new();
        m.insert(w, Scalar::ONE);
        TensorElem(m)
    }

    pub fn add_term(&mut self, w: TensorWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w.clone()).or_insert(Scalar::ZERO);
        *e += c;
        if e.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl TensorPair {
    pub fn add_term(&mut self, u: TensorWord, v: TensorWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        let e = self.0.entry(key.clone()).or_insert(Scalar::ZERO);
        *e += c;
        if e.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPair, c: Scalar) {
        for ((u, v), x) in &other.0 {
            self.add_term(u.clone(), v.clone(), *x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// All `n+1` ways to cut a word in two.
pub fn coproduct(w: &[usize]) -> Vec<(TensorWord, TensorWord)> {
    (0..=w.len())
        .map(|u| (w[..u].to_vec(), w[u..].to_vec()))
        .collect()
}

/// Concatenation product.
pub fn concat(u: &[usize], v: &[usize]) -> TensorWord {
    let mut w = u.to_vec();
    w.extend_from_slice(v);
    w
}

/// Linear operator on `T^{<=N} V`, stored as the image of every word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorOperator {
    pub images: BTreeMap<TensorWord, TensorElem>,
}

impl TensorOperator {
    pub fn apply_word(&self, w: &[usize]) -> TensorElem {
        self.images.get(w).cloned().unwrap_or_default()
    }

    pub fn apply(&self, x: &TensorElem) -> TensorElem {
        let mut out = TensorElem::default();
        for (w, c) in &x.0 {
            for (w2, c2) in &self.apply_word(w).0 {
                out.add_term(w2.clone(), *c * *c2);
            }
        }
        out
    }

    pub fn compose(&self, other: &TensorOperator) -> TensorOperator {
        TensorOperator {
            images: other
                .images
                .keys()
                .map(|w| (w.clone(), self.apply(&other.apply_word(w))))
                .collect(),
        }
    }

    pub fn combine(&self, other: &TensorOperator, c: Scalar) -> TensorOperator {
        let mut images = self.images.clone();
        for (w, img) in &other.images {
            let e = images.entry(w.clone()).or_default();
            for (w2, x) in &img.0 {
                e.add_term(w2.clone(), *x * c);
            }
        }
        images.retain(|_, v| !v.is_zero());
        TensorOperator { images }
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(|v| v.is_zero())
    }
}

/// `T^{<=N} V` over a graded space.
#[derive(Clone, Debug)]
pub struct TruncatedTensor<'a> {
    pub space: &'a GradedSpace,
    pub max_len: usize,
}

impl<'a> TruncatedTensor<'a> {
    pub fn new(space: &'a GradedSpace, max_len: usize) -> Self {
        TruncatedTensor { space, max_len }
    }

    /// Every word of length `0..=N`, shortest first.
    pub fn words(&self) -> Vec<TensorWord> {
        let mut out = Vec::new();
        for len in 0..=self.max_len {
            out.extend(crate::maps::all_tuples(self.space.dim(), len));
        }
        out
    }

    fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&i| self.space.degree(i)).sum()
    }

    /// Exponent of the sign for an operator of bidegree `(s, d)` passing
    /// the vectors of `w`.
    fn passing_parity(&self, s: i64, d: i64, w: &[usize]) -> i64 {
        w.iter()
            .map(|&i| {
                let x = BiDegree::new(s, d);
                let a = BiDegree::with_aux(self.space.degree(i), -1, self.space.aux(i));
                i64::from(x.exchange_parity(&a))
            })
            .sum()
    }

    /// The coderivation `delta(m)`. `flip` negates the term applying the
    /// arity-`k` component at position `j` (1-based), for mutation tests.
    pub fn delta(
        &self,
        m: &MegaMap,
        flip: Option<(usize, usize)>,
    ) -> Result<TensorOperator, Error> {
        if !m.is_plain() {
            return Err(Error::Unsupported(
                "coderivation of a partitioned map".into(),
            ));
        }
        if m.plain(0).is_some_and(|c| !c.is_zero()) {
            return Err(Error::Unsupported(
                "coderivation of a map with a vector component".into(),
            ));
        }
        let mut images = BTreeMap::new();
        for w in self.words() {
            let mut out = TensorElem::default();
            for comp in m.components() {
                let k = comp.arity();
                if k == 0 || k > w.len() {
                    continue;
                }
                for j in 0..=(w.len() - k) {
                    let mut sign =
                        Scalar::sign(self.passing_parity(comp.degree(), comp.ty().d(), &w[..j]));
                    if flip == Some((k, j + 1)) {
                        sign = -sign;
                    }
                    for (b, c) in comp.eval_basis(&w[j..j + k]).iter() {
                        let mut nw = w[..j].to_vec();
                        nw.push(b);
                        nw.extend_from_slice(&w[j + k..]);
                        out.add_term(nw, sign * *c);
                    }
                }
            }
            if !out.is_zero() {
                images.insert(w, out);
            }
        }
        Ok(TensorOperator { images })
    }

    /// `Delta(X(w)) - (X (x) 1 + 1 (x) X)(Delta(w))` for every word; returns
    /// the nonzero defects. Each term of `X` is treated as homogeneous with
    /// the bidegree read off from its input and output words.
    pub fn coderivation_defect(&self, x: &TensorOperator) -> Vec<(TensorWord, TensorPair)> {
        let mut out = Vec::new();
        for w in self.words() {
            let mut defect = TensorPair::default();
            for (w2, c) in &x.apply_word(&w).0 {
                for (u, v) in coproduct(w2) {
                    defect.add_term(u, v, *c);
                }
            }
            for (u, v) in coproduct(&w) {
                for (u2, c) in &x.apply_word(&u).0 {
                    defect.add_term(u2.clone(), v.clone(), -*c);
                }
                for (v2, c) in &x.apply_word(&v).0 {
                    let s = self.word_degree(v2) - self.word_degree(&v);
                    let d = v.len() as i64 - v2.len() as i64;
                    let sign = Scalar::sign(self.passing_parity(s, d, &u));
                    defect.add_term(u.clone(), v2.clone(), -*c * sign);
                }
            }
            if !defect.is_zero() {
                out.push((w, defect));
            }
        }
        out
    }

    /// Projection of a coderivation to `V`: component `k` sends a word of
    /// length `k` to the length-one part of its image.
    pub fn project(&self, x: &TensorOperator) -> Result<MegaMap, Error> {
        if let Some((w, _)) = self.coderivation_defect(x).into_iter().next() {
            let names: Vec<&str> = w.iter().map(|&i| self.space.name(i)).collect();
            return Err(Error::Precondition(format!(
                "not a coderivation; witness word ({})",
                names.join(",")
            )));
        }
        let mut by_arity: BTreeMap<usize, Vec<(Vec<usize>, crate::space::Vector)>> =
            BTreeMap::new();
        for (w, img) in &x.images {
            if w.is_empty() {
                continue;
            }
            let mut v = crate::space::Vector::zero();
            for (w2, c) in &img.0 {
                if w2.len() == 1 {
                    v.add_term(w2[0], *c);
                }
            }
            if !v.is_zero() {
                by_arity.entry(w.len()).or_default().push((w.clone(), v));
            }
        }
        let mut m = MegaMap::new();
        for (k, entries) in by_arity {
            let (w, v) = &entries[0];
            let o = v.support().next().unwrap();
            let degree = self.space.degree(o) - self.word_degree(w);
            m.insert(PartitionedMap::table(
                self.space,
                Partition::plain(k),
                degree,
                entries,
            )?);
        }
        Ok(m)
    }
}
