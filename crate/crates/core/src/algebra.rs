//! Finite-dimensional graded algebras given by structure constants.

use crate::maps::{all_tuples, MegaMap, PartitionedMap};
use crate::partitions::Partition;
use crate::scalar::Scalar;
use crate::space::{GradedSpace, Vector};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub space: GradedSpace,
    /// `mult[i][j]` is the product of basis elements `i` and `j`.
    pub mult: Vec<Vec<Vector>>,
}

impl Algebra {
    pub fn new(space: GradedSpace, mult: Vec<Vec<Vector>>) -> Result<Self, Error> {
        let n = space.dim();
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                found: mult.len(),
            });
        }
        let a = Algebra { space, mult };
        a.product().validate(&a.space)?;
        Ok(a)
    }

    /// Algebra from a bilinear map of type `(2)` and degree 0.
    pub fn from_product(space: GradedSpace, m: &PartitionedMap) -> Result<Self, Error> {
        if m.ty() != &Partition::plain(2) {
            return Err(Error::Precondition(format!(
                "product must have type (2), not {}",
                m.ty()
            )));
        }
        let n = space.dim();
        let mult = (0..n)
            .map(|i| (0..n).map(|j| m.eval_basis(&[i, j])).collect())
            .collect();
        Algebra::new(space, mult)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.mult[i][j], *a * *b);
            }
        }
        out
    }

    /// Product of a word of basis elements, left to right; the unit-free
    /// empty product is not defined.
    pub fn word_product(&self, w: &[usize]) -> Vector {
        let mut acc = Vector::basis(w[0]);
        for &j in &w[1..] {
            acc = self.mul(&acc, &Vector::basis(j));
        }
        acc
    }

    pub fn product(&self) -> PartitionedMap {
        let mut entries = Vec::new();
        for t in all_tuples(self.dim(), 2) {
            let v = self.mult[t[0]][t[1]].clone();
            if !v.is_zero() {
                entries.push((t, v));
            }
        }
        PartitionedMap::table(&self.space, Partition::plain(2), 0, entries)
            .expect("validated product")
    }

    /// `a_1 ... a_n` as a map of type `(n)`.
    pub fn iterated_product(&self, n: usize) -> PartitionedMap {
        let mut entries = Vec::new();
        for t in all_tuples(self.dim(), n) {
            let v = self.word_product(&t);
            if !v.is_zero() {
                entries.push((t, v));
            }
        }
        PartitionedMap::table(&self.space, Partition::plain(n), 0, entries)
            .expect("products are homogeneous")
    }

    /// `m_n` is the iterated product for even `n` and zero for odd `n`.
    pub fn even_iterated_structure(&self, max_n: usize) -> MegaMap {
        let mut m = MegaMap::new();
        for n in (2..=max_n).step_by(2) {
            m.insert(self.iterated_product(n));
        }
        m
    }

    /// First triple violating associativity.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = self.mul(&self.mult[i][j], &Vector::basis(k));
                    let r = self.mul(&Vector::basis(i), &self.mult[j][k]);
                    if l != r {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Whether `ab = (-1)^{|a||b|} ba` on basis elements.
    pub fn is_super_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s = Scalar::sign(self.space.degree(i) * self.space.degree(j));
                self.mult[i][j] == self.mult[j][i].scaled(s)
            })
        })
    }

    /// Basis element acting as a two-sided unit, if any.
    pub fn unit(&self) -> Option<usize> {
        let n = self.dim();
        (0..n).find(|&u| {
            (0..n)
                .all(|i| self.mult[u][i] == Vector::basis(i) && self.mult[i][u] == Vector::basis(i))
        })
    }

    /// `k[e]/(e^2)` with basis `1, e` in degree 0.
    pub fn dual_numbers() -> Self {
        let space = GradedSpace::from_degrees(&[("1", 0), ("e", 0)]).unwrap();
        let (one, e) = (Vector::basis(0), Vector::basis(1));
        Algebra::new(space, vec![vec![one, e.clone()], vec![e, Vector::zero()]]).unwrap()
    }

    /// Upper triangular `2 x 2` matrices with basis `E11, E12, E22`.
    pub fn upper_triangular() -> Self {
        let space = GradedSpace::from_degrees(&[("E11", 0), ("E12", 0), ("E22", 0)]).unwrap();
        let z = Vector::zero;
        let b = Vector::basis;
        let mult = vec![
            vec![b(0), b(1), z()],
            vec![z(), z(), b(1)],
            vec![z(), z(), b(2)],
        ];
        Algebra::new(space, mult).unwrap()
    }

    /// Exterior algebra on `k` odd generators `t1..tk`; basis elements are
    /// the monomials, named `1`, `t1`, `t1t2`, ...
    pub fn exterior(k: usize) -> Self {
        Algebra::nilpotent_generators(&vec![1; k])
    }

    /// Super commutative algebra on generators `t1..tk` of the given degrees,
    /// each squaring to zero. With odd degrees only this is the exterior
    /// algebra.
    pub fn nilpotent_generators(degrees: &[i64]) -> Self {
        let k = degrees.len();
        let subsets: Vec<u32> = {
            let mut v: Vec<u32> = (0..(1u32 << k)).collect();
            v.sort_by_key(|s| (s.count_ones(), s.reverse_bits()));
            v
        };
        let name = |s: u32| {
            if s == 0 {
                "1".to_string()
            } else {
                (0..k)
                    .filter(|i| s >> i & 1 == 1)
                    .map(|i| format!("t{}", i + 1))
                    .collect()
            }
        };
        let degree = |s: u32| {
            (0..k)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| degrees[i])
                .sum::<i64>()
        };
        let items: Vec<(String, i64)> = subsets.iter().map(|&s| (name(s), degree(s))).collect();
        let space = GradedSpace::from_degrees(&items).unwrap();
        let index = |s: u32| subsets.iter().position(|&x| x == s).unwrap();
        let mut mult = vec![vec![Vector::zero(); subsets.len()]; subsets.len()];
        for (i, &a) in subsets.iter().enumerate() {
            for (j, &b) in subsets.iter().enumerate() {
                if a & b != 0 {
                    continue;
                }
                // sign of merging the two sorted generator lists
                let mut swaps = 0;
                for x in 0..k {
                    if b >> x & 1 == 1 {
                        swaps += (x + 1..k)
                            .filter(|&y| a >> y & 1 == 1)
                            .map(|y| degrees[x] * degrees[y])
                            .sum::<i64>();
                    }
                }
                mult[i][j] = Vector::basis(index(a | b)).scaled(Scalar::sign(swaps));
            }
        }
        Algebra::new(space, mult).unwrap()
    }
}
