//! Finite graded vector spaces with named bases, and sparse vectors over them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalar::Scalar;
use crate::Error;

/// One named basis element.
///
/// `degree` is the super degree `|a|`. `aux` is an optional second grading that
/// enters exchange signs alongside the super degree (the Hochschild space uses
/// it for the arity degree of a cochain); it is zero for ordinary spaces.
/// `weight` is an eigenvalue label and never enters signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
    pub aux: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

impl GradedSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self, Error> {
        let mut index = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.name.clone(), i).is_some() {
                return Err(Error::DuplicateBasis(b.name.clone()));
            }
        }
        Ok(GradedSpace { basis, index })
    }

    /// Space from `(name, super degree)` pairs with zero weights.
    pub fn from_degrees<S: AsRef<str>>(items: &[(S, i64)]) -> Result<Self, Error> {
        Self::new(
            items
                .iter()
                .map(|(n, d)| BasisElement {
                    name: n.as_ref().to_string(),
                    degree: *d,
                    weight: 0,
                    aux: 0,
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn aux(&self, i: usize) -> i64 {
        self.basis[i].aux
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.basis[i].weight
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// True when some basis element carries a nonzero auxiliary grading.
    pub fn has_aux(&self) -> bool {
        self.basis.iter().any(|b| b.aux != 0)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        assert!(i < self.dim());
        Vector::basis(i)
    }

    /// Super degree of `v` if all supported basis elements agree.
    pub fn homogeneous_degree(&self, v: &Vector) -> Option<i64> {
        let mut it = v.support().map(|i| self.degree(i));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, v: &Vector) -> bool {
        v.is_zero() || self.homogeneous_degree(v).is_some()
    }

    /// Renders `v` as `c*name + ...` in basis order; `0` for the zero vector.
    pub fn render(&self, v: &Vector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (i, c)) in v.iter().enumerate() {
            let name = self.name(i);
            if k == 0 {
                if c.is_one() {
                    out.push_str(name);
                } else if *c == Scalar::MINUS_ONE {
                    out.push('-');
                    out.push_str(name);
                } else {
                    out.push_str(&format!("{c}*{name}"));
                }
            } else if c.is_one() {
                out.push_str(&format!(" + {name}"));
            } else if *c == Scalar::MINUS_ONE {
                out.push_str(&format!(" - {name}"));
            } else if c.numer() < 0 {
                out.push_str(&format!(" - {}*{name}", -*c));
            } else {
                out.push_str(&format!(" + {c}*{name}"));
            }
        }
        out
    }
}

/// Sparse vector: basis index to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Vector {
    coeffs: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, Scalar::ONE);
        Vector { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Scalar)>>(terms: I) -> Self {
        let mut v = Vector::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(i).or_insert(Scalar::ZERO);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, *x * c);
        }
    }

    pub fn scaled(&self, c: Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            coeffs: self.coeffs.iter().map(|(i, x)| (*i, *x * c)).collect(),
        }
    }

    pub fn sum(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_scaled(other, Scalar::ONE);
        v
    }

    pub fn difference(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_scaled(other, Scalar::MINUS_ONE);
        v
    }

    /// Dense coefficient list of length `dim`.
    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::ZERO; dim];
        for (i, c) in self.iter() {
            out[i] = *c;
        }
        out
    }

    pub fn from_dense(values: &[Scalar]) -> Vector {
        Vector::from_terms(values.iter().copied().enumerate())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}
