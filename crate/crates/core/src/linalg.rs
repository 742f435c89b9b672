//! Exact kernel/image/quotient computations over the rationals.
//!
//! Matrices here are small (at most a few hundred rows) and dense row
//! reduction over exact rationals is plenty.

use crate::scalar::Scalar;
use crate::space::Vector;
use crate::Error;

/// Dense matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::ONE;
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]` (coordinates below `rows`).
    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, v) in columns.iter().enumerate() {
            for (i, c) in v.iter() {
                assert!(i < rows, "column entry outside the declared row count");
                m[(i, j)] = *c;
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, c) in r.iter().enumerate() {
                m[(i, j)] = *c;
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_terms((0..self.rows).map(|i| (i, self[(i, j)])))
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (j, c) in v.iter() {
            for i in 0..self.rows {
                let a = self[(i, j)];
                if !a.is_zero() {
                    out.add_term(i, a * *c);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                self[(r, j)] *= inv;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self[(r, j)];
                    if !v.is_zero() {
                        self[(i, j)] -= f * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// Kernel and image bases of the linear map sending basis element `j` of the
/// domain to `images[j]` (a vector in a codomain of dimension `codim`).
///
/// The kernel basis is expressed in domain coordinates; the image basis is the
/// reduced echelon basis of the column span.
pub fn kernel_image(images: &[Vector], codim: usize) -> (Vec<Vector>, Vec<Vector>) {
    let mut a = Matrix::from_columns(images, codim);
    let pivots = a.rref();
    let n = images.len();
    let mut kernel = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = Vector::basis(free);
        for (r, &p) in pivots.iter().enumerate() {
            v.add_term(p, -a[(r, free)]);
        }
        kernel.push(v);
    }
    (kernel, row_basis(images, codim))
}

/// Echelon basis of the span of `vectors` (each of dimension `dim`).
pub fn row_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.to_dense(dim)).collect();
    let mut m = Matrix::from_rows(&rows);
    let rank = m.rref().len();
    (0..rank).map(|i| Vector::from_dense(m.row(i))).collect()
}

/// Coordinates of `v` in the span of `basis` (assumed independent), if any.
pub fn coordinates(basis: &[Vector], v: &Vector, dim: usize) -> Option<Vec<Scalar>> {
    let k = basis.len();
    let mut aug = Matrix::zeros(dim, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, c) in b.iter() {
            aug[(i, j)] = *c;
        }
    }
    for (i, c) in v.iter() {
        aug[(i, k)] = *c;
    }
    let pivots = aug.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Scalar::ZERO; k];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[(r, k)];
    }
    Some(x)
}

/// `span(ambient) / span(sub)` with chosen representatives.
#[derive(Debug, Clone)]
pub struct Quotient {
    dim: usize,
    ambient: Vec<Vector>,
    /// sub basis in ambient coordinates, followed by the chosen unit vectors
    full_basis: Vec<Vector>,
    sub_rank: usize,
    rep_indices: Vec<usize>,
}

impl Quotient {
    /// `ambient` must be linearly independent; every `sub` vector must lie in
    /// its span.
    pub fn new(sub: &[Vector], ambient: &[Vector], dim: usize) -> Result<Self, Error> {
        let k = ambient.len();
        let mut sub_coords = Vec::new();
        for (n, s) in sub.iter().enumerate() {
            let c = coordinates(ambient, s, dim).ok_or(Error::NotContained(n))?;
            sub_coords.push(Vector::from_dense(&c));
        }
        let sub_basis = row_basis(&sub_coords, k);
        let sub_rank = sub_basis.len();
        let mut full_basis = sub_basis;
        let mut rep_indices = Vec::new();
        for j in 0..k {
            let mut trial = full_basis.clone();
            trial.push(Vector::basis(j));
            if row_basis(&trial, k).len() == trial.len() {
                full_basis = trial;
                rep_indices.push(j);
            }
        }
        Ok(Quotient {
            dim,
            ambient: ambient.to_vec(),
            full_basis,
            sub_rank,
            rep_indices,
        })
    }

    pub fn dim(&self) -> usize {
        self.rep_indices.len()
    }

    /// Representative (in the original coordinates) of quotient basis `q`.
    pub fn representative(&self, q: usize) -> &Vector {
        &self.ambient[self.rep_indices[q]]
    }

    pub fn representatives(&self) -> Vec<Vector> {
        self.rep_indices
            .iter()
            .map(|&j| self.ambient[j].clone())
            .collect()
    }

    /// Class of `v` in quotient coordinates.
    pub fn project(&self, v: &Vector) -> Result<Vec<Scalar>, Error> {
        let c = coordinates(&self.ambient, v, self.dim).ok_or(Error::NotContained(0))?;
        let cv = Vector::from_dense(&c);
        let full = coordinates(&self.full_basis, &cv, self.ambient.len())
            .expect("full basis spans the coordinate space");
        Ok(full[self.sub_rank..].to_vec())
    }

    /// Representative vector of the class with quotient coordinates `q`.
    pub fn lift(&self, q: &[Scalar]) -> Vector {
        let mut v = Vector::zero();
        for (i, c) in q.iter().enumerate() {
            v.add_scaled(self.representative(i), *c);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn zero_and_identity_operators() {
        let zero = vec![Vector::zero(); 3];
        let (k, i) = kernel_image(&zero, 3);
        assert_eq!((k.len(), i.len()), (3, 0));
        let id: Vec<Vector> = (0..3).map(Vector::basis).collect();
        let (k, i) = kernel_image(&id, 3);
        assert_eq!((k.len(), i.len()), (0, 3));
    }

    #[test]
    fn nilpotent_two_by_two() {
        // d(x) = y, d(y) = 0 with x = 0, y = 1
        let images = vec![Vector::basis(1), Vector::zero()];
        let (k, i) = kernel_image(&images, 2);
        assert_eq!(k, vec![Vector::basis(1)]);
        assert_eq!(i, vec![Vector::basis(1)]);
        let q = Quotient::new(&i, &k, 2).unwrap();
        assert_eq!(q.dim(), 0);
    }

    #[test]
    fn quotient_of_line_in_plane() {
        let ambient = vec![Vector::basis(0), Vector::basis(1)];
        let q = Quotient::new(&[Vector::basis(1)], &ambient, 2).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.representative(0), &Vector::basis(0));
        let v = Vector::from_terms([(0, s(3)), (1, s(5))]);
        assert_eq!(q.project(&v).unwrap(), vec![s(3)]);
        assert_eq!(q.project(&q.lift(&[s(2)])).unwrap(), vec![s(2)]);
    }

    #[test]
    fn trivial_quotient_is_identity() {
        let ambient = vec![Vector::basis(0), Vector::basis(1)];
        let q = Quotient::new(&[], &ambient, 2).unwrap();
        assert_eq!(q.dim(), 2);
        let v = Vector::from_terms([(0, s(1)), (1, s(-4))]);
        assert_eq!(q.project(&v).unwrap(), vec![s(1), s(-4)]);
    }

    #[test]
    fn containment_error() {
        let ambient = vec![Vector::basis(0)];
        assert!(matches!(
            Quotient::new(&[Vector::basis(1)], &ambient, 2),
            Err(Error::NotContained(0))
        ));
    }
}
