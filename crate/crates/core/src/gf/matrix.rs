use std::fmt;

use super::{Elem, Field};
use crate::error::{Error, Result};

/// A row vector over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    field: Field,
    elems: Vec<Elem>,
}

impl Vector {
    pub fn new(field: &Field, elems: Vec<Elem>) -> Result<Self> {
        for &e in &elems {
            field.element(e as u32)?;
        }
        Ok(Vector {
            field: field.clone(),
            elems,
        })
    }

    /// Builds a vector from integer codes.
    pub fn from_codes(field: &Field, codes: &[u32]) -> Result<Self> {
        let elems = codes
            .iter()
            .map(|&c| field.element(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Vector {
            field: field.clone(),
            elems,
        })
    }

    pub fn zeros(field: &Field, n: usize) -> Self {
        Vector {
            field: field.clone(),
            elems: vec![0; n],
        }
    }

    /// The all-`c` vector.
    pub fn constant(field: &Field, n: usize, c: Elem) -> Self {
        Vector {
            field: field.clone(),
            elems: vec![c; n],
        }
    }

    pub(crate) fn from_raw(field: &Field, elems: Vec<Elem>) -> Self {
        Vector {
            field: field.clone(),
            elems,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn into_elems(self) -> Vec<Elem> {
        self.elems
    }

    /// Hamming weight: number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.elems.iter().filter(|&&e| e != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.elems.iter().all(|&e| e == 0)
    }

    fn check_compatible(&self, other: &Vector) -> Result<()> {
        if !self.field.same_as(&other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        let f = &self.field;
        let elems = self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Vector::from_raw(f, elems))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        let f = &self.field;
        let elems = self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Vector::from_raw(f, elems))
    }

    pub fn scale(&self, a: Elem) -> Vector {
        let f = &self.field;
        Vector::from_raw(f, self.elems.iter().map(|&x| f.mul(a, x)).collect())
    }

    /// Hamming distance to `other`.
    pub fn distance(&self, other: &Vector) -> Result<usize> {
        self.check_compatible(other)?;
        Ok(self
            .elems
            .iter()
            .zip(&other.elems)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// The row-vector product `self * m`.
    pub fn mul_matrix(&self, m: &Matrix) -> Result<Vector> {
        if !self.field.same_as(&m.field) {
            return Err(Error::FieldMismatch);
        }
        if self.len() != m.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                self.len(),
                m.rows,
                m.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![0; m.cols];
        for (i, &x) in self.elems.iter().enumerate() {
            if x != 0 {
                axpy(f, &mut out, m.row(i), x);
            }
        }
        Ok(Vector::from_raw(f, out))
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.elems)
    }
}

/// Dense row-major matrix over a finite field. Zero rows are allowed (the
/// generator of the trivial code); columns must be at least one.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row-echelon form with its rank and (0-based) pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &e in &data {
            field.element(e as u32)?;
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows of integer element codes.
    pub fn from_rows<R: AsRef<[u32]>>(field: &Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &c in r {
                data.push(field.element(c)?);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from row vectors, all of length `cols`.
    pub fn from_vectors(field: &Field, cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for v in rows {
            if !v.field().same_as(field) {
                return Err(Error::FieldMismatch);
            }
            if v.len() != cols {
                return Err(Error::DimensionMismatch("row length".into()));
            }
            data.extend_from_slice(v.elems());
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_raw(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix::from_raw(field, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) -> Result<()> {
        self.field.element(v as u32)?;
        self.data[i * self.cols + j] = v;
        Ok(())
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector::from_raw(&self.field, self.row(i).to_vec())
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if !self.field.same_as(&other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (l, &a) in self.row(i).iter().enumerate() {
                if a != 0 {
                    axpy(f, dst, other.row(l), a);
                }
            }
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if !self.field.same_as(&other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix::from_raw(&self.field, self.rows, cols, data))
    }

    /// Copy with column `j` deleted.
    pub fn remove_column(&self, j: usize) -> Result<Matrix> {
        if j >= self.cols {
            return Err(Error::OutOfRange(format!("column {j} of {}", self.cols)));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            let r = self.row(i);
            data.extend_from_slice(&r[..j]);
            data.extend_from_slice(&r[j + 1..]);
        }
        Ok(Matrix::from_raw(
            &self.field,
            self.rows,
            self.cols - 1,
            data,
        ))
    }

    /// Gauss-Jordan elimination to reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.data[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                let idx = r * cols + j;
                m.data[idx] = f.mul(inv, m.data[idx]);
            }
            let pivot_row: Vec<Elem> = m.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                let a = m.data[i * cols + c];
                if i != r && a != 0 {
                    axpy(
                        f,
                        &mut m.data[i * cols..(i + 1) * cols],
                        &pivot_row,
                        f.neg(a),
                    );
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the reduced row-echelon form: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let Rref { matrix, rank, .. } = self.rref();
        Matrix::from_raw(
            &self.field,
            rank,
            self.cols,
            matrix.data[..rank * self.cols].to_vec(),
        )
    }

    /// Basis (as rows) of `{x : self * x^T = 0}`; `cols - rank` rows.
    pub fn kernel_basis(&self) -> Matrix {
        let f = &self.field;
        let Rref {
            matrix: r, pivots, ..
        } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut data = vec![0; free.len() * n];
        for (b, &fc) in free.iter().enumerate() {
            let row = &mut data[b * n..(b + 1) * n];
            row[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                row[pc] = f.neg(r.get(i, fc));
            }
        }
        Matrix::from_raw(f, free.len(), n, data)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        for r in self.row_iter() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// `dst += a * src` over `field`.
#[inline]
pub(crate) fn axpy(field: &Field, dst: &mut [Elem], src: &[Elem], a: Elem) {
    if a == 1 {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = field.add(*d, s);
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = field.add(*d, field.mul(a, s));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn identity_rref() {
        let f = gf(2);
        let id = Matrix::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn dependent_rows_rank() {
        let f = gf(2);
        let m = Matrix::from_rows(&f, &[[1, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(Matrix::zeros(&f, 3, 4).rank(), 0);
    }

    #[test]
    fn vector_times_matrix() {
        let f = gf(2);
        let simplex = Matrix::from_rows(
            &f,
            &[
                [1, 0, 1, 0, 1, 0, 1],
                [0, 1, 1, 0, 0, 1, 1],
                [0, 0, 0, 1, 1, 1, 1],
            ],
        )
        .unwrap();
        let x = Vector::from_codes(&f, &[1, 1, 1]).unwrap();
        assert_eq!(x.mul_matrix(&simplex).unwrap().weight(), 4);
        let zero = Vector::zeros(&f, 3);
        assert!(zero.mul_matrix(&simplex).unwrap().is_zero());
        let y = Vector::from_codes(&f, &[1, 0, 1, 1]).unwrap();
        assert_eq!(y.mul_matrix(&Matrix::identity(&f, 4)).unwrap(), y);
        assert!(matches!(
            y.mul_matrix(&simplex),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn kernel_examples() {
        let f = gf(2);
        assert_eq!(Matrix::identity(&f, 4).kernel_basis().rows(), 0);
        let ones = Matrix::from_rows(&f, &[[1u32; 6]]).unwrap();
        let k = ones.kernel_basis();
        assert_eq!(k.rows(), 5);
        assert_eq!(k.rank(), 5);
        for r in k.row_iter() {
            assert_eq!(r.iter().filter(|&&e| e != 0).count() % 2, 0);
        }
        assert_eq!(Matrix::zeros(&f, 1, 5).kernel_basis().rows(), 5);
    }

    #[test]
    fn mismatches() {
        let a = Matrix::identity(&gf(2), 2);
        let b = Matrix::identity(&gf(3), 2);
        assert_eq!(a.mul(&b).unwrap_err(), Error::FieldMismatch);
        let c = Matrix::zeros(&gf(2), 3, 3);
        assert!(matches!(a.mul(&c), Err(Error::DimensionMismatch(_))));
        assert!(Matrix::from_rows(&gf(3), &[[0, 3]]).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (
            prop::sample::select(vec![2u32, 3, 4, 5, 8, 9]),
            1usize..6,
            1usize..8,
        )
            .prop_flat_map(|(q, rows, cols)| {
                prop::collection::vec(0..q, rows * cols).prop_map(move |codes| {
                    let f = gf(q);
                    let data = codes.into_iter().map(|c| c as Elem).collect();
                    Matrix::new(&f, rows, cols, data).unwrap()
                })
            })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_nullity(m in arb_matrix()) {
            let r = m.rref();
            let rr = r.matrix.rref();
            prop_assert_eq!(&rr.matrix, &r.matrix);
            prop_assert_eq!(rr.rank, r.rank);
            let k = m.kernel_basis();
            prop_assert_eq!(r.rank + k.rows(), m.cols());
            // every kernel row is annihilated by m
            let prod = m.mul(&k.transpose()).unwrap();
            prop_assert!(prod.is_zero());
            // row space preserved: stacking adds no rank
            let mut stacked = m.data().to_vec();
            stacked.extend_from_slice(r.matrix.data());
            let s = Matrix::new(m.field(), 2 * m.rows(), m.cols(), stacked).unwrap();
            prop_assert_eq!(s.rank(), r.rank);
        }
    }
}
