//! Dense exact matrices. Every linear map of an algebra (twist, Rota-Baxter
//! operators, derivations, involutions) is stored as a matrix acting on
//! column vectors in a fixed basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{vector, FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: bad.field().to_string(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dim("ragged matrix rows"));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer rows reduced into `field`. Panics on ragged input; meant for
    /// literals.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix literal");
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| field.from_i64(x)))
            .collect();
        Matrix {
            field,
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn diagonal(field: FieldSpec, diag: &[Scalar]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    /// Build from a closure over `(row, col)`.
    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, columns: &[Vec<Scalar>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::dim("ragged columns"));
        }
        Ok(Matrix::from_fn(field, rows, cols, |r, c| columns[c][r].clone()))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "entry field mismatch");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Residues in row-major order (F_p only); the lexicographic sort key
    /// used by the enumerators.
    pub fn residues(&self) -> Option<Vec<u64>> {
        self.entries.iter().map(Scalar::residue).collect()
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.entries)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// `self · v`. Panics if lengths disagree; callers validate shapes.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length vs matrix columns");
        let mut out = self.field.zero_vec(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let e = &self.entries[r * self.cols + c];
                if !e.is_zero() {
                    *o += &(e * x);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.ensure_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        self.field.ensure_same(&other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            entries: vector::add(&self.entries, &other.entries),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            entries: vector::sub(&self.entries, &other.entries),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            entries: vector::scale(s, &self.entries),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dim("power of a non-square matrix"));
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `ab = ba` entrywise.
    pub fn commutes(&self, other: &Matrix) -> Result<bool> {
        if !self.is_square() || !other.is_square() {
            return Err(Error::dim("commutation of non-square matrices"));
        }
        self.same_shape(other)?;
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Reduced row echelon form and pivot columns.
    fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in 0..m.cols {
                let v = m.get(row, c) * &inv;
                m.entries[row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..m.cols {
                    let delta = &factor * m.get(row, c);
                    if !delta.is_zero() {
                        m.entries[r * m.cols + c] -= &delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = self.field.zero_vec(self.cols);
                v[f] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Exact inverse by Gauss-Jordan elimination on `[m | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dim("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(self.field, n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        Ok(Matrix::from_fn(self.field, n, n, |r, c| red.get(r, n + c).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn product_over_f3() {
        let f = FieldSpec::prime(3).unwrap();
        let a = Matrix::from_i64(f, &[&[1, 2], &[0, 1]]);
        let b = Matrix::from_i64(f, &[&[1, 1], &[1, 0]]);
        // [[1+2, 1], [1, 0]] = [[0,1],[1,0]] mod 3
        assert_eq!(a.mul(&b).unwrap(), Matrix::from_i64(f, &[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn product_identity_and_zero() {
        let m = Matrix::from_i64(q(), &[&[1, -2], &[3, 5]]);
        assert_eq!(Matrix::identity(q(), 2).mul(&m).unwrap(), m);
        assert!(Matrix::zeros(q(), 2, 2).mul(&m).unwrap().is_zero());
    }

    #[test]
    fn product_shape_and_field_errors() {
        let a = Matrix::zeros(q(), 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        let b = Matrix::zeros(FieldSpec::PrimeField(2), 3, 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn inverse_cases() {
        assert_eq!(
            Matrix::identity(q(), 3).inverse().unwrap(),
            Matrix::identity(q(), 3)
        );
        assert!(matches!(
            Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]).inverse(),
            Err(Error::NotInvertible)
        ));
        let inv = Matrix::from_i64(q(), &[&[2, 0], &[0, 1]]).inverse().unwrap();
        assert_eq!(inv.get(0, 0).to_string(), "1/2");
        assert_eq!(inv.get(1, 1).to_string(), "1");
        assert!(inv.get(0, 1).is_zero());
    }

    #[test]
    fn commutation_examples() {
        let m = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        assert!(m.commutes(&Matrix::identity(q(), 2)).unwrap());
        let d1 = Matrix::from_i64(q(), &[&[1, 0], &[0, 2]]);
        let d2 = Matrix::from_i64(q(), &[&[3, 0], &[0, 4]]);
        assert!(d1.commutes(&d2).unwrap());
        let e12 = Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_i64(q(), &[&[0, 0], &[1, 0]]);
        // e12 e21 = diag(1,0) while e21 e12 = diag(0,1)
        assert!(!e12.commutes(&e21).unwrap());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::zeros(q(), 2, 2).kernel_basis().len(), 2);
        assert!(Matrix::identity(q(), 2).kernel_basis().is_empty());
        let k = Matrix::from_i64(q(), &[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vector::from_i64(q(), &[-1, 1]));
    }
}
