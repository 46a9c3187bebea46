use std::fmt;

use super::{Field, LinalgError, Scalar};

/// Dense row-major matrix over an exact field.
///
/// Shape mismatches in arithmetic are programming errors and panic; fallible
/// construction from external data goes through [`Matrix::from_scalars`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Result of a row reduction: the reduced row echelon form and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must share one length;
    /// `cols` is only consulted when `rows` is empty.
    pub fn from_i64_rows(field: Field, cols: usize, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(cols, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer rows");
                r.iter().map(move |&x| field.from_i64(x))
            })
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    pub fn from_scalars(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(LinalgError::ForeignEntry(bad.to_string(), field));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols,
            other.rows,
            "matrix product shape mismatch: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        assert_eq!(self.field, other.field, "matrix field mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(Scalar::neg).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[a | b | ...]`.
    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.paste(0, off, m);
            off += m.cols;
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.paste(off, 0, m);
            off += m.rows;
        }
        out
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.field, b.field);
        let mut out = Matrix::zeros(a.field, a.rows + b.rows, a.cols + b.cols);
        out.paste(0, 0, a);
        out.paste(a.rows, a.cols, b);
        out
    }

    /// Copies `m` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, m: &Matrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (oj, &j) in cols.iter().enumerate() {
                out.set(i, oj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form. The pivot of each step is the first row (from
    /// the top of the unreduced block) with a nonzero entry in the leftmost
    /// remaining column, so results are reproducible.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&factor.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Columns form a basis of the null space, one per free column of the
    /// echelon form, in increasing order of the free column.
    pub fn null_space(&self) -> Matrix {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, self.field.one());
            for (r, &p) in pivots.iter().enumerate() {
                basis.set(p, k, reduced.get(r, f).neg());
            }
        }
        basis
    }

    /// A basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space(&self) -> Matrix {
        let pivots = self.echelon().pivots;
        self.select_columns(&pivots)
    }

    /// Some `X` with `self * X = rhs`, free variables set to zero; `None` when
    /// the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve row mismatch");
        let aug = Matrix::hstack(self.field, self.rows, &[self, rhs]);
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, reduced.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// True when every column of `self` lies in the column span of `basis`.
    pub fn columns_within(&self, basis: &Matrix) -> bool {
        basis.solve(self).is_some()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::Prime(p)
    }

    /// Brute-force rank: the largest k with a nonzero k x k minor.
    fn rank_by_minors(m: &Matrix) -> usize {
        fn det(m: &Matrix) -> Scalar {
            let n = m.rows();
            if n == 0 {
                return m.field().one();
            }
            let mut acc = m.field().zero();
            for j in 0..n {
                let rest: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = m.submatrix(1..n, 0..n).select_columns(&rest);
                let term = m.get(0, j).mul(&det(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let max = m.rows().min(m.cols());
        (0..=max)
            .rev()
            .find(|&k| {
                subsets(m.rows(), k).iter().any(|rs| {
                    subsets(m.cols(), k).iter().any(|cs| {
                        let t = m.transpose().select_columns(rs).transpose().select_columns(cs);
                        !det(&t).is_zero()
                    })
                })
            })
            .unwrap_or(0)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(gf(5), 2).rank(), 2);
        assert_eq!(Matrix::zeros(gf(5), 3, 3).rank(), 0);
        let m = Matrix::from_i64_rows(Field::Rationals, 2, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(rank_by_minors(&m), 1);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_matches_minor_enumeration() {
        let rows = [
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
            vec![vec![0, 0, 1], vec![0, 0, 2]],
            vec![vec![2, -1], vec![1, 3], vec![0, 0]],
        ];
        for r in &rows {
            for field in [gf(3), gf(7), Field::Rationals] {
                let m = Matrix::from_i64_rows(field, 0, r);
                assert_eq!(m.rank(), rank_by_minors(&m), "{m} over {field}");
            }
        }
    }

    #[test]
    fn solve_and_inverse() {
        let f = Field::Rationals;
        let a = Matrix::from_i64_rows(f, 2, &[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let singular = Matrix::from_i64_rows(f, 2, &[vec![1, 1], vec![1, 1]]);
        assert!(singular.inverse().is_none());
        let rhs = Matrix::from_i64_rows(f, 1, &[vec![1], vec![2]]);
        assert!(singular.solve(&rhs).is_none());
    }

    #[test]
    fn null_space_is_annihilated() {
        let m = Matrix::from_i64_rows(gf(7), 4, &[vec![1, 2, 0, 3], vec![2, 4, 1, 1]]);
        let k = m.null_space();
        assert_eq!(k.cols(), 4 - m.rank());
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn from_scalars_checks_entries() {
        let err = Matrix::from_scalars(gf(5), 2, 2, vec![gf(5).one()]).unwrap_err();
        assert!(matches!(err, LinalgError::EntryCount { expected: 4, found: 1 }));
        let err = Matrix::from_scalars(gf(5), 1, 1, vec![gf(7).one()]).unwrap_err();
        assert!(matches!(err, LinalgError::ForeignEntry(..)));
    }
}
