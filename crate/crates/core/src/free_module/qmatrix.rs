use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::Rational;

/// Dense rational matrix, row-major. This is the stalk-level workhorse: every
/// section-valued computation that is not coefficient-wise is done here, one
/// point at a time.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Rational::zero() })
    }

    /// Standard symplectic matrix `[[0, I_m], [-I_m, 0]]` of size `2m`.
    pub fn standard_symplectic(m: usize) -> Self {
        Self::from_fn(2 * m, 2 * m, |i, j| {
            if j == i + m {
                Rational::one()
            } else if i == j + m {
                -Rational::one()
            } else {
                Rational::zero()
            }
        })
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Panics on dimension mismatch.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> QMatrix {
        self.scale(&-Rational::one())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut a = self.clone();
        let mut sign = Rational::one();
        let mut prev = Rational::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Rational::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[(i, j)] * &a[(k, k)]) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = num.checked_div(&prev).expect("Bareiss pivot is nonzero");
                }
                a[(i, k)] = Rational::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let inv = a[(row, col)].inverse().expect("nonzero pivot");
            for j in col..a.cols {
                a[(row, j)] = &a[(row, j)] * &inv;
            }
            for i in 0..a.rows {
                if i != row && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    for j in col..a.cols {
                        let d = &f * &a[(row, j)];
                        a[(i, j)] = &a[(i, j)] - &d;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Ax = 0}`, one vector per free column,
    /// with a 1 in that free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, free)];
                }
                v
            })
            .collect()
    }

    /// Gauss–Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = QMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    pub fn minor(&self, skip_row: usize, skip_col: usize) -> QMatrix {
        QMatrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let si = if i < skip_row { i } else { i + 1 };
            let sj = if j < skip_col { j } else { j + 1 };
            self[(si, sj)].clone()
        })
    }

    /// Classical adjugate: `det·A⁻¹` when `A` is invertible, transposed
    /// cofactors otherwise.
    pub fn adjugate(&self) -> QMatrix {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return QMatrix::zeros(0, 0);
        }
        let det = self.determinant();
        if !det.is_zero() {
            return self.inverse().expect("nonzero determinant").scale(&det);
        }
        if n == 1 {
            return QMatrix::identity(1);
        }
        QMatrix::from_fn(n, n, |i, j| {
            let c = self.minor(j, i).determinant();
            if (i + j) % 2 == 0 {
                c
            } else {
                -c
            }
        })
    }

    pub fn kronecker(&self, other: &QMatrix) -> QMatrix {
        QMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(QMatrix::from_ints(&[&[1, 2], &[3, 4]]).determinant(), Rational::from(-2));
        assert_eq!(QMatrix::identity(0).determinant(), Rational::one());
        assert_eq!(QMatrix::from_ints(&[&[0, 1], &[1, 0]]).determinant(), Rational::from(-1));
        assert_eq!(
            QMatrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).determinant(),
            Rational::zero()
        );
        // Needs a pivot swap mid-elimination.
        assert_eq!(
            QMatrix::from_ints(&[&[1, 1, 0], &[1, 1, 1], &[0, 1, 1]]).determinant(),
            Rational::from(-1)
        );
    }

    #[test]
    fn kernel_and_rank() {
        let m = QMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn singular_adjugate_uses_cofactors() {
        let m = QMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.adjugate(), QMatrix::from_ints(&[&[4, -2], &[-2, 1]]));
        assert!(m.mul(&m.adjugate()).is_zero());
    }

    #[test]
    fn inverse_of_singular_is_none() {
        assert!(QMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let m = QMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), QMatrix::identity(2));
    }
}
