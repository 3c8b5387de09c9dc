//! Dense matrices over a [`Field`], plus the index flattening used for
//! two-index tensors: `(i, j) -> 2i + j` (so `11, 12, 21, 22 -> 0, 1, 2, 3`).

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::Field;

/// Flattened position of the index pair `(i, j)`, zero-based.
pub const fn pair(i: usize, j: usize) -> usize {
    2 * i + j
}

/// Flattened position of `(a, b, c)` on the triple tensor product.
pub const fn triple(a: usize, b: usize, c: usize) -> usize {
    4 * a + 2 * b + c
}

pub fn delta<T: Field>(i: usize, j: usize) -> T {
    if i == j {
        T::one()
    } else {
        T::zero()
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| delta(i, j))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// A column vector.
    pub fn column(v: Vec<T>) -> Self {
        Mat {
            rows: v.len(),
            cols: 1,
            data: v,
        }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Field, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Mat<U>, E> {
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn star(&self) -> Self {
        self.map(T::star)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// Every entry passes [`Field::is_negligible`].
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_negligible)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_negligible()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                m[(row, j)] = m[(row, j)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for j in 0..m.cols {
                    let sub = f.clone() * m[(row, j)].clone();
                    m[(r, j)] = m[(r, j)].clone() - sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, each vector scaled so its first nonzero
    /// coordinate is 1.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            basis.push(normalize_leading(v));
        }
        basis
    }

    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m[(r, col)].is_negligible()) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            let inv = pivot.inverse().expect("nonzero pivot");
            for r in col + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone() * inv.clone();
                for j in col..m.cols {
                    let sub = f.clone() * m[(col, j)].clone();
                    m[(r, j)] = m[(r, j)].clone() - sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                delta(i, j - n)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
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

/// Divides a vector by its first nonzero coordinate.
pub fn normalize_leading<T: Field>(v: Vec<T>) -> Vec<T> {
    match v.iter().find(|x| !x.is_negligible()).and_then(Field::inverse) {
        Some(inv) => v.into_iter().map(|x| x * inv.clone()).collect(),
        None => v,
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// `(S12)^{abc}_{def} = S^{ab}_{de} δ^c_f`
pub fn embed_12<T: Field>(s: &Mat<T>) -> Mat<T> {
    Mat::from_fn(8, 8, |r, c| {
        let (a, b, cc) = (r / 4, (r / 2) % 2, r % 2);
        let (d, e, f) = (c / 4, (c / 2) % 2, c % 2);
        if cc == f {
            s[(pair(a, b), pair(d, e))].clone()
        } else {
            T::zero()
        }
    })
}

/// `(S23)^{abc}_{def} = δ^a_d S^{bc}_{ef}`
pub fn embed_23<T: Field>(s: &Mat<T>) -> Mat<T> {
    Mat::from_fn(8, 8, |r, c| {
        let (a, b, cc) = (r / 4, (r / 2) % 2, r % 2);
        let (d, e, f) = (c / 4, (c / 2) % 2, c % 2);
        if a == d {
            s[(pair(b, cc), pair(e, f))].clone()
        } else {
            T::zero()
        }
    })
}

/// The 2x2 matrix `g^{ij}` as the column `(g^11, g^12, g^21, g^22)`.
pub fn flatten_metric<T: Field>(g: &Mat<T>) -> Mat<T> {
    Mat::column(vec![
        g[(0, 0)].clone(),
        g[(0, 1)].clone(),
        g[(1, 0)].clone(),
        g[(1, 1)].clone(),
    ])
}

pub fn unflatten_metric<T: Field>(v: &[T]) -> Mat<T> {
    Mat::from_rows(vec![
        vec![v[0].clone(), v[1].clone()],
        vec![v[2].clone(), v[3].clone()],
    ])
}
