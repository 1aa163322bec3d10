use super::NumericsError;
use crate::Real;
use std::ops::{Index, IndexMut};

/// Row-major dense square-or-rectangular matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols, "mul_vec dimension");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul dimension");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] = out.data[i * other.cols + j] + a * other[(l, j)];
                }
            }
        }
        out
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Symmetric matrix in packed lower-triangular storage (`n(n+1)/2` entries).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix<T> {
    n: usize,
    packed: Vec<T>,
}

impl<T: Real> SymmetricMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, packed: vec![T::zero(); n * (n + 1) / 2] }
    }

    /// Builds from `f(i, j)` evaluated on `i ≥ j` only.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut packed = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                packed.push(f(i, j));
            }
        }
        Self { n, packed }
    }

    /// Symmetric part `(A + Aᵀ)/2` of a square dense matrix.
    pub fn from_dense(a: &DenseMatrix<T>) -> Self {
        assert_eq!(a.rows(), a.cols(), "from_dense needs a square matrix");
        let half = T::lit(0.5);
        Self::from_fn(a.rows(), |i, j| (a[(i, j)] + a[(j, i)]) * half)
    }

    #[inline]
    fn slot(i: usize, j: usize) -> usize {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        i * (i + 1) / 2 + j
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.packed[Self::slot(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.packed[Self::slot(i, j)] = v;
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        DenseMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n, "mul_vec dimension");
        let mut y = vec![T::zero(); self.n];
        for i in 0..self.n {
            let base = i * (i + 1) / 2;
            for j in 0..i {
                let a = self.packed[base + j];
                y[i] = y[i] + a * x[j];
                y[j] = y[j] + a * x[i];
            }
            y[i] = y[i] + self.packed[base + i] * x[i];
        }
        y
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.n {
            for j in 0..=i {
                let v = self.get(i, j);
                s = s + if i == j { v * v } else { T::lit(2.0) * v * v };
            }
        }
        s.sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.packed.iter().all(|v| v.is_finite())
    }
}

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    /// Column `j` is the unit eigenvector for `values[j]`.
    pub vectors: DenseMatrix<T>,
    pub sweeps: usize,
}

impl<T: Real> SymmetricEigen<T> {
    pub fn vector(&self, j: usize) -> Vec<T> {
        self.vectors.column(j)
    }
}

const MAX_SWEEPS: usize = 60;

/// Cyclic Jacobi eigensolver.
///
/// Sweeps rotate every off-diagonal pair in row order until the off-diagonal
/// Frobenius norm drops below `1e-13·‖M‖_F` (or a few ulps in `f32`).
pub fn eig_symmetric<T: Real>(m: &SymmetricMatrix<T>) -> Result<SymmetricEigen<T>, NumericsError> {
    if !m.is_finite() {
        return Err(NumericsError::NonFinite("eig_symmetric"));
    }
    let n = m.dim();
    let mut a = m.to_dense();
    // vt row j accumulates eigenvector j.
    let mut vt = DenseMatrix::<T>::identity(n);
    let norm = m.frobenius_norm();
    let threshold = T::lit(1e-13).max(T::lit(8.0) * T::epsilon()) * norm;
    let hundred = T::lit(100.0);
    let mut sweeps = 0;

    let off_norm = |a: &DenseMatrix<T>| {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..i {
                s = s + a[(i, j)] * a[(i, j)];
            }
        }
        (T::lit(2.0) * s).sqrt()
    };

    let mut off = off_norm(&a);
    while off > threshold {
        if sweeps >= MAX_SWEEPS {
            return Err(NumericsError::NoConvergence { sweeps, off: off.as_f64() });
        }
        sweeps += 1;
        // Early sweeps skip pairs that are already small.
        let skip_below = if sweeps < 4 {
            T::lit(0.2) * off / T::from_count(n * n)
        } else {
            T::zero()
        };
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                if sweeps > 4 && (hundred * apq).abs() + app.abs() == app.abs()
                    && (hundred * apq).abs() + aqq.abs() == aqq.abs()
                {
                    a[(p, q)] = T::zero();
                    a[(q, p)] = T::zero();
                    continue;
                }
                if apq.abs() <= skip_below || apq == T::zero() {
                    continue;
                }
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                let t = {
                    let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() { -t } else { t }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    let np = c * arp - s * arq;
                    let nq = s * arp + c * arq;
                    a[(r, p)] = np;
                    a[(p, r)] = np;
                    a[(r, q)] = nq;
                    a[(q, r)] = nq;
                }
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
                for r in 0..n {
                    let vp = vt[(p, r)];
                    let vq = vt[(q, r)];
                    vt[(p, r)] = c * vp - s * vq;
                    vt[(q, r)] = s * vp + c * vq;
                }
            }
        }
        off = off_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DenseMatrix::from_fn(n, n, |r, j| vt[(order[j], r)]);
    Ok(SymmetricEigen { values, vectors, sweeps })
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct LuDecomposition<T> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Real> LuDecomposition<T> {
    pub fn new(a: &DenseMatrix<T>) -> Result<Self, NumericsError> {
        let n = a.rows();
        if a.cols() != n {
            return Err(NumericsError::DimensionMismatch { expected: n, got: a.cols() });
        }
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = lu.data.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
        let tiny = scale * T::epsilon() * T::from_count(n.max(1));
        for col in 0..n {
            let (piv, pmax) = (col..n)
                .map(|r| (r, lu[(r, col)].abs()))
                .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
                .unwrap();
            if !(pmax > tiny) {
                return Err(NumericsError::Singular(col));
            }
            if piv != col {
                for j in 0..n {
                    let t = lu[(col, j)];
                    lu[(col, j)] = lu[(piv, j)];
                    lu[(piv, j)] = t;
                }
                perm.swap(col, piv);
            }
            let d = lu[(col, col)];
            for r in (col + 1)..n {
                let f = lu[(r, col)] / d;
                lu[(r, col)] = f;
                if f == T::zero() {
                    continue;
                }
                for j in (col + 1)..n {
                    lu[(r, j)] = lu[(r, j)] - f * lu[(col, j)];
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>, NumericsError> {
        let n = self.perm.len();
        if b.len() != n {
            return Err(NumericsError::DimensionMismatch { expected: n, got: b.len() });
        }
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s = s - self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s = s - self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        Ok(x)
    }
}

/// Solve `A x = b` by LU with partial pivoting.
pub fn lu_solve<T: Real>(a: &DenseMatrix<T>, b: &[T]) -> Result<Vec<T>, NumericsError> {
    LuDecomposition::new(a)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_sorted() {
        let mut m = SymmetricMatrix::zeros(3);
        m.set(0, 0, 3.0);
        m.set(1, 1, 1.0);
        m.set(2, 2, 2.0);
        let e = eig_symmetric(&m).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(e.vector(0), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn swap_matrix() {
        let m = SymmetricMatrix::from_fn(2, |i, j| if i == j { 0.0f64 } else { 1.0 });
        let e = eig_symmetric(&m).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn packed_storage_roundtrip() {
        let m = SymmetricMatrix::from_fn(4, |i, j| (i * 10 + j) as f64);
        assert_eq!(m.get(1, 3), 31.0);
        assert_eq!(m.get(3, 1), 31.0);
        let d = m.to_dense();
        assert_eq!(m.mul_vec(&[1.0, 0.0, 0.0, 0.0]), d.column(0));
    }

    #[test]
    fn non_finite_rejected() {
        let m = SymmetricMatrix::from_fn(2, |_, _| f64::NAN);
        assert!(matches!(eig_symmetric(&m), Err(NumericsError::NonFinite(_))));
    }

    #[test]
    fn lu_small_system() {
        let a = DenseMatrix::from_fn(3, 3, |i, j| [[0.0f64, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]][i][j]);
        let x = lu_solve(&a, &[5.0, 3.0, 6.0]).unwrap();
        let r = a.mul_vec(&x);
        for (ri, bi) in r.iter().zip([5.0, 3.0, 6.0]) {
            assert!((ri - bi).abs() < 1e-14);
        }
        let sing = DenseMatrix::from_fn(2, 2, |_, _| 1.0);
        assert!(matches!(lu_solve(&sing, &[1.0, 1.0]), Err(NumericsError::Singular(1))));
    }
}
