use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::linalg;
use crate::rational::Rational;

/// Dense square or rectangular rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// `x y^T`.
    pub fn outer(x: &[Rational], y: &[Rational]) -> Self {
        let mut m = Self::zeros(x.len(), y.len());
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                m.data[i * y.len() + j] = a * b;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let t = self.transpose();
        self.data.iter().zip(&t.data).all(|(a, b)| (a + b).is_zero())
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Frobenius pairing `Tr(A^T B)`.
    pub fn frobenius(&self, other: &Matrix) -> Rational {
        let mut acc = Rational::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            if !a.is_zero() && !b.is_zero() {
                acc.add_mul(a, b);
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        linalg::dense_rank(&self.to_rows())
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        linalg::dense_kernel(&self.to_rows(), self.cols)
    }

    /// Joint kernel of several matrices with the same column count.
    pub fn joint_kernel(mats: &[Matrix], cols: usize) -> Vec<Vec<Rational>> {
        let rows: Vec<Vec<Rational>> = mats.iter().flat_map(|m| m.to_rows()).collect();
        linalg::dense_kernel(&rows, cols)
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut m = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|x| x.to_f64()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut m = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        m.data[i * rhs.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        m
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// Matrix with exactly one `+-1` per row and column: `M e_j = sign[j] e_{perm[j]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), sign: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn compose(&self, rhs: &SignedPerm) -> SignedPerm {
        let perm = rhs.perm.iter().map(|&p| self.perm[p]).collect();
        let sign = rhs.perm.iter().zip(&rhs.sign).map(|(&p, &s)| s * self.sign[p]).collect();
        SignedPerm { perm, sign }
    }

    pub fn negate(&self) -> SignedPerm {
        SignedPerm { perm: self.perm.clone(), sign: self.sign.iter().map(|s| -s).collect() }
    }

    pub fn tensor(&self, rhs: &SignedPerm) -> SignedPerm {
        let m = rhs.len();
        let mut perm = Vec::with_capacity(self.len() * m);
        let mut sign = Vec::with_capacity(self.len() * m);
        for j1 in 0..self.len() {
            for j2 in 0..m {
                perm.push(self.perm[j1] * m + rhs.perm[j2]);
                sign.push(self.sign[j1] * rhs.sign[j2]);
            }
        }
        SignedPerm { perm, sign }
    }

    /// `P^{-1} M P` for the coordinate relabelling `new index = order[old]`.
    pub fn relabel(&self, order: &[usize]) -> SignedPerm {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut sign = vec![0; n];
        for j in 0..n {
            perm[order[j]] = order[self.perm[j]];
            sign[order[j]] = self.sign[j];
        }
        SignedPerm { perm, sign }
    }

    /// Restriction to the first `k` coordinates; `None` if they are not invariant.
    pub fn restrict(&self, k: usize) -> Option<SignedPerm> {
        if self.perm[..k].iter().any(|&p| p >= k) {
            return None;
        }
        Some(SignedPerm { perm: self.perm[..k].to_vec(), sign: self.sign[..k].to_vec() })
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.len();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            m.set(self.perm[j], j, Rational::from(self.sign[j] as i64));
        }
        m
    }

    /// `acc += c * M`.
    pub fn accumulate_into(&self, acc: &mut Matrix, c: &Rational) {
        for j in 0..self.len() {
            let e = acc.entry_mut(self.perm[j], j);
            if self.sign[j] > 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
    }

    /// `Tr(M^T A)`.
    pub fn frobenius_with(&self, a: &Matrix) -> Rational {
        let mut acc = Rational::zero();
        for j in 0..self.len() {
            let v = a.get(self.perm[j], j);
            if self.sign[j] > 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        acc
    }

    pub fn trace(&self) -> i64 {
        (0..self.len()).filter(|&j| self.perm[j] == j).map(|j| self.sign[j] as i64).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j)
    }
}
