//! Exact sparse linear algebra over the rationals.

use crate::rational::Rational;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn sparse_get(v: &SparseVec, i: usize) -> Option<&Rational> {
    v.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &v[k].1)
}

pub fn sparse_dot(a: &SparseVec, b: &SparseVec) -> Rational {
    let mut acc = Rational::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc.add_mul(&a[i].1, &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// `a - c * b`.
pub fn sparse_sub_scaled(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -&(c * &b[j].1)));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.sub_mul(c, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(a: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Fully reduced row echelon basis of a subspace of `Q^ambient`.
///
/// Every row has leading coefficient 1 at its pivot, every other row is zero
/// at that pivot, and rows are sorted by pivot. The form is unique for the
/// subspace, so equality of row spaces is equality of rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowSpace {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl RowSpace {
    pub fn new(ambient: usize) -> Self {
        RowSpace { ambient, rows: Vec::new() }
    }

    pub fn from_rows(ambient: usize, rows: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Self::new(ambient);
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    fn pivot_position(&self, col: usize) -> Result<usize, usize> {
        self.rows.binary_search_by_key(&col, |r| r[0].0)
    }

    /// `v` minus its projection along the pivots; zero iff `v` is a member.
    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (col, c) in v {
            if let Ok(k) = self.pivot_position(*col) {
                r = sparse_sub_scaled(&r, c, &self.rows[k]);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.residual(v).is_empty()
    }

    /// Coordinates with respect to the row basis, if `v` is a member.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.iter().map(|r| sparse_get(v, r[0].0).cloned().unwrap_or_else(Rational::zero)).collect())
    }

    /// Adds `v` to the span. Returns false if it was already a member.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.iter().all(|(i, _)| *i < self.ambient));
        let r = self.residual(&v);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].1.recip();
        let r = sparse_scale(&r, &lead);
        let p = r[0].0;
        for row in self.rows.iter_mut() {
            if let Some(c) = sparse_get(row, p).cloned() {
                *row = sparse_sub_scaled(row, &c, &r);
            }
        }
        let pos = self.pivot_position(p).unwrap_err();
        self.rows.insert(pos, r);
        true
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    /// Orthogonal complement in `Q^ambient` under the standard dot product.
    pub fn orthogonal_complement(&self) -> RowSpace {
        let pivots = self.pivots();
        let mut out = Vec::new();
        let mut pi = 0;
        for f in 0..self.ambient {
            if pi < pivots.len() && pivots[pi] == f {
                pi += 1;
                continue;
            }
            let mut v: SparseVec = self.rows.iter().filter_map(|r| sparse_get(r, f).map(|c| (r[0].0, -c))).collect();
            v.push((f, Rational::one()));
            v.sort_by_key(|(i, _)| *i);
            out.push(v);
        }
        RowSpace::from_rows(self.ambient, out)
    }

    pub fn intersection(&self, other: &RowSpace) -> RowSpace {
        self.orthogonal_complement().sum(&other.orthogonal_complement()).orthogonal_complement()
    }
}

/// Basis of the space of coefficient vectors `c` with `sum_j c_j v_j = 0`.
pub fn linear_relations(vectors: &[SparseVec], ambient: usize) -> Vec<Vec<Rational>> {
    let k = vectors.len();
    let mut space = RowSpace::new(ambient + k);
    for (j, v) in vectors.iter().enumerate() {
        let mut row = v.clone();
        row.push((ambient + j, Rational::one()));
        space.insert(row);
    }
    space
        .rows()
        .iter()
        .filter(|r| r[0].0 >= ambient)
        .map(|r| {
            let mut c = vec![Rational::zero(); k];
            for (i, x) in r {
                c[i - ambient] = x.clone();
            }
            c
        })
        .collect()
}

pub fn rank(vectors: &[SparseVec], ambient: usize) -> usize {
    RowSpace::from_rows(ambient, vectors.iter().cloned()).dim()
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix, by
/// exact congruence diagonalization.
pub fn symmetric_signature(matrix: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    debug_assert!(a.iter().all(|r| r.len() == n));
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let diag = active.iter().position(|&i| !a[i][i].is_zero());
        let p = match diag {
            Some(k) => active[k],
            None => {
                // no usable diagonal: find a nonzero off-diagonal entry and
                // add row/column j to i, making a[i][i] = 2 a[i][j] != 0
                let found = active.iter().find_map(|&i| active.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (i, j)));
                let Some((i, j)) = found else { break };
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += &v;
                }
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += &v;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        let dinv = d.recip();
        let pivot_row = a[p].clone();
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] * &dinv;
            for &j in &active {
                if !pivot_row[j].is_zero() {
                    let v = &f * &pivot_row[j];
                    a[i][j] -= &v;
                }
            }
            a[i][p] = Rational::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

/// Rank of a dense rational matrix.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let ambient = rows.first().map_or(0, |r| r.len());
    rank(&rows.iter().map(|r| sparse_from_dense(r)).collect::<Vec<_>>(), ambient)
}

/// Basis of the null space `{x : M x = 0}` of a dense matrix.
pub fn dense_kernel(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let space = RowSpace::from_rows(cols, rows.iter().map(|r| sparse_from_dense(r)));
    space.orthogonal_complement().rows().iter().map(|r| sparse_to_dense(r, cols)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn dense(v: &[i64]) -> SparseVec {
        sparse_from_dense(&v.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_is_canonical() {
        let a = RowSpace::from_rows(3, [dense(&[1, 2, 3]), dense(&[2, 4, 7])]);
        let b = RowSpace::from_rows(3, [dense(&[0, 0, 1]), dense(&[3, 6, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&dense(&[1, 2, 0])));
        assert!(!a.contains(&dense(&[0, 1, 0])));
        assert_eq!(a.coordinates(&dense(&[2, 4, 5])).unwrap(), vec![q(2), q(5)]);
    }

    #[test]
    fn complement_and_intersection() {
        let a = RowSpace::from_rows(4, [dense(&[1, 1, 0, 0]), dense(&[0, 0, 1, 1])]);
        let c = a.orthogonal_complement();
        assert_eq!(c.dim(), 2);
        for r in c.rows() {
            for s in a.rows() {
                assert!(sparse_dot(r, s).is_zero());
            }
        }
        let b = RowSpace::from_rows(4, [dense(&[1, 1, 1, 1]), dense(&[1, 0, 0, 0])]);
        let i = a.intersection(&b);
        assert_eq!(i, RowSpace::from_rows(4, [dense(&[1, 1, 1, 1])]));
    }

    #[test]
    fn relations() {
        let v = vec![dense(&[1, 0, 1]), dense(&[0, 1, 1]), dense(&[1, 1, 2])];
        let r = linear_relations(&v, 3);
        assert_eq!(r.len(), 1);
        let c = &r[0];
        assert_eq!(&c[0] / &c[2], q(-1));
        assert_eq!(&c[1] / &c[2], q(-1));
    }

    #[test]
    fn signature_examples() {
        let m = |v: &[&[i64]]| -> Vec<Vec<Rational>> { v.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect() };
        assert_eq!(symmetric_signature(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(symmetric_signature(&m(&[&[1, 2], &[2, 4]])), (1, 0, 1));
        assert_eq!(symmetric_signature(&m(&[&[-1, 0, 0], &[0, 0, 0], &[0, 0, 3]])), (1, 1, 1));
        assert_eq!(symmetric_signature(&m(&[&[0, 0], &[0, 0]])), (0, 0, 2));
    }

    proptest! {
        // Sylvester: congruence by an invertible triangular matrix keeps inertia.
        #[test]
        fn signature_congruence_invariant(diag in proptest::collection::vec(-2i64..=2, 1..6),
                                          upper in proptest::collection::vec(-3i64..=3, 15)) {
            let n = diag.len();
            let d: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| if i == j { q(diag[i]) } else { q(0) }).collect()).collect();
            let mut p = vec![vec![q(0); n]; n];
            let mut k = 0;
            for i in 0..n {
                p[i][i] = q(1);
                for j in i + 1..n {
                    p[i][j] = q(upper[k % upper.len()]);
                    k += 1;
                }
            }
            // P^T D P
            let mut m = vec![vec![q(0); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = q(0);
                    for l in 0..n {
                        acc.add_mul(&p[l][i], &(&d[l][l] * &p[l][j]));
                    }
                    m[i][j] = acc;
                }
            }
            let expect = (
                diag.iter().filter(|&&x| x > 0).count(),
                diag.iter().filter(|&&x| x < 0).count(),
                diag.iter().filter(|&&x| x == 0).count(),
            );
            prop_assert_eq!(symmetric_signature(&m), expect);
        }

        #[test]
        fn kernel_is_annihilated(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..5)) {
            let m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let k = dense_kernel(&m, 5);
            prop_assert_eq!(k.len() + dense_rank(&m), 5);
            for v in &k {
                for r in &m {
                    let dot: Rational = r.iter().zip(v).map(|(a, b)| a * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
