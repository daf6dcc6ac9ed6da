//! Linear subspaces of `Cl_n` in canonical reduced form.

use crate::clifford::{Blade, MultiVector};
use crate::linalg::{self, RowSpace, SparseVec};
use crate::rational::Rational;

pub fn to_sparse(mv: &MultiVector) -> SparseVec {
    mv.terms().iter().map(|(b, c)| (b.0 as usize, c.clone())).collect()
}

pub fn from_sparse(n: usize, v: &SparseVec) -> MultiVector {
    MultiVector::from_terms(n, v.iter().map(|(i, c)| (Blade(*i as u16), c.clone())))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    space: RowSpace,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, space: RowSpace::new(1 << n) }
    }

    pub fn span<'a>(n: usize, elems: impl IntoIterator<Item = &'a MultiVector>) -> Self {
        let mut s = Self::zero(n);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Span of all blades satisfying `keep`.
    pub fn blades(n: usize, keep: impl Fn(Blade) -> bool) -> Self {
        let rows = (0..1usize << n).filter(|&m| keep(Blade(m as u16))).map(|m| vec![(m, Rational::one())]);
        Subspace { n, space: RowSpace::from_rows(1 << n, rows) }
    }

    pub fn dim_n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn row_space(&self) -> &RowSpace {
        &self.space
    }

    pub fn basis(&self) -> Vec<MultiVector> {
        self.space.rows().iter().map(|r| from_sparse(self.n, r)).collect()
    }

    pub fn insert(&mut self, mv: &MultiVector) -> bool {
        assert_eq!(mv.dim(), self.n, "dimension mismatch");
        self.space.insert(to_sparse(mv))
    }

    pub fn contains(&self, mv: &MultiVector) -> bool {
        mv.dim() == self.n && self.space.contains(&to_sparse(mv))
    }

    pub fn coordinates(&self, mv: &MultiVector) -> Option<Vec<Rational>> {
        self.space.coordinates(&to_sparse(mv))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace { n: self.n, space: self.space.sum(&other.space) }
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        Subspace { n: self.n, space: self.space.intersection(&other.space) }
    }

    /// `{u in self : <u, w> = 0 for all w in other}`.
    pub fn orthogonal_within(&self, other: &Subspace) -> Subspace {
        let ob = other.space.rows();
        let basis = self.space.rows();
        let images: Vec<SparseVec> =
            basis.iter().map(|u| linalg::sparse_from_dense(&ob.iter().map(|w| linalg::sparse_dot(u, w)).collect::<Vec<_>>())).collect();
        let rel = linalg::linear_relations(&images, ob.len());
        let elems: Vec<MultiVector> = rel.iter().map(|c| self.combine(c)).collect();
        Subspace::span(self.n, &elems)
    }

    /// `sum_j c_j b_j` over the canonical basis.
    pub fn combine(&self, coeffs: &[Rational]) -> MultiVector {
        let mut acc = vec![Rational::zero(); 1 << self.n];
        for (c, row) in coeffs.iter().zip(self.space.rows()) {
            if c.is_zero() {
                continue;
            }
            for (i, x) in row {
                acc[*i].add_mul(c, x);
            }
        }
        MultiVector::from_dense(self.n, &acc)
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, f: impl Fn(&MultiVector) -> MultiVector) -> Subspace {
        let imgs: Vec<MultiVector> = self.basis().iter().map(f).collect();
        Subspace::span(self.n, &imgs)
    }

    /// Kernel of a linear map `self -> Q^m` given on elements.
    pub fn kernel_of_coords(&self, f: impl Fn(&MultiVector) -> Vec<Rational>) -> Subspace {
        let images: Vec<SparseVec> = self.basis().iter().map(|b| linalg::sparse_from_dense(&f(b))).collect();
        let width = images.iter().flat_map(|v| v.last().map(|(i, _)| i + 1)).max().unwrap_or(1);
        let rel = linalg::linear_relations(&images, width);
        let elems: Vec<MultiVector> = rel.iter().map(|c| self.combine(c)).collect();
        Subspace::span(self.n, &elems)
    }

    /// Kernel of a linear map `self -> Cl_n^r`, given as a list of
    /// multivector-valued components.
    pub fn kernel_of(&self, f: impl Fn(&MultiVector) -> Vec<MultiVector>) -> Subspace {
        let basis = self.basis();
        let size = 1usize << self.n;
        let mut images = Vec::with_capacity(basis.len());
        let mut width = 0;
        for b in &basis {
            let parts = f(b);
            width = width.max(parts.len());
            let mut v: SparseVec = Vec::new();
            for (k, p) in parts.iter().enumerate() {
                v.extend(p.terms().iter().map(|(bl, c)| (k * size + bl.0 as usize, c.clone())));
            }
            images.push(v);
        }
        let rel = linalg::linear_relations(&images, width.max(1) * size);
        let elems: Vec<MultiVector> = rel.iter().map(|c| self.combine(c)).collect();
        Subspace::span(self.n, &elems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_commutator() {
        // 2-forms commuting with e12 in Cl_4: e12, e34
        let l2 = Subspace::blades(4, |b| b.grade() == 2);
        let e12 = MultiVector::blade(4, &[1, 2]);
        let k = l2.kernel_of(|a| vec![a.commutator(&e12)]);
        assert_eq!(k, Subspace::span(4, &[e12.clone(), MultiVector::blade(4, &[3, 4])]));
    }

    #[test]
    fn orthogonal_within_grade() {
        let l2 = Subspace::blades(4, |b| b.grade() == 2);
        let w = Subspace::span(4, &[&MultiVector::blade(4, &[1, 2]) + &MultiVector::blade(4, &[3, 4])]);
        let c = l2.orthogonal_within(&w);
        assert_eq!(c.dim(), 5);
        assert!(c.contains(&(&MultiVector::blade(4, &[1, 2]) - &MultiVector::blade(4, &[3, 4]))));
    }
}
