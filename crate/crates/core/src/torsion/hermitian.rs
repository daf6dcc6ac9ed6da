use super::{in_lambda4_plus, TorsionForm};
use crate::clifford::{Blade, MultiVector};
use crate::error::{SpinError, TorsionError};
use crate::rational::Rational;
use crate::spin::{dot, Matrix, SpinRep, Spinor};
use crate::subspace::Subspace;

/// Almost Hermitian structure on `R^8` attached to an oriented plane of
/// positive spinors.
#[derive(Debug, Clone)]
pub struct HermitianStructure {
    pub plane: [Spinor; 2],
    /// `J e_i = sum_j omega_ij e_j`, stored so that `j.get(j, i) = omega_ij`.
    pub j: Matrix,
    pub omega: MultiVector,
    /// Coefficient `c` in `omega^4 = c nu`.
    pub volume_coefficient: Rational,
    /// 2-forms annihilating the plane.
    pub lambda11_0: Subspace,
    /// `{a in Λ^4 : a(J., J., ., .) = -a}`.
    pub lambda4: Subspace,
}

/// `a(e_p, e_q, ...)` for a homogeneous form, indices 1-based.
fn evaluate(form: &MultiVector, idx: &[usize]) -> Rational {
    let mut sorted = idx.to_vec();
    let mut sign = 1i64;
    // insertion sort counting transpositions
    for i in 1..sorted.len() {
        let mut k = i;
        while k > 0 && sorted[k - 1] > sorted[k] {
            sorted.swap(k - 1, k);
            sign = -sign;
            k -= 1;
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Rational::zero();
    }
    let c = form.coeff(Blade::from_indices(&sorted));
    if sign < 0 {
        -c
    } else {
        c
    }
}

fn two_form_matrix(a: &MultiVector) -> Matrix {
    let mut m = Matrix::zeros(8, 8);
    for i in 1..=8 {
        for j in 1..=8 {
            m.set(i - 1, j - 1, evaluate(a, &[i, j]));
        }
    }
    m
}

impl HermitianStructure {
    pub fn j_squared_is_minus_one(&self) -> bool {
        let sq = &self.j * &self.j;
        sq == Matrix::identity(8).scale(&-Rational::one())
    }

    pub fn j_orthogonal(&self) -> bool {
        &self.j.transpose() * &self.j == Matrix::identity(8)
    }

    pub fn positive(&self) -> bool {
        self.volume_coefficient.is_positive()
    }

    /// 2-forms that are `J`-invariant and orthogonal to `omega`.
    pub fn invariant_primitive(&self) -> Subspace {
        let l2 = Subspace::blades(8, |b| b.grade() == 2);
        let jt = self.j.transpose();
        l2.kernel_of_coords(|a| {
            let m = two_form_matrix(a);
            let moved = &(&jt * &m) * &self.j;
            let mut out: Vec<Rational> = (&moved - &m).data().to_vec();
            out.push(a.inner_product(&self.omega));
            out
        })
    }
}

/// Structure determined by orthogonal `x1, x2` in `S+` with `|x_i|^2 = 2`.
pub fn hermitian_from_plane(rep: &SpinRep, x1: &[Rational], x2: &[Rational]) -> Result<HermitianStructure, TorsionError> {
    if rep.n() != 8 {
        return Err(SpinError::UnsupportedN { n: rep.n() }.into());
    }
    if !rep.in_plus(x1) || !rep.in_plus(x2) {
        return Err(SpinError::WrongChirality('+').into());
    }
    if !dot(x1, x2).is_zero() {
        return Err(SpinError::NotOrthogonal.into());
    }
    for x in [x1, x2] {
        let n = dot(x, x);
        if n != Rational::from(2) {
            return Err(SpinError::NotUnit { norm_sq: n.to_string(), expected: "2".into() }.into());
        }
    }
    let w = rep.spinor_wedge(x1, x2)?;
    let raw = w.grade_project(2);
    let nu = MultiVector::volume(8);
    if &raw + &(&nu * &raw) != w {
        return Err(TorsionError::Invariant("x1 ^ x2 is not (1 + nu) omega".into()));
    }
    // with x ^ y acting as y x^t - x y^t the 2-form part is a multiple of
    // the Kähler form; rescale so that J^2 = -1
    let sq: Rational = raw.terms().iter().map(|(_, c)| c * c).sum::<Rational>() / Rational::from(4);
    let scale = sq
        .sqrt_exact()
        .filter(|s| !s.is_zero())
        .ok_or_else(|| TorsionError::Invariant("2-form part of x1 ^ x2 has irrational norm".into()))?
        .recip();
    let omega = raw.scale(&scale);
    let mut j = Matrix::zeros(8, 8);
    for a in 1..=8 {
        for b in 1..=8 {
            j.set(b - 1, a - 1, evaluate(&omega, &[a, b]));
        }
    }
    let omega4 = omega.wedge(&omega).wedge(&omega).wedge(&omega);
    let volume_coefficient = omega4.coeff(Blade((1 << 8) - 1));
    let l2 = Subspace::blades(8, |b| b.grade() == 2);
    let lambda11_0 = l2.kernel_of_coords(|a| {
        let mut v = rep.act(a, x1).expect("n = 8");
        v.extend(rep.act(a, x2).expect("n = 8"));
        v
    });
    let l4 = Subspace::blades(8, |b| b.grade() == 4);
    let jm = j.clone();
    let lambda4 = l4.kernel_of_coords(|a| {
        let mut out = Vec::with_capacity(28 * 28);
        for x in 1..=8 {
            for y in x + 1..=8 {
                for z in 1..=8 {
                    for w in z + 1..=8 {
                        let mut acc = evaluate(a, &[x, y, z, w]);
                        for p in 1..=8 {
                            let jp = jm.get(p - 1, x - 1);
                            if jp.is_zero() {
                                continue;
                            }
                            for q in 1..=8 {
                                let jq = jm.get(q - 1, y - 1);
                                if jq.is_zero() {
                                    continue;
                                }
                                acc.add_mul(&(jp * jq), &evaluate(a, &[p, q, z, w]));
                            }
                        }
                        out.push(acc);
                    }
                }
            }
        }
        out
    });
    Ok(HermitianStructure { plane: [x1.to_vec(), x2.to_vec()], j, omega, volume_coefficient, lambda11_0, lambda4 })
}

/// Span of the traceless symmetric products `x1.x1 - x2.x2` and `x1.x2`.
pub fn traceless_symmetric_images(rep: &SpinRep, h: &HermitianStructure) -> Result<Subspace, TorsionError> {
    let [x1, x2] = &h.plane;
    let a = &rep.spinor_sym(x1, x1)? - &rep.spinor_sym(x2, x2)?;
    let b = rep.spinor_sym(x1, x2)?;
    Ok(Subspace::span(8, &[a, b]))
}

/// Hermitian structure of a form with a 2-dimensional complement of its
/// fixed spinors, using `u1 + u2`, `u1 - u2` for unit eigenvectors `u_i`.
pub fn hermitian_for(t: &TorsionForm) -> Result<HermitianStructure, TorsionError> {
    if !in_lambda4_plus(t.value()) {
        return Err(TorsionError::Precondition("needs a self-dual 4-form".into()));
    }
    let (groups, _) = t.eigenspaces().ok_or_else(|| TorsionError::Precondition("needs a form built from its spectrum".into()))?;
    let vecs: Vec<&Spinor> = groups.iter().flat_map(|(_, v)| v.iter()).collect();
    if vecs.len() != 2 {
        return Err(TorsionError::Precondition("fixed spinors must have codimension 2 in S+".into()));
    }
    if vecs.iter().any(|v| !dot(v, v).is_one()) {
        return Err(TorsionError::Precondition("eigenvectors must have unit length".into()));
    }
    let x1: Spinor = vecs[0].iter().zip(vecs[1]).map(|(a, b)| a + b).collect();
    let x2: Spinor = vecs[0].iter().zip(vecs[1]).map(|(a, b)| a - b).collect();
    hermitian_from_plane(SpinRep::shared(8)?, &x1, &x2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su4_structure() {
        let t = TorsionForm::su4().unwrap();
        let h = hermitian_for(&t).unwrap();
        assert!(h.j_squared_is_minus_one() && h.j_orthogonal() && h.positive());
        assert_eq!(h.lambda11_0.dim(), 15);
        assert_eq!(h.invariant_primitive(), h.lambda11_0);
        assert_eq!(h.lambda4.dim(), 2);
        assert!(h.lambda4.contains(t.value()));
        assert_eq!(traceless_symmetric_images(SpinRep::shared(8).unwrap(), &h).unwrap(), h.lambda4);
    }

    #[test]
    fn rejects_bad_plane() {
        let rep = SpinRep::shared(8).unwrap();
        let e = |i| rep.basis_spinor(i);
        assert!(hermitian_from_plane(rep, &e(0), &e(1)).is_err());
        let mut a = e(0);
        a[1] = Rational::one();
        assert!(hermitian_from_plane(rep, &a, &a).is_err());
        let mut m = rep.basis_spinor(8);
        m[9] = Rational::one();
        assert!(hermitian_from_plane(rep, &a, &m).is_err());
    }
}
