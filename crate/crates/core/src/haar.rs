//! Haar state by direct linear solve, the GNS space `ℋ = (𝒜, ⟨a,b⟩ = h(a*b))`
//! and the left regular representation in orthonormal coordinates.

use nalgebra::Cholesky;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hopf::FiniteHopfStarAlgebra;
use crate::linalg::{self, c, CMatrix, CVector};
use crate::report::{Check, VerificationReport};

/// A linear functional on `𝒜`, by its values on the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional {
    coords: CVector,
}

impl Functional {
    pub fn new(coords: CVector) -> Self {
        Functional { coords }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Functional {
            coords: CVector::from_iterator(values.len(), values.iter().map(|&v| c(v))),
        }
    }

    pub fn coords(&self) -> &CVector {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn apply(&self, x: &CVector) -> Complex64 {
        self.coords.dot(x)
    }
}

/// Result of the invariance solve.
#[derive(Debug, Clone)]
pub struct HaarSolution {
    pub functional: Functional,
    /// Dimension of the space of invariant functionals before normalization.
    pub nullity: usize,
    pub smallest_singular_value: f64,
}

/// Rows `(h⊗id)Δ(e_i) − h(e_i)𝟙` followed by `(id⊗h)Δ(e_i) − h(e_i)𝟙`,
/// as a linear system in the coordinates of `h`.
fn invariance_system(a: &FiniteHopfStarAlgebra) -> CMatrix {
    let n = a.dim();
    let u = a.unit();
    let mut sys = CMatrix::zeros(2 * n * n, n);
    for i in 0..n {
        for k in 0..n {
            let row = i * n + k;
            for j in 0..n {
                sys[(row, j)] += a.d(i, j, k);
            }
            sys[(row, i)] -= u[k];
        }
        for j in 0..n {
            let row = n * n + i * n + j;
            for k in 0..n {
                sys[(row, k)] += a.d(i, j, k);
            }
            sys[(row, i)] -= u[j];
        }
    }
    sys
}

/// Solves for the Haar state and certifies its uniqueness.
pub fn solve_haar(a: &FiniteHopfStarAlgebra, tol: f64) -> Result<HaarSolution> {
    let sys = invariance_system(a);
    let ns = linalg::nullspace(&sys, tol);
    let sv = linalg::singular_values(&sys);
    let smallest = sv.last().copied().unwrap_or(0.0);
    match ns.ncols() {
        0 => return Err(Error::NoInvariantFunctional),
        1 => {}
        k => return Err(Error::NonUniqueHaar(k)),
    }
    let v: CVector = ns.column(0).into_owned();
    let norm = a.unit().dot(&v);
    if norm.norm() <= tol {
        return Err(Error::NoInvariantFunctional);
    }
    let h = Functional::new(v / norm);
    let report = verify_haar(a, &h, tol);
    if !report.overall_pass() {
        return Err(Error::NoInvariantFunctional);
    }
    Ok(HaarSolution {
        functional: h,
        nullity: 1,
        smallest_singular_value: smallest,
    })
}

/// The unique normalized bi-invariant functional.
pub fn compute_haar(a: &FiniteHopfStarAlgebra, tol: f64) -> Result<Functional> {
    Ok(solve_haar(a, tol)?.functional)
}

/// Invariance and normalization residuals of a candidate functional.
pub fn verify_haar(a: &FiniteHopfStarAlgebra, h: &Functional, tol: f64) -> VerificationReport {
    let n = a.dim();
    let mut left = 0.0f64;
    let mut right = 0.0f64;
    for i in 0..n {
        let hi = h.coords()[i];
        let mut l = CVector::zeros(n);
        let mut r = CVector::zeros(n);
        for j in 0..n {
            for k in 0..n {
                let d = a.d(i, j, k);
                l[k] += h.coords()[j] * d;
                r[j] += h.coords()[k] * d;
            }
        }
        let target = a.unit() * hi;
        left = left.hypot(linalg::vec_distance(&l, &target));
        right = right.hypot(linalg::vec_distance(&r, &target));
    }
    let mut rep = VerificationReport::new();
    rep.push(Check::new("left_invariance", left, tol));
    rep.push(Check::new("right_invariance", right, tol));
    rep.push(Check::new("normalized", (h.apply(a.unit()) - c(1.0)).norm(), tol));
    rep
}

/// `max_{i,j} |h(e_i e_j) − h(e_j e_i)|`.
pub fn verify_trace(a: &FiniteHopfStarAlgebra, h: &Functional, tol: f64) -> VerificationReport {
    let n = a.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let ab = h.apply(&a.mul(&a.basis(i), &a.basis(j)));
            let ba = h.apply(&a.mul(&a.basis(j), &a.basis(i)));
            worst = worst.max((ab - ba).norm());
        }
    }
    std::iter::once(Check::new("trace", worst, tol)).collect()
}

/// GNS data: Gram matrix, orthonormalizing change of basis and the left
/// regular representation in orthonormal coordinates.
#[derive(Debug, Clone)]
pub struct GnsData {
    gram: CMatrix,
    /// `R` with `gram = R*R`; maps algebra coordinates to ℋ-coordinates.
    to_onb: CMatrix,
    /// `Q = R⁻¹`; its columns are the orthonormal basis in algebra coordinates.
    from_onb: CMatrix,
    left_regular: Vec<CMatrix>,
    min_eigenvalue: f64,
}

/// Builds `ℋ` from the Haar state. Fails with `NotPositive` unless the Gram
/// matrix is positive definite, i.e. unless `h` is faithful.
pub fn gns_construct(a: &FiniteHopfStarAlgebra, h: &Functional, tol: f64) -> Result<GnsData> {
    let n = a.dim();
    let stars: Vec<CVector> = (0..n).map(|i| a.star(&a.basis(i))).collect();
    let gram = CMatrix::from_fn(n, n, |i, j| h.apply(&a.mul(&stars[i], &a.basis(j))));
    let ev = linalg::hermitian_eigenvalues(&gram);
    let min_eigenvalue = ev.first().copied().unwrap_or(0.0);
    let hermitian_defect = linalg::distance(&gram, &gram.adjoint());
    let threshold = tol * linalg::frobenius(&gram).max(1.0);
    if min_eigenvalue <= threshold || hermitian_defect > threshold {
        return Err(Error::NotPositive(min_eigenvalue));
    }
    let hermitian = (&gram + gram.adjoint()).scale(0.5);
    let chol = Cholesky::new(hermitian).ok_or(Error::NotPositive(min_eigenvalue))?;
    let to_onb = chol.l().adjoint();
    let from_onb = linalg::inverse(&to_onb, "Cholesky factor of the Gram matrix")?;
    let left_regular = (0..n)
        .map(|i| &to_onb * a.algebra().left_mult(&a.basis(i)) * &from_onb)
        .collect();
    Ok(GnsData {
        gram,
        to_onb,
        from_onb,
        left_regular,
        min_eigenvalue,
    })
}

impl GnsData {
    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    pub fn to_onb(&self) -> &CMatrix {
        &self.to_onb
    }

    pub fn from_onb(&self) -> &CMatrix {
        &self.from_onb
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// `L_{e_i}` on ℋ in orthonormal coordinates.
    pub fn left_regular(&self) -> &[CMatrix] {
        &self.left_regular
    }

    /// Algebra coordinates → ℋ-coordinates.
    pub fn vector(&self, x: &CVector) -> CVector {
        &self.to_onb * x
    }

    /// ℋ-coordinates → algebra coordinates.
    pub fn element(&self, v: &CVector) -> CVector {
        &self.from_onb * v
    }

    /// Left multiplication by `x` (algebra coordinates) on ℋ.
    pub fn left_multiplication_matrix(&self, x: &CVector) -> Result<CMatrix> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, algebra has dimension {}",
                x.len(),
                self.dim()
            )));
        }
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for (xi, li) in x.iter().zip(&self.left_regular) {
            out += li * *xi;
        }
        Ok(out)
    }

    /// Left multiplication by `Σ coeffs[(p,q)] e_p ⊗ e_q` on `ℋ ⊗ ℋ`.
    pub fn left_multiplication_2(&self, coeffs: &CVector) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(n * n, n * n);
        for p in 0..n {
            for q in 0..n {
                let w = coeffs[p * n + q];
                if w != c(0.0) {
                    out += linalg::kron(&self.left_regular[p], &self.left_regular[q]) * w;
                }
            }
        }
        out
    }

    /// Orthonormalization and *-representation identities.
    pub fn verify(&self, a: &FiniteHopfStarAlgebra, tol: f64) -> VerificationReport {
        let n = self.dim();
        let id = linalg::identity(n);
        let mut r = VerificationReport::new();
        r.push(Check::lower_bound("gram_positive", self.min_eigenvalue, tol));
        let qgq = self.from_onb.adjoint() * &self.gram * &self.from_onb;
        r.push(Check::scaled("orthonormalization", linalg::distance(&qgq, &id), tol, 1.0));

        let mut mult = 0.0f64;
        let mut star = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let lhs = &self.left_regular[i] * &self.left_regular[j];
                let prod = a.mul(&a.basis(i), &a.basis(j));
                let rhs = self.left_multiplication_matrix(&prod).expect("dimension");
                mult = mult.max(linalg::distance(&lhs, &rhs));
            }
            let ls = self
                .left_multiplication_matrix(&a.star(&a.basis(i)))
                .expect("dimension");
            star = star.max(linalg::distance(&ls, &self.left_regular[i].adjoint()));
        }
        let scale = (n as f64).sqrt();
        r.push(Check::scaled("representation_multiplicative", mult, tol, scale));
        let unit = self.left_multiplication_matrix(a.unit()).expect("dimension");
        r.push(Check::scaled("representation_unital", linalg::distance(&unit, &id), tol, scale));
        r.push(Check::scaled("representation_star", star, tol, scale));
        r
    }
}

/// Free-standing form of [`GnsData::left_multiplication_matrix`].
pub fn left_multiplication_matrix(
    _a: &FiniteHopfStarAlgebra,
    g: &GnsData,
    x: &CVector,
) -> Result<CMatrix> {
    g.left_multiplication_matrix(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::preset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn coords(h: &Functional) -> Vec<f64> {
        h.coords().iter().map(|z| z.re).collect()
    }

    #[test]
    fn haar_examples() {
        let h = compute_haar(&preset("kz2").unwrap(), 1e-9).unwrap();
        assert!(linalg::vec_distance(h.coords(), Functional::from_real(&[1.0, 0.0]).coords()) < 1e-14);
        let h = compute_haar(&preset("fz2").unwrap(), 1e-9).unwrap();
        assert!(linalg::vec_distance(h.coords(), Functional::from_real(&[0.5, 0.5]).coords()) < 1e-14);
        let h = compute_haar(&preset("trivial").unwrap(), 1e-9).unwrap();
        assert_eq!(coords(&h), vec![1.0]);
    }

    #[test]
    fn perturbed_haar_fails_invariance_but_traces() {
        let a = preset("kz2").unwrap();
        let bad = Functional::from_real(&[0.9, 0.1]);
        let r = verify_haar(&a, &bad, 1e-9);
        assert!(!r.overall_pass());
        assert!(r.residual("left_invariance") > 0.05);
        assert!(verify_trace(&a, &bad, 1e-9).overall_pass());
    }

    #[test]
    fn non_unique_haar_detected() {
        // With zero comultiplication and zero unit every functional solves
        // the invariance system; the solver must refuse to pick one.
        let a = preset("fz2").unwrap();
        let n = 2;
        let comult = CMatrix::zeros(4, 2);
        let unit = CVector::zeros(n);
        let fake = FiniteHopfStarAlgebra::new(
            "fake",
            a.labels().to_vec(),
            a.mult_matrix().clone(),
            comult,
            unit,
            CVector::from_element(n, c(1.0)),
            linalg::identity(n),
            linalg::identity(n),
        )
        .unwrap();
        assert!(matches!(solve_haar(&fake, 1e-9), Err(Error::NonUniqueHaar(2))));
    }

    #[test]
    fn gram_examples() {
        let a = preset("kz2").unwrap();
        let h = compute_haar(&a, 1e-9).unwrap();
        let g = gns_construct(&a, &h, 1e-9).unwrap();
        assert!(linalg::distance(g.gram(), &linalg::identity(2)) < 1e-14);

        let a = preset("fz2").unwrap();
        let h = compute_haar(&a, 1e-9).unwrap();
        let g = gns_construct(&a, &h, 1e-9).unwrap();
        assert!(linalg::distance(g.gram(), &(linalg::identity(2) * c(0.5))) < 1e-14);
        assert!(linalg::distance(g.from_onb(), &(linalg::identity(2) * c(2f64.sqrt()))) < 1e-14);

        let a = preset("trivial").unwrap();
        let h = compute_haar(&a, 1e-9).unwrap();
        let g = gns_construct(&a, &h, 1e-9).unwrap();
        assert_eq!(g.gram(), &linalg::identity(1));
        assert_eq!(g.left_regular()[0], linalg::identity(1));
    }

    #[test]
    fn non_faithful_functional_rejected() {
        let a = preset("fz2").unwrap();
        let delta_e = Functional::from_real(&[1.0, 0.0]);
        assert!(matches!(gns_construct(&a, &delta_e, 1e-9), Err(Error::NotPositive(_))));
    }

    #[test]
    fn left_multiplication_examples() {
        let a = preset("kz2").unwrap();
        let h = compute_haar(&a, 1e-9).unwrap();
        let g = gns_construct(&a, &h, 1e-9).unwrap();
        assert_eq!(g.left_multiplication_matrix(a.unit()).unwrap(), linalg::identity(2));
        let x = g.left_multiplication_matrix(&a.basis(1)).unwrap();
        let mut expected = CMatrix::zeros(2, 2);
        expected[(0, 1)] = c(1.0);
        expected[(1, 0)] = c(1.0);
        assert!(linalg::distance(&x, &expected) < 1e-15);
        assert!(g.left_multiplication_matrix(&CVector::zeros(3)).is_err());
    }

    #[test]
    fn state_properties_on_presets() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in ["trivial", "kz3", "fz4", "ks3", "fs3", "dual:fs3", "dual:ks3"] {
            let a = preset(name).unwrap();
            let h = compute_haar(&a, 1e-9).unwrap();
            assert!(verify_trace(&a, &h, 1e-9).overall_pass(), "{name}");
            let g = gns_construct(&a, &h, 1e-9).unwrap();
            let rep = g.verify(&a, 1e-9);
            assert!(rep.overall_pass(), "{name}: {rep:?}");
            assert!(rep.residual("representation_multiplicative") <= 1e-12);
            let lin_a = CVector::from_fn(a.dim(), |_, _| Complex64::new(rng.gen(), rng.gen()));
            let lin_b = CVector::from_fn(a.dim(), |_, _| Complex64::new(rng.gen(), rng.gen()));
            let sum = g.left_multiplication_matrix(&(&lin_a + &lin_b)).unwrap();
            let parts = g.left_multiplication_matrix(&lin_a).unwrap()
                + g.left_multiplication_matrix(&lin_b).unwrap();
            assert!(linalg::distance(&sum, &parts) < 1e-12);
            for _ in 0..10 {
                let x = CVector::from_fn(a.dim(), |_, _| {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                });
                let v = h.apply(&a.mul(&a.star(&x), &x));
                assert!(v.re >= -1e-9 && v.im.abs() < 1e-12, "{name}: {v}");
            }
        }
    }
}
