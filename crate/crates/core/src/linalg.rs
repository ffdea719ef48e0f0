//! Dense complex linear-algebra helpers shared by every module.
//!
//! Vectorization is row-major throughout: `vec(A)[i * cols + j] = A[(i, j)]`,
//! which matches the leg-1-slowest ordering of tensor bases.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_norm(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn distance(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn vec_distance(a: &CVector, b: &CVector) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = CVector::zeros(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

pub fn basis_vector(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = c(1.0);
    v
}

pub fn conj_matrix(m: &CMatrix) -> CMatrix {
    m.map(|z| z.conj())
}

pub fn conj_vector(v: &CVector) -> CVector {
    v.map(|z| z.conj())
}

pub fn vectorize(m: &CMatrix) -> CVector {
    let (r, cols) = m.shape();
    CVector::from_fn(r * cols, |k, _| m[(k / cols, k % cols)])
}

pub fn unvectorize(v: &CVector, rows: usize, cols: usize) -> CMatrix {
    debug_assert_eq!(v.len(), rows * cols);
    CMatrix::from_fn(rows, cols, |i, j| v[i * cols + j])
}

/// Operator-Schmidt reshuffle of an operator on `d1 ⊗ d2`:
/// `R[(i,j),(k,l)] = X[(i,k),(j,l)]`, so that `X = Σ A_t ⊗ B_t` iff
/// `R = Σ vec(A_t) vec(B_t)ᵀ`.
pub fn reshuffle(x: &CMatrix, d1: usize, d2: usize) -> CMatrix {
    debug_assert_eq!(x.nrows(), d1 * d2);
    let mut r = CMatrix::zeros(d1 * d1, d2 * d2);
    for i in 0..d1 {
        for j in 0..d1 {
            for k in 0..d2 {
                for l in 0..d2 {
                    r[(i * d1 + j, k * d2 + l)] = x[(i * d2 + k, j * d2 + l)];
                }
            }
        }
    }
    r
}

/// Inverse of [`reshuffle`].
pub fn unreshuffle(r: &CMatrix, d1: usize, d2: usize) -> CMatrix {
    let mut x = CMatrix::zeros(d1 * d2, d1 * d2);
    for i in 0..d1 {
        for j in 0..d1 {
            for k in 0..d2 {
                for l in 0..d2 {
                    x[(i * d2 + k, j * d2 + l)] = r[(i * d1 + j, k * d2 + l)];
                }
            }
        }
    }
    x
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// Numerical rank: number of singular values above `rel_tol · max(1, σ_max)`.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let thresh = rel_tol * sv.first().copied().unwrap_or(0.0).max(1.0);
    sv.iter().filter(|&&s| s > thresh).count()
}

pub fn min_singular_value(m: &CMatrix) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Orthonormal basis (as columns) of the right null space of `m`, using the
/// threshold `rel_tol · max(1, σ_max)`.
pub fn nullspace(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let n = m.ncols();
    // Pad to at least square so the SVD returns a full right-singular basis.
    let padded = if m.nrows() < n {
        let mut p = CMatrix::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let thresh = rel_tol * sigma_max.max(1.0);
    let cols: Vec<CVector> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= thresh)
        .map(|(k, _)| v_t.row(k).adjoint())
        .collect();
    if cols.is_empty() {
        CMatrix::zeros(n, 0)
    } else {
        CMatrix::from_columns(&cols)
    }
}

pub fn inverse(m: &CMatrix, what: &str) -> Result<CMatrix> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::Singular(what.to_string()))
}

/// Hermitian part eigenvalues, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    ev
}

/// A finite family of vectors with a least-squares projector onto their span.
#[derive(Debug, Clone)]
pub struct Span {
    basis: CMatrix,
    pinv: CMatrix,
}

impl Span {
    /// `basis` holds the spanning vectors as columns.
    pub fn new(basis: CMatrix) -> Self {
        let pinv = if basis.ncols() == 0 {
            CMatrix::zeros(0, basis.nrows())
        } else {
            let sv_max = singular_values(&basis).first().copied().unwrap_or(0.0);
            basis
                .clone()
                .svd(true, true)
                .pseudo_inverse(1e-12 * sv_max.max(1.0))
                .expect("SVD computed with U and V")
        };
        Span { basis, pinv }
    }

    pub fn from_vectors(vectors: &[CVector]) -> Self {
        Span::new(CMatrix::from_columns(vectors))
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Least-squares coordinates of `v` together with the residual
    /// `‖basis · coords − v‖`.
    pub fn project(&self, v: &CVector) -> (CVector, f64) {
        let coords = &self.pinv * v;
        let back = &self.basis * &coords;
        (coords, vec_distance(&back, v))
    }

    pub fn pinv(&self) -> &CMatrix {
        &self.pinv
    }
}

/// Membership of a two-leg operator in `U ⊗ V` where `U` and `V` are spans of
/// operators. Works on the reshuffled operator so the cost stays at the size
/// of the factors rather than the product space.
#[derive(Debug, Clone)]
pub struct ProductSpan {
    left: Span,
    right: Span,
    d1: usize,
    d2: usize,
}

impl ProductSpan {
    /// `left` spans operators of side `d1`, `right` spans operators of side `d2`
    /// (both vectorized row-major as columns).
    pub fn new(left: Span, right: Span, d1: usize, d2: usize) -> Self {
        ProductSpan {
            left,
            right,
            d1,
            d2,
        }
    }

    /// Coefficients `C` with `x ≈ Σ C[s,t] U_s ⊗ V_t` and the residual.
    pub fn expand(&self, x: &CMatrix) -> (CMatrix, f64) {
        let r = reshuffle(x, self.d1, self.d2);
        let coeffs = self.left.pinv() * &r * self.right.pinv().transpose();
        let back = self.left.basis() * &coeffs * self.right.basis().transpose();
        (coeffs, distance(&back, &r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(rows: usize, cols: usize, seed: u64) -> CMatrix {
        CMatrix::from_fn(rows, cols, |i, j| {
            let t = (seed as f64) + 1.7 * i as f64 + 0.31 * j as f64;
            Complex64::new(t.sin(), (2.0 * t).cos())
        })
    }

    #[test]
    fn reshuffle_of_kron_is_outer_product() {
        let a = sample(2, 2, 1);
        let b = sample(3, 3, 2);
        let r = reshuffle(&kron(&a, &b), 2, 3);
        let expected = vectorize(&a) * vectorize(&b).transpose();
        assert!(distance(&r, &expected) < 1e-14);
        assert!(distance(&unreshuffle(&r, 2, 3), &kron(&a, &b)) < 1e-14);
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        let mut m = sample(4, 3, 3);
        let col = m.column(0) + m.column(1);
        m.set_column(2, &col);
        let ns = nullspace(&m, 1e-10);
        assert_eq!(ns.ncols(), 1);
        assert!(frobenius(&(&m * &ns)) < 1e-12);
        assert_eq!(rank(&m, 1e-10), 2);
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = sample(1, 3, 4);
        assert_eq!(nullspace(&m, 1e-10).ncols(), 2);
    }

    #[test]
    fn span_projection() {
        let span = Span::from_vectors(&[basis_vector(3, 0), basis_vector(3, 1)]);
        let (coords, res) = span.project(&CVector::from_vec(vec![c(2.0), c(3.0), c(0.0)]));
        assert!(res < 1e-14);
        assert!((coords[1] - c(3.0)).norm() < 1e-14);
        let (_, res) = span.project(&basis_vector(3, 2));
        assert!((res - 1.0).abs() < 1e-14);
    }
}
