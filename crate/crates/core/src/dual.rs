//! The dual Hopf *-algebra `𝒜*`, the isomorphism `𝒢: φ ↦ (id ⊗ φ)W` onto `Â`
//! and the Fourier transform `ℱ: a ↦ h(· a)`.
//!
//! `𝒜*` is written in the dual basis `e^i` of the primal basis, so every
//! structure map is a plain transpose:
//!
//! | dual      | from primal                                   |
//! |-----------|-----------------------------------------------|
//! | product   | `Δᵀ` (convolution `(φ·ψ)(a) = (φ⊗ψ)Δ(a)`)      |
//! | coproduct | `μᵀ` (`φ ↦ φ∘μ`)                              |
//! | unit      | `ε`                                           |
//! | counit    | evaluation at `𝟙`                             |
//! | antipode  | `Sᵀ`                                          |
//! | star      | `φ*(a) = conj(φ(S(a)*))`, i.e. `Sᵀ·starᴴ`      |

use crate::error::{Error, Result};
use crate::haar::{compute_haar, Functional};
use crate::hopf::{verify_hopf_star_axioms, FiniteHopfStarAlgebra};
use crate::linalg::{self, CMatrix, CVector};
use crate::report::{Check, VerificationReport};
use crate::tensor::{slice, FunctionalOnOperators, Side};
use crate::unitary::MultiplicativeUnitary;

/// Builds `𝒜*` in the dual basis.
pub fn build_dual(a: &FiniteHopfStarAlgebra) -> FiniteHopfStarAlgebra {
    let labels = a.labels().iter().map(|l| format!("hat({l})")).collect();
    let star = a.antipode_matrix().transpose() * a.star_matrix().adjoint();
    FiniteHopfStarAlgebra::new(
        format!("dual({})", a.name()),
        labels,
        a.comult_matrix().transpose(),
        a.mult_matrix().transpose(),
        a.counit().clone(),
        a.unit().clone(),
        a.antipode_matrix().transpose(),
        star,
    )
    .expect("transposed shapes are consistent")
}

/// Axioms of `𝒜*`, existence of its Haar state and `𝒜** = 𝒜` on tensors.
pub fn verify_dual_hopf(a: &FiniteHopfStarAlgebra, tol: f64) -> VerificationReport {
    let dual = build_dual(a);
    let mut r = VerificationReport::new();
    r.extend_prefixed("axioms", verify_hopf_star_axioms(&dual, tol));
    let haar = compute_haar(&dual, tol);
    r.push(match &haar {
        Ok(_) => Check::new("haar_exists", 0.0, 0.0),
        Err(e) => Check::new("haar_exists", f64::INFINITY, 0.0).with_note(e.to_string()),
    });
    let dd = build_dual(&dual);
    let res = [
        linalg::distance(dd.mult_matrix(), a.mult_matrix()),
        linalg::distance(dd.comult_matrix(), a.comult_matrix()),
        linalg::vec_distance(dd.unit(), a.unit()),
        linalg::vec_distance(dd.counit(), a.counit()),
        linalg::distance(dd.antipode_matrix(), a.antipode_matrix()),
        linalg::distance(dd.star_matrix(), a.star_matrix()),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    r.push(Check::scaled("double_dual", res, tol, 1.0));
    r
}

/// `𝒢(φ) = (id ⊗ φ)W`.
pub fn g_map(w: &MultiplicativeUnitary, phi: &Functional) -> Result<CMatrix> {
    w.right_slice_by_functional(phi.coords())
}

/// Injectivity, multiplicativity, *-compatibility and unitality of `𝒢` on
/// the dual basis, and the intertwining `(𝒢 ⊗ 𝒢)(φ∘μ) = Δ̂(𝒢(φ))`.
pub fn verify_g_map(w: &MultiplicativeUnitary, tol: f64) -> Result<VerificationReport> {
    let a = w.quantum_group().algebra();
    let dual = build_dual(a);
    let n = a.dim();
    let g_of = |coords: CVector| w.right_slice_by_functional(&coords);
    let images: Vec<CMatrix> = (0..n)
        .map(|k| g_of(linalg::basis_vector(n, k)))
        .collect::<Result<_>>()?;
    let scale = (n as f64).sqrt();
    let mut r = VerificationReport::new();

    let vecs: Vec<CVector> = images.iter().map(linalg::vectorize).collect();
    let rank = linalg::rank(&CMatrix::from_columns(&vecs), tol);
    r.push(Check::new("injective", (n - rank.min(n)) as f64, 0.0).with_note(format!("rank {rank} of {n}")));

    let mut mult = 0.0f64;
    let mut star = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let conv = dual.mul(&dual.basis(i), &dual.basis(j));
            let lhs = g_of(conv)?;
            mult = mult.max(linalg::distance(&lhs, &(&images[i] * &images[j])));
        }
        let lhs = g_of(dual.star(&dual.basis(i)))?;
        star = star.max(linalg::distance(&lhs, &images[i].adjoint()));
    }
    r.push(Check::scaled("multiplicative", mult, tol, scale));
    r.push(Check::scaled("star", star, tol, scale));
    let unit = g_of(a.counit().clone())?;
    r.push(Check::scaled("unital", linalg::distance(&unit, &linalg::identity(n)), tol, scale));

    let wm = w.matrix();
    let mut inter = 0.0f64;
    for k in 0..n {
        // φ∘μ for φ = e^k: (e_i ⊗ e_j) ↦ m[i][j][k].
        let mut lhs = CMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let coeff = a.m(i, j, k);
                if coeff.norm() > 0.0 {
                    lhs += linalg::kron(&images[i], &images[j]) * coeff;
                }
            }
        }
        let rhs = wm.adjoint() * linalg::kron(&linalg::identity(n), &images[k]) * wm;
        inter = inter.max(linalg::distance(&lhs, &rhs));
    }
    r.push(Check::scaled("coproduct_intertwining", inter, tol, scale * scale));
    Ok(r)
}

/// `ℱ(a) = h(· a)` as a functional.
pub fn fourier(a: &FiniteHopfStarAlgebra, h: &Functional, x: &CVector) -> Functional {
    Functional::new(fourier_matrix(a, h) * x)
}

/// Matrix of `ℱ`: `F[(b, j)] = h(e_b e_j)`.
pub fn fourier_matrix(a: &FiniteHopfStarAlgebra, h: &Functional) -> CMatrix {
    let n = a.dim();
    CMatrix::from_fn(n, n, |b, j| h.apply(&a.mul(&a.basis(b), &a.basis(j))))
}

pub fn fourier_inverse(a: &FiniteHopfStarAlgebra, h: &Functional) -> Result<CMatrix> {
    linalg::inverse(&fourier_matrix(a, h), "Fourier transform")
}

/// Invertibility of `ℱ` with its condition number.
pub fn verify_fourier(a: &FiniteHopfStarAlgebra, h: &Functional, tol: f64) -> Result<VerificationReport> {
    let f = fourier_matrix(a, h);
    let sv = linalg::singular_values(&f);
    let (max, min) = (sv[0], *sv.last().expect("non-empty"));
    let mut r = VerificationReport::new();
    r.push(Check::lower_bound("invertible", min, tol));
    if min <= tol {
        return Ok(r);
    }
    let finv = linalg::inverse(&f, "Fourier transform")?;
    let n = a.dim();
    let id = linalg::identity(n);
    let res = linalg::distance(&(&finv * &f), &id).max(linalg::distance(&(&f * &finv), &id));
    r.push(Check::scaled("inverse", res, tol, 1.0).with_note(format!("condition number {:.6e}", max / min)));
    let one = fourier(a, h, a.unit());
    r.push(Check::new("unit_maps_to_haar", linalg::vec_distance(one.coords(), h.coords()), tol));
    Ok(r)
}

/// `𝒢(ℱ(a)) = (id ⊗ h(· a))W` for every basis element, comparing the
/// expansion route with a direct operator slice by `ω_{𝟙,a}` (since
/// `h(b a) = ⟨𝟙, L_b a⟩`).
pub fn verify_fourier_closed_form(w: &MultiplicativeUnitary, tol: f64) -> Result<VerificationReport> {
    let qg = w.quantum_group();
    let a = qg.algebra();
    let h = qg.haar();
    let g = qg.gns();
    let n = a.dim();
    let bra = g.vector(a.unit());
    let mut worst = 0.0f64;
    for k in 0..n {
        let via_g = g_map(w, &fourier(a, h, &a.basis(k)))?;
        let omega = FunctionalOnOperators::new(bra.clone(), g.vector(&a.basis(k)))?;
        let direct = slice(w.operator(), Side::Right, &omega)?;
        worst = worst.max(linalg::distance(&via_g, &direct));
    }
    Ok(std::iter::once(Check::scaled("closed_form", worst, tol, (n as f64).sqrt())).collect())
}

/// `ℱ⁻¹` applied to a functional.
pub fn fourier_preimage(a: &FiniteHopfStarAlgebra, h: &Functional, phi: &Functional) -> Result<CVector> {
    if phi.dim() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "functional has {} coordinates, algebra has dimension {}",
            phi.dim(),
            a.dim()
        )));
    }
    Ok(fourier_inverse(a, h)? * phi.coords())
}
