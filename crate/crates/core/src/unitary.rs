//! The multiplicative unitary `W(a ⊗ b) = Δ(a)(𝟙 ⊗ b)` on `ℋ ⊗ ℋ`, the dual
//! subspace `Â = {(id ⊗ ω)W}` and its comultiplication `Δ̂(x) = W*(𝟙 ⊗ x)W`.
//!
//! Every operator here lives in orthonormal ℋ-coordinates. Maps that act on
//! the algebra (`Δ`, `S`, functionals on `𝒜`) are applied to an operator
//! through the expansion `W = Σ_k X_k ⊗ L_{e_k}` in `Â ⊗ 𝖠`, never
//! entrywise.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, CVector, ProductSpan, Span};
use crate::quantum::FiniteQuantumGroup;
use crate::report::{Check, VerificationReport};
use crate::tensor::{embed_legs, slice, FunctionalOnOperators, Side, TensorOperator};

#[derive(Debug, Clone)]
pub struct MultiplicativeUnitary {
    w: TensorOperator,
    qg: FiniteQuantumGroup,
    /// `X_k` with `W = Σ_k X_k ⊗ L_{e_k}`; `X_k = (id ⊗ e^k)W` for the dual basis.
    dual_basis: Vec<CMatrix>,
    expansion_residual: f64,
}

/// Matrix of `a ⊗ b ↦ f(a)(𝟙 ⊗ b)` in algebra coordinates, where `fd` is the
/// `n² × n` matrix of `f: 𝒜 → 𝒜 ⊗ 𝒜`.
fn twisted_map(qg: &FiniteQuantumGroup, fd: &CMatrix) -> CMatrix {
    let a = qg.algebra();
    let n = a.dim();
    let mut out = CMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            for p in 0..n {
                for q in 0..n {
                    let d = fd[(p * n + q, i)];
                    if d == c(0.0) {
                        continue;
                    }
                    for r in 0..n {
                        let m = a.m(q, j, r);
                        if m != c(0.0) {
                            out[(p * n + r, col)] += d * m;
                        }
                    }
                }
            }
        }
    }
    out
}

fn to_onb_2(qg: &FiniteQuantumGroup, m: &CMatrix) -> CMatrix {
    let g = qg.gns();
    linalg::kron(g.to_onb(), g.to_onb()) * m * linalg::kron(g.from_onb(), g.from_onb())
}

/// Builds `W` in orthonormal ℋ ⊗ ℋ coordinates.
pub fn build_w(qg: &FiniteQuantumGroup) -> Result<MultiplicativeUnitary> {
    let n = qg.dim();
    let walg = twisted_map(qg, qg.algebra().comult_matrix());
    let w = TensorOperator::new(vec![n, n], to_onb_2(qg, &walg))?;

    let l_span = Span::from_vectors(
        &qg.gns()
            .left_regular()
            .iter()
            .map(linalg::vectorize)
            .collect::<Vec<_>>(),
    );
    let r = linalg::reshuffle(w.matrix(), n, n);
    let coeffs = &r * l_span.pinv().transpose();
    let back = &coeffs * l_span.basis().transpose();
    let expansion_residual = linalg::distance(&back, &r);
    let dual_basis = (0..n)
        .map(|k| linalg::unvectorize(&coeffs.column(k).into_owned(), n, n))
        .collect();
    Ok(MultiplicativeUnitary {
        w,
        qg: qg.clone(),
        dual_basis,
        expansion_residual,
    })
}

/// Matrix of `a ⊗ b ↦ ((id ⊗ S)Δ(a))(𝟙 ⊗ b)` in orthonormal coordinates.
pub fn build_w_inverse_via_antipode(qg: &FiniteQuantumGroup) -> Result<TensorOperator> {
    let a = qg.algebra();
    let n = a.dim();
    let id_s = linalg::kron(&linalg::identity(n), a.antipode_matrix()) * a.comult_matrix();
    TensorOperator::new(vec![n, n], to_onb_2(qg, &twisted_map(qg, &id_s)))
}

/// `‖W₂₃W₁₂W₂₃* − W₁₂W₁₃‖` for any operator on two equal legs.
pub fn pentagon_residual(w: &TensorOperator) -> Result<f64> {
    let dims = w.dims();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::DimensionMismatch(format!(
            "pentagon needs an operator on two equal legs, got {dims:?}"
        )));
    }
    let ambient = [dims[0]; 3];
    let w12 = embed_legs(w, &[1, 2], &ambient)?;
    let w13 = embed_legs(w, &[1, 3], &ambient)?;
    let w23 = embed_legs(w, &[2, 3], &ambient)?;
    let lhs = w23.matrix() * w12.matrix() * w23.matrix().adjoint();
    let rhs = w12.matrix() * w13.matrix();
    Ok(linalg::distance(&lhs, &rhs))
}

pub fn verify_pentagon(w: &TensorOperator, tol: f64) -> Result<VerificationReport> {
    let scale = (w.total_dim() as f64).powf(1.5);
    Ok(std::iter::once(Check::scaled("pentagon", pentagon_residual(w)?, tol, scale)).collect())
}

impl MultiplicativeUnitary {
    pub fn operator(&self) -> &TensorOperator {
        &self.w
    }

    pub fn matrix(&self) -> &CMatrix {
        self.w.matrix()
    }

    pub fn quantum_group(&self) -> &FiniteQuantumGroup {
        &self.qg
    }

    pub fn dim(&self) -> usize {
        self.qg.dim()
    }

    /// The basis `X_k = (id ⊗ e^k)W` of `Â`.
    pub fn dual_basis(&self) -> &[CMatrix] {
        &self.dual_basis
    }

    /// Residual of `W = Σ_k X_k ⊗ L_{e_k}`.
    pub fn expansion_residual(&self) -> f64 {
        self.expansion_residual
    }

    fn tol_scale(&self) -> f64 {
        (self.w.total_dim() as f64).sqrt()
    }

    fn require_expansion(&self, tol: f64) -> Result<()> {
        if self.expansion_residual > tol * self.tol_scale() {
            Err(Error::ExpansionFailed(self.expansion_residual))
        } else {
            Ok(())
        }
    }

    /// `Σ_k X_k ⊗ T_k` on legs `[n, …]`.
    fn assemble(&self, right: impl Fn(usize) -> CMatrix) -> CMatrix {
        let mut out: Option<CMatrix> = None;
        for (k, x) in self.dual_basis.iter().enumerate() {
            let term = linalg::kron(x, &right(k));
            out = Some(match out {
                Some(acc) => acc + term,
                None => term,
            });
        }
        out.expect("dimension at least one")
    }

    /// `W*W = WW* = 1`.
    pub fn verify_unitarity(&self, tol: f64) -> VerificationReport {
        let id = linalg::identity(self.w.total_dim());
        let m = self.w.matrix();
        let res = linalg::distance(&(m.adjoint() * m), &id).max(linalg::distance(&(m * m.adjoint()), &id));
        std::iter::once(Check::scaled("unitarity", res, tol, self.tol_scale())).collect()
    }

    /// The antipode formula for `W⁻¹`: `‖VW − 1‖` and `‖V − W*‖`.
    pub fn verify_inverse_via_antipode(&self, tol: f64) -> Result<VerificationReport> {
        let v = build_w_inverse_via_antipode(&self.qg)?;
        let id = linalg::identity(self.w.total_dim());
        let mut r = VerificationReport::new();
        r.push(Check::scaled(
            "inverse_product",
            linalg::distance(&(v.matrix() * self.w.matrix()), &id),
            tol,
            self.tol_scale(),
        ));
        r.push(Check::scaled(
            "inverse_is_adjoint",
            linalg::distance(v.matrix(), &self.w.matrix().adjoint()),
            tol,
            self.tol_scale(),
        ));
        Ok(r)
    }

    pub fn verify_pentagon(&self, tol: f64) -> Result<VerificationReport> {
        verify_pentagon(&self.w, tol)
    }

    /// Left slices `(ω_{f_i,f_j} ⊗ id)W` by orthonormal matrix units: each is
    /// left multiplication by `(h ⊗ id)((f_i* ⊗ 𝟙)Δ(f_j))`, and together they
    /// span exactly `𝖠 = span{L_{e_k}}`.
    pub fn verify_left_slices_span_a(&self, tol: f64) -> VerificationReport {
        let n = self.dim();
        let a = self.qg.algebra();
        let g = self.qg.gns();
        let h = self.qg.haar();
        let mut formula = 0.0f64;
        let mut slices = Vec::with_capacity(n * n);
        for i in 0..n {
            let x = g.from_onb().column(i).into_owned();
            let x_star = a.star(&x);
            // h(x* e_p) for every p.
            let hx: Vec<_> = (0..n).map(|p| h.apply(&a.mul(&x_star, &a.basis(p)))).collect();
            for j in 0..n {
                let omega = FunctionalOnOperators::matrix_unit(n, i, j);
                let s = slice(&self.w, Side::Left, &omega).expect("two legs");
                let y = g.from_onb().column(j).into_owned();
                let dy = a.coproduct(&y);
                let coeff = CVector::from_fn(n, |q, _| (0..n).map(|p| dy[p * n + q] * hx[p]).sum());
                let expected = g.left_multiplication_matrix(&coeff).expect("dimension");
                formula = formula.max(linalg::distance(&s, &expected));
                slices.push(linalg::vectorize(&s));
            }
        }
        let slice_mat = CMatrix::from_columns(&slices);
        let dim = linalg::rank(&slice_mat, tol);
        let l_vecs: Vec<CVector> = g.left_regular().iter().map(linalg::vectorize).collect();
        let l_span = Span::from_vectors(&l_vecs);
        let slice_span = Span::from_vectors(&slices);
        let into_a = slices.iter().map(|s| l_span.project(s).1).fold(0.0, f64::max);
        let onto_a = l_vecs.iter().map(|l| slice_span.project(l).1).fold(0.0, f64::max);

        let mut r = VerificationReport::new();
        r.push(Check::scaled("formula", formula, tol, self.tol_scale()));
        r.push(
            Check::new("span_dimension", (dim as f64 - n as f64).abs(), 0.0)
                .with_note(format!("rank {dim}, algebra dimension {n}")),
        );
        r.push(Check::scaled("span_equals_algebra", into_a.max(onto_a), tol, self.tol_scale()));
        r
    }

    /// `W(L_a ⊗ 1)W* = L(Δ(a))` for the given element, together with the global
    /// identity `(id ⊗ Δ)W = W₁₂W₁₃`.
    pub fn comultiplication_via_w(&self, x: &CVector, tol: f64) -> Result<VerificationReport> {
        let mut r = self.verify_implements_comultiplication(std::slice::from_ref(x), tol)?;
        r.extend_prefixed("", self.verify_id_tensor_comult(tol)?);
        Ok(r)
    }

    /// Max over `elements` of `‖W(L_a ⊗ 1)W* − L(Δ(a))‖`.
    pub fn verify_implements_comultiplication(
        &self,
        elements: &[CVector],
        tol: f64,
    ) -> Result<VerificationReport> {
        let n = self.dim();
        let a = self.qg.algebra();
        let g = self.qg.gns();
        let w = self.w.matrix();
        let mut worst = 0.0f64;
        for x in elements {
            let la = g.left_multiplication_matrix(x)?;
            let lhs = w * linalg::kron(&la, &linalg::identity(n)) * w.adjoint();
            let rhs = g.left_multiplication_2(&a.coproduct(x));
            worst = worst.max(linalg::distance(&lhs, &rhs));
        }
        Ok(std::iter::once(Check::scaled("implements_comultiplication", worst, tol, self.tol_scale())).collect())
    }

    /// `(id ⊗ Δ)W = W₁₂W₁₃` with `Δ` applied through the `Â ⊗ 𝖠` expansion.
    pub fn verify_id_tensor_comult(&self, tol: f64) -> Result<VerificationReport> {
        self.require_expansion(tol)?;
        let n = self.dim();
        let a = self.qg.algebra();
        let g = self.qg.gns();
        let lhs = self.assemble(|k| g.left_multiplication_2(&a.coproduct(&a.basis(k))));
        let ambient = [n; 3];
        let w12 = embed_legs(&self.w, &[1, 2], &ambient)?;
        let w13 = embed_legs(&self.w, &[1, 3], &ambient)?;
        let rhs = w12.matrix() * w13.matrix();
        Ok(std::iter::once(Check::scaled(
            "id_tensor_comult",
            linalg::distance(&lhs, &rhs),
            tol,
            (n as f64).powf(1.5),
        ))
        .collect())
    }

    /// `(id ⊗ S)W = W*`, applying `S` to the `𝖠` leg of the expansion.
    pub fn verify_antipode_relation(&self, tol: f64) -> Result<VerificationReport> {
        self.require_expansion(tol)?;
        let a = self.qg.algebra();
        let g = self.qg.gns();
        let lhs = self.assemble(|k| {
            g.left_multiplication_matrix(&a.antipode(&a.basis(k)))
                .expect("dimension")
        });
        let res = linalg::distance(&lhs, &self.w.matrix().adjoint());
        Ok(std::iter::once(Check::scaled("antipode_relation", res, tol, self.tol_scale())).collect())
    }

    /// `(id ⊗ φ)W = Σ_k φ(e_k) X_k` for a functional given by its values on the basis.
    pub fn right_slice_by_functional(&self, phi: &CVector) -> Result<CMatrix> {
        let n = self.dim();
        if phi.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "functional has {} coordinates, algebra has dimension {n}",
                phi.len()
            )));
        }
        let mut out = CMatrix::zeros(n, n);
        for (x, w) in self.dual_basis.iter().zip(phi.iter()) {
            out += x * *w;
        }
        Ok(out)
    }

    /// Builds `Â` and checks its dimension, that `W ∈ Â ⊗ 𝖠` and that `Â` is
    /// a *-subalgebra of `L(ℋ)`.
    pub fn build_dual_subspace(&self, tol: f64) -> Result<DualSubspace> {
        let n = self.dim();
        let slices: Vec<CVector> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let omega = FunctionalOnOperators::matrix_unit(n, i, j);
                linalg::vectorize(&slice(&self.w, Side::Right, &omega).expect("two legs"))
            })
            .collect();
        let slice_rank = linalg::rank(&CMatrix::from_columns(&slices), tol);
        if slice_rank != n {
            return Err(Error::DimensionMismatch(format!(
                "right slices of W span a {slice_rank}-dimensional space, expected {n}"
            )));
        }
        let basis_vecs: Vec<CVector> = self.dual_basis.iter().map(linalg::vectorize).collect();
        if linalg::rank(&CMatrix::from_columns(&basis_vecs), tol) != n {
            return Err(Error::DimensionMismatch(
                "the expansion coefficients of W are linearly dependent".into(),
            ));
        }
        let span = Span::from_vectors(&basis_vecs);
        let scale = self.tol_scale();
        let mut report = VerificationReport::new();
        report.push(Check::new("dimension", 0.0, 0.0).with_note(format!("dim Â = {n}")));

        let slices_in = slices.iter().map(|s| span.project(s).1).fold(0.0, f64::max);
        report.push(Check::scaled("contains_right_slices", slices_in, tol, scale));

        let l_vecs: Vec<CVector> = self.qg.gns().left_regular().iter().map(linalg::vectorize).collect();
        let product = ProductSpan::new(span.clone(), Span::from_vectors(&l_vecs), n, n);
        let (_, w_res) = product.expand(self.w.matrix());
        report.push(Check::scaled("w_in_dual_tensor_algebra", w_res, tol, scale));

        let mut prod_res = 0.0f64;
        let mut adj_res = 0.0f64;
        for x in &self.dual_basis {
            for y in &self.dual_basis {
                prod_res = prod_res.max(span.project(&linalg::vectorize(&(x * y))).1);
            }
            adj_res = adj_res.max(span.project(&linalg::vectorize(&x.adjoint())).1);
        }
        report.push(Check::scaled("product_closure", prod_res, tol, scale));
        report.push(Check::scaled("adjoint_closure", adj_res, tol, scale));
        Ok(DualSubspace {
            basis: self.dual_basis.clone(),
            span,
            n,
            report,
        })
    }

    /// `Δ̂(x) = W*(1 ⊗ x)W`, with a report on `Δ̂(x) ∈ Â ⊗ Â` and on the
    /// global identity `(Δ̂ ⊗ id)W = W₁₃W₂₃`.
    pub fn dual_comultiplication(
        &self,
        dual: &DualSubspace,
        x: &CMatrix,
        tol: f64,
    ) -> Result<(TensorOperator, VerificationReport)> {
        let n = self.dim();
        let (_, res) = dual.coordinates(x);
        if res > tol * (1.0 + linalg::frobenius(x)) {
            return Err(Error::NotInDualSubspace(res));
        }
        let y = self.dual_comult_raw(x);
        let (_, in_res) = dual.product_span().expand(&y);
        let mut r = VerificationReport::new();
        r.push(Check::scaled("in_dual_tensor_dual", in_res, tol, 1.0 + linalg::frobenius(x)));
        r.extend_prefixed("", self.verify_dual_pentagon_identity(tol)?);
        Ok((TensorOperator::new(vec![n, n], y)?, r))
    }

    fn dual_comult_raw(&self, x: &CMatrix) -> CMatrix {
        let n = self.dim();
        let w = self.w.matrix();
        w.adjoint() * linalg::kron(&linalg::identity(n), x) * w
    }

    /// `(Δ̂ ⊗ id)W = W₁₃W₂₃`.
    pub fn verify_dual_pentagon_identity(&self, tol: f64) -> Result<VerificationReport> {
        self.require_expansion(tol)?;
        let n = self.dim();
        let g = self.qg.gns();
        let mut lhs = CMatrix::zeros(n * n * n, n * n * n);
        for (k, x) in self.dual_basis.iter().enumerate() {
            lhs += linalg::kron(&self.dual_comult_raw(x), &g.left_regular()[k]);
        }
        let ambient = [n; 3];
        let w13 = embed_legs(&self.w, &[1, 3], &ambient)?;
        let w23 = embed_legs(&self.w, &[2, 3], &ambient)?;
        let rhs = w13.matrix() * w23.matrix();
        Ok(std::iter::once(Check::scaled(
            "dual_comult_tensor_id",
            linalg::distance(&lhs, &rhs),
            tol,
            (n as f64).powf(1.5),
        ))
        .collect())
    }

    /// Coassociativity and the *-homomorphism property of `Δ̂` on a basis of `Â`.
    pub fn verify_dual_comultiplication(&self, dual: &DualSubspace, tol: f64) -> Result<VerificationReport> {
        let n = self.dim();
        let ps = dual.product_span();
        let mut coassoc = 0.0f64;
        let mut mult = 0.0f64;
        let mut star = 0.0f64;
        let comults: Vec<CMatrix> = dual.basis().iter().map(|x| self.dual_comult_raw(x)).collect();
        for (xi, dx) in dual.basis().iter().zip(&comults) {
            let (coeffs, res) = ps.expand(dx);
            if res > tol * (1.0 + linalg::frobenius(dx)) {
                return Err(Error::NotInDualSubspace(res));
            }
            // (Δ̂ ⊗ id)Δ̂(x) and (id ⊗ Δ̂)Δ̂(x) from the expansion Δ̂(x) = Σ c_st X_s ⊗ X_t.
            let mut left = CMatrix::zeros(n * n * n, n * n * n);
            let mut right = CMatrix::zeros(n * n * n, n * n * n);
            for s in 0..n {
                for t in 0..n {
                    let cst = coeffs[(s, t)];
                    if cst.norm() < 1e-15 {
                        continue;
                    }
                    left += linalg::kron(&comults[s], &dual.basis()[t]) * cst;
                    right += linalg::kron(&dual.basis()[s], &comults[t]) * cst;
                }
            }
            coassoc = coassoc.max(linalg::distance(&left, &right));
            for (xj, dy) in dual.basis().iter().zip(&comults) {
                let dxy = self.dual_comult_raw(&(xi * xj));
                mult = mult.max(linalg::distance(&dxy, &(dx * dy)));
            }
            star = star.max(linalg::distance(&self.dual_comult_raw(&xi.adjoint()), &dx.adjoint()));
        }
        let one = self.dual_comult_raw(&linalg::identity(n));
        let unit = linalg::distance(&one, &linalg::identity(n * n));
        let scale = (n as f64).powf(1.5);
        let mut r = VerificationReport::new();
        r.push(Check::scaled("coassociativity", coassoc, tol, scale));
        r.push(Check::scaled("multiplicative", mult, tol, scale));
        r.push(Check::scaled("star", star, tol, scale));
        r.push(Check::scaled("unital", unit, tol, scale));
        Ok(r)
    }
}

/// `Â = span{(id ⊗ ω)W}` with the basis `X_k` dual to the algebra basis.
#[derive(Debug, Clone)]
pub struct DualSubspace {
    basis: Vec<CMatrix>,
    span: Span,
    n: usize,
    report: VerificationReport,
}

impl DualSubspace {
    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn report(&self) -> &VerificationReport {
        &self.report
    }

    /// Coordinates of `x` in the basis `X_k` and the least-squares residual.
    pub fn coordinates(&self, x: &CMatrix) -> (CVector, f64) {
        self.span.project(&linalg::vectorize(x))
    }

    pub fn contains(&self, x: &CMatrix, tol: f64) -> bool {
        self.coordinates(x).1 <= tol * (1.0 + linalg::frobenius(x))
    }

    pub fn from_coordinates(&self, coords: &CVector) -> CMatrix {
        let mut out = CMatrix::zeros(self.n, self.n);
        for (x, w) in self.basis.iter().zip(coords.iter()) {
            out += x * *w;
        }
        out
    }

    /// Membership test for `Â ⊗ Â`.
    pub fn product_span(&self) -> ProductSpan {
        ProductSpan::new(self.span.clone(), self.span.clone(), self.n, self.n)
    }

    /// Largest `‖[X_i, X_j]‖` over basis pairs.
    pub fn commutativity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for x in &self.basis {
            for y in &self.basis {
                worst = worst.max(linalg::distance(&(x * y), &(y * x)));
            }
        }
        worst
    }
}

/// Every identity of the multiplicative-unitary suite, in a fixed order.
pub fn verify_unitary_suite(qg: &FiniteQuantumGroup, tol: f64) -> Result<VerificationReport> {
    let w = build_w(qg)?;
    let a = qg.algebra();
    let mut r = VerificationReport::new();
    r.extend_prefixed("w", w.verify_unitarity(tol));
    r.extend_prefixed("w", w.verify_inverse_via_antipode(tol)?);
    r.extend_prefixed("w", w.verify_pentagon(tol)?);
    r.extend_prefixed("w.left_slices", w.verify_left_slices_span_a(tol));
    let basis: Vec<CVector> = (0..a.dim()).map(|k| a.basis(k)).collect();
    r.extend_prefixed("w", w.verify_implements_comultiplication(&basis, tol)?);
    r.extend_prefixed("w", w.verify_id_tensor_comult(tol)?);
    r.extend_prefixed("w", w.verify_antipode_relation(tol)?);
    let dual = w.build_dual_subspace(tol)?;
    r.extend_prefixed("dual_subspace", dual.report().clone());
    r.extend_prefixed("dual_comult", w.verify_dual_pentagon_identity(tol)?);
    r.extend_prefixed("dual_comult", w.verify_dual_comultiplication(&dual, tol)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::preset;
    use crate::tensor::flip;

    fn qg(name: &str) -> FiniteQuantumGroup {
        FiniteQuantumGroup::new(preset(name).unwrap(), 1e-9).unwrap()
    }

    fn perm(images: &[usize]) -> CMatrix {
        let n = images.len();
        let mut m = CMatrix::zeros(n, n);
        for (src, &dst) in images.iter().enumerate() {
            m[(dst, src)] = c(1.0);
        }
        m
    }

    #[test]
    fn w_of_group_algebra_z2_is_cnot() {
        let w = build_w(&qg("kz2")).unwrap();
        // u_a ⊗ u_b ↦ u_a ⊗ u_{ab}: indices 0,1,2,3 ↦ 0,1,3,2.
        assert!(linalg::distance(w.matrix(), &perm(&[0, 1, 3, 2])) <= 1e-14);
    }

    #[test]
    fn w_of_function_algebra_z2() {
        // δ_a ⊗ δ_b ↦ δ_{ab} ⊗ δ_b; normalization cancels for a permutation.
        let w = build_w(&qg("fz2")).unwrap();
        let images: Vec<usize> = (0..4).map(|k| (((k / 2) ^ (k % 2)) * 2) + k % 2).collect();
        assert!(linalg::distance(w.matrix(), &perm(&images)) <= 1e-14);
        let kw = build_w(&qg("kz2")).unwrap();
        assert!(linalg::distance(w.matrix(), kw.matrix()) > 1.0);
    }

    #[test]
    fn trivial_w() {
        let w = build_w(&qg("trivial")).unwrap();
        assert!(linalg::distance(w.matrix(), &linalg::identity(1)) < 1e-15);
        let v = build_w_inverse_via_antipode(&qg("trivial")).unwrap();
        assert!(linalg::distance(v.matrix(), &linalg::identity(1)) < 1e-15);
    }

    #[test]
    fn inverse_via_antipode_examples() {
        let q = qg("kz2");
        let w = build_w(&q).unwrap();
        let v = build_w_inverse_via_antipode(&q).unwrap();
        assert!(linalg::distance(v.matrix(), w.matrix()) < 1e-15);
        let q = qg("fz3");
        let w = build_w(&q).unwrap();
        let v = build_w_inverse_via_antipode(&q).unwrap();
        assert!(linalg::distance(&(v.matrix() * w.matrix()), &linalg::identity(9)) < 1e-12);
    }

    #[test]
    fn pentagon_examples() {
        let w = build_w(&qg("kz2")).unwrap();
        assert!(pentagon_residual(w.operator()).unwrap() <= 1e-15);
        let w = build_w(&qg("ks3")).unwrap();
        assert!(pentagon_residual(w.operator()).unwrap() <= 1e-12);
        let swap = flip(2, 2).unwrap();
        assert!(pentagon_residual(&swap).unwrap() > 0.5);
        assert!(!verify_pentagon(&swap, 1e-9).unwrap().overall_pass());
    }

    #[test]
    fn left_slice_spans() {
        for (name, n) in [("trivial", 1), ("kz2", 2), ("fs3", 6)] {
            let w = build_w(&qg(name)).unwrap();
            let r = w.verify_left_slices_span_a(1e-9);
            assert!(r.overall_pass(), "{name}: {r:?}");
            assert!(r.get("span_dimension").unwrap().note.as_deref().unwrap().contains(&format!("rank {n}")));
        }
    }

    #[test]
    fn comultiplication_is_implemented() {
        let q = qg("kz2");
        let w = build_w(&q).unwrap();
        let r = w.comultiplication_via_w(q.algebra().unit(), 1e-9).unwrap();
        assert!(r.overall_pass());
        // CNOT (X ⊗ 1) CNOT = X ⊗ X
        let x = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let conj = w.matrix() * linalg::kron(&x, &linalg::identity(2)) * w.matrix().adjoint();
        assert!(linalg::distance(&conj, &linalg::kron(&x, &x)) < 1e-15);

        let q = qg("ks3");
        let w = build_w(&q).unwrap();
        let basis: Vec<CVector> = (0..6).map(|k| q.algebra().basis(k)).collect();
        let r = w.verify_implements_comultiplication(&basis, 1e-9).unwrap();
        assert!(r.max_residual() <= 1e-12);
    }

    #[test]
    fn antipode_relation_examples() {
        for (name, bound) in [("kz2", 0.0), ("kz3", 1e-13), ("fs3", 1e-12)] {
            let w = build_w(&qg(name)).unwrap();
            let r = w.verify_antipode_relation(1e-9).unwrap();
            assert!(r.residual("antipode_relation") <= bound, "{name}: {r:?}");
        }
    }

    fn diag(v: &[f64]) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_iterator(v.len(), v.iter().map(|&x| c(x))))
    }

    #[test]
    fn dual_subspace_examples() {
        let w = build_w(&qg("trivial")).unwrap();
        let d = w.build_dual_subspace(1e-9).unwrap();
        assert_eq!(d.dim(), 1);
        assert!(linalg::distance(&d.basis()[0], &linalg::identity(1)) < 1e-15);

        let w = build_w(&qg("kz2")).unwrap();
        let d = w.build_dual_subspace(1e-9).unwrap();
        assert!(d.report().overall_pass());
        assert_eq!(d.dim(), 2);
        assert!(d.commutativity_defect() < 1e-15);
        // X_k are the projections onto the u_e and u_g sectors.
        assert!(linalg::distance(&d.basis()[0], &diag(&[1.0, 0.0])) < 1e-15);
        assert!(linalg::distance(&d.basis()[1], &diag(&[0.0, 1.0])) < 1e-15);

        let w = build_w(&qg("fs3")).unwrap();
        let d = w.build_dual_subspace(1e-9).unwrap();
        assert!(d.report().overall_pass(), "{:?}", d.report());
        assert_eq!(d.dim(), 6);
        assert!(d.commutativity_defect() > 0.1);

        let w = build_w(&qg("fz3")).unwrap();
        assert!(w.build_dual_subspace(1e-9).unwrap().commutativity_defect() < 1e-12);
        let w = build_w(&qg("ks3")).unwrap();
        assert!(w.build_dual_subspace(1e-9).unwrap().commutativity_defect() < 1e-12);
    }

    #[test]
    fn dual_comultiplication_examples() {
        let w = build_w(&qg("kz2")).unwrap();
        let d = w.build_dual_subspace(1e-9).unwrap();
        let (one, r) = w.dual_comultiplication(&d, &linalg::identity(2), 1e-9).unwrap();
        assert!(r.overall_pass());
        assert!(linalg::distance(one.matrix(), &linalg::identity(4)) < 1e-15);

        let pe = diag(&[1.0, 0.0]);
        let pg = diag(&[0.0, 1.0]);
        let (dpg, _) = w.dual_comultiplication(&d, &pg, 1e-9).unwrap();
        let expected = linalg::kron(&pe, &pg) + linalg::kron(&pg, &pe);
        assert!(linalg::distance(dpg.matrix(), &expected) < 1e-15);

        let not_in = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(
            w.dual_comultiplication(&d, &not_in, 1e-9),
            Err(Error::NotInDualSubspace(_))
        ));

        for name in ["kz3", "fs3", "ks3"] {
            let w = build_w(&qg(name)).unwrap();
            let d = w.build_dual_subspace(1e-9).unwrap();
            let r = w.verify_dual_comultiplication(&d, 1e-9).unwrap();
            assert!(r.overall_pass(), "{name}: {r:?}");
            assert!(r.max_residual() <= 1e-11);
        }
    }

    #[test]
    fn full_suite_on_presets() {
        for name in ["trivial", "kz2", "kz4", "fz3", "ks3", "fs3", "dual:fs3"] {
            let r = verify_unitary_suite(&qg(name), 1e-9).unwrap();
            assert!(r.overall_pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
            assert!(r.max_residual() <= 1e-10, "{name}");
        }
    }
}
