//! Actions of a classical finite group `K` on a finite quantum group by Hopf
//! *-automorphisms `θ_k`, written as the coaction
//! `α(a) = Σ_k θ_k(a) ⊗ δ_k` of `C(K)`.
//!
//! `θ` must be a homomorphism (`θ_j θ_k = θ_{jk}`) for `α` to satisfy the
//! coaction axiom with `Δ_K(δ_k) = Σ_{rs=k} δ_r ⊗ δ_s`. `C(K)` acts on `ℂ^K`
//! by diagonal matrices and its antipode is `δ_k ↦ δ_{k⁻¹}`.
//!
//! Coordinate layout: `α` is an `(n·|K|) × n` matrix with row `i·|K| + k`,
//! `β` is `(|K|·n) × n` with row `k·n + i`, and `γ` is `(n·|K|) × n` in the
//! basis `X_j` of `Â`.

use crate::builders::function_algebra;
use crate::dual::{build_dual, fourier_matrix};
use crate::error::{Error, Result};
use crate::group::CayleyTable;
use crate::haar::Functional;
use crate::hopf::{is_hopf_star_automorphism, verify_star_homomorphism, FiniteHopfStarAlgebra};
use crate::linalg::{self, c, CMatrix, CVector};
use crate::report::{Check, VerificationReport};
use crate::tensor::{embed_legs, slice_leg, TensorOperator};
use crate::unitary::MultiplicativeUnitary;

/// Five-leg dimension up to which `Auto` runs the full commutation check.
pub const AUTO_FULL_LIMIT: usize = 1000;
/// Largest five-leg dimension accepted by `Full`.
pub const FULL_LIMIT: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CommutationMode {
    #[default]
    Auto,
    Full,
    Sliced,
}

impl std::str::FromStr for CommutationMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Self::Auto),
            "full" => Ok(Self::Full),
            "sliced" => Ok(Self::Sliced),
            other => Err(format!("unknown mode `{other}` (expected auto, full or sliced)")),
        }
    }
}

impl std::fmt::Display for CommutationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Auto => "auto",
            Self::Full => "full",
            Self::Sliced => "sliced",
        })
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroupAction {
    algebra: FiniteHopfStarAlgebra,
    group: CayleyTable,
    theta: Vec<CMatrix>,
    alpha: CMatrix,
    report: VerificationReport,
}

/// Matrix of the algebra map induced by a permutation of a group basis:
/// `e_g ↦ e_{perm[g]}`.
pub fn permutation_automorphism(perm: &[usize]) -> CMatrix {
    let n = perm.len();
    let mut t = CMatrix::zeros(n, n);
    for (g, &p) in perm.iter().enumerate() {
        t[(p, g)] = c(1.0);
    }
    t
}

/// Names accepted by [`automorphism_preset`].
pub const AUTOMORPHISM_PRESETS: &[&str] = &["identity", "inversion", "conjugation"];

/// Builds `θ` for a named action:
/// * `identity`: every `θ_k` is the identity;
/// * `inversion`: `|K| ≤ 2`, the non-identity element acts by the antipode;
/// * `conjugation`: `θ_k(a) = e_k a e_k*`, where `e_k` is the basis element
///   with the same index as `k` (requires `dim 𝒜 = |K|`).
pub fn automorphism_preset(
    name: &str,
    a: &FiniteHopfStarAlgebra,
    group: &CayleyTable,
) -> Result<Vec<CMatrix>> {
    let n = a.dim();
    let order = group.order();
    match name {
        "identity" => Ok(vec![linalg::identity(n); order]),
        "inversion" => {
            if order > 2 {
                return Err(Error::DimensionMismatch(format!(
                    "inversion needs a group of order 1 or 2, got {order}"
                )));
            }
            Ok((0..order)
                .map(|k| {
                    if k == group.identity() {
                        linalg::identity(n)
                    } else {
                        a.antipode_matrix().clone()
                    }
                })
                .collect())
        }
        "conjugation" => {
            if order != n {
                return Err(Error::DimensionMismatch(format!(
                    "conjugation needs dim A = |K|, got {n} and {order}"
                )));
            }
            Ok((0..order)
                .map(|k| {
                    let u = a.basis(k);
                    let us = a.star(&u);
                    CMatrix::from_columns(
                        &(0..n)
                            .map(|j| a.mul(&a.mul(&u, &a.basis(j)), &us))
                            .collect::<Vec<_>>(),
                    )
                })
                .collect())
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// `(α ⊗ id)α − (id ⊗ Δ_K)α` for a map given in the `α` layout.
fn coaction_residual(alpha: &CMatrix, n: usize, group: &CayleyTable) -> f64 {
    let kk = group.order();
    let mut worst = 0.0f64;
    for j in 0..n {
        let mut sq = 0.0;
        for i in 0..n {
            for r in 0..kk {
                for s in 0..kk {
                    let mut lhs = c(0.0);
                    for p in 0..n {
                        lhs += alpha[(i * kk + r, p)] * alpha[(p * kk + s, j)];
                    }
                    let rhs = alpha[(i * kk + group.mul(r, s), j)];
                    sq += (lhs - rhs).norm_sqr();
                }
            }
        }
        worst = worst.max(sq.sqrt());
    }
    worst
}

/// Builds and validates the action `k ↦ θ_k`.
pub fn build_group_action(
    a: &FiniteHopfStarAlgebra,
    group: &CayleyTable,
    theta: Vec<CMatrix>,
    tol: f64,
) -> Result<FiniteGroupAction> {
    let n = a.dim();
    let kk = group.order();
    if theta.len() != kk {
        return Err(Error::DimensionMismatch(format!(
            "theta has {} entries, the group has order {kk}",
            theta.len()
        )));
    }
    if let Some(t) = theta.iter().find(|t| t.shape() != (n, n)) {
        return Err(Error::DimensionMismatch(format!(
            "theta matrix has shape {:?}, expected {n}x{n}",
            t.shape()
        )));
    }
    let mut report = VerificationReport::new();

    let mut auto_worst = 0.0f64;
    for (k, t) in theta.iter().enumerate() {
        let r = is_hopf_star_automorphism(a, t, tol);
        if let Some(f) = r.failures().next() {
            return Err(Error::NotAnAutomorphism {
                element: group.label(k).to_string(),
                check: f.name.clone(),
                residual: f.residual,
            });
        }
        auto_worst = auto_worst.max(
            r.checks
                .iter()
                .filter(|c| c.name != "invertible")
                .map(|c| c.residual)
                .fold(0.0, f64::max),
        );
    }
    report.push(Check::scaled("automorphisms", auto_worst, tol, n as f64));

    let mut hom = 0.0f64;
    for j in 0..kk {
        for k in 0..kk {
            let res = linalg::distance(&(&theta[j] * &theta[k]), &theta[group.mul(j, k)]);
            if res > tol * (n as f64).max(1.0) {
                return Err(Error::NotAHomomorphism(
                    group.label(j).to_string(),
                    group.label(k).to_string(),
                    res,
                ));
            }
            hom = hom.max(res);
        }
    }
    report.push(Check::scaled("homomorphism", hom, tol, n as f64));
    let id_res = linalg::distance(&theta[group.identity()], &linalg::identity(n));
    report.push(Check::scaled("identity_acts_trivially", id_res, tol, n as f64));

    let mut alpha = CMatrix::zeros(n * kk, n);
    for (k, t) in theta.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                alpha[(i * kk + k, j)] = t[(i, j)];
            }
        }
    }
    let co = coaction_residual(&alpha, n, group);
    if co > tol * (n as f64).max(1.0) {
        return Err(Error::CoactionAxiomFailed(co));
    }
    report.push(Check::scaled("coaction", co, tol, n as f64));

    let ck = function_algebra(group)?;
    let target = a.algebra().tensor(ck.algebra());
    report.extend_prefixed("alpha", verify_star_homomorphism(&alpha, a.algebra(), &target, tol));

    // α(e_i)(𝟙 ⊗ δ_k) = θ_k(e_i) ⊗ δ_k.
    let mut vecs = Vec::with_capacity(n * kk);
    for i in 0..n {
        for k in 0..kk {
            let mut v = CVector::zeros(n * kk);
            for p in 0..n {
                v[p * kk + k] = theta[k][(p, i)];
            }
            vecs.push(v);
        }
    }
    let rank = linalg::rank(&CMatrix::from_columns(&vecs), tol);
    report.push(
        Check::new("density", (n * kk - rank.min(n * kk)) as f64, 0.0)
            .with_note(format!("rank {rank}, expected {}", n * kk)),
    );

    Ok(FiniteGroupAction {
        algebra: a.clone(),
        group: group.clone(),
        theta,
        alpha,
        report,
    })
}

impl FiniteGroupAction {
    pub fn algebra(&self) -> &FiniteHopfStarAlgebra {
        &self.algebra
    }

    pub fn group(&self) -> &CayleyTable {
        &self.group
    }

    pub fn theta(&self) -> &[CMatrix] {
        &self.theta
    }

    /// `α` in the `(n·|K|) × n` layout.
    pub fn alpha(&self) -> &CMatrix {
        &self.alpha
    }

    /// Checks run while building the action.
    pub fn report(&self) -> &VerificationReport {
        &self.report
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Number of distinct maps `θ_k`; equals `|K|` for a faithful action.
    pub fn distinct_automorphisms(&self, tol: f64) -> usize {
        let mut reps: Vec<&CMatrix> = Vec::new();
        for t in &self.theta {
            if !reps.iter().any(|r| linalg::distance(r, t) <= tol) {
                reps.push(t);
            }
        }
        reps.len()
    }

    pub fn is_trivial(&self, tol: f64) -> bool {
        self.distinct_automorphisms(tol) == 1
    }

    fn apply(&self, k: usize, x: &CVector) -> CVector {
        &self.theta[k] * x
    }
}

/// `𝒉 ∘ θ_k = 𝒉` for every `k`, tested on the basis.
pub fn verify_haar_invariance(action: &FiniteGroupAction, h: &Functional, tol: f64) -> VerificationReport {
    let a = action.algebra();
    let mut worst = 0.0f64;
    for i in 0..a.dim() {
        let e = a.basis(i);
        let base = h.apply(&e);
        let sq: f64 = (0..action.order())
            .map(|k| (h.apply(&action.apply(k, &e)) - base).norm_sqr())
            .sum();
        worst = worst.max(sq.sqrt());
    }
    std::iter::once(Check::scaled("haar_invariance", worst, tol, 1.0)).collect()
}

/// Max over basis pairs of `‖Σ_k (𝒉(θ_k(a) b) − 𝒉(a θ_{s(k)}(b))) δ_k‖`.
fn strong_invariance_residual(action: &FiniteGroupAction, h: &Functional, s: impl Fn(usize) -> usize) -> f64 {
    let a = action.algebra();
    let n = a.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        let ea = a.basis(i);
        for j in 0..n {
            let eb = a.basis(j);
            let sq: f64 = (0..action.order())
                .map(|k| {
                    let lhs = h.apply(&a.mul(&action.apply(k, &ea), &eb));
                    let rhs = h.apply(&a.mul(&ea, &action.apply(s(k), &eb)));
                    (lhs - rhs).norm_sqr()
                })
                .sum();
            worst = worst.max(sq.sqrt());
        }
    }
    worst
}

/// Strong right invariance
/// `(𝒉⊗id)(α(a)(b⊗𝟙)) = (𝒉⊗id)((a⊗𝟙)(id⊗S_K)α(b))` on all basis pairs,
/// and that `a⊗c ↦ α(a)(𝟙⊗c)` and `a⊗c ↦ ((id⊗S_K)α(a))(𝟙⊗c)` are mutually
/// inverse on `𝒜 ⊗ C(K)`.
pub fn verify_strong_right_invariance(action: &FiniteGroupAction, h: &Functional, tol: f64) -> VerificationReport {
    let g = action.group();
    let mut r = VerificationReport::new();
    let res = strong_invariance_residual(action, h, |k| g.inverse(k));
    r.push(Check::scaled("strong_right_invariance", res, tol, 1.0));

    let (n, kk) = (action.dim(), action.order());
    let mut t = CMatrix::zeros(n * kk, n * kk);
    let mut t_inv = CMatrix::zeros(n * kk, n * kk);
    // On a ⊗ δ_j the maps give θ_j(a) ⊗ δ_j and θ_{j⁻¹}(a) ⊗ δ_j.
    for j in 0..kk {
        let ji = g.inverse(j);
        for p in 0..n {
            for q in 0..n {
                t[(p * kk + j, q * kk + j)] = action.theta[j][(p, q)];
                t_inv[(p * kk + j, q * kk + j)] = action.theta[ji][(p, q)];
            }
        }
    }
    let id = linalg::identity(n * kk);
    let res = linalg::distance(&(&t * &t_inv), &id).max(linalg::distance(&(&t_inv * &t), &id));
    r.push(Check::scaled("mutually_inverse_maps", res, tol, n as f64));
    r
}

/// The strong-invariance residual with `S_K` replaced by the identity.
pub fn strong_invariance_without_antipode(action: &FiniteGroupAction, h: &Functional) -> f64 {
    strong_invariance_residual(action, h, |k| k)
}

/// `β(a) = Σ_k δ_{k⁻¹} ⊗ θ_k(a)`, i.e. `σ ∘ (id ⊗ S_K) ∘ α`.
pub fn build_beta(action: &FiniteGroupAction) -> CMatrix {
    let (n, kk) = (action.dim(), action.order());
    let g = action.group();
    let mut beta = CMatrix::zeros(kk * n, n);
    for k in 0..kk {
        let m = g.inverse(k);
        for i in 0..n {
            for j in 0..n {
                beta[(m * n + i, j)] = action.theta[k][(i, j)];
            }
        }
    }
    beta
}

/// `σ ∘ (S ⊗ S_K) ∘ α ∘ S`, assembled from the matrices of each factor.
pub fn build_beta_via_antipode(action: &FiniteGroupAction) -> CMatrix {
    let (n, kk) = (action.dim(), action.order());
    let s = action.algebra().antipode_matrix();
    let g = action.group();
    let mut s_k = CMatrix::zeros(kk, kk);
    for k in 0..kk {
        s_k[(g.inverse(k), k)] = c(1.0);
    }
    let sigma = crate::tensor::flip(n, kk).expect("non-empty legs").into_matrix();
    sigma * linalg::kron(s, &s_k) * action.alpha() * s
}

/// `β` is a unital *-homomorphism `𝒜 → C(K) ⊗ 𝒜` and both of its forms agree.
pub fn verify_beta(action: &FiniteGroupAction, beta: &CMatrix, tol: f64) -> Result<VerificationReport> {
    let a = action.algebra();
    let ck = function_algebra(action.group())?;
    let target = ck.algebra().tensor(a.algebra());
    let mut r = verify_star_homomorphism(beta, a.algebra(), &target, tol);
    let alt = build_beta_via_antipode(action);
    r.push(Check::scaled("forms_agree", linalg::distance(beta, &alt), tol, 1.0));
    Ok(r)
}

/// `γ = (𝒢⊗id)(ℱ⊗id) α ℱ⁻¹ 𝒢⁻¹` on `Â`, in the basis `X_j = 𝒢(e^j)`.
pub fn build_gamma(action: &FiniteGroupAction, w: &MultiplicativeUnitary) -> Result<CMatrix> {
    check_same_algebra(action, w)?;
    let a = action.algebra();
    let f = fourier_matrix(a, w.quantum_group().haar());
    let finv = linalg::inverse(&f, "Fourier transform")?;
    Ok(linalg::kron(&f, &linalg::identity(action.order())) * action.alpha() * finv)
}

/// `γ` is a unital *-homomorphism `Â → Â ⊗ C(K)` and a coaction of `C(K)`.
pub fn verify_gamma(action: &FiniteGroupAction, gamma: &CMatrix, tol: f64) -> Result<VerificationReport> {
    let dual = build_dual(action.algebra());
    let ck = function_algebra(action.group())?;
    let target = dual.algebra().tensor(ck.algebra());
    let mut r = verify_star_homomorphism(gamma, dual.algebra(), &target, tol);
    let n = action.dim();
    r.push(Check::scaled(
        "coaction",
        coaction_residual(gamma, n, action.group()),
        tol,
        n as f64,
    ));
    Ok(r)
}

fn check_same_algebra(action: &FiniteGroupAction, w: &MultiplicativeUnitary) -> Result<()> {
    if w.dim() != action.dim() {
        return Err(Error::DimensionMismatch(format!(
            "action is on a {}-dimensional algebra, W on a {}-dimensional one",
            action.dim(),
            w.dim()
        )));
    }
    Ok(())
}

/// `β`, `γ` and `V = (id ⊗ β)W` on legs `[n, |K|, n]`.
#[derive(Debug, Clone)]
pub struct IntertwinerData {
    pub beta: CMatrix,
    pub gamma: CMatrix,
    pub v: TensorOperator,
}

/// `β(x)` as an operator on `ℂ^K ⊗ ℋ`.
fn beta_operator(action: &FiniteGroupAction, w: &MultiplicativeUnitary, beta: &CMatrix, x: &CVector) -> Result<CMatrix> {
    let (n, kk) = (action.dim(), action.order());
    let gns = w.quantum_group().gns();
    let image = beta * x;
    let mut out = CMatrix::zeros(kk * n, kk * n);
    for m in 0..kk {
        let block = CVector::from_fn(n, |i, _| image[m * n + i]);
        let l = gns.left_multiplication_matrix(&block)?;
        out.view_mut((m * n, m * n), (n, n)).copy_from(&l);
    }
    Ok(out)
}

/// `γ(X)` for `X` with coordinates `x` as an operator on `ℋ ⊗ ℂ^K`.
fn gamma_operator(action: &FiniteGroupAction, w: &MultiplicativeUnitary, gamma: &CMatrix, x: &CVector) -> CMatrix {
    let (n, kk) = (action.dim(), action.order());
    let image = gamma * x;
    let mut out = CMatrix::zeros(n * kk, n * kk);
    for m in 0..kk {
        let coords = CVector::from_fn(n, |j, _| image[j * kk + m]);
        let xm = w.right_slice_by_functional(&coords).expect("dimension checked");
        let e = CMatrix::from_fn(kk, kk, |p, q| if p == m && q == m { c(1.0) } else { c(0.0) });
        out += linalg::kron(&xm, &e);
    }
    out
}

impl IntertwinerData {
    pub fn new(action: &FiniteGroupAction, w: &MultiplicativeUnitary) -> Result<Self> {
        check_same_algebra(action, w)?;
        let (n, kk) = (action.dim(), action.order());
        let beta = build_beta(action);
        let gamma = build_gamma(action, w)?;
        let mut v = CMatrix::zeros(n * kk * n, n * kk * n);
        for (k, xk) in w.dual_basis().iter().enumerate() {
            let b = beta_operator(action, w, &beta, &linalg::basis_vector(n, k))?;
            v += linalg::kron(xk, &b);
        }
        let v = TensorOperator::new(vec![n, kk, n], v)?;
        Ok(IntertwinerData { beta, gamma, v })
    }
}

/// `(id ⊗ β)W = (γ ⊗ id)W` on `[n, |K|, n]` and its first-leg slices
/// `(𝒉⊗id)((b⊗𝟙)α(a)) = (𝒉⊗id)(((id⊗S_K)α(b))(a⊗𝟙))`.
pub fn verify_main_intertwiner(
    action: &FiniteGroupAction,
    w: &MultiplicativeUnitary,
    data: &IntertwinerData,
    tol: f64,
) -> Result<VerificationReport> {
    check_same_algebra(action, w)?;
    let n = action.dim();
    let gns = w.quantum_group().gns();
    let mut rhs = CMatrix::zeros(data.v.total_dim(), data.v.total_dim());
    for k in 0..n {
        let gx = gamma_operator(action, w, &data.gamma, &linalg::basis_vector(n, k));
        rhs += linalg::kron(&gx, &gns.left_regular()[k]);
    }
    let total = data.v.total_dim() as f64;
    let mut r = VerificationReport::new();
    r.push(
        Check::scaled("operator", linalg::distance(data.v.matrix(), &rhs), tol, total.sqrt())
            .with_note(format!("{}-dimensional space", data.v.total_dim())),
    );

    let a = action.algebra();
    let h = w.quantum_group().haar();
    let g = action.group();
    let mut worst = 0.0f64;
    for i in 0..n {
        let ea = a.basis(i);
        for j in 0..n {
            let eb = a.basis(j);
            let sq: f64 = (0..action.order())
                .map(|k| {
                    let lhs = h.apply(&a.mul(&eb, &action.apply(k, &ea)));
                    let rhs = h.apply(&a.mul(&action.apply(g.inverse(k), &eb), &ea));
                    (lhs - rhs).norm_sqr()
                })
                .sum();
            worst = worst.max(sq.sqrt());
        }
    }
    r.push(Check::scaled("sliced", worst, tol, 1.0));
    Ok(r)
}

/// Dimension of the five-leg space `[n, n, |K|, n, n]`.
pub fn five_leg_dimension(n: usize, order: usize) -> usize {
    n * n * order * n * n
}

/// Resolves `Auto` and rejects `Full` above [`FULL_LIMIT`].
pub fn resolve_mode(mode: CommutationMode, n: usize, order: usize) -> Result<CommutationMode> {
    let dim = five_leg_dimension(n, order);
    match mode {
        CommutationMode::Auto if dim <= AUTO_FULL_LIMIT => Ok(CommutationMode::Full),
        CommutationMode::Auto => Ok(CommutationMode::Sliced),
        CommutationMode::Full if dim > FULL_LIMIT => Err(Error::ModeUnavailable(dim, FULL_LIMIT)),
        m => Ok(m),
    }
}

/// Commutation of the slices of `β`.
///
/// Full mode checks `V₂₃₄V₁₃₅ = V₁₃₅V₂₃₄` on `[n, n, |K|, n, n]` together with
/// `(Δ̂⊗id⊗id)V = V₁₃₄V₂₃₄` and `(id⊗id⊗Δ)V = V₁₂₃V₁₂₄`. Sliced mode checks
/// `[(id⊗ν)β(a), (id⊗μ)β(b)] = 0` for `a, b` ranging over the left slices
/// `(φ⊗id)W` by matrix units and `μ, ν` over matrix units on `ℋ`. Both modes
/// report the dimension of the algebra generated by the slices, which should
/// equal the number of distinct `θ_k`.
pub fn verify_slice_commutativity(
    action: &FiniteGroupAction,
    w: &MultiplicativeUnitary,
    data: &IntertwinerData,
    tol: f64,
    mode: CommutationMode,
) -> Result<VerificationReport> {
    check_same_algebra(action, w)?;
    let (n, kk) = (action.dim(), action.order());
    let mode = resolve_mode(mode, n, kk)?;
    let mut r = VerificationReport::new();
    let slices = beta_slices(data, n)?;
    match mode {
        CommutationMode::Full => full_commutation(w, data, tol, &mut r)?,
        _ => {
            let mut worst = 0.0f64;
            for (p, x) in slices.iter().enumerate() {
                for y in &slices[p + 1..] {
                    worst = worst.max(linalg::distance(&(x * y), &(y * x)));
                }
            }
            r.push(
                Check::scaled("sliced", worst, tol, 1.0)
                    .with_note(format!("{} nonzero slices", slices.len())),
            );
        }
    }

    let expected = action.distinct_automorphisms(tol);
    let (dim, defect) = generated_algebra(&slices, kk, tol);
    r.push(
        Check::new("generated_dimension", dim.abs_diff(expected) as f64, 0.0)
            .with_note(format!("dimension {dim}, distinct automorphisms {expected}, |K| = {kk}")),
    );
    r.push(
        Check::scaled("generated_commutative", defect, tol, 1.0)
            .with_note("C(K) is commutative, so this is a consistency check"),
    );
    Ok(r)
}

/// Nonzero `|K| × |K|` slices `(φ ⊗ id ⊗ ν)V` over matrix units `φ, ν`.
fn beta_slices(data: &IntertwinerData, n: usize) -> Result<Vec<CMatrix>> {
    let mut out = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let left = slice_leg(&data.v, 1, &matrix_unit(n, p, q))?;
            if left.norm() == 0.0 {
                continue;
            }
            for s in 0..n {
                for t in 0..n {
                    let x = slice_leg(&left, 2, &matrix_unit(n, s, t))?;
                    if x.norm() > 0.0 {
                        out.push(x.into_matrix());
                    }
                }
            }
        }
    }
    Ok(out)
}

fn matrix_unit(n: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(i, j)] = c(1.0);
    m
}

/// Dimension of the unital algebra generated by `gens` and the largest
/// commutator between elements of a basis of it.
fn generated_algebra(gens: &[CMatrix], kk: usize, tol: f64) -> (usize, f64) {
    let mut vecs: Vec<CVector> = vec![linalg::vectorize(&linalg::identity(kk))];
    vecs.extend(gens.iter().map(linalg::vectorize));
    let mut basis = orthonormal_basis(&vecs, tol);
    loop {
        let mats: Vec<CMatrix> = basis.iter().map(|v| linalg::unvectorize(v, kk, kk)).collect();
        let mut all = basis.clone();
        for x in &mats {
            for y in &mats {
                all.push(linalg::vectorize(&(x * y)));
            }
        }
        let next = orthonormal_basis(&all, tol);
        if next.len() == basis.len() {
            let mut defect = 0.0f64;
            for x in &mats {
                for y in &mats {
                    defect = defect.max(linalg::distance(&(x * y), &(y * x)));
                }
            }
            return (basis.len(), defect);
        }
        basis = next;
    }
}

fn orthonormal_basis(vecs: &[CVector], tol: f64) -> Vec<CVector> {
    let m = CMatrix::from_columns(vecs);
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > tol * smax.max(1.0))
        .map(|(i, _)| u.column(i).into_owned())
        .collect()
}

fn full_commutation(
    w: &MultiplicativeUnitary,
    data: &IntertwinerData,
    tol: f64,
    r: &mut VerificationReport,
) -> Result<()> {
    let dims = data.v.dims().to_vec();
    let (n, kk) = (dims[0], dims[1]);
    let ambient = [n, n, kk, n, n];
    let v234 = embed_legs(&data.v, &[2, 3, 4], &ambient)?;
    let v135 = embed_legs(&data.v, &[1, 3, 5], &ambient)?;
    let comm = v234.commutator(&v135)?;
    let total = five_leg_dimension(n, kk);
    r.push(
        Check::scaled("five_leg", comm.norm(), tol, (total as f64).sqrt())
            .with_note(format!("{total}-dimensional space")),
    );

    // (Δ̂ ⊗ id ⊗ id)V = Σ_k Δ̂(X_k) ⊗ β(e_k) on [n, n, |K|, n].
    let wm = w.matrix();
    let id_n = linalg::identity(n);
    let amb4 = [n, n, kk, n];
    let mut lhs = CMatrix::zeros(n * n * kk * n, n * n * kk * n);
    let ops = beta_basis_operators(w, data, n, kk)?;
    for (k, xk) in w.dual_basis().iter().enumerate() {
        let dx = wm.adjoint() * linalg::kron(&id_n, xk) * wm;
        lhs += linalg::kron(&dx, &ops[k]);
    }
    let rhs = embed_legs(&data.v, &[1, 3, 4], &amb4)?.compose(&embed_legs(&data.v, &[2, 3, 4], &amb4)?)?;
    let res = linalg::distance(&lhs, rhs.matrix());
    r.push(Check::scaled("dual_comult_leg", res, tol, ((n * n * kk * n) as f64).sqrt()));

    // (id ⊗ id ⊗ Δ)V on [n, |K|, n, n]: Δ applied to each 𝒜-block of β(e_k).
    let a = w.quantum_group().algebra();
    let gns = w.quantum_group().gns();
    let amb = [n, kk, n, n];
    let mut lhs = CMatrix::zeros(n * kk * n * n, n * kk * n * n);
    for (k, xk) in w.dual_basis().iter().enumerate() {
        let image = &data.beta * linalg::basis_vector(n, k);
        let mut b = CMatrix::zeros(kk * n * n, kk * n * n);
        for m in 0..kk {
            let block = CVector::from_fn(n, |i, _| image[m * n + i]);
            let l2 = gns.left_multiplication_2(&a.coproduct(&block));
            b.view_mut((m * n * n, m * n * n), (n * n, n * n)).copy_from(&l2);
        }
        lhs += linalg::kron(xk, &b);
    }
    let rhs = embed_legs(&data.v, &[1, 2, 3], &amb)?.compose(&embed_legs(&data.v, &[1, 2, 4], &amb)?)?;
    let res = linalg::distance(&lhs, rhs.matrix());
    r.push(Check::scaled("comult_leg", res, tol, ((n * kk * n * n) as f64).sqrt()));
    Ok(())
}

fn beta_basis_operators(w: &MultiplicativeUnitary, data: &IntertwinerData, n: usize, kk: usize) -> Result<Vec<CMatrix>> {
    let gns = w.quantum_group().gns();
    (0..n)
        .map(|k| {
            let image = &data.beta * linalg::basis_vector(n, k);
            let mut out = CMatrix::zeros(kk * n, kk * n);
            for m in 0..kk {
                let block = CVector::from_fn(n, |i, _| image[m * n + i]);
                out.view_mut((m * n, m * n), (n, n)).copy_from(&gns.left_multiplication_matrix(&block)?);
            }
            Ok(out)
        })
        .collect()
}

/// Runs every action check in order: action axioms, Haar invariance, strong
/// right invariance, `β`, `γ`, the intertwiner and slice commutation.
pub fn verify_action_suite(
    action: &FiniteGroupAction,
    w: &MultiplicativeUnitary,
    tol: f64,
    mode: CommutationMode,
) -> Result<VerificationReport> {
    let h = w.quantum_group().haar();
    let mut r = VerificationReport::new();
    r.extend_prefixed("action", action.report().clone());
    r.extend_prefixed("action", verify_haar_invariance(action, h, tol));
    r.extend_prefixed("action", verify_strong_right_invariance(action, h, tol));
    let data = IntertwinerData::new(action, w)?;
    r.extend_prefixed("beta", verify_beta(action, &data.beta, tol)?);
    r.extend_prefixed("gamma", verify_gamma(action, &data.gamma, tol)?);
    r.extend_prefixed("intertwiner", verify_main_intertwiner(action, w, &data, tol)?);
    r.extend_prefixed("commutation", verify_slice_commutativity(action, w, &data, tol, mode)?);
    Ok(r)
}
