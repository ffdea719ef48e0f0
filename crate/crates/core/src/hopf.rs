//! Finite-dimensional Hopf *-algebras given by structure constants.
//!
//! Coordinates are column vectors over the chosen basis `e_0 … e_{n-1}`.
//! Linear maps are stored as matrices acting on those columns:
//!
//! * `mult` is `n × n²` with `mult[(k, i·n + j)]` the coefficient of `e_k` in `e_i e_j`;
//! * `comult` is `n² × n` with `comult[(j·n + k, i)]` the coefficient of `e_j ⊗ e_k` in `Δ(e_i)`;
//! * `antipode[(j, i)]` is the coefficient of `e_j` in `S(e_i)`;
//! * the involution is conjugate-linear, `x* = star · conj(x)`, so `star[(j, i)]`
//!   is the coefficient of `e_j` in `e_i*`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, c, conj_matrix, CMatrix, CVector};
use crate::report::{Check, VerificationReport};

/// A unital *-algebra by structure constants. Used on its own for tensor
/// products such as `𝒜 ⊗ 𝒜` or `𝒜 ⊗ C(K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarAlgebra {
    dim: usize,
    mult: CMatrix,
    unit: CVector,
    star: CMatrix,
}

impl StarAlgebra {
    pub fn new(mult: CMatrix, unit: CVector, star: CMatrix) -> Result<Self> {
        let n = unit.len();
        if n == 0 {
            return Err(Error::Structural("algebra of dimension 0".into()));
        }
        if mult.shape() != (n, n * n) {
            return Err(Error::Structural(format!(
                "mult has shape {:?}, expected ({n}, {})",
                mult.shape(),
                n * n
            )));
        }
        if star.shape() != (n, n) {
            return Err(Error::Structural(format!(
                "star has shape {:?}, expected ({n}, {n})",
                star.shape()
            )));
        }
        Ok(StarAlgebra {
            dim: n,
            mult,
            unit,
            star,
        })
    }

    /// The one-dimensional algebra ℂ.
    pub fn scalars() -> Self {
        StarAlgebra {
            dim: 1,
            mult: CMatrix::from_element(1, 1, c(1.0)),
            unit: CVector::from_element(1, c(1.0)),
            star: CMatrix::from_element(1, 1, c(1.0)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult_matrix(&self) -> &CMatrix {
        &self.mult
    }

    pub fn unit(&self) -> &CVector {
        &self.unit
    }

    pub fn star_matrix(&self) -> &CMatrix {
        &self.star
    }

    pub fn mul(&self, x: &CVector, y: &CVector) -> CVector {
        &self.mult * linalg::kron_vec(x, y)
    }

    pub fn star(&self, x: &CVector) -> CVector {
        &self.star * linalg::conj_vector(x)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &CVector) -> CMatrix {
        let n = self.dim;
        CMatrix::from_fn(n, n, |k, j| {
            (0..n).map(|i| x[i] * self.mult[(k, i * n + j)]).sum()
        })
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult(&self, x: &CVector) -> CMatrix {
        let n = self.dim;
        CMatrix::from_fn(n, n, |k, i| {
            (0..n).map(|j| x[j] * self.mult[(k, i * n + j)]).sum()
        })
    }

    /// Structure constant: coefficient of `e_k` in `e_i e_j`.
    pub fn m(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.mult[(k, i * self.dim + j)]
    }

    /// `self ⊗ other` with the factor-wise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn tensor(&self, other: &StarAlgebra) -> StarAlgebra {
        let (na, nb) = (self.dim, other.dim);
        let n = na * nb;
        let mut mult = CMatrix::zeros(n, n * n);
        for i in 0..na {
            for k in 0..na {
                for p in 0..na {
                    let a = self.mult[(p, i * na + k)];
                    if a == c(0.0) {
                        continue;
                    }
                    for j in 0..nb {
                        for l in 0..nb {
                            for q in 0..nb {
                                let b = other.mult[(q, j * nb + l)];
                                if b == c(0.0) {
                                    continue;
                                }
                                let col = (i * nb + j) * n + (k * nb + l);
                                mult[(p * nb + q, col)] += a * b;
                            }
                        }
                    }
                }
            }
        }
        StarAlgebra {
            dim: n,
            mult,
            unit: linalg::kron_vec(&self.unit, &other.unit),
            star: linalg::kron(&self.star, &other.star),
        }
    }

    fn scale(&self) -> f64 {
        linalg::frobenius(&self.mult)
            .max(linalg::vec_norm(&self.unit))
            .max(linalg::frobenius(&self.star))
    }

    /// Associativity, unit law, and the involution axioms.
    pub fn verify_axioms(&self, tol: f64) -> VerificationReport {
        let n = self.dim;
        let id = linalg::identity(n);
        let s = self.scale();
        let mut r = VerificationReport::new();

        let assoc_l = &self.mult * linalg::kron(&self.mult, &id);
        let assoc_r = &self.mult * linalg::kron(&id, &self.mult);
        r.push(Check::scaled("associativity", linalg::distance(&assoc_l, &assoc_r), tol, s * s));

        let u = CMatrix::from_column_slice(n, 1, self.unit.as_slice());
        let left = &self.mult * linalg::kron(&u, &id);
        let right = &self.mult * linalg::kron(&id, &u);
        let unit_res = linalg::distance(&left, &id).max(linalg::distance(&right, &id));
        r.push(Check::scaled("unit", unit_res, tol, s));

        let inv = &self.star * conj_matrix(&self.star);
        r.push(Check::scaled("star_involutive", linalg::distance(&inv, &id), tol, s));

        let mut anti = 0.0f64;
        for i in 0..n {
            let ei = linalg::basis_vector(n, i);
            for j in 0..n {
                let ej = linalg::basis_vector(n, j);
                let lhs = self.star(&self.mul(&ei, &ej));
                let rhs = self.mul(&self.star(&ej), &self.star(&ei));
                anti = anti.hypot(linalg::vec_distance(&lhs, &rhs));
            }
        }
        r.push(Check::scaled("star_antimultiplicative", anti, tol, s * s));
        r
    }
}

/// Checks that the linear map `f` (columns indexed by the source basis) is a
/// unital *-homomorphism `source → target`.
pub fn verify_star_homomorphism(
    f: &CMatrix,
    source: &StarAlgebra,
    target: &StarAlgebra,
    tol: f64,
) -> VerificationReport {
    assert_eq!(f.shape(), (target.dim(), source.dim()), "map shape");
    let scale = linalg::frobenius(f).max(1.0);
    let mut r = VerificationReport::new();
    let lhs = f * source.mult_matrix();
    let rhs = target.mult_matrix() * linalg::kron(f, f);
    r.push(Check::scaled("multiplicative", linalg::distance(&lhs, &rhs), tol, scale * scale));
    let unit = f * source.unit();
    r.push(Check::scaled("unital", linalg::vec_distance(&unit, target.unit()), tol, scale));
    let lhs = f * source.star_matrix();
    let rhs = target.star_matrix() * conj_matrix(f);
    r.push(Check::scaled("star", linalg::distance(&lhs, &rhs), tol, scale));
    r
}

/// A finite-dimensional Hopf *-algebra `(𝒜, Δ)` by structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteHopfStarAlgebra {
    name: String,
    labels: Vec<String>,
    algebra: StarAlgebra,
    comult: CMatrix,
    counit: CVector,
    antipode: CMatrix,
}

impl FiniteHopfStarAlgebra {
    /// Assembles an algebra from structure matrices in the column convention
    /// described in the module documentation. Only shapes are validated here;
    /// axioms are checked by [`verify_hopf_star_axioms`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        mult: CMatrix,
        comult: CMatrix,
        unit: CVector,
        counit: CVector,
        antipode: CMatrix,
        star: CMatrix,
    ) -> Result<Self> {
        let n = labels.len();
        if unit.len() != n {
            return Err(Error::Structural(format!(
                "unit has length {}, basis has {n} labels",
                unit.len()
            )));
        }
        let algebra = StarAlgebra::new(mult, unit, star)?;
        if comult.shape() != (n * n, n) {
            return Err(Error::Structural(format!(
                "comult has shape {:?}, expected ({}, {n})",
                comult.shape(),
                n * n
            )));
        }
        if counit.len() != n {
            return Err(Error::Structural(format!(
                "counit has length {}, expected {n}",
                counit.len()
            )));
        }
        if antipode.shape() != (n, n) {
            return Err(Error::Structural(format!(
                "antipode has shape {:?}, expected ({n}, {n})",
                antipode.shape()
            )));
        }
        Ok(FiniteHopfStarAlgebra {
            name: name.into(),
            labels,
            algebra,
            comult,
            counit,
            antipode,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &StarAlgebra {
        &self.algebra
    }

    pub fn mult_matrix(&self) -> &CMatrix {
        self.algebra.mult_matrix()
    }

    pub fn comult_matrix(&self) -> &CMatrix {
        &self.comult
    }

    pub fn unit(&self) -> &CVector {
        self.algebra.unit()
    }

    pub fn counit(&self) -> &CVector {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &CMatrix {
        &self.antipode
    }

    pub fn star_matrix(&self) -> &CMatrix {
        self.algebra.star_matrix()
    }

    pub fn basis(&self, i: usize) -> CVector {
        linalg::basis_vector(self.dim(), i)
    }

    pub fn mul(&self, x: &CVector, y: &CVector) -> CVector {
        self.algebra.mul(x, y)
    }

    pub fn star(&self, x: &CVector) -> CVector {
        self.algebra.star(x)
    }

    pub fn antipode(&self, x: &CVector) -> CVector {
        &self.antipode * x
    }

    pub fn counit_of(&self, x: &CVector) -> Complex64 {
        self.counit.dot(x)
    }

    /// `Δ(x)` as a vector over `e_j ⊗ e_k`.
    pub fn coproduct(&self, x: &CVector) -> CVector {
        &self.comult * x
    }

    /// Coefficient of `e_k` in `e_i e_j`.
    pub fn m(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.algebra.m(i, j, k)
    }

    /// Coefficient of `e_j ⊗ e_k` in `Δ(e_i)`.
    pub fn d(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.comult[(j * self.dim() + k, i)]
    }

    /// `‖xy − yx‖` over all basis pairs (0 iff commutative).
    pub fn commutativity_defect(&self) -> f64 {
        let flip = crate::tensor::flip(self.dim(), self.dim())
            .expect("positive dimension")
            .into_matrix();
        let m = self.mult_matrix();
        linalg::distance(m, &(m * flip))
    }

    /// `‖Δ − σ∘Δ‖` (0 iff cocommutative).
    pub fn cocommutativity_defect(&self) -> f64 {
        let flip = crate::tensor::flip(self.dim(), self.dim())
            .expect("positive dimension")
            .into_matrix();
        linalg::distance(&self.comult, &(flip * &self.comult))
    }

    fn scale(&self) -> f64 {
        self.algebra
            .scale()
            .max(linalg::frobenius(&self.comult))
            .max(linalg::vec_norm(&self.counit))
            .max(linalg::frobenius(&self.antipode))
    }
}

/// Runs the full axiom suite: algebra, coalgebra, compatibility, antipode,
/// involution and the finite quantum group conditions `S² = id`, `S∘* = *∘S`.
pub fn verify_hopf_star_axioms(a: &FiniteHopfStarAlgebra, tol: f64) -> VerificationReport {
    let n = a.dim();
    let id = linalg::identity(n);
    let s = a.scale();
    let d = a.comult_matrix();
    let mut r = VerificationReport::new();

    let alg = a.algebra().verify_axioms(tol);
    for ch in alg.checks {
        r.push(ch);
    }
    // Keep the report order aligned with the list of invariants.
    let star_checks: Vec<Check> = r
        .checks
        .iter()
        .filter(|c| c.name.starts_with("star_"))
        .cloned()
        .collect();
    r.checks.retain(|c| !c.name.starts_with("star_"));

    let coassoc_l = linalg::kron(d, &id) * d;
    let coassoc_r = linalg::kron(&id, d) * d;
    r.push(Check::scaled(
        "coassociativity",
        linalg::distance(&coassoc_l, &coassoc_r),
        tol,
        s * s,
    ));

    let eps_row = CMatrix::from_row_slice(1, n, a.counit().as_slice());
    let left = linalg::kron(&eps_row, &id) * d;
    let right = linalg::kron(&id, &eps_row) * d;
    let counit_res = linalg::distance(&left, &id).max(linalg::distance(&right, &id));
    r.push(Check::scaled("counit", counit_res, tol, s));

    let aa = a.algebra().tensor(a.algebra());
    let delta_hom = verify_star_homomorphism(d, a.algebra(), &aa, tol);
    r.extend_prefixed("comult", delta_hom);
    let eps_hom = verify_star_homomorphism(&eps_row, a.algebra(), &StarAlgebra::scalars(), tol);
    r.extend_prefixed("counit", eps_hom);

    for ch in star_checks {
        r.push(ch);
    }

    let u_eps = CMatrix::from_column_slice(n, 1, a.unit().as_slice()) * &eps_row;
    let sd_left = a.mult_matrix() * linalg::kron(a.antipode_matrix(), &id) * d;
    let sd_right = a.mult_matrix() * linalg::kron(&id, a.antipode_matrix()) * d;
    let anti_res = linalg::distance(&sd_left, &u_eps).max(linalg::distance(&sd_right, &u_eps));
    r.push(Check::scaled("antipode", anti_res, tol, s * s * s));

    let sq = a.antipode_matrix() * a.antipode_matrix();
    r.push(Check::scaled("antipode_involutive", linalg::distance(&sq, &id), tol, s * s));

    let lhs = a.antipode_matrix() * a.star_matrix();
    let rhs = a.star_matrix() * conj_matrix(a.antipode_matrix());
    r.push(Check::scaled("antipode_star", linalg::distance(&lhs, &rhs), tol, s * s));
    r
}

/// Checks whether `t` (an `n × n` matrix in the column convention) is a Hopf
/// *-algebra automorphism of `a`.
pub fn is_hopf_star_automorphism(
    a: &FiniteHopfStarAlgebra,
    t: &CMatrix,
    tol: f64,
) -> VerificationReport {
    let n = a.dim();
    let mut r = VerificationReport::new();
    if t.shape() != (n, n) {
        r.push(
            Check::new("shape", f64::INFINITY, 0.0)
                .with_note(format!("expected {n}x{n}, got {:?}", t.shape())),
        );
        return r;
    }
    let scale = linalg::frobenius(t).max(a.scale());
    r.push(Check::lower_bound("invertible", linalg::min_singular_value(t), tol));

    let lhs = t * a.mult_matrix();
    let rhs = a.mult_matrix() * linalg::kron(t, t);
    r.push(Check::scaled("multiplicative", linalg::distance(&lhs, &rhs), tol, scale * scale));

    let lhs = a.comult_matrix() * t;
    let rhs = linalg::kron(t, t) * a.comult_matrix();
    r.push(Check::scaled("comultiplicative", linalg::distance(&lhs, &rhs), tol, scale * scale));

    r.push(Check::scaled(
        "unital",
        linalg::vec_distance(&(t * a.unit()), a.unit()),
        tol,
        scale,
    ));

    let eps_t = t.transpose() * a.counit();
    r.push(Check::scaled("counital", linalg::vec_distance(&eps_t, a.counit()), tol, scale));

    let lhs = t * a.star_matrix();
    let rhs = a.star_matrix() * conj_matrix(t);
    r.push(Check::scaled("star", linalg::distance(&lhs, &rhs), tol, scale * scale));

    let lhs = a.antipode_matrix() * t;
    let rhs = t * a.antipode_matrix();
    r.push(Check::scaled("antipode", linalg::distance(&lhs, &rhs), tol, scale * scale));
    r
}
