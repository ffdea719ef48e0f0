//! Operators on tensor products of small Hilbert spaces, with leg numbering.
//!
//! Legs are numbered from 1, as in `W₁₂`, `W₁₃`, `V₂₃₄`. The tensor basis is
//! ordered row-major with leg 1 slowest, the usual Kronecker convention, so
//! `embed_legs(A ⊗ B, [1, 2], dims)` is literally `A.kronecker(B)`.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};

/// Dense operator on `ℂ^{dims[0]} ⊗ … ⊗ ℂ^{dims[k-1]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorOperator {
    dims: Vec<usize>,
    entries: CMatrix,
}

impl TensorOperator {
    pub fn new(dims: Vec<usize>, entries: CMatrix) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::DimensionMismatch(format!(
                "leg dimensions must be non-empty and positive, got {dims:?}"
            )));
        }
        let total: usize = dims.iter().product();
        if entries.nrows() != total || entries.ncols() != total {
            return Err(Error::DimensionMismatch(format!(
                "entries are {}x{}, legs {dims:?} need {total}x{total}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(TensorOperator { dims, entries })
    }

    pub fn identity(dims: &[usize]) -> Result<Self> {
        let total = dims.iter().product();
        Self::new(dims.to_vec(), linalg::identity(total))
    }

    /// Single-leg operator from a square matrix.
    pub fn single(m: CMatrix) -> Result<Self> {
        Self::new(vec![m.nrows()], m)
    }

    /// `a ⊗ b` with the legs of `a` first.
    pub fn kron(a: &TensorOperator, b: &TensorOperator) -> TensorOperator {
        let mut dims = a.dims.clone();
        dims.extend_from_slice(&b.dims);
        TensorOperator {
            dims,
            entries: linalg::kron(&a.entries, &b.entries),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn legs(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn adjoint(&self) -> TensorOperator {
        TensorOperator {
            dims: self.dims.clone(),
            entries: self.entries.adjoint(),
        }
    }

    pub fn norm(&self) -> f64 {
        linalg::frobenius(&self.entries)
    }

    /// Operator product; both factors must act on the same legs.
    pub fn compose(&self, other: &TensorOperator) -> Result<TensorOperator> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose operators on legs {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        Ok(TensorOperator {
            dims: self.dims.clone(),
            entries: &self.entries * &other.entries,
        })
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &TensorOperator) -> Result<TensorOperator> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        Ok(TensorOperator {
            dims: self.dims.clone(),
            entries: ab.entries - ba.entries,
        })
    }
}

impl Mul for &TensorOperator {
    type Output = TensorOperator;

    /// Panics on mismatched legs; use [`TensorOperator::compose`] for a
    /// fallible product.
    fn mul(self, rhs: &TensorOperator) -> TensorOperator {
        self.compose(rhs).expect("operators act on the same legs")
    }
}

/// The functional `ω_{a,b}: T ↦ ⟨a, T b⟩` on operators of one leg.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalOnOperators {
    bra: CVector,
    ket: CVector,
}

impl FunctionalOnOperators {
    pub fn new(bra: CVector, ket: CVector) -> Result<Self> {
        if bra.len() != ket.len() || bra.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "bra has dimension {}, ket has dimension {}",
                bra.len(),
                ket.len()
            )));
        }
        Ok(FunctionalOnOperators { bra, ket })
    }

    /// `ω_{e_i, e_j}`, whose value on `T` is the matrix entry `T[i, j]`.
    pub fn matrix_unit(dim: usize, i: usize, j: usize) -> Self {
        FunctionalOnOperators {
            bra: linalg::basis_vector(dim, i),
            ket: linalg::basis_vector(dim, j),
        }
    }

    pub fn dim(&self) -> usize {
        self.bra.len()
    }

    pub fn bra(&self) -> &CVector {
        &self.bra
    }

    pub fn ket(&self) -> &CVector {
        &self.ket
    }

    pub fn apply(&self, t: &CMatrix) -> Complex64 {
        self.bra.dotc(&(t * &self.ket))
    }

    /// Coefficient matrix `C` with `ω(T) = Σ C[i,j] T[i,j]`.
    pub fn coefficients(&self) -> CMatrix {
        CMatrix::from_fn(self.dim(), self.dim(), |i, j| self.bra[i].conj() * self.ket[j])
    }

    /// `ω_{b,a}`, the functional with roles of bra and ket exchanged.
    pub fn swapped(&self) -> Self {
        FunctionalOnOperators {
            bra: self.ket.clone(),
            ket: self.bra.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Enumerates the offsets of all multi-indices over `legs` (0-based) of an
/// ambient space with the given strides, in row-major order over `legs`.
fn offsets(legs: &[usize], dims: &[usize], strides: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &leg in legs {
        let mut next = Vec::with_capacity(out.len() * dims[leg]);
        for &base in &out {
            for digit in 0..dims[leg] {
                next.push(base + digit * strides[leg]);
            }
        }
        out = next;
    }
    out
}

/// Places `x` on the ambient legs named in `placement` (1-based) and the
/// identity on all other legs.
pub fn embed_legs(
    x: &TensorOperator,
    placement: &[usize],
    ambient: &[usize],
) -> Result<TensorOperator> {
    if placement.len() != x.legs() {
        return Err(Error::DimensionMismatch(format!(
            "operator has {} legs but placement names {}",
            x.legs(),
            placement.len()
        )));
    }
    let mut seen = vec![false; ambient.len()];
    for (k, &leg) in placement.iter().enumerate() {
        if leg == 0 || leg > ambient.len() {
            return Err(Error::InvalidLeg {
                leg,
                legs: ambient.len(),
            });
        }
        if seen[leg - 1] {
            return Err(Error::RepeatedLeg(leg));
        }
        seen[leg - 1] = true;
        if ambient[leg - 1] != x.dims[k] {
            return Err(Error::DimensionMismatch(format!(
                "leg {} of the operator has dimension {}, ambient leg {leg} has {}",
                k + 1,
                x.dims[k],
                ambient[leg - 1]
            )));
        }
    }
    if ambient.contains(&0) {
        return Err(Error::DimensionMismatch("ambient leg of dimension 0".into()));
    }

    let st = strides(ambient);
    let selected: Vec<usize> = placement.iter().map(|&l| l - 1).collect();
    let rest: Vec<usize> = (0..ambient.len()).filter(|l| !seen[*l]).collect();
    let sel_off = offsets(&selected, ambient, &st);
    let rest_off = offsets(&rest, ambient, &st);

    let total: usize = ambient.iter().product();
    let mut out = CMatrix::zeros(total, total);
    let xm = x.matrix();
    for &base in &rest_off {
        for (i, &oi) in sel_off.iter().enumerate() {
            for (j, &oj) in sel_off.iter().enumerate() {
                let v = xm[(i, j)];
                if v != Complex64::new(0.0, 0.0) {
                    out[(base + oi, base + oj)] = v;
                }
            }
        }
    }
    TensorOperator::new(ambient.to_vec(), out)
}

/// The flip `Σ(a ⊗ b) = b ⊗ a` from `ℂ^{dim_a} ⊗ ℂ^{dim_b}` to
/// `ℂ^{dim_b} ⊗ ℂ^{dim_a}`. The operator records the domain legs.
pub fn flip(dim_a: usize, dim_b: usize) -> Result<TensorOperator> {
    if dim_a == 0 || dim_b == 0 {
        return Err(Error::DimensionMismatch("flip of a zero-dimensional leg".into()));
    }
    let n = dim_a * dim_b;
    let mut m = CMatrix::zeros(n, n);
    for i in 0..dim_a {
        for j in 0..dim_b {
            m[(j * dim_a + i, i * dim_b + j)] = linalg::c(1.0);
        }
    }
    TensorOperator::new(vec![dim_a, dim_b], m)
}

/// Applies the functional with coefficient matrix `coeffs`
/// (`ω(T) = Σ coeffs[i,j] T[i,j]`) to leg `leg` (1-based) of `x`, returning
/// the operator on the remaining legs. Slicing a one-leg operator yields a
/// `1×1` operator on a single leg of dimension 1.
pub fn slice_leg(x: &TensorOperator, leg: usize, coeffs: &CMatrix) -> Result<TensorOperator> {
    let dims = x.dims();
    if leg == 0 || leg > dims.len() {
        return Err(Error::InvalidLeg {
            leg,
            legs: dims.len(),
        });
    }
    let d = dims[leg - 1];
    if coeffs.nrows() != d || coeffs.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "functional has dimension {}, sliced leg has {d}",
            coeffs.nrows()
        )));
    }
    let st = strides(dims);
    let rest: Vec<usize> = (0..dims.len()).filter(|&l| l != leg - 1).collect();
    let rest_off = offsets(&rest, dims, &st);
    let s = st[leg - 1];
    let m = rest_off.len();
    let xm = x.matrix();
    let mut out = CMatrix::zeros(m, m);
    for (r, &ro) in rest_off.iter().enumerate() {
        for (cix, &co) in rest_off.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..d {
                for j in 0..d {
                    let w = coeffs[(i, j)];
                    if w != Complex64::new(0.0, 0.0) {
                        acc += w * xm[(ro + i * s, co + j * s)];
                    }
                }
            }
            out[(r, cix)] = acc;
        }
    }
    let rest_dims: Vec<usize> = if rest.is_empty() {
        vec![1]
    } else {
        rest.iter().map(|&l| dims[l]).collect()
    };
    TensorOperator::new(rest_dims, out)
}

/// `(ω ⊗ id)X` for `Side::Left` or `(id ⊗ ω)X` for `Side::Right` on a
/// two-leg operator.
pub fn slice(x: &TensorOperator, side: Side, omega: &FunctionalOnOperators) -> Result<CMatrix> {
    if x.legs() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "slice expects a two-leg operator, got {} legs",
            x.legs()
        )));
    }
    let leg = match side {
        Side::Left => 1,
        Side::Right => 2,
    };
    Ok(slice_leg(x, leg, &omega.coefficients())?.into_matrix())
}

/// Frobenius distance between operators on identical legs.
pub fn op_distance(x: &TensorOperator, y: &TensorOperator) -> Result<f64> {
    if x.dims() != y.dims() {
        return Err(Error::DimensionMismatch(format!(
            "operators on legs {:?} and {:?}",
            x.dims(),
            y.dims()
        )));
    }
    Ok(linalg::distance(x.matrix(), y.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, distance, frobenius};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(n: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn random_vector(n: usize, seed: u64) -> CVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn cnot() -> TensorOperator {
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 0)] = c(1.0);
        m[(1, 1)] = c(1.0);
        m[(2, 3)] = c(1.0);
        m[(3, 2)] = c(1.0);
        TensorOperator::new(vec![2, 2], m).unwrap()
    }

    #[test]
    fn identity_embeds_to_identity() {
        let x = TensorOperator::identity(&[2]).unwrap();
        let e = embed_legs(&x, &[1], &[2, 2]).unwrap();
        assert_eq!(e.matrix(), &linalg::identity(4));
    }

    #[test]
    fn w13_matches_flip_conjugation() {
        // Oracle: (Σ ⊗ 1)(1 ⊗ W)(Σ ⊗ 1) by explicit 8x8 Kronecker products.
        let w = cnot();
        let sigma = flip(2, 2).unwrap().into_matrix();
        let sig1 = linalg::kron(&sigma, &linalg::identity(2));
        let w23 = linalg::kron(&linalg::identity(2), w.matrix());
        let expected = &sig1 * w23 * &sig1;
        let w13 = embed_legs(&w, &[1, 3], &[2, 2, 2]).unwrap();
        assert_eq!(w13.matrix(), &expected);
    }

    #[test]
    fn full_identity_placement_is_noop() {
        let x = TensorOperator::new(vec![2, 3], random_matrix(6, 3)).unwrap();
        let e = embed_legs(&x, &[1, 2], &[2, 3]).unwrap();
        assert_eq!(e, x);
    }

    #[test]
    fn embed_errors() {
        let x = TensorOperator::new(vec![2, 2], random_matrix(4, 1)).unwrap();
        assert!(matches!(embed_legs(&x, &[1, 1], &[2, 2, 2]), Err(Error::RepeatedLeg(1))));
        assert!(matches!(
            embed_legs(&x, &[1, 2], &[2, 3]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(embed_legs(&x, &[1, 4], &[2, 2, 2]), Err(Error::InvalidLeg { .. })));
        assert!(TensorOperator::new(vec![], CMatrix::zeros(1, 1)).is_err());
        assert!(TensorOperator::new(vec![2], CMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn disjoint_legs_commute() {
        let x = TensorOperator::new(vec![2, 2], random_matrix(4, 5)).unwrap();
        let y = TensorOperator::single(random_matrix(2, 6)).unwrap();
        let ex = embed_legs(&x, &[2, 3], &[2, 2, 2]).unwrap();
        let ey = embed_legs(&y, &[1], &[2, 2, 2]).unwrap();
        assert!(ex.commutator(&ey).unwrap().norm() < 1e-12 * ex.norm() * ey.norm());
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip(1, 1).unwrap().matrix(), &linalg::identity(1));
        // SWAP on 2⊗2: e0⊗e1 (index 1) <-> e1⊗e0 (index 2).
        let mut swap = CMatrix::zeros(4, 4);
        swap[(0, 0)] = c(1.0);
        swap[(1, 2)] = c(1.0);
        swap[(2, 1)] = c(1.0);
        swap[(3, 3)] = c(1.0);
        assert_eq!(flip(2, 2).unwrap().matrix(), &swap);
        // Σ(e1 ⊗ e2) = e2 ⊗ e1 for dims (2,3): index 1*3+2=5 -> 2*2+1=5 in the
        // (3,2) basis; use e0 ⊗ e2 instead for an index change: 2 -> 4.
        let f = flip(2, 3).unwrap();
        let v = linalg::kron_vec(&linalg::basis_vector(2, 0), &linalg::basis_vector(3, 2));
        let w = f.matrix() * v;
        let expected = linalg::kron_vec(&linalg::basis_vector(3, 2), &linalg::basis_vector(2, 0));
        assert_eq!(w, expected);
        let sq = flip(3, 3).unwrap();
        assert_eq!(&(sq.matrix() * sq.matrix()), &linalg::identity(9));
    }

    #[test]
    fn slice_examples() {
        let id = TensorOperator::identity(&[2, 2]).unwrap();
        let om = FunctionalOnOperators::matrix_unit(2, 0, 0);
        assert_eq!(slice(&id, Side::Left, &om).unwrap(), linalg::identity(2));

        // SWAP = Σ_{ij} E_ij ⊗ E_ji, so (ω_{e_i,e_j} ⊗ id)SWAP = E_ji.
        let swap = flip(2, 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let s = slice(&swap, Side::Left, &FunctionalOnOperators::matrix_unit(2, i, j)).unwrap();
                let mut e = CMatrix::zeros(2, 2);
                e[(j, i)] = c(1.0);
                assert_eq!(s, e);
            }
        }
    }

    #[test]
    fn slice_dimension_mismatch() {
        let x = TensorOperator::identity(&[2, 3]).unwrap();
        let om = FunctionalOnOperators::matrix_unit(3, 0, 0);
        assert!(slice(&x, Side::Left, &om).is_err());
        assert!(slice(&x, Side::Right, &om).is_ok());
        assert!(FunctionalOnOperators::new(CVector::zeros(2), CVector::zeros(3)).is_err());
    }

    #[test]
    fn slice_adjoint_law() {
        let x = TensorOperator::new(vec![3, 2], random_matrix(6, 11)).unwrap();
        let om = FunctionalOnOperators::new(random_vector(3, 12), random_vector(3, 13)).unwrap();
        let lhs = slice(&x.adjoint(), Side::Left, &om.swapped()).unwrap();
        let rhs = slice(&x, Side::Left, &om).unwrap().adjoint();
        assert!(distance(&lhs, &rhs) < 1e-13);
    }

    #[test]
    fn op_distance_examples() {
        let id = TensorOperator::identity(&[2]).unwrap();
        let zero = TensorOperator::single(CMatrix::zeros(2, 2)).unwrap();
        assert_eq!(op_distance(&id, &id).unwrap(), 0.0);
        assert!((op_distance(&id, &zero).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(op_distance(&id, &TensorOperator::identity(&[3]).unwrap()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn embedding_is_multiplicative_and_star_preserving(seed in 0u64..10_000, perm in 0usize..6) {
            let placements = [[1, 2], [2, 1], [1, 3], [3, 1], [2, 3], [3, 2]];
            let p = placements[perm];
            let ambient = [2, 2, 2];
            let x = TensorOperator::new(vec![2, 2], random_matrix(4, seed)).unwrap();
            let y = TensorOperator::new(vec![2, 2], random_matrix(4, seed + 1)).unwrap();
            let exy = embed_legs(&(&x * &y), &p, &ambient).unwrap();
            let prod = &embed_legs(&x, &p, &ambient).unwrap() * &embed_legs(&y, &p, &ambient).unwrap();
            prop_assert!(op_distance(&exy, &prod).unwrap() < 1e-12);
            prop_assert_eq!(
                embed_legs(&x, &p, &ambient).unwrap().adjoint(),
                embed_legs(&x.adjoint(), &p, &ambient).unwrap()
            );
        }

        #[test]
        fn flip_realizes_leg_transposition(seed in 0u64..10_000, d in 1usize..4) {
            let x = TensorOperator::new(vec![d, d], random_matrix(d * d, seed)).unwrap();
            let s = flip(d, d).unwrap();
            let swapped = embed_legs(&x, &[2, 1], &[d, d]).unwrap();
            let conj = &(&s * &x) * &s;
            prop_assert!(op_distance(&swapped, &conj).unwrap() < 1e-13);
        }

        #[test]
        fn slice_is_linear_and_bounded(seed in 0u64..10_000, right in any::<bool>()) {
            let side = if right { Side::Right } else { Side::Left };
            let x = TensorOperator::new(vec![3, 3], random_matrix(9, seed)).unwrap();
            let y = TensorOperator::new(vec![3, 3], random_matrix(9, seed + 7)).unwrap();
            let om = FunctionalOnOperators::new(random_vector(3, seed + 1), random_vector(3, seed + 2)).unwrap();
            let lam = Complex64::new(0.3, -1.2);
            let sum = TensorOperator::new(vec![3, 3], x.matrix() + y.matrix().scale(1.0) * lam).unwrap();
            let lhs = slice(&sum, side, &om).unwrap();
            let rhs = slice(&x, side, &om).unwrap() + slice(&y, side, &om).unwrap() * lam;
            prop_assert!(distance(&lhs, &rhs) < 1e-12);
            let bound = linalg::vec_norm(om.bra()) * linalg::vec_norm(om.ket()) * x.norm();
            prop_assert!(frobenius(&slice(&x, side, &om).unwrap()) <= bound + 1e-12);
        }

        #[test]
        fn distance_is_a_metric(s in 0u64..10_000) {
            let mk = |k| TensorOperator::new(vec![2, 2], random_matrix(4, s + k)).unwrap();
            let (x, y, z) = (mk(0), mk(1), mk(2));
            let dxy = op_distance(&x, &y).unwrap();
            prop_assert!((dxy - op_distance(&y, &x).unwrap()).abs() < 1e-15);
            prop_assert!(op_distance(&x, &z).unwrap() <= dxy + op_distance(&y, &z).unwrap() + 1e-12);
        }
    }
}
