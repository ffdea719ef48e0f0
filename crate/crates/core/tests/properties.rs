use fqg_core::builders::preset;
use fqg_core::dual::{build_dual, fourier, fourier_preimage, g_map};
use fqg_core::haar::Functional;
use fqg_core::io::{algebra_from_json, algebra_to_json};
use fqg_core::linalg::{self, CMatrix, CVector};
use fqg_core::unitary::build_w;
use fqg_core::{FiniteHopfStarAlgebra, FiniteQuantumGroup, MultiplicativeUnitary};
use num_complex::Complex64;
use proptest::prelude::*;
use std::sync::OnceLock;

const NAMES: &[&str] = &["kz3", "fz4", "ks3", "fs3", "dual:fs3"];

fn unitaries() -> &'static Vec<MultiplicativeUnitary> {
    static CACHE: OnceLock<Vec<MultiplicativeUnitary>> = OnceLock::new();
    CACHE.get_or_init(|| {
        NAMES
            .iter()
            .map(|n| build_w(&FiniteQuantumGroup::new(preset(n).unwrap(), 1e-9).unwrap()).unwrap())
            .collect()
    })
}

fn element(n: usize) -> impl Strategy<Value = CVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|v| CVector::from_iterator(v.len(), v.into_iter().map(|(re, im)| Complex64::new(re, im))))
}

fn case() -> impl Strategy<Value = (usize, CVector, CVector)> {
    (0..NAMES.len()).prop_flat_map(|i| {
        let n = preset(NAMES[i]).unwrap().dim();
        (Just(i), element(n), element(n))
    })
}

fn coproduct_product(a: &FiniteHopfStarAlgebra, x: &CVector, y: &CVector) -> CVector {
    // Product in 𝒜 ⊗ 𝒜 of two coproducts.
    let n = a.dim();
    let (dx, dy) = (a.coproduct(x), a.coproduct(y));
    let mut out = CVector::zeros(n * n);
    for p in 0..n * n {
        for q in 0..n * n {
            let c = dx[p] * dy[q];
            if c.norm() == 0.0 {
                continue;
            }
            let left = a.mul(&a.basis(p / n), &a.basis(q / n));
            let right = a.mul(&a.basis(p % n), &a.basis(q % n));
            out += linalg::kron_vec(&left, &right) * c;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn comultiplication_is_multiplicative((i, x, y) in case()) {
        let a = unitaries()[i].quantum_group().algebra();
        let lhs = a.coproduct(&a.mul(&x, &y));
        prop_assert!(linalg::vec_distance(&lhs, &coproduct_product(a, &x, &y)) <= 1e-12);
    }

    #[test]
    fn antipode_reverses_products((i, x, y) in case()) {
        let a = unitaries()[i].quantum_group().algebra();
        let lhs = a.antipode(&a.mul(&x, &y));
        let rhs = a.mul(&a.antipode(&y), &a.antipode(&x));
        prop_assert!(linalg::vec_distance(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn haar_state_is_positive_and_tracial((i, x, y) in case()) {
        let qg = unitaries()[i].quantum_group();
        let (a, h) = (qg.algebra(), qg.haar());
        let v = h.apply(&a.mul(&a.star(&x), &x));
        prop_assert!(v.re > 0.0 && v.im.abs() <= 1e-14);
        let ab = h.apply(&a.mul(&x, &y));
        let ba = h.apply(&a.mul(&y, &x));
        prop_assert!((ab - ba).norm() <= 1e-13);
    }

    #[test]
    fn left_regular_representation_is_a_star_homomorphism((i, x, y) in case()) {
        let qg = unitaries()[i].quantum_group();
        let (a, g) = (qg.algebra(), qg.gns());
        let lx = g.left_multiplication_matrix(&x).unwrap();
        let ly = g.left_multiplication_matrix(&y).unwrap();
        let lxy = g.left_multiplication_matrix(&a.mul(&x, &y)).unwrap();
        prop_assert!(linalg::distance(&lxy, &(&lx * &ly)) <= 1e-12);
        let lxs = g.left_multiplication_matrix(&a.star(&x)).unwrap();
        prop_assert!(linalg::distance(&lxs, &lx.adjoint()) <= 1e-12);
    }

    #[test]
    fn w_implements_comultiplication((i, x, y) in case()) {
        // W (L_x ⊗ 1) W* = (L ⊗ L)(Δ(x)), tested on a random x.
        let w = &unitaries()[i];
        let g = w.quantum_group().gns();
        let n = w.dim();
        let lx = g.left_multiplication_matrix(&x).unwrap();
        let lhs = w.matrix() * linalg::kron(&lx, &linalg::identity(n)) * w.matrix().adjoint();
        let rhs = g.left_multiplication_2(&w.quantum_group().algebra().coproduct(&x));
        prop_assert!(linalg::distance(&lhs, &rhs) <= 1e-12 * (1.0 + linalg::vec_norm(&y)));
    }

    #[test]
    fn g_map_is_a_star_homomorphism((i, x, y) in case()) {
        let w = &unitaries()[i];
        let dual = build_dual(w.quantum_group().algebra());
        let conv = dual.mul(&x, &y);
        let gx = g_map(w, &Functional::new(x.clone())).unwrap();
        let gy = g_map(w, &Functional::new(y)).unwrap();
        let gxy = g_map(w, &Functional::new(conv)).unwrap();
        prop_assert!(linalg::distance(&gxy, &(&gx * &gy)) <= 1e-11);
        let gxs = g_map(w, &Functional::new(dual.star(&x))).unwrap();
        prop_assert!(linalg::distance(&gxs, &gx.adjoint()) <= 1e-11);
    }

    #[test]
    fn fourier_round_trip((i, x, _y) in case()) {
        let qg = unitaries()[i].quantum_group();
        let f = fourier(qg.algebra(), qg.haar(), &x);
        let back = fourier_preimage(qg.algebra(), qg.haar(), &f).unwrap();
        prop_assert!(linalg::vec_distance(&back, &x) <= 1e-12);
    }

    #[test]
    fn arbitrary_constants_round_trip_exactly(
        vals in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 24)
    ) {
        let n = 2;
        let c = |k: usize| Complex64::new(vals[k % vals.len()], vals[(k + 7) % vals.len()]);
        let a = FiniteHopfStarAlgebra::new(
            "random",
            vec!["a".into(), "b".into()],
            CMatrix::from_fn(n, n * n, |r, s| c(r * 4 + s)),
            CMatrix::from_fn(n * n, n, |r, s| c(8 + r * 2 + s)),
            CVector::from_fn(n, |r, _| c(16 + r)),
            CVector::from_fn(n, |r, _| c(18 + r)),
            CMatrix::from_fn(n, n, |r, s| c(20 + r * 2 + s)),
            CMatrix::from_fn(n, n, |r, s| c(3 + r * 5 + s)),
        ).unwrap();
        let back = algebra_from_json(&algebra_to_json(&a)).unwrap();
        prop_assert_eq!(back, a);
    }
}
