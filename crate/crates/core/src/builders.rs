//! Preset finite quantum groups: group algebras ℂ[G], function algebras C(G)
//! and their duals.

use crate::dual::build_dual;
use crate::error::{Error, Result};
use crate::hopf::FiniteHopfStarAlgebra;
use crate::linalg::{c, CMatrix, CVector};

pub use crate::group::CayleyTable;

/// ℂ[G]: basis `u_g`, `u_g u_h = u_{gh}`, `Δ(u_g) = u_g ⊗ u_g`, `ε(u_g) = 1`,
/// `S(u_g) = u_g* = u_{g⁻¹}`.
pub fn group_algebra(g: &CayleyTable) -> Result<FiniteHopfStarAlgebra> {
    let n = g.order();
    let mut mult = CMatrix::zeros(n, n * n);
    let mut comult = CMatrix::zeros(n * n, n);
    let mut antipode = CMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            mult[(g.mul(a, b), a * n + b)] = c(1.0);
        }
        comult[(a * n + a, a)] = c(1.0);
        antipode[(g.inverse(a), a)] = c(1.0);
    }
    let unit = crate::linalg::basis_vector(n, g.identity());
    let counit = CVector::from_element(n, c(1.0));
    let labels = g.labels().iter().map(|l| format!("u_{l}")).collect();
    FiniteHopfStarAlgebra::new(
        "group_algebra",
        labels,
        mult,
        comult,
        unit,
        counit,
        antipode.clone(),
        antipode,
    )
}

/// C(G): basis `δ_g`, pointwise product, `Δ(δ_g) = Σ_{st=g} δ_s ⊗ δ_t`,
/// `ε(δ_g) = [g = e]`, `S(δ_g) = δ_{g⁻¹}`, `δ_g* = δ_g`.
pub fn function_algebra(g: &CayleyTable) -> Result<FiniteHopfStarAlgebra> {
    let n = g.order();
    let mut mult = CMatrix::zeros(n, n * n);
    let mut comult = CMatrix::zeros(n * n, n);
    let mut antipode = CMatrix::zeros(n, n);
    for a in 0..n {
        mult[(a, a * n + a)] = c(1.0);
        for b in 0..n {
            comult[(a * n + b, g.mul(a, b))] = c(1.0);
        }
        antipode[(g.inverse(a), a)] = c(1.0);
    }
    let unit = CVector::from_element(n, c(1.0));
    let counit = crate::linalg::basis_vector(n, g.identity());
    let labels = g.labels().iter().map(|l| format!("d_{l}")).collect();
    FiniteHopfStarAlgebra::new(
        "function_algebra",
        labels,
        mult,
        comult,
        unit,
        counit,
        antipode,
        crate::linalg::identity(n),
    )
}

/// The dual Hopf *-algebra as a standalone algebra in the dual basis.
pub fn dual_concrete(a: &FiniteHopfStarAlgebra) -> FiniteHopfStarAlgebra {
    build_dual(a)
}

/// Names accepted by [`preset`], excluding the recursive `dual:` form.
pub const PRESET_NAMES: &[&str] = &[
    "trivial", "kz2", "kz3", "kz4", "kz5", "kz6", "fz2", "fz3", "fz4", "fz5", "fz6", "ks3", "fs3",
];

/// Builds a preset by name: `trivial`, `kz2`…`kz6` (ℂ[ℤₙ]), `fz2`…`fz6`
/// (C(ℤₙ)), `ks3` (ℂ[S₃]), `fs3` (C(S₃)), or `dual:<preset>`.
pub fn preset(name: &str) -> Result<FiniteHopfStarAlgebra> {
    if let Some(inner) = name.strip_prefix("dual:") {
        return Ok(dual_concrete(&preset(inner)?).with_name(name));
    }
    let group = |tag: &str| -> Result<CayleyTable> {
        match tag {
            "s3" => Ok(CayleyTable::symmetric3()),
            _ => match tag.strip_prefix('z').and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if (2..=6).contains(&k) => Ok(CayleyTable::cyclic(k)),
                _ => Err(Error::UnknownPreset(name.to_string())),
            },
        }
    };
    let built = match name {
        "trivial" => group_algebra(&CayleyTable::cyclic(1))?,
        _ if name.starts_with('k') => group_algebra(&group(&name[1..])?)?,
        _ if name.starts_with('f') => function_algebra(&group(&name[1..])?)?,
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Ok(built.with_name(name))
}

/// The Cayley table underlying a group-algebra or function-algebra preset,
/// when there is one.
pub fn preset_group(name: &str) -> Option<CayleyTable> {
    match name {
        "trivial" => Some(CayleyTable::cyclic(1)),
        _ => {
            let tag = name.strip_prefix('k').or_else(|| name.strip_prefix('f'))?;
            CayleyTable::preset(tag).ok()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify_hopf_star_axioms;

    #[test]
    fn every_preset_passes_axioms() {
        for name in PRESET_NAMES.iter().copied().chain(["dual:fs3", "dual:ks3", "dual:kz4"]) {
            let a = preset(name).unwrap();
            let r = verify_hopf_star_axioms(&a, 1e-9);
            assert!(r.overall_pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
            assert!(r.max_residual() <= 1e-12, "{name}");
        }
    }

    #[test]
    fn trivial_is_one_dimensional() {
        assert_eq!(preset("trivial").unwrap().dim(), 1);
        assert_eq!(group_algebra(&CayleyTable::cyclic(1)).unwrap().dim(), 1);
        assert_eq!(function_algebra(&CayleyTable::cyclic(1)).unwrap().dim(), 1);
    }

    #[test]
    fn commutativity_pattern() {
        let ks3 = preset("ks3").unwrap();
        assert_eq!(ks3.dim(), 6);
        assert!(ks3.commutativity_defect() > 0.5);
        assert_eq!(ks3.cocommutativity_defect(), 0.0);
        let fs3 = preset("fs3").unwrap();
        assert_eq!(fs3.commutativity_defect(), 0.0);
        assert!(fs3.cocommutativity_defect() > 0.5);
        let dfs3 = preset("dual:fs3").unwrap();
        assert_eq!(dfs3.dim(), 6);
        assert_eq!(dfs3.cocommutativity_defect(), 0.0);
        for name in ["kz2", "kz5", "fz4", "fz6"] {
            let a = preset(name).unwrap();
            assert_eq!(a.commutativity_defect(), 0.0, "{name}");
            assert_eq!(a.cocommutativity_defect(), 0.0, "{name}");
        }
    }

    #[test]
    fn s3_group_algebra_noncommuting_pair() {
        let a = preset("ks3").unwrap();
        // (12)(23) != (23)(12)
        let x = a.basis(2);
        let y = a.basis(1);
        assert!(crate::linalg::vec_distance(&a.mul(&x, &y), &a.mul(&y, &x)) > 1.0);
    }

    #[test]
    fn unknown_presets() {
        for bad in ["kz7", "kz1", "zz", "dual:nope", "", "fq3"] {
            assert!(matches!(preset(bad), Err(Error::UnknownPreset(_))), "{bad}");
        }
    }

    #[test]
    fn dual_of_group_algebra_is_function_algebra() {
        // Under the dual-basis identification u_g^* ↔ δ_g the transposed
        // tensors of ℂ[Z₂] are exactly those of C(Z₂).
        let d = dual_concrete(&preset("kz2").unwrap());
        let f = preset("fz2").unwrap();
        assert_eq!(d.mult_matrix(), f.mult_matrix());
        assert_eq!(d.comult_matrix(), f.comult_matrix());
        assert_eq!(d.unit(), f.unit());
        assert_eq!(d.counit(), f.counit());
        assert_eq!(d.antipode_matrix(), f.antipode_matrix());
        assert_eq!(d.star_matrix(), f.star_matrix());
    }
}
