use fqg_core::builders::{preset, PRESET_NAMES};
use fqg_core::dual::{build_dual, verify_dual_hopf, verify_fourier, verify_fourier_closed_form, verify_g_map};
use fqg_core::haar::{compute_haar, gns_construct, verify_trace};
use fqg_core::hopf::verify_hopf_star_axioms;
use fqg_core::io::{algebra_from_json, algebra_to_json};
use fqg_core::unitary::{build_w, verify_unitary_suite};
use fqg_core::FiniteQuantumGroup;

const TOL: f64 = 1e-9;

fn all_presets() -> impl Iterator<Item = String> {
    PRESET_NAMES
        .iter()
        .map(|s| s.to_string())
        .chain(["dual:fs3", "dual:ks3", "dual:fz4", "dual:dual:ks3"].map(String::from))
}

#[test]
fn every_preset_passes_the_whole_suite() {
    for name in all_presets() {
        let a = preset(&name).unwrap();
        assert!(verify_hopf_star_axioms(&a, TOL).max_residual() <= 1e-10, "{name}");
        let h = compute_haar(&a, TOL).unwrap();
        let g = gns_construct(&a, &h, TOL).unwrap();
        assert!(g.verify(&a, TOL).overall_pass(), "{name}");
        assert!(verify_trace(&a, &h, TOL).max_residual() <= 1e-12, "{name}");
        let qg = FiniteQuantumGroup::new(a.clone(), TOL).unwrap();
        let r = verify_unitary_suite(&qg, TOL).unwrap();
        assert!(r.overall_pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
        assert!(r.max_residual() <= 1e-10, "{name}");
        let w = build_w(&qg).unwrap();
        assert!(verify_g_map(&w, TOL).unwrap().max_residual() <= 1e-11, "{name}");
        assert!(verify_fourier(&a, &h, TOL).unwrap().overall_pass(), "{name}");
        assert!(verify_fourier_closed_form(&w, TOL).unwrap().max_residual() <= 1e-12, "{name}");
        assert!(verify_dual_hopf(&a, TOL).overall_pass(), "{name}");
    }
}

#[test]
fn dual_exchanges_commutativity() {
    for name in ["kz4", "ks3", "fs3", "fz6"] {
        let a = preset(name).unwrap();
        let d = build_dual(&a);
        assert_eq!(d.commutativity_defect(), a.cocommutativity_defect(), "{name}");
        assert_eq!(d.cocommutativity_defect(), a.commutativity_defect(), "{name}");
    }
}

#[test]
fn exported_presets_reload_identically() {
    for name in all_presets() {
        let a = preset(&name).unwrap();
        let text = algebra_to_json(&a);
        let back = algebra_from_json(&text).unwrap();
        assert_eq!(back, a, "{name}");
        assert_eq!(algebra_to_json(&back), text, "{name}");
    }
}
