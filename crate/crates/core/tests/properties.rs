use std::f64::consts::TAU;
use std::sync::OnceLock;

use cavity_entanglement::{
    atom_amplitudes, concurrence, concurrence_wootters, f00, reduced_density, AtomPairAmplitudes, CavityParams,
    InitialState, ModeSpectrum, SpectrumConfig,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn spectrum() -> &'static ModeSpectrum {
    static SPECTRUM: OnceLock<ModeSpectrum> = OnceLock::new();
    SPECTRUM.get_or_init(|| {
        let params = CavityParams::new(1.0, 0.5, 1.5).unwrap();
        let cfg = SpectrumConfig {
            truncation_eps: 1e-4,
            ..SpectrumConfig::default()
        };
        ModeSpectrum::build(params, &cfg).unwrap()
    })
}

/// Amplitude pairs with `|a|² + |b|² ≤ 1`.
fn amplitude_pair() -> impl Strategy<Value = AtomPairAmplitudes> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..TAU, 0.0..TAU).prop_map(|(radius, split, pa, pb)| {
        let r = radius.sqrt();
        let angle = split * std::f64::consts::FRAC_PI_2;
        AtomPairAmplitudes::new(
            Complex64::from_polar(r * angle.cos(), pa),
            Complex64::from_polar(r * angle.sin(), pb),
        )
    })
}

proptest! {
    #[test]
    fn survival_is_bounded_and_hermitian(t in -50.0..50.0f64) {
        let f = f00(spectrum(), t);
        prop_assert!(f.norm() <= 1.0 + 1e-12);
        prop_assert!((f00(spectrum(), -t) - f.conj()).norm() < 1e-12);
    }

    #[test]
    fn concurrence_is_a_valid_entanglement_measure(
        xi in 0.0..=1.0f64, phi in 0.0..TAU, t in 0.0..20.0f64,
    ) {
        let state = InitialState::new(xi, phi).unwrap();
        let amps = atom_amplitudes(f00(spectrum(), t), t, 1.0, &state);
        let c = concurrence(&amps);
        prop_assert!((0.0..=1.0).contains(&c));
        prop_assert!(amps.field_weight >= -1e-9);
        let rho = reduced_density(&amps);
        prop_assert!((rho.trace() - 1.0).abs() < 1e-9);
        prop_assert!(rho.hermiticity_defect() < 1e-15);
        prop_assert!(rho.eigenvalues()[0] >= -1e-9);
    }

    #[test]
    fn exchanging_atoms_preserves_concurrence(
        xi in 0.0..=1.0f64, phi in 0.0..TAU, t in 0.0..20.0f64,
    ) {
        let f = f00(spectrum(), t);
        let c = concurrence(&atom_amplitudes(f, t, 1.0, &InitialState::new(xi, phi).unwrap()));
        let swapped = InitialState::new(1.0 - xi, -phi).unwrap();
        let c_swapped = concurrence(&atom_amplitudes(f, t, 1.0, &swapped));
        prop_assert!((c - c_swapped).abs() < 1e-12);
    }

    #[test]
    fn phase_is_periodic(xi in 0.0..=1.0f64, phi in 0.0..TAU, t in 0.0..20.0f64) {
        let f = f00(spectrum(), t);
        let a = atom_amplitudes(f, t, 1.0, &InitialState::new(xi, phi).unwrap());
        let b = atom_amplitudes(f, t, 1.0, &InitialState::new(xi, phi + 3.0 * TAU).unwrap());
        prop_assert!((concurrence(&a) - concurrence(&b)).abs() < 1e-12);
    }

    #[test]
    fn spin_flip_route_agrees_with_closed_form(amps in amplitude_pair()) {
        let wootters = concurrence_wootters(&reduced_density(&amps)).unwrap();
        prop_assert!((wootters - concurrence(&amps)).abs() < 1e-10);
    }
}
