//! Exact entanglement dynamics of two identical oscillator atoms at the
//! centre of a spherical cavity, coupled to a massless scalar field.
//!
//! Only the centre-of-mass coordinate of the pair couples to the field, so the
//! one-excitation dynamics reduce to a single survival coefficient `f00(t)`.
//! It is computed either from the discrete normal modes of a cavity of radius
//! `R` ([`ModeSpectrum`]) or, for `R → ∞`, from a Fourier integral
//! ([`FreeSpace`]). [`oracle`] provides a brute-force finite-mode reference.

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod freespace;
pub mod oracle;
pub mod params;
pub mod quadrature;
pub mod roots;
pub mod spectrum;

pub use dynamics::{amplitudes, f00, f0k, stay_swap, AmplitudeSet, AmplitudeSource, TimeGrid};
pub use entanglement::{
    atom_amplitudes, concurrence, concurrence_on_grid, concurrence_series, concurrence_wootters,
    find_disentanglement_times, reduced_density, AtomPairAmplitudes, InitialState, ReducedDensityMatrix, VanishingAtom,
    ZeroCertificate,
};
pub use error::{Error, Result};
pub use freespace::{asymptotic_concurrence, f00_free, FreeSpace, QuadratureConfig};
pub use oracle::{f00_oracle, finite_n_diagonalize, OracleEigensystem, QuadraticForm};
pub use params::CavityParams;
pub use spectrum::{ModeSpectrum, SpectrumConfig};
