//! First-significant-digit statistics of spin-chain ground-state observables.
//!
//! The library computes closed-form ground-state observables of the anisotropic
//! XY chain in a transverse field (magnetization, nearest-neighbour correlators,
//! single-site entropy, two-site logarithmic negativity), converts narrow
//! parameter windows of those observables into first-digit histograms, and uses
//! the deviation of the histogram from the logarithmic first-digit law as a
//! scalar signal. Scanning that signal across the field axis locates the quantum
//! critical point: the signal jumps where the observable is non-analytic.
//!
//! Layering, bottom to top:
//!
//! * [`quadrature`]: adaptive Gauss-Kronrod integration used by everything above.
//! * [`xy_model`]: dispersion, momentum-space integrals, and observables of the
//!   chain, both in the thermodynamic limit and at finite length.
//! * [`quantum_state`]: the reduced two-site density operator reconstructed from
//!   those observables and its entanglement measures.
//! * [`benford`]: first-digit extraction, histograms, and the violation
//!   parameter quantifying distance from the logarithmic law.
//! * [`scanner`]: windows over the field axis, violation-parameter curves, and
//!   transition detection on those curves.
//!
//! All computations are deterministic: identical inputs give bit-identical
//! results regardless of thread count (the only randomness, optional window
//! sampling, is seeded explicitly).

pub mod benford;
pub mod error;
pub mod quadrature;
pub mod quantum_state;
pub mod scanner;
pub mod xy_model;

pub use benford::{
    analyze_series, benford_pmf, first_significant_digit, histogram, shift_scale,
    violation_for_counts, violation_parameter, BenfordSample, DigitHistogram,
};
pub use error::{Error, Result};
pub use quadrature::{integrate, QuadratureConfig};
pub use quantum_state::{single_site_entropy, PtSpectrum, TwoSiteState};
pub use scanner::{
    detect_transition, sample_window, scan, scan_finite, window_delta, window_histogram,
    PlateauMargin, ScanGap, ScanPoint, ScanResult, TransitionReport, WindowSampling, WindowSpec,
    DEFAULT_EDGE_EXCLUSION,
};
pub use xy_model::{
    correlators, evaluate, g_integral, lambda_dispersion, magnetization_finite, magnetization_inf,
    Correlators, FiniteChainSpec, ModelParams, MomentumGrid, ObservableKind,
};
