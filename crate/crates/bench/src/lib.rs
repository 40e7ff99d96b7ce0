//! Shared scenario builders for the pipeline benchmarks.

use spinbenford::{FiniteChainSpec, ModelParams, QuadratureConfig, WindowSpec};

/// Isotropic coupling at a field inside the ordered phase.
pub fn ordered_params() -> ModelParams {
    ModelParams::new(1.0, 0.5).expect("finite parameters")
}

/// Isotropic coupling at a field inside the disordered phase.
pub fn paramagnetic_params() -> ModelParams {
    ModelParams::new(1.0, 1.6).expect("finite parameters")
}

/// Default integration tolerances.
pub fn quadrature_config() -> QuadratureConfig {
    QuadratureConfig::default()
}

/// A reduced window geometry that keeps benchmark runs short.
pub fn bench_window(samples: usize) -> WindowSpec {
    WindowSpec::new(0.2, samples, 0.05).expect("valid window")
}

/// A short chain for finite-size benchmarks.
pub fn bench_chain() -> FiniteChainSpec {
    FiniteChainSpec::new(100).expect("valid chain")
}
