//! Ground-state observables of the anisotropic XY chain in a transverse field.
//!
//! After fermionization the chain is free, and every observable used here
//! reduces to momentum-space quadratures over one Brillouin-zone half [0, pi]
//! with the dispersion
//!
//! Lambda(phi) = sqrt(gamma^2 sin^2 phi + (a - cos phi)^2),
//!
//! where `a` is the dimensionless field and `gamma` the anisotropy (gamma = 1
//! is the Ising chain, critical at a = 1). The infinite-chain observables are
//! integrals; finite chains replace them with momentum sums.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::quantum_state::{single_site_entropy, TwoSiteState};

/// One point of the model: anisotropy and dimensionless transverse field.
///
/// Negative fields are accepted here (the observables are well defined); the
/// scan layer restricts itself to nonnegative fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    gamma: f64,
    field_ratio: f64,
}

impl ModelParams {
    pub fn new(gamma: f64, field_ratio: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::NonFiniteParameter {
                name: "gamma",
                value: gamma,
            });
        }
        if !field_ratio.is_finite() {
            return Err(Error::NonFiniteParameter {
                name: "field_ratio",
                value: field_ratio,
            });
        }
        Ok(Self { gamma, field_ratio })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn field_ratio(&self) -> f64 {
        self.field_ratio
    }

    /// Same anisotropy, different field; used by the scan layer.
    pub fn at_field(&self, field_ratio: f64) -> Result<Self> {
        Self::new(self.gamma, field_ratio)
    }
}

/// The six scannable quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObservableKind {
    /// Transverse magnetization M^z.
    Mz,
    /// Nearest-neighbour C^xx correlator.
    Cxx,
    /// Nearest-neighbour C^yy correlator.
    Cyy,
    /// Nearest-neighbour C^zz correlator.
    Czz,
    /// Single-site von Neumann entropy, in bits.
    SingleSiteEntropy,
    /// Two-site logarithmic negativity.
    LogNegativity,
}

impl ObservableKind {
    pub const ALL: [Self; 6] = [
        Self::Mz,
        Self::Cxx,
        Self::Cyy,
        Self::Czz,
        Self::SingleSiteEntropy,
        Self::LogNegativity,
    ];

    /// Stable short token used by the CLI and in CSV metadata.
    pub fn label(&self) -> &'static str {
        match self {
            Self::Mz => "mz",
            Self::Cxx => "cxx",
            Self::Cyy => "cyy",
            Self::Czz => "czz",
            Self::SingleSiteEntropy => "entropy",
            Self::LogNegativity => "logneg",
        }
    }

    /// Inverse of [`label`](Self::label).
    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.label() == label)
    }
}

impl std::fmt::Display for ObservableKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Momentum sets available for finite chains.
///
/// The fermionic vacuum sector of a ring of n spins quantizes momenta either on
/// integers or half-integers times 2 pi / n; the observable sums differ at
/// order 1/n, which matters only near the critical field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MomentumGrid {
    /// phi_p = 2 pi (p - 1/2) / n, p = 1..n. The default: the grid avoids the
    /// phi = 0 mode, so the magnetization stays smooth in the field at every
    /// finite n and its critical-window excursion grows with n.
    #[default]
    Antiperiodic,
    /// phi_p = 2 pi p / n, p = 1..n. Contains the phi = 0 mode, which puts a
    /// step of height 2/n into the magnetization at the critical field.
    Periodic,
    /// phi_p = 2 pi p / n, p = 1..n/2 only, keeping the 1/n prefactor. Tends
    /// to half the infinite-chain value; retained for comparison. Even n only.
    HalfZone,
}

/// A finite chain: length plus the momentum set used for its sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteChainSpec {
    n: usize,
    grid: MomentumGrid,
}

impl FiniteChainSpec {
    /// Standard constructor: even length, at least 4 spins.
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidChainLength {
                n,
                reason: "need at least 4 spins",
            });
        }
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidChainLength {
                n,
                reason: "length must be even (use with_odd_allowed to override)",
            });
        }
        Ok(Self {
            n,
            grid: MomentumGrid::default(),
        })
    }

    /// Accepts any length >= 3. The full-zone momentum grids are well defined
    /// for odd lengths; results for odd n should be labelled as such.
    pub fn with_odd_allowed(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidChainLength {
                n,
                reason: "need at least 3 spins",
            });
        }
        Ok(Self {
            n,
            grid: MomentumGrid::default(),
        })
    }

    /// Selects a non-default momentum grid.
    pub fn with_grid(self, grid: MomentumGrid) -> Result<Self> {
        if grid == MomentumGrid::HalfZone && !self.n.is_multiple_of(2) {
            return Err(Error::InvalidChainLength {
                n: self.n,
                reason: "the half-zone momentum set needs an even length",
            });
        }
        Ok(Self { grid, ..self })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn momentum_grid(&self) -> MomentumGrid {
        self.grid
    }

    /// The momenta summed over, in increasing order.
    fn momenta(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n as f64;
        let (count, offset) = match self.grid {
            MomentumGrid::Antiperiodic => (self.n, -0.5),
            MomentumGrid::Periodic => (self.n, 0.0),
            MomentumGrid::HalfZone => (self.n / 2, 0.0),
        };
        (1..=count).map(move |p| std::f64::consts::TAU * (p as f64 + offset) / n)
    }
}

/// Quasiparticle dispersion Lambda(phi) >= 0.
pub fn lambda_dispersion(params: &ModelParams, phi: f64) -> f64 {
    let (sin, cos) = phi.sin_cos();
    let transverse = params.gamma * sin;
    let longitudinal = params.field_ratio - cos;
    (transverse * transverse + longitudinal * longitudinal).sqrt()
}

/// Shared integrand kernel: numerator / Lambda with the removable Lambda = 0
/// limit pinned to zero.
fn over_dispersion(params: &ModelParams, phi: f64, numerator: f64) -> f64 {
    let lambda = lambda_dispersion(params, phi);
    if lambda == 0.0 {
        0.0
    } else {
        numerator / lambda
    }
}

/// Nearest-neighbour correlation integral; `r = -1` gives C^xx, `r = +1` C^yy:
///
/// G(r) = (1/pi) Int_0^pi [gamma sin(r phi) sin phi - cos phi (cos phi - a)]
///        / Lambda(phi) dphi.
pub fn g_integral(r: i32, params: &ModelParams, cfg: &QuadratureConfig) -> Result<f64> {
    if r != -1 && r != 1 {
        return Err(Error::InvalidBranch { r });
    }
    let signed_gamma = r as f64 * params.gamma;
    let a = params.field_ratio;
    let value = integrate(
        |phi: f64| {
            let (sin, cos) = phi.sin_cos();
            over_dispersion(params, phi, signed_gamma * sin * sin - cos * (cos - a))
        },
        0.0,
        std::f64::consts::PI,
        cfg,
    )?;
    Ok(value / std::f64::consts::PI)
}

/// Infinite-chain transverse magnetization:
///
/// M^z = -(1/pi) Int_0^pi (cos phi - a) / Lambda(phi) dphi.
///
/// The sign convention sends M^z to +1 as the field grows large.
pub fn magnetization_inf(params: &ModelParams, cfg: &QuadratureConfig) -> Result<f64> {
    let a = params.field_ratio;
    let value = integrate(
        |phi: f64| over_dispersion(params, phi, phi.cos() - a),
        0.0,
        std::f64::consts::PI,
        cfg,
    )?;
    Ok(-value / std::f64::consts::PI)
}

/// The three nearest-neighbour correlators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlators {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
}

/// C^xx = G(-1), C^yy = G(+1), C^zz = (M^z)^2 - G(+1) G(-1).
pub fn correlators(params: &ModelParams, cfg: &QuadratureConfig) -> Result<Correlators> {
    let xx = g_integral(-1, params, cfg)?;
    let yy = g_integral(1, params, cfg)?;
    let mz = magnetization_inf(params, cfg)?;
    Ok(Correlators {
        xx,
        yy,
        zz: mz * mz - yy * xx,
    })
}

/// Finite-chain transverse magnetization: the momentum sum
///
/// M_n = -(1/n) Sum_p (cos phi_p - a) / Lambda(phi_p)
///
/// over the chain's momentum grid. Terms with Lambda(phi_p) = 0 contribute
/// zero. Converges to [`magnetization_inf`] as n grows.
pub fn magnetization_finite(spec: &FiniteChainSpec, params: &ModelParams) -> f64 {
    let a = params.field_ratio;
    let sum: f64 = spec
        .momenta()
        .map(|phi| over_dispersion(params, phi, phi.cos() - a))
        .sum();
    -sum / spec.n() as f64
}

/// Evaluates one observable at one model point.
pub fn evaluate(kind: ObservableKind, params: &ModelParams, cfg: &QuadratureConfig) -> Result<f64> {
    match kind {
        ObservableKind::Mz => magnetization_inf(params, cfg),
        ObservableKind::Cxx => g_integral(-1, params, cfg),
        ObservableKind::Cyy => g_integral(1, params, cfg),
        ObservableKind::Czz => correlators(params, cfg).map(|c| c.zz),
        ObservableKind::SingleSiteEntropy => single_site_entropy(magnetization_inf(params, cfg)?),
        ObservableKind::LogNegativity => {
            let c = correlators(params, cfg)?;
            let mz = magnetization_inf(params, cfg)?;
            Ok(TwoSiteState::reconstruct(mz, c.xx, c.yy, c.zz)?.log_negativity())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_2_PI, PI};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn ising(a: f64) -> ModelParams {
        ModelParams::new(1.0, a).unwrap()
    }

    #[test]
    fn dispersion_reference_points() {
        for phi in [0.1, 1.0, 2.5] {
            assert_abs_diff_eq!(lambda_dispersion(&ising(0.0), phi), 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(
                lambda_dispersion(&ising(1.0), phi),
                2.0 * (phi / 2.0).sin(),
                epsilon = 1e-14
            );
        }
        let params = ModelParams::new(0.3, 2.0).unwrap();
        assert_abs_diff_eq!(lambda_dispersion(&params, 0.0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn dispersion_is_nonnegative() {
        for gamma in [-1.0, 0.0, 0.5, 1.0] {
            for a in [0.0, 0.5, 1.0, 2.0] {
                let params = ModelParams::new(gamma, a).unwrap();
                for k in 0..=40 {
                    assert!(lambda_dispersion(&params, PI * k as f64 / 40.0) >= 0.0);
                }
            }
        }
    }

    #[test]
    fn g_integral_zero_field_values() {
        assert_abs_diff_eq!(
            g_integral(-1, &ising(0.0), &cfg()).unwrap(),
            -1.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            g_integral(1, &ising(0.0), &cfg()).unwrap(),
            0.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn g_integral_decays_at_large_field() {
        for r in [-1, 1] {
            let g = g_integral(r, &ising(100.0), &cfg()).unwrap();
            assert!(g.abs() < 0.01, "G({r}) at a=100 is {g}");
        }
    }

    #[test]
    fn g_integral_rejects_bad_branch() {
        assert!(matches!(
            g_integral(0, &ising(1.0), &cfg()),
            Err(Error::InvalidBranch { r: 0 })
        ));
        assert!(matches!(
            g_integral(2, &ising(1.0), &cfg()),
            Err(Error::InvalidBranch { r: 2 })
        ));
    }

    #[test]
    fn magnetization_reference_points() {
        assert_abs_diff_eq!(
            magnetization_inf(&ising(0.0), &cfg()).unwrap(),
            0.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            magnetization_inf(&ising(1.0), &cfg()).unwrap(),
            FRAC_2_PI,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            magnetization_inf(&ising(1e6), &cfg()).unwrap(),
            1.0,
            epsilon = 1e-6
        );
    }

    #[test]
    fn correlators_reference_points() {
        let c = correlators(&ising(0.0), &cfg()).unwrap();
        assert_abs_diff_eq!(c.xx, -1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(c.yy, 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(c.zz, 0.0, epsilon = 1e-8);

        let c = correlators(&ising(1e6), &cfg()).unwrap();
        assert_abs_diff_eq!(c.xx, 0.0, epsilon = 1e-5);
        assert_abs_diff_eq!(c.yy, 0.0, epsilon = 1e-5);
        assert_abs_diff_eq!(c.zz, 1.0, epsilon = 1e-5);
    }

    #[test]
    fn czz_is_consistent_with_its_parts() {
        for (gamma, a) in [(1.0, 0.5), (1.0, 1.3), (0.4, 0.9), (0.7, 1.0)] {
            let params = ModelParams::new(gamma, a).unwrap();
            let c = correlators(&params, &cfg()).unwrap();
            let mz = magnetization_inf(&params, &cfg()).unwrap();
            assert_abs_diff_eq!(c.zz, mz * mz - c.xx * c.yy, epsilon = 4e-10);
        }
    }

    #[test]
    fn xx_and_yy_swap_under_gamma_reflection() {
        for (gamma, a) in [(1.0, 0.5), (0.6, 1.2), (0.3, 0.9)] {
            let plus = ModelParams::new(gamma, a).unwrap();
            let minus = ModelParams::new(-gamma, a).unwrap();
            let cxx = g_integral(-1, &plus, &cfg()).unwrap();
            let cyy_reflected = g_integral(1, &minus, &cfg()).unwrap();
            assert_abs_diff_eq!(cxx, cyy_reflected, epsilon = 1e-12);
        }
    }

    #[test]
    fn magnetization_is_monotone_in_field_for_ising() {
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=20 {
            let a = k as f64 * 0.1;
            let mz = magnetization_inf(&ising(a), &cfg()).unwrap();
            assert!(mz > prev, "M^z not increasing at a = {a}");
            prev = mz;
        }
    }

    #[test]
    fn observables_stay_in_physical_ranges() {
        for gamma in [0.5, 1.0] {
            for a in [0.0, 0.5, 1.0, 1.5, 2.0] {
                let params = ModelParams::new(gamma, a).unwrap();
                for kind in [
                    ObservableKind::Mz,
                    ObservableKind::Cxx,
                    ObservableKind::Cyy,
                    ObservableKind::Czz,
                ] {
                    let v = evaluate(kind, &params, &cfg()).unwrap();
                    assert!(v.abs() <= 1.0 + 1e-9, "{kind} = {v} at ({gamma}, {a})");
                }
                let s = evaluate(ObservableKind::SingleSiteEntropy, &params, &cfg()).unwrap();
                assert!((0.0..=1.0 + 1e-12).contains(&s));
                let e = evaluate(ObservableKind::LogNegativity, &params, &cfg()).unwrap();
                assert!(e >= 0.0);
            }
        }
    }

    #[test]
    fn evaluate_reference_points() {
        assert_abs_diff_eq!(
            evaluate(ObservableKind::Mz, &ising(1.0), &cfg()).unwrap(),
            FRAC_2_PI,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            evaluate(ObservableKind::Cxx, &ising(0.0), &cfg()).unwrap(),
            -1.0,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            evaluate(ObservableKind::SingleSiteEntropy, &ising(0.0), &cfg()).unwrap(),
            1.0,
            epsilon = 1e-8
        );
        // At zero field the two-site state is an equal-weight x-basis mixture
        // with no entanglement; entanglement turns on inside the ordered phase.
        assert_abs_diff_eq!(
            evaluate(ObservableKind::LogNegativity, &ising(0.0), &cfg()).unwrap(),
            0.0,
            epsilon = 1e-8
        );
        let at_half = evaluate(ObservableKind::LogNegativity, &ising(0.5), &cfg()).unwrap();
        assert!((at_half - 0.0467).abs() < 5e-4, "got {at_half}");
    }

    #[test]
    fn finite_chain_reference_points() {
        let n10 = FiniteChainSpec::new(10).unwrap();
        assert!(magnetization_finite(&n10, &ising(0.0)).abs() < 1e-12);
        assert_abs_diff_eq!(magnetization_finite(&n10, &ising(1e6)), 1.0, epsilon = 1e-6);
        let n1000 = FiniteChainSpec::new(1000).unwrap();
        assert_abs_diff_eq!(
            magnetization_finite(&n1000, &ising(1.0)),
            FRAC_2_PI,
            epsilon = 1e-3
        );
    }

    #[test]
    fn finite_chain_error_shrinks_to_the_rounding_floor() {
        // Convergence in n is exponential away from the critical point, so by
        // n = 100 the finite sum is indistinguishable from the integral at f64
        // precision; past that point the "error" is rounding noise and cannot
        // be ordered.
        let exact = magnetization_inf(&ising(0.5), &cfg()).unwrap();
        let errors: Vec<f64> = [10usize, 100, 1000]
            .iter()
            .map(|&n| {
                let spec = FiniteChainSpec::new(n).unwrap();
                (magnetization_finite(&spec, &ising(0.5)) - exact).abs()
            })
            .collect();
        assert!(
            errors[0] > errors[1],
            "n=100 not closer than n=10: {errors:?}"
        );
        assert!(errors[1] < 1e-12, "n=100 not at the floor: {errors:?}");
        assert!(errors[2] < 1e-12, "n=1000 not at the floor: {errors:?}");
    }

    #[test]
    fn half_zone_grid_tends_to_half_the_infinite_value() {
        let spec = FiniteChainSpec::new(500)
            .unwrap()
            .with_grid(MomentumGrid::HalfZone)
            .unwrap();
        let m = magnetization_finite(&spec, &ising(1e6));
        assert_abs_diff_eq!(m, 0.5, epsilon = 1e-3);
    }

    #[test]
    fn chain_spec_validation() {
        assert!(matches!(
            FiniteChainSpec::new(3),
            Err(Error::InvalidChainLength { n: 3, .. })
        ));
        assert!(matches!(
            FiniteChainSpec::new(25),
            Err(Error::InvalidChainLength { n: 25, .. })
        ));
        let odd = FiniteChainSpec::with_odd_allowed(25).unwrap();
        assert_eq!(odd.n(), 25);
        assert!(odd.with_grid(MomentumGrid::HalfZone).is_err());
        assert!(FiniteChainSpec::new(10)
            .unwrap()
            .with_grid(MomentumGrid::Periodic)
            .is_ok());
    }

    #[test]
    fn params_reject_non_finite_values() {
        assert!(ModelParams::new(f64::NAN, 1.0).is_err());
        assert!(ModelParams::new(1.0, f64::INFINITY).is_err());
        assert!(ModelParams::new(1.0, -0.5).is_ok());
    }
}
