//! Two-site reduced states of the chain and their entanglement measures.
//!
//! Translation invariance and the global phase-flip symmetry of the model force
//! the nearest-neighbour reduced density operator into X form: the only nonzero
//! matrix elements sit on the diagonal and the anti-diagonal, and they are
//! determined by the four real moments (mz, cxx, cyy, czz) through
//!
//! rho = 1/4 [ I(x)I + mz (sz(x)I + I(x)sz) + sum_a c_aa sa(x)sa ].
//!
//! For that form both the density operator and its partial transpose are
//! block-diagonal in 2x2 blocks, so every spectrum here is closed-form.

use crate::error::{Error, Result};

/// Construction-time slack on moment ranges and density eigenvalues. Moments
/// obtained by numerical integration carry errors of order the quadrature
/// tolerance; states within this distance of the physical set are accepted.
pub const PHYSICALITY_TOLERANCE: f64 = 1e-9;

/// A physical two-site reduced state, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSiteState {
    mz: f64,
    cxx: f64,
    cyy: f64,
    czz: f64,
}

/// The four eigenvalues of the partially transposed two-site operator, sorted
/// ascending. They sum to 1: partial transposition preserves the trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtSpectrum {
    eigenvalues: [f64; 4],
}

impl PtSpectrum {
    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        self.eigenvalues
    }

    /// The smallest eigenvalue; negative exactly when the state is entangled.
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }
}

fn check_moment(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value.abs() > 1.0 + PHYSICALITY_TOLERANCE {
        return Err(Error::MomentOutOfRange { name, value });
    }
    Ok(())
}

/// Sorts four eigenvalues ascending.
fn sorted4(mut v: [f64; 4]) -> [f64; 4] {
    v.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    v
}

impl TwoSiteState {
    /// Builds the state from its four moments, rejecting moments that do not
    /// describe a physical (positive semidefinite) operator.
    ///
    /// Each moment must lie in [-1, 1] and every eigenvalue of the
    /// reconstructed operator must be at least `-PHYSICALITY_TOLERANCE`.
    pub fn reconstruct(mz: f64, cxx: f64, cyy: f64, czz: f64) -> Result<Self> {
        check_moment("mz", mz)?;
        check_moment("cxx", cxx)?;
        check_moment("cyy", cyy)?;
        check_moment("czz", czz)?;
        let state = Self { mz, cxx, cyy, czz };
        let min_eigenvalue = state.density_spectrum()[0];
        if min_eigenvalue < -PHYSICALITY_TOLERANCE {
            return Err(Error::UnphysicalMoments { min_eigenvalue });
        }
        Ok(state)
    }

    pub fn mz(&self) -> f64 {
        self.mz
    }

    pub fn cxx(&self) -> f64 {
        self.cxx
    }

    pub fn cyy(&self) -> f64 {
        self.cyy
    }

    pub fn czz(&self) -> f64 {
        self.czz
    }

    /// Eigenvalues of the density operator itself, ascending.
    ///
    /// The X form splits into the span of |00>, |11> (diagonal entries
    /// (1 + czz)/4 +- mz/2-ish, off-diagonal (cxx - cyy)/4) and the span of
    /// |01>, |10> (diagonal (1 - czz)/4, off-diagonal (cxx + cyy)/4).
    pub fn density_spectrum(&self) -> [f64; 4] {
        let outer = 0.25 * (1.0 + self.czz);
        let outer_split = (0.25 * self.mz * self.mz + (self.cxx - self.cyy).powi(2) / 16.0).sqrt();
        let inner = 0.25 * (1.0 - self.czz);
        let inner_split = 0.25 * (self.cxx + self.cyy).abs();
        sorted4([
            outer - outer_split,
            outer + outer_split,
            inner - inner_split,
            inner + inner_split,
        ])
    }

    /// Spectrum of the partial transpose.
    ///
    /// Transposing one site swaps the two off-diagonal entries of the X form,
    /// so the blocks exchange their couplings: the |00>, |11> block now carries
    /// (cxx + cyy)/4 and the |01>, |10> block carries (cxx - cyy)/4.
    pub fn pt_spectrum(&self) -> PtSpectrum {
        let outer = 0.25 * (1.0 + self.czz);
        let outer_split = (0.25 * self.mz * self.mz + (self.cxx + self.cyy).powi(2) / 16.0).sqrt();
        let inner = 0.25 * (1.0 - self.czz);
        let inner_split = 0.25 * (self.cxx - self.cyy).abs();
        PtSpectrum {
            eigenvalues: sorted4([
                outer - outer_split,
                outer + outer_split,
                inner - inner_split,
                inner + inner_split,
            ]),
        }
    }

    /// Sum of the magnitudes of the negative partial-transpose eigenvalues.
    pub fn negativity(&self) -> f64 {
        self.pt_spectrum()
            .eigenvalues()
            .iter()
            .map(|&lambda| (-lambda).max(0.0))
            .sum()
    }

    /// log2(2 negativity + 1); zero exactly when the negativity is zero.
    pub fn log_negativity(&self) -> f64 {
        (2.0 * self.negativity() + 1.0).log2()
    }
}

/// Von Neumann entropy, in bits, of a single site with magnetization `mz`.
///
/// The single-site state is (I + mz sz)/2 with eigenvalues (1 +- mz)/2, so
/// this is the binary entropy of (1 + mz)/2: 1 at mz = 0, 0 at mz = +-1.
pub fn single_site_entropy(mz: f64) -> Result<f64> {
    check_moment("mz", mz)?;
    let term = |lambda: f64| {
        if lambda > 0.0 {
            -lambda * lambda.log2()
        } else {
            0.0
        }
    };
    Ok(term(0.5 * (1.0 + mz)) + term(0.5 * (1.0 - mz)))
}
