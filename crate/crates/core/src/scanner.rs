//! Shifting-window scans of the violation parameter and transition detection.
//!
//! A window of width epsilon centred on a field value supplies the raw series
//! for one first-digit analysis: the observable is evaluated on a deterministic
//! grid strictly inside the window, normalized, digit-counted, and scored. The
//! window centre then steps along the field axis, producing a violation-
//! parameter curve. The critical point announces itself as a sharp excursion of
//! that curve between two plateaus of different heights; detection picks the
//! centre with the largest-magnitude derivative and checks the plateaus.
//!
//! Scans are deterministic: window evaluations run in parallel but are merged
//! in ascending centre order, and the optional randomized window sampling is
//! seeded per centre.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::benford::{analyze_series, histogram, shift_scale, DigitHistogram};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::xy_model::{
    evaluate, magnetization_finite, FiniteChainSpec, ModelParams, ObservableKind,
};

/// Default distance (in field units) a point must keep from the detection
/// candidate to count toward a plateau mean.
pub const DEFAULT_EDGE_EXCLUSION: f64 = 0.3;

/// How the raw field values inside one window are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowSampling {
    /// Uniform grid strictly inside the window (default; deterministic).
    #[default]
    UniformGrid,
    /// Independent uniform draws, seeded per window centre so scans stay
    /// reproducible.
    Random { seed: u64 },
}

/// Geometry of one scan: window width, raw points per window, and centre step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowSpec {
    width: f64,
    sample_count: usize,
    shift: f64,
    sampling: WindowSampling,
}

impl WindowSpec {
    pub fn new(width: f64, sample_count: usize, shift: f64) -> Result<Self> {
        if !width.is_finite() || width <= 0.0 {
            return Err(Error::InvalidWindowSpec {
                reason: "width must be finite and positive",
            });
        }
        if !shift.is_finite() || shift <= 0.0 {
            return Err(Error::InvalidWindowSpec {
                reason: "shift must be finite and positive",
            });
        }
        if sample_count < 3 {
            return Err(Error::InvalidWindowSpec {
                reason: "sample_count must be at least 3",
            });
        }
        Ok(Self {
            width,
            sample_count,
            shift,
            sampling: WindowSampling::default(),
        })
    }

    pub fn with_sampling(self, sampling: WindowSampling) -> Self {
        Self { sampling, ..self }
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn sampling(&self) -> WindowSampling {
        self.sampling
    }
}

impl Default for WindowSpec {
    /// The canonical scan geometry: width 0.2, 1998 raw points, step 0.05.
    fn default() -> Self {
        Self {
            width: 0.2,
            sample_count: 1998,
            shift: 0.05,
            sampling: WindowSampling::default(),
        }
    }
}

/// One successfully scored window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub center: f64,
    pub delta: f64,
}

/// A window centre that failed to score, with the failure rendered as text.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGap {
    pub center: f64,
    pub reason: String,
}

/// A violation-parameter curve: scored points in ascending centre order, plus
/// any skipped centres.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub quantity: ObservableKind,
    pub gamma: f64,
    pub points: Vec<ScanPoint>,
    pub gaps: Vec<ScanGap>,
}

/// Threshold separating "distinct" plateau heights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlateauMargin {
    /// Fraction of the larger plateau magnitude (default 0.1).
    FractionOfLarger(f64),
    /// Fixed threshold in violation-parameter units.
    Absolute(f64),
}

impl Default for PlateauMargin {
    fn default() -> Self {
        Self::FractionOfLarger(0.1)
    }
}

impl PlateauMargin {
    fn validate(&self) -> Result<()> {
        let value = match self {
            Self::FractionOfLarger(v) | Self::Absolute(v) => *v,
        };
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidMargin {
                reason: "margin must be finite and nonnegative",
            });
        }
        Ok(())
    }

    fn threshold(&self, plateau_before: f64, plateau_after: f64) -> f64 {
        match self {
            Self::FractionOfLarger(fraction) => {
                fraction * plateau_before.abs().max(plateau_after.abs())
            }
            Self::Absolute(margin) => *margin,
        }
    }
}

/// Outcome of transition detection on one scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionReport {
    /// Centre with the largest-magnitude derivative of the curve.
    pub candidate: f64,
    /// That derivative value (signed).
    pub derivative_extremum: f64,
    /// Mean delta over points left of the candidate, beyond the exclusion
    /// distance; NaN when no such points exist.
    pub plateau_before: f64,
    /// Mean delta over points right of the candidate, beyond the exclusion
    /// distance; NaN when no such points exist.
    pub plateau_after: f64,
    /// Whether the plateau heights differ by more than the margin.
    pub plateau_distinct: bool,
}

/// Field values for one window: `sample_count` points strictly inside
/// (center - width/2, center + width/2), strictly increasing.
pub fn sample_window(center: f64, spec: &WindowSpec) -> Result<Vec<f64>> {
    if !center.is_finite() {
        return Err(Error::NonFiniteParameter {
            name: "center",
            value: center,
        });
    }
    let lo = center - spec.width / 2.0;
    let hi = center + spec.width / 2.0;
    if lo < 0.0 {
        return Err(Error::WindowOutOfRange { center, lo, hi });
    }
    let n = spec.sample_count;
    match spec.sampling {
        WindowSampling::UniformGrid => {
            let span = hi - lo;
            Ok((1..=n)
                .map(|i| lo + i as f64 * span / (n + 1) as f64)
                .collect())
        }
        WindowSampling::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ center.to_bits());
            let mut values = Vec::with_capacity(n);
            while values.len() < n {
                let x = rng.gen_range(lo..hi);
                if x > lo {
                    values.push(x);
                }
                if values.len() == n {
                    values.sort_by(|a: &f64, b: &f64| a.partial_cmp(b).unwrap());
                    values.dedup();
                }
            }
            Ok(values)
        }
    }
}

/// Evaluates `observe` on the window grid and scores the series.
fn window_delta_with<F>(observe: F, center: f64, spec: &WindowSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let fields = sample_window(center, spec)?;
    let values: Vec<f64> = fields
        .into_iter()
        .map(observe)
        .collect::<Result<Vec<f64>>>()?;
    let (_, delta) = analyze_series(&values)?;
    Ok(delta)
}

/// Violation parameter of one observable over one window.
pub fn window_delta(
    kind: ObservableKind,
    gamma: f64,
    center: f64,
    spec: &WindowSpec,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    window_delta_with(
        |x| evaluate(kind, &ModelParams::new(gamma, x)?, cfg),
        center,
        spec,
    )
}

/// Shared scan loop: windows evaluated independently (in parallel), merged in
/// ascending centre order; failed windows become gaps.
fn scan_with<F>(
    quantity: ObservableKind,
    gamma: f64,
    range: (f64, f64),
    spec: &WindowSpec,
    observe: F,
) -> Result<ScanResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let (lo, hi) = range;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInterval { lo, hi });
    }
    if !gamma.is_finite() {
        return Err(Error::NonFiniteParameter {
            name: "gamma",
            value: gamma,
        });
    }

    // The epsilon absorbs representation error in (hi - lo) / shift so the
    // last centre is never dropped (1.8 / 0.05 evaluates below 36).
    let steps = ((hi - lo) / spec.shift + 1e-9).floor();
    let centers: Vec<f64> = if steps < 0.0 {
        Vec::new()
    } else {
        (0..=steps as i64)
            .map(|k| lo + k as f64 * spec.shift)
            .collect()
    };

    let outcomes: Vec<(f64, Result<f64>)> = centers
        .par_iter()
        .map(|&center| (center, window_delta_with(&observe, center, spec)))
        .collect();

    let mut points = Vec::with_capacity(outcomes.len());
    let mut gaps = Vec::new();
    for (center, outcome) in outcomes {
        match outcome {
            Ok(delta) => points.push(ScanPoint { center, delta }),
            Err(err) => gaps.push(ScanGap {
                center,
                reason: err.to_string(),
            }),
        }
    }
    Ok(ScanResult {
        quantity,
        gamma,
        points,
        gaps,
    })
}

/// Violation-parameter curve of an infinite-chain observable over a field
/// range. Centres step from `range.0` by `spec.shift()` up to `range.1`.
pub fn scan(
    kind: ObservableKind,
    gamma: f64,
    range: (f64, f64),
    spec: &WindowSpec,
    cfg: &QuadratureConfig,
) -> Result<ScanResult> {
    scan_with(kind, gamma, range, spec, |x| {
        evaluate(kind, &ModelParams::new(gamma, x)?, cfg)
    })
}

/// Same curve with the finite-chain magnetization in place of the
/// infinite-chain observable.
pub fn scan_finite(
    chain: &FiniteChainSpec,
    gamma: f64,
    range: (f64, f64),
    spec: &WindowSpec,
) -> Result<ScanResult> {
    scan_with(ObservableKind::Mz, gamma, range, spec, |x| {
        Ok(magnetization_finite(chain, &ModelParams::new(gamma, x)?))
    })
}

/// Digit histogram of one observable over one explicit field interval,
/// sampled on the same interior grid rule the windows use.
pub fn window_histogram(
    kind: ObservableKind,
    gamma: f64,
    interval: (f64, f64),
    sample_count: usize,
    cfg: &QuadratureConfig,
) -> Result<DigitHistogram> {
    let (lo, hi) = interval;
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || lo >= hi {
        return Err(Error::InvalidInterval { lo, hi });
    }
    if sample_count < 3 {
        return Err(Error::TooFewSamples {
            got: sample_count,
            need: 3,
        });
    }
    let span = hi - lo;
    let values: Vec<f64> = (1..=sample_count)
        .map(|i| {
            let x = lo + i as f64 * span / (sample_count + 1) as f64;
            evaluate(kind, &ModelParams::new(gamma, x)?, cfg)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(histogram(&shift_scale(&values)?))
}

/// Locates the transition candidate on a scanned curve.
///
/// The derivative is the centred finite difference over neighbouring centres;
/// the candidate is the centre where its magnitude peaks (first one on ties).
/// Plateau means are taken over points farther than `edge_exclusion` from the
/// candidate on each side, and `plateau_distinct` records whether they differ
/// by more than the margin. A flat curve yields `plateau_distinct = false`
/// rather than an error.
pub fn detect_transition(
    result: &ScanResult,
    margin: PlateauMargin,
    edge_exclusion: f64,
) -> Result<TransitionReport> {
    margin.validate()?;
    if !edge_exclusion.is_finite() || edge_exclusion < 0.0 {
        return Err(Error::InvalidMargin {
            reason: "edge_exclusion must be finite and nonnegative",
        });
    }
    let points = &result.points;
    if points.len() < 5 {
        return Err(Error::TooFewScanPoints {
            got: points.len(),
            need: 5,
        });
    }

    let mut best_index = 1;
    let mut best_derivative = f64::NEG_INFINITY;
    let mut extremum = 0.0;
    for i in 1..points.len() - 1 {
        let derivative = (points[i + 1].delta - points[i - 1].delta)
            / (points[i + 1].center - points[i - 1].center);
        if derivative.abs() > best_derivative {
            best_derivative = derivative.abs();
            best_index = i;
            extremum = derivative;
        }
    }
    let candidate = points[best_index].center;

    let side_mean = |side: &dyn Fn(f64) -> bool| -> f64 {
        let deltas: Vec<f64> = points
            .iter()
            .filter(|p| side(p.center))
            .map(|p| p.delta)
            .collect();
        if deltas.is_empty() {
            f64::NAN
        } else {
            deltas.iter().sum::<f64>() / deltas.len() as f64
        }
    };
    let plateau_before = side_mean(&|c| c < candidate - edge_exclusion);
    let plateau_after = side_mean(&|c| c > candidate + edge_exclusion);

    let plateau_distinct = plateau_before.is_finite()
        && plateau_after.is_finite()
        && (plateau_before - plateau_after).abs() > margin.threshold(plateau_before, plateau_after);

    Ok(TransitionReport {
        candidate,
        derivative_extremum: extremum,
        plateau_before,
        plateau_after,
        plateau_distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn small_spec(count: usize) -> WindowSpec {
        WindowSpec::new(0.2, count, 0.05).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn window_spec_validation() {
        assert!(WindowSpec::new(0.0, 100, 0.05).is_err());
        assert!(WindowSpec::new(f64::NAN, 100, 0.05).is_err());
        assert!(WindowSpec::new(0.2, 2, 0.05).is_err());
        assert!(WindowSpec::new(0.2, 100, 0.0).is_err());
        assert!(WindowSpec::new(0.2, 3, 0.01).is_ok());
    }

    #[test]
    fn uniform_window_grid_reference_case() {
        let xs = sample_window(1.0, &small_spec(3)).unwrap();
        assert_eq!(xs.len(), 3);
        assert_abs_diff_eq!(xs[0], 0.95, epsilon = 1e-12);
        assert_abs_diff_eq!(xs[1], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(xs[2], 1.05, epsilon = 1e-12);
    }

    #[test]
    fn window_grid_is_interior_and_increasing() {
        let xs = sample_window(1.0, &small_spec(200)).unwrap();
        assert_eq!(xs.len(), 200);
        assert!(xs[0] > 0.9);
        assert!(*xs.last().unwrap() < 1.1);
        for w in xs.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn window_below_zero_is_rejected() {
        assert!(matches!(
            sample_window(0.05, &small_spec(10)),
            Err(Error::WindowOutOfRange { .. })
        ));
        assert!(sample_window(0.1, &small_spec(10)).is_ok());
    }

    #[test]
    fn random_sampling_is_seeded_per_center() {
        let spec = small_spec(50).with_sampling(WindowSampling::Random { seed: 42 });
        let a = sample_window(1.0, &spec).unwrap();
        let b = sample_window(1.0, &spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|&x| x > 0.9 && x < 1.1));
        for w in a.windows(2) {
            assert!(w[1] > w[0]);
        }
        let elsewhere = sample_window(1.05, &spec).unwrap();
        assert_ne!(a, elsewhere);
        let reseeded = sample_window(
            1.0,
            &small_spec(50).with_sampling(WindowSampling::Random { seed: 43 }),
        )
        .unwrap();
        assert_ne!(a, reseeded);
    }

    #[test]
    fn window_delta_is_order_independent() {
        let spec = small_spec(98);
        let delta = window_delta(ObservableKind::Mz, 1.0, 0.5, &spec, &cfg()).unwrap();
        let mut values: Vec<f64> = sample_window(0.5, &spec)
            .unwrap()
            .into_iter()
            .map(|x| {
                evaluate(
                    ObservableKind::Mz,
                    &ModelParams::new(1.0, x).unwrap(),
                    &cfg(),
                )
                .unwrap()
            })
            .collect();
        values.reverse();
        let (_, reversed) = analyze_series(&values).unwrap();
        assert_eq!(delta.to_bits(), reversed.to_bits());
    }

    #[test]
    fn paramagnetic_window_violates_more() {
        let spec = small_spec(1498);
        let ordered = window_delta(ObservableKind::Mz, 1.0, 0.5, &spec, &cfg()).unwrap();
        let para = window_delta(ObservableKind::Mz, 1.0, 1.6, &spec, &cfg()).unwrap();
        assert!(para > ordered, "expected para {para} > ordered {ordered}");
    }

    #[test]
    fn window_delta_converges_in_sample_count() {
        let at =
            |count| window_delta(ObservableKind::Mz, 1.0, 0.5, &small_spec(count), &cfg()).unwrap();
        let coarse = at(1500);
        let fine = at(2000);
        assert!((coarse - fine).abs() / fine.abs() < 0.1);
    }

    #[test]
    fn scan_produces_the_full_center_grid() {
        let result = scan(
            ObservableKind::Mz,
            1.0,
            (0.2, 2.0),
            &small_spec(198),
            &cfg(),
        )
        .unwrap();
        assert_eq!(result.points.len(), 37);
        assert!(result.gaps.is_empty());
        for (k, p) in result.points.iter().enumerate() {
            assert_abs_diff_eq!(p.center, 0.2 + 0.05 * k as f64, epsilon = 1e-12);
        }
        for w in result.points.windows(2) {
            assert!(w[1].center > w[0].center);
        }
    }

    #[test]
    fn scan_records_gaps_for_unreachable_windows() {
        let result = scan(
            ObservableKind::Mz,
            1.0,
            (0.05, 0.3),
            &small_spec(50),
            &cfg(),
        )
        .unwrap();
        assert_eq!(result.gaps.len(), 1);
        assert_abs_diff_eq!(result.gaps[0].center, 0.05, epsilon = 1e-12);
        assert_eq!(result.points.len(), 5);
    }

    #[test]
    fn scan_with_reversed_range_is_empty() {
        let result = scan(ObservableKind::Mz, 1.0, (2.0, 0.2), &small_spec(50), &cfg()).unwrap();
        assert!(result.points.is_empty());
        assert!(result.gaps.is_empty());
    }

    #[test]
    fn scans_are_deterministic() {
        let run = || {
            scan(
                ObservableKind::Czz,
                1.0,
                (0.4, 1.6),
                &small_spec(98),
                &cfg(),
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.points.len(), b.points.len());
        for (p, q) in a.points.iter().zip(&b.points) {
            assert_eq!(p.center.to_bits(), q.center.to_bits());
            assert_eq!(p.delta.to_bits(), q.delta.to_bits());
        }
    }

    #[test]
    fn finite_scan_uses_the_chain() {
        let chain = FiniteChainSpec::new(10).unwrap();
        let result = scan_finite(&chain, 1.0, (0.4, 1.6), &small_spec(98)).unwrap();
        assert_eq!(result.quantity, ObservableKind::Mz);
        assert_eq!(result.points.len(), 25);
        assert!(result.gaps.is_empty());
    }

    #[test]
    fn window_histogram_counts_interior_points() {
        let hist = window_histogram(ObservableKind::Mz, 1.0, (0.82, 0.9), 200, &cfg()).unwrap();
        // Shift-scale drops the two extreme points of a monotone series.
        assert_eq!(hist.sample_size(), 198);
    }

    #[test]
    fn window_histogram_rejects_bad_intervals() {
        for interval in [(0.9, 0.82), (0.9, 0.9), (-0.1, 0.5), (f64::NAN, 1.0)] {
            assert!(matches!(
                window_histogram(ObservableKind::Mz, 1.0, interval, 200, &cfg()),
                Err(Error::InvalidInterval { .. })
            ));
        }
    }

    fn synthetic(curve: &[(f64, f64)]) -> ScanResult {
        ScanResult {
            quantity: ObservableKind::Mz,
            gamma: 1.0,
            points: curve
                .iter()
                .map(|&(center, delta)| ScanPoint { center, delta })
                .collect(),
            gaps: Vec::new(),
        }
    }

    fn step_curve(step_at: f64, low: f64, high: f64) -> ScanResult {
        let curve: Vec<(f64, f64)> = (0..=40)
            .map(|k| {
                let c = k as f64 * 0.05;
                (c, if c < step_at { low } else { high })
            })
            .collect();
        synthetic(&curve)
    }

    #[test]
    fn detects_a_synthetic_step() {
        let report = detect_transition(
            &step_curve(1.0, 1.0, 2.0),
            PlateauMargin::default(),
            DEFAULT_EDGE_EXCLUSION,
        )
        .unwrap();
        assert!((report.candidate - 1.0).abs() <= 0.05);
        assert!(report.derivative_extremum > 0.0);
        assert_abs_diff_eq!(report.plateau_before, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.plateau_after, 2.0, epsilon = 1e-12);
        assert!(report.plateau_distinct);
    }

    #[test]
    fn flat_curve_yields_no_detection() {
        let report = detect_transition(
            &step_curve(9.9, 1.5, 1.5),
            PlateauMargin::default(),
            DEFAULT_EDGE_EXCLUSION,
        )
        .unwrap();
        assert!(!report.plateau_distinct);
    }

    #[test]
    fn margin_modes_gate_distinctness() {
        let curve = step_curve(1.0, 1.0, 1.05);
        let absolute = detect_transition(&curve, PlateauMargin::Absolute(0.2), 0.3).unwrap();
        assert!(!absolute.plateau_distinct);
        let relative =
            detect_transition(&curve, PlateauMargin::FractionOfLarger(0.01), 0.3).unwrap();
        assert!(relative.plateau_distinct);
    }

    #[test]
    fn ties_resolve_to_the_first_extremum() {
        // Two identical steps on an exactly representable grid (multiples of
        // 1/16), so their centred derivatives tie bit-for-bit and the earlier
        // one must win.
        let curve: Vec<(f64, f64)> = (0..=40)
            .map(|k| {
                let c = k as f64 * 0.0625;
                let d = if c < 0.5 {
                    1.0
                } else if c < 1.5 {
                    2.0
                } else {
                    3.0
                };
                (c, d)
            })
            .collect();
        let report = detect_transition(
            &synthetic(&curve),
            PlateauMargin::default(),
            DEFAULT_EDGE_EXCLUSION,
        )
        .unwrap();
        assert_eq!(report.candidate, 0.4375);
    }

    #[test]
    fn detection_input_validation() {
        let tiny = synthetic(&[(0.0, 1.0), (0.1, 1.0), (0.2, 1.0), (0.3, 1.0)]);
        assert!(matches!(
            detect_transition(&tiny, PlateauMargin::default(), 0.3),
            Err(Error::TooFewScanPoints { got: 4, need: 5 })
        ));
        let curve = step_curve(1.0, 1.0, 2.0);
        assert!(detect_transition(&curve, PlateauMargin::Absolute(f64::NAN), 0.3).is_err());
        assert!(detect_transition(&curve, PlateauMargin::FractionOfLarger(-0.1), 0.3).is_err());
        assert!(detect_transition(&curve, PlateauMargin::default(), -1.0).is_err());
    }
}
