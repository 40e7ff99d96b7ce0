//! First-significant-digit statistics.
//!
//! The logarithmic first-digit law predicts digit D with probability
//! log10(1 + 1/D). A raw series is first normalized to (0, 1) by shifting and
//! scaling with its own extrema (values landing exactly on 0 or 1 are
//! discarded as carrying no digit information), then each value contributes
//! its first nonzero decimal digit to a nine-bin histogram. The violation
//! parameter sums the relative deviations of the observed digit counts from
//! the law's expected counts: zero means exact conformity, and larger values
//! mean stronger violation.

use crate::error::{Error, Result};

/// Width of the guard band around digit boundaries inside which
/// [`first_significant_digit`] rederives the digit by repeated shifting.
const BOUNDARY_GUARD: f64 = 1e-12;

/// Probability of first digit `digit` under the logarithmic law.
pub fn benford_pmf(digit: u8) -> Result<f64> {
    if !(1..=9).contains(&digit) {
        return Err(Error::DigitOutOfRange { digit });
    }
    Ok((1.0 + 1.0 / digit as f64).log10())
}

/// A series normalized to the open interval (0, 1), ready for digit counting.
#[derive(Debug, Clone, PartialEq)]
pub struct BenfordSample {
    values: Vec<f64>,
}

impl BenfordSample {
    /// Wraps values that are already normalized; every value must lie strictly
    /// between 0 and 1. An empty sample is allowed.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        for (index, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteSample { index });
            }
            if v <= 0.0 || v >= 1.0 {
                return Err(Error::ValueOutOfDomain { value: v });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Normalizes a raw series to (0, 1) via q -> (q - min) / (max - min),
/// dropping every value that maps exactly to an endpoint (at least the two
/// extrema themselves).
///
/// Needs at least 3 values with max > min.
pub fn shift_scale(raw: &[f64]) -> Result<BenfordSample> {
    if raw.len() < 3 {
        return Err(Error::TooFewSamples {
            got: raw.len(),
            need: 3,
        });
    }
    for (index, &v) in raw.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { index });
        }
    }
    let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == min {
        return Err(Error::DegenerateSeries);
    }
    let span = max - min;
    // Floating-point subtraction and division are monotone, so the mapped
    // values stay inside [0, 1]; the filter leaves the open interval.
    let values: Vec<f64> = raw
        .iter()
        .map(|&q| (q - min) / span)
        .filter(|&u| u != 0.0 && u != 1.0)
        .collect();
    Ok(BenfordSample { values })
}

/// First nonzero decimal digit of `x`, which must lie strictly in (0, 1).
///
/// The fast path reads the digit from x * 10^(-floor(log10 x)). When that
/// scaled value leaves [1, 10) or lands within 1e-12 of an integer (where one
/// rounding error away from the intended digit), the digit is rederived by
/// multiplying by 10 until the value reaches [1, 10).
pub fn first_significant_digit(x: f64) -> Result<u8> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::ValueOutOfDomain { value: x });
    }
    let exponent = x.log10().floor();
    let scaled = x * 10f64.powi(-exponent as i32);
    let near_integer = (scaled - scaled.round()).abs() < BOUNDARY_GUARD;
    if (1.0..10.0).contains(&scaled) && !near_integer {
        return Ok(scaled as u8);
    }
    let mut y = x;
    while y < 1.0 {
        y *= 10.0;
    }
    while y >= 10.0 {
        y /= 10.0;
    }
    Ok(y as u8)
}

/// Counts of first significant digits 1..=9.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitHistogram {
    counts: [u64; 9],
}

impl DigitHistogram {
    /// Builds a histogram from explicit per-digit counts (index 0 is digit 1).
    pub fn from_counts(counts: [u64; 9]) -> Self {
        Self { counts }
    }

    /// Per-digit counts; index 0 is digit 1.
    pub fn counts(&self) -> [u64; 9] {
        self.counts
    }

    /// Count for one digit.
    pub fn count(&self, digit: u8) -> Result<u64> {
        if !(1..=9).contains(&digit) {
            return Err(Error::DigitOutOfRange { digit });
        }
        Ok(self.counts[digit as usize - 1])
    }

    /// Total number of counted values; the counts always partition it.
    pub fn sample_size(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Tallies the first significant digit of every sample value.
pub fn histogram(sample: &BenfordSample) -> DigitHistogram {
    let mut counts = [0u64; 9];
    for &v in sample.values() {
        let digit = first_significant_digit(v).expect("sample values lie in (0, 1)");
        counts[digit as usize - 1] += 1;
    }
    DigitHistogram { counts }
}

/// Violation parameter for real-valued digit counts:
///
/// delta = Sum_D |O_D - E_D| / E_D,  E_D = N log10(1 + 1/D),  N = Sum_D O_D.
///
/// The real-valued form exists so exact expected counts (which are not
/// integers) can be checked to give exactly zero.
pub fn violation_for_counts(counts: &[f64; 9]) -> Result<f64> {
    for &c in counts {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::InvalidCount { value: c });
        }
    }
    let n: f64 = counts.iter().sum();
    if n == 0.0 {
        return Err(Error::EmptyHistogram);
    }
    let mut delta = 0.0;
    for (i, &observed) in counts.iter().enumerate() {
        let expected = n * benford_pmf(i as u8 + 1)?;
        delta += (observed - expected).abs() / expected;
    }
    Ok(delta)
}

/// Violation parameter of a digit histogram; fails on an empty histogram.
pub fn violation_parameter(hist: &DigitHistogram) -> Result<f64> {
    let counts = hist.counts().map(|c| c as f64);
    violation_for_counts(&counts)
}

/// Full pipeline for a raw series: shift-scale, count digits, score.
pub fn analyze_series(raw: &[f64]) -> Result<(DigitHistogram, f64)> {
    let sample = shift_scale(raw)?;
    let hist = histogram(&sample);
    let delta = violation_parameter(&hist)?;
    Ok((hist, delta))
}
