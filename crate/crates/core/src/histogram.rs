//! Equidistant-bin density histograms normalized to unit mass over the
//! in-range samples.

use crate::error::{Error, Result};

/// A normalized density histogram on equidistant bins.
#[derive(Debug, Clone)]
pub struct Histogram {
    /// Ascending, equidistant bin edges (len = bins + 1).
    pub edges: Vec<f64>,
    /// Bin midpoints (len = bins).
    pub midpoints: Vec<f64>,
    /// Normalized density per bin: sum(density) * dx = 1.
    pub density: Vec<f64>,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }
}

/// Histogram `samples` on the given equidistant `edges` and normalize the
/// counts to a density. Bins are half-open `[e_i, e_{i+1})` except the last,
/// which also includes its right edge; samples outside the range are
/// dropped.
pub fn histogram_density(samples: &[f64], edges: &[f64]) -> Result<Histogram> {
    if edges.len() < 2 {
        return Err(Error::Contract(
            "histogram_density: need at least 2 edges".into(),
        ));
    }
    let dx = edges[1] - edges[0];
    if !(dx > 0.0) {
        return Err(Error::Contract(
            "histogram_density: edges must be strictly ascending".into(),
        ));
    }
    for (i, w) in edges.windows(2).enumerate() {
        let step = w[1] - w[0];
        if ((step - dx) / dx).abs() > 1e-9 {
            return Err(Error::Contract(format!(
                "histogram_density: edges not equidistant at index {i}: step {step} vs {dx}"
            )));
        }
    }
    let bins = edges.len() - 1;
    let lo = edges[0];
    let hi = edges[bins];
    let mut counts = vec![0u64; bins];
    let mut total = 0u64;
    for &x in samples {
        if !(x >= lo && x <= hi) {
            continue;
        }
        let mut idx = (((x - lo) / dx) as usize).min(bins - 1);
        // Equidistance holds to 1e-9, so at most one neighbor correction
        // is needed to honor the half-open convention exactly.
        if x < edges[idx] {
            idx -= 1;
        } else if idx + 1 < bins && x >= edges[idx + 1] {
            idx += 1;
        }
        counts[idx] += 1;
        total += 1;
    }
    if total == 0 {
        return Err(Error::EmptyData(
            "histogram_density: no samples fall inside the bin range".into(),
        ));
    }
    let norm = 1.0 / (total as f64 * dx);
    Ok(Histogram {
        edges: edges.to_vec(),
        midpoints: edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect(),
        density: counts.iter().map(|&c| c as f64 * norm).collect(),
    })
}

/// Equidistant edges `lo, lo + step, ..., hi` (matching colon-range
/// notation). The final edge lands on `hi` within rounding.
pub fn range_edges(lo: f64, step: f64, hi: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(hi > lo) {
        return Err(Error::Contract(format!(
            "range_edges: invalid range {lo}:{step}:{hi}"
        )));
    }
    let n = ((hi - lo) / step).round() as usize;
    if n < 1 || ((lo + n as f64 * step - hi) / step).abs() > 1e-6 {
        return Err(Error::Contract(format!(
            "range_edges: step {step} does not evenly divide [{lo}, {hi}]"
        )));
    }
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

/// Largest absolute difference between the histogram density and a curve
/// `(xs, ys)` linearly interpolated at the bin midpoints.
pub fn sup_norm_against_curve(hist: &Histogram, xs: &[f64], ys: &[f64]) -> f64 {
    hist.midpoints
        .iter()
        .zip(&hist.density)
        .map(|(&m, &d)| (d - crate::numerics::interp_linear(xs, ys, m)).abs())
        .fold(0.0, f64::max)
}
