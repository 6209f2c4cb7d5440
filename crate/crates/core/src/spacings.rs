//! Normalized consecutive-spacing extraction from simulated spectra.
//!
//! Bulk statistics only: the semicircle density is nearly flat in the
//! middle of the spectrum, so a quarter of the eigenvalues is discarded at
//! each end and every retained gap is rescaled by the local mean density.

use crate::ensembles::{sample_h_beta, EnsembleSpec, RngStream};
use crate::error::{Error, Result};
use crate::tridiag::all_eigenvalues;
use rayon::prelude::*;

/// Normalized spacings pooled over a batch of simulated spectra.
#[derive(Debug, Clone)]
pub struct SpacingBatch {
    /// All normalized spacings, concatenated in trial order.
    pub values: Vec<f64>,
    pub n: u64,
    pub beta: u32,
    pub trials: u64,
}

/// Normalized consecutive spacings of one sorted spectrum:
///   delta_k = (l_{k+1} - l_k) / (pi beta) * sqrt(2 beta n - l_k^2),
/// taken over the middle-half gap window k in [ceil(n/4), floor(3n/4) - 2]
/// (0-based; both the gap's eigenvalues lie in the central half). For n
/// divisible by 4 this yields exactly n/2 - 1 spacings.
pub fn normalized_spacings(eigs: &[f64], n: u64, beta: u32) -> Result<Vec<f64>> {
    if eigs.len() as u64 != n {
        return Err(Error::Contract(format!(
            "normalized_spacings: got {} eigenvalues for n = {n}",
            eigs.len()
        )));
    }
    let b = f64::from(beta);
    let two_beta_n = 2.0 * b * n as f64;
    let lo = (n as usize).div_ceil(4);
    let hi = (3 * n as usize) / 4 - 1; // exclusive end of the gap window
    let mut out = Vec::with_capacity(hi.saturating_sub(lo));
    for k in lo..hi {
        let lam = eigs[k];
        let disc = two_beta_n - lam * lam;
        if disc <= 0.0 {
            return Err(Error::Domain(format!(
                "normalized_spacings: eigenvalue {lam} at index {k} lies outside the \
                 semicircle bulk (2 beta n = {two_beta_n})"
            )));
        }
        out.push((eigs[k + 1] - lam) / (std::f64::consts::PI * b) * disc.sqrt());
    }
    Ok(out)
}

/// Simulate `trials` spectra of the n x n tridiagonal ensemble and pool
/// their normalized bulk spacings. Trial i draws on stream (seed, i); the
/// concatenation order is fixed by trial index, so results are identical
/// for any worker count.
pub fn simulate_spacing_batch(
    n: u64,
    trials: u64,
    beta: u32,
    seed: u64,
) -> Result<SpacingBatch> {
    if n < 8 || n % 2 != 0 {
        return Err(Error::Contract(format!(
            "simulate_spacing_batch: n must be even and >= 8, got {n}"
        )));
    }
    let beta_enum = crate::ensembles::Beta::from_int(beta)?;
    let spec = EnsembleSpec::exact(n, beta_enum)?;
    let per_trial: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let t = sample_h_beta(&spec, RngStream::new(seed, trial))?;
            let eigs = all_eigenvalues(&t, 1e-11)?;
            normalized_spacings(&eigs, n, beta)
        })
        .collect::<Result<_>>()?;
    Ok(SpacingBatch {
        values: per_trial.concat(),
        n,
        beta,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_at_center() {
        // lambda_k = 0, gap g: delta = g sqrt(2 beta n) / (pi beta)
        let n = 8u64;
        let eigs = [-4.0, -3.0, -0.5, 0.0, 0.5, 1.0, 3.0, 4.0];
        let d = normalized_spacings(&eigs, n, 2).unwrap();
        // window: k = 2..=4 -> three gaps
        assert_eq!(d.len(), 3);
        let g = 0.5;
        let want = g * (2.0 * 2.0 * n as f64 - 0.0f64).sqrt() / (std::f64::consts::PI * 2.0);
        assert!((d[1] - want).abs() < 1e-14); // gap (0.0, 0.5) uses lambda_k = 0
    }

    #[test]
    fn four_eigenvalues_single_middle_gap() {
        let eigs = [-2.0, -1.0, 1.0, 2.0];
        let d = normalized_spacings(&eigs, 4, 2).unwrap();
        assert_eq!(d.len(), 1);
        let want = 15.0f64.sqrt() / std::f64::consts::PI; // 2/(2 pi) sqrt(16 - 1)
        assert!((d[0] - want).abs() < 1e-14, "got {} want {want}", d[0]);
    }

    #[test]
    fn window_count_n_1000() {
        let batch = simulate_spacing_batch(1000, 10, 2, 99).unwrap();
        assert_eq!(batch.values.len(), 10 * 499); // gaps k = 250..=748
        assert!(batch.values.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn deterministic_across_runs() {
        let a = simulate_spacing_batch(64, 4, 2, 5).unwrap();
        let b = simulate_spacing_batch(64, 4, 2, 5).unwrap();
        assert_eq!(a.values, b.values);
        let c = simulate_spacing_batch(64, 4, 2, 6).unwrap();
        assert_ne!(a.values, c.values);
    }

    #[test]
    fn unit_mean_and_level_repulsion() {
        let batch = simulate_spacing_batch(1000, 60, 2, 31).unwrap();
        let mean = batch.values.iter().sum::<f64>() / batch.values.len() as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean spacing {mean}");
        // level repulsion: essentially no mass below s = 0.1
        let tiny = batch.values.iter().filter(|&&v| v < 0.1).count() as f64
            / batch.values.len() as f64;
        assert!(tiny / 0.1 < 0.05, "density near zero {}", tiny / 0.1);
    }

    #[test]
    fn out_of_bulk_eigenvalue_is_domain_error() {
        // an eigenvalue beyond sqrt(2 beta n) inside the window
        let eigs = [-9.0, -8.0, 0.0, 8.0];
        assert!(normalized_spacings(&eigs, 4, 2).is_err());
    }

    #[test]
    fn rejects_bad_n() {
        assert!(simulate_spacing_batch(7, 1, 2, 0).is_err());
        assert!(simulate_spacing_batch(6, 1, 2, 0).is_err());
        assert!(simulate_spacing_batch(100, 1, 3, 0).is_err());
    }
}
