//! Gap probability E(s) via eigenvalues of the discretized sine-kernel
//! operator (the Prolate matrix), Richardson extrapolation in the matrix
//! size, and the commuting tridiagonal matrix that shares its
//! eigenvectors.

use crate::error::{Error, Result};
use crate::painleve5::{self, GaudinSolution};
use crate::tridiag::{dense_symmetric_eigenvalues, DenseSymmetric, TridiagonalSymmetric};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Eigensolve tolerance used by the gap-probability route; the products
/// prod(1 - lambda) inherit absolute errors of this order.
const EIG_TOL: f64 = 1e-13;

/// Gap probabilities per matrix size plus the extrapolated limit.
#[derive(Debug, Clone)]
pub struct ProlateResult {
    /// Spacing grid.
    pub s: Vec<f64>,
    /// Strictly doubling matrix sizes.
    pub sizes: Vec<usize>,
    /// One gap-probability column per size (column j matches sizes[j]).
    pub e_by_n: Vec<Vec<f64>>,
    /// Final Richardson-extrapolated column.
    pub e_extrapolated: Vec<f64>,
}

/// The n x n Prolate matrix: symmetric Toeplitz with first row
/// a_0 = 2w, a_k = sin(2 pi w k) / (pi k); 0 <= w < 1/2 (w = 0 gives the
/// zero matrix).
pub fn prolate_matrix(n: usize, w: f64) -> Result<DenseSymmetric> {
    if !(0.0..0.5).contains(&w) {
        return Err(Error::Domain(format!(
            "prolate_matrix: w = {w} outside [0, 1/2)"
        )));
    }
    if n == 0 {
        return Err(Error::Contract("prolate_matrix: n must be >= 1".into()));
    }
    let first_row: Vec<f64> = (0..n)
        .map(|k| {
            if k == 0 {
                2.0 * w
            } else {
                let kf = k as f64;
                (2.0 * PI * w * kf).sin() / (PI * kf)
            }
        })
        .collect();
    DenseSymmetric::from_fn(n, |i, j| first_row[i - j])
}

/// E(s) from the n x n discretization: w = s/(2n), E = prod_i (1 - lambda_i)
/// over the eigenvalues of the Prolate matrix. The product is accumulated
/// in log space while every factor stays positive (large s drives the
/// leading eigenvalues within underflow distance of 1).
pub fn gap_probability(s: f64, n: usize) -> Result<f64> {
    if s < 0.0 {
        return Err(Error::Domain(format!("gap_probability: s = {s} < 0")));
    }
    let w = s / (2.0 * n as f64);
    if w >= 0.5 {
        return Err(Error::Domain(format!(
            "gap_probability: s/(2n) = {w} >= 1/2 (n = {n} too small for s = {s})"
        )));
    }
    let eigs = dense_symmetric_eigenvalues(&prolate_matrix(n, w)?, EIG_TOL)?;
    let factors: Vec<f64> = eigs.iter().map(|l| 1.0 - l).collect();
    if factors.iter().all(|&f| f > 0.0) {
        Ok(factors.iter().map(|f| f.ln()).sum::<f64>().exp())
    } else {
        Ok(factors.iter().product())
    }
}

/// Richardson extrapolation over columns at doubling resolutions assuming
/// a 1/n^2 leading error: stage i replaces the columns by
/// next + diff / (2^(i+1) - 1). Returns the surviving column of each stage
/// (stage 0 = input's last column ... final single column) for error
/// reporting alongside the extrapolated values.
pub fn richardson_extrapolate(columns: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<Vec<f64>>>)> {
    if columns.len() < 2 {
        return Err(Error::Contract(
            "richardson_extrapolate: need at least 2 columns".into(),
        ));
    }
    let rows = columns[0].len();
    if columns.iter().any(|c| c.len() != rows) {
        return Err(Error::Contract(
            "richardson_extrapolate: ragged columns".into(),
        ));
    }
    let mut cur: Vec<Vec<f64>> = columns.to_vec();
    let mut stages: Vec<Vec<Vec<f64>>> = vec![cur.clone()];
    let mut stage = 1u32;
    while cur.len() > 1 {
        let divisor = (2f64).powi(stage as i32 + 1) - 1.0;
        let next: Vec<Vec<f64>> = (1..cur.len())
            .map(|j| {
                (0..rows)
                    .map(|i| cur[j][i] + (cur[j][i] - cur[j - 1][i]) / divisor)
                    .collect()
            })
            .collect();
        stages.push(next.clone());
        cur = next;
        stage += 1;
    }
    Ok((cur.pop().expect("single column"), stages))
}

/// The symmetric tridiagonal matrix commuting with the Prolate matrix:
/// diag alpha_k = ((n+1)/2 - k)^2 cos(2 pi w), offdiag beta_k = k(n-k)/2
/// (1-based k).
pub fn commuting_tridiagonal(n: usize, w: f64) -> Result<TridiagonalSymmetric> {
    if !(0.0..0.5).contains(&w) {
        return Err(Error::Domain(format!(
            "commuting_tridiagonal: w = {w} outside [0, 1/2)"
        )));
    }
    let c = (2.0 * PI * w).cos();
    let half = (n as f64 + 1.0) / 2.0;
    let diag: Vec<f64> = (1..=n).map(|k| (half - k as f64).powi(2) * c).collect();
    let offdiag: Vec<f64> = (1..n).map(|k| (k * (n - k)) as f64 / 2.0).collect();
    TridiagonalSymmetric::new(diag, offdiag)
}

/// The gap-probability table: E(s) over `s_grid` for each size in
/// `sizes`, the Richardson stages, and the extrapolated column. The
/// s-grid entries parallelize freely; results merge by index.
pub fn prolate_gap_table(s_grid: &[f64], sizes: &[usize]) -> Result<ProlateResult> {
    if sizes.len() < 2 {
        return Err(Error::Contract(
            "prolate_gap_table: need at least 2 sizes".into(),
        ));
    }
    for w in sizes.windows(2) {
        if w[1] != 2 * w[0] {
            return Err(Error::Contract(format!(
                "prolate_gap_table: sizes must double, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    let e_by_n: Vec<Vec<f64>> = sizes
        .iter()
        .map(|&n| {
            s_grid
                .par_iter()
                .map(|&s| gap_probability(s, n))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let (e_extrapolated, _stages) = richardson_extrapolate(&e_by_n)?;
    Ok(ProlateResult {
        s: s_grid.to_vec(),
        sizes: sizes.to_vec(),
        e_by_n,
        e_extrapolated,
    })
}

/// Painleve V gap probability evaluated at exactly the given s values
/// (the reference column the Prolate table is compared against).
pub fn painleve_gap_reference(s_grid: &[f64]) -> Result<GaudinSolution> {
    let t_grid: Vec<f64> = s_grid
        .iter()
        .map(|&s| (s * PI).max(painleve5::DEFAULT_T0))
        .collect();
    let tn = t_grid.last().copied().unwrap_or(1.0) + 1e-9;
    painleve5::solve_painleve5_on(
        painleve5::DEFAULT_T0,
        tn,
        &t_grid,
        painleve5::DEFAULT_RELTOL,
        painleve5::DEFAULT_ABSTOL,
    )
}

/// The default spacing grid 0, 0.01, ..., 5.
pub fn default_s_grid() -> Vec<f64> {
    (0..=500).map(|i| i as f64 * 0.01).collect()
}

/// The default doubling sizes 20, 40, 80, 160.
pub const DEFAULT_SIZES: [usize; 4] = [20, 40, 80, 160];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_entries() {
        let a = prolate_matrix(1, 0.25).unwrap();
        assert_eq!(a.get(0, 0), 0.5); // a_0 = 2w
        let a = prolate_matrix(3, 0.25).unwrap();
        // a_1 = sin(pi/2)/pi = 1/pi
        assert!((a.get(0, 1) - 1.0 / PI).abs() < 1e-15);
        assert_eq!(a.get(0, 1), a.get(1, 0));
        // trace = 2 w n
        for (n, w) in [(5usize, 0.1f64), (8, 0.3), (12, 0.05)] {
            let a = prolate_matrix(n, w).unwrap();
            assert!((a.trace() - 2.0 * w * n as f64).abs() < 1e-12);
        }
        assert!(prolate_matrix(4, 0.5).is_err());
        assert!(prolate_matrix(4, -0.1).is_err());
    }

    #[test]
    fn prolate_trace_identity_through_eigensolve() {
        let a = prolate_matrix(8, 0.1).unwrap();
        let eigs = dense_symmetric_eigenvalues(&a, 1e-14).unwrap();
        let sum: f64 = eigs.iter().sum();
        assert!((sum - 1.6).abs() < 1e-12, "trace via spectrum {sum}");
    }

    #[test]
    fn gap_probability_trivial_cases() {
        assert!((gap_probability(0.0, 10).unwrap() - 1.0).abs() < 1e-14);
        // n = 1: A = [s], E = 1 - s
        assert!((gap_probability(0.5, 1).unwrap() - 0.5).abs() < 1e-12);
        assert!(gap_probability(1.5, 1).is_err()); // w >= 1/2
        assert!(gap_probability(-1.0, 10).is_err());
    }

    #[test]
    fn eigenvalues_within_unit_interval() {
        for &(n, s) in &[(20usize, 1.0f64), (20, 5.0), (40, 3.0)] {
            let w = s / (2.0 * n as f64);
            let eigs =
                dense_symmetric_eigenvalues(&prolate_matrix(n, w).unwrap(), 1e-13).unwrap();
            for l in eigs {
                assert!(l > -1e-9 && l < 1.0 + 1e-9, "n={n} s={s}: lambda={l}");
            }
        }
    }

    #[test]
    fn gap_curve_nonincreasing_and_quartering() {
        let grid = default_s_grid();
        let table = prolate_gap_table(&grid, &[20, 40]).unwrap();
        for col in &table.e_by_n {
            for k in 1..col.len() {
                assert!(col[k] <= col[k - 1] + 1e-9);
            }
        }
    }

    #[test]
    fn richardson_trivial_cases() {
        // y_n = y + c/n^2 exactly: one stage recovers y to roundoff
        let y = 0.7;
        let c = 0.3;
        let col = |n: f64| vec![y + c / (n * n); 3];
        let (out, stages) = richardson_extrapolate(&[col(20.0), col(40.0)]).unwrap();
        for v in out {
            assert!((v - y).abs() < 1e-14);
        }
        assert_eq!(stages.len(), 2);
        // constant columns stay constant through every stage
        let (out, _) =
            richardson_extrapolate(&[vec![2.0; 4], vec![2.0; 4], vec![2.0; 4]]).unwrap();
        assert!(out.iter().all(|&v| (v - 2.0).abs() < 1e-15));
        assert!(richardson_extrapolate(&[vec![1.0]]).is_err());
    }

    #[test]
    fn commuting_matrix_entries() {
        let t = commuting_tridiagonal(1, 0.1).unwrap();
        assert_eq!(t.diag(), &[0.0]); // ((n+1)/2 - 1)^2 = 0 at n = 1
        assert!(t.offdiag().is_empty());
        let t = commuting_tridiagonal(5, 0.1).unwrap();
        assert_eq!(t.offdiag()[0], 2.0); // beta_1 = 1*(5-1)/2
        let c = (2.0 * PI * 0.1).cos();
        assert!((t.diag()[0] - 4.0 * c).abs() < 1e-15); // (3-1)^2 cos
    }

    #[test]
    fn commutation_identity() {
        // || A T - T A ||_F / (||A||_F ||T||_F) at machine-noise level
        let (n, w) = (50usize, 0.1f64);
        let a = prolate_matrix(n, w).unwrap();
        let t = commuting_tridiagonal(n, w).unwrap();
        let rel = commutator_norm(&a, &t);
        assert!(rel <= 1e-12, "relative commutator {rel:e}");
    }

    /// ||A T - T A||_F / (||A||_F ||T||_F) with T tridiagonal.
    pub(super) fn commutator_norm(a: &DenseSymmetric, t: &TridiagonalSymmetric) -> f64 {
        let n = a.dim();
        let t_at = |i: usize, j: usize| -> f64 {
            if i == j {
                t.diag()[i]
            } else if i + 1 == j {
                t.offdiag()[i]
            } else if j + 1 == i {
                t.offdiag()[j]
            } else {
                0.0
            }
        };
        let mut comm_sq = 0.0;
        let mut t_sq = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut at = 0.0;
                // T is tridiagonal: only k in {j-1, j, j+1} contribute
                for k in j.saturating_sub(1)..(j + 2).min(n) {
                    at += a.get(i, k) * t_at(k, j);
                }
                let mut ta = 0.0;
                for k in i.saturating_sub(1)..(i + 2).min(n) {
                    ta += t_at(i, k) * a.get(k, j);
                }
                comm_sq += (at - ta) * (at - ta);
                t_sq += t_at(i, j) * t_at(i, j);
            }
        }
        comm_sq.sqrt() / (a.frobenius_norm() * t_sq.sqrt())
    }
}
