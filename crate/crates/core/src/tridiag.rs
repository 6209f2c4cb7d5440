//! Symmetric tridiagonal and dense-symmetric eigenvalue computations:
//! Sturm-sequence counting, bisection for extreme and all eigenvalues,
//! Householder reduction of dense symmetric matrices.

use crate::error::{Error, Result};
use rayon::prelude::*;

/// A real symmetric tridiagonal matrix stored as its diagonal and the
/// (shared) sub/superdiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSymmetric {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalSymmetric {
    /// Build from a diagonal of length n >= 1 and an off-diagonal of
    /// length n - 1.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Contract(
                "TridiagonalSymmetric: diagonal must be nonempty".into(),
            ));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Contract(format!(
                "TridiagonalSymmetric: offdiag length {} != diag length {} - 1",
                offdiag.len(),
                diag.len()
            )));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Gershgorin enclosure [lo, hi] of the spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 }
                + if i < n - 1 { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Max-abs bound of the Gershgorin interval; the natural scale of the
    /// matrix (zero only for the zero matrix).
    pub fn spectral_scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin_bounds();
        lo.abs().max(hi.abs())
    }
}

/// Number of eigenvalues of `t` strictly less than `x`, by the shifted
/// LDL^T pivot recurrence (negative-pivot count, Sylvester inertia).
/// Pivots smaller in magnitude than `eps * scale` are replaced by
/// `-eps * scale` before their sign is taken, so the count stays defined
/// and monotone for every finite `x`; when `x` sits exactly on an
/// eigenvalue the tie resolves toward counting it.
pub fn sturm_count(t: &TridiagonalSymmetric, x: f64) -> usize {
    let scale = t.spectral_scale().max(f64::MIN_POSITIVE);
    let guard = f64::EPSILON * scale;
    let mut count = 0usize;
    let mut pivot = t.diag[0] - x;
    if pivot.abs() < guard {
        pivot = -guard;
    }
    if pivot < 0.0 {
        count += 1;
    }
    for i in 1..t.diag.len() {
        let e = t.offdiag[i - 1];
        pivot = (t.diag[i] - x) - e * e / pivot;
        if pivot.abs() < guard {
            pivot = -guard;
        }
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of `t` to within `tol * (Gershgorin radius)`.
pub fn max_eigenvalue(t: &TridiagonalSymmetric, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Contract(format!(
            "max_eigenvalue: tol = {tol} must be > 0"
        )));
    }
    let n = t.dim();
    if n == 1 {
        return Ok(t.diag[0]);
    }
    let (mut lo, mut hi) = t.gershgorin_bounds();
    let width_target = tol * t.spectral_scale().max(f64::MIN_POSITIVE);
    // Invariant: count(lo) <= n - 1 < n = count(hi + ...); the top
    // eigenvalue lies in (lo, hi].
    while hi - lo > width_target {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // f64 resolution reached
        }
        if sturm_count(t, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Shifts evaluated per matrix sweep. Interleaving this many independent
/// pivot recurrences hides the division latency that otherwise serializes
/// the sweep.
const STURM_LANES: usize = 8;

/// All eigenvalues of `t` in ascending order, each within
/// `tol * (Gershgorin radius)`. Bisection per index, batched in lanes of
/// [`STURM_LANES`] indices per matrix sweep and parallelized across
/// batches; each index takes exactly the decisions of a scalar bisection,
/// so the result is bit-identical regardless of lane width or worker
/// count.
pub fn all_eigenvalues(t: &TridiagonalSymmetric, tol: f64) -> Result<Vec<f64>> {
    if !(tol > 0.0) {
        return Err(Error::Contract(format!(
            "all_eigenvalues: tol = {tol} must be > 0"
        )));
    }
    let n = t.dim();
    if n == 1 {
        return Ok(vec![t.diag[0]]);
    }
    let (glo, ghi) = t.gershgorin_bounds();
    let width_target = tol * t.spectral_scale().max(f64::MIN_POSITIVE);
    // Precomputing e^2 keeps the inner recurrence at one division per row.
    let e2: Vec<f64> = t.offdiag.iter().map(|e| e * e).collect();
    let guard = f64::EPSILON * t.spectral_scale().max(f64::MIN_POSITIVE);

    let chunks: Vec<Vec<f64>> = (0..n)
        .collect::<Vec<usize>>()
        .par_chunks(STURM_LANES)
        .map(|idx| bisect_lanes(&t.diag, &e2, guard, idx, glo, ghi, width_target))
        .collect();
    Ok(chunks.concat())
}

/// Synchronous bisection for up to [`STURM_LANES`] eigenvalue indices:
/// one matrix sweep evaluates every active lane's midpoint count.
fn bisect_lanes(
    diag: &[f64],
    e2: &[f64],
    guard: f64,
    indices: &[usize],
    glo: f64,
    ghi: f64,
    width_target: f64,
) -> Vec<f64> {
    let lanes = indices.len();
    let mut lo = vec![glo; lanes];
    let mut hi = vec![ghi; lanes];
    let mut active = vec![true; lanes];
    let mut mids = vec![0.0f64; lanes];
    let mut counts = vec![0usize; lanes];

    loop {
        let mut any = false;
        for j in 0..lanes {
            if !active[j] {
                continue;
            }
            if hi[j] - lo[j] <= width_target {
                active[j] = false;
                continue;
            }
            let mid = 0.5 * (lo[j] + hi[j]);
            if mid <= lo[j] || mid >= hi[j] {
                active[j] = false; // f64 resolution reached
                continue;
            }
            mids[j] = mid;
            any = true;
        }
        if !any {
            break;
        }
        count_below_lanes(diag, e2, guard, &mids, &mut counts);
        for j in 0..lanes {
            if !active[j] {
                continue;
            }
            if counts[j] <= indices[j] {
                lo[j] = mids[j];
            } else {
                hi[j] = mids[j];
            }
        }
    }
    (0..lanes).map(|j| 0.5 * (lo[j] + hi[j])).collect()
}

/// Negative-pivot counts for several shifts in one sweep. The per-lane
/// recurrences are independent, so their division chains overlap.
fn count_below_lanes(diag: &[f64], e2: &[f64], guard: f64, xs: &[f64], counts: &mut [usize]) {
    let lanes = xs.len();
    debug_assert!(lanes <= STURM_LANES && counts.len() == lanes);
    let mut pivots = [0.0f64; STURM_LANES];
    for j in 0..lanes {
        let mut p = diag[0] - xs[j];
        if p.abs() < guard {
            p = -guard;
        }
        counts[j] = usize::from(p < 0.0);
        pivots[j] = p;
    }
    for i in 1..diag.len() {
        let d = diag[i];
        let e = e2[i - 1];
        for j in 0..lanes {
            let mut p = (d - xs[j]) - e / pivots[j];
            if p.abs() < guard {
                p = -guard;
            }
            counts[j] += usize::from(p < 0.0);
            pivots[j] = p;
        }
    }
}

/// A dense real symmetric matrix (row-major full storage).
#[derive(Debug, Clone)]
pub struct DenseSymmetric {
    n: usize,
    entries: Vec<f64>,
}

impl DenseSymmetric {
    /// Build from the full row-major entry slice; must be exactly
    /// symmetric.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Contract(format!(
                "DenseSymmetric: need n*n = {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::Contract(format!(
                        "DenseSymmetric: entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// Build from the lower triangle via a generator `f(i, j)` with
    /// `j <= i`; symmetry holds by construction.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Contract("DenseSymmetric: n must be >= 1".into()));
        }
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        Ok(Self { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Householder reduction to symmetric tridiagonal form (no eigenvector
    /// accumulation).
    pub fn householder_tridiagonalize(&self) -> TridiagonalSymmetric {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n.saturating_sub(1)];

        for k in 0..n.saturating_sub(2) {
            // Householder vector annihilating column k below row k+1.
            let mut sigma = 0.0;
            for i in k + 1..n {
                sigma += a[i * n + k] * a[i * n + k];
            }
            let alpha = a[(k + 1) * n + k];
            if sigma - alpha * alpha <= 0.0 {
                // Nothing below the subdiagonal; column is already in form.
                off[k] = alpha;
                continue;
            }
            let norm = sigma.sqrt();
            let beta = if alpha >= 0.0 { -norm } else { norm };
            // v = x - beta e1 (only rows k+1..n involved); v^T v =
            // 2(sigma - alpha beta) > 0 because beta opposes alpha's sign.
            let mut v = vec![0.0; n];
            for i in k + 1..n {
                v[i] = a[i * n + k];
            }
            v[k + 1] -= beta;
            let vtv: f64 = v[k + 1..].iter().map(|x| x * x).sum();
            let tau = 2.0 / vtv;

            // p = tau * A v; w = p - (tau/2 * p^T v) v; A <- A - v w^T - w v^T
            let mut p = vec![0.0; n];
            for i in k + 1..n {
                let mut s = 0.0;
                for j in k + 1..n {
                    s += a[i * n + j] * v[j];
                }
                p[i] = tau * s;
            }
            let ptv: f64 = p[k + 1..]
                .iter()
                .zip(&v[k + 1..])
                .map(|(x, y)| x * y)
                .sum();
            let half = 0.5 * tau * ptv;
            for i in k + 1..n {
                p[i] -= half * v[i];
            }
            for i in k + 1..n {
                for j in k + 1..=i {
                    let upd = a[i * n + j] - v[i] * p[j] - p[i] * v[j];
                    a[i * n + j] = upd;
                    a[j * n + i] = upd;
                }
            }
            a[(k + 1) * n + k] = beta;
            a[k * n + k + 1] = beta;
            off[k] = beta;
        }

        for i in 0..n {
            diag[i] = a[i * n + i];
        }
        if n >= 2 {
            off[n - 2] = a[(n - 1) * n + (n - 2)];
        }
        TridiagonalSymmetric { diag, offdiag: off }
    }
}

/// All eigenvalues of a dense symmetric matrix in ascending order:
/// Householder reduction followed by tridiagonal bisection.
pub fn dense_symmetric_eigenvalues(a: &DenseSymmetric, tol: f64) -> Result<Vec<f64>> {
    all_eigenvalues(&a.householder_tridiagonalize(), tol)
}
