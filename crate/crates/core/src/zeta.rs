//! Ingestion of Riemann zeta zero tables and normalized zero spacings for
//! comparison with the Gaudin law.
//!
//! Input files carry one ordinate per line (the imaginary parts gamma_n of
//! critical-line zeros), ascending. Published tables sometimes store
//! ordinates reduced by a block offset; the offset is supplied by the
//! caller and applied only inside the density normalization.

use crate::error::{Error, Result};
use std::io::BufRead;
use std::path::Path;

/// An ascending table of zero ordinates plus the file's block offset.
#[derive(Debug, Clone)]
pub struct ZetaZeros {
    gammas: Vec<f64>,
    offset: f64,
}

impl ZetaZeros {
    /// Wrap a parsed table. The ordinates must be strictly ascending and
    /// sit above 2 pi after the offset is added (the local density
    /// involves log((gamma + offset) / 2 pi)).
    pub fn new(gammas: Vec<f64>, offset: f64) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::EmptyData("zeta zeros: no ordinates".into()));
        }
        for (i, w) in gammas.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::DataIntegrity(format!(
                    "zeta zeros: not strictly ascending at entry {}: {} then {}",
                    i + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        if gammas[0] + offset <= 2.0 * std::f64::consts::PI {
            return Err(Error::DataIntegrity(format!(
                "zeta zeros: first ordinate {} + offset {offset} not above 2 pi",
                gammas[0]
            )));
        }
        Ok(Self { gammas, offset })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Render back to the file format (one ordinate per line, 9 decimal
    /// places, matching the published tables' precision).
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(self.gammas.len() * 16);
        for g in &self.gammas {
            out.push_str(&format!("{g:.9}\n"));
        }
        out
    }
}

/// Parse a zero table from any reader: one decimal ordinate per line,
/// surrounding whitespace tolerated, blank lines skipped.
pub fn parse_zeros<R: BufRead>(reader: R, offset: f64) -> Result<ZetaZeros> {
    let mut gammas = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            msg: format!("read failure: {e}"),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let v: f64 = trimmed.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            msg: format!("not a decimal number: {trimmed:?}"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("non-finite ordinate {trimmed:?}"),
            });
        }
        gammas.push(v);
    }
    ZetaZeros::new(gammas, offset)
}

/// Load a zero table from a file path.
pub fn load_zeros<P: AsRef<Path>>(path: P, offset: f64) -> Result<ZetaZeros> {
    let file = std::fs::File::open(path.as_ref()).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot open {}: {e}", path.as_ref().display()),
    })?;
    parse_zeros(std::io::BufReader::new(file), offset)
}

/// Normalized consecutive spacings
///   delta_n = (gamma_{n+1} - gamma_n) / (2 pi) * log((gamma_n + offset) / (2 pi)),
/// the gap times the local mean density of zeros.
pub fn zeta_normalized_spacings(z: &ZetaZeros) -> Result<Vec<f64>> {
    if z.len() < 2 {
        return Err(Error::Contract(
            "zeta_normalized_spacings: need at least 2 zeros".into(),
        ));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out = Vec::with_capacity(z.len() - 1);
    for w in z.gammas.windows(2) {
        let shifted = w[0] + z.offset;
        if shifted <= two_pi {
            return Err(Error::Domain(format!(
                "zeta_normalized_spacings: ordinate {} + offset {} not above 2 pi",
                w[0], z.offset
            )));
        }
        out.push((w[1] - w[0]) / two_pi * (shifted / two_pi).ln());
    }
    Ok(out)
}
