//! Airy function of the first kind, Ai(x) and Ai'(x), on x >= -2.
//!
//! Two regimes: a Maclaurin series accumulated in double-double arithmetic
//! for x <= 8 (the series suffers catastrophic cancellation between its two
//! component sums for large positive x, which the extended precision
//! absorbs), and the exponentially-prefactored asymptotic expansion for
//! x > 8. At the switchover both regimes agree to ~1e-15 relative.

use crate::error::{Error, Result};

/// Largest argument handled by the Maclaurin series.
const SERIES_CUTOFF: f64 = 8.0;
/// Left edge of the supported domain. Only the right tail and moderate
/// arguments are needed; the oscillatory region is out of scope.
const DOMAIN_MIN: f64 = -2.0;

// Ai(0) = 3^(-2/3)/Gamma(2/3) and Ai'(0) = -3^(-1/3)/Gamma(1/3),
// stored as double-double (hi, lo) pairs.
const AI_ZERO: Dd = Dd {
    hi: 0.355_028_053_887_817_2,
    lo: 2.052_336_324_362_12e-17,
};
const AIP_ZERO: Dd = Dd {
    hi: -0.258_819_403_792_806_8,
    lo: 2.522_243_111_610_832e-17,
};

/// Ai(x) for x >= -2, accurate to better than 1e-13 relative on [0, 25].
pub fn airy_ai(x: f64) -> Result<f64> {
    check_domain(x)?;
    if x <= SERIES_CUTOFF {
        Ok(series(x).0)
    } else {
        Ok(asymptotic(x).0)
    }
}

/// Ai'(x) for x >= -2.
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    check_domain(x)?;
    if x <= SERIES_CUTOFF {
        Ok(series(x).1)
    } else {
        Ok(asymptotic(x).1)
    }
}

fn check_domain(x: f64) -> Result<()> {
    if !x.is_finite() || x < DOMAIN_MIN {
        return Err(Error::Domain(format!(
            "airy_ai: argument {x} outside supported range [{DOMAIN_MIN}, inf)"
        )));
    }
    Ok(())
}

/// Maclaurin series for (Ai, Ai'). DLMF 9.4: Ai = Ai(0) f + Ai'(0) g with
///   f  = sum 3^k (1/3)_k x^(3k)   / (3k)!
///   g  = sum 3^k (2/3)_k x^(3k+1) / (3k+1)!
/// and termwise-differentiated counterparts for Ai'. The term recurrences
/// reduce to division by products of consecutive small integers, which are
/// exact in double precision.
fn series(x: f64) -> (f64, f64) {
    let x3 = Dd::from_product(x, x).mul_f64(x);

    // f and g sums for Ai.
    let mut term_f = Dd::from(1.0);
    let mut term_g = Dd::from(x);
    let mut sum_f = term_f;
    let mut sum_g = term_g;
    // f' and g' sums for Ai'. The k=0 term of f' vanishes.
    let mut term_fp = Dd::from_product(x, x).mul_f64(0.5); // k = 1 term: x^2/2
    let mut term_gp = Dd::from(1.0);
    let mut sum_fp = term_fp;
    let mut sum_gp = term_gp;

    for k in 0..120 {
        let kf = k as f64;
        term_f = term_f.mul(x3).div_f64((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        term_g = term_g.mul(x3).div_f64((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        term_gp = term_gp.mul(x3).div_f64((3.0 * kf + 1.0) * (3.0 * kf + 3.0));
        sum_f = sum_f.add(term_f);
        sum_g = sum_g.add(term_g);
        sum_gp = sum_gp.add(term_gp);
        // term_fp recurrence starts from its k=1 term.
        let kp = kf + 1.0;
        term_fp = term_fp.mul(x3).div_f64(3.0 * kp * (3.0 * kp + 2.0));
        sum_fp = sum_fp.add(term_fp);

        if k >= 40
            && term_f.hi.abs() < 1e-40 * sum_f.hi.abs().max(1e-300)
            && term_g.hi.abs() < 1e-40 * sum_g.hi.abs().max(1e-300)
        {
            break;
        }
    }

    let ai = AI_ZERO.mul(sum_f).add(AIP_ZERO.mul(sum_g));
    let aip = AI_ZERO.mul(sum_fp).add(AIP_ZERO.mul(sum_gp));
    (ai.to_f64(), aip.to_f64())
}

/// Poincare asymptotic expansion for large positive x (DLMF 9.7):
///   Ai(x)  =  e^(-xi) / (2 sqrt(pi) x^(1/4)) * sum (-1)^k u_k xi^(-k)
///   Ai'(x) = -e^(-xi) x^(1/4) / (2 sqrt(pi)) * sum (-1)^k v_k xi^(-k)
/// with xi = (2/3) x^(3/2), u_0 = v_0 = 1,
/// u_(k+1) = u_k (6k+1)(6k+5) / (72(k+1)), v_k = u_k (6k+1)/(1-6k).
/// Terms are summed while they decrease; at x > 8 the smallest term is
/// below 1e-16 relative.
fn asymptotic(x: f64) -> (f64, f64) {
    let xi = 2.0 / 3.0 * x * x.sqrt();
    let mut u = 1.0f64;
    let mut sum_ai = 1.0;
    let mut sum_aip = 1.0;
    let mut sign = 1.0;
    let mut pow = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..40u32 {
        let kf = f64::from(k);
        u *= (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0));
        sign = -sign;
        pow /= xi;
        let term = u * pow;
        if term.abs() >= prev {
            break; // divergent tail reached
        }
        prev = term.abs();
        let kp = kf + 1.0;
        let v = u * (6.0 * kp + 1.0) / (1.0 - 6.0 * kp);
        sum_ai += sign * term;
        sum_aip += sign * v * pow;
        if term.abs() < 1e-18 * sum_ai.abs() {
            break;
        }
    }
    let quarter_root = x.sqrt().sqrt();
    let pref = (-xi).exp() / (2.0 * std::f64::consts::PI.sqrt());
    (pref / quarter_root * sum_ai, -pref * quarter_root * sum_aip)
}

/// Minimal double-double arithmetic: an unevaluated sum hi + lo with
/// |lo| <= ulp(hi)/2. Only the operations the Airy series needs.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact product of two doubles.
    fn from_product(a: f64, b: f64) -> Self {
        let hi = a * b;
        let lo = a.mul_add(b, -hi);
        Dd { hi, lo }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = Dd::from_product(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + self.hi * o.lo + self.lo * o.hi)
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = Dd::from_product(self.hi, b);
        quick_two_sum(p.hi, p.lo + self.lo * b)
    }

    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let p = Dd::from_product(q1, b);
        let r = (self.hi - p.hi) - p.lo + self.lo;
        quick_two_sum(q1, r / b)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}
