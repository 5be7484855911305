//! Binomial probabilities in log space.
//!
//! The mass function uses Loader's saddle-point expansion (deviance `bd0` plus
//! Stirling remainders), which keeps relative error near machine precision for
//! any number of trials. Tails are accumulated with log-sum-exp so p-values far
//! below `f64::MIN_POSITIVE` are still available through [`ln_right_tail`].

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln(n!) - ln(sqrt(2 pi n) (n/e)^n)` for integer `n`.
fn stirlerr(n: u64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n == 0 {
        return 0.0;
    }
    if n <= 15 {
        let nf = n as f64;
        let ln_fact: f64 = (2..=n).map(|i| (i as f64).ln()).sum();
        return ln_fact - (0.5 * (2.0 * PI * nf).ln() + nf * nf.ln() - nf);
    }
    let nf = n as f64;
    let nn = nf * nf;
    (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / nf
}

/// Deviance term `x ln(x / np) + np - x`, evaluated stably when `x` is near `np`.
fn bd0(x: f64, np: f64) -> f64 {
    if (x - np).abs() < 0.1 * (x + np) {
        let v = (x - np) / (x + np);
        let v2 = v * v;
        let mut s = (x - np) * v;
        let mut ej = 2.0 * x * v;
        for j in 1..1000 {
            ej *= v2;
            let s1 = s + ej / (2 * j + 1) as f64;
            if s1 == s {
                return s1;
            }
            s = s1;
        }
        s
    } else {
        x * (x / np).ln() + np - x
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!(
            "success probability must lie in (0, 1), got {p}"
        )));
    }
    Ok(())
}

fn check_counts(k: u64, trials: u64) -> Result<()> {
    if k > trials {
        return Err(Error::domain(format!(
            "{k} successes exceed {trials} trials"
        )));
    }
    Ok(())
}

/// `ln P(X = k)` for `X ~ Binomial(trials, p)`, `0 < p < 1`.
pub(crate) fn ln_pmf_unchecked(k: u64, trials: u64, p: f64) -> f64 {
    let q = 1.0 - p;
    let n = trials as f64;
    if k == 0 {
        return if p < 0.1 {
            -bd0(n, n * q) - n * p
        } else {
            n * q.ln()
        };
    }
    if k == trials {
        return if q < 0.1 {
            -bd0(n, n * p) - n * q
        } else {
            n * p.ln()
        };
    }
    let x = k as f64;
    let lc =
        stirlerr(trials) - stirlerr(k) - stirlerr(trials - k) - bd0(x, n * p) - bd0(n - x, n * q);
    // 0.5 * ln(2 pi x (n - x) / n)
    let lf = LN_SQRT_2PI + 0.5 * (x.ln() + (-x / n).ln_1p());
    lc - lf
}

pub fn ln_pmf(k: u64, trials: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    check_counts(k, trials)?;
    Ok(ln_pmf_unchecked(k, trials, p))
}

pub fn pmf(k: u64, trials: u64, p: f64) -> Result<f64> {
    ln_pmf(k, trials, p).map(f64::exp)
}

#[inline]
fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln P(X >= successes)`.
///
/// Terms are accumulated from `trials` downwards, so the result is
/// non-increasing in `successes` even under rounding.
pub fn ln_right_tail(successes: u64, trials: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    check_counts(successes, trials)?;
    if successes == 0 {
        return Ok(0.0);
    }
    let mut acc = f64::NEG_INFINITY;
    for k in (successes..=trials).rev() {
        acc = log_add_exp(acc, ln_pmf_unchecked(k, trials, p));
    }
    Ok(acc.min(0.0))
}

/// Right-sided exact binomial test: `P(X >= successes)` under `Binomial(trials, p0)`.
pub fn right_binomial_test(successes: u64, trials: u64, p0: f64) -> Result<f64> {
    ln_right_tail(successes, trials, p0).map(f64::exp)
}

/// Cumulative distribution `P(X <= x)` for every `x` in `0..=trials`.
pub fn cdf_table(trials: u64, p: f64) -> Result<Vec<f64>> {
    check_p(p)?;
    let mut acc = 0.0;
    Ok((0..=trials)
        .map(|k| {
            acc += ln_pmf_unchecked(k, trials, p).exp();
            acc.min(1.0)
        })
        .collect())
}

/// Smallest `x` with `P(X <= x) >= q`.
///
/// `q` is nudged down by a few ulps so that a probability which should equal a
/// CDF step exactly is not pushed past it by rounding. `p` may be 0 or 1, in
/// which case the distribution is a point mass.
pub fn quantile(q: f64, trials: u64, p: f64) -> Result<u64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!(
            "quantile level must lie in [0, 1], got {q}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!(
            "success probability must lie in [0, 1], got {p}"
        )));
    }
    if p == 0.0 {
        return Ok(0);
    }
    if p == 1.0 {
        return Ok(trials);
    }
    if q == 0.0 {
        return Ok(0);
    }
    let target = q * (1.0 - 64.0 * f64::EPSILON);
    let table = cdf_table(trials, p)?;
    Ok(table
        .iter()
        .position(|&c| c >= target)
        .map_or(trials, |i| i as u64))
}
