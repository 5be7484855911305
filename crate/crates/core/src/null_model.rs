//! Moments and exact distributions of D under random shuffling, where every one
//! of the `n!` linear arrangements is equally likely.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{degree_second_moment, sum_distances_unchecked, FreeTree};
use crate::error::{Error, Result};
use crate::exact::{int, to_f64};

/// Default upper bound on `n` for exhaustive enumeration (`9! = 362880`).
pub const DEFAULT_MAX_N: usize = 9;

/// Exact probability mass function over integer values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteDistribution {
    support: Vec<i64>,
    mass: Vec<BigRational>,
}

impl DiscreteDistribution {
    /// Validates that the support is strictly increasing, masses are positive and
    /// sum to exactly one.
    pub fn new(support: Vec<i64>, mass: Vec<BigRational>) -> Result<Self> {
        if support.is_empty() || support.len() != mass.len() {
            return Err(Error::domain(
                "support and mass must be non-empty and of equal length",
            ));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("support must be strictly increasing"));
        }
        if mass.iter().any(|m| !m.is_positive()) {
            return Err(Error::domain("every mass must be positive"));
        }
        let total: BigRational = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::domain(format!("masses sum to {total}, not 1")));
        }
        Ok(DiscreteDistribution { support, mass })
    }

    /// Builds a distribution from occurrence counts, dropping zero counts.
    pub fn from_counts(counts: &BTreeMap<i64, u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::domain("no observations"));
        }
        let total = BigInt::from(total);
        let (support, mass) = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&v, &c)| (v, BigRational::new(BigInt::from(c), total.clone())))
            .unzip();
        DiscreteDistribution::new(support, mass)
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn mass(&self) -> &[BigRational] {
        &self.mass
    }

    pub fn probability(&self, value: i64) -> BigRational {
        self.support
            .binary_search(&value)
            .map(|i| self.mass[i].clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn mean(&self) -> BigRational {
        self.support
            .iter()
            .zip(&self.mass)
            .map(|(&v, m)| int(v) * m)
            .sum()
    }

    pub fn variance(&self) -> BigRational {
        let mean = self.mean();
        let second: BigRational = self
            .support
            .iter()
            .zip(&self.mass)
            .map(|(&v, m)| int(v * v) * m)
            .sum();
        second - &mean * &mean
    }

    /// Writes `value,probability,decimal` rows, the probability as an exact fraction.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["value", "probability", "decimal"])?;
        for (v, m) in self.support.iter().zip(&self.mass) {
            w.write_record([
                v.to_string(),
                format!("{}/{}", m.numer(), m.denom()),
                to_f64(m).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `D_r = (n^2 - 1) / 3`.
pub fn expected_d(n: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::domain(format!("expected D needs n >= 2, got {n}")));
    }
    let n = n as i64;
    Ok(BigRational::new(BigInt::from(n * n - 1), BigInt::from(3)))
}

/// `V(D) = ((n+1)/45) [ (n-1)^2 + (n/4 - 1) n <k^2> ]` for an arbitrary tree.
pub fn variance_d(tree: &FreeTree) -> Result<BigRational> {
    let n = tree.n() as i64;
    if n < 2 {
        return Err(Error::domain(format!(
            "variance of D needs n >= 2, got {n}"
        )));
    }
    let k2 = degree_second_moment(tree);
    let n_r = int(n);
    let quarter_minus_one = BigRational::new(BigInt::from(n - 4), BigInt::from(4));
    let bracket = int((n - 1) * (n - 1)) + quarter_minus_one * n_r * k2;
    Ok(BigRational::new(BigInt::from(n + 1), BigInt::from(45)) * bracket)
}

/// Star-tree specialization `(n-2)(n-1)(n+1)(n+2) / 180`.
pub fn variance_d_star(n: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::domain(format!(
            "variance of D needs n >= 2, got {n}"
        )));
    }
    let n = n as i64;
    Ok(BigRational::new(
        BigInt::from((n - 2) * (n - 1) * (n + 1) * (n + 2)),
        BigInt::from(180),
    ))
}

/// Standard deviation of the average of `f` independent values of D.
pub fn sigma_mean_d(tree: &FreeTree, f: f64) -> Result<f64> {
    let variance = variance_d(tree)?;
    sigma_from_variance(&variance, f)
}

pub(crate) fn sigma_from_variance(variance: &BigRational, f: f64) -> Result<f64> {
    if !(f > 0.0 && f.is_finite()) {
        return Err(Error::domain(format!(
            "total frequency must be positive, got {f}"
        )));
    }
    Ok((to_f64(variance) / f).sqrt())
}

/// Mean, variance and (optionally) the standard deviation of the average.
#[derive(Debug, Clone, PartialEq)]
pub struct NullMoments {
    pub mean: BigRational,
    pub variance: BigRational,
    pub sigma_mean_d: Option<f64>,
}

pub fn null_moments(tree: &FreeTree, f: Option<f64>) -> Result<NullMoments> {
    let variance = variance_d(tree)?;
    let sigma_mean_d = f.map(|f| sigma_from_variance(&variance, f)).transpose()?;
    Ok(NullMoments {
        mean: expected_d(tree.n() as u64)?,
        variance,
        sigma_mean_d,
    })
}

/// Exact distribution of D over all `n!` arrangements, refusing `n > DEFAULT_MAX_N`.
pub fn enumerate_d_distribution(tree: &FreeTree) -> Result<DiscreteDistribution> {
    enumerate_d_distribution_with_cap(tree, DEFAULT_MAX_N)
}

pub fn enumerate_d_distribution_with_cap(
    tree: &FreeTree,
    max_n: usize,
) -> Result<DiscreteDistribution> {
    if tree.n() > max_n {
        return Err(Error::Resource {
            what: "exhaustive enumeration of arrangements",
            cap: max_n,
            n: tree.n(),
        });
    }
    let counts = enumerate_d_counts(tree);
    let map: BTreeMap<i64, u64> = counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(d, c)| (d as i64, c))
        .collect();
    DiscreteDistribution::from_counts(&map)
}

/// Histogram of D over all arrangements: entry `d` counts arrangements with `D = d`.
/// Runs on the rayon pool when the `parallel` feature is enabled.
pub fn enumerate_d_counts(tree: &FreeTree) -> Vec<u64> {
    #[cfg(feature = "parallel")]
    {
        enumerate_d_counts_parallel(tree)
    }
    #[cfg(not(feature = "parallel"))]
    {
        enumerate_d_counts_sequential(tree)
    }
}

fn histogram_len(n: usize) -> usize {
    // every edge spans at most n - 1
    (n - 1) * n.saturating_sub(1) + 1
}

pub fn enumerate_d_counts_sequential(tree: &FreeTree) -> Vec<u64> {
    let mut counts = vec![0; histogram_len(tree.n())];
    count_with_prefix(tree, &[], &mut counts);
    counts
}

#[cfg(feature = "parallel")]
pub fn enumerate_d_counts_parallel(tree: &FreeTree) -> Vec<u64> {
    use rayon::prelude::*;

    let n = tree.n();
    let len = histogram_len(n);
    // fix the positions of the first two vertices; each prefix is one task
    let prefixes: Vec<Vec<usize>> = if n < 3 {
        vec![vec![]]
    } else {
        (1..=n)
            .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| vec![a, b]))
            .collect()
    };
    prefixes
        .par_iter()
        .fold(
            || vec![0u64; len],
            |mut acc, prefix| {
                count_with_prefix(tree, prefix, &mut acc);
                acc
            },
        )
        .reduce(
            || vec![0u64; len],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Visits every arrangement whose first vertices sit at `prefix`, the rest in
/// lexicographic order of the remaining positions.
fn count_with_prefix(tree: &FreeTree, prefix: &[usize], counts: &mut [u64]) {
    let n = tree.n();
    let mut positions: Vec<usize> = prefix.to_vec();
    positions.extend((1..=n).filter(|p| !prefix.contains(p)));
    let k = prefix.len();
    loop {
        counts[sum_distances_unchecked(tree.edges(), &positions) as usize] += 1;
        if !next_permutation(&mut positions[k..]) {
            break;
        }
    }
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Weak unimodality: masses over the sorted support rise (weakly) to a peak and
/// then fall (weakly).
pub fn is_unimodal(dist: &DiscreteDistribution) -> bool {
    let mut falling = false;
    for w in dist.mass().windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            return false;
        }
    }
    true
}

/// Preconditions of the Vysochanskij-Petunin bound behind the 3-sigma rule.
#[derive(Debug, Clone, PartialEq)]
pub struct VpDiagnostic {
    pub variance: BigRational,
    pub finite_variance: bool,
    pub unimodal: bool,
}

impl VpDiagnostic {
    pub fn holds(&self) -> bool {
        self.finite_variance && self.unimodal
    }
}

/// Finite support always has finite variance; unimodality is checked directly.
pub fn vp_diagnostic(dist: &DiscreteDistribution) -> VpDiagnostic {
    VpDiagnostic {
        variance: dist.variance(),
        finite_variance: true,
        unimodal: is_unimodal(dist),
    }
}
