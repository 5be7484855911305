//! Head-placement statistics over an order frequency table.
//!
//! Under random shuffling the head lands at one of the two ends with probability
//! `2/n`, so the head-end frequency `g` of a unit with total `F` is
//! `Binomial(F, 2/n)`. For the star trees with `n` in {3, 4}, D takes only two
//! values, which ties the average D to `g/F` linearly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arrangement::{
    d_max_single_head, d_min_single_head, sum_dependency_distances, FreeTree, LinearArrangement,
};
use crate::binomial;
use crate::error::{Error, Result};
use crate::exact::{ceil, floor, int, round_half_away, to_f64, to_u64};
use crate::null_model::{expected_d, sigma_from_variance, variance_d_star};
use crate::table::OrderFrequencyTable;

/// Significance level used when none is given.
pub const DEFAULT_ALPHA: f64 = 0.05;

/// `p_{1,n} = 2 (n-1)! / n! = 2/n`.
pub fn p_head_at_ends(n: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::domain(format!("need n >= 2, got {n}")));
    }
    Ok(BigRational::new(BigInt::from(2), BigInt::from(n)))
}

/// `g_{1,n}`: total frequency of orders with the head first or last.
pub fn head_end_frequency(table: &OrderFrequencyTable, unit: &str) -> Result<BigRational> {
    let n = table.n();
    Ok(table
        .column(unit)?
        .filter(|(order, _)| {
            let p = table.head_position(order);
            p == 1 || p == n
        })
        .map(|(_, f)| f.clone())
        .sum())
}

/// Star-tree arrangement encoded by an order string: the head is the hub
/// (vertex 1) and the other symbols are leaves `2..=n` in alphabet order.
pub fn order_arrangement(table: &OrderFrequencyTable, order: &str) -> Result<LinearArrangement> {
    table.check_order(order)?;
    let mut positions = vec![0; table.n()];
    for (i, c) in order.chars().enumerate() {
        let vertex = if c == table.head() {
            1
        } else {
            table
                .alphabet()
                .iter()
                .filter(|&&a| a != table.head())
                .position(|&a| a == c)
                .expect("validated symbol")
                + 2
        };
        positions[vertex - 1] = i + 1;
    }
    LinearArrangement::from_positions(positions)
}

/// D of the single-head structure linearized as `order`.
pub fn order_dependency_sum(table: &OrderFrequencyTable, order: &str) -> Result<u64> {
    let star = FreeTree::star(table.n());
    sum_dependency_distances(&star, &order_arrangement(table, order)?)
}

/// Frequency-weighted counts of instances with D above (`f_plus`) and below
/// (`f_minus`) the random baseline `D_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiLocalityCounts {
    pub f_plus: BigRational,
    pub f_minus: BigRational,
}

pub fn anti_locality_counts(table: &OrderFrequencyTable, unit: &str) -> Result<AntiLocalityCounts> {
    let d_r = expected_d(table.n() as u64)?;
    let mut f_plus = BigRational::zero();
    let mut f_minus = BigRational::zero();
    for (order, f) in table.column(unit)? {
        let d = int(order_dependency_sum(table, order)? as i64);
        if d > d_r {
            f_plus += f;
        } else if d < d_r {
            f_minus += f;
        }
    }
    Ok(AntiLocalityCounts { f_plus, f_minus })
}

/// Average D from the head-end frequency: `2 + g/F` for `n = 3` and
/// `4 + 2g/F` for `n = 4`.
pub fn mean_d_from_g(n: u64, g: f64, f: f64) -> Result<f64> {
    if !f.is_finite() || f <= 0.0 {
        return Err(Error::domain(format!(
            "total frequency must be positive, got {f}"
        )));
    }
    if !(0.0..=f).contains(&g) {
        return Err(Error::domain(format!("g = {g} must lie in [0, F = {f}]")));
    }
    // (1/F) [ D_min (F - g) + D_max g ]
    match n {
        3 => Ok(2.0 + g / f),
        4 => Ok(4.0 + 2.0 * g / f),
        _ => Err(Error::Unsupported(format!(
            "the two-valued relation between g and <D> holds for n in {{3, 4}}, got n = {n}"
        ))),
    }
}

/// Average D computed row by row, valid for any `n`.
pub fn mean_d_from_rows(table: &OrderFrequencyTable, unit: &str) -> Result<f64> {
    let total = nonzero_total(table, unit)?;
    let mut weighted = BigRational::zero();
    for (order, f) in table.column(unit)? {
        weighted += int(order_dependency_sum(table, order)? as i64) * f;
    }
    Ok(to_f64(&(weighted / total)))
}

/// One exact binomial test on integer counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialTest {
    pub trials: u64,
    pub successes: u64,
    pub p_value: f64,
}

/// Exact right-sided binomial test with a rational null probability.
pub fn right_binomial_test(successes: u64, trials: u64, p0: &BigRational) -> Result<BinomialTest> {
    let p_value = binomial::right_binomial_test(successes, trials, to_f64(p0))?;
    Ok(BinomialTest {
        trials,
        successes,
        p_value,
    })
}

/// Runs the right-sided test on every floor/ceiling rounding of `(F, g)`, in the
/// order `(⌊F⌋,⌊g⌋), (⌈F⌉,⌊g⌋), (⌊F⌋,⌈g⌉), (⌈F⌉,⌈g⌉)`. Integer inputs give four
/// identical results.
pub fn quad_binomial_test(
    g: &BigRational,
    f: &BigRational,
    p0: &BigRational,
) -> Result<[BinomialTest; 4]> {
    if g.is_negative() || g > f {
        return Err(Error::domain(format!("g = {g} must lie in [0, F = {f}]")));
    }
    let (fl_f, ce_f) = (to_u64(&floor(f))?, to_u64(&ceil(f))?);
    let (fl_g, ce_g) = (to_u64(&floor(g))?, to_u64(&ceil(g))?);
    Ok([
        right_binomial_test(fl_g, fl_f, p0)?,
        right_binomial_test(fl_g, ce_f, p0)?,
        right_binomial_test(ce_g, fl_f, p0)?,
        right_binomial_test(ce_g, ce_f, p0)?,
    ])
}

/// Quantile interval `[Q(alpha/2), Q(1 - alpha/2)] / F` of `Binomial(F, proportion)`.
pub fn binomial_proportion_ci(proportion: f64, trials: u64, alpha: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&proportion) {
        return Err(Error::domain(format!(
            "proportion {proportion} outside [0, 1]"
        )));
    }
    check_alpha(alpha)?;
    if trials == 0 {
        return Err(Error::domain(
            "confidence interval needs a positive total frequency",
        ));
    }
    let lo = binomial::quantile(alpha / 2.0, trials, proportion)?;
    let hi = binomial::quantile(1.0 - alpha / 2.0, trials, proportion)?;
    let f = trials as f64;
    Ok((lo as f64 / f, hi as f64 / f))
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// `k = |<D> - D_r| / sigma(<D>)` for the star tree on `n` vertices.
///
/// Uses `sqrt(F) |<D> - 5|` for `n = 4` and `3 sqrt(F / 2) |<D> - 8/3|` for `n = 3`;
/// other sizes go through the general moments.
pub fn sigma_separation_k(mean_d: f64, f: f64, n: u64) -> Result<f64> {
    if !f.is_finite() || f <= 0.0 {
        return Err(Error::domain(format!(
            "total frequency must be positive, got {f}"
        )));
    }
    match n {
        4 => Ok(f.sqrt() * (mean_d - 5.0).abs()),
        3 => Ok(3.0 * (f / 2.0).sqrt() * (mean_d - 8.0 / 3.0).abs()),
        _ if n >= 3 => {
            let sigma = sigma_from_variance(&variance_d_star(n)?, f)?;
            Ok((mean_d - to_f64(&expected_d(n)?)).abs() / sigma)
        }
        _ => Err(Error::domain(format!(
            "D is constant for n = {n}; the separation is undefined"
        ))),
    }
}

/// The 3-sigma rule: significant iff `k >= 3`.
pub fn three_sigma_verdict(k: f64) -> bool {
    k >= 3.0
}

/// One integer transformation of a unit, with everything Tables 2 and 3 list.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerVariant {
    pub test: BinomialTest,
    pub proportion: f64,
    pub mean_d: f64,
    pub sigma_mean_d: f64,
    pub k: f64,
}

/// Full analysis of one unit of measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadPlacementReport {
    pub unit: String,
    pub n: u64,
    pub f: BigRational,
    pub g: BigRational,
    pub p0: BigRational,
    pub proportion: f64,
    /// Distinct integer transformations of `(F, g)`; one entry for integer units.
    pub variants: Vec<IntegerVariant>,
    pub d_min: u64,
    pub d_max: u64,
    pub expected_d: BigRational,
    pub mean_d: f64,
    pub sigma_mean_d: f64,
    pub k: f64,
    pub three_sigma_significant: bool,
    pub alpha: f64,
    pub ci_ends: (f64, f64),
    pub ci_mid: (f64, f64),
}

impl HeadPlacementReport {
    pub fn f_f64(&self) -> f64 {
        to_f64(&self.f)
    }

    pub fn g_f64(&self) -> f64 {
        to_f64(&self.g)
    }

    pub fn p_values(&self) -> Vec<f64> {
        self.variants.iter().map(|v| v.test.p_value).collect()
    }

    /// Whether every integer transformation is significant at `alpha`.
    pub fn binomial_significant(&self) -> bool {
        self.variants.iter().all(|v| v.test.p_value <= self.alpha)
    }
}

fn nonzero_total(table: &OrderFrequencyTable, unit: &str) -> Result<BigRational> {
    let total = table.total(unit)?;
    if total.is_zero() {
        return Err(Error::domain(format!(
            "zero total frequency in unit {unit:?}"
        )));
    }
    Ok(total)
}

/// Mean D for a unit: the g bridge where it applies, row by row otherwise
/// (the rows do not depend on the rounding of `F` and `g`).
fn unit_mean_d(n: u64, g: f64, f: f64, table: &OrderFrequencyTable, unit: &str) -> Result<f64> {
    match n {
        3 | 4 => mean_d_from_g(n, g, f),
        _ => mean_d_from_rows(table, unit),
    }
}

pub fn analyze_unit(
    table: &OrderFrequencyTable,
    unit: &str,
    alpha: f64,
    p0_override: Option<&BigRational>,
) -> Result<HeadPlacementReport> {
    check_alpha(alpha)?;
    let n = table.n() as u64;
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "head placement analysis needs at least 3 symbols, got {n}"
        )));
    }
    let f = nonzero_total(table, unit)?;
    let g = head_end_frequency(table, unit)?;
    let p0 = match p0_override {
        Some(p) => p.clone(),
        None => p_head_at_ends(n)?,
    };
    let (f_real, g_real) = (to_f64(&f), to_f64(&g));
    let variance = variance_d_star(n)?;

    let mut variants: Vec<IntegerVariant> = Vec::with_capacity(4);
    for test in quad_binomial_test(&g, &f, &p0)? {
        if variants
            .iter()
            .any(|v| v.test.trials == test.trials && v.test.successes == test.successes)
        {
            continue;
        }
        let (ft, gt) = (test.trials as f64, test.successes as f64);
        let mean_d = unit_mean_d(n, gt, ft, table, unit)?;
        variants.push(IntegerVariant {
            test,
            proportion: gt / ft,
            mean_d,
            sigma_mean_d: sigma_from_variance(&variance, ft)?,
            k: sigma_separation_k(mean_d, ft, n)?,
        });
    }

    let proportion = g_real / f_real;
    let mean_d = unit_mean_d(n, g_real, f_real, table, unit)?;
    let k = sigma_separation_k(mean_d, f_real, n)?;
    let rounded = to_u64(&round_half_away(&f))?.max(1);
    Ok(HeadPlacementReport {
        unit: unit.to_string(),
        n,
        p0,
        proportion,
        variants,
        d_min: d_min_single_head(n)?,
        d_max: d_max_single_head(n)?,
        expected_d: expected_d(n)?,
        mean_d,
        sigma_mean_d: sigma_from_variance(&variance, f_real)?,
        k,
        three_sigma_significant: three_sigma_verdict(k),
        alpha,
        ci_ends: binomial_proportion_ci(proportion, rounded, alpha)?,
        ci_mid: binomial_proportion_ci(1.0 - proportion, rounded, alpha)?,
        f,
        g,
    })
}

/// Analyzes every unit of the table, in column order.
pub fn analyze(
    table: &OrderFrequencyTable,
    alpha: f64,
    p0_override: Option<&BigRational>,
) -> Result<Vec<HeadPlacementReport>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        table
            .units()
            .par_iter()
            .map(|u| analyze_unit(table, u, alpha, p0_override))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        table
            .units()
            .iter()
            .map(|u| analyze_unit(table, u, alpha, p0_override))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, ratio};
    use crate::table::OrderRow;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn head_end_probability() {
        assert_eq!(p_head_at_ends(4).unwrap(), ratio(1, 2));
        assert_eq!(p_head_at_ends(3).unwrap(), ratio(2, 3));
        assert_eq!(p_head_at_ends(2).unwrap(), int(1));
        assert!(p_head_at_ends(1).is_err());
    }

    #[test]
    fn bridge_values() {
        assert_eq!(mean_d_from_g(4, 369.0, 576.0).unwrap(), 5.28125);
        assert!(close(mean_d_from_g(4, 192.0, 322.0).unwrap(), 5.193, 5e-4));
        assert_eq!(mean_d_from_g(4, 0.0, 17.0).unwrap(), 4.0);
        assert_eq!(mean_d_from_g(3, 0.0, 10.0).unwrap(), 2.0);
        assert_eq!(mean_d_from_g(3, 10.0, 10.0).unwrap(), 3.0);
        assert!(matches!(
            mean_d_from_g(5, 1.0, 2.0),
            Err(Error::Unsupported(_))
        ));
        assert!(mean_d_from_g(4, 3.0, 2.0).is_err());
        assert!(mean_d_from_g(4, 0.0, 0.0).is_err());
    }

    #[test]
    fn quad_test_on_adjusted_languages() {
        let g = parse_rational("123.2").unwrap();
        let f = parse_rational("217.4").unwrap();
        let tests = quad_binomial_test(&g, &f, &ratio(1, 2)).unwrap();
        let pairs: Vec<_> = tests.iter().map(|t| (t.trials, t.successes)).collect();
        assert_eq!(pairs, vec![(217, 123), (218, 123), (217, 124), (218, 124)]);
        for (t, want) in tests.iter().zip([0.029, 0.034, 0.021, 0.025]) {
            assert!(close(t.p_value, want, 6e-4), "{t:?}");
        }
    }

    #[test]
    fn quad_test_on_integers_collapses() {
        let tests = quad_binomial_test(&int(123), &int(217), &ratio(1, 2)).unwrap();
        assert!(tests.iter().all(|t| *t == tests[0]));
        let tests = quad_binomial_test(&int(124), &int(218), &ratio(1, 2)).unwrap();
        assert!(tests.iter().all(|t| close(t.p_value, 0.025, 6e-4)));
        assert!(quad_binomial_test(&int(5), &int(4), &ratio(1, 2)).is_err());
        assert!(quad_binomial_test(&int(1), &int(4), &int(1)).is_err());
    }

    #[test]
    fn separation_k() {
        assert!(close(
            sigma_separation_k(5.28125, 576.0, 4).unwrap(),
            6.75,
            1e-12
        ));
        assert!(close(
            sigma_separation_k(5.193, 322.0, 4).unwrap(),
            3.46,
            0.005
        ));
        // <D> rounded to three decimals shifts k by ~0.01
        assert!(close(
            sigma_separation_k(5.133, 217.4, 4).unwrap(),
            1.97,
            0.01
        ));
        assert!(sigma_separation_k(5.0, 0.0, 4).is_err());
        assert!(sigma_separation_k(1.0, 10.0, 2).is_err());
        // general route for n = 5 against explicit moments: D_r = 8, V = 3*4*6*7/180
        let k5 = sigma_separation_k(9.0, 100.0, 5).unwrap();
        assert!(close(k5, 1.0 / (2.8f64 / 100.0).sqrt(), 1e-12));
    }

    #[test]
    fn verdicts() {
        assert!(three_sigma_verdict(6.75));
        assert!(!three_sigma_verdict(1.97));
        assert!(three_sigma_verdict(3.0));
    }

    #[test]
    fn intervals() {
        let (lo, hi) = binomial_proportion_ci(0.5, 576, 0.05).unwrap();
        assert!(close(lo + hi, 1.0, 1e-12));
        let (lo, hi) = binomial_proportion_ci(0.641, 576, 0.05).unwrap();
        assert!(lo > 0.5 && hi > lo);
        let (lo2, hi2) = binomial_proportion_ci(0.641, 322, 0.05).unwrap();
        assert!(hi2 - lo2 > hi - lo);
        assert_eq!(binomial_proportion_ci(0.0, 100, 0.05).unwrap(), (0.0, 0.0));
        assert_eq!(binomial_proportion_ci(1.0, 100, 0.05).unwrap(), (1.0, 1.0));
        assert!(binomial_proportion_ci(0.5, 100, 0.0).is_err());
        assert!(binomial_proportion_ci(1.5, 100, 0.05).is_err());
    }

    fn svo_table(freqs: &[(&str, i64)]) -> OrderFrequencyTable {
        OrderFrequencyTable::new(
            vec!['S', 'O', 'V'],
            'V',
            vec!["languages".into()],
            freqs
                .iter()
                .map(|&(o, f)| OrderRow {
                    order: o.into(),
                    frequencies: vec![int(f)],
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn three_symbol_analysis_uses_two_thirds() {
        let t = svo_table(&[("SOV", 40), ("SVO", 35), ("VSO", 10), ("OSV", 1)]);
        let r = analyze(&t, 0.05, None).unwrap().remove(0);
        assert_eq!(r.p0, ratio(2, 3));
        assert_eq!(r.g, int(51));
        assert_eq!(r.variants.len(), 1);
        assert!(close(r.mean_d, 2.0 + 51.0 / 86.0, 1e-12));
        assert!(close(
            r.mean_d,
            mean_d_from_rows(&t, "languages").unwrap(),
            1e-12
        ));
    }

    #[test]
    fn zero_total_is_rejected() {
        let t = svo_table(&[("SOV", 0)]);
        let err = analyze(&t, 0.05, None).unwrap_err();
        assert!(err.to_string().contains("zero total frequency"));
    }

    #[test]
    fn anti_locality_on_three_symbols() {
        let t = svo_table(&[("SOV", 4), ("SVO", 3), ("VOS", 2)]);
        let c = anti_locality_counts(&t, "languages").unwrap();
        // D_r = 8/3: head at an end gives D = 3, in the middle D = 2
        assert_eq!(c.f_plus, int(6));
        assert_eq!(c.f_minus, int(3));
        assert_eq!(c.f_plus, head_end_frequency(&t, "languages").unwrap());
    }
}
