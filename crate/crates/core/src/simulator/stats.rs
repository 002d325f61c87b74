use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::TrialSummary;
use crate::algebra::rational::rational_to_f64;
use crate::error::{Error, Result};
use crate::forest::DistributionTable;

pub const DEFAULT_ALPHA: f64 = 1e-3;

/// Minimum expected count per chi-square cell.
const MIN_EXPECTED: f64 = 5.0;

/// Chi-square goodness of fit of an empirical histogram against an exact law.
#[derive(Clone, Debug, Serialize)]
pub struct GofReport {
    pub statistic: f64,
    pub dof: usize,
    pub threshold: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub total_variation: f64,
    /// `(first k, observed, expected)` per merged cell; the last cell
    /// covers everything above its first `k`.
    pub cells: Vec<(usize, u64, f64)>,
    pub pass: bool,
}

fn chi_square_verdict(statistic: f64, dof: usize, alpha: f64) -> (f64, f64) {
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    let threshold = dist.inverse_cdf(1.0 - alpha);
    let p_value = if statistic.is_finite() { 1.0 - dist.cdf(statistic) } else { 0.0 };
    (threshold, p_value)
}

/// Compares a single-count summary with an exact table. Values above the
/// table's range fall into the tail cell; cells are merged from the top down
/// until each expects at least five observations.
pub fn compare_empirical(summary: &TrialSummary, exact: &DistributionTable, alpha: f64) -> Result<GofReport> {
    if summary.histogram.keys().any(|k| k.len() != 1) {
        return Err(Error::InvalidParams("goodness of fit needs a single-count projection".into()));
    }
    let trials = summary.trials as f64;
    let kmax = exact.kmax();
    let mut observed = vec![0u64; kmax + 2];
    for (v, c) in summary.counts_by_value() {
        observed[(v as usize).min(kmax + 1)] += c;
    }
    let mut probs: Vec<f64> = exact.probs.iter().map(rational_to_f64).collect();
    probs.push(rational_to_f64(&exact.tail));

    let mut tv = 0.0;
    for (o, p) in observed.iter().zip(&probs) {
        tv += (*o as f64 / trials - p).abs();
    }
    tv /= 2.0;

    // merge from the top so rare upper values pool into one cell
    let mut cells: Vec<(usize, u64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0u64, 0.0f64);
    for k in (0..probs.len()).rev() {
        obs += observed[k];
        exp += probs[k] * trials;
        if exp >= MIN_EXPECTED {
            cells.push((k, obs, exp));
            obs = 0;
            exp = 0.0;
        }
    }
    if obs > 0 || exp > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 = 0;
                last.1 += obs;
                last.2 += exp;
            }
            None => cells.push((0, obs, exp)),
        }
    }
    cells.reverse();
    if cells.len() < 2 || cells.iter().any(|c| c.2 < MIN_EXPECTED) {
        return Err(Error::InsufficientData(format!(
            "{} trials leave fewer than two cells with expected count ≥ {MIN_EXPECTED}",
            summary.trials
        )));
    }
    let statistic: f64 = cells.iter().map(|(_, o, e)| (*o as f64 - e).powi(2) / e).sum();
    let dof = cells.len() - 1;
    let (threshold, p_value) = chi_square_verdict(statistic, dof, alpha);
    Ok(GofReport {
        statistic,
        dof,
        threshold,
        p_value,
        alpha,
        total_variation: tv,
        cells,
        pass: statistic <= threshold,
    })
}

/// Chi-square homogeneity test between two histograms of the same trial count
/// layout, plus the total-variation distance of the empirical laws.
#[derive(Clone, Debug, Serialize)]
pub struct TwoSampleReport {
    pub statistic: f64,
    pub dof: usize,
    pub threshold: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub total_variation: f64,
    pub pass: bool,
}

pub fn compare_two_samples(a: &TrialSummary, b: &TrialSummary, alpha: f64) -> Result<TwoSampleReport> {
    let (na, nb) = (a.trials as f64, b.trials as f64);
    let keys: BTreeSet<&Vec<u64>> = a.histogram.keys().chain(b.histogram.keys()).collect();
    let get = |h: &BTreeMap<Vec<u64>, u64>, k: &Vec<u64>| h.get(k).copied().unwrap_or(0);
    let mut tv = 0.0;
    // keys whose pooled expectation is small share one cell
    let mut cells: Vec<(u64, u64)> = Vec::new();
    let mut rare = (0u64, 0u64);
    for k in keys {
        let (ca, cb) = (get(&a.histogram, k), get(&b.histogram, k));
        tv += (ca as f64 / na - cb as f64 / nb).abs();
        let pooled = (ca + cb) as f64;
        if pooled * na.min(nb) / (na + nb) >= MIN_EXPECTED {
            cells.push((ca, cb));
        } else {
            rare.0 += ca;
            rare.1 += cb;
        }
    }
    if rare.0 + rare.1 > 0 {
        let pooled = (rare.0 + rare.1) as f64;
        if pooled * na.min(nb) / (na + nb) >= MIN_EXPECTED || cells.is_empty() {
            cells.push(rare);
        } else if let Some(last) = cells.last_mut() {
            last.0 += rare.0;
            last.1 += rare.1;
        }
    }
    if cells.len() < 2 {
        return Err(Error::InsufficientData("fewer than two populated cells".into()));
    }
    let total = na + nb;
    let mut statistic = 0.0;
    for (ca, cb) in &cells {
        let pooled = (ca + cb) as f64;
        let (ea, eb) = (pooled * na / total, pooled * nb / total);
        statistic += (*ca as f64 - ea).powi(2) / ea + (*cb as f64 - eb).powi(2) / eb;
    }
    let dof = cells.len() - 1;
    let (threshold, p_value) = chi_square_verdict(statistic, dof, alpha);
    Ok(TwoSampleReport {
        statistic,
        dof,
        threshold,
        p_value,
        alpha,
        total_variation: tv / 2.0,
        pass: statistic <= threshold,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MeansReport {
    pub mean_a: f64,
    pub mean_b: f64,
    /// `sqrt(se_a² + se_b²)`
    pub combined_se: f64,
    pub sigmas: f64,
    pub pass: bool,
}

/// Whether the means of component `ia` of `a` and `ib` of `b` differ by at
/// most `sigmas` combined standard errors.
pub fn compare_means(a: &TrialSummary, ia: usize, b: &TrialSummary, ib: usize, sigmas: f64) -> MeansReport {
    let (mean_a, se_a) = a.mean_and_se(ia);
    let (mean_b, se_b) = b.mean_and_se(ib);
    let combined_se = (se_a * se_a + se_b * se_b).sqrt();
    let pass = (mean_a - mean_b).abs() <= sigmas * combined_se;
    MeansReport { mean_a, mean_b, combined_se, sigmas, pass }
}
