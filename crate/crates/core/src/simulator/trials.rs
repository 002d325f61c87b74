use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::{dfs_classify, gen_digraph};
use crate::algebra::format_rational;
use crate::arcs::{ArcTally, Role};
use crate::error::{Error, Result};
use crate::forest::ModelParams;

/// Generator for trial `index`: the master seed fixes the key, the trial
/// index selects an independent stream.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Which function of the tally a trial records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Projection {
    Single(Role),
    /// `(L, F, B+C, T)`
    Extended,
    /// `(L, B, F+C, T)`
    ExtendedSwapped,
    /// `(L, F, B, C, T)`
    Full,
}

impl Projection {
    pub fn key(self, t: &ArcTally) -> Vec<u64> {
        match self {
            Projection::Single(r) => vec![t.get(r)],
            Projection::Extended => vec![t.loops, t.forward, t.back + t.cross, t.tree],
            Projection::ExtendedSwapped => vec![t.loops, t.back, t.forward + t.cross, t.tree],
            Projection::Full => t.as_array().to_vec(),
        }
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Projection::Single(r) => write!(f, "{r}"),
            Projection::Extended => f.write_str("L,F,B+C,T"),
            Projection::ExtendedSwapped => f.write_str("L,B,F+C,T"),
            Projection::Full => f.write_str("L,F,B,C,T"),
        }
    }
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.to_ascii_uppercase().as_str() {
            "L,F,B+C,T" | "EXTENDED" => Ok(Projection::Extended),
            "L,B,F+C,T" | "EXTENDED-SWAPPED" => Ok(Projection::ExtendedSwapped),
            "L,F,B,C,T" | "FULL" => Ok(Projection::Full),
            _ => compact.parse().map(Projection::Single),
        }
    }
}

/// Histogram of projected tallies over independent trials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialSummary {
    pub params: ModelParams,
    pub trials: u64,
    pub seed: u64,
    pub projection: Projection,
    pub histogram: BTreeMap<Vec<u64>, u64>,
}

impl TrialSummary {
    /// Sample mean and standard error of component `i` of the key.
    pub fn mean_and_se(&self, i: usize) -> (f64, f64) {
        let n = self.trials as f64;
        let (mut s, mut sq) = (0.0, 0.0);
        for (k, c) in &self.histogram {
            let v = k[i] as f64;
            s += v * *c as f64;
            sq += v * v * *c as f64;
        }
        let mean = s / n;
        let var = if self.trials > 1 { (sq - n * mean * mean) / (n - 1.0) } else { 0.0 };
        (mean, (var.max(0.0) / n).sqrt())
    }

    /// Counts by the value of a single-component key.
    pub fn counts_by_value(&self) -> BTreeMap<u64, u64> {
        self.histogram.iter().map(|(k, c)| (k[0], *c)).collect()
    }
}

impl Serialize for TrialSummary {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Bin<'a> {
            key: &'a [u64],
            count: u64,
        }
        let bins: Vec<Bin> = self.histogram.iter().map(|(k, c)| Bin { key: k, count: *c }).collect();
        let mut st = s.serialize_struct("TrialSummary", 6)?;
        st.serialize_field("n", &self.params.n())?;
        st.serialize_field("p", &format_rational(self.params.p()))?;
        st.serialize_field("trials", &self.trials)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("projection", &self.projection.to_string())?;
        st.serialize_field("histogram", &bins)?;
        st.end()
    }
}

/// Runs `trials` independent searches and records one summary per
/// projection, all from the same digraphs. Results depend only on the seed,
/// never on scheduling.
pub fn run_trials_multi(
    params: &ModelParams,
    trials: u64,
    seed: u64,
    projections: &[Projection],
) -> Vec<TrialSummary> {
    assert!(trials >= 1, "at least one trial is required");
    let empty = || vec![BTreeMap::<Vec<u64>, u64>::new(); projections.len()];
    let hists = (0..trials)
        .into_par_iter()
        .fold(empty, |mut acc, i| {
            let g = gen_digraph(params, &mut trial_rng(seed, i));
            let tally = dfs_classify(&g).tally;
            for (h, proj) in acc.iter_mut().zip(projections) {
                *h.entry(proj.key(&tally)).or_insert(0) += 1;
            }
            acc
        })
        .reduce(empty, |mut a, b| {
            for (ha, hb) in a.iter_mut().zip(b) {
                for (k, c) in hb {
                    *ha.entry(k).or_insert(0) += c;
                }
            }
            a
        });
    hists
        .into_iter()
        .zip(projections)
        .map(|(histogram, &projection)| TrialSummary {
            params: params.clone(),
            trials,
            seed,
            projection,
            histogram,
        })
        .collect()
}

pub fn run_trials(params: &ModelParams, trials: u64, seed: u64, projection: Projection) -> TrialSummary {
    run_trials_multi(params, trials, seed, &[projection]).pop().unwrap()
}
