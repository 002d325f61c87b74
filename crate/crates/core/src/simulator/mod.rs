//! Monte Carlo side: random multidigraphs with geometric outdegrees, DFS with
//! scan-time arc classification, and statistical comparison with exact laws.
//!
//! Floating point appears only here, in sampling and test statistics.

mod dfs;
mod stats;
mod trials;

use rand::Rng;
use serde::Serialize;

use crate::forest::ModelParams;

pub use dfs::{classify_post_hoc, dfs_classify, is_ancestor, DfsResult};
pub use stats::{
    compare_empirical, compare_means, compare_two_samples, GofReport, MeansReport, TwoSampleReport,
    DEFAULT_ALPHA,
};
pub use trials::{run_trials, run_trials_multi, trial_rng, Projection, TrialSummary};

/// A multidigraph on vertices `0..n` given by each vertex's arc targets in
/// emission order. Loops and repeated targets are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Digraph {
    arcs: Vec<Vec<usize>>,
}

impl Digraph {
    /// Panics if a target is out of range.
    pub fn new(arcs: Vec<Vec<usize>>) -> Self {
        let n = arcs.len();
        assert!(arcs.iter().flatten().all(|&t| t < n), "arc target out of range");
        Digraph { arcs }
    }

    /// From lists of targets labelled `1..=n`.
    pub fn from_one_based(lists: &[&[usize]]) -> Self {
        Self::new(lists.iter().map(|l| l.iter().map(|t| t - 1).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn targets(&self, v: usize) -> &[usize] {
        &self.arcs[v]
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.arcs[v].len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    /// Target lists with `1..=n` labels.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.arcs.iter().map(|l| l.iter().map(|t| t + 1).collect()).collect()
    }
}

/// `k` with probability `p^k (1 − p)`, by inversion `⌊ln U / ln p⌋`.
pub fn sample_geometric<R: Rng + ?Sized>(p: f64, rng: &mut R) -> usize {
    assert!(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return (u.ln() / p.ln()).floor() as usize;
        }
    }
}

/// Independent `Ge(1 − p)` outdegrees with independent uniform targets.
pub fn gen_digraph<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> Digraph {
    let n = params.n();
    let p = crate::algebra::rational::rational_to_f64(params.p());
    let arcs = (0..n)
        .map(|_| {
            let k = sample_geometric(p, rng);
            (0..k).map(|_| rng.random_range(0..n)).collect()
        })
        .collect();
    Digraph { arcs }
}
