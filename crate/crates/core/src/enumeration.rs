//! Brute-force enumeration of DFS instances with a bounded number of arcs.
//!
//! An instance is the full sequence of explored arcs. The walk follows the
//! search itself: the active vertex either emits one more arc to any of the
//! `n` targets or stops, and a new root (the smallest undiscovered label) is
//! taken whenever the active path empties. Tallying every instance with at
//! most `max_arcs` arcs gives the coefficients of the generating functions
//! on the whole simplex of total degree `≤ max_arcs`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::algebra::{Integer, IntRationalFunction, Monomial, Rational};
use crate::arcs::{ArcKind, ArcTally};
use crate::error::{Error, Result};
use crate::forest::{graded_series, ModelParams};
use crate::simulator::Digraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scope {
    /// One tree on `1..n` visited in the order `1, …, n`.
    SingleTree(usize),
    /// Every complete instance on `1..n`.
    FullForest(usize),
}

impl Scope {
    pub fn n(self) -> usize {
        match self {
            Scope::SingleTree(n) | Scope::FullForest(n) => n,
        }
    }
}

/// Exact number of instances per tally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceCounter {
    pub counts: BTreeMap<ArcTally, u64>,
    pub max_arcs: usize,
    pub scope: Scope,
}

impl InstanceCounter {
    fn empty(scope: Scope, max_arcs: usize) -> Self {
        InstanceCounter { counts: BTreeMap::new(), max_arcs, scope }
    }

    fn merge(mut self, other: Self) -> Self {
        for (t, c) in other.counts {
            *self.counts.entry(t).or_insert(0) += c;
        }
        self
    }

    pub fn count(&self, tally: &ArcTally) -> u64 {
        self.counts.get(tally).copied().unwrap_or(0)
    }

    pub fn instances(&self) -> u64 {
        self.counts.values().sum()
    }
}

impl Serialize for InstanceCounter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            #[serde(rename = "L")]
            l: u64,
            #[serde(rename = "F")]
            f: u64,
            #[serde(rename = "B")]
            b: u64,
            #[serde(rename = "C")]
            c: u64,
            #[serde(rename = "T")]
            t: u64,
            count: u64,
        }
        let mut seq = s.serialize_seq(Some(self.counts.len()))?;
        for (t, c) in &self.counts {
            seq.serialize_element(&Row { l: t.loops, f: t.forward, b: t.back, c: t.cross, t: t.tree, count: *c })?;
        }
        seq.end()
    }
}

/// Search state; undone on backtracking.
struct Walker {
    n: usize,
    single_tree: bool,
    max_arcs: usize,
    disc: Vec<Option<usize>>,
    active: Vec<bool>,
    path: Vec<usize>,
    discovered: usize,
    arcs: Vec<(usize, usize)>,
    tally: ArcTally,
}

/// One move of the active vertex.
#[derive(Clone, Copy, Debug)]
enum Move {
    Stop,
    Emit(usize),
}

impl Walker {
    fn new(scope: Scope, max_arcs: usize) -> Self {
        let n = scope.n();
        let mut w = Walker {
            n,
            single_tree: matches!(scope, Scope::SingleTree(_)),
            max_arcs,
            disc: vec![None; n],
            active: vec![false; n],
            path: Vec::new(),
            discovered: 0,
            arcs: Vec::new(),
            tally: ArcTally::default(),
        };
        w.discover(0);
        w
    }

    fn discover(&mut self, v: usize) {
        self.disc[v] = Some(self.discovered);
        self.discovered += 1;
        self.active[v] = true;
        self.path.push(v);
    }

    fn undiscover(&mut self, v: usize) {
        self.disc[v] = None;
        self.discovered -= 1;
        self.active[v] = false;
        self.path.pop();
    }

    fn kind(&self, v: usize, u: usize) -> ArcKind {
        match self.disc[u] {
            None => ArcKind::Tree,
            Some(_) if u == v => ArcKind::Loop,
            Some(_) if self.active[u] => ArcKind::Back,
            Some(du) if du > self.disc[v].unwrap() => ArcKind::Forward,
            Some(_) => ArcKind::Cross,
        }
    }

    fn moves(&self) -> Vec<Move> {
        let mut out = vec![Move::Stop];
        if self.arcs.len() < self.max_arcs {
            out.extend((0..self.n).map(Move::Emit));
        }
        out
    }

    fn explore(&mut self, visit: &mut dyn FnMut(&[(usize, usize)], &ArcTally)) {
        if self.path.is_empty() {
            let next = self.disc.iter().position(Option::is_none);
            match next {
                None => visit(&self.arcs, &self.tally),
                Some(_) if self.single_tree => {}
                Some(root) => {
                    self.discover(root);
                    self.explore(visit);
                    self.undiscover(root);
                }
            }
            return;
        }
        for mv in self.moves() {
            self.apply(mv, visit);
        }
    }

    fn apply(&mut self, mv: Move, visit: &mut dyn FnMut(&[(usize, usize)], &ArcTally)) {
        let v = *self.path.last().unwrap();
        match mv {
            Move::Stop => {
                self.active[v] = false;
                self.path.pop();
                self.explore(visit);
                self.path.push(v);
                self.active[v] = true;
            }
            Move::Emit(u) => {
                let kind = self.kind(v, u);
                // a single tree visits its vertices in label order
                if kind == ArcKind::Tree && self.single_tree && u != self.discovered {
                    return;
                }
                self.arcs.push((v, u));
                self.tally.record(kind);
                if kind == ArcKind::Tree {
                    self.discover(u);
                    self.explore(visit);
                    self.undiscover(u);
                } else {
                    self.explore(visit);
                }
                self.tally = untally(self.tally, kind);
                self.arcs.pop();
            }
        }
    }
}

fn untally(mut t: ArcTally, kind: ArcKind) -> ArcTally {
    match kind {
        ArcKind::Loop => t.loops -= 1,
        ArcKind::Forward => t.forward -= 1,
        ArcKind::Back => t.back -= 1,
        ArcKind::Cross => t.cross -= 1,
        ArcKind::Tree => t.tree -= 1,
    }
    t
}

fn check_scope(scope: Scope, max_arcs: usize) -> Result<()> {
    let n = scope.n();
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    if matches!(scope, Scope::SingleTree(_)) && max_arcs + 1 < n {
        return Err(Error::BoundTooSmall { n, max_arcs });
    }
    Ok(())
}

/// Calls `visit` with the arc list (emission order, 0-based `(source,
/// target)`) and tally of every instance in scope.
pub fn for_each_instance(
    scope: Scope,
    max_arcs: usize,
    mut visit: impl FnMut(&[(usize, usize)], &ArcTally),
) -> Result<()> {
    check_scope(scope, max_arcs)?;
    Walker::new(scope, max_arcs).explore(&mut visit);
    Ok(())
}

/// Tallies the instances in scope, splitting the work over the root's first
/// move. The result does not depend on the pool size.
pub fn count_instances(scope: Scope, max_arcs: usize) -> Result<InstanceCounter> {
    check_scope(scope, max_arcs)?;
    let first = Walker::new(scope, max_arcs).moves();
    let counter = first
        .into_par_iter()
        .map(|mv| {
            let mut c = InstanceCounter::empty(scope, max_arcs);
            let mut w = Walker::new(scope, max_arcs);
            w.apply(mv, &mut |_, t| *c.counts.entry(*t).or_insert(0) += 1);
            c
        })
        .reduce(|| InstanceCounter::empty(scope, max_arcs), InstanceCounter::merge);
    Ok(counter)
}

/// Arc sequences whose first tree is the whole vertex set `1..n` visited in
/// label order.
pub fn enumerate_tree_instances(n: usize, max_arcs: usize) -> Result<InstanceCounter> {
    count_instances(Scope::SingleTree(n), max_arcs)
}

/// Complete instances on `1..n` under the smallest-label root rule.
pub fn enumerate_forest_instances(n: usize, max_arcs: usize) -> Result<InstanceCounter> {
    count_instances(Scope::FullForest(n), max_arcs)
}

/// The digraph an instance explores: every vertex emits exactly the arcs the
/// instance lists for it, in order.
pub fn instance_digraph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
    let mut lists = vec![Vec::new(); n];
    for &(v, u) in arcs {
        lists[v].push(u);
    }
    Digraph::new(lists)
}

/// `(p/n)^{arcs} (1 − p)^n`, the probability of one instance.
pub fn instance_probability(params: &ModelParams, arcs: usize) -> Rational {
    let a = params.arc_weight();
    (0..arcs).fold(params.stop_weight(), |acc, _| acc * &a)
}

/// A coefficient where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub tally: ArcTally,
    pub enumerated: u64,
    #[serde(with = "crate::algebra::rational::serde_integer")]
    pub series: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    pub bound: usize,
    pub coefficients_checked: usize,
    /// The mismatch of lowest total degree, if any.
    pub first_mismatch: Option<Mismatch>,
}

impl SeriesComparison {
    pub fn matches(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// `t^T`-graded view of `G_n`: the only nonzero entry sits at `T = n − 1`.
pub fn tree_graded(g: &IntRationalFunction, n: usize) -> Vec<IntRationalFunction> {
    let mut v = vec![IntRationalFunction::zero(); n];
    v[n - 1] = g.clone();
    v
}

/// Compares instance counts with the Taylor coefficients of a `t`-graded
/// generating function on every tally of total size `≤ bound`.
pub fn compare_series(
    counter: &InstanceCounter,
    graded: &[IntRationalFunction],
    bound: usize,
) -> Result<SeriesComparison> {
    if bound > counter.max_arcs {
        return Err(Error::InvalidParams(format!(
            "bound {bound} exceeds the enumeration bound {}",
            counter.max_arcs
        )));
    }
    let series = graded_series(graded, bound as u32);
    let mut tallies: BTreeSet<(u64, ArcTally)> = BTreeSet::new();
    for (t, poly) in series.iter().enumerate() {
        for (m, _) in poly.terms() {
            let [l, f, b, c] = m.exps();
            let tally = ArcTally::new(l as u64, f as u64, b as u64, c as u64, t as u64);
            tallies.insert((tally.total(), tally));
        }
    }
    for t in counter.counts.keys() {
        if t.total() <= bound as u64 {
            tallies.insert((t.total(), *t));
        }
    }
    let mut first_mismatch = None;
    for (_, t) in &tallies {
        let mono = Monomial::new([t.loops as u32, t.forward as u32, t.back as u32, t.cross as u32]);
        let expected = series.get(t.tree as usize).map_or_else(|| Integer::from(0), |p| p.coeff(mono));
        let found = counter.count(t);
        if expected != Integer::from(found) {
            first_mismatch = Some(Mismatch { tally: *t, enumerated: found, series: expected });
            break;
        }
    }
    Ok(SeriesComparison { bound, coefficients_checked: tallies.len(), first_mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::forest::compose_graded;
    use crate::recursions::{swap_forward_back, Family, GTable};
    use crate::simulator::dfs_classify;

    #[test]
    fn single_vertex_loops() {
        let c = enumerate_tree_instances(1, 2).unwrap();
        let expected: BTreeMap<ArcTally, u64> =
            (0..3).map(|l| (ArcTally::new(l, 0, 0, 0, 0), 1)).collect();
        assert_eq!(c.counts, expected);
        assert_eq!(enumerate_forest_instances(1, 2).unwrap().counts, expected);
    }

    #[test]
    fn minimal_instances() {
        let c = enumerate_tree_instances(2, 1).unwrap();
        assert_eq!(c.instances(), 1);
        assert_eq!(c.count(&ArcTally::new(0, 0, 0, 0, 1)), 1);
        let mut seen = Vec::new();
        for_each_instance(Scope::SingleTree(2), 1, |arcs, _| seen.push(arcs.to_vec())).unwrap();
        assert_eq!(seen, vec![vec![(0, 1)]]);

        let f = enumerate_forest_instances(2, 0).unwrap();
        assert_eq!(f.counts.into_iter().collect::<Vec<_>>(), vec![(ArcTally::default(), 1)]);
        assert!(matches!(enumerate_tree_instances(4, 2), Err(Error::BoundTooSmall { .. })));
    }

    #[test]
    fn tree_counts_match_g() {
        let mut g = GTable::new(Family::G);
        for (n, bound) in [(1, 4), (2, 4), (3, 5)] {
            let c = enumerate_tree_instances(n, bound).unwrap();
            let cmp = compare_series(&c, &tree_graded(&g.get(n), n), bound).unwrap();
            assert!(cmp.matches(), "n={n}: {cmp:?}");
        }
    }

    #[test]
    fn forest_counts_match_composition() {
        let mut g = GTable::new(Family::G);
        for n in 1..=3 {
            let c = enumerate_forest_instances(n, 4).unwrap();
            let cmp = compare_series(&c, &compose_graded(n, &mut g), 4).unwrap();
            assert!(cmp.matches(), "n={n}: {cmp:?}");
        }
    }

    #[test]
    fn swapped_g3_is_caught_at_lowest_degree() {
        let mut g = GTable::new(Family::G);
        let c = enumerate_tree_instances(3, 5).unwrap();
        let swapped = swap_forward_back(&g.get(3));
        let cmp = compare_series(&c, &tree_graded(&swapped, 3), 5).unwrap();
        let m = cmp.first_mismatch.expect("swap must be detected");
        assert_eq!(m.tally.tree, 2);
        assert_eq!(m.tally.total() - m.tally.tree, 3);
        // G_2 is symmetric in forward and back, so swapping changes nothing
        let c2 = enumerate_tree_instances(2, 4).unwrap();
        assert!(compare_series(&c2, &tree_graded(&swap_forward_back(&g.get(2)), 2), 4).unwrap().matches());
    }

    #[test]
    fn replay_through_classifier() {
        for n in 1..=3 {
            for_each_instance(Scope::FullForest(n), 5, |arcs, tally| {
                let r = dfs_classify(&instance_digraph(n, arcs));
                assert_eq!(r.tally, *tally, "{arcs:?}");
            })
            .unwrap();
        }
    }

    #[test]
    fn forest_restricted_to_ordered_single_trees() {
        let n = 3;
        let mut restricted: BTreeMap<ArcTally, u64> = BTreeMap::new();
        for_each_instance(Scope::FullForest(n), 5, |arcs, tally| {
            let r = dfs_classify(&instance_digraph(n, arcs));
            if r.tree_count() == 1 && r.discovery_order == [0, 1, 2] {
                *restricted.entry(*tally).or_insert(0) += 1;
            }
        })
        .unwrap();
        assert_eq!(restricted, enumerate_tree_instances(n, 5).unwrap().counts);
    }

    #[test]
    fn relabelling_preserving_visit_order() {
        // swapping labels 2 and 3 maps instances visiting 1,3,2 to ones
        // visiting 1,2,3 with the same tally
        let n = 3;
        let swap = |v: usize| [0, 2, 1][v];
        let mut via_132: BTreeMap<ArcTally, u64> = BTreeMap::new();
        for_each_instance(Scope::FullForest(n), 5, |arcs, tally| {
            let r = dfs_classify(&instance_digraph(n, arcs));
            if r.tree_count() == 1 && r.discovery_order == [0, 2, 1] {
                let relabelled: Vec<_> = arcs.iter().map(|&(a, b)| (swap(a), swap(b))).collect();
                assert_eq!(dfs_classify(&instance_digraph(n, &relabelled)).tally, *tally);
                *via_132.entry(*tally).or_insert(0) += 1;
            }
        })
        .unwrap();
        assert_eq!(via_132, enumerate_tree_instances(n, 5).unwrap().counts);
    }

    #[test]
    fn instance_weights_sum_to_truncated_mass() {
        let pr = ModelParams::new(2, ratio(1, 3)).unwrap();
        let mut mass = Rational::from_integer(0.into());
        for_each_instance(Scope::FullForest(2), 6, |arcs, _| mass += instance_probability(&pr, arcs.len())).unwrap();
        assert!(mass < Rational::from_integer(1.into()));
        assert!(mass > ratio(99, 100));
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let a = pool.install(|| enumerate_forest_instances(3, 5).unwrap());
        let mut b = InstanceCounter::empty(Scope::FullForest(3), 5);
        for_each_instance(Scope::FullForest(3), 5, |_, t| *b.counts.entry(*t).or_insert(0) += 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn counter_json() {
        let c = enumerate_tree_instances(2, 1).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"[{"L":0,"F":0,"B":0,"C":0,"T":1,"count":1}]"#);
    }
}
