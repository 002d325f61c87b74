use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use super::SimulateArgs;
use crate::algebra::{format_rational, Rational};
use crate::arcs::Role;
use crate::enumeration::{
    compare_series, enumerate_forest_instances, enumerate_tree_instances, tree_graded,
    SeriesComparison,
};
use crate::error::Result;
use crate::forest::{compose_graded, dist_coeffs, mean_arc_count, pgf_arc_count, DistributionTable, ModelParams};
use crate::recursions::{EntryStats, Recursions};
use crate::simulator::{
    compare_empirical, compare_means, compare_two_samples, dfs_classify, gen_digraph, run_trials_multi,
    trial_rng, GofReport, MeansReport, Projection, TrialSummary, TwoSampleReport,
};

/// A printable command outcome.
pub trait Report {
    fn passed(&self) -> bool;
    fn text(&self) -> String;
    fn json(&self) -> String;
    /// Tab-separated rows under a header.
    fn tsv(&self) -> String;
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Knuth,
    Extended,
    Both,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub knuth: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended: Option<bool>,
    pub gx: EntryStats,
    pub gy: EntryStats,
}

impl VerifyRow {
    fn ok(&self) -> bool {
        self.knuth != Some(false) && self.extended != Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    pub rows: Vec<VerifyRow>,
    pub all_true: bool,
}

fn show(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    }
}

impl Report for VerifyReport {
    fn passed(&self) -> bool {
        self.all_true
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            writeln!(
                s,
                "n={:<3} knuth={:<5} extended={:<5} gx_terms={} gy_terms={} factors={}",
                r.n,
                show(r.knuth),
                show(r.extended),
                r.gx.numerator_terms,
                r.gy.numerator_terms,
                r.gx.factors
            )
            .unwrap();
        }
        writeln!(s, "{}", if self.all_true { "all true" } else { "COUNTEREXAMPLE FOUND" }).unwrap();
        s
    }

    fn json(&self) -> String {
        to_json(self)
    }

    fn tsv(&self) -> String {
        let mut s = String::from("n\tknuth\textended\tgx_terms\tgy_terms\tfactors\n");
        for r in &self.rows {
            writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.n,
                show(r.knuth),
                show(r.extended),
                r.gx.numerator_terms,
                r.gy.numerator_terms,
                r.gx.factors
            )
            .unwrap();
        }
        s
    }
}

/// Checks `n_min..=n_max`, reporting timings on stderr as each `n` finishes.
pub fn run_verify(n_min: usize, n_max: usize, mode: VerifyMode, reduce: bool) -> Result<VerifyReport> {
    if n_max == 0 {
        return Err(crate::Error::InvalidParams("--n-max must be at least 1".into()));
    }
    let mut rec = Recursions::new(reduce);
    let mut rows = Vec::new();
    for n in n_min.max(1)..=n_max {
        let start = Instant::now();
        let knuth = matches!(mode, VerifyMode::Knuth | VerifyMode::Both).then(|| rec.verify_knuth(n));
        let extended = matches!(mode, VerifyMode::Extended | VerifyMode::Both).then(|| rec.verify_extended(n));
        let row = VerifyRow { n, knuth, extended, gx: rec.gx.stats(n), gy: rec.gy.stats(n) };
        eprintln!(
            "verify n={n} knuth={} extended={} terms={} time={:.3?}",
            show(knuth),
            show(extended),
            row.gx.numerator_terms,
            start.elapsed()
        );
        rows.push(row);
    }
    let all_true = rows.iter().all(VerifyRow::ok);
    Ok(VerifyReport { mode, rows, all_true })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub n: usize,
    /// Whether the two sides are expected to be equal.
    pub expect_equal: bool,
    pub equal: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

impl Report for CrossCheckReport {
    fn passed(&self) -> bool {
        self.all_pass
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let rel = if c.equal { "EQUAL" } else { "INEQUAL" };
            let note = if c.expect_equal { "" } else { " (expected)" };
            writeln!(s, "{:<28} n={:<3} {rel}{note} {}", c.name, c.n, verdict(c.pass)).unwrap();
        }
        writeln!(s, "{}", if self.all_pass { "all checks pass" } else { "SOME CHECKS FAILED" }).unwrap();
        s
    }

    fn json(&self) -> String {
        to_json(self)
    }

    fn tsv(&self) -> String {
        let mut s = String::from("check\tn\texpect_equal\tequal\tpass\n");
        for c in &self.checks {
            writeln!(s, "{}\t{}\t{}\t{}\t{}", c.name, c.n, c.expect_equal, c.equal, c.pass).unwrap();
        }
        s
    }
}

pub fn run_cross_check(n_max: usize, g_max: usize, reduce: bool) -> Result<CrossCheckReport> {
    let mut rec = Recursions::new(reduce);
    let mut checks = Vec::new();
    let mut push = |name: &str, n: usize, expect_equal: bool, equal: bool| {
        eprintln!("cross-check {name} n={n} equal={equal}");
        checks.push(Check { name: name.into(), n, expect_equal, equal, pass: equal == expect_equal });
    };
    for n in 1..=n_max {
        let equal = rec.check_gy_recursions(n);
        push("GY = GY_alt", n, true, equal);
    }
    for n in 1..=g_max.min(n_max) {
        let equal = rec.check_gx_specialization(n);
        push("GX = G(w,x,z,z)", n, true, equal);
        let equal = rec.check_gy_specialization(n);
        push("GY = G(w,z,x,z)", n, true, equal);
    }
    let equal = rec.g_symmetric_in_forward_back(3);
    push("G(w,x,y,z) = G(w,y,x,z)", 3, false, equal);
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(CrossCheckReport { checks, all_pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct Means {
    #[serde(rename = "F", with = "crate::algebra::rational::serde_rational")]
    pub forward: Rational,
    #[serde(rename = "B", with = "crate::algebra::rational::serde_rational")]
    pub back: Rational,
    #[serde(rename = "T", with = "crate::algebra::rational::serde_rational")]
    pub tree: Rational,
    #[serde(rename = "C", with = "crate::algebra::rational::serde_rational")]
    pub cross: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistributionReport {
    #[serde(flatten)]
    pub table: DistributionTable,
    pub means: Means,
    /// `E F = E B` and `E T = E C`
    pub means_agree: bool,
    /// Partial sum plus tail is exactly 1.
    pub normalized: bool,
}

impl Report for DistributionReport {
    fn passed(&self) -> bool {
        self.means_agree && self.normalized
    }

    fn text(&self) -> String {
        let t = &self.table;
        let mut s = format!("n={} p={} role={}\n", t.n, format_rational(&t.p), t.role);
        for (k, p) in t.probs.iter().enumerate() {
            writeln!(s, "  P({}={k}) = {}", t.role, format_rational(p)).unwrap();
        }
        writeln!(s, "  tail = {}", format_rational(&t.tail)).unwrap();
        let m = &self.means;
        writeln!(
            s,
            "E F = {}  E B = {}  E T = {}  E C = {}",
            format_rational(&m.forward),
            format_rational(&m.back),
            format_rational(&m.tree),
            format_rational(&m.cross)
        )
        .unwrap();
        writeln!(s, "means agree: {}  normalized: {}", self.means_agree, self.normalized).unwrap();
        s
    }

    fn json(&self) -> String {
        to_json(self)
    }

    fn tsv(&self) -> String {
        self.table.to_tsv()
    }
}

pub fn run_distribution(n: usize, p: &Rational, role: Role, kmax: usize) -> Result<DistributionReport> {
    let params = ModelParams::new(n, p.clone())?;
    let pgf = pgf_arc_count(&params, role)?;
    let table = dist_coeffs(&pgf, kmax)?;
    let normalized = table.probs.iter().fold(table.tail.clone(), |acc, q| acc + q) == Rational::from_integer(1.into())
        && pgf.function.eval(&Rational::from_integer(1.into()))? == Rational::from_integer(1.into());
    let means = Means {
        forward: mean_arc_count(&params, Role::F)?,
        back: mean_arc_count(&params, Role::B)?,
        tree: mean_arc_count(&params, Role::T)?,
        cross: mean_arc_count(&params, Role::C)?,
    };
    let means_agree = means.forward == means.back && means.tree == means.cross;
    Ok(DistributionReport { table, means, means_agree, normalized })
}

/// The digraph and search outcome of a one-trial run, with `1..n` labels.
#[derive(Clone, Debug, Serialize)]
pub struct SingleTrial {
    pub arcs: Vec<Vec<usize>>,
    pub tally: crate::arcs::ArcTally,
    pub tree_sizes: Vec<usize>,
    pub discovery_order: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimulateReport {
    pub summary: TrialSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub goodness_of_fit: Option<GofReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forward_back_means: Option<MeansReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swapped_comparison: Option<TwoSampleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub single_trial: Option<SingleTrial>,
    pub pass: bool,
}

impl Report for SimulateReport {
    fn passed(&self) -> bool {
        self.pass
    }

    fn text(&self) -> String {
        let sm = &self.summary;
        let mut s = format!(
            "n={} p={} trials={} seed={} projection={}\n",
            sm.params.n(),
            format_rational(sm.params.p()),
            sm.trials,
            sm.seed,
            sm.projection
        );
        for (k, c) in &sm.histogram {
            writeln!(s, "  {k:?}\t{c}").unwrap();
        }
        if let Some(g) = &self.goodness_of_fit {
            writeln!(
                s,
                "chi-square {:.4} (dof {}, threshold {:.4} at alpha {}) p-value {:.4} TV {:.5} {}",
                g.statistic,
                g.dof,
                g.threshold,
                g.alpha,
                g.p_value,
                g.total_variation,
                verdict(g.pass)
            )
            .unwrap();
        }
        if let Some(m) = &self.forward_back_means {
            writeln!(
                s,
                "mean F {:.5}  mean B {:.5}  combined SE {:.5}  {}",
                m.mean_a,
                m.mean_b,
                m.combined_se,
                verdict(m.pass)
            )
            .unwrap();
        }
        if let Some(t) = &self.swapped_comparison {
            writeln!(
                s,
                "(L,F,B+C,T) vs (L,B,F+C,T): chi-square {:.4} (dof {}, threshold {:.4}) TV {:.5} {}",
                t.statistic,
                t.dof,
                t.threshold,
                t.total_variation,
                verdict(t.pass)
            )
            .unwrap();
        }
        if let Some(t) = &self.single_trial {
            writeln!(s, "arcs {:?}", t.arcs).unwrap();
            writeln!(
                s,
                "tally L={} F={} B={} C={} T={}  trees {:?}  order {:?}",
                t.tally.loops, t.tally.forward, t.tally.back, t.tally.cross, t.tally.tree, t.tree_sizes, t.discovery_order
            )
            .unwrap();
        }
        writeln!(s, "{}", verdict(self.pass)).unwrap();
        s
    }

    fn json(&self) -> String {
        to_json(self)
    }

    fn tsv(&self) -> String {
        let mut s = String::from("key\tcount\n");
        for (k, c) in &self.summary.histogram {
            let key: Vec<String> = k.iter().map(u64::to_string).collect();
            writeln!(s, "{}\t{c}", key.join(",")).unwrap();
        }
        s
    }
}

pub fn run_simulate(a: &SimulateArgs) -> Result<SimulateReport> {
    let params = ModelParams::new(a.n, a.p.clone())?;
    if a.trials == 0 {
        return Err(crate::Error::InvalidParams("--trials must be at least 1".into()));
    }
    let mut projections = vec![a.projection, Projection::Single(Role::F), Projection::Single(Role::B)];
    let partner = match a.projection {
        Projection::Extended => Some(Projection::ExtendedSwapped),
        Projection::ExtendedSwapped => Some(Projection::Extended),
        _ => None,
    };
    projections.extend(partner);
    let start = Instant::now();
    let mut summaries = run_trials_multi(&params, a.trials, a.seed, &projections);
    eprintln!("simulate trials={} time={:.3?}", a.trials, start.elapsed());
    let partner_summary = partner.map(|_| summaries.pop().unwrap());
    let back = summaries.pop().unwrap();
    let forward = summaries.pop().unwrap();
    let summary = summaries.pop().unwrap();

    if a.trials == 1 {
        let g = gen_digraph(&params, &mut trial_rng(a.seed, 0));
        let r = dfs_classify(&g);
        let single = SingleTrial {
            arcs: g.to_one_based(),
            tally: r.tally,
            tree_sizes: r.tree_sizes,
            discovery_order: r.discovery_order.iter().map(|v| v + 1).collect(),
        };
        return Ok(SimulateReport {
            summary,
            goodness_of_fit: None,
            forward_back_means: None,
            swapped_comparison: None,
            single_trial: Some(single),
            pass: true,
        });
    }

    let goodness_of_fit = match a.projection {
        Projection::Single(role) => {
            let exact = dist_coeffs(&pgf_arc_count(&params, role)?, a.kmax)?;
            Some(compare_empirical(&summary, &exact, a.alpha)?)
        }
        _ => None,
    };
    let means = compare_means(&forward, 0, &back, 0, 3.0);
    let swapped_comparison = match &partner_summary {
        Some(other) => Some(compare_two_samples(&summary, other, a.alpha)?),
        None => None,
    };
    let pass = goodness_of_fit.as_ref().is_none_or(|g| g.pass)
        && means.pass
        && swapped_comparison.as_ref().is_none_or(|t| t.pass);
    Ok(SimulateReport {
        summary,
        goodness_of_fit,
        forward_back_means: Some(means),
        swapped_comparison,
        single_trial: None,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub max_arcs: usize,
    pub tree_instances: u64,
    pub forest_instances: u64,
    pub tree: SeriesComparison,
    pub forest: SeriesComparison,
}

impl Report for OracleReport {
    fn passed(&self) -> bool {
        self.tree.matches() && self.forest.matches()
    }

    fn text(&self) -> String {
        let line = |name: &str, instances: u64, c: &SeriesComparison| {
            let detail = match &c.first_mismatch {
                None => String::new(),
                Some(m) => format!(
                    " first mismatch at {:?}: enumerated {} series {}",
                    m.tally.as_array(),
                    m.enumerated,
                    m.series
                ),
            };
            format!(
                "{name}: {instances} instances, {} coefficients to degree {} {}{detail}\n",
                c.coefficients_checked,
                c.bound,
                verdict(c.matches())
            )
        };
        let mut s = format!("n={} max_arcs={}\n", self.n, self.max_arcs);
        s += &line(&format!("G_{}", self.n), self.tree_instances, &self.tree);
        s += &line(&format!("F_{}", self.n), self.forest_instances, &self.forest);
        s
    }

    fn json(&self) -> String {
        to_json(self)
    }

    fn tsv(&self) -> String {
        format!(
            "function\tinstances\tcoefficients\tbound\tmatch\nG\t{}\t{}\t{}\t{}\nF\t{}\t{}\t{}\t{}\n",
            self.tree_instances,
            self.tree.coefficients_checked,
            self.tree.bound,
            self.tree.matches(),
            self.forest_instances,
            self.forest.coefficients_checked,
            self.forest.bound,
            self.forest.matches()
        )
    }
}

pub fn run_oracle(n: usize, max_arcs: usize) -> Result<OracleReport> {
    let tree_counter = enumerate_tree_instances(n, max_arcs)?;
    let forest_counter = enumerate_forest_instances(n, max_arcs)?;
    let mut rec = Recursions::default();
    let g = rec.g.get(n);
    let tree = compare_series(&tree_counter, &tree_graded(&g, n), max_arcs)?;
    let forest = compare_series(&forest_counter, &compose_graded(n, &mut rec.g), max_arcs)?;
    Ok(OracleReport {
        n,
        max_arcs,
        tree_instances: tree_counter.instances(),
        forest_instances: forest_counter.instances(),
        tree,
        forest,
    })
}
