//! The whole-digraph generating function `F_n` and exact arc-count laws.
//!
//! A DFS instance on labels `1..n` is a sequence of trees. The first tree has
//! the smallest label as root and some set of `m − 1` further labels visited
//! in some order, `(j−1)!/(j−m)!` choices when `j` labels remain; every
//! later tree additionally sees the `m` finished vertices as cross targets,
//! which shifts `w` by `m·z`. With `H_0 = 1`,
//!
//! ```text
//! H_j(w) = Σ_{m=1..j} (j−1)!/(j−m)! · t^{m−1} · G_m(w) · H_{j−m}(w + m·z)
//! ```
//!
//! and `F_n = H_n`. Substituting `p/n` for every variable and multiplying by
//! `(1−p)^n` gives the joint probability generating function of
//! `(L, F, B, C, T)`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::algebra::{
    format_rational, Integer, IntRationalFunction, Polynomial, Rational, RationalFunction,
    ShiftSubstitution, UniPoly, UniRationalFunction, Var,
};
use crate::arcs::Role;
use crate::error::{Error, Result};
use crate::recursions::{Affine, GTable, Recursions, TrackedContext};

/// Vertex count and the outdegree parameter: `P(outdegree = k) = p^k (1 − p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    n: usize,
    p: Rational,
}

impl ModelParams {
    pub fn new(n: usize, p: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if p <= Rational::zero() || p >= Rational::one() {
            return Err(Error::InvalidParams(format!("p = {} is not in (0, 1)", format_rational(&p))));
        }
        Ok(ModelParams { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// Weight `p/n` of a single arc with a fixed target.
    pub fn arc_weight(&self) -> Rational {
        &self.p / Rational::from_integer((self.n as i64).into())
    }

    /// `(1 − p)^n`, the probability that every vertex stops immediately.
    pub fn stop_weight(&self) -> Rational {
        let q = Rational::one() - &self.p;
        (0..self.n).fold(Rational::one(), |acc, _| acc * &q)
    }
}

/// `(j−1)! / (j−m)!`: label assignments for a first tree of size `m` when
/// `j` labels remain.
pub fn label_assignments(j: usize, m: usize) -> Integer {
    assert!(1 <= m && m <= j);
    ((j - m + 1)..j).fold(Integer::one(), |acc, k| acc * Integer::from(k))
}

/// `F_n` split by the number of tree arcs: entry `T` is the coefficient of
/// `t^T`, for `T = 0..n−1`.
///
/// Works for any family table. With the `GX` (or `GY`) table the result is
/// `F_n(w,x,z,z,t)` (or `F_n(w,z,x,z,t)`), since both identifications
/// commute with the shifts `w ↦ w + m·z`.
pub fn compose_graded(n: usize, table: &mut GTable) -> Vec<IntRationalFunction> {
    assert!(n >= 1);
    let g: Vec<Arc<IntRationalFunction>> = (1..=n).map(|m| table.get(m)).collect();
    // h[j][T]
    let mut h: Vec<Vec<IntRationalFunction>> = vec![vec![IntRationalFunction::one()]];
    for j in 1..=n {
        let mut grades: Vec<Vec<IntRationalFunction>> = vec![Vec::new(); j];
        for m in 1..=j {
            let mult = label_assignments(j, m);
            let shift = ShiftSubstitution::new(0, 0, m as u32);
            for (k, rest) in h[j - m].iter().enumerate() {
                if rest.is_zero() {
                    continue;
                }
                let term = g[m - 1].mul(&rest.shift(shift)).scale(&mult);
                grades[k + m - 1].push(term);
            }
        }
        let row = grades
            .iter()
            .map(|parts| IntRationalFunction::sum(&parts.iter().collect::<Vec<_>>()))
            .collect();
        h.push(row);
    }
    h.pop().unwrap()
}

/// `F_n(w,x,y,z,t)` with `t` bound to a rational.
pub fn compose_f_symbolic(n: usize, t: &Rational, table: &mut GTable) -> RationalFunction<Rational> {
    let graded = compose_graded(n, table);
    let mut power = Rational::one();
    let mut parts = Vec::with_capacity(graded.len());
    for f in &graded {
        parts.push(f.to_rational().scale(&power));
        power *= t;
    }
    RationalFunction::sum(&parts.iter().collect::<Vec<_>>())
}

/// `(1 − p)^n · F_n` at every variable `= p/n` from the symbolic
/// composition. `F_n(w,x,z,z,t)` suffices because `y` and `z` take the same
/// value, so the cheaper `GX` table is used.
pub fn total_probability_symbolic(params: &ModelParams, gx: &mut GTable) -> Result<Rational> {
    let a = params.arc_weight();
    let point = [a.clone(), a.clone(), a.clone(), a.clone()];
    let mut total = Rational::zero();
    let mut power = Rational::one();
    for f in compose_graded(params.n, gx) {
        total += f.eval(&point)? * &power;
        power *= &a;
    }
    Ok(total * params.stop_weight())
}

/// The law of one arc count, as the univariate function `E[s^count]`.
#[derive(Clone, Debug)]
pub struct PgfResult {
    pub role: Role,
    pub function: UniRationalFunction,
    pub params: ModelParams,
}

/// Univariate evaluation of the composition, with `G_m` from the tracked
/// recursion.
struct TrackedForest {
    ctx: TrackedContext,
    t: Affine,
    z: Affine,
    memo: HashMap<(usize, Affine), Arc<UniRationalFunction>>,
}

impl TrackedForest {
    fn new(params: &ModelParams, role: Option<Role>) -> Self {
        let a = params.arc_weight();
        let tracked = role.and_then(Role::var);
        let ctx = TrackedContext::new(tracked, [a.clone(), a.clone(), a.clone(), a.clone()]);
        let t = if role == Some(Role::T) { Affine::linear(a) } else { Affine::constant(a) };
        let z = ctx.value(Var::Z);
        TrackedForest { ctx, t, z, memo: HashMap::new() }
    }

    fn h(&mut self, j: usize, w: &Affine) -> Result<Arc<UniRationalFunction>> {
        if j == 0 {
            return Ok(Arc::new(UniRationalFunction::one()));
        }
        let key = (j, w.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let t = UniPoly::new(vec![self.t.constant.clone(), self.t.slope.clone()]);
        let mut t_pow = UniPoly::constant(Rational::one());
        let mut terms = Vec::with_capacity(j);
        for m in 1..=j {
            let g = self.ctx.g(m, w)?;
            let rest = self.h(j - m, &w.add(&self.z.scale(m as i64)))?;
            let mult = Rational::from_integer(label_assignments(j, m));
            terms.push(g.mul(&rest).mul_poly(&t_pow.scale(&mult)));
            t_pow = t_pow.mul(&t);
        }
        let f = Arc::new(UniRationalFunction::sum(&terms.iter().collect::<Vec<_>>()));
        self.memo.insert(key, f.clone());
        Ok(f)
    }

    fn pgf(&mut self, params: &ModelParams) -> Result<UniRationalFunction> {
        let w = self.ctx.value(Var::W);
        Ok(self.h(params.n, &w)?.scale(&params.stop_weight()))
    }
}

/// `E[s^count]` for the chosen arc count.
pub fn pgf_arc_count(params: &ModelParams, role: Role) -> Result<PgfResult> {
    let function = TrackedForest::new(params, Some(role)).pgf(params)?;
    Ok(PgfResult { role, function, params: params.clone() })
}

/// `(1 − p)^n · F_n(p/n, …, p/n)` from the numeric composition.
pub fn total_probability(params: &ModelParams) -> Result<Rational> {
    TrackedForest::new(params, None).pgf(params)?.eval(&Rational::one())
}

/// Exact `E[count]`, the derivative of the generating function at 1.
pub fn mean_arc_count(params: &ModelParams, role: Role) -> Result<Rational> {
    pgf_arc_count(params, role)?.function.derivative_at(&Rational::one())
}

/// `P(count = k)` for `k ≤ kmax` plus the remaining mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    pub p: Rational,
    pub role: Role,
    pub probs: Vec<Rational>,
    pub tail: Rational,
}

impl DistributionTable {
    pub fn prob(&self, k: usize) -> Rational {
        self.probs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn kmax(&self) -> usize {
        self.probs.len().saturating_sub(1)
    }

    /// Tab-separated `k`, `prob` rows under a header, then a `tail` row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("k\tprob\n");
        for (k, p) in self.probs.iter().enumerate() {
            writeln!(out, "{k}\t{}", format_rational(p)).unwrap();
        }
        writeln!(out, "tail\t{}", format_rational(&self.tail)).unwrap();
        out
    }
}

impl Serialize for DistributionTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            k: usize,
            prob: String,
        }
        let coeffs: Vec<Entry> = self
            .probs
            .iter()
            .enumerate()
            .map(|(k, p)| Entry { k, prob: format_rational(p) })
            .collect();
        let mut st = s.serialize_struct("DistributionTable", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("p", &format_rational(&self.p))?;
        st.serialize_field("role", &self.role.to_string())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("tail", &format_rational(&self.tail))?;
        st.end()
    }
}

pub fn dist_coeffs(pgf: &PgfResult, kmax: usize) -> Result<DistributionTable> {
    let probs = pgf.function.series(kmax)?;
    let tail = probs.iter().fold(Rational::one(), |acc, p| acc - p);
    Ok(DistributionTable { n: pgf.params.n, p: pgf.params.p.clone(), role: pgf.role, probs, tail })
}

/// Whether `F` and `B` have the same law at these parameters.
pub fn verify_forward_back_law(params: &ModelParams) -> Result<bool> {
    let f = pgf_arc_count(params, Role::F)?;
    let b = pgf_arc_count(params, Role::B)?;
    Ok(f.function.equals(&b.function))
}

/// Whether `(L, F, B+C, T)` and `(L, B, F+C, T)` have the same joint law on
/// `n` vertices, i.e. `F_n(w,x,z,z,t) = F_n(w,z,x,z,t)` grade by grade in
/// `t`. The identity does not involve `p`. With a degree bound only Taylor
/// coefficients up to that total degree in `w, x, z` are compared.
pub fn verify_joint_law(n: usize, bound: Option<u32>, rec: &mut Recursions) -> bool {
    let lhs = compose_graded(n, &mut rec.gx);
    let rhs = compose_graded(n, &mut rec.gy);
    lhs.iter().zip(&rhs).all(|(a, b)| match bound {
        None => a.equals(b),
        Some(d) => a.truncated_series(d) == b.truncated_series(d),
    })
}

/// Coefficients of the graded function, `t^T` times a polynomial in
/// `w, x, y, z`, through total degree `bound` (counting `T`).
pub fn graded_series(graded: &[IntRationalFunction], bound: u32) -> Vec<Polynomial<Integer>> {
    graded
        .iter()
        .enumerate()
        .map(|(t, f)| match bound.checked_sub(t as u32) {
            Some(d) => f.truncated_series(d),
            None => Polynomial::zero(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, LinearForm};
    use crate::recursions::Family;

    fn params(n: usize, a: i64, b: i64) -> ModelParams {
        ModelParams::new(n, ratio(a, b)).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ModelParams::new(0, ratio(1, 2)).is_err());
        assert!(ModelParams::new(3, ratio(1, 1)).is_err());
        assert!(ModelParams::new(3, ratio(0, 1)).is_err());
    }

    #[test]
    fn label_counts() {
        assert_eq!(label_assignments(1, 1), Integer::from(1));
        assert_eq!(label_assignments(4, 1), Integer::from(1));
        assert_eq!(label_assignments(4, 4), Integer::from(6));
        assert_eq!(label_assignments(5, 3), Integer::from(12));
    }

    #[test]
    fn two_vertex_composition() {
        let mut g = GTable::new(Family::G);
        let f = compose_graded(2, &mut g);
        let one_tree = IntRationalFunction::new(
            Polynomial::one(),
            [(LinearForm::unit_w(1, 0, 0), 1), (LinearForm::unit_w(0, 0, 0), 1), (LinearForm::unit_w(0, 1, 0), 1)],
        );
        let two_trees = IntRationalFunction::new(
            Polynomial::one(),
            [(LinearForm::unit_w(0, 0, 0), 1), (LinearForm::unit_w(0, 0, 1), 1)],
        );
        assert!(f[0].equals(&two_trees));
        assert!(f[1].equals(&one_tree));
        let at_one = compose_f_symbolic(2, &Rational::one(), &mut g);
        assert!(at_one.equals(&one_tree.add(&two_trees).to_rational()));
    }

    #[test]
    fn single_vertex_laws() {
        let pr = params(1, 1, 2);
        assert!(pgf_arc_count(&pr, Role::F).unwrap().function.equals(&UniRationalFunction::one()));
        let l = pgf_arc_count(&pr, Role::L).unwrap();
        let expected = UniRationalFunction::inverse_affine(&Rational::one(), &ratio(-1, 2))
            .unwrap()
            .scale(&ratio(1, 2));
        assert!(l.function.equals(&expected));
        let table = dist_coeffs(&l, 2).unwrap();
        assert_eq!(table.probs, vec![ratio(1, 2), ratio(1, 4), ratio(1, 8)]);
        assert_eq!(table.tail, ratio(1, 8));
        assert_eq!(mean_arc_count(&pr, Role::L).unwrap(), Rational::one());
        let f = dist_coeffs(&pgf_arc_count(&params(1, 2, 7), Role::F).unwrap(), 3).unwrap();
        assert_eq!(f.probs, vec![Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()]);
        assert!(f.tail.is_zero());
    }

    #[test]
    fn total_probability_both_routes() {
        let mut gx = GTable::new(Family::GX);
        for n in 1..=5 {
            for (a, b) in [(1, 4), (1, 2), (3, 4)] {
                let pr = params(n, a, b);
                assert_eq!(total_probability(&pr).unwrap(), Rational::one(), "n={n} p={a}/{b}");
                assert_eq!(total_probability_symbolic(&pr, &mut gx).unwrap(), Rational::one());
            }
        }
    }

    #[test]
    fn full_symbolic_composition_is_normalized() {
        let mut g = GTable::new(Family::G);
        for n in 1..=4 {
            let pr = params(n, 1, 3);
            let a = pr.arc_weight();
            let f = compose_f_symbolic(n, &a, &mut g);
            let v = f.eval(&[a.clone(), a.clone(), a.clone(), a.clone()]).unwrap();
            assert_eq!(v * pr.stop_weight(), Rational::one());
        }
    }

    #[test]
    fn every_pgf_is_normalized() {
        for n in 1..=4 {
            let pr = params(n, 2, 5);
            for role in Role::ALL {
                let pgf = pgf_arc_count(&pr, role).unwrap();
                assert_eq!(pgf.function.eval(&Rational::one()).unwrap(), Rational::one());
                let table = dist_coeffs(&pgf, 6).unwrap();
                assert!(table.probs.iter().all(|p| *p >= Rational::zero()));
                assert!(table.tail >= Rational::zero());
            }
        }
    }

    #[test]
    fn tree_arc_count_is_bounded() {
        let pr = params(4, 1, 2);
        let t = dist_coeffs(&pgf_arc_count(&pr, Role::T).unwrap(), 5).unwrap();
        assert!(t.probs[4].is_zero() && t.probs[5].is_zero() && t.tail.is_zero());
    }

    #[test]
    fn small_identities() {
        let mut rec = Recursions::default();
        for n in 1..=4 {
            let pr = params(n, 1, 2);
            assert!(verify_forward_back_law(&pr).unwrap());
            assert!(verify_joint_law(n, None, &mut rec));
            assert!(verify_joint_law(n, Some(6), &mut rec));
            assert_eq!(mean_arc_count(&pr, Role::F).unwrap(), mean_arc_count(&pr, Role::B).unwrap());
            assert_eq!(mean_arc_count(&pr, Role::T).unwrap(), mean_arc_count(&pr, Role::C).unwrap());
        }
    }

    #[test]
    fn table_output_formats() {
        let table = dist_coeffs(&pgf_arc_count(&params(1, 1, 2), Role::L).unwrap(), 1).unwrap();
        assert_eq!(
            serde_json::to_string(&table).unwrap(),
            r#"{"n":1,"p":"1/2","role":"L","coeffs":[{"k":0,"prob":"1/2"},{"k":1,"prob":"1/4"}],"tail":"1/4"}"#
        );
        assert_eq!(table.to_tsv(), "k\tprob\n0\t1/2\n1\t1/4\ntail\t1/4\n");
    }
}
