//! The tree generating functions and their verification predicates.
//!
//! Every family starts from `1/(1−w)` (a root that only emits loops) and
//! builds size `n` from a split into a first part of size `m` and a second
//! part of size `n − m`:
//!
//! | family   | new factor        | first part            | second part                    |
//! |----------|-------------------|-----------------------|--------------------------------|
//! | `G`      | `1 − w − (n−1)x`  | `G_m(w)`              | `G_{n−m}(w + y + (m−1)z)`      |
//! | `GX`     | `1 − w − (n−1)x`  | `ĞX_m(w)`             | `ĞX_{n−m}(w + m·z)`            |
//! | `GY`     | `1 − w − (n−1)z`  | `ĞY_m(w)`             | `ĞY_{n−m}(w + x + (m−1)z)`     |
//! | `GYAlt`  | `1 − w`           | `ĞY_m(w + x)`         | `ĞY_{n−m}(w + m·z)`            |
//!
//! `GX` and `GY` are functions of `(w, x, z)` only; `GYAlt` is a second,
//! independent recursion for the same function as `GY`.

mod tracked;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{IntRationalFunction, LinearForm, ShiftSubstitution, Var};

pub use tracked::{Affine, TrackedContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    G,
    GX,
    GY,
    GYAlt,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::G => "G",
            Family::GX => "GX",
            Family::GY => "GY",
            Family::GYAlt => "GY_alt",
        };
        f.write_str(s)
    }
}

impl Family {
    /// The factor contributed at size `n`.
    fn new_factor(self, n: usize) -> LinearForm {
        let k = (n - 1) as u32;
        match self {
            Family::G | Family::GX => LinearForm::unit_w(k, 0, 0),
            Family::GY => LinearForm::unit_w(0, 0, k),
            Family::GYAlt => LinearForm::unit_w(0, 0, 0),
        }
    }

    /// Shifts applied to the first and second part for split `m`.
    fn shifts(self, m: usize) -> (ShiftSubstitution, ShiftSubstitution) {
        let m = m as u32;
        let none = ShiftSubstitution::default();
        match self {
            Family::G => (none, ShiftSubstitution::new(0, 1, m - 1)),
            Family::GX => (none, ShiftSubstitution::new(0, 0, m)),
            Family::GY => (none, ShiftSubstitution::new(1, 0, m - 1)),
            Family::GYAlt => (ShiftSubstitution::new(1, 0, 0), ShiftSubstitution::new(0, 0, m)),
        }
    }
}

/// Size statistics of one table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EntryStats {
    pub numerator_terms: usize,
    pub numerator_degree: u32,
    pub factors: u32,
    pub distinct_factors: usize,
}

impl EntryStats {
    pub fn of(f: &IntRationalFunction) -> Self {
        EntryStats {
            numerator_terms: f.numerator().len(),
            numerator_degree: f.numerator().degree().unwrap_or(0),
            factors: f.factor_count(),
            distinct_factors: f.distinct_factor_count(),
        }
    }
}

/// Append-only memo table of one family; entry `n` is computed once from
/// entries `< n`, which are read concurrently.
#[derive(Clone)]
pub struct GTable {
    family: Family,
    reduce: bool,
    entries: Vec<Arc<IntRationalFunction>>,
}

impl GTable {
    pub fn new(family: Family) -> Self {
        GTable { family, reduce: false, entries: Vec::new() }
    }

    /// Enables cancellation of denominator factors that divide the
    /// numerator after each step.
    pub fn with_reduction(mut self, reduce: bool) -> Self {
        self.reduce = reduce;
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Largest `n` computed so far.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry `n` if already computed.
    pub fn cached(&self, n: usize) -> Option<&Arc<IntRationalFunction>> {
        n.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    /// Entry `n ≥ 1`, computing all missing entries up to `n`.
    pub fn get(&mut self, n: usize) -> Arc<IntRationalFunction> {
        assert!(n >= 1, "generating functions are indexed from n = 1");
        while self.entries.len() < n {
            let next = self.entries.len() + 1;
            let f = self.step(next);
            self.entries.push(Arc::new(f));
        }
        self.entries[n - 1].clone()
    }

    fn step(&self, n: usize) -> IntRationalFunction {
        if n == 1 {
            return IntRationalFunction::inverse_of(LinearForm::unit_w(0, 0, 0));
        }
        let base = &self.entries;
        let family = self.family;
        let summands: Vec<IntRationalFunction> = (1..n)
            .into_par_iter()
            .map(|m| {
                let (s1, s2) = family.shifts(m);
                base[m - 1].shift(s1).mul(&base[n - m - 1].shift(s2))
            })
            .collect();
        let refs: Vec<&IntRationalFunction> = summands.iter().collect();
        let f = IntRationalFunction::sum(&refs).scale_inverse(family.new_factor(n));
        if self.reduce {
            f.reduce()
        } else {
            f
        }
    }

    pub fn stats(&mut self, n: usize) -> EntryStats {
        EntryStats::of(&self.get(n))
    }
}

/// `G_n(w,x,y,z)`
pub fn compute_g(n: usize, table: &mut GTable) -> Arc<IntRationalFunction> {
    assert_eq!(table.family(), Family::G);
    table.get(n)
}

/// `ĞX_n(w,x,z)`
pub fn compute_gx(n: usize, table: &mut GTable) -> Arc<IntRationalFunction> {
    assert_eq!(table.family(), Family::GX);
    table.get(n)
}

/// `ĞY_n(w,x,z)`
pub fn compute_gy(n: usize, table: &mut GTable) -> Arc<IntRationalFunction> {
    assert_eq!(table.family(), Family::GY);
    table.get(n)
}

/// `ĞY_n(w,x,z)` by the alternate recursion.
pub fn compute_gy_alt(n: usize, table: &mut GTable) -> Arc<IntRationalFunction> {
    assert_eq!(table.family(), Family::GYAlt);
    table.get(n)
}

/// `G_n(w,x,z,z)`: the specialization that should equal `ĞX_n`.
pub fn specialize_g_to_gx(g: &IntRationalFunction) -> IntRationalFunction {
    g.identify_y_to_z()
}

/// `G_n(w,z,x,z)`: the specialization that should equal `ĞY_n`.
pub fn specialize_g_to_gy(g: &IntRationalFunction) -> IntRationalFunction {
    g.rename([Var::W, Var::Z, Var::X, Var::Z])
}

/// `G_n(w,y,x,z)`: forward and back variables exchanged.
pub fn swap_forward_back(g: &IntRationalFunction) -> IntRationalFunction {
    g.rename([Var::W, Var::Y, Var::X, Var::Z])
}

/// All four tables plus the verification predicates.
#[derive(Clone)]
pub struct Recursions {
    pub g: GTable,
    pub gx: GTable,
    pub gy: GTable,
    pub gy_alt: GTable,
}

impl Default for Recursions {
    fn default() -> Self {
        Self::new(false)
    }
}

impl Recursions {
    pub fn new(reduce: bool) -> Self {
        Recursions {
            g: GTable::new(Family::G).with_reduction(reduce),
            gx: GTable::new(Family::GX).with_reduction(reduce),
            gy: GTable::new(Family::GY).with_reduction(reduce),
            gy_alt: GTable::new(Family::GYAlt).with_reduction(reduce),
        }
    }

    pub fn table(&mut self, family: Family) -> &mut GTable {
        match family {
            Family::G => &mut self.g,
            Family::GX => &mut self.gx,
            Family::GY => &mut self.gy,
            Family::GYAlt => &mut self.gy_alt,
        }
    }

    /// `ĞX_n = ĞY_n` identically: the joint law of `(L, F, B+C, T)` equals
    /// that of `(L, B, F+C, T)` at size `n`.
    pub fn verify_extended(&mut self, n: usize) -> bool {
        let (gx, gy) = rayon::join(|| self.gx.get(n), || self.gy.get(n));
        gx.equals(&gy)
    }

    /// `ĞX_n(w,x,w) = ĞY_n(w,x,w)`: forward and back arcs equidistributed.
    pub fn verify_knuth(&mut self, n: usize) -> bool {
        let (gx, gy) = rayon::join(|| self.gx.get(n), || self.gy.get(n));
        gx.identify_z_to_w().equals(&gy.identify_z_to_w())
    }

    /// `ĞY_n` from its two recursions agree.
    pub fn check_gy_recursions(&mut self, n: usize) -> bool {
        let (a, b) = rayon::join(|| self.gy.get(n), || self.gy_alt.get(n));
        a.equals(&b)
    }

    /// `ĞX_n = G_n(w,x,z,z)`
    pub fn check_gx_specialization(&mut self, n: usize) -> bool {
        let (g, gx) = rayon::join(|| self.g.get(n), || self.gx.get(n));
        specialize_g_to_gx(&g).equals(&gx)
    }

    /// `ĞY_n = G_n(w,z,x,z)`
    pub fn check_gy_specialization(&mut self, n: usize) -> bool {
        let (g, gy) = rayon::join(|| self.g.get(n), || self.gy.get(n));
        specialize_g_to_gy(&g).equals(&gy)
    }

    /// Whether `G_n(w,x,y,z) = G_n(w,y,x,z)`.
    pub fn g_symmetric_in_forward_back(&mut self, n: usize) -> bool {
        let g = self.g.get(n);
        g.equals(&swap_forward_back(&g))
    }
}

/// Unfolds the `G` recursion into its sum over ordered trees: one product of
/// linear factors per tree, without bringing anything to a common
/// denominator. Exponential in `n`; meant for small structural checks.
pub fn expand_over_trees(n: usize) -> Vec<Vec<LinearForm>> {
    fn go(n: usize, shift: ShiftSubstitution) -> Vec<Vec<LinearForm>> {
        let root = LinearForm::unit_w(0, 0, 0).shift(shift);
        if n == 1 {
            return vec![vec![root]];
        }
        let mut out = Vec::new();
        let top = Family::G.new_factor(n).shift(shift);
        for m in 1..n {
            let (_, s2) = Family::G.shifts(m);
            let firsts = go(m, shift);
            let seconds = go(n - m, shift + s2);
            for a in &firsts {
                for b in &seconds {
                    let mut prod = Vec::with_capacity(2 * n - 1);
                    prod.push(top);
                    prod.extend_from_slice(a);
                    prod.extend_from_slice(b);
                    out.push(prod);
                }
            }
        }
        out
    }
    go(n, ShiftSubstitution::default())
}

#[cfg(test)]
mod tests;
