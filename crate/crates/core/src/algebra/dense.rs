//! Dense coefficient buffers over the simplex `{total degree ≤ D}` of a set
//! of active variables.
//!
//! The numerators of the recursions fill that simplex almost completely, and
//! bringing a summand to the common denominator multiplies it by dozens of
//! linear forms in a row. On a dense buffer laid out by increasing degree,
//! multiplication by `1 − Σ a_v·v` is an in-place stencil: sweeping indices
//! downward, entry `M` only reads entries `M − e_v` of lower degree, which
//! are still unmodified.

use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use super::linear::LinearForm;
use super::monomial::{Monomial, Var};
use super::poly::Polynomial;
use super::rational::Coeff;

const NONE: u32 = u32::MAX;

pub(crate) struct SimplexLayout {
    vars: Vec<Var>,
    monos: Vec<Monomial>,
    /// `layer_end[d]` = one past the last index of degree `d`
    layer_end: Vec<usize>,
    /// `neighbors[v][i]` = index of `monos[i] / v`, or `NONE`
    neighbors: [Vec<u32>; 4],
    index: FxHashMap<Monomial, u32>,
}

impl SimplexLayout {
    fn build(vars: Vec<Var>, degree: u32) -> Self {
        let mut monos = Vec::new();
        let mut layer_end = Vec::with_capacity(degree as usize + 1);
        for d in 0..=degree {
            push_compositions(&vars, d, &mut [0; 4], 0, &mut monos);
            layer_end.push(monos.len());
        }
        let index: FxHashMap<Monomial, u32> =
            monos.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let neighbors = Var::ALL.map(|v| {
            if !vars.contains(&v) {
                return Vec::new();
            }
            let e = Monomial::var(v);
            monos.iter().map(|m| m.div(e).map_or(NONE, |q| index[&q])).collect()
        });
        SimplexLayout { vars, monos, layer_end, neighbors, index }
    }

    /// Shared layout for the given variables and degree.
    fn get(vars: Vec<Var>, degree: u32) -> Arc<SimplexLayout> {
        type Cache = Mutex<FxHashMap<(Vec<Var>, u32), Arc<SimplexLayout>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (vars.clone(), degree);
        if let Some(l) = cache.lock().unwrap().get(&key) {
            return l.clone();
        }
        let layout = Arc::new(SimplexLayout::build(vars, degree));
        let mut guard = cache.lock().unwrap();
        // keep the cache small: layouts for old degrees are not revisited
        if guard.len() > 8 {
            guard.clear();
        }
        guard.insert(key, layout.clone());
        layout
    }

    pub(crate) fn size(vars: usize, degree: u32) -> u128 {
        // C(degree + vars, vars)
        let mut acc: u128 = 1;
        for i in 1..=vars as u128 {
            acc = acc * (degree as u128 + i) / i;
        }
        acc
    }
}

fn push_compositions(vars: &[Var], left: u32, exps: &mut [u32; 4], k: usize, out: &mut Vec<Monomial>) {
    if k + 1 == vars.len() {
        exps[vars[k].index()] = left;
        out.push(Monomial::new(*exps));
        exps[vars[k].index()] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[vars[k].index()] = e;
        push_compositions(vars, left - e, exps, k + 1, out);
    }
    exps[vars[k].index()] = 0;
}

pub(crate) struct DenseSimplex<C> {
    layout: Arc<SimplexLayout>,
    coeffs: Vec<C>,
    degree: u32,
}

impl<C: Coeff> DenseSimplex<C> {
    pub(crate) fn zeros(vars: Vec<Var>, max_degree: u32) -> Self {
        let layout = SimplexLayout::get(vars, max_degree);
        let coeffs = vec![C::zero(); layout.monos.len()];
        DenseSimplex { layout, coeffs, degree: 0 }
    }

    /// Panics if `p` uses a variable outside the layout or exceeds its degree.
    pub(crate) fn load(&mut self, p: &Polynomial<C>) {
        for c in self.coeffs.iter_mut() {
            if !c.is_zero() {
                *c = C::zero();
            }
        }
        for (m, c) in p.terms() {
            self.coeffs[self.layout.index[m] as usize] = c.clone();
        }
        self.degree = p.degree().unwrap_or(0);
    }

    pub(crate) fn mul_linear(&mut self, form: &LinearForm) {
        let new_degree = self.degree + 1;
        let end = self.layout.layer_end[new_degree as usize];
        let mut scratch = C::zero();
        let active: Vec<(usize, u32)> = self
            .layout
            .vars
            .iter()
            .filter_map(|&v| {
                let a = form.coeff(v);
                (a != 0).then_some((v.index(), a))
            })
            .collect();
        debug_assert!(Var::ALL.iter().all(|&v| form.coeff(v) == 0 || self.layout.vars.contains(&v)));
        for i in (0..end).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            let target = &mut hi[0];
            for &(v, a) in &active {
                let j = self.layout.neighbors[v][i];
                if j == NONE {
                    continue;
                }
                let src = &lo[j as usize];
                if src.is_zero() {
                    continue;
                }
                target.sub_mul_small(src, a, &mut scratch);
            }
        }
        self.degree = new_degree;
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        debug_assert!(Arc::ptr_eq(&self.layout, &other.layout));
        let top = self.layout.layer_end[other.degree as usize];
        for (a, b) in self.coeffs[..top].iter_mut().zip(&other.coeffs[..top]) {
            if !b.is_zero() {
                a.add_assign_ref(b);
            }
        }
        self.degree = self.degree.max(other.degree);
    }

    fn add_sparse(&mut self, p: &Polynomial<C>) {
        for (m, c) in p.terms() {
            self.coeffs[self.layout.index[m] as usize].add_assign_ref(c);
        }
        self.degree = self.degree.max(p.degree().unwrap_or(0));
    }

    pub(crate) fn to_sparse(&self) -> Polynomial<C> {
        let top = self.layout.layer_end[self.degree as usize];
        let terms = self.layout.monos[..top]
            .iter()
            .zip(&self.coeffs[..top])
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Polynomial::from_terms(terms)
    }
}

/// `Σ p_i · ∏ forms_i` on dense buffers.
///
/// A form shared by several summands is applied once to their partial sum:
/// the form occurring in the most pending summands is split off, the
/// summands containing it are combined recursively, and the result is
/// multiplied by it. `None` stands for zero.
pub(crate) fn dense_lift_sum<C: Coeff>(
    vars: &[Var],
    degree: u32,
    mut items: Vec<(&Polynomial<C>, Vec<LinearForm>)>,
) -> Option<DenseSimplex<C>> {
    let mut acc: Option<DenseSimplex<C>> = None;
    let add = |acc: &mut Option<DenseSimplex<C>>, d: DenseSimplex<C>| match acc {
        Some(a) => a.add_assign(&d),
        None => *acc = Some(d),
    };
    items.retain(|(p, forms)| {
        if !forms.is_empty() {
            return true;
        }
        match &mut acc {
            Some(a) => a.add_sparse(p),
            None => {
                let mut d = DenseSimplex::zeros(vars.to_vec(), degree);
                d.load(p);
                acc = Some(d);
            }
        }
        false
    });
    while !items.is_empty() {
        let mut counts: FxHashMap<LinearForm, usize> = FxHashMap::default();
        for (_, forms) in &items {
            let mut seen = forms.clone();
            seen.sort_unstable();
            seen.dedup();
            for f in seen {
                *counts.entry(f).or_insert(0) += 1;
            }
        }
        let (&best, _) = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).unwrap();
        let (mut with, rest): (Vec<_>, Vec<_>) =
            items.into_iter().partition(|(_, forms)| forms.contains(&best));
        items = rest;
        for (_, forms) in with.iter_mut() {
            let i = forms.iter().position(|f| *f == best).unwrap();
            forms.swap_remove(i);
        }
        if let Some(mut d) = dense_lift_sum(vars, degree, with) {
            d.mul_linear(&best);
            add(&mut acc, d);
        }
    }
    acc
}
