//! Sparse polynomials in `w, x, y, z`.
//!
//! Terms live in a vector sorted by packed monomial with no zero
//! coefficients, so equality of polynomials is equality of term vectors.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use super::dense::{dense_lift_sum, SimplexLayout};
use super::linear::{LinearForm, ShiftSubstitution};
use super::monomial::{Monomial, Var};
use super::rational::{format_rational, Coeff, Integer, Rational};
use crate::error::{Error, Result};

/// Above this many coefficient products, multiplication and shifts fan out
/// over the rayon pool.
const PAR_WORK: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<C> {
    terms: Vec<(Monomial, C)>,
}

/// Polynomial over the rationals.
pub type SparsePolynomial = Polynomial<Rational>;
/// Polynomial over the integers, the working type of the recursions.
pub type IntPolynomial = Polynomial<Integer>;

impl<C: Coeff> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), C::one())
    }

    /// Builds a polynomial from arbitrary terms, combining repeats and
    /// dropping zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, C)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => lc.add_assign_ref(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if matches!(out.last(), Some((_, c)) if c.is_zero()) {
            out.pop();
        }
        Polynomial { terms: out }
    }

    fn from_map(map: FxHashMap<Monomial, C>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn coeff(&self, m: Monomial) -> C {
        match self.terms.binary_search_by_key(&m, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(Monomial::ONE)
    }

    /// Terms in graded lexicographic order (the serialization order).
    pub fn grlex_terms(&self) -> Vec<(Monomial, C)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| a.0.grlex_cmp(&b.0));
        t
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    pub fn to_rational(&self) -> SparsePolynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, c.to_rational())).collect() }
    }

    /// `self + scale · mono · other`, a single linear merge.
    pub fn add_scaled(&self, other: &Self, scale: &C, mono: Monomial) -> Self {
        if scale.is_zero() || other.is_zero() {
            return self.clone();
        }
        let scaled = |c: &C| if scale.is_one() { c.clone() } else { c.mul_ref(scale) };
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(mono);
            match a[i].0.cmp(&bm) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((bm, scaled(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    c.add_mul(&b[j].1, scale);
                    if !c.is_zero() {
                        out.push((bm, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.mul(mono), scaled(c))));
        Polynomial { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &C::one(), Monomial::ONE)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &C::one().neg_ref(), Monomial::ONE)
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, c.mul_ref(k))).collect() }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        Polynomial { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    /// Multiplies by `1 − a_w·w − a_x·x − a_y·y − a_z·z` with one merge per
    /// nonzero coefficient.
    pub fn mul_linear(&self, form: &LinearForm) -> Self {
        let mut acc = self.clone();
        for v in Var::ALL {
            let a = form.coeff(v);
            if a != 0 {
                acc = acc.add_scaled(self, &C::from_i64(-(a as i64)), Monomial::var(v));
            }
        }
        acc
    }

    /// Product with `∏ forms`.
    pub fn mul_linear_forms(&self, forms: &[LinearForm]) -> Self {
        lift_and_sum(&[(self, forms)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.is_zero() {
            return Self::zero();
        }
        if small.len() <= 4 {
            let mut acc = Self::zero();
            for (m, c) in &small.terms {
                acc = acc.add_scaled(big, c, *m);
            }
            return acc;
        }
        let work = small.len() * big.len();
        if work < PAR_WORK {
            return Self::from_map(mul_into_map(&small.terms, &big.terms));
        }
        let chunk = (PAR_WORK / big.len()).max(1);
        let parts: Vec<Self> = small
            .terms
            .par_chunks(chunk)
            .map(|part| Self::from_map(mul_into_map(part, &big.terms)))
            .collect();
        Self::sum_all(parts)
    }

    /// Sum of many polynomials by pairwise merging.
    pub fn sum_all(mut parts: Vec<Self>) -> Self {
        while parts.len() > 1 {
            let next: Vec<Self> = parts
                .par_chunks(2)
                .map(|pair| match pair {
                    [a, b] => a.add(b),
                    [a] => a.clone(),
                    _ => unreachable!(),
                })
                .collect();
            parts = next;
        }
        parts.pop().unwrap_or_else(Self::zero)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `w ↦ w + α·x + β·y + γ·z`, expanding by the binomial
    /// theorem in `w` and the multinomial expansion of the offset.
    pub fn shift(&self, s: ShiftSubstitution) -> Self {
        if s.is_identity() || self.is_zero() {
            return self.clone();
        }
        let dmax = self.degree_in(Var::W);
        // offset^k for k = 0..=dmax
        let mut offset_terms = Vec::new();
        for (v, a) in [(Var::X, s.alpha), (Var::Y, s.beta), (Var::Z, s.gamma)] {
            if a != 0 {
                offset_terms.push((Monomial::var(v), C::from_i64(a as i64)));
            }
        }
        let offset = Self::from_terms(offset_terms);
        let mut powers = Vec::with_capacity(dmax as usize + 1);
        powers.push(Self::one());
        for k in 1..=dmax as usize {
            let next = powers[k - 1].mul(&offset);
            powers.push(next);
        }
        let binom = binomial_rows::<C>(dmax);
        let expand = |part: &[(Monomial, C)]| {
            let mut map: FxHashMap<Monomial, C> = FxHashMap::default();
            for (m, c) in part {
                let i = m.exp(Var::W);
                let rest = m.without(Var::W);
                for k in 0..=i {
                    let base = rest.mul(Monomial::var_pow(Var::W, i - k));
                    let ck = c.mul_ref(&binom[i as usize][k as usize]);
                    for (om, oc) in &powers[k as usize].terms {
                        map.entry(base.mul(*om)).or_insert_with(C::zero).add_mul(&ck, oc);
                    }
                }
            }
            Self::from_map(map)
        };
        let work: usize = self.terms.iter().map(|t| t.0.exp(Var::W) as usize + 1).sum();
        if work < PAR_WORK {
            return expand(&self.terms);
        }
        let chunk = (self.len() * PAR_WORK / work).max(1);
        Self::sum_all(self.terms.par_chunks(chunk).map(expand).collect())
    }

    /// Renames variables: `targets[v]` receives the exponent of `v`.
    /// Identifications such as `z := w` merge exponents.
    pub fn rename(&self, targets: [Var; 4]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u32; 4];
                for v in Var::ALL {
                    e[targets[v.index()].index()] += m.exp(v);
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Self::from_terms(terms)
    }

    /// Merges `z` into `w`: the specialization `z = w`.
    pub fn identify_z_to_w(&self) -> Self {
        self.rename([Var::W, Var::X, Var::Y, Var::W])
    }

    /// Merges `y` into `z`: the specialization `y = z`.
    pub fn identify_y_to_z(&self) -> Self {
        self.rename([Var::W, Var::X, Var::Z, Var::Z])
    }

    /// Drops every term of total degree above `max`.
    pub fn truncate(&self, max: u32) -> Self {
        Polynomial {
            terms: self.terms.iter().filter(|t| t.0.degree() <= max).cloned().collect(),
        }
    }

    /// Product truncated to total degree `max`.
    pub fn mul_truncated(&self, other: &Self, max: u32) -> Self {
        let mut map: FxHashMap<Monomial, C> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > max {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() <= max {
                    map.entry(ma.mul(*mb)).or_insert_with(C::zero).add_mul(ca, cb);
                }
            }
        }
        Self::from_map(map)
    }

    /// Exact quotient by a linear form, or [`Error::NotDivisible`].
    ///
    /// Writing the form as `1 − ℓ` with `ℓ` homogeneous of degree one,
    /// `a = (1 − ℓ)·q` gives `q_d = a_d + ℓ·q_{d−1}` degree by degree; the
    /// division is exact iff the component at `deg a` vanishes.
    pub fn div_exact_linear(&self, form: &LinearForm) -> Result<Self> {
        let Some(top) = self.degree() else {
            return Ok(Self::zero());
        };
        let ell = Self::one().sub(&form.to_poly());
        let mut graded: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); top as usize + 1];
        for (m, c) in &self.terms {
            graded[m.degree() as usize].push((*m, c.clone()));
        }
        let mut quotient = Self::zero();
        let mut prev = Self::zero();
        for (d, part) in graded.into_iter().enumerate() {
            let qd = Polynomial { terms: part }.add(&prev.mul(&ell));
            if d == top as usize {
                return if qd.is_zero() { Ok(quotient) } else { Err(Error::NotDivisible) };
            }
            quotient = quotient.add(&qd);
            prev = qd;
        }
        unreachable!()
    }

    /// Exact value at a rational point.
    ///
    /// Works over a common denominator per variable so the inner loop is
    /// integer-only.
    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let maxe = Var::ALL.map(|v| self.degree_in(v));
        // table[v][e] = num_v^e * den_v^(maxe_v - e)
        let tables: Vec<Vec<BigInt>> = Var::ALL
            .iter()
            .map(|&v| {
                let e_max = maxe[v.index()] as usize;
                let n = point[v.index()].numer();
                let d = point[v.index()].denom();
                let mut num_pows = vec![BigInt::one()];
                let mut den_pows = vec![BigInt::one()];
                for k in 1..=e_max {
                    num_pows.push(&num_pows[k - 1] * n);
                    den_pows.push(&den_pows[k - 1] * d);
                }
                (0..=e_max).map(|e| &num_pows[e] * &den_pows[e_max - e]).collect()
            })
            .collect();
        let mut den_total = BigInt::one();
        for v in Var::ALL {
            den_total *= point[v.index()].denom().pow(maxe[v.index()]);
        }
        let mut acc = Rational::zero();
        let mut int_acc = BigInt::zero();
        let mut has_int = false;
        for (m, c) in &self.terms {
            let mut t = BigInt::one();
            for v in Var::ALL {
                t *= &tables[v.index()][m.exp(v) as usize];
            }
            let cr = c.to_rational();
            if cr.denom().is_one() {
                int_acc += t * cr.numer();
                has_int = true;
            } else {
                acc += cr * Rational::from_integer(t);
            }
        }
        if has_int {
            acc += Rational::from_integer(int_acc);
        }
        acc / Rational::from_integer(den_total)
    }
}

/// `Σ p_i · ∏ forms_i`: the numerator of a sum over a common denominator.
///
/// Large inputs go through a dense simplex buffer with in-place stencils;
/// small ones use sparse merges.
pub(crate) fn lift_and_sum<C: Coeff>(parts: &[(&Polynomial<C>, &[LinearForm])]) -> Polynomial<C> {
    let parts: Vec<_> = parts.iter().filter(|(p, _)| !p.is_zero()).collect();
    if parts.is_empty() {
        return Polynomial::zero();
    }
    let mut vars = Vec::new();
    for v in Var::ALL {
        let used = parts.iter().any(|(p, forms)| {
            p.degree_in(v) > 0 || forms.iter().any(|f| f.coeff(v) != 0)
        });
        if used {
            vars.push(v);
        }
    }
    let degree = parts
        .iter()
        .map(|(p, forms)| p.degree().unwrap_or(0) + forms.len() as u32)
        .max()
        .unwrap_or(0);
    let work: usize = parts.iter().map(|(p, forms)| p.len() * forms.len()).sum();
    let size = SimplexLayout::size(vars.len().max(1), degree);
    if vars.is_empty() || work < DENSE_MIN_WORK || size > DENSE_MAX_SIZE {
        let lifted: Vec<Polynomial<C>> = parts
            .par_iter()
            .map(|(p, forms)| forms.iter().fold((*p).clone(), |acc, f| acc.mul_linear(f)))
            .collect();
        return Polynomial::sum_all(lifted);
    }
    let items = parts.iter().map(|(p, forms)| (*p, forms.to_vec())).collect();
    dense_lift_sum(&vars, degree, items).map_or_else(Polynomial::zero, |d| d.to_sparse())
}

const DENSE_MIN_WORK: usize = 1 << 12;
const DENSE_MAX_SIZE: u128 = 1 << 25;

fn mul_into_map<C: Coeff>(a: &[(Monomial, C)], b: &[(Monomial, C)]) -> FxHashMap<Monomial, C> {
    let mut map: FxHashMap<Monomial, C> =
        FxHashMap::with_capacity_and_hasher(a.len() + b.len(), Default::default());
    for (ma, ca) in a {
        for (mb, cb) in b {
            map.entry(ma.mul(*mb)).or_insert_with(C::zero).add_mul(ca, cb);
        }
    }
    map
}

/// Rows `0..=n` of Pascal's triangle.
fn binomial_rows<C: Coeff>(n: u32) -> Vec<Vec<C>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=n as usize {
        let mut row = vec![BigInt::one(); i + 1];
        for k in 1..i {
            row[k] = &rows[i - 1][k - 1] + &rows[i - 1][k];
        }
        rows.push(row);
    }
    rows.into_iter().map(|r| r.iter().map(C::from_integer).collect()).collect()
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.grlex_terms().iter().enumerate() {
            let r = c.to_rational();
            let (sign, mag) = if r.is_negative() { ("-", -r) } else { ("+", r) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as a graded-lex sorted list of `[[e_w, e_x, e_y, e_z], "a/b"]`.
impl<C: Coeff> Serialize for Polynomial<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.grlex_terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (m, c) in &terms {
            seq.serialize_element(&(m.exps(), format_rational(&c.to_rational())))?;
        }
        seq.end()
    }
}
