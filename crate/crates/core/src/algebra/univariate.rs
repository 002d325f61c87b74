//! Univariate rational functions in one tracked variable `s`, with
//! denominators kept as products of `1 − r·s`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::monomial::Var;
use super::ratfun::RationalFunction;
use super::rational::{format_rational, Coeff, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial, `coeffs[k]` multiplying `s^k`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `s^k`
    pub fn power(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        UniPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by `1 − r·s`.
    pub fn mul_factor(&self, r: &Rational) -> Self {
        let mut out = self.coeffs.clone();
        out.push(Rational::zero());
        for k in (1..out.len()).rev() {
            let prev = &self.coeffs[k - 1];
            out[k] -= r * prev;
        }
        Self::new(out)
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * s + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Taylor coefficients `c_0..=c_kmax` of `num/den` at 0 by exact power-series
/// long division.
pub fn series_coeffs(num: &UniPoly, den: &UniPoly, kmax: usize) -> Result<Vec<Rational>> {
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(Error::PoleAtOrigin);
    }
    let inv_d0 = d0.recip();
    let mut out: Vec<Rational> = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let mut acc = num.coeff(k);
        for j in 1..=k.min(den.coeffs.len().saturating_sub(1)) {
            acc -= &den.coeffs[j] * &out[k - j];
        }
        out.push(acc * &inv_d0);
    }
    Ok(out)
}

/// `numerator / ∏ (1 − r·s)^multiplicity`, with `r ≠ 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct UniRationalFunction {
    numer: UniPoly,
    factors: BTreeMap<Rational, u32>,
}

impl UniRationalFunction {
    pub fn new(numer: UniPoly, factors: impl IntoIterator<Item = (Rational, u32)>) -> Self {
        let mut map = BTreeMap::new();
        if !numer.is_zero() {
            for (r, m) in factors {
                if m > 0 && !r.is_zero() {
                    *map.entry(r).or_insert(0) += m;
                }
            }
        }
        UniRationalFunction { numer, factors: map }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::new(p, [])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    /// `1 / (c0 + c1·s)`; [`Error::PoleAtPoint`] when `c0 = 0`.
    pub fn inverse_affine(c0: &Rational, c1: &Rational) -> Result<Self> {
        if c0.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let scale = c0.recip();
        let r = -(c1 * &scale);
        Ok(Self::new(UniPoly::constant(scale), [(r, 1)]))
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.numer
    }

    /// `(r, multiplicity)` for each factor `1 − r·s`.
    pub fn factors(&self) -> impl Iterator<Item = (&Rational, u32)> {
        self.factors.iter().map(|(r, m)| (r, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.numer.mul(&other.numer),
            self.factors().chain(other.factors()).map(|(r, m)| (r.clone(), m)),
        )
    }

    pub fn mul_poly(&self, p: &UniPoly) -> Self {
        Self::new(self.numer.mul(p), self.factors().map(|(r, m)| (r.clone(), m)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.numer.scale(k), self.factors().map(|(r, m)| (r.clone(), m)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::sum(&[self, other])
    }

    /// Sum over the least common denominator.
    pub fn sum(parts: &[&Self]) -> Self {
        let parts: Vec<&Self> = parts.iter().copied().filter(|p| !p.is_zero()).collect();
        if parts.is_empty() {
            return Self::zero();
        }
        let mut lcd: BTreeMap<Rational, u32> = BTreeMap::new();
        for p in &parts {
            for (r, m) in &p.factors {
                let e = lcd.entry(r.clone()).or_insert(0);
                *e = (*e).max(*m);
            }
        }
        let mut numer = UniPoly::zero();
        for p in &parts {
            let mut lifted = p.numer.clone();
            for (r, m) in &lcd {
                for _ in p.factors.get(r).copied().unwrap_or(0)..*m {
                    lifted = lifted.mul_factor(r);
                }
            }
            numer = numer.add(&lifted);
        }
        Self::new(numer, lcd)
    }

    /// Expanded denominator `∏ (1 − r·s)^m`.
    pub fn dense_denominator(&self) -> UniPoly {
        let mut d = UniPoly::constant(Rational::one());
        for (r, m) in &self.factors {
            for _ in 0..*m {
                d = d.mul_factor(r);
            }
        }
        d
    }

    pub fn eval(&self, s: &Rational) -> Result<Rational> {
        let mut den = Rational::one();
        for (r, m) in &self.factors {
            let v = Rational::one() - r * s;
            if v.is_zero() {
                return Err(Error::PoleAtPoint);
            }
            for _ in 0..*m {
                den *= &v;
            }
        }
        Ok(self.numer.eval(s) / den)
    }

    /// Exact first derivative at `s`, via
    /// `f' = N'/D + N/D · Σ m·r/(1 − r·s)`.
    pub fn derivative_at(&self, s: &Rational) -> Result<Rational> {
        let mut den = Rational::one();
        let mut log_sum = Rational::zero();
        for (r, m) in &self.factors {
            let v = Rational::one() - r * s;
            if v.is_zero() {
                return Err(Error::PoleAtPoint);
            }
            for _ in 0..*m {
                den *= &v;
            }
            log_sum += Rational::from_integer((*m as i64).into()) * r / &v;
        }
        let n = self.numer.eval(s);
        let dn = self.numer.derivative().eval(s);
        Ok((dn + n * log_sum) / den)
    }

    pub fn equals(&self, other: &Self) -> bool {
        if self.factors == other.factors {
            return self.numer == other.numer;
        }
        let mut lhs = self.numer.clone();
        for (r, m) in &other.factors {
            for _ in self.factors.get(r).copied().unwrap_or(0).min(*m)..*m {
                lhs = lhs.mul_factor(r);
            }
        }
        let mut rhs = other.numer.clone();
        for (r, m) in &self.factors {
            for _ in other.factors.get(r).copied().unwrap_or(0).min(*m)..*m {
                rhs = rhs.mul_factor(r);
            }
        }
        lhs == rhs
    }

    /// Taylor coefficients at the origin.
    pub fn series(&self, kmax: usize) -> Result<Vec<Rational>> {
        series_coeffs(&self.numer, &self.dense_denominator(), kmax)
    }
}

impl fmt::Debug for UniRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} / ", self.numer)?;
        for (r, m) in &self.factors {
            write!(f, "(1 - {} s)^{m}", format_rational(r))?;
        }
        Ok(())
    }
}

impl<C: Coeff> RationalFunction<C> {
    /// Binds every variable except `var` to the given values, leaving a
    /// univariate function of `var`. The values of `point` at `var` are
    /// ignored. Fails with [`Error::PoleAtOrigin`] when some factor has a zero
    /// constant term after binding.
    pub fn bind_to_univariate(&self, var: Var, point: &[Rational; 4]) -> Result<UniRationalFunction> {
        let mut bound = point.clone();
        bound[var.index()] = Rational::zero();
        let dmax = self.numerator().degree_in(var) as usize;
        let mut coeffs = vec![Rational::zero(); dmax + 1];
        // group numerator terms by the exponent of `var`
        let mut groups: Vec<Vec<_>> = vec![Vec::new(); dmax + 1];
        for (m, c) in self.numerator().terms() {
            groups[m.exp(var) as usize].push((m.without(var), c.clone()));
        }
        for (k, g) in groups.into_iter().enumerate() {
            if !g.is_empty() {
                coeffs[k] = super::poly::Polynomial::from_terms(g).eval(&bound);
            }
        }
        let mut scale = Rational::one();
        let mut factors = Vec::new();
        for (f, m) in self.factors() {
            let c0 = f.eval(&bound);
            if c0.is_zero() {
                return Err(Error::PoleAtOrigin);
            }
            let a = Rational::from_integer((f.coeff(var) as i64).into());
            for _ in 0..m {
                scale /= &c0;
            }
            factors.push((a / &c0, m));
        }
        Ok(UniRationalFunction::new(UniPoly::new(coeffs).scale(&scale), factors))
    }
}
