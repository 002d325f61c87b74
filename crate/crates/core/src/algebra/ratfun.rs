//! Rational functions whose denominators are products of linear forms
//! `1 − a_w·w − a_x·x − a_y·y − a_z·z`, kept factored.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::linear::{LinearForm, ShiftSubstitution};
use super::monomial::Var;
use super::poly::{lift_and_sum, Polynomial};
use super::rational::{Coeff, Integer, Rational};
use crate::error::{Error, Result};

/// `numerator / ∏ factor^multiplicity`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction<C> {
    numer: Polynomial<C>,
    denom: BTreeMap<LinearForm, u32>,
}

pub type IntRationalFunction = RationalFunction<Integer>;

impl<C: Coeff> RationalFunction<C> {
    pub fn new(numer: Polynomial<C>, factors: impl IntoIterator<Item = (LinearForm, u32)>) -> Self {
        let mut denom = BTreeMap::new();
        if !numer.is_zero() {
            for (f, m) in factors {
                if m > 0 {
                    *denom.entry(f).or_insert(0) += m;
                }
            }
        }
        RationalFunction { numer, denom }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(numer: Polynomial<C>) -> Self {
        RationalFunction { numer, denom: BTreeMap::new() }
    }

    /// `1 / form`
    pub fn inverse_of(form: LinearForm) -> Self {
        Self::new(Polynomial::one(), [(form, 1)])
    }

    pub fn numerator(&self) -> &Polynomial<C> {
        &self.numer
    }

    /// Denominator factors in canonical order with multiplicities.
    pub fn factors(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.denom.iter().map(|(f, m)| (f, *m))
    }

    pub fn multiplicity(&self, form: &LinearForm) -> u32 {
        self.denom.get(form).copied().unwrap_or(0)
    }

    /// Number of denominator factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.denom.values().sum()
    }

    pub fn distinct_factor_count(&self) -> usize {
        self.denom.len()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> RationalFunction<D> {
        RationalFunction::new(self.numer.map_coeffs(f), self.denom.iter().map(|(k, v)| (*k, *v)))
    }

    pub fn to_rational(&self) -> RationalFunction<Rational> {
        RationalFunction { numer: self.numer.to_rational(), denom: self.denom.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let numer = self.numer.mul(&other.numer);
        let factors = self.factors().chain(other.factors()).map(|(f, m)| (*f, m));
        Self::new(numer, factors)
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.numer.scale(k), self.denom.iter().map(|(f, m)| (*f, *m)))
    }

    /// Divides by one more copy of `form`.
    pub fn scale_inverse(&self, form: LinearForm) -> Self {
        Self::new(self.numer.clone(), self.factors().map(|(f, m)| (*f, m)).chain([(form, 1)]))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::sum(&[self, other])
    }

    /// Sum brought to the least common denominator of all parts (per-factor
    /// maximum multiplicity). Numerators are lifted in parallel.
    pub fn sum(parts: &[&Self]) -> Self {
        let parts: Vec<&Self> = parts.iter().copied().filter(|p| !p.is_zero()).collect();
        match parts.len() {
            0 => return Self::zero(),
            1 => return parts[0].clone(),
            _ => {}
        }
        let mut lcd: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for p in &parts {
            for (f, m) in &p.denom {
                let e = lcd.entry(*f).or_insert(0);
                *e = (*e).max(*m);
            }
        }
        let missing: Vec<Vec<LinearForm>> = parts.iter().map(|p| p.missing_factors(&lcd)).collect();
        let lift: Vec<(&Polynomial<C>, &[LinearForm])> =
            parts.iter().zip(&missing).map(|(p, m)| (&p.numer, m.as_slice())).collect();
        Self::new(lift_and_sum(&lift), lcd)
    }

    /// Factors of `lcd` (with multiplicity) absent from this denominator.
    fn missing_factors(&self, lcd: &BTreeMap<LinearForm, u32>) -> Vec<LinearForm> {
        let mut out = Vec::new();
        for (f, m) in lcd {
            for _ in self.multiplicity(f).min(*m)..*m {
                out.push(*f);
            }
        }
        out
    }

    /// `w ↦ w + α·x + β·y + γ·z` on numerator and every factor.
    pub fn shift(&self, s: ShiftSubstitution) -> Self {
        if s.is_identity() {
            return self.clone();
        }
        Self::new(self.numer.shift(s), self.factors().map(|(f, m)| (f.shift(s), m)))
    }

    /// Variable renaming or identification (`targets[v]` receives `v`).
    pub fn rename(&self, targets: [Var; 4]) -> Self {
        Self::new(self.numer.rename(targets), self.factors().map(|(f, m)| (f.rename(targets), m)))
    }

    /// The specialization `z = w`.
    pub fn identify_z_to_w(&self) -> Self {
        self.rename([Var::W, Var::X, Var::Y, Var::W])
    }

    /// The specialization `y = z`.
    pub fn identify_y_to_z(&self) -> Self {
        self.rename([Var::W, Var::X, Var::Z, Var::Z])
    }

    /// Whether both sides denote the same function.
    ///
    /// Shared factors are cancelled first; the remaining cross products
    /// `num(f)·den(g) = num(g)·den(f)` are then compared term by term.
    pub fn equals(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.denom == other.denom {
            return self.numer == other.numer;
        }
        let lhs = self.numer.mul_linear_forms(&self.missing_factors(&other.denom));
        let rhs = other.numer.mul_linear_forms(&other.missing_factors(&self.denom));
        lhs == rhs
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rational; 4]) -> Result<Rational> {
        let mut den = Rational::from_integer(1.into());
        for (f, m) in &self.denom {
            let v = f.eval(point);
            if v.is_zero() {
                return Err(Error::PoleAtPoint);
            }
            for _ in 0..*m {
                den *= &v;
            }
        }
        Ok(self.numer.eval(point) / den)
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    pub fn reduce(&self) -> Self {
        let mut numer = self.numer.clone();
        let mut denom = self.denom.clone();
        for (f, m) in denom.iter_mut() {
            while *m > 0 {
                match numer.div_exact_linear(f) {
                    Ok(q) => {
                        numer = q;
                        *m -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        Self::new(numer, denom)
    }

    /// Taylor expansion at the origin through total degree `max`, obtained
    /// by multiplying the numerator by truncated geometric series of every
    /// factor.
    pub fn truncated_series(&self, max: u32) -> Polynomial<C> {
        let mut acc = self.numer.truncate(max);
        for (f, m) in &self.denom {
            let ell = Polynomial::one().sub(&f.to_poly());
            let mut geo = Polynomial::one();
            let mut pow = Polynomial::one();
            for _ in 0..max {
                pow = pow.mul_truncated(&ell, max);
                geo = geo.add(&pow);
            }
            for _ in 0..*m {
                acc = acc.mul_truncated(&geo, max);
            }
        }
        acc
    }
}

impl<C: Coeff> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_empty() {
            return write!(f, "{}", self.numer);
        }
        if self.numer.len() == 1 {
            write!(f, "{}/", self.numer)?;
        } else {
            write!(f, "({})/", self.numer)?;
        }
        write!(f, "(")?;
        for (form, m) in &self.denom {
            match m {
                1 => write!(f, "{form}")?,
                _ => write!(f, "{form}^{m}")?,
            }
        }
        write!(f, ")")
    }
}

impl<C: Coeff> fmt::Debug for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `{ "numerator": [...], "factors": [[a_w, a_x, a_y, a_z, multiplicity], ...] }`
impl<C: Coeff> Serialize for RationalFunction<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let factors: Vec<[u32; 5]> = self
            .denom
            .iter()
            .map(|(f, m)| {
                let [a, b, c, d] = f.coeffs();
                [a, b, c, d, *m]
            })
            .collect();
        let mut st = s.serialize_struct("RationalFunction", 2)?;
        st.serialize_field("numerator", &self.numer)?;
        st.serialize_field("factors", &factors)?;
        st.end()
    }
}
