//! Numeric evaluation of the `G` recursion with all variables bound to
//! rationals except (optionally) one tracked variable `s`.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Rational, UniRationalFunction, Var};
use crate::error::Result;

/// `constant + slope·s`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub constant: Rational,
    pub slope: Rational,
}

impl Affine {
    pub fn constant(c: Rational) -> Self {
        Affine { constant: c, slope: Rational::zero() }
    }

    pub fn linear(slope: Rational) -> Self {
        Affine { constant: Rational::zero(), slope }
    }

    pub fn add(&self, other: &Affine) -> Affine {
        Affine { constant: &self.constant + &other.constant, slope: &self.slope + &other.slope }
    }

    pub fn scale(&self, k: i64) -> Affine {
        let k = Rational::from_integer(k.into());
        Affine { constant: &self.constant * &k, slope: &self.slope * &k }
    }

    /// `1 − self`
    pub fn one_minus(&self) -> Affine {
        Affine { constant: Rational::one() - &self.constant, slope: -self.slope.clone() }
    }

    /// `1 / self` as a univariate function of `s`.
    pub fn inverse(&self) -> Result<UniRationalFunction> {
        UniRationalFunction::inverse_affine(&self.constant, &self.slope)
    }
}

/// Bindings for `w, x, y, z` and the memo of `G_n` at each numeric `w`
/// argument reached by the shifts.
///
/// When a variable is tracked its value is `values[v]·s`; all other
/// variables are the plain constants `values[v]`.
pub struct TrackedContext {
    tracked: Option<Var>,
    values: [Rational; 4],
    memo: HashMap<(usize, Affine), Arc<UniRationalFunction>>,
}

impl TrackedContext {
    pub fn new(tracked: Option<Var>, values: [Rational; 4]) -> Self {
        TrackedContext { tracked, values, memo: HashMap::new() }
    }

    pub fn tracked(&self) -> Option<Var> {
        self.tracked
    }

    pub fn value(&self, v: Var) -> Affine {
        let c = self.values[v.index()].clone();
        if self.tracked == Some(v) {
            Affine::linear(c)
        } else {
            Affine::constant(c)
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `G_n` with `w` at the constant `w0` (other bindings from the context).
    pub fn g_at(&mut self, n: usize, w0: &Rational) -> Result<Arc<UniRationalFunction>> {
        self.g(n, &Affine::constant(w0.clone()))
    }

    /// `G_n` with first argument `w`, memoized on `(n, w)`.
    pub fn g(&mut self, n: usize, w: &Affine) -> Result<Arc<UniRationalFunction>> {
        assert!(n >= 1);
        let key = (n, w.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let f = if n == 1 {
            w.one_minus().inverse()?
        } else {
            let x = self.value(Var::X);
            let y = self.value(Var::Y);
            let z = self.value(Var::Z);
            let mut terms = Vec::with_capacity(n - 1);
            for m in 1..n {
                let first = self.g(m, w)?;
                let shifted = w.add(&y).add(&z.scale(m as i64 - 1));
                let second = self.g(n - m, &shifted)?;
                terms.push(first.mul(&second));
            }
            let refs: Vec<&UniRationalFunction> = terms.iter().collect();
            let factor = w.add(&x.scale(n as i64 - 1)).one_minus().inverse()?;
            UniRationalFunction::sum(&refs).mul(&factor)
        };
        let f = Arc::new(f);
        self.memo.insert(key, f.clone());
        Ok(f)
    }
}
