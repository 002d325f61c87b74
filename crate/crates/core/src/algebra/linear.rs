use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Var};
use super::poly::Polynomial;
use super::rational::Coeff;

/// The linear form `1 − a_w·w − a_x·x − a_y·y − a_z·z` with nonnegative
/// integer coefficients. Every denominator factor in the recursions has this
/// shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    coeffs: [u32; 4],
}

impl LinearForm {
    /// `None` when every coefficient is zero (the form would be the constant 1).
    pub fn new(coeffs: [u32; 4]) -> Option<Self> {
        coeffs.iter().any(|&c| c != 0).then_some(LinearForm { coeffs })
    }

    /// `1 − w − a_x·x − a_y·y − a_z·z`
    pub fn unit_w(a_x: u32, a_y: u32, a_z: u32) -> Self {
        LinearForm { coeffs: [1, a_x, a_y, a_z] }
    }

    pub fn coeff(&self, v: Var) -> u32 {
        self.coeffs[v.index()]
    }

    pub fn coeffs(&self) -> [u32; 4] {
        self.coeffs
    }

    pub fn shift(&self, s: ShiftSubstitution) -> LinearForm {
        let a_w = self.coeffs[0];
        let [_, a_x, a_y, a_z] = self.coeffs;
        LinearForm {
            coeffs: [a_w, a_x + a_w * s.alpha, a_y + a_w * s.beta, a_z + a_w * s.gamma],
        }
    }

    /// Applies a variable map (`targets[v]` is where `v` goes); coefficients
    /// of variables sent to the same target add up.
    pub fn rename(&self, targets: [Var; 4]) -> LinearForm {
        let mut out = [0u32; 4];
        for v in Var::ALL {
            out[targets[v.index()].index()] += self.coeffs[v.index()];
        }
        LinearForm { coeffs: out }
    }

    pub fn to_poly<C: Coeff>(&self) -> Polynomial<C> {
        let mut terms = vec![(Monomial::ONE, C::one())];
        for v in Var::ALL {
            let a = self.coeffs[v.index()];
            if a != 0 {
                terms.push((Monomial::var(v), C::from_i64(-(a as i64))));
            }
        }
        Polynomial::from_terms(terms)
    }

    /// Value of the form at a point.
    pub fn eval<C: Coeff>(&self, point: &[C; 4]) -> C {
        let mut acc = C::one();
        for v in Var::ALL {
            let a = self.coeffs[v.index()];
            if a != 0 {
                acc.sub_assign_ref(&point[v.index()].mul_i64(a as i64));
            }
        }
        acc
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1")?;
        for v in Var::ALL {
            match self.coeffs[v.index()] {
                0 => {}
                1 => write!(f, "-{}", v.name())?,
                a => write!(f, "-{}{}", a, v.name())?,
            }
        }
        write!(f, ")")
    }
}

/// The substitution `w ↦ w + α·x + β·y + γ·z` (x, y, z fixed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ShiftSubstitution {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

impl ShiftSubstitution {
    pub fn new(alpha: u32, beta: u32, gamma: u32) -> Self {
        ShiftSubstitution { alpha, beta, gamma }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha == 0 && self.beta == 0 && self.gamma == 0
    }
}

impl Add for ShiftSubstitution {
    type Output = ShiftSubstitution;

    fn add(self, rhs: Self) -> Self {
        ShiftSubstitution {
            alpha: self.alpha + rhs.alpha,
            beta: self.beta + rhs.beta,
            gamma: self.gamma + rhs.gamma,
        }
    }
}
