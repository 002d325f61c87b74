use std::cmp::Ordering;
use std::fmt;

/// One of the four symbolic variables, in their fixed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    W = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::W, Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["w", "x", "y", "z"][self.index()]
    }
}

const BITS: u32 = 16;
const MASK: u64 = (1 << BITS) - 1;

/// A monomial `w^a x^b y^c z^d`, packed into one machine word with 16 bits
/// per exponent (w in the top bits).
///
/// Multiplying monomials is integer addition of the packed words, and the
/// packed order is lexicographic with w most significant, so multiplying a
/// sorted term list by a fixed monomial keeps it sorted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(v: Var) -> u32 {
        BITS * (3 - v.index() as u32)
    }

    pub fn new(exps: [u32; 4]) -> Self {
        let mut packed = 0u64;
        for v in Var::ALL {
            let e = exps[v.index()];
            assert!((e as u64) <= MASK, "exponent {e} out of range");
            packed |= (e as u64) << Self::shift(v);
        }
        Monomial(packed)
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut exps = [0; 4];
        exps[v.index()] = e;
        Self::new(exps)
    }

    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> Self::shift(v)) & MASK) as u32
    }

    pub fn exps(self) -> [u32; 4] {
        Var::ALL.map(|v| self.exp(v))
    }

    pub fn degree(self) -> u32 {
        Var::ALL.iter().map(|&v| self.exp(v)).sum()
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        debug_assert!(
            Var::ALL.iter().all(|&v| self.exp(v) + other.exp(v) <= MASK as u32),
            "exponent overflow"
        );
        Monomial(self.0 + other.0)
    }

    /// Divides by `other`, or `None` if some exponent would go negative.
    pub fn div(self, other: Monomial) -> Option<Monomial> {
        Var::ALL
            .iter()
            .all(|&v| self.exp(v) >= other.exp(v))
            .then(|| Monomial(self.0 - other.0))
    }

    pub fn without(self, v: Var) -> Monomial {
        Monomial(self.0 & !(MASK << Self::shift(v)))
    }

    /// Graded lexicographic comparison with `w < x < y < z`: total degree
    /// first, then the exponent of z, y, x, w in turn. Used for serialization.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        let rev = |m: &Monomial| {
            let [w, x, y, z] = m.exps();
            [z, y, x, w]
        };
        self.degree().cmp(&other.degree()).then_with(|| rev(self).cmp(&rev(other)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "{}", v.name())?,
                _ => write!(f, "{}^{}", v.name(), e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing() {
        let m = Monomial::new([1, 2, 3, 4]);
        assert_eq!(m.exps(), [1, 2, 3, 4]);
        assert_eq!(m.degree(), 10);
        assert_eq!(m.mul(Monomial::var(Var::Y)).exps(), [1, 2, 4, 4]);
        assert_eq!(m.div(Monomial::var_pow(Var::Z, 4)).unwrap().exps(), [1, 2, 3, 0]);
        assert!(m.div(Monomial::var_pow(Var::W, 2)).is_none());
        assert_eq!(m.without(Var::X).exps(), [1, 0, 3, 4]);
        assert_eq!(m.to_string(), "w*x^2*y^3*z^4");
    }

    #[test]
    fn packed_order_is_lex_with_w_first() {
        let a = Monomial::new([1, 0, 0, 0]);
        let b = Monomial::new([0, 5, 5, 5]);
        assert!(a > b);
        assert_eq!(a.grlex_cmp(&b), Ordering::Less);
    }
}
