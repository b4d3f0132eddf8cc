use std::fmt;
use std::ops::{Mul, Neg};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeff · α^power`. The zero monomial always has power 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaMonomial {
    coeff: BigRational,
    power: i64,
}

impl AlphaMonomial {
    pub fn new(coeff: BigRational, power: i64) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Self { coeff, power }
    }

    pub fn zero() -> Self {
        Self {
            coeff: BigRational::zero(),
            power: 0,
        }
    }

    pub fn one() -> Self {
        Self {
            coeff: BigRational::one(),
            power: 0,
        }
    }

    /// A pure number, `c · α^0`.
    pub fn scalar(coeff: BigRational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn power(&self) -> i64 {
        self.power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self {
            coeff: self.coeff.recip(),
            power: -self.power,
        })
    }

    /// Substitutes α ↦ −α.
    pub fn alpha_flip(&self) -> Self {
        if self.power.rem_euclid(2) == 1 {
            Self {
                coeff: -self.coeff.clone(),
                power: self.power,
            }
        } else {
            self.clone()
        }
    }

    /// Sum of two monomials. Defined when either is zero or the powers agree;
    /// otherwise the result is not a monomial and `None` is returned.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.power != other.power {
            return None;
        }
        Some(Self::new(&self.coeff + &other.coeff, self.power))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.coeff * c, self.power)
    }
}

/// Product of two monomials: coefficients multiply, powers add.
pub fn mono_mul(a: &AlphaMonomial, b: &AlphaMonomial) -> AlphaMonomial {
    AlphaMonomial::new(&a.coeff * &b.coeff, a.power + b.power)
}

impl Mul for &AlphaMonomial {
    type Output = AlphaMonomial;
    fn mul(self, rhs: &AlphaMonomial) -> AlphaMonomial {
        mono_mul(self, rhs)
    }
}

impl Mul for AlphaMonomial {
    type Output = AlphaMonomial;
    fn mul(self, rhs: AlphaMonomial) -> AlphaMonomial {
        mono_mul(&self, &rhs)
    }
}

impl Neg for AlphaMonomial {
    type Output = AlphaMonomial;
    fn neg(self) -> AlphaMonomial {
        AlphaMonomial::new(-self.coeff, self.power)
    }
}

impl fmt::Display for AlphaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}*a", self.coeff),
            p => write!(f, "{}*a^{}", self.coeff, p),
        }
    }
}

impl AlphaMonomial {
    /// True when the coefficient is negative.
    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn product_adds_powers() {
        let a = AlphaMonomial::new(ratio(3, 4), 8);
        let b = AlphaMonomial::new(ratio(2, 15), -4);
        assert_eq!(&a * &b, AlphaMonomial::new(ratio(1, 10), 4));
    }

    #[test]
    fn zero_is_canonical() {
        let z = AlphaMonomial::new(ratio(0, 1), 7);
        assert_eq!(z.power(), 0);
        assert_eq!(z, AlphaMonomial::zero());
        let p = &AlphaMonomial::new(ratio(5, 1), 3) * &z;
        assert_eq!(p.power(), 0);
    }

    #[test]
    fn worked_double_cover_chain() {
        let base = AlphaMonomial::new(ratio(-9, 32), 8);
        let side = AlphaMonomial::new(ratio(2, 15), -4);
        assert_eq!(
            &(&base * &side) * &side,
            AlphaMonomial::scalar(ratio(-1, 200))
        );
    }

    #[test]
    fn flip_only_touches_odd_powers() {
        let even = AlphaMonomial::new(ratio(2, 15), -4);
        assert_eq!(even.alpha_flip(), even);
        let odd = AlphaMonomial::new(ratio(-2, 3), -1);
        assert_eq!(odd.alpha_flip(), AlphaMonomial::new(ratio(2, 3), -1));
    }

    #[test]
    fn add_mismatched_powers_is_none() {
        let a = AlphaMonomial::new(ratio(1, 2), 1);
        let b = AlphaMonomial::new(ratio(1, 2), 2);
        assert!(a.checked_add(&b).is_none());
        assert_eq!(a.checked_add(&AlphaMonomial::zero()), Some(a.clone()));
    }
}
