use std::fmt;

use crate::monomial::{mono_mul, AlphaMonomial};

/// `const_part + psi_part · ψ` with ψ² = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PsiLinear {
    pub const_part: AlphaMonomial,
    pub psi_part: AlphaMonomial,
}

impl PsiLinear {
    pub fn new(const_part: AlphaMonomial, psi_part: AlphaMonomial) -> Self {
        Self {
            const_part,
            psi_part,
        }
    }

    pub fn constant(m: AlphaMonomial) -> Self {
        Self {
            const_part: m,
            psi_part: AlphaMonomial::zero(),
        }
    }

    pub fn pure_psi(m: AlphaMonomial) -> Self {
        Self {
            const_part: AlphaMonomial::zero(),
            psi_part: m,
        }
    }

    pub fn one() -> Self {
        Self::constant(AlphaMonomial::one())
    }

    pub fn has_psi(&self) -> bool {
        !self.psi_part.is_zero()
    }

    /// `(a + bψ)(c + dψ) = ac + (ad + bc)ψ`. Returns `None` if `ad + bc` mixes
    /// α-powers and so is not a single monomial.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        let ad = mono_mul(&self.const_part, &other.psi_part);
        let bc = mono_mul(&self.psi_part, &other.const_part);
        Some(Self {
            const_part: mono_mul(&self.const_part, &other.const_part),
            psi_part: ad.checked_add(&bc)?,
        })
    }

    /// Multiplies both parts by a ψ-free monomial.
    pub fn scale(&self, m: &AlphaMonomial) -> Self {
        Self {
            const_part: mono_mul(&self.const_part, m),
            psi_part: mono_mul(&self.psi_part, m),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(Self {
            const_part: self.const_part.checked_add(&other.const_part)?,
            psi_part: self.psi_part.checked_add(&other.psi_part)?,
        })
    }
}

/// Substitutes α ↦ −α in both parts.
pub fn alpha_flip(x: &PsiLinear) -> PsiLinear {
    PsiLinear {
        const_part: x.const_part.alpha_flip(),
        psi_part: x.psi_part.alpha_flip(),
    }
}

impl PsiLinear {
    pub fn alpha_flip(&self) -> Self {
        alpha_flip(self)
    }
}

impl fmt::Display for PsiLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.has_psi() {
            write!(f, "{} + ({})*psi", self.const_part, self.psi_part)
        } else {
            write!(f, "{}", self.const_part)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn m(n: i64, d: i64, p: i64) -> AlphaMonomial {
        AlphaMonomial::new(ratio(n, d), p)
    }

    #[test]
    fn psi_squared_vanishes() {
        let x = PsiLinear::pure_psi(m(1, 1, 0));
        let sq = x.mul(&x).unwrap();
        assert!(sq.const_part.is_zero());
        assert!(sq.psi_part.is_zero());
    }

    #[test]
    fn product_rule() {
        let x = PsiLinear::new(m(2, 1, 1), m(3, 1, 0));
        let y = PsiLinear::new(m(5, 1, -1), m(7, 1, -2));
        let p = x.mul(&y).unwrap();
        assert_eq!(p.const_part, m(10, 1, 0));
        assert_eq!(p.psi_part, m(14 + 15, 1, -1));
    }

    #[test]
    fn flip_is_involution() {
        let x = PsiLinear::new(m(-2, 3, -1), m(1, 7, 4));
        assert_eq!(alpha_flip(&alpha_flip(&x)), x);
        assert_eq!(alpha_flip(&x).const_part, m(2, 3, -1));
    }
}
