//! Closed-form localization factors for single components and nodes.
//!
//! Every factor is a single Laurent monomial in α, or `c·α^p·ψ` for the
//! one-parameter family rows. Ruled bubbles (one blown-up point) carry the
//! deformation/obstruction weight of the map plus the predeformability and
//! dilation column `T_D, automorphisms`; end bubbles carry the map weight and
//! the `1/(d-1)` automorphism factor of the last target component.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;
use unram_exact::{int, ratio, AlphaMonomial, BigRational, PsiLinear};

use crate::fixedpoints::{ContactLabel, FixedMapKind, Shape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContributionError {
    #[error("{0} is an end bubble; use the end-bubble factors")]
    NotRuled(String),
    #[error("{0} is a ruled bubble; use the ruled-bubble factors")]
    NotEnd(String),
    #[error("psi integral needs 1 <= h < d (got d={d}, h={h})")]
    PsiRange { d: u32, h: u32 },
    #[error("degenerate node: branch weights {left} and {right} cancel")]
    DegenerateNode {
        left: Box<BigRational>,
        right: Box<BigRational>,
    },
    #[error("{0} has no psi-dual pairing")]
    NoDualPairing(String),
}

/// Factors attached to one bubble component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBundle {
    /// Weight of `W³⊗H⁰(f*O(1)) − V³⊗H⁰(f*O_D)` (or `W³⊗H⁰(f*O(1))` for an
    /// end bubble). Pure ψ for family rows.
    pub main: PsiLinear,
    /// `2α²` or `−α²` for ruled bubbles, `1` for end bubbles.
    pub auxiliary: AlphaMonomial,
    /// `1/(d−k)` or `1/(d−h)` for ruled bubbles, `1/(d−1)` for end bubbles.
    pub automorphism_scale: BigRational,
}

impl FactorBundle {
    /// `main · auxiliary · automorphism_scale`, still ψ-linear.
    pub fn product(&self) -> PsiLinear {
        self.main
            .scale(&self.auxiliary)
            .scale(&AlphaMonomial::scalar(self.automorphism_scale.clone()))
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n!! = n(n−2)(n−4)…`, with `0!! = 1`.
fn double_factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

fn sign(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn rpow(base: &BigRational, e: i64) -> BigRational {
    num_traits::Pow::pow(base.clone(), e as i32)
}

fn inv_sq(x: BigInt) -> BigRational {
    let x = BigRational::from_integer(x);
    (x.clone() * x).recip()
}

/// `⌈n/2⌉` for any integer n.
fn ceil_half(n: i64) -> i64 {
    -((-n).div_euclid(2))
}

/// `Σ_{i=0}^{h−1} (i/(h−i) + i/(k−i) + i/(d−i))`.
fn family_sum(d: u32, h: u32, k: u32) -> BigRational {
    (0..h as i64).fold(BigRational::zero(), |acc, i| {
        acc + ratio(i, h as i64 - i) + ratio(i, k as i64 - i) + ratio(i, d as i64 - i)
    })
}

/// `(−1)^{d+⌈(d+h)/2⌉} 2^{d−h} [1/((d−h)!(d−h)!!)]² (2α/(d−h))^{3h−3d−1}`
fn mono_h_weight(d: u32, h: u32) -> AlphaMonomial {
    let (di, hi) = (d as i64, h as i64);
    let p = 3 * hi - 3 * di - 1;
    let c = sign(di + ceil_half(di + hi))
        * BigRational::from_integer(BigInt::one() << (d - h))
        * inv_sq(factorial(d - h) * double_factorial(d - h))
        * rpow(&ratio(2, di - hi), p);
    AlphaMonomial::new(c, p)
}

/// `(s/(d−e)) · 1/((d−e)!(2d−2e)!) · (α/(d−e))^{3e−3d−1}`
fn single_weight(d: u32, e: u32, s: BigRational) -> AlphaMonomial {
    let (di, ei) = (d as i64, e as i64);
    let p = 3 * ei - 3 * di - 1;
    let c = s * ratio(1, di - ei)
        / BigRational::from_integer(factorial(d - e) * factorial(2 * d - 2 * e))
        * rpow(&ratio(1, di - ei), p);
    AlphaMonomial::new(c, p)
}

/// The degree-d base component, including its `1/d` automorphism factor:
/// `(−1)^{3d−1}/d · (d!(2d)!/d^{3d})² · α^{6d−4}`.
pub fn base_contribution(d: u32) -> AlphaMonomial {
    let di = d as i64;
    let inner = BigRational::new(
        factorial(d) * factorial(2 * d),
        num_traits::Pow::pow(BigInt::from(d), 3 * d),
    );
    let c = sign(3 * di - 1) * ratio(1, di) * inner.clone() * inner;
    AlphaMonomial::new(c, 6 * di - 4)
}

/// Factors for a map into a ruled bubble.
pub fn ruled_contribution(kind: &FixedMapKind) -> Result<FactorBundle, ContributionError> {
    use ContactLabel::*;
    if kind.is_end_bubble() {
        return Err(ContributionError::NotRuled(kind.to_string()));
    }
    let d = kind.degree();
    let di = d as i64;
    let two_sq = AlphaMonomial::new(int(2), 2);
    let minus_sq = AlphaMonomial::new(int(-1), 2);
    let (main, auxiliary, e) = match (kind.contact_in(), kind.shape()) {
        (P0 | P1, Shape::Family { h, k }) => {
            let (hi, ki) = (h as i64, k as i64);
            let p = 3 * hi - 3 * di - 1;
            // Same sign at both contacts; see the family sign note in the README.
            let c = sign(hi + ki)
                * inv_sq(factorial(d - h) * factorial(d - k))
                * rpow(&ratio(1, di - ki), p)
                * family_sum(d, h, k);
            (PsiLinear::pure_psi(AlphaMonomial::new(c, p)), two_sq, k)
        }
        (P0 | P1, Shape::MonoH { h }) => (PsiLinear::constant(mono_h_weight(d, h)), two_sq, h),
        (P0, Shape::MonoK { k }) => (
            PsiLinear::constant(single_weight(d, k, int(-1))),
            minus_sq,
            k,
        ),
        (P1, Shape::MonoK { k }) => {
            let s = sign(di + k as i64);
            (PsiLinear::constant(single_weight(d, k, s)), minus_sq, k)
        }
        (P2, Shape::MonoH { h }) => (PsiLinear::constant(single_weight(d, h, int(-1))), two_sq, h),
        (P2, Shape::MonoK { k }) => {
            let s = sign(di - k as i64);
            (PsiLinear::constant(single_weight(d, k, s)), two_sq, k)
        }
        (P2, Shape::Family { .. }) => unreachable!("rejected by FixedMapKind::new"),
    };
    Ok(FactorBundle {
        main,
        auxiliary,
        automorphism_scale: ratio(1, di - e as i64),
    })
}

/// Factors for a map into the last bubble (an unblown P³).
pub fn end_contribution(kind: &FixedMapKind) -> Result<FactorBundle, ContributionError> {
    use ContactLabel::*;
    if !kind.is_end_bubble() {
        return Err(ContributionError::NotEnd(kind.to_string()));
    }
    let d = kind.degree();
    let di = d as i64;
    let p = 3 - 3 * di;
    let main = match (kind.contact_in(), kind.shape()) {
        (P0 | P1, Shape::Family { k, .. }) => {
            let ki = k as i64;
            let c = sign(ki + 1)
                * inv_sq(factorial(d - 1) * factorial(d - k))
                * rpow(&ratio(1, di - ki), p);
            PsiLinear::pure_psi(AlphaMonomial::new(c, p))
        }
        (P0 | P1, Shape::MonoH { .. }) => {
            let c = sign(di + ceil_half(di + 1))
                * BigRational::from_integer(BigInt::one() << d)
                * inv_sq(factorial(d - 1) * double_factorial(d - 1))
                * rpow(&ratio(2, di - 1), p);
            PsiLinear::constant(AlphaMonomial::new(c, p))
        }
        (P0 | P1, Shape::MonoK { .. }) => PsiLinear::constant(AlphaMonomial::new(ratio(-1, 2), -3)),
        (P2, Shape::MonoH { .. }) => PsiLinear::constant(end_single(d, int(-1))),
        (P2, Shape::MonoK { .. }) => PsiLinear::constant(end_single(d, sign(di - 1))),
        (P2, Shape::Family { .. }) => unreachable!("rejected by FixedMapKind::new"),
    };
    Ok(FactorBundle {
        main,
        auxiliary: AlphaMonomial::one(),
        automorphism_scale: ratio(1, di - 1),
    })
}

/// `(s/(d−1)) · 1/((d−1)!(2d−2)!) · (α/(d−1))^{3−3d}`
fn end_single(d: u32, s: BigRational) -> AlphaMonomial {
    let di = d as i64;
    let p = 3 - 3 * di;
    let c = s * ratio(1, di - 1)
        / BigRational::from_integer(factorial(d - 1) * factorial(2 * d - 2))
        * rpow(&ratio(1, di - 1), p);
    AlphaMonomial::new(c, p)
}

/// Integral of ψ over the one-dimensional family of ruled maps of degree d
/// with outgoing exponent h: `−1/(d−h)`.
pub fn psi_integral(d: u32, h: u32) -> Result<BigRational, ContributionError> {
    if h < 1 || h >= d {
        return Err(ContributionError::PsiRange { d, h });
    }
    Ok(ratio(-1, (d - h) as i64))
}

/// Pairing of the `ψ^∨` factor of an end-bubble family with its family:
/// `1/(d−k)`, the reciprocal of the cotangent weight at the outgoing point.
pub fn psi_dual_pairing(kind: &FixedMapKind) -> Result<BigRational, ContributionError> {
    match kind.shape() {
        Shape::Family { k, .. } if kind.is_end_bubble() => Ok(ratio(1, (kind.degree() - k) as i64)),
        _ => Err(ContributionError::NoDualPairing(kind.to_string())),
    }
}

/// Smoothing factor of a node whose two branch tangent weights (in units of
/// α) are `left` and `right`: `1/((left + right)α)`.
pub fn node_smoothing(
    left: &BigRational,
    right: &BigRational,
) -> Result<AlphaMonomial, ContributionError> {
    let w = left + right;
    if w.is_zero() {
        return Err(ContributionError::DegenerateNode {
            left: Box::new(left.clone()),
            right: Box::new(right.clone()),
        });
    }
    Ok(AlphaMonomial::new(w.recip(), -1))
}
