use std::sync::Arc;

use proptest::prelude::*;
use unram_exact::{mono_mul, ratio, AlphaMonomial, BigRational};
use unram_localize::{
    base_contribution, enumerate_chains, evaluate_chain, node_smoothing, psi_integral,
    ruled_contribution, side_sum, v4_weights, ContactLabel, Evaluation, FixedMapKind, Shape, Side,
    SideTable,
};

fn label(i: usize) -> ContactLabel {
    ContactLabel::from_index(i).unwrap()
}

/// Arbitrary ruled-or-end kind that passes validation.
fn any_kind() -> impl Strategy<Value = FixedMapKind> {
    (0usize..3, 2u32..16, 0u8..3, 1u32..15).prop_filter_map("invalid row", |(l, d, s, e)| {
        let e = 1 + (e - 1) % (d - 1);
        let shape = match s {
            0 => {
                if (d + e) % 2 != 0 {
                    return None;
                }
                Shape::Family {
                    h: e,
                    k: (d + e) / 2,
                }
            }
            1 => Shape::MonoH { h: e },
            _ => Shape::MonoK { k: e },
        };
        FixedMapKind::new(label(l), d, shape, false).ok()
    })
}

#[test]
fn chains_are_linked() {
    for d in 2..=8 {
        for chain in enumerate_chains(d).unwrap() {
            let steps = chain.steps();
            assert_eq!(steps[0].contact_in(), ContactLabel::P0);
            assert_eq!(steps[0].degree(), d);
            for w in steps.windows(2) {
                assert!(!w[0].is_end_bubble(), "{chain}");
                assert_eq!(w[1].contact_in(), w[0].outgoing_slot(), "{chain}");
                assert_eq!(w[1].degree(), w[0].outgoing_exponent(), "{chain}");
                assert!(w[1].degree() < w[0].degree());
            }
            assert!(steps.last().unwrap().is_end_bubble(), "{chain}");
        }
    }
}

#[test]
fn enumeration_is_sorted_and_repeatable() {
    for d in 2..=7 {
        let a = enumerate_chains(d).unwrap();
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(a, enumerate_chains(d).unwrap());
    }
}

#[test]
fn no_family_boundary_duplicates() {
    // MonoH at P0/P1 with h ≡ d (mod 2) is the family boundary.
    for d in 2..=8 {
        for chain in enumerate_chains(d).unwrap() {
            for s in chain.steps() {
                if let Shape::MonoH { h } = s.shape() {
                    if s.contact_in() != ContactLabel::P2 {
                        assert_eq!((s.degree() - h) % 2, 1, "{chain}");
                    }
                }
            }
        }
    }
}

#[test]
fn every_locus_has_degree_zero() {
    for d in 2..=6 {
        let table = SideTable::new(d, Evaluation::Serial).unwrap();
        let n = table.zero.len();
        for i in 0..n {
            for j in 0..n {
                let r = table.report(i, j).unwrap();
                assert_eq!(r.total.power(), 0, "d={d} {i},{j}");
            }
        }
    }
}

#[test]
fn infinity_side_is_alpha_flip() {
    for d in 2..=6 {
        assert_eq!(
            side_sum(d, Side::Infinity).unwrap(),
            side_sum(d, Side::Zero).unwrap().alpha_flip()
        );
        for chain in enumerate_chains(d).unwrap() {
            let c = Arc::new(chain);
            let z = evaluate_chain(Arc::clone(&c), Side::Zero).unwrap();
            let i = evaluate_chain(c, Side::Infinity).unwrap();
            assert_eq!(i.value, z.value.alpha_flip());
            assert_eq!(i.factors.len(), z.factors.len());
        }
    }
}

#[test]
fn report_is_base_times_sides() {
    let table = SideTable::new(5, Evaluation::Serial).unwrap();
    for (i, j) in [(0, 0), (3, 17), (36, 1), (20, 20)] {
        let r = table.report(i, j).unwrap();
        let want = mono_mul(
            &mono_mul(&base_contribution(5), &table.zero[i].value),
            &table.infinity[j].value,
        );
        assert_eq!(r.total, want);
    }
}

#[test]
fn base_alpha_power() {
    for d in 2..=12u32 {
        let b = base_contribution(d);
        assert_eq!(b.power(), 6 * d as i64 - 4);
        assert_eq!(b.is_negative(), (3 * d - 1) % 2 == 1);
    }
}

proptest! {
    #[test]
    fn tabulated_weights_are_affine_in_exponent(kind in any_kind()) {
        // x^d, x^h, x^k weights: w(e) is affine in the exponent e, so for a
        // family (d + h = 2k) the middle one is the average.
        let w = v4_weights(&kind).unwrap();
        prop_assert_eq!(&w[3], &BigRational::from_integer(0.into()));
        if let Shape::Family { .. } = kind.shape() {
            prop_assert_eq!(&w[0] + &w[1], &w[2] + &w[2]);
        }
    }

    #[test]
    fn ruled_main_has_expected_power(kind in any_kind()) {
        let b = ruled_contribution(&kind).unwrap();
        let (d, e) = (kind.degree() as i64, kind.outgoing_exponent() as i64);
        let main = if kind.is_family() { &b.main.psi_part } else { &b.main.const_part };
        prop_assert!(!main.is_zero() || kind.is_family());
        if !main.is_zero() {
            prop_assert_eq!(main.power(), 3 * e - 3 * d - 1);
        }
        // Families are scaled by the x^k coordinate, everything else by the
        // outgoing one.
        let scaled = match kind.shape() {
            Shape::Family { k, .. } => k as i64,
            _ => e,
        };
        prop_assert_eq!(b.automorphism_scale, ratio(1, d - scaled));
        prop_assert_eq!(b.auxiliary.power(), 2);
    }

    #[test]
    fn psi_integral_range(d in 2u32..40, h in 0u32..45) {
        match psi_integral(d, h) {
            Ok(v) => {
                prop_assert!(h >= 1 && h < d);
                prop_assert_eq!(v, ratio(-1, (d - h) as i64));
            }
            Err(_) => prop_assert!(h == 0 || h >= d),
        }
    }

    #[test]
    fn node_smoothing_symmetric(a in -50i64..50, b in -50i64..50, n in 1i64..30) {
        let (x, y) = (ratio(a, n), ratio(b, n));
        match node_smoothing(&x, &y) {
            Ok(m) => {
                prop_assert_eq!(&m, &node_smoothing(&y, &x).unwrap());
                prop_assert_eq!(m.power(), -1);
                prop_assert_eq!(mono_mul(&m, &AlphaMonomial::new(&x + &y, 1)), AlphaMonomial::one());
            }
            Err(_) => prop_assert_eq!(a + b, 0),
        }
    }
}
