//! Torus-fixed maps into a single bubble and chains of bubbles.
//!
//! A bubble is P³ (blown up at one point unless it is the last bubble) with
//! homogeneous coordinates `[t0;t1;t2;t3]`. Every fixed map has the form
//! `[x;y] ↦ [.. x^d ..; .. ; .. ; y^d]`: the coordinate carrying `x^d` is the
//! contact point with the divisor shared with the previous component, and the
//! remaining two coordinates hold `x^h y^(d-h)` and/or `x^k y^(d-k)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;
use unram_exact::{ratio, BigRational};

/// Contact point with the distinguished divisor: the coordinate holding `x^d`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContactLabel {
    /// `[1;0;0;0]`
    P0,
    /// `[0;1;0;0]`
    P1,
    /// `[0;0;1;0]`
    P2,
}

impl ContactLabel {
    pub fn index(self) -> usize {
        match self {
            ContactLabel::P0 => 0,
            ContactLabel::P1 => 1,
            ContactLabel::P2 => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            0 => Some(ContactLabel::P0),
            1 => Some(ContactLabel::P1),
            2 => Some(ContactLabel::P2),
            _ => None,
        }
    }
}

impl fmt::Display for ContactLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.index())
    }
}

/// Which non-contact monomials are present.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Both `x^h y^(d-h)` and `x^k y^(d-k)` with `d + h = 2k`: a
    /// one-parameter family of fixed maps.
    Family { h: u32, k: u32 },
    /// Only `x^h y^(d-h)`.
    MonoH { h: u32 },
    /// Only `x^k y^(d-k)`.
    MonoK { k: u32 },
}

impl Shape {
    fn rank(&self) -> (u8, u32, u32) {
        match *self {
            Shape::Family { h, k } => (0, h, k),
            Shape::MonoH { h } => (1, h, 0),
            Shape::MonoK { k } => (2, k, 0),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KindError {
    #[error("degree {0} is below 2")]
    Degree(u32),
    #[error("family rows need d + h = 2k with 1 <= h, k <= d-1 (got d={d}, h={h}, k={k})")]
    FamilyShape { d: u32, h: u32, k: u32 },
    #[error("exponent {e} out of range 1..={max}")]
    Exponent { e: u32, max: u32 },
    #[error("{label} has no family rows")]
    FamilyContact { label: ContactLabel },
    #[error("h={h} has the parity of d={d}; that map lies in the family")]
    Parity { d: u32, h: u32 },
    #[error("{0} is not an end-bubble row")]
    NotEndRow(String),
}

/// One torus-fixed map into one bubble.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedMapKind {
    contact_in: ContactLabel,
    degree: u32,
    shape: Shape,
    is_end_bubble: bool,
}

impl FixedMapKind {
    /// Validates the row constraints. Ruled kinds are accepted with an
    /// outgoing exponent of 1 so the ruled formulas can be evaluated there,
    /// but such kinds never occur in an enumerated chain.
    pub fn new(
        contact_in: ContactLabel,
        degree: u32,
        shape: Shape,
        is_end_bubble: bool,
    ) -> Result<Self, KindError> {
        let d = degree;
        if d < 2 {
            return Err(KindError::Degree(d));
        }
        let in_range = |e: u32| {
            if (1..d).contains(&e) {
                Ok(())
            } else {
                Err(KindError::Exponent { e, max: d - 1 })
            }
        };
        match shape {
            Shape::Family { h, k } => {
                if contact_in == ContactLabel::P2 {
                    return Err(KindError::FamilyContact { label: contact_in });
                }
                if d + h != 2 * k || h < 1 || k > d - 1 {
                    return Err(KindError::FamilyShape { d, h, k });
                }
            }
            Shape::MonoH { h } => {
                in_range(h)?;
                if contact_in != ContactLabel::P2 && (d - h).is_multiple_of(2) {
                    return Err(KindError::Parity { d, h });
                }
            }
            Shape::MonoK { k } => in_range(k)?,
        }
        let kind = Self {
            contact_in,
            degree,
            shape,
            is_end_bubble,
        };
        if is_end_bubble && !kind.is_end_row() {
            return Err(KindError::NotEndRow(kind.to_string()));
        }
        Ok(kind)
    }

    pub fn contact_in(&self) -> ContactLabel {
        self.contact_in
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_end_bubble(&self) -> bool {
        self.is_end_bubble
    }

    pub fn is_family(&self) -> bool {
        matches!(self.shape, Shape::Family { .. })
    }

    /// Exponent of the monomial that meets the next bubble: `h` for family
    /// and MonoH rows, `k` for MonoK rows.
    pub fn outgoing_exponent(&self) -> u32 {
        match self.shape {
            Shape::Family { h, .. } | Shape::MonoH { h } => h,
            Shape::MonoK { k } => k,
        }
    }

    /// Coordinate holding the outgoing monomial. This is the contact label
    /// of the next bubble.
    pub fn outgoing_slot(&self) -> ContactLabel {
        use ContactLabel::*;
        let h_like = !matches!(self.shape, Shape::MonoK { .. });
        match (self.contact_in, h_like) {
            (P0, true) => P1,
            (P0, false) => P2,
            (P1, true) => P0,
            (P1, false) => P2,
            (P2, true) => P0,
            (P2, false) => P1,
        }
    }

    /// Whether this kind is one of the end-bubble (unblown P³) rows.
    fn is_end_row(&self) -> bool {
        use ContactLabel::*;
        let d = self.degree;
        match (self.contact_in, self.shape) {
            (P0 | P1, Shape::Family { h, .. }) => h == 1,
            (P0 | P1, Shape::MonoH { h }) => h == 1 && d.is_multiple_of(2),
            (P0 | P1, Shape::MonoK { k }) => d == 2 && k == 1,
            (P2, Shape::MonoH { h }) => h == 1,
            (P2, Shape::MonoK { k }) => k == 1,
            (P2, Shape::Family { .. }) => false,
        }
    }

    fn sort_key(&self) -> (usize, u32, (u8, u32, u32), bool) {
        (
            self.contact_in.index(),
            self.degree,
            self.shape.rank(),
            self.is_end_bubble,
        )
    }

    /// Image of the map as a coordinate vector, e.g. `[x^2;0;xy;y^2]`.
    pub fn map_text(&self) -> String {
        let d = self.degree;
        let mono = |e: u32| {
            let x = match e {
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            let y = match d - e {
                0 => String::new(),
                1 => "y".to_string(),
                r => format!("y^{r}"),
            };
            format!("{x}{y}")
        };
        let mut slots = [String::from("0"), String::from("0"), String::from("0")];
        slots[self.contact_in.index()] = format!("x^{d}");
        let (hs, ks) = h_k_slots(self.contact_in);
        match self.shape {
            Shape::Family { h, k } => {
                slots[hs] = mono(h);
                slots[ks] = mono(k);
            }
            Shape::MonoH { h } => slots[hs] = mono(h),
            Shape::MonoK { k } => slots[ks] = mono(k),
        }
        format!("[{};{};{};y^{d}]", slots[0], slots[1], slots[2])
    }
}

/// Coordinates of the `x^h` and `x^k` monomials for each contact label.
fn h_k_slots(label: ContactLabel) -> (usize, usize) {
    match label {
        ContactLabel::P0 => (1, 2),
        ContactLabel::P1 => (0, 2),
        ContactLabel::P2 => (0, 1),
    }
}

impl fmt::Display for FixedMapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        match self.shape {
            Shape::Family { h, k } => write!(f, "{}:F({d},{h},{k})", self.contact_in)?,
            Shape::MonoH { h } => write!(f, "{}:H({d},{h})", self.contact_in)?,
            Shape::MonoK { k } => write!(f, "{}:K({d},{k})", self.contact_in)?,
        }
        if self.is_end_bubble {
            f.write_str("$")?;
        }
        Ok(())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    ratio(n, d)
}

/// Torus weights on `V⁴` (with the bubble equal to `P(V⁴)`), in units of α,
/// listed as tabulated: `x^d` coordinate first, then the `x^h` coordinate,
/// then the remaining coordinate, then `y^d`.
pub fn v4_weights(kind: &FixedMapKind) -> Result<[BigRational; 4], KindError> {
    use ContactLabel::*;
    let d = kind.degree as i64;
    let zero = q(0, 1);
    let w = match (kind.contact_in, kind.shape) {
        (P0, Shape::Family { h, k }) => {
            let (h, k) = (h as i64, k as i64);
            [q(d, d - k), q(h, d - k), q(k, d - k), zero]
        }
        (P0, Shape::MonoH { h }) => {
            let h = h as i64;
            [q(2 * d, d - h), q(2 * h, d - h), q(h + d, d - h), zero]
        }
        (P0, Shape::MonoK { k }) => {
            let k = k as i64;
            [q(d, d - k), q(2 * k - d, d - k), q(k, d - k), zero]
        }
        (P1, Shape::Family { h, k }) => {
            let (h, k) = (h as i64, k as i64);
            [q(-d, d - k), q(-h, d - k), q(-k, d - k), zero]
        }
        (P1, Shape::MonoH { h }) => {
            let h = h as i64;
            [q(-2 * d, d - h), q(-2 * h, d - h), q(-h - d, d - h), zero]
        }
        (P1, Shape::MonoK { k }) => {
            let k = k as i64;
            [q(-d, d - k), q(d - 2 * k, d - k), q(-k, d - k), zero]
        }
        (P2, Shape::MonoH { h }) => {
            let h = h as i64;
            [q(-d, d - h), q(-h, d - h), q(h - 2 * d, d - h), zero]
        }
        (P2, Shape::MonoK { k }) => {
            let k = k as i64;
            [q(d, d - k), q(2 * d - k, d - k), q(k, d - k), zero]
        }
        (P2, Shape::Family { .. }) => return Err(KindError::FamilyContact { label: P2 }),
    };
    Ok(w)
}

/// Which end of a bubble's source component a node sits on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NodeEnd {
    /// `[1:0]`, mapped to the contact point with the previous component.
    In,
    /// `[0:1]`, mapped to the blown-up point (or `[0;0;0;1]` in the last bubble).
    Out,
}

/// Torus weight (in units of α) of the source tangent line at one end of the
/// bubble's source component. The source coordinate `x` carries the weight
/// of `x^d` divided by `d`; the tangent at `[0:1]` has that weight and the
/// tangent at `[1:0]` the opposite one.
pub fn source_tangent_weight(kind: &FixedMapKind, end: NodeEnd) -> BigRational {
    let w = v4_weights(kind).expect("validated kind")[0].clone()
        / BigRational::from_integer(BigInt::from(kind.degree));
    match end {
        NodeEnd::Out => w,
        NodeEnd::In => -w,
    }
}

/// Tangent weight (units of α) of the degree-d base component at its node
/// over 0.
pub fn base_tangent_weight(d: u32) -> BigRational {
    q(-1, d as i64)
}

/// An ordered bubble chain over one of the two poles of the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    steps: Vec<FixedMapKind>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("degree must be at least 2 (got {0})")]
    UnsupportedDegree(u32),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
}

impl Chain {
    /// Checks the chain invariants: starts at P0 in the cover degree, each
    /// next contact and degree follow the outgoing monomial, and only the
    /// last step is an end bubble.
    pub fn new(cover_degree: u32, steps: Vec<FixedMapKind>) -> Result<Self, EnumerationError> {
        let bad = |m: &str| Err(EnumerationError::InvalidChain(m.to_string()));
        let Some(first) = steps.first() else {
            return bad("empty chain");
        };
        if first.contact_in != ContactLabel::P0 || first.degree != cover_degree {
            return bad("first step must have contact P0 and the cover degree");
        }
        for (i, pair) in steps.windows(2).enumerate() {
            let (a, b) = (&pair[0], &pair[1]);
            if a.is_end_bubble {
                return bad(&format!("step {} is an end bubble but not last", i + 1));
            }
            if b.degree != a.outgoing_exponent() || b.contact_in != a.outgoing_slot() {
                return bad(&format!("step {} does not continue step {}", i + 2, i + 1));
            }
        }
        if !steps.last().unwrap().is_end_bubble {
            return bad("last step must be an end bubble");
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[FixedMapKind] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Ord for Chain {
    fn cmp(&self, other: &Self) -> Ordering {
        self.steps.len().cmp(&other.steps.len()).then_with(|| {
            let a = self.steps.iter().map(FixedMapKind::sort_key);
            let b = other.steps.iter().map(FixedMapKind::sort_key);
            a.cmp(b)
        })
    }
}

impl PartialOrd for Chain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A whole fixed locus: the base component and one chain over each pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub cover_degree: u32,
    pub chain_zero: Arc<Chain>,
    pub chain_infinity: Arc<Chain>,
}

/// All rows with the given contact and degree, in table order.
fn rows(label: ContactLabel, d: u32) -> Vec<Shape> {
    let mut out = Vec::new();
    if label != ContactLabel::P2 {
        for h in 1..d {
            if (d + h).is_multiple_of(2) {
                let k = (d + h) / 2;
                if k < d {
                    out.push(Shape::Family { h, k });
                }
            }
        }
    }
    for h in 1..d {
        if label == ContactLabel::P2 || (d - h) % 2 == 1 {
            out.push(Shape::MonoH { h });
        }
    }
    for k in 1..d {
        out.push(Shape::MonoK { k });
    }
    out
}

fn extend(
    label: ContactLabel,
    d: u32,
    prev: Option<&FixedMapKind>,
    prefix: &mut Vec<FixedMapKind>,
    out: &mut Vec<Chain>,
) {
    for shape in rows(label, d) {
        let e = match shape {
            Shape::Family { h, .. } | Shape::MonoH { h } => h,
            Shape::MonoK { k } => k,
        };
        let Ok(kind) = FixedMapKind::new(label, d, shape, e == 1) else {
            // Outgoing exponent 1 without a matching end row.
            continue;
        };
        if let Some(p) = prev {
            // Equal source weights on both sides of the node: the pair is the
            // second fixed point of the family above `p` and is counted there.
            if source_tangent_weight(p, NodeEnd::Out) == -source_tangent_weight(&kind, NodeEnd::In)
            {
                continue;
            }
        }
        prefix.push(kind);
        if kind.is_end_bubble {
            out.push(Chain {
                steps: prefix.clone(),
            });
        } else {
            extend(kind.outgoing_slot(), e, Some(&kind), prefix, out);
        }
        prefix.pop();
    }
}

/// Every bubble chain over one pole for cover degree `d`, sorted by length
/// and then row by row.
pub fn enumerate_chains(d: u32) -> Result<Vec<Chain>, EnumerationError> {
    if d < 2 {
        return Err(EnumerationError::UnsupportedDegree(d));
    }
    let mut out = Vec::new();
    extend(ContactLabel::P0, d, None, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// All fixed loci for cover degree `d`: the Cartesian product of the chains
/// over 0 and over ∞, ordered by (chain over 0, chain over ∞).
pub fn enumerate_configurations(d: u32) -> Result<Vec<Configuration>, EnumerationError> {
    let chains: Vec<Arc<Chain>> = enumerate_chains(d)?.into_iter().map(Arc::new).collect();
    let mut out = Vec::with_capacity(chains.len() * chains.len());
    for a in &chains {
        for b in &chains {
            out.push(Configuration {
                cover_degree: d,
                chain_zero: Arc::clone(a),
                chain_infinity: Arc::clone(b),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ContactLabel::*;

    fn kind(label: ContactLabel, d: u32, shape: Shape, end: bool) -> FixedMapKind {
        FixedMapKind::new(label, d, shape, end).unwrap()
    }

    #[test]
    fn weights_match_table_rows() {
        let w = v4_weights(&kind(P0, 3, Shape::Family { h: 1, k: 2 }, true)).unwrap();
        assert_eq!(w, [q(3, 1), q(1, 1), q(2, 1), q(0, 1)]);
        let w = v4_weights(&kind(P0, 2, Shape::MonoK { k: 1 }, true)).unwrap();
        assert_eq!(w, [q(2, 1), q(0, 1), q(1, 1), q(0, 1)]);
        let w = v4_weights(&kind(P2, 2, Shape::MonoH { h: 1 }, true)).unwrap();
        assert_eq!(w, [q(-2, 1), q(-1, 1), q(-3, 1), q(0, 1)]);
    }

    #[test]
    fn family_tangent_weight() {
        let k = kind(P0, 5, Shape::Family { h: 3, k: 4 }, false);
        assert_eq!(source_tangent_weight(&k, NodeEnd::Out), q(1, 1));
        assert_eq!(source_tangent_weight(&k, NodeEnd::In), q(-1, 1));
        let k = kind(P0, 7, Shape::Family { h: 3, k: 5 }, false);
        assert_eq!(source_tangent_weight(&k, NodeEnd::Out), q(1, 2));
    }

    #[test]
    fn invalid_rows_rejected() {
        assert!(matches!(
            FixedMapKind::new(P0, 4, Shape::MonoH { h: 2 }, false),
            Err(KindError::Parity { .. })
        ));
        assert!(FixedMapKind::new(P2, 4, Shape::MonoH { h: 2 }, false).is_ok());
        assert!(matches!(
            FixedMapKind::new(P2, 3, Shape::Family { h: 1, k: 2 }, true),
            Err(KindError::FamilyContact { .. })
        ));
        assert!(matches!(
            FixedMapKind::new(P0, 4, Shape::Family { h: 1, k: 2 }, false),
            Err(KindError::FamilyShape { .. })
        ));
        assert!(matches!(
            FixedMapKind::new(P0, 3, Shape::MonoK { k: 1 }, true),
            Err(KindError::NotEndRow(_))
        ));
        assert!(matches!(
            FixedMapKind::new(P0, 1, Shape::MonoK { k: 1 }, true),
            Err(KindError::Degree(1))
        ));
    }

    #[test]
    fn transitions_follow_outgoing_slot() {
        assert_eq!(
            kind(P0, 4, Shape::MonoH { h: 3 }, false).outgoing_slot(),
            P1
        );
        assert_eq!(
            kind(P0, 4, Shape::MonoK { k: 3 }, false).outgoing_slot(),
            P2
        );
        assert_eq!(
            kind(P1, 4, Shape::MonoH { h: 3 }, false).outgoing_slot(),
            P0
        );
        assert_eq!(
            kind(P2, 4, Shape::MonoK { k: 3 }, false).outgoing_slot(),
            P1
        );
    }

    #[test]
    fn map_text() {
        assert_eq!(
            kind(P0, 2, Shape::MonoK { k: 1 }, true).map_text(),
            "[x^2;0;xy;y^2]"
        );
        assert_eq!(
            kind(P0, 2, Shape::MonoH { h: 1 }, true).map_text(),
            "[x^2;xy;0;y^2]"
        );
        assert_eq!(
            kind(P1, 5, Shape::Family { h: 3, k: 4 }, false).map_text(),
            "[x^3y^2;x^5;x^4y;y^5]"
        );
    }

    #[test]
    fn degree_two_has_two_single_step_chains() {
        let chains = enumerate_chains(2).unwrap();
        let names: Vec<String> = chains.iter().map(|c| c.to_string()).collect();
        assert_eq!(names, vec!["P0:H(2,1)$", "P0:K(2,1)$"]);
        assert_eq!(enumerate_configurations(2).unwrap().len(), 4);
    }

    #[test]
    fn degree_one_rejected() {
        assert_eq!(
            enumerate_chains(1),
            Err(EnumerationError::UnsupportedDegree(1))
        );
    }

    #[test]
    fn chain_constructor_checks_links() {
        let a = kind(P0, 3, Shape::MonoK { k: 2 }, false);
        let b = kind(P2, 2, Shape::MonoH { h: 1 }, true);
        assert!(Chain::new(3, vec![a, b]).is_ok());
        let c = kind(P1, 2, Shape::MonoH { h: 1 }, true);
        assert!(Chain::new(3, vec![a, c]).is_err());
        assert!(Chain::new(3, vec![a]).is_err());
        assert!(Chain::new(2, vec![b]).is_err());
    }
}
