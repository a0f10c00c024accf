//! Outer-bound evaluation for the capacity region of the two-user
//! linear deterministic interference channel with noisy output feedback.
//!
//! The region is the set of non-negative rate pairs satisfying, for each
//! user `i` (with `j` the other user), an individual bound from the direct
//! and interference links, an individual bound limited by what user `j`'s
//! feedback link can relay, two sum-rate bounds and one `2R_i + R_j` bound.
//! The feedback-limited bounds add a clipped increment per feedback link.

use std::fmt;
use std::str::FromStr;

use crate::params::{ChannelParams, ParamError, User};
use crate::polytope::{PolytopeError, RatePolytope};

/// `(x)^+`
fn pos(x: i64) -> i64 {
    x.max(0)
}

/// One instantiated inequality of the region description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    /// Individual rate of user 1 from direct and cross links.
    Eq6R1,
    Eq6R2,
    /// Individual rate of user 1 limited by user 2's feedback link.
    Eq7R1,
    Eq7R2,
    /// Sum rate, feedback independent.
    Eq8Sum,
    /// Sum rate with both feedback increments.
    Eq9Sum,
    /// `2R_1 + R_2`, carrying user 2's feedback increment.
    Eq10TwoR1R2,
    /// `R_1 + 2R_2`, carrying user 1's feedback increment.
    Eq10TwoR2R1,
}

impl BoundId {
    pub const ALL: [BoundId; 8] = [
        BoundId::Eq6R1,
        BoundId::Eq6R2,
        BoundId::Eq7R1,
        BoundId::Eq7R2,
        BoundId::Eq8Sum,
        BoundId::Eq9Sum,
        BoundId::Eq10TwoR1R2,
        BoundId::Eq10TwoR2R1,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BoundId::Eq6R1 => "EQ6_R1",
            BoundId::Eq6R2 => "EQ6_R2",
            BoundId::Eq7R1 => "EQ7_R1",
            BoundId::Eq7R2 => "EQ7_R2",
            BoundId::Eq8Sum => "EQ8_SUM",
            BoundId::Eq9Sum => "EQ9_SUM",
            BoundId::Eq10TwoR1R2 => "EQ10_2R1_R2",
            BoundId::Eq10TwoR2R1 => "EQ10_2R2_R1",
        }
    }

    /// `(coefficient on R1, coefficient on R2)` of the inequality.
    pub fn coefficients(self) -> (i64, i64) {
        match self {
            BoundId::Eq6R1 | BoundId::Eq7R1 => (1, 0),
            BoundId::Eq6R2 | BoundId::Eq7R2 => (0, 1),
            BoundId::Eq8Sum | BoundId::Eq9Sum => (1, 1),
            BoundId::Eq10TwoR1R2 => (2, 1),
            BoundId::Eq10TwoR2R1 => (1, 2),
        }
    }

    /// The bound playing the same role after the users are relabelled.
    pub fn swapped(self) -> BoundId {
        match self {
            BoundId::Eq6R1 => BoundId::Eq6R2,
            BoundId::Eq6R2 => BoundId::Eq6R1,
            BoundId::Eq7R1 => BoundId::Eq7R2,
            BoundId::Eq7R2 => BoundId::Eq7R1,
            BoundId::Eq10TwoR1R2 => BoundId::Eq10TwoR2R1,
            BoundId::Eq10TwoR2R1 => BoundId::Eq10TwoR1R2,
            other => other,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for BoundId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| format!("unknown bound id `{s}`"))
    }
}

/// Where a constraint of a [`BoundSet`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Bound(BoundId),
    NonNegative,
    /// Supplied directly rather than evaluated from channel parameters.
    Given,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Bound(id) => write!(f, "{id}"),
            Provenance::NonNegative => f.write_str("NONNEG"),
            Provenance::Given => f.write_str("GIVEN"),
        }
    }
}

impl FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "NONNEG" => Ok(Provenance::NonNegative),
            "GIVEN" => Ok(Provenance::Given),
            other => other.parse().map(Provenance::Bound),
        }
    }
}

/// Half-plane `coef1 * R1 + coef2 * R2 <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coef1: i64,
    pub coef2: i64,
    pub rhs: i64,
    pub source: Provenance,
}

impl Constraint {
    pub fn new(coef1: i64, coef2: i64, rhs: i64, source: Provenance) -> Self {
        Constraint {
            coef1,
            coef2,
            rhs,
            source,
        }
    }

    pub fn nonneg_r1() -> Self {
        Constraint::new(-1, 0, 0, Provenance::NonNegative)
    }

    pub fn nonneg_r2() -> Self {
        Constraint::new(0, -1, 0, Provenance::NonNegative)
    }

    /// Same half-plane, ignoring provenance.
    pub fn same_halfplane(&self, other: &Constraint) -> bool {
        (self.coef1, self.coef2, self.rhs) == (other.coef1, other.coef2, other.rhs)
    }

    /// The constraint with R1 and R2 exchanged.
    pub fn mirrored(&self) -> Self {
        let source = match self.source {
            Provenance::Bound(id) => Provenance::Bound(id.swapped()),
            other => other,
        };
        Constraint::new(self.coef2, self.coef1, self.rhs, source)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: i64, v: &str| match c {
            0 => String::new(),
            1 => v.to_string(),
            -1 => format!("-{v}"),
            c => format!("{c}{v}"),
        };
        let lhs = match (self.coef1, self.coef2) {
            (a, 0) => term(a, "R1"),
            (0, b) => term(b, "R2"),
            (a, b) if b < 0 => format!("{} - {}", term(a, "R1"), term(-b, "R2")),
            (a, b) => format!("{} + {}", term(a, "R1"), term(b, "R2")),
        };
        write!(f, "{lhs} <= {} [{}]", self.rhs, self.source)
    }
}

/// A list of half-planes in the rate plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundSet {
    pub entries: Vec<Constraint>,
}

impl BoundSet {
    pub fn new(entries: Vec<Constraint>) -> Self {
        BoundSet { entries }
    }

    /// `R1 <= a1, R2 <= a2, R1+R2 <= b, 2R1+R2 <= c1, R1+2R2 <= c2`, plus non-negativity.
    pub fn canonical(a1: i64, a2: i64, b: i64, c1: i64, c2: i64) -> Self {
        let g = Provenance::Given;
        BoundSet::new(vec![
            Constraint::new(1, 0, a1, g),
            Constraint::new(0, 1, a2, g),
            Constraint::new(1, 1, b, g),
            Constraint::new(2, 1, c1, g),
            Constraint::new(1, 2, c2, g),
            Constraint::nonneg_r1(),
            Constraint::nonneg_r2(),
        ])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Constraint> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Right-hand side of the first constraint with these coefficients.
    pub fn rhs_of(&self, coef1: i64, coef2: i64) -> Option<i64> {
        self.entries
            .iter()
            .find(|c| c.coef1 == coef1 && c.coef2 == coef2)
            .map(|c| c.rhs)
    }

    pub fn mirrored(&self) -> Self {
        BoundSet::new(self.entries.iter().map(Constraint::mirrored).collect())
    }
}

/// Clipped gain that `user`'s feedback link contributes to the sum-rate
/// and weighted-sum bounds.
fn feedback_increment(p: &ChannelParams, user: User) -> i64 {
    let other = user.other();
    let direct = p.direct(user) as i64;
    let inr_here = p.interference_at(user) as i64;
    let inr_there = p.interference_at(other) as i64;
    let fb = p.feedback(user) as i64;

    let relayed = pos(fb.min(direct.max(inr_here)) - pos(direct - inr_here));
    pos(relayed - pos(inr_here - direct) - direct.min(inr_there)
        + pos(direct - inr_here).min(inr_there))
}

fn individual_cut(p: &ChannelParams, user: User) -> i64 {
    let other = user.other();
    let direct = p.direct(user) as i64;
    // Interference caused by `user` at the other receiver.
    let caused = p.interference_at(other) as i64;
    let suffered = p.interference_at(user) as i64;
    direct.max(caused).min(direct.max(suffered))
}

fn individual_feedback(p: &ChannelParams, user: User) -> i64 {
    let other = user.other();
    let direct = p.direct(user) as i64;
    let caused = p.interference_at(other) as i64;
    let other_direct = p.direct(other) as i64;
    let other_fb = p.feedback(other) as i64;
    direct
        .max(caused)
        .min(direct.max(other_fb - pos(other_direct - caused)))
}

fn weighted_sum(p: &ChannelParams, user: User) -> i64 {
    let other = user.other();
    let n_ii = p.direct(user) as i64;
    let n_jj = p.direct(other) as i64;
    let n_ij = p.interference_at(user) as i64;
    let n_ji = p.interference_at(other) as i64;
    n_jj.max(n_ji) + n_ii.max(n_ij) + pos(n_ii - n_ji) - pos(n_jj - n_ji).min(n_ij)
        + feedback_increment(p, other)
}

/// Exact right-hand side of the inequality `id` for `params`.
pub fn evaluate_bound(params: &ChannelParams, id: BoundId) -> Result<i64, ParamError> {
    params.validate()?;
    let p = params;
    let n11 = p.fwd11 as i64;
    let n22 = p.fwd22 as i64;
    let n12 = p.inr12 as i64;
    let n21 = p.inr21 as i64;
    let value = match id {
        BoundId::Eq6R1 => individual_cut(p, User::One),
        BoundId::Eq6R2 => individual_cut(p, User::Two),
        BoundId::Eq7R1 => individual_feedback(p, User::One),
        BoundId::Eq7R2 => individual_feedback(p, User::Two),
        BoundId::Eq8Sum => (n11.max(n12) + pos(n22 - n12)).min(n22.max(n21) + pos(n11 - n21)),
        BoundId::Eq9Sum => {
            pos(n11 - n12).max(n21)
                + pos(n22 - n21).max(n12)
                + feedback_increment(p, User::One)
                + feedback_increment(p, User::Two)
        }
        BoundId::Eq10TwoR1R2 => weighted_sum(p, User::One),
        BoundId::Eq10TwoR2R1 => weighted_sum(p, User::Two),
    };
    debug_assert!(value >= 0, "{id} evaluated to {value} for {params}");
    Ok(value)
}

/// All eight evaluations, in [`BoundId::ALL`] order.
pub fn evaluate_all(params: &ChannelParams) -> Result<[(BoundId, i64); 8], ParamError> {
    params.validate()?;
    let mut out = [(BoundId::Eq6R1, 0); 8];
    for (slot, id) in out.iter_mut().zip(BoundId::ALL) {
        *slot = (id, evaluate_bound(params, id)?);
    }
    Ok(out)
}

/// The seven-entry description of the region: five canonical bounds, each
/// the minimum of its contributing evaluations and tagged with the binding
/// one (the first listed on ties), plus non-negativity.
pub fn build_bounds(params: &ChannelParams) -> Result<BoundSet, ParamError> {
    let values = evaluate_all(params)?;
    let value = |id: BoundId| values.iter().find(|(v, _)| *v == id).unwrap().1;
    let tightest = |ids: &[BoundId]| {
        let id = *ids.iter().min_by_key(|id| value(**id)).unwrap();
        let (c1, c2) = id.coefficients();
        Constraint::new(c1, c2, value(id), Provenance::Bound(id))
    };
    Ok(BoundSet::new(vec![
        tightest(&[BoundId::Eq6R1, BoundId::Eq7R1]),
        tightest(&[BoundId::Eq6R2, BoundId::Eq7R2]),
        tightest(&[BoundId::Eq8Sum, BoundId::Eq9Sum]),
        tightest(&[BoundId::Eq10TwoR1R2]),
        tightest(&[BoundId::Eq10TwoR2R1]),
        Constraint::nonneg_r1(),
        Constraint::nonneg_r2(),
    ]))
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegionError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// The capacity region as an exact polygon.
pub fn capacity_region(params: &ChannelParams) -> Result<RatePolytope, RegionError> {
    let bounds = build_bounds(params)?;
    Ok(RatePolytope::from_bounds(bounds)?)
}
