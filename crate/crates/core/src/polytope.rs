//! Exact two-dimensional convex polygons cut out by integer half-planes.

use std::cmp::Ordering;
use std::fmt;

use crate::rational::Rational;
use crate::region::{BoundSet, Constraint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("no constraint bounds R{0} from above")]
    Unbounded(u8),
    #[error("bound set lacks the non-negativity constraint on R{0}")]
    MissingNonNegativity(u8),
    #[error("the constraints admit no feasible point")]
    Empty,
}

/// A rate pair in bits per channel use.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatePoint {
    pub r1: Rational,
    pub r2: Rational,
}

impl RatePoint {
    pub fn new(r1: Rational, r2: Rational) -> Self {
        RatePoint { r1, r2 }
    }

    pub fn integer(r1: i64, r2: i64) -> Self {
        RatePoint::new(r1.into(), r2.into())
    }

    pub fn origin() -> Self {
        RatePoint::integer(0, 0)
    }

    pub fn mirrored(&self) -> Self {
        RatePoint::new(self.r2, self.r1)
    }

    /// Coordinate along axis 1 (R1) or 2 (R2).
    pub fn coord(&self, axis: Axis) -> Rational {
        match axis {
            Axis::R1 => self.r1,
            Axis::R2 => self.r2,
        }
    }
}

impl fmt::Debug for RatePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.r1, self.r2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    R1,
    R2,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::R1 => Axis::R2,
            Axis::R2 => Axis::R1,
        }
    }
}

fn satisfies(c: &Constraint, p: &RatePoint) -> bool {
    Rational::from(c.coef1) * p.r1 + Rational::from(c.coef2) * p.r2 <= Rational::from(c.rhs)
}

fn is_tight(c: &Constraint, p: &RatePoint) -> bool {
    Rational::from(c.coef1) * p.r1 + Rational::from(c.coef2) * p.r2 == Rational::from(c.rhs)
}

/// Intersection of the boundary lines of two constraints, if not parallel.
fn intersect(a: &Constraint, b: &Constraint) -> Option<RatePoint> {
    let det = a.coef1 as i128 * b.coef2 as i128 - b.coef1 as i128 * a.coef2 as i128;
    if det == 0 {
        return None;
    }
    let x = a.rhs as i128 * b.coef2 as i128 - b.rhs as i128 * a.coef2 as i128;
    let y = a.coef1 as i128 * b.rhs as i128 - b.coef1 as i128 * a.rhs as i128;
    Some(RatePoint::new(Rational::new(x, det), Rational::new(y, det)))
}

fn cross(o: &RatePoint, a: &RatePoint, b: &RatePoint) -> Rational {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

/// Sorts points of a convex polygon counter-clockwise around `center`,
/// starting at angle zero.
fn sort_ccw(points: &mut [RatePoint], center: RatePoint) {
    let half = |p: &RatePoint| {
        let dy = p.r2 - center.r2;
        let dx = p.r1 - center.r1;
        if dy > Rational::ZERO || (dy.is_zero() && dx > Rational::ZERO) {
            0
        } else {
            1
        }
    };
    points.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| {
            let c = cross(&center, a, b);
            Rational::ZERO.cmp(&c)
        })
    });
}

/// Canonical start vertex: largest R1, then smallest R2.
fn anchor_order(a: &RatePoint, b: &RatePoint) -> Ordering {
    b.r1.cmp(&a.r1).then(a.r2.cmp(&b.r2))
}

/// A convex polygon in the rate plane with its half-plane description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatePolytope {
    bounds: BoundSet,
    vertices: Vec<RatePoint>,
}

impl RatePolytope {
    /// Enumerates vertices as the feasible pairwise intersections of the
    /// constraint boundaries, deduplicated and ordered counter-clockwise from
    /// the vertex with the largest R1 (smallest R2 on ties). Points and
    /// segments come out as one or two vertices.
    pub fn from_bounds(bounds: BoundSet) -> Result<Self, PolytopeError> {
        let has = |pred: &dyn Fn(&Constraint) -> bool| bounds.iter().any(pred);
        if !has(&|c| c.coef1 == -1 && c.coef2 == 0 && c.rhs == 0) {
            return Err(PolytopeError::MissingNonNegativity(1));
        }
        if !has(&|c| c.coef1 == 0 && c.coef2 == -1 && c.rhs == 0) {
            return Err(PolytopeError::MissingNonNegativity(2));
        }
        if !has(&|c| c.coef1 > 0 && c.coef2 >= 0) {
            return Err(PolytopeError::Unbounded(1));
        }
        if !has(&|c| c.coef2 > 0 && c.coef1 >= 0) {
            return Err(PolytopeError::Unbounded(2));
        }

        let entries = &bounds.entries;
        let mut vertices: Vec<RatePoint> = Vec::new();
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                let Some(p) = intersect(a, b) else { continue };
                if entries.iter().all(|c| satisfies(c, &p)) && !vertices.contains(&p) {
                    vertices.push(p);
                }
            }
        }
        if vertices.is_empty() {
            return Err(PolytopeError::Empty);
        }

        if vertices.len() >= 3 {
            let n = Rational::from_integer(vertices.len() as i128);
            let center = RatePoint::new(
                vertices.iter().map(|v| v.r1).sum::<Rational>() / n,
                vertices.iter().map(|v| v.r2).sum::<Rational>() / n,
            );
            sort_ccw(&mut vertices, center);
        } else {
            vertices.sort_by(anchor_order);
        }
        let start = vertices
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| anchor_order(a, b))
            .map(|(i, _)| i)
            .unwrap();
        vertices.rotate_left(start);

        Ok(RatePolytope { bounds, vertices })
    }

    pub fn bounds(&self) -> &BoundSet {
        &self.bounds
    }

    pub fn vertices(&self) -> &[RatePoint] {
        &self.vertices
    }

    /// Boundary-inclusive exact membership.
    pub fn contains(&self, p: &RatePoint) -> bool {
        self.bounds.iter().all(|c| satisfies(c, p))
    }

    /// Constraints holding with equality at `p`.
    pub fn active_constraints<'a>(&'a self, p: &'a RatePoint) -> impl Iterator<Item = &'a Constraint> + 'a {
        self.bounds.iter().filter(move |c| is_tight(c, p))
    }

    /// Convexity makes a vertex check sufficient.
    pub fn subset_of(&self, other: &RatePolytope) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    pub fn same_region(&self, other: &RatePolytope) -> bool {
        self.subset_of(other) && other.subset_of(self)
    }

    /// Maximum of `c1 * R1 + c2 * R2` over the polygon.
    pub fn max_linear(&self, c1: i64, c2: i64) -> Rational {
        self.argmax_linear(c1, c2).0
    }

    pub fn argmax_linear(&self, c1: i64, c2: i64) -> (Rational, RatePoint) {
        let (c1, c2) = (Rational::from(c1), Rational::from(c2));
        self.vertices
            .iter()
            .map(|v| (c1 * v.r1 + c2 * v.r2, *v))
            .max_by(|a, b| a.0.cmp(&b.0))
            .expect("polytope has at least one vertex")
    }

    /// Largest coordinate along `fixed.other()` among points whose `fixed`
    /// coordinate equals `value`, or `None` when that line misses the polygon.
    pub fn slice_max(&self, fixed: Axis, value: Rational) -> Option<Rational> {
        let mut hi: Option<Rational> = None;
        let mut lo: Option<Rational> = None;
        for c in self.bounds.iter() {
            let (free_coef, fixed_coef) = match fixed {
                Axis::R2 => (c.coef1, c.coef2),
                Axis::R1 => (c.coef2, c.coef1),
            };
            let room = Rational::from(c.rhs) - Rational::from(fixed_coef) * value;
            match free_coef.cmp(&0) {
                Ordering::Greater => {
                    let cap = room / Rational::from(free_coef);
                    hi = Some(hi.map_or(cap, |h| h.min(cap)));
                }
                Ordering::Less => {
                    let floor = room / Rational::from(free_coef);
                    lo = Some(lo.map_or(floor, |l| l.max(floor)));
                }
                Ordering::Equal => {
                    if room < Rational::ZERO {
                        return None;
                    }
                }
            }
        }
        let hi = hi?;
        match lo {
            Some(lo) if lo > hi => None,
            _ => Some(hi),
        }
    }

    /// Largest value of a single coordinate over the polygon.
    pub fn max_coord(&self, axis: Axis) -> Rational {
        self.vertices
            .iter()
            .map(|v| v.coord(axis))
            .max()
            .expect("polytope has at least one vertex")
    }

    pub fn mirrored(&self) -> Result<Self, PolytopeError> {
        RatePolytope::from_bounds(self.bounds.mirrored())
    }
}
