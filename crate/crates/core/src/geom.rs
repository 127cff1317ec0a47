//! H-triangles, regions and coverings.
//!
//! All geometry is expressed in stretched coordinates: a unit equilateral
//! triangle has base 1 and height 1. The affine map `y -> y * sqrt(3) / 2`
//! back to the Euclidean picture is applied only when rendering.
//!
//! Triangles are closed point sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Apex above the horizontal side.
    Up,
    /// Apex below the horizontal side.
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }
}

/// Closed x-interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// A triangle with one side parallel to the x-axis.
///
/// The horizontal side is stored explicitly, so the shape cannot lose its
/// horizontal side through construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTriangle", into = "RawTriangle")]
pub struct HTriangle {
    base_y: Rat,
    base_x_left: Rat,
    base_len: Rat,
    apex_x: Rat,
    apex_y: Rat,
}

#[derive(Serialize, Deserialize)]
struct RawTriangle {
    base_y: Rat,
    base_x_left: Rat,
    base_len: Rat,
    apex_x: Rat,
    apex_y: Rat,
}

impl TryFrom<RawTriangle> for HTriangle {
    type Error = Error;

    fn try_from(r: RawTriangle) -> Result<Self> {
        HTriangle::new(r.base_y, r.base_x_left, r.base_len, r.apex_x, r.apex_y)
    }
}

impl From<HTriangle> for RawTriangle {
    fn from(t: HTriangle) -> Self {
        RawTriangle {
            base_y: t.base_y,
            base_x_left: t.base_x_left,
            base_len: t.base_len,
            apex_x: t.apex_x,
            apex_y: t.apex_y,
        }
    }
}

/// Non-horizontal edge, stored bottom-to-top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlantedEdge {
    pub bottom: Point,
    pub top: Point,
}

impl SlantedEdge {
    /// `dx/dy` along the edge.
    pub fn inverse_slope(&self) -> Rat {
        (&self.top.x - &self.bottom.x) / (&self.top.y - &self.bottom.y)
    }

    pub fn x_at(&self, y: &Rat) -> Rat {
        &self.bottom.x + self.inverse_slope() * (y - &self.bottom.y)
    }

    pub fn spans(&self, y: &Rat) -> bool {
        &self.bottom.y <= y && y <= &self.top.y
    }

    /// The y at which the supporting lines of two non-parallel edges meet,
    /// if it lies inside both edges' y-spans.
    pub fn crossing_y(&self, other: &SlantedEdge) -> Option<Rat> {
        let m1 = self.inverse_slope();
        let m2 = other.inverse_slope();
        if m1 == m2 {
            return None;
        }
        // x1 + m1 (y - y1) = x2 + m2 (y - y2)
        let num = &other.bottom.x - &self.bottom.x + &m1 * &self.bottom.y - &m2 * &other.bottom.y;
        let y = num / (m1 - m2);
        (self.spans(&y) && other.spans(&y)).then_some(y)
    }
}

impl HTriangle {
    pub fn new(base_y: Rat, base_x_left: Rat, base_len: Rat, apex_x: Rat, apex_y: Rat) -> Result<Self> {
        if !base_len.is_positive() {
            return Err(Error::DegenerateTriangle(format!("base length {base_len} is not positive")));
        }
        if apex_y == base_y {
            return Err(Error::DegenerateTriangle(format!("apex lies on the base line y = {base_y}")));
        }
        Ok(HTriangle { base_y, base_x_left, base_len, apex_x, apex_y })
    }

    /// Isosceles H-triangle with the apex centred over the base; in stretched
    /// coordinates `side = base = height` is an equilateral triangle.
    pub fn equilateral(base_x_left: Rat, base_y: Rat, side: Rat, orientation: Orientation) -> Result<Self> {
        let apex_x = &base_x_left + &side / Rat::from_int(2);
        let apex_y = match orientation {
            Orientation::Up => &base_y + &side,
            Orientation::Down => &base_y - &side,
        };
        HTriangle::new(base_y, base_x_left, side, apex_x, apex_y)
    }

    /// Unit equilateral triangle in stretched coordinates.
    pub fn unit(base_x_left: Rat, base_y: Rat, orientation: Orientation) -> Self {
        HTriangle::equilateral(base_x_left, base_y, Rat::one(), orientation).expect("unit side is positive")
    }

    pub fn base_y(&self) -> &Rat {
        &self.base_y
    }

    pub fn base_x_left(&self) -> &Rat {
        &self.base_x_left
    }

    pub fn base_x_right(&self) -> Rat {
        &self.base_x_left + &self.base_len
    }

    pub fn base_len(&self) -> &Rat {
        &self.base_len
    }

    pub fn apex_x(&self) -> &Rat {
        &self.apex_x
    }

    pub fn apex_y(&self) -> &Rat {
        &self.apex_y
    }

    pub fn orientation(&self) -> Orientation {
        if self.apex_y > self.base_y {
            Orientation::Up
        } else {
            Orientation::Down
        }
    }

    pub fn height(&self) -> Rat {
        (&self.apex_y - &self.base_y).abs()
    }

    /// Base 1 and height 1: the stretched image of a unit equilateral triangle
    /// (or any sheared triangle with the same base and height).
    pub fn is_unit(&self) -> bool {
        self.base_len == Rat::one() && self.height() == Rat::one()
    }

    pub fn y_min(&self) -> &Rat {
        std::cmp::min(&self.base_y, &self.apex_y)
    }

    pub fn y_max(&self) -> &Rat {
        std::cmp::max(&self.base_y, &self.apex_y)
    }

    /// Vertices in the order base-left, base-right, apex.
    pub fn vertices(&self) -> [Point; 3] {
        [
            Point::new(self.base_x_left.clone(), self.base_y.clone()),
            Point::new(self.base_x_right(), self.base_y.clone()),
            Point::new(self.apex_x.clone(), self.apex_y.clone()),
        ]
    }

    pub fn slanted_edges(&self) -> [SlantedEdge; 2] {
        let [l, r, apex] = self.vertices();
        let edge = |p: Point| {
            if p.y < apex.y {
                SlantedEdge { bottom: p, top: apex.clone() }
            } else {
                SlantedEdge { bottom: apex.clone(), top: p }
            }
        };
        [edge(l), edge(r)]
    }

    pub fn translated(&self, dx: &Rat, dy: &Rat) -> HTriangle {
        HTriangle {
            base_y: &self.base_y + dy,
            base_x_left: &self.base_x_left + dx,
            base_len: self.base_len.clone(),
            apex_x: &self.apex_x + dx,
            apex_y: &self.apex_y + dy,
        }
    }

    /// Intersection of the closed triangle with the horizontal line at `y`.
    ///
    /// At `y = base_y` the whole base is returned whatever the orientation;
    /// the right-continuity convention of the projection functions is applied
    /// in [`crate::projection`], not here.
    pub fn cross_section(&self, y: &Rat) -> Option<Interval> {
        if y < self.y_min() || y > self.y_max() {
            return None;
        }
        let lambda = (y - &self.base_y) / (&self.apex_y - &self.base_y);
        let right = self.base_x_right();
        let lo = &self.base_x_left + &lambda * (&self.apex_x - &self.base_x_left);
        let hi = &right + &lambda * (&self.apex_x - &right);
        Some(Interval { lo, hi })
    }

    /// Closed-set membership by exact orientation tests.
    pub fn contains_point(&self, p: &Point) -> bool {
        let [a, b, c] = self.vertices();
        let s = orient(&a, &b, &c);
        let positive = s.is_positive();
        [orient(&a, &b, p), orient(&b, &c, p), orient(&c, &a, p)]
            .iter()
            .all(|o| o.is_zero() || o.is_positive() == positive)
    }

    pub fn area(&self) -> Rat {
        &self.base_len * &self.height() / Rat::from_int(2)
    }
}

/// Twice the signed area of `abc`.
fn orient(a: &Point, b: &Point, c: &Point) -> Rat {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// A nonempty union of H-triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    parts: Vec<HTriangle>,
}

impl Region {
    pub fn new(parts: Vec<HTriangle>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyRegion);
        }
        Ok(Region { parts })
    }

    pub fn single(tri: HTriangle) -> Self {
        Region { parts: vec![tri] }
    }

    pub fn parts(&self) -> &[HTriangle] {
        &self.parts
    }

    /// True iff no two parts share an interior point.
    pub fn interiors_disjoint(&self) -> bool {
        crate::verify::interiors_disjoint(&self.parts)
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.parts.iter().any(|t| t.contains_point(p))
    }
}

/// A target region together with the triangles claimed to cover it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub target: Region,
    pieces: Vec<HTriangle>,
    pub label: String,
}

impl Covering {
    pub fn new(target: Region, pieces: Vec<HTriangle>, label: impl Into<String>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyCovering);
        }
        Ok(Covering { target, pieces, label: label.into() })
    }

    pub fn pieces(&self) -> &[HTriangle] {
        &self.pieces
    }

    /// Removes the piece at `index`, failing if it is the last one.
    pub fn without_piece(&self, index: usize) -> Result<Covering> {
        let mut pieces = self.pieces.clone();
        pieces.remove(index);
        Covering::new(self.target.clone(), pieces, self.label.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn unit_up() -> HTriangle {
        HTriangle::unit(Rat::zero(), Rat::zero(), Orientation::Up)
    }

    #[test]
    fn cross_section_midline_apex_and_miss() {
        let t = unit_up();
        assert_eq!(t.cross_section(&rat(1, 2)), Some(Interval { lo: rat(1, 4), hi: rat(3, 4) }));
        assert_eq!(t.cross_section(&Rat::one()), Some(Interval { lo: rat(1, 2), hi: rat(1, 2) }));
        assert_eq!(t.cross_section(&Rat::from_int(2)), None);
        assert_eq!(t.cross_section(&rat(-1, 100)), None);
    }

    #[test]
    fn cross_section_at_base_for_down_triangle() {
        let t = HTriangle::unit(Rat::zero(), Rat::zero(), Orientation::Down);
        assert_eq!(t.cross_section(&Rat::zero()), Some(Interval { lo: Rat::zero(), hi: Rat::one() }));
        assert_eq!(t.cross_section(&rat(-1, 2)), Some(Interval { lo: rat(1, 4), hi: rat(3, 4) }));
    }

    #[test]
    fn contains_point_closed_semantics() {
        let t = unit_up();
        assert!(t.contains_point(&Point::new(rat(1, 2), rat(1, 2))));
        assert!(t.contains_point(&Point::new(Rat::zero(), Rat::zero())));
        assert!(!t.contains_point(&Point::new(rat(1, 2), rat(1001, 1000))));
        assert!(t.contains_point(&Point::new(rat(1, 4), rat(1, 2))));
        assert!(!t.contains_point(&Point::new(rat(24, 100), rat(1, 2))));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(HTriangle::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::one()).is_err());
        assert!(HTriangle::new(Rat::zero(), Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()).is_err());
        assert!(Region::new(vec![]).is_err());
        assert!(Covering::new(Region::single(unit_up()), vec![], "").is_err());
    }

    #[test]
    fn orientation_and_height() {
        let t = HTriangle::new(rat(1, 2), Rat::zero(), Rat::from_int(3), rat(7, 2), rat(-3, 2)).unwrap();
        assert_eq!(t.orientation(), Orientation::Down);
        assert_eq!(t.height(), Rat::from_int(2));
        assert!(!t.is_unit());
    }

    #[test]
    fn serde_rejects_degenerate() {
        let json = r#"{"base_y":"0","base_x_left":"0","base_len":"-1","apex_x":"0","apex_y":"1"}"#;
        assert!(serde_json::from_str::<HTriangle>(json).is_err());
        let json = r#"{"base_y":"0","base_x_left":"1/3","base_len":"1","apex_x":"5/6","apex_y":"1"}"#;
        let t: HTriangle = serde_json::from_str(json).unwrap();
        assert_eq!(t.base_x_right(), rat(4, 3));
    }

    fn arb_small() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
    }

    fn arb_triangle() -> impl Strategy<Value = HTriangle> {
        (arb_small(), arb_small(), (1i64..30, 1i64..10), arb_small(), arb_small(), any::<bool>()).prop_map(
            |(by, bx, (lp, lq), ax, h, up)| {
                let h = if h.is_zero() { Rat::one() } else { h.abs() };
                let apex_y = if up { &by + &h } else { &by - &h };
                HTriangle::new(by, bx, rat(lp, lq), ax, apex_y).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn width_is_linear_in_y(t in arb_triangle(), num in 1i64..99) {
            let lambda = rat(num, 100);
            let y = t.base_y() + &lambda * &(t.apex_y() - t.base_y());
            let iv = t.cross_section(&y).unwrap();
            let dist_from_apex = (t.apex_y() - &y).abs();
            prop_assert_eq!(iv.width(), t.base_len() * &dist_from_apex / t.height());
        }

        #[test]
        fn contains_point_agrees_with_cross_section(t in arb_triangle(), x in arb_small(), y in arb_small()) {
            let p = Point::new(x, y);
            let via_section = t.cross_section(&p.y).is_some_and(|iv| iv.contains(&p.x));
            prop_assert_eq!(t.contains_point(&p), via_section);
        }
    }
}
