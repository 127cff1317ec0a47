//! Exact coverage decision by slab decomposition.
//!
//! The critical heights of a set of triangles are all vertex heights plus
//! every height at which the supporting lines of two non-parallel slanted
//! edges cross inside both edges' y-ranges. Between two consecutive
//! critical heights each edge's x-coordinate is an affine function of y and
//! no two endpoints change order, so "the target cross-section is contained
//! in the union of the piece cross-sections" has the same truth value on the
//! whole open slab. It is therefore evaluated once, at the slab midpoint.
//!
//! Coverage of the open slabs is enough for coverage of the closed target:
//! every target point is a limit of target points lying in open slabs, and
//! a finite union of closed pieces is closed.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Covering, HTriangle, Interval, Point, SlantedEdge};
use crate::rat::Rat;

/// An open horizontal segment `{(x, y) : x_lo < x < x_hi}` inside the target
/// and outside every piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub y: Rat,
    pub x_lo: Rat,
    pub x_hi: Rat,
}

impl Witness {
    pub fn midpoint(&self) -> Point {
        Point::new(self.x_lo.midpoint(&self.x_hi), self.y.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub covered: bool,
    pub witness: Option<Witness>,
    pub slab_count: usize,
    pub critical_ys: Vec<Rat>,
}

/// Sorted, deduplicated critical heights of a set of triangles.
pub fn critical_ys<'a>(tris: impl IntoIterator<Item = &'a HTriangle>) -> Vec<Rat> {
    let mut ys = Vec::new();
    let mut edges: Vec<SlantedEdge> = Vec::new();
    for t in tris {
        ys.push(t.base_y().clone());
        ys.push(t.apex_y().clone());
        edges.extend(t.slanted_edges());
    }
    // Group by direction: parallel edges never cross.
    let slopes: Vec<Rat> = edges.iter().map(SlantedEdge::inverse_slope).collect();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            if slopes[i] == slopes[j] {
                continue;
            }
            let (a, b) = (&edges[i], &edges[j]);
            if a.top.y < b.bottom.y || b.top.y < a.bottom.y {
                continue;
            }
            if let Some(y) = a.crossing_y(b) {
                ys.push(y);
            }
        }
    }
    ys.sort();
    ys.dedup();
    ys
}

/// Union of closed intervals as sorted disjoint closed intervals; touching
/// intervals are merged.
fn merge(mut ivs: Vec<Interval>) -> Vec<Interval> {
    ivs.sort_by(|a, b| a.lo.cmp(&b.lo));
    let mut out: Vec<Interval> = Vec::with_capacity(ivs.len());
    for iv in ivs {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

/// First open gap of `need` not covered by the sorted disjoint `have`.
fn first_gap(need: &Interval, have: &[Interval]) -> Option<(Rat, Rat)> {
    let mut cursor = need.lo.clone();
    for h in have {
        if h.hi < cursor {
            continue;
        }
        if h.lo > cursor {
            return Some((cursor, h.lo.clone().min(need.hi.clone())));
        }
        cursor = h.hi.clone();
        if cursor >= need.hi {
            return None;
        }
    }
    (cursor < need.hi).then(|| (cursor, need.hi.clone()))
}

fn strictly_spans(t: &HTriangle, y: &Rat) -> bool {
    t.y_min() < y && y < t.y_max()
}

fn sections(tris: &[HTriangle], y: &Rat) -> Vec<Interval> {
    tris.iter().filter(|t| strictly_spans(t, y)).filter_map(|t| t.cross_section(y)).collect()
}

fn slab_midpoints(ys: &[Rat], lo: &Rat, hi: &Rat) -> Vec<Rat> {
    let mut bounds: Vec<&Rat> = ys.iter().filter(|y| *y > lo && *y < hi).collect();
    bounds.insert(0, lo);
    bounds.push(hi);
    bounds.windows(2).map(|w| w[0].midpoint(w[1])).collect()
}

/// Decides whether the closed pieces cover the closed target region.
pub fn verify(c: &Covering) -> VerifyReport {
    verify_parts(c.target.parts(), c.pieces())
}

/// As [`verify`], for a target and piece list that need not form a valid
/// [`Covering`] (for instance an empty piece list).
pub fn verify_parts(target: &[HTriangle], pieces: &[HTriangle]) -> VerifyReport {
    let critical = critical_ys(target.iter().chain(pieces));
    let Some(lo) = target.iter().map(HTriangle::y_min).min().cloned() else {
        return VerifyReport { covered: true, witness: None, slab_count: 0, critical_ys: critical };
    };
    let hi = target.iter().map(HTriangle::y_max).max().cloned().expect("nonempty target");
    let mids = slab_midpoints(&critical, &lo, &hi);
    let witness = mids.par_iter().find_map_first(|y| check_slab(target, pieces, y));
    VerifyReport { covered: witness.is_none(), witness, slab_count: mids.len(), critical_ys: critical }
}

fn check_slab(target: &[HTriangle], pieces: &[HTriangle], y: &Rat) -> Option<Witness> {
    let need = merge(sections(target, y));
    if need.is_empty() {
        return None;
    }
    let have = merge(sections(pieces, y));
    need.iter().find_map(|iv| first_gap(iv, &have)).map(|(x_lo, x_hi)| Witness { y: y.clone(), x_lo, x_hi })
}

/// True iff no two of the triangles share an interior point.
///
/// Two interiors meet iff, on some open slab, two cross-sections overlap in
/// an interval of positive width; the overlap pattern is constant across a
/// slab for the same reason coverage is.
pub fn interiors_disjoint(parts: &[HTriangle]) -> bool {
    if parts.len() < 2 {
        return true;
    }
    let critical = critical_ys(parts);
    let lo = parts.iter().map(HTriangle::y_min).min().expect("nonempty").clone();
    let hi = parts.iter().map(HTriangle::y_max).max().expect("nonempty").clone();
    slab_midpoints(&critical, &lo, &hi).par_iter().all(|y| {
        let mut ivs = sections(parts, y);
        ivs.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut reach: Option<&Rat> = None;
        for iv in &ivs {
            if reach.is_some_and(|r| &iv.lo < r) {
                return false;
            }
            if reach.is_none_or(|r| &iv.hi > r) {
                reach = Some(&iv.hi);
            }
        }
        true
    })
}

/// Closed triangle as three integer half-planes `a x + b y + c >= 0`; used
/// by the sampling falsifier so that it shares no code with the slab sweep.
struct HalfPlanes {
    lines: [(BigInt, BigInt, BigInt); 3],
    y_range: (Rat, Rat),
}

impl HalfPlanes {
    fn new(t: &HTriangle) -> Self {
        let [a, b, c] = t.vertices();
        let ccw = ((&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)).is_positive();
        let line = |p: &Point, q: &Point| {
            // (q - p) x (r - p) >= 0 for r on the left of pq.
            let (ca, cb) = (-(&q.y - &p.y), &q.x - &p.x);
            let cc = -(&ca * &p.x + &cb * &p.y);
            let (ca, cb, cc) = if ccw { (ca, cb, cc) } else { (-ca, -cb, -cc) };
            let denom = lcm(&lcm(ca.denom(), cb.denom()), cc.denom());
            let scale = Rat::from_bigint(denom);
            let int = |r: Rat| (r * &scale).numer().clone();
            (int(ca), int(cb), int(cc))
        };
        HalfPlanes {
            lines: [line(&a, &b), line(&b, &c), line(&c, &a)],
            y_range: (t.y_min().clone(), t.y_max().clone()),
        }
    }

    /// Membership of `(i / d, j / d)`.
    fn contains_grid(&self, i: &BigInt, j: &BigInt, d: &BigInt) -> bool {
        self.lines.iter().all(|(a, b, c)| !(a * i + b * j + c * d).is_negative())
    }
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

/// Tests every grid point `(i / d, j / d)` in the target's bounding box that
/// lies in the target, returning the first (lowest row, then leftmost) that
/// lies in no piece. Can refute a covering, never certify one.
pub fn sample_falsify(target: &[HTriangle], pieces: &[HTriangle], grid_denominator: u32) -> Result<Option<Point>> {
    if grid_denominator == 0 {
        return Err(Error::InvalidInput("grid denominator must be at least 1".into()));
    }
    if target.is_empty() {
        return Ok(None);
    }
    let d = Rat::from_int(grid_denominator.into());
    let d_int = BigInt::from(grid_denominator);
    let xs = target.iter().flat_map(|t| t.vertices().into_iter().map(|p| p.x));
    let (x_min, x_max) = xs.fold((None::<Rat>, None::<Rat>), |(lo, hi), x| {
        (Some(lo.map_or(x.clone(), |l| l.min(x.clone()))), Some(hi.map_or(x.clone(), |h| h.max(x))))
    });
    let (x_min, x_max) = (x_min.expect("nonempty"), x_max.expect("nonempty"));
    let y_min = target.iter().map(HTriangle::y_min).min().expect("nonempty");
    let y_max = target.iter().map(HTriangle::y_max).max().expect("nonempty");

    let target_planes: Vec<HalfPlanes> = target.iter().map(HalfPlanes::new).collect();
    let piece_planes: Vec<HalfPlanes> = pieces.iter().map(HalfPlanes::new).collect();
    let i_range = ((&x_min * &d).ceil_int(), (&x_max * &d).floor_int());
    let j_lo = (y_min * &d).ceil_int();
    let j_hi = (y_max * &d).floor_int();

    let rows: Vec<BigInt> = num_iter_range(&j_lo, &j_hi);
    let hit = rows.par_iter().find_map_first(|j| {
        let y = Rat::from_bigint(j.clone()) / &d;
        let in_row = |hp: &&HalfPlanes| hp.y_range.0 <= y && y <= hp.y_range.1;
        let row_target: Vec<&HalfPlanes> = target_planes.iter().filter(in_row).collect();
        let row_pieces: Vec<&HalfPlanes> = piece_planes.iter().filter(in_row).collect();
        num_iter_range(&i_range.0, &i_range.1).into_iter().find_map(|i| {
            let inside = row_target.iter().any(|hp| hp.contains_grid(&i, j, &d_int));
            let covered = row_pieces.iter().any(|hp| hp.contains_grid(&i, j, &d_int));
            (inside && !covered).then(|| Point::new(Rat::from_bigint(i) / &d, y.clone()))
        })
    });
    Ok(hit)
}

fn num_iter_range(lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut k = lo.clone();
    while &k <= hi {
        out.push(k.clone());
        k += 1;
    }
    out
}

/// The six landmarks of an upward equilateral triangle of side `side` with
/// base-left corner at `origin`: its vertices and edge midpoints.
pub fn landmarks(origin: &Point, side: &Rat) -> [Point; 6] {
    let half = side / &Rat::from_int(2);
    let quarter = side / &Rat::from_int(4);
    let at = |dx: Rat, dy: Rat| Point::new(&origin.x + &dx, &origin.y + &dy);
    [
        at(Rat::zero(), Rat::zero()),
        at(side.clone(), Rat::zero()),
        at(half.clone(), side.clone()),
        at(half.clone(), Rat::zero()),
        at(quarter.clone(), half.clone()),
        at(side - &quarter, half),
    ]
}

/// Whether the closed triangle contains at most one of the landmarks. The
/// triangle must have base and height at most 1.
pub fn covers_at_most_one_landmark(tri: &HTriangle, landmarks: &[Point]) -> Result<bool> {
    if tri.base_len() > &Rat::one() || tri.height() > Rat::one() {
        return Err(Error::InvalidInput(format!(
            "triangle with base {} and height {} exceeds the unit size",
            tri.base_len(),
            tri.height()
        )));
    }
    Ok(landmarks.iter().filter(|p| tri.contains_point(p)).count() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Orientation, Region};
    use crate::rat::rat;

    fn unit(x: Rat, y: Rat, o: Orientation) -> HTriangle {
        HTriangle::unit(x, y, o)
    }

    fn side(s: i64) -> HTriangle {
        HTriangle::equilateral(Rat::zero(), Rat::zero(), Rat::from_int(s), Orientation::Up).unwrap()
    }

    fn four_tiling() -> Vec<HTriangle> {
        vec![
            unit(Rat::zero(), Rat::zero(), Orientation::Up),
            unit(Rat::one(), Rat::zero(), Orientation::Up),
            unit(rat(1, 2), Rat::one(), Orientation::Up),
            unit(rat(1, 2), Rat::one(), Orientation::Down),
        ]
    }

    #[test]
    fn merge_and_gap() {
        let iv = |a: i64, b: i64| Interval { lo: Rat::from_int(a), hi: Rat::from_int(b) };
        let m = merge(vec![iv(3, 4), iv(0, 1), iv(1, 2)]);
        assert_eq!(m, vec![iv(0, 2), iv(3, 4)]);
        assert_eq!(first_gap(&iv(0, 4), &m), Some((Rat::from_int(2), Rat::from_int(3))));
        assert_eq!(first_gap(&iv(0, 2), &m), None);
        assert_eq!(first_gap(&iv(-1, 1), &m), Some((Rat::from_int(-1), Rat::zero())));
        assert_eq!(first_gap(&iv(3, 5), &m), Some((Rat::from_int(4), Rat::from_int(5))));
        assert_eq!(first_gap(&iv(0, 1), &[]), Some((Rat::zero(), Rat::one())));
    }

    #[test]
    fn tiling_covers_side_two() {
        let c = Covering::new(Region::single(side(2)), four_tiling(), "grid").unwrap();
        let r = verify(&c);
        assert!(r.covered, "{r:?}");
        assert!(r.witness.is_none());
        assert!(r.slab_count >= 2);
    }

    #[test]
    fn missing_piece_gives_valid_witness() {
        let mut pieces = four_tiling();
        pieces.remove(3);
        let c = Covering::new(Region::single(side(2)), pieces.clone(), "broken").unwrap();
        let r = verify(&c);
        assert!(!r.covered);
        let w = r.witness.unwrap();
        let p = w.midpoint();
        assert!(side(2).contains_point(&p));
        assert!(pieces.iter().all(|t| !t.contains_point(&p)));
        assert!(sample_falsify(c.target.parts(), c.pieces(), 10).unwrap().is_some());
    }

    #[test]
    fn touching_pieces_cover_closed_target() {
        // Two halves of a unit square-ish band meeting along a slanted edge.
        let target = HTriangle::new(Rat::zero(), Rat::zero(), Rat::from_int(2), Rat::one(), Rat::one()).unwrap();
        let left = HTriangle::new(Rat::zero(), Rat::zero(), Rat::one(), rat(1, 2), Rat::one()).unwrap();
        let mid = HTriangle::new(Rat::one(), rat(1, 2), Rat::one(), Rat::one(), Rat::zero()).unwrap();
        let right = HTriangle::new(Rat::zero(), Rat::one(), Rat::one(), rat(3, 2), Rat::one()).unwrap();
        assert!(verify_parts(&[target], &[left, mid, right]).covered);
    }

    #[test]
    fn empty_piece_list_is_uncovered() {
        let target = [unit(Rat::zero(), Rat::zero(), Orientation::Up)];
        assert!(!verify_parts(&target, &[]).covered);
        let p = sample_falsify(&target, &[], 3).unwrap().unwrap();
        assert!(target[0].contains_point(&p));
        assert!(sample_falsify(&target, &[], 0).is_err());
    }

    #[test]
    fn disjointness() {
        assert!(interiors_disjoint(&four_tiling()));
        let t = unit(Rat::zero(), Rat::zero(), Orientation::Up);
        assert!(!interiors_disjoint(&[t.clone(), t.clone()]));
        // Two up triangles sharing the slanted edge of the down triangle between them.
        let a = unit(Rat::zero(), Rat::zero(), Orientation::Up);
        let b = unit(rat(1, 2), Rat::one(), Orientation::Down);
        assert!(interiors_disjoint(&[a.clone(), b.clone()]));
        let shifted = unit(rat(1, 2), Rat::zero(), Orientation::Up);
        assert!(!interiors_disjoint(&[a, shifted]));
    }

    #[test]
    fn landmark_examples() {
        let ls = landmarks(&Point::new(Rat::zero(), Rat::zero()), &rat(21, 10));
        let t = unit(Rat::zero(), Rat::zero(), Orientation::Up);
        assert_eq!(ls.iter().filter(|p| t.contains_point(p)).count(), 1);
        assert!(covers_at_most_one_landmark(&t, &ls).unwrap());
        let far = unit(Rat::from_int(50), Rat::from_int(50), Orientation::Down);
        assert_eq!(ls.iter().filter(|p| far.contains_point(p)).count(), 0);
        assert!(covers_at_most_one_landmark(&side(2), &ls).is_err());
    }
}
