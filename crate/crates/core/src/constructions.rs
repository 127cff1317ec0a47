//! Parametric coverings of the equilateral triangle of side `n + eps` by
//! unit equilateral triangles, in stretched coordinates.
//!
//! Every layout places neighbouring pieces flush: a slanted edge of one lies
//! on the parallel slanted edge of the next, so the coverings are tight at
//! their admissibility thresholds. Where a placement has slack it is
//! resolved to the leftmost position.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Covering, HTriangle, Orientation, Region};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// The `n^2` tiling of the side-`n` triangle.
    Grid,
    /// `n^2 + 2` pieces: top grid, interleaved bottom row, two final pieces.
    Cs1,
    /// `n^2 + 2` pieces stacked in `n - 1` sheared layers plus a 3-piece cap.
    Cs2,
    /// `n^2 + 3` pieces: `Cs1` with three bottom-row pieces replaced by a
    /// side-2 triangle.
    Plus3,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Grid => "grid",
            Variant::Cs1 => "cs1",
            Variant::Cs2 => "cs2",
            Variant::Plus3 => "plus3",
        }
    }

    /// Largest admissible `eps` for side `n + eps`; `None` for the grid,
    /// which only takes `eps = 0`.
    pub fn eps_bound(self, n: u32) -> Option<Rat> {
        let n = i64::from(n);
        match self {
            Variant::Grid => None,
            Variant::Cs1 => Some(Rat::new(1, n + 1)),
            Variant::Cs2 => Some(Rat::new(1, 2 * n)),
            Variant::Plus3 => Some(Rat::new(1, n)),
        }
    }

    pub fn piece_count(self, n: u32) -> usize {
        let n = n as usize;
        match self {
            Variant::Grid => n * n,
            Variant::Cs1 | Variant::Cs2 => n * n + 2,
            Variant::Plus3 => n * n + 3,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Variant::Grid),
            "cs1" => Ok(Variant::Cs1),
            "cs2" => Ok(Variant::Cs2),
            "plus3" => Ok(Variant::Plus3),
            other => Err(Error::InvalidInput(format!("unknown construction {other:?}"))),
        }
    }
}

/// Drawing role of a piece, one per fill style.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceRole {
    Grid,
    Interleave,
    Final,
}

impl PieceRole {
    pub fn name(self) -> &'static str {
        match self {
            PieceRole::Grid => "grid",
            PieceRole::Interleave => "interleave",
            PieceRole::Final => "final",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub n: u32,
    pub eps: Rat,
    pub variant: Variant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub params: ConstructionParams,
    pub covering: Covering,
    /// Parallel to `covering.pieces()`.
    pub roles: Vec<PieceRole>,
}

impl ConstructionParams {
    pub fn new(variant: Variant, n: u32, eps: Rat) -> Self {
        ConstructionParams { n, eps, variant }
    }

    /// Refuses parameters outside the range where the layout covers.
    pub fn check_admissible(&self) -> Result<()> {
        self.check_shape()?;
        match self.variant.eps_bound(self.n) {
            None if !self.eps.is_zero() => {
                Err(Error::InvalidInput(format!("grid takes eps = 0, got {}", self.eps)))
            }
            None => Ok(()),
            Some(bound) if !self.eps.is_positive() || self.eps > bound => Err(Error::InadmissibleEps {
                construction: self.variant.name(),
                eps: Box::new(self.eps.clone()),
                bound: Box::new(bound),
            }),
            Some(_) => Ok(()),
        }
    }

    fn check_shape(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidInput(format!("n = {} must be at least 2", self.n)));
        }
        if self.eps.is_negative() {
            return Err(Error::InvalidInput(format!("eps = {} must be nonnegative", self.eps)));
        }
        Ok(())
    }
}

/// Builds the construction; with `force`, the admissibility bound on `eps`
/// is skipped (the layout is emitted even when it is known not to cover).
pub fn generate(params: &ConstructionParams, force: bool) -> Result<Construction> {
    if force {
        params.check_shape()?;
    } else {
        params.check_admissible()?;
    }
    let (n, eps) = (params.n, &params.eps);
    let (pieces, roles) = match params.variant {
        Variant::Grid => {
            let g = grid(n, &Rat::zero(), &Rat::zero());
            let roles = vec![PieceRole::Grid; g.len()];
            (g, roles)
        }
        Variant::Cs1 => cs1_pieces(n, eps),
        Variant::Cs2 => cs2_pieces(n, eps),
        Variant::Plus3 => plus3_pieces(n, eps),
    };
    let target = equilateral_target(&(Rat::from_int(n.into()) + eps));
    let label = format!("{} n={} eps={}", params.variant, n, eps);
    let covering = Covering::new(Region::single(target), pieces, label)?;
    Ok(Construction { params: params.clone(), covering, roles })
}

pub fn cs1(n: u32, eps: Rat) -> Result<Construction> {
    generate(&ConstructionParams::new(Variant::Cs1, n, eps), false)
}

pub fn cs2(n: u32, eps: Rat) -> Result<Construction> {
    generate(&ConstructionParams::new(Variant::Cs2, n, eps), false)
}

pub fn plus3(n: u32, eps: Rat) -> Result<Construction> {
    generate(&ConstructionParams::new(Variant::Plus3, n, eps), false)
}

/// Upward equilateral triangle of the given side with base-left at the origin.
pub fn equilateral_target(side: &Rat) -> HTriangle {
    HTriangle::equilateral(Rat::zero(), Rat::zero(), side.clone(), Orientation::Up).expect("positive side")
}

fn up(x: Rat, y: Rat) -> HTriangle {
    HTriangle::unit(x, y, Orientation::Up)
}

fn down(x: Rat, y: Rat) -> HTriangle {
    HTriangle::unit(x, y, Orientation::Down)
}

/// The `n^2` unit triangles tiling the side-`n` upward triangle whose
/// base-left corner is `(x0, y0)`, row by row from the bottom.
pub fn grid(n: u32, x0: &Rat, y0: &Rat) -> Vec<HTriangle> {
    let mut out = Vec::with_capacity((n * n) as usize);
    let half = Rat::half();
    for r in 0..i64::from(n) {
        let row_y = y0 + &Rat::from_int(r);
        let row_x = x0 + &Rat::new(r, 2);
        for k in 0..(i64::from(n) - r) {
            out.push(up(&row_x + &Rat::from_int(k), row_y.clone()));
        }
        for k in 0..(i64::from(n) - 1 - r) {
            out.push(down(&row_x + &half + Rat::from_int(k), &row_y + &Rat::one()));
        }
    }
    out
}

/// Pieces of the interleaved layout. `shift` is the number of unit-width
/// steps the bottom row is pushed right of the target's right edge: `n`
/// for the first construction, `n - 1` when the side-2 block takes the
/// rightmost slot.
fn bottom_band(ups: i64, downs: i64, shift: &Rat, eps: &Rat) -> Vec<HTriangle> {
    let one = Rat::one();
    let step = &one - eps;
    let top = &one + eps;
    let mut out = Vec::new();
    for k in 0..ups {
        out.push(up(shift * eps + &step * &Rat::from_int(k), Rat::zero()));
    }
    // Down pieces whose right edge lies flush on the left edge of the next up piece.
    let first_down = Rat::half() + (shift - &Rat::half()) * eps;
    for k in 0..downs {
        out.push(down(&first_down + &step * &Rat::from_int(k), top.clone()));
    }
    out
}

fn final_pair(shift: &Rat, eps: &Rat) -> Vec<HTriangle> {
    let x_b = shift * eps + (eps - &Rat::one()) / Rat::from_int(2);
    vec![up(Rat::zero(), Rat::zero()), down(x_b, Rat::one() + eps)]
}

fn cs1_pieces(n: u32, eps: &Rat) -> (Vec<HTriangle>, Vec<PieceRole>) {
    let top = Rat::one() + eps;
    let mut pieces = grid(n - 1, &(&top / &Rat::from_int(2)), &top);
    let mut roles = vec![PieceRole::Grid; pieces.len()];
    let shift = Rat::from_int(n.into());
    let band = bottom_band(n.into(), i64::from(n) - 1, &shift, eps);
    roles.extend(std::iter::repeat_n(PieceRole::Interleave, band.len()));
    pieces.extend(band);
    pieces.extend(final_pair(&shift, eps));
    roles.extend([PieceRole::Final, PieceRole::Final]);
    (pieces, roles)
}

fn plus3_pieces(n: u32, eps: &Rat) -> (Vec<HTriangle>, Vec<PieceRole>) {
    let top = Rat::one() + eps;
    let mut pieces = grid(n - 1, &(&top / &Rat::from_int(2)), &top);
    let mut roles = vec![PieceRole::Grid; pieces.len()];
    let side = Rat::from_int(n.into()) + eps;
    let block = grid(2, &(&side - &Rat::from_int(2)), &Rat::zero());
    roles.extend(std::iter::repeat_n(PieceRole::Interleave, block.len()));
    pieces.extend(block);
    let shift = Rat::from_int(i64::from(n) - 1);
    let band = bottom_band(i64::from(n) - 2, i64::from(n) - 2, &shift, eps);
    roles.extend(std::iter::repeat_n(PieceRole::Interleave, band.len()));
    pieces.extend(band);
    pieces.extend(final_pair(&shift, eps));
    roles.extend([PieceRole::Final, PieceRole::Final]);
    (pieces, roles)
}

/// Per-layer misalignments of the layered construction, bottom layer first:
/// `d_1 = eps / (n - 1)` and `d_{j+1} = (n - j + 1) d_j / (n - j - 1)`.
pub fn layer_deviations(n: u32, eps: &Rat) -> Vec<Rat> {
    let n = i64::from(n);
    let mut out = Vec::with_capacity((n - 1) as usize);
    let mut d = eps / &Rat::from_int(n - 1);
    for j in 1..n {
        out.push(d.clone());
        if j + 1 < n {
            d = d * Rat::new(n - j + 1, n - j - 1);
        }
    }
    out
}

fn cs2_pieces(n: u32, eps: &Rat) -> (Vec<HTriangle>, Vec<PieceRole>) {
    let ni = i64::from(n);
    let half = Rat::half();
    let mut pieces = Vec::new();
    let mut roles = Vec::new();
    let mut level = Rat::zero();
    for (idx, d) in layer_deviations(n, eps).iter().enumerate() {
        let j = idx as i64 + 1;
        let m = ni + 1 - j;
        let next = &level + &Rat::one() - d;
        let stride = Rat::one() + d;
        let lefts: Vec<Rat> = (0..m).map(|k| &level * &half + &stride * &Rat::from_int(k)).collect();
        for x in &lefts {
            pieces.push(up(x.clone(), level.clone()));
        }
        for x in lefts.iter().take((m - 1) as usize) {
            pieces.push(down(x + &half + d * &half, next.clone()));
        }
        roles.extend(std::iter::repeat_n(PieceRole::Interleave, (2 * m - 1) as usize));
        level = next;
    }
    let x = &level * &half;
    let shift = &Rat::from_int(ni) * eps;
    pieces.push(up(x.clone(), level.clone()));
    pieces.push(up(&x + &shift, level.clone()));
    pieces.push(down(&x + &shift * &half, Rat::from_int(ni) + eps));
    roles.extend([PieceRole::Final; 3]);
    (pieces, roles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::verify::{interiors_disjoint, verify, verify_parts};

    #[test]
    fn grid_counts() {
        assert_eq!(grid(1, &Rat::zero(), &Rat::zero()), vec![up(Rat::zero(), Rat::zero())]);
        let g2 = grid(2, &Rat::zero(), &Rat::zero());
        assert_eq!(g2.len(), 4);
        assert_eq!(g2.iter().filter(|t| t.orientation() == Orientation::Up).count(), 3);
        let g4 = grid(4, &Rat::zero(), &Rat::zero());
        assert_eq!(g4.iter().filter(|t| t.orientation() == Orientation::Up).count(), 10);
        assert_eq!(g4.iter().filter(|t| t.orientation() == Orientation::Down).count(), 6);
    }

    #[test]
    fn grid_tiles_exactly() {
        for n in 1..=5u32 {
            let g = grid(n, &rat(1, 3), &rat(-2, 7));
            let big = HTriangle::equilateral(rat(1, 3), rat(-2, 7), Rat::from_int(n.into()), Orientation::Up).unwrap();
            assert!(verify_parts(std::slice::from_ref(&big), &g).covered);
            assert!(interiors_disjoint(&g));
            let area: Rat = g.iter().map(HTriangle::area).sum();
            assert_eq!(area, big.area());
        }
    }

    #[test]
    fn piece_counts_match_formulas() {
        for n in 2..=9u32 {
            let ni = n as usize;
            assert_eq!(cs1(n, Rat::new(1, i64::from(n) + 1)).unwrap().covering.pieces().len(), (ni - 1).pow(2) + (2 * ni - 1) + 2);
            assert_eq!(cs2(n, Rat::new(1, 2 * i64::from(n))).unwrap().covering.pieces().len(), ni * ni + 2);
            assert_eq!(plus3(n, Rat::new(1, n.into())).unwrap().covering.pieces().len(), (ni - 1).pow(2) + 4 + 2 * (ni - 2) + 2);
            for v in [Variant::Grid, Variant::Cs1, Variant::Cs2, Variant::Plus3] {
                let eps = v.eps_bound(n).unwrap_or_else(Rat::zero);
                let c = generate(&ConstructionParams::new(v, n, eps), false).unwrap();
                assert_eq!(c.covering.pieces().len(), v.piece_count(n));
                assert_eq!(c.roles.len(), c.covering.pieces().len());
                assert!(c.covering.pieces().iter().all(HTriangle::is_unit));
            }
        }
    }

    #[test]
    fn deviation_closed_form() {
        for n in 2..=10u32 {
            let eps = rat(1, 2 * i64::from(n));
            let ds = layer_deviations(n, &eps);
            assert_eq!(ds.len(), n as usize - 1);
            let ni = i64::from(n);
            for (idx, d) in ds.iter().enumerate() {
                let j = idx as i64 + 1;
                assert_eq!(d, &(&ds[0] * &Rat::new(ni * (ni - 1), (ni - j + 1) * (ni - j))));
            }
            // top deviation = n(n-1)/2 * d_1 = (n/2) eps
            assert_eq!(ds.last().unwrap(), &(&eps * &Rat::new(ni, 2)));
            // top side of the first layer: n - 1 + n d_1
            if n >= 2 {
                let first_layer_top_width = Rat::from_int(ni - 1) + Rat::from_int(ni) * &ds[0];
                let target_width = Rat::from_int(ni) + &eps - (Rat::one() - &ds[0]);
                assert_eq!(first_layer_top_width, target_width);
            }
        }
    }

    #[test]
    fn refusals() {
        let e = cs1(4, rat(1, 5) + rat(1, 1000)).unwrap_err();
        assert!(matches!(e, Error::InadmissibleEps { bound, .. } if *bound == rat(1, 5)));
        assert!(cs2(4, rat(1, 8) + rat(1, 1000)).is_err());
        assert!(plus3(4, rat(1, 4) + rat(1, 100)).is_err());
        assert!(cs1(4, Rat::zero()).is_err());
        assert!(cs1(1, rat(1, 10)).is_err());
        assert!(generate(&ConstructionParams::new(Variant::Grid, 3, rat(1, 9)), false).is_err());
        let forced = generate(&ConstructionParams::new(Variant::Cs1, 4, rat(1, 4)), true).unwrap();
        assert_eq!(forced.covering.pieces().len(), 18);
    }

    #[test]
    fn reference_instances_cover() {
        assert!(verify(&cs1(2, rat(1, 3)).unwrap().covering).covered);
        assert!(verify(&cs1(4, rat(1, 5)).unwrap().covering).covered);
        assert!(verify(&cs2(4, rat(1, 8)).unwrap().covering).covered);
        assert!(verify(&plus3(4, rat(1, 4)).unwrap().covering).covered);
    }

    #[test]
    fn sampled_eps_grid_covers() {
        for n in 2..=5u32 {
            for q in [3i64, 7, 16, 64] {
                for p in 1..q {
                    let eps = rat(p, q);
                    for v in [Variant::Cs1, Variant::Cs2, Variant::Plus3] {
                        let params = ConstructionParams::new(v, n, eps.clone());
                        if params.check_admissible().is_ok() {
                            let c = generate(&params, false).unwrap();
                            assert!(verify(&c.covering).covered, "{v} n={n} eps={eps}");
                        }
                    }
                }
            }
        }
    }
}
