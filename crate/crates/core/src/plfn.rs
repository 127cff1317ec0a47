//! Exact piecewise-linear, right-continuous functions on `[0, 1)`.
//!
//! A [`PlFunc`] is a table of pieces `(start, value, slope)`: on
//! `[start_i, start_{i+1})` (the last piece runs to 1) the function is
//! `value_i + slope_i * (t - start_i)`. The first piece always starts at 0.
//! The table is kept canonical: a breakpoint survives only where the
//! function jumps or changes slope, so equal functions compare equal.

use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub start: Rat,
    pub value: Rat,
    pub slope: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlFunc {
    pieces: Vec<Piece>,
}

/// Infimum of a [`PlFunc`] over `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Minimum {
    pub value: Rat,
    /// Where the infimum is attained, or the breakpoint it is approached
    /// from the left when `attained` is false.
    pub argmin: Rat,
    pub attained: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Holds,
    /// `f(at) > g(at)`.
    Violated { at: Rat },
}

impl Comparison {
    pub fn holds(&self) -> bool {
        matches!(self, Comparison::Holds)
    }
}

impl PlFunc {
    pub fn constant(c: Rat) -> Self {
        PlFunc::affine(c, Rat::zero())
    }

    pub fn zero() -> Self {
        PlFunc::constant(Rat::zero())
    }

    /// `t -> t`.
    pub fn identity() -> Self {
        PlFunc::affine(Rat::zero(), Rat::one())
    }

    /// `t -> value_at_zero + slope * t`.
    pub fn affine(value_at_zero: Rat, slope: Rat) -> Self {
        PlFunc { pieces: vec![Piece { start: Rat::zero(), value: value_at_zero, slope }] }
    }

    /// Builds from a piece table; the table need not be canonical.
    pub fn from_pieces(pieces: Vec<Piece>) -> Result<Self> {
        match pieces.first() {
            Some(p) if p.start.is_zero() => {}
            _ => return Err(Error::InvalidInput("first piece must start at 0".into())),
        }
        for w in pieces.windows(2) {
            if w[0].start >= w[1].start {
                return Err(Error::InvalidInput("piece starts must be strictly increasing".into()));
            }
        }
        if pieces.last().is_some_and(|p| p.start >= Rat::one()) {
            return Err(Error::InvalidInput("piece starts must lie in [0, 1)".into()));
        }
        Ok(PlFunc::canonical(pieces))
    }

    fn canonical(pieces: Vec<Piece>) -> Self {
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(last) = out.last() {
                if last.slope == p.slope && &last.value + &last.slope * (&p.start - &last.start) == p.value {
                    continue;
                }
            }
            out.push(p);
        }
        PlFunc { pieces: out }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Rat> {
        self.pieces.iter().map(|p| &p.start)
    }

    fn piece_end(&self, i: usize) -> Rat {
        self.pieces.get(i + 1).map_or_else(Rat::one, |p| p.start.clone())
    }

    /// Index of the piece containing `t`.
    fn locate(&self, t: &Rat) -> usize {
        self.pieces.partition_point(|p| &p.start <= t).saturating_sub(1)
    }

    fn piece_value(p: &Piece, t: &Rat) -> Rat {
        &p.value + &p.slope * (t - &p.start)
    }

    /// Value at `t`, which must lie in `[0, 1)`.
    pub fn eval(&self, t: &Rat) -> Rat {
        assert!(!t.is_negative() && t < &Rat::one(), "evaluation point {t} outside [0, 1)");
        Self::piece_value(&self.pieces[self.locate(t)], t)
    }

    /// Left limit at `t` in `(0, 1]`.
    pub fn left_limit(&self, t: &Rat) -> Rat {
        assert!(t.is_positive() && t <= &Rat::one(), "left limit point {t} outside (0, 1]");
        let i = self.pieces.partition_point(|p| &p.start < t) - 1;
        Self::piece_value(&self.pieces[i], t)
    }

    fn slope_at(&self, t: &Rat) -> &Rat {
        &self.pieces[self.locate(t)].slope
    }

    fn zip_with(&self, other: &PlFunc, op: impl Fn(&Rat, &Rat) -> Rat) -> PlFunc {
        let mut starts: Vec<&Rat> = self.breakpoints().chain(other.breakpoints()).collect();
        starts.sort();
        starts.dedup();
        let pieces = starts
            .into_iter()
            .map(|s| Piece {
                start: s.clone(),
                value: op(&self.eval(s), &other.eval(s)),
                slope: op(self.slope_at(s), other.slope_at(s)),
            })
            .collect();
        PlFunc::canonical(pieces)
    }

    pub fn add_const(&self, c: &Rat) -> PlFunc {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece { start: p.start.clone(), value: &p.value + c, slope: p.slope.clone() })
            .collect();
        PlFunc { pieces }
    }

    pub fn scale(&self, k: &Rat) -> PlFunc {
        if k.is_zero() {
            return PlFunc::zero();
        }
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece { start: p.start.clone(), value: &p.value * k, slope: &p.slope * k })
            .collect();
        PlFunc { pieces }
    }

    /// `max(self, other)` pointwise.
    pub fn max(&self, other: &PlFunc) -> PlFunc {
        // Split at crossings so each resulting piece follows one operand.
        let mut starts: Vec<Rat> = self.breakpoints().chain(other.breakpoints()).cloned().collect();
        starts.sort();
        starts.dedup();
        let mut cuts = starts.clone();
        for (i, s) in starts.iter().enumerate() {
            let end = starts.get(i + 1).cloned().unwrap_or_else(Rat::one);
            let d0 = self.eval(s) - other.eval(s);
            let ds = self.slope_at(s) - other.slope_at(s);
            if !ds.is_zero() {
                let root = s - &d0 / &ds;
                if &root > s && root < end {
                    cuts.push(root);
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        let pieces = cuts
            .into_iter()
            .map(|s| {
                let a = self.eval(&s);
                let b = other.eval(&s);
                let (sa, sb) = (self.slope_at(&s).clone(), other.slope_at(&s).clone());
                let (value, slope) = if a > b || (a == b && sa >= sb) { (a, sa) } else { (b, sb) };
                Piece { start: s, value, slope }
            })
            .collect();
        PlFunc::canonical(pieces)
    }

    /// Exact integral over `[0, 1)`.
    pub fn integral(&self) -> Rat {
        let half = Rat::half();
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let len = self.piece_end(i) - &p.start;
                &len * &p.value + &p.slope * &len * &len * &half
            })
            .sum()
    }

    /// Exact infimum over `[0, 1)`, distinguishing attained minima from
    /// infima that are only approached as a left limit at a breakpoint.
    pub fn minimum(&self) -> Minimum {
        let mut attained: Option<(Rat, Rat)> = None;
        let mut limit: Option<(Rat, Rat)> = None;
        for (i, p) in self.pieces.iter().enumerate() {
            if attained.as_ref().is_none_or(|(v, _)| &p.value < v) {
                attained = Some((p.value.clone(), p.start.clone()));
            }
            if p.slope.is_negative() {
                let end = self.piece_end(i);
                let v = Self::piece_value(p, &end);
                if limit.as_ref().is_none_or(|(lv, _)| &v < lv) {
                    limit = Some((v, end));
                }
            }
        }
        let (av, at) = attained.expect("at least one piece");
        match limit {
            Some((lv, lt)) if lv < av => Minimum { value: lv, argmin: lt, attained: false },
            _ => Minimum { value: av, argmin: at, attained: true },
        }
    }

    /// Decides `self <= other` everywhere on `[0, 1)`.
    pub fn leq(&self, other: &PlFunc) -> Comparison {
        let diff = other - self;
        let m = diff.minimum();
        if !m.value.is_negative() {
            return Comparison::Holds;
        }
        if m.attained {
            return Comparison::Violated { at: m.argmin };
        }
        // Infimum approached from the left at a breakpoint: step back into the
        // decreasing piece to a point where the difference is m.value / 2.
        let i = diff.pieces.partition_point(|p| p.start < m.argmin) - 1;
        let p = &diff.pieces[i];
        let target = &m.value / Rat::from_int(2);
        let at = if p.value.is_negative() { p.start.clone() } else { &p.start + (&target - &p.value) / &p.slope };
        Comparison::Violated { at }
    }

    /// Folds modulo 1 the real-line function that equals
    /// `value_at_lo + slope * (y - y_lo)` on `[y_lo, y_hi)` and 0 elsewhere:
    /// the result at `t` is the sum over all integers `k` of the segment
    /// function at `t + k`.
    pub fn fold_segment(y_lo: &Rat, y_hi: &Rat, value_at_lo: &Rat, slope: &Rat) -> Result<PlFunc> {
        if y_lo >= y_hi {
            return Err(Error::InvalidInput(format!("empty fold segment [{y_lo}, {y_hi})")));
        }
        let mut acc = PlFunc::zero();
        let mut k = y_lo.floor();
        let end = y_hi.ceil();
        while k < end {
            let a = y_lo.clone().max(k.clone()) - &k;
            let b = y_hi.clone().min(&k + &Rat::one()) - &k;
            if a < b {
                let v = value_at_lo + slope * &(&a + &k - y_lo);
                acc = &acc + &PlFunc::window(&a, &b, v, slope.clone());
            }
            k += Rat::one();
        }
        Ok(acc)
    }

    /// Affine on `[a, b)` with value `value_at_a` at `a`, zero elsewhere on `[0, 1)`.
    fn window(a: &Rat, b: &Rat, value_at_a: Rat, slope: Rat) -> PlFunc {
        let mut pieces = Vec::with_capacity(3);
        if a.is_positive() {
            pieces.push(Piece { start: Rat::zero(), value: Rat::zero(), slope: Rat::zero() });
        }
        pieces.push(Piece { start: a.clone(), value: value_at_a, slope });
        if b < &Rat::one() {
            pieces.push(Piece { start: b.clone(), value: Rat::zero(), slope: Rat::zero() });
        }
        PlFunc::canonical(pieces)
    }
}

impl Add for &PlFunc {
    type Output = PlFunc;
    fn add(self, rhs: &PlFunc) -> PlFunc {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PlFunc {
    type Output = PlFunc;
    fn sub(self, rhs: &PlFunc) -> PlFunc {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &PlFunc {
    type Output = PlFunc;
    fn neg(self) -> PlFunc {
        self.scale(&Rat::from_int(-1))
    }
}

impl Add for PlFunc {
    type Output = PlFunc;
    fn add(self, rhs: PlFunc) -> PlFunc {
        &self + &rhs
    }
}

impl Sub for PlFunc {
    type Output = PlFunc;
    fn sub(self, rhs: PlFunc) -> PlFunc {
        &self - &rhs
    }
}

impl Neg for PlFunc {
    type Output = PlFunc;
    fn neg(self) -> PlFunc {
        -&self
    }
}
