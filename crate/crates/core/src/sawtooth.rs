//! The abelian group generated by the sawtooth functions `t -> {t - a}` and
//! `t -> 1 - {t - a}` on `[0, 1)`.
//!
//! An element is stored canonically as an integer slope, integer jumps at
//! rational positions in `(0, 1)`, and the value at 0:
//!
//! ```text
//! f(t) = offset + slope * t + sum_{0 < p <= t} jump_p
//! ```
//!
//! Every group element has this shape with `2 * integral` an integer of the
//! same parity as the slope. [`RawElement`] drops the integrality guarantees
//! so that counterexamples can be built and fed to [`validate_group_laws`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::plfn::{Minimum, Piece, PlFunc};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SawtoothElt {
    slope: i64,
    jumps: BTreeMap<Rat, i64>,
    offset: Rat,
}

fn check_unit_position(alpha: &Rat) -> Result<()> {
    if alpha.is_negative() || alpha >= &Rat::one() {
        return Err(Error::PositionOutOfRange(alpha.clone()));
    }
    Ok(())
}

impl SawtoothElt {
    pub fn zero() -> Self {
        SawtoothElt::default()
    }

    /// `t -> {t - alpha}`: the projection function of a unit triangle
    /// pointing down with its horizontal side at height `alpha`.
    pub fn generator_down(alpha: &Rat) -> Result<Self> {
        check_unit_position(alpha)?;
        if alpha.is_zero() {
            return Ok(SawtoothElt { slope: 1, jumps: BTreeMap::new(), offset: Rat::zero() });
        }
        Ok(SawtoothElt { slope: 1, jumps: BTreeMap::from([(alpha.clone(), -1)]), offset: Rat::one() - alpha })
    }

    /// `t -> 1 - {t - alpha}`: the projection function of a unit triangle
    /// pointing up with its horizontal side at height `alpha`.
    pub fn generator_up(alpha: &Rat) -> Result<Self> {
        check_unit_position(alpha)?;
        if alpha.is_zero() {
            return Ok(SawtoothElt { slope: -1, jumps: BTreeMap::new(), offset: Rat::one() });
        }
        Ok(SawtoothElt { slope: -1, jumps: BTreeMap::from([(alpha.clone(), 1)]), offset: alpha.clone() })
    }

    /// The constant `k`, i.e. `k` copies of `{t} + (1 - {t})`.
    pub fn integer_constant(k: i64) -> Self {
        SawtoothElt { slope: 0, jumps: BTreeMap::new(), offset: Rat::from_int(k) }
    }

    /// `{a t + c}` for `a > 0` and `c` in `[0, 1)`.
    pub fn rising(a: i64, c: &Rat) -> Result<Self> {
        let positions = Self::integer_crossings(a, c)?;
        Ok(SawtoothElt { slope: a, jumps: positions.into_iter().map(|p| (p, -1)).collect(), offset: c.clone() })
    }

    /// `1 - {a t + c}` for `a > 0` and `c` in `[0, 1)`.
    pub fn falling(a: i64, c: &Rat) -> Result<Self> {
        let positions = Self::integer_crossings(a, c)?;
        Ok(SawtoothElt { slope: -a, jumps: positions.into_iter().map(|p| (p, 1)).collect(), offset: Rat::one() - c })
    }

    /// Points `t` in `(0, 1)` where `a t + c` is an integer.
    fn integer_crossings(a: i64, c: &Rat) -> Result<Vec<Rat>> {
        if a <= 0 {
            return Err(Error::InvalidInput(format!("sawtooth slope {a} must be positive")));
        }
        check_unit_position(c)?;
        let a_rat = Rat::from_int(a);
        Ok((1..=a)
            .map(|m| (Rat::from_int(m) - c) / &a_rat)
            .filter(|t| t.is_positive() && t < &Rat::one())
            .collect())
    }

    pub fn slope(&self) -> i64 {
        self.slope
    }

    pub fn jumps(&self) -> &BTreeMap<Rat, i64> {
        &self.jumps
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        assert!(!t.is_negative() && t < &Rat::one(), "evaluation point {t} outside [0, 1)");
        let jumps: i64 = self.jumps.range(..=t.clone()).map(|(_, k)| *k).sum();
        &self.offset + Rat::from_int(self.slope) * t + Rat::from_int(jumps)
    }

    pub fn integral(&self) -> Rat {
        let jump_mass: Rat = self.jumps.iter().map(|(p, k)| Rat::from_int(*k) * (Rat::one() - p)).sum();
        &self.offset + Rat::new(self.slope, 2) + jump_mass
    }

    pub fn to_plfunc(&self) -> PlFunc {
        let slope = Rat::from_int(self.slope);
        let mut pieces = vec![Piece { start: Rat::zero(), value: self.offset.clone(), slope: slope.clone() }];
        let mut level = self.offset.clone();
        for (p, k) in &self.jumps {
            level += Rat::from_int(*k);
            pieces.push(Piece { start: p.clone(), value: &level + &slope * p, slope: slope.clone() });
        }
        PlFunc::from_pieces(pieces).expect("jump positions are sorted and inside (0, 1)")
    }

    pub fn minimum(&self) -> Minimum {
        self.to_plfunc().minimum()
    }

    pub fn to_raw(&self) -> RawElement {
        RawElement {
            slope: Rat::from_int(self.slope),
            jumps: self.jumps.iter().map(|(p, k)| (p.clone(), Rat::from_int(*k))).collect(),
            offset: self.offset.clone(),
        }
    }
}

impl Add for &SawtoothElt {
    type Output = SawtoothElt;
    fn add(self, rhs: &SawtoothElt) -> SawtoothElt {
        let mut jumps = self.jumps.clone();
        for (p, k) in &rhs.jumps {
            let entry = jumps.entry(p.clone()).or_insert(0);
            *entry += k;
            if *entry == 0 {
                jumps.remove(p);
            }
        }
        SawtoothElt { slope: self.slope + rhs.slope, jumps, offset: &self.offset + &rhs.offset }
    }
}

impl Neg for &SawtoothElt {
    type Output = SawtoothElt;
    fn neg(self) -> SawtoothElt {
        SawtoothElt {
            slope: -self.slope,
            jumps: self.jumps.iter().map(|(p, k)| (p.clone(), -k)).collect(),
            offset: -&self.offset,
        }
    }
}

impl Sub for &SawtoothElt {
    type Output = SawtoothElt;
    fn sub(self, rhs: &SawtoothElt) -> SawtoothElt {
        self + &(-rhs)
    }
}

impl Add for SawtoothElt {
    type Output = SawtoothElt;
    fn add(self, rhs: SawtoothElt) -> SawtoothElt {
        &self + &rhs
    }
}

impl Sub for SawtoothElt {
    type Output = SawtoothElt;
    fn sub(self, rhs: SawtoothElt) -> SawtoothElt {
        &self - &rhs
    }
}

impl Neg for SawtoothElt {
    type Output = SawtoothElt;
    fn neg(self) -> SawtoothElt {
        -&self
    }
}

impl std::iter::Sum for SawtoothElt {
    fn sum<I: Iterator<Item = SawtoothElt>>(iter: I) -> SawtoothElt {
        iter.fold(SawtoothElt::zero(), |acc, e| &acc + &e)
    }
}

/// A candidate element with rational slope and jump magnitudes, evaluated by
/// the same rule as [`SawtoothElt`]. Used to build and reject non-members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawElement {
    pub slope: Rat,
    pub jumps: Vec<(Rat, Rat)>,
    pub offset: Rat,
}

impl RawElement {
    pub fn integral(&self) -> Rat {
        let jump_mass: Rat = self.jumps.iter().map(|(p, k)| k * &(Rat::one() - p)).sum();
        &self.offset + &self.slope / Rat::from_int(2) + jump_mass
    }

    /// Converts to a group element if every clause of
    /// [`validate_group_laws`] passes.
    pub fn into_element(self) -> Result<SawtoothElt> {
        let report = validate_group_laws(&self)?;
        if let Some(clause) = report.first_failure() {
            return Err(Error::InvalidInput(format!("not a group element: {clause}")));
        }
        let mut jumps = BTreeMap::new();
        for (p, k) in self.jumps {
            let k = k.to_i64().expect("integer jump checked");
            if k != 0 {
                *jumps.entry(p).or_insert(0) += k;
            }
        }
        jumps.retain(|_, k| *k != 0);
        Ok(SawtoothElt { slope: self.slope.to_i64().expect("integer slope checked"), jumps, offset: self.offset })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// Derivative is a single integer constant away from the jumps.
    IntegerSlope,
    /// `f(t) - f(s)` agrees with `slope * (t - s)` modulo 1, i.e. every jump
    /// is an integer.
    IntegerJumps,
    /// `integral = b / 2` for an integer `b`.
    HalfIntegerIntegral,
    /// `b - slope` is even.
    Parity,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::IntegerSlope => "(ii) slope is an integer",
            Clause::IntegerJumps => "(iii) differences agree with slope*(t-s) modulo 1",
            Clause::HalfIntegerIntegral => "(iv) integral is a half-integer",
            Clause::Parity => "(iv) twice the integral has the parity of the slope",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: Clause,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupLawReport {
    /// Right-continuity holds by construction of the evaluation rule and is
    /// not listed.
    pub clauses: Vec<ClauseResult>,
    pub integral: Rat,
}

impl GroupLawReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<Clause> {
        self.clauses.iter().find(|c| !c.passed).map(|c| c.clause)
    }
}

/// Checks the structural properties every group element must have: integer
/// slope, integer jumps, half-integer integral, and `2 * integral` congruent
/// to the slope modulo 2.
///
/// Fails with an input error if the raw element is not well formed (jump
/// positions outside `(0, 1)` or repeated).
pub fn validate_group_laws(raw: &RawElement) -> Result<GroupLawReport> {
    let mut seen = std::collections::BTreeSet::new();
    for (p, _) in &raw.jumps {
        if !p.is_positive() || p >= &Rat::one() {
            return Err(Error::PositionOutOfRange(p.clone()));
        }
        if !seen.insert(p) {
            return Err(Error::InvalidInput(format!("repeated jump position {p}")));
        }
    }
    let integer_slope = raw.slope.is_integer();
    let integer_jumps = raw.jumps.iter().all(|(_, k)| k.is_integer());
    let integral = raw.integral();
    let twice = &integral * &Rat::from_int(2);
    let half_integer = twice.is_integer();
    let parity = integer_slope && half_integer && (twice.numer() - raw.slope.numer()).is_even();
    let clauses = vec![
        ClauseResult { clause: Clause::IntegerSlope, passed: integer_slope },
        ClauseResult { clause: Clause::IntegerJumps, passed: integer_jumps },
        ClauseResult { clause: Clause::HalfIntegerIntegral, passed: half_integer },
        ClauseResult { clause: Clause::Parity, passed: parity },
    ];
    Ok(GroupLawReport { clauses, integral })
}

/// Shape of a nonnegative element with integral 1/2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// `f(t) = {a t + c}`.
    Rising { a: i64, c: Rat },
    /// `f(t) = 1 - {a t + c}`.
    Falling { a: i64, c: Rat },
    NotApplicable { reason: String },
}

impl Classification {
    pub fn reconstruct(&self) -> Option<SawtoothElt> {
        match self {
            Classification::Rising { a, c } => SawtoothElt::rising(*a, c).ok(),
            Classification::Falling { a, c } => SawtoothElt::falling(*a, c).ok(),
            Classification::NotApplicable { .. } => None,
        }
    }
}

/// Classifies a nonnegative element with integral exactly 1/2 as `{a t + c}`
/// or `1 - {a t + c}` with `a` positive and odd.
///
/// The result is confirmed by exact comparison with the reconstructed
/// sawtooth before it is returned; an element meeting both hypotheses that
/// fails the comparison is reported as an internal inconsistency.
pub fn classify(e: &SawtoothElt) -> Result<Classification> {
    let integral = e.integral();
    if integral != Rat::half() {
        return Ok(Classification::NotApplicable { reason: format!("integral is {integral}, not 1/2") });
    }
    let m = e.minimum();
    if m.value.is_negative() {
        return Ok(Classification::NotApplicable {
            reason: format!("infimum {} at t = {} is negative", m.value, m.argmin),
        });
    }
    let a = e.slope();
    let candidate = if a > 0 {
        let c = e.offset().clone();
        if c >= Rat::one() {
            return Err(Error::Inconsistent(format!("rising element with f(0) = {c} >= 1")));
        }
        Classification::Rising { a, c }
    } else if a < 0 {
        let c = Rat::one() - e.offset();
        if c.is_negative() {
            return Err(Error::Inconsistent(format!("falling element with f(0) = {} > 1", e.offset())));
        }
        Classification::Falling { a: -a, c }
    } else {
        return Err(Error::Inconsistent("slope 0 with integral 1/2 violates the parity law".into()));
    };
    if a % 2 == 0 {
        return Err(Error::Inconsistent(format!("even slope {a} with integral 1/2")));
    }
    match candidate.reconstruct() {
        Some(ref r) if r == e => Ok(candidate),
        _ => Err(Error::Inconsistent(format!("element with slope {a} does not match {candidate:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GapReport {
    /// `inf (h - g) = gap > 0` and `integral g + 1 <= integral h` was confirmed.
    Confirmed { gap: Rat, integral_g: Rat, integral_h: Rat },
    /// No positive uniform gap: `inf (h - g) = infimum <= 0`, approached at `at`.
    HypothesisFails { infimum: Rat, at: Rat, attained: bool },
}

/// Uniform-gap jump inequality: if `g + delta <= h` everywhere for some
/// `delta > 0`, then `integral g + 1 <= integral h`.
///
/// Returns an internal-consistency error if the gap is positive and the
/// integral inequality fails.
pub fn jump_inequality(g: &SawtoothElt, h: &SawtoothElt) -> Result<GapReport> {
    let m = (h - g).minimum();
    if !m.value.is_positive() {
        return Ok(GapReport::HypothesisFails { infimum: m.value, at: m.argmin, attained: m.attained });
    }
    let integral_g = g.integral();
    let integral_h = h.integral();
    if &integral_g + &Rat::one() > integral_h {
        return Err(Error::Inconsistent(format!(
            "gap {} > 0 but integral g + 1 = {} > integral h = {}",
            m.value,
            &integral_g + &Rat::one(),
            integral_h
        )));
    }
    Ok(GapReport::Confirmed { gap: m.value, integral_g, integral_h })
}

impl From<&SawtoothElt> for PlFunc {
    fn from(e: &SawtoothElt) -> Self {
        e.to_plfunc()
    }
}
