//! Horizontal projection functions of H-triangles and the arguments built on
//! them.
//!
//! For a triangle `T`, `f_tilde(T)(t)` is the length of `T`'s cross-section
//! at height `t`, made right-continuous at the horizontal side (full base
//! for an upward triangle, 0 for a downward one). `f_T` folds it modulo 1
//! onto `[0, 1)`. If the pieces of a covering cover the target, then on
//! every horizontal line the pieces' total length is at least the target's,
//! so `g = sum f_piece - sum f_target >= 0`. A negative value of `g` at `t`
//! refutes the covering without any geometric search.

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::Variant;
use crate::error::{Error, Result};
use crate::geom::{Covering, HTriangle, Orientation};
use crate::plfn::{Comparison, Minimum, PlFunc};
use crate::rat::Rat;
use crate::sawtooth::{classify, validate_group_laws, Classification, GroupLawReport, SawtoothElt};

/// `f_tilde` of a triangle: affine on the half-open support `[lo, hi)`,
/// zero elsewhere on the real line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealLineProfile {
    pub lo: Rat,
    pub hi: Rat,
    pub value_at_lo: Rat,
    pub slope: Rat,
}

impl RealLineProfile {
    pub fn eval(&self, t: &Rat) -> Rat {
        if t < &self.lo || t >= &self.hi {
            return Rat::zero();
        }
        &self.value_at_lo + &self.slope * &(t - &self.lo)
    }
}

pub fn f_tilde(tri: &HTriangle) -> RealLineProfile {
    let b = tri.base_len().clone();
    let h = tri.height();
    let y0 = tri.base_y().clone();
    match tri.orientation() {
        Orientation::Up => RealLineProfile {
            hi: &y0 + &h,
            lo: y0,
            slope: -(&b / &h),
            value_at_lo: b,
        },
        Orientation::Down => RealLineProfile {
            lo: &y0 - &h,
            hi: y0,
            slope: &b / &h,
            value_at_lo: Rat::zero(),
        },
    }
}

/// `f_T`: the fold of [`f_tilde`] modulo 1.
pub fn f_t(tri: &HTriangle) -> PlFunc {
    let p = f_tilde(tri);
    PlFunc::fold_segment(&p.lo, &p.hi, &p.value_at_lo, &p.slope).expect("nondegenerate triangle has positive height")
}

/// For a triangle with base 1 and height 1, `f_T` as a group element:
/// `{t - y_T}` if it points down, `1 - {t - y_T}` if it points up.
pub fn unit_generator(tri: &HTriangle) -> Option<SawtoothElt> {
    if !tri.is_unit() {
        return None;
    }
    let alpha = tri.base_y().fract();
    let e = match tri.orientation() {
        Orientation::Up => SawtoothElt::generator_up(&alpha),
        Orientation::Down => SawtoothElt::generator_down(&alpha),
    };
    Some(e.expect("fractional part lies in [0, 1)"))
}

fn sum_projections(tris: &[HTriangle]) -> PlFunc {
    tris.par_iter().map(f_t).reduce(PlFunc::zero, |a, b| &a + &b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ProjectionVerdict {
    /// `g >= 0` everywhere; necessary for coverage, not sufficient.
    NecessaryConditionHolds,
    /// `g(t) < 0`: the lines at heights `t + k` are covered less than required.
    RefutedAtLine { t: Rat, g_value: Rat },
}

/// Group-theoretic data of `g` when every triangle involved is unit-sized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupData {
    pub slope: i64,
    pub jump_count: usize,
    pub laws: GroupLawReport,
    pub classification: Option<Classification>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub g: PlFunc,
    pub min_g: Minimum,
    pub integral_g: Rat,
    pub verdict: ProjectionVerdict,
    pub group: Option<GroupData>,
}

impl ProjectionReport {
    pub fn refuted(&self) -> bool {
        matches!(self.verdict, ProjectionVerdict::RefutedAtLine { .. })
    }
}

/// Computes `g = sum f_piece - sum f_target` and checks `g >= 0`.
pub fn projection_check(c: &Covering) -> Result<ProjectionReport> {
    let pieces = c.pieces();
    let target = c.target.parts();
    let g = &sum_projections(pieces) - &sum_projections(target);
    let min_g = g.minimum();
    let integral_g = g.integral();
    let verdict = match PlFunc::zero().leq(&g) {
        Comparison::Holds => ProjectionVerdict::NecessaryConditionHolds,
        Comparison::Violated { at } => ProjectionVerdict::RefutedAtLine { g_value: g.eval(&at), t: at },
    };

    let group = if pieces.iter().chain(target).all(HTriangle::is_unit) {
        let plus: SawtoothElt = pieces.iter().filter_map(unit_generator).sum();
        let minus: SawtoothElt = target.iter().filter_map(unit_generator).sum();
        let elt = &plus - &minus;
        if elt.to_plfunc() != g {
            return Err(Error::Inconsistent("group form of g disagrees with its folded projections".into()));
        }
        let laws = validate_group_laws(&elt.to_raw())?;
        let classification = if integral_g == Rat::half() && !min_g.value.is_negative() {
            Some(classify(&elt)?)
        } else {
            None
        };
        Some(GroupData { slope: elt.slope(), jump_count: elt.jumps().len(), laws, classification })
    } else {
        None
    };

    Ok(ProjectionReport { g, min_g, integral_g, verdict, group })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVerdict {
    /// No covering by `n^2 + k` unit H-triangles exists.
    Impossible,
    /// A covering exists; `witness` names the construction producing it.
    WithinBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub name: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u32,
    pub extra: u32,
    pub eps: Rat,
    pub threshold: Rat,
    pub verdict: BoundVerdict,
    pub witness: Option<Variant>,
    pub trace: Vec<TraceStep>,
}

/// Decides whether the equilateral H-triangle of side `n + eps` can be
/// covered by `n^2 + extra` unit equilateral H-triangles, for `extra` in
/// `{2, 3}`. The largest coverable `eps` is `1/(n+1)` and `1/n`
/// respectively.
///
/// Above the threshold the report carries the exact refutation: with `T`
/// the target (stretched to base = height = `n + eps`), `T0` the side-`n`
/// upward triangle sharing its lower-left corner, and `r = f_T0 + 1`, the
/// function `g = f_T - r` satisfies `g(t) >= -(1 - n eps) + max(0, eps - t)`.
/// A hypothetical covering `S` would give `h = f_S - r >= g` with a uniform
/// positive gap over a group element, forcing `integral h` one unit above
/// that element's integral, while `integral h = (extra - 2) / 2`.
pub fn bound_decision(n: u32, extra: u32, eps: &Rat) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n = {n} must be at least 2")));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidInput(format!("eps = {eps} must be positive")));
    }
    let ni = i64::from(n);
    let (threshold, witness) = match extra {
        2 => (Rat::new(1, ni + 1), Variant::Cs1),
        3 => (Rat::new(1, ni), Variant::Plus3),
        k => return Err(Error::UnsupportedExtra(k.into())),
    };
    let mut report = BoundReport {
        n,
        extra,
        eps: eps.clone(),
        threshold: threshold.clone(),
        verdict: BoundVerdict::WithinBound,
        witness: None,
        trace: Vec::new(),
    };
    if eps <= &threshold {
        report.witness = Some(witness);
        report.trace.push(TraceStep {
            name: "within_bound",
            detail: format!("eps = {eps} <= {threshold}; witness: {witness}(n = {n}, eps = {eps}) with {} pieces", witness.piece_count(n)),
        });
        return Ok(report);
    }
    report.verdict = BoundVerdict::Impossible;
    report.trace = impossibility_trace(n, extra, eps)?;
    Ok(report)
}

fn impossibility_trace(n_u: u32, extra: u32, eps: &Rat) -> Result<Vec<TraceStep>> {
    let n = i64::from(n_u);
    let mut trace = Vec::new();
    let n_rat = Rat::from_int(n);
    let side = &n_rat + eps;
    let target = HTriangle::equilateral(Rat::zero(), Rat::zero(), side.clone(), Orientation::Up)?;
    let f_target = f_t(&target);
    trace.push(TraceStep {
        name: "target",
        detail: format!(
            "T: upward triangle, base [0, {side}] at y = 0, height {side}; integral f_T = {}",
            f_target.integral()
        ),
    });

    let reference = HTriangle::equilateral(Rat::zero(), Rat::zero(), n_rat.clone(), Orientation::Up)?;
    trace.push(TraceStep {
        name: "reference_triangle",
        detail: format!("T0: upward triangle of side {n} sharing the lower-left vertex (0, 0) of T"),
    });

    let r = f_t(&reference).add_const(&Rat::one());
    let r_integral = r.integral();
    let expected_r = Rat::new(n * n + 2, 2);
    if r_integral != expected_r {
        return Err(Error::Inconsistent(format!("integral r = {r_integral}, expected {expected_r}")));
    }
    trace.push(TraceStep { name: "reference_function", detail: format!("r = f_T0 + 1; integral r = {r_integral}") });

    let g = &f_target - &r;
    let deficit = Rat::one() - &n_rat * eps;
    let lower = lower_bound_function(n_u, eps);
    if !lower.leq(&g).holds() {
        return Err(Error::Inconsistent("g falls below -(1 - n eps) + max(0, eps - t)".into()));
    }
    let tight = eps <= &Rat::one();
    if tight && lower != g {
        return Err(Error::Inconsistent("g differs from its lower bound although eps <= 1".into()));
    }
    trace.push(TraceStep {
        name: "lower_bound",
        detail: format!(
            "g = f_T - r >= -(1 - {n}*eps) + max(0, eps - t) = {} + max(0, {eps} - t) on [0, 1); {}",
            -&deficit,
            if tight { "equality holds (eps <= 1)" } else { "inequality checked (eps > 1)" }
        ),
    });

    // Group element below g with a uniform gap, and the integral a covering would force.
    let (base_elt, delta, base_name) = if extra == 2 {
        let minus_t = -SawtoothElt::generator_down(&Rat::zero())?;
        (minus_t, Rat::from_int(n + 1) * eps - Rat::one(), "-t")
    } else {
        (SawtoothElt::zero(), &n_rat * eps - Rat::one(), "0")
    };
    if !delta.is_positive() {
        return Err(Error::Inconsistent(format!("gap {delta} is not positive above the threshold")));
    }
    let shifted = base_elt.to_plfunc().add_const(&delta);
    if !shifted.leq(&lower).holds() {
        return Err(Error::Inconsistent(format!("{base_name} + {delta} exceeds the lower bound of g")));
    }
    let forced = base_elt.integral() + Rat::one();
    trace.push(TraceStep {
        name: "jump_inequality",
        detail: format!(
            "h >= g >= {base_name} + delta with delta = {delta} > 0; both are group elements, so integral h >= integral({base_name}) + 1 = {forced}"
        ),
    });

    let actual = Rat::new(i64::from(extra) - 2, 2);
    let pieces = n * n + i64::from(extra);
    if forced <= actual {
        return Err(Error::Inconsistent(format!("forced integral {forced} does not exceed {actual}")));
    }
    trace.push(TraceStep {
        name: "covering_integral",
        detail: format!("a covering S by {pieces} unit triangles has integral h = integral f_S - integral r = {pieces}/2 - {expected_r} = {actual}"),
    });
    trace.push(TraceStep { name: "contradiction", detail: format!("∫h ≥ {forced} contradicts ∫h = {actual}") });
    Ok(trace)
}

/// The bound `-(1 - n eps) + max(0, eps - t)` as a function on `[0, 1)`.
pub fn lower_bound_function(n: u32, eps: &Rat) -> PlFunc {
    let deficit = Rat::one() - Rat::from_int(n.into()) * eps;
    let corner = PlFunc::zero().max(&PlFunc::affine(eps.clone(), Rat::from_int(-1)));
    corner.add_const(&-&deficit)
}
