//! Generating-curve integration: series starts at the singular edge hits,
//! fixed-step RK4 with deterministic substepping near the domain boundary,
//! stop-event detection, and bisector-crossing counts.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::orbit::{
    self, minimality_rhs, orbit_radii, CurveState, OrbitKind, OrbitPoint,
};

/// Why integration of a profile curve stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// First orbit radius (a1) approached zero: the ω = π/2 edge (or x = 0).
    EdgeA1,
    /// Second orbit radius (a2) approached zero: the ω = 0 edge (or y = 0).
    EdgeA2,
    /// Both radii small: pole approach (spherical only).
    Pole,
    /// Reached the arclength budget.
    MaxLength,
}

/// Start / end descriptors of a sampled profile curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveMeta {
    /// Edge-start parameter when the curve began with the series expansion.
    pub start_r0: Option<f64>,
    /// Series offset used at the start.
    pub start_delta: f64,
    pub end: StopReason,
    /// Boundary-approach threshold the run used.
    pub edge_stop: f64,
    /// Whole curve lies on the bisector ω = π/4 (degenerate for crossing counts).
    pub on_bisector: bool,
}

/// A unit-speed generating curve sampled at uniform arclength spacing.
#[derive(Debug, Clone)]
pub struct ProfileCurve {
    pub kind: OrbitKind,
    pub h: f64,
    pub samples: Vec<CurveState>,
    pub meta: CurveMeta,
}

impl ProfileCurve {
    /// Orbit radii at sample `i`.
    pub fn radii(&self, i: usize) -> (f64, f64) {
        orbit_radii(self.samples[i].point, self.kind)
    }

    /// Total sampled arclength.
    pub fn length(&self) -> f64 {
        match self.samples.len() {
            0 => 0.0,
            n => self.samples[n - 1].s - self.samples[0].s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileError {
    /// Edge-start parameter sits on a corner of the orbit domain.
    InvalidStart,
    /// Unit-speed drift exceeded 1e-6 in a single step.
    StepTooLarge { s: f64 },
    /// Step outside (1e-6, 1e-2].
    BadStep,
    /// Start state degenerate or outside the domain.
    BadState,
}

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileError::InvalidStart => write!(f, "edge start lies on a domain corner"),
            ProfileError::StepTooLarge { s } => {
                write!(f, "unit-speed drift above 1e-6 per step at s = {s}")
            }
            ProfileError::BadStep => write!(f, "step size outside (1e-6, 1e-2]"),
            ProfileError::BadState => write!(f, "start state degenerate or out of domain"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ProfileError {}

/// State at arclength δ from a perpendicular hit of the ω = 0 edge (spherical,
/// start radius r0) or the y = 0 edge (flat, start abscissa r0).
///
/// The hit is a regular-singular point of the reduced ODE; the state comes
/// from the Frobenius series whose edge curvature is the continuous extension
/// of ∂ₙ log w across the hit.  Coefficients are frozen from the symbolic
/// series solve; position is accurate to O(δ⁴), the tangent to O(δ³).
pub fn edge_start_expansion(
    r0: f64,
    kind: OrbitKind,
    delta: f64,
) -> Result<CurveState, ProfileError> {
    if !(delta > 0.0 && delta <= 1e-3) {
        return Err(ProfileError::BadStep);
    }
    let mut state = match kind {
        OrbitKind::Spherical => {
            if !(r0 > 0.0 && r0 < PI) {
                return Err(ProfileError::InvalidStart);
            }
            let (sr, cr) = (r0.sin(), r0.cos());
            let cot = cr / sr;
            let a1 = -1.5 * cot;
            let a3 = -21.0 / 32.0 * cot + 23.0 * cr / (32.0 * sr * sr * sr);
            let r = r0 + 0.75 * cot * delta * delta;
            let w = delta / sr - 5.0 * cot * cot / (8.0 * sr) * delta * delta * delta;
            let alpha = FRAC_PI_2 + a1 * delta + a3 * delta * delta * delta;
            CurveState {
                point: OrbitPoint::new(r, w),
                tangent: [alpha.cos(), alpha.sin() / r.sin()],
                s: delta,
            }
        }
        OrbitKind::Flat { m } => {
            if r0 <= 0.0 {
                return Err(ProfileError::InvalidStart);
            }
            let c = f64::from(m - 1) / f64::from(m);
            let b1 = -c / r0;
            let x = r0 + 0.5 * c / r0 * delta * delta;
            let y = delta - c * c / (6.0 * r0 * r0) * delta * delta * delta;
            let alpha = FRAC_PI_2 + b1 * delta;
            CurveState {
                point: OrbitPoint::new(x, y),
                tangent: [alpha.cos(), alpha.sin()],
                s: delta,
            }
        }
    };
    orbit::renormalize(&mut state, kind);
    Ok(state)
}

/// Integration controls for [`integrate_profile`].
#[derive(Debug, Clone, Copy)]
pub struct IntegrateOpts {
    /// Emission step (uniform arclength between stored samples).
    pub h: f64,
    /// Arclength budget from the start state.
    pub s_max: f64,
    /// Boundary-approach threshold on the orbit radii (and on sin r).
    pub edge_stop: f64,
}

impl IntegrateOpts {
    pub fn new(h: f64, s_max: f64) -> Self {
        IntegrateOpts { h, s_max, edge_stop: 1e-4 }
    }
}

fn rk4_step(state: &CurveState, kind: OrbitKind, h: f64) -> Option<CurveState> {
    let add = |st: &CurveState, d: &orbit::StateDeriv, f: f64| CurveState {
        point: OrbitPoint::new(st.point.c1 + f * d.dpoint[0], st.point.c2 + f * d.dpoint[1]),
        tangent: [st.tangent[0] + f * d.dtangent[0], st.tangent[1] + f * d.dtangent[1]],
        s: st.s + f,
    };
    let k1 = minimality_rhs(state, kind).ok()?;
    let s2 = add(state, &k1, 0.5 * h);
    let k2 = minimality_rhs(&s2, kind).ok()?;
    let s3 = add(state, &k2, 0.5 * h);
    let k3 = minimality_rhs(&s3, kind).ok()?;
    let s4 = add(state, &k3, h);
    let k4 = minimality_rhs(&s4, kind).ok()?;
    Some(CurveState {
        point: OrbitPoint::new(
            state.point.c1
                + h / 6.0 * (k1.dpoint[0] + 2.0 * k2.dpoint[0] + 2.0 * k3.dpoint[0] + k4.dpoint[0]),
            state.point.c2
                + h / 6.0 * (k1.dpoint[1] + 2.0 * k2.dpoint[1] + 2.0 * k3.dpoint[1] + k4.dpoint[1]),
        ),
        tangent: [
            state.tangent[0]
                + h / 6.0
                    * (k1.dtangent[0] + 2.0 * k2.dtangent[0] + 2.0 * k3.dtangent[0] + k4.dtangent[0]),
            state.tangent[1]
                + h / 6.0
                    * (k1.dtangent[1] + 2.0 * k2.dtangent[1] + 2.0 * k3.dtangent[1] + k4.dtangent[1]),
        ],
        s: state.s + h,
    })
}

/// Distance scale to the nearest singular boundary, used by the substep policy.
fn boundary_scale(state: &CurveState, kind: OrbitKind) -> f64 {
    let (a1, a2) = orbit_radii(state.point, kind);
    match kind {
        OrbitKind::Flat { .. } => a1.min(a2),
        OrbitKind::Spherical => a1.min(a2).min(state.point.c1.sin()),
    }
}

/// Advance one emission step of size `h`, internally split into equal RK4
/// substeps so that each substep stays below a tenth of the distance to the
/// singular boundary.  The tangent is renormalized after every substep.
///
/// Returns the advanced state, or the stop reason if a substep entered the
/// boundary zone before the full step completed (the partial progress is then
/// discarded so that emitted samples stay uniformly spaced).
pub(crate) fn advance(
    state: &CurveState,
    kind: OrbitKind,
    h: f64,
    edge_stop: f64,
) -> Result<Result<CurveState, StopReason>, ProfileError> {
    let scale = boundary_scale(state, kind).max(1e-12);
    let k = (h / (0.1 * scale)).ceil();
    let k = if k.is_finite() { (k as usize).clamp(1, 8192) } else { 8192 };
    let hs = h / k as f64;
    let mut cur = *state;
    for _ in 0..k {
        let mut next = rk4_step(&cur, kind, hs).ok_or(ProfileError::BadState)?;
        let drift = (orbit::tangent_norm(&next, kind) - 1.0).abs();
        if drift > 1e-6 {
            return Err(ProfileError::StepTooLarge { s: next.s });
        }
        orbit::renormalize(&mut next, kind);
        if let Some(reason) = stop_event(&next, kind, edge_stop) {
            return Ok(Err(reason));
        }
        cur = next;
    }
    Ok(Ok(cur))
}

/// Advance assuming the trajectory stays interior (tests and certificates).
#[doc(hidden)]
pub fn advance_interior(
    state: &CurveState,
    kind: OrbitKind,
    h: f64,
) -> Result<CurveState, ProfileError> {
    match advance(state, kind, h, 0.0)? {
        Ok(st) => Ok(st),
        Err(_) => Err(ProfileError::BadState),
    }
}

/// Stop-event test; `Some` when the trajectory is entering a boundary zone.
fn stop_event(state: &CurveState, kind: OrbitKind, edge_stop: f64) -> Option<StopReason> {
    let (a1, a2) = orbit_radii(state.point, kind);
    // radial derivatives along the curve
    let (da1, da2) = match kind {
        OrbitKind::Flat { .. } => (state.tangent[0], state.tangent[1]),
        OrbitKind::Spherical => {
            let (r, w) = (state.point.c1, state.point.c2);
            let (sr, cr) = (r.sin(), r.cos());
            let (tr, tw) = (state.tangent[0], state.tangent[1]);
            (
                cr * w.cos() * tr - sr * w.sin() * tw,
                cr * w.sin() * tr + sr * w.cos() * tw,
            )
        }
    };
    if kind == OrbitKind::Spherical && a1 < edge_stop && a2 < edge_stop && (da1 < 0.0 || da2 < 0.0)
    {
        return Some(StopReason::Pole);
    }
    if a1 < edge_stop && da1 < 0.0 {
        return Some(StopReason::EdgeA1);
    }
    if a2 < edge_stop && da2 < 0.0 {
        return Some(StopReason::EdgeA2);
    }
    None
}

/// Integrate the reduced minimality ODE from `start` until the arclength
/// budget or a boundary approach, emitting samples every `opts.h`.
pub fn integrate_profile(
    start: CurveState,
    kind: OrbitKind,
    opts: &IntegrateOpts,
) -> Result<ProfileCurve, ProfileError> {
    if !(opts.h > 1e-6 && opts.h <= 1e-2) {
        return Err(ProfileError::BadStep);
    }
    if !orbit::in_domain(start.point, kind) || boundary_scale(&start, kind) <= 0.0 {
        return Err(ProfileError::BadState);
    }
    let mut samples = Vec::with_capacity((opts.s_max / opts.h) as usize + 2);
    samples.push(start);
    let mut cur = start;
    let mut end = StopReason::MaxLength;
    while cur.s - start.s < opts.s_max - 0.5 * opts.h {
        match advance(&cur, kind, opts.h, opts.edge_stop)? {
            Ok(next) => {
                cur = next;
                samples.push(cur);
            }
            Err(reason) => {
                end = reason;
                break;
            }
        }
    }
    let on_bisector = kind == OrbitKind::Spherical
        && samples.iter().all(|st| (st.point.c2 - FRAC_PI_4).abs() < 1e-9);
    Ok(ProfileCurve {
        kind,
        h: opts.h,
        samples,
        meta: CurveMeta {
            start_r0: None,
            start_delta: 0.0,
            end,
            edge_stop: opts.edge_stop,
            on_bisector,
        },
    })
}

/// Transversal crossings of the bisector ω = π/4 along a spherical curve,
/// with the interpolated (s, r) location of each.  Tangential touches
/// (|ω − π/4| < 1e-12 without a sign change) are not counted, and a curve
/// lying on the bisector to integrator noise (1e-9) has no transversal
/// crossings at all; such curves carry the `on_bisector` meta flag.
pub fn bisector_crossing_points(curve: &ProfileCurve) -> Vec<(f64, f64)> {
    let dev = curve
        .samples
        .iter()
        .map(|st| (st.point.c2 - FRAC_PI_4).abs())
        .fold(0.0f64, f64::max);
    if dev < 1e-9 {
        return Vec::new();
    }
    crossing_scan(curve.samples.iter().map(|st| (st.s, st.point.c1, st.point.c2)))
}

/// Number of transversal bisector crossings.
pub fn bisector_crossings(curve: &ProfileCurve) -> usize {
    bisector_crossing_points(curve).len()
}

pub(crate) fn crossing_scan(states: impl Iterator<Item = (f64, f64, f64)>) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut last: Option<(f64, f64, f64)> = None;
    for (s, r, w) in states {
        if let Some((s0, r0, w0)) = last {
            let f0 = w0 - FRAC_PI_4;
            let f1 = w - FRAC_PI_4;
            if (f0 < -1e-12 && f1 > 1e-12) || (f0 > 1e-12 && f1 < -1e-12) {
                let t = f0 / (f0 - f1);
                out.push((s0 + t * (s - s0), r0 + t * (r - r0)));
            }
        }
        last = Some((s, r, w));
    }
    out
}
