//! Extrinsic geometry of the swept hypersurface, reconstructed from a sampled
//! generating curve: principal curvatures, |A|², the mean-curvature residual
//! certificate, volume, the |A|³ integral, sup ρ|A|, and the spectral-counting
//! functional ∫ max(V,1)^{3/2}.
//!
//! The three principal curvatures of the equivariant hypersurface are the
//! geodesic curvature of the generating curve and −∂ₙa_j/a_j along the two
//! orbit circle directions; minimality is the vanishing of their sum, which
//! coincides with the reduced ODE since κ₁ + κ₂ = −∂ₙ log w exactly.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::orbit::{orbit_radii, CurveState, OrbitKind};
use crate::profile::{advance, edge_start_expansion, CurveMeta, ProfileCurve, ProfileError, StopReason};

/// Ric(ν, ν) of the unit four-sphere, for any unit normal.
pub const RIC_NU_NU: f64 = 3.0;

/// Per-sample extrinsic data of the swept hypersurface.
#[derive(Debug, Clone, Copy)]
pub struct GeometricSample {
    pub s: f64,
    /// Orbit circle radii.
    pub a1: f64,
    pub a2: f64,
    /// Orbit-volume weight 4π² a1 a2.
    pub w: f64,
    /// Radius function: sin r on the sphere, min(|x|, 1) in the flat chart.
    pub rho: f64,
    /// Profile geodesic curvature (central differences of the tangent field).
    pub kappa_prof: f64,
    /// Orbit-direction principal curvatures −∂ₙa_j/a_j.
    pub kappa1: f64,
    pub kappa2: f64,
    /// |A|² = κ_prof² + κ₁² + κ₂².
    pub a_sq: f64,
    /// Mean-curvature residual κ_prof + κ₁ + κ₂ (trace convention).
    pub h_resid: f64,
}

/// What the curve runs into at an end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndKind {
    /// a1 → 0 (the ω = π/2 edge, or x = 0).
    EdgeA1,
    /// a2 → 0 (the ω = 0 edge, or y = 0).
    EdgeA2,
    /// Both radii vanish: a pole of the lune.
    Pole,
    /// The curve simply stops in the interior.
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryError {
    /// Fewer than five samples survive edge trimming.
    TooFewSamples,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::TooFewSamples => write!(f, "too few interior samples after trimming"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GeometryError {}

/// Volume-type invariants of a single profile.
#[derive(Debug, Clone, Copy)]
pub struct QuantityReport {
    pub volume: f64,
    pub int_a3: f64,
    pub sup_rho_a: f64,
    pub cheng_tysk: f64,
    pub minimality_sup: f64,
    pub int_a3_divergent: bool,
    pub cheng_tysk_divergent: bool,
}

fn rho_of(state: &CurveState, kind: OrbitKind) -> f64 {
    match kind {
        OrbitKind::Spherical => state.point.c1.sin(),
        OrbitKind::Flat { .. } => state.point.c1.hypot(state.point.c2).min(1.0),
    }
}

/// Classify which boundary an end sample sits near.
pub fn classify_end(state: &CurveState, kind: OrbitKind) -> EndKind {
    let (a1, a2) = orbit_radii(state.point, kind);
    if kind == OrbitKind::Spherical {
        let d_pole = state.point.c1.min(PI - state.point.c1);
        if d_pole < 2.5 * a1.min(a2) && d_pole < 0.05 {
            return EndKind::Pole;
        }
    }
    if a1.min(a2) < 0.02 {
        if a1 <= a2 {
            EndKind::EdgeA1
        } else {
            EndKind::EdgeA2
        }
    } else {
        EndKind::Interior
    }
}

/// Boundary classification of the two curve ends.
pub fn end_kinds(curve: &ProfileCurve) -> (EndKind, EndKind) {
    let first = classify_end(&curve.samples[0], curve.kind);
    let last = match curve.meta.end {
        StopReason::EdgeA1 => EndKind::EdgeA1,
        StopReason::EdgeA2 => EndKind::EdgeA2,
        StopReason::Pole => EndKind::Pole,
        StopReason::MaxLength => classify_end(curve.samples.last().unwrap(), curve.kind),
    };
    (first, last)
}

fn embed(state: &CurveState) -> ([f64; 3], [f64; 3]) {
    let (r, w) = (state.point.c1, state.point.c2);
    let (sr, cr) = (r.sin(), r.cos());
    let (sw, cw) = (w.sin(), w.cos());
    let (tr, tw) = (state.tangent[0], state.tangent[1]);
    (
        [sr * cw, sr * sw, cr],
        [cr * cw * tr - sr * sw * tw, cr * sw * tr + sr * cw * tw, -sr * tr],
    )
}

/// Profile geodesic curvature at sample k by central differences of the
/// stored tangent field, in the lune or the flat chart.
fn fd_kappa(curve: &ProfileCurve, k: usize) -> f64 {
    let h = curve.h;
    match curve.kind {
        OrbitKind::Spherical => {
            let (p, t) = embed(&curve.samples[k]);
            let (_, tp) = embed(&curve.samples[k + 1]);
            let (_, tm) = embed(&curve.samples[k - 1]);
            // n = p × t; ⟨dT/ds, n⟩ picks out the geodesic part
            let n = [
                p[1] * t[2] - p[2] * t[1],
                p[2] * t[0] - p[0] * t[2],
                p[0] * t[1] - p[1] * t[0],
            ];
            ((tp[0] - tm[0]) * n[0] + (tp[1] - tm[1]) * n[1] + (tp[2] - tm[2]) * n[2]) / (2.0 * h)
        }
        OrbitKind::Flat { .. } => {
            let t = curve.samples[k].tangent;
            let tp = curve.samples[k + 1].tangent;
            let tm = curve.samples[k - 1].tangent;
            let n = [-t[1], t[0]];
            ((tp[0] - tm[0]) * n[0] + (tp[1] - tm[1]) * n[1]) / (2.0 * h)
        }
    }
}

/// Orbit-direction principal curvatures −∂ₙa_j/a_j at a state.
fn orbit_curvatures(state: &CurveState, kind: OrbitKind) -> (f64, f64) {
    let (a1, a2) = orbit_radii(state.point, kind);
    match kind {
        OrbitKind::Flat { .. } => {
            let (n1, n2) = (-state.tangent[1], state.tangent[0]);
            (-n1 / a1, -n2 / a2)
        }
        OrbitKind::Spherical => {
            let (r, w) = (state.point.c1, state.point.c2);
            let (sr, cr) = (r.sin(), r.cos());
            // frame components of the normal and of the radii gradients
            let (t1, t2) = (state.tangent[0], sr * state.tangent[1]);
            let (n1, n2) = (-t2, t1);
            let g1 = (cr * w.cos(), -w.sin());
            let g2 = (cr * w.sin(), w.cos());
            (-(n1 * g1.0 + n2 * g1.1) / a1, -(n1 * g2.0 + n2 * g2.1) / a2)
        }
    }
}

/// Index range of samples that survive edge trimming: two-sample stencil
/// margins plus a distance floor near the singular boundary.
fn trimmed_range(curve: &ProfileCurve) -> (usize, usize) {
    let n = curve.samples.len();
    let floor = curve.meta.edge_stop.max(2.0 * curve.h);
    let dist = |k: usize| {
        let (a1, a2) = curve.radii(k);
        match curve.kind {
            OrbitKind::Flat { .. } => a1.min(a2),
            OrbitKind::Spherical => a1.min(a2).min(curve.samples[k].point.c1.sin()),
        }
    };
    let mut lo = 1;
    while lo < n && dist(lo) < floor {
        lo += 1;
    }
    let mut hi = n - 2;
    while hi > lo && dist(hi) < floor {
        hi -= 1;
    }
    (lo, hi)
}

/// Per-sample extrinsic geometry over the trimmed interior of the curve.
pub fn second_fundamental_form(curve: &ProfileCurve) -> Result<Vec<GeometricSample>, GeometryError> {
    let n = curve.samples.len();
    if n < 5 {
        return Err(GeometryError::TooFewSamples);
    }
    let (lo, hi) = trimmed_range(curve);
    if hi <= lo + 3 {
        return Err(GeometryError::TooFewSamples);
    }
    let mut out = Vec::with_capacity(hi - lo + 1);
    for k in lo..=hi {
        let st = &curve.samples[k];
        let (a1, a2) = orbit_radii(st.point, curve.kind);
        let kappa_prof = fd_kappa(curve, k);
        let (kappa1, kappa2) = orbit_curvatures(st, curve.kind);
        let a_sq = kappa_prof * kappa_prof + kappa1 * kappa1 + kappa2 * kappa2;
        out.push(GeometricSample {
            s: st.s,
            a1,
            a2,
            w: 4.0 * PI * PI * a1 * a2,
            rho: rho_of(st, curve.kind),
            kappa_prof,
            kappa1,
            kappa2,
            a_sq,
            h_resid: kappa_prof + kappa1 + kappa2,
        });
    }
    Ok(out)
}

/// Sup of |κ_prof + κ₁ + κ₂| over the trimmed samples: zero on exact
/// solutions up to the finite-difference budget of the grid.
pub fn mean_curvature_residual(curve: &ProfileCurve) -> f64 {
    match second_fundamental_form(curve) {
        Ok(samples) => samples.iter().map(|g| g.h_resid.abs()).fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

/// Streaming residual certificate: re-integrates the curve from an edge start
/// at a fine certification step and measures sup |κ − ∂ₙ log w| with a
/// Richardson-extrapolated five-point curvature stencil, without storing the
/// trajectory.  The coarse sampled grid of a shot branch cannot resolve the
/// cap curvature of the tighter branches; this pass can.
pub fn streaming_residual(
    r0: f64,
    kind: OrbitKind,
    delta: f64,
    h: f64,
    s_max: f64,
    edge_stop: f64,
) -> Result<f64, ProfileError> {
    let start = edge_start_expansion(r0, kind, delta)?;
    let mut window: [CurveState; 5] = [start; 5];
    let mut filled = 1usize;
    let mut cur = start;
    let mut sup: f64 = 0.0;
    // skip the first few windows: the start itself sits near the singular edge
    let mut emitted = 0usize;
    while cur.s - start.s < s_max {
        let next = match advance(&cur, kind, h, edge_stop)? {
            Ok(st) => st,
            Err(_) => break,
        };
        window.rotate_left(1);
        window[4] = next;
        filled += 1;
        emitted += 1;
        cur = next;
        if filled >= 5 && emitted > 16 {
            let mid = &window[2];
            // the stencil needs a few steps of clearance from the boundary
            let (a1, a2) = orbit_radii(mid.point, kind);
            if a1.min(a2) < (6.0 * h).max(edge_stop) {
                continue;
            }
            let k_h = stencil_kappa(kind, &window[1], mid, &window[3], h);
            let k_2h = stencil_kappa(kind, &window[0], mid, &window[4], 2.0 * h);
            let kappa = (4.0 * k_h - k_2h) / 3.0;
            if let Ok(target) = crate::orbit::curvature_target(mid, kind) {
                let r = (kappa - target).abs();
                if r > sup {
                    sup = r;
                }
            }
        }
    }
    Ok(sup)
}

fn stencil_kappa(kind: OrbitKind, m: &CurveState, c: &CurveState, p: &CurveState, h2: f64) -> f64 {
    match kind {
        OrbitKind::Spherical => {
            let (pc, tc) = embed(c);
            let (_, tp) = embed(p);
            let (_, tm) = embed(m);
            let n = [
                pc[1] * tc[2] - pc[2] * tc[1],
                pc[2] * tc[0] - pc[0] * tc[2],
                pc[0] * tc[1] - pc[1] * tc[0],
            ];
            ((tp[0] - tm[0]) * n[0] + (tp[1] - tm[1]) * n[1] + (tp[2] - tm[2]) * n[2]) / (2.0 * h2)
        }
        OrbitKind::Flat { .. } => {
            let n = [-c.tangent[1], c.tangent[0]];
            ((p.tangent[0] - m.tangent[0]) * n[0] + (p.tangent[1] - m.tangent[1]) * n[1])
                / (2.0 * h2)
        }
    }
}

/// Vanishing multiplicity of the weight at an end: w ∝ dᵏ with k = 1 at an
/// edge and k = 2 at a pole.
fn cap_term(curve: &ProfileCurve, end: EndKind, state: &CurveState) -> f64 {
    let (a1, a2) = orbit_radii(state.point, curve.kind);
    let w = 4.0 * PI * PI * a1 * a2;
    match end {
        EndKind::EdgeA1 => w * a1 / 2.0,
        EndKind::EdgeA2 => w * a2 / 2.0,
        EndKind::Pole => {
            let d = state.point.c1.min(PI - state.point.c1);
            w * d / 3.0
        }
        EndKind::Interior => 0.0,
    }
}

/// Hypersurface volume ∫ w ds: composite Simpson over the samples plus the
/// analytic caps beyond both ends.
pub fn volume(curve: &ProfileCurve) -> f64 {
    let n = curve.samples.len();
    let w_at = |k: usize| {
        let (a1, a2) = curve.radii(k);
        4.0 * PI * PI * a1 * a2
    };
    let mut total = 0.0;
    let h = curve.h;
    let mut k = 0;
    while k + 2 < n {
        total += h / 3.0 * (w_at(k) + 4.0 * w_at(k + 1) + w_at(k + 2));
        k += 2;
    }
    if k + 1 < n {
        total += 0.5 * h * (w_at(k) + w_at(k + 1));
    }
    let (start_kind, end_kind) = end_kinds(curve);
    total += cap_term(curve, start_kind, &curve.samples[0]);
    total += cap_term(curve, end_kind, curve.samples.last().unwrap());
    total
}

/// Integral of f(sample)·w over the samples with ρ > ε; cells straddling the
/// cutoff contribute a linearly interpolated partial trapezoid.
fn cutoff_integral(samples: &[GeometricSample], eps: f64, f: impl Fn(&GeometricSample) -> f64) -> f64 {
    let mut total = 0.0;
    for pair in samples.windows(2) {
        let (g0, g1) = (&pair[0], &pair[1]);
        let h = g1.s - g0.s;
        let (f0, f1) = (f(g0) * g0.w, f(g1) * g1.w);
        let (in0, in1) = (g0.rho > eps, g1.rho > eps);
        match (in0, in1) {
            (true, true) => total += 0.5 * h * (f0 + f1),
            (false, false) => {}
            _ => {
                // interpolate the crossing of ρ = ε inside the cell
                let t = (eps - g0.rho) / (g1.rho - g0.rho);
                let fm = f0 + t * (f1 - f0);
                let frac = if in1 { 1.0 - t } else { t };
                let (fa, fb) = if in1 { (fm, f1) } else { (f0, fm) };
                total += 0.5 * h * frac * (fa + fb);
            }
        }
    }
    total
}

/// Whether the ε-cutoff fails to excise a genuinely singular (pole) end.
fn divergent_at(curve: &ProfileCurve, samples: &[GeometricSample], eps: f64) -> bool {
    let (start, end) = end_kinds(curve);
    let check = |g: &GeometricSample| g.rho * g.a_sq.sqrt() > 0.5 && eps <= g.rho;
    (start == EndKind::Pole && check(&samples[0]))
        || (end == EndKind::Pole && check(samples.last().unwrap()))
}

/// ∫ |A|³ w ds over the samples with ρ > ε, and whether the value is a
/// truncation of a divergent integral.
pub fn integral_a_cubed(curve: &ProfileCurve, eps: f64) -> Result<(f64, bool), GeometryError> {
    let samples = second_fundamental_form(curve)?;
    let v = cutoff_integral(&samples, eps, |g| g.a_sq * g.a_sq.sqrt());
    let div = divergent_at(curve, &samples, eps);
    Ok((v, div))
}

/// Sup over samples of ρ·|A|.
pub fn sup_rho_a(curve: &ProfileCurve) -> Result<f64, GeometryError> {
    let samples = second_fundamental_form(curve)?;
    Ok(samples.iter().map(|g| g.rho * g.a_sq.sqrt()).fold(0.0, f64::max))
}

/// ∫ max(V, 1)^{3/2} w ds with V = |A|² + Ric(ν,ν), over ρ > ε.
pub fn cheng_tysk_functional(curve: &ProfileCurve, eps: f64) -> Result<(f64, bool), GeometryError> {
    let samples = second_fundamental_form(curve)?;
    let ric = if matches!(curve.kind, OrbitKind::Spherical) { RIC_NU_NU } else { 0.0 };
    let v = cutoff_integral(&samples, eps, |g| {
        let v = (g.a_sq + ric).max(1.0);
        v * v.sqrt()
    });
    let div = divergent_at(curve, &samples, eps);
    Ok((v, div))
}

/// All volume-type invariants of a profile in one pass.
pub fn compute_quantities(curve: &ProfileCurve, eps: f64) -> Result<QuantityReport, GeometryError> {
    let samples = second_fundamental_form(curve)?;
    let ric = if matches!(curve.kind, OrbitKind::Spherical) { RIC_NU_NU } else { 0.0 };
    let int_a3 = cutoff_integral(&samples, eps, |g| g.a_sq * g.a_sq.sqrt());
    let cheng = cutoff_integral(&samples, eps, |g| {
        let v = (g.a_sq + ric).max(1.0);
        v * v.sqrt()
    });
    let div = divergent_at(curve, &samples, eps);
    Ok(QuantityReport {
        volume: volume(curve),
        int_a3,
        sup_rho_a: samples.iter().map(|g| g.rho * g.a_sq.sqrt()).fold(0.0, f64::max),
        cheng_tysk: cheng,
        minimality_sup: samples.iter().map(|g| g.h_resid.abs()).fold(0.0, f64::max),
        int_a3_divergent: div,
        cheng_tysk_divergent: div,
    })
}

/// The football meridian ω = π/4 as an exact sampled curve, r from `margin`
/// to π − margin.
pub fn football_meridian(h: f64, margin: f64) -> ProfileCurve {
    exact_line(h, margin, true)
}

/// The equatorial curve r = π/2 as an exact sampled curve, ω from `margin`
/// to π/2 − margin.
pub fn equator_curve(h: f64, margin: f64) -> ProfileCurve {
    exact_line(h, margin, false)
}

fn exact_line(h: f64, margin: f64, meridian: bool) -> ProfileCurve {
    let span = if meridian { PI - 2.0 * margin } else { PI / 2.0 - 2.0 * margin };
    let n = (span / h).floor() as usize + 1;
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let s = k as f64 * h;
        let point = if meridian {
            crate::orbit::OrbitPoint::new(margin + s, PI / 4.0)
        } else {
            crate::orbit::OrbitPoint::new(PI / 2.0, margin + s)
        };
        let tangent = if meridian { [1.0, 0.0] } else { [0.0, 1.0] };
        samples.push(CurveState { point, tangent, s });
    }
    ProfileCurve {
        kind: OrbitKind::Spherical,
        h,
        samples,
        meta: CurveMeta {
            start_r0: None,
            start_delta: 0.0,
            end: if meridian { StopReason::Pole } else { StopReason::EdgeA1 },
            edge_stop: margin,
            on_bisector: meridian,
        },
    }
}
