//! Orbit spaces of the O(2)×O(2) actions and the reduced minimality ODE.
//!
//! Flat case: the quotient of ℝ^{2m} by O(m)×O(m) is the closed first quadrant
//! with the Euclidean metric.  Spherical case: the quotient of the unit
//! four-sphere is the lune {0 ≤ r ≤ π, 0 ≤ ω ≤ π/2} with metric
//! dr² + sin²r dω².  A hypersurface invariant under the group action
//! corresponds to a curve in the orbit space, and it is minimal exactly when
//! the curve's geodesic curvature equals the normal logarithmic derivative of
//! the orbit-volume weight.

use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

/// Which orbit space a curve lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    /// First quadrant of ℝ², quotient of ℝ^{2m} by O(m)×O(m).
    Flat { m: u32 },
    /// Spherical lune, quotient of the unit S⁴ by O(2)×O(2).
    Spherical,
}

impl OrbitKind {
    /// The flat case of interest, m = 2.
    pub const fn flat() -> Self {
        OrbitKind::Flat { m: 2 }
    }
}

/// A point of the orbit space: (x, y) flat, (r, ω) spherical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitPoint {
    pub c1: f64,
    pub c2: f64,
}

impl OrbitPoint {
    pub const fn new(c1: f64, c2: f64) -> Self {
        OrbitPoint { c1, c2 }
    }
}

/// Curve state: a point, a coordinate-basis tangent of unit orbit-metric norm,
/// and the accumulated arclength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveState {
    pub point: OrbitPoint,
    /// Tangent components (dc1/ds, dc2/ds) in the coordinate basis.
    pub tangent: [f64; 2],
    pub s: f64,
}

/// Coordinate derivative of a curve state under the reduced minimality flow.
#[derive(Debug, Clone, Copy)]
pub struct StateDeriv {
    pub dpoint: [f64; 2],
    pub dtangent: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitError {
    /// An orbit radius vanishes; the weight's logarithmic derivative is
    /// singular there and callers must use the edge-start expansion instead.
    DegenerateOrbit,
}

impl fmt::Display for OrbitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitError::DegenerateOrbit => write!(f, "orbit is degenerate (a1*a2 = 0)"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OrbitError {}

/// Diagonal metric coefficients (g11, g22) at a point.
pub fn orbit_metric_coefficients(point: OrbitPoint, kind: OrbitKind) -> (f64, f64) {
    match kind {
        OrbitKind::Flat { .. } => (1.0, 1.0),
        OrbitKind::Spherical => {
            let sr = point.c1.sin();
            (1.0, sr * sr)
        }
    }
}

/// Radii of the two orbit circles over a point; the orbit is a torus iff both
/// are positive.
pub fn orbit_radii(point: OrbitPoint, kind: OrbitKind) -> (f64, f64) {
    match kind {
        OrbitKind::Flat { .. } => (point.c1, point.c2),
        OrbitKind::Spherical => {
            let sr = point.c1.sin();
            (sr * point.c2.cos(), sr * point.c2.sin())
        }
    }
}

/// Orbit-volume weight w = (2π a1)(2π a2); hypersurface volume is ∫ w ds.
///
/// For the flat O(m)×O(m) case with m > 2 the weight generalizes to
/// surface-area factors ∝ (a1 a2)^{m-1}; only logarithmic derivatives enter
/// the ODE, while quadrature uses the honest m = 2 torus area.
pub fn orbit_weight(point: OrbitPoint, kind: OrbitKind) -> f64 {
    let (a1, a2) = orbit_radii(point, kind);
    4.0 * core::f64::consts::PI * core::f64::consts::PI * a1 * a2
}

/// Orthonormal-frame components of a coordinate tangent.
pub fn frame_components(state: &CurveState, kind: OrbitKind) -> (f64, f64) {
    let (_, g22) = orbit_metric_coefficients(state.point, kind);
    (state.tangent[0], g22.sqrt() * state.tangent[1])
}

/// Orbit-metric norm of the stored tangent.
pub fn tangent_norm(state: &CurveState, kind: OrbitKind) -> f64 {
    let (t1, t2) = frame_components(state, kind);
    t1.hypot(t2)
}

/// Rescale the tangent to unit orbit-metric norm.
pub fn renormalize(state: &mut CurveState, kind: OrbitKind) {
    let n = tangent_norm(state, kind);
    state.tangent[0] /= n;
    state.tangent[1] /= n;
}

/// Frame components of ∇ log w at an interior point.
fn grad_log_weight(point: OrbitPoint, kind: OrbitKind) -> Result<(f64, f64), OrbitError> {
    let (a1, a2) = orbit_radii(point, kind);
    if a1 <= 0.0 || a2 <= 0.0 {
        return Err(OrbitError::DegenerateOrbit);
    }
    match kind {
        OrbitKind::Flat { m } => {
            let c = f64::from(m - 1);
            Ok((c / point.c1, c / point.c2))
        }
        OrbitKind::Spherical => {
            let (r, w) = (point.c1, point.c2);
            let sr = r.sin();
            Ok((2.0 * r.cos() / sr, (1.0 / w.tan() - w.tan()) / sr))
        }
    }
}

/// Target geodesic curvature ∂ₙ log w of the reduced minimality condition,
/// with n the tangent rotated by +90° in the oriented orthonormal frame.
pub fn curvature_target(state: &CurveState, kind: OrbitKind) -> Result<f64, OrbitError> {
    let (g1, g2) = grad_log_weight(state.point, kind)?;
    let (t1, t2) = frame_components(state, kind);
    Ok(-t2 * g1 + t1 * g2)
}

/// First-order system for the reduced minimality ODE: the point moves along
/// the tangent and the tangent rotates at rate ∂ₙ log w, plus the coordinate
/// Christoffel terms of the orbit metric.  The exact flow preserves unit
/// speed; the discrete integrator renormalizes after each step.
pub fn minimality_rhs(state: &CurveState, kind: OrbitKind) -> Result<StateDeriv, OrbitError> {
    let kappa = curvature_target(state, kind)?;
    let (t1, t2) = frame_components(state, kind);
    let (n1, n2) = (-t2, t1);
    match kind {
        OrbitKind::Flat { .. } => Ok(StateDeriv {
            dpoint: [state.tangent[0], state.tangent[1]],
            dtangent: [kappa * n1, kappa * n2],
        }),
        OrbitKind::Spherical => {
            let r = state.point.c1;
            let (sr, cr) = (r.sin(), r.cos());
            let (tr, tw) = (state.tangent[0], state.tangent[1]);
            // Christoffels of dr² + sin²r dω²: Γ^r_ωω = −sin r cos r, Γ^ω_rω = cot r
            Ok(StateDeriv {
                dpoint: [tr, tw],
                dtangent: [
                    kappa * n1 + sr * cr * tw * tw,
                    kappa * n2 / sr - 2.0 * (cr / sr) * tr * tw,
                ],
            })
        }
    }
}

/// Whether a point lies in the closed orbit-space domain.
pub fn in_domain(point: OrbitPoint, kind: OrbitKind) -> bool {
    match kind {
        OrbitKind::Flat { .. } => point.c1 >= 0.0 && point.c2 >= 0.0,
        OrbitKind::Spherical => {
            point.c1 >= 0.0
                && point.c1 <= core::f64::consts::PI
                && point.c2 >= 0.0
                && point.c2 <= core::f64::consts::FRAC_PI_2
        }
    }
}

/// Central symmetry of the lune, (r, ω) ↦ (π − r, π/2 − ω); maps solutions of
/// the reduced ODE to solutions.
pub fn central_image(point: OrbitPoint) -> OrbitPoint {
    OrbitPoint::new(core::f64::consts::PI - point.c1, core::f64::consts::FRAC_PI_2 - point.c2)
}
