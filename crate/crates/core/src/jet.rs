//! Order-3 Taylor jets: a value together with its first three derivatives with
//! respect to a common curve parameter.
//!
//! Used to push derivative data of integrated curves through coordinate
//! changes (Cartesian to polar, flat chart to spherical chart) without finite
//! differencing, so that curvature and its arclength derivative stay exact in
//! regions where the curve is strongly bent.

#[allow(unused_imports)]
use num_traits::Float;

/// Value plus derivatives d1, d2, d3 with respect to the curve parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet3 {
    pub const fn new(v: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Jet3 { v, d1, d2, d3 }
    }

    /// Constant jet (all derivatives zero).
    pub const fn constant(v: f64) -> Self {
        Jet3::new(v, 0.0, 0.0, 0.0)
    }

    pub fn scale(self, c: f64) -> Jet3 {
        Jet3::new(c * self.v, c * self.d1, c * self.d2, c * self.d3)
    }

    /// Square root from the Leibniz expansion of s·s = self.
    pub fn sqrt(self) -> Jet3 {
        let s0 = self.v.sqrt();
        let s1 = self.d1 / (2.0 * s0);
        let s2 = (self.d2 / 2.0 - s1 * s1) / s0;
        let s3 = (self.d3 / 2.0 - 3.0 * s1 * s2) / s0;
        Jet3::new(s0, s1, s2, s3)
    }

    /// Faà di Bruno composition sin∘self.
    pub fn sin(self) -> Jet3 {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.compose(s, c, -s, -c)
    }

    /// Faà di Bruno composition cos∘self.
    pub fn cos(self) -> Jet3 {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.compose(c, -s, -c, s)
    }

    fn compose(self, f0: f64, f1: f64, f2: f64, f3: f64) -> Jet3 {
        let (u1, u2, u3) = (self.d1, self.d2, self.d3);
        Jet3::new(
            f0,
            f1 * u1,
            f2 * u1 * u1 + f1 * u2,
            f3 * u1 * u1 * u1 + 3.0 * f2 * u1 * u2 + f1 * u3,
        )
    }
}

impl core::ops::Add for Jet3 {
    type Output = Jet3;
    fn add(self, o: Jet3) -> Jet3 {
        Jet3::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)
    }
}

impl core::ops::Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, o: Jet3) -> Jet3 {
        Jet3::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2, self.d3 - o.d3)
    }
}

/// Leibniz product to third order.
impl core::ops::Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, o: Jet3) -> Jet3 {
        Jet3::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
            self.d3 * o.v + 3.0 * self.d2 * o.d1 + 3.0 * self.d1 * o.d2 + self.v * o.d3,
        )
    }
}

/// Quotient from the Leibniz expansion of self = q·o.
impl core::ops::Div for Jet3 {
    type Output = Jet3;
    fn div(self, o: Jet3) -> Jet3 {
        let q0 = self.v / o.v;
        let q1 = (self.d1 - q0 * o.d1) / o.v;
        let q2 = (self.d2 - 2.0 * q1 * o.d1 - q0 * o.d2) / o.v;
        let q3 = (self.d3 - 3.0 * q2 * o.d1 - 3.0 * q1 * o.d2 - q0 * o.d3) / o.v;
        Jet3::new(q0, q1, q2, q3)
    }
}

/// Polar coordinates (radius, angle) of a planar curve given Cartesian jets.
///
/// The angle jet is assembled from θ' = (x y' − y x')/(x²+y²), differentiated
/// twice, which keeps full third-order information without an atan2 chain.
pub fn polar_from_cartesian(x: Jet3, y: Jet3) -> (Jet3, Jet3) {
    let d2 = x * x + y * y;
    let radius = d2.sqrt();

    let theta0 = y.v.atan2(x.v);
    // numerator n = x y' - y x' and its two derivatives
    let n0 = x.v * y.d1 - y.v * x.d1;
    let n1 = x.v * y.d2 - y.v * x.d2;
    let n2 = x.d1 * y.d2 + x.v * y.d3 - y.d1 * x.d2 - y.v * x.d3;
    let dd0 = d2.v;
    let dd1 = d2.d1;
    let dd2 = d2.d2;
    let w0 = n0 / dd0;
    let w1 = (n1 - w0 * dd1) / dd0;
    let w2 = (n2 - 2.0 * w1 * dd1 - w0 * dd2) / dd0;
    (radius, Jet3::new(theta0, w0, w1, w2))
}

/// Geodesic curvature and its arclength derivative of a coordinate curve in a
/// warped-product metric dr² + f(r)² dω².
///
/// `r`, `w` are jets of the coordinates with respect to any regular curve
/// parameter; `f`, `fp`, `fpp` evaluate the warp factor and its first two
/// derivatives.  The normal convention is the tangent rotated by +90° in the
/// oriented (∂r, ∂ω/f) frame.
pub fn warped_curvature(
    r: Jet3,
    w: Jet3,
    f: impl Fn(f64) -> f64,
    fp: impl Fn(f64) -> f64,
    fpp: impl Fn(f64) -> f64,
) -> (f64, f64) {
    let (f0, f1, f2) = (f(r.v), fp(r.v), fpp(r.v));
    // jets of f(r(t)) and f'(r(t)) to order 2 (enough: they multiply order-2 data)
    let fj = Jet3::new(
        f0,
        f1 * r.d1,
        f2 * r.d1 * r.d1 + f1 * r.d2,
        0.0, // unused order
    );
    let fpj = Jet3::new(f1, f2 * r.d1, 0.0, 0.0);

    let rd = Jet3::new(r.d1, r.d2, r.d3, 0.0);
    let wd = Jet3::new(w.d1, w.d2, w.d3, 0.0);
    let rdd = Jet3::new(r.d2, r.d3, 0.0, 0.0);
    let wdd = Jet3::new(w.d2, w.d3, 0.0, 0.0);

    // covariant acceleration components a_r, a_w (order 1 jets suffice)
    let a_r = rdd - fj * fpj * wd * wd;
    let a_w = wdd + (fpj / fj * rd * wd).scale(2.0);
    // g = rd*a_w - wd*a_r ; kappa = f * g / v^3
    let g = rd * a_w - wd * a_r;
    let v2 = rd * rd + fj * fj * wd * wd;
    let v = v2.sqrt();
    let kappa = fj * g / (v * v2);
    (kappa.v, kappa.d1 / v.v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jets_of_test_curve(t: f64) -> (Jet3, Jet3) {
        // r = 1 + 0.3 sin t, w = 0.5 + 0.2 t
        let r = Jet3::new(1.0 + 0.3 * t.sin(), 0.3 * t.cos(), -0.3 * t.sin(), -0.3 * t.cos());
        let w = Jet3::new(0.5 + 0.2 * t, 0.2, 0.0, 0.0);
        (r, w)
    }

    #[test]
    fn warped_curvature_matches_symbolic_reference() {
        // frozen from symbolic differentiation of the same curve at t = 0.7
        let (r, w) = jets_of_test_curve(0.7);
        let (k, dk) = warped_curvature(r, w, f64::sin, f64::cos, |x| -x.sin());
        assert!((k - 1.7954254909093135).abs() < 1e-12, "kappa {k}");
        assert!((dk - 12.2117317847434).abs() < 1e-10, "dkappa {dk}");
    }

    #[test]
    fn polar_conversion_roundtrip() {
        // x = 1 + 0.5 cos t, y = 0.75 + 0.4 sin t at t = 0.7 against symbolic values
        let t: f64 = 0.7;
        let x = Jet3::new(1.0 + 0.5 * t.cos(), -0.5 * t.sin(), -0.5 * t.cos(), 0.5 * t.sin());
        let y = Jet3::new(0.75 + 0.4 * t.sin(), 0.4 * t.cos(), -0.4 * t.sin(), -0.4 * t.cos());
        let (d, b) = polar_from_cartesian(x, y);
        assert!((d.v - (x.v * x.v + y.v * y.v).sqrt()).abs() < 1e-15);
        assert!((b.v - y.v.atan2(x.v)).abs() < 1e-15);
        // derivative cross-check: finite differences of the exact conversion
        let eps = 1e-4;
        let pol = |tt: f64| {
            let xx = 1.0 + 0.5 * tt.cos();
            let yy = 0.75 + 0.4 * tt.sin();
            ((xx * xx + yy * yy).sqrt(), yy.atan2(xx))
        };
        let (dp, bp) = pol(t + eps);
        let (dm, bm) = pol(t - eps);
        assert!((d.d1 - (dp - dm) / (2.0 * eps)).abs() < 1e-7);
        assert!((b.d1 - (bp - bm) / (2.0 * eps)).abs() < 1e-7);
        let (d0, b0) = pol(t);
        assert!((d.d2 - (dp - 2.0 * d0 + dm) / (eps * eps)).abs() < 1e-6);
        assert!((b.d2 - (bp - 2.0 * b0 + bm) / (eps * eps)).abs() < 1e-6);
        // third derivative against a wider 5-point stencil
        let (dp2, bp2) = pol(t + 2.0 * eps);
        let (dm2, bm2) = pol(t - 2.0 * eps);
        let d3 = (dp2 - 2.0 * dp + 2.0 * dm - dm2) / (2.0 * eps * eps * eps);
        let b3 = (bp2 - 2.0 * bp + 2.0 * bm - bm2) / (2.0 * eps * eps * eps);
        assert!((d.d3 - d3).abs() < 1e-3);
        assert!((b.d3 - b3).abs() < 1e-3);
    }

    #[test]
    fn flat_polar_curvature_matches_cartesian() {
        // circle of radius 2 centered at origin, traversed at unit speed:
        // geodesic curvature 1/2 in the plane, constant
        let t: f64 = 0.3;
        let x = Jet3::new(
            2.0 * (t / 2.0).cos(),
            -(t / 2.0).sin(),
            -0.5 * (t / 2.0).cos(),
            0.25 * (t / 2.0).sin(),
        );
        let y = Jet3::new(
            2.0 * (t / 2.0).sin(),
            (t / 2.0).cos(),
            -0.5 * (t / 2.0).sin(),
            -0.25 * (t / 2.0).cos(),
        );
        let (d, b) = polar_from_cartesian(x, y);
        let (k, dk) = warped_curvature(d, b, |r| r, |_| 1.0, |_| 0.0);
        assert!((k - 0.5).abs() < 1e-12, "kappa {k}");
        assert!(dk.abs() < 1e-10, "dkappa {dk}");
    }
}
