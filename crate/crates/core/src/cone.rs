//! Indicial bookkeeping for the cone-type operators at the two singular
//! points: roots of the indicial polynomial per torus mode, the weight strip
//! and its crossing sum, Fredholm indices, the coercivity threshold b★, and
//! discrete weighted sup-norms.
//!
//! The radial part of Δ + (c + …)/ρ² on the cone over the Clifford torus acts
//! on ρ^t·(mode) through P(t) = t² + t + c − 2(p² + q²); c = 2 is the Jacobi
//! operator of the singular hypersurface, c = −2b² the conformally shifted
//! one.  A weight β is Fredholm when no root's real part equals it, and the
//! index jump between dual weights is the multiplicity-weighted root count in
//! the closed strip [−β−1, β].

use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

/// Parameters of a cone operator: the 1/ρ² coefficient c (c = 2 + B) and the
/// weight β; `b` is the shift with c = −2b² when the operator is coercive.
#[derive(Debug, Clone, Copy)]
pub struct ConeOperatorParams {
    pub c: f64,
    pub beta: f64,
}

impl ConeOperatorParams {
    /// The Jacobi operator of the singular hypersurface (B = 0).
    pub fn jacobi(beta: f64) -> Self {
        ConeOperatorParams { c: 2.0, beta }
    }

    /// The conformally shifted operator with c = −2b².
    pub fn shifted(b: f64, beta: f64) -> Self {
        ConeOperatorParams { c: -2.0 * b * b, beta }
    }
}

/// A root of the indicial polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicialRoot {
    pub re: f64,
    pub im: f64,
}

/// Mode entry of an indicial report.
#[derive(Debug, Clone, Copy)]
pub struct IndicialEntry {
    pub p: u32,
    pub q: u32,
    pub roots: (IndicialRoot, IndicialRoot),
    /// Real torus-harmonic multiplicity m(p)·m(q).
    pub mult: u32,
}

/// Indicial data of a cone operator at a Fredholm weight.
#[derive(Debug, Clone)]
pub struct IndicialReport {
    pub c: f64,
    pub beta: f64,
    /// The closed strip [−β−1, β].
    pub strip: (f64, f64),
    /// Modes with at least one root in the strip.
    pub entries: Vec<IndicialEntry>,
    /// Multiplicity-weighted root count in the strip, both cone points.
    pub crossing_sum: u64,
    pub fredholm_index: i64,
    /// Empty strip: the shifted operator is an isomorphism between the dual
    /// weighted spaces.
    pub isomorphism: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConeError {
    /// β coincides with an indicial real part; the operator is not Fredholm
    /// at that weight.
    NonFredholmWeight { beta: f64, nearest: f64 },
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::NonFredholmWeight { beta, nearest } => write!(
                f,
                "weight {beta} is an indicial real part (root at {nearest}); not Fredholm"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConeError {}

/// Roots of t² + t + c − 2(p² + q²), returned (t₊, t₋) by real part.
pub fn indicial_roots(p: u32, q: u32, c: f64) -> (IndicialRoot, IndicialRoot) {
    let k = c - 2.0 * f64::from(p * p + q * q);
    let disc = 1.0 - 4.0 * k;
    if disc >= 0.0 {
        let s = disc.sqrt();
        (
            IndicialRoot { re: (-1.0 + s) / 2.0, im: 0.0 },
            IndicialRoot { re: (-1.0 - s) / 2.0, im: 0.0 },
        )
    } else {
        let s = (-disc).sqrt() / 2.0;
        (IndicialRoot { re: -0.5, im: s }, IndicialRoot { re: -0.5, im: -s })
    }
}

/// Value of the shift b at which the zero-mode root of c = −2b² enters the
/// strip top: the algebraic branch √(½(β+½)² − ⅛) of the threshold.
pub fn strip_entry_b(beta: f64) -> f64 {
    (0.5 * (beta + 0.5) * (beta + 0.5) - 0.125).sqrt()
}

/// Coercivity threshold b★(β) = max{√(3/2), √(½(β+½)² − ⅛)}.
///
/// Above the first branch the maximum principle applies; above the second the
/// zero-mode root (−1+√(1+8b²))/2 exceeds β, emptying the strip (the two
/// statements 8b² > 4β² + 4β and b² > ½(β+½)² − ⅛ are the same identity).
pub fn b_star(beta: f64) -> f64 {
    let algebraic = strip_entry_b(beta);
    let out = (1.5f64).sqrt().max(algebraic);
    // internal consistency of the strip-exit characterization
    let b = out + 1e-9;
    debug_assert!((-1.0 + (1.0 + 8.0 * b * b).sqrt()) / 2.0 > beta || algebraic < (1.5f64).sqrt());
    out
}

/// Multiplicity of the real torus mode k.
fn mult(k: u32) -> u32 {
    if k == 0 {
        1
    } else {
        2
    }
}

fn in_strip(re: f64, beta: f64) -> bool {
    re >= -beta - 1.0 && re <= beta
}

/// Enumerate all modes that can place a root inside the strip.
fn mode_bound(beta: f64, c: f64) -> u32 {
    // roots leave the strip once 2(p²+q²) − c > β² + β
    let k_max = (c + beta * beta + beta).max(0.0) / 2.0 + 1.0;
    k_max.sqrt() as u32 + 1
}

fn check_fredholm(beta: f64, c: f64) -> Result<(), ConeError> {
    let pm = mode_bound(beta + 1.0, c);
    for p in 0..=pm {
        for q in 0..=pm {
            let (t1, t2) = indicial_roots(p, q, c);
            for t in [t1, t2] {
                if (t.re - beta).abs() < 1e-9 {
                    return Err(ConeError::NonFredholmWeight { beta, nearest: t.re });
                }
            }
        }
    }
    Ok(())
}

/// Multiplicity-weighted count of indicial roots (by real part, conjugates
/// counted individually) in the closed strip [−β−1, β], summed over both
/// cone points.
pub fn weight_crossing_sum(beta: f64, c: f64) -> Result<u64, ConeError> {
    check_fredholm(beta, c)?;
    let pm = mode_bound(beta, c);
    let mut per_cone = 0u64;
    for p in 0..=pm {
        for q in 0..=pm {
            let m = u64::from(mult(p) * mult(q));
            let (t1, t2) = indicial_roots(p, q, c);
            for t in [t1, t2] {
                if in_strip(t.re, beta) {
                    per_cone += m;
                }
            }
        }
    }
    Ok(2 * per_cone)
}

/// Fredholm index of the cone operator on the weight-β spaces.
///
/// Formal self-adjointness pairs the weights β and −β−1, so the index equals
/// minus half the crossing sum; the sum is always even since roots pair up
/// under t ↦ −1−t.
pub fn fredholm_index(beta: f64, c: f64) -> Result<i64, ConeError> {
    let sum = weight_crossing_sum(beta, c)?;
    debug_assert!(sum % 2 == 0, "crossing sum {sum} odd");
    Ok(-((sum / 2) as i64))
}

/// Full indicial report at a Fredholm weight.
pub fn indicial_report(beta: f64, c: f64) -> Result<IndicialReport, ConeError> {
    let crossing_sum = weight_crossing_sum(beta, c)?;
    let pm = mode_bound(beta, c);
    let mut entries = Vec::new();
    for p in 0..=pm {
        for q in 0..=pm {
            let roots = indicial_roots(p, q, c);
            if in_strip(roots.0.re, beta) || in_strip(roots.1.re, beta) {
                entries.push(IndicialEntry { p, q, roots, mult: mult(p) * mult(q) });
            }
        }
    }
    Ok(IndicialReport {
        c,
        beta,
        strip: (-beta - 1.0, beta),
        entries,
        crossing_sum,
        fredholm_index: -((crossing_sum / 2) as i64),
        isomorphism: crossing_sum == 0,
    })
}

/// Discrete weighted sup-norm Σ_{j≤k} sup ρ^{−β+j} |u⁽ʲ⁾| on a uniform grid,
/// with iterated central-difference derivatives.  The Hölder seminorm of the
/// continuum norm has no stable finite-sample surrogate and is not tracked.
pub fn weighted_sup_norm(values: &[f64], rho: &[f64], h: f64, beta: f64, k: usize) -> f64 {
    assert!(k <= 4, "derivative order capped at 4");
    assert_eq!(values.len(), rho.len());
    let n = values.len();
    let mut total = 0.0;
    let mut deriv: Vec<f64> = values.to_vec();
    for j in 0..=k {
        let margin = j; // each central difference eats one sample per side
        let mut sup: f64 = 0.0;
        for i in margin..n - margin {
            let w = rho[i].powf(-beta + j as f64) * deriv[i].abs();
            if w > sup {
                sup = w;
            }
        }
        total += sup;
        if j < k {
            let mut next = deriv.clone();
            for i in 1..n - 1 {
                next[i] = (deriv[i + 1] - deriv[i - 1]) / (2.0 * h);
            }
            next[0] = next[1];
            next[n - 1] = next[n - 2];
            deriv = next;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_examples() {
        let (t1, t2) = indicial_roots(1, 0, 2.0);
        assert!((t1.re - 0.0).abs() < 1e-15 && t1.im == 0.0);
        assert!((t2.re + 1.0).abs() < 1e-15);

        // c = −8 is the shifted operator at b = 2: roots of t² + t − 8
        let (t1, t2) = indicial_roots(0, 0, -8.0);
        let s = 33f64.sqrt();
        assert!((t1.re - (-1.0 + s) / 2.0).abs() < 1e-14);
        assert!((t2.re - (-1.0 - s) / 2.0).abs() < 1e-14);

        let (t1, t2) = indicial_roots(0, 0, 2.0);
        assert!((t1.re + 0.5).abs() < 1e-15);
        assert!((t1.im - 7f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((t2.im + 7f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn roots_satisfy_polynomial_and_vieta() {
        for p in 0..6u32 {
            for q in 0..6u32 {
                for c in [-8.0, -3.0, 0.0, 2.0, 5.5] {
                    let k = c - 2.0 * f64::from(p * p + q * q);
                    let (t1, t2) = indicial_roots(p, q, c);
                    // |P(t)| for complex t via real/imaginary parts
                    for t in [t1, t2] {
                        let re = t.re * t.re - t.im * t.im + t.re + k;
                        let im = 2.0 * t.re * t.im + t.im;
                        assert!(re.hypot(im) < 1e-12);
                    }
                    assert!((t1.re + t2.re + 1.0).abs() < 1e-12);
                    let prod_re = t1.re * t2.re - t1.im * t2.im;
                    assert!((prod_re - k).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn threshold_values() {
        // β = 2.5: the algebraic branch √4.375 dominates
        assert!((b_star(2.5) - 4.375f64.sqrt()).abs() < 1e-14);
        // β = 1.1: √(3/2) dominates (algebraic branch only 1.0747…)
        assert!((b_star(1.1) - 1.5f64.sqrt()).abs() < 1e-14);
        assert!(strip_entry_b(1.1) < 1.5f64.sqrt());
        // exact identity 8b² > 4β² + 4β ⇔ b² > ½(β+½)² − ⅛
        for beta in [1.1, 1.7, 2.5, 3.3] {
            let b = strip_entry_b(beta);
            assert!((8.0 * b * b - (4.0 * beta * beta + 4.0 * beta)).abs() < 1e-10);
        }
    }

    #[test]
    fn crossing_sums_by_lattice_enumeration() {
        // independent exhaustive count over a generous lattice
        let oracle = |beta: f64, c: f64| {
            let mut total = 0u64;
            for p in 0..60u32 {
                for q in 0..60u32 {
                    let m = u64::from(mult(p) * mult(q));
                    let (t1, t2) = indicial_roots(p, q, c);
                    for t in [t1, t2] {
                        if t.re >= -beta - 1.0 && t.re <= beta {
                            total += m;
                        }
                    }
                }
            }
            2 * total
        };
        for (beta, c) in [(1.5, 2.0), (2.5, 2.0), (1.2, 2.0), (2.1, -2.0)] {
            assert_eq!(weight_crossing_sum(beta, c).unwrap(), oracle(beta, c), "({beta},{c})");
        }
        assert_eq!(weight_crossing_sum(1.5, 2.0).unwrap(), 36);
        // at β = 2.5 the strip [−3.5, 2.5] also captures the p²+q²∈{4,5}
        // shells: 36 + 16 (roots 2, −3) + 32 (roots (−1±√33)/2 ≈ 2.372, −3.372)
        assert_eq!(weight_crossing_sum(2.5, 2.0).unwrap(), 84);
        // coercive shift above threshold: empty strip
        let beta = 2.1;
        let b = 2.0 * b_star(beta);
        assert_eq!(weight_crossing_sum(beta, -2.0 * b * b).unwrap(), 0);
    }

    #[test]
    fn fredholm_anchors() {
        assert_eq!(fredholm_index(1.5, 2.0).unwrap(), -18);
        assert_eq!(fredholm_index(2.5, 2.0).unwrap(), -42);
        let beta = 2.1;
        let b = 2.0 * b_star(beta);
        assert_eq!(fredholm_index(beta, -2.0 * b * b).unwrap(), 0);
        let report = indicial_report(beta, -2.0 * b * b).unwrap();
        assert!(report.isomorphism);
        assert!(report.entries.is_empty());
    }

    #[test]
    fn index_constant_between_indicial_lines() {
        // for c = 2 the root real parts above 1 are {2, (−1+√33)/2 ≈ 2.372,
        // (−1+√57)/2 ≈ 3.275, …}; the index is constant on each gap
        for beta in [1.05, 1.4, 1.9] {
            assert_eq!(fredholm_index(beta, 2.0).unwrap(), -18, "beta {beta}");
        }
        for beta in [2.05, 2.2, 2.35] {
            assert_eq!(fredholm_index(beta, 2.0).unwrap(), -26, "beta {beta}");
        }
        for beta in [2.4, 2.8, 3.2] {
            assert_eq!(fredholm_index(beta, 2.0).unwrap(), -42, "beta {beta}");
        }
    }

    #[test]
    fn non_fredholm_weight_rejected() {
        // β = 1 is a root real part of mode (1,1) at c = 2 (roots 1 and −2)
        assert!(matches!(
            weight_crossing_sum(1.0, 2.0),
            Err(ConeError::NonFredholmWeight { .. })
        ));
    }

    #[test]
    fn threshold_sharpness_by_bisection() {
        // crossing_sum(−2b²) jumps from 0 to positive exactly at the algebraic
        // branch; bisection localizes the jump within 1e-9
        for beta in [1.1f64, 1.5, 2.5] {
            let expected = strip_entry_b(beta);
            let (mut lo, mut hi) = (0.05f64, 8.0f64);
            // lo: root inside the strip (sum > 0); hi: empty strip; right at
            // the jump the weight stops being Fredholm, which also ends the
            // bisection
            assert!(weight_crossing_sum(beta, -2.0 * lo * lo).unwrap() > 0);
            assert_eq!(weight_crossing_sum(beta, -2.0 * hi * hi).unwrap(), 0);
            let mut found = None;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                match weight_crossing_sum(beta, -2.0 * mid * mid) {
                    Ok(0) => hi = mid,
                    Ok(_) => lo = mid,
                    Err(ConeError::NonFredholmWeight { .. }) => {
                        found = Some(mid);
                        break;
                    }
                }
            }
            let found = found.unwrap_or(0.5 * (lo + hi));
            assert!((found - expected).abs() < 1e-9, "beta {beta}: {found} vs {expected}");
            // b★ itself is the max of the two branches
            assert!((b_star(beta) - expected.max(1.5f64.sqrt())).abs() < 1e-14);
        }
    }

    #[test]
    fn roots_pair_up_under_strip_reflection() {
        // the involution t ↦ −1−t maps the root set of each mode to itself,
        // so in-strip roots come in pairs and the crossing sum is even
        for c in [2.0, -2.0, -8.0] {
            for p in 0..51u32 {
                for q in 0..51u32 {
                    let (t1, t2) = indicial_roots(p, q, c);
                    assert!((t1.re + t2.re + 1.0).abs() < 1e-9);
                    for beta in [1.5, 2.5] {
                        assert_eq!(in_strip(t1.re, beta), in_strip(t2.re, beta));
                    }
                }
            }
        }
        for (beta, c) in [(1.5, 2.0), (2.5, 2.0), (1.2, -2.0)] {
            assert_eq!(weight_crossing_sum(beta, c).unwrap() % 2, 0);
        }
    }

    #[test]
    fn weighted_norm_monomials() {
        let n = 2001;
        let h = 1.0 / (n as f64 - 1.0);
        let rho: Vec<f64> = (0..n).map(|i| 0.05 + 0.95 * i as f64 * h).collect();
        let beta = 2.1;
        let u: Vec<f64> = rho.iter().map(|r| r.powf(beta)).collect();
        let norm0 = weighted_sup_norm(&u, &rho, 0.95 * h, beta, 0);
        assert!((norm0 - 1.0).abs() < 1e-12);
        let v: Vec<f64> = rho.iter().map(|r| r.powf(beta + 1.0)).collect();
        let norm0 = weighted_sup_norm(&v, &rho, 0.95 * h, beta, 0);
        assert!((norm0 - 1.0).abs() < 1e-12); // sup ρ over the grid is 1
        // k = 1 on ρ^β: 1 + sup ρ^{1−β}·βρ^{β−1} = 1 + β up to O(h²)
        let norm1 = weighted_sup_norm(&u, &rho, 0.95 * h, beta, 1);
        assert!((norm1 - (1.0 + beta)).abs() < 1e-3, "norm1 {norm1}");
    }
}
