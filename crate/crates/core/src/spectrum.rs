//! Morse index by separation into torus modes.
//!
//! On an equivariant hypersurface with profile arclength s and orbit angles
//! (φ, ψ), the Jacobi operator separates: the (p, q) Fourier mode feels the
//! one-dimensional operator (1/w)(w f′)′ + V_{p,q} f with
//! V_{p,q} = |A|² + Ric(ν,ν) − p²/a1² − q²/a2².  Negative-eigenvalue counts
//! come from the inertia of the discretized quadratic form
//! Q(f) = ∫ (f′² − V f²) w ds against the mass ∫ f² w ds, and the index is
//! the multiplicity-weighted sum over modes up to a certified cutoff.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::{self, end_kinds, EndKind, GeometricSample, GeometryError, RIC_NU_NU};
use crate::profile::ProfileCurve;
use crate::tridiag::SymTridiag;

/// Endpoint condition of a separated mode problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    /// Natural (no-flux) condition; the regular closure for a zero mode at an
    /// orbit-degenerate endpoint.
    Neumann,
    /// Forced vanishing; regularity for nonzero modes, f ~ a_j^{mode}.
    Dirichlet,
}

/// A one-dimensional Sturm–Liouville problem for a torus mode.
#[derive(Debug, Clone)]
pub struct ModeProblem {
    pub p: u32,
    pub q: u32,
    /// Arclength nodes (uniform spacing).
    pub grid: Vec<f64>,
    pub weight: Vec<f64>,
    pub potential: Vec<f64>,
    pub bc_left: BoundaryCondition,
    pub bc_right: BoundaryCondition,
}

/// Counts for one mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeCount {
    /// Eigenvalues below −null_tol.
    pub negatives: usize,
    /// Eigenvalues within ±null_tol of zero.
    pub near_null: usize,
    /// A singular pivot forced the diagonal jitter retry.
    pub jittered: bool,
}

/// Per-mode row of a spectral report.
#[derive(Debug, Clone, Copy)]
pub struct ModeEntry {
    pub p: u32,
    pub q: u32,
    pub mult: u32,
    pub negatives: usize,
    pub near_null: usize,
}

/// Assembled Morse index of a profile.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// Modes beyond this bound are certified to contribute nothing.
    pub pmax: u32,
    pub modes: Vec<ModeEntry>,
    pub total_index: u64,
    pub nullity_estimate: u64,
}

/// Real-mode multiplicity of a single angular factor: 1 for the constant
/// mode, 2 (cos and sin) otherwise.
pub fn angular_multiplicity(k: u32) -> u32 {
    if k == 0 {
        1
    } else {
        2
    }
}

fn bc_for(end: EndKind, p: u32, q: u32) -> BoundaryCondition {
    let forced = match end {
        EndKind::EdgeA1 => p != 0,
        EndKind::EdgeA2 => q != 0,
        EndKind::Pole => p != 0 || q != 0,
        EndKind::Interior => true,
    };
    if forced {
        BoundaryCondition::Dirichlet
    } else {
        BoundaryCondition::Neumann
    }
}

/// Build the separated problem for mode (p, q) from trimmed geometry samples.
///
/// Boundary conditions follow regularity on the smooth total space: where an
/// orbit radius vanishes at an end, the mode vanishing on that circle is
/// Dirichlet, the zero mode Neumann.
pub fn mode_potential(
    samples: &[GeometricSample],
    ends: (EndKind, EndKind),
    p: u32,
    q: u32,
) -> ModeProblem {
    let fp = f64::from(p);
    let fq = f64::from(q);
    let mut grid = Vec::with_capacity(samples.len());
    let mut weight = Vec::with_capacity(samples.len());
    let mut potential = Vec::with_capacity(samples.len());
    for g in samples {
        grid.push(g.s);
        weight.push(g.w);
        potential.push(
            g.a_sq + RIC_NU_NU - fp * fp / (g.a1 * g.a1) - fq * fq / (g.a2 * g.a2),
        );
    }
    ModeProblem {
        p,
        q,
        grid,
        weight,
        potential,
        bc_left: bc_for(ends.0, p, q),
        bc_right: bc_for(ends.1, p, q),
    }
}

/// Discretize Q(f) = ∫ (f′² − V f²) w ds to a symmetric tridiagonal stiffness
/// matrix with a lumped positive mass diagonal.
pub fn assemble(problem: &ModeProblem) -> (SymTridiag, Vec<f64>) {
    let n = problem.grid.len();
    let h = (problem.grid[n - 1] - problem.grid[0]) / (n as f64 - 1.0);
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n - 1];
    let mut mass = vec![0.0; n];
    for k in 0..n - 1 {
        let wm = 0.5 * (problem.weight[k] + problem.weight[k + 1]);
        diag[k] += wm / h;
        diag[k + 1] += wm / h;
        off[k] = -wm / h;
        mass[k] += 0.5 * h * problem.weight[k];
        mass[k + 1] += 0.5 * h * problem.weight[k + 1];
    }
    for k in 0..n {
        diag[k] -= problem.potential[k] * mass[k];
    }
    let lo = usize::from(problem.bc_left == BoundaryCondition::Dirichlet);
    let hi = n - usize::from(problem.bc_right == BoundaryCondition::Dirichlet);
    (
        SymTridiag::new(diag[lo..hi].to_vec(), off[lo..hi - 1].to_vec()),
        mass[lo..hi].to_vec(),
    )
}

/// Count generalized eigenvalues below −null_tol and within ±null_tol.
///
/// Discrete zero modes (isometries, regularity-limit modes) land within a
/// truncation-sized band of zero; counting them as near-null rather than by
/// raw pivot sign is what keeps the counts stable under grid refinement.
pub fn mode_negative_count(problem: &ModeProblem, null_tol: f64) -> ModeCount {
    let (a, mass) = assemble(problem);
    let lower = a.shifted_inertia(&mass, -null_tol);
    let upper = a.shifted_inertia(&mass, null_tol);
    ModeCount {
        negatives: lower.negatives,
        near_null: upper.negatives - lower.negatives,
        jittered: lower.jittered || upper.jittered,
    }
}

/// Per-axis mode cutoffs (P1, P2): if p > P1 then p²/a1² dominates
/// |A|² + Ric everywhere and mode (p, q) has no negative directions, and
/// symmetrically in q.
pub fn mode_cutoff_axes(samples: &[GeometricSample]) -> (u32, u32) {
    let mut sup1 = 0.0f64;
    let mut sup2 = 0.0f64;
    for g in samples {
        let v = g.a_sq + RIC_NU_NU;
        sup1 = sup1.max(v * g.a1 * g.a1);
        sup2 = sup2.max(v * g.a2 * g.a2);
    }
    let bound = |sup: f64| {
        let mut p = 0u32;
        while f64::from(p * p) <= sup {
            p += 1;
        }
        p
    };
    (bound(sup1), bound(sup2))
}

/// Smallest P such that every mode with max(p, q) > P is certified silent.
pub fn mode_cutoff(samples: &[GeometricSample]) -> u32 {
    let (p1, p2) = mode_cutoff_axes(samples);
    p1.max(p2)
}

/// Morse index of the hypersurface swept by the curve: multiplicity-weighted
/// negative counts over all modes up to the certified cutoff.
///
/// The curve must be a numerical solution of the reduced ODE (certify the
/// mean-curvature residual separately); mode counting is meaningful only for
/// critical points of the volume functional.
pub fn morse_index(curve: &ProfileCurve, null_tol: f64) -> Result<SpectralReport, GeometryError> {
    let samples = geometry::second_fundamental_form(curve)?;
    let ends = end_kinds(curve);
    let (p1, p2) = mode_cutoff_axes(&samples);
    let mut modes = Vec::new();
    let mut total = 0u64;
    let mut nullity = 0u64;
    for p in 0..=p1 {
        for q in 0..=p2 {
            let problem = mode_potential(&samples, ends, p, q);
            let count = mode_negative_count(&problem, null_tol);
            let mult = angular_multiplicity(p) * angular_multiplicity(q);
            if count.negatives > 0 || count.near_null > 0 {
                modes.push(ModeEntry {
                    p,
                    q,
                    mult,
                    negatives: count.negatives,
                    near_null: count.near_null,
                });
            }
            total += u64::from(mult) * count.negatives as u64;
            nullity += u64::from(mult) * count.near_null as u64;
        }
    }
    Ok(SpectralReport { pmax: p1.max(p2), modes, total_index: total, nullity_estimate: nullity })
}

/// Negative count of the (p, q) cone problem on [ε, π − ε] with Dirichlet
/// ends: weight sin²θ and potential 3 + (c − 2p² − 2q²)/sin²θ.  For the
/// supercritical zero mode the count grows without bound as ε → 0; these are
/// the regularizing directions of the singular operator.
pub fn football_truncated_count(eps: f64, p: u32, q: u32, c: f64) -> usize {
    let h_target = (eps / 50.0).min(1e-3);
    let n = ((PI - 2.0 * eps) / h_target) as usize + 1;
    let h = (PI - 2.0 * eps) / (n as f64 - 1.0);
    let coeff = c - 2.0 * f64::from(p * p) - 2.0 * f64::from(q * q);
    let mut grid = Vec::with_capacity(n);
    let mut weight = Vec::with_capacity(n);
    let mut potential = Vec::with_capacity(n);
    for k in 0..n {
        let th = eps + h * k as f64;
        let s2 = th.sin() * th.sin();
        grid.push(th);
        weight.push(2.0 * PI * PI * s2);
        potential.push(RIC_NU_NU + coeff / s2);
    }
    let problem = ModeProblem {
        p,
        q,
        grid,
        weight,
        potential,
        bc_left: BoundaryCondition::Dirichlet,
        bc_right: BoundaryCondition::Dirichlet,
    };
    mode_negative_count(&problem, 1e-12).negatives
}
