//! Symmetric tridiagonal kernels: LDLᵀ inertia counts and linear solves.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Symmetric tridiagonal matrix given by its diagonal and subdiagonal.
#[derive(Debug, Clone)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Outcome of an inertia computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub negatives: usize,
    /// Whether a near-singular pivot forced the relative diagonal jitter.
    pub jittered: bool,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        debug_assert!(off.len() + 1 == diag.len() || diag.is_empty());
        SymTridiag { diag, off }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Number of negative eigenvalues, from the signs of the LDLᵀ pivots.
    ///
    /// A pivot within 1e-14 (relative to the largest diagonal entry) of zero
    /// triggers one retry with that relative jitter added to the diagonal,
    /// reported through [`Inertia::jittered`].
    pub fn inertia(&self) -> Inertia {
        let scale = self.diag.iter().fold(0.0f64, |m, d| m.max(d.abs())).max(1e-300);
        match self.count_pivots(0.0, scale) {
            Some(negatives) => Inertia { negatives, jittered: false },
            None => {
                let jitter = 1e-14 * scale;
                let negatives = self
                    .count_pivots(jitter, scale)
                    .unwrap_or_else(|| self.count_pivots(2.0 * jitter, scale).unwrap_or(0));
                Inertia { negatives, jittered: true }
            }
        }
    }

    fn count_pivots(&self, jitter: f64, scale: f64) -> Option<usize> {
        let guard = 1e-14 * scale;
        let mut count = 0;
        let mut q = 0.0;
        for i in 0..self.diag.len() {
            let mut d = self.diag[i] + jitter;
            if i > 0 {
                if q.abs() < guard {
                    return None;
                }
                d -= self.off[i - 1] * self.off[i - 1] / q;
            }
            if d < 0.0 {
                count += 1;
            }
            q = d;
        }
        Some(count)
    }

    /// Inertia of A − t·diag(mass): the count of generalized eigenvalues of
    /// (A, diag(mass)) strictly below t, for positive mass.
    pub fn shifted_inertia(&self, mass: &[f64], t: f64) -> Inertia {
        let shifted = SymTridiag::new(
            self.diag.iter().zip(mass).map(|(d, m)| d - t * m).collect(),
            self.off.clone(),
        );
        shifted.inertia()
    }

    /// Solve A x = rhs by the Thomas algorithm with the same pivot guard.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(rhs.len(), n);
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut piv = self.diag[0];
        c[0] = if n > 1 { self.off[0] / piv } else { 0.0 };
        d[0] = rhs[0] / piv;
        for i in 1..n {
            piv = self.diag[i] - self.off[i - 1] * c[i - 1];
            if i + 1 < n {
                c[i] = self.off[i] / piv;
            }
            d[i] = (rhs[i] - self.off[i - 1] * d[i - 1]) / piv;
        }
        let mut x = d;
        for i in (0..n - 1).rev() {
            let xi = x[i] - c[i] * x[i + 1];
            x[i] = xi;
        }
        x
    }

    /// Matrix-vector product A x.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y = vec![0.0; n];
        for i in 0..n {
            y[i] = self.diag[i] * x[i];
            if i > 0 {
                y[i] += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                y[i] += self.off[i] * x[i + 1];
            }
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inertia_of_small_matrix() {
        // [[1,-1],[-1,3]] has eigenvalues 2±√2 > 0
        let a = SymTridiag::new(vec![1.0, 3.0], vec![-1.0]);
        assert_eq!(a.inertia().negatives, 0);
        // shift past each eigenvalue
        let m = [1.0, 1.0];
        assert_eq!(a.shifted_inertia(&m, 0.59).negatives, 1);
        assert_eq!(a.shifted_inertia(&m, 3.5).negatives, 2);
    }

    #[test]
    fn solve_roundtrip() {
        let n = 64;
        let diag: Vec<f64> = (0..n).map(|i| 3.0 + (i as f64 * 0.37).sin()).collect();
        let off: Vec<f64> = (0..n - 1).map(|i| -1.0 + 0.1 * (i as f64 * 0.7).cos()).collect();
        let a = SymTridiag::new(diag, off);
        let x0: Vec<f64> = (0..n).map(|i| (i as f64 * 0.21).cos()).collect();
        let b = a.apply(&x0);
        let x = a.solve(&b);
        for (u, v) in x.iter().zip(&x0) {
            assert!((u - v).abs() < 1e-11);
        }
    }

    #[test]
    fn inertia_matches_dense_eigencounts() {
        // seeded pseudo-random problems vs nalgebra's dense symmetric solver
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for trial in 0..20 {
            let n = 8 + (trial % 7) * 7;
            let diag: Vec<f64> = (0..n).map(|_| 4.0 * next() - 2.0).collect();
            let off: Vec<f64> = (0..n - 1).map(|_| 2.0 * next() - 1.0).collect();
            let a = SymTridiag::new(diag.clone(), off.clone());
            let mut dense = nalgebra::DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                dense[(i, i)] = diag[i];
                if i + 1 < n {
                    dense[(i, i + 1)] = off[i];
                    dense[(i + 1, i)] = off[i];
                }
            }
            let eig = dense.symmetric_eigenvalues();
            let expected = eig.iter().filter(|&&l| l < 0.0).count();
            assert_eq!(a.inertia().negatives, expected, "trial {trial}");
        }
    }
}
