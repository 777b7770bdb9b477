//! Two-mode covariance matrices and Wigner-function evaluation.
//!
//! Conventions used throughout the crate: hbar = 1, vacuum quadrature
//! variance 1/2, quadratures ordered (Q_I, P_I, Q_S, P_S) with I the idler
//! mode and S the signal mode.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4, SMatrix, Vector4};

use crate::error::{Error, Result};

/// Maximum tolerated asymmetry |V - V^T| before a matrix is rejected.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Floor on eigenvalues of V + (i/2)Omega. Slightly negative so that pure
/// states sitting exactly on the physicality boundary survive round-off.
pub const PHYSICALITY_TOL: f64 = -1e-10;

/// The symplectic form for two modes in (Q_I, P_I, Q_S, P_S) ordering:
/// block-diagonal with [[0, 1], [-1, 0]] per mode.
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

/// A point u = (q_I, p_I, q_S, p_S) in two-mode phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub q_i: f64,
    pub p_i: f64,
    pub q_s: f64,
    pub p_s: f64,
}

impl PhasePoint {
    pub fn new(q_i: f64, p_i: f64, q_s: f64, p_s: f64) -> Self {
        Self { q_i, p_i, q_s, p_s }
    }

    pub fn origin() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Same point with the signal coordinates zeroed.
    pub fn idler_only(self) -> Self {
        Self::new(self.q_i, self.p_i, 0.0, 0.0)
    }

    /// Same point with the idler coordinates zeroed.
    pub fn signal_only(self) -> Self {
        Self::new(0.0, 0.0, self.q_s, self.p_s)
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.q_i, self.p_i, self.q_s, self.p_s)
    }

    pub fn is_finite(&self) -> bool {
        self.q_i.is_finite() && self.p_i.is_finite() && self.q_s.is_finite() && self.p_s.is_finite()
    }
}

/// The four determinant invariants of a two-mode covariance matrix under
/// local symplectic transformations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalInvariants {
    /// det of the idler 2x2 block.
    pub det_idler: f64,
    /// det of the signal 2x2 block.
    pub det_signal: f64,
    /// det of the idler-signal cross block.
    pub det_cross: f64,
    /// det of the full 4x4 matrix.
    pub det_total: f64,
}

/// A validated two-mode covariance matrix.
///
/// Construction enforces symmetry and the uncertainty principle
/// V + (i/2)Omega >= 0, and caches the determinant and inverse so Wigner
/// evaluation in hot loops stays cheap.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    v: Matrix4<f64>,
    inv: Matrix4<f64>,
    det: f64,
    wigner_norm: f64,
}

impl CovarianceMatrix {
    /// Validates and wraps a raw matrix.
    ///
    /// Asymmetry up to [`SYMMETRY_TOL`] is averaged away; anything larger is
    /// an error. Physicality is decided by the smallest eigenvalue of
    /// V + (i/2)Omega, computed through the real 8x8 embedding
    /// [[V, -Omega/2], [Omega/2, V]] to avoid complex arithmetic.
    pub fn new(raw: Matrix4<f64>) -> Result<Self> {
        if !raw.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        let asymmetry = (raw - raw.transpose()).abs().max();
        if asymmetry > SYMMETRY_TOL {
            return Err(Error::NotSymmetric { asymmetry });
        }
        let v = (raw + raw.transpose()) * 0.5;

        let min_eigenvalue = uncertainty_min_eigenvalue(&v);
        if min_eigenvalue < PHYSICALITY_TOL {
            return Err(Error::Unphysical { min_eigenvalue });
        }

        let det = v.determinant();
        if det <= 1e-300 {
            return Err(Error::SingularCovariance { det });
        }
        let inv = v
            .try_inverse()
            .ok_or(Error::SingularCovariance { det })?;
        let wigner_norm = 1.0 / (4.0 * PI * PI * det.sqrt());
        Ok(Self { v, inv, det, wigner_norm })
    }

    /// Covariance matrix of the two-mode vacuum, (1/2) * identity.
    pub fn vacuum() -> Self {
        Self::new(Matrix4::identity() * 0.5).expect("vacuum is physical")
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.v
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn inverse(&self) -> &Matrix4<f64> {
        &self.inv
    }

    /// Smallest eigenvalue of V + (i/2)Omega; >= 0 (up to round-off) exactly
    /// when the state is physical, with 0 attained by pure states.
    pub fn uncertainty_min_eigenvalue(&self) -> f64 {
        uncertainty_min_eigenvalue(&self.v)
    }

    /// State purity, 1 / (4 sqrt(det V)); equals 1 for pure states.
    pub fn purity(&self) -> f64 {
        1.0 / (4.0 * self.det.sqrt())
    }

    /// Wigner function W(u) = exp(-u^T V^{-1} u / 2) / (4 pi^2 sqrt(det V)).
    pub fn wigner(&self, u: PhasePoint) -> f64 {
        let z = u.to_vector();
        let quad = z.dot(&(self.inv * z));
        (-0.5 * quad).exp() * self.wigner_norm
    }

    /// The 2x2 blocks (idler, signal, cross) of V, where cross is the
    /// upper-right block coupling idler rows to signal columns.
    pub fn blocks(&self) -> (Matrix2<f64>, Matrix2<f64>, Matrix2<f64>) {
        let vi = self.v.fixed_view::<2, 2>(0, 0).into_owned();
        let vs = self.v.fixed_view::<2, 2>(2, 2).into_owned();
        let vc = self.v.fixed_view::<2, 2>(0, 2).into_owned();
        (vi, vs, vc)
    }

    /// The four local-symplectic invariants of the state.
    pub fn local_invariants(&self) -> LocalInvariants {
        let (vi, vs, vc) = self.blocks();
        LocalInvariants {
            det_idler: vi.determinant(),
            det_signal: vs.determinant(),
            det_cross: vc.determinant(),
            det_total: self.det,
        }
    }
}

/// Min eigenvalue of V + (i/2)Omega via the real symmetric 8x8 embedding
/// [[V, -Omega/2], [Omega/2, V]], whose spectrum is that of the Hermitian
/// matrix with each eigenvalue doubled.
fn uncertainty_min_eigenvalue(v: &Matrix4<f64>) -> f64 {
    let omega = symplectic_form();
    let mut m = SMatrix::<f64, 8, 8>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = v[(i, j)];
            m[(i + 4, j + 4)] = v[(i, j)];
            m[(i, j + 4)] = -0.5 * omega[(i, j)];
            m[(i + 4, j)] = 0.5 * omega[(i, j)];
        }
    }
    m.symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}
