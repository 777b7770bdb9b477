//! Reduction of two-mode covariance matrices to the standard form
//! (n, m, c1, c2) by local linear unitaries (rotations and squeezers).

use nalgebra::{Matrix2, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};

/// Slack below the vacuum variance 1/2 admitted for n and m.
pub const MODE_VARIANCE_TOL: f64 = 1e-10;

/// Slack above 1 admitted for the correlation ratio c~ / sqrt(nm).
pub const CORRELATION_TOL: f64 = 1e-12;

/// Tolerated deviation of a single-mode block determinant from 1.
pub const SYMPLECTIC_DET_TOL: f64 = 1e-12;

/// Counterclockwise rotation by `t`, the generic single-mode symplectic
/// orthogonal.
fn rot(t: f64) -> Matrix2<f64> {
    let (s, c) = t.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// diag(s, 1/s), the single-mode squeezer.
fn squeeze(s: f64) -> Matrix2<f64> {
    Matrix2::new(s, 0.0, 0.0, 1.0 / s)
}

/// Rotation angle and eigenvalues of a symmetric 2x2 matrix:
/// rot(angle) * a * rot(angle)^T = diag(hi, lo) with hi >= lo.
/// A degenerate or already-diagonal block gets angle 0.
fn diagonalizing_rotation(a: &Matrix2<f64>) -> (f64, f64, f64) {
    let (p, b, d) = (a[(0, 0)], a[(0, 1)], a[(1, 1)]);
    if b == 0.0 {
        return if p >= d { (0.0, p, d) } else { (std::f64::consts::FRAC_PI_2, d, p) };
    }
    let avg = 0.5 * (p + d);
    let r = (0.5 * (p - d)).hypot(b);
    let angle = -0.5 * (2.0 * b).atan2(p - d);
    (angle, avg + r, avg - r)
}

/// Signed singular value decomposition of a 2x2 matrix:
/// c = rot(left) * diag(s1, s2) * rot(right) with s1 >= |s2|.
fn signed_svd(c: &Matrix2<f64>) -> (f64, f64, f64, f64) {
    let e = 0.5 * (c[(0, 0)] + c[(1, 1)]);
    let f = 0.5 * (c[(0, 0)] - c[(1, 1)]);
    let g = 0.5 * (c[(1, 0)] + c[(0, 1)]);
    let h = 0.5 * (c[(1, 0)] - c[(0, 1)]);
    let q = e.hypot(h);
    let r = f.hypot(g);
    let a1 = g.atan2(f);
    let a2 = h.atan2(e);
    (0.5 * (a2 + a1), q + r, q - r, 0.5 * (a2 - a1))
}

/// Standard form (n, m, c1, c2) of a two-mode covariance matrix:
/// diagonal blocks n*I and m*I, cross block diag(c1, c2).
///
/// Every two-mode covariance matrix can be brought to this shape by local
/// rotations and squeezers; n, m and the pair {c1, c2} (up to the sign
/// convention of [`StandardForm::canonicalized`]) are uniquely fixed by the
/// four local invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StandardForm {
    n: f64,
    m: f64,
    c1: f64,
    c2: f64,
}

impl StandardForm {
    /// Validates the parameter ranges: n, m >= 1/2 and |ci| <= sqrt(nm), each
    /// up to floating-point slack. This admits every physical state and some
    /// unphysical ones; use [`StandardForm::to_covariance`] for the full
    /// uncertainty-principle check.
    pub fn new(n: f64, m: f64, c1: f64, c2: f64) -> Result<Self> {
        for (name, value) in [("n", n), ("m", m), ("c1", c1), ("c2", c2)] {
            if !value.is_finite() {
                return Err(Error::InvalidStandardForm {
                    reason: format!("{name} = {value} is not finite"),
                });
            }
        }
        if n < 0.5 - MODE_VARIANCE_TOL || m < 0.5 - MODE_VARIANCE_TOL {
            return Err(Error::InvalidStandardForm {
                reason: format!("mode variances n = {n}, m = {m} must be >= 1/2"),
            });
        }
        let bound = (n * m).sqrt() * (1.0 + CORRELATION_TOL);
        for (name, value) in [("c1", c1), ("c2", c2)] {
            if value.abs() > bound {
                return Err(Error::InvalidStandardForm {
                    reason: format!("|{name}| = {} exceeds sqrt(nm) = {}", value.abs(), (n * m).sqrt()),
                });
            }
        }
        Ok(Self { n, m, c1, c2 })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn nm(&self) -> f64 {
        self.n * self.m
    }

    /// The dominant correlation magnitude, max(|c1|, |c2|).
    pub fn c_tilde(&self) -> f64 {
        self.c1.abs().max(self.c2.abs())
    }

    /// Euclidean norm sqrt(c1^2 + c2^2) of the correlation pair.
    pub fn c_norm(&self) -> f64 {
        self.c1.hypot(self.c2)
    }

    /// Polar angle of (c1, c2).
    pub fn phi(&self) -> f64 {
        self.c2.atan2(self.c1)
    }

    /// Normalized dominant correlation x = c~ / sqrt(nm), in [0, 1] for
    /// physical states.
    pub fn x(&self) -> f64 {
        self.c_tilde() / self.nm().sqrt()
    }

    /// Normalized subdominant correlation min(|c1|, |c2|) / sqrt(nm).
    pub fn x_prime(&self) -> f64 {
        self.c1.abs().min(self.c2.abs()) / self.nm().sqrt()
    }

    /// det V = (nm - c1^2)(nm - c2^2).
    pub fn det(&self) -> f64 {
        (self.nm() - self.c1 * self.c1) * (self.nm() - self.c2 * self.c2)
    }

    /// State purity 1 / (4 sqrt(det V)).
    pub fn purity(&self) -> f64 {
        1.0 / (4.0 * self.det().sqrt())
    }

    /// The covariance matrix with these parameters.
    pub fn to_matrix(&self) -> Matrix4<f64> {
        Matrix4::new(
            self.n, 0.0, self.c1, 0.0, //
            0.0, self.n, 0.0, self.c2, //
            self.c1, 0.0, self.m, 0.0, //
            0.0, self.c2, 0.0, self.m,
        )
    }

    /// Validates physicality and returns the covariance matrix.
    pub fn to_covariance(&self) -> Result<CovarianceMatrix> {
        CovarianceMatrix::new(self.to_matrix())
    }

    /// Fixes the residual sign freedom: c1 >= |c2|. A simultaneous quarter
    /// rotation of both modes swaps c1 and c2; a half rotation of one mode
    /// flips both signs. Neither changes n, m or any invariant.
    pub fn canonicalized(&self) -> Self {
        let (mut c1, mut c2) = (self.c1, self.c2);
        if c1.abs() < c2.abs() {
            std::mem::swap(&mut c1, &mut c2);
        }
        if c1 < 0.0 {
            c1 = -c1;
            c2 = -c2;
        }
        Self { c1, c2, ..*self }
    }

    pub fn is_canonical(&self) -> bool {
        self.c1 >= self.c2.abs()
    }
}

/// A pair of single-mode symplectic matrices acting as S_I (+) S_S on the
/// idler and signal blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSymplectic {
    s_i: Matrix2<f64>,
    s_s: Matrix2<f64>,
}

impl LocalSymplectic {
    /// Checks det = 1 (the single-mode symplectic condition) for both blocks.
    pub fn new(s_i: Matrix2<f64>, s_s: Matrix2<f64>) -> Result<Self> {
        for block in [&s_i, &s_s] {
            if !block.iter().all(|x| x.is_finite()) {
                return Err(Error::NonFiniteEntry);
            }
            let det = block.determinant();
            if (det - 1.0).abs() > SYMPLECTIC_DET_TOL {
                return Err(Error::NotSymplectic { det });
            }
        }
        Ok(Self { s_i, s_s })
    }

    pub fn identity() -> Self {
        Self { s_i: Matrix2::identity(), s_s: Matrix2::identity() }
    }

    /// Euler-decomposed blocks rot(theta1) * diag(e^z, e^-z) * rot(theta2),
    /// given as (theta1, z, theta2) per mode.
    pub fn from_angles(idler: (f64, f64, f64), signal: (f64, f64, f64)) -> Self {
        let block = |(t1, z, t2): (f64, f64, f64)| rot(t1) * squeeze(z.exp()) * rot(t2);
        Self { s_i: block(idler), s_s: block(signal) }
    }

    pub fn idler(&self) -> &Matrix2<f64> {
        &self.s_i
    }

    pub fn signal(&self) -> &Matrix2<f64> {
        &self.s_s
    }

    /// The block-diagonal 4x4 matrix S_I (+) S_S.
    pub fn embed(&self) -> Matrix4<f64> {
        let mut s = Matrix4::zeros();
        s.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.s_i);
        s.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.s_s);
        s
    }
}

/// Draws a local symplectic with uniformly random rotation angles in
/// [0, 2pi) and squeeze exponents z in [-max_squeeze, max_squeeze], three
/// draws per mode in (theta1, z, theta2) order. Deterministic in the seed.
pub fn random_local_symplectic(seed: u64, max_squeeze: f64) -> LocalSymplectic {
    assert!(max_squeeze >= 0.0 && max_squeeze.is_finite(), "max_squeeze must be >= 0");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let t1 = rng.random_range(0.0..std::f64::consts::TAU);
        let z = if max_squeeze > 0.0 { rng.random_range(-max_squeeze..=max_squeeze) } else { 0.0 };
        let t2 = rng.random_range(0.0..std::f64::consts::TAU);
        (t1, z, t2)
    };
    let idler = draw(&mut rng);
    let signal = draw(&mut rng);
    LocalSymplectic::from_angles(idler, signal)
}

/// Congruence transform V -> S V S^T with S = S_I (+) S_S. Local symplectic
/// congruence preserves physicality, so the result validates again.
pub fn apply_local_symplectic(v: &CovarianceMatrix, t: &LocalSymplectic) -> CovarianceMatrix {
    let s = t.embed();
    let raw = s * v.matrix() * s.transpose();
    let symmetrized = (raw + raw.transpose()) * 0.5;
    CovarianceMatrix::new(symmetrized)
        .expect("local symplectic congruence preserves physicality")
}

/// Reduces a covariance matrix to standard form, returning the form and the
/// local symplectic S with S V S^T equal to the standard-form matrix.
///
/// Three stages per the classic construction: rotate each mode block to
/// diagonal, squeeze it to a multiple of the identity (the multiple is the
/// block-determinant square root), then rotate both modes to diagonalize the
/// cross block. The signed singular values come out ordered c1 >= |c2|, so
/// the result is already canonical.
pub fn reduce(v: &CovarianceMatrix) -> (StandardForm, LocalSymplectic) {
    let (vi, vs, _) = v.blocks();
    let (angle_i, hi_i, lo_i) = diagonalizing_rotation(&vi);
    let (angle_s, hi_s, lo_s) = diagonalizing_rotation(&vs);
    let n = (hi_i * lo_i).sqrt();
    let m = (hi_s * lo_s).sqrt();
    let first_i = squeeze((lo_i / hi_i).powf(0.25)) * rot(angle_i);
    let first_s = squeeze((lo_s / hi_s).powf(0.25)) * rot(angle_s);

    let cross = v.matrix().fixed_view::<2, 2>(0, 2).into_owned();
    let c_mid = first_i * cross * first_s.transpose();
    let (second_i, c1, c2, second_s) = if c_mid == Matrix2::zeros() {
        (Matrix2::identity(), 0.0, 0.0, Matrix2::identity())
    } else {
        let (left, s1, s2, right) = signed_svd(&c_mid);
        // c_mid = rot(left) diag(s1, s2) rot(right), so undoing the outer
        // rotations under congruence leaves diag(s1, s2) in the cross block.
        (rot(-left), s1, s2, rot(right))
    };

    let form = StandardForm::new(n, m, c1, c2)
        .expect("reduction of a physical state stays in range");
    debug_assert!(form.is_canonical());
    let t = LocalSymplectic { s_i: second_i * first_i, s_s: second_s * first_s };
    (form, t)
}
