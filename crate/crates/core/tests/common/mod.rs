//! Shared oracles for the integration suites. Everything here recomputes
//! quantities through routes the library does not use: cofactor expansion
//! instead of cached determinants, Gauss-Jordan elimination instead of the
//! cached inverse, a general complex eigensolver instead of closed-form
//! invariants, and brute-force quadrature instead of normalization algebra.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)] // oracles stay in plain index form on purpose

use gaussian_bell::{bell_function, BellEvaluationPoint, CovarianceMatrix, PhasePoint, StandardForm};
use nalgebra::{Matrix4, Vector4};

/// 3x3 determinant by direct expansion.
fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// 4x4 determinant by cofactor expansion along the first row.
pub fn det4_cofactor(m: &Matrix4<f64>) -> f64 {
    let minor = |col: usize| {
        let mut sub = [[0.0; 3]; 3];
        for (i, row) in (1..4).enumerate() {
            let mut k = 0;
            for c in 0..4 {
                if c == col {
                    continue;
                }
                sub[i][k] = m[(row, c)];
                k += 1;
            }
        }
        det3(sub)
    };
    m[(0, 0)] * minor(0) - m[(0, 1)] * minor(1) + m[(0, 2)] * minor(2) - m[(0, 3)] * minor(3)
}

/// 4x4 inverse by Gauss-Jordan elimination with partial pivoting.
pub fn gauss_jordan_inverse(m: &Matrix4<f64>) -> Matrix4<f64> {
    let mut a = [[0.0f64; 8]; 4];
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = m[(i, j)];
        }
        a[i][4 + i] = 1.0;
    }
    for col in 0..4 {
        let pivot_row = (col..4)
            .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
            .unwrap();
        assert!(a[pivot_row][col].abs() > 1e-300, "singular matrix in oracle inversion");
        a.swap(col, pivot_row);
        let pivot = a[col][col];
        for j in 0..8 {
            a[col][j] /= pivot;
        }
        for row in 0..4 {
            if row == col {
                continue;
            }
            let factor = a[row][col];
            for j in 0..8 {
                a[row][j] -= factor * a[col][j];
            }
        }
    }
    Matrix4::from_fn(|i, j| a[i][4 + j])
}

/// Wigner function evaluated through the oracle inverse and determinant,
/// sharing no code with the library implementation.
pub fn oracle_wigner(v: &Matrix4<f64>, u: PhasePoint) -> f64 {
    let inv = gauss_jordan_inverse(v);
    let z = Vector4::new(u.q_i, u.p_i, u.q_s, u.p_s);
    let quad = z.dot(&(inv * z));
    (-0.5 * quad).exp() / (4.0 * std::f64::consts::PI.powi(2) * det4_cofactor(v).sqrt())
}

/// Smallest symplectic eigenvalue of the partial transpose, via a general
/// complex eigensolver: partially transpose V (flip the signal momentum),
/// form i Omega V~ in real arithmetic as Omega V~, and take the minimum
/// |imaginary part| over its eigenvalues.
pub fn nu_tilde_oracle(sf: &StandardForm) -> f64 {
    let mut vt = sf.to_matrix();
    for k in 0..4 {
        vt[(3, k)] = -vt[(3, k)];
        vt[(k, 3)] = -vt[(k, 3)];
    }
    let prod = gaussian_bell::symplectic_form() * vt;
    prod.complex_eigenvalues()
        .iter()
        .map(|lambda| lambda.im.abs())
        .fold(f64::INFINITY, f64::min)
}

/// Two-mode squeezed vacuum covariance matrix assembled from scratch.
pub fn tmsv_matrix(r: f64) -> Matrix4<f64> {
    let n = 0.5 * (2.0 * r).cosh();
    let c = 0.5 * (2.0 * r).sinh();
    Matrix4::new(
        n, 0.0, c, 0.0, //
        0.0, n, 0.0, -c, //
        c, 0.0, n, 0.0, //
        0.0, -c, 0.0, n,
    )
}

/// Midpoint-rule integral of the Wigner function over [-l, l]^4, which must
/// come out close to 1 for any physical state when l covers the support.
pub fn wigner_quadrature(v: &CovarianceMatrix, l: f64, points_per_axis: usize) -> f64 {
    let h = 2.0 * l / points_per_axis as f64;
    let coord = |idx: usize| -l + (idx as f64 + 0.5) * h;
    let mut total = 0.0;
    for i in 0..points_per_axis {
        for j in 0..points_per_axis {
            for k in 0..points_per_axis {
                for q in 0..points_per_axis {
                    total += v.wigner(PhasePoint::new(coord(i), coord(j), coord(k), coord(q)));
                }
            }
        }
    }
    total * h.powi(4)
}

/// Bell value at amplitudes (alpha_i, alpha_s) maximized over the sixteen
/// axis-angle combinations; realizes the intermediate maximum because the
/// single-mode terms are angle-free and the joint term is extremized on the
/// axes.
pub fn axis_theta_bell_max(
    v: &CovarianceMatrix,
    sf: &StandardForm,
    alpha_i: f64,
    alpha_s: f64,
) -> f64 {
    let axes = [0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI, 1.5 * std::f64::consts::PI];
    let mut best = f64::NEG_INFINITY;
    for t_i in axes {
        for t_s in axes {
            let p = BellEvaluationPoint { alpha_i, alpha_s, theta_i: t_i, theta_s: t_s };
            best = best.max(bell_function(v, gaussian_bell::scaled_point_to_phase(sf, &p)));
        }
    }
    best
}

/// The single-variable objective behind the closed-form Bell maximum, as a
/// function of the substitution variable a = exp(alpha_i^2 / 2):
/// 1 + 2 a^{-m} - a^{-(2m + 2 c~ sqrt(m/n))}. bmax = M(a*) / (4 sqrt(det V)).
pub fn m_function(sf: &StandardForm, a: f64) -> f64 {
    let e = sf.c_tilde() * (sf.m() / sf.n()).sqrt();
    1.0 + 2.0 * a.powf(-sf.m()) - a.powf(-(2.0 * sf.m() + 2.0 * e))
}

pub fn m_prime(sf: &StandardForm, a: f64) -> f64 {
    let e = sf.c_tilde() * (sf.m() / sf.n()).sqrt();
    let k = 2.0 * sf.m() + 2.0 * e;
    -2.0 * sf.m() * a.powf(-sf.m() - 1.0) + k * a.powf(-k - 1.0)
}

pub fn m_second(sf: &StandardForm, a: f64) -> f64 {
    let e = sf.c_tilde() * (sf.m() / sf.n()).sqrt();
    let k = 2.0 * sf.m() + 2.0 * e;
    2.0 * sf.m() * (sf.m() + 1.0) * a.powf(-sf.m() - 2.0) - k * (k + 1.0) * a.powf(-k - 2.0)
}

/// Asserts that a 4x4 matrix is within `tol` of a signed permutation matrix
/// (every row and column holding exactly one entry of magnitude 1).
pub fn assert_signed_permutation(s: &Matrix4<f64>, tol: f64) {
    for i in 0..4 {
        let row_big: Vec<usize> = (0..4).filter(|&j| s[(i, j)].abs() > tol).collect();
        assert_eq!(row_big.len(), 1, "row {i} of {s} is not a signed permutation row");
        assert!(
            (s[(i, row_big[0])].abs() - 1.0).abs() <= tol,
            "entry ({i},{}) has magnitude {}",
            row_big[0],
            s[(i, row_big[0])].abs()
        );
    }
    for j in 0..4 {
        let col_big: Vec<usize> = (0..4).filter(|&i| s[(i, j)].abs() > tol).collect();
        assert_eq!(col_big.len(), 1, "column {j} of {s} is not a signed permutation column");
    }
}
