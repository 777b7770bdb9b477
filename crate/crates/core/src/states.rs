//! Constructors for reference states: two-mode squeezed vacuum and its
//! image under attenuation and thermal noise.

use nalgebra::Matrix4;

use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::standard_form::StandardForm;

/// Two-mode squeezed vacuum with squeezing parameter `r`:
/// n = m = cosh(2r)/2, c1 = -c2 = sinh(2r)/2.
pub fn tmsv(r: f64) -> StandardForm {
    assert!(r >= 0.0 && r.is_finite(), "squeezing parameter must be >= 0");
    let n = 0.5 * (2.0 * r).cosh();
    let c = 0.5 * (2.0 * r).sinh();
    StandardForm::new(n, n, c, -c).expect("squeezed vacuum is physical")
}

/// Sends a state through a symmetric attenuation channel with
/// transmissivity `eta` and thermal occupation `n_th` per mode:
/// V -> eta V + (1 - eta)(n_th + 1/2) I. At eta = 0 the state is replaced
/// by the environment; at eta = 1 the additive convention V -> V + n_th I
/// applies, so thermal noise still acts.
pub fn attenuate(v: &CovarianceMatrix, eta: f64, n_th: f64) -> Result<CovarianceMatrix> {
    if !(0.0..=1.0).contains(&eta) || !eta.is_finite() {
        return Err(Error::InvalidParameter {
            reason: format!("transmissivity eta = {eta} must be in [0, 1]"),
        });
    }
    if n_th < 0.0 || !n_th.is_finite() {
        return Err(Error::InvalidParameter {
            reason: format!("thermal occupation n_th = {n_th} must be >= 0"),
        });
    }
    let out = if eta < 1.0 {
        v.matrix() * eta + Matrix4::identity() * ((1.0 - eta) * (n_th + 0.5))
    } else {
        v.matrix() + Matrix4::identity() * n_th
    };
    CovarianceMatrix::new(out)
}

/// Two-mode squeezed vacuum after the [`attenuate`] channel.
pub fn noisy_tmsv(r: f64, eta: f64, n_th: f64) -> Result<CovarianceMatrix> {
    attenuate(&tmsv(r).to_covariance().expect("squeezed vacuum is physical"), eta, n_th)
}
