//! Separability analysis: the Simon partial-transpose criterion, the
//! smallest symplectic eigenvalue under partial transposition, and the
//! logarithmic negativity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::standard_form::StandardForm;

/// Outcome of the Simon criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimonCheck {
    /// 4 (nm - c1^2)(nm - c2^2)
    pub lhs: f64,
    /// n^2 + m^2 + 2|c1 c2| - 1/4
    pub rhs: f64,
    /// lhs < rhs strictly.
    pub entangled: bool,
}

/// Mixedness constraints every physical state satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixednessBounds {
    /// 4 (nm - c1^2)(nm - c2^2) >= 1/4 (purity at most 1).
    pub purity_bound_ok: bool,
    /// nm - |c1 c2| >= 1/4.
    pub product_bound_ok: bool,
}

/// Combined entanglement summary for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub simon_lhs: f64,
    pub simon_rhs: f64,
    pub entangled: bool,
    /// Smallest symplectic eigenvalue of the partial transpose.
    pub nu_tilde: f64,
    /// max(0, -ln(2 nu~)).
    pub log_negativity: f64,
    pub purity: f64,
}

/// Simon's partial-transpose separability criterion in standard-form
/// variables: the state is entangled iff
/// 4 (nm - c1^2)(nm - c2^2) < n^2 + m^2 + 2|c1 c2| - 1/4.
///
/// For physical states this is necessary and sufficient, and equivalent to
/// nu~ < 1/2 from [`ppt_symplectic_eigenvalue`].
pub fn simon_criterion(sf: &StandardForm) -> SimonCheck {
    let lhs = 4.0 * sf.det();
    let rhs = sf.n() * sf.n() + sf.m() * sf.m() + 2.0 * (sf.c1() * sf.c2()).abs() - 0.25;
    SimonCheck { lhs, rhs, entangled: lhs < rhs }
}

/// Smallest symplectic eigenvalue of the partially transposed state:
///
/// nu~^2 = (D - sqrt(D^2 - 4 det V)) / 2, D = n^2 + m^2 - 2 c1 c2.
///
/// Implemented in the rationalized form 2 det V / (D + sqrt(D^2 - 4 det V)),
/// which avoids the catastrophic cancellation the textbook form suffers for
/// strongly squeezed states (where nu~ is tiny and D is large).
pub fn ppt_symplectic_eigenvalue(sf: &StandardForm) -> Result<f64> {
    let d = sf.n() * sf.n() + sf.m() * sf.m() - 2.0 * sf.c1() * sf.c2();
    let det = sf.det();
    let disc = d * d - 4.0 * det;
    if disc < -1e-12 {
        return Err(Error::NumericalDomain { context: "partial-transpose symplectic eigenvalue", value: disc });
    }
    Ok((2.0 * det / (d + disc.max(0.0).sqrt())).sqrt())
}

/// Logarithmic negativity E_N = max(0, -ln(2 nu~)); positive exactly for
/// entangled states, and equal to 2r for a two-mode squeezed vacuum with
/// squeezing parameter r.
pub fn log_negativity(sf: &StandardForm) -> Result<f64> {
    let nu = ppt_symplectic_eigenvalue(sf)?;
    Ok((-(2.0 * nu).ln()).max(0.0))
}

/// Checks the two mixedness inequalities (with 1e-12 slack) that any
/// physical standard form obeys.
pub fn mixedness_bounds(sf: &StandardForm) -> MixednessBounds {
    MixednessBounds {
        purity_bound_ok: 4.0 * sf.det() >= 0.25 - 1e-12,
        product_bound_ok: sf.nm() - (sf.c1() * sf.c2()).abs() >= 0.25 - 1e-12,
    }
}

/// Runs the Simon criterion and the negativity measures together.
pub fn entanglement_report(sf: &StandardForm) -> Result<EntanglementReport> {
    let simon = simon_criterion(sf);
    let nu_tilde = ppt_symplectic_eigenvalue(sf)?;
    Ok(EntanglementReport {
        simon_lhs: simon.lhs,
        simon_rhs: simon.rhs,
        entangled: simon.entangled,
        nu_tilde,
        log_negativity: (-(2.0 * nu_tilde).ln()).max(0.0),
        purity: sf.purity(),
    })
}
