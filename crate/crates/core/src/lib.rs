//! Bell-CHSH nonlocality and entanglement analysis for two-mode Gaussian
//! states.
//!
//! The crate works with 4x4 covariance matrices in (Q_I, P_I, Q_S, P_S)
//! ordering (hbar = 1, vacuum variance 1/2). It reduces states to the
//! four-parameter standard form (n, m, c1, c2), evaluates the Wigner-function
//! Bell-CHSH combination and its closed-form maximum, applies the Simon
//! separability criterion and logarithmic negativity, and provides samplers
//! and scans that check the inequality chain behind the statement that every
//! nonlocal two-mode Gaussian state is entangled.

pub mod bell;
pub mod covariance;
pub mod entanglement;
pub mod error;
pub mod standard_form;
pub mod states;
pub mod verification;

pub use bell::{
    bell_function, bell_max_closed_form, bell_max_numeric, is_nonlocal, scaled_point_to_phase,
    BellEvaluationPoint, BellReport, NonlocalityCheck, OptimizerConfig,
};
pub use covariance::{symplectic_form, CovarianceMatrix, LocalInvariants, PhasePoint};
pub use entanglement::{
    entanglement_report, log_negativity, mixedness_bounds, ppt_symplectic_eigenvalue,
    simon_criterion, EntanglementReport, MixednessBounds, SimonCheck,
};
pub use error::{Error, Result};
pub use standard_form::{
    apply_local_symplectic, random_local_symplectic, reduce, LocalSymplectic, StandardForm,
};
pub use verification::{
    chain_inequality_check, classify, default_x_grid, sample_physical_states,
    scan_nonlocal_implies_entangled, taylor_bound_check, ChainReport, PhysicalStateSampler,
    ScanReport, StateClass, TaylorBoundPoint,
};
