//! Numeric certification of the inequality chain showing that every
//! nonlocal two-mode Gaussian state is entangled, plus mass randomized
//! scanning for counterexamples.
//!
//! The chain, in the normalized variables x = c~/sqrt(nm) and
//! x' = min(|c1|,|c2|)/sqrt(nm):
//!
//! 1. Taylor bound: the nonlocality threshold (1/16)[...]^2 never exceeds
//!    (1 + x^2)/4 on x in [0, 1].
//! 2. Sufficiency: nm (2 + 2xx' - 1/(4nm)) >= (1 + x^2)/4, which closes the
//!    gap between the nonlocality threshold and (a weakening of) the
//!    separability bound.
//! 3. Mixedness bounds on x' and 1/(4nm) for states away from x = 1.
//! 4. Closing inequality: 2 - (2 + x^2) sqrt(1 - x^2) >= 0.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bell::{is_nonlocal, nonlocality_bracket};
use crate::entanglement::simon_criterion;
use crate::error::{Error, Result};
use crate::standard_form::StandardForm;

/// Slack for the per-state inequality checks.
pub const CHAIN_SLACK: f64 = 1e-9;

/// Slack for the x-grid checks, where both sides are smooth functions of a
/// single variable and carry no state-sampling noise.
pub const GRID_SLACK: f64 = 1e-12;

/// Rejection-sampling attempt budget per emitted state.
pub const SAMPLER_ATTEMPT_BUDGET: u64 = 1_000_000;

/// One point of the grid certification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaylorBoundPoint {
    pub x: f64,
    /// Nonlocality threshold (1/16)[1 + (1/(1+x))^{1/(1+2x)} (1+2x)/(1+x)]^2.
    pub lhs: f64,
    /// Quadratic cap (1 + x^2)/4.
    pub rhs: f64,
    /// 2 - (2 + x^2) sqrt(1 - x^2), nonnegative on [0, 1].
    pub closing_value: f64,
}

/// Per-state evaluation of every link in the inequality chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainReport {
    pub x: f64,
    pub x_prime: f64,
    /// Nonlocality threshold at this state's x.
    pub taylor_lhs: f64,
    /// Quadratic cap (1 + x^2)/4.
    pub taylor_rhs: f64,
    /// nm (2 + 2xx' - 1/(4nm)) = 2nm + 2|c1 c2| - 1/4.
    pub sufficiency_lhs: f64,
    /// Same cap (1 + x^2)/4 the sufficiency step must dominate.
    pub sufficiency_rhs: f64,
    /// Margin of the unweakened separability bound,
    /// n^2 + m^2 + 2|c1 c2| - 1/4 - (1 + x^2)/4; at least
    /// sufficiency_lhs - sufficiency_rhs since n^2 + m^2 >= 2nm.
    pub original_margin: f64,
    /// x'^2 <= 1 - 1/(16 (nm)^2 (1 - x^2)); vacuously true at x = 1.
    pub x_prime_bound_ok: bool,
    /// 1/(4nm) <= sqrt(1 - x^2); vacuously true at x = 1.
    pub nm_bound_ok: bool,
    /// 2 - (2 + x^2) sqrt(1 - x^2).
    pub closing_value: f64,
}

fn taylor_lhs(x: f64) -> f64 {
    let bracket = nonlocality_bracket(x);
    bracket * bracket / 16.0
}

fn closing_value(x: f64) -> f64 {
    2.0 - (2.0 + x * x) * (1.0 - x * x).max(0.0).sqrt()
}

/// Checks the grid inequalities at every supplied x in [0, 1]: the Taylor
/// bound lhs <= (1 + x^2)/4 and the closing inequality, both with
/// [`GRID_SLACK`]. Also certifies that the Taylor remainder vanishes faster
/// than x^2: the ratio (rhs - lhs)/x^2 must decrease over the probes
/// x = 1e-2, 1e-3, 1e-4 and be below 0.1 at 1e-3.
pub fn taylor_bound_check(x_grid: &[f64]) -> Result<Vec<TaylorBoundPoint>> {
    let ratio = |x: f64| (0.25 * (1.0 + x * x) - taylor_lhs(x)) / (x * x);
    let probes = [ratio(1e-2), ratio(1e-3), ratio(1e-4)];
    if !(probes[0] > probes[1] && probes[1] > probes[2]) || probes[1] >= 0.1 {
        return Err(Error::InequalityViolation(format!(
            "Taylor remainder ratios {probes:?} do not vanish like O(x)"
        )));
    }

    let mut out = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidParameter {
                reason: format!("grid point x = {x} outside [0, 1]"),
            });
        }
        let point = TaylorBoundPoint {
            x,
            lhs: taylor_lhs(x),
            rhs: 0.25 * (1.0 + x * x),
            closing_value: closing_value(x),
        };
        if point.lhs > point.rhs + GRID_SLACK {
            return Err(Error::InequalityViolation(format!(
                "Taylor bound fails at x = {x}: {} > {}",
                point.lhs, point.rhs
            )));
        }
        if point.closing_value < -GRID_SLACK {
            return Err(Error::InequalityViolation(format!(
                "closing inequality fails at x = {x}: {}",
                point.closing_value
            )));
        }
        out.push(point);
    }
    Ok(out)
}

/// The canonical certification grid: 10^4 + 1 evenly spaced points on [0, 1].
pub fn default_x_grid() -> Vec<f64> {
    (0..=10_000).map(|i| i as f64 / 10_000.0).collect()
}

/// Evaluates the whole inequality chain on one state and errors (with the
/// state embedded in the message) if any link fails beyond [`CHAIN_SLACK`].
/// The two mixedness-derived bounds divide by 1 - x^2 and are skipped on the
/// x = 1 boundary, where the closing inequality alone carries the argument.
pub fn chain_inequality_check(sf: &StandardForm) -> Result<ChainReport> {
    let x = sf.x();
    let x_prime = sf.x_prime();
    let nm = sf.nm();
    let taylor_rhs = 0.25 * (1.0 + x * x);
    let one_minus_x2 = 1.0 - x * x;
    let interior = one_minus_x2 > 0.0;

    let report = ChainReport {
        x,
        x_prime,
        taylor_lhs: taylor_lhs(x),
        taylor_rhs,
        sufficiency_lhs: nm * (2.0 + 2.0 * x * x_prime - 1.0 / (4.0 * nm)),
        sufficiency_rhs: taylor_rhs,
        original_margin: sf.n() * sf.n() + sf.m() * sf.m() + 2.0 * (sf.c1() * sf.c2()).abs()
            - 0.25
            - taylor_rhs,
        x_prime_bound_ok: !interior
            || x_prime * x_prime <= 1.0 - 1.0 / (16.0 * nm * nm * one_minus_x2) + CHAIN_SLACK,
        nm_bound_ok: !interior || 1.0 / (4.0 * nm) <= one_minus_x2.sqrt() + CHAIN_SLACK,
        closing_value: closing_value(x),
    };

    let context = || {
        format!(
            "state (n={}, m={}, c1={}, c2={})",
            sf.n(),
            sf.m(),
            sf.c1(),
            sf.c2()
        )
    };
    if report.taylor_lhs > report.taylor_rhs + CHAIN_SLACK {
        return Err(Error::InequalityViolation(format!(
            "Taylor bound fails for {}: {} > {}",
            context(),
            report.taylor_lhs,
            report.taylor_rhs
        )));
    }
    if report.sufficiency_lhs < report.sufficiency_rhs - CHAIN_SLACK {
        return Err(Error::InequalityViolation(format!(
            "sufficiency step fails for {}: {} < {}",
            context(),
            report.sufficiency_lhs,
            report.sufficiency_rhs
        )));
    }
    if !report.x_prime_bound_ok || !report.nm_bound_ok {
        return Err(Error::InequalityViolation(format!(
            "mixedness bounds fail for {}: x' bound {}, nm bound {}",
            context(),
            report.x_prime_bound_ok,
            report.nm_bound_ok
        )));
    }
    if report.closing_value < -CHAIN_SLACK {
        return Err(Error::InequalityViolation(format!(
            "closing inequality fails for {}: {}",
            context(),
            report.closing_value
        )));
    }
    Ok(report)
}

/// Indexed rejection sampler over physical standard forms.
///
/// Each index gets its own deterministic substream of a seeded ChaCha
/// generator, so any subset of indices can be drawn in any order — in
/// particular in parallel — with results identical to a serial pass.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalStateSampler {
    seed: u64,
    n_max: f64,
}

impl PhysicalStateSampler {
    pub fn new(seed: u64, n_max: f64) -> Result<Self> {
        if n_max <= 0.5 || !n_max.is_finite() {
            return Err(Error::InvalidParameter {
                reason: format!("n_max = {n_max} must exceed 1/2"),
            });
        }
        Ok(Self { seed, n_max })
    }

    /// Draws (n, m) uniform on [1/2, n_max] and (c1, c2) uniform on
    /// [-sqrt(nm), sqrt(nm)], accepting the first draw whose reconstructed
    /// covariance matrix validates. Returns the state and the number of
    /// attempts it took.
    pub fn state_at(&self, index: u64) -> Result<(StandardForm, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        for attempt in 1..=SAMPLER_ATTEMPT_BUDGET {
            let n = rng.random_range(0.5..=self.n_max);
            let m = rng.random_range(0.5..=self.n_max);
            let c_bound = (n * m).sqrt();
            let c1 = rng.random_range(-c_bound..=c_bound);
            let c2 = rng.random_range(-c_bound..=c_bound);
            let Ok(sf) = StandardForm::new(n, m, c1, c2) else {
                continue;
            };
            if sf.to_covariance().is_ok() {
                return Ok((sf, attempt as u32));
            }
        }
        Err(Error::SamplerStarvation { accepted: 0, attempts: SAMPLER_ATTEMPT_BUDGET })
    }
}

/// First `count` states of the sampler stream for (seed, n_max).
pub fn sample_physical_states(count: usize, seed: u64, n_max: f64) -> Result<Vec<StandardForm>> {
    let sampler = PhysicalStateSampler::new(seed, n_max)?;
    (0..count as u64)
        .map(|i| sampler.state_at(i).map(|(sf, _)| sf))
        .collect()
}

/// Joint nonlocality/entanglement classification of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StateClass {
    SeparableLocal,
    EntangledLocal,
    EntangledNonlocal,
    /// Would contradict the implication under test; never expected.
    SeparableNonlocal,
}

/// Applies both criteria to one state.
pub fn classify(sf: &StandardForm) -> StateClass {
    let nonlocal = is_nonlocal(sf).nonlocal;
    let entangled = simon_criterion(sf).entangled;
    match (entangled, nonlocal) {
        (false, false) => StateClass::SeparableLocal,
        (true, false) => StateClass::EntangledLocal,
        (true, true) => StateClass::EntangledNonlocal,
        (false, true) => StateClass::SeparableNonlocal,
    }
}

/// Outcome of a randomized counterexample scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub samples: usize,
    pub seed: u64,
    pub n_max: f64,
    pub nonlocal_count: usize,
    pub entangled_count: usize,
    /// States that are entangled yet do not violate the Bell bound; these
    /// are expected, since entanglement does not imply nonlocality.
    pub entangled_local_count: usize,
    pub separable_local_count: usize,
    /// Nonlocal-but-separable states. Must stay empty.
    pub counterexamples: Vec<StandardForm>,
    /// Total rejection-sampling attempts across all indices.
    pub attempts: u64,
    pub acceptance_rate: f64,
}

/// Samples `count` states and classifies each one, collecting any state
/// flagged nonlocal but separable. Parallel over sample indices with
/// deterministic per-index substreams, so reports are run-to-run identical.
pub fn scan_nonlocal_implies_entangled(count: usize, seed: u64, n_max: f64) -> Result<ScanReport> {
    let sampler = PhysicalStateSampler::new(seed, n_max)?;
    let drawn: Vec<(StandardForm, u32)> = (0..count as u64)
        .into_par_iter()
        .map(|i| sampler.state_at(i))
        .collect::<Result<_>>()?;

    let mut report = ScanReport {
        samples: count,
        seed,
        n_max,
        nonlocal_count: 0,
        entangled_count: 0,
        entangled_local_count: 0,
        separable_local_count: 0,
        counterexamples: Vec::new(),
        attempts: 0,
        acceptance_rate: 0.0,
    };
    for (sf, attempts) in &drawn {
        report.attempts += u64::from(*attempts);
        match classify(sf) {
            StateClass::SeparableLocal => report.separable_local_count += 1,
            StateClass::EntangledLocal => {
                report.entangled_count += 1;
                report.entangled_local_count += 1;
            }
            StateClass::EntangledNonlocal => {
                report.entangled_count += 1;
                report.nonlocal_count += 1;
            }
            StateClass::SeparableNonlocal => {
                report.nonlocal_count += 1;
                report.counterexamples.push(*sf);
            }
        }
    }
    if report.attempts > 0 {
        report.acceptance_rate = count as f64 / report.attempts as f64;
    }
    Ok(report)
}
