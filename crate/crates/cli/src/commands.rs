//! The four subcommands: state generation, per-state analysis, parameter
//! sweeps, and the verification run.

use std::io::Write;
use std::path::Path;

use gaussian_bell::states::noisy_tmsv;
use gaussian_bell::{
    bell_max_closed_form, bell_max_numeric, chain_inequality_check, classify, default_x_grid,
    entanglement_report, is_nonlocal, sample_physical_states, scan_nonlocal_implies_entangled,
    simon_criterion, taylor_bound_check, OptimizerConfig, ScanReport, StandardForm, StateClass,
};
use serde::Serialize;

use crate::state_file::{self, StateFile};
use crate::CliError;

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;

fn class_name(class: StateClass) -> &'static str {
    match class {
        StateClass::SeparableLocal => "separable & local",
        StateClass::EntangledLocal => "entangled & local",
        StateClass::EntangledNonlocal => "entangled & nonlocal",
        StateClass::SeparableNonlocal => "nonlocal & separable (theorem violation)",
    }
}

fn class_key(class: StateClass) -> &'static str {
    match class {
        StateClass::SeparableLocal => "separable_local",
        StateClass::EntangledLocal => "entangled_local",
        StateClass::EntangledNonlocal => "entangled_nonlocal",
        StateClass::SeparableNonlocal => "separable_nonlocal",
    }
}

pub fn tmsv(r: f64, thermal: f64, eta: f64, out: &Path) -> Result<u8, CliError> {
    if r < 0.0 || !r.is_finite() {
        return Err(CliError::Usage(format!("--r {r} must be a finite number >= 0")));
    }
    let v = noisy_tmsv(r, eta, thermal).map_err(|e| CliError::Usage(e.to_string()))?;
    let meta = serde_json::json!({
        "label": format!("tmsv r={r} thermal={thermal} eta={eta}"),
        "r": r,
        "thermal": thermal,
        "eta": eta,
    });
    state_file::save(out, &StateFile::from_covariance(&v, meta))?;
    println!("wrote {}", out.display());
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CheckReport {
    purity: f64,
    standard_form: StandardForm,
    bell: gaussian_bell::BellReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    bell_oracle: Option<gaussian_bell::BellReport>,
    entanglement: gaussian_bell::EntanglementReport,
    class: &'static str,
}

pub fn check(input: &Path, oracle: bool, json: bool) -> Result<u8, CliError> {
    let (v, sf) = state_file::load(input)?.into_state()?;
    let bell = bell_max_closed_form(&sf);
    let bell_oracle =
        oracle.then(|| bell_max_numeric(&sf, &OptimizerConfig::default()));
    let entanglement = entanglement_report(&sf).map_err(CliError::State)?;
    let class = classify(&sf);
    let report = CheckReport {
        purity: v.purity(),
        standard_form: sf,
        bell,
        bell_oracle,
        entanglement,
        class: class_key(class),
    };

    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("input: {}", input.display());
        println!("purity: {}", report.purity);
        println!(
            "standard form: n = {}, m = {}, c1 = {}, c2 = {}",
            sf.n(),
            sf.m(),
            sf.c1(),
            sf.c2()
        );
        println!(
            "bell (closed form): bmax = {}, nonlocal = {}, margin over 2 = {}",
            report.bell.bmax, report.bell.nonlocal, report.bell.margin
        );
        if let Some(numeric) = &report.bell_oracle {
            println!(
                "bell (numeric oracle): bmax = {}, |closed - numeric| = {:.3e}",
                numeric.bmax,
                (report.bell.bmax - numeric.bmax).abs()
            );
        }
        println!(
            "simon criterion: lhs = {}, rhs = {}, entangled = {}",
            report.entanglement.simon_lhs,
            report.entanglement.simon_rhs,
            report.entanglement.entangled
        );
        println!(
            "log negativity: {} (nu~ = {})",
            report.entanglement.log_negativity, report.entanglement.nu_tilde
        );
        println!("verdict: {}", class_name(class));
    }

    if let Some(numeric) = &report.bell_oracle {
        if numeric.bmax > report.bell.bmax + 1e-6 {
            eprintln!(
                "warning: numeric maximum {} exceeds the closed form {} beyond tolerance",
                numeric.bmax, report.bell.bmax
            );
        }
    }
    if class == StateClass::SeparableNonlocal {
        eprintln!(
            "warning: state is nonlocal yet separable — this contradicts the nonlocality-implies-\
             entanglement theorem; double-check the input"
        );
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

/// Parses "start:stop:step" (inclusive of stop within a relative 1e-9 slack)
/// or a single number.
fn parse_range(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("--{flag} {text:?}: {why}"));
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad("expected a number or start:stop:step"))?;
    match nums.as_slice() {
        [x] if x.is_finite() => Ok(vec![*x]),
        [start, stop, step] if start.is_finite() && stop.is_finite() && step.is_finite() => {
            if *step <= 0.0 {
                return Err(bad("step must be > 0"));
            }
            if stop < start {
                return Err(bad("empty range: stop < start"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|k| start + step * k as f64).collect())
        }
        [_] | [_, _, _] => Err(bad("values must be finite")),
        _ => Err(bad("expected a number or start:stop:step")),
    }
}

pub const SWEEP_HEADER: &str =
    "r,n_th,eta,n,m,c1,c2,purity,bmax,nonlocal,simon_lhs,simon_rhs,entangled,log_negativity";

pub fn sweep(r: &str, thermal: &str, eta: &str, out: &Path) -> Result<u8, CliError> {
    let r_values = parse_range("r", r)?;
    let thermal_values = parse_range("thermal", thermal)?;
    let eta_values = parse_range("eta", eta)?;
    // reject bad physical ranges before touching the output path
    if r_values.iter().any(|x| *x < 0.0) {
        return Err(CliError::Usage("--r values must be >= 0".into()));
    }
    if thermal_values.iter().any(|x| *x < 0.0) {
        return Err(CliError::Usage("--thermal values must be >= 0".into()));
    }
    if eta_values.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(CliError::Usage("--eta values must lie in [0, 1]".into()));
    }

    let file = std::fs::File::create(out)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;
    let mut w = std::io::BufWriter::new(file);
    let fail = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", out.display()));
    writeln!(w, "{SWEEP_HEADER}").map_err(fail)?;

    let mut rows = 0u64;
    for &rv in &r_values {
        for &nth in &thermal_values {
            for &ev in &eta_values {
                let v = noisy_tmsv(rv, ev, nth).map_err(|e| CliError::Usage(e.to_string()))?;
                let (sf, _) = gaussian_bell::reduce(&v);
                let bell = bell_max_closed_form(&sf);
                let simon = simon_criterion(&sf);
                let report = entanglement_report(&sf).map_err(CliError::State)?;
                writeln!(
                    w,
                    "{rv:.16e},{nth:.16e},{ev:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},\
                     {:.16e},{},{:.16e},{:.16e},{},{:.16e}",
                    sf.n(),
                    sf.m(),
                    sf.c1(),
                    sf.c2(),
                    sf.purity(),
                    bell.bmax,
                    is_nonlocal(&sf).nonlocal,
                    simon.lhs,
                    simon.rhs,
                    simon.entangled,
                    report.log_negativity,
                )
                .map_err(fail)?;
                rows += 1;
            }
        }
    }
    w.flush().map_err(fail)?;
    println!("wrote {rows} rows to {}", out.display());
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyReport {
    taylor_grid_points: usize,
    taylor_grid_ok: bool,
    chain_ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    chain_failures: Vec<String>,
    scan: ScanReport,
    pass: bool,
}

pub fn verify(samples: usize, seed: u64, n_max: f64, json: bool) -> Result<u8, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be >= 1".into()));
    }
    let grid = default_x_grid();
    let taylor_grid_ok = match taylor_bound_check(&grid) {
        Ok(_) => true,
        Err(e) => {
            eprintln!("scalar grid violation: {e}");
            false
        }
    };

    let states = sample_physical_states(samples, seed, n_max)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let chain_failures: Vec<String> = states
        .iter()
        .filter_map(|sf| {
            chain_inequality_check(sf).err().map(|e| format!("{e} (state: {sf:?})"))
        })
        .collect();

    let scan = scan_nonlocal_implies_entangled(samples, seed, n_max)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let pass = taylor_grid_ok && chain_failures.is_empty() && scan.counterexamples.is_empty();
    let report = VerifyReport {
        taylor_grid_points: grid.len(),
        taylor_grid_ok,
        chain_ok: chain_failures.is_empty(),
        chain_failures,
        scan,
        pass,
    };

    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!(
            "scalar grid: {} points {}",
            report.taylor_grid_points,
            if report.taylor_grid_ok { "ok" } else { "VIOLATED" }
        );
        println!(
            "inequality chain: {} states {}",
            samples,
            if report.chain_ok { "ok" } else { "VIOLATED" }
        );
        for failure in &report.chain_failures {
            eprintln!("chain violation: {failure}");
        }
        let scan = &report.scan;
        let nonlocal_entangled = scan.nonlocal_count - scan.counterexamples.len();
        println!(
            "scan: {} samples, seed {}, n_max {} (acceptance rate {:.3})",
            scan.samples, scan.seed, scan.n_max, scan.acceptance_rate
        );
        println!("  separable & local: {}", scan.separable_local_count);
        println!("  entangled & local: {}", scan.entangled_local_count);
        println!("  entangled & nonlocal: {nonlocal_entangled}");
        println!("  nonlocal-but-separable counterexamples: {}", scan.counterexamples.len());
        println!("verdict: {}", if pass { "PASS" } else { "FAIL" });
    }
    if !report.scan.counterexamples.is_empty() {
        eprintln!(
            "counterexamples: {}",
            serde_json::to_string_pretty(&report.scan.counterexamples)
                .expect("standard forms serialize")
        );
    }
    Ok(if pass { EXIT_OK } else { EXIT_VIOLATION })
}
