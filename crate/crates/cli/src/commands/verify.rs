use fusion_core::characters::{char_value, torsion_points, TorusPoint};
use fusion_core::fixed_points::{
    enumerate_fixed_points, generic_pairs, genericity_check, sign_report, sign_flip_set_affine, sign_flip_set_finite,
    FixedPointRecord, OrbitPair,
};
use fusion_core::fusion::{alcove_weights, fusion_table_with_residuals, kac_walton_table, VerlindeEngine};
use fusion_core::localization::{h0_character, orthogonality_on, phase_relation_on, rr_total_on, PhaseReport, Product};
use fusion_core::sampling::level_points;
use fusion_core::tolerances::{relative_error, Tolerances};
use fusion_core::{Error, RootDatum, Weight};
use log::info;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use super::{algebra_json, core_code, CliError, Outcome};
use crate::args::{parse_algebra, parse_weight, Suite, VerifyArgs};
use crate::output::{sci, Output};

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    max_error: Option<f64>,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, max_error: Option<f64>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            max_error,
            detail: detail.into(),
        }
    }

    fn failed(name: impl Into<String>, e: &Error) -> Self {
        Check::new(name, false, None, e.to_string())
    }
}

/// Collects checks; remembers the most specific failure code.
#[derive(Default)]
struct Run {
    checks: Vec<Check>,
    code: u8,
}

impl Run {
    fn push(&mut self, check: Check) {
        if !check.passed && self.code == 0 {
            self.code = 1;
        }
        self.checks.push(check);
    }

    /// Records a failed computation; identity violations become failed
    /// checks, everything else aborts the run.
    fn absorb(&mut self, name: impl Into<String>, e: Error) -> Result<(), CliError> {
        match e {
            Error::IdentityViolated(_) => {
                self.push(Check::failed(name, &e));
                Ok(())
            }
            other => Err(other.into()),
        }
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Phase => "phase",
        Suite::Totals => "totals",
        Suite::SignSums => "sign-sums",
        Suite::FlipSets => "flip-sets",
        Suite::Orthogonality => "orthogonality",
        Suite::Oracle => "oracle",
        Suite::H0 => "h0",
    }
}

fn levels(args: &VerifyArgs) -> Result<Vec<u32>, CliError> {
    match (args.level, args.max_level) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either --level or --max-level, not both".into())),
        (Some(k), None) => Ok(vec![k]),
        (None, Some(m)) => Ok((1..=m).collect()),
        (None, None) => Err(CliError::Usage("--level or --max-level is required".into())),
    }
}

fn explicit_pair(d: &RootDatum, args: &VerifyArgs) -> Result<Option<(Weight, Weight)>, CliError> {
    match (&args.lambda, &args.mu) {
        (Some(l), Some(m)) => Ok(Some((
            parse_weight("lambda", l, d.rank())?,
            parse_weight("mu", m, d.rank())?,
        ))),
        (None, None) => Ok(None),
        _ => Err(CliError::Usage("--lambda and --mu go together".into())),
    }
}

/// Generic pairs to run a fixed-point suite on: the given one, or all of
/// them at each level. No generic pair at all is a degenerate request.
fn orbit_pairs(d: &RootDatum, args: &VerifyArgs) -> Result<Vec<OrbitPair>, CliError> {
    let mut out = Vec::new();
    let explicit = explicit_pair(d, args)?;
    for k in levels(args)? {
        match &explicit {
            Some((l, m)) => {
                genericity_check(d, l, m, k)?;
                out.push(OrbitPair::new(d, l.clone(), m.clone(), k)?);
            }
            None => out.extend(generic_pairs(d, k)),
        }
    }
    if out.is_empty() {
        return Err(Error::DegenerateConfiguration(format!(
            "{} has no generic (λ, λ') at the requested levels",
            d.simple_type()
        ))
        .into());
    }
    Ok(out)
}

fn sign_list(eps: &[i8]) -> String {
    eps.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

fn record_detail(r: &FixedPointRecord) -> String {
    format!(
        "{} S={:?} ε_q={} ε_p={}{}",
        r.label(),
        r.flip_set,
        sign_list(&r.eps_q),
        sign_list(&r.eps_p),
        if r.principal { " principal" } else { " extrapolated" }
    )
}

fn oracle(d: &RootDatum, args: &VerifyArgs, tol: &Tolerances, run: &mut Run) -> Result<(), CliError> {
    for k in levels(args)? {
        let name = format!("oracle k={k}");
        let (verlinde, summary) = match fusion_table_with_residuals(d, k, tol.rounding) {
            Ok(v) => v,
            Err(e @ Error::ResidualTooLarge { .. }) => {
                run.push(Check::failed(name, &e));
                run.code = 3;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let kw = kac_walton_table(d, k)?;
        let n = verlinde.size();
        let mut mismatches = 0usize;
        for i in 0..n {
            for j in 0..n {
                for c in 0..n {
                    if verlinde.by_index(i, j, c) != kw.by_index(i, j, c) {
                        mismatches += 1;
                    }
                }
            }
        }
        let residual = summary.max_residual.max(summary.max_imaginary);
        run.push(Check::new(
            name,
            mismatches == 0,
            Some(residual),
            format!("{} coefficients, {mismatches} differ from Kac-Walton", n * n * n),
        ));
    }
    Ok(())
}

fn sign_suite(d: &RootDatum, args: &VerifyArgs, suite: Suite, run: &mut Run) -> Result<(), CliError> {
    for pair in orbit_pairs(d, args)? {
        let records = enumerate_fixed_points(d, &pair)?;
        for r in &records {
            let name = format!("{pair} (u={:?}, v={:?})", r.u.word(), r.v.word());
            if suite == Suite::FlipSets {
                let finite = sign_flip_set_finite(d, r);
                let affine = sign_flip_set_affine(d, r)?;
                let detail = format!("finite {finite:?} affine {affine:?}; {}", record_detail(r));
                run.push(Check::new(name, finite == affine, None, detail));
                continue;
            }
            match sign_report(d, r) {
                Ok(rep) => {
                    let detail = format!(
                        "{}; flipped [{}] Σ={} h∨t={} parity {:+}",
                        record_detail(r),
                        rep.flipped.join(" "),
                        rep.finite_part_sum,
                        rep.h_dual_t_frame,
                        rep.parity
                    );
                    run.push(Check::new(name, true, None, detail));
                }
                Err(e) => run.absorb(name, e)?,
            }
        }
    }
    Ok(())
}

fn sample_points(d: &RootDatum, k: u32, args: &VerifyArgs) -> Vec<TorusPoint> {
    level_points(d, k, args.seed, args.samples)
}

fn phase_suite(d: &RootDatum, args: &VerifyArgs, tol: &Tolerances, run: &mut Run) -> Result<(), CliError> {
    for pair in orbit_pairs(d, args)? {
        let k = pair.level;
        let records = enumerate_fixed_points(d, &pair)?;
        for (kind, points) in [
            ("torsion", torsion_points(d, k).regular_points().cloned().collect::<Vec<_>>()),
            ("random", sample_points(d, k, args)),
        ] {
            let name = format!("{pair} {kind}");
            let mut total = PhaseReport::default();
            let mut failure = None;
            for tau in &points {
                match phase_relation_on(d, k, &records, tau, tol.single) {
                    Ok(rep) => total.merge(&rep),
                    Err(e) => {
                        failure = Some(e);
                        break;
                    }
                }
            }
            match failure {
                Some(e) => run.absorb(name, e)?,
                None => run.push(Check::new(
                    name,
                    true,
                    Some(total.max_error_principal.max(total.max_error_extrapolated)),
                    format!(
                        "{} points, {} record checks; principal {} extrapolated {}",
                        points.len(),
                        total.records,
                        sci(total.max_error_principal),
                        sci(total.max_error_extrapolated)
                    ),
                )),
            }
        }
    }
    Ok(())
}

fn product(d: &RootDatum, pair: &OrbitPair, tau: &TorusPoint) -> Result<Complex64, Error> {
    Ok(char_value(d, &pair.lambda, tau)? * char_value(d, &pair.mu, tau)?)
}

fn total_suite(d: &RootDatum, args: &VerifyArgs, tol: &Tolerances, run: &mut Run) -> Result<(), CliError> {
    for pair in orbit_pairs(d, args)? {
        let k = pair.level;
        let records = enumerate_fixed_points(d, &pair)?;
        for (which, points) in [
            (Product::Fusion, torsion_points(d, k).regular_points().cloned().collect::<Vec<_>>()),
            (Product::Cartesian, sample_points(d, k, args)),
        ] {
            let mut worst = 0.0f64;
            for tau in &points {
                let total = rr_total_on(d, k, &records, tau, which)?;
                worst = worst.max(relative_error(total, product(d, &pair, tau)?));
            }
            run.push(Check::new(
                format!("{pair} {which}"),
                worst <= tol.sum,
                Some(worst),
                format!("Σ FC vs χ_λ χ_λ' at {} points", points.len()),
            ));
        }
    }
    Ok(())
}

fn orthogonality(d: &RootDatum, args: &VerifyArgs, tol: &Tolerances, run: &mut Run) -> Result<(), CliError> {
    for k in levels(args)? {
        if k == 0 {
            return Err(CliError::Usage("orthogonality needs level ≥ 1".into()));
        }
        let engine = VerlindeEngine::new(d, k)?;
        let name = format!("orthogonality k={k}");
        match orthogonality_on(&engine, tol.sum) {
            Ok(rep) => run.push(Check::new(
                name,
                true,
                Some(rep.max_error),
                format!("{} regular torsion points", rep.points),
            )),
            Err(e) => run.absorb(name, e)?,
        }
    }
    Ok(())
}

fn h0_suite(d: &RootDatum, args: &VerifyArgs, tol: &Tolerances, run: &mut Run) -> Result<(), CliError> {
    let explicit = explicit_pair(d, args)?;
    for k in levels(args)? {
        let weights = alcove_weights(d, k);
        let pairs: Vec<(Weight, Weight)> = match &explicit {
            Some(p) => vec![p.clone()],
            None => weights
                .iter()
                .flat_map(|l| weights.iter().map(move |m| (l.clone(), m.clone())))
                .collect(),
        };
        let torsion = torsion_points(d, k);
        let mut worst = 0.0f64;
        for (l, m) in &pairs {
            for tau in torsion.regular_points() {
                let h = h0_character(d, l, m, k, tau)?;
                let chi = char_value(d, l, tau)? * char_value(d, m, tau)?;
                worst = worst.max(relative_error(h, chi));
            }
        }
        run.push(Check::new(
            format!("h0 k={k}"),
            worst <= tol.sum,
            Some(worst),
            format!("{} pairs at {} regular torsion points", pairs.len(), torsion.regular_count()),
        ));
    }
    Ok(())
}

pub fn run(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let d = parse_algebra(&args.algebra)?;
    let tol = args.common.tolerances();
    let mut run = Run::default();
    let result = match args.suite {
        Suite::Oracle => oracle(&d, args, &tol, &mut run),
        Suite::SignSums | Suite::FlipSets => sign_suite(&d, args, args.suite, &mut run),
        Suite::Phase => phase_suite(&d, args, &tol, &mut run),
        Suite::Totals => total_suite(&d, args, &tol, &mut run),
        Suite::Orthogonality => orthogonality(&d, args, &tol, &mut run),
        Suite::H0 => h0_suite(&d, args, &tol, &mut run),
    };
    match result {
        Ok(()) => {}
        // Degenerate input is reported in the normal output as well.
        Err(CliError::Core(e)) if core_code(&e) == 4 => {
            info!("suite stopped: {e}");
            run.push(Check::failed("genericity", &e));
            run.code = 4;
        }
        Err(e) => return Err(e),
    }
    let passed = run.checks.iter().filter(|c| c.passed).count();
    let notes = vec![format!(
        "{}: {passed}/{} checks passed",
        suite_name(args.suite),
        run.checks.len()
    )];
    let rows = run
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                if c.passed { "pass" } else { "FAIL" }.to_string(),
                c.max_error.map(sci).unwrap_or_else(|| "-".into()),
                c.detail.clone(),
            ]
        })
        .collect();
    let output = Output {
        json: json!({
            "suite": suite_name(args.suite),
            "algebra": algebra_json(&d),
            "passed": run.code == 0,
            "checks": run.checks,
        }),
        headers: vec!["check", "status", "max_error", "detail"],
        rows,
        notes,
    };
    Ok(Outcome { output, code: run.code })
}
