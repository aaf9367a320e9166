use std::fmt::Write as _;
use std::path::Path;

use ngonlift::interp::{chebyshev, ngon_interpolation, tangent_samples, vanishing_poly, LevelSequence};
use ngonlift::lift::{
    build_chained_lift, build_hierarchy_lift, build_single_block_lift, matching_certificate, verify_lift_with,
    LiftDescription, LiftReport, PSD_SLACK,
};
use ngonlift::lowerbound::{log_bound_check, refute_sos_valid};
use ngonlift::poly::{decide_nonnegative, NONNEG_TOL};
use ngonlift::sdpa::{export_sdpa_string, import_sdpa_str};
use ngonlift::soscert::{
    hexagon_certificate, hierarchy_certificate, powers_of_two_certificate, verify_certificate, SosCertificate,
};
use ngonlift::{Domain, Error, FrequencySet, Univariate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{CertScheme, Cli, Command, Figure, Format, LiftKind};

pub enum Failure {
    /// Verification or invariant failure, exit 1.
    Check(String),
    /// Bad arguments or unreadable input, exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantBreach(_) | Error::TangentConditionViolated(_) | Error::Indefinite(_) => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn tolerance(flag: Option<f64>, default: f64) -> Result<f64, Failure> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("NGONLIFT_TOL") {
            Ok(s) => s.trim().parse().map_err(|_| usage(format!("NGONLIFT_TOL is not a number: {s:?}")))?,
            Err(_) => default,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

/// Writes `artifact` to `out`, or to stdout when no path is given; the
/// summary goes to stdout in the first case and stderr in the second.
fn emit(artifact: &str, summary: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => {
            std::fs::write(p, artifact).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
            print!("{summary}");
        }
        None => {
            print!("{artifact}");
            if !artifact.ends_with('\n') {
                println!();
            }
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Certify { n, big_n, scheme, ref out } => certify(n, big_n, scheme, out.as_deref(), cli.tol),
        Command::Lift { n, big_n, scheme, format, ref out } => lift(n, big_n, scheme, format, out.as_deref(), cli.tol),
        Command::Cluster { big_n, ref freqs, symmetric, trials } => cluster(big_n, freqs, symmetric, trials, cli.seed),
        Command::ThetaRank { big_n } => theta_rank(big_n),
        Command::Figures { which, k, big_n, u, step, ref out } => figures(which, k, big_n, u, step, out.as_deref()),
        Command::Verify { ref file } => verify(file, cli.tol),
    }
}

fn certificate_for(n: Option<u32>, big_n: Option<usize>, scheme: CertScheme) -> Result<SosCertificate, Failure> {
    Ok(match scheme {
        CertScheme::PowersOfTwo => {
            let n = match (n, big_n) {
                (Some(n), None) => n,
                (None, Some(m)) if m.is_power_of_two() => m.trailing_zeros(),
                (Some(n), Some(m)) if m == 1usize.checked_shl(n).unwrap_or(0) => n,
                _ => return Err(usage("powers-of-two needs --n (or --N a power of two)")),
            };
            powers_of_two_certificate(n)?
        }
        CertScheme::Hierarchy => {
            let m = big_n.or(n.and_then(|n| 1usize.checked_shl(n))).ok_or_else(|| usage("hierarchy needs --N"))?;
            hierarchy_certificate(m)?
        }
        CertScheme::Hexagon => {
            if big_n.is_some_and(|m| m != 6) || n.is_some() {
                return Err(usage("the hexagon scheme only exists for --N 6"));
            }
            hexagon_certificate()
        }
    })
}

fn certify(n: Option<u32>, big_n: Option<usize>, scheme: CertScheme, out: Option<&Path>, tol: Option<f64>) -> Outcome {
    let cert = certificate_for(n, big_n, scheme)?;
    let default = if scheme == CertScheme::Hierarchy { 1e-8 } else { 1e-10 };
    let tol = tolerance(tol, default)?;
    let report = verify_certificate(&cert, tol);
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "{} certificate, N = {}, {} squares, support {}",
        cert.scheme,
        cert.n,
        cert.squares.len(),
        cert.support()
    );
    let _ = writeln!(
        summary,
        "{}: max vertex residual {:.3e}, coefficient residual {:.3e} (tol {:.1e})",
        pass_fail(report.passed),
        report.max_vertex_residual,
        report.coefficient_residual,
        tol
    );
    emit(&cert.to_json()?, &summary, out)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check("certificate verification failed".into()))
    }
}

fn build_lift(n: Option<u32>, big_n: Option<usize>, scheme: LiftKind) -> Result<LiftDescription, Failure> {
    let exponent = || match (n, big_n) {
        (Some(n), None) => Ok(n),
        (None, Some(m)) if m.is_power_of_two() => Ok(m.trailing_zeros()),
        _ => Err(usage("chained and single lifts need --n (or --N a power of two)")),
    };
    Ok(match scheme {
        LiftKind::Chained => build_chained_lift(exponent()?)?,
        LiftKind::Single => build_single_block_lift(exponent()?)?,
        LiftKind::Hierarchy => {
            let m = big_n.or(n.and_then(|n| 1usize.checked_shl(n))).ok_or_else(|| usage("hierarchy needs --N"))?;
            build_hierarchy_lift(m)?
        }
    })
}

fn lift_summary(lift: &LiftDescription, r: &LiftReport) -> String {
    let mut s = String::new();
    let sizes: Vec<String> = lift.block_sizes().iter().map(|b| b.to_string()).collect();
    let _ = writeln!(
        s,
        "{} lift, N = {}, {} blocks of sizes [{}], {} variables",
        lift.scheme,
        lift.n,
        lift.blocks.len(),
        sizes.join(", "),
        lift.variables().len()
    );
    for (name, leg) in [
        ("vertex feasibility", &r.vertex_feasibility),
        ("Gram reproduction", &r.gram_reproduction),
        ("rotated facets", &r.rotated_facets),
    ] {
        let _ = writeln!(s, "  {} {name}: {:.3e} ({})", pass_fail(leg.passed), leg.worst, leg.detail);
    }
    let _ = writeln!(s, "{}", pass_fail(r.passed));
    s
}

fn check_lift(lift: &LiftDescription, tol: f64) -> Result<LiftReport, Failure> {
    let cert = matching_certificate(lift)?;
    Ok(verify_lift_with(lift, &cert, PSD_SLACK, tol))
}

fn lift(
    n: Option<u32>,
    big_n: Option<usize>,
    scheme: LiftKind,
    format: Format,
    out: Option<&Path>,
    tol: Option<f64>,
) -> Outcome {
    let lift = build_lift(n, big_n, scheme)?;
    let default = if scheme == LiftKind::Hierarchy { 1e-8 } else { 1e-10 };
    let report = check_lift(&lift, tolerance(tol, default)?)?;
    let artifact = match format {
        Format::Sdpa => export_sdpa_string(&lift),
        Format::Json => lift.to_json()?,
    };
    emit(&artifact, &lift_summary(&lift, &report), out)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check("lift verification failed".into()))
    }
}

fn cluster(big_n: usize, freqs: &[i64], symmetric: bool, trials: Option<usize>, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(t) = trials {
        if !freqs.is_empty() {
            return Err(usage("--trials and --freqs are exclusive"));
        }
        let stats = log_bound_check(big_n, t, &mut rng)?;
        println!("{}", serde_json::to_string_pretty(&stats).map_err(Error::from)?);
        if stats.successes == stats.trials && stats.invariant_breaches == 0 {
            return Ok(());
        }
        return Err(Failure::Check("greedy clustering failed on a sampled set".into()));
    }
    if freqs.is_empty() {
        return Err(usage("--freqs is required"));
    }
    if let Some(bad) = freqs.iter().find(|&&k| k < 0 || k as usize >= big_n) {
        return Err(usage(format!("frequency {bad} is outside 0..{big_n}")));
    }
    let mut k = FrequencySet::new(big_n, freqs.iter().copied());
    if symmetric {
        k = k.symmetric_closure();
    } else if k.symmetric_closure() != k {
        eprintln!("note: K is not closed under negation; pass --symmetric to read the list as real frequencies");
    }
    match refute_sos_valid(&k, &mut rng)? {
        Some(report) => println!("{}", report.to_json()?),
        None => println!("no valid clustering found"),
    }
    Ok(())
}

fn theta_rank(big_n: usize) -> Outcome {
    let data = ngon_interpolation(big_n)?;
    let nonneg = decide_nonnegative(&data.p, Domain::Global, NONNEG_TOL).is_yes();
    let value = serde_json::json!({
        "N": big_n,
        "degree": data.p.degree(),
        "expected_degree": 2 * big_n.div_ceil(4),
        "levels": data.levels.values(),
        "augmented": data.augmented,
        "chebyshev_coefficients": data.p.coeffs(),
        "interpolation_residual": data.interpolation_residual(),
        "nonnegative": nonneg,
    });
    println!("{}", serde_json::to_string_pretty(&value).map_err(Error::from)?);
    if nonneg {
        Ok(())
    } else {
        Err(Failure::Check("interpolant is not nonnegative".into()))
    }
}

fn figures(
    which: Figure,
    k: Option<usize>,
    big_n: Option<usize>,
    u: Option<f64>,
    step: f64,
    out: Option<&Path>,
) -> Outcome {
    if !(step.is_finite() && step > 0.0) {
        return Err(usage("--step must be positive"));
    }
    let need_n = || big_n.ok_or_else(|| usage("this figure needs --N"));
    let rows = match which {
        Figure::Arithmetic => {
            let k = k.ok_or_else(|| usage("arithmetic needs --k"))?;
            if k < 2 {
                return Err(usage("--k must be at least 2"));
            }
            let levels = LevelSequence::increasing((0..k).map(|i| i as f64).collect())?;
            tangent_samples(&vanishing_poly(&levels), 0.0, -0.5, k as f64 - 0.5, step)
        }
        Figure::Chebyshev => {
            let data = ngon_interpolation(need_n()?)?;
            tangent_samples(&data.q, data.levels.values()[0], -1.1, 1.1, step)
        }
        Figure::TangentLemma => {
            let n = need_n()?;
            let u = u.unwrap_or((std::f64::consts::PI / n as f64).cos());
            tangent_samples(&chebyshev(n), u, -1.2, 1.2, step)
        }
    };
    let mut csv = String::from("x,q,tangent\n");
    for (x, q, t) in rows {
        let _ = writeln!(csv, "{x},{q},{t}");
    }
    match out {
        Some(p) => std::fs::write(p, csv).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn verify(file: &Path, tol: Option<f64>) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    if text.trim_start().starts_with('{') {
        if let Ok(cert) = SosCertificate::from_json(&text) {
            let tol = tolerance(tol, 1e-8)?;
            let report = verify_certificate(&cert, tol);
            println!("{}", serde_json::to_string_pretty(&report).map_err(Error::from)?);
            return if report.passed { Ok(()) } else { Err(Failure::Check("certificate verification failed".into())) };
        }
    }
    let lift = match LiftDescription::from_json(&text) {
        Ok(l) => l,
        Err(_) => import_sdpa_str(&text).map_err(|e| usage(format!("{}: not a certificate or lift ({e})", file.display())))?,
    };
    let default = if lift.scheme == ngonlift::lift::LiftScheme::Hierarchy { 1e-8 } else { 1e-10 };
    let report = check_lift(&lift, tolerance(tol, default)?)?;
    print!("{}", lift_summary(&lift, &report));
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check("lift verification failed".into()))
    }
}
