//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use ngonlift::interp::theta_rank_interpolant;
use ngonlift::lift::{
    build_chained_lift, build_single_block_lift, rotate_lift_point, verify_lift, vertex_lift_point, LiftDescription,
};
use ngonlift::lowerbound::{
    greedy_clustering_traced, is_valid_clustering, log_bound_max_size, refute_sos_valid, support_lower_bound,
    RefutationReport,
};
use ngonlift::momentmap::{moment_matrix, parse_expr, MomentMatrixSymbolic, Rat};
use ngonlift::poly::{decide_nonnegative, NONNEG_TOL};
use ngonlift::sdpa::{export_sdpa_string, sdpa_values};
use ngonlift::soscert::{
    hexagon_certificate, hierarchy_certificate, powers_of_two_certificate, powers_of_two_identity_residual,
    verify_certificate,
};
use ngonlift::{Domain, FrequencySet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let o = f();
    (o, t.elapsed())
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let cert = hexagon_certificate();
    let r = verify_certificate(&cert, 1e-12);
    let el = t.elapsed();
    outcome(
        r.passed && r.max_vertex_residual <= 1e-12 && el < Duration::from_millis(1),
        format!("max vertex residual {:.2e}, {:?}", r.max_vertex_residual, el),
    )
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_vertex: f64 = 0.0;
    let mut worst_identity: f64 = 0.0;
    let mut ok = true;
    for n in 2..=12u32 {
        let cert = match powers_of_two_certificate(n) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("n = {n}: {e}")),
        };
        let r = verify_certificate(&cert, 1e-10);
        ok &= r.passed;
        worst_vertex = worst_vertex.max(r.max_vertex_residual);
        for _ in 0..1000 {
            let theta = rng.random_range(-PI..PI);
            worst_identity = worst_identity.max(powers_of_two_identity_residual(n, theta));
        }
    }
    let el = t.elapsed();
    outcome(
        ok && worst_vertex <= 1e-10 && worst_identity <= 1e-10 && el < Duration::from_secs(5),
        format!("vertex residual {worst_vertex:.2e}, identity residual {worst_identity:.2e}, {el:?}"),
    )
}

fn matches_display(m: &MomentMatrixSymbolic, rows: &[&[&str]]) -> bool {
    m.dim() == rows.len()
        && rows.iter().enumerate().all(|(i, row)| {
            row.len() == m.dim() && row.iter().enumerate().all(|(j, cell)| parse_expr(cell).ok().as_ref() == Some(&m.entries[i][j]))
        })
}

fn criterion_3() -> Outcome {
    let build = |ks: &[i64], n: usize| moment_matrix(&FrequencySet::new(n, ks.iter().copied()), n).unwrap();
    let v1 = matches_display(&build(&[0, 1], 6), &[
        &["u0", "u1", "v1"],
        &["u1", "(u0 + u2)/2", "v2/2"],
        &["v1", "v2/2", "(u0 - u2)/2"],
    ]);
    let v2 = matches_display(&build(&[1, 3], 6), &[
        &["(u0 + u2)/2", "v2/2", "v2"],
        &["v2/2", "(u0 - u2)/2", "u2"],
        &["v2", "u2", "u0"],
    ]);
    let v = matches_display(&build(&[0, 1, 3], 6), &[
        &["u0", "u1", "v1", "v3"],
        &["u1", "(u0 + u2)/2", "v2/2", "v2"],
        &["v1", "v2/2", "(u0 - u2)/2", "u2"],
        &["v3", "v2", "u2", "u0"],
    ]);
    let sixteen = build(&[0, 1, 2, 4], 16).with_u0_one().scale(Rat::from_integer(2));
    let s16 = matches_display(&sixteen, &[
        &["2", "2u1", "2v1", "2u2", "2v2", "2u4", "2v4"],
        &["2u1", "1 + u2", "v2", "u1 + u3", "v1 + v3", "u3 + u5", "v3 + v5"],
        &["2v1", "v2", "1 - u2", "-v1 + v3", "u1 - u3", "-v3 + v5", "u3 - u5"],
        &["2u2", "u1 + u3", "-v1 + v3", "1 + u4", "v4", "u2 + u6", "v2 + v6"],
        &["2v2", "v1 + v3", "u1 - u3", "v4", "1 - u4", "-v2 + v6", "u2 - u6"],
        &["2u4", "u3 + u5", "-v3 + v5", "u2 + u6", "-v2 + v6", "1", "v8"],
        &["2v4", "v3 + v5", "u3 - u5", "v2 + v6", "u2 - u6", "v8", "1"],
    ]);
    outcome(
        v1 && v2 && v && s16,
        format!("hexagon V1 {v1}, V2 {v2}, V {v}; 16-gon (x2, u0 = 1) {s16}"),
    )
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for n in 3..=64usize {
        match theta_rank_interpolant(n) {
            Ok(p) => {
                use ngonlift::Univariate;
                if p.degree() != 2 * n.div_ceil(4) {
                    failures.push(format!("N = {n}: degree {}", p.degree()));
                }
                if !decide_nonnegative(&p, Domain::Global, NONNEG_TOL).is_yes() {
                    failures.push(format!("N = {n}: not nonnegative"));
                }
            }
            Err(e) => failures.push(format!("N = {n}: {e}")),
        }
        match hierarchy_certificate(n) {
            Ok(cert) => {
                let r = verify_certificate(&cert, 1e-8);
                worst = worst.max(r.max_vertex_residual);
                if !r.passed {
                    failures.push(format!("N = {n}: certificate residual {:.2e}", r.max_vertex_residual));
                }
            }
            Err(e) => failures.push(format!("N = {n}: {e}")),
        }
    }
    let el = t.elapsed();
    let ok = failures.is_empty() && el < Duration::from_secs(10);
    let detail = if failures.is_empty() {
        format!("N = 3..64, worst residual {worst:.2e}, {el:?}")
    } else {
        failures.join("; ")
    };
    outcome(ok, detail)
}

fn criterion_5(reports: &mut Vec<RefutationReport>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut hits = 0;
    let mut total = 0;
    for n in 8..=64usize {
        total += 1;
        let k = FrequencySet::interval(n, n.div_ceil(4) - 1);
        if let Ok(Some(r)) = refute_sos_valid(&k, &mut rng) {
            if r.clusters.len() == 1 {
                hits += 1;
            }
            reports.push(r);
        }
    }
    outcome(hits == total, format!("{hits}/{total} single-cluster refutations"))
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut at_ten = Duration::ZERO;
    let mut worst_eig = f64::INFINITY;
    let mut worst_gram: f64 = 0.0;
    for n in 2..=10u32 {
        let t = Instant::now();
        let cert = powers_of_two_certificate(n).unwrap();
        for lift in [build_chained_lift(n).unwrap(), build_single_block_lift(n).unwrap()] {
            let r = verify_lift(&lift, &cert);
            worst_eig = worst_eig.min(r.vertex_feasibility.worst);
            worst_gram = worst_gram.max(r.gram_reproduction.worst).max(r.rotated_facets.worst);
            if !r.passed {
                failures.push(format!("n = {n} {}", lift.scheme));
            }
        }
        if n == 10 {
            at_ten = t.elapsed();
        }
    }
    outcome(
        failures.is_empty() && at_ten < Duration::from_secs(30),
        if failures.is_empty() {
            format!("min eigenvalue {worst_eig:.2e}, Gram residual {worst_gram:.2e}, n = 10 in {at_ten:?}")
        } else {
            failures.join("; ")
        },
    )
}

fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=8u32 {
        let lifts: [LiftDescription; 2] = [build_chained_lift(n).unwrap(), build_single_block_lift(n).unwrap()];
        for lift in &lifts {
            let big_n = lift.n;
            for i in 1..=big_n {
                let p = vertex_lift_point(lift, i).unwrap();
                let q = vertex_lift_point(lift, i % big_n + 1).unwrap();
                worst = worst.max(rotate_lift_point(&p, 1).max_diff(&q));
            }
        }
    }
    outcome(worst <= 1e-12, format!("max deviation {worst:.2e}"))
}

fn criterion_8(sets: &mut Vec<FrequencySet>) -> Outcome {
    let n = 1usize << 20;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let max_size = log_bound_max_size(n);
    for _ in 0..1000 {
        let size = rng.random_range(1..=max_size);
        let picks = rand::seq::index::sample(&mut rng, n, size);
        sets.push(FrequencySet::new(n, picks.iter().map(|x| x as i64)));
    }
    let t = Instant::now();
    let mut valid = 0;
    let mut breaches = 0;
    for k in sets.iter() {
        let trace = greedy_clustering_traced(k);
        breaches += usize::from(!trace.breaches.is_empty());
        if trace.clustering.as_ref().is_some_and(is_valid_clustering) {
            valid += 1;
        }
    }
    let el = t.elapsed();
    outcome(
        valid == 1000 && breaches == 0 && el < Duration::from_secs(5),
        format!("{valid}/1000 valid, |K| <= {max_size}, {breaches} invariant breaches, {el:?}"),
    )
}

fn criterion_9(reports: &mut Vec<RefutationReport>, sets: &[FrequencySet]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut errors = 0;
    for k in sets {
        match refute_sos_valid(k, &mut rng) {
            Ok(Some(r)) => reports.push(r),
            Ok(None) => {}
            Err(_) => errors += 1,
        }
    }
    let mut worst_ell: f64 = 0.0;
    let mut min_h2 = f64::INFINITY;
    for r in reports.iter() {
        worst_ell = worst_ell.max((r.l_ell - ((PI / r.n as f64).cos() - 1.0)).abs());
        min_h2 = min_h2.min(r.min_l_h2);
    }
    outcome(
        errors == 0 && worst_ell <= 1e-14 && min_h2 >= -1e-10,
        format!("{} refutations, |L(ell) - (cos(pi/N) - 1)| <= {worst_ell:.2e}, min Re L(|h|^2) {min_h2:.2e}", reports.len()),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut ok = 0;
    for n in 2..=20u32 {
        let cert = powers_of_two_certificate(n).unwrap();
        let size = cert.support().len();
        let big_n = 1usize << n;
        let bound_ok = size == n as usize && size as f64 >= support_lower_bound(big_n);
        let none = matches!(refute_sos_valid(&cert.hermitian_support(), &mut rng), Ok(None));
        if bound_ok && none {
            ok += 1;
        }
    }
    outcome(ok == 19, format!("{ok}/19 supports consistent"))
}

fn criterion_11() -> Outcome {
    let allowed = [0.0, 1.0, -1.0, 0.5, -0.5];
    let mut bad = Vec::new();
    for n in 2..=12u32 {
        let text = export_sdpa_string(&build_chained_lift(n).unwrap());
        match sdpa_values(&text) {
            Ok(vals) => {
                for v in vals {
                    let f = ngonlift::momentmap::rat_to_f64(v);
                    if !allowed.contains(&f) {
                        bad.push(format!("n = {n}: {v}"));
                    }
                }
            }
            Err(e) => bad.push(format!("n = {n}: {e}")),
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "n = 2..12".into() } else { bad.join("; ") })
}

fn main() {
    let mut reports = Vec::new();
    let mut sets = Vec::new();
    let mut results: Vec<(usize, &str, Outcome, Duration)> = Vec::new();
    let (o, d) = timed(criterion_1);
    results.push((1, "hexagon certificate", o, d));
    let (o, d) = timed(criterion_2);
    results.push((2, "powers-of-two certificates", o, d));
    let (o, d) = timed(criterion_3);
    results.push((3, "exact moment matrices", o, d));
    let (o, d) = timed(criterion_4);
    results.push((4, "theta-rank interpolants", o, d));
    let (o, d) = timed(|| criterion_5(&mut reports));
    results.push((5, "interval refutations", o, d));
    let (o, d) = timed(criterion_6);
    results.push((6, "lift verification", o, d));
    let (o, d) = timed(criterion_7);
    results.push((7, "rotation of vertex lifts", o, d));
    let (o, d) = timed(|| criterion_8(&mut sets));
    results.push((8, "greedy clustering at N = 2^20", o, d));
    let (o, d) = timed(|| criterion_9(&mut reports, &sets));
    results.push((9, "separating functional", o, d));
    let (o, d) = timed(criterion_10);
    results.push((10, "support size consistency", o, d));
    let (o, d) = timed(criterion_11);
    results.push((11, "exact SDPA coefficients", o, d));

    let mut failed = 0;
    for (i, name, o, d) in &results {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!o.passed);
        println!("{tag} criterion {i:>2} {name}: {} [{d:.2?}]", o.detail);
    }
    println!("{} passed, {} failed", results.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
