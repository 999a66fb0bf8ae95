//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fef_core::bloch::{decompose, reconstruct};
use fef_core::distill::{reduction_criterion, FilteringCurves, RhoXFamily};
use fef_core::fef::{fef_two_qubit_bell, fef_two_qubit_kyfan, fef_upper_bound};
use fef_core::generators::GeneratorBasis;
use fef_core::linalg::max_abs_diff;
use fef_core::oracle::{oracle_fef, OracleConfig};
use fef_core::sampling::{haar_pure_state, random_density_matrix, random_orthogonal, random_unitary};
use fef_core::state::{example_family_rho_x, unnormalized_family_rho_x, Bipartite, DensityMatrix};
use fef_core::tripartite::{
    concurrence_ab_c, concurrence_bound_check, w_closed_forms, w_line_row, TriPureState, WParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Runs `f`, failing it if it exceeds `budget`.
fn run(id: u32, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            o.pass = false;
            o.detail += &format!("; over runtime budget {:.0?}", b);
        }
    }
    println!(
        "[{}] criterion {id}: {name} ({:.2?}) {}",
        if o.pass { "PASS" } else { "FAIL" },
        elapsed,
        o.detail
    );
    o.pass
}

fn criterion_1() -> Outcome {
    let mut worst_p: f64 = 0.0;
    let mut worst_mixed: f64 = 0.0;
    for d in 2..=4 {
        let basis = GeneratorBasis::build(d).unwrap();
        let p = DensityMatrix::max_entangled_projector(d).unwrap();
        worst_p = worst_p.max((fef_upper_bound(&p, &basis).unwrap() - 1.0).abs());
        let mixed = DensityMatrix::maximally_mixed(d, d).unwrap();
        worst_mixed = worst_mixed.max((fef_upper_bound(&mixed, &basis).unwrap() - 1.0 / (d * d) as f64).abs());
    }
    outcome(
        worst_p < 1e-10 && worst_mixed < 1e-12,
        format!("max |bound(P+) - 1| = {worst_p:.1e}, max |bound(I/d^2) - 1/d^2| = {worst_mixed:.1e}"),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    let states: Vec<DensityMatrix> = (0..1000).map(|_| random_density_matrix(2, 2, &mut rng)).collect();
    let basis = GeneratorBasis::build(2).unwrap();
    let rows: Vec<(f64, f64, f64, f64)> = states
        .par_iter()
        .enumerate()
        .map(|(i, rho)| {
            let kf = fef_two_qubit_kyfan(rho).unwrap();
            let bell = fef_two_qubit_bell(rho).unwrap();
            let oracle = oracle_fef(rho, &OracleConfig::with_seed(i as u64)).unwrap().best_value;
            let det = fef_core::bloch::correlation_matrix(rho, &basis).unwrap().determinant();
            (kf, bell, oracle, det)
        })
        .collect();

    let kf_bell_fail: Vec<&(f64, f64, f64, f64)> = rows.iter().filter(|r| (r.0 - r.1).abs() > 1e-9).collect();
    let fail_with_positive_det = kf_bell_fail.iter().filter(|r| r.3 > 0.0).count();
    let positive_det = rows.iter().filter(|r| r.3 > 0.0).count();
    let oracle_vs_kf = rows
        .iter()
        .filter(|r| !(r.2 >= r.0 - 1e-4 && r.2 <= r.0 + 1e-9))
        .count();
    let oracle_vs_bell = rows
        .iter()
        .filter(|r| !(r.2 >= r.1 - 1e-4 && r.2 <= r.1 + 1e-9))
        .count();
    let worst = kf_bell_fail.iter().map(|r| r.0 - r.1).fold(0.0, f64::max);
    println!(
        "    diagnostic: kyfan != bell on {} of 1000 states ({} of them with det M > 0; {} states have det M > 0); \
         largest kyfan - bell = {worst:.3e}",
        kf_bell_fail.len(),
        fail_with_positive_det,
        positive_det
    );
    println!(
        "    diagnostic: oracle outside [kyfan - 1e-4, kyfan + 1e-9] on {oracle_vs_kf} states; \
         outside [bell - 1e-4, bell + 1e-9] on {oracle_vs_bell} states"
    );
    outcome(
        kf_bell_fail.is_empty() && oracle_vs_kf == 0 && oracle_vs_bell == 0,
        format!(
            "kyfan=bell failures {}, oracle/kyfan failures {oracle_vs_kf}, oracle/bell failures {oracle_vs_bell}",
            kf_bell_fail.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let expected = [0.0722, 0.9278, 0.1188, 0.8811];
    let curves = FilteringCurves::new(RhoXFamily::Unnormalized).unwrap();
    // the sweep itself, then the bisection
    let rows: Vec<_> = (0..=1000)
        .into_par_iter()
        .map(|k| curves.row(k as f64 / 1000.0).unwrap())
        .collect();
    let t = curves.thresholds(1000, 1e-6).unwrap();
    let got = [t.fidelity_low, t.fidelity_high, t.bound_low, t.bound_high];
    let worst = got.iter().zip(expected).map(|(g, e)| (g - e).abs()).fold(0.0, f64::max);

    let lit = FilteringCurves::new(RhoXFamily::UnitTrace)
        .unwrap()
        .thresholds(1000, 1e-6)
        .unwrap();
    println!(
        "    diagnostic: unit-trace family crossings fidelity {:.4}/{:.4}, bound {:.4}/{:.4}",
        lit.fidelity_low, lit.fidelity_high, lit.bound_low, lit.bound_high
    );
    outcome(
        worst <= 2e-3 && rows.len() == 1001 && rows[0].fidelity_minus_third > 0.0 && !worst.is_nan(),
        format!(
            "unnormalized family crossings fidelity {:.4}/{:.4}, bound {:.4}/{:.4}; max deviation {worst:.1e}",
            got[0], got[1], got[2], got[3]
        ),
    )
}

fn criterion_4() -> Outcome {
    let target = -2.0 / 27.0;
    let worst = (0..=100)
        .map(|k| {
            let r = reduction_criterion(&unnormalized_family_rho_x(k as f64 / 100.0).unwrap()).unwrap();
            (r.side_a - target).abs()
        })
        .fold(0.0, f64::max);
    let literal_worst = (0..=100)
        .map(|k| {
            let r = reduction_criterion(&example_family_rho_x(k as f64 / 100.0).unwrap()).unwrap();
            (r.side_a - target).abs()
        })
        .fold(0.0, f64::max);
    println!("    diagnostic: unit-trace family max |min eig + 2/27| = {literal_worst:.3e}");
    outcome(
        worst < 1e-9,
        format!("unnormalized family max |min eig + 2/27| = {worst:.1e} over 101 points"),
    )
}

fn criterion_5() -> Outcome {
    let basis = GeneratorBasis::build(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5005);
    let states: Vec<TriPureState> = (0..1000)
        .map(|_| TriPureState::from_slice(&haar_pure_state(8, &mut rng)).unwrap())
        .collect();
    let min_slack = states
        .par_iter()
        .map(|psi| concurrence_bound_check(psi, &basis).unwrap().slack)
        .reduce(|| f64::INFINITY, f64::min);

    let gamma_max = std::f64::consts::FRAC_1_SQRT_2;
    let max_sat = (0..200)
        .map(|k| {
            let g = gamma_max * k as f64 / 199.0;
            let t = concurrence_bound_check(&TriPureState::w(&WParams::symmetric(g).unwrap()), &basis).unwrap();
            t.slack.abs()
        })
        .fold(0.0, f64::max);
    let gap = concurrence_bound_check(&TriPureState::w(&WParams::symmetric(0.9).unwrap()), &basis)
        .unwrap()
        .slack;
    let row = w_line_row(0.9, &basis).unwrap();
    outcome(
        min_slack >= -1e-9 && max_sat < 1e-9 && gap > 0.0 && row.fef_n < row.bound,
        format!("min slack {min_slack:.3e} on 1000 states; max |slack| on saturation line {max_sat:.1e}; slack at gamma=0.9 {gap:.4}"),
    )
}

fn criterion_6() -> Outcome {
    let basis = GeneratorBasis::build(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6006);
    let mut worst_f: f64 = 0.0;
    let mut worst_c: f64 = 0.0;
    for _ in 0..500 {
        let v: [f64; 3] = [rng.random(), rng.random(), rng.random()];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let p = WParams::new(v[0] / n, v[1] / n, v[2] / n).unwrap();
        let phases: [f64; 3] = [0, 1, 2].map(|_| rng.random::<f64>() * std::f64::consts::TAU);
        let psi = TriPureState::w_phased(&p, phases);
        let closed = w_closed_forms(&p);
        worst_f = worst_f.max((closed.fef_n - concurrence_bound_check(&psi, &basis).unwrap().fef_n).abs());
        worst_c = worst_c.max((closed.concurrence - concurrence_ab_c(&psi).unwrap()).abs());
    }
    outcome(
        worst_f < 1e-9 && worst_c < 1e-9,
        format!("max closed-form deviation: fef_n {worst_f:.1e}, concurrence {worst_c:.1e}"),
    )
}

fn criterion_7() -> Outcome {
    let completeness = (2..=4)
        .map(|d| GeneratorBasis::build(d).unwrap().check_completeness())
        .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(7007);
    let mut round_trip: f64 = 0.0;
    let mut rot_dev: f64 = 0.0;
    let mut local_dev: f64 = 0.0;
    for d in [2, 3] {
        let basis = GeneratorBasis::build(d).unwrap();
        for _ in 0..100 {
            let rho = random_density_matrix(d, d, &mut rng);
            let back = reconstruct(&decompose(&rho, &basis).unwrap(), &basis).unwrap();
            round_trip = round_trip.max(max_abs_diff(back.matrix(), rho.matrix()));

            let bound = fef_upper_bound(&rho, &basis).unwrap();
            let rotated = basis.rotate(&random_orthogonal(d * d - 1, &mut rng)).unwrap();
            rot_dev = rot_dev.max((fef_upper_bound(&rho, &rotated).unwrap() - bound).abs());
            let moved = rho.rotate_side_b(&random_unitary(d, &mut rng)).unwrap();
            local_dev = local_dev.max((fef_upper_bound(&moved, &basis).unwrap() - bound).abs());
        }
    }
    outcome(
        completeness < 1e-12 && round_trip < 1e-10 && rot_dev < 1e-9 && local_dev < 1e-9,
        format!(
            "completeness {completeness:.1e}; round trip {round_trip:.1e}; basis rotation {rot_dev:.1e}; side-B unitary {local_dev:.1e}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for d in [2, 3] {
        let basis = GeneratorBasis::build(d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8000 + d as u64);
        let states: Vec<DensityMatrix> = (0..200).map(|_| random_density_matrix(d, d, &mut rng)).collect();
        let max_excess = states
            .par_iter()
            .enumerate()
            .map(|(i, rho)| {
                let o = oracle_fef(rho, &OracleConfig::with_seed(i as u64)).unwrap().best_value;
                o - fef_upper_bound(rho, &basis).unwrap()
            })
            .reduce(|| f64::NEG_INFINITY, f64::max);
        pass &= max_excess <= 1e-7;
        details.push(format!("d={d} max(oracle - bound) = {max_excess:.3e}"));
    }
    outcome(pass, details.join("; "))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        run(1, "bound exact at P+ and I/d^2", Some(secs(1)), criterion_1),
        run(
            2,
            "two-qubit kyfan = bell = oracle on 1000 states",
            Some(secs(240)),
            criterion_2,
        ),
        run(3, "filtering-curve sign changes", Some(secs(30)), criterion_3),
        run(4, "reduction eigenvalue constant -2/27", Some(secs(5)), criterion_4),
        run(5, "three-qubit concurrence inequality", Some(secs(60)), criterion_5),
        run(6, "W-state closed forms", None, criterion_6),
        run(7, "structural invariants", None, criterion_7),
        run(8, "oracle below bound, d=2 and d=3", Some(secs(900)), criterion_8),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
