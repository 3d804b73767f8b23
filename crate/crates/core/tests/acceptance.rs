//! Acceptance suite: one PASS/FAIL line per criterion, then a non-zero
//! exit if any criterion failed. Runs without the libtest harness so the
//! report is always printed.
//!
//! Lines tagged `info` are diagnostics, not criteria.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{euler_propagation, time_marched_steady_state};
use eie_core::basis::ALL_OPS;
use eie_core::fluctuation::generator_at;
use eie_core::linalg::{max_abs, C64};
use eie_core::transfer::{noise_prefactor, propagate_length};
use eie_core::*;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn sweep_points(preset: Preset, normalization: NoiseNormalization) -> Vec<(f64, SystemParams, Result<PointResult>)> {
    let base = SystemParams {
        noise_normalization: normalization,
        ..Default::default()
    };
    SweepSpec::preset(preset)
        .point_params(&base)
        .expect("preset specs are valid")
        .into_iter()
        .map(|(x, p)| {
            let r = evaluate_point_detailed(&p);
            (x, p, r)
        })
        .collect()
}

fn v12s(points: &[(f64, SystemParams, Result<PointResult>)]) -> Vec<Option<f64>> {
    points.iter().map(|(_, _, r)| r.as_ref().ok().map(|r| r.report.v12)).collect()
}

fn non_increasing(v: &[f64], tol: f64) -> Option<usize> {
    v.windows(2).position(|w| w[1] > w[0] + tol)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or("error".into(), |x| format!("{x:.6}"))
}

fn uncoupled_limit() -> Verdict {
    let empty = evaluate_point(&SystemParams {
        density: 0.0,
        ..Default::default()
    })
    .map(|r| r.v12);

    let p = SystemParams::default();
    let k = PhysicalConstants::default();
    let zero_length = (|| -> Result<f64> {
        let g = derive_couplings(&p, &k)?;
        let s = solve_steady_state(&p, &g)?;
        let d = diffusion_matrix(&s, &p, &g)?;
        let sys = build_system(&s, &p, &g, &k);
        let out = propagate_length(&sys, &d, &vacuum_input(0.0), &p, 0.0)?.output;
        Ok(duan_v12(&out)?.v12)
    })();
    let ok = |v: &Result<f64>| matches!(v, Ok(x) if (x - 4.0).abs() < 1e-10);
    verdict(
        ok(&empty) && ok(&zero_length),
        format!("V12(n=0) = {empty:?}, V12(L=0) = {zero_length:?}"),
    )
}

fn dark_state_limit() -> Verdict {
    let p = SystemParams {
        gamma12: 0.0,
        ..Default::default()
    };
    match evaluate_point_detailed(&p) {
        Ok(r) => {
            let s33 = r.steady_state.get(3, 3).norm();
            let abs = r.report.absorption.unwrap_or(f64::NAN);
            let pass = s33 < 1e-8 && abs.abs() < 1e-8 && (r.report.v12 - 4.0).abs() < 1e-8;
            verdict(pass, format!("σ33 = {s33:.3e}, absorption = {abs:.3e}, V12 = {}", r.report.v12))
        }
        Err(e) => verdict(false, format!("evaluation failed: {e}")),
    }
}

fn fig3_anchor(points: &[(f64, SystemParams, Result<PointResult>)]) -> Verdict {
    let at_1e19 = evaluate_point(&SystemParams::default()).map(|r| r.v12).ok();
    let v = v12s(points);
    let all: Option<Vec<f64>> = v.iter().cloned().collect();
    let monotone = all.as_deref().map(|v| non_increasing(v, 1e-6));
    let anchor_ok = matches!(at_1e19, Some(x) if x < 0.5);
    let monotone_ok = matches!(monotone, Some(None));
    let first = v.first().cloned().flatten();
    let last = v.last().cloned().flatten();
    verdict(
        anchor_ok && monotone_ok,
        format!(
            "V12(n=1e19) = {} (need < 0.5); V12 over [1e17, 2e19]: {} → {}, {}",
            fmt_opt(at_1e19),
            fmt_opt(first),
            fmt_opt(last),
            match monotone {
                Some(None) => "non-increasing".to_string(),
                Some(Some(i)) => format!("increases after n = {:.3e}", points[i].0),
                None => "some points failed".to_string(),
            }
        ),
    )
}

fn fig2_trend(points: &[(f64, SystemParams, Result<PointResult>)]) -> Verdict {
    let v = v12s(points);
    let abs: Vec<Option<f64>> = points
        .iter()
        .map(|(_, _, r)| r.as_ref().ok().and_then(|r| r.report.absorption))
        .collect();
    let first = v.first().cloned().flatten();
    let last = v.last().cloned().flatten();
    let min = v.iter().flatten().cloned().fold(f64::INFINITY, f64::min);
    let starts_above = matches!(first, Some(x) if x > 4.0);
    let crosses = min < 4.0;
    let ends_low = matches!(last, Some(x) if x < 0.5);
    let abs_all: Option<Vec<f64>> = abs.iter().cloned().collect();
    let abs_decreasing = abs_all
        .as_deref()
        .map(|a| a.windows(2).all(|w| w[1] < w[0]))
        .unwrap_or(false);
    verdict(
        starts_above && crosses && ends_low && abs_decreasing,
        format!(
            "V12 {} → {} (min {min:.6}): starts > 4 {starts_above}, crosses 4 {crosses}, ends < 0.5 {ends_low}; absorption {} → {} decreasing {abs_decreasing}",
            fmt_opt(first),
            fmt_opt(last),
            fmt_opt(abs.first().cloned().flatten()),
            fmt_opt(abs.last().cloned().flatten()),
        ),
    )
}

fn fig4_shape(points: &[(f64, SystemParams, Result<PointResult>)]) -> Verdict {
    let v = v12s(points);
    let at_zero = v[0];
    let zero_ok = matches!(at_zero, Some(x) if (x - 4.0).abs() < 1e-10);
    // Grid points on [0, 3]; the minimum must sit strictly inside.
    let window: Vec<(f64, Option<f64>)> = points
        .iter()
        .zip(&v)
        .filter(|((x, _, _), _)| *x <= 3.0)
        .map(|((x, _, _), v)| (*x, *v))
        .collect();
    let (argmin, min) = window
        .iter()
        .filter_map(|(x, v)| v.map(|v| (*x, v)))
        .fold((f64::NAN, f64::INFINITY), |acc, (x, v)| if v < acc.1 { (x, v) } else { acc });
    let interior = argmin > 0.0 && argmin < 3.0;
    let at_three = window.iter().find(|(x, _)| (*x - 3.0).abs() < 1e-12).and_then(|(_, v)| *v);
    let weakened = matches!(at_three, Some(x) if x > min);
    verdict(
        zero_ok && interior && weakened,
        format!(
            "V12(0) = {}; min on [0, 3] = {min:.6} at γ12 = {argmin} (interior {interior}); V12(3) = {} (> min {weakened})",
            fmt_opt(at_zero),
            at_three.map_or("error".into(), |x| format!("{x:.6e}")),
        ),
    )
}

fn commutators(sets: &[(&str, &[(f64, SystemParams, Result<PointResult>)])]) -> Verdict {
    let mut total = 0;
    let mut bad = Vec::new();
    for (name, pts) in sets {
        for (x, _, r) in pts.iter() {
            total += 1;
            match r {
                Ok(r) if r.commutator_error() < 1e-6 => {}
                Ok(r) => bad.push(format!("{name}@{x:.3e}: {:.2e}", r.commutator_error())),
                Err(e) => bad.push(format!("{name}@{x:.3e}: {e}")),
            }
        }
    }
    let shown: Vec<_> = bad.iter().take(3).cloned().collect();
    verdict(
        bad.is_empty(),
        format!(
            "{}/{} points within 1e-6{}",
            total - bad.len(),
            total,
            if bad.is_empty() {
                String::new()
            } else {
                format!("; failing e.g. {}", shown.join(", "))
            }
        ),
    )
}

fn oracle_equivalence() -> Verdict {
    let p = SystemParams::default();
    let k = PhysicalConstants::default();
    let g = derive_couplings(&p, &k).unwrap();
    let s = solve_steady_state(&p, &g).unwrap();

    let marched = time_marched_steady_state(&p, &g);
    let ss_dev = ALL_OPS
        .iter()
        .enumerate()
        .map(|(i, op)| (s.mean(*op) - marched[i]).norm())
        .fold(0.0, f64::max);

    let d = diffusion_matrix(&s, &p, &g).unwrap();
    let sys = build_system(&s, &p, &g, &k);
    let (gen, h) = generator_at(&sys, 0.0).unwrap();
    let q = h * d.d * h.transpose() * C64::new(noise_prefactor(&p, k.c), 0.0);
    let s0 = vacuum_input(0.0);
    let stepped = euler_propagation(&gen, &gen, &q, &s0.at_omega, p.length, 10_000);
    let closed = propagate(&sys, &d, &s0, &p).unwrap().output.at_omega;
    let prop_dev = max_abs(&(closed - stepped)) / max_abs(&stepped);

    verdict(
        ss_dev < 1e-8 && prop_dev < 1e-4,
        format!("steady state vs time marching {ss_dev:.2e} (< 1e-8); block exponential vs 10⁴-slice stepping {prop_dev:.2e} relative (< 1e-4)"),
    )
}

fn synthetic_fixture() -> Verdict {
    let mut worst = 0.0f64;
    for r in [0.0, 0.5, 1.0, 2.0] {
        let v = duan_v12(&two_mode_squeezed(r)).map(|d| d.v12).unwrap_or(f64::NAN);
        worst = worst.max((v - 4.0 * (-2.0 * r).exp()).abs());
    }
    verdict(worst < 1e-10, format!("max |V12 − 4e^(−2r)| over r ∈ {{0, 0.5, 1, 2}} = {worst:.2e}"))
}

fn literal_diagnostics() {
    for (preset, label) in [(Preset::Fig3, "fig3"), (Preset::Fig2, "fig2"), (Preset::Fig4, "fig4")] {
        let pts = sweep_points(preset, NoiseNormalization::Literal);
        let v = v12s(&pts);
        let comm = pts
            .iter()
            .filter_map(|(_, _, r)| r.as_ref().ok().map(|r| r.commutator_error()))
            .fold(0.0, f64::max);
        let min = v.iter().flatten().cloned().fold(f64::INFINITY, f64::min);
        println!(
            "info  literal (L/N)·D noise scaling, {label}: V12 {} → {}, min {min:.4}, worst commutator error {comm:.3e}",
            fmt_opt(v.first().cloned().flatten()),
            fmt_opt(v.last().cloned().flatten()),
        );
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fig3 = sweep_points(Preset::Fig3, NoiseNormalization::Commutator);
    let fig2 = sweep_points(Preset::Fig2, NoiseNormalization::Commutator);
    let fig4 = sweep_points(Preset::Fig4, NoiseNormalization::Commutator);

    let results = [
        ("uncoupled limit", uncoupled_limit()),
        ("dark-state limit", dark_state_limit()),
        ("density sweep anchor", fig3_anchor(&fig3)),
        ("intensity co-variation trend", fig2_trend(&fig2)),
        ("dephasing sweep shape", fig4_shape(&fig4)),
        (
            "commutator preservation",
            commutators(&[("fig3", &fig3), ("fig2", &fig2), ("fig4", &fig4)]),
        ),
        ("oracle equivalence", oracle_equivalence()),
        ("synthetic two-mode-squeezed fixture", synthetic_fixture()),
    ];

    println!();
    let mut failed = 0;
    for (i, (name, v)) in results.iter().enumerate() {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!v.pass);
        println!("criterion {} [{tag}] {name}: {}", i + 1, v.detail);
    }
    literal_diagnostics();
    println!(
        "acceptance: {} passed, {failed} failed ({:.2?})",
        results.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
