//! End-to-end evaluation of a single parameter point.

use crate::entanglement::{duan_v12, EntanglementReport};
use crate::error::{Result, Stage};
use crate::fluctuation::build_system;
use crate::noise::diffusion_matrix;
use crate::params::{derive_couplings, validate, Couplings, PhysicalConstants, SystemParams, Warning};
use crate::steady_state::{absorption_coefficient, solve_steady_state, SteadyState};
use crate::transfer::{propagate, vacuum_input, SpectralCovariance};

/// Everything computed on the way to a report.
#[derive(Debug, Clone)]
pub struct PointResult {
    pub couplings: Couplings,
    pub steady_state: SteadyState,
    pub output: SpectralCovariance,
    pub report: EntanglementReport,
    pub warnings: Vec<Warning>,
}

impl PointResult {
    pub fn commutator_error(&self) -> f64 {
        self.output.commutator_error()
    }
}

pub fn evaluate_point(p: &SystemParams) -> Result<EntanglementReport> {
    evaluate_point_detailed(p).map(|r| r.report)
}

pub fn evaluate_point_detailed(p: &SystemParams) -> Result<PointResult> {
    let k = PhysicalConstants::default();
    p.check().map_err(|e| e.at(Stage::Couplings))?;
    let g = derive_couplings(p, &k).map_err(|e| e.at(Stage::Couplings))?;
    let s = solve_steady_state(p, &g).map_err(|e| e.at(Stage::SteadyState))?;
    let absorption = if p.alpha1.norm() > 0.0 {
        Some(absorption_coefficient(&s, p, &g).map_err(|e| e.at(Stage::SteadyState))?)
    } else {
        None
    };

    let input = vacuum_input(p.omega);
    // A dark state is decoupled from both fields: no absorption, no added
    // noise, and the drift has a zero mode at ω = 0.
    let output = if s.is_dark() {
        input
    } else {
        let sys = build_system(&s, p, &g, &k);
        let d = diffusion_matrix(&s, p, &g).map_err(|e| e.at(Stage::Diffusion))?;
        propagate(&sys, &d, &input, p)
            .map_err(|e| e.at(Stage::Transfer))?
            .output
    };

    let duan = duan_v12(&output).map_err(|e| e.at(Stage::Metrics))?;
    let report = EntanglementReport {
        v12: duan.v12,
        du2: duan.du2,
        dv2: duan.dv2,
        entangled: duan.entangled,
        absorption,
        omega: p.omega,
    };
    Ok(PointResult {
        couplings: g,
        steady_state: s,
        output,
        report,
        warnings: validate(p, &k),
    })
}
