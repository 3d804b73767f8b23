//! Linearized frequency-domain dynamics of the atomic and field fluctuations.
//!
//! Fourier convention `δσ(t) = ∫ δσ(ω) e^{−iωt} dω/2π`, so `d/dt → −iω`.
//! The field entries `δa†(ω)` stand for `[δa(−ω)]†`, which lets every matrix
//! close at a single ω.

use crate::basis::{ATOMIC_BASIS, ATOMIC_SWAP, FIELD_SWAP};
use crate::drift::Drift;
use crate::error::{Error, Result};
use crate::linalg::{condition_number, max_abs, Mat4, Mat4x8, Mat8, Mat8x4, I};
use crate::params::{Couplings, PhysicalConstants, SystemParams};
use crate::steady_state::{reduce, SteadyState};

pub const MAX_CONDITION: f64 = 1e12;
pub const RESOLVENT_RESIDUAL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationSystem {
    /// `M`: drift of the atomic fluctuations (rad·μs⁻¹).
    pub drift: Mat8,
    /// `B`: coupling of field fluctuations into the atomic equations (rad·μs⁻¹).
    pub field_coupling: Mat8x4,
    /// `K`: atomic polarization source in the propagation equations (m⁻¹).
    pub back_action: Mat4x8,
    /// Speed of light, m·μs⁻¹.
    pub light_speed: f64,
}

pub fn build_system(
    s: &SteadyState,
    p: &SystemParams,
    g: &Couplings,
    k: &PhysicalConstants,
) -> FluctuationSystem {
    let table = Drift::new(p, g);
    let (drift, _) = reduce(&table.mean_field(p.alpha1, p.alpha2));

    // Each term coeff·f·σ contributes coeff·⟨σ⟩ to the δf column.
    let mut field_coupling = Mat8x4::zeros();
    for (row, op) in ATOMIC_BASIS.iter().enumerate() {
        for term in table.terms(*op) {
            if let Some(f) = term.field {
                field_coupling[(row, f.index())] += term.coeff * s.mean(term.op);
            }
        }
    }

    let n = p.atom_number();
    let mut back_action = Mat4x8::zeros();
    back_action[(0, 4)] = I * (g.g1 * n / k.c);
    back_action[(1, 5)] = -I * (g.g1 * n / k.c);
    back_action[(2, 6)] = I * (g.g2 * n / k.c);
    back_action[(3, 7)] = -I * (g.g2 * n / k.c);

    FluctuationSystem {
        drift,
        field_coupling,
        back_action,
        light_speed: k.c,
    }
}

impl FluctuationSystem {
    /// Largest entrywise deviation from `M = Jₐ conj(M) Jₐ`,
    /// `B = Jₐ conj(B) J_f`, `K = J_f conj(K) Jₐ`.
    pub fn conjugation_defect(&self) -> f64 {
        use crate::linalg::conj_permuted;
        let dm = self.drift - conj_permuted(&self.drift, &ATOMIC_SWAP, &ATOMIC_SWAP);
        let db = self.field_coupling
            - conj_permuted(&self.field_coupling, &ATOMIC_SWAP, &FIELD_SWAP);
        let dk =
            self.back_action - conj_permuted(&self.back_action, &FIELD_SWAP, &ATOMIC_SWAP);
        max_abs(&dm).max(max_abs(&db)).max(max_abs(&dk))
    }
}

/// `R(ω) = (−iω·I − M)⁻¹`.
pub fn sigma_response(sys: &FluctuationSystem, omega: f64) -> Result<Mat8> {
    let a = Mat8::identity() * (-I * omega) - sys.drift;
    let condition = condition_number(&a);
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned {
            context: "atomic response (−iω − M)",
            condition,
            regime: "−iω is (nearly) an eigenvalue of the drift, e.g. γ12 = 0 at ω = 0",
        });
    }
    let r = a.try_inverse().ok_or(Error::IllConditioned {
        context: "atomic response (−iω − M)",
        condition,
        regime: "singular matrix",
    })?;
    let residual = max_abs(&(a * r - Mat8::identity()));
    if !(residual < RESOLVENT_RESIDUAL) {
        return Err(Error::IllConditioned {
            context: "atomic response residual",
            condition,
            regime: "inverse failed its residual check",
        });
    }
    Ok(r)
}

/// `G = (iω/c)·I + K·R·B` and `H = K·R`, so that
/// `∂z δa = G·δa + H·F`.
pub fn propagation_generator(sys: &FluctuationSystem, r: &Mat8, omega: f64) -> (Mat4, Mat4x8) {
    let h = sys.back_action * r;
    let g = Mat4::identity() * (I * (omega / sys.light_speed)) + h * sys.field_coupling;
    (g, h)
}

/// Both generators at once, with the noise term unused.
pub fn generator_at(sys: &FluctuationSystem, omega: f64) -> Result<(Mat4, Mat4x8)> {
    let r = sigma_response(sys, omega)?;
    Ok(propagation_generator(sys, &r, omega))
}

/// `max Re λ(M)`.
pub fn drift_abscissa(sys: &FluctuationSystem) -> f64 {
    crate::linalg::eigenvalues(&sys.drift)
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}
