//! Langevin diffusion coefficients from the generalized Einstein relation.
//!
//! For the relaxation model used here (population decay `γ1`, `γ2` from
//! level 3, optical coherences decaying at `γ13 = γ23`, ground coherence at
//! `γ12`) the Einstein relation
//!
//! ```text
//! 2D_{ij,kl} = d/dt⟨σ_ij σ_kl⟩ − ⟨A_ij σ_kl⟩ − ⟨σ_ij A_kl⟩
//! ```
//!
//! reduces to a closed form: the coherent (Rabi) terms cancel and only the
//! damping rates survive,
//!
//! ```text
//! 2D_{ij,kl} = δ_jk[(λ_ij + λ_kl − λ_il)⟨σ_il⟩ + δ_il f_i⟨σ33⟩]
//!            − δ_ij δ_k3 f_i⟨σ_3l⟩ − δ_kl δ_j3 f_k⟨σ_i3⟩
//! ```
//!
//! with `λ` the decay rate of each element (`λ12 = γ12`, `λ13 = λ23 = γ13`,
//! `λ33 = γ1+γ2`, populations of the ground levels zero) and `f1 = γ1`,
//! `f2 = γ2` the feeding rates out of level 3.

use crate::basis::{AtomicOp, ATOMIC_BASIS, ATOMIC_SWAP, S33};
use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_min_eigenvalue, Mat8, C64};
use crate::params::{Couplings, SystemParams};
use crate::steady_state::{SteadyState, RESIDUAL_TOLERANCE};

/// `D` over the atomic fluctuation ordering; entry `(a, b)` belongs to the
/// pair `(F_a, F_b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionMatrix {
    pub d: Mat8,
}

impl DiffusionMatrix {
    /// `⟨F_a F_b†⟩` up to the positive noise prefactor: `2D_{a, J(b)}`.
    pub fn gram(&self) -> Mat8 {
        Mat8::from_fn(|a, b| self.d[(a, ATOMIC_SWAP[b])] * 2.0)
    }

    /// Smallest eigenvalue of the Hermitian part of [`Self::gram`].
    pub fn gram_min_eigenvalue(&self) -> f64 {
        hermitian_min_eigenvalue(&self.gram())
    }

    /// Largest deviation from `D_{ij,kl} = conj(D_{lk,ji})`.
    pub fn conjugation_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..8 {
            for b in 0..8 {
                let mirrored = self.d[(ATOMIC_SWAP[b], ATOMIC_SWAP[a])].conj();
                worst = worst.max((self.d[(a, b)] - mirrored).norm());
            }
        }
        worst
    }
}

fn decay_rate(op: AtomicOp, p: &SystemParams) -> f64 {
    let (i, j) = (op.row.min(op.col), op.row.max(op.col));
    match (i, j) {
        (1, 2) => p.gamma12,
        (1, 3) => p.gamma13(),
        (2, 3) => p.gamma23(),
        (3, 3) => p.gamma1 + p.gamma2,
        _ => 0.0,
    }
}

fn feed_rate(level: u8, p: &SystemParams) -> f64 {
    match level {
        1 => p.gamma1,
        2 => p.gamma2,
        _ => 0.0,
    }
}

/// Closed-form `D`; no residual gate. See [`diffusion_matrix`].
pub fn diffusion_closed_form(s: &SteadyState, p: &SystemParams) -> DiffusionMatrix {
    let mean = |i: u8, j: u8| s.mean(AtomicOp::new(i, j));
    let s33 = s.mean(S33);
    let mut d = Mat8::zeros();
    for (a, x) in ATOMIC_BASIS.iter().enumerate() {
        for (b, y) in ATOMIC_BASIS.iter().enumerate() {
            let (i, j, k, l) = (x.row, x.col, y.row, y.col);
            let mut v = C64::new(0.0, 0.0);
            if j == k {
                let il = AtomicOp::new(i, l);
                let lam = decay_rate(*x, p) + decay_rate(*y, p) - decay_rate(il, p);
                v += c(lam) * mean(i, l);
                if i == l {
                    v += c(feed_rate(i, p)) * s33;
                }
            }
            if i == j && k == 3 {
                v -= c(feed_rate(i, p)) * mean(3, l);
            }
            if k == l && j == 3 {
                v -= c(feed_rate(k, p)) * mean(i, 3);
            }
            d[(a, b)] = v * 0.5;
        }
    }
    DiffusionMatrix { d }
}

/// Diffusion coefficients at a steady state, which must pass its residual
/// check (the Einstein relation only holds at a fixed point).
pub fn diffusion_matrix(
    s: &SteadyState,
    p: &SystemParams,
    g: &Couplings,
) -> Result<DiffusionMatrix> {
    let residual = s.residual(p, g);
    if !(residual < RESIDUAL_TOLERANCE) {
        return Err(Error::Residual {
            residual,
            tolerance: RESIDUAL_TOLERANCE,
        });
    }
    Ok(diffusion_closed_form(s, p))
}
