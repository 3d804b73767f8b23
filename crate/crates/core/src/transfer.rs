//! Propagation of the field-fluctuation spectra through the medium.
//!
//! Along z the spectral covariance obeys the Lyapunov-type equation
//!
//! ```text
//! dS(ω)/dz = G(ω)·S + S·G(−ω)ᵀ + Q(ω),   Q(ω) = κ·H(ω)·D·H(−ω)ᵀ
//! ```
//!
//! solved in closed form with a block-exponential (Van Loan) construction.
//! Large optical depths are handled by slicing the medium into `2^k` equal
//! pieces with `‖G‖·h ≤ 1` and composing the slices by repeated doubling.

use crate::basis::FIELD_SWAP;
use crate::error::{Error, Result};
use crate::fluctuation::{generator_at, FluctuationSystem};
use crate::linalg::{all_finite, c, hermitian_min_eigenvalue, max_abs, Mat4, Mat4x8, C64};
use crate::noise::DiffusionMatrix;
use crate::params::{NoiseNormalization, SystemParams};
use nalgebra::SMatrix;

type Mat8Block = SMatrix<C64, 8, 8>;

/// Canonical commutators `[A_a, A_b]` over `[a1, a1†, a2, a2†]`.
pub fn commutator_matrix() -> Mat4 {
    let mut m = Mat4::zeros();
    m[(0, 1)] = c(1.0);
    m[(1, 0)] = c(-1.0);
    m[(2, 3)] = c(1.0);
    m[(3, 2)] = c(-1.0);
    m
}

/// `S_ab(ω)` with `⟨δA_a(ω) δA_b(ω′)⟩ = 2π S_ab(ω) δ(ω+ω′)`, stored at
/// `+ω` and `−ω` so that both operator orderings are available.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCovariance {
    pub omega: f64,
    pub at_omega: Mat4,
    pub at_mirror: Mat4,
}

impl SpectralCovariance {
    /// Ordering-averaged covariance `(S(ω) + S(−ω)ᵀ)/2`.
    pub fn symmetrized(&self) -> Mat4 {
        (self.at_omega + self.at_mirror.transpose()).scale(0.5)
    }

    /// `S(ω) − S(−ω)ᵀ`: the commutator part, canonically
    /// [`commutator_matrix`].
    pub fn commutators(&self) -> Mat4 {
        self.at_omega - self.at_mirror.transpose()
    }

    /// Largest absolute deviation of [`Self::commutators`] from canonical.
    pub fn commutator_error(&self) -> f64 {
        max_abs(&(self.commutators() - commutator_matrix()))
    }

    /// Largest deviation from `S_ab = conj(S_{J(b), J(a)})`, the statement
    /// that `(A_a A_b)† = A_{J(b)} A_{J(a)}`.
    pub fn conjugation_defect(&self) -> f64 {
        let mirrored = |s: &Mat4| Mat4::from_fn(|a, b| s[(FIELD_SWAP[b], FIELD_SWAP[a])].conj());
        max_abs(&(self.at_omega - mirrored(&self.at_omega)))
            .max(max_abs(&(self.at_mirror - mirrored(&self.at_mirror))))
    }

    /// Smallest eigenvalue of the (Hermitian part of the) normally ordered
    /// Gram matrix `⟨A_a A_b†⟩ = S_{a, J(b)}`. Non-negative for any state
    /// obeying the uncertainty principle.
    pub fn heisenberg_min_eigenvalue(&self) -> f64 {
        let gram = Mat4::from_fn(|a, b| self.at_omega[(a, FIELD_SWAP[b])]);
        hermitian_min_eigenvalue(&gram)
    }

    pub fn is_finite(&self) -> bool {
        all_finite(&self.at_omega) && all_finite(&self.at_mirror)
    }
}

/// Coherent-state input: `⟨δa δa†⟩ = 1` on both modes, everything else 0.
pub fn vacuum_input(omega: f64) -> SpectralCovariance {
    let mut s = Mat4::zeros();
    s[(0, 1)] = c(1.0);
    s[(2, 3)] = c(1.0);
    SpectralCovariance {
        omega,
        at_omega: s,
        at_mirror: s,
    }
}

/// Transfer of one frequency component across a length of medium.
#[derive(Debug, Clone, PartialEq)]
pub struct Slab {
    /// `E(ω) = exp(G(ω)·L)`.
    pub transfer: Mat4,
    /// `E(−ω)ᵀ`.
    pub mirror_transfer_t: Mat4,
    /// Added noise `∫ E(ω,L−z) Q E(−ω,L−z)ᵀ dz`.
    pub noise: Mat4,
}

impl Slab {
    /// Output for a given input at this frequency.
    pub fn apply(&self, s_in: &Mat4) -> Mat4 {
        self.transfer * s_in * self.mirror_transfer_t + self.noise
    }

    /// This slab followed by `next`.
    pub fn then(&self, next: &Slab) -> Slab {
        Slab {
            transfer: next.transfer * self.transfer,
            mirror_transfer_t: self.mirror_transfer_t * next.mirror_transfer_t,
            noise: next.apply(&self.noise),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferResult {
    pub output: SpectralCovariance,
    /// `E(ω)` over the full length.
    pub transfer: Mat4,
    /// Added noise at `+ω` alone.
    pub noise_contribution: Mat4,
    /// Number of doublings used (`2^k` slices).
    pub doublings: u32,
}

/// Scale κ in front of `H·D·H(−ω)ᵀ`.
pub fn noise_prefactor(p: &SystemParams, light_speed: f64) -> f64 {
    let n = p.atom_number();
    if n == 0.0 {
        return 0.0;
    }
    match p.noise_normalization {
        NoiseNormalization::Commutator => 2.0 * light_speed / n,
        NoiseNormalization::Literal => p.length / n,
    }
}

/// Closed-form slab over `length` for generator `g` (at ω), mirror
/// generator `gm` (at −ω) and noise source `q`.
pub fn slab(g: &Mat4, gm: &Mat4, q: &Mat4, length: f64) -> Result<(Slab, u32)> {
    if length == 0.0 {
        return Ok((
            Slab {
                transfer: Mat4::identity(),
                mirror_transfer_t: Mat4::identity(),
                noise: Mat4::zeros(),
            },
            0,
        ));
    }
    let norm = one_norm(g).max(one_norm(gm)) * length;
    let doublings = if norm > 1.0 { norm.log2().ceil() as u32 } else { 0 };
    let h = length / 2f64.powi(doublings as i32);

    let mut block = Mat8Block::zeros();
    block.fixed_view_mut::<4, 4>(0, 0).copy_from(&(g * c(h)));
    block.fixed_view_mut::<4, 4>(0, 4).copy_from(&(q * c(h)));
    block
        .fixed_view_mut::<4, 4>(4, 4)
        .copy_from(&(-gm.transpose() * c(h)));
    let f = block.exp();
    let f11: Mat4 = f.fixed_view::<4, 4>(0, 0).into_owned();
    let f12: Mat4 = f.fixed_view::<4, 4>(0, 4).into_owned();
    let f22: Mat4 = f.fixed_view::<4, 4>(4, 4).into_owned();
    let f22_inv = f22.try_inverse().ok_or(Error::NonFinite {
        quantity: "slice transfer matrix",
    })?;

    let mut s = Slab {
        transfer: f11,
        mirror_transfer_t: f22_inv,
        noise: f12 * f22_inv,
    };
    for _ in 0..doublings {
        s = s.then(&s);
    }
    if !(all_finite(&s.transfer) && all_finite(&s.noise) && all_finite(&s.mirror_transfer_t)) {
        return Err(Error::NonFinite {
            quantity: "propagated covariance (gain overflow)",
        });
    }
    Ok((s, doublings))
}

fn one_norm(m: &Mat4) -> f64 {
    (0..4)
        .map(|j| (0..4).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn noise_source(kappa: f64, h: &Mat4x8, d: &DiffusionMatrix, hm: &Mat4x8) -> Mat4 {
    if kappa == 0.0 {
        return Mat4::zeros();
    }
    h * d.d * hm.transpose() * c(kappa)
}

/// Propagates `s_in` across the full medium length `p.length`.
pub fn propagate(
    sys: &FluctuationSystem,
    d: &DiffusionMatrix,
    s_in: &SpectralCovariance,
    p: &SystemParams,
) -> Result<TransferResult> {
    propagate_length(sys, d, s_in, p, p.length)
}

/// As [`propagate`] over an explicit length (the noise scale still uses the
/// atom number of `p`).
pub fn propagate_length(
    sys: &FluctuationSystem,
    d: &DiffusionMatrix,
    s_in: &SpectralCovariance,
    p: &SystemParams,
    length: f64,
) -> Result<TransferResult> {
    let omega = s_in.omega;
    let kappa = noise_prefactor(p, sys.light_speed);
    let (g, h) = generator_at(sys, omega)?;
    let (gm, hm) = if omega == 0.0 {
        (g, h)
    } else {
        generator_at(sys, -omega)?
    };

    let q = noise_source(kappa, &h, d, &hm);
    let (forward, doublings) = slab(&g, &gm, &q, length)?;
    let at_omega = forward.apply(&s_in.at_omega);
    let at_mirror = if omega == 0.0 {
        at_omega
    } else {
        let qm = noise_source(kappa, &hm, d, &h);
        slab(&gm, &g, &qm, length)?.0.apply(&s_in.at_mirror)
    };
    let output = SpectralCovariance {
        omega,
        at_omega,
        at_mirror,
    };
    if !output.is_finite() {
        return Err(Error::NonFinite {
            quantity: "output covariance",
        });
    }
    Ok(TransferResult {
        output,
        transfer: forward.transfer,
        noise_contribution: forward.noise,
        doublings,
    })
}
