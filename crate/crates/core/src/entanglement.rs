//! Duan inseparability criterion on the joint quadratures
//! `δu = δx1 + δx2`, `δv = δp1 − δp2`, with `δx = δa + δa†` and
//! `δp = −i(δa − δa†)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, Mat4, C64, I};
use crate::transfer::SpectralCovariance;

/// Two uncorrelated vacua give exactly this value.
pub const SEPARABILITY_BOUND: f64 = 4.0;

const REAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub v12: f64,
    pub du2: f64,
    pub dv2: f64,
    pub entangled: bool,
    /// Normalized probe absorption; absent when the probe is off.
    pub absorption: Option<f64>,
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Duan {
    pub du2: f64,
    pub dv2: f64,
    pub v12: f64,
    pub entangled: bool,
}

/// `wᵀ·s·w` together with `Σ|w_a w_b s_ab|`, the scale its roundoff
/// is measured against.
fn quadratic_form(s: &Mat4, w: &[C64; 4]) -> (C64, f64) {
    let mut acc = C64::new(0.0, 0.0);
    let mut scale = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let t = w[a] * w[b] * s[(a, b)];
            acc += t;
            scale += t.norm();
        }
    }
    (acc, scale)
}

fn real_part((z, scale): (C64, f64), what: &str) -> Result<f64> {
    let tol = REAL_TOLERANCE * scale.max(1.0);
    if z.im.abs() > tol {
        return Err(Error::Unphysical(format!(
            "{what} has imaginary part {:.3e}",
            z.im
        )));
    }
    if z.re < -tol {
        return Err(Error::Unphysical(format!("{what} = {:.3e} is negative", z.re)));
    }
    Ok(z.re)
}

/// `V12 = ⟨δu²⟩ + ⟨δv²⟩` from the ordering-averaged spectrum.
///
/// The joint quadratures at `−ω` carry the same coefficients as at `+ω`,
/// so both forms are `wᵀ·sym(S)·w` without conjugation.
pub fn duan_v12(s: &SpectralCovariance) -> Result<Duan> {
    let sym = s.symmetrized();
    let u = [c(1.0); 4];
    let v = [-I, I, I, -I];
    let du2 = real_part(quadratic_form(&sym, &u), "⟨δu²⟩")?;
    let dv2 = real_part(quadratic_form(&sym, &v), "⟨δv²⟩")?;
    let v12 = du2 + dv2;
    Ok(Duan {
        du2,
        dv2,
        v12,
        entangled: v12 < SEPARABILITY_BOUND,
    })
}

/// Ideal two-mode squeezed vacuum with squeezing parameter `r`.
pub fn two_mode_squeezed(r: f64) -> SpectralCovariance {
    let (ch, sh) = (r.cosh(), r.sinh());
    let mut m = Mat4::zeros();
    m[(0, 1)] = c(ch * ch);
    m[(2, 3)] = c(ch * ch);
    m[(1, 0)] = c(sh * sh);
    m[(3, 2)] = c(sh * sh);
    for (a, b) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        m[(a, b)] = c(-ch * sh);
    }
    SpectralCovariance {
        omega: 0.0,
        at_omega: m,
        at_mirror: m,
    }
}

/// Applies `a1 → a1·e^{iθ1}`, `a2 → a2·e^{iθ2}` to a covariance.
pub fn rotate_phases(s: &SpectralCovariance, theta1: f64, theta2: f64) -> SpectralCovariance {
    let ph = [
        C64::from_polar(1.0, theta1),
        C64::from_polar(1.0, -theta1),
        C64::from_polar(1.0, theta2),
        C64::from_polar(1.0, -theta2),
    ];
    let rot = |m: &Mat4| Mat4::from_fn(|a, b| m[(a, b)] * ph[a] * ph[b]);
    SpectralCovariance {
        omega: s.omega,
        at_omega: rot(&s.at_omega),
        at_mirror: rot(&s.at_mirror),
    }
}
