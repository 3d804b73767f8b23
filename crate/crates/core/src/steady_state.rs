//! Mean-field steady state of the atomic density matrix.

use nalgebra::{SVector, SymmetricEigen};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::basis::{AtomicOp, ALL_OPS, ATOMIC_BASIS};
use crate::drift::Drift;
use crate::error::{Error, Result};
use crate::linalg::{condition_number, max_abs, Mat3, Mat8, Mat9, C64};
use crate::params::{Couplings, SystemParams};

pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
pub const MAX_CONDITION: f64 = 1e12;

/// Mean values `⟨σ_ij⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    sigma: [[C64; 3]; 3],
    dark: bool,
}

impl SteadyState {
    /// Builds a state from a full 3×3 density matrix, `sigma[i-1][j-1] = ⟨σ_ij⟩`.
    pub fn from_matrix(sigma: [[C64; 3]; 3]) -> Self {
        SteadyState { sigma, dark: false }
    }

    /// `⟨σ_ij⟩` with levels numbered 1..=3.
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.sigma[i - 1][j - 1]
    }

    pub fn mean(&self, op: AtomicOp) -> C64 {
        self.get(op.row as usize, op.col as usize)
    }

    /// True when the state came from the closed-form dark-state branch.
    pub fn is_dark(&self) -> bool {
        self.dark
    }

    pub fn trace(&self) -> C64 {
        self.sigma[0][0] + self.sigma[1][1] + self.sigma[2][2]
    }

    pub fn matrix(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.sigma[i][j])
    }

    /// Means in [`ALL_OPS`] order.
    pub fn vector9(&self) -> SVector<C64, 9> {
        SVector::from_fn(|k, _| self.mean(ALL_OPS[k]))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let m = self.matrix();
        let h = (m + m.adjoint()).scale(0.5);
        SymmetricEigen::new(h)
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest drift of any of the nine means, with the fields at their means.
    pub fn residual(&self, p: &SystemParams, g: &Couplings) -> f64 {
        let t = Drift::new(p, g).mean_field(p.alpha1, p.alpha2);
        max_abs(&(t * self.vector9()))
    }
}

impl Serialize for SteadyState {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let re: Vec<Vec<f64>> = self.sigma.iter().map(|r| r.iter().map(|z| z.re).collect()).collect();
        let im: Vec<Vec<f64>> = self.sigma.iter().map(|r| r.iter().map(|z| z.im).collect()).collect();
        let mut st = ser.serialize_struct("SteadyState", 3)?;
        st.serialize_field("sigma_re", &re)?;
        st.serialize_field("sigma_im", &im)?;
        st.serialize_field("dark_state", &self.dark)?;
        st.end()
    }
}

/// Splits the 9×9 mean-field matrix into the 8×8 system over
/// [`ATOMIC_BASIS`] (with `σ33 = 1 − σ11 − σ22`) and its constant column.
pub(crate) fn reduce(t: &Mat9) -> (Mat8, SVector<C64, 8>) {
    let col33 = SVector::<C64, 8>::from_fn(|r, _| t[(r, 8)]);
    let mut m = Mat8::from_fn(|r, k| t[(r, k)]);
    for r in 0..8 {
        m[(r, 0)] -= col33[r];
        m[(r, 1)] -= col33[r];
    }
    (m, col33)
}

pub fn solve_steady_state(p: &SystemParams, g: &Couplings) -> Result<SteadyState> {
    p.check()?;
    let rabi1 = g.rabi1(p);
    let rabi2 = g.rabi2(p);
    if !(rabi1.re.is_finite() && rabi1.im.is_finite() && rabi2.re.is_finite() && rabi2.im.is_finite()) {
        return Err(Error::NonFinite {
            quantity: "Rabi frequency",
        });
    }

    let state = if p.gamma12 == 0.0 && p.delta1 == p.delta2 {
        dark_state(rabi1, rabi2)?
    } else {
        let t = Drift::new(p, g).mean_field(p.alpha1, p.alpha2);
        let (m, col33) = reduce(&t);
        let condition = condition_number(&m);
        if !(condition <= MAX_CONDITION) {
            return Err(Error::IllConditioned {
                context: "mean-field system",
                condition,
                regime: "steady state not unique (no optical pumping or no ground-state dephasing)",
            });
        }
        let x = m.lu().solve(&(-col33)).ok_or(Error::IllConditioned {
            context: "mean-field system",
            condition,
            regime: "singular LU factorization",
        })?;
        let mut sigma = [[C64::new(0.0, 0.0); 3]; 3];
        for (k, op) in ATOMIC_BASIS.iter().enumerate() {
            sigma[op.row as usize - 1][op.col as usize - 1] = x[k];
        }
        sigma[2][2] = C64::new(1.0, 0.0) - x[0] - x[1];
        // Enforce exact Hermiticity; the solve leaves roundoff-level asymmetry.
        for i in 0..3 {
            sigma[i][i].im = 0.0;
            for j in (i + 1)..3 {
                let avg = (sigma[i][j] + sigma[j][i].conj()) * 0.5;
                sigma[i][j] = avg;
                sigma[j][i] = avg.conj();
            }
        }
        SteadyState { sigma, dark: false }
    };

    let residual = state.residual(p, g);
    if !(residual < RESIDUAL_TOLERANCE) {
        return Err(Error::Residual {
            residual,
            tolerance: RESIDUAL_TOLERANCE,
        });
    }
    Ok(state)
}

/// Coherent population trapping state for `γ12 = 0`, `Δ1 = Δ2`.
fn dark_state(rabi1: C64, rabi2: C64) -> Result<SteadyState> {
    let s = rabi1.norm_sqr() + rabi2.norm_sqr();
    if s == 0.0 {
        return Err(Error::Degenerate(
            "both fields off with no ground-state dephasing: populations are undetermined".into(),
        ));
    }
    let zero = C64::new(0.0, 0.0);
    let s12 = -rabi1 * rabi2.conj() / s;
    let sigma = [
        [C64::new(rabi2.norm_sqr() / s, 0.0), s12, zero],
        [s12.conj(), C64::new(rabi1.norm_sqr() / s, 0.0), zero],
        [zero, zero, zero],
    ];
    Ok(SteadyState { sigma, dark: true })
}

/// Normalized probe absorption `Im(⟨σ13⟩e^{−iφ₁})·γ13/(g1|α1|)`.
///
/// `φ₁` is the probe phase; the normalization makes a weakly driven,
/// resonant two-level atom return 1.
pub fn absorption_coefficient(s: &SteadyState, p: &SystemParams, g: &Couplings) -> Result<f64> {
    let a1 = p.alpha1.norm();
    if a1 == 0.0 {
        return Err(Error::InvalidParams(
            "absorption is undefined for a zero probe amplitude".into(),
        ));
    }
    let phase = p.alpha1 / a1;
    let value = (s.get(1, 3) * phase.conj()).im * p.gamma13() / (g.g1 * a1);
    if !value.is_finite() {
        return Err(Error::NonFinite {
            quantity: "absorption",
        });
    }
    Ok(value)
}
