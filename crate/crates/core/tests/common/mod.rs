//! Reference computations shared by the oracle and acceptance suites.

#![allow(dead_code)]

use eie_core::drift::Drift;
use eie_core::linalg::{Mat4, C64};
use eie_core::{Couplings, SystemParams};
use nalgebra::SVector;

pub type V9 = SVector<C64, 9>;

/// Time-marches the mean-field equations with classical RK4 from all
/// population in |1⟩ until one step changes the state by less than 1e-12.
/// Entries follow `basis::ALL_OPS`.
pub fn time_marched_steady_state(p: &SystemParams, g: &Couplings) -> V9 {
    let t = Drift::new(p, g).mean_field(p.alpha1, p.alpha2);
    let f = |x: &V9| t * x;
    let r = |x: f64| C64::new(x, 0.0);
    let mut x = V9::zeros();
    x[0] = r(1.0);
    let dt = 0.1;
    for _ in 0..50_000_000 {
        let k1 = f(&x);
        let k2 = f(&(x + k1 * r(dt / 2.0)));
        let k3 = f(&(x + k2 * r(dt / 2.0)));
        let k4 = f(&(x + k3 * r(dt)));
        let step = (k1 + k2 * r(2.0) + k3 * r(2.0) + k4) * r(dt / 6.0);
        x += step;
        if step.norm() < 1e-12 {
            return x;
        }
    }
    panic!("time marching did not settle");
}

/// First-order explicit stepping of `dS/dz = G S + S G(−ω)ᵀ + Q`.
pub fn euler_propagation(g: &Mat4, gm: &Mat4, q: &Mat4, s0: &Mat4, length: f64, slices: usize) -> Mat4 {
    let dz = C64::new(length / slices as f64, 0.0);
    let gmt = gm.transpose();
    let mut s = *s0;
    for _ in 0..slices {
        s += (g * s + s * gmt + q) * dz;
    }
    s
}
