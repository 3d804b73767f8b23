//! Quantum-noise propagation of a pump and a probe field through a Λ-type
//! three-level atomic ensemble under electromagnetically induced
//! transparency.
//!
//! The pipeline for one parameter point is
//! [`derive_couplings`] → [`solve_steady_state`] → [`build_system`] →
//! [`diffusion_matrix`] → [`propagate`] → [`duan_v12`], wrapped by
//! [`evaluate_point`]. Rates and frequencies are in rad·μs⁻¹, lengths in m.

// `!(x < tol)` is used deliberately so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod config;
pub mod drift;
pub mod entanglement;
pub mod error;
pub mod fluctuation;
pub mod linalg;
pub mod noise;
pub mod output;
pub mod params;
pub mod pipeline;
pub mod steady_state;
pub mod sweep;
pub mod transfer;

pub use config::Config;
pub use entanglement::{duan_v12, two_mode_squeezed, Duan, EntanglementReport, SEPARABILITY_BOUND};
pub use error::{Error, Result, Stage};
pub use fluctuation::{build_system, propagation_generator, sigma_response, FluctuationSystem};
pub use linalg::C64;
pub use noise::{diffusion_matrix, DiffusionMatrix};
pub use output::{emit_csv, parse_csv, point_report, CSV_HEADER};
pub use params::{
    derive_couplings, validate, Couplings, NoiseNormalization, PhysicalConstants, SystemParams,
    Warning,
};
pub use pipeline::{evaluate_point, evaluate_point_detailed, PointResult};
pub use steady_state::{absorption_coefficient, solve_steady_state, SteadyState};
pub use sweep::{run_sweep, Preset, Rule, Scale, SweepParam, SweepRow, SweepSpec};
pub use transfer::{propagate, propagate_length, vacuum_input, SpectralCovariance, TransferResult};
