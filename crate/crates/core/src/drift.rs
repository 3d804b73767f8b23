//! Deterministic part of the Heisenberg–Langevin equations for the nine
//! single-atom operators.
//!
//! Each drift `A_ij` is a sum of terms `coeff · f · σ_kl` where `f` is either
//! 1 or one of the field operators. The same table feeds the mean-field
//! steady state, the linearized fluctuation matrices and (in tests) the
//! generic Einstein-relation evaluation.

use crate::basis::{AtomicOp, FieldOp, ALL_OPS, S11, S12, S13, S21, S22, S23, S31, S32, S33};
use crate::linalg::{c, Mat9, C64, I};
use crate::params::{Couplings, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftTerm {
    pub coeff: C64,
    pub field: Option<FieldOp>,
    pub op: AtomicOp,
}

impl DriftTerm {
    fn new(coeff: C64, field: Option<FieldOp>, op: AtomicOp) -> Self {
        DriftTerm { coeff, field, op }
    }

    fn adjoint(self) -> Self {
        DriftTerm {
            coeff: self.coeff.conj(),
            field: self.field.map(FieldOp::adjoint),
            op: self.op.adjoint(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Drift {
    /// Indexed like [`ALL_OPS`].
    rows: [Vec<DriftTerm>; 9],
}

impl Drift {
    pub fn new(p: &SystemParams, g: &Couplings) -> Self {
        use FieldOp::*;
        let (g1, g2) = (c(g.g1), c(g.g2));
        let two_photon = p.delta1 - p.delta2;
        let t = DriftTerm::new;

        let a11 = vec![
            t(c(p.gamma1), None, S33),
            t(I * g1, Some(A1Dag), S13),
            t(-I * g1, Some(A1), S31),
        ];
        let a22 = vec![
            t(c(p.gamma2), None, S33),
            t(I * g2, Some(A2Dag), S23),
            t(-I * g2, Some(A2), S32),
        ];
        // σ33 follows from trace conservation.
        let a33 = vec![
            t(c(-(p.gamma1 + p.gamma2)), None, S33),
            t(-I * g1, Some(A1Dag), S13),
            t(I * g1, Some(A1), S31),
            t(-I * g2, Some(A2Dag), S23),
            t(I * g2, Some(A2), S32),
        ];
        let a12 = vec![
            t(-(c(p.gamma12) - I * two_photon), None, S12),
            t(-I * g1, Some(A1), S32),
            t(I * g2, Some(A2Dag), S13),
        ];
        let a13 = vec![
            t(-(c(p.gamma13()) - I * p.delta1), None, S13),
            t(I * g1, Some(A1), S11),
            t(-I * g1, Some(A1), S33),
            t(I * g2, Some(A2), S12),
        ];
        let a23 = vec![
            t(-(c(p.gamma23()) - I * p.delta2), None, S23),
            t(I * g2, Some(A2), S22),
            t(-I * g2, Some(A2), S33),
            t(I * g1, Some(A1), S21),
        ];
        let adj = |row: &[DriftTerm]| row.iter().map(|t| t.adjoint()).collect::<Vec<_>>();
        let a21 = adj(&a12);
        let a31 = adj(&a13);
        let a32 = adj(&a23);

        Drift {
            rows: [a11, a22, a12, a21, a13, a31, a23, a32, a33],
        }
    }

    pub fn terms(&self, op: AtomicOp) -> &[DriftTerm] {
        &self.rows[op.index()]
    }

    /// Matrix `T` with `A_μ = Σ_κ T[μ,κ] σ_κ` when every field operator is
    /// replaced by its mean. Rows and columns follow [`ALL_OPS`].
    pub fn mean_field(&self, alpha1: C64, alpha2: C64) -> Mat9 {
        let mut t = Mat9::zeros();
        for (mu, row) in self.rows.iter().enumerate() {
            for term in row {
                let f = term.field.map_or(c(1.0), |f| field_mean(f, alpha1, alpha2));
                t[(mu, term.op.index())] += term.coeff * f;
            }
        }
        t
    }
}

pub fn field_mean(f: FieldOp, alpha1: C64, alpha2: C64) -> C64 {
    match f {
        FieldOp::A1 => alpha1,
        FieldOp::A1Dag => alpha1.conj(),
        FieldOp::A2 => alpha2,
        FieldOp::A2Dag => alpha2.conj(),
    }
}

/// Operators whose drift is listed, in [`ALL_OPS`] order.
pub fn operators() -> [AtomicOp; 9] {
    ALL_OPS
}
