//! Operator orderings shared by the fluctuation, noise and transfer stages.
//!
//! Atomic fluctuations are ordered `[δσ11, δσ22, δσ12, δσ21, δσ13, δσ31,
//! δσ23, δσ32]`; `δσ33` is eliminated through the trace. Field fluctuations
//! are ordered `[δa1, δa1†, δa2, δa2†]`. Each ordering carries a pair-swap
//! permutation mapping an operator to its Hermitian conjugate.

use std::fmt;

/// Single-atom transition operator `σ_ij = |i⟩⟨j|`, levels numbered 1..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AtomicOp {
    pub row: u8,
    pub col: u8,
}

impl AtomicOp {
    pub const fn new(row: u8, col: u8) -> Self {
        AtomicOp { row, col }
    }

    pub const fn adjoint(self) -> Self {
        AtomicOp::new(self.col, self.row)
    }

    /// `σ_ij σ_kl = δ_jk σ_il`.
    pub fn product(self, other: AtomicOp) -> Option<AtomicOp> {
        (self.col == other.row).then_some(AtomicOp::new(self.row, other.col))
    }

    /// Position in [`ALL_OPS`].
    pub fn index(self) -> usize {
        ALL_OPS
            .iter()
            .position(|&op| op == self)
            .expect("levels are 1..=3")
    }
}

impl fmt::Display for AtomicOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ{}{}", self.row, self.col)
    }
}

pub const S11: AtomicOp = AtomicOp::new(1, 1);
pub const S22: AtomicOp = AtomicOp::new(2, 2);
pub const S33: AtomicOp = AtomicOp::new(3, 3);
pub const S12: AtomicOp = AtomicOp::new(1, 2);
pub const S21: AtomicOp = AtomicOp::new(2, 1);
pub const S13: AtomicOp = AtomicOp::new(1, 3);
pub const S31: AtomicOp = AtomicOp::new(3, 1);
pub const S23: AtomicOp = AtomicOp::new(2, 3);
pub const S32: AtomicOp = AtomicOp::new(3, 2);

pub const ATOMIC_BASIS: [AtomicOp; 8] = [S11, S22, S12, S21, S13, S31, S23, S32];

/// The eight basis operators followed by `σ33`.
pub const ALL_OPS: [AtomicOp; 9] = [S11, S22, S12, S21, S13, S31, S23, S32, S33];

pub const ATOMIC_SWAP: [usize; 8] = [0, 1, 3, 2, 5, 4, 7, 6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldOp {
    A1,
    A1Dag,
    A2,
    A2Dag,
}

impl FieldOp {
    pub const fn index(self) -> usize {
        match self {
            FieldOp::A1 => 0,
            FieldOp::A1Dag => 1,
            FieldOp::A2 => 2,
            FieldOp::A2Dag => 3,
        }
    }

    pub const fn adjoint(self) -> Self {
        match self {
            FieldOp::A1 => FieldOp::A1Dag,
            FieldOp::A1Dag => FieldOp::A1,
            FieldOp::A2 => FieldOp::A2Dag,
            FieldOp::A2Dag => FieldOp::A2,
        }
    }
}

pub const FIELD_BASIS: [FieldOp; 4] = [FieldOp::A1, FieldOp::A1Dag, FieldOp::A2, FieldOp::A2Dag];

pub const FIELD_SWAP: [usize; 4] = [1, 0, 3, 2];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swaps_are_involutions_matching_adjoints() {
        for (a, op) in ATOMIC_BASIS.iter().enumerate() {
            assert_eq!(ATOMIC_SWAP[ATOMIC_SWAP[a]], a);
            assert_eq!(ATOMIC_BASIS[ATOMIC_SWAP[a]], op.adjoint());
        }
        for (a, f) in FIELD_BASIS.iter().enumerate() {
            assert_eq!(FIELD_SWAP[FIELD_SWAP[a]], a);
            assert_eq!(FIELD_BASIS[FIELD_SWAP[a]], f.adjoint());
            assert_eq!(f.index(), a);
        }
    }

    #[test]
    fn product_rule() {
        assert_eq!(S12.product(S21), Some(S11));
        assert_eq!(S13.product(S32), Some(S12));
        assert_eq!(S12.product(S12), None);
        assert_eq!(S33.index(), 8);
        assert_eq!(S31.index(), 5);
    }
}
