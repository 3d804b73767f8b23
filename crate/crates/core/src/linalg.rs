//! Small dense complex matrices and the few decompositions the pipeline needs.

use nalgebra::{DMatrix, SMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat3 = SMatrix<C64, 3, 3>;
pub type Mat4 = SMatrix<C64, 4, 4>;
pub type Mat8 = SMatrix<C64, 8, 8>;
pub type Mat9 = SMatrix<C64, 9, 9>;
pub type Mat8x4 = SMatrix<C64, 8, 4>;
pub type Mat4x8 = SMatrix<C64, 4, 8>;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn max_abs<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn all_finite<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

// Decompositions go through dynamic storage; the static-size impls need
// typenum bounds that do not hold for a generic `N`.
fn dynamic<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> DMatrix<C64> {
    DMatrix::from_iterator(R, C, m.iter().cloned())
}

/// 2-norm condition number from the singular values.
pub fn condition_number<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    let sv = dynamic(m).singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Entry `(a, b)` of the result is `conj(m[rows[a], cols[b]])`.
///
/// With the pair-swap permutations this is `J · conj(m) · J`.
pub fn conj_permuted<const R: usize, const C: usize>(
    m: &SMatrix<C64, R, C>,
    rows: &[usize; R],
    cols: &[usize; C],
) -> SMatrix<C64, R, C> {
    SMatrix::from_fn(|a, b| m[(rows[a], cols[b])].conj())
}

/// Smallest eigenvalue of the Hermitian part `(m + m†)/2`.
pub fn hermitian_min_eigenvalue<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    let h = (m + m.adjoint()).scale(0.5);
    SymmetricEigen::new(dynamic(&h))
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// Eigenvalues of a general complex matrix via the complex Schur form.
pub fn eigenvalues<const N: usize>(m: &SMatrix<C64, N, N>) -> Vec<C64> {
    let (_, t) = dynamic(m).schur().unpack();
    (0..N).map(|i| t[(i, i)]).collect()
}
