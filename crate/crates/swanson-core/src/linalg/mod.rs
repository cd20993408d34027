//! Dense complex linear-algebra kernels.
//!
//! Everything here operates on `ndarray::Array2<Complex64>`. The kernels are
//! self-contained: LU solves, Padé scaling-and-squaring exponentials, and a
//! Hessenberg + shifted-QR eigensolver for general (non-normal) complex
//! matrices.

mod eig;
mod expm;
mod solve;

pub use eig::{eig, EigOutput};
pub use expm::expm;
pub use solve::solve_lu;

use ndarray::Array2;
use num_complex::Complex64 as C64;

pub fn identity(n: usize) -> Array2<C64> {
    Array2::from_diag_elem(n, C64::new(1.0, 0.0))
}

/// Max column sum of absolute values.
pub fn norm_1(a: &Array2<C64>) -> f64 {
    let mut max = 0.0f64;
    for j in 0..a.ncols() {
        let s: f64 = a.column(j).iter().map(|z| z.norm()).sum();
        max = max.max(s);
    }
    max
}

pub fn norm_fro(a: &Array2<C64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(a: &Array2<C64>) -> f64 {
    a.iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

pub fn adjoint(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

pub fn is_finite(a: &Array2<C64>) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}
