use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};

/// Solve `A X = B` by LU factorization with partial pivoting.
pub fn solve_lu(a: &Array2<C64>, b: &Array2<C64>) -> Result<Array2<C64>> {
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n {
        return Err(CoreError::DimensionMismatch(format!(
            "solve_lu: A is {}x{}, B has {} rows",
            a.nrows(),
            a.ncols(),
            b.nrows()
        )));
    }
    let m = b.ncols();
    let mut lu = a.clone();
    let mut x = b.clone();

    for col in 0..n {
        let mut piv = col;
        let mut piv_abs = lu[[col, col]].norm();
        for row in (col + 1)..n {
            let v = lu[[row, col]].norm();
            if v > piv_abs {
                piv_abs = v;
                piv = row;
            }
        }
        if piv_abs == 0.0 {
            return Err(CoreError::SolverBreakdown {
                row: col,
                pivot_abs: 0.0,
            });
        }
        if piv != col {
            for j in 0..n {
                lu.swap([col, j], [piv, j]);
            }
            for j in 0..m {
                x.swap([col, j], [piv, j]);
            }
        }
        let d = lu[[col, col]];
        for row in (col + 1)..n {
            let f = lu[[row, col]] / d;
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            lu[[row, col]] = f;
            for j in (col + 1)..n {
                let v = lu[[col, j]];
                lu[[row, j]] -= f * v;
            }
            for j in 0..m {
                let v = x[[col, j]];
                x[[row, j]] -= f * v;
            }
        }
    }
    // back substitution
    for col in (0..n).rev() {
        let d = lu[[col, col]];
        for j in 0..m {
            let mut s = x[[col, j]];
            for k in (col + 1)..n {
                s -= lu[[col, k]] * x[[k, j]];
            }
            x[[col, j]] = s / d;
        }
    }
    Ok(x)
}
