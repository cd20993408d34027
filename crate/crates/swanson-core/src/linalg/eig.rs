//! Dense complex eigensolver: balancing, Householder reduction to upper
//! Hessenberg form, then explicit single-shift QR with Givens rotations
//! (Wilkinson shifts, occasional exceptional shifts). Schur vectors are
//! accumulated so that each eigenvalue can be reported together with the
//! residual ‖Av − λv‖₂/‖v‖₂ of its back-substituted eigenvector — the
//! condition indicator for non-normal inputs.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};

const EPS: f64 = f64::EPSILON;

pub struct EigOutput {
    /// Eigenvalues in deflation order (callers sort as needed).
    pub values: Vec<C64>,
    /// Per-eigenvalue residual ‖Av − λv‖₂/‖v‖₂ against the input matrix.
    pub residuals: Vec<f64>,
    /// Total QR sweeps used.
    pub iterations: usize,
}

/// Row-major dense matrix with unchecked-ish indexing for the hot loops.
struct Mat {
    n: usize,
    d: Vec<C64>,
}

impl Mat {
    fn zeros(n: usize) -> Self {
        Mat {
            n,
            d: vec![C64::new(0.0, 0.0); n * n],
        }
    }
    fn eye(n: usize) -> Self {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.d[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }
    #[inline(always)]
    fn at(&self, i: usize, j: usize) -> C64 {
        self.d[i * self.n + j]
    }
    #[inline(always)]
    fn set(&mut self, i: usize, j: usize, v: C64) {
        self.d[i * self.n + j] = v;
    }
}

fn from_ndarray(a: &Array2<C64>) -> Mat {
    let n = a.nrows();
    let mut m = Mat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, a[[i, j]]);
        }
    }
    m
}

/// Parlett–Reinsch balancing by powers of two (no permutation phase; the
/// similarity D⁻¹AD is exact in floating point).
fn balance(a: &mut Mat) -> Vec<f64> {
    let n = a.n;
    let mut scale = vec![1.0f64; n];
    let radix: f64 = 2.0;
    let mut converged = false;
    let mut pass = 0;
    while !converged && pass < 32 {
        converged = true;
        pass += 1;
        for i in 0..n {
            let mut c: f64 = 0.0;
            let mut r: f64 = 0.0;
            for j in 0..n {
                if j != i {
                    c += a.at(j, i).norm();
                    r += a.at(i, j).norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let s = c + r;
            let mut cc = c;
            let mut rr = r;
            while cc < rr / radix {
                cc *= radix;
                rr /= radix;
                f *= radix;
            }
            while cc >= rr * radix {
                cc /= radix;
                rr *= radix;
                f /= radix;
            }
            if (cc + rr) < 0.95 * s && f != 1.0 {
                converged = false;
                scale[i] *= f;
                let inv = 1.0 / f;
                for j in 0..n {
                    let v = a.at(i, j);
                    a.set(i, j, v * inv);
                }
                for j in 0..n {
                    let v = a.at(j, i);
                    a.set(j, i, v * f);
                }
            }
        }
    }
    scale
}

/// Householder reduction to upper Hessenberg form; `q` accumulates the
/// unitary similarity (A_in = Q H Q†).
fn hessenberg(a: &mut Mat, q: &mut Mat) {
    let n = a.n;
    let mut v = vec![C64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        // column k below the subdiagonal
        let mut xnorm_sq = 0.0f64;
        for i in (k + 1)..n {
            xnorm_sq += a.at(i, k).norm_sqr();
        }
        let x0 = a.at(k + 1, k);
        let tail_sq = xnorm_sq - x0.norm_sqr();
        if xnorm_sq == 0.0 || tail_sq <= xnorm_sq * EPS * EPS {
            continue;
        }
        let xnorm = xnorm_sq.sqrt();
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        // v = x - alpha e1
        let mut vnorm_sq = 0.0f64;
        for i in (k + 1)..n {
            let mut vi = a.at(i, k);
            if i == k + 1 {
                vi -= alpha;
            }
            v[i] = vi;
            vnorm_sq += vi.norm_sqr();
        }
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;

        // left: A <- P A  over rows k+1..n, columns k..n
        for j in k..n {
            let mut s = C64::new(0.0, 0.0);
            for i in (k + 1)..n {
                s += v[i].conj() * a.at(i, j);
            }
            s *= beta;
            for i in (k + 1)..n {
                let val = a.at(i, j) - s * v[i];
                a.set(i, j, val);
            }
        }
        // right: A <- A P  over columns k+1..n, all rows
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for j in (k + 1)..n {
                s += a.at(i, j) * v[j];
            }
            s *= beta;
            for j in (k + 1)..n {
                let val = a.at(i, j) - s * v[j].conj();
                a.set(i, j, val);
            }
        }
        // Q <- Q P
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for j in (k + 1)..n {
                s += q.at(i, j) * v[j];
            }
            s *= beta;
            for j in (k + 1)..n {
                let val = q.at(i, j) - s * v[j].conj();
                q.set(i, j, val);
            }
        }
        // clean the annihilated entries
        a.set(k + 1, k, alpha);
        for i in (k + 2)..n {
            a.set(i, k, C64::new(0.0, 0.0));
        }
    }
}

/// Complex Givens pair (c real, s complex) mapping (f,g) -> (r,0).
fn givens(f: C64, g: C64) -> (f64, C64) {
    let fn_ = f.norm();
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let d = (fn_ * fn_ + gn * gn).sqrt();
    let c = fn_ / d;
    let s = (f / fn_) * g.conj() / d;
    (c, s)
}

/// Shifted QR on the Hessenberg matrix `h`, accumulating rotations into `z`.
/// Returns total sweep count; `h` converges to upper triangular (Schur form).
fn qr_schur(h: &mut Mat, z: &mut Mat, max_sweeps: usize) -> Result<usize> {
    let n = h.n;
    if n == 0 {
        return Ok(0);
    }
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut stagnation = 0usize;
    let hnorm = {
        let mut s = 0.0f64;
        for i in 0..n {
            for j in i.saturating_sub(1)..n {
                s += h.at(i, j).norm_sqr();
            }
        }
        s.sqrt().max(f64::MIN_POSITIVE)
    };

    'outer: loop {
        // deflate converged trailing 1x1 blocks
        loop {
            if hi == 0 {
                break 'outer;
            }
            let s = h.at(hi - 1, hi - 1).norm() + h.at(hi, hi).norm();
            let tol = EPS * if s > 0.0 { s } else { hnorm };
            if h.at(hi, hi - 1).norm() <= tol {
                h.set(hi, hi - 1, C64::new(0.0, 0.0));
                hi -= 1;
                stagnation = 0;
            } else {
                break;
            }
        }

        // find the active window [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let s = h.at(lo - 1, lo - 1).norm() + h.at(lo, lo).norm();
            let tol = EPS * if s > 0.0 { s } else { hnorm };
            if h.at(lo, lo - 1).norm() <= tol {
                h.set(lo, lo - 1, C64::new(0.0, 0.0));
                break;
            }
            lo -= 1;
        }

        if sweeps >= max_sweeps {
            return Err(CoreError::NoConvergence { iterations: sweeps });
        }
        sweeps += 1;
        stagnation += 1;

        // Wilkinson shift from the trailing 2x2 (exceptional shift when stuck)
        let shift = if stagnation % 20 == 0 {
            h.at(hi, hi) + C64::new(0.75 * h.at(hi, hi - 1).norm(), 0.0)
        } else {
            let a = h.at(hi - 1, hi - 1);
            let b = h.at(hi - 1, hi);
            let c2 = h.at(hi, hi - 1);
            let d = h.at(hi, hi);
            let tr = a + d;
            let det = a * d - b * c2;
            let disc = (tr * tr - det * 4.0).sqrt();
            let l1 = (tr + disc) * 0.5;
            let l2 = (tr - disc) * 0.5;
            if (l1 - d).norm() < (l2 - d).norm() {
                l1
            } else {
                l2
            }
        };

        // implicit single-shift sweep over [lo, hi]
        let mut f = h.at(lo, lo) - shift;
        let mut g = h.at(lo + 1, lo);
        for i in lo..hi {
            let (c, s) = givens(f, g);
            let sc = s.conj();
            // left rotation on rows i, i+1
            let jstart = i.saturating_sub(1).max(lo);
            for j in jstart..n {
                let hi_j = h.at(i, j);
                let hi1_j = h.at(i + 1, j);
                h.set(i, j, hi_j * c + hi1_j * s);
                h.set(i + 1, j, -(hi_j * sc) + hi1_j * c);
            }
            // right rotation on columns i, i+1
            let iend = (i + 2).min(hi) + 1;
            for r in 0..iend {
                let h_ri = h.at(r, i);
                let h_ri1 = h.at(r, i + 1);
                h.set(r, i, h_ri * c + h_ri1 * sc);
                h.set(r, i + 1, -(h_ri * s) + h_ri1 * c);
            }
            // accumulate into Z
            for r in 0..n {
                let z_ri = z.at(r, i);
                let z_ri1 = z.at(r, i + 1);
                z.set(r, i, z_ri * c + z_ri1 * sc);
                z.set(r, i + 1, -(z_ri * s) + z_ri1 * c);
            }
            if i + 1 < hi {
                f = h.at(i + 1, i);
                g = h.at(i + 2, i);
            }
        }
    }
    Ok(sweeps)
}

/// Eigenvector of the upper-triangular `t` for eigenvalue at index `k`, by
/// back-substitution. Small denominators are perturbed at the ulp scale, as
/// is standard for non-normal triangular solves.
fn triangular_eigvec(t: &Mat, k: usize, tnorm: f64) -> Vec<C64> {
    let mut y = vec![C64::new(0.0, 0.0); t.n];
    y[k] = C64::new(1.0, 0.0);
    let lambda = t.at(k, k);
    let smin = (EPS * tnorm).max(f64::MIN_POSITIVE);
    for j in (0..k).rev() {
        let mut s = C64::new(0.0, 0.0);
        for m in (j + 1)..=k {
            s += t.at(j, m) * y[m];
        }
        let mut den = t.at(j, j) - lambda;
        if den.norm() < smin {
            den = C64::new(smin, 0.0);
        }
        y[j] = -s / den;
        // rescale if the vector is blowing up
        let yn = y[j].norm();
        if yn > 1e120 {
            let inv = 1.0 / yn;
            for v in y.iter_mut().take(k + 1) {
                *v *= inv;
            }
        }
    }
    y
}

/// Eigenvalues (with residual-based condition estimates) of a general dense
/// complex matrix.
pub fn eig(a: &Array2<C64>) -> Result<EigOutput> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eig requires a square matrix");
    if n == 0 {
        return Ok(EigOutput {
            values: vec![],
            residuals: vec![],
            iterations: 0,
        });
    }
    if n == 1 {
        return Ok(EigOutput {
            values: vec![a[[0, 0]]],
            residuals: vec![0.0],
            iterations: 0,
        });
    }

    let mut h = from_ndarray(a);
    let scale = balance(&mut h);
    let mut q = Mat::eye(n);
    hessenberg(&mut h, &mut q);
    let mut z = Mat::eye(n);
    let sweeps = qr_schur(&mut h, &mut z, 40 * n.max(16))?;

    let tnorm = {
        let mut s = 0.0f64;
        for i in 0..n {
            for j in i..n {
                s += h.at(i, j).norm_sqr();
            }
        }
        s.sqrt().max(f64::MIN_POSITIVE)
    };

    // residuals in the original (unbalanced) basis
    let mut values = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    let mut v = vec![C64::new(0.0, 0.0); n];
    let mut av = vec![C64::new(0.0, 0.0); n];
    for k in 0..n {
        let lambda = h.at(k, k);
        let y = triangular_eigvec(&h, k, tnorm);
        // v = D · Q · Z · y  (Z y first, then Q, then balancing scale)
        let mut zy = vec![C64::new(0.0, 0.0); n];
        for r in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for m in 0..=k {
                s += z.at(r, m) * y[m];
            }
            zy[r] = s;
        }
        for r in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for m in 0..n {
                s += q.at(r, m) * zy[m];
            }
            v[r] = s * scale[r];
        }
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (r, avr) in av.iter_mut().enumerate() {
            let mut s = C64::new(0.0, 0.0);
            for m in 0..n {
                s += a[[r, m]] * v[m];
            }
            *avr = s - lambda * v[r];
        }
        let rnorm = av.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        values.push(lambda);
        residuals.push(if vnorm > 0.0 { rnorm / vnorm } else { f64::INFINITY });
    }

    Ok(EigOutput {
        values,
        residuals,
        iterations: sweeps,
    })
}
