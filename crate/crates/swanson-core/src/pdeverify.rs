//! Position-space verification: finite-difference application of the
//! time-dependent Hamiltonian, Schrödinger-residual evaluation for candidate
//! closed-form solutions, and a Crank–Nicolson integrator for end-to-end
//! comparison.
//!
//! Discretization: second-order central stencils for ∂ₓ and ∂ₓ², Dirichlet
//! zero ghost values; the position Hamiltonian is
//! `H = -(1/2m)∂ₓ² + (mω²/2)x² + (Ω/2)(2x∂ₓ+1) + ν∂ₓ + Fx + v₀`,
//! which is `p²/2m + mω²x²/2 + i(Ω/2)(xp+px) + iνp + Fx + v₀` realized with
//! p = -i∂ₓ. Crank–Nicolson uses midpoint coefficient evaluation and a
//! complex tridiagonal (Thomas) solve per step; both the drift term and the
//! squeeze term make the system non-symmetric, which the solve does not
//! assume away.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::coefficients::{SwansonParams, TimePhaseSpaceSample};
use crate::error::{CoreError, Result};
use crate::grid::{GridDescriptor, WavefunctionGrid};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Default symmetric-difference probe step: 1e-5 · (2π/ω₀).
pub fn default_dt_probe(omega0: f64) -> f64 {
    1e-5 * (2.0 * std::f64::consts::PI / omega0)
}

/// Apply the finite-difference Hamiltonian at one instant.
pub fn apply_position_hamiltonian(
    tp: &TimePhaseSpaceSample,
    psi: &WavefunctionGrid,
) -> Result<WavefunctionGrid> {
    psi.check_support()?;
    let n = psi.grid.n_points;
    let dx = psi.grid.dx();
    let inv_2m = (tp.mass * 2.0).finv();
    let half_mw2 = tp.mass * tp.omega_sq * 0.5;
    let mut out = vec![ZERO; n];
    for i in 0..n {
        let x = psi.grid.x(i);
        let here = psi.values[i];
        let left = if i > 0 { psi.values[i - 1] } else { ZERO };
        let right = if i + 1 < n { psi.values[i + 1] } else { ZERO };
        let d1 = (right - left) / (2.0 * dx);
        let d2 = (right - here * 2.0 + left) / (dx * dx);
        out[i] = -inv_2m * d2
            + (half_mw2 * x * x + tp.force * x + tp.v0 + tp.big_omega * 0.5) * here
            + (tp.big_omega * x + tp.nu) * d1;
    }
    WavefunctionGrid::new(psi.grid, out, psi.time_tag)
}

/// Relative Schrödinger residual
/// ‖i(ψ(t+δ) - ψ(t-δ))/2δ - H(t)ψ(t)‖₂ / ‖H(t)ψ(t)‖₂
/// over interior samples, for a candidate ψ evaluable at arbitrary t.
pub fn schrodinger_residual(
    scenario: &SwansonParams,
    candidate: &dyn Fn(f64) -> Result<WavefunctionGrid>,
    t: f64,
    dt_probe: f64,
) -> Result<f64> {
    let psi = candidate(t)?;
    psi.check_support()?;
    let sample = scenario.phase_space_at(t)?;
    let h_psi = apply_position_hamiltonian(&sample, &psi)?;
    let plus = candidate(t + dt_probe)?;
    let minus = candidate(t - dt_probe)?;
    if plus.grid != psi.grid || minus.grid != psi.grid {
        return Err(CoreError::GridMismatch(
            "candidate changed grids between probe times".into(),
        ));
    }
    let n = psi.grid.n_points;
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for i in 1..n - 1 {
        let dpsi_dt = C64::new(0.0, 1.0) * (plus.values[i] - minus.values[i]) / (2.0 * dt_probe);
        num += (dpsi_dt - h_psi.values[i]).norm_sqr();
        den += h_psi.values[i].norm_sqr();
    }
    if den == 0.0 {
        return Err(CoreError::InvalidConfig(
            "Hψ vanishes on the interior".into(),
        ));
    }
    Ok((num / den).sqrt())
}

/// Thomas elimination for a general complex tridiagonal system.
fn solve_tridiagonal(
    sub: &[C64],
    diag: &[C64],
    sup: &[C64],
    rhs: &[C64],
    c_work: &mut Vec<C64>,
    d_work: &mut Vec<C64>,
) -> Result<Vec<C64>> {
    let n = diag.len();
    c_work.clear();
    c_work.resize(n - 1, ZERO);
    d_work.clear();
    d_work.resize(n, ZERO);
    let mut beta = diag[0];
    if beta.norm() < f64::MIN_POSITIVE {
        return Err(CoreError::SolverBreakdown {
            row: 0,
            pivot_abs: beta.norm(),
        });
    }
    c_work[0] = sup[0] / beta;
    d_work[0] = rhs[0] / beta;
    for i in 1..n {
        beta = diag[i] - sub[i - 1] * c_work[i - 1];
        if beta.norm() < f64::MIN_POSITIVE {
            return Err(CoreError::SolverBreakdown {
                row: i,
                pivot_abs: beta.norm(),
            });
        }
        if i < n - 1 {
            c_work[i] = sup[i] / beta;
        }
        d_work[i] = (rhs[i] - sub[i - 1] * d_work[i - 1]) / beta;
    }
    let mut x = vec![ZERO; n];
    x[n - 1] = d_work[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d_work[i] - c_work[i] * x[i + 1];
    }
    Ok(x)
}

struct Tridiag {
    sub: Vec<C64>,
    diag: Vec<C64>,
    sup: Vec<C64>,
}

/// Tridiagonal representation of H(t) on the grid.
fn hamiltonian_stencil(tp: &TimePhaseSpaceSample, grid: &GridDescriptor) -> Tridiag {
    let n = grid.n_points;
    let dx = grid.dx();
    let inv_2mdx2 = (tp.mass * 2.0 * dx * dx).finv();
    let half_mw2 = tp.mass * tp.omega_sq * 0.5;
    let mut sub = vec![ZERO; n - 1];
    let mut diag = vec![ZERO; n];
    let mut sup = vec![ZERO; n - 1];
    for i in 0..n {
        let x = grid.x(i);
        diag[i] = inv_2mdx2 * 2.0 + half_mw2 * x * x + tp.force * x + tp.v0 + tp.big_omega * 0.5;
        let drift = tp.big_omega * x + tp.nu;
        if i + 1 < n {
            sup[i] = -inv_2mdx2 + drift / (2.0 * dx);
        }
        if i > 0 {
            sub[i - 1] = -inv_2mdx2 - drift / (2.0 * dx);
        }
    }
    Tridiag { sub, diag, sup }
}

/// Crank–Nicolson evolution
/// (I + i·dt/2·H(t+dt/2))ψ_{k+1} = (I - i·dt/2·H(t+dt/2))ψ_k,
/// second order in dt and dx. The step count is rounded so the final time is
/// hit exactly.
pub fn crank_nicolson_evolve(
    scenario: &SwansonParams,
    psi0: &WavefunctionGrid,
    t_final: f64,
    dt: f64,
) -> Result<WavefunctionGrid> {
    if !(dt > 0.0) || !(t_final >= 0.0) {
        return Err(CoreError::InvalidConfig(
            "crank_nicolson_evolve needs dt > 0 and t_final ≥ 0".into(),
        ));
    }
    psi0.check_support()?;
    let n_steps = (t_final / dt).round().max(1.0) as usize;
    let dt = t_final / n_steps as f64;
    let n = psi0.grid.n_points;
    let mut psi = psi0.values.clone();
    let mut rhs = vec![ZERO; n];
    let mut c_work = Vec::new();
    let mut d_work = Vec::new();
    let half_idt = C64::new(0.0, 0.5 * dt);

    for k in 0..n_steps {
        let t_mid = psi0.time_tag + (k as f64 + 0.5) * dt;
        let tp = scenario.phase_space_at(t_mid)?;
        let st = hamiltonian_stencil(&tp, &psi0.grid);
        // rhs = (I - i dt/2 H) psi
        for i in 0..n {
            let mut h_psi = st.diag[i] * psi[i];
            if i > 0 {
                h_psi += st.sub[i - 1] * psi[i - 1];
            }
            if i + 1 < n {
                h_psi += st.sup[i] * psi[i + 1];
            }
            rhs[i] = psi[i] - half_idt * h_psi;
        }
        let sub: Vec<C64> = st.sub.iter().map(|z| half_idt * z).collect();
        let diag: Vec<C64> = st.diag.iter().map(|z| C64::new(1.0, 0.0) + half_idt * z).collect();
        let sup: Vec<C64> = st.sup.iter().map(|z| half_idt * z).collect();
        psi = solve_tridiagonal(&sub, &diag, &sup, &rhs, &mut c_work, &mut d_work)?;
    }
    let out = WavefunctionGrid::new(psi0.grid, psi, psi0.time_tag + t_final)?;
    out.check_support()?;
    Ok(out)
}

/// Record of one verification run, serialized next to its CSV artifacts.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub scenario: String,
    pub grid: GridRecord,
    pub dt: f64,
    pub t_final: f64,
    pub residuals: Vec<ResidualRow>,
}

#[derive(Debug, Serialize)]
pub struct GridRecord {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl From<&GridDescriptor> for GridRecord {
    fn from(g: &GridDescriptor) -> Self {
        GridRecord {
            x_min: g.x_min,
            x_max: g.x_max,
            n_points: g.n_points,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ResidualRow {
    pub t: f64,
    pub residual: f64,
}
