//! Truncated-Fock-basis linear algebra: ladder/position/momentum matrices,
//! Hamiltonian assembly, dense complex eigensolving, matrix exponentials and
//! similarity conjugation. This module is the numerical oracle against which
//! the closed-form results are checked.
//!
//! Basis conventions: `a[n, n+1] = √(n+1)`,
//! `x = (a + a†)/√(2m₀ω₀)`, `p = -i√(m₀ω₀/2)(a - a†)`.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::coefficients::PhaseSpaceParams;
use crate::error::{CoreError, Result};
use crate::grid::{GridDescriptor, WavefunctionGrid};
use crate::linalg;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}
const I: C64 = C64::new(0.0, 1.0);

/// Dense complex operator in the truncated number basis.
#[derive(Debug, Clone)]
pub struct FockOperator {
    pub dim: usize,
    pub data: Array2<C64>,
    pub m0: f64,
    pub omega0: f64,
}

impl FockOperator {
    pub fn new(data: Array2<C64>, m0: f64, omega0: f64) -> Result<Self> {
        let dim = data.nrows();
        if data.ncols() != dim {
            return Err(CoreError::DimensionMismatch(format!(
                "operator must be square, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        if dim < 2 {
            return Err(CoreError::InvalidConfig(
                "truncation dimension must be at least 2".into(),
            ));
        }
        Ok(FockOperator {
            dim,
            data,
            m0,
            omega0,
        })
    }

    pub fn zeros(dim: usize, m0: f64, omega0: f64) -> Result<Self> {
        FockOperator::new(Array2::zeros((dim, dim)), m0, omega0)
    }

    pub fn identity(dim: usize, m0: f64, omega0: f64) -> Result<Self> {
        FockOperator::new(linalg::identity(dim), m0, omega0)
    }

    fn check_compatible(&self, other: &FockOperator) -> Result<()> {
        if self.dim != other.dim || self.m0 != other.m0 || self.omega0 != other.omega0 {
            return Err(CoreError::DimensionMismatch(format!(
                "dim {} (m0={}, ω0={}) vs dim {} (m0={}, ω0={})",
                self.dim, self.m0, self.omega0, other.dim, other.m0, other.omega0
            )));
        }
        Ok(())
    }

    pub fn dot(&self, other: &FockOperator) -> Result<FockOperator> {
        self.check_compatible(other)?;
        FockOperator::new(self.data.dot(&other.data), self.m0, self.omega0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        linalg::max_abs(&(&self.data - &linalg::adjoint(&self.data))) <= tol
    }

    /// Frobenius norm of the leading `k`×`k` block.
    pub fn interior_norm(&self, k: usize) -> f64 {
        let k = k.min(self.dim);
        linalg::norm_fro(&self.data.slice(ndarray::s![..k, ..k]).to_owned())
    }

    /// Plain-text debug dump: header `dim=N`, then row-major `re+imi` entries.
    pub fn debug_dump(&self) -> String {
        let mut out = format!("dim={}\n", self.dim);
        for i in 0..self.dim {
            let mut row = Vec::with_capacity(self.dim);
            for j in 0..self.dim {
                let z = self.data[[i, j]];
                row.push(format!("{:+e}{:+e}i", z.re, z.im));
            }
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The four basis operators built at a common truncation.
pub struct LadderOps {
    pub a: FockOperator,
    pub a_dag: FockOperator,
    pub x: FockOperator,
    pub p: FockOperator,
}

pub fn ladder_matrices(dim: usize, m0: f64, omega0: f64) -> Result<LadderOps> {
    if dim < 2 {
        return Err(CoreError::InvalidConfig(
            "truncation dimension must be at least 2".into(),
        ));
    }
    let mut a = Array2::<C64>::zeros((dim, dim));
    for n in 0..dim - 1 {
        a[[n, n + 1]] = c(((n + 1) as f64).sqrt());
    }
    let a_dag = linalg::adjoint(&a);
    let xs = 1.0 / (2.0 * m0 * omega0).sqrt();
    let ps = (m0 * omega0 / 2.0).sqrt();
    let x = (&a + &a_dag).mapv(|z| z * xs);
    let p = (&a - &a_dag).mapv(|z| z * (-I) * ps);
    Ok(LadderOps {
        a: FockOperator::new(a, m0, omega0)?,
        a_dag: FockOperator::new(a_dag, m0, omega0)?,
        x: FockOperator::new(x, m0, omega0)?,
        p: FockOperator::new(p, m0, omega0)?,
    })
}

/// `H = ν₁p² + ν₂x² + iν₃(xp+px) + iν₄p + ν₅x + extra_const·I`.
pub fn assemble_hamiltonian(
    nu: &PhaseSpaceParams,
    extra_const: C64,
    ops: &LadderOps,
) -> Result<FockOperator> {
    ops.x.check_compatible(&ops.p)?;
    let x = &ops.x.data;
    let p = &ops.p.data;
    let xx = x.dot(x);
    let pp = p.dot(p);
    let xp = x.dot(p);
    let px = p.dot(x);
    let mut h = pp.mapv(|z| z * nu.nu1) + xx.mapv(|z| z * nu.nu2);
    h = h + (&xp + &px).mapv(|z| z * (I * nu.nu3));
    h = h + p.mapv(|z| z * (I * nu.nu4)) + x.mapv(|z| z * nu.nu5);
    for i in 0..ops.x.dim {
        h[[i, i]] += extra_const;
    }
    FockOperator::new(h, ops.x.m0, ops.x.omega0)
}

/// Eigenvalues sorted lexicographically by (Re, Im), each with a residual
/// condition estimate. `converged_count` is only meaningful when produced by
/// [`converged_spectrum`]; a single eigensolve reports 0 (nothing vetted).
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<C64>,
    pub residuals: Vec<f64>,
    pub converged_count: usize,
    pub iterations: usize,
}

pub fn sort_lexicographic(pairs: &mut [(C64, f64)]) {
    pairs.sort_by(|a, b| {
        a.0.re
            .partial_cmp(&b.0.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(
                a.0.im
                    .partial_cmp(&b.0.im)
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
    });
}

/// All eigenvalues of the (generally non-normal) dense operator.
pub fn eigenvalues(h: &FockOperator) -> Result<SpectrumResult> {
    if !linalg::is_finite(&h.data) {
        return Err(CoreError::InvalidConfig(
            "operator has non-finite entries".into(),
        ));
    }
    let out = linalg::eig(&h.data)?;
    let mut pairs: Vec<(C64, f64)> = out.values.into_iter().zip(out.residuals).collect();
    sort_lexicographic(&mut pairs);
    let (eigenvalues, residuals) = pairs.into_iter().unzip();
    Ok(SpectrumResult {
        eigenvalues,
        residuals,
        converged_count: 0,
        iterations: out.iterations,
    })
}

/// Truncation-convergence vetting: eigensolve at `dim` and `2·dim` and keep
/// the leading eigenvalues that agree to relative 1e-8.
pub fn converged_spectrum(
    build: impl Fn(usize) -> Result<FockOperator>,
    dim: usize,
) -> Result<SpectrumResult> {
    let h1 = build(dim)?;
    let h2 = build(2 * dim)?;
    let mut s1 = eigenvalues(&h1)?;
    let s2 = eigenvalues(&h2)?;
    let mut count = 0usize;
    for k in 0..s1.eigenvalues.len() {
        let a = s1.eigenvalues[k];
        let b = s2.eigenvalues[k];
        let scale = b.norm().max(1.0);
        if (a - b).norm() <= 1e-8 * scale {
            count += 1;
        } else {
            break;
        }
    }
    s1.converged_count = count;
    Ok(s1)
}

/// `exp(A)` with a backward-error tolerance (default 1e-13).
pub fn matrix_exponential(a: &FockOperator, tol: f64) -> Result<FockOperator> {
    FockOperator::new(linalg::expm(&a.data, tol)?, a.m0, a.omega0)
}

/// A similarity transform `S = exp(G)` held by its generator, so the inverse
/// is exp(-G) and no matrix inversion is ever performed.
#[derive(Debug, Clone)]
pub struct SimilarityTransform {
    pub generator: FockOperator,
}

impl SimilarityTransform {
    pub fn new(generator: FockOperator) -> Self {
        SimilarityTransform { generator }
    }

    pub fn matrix(&self) -> Result<FockOperator> {
        matrix_exponential(&self.generator, 1e-13)
    }

    pub fn inverse_matrix(&self) -> Result<FockOperator> {
        let neg = FockOperator::new(
            self.generator.data.mapv(|z| -z),
            self.generator.m0,
            self.generator.omega0,
        )?;
        matrix_exponential(&neg, 1e-13)
    }

    /// `exp(-G) · H · exp(G)`.
    ///
    /// Sound for generators whose exponential stays moderate at the given
    /// truncation (linear generators, unitary evolutions, weak squeezes).
    /// Strongly non-unitary quadratic generators grow like e^{O(|G| · dim)}
    /// under truncation; use the coefficient transport in the transforms
    /// module for those.
    pub fn conjugate(&self, h: &FockOperator) -> Result<FockOperator> {
        self.generator.check_compatible(h)?;
        let s = self.matrix()?;
        let s_inv = self.inverse_matrix()?;
        s_inv.dot(h)?.dot(&s)
    }
}

/// Normalized harmonic-oscillator eigenfunctions φ₀…φ_{dim-1} sampled on a
/// grid (rows: grid points, columns: quantum number), by the stable
/// three-term recurrence.
pub fn number_basis_on_grid(
    dim: usize,
    m0: f64,
    omega0: f64,
    grid: &GridDescriptor,
) -> Array2<f64> {
    let mw = m0 * omega0;
    let norm0 = (mw / std::f64::consts::PI).powf(0.25);
    let mut basis = Array2::<f64>::zeros((grid.n_points, dim));
    for (i, x) in grid.points().enumerate() {
        let xi = mw.sqrt() * x;
        let phi0 = norm0 * (-0.5 * xi * xi).exp();
        basis[[i, 0]] = phi0;
        if dim > 1 {
            basis[[i, 1]] = 2.0f64.sqrt() * xi * phi0;
        }
        for n in 2..dim {
            let nf = n as f64;
            basis[[i, n]] = (2.0 / nf).sqrt() * xi * basis[[i, n - 1]]
                - ((nf - 1.0) / nf).sqrt() * basis[[i, n - 2]];
        }
    }
    basis
}

/// Synthesize grid samples from number-basis coefficients.
pub fn fock_to_grid(
    coeffs: &[C64],
    basis: &Array2<f64>,
    grid: GridDescriptor,
    time_tag: f64,
) -> Result<WavefunctionGrid> {
    if coeffs.len() != basis.ncols() || basis.nrows() != grid.n_points {
        return Err(CoreError::DimensionMismatch(
            "fock_to_grid: coefficient/basis/grid sizes disagree".into(),
        ));
    }
    let values = (0..grid.n_points)
        .map(|i| {
            coeffs
                .iter()
                .enumerate()
                .map(|(n, cn)| cn * basis[[i, n]])
                .sum()
        })
        .collect();
    WavefunctionGrid::new(grid, values, time_tag)
}

/// Project grid samples onto the number basis by trapezoid quadrature.
pub fn grid_to_fock(psi: &WavefunctionGrid, basis: &Array2<f64>) -> Result<Vec<C64>> {
    if basis.nrows() != psi.grid.n_points {
        return Err(CoreError::DimensionMismatch(
            "grid_to_fock: basis rows must match the grid".into(),
        ));
    }
    let dx = psi.grid.dx();
    let n = psi.grid.n_points;
    let dim = basis.ncols();
    let mut coeffs = vec![C64::new(0.0, 0.0); dim];
    for (k, coeff) in coeffs.iter_mut().enumerate() {
        let mut s = C64::new(0.0, 0.0);
        for i in 0..n {
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            s += psi.values[i] * (basis[[i, k]] * w);
        }
        *coeff = s * dx;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn ladder_entries_and_commutator() {
        let ops = ladder_matrices(3, 1.0, 1.0).unwrap();
        assert!((ops.a.data[[0, 1]] - c(1.0)).norm() < 1e-15);
        assert!((ops.a.data[[1, 2]] - c(2.0f64.sqrt())).norm() < 1e-15);
        assert_eq!(ops.a.data.iter().filter(|z| z.norm() > 0.0).count(), 2);

        // [a, a†] = I on the leading block; corner entry is 1 - N
        let n = 8;
        let ops = ladder_matrices(n, 1.0, 1.0).unwrap();
        let comm = &ops.a.data.dot(&ops.a_dag.data) - &ops.a_dag.data.dot(&ops.a.data);
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((comm[[i, j]] - c(want)).norm() < 1e-14);
            }
        }
        assert!((comm[[n - 1, n - 1]] - c(1.0 - n as f64)).norm() < 1e-12);
    }

    #[test]
    fn canonical_xp_commutator() {
        let ops = ladder_matrices(8, 1.0, 1.0).unwrap();
        let comm = &ops.x.data.dot(&ops.p.data) - &ops.p.data.dot(&ops.x.data);
        for i in 0..7 {
            for j in 0..7 {
                let want = if i == j { I } else { c(0.0) };
                assert!((comm[[i, j]] - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn x2_plus_p2_is_diagonal() {
        // exactly diagonal with entries 2n+1; the off-diagonal a², a†² terms
        // cancel. The corner entry carries the truncation artifact (its aa†
        // contribution is cut), so it is excluded from the 2n+1 assertion.
        let ops = ladder_matrices(10, 1.0, 1.0).unwrap();
        let m = &ops.x.data.dot(&ops.x.data) + &ops.p.data.dot(&ops.p.data);
        for i in 0..10 {
            for j in 0..10 {
                if i != j {
                    assert!(m[[i, j]].norm() < 1e-13, "({i},{j})");
                }
            }
        }
        for i in 0..9 {
            assert!((m[[i, i]] - c(2.0 * i as f64 + 1.0)).norm() < 1e-13, "n={i}");
        }
    }

    #[test]
    fn oscillator_assembly_is_diagonal() {
        let ops = ladder_matrices(16, 1.0, 1.0).unwrap();
        let nu = PhaseSpaceParams::new(c(0.5), c(0.5), c(0.0), c(0.0), c(0.0));
        let h = assemble_hamiltonian(&nu, c(0.0), &ops).unwrap();
        for i in 0..15 {
            assert!((h.data[[i, i]] - c(i as f64 + 0.5)).norm() < 1e-13);
        }
    }

    #[test]
    fn oscillator_spectrum_is_exact() {
        let dim = 64;
        let ops = ladder_matrices(dim, 1.0, 1.0).unwrap();
        let nu = PhaseSpaceParams::new(c(0.5), c(0.5), c(0.0), c(0.0), c(0.0));
        let h = assemble_hamiltonian(&nu, c(0.0), &ops).unwrap();
        let s = eigenvalues(&h).unwrap();
        // the corner eigenvalue (N-1)/2 is a truncation artifact that lands
        // mid-spectrum; the leading half is exact
        for (n, l) in s.eigenvalues.iter().take(dim / 2).enumerate() {
            assert!((l - c(n as f64 + 0.5)).norm() < 1e-12, "n={n}: {l}");
        }
    }

    #[test]
    fn sorted_diag_example() {
        // lexicographic (Re, Im): -3 (Re=-3), then 2i (Re=0), then 1 (Re=1)
        let mut d = Array2::<C64>::zeros((3, 3));
        d[[0, 0]] = c(1.0);
        d[[1, 1]] = I * 2.0;
        d[[2, 2]] = c(-3.0);
        let h = FockOperator::new(d, 1.0, 1.0).unwrap();
        let s = eigenvalues(&h).unwrap();
        assert!((s.eigenvalues[0] - c(-3.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1] - I * 2.0).norm() < 1e-14);
        assert!((s.eigenvalues[2] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn pt_symmetric_spectrum_is_real() {
        // ν₄ = ν₅ = 0 with ν₁ν₂ + ν₃² > 0: non-Hermitian but real spectrum
        let ops = ladder_matrices(128, 1.0, 2.0).unwrap();
        let nu = PhaseSpaceParams::new(c(0.5), c(2.0), c(-0.5), c(0.0), c(0.0));
        let h = assemble_hamiltonian(&nu, c(0.0), &ops).unwrap();
        assert!(!h.is_hermitian(1e-10));
        let s = eigenvalues(&h).unwrap();
        let gap = 2.0 * 1.25f64.sqrt();
        for n in 0..16 {
            let l = s.eigenvalues[n];
            assert!(l.im.abs() < 1e-8, "Im λ_{n} = {}", l.im);
            let want = 1.25f64.sqrt() * (2.0 * n as f64 + 1.0);
            assert!((l.re - want).abs() < 1e-8 * want.max(1.0), "λ_{n} = {l} want {want}");
            let _ = gap;
        }
    }

    #[test]
    fn converged_spectrum_counts_leading_levels() {
        let build = |dim: usize| {
            let ops = ladder_matrices(dim, 1.0, 1.0)?;
            let nu = PhaseSpaceParams::new(c(0.5), c(0.5), c(0.0), c(0.0), c(0.0));
            assemble_hamiltonian(&nu, c(0.0), &ops)
        };
        let s = converged_spectrum(build, 48).unwrap();
        // the corner artifact (N-1)/2 = 23.5 duplicates the n = 23 level in
        // the sorted list, so exactly the leading half is vetted
        assert_eq!(s.converged_count, 24);
    }

    #[test]
    fn conjugation_preserves_interior_spectrum() {
        // displacement-type generator: exp stays bounded, product route valid
        let dim = 128;
        let ops = ladder_matrices(dim, 1.0, 2.0).unwrap();
        let nu = PhaseSpaceParams::new(c(0.5), c(2.0), c(0.5), c(1.0), c(2.0));
        let h = assemble_hamiltonian(&nu, c(0.0), &ops).unwrap();
        let gen_data = ops.x.data.mapv(|z| z * c(0.4)) + ops.p.data.mapv(|z| z * (I * 0.6));
        let tr = SimilarityTransform::new(FockOperator::new(gen_data, 1.0, 2.0).unwrap());
        let hc = tr.conjugate(&h).unwrap();
        let s1 = eigenvalues(&h).unwrap();
        let s2 = eigenvalues(&hc).unwrap();
        for n in 0..16 {
            assert!(
                (s1.eigenvalues[n] - s2.eigenvalues[n]).norm()
                    < 1e-8 * s1.eigenvalues[n].norm().max(1.0),
                "n={n}: {} vs {}",
                s1.eigenvalues[n],
                s2.eigenvalues[n]
            );
        }
    }

    #[test]
    fn identity_transform_is_inert() {
        let dim = 16;
        let ops = ladder_matrices(dim, 1.0, 1.0).unwrap();
        let nu = PhaseSpaceParams::new(c(0.5), c(0.7), c(0.1), c(0.2), c(0.3));
        let h = assemble_hamiltonian(&nu, c(0.0), &ops).unwrap();
        let tr = SimilarityTransform::new(FockOperator::zeros(dim, 1.0, 1.0).unwrap());
        let hc = tr.conjugate(&h).unwrap();
        assert!(max_abs(&(&hc.data - &h.data)) < 1e-12);
    }

    #[test]
    fn hermitian_assembly_from_hermitian_source() {
        use crate::coefficients::{ladder_to_phase_space, LadderCoefficients};
        let cf = LadderCoefficients::new(
            c(0.5),
            C64::new(0.3, 0.2),
            C64::new(0.3, -0.2),
            C64::new(0.1, -0.4),
            C64::new(0.1, 0.4),
            c(0.0),
        );
        assert!(cf.is_hermitian(1e-14));
        let nu = ladder_to_phase_space(&cf, 1.2, 0.9);
        let ops = ladder_matrices(32, 1.2, 0.9).unwrap();
        let h = assemble_hamiltonian(&nu, c(0.0), &ops).unwrap();
        assert!(h.is_hermitian(1e-12));
    }

    #[test]
    fn hermite_basis_is_orthonormal_on_grid() {
        let grid = GridDescriptor::new(-12.0, 12.0, 1024).unwrap();
        let basis = number_basis_on_grid(24, 1.0, 2.0, &grid);
        let dx = grid.dx();
        for k in [0usize, 5, 13, 23] {
            for l in [0usize, 5, 13, 23] {
                let s: f64 = (0..grid.n_points)
                    .map(|i| basis[[i, k]] * basis[[i, l]])
                    .sum::<f64>()
                    * dx;
                let want = if k == l { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-10, "({k},{l}): {s}");
            }
        }
    }

    #[test]
    fn debug_dump_has_header_and_rows() {
        let op = FockOperator::identity(3, 1.0, 1.0).unwrap();
        let dump = op.debug_dump();
        assert!(dump.starts_with("dim=3\n"));
        assert_eq!(dump.lines().count(), 4);
    }
}
