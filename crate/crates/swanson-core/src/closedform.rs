//! Closed-form results: energy spectra, exact propagator factorizations, and
//! the analytic time-dependent Gaussian wavefunction of the complex-mass
//! scenario.
//!
//! Every factor appearing in the propagator chains maps a complex Gaussian
//! `exp(-a x² + b x + c)` to another complex Gaussian, so evolution is done
//! by transporting `(a, b, c)` analytically instead of discretizing
//! operators. The harmonic-oscillator step uses the Mehler-kernel update in
//! the cancellation-free form
//!   D = cos θ + (2i sin θ / m₀ω₀)·a,
//!   a' = (a cos θ + (im₀ω₀/2) sin θ)/D,  b' = b/D,
//!   c' = c + i sin θ·b²/(2m₀ω₀ D) - ln(D)/2,
//! substepped so each log stays on the principal branch; the composed result
//! is the continuous-in-t propagator (correct Maslov phase through the
//! caustics, where the tan(ω₀t/2) split of the factored form is singular).

use num_complex::Complex64 as C64;

use crate::coefficients::{complex_mass_gamma, PhaseSpaceParams, Scenario};
use crate::error::{CoreError, Result};
use crate::grid::{GridDescriptor, WavefunctionGrid};
use crate::transforms::{self, QuadForm};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}
const I: C64 = C64::new(0.0, 1.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Margin around ω₀t = π (mod 2π) treated as the tan singularity.
pub const TAN_SINGULARITY_TOL: f64 = 1e-9;

/// Initial Gaussian wavepacket (σ√(2π))^(-1/2)·exp(-(x-x₀)²/4σ²).
#[derive(Debug, Clone, Copy)]
pub struct GaussianInitial {
    pub sigma: f64,
    pub x0: f64,
}

impl GaussianInitial {
    pub fn new(sigma: f64, x0: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(CoreError::InvalidConfig("sigma must be positive".into()));
        }
        Ok(GaussianInitial { sigma, x0 })
    }
}

/// ψ(x) = exp(-a x² + b x + c) with complex parameters; the normalization
/// lives inside c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexGaussian {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl ComplexGaussian {
    pub fn from_initial(init: &GaussianInitial) -> Self {
        let a = 1.0 / (4.0 * init.sigma * init.sigma);
        ComplexGaussian {
            a: c(a),
            b: c(2.0 * a * init.x0),
            c: c(-a * init.x0 * init.x0
                - 0.5 * (init.sigma * (2.0 * std::f64::consts::PI).sqrt()).ln()),
        }
    }

    pub fn eval(&self, x: f64) -> C64 {
        (-self.a * x * x + self.b * x + self.c).exp()
    }

    pub fn sample(&self, grid: GridDescriptor, time_tag: f64) -> WavefunctionGrid {
        WavefunctionGrid::sample(grid, time_tag, |x| self.eval(x))
    }

    /// exp(λ d²/dx²), principal branch of the √(1+4λa) prefactor.
    pub fn heat(&self, lambda: C64) -> Self {
        let d = ONE + lambda * self.a * 4.0;
        ComplexGaussian {
            a: self.a / d,
            b: self.b / d,
            c: self.c + lambda * self.b * self.b / d - d.ln() * 0.5,
        }
    }

    /// Multiply by exp(-q x²).
    pub fn mul_quadratic(&self, q: C64) -> Self {
        ComplexGaussian {
            a: self.a + q,
            b: self.b,
            c: self.c,
        }
    }

    /// Dilatation x → ρx (no prefactor; dilation prefactors are carried
    /// separately by the propagator formulas).
    pub fn dilate(&self, rho: C64) -> Self {
        ComplexGaussian {
            a: self.a * rho * rho,
            b: self.b * rho,
            c: self.c,
        }
    }

    /// Translation x → x + λ (λ may be complex).
    pub fn translate(&self, lambda: C64) -> Self {
        ComplexGaussian {
            a: self.a,
            b: self.b - self.a * lambda * 2.0,
            c: self.c + self.b * lambda - self.a * lambda * lambda,
        }
    }

    /// One exact harmonic-oscillator step exp(-iH₀θ/ω₀); |θ| should stay
    /// below π/2 per call so the principal log never crosses its cut.
    fn ho_step(&self, m0: f64, omega0: f64, theta: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let mw = m0 * omega0;
        let d = c(ct) + I * 2.0 * st / mw * self.a;
        ComplexGaussian {
            a: (self.a * ct + I * (mw / 2.0) * st) / d,
            b: self.b / d,
            c: self.c + I * st * self.b * self.b / (d * 2.0 * mw) - d.ln() * 0.5,
        }
    }

    /// Exact evolution under p²/2m₀ + m₀ω₀²x²/2 for time t, substepped for
    /// branch continuity across the caustics.
    pub fn ho_evolve(&self, m0: f64, omega0: f64, t: f64) -> Self {
        let theta = omega0 * t;
        let n = (theta.abs() / std::f64::consts::FRAC_PI_4).ceil().max(1.0) as usize;
        let mut g = *self;
        for _ in 0..n {
            g = g.ho_step(m0, omega0, theta / n as f64);
        }
        g
    }
}

/// E_n = √(ν₁ν₂+ν₃²)(2n+1) + δ for n = 0…n_max.
pub fn spectrum_general(nu: &PhaseSpaceParams, n_max: usize) -> Result<Vec<C64>> {
    let (omega_tilde, delta) = transforms::reduced_oscillator(nu)?;
    Ok((0..=n_max)
        .map(|n| omega_tilde / 2.0 * (2.0 * n as f64 + 1.0) + delta)
        .collect())
}

/// E_n = (√(ω₀²+Γ²)/2)(2n+1) - Γν₀²m₀ω₀/(ω₀²+Γ²).
pub fn spectrum_caldirola_kanai(
    gamma: f64,
    nu0: f64,
    m0: f64,
    omega0: f64,
    n_max: usize,
) -> Vec<C64> {
    let w2g2 = omega0 * omega0 + gamma * gamma;
    let gap = w2g2.sqrt() / 2.0;
    let shift = -gamma * nu0 * nu0 * m0 * omega0 / w2g2;
    (0..=n_max)
        .map(|n| c(gap * (2.0 * n as f64 + 1.0) + shift))
        .collect()
}

/// The de-timed Caldirola–Kanai coefficient identification:
/// ν₁ = 1/2m₀, ν₂ = m₀ω₀²/2, ν₃ = Γ/2, ν₄ = ν₀, ν₅ = ν₀m₀ω₀.
pub fn caldirola_kanai_identification(
    gamma: f64,
    nu0: f64,
    m0: f64,
    omega0: f64,
) -> PhaseSpaceParams {
    PhaseSpaceParams::new(
        c(1.0 / (2.0 * m0)),
        c(m0 * omega0 * omega0 / 2.0),
        c(gamma / 2.0),
        c(nu0),
        c(nu0 * m0 * omega0),
    )
}

/// The five coefficients of the factored complex-mass propagator.
#[derive(Debug, Clone, Copy)]
pub struct PropagatorFactors {
    /// (1-2itΩ₀)^(1/4), principal fourth root.
    pub prefactor: C64,
    /// ν₀t/√(1-2itΩ₀) (the p̂-exponent coefficient).
    pub translation_shift: C64,
    /// (i/2)·ln(1-2itΩ₀) (the x̂p̂-exponent coefficient).
    pub dilation_log: C64,
    /// tan(ω₀t/2)/(2m₀ω₀), appearing twice around the x̂² factor.
    pub kinetic_coeff: C64,
    /// (m₀ω₀/2)·sin(ω₀t).
    pub potential_coeff: C64,
}

fn tan_guard(omega0: f64, t: f64) -> Result<f64> {
    let theta = omega0 * t;
    // distance to π mod 2π
    let wrapped = (theta - std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI);
    let dist = wrapped.min(2.0 * std::f64::consts::PI - wrapped);
    if dist < TAN_SINGULARITY_TOL {
        return Err(CoreError::TanSingularity {
            theta,
            margin: TAN_SINGULARITY_TOL,
        });
    }
    Ok(theta)
}

pub fn propagator_factors(scenario: &Scenario, t: f64) -> Result<PropagatorFactors> {
    let Scenario::ComplexMass {
        omega_cap,
        nu0,
        m0,
        omega0,
    } = *scenario
    else {
        return Err(CoreError::InvalidConfig(
            "propagator_factors applies to the complex-mass scenario".into(),
        ));
    };
    let theta = tan_guard(omega0, t)?;
    let u = ONE - I * 2.0 * t * omega_cap;
    Ok(PropagatorFactors {
        prefactor: u.powf(0.25),
        translation_shift: complex_mass_gamma(omega_cap, nu0, t),
        dilation_log: I * 0.5 * u.ln(),
        kinetic_coeff: c((theta / 2.0).tan() / (2.0 * m0 * omega0)),
        potential_coeff: c(m0 * omega0 / 2.0 * theta.sin()),
    })
}

fn complex_mass_args(scenario: &Scenario) -> Result<(f64, f64, f64, f64)> {
    match *scenario {
        Scenario::ComplexMass {
            omega_cap,
            nu0,
            m0,
            omega0,
        } => Ok((omega_cap, nu0, m0, omega0)),
        _ => Err(CoreError::InvalidConfig(
            "expected the complex-mass scenario".into(),
        )),
    }
}

/// Gaussian parameters of ψ(·,t) for the complex-mass scenario, evolved by
/// the continuous (Mehler-substepped) route: exact HO evolution, then
/// dilatation, complex translation and the (1-2itΩ₀)^(1/4) prefactor.
pub fn evolve_gaussian_params(
    scenario: &Scenario,
    init: &GaussianInitial,
    t: f64,
) -> Result<ComplexGaussian> {
    let (omega_cap, nu0, m0, omega0) = complex_mass_args(scenario)?;
    if t < 0.0 {
        return Err(CoreError::InvalidConfig("evolution requires t ≥ 0".into()));
    }
    let mut g = ComplexGaussian::from_initial(init).ho_evolve(m0, omega0, t);
    let u = ONE - I * 2.0 * t * omega_cap;
    g = g.dilate(u.sqrt());
    g = g.translate(-I * complex_mass_gamma(omega_cap, nu0, t));
    g.c += u.ln() * 0.25;
    Ok(g)
}

/// Sampled exact wavefunction ψ(x,t), unnormalized (non-Hermitian evolution
/// does not preserve the norm). Away from the tan singularities this equals
/// the closed-form transcription [`transcribed_wavefunction`] (which uses principal
/// branches and therefore flips sign at each caustic); on the singularities
/// — where the factored form is undefined — only the continuous route is
/// used, which is regular there.
pub fn evolve_gaussian(
    scenario: &Scenario,
    init: &GaussianInitial,
    t: f64,
    grid: GridDescriptor,
) -> Result<WavefunctionGrid> {
    let g = evolve_gaussian_params(scenario, init, t)?;
    Ok(g.sample(grid, t))
}

/// The factored route: heat / quadratic phase / heat, then dilatation,
/// translation and prefactor, all acting on Gaussian parameters. Singular at
/// ω₀t = π (mod 2π).
pub fn factored_gaussian_params(
    scenario: &Scenario,
    init: &GaussianInitial,
    t: f64,
) -> Result<ComplexGaussian> {
    let (omega_cap, nu0, m0, omega0) = complex_mass_args(scenario)?;
    let theta = tan_guard(omega0, t)?;
    let tau = (theta / 2.0).tan() / (2.0 * m0 * omega0);
    let mut g = ComplexGaussian::from_initial(init);
    g = g.heat(I * tau);
    g = g.mul_quadratic(I * (m0 * omega0 / 2.0) * theta.sin());
    g = g.heat(I * tau);
    let u = ONE - I * 2.0 * t * omega_cap;
    g = g.dilate(u.sqrt());
    g = g.translate(-I * complex_mass_gamma(omega_cap, nu0, t));
    g.c += u.ln() * 0.25;
    Ok(g)
}

/// Direct transcription of the final closed-form ψ(x,t) (principal
/// branches): the dilation acts as x → x√(1-2itΩ₀) and the complex
/// translation as x → x - iν₀t/√(1-2itΩ₀) inside the analytic Gaussian.
pub fn transcribed_wavefunction(
    scenario: &Scenario,
    init: &GaussianInitial,
    t: f64,
    x: f64,
) -> Result<C64> {
    let (omega_cap, nu0, m0, omega0) = complex_mass_args(scenario)?;
    let theta = tan_guard(omega0, t)?;
    let u = ONE - I * 2.0 * t * omega_cap;
    let su = u.sqrt();
    let a0 = 1.0 / (4.0 * init.sigma * init.sigma);
    let tn = (theta / 2.0).tan();
    let mw = m0 * omega0;
    let p_half = I * (mw / 2.0) * tn + a0;
    let dm = c(theta.cos()) + I * (2.0 / mw) * a0 * theta.sin();
    let norm0 = (init.sigma * (2.0 * std::f64::consts::PI).sqrt()).sqrt();
    let pref = u.powf(0.25)
        * (c(a0 * a0 * init.x0 * init.x0) / p_half - a0 * init.x0 * init.x0).exp()
        / (norm0 * dm.sqrt());
    let shift = c(init.x0) / (ONE + I * 2.0 * init.sigma * init.sigma * mw * tn);
    let arg2 = x * su - I * nu0 * t - shift;
    let t2 = (-I * (mw / 2.0) * tn * u * (c(x) - I * complex_mass_gamma(omega_cap, nu0, t)).powi(2))
        .exp();
    let t3 = (-(p_half / dm) * arg2 * arg2).exp();
    Ok(pref * t2 * t3)
}

/// One factor of an exact propagator chain: the operator exp(`exponent`).
#[derive(Debug, Clone)]
pub struct PropagatorFactor {
    pub label: &'static str,
    pub exponent: QuadForm,
}

impl PropagatorFactor {
    fn new(label: &'static str, exponent: QuadForm) -> Self {
        PropagatorFactor { label, exponent }
    }

    /// Realize the factor as a dense Fock-space matrix.
    pub fn realize(
        &self,
        ops: &crate::fockspace::LadderOps,
    ) -> Result<crate::fockspace::FockOperator> {
        let m = self.exponent.assemble(ops)?;
        crate::fockspace::matrix_exponential(&m, 1e-13)
    }
}

/// Case selector for [`exact_propagator_chain`].
#[derive(Debug, Clone)]
pub enum ChainCase {
    Forced { theta: f64, alpha1: f64, beta1: f64 },
    GeneralStatic { nu: PhaseSpaceParams },
    CaldirolaKanai { gamma: f64, nu0: f64 },
}

/// Ordered factor list (left to right) of the exact solution
/// |ψ(t)⟩ = Π factors |ψ(0)⟩, with all scalar parameters bound.
///
/// The static chains read phase · η… · exp(-iH̃t) · inverse η…; the
/// Caldirola–Kanai chain additionally carries the de-timing squeeze
/// exp(-(Γt/2)(xp+px)) on the left, which restores the time-dependent frame
/// (it is the transformation that froze the Hamiltonian in the first place).
pub fn exact_propagator_chain(
    case: &ChainCase,
    m0: f64,
    omega0: f64,
    t: f64,
) -> Result<Vec<PropagatorFactor>> {
    let ho_exponent = |omega_eff: C64| {
        QuadForm::quadratic(
            -I * omega_eff * t / (2.0 * m0 * omega0),
            -I * omega_eff * t * (m0 * omega0 / 2.0),
            C64::new(0.0, 0.0),
        )
    };
    match case {
        ChainCase::Forced {
            theta,
            alpha1,
            beta1,
        } => {
            let params = crate::coefficients::SwansonParams::new_static(
                crate::coefficients::LadderCoefficients::new(
                    c(*theta),
                    c(*alpha1),
                    c(*beta1),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                ),
                m0,
                omega0,
            )?;
            let g = transforms::eta_forced_generator(&params)?;
            let phase = I * omega0 * alpha1 * beta1 * t / (2.0 * theta);
            Ok(vec![
                PropagatorFactor::new("phase", QuadForm::constant(phase)),
                PropagatorFactor::new("eta", g),
                PropagatorFactor::new("oscillator", ho_exponent(c(2.0 * theta * omega0))),
                PropagatorFactor::new("eta_inverse", g.scale(c(-1.0))),
            ])
        }
        ChainCase::GeneralStatic { nu } => {
            let spec = transforms::TransformSpec::for_phase_space(nu, m0, omega0)?;
            Ok(vec![
                PropagatorFactor::new("phase", QuadForm::constant(-I * spec.delta * t)),
                PropagatorFactor::new("eta1", spec.eta1_generator),
                PropagatorFactor::new("eta2", spec.eta2_generator),
                PropagatorFactor::new("oscillator", ho_exponent(spec.omega_tilde)),
                PropagatorFactor::new("eta2_inverse", spec.eta2_generator.scale(c(-1.0))),
                PropagatorFactor::new("eta1_inverse", spec.eta1_generator.scale(c(-1.0))),
            ])
        }
        ChainCase::CaldirolaKanai { gamma, nu0 } => {
            let nu = caldirola_kanai_identification(*gamma, *nu0, m0, omega0);
            let spec = transforms::TransformSpec::for_phase_space(&nu, m0, omega0)?;
            let mut chain = vec![PropagatorFactor::new(
                "detiming_squeeze",
                QuadForm {
                    xp: c(-gamma * t / 2.0),
                    ..Default::default()
                },
            )];
            chain.push(PropagatorFactor::new(
                "phase",
                QuadForm::constant(-I * spec.delta * t),
            ));
            chain.push(PropagatorFactor::new("eta1", spec.eta1_generator));
            chain.push(PropagatorFactor::new("eta2", spec.eta2_generator));
            chain.push(PropagatorFactor::new(
                "oscillator",
                ho_exponent(spec.omega_tilde),
            ));
            chain.push(PropagatorFactor::new(
                "eta2_inverse",
                spec.eta2_generator.scale(c(-1.0)),
            ));
            chain.push(PropagatorFactor::new(
                "eta1_inverse",
                spec.eta1_generator.scale(c(-1.0)),
            ));
            Ok(chain)
        }
    }
}
