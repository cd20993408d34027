//! Hamiltonian parameterizations and the exact algebraic maps between the
//! ladder-operator form and the position/momentum (phase-space) form,
//! together with the three named coefficient scenarios.
//!
//! Conventions (ħ = 1 throughout):
//!
//! * ladder form: `H/ω₀ = θ(a†a + aa†) + α₁a† + β₁a + α₂a†² + β₂a²`, plus an
//!   additive scalar;
//! * phase-space form: `H = ν₁p² + ν₂x² + iν₃(xp+px) + iν₄p + ν₅x + const`;
//! * the stored scalar `v0` is the constant term of the position-space
//!   Hamiltonian itself (for the complex-mass scenario that is
//!   `-½γ²(t)m₀ω₀²(1-2itΩ₀)`, which already includes every frequency
//!   prefactor — adding another ω₀ would double-count it).

use num_complex::Complex64 as C64;
use serde::Deserialize;

use crate::error::{CoreError, Result};

const MASS_SINGULARITY_TOL: f64 = 1e-12;
/// Default validity window scanned for mass singularities at construction.
pub const DEFAULT_VALIDITY_WINDOW: (f64, f64) = (0.0, 100.0);

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}
const I: C64 = C64::new(0.0, 1.0);

/// One snapshot of the ladder-operator coefficients of the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderCoefficients {
    pub theta: C64,
    pub alpha1: C64,
    pub beta1: C64,
    pub alpha2: C64,
    pub beta2: C64,
    /// Additive scalar of the position-space Hamiltonian.
    pub v0: C64,
}

impl LadderCoefficients {
    pub fn new(theta: C64, alpha1: C64, beta1: C64, alpha2: C64, beta2: C64, v0: C64) -> Self {
        LadderCoefficients {
            theta,
            alpha1,
            beta1,
            alpha2,
            beta2,
            v0,
        }
    }

    /// The Hamiltonian is Hermitian iff θ and the scalar are real and each
    /// β_j is the complex conjugate of α_j.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.theta.im.abs() <= tol
            && self.v0.im.abs() <= tol
            && (self.beta1 - self.alpha1.conj()).norm() <= tol
            && (self.beta2 - self.alpha2.conj()).norm() <= tol
    }
}

/// Closed-form coefficient profiles. Profiles are scenario-tagged so they are
/// exactly evaluable at arbitrary real t; arbitrary tabulated profiles are
/// out of scope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoefficientProfile {
    Static(LadderCoefficients),
    /// Non-Hermitian Caldirola–Kanai profile: m(t) = m₀·exp(2iΓt).
    CaldirolaKanai { gamma: f64, nu0: f64 },
    /// Complex mass growing with time: m(t) = m₀·(1 − 2itΩ₀).
    ComplexMass { omega_cap: f64, nu0: f64 },
}

/// Ladder-operator coefficients together with the basis constants (m₀, ω₀).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwansonParams {
    pub profile: CoefficientProfile,
    pub m0: f64,
    pub omega0: f64,
}

impl SwansonParams {
    pub fn new_static(coeffs: LadderCoefficients, m0: f64, omega0: f64) -> Result<Self> {
        Self::validated(CoefficientProfile::Static(coeffs), m0, omega0)
    }

    fn validated(profile: CoefficientProfile, m0: f64, omega0: f64) -> Result<Self> {
        if !(m0 > 0.0) || !(omega0 > 0.0) {
            return Err(CoreError::InvalidConfig(format!(
                "m0 and omega0 must be positive (got m0 = {m0}, omega0 = {omega0})"
            )));
        }
        Ok(SwansonParams {
            profile,
            m0,
            omega0,
        })
    }

    pub fn is_static(&self) -> bool {
        matches!(self.profile, CoefficientProfile::Static(_))
    }

    /// Coefficient snapshot at time t (static profiles ignore t).
    pub fn at(&self, t: f64) -> LadderCoefficients {
        match self.profile {
            CoefficientProfile::Static(cf) => cf,
            CoefficientProfile::CaldirolaKanai { gamma, nu0 } => {
                let amp = (2.0 * self.m0 / self.omega0).sqrt() * nu0;
                LadderCoefficients {
                    theta: c(0.5 * (2.0 * gamma * t).cos()),
                    alpha1: c(amp * (gamma * t).cos()),
                    beta1: I * amp * (gamma * t).sin(),
                    alpha2: I * 0.5 * (2.0 * gamma * t).sin(),
                    beta2: I * 0.5 * (2.0 * gamma * t).sin(),
                    v0: c(0.0),
                }
            }
            CoefficientProfile::ComplexMass { omega_cap, nu0 } => {
                let (m0, w0) = (self.m0, self.omega0);
                let u = c(1.0) - I * 2.0 * t * omega_cap;
                let su = u.sqrt();
                let amp = nu0 * (m0 / (2.0 * w0)).sqrt();
                let gamma = c(nu0 * t) / su;
                LadderCoefficients {
                    theta: (c(1.0) + u * u) / (u * 4.0),
                    alpha1: -(c(amp) * (c(1.0) + I * t * w0 + c(2.0 * t * t * w0 * omega_cap)))
                        / su,
                    beta1: (c(amp) * (c(1.0) - I * t * w0 - c(2.0 * t * t * w0 * omega_cap))) / su,
                    alpha2: -(c(omega_cap) * (c(1.0) + I * 2.0 * t * w0
                        + c(2.0 * t * t * w0 * omega_cap)))
                        / (u * 2.0 * w0),
                    beta2: (c(omega_cap)
                        * (c(1.0) - I * 2.0 * t * w0 - c(2.0 * t * t * w0 * omega_cap)))
                        / (u * 2.0 * w0),
                    v0: -gamma * gamma * 0.5 * m0 * w0 * w0 * u,
                }
            }
        }
    }

    pub fn is_hermitian(&self, t: f64, tol: f64) -> bool {
        self.at(t).is_hermitian(tol)
    }

    /// The five static phase-space coefficients. Requires a static profile.
    pub fn to_phase_space(&self) -> Result<PhaseSpaceParams> {
        match self.profile {
            CoefficientProfile::Static(cf) => {
                Ok(ladder_to_phase_space(&cf, self.m0, self.omega0))
            }
            _ => Err(CoreError::InvalidConfig(
                "to_phase_space requires a static coefficient profile".into(),
            )),
        }
    }

    /// Sampled time-dependent phase-space functions (m, ω², Ω, ν, F, scalar).
    pub fn phase_space_at(&self, t: f64) -> Result<TimePhaseSpaceSample> {
        ladder_to_phase_space_t(self, t)
    }
}

/// The five coefficients of the static phase-space Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceParams {
    pub nu1: C64,
    pub nu2: C64,
    pub nu3: C64,
    pub nu4: C64,
    pub nu5: C64,
}

impl PhaseSpaceParams {
    pub fn new(nu1: C64, nu2: C64, nu3: C64, nu4: C64, nu5: C64) -> Self {
        PhaseSpaceParams {
            nu1,
            nu2,
            nu3,
            nu4,
            nu5,
        }
    }
}

/// Exact static map: ladder coefficients → (ν₁…ν₅). Linear in
/// (θ, α₁, β₁, α₂, β₂) with m₀, ω₀ fixed; total on its domain.
pub fn ladder_to_phase_space(cf: &LadderCoefficients, m0: f64, omega0: f64) -> PhaseSpaceParams {
    let sum2 = cf.alpha2 + cf.beta2;
    PhaseSpaceParams {
        nu1: (cf.theta * 2.0 - sum2) / (2.0 * m0),
        nu2: (cf.theta * 2.0 + sum2) * (m0 * omega0 * omega0 / 2.0),
        nu3: (cf.beta2 - cf.alpha2) * (omega0 / 2.0),
        nu4: (cf.beta1 - cf.alpha1) * (omega0 / (2.0 * m0)).sqrt(),
        nu5: (cf.alpha1 + cf.beta1) * (m0 * omega0.powi(3) / 2.0).sqrt(),
    }
}

/// Inverse of the static map (the linear solve of the round-trip property).
pub fn phase_space_to_ladder(nu: &PhaseSpaceParams, m0: f64, omega0: f64) -> LadderCoefficients {
    let sum2 = nu.nu2 / (m0 * omega0 * omega0 / 2.0) * 0.5 - nu.nu1 * m0;
    let diff2 = nu.nu3 * (2.0 / omega0);
    let theta = (nu.nu1 * m0 + nu.nu2 / (m0 * omega0 * omega0)) * 0.5;
    let diff1 = nu.nu4 / (omega0 / (2.0 * m0)).sqrt();
    let sum1 = nu.nu5 / (m0 * omega0.powi(3) / 2.0).sqrt();
    LadderCoefficients {
        theta,
        alpha1: (sum1 - diff1) * 0.5,
        beta1: (sum1 + diff1) * 0.5,
        alpha2: (sum2 - diff2) * 0.5,
        beta2: (sum2 + diff2) * 0.5,
        v0: c(0.0),
    }
}

/// One sample of the time-dependent phase-space functions:
/// `H(t) = p²/2m + mω²x²/2 + i(Ω/2)(xp+px) + iνp + Fx + v0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimePhaseSpaceSample {
    pub mass: C64,
    pub omega_sq: C64,
    pub big_omega: C64,
    pub nu: C64,
    pub force: C64,
    pub v0: C64,
}

impl TimePhaseSpaceSample {
    /// The equivalent static five-ν set at this instant.
    pub fn as_phase_space(&self) -> PhaseSpaceParams {
        PhaseSpaceParams {
            nu1: c(1.0) / (self.mass * 2.0),
            nu2: self.mass * self.omega_sq * 0.5,
            nu3: self.big_omega * 0.5,
            nu4: self.nu,
            nu5: self.force,
        }
    }
}

/// Time-dependent map: ladder profile → (m, ω², Ω, ν, F, v0) at time t.
pub fn ladder_to_phase_space_t(p: &SwansonParams, t: f64) -> Result<TimePhaseSpaceSample> {
    let cf = p.at(t);
    let denom = cf.theta * 2.0 - (cf.alpha2 + cf.beta2);
    if denom.norm() < MASS_SINGULARITY_TOL {
        return Err(CoreError::MassSingularity { t });
    }
    let sum2 = cf.alpha2 + cf.beta2;
    let w0 = p.omega0;
    Ok(TimePhaseSpaceSample {
        mass: c(p.m0) / denom,
        omega_sq: (cf.theta * cf.theta * 4.0 - sum2 * sum2) * (w0 * w0),
        big_omega: -(cf.alpha2 - cf.beta2) * w0,
        nu: -(cf.alpha1 - cf.beta1) * (w0 / (2.0 * p.m0)).sqrt(),
        force: (cf.alpha1 + cf.beta1) * (p.m0 * w0.powi(3) / 2.0).sqrt(),
        v0: cf.v0,
    })
}

/// Profile wrapper carrying a validity window; construction scans the window
/// and rejects profiles whose mass denominator vanishes inside it.
#[derive(Debug, Clone)]
pub struct TimePhaseSpaceParams {
    params: SwansonParams,
    window: (f64, f64),
}

impl TimePhaseSpaceParams {
    pub fn new(params: SwansonParams, window: (f64, f64)) -> Result<Self> {
        let (t0, t1) = window;
        if !(t1 > t0) {
            return Err(CoreError::InvalidConfig("empty validity window".into()));
        }
        let samples = 512;
        for k in 0..=samples {
            let t = t0 + (t1 - t0) * k as f64 / samples as f64;
            ladder_to_phase_space_t(&params, t)?;
        }
        Ok(TimePhaseSpaceParams { params, window })
    }

    pub fn with_default_window(params: SwansonParams) -> Result<Self> {
        Self::new(params, DEFAULT_VALIDITY_WINDOW)
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn params(&self) -> &SwansonParams {
        &self.params
    }

    pub fn sample(&self, t: f64) -> Result<TimePhaseSpaceSample> {
        ladder_to_phase_space_t(&self.params, t)
    }
}

/// The three named coefficient scenarios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    /// Static forced oscillator: α₂ = β₂ = 0, real (θ, α₁, β₁).
    Forced {
        theta: f64,
        alpha1: f64,
        beta1: f64,
        m0: f64,
        omega0: f64,
    },
    CaldirolaKanai {
        gamma: f64,
        nu0: f64,
        m0: f64,
        omega0: f64,
    },
    ComplexMass {
        omega_cap: f64,
        nu0: f64,
        m0: f64,
        omega0: f64,
    },
}

impl Scenario {
    pub fn m0(&self) -> f64 {
        match *self {
            Scenario::Forced { m0, .. }
            | Scenario::CaldirolaKanai { m0, .. }
            | Scenario::ComplexMass { m0, .. } => m0,
        }
    }

    pub fn omega0(&self) -> f64 {
        match *self {
            Scenario::Forced { omega0, .. }
            | Scenario::CaldirolaKanai { omega0, .. }
            | Scenario::ComplexMass { omega0, .. } => omega0,
        }
    }
}

/// Closed-form coefficient profiles for a scenario.
pub fn build_scenario(s: &Scenario) -> Result<SwansonParams> {
    match *s {
        Scenario::Forced {
            theta,
            alpha1,
            beta1,
            m0,
            omega0,
        } => SwansonParams::new_static(
            LadderCoefficients::new(c(theta), c(alpha1), c(beta1), c(0.0), c(0.0), c(0.0)),
            m0,
            omega0,
        ),
        Scenario::CaldirolaKanai {
            gamma,
            nu0,
            m0,
            omega0,
        } => {
            if gamma < 0.0 || nu0 < 0.0 {
                return Err(CoreError::InvalidConfig(
                    "Caldirola–Kanai requires Γ ≥ 0 and ν₀ ≥ 0".into(),
                ));
            }
            SwansonParams::validated(CoefficientProfile::CaldirolaKanai { gamma, nu0 }, m0, omega0)
        }
        Scenario::ComplexMass {
            omega_cap,
            nu0,
            m0,
            omega0,
        } => {
            if omega_cap < 0.0 || nu0 < 0.0 {
                return Err(CoreError::InvalidConfig(
                    "complex-mass scenario requires Ω₀ ≥ 0 and ν₀ ≥ 0".into(),
                ));
            }
            SwansonParams::validated(
                CoefficientProfile::ComplexMass { omega_cap, nu0 },
                m0,
                omega0,
            )
        }
    }
}

/// Auxiliary complex-mass transformation functions (principal branches; for
/// t ≥ 0 and Ω₀ ≥ 0 the argument 1−2itΩ₀ stays in the right half plane, so
/// no cut is crossed).
pub fn complex_mass_gamma(omega_cap: f64, nu0: f64, t: f64) -> C64 {
    c(nu0 * t) / (c(1.0) - I * 2.0 * t * omega_cap).sqrt()
}

pub fn complex_mass_delta(omega_cap: f64, t: f64) -> C64 {
    I * 0.5 * (c(1.0) - I * 2.0 * t * omega_cap).ln()
}

/// JSON scenario descriptor. Unknown keys are rejected.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: String,
    pub m0: f64,
    pub omega0: f64,
    #[serde(rename = "Gamma")]
    pub gamma: Option<f64>,
    pub nu0: Option<f64>,
    #[serde(rename = "Omega0")]
    pub omega_cap: Option<f64>,
    pub theta: Option<f64>,
    pub alpha1: Option<f64>,
    pub beta1: Option<f64>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CoreError::InvalidConfig(e.to_string()))
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| {
                CoreError::InvalidConfig(format!("scenario '{}' requires '{}'", self.scenario, name))
            })
        };
        match self.scenario.as_str() {
            "forced" => Ok(Scenario::Forced {
                theta: need(self.theta, "theta")?,
                alpha1: need(self.alpha1, "alpha1")?,
                beta1: need(self.beta1, "beta1")?,
                m0: self.m0,
                omega0: self.omega0,
            }),
            "caldirola_kanai" => Ok(Scenario::CaldirolaKanai {
                gamma: need(self.gamma, "Gamma")?,
                nu0: need(self.nu0, "nu0")?,
                m0: self.m0,
                omega0: self.omega0,
            }),
            "complex_mass" => Ok(Scenario::ComplexMass {
                omega_cap: need(self.omega_cap, "Omega0")?,
                nu0: need(self.nu0, "nu0")?,
                m0: self.m0,
                omega0: self.omega0,
            }),
            other => Err(CoreError::InvalidConfig(format!(
                "unknown scenario '{other}'"
            ))),
        }
    }
}
