use std::fs;
use std::path::PathBuf;

use num_complex::Complex64 as C64;
use swanson_core::closedform::{
    caldirola_kanai_identification, evolve_gaussian, spectrum_caldirola_kanai, spectrum_general,
    GaussianInitial,
};
use swanson_core::coefficients::{
    build_scenario, PhaseSpaceParams, Scenario, ScenarioConfig, SwansonParams,
};
use swanson_core::error::{CoreError, Result};
use swanson_core::fockspace::{assemble_hamiltonian, converged_spectrum, ladder_matrices};
use swanson_core::grid::GridDescriptor;
use swanson_core::pdeverify::{
    crank_nicolson_evolve, default_dt_probe, schrodinger_residual, GridRecord, ResidualRow,
    RunManifest,
};
use swanson_core::transforms::{verify_reduction, TransformSpec};

fn load_scenario(config: &Option<PathBuf>) -> Result<Scenario> {
    let path = config.as_ref().ok_or_else(|| {
        CoreError::InvalidConfig("this command requires --config <path>".into())
    })?;
    let text = fs::read_to_string(path)
        .map_err(|e| CoreError::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    ScenarioConfig::from_json(&text)?.to_scenario()
}

fn write_file(path: &str, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| CoreError::InvalidConfig(format!("cannot write {path}: {e}")))
}

/// The static phase-space coefficients a scenario's spectrum refers to:
/// the static parameters themselves (forced), the de-timed frame
/// (Caldirola–Kanai), or the t = 0 snapshot (complex mass).
fn spectral_frame(scenario: &Scenario) -> Result<(PhaseSpaceParams, f64, f64)> {
    match *scenario {
        Scenario::Forced { m0, omega0, .. } => {
            let params = build_scenario(scenario)?;
            Ok((params.to_phase_space()?, m0, omega0))
        }
        Scenario::CaldirolaKanai {
            gamma,
            nu0,
            m0,
            omega0,
        } => Ok((
            caldirola_kanai_identification(gamma, nu0, m0, omega0),
            m0,
            omega0,
        )),
        Scenario::ComplexMass { m0, omega0, .. } => {
            let params = build_scenario(scenario)?;
            Ok((params.phase_space_at(0.0)?.as_phase_space(), m0, omega0))
        }
    }
}

pub fn spectrum(config: &Option<PathBuf>, out: &str, dim: usize, n_max: usize) -> Result<()> {
    let scenario = load_scenario(config)?;
    let (nu, m0, omega0) = spectral_frame(&scenario)?;
    let closed = match scenario {
        Scenario::CaldirolaKanai {
            gamma,
            nu0,
            m0,
            omega0,
        } => spectrum_caldirola_kanai(gamma, nu0, m0, omega0, n_max),
        _ => spectrum_general(&nu, n_max)?,
    };
    let numeric = converged_spectrum(
        |d| {
            let ops = ladder_matrices(d, m0, omega0)?;
            assemble_hamiltonian(&nu, C64::new(0.0, 0.0), &ops)
        },
        dim,
    )?;
    if numeric.eigenvalues.len() <= n_max {
        return Err(CoreError::InvalidConfig(format!(
            "dim = {dim} is too small for nmax = {n_max}"
        )));
    }
    let mut csv = String::from("n,re_E,im_E,re_E_numeric,im_E_numeric,converged\n");
    for (n, e) in closed.iter().enumerate() {
        let num = numeric.eigenvalues[n];
        csv.push_str(&format!(
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
            n,
            e.re,
            e.im,
            num.re,
            num.im,
            n < numeric.converged_count
        ));
    }
    let path = format!("{out}_spectrum.csv");
    write_file(&path, &csv)?;
    println!("wrote {path}");
    Ok(())
}

pub fn reduce(config: &Option<PathBuf>, out: &str, dim: usize) -> Result<()> {
    let scenario = load_scenario(config)?;
    let (nu, m0, omega0) = spectral_frame(&scenario)?;
    let spec = TransformSpec::for_phase_space(&nu, m0, omega0)?;
    let report = verify_reduction(&nu, &spec, m0, omega0, dim)?;
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CoreError::InvalidConfig(e.to_string()))?;
    let path = format!("{out}_reduce.json");
    write_file(&path, &json)?;
    println!("wrote {path} (residual = {:.3e})", report.residual);
    Ok(())
}

fn complex_mass_or_err(scenario: &Scenario, what: &str) -> Result<()> {
    if matches!(scenario, Scenario::ComplexMass { .. }) {
        Ok(())
    } else {
        Err(CoreError::InvalidConfig(format!(
            "{what} requires the complex_mass scenario"
        )))
    }
}

#[allow(clippy::too_many_arguments)]
pub fn evolve(
    config: &Option<PathBuf>,
    out: &str,
    t_final: f64,
    t_samples: usize,
    sigma: f64,
    x0: f64,
    dx: f64,
) -> Result<()> {
    let scenario = load_scenario(config)?;
    complex_mass_or_err(&scenario, "evolve")?;
    let Scenario::ComplexMass { nu0, .. } = scenario else {
        unreachable!()
    };
    let init = GaussianInitial::new(sigma, x0)?;
    let grid = GridDescriptor::auto(x0, sigma, nu0, t_final, dx)?;
    for k in 0..t_samples {
        let t = t_final * (k + 1) as f64 / t_samples as f64;
        let psi = evolve_gaussian(&scenario, &init, t, grid)?;
        let path = format!("{out}_evolve_{k:04}.csv");
        write_file(&path, &psi.to_csv())?;
    }
    println!("wrote {t_samples} wavefunction files under prefix {out}_evolve_");
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn verify(
    config: &Option<PathBuf>,
    out: &str,
    t_final: f64,
    t_samples: usize,
    sigma: f64,
    x0: f64,
    dx: f64,
    dt: f64,
    with_integrator: bool,
) -> Result<()> {
    let scenario = load_scenario(config)?;
    complex_mass_or_err(&scenario, "verify")?;
    let Scenario::ComplexMass { nu0, omega0, .. } = scenario else {
        unreachable!()
    };
    let params: SwansonParams = build_scenario(&scenario)?;
    let init = GaussianInitial::new(sigma, x0)?;
    let grid = GridDescriptor::auto(x0, sigma, nu0, t_final, dx)?;
    let dt_probe = default_dt_probe(omega0);
    let candidate = |t: f64| evolve_gaussian(&scenario, &init, t, grid);

    let mut rows = Vec::with_capacity(t_samples);
    let mut csv = String::from("t,residual\n");
    for k in 0..t_samples {
        let t = t_final * (k + 1) as f64 / t_samples as f64;
        let r = schrodinger_residual(&params, &candidate, t, dt_probe)?;
        csv.push_str(&format!("{:.16e},{:.16e}\n", t, r));
        rows.push(ResidualRow { t, residual: r });
    }
    let csv_path = format!("{out}_verify.csv");
    write_file(&csv_path, &csv)?;

    if with_integrator {
        let psi0 = candidate(0.0)?;
        let cn = crank_nicolson_evolve(&params, &psi0, t_final, dt)?;
        let exact = candidate(t_final)?;
        let (l2, linf) = swanson_core::grid::wavefunction_error(&exact, &cn)?;
        let cmp = format!("metric,value\nl2_rel,{l2:.16e}\nlinf_rel,{linf:.16e}\n");
        write_file(&format!("{out}_verify_integrator.csv"), &cmp)?;
    }

    let manifest = RunManifest {
        scenario: "complex_mass".into(),
        grid: GridRecord::from(&grid),
        dt,
        t_final,
        residuals: rows,
    };
    let manifest_json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CoreError::InvalidConfig(e.to_string()))?;
    write_file(&format!("{out}_verify_manifest.json"), &manifest_json)?;
    println!("wrote {csv_path}");
    Ok(())
}

struct Panel {
    tag: &'static str,
    omega_cap: f64,
    nu0: f64,
}

pub fn fig1(config: &Option<PathBuf>, out: &str, t_final: f64, t_samples: usize) -> Result<()> {
    if config.is_some() {
        return Err(CoreError::InvalidConfig(
            "fig1 uses its built-in parameter sets; drop --config".into(),
        ));
    }
    let (m0, omega0, sigma, x0) = (1.0, 2.0, std::f64::consts::FRAC_1_SQRT_2, 2.0);
    let init = GaussianInitial::new(sigma, x0)?;
    let panels = [
        Panel {
            tag: "a",
            omega_cap: 0.015,
            nu0: 0.00015,
        },
        Panel {
            tag: "b",
            omega_cap: 0.01,
            nu0: 0.015,
        },
    ];
    let mut paths = Vec::new();
    for p in &panels {
        let scenario = Scenario::ComplexMass {
            omega_cap: p.omega_cap,
            nu0: p.nu0,
            m0,
            omega0,
        };
        let grid = GridDescriptor::auto(x0, sigma, p.nu0, t_final, 0.05)?;
        let mut csv = String::from("t,x,abs2\n");
        for k in 0..t_samples {
            let t = t_final * k as f64 / (t_samples - 1) as f64;
            let psi = evolve_gaussian(&scenario, &init, t, grid)?;
            for (i, v) in psi.values.iter().enumerate() {
                csv.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e}\n",
                    t,
                    grid.x(i),
                    v.norm_sqr()
                ));
            }
        }
        let path = format!("{out}_fig1{}.csv", p.tag);
        write_file(&path, &csv)?;
        paths.push(path);
    }

    let script = format!(
        "# gnuplot script: probability-density heatmaps |psi(x,t)|^2\n\
         set datafile separator ','\n\
         set terminal pngcairo size 1400,600\n\
         set output '{out}_fig1.png'\n\
         set multiplot layout 1,2\n\
         set xlabel 't'\n\
         set ylabel 'x'\n\
         set view map\n\
         set pm3d interpolate 2,2\n\
         set title '(a)  Omega0=0.015, nu0=0.00015'\n\
         splot '{a}' every ::1 using 1:2:3 with pm3d notitle\n\
         set title '(b)  Omega0=0.01, nu0=0.015'\n\
         splot '{b}' every ::1 using 1:2:3 with pm3d notitle\n\
         unset multiplot\n",
        out = out,
        a = paths[0],
        b = paths[1]
    );
    let gp_path = format!("{out}_fig1.gp");
    write_file(&gp_path, &script)?;
    println!("wrote {}, {}, {gp_path}", paths[0], paths[1]);
    Ok(())
}
