//! Uniform spatial grids and sampled wavefunctions, plus the CSV exchange
//! format shared by the closed-form and PDE modules.

use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};

/// Boundary samples above this magnitude mark a wavefunction as untrusted.
pub const SUPPORT_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridDescriptor {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridDescriptor {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_max > x_min) {
            return Err(CoreError::InvalidConfig(format!(
                "grid needs x_max > x_min (got [{x_min}, {x_max}])"
            )));
        }
        if n_points < 64 {
            return Err(CoreError::InvalidConfig(format!(
                "grid needs at least 64 points (got {n_points})"
            )));
        }
        Ok(GridDescriptor {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + self.dx() * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.x(i))
    }

    /// Auto-sized domain: x₀ ∓ (10σ + |ν₀|·t_final + 2·|x₀|), widened so the
    /// spacing does not exceed `dx_target` with a power-of-two point count.
    pub fn auto(x0: f64, sigma: f64, nu0: f64, t_final: f64, dx_target: f64) -> Result<Self> {
        let half = 10.0 * sigma + nu0.abs() * t_final + 2.0 * x0.abs();
        let mut n = 64usize;
        while (2.0 * half) / (n - 1) as f64 > dx_target {
            n *= 2;
            if n > 1 << 26 {
                return Err(CoreError::InvalidConfig(
                    "auto grid would exceed 2^26 points".into(),
                ));
            }
        }
        GridDescriptor::new(x0 - half, x0 + half, n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionGrid {
    pub grid: GridDescriptor,
    pub values: Vec<C64>,
    pub time_tag: f64,
}

impl WavefunctionGrid {
    pub fn new(grid: GridDescriptor, values: Vec<C64>, time_tag: f64) -> Result<Self> {
        if values.len() != grid.n_points {
            return Err(CoreError::GridMismatch(format!(
                "{} values for a {}-point grid",
                values.len(),
                grid.n_points
            )));
        }
        Ok(WavefunctionGrid {
            grid,
            values,
            time_tag,
        })
    }

    /// Sample a closed-form ψ on the grid.
    pub fn sample(grid: GridDescriptor, time_tag: f64, f: impl Fn(f64) -> C64) -> Self {
        let values = grid.points().map(f).collect();
        WavefunctionGrid {
            grid,
            values,
            time_tag,
        }
    }

    /// Support containment: |ψ| at both boundary samples must stay below
    /// [`SUPPORT_LIMIT`].
    pub fn check_support(&self) -> Result<()> {
        let b = self.values[0]
            .norm()
            .max(self.values[self.values.len() - 1].norm());
        if b >= SUPPORT_LIMIT {
            return Err(CoreError::UntrustedSupport {
                boundary_abs: b,
                limit: SUPPORT_LIMIT,
            });
        }
        Ok(())
    }

    pub fn norm_l2(&self) -> f64 {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.dx()).sqrt()
    }

    /// CSV: header `x,re,im,abs2`, 17 significant digits per field.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 80 + 16);
        out.push_str("x,re,im,abs2\n");
        for (i, v) in self.values.iter().enumerate() {
            let x = self.grid.x(i);
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                x,
                v.re,
                v.im,
                v.norm_sqr()
            ));
        }
        out
    }

    pub fn from_csv(text: &str, time_tag: f64) -> Result<Self> {
        let mut xs = Vec::new();
        let mut vals = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if k == 0 {
                if line.trim() != "x,re,im,abs2" {
                    return Err(CoreError::InvalidConfig(format!(
                        "unexpected CSV header '{line}'"
                    )));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 4 {
                return Err(CoreError::InvalidConfig(format!(
                    "CSV row {k} has {} columns",
                    cols.len()
                )));
            }
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| CoreError::InvalidConfig(format!("CSV row {k}: {e}")))
            };
            xs.push(parse(cols[0])?);
            vals.push(C64::new(parse(cols[1])?, parse(cols[2])?));
        }
        if xs.len() < 2 {
            return Err(CoreError::InvalidConfig("CSV has fewer than 2 rows".into()));
        }
        let grid = GridDescriptor::new(xs[0], *xs.last().unwrap(), xs.len())?;
        WavefunctionGrid::new(grid, vals, time_tag)
    }
}

/// Relative L² and L∞ distances over interior samples; the denominator is
/// taken from `a` (so b = 2a gives l2_rel = 1).
pub fn wavefunction_error(a: &WavefunctionGrid, b: &WavefunctionGrid) -> Result<(f64, f64)> {
    if a.grid != b.grid {
        return Err(CoreError::GridMismatch(
            "wavefunction_error requires identical grids".into(),
        ));
    }
    let n = a.values.len();
    let mut num2 = 0.0f64;
    let mut den2 = 0.0f64;
    let mut num_inf = 0.0f64;
    let mut den_inf = 0.0f64;
    for i in 1..n - 1 {
        let d = (a.values[i] - b.values[i]).norm();
        num2 += d * d;
        den2 += a.values[i].norm_sqr();
        num_inf = num_inf.max(d);
        den_inf = den_inf.max(a.values[i].norm());
    }
    if den2 == 0.0 {
        return Err(CoreError::InvalidConfig(
            "reference wavefunction is zero on the interior".into(),
        ));
    }
    Ok(((num2 / den2).sqrt(), num_inf / den_inf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(grid: GridDescriptor, center: f64) -> WavefunctionGrid {
        WavefunctionGrid::sample(grid, 0.0, |x| {
            C64::new((-(x - center).powi(2) * 40.0).exp(), 0.0)
        })
    }

    #[test]
    fn identical_grids_zero_error() {
        let g = GridDescriptor::new(-5.0, 5.0, 128).unwrap();
        let a = bump(g, 0.0);
        let (l2, linf) = wavefunction_error(&a, &a).unwrap();
        assert_eq!((l2, linf), (0.0, 0.0));
    }

    #[test]
    fn doubling_fixes_denominator_convention() {
        let g = GridDescriptor::new(-5.0, 5.0, 128).unwrap();
        let a = bump(g, 0.0);
        let b = WavefunctionGrid::new(g, a.values.iter().map(|z| z * 2.0).collect(), 0.0).unwrap();
        let (l2, linf) = wavefunction_error(&a, &b).unwrap();
        assert!((l2 - 1.0).abs() < 1e-12);
        assert!((linf - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_bumps_give_sqrt2() {
        let g = GridDescriptor::new(-8.0, 8.0, 512).unwrap();
        let a = bump(g, -4.0);
        let b = bump(g, 4.0);
        let (l2, _) = wavefunction_error(&a, &b).unwrap();
        // equal-norm disjoint supports: ‖a-b‖/‖a‖ = √2
        assert!((l2 - 2.0f64.sqrt()).abs() < 1e-6, "{l2}");
    }

    #[test]
    fn grid_mismatch_reported() {
        let g1 = GridDescriptor::new(-5.0, 5.0, 128).unwrap();
        let g2 = GridDescriptor::new(-5.0, 5.0, 256).unwrap();
        assert!(wavefunction_error(&bump(g1, 0.0), &bump(g2, 0.0)).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let g = GridDescriptor::new(-2.0, 2.0, 64).unwrap();
        let a = WavefunctionGrid::sample(g, 0.5, |x| C64::new((x * 1.7).sin(), (x * 0.3).cos()));
        let parsed = WavefunctionGrid::from_csv(&a.to_csv(), 0.5).unwrap();
        assert_eq!(parsed.grid.n_points, 64);
        for (u, v) in a.values.iter().zip(&parsed.values) {
            assert!((u - v).norm() < 1e-15);
        }
    }

    #[test]
    fn support_containment_flags_wide_states() {
        let g = GridDescriptor::new(-1.0, 1.0, 64).unwrap();
        let wide = WavefunctionGrid::sample(g, 0.0, |x| C64::new((-x * x).exp(), 0.0));
        assert!(wide.check_support().is_err());
        let narrow = WavefunctionGrid::sample(g, 0.0, |x| C64::new((-x * x * 60.0).exp(), 0.0));
        assert!(narrow.check_support().is_ok());
    }

    #[test]
    fn auto_grid_covers_and_refines() {
        let g = GridDescriptor::auto(2.0, 0.7071, 0.015, 2.0, 5e-3).unwrap();
        assert!(g.x_min < -9.0 && g.x_max > 13.0);
        assert!(g.dx() <= 5e-3);
        assert!(g.n_points.is_power_of_two());
    }
}
