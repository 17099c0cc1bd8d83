//! Least-squares scaling fits of the minimum gap against `n`.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hamiltonian::{DriverKind, InterpolatingHamiltonian};

use super::gap::{find_min_gap, MinGapOptions, MinGapResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitModel {
    /// `gap = a n + b`
    Linear,
    /// `ln gap = alpha n + beta`
    Exponential,
}

impl std::str::FromStr for FitModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(FitModel::Linear),
            "exp" | "exponential" => Ok(FitModel::Exponential),
            other => Err(Error::InvalidArgument(format!("unknown fit model `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub model: FitModel,
    /// Slope (`a` or `alpha`).
    pub slope: f64,
    /// Intercept (`b` or `beta`).
    pub intercept: f64,
    pub r_squared: f64,
    /// Observed minus fitted, in the model's own variable.
    pub residuals: Vec<f64>,
    pub n_list: Vec<usize>,
}

pub const MIN_FIT_POINTS: usize = 4;

/// Ordinary least squares of `gaps` (or their logarithm) on `n`.
pub fn fit_scaling(n_list: &[usize], gaps: &[f64], model: FitModel) -> Result<ScalingFit> {
    if n_list.len() != gaps.len() {
        return Err(Error::DimensionMismatch { expected: n_list.len(), got: gaps.len() });
    }
    if n_list.len() < MIN_FIT_POINTS {
        return Err(Error::Fit(format!("need at least {MIN_FIT_POINTS} points, got {}", n_list.len())));
    }
    let ys: Vec<f64> = match model {
        FitModel::Linear => gaps.to_vec(),
        FitModel::Exponential => {
            if let Some(g) = gaps.iter().find(|g| !(**g > 0.0)) {
                return Err(Error::Fit(format!("exponential model needs positive gaps, got {g}")));
            }
            gaps.iter().map(|g| g.ln()).collect()
        }
    };
    let xs: Vec<f64> = n_list.iter().map(|&n| n as f64).collect();
    let count = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / count;
    let my = ys.iter().sum::<f64>() / count;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all n values are equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| y - (slope * x + intercept)).collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    Ok(ScalingFit { model, slope, intercept, r_squared, residuals, n_list: n_list.to_vec() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingStudy {
    pub q: i64,
    pub driver: DriverKind,
    pub results: Vec<(usize, MinGapResult)>,
    pub fit: ScalingFit,
}

/// Minimum gap for every `n` (same parity, at least four values), then a fit.
pub fn scaling_study(
    n_list: &[usize],
    q: i64,
    driver: DriverKind,
    model: FitModel,
    exec: Execution,
) -> Result<ScalingStudy> {
    if n_list.len() < MIN_FIT_POINTS {
        return Err(Error::Fit(format!("need at least {MIN_FIT_POINTS} sizes, got {}", n_list.len())));
    }
    if n_list.iter().any(|n| n % 2 != n_list[0] % 2) {
        return Err(Error::InvalidArgument("all sizes must share parity".into()));
    }
    // Per-n jobs fan out; each minimization runs its own scan sequentially.
    let opts = MinGapOptions::for_driver(driver).with_exec(Execution::Sequential);
    let results = exec
        .map(n_list, |&n| {
            let h = InterpolatingHamiltonian::canonical(n, q, driver)?;
            find_min_gap(&h, &opts).map(|r| (n, r))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let gaps: Vec<f64> = results.iter().map(|(_, r)| r.gap_min).collect();
    let fit = fit_scaling(n_list, &gaps, model)?;
    Ok(ScalingStudy { q, driver, results, fit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let ns = [10, 12, 14, 16];
        let gaps: Vec<f64> = ns.iter().map(|&n| 0.5 * n as f64 + 2.0).collect();
        let f = fit_scaling(&ns, &gaps, FitModel::Linear).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12 && (f.intercept - 2.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(f.residuals.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn exact_exponential() {
        let ns = [10, 20, 30, 40, 50];
        let gaps: Vec<f64> = ns.iter().map(|&n| 3.0 * (-0.1 * n as f64).exp()).collect();
        let f = fit_scaling(&ns, &gaps, FitModel::Exponential).unwrap();
        assert!((f.slope + 0.1).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn known_regression() {
        // hand-computed: x = 1..4, y = (1, 3, 2, 4): slope 0.8, intercept 0.5, R^2 = 0.64
        let f = fit_scaling(&[1, 2, 3, 4], &[1.0, 3.0, 2.0, 4.0], FitModel::Linear).unwrap();
        assert!((f.slope - 0.8).abs() < 1e-12);
        assert!((f.intercept - 0.5).abs() < 1e-12);
        assert!((f.r_squared - 0.64).abs() < 1e-12);
    }

    #[test]
    fn refusals() {
        assert!(fit_scaling(&[1, 2, 3], &[1.0, 2.0, 3.0], FitModel::Linear).is_err());
        assert!(fit_scaling(&[1, 2, 3, 4], &[1.0, 0.0, 3.0, 1.0], FitModel::Exponential).is_err());
        assert!(fit_scaling(&[2, 2, 2, 2], &[1.0, 2.0, 3.0, 1.0], FitModel::Linear).is_err());
        assert!(scaling_study(&[20, 22, 23, 24], 3, DriverKind::Extended, FitModel::Linear, Execution::Sequential).is_err());
        assert!(scaling_study(&[20, 22, 24], 3, DriverKind::Extended, FitModel::Linear, Execution::Sequential).is_err());
    }

    #[test]
    fn small_extended_study() {
        let s = scaling_study(&[20, 24, 28, 32], 3, DriverKind::Extended, FitModel::Linear, Execution::default()).unwrap();
        assert!((0.78..=0.94).contains(&s.fit.slope), "{:?}", s.fit);
        assert!(s.fit.r_squared > 0.99);
    }
}
