//! Real-time propagation `i d|psi>/dt = H(t/T)|psi>` with Crank-Nicolson steps.

use num_complex::Complex64;

use crate::banded::BandedHermitian;
use crate::eigen::eigen_lowest;
use crate::error::{Error, Result};
use crate::hamiltonian::InterpolatingHamiltonian;

pub const MIN_STEPS: usize = 100;
/// Norm drift that aborts a run.
pub const NORM_FAILURE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionResult {
    pub total_time: f64,
    pub steps: usize,
    /// `|<ground of H_P | psi(T)>|^2`
    pub success_probability: f64,
    /// Largest `| ||psi|| - 1 |` seen over the run.
    pub max_norm_drift: f64,
}

/// Solves `A x = rhs` in place for a matrix with `bandwidth` sub- and
/// super-diagonals, using partial pivoting (fill-in reaches `2 * bandwidth`).
fn banded_solve(a: &mut [Complex64], dim: usize, bandwidth: usize, rhs: &mut [Complex64]) -> Result<()> {
    let upper = 2 * bandwidth;
    for k in 0..dim {
        let last = (k + bandwidth).min(dim - 1);
        let pivot = (k..=last)
            .max_by(|&i, &j| a[i * dim + k].norm().total_cmp(&a[j * dim + k].norm()))
            .expect("non-empty range");
        if a[pivot * dim + k].norm() == 0.0 {
            return Err(Error::Singular(k));
        }
        let col_end = (k + upper).min(dim - 1);
        if pivot != k {
            for c in k..=col_end {
                a.swap(k * dim + c, pivot * dim + c);
            }
            rhs.swap(k, pivot);
        }
        let p = a[k * dim + k];
        for i in k + 1..=last {
            let factor = a[i * dim + k] / p;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            a[i * dim + k] = Complex64::new(0.0, 0.0);
            for c in k + 1..=col_end {
                let v = a[k * dim + c];
                a[i * dim + c] -= factor * v;
            }
            let r = rhs[k];
            rhs[i] -= factor * r;
        }
    }
    for k in (0..dim).rev() {
        let col_end = (k + upper).min(dim - 1);
        let mut acc = rhs[k];
        for c in k + 1..=col_end {
            acc -= a[k * dim + c] * rhs[c];
        }
        rhs[k] = acc / a[k * dim + k];
    }
    Ok(())
}

/// One step `(1 + i dt H / 2) psi' = (1 - i dt H / 2) psi`.
fn crank_nicolson_step(h: &BandedHermitian, dt: f64, psi: &mut [Complex64]) -> Result<()> {
    let dim = h.dim();
    let b = h.bandwidth();
    let half = Complex64::new(0.0, 0.5 * dt);
    let hr = h.matvec(&psi.iter().map(|z| z.re).collect::<Vec<_>>())?;
    let hi = h.matvec(&psi.iter().map(|z| z.im).collect::<Vec<_>>())?;
    let mut rhs: Vec<Complex64> = (0..dim)
        .map(|i| psi[i] - half * Complex64::new(hr[i], hi[i]))
        .collect();
    let mut a = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        let lo = i.saturating_sub(b);
        let hi = (i + b).min(dim - 1);
        for j in lo..=hi {
            a[i * dim + j] = half * h.get_real(i, j);
        }
        a[i * dim + i] += 1.0;
    }
    banded_solve(&mut a, dim, b, &mut rhs)?;
    psi.copy_from_slice(&rhs);
    Ok(())
}

/// Starts in the ground state of `H(0)` and sweeps `tau` linearly over total
/// time `total_time`, evaluating `H` at each step's midpoint.
pub fn evolve_schrodinger(h: &InterpolatingHamiltonian, total_time: f64, steps: usize) -> Result<EvolutionResult> {
    if steps < MIN_STEPS {
        return Err(Error::InvalidArgument(format!("need at least {MIN_STEPS} steps, got {steps}")));
    }
    if !(total_time >= 0.0 && total_time.is_finite()) {
        return Err(Error::InvalidArgument(format!("total time must be finite and >= 0, got {total_time}")));
    }
    let start = eigen_lowest(&h.at(0.0)?, 1)?;
    let target = eigen_lowest(h.problem(), 1)?;
    let target = target.vector(0).expect("vectors requested");
    let mut psi: Vec<Complex64> = start
        .vector(0)
        .expect("vectors requested")
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();

    let mut max_norm_drift: f64 = 0.0;
    if total_time > 0.0 {
        let dt = total_time / steps as f64;
        for step in 0..steps {
            let tau = (step as f64 + 0.5) / steps as f64;
            crank_nicolson_step(&h.at(tau)?, dt, &mut psi)?;
            let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let drift = (norm - 1.0).abs();
            max_norm_drift = max_norm_drift.max(drift);
            if drift > NORM_FAILURE {
                return Err(Error::NormDrift { step, drift });
            }
        }
    }
    let overlap: Complex64 = target.iter().zip(&psi).map(|(t, p)| p * *t).sum();
    Ok(EvolutionResult { total_time, steps, success_probability: overlap.norm_sqr(), max_norm_drift })
}
