//! Degeneracy structure of the extended-driver spectrum: Kramers doublets for
//! half-integer spin and the Zeeman splitting of the first excited doublet.

use crate::eigen::eigen_full;
use crate::error::Result;
use crate::hamiltonian::{DriverKind, InterpolatingHamiltonian};
use crate::spin::{Parity, SpinSystem};

use super::gap::{find_min_gap, gap_trace, MinGapOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct KramersReport {
    pub n: usize,
    /// Cluster sizes of the `tau = 0` spectrum, ascending in energy.
    pub multiplicities_at_zero: Vec<usize>,
    /// Every level at `tau = 0` belongs to a pair.
    pub all_doubly_degenerate: bool,
    pub ground_nondegenerate: bool,
    /// `E_1 - E_0` never decreases along the supplied grid.
    pub gap_nondecreasing: bool,
    /// `E_2 - E_1` at the avoided crossing (even `n` only).
    pub doublet_splitting_at_tau_c: Option<f64>,
    pub tau_c: Option<f64>,
}

/// Groups ascending eigenvalues whose neighbours differ by at most
/// `rel_tol * max(|lambda|, 1)`.
pub fn multiplicities(eigenvalues: &[f64], rel_tol: f64) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, &e) in eigenvalues.iter().enumerate() {
        if i > 0 && (e - eigenvalues[i - 1]).abs() <= rel_tol * e.abs().max(1.0) {
            *out.last_mut().expect("non-empty") += 1;
        } else {
            out.push(1);
        }
    }
    out
}

pub fn kramers_check(sys: &SpinSystem, q: i64, eta_grid: &[f64]) -> Result<KramersReport> {
    let h = InterpolatingHamiltonian::canonical(sys.n(), q, DriverKind::Extended)?;
    let spectrum = eigen_full(&h.at(0.0)?, false)?;
    let mult = multiplicities(&spectrum.eigenvalues, 1e-10);
    let all_doubly_degenerate = mult.iter().all(|&m| m == 2);
    let ground_nondegenerate = mult.first() == Some(&1);

    let tol = 1e-10 * (h.driver().norm_inf() + h.problem().norm_inf());
    let gap_nondecreasing = if eta_grid.len() > 1 {
        let t = gap_trace(&h, eta_grid)?;
        let g: Vec<f64> = t.gaps().collect();
        g.windows(2).all(|w| w[1] >= w[0] - tol)
    } else {
        true
    };

    let (doublet_splitting_at_tau_c, tau_c) = if sys.parity() == Parity::Even && sys.dim() >= 3 {
        let r = find_min_gap(&h, &MinGapOptions::for_driver(DriverKind::Extended))?;
        let e = eigen_full(&h.at(r.tau_c)?, false)?.eigenvalues;
        (Some(e[2] - e[1]), Some(r.tau_c))
    } else {
        (None, None)
    };

    Ok(KramersReport {
        n: sys.n(),
        multiplicities_at_zero: mult,
        all_doubly_degenerate,
        ground_nondegenerate,
        gap_nondecreasing,
        doublet_splitting_at_tau_c,
        tau_c,
    })
}
