//! Two-level-plus-doublet estimate of the minimum gap from the quasiclassical
//! matrix elements of the problem term among the lowest rotor states
//! (`k = 0` ground, `k = +-1` doublet).
//!
//! The gap model is
//! `sqrt([(1 - tau) n - tau X]^2 + 8 tau^2 |Y|^2)` with `X = (H_P)_{e1,e2}` and
//! `Y = (H_P)_{g,e}`, and the crossing time
//! `tau_c = n (X + n) / (|Y|^2 + (X + n)^2)`.

use crate::error::{Error, Result};

use super::wkb::wkb_matrix_element;

/// How the degenerate `k = +-1` pair is represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementConvention {
    /// Running waves `e^{+-i phi}`: `X = |<1|V|-1>|`, `Y = |<0|V|1>|`.
    Exponential,
    /// Standing waves `cos phi`, `sin phi`: `X` is the doublet splitting
    /// `<c|V|c> - <s|V|s> = 2|<1|V|-1>|` and `Y = sqrt(2)|<0|V|1>|`.
    Standing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapFormula {
    pub convention: ElementConvention,
    /// `|(H_P)_{g,e}|`
    pub h_ge: f64,
    /// `(H_P)_{e1,e2}`
    pub h_e1e2: f64,
    pub tau_c: f64,
    pub eta_c: f64,
    /// `n^3 X / (|Y|^2 + X^2)`, the large-`n` limit of `eta_c`.
    pub eta_c_asymptotic: f64,
    /// Gap model evaluated at `tau_c`.
    pub gap_at_tau_c: f64,
    /// Minimizer of the gap model itself.
    pub tau_min: f64,
    pub gap_min: f64,
}

/// Closed forms quoted for `q = 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportedClosedForms {
    pub eta_c: f64,
    pub gap_min_over_n: f64,
    /// `[(H_P)_{e1,e2}]^2 / n^6`
    pub h_e1e2_squared_over_n6: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbativeEstimate {
    pub n: usize,
    pub q: i64,
    pub exponential: GapFormula,
    pub standing: GapFormula,
    pub reported: Option<ReportedClosedForms>,
}

impl PerturbativeEstimate {
    /// The convention whose `X^2` matches the quoted `9/1024 n^6`.
    pub fn matching_convention(&self) -> Option<ElementConvention> {
        let reported = self.reported?;
        let n6 = (self.n as f64).powi(6);
        [self.exponential, self.standing]
            .into_iter()
            .find(|f| (f.h_e1e2.powi(2) / n6 - reported.h_e1e2_squared_over_n6).abs() < 1e-12)
            .map(|f| f.convention)
    }
}

/// The gap model at `tau`.
pub fn gap_model(n: f64, h_ge: f64, h_e1e2: f64, tau: f64) -> f64 {
    let a = (1.0 - tau) * n - tau * h_e1e2;
    (a * a + 8.0 * tau * tau * h_ge * h_ge).sqrt()
}

fn formula(n: usize, convention: ElementConvention, h_ge: f64, h_e1e2: f64) -> GapFormula {
    let nf = n as f64;
    let xn = h_e1e2 + nf;
    let tau_c = nf * xn / (h_ge * h_ge + xn * xn);
    let eta_c_asymptotic = nf.powi(3) * h_e1e2 / (h_ge * h_ge + h_e1e2 * h_e1e2);
    // d/dtau of the squared model vanishes at n (n + X) / ((n + X)^2 + 8 |Y|^2)
    let tau_min = nf * xn / (xn * xn + 8.0 * h_ge * h_ge);
    GapFormula {
        convention,
        h_ge,
        h_e1e2,
        tau_c,
        eta_c: tau_c * nf * nf,
        eta_c_asymptotic,
        gap_at_tau_c: gap_model(nf, h_ge, h_e1e2, tau_c),
        tau_min,
        gap_min: gap_model(nf, h_ge, h_e1e2, tau_min),
    }
}

pub fn perturbative_estimate(n: usize, q: i64) -> Result<PerturbativeEstimate> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("estimate needs n >= 4, got {n}")));
    }
    if q < 3 {
        return Err(Error::InvalidArgument(format!("estimate needs q >= 3, got {q}")));
    }
    let doublet = wkb_matrix_element(q, n, 1, -1)?.norm();
    let coupling = wkb_matrix_element(q, n, 0, 1)?.norm();
    let exponential = formula(n, ElementConvention::Exponential, coupling, doublet);
    let standing = formula(n, ElementConvention::Standing, std::f64::consts::SQRT_2 * coupling, 2.0 * doublet);
    let reported = (q == 3).then(|| ReportedClosedForms {
        eta_c: 64.0 / 9.0,
        gap_min_over_n: (2.0f64 / 3.0).sqrt(),
        h_e1e2_squared_over_n6: 9.0 / 1024.0,
    });
    Ok(PerturbativeEstimate { n, q, exponential, standing, reported })
}
