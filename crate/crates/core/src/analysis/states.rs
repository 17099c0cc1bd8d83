use crate::eigen::eigen_lowest;
use crate::error::Result;
use crate::hamiltonian::InterpolatingHamiltonian;
use crate::spin::{ProfileLabel, WavefunctionProfile};

/// Ground eigenvector of `H(tau)` in the z-basis, sign fixed so that the
/// largest-`m` nonzero amplitude is positive.
pub fn exact_ground_state(h: &InterpolatingHamiltonian, tau: f64) -> Result<WavefunctionProfile> {
    let s = eigen_lowest(&h.at(tau)?, 1)?;
    let amplitudes = s.vector(0).expect("vectors requested").to_vec();
    Ok(WavefunctionProfile {
        sys: *h.sys(),
        amplitudes,
        label: ProfileLabel::Exact { driver: h.driver_kind().name().into(), tau, level: 0 },
    })
}
