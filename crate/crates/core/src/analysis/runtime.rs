use crate::eigen::eigen_lowest;
use crate::error::{Error, Result};
use crate::hamiltonian::InterpolatingHamiltonian;

/// Smallest gap accepted as a divisor.
pub const GAP_FLOOR: f64 = 1e-13;

/// Adiabatic runtime scale `|<phi_1| dH/dtau |phi_0>| / gap^2` at `tau_c`.
pub fn runtime_bound(h: &InterpolatingHamiltonian, tau_c: f64) -> Result<f64> {
    let s = eigen_lowest(&h.at(tau_c)?, 2)?;
    let gap = s.eigenvalues[1] - s.eigenvalues[0];
    if gap < GAP_FLOOR {
        return Err(Error::DegenerateGap { gap });
    }
    let v0 = s.vector(0).expect("vectors requested");
    let v1 = s.vector(1).expect("vectors requested");
    let dv = h.derivative().matvec(v0)?;
    let numerator: f64 = v1.iter().zip(&dv).map(|(a, b)| a * b).sum::<f64>().abs();
    Ok(numerator / (gap * gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::gap::{find_min_gap, MinGapOptions};
    use crate::hamiltonian::DriverKind;

    fn bound_for(n: usize, kind: DriverKind) -> f64 {
        let h = InterpolatingHamiltonian::canonical(n, 3, kind).unwrap();
        let r = find_min_gap(&h, &MinGapOptions::for_driver(kind)).unwrap();
        runtime_bound(&h, r.tau_c).unwrap()
    }

    #[test]
    fn homogeneity() {
        let h = InterpolatingHamiltonian::canonical(20, 3, DriverKind::Extended).unwrap();
        let tau = 5.0 / 400.0;
        let a = runtime_bound(&h, tau).unwrap();
        let b = runtime_bound(&h.scaled(2.0), tau).unwrap();
        assert!((b - a / 2.0).abs() < 1e-10 * a);
    }

    #[test]
    fn polynomial_for_extended() {
        let ns = [20usize, 30, 40, 50, 60];
        let b: Vec<f64> = ns.iter().map(|&n| bound_for(n, DriverKind::Extended)).collect();
        assert!(b.iter().all(|x| x.is_finite() && *x > 0.0));
        // log-log slope
        let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
        let ys: Vec<f64> = b.iter().map(|v| v.ln()).collect();
        let mx = xs.iter().sum::<f64>() / 5.0;
        let my = ys.iter().sum::<f64>() / 5.0;
        let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
            / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
        assert!(slope <= 2.0, "{slope}");
    }

    #[test]
    #[ignore = "at n=12 the localized gap has not collapsed yet; measured ratio is about 20"]
    fn localized_is_much_slower_at_12() {
        let ratio = bound_for(12, DriverKind::Localized) / bound_for(12, DriverKind::Extended);
        assert!(ratio > 1e2, "{ratio}");
    }

    #[test]
    fn localized_is_much_slower() {
        let ratio = bound_for(24, DriverKind::Localized) / bound_for(24, DriverKind::Extended);
        assert!(ratio > 1e2, "{ratio}");
        let r30 = bound_for(30, DriverKind::Localized) / bound_for(30, DriverKind::Extended);
        assert!(r30 > 5.0 * ratio, "{r30} vs {ratio}");
    }

    #[test]
    fn degenerate_gap_rejected() {
        let h = InterpolatingHamiltonian::canonical(5, 3, DriverKind::Extended).unwrap();
        assert!(matches!(runtime_bound(&h, 0.0), Err(Error::DegenerateGap { .. })));
    }
}
