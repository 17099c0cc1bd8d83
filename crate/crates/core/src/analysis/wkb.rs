//! Quasiclassical picture: a particle on a ring in the potential
//! `V(phi) = h((1 - sin phi)/2)`, and its matrix elements between free-rotor
//! states `e^{i k phi} / sqrt(2 pi)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cost::h_cubic_in_s;
use crate::error::{Error, Result};
use crate::spin::binomial;

pub fn wkb_potential(q: i64, phi: f64) -> Result<f64> {
    if !(-PI..=PI).contains(&phi) {
        return Err(Error::InvalidArgument(format!("phi = {phi} outside [-pi, pi]")));
    }
    Ok(potential_unchecked(q, phi))
}

fn potential_unchecked(q: i64, phi: f64) -> f64 {
    let u = 0.5 * (1.0 - phi.sin());
    crate::cost::h_unchecked(u, q as f64)
}

/// Coefficient of `e^{i p phi}` in `sin^k phi`.
fn sin_power_coefficient(k: u32, p: i64) -> Complex64 {
    // sin^k = (2i)^{-k} sum_j C(k, j) (-1)^j e^{i (k - 2j) phi}
    let mut acc = 0.0;
    for j in 0..=k {
        if k as i64 - 2 * j as i64 == p {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binomial(k as u64, j as u64);
        }
    }
    Complex64::new(acc, 0.0) / Complex64::new(0.0, 2.0).powu(k)
}

/// `(1/2pi) \int e^{-i p phi} V(phi) dphi`, exact from the cubic in `sin phi`.
pub fn fourier_coefficient(q: i64, p: i64) -> Result<Complex64> {
    let cubic = h_cubic_in_s(q)?;
    Ok(cubic
        .coefficients_f64()
        .iter()
        .enumerate()
        .map(|(k, c)| sin_power_coefficient(k as u32, p) * *c)
        .sum())
}

/// `(n/2)^3 <k1|V|k2>` in the free-rotor basis; zero unless `|k1 - k2| <= 3`.
pub fn wkb_matrix_element(q: i64, n: usize, k1: i64, k2: i64) -> Result<Complex64> {
    let scale = (n as f64 / 2.0).powi(3);
    Ok(fourier_coefficient(q, k1 - k2)? * scale)
}

/// Composite Simpson quadrature of the same element; an independent check on
/// [`wkb_matrix_element`].
pub fn wkb_matrix_element_quadrature(q: i64, n: usize, k1: i64, k2: i64, panels: usize) -> Complex64 {
    let panels = panels + panels % 2;
    let h = 2.0 * PI / panels as f64;
    let p = (k1 - k2) as f64;
    let f = |phi: f64| Complex64::from_polar(1.0, -p * phi) * potential_unchecked(q, phi);
    let mut acc = f(-PI) + f(PI);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(-PI + i as f64 * h) * w;
    }
    let scale = (n as f64 / 2.0).powi(3);
    acc * (h / 3.0) / (2.0 * PI) * scale
}

pub const QUADRATURE_PANELS: usize = 1 << 14;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_landmarks() {
        assert!(wkb_potential(3, PI / 2.0).unwrap().abs() < 1e-15);
        assert!((wkb_potential(3, -PI / 2.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((wkb_potential(3, 0.0).unwrap() - 13.0 / 6.0).abs() < 1e-15);
        assert!(wkb_potential(3, 4.0).is_err());
        for i in 0..=200 {
            let phi = -PI + 2.0 * PI * i as f64 / 200.0;
            assert!(wkb_potential(4, phi).unwrap() >= -1e-15);
        }
    }

    #[test]
    fn selection_rule_and_mean() {
        for d in 4..8 {
            assert_eq!(wkb_matrix_element(3, 40, d, 0).unwrap(), Complex64::new(0.0, 0.0));
            assert_eq!(wkb_matrix_element(3, 40, 0, d).unwrap(), Complex64::new(0.0, 0.0));
        }
        // zeroth mode: c0 + c2/2 for the cubic in sin
        let mean = 13.0 / 6.0 - 1.5 / 2.0;
        let diag = wkb_matrix_element(3, 8, 2, 2).unwrap();
        assert!((diag.re - 64.0 * mean).abs() < 1e-12 && diag.im.abs() < 1e-15);
    }

    #[test]
    fn agrees_with_quadrature() {
        for q in [3, 4, 5] {
            for (k1, k2) in [(0, 0), (1, -1), (0, 1), (1, 0), (2, -1), (3, 0), (-1, 1), (4, 0)] {
                let exact = wkb_matrix_element(q, 46, k1, k2).unwrap();
                let quad = wkb_matrix_element_quadrature(q, 46, k1, k2, QUADRATURE_PANELS);
                let scale = (46.0f64 / 2.0).powi(3);
                assert!((exact - quad).norm() <= 1e-12 * scale, "{q} {k1} {k2}: {exact} {quad}");
            }
        }
    }

    #[test]
    fn doublet_element_for_q3() {
        // <1|V|-1> = (n/2)^3 q/8 in the exponential basis
        let n = 46usize;
        let e = wkb_matrix_element(3, n, 1, -1).unwrap();
        assert!((e.re - 3.0 * (n as f64).powi(3) / 64.0).abs() < 1e-9);
        // the standing-wave splitting is twice that: (3/32)^2 = 9/1024
        let split = 2.0 * e.norm();
        assert!((split.powi(2) / (n as f64).powi(6) - 9.0 / 1024.0).abs() < 1e-15);
    }
}
