//! Total-spin sector of `n` qubits: quantum numbers, spin matrices in the
//! z-basis and the large-spin ground-state profiles of both drivers.
//!
//! Basis index `i` runs over `two_m = n - 2i`, i.e. from `m = +l` down to
//! `m = -l`. With `S_z = n/2 - w` the index is exactly the Hamming weight.

use std::f64::consts::PI;

use crate::banded::BandedHermitian;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinSystem {
    n: usize,
}

impl SpinSystem {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("qubit count must be positive".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Twice the total spin; equal to `n`.
    pub fn two_l(&self) -> i64 {
        self.n as i64
    }

    pub fn l(&self) -> f64 {
        self.n as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn parity(&self) -> Parity {
        if self.n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Doubled magnetic quantum number of basis index `i`.
    pub fn two_m(&self, index: usize) -> i64 {
        self.n as i64 - 2 * index as i64
    }

    pub fn m(&self, index: usize) -> f64 {
        self.two_m(index) as f64 / 2.0
    }

    /// Basis index of `two_m`, if it lies on the grid.
    pub fn index_of(&self, two_m: i64) -> Option<usize> {
        let n = self.n as i64;
        if two_m.abs() > n || (n - two_m) % 2 != 0 {
            return None;
        }
        Some(((n - two_m) / 2) as usize)
    }

    /// Doubled magnetic quantum numbers in basis order, `+n` down to `-n`.
    pub fn two_m_grid(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.dim()).map(move |i| self.two_m(i))
    }

    fn check_two_m(&self, two_m: i64) -> Result<usize> {
        self.index_of(two_m).ok_or_else(|| {
            Error::InvalidArgument(format!("two_m = {two_m} is not on the grid of n = {}", self.n))
        })
    }

    /// `<m|S_+|m-1>`, with `m` the magnetic number of `index`.
    fn ladder(&self, index: usize) -> f64 {
        // l(l+1) - m(m-1) in doubled integers, divided by 4.
        let two_l = self.two_l();
        let two_m = self.two_m(index);
        let quad = two_l * (two_l + 2) - two_m * (two_m - 2);
        (quad as f64 / 4.0).sqrt()
    }
}

/// Shorthand for [`SpinSystem::new`].
pub fn make_spin_system(n: usize) -> Result<SpinSystem> {
    SpinSystem::new(n)
}

/// `S_x = (S_+ + S_-)/2` in the z-basis.
pub fn sx_matrix(sys: &SpinSystem) -> BandedHermitian {
    let dim = sys.dim();
    let off: Vec<f64> = (0..dim - 1).map(|i| 0.5 * sys.ladder(i)).collect();
    BandedHermitian::real(dim, vec![vec![0.0; dim], off])
}

/// `S_x^2` in the z-basis, assembled as the exact square of the tridiagonal `S_x`.
pub fn sx_squared_matrix(sys: &SpinSystem) -> BandedHermitian {
    let dim = sys.dim();
    let a: Vec<f64> = (0..dim - 1).map(|i| 0.5 * sys.ladder(i)).collect();
    let diag = (0..dim)
        .map(|i| {
            let up = if i > 0 { a[i - 1] * a[i - 1] } else { 0.0 };
            let down = if i + 1 < dim { a[i] * a[i] } else { 0.0 };
            up + down
        })
        .collect();
    let off1 = vec![0.0; dim - 1];
    let off2 = (0..dim.saturating_sub(2)).map(|i| a[i] * a[i + 1]).collect();
    BandedHermitian::real(dim, vec![diag, off1, off2])
}

/// Which state a [`WavefunctionProfile`] describes.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileLabel {
    ExtendedAsymptotic,
    LocalizedAsymptotic,
    LocalizedExact,
    Exact { driver: String, tau: f64, level: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionProfile {
    pub sys: SpinSystem,
    /// Indexed like the basis: `two_m` descending from `+n`.
    pub amplitudes: Vec<f64>,
    pub label: ProfileLabel,
}

impl WavefunctionProfile {
    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    /// `|psi(m) / psi(0)|` for every grid point; `None` when `m = 0` is absent
    /// (odd `n`) or the central amplitude vanishes.
    pub fn ratio_to_center(&self) -> Option<Vec<f64>> {
        let center = self.sys.index_of(0)?;
        let c = self.amplitudes[center];
        if c == 0.0 {
            return None;
        }
        Some(self.amplitudes.iter().map(|a| (a / c).abs()).collect())
    }
}

/// Large-spin ground state of `S_x^2` in the z-basis:
/// `(-1)^k (2 pi)^(-1/2) (l^2 - m^2)^(-1/4)` for `l - m = 2k`, zero otherwise.
pub fn ground_state_extended_asymptotic(sys: &SpinSystem, two_m: i64) -> Result<f64> {
    if sys.parity() != Parity::Even {
        return Err(Error::InvalidArgument(
            "extended asymptotic profile needs integer spin (even n)".into(),
        ));
    }
    let index = sys.check_two_m(two_m)?;
    // index == l - m
    if index % 2 == 1 {
        return Ok(0.0);
    }
    if two_m.abs() == sys.two_l() {
        return Err(Error::EdgeSingularity { two_m });
    }
    let k = index / 2;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let l = sys.l();
    let m = two_m as f64 / 2.0;
    Ok(sign / (2.0 * PI).sqrt() * (l * l - m * m).powf(-0.25))
}

/// Gaussian large-spin ground state of `n/2 - S_x`: `(pi l)^(-1/2) exp(-m^2 / l)`.
pub fn ground_state_localized_asymptotic(sys: &SpinSystem, two_m: i64) -> Result<f64> {
    sys.check_two_m(two_m)?;
    let l = sys.l();
    let m = two_m as f64 / 2.0;
    Ok((PI * l).powf(-0.5) * (-m * m / l).exp())
}

/// Exact ground state of `n/2 - S_x`: the rotation element
/// `d^l_{m,l}(pi/2) = 2^(-l) sqrt(C(2l, l-m))`.
pub fn ground_state_localized_exact(sys: &SpinSystem, two_m: i64) -> Result<f64> {
    let w = sys.check_two_m(two_m)?;
    let n = sys.n() as u64;
    Ok((binomial(n, w as u64) / 2f64.powi(sys.n() as i32)).sqrt())
}

pub fn profile<F>(sys: &SpinSystem, label: ProfileLabel, f: F) -> Result<WavefunctionProfile>
where
    F: Fn(&SpinSystem, i64) -> Result<f64>,
{
    let amplitudes = sys.two_m_grid().map(|tm| f(sys, tm)).collect::<Result<Vec<_>>>()?;
    Ok(WavefunctionProfile { sys: *sys, amplitudes, label })
}

/// Binomial coefficient, exact in `u128` while it fits.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return binomial_float(n, k),
        }
    }
    acc as f64
}

fn binomial_float(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eigen_full;

    #[test]
    fn system_fields() {
        let s = make_spin_system(2).unwrap();
        assert_eq!((s.two_l(), s.dim(), s.parity()), (2, 3, Parity::Even));
        let s = make_spin_system(3).unwrap();
        assert_eq!((s.two_l(), s.dim(), s.parity()), (3, 4, Parity::Odd));
        assert_eq!(make_spin_system(46).unwrap().dim(), 47);
        assert!(make_spin_system(0).is_err());
    }

    #[test]
    fn grid_is_doubled_and_descending() {
        let s = make_spin_system(3).unwrap();
        assert_eq!(s.two_m_grid().collect::<Vec<_>>(), vec![3, 1, -1, -3]);
        assert_eq!(s.index_of(-1), Some(2));
        assert_eq!(s.index_of(0), None);
        assert_eq!(s.index_of(5), None);
    }

    fn eigs(m: &BandedHermitian) -> Vec<f64> {
        eigen_full(m, false).unwrap().eigenvalues
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn sx_spectra() {
        let s1 = make_spin_system(1).unwrap();
        let sx = sx_matrix(&s1);
        assert!((sx.get_real(0, 1) - 0.5).abs() < 1e-15);
        assert_close(&eigs(&sx), &[-0.5, 0.5], 1e-14);

        let s2 = make_spin_system(2).unwrap();
        let sx = sx_matrix(&s2);
        assert!((sx.get_real(0, 1) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((sx.get_real(1, 2) - 0.5f64.sqrt()).abs() < 1e-15);
        assert_close(&eigs(&sx), &[-1.0, 0.0, 1.0], 1e-14);

        let s4 = make_spin_system(4).unwrap();
        assert_close(&eigs(&sx_matrix(&s4)), &[-2.0, -1.0, 0.0, 1.0, 2.0], 1e-13);
    }

    #[test]
    fn sx_squared_spectra() {
        let s = make_spin_system(2).unwrap();
        assert_close(&eigs(&sx_squared_matrix(&s)), &[0.0, 1.0, 1.0], 1e-14);
        let s = make_spin_system(3).unwrap();
        assert_close(&eigs(&sx_squared_matrix(&s)), &[0.25, 0.25, 2.25, 2.25], 1e-13);
        let s = make_spin_system(6).unwrap();
        assert_close(
            &eigs(&sx_squared_matrix(&s)),
            &[0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0],
            1e-12,
        );
    }

    #[test]
    fn sx_squared_is_square_of_sx() {
        for n in 1..40 {
            let s = make_spin_system(n).unwrap();
            let a = sx_matrix(&s).to_dense_real().unwrap();
            let b = sx_squared_matrix(&s).to_dense_real().unwrap();
            let d = s.dim();
            for i in 0..d {
                for j in 0..d {
                    let sq: f64 = (0..d).map(|k| a[i * d + k] * a[k * d + j]).sum();
                    let scale = 1.0 + sq.abs();
                    assert!((sq - b[i * d + j]).abs() <= 1e-14 * scale, "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn sx_squared_spectrum_is_m_squared() {
        for n in 1..=40 {
            let s = make_spin_system(n).unwrap();
            let mut want: Vec<f64> = s.two_m_grid().map(|tm| (tm * tm) as f64 / 4.0).collect();
            want.sort_by(f64::total_cmp);
            let got = eigs(&sx_squared_matrix(&s));
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() <= 1e-10 * w.max(1.0), "n={n}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn extended_asymptotic_values() {
        let s = make_spin_system(2).unwrap();
        assert_eq!(ground_state_extended_asymptotic(&s, 0).unwrap(), 0.0);
        assert!(matches!(
            ground_state_extended_asymptotic(&s, 2),
            Err(Error::EdgeSingularity { two_m: 2 })
        ));
        let s = make_spin_system(100).unwrap();
        // l - m = 50, k = 25: the sign factor is (-1)^25.
        let v = ground_state_extended_asymptotic(&s, 0).unwrap();
        let want = -(2.0 * PI).powf(-0.5) * 50f64.powf(-0.5);
        assert!((v - want).abs() < 1e-15);
        let r = ground_state_extended_asymptotic(&s, 96).unwrap() / v;
        let want = (2500.0f64 / (2500.0 - 48.0 * 48.0)).powf(0.25);
        assert!((r.abs() - want).abs() < 1e-12);
        assert!(ground_state_extended_asymptotic(&make_spin_system(3).unwrap(), 1).is_err());
    }

    #[test]
    fn localized_values() {
        let s = make_spin_system(100).unwrap();
        let v = ground_state_localized_asymptotic(&s, 0).unwrap();
        assert!((v - (50.0 * PI).powf(-0.5)).abs() < 1e-15);
        let s2 = make_spin_system(2).unwrap();
        assert!((ground_state_localized_exact(&s2, 2).unwrap() - 0.5).abs() < 1e-15);
        let p = profile(&s, ProfileLabel::LocalizedExact, ground_state_localized_exact).unwrap();
        assert!((p.norm_squared() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn localized_decay_matches_gaussian_shape() {
        // The Gaussian tracks the squared exact amplitude (a probability profile).
        let s = make_spin_system(100).unwrap();
        let exact = ground_state_localized_exact(&s, 40).unwrap() / ground_state_localized_exact(&s, 0).unwrap();
        let gauss = ground_state_localized_asymptotic(&s, 40).unwrap()
            / ground_state_localized_asymptotic(&s, 0).unwrap();
        // exp(-m^2/l) at m = 20, l = 50
        assert!((gauss - (-8.0f64).exp()).abs() < 1e-15);
        let exact_sq = exact * exact;
        assert!((exact_sq.ln() / gauss.ln() - 1.0).abs() < 0.02, "{exact_sq} vs {gauss}");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20.0);
        assert_eq!(binomial(100, 50), 100891344545564193334812497256.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}
