//! Banded symmetric / Hermitian matrix storage.
//!
//! Band `k` holds the super-diagonal `M[i][i + k]` for `i = 0..dim - k`; the
//! lower triangle follows by (conjugate) symmetry.

use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::fmt_g;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    RealSymmetric,
    ComplexHermitian,
}

#[derive(Debug, Clone, PartialEq)]
enum Bands {
    Real(Vec<Vec<f64>>),
    Complex(Vec<Vec<Complex64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandedHermitian {
    dim: usize,
    bands: Bands,
}

fn check_lengths<T>(dim: usize, bands: &[Vec<T>]) {
    assert!(!bands.is_empty(), "at least the main diagonal is required");
    for (k, b) in bands.iter().enumerate() {
        assert_eq!(b.len(), dim.saturating_sub(k), "band {k} has wrong length");
    }
}

impl BandedHermitian {
    /// Real symmetric matrix from its main diagonal and upper bands.
    ///
    /// Panics if a band length is not `dim - k`.
    pub fn real(dim: usize, bands: Vec<Vec<f64>>) -> Self {
        check_lengths(dim, &bands);
        Self { dim, bands: Bands::Real(bands) }
    }

    pub fn complex(dim: usize, bands: Vec<Vec<Complex64>>) -> Self {
        check_lengths(dim, &bands);
        Self { dim, bands: Bands::Complex(bands) }
    }

    pub fn diagonal(values: Vec<f64>) -> Self {
        Self::real(values.len(), vec![values])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bandwidth(&self) -> usize {
        match &self.bands {
            Bands::Real(b) => b.len() - 1,
            Bands::Complex(b) => b.len() - 1,
        }
    }

    pub fn flavor(&self) -> Flavor {
        match self.bands {
            Bands::Real(_) => Flavor::RealSymmetric,
            Bands::Complex(_) => Flavor::ComplexHermitian,
        }
    }

    pub fn is_real(&self) -> bool {
        self.flavor() == Flavor::RealSymmetric
    }

    pub fn real_bands(&self) -> Option<&[Vec<f64>]> {
        match &self.bands {
            Bands::Real(b) => Some(b),
            Bands::Complex(_) => None,
        }
    }

    pub fn complex_bands(&self) -> Vec<Vec<Complex64>> {
        match &self.bands {
            Bands::Real(b) => b
                .iter()
                .map(|band| band.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
            Bands::Complex(b) => b.clone(),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        let (i, j, conj) = if row <= col { (row, col, false) } else { (col, row, true) };
        let k = j - i;
        let v = match &self.bands {
            Bands::Real(b) => b.get(k).map_or(Complex64::new(0.0, 0.0), |band| band[i].into()),
            Bands::Complex(b) => b.get(k).map_or(Complex64::new(0.0, 0.0), |band| band[i]),
        };
        if conj {
            v.conj()
        } else {
            v
        }
    }

    /// Real part of `M[row][col]`.
    pub fn get_real(&self, row: usize, col: usize) -> f64 {
        self.get(row, col).re
    }

    /// Row-major dense copy; fails for complex storage.
    pub fn to_dense_real(&self) -> Result<Vec<f64>> {
        let bands = self.real_bands().ok_or(Error::NotReal)?;
        let d = self.dim;
        let mut a = vec![0.0; d * d];
        for (k, band) in bands.iter().enumerate() {
            for (i, &v) in band.iter().enumerate() {
                a[i * d + i + k] = v;
                a[(i + k) * d + i] = v;
            }
        }
        Ok(a)
    }

    pub fn to_dense_complex(&self) -> Vec<Complex64> {
        let d = self.dim;
        let mut a = vec![Complex64::new(0.0, 0.0); d * d];
        for (k, band) in self.complex_bands().iter().enumerate() {
            for (i, &v) in band.iter().enumerate() {
                a[i * d + i + k] = v;
                a[(i + k) * d + i] = v.conj();
            }
        }
        a
    }

    /// `alpha * self + beta * other` for real matrices of equal dimension.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let (a, b) = match (self.real_bands(), other.real_bands()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotReal),
        };
        let width = a.len().max(b.len());
        let bands = (0..width)
            .map(|k| {
                let len = self.dim.saturating_sub(k);
                (0..len)
                    .map(|i| {
                        let x = a.get(k).map_or(0.0, |band| band[i]);
                        let y = b.get(k).map_or(0.0, |band| band[i]);
                        alpha * x + beta * y
                    })
                    .collect()
            })
            .collect();
        Ok(Self::real(self.dim, bands))
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        match &self.bands {
            Bands::Real(b) => Self::real(
                self.dim,
                b.iter().map(|band| band.iter().map(|x| alpha * x).collect()).collect(),
            ),
            Bands::Complex(b) => Self::complex(
                self.dim,
                b.iter().map(|band| band.iter().map(|x| x * alpha).collect()).collect(),
            ),
        }
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let d = self.dim;
        let mut rows = vec![0.0; d];
        for (k, band) in self.complex_bands().iter().enumerate() {
            for (i, v) in band.iter().enumerate() {
                let a = v.norm();
                rows[i] += a;
                if k > 0 {
                    rows[i + k] += a;
                }
            }
        }
        rows.into_iter().fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        match &self.bands {
            Bands::Real(b) => b[0].iter().sum(),
            Bands::Complex(b) => b[0].iter().map(|z| z.re).sum(),
        }
    }

    /// `y = M x` for real storage.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let bands = self.real_bands().ok_or(Error::NotReal)?;
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let mut y = vec![0.0; self.dim];
        for (k, band) in bands.iter().enumerate() {
            for (i, &v) in band.iter().enumerate() {
                y[i] += v * x[i + k];
                if k > 0 {
                    y[i + k] += v * x[i];
                }
            }
        }
        Ok(y)
    }

    /// Dumps nonzero entries in row-major order with `%.17g` values.
    ///
    /// Real matrices use `row,col,value`; complex ones `row,col,re,im`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let real = self.is_real();
        if real {
            writeln!(out, "row,col,value")?;
        } else {
            writeln!(out, "row,col,re,im")?;
        }
        let b = self.bandwidth();
        for row in 0..self.dim {
            let lo = row.saturating_sub(b);
            let hi = (row + b).min(self.dim - 1);
            for col in lo..=hi {
                let v = self.get(row, col);
                if v.re == 0.0 && v.im == 0.0 {
                    continue;
                }
                if real {
                    writeln!(out, "{row},{col},{}", fmt_g(v.re, 17))?;
                } else {
                    writeln!(out, "{row},{col},{},{}", fmt_g(v.re, 17), fmt_g(v.im, 17))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BandedHermitian {
        BandedHermitian::real(4, vec![vec![1.0, 2.0, 3.0, 4.0], vec![0.5, 0.0, -0.5], vec![0.25, 0.1]])
    }

    #[test]
    fn symmetric_access() {
        let m = sample();
        assert_eq!(m.bandwidth(), 2);
        assert_eq!(m.get_real(0, 2), 0.25);
        assert_eq!(m.get_real(2, 0), 0.25);
        assert_eq!(m.get_real(0, 3), 0.0);
        assert_eq!(m.trace(), 10.0);
        assert!((m.norm_inf() - 4.6).abs() < 1e-15);
    }

    #[test]
    fn hermitian_access() {
        let i = Complex64::new(0.0, 1.0);
        let m = BandedHermitian::complex(2, vec![vec![1.0.into(), 2.0.into()], vec![i]]);
        assert_eq!(m.get(0, 1), i);
        assert_eq!(m.get(1, 0), -i);
        assert!(m.to_dense_real().is_err());
    }

    #[test]
    fn matvec_matches_dense() {
        let m = sample();
        let a = m.to_dense_real().unwrap();
        let x = [1.0, -2.0, 0.5, 3.0];
        let y = m.matvec(&x).unwrap();
        for i in 0..4 {
            let want: f64 = (0..4).map(|j| a[i * 4 + j] * x[j]).sum();
            assert!((y[i] - want).abs() < 1e-15);
        }
    }

    #[test]
    fn combine_pads_bands() {
        let d = BandedHermitian::diagonal(vec![1.0; 4]);
        let c = d.combine(2.0, &sample(), 1.0).unwrap();
        assert_eq!(c.bandwidth(), 2);
        assert_eq!(c.get_real(1, 1), 4.0);
        assert_eq!(c.get_real(1, 3), 0.1);
        assert!(d.combine(1.0, &BandedHermitian::diagonal(vec![1.0; 3]), 1.0).is_err());
    }

    #[test]
    fn csv_dump() {
        let mut buf = Vec::new();
        BandedHermitian::real(2, vec![vec![0.1, 0.0], vec![2.0]]).write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "row,col,value\n0,0,0.10000000000000001\n0,1,2\n1,0,2\n");
    }
}
