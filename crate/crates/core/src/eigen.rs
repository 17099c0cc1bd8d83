//! Dense real-symmetric eigensolver: Householder reduction to tridiagonal
//! form followed by implicit-shift QL iteration.

use crate::banded::BandedHermitian;
use crate::error::{Error, Result};

/// Implicit-shift sweeps allowed per eigenvalue.
pub const SWEEP_BUDGET: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    /// `max_k ||M v_k - lambda_k v_k||_2`; zero when vectors were not requested.
    pub residual_max: f64,
    /// Largest off-diagonal entry of `V^T V`.
    pub ortho_max: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn vector(&self, k: usize) -> Option<&[f64]> {
        self.eigenvectors.as_ref().map(|v| v[k].as_slice())
    }
}

pub fn eigen_full(m: &BandedHermitian, want_vectors: bool) -> Result<Spectrum> {
    let a = m.to_dense_real()?;
    eigen_symmetric_dense(&a, m.dim(), want_vectors)
}

/// The `k` lowest eigenpairs.
pub fn eigen_lowest(m: &BandedHermitian, k: usize) -> Result<Spectrum> {
    check_k(m.dim(), k)?;
    let mut s = eigen_full(m, true)?;
    s.eigenvalues.truncate(k);
    if let Some(v) = s.eigenvectors.as_mut() {
        v.truncate(k);
    }
    Ok(s)
}

/// The `k` lowest eigenvalues without vectors.
pub fn eigenvalues_lowest(m: &BandedHermitian, k: usize) -> Result<Vec<f64>> {
    check_k(m.dim(), k)?;
    let mut s = eigen_full(m, false)?;
    s.eigenvalues.truncate(k);
    Ok(s.eigenvalues)
}

fn check_k(dim: usize, k: usize) -> Result<()> {
    if k == 0 || k > dim {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={dim}")));
    }
    Ok(())
}

/// Eigen-decomposition of a row-major `dim x dim` symmetric matrix.
pub fn eigen_symmetric_dense(a: &[f64], dim: usize, want_vectors: bool) -> Result<Spectrum> {
    if dim == 0 || a.len() != dim * dim {
        return Err(Error::DimensionMismatch { expected: dim * dim, got: a.len() });
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for i in 0..dim {
        for j in i + 1..dim {
            let diff = (a[i * dim + j] - a[j * dim + i]).abs();
            if diff > 1e-14 * scale.max(f64::MIN_POSITIVE) {
                return Err(Error::NotSymmetric { row: i, col: j, diff });
            }
        }
    }

    let mut v: Vec<Vec<f64>> = (0..dim).map(|i| a[i * dim..(i + 1) * dim].to_vec()).collect();
    let mut d = vec![0.0; dim];
    let mut e = vec![0.0; dim];
    tridiagonalize(&mut v, &mut d, &mut e);
    tridiagonal_ql(&mut v, &mut d, &mut e, want_vectors)?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    if !want_vectors {
        return Ok(Spectrum { eigenvalues, eigenvectors: None, residual_max: 0.0, ortho_max: 0.0 });
    }

    // v holds eigenvectors as columns
    let mut vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&c| (0..dim).map(|r| v[r][c]).collect())
        .collect();
    for vec in &mut vectors {
        fix_phase(vec);
    }
    let (residual_max, ortho_max) = diagnostics(a, dim, &eigenvalues, &vectors);
    Ok(Spectrum { eigenvalues, eigenvectors: Some(vectors), residual_max, ortho_max })
}

/// Makes the first non-negligible entry (largest `m` in spin ordering) positive.
pub fn fix_phase(v: &mut [f64]) {
    let big = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().copied().find(|x| x.abs() > 1e-8 * big) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn diagnostics(a: &[f64], dim: usize, values: &[f64], vectors: &[Vec<f64>]) -> (f64, f64) {
    let mut residual_max: f64 = 0.0;
    for (lambda, vec) in values.iter().zip(vectors) {
        let r2: f64 = (0..dim)
            .map(|i| {
                let row = &a[i * dim..(i + 1) * dim];
                let av: f64 = row.iter().zip(vec).map(|(x, y)| x * y).sum();
                let r = av - lambda * vec[i];
                r * r
            })
            .sum();
        residual_max = residual_max.max(r2.sqrt());
    }
    let mut ortho_max: f64 = 0.0;
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(x, y)| x * y).sum();
            ortho_max = ortho_max.max(dot.abs());
        }
    }
    (residual_max, ortho_max)
}

/// Householder reduction. On return `d` is the diagonal, `e[1..]` the
/// sub-diagonal, and `v` the accumulated orthogonal transform.
fn tridiagonalize(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1]);
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for x in d[..i].iter_mut() {
                *x /= scale;
                h += *x * *x;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].iter_mut().for_each(|x| *x = 0.0);

            for j in 0..i {
                let f = d[j];
                v[j][i] = f;
                let mut g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n.saturating_sub(1) {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let g: f64 = (0..=i).map(|k| v[k][i + 1] * v[k][j]).sum();
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on the tridiagonal `(d, e)`, rotating `v` when asked.
fn tridiagonal_ql(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64], rotate: bool) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut shift = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > SWEEP_BUDGET {
                    return Err(Error::NoConvergence { index: l });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for x in d[l + 2..].iter_mut() {
                    *x -= h;
                }
                shift += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if rotate {
                        for row in v.iter_mut() {
                            let h = row[i + 1];
                            row[i + 1] = s * row[i] + c * h;
                            row[i] = c * row[i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift;
        e[l] = 0.0;
    }
    Ok(())
}
