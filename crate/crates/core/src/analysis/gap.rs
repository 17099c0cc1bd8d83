//! Gap traces `E_1 - E_0` over the rescaled time `eta = tau n^2` and
//! minimum-gap location.

use crate::eigen::eigenvalues_lowest;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hamiltonian::{DriverKind, InterpolatingHamiltonian};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPoint {
    pub eta: f64,
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapTrace {
    pub n: usize,
    pub q: Option<i64>,
    pub driver: DriverKind,
    pub points: Vec<GapPoint>,
}

impl GapTrace {
    pub fn gaps(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.gap)
    }
}

fn eta_to_tau(n: usize, eta: f64) -> f64 {
    eta / (n * n) as f64
}

/// The three lowest levels at `eta`.
pub fn levels_at(h: &InterpolatingHamiltonian, eta: f64) -> Result<GapPoint> {
    let tau = eta_to_tau(h.sys().n(), eta);
    let wrap = |e: Error| Error::SolveAt { eta, source: Box::new(e) };
    let m = h.at(tau).map_err(wrap)?;
    let e = eigenvalues_lowest(&m, 3.min(m.dim())).map_err(wrap)?;
    let e2 = e.get(2).copied().unwrap_or(f64::NAN);
    Ok(GapPoint { eta, e0: e[0], e1: e[1], e2, gap: e[1] - e[0] })
}

pub fn gap_trace(h: &InterpolatingHamiltonian, eta_grid: &[f64]) -> Result<GapTrace> {
    gap_trace_with(h, eta_grid, Execution::default())
}

pub fn gap_trace_with(h: &InterpolatingHamiltonian, eta_grid: &[f64], exec: Execution) -> Result<GapTrace> {
    let n = h.sys().n();
    if n < 2 {
        return Err(Error::InvalidArgument("gap traces need n >= 2".into()));
    }
    let n2 = (n * n) as f64;
    for (i, &eta) in eta_grid.iter().enumerate() {
        if !(0.0..=n2).contains(&eta) {
            return Err(Error::InvalidArgument(format!("eta = {eta} maps outside tau in [0, 1]")));
        }
        if i > 0 && eta <= eta_grid[i - 1] {
            return Err(Error::InvalidArgument("eta grid must be strictly increasing".into()));
        }
    }
    let points = exec
        .map(eta_grid, |&eta| levels_at(h, eta))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(GapTrace { n, q: h.q(), driver: h.driver_kind(), points })
}

/// `points` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| {
                if i == points - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (points - 1) as f64
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinGapResult {
    pub tau_c: f64,
    pub eta_c: f64,
    pub gap_min: f64,
    /// The smallest coarse gap sat at an end of the scan window.
    pub boundary_minimum: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinGapOptions {
    pub eta_min: f64,
    /// Clamped to `n^2` (`tau = 1`).
    pub eta_max: f64,
    pub coarse_points: usize,
    /// Golden-section stops once the bracket is narrower than this (in `eta`).
    pub tol: f64,
    pub exec: Execution,
}

impl MinGapOptions {
    /// Extended: `eta` in `[0.5, 20]`, 64 points. Localized: the full
    /// `tau` range with a denser coarse grid, since its crossing is narrow.
    pub fn for_driver(kind: DriverKind) -> Self {
        match kind {
            DriverKind::Extended => Self {
                eta_min: 0.5,
                eta_max: 20.0,
                coarse_points: 64,
                tol: 1e-6,
                exec: Execution::default(),
            },
            DriverKind::Localized => Self {
                eta_min: 0.0,
                eta_max: f64::INFINITY,
                coarse_points: 512,
                tol: 1e-6,
                exec: Execution::default(),
            },
        }
    }

    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Coarse scan followed by golden-section refinement inside the bracketing
/// triple around the smallest coarse gap.
pub fn find_min_gap(h: &InterpolatingHamiltonian, opts: &MinGapOptions) -> Result<MinGapResult> {
    if opts.coarse_points < 16 {
        return Err(Error::InvalidArgument(format!(
            "coarse_points must be >= 16, got {}",
            opts.coarse_points
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {}", opts.tol)));
    }
    let n = h.sys().n();
    let n2 = (n * n) as f64;
    let hi = opts.eta_max.min(n2);
    let lo = opts.eta_min.max(0.0);
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!("empty eta window [{lo}, {hi}]")));
    }
    let grid = linspace(lo, hi, opts.coarse_points);
    let trace = gap_trace_with(h, &grid, opts.exec)?;
    let gaps: Vec<f64> = trace.gaps().collect();
    let best = gaps
        .iter()
        .enumerate()
        .fold(0, |b, (i, g)| if *g < gaps[b] { i } else { b });

    if best == 0 || best == gaps.len() - 1 {
        let eta = grid[best];
        return Ok(MinGapResult {
            tau_c: eta / n2,
            eta_c: eta,
            gap_min: gaps[best],
            boundary_minimum: true,
            iterations: 0,
        });
    }

    let gap_at = |eta: f64| levels_at(h, eta).map(|p| p.gap);
    let (mut a, mut b) = (grid[best - 1], grid[best + 1]);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = gap_at(c)?;
    let mut fd = gap_at(d)?;
    let mut iterations = 0;
    while (b - a) > opts.tol {
        iterations += 1;
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = gap_at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = gap_at(d)?;
        }
    }
    let (mut eta, mut gap) = if fc < fd { (c, fc) } else { (d, fd) };
    if gaps[best] < gap {
        eta = grid[best];
        gap = gaps[best];
    }
    Ok(MinGapResult { tau_c: eta / n2, eta_c: eta, gap_min: gap, boundary_minimum: false, iterations })
}
