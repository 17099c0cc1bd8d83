//! Drivers, problem diagonals and the interpolating Hamiltonian
//! `H(tau) = (1 - tau) D + tau P`.
//!
//! The z-basis (real, pentadiagonal at most) is the computational
//! representation. The x-basis builders exist as an independent route to the
//! same spectrum.

use num_complex::Complex64;

use crate::banded::BandedHermitian;
use crate::cost::{h_unchecked, SymmetricCost};
use crate::error::{Error, Result};
use crate::spin::{binomial, sx_matrix, sx_squared_matrix, SpinSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DriverKind {
    /// `n S_x^2`, ground state spread over all `m`.
    Extended,
    /// `C(n-1, 2) (n/2 - S_x)`, Gaussian ground state around `m = 0`.
    Localized,
}

impl DriverKind {
    pub fn name(self) -> &'static str {
        match self {
            DriverKind::Extended => "extended",
            DriverKind::Localized => "localized",
        }
    }
}

impl std::str::FromStr for DriverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "extended" => Ok(DriverKind::Extended),
            "localized" => Ok(DriverKind::Localized),
            other => Err(Error::InvalidArgument(format!("unknown driver `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriverSpec {
    pub kind: DriverKind,
    pub scale: f64,
}

impl DriverSpec {
    pub fn new(kind: DriverKind, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("driver scale must be positive, got {scale}")));
        }
        Ok(Self { kind, scale })
    }

    /// Prefactor `n` (extended) or `C(n-1, 2)` (localized).
    pub fn default_for(kind: DriverKind, sys: &SpinSystem) -> Result<Self> {
        let n = sys.n() as u64;
        let scale = match kind {
            DriverKind::Extended => n as f64,
            DriverKind::Localized => binomial(n.saturating_sub(1), 2),
        };
        Self::new(kind, scale)
    }
}

pub fn build_driver(sys: &SpinSystem, spec: &DriverSpec) -> BandedHermitian {
    match spec.kind {
        DriverKind::Extended => sx_squared_matrix(sys).scaled(spec.scale),
        DriverKind::Localized => {
            let shift = BandedHermitian::diagonal(vec![sys.l(); sys.dim()]);
            shift
                .combine(spec.scale, &sx_matrix(sys), -spec.scale)
                .expect("same dimension")
        }
    }
}

/// Diagonal `f(l - m)`, i.e. entry `i` is `f(w = i)`.
pub fn build_problem_matrix(sys: &SpinSystem, cost: &SymmetricCost) -> Result<BandedHermitian> {
    if cost.n() != sys.n() {
        return Err(Error::DimensionMismatch { expected: sys.n(), got: cost.n() });
    }
    Ok(BandedHermitian::diagonal(cost.values().iter().map(|&f| f as f64).collect()))
}

/// Diagonal `(n/2)^3 h(w/n)`: the large-`n` form of the canonical cost.
pub fn build_continuum_problem(sys: &SpinSystem, q: i64) -> BandedHermitian {
    let n = sys.n() as f64;
    let scale = (n / 2.0).powi(3);
    BandedHermitian::diagonal(
        (0..sys.dim()).map(|w| scale * h_unchecked(w as f64 / n, q as f64)).collect(),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemTerm {
    /// Exact integer table.
    Cost(SymmetricCost),
    /// `(n/2)^3 h(u)` with the canonical `h` for this `q`.
    Continuum { q: i64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterpolatingHamiltonian {
    sys: SpinSystem,
    driver_kind: DriverKind,
    driver: BandedHermitian,
    problem: BandedHermitian,
    q: Option<i64>,
}

impl InterpolatingHamiltonian {
    pub fn new(
        sys: SpinSystem,
        driver_kind: DriverKind,
        driver: BandedHermitian,
        problem: BandedHermitian,
    ) -> Result<Self> {
        for m in [&driver, &problem] {
            if m.dim() != sys.dim() {
                return Err(Error::DimensionMismatch { expected: sys.dim(), got: m.dim() });
            }
            if !m.is_real() {
                return Err(Error::NotReal);
            }
        }
        Ok(Self { sys, driver_kind, driver, problem, q: None })
    }

    /// Default-scaled driver of `kind` with the given problem term.
    pub fn build(sys: SpinSystem, kind: DriverKind, problem: &ProblemTerm) -> Result<Self> {
        let spec = DriverSpec::default_for(kind, &sys)?;
        let p = match problem {
            ProblemTerm::Cost(c) => build_problem_matrix(&sys, c)?,
            ProblemTerm::Continuum { q } => build_continuum_problem(&sys, *q),
        };
        let mut h = Self::new(sys, kind, build_driver(&sys, &spec), p)?;
        h.q = match problem {
            ProblemTerm::Cost(c) => c.q(),
            ProblemTerm::Continuum { q } => Some(*q),
        };
        Ok(h)
    }

    /// Canonical cost with parameter `q`.
    pub fn canonical(n: usize, q: i64, kind: DriverKind) -> Result<Self> {
        let sys = SpinSystem::new(n)?;
        let cost = crate::cost::canonical_cost(n, q)?;
        Self::build(sys, kind, &ProblemTerm::Cost(cost))
    }

    pub fn sys(&self) -> &SpinSystem {
        &self.sys
    }

    pub fn driver_kind(&self) -> DriverKind {
        self.driver_kind
    }

    /// Cost parameter when the problem term is canonical.
    pub fn q(&self) -> Option<i64> {
        self.q
    }

    pub fn driver(&self) -> &BandedHermitian {
        &self.driver
    }

    pub fn problem(&self) -> &BandedHermitian {
        &self.problem
    }

    /// Same pair with both terms multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            sys: self.sys,
            driver_kind: self.driver_kind,
            driver: self.driver.scaled(factor),
            problem: self.problem.scaled(factor),
            q: self.q,
        }
    }

    pub fn at(&self, tau: f64) -> Result<BandedHermitian> {
        hamiltonian_at(self, tau)
    }

    /// `dH/dtau = P - D`.
    pub fn derivative(&self) -> BandedHermitian {
        self.problem.combine(1.0, &self.driver, -1.0).expect("same dimension")
    }
}

pub fn hamiltonian_at(h: &InterpolatingHamiltonian, tau: f64) -> Result<BandedHermitian> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidArgument(format!("tau = {tau} outside [0, 1]")));
    }
    if tau == 0.0 {
        return Ok(h.driver.clone());
    }
    if tau == 1.0 {
        return Ok(h.problem.clone());
    }
    h.driver.combine(1.0 - tau, &h.problem, tau)
}

/// `Lambda_k(l, m)` coefficients of the x-basis representation of `h(S_z)`,
/// for the row with magnetic number `m` (`S_x` eigenvalue).
///
/// `lambda2` is the exact `(S_z^3)_{m,m-1} / l^3`.
#[derive(Debug, Clone, Copy)]
struct Lambdas {
    l0: f64,
    l1: Complex64,
    l2: Complex64,
    l3: f64,
    l4: Complex64,
}

fn ladder_quad(two_l: i64, two_m: i64) -> f64 {
    // l(l+1) - m(m-1)
    (two_l * (two_l + 2) - two_m * (two_m - 2)) as f64 / 4.0
}

fn lambdas(two_l: i64, two_m: i64) -> Lambdas {
    let l = two_l as f64 / 2.0;
    let m = two_m as f64 / 2.0;
    let a0 = ladder_quad(two_l, two_m).max(0.0);
    let a1 = ladder_quad(two_l, two_m - 2).max(0.0);
    let a2 = ladder_quad(two_l, two_m - 4).max(0.0);
    let i = Complex64::new(0.0, 1.0);
    let l3 = -(a0 * a1).sqrt() / (4.0 * l * l);
    Lambdas {
        l0: (l * (l + 1.0) - m * m) / (2.0 * l * l),
        l1: -i * a0.sqrt() / (2.0 * l),
        l2: -i * 3.0 / (8.0 * l.powi(3)) * a0.sqrt() * (a0 - 2.0 / 3.0),
        l3,
        l4: -i / (2.0 * l) * a2.sqrt() * l3,
    }
}

/// Bands of `(kinetic) m^2 + potential * h(S_z)` in the x-basis, where the
/// cubic carries the reflected sign on odd powers of `S_z`.
fn xbasis_bands(sys: &SpinSystem, q: i64, kinetic: f64, potential: f64) -> BandedHermitian {
    let dim = sys.dim();
    let q = q as f64;
    let two_l = sys.two_l();
    let rows: Vec<(f64, Lambdas)> = (0..dim).map(|i| (sys.m(i), lambdas(two_l, sys.two_m(i)))).collect();
    let band = |k: usize, f: &dyn Fn(&Lambdas) -> Complex64| -> Vec<Complex64> {
        (0..dim.saturating_sub(k)).map(|i| f(&rows[i].1) * potential).collect()
    };
    let diag = rows
        .iter()
        .map(|(m, lam)| Complex64::new(kinetic * m * m + potential * (q + 4.0 / 3.0 - q * lam.l0), 0.0))
        .collect();
    let b1 = band(1, &|lam| lam.l1 * (2.0 - q) + lam.l2 * (q - 2.0 / 3.0));
    let b2 = band(2, &|lam| Complex64::new(-q * lam.l3, 0.0));
    let b3 = band(3, &|lam| lam.l4 * (q - 2.0 / 3.0));
    let mut bands = vec![diag, b1, b2, b3];
    bands.truncate(dim.min(4));
    BandedHermitian::complex(dim, bands)
}

/// `H(tau) = (1 - tau) n S_x^2 + tau (n/2)^3 h(S_z)` with `x` as the
/// quantization axis: complex Hermitian, bandwidth 3.
pub fn build_xbasis_matrix(sys: &SpinSystem, q: i64, tau: f64) -> Result<BandedHermitian> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidArgument(format!("tau = {tau} outside [0, 1]")));
    }
    let n = sys.n() as f64;
    Ok(xbasis_bands(sys, q, (1.0 - tau) * n, 0.5 * tau * (n / 2.0).powi(3)))
}

/// Kinetic term of the dimensionless matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kinetic {
    /// `(1 - eta/n^2) m^2`: exactly `H(tau = eta/n^2) / n`.
    #[default]
    Exact,
    /// `m^2`, dropping the `O(eta/n^2)` correction.
    LeadingOrder,
}

/// `H / n` in the variables `eta = tau n^2`: diagonal
/// `m^2 + (eta/16)(q + 4/3 - q Lambda_0)` and off-diagonals `eta/16` times
/// the `Lambda` combinations.
pub fn rescaled_matrix(sys: &SpinSystem, q: i64, eta: f64, kinetic: Kinetic) -> Result<BandedHermitian> {
    if !(eta >= 0.0) {
        return Err(Error::InvalidArgument(format!("eta = {eta} must be >= 0")));
    }
    let n = sys.n() as f64;
    let k = match kinetic {
        Kinetic::Exact => 1.0 - eta / (n * n),
        Kinetic::LeadingOrder => 1.0,
    };
    Ok(xbasis_bands(sys, q, k, eta / 16.0))
}

/// Conjugates by `diag(i^k)`, mapping a Hermitian matrix with imaginary odd
/// bands and real even bands onto a real symmetric one with the same spectrum.
pub fn realify_gauge(m: &BandedHermitian) -> Result<BandedHermitian> {
    if m.is_real() {
        return Ok(m.clone());
    }
    let bands = m.complex_bands();
    let scale = bands
        .iter()
        .flat_map(|b| b.iter().map(|z| z.norm()))
        .fold(1.0f64, f64::max);
    let tol = 1e-12 * scale;
    let mut out = Vec::with_capacity(bands.len());
    for (k, band) in bands.iter().enumerate() {
        let mut real = Vec::with_capacity(band.len());
        for (i, z) in band.iter().enumerate() {
            let (keep, drop) = if k % 2 == 0 { (z.re, z.im) } else { (z.im, z.re) };
            if drop.abs() > tol {
                return Err(Error::NotRealifiable { offset: k, index: i, value: format!("{z}") });
            }
            // i^k * z for the kept component
            let v = match k % 4 {
                0 => keep,
                1 => -keep,
                2 => -keep,
                _ => keep,
            };
            real.push(v);
        }
        out.push(real);
    }
    Ok(BandedHermitian::real(m.dim(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::canonical_cost;
    use crate::eigen::eigen_full;

    fn eigs(m: &BandedHermitian) -> Vec<f64> {
        eigen_full(m, false).unwrap().eigenvalues
    }

    fn sys(n: usize) -> SpinSystem {
        SpinSystem::new(n).unwrap()
    }

    #[test]
    fn problem_diagonal() {
        let p = build_problem_matrix(&sys(3), &canonical_cost(3, 3).unwrap()).unwrap();
        assert_eq!(p.real_bands().unwrap()[0], vec![0.0, 3.0, 1.0, 1.0]);
        let p = build_problem_matrix(&sys(6), &canonical_cost(6, 3).unwrap()).unwrap();
        assert_eq!(p.get_real(6, 6), 20.0);
        assert_eq!(p.get_real(0, 0), 0.0);
        assert!(build_problem_matrix(&sys(5), &canonical_cost(6, 3).unwrap()).is_err());
    }

    #[test]
    fn driver_spectra() {
        let s = sys(2);
        let d = build_driver(&s, &DriverSpec::default_for(DriverKind::Extended, &s).unwrap());
        for (g, w) in eigs(&d).iter().zip([0.0, 2.0, 2.0]) {
            assert!((g - w).abs() < 1e-13);
        }
        let s = sys(4);
        let d = build_driver(&s, &DriverSpec::default_for(DriverKind::Localized, &s).unwrap());
        for (g, w) in eigs(&d).iter().zip([0.0, 3.0, 6.0, 9.0, 12.0]) {
            assert!((g - w).abs() < 1e-12);
        }
        let s = sys(3);
        let e = eigs(&build_driver(&s, &DriverSpec::default_for(DriverKind::Extended, &s).unwrap()));
        assert!((e[0] - 0.75).abs() < 1e-13 && (e[1] - 0.75).abs() < 1e-13);
        assert!(DriverSpec::default_for(DriverKind::Localized, &sys(2)).is_err());
        assert!(DriverSpec::new(DriverKind::Extended, -1.0).is_err());
    }

    #[test]
    fn extended_driver_is_psd() {
        for n in 1..=40 {
            let s = sys(n);
            let e = eigs(&build_driver(&s, &DriverSpec::default_for(DriverKind::Extended, &s).unwrap()));
            assert!(e[0] >= -1e-12);
            if n % 2 == 0 {
                assert!(e[0].abs() < 1e-10, "n={n}: {}", e[0]);
            }
        }
    }

    #[test]
    fn endpoints_and_linearity() {
        let h = InterpolatingHamiltonian::canonical(2 * 3, 3, DriverKind::Extended).unwrap();
        assert_eq!(h.at(0.0).unwrap(), *h.driver());
        assert_eq!(h.at(1.0).unwrap(), *h.problem());
        let half = h.at(0.5).unwrap();
        for i in 0..h.sys().dim() {
            let want = 0.5 * (h.driver().get_real(i, i) + h.problem().get_real(i, i));
            assert!((half.get_real(i, i) - want).abs() < 1e-12);
        }
        assert!(h.at(-0.1).is_err());
        assert!(h.at(1.1).is_err());
        let h0 = h.at(0.0).unwrap();
        let h1 = h.at(1.0).unwrap();
        for tau in [0.1, 0.37, 0.9] {
            let direct = h.at(tau).unwrap();
            let mixed = h0.combine(1.0 - tau, &h1, tau).unwrap();
            for i in 0..7 {
                for j in 0..7 {
                    assert!((direct.get_real(i, j) - mixed.get_real(i, j)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn xbasis_structure_and_tau0() {
        let s = sys(4);
        let x = build_xbasis_matrix(&s, 3, 0.0).unwrap();
        assert_eq!(x.bandwidth(), 3);
        let diag: Vec<f64> = (0..5).map(|i| x.get(i, i).re).collect();
        assert_eq!(diag, vec![16.0, 4.0, 0.0, 4.0, 16.0]);
        let x = build_xbasis_matrix(&sys(8), 3, 0.3).unwrap();
        for i in 0..9 {
            if i + 1 < 9 {
                assert_eq!(x.get(i, i + 1).re, 0.0);
            }
            if i + 2 < 9 {
                assert_eq!(x.get(i, i + 2).im, 0.0);
            }
            if i + 3 < 9 {
                assert_eq!(x.get(i, i + 3).re, 0.0);
            }
        }
        assert!(build_xbasis_matrix(&s, 3, 2.0).is_err());
    }

    fn cross_basis_error(n: usize, q: i64, tau: f64) -> f64 {
        let s = sys(n);
        let z = InterpolatingHamiltonian::build(s, DriverKind::Extended, &ProblemTerm::Continuum { q })
            .unwrap()
            .at(tau)
            .unwrap();
        let x = realify_gauge(&build_xbasis_matrix(&s, q, tau).unwrap()).unwrap();
        let (ez, ex) = (eigs(&z), eigs(&x));
        let norm = z.norm_inf();
        ez.iter().zip(&ex).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / norm
    }

    #[test]
    fn cross_basis_spectra_agree() {
        assert!(cross_basis_error(6, 3, 0.1) < 1e-10);
        for n in [4, 5, 12, 31, 60] {
            for q in [3, 4] {
                for tau in [0.0, 1e-3, 5e-3, 0.2, 1.0] {
                    assert!(cross_basis_error(n, q, tau) < 1e-10, "n={n} q={q} tau={tau}");
                }
            }
        }
    }

    #[test]
    fn printed_lambda2_does_not_reproduce_spectrum() {
        // (3i / 4l^3) sqrt(a) (a - 1) in place of the exact element
        let s = sys(10);
        let (q, tau) = (3i64, 0.2);
        let exact = build_xbasis_matrix(&s, q, tau).unwrap();
        let mut bands = exact.complex_bands();
        let l = s.l();
        let pot = 0.5 * tau * (s.n() as f64 / 2.0).powi(3);
        for (i, z) in bands[1].iter_mut().enumerate() {
            let a = ladder_quad(s.two_l(), s.two_m(i));
            let l1 = -Complex64::new(0.0, 1.0) * a.sqrt() / (2.0 * l);
            let l2 = Complex64::new(0.0, 3.0) / (4.0 * l.powi(3)) * a.sqrt() * (a - 1.0);
            *z = (l1 * (2.0 - q as f64) + l2 * (q as f64 - 2.0 / 3.0)) * pot;
        }
        let printed = realify_gauge(&BandedHermitian::complex(s.dim(), bands)).unwrap();
        let z = InterpolatingHamiltonian::build(s, DriverKind::Extended, &ProblemTerm::Continuum { q })
            .unwrap()
            .at(tau)
            .unwrap();
        let diff = eigs(&printed)[0] - eigs(&z)[0];
        assert!(diff.abs() > 1e-3 * z.norm_inf(), "{diff}");
    }

    #[test]
    fn gauge_realification() {
        let x = build_xbasis_matrix(&sys(9), 4, 0.4).unwrap();
        let r = realify_gauge(&x).unwrap();
        assert!(r.is_real());
        let d = BandedHermitian::real(2, vec![vec![1.0, 2.0], vec![0.5]]);
        assert_eq!(realify_gauge(&d).unwrap(), d);
        let bad = BandedHermitian::complex(2, vec![vec![1.0.into(), 2.0.into()], vec![Complex64::new(0.5, 0.0)]]);
        assert!(matches!(realify_gauge(&bad), Err(Error::NotRealifiable { offset: 1, .. })));
    }

    #[test]
    fn rescaled_free_rotor_and_relation() {
        let s = sys(10);
        let r = realify_gauge(&rescaled_matrix(&s, 3, 0.0, Kinetic::Exact).unwrap()).unwrap();
        let mut want: Vec<f64> = (0..11).map(|i| s.m(i).powi(2)).collect();
        want.sort_by(f64::total_cmp);
        for (g, w) in eigs(&r).iter().zip(&want) {
            assert!((g - w).abs() < 1e-12);
        }
        for n in [10usize, 21, 40] {
            let s = sys(n);
            let eta = 5.0;
            let scaled = eigs(&realify_gauge(&rescaled_matrix(&s, 3, eta, Kinetic::Exact).unwrap()).unwrap());
            let direct = eigs(
                &InterpolatingHamiltonian::build(s, DriverKind::Extended, &ProblemTerm::Continuum { q: 3 })
                    .unwrap()
                    .at(eta / (n * n) as f64)
                    .unwrap(),
            );
            for (a, b) in scaled.iter().zip(&direct) {
                assert!((a * n as f64 - b).abs() <= 1e-9 * b.abs().max(1.0));
            }
        }
        assert!(rescaled_matrix(&s, 3, -1.0, Kinetic::Exact).is_err());
    }

    #[test]
    fn rescaled_ground_energy_is_n_independent() {
        let e0 = |n: usize| {
            eigs(&realify_gauge(&rescaled_matrix(&sys(n), 3, 5.0, Kinetic::LeadingOrder).unwrap()).unwrap())[0]
        };
        let (a, b) = (e0(40), e0(60));
        assert!((a - b).abs() / b.abs() < 0.05, "{a} {b}");
    }
}
