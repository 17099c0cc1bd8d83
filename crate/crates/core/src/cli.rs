//! Command-line front end. Every sub-command produces one CSV table (single
//! header row, `#` comment lines, `%.12g` numbers) or, with `--format plot`,
//! an SVG polyline rendering of the same table.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::fit::{scaling_study, FitModel};
use crate::analysis::gap::{find_min_gap, gap_trace, linspace, MinGapOptions};
use crate::analysis::perturb::perturbative_estimate;
use crate::analysis::states::exact_ground_state;
use crate::analysis::{evolve_schrodinger, wkb_potential};
use crate::cost::{bruteforce_cost, canonical_cost};
use crate::eigen::{eigen_full, eigenvalues_lowest};
use crate::error::Error;
use crate::exec::Execution;
use crate::format::g12;
use crate::hamiltonian::{DriverKind, InterpolatingHamiltonian, ProblemTerm};
use crate::spin::{
    ground_state_extended_asymptotic, ground_state_localized_asymptotic, Parity, SpinSystem,
};

#[derive(Debug, Parser)]
#[command(name = "spinqaa", version, about = "Adiabatic spectra of large-spin Hamiltonians for symmetric costs")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Flat `key=value` file mirroring the flags; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DriverArg {
    Extended,
    Localized,
}

impl From<DriverArg> for DriverKind {
    fn from(d: DriverArg) -> Self {
        match d {
            DriverArg::Extended => DriverKind::Extended,
            DriverArg::Localized => DriverKind::Localized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    /// Exact integer cost table.
    Exact,
    /// `(n/2)^3 h(w/n)`.
    Continuum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Linear,
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Exact,
    Asymptotic,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4000))]
    pub n: u32,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(3..=1_000_000))]
    pub q: i64,
    #[arg(long, value_enum, default_value_t = DriverArg::Extended)]
    pub driver: DriverArg,
    #[arg(long, value_enum, default_value_t = ProblemArg::Exact)]
    pub problem: ProblemArg,
}

impl SystemArgs {
    fn hamiltonian(&self) -> Result<InterpolatingHamiltonian, Error> {
        let n = self.n as usize;
        let sys = SpinSystem::new(n)?;
        let problem = match self.problem {
            ProblemArg::Exact => ProblemTerm::Cost(canonical_cost(n, self.q)?),
            ProblemArg::Continuum => ProblemTerm::Continuum { q: self.q },
        };
        InterpolatingHamiltonian::build(sys, self.driver.into(), &problem)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of H(tau).
    Spectrum {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        /// Number of lowest levels (all when absent).
        #[arg(long)]
        levels: Option<usize>,
    },
    /// E0, E1, E2 and the gap over an eta = tau n^2 grid.
    GapScan {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 0.0)]
        eta_min: f64,
        #[arg(long, default_value_t = 12.0)]
        eta_max: f64,
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Location and depth of the minimum gap.
    MinGap {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        coarse_points: Option<usize>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Minimum gap over a range of n with a scaling fit.
    Scaling {
        #[arg(long)]
        n_start: usize,
        #[arg(long)]
        n_end: usize,
        #[arg(long, default_value_t = 2)]
        step: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(3..=1_000_000))]
        q: i64,
        #[arg(long, value_enum, default_value_t = DriverArg::Extended)]
        driver: DriverArg,
        #[arg(long, value_enum, default_value_t = ModelArg::Linear)]
        model: ModelArg,
    },
    /// Ground-state amplitudes over m.
    GroundState {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4000))]
        n: u32,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        #[arg(long, value_enum, default_value_t = DriverArg::Extended)]
        driver: DriverArg,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(3..=1_000_000))]
        q: i64,
        #[arg(long, value_enum, default_value_t = ProfileArg::Exact)]
        profile: ProfileArg,
    },
    /// The quasiclassical potential V(phi) on [-pi, pi].
    WkbPotential {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(3..=1_000_000))]
        q: i64,
        #[arg(long, default_value_t = 257)]
        points: usize,
    },
    /// Perturbative minimum-gap estimate.
    Estimate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=1_000_000))]
        n: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(3..=1_000_000))]
        q: i64,
    },
    /// Crank-Nicolson sweep from the driver ground state.
    Evolve {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long = "T")]
        total_time: f64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
    },
    /// Cost table f(w), optionally checked against the triple-sum oracle.
    Cost {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=100_000))]
        n: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(3..=1_000_000))]
        q: i64,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => g12(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            Cell::Text(_) => None,
        }
    }
}

/// A CSV table with trailing comment lines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub comments: Vec<String>,
    /// Set when a built-in check failed; the process exits with code 1.
    pub failed: bool,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        for c in &self.comments {
            let _ = writeln!(s, "# {c}");
        }
        s
    }

    /// Polylines of every numeric column against the first.
    pub fn to_svg(&self) -> String {
        let (w, h, pad) = (640.0, 400.0, 40.0);
        let xs: Vec<Option<f64>> = self.rows.iter().map(|r| r.first().and_then(Cell::as_f64)).collect();
        let series: Vec<(String, Vec<(f64, f64)>)> = (1..self.header.len())
            .map(|c| {
                let pts = self
                    .rows
                    .iter()
                    .zip(&xs)
                    .filter_map(|(r, x)| Some(((*x)?, r.get(c)?.as_f64()?)))
                    .filter(|(x, y)| x.is_finite() && y.is_finite())
                    .collect();
                (self.header[c].clone(), pts)
            })
            .filter(|(_, pts): &(String, Vec<(f64, f64)>)| !pts.is_empty())
            .collect();
        let all = series.iter().flat_map(|(_, p)| p.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in all {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let sx = if x1 > x0 { (w - 2.0 * pad) / (x1 - x0) } else { 1.0 };
        let sy = if y1 > y0 { (h - 2.0 * pad) / (y1 - y0) } else { 1.0 };
        let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
        );
        let _ = writeln!(
            s,
            "<rect x=\"{pad}\" y=\"{pad}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>",
            w - 2.0 * pad,
            h - 2.0 * pad
        );
        for (k, (name, pts)) in series.iter().enumerate() {
            let coords: Vec<String> = pts
                .iter()
                .map(|(x, y)| format!("{:.2},{:.2}", pad + (x - x0) * sx, h - pad - (y - y0) * sy))
                .collect();
            let color = colors[k % colors.len()];
            let _ = writeln!(
                s,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"><title>{name}</title></polyline>",
                coords.join(" ")
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"{pad}\" y=\"{}\" font-size=\"12\">{}: [{}, {}] x [{}, {}]</text>",
            h - 10.0,
            self.header.first().map(String::as_str).unwrap_or(""),
            g12(x0),
            g12(x1),
            g12(y0),
            g12(y1)
        );
        s.push_str("</svg>\n");
        s
    }
}

fn row(cells: impl IntoIterator<Item = Cell>) -> Vec<Cell> {
    cells.into_iter().collect()
}

fn check_tau(tau: f64) -> Result<(), Error> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidArgument(format!("--tau {tau} outside [0, 1]")));
    }
    Ok(())
}

/// Runs a parsed command and returns its table.
pub fn execute(command: &Command) -> Result<Table, Error> {
    match command {
        Command::Spectrum { sys, tau, levels } => {
            check_tau(*tau)?;
            let h = sys.hamiltonian()?;
            let m = h.at(*tau)?;
            let values = match levels {
                Some(k) => eigenvalues_lowest(&m, *k)?,
                None => eigen_full(&m, false)?.eigenvalues,
            };
            let mut t = Table::new(&["index", "eigenvalue"]);
            for (i, e) in values.into_iter().enumerate() {
                t.rows.push(row([Cell::Int(i as i64), Cell::Num(e)]));
            }
            Ok(t)
        }
        Command::GapScan { sys, eta_min, eta_max, points } => {
            if *points < 2 || !(eta_min < eta_max) {
                return Err(Error::InvalidArgument("need --points >= 2 and --eta-min < --eta-max".into()));
            }
            let h = sys.hamiltonian()?;
            let trace = gap_trace(&h, &linspace(*eta_min, *eta_max, *points))?;
            let mut t = Table::new(&["eta", "E0", "E1", "E2", "gap"]);
            for p in trace.points {
                t.rows.push(row([p.eta, p.e0, p.e1, p.e2, p.gap].map(Cell::Num)));
            }
            Ok(t)
        }
        Command::MinGap { sys, coarse_points, tol } => {
            let h = sys.hamiltonian()?;
            let kind: DriverKind = sys.driver.into();
            let mut opts = MinGapOptions::for_driver(kind);
            if let Some(c) = coarse_points {
                opts.coarse_points = *c;
            }
            opts.tol = *tol;
            let r = find_min_gap(&h, &opts)?;
            let mut t = Table::new(&["n", "q", "tau_c", "eta_c", "gap_min", "boundary"]);
            t.rows.push(row([
                Cell::Int(sys.n as i64),
                Cell::Int(sys.q),
                Cell::Num(r.tau_c),
                Cell::Num(r.eta_c),
                Cell::Num(r.gap_min),
                Cell::Text(r.boundary_minimum.to_string()),
            ]));
            Ok(t)
        }
        Command::Scaling { n_start, n_end, step, q, driver, model } => {
            if *step == 0 || n_start > n_end || *n_start < 3 {
                return Err(Error::InvalidArgument("need 3 <= --n-start <= --n-end and --step >= 1".into()));
            }
            let ns: Vec<usize> = (*n_start..=*n_end).step_by(*step).collect();
            let model = match model {
                ModelArg::Linear => FitModel::Linear,
                ModelArg::Exp => FitModel::Exponential,
            };
            let study = scaling_study(&ns, *q, (*driver).into(), model, Execution::default())?;
            let mut t = Table::new(&["n", "tau_c", "eta_c", "gap_min", "gap_over_n", "boundary"]);
            for (n, r) in &study.results {
                t.rows.push(row([
                    Cell::Int(*n as i64),
                    Cell::Num(r.tau_c),
                    Cell::Num(r.eta_c),
                    Cell::Num(r.gap_min),
                    Cell::Num(r.gap_min / *n as f64),
                    Cell::Text(r.boundary_minimum.to_string()),
                ]));
            }
            let f = &study.fit;
            t.comments.push(format!("fit: a={},b={},R2={}", g12(f.slope), g12(f.intercept), g12(f.r_squared)));
            Ok(t)
        }
        Command::GroundState { n, tau, driver, q, profile } => {
            check_tau(*tau)?;
            let sys = SpinSystem::new(*n as usize)?;
            let kind: DriverKind = (*driver).into();
            let mut t = Table::new(&["m", "amplitude"]);
            match profile {
                ProfileArg::Exact => {
                    let h = InterpolatingHamiltonian::canonical(sys.n(), *q, kind)?;
                    let g = exact_ground_state(&h, *tau)?;
                    for (i, a) in g.amplitudes.iter().enumerate() {
                        t.rows.push(row([Cell::Num(sys.m(i)), Cell::Num(*a)]));
                    }
                }
                ProfileArg::Asymptotic => {
                    if *tau != 0.0 {
                        return Err(Error::InvalidArgument("asymptotic profiles exist only at --tau 0".into()));
                    }
                    for (i, two_m) in sys.two_m_grid().enumerate() {
                        let a = match kind {
                            DriverKind::Extended => {
                                if sys.parity() == Parity::Odd {
                                    return Err(Error::InvalidArgument(
                                        "extended asymptotic profile needs even n".into(),
                                    ));
                                }
                                match ground_state_extended_asymptotic(&sys, two_m) {
                                    Ok(a) => a,
                                    Err(Error::EdgeSingularity { .. }) => continue,
                                    Err(e) => return Err(e),
                                }
                            }
                            DriverKind::Localized => ground_state_localized_asymptotic(&sys, two_m)?,
                        };
                        t.rows.push(row([Cell::Num(sys.m(i)), Cell::Num(a)]));
                    }
                }
            }
            Ok(t)
        }
        Command::WkbPotential { q, points } => {
            if *points < 2 {
                return Err(Error::InvalidArgument("--points must be >= 2".into()));
            }
            let mut t = Table::new(&["phi", "V"]);
            for phi in linspace(-PI, PI, *points) {
                t.rows.push(row([Cell::Num(phi), Cell::Num(wkb_potential(*q, phi)?)]));
            }
            Ok(t)
        }
        Command::Estimate { n, q } => {
            let e = perturbative_estimate(*n as usize, *q)?;
            let mut t = Table::new(&["quantity", "value"]);
            let mut push = |name: &str, v: f64| t.rows.push(row([Cell::Text(name.into()), Cell::Num(v)]));
            push("n", *n as f64);
            push("q", *q as f64);
            for (tag, f) in [("exponential", e.exponential), ("standing", e.standing)] {
                push(&format!("{tag}.h_ge"), f.h_ge);
                push(&format!("{tag}.h_e1e2"), f.h_e1e2);
                push(&format!("{tag}.tau_c"), f.tau_c);
                push(&format!("{tag}.eta_c"), f.eta_c);
                push(&format!("{tag}.eta_c_asymptotic"), f.eta_c_asymptotic);
                push(&format!("{tag}.gap_at_tau_c"), f.gap_at_tau_c);
                push(&format!("{tag}.gap_min"), f.gap_min);
            }
            if let Some(r) = e.reported {
                push("reported.eta_c", r.eta_c);
                push("reported.gap_min", r.gap_min_over_n * *n as f64);
                push("reported.gap_min_over_n", r.gap_min_over_n);
                push("reported.h_e1e2_squared_over_n6", r.h_e1e2_squared_over_n6);
            }
            Ok(t)
        }
        Command::Evolve { sys, total_time, steps } => {
            let h = sys.hamiltonian()?;
            let r = evolve_schrodinger(&h, *total_time, *steps)?;
            let mut t = Table::new(&["T", "success_probability"]);
            t.rows.push(row([Cell::Num(r.total_time), Cell::Num(r.success_probability)]));
            t.comments.push(format!("max_norm_drift={}", g12(r.max_norm_drift)));
            Ok(t)
        }
        Command::Cost { n, q, verify } => {
            let n = *n as usize;
            let cost = canonical_cost(n, *q)?;
            let mut t = Table::new(&["w", "f"]);
            for (w, f) in cost.values().iter().enumerate() {
                t.rows.push(row([Cell::Int(w as i64), Cell::Int(*f)]));
            }
            if *verify {
                if n > 14 {
                    return Err(Error::InvalidArgument("--verify enumerates 2^n strings; needs n <= 14".into()));
                }
                let mut ok = true;
                for bits in 0u32..(1 << n) {
                    let s: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                    if bruteforce_cost(&s, *q)? != cost.value(bits.count_ones() as usize) {
                        ok = false;
                        break;
                    }
                }
                t.comments.push(format!("verify: {}", if ok { "PASS" } else { "FAIL" }));
                t.failed = !ok;
            }
            Ok(t)
        }
    }
}

/// Expands `--config FILE` into flags placed right after the sub-command, so
/// that flags given on the command line take precedence.
pub fn expand_config(args: Vec<String>) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(args.len());
    let mut config = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            config = Some(it.next().ok_or("--config needs a file")?);
        } else if let Some(path) = a.strip_prefix("--config=") {
            config = Some(path.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = config else { return Ok(rest) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let mut command = None;
    let mut flags = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key=value", lineno + 1))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "command" {
            command = Some(v.to_string());
            continue;
        }
        match v {
            "true" => flags.push(format!("--{k}")),
            "false" => {}
            _ => {
                flags.push(format!("--{k}"));
                flags.push(v.to_string());
            }
        }
    }
    // argv[0], then the sub-command (from argv or the file), then config flags.
    let mut out = Vec::with_capacity(rest.len() + flags.len() + 1);
    let mut rest = rest.into_iter();
    out.extend(rest.next());
    let names = [
        "spectrum", "gap-scan", "min-gap", "scaling", "ground-state", "wkb-potential", "estimate", "evolve", "cost",
    ];
    let mut leading = Vec::new();
    let mut sub = None;
    for a in rest.by_ref() {
        if names.contains(&a.as_str()) {
            sub = Some(a);
            break;
        }
        leading.push(a);
    }
    match sub {
        Some(sub) => {
            out.extend(leading);
            out.push(sub);
            out.extend(flags);
        }
        None => {
            // Globals are accepted after the sub-command too.
            out.push(command.ok_or("no sub-command given")?);
            out.extend(flags);
            out.extend(leading);
        }
    }
    out.extend(rest);
    Ok(out)
}

/// Entry point: returns the process exit code (2 for argument errors, 1 for
/// numerical failures or failed checks).
pub fn run(args: Vec<String>) -> i32 {
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let table = match execute(&cli.command) {
        Ok(t) => t,
        Err(e @ Error::InvalidArgument(_)) => {
            eprintln!("error: {e}");
            return 2;
        }
        Err(e) => {
            eprintln!("error: {e}\nparameters: {:?}", cli.command);
            return 1;
        }
    };
    let text = match cli.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Plot => table.to_svg(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return 1;
    }
    if table.failed {
        1
    } else {
        0
    }
}
