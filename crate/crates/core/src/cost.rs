//! Hamming-symmetric cost functions `f(w)`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostSource {
    Canonical,
    Table,
}

/// Exact integer cost `f(w)` for `w = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricCost {
    n: usize,
    values: Vec<i64>,
    q: Option<i64>,
    source: CostSource,
}

impl SymmetricCost {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn q(&self) -> Option<i64> {
        self.q
    }

    pub fn source(&self) -> CostSource {
        self.source
    }

    pub fn value(&self, w: usize) -> i64 {
        self.values[w]
    }

    /// Writes `w,f` with one row per weight.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "w,f")?;
        for (w, f) in self.values.iter().enumerate() {
            writeln!(out, "{w},{f}")?;
        }
        Ok(())
    }

    /// Reads the `w,f` format; rows must list `w = 0, 1, ...` in order.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut values = Vec::new();
        let mut header_seen = false;
        for (lineno, line) in input.lines().enumerate() {
            let line = line.map_err(|e| Error::InvalidArgument(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                if line != "w,f" {
                    return Err(Error::InvalidArgument(format!("expected header `w,f`, got `{line}`")));
                }
                header_seen = true;
                continue;
            }
            let bad = || Error::InvalidArgument(format!("malformed cost row {}: `{line}`", lineno + 1));
            let (w, f) = line.split_once(',').ok_or_else(bad)?;
            let w: usize = w.trim().parse().map_err(|_| bad())?;
            let f: i64 = f.trim().parse().map_err(|_| bad())?;
            if w != values.len() {
                return Err(bad());
            }
            values.push(f);
        }
        cost_from_table(&values)
    }
}

/// Closed form of the symmetrized 3-SAT cost:
/// `f(w) = (q/2) w (n-w)(n-w-1) + (1/2) w(w-1)(n-w) + (1/6) w(w-1)(w-2)`.
pub fn canonical_cost(n: usize, q: i64) -> Result<SymmetricCost> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("canonical cost needs n >= 3, got {n}")));
    }
    if q < 3 {
        return Err(Error::InvalidArgument(format!("canonical cost needs q >= 3, got {q}")));
    }
    let ni = n as i64;
    let values = (0..=ni)
        .map(|w| {
            // each product is even (resp. divisible by 6), so the divisions are exact
            q * (w * (ni - w) * (ni - w - 1) / 2)
                + w * (w - 1) * (ni - w) / 2
                + w * (w - 1) * (w - 2) / 6
        })
        .collect();
    Ok(SymmetricCost { n, values, q: Some(q), source: CostSource::Canonical })
}

/// Clause weight of a triple containing `ones` set bits.
fn clause(ones: u32, q: i64) -> i64 {
    match ones {
        0 => 0,
        1 => q,
        _ => 1,
    }
}

/// Direct sum over all triples `i < j < k` of `c(z_i + z_j + z_k)`.
pub fn bruteforce_cost(bits: &[bool], q: i64) -> Result<i64> {
    let n = bits.len();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("bitstring needs length >= 3, got {n}")));
    }
    let mut total = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let ones = bits[i] as u32 + bits[j] as u32 + bits[k] as u32;
                total += clause(ones, q);
            }
        }
    }
    Ok(total)
}

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidArgument(format!("not a bit: {c:?}"))),
        })
        .collect()
}

/// `h(u) = 4 q u (1-u)^2 + 4 u^2 (1-u) + (4/3) u^3`.
pub fn scaled_cost_h(u: f64, q: i64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::InvalidArgument(format!("u = {u} outside [0, 1]")));
    }
    Ok(h_unchecked(u, q as f64))
}

pub(crate) fn h_unchecked(u: f64, q: f64) -> f64 {
    let v = 1.0 - u;
    4.0 * q * u * v * v + 4.0 * u * u * v + 4.0 / 3.0 * u * u * u
}

/// Exact rational `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.abs(), den.abs()).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Self { num: sign * num / g, den: sign * den / g }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `h` written as a cubic in `s = S_z / l`, where `u = (1 - s)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaledCost {
    pub q: i64,
    /// `c0 + c1 s + c2 s^2 + c3 s^3`.
    pub coefficients: [Rational; 4],
}

impl ScaledCost {
    pub fn eval(&self, s: f64) -> f64 {
        let [c0, c1, c2, c3] = self.coefficients.map(Rational::to_f64);
        c0 + s * (c1 + s * (c2 + s * c3))
    }

    pub fn coefficients_f64(&self) -> [f64; 4] {
        self.coefficients.map(Rational::to_f64)
    }
}

/// `c0 = (q + 4/3)/2, c1 = (q - 2)/2, c2 = -q/2, c3 = -(q - 2/3)/2`.
pub fn h_cubic_in_s(q: i64) -> Result<ScaledCost> {
    if q < 3 {
        return Err(Error::InvalidArgument(format!("q must be >= 3, got {q}")));
    }
    Ok(ScaledCost {
        q,
        coefficients: [
            Rational::new(3 * q + 4, 6),
            Rational::new(q - 2, 2),
            Rational::new(-q, 2),
            Rational::new(-(3 * q - 2), 6),
        ],
    })
}

/// Wraps a user-supplied table `f(0..=n)`.
pub fn cost_from_table(values: &[i64]) -> Result<SymmetricCost> {
    if values.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "cost table needs at least 2 entries, got {}",
            values.len()
        )));
    }
    Ok(SymmetricCost {
        n: values.len() - 1,
        values: values.to_vec(),
        q: None,
        source: CostSource::Table,
    })
}

impl SymmetricCost {
    /// Equality of the `f(w)` tables, ignoring provenance.
    pub fn same_values(&self, other: &SymmetricCost) -> bool {
        self.values == other.values
    }
}
