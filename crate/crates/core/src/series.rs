//! Truncated integer power series, Poincaré series and deviations.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::quotient::QuotientRing;
use crate::resolution::{minimal_resolution, ModuleInput};

/// `c_0 + c_1 t + … + c_D t^D`, exact through degree `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedPowerSeries {
    coeffs: Vec<i64>,
}

impl TruncatedPowerSeries {
    /// Pads or truncates `coeffs` to length `order + 1`.
    pub fn new(mut coeffs: Vec<i64>, order: usize) -> Self {
        coeffs.resize(order + 1, 0);
        TruncatedPowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> i64 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    /// `(1 + sign · t^k)^e` for `e ≥ 0`, or its inverse for `e < 0`.
    pub fn binomial_power(k: usize, sign: i64, e: i64, order: usize) -> Self {
        let mut base = vec![0i64; order + 1];
        base[0] = 1;
        if k <= order {
            base[k] += sign;
        }
        let base = Self::new(base, order);
        if e >= 0 {
            base.pow(e as u64)
        } else {
            base.inverse().expect("unit constant term").pow((-e) as u64)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.order().min(other.order());
        Self::new(
            (0..=d).map(|n| self.coeffs[n] + other.coeffs[n]).collect(),
            d,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.order().min(other.order());
        Self::new(
            (0..=d).map(|n| self.coeffs[n] - other.coeffs[n]).collect(),
            d,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.order().min(other.order());
        let mut out = vec![0i64; d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, d)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse, defined when the constant term is `±1`.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs[0];
        if c0 != 1 && c0 != -1 {
            return None;
        }
        let d = self.order();
        let mut out = vec![0i64; d + 1];
        out[0] = c0;
        for n in 1..=d {
            let s: i64 = (1..=n).map(|i| self.coeffs[i] * out[n - i]).sum();
            out[n] = -s * c0;
        }
        Some(Self::new(out, d))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.mul(&inv))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order()))
    }
}

impl fmt::Display for TruncatedPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (n, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match n {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{n}"),
            };
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            if parts.is_empty() {
                parts.push(if c < 0 { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c < 0 { "-" } else { "+" }));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(t^{})", parts.join(" "), self.order() + 1)
    }
}

/// Deviations `ε_1 … ε_D`; `values[n - 1] = ε_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeviationVector {
    pub values: Vec<i64>,
}

impl DeviationVector {
    /// `ε_n`, zero outside the computed range.
    pub fn get(&self, n: usize) -> i64 {
        if n == 0 {
            0
        } else {
            self.values.get(n - 1).copied().unwrap_or(0)
        }
    }

    pub fn bound(&self) -> usize {
        self.values.len()
    }
}

/// `∏ (1 + t^{2i-1})^{ε_{2i-1}} / ∏ (1 - t^{2i})^{ε_{2i}}` through degree `order`.
pub fn product_expansion(dev: &DeviationVector, order: usize) -> TruncatedPowerSeries {
    let mut acc = TruncatedPowerSeries::one(order);
    for (i, &e) in dev.values.iter().enumerate() {
        let n = i + 1;
        if e == 0 || n > order {
            continue;
        }
        let factor = if n % 2 == 1 {
            TruncatedPowerSeries::binomial_power(n, 1, e, order)
        } else {
            TruncatedPowerSeries::binomial_power(n, -1, -e, order)
        };
        acc = acc.mul(&factor);
    }
    acc
}

/// Inverts the product formula coefficient by coefficient.
pub fn deviations_from_series(p: &TruncatedPowerSeries) -> Result<DeviationVector> {
    let d = p.order();
    let mut dev = DeviationVector {
        values: Vec::with_capacity(d),
    };
    for n in 1..=d {
        let q = product_expansion(&dev, n);
        let e = p.coeff(n) - q.coeff(n);
        if e < 0 {
            return Err(AlgebraError::NegativeDeviation(n));
        }
        dev.values.push(e);
    }
    Ok(dev)
}

/// `Σ_n rank Tor_n(k, N) t^n` through degree `bound`.
pub fn poincare_series<F: Field>(
    ring: &QuotientRing<F>,
    module: &ModuleInput<F::Elem>,
    bound: usize,
) -> Result<TruncatedPowerSeries> {
    let res = minimal_resolution(ring, module, bound, None)?;
    let b: Vec<i64> = res.betti_numbers().into_iter().map(|x| x as i64).collect();
    Ok(TruncatedPowerSeries::new(b, bound))
}

/// Deviations `ε_1 … ε_D` of `R`, read off `P^R_k`.
pub fn deviations<F: Field>(ring: &QuotientRing<F>, bound: usize) -> Result<DeviationVector> {
    if bound == 0 {
        return Err(AlgebraError::InvalidArgument(
            "deviation bound must be at least 1".into(),
        ));
    }
    deviations_from_series(&poincare_series(ring, &ModuleInput::Residue, bound)?)
}

/// Two-variable series `Σ c_{n,j} s^j t^n`, exact for `n ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BivariateSeries {
    #[serde(serialize_with = "crate::resolution::serialize_grid")]
    pub coeffs: BTreeMap<(usize, i64), i64>,
    pub bound: usize,
}

impl BivariateSeries {
    pub fn coeff(&self, n: usize, j: i64) -> i64 {
        self.coeffs.get(&(n, j)).copied().unwrap_or(0)
    }

    /// Coefficientwise sum over `s`.
    pub fn at_s_one(&self) -> TruncatedPowerSeries {
        let mut c = vec![0i64; self.bound + 1];
        for (&(n, _), &x) in &self.coeffs {
            c[n] += x;
        }
        TruncatedPowerSeries::new(c, self.bound)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<(usize, i64), i64> = BTreeMap::new();
        for (&(n1, j1), &a) in &self.coeffs {
            for (&(n2, j2), &b) in &other.coeffs {
                if n1 + n2 <= self.bound {
                    *out.entry((n1 + n2, j1 + j2)).or_insert(0) += a * b;
                }
            }
        }
        out.retain(|_, x| *x != 0);
        BivariateSeries {
            coeffs: out,
            bound: self.bound,
        }
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&(n, j), &c) in &self.coeffs {
            let mut m = Vec::new();
            match j {
                0 => {}
                1 => m.push("s".to_string()),
                _ => m.push(format!("s^{j}")),
            }
            match n {
                0 => {}
                1 => m.push("t".to_string()),
                _ => m.push(format!("t^{n}")),
            }
            let mono = m.join("*");
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (-1, false) => format!("-{mono}"),
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}

/// `∏ (1 + s^{a_u} t) / ∏ (1 - s^{z_v} t^2)` through `t`-degree `bound`.
pub fn graded_tate_series(deg_a: &[i64], deg_z: &[i64], bound: usize) -> BivariateSeries {
    let mut acc = BivariateSeries {
        coeffs: BTreeMap::from([((0, 0), 1)]),
        bound,
    };
    for &a in deg_a {
        let f = BivariateSeries {
            coeffs: BTreeMap::from([((0, 0), 1), ((1, a), 1)]),
            bound,
        };
        acc = acc.mul(&f);
    }
    for &z in deg_z {
        let coeffs = (0..=bound / 2)
            .map(|k| ((2 * k, k as i64 * z), 1))
            .collect();
        acc = acc.mul(&BivariateSeries { coeffs, bound });
    }
    acc
}
