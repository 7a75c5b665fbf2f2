//! Exact Hilbert series as rational functions `N(s) / ∏ (1 - s^{w_i})`.

use std::fmt;

use serde::Serialize;

use crate::monomial::Monomial;

/// `s^low · (n_0 + n_1 s + ...) / ∏ (1 - s^{w_i})`.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertSeries {
    low: i64,
    numerator: Vec<i64>,
    weights: Vec<u32>,
}

fn trim(low: &mut i64, c: &mut Vec<i64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
    let lead = c.iter().take_while(|&&x| x == 0).count();
    if lead == c.len() {
        c.clear();
        *low = 0;
    } else if lead > 0 {
        c.drain(..lead);
        *low += lead as i64;
    }
}

fn mul_coeffs(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus(w: u32) -> Vec<i64> {
    let mut v = vec![0i64; w as usize + 1];
    v[0] = 1;
    v[w as usize] -= 1;
    v
}

/// Exact quotient by `1 - s^w`, if it exists.
fn div_one_minus(a: &[i64], w: u32) -> Option<Vec<i64>> {
    let w = w as usize;
    if a.len() <= w {
        return if a.iter().all(|&x| x == 0) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let n = a.len() - w;
    let mut q = vec![0i64; n];
    for i in 0..a.len() {
        let prev = if i >= w { q[i - w] } else { 0 };
        let v = a[i] + prev;
        if i < n {
            q[i] = v;
        } else if v != 0 {
            return None;
        }
    }
    Some(q)
}

/// Multiset difference `a \ b` for sorted weight lists.
fn multiset_minus(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut b = b.to_vec();
    for &x in a {
        if let Some(pos) = b.iter().position(|&y| y == x) {
            b.remove(pos);
        } else {
            out.push(x);
        }
    }
    out
}

impl HilbertSeries {
    pub fn new(low: i64, numerator: Vec<i64>, mut weights: Vec<u32>) -> Self {
        let mut low = low;
        let mut numerator = numerator;
        trim(&mut low, &mut numerator);
        weights.sort_unstable();
        HilbertSeries {
            low,
            numerator,
            weights,
        }
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new(), Vec::new())
    }

    /// Series of a free module `⊕ P(-d)` over a polynomial ring with the given weights.
    pub fn free(shifts: &[i64], weights: &[u32]) -> Self {
        let mut acc = Self::new(0, Vec::new(), weights.to_vec());
        for &d in shifts {
            acc = acc.add(&Self::new(d, vec![1], weights.to_vec()));
        }
        acc
    }

    /// A finite series `Σ c_i s^{low + i}`.
    pub fn polynomial(low: i64, coeffs: Vec<i64>) -> Self {
        Self::new(low, coeffs, Vec::new())
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    fn lift_to(&self, weights: &[u32]) -> (i64, Vec<i64>) {
        let mut num = self.numerator.clone();
        for w in multiset_minus(weights, &self.weights) {
            num = mul_coeffs(&num, &one_minus(w));
        }
        (self.low, num)
    }

    fn common_weights(&self, other: &Self) -> Vec<u32> {
        let mut all = self.weights.clone();
        all.extend(multiset_minus(&other.weights, &self.weights));
        all.sort_unstable();
        all
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let weights = self.common_weights(other);
        let (la, a) = self.lift_to(&weights);
        let (lb, b) = other.lift_to(&weights);
        if a.is_empty() {
            let b = b.into_iter().map(|x| sign * x).collect();
            return Self::new(lb, b, weights).simplified();
        }
        if b.is_empty() {
            return Self::new(la, a, weights).simplified();
        }
        let low = la.min(lb);
        let high = (la + a.len() as i64).max(lb + b.len() as i64);
        let mut out = vec![0i64; (high - low) as usize];
        for (i, x) in a.iter().enumerate() {
            out[(la - low) as usize + i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[(lb - low) as usize + i] += sign * x;
        }
        Self::new(low, out, weights).simplified()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        Self::new(
            self.low + other.low,
            mul_coeffs(&self.numerator, &other.numerator),
            weights,
        )
        .simplified()
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(
            self.low,
            self.numerator.iter().map(|x| x * c).collect(),
            self.weights.clone(),
        )
    }

    /// Multiplication by `s^d`.
    pub fn shift(&self, d: i64) -> Self {
        let mut h = self.clone();
        if !h.is_zero() {
            h.low += d;
        }
        h
    }

    /// Multiplication by `1 - s^w`.
    pub fn mul_one_minus(&self, w: u32) -> Self {
        if let Some(pos) = self.weights.iter().position(|&x| x == w) {
            let mut h = self.clone();
            h.weights.remove(pos);
            return h;
        }
        Self::new(
            self.low,
            mul_coeffs(&self.numerator, &one_minus(w)),
            self.weights.clone(),
        )
    }

    /// Division by `1 - s^w`.
    pub fn div_one_minus(&self, w: u32) -> Self {
        let mut weights = self.weights.clone();
        weights.push(w);
        Self::new(self.low, self.numerator.clone(), weights).simplified()
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn simplified(mut self) -> Self {
        let mut i = 0;
        while i < self.weights.len() {
            match div_one_minus(&self.numerator, self.weights[i]) {
                Some(q) if !self.numerator.is_empty() => {
                    self.numerator = q;
                    self.weights.remove(i);
                }
                _ => i += 1,
            }
        }
        if self.numerator.is_empty() {
            self.weights.clear();
            self.low = 0;
        }
        trim(&mut self.low, &mut self.numerator);
        self
    }

    /// Coefficients of `s^from ..= s^to` in the power series expansion.
    pub fn expansion(&self, from: i64, to: i64) -> Vec<i64> {
        if to < from {
            return Vec::new();
        }
        let start = from.min(self.low);
        let len = (to - start + 1) as usize;
        let mut c = vec![0i64; len];
        for (i, x) in self.numerator.iter().enumerate() {
            let idx = self.low - start + i as i64;
            if idx >= 0 && (idx as usize) < len {
                c[idx as usize] += x;
            }
        }
        for &w in &self.weights {
            let w = w as usize;
            for i in w..len {
                c[i] += c[i - w];
            }
        }
        c[(from - start) as usize..].to_vec()
    }

    pub fn coefficient(&self, d: i64) -> i64 {
        self.expansion(d, d)[0]
    }

    /// Order of the pole at `s = 1`; `None` for the zero series.
    pub fn pole_order(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut num = self.numerator.clone();
        let mut mult = 0usize;
        while num.iter().sum::<i64>() == 0 {
            num = div_one_minus(&num, 1).expect("root at one divides");
            mult += 1;
        }
        Some(self.weights.len().saturating_sub(mult))
    }

    /// Whether the series is a polynomial (finite length module).
    pub fn is_polynomial(&self) -> bool {
        self.clone().simplified().weights.is_empty()
    }

    /// Largest degree with a nonzero coefficient, for polynomial series.
    pub fn top_degree(&self) -> Option<i64> {
        let s = self.clone().simplified();
        if !s.weights.is_empty() || s.is_zero() {
            return None;
        }
        Some(s.low + s.numerator.len() as i64 - 1)
    }

    /// Value at `s = 1` when the series is a polynomial (total dimension).
    pub fn total_dimension(&self) -> Option<i64> {
        let s = self.clone().simplified();
        if s.weights.is_empty() {
            Some(s.numerator.iter().sum())
        } else {
            None
        }
    }
}

impl PartialEq for HilbertSeries {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for HilbertSeries {}

fn format_poly(low: i64, c: &[i64]) -> String {
    let mut s = String::new();
    for (i, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let e = low + i as i64;
        let mag = x.abs();
        if s.is_empty() {
            if x < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if x < 0 { " - " } else { " + " });
        }
        let var = match e {
            0 => String::new(),
            1 => "s".to_string(),
            _ => format!("s^{e}"),
        };
        if var.is_empty() {
            s.push_str(&mag.to_string());
        } else if mag == 1 {
            s.push_str(&var);
        } else {
            s.push_str(&format!("{mag}*{var}"));
        }
    }
    if s.is_empty() {
        "0".to_string()
    } else {
        s
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_poly(self.low, &self.numerator);
        if self.weights.is_empty() || self.is_zero() {
            return f.write_str(&num);
        }
        let mut den = Vec::new();
        let mut i = 0;
        while i < self.weights.len() {
            let w = self.weights[i];
            let k = self.weights[i..].iter().take_while(|&&x| x == w).count();
            let base = if w == 1 {
                "(1 - s)".to_string()
            } else {
                format!("(1 - s^{w})")
            };
            den.push(if k == 1 { base } else { format!("{base}^{k}") });
            i += k;
        }
        write!(f, "({num}) / {}", den.join(""))
    }
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by_key(|m| m.total_degree());
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `N(s)` with `HS(P / (gens)) = N(s) / ∏ (1 - s^{w_i})`.
pub fn monomial_ideal_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i64> {
    let gens = minimalize(gens);
    numerator_rec(gens, weights)
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let n = weights.len();
    let mut counts = vec![0usize; n];
    for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let (var, &most) = counts
        .iter()
        .enumerate()
        .max_by_key(|&(i, &c)| (c, std::cmp::Reverse(i)))
        .unwrap();
    if most <= 1 {
        // pairwise coprime generators form a regular sequence
        let mut num = vec![1i64];
        for g in &gens {
            num = mul_coeffs(&num, &one_minus(g.weighted_degree(weights) as u32));
        }
        return num;
    }
    let e = gens
        .iter()
        .map(|g| g.exponent(var))
        .filter(|&e| e > 0)
        .min()
        .unwrap();
    let mut pivot = Monomial::one(n);
    pivot.set_exponent(var, e);
    let pivot_deg = pivot.weighted_degree(weights) as usize;

    let mut sum_gens: Vec<Monomial> = gens.iter().filter(|g| !pivot.divides(g)).cloned().collect();
    sum_gens.push(pivot.clone());
    let colon_gens: Vec<Monomial> = gens.iter().map(|g| g.colon(&pivot)).collect();

    let a = numerator_rec(minimalize(&sum_gens), weights);
    let b = numerator_rec(minimalize(&colon_gens), weights);
    let mut out = vec![0i64; a.len().max(b.len() + pivot_deg)];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i + pivot_deg] += x;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn polynomial_ring_in_two_variables() {
        let h = HilbertSeries::new(0, monomial_ideal_numerator(&[], &[1, 1]), vec![1, 1]);
        assert_eq!(h.expansion(0, 4), vec![1, 2, 3, 4, 5]);
        assert_eq!(h.pole_order(), Some(2));
    }

    #[test]
    fn xy_y2_counts() {
        let num = monomial_ideal_numerator(&[m(&[1, 1]), m(&[0, 2])], &[1, 1]);
        let h = HilbertSeries::new(0, num, vec![1, 1]);
        assert_eq!(h.expansion(0, 5), vec![1, 2, 1, 1, 1, 1]);
        let expected = HilbertSeries::new(0, vec![1, 1, -1], vec![1]);
        assert_eq!(h, expected);
        assert_eq!(h.pole_order(), Some(1));
    }

    #[test]
    fn brute_force_agreement() {
        let gens = [m(&[2, 1, 0]), m(&[0, 3, 1]), m(&[1, 0, 2]), m(&[1, 1, 1])];
        let weights = [1, 2, 1];
        let h = HilbertSeries::new(
            0,
            monomial_ideal_numerator(&gens, &weights),
            weights.to_vec(),
        );
        for d in 0..12 {
            let count = Monomial::all_of_degree(&weights, d)
                .iter()
                .filter(|x| !gens.iter().any(|g| g.divides(x)))
                .count() as i64;
            assert_eq!(h.coefficient(d), count, "degree {d}");
        }
    }

    #[test]
    fn arithmetic() {
        let a = HilbertSeries::new(0, vec![1], vec![1]);
        let b = HilbertSeries::new(1, vec![1], vec![1]);
        assert_eq!(a.sub(&b), HilbertSeries::polynomial(0, vec![1]));
        assert_eq!(a.mul_one_minus(1), HilbertSeries::polynomial(0, vec![1]));
        assert_eq!(a.shift(2).expansion(0, 3), vec![0, 0, 1, 1]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(
            HilbertSeries::polynomial(0, vec![1, 4, 3]).top_degree(),
            Some(2)
        );
        assert_eq!(
            format!("{}", HilbertSeries::new(0, vec![1, 1, -1], vec![1])),
            "(1 + s - s^2) / (1 - s)"
        );
    }
}
