//! Weighted multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

/// Terms sorted in descending monomial order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, E)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Wraps terms that are already canonical for some ring.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, E)>) -> Self {
        Polynomial { terms }
    }
}

/// The ambient weighted polynomial ring `k[x_1, ..., x_n]`.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, names: Vec<String>, weights: Vec<u32>, order: MonomialOrder) -> Self {
        assert_eq!(names.len(), weights.len());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        PolyRing {
            field,
            names,
            weights,
            order,
        }
    }

    /// Standard-graded ring on the given variable names.
    pub fn standard(field: F, names: &[&str]) -> Self {
        Self::new(
            field,
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
            MonomialOrder::default(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same ring with one extra variable appended.
    pub fn with_extra_variable(&self, name: &str, weight: u32) -> Self {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut weights = self.weights.clone();
        weights.push(weight);
        Self::new(self.field.clone(), names, weights, self.order)
    }

    /// Embeds a polynomial of a ring with fewer variables (new exponents are zero).
    pub fn embed(&self, p: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let n = self.nvars();
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(n, 0);
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        self.from_terms(terms)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, &self.weights)
    }

    #[inline]
    pub fn degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    pub fn zero(&self) -> Polynomial<F::Elem> {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F::Elem> {
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn var(&self, i: usize) -> Polynomial<F::Elem> {
        self.monomial(Monomial::var(self.nvars(), i), self.field.one())
    }

    pub fn var_by_name(&self, name: &str) -> Option<Polynomial<F::Elem>> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.var(i))
    }

    pub fn monomial(&self, m: Monomial, c: F::Elem) -> Polynomial<F::Elem> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    /// Canonicalizes arbitrary terms: sorts, combines, drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F::Elem> {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => {
                    last.1 = self.field.add(&last.1, &c);
                }
                _ => {
                    if let Some(last) = out.last() {
                        if self.field.is_zero(&last.1) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if self.field.is_zero(&last.1) {
                out.pop();
            }
        }
        Polynomial { terms: out }
    }

    fn merge(
        &self,
        a: &Polynomial<F::Elem>,
        b: &Polynomial<F::Elem>,
        negate_b: bool,
    ) -> Polynomial<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match self.cmp(&a.terms[i].0, &b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_b {
                        f.neg(&b.terms[j].1)
                    } else {
                        b.terms[j].1.clone()
                    };
                    out.push((b.terms[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        f.sub(&a.terms[i].1, &b.terms[j].1)
                    } else {
                        f.add(&a.terms[i].1, &b.terms[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        for t in &b.terms[j..] {
            let c = if negate_b { f.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, a: &Polynomial<F::Elem>, b: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.merge(a, b, false)
    }

    pub fn sub(&self, a: &Polynomial<F::Elem>, b: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.merge(a, b, true)
    }

    pub fn neg(&self, a: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Polynomial<F::Elem>, c: &F::Elem) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), self.field.mul(x, c)))
                .collect(),
        }
    }

    /// `c * m * a`; monomial orders are multiplicative so the order is kept.
    pub fn mul_term(
        &self,
        a: &Polynomial<F::Elem>,
        m: &Monomial,
        c: &F::Elem,
    ) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(t, x)| (t.mul(m), self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Polynomial<F::Elem>, b: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = self.field.mul(ca, cb);
                acc.entry(m)
                    .and_modify(|x| *x = self.field.add(x, &c))
                    .or_insert(c);
            }
        }
        self.from_terms(acc.into_iter().collect())
    }

    /// Product with an ambient-ring check on both operands.
    pub fn try_mul(
        &self,
        a: &Polynomial<F::Elem>,
        b: &Polynomial<F::Elem>,
    ) -> Result<Polynomial<F::Elem>> {
        self.check_arity(a)?;
        self.check_arity(b)?;
        Ok(self.mul(a, b))
    }

    pub fn check_arity(&self, a: &Polynomial<F::Elem>) -> Result<()> {
        if a.terms.iter().any(|(m, _)| m.nvars() != self.nvars()) {
            Err(AlgebraError::RingMismatch)
        } else {
            Ok(())
        }
    }

    pub fn pow(&self, a: &Polynomial<F::Elem>, e: u32) -> Polynomial<F::Elem> {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    pub fn is_homogeneous(&self, a: &Polynomial<F::Elem>) -> bool {
        match a.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = self.degree(m0);
                a.terms.iter().all(|(m, _)| self.degree(m) == d)
            }
        }
    }

    /// Common weighted degree of a nonzero homogeneous polynomial.
    pub fn weighted_degree(&self, a: &Polynomial<F::Elem>) -> Result<i64> {
        let (m0, _) = a.terms.first().ok_or(AlgebraError::ZeroPolynomial)?;
        if !self.is_homogeneous(a) {
            return Err(AlgebraError::NonHomogeneous(self.format(a)));
        }
        Ok(self.degree(m0))
    }

    pub fn is_unit(&self, a: &Polynomial<F::Elem>) -> bool {
        a.terms.len() == 1 && a.terms[0].0.is_one()
    }

    /// Scaled so the leading coefficient is one.
    pub fn monic(&self, a: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        match a.terms.first() {
            None => Polynomial::zero(),
            Some((_, c)) if self.field.is_one(c) => a.clone(),
            Some((_, c)) => self.scale(a, &self.field.inv(c)),
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format(&self, a: &Polynomial<F::Elem>) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut s = String::new();
        for (k, (m, c)) in a.terms.iter().enumerate() {
            let mut cs = f.format(c);
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push(if negative { '-' } else { '+' });
            }
            if m.is_one() {
                s.push_str(&cs);
            } else if cs == "1" {
                s.push_str(&self.format_monomial(m));
            } else {
                s.push_str(&cs);
                s.push('*');
                s.push_str(&self.format_monomial(m));
            }
        }
        s
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<F::Elem>> {
        self.parse_at_line(text, 1)
    }

    pub(crate) fn parse_at_line(&self, text: &str, line: usize) -> Result<Polynomial<F::Elem>> {
        let tokens = tokenize(text, line)?;
        let mut parser = Parser {
            ring: self,
            tokens,
            pos: 0,
            line,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i64),
    Name(String),
    Sym(char),
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<i64>().map_err(|_| AlgebraError::Syntax {
                line,
                msg: format!("integer `{s}` out of range"),
            })?;
            out.push(Token::Int(v));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Name(chars[start..i].iter().collect()));
        } else if "+-*^/()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(AlgebraError::Syntax {
                line,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a PolyRing<F>,
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Syntax {
            line: self.line,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Polynomial<F::Elem>> {
        let mut acc = self.ring.zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(Token::Sym('+')) => {
                    self.pos += 1;
                    1
                }
                Some(Token::Sym('-')) => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 {
                self.ring.add(&acc, &t)
            } else {
                self.ring.sub(&acc, &t)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<F::Elem>> {
        let mut acc = self.factor()?;
        while let Some(Token::Sym('*')) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F::Elem>> {
        let base = match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let field = self.ring.field();
                let mut c = field.from_i64(n);
                if let Some(Token::Sym('/')) = self.peek() {
                    self.pos += 1;
                    match self.tokens.get(self.pos).cloned() {
                        Some(Token::Int(d)) if !field.is_zero(&field.from_i64(d)) => {
                            self.pos += 1;
                            c = field.div(&c, &field.from_i64(d));
                        }
                        _ => return Err(self.error("expected a nonzero integer denominator")),
                    }
                }
                self.ring.constant(c)
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                self.ring
                    .var_by_name(&name)
                    .ok_or_else(|| self.error(&format!("unknown variable `{name}`")))?
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Token::Sym(')')) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                e
            }
            _ => return Err(self.error("expected a number, variable or `(`")),
        };
        if let Some(Token::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Int(e)) if (0..=u16::MAX as i64).contains(&e) => {
                    self.pos += 1;
                    return Ok(self.ring.pow(&base, e as u32));
                }
                _ => return Err(self.error("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};

    #[test]
    fn difference_of_squares_over_q() {
        let r = PolyRing::standard(RationalField, &["x", "y"]);
        let p = r.parse("x+y").unwrap();
        let q = r.parse("x-y").unwrap();
        assert_eq!(r.mul(&p, &q), r.parse("x^2-y^2").unwrap());
        assert_eq!(r.format(&r.mul(&p, &q)), "x^2-y^2");
    }

    #[test]
    fn square_over_gf2() {
        let r = PolyRing::standard(PrimeField::new(2).unwrap(), &["x"]);
        let x = r.var(0);
        assert_eq!(r.format(&r.mul(&x, &x)), "x^2");
        // (x+1)^2 = x^2 + 1 in characteristic two
        let p = r.parse("x+1").unwrap();
        assert_eq!(r.mul(&p, &p), r.parse("x^2+1").unwrap());
    }

    #[test]
    fn zero_annihilates() {
        let r = PolyRing::standard(RationalField, &["x", "y"]);
        let p = r.parse("3*x*y-7").unwrap();
        assert!(r.mul(&r.zero(), &p).is_zero());
    }

    #[test]
    fn weighted_degrees() {
        let r = PolyRing::standard(RationalField, &["x", "y", "z"]);
        assert_eq!(r.weighted_degree(&r.parse("x^2+y*z").unwrap()), Ok(2));
        assert!(matches!(
            r.weighted_degree(&r.parse("x^2+y").unwrap()),
            Err(AlgebraError::NonHomogeneous(_))
        ));
        assert_eq!(
            r.weighted_degree(&r.zero()),
            Err(AlgebraError::ZeroPolynomial)
        );
        let w = PolyRing::new(
            RationalField,
            vec!["x".into()],
            vec![2],
            MonomialOrder::default(),
        );
        assert_eq!(w.weighted_degree(&w.parse("x^3").unwrap()), Ok(6));
    }

    #[test]
    fn parse_errors_carry_line() {
        let r = PolyRing::standard(RationalField, &["x"]);
        let e = r.parse_at_line("x + q", 4).unwrap_err();
        assert!(matches!(e, AlgebraError::Syntax { line: 4, .. }));
    }

    #[test]
    fn rational_coefficients_roundtrip() {
        let r = PolyRing::standard(RationalField, &["x", "y"]);
        let p = r.parse("1/2*x-3/4*y^2+(x-y)*2").unwrap();
        assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
    }

    #[test]
    fn mismatched_rings_rejected() {
        let r2 = PolyRing::standard(RationalField, &["x", "y"]);
        let r3 = PolyRing::standard(RationalField, &["x", "y", "z"]);
        let p = r3.parse("x*z").unwrap();
        assert_eq!(r2.try_mul(&r2.var(0), &p), Err(AlgebraError::RingMismatch));
    }
}
