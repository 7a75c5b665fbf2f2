//! Graded ring presentations `k[x_1..x_n] / I_R` and their text format.
//!
//! ```text
//! # comment
//! field GF 32003
//! vars w x y:2 z
//! order grevlex          (optional; grevlex or lex)
//! ideal
//!   w^2, w*x-y,
//!   z^2
//! end
//! ```

use std::collections::HashSet;

use num_rational::BigRational;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldSpec, PrimeField, RationalField};
use crate::monomial::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRingPresentation {
    pub field: FieldSpec,
    pub variables: Vec<(String, u32)>,
    /// Generators of `I_R`; coefficients are rational representatives
    /// (symmetric residues over a prime field).
    pub defining_ideal: Vec<Polynomial<BigRational>>,
    pub order: MonomialOrder,
}

impl GradedRingPresentation {
    /// Validates the parts and reduces the generators into the field.
    pub fn new(
        field: FieldSpec,
        variables: Vec<(String, u32)>,
        generators: &[&str],
        order: MonomialOrder,
    ) -> Result<Self> {
        let text = generators.join(",\n");
        build(field, variables, order, &[(1, text)])
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.0.clone()).collect()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.variables.iter().map(|v| v.1).collect()
    }

    pub fn poly_ring<F: Field>(&self, field: F) -> PolyRing<F> {
        assert_eq!(
            field.spec(),
            self.field,
            "field does not match presentation"
        );
        PolyRing::new(field, self.names(), self.weights(), self.order)
    }

    pub fn generators_in<F: Field>(&self, ring: &PolyRing<F>) -> Vec<Polynomial<F::Elem>> {
        self.defining_ideal
            .iter()
            .map(|g| {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| (m.clone(), ring.field().from_rational(c)))
                    .collect();
                ring.from_terms(terms)
            })
            .collect()
    }

    /// Presentation with extra generators added to the defining ideal.
    pub fn with_extra_relations(&self, relations: &[String]) -> Result<Self> {
        let mut gens: Vec<String> = self.generator_strings();
        gens.extend(relations.iter().cloned());
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        Self::new(self.field, self.variables.clone(), &refs, self.order)
    }

    pub fn generator_strings(&self) -> Vec<String> {
        let carrier = self.rational_carrier();
        self.defining_ideal
            .iter()
            .map(|g| carrier.format(g))
            .collect()
    }

    fn rational_carrier(&self) -> PolyRing<RationalField> {
        PolyRing::new(RationalField, self.names(), self.weights(), self.order)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("field {}\nvars", self.field);
        for (name, w) in &self.variables {
            if *w == 1 {
                s.push_str(&format!(" {name}"));
            } else {
                s.push_str(&format!(" {name}:{w}"));
            }
        }
        s.push('\n');
        if self.order != MonomialOrder::default() {
            s.push_str(&format!("order {}\n", self.order.name()));
        }
        s.push_str("ideal\n");
        let gens = self.generator_strings();
        for (i, g) in gens.iter().enumerate() {
            s.push_str("  ");
            s.push_str(g);
            if i + 1 < gens.len() {
                s.push(',');
            }
            s.push('\n');
        }
        s.push_str("end\n");
        s
    }
}

impl std::fmt::Display for GradedRingPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

pub fn parse_ring_spec(text: &str) -> Result<GradedRingPresentation> {
    let mut field: Option<FieldSpec> = None;
    let mut variables: Option<Vec<(String, u32)>> = None;
    let mut order = MonomialOrder::default();
    let mut ideal_lines: Vec<(usize, String)> = Vec::new();
    let mut in_ideal = false;
    let mut ended = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if ended {
            return Err(syntax(line_no, "content after `end`"));
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        if in_ideal {
            if head == "end" {
                if words.next().is_some() {
                    return Err(syntax(line_no, "unexpected text after `end`"));
                }
                ended = true;
            } else {
                ideal_lines.push((line_no, line.to_string()));
            }
            continue;
        }
        match head {
            "field" => {
                if field.is_some() {
                    return Err(syntax(line_no, "duplicate `field` line"));
                }
                let rest: Vec<&str> = words.collect();
                field = Some(parse_field(&rest, line_no)?);
            }
            "vars" => {
                if field.is_none() {
                    return Err(syntax(line_no, "expected `field` before `vars`"));
                }
                if variables.is_some() {
                    return Err(syntax(line_no, "duplicate `vars` line"));
                }
                let mut vars = Vec::new();
                let mut seen = HashSet::new();
                for w in words {
                    let (name, weight) = match w.split_once(':') {
                        Some((n, wt)) => {
                            let weight = wt
                                .parse::<u32>()
                                .ok()
                                .filter(|&x| x > 0 && x <= u16::MAX as u32)
                                .ok_or_else(|| syntax(line_no, format!("invalid weight `{wt}`")))?;
                            (n, weight)
                        }
                        None => (w, 1),
                    };
                    if !valid_name(name) {
                        return Err(syntax(line_no, format!("invalid variable name `{name}`")));
                    }
                    if !seen.insert(name.to_string()) {
                        return Err(AlgebraError::DuplicateVariable(name.to_string()));
                    }
                    vars.push((name.to_string(), weight));
                }
                if vars.is_empty() {
                    return Err(syntax(line_no, "`vars` needs at least one variable"));
                }
                variables = Some(vars);
            }
            "order" => {
                order = match words.next() {
                    Some("grevlex") => MonomialOrder::WeightedGrevlex,
                    Some("lex") => MonomialOrder::WeightedLex,
                    other => {
                        return Err(syntax(
                            line_no,
                            format!("unknown monomial order `{}`", other.unwrap_or("")),
                        ))
                    }
                };
            }
            "ideal" => {
                if variables.is_none() {
                    return Err(syntax(line_no, "expected `vars` before `ideal`"));
                }
                in_ideal = true;
                let rest = line["ideal".len()..].trim();
                if !rest.is_empty() {
                    ideal_lines.push((line_no, rest.to_string()));
                }
            }
            other => return Err(syntax(line_no, format!("unexpected `{other}`"))),
        }
    }
    let field = field.ok_or_else(|| syntax(1, "missing `field` line"))?;
    let variables = variables.ok_or_else(|| syntax(1, "missing `vars` line"))?;
    if !in_ideal {
        return Err(syntax(
            text.lines().count().max(1),
            "missing `ideal` section",
        ));
    }
    build(field, variables, order, &ideal_lines)
}

fn parse_field(rest: &[&str], line: usize) -> Result<FieldSpec> {
    match rest {
        ["Q"] => Ok(FieldSpec::Rationals),
        ["GF", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| syntax(line, format!("invalid characteristic `{p}`")))?;
            if p >= (1 << 31) {
                return Err(AlgebraError::NotPrime(p));
            }
            let spec = FieldSpec::Prime(p as u32);
            spec.validate()?;
            Ok(spec)
        }
        _ => Err(syntax(line, "expected `field Q` or `field GF <p>`")),
    }
}

fn build(
    field: FieldSpec,
    variables: Vec<(String, u32)>,
    order: MonomialOrder,
    lines: &[(usize, String)],
) -> Result<GradedRingPresentation> {
    field.validate()?;
    let mut seen = HashSet::new();
    for (name, w) in &variables {
        if !valid_name(name) || *w == 0 {
            return Err(AlgebraError::InvalidArgument(format!(
                "invalid variable `{name}`"
            )));
        }
        if !seen.insert(name.clone()) {
            return Err(AlgebraError::DuplicateVariable(name.clone()));
        }
    }
    let names: Vec<String> = variables.iter().map(|v| v.0.clone()).collect();
    let weights: Vec<u32> = variables.iter().map(|v| v.1).collect();
    let defining_ideal = match field {
        FieldSpec::Prime(p) => {
            let ring = PolyRing::new(PrimeField::new(p)?, names.clone(), weights.clone(), order);
            parse_generators(&ring, lines)?
        }
        FieldSpec::Rationals => {
            let ring = PolyRing::new(RationalField, names.clone(), weights.clone(), order);
            parse_generators(&ring, lines)?
        }
    };
    Ok(GradedRingPresentation {
        field,
        variables,
        defining_ideal,
        order,
    })
}

fn parse_generators<F: Field>(
    ring: &PolyRing<F>,
    lines: &[(usize, String)],
) -> Result<Vec<Polynomial<BigRational>>> {
    let mut out = Vec::new();
    for (line_no, text) in lines {
        for piece in text.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let p = ring.parse_at_line(piece, *line_no)?;
            if p.is_zero() {
                continue;
            }
            if !ring.is_homogeneous(&p) {
                return Err(AlgebraError::NonHomogeneous(piece.to_string()));
            }
            if ring.is_unit(&p) {
                return Err(AlgebraError::UnitGenerator(piece.to_string()));
            }
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| (m.clone(), ring.field().to_rational(c)))
                .collect();
            out.push(Polynomial::from_sorted_terms(terms));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const THM44: &str =
        "field GF 32003\nvars w x y z\nideal w^2, w*x-y^2, w*y-x*z, w*z, x^2+y*z, x*y, z^2\nend\n";

    #[test]
    fn parses_four_variable_ring() {
        let r = parse_ring_spec(THM44).unwrap();
        assert_eq!(r.field, FieldSpec::Prime(32003));
        assert_eq!(r.nvars(), 4);
        assert_eq!(r.defining_ideal.len(), 7);
        assert_eq!(r.generator_strings()[1], "w*x-y^2");
    }

    #[test]
    fn parses_rational_hypersurface() {
        let r = parse_ring_spec("field Q\nvars x\nideal x^2\nend").unwrap();
        assert_eq!(r.field, FieldSpec::Rationals);
        assert_eq!(r.generator_strings(), vec!["x^2"]);
    }

    #[test]
    fn variable_as_generator_is_legal() {
        let r = parse_ring_spec("field GF 7\nvars x\nideal x\nend").unwrap();
        assert_eq!(r.defining_ideal.len(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_ring_spec("field GF 32004\nvars x\nideal x^2\nend"),
            Err(AlgebraError::NotPrime(32004))
        ));
        assert!(matches!(
            parse_ring_spec("field Q\nvars x y\nideal x^2+y\nend"),
            Err(AlgebraError::NonHomogeneous(ref s)) if s == "x^2+y"
        ));
        assert!(matches!(
            parse_ring_spec("field Q\nvars x x\nideal x^2\nend"),
            Err(AlgebraError::DuplicateVariable(_))
        ));
        assert!(matches!(
            parse_ring_spec("field Q\nvars x\nideal\n  x^2 +\nend"),
            Err(AlgebraError::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse_ring_spec("field Q\nvars x\nideal 3\nend"),
            Err(AlgebraError::UnitGenerator(_))
        ));
    }

    #[test]
    fn weights_and_comments() {
        let text = "# weighted\nfield Q\nvars x y:2 # y is heavy\nideal\n  x^2 - y,\n  x*y\nend\n";
        let r = parse_ring_spec(text).unwrap();
        assert_eq!(r.weights(), vec![1, 2]);
        assert_eq!(parse_ring_spec(&r.to_text()).unwrap(), r);
    }

    #[test]
    fn reduces_coefficients_into_prime_field() {
        let r = parse_ring_spec("field GF 5\nvars x y\nideal 6*x^2 + 5*x*y\nend").unwrap();
        assert_eq!(r.generator_strings(), vec!["x^2"]);
    }
}
