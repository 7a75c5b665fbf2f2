//! Minimal graded free resolutions and Betti tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::complexes::GradedFreeComplex;
use crate::degreewise::{minimal_generators_mod, subquotient, DegreewiseRing};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::modules::{FreeElem, GradedMatrix, ModuleOps};
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;

/// A finitely presented graded module to resolve.
#[derive(Clone, Debug)]
pub enum ModuleInput<E> {
    /// The residue field `k = R / m`.
    Residue,
    /// `R / J` for the ideal generated by the given elements.
    Quotient(Vec<Polynomial<E>>),
    /// Cokernel of a minimal presentation `⊕ R(-g) / <relations>`.
    Cokernel {
        generator_degrees: Vec<i64>,
        relations: Vec<FreeElem<E>>,
    },
}

/// Graded Betti numbers `β_{n,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    #[serde(serialize_with = "serialize_grid")]
    pub entries: BTreeMap<(usize, i64), usize>,
    pub homdeg_bound: usize,
    pub intdeg_bound: i64,
}

impl BettiTable {
    pub fn from_shifts(shifts: &[Vec<i64>], homdeg_bound: usize, intdeg_bound: i64) -> Self {
        let mut entries = BTreeMap::new();
        for (n, s) in shifts.iter().enumerate() {
            for &j in s {
                *entries.entry((n, j)).or_insert(0) += 1;
            }
        }
        BettiTable {
            entries,
            homdeg_bound,
            intdeg_bound,
        }
    }

    pub fn entry(&self, n: usize, j: i64) -> usize {
        self.entries.get(&(n, j)).copied().unwrap_or(0)
    }

    /// Total Betti numbers `β_0 … β_bound`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.homdeg_bound + 1];
        for (&(n, _), &b) in &self.entries {
            if n <= self.homdeg_bound {
                out[n] += b;
            }
        }
        out
    }

    /// Grid with rows indexed by `j - n` and columns by `n`.
    pub fn to_text(&self) -> String {
        let cols = self.homdeg_bound + 1;
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(n, j)| j - n as i64).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let totals = self.totals();
        let width = totals
            .iter()
            .map(|t| t.to_string().len())
            .max()
            .unwrap_or(1)
            .max(2);
        let label = rows
            .iter()
            .map(|r| r.to_string().len() + 1)
            .max()
            .unwrap_or(6)
            .max(6);
        let mut s = String::new();
        let _ = write!(s, "{:>label$}", "");
        for n in 0..cols {
            let _ = write!(s, " {n:>width$}");
        }
        s.push('\n');
        let _ = write!(s, "{:>label$}", "total:");
        for t in &totals {
            let _ = write!(s, " {t:>width$}");
        }
        s.push('\n');
        for r in rows {
            let _ = write!(s, "{:>label$}", format!("{r}:"));
            for n in 0..cols {
                let b = self.entry(n, r + n as i64);
                if b == 0 {
                    let _ = write!(s, " {:>width$}", ".");
                } else {
                    let _ = write!(s, " {b:>width$}");
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Writes a `(n, j) -> value` map as a list of `[n, j, value]` triples.
pub(crate) fn serialize_grid<S, V>(
    map: &BTreeMap<(usize, i64), V>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error>
where
    S: serde::Serializer,
    V: Serialize,
{
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(map.len()))?;
    for ((n, j), v) in map {
        seq.serialize_element(&(n, j, v))?;
    }
    seq.end()
}

#[derive(Clone, Debug)]
pub struct Resolution<E> {
    pub complex: GradedFreeComplex<E>,
    pub betti: BettiTable,
    /// Whether the resolution was found to stop before the bound.
    pub terminated: bool,
}

impl<E> Resolution<E> {
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.betti.totals()
    }
}

fn degree_of<F: Field>(
    ops: &ModuleOps<'_, F>,
    shifts: &[i64],
    e: &FreeElem<F::Elem>,
) -> Result<i64> {
    ops.elem_degree(shifts, e)
        .ok_or_else(|| AlgebraError::NonHomogeneous(ops.format_elem(e, &|i| format!("e{i}"))))
}

/// Minimal presentation `(F_0 degrees, first differential columns)` of the input.
fn presentation<F: Field>(
    ring: &QuotientRing<F>,
    input: &ModuleInput<F::Elem>,
) -> Result<(Vec<i64>, Vec<(i64, FreeElem<F::Elem>)>)> {
    let ops = ModuleOps::new(ring);
    let (f0, rels): (Vec<i64>, Vec<FreeElem<F::Elem>>) = match input {
        ModuleInput::Residue => (
            vec![0],
            ring.maximal_ideal()
                .into_iter()
                .map(|x| vec![(0, x)])
                .collect(),
        ),
        ModuleInput::Quotient(j) => (vec![0], j.iter().map(|p| vec![(0, p.clone())]).collect()),
        ModuleInput::Cokernel {
            generator_degrees,
            relations,
        } => (generator_degrees.clone(), relations.clone()),
    };
    let mut cands = Vec::new();
    for r in rels {
        let r = ops.reduce_elem(&r);
        if r.is_empty() {
            continue;
        }
        let d = degree_of(&ops, &f0, &r)?;
        for (i, p) in &r {
            if p.terms().iter().any(|(m, _)| m.is_one()) {
                if matches!(input, ModuleInput::Quotient(_)) {
                    return Err(AlgebraError::UnitIdeal);
                }
                return Err(AlgebraError::NotMinimal(format!(
                    "relation has a unit entry in row {i}; the presentation is not minimal"
                )));
            }
        }
        cands.push((d, r));
    }
    let mut dr = DegreewiseRing::new(ring);
    let gens = minimal_generators_mod(&mut dr, &f0, &[], &cands);
    Ok((f0, gens))
}

/// Minimal generators of the kernel of `images: ⊕ R(-src) -> ⊕ R(-tgt)`.
fn kernel_generators<F: Field>(
    ring: &QuotientRing<F>,
    top: Option<i64>,
    src: &[i64],
    images: &[FreeElem<F::Elem>],
    tgt: &[i64],
) -> Vec<(i64, FreeElem<F::Elem>)> {
    let mut dr = DegreewiseRing::new(ring);
    if let Some(t) = top {
        let lo = src.iter().min().copied().unwrap_or(0);
        let hi = src.iter().max().copied().unwrap_or(0) + t;
        let steps = subquotient(&mut dr, src, Some((images, tgt)), &[], lo..=hi);
        steps
            .into_iter()
            .flat_map(|s| {
                let d = s.degree;
                s.new_generators.into_iter().map(move |g| (d, g))
            })
            .collect()
    } else {
        let ops = ModuleOps::new(ring);
        let m = GradedMatrix::new(tgt.to_vec(), src.to_vec(), images.to_vec());
        let ker: Vec<(i64, FreeElem<F::Elem>)> = ops
            .kernel(&m, None)
            .into_iter()
            .map(|e| {
                (
                    ops.elem_degree(src, &e)
                        .expect("homogeneous kernel element"),
                    e,
                )
            })
            .collect();
        minimal_generators_mod(&mut dr, src, &[], &ker)
    }
}

/// Minimal graded free resolution through homological degree `homdeg_bound`.
///
/// Over artinian rings every kernel is computed degree by degree up to the
/// exact bound `max shift + top degree`; otherwise kernels come from Gröbner
/// syzygies. A given `intdeg_bound` below a generator degree is an error.
pub fn minimal_resolution<F: Field>(
    ring: &QuotientRing<F>,
    input: &ModuleInput<F::Elem>,
    homdeg_bound: usize,
    intdeg_bound: Option<i64>,
) -> Result<Resolution<F::Elem>> {
    if ring.is_zero_ring() {
        return Err(AlgebraError::UnitIdeal);
    }
    let top = if ring.is_artinian() {
        ring.top_degree()
    } else {
        None
    };
    let (f0, first) = presentation(ring, input)?;
    let mut shifts = vec![f0];
    let mut images: Vec<Vec<FreeElem<F::Elem>>> = Vec::new();
    let mut gens = first;
    let mut terminated = false;
    for n in 1..=homdeg_bound {
        if gens.is_empty() {
            terminated = true;
            break;
        }
        shifts.push(gens.iter().map(|g| g.0).collect());
        images.push(gens.into_iter().map(|g| g.1).collect());
        if n == homdeg_bound {
            gens = Vec::new();
            break;
        }
        gens = kernel_generators(ring, top, &shifts[n], &images[n - 1], &shifts[n - 1]);
    }
    if !terminated && gens.is_empty() && shifts.len() <= homdeg_bound {
        terminated = true;
    }
    let max_deg = shifts.iter().flatten().copied().max().unwrap_or(0);
    if let Some(b) = intdeg_bound {
        if max_deg > b {
            return Err(AlgebraError::DegreeBoundTooSmall {
                bound: b,
                detail: format!("a minimal generator lives in internal degree {max_deg}"),
            });
        }
    }
    let differentials: Vec<GradedMatrix<F::Elem>> = (1..shifts.len())
        .map(|n| {
            GradedMatrix::new(
                shifts[n - 1].clone(),
                shifts[n].clone(),
                images[n - 1].clone(),
            )
        })
        .collect();
    let mut complex = GradedFreeComplex::from_differentials(shifts[0].clone(), differentials);
    complex.minimal = true;
    let betti = BettiTable::from_shifts(
        &complex.shifts,
        homdeg_bound,
        intdeg_bound.unwrap_or(max_deg),
    );
    Ok(Resolution {
        complex,
        betti,
        terminated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::presentation::parse_ring_spec;

    fn ring(text: &str) -> QuotientRing<PrimeField> {
        let p = parse_ring_spec(text).unwrap();
        QuotientRing::from_presentation(&p, PrimeField::new(32003).unwrap())
    }

    #[test]
    fn periodic_resolution_over_dual_numbers() {
        let r = ring("field GF 32003\nvars x\nideal x^2\nend");
        let res = minimal_resolution(
            &r,
            &ModuleInput::Quotient(vec![r.parse("x").unwrap()]),
            10,
            None,
        )
        .unwrap();
        assert_eq!(res.betti_numbers(), vec![1; 11]);
        assert!(!res.terminated);
        res.complex.check(&r).unwrap();
    }

    #[test]
    fn residue_field_of_complete_intersection() {
        let r = ring("field GF 32003\nvars x y\nideal x^2, y^3\nend");
        let res = minimal_resolution(&r, &ModuleInput::Residue, 6, None).unwrap();
        // (1 + t)^2 / (1 - t^2)^2 expanded by hand-rolled convolution
        let num = [1i64, 2, 1];
        let den: Vec<i64> = (0..7)
            .map(|n| if n % 2 == 0 { n as i64 / 2 + 1 } else { 0 })
            .collect();
        let want: Vec<usize> = (0..7)
            .map(|n| (0..=n.min(2)).map(|i| num[i] * den[n - i]).sum::<i64>() as usize)
            .collect();
        assert_eq!(res.betti_numbers(), want);
        res.complex.check(&r).unwrap();
    }

    #[test]
    fn koszul_resolution_over_polynomial_ring() {
        let r = ring("field GF 32003\nvars x y\nideal\nend");
        let res = minimal_resolution(&r, &ModuleInput::Residue, 3, None).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 2, 1, 0]);
        assert!(res.terminated);
        assert_eq!(res.betti.entry(2, 2), 1);
    }

    #[test]
    fn too_small_degree_bound_is_reported() {
        let r = ring("field GF 32003\nvars x y\nideal\nend");
        let err = minimal_resolution(&r, &ModuleInput::Residue, 3, Some(1)).unwrap_err();
        assert!(matches!(err, AlgebraError::DegreeBoundTooSmall { .. }));
    }

    #[test]
    fn betti_text_grid() {
        let r = ring("field GF 32003\nvars x y\nideal\nend");
        let res = minimal_resolution(&r, &ModuleInput::Residue, 2, None).unwrap();
        let text = res.betti.to_text();
        assert!(text.contains("total:  1  2  1"), "{text}");
        assert!(text.contains("0:  1  2  1"), "{text}");
    }
}
