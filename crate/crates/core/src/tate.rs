//! The Tate complex `F_n = ⊕_{2p+q=n} Γ_p(W) ⊗ E_q` on a Koszul complex and
//! cycles whose classes generate `H_1`.

use std::collections::HashMap;

use serde::Serialize;

use crate::complexes::{homology_series, subsets, GradedFreeComplex};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::modules::{FreeElem, GradedMatrix, ModuleOps};
use crate::poly::Polynomial;
use crate::qci::qci_analyze;
use crate::quotient::QuotientRing;
use crate::resolution::{minimal_resolution, ModuleInput};

/// Multi-indices `(j_1, …, j_h)` with `Σ j_i = p`, lexicographically ascending.
pub fn divided_power_basis(h: usize, p: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; h];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for j in 0..=left {
            cur[i] = j;
            rec(i + 1, left - j, cur, out);
        }
    }
    if h == 0 {
        if p == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, p as u32, &mut cur, &mut out);
    out
}

type Basis = Vec<(Vec<u32>, Vec<usize>)>;

/// Basis of `F_n`: blocks by ascending `p`, then divided-power index, then subset.
fn tate_basis(h: usize, c: usize, n: usize) -> Basis {
    let mut out = Vec::new();
    for p in 0..=n / 2 {
        let q = n - 2 * p;
        if q > c || (h == 0 && p > 0) {
            continue;
        }
        let subs = subsets(c, q);
        for j in divided_power_basis(h, p) {
            for s in &subs {
                out.push((j.clone(), s.clone()));
            }
        }
    }
    out
}

/// `v_l ∧ v_S` as a signed subset, or `None` when `l ∈ S`.
fn wedge(l: usize, s: &[usize]) -> Option<(bool, Vec<usize>)> {
    match s.binary_search(&l) {
        Ok(_) => None,
        Err(pos) => {
            let mut t = s.to_vec();
            t.insert(pos, l);
            Some((pos % 2 == 1, t))
        }
    }
}

/// The Tate complex on the Koszul complex `koszul` and cycles `z` through
/// homological degree `bound`.
pub fn tate_complex<F: Field>(
    ring: &QuotientRing<F>,
    koszul: &GradedFreeComplex<F::Elem>,
    z: &[FreeElem<F::Elem>],
    bound: usize,
) -> Result<GradedFreeComplex<F::Elem>> {
    let pr = ring.poly_ring();
    let ops = ModuleOps::new(ring);
    let c = koszul.rank(1);
    let h = z.len();
    let a: Vec<Polynomial<F::Elem>> = match koszul.differential(1) {
        Some(d) => d
            .columns
            .iter()
            .map(|col| {
                col.first()
                    .map(|e| e.1.clone())
                    .unwrap_or_else(|| pr.zero())
            })
            .collect(),
        None => Vec::new(),
    };
    let deg_a: Vec<i64> = if c > 0 {
        koszul.shifts[1].clone()
    } else {
        Vec::new()
    };
    let mut deg_z = Vec::with_capacity(h);
    for zi in z {
        let reduced = ops.reduce_elem(zi);
        let bad = || AlgebraError::NotACycle(ops.format_elem(zi, &|i| format!("v{}", i + 1)));
        let d1 = koszul.differential(1).ok_or_else(bad)?;
        if reduced.is_empty() || !ops.apply(d1, &reduced).is_empty() {
            return Err(bad());
        }
        deg_z.push(ops.elem_degree(&deg_a, &reduced).ok_or_else(bad)?);
    }
    let z: Vec<FreeElem<F::Elem>> = z.iter().map(|zi| ops.reduce_elem(zi)).collect();

    let bases: Vec<Basis> = (0..=bound).map(|n| tate_basis(h, c, n)).collect();
    let degree = |(j, s): &(Vec<u32>, Vec<usize>)| -> i64 {
        j.iter()
            .zip(&deg_z)
            .map(|(&k, &d)| k as i64 * d)
            .sum::<i64>()
            + s.iter().map(|&i| deg_a[i]).sum::<i64>()
    };
    let shifts: Vec<Vec<i64>> = bases
        .iter()
        .map(|b| b.iter().map(degree).collect())
        .collect();
    let mut differentials = Vec::with_capacity(bound);
    for n in 1..=bound {
        let index: HashMap<&(Vec<u32>, Vec<usize>), usize> = bases[n - 1]
            .iter()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();
        let columns: Vec<FreeElem<F::Elem>> = bases[n]
            .iter()
            .map(|(j, s)| {
                let mut acc: HashMap<usize, Polynomial<F::Elem>> = HashMap::new();
                let mut push = |key: (Vec<u32>, Vec<usize>), p: Polynomial<F::Elem>| {
                    let row = index[&key];
                    let e = acc.entry(row).or_insert_with(|| pr.zero());
                    *e = pr.add(e, &p);
                };
                // w^(j) ⊗ ∂e
                for k in 0..s.len() {
                    let mut rest = s.clone();
                    rest.remove(k);
                    let entry = if k % 2 == 0 {
                        a[s[k]].clone()
                    } else {
                        pr.neg(&a[s[k]])
                    };
                    push((j.clone(), rest), entry);
                }
                // Σ_i w^(j - ε_i) ⊗ z_i e
                for i in 0..h {
                    if j[i] == 0 {
                        continue;
                    }
                    let mut jm = j.clone();
                    jm[i] -= 1;
                    for (l, coef) in &z[i] {
                        if let Some((neg, t)) = wedge(*l, s) {
                            push(
                                (jm.clone(), t),
                                if neg { pr.neg(coef) } else { coef.clone() },
                            );
                        }
                    }
                }
                let mut col: FreeElem<F::Elem> =
                    acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
                col.sort_by_key(|e| e.0);
                ops.reduce_elem(&col)
            })
            .collect();
        differentials.push(GradedMatrix::new(
            shifts[n - 1].clone(),
            shifts[n].clone(),
            columns,
        ));
    }
    let mut complex = GradedFreeComplex::from_differentials(shifts[0].clone(), differentials);
    complex.check(ring)?;
    complex.minimal = z.iter().all(|zi| {
        zi.iter()
            .all(|(_, p)| p.terms().iter().all(|(m, _)| !m.is_one()))
    }) && koszul.minimal;
    Ok(complex)
}

/// Comparison of the Tate complex on a QCI ideal with the minimal resolution of `S`.
#[derive(Clone, Debug, Serialize)]
pub struct TateCheck {
    pub bound: usize,
    pub tate_ranks: Vec<usize>,
    pub resolution_ranks: Vec<usize>,
    /// Hilbert series of `H_n(F)` for `n = 0 … bound`.
    pub homology: Vec<String>,
    pub h0_is_quotient: bool,
    pub acyclic: bool,
    pub minimal: bool,
}

impl TateCheck {
    pub fn is_resolution(&self) -> bool {
        self.h0_is_quotient && self.acyclic
    }
}

/// Builds the Tate complex through `bound + 1` from Koszul cycles generating
/// `H_1`, and checks `H_0 = S`, `H_n = 0` for `1 ≤ n ≤ bound`, and ranks
/// against the minimal resolution of `S`.
pub fn check_tate<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
    bound: usize,
) -> Result<(GradedFreeComplex<F::Elem>, TateCheck)> {
    let qa = qci_analyze(ring, gens)?;
    let f = tate_complex(ring, &qa.koszul, &qa.cycles, bound + 1)?;
    let mut homology = Vec::with_capacity(bound + 1);
    let mut acyclic = true;
    let mut h0_is_quotient = false;
    for n in 0..=bound {
        let h = homology_series(ring, &f, n)?;
        if n == 0 {
            h0_is_quotient = h == qa.quotient_series;
        } else if !h.is_zero() {
            acyclic = false;
        }
        homology.push(h.to_string());
    }
    let res = minimal_resolution(
        ring,
        &ModuleInput::Quotient(qa.generators.clone()),
        bound,
        None,
    )?;
    let mut resolution_ranks = res.betti_numbers();
    resolution_ranks.resize(bound + 1, 0);
    let check = TateCheck {
        bound,
        tate_ranks: f.ranks()[..=bound].to_vec(),
        resolution_ranks,
        homology,
        h0_is_quotient,
        acyclic,
        minimal: f.minimal,
    };
    Ok((f, check))
}
