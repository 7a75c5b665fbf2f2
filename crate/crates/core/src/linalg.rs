//! Sparse exact linear algebra: semi-echelon forms with optional
//! combination tracking, used for degreewise kernels and spans.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::Field;

/// Sparse vector, strictly increasing indices, no zero entries.
pub type SparseVec<E> = Vec<(u32, E)>;

struct Accumulator<E> {
    vals: Vec<Option<E>>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl<E: Clone> Accumulator<E> {
    fn new(dim: usize) -> Self {
        Accumulator {
            vals: vec![None; dim],
            queued: vec![false; dim],
            heap: BinaryHeap::new(),
        }
    }

    fn grow(&mut self, dim: usize) {
        if self.vals.len() < dim {
            self.vals.resize(dim, None);
            self.queued.resize(dim, false);
        }
    }

    fn touch(&mut self, i: u32) {
        if !self.queued[i as usize] {
            self.queued[i as usize] = true;
            self.heap.push(Reverse(i));
        }
    }
}

/// Dense scratch space for combination tags; only touched slots are visited.
struct TagAccumulator<E> {
    vals: Vec<Option<E>>,
    touched: Vec<u32>,
}

impl<E: Clone> TagAccumulator<E> {
    fn new() -> Self {
        TagAccumulator {
            vals: Vec::new(),
            touched: Vec::new(),
        }
    }

    fn add_scaled<F: Field<Elem = E>>(&mut self, f: &F, v: &SparseVec<E>, c: &E) {
        for (i, x) in v {
            let i = *i as usize;
            if i >= self.vals.len() {
                self.vals.resize(i + 1, None);
            }
            match &mut self.vals[i] {
                Some(y) => *y = f.sub_mul(y, c, x),
                slot @ None => {
                    *slot = Some(f.neg(&f.mul(c, x)));
                    self.touched.push(i as u32);
                }
            }
        }
    }

    fn take<F: Field<Elem = E>>(&mut self, f: &F) -> SparseVec<E> {
        let mut out = Vec::with_capacity(self.touched.len());
        self.touched.sort_unstable();
        for &i in &self.touched {
            if let Some(x) = self.vals[i as usize].take() {
                if !f.is_zero(&x) {
                    out.push((i, x));
                }
            }
        }
        self.touched.clear();
        out
    }
}

/// Rows with distinct leading indices (leading coefficient one).
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Elem>>,
    tags: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<u32>,
    acc: Accumulator<F::Elem>,
    tag_acc: TagAccumulator<F::Elem>,
}

const NONE: u32 = u32::MAX;

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_row: vec![NONE; dim],
            acc: Accumulator::new(dim),
            tag_acc: TagAccumulator::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.pivot_row.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn is_pivot(&self, i: u32) -> bool {
        self.pivot_row[i as usize] != NONE
    }

    /// Reduces `v`; with `track`, also returns the tag combination used.
    fn reduce_inner(
        &mut self,
        v: &SparseVec<F::Elem>,
        track: Option<&SparseVec<F::Elem>>,
    ) -> SparseVec<F::Elem> {
        let dim = self.pivot_row.len();
        self.acc.grow(dim);
        let f = &self.field;
        for (i, x) in v {
            self.acc.vals[*i as usize] = Some(x.clone());
            self.acc.touch(*i);
        }
        if let Some(t) = track {
            let minus_one = f.neg(&f.one());
            self.tag_acc.add_scaled(f, t, &minus_one);
        }
        let mut out = Vec::new();
        while let Some(Reverse(i)) = self.acc.heap.pop() {
            self.acc.queued[i as usize] = false;
            let Some(c) = self.acc.vals[i as usize].take() else {
                continue;
            };
            if f.is_zero(&c) {
                continue;
            }
            let r = self.pivot_row[i as usize];
            if r == NONE {
                out.push((i, c));
                continue;
            }
            let row = &self.rows[r as usize];
            for (j, y) in &row[1..] {
                let ju = *j as usize;
                match &mut self.acc.vals[ju] {
                    Some(z) => *z = f.sub_mul(z, &c, y),
                    slot @ None => {
                        *slot = Some(f.neg(&f.mul(&c, y)));
                    }
                }
                if !self.acc.queued[ju] {
                    self.acc.queued[ju] = true;
                    self.acc.heap.push(Reverse(*j));
                }
            }
            if track.is_some() {
                let t = &self.tags[r as usize];
                self.tag_acc.add_scaled(f, t, &c);
            }
        }
        out
    }

    /// Fully reduced remainder of `v`; zero iff `v` is in the row span.
    pub fn reduce(&mut self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_inner(v, None)
    }

    pub fn contains(&mut self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    fn push_row(&mut self, mut r: SparseVec<F::Elem>, tag: SparseVec<F::Elem>) -> usize {
        let f = &self.field;
        let inv = f.inv(&r[0].1);
        if !f.is_one(&r[0].1) {
            for e in r.iter_mut() {
                e.1 = f.mul(&e.1, &inv);
            }
        }
        let tag = if f.is_one(&inv) {
            tag
        } else {
            tag.into_iter().map(|(i, x)| (i, f.mul(&x, &inv))).collect()
        };
        let idx = self.rows.len();
        self.pivot_row[r[0].0 as usize] = idx as u32;
        self.rows.push(r);
        self.tags.push(tag);
        idx
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        self.push_row(r, Vec::new());
        true
    }

    /// Adds `v` carrying the tag `tag`. When `v` is dependent, returns the
    /// combination of tags `tag - Σ c_r tag_r` whose vector reduces to zero.
    pub fn insert_tagged(
        &mut self,
        v: &SparseVec<F::Elem>,
        tag: SparseVec<F::Elem>,
    ) -> Option<SparseVec<F::Elem>> {
        let r = self.reduce_inner(v, Some(&tag));
        let combo = self.tag_acc.take(&self.field);
        if r.is_empty() {
            Some(combo)
        } else {
            self.push_row(r, combo);
            None
        }
    }
}

/// Rank of a dense matrix by plain Gaussian elimination (test oracle).
pub fn dense_rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(&m[rank][col]);
        let pivot: Vec<F::Elem> = m[rank].iter().map(|x| field.mul(x, &inv)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !field.is_zero(&row[col]) {
                let c = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = field.sub_mul(x, &c, y);
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn kernel_by_tags() {
        let f = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(f, 2);
        // columns (1,1), (2,2), (0,1)
        let cols: Vec<SparseVec<u32>> =
            vec![vec![(0, 1), (1, 1)], vec![(0, 2), (1, 2)], vec![(1, 1)]];
        let mut kernel = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            if let Some(k) = e.insert_tagged(c, vec![(j as u32, 1)]) {
                kernel.push(k);
            }
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(kernel.len(), 1);
        // 2*col0 - col1 = 0, normalized so that col1 has coefficient 1
        let k = &kernel[0];
        let combo: Vec<u32> = (0..2)
            .map(|r| {
                k.iter().fold(0, |acc, (j, c)| {
                    let entry = cols[*j as usize]
                        .iter()
                        .find(|x| x.0 == r)
                        .map_or(0, |x| x.1);
                    f.add(&acc, &f.mul(c, &entry))
                })
            })
            .collect();
        assert_eq!(combo, vec![0, 0]);
    }

    #[test]
    fn dense_oracle_agrees() {
        let f = PrimeField::new(5).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 1], vec![3, 1, 4]];
        let mut e = Echelon::new(f, 3);
        for r in &rows {
            let v: SparseVec<u32> = r
                .iter()
                .enumerate()
                .filter(|x| *x.1 != 0)
                .map(|(i, x)| (i as u32, *x))
                .collect();
            e.insert(&v);
        }
        assert_eq!(e.rank(), dense_rank(&f, &rows));
    }
}
