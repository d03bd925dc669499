//! Incremental row-echelon spans of column vectors.

use alloc::vec::Vec;

use crate::gf::{Felt, Field};

#[derive(Clone, Debug)]
pub(crate) struct Span {
    field: Field,
    /// (pivot index, vector normalized to 1 at the pivot)
    rows: Vec<(usize, Vec<Felt>)>,
}

impl Span {
    pub fn new(field: &Field) -> Span {
        Span { field: field.clone(), rows: Vec::new() }
    }

    #[cfg(test)]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Felt]) -> Vec<Felt> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (p, r) in &self.rows {
            let c = w[*p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in w.iter_mut().zip(r) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        w
    }

    pub fn contains(&self, v: &[Felt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds v; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Felt]) -> bool {
        let f = &self.field;
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(w[p]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep earlier rows reduced at the new pivot so reduce() stays one pass
        for (_, r) in self.rows.iter_mut() {
            let c = r[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(&w) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        self.rows.push((p, w));
        true
    }
}
