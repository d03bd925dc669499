//! Words of signed conjugates ∏ cᵢ·b^{eᵢ}·cᵢ⁻¹ over a base element b.

use alloc::string::String;
use alloc::vec::Vec;

use crate::matrix::Mat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Step {
    pub c: Mat,
    pub e: i8,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Word {
    pub steps: Vec<Step>,
}

fn join(inner: &str, outer: &str) -> String {
    if inner.is_empty() || inner == outer || inner.ends_with(&alloc::format!("/{outer}")) {
        return if inner.is_empty() { outer.into() } else { inner.into() };
    }
    alloc::format!("{inner}/{outer}")
}

impl Word {
    pub fn empty() -> Word {
        Word { steps: Vec::new() }
    }

    pub fn from_pairs(pairs: &[(Mat, i8)], label: &str) -> Word {
        Word { steps: pairs.iter().map(|(c, e)| Step { c: c.clone(), e: *e, label: label.into() }).collect() }
    }

    /// The single conjugate b itself.
    pub fn base(n: usize, field: &crate::gf::Field, label: &str) -> Word {
        Word::from_pairs(&[(Mat::identity(field, n), 1)], label)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn net(&self) -> i64 {
        self.steps.iter().map(|s| s.e as i64).sum()
    }

    pub fn eval(&self, b: &Mat) -> Mat {
        let bi = b.inverse().expect("base is invertible");
        let mut acc = Mat::identity(b.field(), b.n());
        for s in &self.steps {
            let p = if s.e > 0 { b } else { &bi };
            let ci = s.c.inverse().expect("conjugators are invertible");
            acc = &(&(&acc * &s.c) * p) * &ci;
        }
        acc
    }

    pub fn inverse(&self) -> Word {
        Word { steps: self.steps.iter().rev().map(|s| Step { c: s.c.clone(), e: -s.e, label: s.label.clone() }).collect() }
    }

    pub fn repeat(&self, k: usize) -> Word {
        Word { steps: (0..k).flat_map(|_| self.steps.iter().cloned()).collect() }
    }

    /// Conjugates the product by x: cᵢ ↦ x·cᵢ.
    pub fn conj(&self, x: &Mat) -> Word {
        Word { steps: self.steps.iter().map(|s| Step { c: x * &s.c, e: s.e, label: s.label.clone() }).collect() }
    }

    /// cᵢ ↦ u⁻¹·cᵢ·u, for a base b' = u·b·u⁻¹ given a word over b'.
    pub fn dress(&self, u: &Mat) -> Word {
        let ui = u.inverse().expect("dressing matrix is invertible");
        Word { steps: self.steps.iter().map(|s| Step { c: &(&ui * &s.c) * u, e: s.e, label: s.label.clone() }).collect() }
    }

    /// Pads every conjugator with the identity outside `idx`.
    pub fn pad(&self, n: usize, idx: &[usize]) -> Word {
        Word { steps: self.steps.iter().map(|s| Step { c: s.c.embed(n, idx), e: s.e, label: s.label.clone() }).collect() }
    }

    /// `self` is a word over x and `inner` expresses x as a word over b;
    /// the result is the expanded word over b.
    pub fn subst(&self, inner: &Word) -> Word {
        let inv = inner.inverse();
        let mut steps = Vec::new();
        for s in &self.steps {
            let w = if s.e > 0 { inner } else { &inv };
            for t in &w.steps {
                steps.push(Step { c: &s.c * &t.c, e: t.e, label: join(&t.label, &s.label) });
            }
        }
        Word { steps }
    }

    pub fn relabel(&self, label: &str) -> Word {
        Word { steps: self.steps.iter().map(|s| Step { c: s.c.clone(), e: s.e, label: join(&s.label, label) }).collect() }
    }
}
