use alloc::vec::Vec;
use core::fmt;

use crate::gf::Felt;
use crate::matrix::Mat;

use super::Witness;

/// Length allowed for this witness: 96 when a commutator prefix or a
/// balancing re-seed was used, 48 otherwise.
pub fn length_cap(w: &Witness) -> usize {
    if w.steps.iter().any(|s| s.case_label.contains("reseed") || s.case_label.contains("prefix")) {
        96
    } else {
        48
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Spec, g, conjugators and target disagree in size or field.
    Shape(usize),
    NotInGroup,
    BadExponent(usize),
    SingularConjugator(usize),
    ConjugatorDet { step: usize, det: Felt },
    ProductMismatch,
    NotProjectiveInvolution,
    LengthCap { len: usize, cap: usize },
    NetExponent { recorded: i64, actual: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(i) => write!(f, "step {i}: size or field does not match the group"),
            Violation::NotInGroup => write!(f, "g is not in the stated group"),
            Violation::BadExponent(i) => write!(f, "step {i}: exponent must be +1 or -1"),
            Violation::SingularConjugator(i) => write!(f, "step {i}: conjugator is singular"),
            Violation::ConjugatorDet { step, det } => write!(f, "step {step}: conjugator has determinant {det}"),
            Violation::ProductMismatch => write!(f, "product of the steps differs from the target"),
            Violation::NotProjectiveInvolution => write!(f, "target is scalar or its square is not ±I"),
            Violation::LengthCap { len, cap } => write!(f, "{len} steps exceed the cap of {cap}"),
            Violation::NetExponent { recorded, actual } => write!(f, "net exponent recorded as {recorded}, actual {actual}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReplayReport {
    pub violations: Vec<Violation>,
    pub product: Option<Mat>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Recomputes the product and checks every witness invariant.
pub fn replay(w: &Witness) -> ReplayReport {
    let mut v = Vec::new();
    let f = w.g.field();
    let n = w.g.n();
    let fits = |m: &Mat| m.n() == n && m.field() == f;
    let spec_ok = w.spec.family.is_linear() && w.spec.n == n && w.spec.q == Some(f.q());
    if !spec_ok || !fits(&w.target) {
        v.push(Violation::Shape(0));
        return ReplayReport { violations: v, product: None };
    }
    if !w.g.classify(&w.spec).in_group {
        v.push(Violation::NotInGroup);
    }
    let mut ok = true;
    for (i, s) in w.steps.iter().enumerate() {
        if !fits(&s.conjugator) {
            v.push(Violation::Shape(i));
            ok = false;
            continue;
        }
        if s.exponent != 1 && s.exponent != -1 {
            v.push(Violation::BadExponent(i));
            ok = false;
        }
        let d = s.conjugator.det();
        if d.is_zero() {
            v.push(Violation::SingularConjugator(i));
            ok = false;
        } else if d != Felt::ONE {
            v.push(Violation::ConjugatorDet { step: i, det: d });
        }
    }
    let mut product = None;
    if ok && !w.g.det().is_zero() {
        let gi = w.g.inverse().unwrap();
        let mut acc = Mat::identity(f, n);
        for s in &w.steps {
            let p = if s.exponent > 0 { &w.g } else { &gi };
            acc = &(&(&acc * &s.conjugator) * p) * &s.conjugator.inverse().unwrap();
        }
        if acc != w.target {
            v.push(Violation::ProductMismatch);
        }
        product = Some(acc);
    }
    if !w.target.is_projective_involution() {
        v.push(Violation::NotProjectiveInvolution);
    }
    let cap = length_cap(w);
    if w.steps.len() > cap {
        v.push(Violation::LengthCap { len: w.steps.len(), cap });
    }
    let actual: i64 = w.steps.iter().map(|s| s.exponent as i64).sum();
    if actual != w.net_exponent {
        v.push(Violation::NetExponent { recorded: w.net_exponent, actual });
    }
    ReplayReport { violations: v, product }
}
