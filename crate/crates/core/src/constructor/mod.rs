//! Explicit witnesses: for non-central g ∈ GL_n(q), a word ∏ cᵢ g^{eᵢ} cᵢ⁻¹
//! with det cᵢ = 1 whose product t is non-central with t² = ±I.
//!
//! Pipeline: a commutator prefix moves g into SL; small excluded cases go
//! to breadth-first search; otherwise g passes to generalized Jordan form,
//! decomposable elements recurse on one block and indecomposable ones use
//! the block formulas. Targets of the form t ⊕ I with t² = −I are squared
//! at the end.

mod blocks;
mod brute;
mod replay;
mod sl2;
mod word;

use alloc::string::String;
use alloc::vec::Vec;

use crate::canonical::{generalized_jordan, split_decomposable, Case, CanonicalError, SplitOutcome};
use crate::gf::{Felt, Field, GfError};
use crate::matrix::{CommutatorOrder, Family, GroupSpec, Mat, MatError};
use crate::oracle::{OracleError, DEFAULT_ORDER_CAP};

pub use replay::{length_cap, replay, ReplayReport, Violation};

use word::Word;

/// Pairs settled by direct calculation.
pub const EXCLUDED: [(usize, u32); 6] = [(2, 2), (2, 3), (3, 2), (3, 4), (4, 2), (4, 3)];

/// Absolute length cap.
pub const MAX_LEN: usize = 96;

const MAX_RESEED_DEPTH: usize = 2;
const RESEED_TRIES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("element is central")]
    Central,
    #[error("element is not in the group")]
    NotInGroup,
    #[error("field too small: q = {0}")]
    FieldTooSmall(u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
    #[error("identity failed: {0}")]
    Formula(&'static str),
    #[error("fallback search exhausted: {0}")]
    FallbackExhausted(&'static str),
    #[error("no witness of length at most {cap}")]
    CapExceeded { cap: usize },
    #[error("no product of conjugates reaches a projective involution")]
    Unreachable,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessStep {
    pub conjugator: Mat,
    pub exponent: i8,
    pub case_label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub spec: GroupSpec,
    pub g: Mat,
    pub steps: Vec<WitnessStep>,
    pub target: Mat,
    pub net_exponent: i64,
}

impl Witness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A word over some base element with its product.
#[derive(Clone, Debug)]
pub(crate) struct Partial {
    pub word: Word,
    pub target: Mat,
}

impl Partial {
    /// `self` is over x and `inner` writes x over g.
    pub fn after(self, inner: Word) -> Partial {
        Partial { word: self.word.subst(&inner), target: self.target }
    }
}

/// The search order for partners: I + E_ij over i ≠ j, then I + λE_ij
/// for the remaining λ ≠ 0 in encoding order.
pub fn partner_candidates(f: &Field, n: usize) -> impl Iterator<Item = Mat> + '_ {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let lambdas: Vec<Felt> = core::iter::once(Felt::ONE).chain(f.units().filter(|&l| l != Felt::ONE)).collect();
    lambdas.into_iter().flat_map(move |l| pairs.clone().into_iter().map(move |(i, j)| Mat::transvection(f, n, i, j, l)))
}

fn commutator(g: &Mat, h: &Mat) -> Mat {
    g.commutator(h, CommutatorOrder::GinvHinvGh).unwrap()
}

/// [g, h] = g⁻¹·h⁻¹gh as a word over g.
fn commutator_word(g: &Mat, h: &Mat, label: &str) -> Word {
    let hi = h.inverse().unwrap();
    Word::from_pairs(&[(Mat::identity(g.field(), g.n()), -1), (hi, 1)], label)
}

/// h ∈ SL with [g, h] non-central.
pub fn find_partner(g: &Mat, spec: &GroupSpec) -> Result<Mat, ConstructError> {
    check_spec(g, spec)?;
    if g.is_scalar() {
        return Err(ConstructError::Central);
    }
    partner_candidates(g.field(), g.n()).find(|h| !commutator(g, h).is_scalar()).ok_or(ConstructError::Central)
}

fn check_spec(g: &Mat, spec: &GroupSpec) -> Result<(), ConstructError> {
    if !matches!(spec.family, Family::GL | Family::SL) {
        return Err(ConstructError::Unsupported(alloc::format!("{spec}")));
    }
    if !g.classify(spec).in_group {
        return Err(ConstructError::NotInGroup);
    }
    Ok(())
}

fn is_excluded(n: usize, q: u32) -> bool {
    EXCLUDED.contains(&(n, q))
}

/// Word over g ∈ GL, through a commutator prefix when det g ≠ 1.
fn gl_partial(g: &Mat, depth: usize) -> Result<Partial, ConstructError> {
    if g.det() == Felt::ONE {
        return sl_partial(g, depth);
    }
    let h = partner_candidates(g.field(), g.n()).find(|h| !commutator(g, h).is_scalar()).ok_or(ConstructError::Central)?;
    let x = commutator(g, &h);
    Ok(sl_partial(&x, depth)?.after(commutator_word(g, &h, "prefix")))
}

fn sl_partial(g: &Mat, depth: usize) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    let n = g.n();
    if g.is_scalar() {
        return Err(ConstructError::Central);
    }
    if is_excluded(n, f.q()) {
        match brute::brute_partial(g, MAX_LEN, DEFAULT_ORDER_CAP) {
            Err(ConstructError::Oracle(OracleError::TooLarge { .. })) => {}
            other => return other,
        }
    }
    if n == 2 {
        return sl2::sl2_partial(g);
    }
    let cf = generalized_jordan(g)?;
    let j = cf.jordan_matrix();
    let direct = match cf.case {
        Case::Decomposable => decomposable(&j, &cf, depth),
        Case::M1 | Case::M2 | Case::Mn => blocks::block_partial(&j, &cf.blocks[0].f, cf.case),
        Case::Small => Err(ConstructError::Unsupported("block with 2 < m < n".into())),
    };
    let p = match direct {
        Ok(p) => p,
        Err(e) if depth < MAX_RESEED_DEPTH => reseed(&j, depth).map_err(|_| e)?,
        Err(e) => return Err(e),
    };
    let ui = cf.u.inverse()?;
    Ok(Partial { word: p.word.dress(&cf.u), target: p.target.conjugate(&ui)? })
}

/// Replaces g by a commutator [g, h] and starts over on it.
fn reseed(g: &Mat, depth: usize) -> Result<Partial, ConstructError> {
    let mut last = ConstructError::FallbackExhausted("re-seed");
    for h in partner_candidates(g.field(), g.n()).filter(|h| !commutator(g, h).is_scalar()).take(RESEED_TRIES) {
        let x = commutator(g, &h);
        match sl_partial(&x, depth + 1) {
            Ok(p) if p.word.len() * 2 <= MAX_LEN => return Ok(p.after(commutator_word(g, &h, "reseed"))),
            Ok(_) => last = ConstructError::CapExceeded { cap: MAX_LEN },
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn decomposable(j: &Mat, cf: &crate::canonical::CanonicalForm, depth: usize) -> Result<Partial, ConstructError> {
    let SplitOutcome::Split(sp) = split_decomposable(cf, j) else {
        return Err(ConstructError::Shape("split of an indecomposable element"));
    };
    let n = j.n();
    let mut sub = gl_partial(&sp.g1, depth)?;
    if sub.word.net() != 0 {
        let h = partner_candidates(sp.g1.field(), sp.g1.n()).find(|h| !commutator(&sp.g1, h).is_scalar()).ok_or(ConstructError::Central)?;
        let x = commutator(&sp.g1, &h);
        sub = sl_partial(&x, depth + 1)?.after(commutator_word(&sp.g1, &h, "reseed"));
    }
    let word = sub.word.pad(n, &sp.idx1);
    let target = word.eval(j);
    Ok(Partial { word, target })
}

fn finish(spec: GroupSpec, g: &Mat, p: Partial) -> Result<Witness, ConstructError> {
    let Partial { mut word, mut target } = p;
    if !target.is_projective_involution() {
        let sq = &target * &target;
        if !sq.is_projective_involution() {
            return Err(ConstructError::Formula("target or its square is a projective involution"));
        }
        word = word.repeat(2).relabel("square");
        target = sq;
    }
    if word.len() > MAX_LEN {
        return Err(ConstructError::CapExceeded { cap: MAX_LEN });
    }
    let net_exponent = word.net();
    let steps = word
        .steps
        .into_iter()
        .map(|s| WitnessStep { conjugator: s.c, exponent: s.e, case_label: s.label })
        .collect();
    Ok(Witness { spec, g: g.clone(), steps, target, net_exponent })
}

/// Witness for a non-central g in GL_n(q) or SL_n(q).
pub fn construct_involution(g: &Mat, spec: &GroupSpec) -> Result<Witness, ConstructError> {
    check_spec(g, spec)?;
    if g.is_scalar() {
        return Err(ConstructError::Central);
    }
    if g.n() < 2 {
        return Err(ConstructError::Unsupported("n = 1".into()));
    }
    let p = gl_partial(g, 0)?;
    finish(*spec, g, p)
}

/// The n = 2 routine on its own; needs q > 3.
pub fn sl2_witness(g: &Mat) -> Result<Witness, ConstructError> {
    let q = g.field().q();
    let spec = GroupSpec::sl(2, q);
    check_spec(g, &spec)?;
    if g.is_scalar() {
        return Err(ConstructError::Central);
    }
    if q <= 3 {
        return Err(ConstructError::FieldTooSmall(q));
    }
    finish(spec, g, sl2::sl2_partial(g)?)
}

/// Block formulas on g already in the canonical shape of `case`.
pub fn block_case_witness(g: &Mat, case: Case) -> Result<Witness, ConstructError> {
    let f = g.field().clone();
    let n = g.n();
    if is_excluded(n, f.q()) {
        return Err(ConstructError::Unsupported(alloc::format!("(n, q) = ({n}, {}) is settled by direct calculation", f.q())));
    }
    let cf = generalized_jordan(g)?;
    if cf.case != case || !cf.u.is_identity() {
        return Err(ConstructError::Shape("matrix is not in the canonical shape of the case"));
    }
    let spec = if g.det() == Felt::ONE { GroupSpec::sl(n, f.q()) } else { GroupSpec::gl(n, f.q()) };
    check_spec(g, &spec)?;
    finish(spec, g, blocks::block_partial(g, &cf.blocks[0].f, case)?)
}

/// Shortest witness by breadth-first search, for g ∈ SL_n(q) with the group
/// enumerable.
pub fn brute_force_witness(g: &Mat, spec: &GroupSpec, cap: usize) -> Result<Witness, ConstructError> {
    check_spec(g, spec)?;
    if cap == 0 {
        return Err(ConstructError::CapExceeded { cap });
    }
    let p = brute::brute_partial(g, cap, DEFAULT_ORDER_CAP)?;
    finish(*spec, g, p)
}

/// The repaired t(y) for n = 4 over `f`, as (row, column, value) terms with
/// 1-based indices, plus the position of y.
pub fn repaired_t_four(f: &Field) -> Option<(Vec<(usize, usize, Felt)>, (usize, usize))> {
    blocks::repaired_t_four(f).map(|t| (t.terms, t.param.unwrap()))
}

#[cfg(test)]
mod tests;
