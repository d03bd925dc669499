//! Generalized Jordan form over GF(q) and the decomposable/indecomposable
//! case split used by the constructor.
//!
//! The generalized Jordan block for an irreducible `f` of degree `d` and
//! chain length `m` is the `dm × dm` block upper-bidiagonal matrix with
//! `C(f)` on the diagonal and on the superdiagonal. For `d = 1` this is
//! `λI + λN`.

mod classes;
mod poly;
pub(crate) mod span;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

pub use classes::{gl_class_count, sl_class_reps};
pub use poly::{charpoly, factor, factor_charpoly, PolyF};

use crate::gf::{Felt, Field};
use crate::matrix::{Mat, MatError};
use span::Span;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonicalError {
    #[error("matrix is singular")]
    Singular,
    #[error("split requested on an indecomposable element ({0})")]
    Indecomposable(Case),
    #[error("internal: {0}")]
    Internal(String),
}

impl From<MatError> for CanonicalError {
    fn from(e: MatError) -> Self {
        match e {
            MatError::Singular => CanonicalError::Singular,
            other => CanonicalError::Internal(alloc::format!("{other}")),
        }
    }
}

/// Shape of the generalized Jordan form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// At least two blocks.
    Decomposable,
    /// One block, m = 1: a companion matrix.
    M1,
    /// One block, m = 2, deg f ≥ 2.
    M2,
    /// One block, deg f = 1, m = n.
    Mn,
    /// One block with 2 < m < n.
    Small,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::Decomposable => "decomposable",
            Case::M1 => "m1",
            Case::M2 => "m2",
            Case::Mn => "mn",
            Case::Small => "small",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub f: PolyF,
    pub m: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        self.f.degree() * self.m
    }
}

/// `u` with `u·g·u⁻¹ = jordan_matrix()`.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub u: Mat,
    pub det_u: Felt,
    pub blocks: Vec<Block>,
    pub case: Case,
}

/// M_{f,m}: C(f) on the diagonal and the superdiagonal.
pub fn block_matrix(f: &PolyF, m: usize) -> Mat {
    let c = f.companion();
    let d = f.degree();
    let mut out = Mat::zero(f.field(), d * m);
    for b in 0..m {
        for i in 0..d {
            for j in 0..d {
                out.set(b * d + i, b * d + j, c.get(i, j));
                if b + 1 < m {
                    out.set(b * d + i, (b + 1) * d + j, c.get(i, j));
                }
            }
        }
    }
    out
}

pub fn blocks_matrix(field: &Field, blocks: &[Block]) -> Mat {
    let n: usize = blocks.iter().map(Block::size).sum();
    let mut out = Mat::zero(field, n);
    let mut off = 0;
    for b in blocks {
        let m = block_matrix(&b.f, b.m);
        for i in 0..m.n() {
            for j in 0..m.n() {
                out.set(off + i, off + j, m.get(i, j));
            }
        }
        off += m.n();
    }
    out
}

fn case_of(n: usize, blocks: &[Block]) -> Case {
    if blocks.len() >= 2 {
        return Case::Decomposable;
    }
    let b = &blocks[0];
    let d = b.f.degree();
    if b.m == 1 {
        Case::M1
    } else if d == 1 {
        debug_assert_eq!(b.m, n);
        Case::Mn
    } else if b.m == 2 {
        Case::M2
    } else {
        Case::Small
    }
}

impl CanonicalForm {
    pub fn jordan_matrix(&self) -> Mat {
        blocks_matrix(self.u.field(), &self.blocks)
    }

    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let mut off = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = off..off + b.size();
                off = r.end;
                r
            })
            .collect()
    }
}

fn rect_mul(f: &Field, a: &[Vec<Felt>], b: &Mat) -> Vec<Vec<Felt>> {
    // a given as columns (n × k), b is k × k; returns columns of a·b
    let k = b.n();
    (0..k)
        .map(|j| {
            let n = a[0].len();
            let mut col = alloc::vec![Felt::ZERO; n];
            for (l, al) in a.iter().enumerate() {
                let c = b.get(l, j);
                if c.is_zero() {
                    continue;
                }
                for i in 0..n {
                    col[i] = f.add(col[i], f.mul(c, al[i]));
                }
            }
            col
        })
        .collect()
}

fn krylov(g: &Mat, v: &[Felt], len: usize) -> Vec<Vec<Felt>> {
    let mut out = Vec::with_capacity(len);
    let mut w = v.to_vec();
    for _ in 0..len {
        let next = g.apply(&w);
        out.push(w);
        w = next;
    }
    out
}

fn cyclic_vector(m: &Mat) -> Vec<Felt> {
    let f = m.field().clone();
    let n = m.n();
    let ok = |v: &[Felt]| {
        let mut s = Span::new(&f);
        krylov(m, v, n).iter().all(|w| s.insert(w))
    };
    for i in (0..n).rev() {
        let mut v = alloc::vec![Felt::ZERO; n];
        v[i] = Felt::ONE;
        if ok(&v) {
            return v;
        }
    }
    for mask in 1u32..(1 << n) {
        let v: Vec<Felt> = (0..n).map(|i| if mask >> i & 1 == 1 { Felt::ONE } else { Felt::ZERO }).collect();
        if ok(&v) {
            return v;
        }
    }
    unreachable!("generalized Jordan block is cyclic")
}

/// Generalized Jordan form of an invertible matrix.
pub fn generalized_jordan(g: &Mat) -> Result<CanonicalForm, CanonicalError> {
    let field = g.field().clone();
    let n = g.n();
    if g.det().is_zero() {
        return Err(CanonicalError::Singular);
    }
    let factors = factor_charpoly(g);
    let mut blocks = Vec::new();
    let mut gens: Vec<Vec<Felt>> = Vec::new();
    for (f, e) in &factors {
        let d = f.degree();
        let nf = f.eval_mat(g);
        // kernels of f(g)^j for j = 0..=e
        let mut kernels: Vec<Vec<Vec<Felt>>> = alloc::vec![Vec::new()];
        let mut p = Mat::identity(&field, n);
        for _ in 0..*e {
            p = &p * &nf;
            kernels.push(p.kernel());
        }
        let dims: Vec<usize> = kernels.iter().map(Vec::len).collect();
        let top = (0..=*e).find(|&j| dims[j] == d * e).unwrap();
        let at_least = |j: usize| -> usize {
            if j == 0 || j > top {
                0
            } else {
                (dims[j] - dims[j - 1]) / d
            }
        };
        for j in (1..=top).rev() {
            let exact = at_least(j) - at_least(j + 1);
            if exact == 0 {
                continue;
            }
            let mut s = Span::new(&field);
            for v in &kernels[j - 1] {
                s.insert(v);
            }
            let above = if j < top { &kernels[j + 1] } else { &kernels[top] };
            for v in above {
                s.insert(&nf.apply(v));
            }
            let mut chosen = 0;
            for v in &kernels[j] {
                if chosen == exact {
                    break;
                }
                if s.contains(v) {
                    continue;
                }
                for w in krylov(g, v, d) {
                    s.insert(&w);
                }
                gens.push(v.clone());
                blocks.push(Block { f: f.clone(), m: j });
                chosen += 1;
            }
            if chosen != exact {
                return Err(CanonicalError::Internal(alloc::format!("generator selection for {f} level {j}")));
            }
        }
    }
    let jm = blocks_matrix(&field, &blocks);
    let case = case_of(n, &blocks);
    if &jm == g {
        let u = Mat::identity(&field, n);
        return Ok(CanonicalForm { det_u: Felt::ONE, u, blocks, case });
    }
    let mut cols: Vec<Vec<Felt>> = Vec::with_capacity(n);
    for (b, v) in blocks.iter().zip(&gens) {
        let mb = block_matrix(&b.f, b.m);
        let k = mb.n();
        let kv = krylov(g, v, k);
        let km = Mat::from_columns(&field, &krylov(&mb, &cyclic_vector(&mb), k))?;
        cols.extend(rect_mul(&field, &kv, &km.inverse()?));
    }
    let bmat = Mat::from_columns(&field, &cols)?;
    let u = bmat.inverse().map_err(|_| CanonicalError::Internal("Jordan basis is dependent".into()))?;
    if g.conjugate(&u)? != jm {
        return Err(CanonicalError::Internal("Jordan replay mismatch".into()));
    }
    Ok(CanonicalForm { det_u: u.det(), u, blocks, case })
}

/// The two diagonal pieces of a decomposable element in Jordan coordinates.
#[derive(Clone, Debug)]
pub struct Split {
    /// The piece the constructor recurses on; never scalar.
    pub g1: Mat,
    pub g2: Mat,
    pub idx1: Vec<usize>,
    pub idx2: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum SplitOutcome {
    Split(Split),
    Indecomposable(Case),
}

/// Splits a decomposable element. Preference order:
/// 1. fixed points (blocks J₁(1)) against the rest, when the rest is non-central;
/// 2. the first primary component against the others, swapped if needed so
///    that g₁ is non-central; two scalar pieces λI ⊕ μI are re-split as
///    (λI, μ) ⊕ (λ, μI).
///
/// Over GF(2) a 2-dimensional g₁ absorbs one fixed coordinate when possible.
pub fn split_decomposable(cf: &CanonicalForm, _g: &Mat) -> SplitOutcome {
    if cf.case != Case::Decomposable {
        return SplitOutcome::Indecomposable(cf.case);
    }
    let jm = cf.jordan_matrix();
    let field = jm.field().clone();
    let q = field.q();
    let ranges = cf.block_ranges();
    let one = PolyF::linear(&field, Felt::ONE);
    let is_fixed = |b: &Block| b.m == 1 && b.f == one;
    let make = |idx1: Vec<usize>, idx2: Vec<usize>| {
        SplitOutcome::Split(Split { g1: jm.submatrix(&idx1), g2: jm.submatrix(&idx2), idx1, idx2 })
    };

    let fixed: Vec<usize> = cf.blocks.iter().zip(&ranges).filter(|(b, _)| is_fixed(b)).flat_map(|(_, r)| r.clone()).collect();
    let rest: Vec<usize> = cf.blocks.iter().zip(&ranges).filter(|(b, _)| !is_fixed(b)).flat_map(|(_, r)| r.clone()).collect();
    if !fixed.is_empty() && !rest.is_empty() && !jm.submatrix(&rest).is_scalar() {
        let (mut i1, mut i2) = (rest, fixed);
        if q == 2 && i1.len() == 2 && i2.len() >= 2 {
            let c = i2.remove(0);
            i1.push(c);
            i1.sort_unstable();
        }
        return make(i1, i2);
    }

    // primary components in block order
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for (i, b) in cf.blocks.iter().enumerate() {
        if i > 0 && cf.blocks[i - 1].f == b.f {
            comps.last_mut().unwrap().extend(ranges[i].clone());
        } else {
            comps.push(ranges[i].clone().collect());
        }
    }
    let (mut i1, mut i2): (Vec<usize>, Vec<usize>) = if comps.len() >= 2 {
        (comps[0].clone(), comps[1..].concat())
    } else {
        (ranges[0].clone().collect(), ranges[1..].iter().flat_map(|r| r.clone()).collect())
    };
    let c1 = jm.submatrix(&i1).is_scalar();
    let c2 = jm.submatrix(&i2).is_scalar();
    if c1 && !c2 {
        core::mem::swap(&mut i1, &mut i2);
    } else if c1 && c2 {
        // λI_{n₁} ⊕ μI_{n₂} → (λI_{n₁−1}, μ) ⊕ (λ, μI_{n₂−1})
        let (n1, n2) = (i1.len(), i2.len());
        let h1: Vec<usize> = i1[..n1 - 1].iter().copied().chain([i2[0]]).collect();
        let h2: Vec<usize> = [i1[n1 - 1]].into_iter().chain(i2[1..].iter().copied()).collect();
        if n1 >= 2 {
            i1 = h1;
            i2 = h2;
        } else {
            // n₂ ≥ 2, so h₂ is the non-central piece
            i1 = h2;
            i2 = h1;
        }
        let _ = n2;
    }
    if q == 2 && i1.len() == 2 {
        let g2 = jm.submatrix(&i2);
        if !g2.is_scalar() && i2.len() != 2 {
            core::mem::swap(&mut i1, &mut i2);
        } else if g2.is_identity() && i2.len() >= 2 {
            let c = i2.remove(0);
            i1.push(c);
        }
    }
    make(i1, i2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;

    fn replay_ok(g: &Mat) -> CanonicalForm {
        let cf = generalized_jordan(g).unwrap();
        assert_eq!(g.conjugate(&cf.u).unwrap(), cf.jordan_matrix(), "g = {g}");
        assert_eq!(cf.det_u, cf.u.det());
        let prod = cf.blocks.iter().fold(PolyF::one(g.field()), |acc, b| acc.mul(&b.f.pow(b.m)));
        assert_eq!(prod, charpoly(g));
        cf
    }

    #[test]
    fn mn_form_is_fixed() {
        let f = make_field(5).unwrap();
        let lam = Felt(2);
        let mut g = Mat::scalar(&f, 3, lam);
        g.set(0, 1, lam);
        g.set(1, 2, lam);
        let cf = replay_ok(&g);
        assert_eq!(cf.case, Case::Mn);
        assert!(cf.u.is_identity());
    }

    #[test]
    fn companion_is_m1() {
        let f = make_field(3).unwrap();
        // x³ + 2x + 1
        let p = PolyF::new(&f, alloc::vec![Felt(1), Felt(2), Felt(0), Felt(1)]);
        assert!(p.is_irreducible());
        let cf = replay_ok(&p.companion());
        assert_eq!(cf.case, Case::M1);
        assert!(cf.u.is_identity());
    }

    #[test]
    fn conjugated_unipotent() {
        let f = make_field(5).unwrap();
        let h = Mat::h(&f, Felt(1));
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    let Ok(x) = Mat::from_rows(&f, &[&[1, a], &[b, c]]) else { continue };
                    if x.det() != Felt::ONE {
                        continue;
                    }
                    let g = h.conjugate(&x).unwrap();
                    let cf = replay_ok(&g);
                    assert_eq!(cf.blocks, alloc::vec![Block { f: PolyF::linear(&f, Felt(1)), m: 2 }]);
                }
            }
        }
    }

    #[test]
    fn m2_shape() {
        let f = make_field(5).unwrap();
        let p = PolyF::new(&f, alloc::vec![Felt(2), Felt(0), Felt(1)]);
        let g = block_matrix(&p, 2);
        let cf = replay_ok(&g);
        assert_eq!(cf.case, Case::M2);
        assert!(cf.u.is_identity());
    }

    #[test]
    fn split_examples() {
        let f7 = make_field(7).unwrap();
        let g = Mat::diag(&f7, &[Felt(2), Felt(3)]);
        let cf = replay_ok(&g);
        let SplitOutcome::Split(s) = split_decomposable(&cf, &g) else { panic!() };
        let mut pair = [s.g1.get(0, 0), s.g2.get(0, 0)];
        pair.sort();
        assert_eq!(pair, [Felt(2), Felt(3)]);

        let f5 = make_field(5).unwrap();
        let g = Mat::diag(&f5, &[Felt(2), Felt(2), Felt(1), Felt(1)]);
        let cf = replay_ok(&g);
        let SplitOutcome::Split(s) = split_decomposable(&cf, &g) else { panic!() };
        let mut d1: Vec<Felt> = (0..2).map(|i| s.g1.get(i, i)).collect();
        let mut d2: Vec<Felt> = (0..2).map(|i| s.g2.get(i, i)).collect();
        d1.sort();
        d2.sort();
        assert_eq!(d1, alloc::vec![Felt(1), Felt(2)]);
        assert_eq!(d2, alloc::vec![Felt(1), Felt(2)]);
        assert!(!s.g1.is_scalar());

        let p = PolyF::new(&f5, alloc::vec![Felt(2), Felt(0), Felt(1)]);
        let c = p.companion();
        let cf = replay_ok(&c);
        assert!(matches!(split_decomposable(&cf, &c), SplitOutcome::Indecomposable(Case::M1)));
    }

    fn arb_invertible(q: u32, n: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(0..q, n * n)
            .prop_map(move |v| {
                let f = make_field(q).unwrap();
                Mat::new(&f, n, v.into_iter().map(|e| f.elem(e).unwrap()).collect()).unwrap()
            })
            .prop_filter("invertible", |m| !m.det().is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn jordan_replay_random(g in arb_invertible(3, 5)) {
            replay_ok(&g);
        }

        #[test]
        fn jordan_replay_random_even(g in arb_invertible(4, 4)) {
            replay_ok(&g);
        }

        #[test]
        fn jordan_replay_structured(seed in arb_invertible(2, 6), c in arb_invertible(2, 6)) {
            // squares and products of blocks give repeated factors more often
            let g = &(&seed * &seed) * &seed;
            let g = g.conjugate(&c).unwrap();
            replay_ok(&g);
        }

        #[test]
        fn split_pieces_cover(g in arb_invertible(5, 4)) {
            let cf = replay_ok(&g);
            if let SplitOutcome::Split(s) = split_decomposable(&cf, &g) {
                let mut all: Vec<usize> = s.idx1.iter().chain(&s.idx2).copied().collect();
                all.sort_unstable();
                prop_assert_eq!(all, (0..4).collect::<Vec<_>>());
                prop_assert!(!s.g1.is_scalar());
                // the Jordan matrix is block diagonal for the partition
                let jm = cf.jordan_matrix();
                for &i in &s.idx1 {
                    for &j in &s.idx2 {
                        prop_assert!(jm.get(i, j).is_zero() && jm.get(j, i).is_zero());
                    }
                }
            }
        }
    }
}
