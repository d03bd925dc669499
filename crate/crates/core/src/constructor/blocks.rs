//! The three indecomposable shapes: a companion matrix (m = 1), the 2×2
//! block form over C(f) (m = 2) and λ(I + N) (m = n).
//!
//! Every hard-coded conjugator goes through [`certify`] before use. A failed
//! identity triggers a single-term perturbation search over the same matrix
//! template.

use alloc::vec::Vec;

use crate::canonical::{block_matrix, Case, PolyF};
use crate::gf::{Felt, Field};
use crate::matrix::Mat;

use super::sl2::sl2_partial;
use super::word::Word;
use super::{ConstructError, Partial};

/// E_{ij} with 1-based indices.
fn e(f: &Field, n: usize, i: usize, j: usize) -> Mat {
    Mat::unit(f, n, i - 1, j - 1)
}

/// A sparse matrix Σ λ·E_{ij} (1-based), plus an optional parameter slot.
#[derive(Clone, Debug)]
pub(crate) struct Template {
    pub n: usize,
    pub terms: Vec<(usize, usize, Felt)>,
    pub param: Option<(usize, usize)>,
}

impl Template {
    fn build(&self, f: &Field, y: Felt) -> Mat {
        let mut m = Mat::zero(f, self.n);
        for &(i, j, l) in &self.terms {
            let cur = m.get(i - 1, j - 1);
            m.set(i - 1, j - 1, f.add(cur, l));
        }
        if let Some((i, j)) = self.param {
            let cur = m.get(i - 1, j - 1);
            m.set(i - 1, j - 1, f.add(cur, y));
        }
        m
    }

    /// Templates differing in one term, in lexicographic order of
    /// (term index, row, column, sign with + first).
    fn perturbations<'a>(&'a self, f: &'a Field) -> impl Iterator<Item = Template> + 'a {
        let n = self.n;
        let signs = [Felt::ONE, f.neg(Felt::ONE)];
        (0..self.terms.len()).flat_map(move |k| {
            (1..=n).flat_map(move |i| {
                (1..=n).flat_map(move |j| {
                    let signs = signs;
                    (0..if f.is_even() { 1 } else { 2 }).filter_map(move |s| {
                        let mut t = self.clone();
                        let new = (i, j, signs[s]);
                        if t.terms[k] == new {
                            return None;
                        }
                        t.terms[k] = new;
                        Some(t)
                    })
                })
            })
        })
    }
}

fn centralizer_with_det(base: &Mat, want: Felt) -> Option<Mat> {
    let f = base.field().clone();
    let id = Mat::identity(&f, base.n());
    for a1 in f.elements() {
        for a0 in f.elements() {
            let z = id.scale(a0).try_add(&base.scale(a1)).ok()?;
            if z.det() == want {
                return Some(z);
            }
        }
    }
    None
}

/// Checks that `word` over `base` multiplies to `want` with every conjugator
/// of determinant 1. Determinants are repaired first, by a common left
/// factor diag(δ⁻¹ at one coordinate) or by right factors from the
/// centralizer of `base`; either repair is re-checked.
pub(crate) fn certify(word: Word, base: &Mat, want: &Mat, what: &'static str) -> Result<Word, ConstructError> {
    let f = base.field().clone();
    if word.steps.iter().any(|s| s.c.det().is_zero()) {
        return Err(ConstructError::Formula(what));
    }
    if word.eval(base) != *want {
        return Err(ConstructError::Formula(what));
    }
    if word.steps.iter().all(|s| s.c.det() == Felt::ONE) {
        return Ok(word);
    }
    let d0 = word.steps[0].c.det();
    if word.steps.iter().all(|s| s.c.det() == d0) {
        let di = f.inv(d0)?;
        for i in 0..base.n() {
            let mut d = Mat::identity(&f, base.n());
            d.set(i, i, di);
            let w = word.conj(&d);
            if w.eval(base) == *want {
                return Ok(w);
            }
        }
    }
    let mut w = word;
    for s in w.steps.iter_mut() {
        let d = s.c.det();
        if d != Felt::ONE {
            let z = centralizer_with_det(base, f.inv(d)?).ok_or(ConstructError::Formula(what))?;
            s.c = &s.c * &z;
        }
    }
    if w.eval(base) == *want && w.steps.iter().all(|s| s.c.det() == Felt::ONE) {
        Ok(w)
    } else {
        Err(ConstructError::Formula(what))
    }
}

/// `red` over g multiplies to I_{n−2} ⊕ r; finish with the n = 2 routine on r.
fn finish_with_sl2(red: Word, r: &Mat, n: usize) -> Result<Partial, ConstructError> {
    let idx = [n - 2, n - 1];
    let p = sl2_partial(r)?;
    Ok(Partial { word: p.word.pad(n, &idx).subst(&red), target: p.target.embed(n, &idx) })
}

/// s(y) = I_{n−3} ⊕ (0 −1 y; 1 0 0; 0 0 1).
fn s_of(f: &Field, n: usize, y: Felt) -> Mat {
    let r = Mat::new(f, 3, alloc::vec![Felt::ZERO, f.neg(Felt::ONE), y, Felt::ONE, Felt::ZERO, Felt::ZERO, Felt::ZERO, Felt::ZERO, Felt::ONE]).unwrap();
    r.embed(n, &[n - 3, n - 2, n - 1])
}

fn m1(g: &Mat) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    let n = g.n();
    let m1 = f.neg(Felt::ONE);
    let s = [m1, Felt::ZERO, Felt::ONE].map(|y| s_of(&f, n, y));
    let word = Word::from_pairs(&[(s[0].clone(), -1), (s[1].clone(), 1), (s[2].clone(), -1), (s[1].clone(), 1)], "m1-reduction");
    let t1 = Mat::transvection(&f, n, n - 2, n - 1, Felt::ONE);
    let word = certify(word, g, &t1, "m1 reduction to I ⊕ h(1)")?;
    finish_with_sl2(word, &Mat::h(&f, Felt::ONE), n)
}

fn mn(g: &Mat) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    let n = g.n();
    let v = |y: Felt| {
        let mut m = e(&f, n, n - 1, 1).try_add(&e(&f, n, n - 2, 2)).unwrap();
        for i in 3..=n {
            m = m.try_add(&e(&f, n, n + 1 - i, i)).unwrap();
            let sign = if i % 2 == 1 { Felt::ONE } else { f.neg(Felt::ONE) };
            m = m.try_add(&e(&f, n, n, i).scale(sign)).unwrap();
        }
        m.try_add(&e(&f, n, n - 1, 2).scale(y)).unwrap()
    };
    let word = Word::from_pairs(&[(v(Felt::ONE), 1), (v(Felt::ZERO), -1)], "mn-reduction");
    let t1 = Mat::transvection(&f, n, n - 2, n - 1, Felt::ONE);
    let word = certify(word, g, &t1, "mn reduction to I ⊕ h(1)")?;
    finish_with_sl2(word, &Mat::h(&f, Felt::ONE), n)
}

fn t2_template(f: &Field, n: usize, c_top: Felt) -> Template {
    let one = Felt::ONE;
    let m1 = f.neg(one);
    let k = n / 2;
    let mut terms = Vec::new();
    if n == 6 {
        for (i, j) in [(1, 4), (2, 3), (2, 6), (3, 1), (4, 2), (6, 6)] {
            terms.push((i, j, one));
        }
        terms.push((4, 4, m1));
        terms.push((5, 5, m1));
        terms.push((5, 6, f.add(one, c_top)));
    } else {
        terms.push((1, n, one));
        terms.push((1, k + 1, if (k + 1) % 2 == 0 { one } else { m1 }));
        for i in 2..=k - 2 {
            terms.push((i, k + i, one));
        }
        for i in 1..=k {
            terms.push((k - 2 + i, i, one));
        }
        terms.push((n - 2, n - 2, m1));
        terms.push((n - 1, n - 1, m1));
        terms.push((n - 1, n, f.add(one, c_top)));
        terms.push((n, n, one));
    }
    Template { n, terms, param: None }
}

/// h = t₂⁻¹g⁻¹t₂·(t₂⁻¹t₁)g(t₂⁻¹t₁)⁻¹, then s(0)hs(0)⁻¹·s(−1)h⁻¹s(−1)⁻¹ = t₁.
fn m2_big_word(g: &Mat, t2: &Mat) -> Result<Word, ConstructError> {
    let f = g.field().clone();
    let n = g.n();
    let t1 = Mat::transvection(&f, n, n - 2, n - 1, Felt::ONE);
    let t2i = t2.inverse().map_err(|_| ConstructError::Formula("t₂ is invertible"))?;
    let inner = Word::from_pairs(&[(t2i.clone(), -1), (&t2i * &t1, 1)], "m2-reduction");
    let outer = Word::from_pairs(&[(s_of(&f, n, Felt::ZERO), 1), (s_of(&f, n, f.neg(Felt::ONE)), -1)], "m2-reduction");
    certify(outer.subst(&inner), g, &t1, "m2 reduction to t₁")
}

fn m2(g: &Mat, fpoly: &PolyF) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    let n = g.n();
    let d = fpoly.degree();
    if n == 4 {
        return m2_four(g, fpoly);
    }
    let tpl = t2_template(&f, n, fpoly.coeff(d - 1));
    let word = match m2_big_word(g, &tpl.build(&f, Felt::ZERO)) {
        Ok(w) => w,
        Err(_) => tpl
            .perturbations(&f)
            .find_map(|t| m2_big_word(g, &t.build(&f, Felt::ZERO)).ok())
            .ok_or(ConstructError::FallbackExhausted("m2 t₂"))?,
    };
    finish_with_sl2(word, &Mat::h(&f, Felt::ONE), n)
}

fn m2_four_word(g: &Mat, c0: Felt, tpl: &Template) -> Result<(Word, Mat), ConstructError> {
    let f = g.field().clone();
    let ci = f.inv(c0)?;
    let r = Mat::new(&f, 2, alloc::vec![Felt::ONE, Felt::ONE, ci, f.add(Felt::ONE, ci)])?;
    let want = r.embed(4, &[2, 3]);
    let word = Word::from_pairs(&[(tpl.build(&f, Felt::ZERO), 1), (tpl.build(&f, f.neg(Felt::ONE)), -1)], "m2-residue");
    Ok((certify(word, g, &want, "m2 (n = 4) residue")?, r))
}

/// The printed t(y) for n = 4.
pub(crate) fn t_four_template(f: &Field) -> Template {
    let m1 = f.neg(Felt::ONE);
    Template { n: 4, terms: alloc::vec![(2, 1, Felt::ONE), (3, 3, Felt::ONE), (4, 4, Felt::ONE), (1, 4, m1), (2, 1, m1)], param: Some((3, 4)) }
}

/// The first single-term replacement of the printed t(y) that satisfies the
/// residue identity for every irreducible quadratic over the field.
pub(crate) fn repaired_t_four(f: &Field) -> Option<Template> {
    let quads: Vec<PolyF> = PolyF::monic_of_degree(f, 2).filter(PolyF::is_irreducible).collect();
    let tpl = t_four_template(f);
    let works = |t: &Template| quads.iter().all(|p| m2_four_word(&block_matrix(p, 2), p.coeff(0), t).is_ok());
    if works(&tpl) {
        return Some(tpl);
    }
    let found = tpl.perturbations(f).find(|t| works(t));
    found
}

fn m2_four(g: &Mat, fpoly: &PolyF) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    let c0 = fpoly.coeff(0);
    let (word, r) = match m2_four_word(g, c0, &t_four_template(&f)) {
        Ok(x) => x,
        Err(_) => {
            let t = repaired_t_four(&f).ok_or(ConstructError::FallbackExhausted("m2 t(y) for n = 4"))?;
            m2_four_word(g, c0, &t)?
        }
    };
    finish_with_sl2(word, &r, 4)
}

/// Witness word for g already in the canonical shape of `case`, built on
/// the irreducible `f` of the single block.
pub(crate) fn block_partial(g: &Mat, f: &PolyF, case: Case) -> Result<Partial, ConstructError> {
    let n = g.n();
    if n < 3 {
        return Err(ConstructError::Shape("block cases need n ≥ 3"));
    }
    let m = n / f.degree();
    let expect = match case {
        Case::M1 if m == 1 => block_matrix(f, 1),
        Case::M2 if m == 2 && f.degree() >= 2 => block_matrix(f, 2),
        Case::Mn if f.degree() == 1 => block_matrix(f, n),
        _ => return Err(ConstructError::Shape("case does not match the block")),
    };
    if *g != expect {
        return Err(ConstructError::Shape("matrix is not in the canonical shape of its case"));
    }
    match case {
        Case::M1 => m1(g),
        Case::M2 => m2(g, f),
        _ => mn(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn irreducibles(f: &Field, d: usize) -> Vec<PolyF> {
        PolyF::monic_of_degree(f, d).filter(|p| p.is_irreducible() && p.coeff(0) != Felt::ZERO).collect()
    }

    fn check(p: &Partial, g: &Mat) {
        assert_eq!(p.word.eval(g), p.target);
        assert!(p.word.steps.iter().all(|s| s.c.det() == Felt::ONE));
        let t = &p.target;
        assert!(t.is_projective_involution() || (t * t).is_projective_involution(), "target {t}");
    }

    #[test]
    fn companion_cases() {
        for (q, n) in [(3, 3), (5, 3), (4, 3), (3, 4), (5, 4), (2, 5), (7, 3)] {
            let f = make_field(q).unwrap();
            for p in irreducibles(&f, n).into_iter().take(6) {
                let c0 = p.coeff(0);
                let det_ok = if n % 2 == 0 { c0 } else { f.neg(c0) } == Felt::ONE;
                let g = p.companion();
                if !det_ok {
                    continue;
                }
                let w = block_partial(&g, &p, Case::M1).unwrap();
                check(&w, &g);
            }
        }
    }

    #[test]
    fn jordan_block_cases() {
        for (q, n) in [(5, 3), (3, 3), (7, 4), (3, 5), (4, 3), (5, 6), (2, 5)] {
            let f = make_field(q).unwrap();
            for lam in f.units() {
                if f.pow(lam, n as i64).unwrap() != Felt::ONE {
                    continue;
                }
                let p = PolyF::linear(&f, lam);
                let g = block_matrix(&p, n);
                let w = block_partial(&g, &p, Case::Mn).unwrap();
                check(&w, &g);
                assert_eq!(w.word.steps.len() % 2, 0);
            }
        }
    }

    #[test]
    fn four_dimensional_m2_needs_the_repair() {
        for q in [5, 7, 9, 11] {
            let f = make_field(q).unwrap();
            assert!(t_four_template(&f).build(&f, Felt::ZERO).det().is_zero());
            assert!(repaired_t_four(&f).is_some(), "q = {q}");
            for p in irreducibles(&f, 2) {
                let g = block_matrix(&p, 2);
                if g.det() != Felt::ONE {
                    continue;
                }
                let w = block_partial(&g, &p, Case::M2).unwrap();
                check(&w, &g);
            }
        }
    }

    #[test]
    fn larger_m2() {
        for (q, d) in [(3, 3), (5, 3), (3, 4), (5, 4)] {
            let f = make_field(q).unwrap();
            for p in irreducibles(&f, d).into_iter().take(4) {
                let g = block_matrix(&p, 2);
                if g.det() != Felt::ONE {
                    continue;
                }
                let w = block_partial(&g, &p, Case::M2).unwrap();
                check(&w, &g);
            }
        }
    }
}
