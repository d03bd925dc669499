//! The n = 2 routine: reduce g ∈ SL₂(q) to a transvection h(x) and turn
//! h(x) into t(x) with t(x)² = −I.

use crate::gf::Felt;
use crate::matrix::Mat;

use super::word::Word;
use super::{ConstructError, Partial};

fn check(ok: bool, what: &'static str) -> Result<(), ConstructError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructError::Formula(what))
    }
}

/// Word over g = h(x), x ≠ 0.
fn unipotent(g: &Mat) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    let x = g.get(0, 1);
    if f.is_even() {
        return Ok(Partial { word: Word::base(2, &f, "sl2-unipotent"), target: g.clone() });
    }
    let (alpha, beta) = f.pick_alpha()?;
    let x2 = f.mul(x, x);
    let gamma = f.sqrt(f.div(alpha, x2)?).ok_or(ConstructError::Formula("γ² = α/x² has no root"))?;
    let gi = f.inv(gamma)?;
    let m1 = f.neg(Felt::ONE);
    let s = Mat::new(&f, 2, alloc::vec![f.neg(f.mul(gamma, x)), f.sub(x, gi), gamma, m1])?;
    check(s.det() == Felt::ONE, "det s(x) = 1")?;
    let mut pairs = alloc::vec![(Mat::identity(&f, 2), 1i8)];
    for _ in 0..beta.unsigned_abs() {
        pairs.push((s.clone(), beta.signum() as i8));
    }
    let word = Word::from_pairs(&pairs, "sl2-unipotent");
    let t = word.eval(g);
    let want = Mat::new(&f, 2, alloc::vec![Felt::ONE, x, f.neg(f.div(f.from_int(2), x)?), m1])?;
    check(t == want, "h(x)s(x)h(x)^β s(x)⁻¹ = t(x)")?;
    check((&t * &t) == Mat::scalar(&f, 2, m1), "t(x)² = −I")?;
    Ok(Partial { word, target: t })
}

/// g = (a b; 0 a⁻¹), non-central.
fn first_form(g: &Mat) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    let (a, b) = (g.get(0, 0), g.get(0, 1));
    let id = Mat::identity(&f, 2);
    if a == Felt::ONE {
        return unipotent(g);
    }
    if a == f.neg(Felt::ONE) {
        let inner = Word::from_pairs(&[(id.clone(), 1), (id, 1)], "sl2-square");
        let x = inner.eval(g);
        check(x == Mat::h(&f, f.mul(f.from_int(-2), b)), "g² = h(−2b)")?;
        return Ok(unipotent(&x)?.after(inner));
    }
    let h1 = Mat::h(&f, Felt::ONE);
    let inner = Word::from_pairs(&[(h1, 1), (id, -1)], "sl2-commutator");
    let x = inner.eval(g);
    check(x == Mat::h(&f, f.sub(Felt::ONE, f.mul(a, a))), "h₁gh₁⁻¹g⁻¹ = h(1−a²)")?;
    Ok(unipotent(&x)?.after(inner))
}

/// g = (0 −a⁻¹; a b).
fn second_form(g: &Mat) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    let (a, b) = (g.get(1, 0), g.get(1, 1));
    let id = Mat::identity(&f, 2);
    let ai = f.inv(a)?;
    if b.is_zero() {
        check((g * g) == Mat::scalar(&f, 2, f.neg(Felt::ONE)), "g² = −I")?;
        return Ok(Partial { word: Word::base(2, &f, "sl2-involution"), target: g.clone() });
    }
    if !f.is_even() {
        let h2 = Mat::h(&f, f.mul(ai, b));
        let inner = Word::from_pairs(&[(h2, 1), (id, 1)], "sl2-second").repeat(2);
        let x = inner.eval(g);
        check(x == Mat::h(&f, f.mul(f.from_int(4), f.mul(ai, b))), "(h₂gh₂⁻¹g)² = h(4a⁻¹b)")?;
        return Ok(unipotent(&x)?.after(inner));
    }
    let c = f
        .units()
        .find(|&c| f.mul(c, c) != Felt::ONE)
        .ok_or(ConstructError::FieldTooSmall(f.q()))?;
    let ci = f.inv(c)?;
    let top = f.mul(f.mul(f.sub(f.mul(c, c), Felt::ONE), f.mul(b, ai)), ci);
    let h3 = Mat::new(&f, 2, alloc::vec![c, top, Felt::ZERO, ci])?;
    let inner = Word::from_pairs(&[(h3, 1), (id, -1)], "sl2-second");
    let x = inner.eval(g);
    let c2 = f.mul(c, c);
    check(x.get(1, 0).is_zero() && x.get(0, 0) == c2, "h₃gh₃⁻¹g⁻¹ is upper triangular with c² on the diagonal")?;
    Ok(first_form(&x)?.after(inner))
}

/// Any non-central g ∈ SL₂(q) for which the branches apply. Fails only
/// over GF(2) in the even second-form branch.
pub(crate) fn sl2_partial(g: &Mat) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    if g.n() != 2 {
        return Err(ConstructError::Shape("sl2 routine needs a 2×2 matrix"));
    }
    if g.det() != Felt::ONE {
        return Err(ConstructError::NotInGroup);
    }
    if g.is_scalar() {
        return Err(ConstructError::Central);
    }
    let g21 = g.get(1, 0);
    if g21.is_zero() {
        return first_form(g);
    }
    let u = Mat::h(&f, f.neg(f.div(g.get(0, 0), g21)?));
    let inner = Word::from_pairs(&[(u, 1)], "sl2-normalize");
    let x = inner.eval(g);
    check(x.get(0, 0).is_zero(), "normalized g has g₁₁ = 0")?;
    Ok(second_form(&x)?.after(inner))
}
