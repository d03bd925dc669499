//! Conjugacy class representatives of SL_n(q) from rational canonical data.
//!
//! A GL_n(q) class is a choice of partition λ_f for each monic irreducible
//! f ≠ x with Σ deg(f)·|λ_f| = n. When it meets SL_n(q) it splits into
//! gcd(λ-parts, q − 1) classes, represented by conjugating with diag(ωⁱ, 1, …).

use alloc::vec::Vec;

use super::{blocks_matrix, Block, PolyF};
use crate::gf::{Felt, Field};
use crate::matrix::Mat;

fn partitions(k: usize, max: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=k.min(max)).rev() {
        for mut rest in partitions(k - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All (f, λ_f) assignments of total dimension n, in a fixed order.
fn gl_types(field: &Field, n: usize) -> Vec<Vec<(PolyF, Vec<usize>)>> {
    let irr: Vec<PolyF> = (1..=n)
        .flat_map(|d| PolyF::monic_of_degree(field, d).filter(|p| !p.coeff(0).is_zero() && p.is_irreducible()).collect::<Vec<_>>())
        .collect();
    let mut out = Vec::new();
    fn rec(
        irr: &[PolyF],
        i: usize,
        left: usize,
        cur: &mut Vec<(PolyF, Vec<usize>)>,
        out: &mut Vec<Vec<(PolyF, Vec<usize>)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == irr.len() {
            return;
        }
        rec(irr, i + 1, left, cur, out);
        let d = irr[i].degree();
        for k in 1..=left / d {
            for lam in partitions(k, k) {
                cur.push((irr[i].clone(), lam));
                rec(irr, i + 1, left - d * k, cur, out);
                cur.pop();
            }
        }
    }
    rec(&irr, 0, n, &mut Vec::new(), &mut out);
    out
}

fn type_blocks(t: &[(PolyF, Vec<usize>)]) -> Vec<Block> {
    t.iter().flat_map(|(f, lam)| lam.iter().map(|&m| Block { f: f.clone(), m })).collect()
}

/// Number of conjugacy classes of GL_n(q).
pub fn gl_class_count(field: &Field, n: usize) -> usize {
    gl_types(field, n).len()
}

/// One representative of each non-central conjugacy class of SL_n(q).
pub fn sl_class_reps(field: &Field, n: usize) -> Vec<Mat> {
    let omega = field.primitive();
    let qm1 = field.q() as usize - 1;
    let mut out = Vec::new();
    for t in gl_types(field, n) {
        let blocks = type_blocks(&t);
        let g = blocks_matrix(field, &blocks);
        if g.det() != Felt::ONE || g.is_scalar() {
            continue;
        }
        let parts = blocks.iter().fold(0, |acc, b| gcd(acc, b.m));
        let split = gcd(parts, qm1);
        for i in 0..split {
            let mut d = alloc::vec![Felt::ONE; n];
            d[0] = field.pow(omega, i as i64).unwrap();
            let c = Mat::diag(field, &d);
            out.push(g.conjugate(&c).unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn partition_counts() {
        let p: Vec<usize> = (0..8).map(|k| partitions(k, k).len()).collect();
        assert_eq!(p, alloc::vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn gl_counts() {
        // k(GL_2(q)) = q² − 1, k(GL_3(q)) = q³ − q
        for q in [2, 3, 4, 5] {
            let f = make_field(q).unwrap();
            let q = q as usize;
            assert_eq!(gl_class_count(&f, 2), q * q - 1);
            assert_eq!(gl_class_count(&f, 3), q * q * q - q);
        }
    }

    #[test]
    fn sl2_counts() {
        // k(SL_2(q)) = q + 4 for odd q, q + 1 for even q; the center has gcd(2, q−1) elements
        for q in [3u32, 4, 5, 7, 8, 9] {
            let f = make_field(q).unwrap();
            let total = if q % 2 == 1 { q + 4 } else { q + 1 };
            let centre = if q % 2 == 1 { 2 } else { 1 };
            assert_eq!(sl_class_reps(&f, 2).len() as u32, total - centre, "q={q}");
        }
    }

    #[test]
    fn reps_are_in_sl_and_non_central() {
        let f = make_field(4).unwrap();
        for g in sl_class_reps(&f, 3) {
            assert_eq!(g.det(), Felt::ONE);
            assert!(!g.is_scalar());
        }
    }
}
