//! Counting solutions of x₁⋯x_k = t with each xᵢ in a prescribed union of classes.

use alloc::vec::Vec;

use super::{ClassTable, GroupTable};

fn members_of(ct: &ClassTable, set: &[u32]) -> Vec<u32> {
    set.iter().flat_map(|&c| ct.members(c).iter().copied()).collect()
}

/// Exact count of tuples (x₁, …, x_k) with xᵢ in the union of the classes
/// `factors[i]` and x₁⋯x_k = `target`.
///
/// The number of ways to reach an element depends only on its class, so the
/// partial products are tracked as one count per class.
pub fn class_product_count(g: &GroupTable, ct: &ClassTable, factors: &[Vec<u32>], target: u32) -> u128 {
    assert!(!factors.is_empty(), "at least one factor");
    let k = ct.len();
    let mut cnt = alloc::vec![0u128; k];
    for &c in &factors[0] {
        cnt[c as usize] = 1;
    }
    for f in &factors[1..] {
        let elems = members_of(ct, f);
        let inv: Vec<u32> = elems.iter().map(|&y| g.inv(y)).collect();
        cnt = (0..k)
            .map(|kc| {
                let r = ct.reps[kc];
                inv.iter().map(|&yi| cnt[ct.class_of[g.mul(r, yi) as usize] as usize]).sum()
            })
            .collect();
    }
    cnt[ct.class_of[target as usize] as usize]
}

/// The same count by enumerating all tuples; exponential in k, for cross-checks.
pub fn class_product_count_direct(g: &GroupTable, ct: &ClassTable, factors: &[Vec<u32>], target: u32) -> u128 {
    let sets: Vec<Vec<u32>> = factors.iter().map(|f| members_of(ct, f)).collect();
    fn go(g: &GroupTable, sets: &[Vec<u32>], acc: u32, target: u32) -> u128 {
        match sets.split_first() {
            None => (acc == target) as u128,
            Some((s, rest)) if rest.is_empty() => {
                // the last factor is forced
                let need = g.mul(g.inv(acc), target);
                s.binary_search(&need).is_ok() as u128
            }
            Some((s, rest)) => s.iter().map(|&x| go(g, rest, g.mul(acc, x), target)).sum(),
        }
    }
    let mut sets = sets;
    for s in sets.iter_mut() {
        s.sort_unstable();
    }
    go(g, &sets, 0, target)
}
