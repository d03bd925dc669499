//! Breadth-first search in Cayley graphs Γ_C with generating set C ∪ C⁻¹.

use alloc::string::String;
use alloc::vec::Vec;

use super::{ClassTable, GroupTable};

/// C ∪ C⁻¹ as sorted element indices.
pub(crate) fn symmetric_class(g: &GroupTable, ct: &ClassTable, c: u32) -> Vec<u32> {
    let mut s: Vec<u32> = ct.members(c).to_vec();
    s.extend(ct.members(c).iter().map(|&x| g.inv(x)));
    s.sort_unstable();
    s.dedup();
    s
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(n: usize) -> Self {
        Bitset(alloc::vec![0; n.div_ceil(64)])
    }

    /// Sets bit i; returns true if it was clear.
    fn set(&mut self, i: u32) -> bool {
        let (w, b) = (i as usize / 64, i % 64);
        let was = self.0[w] >> b & 1;
        self.0[w] |= 1 << b;
        was == 0
    }
}

/// Level sets of the Cayley graph from the identity. Stops early once a
/// level contains an element satisfying `stop`.
fn levels_until(g: &GroupTable, gens: &[u32], stop: &dyn Fn(u32) -> bool) -> Vec<Vec<u32>> {
    let mut seen = Bitset::new(g.order());
    seen.set(0);
    let mut levels = alloc::vec![alloc::vec![0u32]];
    if stop(0) {
        return levels;
    }
    loop {
        let mut next = Vec::new();
        let mut hit = false;
        for &x in levels.last().unwrap() {
            for &s in gens {
                let y = g.mul(x, s);
                if seen.set(y) {
                    hit |= stop(y);
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            return levels;
        }
        levels.push(next);
        if hit {
            return levels;
        }
    }
}

/// Full level sets of Γ_C from the identity.
pub fn cayley_levels(g: &GroupTable, ct: &ClassTable, c: u32) -> Vec<Vec<u32>> {
    levels_until(g, &symmetric_class(g, ct, c), &|_| false)
}

/// d_C(H): the first BFS level meeting H, or `None` if H is unreachable.
pub fn dist_to_set(g: &GroupTable, ct: &ClassTable, c: u32, h: &dyn Fn(u32) -> bool) -> Option<usize> {
    let levels = levels_until(g, &symmetric_class(g, ct, c), h);
    levels.iter().position(|l| l.iter().any(|&x| h(x)))
}

#[derive(Clone, Debug)]
pub struct ClassDistance {
    pub class: u32,
    pub rep: u32,
    pub rep_text: String,
    pub size: usize,
    pub dist: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct DistanceReport {
    pub per_class: Vec<ClassDistance>,
    /// max over non-identity classes; `None` if some class cannot reach H
    pub d_h: Option<usize>,
    pub argmax: Vec<u32>,
}

/// d_C(Inv) for one class.
pub fn class_distance(g: &GroupTable, ct: &ClassTable, c: u32) -> ClassDistance {
    let rep = ct.reps[c as usize];
    ClassDistance {
        class: c,
        rep,
        rep_text: g.element_text(rep),
        size: ct.sizes[c as usize],
        dist: dist_to_set(g, ct, c, &|x| g.is_involution(x)),
    }
}

/// Classes whose distance to the involutions is reported: the non-central ones.
pub fn reported_classes(g: &GroupTable, ct: &ClassTable) -> Vec<u32> {
    (0..ct.len() as u32).filter(|&c| !g.is_central(ct.reps[c as usize])).collect()
}

/// d_C(Inv) for every non-central class, and the maximum.
pub fn d_inv(g: &GroupTable, ct: &ClassTable) -> DistanceReport {
    summarize(reported_classes(g, ct).into_iter().map(|c| class_distance(g, ct, c)).collect())
}

pub(crate) fn summarize(per_class: Vec<ClassDistance>) -> DistanceReport {
    let d_h = per_class.iter().map(|r| r.dist).try_fold(0, |acc, d| d.map(|d| acc.max(d)));
    let argmax = match d_h {
        Some(m) => per_class.iter().filter(|r| r.dist == Some(m)).map(|r| r.rep).collect(),
        None => per_class.iter().filter(|r| r.dist.is_none()).map(|r| r.rep).collect(),
    };
    DistanceReport { per_class, d_h, argmax }
}

impl DistanceReport {
    pub fn from_classes(per_class: Vec<ClassDistance>) -> DistanceReport {
        summarize(per_class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::GroupSpec;
    use crate::oracle::{build_group, classes, DEFAULT_ORDER_CAP};

    #[test]
    fn a5_and_a6() {
        let g = build_group(&GroupSpec::alt(5), DEFAULT_ORDER_CAP).unwrap();
        let ct = classes(&g);
        let r = d_inv(&g, &ct);
        assert_eq!(r.d_h, Some(3));
        for row in &r.per_class {
            let p = g.element_perm(row.rep).unwrap();
            let want = match p.cycle_type()[0] {
                2 => 1,
                3 => 2,
                5 => 3,
                _ => unreachable!(),
            };
            assert_eq!(row.dist, Some(want), "{}", row.rep_text);
        }
        let g6 = build_group(&GroupSpec::alt(6), DEFAULT_ORDER_CAP).unwrap();
        let r6 = d_inv(&g6, &classes(&g6));
        assert_eq!(r6.d_h, Some(2));
    }

    #[test]
    fn levels_are_set_products() {
        // level k = (C∪C⁻¹)^k minus earlier levels, by direct set products
        let g = build_group(&GroupSpec::psl(2, 9), DEFAULT_ORDER_CAP).unwrap();
        let ct = classes(&g);
        for c in 1..ct.len() as u32 {
            let gens = symmetric_class(&g, &ct, c);
            let levels = cayley_levels(&g, &ct, c);
            let mut power: Vec<u32> = alloc::vec![0];
            let mut seen: Vec<u32> = alloc::vec![0];
            for level in levels.iter().skip(1) {
                let mut next: Vec<u32> = power.iter().flat_map(|&x| gens.iter().map(move |&s| (x, s))).map(|(x, s)| g.mul(x, s)).collect();
                next.sort_unstable();
                next.dedup();
                let mut fresh: Vec<u32> = next.iter().copied().filter(|x| !seen.contains(x)).collect();
                fresh.sort_unstable();
                let mut l = level.clone();
                l.sort_unstable();
                assert_eq!(l, fresh);
                seen.extend(&fresh);
                power = next;
            }
            assert_eq!(seen.len(), g.order());
        }
    }

    #[test]
    fn involution_class_distance_one() {
        let g = build_group(&GroupSpec::sym(5), DEFAULT_ORDER_CAP).unwrap();
        let ct = classes(&g);
        for c in 1..ct.len() as u32 {
            if g.is_involution(ct.reps[c as usize]) {
                assert_eq!(dist_to_set(&g, &ct, c, &|x| g.is_involution(x)), Some(1));
            }
        }
    }
}
