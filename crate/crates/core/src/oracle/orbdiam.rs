//! Orbital graphs of the simple diagonal action of T².S₂ at k = 2.
//!
//! The coset of the diagonal through (a, b) is identified with a⁻¹b ∈ T, so
//! (x, y) acts by ω ↦ x⁻¹ωy and the swap acts by ω ↦ ω⁻¹.

use alloc::vec::Vec;

use super::bfs::{cayley_levels, d_inv, symmetric_class};
use super::{classes, GroupTable, OracleError};

#[derive(Clone, Debug)]
pub struct OrbDiamReport {
    /// Diameter of each non-diagonal orbital graph (`None` if disconnected).
    pub orbital_diameters: Vec<Option<usize>>,
    pub orbdiam: Option<usize>,
    /// max over non-identity classes of diam Γ_C
    pub d_t: usize,
    /// d(Inv(T)), the constant in the upper bound
    pub c: usize,
    /// every orbital graph has the same edge set as some Γ_C
    pub orbitals_match_cayley: bool,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

fn diameter(adj: &[Vec<u32>]) -> Option<usize> {
    let n = adj.len();
    let mut best = 0;
    for s in 0..n {
        let mut dist = alloc::vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = alloc::vec![s as u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head] as usize;
            head += 1;
            for &y in &adj[x] {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x] + 1;
                    queue.push(y);
                }
            }
        }
        if queue.len() < n {
            return None;
        }
        best = best.max(dist[queue[n - 1] as usize]);
    }
    Some(best)
}

/// The sandwich ½(k−1)d_T ≤ orbdiam ≤ 24·C·(k−1)·d_T at k = 2.
pub fn orbdiam_diag(t: &GroupTable, k: usize) -> Result<OrbDiamReport, OracleError> {
    if k != 2 {
        return Err(OracleError::UnsupportedK(k));
    }
    let n = t.order();
    let ct = classes(t);
    // actions on Ω = T
    let mut maps: Vec<Vec<u32>> = Vec::new();
    for &x in t.generators() {
        let xi = t.inv(x);
        maps.push((0..n as u32).map(|w| t.mul(xi, w)).collect());
        maps.push((0..n as u32).map(|w| t.mul(w, x)).collect());
    }
    maps.push((0..n as u32).map(|w| t.inv(w)).collect());

    // orbitals: orbits on Ω × Ω
    let mut orbital = alloc::vec![u32::MAX; n * n];
    let mut count = 0u32;
    for start in 0..n * n {
        if orbital[start] != u32::MAX {
            continue;
        }
        orbital[start] = count;
        let mut stack = alloc::vec![start];
        while let Some(p) = stack.pop() {
            let (a, b) = (p / n, p % n);
            for m in &maps {
                let q = m[a] as usize * n + m[b] as usize;
                if orbital[q] == u32::MAX {
                    orbital[q] = count;
                    stack.push(q);
                }
            }
        }
        count += 1;
    }
    let diag = orbital[0];

    let mut diameters = Vec::new();
    let mut all_match = true;
    for o in 0..count {
        if o == diag {
            continue;
        }
        let mut adj: Vec<Vec<u32>> = alloc::vec![Vec::new(); n];
        let mut some_pair = None;
        for p in 0..n * n {
            if orbital[p] == o {
                let (a, b) = (p / n, p % n);
                adj[a].push(b as u32);
                adj[b].push(a as u32);
                some_pair.get_or_insert((a as u32, b as u32));
            }
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        diameters.push(diameter(&adj));
        // compare with Γ_C for the class of b·a⁻¹
        let (a, b) = some_pair.unwrap();
        let c = ct.class_of[t.mul(b, t.inv(a)) as usize];
        let gens = symmetric_class(t, &ct, c);
        let same = (0..n as u32).all(|x| {
            let mut nb: Vec<u32> = gens.iter().map(|&s| t.mul(s, x)).collect();
            nb.sort_unstable();
            nb.dedup();
            nb == adj[x as usize]
        });
        all_match &= same;
    }
    let orbdiam = diameters.iter().try_fold(0, |acc, d| d.map(|d| acc.max(d)));
    let d_t = (1..ct.len() as u32).map(|c| cayley_levels(t, &ct, c).len() - 1).max().unwrap_or(0);
    let c = d_inv(t, &ct).d_h.unwrap_or(0);
    let (lower_holds, upper_holds) = match orbdiam {
        Some(od) => (d_t <= 2 * od, od <= 24 * c * d_t),
        None => (false, false),
    };
    Ok(OrbDiamReport {
        orbital_diameters: diameters,
        orbdiam,
        d_t,
        c,
        orbitals_match_cayley: all_match,
        lower_holds,
        upper_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::GroupSpec;
    use crate::oracle::{build_group, DEFAULT_ORDER_CAP};

    #[test]
    fn a5_sandwich() {
        let t = build_group(&GroupSpec::alt(5), DEFAULT_ORDER_CAP).unwrap();
        let r = orbdiam_diag(&t, 2).unwrap();
        assert!(r.orbitals_match_cayley);
        assert!(r.lower_holds && r.upper_holds);
        assert_eq!(r.c, 3);
        // every class of A5 is real, so one orbital per non-identity class
        assert_eq!(r.orbital_diameters.len(), 4);
        assert!(orbdiam_diag(&t, 3).is_err());
    }
}
