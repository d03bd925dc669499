//! Polynomials over GF(q), characteristic polynomials and factorization.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::gf::{Felt, Field};
use crate::matrix::Mat;

/// Polynomial with coefficients constant term first. The zero polynomial has
/// no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyF {
    field: Field,
    coeffs: Vec<Felt>,
}

impl fmt::Debug for PolyF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PolyF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let show_coeff = *c != Felt::ONE || i == 0;
            if show_coeff {
                write!(f, "{}", c)?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

impl PolyF {
    pub fn new(field: &Field, mut coeffs: Vec<Felt>) -> PolyF {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyF { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> PolyF {
        PolyF::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> PolyF {
        PolyF::new(field, alloc::vec![Felt::ONE])
    }

    pub fn constant(field: &Field, c: Felt) -> PolyF {
        PolyF::new(field, alloc::vec![c])
    }

    /// x − λ.
    pub fn linear(field: &Field, lambda: Felt) -> PolyF {
        PolyF::new(field, alloc::vec![field.neg(lambda), Felt::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Felt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Felt {
        self.coeffs.get(i).copied().unwrap_or(Felt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Felt {
        self.coeffs.last().copied().unwrap_or(Felt::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Felt::ONE
    }

    pub fn add(&self, o: &PolyF) -> PolyF {
        let f = &self.field;
        let len = self.coeffs.len().max(o.coeffs.len());
        PolyF::new(f, (0..len).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &PolyF) -> PolyF {
        let f = &self.field;
        let len = self.coeffs.len().max(o.coeffs.len());
        PolyF::new(f, (0..len).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn scale(&self, c: Felt) -> PolyF {
        let f = &self.field;
        PolyF::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &PolyF) -> PolyF {
        if self.is_zero() || o.is_zero() {
            return PolyF::zero(&self.field);
        }
        let f = &self.field;
        let mut out = alloc::vec![Felt::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        PolyF::new(f, out)
    }

    pub fn pow(&self, e: usize) -> PolyF {
        (0..e).fold(PolyF::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &PolyF) -> (PolyF, PolyF) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        if r.len() < dl {
            return (PolyF::zero(f), self.clone());
        }
        let linv = f.inv(d.lead()).unwrap();
        let mut q = alloc::vec![Felt::ZERO; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dl - 1], linv);
            q[k] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &x) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, x));
            }
        }
        r.truncate(dl - 1);
        (PolyF::new(f, q), PolyF::new(f, r))
    }

    pub fn divides(&self, p: &PolyF) -> bool {
        p.divrem(self).1.is_zero()
    }

    pub fn eval(&self, x: Felt) -> Felt {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Felt::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// f(g) by Horner's rule.
    pub fn eval_mat(&self, g: &Mat) -> Mat {
        let f = &self.field;
        let n = g.n();
        let mut acc = Mat::zero(f, n);
        for &c in self.coeffs.iter().rev() {
            acc = (&acc * g).try_add(&Mat::scalar(f, n, c)).unwrap();
        }
        acc
    }

    /// Companion matrix: ones on the subdiagonal, last column −c₀, …, −c_{d−1}.
    pub fn companion(&self) -> Mat {
        assert!(self.is_monic() && self.degree() >= 1, "companion of a non-monic or constant polynomial");
        let f = &self.field;
        let d = self.degree();
        let mut m = Mat::zero(f, d);
        for i in 0..d {
            if i + 1 < d {
                m.set(i + 1, i, Felt::ONE);
            }
            m.set(i, d - 1, f.neg(self.coeffs[i]));
        }
        m
    }

    /// Ordering key: degree, then the companion's last column read as encodings.
    pub fn sort_key(&self) -> (usize, Vec<u32>) {
        let f = &self.field;
        let d = self.degree();
        (d, self.coeffs[..d].iter().map(|&c| f.neg(c).enc()).collect())
    }

    /// All monic polynomials of degree d, in [`PolyF::sort_key`] order.
    pub fn monic_of_degree(field: &Field, d: usize) -> impl Iterator<Item = PolyF> + '_ {
        let q = field.q() as u64;
        (0..q.pow(d as u32)).map(move |mut idx| {
            let mut coeffs = alloc::vec![Felt::ONE; d + 1];
            for i in (0..d).rev() {
                coeffs[i] = field.neg(Felt((idx % q) as u8));
                idx /= q;
            }
            PolyF::new(field, coeffs)
        })
    }

    pub fn is_irreducible(&self) -> bool {
        let d = self.degree();
        if d == 0 {
            return false;
        }
        (1..=d / 2).all(|k| PolyF::monic_of_degree(&self.field, k).all(|g| !g.divides(self)))
    }
}

impl PartialOrd for PolyF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyF {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Characteristic polynomial det(xI − g), via reduction to Hessenberg form.
pub fn charpoly(g: &Mat) -> PolyF {
    let f = g.field().clone();
    let n = g.n();
    let mut h: Vec<Vec<Felt>> = (0..n).map(|i| (0..n).map(|j| g.get(i, j)).collect()).collect();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let pinv = f.inv(h[j + 1][j]).unwrap();
        for r in j + 2..n {
            let t = f.mul(h[r][j], pinv);
            if t.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = f.mul(t, h[j + 1][c]);
                h[r][c] = f.sub(h[r][c], v);
            }
            for row in h.iter_mut() {
                let v = f.mul(t, row[r]);
                row[j + 1] = f.add(row[j + 1], v);
            }
        }
    }
    let mut p: Vec<PolyF> = alloc::vec![PolyF::one(&f)];
    for k in 1..=n {
        let mut pk = PolyF::linear(&f, h[k - 1][k - 1]).mul(&p[k - 1]);
        let mut t = Felt::ONE;
        for i in 1..k {
            t = f.mul(t, h[k - i][k - i - 1]);
            let c = f.mul(t, h[k - i - 1][k - 1]);
            pk = pk.sub(&p[k - i - 1].scale(c));
        }
        p.push(pk);
    }
    p.pop().unwrap()
}

/// Factorization of a monic polynomial into monic irreducibles with
/// multiplicities, sorted by [`PolyF::sort_key`].
pub fn factor(p: &PolyF) -> Vec<(PolyF, usize)> {
    let field = p.field().clone();
    let mut rest = p.clone();
    let mut out: Vec<(PolyF, usize)> = Vec::new();
    let mut d = 1;
    while rest.degree() >= 1 {
        if 2 * d > rest.degree() {
            let lead = field.inv(rest.lead()).unwrap();
            out.push((rest.scale(lead), 1));
            break;
        }
        for cand in PolyF::monic_of_degree(&field, d) {
            let mut m = 0;
            loop {
                let (q, r) = rest.divrem(&cand);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            if m > 0 {
                out.push((cand, m));
            }
            if 2 * d > rest.degree() {
                break;
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Factorization of the characteristic polynomial of g.
pub fn factor_charpoly(g: &Mat) -> Vec<(PolyF, usize)> {
    factor(&charpoly(g))
}
