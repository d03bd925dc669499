//! Dense square matrices over GF(q), acting on column vectors.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::gf::{Felt, Field, GfError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("matrix is singular")]
    Singular,
    #[error("malformed matrix text: {0}")]
    Parse(String),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// The two bracketings of a commutator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CommutatorOrder {
    /// g·h·g⁻¹·h⁻¹
    GhGinvHinv,
    /// g⁻¹·h⁻¹·g·h
    #[default]
    GinvHinvGh,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    GL,
    SL,
    PGL,
    PSL,
    Sym,
    Alt,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PGL => "PGL",
            Family::PSL => "PSL",
            Family::Sym => "Sym",
            Family::Alt => "Alt",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Some(match s {
            "GL" | "gl" => Family::GL,
            "SL" | "sl" => Family::SL,
            "PGL" | "pgl" => Family::PGL,
            "PSL" | "psl" => Family::PSL,
            "Sym" | "sym" | "S" => Family::Sym,
            "Alt" | "alt" | "A" => Family::Alt,
            _ => return None,
        })
    }

    pub fn is_linear(self) -> bool {
        !matches!(self, Family::Sym | Family::Alt)
    }

    pub fn is_projective(self) -> bool {
        matches!(self, Family::PGL | Family::PSL)
    }

    pub fn needs_det_one(self) -> bool {
        matches!(self, Family::SL | Family::PSL)
    }
}

/// Names an ambient group: `family(n, q)`, with `q` absent for Sym/Alt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    pub q: Option<u32>,
}

impl GroupSpec {
    pub fn linear(family: Family, n: usize, q: u32) -> Self {
        GroupSpec { family, n, q: Some(q) }
    }

    pub fn sl(n: usize, q: u32) -> Self {
        Self::linear(Family::SL, n, q)
    }

    pub fn gl(n: usize, q: u32) -> Self {
        Self::linear(Family::GL, n, q)
    }

    pub fn psl(n: usize, q: u32) -> Self {
        Self::linear(Family::PSL, n, q)
    }

    pub fn sym(n: usize) -> Self {
        GroupSpec { family: Family::Sym, n, q: None }
    }

    pub fn alt(n: usize) -> Self {
        GroupSpec { family: Family::Alt, n, q: None }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            Some(q) => write!(f, "{}({},{})", self.family.name(), self.n, q),
            None => write!(f, "{}({})", self.family.name(), self.n),
        }
    }
}

/// Group-theoretic predicates of a matrix relative to a [`GroupSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub in_group: bool,
    pub central: bool,
    pub involution: bool,
    pub projective_involution: bool,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    n: usize,
    data: Vec<Felt>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{:?}]({})", self.field, self)
    }
}

/// Text form: rows separated by `;`, entries by `,`.
impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.data[i * self.n + j])?;
            }
        }
        Ok(())
    }
}

impl Mat {
    pub fn new(field: &Field, n: usize, data: Vec<Felt>) -> Result<Mat, MatError> {
        if data.len() != n * n {
            return Err(MatError::DimensionMismatch(data.len(), n * n));
        }
        if let Some(x) = data.iter().find(|x| !field.contains(**x)) {
            return Err(GfError::NotInField { enc: x.enc(), q: field.q() }.into());
        }
        Ok(Mat { field: field.clone(), n, data })
    }

    /// From rows of encodings.
    pub fn from_rows(field: &Field, rows: &[&[u32]]) -> Result<Mat, MatError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(MatError::DimensionMismatch(r.len(), n));
            }
            for &e in r.iter() {
                data.push(field.elem(e)?);
            }
        }
        Mat::new(field, n, data)
    }

    /// From column vectors.
    pub fn from_columns(field: &Field, cols: &[Vec<Felt>]) -> Result<Mat, MatError> {
        let n = cols.len();
        let mut m = Mat::zero(field, n);
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n {
                return Err(MatError::DimensionMismatch(c.len(), n));
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn parse(field: &Field, text: &str) -> Result<Mat, MatError> {
        let rows: Vec<&str> = text.trim().split(';').collect();
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in &rows {
            let entries: Vec<&str> = r.split(',').collect();
            if entries.len() != n {
                return Err(MatError::Parse(format!(
                    "row `{}` has {} entries, expected {}",
                    r.trim(),
                    entries.len(),
                    n
                )));
            }
            for e in entries {
                let v: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| MatError::Parse(format!("bad entry `{}`", e.trim())))?;
                data.push(field.elem(v)?);
            }
        }
        Mat::new(field, n, data)
    }

    pub fn zero(field: &Field, n: usize) -> Mat {
        Mat { field: field.clone(), n, data: alloc::vec![Felt::ZERO; n * n] }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        Mat::scalar(field, n, Felt::ONE)
    }

    pub fn scalar(field: &Field, n: usize, lambda: Felt) -> Mat {
        let mut m = Mat::zero(field, n);
        for i in 0..n {
            m.set(i, i, lambda);
        }
        m
    }

    pub fn diag(field: &Field, d: &[Felt]) -> Mat {
        let mut m = Mat::zero(field, d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// The elementary matrix E_{ij} (0-based indices).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(field, n);
        m.set(i, j, Felt::ONE);
        m
    }

    /// I + λE_{ij}, i ≠ j (0-based).
    pub fn transvection(field: &Field, n: usize, i: usize, j: usize, lambda: Felt) -> Mat {
        let mut m = Mat::identity(field, n);
        m.set(i, j, lambda);
        m
    }

    /// The 2×2 transvection h(x) = I + xE₁₂.
    pub fn h(field: &Field, x: Felt) -> Mat {
        Mat::transvection(field, 2, 0, 1, x)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Felt] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Felt) {
        self.data[i * self.n + j] = x;
    }

    fn check_compat(&self, other: &Mat) -> Result<(), MatError> {
        if self.field != other.field {
            return Err(MatError::FieldMismatch(self.field.q(), other.field.q()));
        }
        if self.n != other.n {
            return Err(MatError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_compat(other)?;
        let (n, f) = (self.n, &self.field);
        let mut out = Mat::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.data[k * n + j]));
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_compat(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Mat { field: f.clone(), n: self.n, data })
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_compat(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Mat { field: f.clone(), n: self.n, data })
    }

    pub fn scale(&self, lambda: Felt) -> Mat {
        let f = &self.field;
        Mat { field: f.clone(), n: self.n, data: self.data.iter().map(|&a| f.mul(a, lambda)).collect() }
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Felt]) -> Vec<Felt> {
        let (n, f) = (self.n, &self.field);
        (0..n)
            .map(|i| (0..n).fold(Felt::ZERO, |acc, j| f.add(acc, f.mul(self.data[i * n + j], v[j]))))
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Felt> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(&self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn trace(&self) -> Felt {
        (0..self.n).fold(Felt::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn det(&self) -> Felt {
        let (n, f) = (self.n, &self.field);
        let mut a = self.data.clone();
        let mut det = Felt::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Felt::ZERO;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = f.mul(det, p);
            let pinv = f.inv(p).unwrap();
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Mat, MatError> {
        let (n, f) = (self.n, &self.field);
        let mut a = self.data.clone();
        let mut b = Mat::identity(f, n).data;
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r * n + col].is_zero()).ok_or(MatError::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    b.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = f.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                b[col * n + j] = f.mul(b[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    b[r * n + j] = f.sub(b[r * n + j], f.mul(factor, b[col * n + j]));
                }
            }
        }
        Ok(Mat { field: f.clone(), n, data: b })
    }

    /// Integer power by repeated squaring; negative powers invert first.
    pub fn pow(&self, e: i64) -> Result<Mat, MatError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Mat::identity(&self.field, self.n);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// c·g·c⁻¹.
    pub fn conjugate(&self, c: &Mat) -> Result<Mat, MatError> {
        self.check_compat(c)?;
        Ok(&(c * self) * &c.inverse()?)
    }

    pub fn commutator(&self, h: &Mat, order: CommutatorOrder) -> Result<Mat, MatError> {
        self.check_compat(h)?;
        let gi = self.inverse()?;
        let hi = h.inverse()?;
        Ok(match order {
            CommutatorOrder::GhGinvHinv => &(&(self * h) * &gi) * &hi,
            CommutatorOrder::GinvHinvGh => &(&(&gi * &hi) * self) * h,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value() == Some(Felt::ONE)
    }

    /// λ if the matrix is λI.
    pub fn scalar_value(&self) -> Option<Felt> {
        let l = self.get(0, 0);
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if i == j { l } else { Felt::ZERO };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(l)
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    /// Non-scalar with square ±I.
    pub fn is_projective_involution(&self) -> bool {
        if self.is_scalar() {
            return false;
        }
        let minus_one = self.field.neg(Felt::ONE);
        matches!((self * self).scalar_value(), Some(l) if l == Felt::ONE || l == minus_one)
    }

    pub fn classify(&self, spec: &GroupSpec) -> Classification {
        let shape_ok = spec.family.is_linear() && spec.n == self.n && spec.q == Some(self.field.q());
        let det = self.det();
        let in_group = shape_ok && !det.is_zero() && (!spec.family.needs_det_one() || det == Felt::ONE);
        let central = self.is_scalar();
        let sq = self * self;
        Classification {
            in_group,
            central,
            involution: sq.is_identity() && !self.is_identity(),
            projective_involution: self.is_projective_involution(),
        }
    }

    /// Sub-matrix on the given rows and columns (0-based, in order).
    pub fn submatrix(&self, idx: &[usize]) -> Mat {
        let k = idx.len();
        let mut m = Mat::zero(&self.field, k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    /// The n×n matrix acting as `self` on coordinates `idx` and as the
    /// identity elsewhere.
    pub fn embed(&self, n: usize, idx: &[usize]) -> Mat {
        let mut m = Mat::identity(&self.field, n);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(i, j, self.get(a, b));
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let n = self.n + other.n;
        let mut m = Mat::zero(&self.field, n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.set(self.n + i, self.n + j, other.get(i, j));
            }
        }
        m
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank_of_rows(&self.field, self.n, self.data.chunks(self.n).map(|r| r.to_vec()).collect())
    }

    /// Basis of the right kernel {v : Mv = 0}.
    pub fn kernel(&self) -> Vec<Vec<Felt>> {
        let (n, f) = (self.n, &self.field);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(piv) = (row..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                a.swap(piv * n + j, row * n + j);
            }
            let pinv = f.inv(a[row * n + col]).unwrap();
            for j in 0..n {
                a[row * n + j] = f.mul(a[row * n + j], pinv);
            }
            for r in 0..n {
                if r != row && !a[r * n + col].is_zero() {
                    let factor = a[r * n + col];
                    for j in 0..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[row * n + j]));
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = alloc::vec![Felt::ZERO; n];
                v[fc] = Felt::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(a[r * n + fc]);
                }
                v
            })
            .collect()
    }
}

/// Rank of a list of row vectors of length `n`.
pub fn rank_of_rows(f: &Field, n: usize, mut rows: Vec<Vec<Felt>>) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(piv, rank);
        let pinv = f.inv(rows[rank][col]).unwrap();
        for r in rank + 1..rows.len() {
            let factor = f.mul(rows[r][col], pinv);
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let v = f.mul(factor, rows[rank][j]);
                rows[r][j] = f.sub(rows[r][j], v);
            }
        }
        rank += 1;
    }
    rank
}

/// Panics on dimension or field mismatch; [`Mat::try_mul`] is the checked form.
impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("matrix product of incompatible operands")
    }
}
