//! Exact evaluation of the character-sum bounds used for GL, GU, Sp and O,
//! and scans that recover the parameter sets where a bound fails to be < 1.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::gf::prime_power;

/// A non-negative rational in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: BigUint,
    den: BigUint,
}

impl Ratio {
    pub fn new(num: BigUint, den: BigUint) -> Ratio {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        if g.is_one() || g.is_zero() {
            return Ratio { num, den };
        }
        Ratio { num: num / &g, den: den / g }
    }

    pub fn int(n: u64) -> Ratio {
        Ratio { num: n.into(), den: BigUint::one() }
    }

    pub fn frac(n: u64, d: u64) -> Ratio {
        Ratio::new(n.into(), d.into())
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn mul(&self, o: &Ratio) -> Ratio {
        Ratio::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Ratio) -> Ratio {
        Ratio::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn add(&self, o: &Ratio) -> Ratio {
        Ratio::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }

    pub fn pow(&self, e: u32) -> Ratio {
        Ratio { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn lt_one(&self) -> bool {
        self.num < self.den
    }

    /// Rough value for display.
    pub fn to_f64(&self) -> f64 {
        // shift both sides down so the quotient fits
        let shift = self.num.bits().max(self.den.bits()).saturating_sub(60);
        let n = (&self.num >> shift).iter_u64_digits().next().unwrap_or(0) as f64;
        let d = (&self.den >> shift).iter_u64_digits().next().unwrap_or(0) as f64;
        if d == 0.0 {
            return f64::INFINITY;
        }
        n / d
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, o: &Ratio) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Ratio {
    fn cmp(&self, o: &Ratio) -> Ordering {
        (&self.num * &o.den).cmp(&(&o.num * &self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundFamily {
    /// 2.5·q^{−3n+9}
    GlMn,
    /// q^{−3n+10}
    GlM1,
    /// 8.26q^{n−1}((q+1)q^{n−1})⁶ / ((qⁿ−q)/(q+1))¹⁰
    GuI,
    /// as GU-i with k(G) ≤ 8.26qⁿ
    GuII,
    /// |Σ₁| + |Σ₂| for Sp_{2m}(q), q odd
    SpOdd,
    /// 15.2q^m(2q^m)⁶ / D¹⁰ for Sp_{2m}(q), q even
    SpEven,
    /// 15q^m(2q^m)⁶ / d_G¹⁰
    O,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 7] =
        [BoundFamily::GlMn, BoundFamily::GlM1, BoundFamily::GuI, BoundFamily::GuII, BoundFamily::SpOdd, BoundFamily::SpEven, BoundFamily::O];

    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::GlMn => "GL-m=n",
            BoundFamily::GlM1 => "GL-m=1",
            BoundFamily::GuI => "GU-i",
            BoundFamily::GuII => "GU-ii",
            BoundFamily::SpOdd => "Sp-odd",
            BoundFamily::SpEven => "Sp-even",
            BoundFamily::O => "O",
        }
    }

    pub fn from_name(s: &str) -> Option<BoundFamily> {
        let s = s.to_ascii_lowercase();
        BoundFamily::ALL.into_iter().find(|f| f.name().to_ascii_lowercase() == s)
    }

    /// Sp families are indexed by m; the others by n.
    pub fn rank_symbol(self) -> &'static str {
        match self {
            BoundFamily::SpOdd | BoundFamily::SpEven => "m",
            _ => "n",
        }
    }

    /// Smallest rank in the default scan.
    pub fn min_rank(self) -> u32 {
        match self {
            BoundFamily::GlMn | BoundFamily::GlM1 | BoundFamily::GuI | BoundFamily::GuII => 4,
            BoundFamily::SpOdd | BoundFamily::SpEven => 2,
            BoundFamily::O => 7,
        }
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundParams {
    /// n, or m for the Sp families
    pub rank: u32,
    pub q: u32,
    /// ε = ±1 for even-dimensional orthogonal groups
    pub eps: Option<i8>,
}

impl fmt::Display for BoundParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.eps {
            Some(e) => write!(f, "({},{},{})", self.rank, self.q, if e > 0 { "+" } else { "-" }),
            None => write!(f, "({},{})", self.rank, self.q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub family: BoundFamily,
    pub params: BoundParams,
    pub value: Ratio,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("{family} at {params}: {reason}")]
    OutOfDomain { family: BoundFamily, params: BoundParams, reason: String },
}

/// The small GU cases settled separately: n = 3 (q ≤ 7), n = 4 (q ≤ 3), (5,2), (6,2).
pub fn gu_excluded(n: u32, q: u32) -> bool {
    (n == 3 && q <= 7) || (n == 4 && q <= 3) || (n, q) == (5, 2) || (n, q) == (6, 2)
}

fn qpow(q: u32, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

fn r(n: BigUint) -> Ratio {
    Ratio { num: n, den: BigUint::one() }
}

/// (q^m−1)(q^m−q)/(2(q+1)), the minimal non-Weil degree of Sp_{2m}(q).
fn sp_degree(m: u32, q: u32) -> Ratio {
    let qm = qpow(q, m);
    Ratio::new((&qm - 1u32) * (&qm - q), BigUint::from(2 * (q + 1)))
}

/// The degree bound d_G for orthogonal groups in dimension n.
fn orth_degree(n: u32, q: u32, eps: Option<i8>) -> Ratio {
    let q2 = BigUint::from(q * q - 1);
    if n % 2 == 1 {
        let m = (n - 1) / 2;
        if q >= 5 {
            Ratio::new(qpow(q, 2 * m) - 1u32, q2)
        } else {
            sp_degree(m, q)
        }
    } else {
        let m = n / 2;
        let e = eps.unwrap_or(1);
        if e > 0 && (q == 2 || q == 3) {
            Ratio::new((qpow(q, m) - 1u32) * (qpow(q, m - 1) - 1u32), q2)
        } else if e > 0 {
            Ratio::new((qpow(q, m) - 1u32) * (qpow(q, m - 1) + q), q2)
        } else {
            // (q^m + 1)(q^{m−1} − q)
            Ratio::new((qpow(q, m) + 1u32) * (qpow(q, m - 1) - q), q2)
        }
    }
}

/// c·q^m·(2q^m)⁶ / d¹⁰
fn centralizer_sum(c: Ratio, q: u32, m: u32, d: &Ratio) -> Ratio {
    let qm = qpow(q, m);
    let cent = (&qm << 1usize).pow(6);
    c.mul(&r(qm * cent)).div(&d.pow(10))
}

fn check_domain(family: BoundFamily, p: BoundParams) -> Result<(), BoundError> {
    let bad = |reason: &str| Err(BoundError::OutOfDomain { family, params: p, reason: reason.into() });
    if prime_power(p.q).is_none() {
        return bad("q is not a prime power");
    }
    let (n, q) = (p.rank, p.q);
    let needs_eps = family == BoundFamily::O && n % 2 == 0;
    if needs_eps != p.eps.is_some() {
        return bad(if needs_eps { "even-dimensional O needs ε" } else { "ε applies only to even-dimensional O" });
    }
    if matches!(p.eps, Some(e) if e != 1 && e != -1) {
        return bad("ε must be ±1");
    }
    match family {
        BoundFamily::GlMn | BoundFamily::GlM1 if n < 2 => bad("n ≥ 2"),
        BoundFamily::GuI | BoundFamily::GuII if n < 4 => bad("n ≥ 4 (n = 3 is handled separately)"),
        BoundFamily::GuI | BoundFamily::GuII if gu_excluded(n, q) => bad("small case settled separately"),
        BoundFamily::SpOdd if n < 2 || q % 2 == 0 => bad("m ≥ 2 and q odd"),
        BoundFamily::SpEven if n < 2 || q % 2 == 1 => bad("m ≥ 2 and q even"),
        BoundFamily::O if n < 7 => bad("n ≥ 7"),
        BoundFamily::O if n % 2 == 1 && q % 2 == 0 => bad("odd n needs q odd"),
        BoundFamily::O if n == 8 && q == 2 && p.eps == Some(1) => bad("(m,q,ε) = (4,2,+) is excluded"),
        _ => Ok(()),
    }
}

/// The exact value of the bound for `family` at `params`, and whether it is < 1.
pub fn proof_bound(family: BoundFamily, params: BoundParams) -> Result<BoundVerdict, BoundError> {
    check_domain(family, params)?;
    let (n, q) = (params.rank, params.q);
    let value = match family {
        BoundFamily::GlMn | BoundFamily::GlM1 => {
            let (c, e) = match family {
                BoundFamily::GlMn => (Ratio::frac(5, 2), 9 - 3 * n as i64),
                _ => (Ratio::int(1), 10 - 3 * n as i64),
            };
            let p = r(qpow(q, e.unsigned_abs() as u32));
            if e >= 0 {
                c.mul(&p)
            } else {
                c.div(&p)
            }
        }
        BoundFamily::GuI | BoundFamily::GuII => {
            let k = if family == BoundFamily::GuI { n - 1 } else { n };
            let cent = BigUint::from(q + 1) * qpow(q, n - 1);
            let deg = Ratio::new(qpow(q, n) - q, BigUint::from(q + 1));
            Ratio::frac(826, 100).mul(&r(qpow(q, k) * cent.pow(6))).div(&deg.pow(10))
        }
        BoundFamily::SpOdd => {
            let d = sp_degree(n, q);
            // 4·(q^{1/2}/2)¹² = 4q⁶/4096
            let s1 = Ratio::new(qpow(q, 6) * 4u32, BigUint::from(4096u32)).div(&d.pow(10));
            let s2 = centralizer_sum(Ratio::frac(108, 10), q, n, &d);
            s1.add(&s2)
        }
        BoundFamily::SpEven => centralizer_sum(Ratio::frac(152, 10), q, n, &sp_degree(n, q)),
        BoundFamily::O => centralizer_sum(Ratio::int(15), q, n / 2, &orth_degree(n, q, params.eps)),
    };
    let holds = value.lt_one();
    Ok(BoundVerdict { family, params, value, holds })
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub family: BoundFamily,
    pub verdicts: Vec<BoundVerdict>,
    /// parameters with value ≥ 1
    pub exceptions: Vec<BoundParams>,
    /// points in the rectangle outside the family's domain
    pub skipped: Vec<(BoundParams, String)>,
    /// pairs (a, b) of neighbouring scan points with value(b) > value(a)
    pub monotonicity_violations: Vec<(BoundParams, BoundParams)>,
}

/// Prime powers q ≤ qmax admissible for the family.
fn scan_qs(family: BoundFamily, qmax: u32) -> Vec<u32> {
    crate::gf::prime_powers_up_to(qmax)
        .into_iter()
        .filter(|&q| match family {
            BoundFamily::SpOdd => q % 2 == 1,
            BoundFamily::SpEven => q % 2 == 0,
            _ => true,
        })
        .collect()
}

/// Evaluates every (rank, q[, ε]) with min_rank ≤ rank ≤ `rank_max` and q ≤ `qmax`.
pub fn scan(family: BoundFamily, rank_max: u32, qmax: u32) -> ScanReport {
    let qs = scan_qs(family, qmax);
    let mut verdicts = Vec::new();
    let mut skipped = Vec::new();
    for rank in family.min_rank()..=rank_max {
        for &q in &qs {
            let epss: &[Option<i8>] = if family == BoundFamily::O && rank % 2 == 0 { &[Some(1), Some(-1)] } else { &[None] };
            for &eps in epss {
                let params = BoundParams { rank, q, eps };
                if family == BoundFamily::O && rank % 2 == 1 && q % 2 == 0 {
                    continue;
                }
                match proof_bound(family, params) {
                    Ok(v) => verdicts.push(v),
                    Err(BoundError::OutOfDomain { reason, .. }) => skipped.push((params, reason)),
                }
            }
        }
    }
    let exceptions = verdicts.iter().filter(|v| !v.holds).map(|v| v.params).collect();
    let monotonicity_violations = monotonicity(&verdicts);
    ScanReport { family, verdicts, exceptions, skipped, monotonicity_violations }
}

/// Neighbouring points along q at fixed (rank, ε) and along rank at fixed
/// (q, ε, rank parity for O) where the value increases.
fn monotonicity(vs: &[BoundVerdict]) -> Vec<(BoundParams, BoundParams)> {
    let mut bad = Vec::new();
    let mut check = |key: &dyn Fn(&BoundParams) -> (u32, u32, i8), order: &dyn Fn(&BoundParams) -> u32| {
        let mut groups: Vec<((u32, u32, i8), Vec<&BoundVerdict>)> = Vec::new();
        for v in vs {
            let k = key(&v.params);
            match groups.iter_mut().find(|(g, _)| *g == k) {
                Some((_, l)) => l.push(v),
                None => groups.push((k, alloc::vec![v])),
            }
        }
        for (_, mut l) in groups {
            l.sort_by_key(|v| order(&v.params));
            for w in l.windows(2) {
                if w[1].value > w[0].value {
                    bad.push((w[0].params, w[1].params));
                }
            }
        }
    };
    let eps = |p: &BoundParams| p.eps.unwrap_or(0);
    check(&|p| (p.rank, 0, eps(p)), &|p| p.q);
    check(&|p| (p.q, p.rank % 2, eps(p)), &|p| p.rank);
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rank: u32, q: u32) -> BoundParams {
        BoundParams { rank, q, eps: None }
    }

    #[test]
    fn gl_example() {
        let v = proof_bound(BoundFamily::GlMn, p(4, 2)).unwrap();
        assert_eq!(v.value, Ratio::frac(5, 16));
        assert!(v.holds);
        assert_eq!(proof_bound(BoundFamily::GlM1, p(4, 2)).unwrap().value, Ratio::frac(1, 4));
        assert_eq!(proof_bound(BoundFamily::GlMn, p(3, 3)).unwrap().value, Ratio::frac(5, 2));
    }

    #[test]
    fn ratio_arithmetic() {
        let a = Ratio::frac(6, 8);
        assert_eq!(a, Ratio::frac(3, 4));
        assert_eq!(a.add(&Ratio::frac(1, 4)), Ratio::int(1));
        assert!(!Ratio::int(1).lt_one());
        assert!(Ratio::frac(3, 4) < Ratio::frac(4, 5));
        assert_eq!(Ratio::frac(2, 3).pow(3), Ratio::frac(8, 27));
        assert!((Ratio::frac(1, 3).to_f64() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn domains() {
        assert!(proof_bound(BoundFamily::SpOdd, p(2, 4)).is_err());
        assert!(proof_bound(BoundFamily::O, p(8, 3)).is_err());
        assert!(proof_bound(BoundFamily::O, BoundParams { rank: 8, q: 2, eps: Some(1) }).is_err());
        assert!(proof_bound(BoundFamily::O, BoundParams { rank: 8, q: 2, eps: Some(-1) }).is_ok());
        assert!(proof_bound(BoundFamily::GuI, p(4, 3)).is_err());
        assert!(proof_bound(BoundFamily::GlMn, p(4, 6)).is_err());
    }

    #[test]
    fn scans_are_monotone() {
        for fam in BoundFamily::ALL {
            let s = scan(fam, 12, 16);
            assert!(s.monotonicity_violations.is_empty(), "{fam}: {:?}", s.monotonicity_violations);
            assert!(!s.verdicts.is_empty());
        }
    }
}
