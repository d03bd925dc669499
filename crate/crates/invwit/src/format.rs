//! Witness files and text parsing for matrices, permutations and ranges.

use anyhow::{anyhow, bail, Context, Result};
use invwit_core::constructor::{Witness, WitnessStep};
use invwit_core::perm::Perm;
use invwit_core::{make_field, Family, GroupSpec, Mat};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub family: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepJson {
    pub c: String,
    pub e: i8,
    pub case: String,
}

/// The on-disk witness. Matrix groups store matrix text, Sym/Alt store
/// cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    pub group: GroupJson,
    pub g: String,
    pub steps: Vec<StepJson>,
    pub target: String,
    pub net_exponent: i64,
}

impl WitnessJson {
    pub fn from_witness(w: &Witness) -> WitnessJson {
        WitnessJson {
            group: GroupJson { family: w.spec.family.name().into(), n: w.spec.n, q: w.spec.q },
            g: w.g.to_string(),
            steps: w
                .steps
                .iter()
                .map(|s| StepJson { c: s.conjugator.to_string(), e: s.exponent, case: s.case_label.clone() })
                .collect(),
            target: w.target.to_string(),
            net_exponent: w.net_exponent,
        }
    }

    pub fn spec(&self) -> Result<GroupSpec> {
        let family = Family::from_name(&self.group.family).ok_or_else(|| anyhow!("unknown family {:?}", self.group.family))?;
        match (family.is_linear(), self.group.q) {
            (true, Some(q)) => Ok(GroupSpec::linear(family, self.group.n, q)),
            (false, None) => Ok(GroupSpec { family, n: self.group.n, q: None }),
            (true, None) => bail!("{} needs a field size q", family.name()),
            (false, Some(_)) => bail!("{} takes no field size", family.name()),
        }
    }

    pub fn to_witness(&self) -> Result<Witness> {
        let spec = self.spec()?;
        let q = spec.q.ok_or_else(|| anyhow!("not a matrix group"))?;
        let f = make_field(q)?;
        let mat = |t: &str| Mat::parse(&f, t).with_context(|| format!("matrix {t:?}"));
        let g = mat(&self.g)?;
        let steps = self
            .steps
            .iter()
            .map(|s| Ok(WitnessStep { conjugator: mat(&s.c)?, exponent: s.e, case_label: s.case.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Witness { spec, g, steps, target: mat(&self.target)?, net_exponent: self.net_exponent })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("witness serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<WitnessJson> {
        serde_json::from_str(text).context("malformed witness JSON")
    }
}

/// Problems found when replaying a permutation witness.
pub fn replay_perm(w: &WitnessJson) -> Result<Vec<String>> {
    let spec = w.spec()?;
    let n = spec.n;
    let perm = |t: &str| Perm::parse(n, t).with_context(|| format!("permutation {t:?}"));
    let g = perm(&w.g)?;
    let target = perm(&w.target)?;
    let mut problems = Vec::new();
    if spec.family == Family::Alt && !g.is_even() {
        problems.push("g is not in the alternating group".into());
    }
    let mut acc = Perm::identity(n);
    let mut net = 0i64;
    for (k, s) in w.steps.iter().enumerate() {
        let c = perm(&s.c)?;
        if s.e != 1 && s.e != -1 {
            problems.push(format!("step {k}: exponent {} is not ±1", s.e));
        }
        if spec.family == Family::Alt && !c.is_even() {
            problems.push(format!("step {k}: conjugator is odd"));
        }
        net += s.e as i64;
        acc = acc.then(&g.pow(s.e as i64).conjugate(&c));
    }
    if acc != target {
        problems.push(format!("product {acc} differs from the recorded target"));
    }
    if !target.is_involution() {
        problems.push("target is not an involution".into());
    }
    if net != w.net_exponent {
        problems.push(format!("net exponent recorded {} but steps give {net}", w.net_exponent));
    }
    Ok(problems)
}

/// `5..8`, `5..=8` or a single `6`.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().with_context(|| format!("range {s:?}"))?;
    let b: usize = b.trim().parse().with_context(|| format!("range {s:?}"))?;
    if a > b {
        bail!("empty range {s:?}");
    }
    Ok((a, b))
}

/// Comma-separated field sizes.
pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().with_context(|| format!("list entry {t:?}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_range("5..8").unwrap(), (5, 8));
        assert_eq!(parse_range("5..=8").unwrap(), (5, 8));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert!(parse_range("8..5").is_err());
        assert_eq!(parse_list("5, 7,9").unwrap(), vec![5, 7, 9]);
        assert!(parse_list("5,x").is_err());
    }

    #[test]
    fn group_field_rules() {
        let j = |fam: &str, q: Option<u32>| WitnessJson {
            group: GroupJson { family: fam.into(), n: 3, q },
            g: String::new(),
            steps: vec![],
            target: String::new(),
            net_exponent: 0,
        };
        assert!(j("SL", Some(5)).spec().is_ok());
        assert!(j("SL", None).spec().is_err());
        assert!(j("Alt", Some(5)).spec().is_err());
        assert!(j("XL", Some(5)).spec().is_err());
    }
}
