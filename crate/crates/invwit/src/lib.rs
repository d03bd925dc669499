//! Command-line frontend for invwit-core.
//!
//! Exit codes: 0 when every check passed, 1 when a mathematical check
//! failed, 2 on usage or input errors.

pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use invwit_core::bounds::{scan, BoundFamily};
use invwit_core::constructor::{construct_involution, find_partner, replay, ConstructError};
use invwit_core::oracle::{build_group, class_distance, class_product_count, classes, orbdiam_diag, reported_classes, DEFAULT_ORDER_CAP};
use invwit_core::perm::{a5_witness, alt_partner, Perm, PermError};
use invwit_core::{make_field, CommutatorOrder, Family, Felt, GroupSpec, Mat};

use format::{parse_list, parse_range, replay_perm, GroupJson, StepJson, WitnessJson};

#[derive(Parser, Debug)]
#[command(name = "invwit", version, about = "Involution witnesses in finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Sl,
    Gl,
    Sym,
    Alt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurveyFamily {
    Alt,
    Psl2,
    Sl2,
    Sl3,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a witness word for g and print it as JSON.
    Construct {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<u32>,
        /// Rows separated by ';', entries by ','.
        #[arg(long, conflicts_with = "perm")]
        matrix: Option<String>,
        /// Cycle notation on 1..n, e.g. "(1,2,3)(4,5)".
        #[arg(long)]
        perm: Option<String>,
        /// Write the witness here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a witness file and report every violation.
    Verify {
        #[arg(long)]
        witness: PathBuf,
    },
    /// Distances d_C(Inv) for every non-central class, as TSV.
    Survey {
        #[arg(long, value_enum)]
        family: SurveyFamily,
        /// Degrees for alt, e.g. 5..8.
        #[arg(long)]
        n: Option<String>,
        /// Field sizes for the matrix families, e.g. 5,7,9.
        #[arg(long)]
        q: Option<String>,
    },
    /// Count solutions of x₁⋯x₆ = −I in SL(2,q) with every xᵢ conjugate to [g,h].
    Charsum {
        #[arg(long, default_value = "5,7,9,11")]
        q: String,
    },
    /// Evaluate the character-ratio bounds over a rectangle, as CSV.
    Bounds {
        /// A family name such as GU-i, or "all".
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, default_value_t = 16)]
        qmax: u32,
    },
    /// The diagonal-action orbital diameter of T² against d_T.
    Orbdiam {
        #[arg(long, default_value = "alt5")]
        t: String,
    },
}

/// Failure kinds carried to the exit code.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Check(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Run = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let r = match cli.command {
        Command::Construct { group, n, q, matrix, perm, out: path } => construct(group, n, q, matrix, perm, path, out),
        Command::Verify { witness } => verify(&witness, out),
        Command::Survey { family, n, q } => survey(family, n.as_deref(), q.as_deref(), out),
        Command::Charsum { q } => charsum(&q, out),
        Command::Bounds { family, nmax, qmax } => bounds(&family, nmax, qmax, out),
        Command::Orbdiam { t } => orbdiam(&t, out),
    };
    match r {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            1
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Input(e.into())
}

fn emit(text: &str, path: Option<PathBuf>, out: &mut dyn Write) -> Run {
    match path {
        Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(())
}

fn construct(group: GroupArg, n: usize, q: Option<u32>, matrix: Option<String>, perm: Option<String>, path: Option<PathBuf>, out: &mut dyn Write) -> Run {
    let w = match group {
        GroupArg::Sl | GroupArg::Gl => {
            let q = q.ok_or_else(|| anyhow!("--q is required for matrix groups"))?;
            let text = matrix.ok_or_else(|| anyhow!("--matrix is required for matrix groups"))?;
            let f = make_field(q).map_err(anyhow::Error::from)?;
            let g = Mat::parse(&f, &text).map_err(anyhow::Error::from)?;
            if g.n() != n {
                return Err(anyhow!("matrix is {}x{}, expected {n}x{n}", g.n(), g.n()).into());
            }
            let spec = if group == GroupArg::Sl { GroupSpec::sl(n, q) } else { GroupSpec::gl(n, q) };
            let w = construct_involution(&g, &spec).map_err(|e| match e {
                ConstructError::Central | ConstructError::NotInGroup | ConstructError::Unsupported(_) | ConstructError::Field(_) | ConstructError::Matrix(_) => {
                    Failure::Input(anyhow!("{e}"))
                }
                e => Failure::Check(format!("no witness for g = {g}: {e}")),
            })?;
            let rep = replay(&w);
            if let Some(v) = rep.first() {
                return Err(Failure::Check(format!("constructed witness does not replay: {v}")));
            }
            WitnessJson::from_witness(&w)
        }
        GroupArg::Sym | GroupArg::Alt => perm_witness(group, n, &perm.ok_or_else(|| anyhow!("--perm is required for Sym/Alt"))?)?,
    };
    emit(&w.to_json(), path, out)
}

fn perm_witness(group: GroupArg, n: usize, text: &str) -> std::result::Result<WitnessJson, Failure> {
    if !(2..=255).contains(&n) {
        return Err(anyhow!("degree {n} outside 2..=255").into());
    }
    let g = Perm::parse(n, text).map_err(anyhow::Error::from)?;
    let (family, spec_name) = match group {
        GroupArg::Alt => (Family::Alt, "A"),
        _ => (Family::Sym, "S"),
    };
    if g.is_identity() {
        return Err(anyhow!("g is the identity").into());
    }
    if family == Family::Alt && !g.is_even() {
        return Err(anyhow!("{g} is odd, so not in {spec_name}{n}").into());
    }
    let step = |c: &Perm, e: i8, case: &str| StepJson { c: c.to_string(), e, case: case.into() };
    let (steps, target) = match alt_partner(&g) {
        Ok(h) => {
            // g⁻¹h⁻¹gh = g⁻¹ · h⁻¹gh
            let hi = h.inverse();
            (vec![step(&Perm::identity(n), -1, "partner-table"), step(&hi, 1, "partner-table")], g.commutator(&h))
        }
        Err(PermError::A5Exception) if n == 5 => {
            let w = a5_witness(&g).map_err(|e| Failure::Check(e.to_string()))?;
            (w.word.iter().map(|(c, e)| step(c, *e, "a5-search")).collect(), w.product)
        }
        Err(e) => return Err(Failure::Check(e.to_string())),
    };
    let net_exponent = steps.iter().map(|s| s.e as i64).sum();
    Ok(WitnessJson {
        group: GroupJson { family: family.name().into(), n, q: None },
        g: g.to_string(),
        steps,
        target: target.to_string(),
        net_exponent,
    })
}

fn verify(path: &PathBuf, out: &mut dyn Write) -> Run {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let wj = WitnessJson::parse(&text)?;
    let spec = wj.spec()?;
    let problems: Vec<String> = if spec.family.is_linear() {
        replay(&wj.to_witness()?).violations.iter().map(|v| v.to_string()).collect()
    } else {
        replay_perm(&wj)?
    };
    if problems.is_empty() {
        writeln!(out, "ok: {spec} witness of length {} replays", wj.steps.len()).map_err(io)?;
        return Ok(());
    }
    for p in &problems {
        writeln!(out, "violation: {p}").map_err(io)?;
    }
    Err(Failure::Check(format!("{} violation(s) in {}", problems.len(), path.display())))
}

fn survey(family: SurveyFamily, n: Option<&str>, q: Option<&str>, out: &mut dyn Write) -> Run {
    let specs: Vec<GroupSpec> = match family {
        SurveyFamily::Alt => {
            if q.is_some() {
                return Err(anyhow!("--q does not apply to alt").into());
            }
            let (a, b) = parse_range(n.unwrap_or("5..8"))?;
            (a..=b).map(GroupSpec::alt).collect()
        }
        _ => {
            if n.is_some() {
                return Err(anyhow!("--n only applies to alt").into());
            }
            let (dim, default) = match family {
                SurveyFamily::Sl3 => (3, "2,3"),
                _ => (2, "4,5,7,8,9,11"),
            };
            parse_list(q.unwrap_or(default))?
                .into_iter()
                .map(|q| match family {
                    SurveyFamily::Psl2 => GroupSpec::psl(2, q),
                    _ => GroupSpec::sl(dim, q),
                })
                .collect()
        }
    };
    writeln!(out, "group\trep\tsize\td_C\twitness\td_inv").map_err(io)?;
    let mut failures = Vec::new();
    for spec in specs {
        let t = build_group(&spec, DEFAULT_ORDER_CAP).map_err(anyhow::Error::from)?;
        let ct = classes(&t);
        let with_witness = spec.family == Family::SL;
        let rows: Vec<_> = reported_classes(&t, &ct)
            .into_par_iter()
            .map(|c| {
                let cd = class_distance(&t, &ct, c);
                let wit = with_witness.then(|| {
                    let g = t.element_mat(cd.rep).expect("matrix group");
                    construct_involution(&g, &spec).map(|w| (w.len(), replay(&w).passed()))
                });
                (cd, wit)
            })
            .collect();
        let d_inv = rows.iter().map(|(cd, _)| cd.dist).try_fold(0, |m, d| d.map(|d| m.max(d)));
        let show = |d: Option<usize>| d.map_or("none".to_string(), |d| d.to_string());
        for (cd, wit) in &rows {
            let wcol = match wit {
                None => "-".to_string(),
                Some(Ok((len, true))) => {
                    if cd.dist.is_some_and(|d| *len < d) {
                        failures.push(format!("{spec} {}: witness {len} shorter than distance", cd.rep_text));
                    }
                    len.to_string()
                }
                Some(Ok((_, false))) => {
                    failures.push(format!("{spec} {}: witness fails replay", cd.rep_text));
                    "invalid".into()
                }
                Some(Err(e)) => {
                    failures.push(format!("{spec} {}: {e}", cd.rep_text));
                    "none".into()
                }
            };
            if cd.dist.is_none() {
                failures.push(format!("{spec} {}: no power of the class meets Inv", cd.rep_text));
            }
            writeln!(out, "{spec}\t{}\t{}\t{}\t{wcol}\t{}", cd.rep_text, cd.size, show(cd.dist), show(d_inv)).map_err(io)?;
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(failures.join("; ")))
    }
}

fn charsum(qs: &str, out: &mut dyn Write) -> Run {
    writeln!(out, "q\tg\tpartner\tcommutator\tclass_size\tcount").map_err(io)?;
    let mut zero = Vec::new();
    for q in parse_list(qs)? {
        let spec = GroupSpec::sl(2, q);
        let t = build_group(&spec, DEFAULT_ORDER_CAP).map_err(anyhow::Error::from)?;
        let ct = classes(&t);
        let f = make_field(q).map_err(anyhow::Error::from)?;
        let minus = t.index_of_mat(&Mat::scalar(&f, 2, f.neg(Felt::ONE))).expect("−I lies in SL(2,q)");
        for c in reported_classes(&t, &ct) {
            let g = t.element_mat(ct.reps[c as usize]).expect("matrix group");
            let h = find_partner(&g, &spec).map_err(|e| Failure::Check(format!("{spec} g={g}: {e}")))?;
            let x = g.commutator(&h, CommutatorOrder::GinvHinvGh).map_err(anyhow::Error::from)?;
            let cx = ct.class_of[t.index_of_mat(&x).expect("commutator lies in SL") as usize];
            let count = class_product_count(&t, &ct, &vec![vec![cx]; 6], minus);
            if count == 0 {
                zero.push(format!("q={q} g={g}"));
            }
            writeln!(out, "{q}\t{g}\t{h}\t{x}\t{}\t{count}", ct.sizes[cx as usize]).map_err(io)?;
        }
    }
    if zero.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("no solutions for {}", zero.join(", "))))
    }
}

fn bounds(family: &str, nmax: u32, qmax: u32, out: &mut dyn Write) -> Run {
    let families: Vec<BoundFamily> = if family.eq_ignore_ascii_case("all") {
        BoundFamily::ALL.to_vec()
    } else {
        vec![BoundFamily::from_name(family).ok_or_else(|| anyhow!("unknown bound family {family:?}"))?]
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "params", "numerator", "denominator", "verdict"]).map_err(anyhow::Error::from)?;
    let mut bad = Vec::new();
    for fam in families {
        let s = scan(fam, nmax, qmax);
        for v in &s.verdicts {
            let verdict = if v.holds { "holds" } else { "exception" };
            w.write_record([fam.name(), &v.params.to_string(), &v.value.numer().to_string(), &v.value.denom().to_string(), verdict])
                .map_err(anyhow::Error::from)?;
        }
        for (a, b) in &s.monotonicity_violations {
            bad.push(format!("{fam}: value rises from {a} to {b}"));
        }
    }
    w.flush().map_err(io)?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(bad.join("; ")))
    }
}

fn orbdiam(t: &str, out: &mut dyn Write) -> Run {
    let n: usize = t
        .strip_prefix("alt")
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| anyhow!("unsupported --t {t:?}; expected altN"))?;
    if n != 5 {
        return Err(anyhow!("alt{n} is too large; only alt5 is supported").into());
    }
    let tt = build_group(&GroupSpec::alt(n), DEFAULT_ORDER_CAP).map_err(anyhow::Error::from)?;
    let r = orbdiam_diag(&tt, 2).map_err(anyhow::Error::from)?;
    let summary = serde_json::json!({
        "t": format!("A{n}"),
        "k": 2,
        "d_t": r.d_t,
        "c": r.c,
        "orbdiam": r.orbdiam,
        "orbital_diameters": r.orbital_diameters,
        "orbitals_match_cayley": r.orbitals_match_cayley,
        "lower_holds": r.lower_holds,
        "upper_holds": r.upper_holds,
    });
    writeln!(out, "{summary}").map_err(io)?;
    if r.lower_holds && r.upper_holds && r.orbitals_match_cayley {
        Ok(())
    } else {
        Err(Failure::Check(format!("orbital diameter bounds fail for A{n}")))
    }
}
