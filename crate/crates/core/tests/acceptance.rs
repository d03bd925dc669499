//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::time::Instant;

use invwit_core::bounds::{scan, BoundFamily, BoundParams};
use invwit_core::canonical::sl_class_reps;
use invwit_core::constructor::{construct_involution, find_partner, replay};
use invwit_core::oracle::{build_group, class_product_count, classes, d_inv, dist_to_set, orbdiam_diag, reported_classes, DEFAULT_ORDER_CAP};
use invwit_core::perm::{a5_witness, alt_partner, cycle_type_reps};
use invwit_core::{make_field, CommutatorOrder, Felt, GroupSpec, Mat};

struct Outcome {
    ok: bool,
    summary: String,
    problems: Vec<String>,
}

fn outcome(summary: String, problems: Vec<String>) -> Outcome {
    Outcome { ok: problems.is_empty(), summary, problems }
}

fn criterion_1() -> Outcome {
    let direct = [(2, 4), (2, 5), (2, 7), (2, 8), (2, 9), (3, 3), (3, 5), (4, 4)];
    let excluded = [(2, 2), (2, 3), (3, 2), (3, 4), (4, 2), (4, 3)];
    let mut problems = Vec::new();
    let mut count = 0;
    let mut longest = 0;
    for &(n, q) in direct.iter().chain(&excluded) {
        let f = make_field(q).unwrap();
        for g in sl_class_reps(&f, n) {
            count += 1;
            match construct_involution(&g, &GroupSpec::sl(n, q)) {
                Ok(w) => {
                    let r = replay(&w);
                    if !r.passed() {
                        problems.push(format!("SL({n},{q}) g={g}: {}", r.first().unwrap()));
                    }
                    longest = longest.max(w.len());
                }
                Err(e) => problems.push(format!("SL({n},{q}) g={g}: {e}")),
            }
        }
    }
    outcome(format!("constructor sweep over {count} class representatives, longest witness {longest}"), problems)
}

fn criterion_2() -> Outcome {
    let mut problems = Vec::new();
    let mut got = Vec::new();
    for (n, want) in [(5, 3), (6, 2), (7, 2), (8, 2)] {
        let t = build_group(&GroupSpec::alt(n), DEFAULT_ORDER_CAP).unwrap();
        let d = d_inv(&t, &classes(&t)).d_h;
        got.push(format!("A{n}={}", d.map_or("none".into(), |d| d.to_string())));
        if d != Some(want) {
            problems.push(format!("d(Inv(A{n})) = {d:?}, expected {want}"));
        }
    }
    outcome(format!("d(Inv(A_n)): {}", got.join(" ")), problems)
}

fn criterion_3() -> Outcome {
    let mut problems = Vec::new();
    let mut count = 0;
    for n in 2..=12 {
        for g in cycle_type_reps(n) {
            if g.is_identity() || (n == 5 && g.cycle_type() == vec![5]) {
                continue;
            }
            count += 1;
            match alt_partner(&g) {
                Ok(h) => {
                    let c = g.commutator(&h);
                    if !h.is_even() || c.order() != 2 {
                        problems.push(format!("S{n} g={g}: h={h} gives [g,h]={c}"));
                    }
                }
                Err(e) => problems.push(format!("S{n} g={g}: {e}")),
            }
        }
    }
    let g5 = invwit_core::perm::Perm::parse(5, "(1,2,3,4,5)").unwrap();
    match a5_witness(&g5) {
        Ok(w) if w.word.len() == 3 && w.no_shorter && w.product.order() == 2 => {}
        Ok(w) => problems.push(format!("A5 5-cycle: word of length {} (no shorter: {})", w.word.len(), w.no_shorter)),
        Err(e) => problems.push(format!("A5 5-cycle: {e}")),
    }
    outcome(format!("partner table over {count} cycle types, plus the A5 5-cycle search"), problems)
}

fn criterion_4() -> Outcome {
    let mut problems = Vec::new();
    let mut got = Vec::new();
    for q in [5, 7, 8, 9, 11] {
        let t = build_group(&GroupSpec::psl(2, q), DEFAULT_ORDER_CAP).unwrap();
        let r = d_inv(&t, &classes(&t));
        let bound = if q % 2 == 1 { 3 } else { 12 };
        got.push(format!("q={q}:{}", r.d_h.map_or("none".into(), |d| d.to_string())));
        for c in &r.per_class {
            if c.dist.is_none_or(|d| d > bound) {
                problems.push(format!("PSL(2,{q}) class of {}: distance {:?} > {bound}", c.rep_text, c.dist));
            }
        }
    }
    outcome(format!("PSL(2,q) max d_C(Inv): {}", got.join(" ")), problems)
}

fn criterion_5() -> Outcome {
    let mut problems = Vec::new();
    let mut count = 0;
    for q in [5, 7, 9, 11] {
        let spec = GroupSpec::sl(2, q);
        let t = build_group(&spec, DEFAULT_ORDER_CAP).unwrap();
        let ct = classes(&t);
        let f = t.field().unwrap().clone();
        let minus = t.index_of_mat(&Mat::scalar(&f, 2, f.neg(Felt::ONE))).unwrap();
        for c in reported_classes(&t, &ct) {
            count += 1;
            let g = t.element_mat(ct.reps[c as usize]).unwrap();
            let h = find_partner(&g, &spec).unwrap();
            let x = g.commutator(&h, CommutatorOrder::GinvHinvGh).unwrap();
            let cx = ct.class_of[t.index_of_mat(&x).unwrap() as usize];
            let n = class_product_count(&t, &ct, &vec![vec![cx]; 6], minus);
            if n == 0 {
                problems.push(format!("SL(2,{q}) g={g}: no six conjugates of [g,h] multiply to -I"));
            }
        }
    }
    outcome(format!("six-fold products reach -I for {count} commutator classes"), problems)
}

fn criterion_6() -> Outcome {
    let p = |rank, q| BoundParams { rank, q, eps: None };
    let mut problems = Vec::new();
    let mut lines = Vec::new();
    for fam in BoundFamily::ALL {
        if fam == BoundFamily::GuII {
            continue;
        }
        let s = scan(fam, 12, 16);
        let mut ex = s.exceptions.clone();
        ex.sort();
        let ok = match fam {
            BoundFamily::GlMn | BoundFamily::GlM1 => ex.is_empty(),
            BoundFamily::GuI => {
                let mut want = vec![p(7, 2), p(5, 3), p(4, 5), p(4, 4)];
                want.sort();
                ex == want
            }
            BoundFamily::SpOdd => ex == vec![p(2, 3)],
            BoundFamily::SpEven => ex == vec![p(2, 2), p(3, 2)],
            BoundFamily::O => ex.iter().all(|e| [(7, 3), (8, 2), (8, 3)].contains(&(e.rank, e.q))),
            BoundFamily::GuII => true,
        };
        let shown: Vec<String> = ex.iter().map(|e| e.to_string()).collect();
        lines.push(format!("{fam}:{{{}}}", shown.join(",")));
        if !ok {
            problems.push(format!("{fam}: exceptions {}", shown.join(",")));
        }
        if !s.monotonicity_violations.is_empty() {
            problems.push(format!("{fam}: value increases between {:?}", s.monotonicity_violations[0]));
        }
    }
    outcome(format!("bound exceptions {}", lines.join(" ")), problems)
}

fn criterion_7() -> Outcome {
    let t = build_group(&GroupSpec::alt(5), DEFAULT_ORDER_CAP).unwrap();
    let r = orbdiam_diag(&t, 2).unwrap();
    let mut problems = Vec::new();
    let od = r.orbdiam.unwrap_or(usize::MAX);
    if r.orbdiam.is_none() || 2 * od < r.d_t || od > 72 * r.d_t || r.c != 3 {
        problems.push(format!("orbdiam {:?}, d_T {}, C {}", r.orbdiam, r.d_t, r.c));
    }
    outcome(format!("A5 at k=2: d_T/2 = {}/2 <= orbdiam = {od} <= 72·d_T = {}", r.d_t, 72 * r.d_t), problems)
}

fn criterion_8() -> Outcome {
    let mut problems = Vec::new();
    let mut count = 0;
    for q in [5, 7] {
        let spec = GroupSpec::sl(2, q);
        let t = build_group(&spec, DEFAULT_ORDER_CAP).unwrap();
        let ct = classes(&t);
        for c in reported_classes(&t, &ct) {
            count += 1;
            let g = t.element_mat(ct.reps[c as usize]).unwrap();
            let d = dist_to_set(&t, &ct, c, &|x| t.is_involution(x));
            match (construct_involution(&g, &spec), d) {
                (Ok(w), Some(d)) if w.len() >= d => {}
                (Ok(w), d) => problems.push(format!("SL(2,{q}) g={g}: witness {} vs BFS {d:?}", w.len())),
                (Err(e), _) => problems.push(format!("SL(2,{q}) g={g}: {e}")),
            }
        }
    }
    outcome(format!("witness length >= BFS distance for {count} classes of SL(2,5), SL(2,7)"), problems)
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (k, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!("{} criterion {k}: {} ({secs:.1}s)", if o.ok { "PASS" } else { "FAIL" }, o.summary);
        for p in &o.problems {
            println!("    {p}");
        }
        failed += !o.ok as u32;
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
}
