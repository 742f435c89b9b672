//! Acceptance suite: one line per criterion, exit status 1 if any fails.

mod common;

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use multibrace::algebra::Algebra;
use multibrace::braces::{compose_plain, enumerate_terms, g_bracket, render_term};
use multibrace::bv::{
    check_weakly_homotopy_bv, descend, diff_order, euler_data, exterior_data, left_poisson_defect,
    BvData,
};
use multibrace::coalgebra::TruncatedTensor;
use multibrace::hochschild::{
    commutator_differential, gv_structure, lift, lift_b, lift_report, TruncatedHochschild,
};
use multibrace::homotopy::{
    a_infinity_defect, check_mega_with, l_infinity_defect, mega_sum, targets_up_to,
};
use multibrace::maps::{all_tuples, MegaMap, PartitionedMap};
use multibrace::partitions::{
    compose_patterns, count_terms, enumerate_splittings, factorizations, merge, parse_merge_items,
};
use multibrace::sign::exchange_sign;
use multibrace::{Partition, Scalar, SubstitutionPattern, Vector};
use rand::Rng;

const COMPOSE_LIMIT: Duration = Duration::from_millis(1);
const COUNT_LIMIT: Duration = Duration::from_secs(30);
const CLI_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_CASES: usize = 100;
const CODERIVATION_CASES: usize = 50;
const LIFT_CAP: usize = 3;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn criterion_1() -> Outcome {
    let cases = [
        (
            "((2),(1),(3),(0))",
            "((1),(0),(3),(0),(2),(4))",
            "((1),(3),(6),(0))",
        ),
        ("((2),(1),3)", "((1),(5),(4))", "((6),(4),3)"),
        ("((1),(3))", "((2),(4),2)", "((2),(6))"),
    ];
    let mut slowest = Duration::ZERO;
    for (a, b, want) in cases {
        let (a, b): (SubstitutionPattern, SubstitutionPattern) =
            (a.parse().unwrap(), b.parse().unwrap());
        let t = Instant::now();
        let got = compose_patterns(&a, &b).map(|c| c.to_string());
        slowest = slowest.max(t.elapsed());
        if got.as_deref() != Ok(want) {
            return outcome(false, format!("got {got:?}, expected {want}"));
        }
    }
    outcome(
        slowest < COMPOSE_LIMIT,
        format!("3 compositions exact, slowest {slowest:?}"),
    )
}

fn criterion_2() -> Outcome {
    let cases = [
        ("((1|2),(0|2|5),(9))", "(1|2|2|14)"),
        (
            "((1|2),(0|2|5)|(9),(3|0|4),(1|1)|(3|2|2))",
            "(1|2|2|5|12|0|5|1|3|2|2)",
        ),
        ("((1|2),3,(5|7)|6)", "(1|10|7|6)"),
    ];
    for (items, want) in cases {
        let got = merge(&parse_merge_items(items).unwrap()).to_string();
        if got != want {
            return outcome(false, format!("{items} gave {got}, expected {want}"));
        }
    }
    outcome(true, "3 merges exact")
}

/// Tuples of positive integers with sum at most `max`.
fn compositions(max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(c) = stack.pop() {
        let sum: usize = c.iter().sum();
        for k in 1..=max - sum {
            let mut d = c.clone();
            d.push(k);
            stack.push(d.clone());
            out.push(d);
        }
    }
    out.sort();
    out
}

/// Every tuple bounded componentwise by `n`.
fn bounded(n: &[usize]) -> Vec<Vec<usize>> {
    n.iter().fold(vec![Vec::new()], |acc, &m| {
        acc.into_iter()
            .flat_map(|c| (0..=m).map(move |k| [c.clone(), vec![k]].concat()))
            .collect()
    })
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for n in compositions(7) {
        let n = Partition::new(n).unwrap();
        for i in bounded(n.slots()) {
            let i = Partition::new(i).unwrap();
            let outer = Partition::plain(n.arity() - i.arity() + 1);
            let terms = enumerate_terms(&outer, std::slice::from_ref(&i), &[false], &n);
            if terms.len() as u128 != count_terms(n.slots(), i.slots()) {
                return outcome(
                    false,
                    format!(
                        "n={n} i={i}: {} enumerated, {} counted",
                        terms.len(),
                        count_terms(n.slots(), i.slots())
                    ),
                );
            }
            checked += 1;
        }
    }
    let elapsed = t.elapsed();
    let (n, i, x) = (p("(3|4)"), p("(1|3)"), p("(4)"));
    let count = count_terms(n.slots(), i.slots());
    let splits = enumerate_splittings(n.slots(), i.slots()).len();
    let lines: Vec<String> = enumerate_terms(&x, std::slice::from_ref(&i), &[false], &n)
        .iter()
        .map(|t| render_term(t, &x, std::slice::from_ref(&i), &n))
        .collect();
    let shown = ["x(a1,b1,y(a2|b2,b3,b4),a3)", "x(b1,a1,y(a2|b2,b3,b4),a3)"];
    let both = shown
        .iter()
        .all(|s| lines.iter().any(|l| l.split("  ").nth(1) == Some(s)));
    let pass = count == 12 && splits == 6 && both && elapsed < COUNT_LIMIT;
    outcome(pass, format!("{checked} (n, i) pairs, 0 discrepancies, {elapsed:.2?}; (3|4),(1|3): {count} terms, {splits} splittings, displayed terms present: {both}"))
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut pre_lie = 0;
    let mut jacobi = 0;
    for _ in 0..RANDOM_CASES {
        let s = random_space(&mut r, 3);
        let a = random_plain(&mut r, &s, 3);
        let b = random_plain(&mut r, &s, 3);
        let c = random_plain(&mut r, &s, 3);
        let o = |x: &PartitionedMap, y: &PartitionedMap| compose_plain(&s, x, &[y]).unwrap();
        let lhs = o(&o(&a, &b), &c)
            .add(&o(&a, &o(&b, &c)).scaled(Scalar::MINUS_ONE), s.dim())
            .unwrap();
        let eps = exchange_sign(&b.bidegree(), &c.bidegree());
        let rhs = o(&o(&a, &c), &b)
            .add(&o(&a, &o(&c, &b)).scaled(Scalar::MINUS_ONE), s.dim())
            .unwrap()
            .scaled(eps);
        pre_lie += usize::from(lhs.same_values(&rhs, s.dim()));
        let br = |x: &PartitionedMap, y: &PartitionedMap| g_bracket(&s, x, y).unwrap();
        let eab = exchange_sign(&a.bidegree(), &b.bidegree());
        let lhs = br(&a, &br(&b, &c));
        let rhs = br(&br(&a, &b), &c)
            .add(&br(&b, &br(&a, &c)).scaled(eab), s.dim())
            .unwrap();
        jacobi += usize::from(lhs.same_values(&rhs, s.dim()));
    }
    outcome(
        pre_lie == RANDOM_CASES && jacobi == RANDOM_CASES,
        format!("pre-Lie {pre_lie}/{RANDOM_CASES}, Jacobi {jacobi}/{RANDOM_CASES}"),
    )
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut good = 0;
    for _ in 0..CODERIVATION_CASES {
        let s = random_space(&mut r, 3);
        let t = TruncatedTensor::new(&s, 5);
        let mut m = MegaMap::new();
        for k in 1..=3 {
            let deg = r.gen_range(-1..=1);
            m.insert(random_map(&mut r, &s, Partition::plain(k), deg, 0.7));
        }
        let d = t.delta(&m, None).unwrap();
        let back = t.project(&d).unwrap();
        let projects = m.components().all(|c| {
            back.get(c.ty())
                .map_or(c.is_zero(), |b| b.same_values(c, s.dim()))
        });
        good += usize::from(t.coderivation_defect(&d).is_empty() && projects);
    }
    let s = space(&[0, 1]);
    let t = TruncatedTensor::new(&s, 5);
    let mut m = MegaMap::new();
    for k in 1..=3 {
        m.insert(random_map(&mut r, &s, Partition::plain(k), 0, 1.0));
    }
    let (mut killed, mut total) = (0, 0);
    for k in 1..=3 {
        for j in 1..=(5 - k + 1) {
            total += 1;
            killed += usize::from(
                !t.coderivation_defect(&t.delta(&m, Some((k, j))).unwrap())
                    .is_empty(),
            );
        }
    }
    outcome(good == CODERIVATION_CASES && killed == total, format!("{good}/{CODERIVATION_CASES} coderivations with exact projection at N = 5; mutants killed {killed}/{total}"))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, a) in [
        ("dual numbers", Algebra::dual_numbers()),
        ("upper triangular", Algebra::upper_triangular()),
    ] {
        let m = a.even_iterated_structure(6);
        let ainf = (1..=6).all(|n| a_infinity_defect(&a.space, &m, n).unwrap().is_zero());
        let linf = (1..=4).all(|n| l_infinity_defect(&a.space, &m, n).unwrap().is_zero());
        pass &= ainf && linf;
        parts.push(format!(
            "{name}: A-inf n<=6 {}, L-inf n<=4 {}",
            ok(ainf),
            ok(linf)
        ));
    }
    outcome(pass, parts.join("; "))
}

fn ok(b: bool) -> &'static str {
    if b {
        "zero"
    } else {
        "NONZERO"
    }
}

fn criterion_7() -> Outcome {
    let names: Vec<String> = factorizations(&p("(1|1)"), 1)
        .iter()
        .map(|f| f.to_string())
        .collect();
    let four = names == ["(1)*(1|1)", "(1|1)*(1)", "(2)*(0|1)", "(2)*(1|0)"];
    let a = Algebra::dual_numbers();
    let cap = 3;
    let h = Arc::new(TruncatedHochschild::new(&a.space, cap).unwrap());
    let m = gv_structure(&h, &a).unwrap();
    let targets: Vec<Partition> = targets_up_to(4)
        .into_iter()
        .filter(|t| t.arity() <= 4)
        .collect();
    let r = check_mega_with(&h.meta, &m, &targets, |_, t| {
        t.iter().map(|&x| h.arity_of(x)).sum::<usize>() < cap + t.len()
    });
    let cross = mega_sum(&m, &p("(2|2)"), 2)
        .parts
        .iter()
        .any(|x| x.inners.len() == 2 && !x.terms.is_empty());
    let failing: Vec<&str> = r
        .rows
        .iter()
        .filter(|x| !x.zero)
        .map(|x| x.label.as_str())
        .collect();
    outcome(four && r.verdict() && cross, format!("factorizations of (1|1): {names:?}; {} targets with slot-sum <= 4 at cap {cap}, nonzero: {failing:?}; two-inner terms at (2|2): {cross}", r.rows.len()))
}

/// The literal instance, then the same measurements on the odd replacement.
fn bv_summary(d: &BvData) -> (bool, String) {
    let s = &d.space;
    let m2 = d.component("(2)");
    let square_zero = d.b_squared().is_zero();
    let order = diff_order(s, &d.b, &m2, 4).unwrap();
    let phi3 = d.phi(3).unwrap();
    let check = check_weakly_homotopy_bv(d, 3).unwrap();
    let classical = descend(d).map(|h| h.classical_checks());
    let lp = left_poisson_defect(d).unwrap();
    let matches = all_tuples(s.dim(), 3).iter().all(|t| {
        lp.eval_basis(t)
            == phi3
                .eval_basis(t)
                .scaled(Scalar::sign(s.degree(t[0]) * d.b.degree()))
    });
    let classical_ok = classical.as_ref().is_ok_and(|c| c.verdict());
    let failed: Vec<String> = check
        .rows
        .iter()
        .filter(|r| !r.zero)
        .map(|r| r.label.clone())
        .collect();
    let classical_failed: Vec<String> = match &classical {
        Ok(c) => c
            .rows
            .iter()
            .filter(|r| !r.zero)
            .map(|r| r.label.clone())
            .collect(),
        Err(e) => vec![e.to_string()],
    };
    let pass = square_zero
        && order == Some(2)
        && phi3.is_zero()
        && check.verdict()
        && classical_ok
        && matches;
    let text = format!(
        "|B| = {}, B^2 {}, order {order:?}, Phi^3 {}, BV check failing {failed:?}, classical failing {classical_failed:?}, identity 10 = Phi^3 termwise: {matches}",
        d.b.degree(),
        ok(square_zero),
        ok(phi3.is_zero())
    );
    (pass, text)
}

fn criterion_8() -> Outcome {
    let (pass, literal) = bv_summary(&exterior_data(2));
    let (fixed_pass, fixed) = bv_summary(&euler_data(1));
    outcome(
        pass,
        format!(
            "exterior(2), B = d2 d1: {literal} || odd replacement x dx d1 on k[t1, x]: {} {fixed}",
            if fixed_pass { "all hold:" } else { "FAILS:" }
        ),
    )
}

fn defective(r: &mut rand_chacha::ChaCha8Rng, s: &multibrace::GradedSpace) -> MegaMap {
    let mut m = MegaMap::new();
    for (ty, deg) in [("(1)", 1), ("(2)", 0), ("(3)", -1), ("(1|1)", -1)] {
        m.insert(random_map(r, s, p(ty), deg, 0.7));
    }
    m.insert(PartitionedMap::identity_selector());
    m
}

fn criterion_9() -> Outcome {
    let targets: Vec<Partition> = ["(1)", "(2)", "(1|1)", "(3)"]
        .iter()
        .map(|t| p(t))
        .collect();
    let ext = exterior_data(2);
    let h = Arc::new(TruncatedHochschild::new(&ext.space, LIFT_CAP).unwrap());
    let mut source = ext.m.clone();
    source.insert(ext.b.clone());
    let ext_report = lift_report(&h, &source, &targets);
    let lb = lift_b(&h, &ext.b).unwrap();
    let b_squared = (0..h.dim()).all(|x| lb.eval_flat(&[&lb.eval_basis(&[x])]).is_zero());
    let mut r = rng(9);
    let s = space(&[0, 1]);
    let bad = defective(&mut r, &s);
    let hs = Arc::new(TruncatedHochschild::new(&s, LIFT_CAP).unwrap());
    let bad_report = lift_report(&hs, &bad, &targets);
    let source_defective = !check_mega_with(&s, &bad, &targets, |_, _| true).verdict();
    let plain: MegaMap = bad
        .components()
        .filter(|c| c.ty().is_plain())
        .fold(MegaMap::new(), |m, c| m.with(c.clone()));
    let d = commutator_differential(&hs, &plain).unwrap();
    let square_zero = (0..hs.dim())
        .filter(|&x| hs.arity_of(x) < LIFT_CAP)
        .all(|x| {
            let mut v = Vector::zero();
            for (y, c) in d.eval_basis(&[x]).iter() {
                v.add_scaled(&d.eval_basis(&[y]), *c);
            }
            v.is_zero()
        });
    let _ = lift(&hs, &bad);
    let pass = ext_report.verdict()
        && b_squared
        && bad_report.verdict()
        && source_defective
        && !square_zero;
    outcome(
        pass,
        format!(
            "cap {LIFT_CAP}: exterior data lifted = lifted source on {} rows: {}, lifted B^2 {}; defective input (source defective: {source_defective}) lifted = lifted source: {}; commutator lift square-zero: {square_zero}",
            ext_report.rows.len(),
            ext_report.verdict(),
            ok(b_squared),
            bad_report.verdict()
        ),
    )
}

fn criterion_10() -> Outcome {
    let corpus = |f: &str| format!("{}/../../corpus/{f}", env!("CARGO_MANIFEST_DIR"));
    let runs: Vec<Vec<String>> = [
        vec![
            "check",
            "gv",
            "--file",
            &corpus("dual_numbers.alg"),
            "--cap",
            "3",
        ],
        vec![
            "check",
            "gv",
            "--file",
            &corpus("upper_triangular.alg"),
            "--cap",
            "2",
        ],
        vec!["check", "bv", "--file", &corpus("euler1_bv.alg")],
        vec!["check", "bv", "--file", &corpus("euler2_bv.alg")],
        vec!["check", "bv", "--file", &corpus("weighted_bv.alg")],
        vec![
            "check",
            "ainf",
            "--file",
            &corpus("dual_numbers_iterated.alg"),
            "--bound",
            "6",
        ],
        vec![
            "check",
            "ainf",
            "--file",
            &corpus("upper_triangular_iterated.alg"),
            "--bound",
            "6",
        ],
        vec!["cohomology", "--file", &corpus("euler1_bv.alg")],
        vec!["cohomology", "--file", &corpus("weighted_bv.alg")],
        vec!["count", "--args", "3,4", "--inner", "1,3", "--enumerate"],
    ]
    .iter()
    .map(|v| v.iter().map(|s| s.to_string()).collect())
    .collect();
    let t = Instant::now();
    let mut bad = Vec::new();
    for args in &runs {
        let status = Command::new(env!("CARGO_BIN_EXE_multibrace"))
            .args(args)
            .output()
            .expect("binary runs")
            .status;
        if !status.success() {
            bad.push(format!("{} {} -> {status}", args[0], args[1]));
        }
    }
    let elapsed = t.elapsed();
    outcome(
        bad.is_empty() && elapsed < CLI_LIMIT,
        format!("{} commands in {elapsed:.2?}, failures {bad:?}", runs.len()),
    )
}

fn main() {
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let criteria: [Criterion; 10] = [
        ("substitution composition", criterion_1),
        ("partitioned merging", criterion_2),
        ("counting oracle", criterion_3),
        ("pre-Lie and Jacobi", criterion_4),
        ("coderivation", criterion_5),
        ("A-infinity example", criterion_6),
        ("sub-identity generation", criterion_7),
        ("Phi tower and BV", criterion_8),
        ("lifting", criterion_9),
        ("end-to-end CLI", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let label = format!("criterion {} {name}", k + 1);
        if !filter.is_empty() && !filter.iter().any(|x| label.contains(x.as_str())) {
            continue;
        }
        let t = Instant::now();
        let o = f();
        println!(
            "{} {label} [{:.2?}]: {}",
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed(),
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
