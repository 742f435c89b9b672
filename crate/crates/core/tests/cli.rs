use std::path::PathBuf;
use std::process::Command;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    run_env(args, "")
}

fn run_env(args: &[&str], threads: &str) -> (i32, String) {
    let mut c = Command::new(env!("CARGO_BIN_EXE_multibrace"));
    c.args(args);
    if !threads.is_empty() {
        c.env("RAYON_NUM_THREADS", threads);
    }
    let out = c.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr),
    )
}

#[test]
fn every_corpus_document_parses_and_renders_back() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"]
        .iter()
        .collect();
    let mut n = 0;
    for e in std::fs::read_dir(dir).unwrap() {
        let path = e.unwrap().path();
        if path.extension().is_some_and(|x| x == "alg") {
            let text = std::fs::read_to_string(&path).unwrap();
            let doc =
                multibrace::io::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let body: String = text
                .lines()
                .filter(|l| !l.starts_with('#'))
                .map(|l| format!("{l}\n"))
                .collect();
            assert_eq!(multibrace::io::render(&doc), body, "{}", path.display());
            n += 1;
        }
    }
    assert!(n >= 8);
}

#[test]
fn compose_and_count() {
    assert_eq!(
        run(&["compose", "((2),(1),3)", "((1),(5),(4))"]),
        (0, "((6),(4),3)\n".into())
    );
    let (code, out) = run(&["count", "--args", "3,4", "--inner", "1,3"]);
    assert_eq!((code, out.as_str()), (0, "12\n"));
    let (code, out) = run(&["count", "--args", "3,4", "--inner", "1,3", "--enumerate"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 13);
}

#[test]
fn enumeration_is_stable_across_thread_counts() {
    let args = ["count", "--args", "2,3", "--inner", "1,2", "--enumerate"];
    let one = run_env(&args, "1");
    assert_eq!(one, run_env(&args, "4"));
    assert_eq!(one, run_env(&args, "1"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&[
            "check",
            "ainf",
            "--file",
            &corpus("dual_numbers_iterated.alg"),
            "--bound",
            "6"
        ])
        .0,
        0
    );
    assert_eq!(
        run(&[
            "check",
            "ainf",
            "--file",
            &corpus("non_associative.alg"),
            "--bound",
            "3"
        ])
        .0,
        1
    );
    assert_eq!(
        run(&["check", "bv", "--file", &corpus("exterior2_bv.alg")]).0,
        3
    );
    assert_eq!(
        run(&["check", "bv", "--file", &corpus("dual_numbers.alg")]).0,
        3
    );
    let bad = std::env::temp_dir().join("multibrace_bad.alg");
    std::fs::write(
        &bad,
        "space\nbasis a deg 0\nmap m type 2\nentry (a b) -> a\n",
    )
    .unwrap();
    let (code, out) = run(&["check", "ainf", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(
        out.contains("line 4, column 10") && out.contains("`b`"),
        "{out}"
    );
    assert_eq!(run(&["check", "ainf", "--file", "/nonexistent.alg"]).0, 2);
    assert_eq!(run(&["compose", "((2)", "((1))"]).0, 2);
}

#[test]
fn cohomology_output() {
    let (code, out) = run(&["cohomology", "--file", &corpus("weighted_bv.alg")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("H^0: 1\n"), "{out}");
    let (code, out) = run(&["cohomology", "--file", &corpus("euler1_bv.alg")]);
    assert_eq!(code, 0);
    assert!(out.contains("H^3: 1"));
    assert!(out.contains("([t1],[t2]) -> -[t2]"), "{out}");
}

#[test]
fn expand_and_lift() {
    let (code, out) = run(&[
        "expand",
        "--file",
        &corpus("dual_numbers.alg"),
        "--outer",
        "m2",
        "--inner",
        "m2",
        "--target",
        "3",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("2 terms\n"), "{out}");
    let (code, out) = run(&[
        "lift",
        "--file",
        &corpus("dual_numbers.alg"),
        "--cap",
        "2",
        "--check",
    ]);
    assert_eq!(code, 0, "{out}");
}
