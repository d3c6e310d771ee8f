//! End-to-end tests of the `freezeml` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use freezeml::parser::{parse_type, render_type};
use freezeml::prelude::{prelude, SIGNATURES};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_freezeml"))
}

fn source(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn infer_prints_the_principal_type() {
    let f = source("poly.fml", "poly ~id");
    let o = run(&["infer", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "poly ~id : (Int, Bool)\n");
}

#[test]
fn infer_can_show_the_elaboration() {
    let f = source("elab.fml", "poly ~id");
    let o = run(&["infer", "--show-elab", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2, "{out}");
    assert_eq!(out.lines().nth(1), Some("poly id"));
}

#[test]
fn unicode_rendering_is_opt_in() {
    let f = source("id.fml", "~id");
    let ascii = stdout(&run(&["infer", f.to_str().unwrap()]));
    assert_eq!(ascii, "~id : forall a. a -> a\n");
    let unicode = stdout(&run(&["--unicode", "infer", f.to_str().unwrap()]));
    assert_eq!(unicode, "~id : ∀a. a → a\n");
}

#[test]
fn type_errors_exit_with_one() {
    let f = source("bad.fml", "inc True");
    let o = run(&["infer", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn syntax_errors_and_missing_files_exit_with_two() {
    let f = source("syntax.fml", "let x = in x");
    assert_eq!(run(&["infer", f.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        run(&["infer", "/nonexistent/file.fml"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn check_uses_rigid_free_variables() {
    let f = source("lam.fml", "\\x.x");
    let p = f.to_str().unwrap();
    assert_eq!(
        run(&["check", p, "--type", "Int -> Int"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", p, "--type", "a -> a"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", p, "--type", "forall a. a -> a"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["check", p, "--type", "Int -> Bool"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["check", p, "--type", "Int ->"]).status.code(),
        Some(2)
    );
    let g = source("gen.fml", "$(\\x.x)");
    assert_eq!(
        stdout(&run(&[
            "check",
            g.to_str().unwrap(),
            "--type",
            "forall a. a -> a"
        ])),
        "ok\n"
    );
}

#[test]
fn elaborate_prints_a_typed_f_term() {
    let f = source("app.fml", "let app = \\f.\\z.f z in app ~auto ~id");
    let o = run(&["elaborate", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.trim_end().ends_with(": forall a. a -> a"), "{out}");
}

#[test]
fn import_freezes_variables() {
    let f = source("tyabs.f", "/\\a.\\x:a.x");
    let o = run(&["import", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "let (y : forall a. a -> a) = (\\(x:a).~x)@ in ~y\n"
    );
    let bad = source("illtyped.f", "inc True");
    assert_eq!(
        run(&["import", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn golden_corpus_passes() {
    let o = run(&["golden"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.trim_end().ends_with("60/60 rows passed"), "{out}");
}

#[test]
fn golden_reports_failing_rows() {
    let f = source("corpus.txt", "ok1  id 1  ⊢  Int\nwrong  id 1  ⊢  Bool\n");
    let o = run(&["golden", "--corpus", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with("1/2 rows passed"));
}

#[test]
fn the_prelude_can_be_disabled() {
    let f = source("noprelude.fml", "id");
    assert_eq!(
        run(&["--no-prelude", "infer", f.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let g = source("closed.fml", "\\x.x");
    assert_eq!(
        stdout(&run(&["--no-prelude", "infer", g.to_str().unwrap()])),
        "\\x.x : a -> a\n"
    );
}

#[test]
fn output_is_deterministic() {
    let f = source("det.fml", "let f = \\x y.y in choose ~id (f 1)");
    let p = f.to_str().unwrap();
    for args in [
        vec!["infer", "--show-elab", p],
        vec!["elaborate", p],
        vec!["golden"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stderr, b.stderr);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn prelude_matches_the_signature_table() {
    let gamma = prelude();
    assert_eq!(gamma.len(), 21);
    let names: Vec<&str> = SIGNATURES.iter().map(|(x, _)| *x).collect();
    assert_eq!(
        names,
        [
            "head", "tail", "[]", "::", "single", "++", "length", "id", "ids", "inc", "choose",
            "poly", "auto", "auto'", "map", "app", "revapp", "runST", "argST", "pair", "pair'"
        ]
    );
    for ((x, ty), (src_x, src)) in gamma.iter().zip(SIGNATURES) {
        assert_eq!(x.as_str(), *src_x);
        assert_eq!(ty, &parse_type(src).unwrap());
        assert_eq!(&parse_type(&render_type(ty, false)).unwrap(), ty);
    }
}
