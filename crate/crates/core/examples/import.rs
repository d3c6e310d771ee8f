//! Importing System F terms. Type abstraction becomes an annotated let
//! over a guarded value; type application instantiates and re-annotates.

use std::error::Error;
use std::io::Write;

use freezeml::infer::infer_top;
use freezeml::parser::{display_term_names, parse_fterm, render_term, render_type};
use freezeml::prelude::prelude;
use freezeml::syntax::{alpha_eq, KindEnv};
use freezeml::systemf::f_typecheck;
use freezeml::translate::{from_systemf, from_systemf_with, TyAppEncoding};

const TERMS: &[&str] = &[
    "/\\a.\\x:a.x",
    "id [Int] 3",
    "auto id",
    "/\\a.\\f:a -> a.\\x:a.f (f x)",
    "choose [forall a. a -> a] id",
    "/\\b. id [b -> b]",
];

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let gamma = prelude();
    for src in TERMS {
        let t = parse_fterm(src)?;
        let want = f_typecheck(&KindEnv::new(), &gamma, &t)?;
        let m = from_systemf(&KindEnv::new(), &gamma, &t)?;
        let got = infer_top(&gamma, &m)?;
        let naive = from_systemf_with(&KindEnv::new(), &gamma, &t, TyAppEncoding::Naive)?;
        let naive_ok = matches!(infer_top(&gamma, &naive), Ok(ty) if alpha_eq(&ty, &want));
        writeln!(out, "{src}")?;
        writeln!(out, "  => {}", render_term(&display_term_names(&m)))?;
        writeln!(
            out,
            "  :  {} (round trip: {}, without @: {})",
            render_type(&got, true),
            alpha_eq(&got, &want),
            naive_ok
        )?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
