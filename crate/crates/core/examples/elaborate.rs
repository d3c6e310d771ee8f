//! Elaboration into System F. The result is re-checked by the System F
//! type checker and must agree with the inferred type.

use std::error::Error;
use std::io::Write;

use freezeml::parser::{parse_program, render_type};
use freezeml::prelude::prelude;
use freezeml::syntax::{alpha_eq, KindEnv};
use freezeml::systemf::{display_names, f_typecheck, render_fterm};
use freezeml::translate::elaborate;

const PROGRAMS: &[&str] = &[
    "let app = \\f.\\z.f z in app ~auto ~id",
    "poly $(\\x.x)",
    "let f = \\x.x in (f 1, f True)",
    "map head (single ids)",
    "(\\(x : [forall a. a -> a]). head x) ids",
];

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let gamma = prelude();
    for src in PROGRAMS {
        let m = parse_program(src)?;
        let (f, ty) = elaborate(&KindEnv::new(), &gamma, &m)?;
        let checked = f_typecheck(&KindEnv::new(), &gamma, &f)?;
        writeln!(out, "{src}")?;
        writeln!(out, "  => {}", render_fterm(&display_names(&f), false))?;
        writeln!(
            out,
            "  :  {} (agrees: {})",
            render_type(&ty, true),
            alpha_eq(&ty, &checked)
        )?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
