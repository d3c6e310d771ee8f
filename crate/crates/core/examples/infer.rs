//! Principal types for a handful of programs that mix freezing,
//! generalisation and instantiation.

use std::error::Error;
use std::io::Write;

use freezeml::infer::infer_top;
use freezeml::parser::{parse_program, render_type};
use freezeml::prelude::prelude;

const PROGRAMS: &[&str] = &[
    "id",
    "~id",
    "$(\\x.x)",
    "poly ~id",
    "single ~id",
    "head ids@",
    "auto ~id",
    "let f = \\x.x in ~f",
    "let f = id id in ~f",
    "runST ~argST",
    "\\(f : forall a. a -> a). (f 1, f True)",
    "id = $(\\x.x); choose ~id",
];

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let gamma = prelude();
    for src in PROGRAMS {
        let m = parse_program(src)?;
        match infer_top(&gamma, &m) {
            Ok(ty) => writeln!(out, "{src:<42} : {}", render_type(&ty, true))?,
            Err(e) => writeln!(out, "{src:<42} : error: {e}")?,
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
