//! Annotated lets and lambdas. An annotation on a let over a guarded
//! value binds its quantifiers in the bound term; elsewhere it is checked
//! as written. Annotated lambda parameters may be polymorphic.

use std::error::Error;
use std::io::Write;

use freezeml::infer::infer_top;
use freezeml::parser::{parse_program, render_type};
use freezeml::prelude::prelude;

const PROGRAMS: &[&str] = &[
    "let (f : forall a. a -> a) = \\x.x in ~f",
    "let (f : forall a. a -> a) = \\(x:a).x in ~f",
    "let (f : forall a. [a] -> Int) = length in ~f",
    "let (f : forall a. a -> a) = id id in ~f",
    "let (f : Int -> Int) = \\x.x in ~f",
    "let (f : forall a. a -> a) = \\(x:a). let (g : forall a. a -> a) = \\(y:a).y in x in ~f",
    "let (f : forall a. a -> a) = \\(x:a). let (g : forall a. a -> a) = \\(y:a).x in x in ~f",
    "\\(f : forall a. a -> a). f f",
    "\\f. f f",
    "\\(x : forall a. a -> a). ~x",
];

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let gamma = prelude();
    for src in PROGRAMS {
        let m = parse_program(src)?;
        match infer_top(&gamma, &m) {
            Ok(ty) => writeln!(out, "{src}\n  : {}", render_type(&ty, true))?,
            Err(e) => writeln!(out, "{src}\n  error: {e}")?,
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
