//! The declarative judgement: a term has every instance of its principal
//! type and nothing else.

use std::error::Error;
use std::io::Write;

use freezeml::declcheck::check_typing;
use freezeml::parser::{parse_program, parse_type};
use freezeml::prelude::prelude;
use freezeml::syntax::KindEnv;

const CASES: &[(&str, &str)] = &[
    ("\\x.x", "Int -> Int"),
    ("\\x.x", "(forall a. a -> a) -> (forall a. a -> a)"),
    ("\\x.x", "forall a. a -> a"),
    ("$(\\x.x)", "forall a. a -> a"),
    ("~id", "forall a. a -> a"),
    ("~id", "Int -> Int"),
    ("id", "Int -> Int"),
    ("single id", "[(forall a. a -> a) -> (forall a. a -> a)]"),
    ("single ~id", "[forall a. a -> a]"),
    ("pair 1 True", "(Int, Bool)"),
    ("~pair", "forall b a. a -> b -> (a, b)"),
    ("~pair", "forall a b. a -> b -> (a, b)"),
];

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let gamma = prelude();
    for (src, ty) in CASES {
        let m = parse_program(src)?;
        let a = parse_type(ty)?;
        let verdict = if check_typing(&KindEnv::new(), &gamma, &m, &a)? {
            "yes"
        } else {
            "no"
        };
        writeln!(out, "{src:<12} : {ty:<46} {verdict}")?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
