//! Kind-aware unification. Flexible variables carry a kind: `•` ones only
//! take monotypes, `★` ones take anything. Rigid variables only unify
//! with themselves, and bound variables may not escape their quantifier.

use std::error::Error;
use std::io::Write;

use freezeml::parser::{parse_type, render_type};
use freezeml::syntax::{Kind, KindEnv, NameSupply, RefinedKindEnv, Type};
use freezeml::unify::unify;

const PROBLEMS: &[(&str, &str)] = &[
    ("m -> Int", "Bool -> Int"),
    ("p", "forall a. a -> a"),
    ("m", "forall a. a -> a"),
    ("[p]", "[forall a. a -> a]"),
    ("forall a. a -> m", "forall b. b -> Int"),
    ("forall a. a -> p", "forall b. b -> b"),
    ("s -> m", "t -> Bool"),
    ("p", "[p]"),
    ("(m, p)", "(Int, forall a. [a])"),
];

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let delta = KindEnv::from_iter(["s", "t"]);
    let theta: RefinedKindEnv = [("m", Kind::Mono), ("p", Kind::Poly)].into_iter().collect();
    writeln!(
        out,
        "rigid s t; flexible m : {}, p : {}",
        Kind::Mono,
        Kind::Poly
    )?;
    for (a, b) in PROBLEMS {
        let (ta, tb) = (parse_type(a)?, parse_type(b)?);
        match unify(&delta, &theta, &ta, &tb, &mut NameSupply::new()) {
            Ok((_, s)) => {
                let solved: Vec<String> = theta
                    .names()
                    .filter_map(|x| s.get(x).map(|t| (x, t)))
                    .filter(|(x, t)| !matches!(t, Type::Var(y) if y == *x))
                    .map(|(x, t)| format!("{x} := {}", render_type(t, false)))
                    .collect();
                writeln!(
                    out,
                    "{a} ~ {b}: {}",
                    if solved.is_empty() {
                        "-".into()
                    } else {
                        solved.join(", ")
                    }
                )?;
            }
            Err(e) => writeln!(out, "{a} ~ {b}: {e}")?,
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
