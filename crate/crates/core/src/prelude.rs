//! The built-in environment of list, pair and polymorphism combinators.

use crate::parser::parse_type;
use crate::syntax::{Name, TypeEnv};

/// Signatures in declaration order.
pub const SIGNATURES: &[(&str, &str)] = &[
    ("head", "forall a. [a] -> a"),
    ("tail", "forall a. [a] -> [a]"),
    ("[]", "forall a. [a]"),
    ("::", "forall a. a -> [a] -> [a]"),
    ("single", "forall a. a -> [a]"),
    ("++", "forall a. [a] -> [a] -> [a]"),
    ("length", "forall a. [a] -> Int"),
    ("id", "forall a. a -> a"),
    ("ids", "[forall a. a -> a]"),
    ("inc", "Int -> Int"),
    ("choose", "forall a. a -> a -> a"),
    ("poly", "(forall a. a -> a) -> (Int, Bool)"),
    ("auto", "(forall a. a -> a) -> (forall a. a -> a)"),
    ("auto'", "forall b. (forall a. a -> a) -> (b -> b)"),
    ("map", "forall a b. (a -> b) -> [a] -> [b]"),
    ("app", "forall a b. (a -> b) -> a -> b"),
    ("revapp", "forall a b. a -> (a -> b) -> b"),
    ("runST", "forall a. (forall s. ST s a) -> a"),
    ("argST", "forall s. ST s Int"),
    ("pair", "forall a b. a -> b -> (a, b)"),
    ("pair'", "forall b a. a -> b -> (a, b)"),
];

pub fn prelude() -> TypeEnv {
    SIGNATURES
        .iter()
        .map(|(x, t)| {
            (
                Name::from(*x),
                parse_type(t).expect("prelude signature parses"),
            )
        })
        .collect()
}
