//! Abstract syntax shared by every other module: names, kinds, types,
//! terms, environments and the fresh-name supply.

mod env;
mod surface;
mod terms;
mod types;

use std::fmt;
use std::sync::Arc;

pub use env::{KindCtx, KindEnv, KindLookup, NameSupply, RefinedKindEnv, TypeEnv};
pub use surface::{desugar, BinOp, Expr, ExprKind, NIL, PAIR};
pub use terms::{classify, Literal, Term, TermKind, ValueClass};
pub use types::{alpha_eq, equivalent_up_to_free_renaming, ftv_ordered, Type, TypeCon};

/// Prefix reserved for machine-generated names. The lexer never produces it.
pub const RESERVED_PREFIX: char = '%';

/// An interned identifier, used for both term and type variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True for names minted by a [`NameSupply`] or by desugaring.
    pub fn is_reserved(&self) -> bool {
        self.0.starts_with(RESERVED_PREFIX)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(Arc::from(s))
    }
}

impl std::borrow::Borrow<str> for Name {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Kinds: `Mono` (•) classifies monotypes, `Poly` (★) every type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Mono,
    Poly,
}

impl Kind {
    /// Least upper bound in the order • ≤ ★.
    pub fn join(self, other: Kind) -> Kind {
        if self == Kind::Mono && other == Kind::Mono {
            Kind::Mono
        } else {
            Kind::Poly
        }
    }

    /// `self ≤ other`.
    pub fn le(self, other: Kind) -> bool {
        self == Kind::Mono || other == Kind::Poly
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Mono => f.write_str("•"),
            Kind::Poly => f.write_str("★"),
        }
    }
}

/// Source location. `line` and `col` are 1-based and refer to `start`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn new(start: usize, end: usize, line: usize, col: usize) -> Self {
        debug_assert!(start <= end);
        Span {
            start,
            end,
            line,
            col,
        }
    }

    /// Smallest span covering both.
    pub fn to(self, other: Span) -> Span {
        if other.start < self.start {
            return other.to(self);
        }
        Span {
            start: self.start,
            end: self.end.max(other.end),
            line: self.line,
            col: self.col,
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}
