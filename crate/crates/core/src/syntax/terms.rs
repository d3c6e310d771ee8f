use std::collections::HashSet;
use std::fmt;

use super::{Name, Span, Type};

/// Literal constants. Integers have type `Int`, booleans `Bool`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Literal {
    Int(i64),
    Bool(bool),
}

impl Literal {
    pub fn ty(self) -> Type {
        match self {
            Literal::Int(_) => Type::int(),
            Literal::Bool(_) => Type::bool(),
        }
    }
}

/// Core FreezeML terms, after desugaring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    Var(Name),
    Freeze(Name),
    Lit(Literal),
    Lam(Name, Box<Term>),
    LamAnn(Name, Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    Let(Name, Box<Term>, Box<Term>),
    LetAnn(Name, Type, Box<Term>, Box<Term>),
}

/// A term node with its source span. Equality ignores spans.
#[derive(Clone)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Term {}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::render_term(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::render_term(self))
    }
}

impl From<TermKind> for Term {
    fn from(kind: TermKind) -> Term {
        Term {
            kind,
            span: Span::default(),
        }
    }
}

impl Term {
    pub fn new(kind: TermKind, span: Span) -> Term {
        Term { kind, span }
    }

    pub fn var(x: impl Into<Name>) -> Term {
        TermKind::Var(x.into()).into()
    }

    pub fn freeze(x: impl Into<Name>) -> Term {
        TermKind::Freeze(x.into()).into()
    }

    pub fn int(n: i64) -> Term {
        TermKind::Lit(Literal::Int(n)).into()
    }

    pub fn boolean(b: bool) -> Term {
        TermKind::Lit(Literal::Bool(b)).into()
    }

    pub fn lam(x: impl Into<Name>, body: Term) -> Term {
        TermKind::Lam(x.into(), Box::new(body)).into()
    }

    pub fn lam_ann(x: impl Into<Name>, ty: Type, body: Term) -> Term {
        TermKind::LamAnn(x.into(), ty, Box::new(body)).into()
    }

    pub fn app(f: Term, a: Term) -> Term {
        TermKind::App(Box::new(f), Box::new(a)).into()
    }

    /// Left-nested application `f a₁ … aₙ`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn let_(x: impl Into<Name>, bound: Term, body: Term) -> Term {
        TermKind::Let(x.into(), Box::new(bound), Box::new(body)).into()
    }

    pub fn let_ann(x: impl Into<Name>, ty: Type, bound: Term, body: Term) -> Term {
        TermKind::LetAnn(x.into(), ty, Box::new(bound), Box::new(body)).into()
    }

    pub fn with_span(mut self, span: Span) -> Term {
        self.span = span;
        self
    }

    pub fn class(&self) -> ValueClass {
        classify(self)
    }

    pub fn is_val(&self) -> bool {
        classify(self) != ValueClass::NonVal
    }

    pub fn is_gval(&self) -> bool {
        classify(self) == ValueClass::GVal
    }

    /// Type-variable names mentioned by annotations anywhere in the term.
    pub fn annotation_names(&self, out: &mut HashSet<Name>) {
        match &self.kind {
            TermKind::Var(_) | TermKind::Freeze(_) | TermKind::Lit(_) => {}
            TermKind::Lam(_, b) => b.annotation_names(out),
            TermKind::LamAnn(_, t, b) => {
                t.collect_names(out);
                b.annotation_names(out);
            }
            TermKind::App(f, a) => {
                f.annotation_names(out);
                a.annotation_names(out);
            }
            TermKind::Let(_, m, n) => {
                m.annotation_names(out);
                n.annotation_names(out);
            }
            TermKind::LetAnn(_, t, m, n) => {
                t.collect_names(out);
                m.annotation_names(out);
                n.annotation_names(out);
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match &self.kind {
            TermKind::Var(_) | TermKind::Freeze(_) | TermKind::Lit(_) => 1,
            TermKind::Lam(_, b) | TermKind::LamAnn(_, _, b) => 1 + b.size(),
            TermKind::App(f, a) => 1 + f.size() + a.size(),
            TermKind::Let(_, m, n) | TermKind::LetAnn(_, _, m, n) => 1 + m.size() + n.size(),
        }
    }
}

/// Syntactic value classes. `GVal` implies `Val`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueClass {
    NonVal,
    Val,
    GVal,
}

/// Classifies a term as a guarded value, a value, or neither.
///
/// Literals behave like plain variables: they are guarded values.
pub fn classify(m: &Term) -> ValueClass {
    match &m.kind {
        TermKind::Var(_) | TermKind::Lit(_) | TermKind::Lam(..) | TermKind::LamAnn(..) => {
            ValueClass::GVal
        }
        TermKind::Freeze(_) => ValueClass::Val,
        TermKind::App(..) => ValueClass::NonVal,
        TermKind::Let(_, bound, body) | TermKind::LetAnn(_, _, bound, body) => {
            if classify(bound) == ValueClass::NonVal {
                return ValueClass::NonVal;
            }
            classify(body)
        }
    }
}
