use super::{Literal, Name, Span, Term, TermKind, Type, RESERVED_PREFIX};

/// Infix operators; each names a function in the environment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Cons,
    Append,
    Plus,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Cons => "::",
            BinOp::Append => "++",
            BinOp::Plus => "+",
        }
    }

    pub fn from_symbol(s: &str) -> Option<BinOp> {
        match s {
            "::" => Some(BinOp::Cons),
            "++" => Some(BinOp::Append),
            "+" => Some(BinOp::Plus),
            _ => None,
        }
    }
}

/// Surface terms as parsed, before the sugar is expanded.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Var(Name),
    Freeze(Name),
    Lit(Literal),
    Lam(Name, Option<Type>, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Let(Name, Option<Type>, Box<Expr>, Box<Expr>),
    /// `$M`
    Gen(Box<Expr>),
    /// `M@`
    Inst(Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    List(Vec<Expr>),
    BinOp(BinOp, Box<Expr>, Box<Expr>),
}

/// Name of the nil constant in the prelude.
pub const NIL: &str = "[]";
/// Name of the pair constructor in the prelude.
pub const PAIR: &str = "pair";

/// Expands `$`, `@`, pairs, list literals and infix operators.
///
/// `$M` becomes `let %k = M in ~%k` and `M@` becomes `let %k = M in %k`.
/// The fresh names are reserved, so they cannot capture user variables.
pub fn desugar(e: &Expr) -> Term {
    Desugar { next: 0 }.go(e)
}

struct Desugar {
    next: usize,
}

impl Desugar {
    fn fresh(&mut self) -> Name {
        let n = Name::from(format!("{RESERVED_PREFIX}{}", self.next));
        self.next += 1;
        n
    }

    fn go(&mut self, e: &Expr) -> Term {
        let span = e.span;
        let kind = match &e.kind {
            ExprKind::Var(x) => TermKind::Var(x.clone()),
            ExprKind::Freeze(x) => TermKind::Freeze(x.clone()),
            ExprKind::Lit(l) => TermKind::Lit(*l),
            ExprKind::Lam(x, None, body) => TermKind::Lam(x.clone(), Box::new(self.go(body))),
            ExprKind::Lam(x, Some(ty), body) => {
                TermKind::LamAnn(x.clone(), ty.clone(), Box::new(self.go(body)))
            }
            ExprKind::App(f, a) => TermKind::App(Box::new(self.go(f)), Box::new(self.go(a))),
            ExprKind::Let(x, None, m, n) => {
                TermKind::Let(x.clone(), Box::new(self.go(m)), Box::new(self.go(n)))
            }
            ExprKind::Let(x, Some(ty), m, n) => TermKind::LetAnn(
                x.clone(),
                ty.clone(),
                Box::new(self.go(m)),
                Box::new(self.go(n)),
            ),
            ExprKind::Gen(m) => {
                let x = self.fresh();
                let bound = self.go(m);
                TermKind::Let(
                    x.clone(),
                    Box::new(bound),
                    Box::new(Term::freeze(x).with_span(span)),
                )
            }
            ExprKind::Inst(m) => {
                let x = self.fresh();
                let bound = self.go(m);
                TermKind::Let(
                    x.clone(),
                    Box::new(bound),
                    Box::new(Term::var(x).with_span(span)),
                )
            }
            ExprKind::Pair(a, b) => {
                let f = Term::var(PAIR).with_span(span);
                let inner = Term::app(f, self.go(a)).with_span(span);
                TermKind::App(Box::new(inner), Box::new(self.go(b)))
            }
            ExprKind::List(items) => {
                let mut acc = Term::var(NIL).with_span(span);
                for item in items.iter().rev() {
                    let head = self.go(item);
                    let cons = Term::var(BinOp::Cons.symbol()).with_span(span);
                    acc = Term::app(Term::app(cons, head).with_span(span), acc).with_span(span);
                }
                return acc;
            }
            ExprKind::BinOp(op, l, r) => {
                let f = Term::var(op.symbol()).with_span(span);
                let inner = Term::app(f, self.go(l)).with_span(span);
                TermKind::App(Box::new(inner), Box::new(self.go(r)))
            }
        };
        Term::new(kind, span)
    }
}
