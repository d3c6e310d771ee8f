//! Concrete syntax: lexing, parsing and printing of types, terms,
//! programs and System F terms.
//!
//! ```text
//! type   := 'forall' ident+ '.' type | arrow
//! arrow  := tapp ('->' type)?
//! tapp   := CON tatom* | tatom
//! tatom  := ident | '[' type ']' | '(' type ',' type ')' | '(' type ')'
//!
//! term   := '\' binder+ '.' term | 'let' lbind '=' term 'in' term | cons
//! cons   := plus (('::' | '++') cons)?
//! plus   := app ('+' app)*
//! app    := post+
//! post   := prefix '@'*
//! prefix := '$'? atom
//! atom   := '~'? var | '~[]' | int | 'True' | 'False' | '(' term (',' term)? ')'
//!         | '[' (term (',' term)*)? ']'
//! var    := ident | '(' op ')'
//! binder := ident | '(' ident ':' type ')'
//!
//! program := (ident (':' type)? '=' term ';')* term
//!
//! fterm  := '/\' ident+ '.' fterm | '\' ident ':' type '.' fterm | fapp
//! fapp   := fatom (fatom | '[' type ']')*
//! ```

mod lexer;
mod render;

use std::collections::HashSet;

use thiserror::Error;

pub use render::{
    display_term_names, normalize_type, render_literal, render_term, render_type, render_type_with,
    render_var,
};

use crate::syntax::{
    desugar, BinOp, Expr, ExprKind, Literal, Name, Span, Term, Type, TypeCon, NIL,
};
use crate::systemf::FTerm;
use lexer::{lex, Tok, Token};

const MAX_DEPTH: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{message}")]
    Syntax { message: String, span: Span },
    #[error("type constructor {con} expects {expected} argument(s), found {found}")]
    Arity {
        con: TypeCon,
        expected: usize,
        found: usize,
        span: Span,
    },
    #[error("program has no final term")]
    MissingFinalTerm { span: Span },
}

impl ParseError {
    pub fn span(&self) -> Span {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::Arity { span, .. }
            | ParseError::MissingFinalTerm { span } => *span,
        }
    }
}

pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses a single term, keeping the surface sugar.
pub fn parse_term(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.term()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses declarations followed by a final term and desugars the result
/// into nested lets.
pub fn parse_program(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let mut decls = Vec::new();
    while p.at_decl() {
        let start = p.span();
        let name = p.ident()?;
        let ann = if p.eat(&Tok::Colon) {
            Some(p.ty()?)
        } else {
            None
        };
        p.expect(&Tok::Eq)?;
        let bound = p.term()?;
        p.expect(&Tok::Semi)?;
        decls.push((name, ann, bound, start));
    }
    if p.peek() == &Tok::Eof {
        return Err(ParseError::MissingFinalTerm { span: p.span() });
    }
    let mut e = p.term()?;
    p.expect_eof()?;
    for (name, ann, bound, start) in decls.into_iter().rev() {
        let span = start.to(e.span);
        e = Expr {
            kind: ExprKind::Let(name, ann, Box::new(bound), Box::new(e)),
            span,
        };
    }
    Ok(desugar(&e))
}

/// Parses a System F term in the printer's syntax.
pub fn parse_fterm(src: &str) -> Result<FTerm, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.fterm()?;
    p.expect_eof()?;
    Ok(t)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.advance();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, what: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            message: format!("expected {what}, found {}", self.peek().describe()),
            span: self.span(),
        })
    }

    fn expect(&mut self, t: &Tok) -> Result<Span, ParseError> {
        if self.peek() == t {
            Ok(self.advance().span)
        } else {
            self.error(&t.describe())
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn ident(&mut self) -> Result<Name, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok(Name::from(s))
            }
            _ => self.error("identifier"),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::Syntax {
                message: "expression nested too deeply".to_string(),
                span: self.span(),
            });
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn at_decl(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_)) && matches!(self.peek_at(1), Tok::Eq | Tok::Colon)
    }

    // ---- types ----

    fn ty(&mut self) -> Result<Type, ParseError> {
        self.enter()?;
        let r = self.ty_inner();
        self.leave();
        r
    }

    fn ty_inner(&mut self) -> Result<Type, ParseError> {
        if self.eat(&Tok::Forall) {
            let mut names: Vec<Name> = Vec::new();
            while let Tok::Ident(_) = self.peek() {
                let span = self.span();
                let n = self.type_var()?;
                if names.contains(&n) {
                    return Err(ParseError::Syntax {
                        message: format!("duplicate quantifier `{n}`"),
                        span,
                    });
                }
                names.push(n);
            }
            if names.is_empty() {
                return self.error("type variable");
            }
            self.expect(&Tok::Dot)?;
            let body = self.ty()?;
            return Ok(Type::forall(names, body));
        }
        let lhs = self.ty_app()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.ty()?;
            return Ok(Type::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn type_var(&mut self) -> Result<Name, ParseError> {
        let span = self.span();
        let n = self.ident()?;
        if constructor(n.as_str()).is_some() {
            return Err(ParseError::Syntax {
                message: format!("`{n}` is a type constructor, not a variable"),
                span,
            });
        }
        Ok(n)
    }

    fn ty_app(&mut self) -> Result<Type, ParseError> {
        let start = self.span();
        if let Tok::Ident(s) = self.peek() {
            if let Some(con) = constructor(s) {
                self.advance();
                let mut args = Vec::new();
                while self.at_ty_atom() {
                    args.push(self.ty_atom()?);
                }
                if args.len() != con.arity() {
                    return Err(ParseError::Arity {
                        con,
                        expected: con.arity(),
                        found: args.len(),
                        span: start.to(self.prev_span()),
                    });
                }
                return Ok(Type::Con(con, args));
            }
        }
        let t = self.ty_atom()?;
        if self.at_ty_atom() {
            return Err(ParseError::Syntax {
                message: "only type constructors can be applied".to_string(),
                span: self.span(),
            });
        }
        Ok(t)
    }

    fn at_ty_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen | Tok::LBracket)
    }

    fn ty_atom(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                if let Some(con) = constructor(&s) {
                    let span = self.advance().span;
                    if con.arity() != 0 {
                        return Err(ParseError::Arity {
                            con,
                            expected: con.arity(),
                            found: 0,
                            span,
                        });
                    }
                    return Ok(Type::Con(con, Vec::new()));
                }
                self.advance();
                Ok(Type::Var(Name::from(s)))
            }
            Tok::LBracket => {
                self.advance();
                let t = self.ty()?;
                self.expect(&Tok::RBracket)?;
                Ok(Type::list(t))
            }
            Tok::LParen => {
                self.advance();
                let t = self.ty()?;
                if self.eat(&Tok::Comma) {
                    let u = self.ty()?;
                    self.expect(&Tok::RParen)?;
                    return Ok(Type::pair(t, u));
                }
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            _ => self.error("type"),
        }
    }

    // ---- terms ----

    fn term(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let r = self.term_inner();
        self.leave();
        r
    }

    fn term_inner(&mut self) -> Result<Expr, ParseError> {
        let start = self.span();
        match self.peek() {
            Tok::Backslash => {
                self.advance();
                let mut binders = Vec::new();
                loop {
                    match self.peek() {
                        Tok::Ident(_) => binders.push((self.ident()?, None)),
                        Tok::LParen => {
                            self.advance();
                            let x = self.ident()?;
                            self.expect(&Tok::Colon)?;
                            let t = self.ty()?;
                            self.expect(&Tok::RParen)?;
                            binders.push((x, Some(t)));
                        }
                        _ => break,
                    }
                }
                if binders.is_empty() {
                    return self.error("lambda binder");
                }
                self.expect(&Tok::Dot)?;
                let body = self.term()?;
                let span = start.to(body.span);
                Ok(binders.into_iter().rev().fold(body, |acc, (x, t)| Expr {
                    kind: ExprKind::Lam(x, t, Box::new(acc)),
                    span,
                }))
            }
            Tok::Let => {
                self.advance();
                let (x, ann) = if self.eat(&Tok::LParen) {
                    let x = self.ident()?;
                    self.expect(&Tok::Colon)?;
                    let t = self.ty()?;
                    self.expect(&Tok::RParen)?;
                    (x, Some(t))
                } else {
                    (self.ident()?, None)
                };
                self.expect(&Tok::Eq)?;
                let bound = self.term()?;
                self.expect(&Tok::In)?;
                let body = self.term()?;
                let span = start.to(body.span);
                Ok(Expr {
                    kind: ExprKind::Let(x, ann, Box::new(bound), Box::new(body)),
                    span,
                })
            }
            _ => self.cons(),
        }
    }

    fn cons(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.plus()?;
        let op = match self.peek() {
            Tok::ColonColon => BinOp::Cons,
            Tok::PlusPlus => BinOp::Append,
            _ => return Ok(lhs),
        };
        self.advance();
        self.enter()?;
        let rhs = self.cons();
        self.leave();
        let rhs = rhs?;
        let span = lhs.span.to(rhs.span);
        Ok(Expr {
            kind: ExprKind::BinOp(op, Box::new(lhs), Box::new(rhs)),
            span,
        })
    }

    fn plus(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.app()?;
        while self.eat(&Tok::Plus) {
            let rhs = self.app()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr {
                kind: ExprKind::BinOp(BinOp::Plus, Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn at_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_)
                | Tok::Int(_)
                | Tok::True
                | Tok::False
                | Tok::LParen
                | Tok::LBracket
                | Tok::Tilde
                | Tok::Dollar
        )
    }

    fn app(&mut self) -> Result<Expr, ParseError> {
        if !self.at_atom() {
            return self.error("term");
        }
        let mut f = self.post()?;
        while self.at_atom() {
            let a = self.post()?;
            let span = f.span.to(a.span);
            f = Expr {
                kind: ExprKind::App(Box::new(f), Box::new(a)),
                span,
            };
        }
        Ok(f)
    }

    fn post(&mut self) -> Result<Expr, ParseError> {
        let start = self.span();
        let mut e = if self.eat(&Tok::Dollar) {
            let inner = self.atom()?;
            let span = start.to(inner.span);
            Expr {
                kind: ExprKind::Gen(Box::new(inner)),
                span,
            }
        } else {
            self.atom()?
        };
        while self.peek() == &Tok::At {
            let at = self.advance().span;
            let span = e.span.to(at);
            e = Expr {
                kind: ExprKind::Inst(Box::new(e)),
                span,
            };
        }
        Ok(e)
    }

    /// `ident` or a parenthesised operator such as `(::)`.
    fn var_name(&mut self) -> Result<Option<Name>, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok(Some(Name::from(s)))
            }
            Tok::LParen => {
                if let Some(op) = op_symbol(self.peek_at(1)) {
                    if self.peek_at(2) == &Tok::RParen {
                        self.advance();
                        self.advance();
                        self.advance();
                        return Ok(Some(Name::from(op)));
                    }
                }
                Ok(None)
            }
            _ => Ok(None),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let r = self.atom_inner();
        self.leave();
        r
    }

    fn atom_inner(&mut self) -> Result<Expr, ParseError> {
        let start = self.span();
        let mk = |kind, p: &Parser| Expr {
            kind,
            span: start.to(p.prev_span()),
        };
        if self.eat(&Tok::Tilde) {
            if self.peek() == &Tok::LBracket && self.peek_at(1) == &Tok::RBracket {
                self.advance();
                self.advance();
                return Ok(mk(ExprKind::Freeze(Name::from(NIL)), self));
            }
            return match self.var_name()? {
                Some(x) => Ok(mk(ExprKind::Freeze(x), self)),
                None => self.error("variable after `~`"),
            };
        }
        if let Some(x) = self.var_name()? {
            return Ok(mk(ExprKind::Var(x), self));
        }
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(mk(ExprKind::Lit(Literal::Int(n)), self))
            }
            Tok::True => {
                self.advance();
                Ok(mk(ExprKind::Lit(Literal::Bool(true)), self))
            }
            Tok::False => {
                self.advance();
                Ok(mk(ExprKind::Lit(Literal::Bool(false)), self))
            }
            Tok::LParen => {
                self.advance();
                let e = self.term()?;
                if self.eat(&Tok::Comma) {
                    let f = self.term()?;
                    self.expect(&Tok::RParen)?;
                    return Ok(mk(ExprKind::Pair(Box::new(e), Box::new(f)), self));
                }
                self.expect(&Tok::RParen)?;
                Ok(Expr {
                    kind: e.kind,
                    span: start.to(self.prev_span()),
                })
            }
            Tok::LBracket => {
                self.advance();
                let mut items = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    items.push(self.term()?);
                    while self.eat(&Tok::Comma) {
                        items.push(self.term()?);
                    }
                    self.expect(&Tok::RBracket)?;
                }
                Ok(mk(ExprKind::List(items), self))
            }
            _ => self.error("term"),
        }
    }

    // ---- System F ----

    fn fterm(&mut self) -> Result<FTerm, ParseError> {
        self.enter()?;
        let r = self.fterm_inner();
        self.leave();
        r
    }

    fn fterm_inner(&mut self) -> Result<FTerm, ParseError> {
        match self.peek() {
            Tok::BigLambda => {
                self.advance();
                let mut names = Vec::new();
                while let Tok::Ident(_) = self.peek() {
                    names.push(self.type_var()?);
                }
                if names.is_empty() {
                    return self.error("type variable");
                }
                self.expect(&Tok::Dot)?;
                let body = self.fterm()?;
                Ok(FTerm::ty_abs_n(&names, body))
            }
            Tok::Backslash => {
                self.advance();
                let paren = self.eat(&Tok::LParen);
                let x = self.ident()?;
                self.expect(&Tok::Colon)?;
                let t = self.ty()?;
                if paren {
                    self.expect(&Tok::RParen)?;
                }
                self.expect(&Tok::Dot)?;
                let body = self.fterm()?;
                Ok(FTerm::lam(x, t, body))
            }
            _ => {
                let mut f = self.fatom()?;
                loop {
                    if self.peek() == &Tok::LBracket && self.peek_at(1) != &Tok::RBracket {
                        self.advance();
                        let t = self.ty()?;
                        self.expect(&Tok::RBracket)?;
                        f = FTerm::ty_app(f, t);
                    } else if self.at_fatom() {
                        let a = self.fatom()?;
                        f = FTerm::app(f, a);
                    } else {
                        return Ok(f);
                    }
                }
            }
        }
    }

    fn at_fatom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Int(_) | Tok::True | Tok::False | Tok::LParen
        ) || (self.peek() == &Tok::LBracket && self.peek_at(1) == &Tok::RBracket)
    }

    fn fatom(&mut self) -> Result<FTerm, ParseError> {
        if self.peek() == &Tok::LBracket && self.peek_at(1) == &Tok::RBracket {
            self.advance();
            self.advance();
            return Ok(FTerm::var(crate::syntax::NIL));
        }
        if let Some(x) = self.var_name()? {
            return Ok(FTerm::Var(x));
        }
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(FTerm::Lit(Literal::Int(n)))
            }
            Tok::True => {
                self.advance();
                Ok(FTerm::Lit(Literal::Bool(true)))
            }
            Tok::False => {
                self.advance();
                Ok(FTerm::Lit(Literal::Bool(false)))
            }
            Tok::LParen => {
                self.advance();
                let t = self.fterm()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            _ => self.error("System F term"),
        }
    }
}

fn constructor(s: &str) -> Option<TypeCon> {
    match s {
        "Int" => Some(TypeCon::Int),
        "Bool" => Some(TypeCon::Bool),
        "List" => Some(TypeCon::List),
        "Pair" => Some(TypeCon::Pair),
        "ST" => Some(TypeCon::ST),
        _ => None,
    }
}

fn op_symbol(t: &Tok) -> Option<&'static str> {
    match t {
        Tok::ColonColon => Some("::"),
        Tok::PlusPlus => Some("++"),
        Tok::Plus => Some("+"),
        _ => None,
    }
}

/// Words the lexer treats specially; they cannot name variables.
pub fn is_keyword(s: &str) -> bool {
    matches!(s, "forall" | "let" | "in" | "True" | "False")
}

/// Whether `s` lexes as a single identifier usable as a type variable.
pub fn is_type_var_name(s: &str) -> bool {
    is_plain_ident(s) && constructor(s).is_none()
}

/// Whether `s` lexes as a single identifier.
pub fn is_plain_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if lexer::is_ident_start(c))
        && cs.all(lexer::is_ident_char)
        && !is_keyword(s)
}

/// Names that occur anywhere in a term, bound or free, including type
/// names in annotations.
pub fn term_names(t: &Term) -> HashSet<Name> {
    let mut out = HashSet::new();
    render::collect_term_names(t, &mut out);
    t.annotation_names(&mut out);
    out
}
