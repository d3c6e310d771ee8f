//! Printers. Every printed type and term parses back to itself, except
//! that reserved names must first be renamed with [`normalize_type`] or
//! [`display_term_names`].

use std::collections::{HashMap, HashSet};

use super::is_keyword;
use crate::syntax::{BinOp, Literal, Name, Term, TermKind, Type, TypeCon};

pub fn render_type(ty: &Type, normalize: bool) -> String {
    render_type_with(ty, normalize, false)
}

pub fn render_type_with(ty: &Type, normalize: bool, unicode: bool) -> String {
    let mut out = String::new();
    if normalize {
        write_type(&normalize_type(ty), TPrec::Top, unicode, &mut out);
    } else {
        write_type(ty, TPrec::Top, unicode, &mut out);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum TPrec {
    Top,
    Arg,
    Atom,
}

fn write_type(ty: &Type, prec: TPrec, unicode: bool, out: &mut String) {
    match ty {
        Type::Var(a) => out.push_str(a.as_str()),
        Type::Forall(..) => {
            wrap(prec > TPrec::Top, out, |out| {
                let mut names: Vec<&Name> = Vec::new();
                let mut body = ty;
                while let Type::Forall(a, b) = body {
                    if names.contains(&a) {
                        break;
                    }
                    names.push(a);
                    body = b;
                }
                out.push_str(if unicode { "∀" } else { "forall " });
                let joined: Vec<&str> = names.iter().map(|n| n.as_str()).collect();
                out.push_str(&joined.join(" "));
                out.push_str(". ");
                write_type(body, TPrec::Top, unicode, out);
            });
        }
        Type::Con(TypeCon::Arrow, args) => {
            wrap(prec > TPrec::Top, out, |out| {
                write_type(&args[0], TPrec::Arg, unicode, out);
                out.push_str(if unicode { " → " } else { " -> " });
                write_type(&args[1], TPrec::Top, unicode, out);
            });
        }
        Type::Con(TypeCon::List, args) => {
            out.push('[');
            write_type(&args[0], TPrec::Top, unicode, out);
            out.push(']');
        }
        Type::Con(TypeCon::Pair, args) => {
            out.push('(');
            write_type(&args[0], TPrec::Top, unicode, out);
            out.push_str(", ");
            write_type(&args[1], TPrec::Top, unicode, out);
            out.push(')');
        }
        Type::Con(con, args) if args.is_empty() => out.push_str(con.name()),
        Type::Con(con, args) => {
            wrap(prec > TPrec::Arg, out, |out| {
                out.push_str(con.name());
                for a in args {
                    out.push(' ');
                    write_type(a, TPrec::Atom, unicode, out);
                }
            });
        }
    }
}

fn wrap(cond: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if cond {
        out.push('(');
    }
    body(out);
    if cond {
        out.push(')');
    }
}

/// Candidate display names `a`, `b`, …, `z`, `a1`, `b1`, ….
fn letter(i: usize) -> String {
    let c = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        c.to_string()
    } else {
        format!("{c}{}", i / 26)
    }
}

/// Renames reserved type variables to letters. Free ones are named in
/// order of first occurrence; binders are named innermost-free, so sibling
/// scopes may reuse a letter. User-written names are kept and avoided.
pub fn normalize_type(ty: &Type) -> Type {
    let mut all = HashSet::new();
    ty.collect_names(&mut all);
    if !all.iter().any(Name::is_reserved) {
        return ty.clone();
    }
    let taken: HashSet<Name> = all.into_iter().filter(|n| !n.is_reserved()).collect();
    let mut free = HashMap::new();
    let mut next = 0;
    for a in ty.ftv() {
        if a.is_reserved() {
            let n = loop {
                let cand = Name::from(letter(next));
                next += 1;
                if !taken.contains(&cand) {
                    break cand;
                }
            };
            free.insert(a, n);
        }
    }
    let mut in_use: HashSet<Name> = taken.iter().cloned().collect();
    in_use.extend(free.values().cloned());
    rename_bound(ty, &free, &mut Vec::new(), &in_use)
}

fn rename_bound(
    ty: &Type,
    free: &HashMap<Name, Name>,
    scope: &mut Vec<(Name, Name)>,
    in_use: &HashSet<Name>,
) -> Type {
    match ty {
        Type::Var(a) => {
            if let Some((_, n)) = scope.iter().rev().find(|(b, _)| b == a) {
                return Type::Var(n.clone());
            }
            Type::Var(free.get(a).cloned().unwrap_or_else(|| a.clone()))
        }
        Type::Con(c, args) => Type::Con(
            *c,
            args.iter()
                .map(|t| rename_bound(t, free, scope, in_use))
                .collect(),
        ),
        Type::Forall(a, body) => {
            let n = if a.is_reserved() {
                (0..)
                    .map(|i| Name::from(letter(i)))
                    .find(|c| !in_use.contains(c) && !scope.iter().any(|(_, m)| m == c))
                    .unwrap()
            } else {
                a.clone()
            };
            scope.push((a.clone(), n.clone()));
            let b = rename_bound(body, free, scope, in_use);
            scope.pop();
            Type::Forall(n, Box::new(b))
        }
    }
}

pub fn render_var(x: &Name) -> String {
    if BinOp::from_symbol(x.as_str()).is_some() {
        format!("({x})")
    } else {
        x.to_string()
    }
}

pub fn render_literal(l: Literal) -> String {
    match l {
        Literal::Int(n) => n.to_string(),
        Literal::Bool(true) => "True".to_string(),
        Literal::Bool(false) => "False".to_string(),
    }
}

/// Every term variable mentioned, bound or free.
pub(crate) fn collect_term_names(t: &Term, out: &mut HashSet<Name>) {
    match &t.kind {
        TermKind::Var(x) | TermKind::Freeze(x) => {
            out.insert(x.clone());
        }
        TermKind::Lit(_) => {}
        TermKind::Lam(x, b) | TermKind::LamAnn(x, _, b) => {
            out.insert(x.clone());
            collect_term_names(b, out);
        }
        TermKind::App(f, a) => {
            collect_term_names(f, out);
            collect_term_names(a, out);
        }
        TermKind::Let(x, m, n) | TermKind::LetAnn(x, _, m, n) => {
            out.insert(x.clone());
            collect_term_names(m, out);
            collect_term_names(n, out);
        }
    }
}

fn free_in(x: &Name, t: &Term) -> bool {
    match &t.kind {
        TermKind::Var(y) | TermKind::Freeze(y) => x == y,
        TermKind::Lit(_) => false,
        TermKind::Lam(y, b) | TermKind::LamAnn(y, _, b) => y != x && free_in(x, b),
        TermKind::App(f, a) => free_in(x, f) || free_in(x, a),
        TermKind::Let(y, m, n) | TermKind::LetAnn(y, _, m, n) => {
            free_in(x, m) || (y != x && free_in(x, n))
        }
    }
}

enum Sugar<'a> {
    Gen(&'a Term),
    Inst(&'a Term),
}

/// Recognises the expansions of `$M` and `M@`.
fn sugar(t: &Term) -> Option<Sugar<'_>> {
    if let TermKind::Let(x, m, n) = &t.kind {
        if x.is_reserved() && !free_in(x, m) {
            match &n.kind {
                TermKind::Freeze(y) if y == x => return Some(Sugar::Gen(m)),
                TermKind::Var(y) if y == x => return Some(Sugar::Inst(m)),
                _ => {}
            }
        }
    }
    None
}

/// Renames reserved term variables that are not part of `$`/`@` sugar to
/// `y`, `y1`, `y2`, … avoiding every name in the term. Reserved type
/// variables in annotations are normalised.
pub fn display_term_names(t: &Term) -> Term {
    let mut names = HashSet::new();
    collect_term_names(t, &mut names);
    let mut map = HashMap::new();
    let mut next = 0usize;
    rename_term(t, &names, &mut map, &mut next)
}

fn rename_term(
    t: &Term,
    names: &HashSet<Name>,
    map: &mut HashMap<Name, Name>,
    next: &mut usize,
) -> Term {
    let mut name = |x: &Name, map: &mut HashMap<Name, Name>| -> Name {
        if !x.is_reserved() {
            return x.clone();
        }
        if let Some(n) = map.get(x) {
            return n.clone();
        }
        let n = loop {
            let cand = if *next == 0 {
                Name::from("y")
            } else {
                Name::from(format!("y{next}"))
            };
            *next += 1;
            if !names.contains(&cand) {
                break cand;
            }
        };
        map.insert(x.clone(), n.clone());
        n
    };
    let kind = if let Some(s) = sugar(t) {
        let TermKind::Let(x, _, n) = &t.kind else {
            unreachable!()
        };
        let m = match s {
            Sugar::Gen(m) | Sugar::Inst(m) => rename_term(m, names, map, next),
        };
        TermKind::Let(x.clone(), Box::new(m), n.clone())
    } else {
        match &t.kind {
            TermKind::Var(x) => TermKind::Var(name(x, map)),
            TermKind::Freeze(x) => TermKind::Freeze(name(x, map)),
            TermKind::Lit(l) => TermKind::Lit(*l),
            TermKind::Lam(x, b) => {
                let x = name(x, map);
                TermKind::Lam(x, Box::new(rename_term(b, names, map, next)))
            }
            TermKind::LamAnn(x, ty, b) => {
                let x = name(x, map);
                TermKind::LamAnn(
                    x,
                    normalize_type(ty),
                    Box::new(rename_term(b, names, map, next)),
                )
            }
            TermKind::App(f, a) => TermKind::App(
                Box::new(rename_term(f, names, map, next)),
                Box::new(rename_term(a, names, map, next)),
            ),
            TermKind::Let(x, m, n) => {
                let x = name(x, map);
                TermKind::Let(
                    x,
                    Box::new(rename_term(m, names, map, next)),
                    Box::new(rename_term(n, names, map, next)),
                )
            }
            TermKind::LetAnn(x, ty, m, n) => {
                let x = name(x, map);
                TermKind::LetAnn(
                    x,
                    normalize_type(ty),
                    Box::new(rename_term(m, names, map, next)),
                    Box::new(rename_term(n, names, map, next)),
                )
            }
        }
    };
    Term::new(kind, t.span)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    Cons,
    Plus,
    App,
    Post,
    Atom,
}

/// Prints a core term in concrete syntax, re-sugaring `$M`, `M@` and infix
/// operators. Reserved names outside sugar are renamed for display.
pub fn render_term(t: &Term) -> String {
    let t = display_term_names(t);
    let mut out = String::new();
    write_term(&t, Prec::Top, &mut out);
    out
}

fn infix(t: &Term) -> Option<(BinOp, &Term, &Term)> {
    if let TermKind::App(f, r) = &t.kind {
        if let TermKind::App(g, l) = &f.kind {
            if let TermKind::Var(op) = &g.kind {
                if let Some(op) = BinOp::from_symbol(op.as_str()) {
                    return Some((op, l, r));
                }
            }
        }
    }
    None
}

fn binder_name(x: &Name) -> String {
    if is_keyword(x.as_str()) {
        format!("{x}_")
    } else {
        x.to_string()
    }
}

fn write_term(t: &Term, prec: Prec, out: &mut String) {
    if let Some(s) = sugar(t) {
        match s {
            Sugar::Gen(m) => wrap(prec > Prec::Post, out, |out| {
                out.push('$');
                write_term(m, Prec::Atom, out);
            }),
            Sugar::Inst(m) => wrap(prec > Prec::Post, out, |out| {
                write_term(m, Prec::Post, out);
                out.push('@');
            }),
        }
        return;
    }
    if let Some((op, l, r)) = infix(t) {
        match op {
            BinOp::Plus => wrap(prec > Prec::Plus, out, |out| {
                write_term(l, Prec::Plus, out);
                out.push_str(" + ");
                write_term(r, Prec::App, out);
            }),
            BinOp::Cons | BinOp::Append => wrap(prec > Prec::Cons, out, |out| {
                write_term(l, Prec::Plus, out);
                out.push_str(&format!(" {} ", op.symbol()));
                write_term(r, Prec::Cons, out);
            }),
        }
        return;
    }
    match &t.kind {
        TermKind::Var(x) => out.push_str(&render_var(x)),
        TermKind::Freeze(x) => {
            out.push('~');
            out.push_str(&render_var(x));
        }
        TermKind::Lit(l) => out.push_str(&render_literal(*l)),
        TermKind::Lam(..) | TermKind::LamAnn(..) => wrap(prec > Prec::Top, out, |out| {
            out.push('\\');
            let mut body = t;
            let mut first = true;
            loop {
                match &body.kind {
                    TermKind::Lam(x, b) => {
                        if !first {
                            out.push(' ');
                        }
                        out.push_str(x.as_str());
                        body = b;
                    }
                    TermKind::LamAnn(x, ty, b) => {
                        if !first {
                            out.push(' ');
                        }
                        out.push_str(&format!("({x}:{})", render_type(ty, false)));
                        body = b;
                    }
                    _ => break,
                }
                first = false;
            }
            out.push('.');
            write_term(body, Prec::Top, out);
        }),
        TermKind::App(f, a) => wrap(prec > Prec::App, out, |out| {
            write_term(f, Prec::App, out);
            out.push(' ');
            write_term(a, Prec::Post, out);
        }),
        TermKind::Let(x, m, n) => wrap(prec > Prec::Top, out, |out| {
            out.push_str(&format!("let {} = ", binder_name(x)));
            write_term(m, Prec::Top, out);
            out.push_str(" in ");
            write_term(n, Prec::Top, out);
        }),
        TermKind::LetAnn(x, ty, m, n) => wrap(prec > Prec::Top, out, |out| {
            out.push_str(&format!(
                "let ({} : {}) = ",
                binder_name(x),
                render_type(ty, false)
            ));
            write_term(m, Prec::Top, out);
            out.push_str(" in ");
            write_term(n, Prec::Top, out);
        }),
    }
}
