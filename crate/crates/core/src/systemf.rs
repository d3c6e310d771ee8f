//! Explicitly typed, call-by-value System F with the value restriction on
//! type abstraction.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::statics::{kind_of, StaticsError};
use crate::subst::Substitution;
use crate::syntax::{alpha_eq, KindEnv, Literal, Name, Type, TypeEnv};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FTerm {
    Var(Name),
    Lit(Literal),
    Lam(Name, Type, Box<FTerm>),
    App(Box<FTerm>, Box<FTerm>),
    TyAbs(Name, Box<FTerm>),
    TyApp(Box<FTerm>, Type),
}

impl FTerm {
    pub fn var(x: impl Into<Name>) -> FTerm {
        FTerm::Var(x.into())
    }

    pub fn lam(x: impl Into<Name>, ty: Type, body: FTerm) -> FTerm {
        FTerm::Lam(x.into(), ty, Box::new(body))
    }

    pub fn app(f: FTerm, a: FTerm) -> FTerm {
        FTerm::App(Box::new(f), Box::new(a))
    }

    pub fn ty_abs(a: impl Into<Name>, body: FTerm) -> FTerm {
        FTerm::TyAbs(a.into(), Box::new(body))
    }

    pub fn ty_app(f: FTerm, ty: Type) -> FTerm {
        FTerm::TyApp(Box::new(f), ty)
    }

    /// `Λa₁…aₙ.body`.
    pub fn ty_abs_n(names: &[Name], body: FTerm) -> FTerm {
        names
            .iter()
            .rev()
            .fold(body, |acc, a| FTerm::ty_abs(a.clone(), acc))
    }

    /// `f A₁ … Aₙ`, left-nested.
    pub fn ty_app_n(f: FTerm, tys: impl IntoIterator<Item = Type>) -> FTerm {
        tys.into_iter().fold(f, FTerm::ty_app)
    }

    pub fn size(&self) -> usize {
        match self {
            FTerm::Var(_) | FTerm::Lit(_) => 1,
            FTerm::Lam(_, _, b) | FTerm::TyAbs(_, b) | FTerm::TyApp(b, _) => 1 + b.size(),
            FTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }
}

impl fmt::Display for FTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_fterm(self, false))
    }
}

/// `let x^A = bound in body`, encoded as `(λx^A.body) bound`.
pub fn f_let(x: impl Into<Name>, ty: Type, bound: FTerm, body: FTerm) -> FTerm {
    FTerm::app(FTerm::lam(x, ty, body), bound)
}

/// Syntactic values: instantiations `x Ā`, literals, abstractions, and the
/// let form `(λx^A.V) W` with `V`, `W` values.
pub fn is_fvalue(t: &FTerm) -> bool {
    match t {
        FTerm::Var(_) | FTerm::Lit(_) | FTerm::Lam(..) | FTerm::TyAbs(..) => true,
        FTerm::TyApp(..) => is_instantiation(t),
        FTerm::App(f, arg) => match &**f {
            FTerm::Lam(_, _, body) => is_fvalue(body) && is_fvalue(arg),
            _ => false,
        },
    }
}

fn is_instantiation(t: &FTerm) -> bool {
    match t {
        FTerm::Var(_) => true,
        FTerm::TyApp(f, _) => is_instantiation(f),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FError {
    #[error("unbound variable `{0}`")]
    UnboundVar(Name),
    #[error("`{0}` is applied but has non-function type `{1}`")]
    NotAFunction(FTerm, Type),
    #[error("`{0}` is given a type argument but has type `{1}`")]
    NotAForall(FTerm, Type),
    #[error("expected `{expected}`, found `{found}`")]
    TypeMismatch { expected: Type, found: Type },
    #[error("body of a type abstraction must be a value: `{0}`")]
    ValueRestriction(FTerm),
    #[error("type variable `{0}` is already in scope")]
    ShadowedTyVar(Name),
    #[error(transparent)]
    Kind(#[from] StaticsError),
}

/// The unique type of `t` under `Δ; Γ`.
pub fn f_typecheck(delta: &KindEnv, gamma: &TypeEnv, t: &FTerm) -> Result<Type, FError> {
    match t {
        FTerm::Var(x) => gamma
            .lookup(x)
            .cloned()
            .ok_or_else(|| FError::UnboundVar(x.clone())),
        FTerm::Lit(l) => Ok(l.ty()),
        FTerm::Lam(x, ty, body) => {
            kind_of(delta, ty)?;
            let b = f_typecheck(delta, &gamma.extended(x.clone(), ty.clone()), body)?;
            Ok(Type::arrow(ty.clone(), b))
        }
        FTerm::App(f, arg) => {
            let ft = f_typecheck(delta, gamma, f)?;
            let at = f_typecheck(delta, gamma, arg)?;
            match ft.as_arrow() {
                Some((dom, cod)) => {
                    if alpha_eq(dom, &at) {
                        Ok(cod.clone())
                    } else {
                        Err(FError::TypeMismatch {
                            expected: dom.clone(),
                            found: at,
                        })
                    }
                }
                None => Err(FError::NotAFunction((**f).clone(), ft)),
            }
        }
        FTerm::TyAbs(a, body) => {
            if !is_fvalue(body) {
                return Err(FError::ValueRestriction((**body).clone()));
            }
            if delta.contains(a) {
                return Err(FError::ShadowedTyVar(a.clone()));
            }
            let b = f_typecheck(&delta.extended([a.clone()]), gamma, body)?;
            Ok(Type::Forall(a.clone(), Box::new(b)))
        }
        FTerm::TyApp(f, arg) => {
            kind_of(delta, arg)?;
            match f_typecheck(delta, gamma, f)? {
                Type::Forall(a, body) => Ok(Substitution::singleton(a, arg.clone()).apply(&body)),
                other => Err(FError::NotAForall((**f).clone(), other)),
            }
        }
    }
}

/// Renames reserved names for display: term variables to `y`, `y1`, …
/// and type variables to unused letters. The renaming is injective and
/// avoids every name already in `t`, so it preserves meaning.
pub fn display_names(t: &FTerm) -> FTerm {
    let mut names = HashSet::new();
    collect_names(t, &mut names);
    // term and type variables live apart, so `%0` may name one of each
    let (mut terms, mut types) = (HashMap::new(), HashMap::new());
    let (mut next_term, mut next_ty) = (0usize, 0usize);
    let mut reserved = Vec::new();
    collect_reserved(t, &mut reserved);
    for (n, is_type) in reserved {
        let map = if is_type { &mut types } else { &mut terms };
        if map.contains_key(&n) {
            continue;
        }
        let fresh = loop {
            let cand = if is_type {
                next_ty += 1;
                Name::from(letter(next_ty - 1))
            } else {
                next_term += 1;
                if next_term == 1 {
                    Name::from("y")
                } else {
                    Name::from(format!("y{}", next_term - 1))
                }
            };
            if !names.contains(&cand) {
                break cand;
            }
        };
        map.insert(n, fresh);
    }
    rename(t, &terms, &types)
}

fn letter(i: usize) -> String {
    let c = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        c.to_string()
    } else {
        format!("{c}{}", i / 26)
    }
}

fn collect_names(t: &FTerm, out: &mut HashSet<Name>) {
    match t {
        FTerm::Var(x) => {
            out.insert(x.clone());
        }
        FTerm::Lit(_) => {}
        FTerm::Lam(x, ty, b) => {
            out.insert(x.clone());
            ty.collect_names(out);
            collect_names(b, out);
        }
        FTerm::App(f, a) => {
            collect_names(f, out);
            collect_names(a, out);
        }
        FTerm::TyAbs(a, b) => {
            out.insert(a.clone());
            collect_names(b, out);
        }
        FTerm::TyApp(f, ty) => {
            ty.collect_names(out);
            collect_names(f, out);
        }
    }
}

/// Reserved names in order of appearance, tagged with whether they name
/// types.
fn collect_reserved(t: &FTerm, out: &mut Vec<(Name, bool)>) {
    let ty_names = |ty: &Type, out: &mut Vec<(Name, bool)>| {
        let mut s = Vec::new();
        type_names_ordered(ty, &mut s);
        out.extend(s.into_iter().filter(Name::is_reserved).map(|n| (n, true)));
    };
    match t {
        FTerm::Var(x) => {
            if x.is_reserved() {
                out.push((x.clone(), false));
            }
        }
        FTerm::Lit(_) => {}
        FTerm::Lam(x, ty, b) => {
            if x.is_reserved() {
                out.push((x.clone(), false));
            }
            ty_names(ty, out);
            collect_reserved(b, out);
        }
        FTerm::App(f, a) => {
            collect_reserved(f, out);
            collect_reserved(a, out);
        }
        FTerm::TyAbs(a, b) => {
            if a.is_reserved() {
                out.push((a.clone(), true));
            }
            collect_reserved(b, out);
        }
        FTerm::TyApp(f, ty) => {
            collect_reserved(f, out);
            ty_names(ty, out);
        }
    }
}

fn type_names_ordered(ty: &Type, out: &mut Vec<Name>) {
    match ty {
        Type::Var(a) => out.push(a.clone()),
        Type::Con(_, args) => args.iter().for_each(|t| type_names_ordered(t, out)),
        Type::Forall(a, b) => {
            out.push(a.clone());
            type_names_ordered(b, out);
        }
    }
}

fn rename_type(ty: &Type, map: &HashMap<Name, Name>) -> Type {
    let r = |n: &Name| map.get(n).cloned().unwrap_or_else(|| n.clone());
    match ty {
        Type::Var(a) => Type::Var(r(a)),
        Type::Con(c, args) => Type::Con(*c, args.iter().map(|t| rename_type(t, map)).collect()),
        Type::Forall(a, b) => Type::Forall(r(a), Box::new(rename_type(b, map))),
    }
}

fn rename(t: &FTerm, terms: &HashMap<Name, Name>, types: &HashMap<Name, Name>) -> FTerm {
    let r = |n: &Name| terms.get(n).cloned().unwrap_or_else(|| n.clone());
    let go = |u: &FTerm| rename(u, terms, types);
    match t {
        FTerm::Var(x) => FTerm::Var(r(x)),
        FTerm::Lit(l) => FTerm::Lit(*l),
        FTerm::Lam(x, ty, b) => FTerm::lam(r(x), rename_type(ty, types), go(b)),
        FTerm::App(f, a) => FTerm::app(go(f), go(a)),
        FTerm::TyAbs(a, b) => {
            FTerm::ty_abs(types.get(a).cloned().unwrap_or_else(|| a.clone()), go(b))
        }
        FTerm::TyApp(f, ty) => FTerm::ty_app(go(f), rename_type(ty, types)),
    }
}

/// Renders `t` with `/\a.`, `\x:T.` and `t [T]`.
pub fn render_fterm(t: &FTerm, unicode: bool) -> String {
    let mut out = String::new();
    write_fterm(t, unicode, Prec::Top, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    App,
    Atom,
}

fn write_fterm(t: &FTerm, unicode: bool, prec: Prec, out: &mut String) {
    let ty = |ty: &Type| crate::parser::render_type_with(ty, false, unicode);
    match t {
        FTerm::Var(x) => out.push_str(&crate::parser::render_var(x)),
        FTerm::Lit(l) => out.push_str(&crate::parser::render_literal(*l)),
        FTerm::Lam(x, a, body) => {
            paren(prec > Prec::Top, out, |out| {
                let ann = if matches!(a, Type::Var(_))
                    || matches!(a, Type::Con(_, args) if args.is_empty())
                {
                    ty(a)
                } else {
                    format!("({})", ty(a))
                };
                out.push_str(&format!("\\{x}:{ann}."));
                write_fterm(body, unicode, Prec::Top, out);
            });
        }
        FTerm::TyAbs(a, body) => {
            paren(prec > Prec::Top, out, |out| {
                out.push_str(&format!("/\\{a}."));
                write_fterm(body, unicode, Prec::Top, out);
            });
        }
        FTerm::App(f, arg) => {
            paren(prec > Prec::App, out, |out| {
                write_fterm(f, unicode, Prec::App, out);
                out.push(' ');
                write_fterm(arg, unicode, Prec::Atom, out);
            });
        }
        FTerm::TyApp(f, a) => {
            paren(prec > Prec::App, out, |out| {
                write_fterm(f, unicode, Prec::App, out);
                out.push_str(&format!(" [{}]", ty(a)));
            });
        }
    }
}

fn paren(wrap: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if wrap {
        out.push('(');
    }
    body(out);
    if wrap {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Type {
        Type::var(s)
    }

    fn idty() -> Type {
        Type::forall(["a"], Type::arrow(v("a"), v("a")))
    }

    #[test]
    fn polymorphic_identity() {
        let t = FTerm::ty_abs("a", FTerm::lam("x", v("a"), FTerm::var("x")));
        let ty = f_typecheck(&KindEnv::new(), &TypeEnv::new(), &t).unwrap();
        assert!(alpha_eq(&ty, &idty()));
    }

    #[test]
    fn type_application() {
        let g: TypeEnv = [("x", idty())].into_iter().collect();
        let t = FTerm::ty_app(FTerm::var("x"), Type::int());
        let ty = f_typecheck(&KindEnv::new(), &g, &t).unwrap();
        assert_eq!(ty, Type::arrow(Type::int(), Type::int()));
    }

    #[test]
    fn mismatch_and_value_restriction() {
        let t = FTerm::app(
            FTerm::lam("x", Type::int(), FTerm::var("x")),
            FTerm::Lit(Literal::Bool(true)),
        );
        assert!(matches!(
            f_typecheck(&KindEnv::new(), &TypeEnv::new(), &t),
            Err(FError::TypeMismatch { .. })
        ));
        let g: TypeEnv = [("f", Type::arrow(Type::int(), Type::int()))]
            .into_iter()
            .collect();
        let t = FTerm::ty_abs(
            "a",
            FTerm::app(FTerm::var("f"), FTerm::Lit(Literal::Int(1))),
        );
        assert!(matches!(
            f_typecheck(&KindEnv::new(), &g, &t),
            Err(FError::ValueRestriction(_))
        ));
    }

    #[test]
    fn let_sugar() {
        let t = f_let(
            "x",
            Type::int(),
            FTerm::Lit(Literal::Int(1)),
            FTerm::var("x"),
        );
        assert_eq!(
            f_typecheck(&KindEnv::new(), &TypeEnv::new(), &t),
            Ok(Type::int())
        );
        assert!(is_fvalue(&t));
        let n = FTerm::ty_abs_n(&["a".into(), "b".into()], FTerm::var("x"));
        assert!(
            matches!(n, FTerm::TyAbs(ref a, ref inner) if a.as_str() == "a" && matches!(**inner, FTerm::TyAbs(..)))
        );
        let apps = FTerm::ty_app_n(FTerm::var("x"), [Type::int(), Type::bool()]);
        assert_eq!(
            apps,
            FTerm::ty_app(FTerm::ty_app(FTerm::var("x"), Type::int()), Type::bool())
        );
    }

    #[test]
    fn printing() {
        let t = FTerm::ty_abs("a", FTerm::lam("x", v("a"), FTerm::var("x")));
        assert_eq!(render_fterm(&t, false), "/\\a.\\x:a.x");
        let t = FTerm::app(
            FTerm::ty_app(FTerm::var("id"), Type::int()),
            FTerm::Lit(Literal::Int(3)),
        );
        assert_eq!(render_fterm(&t, false), "id [Int] 3");
    }

    #[test]
    fn reserved_names_are_renamed_for_display() {
        let t = FTerm::ty_abs("%3", FTerm::lam("%0", v("%3"), FTerm::var("%0")));
        let shown = display_names(&t);
        assert_eq!(render_fterm(&shown, false), "/\\a.\\y:a.y");
        let ty = f_typecheck(&KindEnv::new(), &TypeEnv::new(), &shown).unwrap();
        assert!(alpha_eq(&ty, &idty()));
    }

    #[test]
    fn term_and_type_names_are_renamed_apart() {
        let t = FTerm::ty_abs("%0", FTerm::lam("%0", v("%0"), FTerm::var("%0")));
        assert_eq!(render_fterm(&display_names(&t), false), "/\\a.\\y:a.y");
    }
}
