//! Kinding, environment well-formedness and well-scopedness of annotations.

use std::collections::HashSet;

use thiserror::Error;

use crate::infer::split;
use crate::subst::Substitution;
use crate::syntax::{
    Kind, KindCtx, KindEnv, KindLookup, Name, Span, Term, TermKind, Type, TypeCon, TypeEnv,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StaticsError {
    #[error("unbound type variable `{var}`")]
    UnboundTyVar { var: Name, span: Option<Span> },
    #[error("type constructor {con} expects {expected} argument(s), found {found}")]
    Arity {
        con: TypeCon,
        expected: usize,
        found: usize,
    },
    #[error("type of `{term_var}` mentions polymorphic flexible variable `{ty_var}`")]
    PolyVarInEnv { term_var: Name, ty_var: Name },
}

impl StaticsError {
    fn at(self, span: Span) -> StaticsError {
        match self {
            StaticsError::UnboundTyVar { var, span: None } => StaticsError::UnboundTyVar {
                var,
                span: Some(span),
            },
            other => other,
        }
    }

    pub fn span(&self) -> Option<Span> {
        match self {
            StaticsError::UnboundTyVar { span, .. } => *span,
            _ => None,
        }
    }
}

/// The least kind `K` with `env ⊢ A : K`.
pub fn kind_of(env: &impl KindLookup, ty: &Type) -> Result<Kind, StaticsError> {
    fn go(env: &impl KindLookup, ty: &Type, bound: &mut Vec<Name>) -> Result<Kind, StaticsError> {
        match ty {
            Type::Var(a) => {
                if bound.contains(a) {
                    return Ok(Kind::Mono);
                }
                env.lookup_kind(a)
                    .ok_or_else(|| StaticsError::UnboundTyVar {
                        var: a.clone(),
                        span: None,
                    })
            }
            Type::Con(con, args) => {
                if args.len() != con.arity() {
                    return Err(StaticsError::Arity {
                        con: *con,
                        expected: con.arity(),
                        found: args.len(),
                    });
                }
                let mut k = Kind::Mono;
                for t in args {
                    k = k.join(go(env, t, bound)?);
                }
                Ok(k)
            }
            Type::Forall(a, body) => {
                bound.push(a.clone());
                let r = go(env, body, bound);
                bound.pop();
                r.map(|_| Kind::Poly)
            }
        }
    }
    go(env, ty, &mut Vec::new())
}

/// Whether `env ⊢ A : K` is derivable.
pub fn has_kind(env: &impl KindLookup, ty: &Type, k: Kind) -> bool {
    matches!(kind_of(env, ty), Ok(found) if found.le(k))
}

/// Checks `Δ, Θ ⊢ Γ`: every type is well-kinded and its free variables
/// have kind •.
pub fn env_wf(ctx: &impl KindLookup, gamma: &TypeEnv) -> Result<(), StaticsError> {
    for (x, ty) in gamma.iter() {
        kind_of(ctx, ty)?;
        for a in ty.ftv() {
            if ctx.lookup_kind(&a) != Some(Kind::Mono) {
                return Err(StaticsError::PolyVarInEnv {
                    term_var: x.clone(),
                    ty_var: a,
                });
            }
        }
    }
    Ok(())
}

/// Checks `Δ ⊢ M`: type annotations only mention variables in scope.
///
/// An annotated let brings the annotation's quantifiers into scope for
/// its bound term exactly when `split` peels them.
pub fn wellscoped(delta: &KindEnv, m: &Term) -> Result<(), StaticsError> {
    match &m.kind {
        TermKind::Var(_) | TermKind::Freeze(_) | TermKind::Lit(_) => Ok(()),
        TermKind::Lam(_, body) => wellscoped(delta, body),
        TermKind::LamAnn(_, ty, body) => {
            kind_of(delta, ty).map_err(|e| e.at(m.span))?;
            wellscoped(delta, body)
        }
        TermKind::App(f, a) => {
            wellscoped(delta, f)?;
            wellscoped(delta, a)
        }
        TermKind::Let(_, bound, body) => {
            wellscoped(delta, bound)?;
            wellscoped(delta, body)
        }
        TermKind::LetAnn(_, ty, bound, body) => {
            kind_of(delta, ty).map_err(|e| e.at(m.span))?;
            let (prefix, _) = split(ty, bound);
            wellscoped(&delta.extended(prefix), bound)?;
            wellscoped(delta, body)
        }
    }
}

/// Renames annotation prefixes that rebind a type variable already in
/// scope, inside the annotation and the bound term's annotations. The new
/// names are `%s{k}`, chosen deterministically, so the result is the same
/// term on every call. Terms without such rebinding come back unchanged.
pub fn freshen_prefixes(delta: &KindEnv, m: &Term) -> Term {
    let mut used: HashSet<Name> = delta.iter().cloned().collect();
    m.annotation_names(&mut used);
    let mut f = Freshen { used, next: 0 };
    let scope: HashSet<Name> = delta.iter().cloned().collect();
    f.term(&scope, &Substitution::new(), m)
}

struct Freshen {
    used: HashSet<Name>,
    next: usize,
}

impl Freshen {
    fn fresh(&mut self) -> Name {
        loop {
            let n = Name::from(format!("%s{}", self.next));
            self.next += 1;
            if self.used.insert(n.clone()) {
                return n;
            }
        }
    }

    fn term(&mut self, scope: &HashSet<Name>, rho: &Substitution, m: &Term) -> Term {
        let kind = match &m.kind {
            TermKind::Var(_) | TermKind::Freeze(_) | TermKind::Lit(_) => return m.clone(),
            TermKind::Lam(x, b) => TermKind::Lam(x.clone(), Box::new(self.term(scope, rho, b))),
            TermKind::LamAnn(x, t, b) => {
                TermKind::LamAnn(x.clone(), rho.apply(t), Box::new(self.term(scope, rho, b)))
            }
            TermKind::App(f, a) => TermKind::App(
                Box::new(self.term(scope, rho, f)),
                Box::new(self.term(scope, rho, a)),
            ),
            TermKind::Let(x, b, n) => TermKind::Let(
                x.clone(),
                Box::new(self.term(scope, rho, b)),
                Box::new(self.term(scope, rho, n)),
            ),
            TermKind::LetAnn(x, t, b, n) => {
                let (prefix, h) = split(t, b);
                let mut inner_rho = rho.clone();
                let mut inner_scope = scope.clone();
                let mut renamed = Vec::new();
                for a in prefix {
                    let a2 = if inner_scope.contains(&a) {
                        self.fresh()
                    } else {
                        a.clone()
                    };
                    if a2 != a {
                        inner_rho.insert(a, Type::Var(a2.clone()));
                    }
                    inner_scope.insert(a2.clone());
                    renamed.push(a2);
                }
                let ann = if renamed.is_empty() || inner_rho.is_empty() {
                    rho.apply(t)
                } else {
                    Type::forall(renamed, inner_rho.apply(&h))
                };
                TermKind::LetAnn(
                    x.clone(),
                    ann,
                    Box::new(self.term(&inner_scope, &inner_rho, b)),
                    Box::new(self.term(scope, rho, n)),
                )
            }
        };
        Term::new(kind, m.span)
    }
}

/// Checks `Δ, Θ ⊢ A : K` for the combined context.
pub fn kind_in(
    rigid: &KindEnv,
    flex: &crate::syntax::RefinedKindEnv,
    ty: &Type,
) -> Result<Kind, StaticsError> {
    kind_of(&KindCtx::new(rigid, flex), ty)
}
