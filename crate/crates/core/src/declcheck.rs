//! Deciding the declarative typing judgement `Δ; Γ ⊢ M : A`.
//!
//! The let rule's principality premise quantifies over all derivations, so
//! the judgement is decided through inference and one-way matching: `M`
//! has type `A` exactly when `A` is a kind-respecting instance of the
//! inferred type. A separate rule walker replays recorded derivations
//! against the remaining rules.

use indexmap::IndexMap;
use thiserror::Error;

use crate::infer::{gen, infer, split};
use crate::statics::{env_wf, freshen_prefixes, has_kind, kind_of, wellscoped, StaticsError};
use crate::subst::Substitution;
use crate::syntax::{
    alpha_eq, Kind, KindEnv, KindLookup, Name, NameSupply, RefinedKindEnv, Term, TermKind, Type,
    TypeEnv,
};
use crate::translate::{DerivNode, Derivation};

/// One-way matching: finds θ″ over Θ_res with `θ″(A_R) = A₀` up to α,
/// mapping •-variables to monotypes. Images are well-kinded under Δ.
pub fn match_instance(
    delta: &KindEnv,
    theta_res: &RefinedKindEnv,
    pattern: &Type,
    target: &Type,
) -> Option<Substitution> {
    match_pairs(delta, theta_res, &[(pattern.clone(), target.clone())])
}

/// Simultaneous matching of several pattern/target pairs. Images are
/// checked against `target_env`.
pub fn match_pairs(
    target_env: &impl KindLookup,
    theta_res: &RefinedKindEnv,
    pairs: &[(Type, Type)],
) -> Option<Substitution> {
    let mut m = Matcher {
        target_env,
        vars: theta_res,
        binding: IndexMap::new(),
    };
    for (p, t) in pairs {
        if !m.go(p, t, &mut Vec::new(), &mut Vec::new()) {
            return None;
        }
    }
    Some(m.binding.into_iter().collect())
}

struct Matcher<'a, L> {
    target_env: &'a L,
    vars: &'a RefinedKindEnv,
    binding: IndexMap<Name, Type>,
}

impl<L: KindLookup> Matcher<'_, L> {
    fn go(&mut self, p: &Type, t: &Type, pb: &mut Vec<Name>, tb: &mut Vec<Name>) -> bool {
        match p {
            Type::Var(a) => {
                if let Some(i) = pb.iter().rposition(|n| n == a) {
                    return matches!(t, Type::Var(b) if tb.iter().rposition(|n| n == b) == Some(i));
                }
                match self.vars.get(a) {
                    Some(k) => {
                        if t.ftv().iter().any(|b| tb.contains(b)) {
                            return false;
                        }
                        if let Some(prev) = self.binding.get(a) {
                            return alpha_eq(prev, t);
                        }
                        if !has_kind(self.target_env, t, k) {
                            return false;
                        }
                        self.binding.insert(a.clone(), t.clone());
                        true
                    }
                    None => matches!(t, Type::Var(b) if b == a && !tb.contains(b)),
                }
            }
            Type::Con(c, ps) => match t {
                Type::Con(d, ts) if c == d && ps.len() == ts.len() => {
                    ps.iter().zip(ts).all(|(p, t)| self.go(p, t, pb, tb))
                }
                _ => false,
            },
            Type::Forall(a, pbody) => match t {
                Type::Forall(b, tbody) => {
                    pb.push(a.clone());
                    tb.push(b.clone());
                    let r = self.go(pbody, tbody, pb, tb);
                    pb.pop();
                    tb.pop();
                    r
                }
                _ => false,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("term is not well scoped: {0}")]
    NotWellScoped(StaticsError),
    #[error("environment is not well formed: {0}")]
    BadEnvironment(StaticsError),
    #[error("candidate type is not well formed: {0}")]
    BadType(StaticsError),
}

/// Decides `Δ; Γ ⊢ M : A₀`.
pub fn check_typing(
    delta: &KindEnv,
    gamma: &TypeEnv,
    m: &Term,
    a0: &Type,
) -> Result<bool, CheckError> {
    wellscoped(delta, m).map_err(CheckError::NotWellScoped)?;
    env_wf(delta, gamma).map_err(CheckError::BadEnvironment)?;
    kind_of(delta, a0).map_err(CheckError::BadType)?;
    let mut supply = NameSupply::new();
    match infer(delta, &RefinedKindEnv::new(), gamma, m, &mut supply) {
        Ok(r) => Ok(match_instance(delta, &r.theta, &r.ty, a0).is_some()),
        Err(_) => Ok(false),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{rule}: {message}")]
pub struct ReplayError {
    pub rule: &'static str,
    pub message: String,
}

fn fail<T>(rule: &'static str, message: impl Into<String>) -> Result<T, ReplayError> {
    Err(ReplayError {
        rule,
        message: message.into(),
    })
}

/// Replays a derivation against the typing rules, omitting the let rule's
/// principality premise. The derivation must be closed over Δ. Rebinding
/// annotation prefixes are renamed first, as inference does.
pub fn replay(
    delta: &KindEnv,
    gamma: &TypeEnv,
    m: &Term,
    d: &Derivation,
) -> Result<(), ReplayError> {
    walk(delta, gamma, &freshen_prefixes(delta, m), d)
}

fn walk(delta: &KindEnv, gamma: &TypeEnv, m: &Term, d: &Derivation) -> Result<(), ReplayError> {
    match (&m.kind, &d.node) {
        (TermKind::Freeze(x), DerivNode::Freeze(y)) if x == y => {
            let Some(ty) = gamma.lookup(x) else {
                return fail("Freeze", format!("`{x}` unbound"));
            };
            if !alpha_eq(ty, &d.ty) {
                return fail("Freeze", format!("`{x}` has type {ty}, node says {}", d.ty));
            }
            Ok(())
        }
        (TermKind::Var(x), DerivNode::Var { name, scheme, args }) if x == name => {
            let Some(ty) = gamma.lookup(x) else {
                return fail("Var", format!("`{x}` unbound"));
            };
            if !alpha_eq(ty, scheme) {
                return fail("Var", format!("scheme {scheme} differs from Γ({x}) = {ty}"));
            }
            let mut cur = ty.clone();
            for arg in args {
                if kind_of(delta, arg).is_err() {
                    return fail("Var", format!("type argument {arg} is not well formed"));
                }
                match cur {
                    Type::Forall(a, body) => {
                        cur = Substitution::singleton(a, arg.clone()).apply(&body)
                    }
                    _ => return fail("Var", "too many type arguments"),
                }
            }
            if !cur.is_guarded() {
                return fail("Var", "instantiation leaves a quantifier");
            }
            if !alpha_eq(&cur, &d.ty) {
                return fail(
                    "Var",
                    format!("instance {cur} differs from node type {}", d.ty),
                );
            }
            Ok(())
        }
        (TermKind::Lit(l), DerivNode::Lit(k)) if l == k => {
            if d.ty != l.ty() {
                return fail("Lit", "wrong literal type");
            }
            Ok(())
        }
        (
            TermKind::Lam(x, body),
            DerivNode::Lam {
                param,
                param_ty,
                annotated: false,
                body: db,
            },
        )
        | (
            TermKind::LamAnn(x, _, body),
            DerivNode::Lam {
                param,
                param_ty,
                annotated: true,
                body: db,
            },
        ) if x == param => {
            if let TermKind::LamAnn(_, ann, _) = &m.kind {
                if ann != param_ty {
                    return fail("LamAnn", "parameter type differs from annotation");
                }
                if kind_of(delta, param_ty).is_err() {
                    return fail("LamAnn", "annotation is not well formed");
                }
            } else if kind_of(delta, param_ty) != Ok(Kind::Mono) {
                return fail(
                    "Lam",
                    format!("parameter type {param_ty} is not a monotype"),
                );
            }
            walk(
                delta,
                &gamma.extended(x.clone(), param_ty.clone()),
                body,
                db,
            )?;
            let want = Type::arrow(param_ty.clone(), db.ty.clone());
            if !alpha_eq(&want, &d.ty) {
                return fail("Lam", format!("node type {} should be {want}", d.ty));
            }
            Ok(())
        }
        (TermKind::App(f, a), DerivNode::App { fun, arg }) => {
            walk(delta, gamma, f, fun)?;
            walk(delta, gamma, a, arg)?;
            match fun.ty.as_arrow() {
                Some((dom, cod)) if alpha_eq(dom, &arg.ty) && alpha_eq(cod, &d.ty) => Ok(()),
                _ => fail("App", format!("cannot apply {} to {}", fun.ty, arg.ty)),
            }
        }
        (
            TermKind::Let(x, bm, bn),
            DerivNode::Let {
                name,
                annotation: None,
                prefix,
                binding_ty,
                bound,
                body,
            },
        ) if x == name => {
            if prefix.iter().any(|a| delta.contains(a)) {
                return fail("Let", "abstracted variable clashes with Δ");
            }
            let inner = delta.extended(prefix.iter().cloned());
            walk(&inner, gamma, bm, bound)?;
            let (abstracted, generalisable) = gen(delta, &bound.ty, bm);
            if &abstracted != prefix {
                return fail("Let", format!("prefix {prefix:?} should be {abstracted:?}"));
            }
            if !generalisable.iter().all(|a| prefix.contains(a)) {
                return fail(
                    "Let",
                    "bound type has variables that are neither generalised nor in Δ",
                );
            }
            let scheme = Type::forall(prefix.clone(), bound.ty.clone());
            if !alpha_eq(&scheme, binding_ty) {
                return fail(
                    "Let",
                    format!("binding type {binding_ty} should be {scheme}"),
                );
            }
            walk(
                delta,
                &gamma.extended(x.clone(), binding_ty.clone()),
                bn,
                body,
            )?;
            if !alpha_eq(&body.ty, &d.ty) {
                return fail("Let", "node type differs from body type");
            }
            Ok(())
        }
        (
            TermKind::LetAnn(x, ann, bm, bn),
            DerivNode::Let {
                name,
                annotation: Some(dann),
                prefix,
                binding_ty,
                bound,
                body,
            },
        ) if x == name && ann == dann => {
            if kind_of(delta, ann).is_err() {
                return fail("LetAnn", "annotation is not well formed");
            }
            let (want_prefix, want_ty) = split(ann, bm);
            if &want_prefix != prefix || binding_ty != ann {
                return fail("LetAnn", "prefix or binding type disagrees with split");
            }
            if prefix.iter().any(|a| delta.contains(a)) {
                return fail("LetAnn", "annotation variable clashes with Δ");
            }
            let inner = delta.extended(prefix.iter().cloned());
            walk(&inner, gamma, bm, bound)?;
            if !alpha_eq(&bound.ty, &want_ty) {
                return fail(
                    "LetAnn",
                    format!("bound has type {}, annotation needs {want_ty}", bound.ty),
                );
            }
            walk(delta, &gamma.extended(x.clone(), ann.clone()), bn, body)?;
            if !alpha_eq(&body.ty, &d.ty) {
                return fail("LetAnn", "node type differs from body type");
            }
            Ok(())
        }
        _ => fail("shape", "derivation does not match the term"),
    }
}
