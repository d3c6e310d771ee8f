//! Type inference: an extension of algorithm W with frozen variables,
//! annotations and kind-aware unification.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::statics::{freshen_prefixes, wellscoped, StaticsError};
use crate::subst::{compose, demote, Substitution};
use crate::syntax::{
    Kind, KindEnv, Name, NameSupply, RefinedKindEnv, Span, Term, TermKind, Type, TypeEnv,
};
use crate::translate::{DerivNode, Derivation};
use crate::unify::{unify, UnifyError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InferErrorKind {
    #[error("unbound variable `{0}`")]
    UnboundVar(Name),
    #[error(transparent)]
    Unify(#[from] UnifyError),
    #[error("annotation variable(s) {} escape into the enclosing scope", fmt_names(.0))]
    AnnotationEscape(Vec<Name>),
    #[error(transparent)]
    Scope(#[from] StaticsError),
}

fn fmt_names(names: &[Name]) -> String {
    names
        .iter()
        .map(|n| format!("`{n}`"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// An inference failure at a source location.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind}")]
pub struct InferError {
    pub kind: InferErrorKind,
    pub span: Span,
}

impl InferError {
    fn new(kind: impl Into<InferErrorKind>, span: Span) -> Self {
        InferError {
            kind: kind.into(),
            span,
        }
    }

    /// The same error with reserved type-variable names replaced by
    /// letters not otherwise mentioned, consistently across the message.
    pub fn readable(&self) -> InferError {
        let mut used = HashSet::new();
        let mut order = Vec::new();
        self.visit_names(&mut |n: &Name| {
            if n.is_reserved() {
                if !order.contains(n) {
                    order.push(n.clone());
                }
            } else {
                used.insert(n.clone());
            }
        });
        let mut map = HashMap::new();
        let mut letters = (0..).map(letter).filter(|c| !used.contains(c));
        for n in order {
            map.insert(n, letters.next().expect("unbounded"));
        }
        let r = |n: &Name| map.get(n).cloned().unwrap_or_else(|| n.clone());
        let t = |ty: &Type| rename_vars(ty, &map);
        let kind = match &self.kind {
            InferErrorKind::Unify(u) => InferErrorKind::Unify(match u {
                UnifyError::ConMismatch { left, right } => UnifyError::ConMismatch {
                    left: t(left),
                    right: t(right),
                },
                UnifyError::RigidMismatch { left, right } => UnifyError::RigidMismatch {
                    left: r(left),
                    right: r(right),
                },
                UnifyError::OccursOrKind { var, kind, ty } => UnifyError::OccursOrKind {
                    var: r(var),
                    kind: *kind,
                    ty: t(ty),
                },
                UnifyError::SkolemEscape { skolem } => {
                    UnifyError::SkolemEscape { skolem: r(skolem) }
                }
                UnifyError::StructureMismatch { left, right } => UnifyError::StructureMismatch {
                    left: t(left),
                    right: t(right),
                },
            }),
            InferErrorKind::AnnotationEscape(names) => {
                InferErrorKind::AnnotationEscape(names.iter().map(r).collect())
            }
            other => other.clone(),
        };
        InferError {
            kind,
            span: self.span,
        }
    }

    fn visit_names(&self, f: &mut impl FnMut(&Name)) {
        let ty = |t: &Type, f: &mut dyn FnMut(&Name)| {
            let mut names = HashSet::new();
            t.collect_names(&mut names);
            let mut names: Vec<Name> = names.into_iter().collect();
            names.sort_by(|a, b| a.as_str().cmp(b.as_str()));
            names.iter().for_each(f);
        };
        match &self.kind {
            InferErrorKind::Unify(u) => match u {
                UnifyError::ConMismatch { left, right }
                | UnifyError::StructureMismatch { left, right } => {
                    ty(left, f);
                    ty(right, f);
                }
                UnifyError::RigidMismatch { left, right } => {
                    f(left);
                    f(right);
                }
                UnifyError::OccursOrKind { var, ty: t, .. } => {
                    f(var);
                    ty(t, f);
                }
                UnifyError::SkolemEscape { skolem } => f(skolem),
            },
            InferErrorKind::AnnotationEscape(names) => names.iter().for_each(f),
            InferErrorKind::UnboundVar(_) | InferErrorKind::Scope(_) => {}
        }
    }
}

fn letter(i: usize) -> Name {
    let c = (b'a' + (i % 26) as u8) as char;
    Name::from(if i < 26 {
        c.to_string()
    } else {
        format!("{c}{}", i / 26)
    })
}

fn rename_vars(ty: &Type, map: &HashMap<Name, Name>) -> Type {
    let r = |n: &Name| map.get(n).cloned().unwrap_or_else(|| n.clone());
    match ty {
        Type::Var(a) => Type::Var(r(a)),
        Type::Con(c, args) => Type::Con(*c, args.iter().map(|t| rename_vars(t, map)).collect()),
        Type::Forall(a, b) => Type::Forall(r(a), Box::new(rename_vars(b, map))),
    }
}

/// The triple `(Θ′, θ, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferResult {
    pub theta: RefinedKindEnv,
    pub subst: Substitution,
    pub ty: Type,
}

/// Generalisable variables of `A` under Δ: `(Δ′, Δ′)` for guarded values,
/// `(·, Δ′)` otherwise.
pub fn gen(delta: &KindEnv, ty: &Type, m: &Term) -> (Vec<Name>, Vec<Name>) {
    let vars: Vec<Name> = ty
        .ftv()
        .into_iter()
        .filter(|a| !delta.contains(a))
        .collect();
    if m.is_gval() {
        (vars.clone(), vars)
    } else {
        (Vec::new(), vars)
    }
}

/// Reads the quantifiers an annotation `∀Δ.H` binds over a let-bound term:
/// `(Δ, H)` for guarded values, `(·, ∀Δ.H)` otherwise.
pub fn split(ty: &Type, m: &Term) -> (Vec<Name>, Type) {
    if m.is_gval() {
        let (names, body) = ty.split_foralls();
        (names, body.clone())
    } else {
        (Vec::new(), ty.clone())
    }
}

/// Infers `Δ; Θ; Γ ⊢ M`, returning `(Θ′, θ, A)`.
///
/// `supply` is advanced past every fresh name used; names already mentioned
/// by the inputs are never emitted.
pub fn infer(
    delta: &KindEnv,
    theta: &RefinedKindEnv,
    gamma: &TypeEnv,
    m: &Term,
    supply: &mut NameSupply,
) -> Result<InferResult, InferError> {
    infer_with_derivation(delta, theta, gamma, m, supply).map(|(r, _)| r)
}

/// As [`infer`], also returning the derivation with the final substitution
/// applied throughout.
pub fn infer_with_derivation(
    delta: &KindEnv,
    theta: &RefinedKindEnv,
    gamma: &TypeEnv,
    m: &Term,
    supply: &mut NameSupply,
) -> Result<(InferResult, Derivation), InferError> {
    wellscoped(delta, m).map_err(|e| InferError::new(e.clone(), e.span().unwrap_or(m.span)))?;
    let m = &freshen_prefixes(delta, m);
    reserve_names(delta, theta, gamma, m, supply);
    let out = Engine { supply }.go(delta, theta, gamma, m)?;
    Ok((
        InferResult {
            theta: out.theta,
            subst: out.subst,
            ty: out.ty,
        },
        out.deriv,
    ))
}

/// Runs inference for a closed program and returns its type with display
/// names normalised. Errors are [`InferError::readable`].
pub fn infer_top(gamma: &TypeEnv, m: &Term) -> Result<Type, InferError> {
    let mut supply = NameSupply::new();
    let r = infer(
        &KindEnv::new(),
        &RefinedKindEnv::new(),
        gamma,
        m,
        &mut supply,
    )
    .map_err(|e| e.readable())?;
    Ok(crate::parser::normalize_type(&r.ty))
}

fn reserve_names(
    delta: &KindEnv,
    theta: &RefinedKindEnv,
    gamma: &TypeEnv,
    m: &Term,
    supply: &mut NameSupply,
) {
    let mut names: HashSet<Name> = delta.iter().cloned().collect();
    names.extend(theta.names().cloned());
    gamma.type_names(&mut names);
    m.annotation_names(&mut names);
    for n in names {
        supply.avoid(n);
    }
}

struct Out {
    theta: RefinedKindEnv,
    subst: Substitution,
    ty: Type,
    deriv: Derivation,
}

struct Engine<'s> {
    supply: &'s mut NameSupply,
}

impl Engine<'_> {
    fn go(
        &mut self,
        delta: &KindEnv,
        theta: &RefinedKindEnv,
        gamma: &TypeEnv,
        m: &Term,
    ) -> Result<Out, InferError> {
        let span = m.span;
        match &m.kind {
            TermKind::Freeze(x) => {
                let ty = lookup(gamma, x, span)?.clone();
                Ok(Out {
                    theta: theta.clone(),
                    subst: Substitution::identity(theta),
                    deriv: Derivation::new(DerivNode::Freeze(x.clone()), ty.clone(), span),
                    ty,
                })
            }
            TermKind::Var(x) => {
                let scheme = lookup(gamma, x, span)?.clone();
                let mut out_theta = theta.clone();
                let mut args = Vec::new();
                let mut ty = scheme.clone();
                // one binder at a time, so repeated binder names are handled
                while let Type::Forall(a, body) = ty {
                    let b = self.supply.fresh();
                    out_theta.push(b.clone(), Kind::Poly);
                    ty = Substitution::singleton(a, Type::Var(b.clone())).apply(&body);
                    args.push(Type::Var(b));
                }
                let node = DerivNode::Var {
                    name: x.clone(),
                    scheme,
                    args,
                };
                Ok(Out {
                    theta: out_theta,
                    subst: Substitution::identity(theta),
                    deriv: Derivation::new(node, ty.clone(), span),
                    ty,
                })
            }
            TermKind::Lit(l) => Ok(Out {
                theta: theta.clone(),
                subst: Substitution::identity(theta),
                ty: l.ty(),
                deriv: Derivation::new(DerivNode::Lit(*l), l.ty(), span),
            }),
            TermKind::Lam(x, body) => {
                let a = self.supply.fresh();
                let inner_theta = theta.clone().with(a.clone(), Kind::Mono);
                let inner_gamma = gamma.extended(x.clone(), Type::Var(a.clone()));
                let mut r = self.go(delta, &inner_theta, &inner_gamma, body)?;
                let s = r.subst.remove(&a).expect("substitution is total");
                let ty = Type::arrow(s.clone(), r.ty);
                let node = DerivNode::Lam {
                    param: x.clone(),
                    param_ty: s,
                    annotated: false,
                    body: Box::new(r.deriv),
                };
                Ok(Out {
                    theta: r.theta,
                    subst: r.subst,
                    deriv: Derivation::new(node, ty.clone(), span),
                    ty,
                })
            }
            TermKind::LamAnn(x, ann, body) => {
                let inner_gamma = gamma.extended(x.clone(), ann.clone());
                let r = self.go(delta, theta, &inner_gamma, body)?;
                let ty = Type::arrow(ann.clone(), r.ty);
                let node = DerivNode::Lam {
                    param: x.clone(),
                    param_ty: ann.clone(),
                    annotated: true,
                    body: Box::new(r.deriv),
                };
                Ok(Out {
                    theta: r.theta,
                    subst: r.subst,
                    deriv: Derivation::new(node, ty.clone(), span),
                    ty,
                })
            }
            TermKind::App(f, arg) => {
                let r1 = self.go(delta, theta, gamma, f)?;
                let gamma1 = r1.subst.apply_env(gamma);
                let r2 = self.go(delta, &r1.theta, &gamma1, arg)?;
                let b = self.supply.fresh();
                let theta2b = r2.theta.clone().with(b.clone(), Kind::Poly);
                let (theta3, mut s3) = unify(
                    delta,
                    &theta2b,
                    &r2.subst.apply(&r1.ty),
                    &Type::arrow(r2.ty, Type::Var(b.clone())),
                    self.supply,
                )
                .map_err(|e| InferError::new(e, span))?;
                let res = s3.remove(&b).expect("substitution is total");
                let s32 = compose(&s3, &r2.subst);
                let subst = compose(&s32, &r1.subst);
                let node = DerivNode::App {
                    fun: Box::new(r1.deriv.apply(&s32)),
                    arg: Box::new(r2.deriv.apply(&s3)),
                };
                Ok(Out {
                    theta: theta3,
                    subst,
                    deriv: Derivation::new(node, res.clone(), span),
                    ty: res,
                })
            }
            TermKind::Let(x, bound, body) => {
                let r1 = self.go(delta, theta, gamma, bound)?;
                let outer = delta.extended(r1.subst.ftv());
                let (abstracted, generalisable) = gen(&outer, &r1.ty, bound);
                let theta1 = demote(Kind::Mono, &r1.theta, &generalisable).without(&abstracted);
                let scheme = Type::forall(abstracted.clone(), r1.ty.clone());
                let gamma1 = r1
                    .subst
                    .apply_env(gamma)
                    .extended(x.clone(), scheme.clone());
                let r2 = self.go(delta, &theta1, &gamma1, body)?;
                let node = DerivNode::Let {
                    name: x.clone(),
                    annotation: None,
                    prefix: abstracted,
                    binding_ty: r2.subst.apply(&scheme),
                    bound: Box::new(r1.deriv.apply(&r2.subst)),
                    body: Box::new(r2.deriv),
                };
                Ok(Out {
                    theta: r2.theta,
                    subst: compose(&r2.subst, &r1.subst),
                    deriv: Derivation::new(node, r2.ty.clone(), span),
                    ty: r2.ty,
                })
            }
            TermKind::LetAnn(x, ann, bound, body) => {
                let (prefix, expected) = split(ann, bound);
                let inner = delta.extended(prefix.iter().cloned());
                let r1 = self.go(&inner, theta, gamma, bound)?;
                let (theta2, s2) = unify(&inner, &r1.theta, &expected, &r1.ty, self.supply)
                    .map_err(|e| InferError::new(e, span))?;
                let subst2 = compose(&s2, &r1.subst);
                let escaped: Vec<Name> = subst2
                    .ftv()
                    .into_iter()
                    .filter(|a| prefix.contains(a))
                    .collect();
                if !escaped.is_empty() {
                    return Err(InferError::new(
                        InferErrorKind::AnnotationEscape(escaped),
                        span,
                    ));
                }
                let gamma2 = subst2.apply_env(gamma).extended(x.clone(), ann.clone());
                let r3 = self.go(delta, &theta2, &gamma2, body)?;
                let bound_deriv = r1.deriv.apply(&compose(&r3.subst, &s2));
                let node = DerivNode::Let {
                    name: x.clone(),
                    annotation: Some(ann.clone()),
                    prefix,
                    binding_ty: ann.clone(),
                    bound: Box::new(bound_deriv),
                    body: Box::new(r3.deriv),
                };
                Ok(Out {
                    theta: r3.theta,
                    subst: compose(&r3.subst, &subst2),
                    deriv: Derivation::new(node, r3.ty.clone(), span),
                    ty: r3.ty,
                })
            }
        }
    }
}

fn lookup<'g>(gamma: &'g TypeEnv, x: &Name, span: Span) -> Result<&'g Type, InferError> {
    gamma
        .lookup(x)
        .ok_or_else(|| InferError::new(InferErrorKind::UnboundVar(x.clone()), span))
}
