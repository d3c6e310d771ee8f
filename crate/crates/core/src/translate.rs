//! Translations between FreezeML and System F.
//!
//! FreezeML terms are elaborated from typing derivations; System F terms
//! are imported by freezing variables and encoding type abstraction and
//! application with annotated lets.

use thiserror::Error;

use crate::infer::{infer_with_derivation, InferError};
use crate::subst::Substitution;
use crate::syntax::{
    KindEnv, Literal, Name, NameSupply, RefinedKindEnv, Span, Term, TermKind, Type, TypeEnv,
};
use crate::systemf::{f_let, f_typecheck, is_fvalue, FError, FTerm};

/// A typing derivation, shaped like the term it types. Every node carries
/// its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub node: DerivNode,
    pub ty: Type,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivNode {
    /// `x` with its scheme `∀Δ′.H` and the instantiation `δ(Δ′)`, in
    /// prefix order.
    Var {
        name: Name,
        scheme: Type,
        args: Vec<Type>,
    },
    Freeze(Name),
    Lit(Literal),
    Lam {
        param: Name,
        param_ty: Type,
        annotated: bool,
        body: Box<Derivation>,
    },
    App {
        fun: Box<Derivation>,
        arg: Box<Derivation>,
    },
    /// `let x = M in N` or `let (x : A) = M in N`. `prefix` lists the
    /// variables abstracted over `M`; `binding_ty` is the type of `x` in `N`.
    Let {
        name: Name,
        annotation: Option<Type>,
        prefix: Vec<Name>,
        binding_ty: Type,
        bound: Box<Derivation>,
        body: Box<Derivation>,
    },
}

impl Derivation {
    pub fn new(node: DerivNode, ty: Type, span: Span) -> Self {
        Derivation { node, ty, span }
    }

    /// Applies `s` to every type in the tree.
    pub fn apply(&self, s: &Substitution) -> Derivation {
        let node = match &self.node {
            DerivNode::Var { name, scheme, args } => DerivNode::Var {
                name: name.clone(),
                scheme: s.apply(scheme),
                args: args.iter().map(|t| s.apply(t)).collect(),
            },
            DerivNode::Freeze(x) => DerivNode::Freeze(x.clone()),
            DerivNode::Lit(l) => DerivNode::Lit(*l),
            DerivNode::Lam {
                param,
                param_ty,
                annotated,
                body,
            } => DerivNode::Lam {
                param: param.clone(),
                param_ty: s.apply(param_ty),
                annotated: *annotated,
                body: Box::new(body.apply(s)),
            },
            DerivNode::App { fun, arg } => DerivNode::App {
                fun: Box::new(fun.apply(s)),
                arg: Box::new(arg.apply(s)),
            },
            DerivNode::Let {
                name,
                annotation,
                prefix,
                binding_ty,
                bound,
                body,
            } => DerivNode::Let {
                name: name.clone(),
                annotation: annotation.clone(),
                prefix: prefix.clone(),
                binding_ty: s.apply(binding_ty),
                bound: Box::new(bound.apply(s)),
                body: Box::new(body.apply(s)),
            },
        };
        Derivation {
            node,
            ty: s.apply(&self.ty),
            span: self.span,
        }
    }
}

/// Infers `Δ; Γ ⊢ M` and returns the derivation with every residual
/// flexible variable grounded to `Int`.
pub fn rebuild_derivation(
    delta: &KindEnv,
    gamma: &TypeEnv,
    m: &Term,
) -> Result<Derivation, InferError> {
    let mut supply = NameSupply::new();
    let (r, d) = infer_with_derivation(delta, &RefinedKindEnv::new(), gamma, m, &mut supply)?;
    let ground: Substitution = r.theta.names().map(|a| (a.clone(), Type::int())).collect();
    Ok(d.apply(&ground))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Infer(#[from] InferError),
    #[error("ill-typed System F term: {0}")]
    SystemF(#[from] FError),
}

/// Elaborates a derivation to System F.
pub fn to_systemf(d: &Derivation) -> FTerm {
    match &d.node {
        DerivNode::Freeze(x) => FTerm::Var(x.clone()),
        DerivNode::Var { name, args, .. } => {
            FTerm::ty_app_n(FTerm::Var(name.clone()), args.iter().cloned())
        }
        DerivNode::Lit(l) => FTerm::Lit(*l),
        DerivNode::Lam {
            param,
            param_ty,
            body,
            ..
        } => FTerm::lam(param.clone(), param_ty.clone(), to_systemf(body)),
        DerivNode::App { fun, arg } => FTerm::app(to_systemf(fun), to_systemf(arg)),
        DerivNode::Let {
            name,
            prefix,
            binding_ty,
            bound,
            body,
            ..
        } => f_let(
            name.clone(),
            binding_ty.clone(),
            FTerm::ty_abs_n(prefix, to_systemf(bound)),
            to_systemf(body),
        ),
    }
}

/// Infers, grounds and elaborates a closed-over-Δ FreezeML term, returning
/// the System F term and its inferred type.
pub fn elaborate(delta: &KindEnv, gamma: &TypeEnv, m: &Term) -> Result<(FTerm, Type), InferError> {
    let d = rebuild_derivation(delta, gamma, m)?;
    Ok((to_systemf(&d), d.ty))
}

/// How type applications are encoded when importing from System F.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TyAppEncoding {
    /// `let (x : B[A/a]) = (⟦M⟧)@ in ~x`, binding `⟦M⟧` first when it is
    /// not a value and the result type is itself quantified.
    #[default]
    Instantiate,
    /// `let (x : B[A/a]) = ⟦M⟧ in ~x`, which is not type preserving.
    Naive,
}

/// Translates a well-typed System F term into FreezeML.
pub fn from_systemf(delta: &KindEnv, gamma: &TypeEnv, t: &FTerm) -> Result<Term, FError> {
    from_systemf_with(delta, gamma, t, TyAppEncoding::Instantiate)
}

pub fn from_systemf_with(
    delta: &KindEnv,
    gamma: &TypeEnv,
    t: &FTerm,
    encoding: TyAppEncoding,
) -> Result<Term, FError> {
    f_typecheck(delta, gamma, t)?;
    let mut imp = Importer { next: 0, encoding };
    imp.go(delta, gamma, t).map(|(m, _)| m)
}

struct Importer {
    next: usize,
    encoding: TyAppEncoding,
}

impl Importer {
    fn fresh(&mut self) -> Name {
        let n = Name::from(format!("%t{}", self.next));
        self.next += 1;
        n
    }

    /// `(M)@`, that is `let z = M in z`.
    fn inst(&mut self, m: Term) -> Term {
        let z = self.fresh();
        Term::let_(z.clone(), m, Term::var(z))
    }

    /// `let (y : ty) = bound in ~y`.
    fn frozen_let(&mut self, ty: Type, bound: Term) -> Term {
        let y = self.fresh();
        Term::let_ann(y.clone(), ty, bound, Term::freeze(y))
    }

    fn go(&mut self, delta: &KindEnv, gamma: &TypeEnv, t: &FTerm) -> Result<(Term, Type), FError> {
        match t {
            FTerm::Var(x) => {
                let ty = f_typecheck(delta, gamma, t)?;
                Ok((Term::freeze(x.clone()), ty))
            }
            FTerm::Lit(l) => Ok((Term::new(TermKind::Lit(*l), Span::default()), l.ty())),
            FTerm::Lam(x, a, body) => {
                let (m, b) = self.go(delta, &gamma.extended(x.clone(), a.clone()), body)?;
                Ok((
                    Term::lam_ann(x.clone(), a.clone(), m),
                    Type::arrow(a.clone(), b),
                ))
            }
            // the let form keeps values as values
            FTerm::App(f, arg) if matches!(**f, FTerm::Lam(..)) && is_fvalue(t) => {
                let FTerm::Lam(x, a, body) = &**f else {
                    unreachable!()
                };
                let (n, _) = self.go(delta, gamma, arg)?;
                let (m, b) = self.go(delta, &gamma.extended(x.clone(), a.clone()), body)?;
                Ok((Term::let_ann(x.clone(), a.clone(), n, m), b))
            }
            FTerm::App(f, arg) => {
                let (m, ft) = self.go(delta, gamma, f)?;
                let (n, _) = self.go(delta, gamma, arg)?;
                let b = match ft.as_arrow() {
                    Some((_, b)) => b.clone(),
                    None => return Err(FError::NotAFunction((**f).clone(), ft)),
                };
                Ok((Term::app(m, n), b))
            }
            FTerm::TyAbs(a, body) => {
                let (v, b) = self.go(&delta.extended([a.clone()]), gamma, body)?;
                let ty = Type::Forall(a.clone(), Box::new(b));
                let bound = self.inst(v);
                Ok((self.frozen_let(ty.clone(), bound), ty))
            }
            FTerm::TyApp(f, arg) => {
                let (m, ft) = self.go(delta, gamma, f)?;
                let result = match &ft {
                    Type::Forall(a, b) => Substitution::singleton(a.clone(), arg.clone()).apply(b),
                    _ => return Err(FError::NotAForall((**f).clone(), ft)),
                };
                let term = match self.encoding {
                    TyAppEncoding::Naive => self.frozen_let(result.clone(), m),
                    TyAppEncoding::Instantiate if !m.is_val() && !result.is_guarded() => {
                        let z = self.fresh();
                        let bound = self.inst(Term::freeze(z.clone()));
                        let inner = self.frozen_let(result.clone(), bound);
                        Term::let_ann(z, ft, m, inner)
                    }
                    TyAppEncoding::Instantiate => {
                        let bound = self.inst(m);
                        self.frozen_let(result.clone(), bound)
                    }
                };
                Ok((term, result))
            }
        }
    }
}
