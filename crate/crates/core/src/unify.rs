//! Unification of types with rigid (Δ) and flexible (Θ) variables.

use thiserror::Error;

use crate::statics::has_kind;
use crate::subst::{compose, demote, Substitution};
use crate::syntax::{Kind, KindCtx, KindEnv, Name, NameSupply, RefinedKindEnv, Type, TypeCon};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("type constructor mismatch: `{left}` vs `{right}`")]
    ConMismatch { left: Type, right: Type },
    #[error("rigid type variables `{left}` and `{right}` differ")]
    RigidMismatch { left: Name, right: Name },
    #[error("cannot instantiate `{var}` ({kind}) with `{ty}`")]
    OccursOrKind { var: Name, kind: Kind, ty: Type },
    #[error("quantified variable would escape its scope")]
    SkolemEscape { skolem: Name },
    #[error("cannot unify `{left}` with `{right}`")]
    StructureMismatch { left: Type, right: Type },
}

/// Most general unifier of `a` and `b` under `Δ; Θ`.
///
/// Returns the refined environment Θ′ and a substitution θ, total on Θ,
/// with `Δ ⊢ θ : Θ ⇒ Θ′` and `θ(a) = θ(b)` up to α.
pub fn unify(
    delta: &KindEnv,
    theta: &RefinedKindEnv,
    a: &Type,
    b: &Type,
    supply: &mut NameSupply,
) -> Result<(RefinedKindEnv, Substitution), UnifyError> {
    match (a, b) {
        (Type::Var(x), Type::Var(y)) if x == y => {
            Ok((theta.clone(), Substitution::identity(theta)))
        }
        (Type::Var(x), _) if theta.contains(x) => bind(delta, theta, x, b),
        (_, Type::Var(y)) if theta.contains(y) => bind(delta, theta, y, a),
        (Type::Con(c, xs), Type::Con(d, ys)) if c == d && xs.len() == ys.len() => {
            let mut env = theta.clone();
            let mut acc = Substitution::identity(theta);
            for (x, y) in xs.iter().zip(ys) {
                let (env2, step) = unify(delta, &env, &acc.apply(x), &acc.apply(y), supply)?;
                acc = compose(&step, &acc);
                env = env2;
            }
            Ok((env, acc))
        }
        (Type::Forall(x, p), Type::Forall(y, q)) => {
            let c = supply.fresh();
            let skolem = Type::Var(c.clone());
            let p2 = Substitution::singleton(x.clone(), skolem.clone()).apply(p);
            let q2 = Substitution::singleton(y.clone(), skolem).apply(q);
            let mut delta2 = delta.clone();
            delta2.push(c.clone());
            let (env, s) = unify(&delta2, theta, &p2, &q2, supply)?;
            if s.ftv().contains(&c) {
                return Err(UnifyError::SkolemEscape { skolem: c });
            }
            Ok((env, s))
        }
        (Type::Var(x), Type::Var(y)) => Err(UnifyError::RigidMismatch {
            left: x.clone(),
            right: y.clone(),
        }),
        (Type::Con(..), Type::Con(..)) => Err(UnifyError::ConMismatch {
            left: a.clone(),
            right: b.clone(),
        }),
        _ => Err(UnifyError::StructureMismatch {
            left: a.clone(),
            right: b.clone(),
        }),
    }
}

/// The flexible-variable case: `x ↦ ty`, demoting the free flexible
/// variables of `ty` when `x` is monomorphic. The kind check also rules
/// out occurrences of `x` in `ty`, since `x` is removed first.
fn bind(
    delta: &KindEnv,
    theta: &RefinedKindEnv,
    x: &Name,
    ty: &Type,
) -> Result<(RefinedKindEnv, Substitution), UnifyError> {
    let k = theta.get(x).expect("flexible variable");
    let mut rest = theta.clone();
    rest.remove(x);
    let vars: Vec<Name> = ty
        .ftv()
        .into_iter()
        .filter(|v| !delta.contains(v))
        .collect();
    let env = demote(k, &rest, &vars);
    if !has_kind(&KindCtx::new(delta, &env), ty, k) {
        return Err(UnifyError::OccursOrKind {
            var: x.clone(),
            kind: k,
            ty: ty.clone(),
        });
    }
    let s = theta
        .names()
        .map(|n| {
            let image = if n == x {
                ty.clone()
            } else {
                Type::Var(n.clone())
            };
            (n.clone(), image)
        })
        .collect();
    Ok((env, s))
}

/// Whether a constructor mismatch error concerns the given constructors.
pub fn is_con_mismatch(err: &UnifyError, c: TypeCon, d: TypeCon) -> bool {
    match err {
        UnifyError::ConMismatch {
            left: Type::Con(x, _),
            right: Type::Con(y, _),
        } => (*x == c && *y == d) || (*x == d && *y == c),
        _ => false,
    }
}
