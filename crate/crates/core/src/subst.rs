//! Type instantiations (δ, on rigid variables) and substitutions (θ, on
//! flexible variables).

use std::collections::HashSet;

use indexmap::IndexMap;

use crate::statics::has_kind;
use crate::syntax::{Kind, KindCtx, KindEnv, Name, RefinedKindEnv, Type, TypeEnv};

/// A finite map from type variables to types, kept in insertion order.
///
/// Substitutions produced by unification and inference are total on their
/// source environment and so contain explicit identity entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: IndexMap<Name, Type>,
}

/// Instantiations share the representation of substitutions; they differ
/// only in which environment their domain is drawn from.
pub type Instantiation = Substitution;

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    /// The identity on every variable of Θ.
    pub fn identity(theta: &RefinedKindEnv) -> Self {
        theta
            .names()
            .map(|a| (a.clone(), Type::Var(a.clone())))
            .collect()
    }

    pub fn singleton(a: Name, ty: Type) -> Self {
        let mut s = Substitution::new();
        s.insert(a, ty);
        s
    }

    pub fn insert(&mut self, a: Name, ty: Type) {
        self.map.insert(a, ty);
    }

    pub fn get(&self, a: &Name) -> Option<&Type> {
        self.map.get(a)
    }

    /// Removes `a` from the domain, keeping the order of the rest.
    pub fn remove(&mut self, a: &Name) -> Option<Type> {
        self.map.shift_remove(a)
    }

    pub fn contains(&self, a: &Name) -> bool {
        self.map.contains_key(a)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Name> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Type)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Capture-avoiding application.
    pub fn apply(&self, ty: &Type) -> Type {
        if self.map.is_empty() {
            return ty.clone();
        }
        apply_in(self, ty, &mut Vec::new())
    }

    pub fn apply_env(&self, gamma: &TypeEnv) -> TypeEnv {
        gamma.map_types(|t| self.apply(t))
    }

    /// Ordered free variables of `θ(a₁) → … → θ(aₙ)` over the domain.
    pub fn ftv(&self) -> Vec<Name> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for ty in self.map.values() {
            for a in ty.ftv() {
                if seen.insert(a.clone()) {
                    out.push(a);
                }
            }
        }
        out
    }
}

impl<N: Into<Name>> FromIterator<(N, Type)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (N, Type)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().map(|(n, t)| (n.into(), t)).collect(),
        }
    }
}

/// Bound variables renamed or shadowed on the way down: `Some(t)` maps the
/// name to `t`, `None` leaves it alone.
type Overlay = Vec<(Name, Option<Type>)>;

fn lookup<'a>(s: &'a Substitution, over: &'a Overlay, a: &Name) -> Option<&'a Type> {
    match over.iter().rev().find(|(n, _)| n == a) {
        Some((_, image)) => image.as_ref(),
        None => s.map.get(a),
    }
}

fn apply_in(s: &Substitution, ty: &Type, over: &mut Overlay) -> Type {
    match ty {
        Type::Var(a) => lookup(s, over, a).cloned().unwrap_or_else(|| ty.clone()),
        Type::Con(c, args) => Type::Con(*c, args.iter().map(|t| apply_in(s, t, over)).collect()),
        Type::Forall(a, body) => {
            let body_free = body.ftv();
            let mut in_play: HashSet<Name> = HashSet::new();
            let mut touched = false;
            for b in body_free.iter().filter(|b| *b != a) {
                match lookup(s, over, b) {
                    Some(image) => {
                        touched = true;
                        in_play.extend(image.ftv());
                    }
                    None => {
                        in_play.insert(b.clone());
                    }
                }
            }
            if !touched {
                // nothing free below this binder is substituted
                return ty.clone();
            }
            if in_play.contains(a) {
                in_play.extend(body_free);
                let c = fresh_binder(&in_play);
                over.push((a.clone(), Some(Type::Var(c.clone()))));
                let body2 = apply_in(s, body, over);
                over.pop();
                Type::Forall(c, Box::new(body2))
            } else {
                over.push((a.clone(), None));
                let body2 = apply_in(s, body, over);
                over.pop();
                Type::Forall(a.clone(), Box::new(body2))
            }
        }
    }
}

/// Least `%rK` not in `taken`.
fn fresh_binder(taken: &HashSet<Name>) -> Name {
    (0u64..)
        .map(|k| Name::from(format!("%r{k}")))
        .find(|n| !taken.contains(n))
        .expect("unbounded supply")
}

/// `outer ∘ inner`: maps each `a` in inner's domain to `outer(inner(a))`.
pub fn compose(outer: &Substitution, inner: &Substitution) -> Substitution {
    inner
        .iter()
        .map(|(a, t)| (a.clone(), outer.apply(t)))
        .collect()
}

/// Checks `Δ ⊢ θ : Θ ⇒ Θ′`.
pub fn subst_wf(
    delta: &KindEnv,
    theta: &Substitution,
    from: &RefinedKindEnv,
    to: &RefinedKindEnv,
) -> bool {
    if delta.iter().any(|a| from.contains(a) || to.contains(a)) {
        return false;
    }
    if theta.len() != from.len() {
        return false;
    }
    let ctx = KindCtx::new(delta, to);
    from.iter().all(|(a, k)| match theta.get(a) {
        Some(image) => has_kind(&ctx, image, k),
        None => false,
    })
}

/// Checks `Δ ⊢ δ : Δ′ ⇒_K Δ″`.
pub fn inst_wf(
    delta: &KindEnv,
    inst: &Instantiation,
    from: &KindEnv,
    k: Kind,
    to: &KindEnv,
) -> bool {
    if inst.len() != from.len() {
        return false;
    }
    let ctx = delta.extended(to.iter().cloned());
    from.iter().all(|a| match inst.get(a) {
        Some(image) => has_kind(&ctx, image, k),
        None => false,
    })
}

/// Forces the listed variables to kind • when `k` is •; the identity when
/// `k` is ★.
pub fn demote(k: Kind, theta: &RefinedKindEnv, vars: &[Name]) -> RefinedKindEnv {
    let mut out = theta.clone();
    if k == Kind::Mono {
        for a in vars {
            out.set_kind(a, Kind::Mono);
        }
    }
    out
}
