use std::collections::HashSet;

use indexmap::IndexMap;

use super::{Kind, Name, Type, RESERVED_PREFIX};

/// Resolves the kind of a type variable, if bound.
pub trait KindLookup {
    fn lookup_kind(&self, a: &Name) -> Option<Kind>;
}

/// Rigid type variables (Δ). Every entry has kind •.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KindEnv {
    names: Vec<Name>,
}

impl KindEnv {
    pub fn new() -> Self {
        KindEnv::default()
    }

    pub fn contains(&self, a: &Name) -> bool {
        self.names.contains(a)
    }

    /// Appends `a`. Re-adding a name already present leaves the environment
    /// unchanged, so nested binders that reuse a name keep a single entry.
    pub fn push(&mut self, a: Name) {
        if !self.contains(&a) {
            self.names.push(a);
        }
    }

    pub fn extended<I: IntoIterator<Item = Name>>(&self, names: I) -> KindEnv {
        let mut out = self.clone();
        for a in names {
            out.push(a);
        }
        out
    }

    pub fn names(&self) -> &[Name] {
        &self.names
    }

    pub fn iter(&self) -> impl Iterator<Item = &Name> {
        self.names.iter()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

impl<N: Into<Name>> FromIterator<N> for KindEnv {
    fn from_iter<I: IntoIterator<Item = N>>(iter: I) -> Self {
        let mut env = KindEnv::new();
        for n in iter {
            env.push(n.into());
        }
        env
    }
}

impl KindLookup for KindEnv {
    fn lookup_kind(&self, a: &Name) -> Option<Kind> {
        self.contains(a).then_some(Kind::Mono)
    }
}

/// Flexible type variables (Θ), each with kind • or ★, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RefinedKindEnv {
    entries: IndexMap<Name, Kind>,
}

impl RefinedKindEnv {
    pub fn new() -> Self {
        RefinedKindEnv::default()
    }

    pub fn get(&self, a: &Name) -> Option<Kind> {
        self.entries.get(a).copied()
    }

    pub fn contains(&self, a: &Name) -> bool {
        self.entries.contains_key(a)
    }

    /// Appends `a : k`. If `a` is already present its kind is replaced in place.
    pub fn push(&mut self, a: Name, k: Kind) {
        self.entries.insert(a, k);
    }

    pub fn with(mut self, a: Name, k: Kind) -> Self {
        self.push(a, k);
        self
    }

    /// Removes `a`, keeping the order of the remaining entries.
    pub fn remove(&mut self, a: &Name) -> Option<Kind> {
        self.entries.shift_remove(a)
    }

    pub fn without(&self, names: &[Name]) -> RefinedKindEnv {
        let mut out = self.clone();
        for a in names {
            out.remove(a);
        }
        out
    }

    pub fn set_kind(&mut self, a: &Name, k: Kind) {
        if let Some(slot) = self.entries.get_mut(a) {
            *slot = k;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, Kind)> {
        self.entries.iter().map(|(n, k)| (n, *k))
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Embeds a rigid environment as all-• entries.
    pub fn from_kind_env(delta: &KindEnv) -> Self {
        delta.iter().map(|a| (a.clone(), Kind::Mono)).collect()
    }
}

impl<N: Into<Name>> FromIterator<(N, Kind)> for RefinedKindEnv {
    fn from_iter<I: IntoIterator<Item = (N, Kind)>>(iter: I) -> Self {
        RefinedKindEnv {
            entries: iter.into_iter().map(|(n, k)| (n.into(), k)).collect(),
        }
    }
}

impl KindLookup for RefinedKindEnv {
    fn lookup_kind(&self, a: &Name) -> Option<Kind> {
        self.get(a)
    }
}

/// The pair Δ, Θ viewed as a single kinding context.
#[derive(Clone, Copy, Debug)]
pub struct KindCtx<'a> {
    pub rigid: &'a KindEnv,
    pub flex: &'a RefinedKindEnv,
}

impl<'a> KindCtx<'a> {
    pub fn new(rigid: &'a KindEnv, flex: &'a RefinedKindEnv) -> Self {
        KindCtx { rigid, flex }
    }
}

impl KindLookup for KindCtx<'_> {
    fn lookup_kind(&self, a: &Name) -> Option<Kind> {
        if self.rigid.contains(a) {
            Some(Kind::Mono)
        } else {
            self.flex.get(a)
        }
    }
}

/// Term-variable typings (Γ). Lookup finds the rightmost binding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeEnv {
    entries: Vec<(Name, Type)>,
}

impl TypeEnv {
    pub fn new() -> Self {
        TypeEnv::default()
    }

    pub fn lookup(&self, x: &Name) -> Option<&Type> {
        self.entries
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, t)| t)
    }

    pub fn push(&mut self, x: Name, ty: Type) {
        self.entries.push((x, ty));
    }

    pub fn extended(&self, x: Name, ty: Type) -> TypeEnv {
        let mut out = self.clone();
        out.push(x, ty);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Type)> {
        self.entries.iter().map(|(x, t)| (x, t))
    }

    pub fn map_types(&self, mut f: impl FnMut(&Type) -> Type) -> TypeEnv {
        TypeEnv {
            entries: self
                .entries
                .iter()
                .map(|(x, t)| (x.clone(), f(t)))
                .collect(),
        }
    }

    /// Every type-variable name mentioned by the stored types.
    pub fn type_names(&self, out: &mut HashSet<Name>) {
        for (_, t) in &self.entries {
            t.collect_names(out);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<N: Into<Name>> FromIterator<(N, Type)> for TypeEnv {
    fn from_iter<I: IntoIterator<Item = (N, Type)>>(iter: I) -> Self {
        TypeEnv {
            entries: iter.into_iter().map(|(n, t)| (n.into(), t)).collect(),
        }
    }
}

/// Source of fresh type-variable names `%0`, `%1`, ….
///
/// Names registered with [`NameSupply::avoid`] are never emitted.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    next: u64,
    avoid: HashSet<Name>,
}

impl NameSupply {
    pub fn new() -> Self {
        NameSupply::default()
    }

    /// A supply that never emits any of `names`.
    pub fn avoiding<'a>(names: impl IntoIterator<Item = &'a Name>) -> Self {
        let mut s = NameSupply::new();
        for n in names {
            s.avoid(n.clone());
        }
        s
    }

    pub fn avoid(&mut self, name: Name) {
        if name.is_reserved() {
            self.avoid.insert(name);
        }
    }

    pub fn fresh(&mut self) -> Name {
        loop {
            let n = Name::from(format!("{RESERVED_PREFIX}{}", self.next));
            self.next += 1;
            if !self.avoid.contains(&n) {
                return n;
            }
        }
    }

    /// Number of names emitted or skipped so far.
    pub fn counter(&self) -> u64 {
        self.next
    }
}
