use std::collections::{HashMap, HashSet};
use std::fmt;

use super::Name;

/// Built-in type constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeCon {
    Int,
    Bool,
    List,
    Arrow,
    Pair,
    ST,
}

impl TypeCon {
    pub const ALL: [TypeCon; 6] = [
        TypeCon::Int,
        TypeCon::Bool,
        TypeCon::List,
        TypeCon::Arrow,
        TypeCon::Pair,
        TypeCon::ST,
    ];

    pub fn arity(self) -> usize {
        match self {
            TypeCon::Int | TypeCon::Bool => 0,
            TypeCon::List => 1,
            TypeCon::Arrow | TypeCon::Pair | TypeCon::ST => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TypeCon::Int => "Int",
            TypeCon::Bool => "Bool",
            TypeCon::List => "List",
            TypeCon::Arrow => "->",
            TypeCon::Pair => "Pair",
            TypeCon::ST => "ST",
        }
    }
}

impl fmt::Display for TypeCon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Types of both FreezeML and System F.
///
/// Constructor applications are expected to be saturated; the parser and
/// [`crate::statics::kind_of`] enforce this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Var(Name),
    Con(TypeCon, Vec<Type>),
    Forall(Name, Box<Type>),
}

impl Type {
    pub fn var(name: impl Into<Name>) -> Type {
        Type::Var(name.into())
    }

    pub fn int() -> Type {
        Type::Con(TypeCon::Int, Vec::new())
    }

    pub fn bool() -> Type {
        Type::Con(TypeCon::Bool, Vec::new())
    }

    pub fn arrow(from: Type, to: Type) -> Type {
        Type::Con(TypeCon::Arrow, vec![from, to])
    }

    pub fn list(elem: Type) -> Type {
        Type::Con(TypeCon::List, vec![elem])
    }

    pub fn pair(fst: Type, snd: Type) -> Type {
        Type::Con(TypeCon::Pair, vec![fst, snd])
    }

    pub fn st(s: Type, a: Type) -> Type {
        Type::Con(TypeCon::ST, vec![s, a])
    }

    /// `∀a₁…aₙ.body`, outermost binder first.
    pub fn forall<I, N>(names: I, body: Type) -> Type
    where
        I: IntoIterator<Item = N>,
        I::IntoIter: DoubleEndedIterator,
        N: Into<Name>,
    {
        names
            .into_iter()
            .rev()
            .fold(body, |acc, n| Type::Forall(n.into(), Box::new(acc)))
    }

    /// Argument and result of an arrow type.
    pub fn as_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Con(TypeCon::Arrow, args) => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    /// No `Forall` anywhere (the class S).
    pub fn is_monotype(&self) -> bool {
        match self {
            Type::Var(_) => true,
            Type::Con(_, args) => args.iter().all(Type::is_monotype),
            Type::Forall(..) => false,
        }
    }

    /// Root is not a `Forall` (the class H).
    pub fn is_guarded(&self) -> bool {
        !matches!(self, Type::Forall(..))
    }

    /// Peels the top-level quantifiers: `∀Δ.H` gives `(Δ, H)`.
    pub fn split_foralls(&self) -> (Vec<Name>, &Type) {
        let mut names = Vec::new();
        let mut ty = self;
        while let Type::Forall(a, body) = ty {
            names.push(a.clone());
            ty = body;
        }
        (names, ty)
    }

    pub fn ftv(&self) -> Vec<Name> {
        ftv_ordered(self)
    }

    /// Whether `a` occurs free.
    pub fn has_free(&self, a: &Name) -> bool {
        match self {
            Type::Var(b) => a == b,
            Type::Con(_, args) => args.iter().any(|t| t.has_free(a)),
            Type::Forall(b, body) => b != a && body.has_free(a),
        }
    }

    /// Every name mentioned, bound or free.
    pub fn collect_names(&self, out: &mut HashSet<Name>) {
        match self {
            Type::Var(a) => {
                out.insert(a.clone());
            }
            Type::Con(_, args) => args.iter().for_each(|t| t.collect_names(out)),
            Type::Forall(a, body) => {
                out.insert(a.clone());
                body.collect_names(out);
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Type::Var(_) => 1,
            Type::Con(_, args) => 1 + args.iter().map(Type::size).sum::<usize>(),
            Type::Forall(_, body) => 1 + body.size(),
        }
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::render_type(self, false))
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::render_type(self, false))
    }
}

/// Free variables in order of first occurrence, left to right.
pub fn ftv_ordered(ty: &Type) -> Vec<Name> {
    fn go(ty: &Type, bound: &mut Vec<Name>, seen: &mut HashSet<Name>, out: &mut Vec<Name>) {
        match ty {
            Type::Var(a) => {
                if !bound.contains(a) && seen.insert(a.clone()) {
                    out.push(a.clone());
                }
            }
            Type::Con(_, args) => {
                for t in args {
                    go(t, bound, seen, out);
                }
            }
            Type::Forall(a, body) => {
                bound.push(a.clone());
                go(body, bound, seen, out);
                bound.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(ty, &mut Vec::new(), &mut HashSet::new(), &mut out);
    out
}

/// Equality up to renaming of bound variables. Free variables must match.
pub fn alpha_eq(a: &Type, b: &Type) -> bool {
    alpha_eq_inner(a, b, &mut Vec::new(), &mut Vec::new(), &mut None)
}

/// Equality up to bound renaming and a bijective renaming of free variables.
pub fn equivalent_up_to_free_renaming(a: &Type, b: &Type) -> bool {
    let mut bij = Some((HashMap::new(), HashMap::new()));
    alpha_eq_inner(a, b, &mut Vec::new(), &mut Vec::new(), &mut bij)
}

type Bijection = Option<(HashMap<Name, Name>, HashMap<Name, Name>)>;

fn alpha_eq_inner(
    a: &Type,
    b: &Type,
    bound_a: &mut Vec<Name>,
    bound_b: &mut Vec<Name>,
    bij: &mut Bijection,
) -> bool {
    match (a, b) {
        (Type::Var(x), Type::Var(y)) => {
            let ix = bound_a.iter().rposition(|n| n == x);
            let iy = bound_b.iter().rposition(|n| n == y);
            match (ix, iy) {
                (Some(i), Some(j)) => i == j,
                (None, None) => match bij {
                    None => x == y,
                    Some((fwd, bwd)) => {
                        let ok_f = fwd.get(x).is_none_or(|t| t == y);
                        let ok_b = bwd.get(y).is_none_or(|t| t == x);
                        if ok_f && ok_b {
                            fwd.insert(x.clone(), y.clone());
                            bwd.insert(y.clone(), x.clone());
                            true
                        } else {
                            false
                        }
                    }
                },
                _ => false,
            }
        }
        (Type::Con(c, xs), Type::Con(d, ys)) => {
            c == d
                && xs.len() == ys.len()
                && xs
                    .iter()
                    .zip(ys)
                    .all(|(x, y)| alpha_eq_inner(x, y, bound_a, bound_b, bij))
        }
        (Type::Forall(x, p), Type::Forall(y, q)) => {
            bound_a.push(x.clone());
            bound_b.push(y.clone());
            let r = alpha_eq_inner(p, q, bound_a, bound_b, bij);
            bound_a.pop();
            bound_b.pop();
            r
        }
        _ => false,
    }
}
