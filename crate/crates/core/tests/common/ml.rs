//! Textbook algorithm W for ML with the value restriction. Kept apart from
//! the library: its own types, its own unifier, its own generalisation.

use std::collections::{BTreeSet, HashMap};

use freezeml::syntax::{Literal, Name, Term, TermKind, Type, TypeCon};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MTy {
    Var(usize),
    Con(TypeCon, Vec<MTy>),
}

#[derive(Clone, Debug)]
pub struct Scheme {
    pub vars: Vec<usize>,
    pub body: MTy,
}

#[derive(Default)]
pub struct W {
    subst: HashMap<usize, MTy>,
    next: usize,
}

impl W {
    fn fresh(&mut self) -> MTy {
        self.next += 1;
        MTy::Var(self.next)
    }

    fn resolve(&self, t: &MTy) -> MTy {
        match t {
            MTy::Var(n) => match self.subst.get(n) {
                Some(u) => self.resolve(u),
                None => t.clone(),
            },
            MTy::Con(c, args) => MTy::Con(*c, args.iter().map(|a| self.resolve(a)).collect()),
        }
    }

    fn occurs(&self, n: usize, t: &MTy) -> bool {
        match self.resolve(t) {
            MTy::Var(m) => m == n,
            MTy::Con(_, args) => args.iter().any(|a| self.occurs(n, a)),
        }
    }

    fn unify(&mut self, a: &MTy, b: &MTy) -> Result<(), String> {
        let (a, b) = (self.resolve(a), self.resolve(b));
        match (&a, &b) {
            (MTy::Var(n), MTy::Var(m)) if n == m => Ok(()),
            (MTy::Var(n), t) | (t, MTy::Var(n)) => {
                if self.occurs(*n, t) {
                    return Err("occurs check".into());
                }
                self.subst.insert(*n, t.clone());
                Ok(())
            }
            (MTy::Con(c, xs), MTy::Con(d, ys)) => {
                if c != d || xs.len() != ys.len() {
                    return Err(format!("{c} vs {d}"));
                }
                for (x, y) in xs.iter().zip(ys) {
                    self.unify(x, y)?;
                }
                Ok(())
            }
        }
    }

    fn ftv(&self, t: &MTy, out: &mut BTreeSet<usize>) {
        match self.resolve(t) {
            MTy::Var(n) => {
                out.insert(n);
            }
            MTy::Con(_, args) => args.iter().for_each(|a| self.ftv(a, out)),
        }
    }

    fn instantiate(&mut self, s: &Scheme) -> MTy {
        let map: HashMap<usize, MTy> = s.vars.iter().map(|v| (*v, self.fresh())).collect();
        fn go(t: &MTy, map: &HashMap<usize, MTy>) -> MTy {
            match t {
                MTy::Var(n) => map.get(n).cloned().unwrap_or(MTy::Var(*n)),
                MTy::Con(c, args) => MTy::Con(*c, args.iter().map(|a| go(a, map)).collect()),
            }
        }
        go(&s.body, &map)
    }

    fn infer(&mut self, env: &[(Name, Scheme)], m: &Term) -> Result<MTy, String> {
        match &m.kind {
            TermKind::Var(x) => {
                let s = env
                    .iter()
                    .rev()
                    .find(|(y, _)| y == x)
                    .map(|(_, s)| s.clone())
                    .ok_or_else(|| format!("unbound {x}"))?;
                Ok(self.instantiate(&s))
            }
            TermKind::Lit(Literal::Int(_)) => Ok(MTy::Con(TypeCon::Int, vec![])),
            TermKind::Lit(Literal::Bool(_)) => Ok(MTy::Con(TypeCon::Bool, vec![])),
            TermKind::Lam(x, body) => {
                let a = self.fresh();
                let mut env2 = env.to_vec();
                env2.push((
                    x.clone(),
                    Scheme {
                        vars: vec![],
                        body: a.clone(),
                    },
                ));
                let b = self.infer(&env2, body)?;
                Ok(MTy::Con(TypeCon::Arrow, vec![a, b]))
            }
            TermKind::App(f, arg) => {
                let ft = self.infer(env, f)?;
                let at = self.infer(env, arg)?;
                let r = self.fresh();
                self.unify(&ft, &MTy::Con(TypeCon::Arrow, vec![at, r.clone()]))?;
                Ok(r)
            }
            TermKind::Let(x, bound, body) => {
                let bt = self.infer(env, bound)?;
                let scheme = if is_value(bound) {
                    let mut in_env = BTreeSet::new();
                    for (_, s) in env {
                        let mut fs = BTreeSet::new();
                        self.ftv(&s.body, &mut fs);
                        for v in &s.vars {
                            fs.remove(v);
                        }
                        in_env.extend(fs);
                    }
                    let mut fs = BTreeSet::new();
                    self.ftv(&bt, &mut fs);
                    Scheme {
                        vars: fs.difference(&in_env).copied().collect(),
                        body: self.resolve(&bt),
                    }
                } else {
                    Scheme {
                        vars: vec![],
                        body: bt,
                    }
                };
                let mut env2 = env.to_vec();
                env2.push((x.clone(), scheme));
                self.infer(&env2, body)
            }
            _ => Err("outside the ML fragment".into()),
        }
    }
}

/// ML syntactic values.
pub fn is_value(m: &Term) -> bool {
    match &m.kind {
        TermKind::Var(_) | TermKind::Lit(_) | TermKind::Lam(..) => true,
        TermKind::Let(_, a, b) => is_value(a) && is_value(b),
        _ => false,
    }
}

/// Converts a prenex polymorphic type to a scheme.
pub fn scheme_of(ty: &Type, w: &mut W) -> Option<Scheme> {
    let (names, body) = ty.split_foralls();
    let mut map = HashMap::new();
    let mut vars = Vec::new();
    for n in names {
        w.next += 1;
        map.insert(n, w.next);
        vars.push(w.next);
    }
    fn conv(t: &Type, map: &HashMap<Name, usize>) -> Option<MTy> {
        match t {
            Type::Var(a) => map.get(a).map(|n| MTy::Var(*n)),
            Type::Con(c, args) => Some(MTy::Con(
                *c,
                args.iter().map(|a| conv(a, map)).collect::<Option<_>>()?,
            )),
            Type::Forall(..) => None,
        }
    }
    Some(Scheme {
        vars,
        body: conv(body, &map)?,
    })
}

fn to_type(t: &MTy) -> Type {
    match t {
        MTy::Var(n) => Type::var(format!("m{n}")),
        MTy::Con(c, args) => Type::Con(*c, args.iter().map(to_type).collect()),
    }
}

/// Infers the type of `m` under the prenex signatures in `env`.
pub fn infer_ml(env: &[(Name, Type)], m: &Term) -> Result<Type, String> {
    let mut w = W::default();
    let mut schemes = Vec::new();
    for (x, t) in env {
        let s = scheme_of(t, &mut w).ok_or_else(|| format!("{x} is not prenex"))?;
        schemes.push((x.clone(), s));
    }
    let t = w.infer(&schemes, m)?;
    Ok(to_type(&w.resolve(&t)))
}
