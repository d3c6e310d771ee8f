//! Seeded generators and independent oracles shared by the integration
//! tests.

#![allow(dead_code)]

pub mod ml;

use freezeml::prelude::prelude;
use freezeml::subst::Substitution;
use freezeml::syntax::{
    alpha_eq, Kind, KindEnv, Literal, Name, RefinedKindEnv, Term, Type, TypeCon, TypeEnv,
};
use freezeml::systemf::{f_let, is_fvalue, FTerm};
use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(s: &str) -> Type {
    Type::var(s)
}

pub fn idty() -> Type {
    Type::forall(["a"], Type::arrow(v("a"), v("a")))
}

const BINDERS: [&str; 5] = ["a", "b", "c", "p", "q"];

/// A random type over `vars`. With `want = Mono` the result is a monotype
/// mentioning only •-variables. Binders may shadow each other.
pub fn gen_type(rng: &mut Rng, vars: &[(Name, Kind)], depth: usize, want: Kind) -> Type {
    let usable: Vec<&Name> = vars
        .iter()
        .filter(|(_, k)| want == Kind::Poly || *k == Kind::Mono)
        .map(|(n, _)| n)
        .collect();
    let leaf = |rng: &mut Rng| -> Type {
        if !usable.is_empty() && rng.gen_bool(0.6) {
            Type::Var((*usable.choose(rng).unwrap()).clone())
        } else if rng.gen_bool(0.5) {
            Type::int()
        } else {
            Type::bool()
        }
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    let choice = rng.gen_range(0..10);
    match choice {
        0..=3 => Type::arrow(
            gen_type(rng, vars, depth - 1, want),
            gen_type(rng, vars, depth - 1, want),
        ),
        4 => Type::list(gen_type(rng, vars, depth - 1, want)),
        5 => Type::pair(
            gen_type(rng, vars, depth - 1, want),
            gen_type(rng, vars, depth - 1, want),
        ),
        6 => Type::st(
            gen_type(rng, vars, depth - 1, want),
            gen_type(rng, vars, depth - 1, want),
        ),
        _ if want == Kind::Poly => {
            let a = Name::from(*BINDERS.choose(rng).unwrap());
            let mut inner = vars.to_vec();
            inner.push((a.clone(), Kind::Mono));
            Type::Forall(a, Box::new(gen_type(rng, &inner, depth - 1, want)))
        }
        _ => leaf(rng),
    }
}

/// Kind-annotated view of Δ and Θ for the type generator.
pub fn scope(delta: &KindEnv, theta: &RefinedKindEnv) -> Vec<(Name, Kind)> {
    delta
        .iter()
        .map(|a| (a.clone(), Kind::Mono))
        .chain(theta.iter().map(|(a, k)| (a.clone(), k)))
        .collect()
}

/// Replaces random subterms of `ty` by variables drawn from `vars` or by
/// fresh random types.
pub fn mutate(rng: &mut Rng, ty: &Type, vars: &[(Name, Kind)], p: f64) -> Type {
    if rng.gen_bool(p) {
        if !vars.is_empty() && rng.gen_bool(0.7) {
            return Type::Var(vars.choose(rng).unwrap().0.clone());
        }
        return gen_type(rng, vars, 2, Kind::Poly);
    }
    match ty {
        Type::Var(_) => ty.clone(),
        Type::Con(c, args) => Type::Con(*c, args.iter().map(|t| mutate(rng, t, vars, p)).collect()),
        Type::Forall(a, b) => Type::Forall(a.clone(), Box::new(mutate(rng, b, vars, p))),
    }
}

pub struct UnifyCase {
    pub delta: KindEnv,
    pub theta: RefinedKindEnv,
    pub a: Type,
    pub b: Type,
}

/// A random well-kinded unification problem. Half the time `b` is a
/// mutation of `a`, which makes success likely.
pub fn gen_unify_case(rng: &mut Rng) -> UnifyCase {
    let delta: KindEnv = ["s", "t"].into_iter().map(Name::from).collect();
    let theta: RefinedKindEnv = [
        ("u", Kind::Mono),
        ("w", Kind::Mono),
        ("x", Kind::Poly),
        ("y", Kind::Poly),
    ]
    .into_iter()
    .collect();
    let vars = scope(&delta, &theta);
    let a = gen_type(rng, &vars, 3, Kind::Poly);
    let b = if rng.gen_bool(0.6) {
        mutate(rng, &a, &vars, 0.2)
    } else {
        gen_type(rng, &vars, 3, Kind::Poly)
    };
    UnifyCase { delta, theta, a, b }
}

/// A unifiable problem built from a known solution.
pub struct SolvedCase {
    pub delta: KindEnv,
    /// Θ ∪ Θ_img, the environment handed to unification.
    pub theta: RefinedKindEnv,
    /// Θ_img, the codomain of `solution`.
    pub codomain: RefinedKindEnv,
    /// Total on `theta`; identity on the codomain variables.
    pub solution: Substitution,
    pub a: Type,
    pub b: Type,
}

/// Picks θ : Θ ⇒ Θ_img, a type A over Δ,Θ, and B obtained from θ(A) by
/// replacing some occurrences of θ(x) with x. Then θ(A) = θ(B).
pub fn gen_solved_case(rng: &mut Rng) -> SolvedCase {
    let delta: KindEnv = ["s", "t"].into_iter().map(Name::from).collect();
    let dom: RefinedKindEnv = [
        ("u", Kind::Mono),
        ("w", Kind::Mono),
        ("x", Kind::Poly),
        ("y", Kind::Poly),
    ]
    .into_iter()
    .collect();
    let codomain: RefinedKindEnv = [("m", Kind::Mono), ("n", Kind::Poly)].into_iter().collect();
    let img_scope = scope(&delta, &codomain);
    let mut solution = Substitution::new();
    for (x, k) in dom.iter() {
        let image = if rng.gen_bool(0.25) {
            let pool: Vec<&(Name, Kind)> = img_scope
                .iter()
                .filter(|(_, kk)| Kind::le(*kk, k))
                .collect();
            Type::Var(pool.choose(rng).unwrap().0.clone())
        } else {
            gen_type(rng, &img_scope, 2, k)
        };
        solution.insert(x.clone(), image);
    }
    for (x, _) in codomain.iter() {
        solution.insert(x.clone(), Type::Var(x.clone()));
    }
    let a = gen_type(rng, &scope(&delta, &dom), 3, Kind::Poly);
    let theta_a = solution.apply(&a);
    let images: Vec<(Name, Type)> = dom
        .iter()
        .map(|(x, _)| (x.clone(), solution.get(x).unwrap().clone()))
        .collect();
    let b = abstract_images(rng, &theta_a, &images, &mut Vec::new());
    let mut theta = dom.clone();
    for (x, k) in codomain.iter() {
        theta.push(x.clone(), k);
    }
    SolvedCase {
        delta,
        theta,
        codomain,
        solution,
        a,
        b,
    }
}

fn abstract_images(
    rng: &mut Rng,
    ty: &Type,
    images: &[(Name, Type)],
    bound: &mut Vec<Name>,
) -> Type {
    let closed = !ty.ftv().iter().any(|a| bound.contains(a));
    if closed && rng.gen_bool(0.5) {
        let hits: Vec<&(Name, Type)> = images.iter().filter(|(_, t)| alpha_eq(t, ty)).collect();
        if let Some((x, _)) = hits.choose(rng) {
            return Type::Var(x.clone());
        }
    }
    match ty {
        Type::Var(_) => ty.clone(),
        Type::Con(c, args) => Type::Con(
            *c,
            args.iter()
                .map(|t| abstract_images(rng, t, images, bound))
                .collect(),
        ),
        Type::Forall(a, b) => {
            bound.push(a.clone());
            let inner = abstract_images(rng, b, images, bound);
            bound.pop();
            Type::Forall(a.clone(), Box::new(inner))
        }
    }
}

/// Closed annotation types used by the term generator.
pub fn annotation_types() -> Vec<Type> {
    [
        "Int",
        "Int -> Int",
        "forall a. a -> a",
        "[forall a. a -> a]",
        "forall a b. a -> b -> a",
        "(forall a. a -> a) -> Int",
        "forall a. [a] -> a",
        "(forall a. a -> a) -> (forall a. a -> a)",
    ]
    .iter()
    .map(|s| freezeml::parser::parse_type(s).unwrap())
    .collect()
}

/// Names of the prelude, in declaration order.
pub fn prelude_names() -> Vec<Name> {
    prelude().iter().map(|(x, _)| x.clone()).collect()
}

/// Random well-scoped FreezeML terms over the prelude. Annotations are
/// closed, so every term is well scoped under the empty Δ.
pub struct TermGen {
    pub globals: Vec<Name>,
    pub annotations: Vec<Type>,
    next: usize,
}

impl TermGen {
    pub fn new() -> Self {
        TermGen {
            globals: prelude_names(),
            annotations: annotation_types(),
            next: 0,
        }
    }

    fn fresh(&mut self, stem: &str) -> Name {
        self.next += 1;
        Name::from(format!("{stem}{}", self.next))
    }

    fn var(&self, rng: &mut Rng, locals: &[Name]) -> Name {
        if !locals.is_empty() && rng.gen_bool(0.6) {
            locals.choose(rng).unwrap().clone()
        } else {
            self.globals.choose(rng).unwrap().clone()
        }
    }

    pub fn term(&mut self, rng: &mut Rng, depth: usize) -> Term {
        self.next = 0;
        self.go(rng, &mut Vec::new(), depth)
    }

    fn go(&mut self, rng: &mut Rng, locals: &mut Vec<Name>, depth: usize) -> Term {
        if depth == 0 || rng.gen_bool(0.2) {
            return match rng.gen_range(0..10) {
                0..=5 => Term::var(self.var(rng, locals)),
                6..=8 => Term::freeze(self.var(rng, locals)),
                _ => Term::int(rng.gen_range(0..100)),
            };
        }
        match rng.gen_range(0..12) {
            0..=3 => {
                let f = self.go(rng, locals, depth - 1);
                let a = self.go(rng, locals, depth - 1);
                Term::app(f, a)
            }
            4 | 5 => {
                let x = self.fresh("x");
                locals.push(x.clone());
                let body = self.go(rng, locals, depth - 1);
                locals.pop();
                if let Some(ty) = self.annotations.choose(rng).filter(|_| rng.gen_bool(0.4)) {
                    Term::lam_ann(x, ty.clone(), body)
                } else {
                    Term::lam(x, body)
                }
            }
            6 | 7 => {
                let x = self.fresh("f");
                let bound = self.go(rng, locals, depth - 1);
                locals.push(x.clone());
                let body = self.go(rng, locals, depth - 1);
                locals.pop();
                if let Some(ty) = self.annotations.choose(rng).filter(|_| rng.gen_bool(0.3)) {
                    Term::let_ann(x, ty.clone(), bound, body)
                } else {
                    Term::let_(x, bound, body)
                }
            }
            8 => {
                // $M
                let g = self.fresh("g");
                let m = self.go(rng, locals, depth - 1);
                Term::let_(g.clone(), m, Term::freeze(g))
            }
            9 => {
                // M@
                let g = self.fresh("g");
                let m = self.go(rng, locals, depth - 1);
                Term::let_(g.clone(), m, Term::var(g))
            }
            10 => Term::freeze(self.var(rng, locals)),
            _ => Term::var(self.var(rng, locals)),
        }
    }
}

impl Default for TermGen {
    fn default() -> Self {
        TermGen::new()
    }
}

/// Depth of an F term: the longest path of constructors.
pub fn fdepth(t: &FTerm) -> usize {
    match t {
        FTerm::Var(_) | FTerm::Lit(_) => 1,
        FTerm::Lam(_, _, b) | FTerm::TyAbs(_, b) | FTerm::TyApp(b, _) => 1 + fdepth(b),
        FTerm::App(f, a) => 1 + fdepth(f).max(fdepth(a)),
    }
}

/// Random well-typed System F terms, built by synthesis with a
/// type-directed fallback for arguments.
pub struct FGen {
    next: usize,
}

impl FGen {
    pub fn new() -> Self {
        FGen { next: 0 }
    }

    fn fresh(&mut self, stem: &str) -> Name {
        self.next += 1;
        Name::from(format!("{stem}{}", self.next))
    }

    fn env_vars(gamma: &TypeEnv) -> Vec<(Name, Type)> {
        let mut seen = Vec::<Name>::new();
        let mut out = Vec::new();
        for (x, t) in gamma.iter().collect::<Vec<_>>().into_iter().rev() {
            if !seen.contains(x) {
                seen.push(x.clone());
                out.push((x.clone(), t.clone()));
            }
        }
        out
    }

    fn ty(&mut self, rng: &mut Rng, delta: &KindEnv) -> Type {
        let vars: Vec<(Name, Kind)> = delta.iter().map(|a| (a.clone(), Kind::Mono)).collect();
        gen_type(rng, &vars, 2, Kind::Poly)
    }

    pub fn term(&mut self, rng: &mut Rng, gamma: &TypeEnv, depth: usize) -> Option<(FTerm, Type)> {
        self.next = 0;
        self.synth(rng, &KindEnv::new(), gamma, depth)
    }

    fn synth(
        &mut self,
        rng: &mut Rng,
        delta: &KindEnv,
        gamma: &TypeEnv,
        d: usize,
    ) -> Option<(FTerm, Type)> {
        let leaf = d == 0 || rng.gen_bool(0.15);
        let pick = if leaf {
            rng.gen_range(0..2)
        } else {
            rng.gen_range(0..8)
        };
        match pick {
            0 => {
                let vars = Self::env_vars(gamma);
                let (x, t) = vars.choose(rng)?.clone();
                Some((FTerm::Var(x), t))
            }
            1 => Some((FTerm::Lit(Literal::Int(rng.gen_range(0..10))), Type::int())),
            2 => {
                let a = self.ty(rng, delta);
                let x = self.fresh("x");
                let (b, bt) =
                    self.synth(rng, delta, &gamma.extended(x.clone(), a.clone()), d - 1)?;
                Some((FTerm::lam(x, a.clone(), b), Type::arrow(a, bt)))
            }
            3 => {
                let a = self.fresh("a");
                let inner = delta.extended([a.clone()]);
                for _ in 0..3 {
                    let (v, vt) = self.synth(rng, &inner, gamma, d - 1)?;
                    if is_fvalue(&v) {
                        return Some((FTerm::ty_abs(a.clone(), v), Type::Forall(a, Box::new(vt))));
                    }
                }
                None
            }
            4 => {
                for _ in 0..4 {
                    let (t, tt) = self.synth(rng, delta, gamma, d - 1)?;
                    if let Type::Forall(a, body) = &tt {
                        let c = self.ty(rng, delta);
                        let result = Substitution::singleton(a.clone(), c.clone()).apply(body);
                        return Some((FTerm::ty_app(t, c), result));
                    }
                }
                None
            }
            5 | 6 => {
                for _ in 0..4 {
                    let (f, ft) = self.synth(rng, delta, gamma, d - 1)?;
                    if let Some((dom, cod)) = ft.as_arrow() {
                        let arg = self.check(rng, delta, gamma, dom, d - 1)?;
                        return Some((FTerm::app(f, arg), cod.clone()));
                    }
                }
                None
            }
            _ => {
                let (m, mt) = self.synth(rng, delta, gamma, d - 1)?;
                let x = self.fresh("y");
                let (n, nt) =
                    self.synth(rng, delta, &gamma.extended(x.clone(), mt.clone()), d - 1)?;
                Some((f_let(x, mt, m, n), nt))
            }
        }
    }

    fn check(
        &mut self,
        rng: &mut Rng,
        delta: &KindEnv,
        gamma: &TypeEnv,
        want: &Type,
        d: usize,
    ) -> Option<FTerm> {
        if d > 0 {
            for _ in 0..3 {
                if let Some((t, tt)) = self.synth(rng, delta, gamma, d - 1) {
                    if alpha_eq(&tt, want) {
                        return Some(t);
                    }
                }
            }
        }
        let d1 = d.saturating_sub(1);
        match want {
            Type::Var(_) => Self::env_vars(gamma)
                .into_iter()
                .find(|(_, t)| t == want)
                .map(|(x, _)| FTerm::Var(x)),
            Type::Con(TypeCon::Int, _) => Some(FTerm::Lit(Literal::Int(rng.gen_range(0..10)))),
            Type::Con(TypeCon::Bool, _) => Some(FTerm::Lit(Literal::Bool(rng.gen_bool(0.5)))),
            Type::Con(TypeCon::Arrow, args) => {
                let x = self.fresh("x");
                let body = self.check(
                    rng,
                    delta,
                    &gamma.extended(x.clone(), args[0].clone()),
                    &args[1],
                    d1,
                )?;
                Some(FTerm::lam(x, args[0].clone(), body))
            }
            Type::Con(TypeCon::List, args) => {
                Some(FTerm::ty_app(FTerm::var("[]"), args[0].clone()))
            }
            Type::Con(TypeCon::Pair, args) => {
                let l = self.check(rng, delta, gamma, &args[0], d1)?;
                let r = self.check(rng, delta, gamma, &args[1], d1)?;
                let p = FTerm::ty_app_n(FTerm::var("pair"), [args[0].clone(), args[1].clone()]);
                Some(FTerm::app(FTerm::app(p, l), r))
            }
            Type::Con(TypeCon::ST, args) if args[1] == Type::int() => {
                Some(FTerm::ty_app(FTerm::var("argST"), args[0].clone()))
            }
            Type::Con(..) => None,
            Type::Forall(a, body) => {
                let b = self.fresh("a");
                let body = Substitution::singleton(a.clone(), Type::Var(b.clone())).apply(body);
                let v = self.check(rng, &delta.extended([b.clone()]), gamma, &body, d1)?;
                is_fvalue(&v).then(|| FTerm::ty_abs(b, v))
            }
        }
    }
}

impl Default for FGen {
    fn default() -> Self {
        FGen::new()
    }
}

/// Renders a pass/fail line in the acceptance format.
pub fn verdict(ok: bool, label: &str, detail: &str) -> String {
    format!("[{}] {label}: {detail}", if ok { "PASS" } else { "FAIL" })
}
