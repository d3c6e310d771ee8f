//! Properties of type inference and the declarative check.

mod common;

use common::{annotation_types, gen_type, idty, rng, v, TermGen};
use freezeml::declcheck::{check_typing, replay};
use freezeml::infer::{infer, infer_top, infer_with_derivation, InferErrorKind};
use freezeml::parser::parse_program;
use freezeml::prelude::prelude;
use freezeml::subst::Substitution;
use freezeml::syntax::{
    alpha_eq, Kind, KindEnv, Name, NameSupply, RefinedKindEnv, Term, Type, TypeEnv,
};
use proptest::prelude::*;
use rand::Rng as _;

fn any_term(seed: u64) -> (Term, rand_chacha::ChaCha8Rng) {
    let mut r = rng(seed);
    let depth = r.gen_range(1..=5);
    let m = TermGen::new().term(&mut r, depth);
    (m, r)
}

fn residual_delta(theta: &RefinedKindEnv) -> KindEnv {
    theta.names().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn derivations_replay(seed in any::<u64>()) {
        let (m, _) = any_term(seed);
        let gamma = prelude();
        let mut supply = NameSupply::new();
        if let Ok((r, d)) = infer_with_derivation(&KindEnv::new(), &RefinedKindEnv::new(), &gamma, &m, &mut supply) {
            let delta = residual_delta(&r.theta);
            prop_assert!(replay(&delta, &gamma, &m, &d).is_ok(), "{}: {:?}", m, replay(&delta, &gamma, &m, &d));
            prop_assert!(alpha_eq(&d.ty, &r.ty));
        }
    }

    #[test]
    fn inference_agrees_with_the_check(seed in any::<u64>()) {
        let (m, mut r) = any_term(seed);
        let gamma = prelude();
        match infer(&KindEnv::new(), &RefinedKindEnv::new(), &gamma, &m, &mut NameSupply::new()) {
            Ok(res) => {
                let delta = residual_delta(&res.theta);
                prop_assert_eq!(check_typing(&delta, &gamma, &m, &res.ty), Ok(true), "{}", m);
            }
            Err(_) => {
                let mut candidates = annotation_types();
                candidates.push(gen_type(&mut r, &[], 3, Kind::Poly));
                for c in candidates {
                    prop_assert_eq!(check_typing(&KindEnv::new(), &gamma, &m, &c), Ok(false), "{} : {}", m, c);
                }
            }
        }
    }

    #[test]
    fn unconstrained_flexible_variables_are_untouched(seed in any::<u64>()) {
        let (m, _) = any_term(seed);
        let gamma = prelude();
        let theta: RefinedKindEnv = [("k1", Kind::Poly), ("k2", Kind::Mono)].into_iter().collect();
        if let Ok(res) = infer(&KindEnv::new(), &theta, &gamma, &m, &mut NameSupply::new()) {
            for a in ["k1", "k2"] {
                let a = Name::from(a);
                prop_assert_eq!(res.subst.get(&a), Some(&Type::Var(a.clone())));
                prop_assert!(!res.ty.has_free(&a));
            }
        }
    }

    #[test]
    fn flexible_variables_in_the_environment_are_solved_consistently(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut g = TermGen::new();
        g.globals.push("z".into());
        let depth = r.gen_range(1..=4);
        let m = g.term(&mut r, depth);
        let gamma = prelude().extended("z".into(), v("k"));
        let theta: RefinedKindEnv = [("k", Kind::Mono)].into_iter().collect();
        if let Ok(res) = infer(&KindEnv::new(), &theta, &gamma, &m, &mut NameSupply::new()) {
            let image = res.subst.get(&"k".into()).unwrap();
            prop_assert!(image.is_monotype());
            let delta = residual_delta(&res.theta);
            let solved = res.subst.apply_env(&gamma);
            prop_assert_eq!(check_typing(&delta, &solved, &m, &res.ty), Ok(true), "{}", m);
        }
    }

    #[test]
    fn inference_is_deterministic(seed in any::<u64>()) {
        let (m, _) = any_term(seed);
        let gamma = prelude();
        let mut s1 = NameSupply::new();
        let mut s2 = NameSupply::new();
        let a = infer(&KindEnv::new(), &RefinedKindEnv::new(), &gamma, &m, &mut s1);
        let b = infer(&KindEnv::new(), &RefinedKindEnv::new(), &gamma, &m, &mut s2);
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
        prop_assert_eq!(s1.counter(), s2.counter());
    }

    #[test]
    fn variable_instances_are_all_derivable(seed in any::<u64>(), index in 0usize..21) {
        let gamma = prelude();
        let (x, _) = gamma.iter().nth(index).unwrap();
        let m = Term::var(x.clone());
        let res = infer(&KindEnv::new(), &RefinedKindEnv::new(), &gamma, &m, &mut NameSupply::new()).unwrap();
        let mut r = rng(seed);
        let inst: Substitution = res.theta.iter().map(|(a, k)| (a.clone(), gen_type(&mut r, &[], 2, k))).collect();
        prop_assert_eq!(check_typing(&KindEnv::new(), &gamma, &m, &inst.apply(&res.ty)), Ok(true));
        let frozen = Term::freeze(x.clone());
        let scheme = gamma.lookup(x).unwrap();
        prop_assert_eq!(check_typing(&KindEnv::new(), &gamma, &frozen, scheme), Ok(true));
        if !res.theta.is_empty() {
            prop_assert_eq!(check_typing(&KindEnv::new(), &gamma, &frozen, &inst.apply(&res.ty)), Ok(false));
        }
    }
}

#[test]
fn variables_may_be_instantiated_at_polytypes() {
    let gamma = prelude();
    let m = parse_program("single id").unwrap();
    let r = infer(
        &KindEnv::new(),
        &RefinedKindEnv::new(),
        &gamma,
        &m,
        &mut NameSupply::new(),
    )
    .unwrap();
    assert!(r.ty.is_monotype());
    assert!(r.theta.iter().any(|(_, k)| k == Kind::Poly));
    let poly_arg = Type::list(Type::arrow(idty(), idty()));
    assert_eq!(
        check_typing(&KindEnv::new(), &gamma, &m, &poly_arg),
        Ok(true)
    );
    assert_eq!(
        check_typing(
            &KindEnv::new(),
            &gamma,
            &m,
            &Type::list(Type::arrow(Type::int(), Type::int()))
        ),
        Ok(true)
    );
    assert_eq!(
        check_typing(&KindEnv::new(), &gamma, &m, &Type::list(idty())),
        Ok(false)
    );
}

#[test]
fn shadowing_annotation_prefixes_are_accepted() {
    let src =
        "let (f : forall a. a -> a) = \\(x:a). let (g : forall a. a -> a) = \\(y:a).y in x in f";
    let m = parse_program(src).unwrap();
    let ty = infer_top(&prelude(), &m).unwrap();
    assert!(alpha_eq(&ty, &Type::arrow(v("a"), v("a"))), "{ty}");
    let src =
        "let (f : forall a. a -> a) = \\(x:a). let (g : forall a. a -> a) = \\(y:a).x in x in f";
    assert!(infer_top(&prelude(), &parse_program(src).unwrap()).is_err());
}

#[test]
fn annotations_must_be_in_scope() {
    let m = parse_program("\\(x:a).x").unwrap();
    let err = infer_top(&prelude(), &m).unwrap_err();
    assert!(matches!(err.kind, InferErrorKind::Scope(_)));
}

#[test]
fn generalisation_respects_the_value_restriction() {
    let gamma = prelude();
    let poly = infer_top(&gamma, &parse_program("let f = \\x.x in ~f").unwrap()).unwrap();
    assert!(alpha_eq(&poly, &idty()));
    let mono = infer_top(&gamma, &parse_program("let f = id id in ~f").unwrap()).unwrap();
    assert!(mono.is_monotype());
}

#[test]
fn empty_environment_rejects_unbound_variables() {
    let m = parse_program("id").unwrap();
    assert!(infer_top(&TypeEnv::new(), &m).is_err());
}
