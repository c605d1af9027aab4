mod common;

use common::{mixed_corpus, omega, rng, valid_corpus};
use lambdadelta::checker::Premise;
use lambdadelta::{
    default_fuel, infer_arity, parse_closure, parse_term, r_normalize, rt_convertible, step_rt, ApplicabilityDomain,
    BoundCount, Checker, Env, KernelError, SortPolicy, Term,
};
use rand::seq::SliceRandom;

const SORTS: SortPolicy = SortPolicy::Successor;

fn valid(checker: &Checker, env: &Env, t: &Term) -> bool {
    checker.check_valid(env, t).unwrap().is_valid()
}

#[test]
fn inferred_types_are_valid() {
    let checker = omega();
    for c in valid_corpus(31, 500) {
        let u = checker.infer_type(&c.env, &c.subject).unwrap();
        assert!(valid(&checker, &c.env, &u), "{c:?}: {u:?}");
    }
}

#[test]
fn valid_terms_have_arities_shared_by_their_types() {
    let checker = omega();
    for c in valid_corpus(32, 500) {
        let a = infer_arity(&c.env, &c.subject);
        assert!(a.is_some(), "{c:?}");
        let u = checker.infer_type(&c.env, &c.subject).unwrap();
        assert_eq!(infer_arity(&c.env, &u), a, "{c:?}: {u:?}");
    }
}

#[test]
fn accepted_types_are_unique_up_to_conversion() {
    let checker = omega();
    for c in valid_corpus(33, 300) {
        let (env, t) = (&c.env, &c.subject);
        let u = checker.infer_type(env, t).unwrap();
        let mut candidates = vec![u.clone(), r_normalize(env, &u, default_fuel(env.size() + u.size())).unwrap()];
        for s in step_rt(env, t, &SORTS).into_iter().filter(|s| s.bound == BoundCount::ZERO) {
            candidates.extend(checker.infer_type(env, &s.result).ok());
        }
        candidates.retain(|u| checker.typecheck(env, t, u).unwrap());
        for u1 in &candidates {
            for u2 in &candidates {
                let fuel = default_fuel(env.size() + u1.size() + u2.size());
                assert!(rt_convertible(env, u1, BoundCount::ZERO, u2, BoundCount::ZERO, &SORTS, fuel).unwrap());
            }
        }
    }
}

#[test]
fn bound_steps_preserve_validity() {
    let checker = omega();
    for c in valid_corpus(34, 500) {
        for s in step_rt(&c.env, &c.subject, &SORTS) {
            assert!(valid(&checker, &c.env, &s.result), "{c:?} via {}", s.rule);
        }
    }
}

#[test]
fn iterated_typing_at_one_is_typing() {
    let checker = omega();
    let mut r = rng(35);
    let corpus = mixed_corpus(35, 200, 200);
    for c in &corpus {
        let Ok(u) = checker.infer_type(&c.env, &c.subject) else { continue };
        let other = &corpus.choose(&mut r).unwrap().subject;
        for cand in [u.clone(), Term::Sort(0), other.clone(), Term::cast(Term::Sort(0), u)] {
            if infer_arity(&c.env, &cand).is_none() {
                continue;
            }
            assert_eq!(
                checker.iterated_typecheck(BoundCount::ONE, &c.env, &c.subject, &cand).unwrap(),
                checker.typecheck(&c.env, &c.subject, &cand).unwrap(),
                "{c:?} against {cand:?}"
            );
        }
    }
}

#[test]
fn cast_of_a_sort_to_itself_is_rejected() {
    let c = parse_closure("|- <*0>.*0").unwrap();
    let report = omega().check_closure(&c).unwrap();
    assert_eq!(report.premise(), Some(Premise::CastMismatch));
    assert_eq!(report.to_string(), "invalid (cast-mismatch)");
}

#[test]
fn application_validity_depends_on_the_domain() {
    let c = parse_closure("|- @(*0).[x:*1].x").unwrap();
    for d in ["omega", "set:0", "set:1"] {
        let checker = Checker::new(d.parse().unwrap());
        assert!(checker.check_closure(&c).unwrap().is_valid(), "{d}");
    }
    let report = Checker::new(ApplicabilityDomain::Empty).check_closure(&c).unwrap();
    assert_eq!(report.premise(), Some(Premise::BoundNotInDomain));
}

#[test]
fn strong_applicability_rejects_the_weak_witness() {
    let c = parse_closure("|- @(*1).[y:*2].@(*0).[x:y].*5").unwrap();
    let f = omega().check_closure(&c).unwrap().failure.unwrap();
    assert_eq!(f.premise, Premise::SubtermInvalid);
    assert_eq!(f.cause, Premise::ArgumentTypeMismatch);
}

#[test]
fn typing_examples() {
    let checker = omega();
    let e = Env::new();
    assert!(checker.typecheck(&e, &Term::Sort(0), &Term::Sort(1)).unwrap());
    let id = parse_term("[x:*0].x").unwrap();
    let ty = parse_term("[x:*0].*0").unwrap();
    assert!(checker.typecheck(&e, &id, &ty).unwrap());
    assert!(!checker.typecheck(&e, &id, &Term::Sort(0)).unwrap());
    assert_eq!(checker.infer_type(&e, &id).unwrap(), ty);
    assert_eq!(checker.infer_type(&e, &Term::Sort(0)).unwrap(), Term::Sort(1));

    let c = parse_closure("x=*0 |- x").unwrap();
    assert_eq!(checker.infer_type(&c.env, &c.subject).unwrap(), Term::Sort(1));
    assert!(checker.iterated_typecheck(BoundCount::ZERO, &c.env, &c.subject, &Term::Sort(0)).unwrap());
    assert!(checker.iterated_typecheck(BoundCount(2), &e, &Term::Sort(0), &Term::Sort(2)).unwrap());
}

#[test]
fn conversion_examples() {
    let e = Env::new();
    let c = parse_closure("x=*0 |- x").unwrap();
    assert!(rt_convertible(&c.env, &c.subject, BoundCount::ZERO, &Term::Sort(0), BoundCount::ZERO, &SORTS, 100).unwrap());
    assert!(rt_convertible(&e, &Term::Sort(0), BoundCount::ONE, &Term::Sort(1), BoundCount::ZERO, &SORTS, 100).unwrap());
    assert!(!rt_convertible(&e, &Term::Sort(0), BoundCount::ZERO, &Term::Sort(1), BoundCount::ZERO, &SORTS, 100).unwrap());
    let omega_term = parse_term("@([x:*0].@(x).x).[x:*0].@(x).x").unwrap();
    assert_eq!(
        rt_convertible(&e, &omega_term, BoundCount::ZERO, &Term::Sort(0), BoundCount::ZERO, &SORTS, 100),
        Err(KernelError::NoArity)
    );
}

#[test]
fn invalid_terms_have_no_inferred_type() {
    let checker = omega();
    let c = parse_closure("|- <*0>.*0").unwrap();
    assert_eq!(checker.infer_type(&c.env, &c.subject), Err(KernelError::Invalid));
}

#[test]
fn fuel_exhaustion_is_not_invalidity() {
    let c = parse_closure("|- @(*0).[x:*1].x").unwrap();
    let starved = omega().with_fuel(0);
    assert_eq!(starved.check_closure(&c), Err(KernelError::FuelExhausted));
}
