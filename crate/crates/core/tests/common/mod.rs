//! Generators shared by the integration suites.
#![allow(dead_code)]

pub mod oracle;

use lambdadelta::reduction::{canonical_type, step_rt};
use lambdadelta::term::{lift, BoundCount, Closure, Entry, Env, SortPolicy, Term};
use lambdadelta::{default_fuel, infer_arity, r_normalize, ApplicabilityDomain, Checker};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUBJECT_MAX: usize = 12;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn omega() -> Checker {
    Checker::new(ApplicabilityDomain::Omega)
}

/// A random term of exactly `size` constructors (rounded down to odd) whose
/// references stay below `scope + free`.
pub fn random_term(r: &mut ChaCha8Rng, scope: usize, free: usize, size: usize) -> Term {
    let refs = scope + free;
    if size < 3 {
        return if refs > 0 && r.gen_bool(0.5) { Term::Ref(r.gen_range(0..refs)) } else { Term::Sort(r.gen_range(0..3)) };
    }
    let left = 1 + 2 * r.gen_range(0..(size - 1) / 2);
    let right = size - 1 - left;
    let v = random_term(r, scope, free, left);
    match r.gen_range(0..4) {
        0 => Term::appl(v, random_term(r, scope, free, right)),
        1 => Term::cast(v, random_term(r, scope, free, right)),
        2 => Term::abst(v, random_term(r, scope + 1, free, right)),
        _ => Term::abbr(v, random_term(r, scope + 1, free, right)),
    }
}

pub fn random_env(r: &mut ChaCha8Rng, len: usize, free: usize) -> Env {
    let mut env = Env::new();
    for pos in 0..len {
        let size = 1 + 2 * r.gen_range(0..3);
        let e = match r.gen_range(0..7) {
            0 => Entry::Void,
            1..=3 => Entry::Decl(random_term(r, pos, free, size)),
            _ => Entry::Defn(random_term(r, pos, free, size)),
        };
        env.push(e);
    }
    env
}

/// A random closed closure (every reference resolves inside the closure).
pub fn random_closure(r: &mut ChaCha8Rng) -> Closure {
    let len = r.gen_range(0..3);
    let env = random_env(r, len, 0);
    let size = 1 + 2 * r.gen_range(0..=(SUBJECT_MAX - 1) / 2);
    let subject = random_term(r, env.len(), 0, size);
    Closure::new(env, subject)
}

/// A random closure whose subject has an arity.
pub fn arity_closure(r: &mut ChaCha8Rng) -> Closure {
    loop {
        let c = random_closure(r);
        if infer_arity(&c.env, &c.subject).is_some() {
            return c;
        }
    }
}

fn typ(env: &Env, t: &Term) -> Option<Term> {
    let fuel = default_fuel(env.size() + t.size());
    canonical_type(env, t, BoundCount::ONE, &SortPolicy::Successor, fuel).ok()
}

fn normal(env: &Env, t: &Term) -> Option<Term> {
    r_normalize(env, t, default_fuel(env.size() + t.size())).ok()
}

/// Builds terms that are valid by construction in most cases; callers
/// keep only those the checker accepts.
pub struct ValidBuilder<'a> {
    pub r: &'a mut ChaCha8Rng,
}

impl ValidBuilder<'_> {
    fn sort(&mut self) -> Term {
        Term::Sort(self.r.gen_range(0..3))
    }

    /// A type for a declaration: a sort, a small abstraction, or a
    /// variable already known to be a type.
    pub fn decl_type(&mut self, env: &Env) -> Term {
        match self.r.gen_range(0..6) {
            0..=2 => self.sort(),
            3 | 4 => {
                let w = self.decl_type(env);
                let b = self.sort();
                Term::abst(w, b)
            }
            _ => self.term(env, 3),
        }
    }

    pub fn term(&mut self, env: &Env, budget: usize) -> Term {
        let refs: Vec<usize> = (0..env.len()).filter(|&i| env.lookup(i).unwrap().entry.term().is_some()).collect();
        if budget <= 1 {
            return match refs.choose(self.r) {
                Some(&i) if self.r.gen_bool(0.5) => Term::Ref(i),
                _ => self.sort(),
            };
        }
        match self.r.gen_range(0..10) {
            0 => self.sort(),
            1 if !refs.is_empty() => Term::Ref(*refs.choose(self.r).unwrap()),
            1 | 2 => {
                let w = self.decl_type(env);
                let b = self.term(&env.with(Entry::Decl(w.clone())), budget.saturating_sub(1 + w.size()));
                Term::abst(w, b)
            }
            3 => {
                let v = self.term(env, budget / 3);
                let b = self.term(&env.with(Entry::Defn(v.clone())), budget.saturating_sub(1 + v.size()));
                Term::abbr(v, b)
            }
            4 | 5 => {
                let t = self.term(env, budget / 2);
                match typ(env, &t) {
                    Some(u) => {
                        let u = if self.r.gen_bool(0.5) { normal(env, &u).unwrap_or(u) } else { u };
                        Term::cast(u, t)
                    }
                    None => t,
                }
            }
            6 => self.functional_ref_application(env, budget).unwrap_or_else(|| self.sort()),
            _ => {
                let v = self.term(env, budget / 3);
                let Some(tv) = typ(env, &v) else { return v };
                let tv = if self.r.gen_bool(0.5) { normal(env, &tv).unwrap_or(tv) } else { tv };
                let inner = env.with(Entry::Decl(tv.clone()));
                let b = self.term(&inner, budget.saturating_sub(v.size() + tv.size() + 2));
                let f = Term::abst(tv, b);
                if self.r.gen_bool(0.25) {
                    // an abbreviation in function position exercises θ
                    let d = self.sort();
                    Term::appl(v, Term::abbr(d, lift(&f, 0, 1)))
                } else {
                    Term::appl(v, f)
                }
            }
        }
    }

    /// `@(V).f` for a declared `f` whose type is `[x:W].U`, with `V` of type
    /// `W` when one can be found among sorts and variables.
    fn functional_ref_application(&mut self, env: &Env, budget: usize) -> Option<Term> {
        let mut candidates = Vec::new();
        for i in 0..env.len() {
            let l = env.lookup(i).unwrap();
            if let Entry::Decl(w) = l.entry {
                if let Term::Abst(dom, _) = normal(&env.prefix(l.prefix_len), w)? {
                    candidates.push((i, lift(&dom, 0, l.shift)));
                }
            }
        }
        let (f, dom) = candidates.choose(self.r)?.clone();
        for _ in 0..8 {
            let v = self.term(env, budget / 2);
            let ok = typ(env, &v)
                .and_then(|tv| normal(env, &tv))
                .zip(normal(env, &dom))
                .is_some_and(|(a, b)| a == b);
            if ok {
                return Some(Term::appl(v, Term::Ref(f)));
            }
        }
        None
    }

    pub fn env(&mut self, len: usize) -> Env {
        let mut env = Env::new();
        for _ in 0..len {
            let e = match self.r.gen_range(0..8) {
                0 => Entry::Void,
                1..=4 => Entry::Decl(self.decl_type(&env)),
                _ => Entry::Defn(self.term(&env, 4)),
            };
            env.push(e);
        }
        env
    }
}

/// Up to `count` closures valid at Ω, subjects of at most
/// [`SUBJECT_MAX`] constructors.
pub fn valid_corpus(seed: u64, count: usize) -> Vec<Closure> {
    let mut r = rng(seed);
    let checker = omega();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 200 {
        attempts += 1;
        let len = r.gen_range(0..4);
        let mut b = ValidBuilder { r: &mut r };
        let env = b.env(len);
        let subject = b.term(&env, SUBJECT_MAX);
        // keep a few bare atoms, mostly compound subjects
        if subject.size() > SUBJECT_MAX || (subject.size() == 1 && r.gen_bool(0.9)) {
            continue;
        }
        let c = Closure::new(env, subject);
        if !out.contains(&c) && checker.check_closure(&c).is_ok_and(|rep| rep.is_valid()) {
            out.push(c);
        }
    }
    out
}

/// A mix of Ω-valid closures and random closed closures, most of them
/// invalid.
pub fn mixed_corpus(seed: u64, valid: usize, random: usize) -> Vec<Closure> {
    let mut out = valid_corpus(seed, valid);
    let mut r = rng(seed ^ 0x5eed);
    out.extend((0..random).map(|_| random_closure(&mut r)));
    out
}

/// Random maximal sequence of 0-bound steps, capped at `cap` steps.
pub fn random_r_walk(r: &mut ChaCha8Rng, env: &Env, t: &Term, cap: usize) -> Option<Term> {
    let mut cur = t.clone();
    for _ in 0..cap {
        let zero: Vec<Term> = step_rt(env, &cur, &SortPolicy::Successor)
            .into_iter()
            .filter(|s| s.bound == BoundCount::ZERO)
            .map(|s| s.result)
            .collect();
        match zero.choose(r) {
            Some(next) => cur = next.clone(),
            None => return Some(cur),
        }
    }
    None
}

/// Terms for property tests, with references up to `refs` free.
pub fn arb_term(refs: usize) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![(0u64..4).prop_map(Term::Sort), (0..refs.max(1)).prop_map(Term::Ref)];
    leaf.prop_recursive(4, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::appl(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::cast(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::abst(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::abbr(a, b)),
        ]
    })
}

pub fn arb_env() -> impl Strategy<Value = Env> {
    let entry = prop_oneof![
        arb_term(3).prop_map(Entry::Decl),
        arb_term(3).prop_map(Entry::Defn),
        Just(Entry::Void),
    ];
    proptest::collection::vec(entry, 0..4).prop_map(Env::from)
}
