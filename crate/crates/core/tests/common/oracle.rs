//! Brute-force enumerators written straight from the rule tables: every
//! rule is tried at every position, independently of the kernel's
//! recursive enumerators.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lambdadelta::reduction::{HeadRule, Position, Rule, RtStep};
use lambdadelta::term::{Entry, Env, Term};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Table {
    /// bound rt-reduction
    Rt,
    /// bound t-reduction
    T,
    /// extended rt-reduction
    X,
}

/// Shifts free references at or above `cutoff` by `d`.
pub fn shift(t: &Term, cutoff: usize, d: isize) -> Term {
    match t {
        Term::Sort(s) => Term::Sort(*s),
        Term::Ref(i) if *i >= cutoff => Term::Ref((*i as isize + d) as usize),
        Term::Ref(i) => Term::Ref(*i),
        Term::Appl(a, b) => Term::appl(shift(a, cutoff, d), shift(b, cutoff, d)),
        Term::Cast(a, b) => Term::cast(shift(a, cutoff, d), shift(b, cutoff, d)),
        Term::Abst(a, b) => Term::abst(shift(a, cutoff, d), shift(b, cutoff + 1, d)),
        Term::Abbr(a, b) => Term::abbr(shift(a, cutoff, d), shift(b, cutoff + 1, d)),
    }
}

fn occurs(t: &Term, i: usize) -> bool {
    match t {
        Term::Sort(_) => false,
        Term::Ref(j) => *j == i,
        Term::Appl(a, b) | Term::Cast(a, b) => occurs(a, i) || occurs(b, i),
        Term::Abst(a, b) | Term::Abbr(a, b) => occurs(a, i) || occurs(b, i + 1),
    }
}

/// Entry bound by `Ref(i)` and its term moved to the full environment.
fn resolve(env: &Env, i: usize) -> Option<(Entry, Option<Term>)> {
    let entries = env.entries();
    if i >= entries.len() {
        return None;
    }
    let e = entries[entries.len() - 1 - i].clone();
    let t = e.term().map(|t| shift(t, 0, i as isize + 1));
    Some((e, t))
}

/// Every head rule of `table` that applies at the root of `t`, as
/// `(bound, reduct, rule)`.
pub fn heads(table: Table, env: &Env, t: &Term) -> Vec<(u64, Term, HeadRule)> {
    let mut out = Vec::new();
    let r_rules = table != Table::T;
    match t {
        Term::Appl(v, f) if r_rules => match f.as_ref() {
            Term::Abst(w, b) => {
                out.push((0, Term::abbr(Term::cast((**w).clone(), (**v).clone()), (**b).clone()), HeadRule::Beta))
            }
            Term::Abbr(w, b) => {
                out.push((0, Term::abbr((**w).clone(), Term::appl(shift(v, 0, 1), (**b).clone())), HeadRule::Theta))
            }
            _ => {}
        },
        Term::Abbr(_, b) if r_rules && !occurs(b, 0) => out.push((0, shift(b, 1, -1), HeadRule::Zeta)),
        Term::Cast(u, b) => {
            if r_rules {
                out.push((0, (**b).clone(), HeadRule::Epsilon));
            }
            out.push((1, (**u).clone(), HeadRule::Extract));
        }
        Term::Sort(s) => out.push((1, Term::Sort(s + 1), HeadRule::Sort)),
        Term::Ref(i) => match resolve(env, *i) {
            Some((Entry::Defn(_), Some(v))) => out.push((0, v, HeadRule::Delta)),
            Some((Entry::Decl(_), Some(w))) => {
                // the extended table has one rule for both kinds of entry
                let bound = if table == Table::X { 0 } else { 1 };
                out.push((bound, w, HeadRule::Lambda));
            }
            _ => {}
        },
        _ => {}
    }
    out
}

/// Largest bound a context rule lets through.
pub fn allows(table: Table, pos: Position, bound: u64) -> bool {
    match table {
        Table::X => true,
        Table::Rt | Table::T => match pos {
            Position::ApplArg | Position::PairLeft | Position::CastType | Position::CastBody => bound == 0,
            Position::ApplFun | Position::PairBody => true,
        },
    }
}

#[derive(Clone)]
pub struct Site {
    pub path: Vec<Position>,
    pub env: Env,
    pub sub: Term,
}

pub fn sites(env: &Env, t: &Term) -> Vec<Site> {
    fn go(env: &Env, t: &Term, path: &mut Vec<Position>, out: &mut Vec<Site>) {
        out.push(Site { path: path.clone(), env: env.clone(), sub: t.clone() });
        let mut child = |p: Position, e: &Env, c: &Term, out: &mut Vec<Site>| {
            path.push(p);
            go(e, c, path, out);
            path.pop();
        };
        match t {
            Term::Sort(_) | Term::Ref(_) => {}
            Term::Appl(v, f) => {
                child(Position::ApplArg, env, v, out);
                child(Position::ApplFun, env, f, out);
            }
            Term::Cast(u, b) => {
                child(Position::CastType, env, u, out);
                child(Position::CastBody, env, b, out);
            }
            Term::Abst(w, b) => {
                child(Position::PairLeft, env, w, out);
                child(Position::PairBody, &env.with(Entry::Decl((**w).clone())), b, out);
            }
            Term::Abbr(v, b) => {
                child(Position::PairLeft, env, v, out);
                child(Position::PairBody, &env.with(Entry::Defn((**v).clone())), b, out);
            }
        }
    }
    let mut out = Vec::new();
    go(env, t, &mut Vec::new(), &mut out);
    out
}

pub fn plug(t: &Term, path: &[Position], new: Term) -> Term {
    let Some((first, rest)) = path.split_first() else { return new };
    match (t, first) {
        (Term::Appl(v, f), Position::ApplArg) => Term::appl(plug(v, rest, new), (**f).clone()),
        (Term::Appl(v, f), Position::ApplFun) => Term::appl((**v).clone(), plug(f, rest, new)),
        (Term::Cast(u, b), Position::CastType) => Term::cast(plug(u, rest, new), (**b).clone()),
        (Term::Cast(u, b), Position::CastBody) => Term::cast((**u).clone(), plug(b, rest, new)),
        (Term::Abst(w, b), Position::PairLeft) => Term::abst(plug(w, rest, new), (**b).clone()),
        (Term::Abst(w, b), Position::PairBody) => Term::abst((**w).clone(), plug(b, rest, new)),
        (Term::Abbr(w, b), Position::PairLeft) => Term::abbr(plug(w, rest, new), (**b).clone()),
        (Term::Abbr(w, b), Position::PairBody) => Term::abbr((**w).clone(), plug(b, rest, new)),
        _ => panic!("path does not fit the term"),
    }
}

/// All single steps of `table` as `(bound, reduct)`.
pub fn steps(table: Table, env: &Env, t: &Term) -> BTreeSet<(u64, Term)> {
    let mut out = BTreeSet::new();
    for site in sites(env, t) {
        let fits = |bound: u64| site.path.iter().all(|p| allows(table, *p, bound));
        for (bound, reduct, _) in heads(table, &site.env, &site.sub) {
            if fits(bound) {
                out.insert((bound, plug(t, &site.path, reduct)));
            }
        }
        if table != Table::X && fits(1) {
            if let Term::Cast(u, b) = &site.sub {
                let us = steps(table, &site.env, u);
                let bs = steps(table, &site.env, b);
                for (_, u2) in us.iter().filter(|s| s.0 == 1) {
                    for (_, b2) in bs.iter().filter(|s| s.0 == 1) {
                        out.insert((1, plug(t, &site.path, Term::cast(u2.clone(), b2.clone()))));
                    }
                }
            }
        }
    }
    if table == Table::X {
        // the extended table has no bounds
        return out.into_iter().map(|(_, t)| (0, t)).collect();
    }
    out
}

/// Environments with one entry changed by one step of `table` (0-bound
/// steps only for the bounded tables).
pub fn env_steps(table: Table, env: &Env) -> BTreeSet<Env> {
    let mut out = BTreeSet::new();
    for (pos, e) in env.entries().iter().enumerate() {
        let Some(t) = e.term() else { continue };
        let prefix = Env::from(env.entries()[..pos].to_vec());
        for (bound, t2) in steps(table, &prefix, t) {
            if bound == 0 {
                let mut entries = env.entries().to_vec();
                entries[pos] = match e {
                    Entry::Decl(_) => Entry::Decl(t2),
                    _ => Entry::Defn(t2),
                };
                out.insert(Env::from(entries));
            }
        }
    }
    out
}

/// Replays a tagged step one rule application at a time.
pub fn validate(table: Table, env: &Env, t: &Term, step: &RtStep) -> bool {
    fn go(table: Table, env: &Env, t: &Term, rule: &Rule, bound: u64, result: &Term) -> bool {
        match rule {
            Rule::Head(h) => heads(table, env, t).iter().any(|(b, r, hh)| b == &bound && r == result && hh == h),
            Rule::Inside(pos, inner) => {
                if !allows(table, *pos, bound) {
                    return false;
                }
                match (t, result, pos) {
                    (Term::Appl(v, f), Term::Appl(v2, f2), Position::ApplArg) => f == f2 && go(table, env, v, inner, bound, v2),
                    (Term::Appl(v, f), Term::Appl(v2, f2), Position::ApplFun) => v == v2 && go(table, env, f, inner, bound, f2),
                    (Term::Cast(u, b), Term::Cast(u2, b2), Position::CastType) => b == b2 && go(table, env, u, inner, bound, u2),
                    (Term::Cast(u, b), Term::Cast(u2, b2), Position::CastBody) => u == u2 && go(table, env, b, inner, bound, b2),
                    (Term::Abst(w, b), Term::Abst(w2, b2), Position::PairLeft)
                    | (Term::Abbr(w, b), Term::Abbr(w2, b2), Position::PairLeft) => b == b2 && go(table, env, w, inner, bound, w2),
                    (Term::Abst(w, b), Term::Abst(w2, b2), Position::PairBody) => {
                        w == w2 && go(table, &env.with(Entry::Decl((**w).clone())), b, inner, bound, b2)
                    }
                    (Term::Abbr(w, b), Term::Abbr(w2, b2), Position::PairBody) => {
                        w == w2 && go(table, &env.with(Entry::Defn((**w).clone())), b, inner, bound, b2)
                    }
                    _ => false,
                }
            }
            Rule::CastBoth(ru, rb) => match (t, result) {
                (Term::Cast(u, b), Term::Cast(u2, b2)) => {
                    bound == 1 && go(table, env, u, ru, 1, u2) && go(table, env, b, rb, 1, b2)
                }
                _ => false,
            },
        }
    }
    go(table, env, t, &step.rule, step.bound.0, &step.result)
}

/// Every term of at most `max` constructors (odd sizes) over the leaves
/// given.
pub fn all_terms(leaves: &[Term], max: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max + 1];
    if max >= 1 {
        by_size[1] = leaves.to_vec();
    }
    for size in (3..=max).step_by(2) {
        let mut acc = Vec::new();
        for left in (1..size - 1).step_by(2) {
            let right = size - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    acc.push(Term::appl(a.clone(), b.clone()));
                    acc.push(Term::cast(a.clone(), b.clone()));
                    acc.push(Term::abst(a.clone(), b.clone()));
                    acc.push(Term::abbr(a.clone(), b.clone()));
                }
            }
        }
        by_size[size] = acc;
    }
    by_size.into_iter().flatten().collect()
}
