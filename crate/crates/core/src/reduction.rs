//! One-step reduction relations and their bounded closures.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Budget, KernelError, Result};
use crate::subclosure::direct_subclosures;
use crate::term::{lift, lower, BoundCount, Closure, Entry, Env, SortPolicy, Term};

/// A rule applied at the root of the redex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeadRule {
    Beta,
    Delta,
    Zeta,
    Theta,
    Epsilon,
    /// sort to its successor
    Sort,
    /// declared variable to its type
    Lambda,
    /// cast to its type
    Extract,
}

impl HeadRule {
    pub fn symbol(self) -> &'static str {
        match self {
            HeadRule::Beta => "β",
            HeadRule::Delta => "δ",
            HeadRule::Zeta => "ζ",
            HeadRule::Theta => "θ",
            HeadRule::Epsilon => "ε",
            HeadRule::Sort => "s",
            HeadRule::Lambda => "l",
            HeadRule::Extract => "e",
        }
    }
}

/// A child position of a compound term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    ApplArg,
    ApplFun,
    PairLeft,
    PairBody,
    CastType,
    CastBody,
}

impl Position {
    pub(crate) fn label(self) -> &'static str {
        match self {
            Position::ApplArg => "@l",
            Position::ApplFun => "@r",
            Position::PairLeft => "Pl",
            Position::PairBody => "Pr",
            Position::CastType => "<l",
            Position::CastBody => "<r",
        }
    }
}

/// How a step was derived: a head rule under a path of context rules, or
/// the simultaneous step on both sides of a cast.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Head(HeadRule),
    Inside(Position, Box<Rule>),
    CastBoth(Box<Rule>, Box<Rule>),
}

impl Rule {
    fn inside(pos: Position, rule: Rule) -> Rule {
        Rule::Inside(pos, Box::new(rule))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Head(h) => f.write_str(h.symbol()),
            Rule::Inside(p, r) => write!(f, "{}/{}", p.label(), r),
            Rule::CastBoth(u, t) => write!(f, "<b({u},{t})"),
        }
    }
}

/// One step of bound rt-reduction (or bound t-reduction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RtStep {
    pub bound: BoundCount,
    pub result: Term,
    pub rule: Rule,
}

impl RtStep {
    fn new(bound: u64, result: Term, rule: Rule) -> RtStep {
        RtStep { bound: BoundCount(bound), result, rule }
    }
}

/// Which of the two bounded relations is enumerated.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Relation {
    Rt,
    T,
}

fn head_steps(rel: Relation, env: &Env, t: &Term, sorts: &SortPolicy, out: &mut Vec<RtStep>) {
    let head = |h| Rule::Head(h);
    if rel == Relation::Rt {
        match t {
            Term::Appl(v, f) => match f.as_ref() {
                Term::Abst(w, b) => out.push(RtStep::new(
                    0,
                    Term::abbr(Term::cast((**w).clone(), (**v).clone()), (**b).clone()),
                    head(HeadRule::Beta),
                )),
                Term::Abbr(w, b) => out.push(RtStep::new(
                    0,
                    Term::abbr((**w).clone(), Term::appl(lift(v, 0, 1), (**b).clone())),
                    head(HeadRule::Theta),
                )),
                _ => {}
            },
            Term::Abbr(_, b) if !b.has_free(0) => {
                out.push(RtStep::new(0, lower(b, 0, 1), head(HeadRule::Zeta)))
            }
            Term::Cast(_, b) => out.push(RtStep::new(0, (**b).clone(), head(HeadRule::Epsilon))),
            _ => {}
        }
    }
    match t {
        Term::Ref(i) => {
            if let Some(l) = env.lookup(*i) {
                match l.entry {
                    Entry::Defn(v) => out.push(RtStep::new(0, lift(v, 0, l.shift), head(HeadRule::Delta))),
                    Entry::Decl(w) => out.push(RtStep::new(1, lift(w, 0, l.shift), head(HeadRule::Lambda))),
                    Entry::Void => {}
                }
            }
        }
        Term::Sort(s) => out.push(RtStep::new(1, Term::Sort(sorts.next(*s)), head(HeadRule::Sort))),
        Term::Cast(u, _) => out.push(RtStep::new(1, (**u).clone(), head(HeadRule::Extract))),
        _ => {}
    }
}

fn all_steps(rel: Relation, env: &Env, t: &Term, sorts: &SortPolicy) -> Vec<RtStep> {
    let mut out = Vec::new();
    head_steps(rel, env, t, sorts, &mut out);
    let zero = |steps: Vec<RtStep>| steps.into_iter().filter(|s| s.bound == BoundCount::ZERO);
    match t {
        Term::Sort(_) | Term::Ref(_) => {}
        Term::Appl(v, f) => {
            for s in zero(all_steps(rel, env, v, sorts)) {
                out.push(RtStep { result: Term::appl(s.result, (**f).clone()), rule: Rule::inside(Position::ApplArg, s.rule), ..s });
            }
            for s in all_steps(rel, env, f, sorts) {
                out.push(RtStep { result: Term::appl((**v).clone(), s.result), rule: Rule::inside(Position::ApplFun, s.rule), ..s });
            }
        }
        Term::Abst(_, _) | Term::Abbr(_, _) => {
            let (kind, v, b) = match t.shape() {
                crate::term::Shape::Pair(k, v, b) => (k, v, b),
                _ => unreachable!(),
            };
            for s in zero(all_steps(rel, env, v, sorts)) {
                out.push(RtStep { result: Term::pair(kind, s.result, b.clone()), rule: Rule::inside(Position::PairLeft, s.rule), ..s });
            }
            let inner = env.with(Entry::pair(kind, v.clone()));
            for s in all_steps(rel, &inner, b, sorts) {
                out.push(RtStep { result: Term::pair(kind, v.clone(), s.result), rule: Rule::inside(Position::PairBody, s.rule), ..s });
            }
        }
        Term::Cast(u, b) => {
            let us = all_steps(rel, env, u, sorts);
            let bs = all_steps(rel, env, b, sorts);
            for s in us.iter().filter(|s| s.bound == BoundCount::ZERO) {
                out.push(RtStep::new(0, Term::cast(s.result.clone(), (**b).clone()), Rule::inside(Position::CastType, s.rule.clone())));
            }
            for s in bs.iter().filter(|s| s.bound == BoundCount::ZERO) {
                out.push(RtStep::new(0, Term::cast((**u).clone(), s.result.clone()), Rule::inside(Position::CastBody, s.rule.clone())));
            }
            for su in us.iter().filter(|s| s.bound == BoundCount::ONE) {
                for sb in bs.iter().filter(|s| s.bound == BoundCount::ONE) {
                    out.push(RtStep::new(
                        1,
                        Term::cast(su.result.clone(), sb.result.clone()),
                        Rule::CastBoth(Box::new(su.rule.clone()), Box::new(sb.rule.clone())),
                    ));
                }
            }
        }
    }
    dedup(out)
}

fn dedup(steps: Vec<RtStep>) -> Vec<RtStep> {
    let mut seen = HashSet::new();
    steps.into_iter().filter(|s| seen.insert((s.bound, s.result.clone()))).collect()
}

/// Every single step of bound rt-reduction from `t` in `env`, without
/// duplicate `(bound, result)` pairs. Head rules come first (r-steps before
/// t-steps), then steps in the left subterm, then in the right subterm.
pub fn step_rt(env: &Env, t: &Term, sorts: &SortPolicy) -> Vec<RtStep> {
    all_steps(Relation::Rt, env, t, sorts)
}

/// Every single step of bound t-reduction: the t-steps and δ, with their
/// context rules.
pub fn step_t(env: &Env, t: &Term, sorts: &SortPolicy) -> Vec<RtStep> {
    all_steps(Relation::T, env, t, sorts)
}

/// Every single step of extended rt-reduction. The sort rule is represented
/// by the single witness `next(s)`.
pub fn step_x(env: &Env, t: &Term, sorts: &SortPolicy) -> Vec<Term> {
    let mut out = Vec::new();
    match t {
        Term::Sort(s) => out.push(Term::Sort(sorts.next(*s))),
        Term::Ref(i) => {
            if let Some(l) = env.lookup(*i) {
                if let Some(v) = l.entry.term() {
                    out.push(lift(v, 0, l.shift));
                }
            }
        }
        Term::Appl(v, f) => {
            match f.as_ref() {
                Term::Abst(w, b) => out.push(Term::abbr(Term::cast((**w).clone(), (**v).clone()), (**b).clone())),
                Term::Abbr(w, b) => out.push(Term::abbr((**w).clone(), Term::appl(lift(v, 0, 1), (**b).clone()))),
                _ => {}
            }
            out.extend(step_x(env, v, sorts).into_iter().map(|v2| Term::appl(v2, (**f).clone())));
            out.extend(step_x(env, f, sorts).into_iter().map(|f2| Term::appl((**v).clone(), f2)));
        }
        Term::Abst(w, b) => {
            out.extend(step_x(env, w, sorts).into_iter().map(|w2| Term::abst(w2, (**b).clone())));
            let inner = env.with(Entry::Decl((**w).clone()));
            out.extend(step_x(&inner, b, sorts).into_iter().map(|b2| Term::abst((**w).clone(), b2)));
        }
        Term::Abbr(v, b) => {
            if !b.has_free(0) {
                out.push(lower(b, 0, 1));
            }
            out.extend(step_x(env, v, sorts).into_iter().map(|v2| Term::abbr(v2, (**b).clone())));
            let inner = env.with(Entry::Defn((**v).clone()));
            out.extend(step_x(&inner, b, sorts).into_iter().map(|b2| Term::abbr((**v).clone(), b2)));
        }
        Term::Cast(u, b) => {
            out.push((**b).clone());
            out.push((**u).clone());
            out.extend(step_x(env, u, sorts).into_iter().map(|u2| Term::cast(u2, (**b).clone())));
            out.extend(step_x(env, b, sorts).into_iter().map(|b2| Term::cast((**u).clone(), b2)));
        }
    }
    let mut seen = HashSet::new();
    out.retain(|t| seen.insert(t.clone()));
    out
}

fn step_env_with(env: &Env, step: impl Fn(&Env, &Term) -> Vec<Term>) -> Vec<Env> {
    let mut out = Vec::new();
    for (pos, entry) in env.entries().iter().enumerate() {
        if let Some(t) = entry.term() {
            for t2 in step(&env.prefix(pos), t) {
                let e2 = env.replace_term(pos, t2);
                if !out.contains(&e2) {
                    out.push(e2);
                }
            }
        }
    }
    out
}

/// Environments obtained by one 0-bound step inside exactly one entry,
/// listed from the outermost entry.
pub fn step_env_r(env: &Env, sorts: &SortPolicy) -> Vec<Env> {
    step_env_with(env, |prefix, t| {
        step_rt(prefix, t, sorts).into_iter().filter(|s| s.bound == BoundCount::ZERO).map(|s| s.result).collect()
    })
}

/// Environments obtained by one extended step inside exactly one entry.
pub fn step_env_x(env: &Env, sorts: &SortPolicy) -> Vec<Env> {
    step_env_with(env, |prefix, t| step_x(prefix, t, sorts))
}

/// Every `(n, t')` reachable from `t` by at most `max_depth` steps, the
/// bound being the sum of the bounds of the steps.
pub fn reachable_rt(env: &Env, t: &Term, max_depth: usize, sorts: &SortPolicy) -> BTreeSet<(BoundCount, Term)> {
    let mut seen = BTreeSet::new();
    seen.insert((BoundCount::ZERO, t.clone()));
    let mut frontier = vec![(BoundCount::ZERO, t.clone())];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for (n, u) in &frontier {
            for s in step_rt(env, u, sorts) {
                let item = (*n + s.bound, s.result);
                if seen.insert(item.clone()) {
                    next.push(item);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// One level of the preferred t-strategy.
fn type_once(env: &Env, t: &Term, sorts: &SortPolicy, budget: &mut Budget) -> Result<Term> {
    budget.tick()?;
    match t {
        Term::Sort(s) => Ok(Term::Sort(sorts.next(*s))),
        Term::Ref(i) => {
            let l = env.lookup(*i).ok_or(KernelError::NoTypeStep)?;
            match l.entry {
                Entry::Decl(w) => Ok(lift(w, 0, l.shift)),
                Entry::Defn(v) => {
                    let prefix = env.prefix(l.prefix_len);
                    Ok(lift(&type_once(&prefix, v, sorts, budget)?, 0, l.shift))
                }
                Entry::Void => Err(KernelError::NoTypeStep),
            }
        }
        Term::Abst(w, b) => {
            let inner = env.with(Entry::Decl((**w).clone()));
            Ok(Term::abst((**w).clone(), type_once(&inner, b, sorts, budget)?))
        }
        Term::Abbr(v, b) => {
            let inner = env.with(Entry::Defn((**v).clone()));
            Ok(Term::abbr((**v).clone(), type_once(&inner, b, sorts, budget)?))
        }
        Term::Cast(u, _) => Ok((**u).clone()),
        Term::Appl(v, f) => Ok(Term::appl((**v).clone(), type_once(env, f, sorts, budget)?)),
    }
}

/// A deterministic representative of the `n`-times iterated inferred type:
/// the t-step at the outermost position where one applies, with δ only to
/// reach the type of a defined variable.
pub fn canonical_type(env: &Env, t: &Term, n: BoundCount, sorts: &SortPolicy, fuel: u64) -> Result<Term> {
    let mut budget = Budget::new(fuel);
    let mut cur = t.clone();
    for _ in 0..n.0 {
        cur = type_once(env, &cur, sorts, &mut budget)?;
    }
    Ok(cur)
}

/// The rule a qrst-step was obtained by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QrstKind {
    /// extended step on the subject
    Ex,
    /// extended step on the environment
    Lx,
    /// referred-entry equivalence (reflexive witness only)
    Lq,
    /// subclosure
    Cs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrstStep {
    pub kind: QrstKind,
    pub target: Closure,
}

/// One-step qrst successors of a closure.
pub fn qrst_steps(c: &Closure, sorts: &SortPolicy) -> Vec<QrstStep> {
    let mut out = Vec::new();
    for t in step_x(&c.env, &c.subject, sorts) {
        out.push(QrstStep { kind: QrstKind::Ex, target: Closure::new(c.env.clone(), t) });
    }
    for e in step_env_x(&c.env, sorts) {
        out.push(QrstStep { kind: QrstKind::Lx, target: Closure::new(e, c.subject.clone()) });
    }
    out.push(QrstStep { kind: QrstKind::Lq, target: c.clone() });
    for target in direct_subclosures(&c.env, &c.subject) {
        out.push(QrstStep { kind: QrstKind::Cs, target });
    }
    out
}
