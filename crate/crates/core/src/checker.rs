//! Parametric validity, type checking and rt-conversion.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::arity::infer_arity;
use crate::domain::ApplicabilityDomain;
use crate::error::{default_fuel, KernelError, Result};
use crate::normal::{rt_normal_form, whnf_rt};
use crate::reduction::{canonical_type, Position};
use crate::term::{BoundCount, Closure, Entry, Env, SortPolicy, Term};

/// The premise of the validity rules that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Premise {
    NotClosed,
    CastMismatch,
    NoLambdaForm,
    BoundNotInDomain,
    ArgumentTypeMismatch,
    SubtermInvalid,
}

impl Premise {
    pub fn tag(self) -> &'static str {
        match self {
            Premise::NotClosed => "not-closed",
            Premise::CastMismatch => "cast-mismatch",
            Premise::NoLambdaForm => "no-lambda-form",
            Premise::BoundNotInDomain => "bound-not-in-domain",
            Premise::ArgumentTypeMismatch => "argument-type-mismatch",
            Premise::SubtermInvalid => "subterm-invalid",
        }
    }
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One step from a term to a component whose validity it depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathStep {
    Child(Position),
    /// the environment entry a reference resolves to
    Entry(usize),
}

impl fmt::Display for PathStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathStep::Child(p) => f.write_str(p.label()),
            PathStep::Entry(i) => write!(f, "#{i}"),
        }
    }
}

/// Why a term is invalid: the premise failing at the root, and the path to
/// the innermost component whose own premise `cause` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub premise: Premise,
    pub path: Vec<PathStep>,
    pub cause: Premise,
}

impl Failure {
    fn here(premise: Premise) -> Failure {
        Failure { premise, path: Vec::new(), cause: premise }
    }

    fn below(step: PathStep, inner: Failure) -> Failure {
        let mut path = vec![step];
        path.extend(inner.path);
        Failure { premise: Premise::SubtermInvalid, path, cause: inner.cause }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub failure: Option<Failure>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    pub fn premise(&self) -> Option<Premise> {
        self.failure.as_ref().map(|f| f.premise)
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => f.write_str("valid"),
            Some(fail) => write!(f, "invalid ({})", fail.premise),
        }
    }
}

/// Whether `t1` with bound `n1` and `t2` with bound `n2` have a common
/// rt-reduct, decided by comparing canonical r-normal forms. Both terms must
/// have an arity.
pub fn rt_convertible(
    env: &Env,
    t1: &Term,
    n1: BoundCount,
    t2: &Term,
    n2: BoundCount,
    sorts: &SortPolicy,
    fuel: u64,
) -> Result<bool> {
    if infer_arity(env, t1).is_none() || infer_arity(env, t2).is_none() {
        return Err(KernelError::NoArity);
    }
    same_normal_form(env, t1, n1, t2, n2, sorts, fuel)
}

fn same_normal_form(
    env: &Env,
    t1: &Term,
    n1: BoundCount,
    t2: &Term,
    n2: BoundCount,
    sorts: &SortPolicy,
    fuel: u64,
) -> Result<bool> {
    let x1 = rt_normal_form(env, t1, n1, sorts, fuel)?;
    let x2 = rt_normal_form(env, t2, n2, sorts, fuel)?;
    Ok(x1 == x2)
}

/// Decision procedures under a fixed applicability domain and sort policy.
///
/// Without an explicit fuel, each top-level call gets the default budget for
/// the closure it was given.
#[derive(Clone, Debug)]
pub struct Checker {
    pub domain: ApplicabilityDomain,
    pub sorts: SortPolicy,
    pub fuel: Option<u64>,
}

impl Checker {
    pub fn new(domain: ApplicabilityDomain) -> Checker {
        Checker { domain, sorts: SortPolicy::Successor, fuel: None }
    }

    pub fn with_sorts(mut self, sorts: SortPolicy) -> Checker {
        self.sorts = sorts;
        self
    }

    pub fn with_fuel(mut self, fuel: u64) -> Checker {
        self.fuel = Some(fuel);
        self
    }

    fn fuel_for(&self, env: &Env, size: usize) -> u64 {
        self.fuel.unwrap_or_else(|| default_fuel(env.size() + size))
    }

    pub fn check_valid(&self, env: &Env, t: &Term) -> Result<ValidityReport> {
        let run = Run { checker: self, fuel: self.fuel_for(env, t.size()), entries: RefCell::default() };
        Ok(ValidityReport { failure: run.valid(env, t)?.err() })
    }

    /// `u` is a type of `t`: the cast `<u>.t` is valid.
    pub fn typecheck(&self, env: &Env, t: &Term, u: &Term) -> Result<bool> {
        Ok(self.check_valid(env, &Term::cast(u.clone(), t.clone()))?.is_valid())
    }

    /// The canonical inferred type of a valid term.
    pub fn infer_type(&self, env: &Env, t: &Term) -> Result<Term> {
        if !self.check_valid(env, t)?.is_valid() {
            return Err(KernelError::Invalid);
        }
        canonical_type(env, t, BoundCount::ONE, &self.sorts, self.fuel_for(env, t.size()))
    }

    /// Both terms are valid and `t` with bound `n` converts with `u`.
    pub fn iterated_typecheck(&self, n: BoundCount, env: &Env, t: &Term, u: &Term) -> Result<bool> {
        if !self.check_valid(env, t)?.is_valid() || !self.check_valid(env, u)?.is_valid() {
            return Ok(false);
        }
        let fuel = self.fuel_for(env, t.size() + u.size());
        rt_convertible(env, t, n, u, BoundCount::ZERO, &self.sorts, fuel)
    }

    pub fn check_closure(&self, c: &Closure) -> Result<ValidityReport> {
        self.check_valid(&c.env, &c.subject)
    }
}

/// State of one top-level validity check.
struct Run<'a> {
    checker: &'a Checker,
    fuel: u64,
    /// validity of environment entries already visited, keyed by the prefix
    /// they live in
    entries: RefCell<HashMap<(Env, Term), std::result::Result<(), Failure>>>,
}

type Verdict = std::result::Result<(), Failure>;

impl Run<'_> {
    fn valid(&self, env: &Env, t: &Term) -> Result<Verdict> {
        match t {
            Term::Sort(_) => Ok(Ok(())),
            Term::Ref(i) => {
                let Some(l) = env.lookup(*i) else { return Ok(Err(Failure::here(Premise::NotClosed))) };
                let Some(v) = l.entry.term() else { return Ok(Err(Failure::here(Premise::NotClosed))) };
                let prefix = env.prefix(l.prefix_len);
                let key = (prefix, v.clone());
                if let Some(known) = self.entries.borrow().get(&key) {
                    return Ok(known.clone().map_err(|f| Failure::below(PathStep::Entry(*i), f)));
                }
                let verdict = self.valid(&key.0, v)?;
                self.entries.borrow_mut().insert(key, verdict.clone());
                Ok(verdict.map_err(|f| Failure::below(PathStep::Entry(*i), f)))
            }
            Term::Abst(v, b) | Term::Abbr(v, b) => {
                if let Err(f) = self.valid(env, v)? {
                    return Ok(Err(Failure::below(PathStep::Child(Position::PairLeft), f)));
                }
                let entry = match t {
                    Term::Abst(..) => Entry::Decl((**v).clone()),
                    _ => Entry::Defn((**v).clone()),
                };
                if let Err(f) = self.valid(&env.with(entry), b)? {
                    return Ok(Err(Failure::below(PathStep::Child(Position::PairBody), f)));
                }
                Ok(Ok(()))
            }
            Term::Cast(u, b) => {
                if let Err(f) = self.valid(env, u)? {
                    return Ok(Err(Failure::below(PathStep::Child(Position::CastType), f)));
                }
                if let Err(f) = self.valid(env, b)? {
                    return Ok(Err(Failure::below(PathStep::Child(Position::CastBody), f)));
                }
                if self.converts(env, u, BoundCount::ZERO, b, BoundCount::ONE)? {
                    Ok(Ok(()))
                } else {
                    Ok(Err(Failure::here(Premise::CastMismatch)))
                }
            }
            Term::Appl(v, f) => {
                if let Err(e) = self.valid(env, v)? {
                    return Ok(Err(Failure::below(PathStep::Child(Position::ApplArg), e)));
                }
                if let Err(e) = self.valid(env, f)? {
                    return Ok(Err(Failure::below(PathStep::Child(Position::ApplFun), e)));
                }
                let head = match whnf_rt(env, f, self.fuel) {
                    Ok(h) => h,
                    Err(KernelError::FuelExhausted) => return Err(KernelError::FuelExhausted),
                    Err(_) => return Ok(Err(Failure::here(Premise::NoLambdaForm))),
                };
                let Term::Abst(w, _) = head.form else { return Ok(Err(Failure::here(Premise::NoLambdaForm))) };
                if !self.checker.domain.exists_geq(head.t_steps.0) {
                    return Ok(Err(Failure::here(Premise::BoundNotInDomain)));
                }
                if self.converts(env, v, BoundCount::ONE, &w, BoundCount::ZERO)? {
                    Ok(Ok(()))
                } else {
                    Ok(Err(Failure::here(Premise::ArgumentTypeMismatch)))
                }
            }
        }
    }

    /// Conversion between valid terms. A missing t-step cannot happen for
    /// valid terms; it is reported as a failed comparison.
    fn converts(&self, env: &Env, t1: &Term, n1: BoundCount, t2: &Term, n2: BoundCount) -> Result<bool> {
        match same_normal_form(env, t1, n1, t2, n2, &self.checker.sorts, self.fuel) {
            Err(KernelError::NoTypeStep) => Ok(false),
            other => other,
        }
    }
}

/// Validity under `domain` with the successor sort policy.
pub fn check_valid(domain: &ApplicabilityDomain, env: &Env, t: &Term, fuel: u64) -> Result<ValidityReport> {
    Checker::new(domain.clone()).with_fuel(fuel).check_valid(env, t)
}
