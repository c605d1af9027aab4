//! Full r-normal forms and weak head rt-normal forms.

use crate::error::{Budget, KernelError, Result};
use crate::reduction::{canonical_type, step_rt};
use crate::term::{instantiate, lift, lower, BoundCount, Entry, Env, SortPolicy, Term};

/// True iff no 0-bound step applies.
pub fn is_r_normal(env: &Env, t: &Term) -> bool {
    step_rt(env, t, &SortPolicy::Successor).iter().all(|s| s.bound != BoundCount::ZERO)
}

fn normalize(env: &Env, t: &Term, budget: &mut Budget) -> Result<Term> {
    match t {
        Term::Sort(_) => Ok(t.clone()),
        Term::Ref(i) => match env.lookup(*i) {
            Some(l) => match l.entry {
                Entry::Defn(v) => {
                    budget.tick()?;
                    let v = normalize(&env.prefix(l.prefix_len), v, budget)?;
                    Ok(lift(&v, 0, l.shift))
                }
                _ => Ok(t.clone()),
            },
            None => Ok(t.clone()),
        },
        Term::Cast(_, b) => {
            budget.tick()?;
            normalize(env, b, budget)
        }
        Term::Abst(w, b) => {
            let w = normalize(env, w, budget)?;
            let b = normalize(&env.with(Entry::Decl(w.clone())), b, budget)?;
            Ok(Term::abst(w, b))
        }
        Term::Abbr(v, b) => {
            // every occurrence of the bound variable gets unfolded, so the
            // binder can be dropped afterwards
            let v = normalize(env, v, budget)?;
            let b = normalize(&env.with(Entry::Defn(v)), b, budget)?;
            budget.tick()?;
            Ok(lower(&b, 0, 1))
        }
        Term::Appl(v, f) => match normalize(env, f, budget)? {
            Term::Abst(w, b) => {
                budget.tick()?;
                normalize(env, &Term::abbr(Term::cast(*w, (**v).clone()), *b), budget)
            }
            f => Ok(Term::appl(normalize(env, v, budget)?, f)),
        },
    }
}

/// An r-normal form of `t` reached by 0-bound steps. Fuel counts
/// contractions; it runs out on terms without an arity.
pub fn r_normalize(env: &Env, t: &Term, fuel: u64) -> Result<Term> {
    normalize(env, t, &mut Budget::new(fuel))
}

/// The r-normal form of the `n`-th canonical type of `t`.
pub fn rt_normal_form(env: &Env, t: &Term, n: BoundCount, sorts: &SortPolicy, fuel: u64) -> Result<Term> {
    let ty = canonical_type(env, t, n, sorts, fuel)?;
    r_normalize(env, &ty, fuel)
}

/// A weak head rt-normal form with the number of t-steps used to reach it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhnfResult {
    pub t_steps: BoundCount,
    pub form: Term,
}

fn whnf(env: &Env, t: &Term, budget: &mut Budget) -> Result<WhnfResult> {
    let mut n = 0u64;
    let mut cur = t.clone();
    loop {
        budget.tick()?;
        cur = match cur {
            Term::Sort(_) | Term::Abst(..) => return Ok(WhnfResult { t_steps: BoundCount(n), form: cur }),
            Term::Ref(i) => {
                let l = env.lookup(i).ok_or(KernelError::OpenHead)?;
                match l.entry {
                    Entry::Defn(v) => lift(v, 0, l.shift),
                    Entry::Decl(w) => {
                        n += 1;
                        lift(w, 0, l.shift)
                    }
                    Entry::Void => return Err(KernelError::OpenHead),
                }
            }
            Term::Cast(_, b) => *b,
            Term::Abbr(v, b) => {
                let inner = whnf(&env.with(Entry::Defn((*v).clone())), &b, budget)?;
                let form = if inner.form.has_free(0) { instantiate(&inner.form, &v) } else { lower(&inner.form, 0, 1) };
                return Ok(WhnfResult { t_steps: BoundCount(n) + inner.t_steps, form });
            }
            Term::Appl(v, f) => match *f {
                Term::Abst(w, b) => Term::abbr(Term::cast(*w, *v), *b),
                Term::Abbr(w, b) => Term::abbr(*w, Term::appl(lift(&v, 0, 1), *b)),
                f => {
                    let head = whnf(env, &f, budget)?;
                    match head.form {
                        Term::Abst(..) => {
                            n += head.t_steps.0;
                            Term::Appl(v, Box::new(head.form))
                        }
                        _ => return Err(KernelError::StuckApplication),
                    }
                }
            },
        };
    }
}

/// Reduces `t` to a sort or an abstraction, taking t-steps only where no
/// r-step applies at the head, so the bound is the least one.
pub fn whnf_rt(env: &Env, t: &Term, fuel: u64) -> Result<WhnfResult> {
    whnf(env, t, &mut Budget::new(fuel))
}
