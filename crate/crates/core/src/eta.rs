//! η-expansion of occurrences of declared variables with functional types.

use crate::error::Result;
use crate::normal::whnf_rt;
use crate::term::{lift, Closure, Entry, Env, Term};
use crate::vars::{inherited_free_vars, VarSet};

/// One parallel η-step: each reference to a declaration whose type reduces
/// to `[y:W].U` becomes `[y:W].@(y).x`. Fuel bounds each head reduction of a
/// declared type.
pub fn eta_expand_term(env: &Env, t: &Term, fuel: u64) -> Result<Term> {
    Ok(match t {
        Term::Sort(_) => t.clone(),
        Term::Ref(i) => match env.lookup(*i) {
            Some(l) => match l.entry {
                Entry::Decl(w) => match whnf_rt(&env.prefix(l.prefix_len), w, fuel)?.form {
                    Term::Abst(dom, _) => {
                        Term::abst(lift(&dom, 0, l.shift), Term::appl(Term::Ref(0), Term::Ref(i + 1)))
                    }
                    _ => t.clone(),
                },
                _ => t.clone(),
            },
            None => t.clone(),
        },
        Term::Abst(v, b) => Term::abst(
            eta_expand_term(env, v, fuel)?,
            eta_expand_term(&env.with(Entry::Decl((**v).clone())), b, fuel)?,
        ),
        Term::Abbr(v, b) => Term::abbr(
            eta_expand_term(env, v, fuel)?,
            eta_expand_term(&env.with(Entry::Defn((**v).clone())), b, fuel)?,
        ),
        Term::Appl(v, b) => Term::appl(eta_expand_term(env, v, fuel)?, eta_expand_term(env, b, fuel)?),
        Term::Cast(v, b) => Term::cast(eta_expand_term(env, v, fuel)?, eta_expand_term(env, b, fuel)?),
    })
}

/// Expands the terms of the entries selected by `f` (indices relative to
/// the whole environment), each within its original prefix.
pub fn eta_expand_env(f: &VarSet, env: &Env, fuel: u64) -> Result<Env> {
    let n = env.len();
    let mut out = env.clone();
    for (pos, entry) in env.entries().iter().enumerate() {
        if let (true, Some(t)) = (f.contains(n - 1 - pos), entry.term()) {
            out = out.replace_term(pos, eta_expand_term(&env.prefix(pos), t, fuel)?);
        }
    }
    Ok(out)
}

/// Expands a closure: the entries its subject recursively refers to, and the
/// subject itself.
pub fn eta_expand_closure(c: &Closure, fuel: u64) -> Result<Closure> {
    let env = eta_expand_env(&inherited_free_vars(&c.env, &c.subject), &c.env, fuel)?;
    let subject = eta_expand_term(&c.env, &c.subject, fuel)?;
    Ok(Closure::new(env, subject))
}
