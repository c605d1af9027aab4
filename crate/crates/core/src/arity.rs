//! Arity (simple type over one base) inference.

use std::fmt;
use std::rc::Rc;

use crate::term::{Entry, Env, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arity {
    Atom,
    Fun(Rc<Arity>, Rc<Arity>),
}

impl Arity {
    pub fn fun(source: Arity, target: Arity) -> Arity {
        Arity::Fun(Rc::new(source), Rc::new(target))
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Atom => f.write_str("*"),
            Arity::Fun(b, a) => write!(f, "({b}->{a})"),
        }
    }
}

/// The arity of `t` in `env`, or `None` if no derivation exists.
///
/// One pass over the term: the arities of the environment entries are
/// computed once, outermost first, and kept on a stack indexed like the
/// environment itself.
pub fn infer_arity(env: &Env, t: &Term) -> Option<Arity> {
    let mut stack: Vec<Option<Arity>> = Vec::with_capacity(env.len());
    for entry in env.entries() {
        let a = match entry {
            Entry::Decl(w) | Entry::Defn(w) => go(&mut stack, w),
            Entry::Void => None,
        };
        stack.push(a);
    }
    go(&mut stack, t)
}

// Leaves the stack as it found it.
fn go(stack: &mut Vec<Option<Arity>>, t: &Term) -> Option<Arity> {
    match t {
        Term::Sort(_) => Some(Arity::Atom),
        Term::Ref(i) => {
            if *i >= stack.len() {
                return None;
            }
            stack[stack.len() - 1 - i].clone()
        }
        Term::Abst(w, b) | Term::Abbr(w, b) => {
            let a = go(stack, w)?;
            stack.push(Some(a.clone()));
            let body = go(stack, b);
            stack.pop();
            match t {
                Term::Abst(..) => Some(Arity::fun(a, body?)),
                _ => body,
            }
        }
        Term::Appl(v, f) => {
            let av = go(stack, v)?;
            match go(stack, f)? {
                Arity::Fun(b, a) if *b == av => Some((*a).clone()),
                _ => None,
            }
        }
        Term::Cast(u, b) => {
            let au = go(stack, u)?;
            let ab = go(stack, b)?;
            (au == ab).then_some(au)
        }
    }
}
