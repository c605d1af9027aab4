//! Direct subclosures (one s-step).

use crate::term::{lower, Closure, Entry, Env, Shape, Term};

/// Every closure reachable from `env |- t` in one s-step.
///
/// Listing order: the referred entry of a variable, then the left component,
/// then the right component, and the environment-drop step last.
pub fn direct_subclosures(env: &Env, t: &Term) -> Vec<Closure> {
    let mut out = Vec::new();
    match t.shape() {
        Shape::Sort(_) => {}
        Shape::Ref(0) => {
            if let Some(l) = env.lookup(0) {
                if let Some(v) = l.entry.term() {
                    out.push(Closure::new(env.prefix(l.prefix_len), v.clone()));
                }
            }
        }
        Shape::Ref(_) => {}
        Shape::Pair(kind, v, b) => {
            out.push(Closure::new(env.clone(), v.clone()));
            out.push(Closure::new(env.with(Entry::pair(kind, v.clone())), b.clone()));
        }
        Shape::Flat(_, v, b) => {
            out.push(Closure::new(env.clone(), v.clone()));
            out.push(Closure::new(env.clone(), b.clone()));
        }
    }
    if !env.is_empty() && !t.has_free(0) {
        out.push(Closure::new(env.prefix(env.len() - 1), lower(t, 0, 1)));
    }
    out
}
