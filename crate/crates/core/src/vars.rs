//! Inherited free variables and closedness.

use std::collections::BTreeSet;

use crate::term::{Entry, Env, Shape, Term};

/// A finite set of references, as de Bruijn indices relative to one fixed
/// environment. Indices at or past the environment length are free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet(BTreeSet<usize>);

impl VarSet {
    pub fn new() -> VarSet {
        VarSet::default()
    }

    pub fn singleton(i: usize) -> VarSet {
        VarSet([i].into_iter().collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.0.remove(&i);
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        VarSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        VarSet(self.0.difference(&other.0).copied().collect())
    }

    /// Re-expresses the set relative to an environment `amount` entries longer.
    pub fn shift_up(&self, amount: usize) -> VarSet {
        VarSet(self.0.iter().map(|i| i + amount).collect())
    }

    /// Drops index 0 and re-expresses the rest relative to the environment
    /// one entry shorter.
    pub fn unbind(&self) -> VarSet {
        VarSet(self.0.iter().filter(|&&i| i > 0).map(|i| i - 1).collect())
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VarSet {
        VarSet(iter.into_iter().collect())
    }
}

/// The free variables of `t` together with those of every entry of `env`
/// recursively referred by `t`.
pub fn inherited_free_vars(env: &Env, t: &Term) -> VarSet {
    match t.shape() {
        Shape::Sort(_) => VarSet::new(),
        Shape::Ref(i) => match env.lookup(i) {
            None => VarSet::singleton(i),
            Some(l) => {
                let mut out = match l.entry.term() {
                    Some(v) => inherited_free_vars(&env.prefix(l.prefix_len), v).shift_up(l.shift),
                    None => VarSet::new(),
                };
                out.insert(i);
                out
            }
        },
        Shape::Pair(kind, v, b) => {
            let inner = inherited_free_vars(&env.with(Entry::pair(kind, v.clone())), b);
            inherited_free_vars(env, v).union(&inner.unbind())
        }
        Shape::Flat(_, v, b) => inherited_free_vars(env, v).union(&inherited_free_vars(env, b)),
    }
}

/// True iff every inherited free variable of `t` is bound by a declaration
/// or a definition of `env`. Exclusions do not bind.
pub fn is_closed_in(env: &Env, t: &Term) -> bool {
    inherited_free_vars(env, t)
        .iter()
        .all(|i| matches!(env.lookup(i), Some(l) if !matches!(l.entry, Entry::Void)))
}
