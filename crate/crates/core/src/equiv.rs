//! Structural predicates and equivalences on terms and environments.

use crate::term::{Closure, Entry, Env, Shape, Term};
use crate::vars::{inherited_free_vars, VarSet};

/// Sorts, references and flat items: the terms that do not form a redex
/// with a preceding application.
pub fn is_neutral(t: &Term) -> bool {
    matches!(t.shape(), Shape::Sort(_) | Shape::Ref(_) | Shape::Flat(..))
}

/// Equality up to the identity of sort constants.
pub fn sort_irrelevant(t1: &Term, t2: &Term) -> bool {
    match (t1.shape(), t2.shape()) {
        (Shape::Sort(_), Shape::Sort(_)) => true,
        (Shape::Ref(i), Shape::Ref(j)) => i == j,
        (Shape::Pair(k1, v1, b1), Shape::Pair(k2, v2, b2)) => {
            k1 == k2 && sort_irrelevant(v1, v2) && sort_irrelevant(b1, b2)
        }
        (Shape::Flat(k1, v1, b1), Shape::Flat(k2, v2, b2)) => {
            k1 == k2 && sort_irrelevant(v1, v2) && sort_irrelevant(b1, b2)
        }
        _ => false,
    }
}

/// Same top construction: both sorts, the same reference, both binders of
/// one kind, or both flat items of one kind.
pub fn same_top_constructor(t1: &Term, t2: &Term) -> bool {
    match (t1.shape(), t2.shape()) {
        (Shape::Sort(_), Shape::Sort(_)) => true,
        (Shape::Ref(i), Shape::Ref(j)) => i == j,
        (Shape::Pair(k1, ..), Shape::Pair(k2, ..)) => k1 == k2,
        (Shape::Flat(k1, ..), Shape::Flat(k2, ..)) => k1 == k2,
        _ => false,
    }
}

/// The equivalence that weak head normal forms are taken up to.
pub fn whnf_equivalent(t1: &Term, t2: &Term) -> bool {
    match (t1, t2) {
        (Term::Sort(_), Term::Sort(_)) => true,
        (Term::Ref(i), Term::Ref(j)) => i == j,
        (Term::Abst(..), Term::Abst(..)) => true,
        (Term::Abbr(_, b1), Term::Abbr(_, b2)) => whnf_equivalent(b1, b2),
        (Term::Appl(v1, b1), Term::Appl(v2, b2)) => v1 == v2 && whnf_equivalent(b1, b2),
        (Term::Cast(u1, b1), Term::Cast(u2, b2)) => whnf_equivalent(u1, u2) && whnf_equivalent(b1, b2),
        _ => false,
    }
}

/// How entry terms at selected positions are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermEq {
    Syntactic,
    SortIrrelevant,
}

impl TermEq {
    fn holds(self, t1: &Term, t2: &Term) -> bool {
        match self {
            TermEq::Syntactic => t1 == t2,
            TermEq::SortIrrelevant => sort_irrelevant(t1, t2),
        }
    }
}

/// Compares two environments on the entries selected by `f`. Every position
/// must carry the same kind of entry; only selected positions compare terms.
/// Environments of different length are never related.
pub fn env_eq_on(f: &VarSet, l1: &Env, l2: &Env, eq: TermEq) -> bool {
    if l1.len() != l2.len() {
        return false;
    }
    let n = l1.len();
    (0..n).all(|index| {
        let pos = n - 1 - index;
        let (e1, e2) = (&l1.entries()[pos], &l2.entries()[pos]);
        if !e1.same_kind(e2) {
            return false;
        }
        if !f.contains(index) {
            return true;
        }
        match (e1, e2) {
            (Entry::Void, Entry::Void) => true,
            (e1, e2) => eq.holds(e1.term().unwrap(), e2.term().unwrap()),
        }
    })
}

/// Syntactic equality on the entries recursively referred by `t` in `l1`.
pub fn referred_entries_equal(t: &Term, l1: &Env, l2: &Env) -> bool {
    env_eq_on(&inherited_free_vars(l1, t), l1, l2, TermEq::Syntactic)
}

/// Sort irrelevance on the entries recursively referred by `t` in `l1`.
pub fn referred_entries_sort_irrelevant(t: &Term, l1: &Env, l2: &Env) -> bool {
    env_eq_on(&inherited_free_vars(l1, t), l1, l2, TermEq::SortIrrelevant)
}

/// Sort irrelevance for closures.
pub fn closure_sort_irrelevant(c1: &Closure, c2: &Closure) -> bool {
    referred_entries_sort_irrelevant(&c1.subject, &c1.env, &c2.env) && sort_irrelevant(&c1.subject, &c2.subject)
}
