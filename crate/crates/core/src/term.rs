//! Terms, environment entries, environments and closures.
//!
//! Variables are de Bruijn indices: `Ref(0)` is the innermost binder, either
//! a term binder or the last entry of the environment. Indices that reach
//! past the environment are free and are allowed everywhere.

use std::collections::BTreeMap;
use std::fmt;

/// Sort identifier.
pub type Sort = u64;

/// The six term constructors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Sort(Sort),
    Ref(usize),
    /// `@(arg).fun`
    Appl(Box<Term>, Box<Term>),
    /// `[x:ty].body`
    Abst(Box<Term>, Box<Term>),
    /// `[x=defn].body`
    Abbr(Box<Term>, Box<Term>),
    /// `<ty>.body`
    Cast(Box<Term>, Box<Term>),
}

/// Which binder a `Pair` item carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    Abst,
    Abbr,
}

/// Which annotation a `Flat` item carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlatKind {
    Appl,
    Cast,
}

/// A term viewed through the shared notations for binders and flat items.
pub enum Shape<'a> {
    Sort(Sort),
    Ref(usize),
    Pair(PairKind, &'a Term, &'a Term),
    Flat(FlatKind, &'a Term, &'a Term),
}

impl Term {
    pub fn sort(s: Sort) -> Term {
        Term::Sort(s)
    }

    pub fn var(i: usize) -> Term {
        Term::Ref(i)
    }

    pub fn appl(arg: Term, fun: Term) -> Term {
        Term::Appl(Box::new(arg), Box::new(fun))
    }

    pub fn abst(ty: Term, body: Term) -> Term {
        Term::Abst(Box::new(ty), Box::new(body))
    }

    pub fn abbr(defn: Term, body: Term) -> Term {
        Term::Abbr(Box::new(defn), Box::new(body))
    }

    pub fn cast(ty: Term, body: Term) -> Term {
        Term::Cast(Box::new(ty), Box::new(body))
    }

    pub fn pair(kind: PairKind, left: Term, body: Term) -> Term {
        match kind {
            PairKind::Abst => Term::abst(left, body),
            PairKind::Abbr => Term::abbr(left, body),
        }
    }

    pub fn flat(kind: FlatKind, left: Term, right: Term) -> Term {
        match kind {
            FlatKind::Appl => Term::appl(left, right),
            FlatKind::Cast => Term::cast(left, right),
        }
    }

    pub fn shape(&self) -> Shape<'_> {
        match self {
            Term::Sort(s) => Shape::Sort(*s),
            Term::Ref(i) => Shape::Ref(*i),
            Term::Abst(w, t) => Shape::Pair(PairKind::Abst, w, t),
            Term::Abbr(v, t) => Shape::Pair(PairKind::Abbr, v, t),
            Term::Appl(v, t) => Shape::Flat(FlatKind::Appl, v, t),
            Term::Cast(u, t) => Shape::Flat(FlatKind::Cast, u, t),
        }
    }

    /// Number of constructors.
    pub fn size(&self) -> usize {
        match self.shape() {
            Shape::Sort(_) | Shape::Ref(_) => 1,
            Shape::Pair(_, l, r) | Shape::Flat(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// True iff `Ref(index)` occurs free (index counted from outside the term).
    pub fn has_free(&self, index: usize) -> bool {
        match self.shape() {
            Shape::Sort(_) => false,
            Shape::Ref(i) => i == index,
            Shape::Pair(_, v, t) => v.has_free(index) || t.has_free(index + 1),
            Shape::Flat(_, v, t) => v.has_free(index) || t.has_free(index),
        }
    }

    /// Free references of the term, as indices relative to its outside.
    pub fn free_refs(&self) -> Vec<usize> {
        fn go(t: &Term, depth: usize, out: &mut Vec<usize>) {
            match t.shape() {
                Shape::Sort(_) => {}
                Shape::Ref(i) => {
                    if i >= depth && !out.contains(&(i - depth)) {
                        out.push(i - depth);
                    }
                }
                Shape::Pair(_, v, b) => {
                    go(v, depth, out);
                    go(b, depth + 1, out);
                }
                Shape::Flat(_, v, b) => {
                    go(v, depth, out);
                    go(b, depth, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out.sort_unstable();
        out
    }
}

/// Shifts every reference with index `>= depth` up by `amount`.
pub fn lift(t: &Term, depth: usize, amount: usize) -> Term {
    if amount == 0 {
        return t.clone();
    }
    match t {
        Term::Sort(s) => Term::Sort(*s),
        Term::Ref(i) if *i >= depth => Term::Ref(i + amount),
        Term::Ref(i) => Term::Ref(*i),
        Term::Appl(v, b) => Term::appl(lift(v, depth, amount), lift(b, depth, amount)),
        Term::Cast(u, b) => Term::cast(lift(u, depth, amount), lift(b, depth, amount)),
        Term::Abst(w, b) => Term::abst(lift(w, depth, amount), lift(b, depth + 1, amount)),
        Term::Abbr(v, b) => Term::abbr(lift(v, depth, amount), lift(b, depth + 1, amount)),
    }
}

/// Inverse of [`lift`]: shifts references `>= depth + amount` down by `amount`.
///
/// References in `depth..depth + amount` must not occur; they are left
/// untouched if they do, so callers check [`Term::has_free`] first.
pub fn lower(t: &Term, depth: usize, amount: usize) -> Term {
    if amount == 0 {
        return t.clone();
    }
    match t {
        Term::Sort(s) => Term::Sort(*s),
        Term::Ref(i) if *i >= depth + amount => Term::Ref(i - amount),
        Term::Ref(i) => Term::Ref(*i),
        Term::Appl(v, b) => Term::appl(lower(v, depth, amount), lower(b, depth, amount)),
        Term::Cast(u, b) => Term::cast(lower(u, depth, amount), lower(b, depth, amount)),
        Term::Abst(w, b) => Term::abst(lower(w, depth, amount), lower(b, depth + 1, amount)),
        Term::Abbr(v, b) => Term::abbr(lower(v, depth, amount), lower(b, depth + 1, amount)),
    }
}

/// Replaces `Ref(0)` in `body` with `value` (which lives outside the binder)
/// and removes the binder. This is every δ-expansion of the innermost
/// definition followed by ζ.
pub fn instantiate(body: &Term, value: &Term) -> Term {
    fn go(t: &Term, depth: usize, value: &Term) -> Term {
        match t {
            Term::Sort(s) => Term::Sort(*s),
            Term::Ref(i) if *i == depth => lift(value, 0, depth),
            Term::Ref(i) if *i > depth => Term::Ref(i - 1),
            Term::Ref(i) => Term::Ref(*i),
            Term::Appl(v, b) => Term::appl(go(v, depth, value), go(b, depth, value)),
            Term::Cast(u, b) => Term::cast(go(u, depth, value), go(b, depth, value)),
            Term::Abst(w, b) => Term::abst(go(w, depth, value), go(b, depth + 1, value)),
            Term::Abbr(v, b) => Term::abbr(go(v, depth, value), go(b, depth + 1, value)),
        }
    }
    go(body, 0, value)
}

/// An environment entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    /// `x:W`
    Decl(Term),
    /// `x=V`
    Defn(Term),
    /// `x!`, an exclusion: occupies a position but binds nothing.
    Void,
}

impl Entry {
    pub fn term(&self) -> Option<&Term> {
        match self {
            Entry::Decl(t) | Entry::Defn(t) => Some(t),
            Entry::Void => None,
        }
    }

    pub fn pair(kind: PairKind, t: Term) -> Entry {
        match kind {
            PairKind::Abst => Entry::Decl(t),
            PairKind::Abbr => Entry::Defn(t),
        }
    }

    pub fn same_kind(&self, other: &Entry) -> bool {
        matches!(
            (self, other),
            (Entry::Decl(_), Entry::Decl(_)) | (Entry::Defn(_), Entry::Defn(_)) | (Entry::Void, Entry::Void)
        )
    }

    fn with_term(&self, t: Term) -> Entry {
        match self {
            Entry::Decl(_) => Entry::Decl(t),
            Entry::Defn(_) => Entry::Defn(t),
            Entry::Void => Entry::Void,
        }
    }
}

/// Ordered list of entries; the innermost binder is last.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Env {
    entries: Vec<Entry>,
}

/// Result of resolving a reference against an environment.
pub struct Lookup<'a> {
    pub entry: &'a Entry,
    /// Length of the prefix the entry lives in.
    pub prefix_len: usize,
    /// Amount to lift the entry's term by to move it to the full environment.
    pub shift: usize,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn from_entries(entries: Vec<Entry>) -> Env {
        Env { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Entry> {
        self.entries
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn pop(&mut self) -> Option<Entry> {
        self.entries.pop()
    }

    /// A copy extended with one more entry.
    pub fn with(&self, e: Entry) -> Env {
        let mut out = self.clone();
        out.push(e);
        out
    }

    /// The first `len` entries.
    pub fn prefix(&self, len: usize) -> Env {
        Env { entries: self.entries[..len].to_vec() }
    }

    pub fn lookup(&self, index: usize) -> Option<Lookup<'_>> {
        if index >= self.entries.len() {
            return None;
        }
        let pos = self.entries.len() - 1 - index;
        Some(Lookup { entry: &self.entries[pos], prefix_len: pos, shift: index + 1 })
    }

    /// Replaces the term of the entry at absolute position `pos`.
    pub fn replace_term(&self, pos: usize, t: Term) -> Env {
        let mut out = self.clone();
        out.entries[pos] = self.entries[pos].with_term(t);
        out
    }

    /// Constructor count of all entry terms; an exclusion counts as one.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|e| e.term().map_or(1, Term::size)).sum()
    }
}

impl From<Vec<Entry>> for Env {
    fn from(entries: Vec<Entry>) -> Env {
        Env { entries }
    }
}

/// A subject term paired with the environment binding its variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Closure {
    pub env: Env,
    pub subject: Term,
}

impl Closure {
    pub fn new(env: Env, subject: Term) -> Closure {
        Closure { env, subject }
    }

    pub fn size(&self) -> usize {
        self.env.size() + self.subject.size()
    }
}

/// The `next` function on sorts: successor, or a finite table that falls
/// back to successor outside its domain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum SortPolicy {
    #[default]
    Successor,
    Table(BTreeMap<Sort, Sort>),
}

impl SortPolicy {
    pub fn next(&self, s: Sort) -> Sort {
        match self {
            SortPolicy::Successor => s.saturating_add(1),
            SortPolicy::Table(map) => map.get(&s).copied().unwrap_or_else(|| s.saturating_add(1)),
        }
    }
}

/// A number of t-steps. Subtraction is truncated at zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundCount(pub u64);

impl BoundCount {
    pub const ZERO: BoundCount = BoundCount(0);
    pub const ONE: BoundCount = BoundCount(1);

    pub fn monus(self, other: BoundCount) -> BoundCount {
        BoundCount(self.0.saturating_sub(other.0))
    }
}

impl std::ops::Add for BoundCount {
    type Output = BoundCount;
    fn add(self, rhs: BoundCount) -> BoundCount {
        BoundCount(self.0 + rhs.0)
    }
}

impl std::ops::Sub for BoundCount {
    type Output = BoundCount;
    fn sub(self, rhs: BoundCount) -> BoundCount {
        self.monus(rhs)
    }
}

impl fmt::Display for BoundCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for BoundCount {
    fn from(n: u64) -> BoundCount {
        BoundCount(n)
    }
}
