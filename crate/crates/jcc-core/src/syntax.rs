//! Terms, inductive blocks, contexts, substitution and the size measure.
//!
//! Terms are nameless: `Var(i)` is a de Bruijn index counting binders outward,
//! and every binder keeps a name hint used only for printing. Inside an
//! inductive block the block's own names are written `Rec(i)`, where `i`
//! indexes the concatenation of the inductive and constructor declarations.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Prop,
    Type(u32),
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Prop => f.write_str("Prop"),
            Sort::Type(i) => write!(f, "Type{}", i),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Term {
    Var(usize),
    Sort(Sort),
    Pi(Name, Arc<Term>, Arc<Term>),
    Lam(Name, Arc<Term>, Arc<Term>),
    /// `let x := def [: ty] in body`
    Let(Name, Arc<Term>, Option<Arc<Term>>, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    /// `case<scrutinee, motive, branches>`
    Case(Arc<Term>, Arc<Term>, Arc<[Term]>),
    /// `D·x` where `x` indexes `dom(Δ_I, Δ_C)`.
    Ind(Arc<InductiveBlock>, usize),
    /// A block-local name, only meaningful inside the declarations of a block.
    Rec(usize),
    /// `fix_i {f/k : A := t, ...}`; bodies are under one binder per definition,
    /// the last definition being the innermost.
    Fix(usize, Arc<[FixDef]>),
}

#[derive(Clone, Debug)]
pub struct FixDef {
    pub name: Name,
    /// Number of binders before the recursive argument (0-based position).
    pub rec_arg: usize,
    pub ty: Term,
    pub body: Term,
}

/// `Ind_n{Δ_I := Δ_C}`.
#[derive(Debug)]
pub struct InductiveBlock {
    params: usize,
    inds: Vec<(Name, Term)>,
    cons: Vec<(Name, Term)>,
    closed: bool,
}

impl InductiveBlock {
    pub fn new(params: usize, inds: Vec<(Name, Term)>, cons: Vec<(Name, Term)>) -> Self {
        let closed = inds.iter().chain(cons.iter()).all(|(_, t)| is_closed(t));
        InductiveBlock { params, inds, cons, closed }
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn inds(&self) -> &[(Name, Term)] {
        &self.inds
    }

    pub fn cons(&self) -> &[(Name, Term)] {
        &self.cons
    }

    /// True when no declaration mentions a variable of the surrounding context.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn name_count(&self) -> usize {
        self.inds.len() + self.cons.len()
    }

    pub fn name_of(&self, idx: usize) -> &Name {
        if idx < self.inds.len() {
            &self.inds[idx].0
        } else {
            &self.cons[idx - self.inds.len()].0
        }
    }

    pub fn decl_of(&self, idx: usize) -> &Term {
        if idx < self.inds.len() {
            &self.inds[idx].1
        } else {
            &self.cons[idx - self.inds.len()].1
        }
    }

    pub fn index_of(&self, n: &str) -> Option<usize> {
        (0..self.name_count()).find(|&i| &**self.name_of(i) == n)
    }

    pub fn is_ind(&self, idx: usize) -> bool {
        idx < self.inds.len()
    }

    /// Global index of the `k`-th constructor (0-based) in `dom(Δ_I, Δ_C)`.
    pub fn con_index(&self, k: usize) -> usize {
        self.inds.len() + k
    }

    /// The inductive a constructor builds, read from the head of its conclusion.
    pub fn con_target(&self, k: usize) -> Option<usize> {
        let mut t = &self.cons[k].1;
        while let Term::Pi(_, _, b) = t {
            t = b;
        }
        match t.head() {
            Term::Rec(i) if *i < self.inds.len() => Some(*i),
            _ => None,
        }
    }

    /// Constructors (0-based, declaration order) whose conclusion is inductive `i`.
    pub fn cons_of(&self, i: usize) -> Vec<usize> {
        (0..self.cons.len()).filter(|&k| self.con_target(k) == Some(i)).collect()
    }
}

#[derive(Clone, Debug)]
pub enum Entry {
    Assum { name: Name, ty: Term },
    Def { name: Name, body: Term, ty: Term },
    Ind(Arc<InductiveBlock>),
}

/// An ordered context. Inductive entries do not bind a de Bruijn index.
#[derive(Clone, Debug, Default)]
pub struct Context {
    entries: Vec<Entry>,
    vars: Vec<usize>,
}

pub struct VarInfo<'a> {
    pub name: &'a Name,
    pub ty: Term,
    pub body: Option<Term>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of variable-binding entries, i.e. the de Bruijn depth.
    pub fn depth(&self) -> usize {
        self.vars.len()
    }

    pub fn push(&mut self, e: Entry) {
        if !matches!(e, Entry::Ind(_)) {
            self.vars.push(self.entries.len());
        }
        self.entries.push(e);
    }

    pub fn push_assum(&mut self, n: Name, ty: Term) {
        self.push(Entry::Assum { name: n, ty });
    }

    pub fn pop(&mut self) -> Option<Entry> {
        let e = self.entries.pop()?;
        if !matches!(e, Entry::Ind(_)) {
            self.vars.pop();
        }
        Some(e)
    }

    pub fn truncate(&mut self, len: usize) {
        while self.entries.len() > len {
            self.pop();
        }
    }

    /// Entry bound by `Var(i)`, with its type and body moved into the current scope.
    pub fn var(&self, i: usize) -> Option<VarInfo<'_>> {
        let d = self.vars.len();
        if i >= d {
            return None;
        }
        match &self.entries[self.vars[d - 1 - i]] {
            Entry::Assum { name, ty } => Some(VarInfo { name, ty: ty.lift(i + 1), body: None }),
            Entry::Def { name, body, ty } => Some(VarInfo { name, ty: ty.lift(i + 1), body: Some(body.lift(i + 1)) }),
            Entry::Ind(_) => None,
        }
    }

    pub fn var_name(&self, i: usize) -> Option<&Name> {
        let d = self.vars.len();
        if i >= d {
            return None;
        }
        match &self.entries[self.vars[d - 1 - i]] {
            Entry::Assum { name, .. } | Entry::Def { name, .. } => Some(name),
            Entry::Ind(_) => None,
        }
    }

    /// Inductive blocks of the context, each moved into the current scope.
    pub fn blocks(&self) -> Vec<Arc<InductiveBlock>> {
        let mut out = Vec::new();
        let mut after = 0;
        for e in self.entries.iter().rev() {
            match e {
                Entry::Ind(b) => out.push(lift_block(b, after, 0)),
                _ => after += 1,
            }
        }
        out.reverse();
        out
    }

    /// Names in `dom(Γ)` plus the names declared by inductive blocks.
    pub fn declared_names(&self) -> Vec<Name> {
        let mut out = Vec::new();
        for e in &self.entries {
            match e {
                Entry::Assum { name, .. } | Entry::Def { name, .. } => out.push(name.clone()),
                Entry::Ind(b) => {
                    for i in 0..b.name_count() {
                        out.push(b.name_of(i).clone());
                    }
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Construction helpers

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn prop() -> Term {
        Term::Sort(Sort::Prop)
    }

    pub fn ty(i: u32) -> Term {
        Term::Sort(Sort::Type(i))
    }

    pub fn pi(n: &str, a: Term, b: Term) -> Term {
        Term::Pi(name(n), Arc::new(a), Arc::new(b))
    }

    /// Non-dependent arrow; `b` is written in the outer scope.
    pub fn arrow(a: Term, b: Term) -> Term {
        Term::Pi(name("_"), Arc::new(a), Arc::new(b.lift(1)))
    }

    pub fn lam(n: &str, a: Term, b: Term) -> Term {
        Term::Lam(name(n), Arc::new(a), Arc::new(b))
    }

    pub fn let_in(n: &str, def: Term, ty: Option<Term>, body: Term) -> Term {
        Term::Let(name(n), Arc::new(def), ty.map(Arc::new), Arc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn case(e: Term, q: Term, hs: Vec<Term>) -> Term {
        Term::Case(Arc::new(e), Arc::new(q), hs.into())
    }

    pub fn fix(i: usize, defs: Vec<FixDef>) -> Term {
        Term::Fix(i, defs.into())
    }

    /// Head of an application spine.
    pub fn head(&self) -> &Term {
        let mut t = self;
        while let Term::App(f, _) = t {
            t = f;
        }
        t
    }

    /// Splits an application spine into its head and arguments.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(&**a);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn as_sort(&self) -> Option<Sort> {
        match self {
            Term::Sort(s) => Some(*s),
            _ => None,
        }
    }

    /// Shifts free variables up by `d`.
    pub fn lift(&self, d: usize) -> Term {
        if d == 0 {
            self.clone()
        } else {
            shift(self, d as isize, 0)
        }
    }
}

// ---------------------------------------------------------------------------
// Traversal

/// Rebuilds `t`, calling `var(depth, i)` on every variable and `rec(depth, i)`
/// on every block-local name. Declarations of nested blocks are traversed with
/// `rec` disabled, since their `Rec` names belong to them.
fn map_vars(
    t: &Term,
    depth: usize,
    var: &mut dyn FnMut(usize, usize) -> Term,
    rec: Option<&mut dyn FnMut(usize, usize) -> Term>,
) -> Term {
    struct M<'a, 'b, 'c> {
        var: &'a mut (dyn FnMut(usize, usize) -> Term + 'b),
        rec: Option<&'a mut (dyn FnMut(usize, usize) -> Term + 'c)>,
    }
    impl M<'_, '_, '_> {
        fn go(&mut self, t: &Term, k: usize) -> Term {
            match t {
                Term::Var(i) => (self.var)(k, *i),
                Term::Sort(_) => t.clone(),
                Term::Rec(i) => match &mut self.rec {
                    Some(r) => r(k, *i),
                    None => t.clone(),
                },
                Term::Pi(n, a, b) => Term::Pi(n.clone(), Arc::new(self.go(a, k)), Arc::new(self.go(b, k + 1))),
                Term::Lam(n, a, b) => Term::Lam(n.clone(), Arc::new(self.go(a, k)), Arc::new(self.go(b, k + 1))),
                Term::Let(n, d, ty, b) => Term::Let(
                    n.clone(),
                    Arc::new(self.go(d, k)),
                    ty.as_ref().map(|ty| Arc::new(self.go(ty, k))),
                    Arc::new(self.go(b, k + 1)),
                ),
                Term::App(f, a) => Term::App(Arc::new(self.go(f, k)), Arc::new(self.go(a, k))),
                Term::Case(e, q, hs) => Term::Case(
                    Arc::new(self.go(e, k)),
                    Arc::new(self.go(q, k)),
                    hs.iter().map(|h| self.go(h, k)).collect(),
                ),
                Term::Ind(b, _) if b.closed => t.clone(),
                Term::Ind(b, i) => {
                    let mut inner: M<'_, '_, '_> = M { var: &mut *self.var, rec: None };
                    let inds = b.inds.iter().map(|(n, t)| (n.clone(), inner.go(t, k))).collect();
                    let cons = b.cons.iter().map(|(n, t)| (n.clone(), inner.go(t, k))).collect();
                    Term::Ind(Arc::new(InductiveBlock::new(b.params, inds, cons)), *i)
                }
                Term::Fix(i, defs) => {
                    let m = defs.len();
                    let defs: Vec<FixDef> = defs
                        .iter()
                        .map(|d| FixDef {
                            name: d.name.clone(),
                            rec_arg: d.rec_arg,
                            ty: self.go(&d.ty, k),
                            body: self.go(&d.body, k + m),
                        })
                        .collect();
                    Term::Fix(*i, defs.into())
                }
            }
        }
    }
    M { var, rec }.go(t, depth)
}

/// True when `t` has no free variable with index `>= cutoff` (relative to `t`).
fn free_above(t: &Term, cutoff: usize) -> bool {
    fn go(t: &Term, k: usize) -> bool {
        match t {
            Term::Var(i) => *i >= k,
            Term::Sort(_) | Term::Rec(_) => false,
            Term::Pi(_, a, b) | Term::Lam(_, a, b) => go(a, k) || go(b, k + 1),
            Term::Let(_, d, ty, b) => go(d, k) || ty.as_ref().is_some_and(|ty| go(ty, k)) || go(b, k + 1),
            Term::App(f, a) => go(f, k) || go(a, k),
            Term::Case(e, q, hs) => go(e, k) || go(q, k) || hs.iter().any(|h| go(h, k)),
            Term::Ind(b, _) => !b.closed && b.inds.iter().chain(b.cons.iter()).any(|(_, t)| go(t, k)),
            Term::Fix(_, defs) => {
                let m = defs.len();
                defs.iter().any(|d| go(&d.ty, k) || go(&d.body, k + m))
            }
        }
    }
    go(t, cutoff)
}

pub fn is_closed(t: &Term) -> bool {
    !free_above(t, 0)
}

/// Adds `d` to every free variable with index `>= cutoff`.
pub fn shift(t: &Term, d: isize, cutoff: usize) -> Term {
    if d == 0 || !free_above(t, cutoff) {
        return t.clone();
    }
    map_vars(
        t,
        cutoff,
        &mut |k, i| {
            if i >= k {
                Term::Var((i as isize + d) as usize)
            } else {
                Term::Var(i)
            }
        },
        None,
    )
}

pub(crate) fn lift_block(b: &Arc<InductiveBlock>, d: usize, cutoff: usize) -> Arc<InductiveBlock> {
    if b.closed || d == 0 {
        return b.clone();
    }
    match shift(&Term::Ind(b.clone(), 0), d as isize, cutoff) {
        Term::Ind(nb, _) => nb,
        _ => unreachable!(),
    }
}

/// Free variables of `t`, as de Bruijn indices relative to `t`'s scope.
/// Fix names and block-local names are bound, so never reported.
pub fn free_vars(t: &Term) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    map_vars(
        t,
        0,
        &mut |k, i| {
            if i >= k {
                out.insert(i - k);
            }
            Term::Var(i)
        },
        None,
    );
    out
}

/// `t[x\u]`: replaces the free variable `x` by `u`, leaving every other index
/// unchanged. `u` lives in the same scope as `t`.
pub fn substitute(t: &Term, x: usize, u: &Term) -> Term {
    if !free_vars(t).contains(&x) {
        return t.clone();
    }
    map_vars(t, 0, &mut |k, i| if i == x + k { u.lift(k) } else { Term::Var(i) }, None)
}

/// Simultaneous substitution `t[x1\u1, ..., xn\un]`.
pub fn simultaneous_subst(t: &Term, delta: &[(usize, Term)]) -> Term {
    map_vars(
        t,
        0,
        &mut |k, i| {
            if i >= k {
                if let Some((_, u)) = delta.iter().find(|(x, _)| *x == i - k) {
                    return u.lift(k);
                }
            }
            Term::Var(i)
        },
        None,
    )
}

/// Consecutive substitution `t{x1\u1, ..., xn\un}`.
pub fn sequential_subst(t: &Term, delta: &[(usize, Term)]) -> Term {
    delta.iter().fold(t.clone(), |acc, (x, u)| substitute(&acc, *x, u))
}

/// Instantiates the outermost bound variable of a binder body with `u`,
/// removing that binder from the scope: `body[0\u]` followed by an unshift.
pub fn instantiate(body: &Term, u: &Term) -> Term {
    subst_many(body, core::slice::from_ref(u))
}

/// Instantiates the `n = args.len()` innermost bound variables of `body`:
/// `Var(n-1-j)` becomes `args[j]`, and outer variables drop by `n`.
pub fn subst_many(body: &Term, args: &[Term]) -> Term {
    let n = args.len();
    if n == 0 {
        return body.clone();
    }
    if !free_above(body, 0) {
        return body.clone();
    }
    map_vars(
        body,
        0,
        &mut |k, i| {
            if i < k {
                Term::Var(i)
            } else if i - k < n {
                args[n - 1 - (i - k)].lift(k)
            } else {
                Term::Var(i - n)
            }
        },
        None,
    )
}

/// `A[.\D]`: every block-local name of `D` is replaced by `D·z`.
pub fn replace_ind_names(a: &Term, d: &Arc<InductiveBlock>) -> Term {
    map_vars(a, 0, &mut |_, i| Term::Var(i), Some(&mut |k, i| Term::Ind(lift_block(d, k, 0), i)))
}

/// Whether `t` mentions a block-local name (outside nested blocks).
pub fn mentions_rec(t: &Term) -> bool {
    let mut found = false;
    map_vars(
        t,
        0,
        &mut |_, i| Term::Var(i),
        Some(&mut |_, i| {
            found = true;
            Term::Rec(i)
        }),
    );
    found
}

/// Whether `t` mentions `D·z` for some name of the block `d` (compared up to α).
pub fn mentions_block(t: &Term, d: &InductiveBlock) -> bool {
    fn go(t: &Term, d: &InductiveBlock) -> bool {
        match t {
            Term::Var(_) | Term::Sort(_) | Term::Rec(_) => false,
            Term::Pi(_, a, b) | Term::Lam(_, a, b) => go(a, d) || go(b, d),
            Term::Let(_, x, ty, b) => go(x, d) || ty.as_ref().is_some_and(|ty| go(ty, d)) || go(b, d),
            Term::App(f, a) => go(f, d) || go(a, d),
            Term::Case(e, q, hs) => go(e, d) || go(q, d) || hs.iter().any(|h| go(h, d)),
            Term::Ind(b, _) => same_block_names(b, d),
            Term::Fix(_, defs) => defs.iter().any(|f| go(&f.ty, d) || go(&f.body, d)),
        }
    }
    go(t, d)
}

fn same_block_names(a: &InductiveBlock, b: &InductiveBlock) -> bool {
    a.name_count() == b.name_count() && (0..a.name_count()).all(|i| a.name_of(i) == b.name_of(i))
}

// ---------------------------------------------------------------------------
// α-equivalence

/// Equality up to renaming of bound variables. Binder name hints are ignored;
/// the declared names of inductive blocks are compared.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Var(i), Term::Var(j)) => i == j,
        (Term::Sort(s), Term::Sort(r)) => s == r,
        (Term::Rec(i), Term::Rec(j)) => i == j,
        (Term::Pi(_, a1, b1), Term::Pi(_, a2, b2)) | (Term::Lam(_, a1, b1), Term::Lam(_, a2, b2)) => {
            alpha_eq(a1, a2) && alpha_eq(b1, b2)
        }
        (Term::Let(_, d1, t1, b1), Term::Let(_, d2, t2, b2)) => {
            alpha_eq(d1, d2)
                && match (t1, t2) {
                    (None, None) => true,
                    (Some(x), Some(y)) => alpha_eq(x, y),
                    _ => false,
                }
                && alpha_eq(b1, b2)
        }
        (Term::App(f1, a1), Term::App(f2, a2)) => alpha_eq(f1, f2) && alpha_eq(a1, a2),
        (Term::Case(e1, q1, h1), Term::Case(e2, q2, h2)) => {
            alpha_eq(e1, e2)
                && alpha_eq(q1, q2)
                && h1.len() == h2.len()
                && h1.iter().zip(h2.iter()).all(|(x, y)| alpha_eq(x, y))
        }
        (Term::Ind(b1, i), Term::Ind(b2, j)) => i == j && block_eq(b1, b2),
        (Term::Fix(i, d1), Term::Fix(j, d2)) => {
            i == j
                && d1.len() == d2.len()
                && d1
                    .iter()
                    .zip(d2.iter())
                    .all(|(x, y)| x.rec_arg == y.rec_arg && alpha_eq(&x.ty, &y.ty) && alpha_eq(&x.body, &y.body))
        }
        _ => false,
    }
}

pub fn block_eq(a: &Arc<InductiveBlock>, b: &Arc<InductiveBlock>) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    let decls = |x: &[(Name, Term)], y: &[(Name, Term)]| {
        x.len() == y.len() && x.iter().zip(y.iter()).all(|((n1, t1), (n2, t2))| n1 == n2 && alpha_eq(t1, t2))
    };
    a.params == b.params && decls(&a.inds, &b.inds) && decls(&a.cons, &b.cons)
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        alpha_eq(self, other)
    }
}

impl Eq for Term {}

// ---------------------------------------------------------------------------
// Size

/// A non-negative multiple of 1/2, stored as a count of halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Size(u64);

impl Size {
    pub const HALF: Size = Size(1);

    pub fn whole(n: u64) -> Size {
        Size(2 * n)
    }

    pub fn halves(self) -> u64 {
        self.0
    }
}

impl Add for Size {
    type Output = Size;
    fn add(self, o: Size) -> Size {
        Size(self.0 + o.0)
    }
}

impl PartialOrd<u64> for Size {
    fn partial_cmp(&self, o: &u64) -> Option<Ordering> {
        self.0.partial_cmp(&(2 * o))
    }
}

impl PartialEq<u64> for Size {
    fn eq(&self, o: &u64) -> bool {
        self.0 == 2 * o
    }
}

impl fmt::Display for Size {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `|t|`: one plus the sizes of the immediate subterms.
pub fn term_size(t: &Term) -> Size {
    fn go(t: &Term) -> u64 {
        1 + match t {
            Term::Var(_) | Term::Sort(_) | Term::Rec(_) => 0,
            Term::Pi(_, a, b) | Term::Lam(_, a, b) | Term::App(a, b) => go(a) + go(b),
            Term::Let(_, d, ty, b) => go(d) + ty.as_ref().map_or(0, |ty| go(ty)) + go(b),
            Term::Case(e, q, hs) => go(e) + go(q) + hs.iter().map(go).sum::<u64>(),
            Term::Ind(b, _) => b.inds.iter().chain(b.cons.iter()).map(|(_, t)| go(t)).sum(),
            Term::Fix(_, defs) => defs.iter().map(|d| go(&d.ty) + go(&d.body)).sum(),
        }
    }
    Size::whole(go(t))
}

pub fn context_size(ctx: &Context) -> Size {
    ctx.entries.iter().fold(Size::HALF, |acc, e| {
        acc + match e {
            Entry::Assum { ty, .. } => term_size(ty),
            Entry::Def { body, ty, .. } => term_size(body) + term_size(ty),
            Entry::Ind(_) => Size::whole(1),
        }
    })
}

/// `|Γ ⊢ t| = |Γ| + |t| - 1/2`.
pub fn judgment_size(ctx: &Context, t: &Term) -> Size {
    Size(context_size(ctx).0 + term_size(t).0 - 1)
}
