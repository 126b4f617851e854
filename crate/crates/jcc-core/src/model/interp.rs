//! `⟦Γ ⊢ t⟧_γ`: semantic values, valuations and the interpreter.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};
use core::fmt;

use super::hf::{aczel_app, aczel_lam, Hf};
use super::{ModelConfig, ModelError, Tri};
use crate::kernel::syntactic_telescope;
use crate::reduction::{Reducer, ReductionConfig};
use crate::syntax::{block_eq, Context, FixDef, InductiveBlock, Sort, Term};

pub(super) type R<T> = Result<T, ModelError>;

pub(super) fn undefined<T>(msg: impl Into<String>) -> R<T> {
    Err(ModelError::Undefined(msg.into()))
}

/// A valuation, innermost value first. Sharing tails keeps extension cheap.
#[derive(Clone, Default)]
pub struct Valuation(Option<Arc<VNode>>);

struct VNode {
    head: SemValue,
    tail: Valuation,
    len: usize,
}

impl Valuation {
    pub fn nil() -> Self {
        Valuation(None)
    }

    pub fn from_values(values: impl IntoIterator<Item = SemValue>) -> Self {
        values.into_iter().fold(Valuation::nil(), |g, v| g.push(v))
    }

    pub fn push(&self, v: SemValue) -> Self {
        Valuation(Some(Arc::new(VNode { head: v, tail: self.clone(), len: self.len() + 1 })))
    }

    pub fn extend(&self, values: impl IntoIterator<Item = SemValue>) -> Self {
        values.into_iter().fold(self.clone(), |g, v| g.push(v))
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.len)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    /// The value of `Var(i)`.
    pub fn get(&self, i: usize) -> Option<&SemValue> {
        let mut node = self.0.as_ref()?;
        for _ in 0..i {
            node = node.tail.0.as_ref()?;
        }
        Some(&node.head)
    }

    /// Values from the outermost entry to the innermost.
    pub fn to_vec(&self) -> Vec<SemValue> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = &self.0;
        while let Some(n) = cur {
            out.push(n.head.clone());
            cur = &n.tail.0;
        }
        out.reverse();
        out
    }
}

#[derive(Clone)]
pub struct Closure {
    pub env: Valuation,
    pub body: Term,
}

/// `app(⟦D·d⟧, p, u) = IF(Φ)(d, p, u)`.
pub struct IndFamily {
    pub block: Arc<InductiveBlock>,
    pub ind: usize,
    /// Valuation of the scope the block was referenced in.
    pub env: Valuation,
    pub params: Vec<SemValue>,
    pub indices: Vec<SemValue>,
}

pub enum FunValue {
    /// `λx:A.t` whose graph was not materialized.
    Lam { dom: SemValue, body: Closure },
    /// A constructor awaiting `arity` arguments (parameters included).
    Con { block: Arc<InductiveBlock>, con: usize, arity: usize, args: Vec<SemValue> },
    /// An inductive name awaiting its parameters and indices.
    Ind { block: Arc<InductiveBlock>, ind: usize, env: Valuation, arity: usize, args: Vec<SemValue> },
    /// A function of a fix block awaiting its recursive argument.
    Fix { fix: Arc<FixClosure>, index: usize, args: Vec<SemValue> },
}

/// `⟦fix_i{f/k : A := t}⟧_γ` for every `i`, with the per-constructor
/// residuals of each body.
pub struct FixClosure {
    pub defs: Arc<[FixDef]>,
    pub env: Valuation,
    pub(super) info: Vec<FixInfo>,
}

pub(super) struct FixInfo {
    pub block: Arc<InductiveBlock>,
    pub ind: usize,
    /// The recursive argument's type, under the `rec_arg` leading binders.
    pub rec_ty: Term,
    /// Constructor (0-based, block-wide) to its argument count and residual.
    pub residuals: BTreeMap<usize, (usize, Term)>,
}

#[derive(Clone)]
pub enum SemValue {
    Fin(Hf),
    /// `⟨k, z…⟩` with some component that is not a finite set.
    Con {
        tag: usize,
        args: Vec<SemValue>,
    },
    Universe(u32),
    FunSpace {
        dom: Arc<SemValue>,
        cod: Closure,
    },
    Family(Arc<IndFamily>),
    Fun(Arc<FunValue>),
}

impl SemValue {
    pub fn fin(&self) -> Option<&Hf> {
        match self {
            SemValue::Fin(h) => Some(h),
            _ => None,
        }
    }

    fn is_type_descriptor(&self) -> bool {
        matches!(self, SemValue::Fin(_) | SemValue::Family(_) | SemValue::Universe(_))
    }
}

impl fmt::Display for SemValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemValue::Fin(h) => write!(f, "{}", h),
            SemValue::Con { tag, args } => {
                write!(f, "⟨{}", tag)?;
                for a in args {
                    write!(f, ",{}", a)?;
                }
                f.write_str("⟩")
            }
            SemValue::Universe(i) => write!(f, "⟦Type{}⟧", i),
            SemValue::FunSpace { .. } => f.write_str("⟦Π…⟧"),
            SemValue::Family(fam) => {
                write!(f, "⟦{}", fam.block.name_of(fam.ind))?;
                for a in fam.params.iter().chain(fam.indices.iter()) {
                    write!(f, " {}", a)?;
                }
                f.write_str("⟧")
            }
            SemValue::Fun(_) => f.write_str("⟦λ…⟧"),
        }
    }
}

impl fmt::Debug for SemValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type MemberKey = (usize, usize, Vec<Hf>, Vec<Hf>);
type CallKey = (usize, usize, Vec<Hf>);
type Members = BTreeMap<MemberKey, (Arc<InductiveBlock>, Vec<Hf>, bool)>;
type Calls = BTreeMap<CallKey, (Arc<FixClosure>, SemValue)>;

/// The interpreter. `ctx` is the context the valuations are drawn from;
/// it is used to δ-reduce when computing residuals and case motives.
pub struct Model {
    pub ctx: Context,
    pub cfg: ModelConfig,
    pub red: ReductionConfig,
    /// Members of closed inductive families, keyed by block address, index,
    /// parameters and indices. The block is kept alive with the entry.
    members: RefCell<Members>,
    /// Results of fix calls on finite arguments, keyed by closure address,
    /// function index and arguments. The closure is kept alive likewise.
    calls: RefCell<Calls>,
    samples: Cell<usize>,
}

impl Model {
    pub fn new(ctx: &Context, cfg: ModelConfig) -> Self {
        Model {
            ctx: ctx.clone(),
            cfg,
            red: ReductionConfig::default(),
            members: RefCell::new(BTreeMap::new()),
            calls: RefCell::new(BTreeMap::new()),
            samples: Cell::new(0),
        }
    }

    pub fn with_reduction(mut self, red: ReductionConfig) -> Self {
        self.red = red;
        self
    }

    /// Number of points examined by function-space membership tests so far.
    pub fn samples(&self) -> usize {
        self.samples.get()
    }

    pub(super) fn locals(&self, env: &Valuation) -> usize {
        env.len().saturating_sub(self.ctx.depth())
    }

    pub(super) fn reducer(&self) -> Reducer<'_> {
        Reducer::new(&self.ctx, self.red)
    }

    pub(super) fn fuel<T>(r: Result<T, crate::reduction::ReductionError>) -> R<T> {
        r.map_err(|e| ModelError::BoundExceeded(format!("{}", e)))
    }

    // -----------------------------------------------------------------------
    // Evaluation

    pub fn eval(&self, t: &Term, env: &Valuation) -> R<SemValue> {
        match t {
            Term::Var(i) => match env.get(*i) {
                Some(v) => Ok(v.clone()),
                None => undefined(format!("variable #{} outside the valuation", i)),
            },
            Term::Sort(Sort::Prop) => Ok(SemValue::Fin(Hf::nat(2))),
            Term::Sort(Sort::Type(i)) => Ok(SemValue::Universe(*i)),
            Term::Rec(_) => undefined("block-local name outside its block"),
            Term::Pi(_, a, b) => {
                let dom = self.eval(a, env)?;
                let cod = Closure { env: env.clone(), body: (**b).clone() };
                if let Some(h) = self.lower_pi(&dom, &cod) {
                    return Ok(SemValue::Fin(h));
                }
                Ok(SemValue::FunSpace { dom: Arc::new(dom), cod })
            }
            Term::Lam(_, a, b) => {
                let dom = self.eval(a, env)?;
                let body = Closure { env: env.clone(), body: (**b).clone() };
                if let Some(h) = self.lower_lam(&dom, &body) {
                    return Ok(SemValue::Fin(h));
                }
                Ok(SemValue::Fun(Arc::new(FunValue::Lam { dom, body })))
            }
            Term::Let(_, d, _, b) => {
                let v = self.eval(d, env)?;
                self.eval(b, &env.push(v))
            }
            Term::App(f, a) => {
                let fv = self.eval(f, env)?;
                let av = self.eval(a, env)?;
                self.apply(&fv, &av)
            }
            Term::Ind(b, x) => self.eval_ind(b, *x, env),
            Term::Case(e, q, hs) => {
                let ve = self.eval(e, env)?;
                let Some((tag, comps)) = self.decode_con(&ve) else {
                    return undefined(format!("case on `{}`, which is not a constructor value", ve));
                };
                let block = self.case_block(q, env)?;
                let c = tag - 1;
                if c >= block.cons().len() {
                    return undefined("constructor tag out of range");
                }
                let d = block.con_target(c).ok_or_else(|| ModelError::Undefined("ill-formed constructor".into()))?;
                let j = block.cons_of(d).iter().position(|&x| x == c).unwrap_or(usize::MAX);
                let Some(h) = hs.get(j) else {
                    return undefined("no branch for constructor");
                };
                let mut v = self.eval(h, env)?;
                for z in &comps {
                    v = self.apply(&v, z)?;
                }
                Ok(v)
            }
            Term::Fix(i, defs) => {
                let fix = self.fix_closure(defs, env)?;
                Ok(SemValue::Fun(Arc::new(FunValue::Fix { fix, index: *i, args: Vec::new() })))
            }
        }
    }

    /// Number of products of the arity of inductive `d`.
    pub(super) fn arity_len(&self, block: &Arc<InductiveBlock>, d: usize, env: &Valuation) -> R<usize> {
        let k = self.locals(env);
        let mut r = self.reducer();
        let a = Self::fuel(r.normalize_in(&block.inds()[d].1, k))?;
        Ok(syntactic_telescope(&a).0.len())
    }

    fn eval_ind(&self, block: &Arc<InductiveBlock>, x: usize, env: &Valuation) -> R<SemValue> {
        if x >= block.name_count() {
            return undefined("inductive name out of range");
        }
        if block.is_ind(x) {
            let arity = self.arity_len(block, x, env)?;
            let f = FunValue::Ind { block: block.clone(), ind: x, env: env.clone(), arity, args: Vec::new() };
            if arity == 0 {
                return self.saturate_ind(&f);
            }
            Ok(SemValue::Fun(Arc::new(f)))
        } else {
            let con = x - block.inds().len();
            let arity = syntactic_telescope(&block.cons()[con].1).0.len();
            if arity == 0 {
                return Ok(SemValue::Fin(Hf::tuple([Hf::nat(con + 1)])));
            }
            Ok(SemValue::Fun(Arc::new(FunValue::Con { block: block.clone(), con, arity, args: Vec::new() })))
        }
    }

    fn saturate_ind(&self, f: &FunValue) -> R<SemValue> {
        let FunValue::Ind { block, ind, env, args, .. } = f else { unreachable!() };
        let n = block.params();
        let (p, u) = args.split_at(n.min(args.len()));
        Ok(SemValue::Family(Arc::new(IndFamily {
            block: block.clone(),
            ind: *ind,
            env: env.clone(),
            params: p.to_vec(),
            indices: u.to_vec(),
        })))
    }

    /// The block a case analyses, read from the last binder of its motive.
    fn case_block(&self, q: &Term, env: &Valuation) -> R<Arc<InductiveBlock>> {
        let k = self.locals(env);
        let mut r = self.reducer();
        let mut t = Self::fuel(r.whnf_in(q, k))?;
        let mut depth = k;
        let mut last = None;
        while let Term::Lam(_, a, b) = t {
            last = Some((a.clone(), depth));
            depth += 1;
            t = Self::fuel(r.whnf_in(&b, depth))?;
        }
        if let Some((a, depth)) = last {
            if let Term::Ind(b, d) = Self::fuel(r.whnf_in(&a, depth))?.head() {
                if b.is_ind(*d) {
                    return Ok(b.clone());
                }
            }
        }
        undefined("cannot read the inductive type of a case from its motive")
    }

    /// `⟨k, z…⟩` as a tag and components.
    pub fn decode_con(&self, v: &SemValue) -> Option<(usize, Vec<SemValue>)> {
        match v {
            SemValue::Fin(h) => {
                let items = h.untuple()?;
                let tag = items.first()?.as_nat()?;
                if tag == 0 {
                    return None;
                }
                Some((tag, items[1..].iter().cloned().map(SemValue::Fin).collect()))
            }
            SemValue::Con { tag, args } => Some((*tag, args.clone())),
            _ => None,
        }
    }

    pub fn apply_all(&self, f: &SemValue, xs: &[SemValue]) -> R<SemValue> {
        let mut v = f.clone();
        for x in xs {
            v = self.apply(&v, x)?;
        }
        Ok(v)
    }

    /// `app(f, x)`, with symbolic functions applied by evaluation.
    pub fn apply(&self, f: &SemValue, x: &SemValue) -> R<SemValue> {
        match f {
            SemValue::Fin(u) => Ok(SemValue::Fin(match self.lower(x) {
                Some(xh) => aczel_app(u, &xh),
                None => Hf::empty(),
            })),
            SemValue::Fun(fv) => match &**fv {
                FunValue::Lam { dom, body } => {
                    if dom.is_type_descriptor() && self.mem(x, dom) == Tri::No {
                        return Ok(SemValue::Fin(Hf::empty()));
                    }
                    self.eval(&body.body, &body.env.push(x.clone()))
                }
                FunValue::Con { block, con, arity, args } => {
                    let mut args = args.clone();
                    args.push(x.clone());
                    if args.len() < *arity {
                        return Ok(SemValue::Fun(Arc::new(FunValue::Con {
                            block: block.clone(),
                            con: *con,
                            arity: *arity,
                            args,
                        })));
                    }
                    let comps: Vec<SemValue> = args.split_off(block.params());
                    Ok(Self::con_value(con + 1, comps))
                }
                FunValue::Ind { block, ind, env, arity, args } => {
                    let mut args = args.clone();
                    args.push(x.clone());
                    let f = FunValue::Ind { block: block.clone(), ind: *ind, env: env.clone(), arity: *arity, args };
                    if let FunValue::Ind { args, .. } = &f {
                        if args.len() >= *arity {
                            return self.saturate_ind(&f);
                        }
                    }
                    Ok(SemValue::Fun(Arc::new(f)))
                }
                FunValue::Fix { fix, index, args } => {
                    let mut args = args.clone();
                    args.push(x.clone());
                    if args.len() <= fix.defs[*index].rec_arg {
                        return Ok(SemValue::Fun(Arc::new(FunValue::Fix { fix: fix.clone(), index: *index, args })));
                    }
                    self.fix_call(fix, *index, &args)
                }
            },
            SemValue::Con { .. } => Ok(SemValue::Fin(Hf::empty())),
            SemValue::Universe(_) | SemValue::FunSpace { .. } | SemValue::Family(_) => {
                undefined("application of a type")
            }
        }
    }

    pub(super) fn con_value(tag: usize, comps: Vec<SemValue>) -> SemValue {
        let fins: Option<Vec<Hf>> = comps.iter().map(|c| c.fin().cloned()).collect();
        match fins {
            Some(fs) => SemValue::Fin(Hf::tuple(core::iter::once(Hf::nat(tag)).chain(fs))),
            None => SemValue::Con { tag, args: comps },
        }
    }

    // -----------------------------------------------------------------------
    // Finite views

    /// The hereditarily finite set a value denotes, when it can be computed.
    pub fn lower(&self, v: &SemValue) -> Option<Hf> {
        match v {
            SemValue::Fin(h) => Some(h.clone()),
            SemValue::Con { tag, args } => {
                let fs: Option<Vec<Hf>> = args.iter().map(|a| self.lower(a)).collect();
                Some(Hf::tuple(core::iter::once(Hf::nat(*tag)).chain(fs?)))
            }
            SemValue::Universe(_) => None,
            SemValue::FunSpace { dom, cod } => self.lower_pi(dom, cod),
            SemValue::Family(f) => {
                let (members, complete) = self.family_members(f).ok()?;
                complete.then(|| Hf::from_iter(members))
            }
            SemValue::Fun(fv) => match &**fv {
                FunValue::Lam { dom, body } => self.lower_lam(dom, body),
                _ => None,
            },
        }
    }

    /// The finite elements of a value with a complete, small enumeration.
    fn finite_domain(&self, dom: &SemValue) -> Option<Vec<(SemValue, Hf)>> {
        let (xs, complete) = self.enumerate(dom).ok()?;
        if !complete || xs.len() > self.cfg.sample_budget {
            return None;
        }
        xs.into_iter().map(|x| self.lower(&x).map(|h| (x, h))).collect()
    }

    /// `{lam(f) | f ∈ Π_{α∈A} B(α)}` for a finite `A`.
    fn lower_pi(&self, dom: &SemValue, cod: &Closure) -> Option<Hf> {
        let xs = self.finite_domain(dom)?;
        let mut choices: Vec<(Hf, Vec<Hf>)> = Vec::with_capacity(xs.len());
        let mut count: usize = 1;
        for (x, xh) in xs {
            let b = self.eval(&cod.body, &cod.env.push(x)).ok()?;
            let bh = self.lower(&b)?;
            count = count.checked_mul(bh.len())?;
            if count > self.cfg.max_set {
                return None;
            }
            choices.push((xh, bh.elements().to_vec()));
        }
        let mut out = Vec::with_capacity(count);
        let mut pick = alloc::vec![0usize; choices.len()];
        if count > 0 {
            loop {
                out.push(aczel_lam(choices.iter().zip(&pick).map(|((x, ys), &i)| (x, &ys[i]))));
                // Advance the mixed-radix counter.
                let mut pos = 0;
                while pos < pick.len() {
                    pick[pos] += 1;
                    if pick[pos] < choices[pos].1.len() {
                        break;
                    }
                    pick[pos] = 0;
                    pos += 1;
                }
                if pos == pick.len() {
                    break;
                }
            }
        }
        Some(Hf::from_iter(out))
    }

    /// `lam(α ↦ ⟦t⟧_{γ,α})` for a finite domain.
    fn lower_lam(&self, dom: &SemValue, body: &Closure) -> Option<Hf> {
        let xs = self.finite_domain(dom)?;
        let mut graph = Vec::with_capacity(xs.len());
        for (x, xh) in xs {
            let y = self.eval(&body.body, &body.env.push(x)).ok()?;
            graph.push((xh, self.lower(&y)?));
        }
        Some(aczel_lam(graph.iter().map(|(x, y)| (x, y))))
    }

    /// Elements of a set-valued value, and whether the list is exhaustive.
    pub fn enumerate(&self, v: &SemValue) -> R<(Vec<SemValue>, bool)> {
        match v {
            SemValue::Fin(h) => Ok((h.elements().iter().cloned().map(SemValue::Fin).collect(), true)),
            SemValue::Universe(i) => {
                let bound = self.cfg.universe_rank + *i as usize;
                let xs = Hf::rank_at_most(bound, self.cfg.sample_budget).into_iter().map(SemValue::Fin).collect();
                Ok((xs, false))
            }
            SemValue::Family(f) => {
                let (members, complete) = self.family_members(f)?;
                Ok((members.into_iter().map(SemValue::Fin).collect(), complete))
            }
            _ => match self.lower(v) {
                Some(h) => Ok((h.elements().iter().cloned().map(SemValue::Fin).collect(), true)),
                None => Ok((Vec::new(), false)),
            },
        }
    }

    // -----------------------------------------------------------------------
    // Membership and equality

    /// `v ∈ T` at the configured derivation depth.
    pub fn mem(&self, v: &SemValue, t: &SemValue) -> Tri {
        self.mem_at(v, t, self.cfg.fixpoint_depth)
    }

    pub fn mem_at(&self, v: &SemValue, t: &SemValue, depth: usize) -> Tri {
        match t {
            SemValue::Fin(s) => match (v, self.lower(v)) {
                (_, Some(h)) => Tri::from_bool(s.contains(&h)),
                (SemValue::Universe(_), None) => Tri::No,
                _ => Tri::Unknown,
            },
            SemValue::Universe(i) => match v {
                SemValue::Universe(j) => Tri::from_bool(j < i),
                SemValue::Fin(h) if h.rank() <= self.cfg.universe_rank + *i as usize => Tri::Yes,
                _ => Tri::Unknown,
            },
            SemValue::Family(f) => self.mem_family(v, f, depth),
            SemValue::FunSpace { dom, cod } => {
                let Ok((xs, complete)) = self.enumerate(dom) else { return Tri::Unknown };
                let mut r = if complete { Tri::Yes } else { Tri::Unknown };
                for x in xs {
                    self.samples.set(self.samples.get() + 1);
                    let y = match self.apply(v, &x) {
                        Ok(y) => y,
                        Err(_) => {
                            r = r.and(Tri::Unknown);
                            continue;
                        }
                    };
                    let b = match self.eval(&cod.body, &cod.env.push(x)) {
                        Ok(b) => b,
                        Err(_) => {
                            r = r.and(Tri::Unknown);
                            continue;
                        }
                    };
                    r = r.and(self.mem_at(&y, &b, depth));
                    if r == Tri::No {
                        return Tri::No;
                    }
                }
                r
            }
            SemValue::Con { .. } | SemValue::Fun(_) => match self.lower(t) {
                Some(s) => self.mem_at(v, &SemValue::Fin(s), depth),
                None => Tri::Unknown,
            },
        }
    }

    /// Extensional equality of two values, where decidable.
    pub fn sem_eq(&self, a: &SemValue, b: &SemValue) -> Tri {
        match (a, b) {
            (SemValue::Fin(x), SemValue::Fin(y)) => Tri::from_bool(x == y),
            (SemValue::Universe(i), SemValue::Universe(j)) => Tri::from_bool(i == j),
            (SemValue::Con { tag: s, args: xs }, SemValue::Con { tag: t, args: ys }) => {
                if s != t || xs.len() != ys.len() {
                    return Tri::No;
                }
                xs.iter().zip(ys).fold(Tri::Yes, |r, (x, y)| r.and(self.sem_eq(x, y)))
            }
            (SemValue::Family(f), SemValue::Family(g)) => {
                // Declarations of an open block depend on its valuation.
                let same = f.ind == g.ind
                    && f.block.is_closed()
                    && block_eq(&f.block, &g.block)
                    && f.params.len() == g.params.len()
                    && f.indices.len() == g.indices.len();
                if !same {
                    return Tri::Unknown;
                }
                let args = f.params.iter().chain(&f.indices).zip(g.params.iter().chain(&g.indices));
                match args.fold(Tri::Yes, |r, (x, y)| r.and(self.sem_eq(x, y))) {
                    Tri::Yes => Tri::Yes,
                    _ => Tri::Unknown,
                }
            }
            _ => match (self.lower(a), self.lower(b)) {
                (Some(x), Some(y)) => Tri::from_bool(x == y),
                _ => Tri::Unknown,
            },
        }
    }

    pub(super) fn calls_cache(&self) -> &RefCell<Calls> {
        &self.calls
    }

    pub(super) fn members_cache(&self) -> &RefCell<Members> {
        &self.members
    }
}
