//! β, δ, ζ and ι reduction, normalization, conversion and cumulativity.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{alpha_eq, instantiate, subst_many, Context, Sort, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionConfig {
    pub max_steps: u64,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig { max_steps: 100_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionError {
    FuelExhausted,
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::FuelExhausted => f.write_str("reduction fuel exhausted"),
        }
    }
}

/// Counters collected while reducing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub steps: u64,
    pub fix_unfolds: u64,
    /// Fix applications left folded because the recursive argument was not
    /// constructor-headed.
    pub fix_blocked: u64,
}

/// A reduction engine over a context. Variables bound by the context are
/// unfolded when they are definitions; without a context every variable is
/// opaque.
pub struct Reducer<'c> {
    ctx: Option<&'c Context>,
    fuel: u64,
    pub stats: Stats,
}

type R<T> = Result<T, ReductionError>;

/// Index of the constructor `c` among the constructors of its own inductive,
/// together with the number of parameters, when `t` is headed by a constructor.
fn constructor_head(t: &Term) -> Option<(usize, usize)> {
    if let Term::Ind(b, c) = t.head() {
        if !b.is_ind(*c) {
            let k = *c - b.inds().len();
            let target = b.con_target(k)?;
            let local = b.cons_of(target).iter().position(|&x| x == k)?;
            return Some((local, b.params()));
        }
    }
    None
}

impl<'c> Reducer<'c> {
    pub fn new(ctx: &'c Context, cfg: ReductionConfig) -> Self {
        Reducer { ctx: Some(ctx), fuel: cfg.max_steps, stats: Stats::default() }
    }

    /// A reducer that treats every free variable as opaque.
    pub fn opaque(cfg: ReductionConfig) -> Reducer<'static> {
        Reducer { ctx: None, fuel: cfg.max_steps, stats: Stats::default() }
    }

    fn tick(&mut self) -> R<()> {
        if self.fuel == 0 {
            return Err(ReductionError::FuelExhausted);
        }
        self.fuel -= 1;
        self.stats.steps += 1;
        Ok(())
    }

    fn def_body(&self, i: usize, k: usize) -> Option<Term> {
        if i < k {
            return None;
        }
        self.ctx?.var(i - k)?.body.map(|b| b.lift(k))
    }

    /// Weak-head normal form of `t` under `k` local (opaque) binders.
    pub fn whnf_in(&mut self, t: &Term, k: usize) -> R<Term> {
        let mut t = t.clone();
        loop {
            match &t {
                Term::Var(i) => match self.def_body(*i, k) {
                    Some(b) => {
                        self.tick()?;
                        t = b;
                    }
                    None => return Ok(t),
                },
                Term::Let(_, d, _, b) => {
                    self.tick()?;
                    t = instantiate(b, d);
                }
                Term::App(..) => {
                    let (h, args) = t.spine();
                    let mut args: Vec<Term> = args.into_iter().cloned().collect();
                    let h = self.whnf_in(h, k)?;
                    match &h {
                        Term::Lam(_, _, body) => {
                            self.tick()?;
                            let first = args.remove(0);
                            t = Term::apps(instantiate(body, &first), args);
                        }
                        Term::Fix(i, defs) if args.len() > defs[*i].rec_arg => {
                            let pos = defs[*i].rec_arg;
                            let r = self.whnf_in(&args[pos], k)?;
                            if constructor_head(&r).is_some() {
                                self.tick()?;
                                self.stats.fix_unfolds += 1;
                                args[pos] = r;
                                let fixes: Vec<Term> = (0..defs.len()).map(|j| Term::Fix(j, defs.clone())).collect();
                                t = Term::apps(subst_many(&defs[*i].body, &fixes), args);
                            } else {
                                self.stats.fix_blocked += 1;
                                args[pos] = r;
                                return Ok(Term::apps(h, args));
                            }
                        }
                        _ => return Ok(Term::apps(h, args)),
                    }
                }
                Term::Case(e, q, hs) => {
                    let e = self.whnf_in(e, k)?;
                    match constructor_head(&e) {
                        Some((j, params)) if j < hs.len() => {
                            self.tick()?;
                            let (_, args) = e.spine();
                            let rest: Vec<Term> = args.into_iter().skip(params).cloned().collect();
                            t = Term::apps(hs[j].clone(), rest);
                        }
                        _ => return Ok(Term::Case(Arc::new(e), q.clone(), hs.clone())),
                    }
                }
                _ => return Ok(t),
            }
        }
    }

    /// Full normal form of `t` under `k` local binders.
    pub fn normalize_in(&mut self, t: &Term, k: usize) -> R<Term> {
        let t = self.whnf_in(t, k)?;
        Ok(match &t {
            Term::Var(_) | Term::Sort(_) | Term::Rec(_) | Term::Ind(..) => t,
            Term::Pi(n, a, b) => {
                Term::Pi(n.clone(), Arc::new(self.normalize_in(a, k)?), Arc::new(self.normalize_in(b, k + 1)?))
            }
            Term::Lam(n, a, b) => {
                Term::Lam(n.clone(), Arc::new(self.normalize_in(a, k)?), Arc::new(self.normalize_in(b, k + 1)?))
            }
            Term::App(..) => {
                let (h, args) = t.spine();
                let h = self.normalize_stuck_head(h, k)?;
                let mut out = h;
                for a in args {
                    out = Term::app(out, self.normalize_in(a, k)?);
                }
                out
            }
            Term::Case(..) | Term::Fix(..) => self.normalize_stuck_head(&t, k)?,
            Term::Let(..) => unreachable!("let is removed by whnf"),
        })
    }

    fn normalize_stuck_head(&mut self, h: &Term, k: usize) -> R<Term> {
        Ok(match h {
            Term::Case(e, q, hs) => {
                let e = self.normalize_in(e, k)?;
                let q = self.normalize_in(q, k)?;
                let mut nhs = Vec::with_capacity(hs.len());
                for b in hs.iter() {
                    nhs.push(self.normalize_in(b, k)?);
                }
                Term::case(e, q, nhs)
            }
            Term::Fix(i, defs) => {
                let m = defs.len();
                let mut nd = Vec::with_capacity(m);
                for d in defs.iter() {
                    let mut d = d.clone();
                    d.ty = self.normalize_in(&d.ty, k)?;
                    d.body = self.normalize_in(&d.body, k + m)?;
                    nd.push(d);
                }
                Term::fix(*i, nd)
            }
            _ => h.clone(),
        })
    }

    pub fn whnf(&mut self, t: &Term) -> R<Term> {
        self.whnf_in(t, 0)
    }

    pub fn normalize(&mut self, t: &Term) -> R<Term> {
        self.normalize_in(t, 0)
    }

    pub fn conv_in(&mut self, a: &Term, b: &Term, k: usize) -> R<bool> {
        if alpha_eq(a, b) {
            return Ok(true);
        }
        let a = self.normalize_in(a, k)?;
        let b = self.normalize_in(b, k)?;
        Ok(alpha_eq(&a, &b))
    }

    pub fn subtype_in(&mut self, a: &Term, b: &Term, k: usize) -> R<bool> {
        if alpha_eq(a, b) {
            return Ok(true);
        }
        let a = self.normalize_in(a, k)?;
        let b = self.normalize_in(b, k)?;
        Ok(subtype_nf(&a, &b))
    }
}

/// `≺` on normal forms.
fn subtype_nf(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Sort(s), Term::Sort(r)) => sort_le(*s, *r),
        (Term::Pi(_, a1, b1), Term::Pi(_, a2, b2)) => alpha_eq(a1, a2) && subtype_nf(b1, b2),
        _ => alpha_eq(a, b),
    }
}

/// `Prop ≺ Type0 ≺ Type1 ≺ ...`, reflexively.
pub fn sort_le(s: Sort, r: Sort) -> bool {
    match (s, r) {
        (Sort::Prop, _) => true,
        (Sort::Type(_), Sort::Prop) => false,
        (Sort::Type(i), Sort::Type(j)) => i <= j,
    }
}

pub fn whnf(ctx: &Context, t: &Term, cfg: ReductionConfig) -> R<Term> {
    Reducer::new(ctx, cfg).whnf(t)
}

pub fn normalize(ctx: &Context, t: &Term, cfg: ReductionConfig) -> R<Term> {
    Reducer::new(ctx, cfg).normalize(t)
}

/// Decides judgmental equality by comparing normal forms up to α.
pub fn conv(ctx: &Context, a: &Term, b: &Term, cfg: ReductionConfig) -> R<bool> {
    Reducer::new(ctx, cfg).conv_in(a, b, 0)
}

/// Decides `a ≺ b` (including `a = b`).
pub fn subtype(ctx: &Context, a: &Term, b: &Term, cfg: ReductionConfig) -> R<bool> {
    Reducer::new(ctx, cfg).subtype_in(a, b, 0)
}
