//! The guard condition `F` on fix blocks, via constrained typing.
//!
//! Every variable carries a constraint: `ε`, `<z` (structurally smaller than
//! the recursive argument `z`) or `=z` (equal to `z`). Case analysis on a
//! term constrained by `c` binds the recursive constructor arguments at `<c`,
//! and a recursive call must pass a `<z` term in its recursive slot.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::diag::Diagnostic;
use crate::kernel::{syntactic_telescope, KResult, Tc};
use crate::reduction::ReductionConfig;
use crate::syntax::{mentions_rec, Context, Entry, FixDef, Name, Term};

const RULE: &str = "F guard";

/// A constraint; `z` is identified by the de Bruijn level of its binder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Constraint {
    Empty,
    Smaller(usize),
    Equal(usize),
}

/// `<c`.
pub fn less(c: Constraint) -> Constraint {
    match c {
        Constraint::Empty => Constraint::Empty,
        Constraint::Equal(z) | Constraint::Smaller(z) => Constraint::Smaller(z),
    }
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    c: Constraint,
    /// For a function of the block being checked: its number of binders
    /// before the recursive argument.
    rec: Option<usize>,
}

/// A typing context whose variables above `base` carry constraints.
pub struct ConstrainedContext {
    tc: Tc,
    base: usize,
    slots: Vec<Slot>,
    names: Vec<Name>,
    z: usize,
}

impl ConstrainedContext {
    /// `Γ^ε`, with `z` the level of the recursive argument once it is pushed.
    pub fn new(ctx: &Context, cfg: ReductionConfig, z: usize) -> Self {
        let base = ctx.depth();
        ConstrainedContext { tc: Tc::new(ctx, cfg), base, slots: Vec::new(), names: Vec::new(), z }
    }

    pub fn push(&mut self, name: Name, ty: Term, c: Constraint) {
        self.push_slot(name, ty, Slot { c, rec: None });
    }

    fn push_slot(&mut self, name: Name, ty: Term, slot: Slot) {
        self.names.push(name.clone());
        self.tc.ctx.push(Entry::Assum { name, ty });
        self.slots.push(slot);
    }

    fn push_def(&mut self, name: Name, body: Term, ty: Term) {
        self.names.push(name.clone());
        self.tc.ctx.push(Entry::Def { name, body, ty });
        self.slots.push(Slot { c: Constraint::Empty, rec: None });
    }

    fn pop(&mut self) {
        self.names.pop();
        self.tc.ctx.pop();
        self.slots.pop();
    }

    /// Constraint of `Var(i)`, counting from the innermost binder.
    pub fn constraint(&self, i: usize) -> Constraint {
        self.slot(i).map_or(Constraint::Empty, |s| s.c)
    }

    fn slot(&self, i: usize) -> Option<Slot> {
        let d = self.tc.ctx.depth();
        let level = d - 1 - i;
        if level < self.base {
            None
        } else {
            Some(self.slots[level - self.base])
        }
    }

    fn var_name(&self, i: usize) -> Name {
        self.tc.ctx.var_name(i).cloned().unwrap_or_else(|| "_".into())
    }

    fn walk(&mut self, t: &Term) -> KResult<Constraint> {
        match t {
            Term::Var(i) => {
                if let Some(Slot { rec: Some(k), .. }) = self.slot(*i) {
                    return Err(Diagnostic::error(
                        RULE,
                        format!(
                            "recursive call on non-smaller argument: `{}` must be applied to at least {} arguments",
                            self.var_name(*i),
                            k + 1
                        ),
                    ));
                }
                Ok(self.constraint(*i))
            }
            Term::Sort(_) | Term::Rec(_) | Term::Ind(..) => Ok(Constraint::Empty),
            Term::App(..) => {
                let (h, args) = t.spine();
                if let Term::Var(i) = h {
                    if let Some(Slot { rec: Some(k), .. }) = self.slot(*i) {
                        if args.len() <= k {
                            return Err(Diagnostic::error(
                                RULE,
                                format!(
                                    "recursive call on non-smaller argument: `{}` must be applied to at least {} arguments",
                                    self.var_name(*i),
                                    k + 1
                                ),
                            ));
                        }
                        let mut rc = Constraint::Empty;
                        for (j, a) in args.iter().enumerate() {
                            let c = self.walk(a)?;
                            if j == k {
                                rc = c;
                            }
                        }
                        if rc != Constraint::Smaller(self.z) {
                            return Err(Diagnostic::error(
                                RULE,
                                format!(
                                    "recursive call on non-smaller argument: `{}` in the call to `{}` is not structurally smaller than `{}`",
                                    self.tc.show(args[k]),
                                    self.var_name(*i),
                                    self.names.get(self.z - self.base).cloned().unwrap_or_else(|| "z".into())
                                ),
                            ));
                        }
                        return Ok(Constraint::Empty);
                    }
                }
                let c = self.walk(h)?;
                for a in args {
                    self.walk(a)?;
                }
                Ok(c)
            }
            Term::Lam(n, a, b) => {
                self.walk(a)?;
                self.push(n.clone(), (**a).clone(), Constraint::Empty);
                let c = self.walk(b);
                self.pop();
                c
            }
            Term::Pi(n, a, b) => {
                self.walk(a)?;
                self.push(n.clone(), (**a).clone(), Constraint::Empty);
                let c = self.walk(b);
                self.pop();
                c.map(|_| Constraint::Empty)
            }
            Term::Let(n, d, ann, b) => {
                self.walk(d)?;
                let ty = match ann {
                    Some(a) => {
                        self.walk(a)?;
                        (**a).clone()
                    }
                    None => self.tc.infer(d)?,
                };
                self.push_def(n.clone(), (**d).clone(), ty);
                let c = self.walk(b);
                self.pop();
                c.map(|_| Constraint::Empty)
            }
            Term::Fix(_, defs) => {
                for d in defs.iter() {
                    self.walk(&d.ty)?;
                }
                for (j, d) in defs.iter().enumerate() {
                    self.push(d.name.clone(), d.ty.lift(j), Constraint::Empty);
                }
                let r = defs.iter().try_for_each(|d| self.walk(&d.body).map(|_| ()));
                for _ in defs.iter() {
                    self.pop();
                }
                r.map(|_| Constraint::Empty)
            }
            Term::Case(e, q, hs) => self.walk_case(e, q, hs),
        }
    }

    fn walk_case(&mut self, e: &Term, q: &Term, hs: &[Term]) -> KResult<Constraint> {
        let c = self.walk(e)?;
        self.walk(q)?;
        let te = self.tc.infer(e)?;
        let te = self.tc.whnf(&te)?;
        let (block, d) = match te.head() {
            Term::Ind(b, d) if b.is_ind(*d) => (b.clone(), *d),
            _ => return Err(Diagnostic::error("(case) scrutinee", "scrutinee is not of an inductive type")),
        };
        let n = block.params();
        let cons = block.cons_of(d);
        let mut result: Option<Constraint> = None;
        for (h, &k) in hs.iter().zip(cons.iter()) {
            // Δ^{<z}: arguments whose declared type mentions the block get `<c`.
            let (tele, _) = syntactic_telescope(&block.cons()[k].1);
            let marks: Vec<Constraint> =
                tele.iter().skip(n).map(|(_, a)| if mentions_rec(a) { less(c) } else { Constraint::Empty }).collect();
            let mut body = h;
            let mut pushed = 0;
            while pushed < marks.len() {
                match body {
                    Term::Lam(x, a, b) => {
                        if let Err(err) = self.walk(a) {
                            for _ in 0..pushed {
                                self.pop();
                            }
                            return Err(err);
                        }
                        self.push(x.clone(), (**a).clone(), marks[pushed]);
                        pushed += 1;
                        body = b;
                    }
                    _ => break,
                }
            }
            let r = self.walk(body);
            for _ in 0..pushed {
                self.pop();
            }
            let bc = r?;
            result = Some(match result {
                None => bc,
                Some(prev) if prev == bc => bc,
                Some(_) => Constraint::Empty,
            });
        }
        Ok(result.unwrap_or(Constraint::Empty))
    }
}

/// Infers the type and the strongest derivable constraint of `t`.
pub fn constrained_infer(cc: &mut ConstrainedContext, t: &Term) -> KResult<(Term, Constraint)> {
    let c = cc.walk(t)?;
    let ty = cc.tc.infer(t)?;
    Ok((ty, c))
}

/// Checks the `F` condition for the fix block `defs` in `ctx`.
pub fn check_fix_block(ctx: &Context, defs: &Arc<[FixDef]>, cfg: ReductionConfig) -> KResult<()> {
    let m = defs.len();
    for (i, def) in defs.iter().enumerate() {
        let k = def.rec_arg;
        let tc = Tc::new(ctx, cfg);
        let (tele, _) = tc.telescope(&def.ty, 0)?;
        if tele.len() < k + 1 {
            return Err(Diagnostic::error(
                RULE,
                format!(
                    "recursive binder count mismatch: the type of `{}` has {} products, needs {}",
                    def.name,
                    tele.len(),
                    k + 1
                ),
            ));
        }
        let base = ctx.depth();
        let mut cc = ConstrainedContext::new(ctx, cfg, base + m + k);
        for (j, d) in defs.iter().enumerate() {
            cc.push_slot(d.name.clone(), d.ty.lift(j), Slot { c: Constraint::Empty, rec: Some(d.rec_arg) });
        }
        let mut body = &def.body;
        for j in 0..=k {
            match body {
                Term::Lam(x, a, b) => {
                    let c = if j == k { Constraint::Equal(base + m + k) } else { Constraint::Empty };
                    if j == k {
                        let za = cc.tc.whnf(a)?;
                        if !matches!(za.head(), Term::Ind(b, d) if b.is_ind(*d)) {
                            return Err(Diagnostic::error(
                                RULE,
                                format!(
                                    "recursive argument not an inductive type: `{}` of `{}` has type `{}`",
                                    x,
                                    def.name,
                                    cc.tc.show(a)
                                ),
                            ));
                        }
                    }
                    cc.walk(a)?;
                    cc.push(x.clone(), (**a).clone(), c);
                    body = b;
                }
                _ => {
                    return Err(Diagnostic::error(
                        RULE,
                        format!(
                            "recursive binder count mismatch: body of `{}` (number {}) has fewer than {} abstractions",
                            def.name,
                            i,
                            k + 1
                        ),
                    ))
                }
            }
        }
        cc.walk(body)?;
    }
    Ok(())
}
