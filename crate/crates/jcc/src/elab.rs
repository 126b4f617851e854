//! Name resolution and desugaring of surface terms into kernel terms.
//!
//! `match` needs the type of its scrutinee to build the motive and the
//! branch binders, so elaboration keeps a kernel context with the local
//! binders pushed as assumptions.

use jcc_core::diag::{Diagnostic, Location};
use jcc_core::kernel::{self, KResult};
use jcc_core::reduction::ReductionConfig;
use jcc_core::syntax::{name, Context, Entry, FixDef, Term};

use crate::ast::*;

/// Names of an inductive block being declared, resolved to `Rec(i)`.
struct BlockScope {
    names: Vec<String>,
    /// Context length when the block started; entries after it are locals.
    base: usize,
}

pub struct Elaborator {
    pub ctx: Context,
    pub cfg: ReductionConfig,
    block: Option<BlockScope>,
}

fn err(rule: &str, loc: Location, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error(rule, msg).at(loc)
}

impl Elaborator {
    pub fn new(ctx: Context, cfg: ReductionConfig) -> Self {
        Elaborator { ctx, cfg, block: None }
    }

    fn push(&mut self, n: &str, ty: Term) {
        self.ctx.push(Entry::Assum { name: name(n), ty });
    }

    fn pop(&mut self, k: usize) {
        for _ in 0..k {
            self.ctx.pop();
        }
    }

    pub fn resolve(&self, n: &str, loc: Location) -> KResult<Term> {
        let entries = self.ctx.entries();
        let blocks = self.ctx.blocks();
        let block_hit = |bs: &BlockScope| bs.names.iter().position(|x| x == n).map(Term::Rec);
        let mut after = 0;
        let mut ind_seen = 0;
        let mut block_checked = self.block.is_none();
        for (pos, e) in entries.iter().enumerate().rev() {
            if !block_checked && pos < self.block.as_ref().map_or(0, |b| b.base) {
                block_checked = true;
                if let Some(t) = self.block.as_ref().and_then(block_hit) {
                    return Ok(t);
                }
            }
            match e {
                Entry::Assum { name, .. } | Entry::Def { name, .. } => {
                    if &**name == n {
                        return Ok(Term::Var(after));
                    }
                    after += 1;
                }
                Entry::Ind(b) => {
                    if let Some(i) = b.index_of(n) {
                        return Ok(Term::Ind(blocks[blocks.len() - 1 - ind_seen].clone(), i));
                    }
                    ind_seen += 1;
                }
            }
        }
        if !block_checked {
            if let Some(t) = self.block.as_ref().and_then(block_hit) {
                return Ok(t);
            }
        }
        Err(err("(var)", loc, format!("unbound name `{}`", n)))
    }

    /// Elaborates binders left to right, pushing each; returns their types.
    fn binders(&mut self, bs: &[Binder]) -> KResult<Vec<(String, Term)>> {
        let mut out = Vec::with_capacity(bs.len());
        for b in bs {
            match self.expr(&b.ty) {
                Ok(ty) => {
                    self.push(&b.name, ty.clone());
                    out.push((b.name.clone(), ty));
                }
                Err(e) => {
                    self.pop(out.len());
                    return Err(e);
                }
            }
        }
        Ok(out)
    }

    fn under<T>(
        &mut self,
        bs: &[Binder],
        f: impl FnOnce(&mut Self) -> KResult<T>,
    ) -> KResult<(Vec<(String, Term)>, T)> {
        let tys = self.binders(bs)?;
        let r = f(self);
        self.pop(tys.len());
        Ok((tys, r?))
    }

    pub fn expr(&mut self, e: &Expr) -> KResult<Term> {
        let loc = e.loc;
        match &e.kind {
            ExprKind::Name(n) => self.resolve(n, loc),
            ExprKind::Sort(s) => Ok(Term::Sort(*s)),
            ExprKind::Pi(bs, body) => {
                let (tys, b) = self.under(bs, |s| s.expr(body))?;
                Ok(wrap(tys, b, Term::pi))
            }
            ExprKind::Lam(bs, body) => {
                let (tys, b) = self.under(bs, |s| s.expr(body))?;
                Ok(wrap(tys, b, Term::lam))
            }
            ExprKind::Arrow(a, b) => Ok(Term::arrow(self.expr(a)?, self.expr(b)?)),
            ExprKind::Let(x, d, ty, body) => {
                let d = self.expr(d)?;
                let ty = ty.as_ref().map(|t| self.expr(t)).transpose()?;
                let entry_ty = match &ty {
                    Some(t) => t.clone(),
                    None => kernel::infer(&self.ctx, &d, self.cfg).map_err(|e| e.at(loc))?,
                };
                self.ctx.push(Entry::Def { name: name(x), body: d.clone(), ty: entry_ty });
                let b = self.expr(body);
                self.pop(1);
                Ok(Term::let_in(x, d, ty, b?))
            }
            ExprKind::App(h, args) => {
                let mut t = self.expr(h)?;
                for a in args {
                    t = Term::app(t, self.expr(a)?);
                }
                Ok(t)
            }
            ExprKind::Case(s, q, hs) => {
                let s = self.expr(s)?;
                let q = self.expr(q)?;
                let hs = hs.iter().map(|h| self.expr(h)).collect::<KResult<Vec<_>>>()?;
                Ok(Term::case(s, q, hs))
            }
            ExprKind::Fix(specs, f) => {
                let defs = self.fix_defs(specs)?;
                let i = specs
                    .iter()
                    .position(|s| &s.name == f)
                    .ok_or_else(|| err("(var)", loc, format!("`{}` is not defined by this fix", f)))?;
                Ok(Term::fix(i, defs))
            }
            ExprKind::Match(m) => self.match_expr(m, loc),
        }
    }

    /// Elaborates a mutual block of recursive definitions.
    pub fn fix_defs(&mut self, specs: &[FixSpec]) -> KResult<Vec<FixDef>> {
        let mut tys = Vec::with_capacity(specs.len());
        for s in specs {
            if s.k == 0 {
                return Err(err("F guard", s.loc, "recursive argument position must be at least 1"));
            }
            tys.push(self.expr(&s.ty)?);
        }
        for (j, (s, ty)) in specs.iter().zip(&tys).enumerate() {
            self.push(&s.name, ty.lift(j));
        }
        let bodies = specs.iter().map(|s| self.expr(&s.body)).collect::<KResult<Vec<_>>>();
        self.pop(specs.len());
        Ok(specs
            .iter()
            .zip(tys)
            .zip(bodies?)
            .map(|((s, ty), body)| FixDef { name: name(&s.name), rec_arg: s.k as usize - 1, ty, body })
            .collect())
    }

    fn match_expr(&mut self, m: &Match, loc: Location) -> KResult<Term> {
        let scrut = self.expr(&m.scrutinee)?;
        let sty = kernel::infer(&self.ctx, &scrut, self.cfg).map_err(|e| e.at(m.scrutinee.loc))?;
        let Some(view) = kernel::inductive_view(&self.ctx, &sty, self.cfg)? else {
            return Err(err("(case) scrutinee", m.scrutinee.loc, "the matched term does not have an inductive type"));
        };
        let block = view.block.clone();
        let n = block.params();
        let nidx = view.index_telescope.len();
        let index_names: Vec<String> = match &m.in_clause {
            None => vec!["_".to_string(); nidx],
            Some((ind, names)) => {
                if ind.as_str() != &**block.name_of(view.ind) {
                    return Err(err(
                        "(case) scrutinee",
                        loc,
                        format!("`in {}` does not match the scrutinee type `{}`", ind, block.name_of(view.ind)),
                    ));
                }
                if names.len() != n + nidx {
                    return Err(err(
                        "(case) scrutinee",
                        loc,
                        format!("`in {}` expects {} parameters and {} indices", ind, n, nidx),
                    ));
                }
                names[n..].to_vec()
            }
        };
        // Motive: λ u:U. λ y : d p u. Q'
        for ((_, u), x) in view.index_telescope.iter().zip(&index_names) {
            self.push(x, u.clone());
        }
        let y_ty = Term::apps(
            Term::apps(Term::Ind(block.clone(), view.ind), view.params.iter().map(|p| p.lift(nidx))),
            (0..nidx).rev().map(Term::Var),
        );
        let y = m.as_name.clone().unwrap_or_else(|| "_".into());
        self.push(&y, y_ty.clone());
        let ret = self.expr(&m.ret);
        self.pop(nidx + 1);
        let mut motive = Term::lam(&y, y_ty, ret?);
        for ((_, u), x) in view.index_telescope.iter().zip(&index_names).rev() {
            motive = Term::lam(x, u.clone(), motive);
        }
        // Branches, in constructor order.
        let cons = block.cons_of(view.ind);
        let mut used = vec![false; m.branches.len()];
        for (bi, b) in m.branches.iter().enumerate() {
            let ok = cons.iter().any(|&k| &**block.name_of(block.con_index(k)) == b.con.as_str());
            if !ok {
                return Err(err(
                    "(case) branch",
                    b.loc,
                    format!("`{}` is not a constructor of `{}`", b.con, block.name_of(view.ind)),
                ));
            }
            if m.branches[..bi].iter().any(|o| o.con == b.con) {
                return Err(err("(case) branch", b.loc, format!("duplicate branch for `{}`", b.con)));
            }
        }
        let mut hs = Vec::with_capacity(cons.len());
        for &k in &cons {
            let cname = block.name_of(block.con_index(k)).clone();
            let Some(bi) = m.branches.iter().position(|b| b.con.as_str() == &*cname) else { continue };
            used[bi] = true;
            let b = &m.branches[bi];
            let fields = kernel::constructor_fields(&self.ctx, &block, k, &view.params, self.cfg)?;
            let vars: &[String] = if b.vars.len() == fields.len() {
                &b.vars
            } else if b.vars.len() == n + fields.len() {
                &b.vars[n..]
            } else {
                return Err(err(
                    "(case) branch",
                    b.loc,
                    format!(
                        "constructor `{}` takes {} arguments, the pattern binds {}",
                        cname,
                        fields.len(),
                        b.vars.len()
                    ),
                ));
            };
            for ((_, a), x) in fields.iter().zip(vars) {
                self.push(x, a.clone());
            }
            let body = self.expr(&b.body);
            self.pop(fields.len());
            let mut h = body?;
            for ((_, a), x) in fields.iter().zip(vars).rev() {
                h = Term::lam(x, a.clone(), h);
            }
            hs.push(h);
        }
        debug_assert!(used.iter().all(|u| *u));
        Ok(Term::case(scrut, motive, hs))
    }

    /// Elaborates a block declaration; the result is not yet admitted.
    pub fn inductive(&mut self, specs: &[IndSpec]) -> KResult<jcc_core::syntax::InductiveBlock> {
        let n = specs[0].params.len();
        if let Some(s) = specs.iter().find(|s| s.params.len() != n) {
            return Err(err("(ind-wf) parameters", s.loc, "all inductives of a block must take the same parameters"));
        }
        let names = specs
            .iter()
            .map(|s| s.name.clone())
            .chain(specs.iter().flat_map(|s| s.cons.iter().map(|c| c.0.clone())))
            .collect();
        self.block = Some(BlockScope { names, base: self.ctx.len() });
        let r = self.block_decls(specs);
        self.block = None;
        let (inds, cons) = r?;
        Ok(jcc_core::syntax::InductiveBlock::new(n, inds, cons))
    }

    #[allow(clippy::type_complexity)]
    fn block_decls(
        &mut self,
        specs: &[IndSpec],
    ) -> KResult<(Vec<(jcc_core::syntax::Name, Term)>, Vec<(jcc_core::syntax::Name, Term)>)> {
        let mut inds = Vec::new();
        let mut cons = Vec::new();
        for s in specs {
            let (ps, arity) = self.under(&s.params, |el| el.expr(&s.arity))?;
            inds.push((name(&s.name), wrap(ps, arity, Term::pi)));
        }
        for s in specs {
            for (c, ty, _) in &s.cons {
                let (ps, t) = self.under(&s.params, |el| el.expr(ty))?;
                cons.push((name(c), wrap(ps, t, Term::pi)));
            }
        }
        Ok((inds, cons))
    }

    /// `λ/Π binders. body` for a definition with binders.
    pub fn definition(&mut self, binders: &[Binder], ty: Option<&Expr>, body: &Expr) -> KResult<(Term, Option<Term>)> {
        let (tys, (b, t)) = self.under(binders, |el| {
            let b = el.expr(body)?;
            let t = ty.map(|t| el.expr(t)).transpose()?;
            Ok((b, t))
        })?;
        let body = wrap(tys.clone(), b, Term::lam);
        Ok((body, t.map(|t| wrap(tys, t, Term::pi))))
    }
}

fn wrap(tys: Vec<(String, Term)>, body: Term, mk: fn(&str, Term, Term) -> Term) -> Term {
    tys.into_iter().rev().fold(body, |acc, (n, ty)| mk(&n, ty, acc))
}
