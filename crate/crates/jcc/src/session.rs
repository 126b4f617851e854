//! Running vernacular items against the kernel, one after another.

use std::sync::Arc;

use jcc_core::diag::Diagnostic;
use jcc_core::kernel::{self, KResult};
use jcc_core::model::Judgment;
use jcc_core::pretty::print_in;
use jcc_core::reduction::{self, ReductionConfig};
use jcc_core::syntax::{name, Context, Entry, Term};

use crate::ast::{Item, ItemKind};
use crate::elab::Elaborator;

/// What an accepted item produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Defined(Vec<String>),
    Checked { term: String, ty: String },
    Asserted,
    Evaluated(String),
    Model { name: String, depth: u64 },
}

/// A `Model` item: a judgment together with its requested depth.
#[derive(Clone, Debug)]
pub struct ModelRequest {
    pub judgment: Judgment,
    pub depth: u64,
}

/// The context grown by accepted items, and the judgments they established.
pub struct Session {
    pub ctx: Context,
    pub cfg: ReductionConfig,
    /// `Γ ⊢ t : A` for every accepted definition and typed `Check`.
    pub judgments: Vec<Judgment>,
    pub models: Vec<ModelRequest>,
}

impl Session {
    pub fn new(cfg: ReductionConfig) -> Self {
        Session { ctx: Context::new(), cfg, judgments: Vec::new(), models: Vec::new() }
    }

    fn elab(&self) -> Elaborator {
        Elaborator::new(self.ctx.clone(), self.cfg)
    }

    fn show(&self, t: &Term) -> String {
        print_in(&self.ctx, t)
    }

    /// Checks one item. On success the context is extended; on failure it is
    /// left unchanged and the diagnostic carries the item's location.
    pub fn run(&mut self, item: &Item) -> Result<Outcome, Diagnostic> {
        self.run_inner(item).map_err(|d| d.at(item.loc))
    }

    fn define(&mut self, n: &str, body: Term, ty: Term) -> KResult<()> {
        let judgment = Judgment { name: n.to_string(), ctx: self.ctx.clone(), term: body.clone(), ty: ty.clone() };
        self.ctx = kernel::extend(&self.ctx, Entry::Def { name: name(n), body, ty }, self.cfg)?;
        self.judgments.push(judgment);
        Ok(())
    }

    fn run_inner(&mut self, item: &Item) -> KResult<Outcome> {
        match &item.kind {
            ItemKind::Inductive(specs) => {
                let block = self.elab().inductive(specs)?;
                self.ctx = kernel::extend(&self.ctx, Entry::Ind(Arc::new(block)), self.cfg)?;
                Ok(Outcome::Defined(item.introduced_names().into_iter().map(String::from).collect()))
            }
            ItemKind::Definition { name, binders, ty, body } => {
                let (body, ty) = self.elab().definition(binders, ty.as_ref(), body)?;
                let ty = match ty {
                    Some(t) => t,
                    None => kernel::infer(&self.ctx, &body, self.cfg)?,
                };
                self.define(name, body, ty)?;
                Ok(Outcome::Defined(vec![name.clone()]))
            }
            ItemKind::Fixpoint(specs) => {
                let defs = self.elab().fix_defs(specs)?;
                let start = self.ctx.clone();
                let start_judgments = self.judgments.len();
                for (j, d) in defs.iter().enumerate() {
                    let t = Term::fix(j, defs.clone()).lift(j);
                    if let Err(e) = self.define(&d.name, t, d.ty.lift(j)) {
                        self.ctx = start;
                        self.judgments.truncate(start_judgments);
                        return Err(e);
                    }
                }
                Ok(Outcome::Defined(specs.iter().map(|s| s.name.clone()).collect()))
            }
            ItemKind::Check { term, ty } => {
                let mut el = self.elab();
                let t = el.expr(term)?;
                let a = match ty {
                    Some(ty) => {
                        let a = el.expr(ty)?;
                        kernel::check(&self.ctx, &t, &a, self.cfg)?;
                        self.judgments.push(Judgment {
                            name: format!("check@{}:{}", item.loc.line, item.loc.col),
                            ctx: self.ctx.clone(),
                            term: t.clone(),
                            ty: a.clone(),
                        });
                        a
                    }
                    None => kernel::infer(&self.ctx, &t, self.cfg)?,
                };
                Ok(Outcome::Checked { term: self.show(&t), ty: self.show(&a) })
            }
            ItemKind::Assert { lhs, rhs, ty } => {
                let mut el = self.elab();
                let (m, n, a) = (el.expr(lhs)?, el.expr(rhs)?, el.expr(ty)?);
                kernel::judgmental_eq(&self.ctx, &m, &n, &a, self.cfg)?;
                Ok(Outcome::Asserted)
            }
            ItemKind::Eval { term } => {
                let t = self.elab().expr(term)?;
                kernel::infer(&self.ctx, &t, self.cfg)?;
                let v = reduction::normalize(&self.ctx, &t, self.cfg)
                    .map_err(|e| Diagnostic::error("(conv)", e.to_string()))?;
                Ok(Outcome::Evaluated(self.show(&v)))
            }
            ItemKind::Model { name: n, ty, depth } => {
                let mut el = self.elab();
                let t = el.resolve(n, item.loc)?;
                let a = el.expr(ty)?;
                kernel::check(&self.ctx, &t, &a, self.cfg)?;
                let judgment = Judgment { name: n.clone(), ctx: self.ctx.clone(), term: t, ty: a };
                self.models.push(ModelRequest { judgment, depth: *depth });
                Ok(Outcome::Model { name: n.clone(), depth: *depth })
            }
        }
    }

    /// Looks up a definition by name: its body and type in the scope where it was made.
    pub fn definition(&self, n: &str) -> Option<&Judgment> {
        self.judgments.iter().rev().find(|j| j.name == n)
    }
}
