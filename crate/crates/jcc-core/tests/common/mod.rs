#![allow(dead_code)]

use std::sync::Arc;

use jcc_core::reduction::ReductionConfig;
use jcc_core::syntax::{name, Context, Entry, FixDef, InductiveBlock, Term};

pub fn cfg() -> ReductionConfig {
    ReductionConfig::default()
}

pub fn nat_block() -> Arc<InductiveBlock> {
    Arc::new(InductiveBlock::new(
        0,
        vec![(name("nat"), Term::ty(0))],
        vec![(name("O"), Term::Rec(0)), (name("S"), Term::arrow(Term::Rec(0), Term::Rec(0)))],
    ))
}

pub struct Nat {
    pub block: Arc<InductiveBlock>,
}

impl Nat {
    pub fn ty(&self) -> Term {
        Term::Ind(self.block.clone(), 0)
    }
    pub fn o(&self) -> Term {
        Term::Ind(self.block.clone(), 1)
    }
    pub fn s(&self) -> Term {
        Term::Ind(self.block.clone(), 2)
    }
    pub fn num(&self, n: usize) -> Term {
        (0..n).fold(self.o(), |t, _| Term::app(self.s(), t))
    }
    /// `fix plus / 1 : nat -> nat -> nat := fun n m => case n ...`
    pub fn plus(&self) -> Term {
        let nat = self.ty();
        let motive = Term::lam("_", nat.clone(), nat.clone());
        let succ =
            Term::lam("p", nat.clone(), Term::app(self.s(), Term::apps(Term::var(3), [Term::var(0), Term::var(1)])));
        let body = Term::lam(
            "n",
            nat.clone(),
            Term::lam("m", nat.clone(), Term::case(Term::var(1), motive, vec![Term::var(0), succ])),
        );
        Term::fix(
            0,
            vec![FixDef {
                name: name("plus"),
                rec_arg: 0,
                ty: Term::arrow(nat.clone(), Term::arrow(nat.clone(), nat)),
                body,
            }],
        )
    }

    /// `fix plus / 2 : nat -> nat -> nat := fun m n => case n ...`, recursing on `n`.
    pub fn plus_r(&self) -> Term {
        let nat = self.ty();
        let motive = Term::lam("_", nat.clone(), nat.clone());
        let succ =
            Term::lam("p", nat.clone(), Term::app(self.s(), Term::apps(Term::var(3), [Term::var(2), Term::var(0)])));
        let body = Term::lam(
            "m",
            nat.clone(),
            Term::lam("n", nat.clone(), Term::case(Term::var(0), motive, vec![Term::var(1), succ])),
        );
        Term::fix(
            0,
            vec![FixDef {
                name: name("plus"),
                rec_arg: 1,
                ty: Term::arrow(nat.clone(), Term::arrow(nat.clone(), nat)),
                body,
            }],
        )
    }
}

pub fn nat_ctx() -> (Context, Nat) {
    let block = nat_block();
    let mut ctx = Context::new();
    ctx.push(Entry::Ind(block.clone()));
    (ctx, Nat { block })
}

/// `tree A` / `forest A` with `node`, `emptyf`, `consf`.
pub fn tree_forest_block() -> Arc<InductiveBlock> {
    let ty0 = Term::ty(0);
    let arity = Term::pi("A", ty0.clone(), ty0.clone());
    let tree = |a: usize| Term::app(Term::Rec(0), Term::var(a));
    let forest = |a: usize| Term::app(Term::Rec(1), Term::var(a));
    Arc::new(InductiveBlock::new(
        1,
        vec![(name("tree"), arity.clone()), (name("forest"), arity)],
        vec![
            (name("node"), Term::pi("A", ty0.clone(), Term::arrow(Term::var(0), Term::arrow(forest(0), tree(0))))),
            (name("emptyf"), Term::pi("A", ty0.clone(), forest(0))),
            (name("consf"), Term::pi("A", ty0, Term::arrow(tree(0), Term::arrow(forest(0), forest(0))))),
        ],
    ))
}
