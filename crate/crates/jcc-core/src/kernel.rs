//! The typing judgment: well-formed contexts, inference and checking,
//! admission of inductive blocks and the elimination relation `C`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::diag::Diagnostic;
use crate::guard;
use crate::pretty::print_in;
use crate::reduction::{Reducer, ReductionConfig, ReductionError};
use crate::syntax::{
    alpha_eq, block_eq, instantiate, mentions_rec, replace_ind_names, shift, Context, Entry, FixDef, InductiveBlock,
    Name, Sort, Term,
};

pub type KResult<T> = Result<T, Diagnostic>;

/// The relation `P(s1, s2, s3)` of the product rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductRule {
    pub s1: Sort,
    pub s2: Sort,
    pub s3: Sort,
}

impl ProductRule {
    pub fn holds(&self) -> bool {
        match (self.s1, self.s2, self.s3) {
            (_, Sort::Prop, Sort::Prop) => true,
            (Sort::Type(i), Sort::Type(j), Sort::Type(k)) => k >= i.max(j),
            _ => false,
        }
    }
}

/// A query `C(d q : A ; B)`.
#[derive(Clone, Debug)]
pub struct ElimQuery {
    pub block: Arc<InductiveBlock>,
    pub ind: usize,
    pub args: Vec<Term>,
    pub arity: Term,
    pub motive_type: Term,
}

/// The least `s3` with `P(s1, s2, s3)`, lifting a `Prop` domain to `Type0`.
pub fn product_sort(s1: Sort, s2: Sort) -> Sort {
    match (s1, s2) {
        (_, Sort::Prop) => Sort::Prop,
        (Sort::Type(i), Sort::Type(j)) => Sort::Type(i.max(j)),
        (Sort::Prop, Sort::Type(j)) => Sort::Type(j),
    }
}

fn fuel(e: ReductionError) -> Diagnostic {
    Diagnostic::error("(conv)", format!("{}", e))
}

/// Type checker state: a context extended while descending under binders.
pub(crate) struct Tc {
    pub ctx: Context,
    pub cfg: ReductionConfig,
}

impl Tc {
    pub fn new(ctx: &Context, cfg: ReductionConfig) -> Self {
        Tc { ctx: ctx.clone(), cfg }
    }

    fn red(&self) -> Reducer<'_> {
        Reducer::new(&self.ctx, self.cfg)
    }

    pub fn whnf(&self, t: &Term) -> KResult<Term> {
        self.red().whnf(t).map_err(fuel)
    }

    pub fn whnf_in(&self, t: &Term, k: usize) -> KResult<Term> {
        self.red().whnf_in(t, k).map_err(fuel)
    }

    pub fn normalize(&self, t: &Term) -> KResult<Term> {
        self.red().normalize(t).map_err(fuel)
    }

    pub fn conv_in(&self, a: &Term, b: &Term, k: usize) -> KResult<bool> {
        self.red().conv_in(a, b, k).map_err(fuel)
    }

    pub fn subtype(&self, a: &Term, b: &Term) -> KResult<bool> {
        self.red().subtype_in(a, b, 0).map_err(fuel)
    }

    pub fn show(&self, t: &Term) -> String {
        print_in(&self.ctx, t)
    }

    fn with<T>(&mut self, e: Entry, f: impl FnOnce(&mut Self) -> KResult<T>) -> KResult<T> {
        let len = self.ctx.len();
        self.ctx.push(e);
        let r = f(self);
        self.ctx.truncate(len);
        r
    }

    pub fn infer_sort(&mut self, t: &Term, rule: &str) -> KResult<Sort> {
        let ty = self.infer(t)?;
        match self.whnf(&ty)? {
            Term::Sort(s) => Ok(s),
            other => Err(Diagnostic::error(
                rule,
                format!("`{}` has type `{}`, which is not a sort", self.show(t), self.show(&other)),
            )),
        }
    }

    pub fn find_block(&self, b: &Arc<InductiveBlock>) -> bool {
        self.ctx.blocks().iter().any(|c| block_eq(c, b))
    }

    pub fn infer(&mut self, t: &Term) -> KResult<Term> {
        match t {
            Term::Sort(Sort::Prop) => Ok(Term::ty(0)),
            Term::Sort(Sort::Type(i)) => Ok(Term::ty(i + 1)),
            Term::Var(i) => match self.ctx.var(*i) {
                Some(v) => Ok(v.ty),
                None => Err(Diagnostic::error("(var)", format!("unbound variable #{}", i))),
            },
            Term::Rec(i) => Err(Diagnostic::error("(var)", format!("block-local name #{} outside its block", i))),
            Term::Pi(n, a, b) => {
                let s1 = self.infer_sort(a, "(Π)")?;
                let s2 =
                    self.with(Entry::Assum { name: n.clone(), ty: (**a).clone() }, |tc| tc.infer_sort(b, "(Π)"))?;
                Ok(Term::Sort(product_sort(s1, s2)))
            }
            Term::Lam(n, a, m) => {
                self.infer_sort(a, "(λ)")?;
                let b = self.with(Entry::Assum { name: n.clone(), ty: (**a).clone() }, |tc| {
                    let b = tc.infer(m)?;
                    tc.infer_sort(&b, "(λ)")?;
                    Ok(b)
                })?;
                Ok(Term::Pi(n.clone(), a.clone(), Arc::new(b)))
            }
            Term::Let(n, d, ann, b) => {
                let a = match ann {
                    Some(a) => {
                        self.infer_sort(a, "(let)")?;
                        self.check_rule(d, a, "(let)")?;
                        (**a).clone()
                    }
                    None => self.infer(d)?,
                };
                let u = self.with(Entry::Def { name: n.clone(), body: (**d).clone(), ty: a }, |tc| tc.infer(b))?;
                Ok(instantiate(&u, d))
            }
            Term::App(f, a) => {
                let tf = self.infer(f)?;
                match self.whnf(&tf)? {
                    Term::Pi(_, dom, cod) => {
                        self.check_rule(a, &dom, "(app)")?;
                        Ok(instantiate(&cod, a))
                    }
                    other => Err(Diagnostic::error(
                        "(app)",
                        format!("`{}` has type `{}`, which is not a product", self.show(f), self.show(&other)),
                    )),
                }
            }
            Term::Ind(b, x) => {
                let rule = if b.is_ind(*x) { "(ind-type)" } else { "(ind-const)" };
                if *x >= b.name_count() {
                    return Err(Diagnostic::error(rule, "name index out of range"));
                }
                if !self.find_block(b) {
                    return Err(Diagnostic::error(
                        rule,
                        format!("inductive block of `{}` is not in the context", b.name_of(*x)),
                    ));
                }
                Ok(replace_ind_names(b.decl_of(*x), b))
            }
            Term::Case(e, q, hs) => self.infer_case(e, q, hs),
            Term::Fix(i, defs) => self.infer_fix(*i, defs),
        }
    }

    pub fn check_rule(&mut self, t: &Term, a: &Term, rule: &str) -> KResult<()> {
        let ty = self.infer(t)?;
        if self.subtype(&ty, a)? {
            return Ok(());
        }
        let rule = if matches!(t, Term::Sort(_)) && matches!(a, Term::Sort(_)) { "(ax)" } else { rule };
        let got = self.normalize(&ty)?;
        let want = self.normalize(a)?;
        Err(Diagnostic::error(
            rule,
            format!("`{}` has type `{}` but `{}` was expected", self.show(t), self.show(&got), self.show(&want)),
        ))
    }

    pub fn check(&mut self, t: &Term, a: &Term) -> KResult<()> {
        self.check_rule(t, a, "(conv)")
    }

    /// Instantiates the leading products of `ty` with `args`.
    pub fn instantiate_pis(&self, ty: &Term, args: &[Term]) -> Option<Term> {
        let mut ty = ty.clone();
        for a in args {
            match self.whnf(&ty).ok()? {
                Term::Pi(_, _, b) => ty = instantiate(&b, a),
                _ => return None,
            }
        }
        Some(ty)
    }

    /// Splits `ty` (under `k` local binders) into its product telescope and conclusion.
    pub fn telescope(&self, ty: &Term, k: usize) -> KResult<(Vec<(Name, Term)>, Term)> {
        let mut binders = Vec::new();
        let mut t = self.whnf_in(ty, k)?;
        while let Term::Pi(n, a, b) = t {
            binders.push((n.clone(), (*a).clone()));
            t = self.whnf_in(&b, k + binders.len())?;
        }
        Ok((binders, t))
    }

    fn infer_case(&mut self, e: &Term, q: &Term, hs: &[Term]) -> KResult<Term> {
        let te = self.infer(e)?;
        let te = self.whnf(&te)?;
        let (head, args) = te.spine();
        let (block, d) = match head {
            Term::Ind(b, d) if b.is_ind(*d) => (b.clone(), *d),
            _ => {
                return Err(Diagnostic::error(
                    "(case) scrutinee",
                    format!("`{}` has type `{}`, which is not an inductive type", self.show(e), self.show(&te)),
                ))
            }
        };
        let n = block.params();
        let args: Vec<Term> = args.into_iter().cloned().collect();
        if args.len() < n {
            return Err(Diagnostic::error("(case) scrutinee", "inductive type applied to too few parameters"));
        }
        let (p, u) = args.split_at(n);
        let arity = replace_ind_names(&block.inds()[d].1, &block);
        let arity = self
            .instantiate_pis(&arity, p)
            .ok_or_else(|| Diagnostic::error("(case) scrutinee", "arity has fewer products than parameters"))?;
        let b = self.infer(q)?;
        let query = ElimQuery { block: block.clone(), ind: d, args: p.to_vec(), arity, motive_type: b };
        if !self.elim_ok(&query, 0)? {
            return Err(Diagnostic::error(
                "(case) elimination",
                format!(
                    "motive `{}` of type `{}` violates the elimination constraint for `{}`",
                    self.show(q),
                    self.show(&query.motive_type),
                    block.name_of(d)
                ),
            ));
        }
        let cons = block.cons_of(d);
        if cons.len() != hs.len() {
            return Err(Diagnostic::error(
                "(case) branch count",
                format!("`{}` has {} constructors but {} branches were given", block.name_of(d), cons.len(), hs.len()),
            ));
        }
        for (h, &k) in hs.iter().zip(cons.iter()) {
            let expected = self.branch_type(&block, k, p, q)?;
            self.check_rule(h, &expected, "(case) branch")?;
        }
        let mut res = q.clone();
        for x in u {
            res = Term::app(res, x.clone());
        }
        Ok(Term::app(res, e.clone()))
    }

    /// `Π v:V_k. Q w_k (c_k p v)` for constructor `k` (0-based) and parameters `p`.
    pub fn branch_type(&self, block: &Arc<InductiveBlock>, k: usize, p: &[Term], q: &Term) -> KResult<Term> {
        let cty = replace_ind_names(&block.cons()[k].1, block);
        let cty = self
            .instantiate_pis(&cty, p)
            .ok_or_else(|| Diagnostic::error("(case) branch", "constructor has fewer products than parameters"))?;
        let (binders, concl) = self.telescope(&cty, 0)?;
        let m = binders.len();
        let (_, cargs) = concl.spine();
        let w: Vec<Term> = cargs.into_iter().skip(block.params()).cloned().collect();
        let con = Term::Ind(block.clone(), block.con_index(k)).lift(m);
        let con_app = Term::apps(Term::apps(con, p.iter().map(|x| x.lift(m))), (0..m).rev().map(Term::Var));
        let mut body = Term::apps(q.lift(m), w);
        body = Term::app(body, con_app);
        for (n, a) in binders.into_iter().rev() {
            body = Term::Pi(n, Arc::new(a), Arc::new(body));
        }
        Ok(body)
    }

    /// `C(d q : A ; B)`, with `k` local binders introduced by the product clause.
    pub fn elim_ok(&self, qy: &ElimQuery, k: usize) -> KResult<bool> {
        let a = self.whnf_in(&qy.arity, k)?;
        let b = self.whnf_in(&qy.motive_type, k)?;
        match (a, b) {
            (Term::Pi(_, u, a2), Term::Pi(_, u2, b2)) => {
                if !self.conv_in(&u, &u2, k)? {
                    return Ok(false);
                }
                let mut args: Vec<Term> = qy.args.iter().map(|x| x.lift(1)).collect();
                args.push(Term::Var(0));
                let inner = ElimQuery {
                    block: qy.block.clone(),
                    ind: qy.ind,
                    args,
                    arity: (*a2).clone(),
                    motive_type: (*b2).clone(),
                };
                self.elim_ok(&inner, k + 1)
            }
            (Term::Sort(sd), Term::Pi(_, t, s)) => {
                let dq = Term::apps(Term::Ind(qy.block.clone(), qy.ind), qy.args.iter().cloned());
                if !self.conv_in(&t, &dq, k)? {
                    return Ok(false);
                }
                let s = match self.whnf_in(&s, k + 1)? {
                    Term::Sort(s) => s,
                    _ => return Ok(false),
                };
                Ok(match (sd, s) {
                    (Sort::Prop, Sort::Prop) => true,
                    (Sort::Prop, Sort::Type(_)) => self.small_singleton(qy, k)?,
                    (Sort::Type(_), _) => true,
                })
            }
            _ => Ok(false),
        }
    }

    /// The inductive is empty or has one constructor whose non-parameter
    /// arguments all have sort `Prop`.
    fn small_singleton(&self, qy: &ElimQuery, k: usize) -> KResult<bool> {
        let cons = qy.block.cons_of(qy.ind);
        if cons.len() > 1 {
            return Ok(false);
        }
        let Some(&c) = cons.first() else { return Ok(true) };
        let n = qy.block.params();
        let mut tc = Tc { ctx: self.ctx.clone(), cfg: self.cfg };
        // The parameters were read under `k` local binders; bind them opaquely.
        for i in 0..k {
            tc.ctx.push_assum(crate::syntax::name("_"), Term::Var(i));
        }
        let p: Vec<Term> = qy.args.iter().take(n).cloned().collect();
        let cty = replace_ind_names(&qy.block.cons()[c].1, &qy.block);
        let Some(cty) = tc.instantiate_pis(&cty, &p) else { return Ok(false) };
        let (binders, _) = tc.telescope(&cty, 0)?;
        for (name, a) in binders {
            if tc.infer_sort(&a, "(case) elimination").ok() != Some(Sort::Prop) {
                return Ok(false);
            }
            tc.ctx.push_assum(name, a);
        }
        Ok(true)
    }

    fn infer_fix(&mut self, i: usize, defs: &Arc<[FixDef]>) -> KResult<Term> {
        if i >= defs.len() {
            return Err(Diagnostic::error("(fix)", "fix index out of range"));
        }
        for d in defs.iter() {
            self.infer_sort(&d.ty, "(fix)")?;
        }
        let m = defs.len();
        let len = self.ctx.len();
        for (j, d) in defs.iter().enumerate() {
            self.ctx.push_assum(d.name.clone(), d.ty.lift(j));
        }
        let r = (|| {
            for d in defs.iter() {
                self.check_rule(&d.body, &d.ty.lift(m), "(fix)")?;
            }
            Ok(())
        })();
        self.ctx.truncate(len);
        r?;
        guard::check_fix_block(&self.ctx, defs, self.cfg)?;
        Ok(defs[i].ty.clone())
    }

    // -----------------------------------------------------------------------
    // Inductive blocks

    pub fn is_arity(&self, a: &Term) -> KResult<Option<Sort>> {
        let (_, concl) = self.telescope(a, 0)?;
        Ok(concl.as_sort())
    }

    pub fn admit_inductive(&mut self, block: &Arc<InductiveBlock>) -> KResult<()> {
        let ninds = block.inds().len();
        let n = block.params();
        if ninds == 0 {
            return Err(Diagnostic::error("(ind-wf) names", "a block declares at least one inductive type"));
        }
        // Names: mutually distinct and new.
        let taken = self.ctx.declared_names();
        for i in 0..block.name_count() {
            let x = block.name_of(i);
            if (0..i).any(|j| block.name_of(j) == x) || taken.contains(x) {
                return Err(Diagnostic::error("(ind-wf) names", format!("name `{}` is not fresh", x)));
            }
        }
        // Arities.
        let mut sorts = Vec::new();
        for (d, a) in block.inds() {
            if mentions_rec(a) {
                return Err(Diagnostic::error("(ind-wf) arity", format!("the type of `{}` mentions the block", d)));
            }
            let s = self.infer_sort(a, "(ind-wf) typing")?;
            match self.is_arity(a)? {
                None => {
                    return Err(Diagnostic::error(
                        "(ind-wf) arity",
                        format!("the type `{}` of `{}` is not an arity", self.show(a), d),
                    ))
                }
                Some(Sort::Prop) => {
                    return Err(Diagnostic::error(
                        "(ind-wf) Prop arity",
                        format!("`{}` is an arity ending in Prop; inductive types of sort Prop are not allowed", d),
                    ))
                }
                Some(_) => {}
            }
            sorts.push(s);
        }
        // Shared parameters.
        let first = self.telescope(&block.inds()[0].1, 0)?.0;
        if first.len() < n {
            return Err(Diagnostic::error(
                "(ind-wf) parameters",
                format!("`{}` has fewer than {} products", block.inds()[0].0, n),
            ));
        }
        for i in 0..block.name_count() {
            let (tele, _) = self.telescope(block.decl_of(i), 0)?;
            let ok = tele.len() >= n && (0..n).all(|j| alpha_eq(&tele[j].1, &first[j].1));
            if !ok {
                return Err(Diagnostic::error(
                    "(ind-wf) parameters",
                    format!("`{}` does not start with the {} shared parameter products", block.name_of(i), n),
                ));
            }
        }
        let arity_len: Vec<usize> =
            block.inds().iter().map(|(_, a)| self.telescope(a, 0).map(|t| t.0.len() - n)).collect::<KResult<_>>()?;
        // Constructors: shape of the conclusion, applied occurrences, positivity.
        for (c, t) in block.cons() {
            let (tele, concl) = syntactic_telescope(t);
            let q = tele.len();
            let (h, args) = concl.spine();
            let d = match h {
                Term::Rec(d) if *d < ninds => *d,
                _ => {
                    return Err(Diagnostic::error(
                        "(ind-wf) conclusion",
                        format!("the type of constructor `{}` does not end in an inductive of the block", c),
                    ))
                }
            };
            if args.len() != n + arity_len[d] {
                return Err(Diagnostic::error(
                    "(ind-wf) conclusion",
                    format!("the conclusion of `{}` applies `{}` to {} arguments", c, block.name_of(d), args.len()),
                ));
            }
            for (j, a) in args.iter().take(n).enumerate() {
                if !matches!(a, Term::Var(v) if *v == q - 1 - j) {
                    return Err(Diagnostic::error(
                        "(ind-wf) conclusion",
                        format!("the conclusion of `{}` does not pass the parameters unchanged", c),
                    ));
                }
            }
            if q < n {
                return Err(Diagnostic::error("(ind-wf) parameters", format!("`{}` lacks parameter products", c)));
            }
            for a in args.iter().skip(n) {
                if mentions_rec(a) {
                    return Err(Diagnostic::error(
                        "(ind-wf) positivity",
                        format!("an index of the conclusion of `{}` mentions the block", c),
                    ));
                }
            }
            for (depth, (_, a)) in tele.iter().enumerate() {
                check_applied(a, depth, n, q, &arity_len, ninds, c)?;
                if !strictly_positive(a, ninds) {
                    return Err(Diagnostic::error(
                        "(ind-wf) positivity",
                        format!("the block does not occur strictly positively in an argument of `{}`", c),
                    ));
                }
            }
            if tele.iter().take(n).any(|(_, a)| mentions_rec(a)) {
                return Err(Diagnostic::error(
                    "(ind-wf) parameters",
                    format!("a parameter type of `{}` mentions the block", c),
                ));
            }
        }
        // Typing of constructors in Γ, Δ_I with sort s_c = s_d.
        let len = self.ctx.len();
        for (j, (d, a)) in block.inds().iter().enumerate() {
            self.ctx.push_assum(d.clone(), a.lift(j));
        }
        let r = (|| {
            for (k, (c, t)) in block.cons().iter().enumerate() {
                let d = block.con_target(k).unwrap();
                let opened = open_block(t, ninds);
                let s = self.infer_sort(&opened, "(ind-wf) typing")?;
                if !crate::reduction::sort_le(s, sorts[d]) {
                    return Err(Diagnostic::error(
                        "(ind-wf) constructor sort",
                        format!("the type of `{}` lives in {} but `{}` lives in {}", c, s, block.name_of(d), sorts[d]),
                    ));
                }
            }
            Ok(())
        })();
        self.ctx.truncate(len);
        r
    }
}

/// Products of `t` read without reduction.
pub(crate) fn syntactic_telescope(t: &Term) -> (Vec<(Name, Term)>, Term) {
    let mut tele = Vec::new();
    let mut t = t;
    while let Term::Pi(n, a, b) = t {
        tele.push((n.clone(), (**a).clone()));
        t = b;
    }
    (tele, t.clone())
}

/// Rewrites block-local inductive names into variables bound just outside `t`
/// (the first inductive outermost), shifting the other free variables.
fn open_block(t: &Term, ninds: usize) -> Term {
    fn go(t: &Term, k: usize, ninds: usize) -> Term {
        match t {
            Term::Rec(i) if *i < ninds => Term::Var(k + ninds - 1 - i),
            Term::Var(i) if *i >= k => Term::Var(i + ninds),
            Term::Var(_) | Term::Sort(_) | Term::Rec(_) => t.clone(),
            Term::Pi(n, a, b) => Term::Pi(n.clone(), Arc::new(go(a, k, ninds)), Arc::new(go(b, k + 1, ninds))),
            Term::Lam(n, a, b) => Term::Lam(n.clone(), Arc::new(go(a, k, ninds)), Arc::new(go(b, k + 1, ninds))),
            Term::Let(n, d, ty, b) => Term::Let(
                n.clone(),
                Arc::new(go(d, k, ninds)),
                ty.as_ref().map(|ty| Arc::new(go(ty, k, ninds))),
                Arc::new(go(b, k + 1, ninds)),
            ),
            Term::App(f, a) => Term::App(Arc::new(go(f, k, ninds)), Arc::new(go(a, k, ninds))),
            Term::Case(e, q, hs) => Term::Case(
                Arc::new(go(e, k, ninds)),
                Arc::new(go(q, k, ninds)),
                hs.iter().map(|h| go(h, k, ninds)).collect(),
            ),
            Term::Ind(..) => shift(t, ninds as isize, k),
            Term::Fix(i, defs) => {
                let m = defs.len();
                let defs: Vec<FixDef> = defs
                    .iter()
                    .map(|d| FixDef {
                        name: d.name.clone(),
                        rec_arg: d.rec_arg,
                        ty: go(&d.ty, k, ninds),
                        body: go(&d.body, k + m, ninds),
                    })
                    .collect();
                Term::fix(*i, defs)
            }
        }
    }
    go(t, 0, ninds)
}

/// Every occurrence of an inductive name is `d p u`: parameters that do not
/// mention the block, then exactly the arity's number of further arguments. `depth` is the
/// number of constructor binders enclosing `a`.
fn check_applied(
    a: &Term,
    depth: usize,
    n: usize,
    _q: usize,
    arity_len: &[usize],
    ninds: usize,
    c: &Name,
) -> KResult<()> {
    fn go(t: &Term, n: usize, arity_len: &[usize], ninds: usize, c: &Name) -> KResult<()> {
        let err = |msg: &str| {
            Err(Diagnostic::error("(ind-wf) applied occurrence", format!("{} in constructor `{}`", msg, c)))
        };
        let (h, args) = t.spine();
        if let Term::Rec(d) = h {
            if *d >= ninds {
                return err("constructor name used in a constructor type");
            }
            if args.len() != n + arity_len[*d] {
                return err("inductive name not fully applied");
            }
            // Parameters may be instantiated differently from the conclusion
            // (`titi nat` inside a constructor of `titi x`), but not with the block.
            if args.iter().take(n).any(|a| mentions_ind_rec(a, ninds)) {
                return err("inductive name used inside a parameter");
            }
            for a in args.iter().skip(n) {
                go(a, n, arity_len, ninds, c)?;
            }
            return Ok(());
        }
        match t {
            Term::Var(_) | Term::Sort(_) | Term::Ind(..) => Ok(()),
            Term::Rec(_) => unreachable!(),
            Term::Pi(_, a, b) | Term::Lam(_, a, b) => {
                go(a, n, arity_len, ninds, c)?;
                go(b, n, arity_len, ninds, c)
            }
            Term::Let(_, d, ty, b) => {
                go(d, n, arity_len, ninds, c)?;
                if let Some(ty) = ty {
                    go(ty, n, arity_len, ninds, c)?;
                }
                go(b, n, arity_len, ninds, c)
            }
            Term::App(f, a) => {
                go(f, n, arity_len, ninds, c)?;
                go(a, n, arity_len, ninds, c)
            }
            Term::Case(e, q, hs) => {
                go(e, n, arity_len, ninds, c)?;
                go(q, n, arity_len, ninds, c)?;
                hs.iter().try_for_each(|h| go(h, n, arity_len, ninds, c))
            }
            Term::Fix(_, defs) => defs.iter().try_for_each(|d| {
                go(&d.ty, n, arity_len, ninds, c)?;
                go(&d.body, n, arity_len, ninds, c)
            }),
        }
    }
    if depth < n {
        // Parameter types may not mention the block at all; reported elsewhere.
        return Ok(());
    }
    go(a, n, arity_len, ninds, c)
}

/// The block's inductive names occur strictly positively in `a`: not at all,
/// or `a ≡ Π y:A'. x B` with no occurrence in `A'` or `B`.
pub(crate) fn strictly_positive(a: &Term, ninds: usize) -> bool {
    let mentions = |t: &Term| mentions_ind_rec(t, ninds);
    if !mentions(a) {
        return true;
    }
    let (tele, concl) = syntactic_telescope(a);
    if tele.iter().any(|(_, t)| mentions(t)) {
        return false;
    }
    let (h, args) = concl.spine();
    matches!(h, Term::Rec(d) if *d < ninds) && !args.iter().any(|t| mentions(t))
}

fn mentions_ind_rec(t: &Term, ninds: usize) -> bool {
    match t {
        Term::Rec(i) => *i < ninds,
        Term::Var(_) | Term::Sort(_) | Term::Ind(..) => false,
        Term::Pi(_, a, b) | Term::Lam(_, a, b) | Term::App(a, b) => {
            mentions_ind_rec(a, ninds) || mentions_ind_rec(b, ninds)
        }
        Term::Let(_, d, ty, b) => {
            mentions_ind_rec(d, ninds)
                || ty.as_ref().is_some_and(|ty| mentions_ind_rec(ty, ninds))
                || mentions_ind_rec(b, ninds)
        }
        Term::Case(e, q, hs) => {
            mentions_ind_rec(e, ninds) || mentions_ind_rec(q, ninds) || hs.iter().any(|h| mentions_ind_rec(h, ninds))
        }
        Term::Fix(_, defs) => defs.iter().any(|d| mentions_ind_rec(&d.ty, ninds) || mentions_ind_rec(&d.body, ninds)),
    }
}

// ---------------------------------------------------------------------------
// Public API

/// Checks every entry of `ctx` left to right.
pub fn wf_context(ctx: &Context, cfg: ReductionConfig) -> KResult<()> {
    let mut tc = Tc::new(&Context::new(), cfg);
    for e in ctx.entries() {
        add_entry(&mut tc, e.clone())?;
    }
    Ok(())
}

/// Checks `e` in the context held by `tc` and appends it.
pub(crate) fn add_entry(tc: &mut Tc, e: Entry) -> KResult<()> {
    match &e {
        Entry::Assum { name, ty } => {
            fresh(&tc.ctx, name)?;
            tc.infer_sort(ty, "(wf)")?;
        }
        Entry::Def { name, body, ty } => {
            fresh(&tc.ctx, name)?;
            tc.infer_sort(ty, "(wf)")?;
            tc.check(body, ty)?;
        }
        Entry::Ind(b) => tc.admit_inductive(b)?,
    }
    tc.ctx.push(e);
    Ok(())
}

fn fresh(ctx: &Context, n: &Name) -> KResult<()> {
    if ctx.declared_names().contains(n) {
        Err(Diagnostic::error("(wf)", format!("`{}` is already declared", n)))
    } else {
        Ok(())
    }
}

/// Extends a well-formed context by one checked entry.
pub fn extend(ctx: &Context, e: Entry, cfg: ReductionConfig) -> KResult<Context> {
    let mut tc = Tc::new(ctx, cfg);
    add_entry(&mut tc, e)?;
    Ok(tc.ctx)
}

pub fn infer(ctx: &Context, t: &Term, cfg: ReductionConfig) -> KResult<Term> {
    Tc::new(ctx, cfg).infer(t)
}

pub fn check(ctx: &Context, t: &Term, a: &Term, cfg: ReductionConfig) -> KResult<()> {
    let mut tc = Tc::new(ctx, cfg);
    tc.infer_sort(a, "(conv)")?;
    tc.check(t, a)
}

pub fn is_arity(ctx: &Context, a: &Term, cfg: ReductionConfig) -> Option<Sort> {
    Tc::new(ctx, cfg).is_arity(a).ok().flatten()
}

pub fn admit_inductive(ctx: &Context, block: &Arc<InductiveBlock>, cfg: ReductionConfig) -> KResult<()> {
    Tc::new(ctx, cfg).admit_inductive(block)
}

pub fn check_elim_constraint(ctx: &Context, q: &ElimQuery, cfg: ReductionConfig) -> bool {
    Tc::new(ctx, cfg).elim_ok(q, 0).unwrap_or(false)
}

/// `Γ ⊢ m = n : A`.
pub fn judgmental_eq(ctx: &Context, m: &Term, n: &Term, a: &Term, cfg: ReductionConfig) -> KResult<()> {
    let mut tc = Tc::new(ctx, cfg);
    tc.infer_sort(a, "(conv)")?;
    tc.check(m, a)?;
    tc.check(n, a)?;
    if tc.conv_in(m, n, 0)? {
        Ok(())
    } else {
        let (x, y) = (tc.normalize(m)?, tc.normalize(n)?);
        Err(Diagnostic::error("(conv)", format!("`{}` and `{}` are not judgmentally equal", tc.show(&x), tc.show(&y))))
    }
}

/// A type in whnf `d p u` with `d` an inductive of `block`.
#[derive(Clone, Debug)]
pub struct InductiveView {
    pub block: Arc<InductiveBlock>,
    pub ind: usize,
    pub params: Vec<Term>,
    pub indices: Vec<Term>,
    /// `U` in the arity `Π p:P. Π u:U. s`, instantiated at `params`.
    pub index_telescope: Vec<(Name, Term)>,
}

/// Reduces `ty` to `d p u`, or `None` when it is not an inductive type.
pub fn inductive_view(ctx: &Context, ty: &Term, cfg: ReductionConfig) -> KResult<Option<InductiveView>> {
    let tc = Tc::new(ctx, cfg);
    let t = tc.whnf(ty)?;
    let (head, args) = t.spine();
    let (block, ind) = match head {
        Term::Ind(b, d) if b.is_ind(*d) => (b.clone(), *d),
        _ => return Ok(None),
    };
    let n = block.params();
    if args.len() < n {
        return Ok(None);
    }
    let args: Vec<Term> = args.into_iter().cloned().collect();
    let arity = replace_ind_names(&block.inds()[ind].1, &block);
    let Some(arity) = tc.instantiate_pis(&arity, &args[..n]) else { return Ok(None) };
    let (index_telescope, _) = tc.telescope(&arity, 0)?;
    Ok(Some(InductiveView { block, ind, params: args[..n].to_vec(), indices: args[n..].to_vec(), index_telescope }))
}

/// The argument telescope `v:V_k` of constructor `k` (0-based) at parameters `p`.
pub fn constructor_fields(
    ctx: &Context,
    block: &Arc<InductiveBlock>,
    k: usize,
    p: &[Term],
    cfg: ReductionConfig,
) -> KResult<Vec<(Name, Term)>> {
    let tc = Tc::new(ctx, cfg);
    let cty = replace_ind_names(&block.cons()[k].1, block);
    let cty = tc
        .instantiate_pis(&cty, p)
        .ok_or_else(|| Diagnostic::error("(case) branch", "constructor has fewer products than parameters"))?;
    Ok(tc.telescope(&cty, 0)?.0)
}
