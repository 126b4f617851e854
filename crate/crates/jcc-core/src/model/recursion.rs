//! Fix blocks: per-constructor residuals and the rule set `Ψ`.
//!
//! For each function `f_j` and each constructor `c` of the type it recurses
//! on, the body is applied to fresh variables `y…` and to `c p v…`, then
//! ι/β-normalized once with the functions kept opaque. Calling `f_j` on
//! `⟨c+1, z…⟩` interprets that residual with `f…, y…, v…` bound to the fix
//! values, the leading arguments and the components `z…`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::hf::Hf;
use super::interp::{undefined, FixClosure, FixInfo, FunValue, Model, SemValue, Valuation, R};
use super::rules::{FiniteRuleSet, Rule};
use super::{ModelError, Tri};
use crate::kernel::syntactic_telescope;
use crate::syntax::{block_eq, shift, FixDef, Term};

/// `Ψ` tabulated over chosen leading arguments.
pub struct FixRules {
    pub rules: FiniteRuleSet,
    /// True when every recursive-argument domain was enumerated completely.
    pub exact: bool,
    /// Whether conclusions start with the function index (needed when two
    /// functions recurse on the same inductive type).
    pub prefixed: bool,
}

impl FixRules {
    pub fn conclusion(&self, j: usize, xs: &[Hf], rec: &Hf, b: &Hf) -> Hf {
        let head = if self.prefixed { Some(Hf::nat(j)) } else { None };
        Hf::tuple(head.into_iter().chain(xs.iter().cloned()).chain([rec.clone(), b.clone()]))
    }
}

impl Model {
    pub(super) fn fix_closure(&self, defs: &Arc<[FixDef]>, env: &Valuation) -> R<Arc<FixClosure>> {
        let k0 = self.locals(env);
        let m = defs.len();
        let mut info = Vec::with_capacity(m);
        for def in defs.iter() {
            let kj = def.rec_arg;
            let mut r = self.reducer();
            // Walk to the recursive binder.
            let mut ty = Self::fuel(r.whnf_in(&def.ty, k0))?;
            for l in 0..kj {
                match ty {
                    Term::Pi(_, _, b) => ty = Self::fuel(r.whnf_in(&b, k0 + l + 1))?,
                    _ => return undefined("fix type has too few products"),
                }
            }
            let Term::Pi(_, rec_ty, _) = ty else { return undefined("fix type has too few products") };
            let rec_ty = Self::fuel(r.whnf_in(&rec_ty, k0 + kj))?;
            let (block, ind, params) = match rec_ty.spine() {
                (Term::Ind(b, d), args) if b.is_ind(*d) && args.len() >= b.params() => {
                    (b.clone(), *d, args[..b.params()].iter().map(|t| (*t).clone()).collect::<Vec<_>>())
                }
                _ => return undefined("recursive argument is not of an inductive type"),
            };
            let n = block.params();
            let mut residuals = BTreeMap::new();
            for c in block.cons_of(ind) {
                let nv = syntactic_telescope(&block.cons()[c].1).0.len() - n;
                let up = kj + nv;
                // Scope: γ, f…(m), y…(kj), v…(nv).
                let body = def.body.lift(up);
                let ys = (0..kj).map(|l| Term::Var(up - 1 - l));
                let con = Term::apps(Term::Ind(block.clone(), block.con_index(c)), params.iter().cloned());
                let con = shift(&con, m as isize, kj).lift(nv);
                let con = Term::apps(con, (0..nv).map(|l| Term::Var(nv - 1 - l)));
                let applied = Term::apps(Term::apps(body, ys), [con]);
                let res = Self::fuel(r.normalize_in(&applied, k0 + m + up))?;
                residuals.insert(c, (nv, res));
            }
            info.push(FixInfo { block, ind, rec_ty, residuals });
        }
        Ok(Arc::new(FixClosure { defs: defs.clone(), env: env.clone(), info }))
    }

    fn fix_values(fix: &Arc<FixClosure>) -> impl Iterator<Item = SemValue> + '_ {
        (0..fix.defs.len())
            .map(move |j| SemValue::Fun(Arc::new(FunValue::Fix { fix: fix.clone(), index: j, args: Vec::new() })))
    }

    /// The valuation a residual of `f_j` is interpreted in, or `None` when
    /// the recursive argument is not a constructor value of the right type.
    fn residual_env(&self, fix: &Arc<FixClosure>, j: usize, args: &[SemValue]) -> R<Option<(Term, Valuation)>> {
        let info = &fix.info[j];
        let kj = fix.defs[j].rec_arg;
        let (ys, rec) = (&args[..kj], &args[kj]);
        let dom = self.eval(&info.rec_ty, &fix.env.extend(ys.iter().cloned()))?;
        if self.mem(rec, &dom) == Tri::No {
            return Ok(None);
        }
        let Some((tag, zs)) = self.decode_con(rec) else { return Ok(None) };
        let Some((nv, res)) = info.residuals.get(&(tag - 1)) else { return Ok(None) };
        if zs.len() != *nv {
            return Ok(None);
        }
        let env = fix.env.extend(Self::fix_values(fix)).extend(ys.iter().cloned()).extend(zs);
        Ok(Some((res.clone(), env)))
    }

    /// `f_j a… ⟨k, z…⟩` with exactly `rec_arg + 1` arguments.
    pub(super) fn fix_call(&self, fix: &Arc<FixClosure>, j: usize, args: &[SemValue]) -> R<SemValue> {
        let key = args
            .iter()
            .map(|a| match a {
                // Lowering a function tabulates it; not worth it for a key.
                SemValue::Fun(_) => None,
                _ => self.lower(a),
            })
            .collect::<Option<Vec<Hf>>>()
            .map(|hs| (Arc::as_ptr(fix) as usize, j, hs));
        if let Some(hit) = key.as_ref().and_then(|k| self.calls_cache().borrow().get(k).map(|(_, v)| v.clone())) {
            return Ok(hit);
        }
        let v = match self.residual_env(fix, j, args)? {
            Some((res, env)) => self.eval(&res, &env)?,
            None => SemValue::Fin(Hf::empty()),
        };
        if let Some(k) = key {
            self.calls_cache().borrow_mut().insert(k, (fix.clone(), v.clone()));
        }
        Ok(v)
    }

    /// Tabulates `Ψ` for the fix value `f`. `inputs[j]` lists the leading
    /// arguments of `f_j` to use; recursive arguments range over the members
    /// of their inductive family found at the configured depth.
    pub fn build_fix_rules(&self, f: &SemValue, inputs: &[Vec<Vec<SemValue>>]) -> R<FixRules> {
        let SemValue::Fun(fv) = f else { return undefined("not a fix value") };
        let FunValue::Fix { fix, .. } = &**fv else { return undefined("not a fix value") };
        let m = fix.defs.len();
        let prefixed = (0..m).any(|a| {
            (0..a).any(|b| fix.info[a].ind == fix.info[b].ind && block_eq(&fix.info[a].block, &fix.info[b].block))
        });
        let mut out = FixRules { rules: FiniteRuleSet::default(), exact: true, prefixed };
        for (j, xs_list) in inputs.iter().enumerate().take(m) {
            let kj = fix.defs[j].rec_arg;
            for xs in xs_list {
                if xs.len() != kj {
                    return undefined("wrong number of leading arguments");
                }
                let xs_enc = self.lower_list(xs)?;
                let dom = self.eval(&fix.info[j].rec_ty, &fix.env.extend(xs.iter().cloned()))?;
                let (recs, complete) = self.enumerate(&dom)?;
                out.exact &= complete;
                for rec in recs {
                    let mut args = xs.clone();
                    args.push(rec.clone());
                    let Some((res, env)) = self.residual_env(fix, j, &args)? else { continue };
                    let premises = self.call_premises(fix, &res, &env, env.len() - fix.env.len() - m, &out)?;
                    let b = self.eval(&res, &env)?;
                    let (Some(rec_h), Some(b_h)) = (self.lower(&rec), self.lower(&b)) else {
                        return Err(ModelError::BoundExceeded("fix value is not a finite set".into()));
                    };
                    out.rules.rules.push(Rule { premises, conclusion: out.conclusion(j, &xs_enc, &rec_h, &b_h) });
                }
            }
        }
        Ok(out)
    }

    fn lower_list(&self, xs: &[SemValue]) -> R<Vec<Hf>> {
        xs.iter()
            .map(|x| self.lower(x).ok_or_else(|| ModelError::BoundExceeded("argument is not a finite set".into())))
            .collect()
    }

    /// Conclusions for the recursive calls of a residual that occur outside
    /// binders. `locals` counts the `y…, v…` bound above the fix values.
    fn call_premises(
        &self,
        fix: &Arc<FixClosure>,
        res: &Term,
        env: &Valuation,
        locals: usize,
        rules: &FixRules,
    ) -> R<BTreeSet<Hf>> {
        let m = fix.defs.len();
        let mut calls = Vec::new();
        collect_calls(res, locals, m, &mut calls);
        let mut out = BTreeSet::new();
        for (j, args) in calls {
            let kj = fix.defs[j].rec_arg;
            if args.len() <= kj {
                continue;
            }
            let vals = args.iter().take(kj + 1).map(|a| self.eval(a, env)).collect::<R<Vec<_>>>()?;
            let xs = self.lower_list(&vals[..kj])?;
            let rec = self.lower_list(&vals[kj..])?;
            let b = self.fix_call(fix, j, &vals)?;
            let Some(b) = self.lower(&b) else {
                return Err(ModelError::BoundExceeded("fix value is not a finite set".into()));
            };
            out.insert(rules.conclusion(j, &xs, &rec[0], &b));
        }
        Ok(out)
    }
}

/// Applications `f_j a…` with at least `rec_arg + 1` arguments that are not
/// under a binder. `f_j` is `Var(locals + m - 1 - j)` at the top.
fn collect_calls(t: &Term, locals: usize, m: usize, out: &mut Vec<(usize, Vec<Term>)>) {
    let (h, args) = t.spine();
    if let Term::Var(i) = h {
        if *i >= locals && *i < locals + m && !args.is_empty() {
            out.push((locals + m - 1 - i, args.iter().map(|a| (*a).clone()).collect()));
        }
    }
    if let Term::Case(e, _, _) = h {
        collect_calls(e, locals, m, out);
    }
    for a in args {
        collect_calls(a, locals, m, out);
    }
}
