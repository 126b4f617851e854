//! Inductive families: the rule set `Φ` of a block and membership in
//! `IF(Φ)(i, p, u)`.
//!
//! Conclusions are `⟨i, p…, u…, ⟨k, z…⟩⟩` with `i` the 0-based inductive, `p`
//! the parameters, `u` the indices and `k` the 1-based constructor number in
//! declaration order across the block.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::hf::Hf;
use super::interp::{undefined, IndFamily, Model, SemValue, Valuation, R};
use super::rules::{lfp_until, RuleSet, Step};
use super::{ModelError, Tri};
use crate::kernel::syntactic_telescope;
use crate::syntax::{mentions_rec, replace_ind_names, InductiveBlock, Name, Term};

/// A constructor type split after the parameters: raw argument types (with
/// block-local names), the same with `D·x` references, and the conclusion.
struct ConShape {
    raw: Vec<Term>,
    opened: Vec<Term>,
    concl_args: Vec<Term>,
}

fn con_shape(block: &Arc<InductiveBlock>, c: usize) -> ConShape {
    let n = block.params();
    let raw_ty = &block.cons()[c].1;
    let (raw, _) = syntactic_telescope(raw_ty);
    let (opened, concl) = syntactic_telescope(&replace_ind_names(raw_ty, block));
    let (_, args) = concl.spine();
    ConShape {
        raw: raw.into_iter().skip(n).map(|(_, a): (Name, Term)| a).collect(),
        opened: opened.into_iter().skip(n).map(|(_, a)| a).collect(),
        concl_args: args.into_iter().skip(n).cloned().collect(),
    }
}

/// `Φ` for a block at fixed, finite parameter values.
pub struct IndRules<'m> {
    model: &'m Model,
    block: Arc<InductiveBlock>,
    env: Valuation,
    params: Vec<SemValue>,
    p_enc: Vec<Hf>,
    index_counts: Vec<usize>,
    shapes: Vec<ConShape>,
}

impl<'m> IndRules<'m> {
    pub fn new(model: &'m Model, block: &Arc<InductiveBlock>, env: &Valuation, params: &[SemValue]) -> R<Self> {
        let p_enc: Option<Vec<Hf>> = params.iter().map(|p| model.lower(p)).collect();
        let Some(p_enc) = p_enc else {
            return Err(ModelError::BoundExceeded("parameters are not finite sets".into()));
        };
        let n = block.params();
        let index_counts = (0..block.inds().len())
            .map(|d| model.arity_len(block, d, env).map(|a| a.saturating_sub(n)))
            .collect::<R<Vec<_>>>()?;
        let shapes = (0..block.cons().len()).map(|c| con_shape(block, c)).collect();
        Ok(IndRules {
            model,
            block: block.clone(),
            env: env.clone(),
            params: params.to_vec(),
            p_enc,
            index_counts,
            shapes,
        })
    }

    pub fn conclusion(&self, ind: usize, indices: &[Hf], v: Hf) -> Hf {
        Self::conclusion_at(ind, &self.p_enc, indices, v)
    }

    fn conclusion_at(ind: usize, params: &[Hf], indices: &[Hf], v: Hf) -> Hf {
        Hf::tuple(
            core::iter::once(Hf::nat(ind))
                .chain(params.iter().cloned())
                .chain(indices.iter().cloned())
                .chain(core::iter::once(v)),
        )
    }

    /// Splits a conclusion into inductive, indices and element.
    pub fn decode(&self, c: &Hf) -> Option<(usize, Vec<Hf>, Hf)> {
        let (ind, ps, idx, v) = self.decode_at(c)?;
        (ps == self.p_enc).then_some((ind, idx, v))
    }

    /// Like `decode`, at any parameter instance.
    fn decode_at(&self, c: &Hf) -> Option<(usize, Vec<Hf>, Vec<Hf>, Hf)> {
        let items = c.untuple()?;
        let ind = items.first()?.as_nat()?;
        let m = *self.index_counts.get(ind)?;
        let n = self.p_enc.len();
        if items.len() != 2 + n + m {
            return None;
        }
        Some((ind, items[1..1 + n].to_vec(), items[1 + n..1 + n + m].to_vec(), items[1 + n + m].clone()))
    }

    fn base_env(&self) -> Valuation {
        self.env.extend(self.params.iter().cloned())
    }

    fn lower_all(&self, ts: &[Term], env: &Valuation) -> R<Option<Vec<Hf>>> {
        let mut out = Vec::with_capacity(ts.len());
        for t in ts {
            match self.model.lower(&self.model.eval(t, env)?) {
                Some(h) => out.push(h),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// For a recursive argument `Π y:H. d' p w`, the inductive `d'` and `w`,
    /// when there are no `H`.
    fn recursive_target(raw: &Term, opened: &Term) -> Option<(usize, Vec<Term>)> {
        let (tele, concl) = syntactic_telescope(raw);
        if !tele.is_empty() {
            return None;
        }
        let (h, _) = concl.spine();
        let d = match h {
            Term::Rec(d) => *d,
            _ => return None,
        };
        let (_, args) = opened.spine();
        Some((d, args.into_iter().cloned().collect()))
    }

    /// The inductive, parameters and indices of a recursive argument, lowered.
    /// Parameters may differ from the block's own (`titi nat` inside `titi x`).
    fn occurrence(&self, raw: &Term, opened: &Term, env: &Valuation) -> R<Option<Occurrence>> {
        let Some((d, args)) = Self::recursive_target(raw, opened) else { return Ok(None) };
        let n = self.p_enc.len().min(args.len());
        let Some(ps) = self.lower_all(&args[..n], env)? else { return Ok(None) };
        let Some(w) = self.lower_all(&args[n..], env)? else { return Ok(None) };
        Ok(Some((d, ps, w)))
    }

    /// Extends the arguments `zs` of constructor `c` from position `l` on,
    /// emitting every conclusion whose recursive premises are in `x`.
    fn extend_args(
        &self,
        c: usize,
        l: usize,
        env: &Valuation,
        zs: &mut Vec<Hf>,
        x: &[Decoded],
        st: &mut StepState,
    ) -> R<()> {
        if st.escaped {
            return Ok(());
        }
        let shape = &self.shapes[c];
        if l == shape.raw.len() {
            let Some(idx) = self.lower_all(&shape.concl_args, env)? else {
                st.step.exact = false;
                return Ok(());
            };
            let d = self.block.con_target(c).unwrap_or(0);
            let v = Hf::tuple(core::iter::once(Hf::nat(c + 1)).chain(zs.iter().cloned()));
            let concl = self.conclusion(d, &idx, v);
            if let Some(within) = st.within {
                st.escaped |= !within.contains(&concl);
                return Ok(());
            }
            st.step.out.insert(concl);
            if st.step.out.len() > self.model.cfg.max_set {
                return Err(ModelError::BoundExceeded("rule enumeration exceeded the set bound".into()));
            }
            return Ok(());
        }
        let raw = &shape.raw[l];
        let opened = &shape.opened[l];
        if mentions_rec(raw) {
            let Some((d, ps, w)) = self.occurrence(raw, opened, env)? else {
                st.step.exact = false;
                return Ok(());
            };
            // Only this parameter instance is iterated, so premises at
            // another one are never produced.
            if ps != self.p_enc {
                st.step.exact = false;
                return Ok(());
            }
            for (i, idx, z) in x {
                if *i == d && *idx == w {
                    zs.push(z.clone());
                    self.extend_args(c, l + 1, &env.push(SemValue::Fin(z.clone())), zs, x, st)?;
                    zs.pop();
                }
            }
        } else {
            let dom = self.model.eval(opened, env)?;
            let (xs, complete) = self.model.enumerate(&dom)?;
            if !complete {
                st.step.exact = false;
            }
            for v in xs {
                let Some(z) = self.model.lower(&v) else {
                    st.step.exact = false;
                    continue;
                };
                zs.push(z);
                self.extend_args(c, l + 1, &env.push(v), zs, x, st)?;
                zs.pop();
            }
        }
        Ok(())
    }
}

impl RuleSet for IndRules<'_> {
    fn premises(&self, concl: &Hf) -> R<Option<BTreeSet<Hf>>> {
        let Some((i, ps, idx, v)) = self.decode_at(concl) else { return Ok(None) };
        let Some((tag, zs)) = self.model.decode_con(&SemValue::Fin(v)) else { return Ok(None) };
        let c = tag - 1;
        if c >= self.shapes.len() || self.block.con_target(c) != Some(i) {
            return Ok(None);
        }
        let shape = &self.shapes[c];
        if zs.len() != shape.raw.len() {
            return Ok(None);
        }
        let mut env =
            if ps == self.p_enc { self.base_env() } else { self.env.extend(ps.iter().cloned().map(SemValue::Fin)) };
        let mut out = BTreeSet::new();
        for (l, z) in zs.iter().enumerate() {
            let zh = z.fin().cloned().unwrap_or_else(Hf::empty);
            if mentions_rec(&shape.raw[l]) {
                let Some((d, qs, w)) = self.occurrence(&shape.raw[l], &shape.opened[l], &env)? else {
                    return Err(ModelError::BoundExceeded("recursive argument is functional or not finite".into()));
                };
                out.insert(Self::conclusion_at(d, &qs, &w, zh));
            } else {
                let dom = self.model.eval(&shape.opened[l], &env)?;
                if self.model.mem(z, &dom) == Tri::No {
                    return Ok(None);
                }
            }
            env = env.push(z.clone());
        }
        match self.lower_all(&shape.concl_args, &env)? {
            Some(u) if u == idx => Ok(Some(out)),
            Some(_) => Ok(None),
            None => Err(ModelError::BoundExceeded("indices are not finite sets".into())),
        }
    }

    fn step(&self, x: &BTreeSet<Hf>) -> R<Step> {
        Ok(self.run_step(x, None)?.step)
    }

    fn closes(&self, x: &BTreeSet<Hf>) -> R<bool> {
        let st = self.run_step(x, Some(x))?;
        Ok(!st.escaped && st.step.exact)
    }
}

/// Inductive, parameters and indices of a recursive argument.
type Occurrence = (usize, Vec<Hf>, Vec<Hf>);

/// A conclusion split into inductive, indices and element.
type Decoded = (usize, Vec<Hf>, Hf);

struct StepState<'a> {
    step: Step,
    /// When set, conclusions are only tested for membership here.
    within: Option<&'a BTreeSet<Hf>>,
    escaped: bool,
}

impl IndRules<'_> {
    fn run_step<'a>(&self, x: &BTreeSet<Hf>, within: Option<&'a BTreeSet<Hf>>) -> R<StepState<'a>> {
        let mut st = StepState { step: Step { out: BTreeSet::new(), exact: true }, within, escaped: false };
        let env = self.base_env();
        let decoded: Vec<Decoded> = x.iter().filter_map(|u| self.decode(u)).collect();
        for c in 0..self.shapes.len() {
            self.extend_args(c, 0, &env, &mut Vec::new(), &decoded, &mut st)?;
        }
        Ok(st)
    }
}

impl Model {
    /// `Φ` for the block of `f` at its parameters.
    pub fn ind_rules(&self, f: &IndFamily) -> R<IndRules<'_>> {
        IndRules::new(self, &f.block, &f.env, &f.params)
    }

    /// Elements of `IF(Φ)(i, p, u)` found within the configured depth, and
    /// whether the fixpoint was reached.
    pub fn family_members(&self, f: &IndFamily) -> R<(Vec<Hf>, bool)> {
        let rules = self.ind_rules(f)?;
        let Some(idx) = f.indices.iter().map(|u| self.lower(u)).collect::<Option<Vec<Hf>>>() else {
            return Err(ModelError::BoundExceeded("indices are not finite sets".into()));
        };
        let key = (Arc::as_ptr(&f.block) as usize, f.ind, rules.p_enc.clone(), idx.clone());
        if f.block.is_closed() {
            if let Some((_, m, c)) = self.members_cache().borrow().get(&key) {
                return Ok((m.clone(), *c));
            }
        }
        let budget = self.cfg.sample_budget;
        let cap = self.cfg.max_set;
        let pick = |x: &BTreeSet<Hf>| -> Vec<Hf> {
            x.iter()
                .filter_map(|c| rules.decode(c))
                .filter(|(i, u, _)| *i == f.ind && *u == idx)
                .map(|(_, _, v)| v)
                .collect()
        };
        let lfp = lfp_until(&rules, self.cfg.fixpoint_depth, cap, |x| x.len() * 2 > cap || pick(x).len() >= budget)?;
        let members = pick(&lfp.set);
        let complete = lfp.is_complete();
        if f.block.is_closed() {
            self.members_cache().borrow_mut().insert(key, (f.block.clone(), members.clone(), complete));
        }
        Ok((members, complete))
    }

    /// `v ∈ IF(Φ)(i, p, u)` by a top-down derivation of depth at most `depth`.
    /// An answer of `no` means no rule of `Φ` concludes `v`.
    pub(super) fn mem_family(&self, v: &SemValue, f: &IndFamily, depth: usize) -> Tri {
        match self.try_mem_family(v, f, depth) {
            Ok(t) => t,
            Err(_) => Tri::Unknown,
        }
    }

    fn try_mem_family(&self, v: &SemValue, f: &IndFamily, depth: usize) -> R<Tri> {
        if depth == 0 {
            return Ok(Tri::Unknown);
        }
        let Some((tag, zs)) = self.decode_con(v) else {
            return Ok(match v {
                SemValue::Fin(_) => Tri::No,
                _ => Tri::Unknown,
            });
        };
        let block = &f.block;
        let c = tag - 1;
        if c >= block.cons().len() || block.con_target(c) != Some(f.ind) {
            return Ok(Tri::No);
        }
        let shape = con_shape(block, c);
        if zs.len() != shape.opened.len() {
            return Ok(Tri::No);
        }
        let mut env = f.env.extend(f.params.iter().cloned());
        let mut r = Tri::Yes;
        for (z, a) in zs.iter().zip(&shape.opened) {
            let dom = self.eval(a, &env)?;
            r = r.and(self.mem_at(z, &dom, depth - 1));
            if r == Tri::No {
                return Ok(r);
            }
            env = env.push(z.clone());
        }
        if shape.concl_args.len() != f.indices.len() {
            return undefined("index count mismatch");
        }
        for (t, u) in shape.concl_args.iter().zip(&f.indices) {
            let w = self.eval(t, &env)?;
            r = r.and(self.sem_eq(&w, u));
        }
        Ok(r)
    }
}
