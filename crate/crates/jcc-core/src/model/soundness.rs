//! Valuations of a context and the bounded soundness check `⟦M⟧ ∈ ⟦A⟧`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::interp::{Model, Valuation, R};
use super::{ModelConfig, Tri};
use crate::syntax::{Context, Entry, Term};

/// `⟦Γ⟧`, enumerated up to the sample budget. The flag is true when the
/// list is every valuation.
pub fn interp_ctx(ctx: &Context, cfg: ModelConfig) -> R<(Vec<Valuation>, bool)> {
    let mut vals = alloc::vec![Valuation::nil()];
    let mut complete = true;
    let mut prefix = Context::new();
    for e in ctx.entries() {
        let model = Model::new(&prefix, cfg);
        match e {
            Entry::Assum { ty, .. } => {
                let mut next = Vec::new();
                for g in &vals {
                    let a = model.eval(ty, g)?;
                    let (xs, all) = model.enumerate(&a)?;
                    complete &= all;
                    for x in xs {
                        next.push(g.push(x));
                    }
                }
                if next.len() > cfg.sample_budget {
                    next.truncate(cfg.sample_budget);
                    complete = false;
                }
                vals = next;
            }
            Entry::Def { body, .. } => {
                vals = vals.iter().map(|g| model.eval(body, g).map(|v| g.push(v))).collect::<R<_>>()?;
            }
            Entry::Ind(_) => {}
        }
        prefix.push(e.clone());
    }
    Ok((vals, complete))
}

/// `Γ ⊢ M : A`, assumed derivable.
#[derive(Clone, Debug)]
pub struct Judgment {
    pub name: String,
    pub ctx: Context,
    pub term: Term,
    pub ty: Term,
}

#[derive(Clone, Debug)]
pub struct JudgmentReport {
    pub name: String,
    pub verdict: Tri,
    pub valuations: usize,
    pub samples: usize,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub judgments: Vec<JudgmentReport>,
}

impl Report {
    pub fn count(&self, t: Tri) -> usize {
        self.judgments.iter().filter(|j| j.verdict == t).count()
    }
}

fn check_one(j: &Judgment, cfg: ModelConfig) -> JudgmentReport {
    let mut rep = JudgmentReport { name: j.name.clone(), verdict: Tri::Unknown, valuations: 0, samples: 0, note: None };
    let (vals, complete) = match interp_ctx(&j.ctx, cfg) {
        Ok(v) => v,
        Err(e) => {
            rep.note = Some(e.to_string());
            return rep;
        }
    };
    let model = Model::new(&j.ctx, cfg);
    let mut verdict = if complete { Tri::Yes } else { Tri::Unknown };
    for g in &vals {
        rep.valuations += 1;
        let r = model.eval(&j.term, g).and_then(|m| Ok((m, model.eval(&j.ty, g)?)));
        match r {
            Ok((m, a)) => verdict = verdict.and(model.mem(&m, &a)),
            Err(e) => {
                verdict = verdict.and(Tri::Unknown);
                rep.note.get_or_insert_with(|| e.to_string());
            }
        }
        if verdict == Tri::No {
            break;
        }
    }
    rep.samples = model.samples();
    rep.verdict = verdict;
    rep
}

/// Evaluates `⟦M⟧_γ ∈ ⟦A⟧_γ` for each judgment over the enumerated `γ ∈ ⟦Γ⟧`.
pub fn check_soundness(judgments: &[Judgment], cfg: ModelConfig) -> Report {
    Report { judgments: judgments.iter().map(|j| check_one(j, cfg)).collect() }
}
