//! Rule sets `u/v` and their least fixpoints.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::hf::Hf;
use super::ModelError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub premises: BTreeSet<Hf>,
    pub conclusion: Hf,
}

/// One application of `Γ_Φ`.
#[derive(Clone, Debug, Default)]
pub struct Step {
    pub out: BTreeSet<Hf>,
    /// False when some rules could not be enumerated within the bounds.
    pub exact: bool,
}

pub trait RuleSet {
    /// The premises of the rule concluding `v`, if there is one.
    fn premises(&self, v: &Hf) -> Result<Option<BTreeSet<Hf>>, ModelError>;

    /// `Γ_Φ(X) = {v | u/v ∈ Φ, u ⊆ X}`.
    fn step(&self, x: &BTreeSet<Hf>) -> Result<Step, ModelError>;

    /// `Γ_Φ(X) ⊆ X`, established exactly. Implementations may stop at the
    /// first conclusion outside `X`.
    fn closes(&self, x: &BTreeSet<Hf>) -> Result<bool, ModelError> {
        let step = self.step(x)?;
        Ok(step.exact && step.out.is_subset(x))
    }
}

/// An explicitly listed rule set.
#[derive(Clone, Debug, Default)]
pub struct FiniteRuleSet {
    pub rules: Vec<Rule>,
}

impl FiniteRuleSet {
    pub fn new(rules: Vec<Rule>) -> Self {
        FiniteRuleSet { rules }
    }

    /// At most one rule per conclusion.
    pub fn is_deterministic(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.rules.iter().all(|r| seen.insert(r.conclusion.clone()))
    }
}

impl RuleSet for FiniteRuleSet {
    fn premises(&self, v: &Hf) -> Result<Option<BTreeSet<Hf>>, ModelError> {
        Ok(self.rules.iter().find(|r| &r.conclusion == v).map(|r| r.premises.clone()))
    }

    fn step(&self, x: &BTreeSet<Hf>) -> Result<Step, ModelError> {
        let out = self.rules.iter().filter(|r| r.premises.is_subset(x)).map(|r| r.conclusion.clone()).collect();
        Ok(Step { out, exact: true })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfpStatus {
    Complete,
    TruncatedAtDepth,
}

#[derive(Clone, Debug)]
pub struct Lfp {
    pub set: BTreeSet<Hf>,
    pub status: LfpStatus,
    pub iterations: usize,
}

impl Lfp {
    pub fn is_complete(&self) -> bool {
        self.status == LfpStatus::Complete
    }
}

/// Iterates `X ← Γ_Φ(X)` from `∅` for at most `depth` steps. The set is
/// complete once an exact step adds nothing.
pub fn lfp(phi: &dyn RuleSet, depth: usize, cap: usize) -> Result<Lfp, ModelError> {
    lfp_until(phi, depth, cap, |_| false)
}

/// As [`lfp`], stopping early (truncated) as soon as `enough` holds.
pub fn lfp_until(
    phi: &dyn RuleSet,
    depth: usize,
    cap: usize,
    mut enough: impl FnMut(&BTreeSet<Hf>) -> bool,
) -> Result<Lfp, ModelError> {
    let mut x = BTreeSet::new();
    for i in 0..depth {
        let step = phi.step(&x)?;
        let grew = step.out.iter().any(|v| !x.contains(v));
        if !grew && step.exact {
            return Ok(Lfp { set: x, status: LfpStatus::Complete, iterations: i });
        }
        x.extend(step.out);
        if x.len() > cap {
            return Err(ModelError::BoundExceeded(alloc::format!("fixpoint iteration exceeded {} elements", cap)));
        }
        if enough(&x) {
            return Ok(Lfp { set: x, status: LfpStatus::TruncatedAtDepth, iterations: i + 1 });
        }
    }
    // A last exact step that adds nothing still proves completeness. One
    // that overflows the set bound proves nothing either way.
    let status = match phi.closes(&x) {
        Ok(true) => LfpStatus::Complete,
        Ok(false) | Err(ModelError::BoundExceeded(_)) => LfpStatus::TruncatedAtDepth,
        Err(e) => return Err(e),
    };
    Ok(Lfp { set: x, status, iterations: depth })
}

/// `X` is `Φ`-closed: `Γ_Φ(X) ⊆ X`.
pub fn is_closed(phi: &dyn RuleSet, x: &BTreeSet<Hf>) -> Result<bool, ModelError> {
    phi.closes(x)
}

/// Every element is derived from premises inside the set, and no element can
/// be dropped while keeping the set closed.
pub fn check_minimality(phi: &dyn RuleSet, x: &BTreeSet<Hf>) -> Result<bool, ModelError> {
    for v in x {
        match phi.premises(v)? {
            Some(u) if u.is_subset(x) => {}
            _ => return Ok(false),
        }
        let mut smaller = x.clone();
        smaller.remove(v);
        if is_closed(phi, &smaller)? {
            return Ok(false);
        }
    }
    Ok(true)
}
