//! A finitary, proof-irrelevant set-theoretic model.
//!
//! Terms denote hereditarily finite sets where that is possible and symbolic
//! descriptors otherwise (universes, inductive families, function spaces and
//! closures). Membership is answered yes, no or unknown within the bounds of
//! a [`ModelConfig`].

use alloc::string::String;
use core::fmt;

pub mod hf;
mod ind;
mod interp;
mod recursion;
pub mod rules;
mod soundness;

pub use hf::{aczel_app, aczel_apps, aczel_lam, encode_tuple, Hf};
pub use ind::IndRules;
pub use interp::{Closure, FixClosure, FunValue, IndFamily, Model, SemValue, Valuation};
pub use recursion::FixRules;
pub use rules::{check_minimality, is_closed, lfp, FiniteRuleSet, Lfp, LfpStatus, Rule, RuleSet, Step};
pub use soundness::{check_soundness, interp_ctx, Judgment, JudgmentReport, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    /// Finite rank standing in for the carrier of `Type_0`.
    pub universe_rank: usize,
    /// Iterations of `Γ_Φ`, and the derivation depth of membership tests.
    pub fixpoint_depth: usize,
    /// Points sampled from an infinite domain.
    pub sample_budget: usize,
    /// Largest set built by a fixpoint iteration or a finite function space.
    pub max_set: usize,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig { universe_rank: 2, fixpoint_depth: 32, sample_budget: 64, max_set: 4096 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelError {
    /// The interpretation is not defined (the partiality of `⟦·⟧`).
    Undefined(String),
    /// A finite bound was hit before the answer was known.
    BoundExceeded(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Undefined(m) => write!(f, "undefined: {}", m),
            ModelError::BoundExceeded(m) => write!(f, "bound exceeded: {}", m),
        }
    }
}

/// A three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }

    pub fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::Yes, _) | (_, Tri::Yes) => Tri::Yes,
            (Tri::No, Tri::No) => Tri::No,
            _ => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}
