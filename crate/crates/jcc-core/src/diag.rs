//! Diagnostics reported by the kernel, the guard checker and the front end.

use alloc::string::String;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
    Note,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Location {
    pub line: usize,
    pub col: usize,
}

/// A rejected check. `rule` is the label of the violated typing rule or
/// admission condition, e.g. `(ind-wf) positivity` or `F guard`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub location: Option<Location>,
    pub rule: String,
    pub message: String,
}

impl Diagnostic {
    pub fn error(rule: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, location: None, rule: rule.into(), message: message.into() }
    }

    pub fn at(mut self, loc: Location) -> Self {
        if self.location.is_none() {
            self.location = Some(loc);
        }
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        };
        if let Some(l) = self.location {
            write!(f, "{}:{}: ", l.line, l.col)?;
        }
        write!(f, "{} [{}]: {}", sev, self.rule, self.message)
    }
}
