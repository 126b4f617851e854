//! Printing terms in the surface vernacular.
//!
//! Binder hints are renamed when they would shadow a name visible in the
//! printed text, so the output reads back to an α-equal term.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::syntax::{Context, Name, Term};

pub const KEYWORDS: &[&str] = &[
    "forall",
    "fun",
    "let",
    "in",
    "match",
    "as",
    "return",
    "with",
    "end",
    "case",
    "fix",
    "for",
    "Prop",
    "Inductive",
    "Definition",
    "Fixpoint",
    "Check",
    "Assert",
    "Eval",
    "Model",
    "depth",
];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s) || (s.starts_with("Type") && s.len() > 4 && s[4..].bytes().all(|b| b.is_ascii_digit()))
}

struct Printer {
    /// Names of bound variables, innermost last.
    env: Vec<String>,
    /// Names that binders must not take (inductive and constructor names).
    avoid: BTreeSet<String>,
}

fn collect_block_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(_) | Term::Sort(_) | Term::Rec(_) => {}
        Term::Pi(_, a, b) | Term::Lam(_, a, b) | Term::App(a, b) => {
            collect_block_names(a, out);
            collect_block_names(b, out);
        }
        Term::Let(_, d, ty, b) => {
            collect_block_names(d, out);
            if let Some(ty) = ty {
                collect_block_names(ty, out);
            }
            collect_block_names(b, out);
        }
        Term::Case(e, q, hs) => {
            collect_block_names(e, out);
            collect_block_names(q, out);
            for h in hs.iter() {
                collect_block_names(h, out);
            }
        }
        Term::Ind(b, i) => {
            out.insert(b.name_of(*i).to_string());
        }
        Term::Fix(_, defs) => {
            for d in defs.iter() {
                collect_block_names(&d.ty, out);
                collect_block_names(&d.body, out);
            }
        }
    }
}

fn uses_var0(t: &Term) -> bool {
    crate::syntax::free_vars(t).contains(&0)
}

impl Printer {
    fn fresh(&self, hint: &str) -> String {
        let base = if hint.is_empty() || hint == "_" { "x" } else { hint };
        let taken = |s: &str| self.env.iter().any(|n| n == s) || self.avoid.contains(s) || is_keyword(s);
        if !taken(base) {
            return base.to_string();
        }
        let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
        let stem = if stem.is_empty() { "x" } else { stem };
        (0..).map(|i| format!("{}{}", stem, i)).find(|s| !taken(s)).unwrap()
    }

    fn var(&self, i: usize) -> String {
        let d = self.env.len();
        if i < d {
            self.env[d - 1 - i].clone()
        } else {
            format!("#{}", i - d)
        }
    }

    /// Levels: 0 binders, 1 arrows, 2 applications, 3 atoms.
    fn term(&mut self, t: &Term, level: u8, out: &mut String) {
        let need = match t {
            Term::Var(_) | Term::Sort(_) | Term::Rec(_) | Term::Ind(..) => 3,
            Term::App(..) => 2,
            Term::Pi(_, _, b) if !uses_var0(b) => 1,
            Term::Case(..) => 3,
            _ => 0,
        };
        if need < level {
            out.push('(');
            self.term(t, 0, out);
            out.push(')');
            return;
        }
        match t {
            Term::Var(i) => out.push_str(&self.var(*i)),
            Term::Sort(s) => {
                let _ = write!(out, "{}", s);
            }
            Term::Rec(i) => {
                let _ = write!(out, "#rec{}", i);
            }
            Term::Ind(b, i) => out.push_str(b.name_of(*i)),
            Term::App(..) => {
                let (h, args) = t.spine();
                self.term(h, 3, out);
                for a in args {
                    out.push(' ');
                    self.term(a, 3, out);
                }
            }
            Term::Pi(n, a, b) => {
                if !uses_var0(b) {
                    self.term(a, 2, out);
                    out.push_str(" -> ");
                    self.env.push(String::from("_"));
                    self.term(b, 1, out);
                    self.env.pop();
                } else {
                    let x = self.fresh(n);
                    out.push_str("forall (");
                    out.push_str(&x);
                    out.push(':');
                    self.term(a, 0, out);
                    out.push_str("), ");
                    self.env.push(x);
                    self.term(b, 0, out);
                    self.env.pop();
                }
            }
            Term::Lam(n, a, b) => {
                let x = self.fresh(n);
                out.push_str("fun (");
                out.push_str(&x);
                out.push(':');
                self.term(a, 0, out);
                out.push_str(") => ");
                self.env.push(x);
                self.term(b, 0, out);
                self.env.pop();
            }
            Term::Let(n, d, ty, b) => {
                let x = self.fresh(n);
                out.push_str("let ");
                out.push_str(&x);
                out.push_str(" := ");
                self.term(d, 1, out);
                if let Some(ty) = ty {
                    out.push_str(" : ");
                    self.term(ty, 0, out);
                }
                out.push_str(" in ");
                self.env.push(x);
                self.term(b, 0, out);
                self.env.pop();
            }
            Term::Case(e, q, hs) => {
                out.push_str("case ");
                self.term(e, 0, out);
                out.push_str(" return ");
                self.term(q, 0, out);
                out.push_str(" with");
                for h in hs.iter() {
                    out.push_str(" | ");
                    self.term(h, 0, out);
                }
                out.push_str(" end");
            }
            Term::Fix(i, defs) => {
                let names: Vec<String> = defs
                    .iter()
                    .map(|d| {
                        let x = self.fresh(&d.name);
                        self.env.push(x.clone());
                        x
                    })
                    .collect();
                for _ in defs.iter() {
                    self.env.pop();
                }
                out.push_str("fix ");
                for (j, d) in defs.iter().enumerate() {
                    if j > 0 {
                        out.push_str(" with ");
                    }
                    let _ = write!(out, "{} / {} : ", names[j], d.rec_arg + 1);
                    self.term(&d.ty, 0, out);
                    out.push_str(" := ");
                    for x in &names {
                        self.env.push(x.clone());
                    }
                    self.term(&d.body, 0, out);
                    for _ in &names {
                        self.env.pop();
                    }
                }
                out.push_str(" for ");
                out.push_str(&names[*i]);
            }
        }
    }
}

/// Prints `t` with its free variables named by `names` (outermost first).
pub fn print_with(names: &[Name], t: &Term) -> String {
    let mut avoid = BTreeSet::new();
    collect_block_names(t, &mut avoid);
    let mut p = Printer { env: names.iter().map(|n| n.to_string()).collect(), avoid };
    let mut out = String::new();
    p.term(t, 0, &mut out);
    out
}

/// Prints `t` in the scope of `ctx`.
pub fn print_in(ctx: &Context, t: &Term) -> String {
    let d = ctx.depth();
    let names: Vec<Name> = (0..d).rev().map(|i| ctx.var_name(i).cloned().unwrap_or_else(|| "_".into())).collect();
    print_with(&names, t)
}

/// Prints a closed term.
pub fn print(t: &Term) -> String {
    print_with(&[], t)
}
