//! Recursive-descent parser for the vernacular.
//!
//! ```text
//! term  ::= forall binders, term | fun binders => term
//!         | let x := arrow [: term] in term | fix specs for f | arrow
//! arrow ::= app [-> arrow]
//! app   ::= atom atom*
//! atom  ::= name | Prop | TypeN | ( term ) | match ... end | case ... end
//! ```

use jcc_core::diag::{Diagnostic, Location};
use jcc_core::pretty::KEYWORDS;
use jcc_core::syntax::Sort;

use crate::ast::*;
use crate::lexer::{syntax_error, tokenize, Tok, Token};

type P<T> = Result<T, Diagnostic>;

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn sort_of(s: &str) -> Option<Sort> {
    if s == "Prop" {
        return Some(Sort::Prop);
    }
    let digits = s.strip_prefix("Type")?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().map(Sort::Type)
}

fn is_reserved(s: &str) -> bool {
    KEYWORDS.contains(&s) || sort_of(s).is_some()
}

impl Parser {
    pub fn new(src: &str) -> P<Self> {
        Ok(Parser { toks: tokenize(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn loc(&self) -> Location {
        self.toks[self.pos].loc
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{}`", s),
            Tok::Num(n) => format!("`{}`", n),
            Tok::Sym(s) => format!("`{}`", s),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, s: &str) -> P<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            Err(syntax_error(self.loc(), format!("expected `{}`, found {}", s, self.describe())))
        }
    }

    fn expect_kw(&mut self, s: &str) -> P<()> {
        if self.is_kw(s) {
            self.bump();
            Ok(())
        } else {
            Err(syntax_error(self.loc(), format!("expected `{}`, found {}", s, self.describe())))
        }
    }

    fn name(&mut self) -> P<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_reserved(&s) => {
                self.bump();
                Ok(s)
            }
            Tok::Ident(s) => Err(syntax_error(self.loc(), format!("reserved word `{}` used as a name", s))),
            _ => Err(syntax_error(self.loc(), format!("expected a name, found {}", self.describe()))),
        }
    }

    /// A name or `_`.
    fn binder_name(&mut self) -> P<String> {
        if self.is_sym("_") {
            self.bump();
            Ok("_".into())
        } else {
            self.name()
        }
    }

    fn number(&mut self) -> P<u64> {
        match self.peek() {
            Tok::Num(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(syntax_error(self.loc(), format!("expected a number, found {}", self.describe()))),
        }
    }

    // -----------------------------------------------------------------------
    // Items

    pub fn file(&mut self) -> P<Vec<Item>> {
        let mut items = Vec::new();
        while *self.peek() != Tok::Eof {
            items.push(self.item()?);
        }
        Ok(items)
    }

    fn item(&mut self) -> P<Item> {
        let loc = self.loc();
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(syntax_error(loc, format!("expected a command, found {}", self.describe()))),
        };
        self.bump();
        let kind = match kw.as_str() {
            "Inductive" => {
                let mut specs = vec![self.ind_spec()?];
                while self.is_kw("with") {
                    self.bump();
                    specs.push(self.ind_spec()?);
                }
                ItemKind::Inductive(specs)
            }
            "Definition" => {
                let name = self.name()?;
                let binders = self.binder_groups()?;
                let ty = if self.is_sym(":") {
                    self.bump();
                    Some(self.term()?)
                } else {
                    None
                };
                self.expect_sym(":=")?;
                ItemKind::Definition { name, binders, ty, body: self.term()? }
            }
            "Fixpoint" => ItemKind::Fixpoint(self.fix_specs()?),
            "Check" => {
                let term = self.term()?;
                let ty = if self.is_sym(":") {
                    self.bump();
                    Some(self.term()?)
                } else {
                    None
                };
                ItemKind::Check { term, ty }
            }
            "Assert" => {
                let lhs = self.term()?;
                self.expect_sym("=")?;
                let rhs = self.term()?;
                self.expect_sym(":")?;
                ItemKind::Assert { lhs, rhs, ty: self.term()? }
            }
            "Eval" => ItemKind::Eval { term: self.term()? },
            "Model" => {
                let name = self.name()?;
                self.expect_sym(":")?;
                let ty = self.term()?;
                self.expect_kw("depth")?;
                ItemKind::Model { name, ty, depth: self.number()? }
            }
            _ => return Err(syntax_error(loc, format!("unknown command `{}`", kw))),
        };
        self.expect_sym(".")?;
        Ok(Item { kind, loc })
    }

    fn ind_spec(&mut self) -> P<IndSpec> {
        let loc = self.loc();
        let name = self.name()?;
        let params = self.binder_groups()?;
        self.expect_sym(":")?;
        let arity = self.term()?;
        self.expect_sym(":=")?;
        let mut cons = Vec::new();
        if self.is_sym("|") {
            self.bump();
        }
        if !self.is_sym(".") && !self.is_kw("with") {
            loop {
                let cloc = self.loc();
                let c = self.name()?;
                self.expect_sym(":")?;
                cons.push((c, self.term()?, cloc));
                if !self.is_sym("|") {
                    break;
                }
                self.bump();
            }
        }
        Ok(IndSpec { name, params, arity, cons, loc })
    }

    fn fix_specs(&mut self) -> P<Vec<FixSpec>> {
        let mut specs = Vec::new();
        loop {
            let loc = self.loc();
            let name = self.name()?;
            self.expect_sym("/")?;
            let k = self.number()?;
            self.expect_sym(":")?;
            let ty = self.term()?;
            self.expect_sym(":=")?;
            let body = self.term()?;
            specs.push(FixSpec { name, k, ty, body, loc });
            if !self.is_kw("with") {
                return Ok(specs);
            }
            self.bump();
        }
    }

    /// `(x y : A) (z : B) ...`, possibly empty.
    fn binder_groups(&mut self) -> P<Vec<Binder>> {
        let mut out = Vec::new();
        while self.is_sym("(") {
            self.bump();
            let mut names = vec![self.binder_name()?];
            while !self.is_sym(":") {
                names.push(self.binder_name()?);
            }
            self.bump();
            let ty = self.term()?;
            self.expect_sym(")")?;
            out.extend(names.into_iter().map(|name| Binder { name, ty: ty.clone() }));
        }
        Ok(out)
    }

    /// Binders of `forall`/`fun`: parenthesized groups, or `x y : A` bare.
    fn binders(&mut self) -> P<Vec<Binder>> {
        if self.is_sym("(") {
            return self.binder_groups();
        }
        let mut names = vec![self.binder_name()?];
        while !self.is_sym(":") {
            names.push(self.binder_name()?);
        }
        self.bump();
        let ty = self.arrow()?;
        Ok(names.into_iter().map(|name| Binder { name, ty: ty.clone() }).collect())
    }

    // -----------------------------------------------------------------------
    // Terms

    pub fn term(&mut self) -> P<Expr> {
        let loc = self.loc();
        let kind = if self.is_kw("forall") {
            self.bump();
            let bs = self.binders()?;
            self.expect_sym(",")?;
            ExprKind::Pi(bs, Box::new(self.term()?))
        } else if self.is_kw("fun") {
            self.bump();
            let bs = self.binders()?;
            self.expect_sym("=>")?;
            ExprKind::Lam(bs, Box::new(self.term()?))
        } else if self.is_kw("let") {
            self.bump();
            let x = self.binder_name()?;
            self.expect_sym(":=")?;
            let d = self.arrow()?;
            let ty = if self.is_sym(":") {
                self.bump();
                Some(Box::new(self.term()?))
            } else {
                None
            };
            self.expect_kw("in")?;
            ExprKind::Let(x, Box::new(d), ty, Box::new(self.term()?))
        } else if self.is_kw("fix") {
            self.bump();
            let specs = self.fix_specs()?;
            self.expect_kw("for")?;
            ExprKind::Fix(specs, self.name()?)
        } else {
            return self.arrow();
        };
        Ok(Expr { kind, loc })
    }

    fn arrow(&mut self) -> P<Expr> {
        let loc = self.loc();
        let a = self.app()?;
        if self.is_sym("->") {
            self.bump();
            let b = self.arrow_rhs()?;
            return Ok(Expr { kind: ExprKind::Arrow(Box::new(a), Box::new(b)), loc });
        }
        Ok(a)
    }

    /// The right of an arrow may itself be a binder form.
    fn arrow_rhs(&mut self) -> P<Expr> {
        if self.is_kw("forall") || self.is_kw("fun") || self.is_kw("let") || self.is_kw("fix") {
            self.term()
        } else {
            self.arrow()
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !KEYWORDS.contains(&s.as_str()) || s == "Prop" || s == "match" || s == "case",
            Tok::Sym("(") => true,
            _ => false,
        }
    }

    fn app(&mut self) -> P<Expr> {
        let loc = self.loc();
        let head = self.atom()?;
        let mut args = Vec::new();
        while self.starts_atom() {
            args.push(self.atom()?);
        }
        if args.is_empty() {
            Ok(head)
        } else {
            Ok(Expr { kind: ExprKind::App(Box::new(head), args), loc })
        }
    }

    fn atom(&mut self) -> P<Expr> {
        let loc = self.loc();
        let kind = match self.peek().clone() {
            Tok::Sym("(") => {
                self.bump();
                let t = self.term()?;
                self.expect_sym(")")?;
                return Ok(t);
            }
            Tok::Ident(s) if s == "match" => {
                self.bump();
                ExprKind::Match(Box::new(self.match_body()?))
            }
            Tok::Ident(s) if s == "case" => {
                self.bump();
                let e = self.term()?;
                self.expect_kw("return")?;
                let q = self.term()?;
                self.expect_kw("with")?;
                let mut hs = Vec::new();
                while self.is_sym("|") {
                    self.bump();
                    hs.push(self.term()?);
                }
                self.expect_kw("end")?;
                ExprKind::Case(Box::new(e), Box::new(q), hs)
            }
            Tok::Ident(s) => match sort_of(&s) {
                Some(sort) => {
                    self.bump();
                    ExprKind::Sort(sort)
                }
                None => ExprKind::Name(self.name()?),
            },
            _ => return Err(syntax_error(loc, format!("expected a term, found {}", self.describe()))),
        };
        Ok(Expr { kind, loc })
    }

    fn match_body(&mut self) -> P<Match> {
        let scrutinee = self.term()?;
        let as_name = if self.is_kw("as") {
            self.bump();
            Some(self.binder_name()?)
        } else {
            None
        };
        let in_clause = if self.is_kw("in") {
            self.bump();
            let ind = self.name()?;
            let mut names = Vec::new();
            while !self.is_kw("return") {
                names.push(self.binder_name()?);
            }
            Some((ind, names))
        } else {
            None
        };
        self.expect_kw("return")?;
        let ret = self.term()?;
        self.expect_kw("with")?;
        let mut branches = Vec::new();
        if self.is_sym("|") {
            self.bump();
        }
        if !self.is_kw("end") {
            loop {
                let loc = self.loc();
                let con = self.name()?;
                let mut vars = Vec::new();
                while !self.is_sym("=>") {
                    vars.push(self.binder_name()?);
                }
                self.bump();
                let body = self.term()?;
                branches.push(Branch { con, vars, body, loc });
                if !self.is_sym("|") {
                    break;
                }
                self.bump();
            }
        }
        self.expect_kw("end")?;
        Ok(Match { scrutinee, as_name, in_clause, ret, branches })
    }
}

/// Parses a whole file into items, in order. Name clashes are left to the kernel.
pub fn parse_file(text: &str) -> P<Vec<Item>> {
    Parser::new(text)?.file()
}

/// Parses a single term.
pub fn parse_term(text: &str) -> P<Expr> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax_error(p.loc(), format!("unexpected {} after term", p.describe())));
    }
    Ok(t)
}
