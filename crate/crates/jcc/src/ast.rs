//! Surface syntax, before name resolution.

use jcc_core::diag::Location;
use jcc_core::syntax::Sort;

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub loc: Location,
}

#[derive(Clone, Debug)]
pub struct Binder {
    pub name: String,
    pub ty: Expr,
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Name(String),
    Sort(Sort),
    Pi(Vec<Binder>, Box<Expr>),
    Arrow(Box<Expr>, Box<Expr>),
    Lam(Vec<Binder>, Box<Expr>),
    Let(String, Box<Expr>, Option<Box<Expr>>, Box<Expr>),
    App(Box<Expr>, Vec<Expr>),
    Match(Box<Match>),
    /// The core form `case e return Q with | h ... end`.
    Case(Box<Expr>, Box<Expr>, Vec<Expr>),
    /// `fix f / k : A := t with ... for f`
    Fix(Vec<FixSpec>, String),
}

/// `match e as y in I _ u return Q with | C v => h ... end`
#[derive(Clone, Debug)]
pub struct Match {
    pub scrutinee: Expr,
    pub as_name: Option<String>,
    /// Names after the inductive in the `in` clause: `_` for parameters,
    /// then the index names.
    pub in_clause: Option<(String, Vec<String>)>,
    pub ret: Expr,
    pub branches: Vec<Branch>,
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub con: String,
    pub vars: Vec<String>,
    pub body: Expr,
    pub loc: Location,
}

#[derive(Clone, Debug)]
pub struct FixSpec {
    pub name: String,
    /// One-based position of the recursive argument.
    pub k: u64,
    pub ty: Expr,
    pub body: Expr,
    pub loc: Location,
}

#[derive(Clone, Debug)]
pub struct IndSpec {
    pub name: String,
    pub params: Vec<Binder>,
    pub arity: Expr,
    pub cons: Vec<(String, Expr, Location)>,
    pub loc: Location,
}

#[derive(Clone, Debug)]
pub enum ItemKind {
    Inductive(Vec<IndSpec>),
    Definition { name: String, binders: Vec<Binder>, ty: Option<Expr>, body: Expr },
    Fixpoint(Vec<FixSpec>),
    Check { term: Expr, ty: Option<Expr> },
    Assert { lhs: Expr, rhs: Expr, ty: Expr },
    Eval { term: Expr },
    Model { name: String, ty: Expr, depth: u64 },
}

/// One vernacular command.
#[derive(Clone, Debug)]
pub struct Item {
    pub kind: ItemKind,
    pub loc: Location,
}

impl Item {
    /// Names this item introduces into the context.
    pub fn introduced_names(&self) -> Vec<&str> {
        match &self.kind {
            ItemKind::Inductive(specs) => specs
                .iter()
                .map(|s| s.name.as_str())
                .chain(specs.iter().flat_map(|s| s.cons.iter().map(|c| c.0.as_str())))
                .collect(),
            ItemKind::Definition { name, .. } => vec![name],
            ItemKind::Fixpoint(defs) => defs.iter().map(|d| d.name.as_str()).collect(),
            _ => Vec::new(),
        }
    }
}
