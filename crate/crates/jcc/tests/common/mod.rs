#![allow(dead_code)]

use std::path::PathBuf;

use jcc::elab::Elaborator;
use jcc::session::Session;
use jcc::{parse_file, parse_term};
use jcc_core::model::{interp_ctx, Hf, Model, ModelConfig, SemValue, Valuation};
use jcc_core::reduction::ReductionConfig;
use jcc_core::syntax::Term;

pub fn corpus(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(corpus(rel)).unwrap()
}

pub fn rcfg() -> ReductionConfig {
    ReductionConfig::default()
}

/// Runs every item of `src`, panicking on the first rejection.
pub fn session_of(src: &str) -> Session {
    let mut s = Session::new(rcfg());
    for item in parse_file(src).unwrap() {
        if let Err(d) = s.run(&item) {
            panic!("{}", d);
        }
    }
    s
}

/// Elaborates a surface term in the session's final context.
pub fn term(s: &Session, src: &str) -> Term {
    Elaborator::new(s.ctx.clone(), rcfg()).expr(&parse_term(src).unwrap()).unwrap()
}

/// The model over the session's context and its single valuation.
pub fn model(s: &Session, cfg: ModelConfig) -> (Model, Valuation) {
    let (vals, _) = interp_ctx(&s.ctx, cfg).unwrap();
    assert_eq!(vals.len(), 1, "context with assumptions");
    (Model::new(&s.ctx, cfg), vals[0].clone())
}

pub fn eval_hf(m: &Model, env: &Valuation, t: &Term) -> Hf {
    let v = m.eval(t, env).unwrap();
    m.lower(&v).unwrap_or_else(|| panic!("{} does not lower", v))
}

pub fn fin(h: Hf) -> SemValue {
    SemValue::Fin(h)
}

/// Kuratowski pair, written out.
pub fn kpair(a: &Hf, b: &Hf) -> Hf {
    Hf::from_iter([Hf::from_iter([a.clone()]), Hf::from_iter([a.clone(), b.clone()])])
}

/// Right-nested tuple ending in ∅.
pub fn tup(xs: &[Hf]) -> Hf {
    xs.iter().rev().fold(Hf::empty(), |acc, x| kpair(x, &acc))
}

/// `O = ⟨1⟩`, `S v = ⟨2, v⟩`.
pub fn numeral(n: u64) -> Hf {
    (0..n).fold(tup(&[Hf::nat(1)]), |v, _| tup(&[Hf::nat(2), v]))
}

/// Surface numeral `S (S O)`.
pub fn surface_num(n: u64) -> String {
    (0..n).fold("O".to_string(), |acc, _| format!("(S {})", acc))
}

/// `(status, stdout, stderr)` of one CLI run.
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("jcc").chain(args.iter().copied());
    let code = jcc::run_cli_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
