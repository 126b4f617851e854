mod common;

use common::*;
use jcc_core::reduction::{self, Reducer, ReductionConfig, ReductionError};
use jcc_core::syntax::{name, Context, Entry, Term};
use proptest::prelude::*;

#[test]
fn whnf_examples() {
    let (ctx, n) = nat_ctx();
    let id = Term::lam("x", n.ty(), Term::var(0));
    assert_eq!(reduction::whnf(&ctx, &Term::app(id, n.o()), cfg()).unwrap(), n.o());

    // One fix unfolding and one case step.
    let plus = n.plus_r();
    let t = Term::apps(plus.clone(), [n.num(2), n.num(3)]);
    let want = Term::app(n.s(), Term::apps(plus, [n.num(2), n.num(2)]));
    assert_eq!(reduction::whnf(&ctx, &t, cfg()).unwrap(), want);

    // case<S p, Q, h0, h1> = h1 p with h1 opaque.
    let mut g = ctx.clone();
    g.push_assum(name("p"), n.ty());
    g.push_assum(name("h1"), Term::arrow(n.ty(), n.ty()));
    let q = Term::lam("_", n.ty(), n.ty());
    let c = Term::case(Term::app(n.s(), Term::var(1)), q, vec![n.o(), Term::var(0)]);
    assert_eq!(reduction::whnf(&g, &c, cfg()).unwrap(), Term::app(Term::var(0), Term::var(1)));
}

#[test]
fn normalize_examples() {
    let (ctx, n) = nat_ctx();
    let t = Term::apps(n.plus_r(), [n.num(2), n.num(3)]);
    assert_eq!(reduction::normalize(&ctx, &t, cfg()).unwrap(), n.num(5));

    let inner = Term::app(Term::lam("y", n.ty(), Term::var(0)), Term::var(0));
    let t = Term::lam("x", n.ty(), inner);
    assert_eq!(reduction::normalize(&ctx, &t, cfg()).unwrap(), Term::lam("x", n.ty(), Term::var(0)));

    let t = Term::let_in("x", n.o(), None, Term::app(n.s(), Term::var(0)));
    assert_eq!(reduction::normalize(&ctx, &t, cfg()).unwrap(), n.num(1));
}

#[test]
fn delta_unfolds_context_definitions() {
    let (mut ctx, n) = nat_ctx();
    ctx.push(Entry::Def { name: name("two"), body: n.num(2), ty: n.ty() });
    let t = Term::app(n.s(), Term::var(0));
    assert_eq!(reduction::normalize(&ctx, &t, cfg()).unwrap(), n.num(3));
}

#[test]
fn conv_examples() {
    let (ctx, n) = nat_ctx();
    let id = Term::lam("x", n.ty(), Term::var(0));
    assert!(reduction::conv(&ctx, &Term::app(id, n.o()), &n.o(), cfg()).unwrap());
    let t = Term::apps(n.plus_r(), [n.num(2), n.num(2)]);
    assert!(reduction::conv(&ctx, &t, &n.num(4), cfg()).unwrap());
    assert!(!reduction::conv(&ctx, &n.o(), &n.num(1), cfg()).unwrap());
}

#[test]
fn subtype_examples() {
    let (ctx, n) = nat_ctx();
    let sub = |a: &Term, b: &Term| reduction::subtype(&ctx, a, b, cfg()).unwrap();
    assert!(sub(&Term::prop(), &Term::ty(1)));
    assert!(sub(&Term::pi("x", n.ty(), Term::prop()), &Term::pi("x", n.ty(), Term::ty(0))));
    assert!(!sub(&Term::ty(1), &Term::ty(0)));
    // Domains must agree.
    assert!(!sub(&Term::pi("x", Term::prop(), Term::prop()), &Term::pi("x", Term::ty(0), Term::prop())));
}

#[test]
fn fuel_exhaustion_is_an_error() {
    let (ctx, n) = nat_ctx();
    let t = Term::apps(n.plus_r(), [n.num(5), n.num(5)]);
    let r = reduction::normalize(&ctx, &t, ReductionConfig { max_steps: 3 });
    assert_eq!(r, Err(ReductionError::FuelExhausted));
}

#[test]
fn fix_stays_folded_on_variables() {
    let (ctx, n) = nat_ctx();
    let mut g = ctx.clone();
    g.push_assum(name("m"), n.ty());
    g.push_assum(name("k"), n.ty());
    let mut r = Reducer::new(&g, cfg());
    let t = Term::apps(n.plus_r(), [Term::var(1), Term::var(0)]);
    r.normalize(&t).unwrap();
    assert_eq!(r.stats.fix_unfolds, 0);
    assert!(r.stats.fix_blocked > 0);

    // With a constructor on top, exactly one unfolding happens before it blocks again.
    let mut r = Reducer::new(&g, cfg());
    let t = Term::apps(n.plus_r(), [Term::var(1), Term::app(n.s(), Term::var(0))]);
    r.normalize(&t).unwrap();
    assert_eq!(r.stats.fix_unfolds, 1);
}

// ---------------------------------------------------------------------------
// Closed arithmetic expressions with a unary oracle.

#[derive(Clone, Debug)]
enum E {
    Zero,
    Succ(Box<E>),
    Plus(Box<E>, Box<E>),
    /// `(fun x => body) arg`, `body` may use the bound `x`.
    Beta(Box<E>, Box<E>),
    Let(Box<E>, Box<E>),
    /// The innermost enclosing binder, or zero without one.
    Bound,
}

fn arb_expr() -> impl Strategy<Value = E> {
    let leaf = prop_oneof![Just(E::Zero), Just(E::Bound)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| E::Succ(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| E::Plus(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| E::Beta(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| E::Let(Box::new(a), Box::new(b))),
        ]
    })
}

fn oracle(e: &E, env: &[u64]) -> u64 {
    match e {
        E::Zero => 0,
        E::Succ(a) => oracle(a, env) + 1,
        E::Plus(a, b) => oracle(a, env) + oracle(b, env),
        E::Beta(body, arg) | E::Let(arg, body) => {
            let v = oracle(arg, env);
            let mut env = env.to_vec();
            env.push(v);
            oracle(body, &env)
        }
        E::Bound => env.last().copied().unwrap_or(0),
    }
}

fn to_term(e: &E, n: &Nat, depth: usize) -> Term {
    match e {
        E::Zero => n.o(),
        E::Succ(a) => Term::app(n.s(), to_term(a, n, depth)),
        E::Plus(a, b) => Term::apps(n.plus_r(), [to_term(a, n, depth), to_term(b, n, depth)]),
        E::Beta(body, arg) => Term::app(Term::lam("x", n.ty(), to_term(body, n, depth + 1)), to_term(arg, n, depth)),
        E::Let(arg, body) => Term::let_in("x", to_term(arg, n, depth), Some(n.ty()), to_term(body, n, depth + 1)),
        E::Bound if depth > 0 => Term::var(0),
        E::Bound => n.o(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_forms_match_unary_oracle(e in arb_expr()) {
        let (ctx, n) = nat_ctx();
        let t = to_term(&e, &n, 0);
        let v = reduction::normalize(&ctx, &t, cfg()).unwrap();
        prop_assert_eq!(&v, &n.num(oracle(&e, &[]) as usize));
        prop_assert_eq!(reduction::normalize(&ctx, &v, cfg()).unwrap(), v);
    }

    #[test]
    fn conv_is_an_equivalence(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        let (ctx, n) = nat_ctx();
        let (ta, tb, tc) = (to_term(&a, &n, 0), to_term(&b, &n, 0), to_term(&c, &n, 0));
        let conv = |x: &Term, y: &Term| reduction::conv(&ctx, x, y, cfg()).unwrap();
        prop_assert!(conv(&ta, &ta));
        prop_assert_eq!(conv(&ta, &tb), conv(&tb, &ta));
        prop_assert_eq!(conv(&ta, &tb), oracle(&a, &[]) == oracle(&b, &[]));
        if conv(&ta, &tb) && conv(&tb, &tc) {
            prop_assert!(conv(&ta, &tc));
        }
    }

    #[test]
    fn mutual_subtyping_is_conversion(i in 0u32..3, j in 0u32..3, prop_a in any::<bool>(), prop_b in any::<bool>()) {
        let ctx = Context::new();
        let mk = |p: bool, l: u32| if p { Term::prop() } else { Term::ty(l) };
        let (a, b) = (Term::pi("x", Term::ty(0), mk(prop_a, i)), Term::pi("x", Term::ty(0), mk(prop_b, j)));
        let ab = reduction::subtype(&ctx, &a, &b, cfg()).unwrap();
        let ba = reduction::subtype(&ctx, &b, &a, cfg()).unwrap();
        if ab && ba {
            prop_assert!(reduction::conv(&ctx, &a, &b, cfg()).unwrap());
        }
    }
}
