mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::*;
use jcc_core::model::*;
use jcc_core::syntax::{name, shift, substitute, Context, Entry, Term};
use proptest::prelude::*;

fn cfgm() -> ModelConfig {
    ModelConfig::default()
}

/// `{{a},{a,b}}`, built without the library's pair.
fn kpair(a: &Hf, b: &Hf) -> Hf {
    Hf::from_iter([Hf::from_iter([a.clone()]), Hf::from_iter([a.clone(), b.clone()])])
}

/// Unary numeral encoding: `O = ⟨1⟩`, `S n = ⟨2, n⟩`.
fn numeral(n: usize) -> Hf {
    let tuple = |xs: Vec<Hf>| xs.iter().rev().fold(Hf::empty(), |acc, x| kpair(x, &acc));
    (0..n).fold(tuple(vec![Hf::nat(1)]), |v, _| tuple(vec![Hf::nat(2), v]))
}

fn one() -> Hf {
    Hf::nat(1)
}

// ---------------------------------------------------------------------------
// Encodings

#[test]
fn aczel_examples() {
    let (a, b) = (Hf::nat(3), Hf::nat(2));
    assert_eq!(aczel_app(&Hf::empty(), &a), Hf::empty());
    let f = aczel_lam([(&a, &Hf::singleton(b.clone()))]);
    assert_eq!(aczel_app(&f, &a), Hf::singleton(b));
    assert_eq!(aczel_lam(std::iter::empty()), Hf::empty());
    let g = aczel_lam([(&Hf::empty(), &one())]);
    assert_eq!(g, Hf::singleton(kpair(&Hf::empty(), &Hf::empty())));
}

#[test]
fn tuple_examples() {
    assert_eq!(encode_tuple(&[]), Hf::empty());
    assert_eq!(encode_tuple(&[Hf::nat(1)]), kpair(&Hf::nat(1), &Hf::empty()));
    assert_eq!(encode_tuple(&[Hf::nat(2), encode_tuple(&[Hf::nat(1)])]), numeral(1));
    assert_eq!(format!("{}", numeral(2)), "⟨2,⟨2,⟨1⟩⟩⟩");
    let t = Hf::tuple([Hf::nat(4), Hf::nat(0), numeral(3)]);
    assert_eq!(t.untuple().unwrap(), vec![Hf::nat(4), Hf::nat(0), numeral(3)]);
}

#[test]
fn rank_enumeration_matches_ackermann_codes() {
    // Sets of rank at most r have codes below the tower 2↑↑r.
    for (r, tower) in [(0usize, 1u64), (1, 2), (2, 4), (3, 16), (4, 1 << 16)] {
        let want: BTreeSet<Hf> = (0..tower).map(Hf::from_ackermann).filter(|h| h.rank() <= r).collect();
        let got: BTreeSet<Hf> = Hf::rank_at_most(r, usize::MAX).into_iter().collect();
        assert_eq!(got, want, "rank {}", r);
    }
    assert_eq!(Hf::rank_at_most(4, 10).len(), 10);
}

#[test]
fn successor_on_numerals() {
    let (ctx, n) = nat_ctx();
    let m = Model::new(&ctx, cfgm());
    let s = m.eval(&n.s(), &Valuation::nil()).unwrap();
    for k in 0..4 {
        let v = m.apply(&s, &SemValue::Fin(numeral(k))).unwrap();
        assert_eq!(m.lower(&v).unwrap(), Hf::tuple([Hf::nat(2), numeral(k)]));
    }
}

// ---------------------------------------------------------------------------
// Least fixpoints

fn nat_family(m: &Model, n: &Nat) -> Arc<IndFamily> {
    match m.eval(&n.ty(), &Valuation::nil()).unwrap() {
        SemValue::Family(f) => f,
        other => panic!("nat evaluated to {}", other),
    }
}

#[test]
fn nat_rules_and_lfp() {
    let (ctx, n) = nat_ctx();
    let m = Model::new(&ctx, cfgm());
    let rules = m.ind_rules(&nat_family(&m, &n)).unwrap();
    let tag = |v: Hf| Hf::tuple([Hf::nat(0), v]);
    assert_eq!(rules.premises(&tag(numeral(0))).unwrap(), Some(BTreeSet::new()));
    assert_eq!(rules.premises(&tag(numeral(3))).unwrap(), Some(BTreeSet::from([tag(numeral(2))])));
    assert_eq!(rules.premises(&tag(Hf::nat(3))).unwrap(), None);

    let r = lfp(&rules, 4, 1000).unwrap();
    assert_eq!(r.status, LfpStatus::TruncatedAtDepth);
    assert_eq!(r.set, (0..4).map(|k| tag(numeral(k))).collect());
}

#[test]
fn empty_rule_set_is_complete() {
    let r = lfp(&FiniteRuleSet::default(), 5, 10).unwrap();
    assert!(r.is_complete());
    assert!(r.set.is_empty());
}

#[test]
fn tree_forest_lfp_at_two_elements() {
    let tf = tree_forest_block();
    let mut ctx = Context::new();
    ctx.push(Entry::Ind(tf.clone()));
    let m = Model::new(&ctx, cfgm());
    let a = Hf::nat(2);
    let fam =
        IndFamily { block: tf, ind: 0, env: Valuation::nil(), params: vec![SemValue::Fin(a.clone())], indices: vec![] };
    let rules = m.ind_rules(&fam).unwrap();
    let r = lfp(&rules, 3, 10_000).unwrap();
    let emptyf = Hf::tuple([Hf::nat(2)]);
    assert!(r.set.contains(&Hf::tuple([Hf::nat(1), a.clone(), emptyf.clone()])));
    for x in a.elements() {
        let node = Hf::tuple([Hf::nat(1), x.clone(), emptyf.clone()]);
        assert!(r.set.contains(&Hf::tuple([Hf::nat(0), a.clone(), node])));
    }
    // Iteration 3 reaches consf (node x emptyf) emptyf but no deeper.
    let n_forests = r.set.iter().filter(|c| c.untuple().unwrap()[0] == Hf::nat(1)).count();
    assert_eq!(n_forests, 1 + 2);
}

// ---------------------------------------------------------------------------
// Valuations, interpretation and membership

#[test]
fn interp_ctx_examples() {
    let (vals, complete) = interp_ctx(&Context::new(), cfgm()).unwrap();
    assert!(complete && vals.len() == 1 && vals[0].is_empty());

    let mut g = Context::new();
    g.push_assum(name("P"), Term::prop());
    let (vals, complete) = interp_ctx(&g, cfgm()).unwrap();
    assert!(complete);
    let got: BTreeSet<Hf> = vals.iter().map(|v| v.get(0).unwrap().fin().unwrap().clone()).collect();
    assert_eq!(got, BTreeSet::from([Hf::nat(0), Hf::nat(1)]));

    let (mut ctx, n) = nat_ctx();
    ctx.push(Entry::Def { name: name("x"), body: n.o(), ty: n.ty() });
    let (vals, _) = interp_ctx(&ctx, cfgm()).unwrap();
    assert_eq!(vals.len(), 1);
    assert_eq!(vals[0].get(0).unwrap().fin(), Some(&numeral(0)));
}

#[test]
fn interp_examples() {
    let e = Context::new();
    let m = Model::new(&e, cfgm());
    let bottom = Term::pi("x", Term::prop(), Term::var(0));
    assert_eq!(m.eval(&bottom, &Valuation::nil()).unwrap().fin(), Some(&Hf::empty()));

    let (ctx, n) = nat_ctx();
    let m = Model::new(&ctx, cfgm());
    let t = Term::apps(n.plus_r(), [n.num(2), n.num(3)]);
    assert_eq!(m.eval(&t, &Valuation::nil()).unwrap().fin(), Some(&numeral(5)));
}

/// `P := Πα:Prop. α → α : Prop` and `I := λA:Type0. A → A`.
fn i_and_p() -> (Term, Term) {
    let p = Term::pi("a", Term::prop(), Term::arrow(Term::var(0), Term::var(0)));
    let i = Term::lam("A", Term::ty(0), Term::arrow(Term::var(0), Term::var(0)));
    (i, p)
}

#[test]
fn i_applied_to_p_is_one() {
    let (i, p) = i_and_p();
    let mut g = Context::new();
    g.push(Entry::Def { name: name("P"), body: p.clone(), ty: Term::prop() });
    let (vals, _) = interp_ctx(&g, cfgm()).unwrap();
    let m = Model::new(&g, cfgm());
    let v = m.eval(&Term::app(i.lift(1), Term::var(0)), &vals[0]).unwrap();
    assert_eq!(v.fin(), Some(&one()));
}

#[test]
fn membership_examples() {
    let (ctx, n) = nat_ctx();
    let m = Model::new(&ctx, ModelConfig { fixpoint_depth: 4, ..cfgm() });
    let nat = m.eval(&n.ty(), &Valuation::nil()).unwrap();
    assert_eq!(m.mem(&SemValue::Fin(numeral(1)), &nat), Tri::Yes);
    assert_eq!(m.mem(&SemValue::Fin(Hf::nat(5)), &nat), Tri::No);

    let bottom = m.eval(&Term::pi("x", Term::prop(), Term::var(0)), &Valuation::nil()).unwrap();
    assert_eq!(m.mem(&SemValue::Fin(numeral(0)), &bottom), Tri::No);
    assert_eq!(m.mem(&SemValue::Fin(Hf::empty()), &SemValue::Fin(one())), Tri::Yes);
}

#[test]
fn soundness_examples() {
    let id = Term::lam("a", Term::prop(), Term::lam("p", Term::var(0), Term::var(0)));
    let ty = Term::pi("a", Term::prop(), Term::arrow(Term::var(0), Term::var(0)));
    let j = Judgment { name: "pid".into(), ctx: Context::new(), term: id, ty };
    let rep = check_soundness(&[j], cfgm());
    assert_eq!(rep.count(Tri::Yes), 1);

    let (ctx, n) = nat_ctx();
    let j =
        Judgment { name: "plus".into(), ctx, term: n.plus_r(), ty: Term::arrow(n.ty(), Term::arrow(n.ty(), n.ty())) };
    let rep = check_soundness(&[j], ModelConfig { fixpoint_depth: 6, ..cfgm() });
    assert_eq!(rep.count(Tri::No), 0);
    assert!(rep.judgments[0].samples > 0);
}

#[test]
fn let_annotation_does_not_matter() {
    let (i, p) = i_and_p();
    let m = Model::new(&Context::new(), cfgm());
    let body = Term::app(i.lift(1), Term::var(0));
    let at_prop = Term::let_in("p", p.clone(), Some(Term::prop()), body.clone());
    let at_type = Term::let_in("p", p.clone(), Some(Term::ty(0)), body.clone());
    let bare = Term::let_in("p", p, None, body);
    let vs: Vec<Hf> =
        [at_prop, at_type, bare].iter().map(|t| m.eval(t, &Valuation::nil()).unwrap().fin().unwrap().clone()).collect();
    assert!(vs.iter().all(|v| *v == one()));
}

#[test]
fn proofs_denote_the_empty_set() {
    let (_, p) = i_and_p();
    let m = Model::new(&Context::new(), cfgm());
    let pid = Term::lam("a", Term::prop(), Term::lam("x", Term::var(0), Term::var(0)));
    let pid2 = Term::app(Term::app(pid.clone(), p.clone()), pid.clone());
    for t in [&pid, &pid2] {
        assert_eq!(m.eval(t, &Valuation::nil()).unwrap().fin(), Some(&Hf::empty()));
    }
    assert_eq!(m.eval(&p, &Valuation::nil()).unwrap().fin(), Some(&one()));
}

// ---------------------------------------------------------------------------
// Properties

fn arb_hf() -> impl Strategy<Value = Hf> {
    (0u64..1 << 12).prop_map(Hf::from_ackermann)
}

/// All functions `f` with `f(x) ∈ b[x]`, as lists of values.
fn product(b: &[Hf]) -> Vec<Vec<Hf>> {
    b.iter().fold(vec![vec![]], |acc, bx| {
        acc.iter()
            .flat_map(|f| {
                bx.elements().iter().map(move |y| {
                    let mut g = f.clone();
                    g.push(y.clone());
                    g
                })
            })
            .collect()
    })
}

#[test]
fn proof_irrelevance_lemma_exhaustive() {
    for size in 0..=3usize {
        let dom: Vec<Hf> = (0..size).map(Hf::nat).collect();
        for mask in 0..(1usize << size) {
            // B(x) ∈ {∅, 1}
            let b: Vec<Hf> = (0..size).map(|i| if mask >> i & 1 == 1 { one() } else { Hf::empty() }).collect();
            let lams: BTreeSet<Hf> = product(&b).iter().map(|f| aczel_lam(dom.iter().zip(f.iter()))).collect();
            let set = Hf::from_iter(lams);
            assert!(set.is_subset(&one()), "image not within 1");
            let all_one = b.iter().all(|x| *x == one());
            assert_eq!(set == one(), all_one);
        }
    }
}

/// Random rule sets over small conclusions `nat(0..8)`.
fn arb_rules() -> impl Strategy<Value = FiniteRuleSet> {
    let rule = (proptest::collection::btree_set(0usize..8, 0..3), 0usize..8)
        .prop_map(|(ps, c)| Rule { premises: ps.into_iter().map(Hf::nat).collect(), conclusion: Hf::nat(c) });
    proptest::collection::vec(rule, 0..10).prop_map(|rs| {
        // Keep one rule per conclusion.
        let mut seen = BTreeMap::new();
        for r in rs {
            seen.entry(r.conclusion.clone()).or_insert(r);
        }
        FiniteRuleSet::new(seen.into_values().collect())
    })
}

fn arb_subset() -> impl Strategy<Value = BTreeSet<Hf>> {
    proptest::collection::btree_set((0usize..8).prop_map(Hf::nat), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn app_after_lam(graph in proptest::collection::btree_map(arb_hf(), arb_hf(), 0..6), probe in arb_hf()) {
        let pairs: Vec<(&Hf, &Hf)> = graph.iter().collect();
        let u = aczel_lam(pairs);
        for (x, y) in &graph {
            prop_assert_eq!(&aczel_app(&u, x), y);
        }
        if !graph.contains_key(&probe) {
            prop_assert_eq!(aczel_app(&u, &probe), Hf::empty());
        }
    }

    #[test]
    fn step_is_monotone(phi in arb_rules(), x in arb_subset(), extra in arb_subset()) {
        let y: BTreeSet<Hf> = x.union(&extra).cloned().collect();
        let gx = phi.step(&x).unwrap().out;
        let gy = phi.step(&y).unwrap().out;
        prop_assert!(gx.is_subset(&gy));
    }

    #[test]
    fn completed_lfp_is_minimal(phi in arb_rules()) {
        prop_assert!(phi.is_deterministic());
        let r = lfp(&phi, 20, 100).unwrap();
        prop_assert!(r.is_complete());
        prop_assert!(is_closed(&phi, &r.set).unwrap());
        prop_assert!(check_minimality(&phi, &r.set).unwrap());
    }
}

// Substitutivity and β over nat expressions with free variables. A shallow
// depth keeps the per-model enumeration of nat cheap; membership is only
// used to reject arguments, which a shallow bound never does wrongly.

fn shallow() -> ModelConfig {
    ModelConfig { fixpoint_depth: 6, ..cfgm() }
}

#[derive(Clone, Debug)]
enum E {
    Zero,
    Var(usize),
    Succ(Box<E>),
    Plus(Box<E>, Box<E>),
    Beta(Box<E>, Box<E>),
    Let(Box<E>, Box<E>),
}

fn arb_e(free: usize) -> impl Strategy<Value = E> {
    let leaf = prop_oneof![Just(E::Zero), (0..free + 1).prop_map(E::Var)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| E::Succ(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| E::Plus(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| E::Beta(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| E::Let(Box::new(a), Box::new(b))),
        ]
    })
}

/// Variables out of range at the current depth become `O`.
fn e_term(e: &E, n: &Nat, scope: usize) -> Term {
    match e {
        E::Zero => n.o(),
        E::Var(i) if *i < scope => Term::var(*i),
        E::Var(_) => n.o(),
        E::Succ(a) => Term::app(n.s(), e_term(a, n, scope)),
        E::Plus(a, b) => Term::apps(n.plus_r(), [e_term(a, n, scope), e_term(b, n, scope)]),
        E::Beta(b, a) => Term::app(Term::lam("z", n.ty(), e_term(b, n, scope + 1)), e_term(a, n, scope)),
        E::Let(a, b) => Term::let_in("z", e_term(a, n, scope), None, e_term(b, n, scope + 1)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    /// Γ = nat, x:nat, y:nat; t[x\u] in Γ,y against t at (⟦u⟧, y).
    #[test]
    fn substitutivity(t in arb_e(2), u in arb_e(0), y in 0usize..4) {
        let (ctx, n) = nat_ctx();
        let t = e_term(&t, &n, 2);
        let u = e_term(&u, &n, 0);
        let m = Model::new(&ctx, shallow());
        let nil = Valuation::nil();
        let alpha = m.eval(&u, &nil).unwrap();
        let yv = SemValue::Fin(numeral(y));
        let lhs_t = shift(&substitute(&t, 1, &u.lift(2)), -1, 2);
        let lhs = m.eval(&lhs_t, &nil.push(yv.clone())).unwrap();
        let rhs = m.eval(&t, &nil.push(alpha).push(yv)).unwrap();
        prop_assert_eq!(m.lower(&lhs), m.lower(&rhs));
    }

    #[test]
    fn beta_is_sound(body in arb_e(1), arg in arb_e(0)) {
        let (ctx, n) = nat_ctx();
        let body = e_term(&body, &n, 1);
        let arg = e_term(&arg, &n, 0);
        let m = Model::new(&ctx, shallow());
        let redex = Term::app(Term::lam("x", n.ty(), body.clone()), arg.clone());
        let contractum = jcc_core::syntax::instantiate(&body, &arg);
        let a = m.eval(&redex, &Valuation::nil()).unwrap();
        let b = m.eval(&contractum, &Valuation::nil()).unwrap();
        prop_assert_eq!(m.lower(&a), m.lower(&b));
    }
}
