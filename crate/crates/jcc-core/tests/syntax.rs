mod common;

use std::collections::BTreeSet;

use common::*;
use jcc_core::syntax::*;
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// Fixed examples

#[test]
fn free_vars_examples() {
    let n = Nat { block: nat_block() };
    assert!(free_vars(&Term::lam("x", n.ty(), Term::var(0))).is_empty());
    // λx:A. y x with A = #0 and y = #1 in the outer scope.
    let t = Term::lam("x", Term::var(0), Term::app(Term::var(2), Term::var(0)));
    assert_eq!(free_vars(&t), BTreeSet::from([0, 1]));
    // The fix name is bound.
    let f = Term::fix(
        0,
        vec![FixDef {
            name: name("f"),
            rec_arg: 0,
            ty: Term::arrow(n.ty(), n.ty()),
            body: Term::lam("n", n.ty(), Term::app(Term::var(1), Term::var(0))),
        }],
    );
    assert!(free_vars(&f).is_empty());
}

#[test]
fn substitute_examples() {
    let u = Term::app(Term::var(3), Term::var(4));
    // (Πy:A.B)[x\u] touches the domain; the bound y in B is untouched.
    let t = Term::pi("y", Term::var(0), Term::var(0));
    assert_eq!(substitute(&t, 0, &u), Term::pi("y", u.clone(), Term::var(0)));
    assert_eq!(substitute(&Term::prop(), 0, &u), Term::prop());
    assert_eq!(substitute(&Term::ty(3), 7, &u), Term::ty(3));
    // (λy:nat. x)[x\y]: the body must refer to the outer y, not the binder.
    let n = Nat { block: nat_block() };
    let t = Term::lam("y", n.ty(), Term::var(1));
    let r = substitute(&t, 0, &Term::var(1));
    assert_eq!(r, Term::lam("y", n.ty(), Term::var(2)));
    let names = [name("y"), name("x")];
    assert_eq!(jcc_core::pretty::print_with(&names, &r), "fun (y0:nat) => y");
}

#[test]
fn simultaneous_and_sequential() {
    // x = #0, y = #1
    let swap = [(0, Term::var(1)), (1, Term::var(0))];
    assert_eq!(simultaneous_subst(&Term::var(0), &swap), Term::var(1));
    assert_eq!(sequential_subst(&Term::var(0), &swap), Term::var(0));
    let t = Term::app(Term::var(0), Term::var(1));
    assert_eq!(simultaneous_subst(&t, &[]), t);
}

#[test]
fn replace_ind_names_examples() {
    let b = nat_block();
    let r = replace_ind_names(&Term::arrow(Term::Rec(0), Term::Rec(0)), &b);
    let nat = Term::Ind(b.clone(), 0);
    assert_eq!(r, Term::arrow(nat.clone(), nat));
    assert_eq!(replace_ind_names(&Term::ty(0), &b), Term::ty(0));

    let tf = tree_forest_block();
    let a = Term::arrow(Term::app(Term::Rec(0), Term::var(0)), Term::app(Term::Rec(1), Term::var(0)));
    let want = Term::arrow(
        Term::app(Term::Ind(tf.clone(), 0), Term::var(0)),
        Term::app(Term::Ind(tf.clone(), 1), Term::var(0)),
    );
    assert_eq!(replace_ind_names(&a, &tf), want);
}

#[test]
fn size_examples() {
    assert_eq!(context_size(&Context::new()), Size::HALF);
    assert_eq!(term_size(&Term::var(0)), 1);
    let mut g = Context::new();
    g.push_assum(name("x"), Term::prop());
    assert!(judgment_size(&Context::new(), &Term::prop()) < context_size(&g));
    assert_eq!(format!("{}", context_size(&Context::new())), "1/2");
}

#[test]
fn alpha_examples() {
    let a = Term::ty(0);
    assert!(alpha_eq(&Term::lam("x", a.clone(), Term::var(0)), &Term::lam("y", a.clone(), Term::var(0))));
    assert!(!alpha_eq(&Term::lam("x", a.clone(), Term::var(0)), &Term::lam("x", a.clone(), a.clone())));
    let b = Term::prop();
    let l = Term::pi("x", a.clone(), Term::pi("y", b.clone(), Term::var(1)));
    let r = Term::pi("y", a, Term::pi("x", b, Term::var(1)));
    assert!(alpha_eq(&l, &r));
}

// ---------------------------------------------------------------------------
// A named oracle for substitution: binders get globally fresh names, so
// naive replacement cannot capture.

#[derive(Clone, Debug, PartialEq)]
enum N {
    V(String),
    S(Sort),
    Pi(String, Box<N>, Box<N>),
    Lam(String, Box<N>, Box<N>),
    App(Box<N>, Box<N>),
}

fn free_name(i: usize) -> String {
    format!("free{}", i)
}

fn to_named(t: &Term, scope: &mut Vec<String>, fresh: &mut usize) -> N {
    match t {
        Term::Var(i) => {
            if *i < scope.len() {
                N::V(scope[scope.len() - 1 - i].clone())
            } else {
                N::V(free_name(i - scope.len()))
            }
        }
        Term::Sort(s) => N::S(*s),
        Term::Pi(_, a, b) | Term::Lam(_, a, b) => {
            let a = to_named(a, scope, fresh);
            *fresh += 1;
            let x = format!("b{}", fresh);
            scope.push(x.clone());
            let b = to_named(b, scope, fresh);
            scope.pop();
            if matches!(t, Term::Pi(..)) {
                N::Pi(x, Box::new(a), Box::new(b))
            } else {
                N::Lam(x, Box::new(a), Box::new(b))
            }
        }
        Term::App(f, a) => N::App(Box::new(to_named(f, scope, fresh)), Box::new(to_named(a, scope, fresh))),
        _ => unreachable!("generator only builds the pure fragment"),
    }
}

fn named_subst(t: &N, x: &str, u: &N) -> N {
    match t {
        N::V(y) if y == x => u.clone(),
        N::V(_) | N::S(_) => t.clone(),
        N::Pi(y, a, b) => N::Pi(y.clone(), Box::new(named_subst(a, x, u)), Box::new(named_subst(b, x, u))),
        N::Lam(y, a, b) => N::Lam(y.clone(), Box::new(named_subst(a, x, u)), Box::new(named_subst(b, x, u))),
        N::App(f, a) => N::App(Box::new(named_subst(f, x, u)), Box::new(named_subst(a, x, u))),
    }
}

fn from_named(t: &N, scope: &mut Vec<String>) -> Term {
    match t {
        N::V(x) => match scope.iter().rev().position(|y| y == x) {
            Some(i) => Term::var(i),
            None => Term::var(scope.len() + x.strip_prefix("free").unwrap().parse::<usize>().unwrap()),
        },
        N::S(s) => Term::Sort(*s),
        N::Pi(x, a, b) | N::Lam(x, a, b) => {
            let a = from_named(a, scope);
            scope.push(x.clone());
            let b = from_named(b, scope);
            scope.pop();
            if matches!(t, N::Pi(..)) {
                Term::pi(x, a, b)
            } else {
                Term::lam(x, a, b)
            }
        }
        N::App(f, a) => Term::app(from_named(f, scope), from_named(a, scope)),
    }
}

// ---------------------------------------------------------------------------
// Generators

fn arb_sort() -> impl Strategy<Value = Sort> {
    prop_oneof![Just(Sort::Prop), (0u32..3).prop_map(Sort::Type)]
}

/// Terms of the binder/application fragment; indices may be free.
fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![(0usize..6).prop_map(Term::var), arb_sort().prop_map(Term::Sort)];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::pi("x", a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::lam("y", a, b)),
            (inner.clone(), inner).prop_map(|(f, a)| Term::app(f, a)),
        ]
    })
}

/// The same term with every binder hint replaced.
fn rename(t: &Term, tag: &str) -> Term {
    match t {
        Term::Pi(_, a, b) => Term::pi(tag, rename(a, tag), rename(b, tag)),
        Term::Lam(_, a, b) => Term::lam(tag, rename(a, tag), rename(b, tag)),
        Term::App(f, a) => Term::app(rename(f, tag), rename(a, tag)),
        _ => t.clone(),
    }
}

fn wrap_fix(ty: Term, body: Term) -> Term {
    Term::fix(0, vec![FixDef { name: name("f"), rec_arg: 0, ty, body }])
}

proptest! {
    #[test]
    fn substitution_matches_named_oracle(t in arb_term(), x in 0usize..4, u in arb_term()) {
        let mut fresh = 0;
        let nt = to_named(&t, &mut Vec::new(), &mut fresh);
        let nu = to_named(&u, &mut Vec::new(), &mut fresh);
        let want = from_named(&named_subst(&nt, &free_name(x), &nu), &mut Vec::new());
        prop_assert_eq!(substitute(&t, x, &u), want);
    }

    #[test]
    fn substituted_variable_disappears(t in arb_term(), x in 0usize..4, u in arb_term()) {
        prop_assume!(!free_vars(&u).contains(&x));
        prop_assert!(!free_vars(&substitute(&t, x, &u)).contains(&x));
    }

    #[test]
    fn substitute_by_itself_is_identity(t in arb_term(), x in 0usize..6) {
        prop_assert!(alpha_eq(&substitute(&t, x, &Term::var(x)), &t));
    }

    #[test]
    fn alpha_is_an_equivalence(t in arb_term(), u in arb_term()) {
        let t2 = rename(&t, "renamed");
        prop_assert!(alpha_eq(&t, &t));
        prop_assert_eq!(alpha_eq(&t, &u), alpha_eq(&u, &t));
        prop_assert!(alpha_eq(&t, &t2) && alpha_eq(&t2, &t));
        prop_assert_eq!(alpha_eq(&t2, &u), alpha_eq(&t, &u));
    }

    #[test]
    fn substitution_respects_alpha(t in arb_term(), x in 0usize..4, u in arb_term()) {
        let a = substitute(&t, x, &u);
        let b = substitute(&rename(&t, "p"), x, &rename(&u, "q"));
        prop_assert!(alpha_eq(&a, &b));
    }

    #[test]
    fn simultaneous_subst_with_disjoint_closed_terms_is_sequential(
        t in arb_term(),
        s1 in arb_sort(),
        s2 in arb_sort(),
    ) {
        let delta = [(0, Term::Sort(s1)), (1, Term::Sort(s2))];
        prop_assert_eq!(simultaneous_subst(&t, &delta), sequential_subst(&t, &delta));
    }

    #[test]
    fn size_ordering(ts in proptest::collection::vec(arb_term(), 0..4), a in arb_term(), t in arb_term()) {
        let mut g = Context::new();
        for (i, ty) in ts.iter().enumerate() {
            g.push_assum(name(&format!("h{}", i)), ty.clone());
        }
        let mut ext = g.clone();
        ext.push_assum(name("x"), a.clone());
        prop_assert!(context_size(&g) < judgment_size(&g, &a));
        prop_assert!(judgment_size(&g, &a) < context_size(&ext));

        let mut def = g.clone();
        def.push(Entry::Def { name: name("x"), body: t.clone(), ty: a.clone() });
        prop_assert!(judgment_size(&g, &t) < context_size(&def));
        prop_assert!(judgment_size(&g, &a) < context_size(&def));

        let fx = wrap_fix(a.clone(), t.clone());
        prop_assert!(term_size(&a) < term_size(&fx));
        prop_assert!(term_size(&t) < term_size(&fx));
    }
}

#[test]
fn block_reference_is_larger_than_its_declarations() {
    for b in [nat_block(), tree_forest_block()] {
        for x in 0..b.name_count() {
            let r = term_size(&Term::Ind(b.clone(), x));
            for (_, decl) in b.inds().iter().chain(b.cons()) {
                assert!(term_size(decl) < r);
            }
        }
    }
}
