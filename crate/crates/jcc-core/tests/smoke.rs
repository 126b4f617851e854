mod common;
use common::*;
use jcc_core::kernel;
use jcc_core::reduction;
use jcc_core::syntax::Term;

#[test]
fn plus_typechecks_and_computes() {
    let (ctx, n) = nat_ctx();
    kernel::wf_context(&ctx, cfg()).unwrap();
    let plus = n.plus();
    let ty = kernel::infer(&ctx, &plus, cfg()).unwrap();
    assert_eq!(ty, Term::arrow(n.ty(), Term::arrow(n.ty(), n.ty())));
    let t = Term::apps(plus, [n.num(2), n.num(3)]);
    assert_eq!(reduction::normalize(&ctx, &t, cfg()).unwrap(), n.num(5));
}

mod model_smoke {
    use super::common::*;
    use jcc_core::model::*;
    use jcc_core::syntax::{Context, Term};

    fn numeral(n: usize) -> Hf {
        (0..n).fold(Hf::tuple([Hf::nat(1)]), |v, _| Hf::tuple([Hf::nat(2), v]))
    }

    #[test]
    fn plus_in_model() {
        let (ctx, n) = nat_ctx();
        let m = Model::new(&ctx, ModelConfig::default());
        let t = Term::apps(n.plus(), [n.num(2), n.num(3)]);
        let v = m.eval(&t, &Valuation::nil()).unwrap();
        assert_eq!(v.fin(), Some(&numeral(5)));
        let nat = m.eval(&n.ty(), &Valuation::nil()).unwrap();
        assert_eq!(m.mem(&v, &nat), Tri::Yes);
        let (xs, complete) = m.enumerate(&nat).unwrap();
        assert!(!complete);
        assert!(xs.len() >= 5);
    }

    #[test]
    fn consistency() {
        let m = Model::new(&Context::new(), ModelConfig::default());
        let t = Term::pi("x", Term::prop(), Term::var(0));
        assert_eq!(m.eval(&t, &Valuation::nil()).unwrap().fin(), Some(&Hf::empty()));
    }
}
