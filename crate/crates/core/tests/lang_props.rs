mod common;

use common::{arb_atom, arb_cardinal, arb_expr};
use divgroup::lang::normalize;
use divgroup::{parse, Cardinal, GroupExpr, Limits};
use proptest::prelude::*;

fn nf(e: &GroupExpr) -> divgroup::NormalForm {
    normalize(e, &Limits::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(e in arb_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_form_is_a_fixed_point(e in arb_expr()) {
        let first = nf(&e);
        let again = nf(&first.to_expr());
        prop_assert_eq!(&again, &first);
        // and through the printed form
        prop_assert_eq!(nf(&parse(&first.to_expr().to_string()).unwrap()), first);
    }

    #[test]
    fn summands_commute(a in arb_expr(), b in arb_expr()) {
        let ab = GroupExpr::Sum(vec![a.clone(), b.clone()]);
        let ba = GroupExpr::Sum(vec![b, a]);
        prop_assert_eq!(nf(&ab), nf(&ba));
    }

    #[test]
    fn multiplicities_split(base in arb_expr(), a in 0u64..6, b in 0u64..6) {
        let whole = GroupExpr::power(base.clone(), Cardinal::from(a + b));
        let parts = GroupExpr::Sum(vec![
            GroupExpr::power(base.clone(), Cardinal::from(a)),
            GroupExpr::power(base, Cardinal::from(b)),
        ]);
        prop_assert_eq!(nf(&whole), nf(&parts));
    }

    #[test]
    fn countable_multiplicities_absorb(atom in arb_atom(), c in arb_cardinal()) {
        prop_assume!(c != Cardinal::Continuum);
        let base = GroupExpr::Atom(atom);
        let inf = GroupExpr::power(base.clone(), Cardinal::Aleph0);
        let more = GroupExpr::Sum(vec![inf.clone(), GroupExpr::power(base, c)]);
        prop_assert_eq!(nf(&more), nf(&inf));
    }
}
