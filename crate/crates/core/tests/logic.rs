use ootp_core::logic::{
    parse_formula, parse_sequent, print_formula, print_sequent, unify, MetaVar, Substitution, Term,
};
use ootp_testkit::gen::{fo_formula, fo_sequent};
use proptest::prelude::*;

fn term(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        Just(Term::constant("a")),
        Just(Term::constant("b")),
        (0u32..3).prop_map(|k| Term::meta(["u", "v", "w"][k as usize], 0)),
    ];
    if depth == 0 {
        return leaf.boxed();
    }
    prop_oneof![
        2 => leaf,
        1 => term(depth - 1).prop_map(|t| Term::app("f", vec![t])),
        1 => (term(depth - 1), term(depth - 1)).prop_map(|(s, t)| Term::app("g", vec![s, t])),
    ]
    .boxed()
}

fn ground(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![Just(Term::constant("a")), Just(Term::constant("b"))];
    if depth == 0 {
        return leaf.boxed();
    }
    prop_oneof![2 => leaf, 1 => ground(depth - 1).prop_map(|t| Term::app("f", vec![t]))].boxed()
}

fn metas(t: &Term, out: &mut Vec<MetaVar>) {
    match t {
        Term::Meta(m) if !out.contains(m) => out.push(m.clone()),
        Term::App(_, args) => args.iter().for_each(|a| metas(a, out)),
        _ => {}
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn formulas_round_trip(f in fo_formula(3)) {
        let text = print_formula(&f);
        prop_assert_eq!(parse_formula(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn sequents_round_trip(s in fo_sequent()) {
        let text = print_sequent(&s);
        prop_assert_eq!(parse_sequent(&text).unwrap(), s);
    }

    #[test]
    fn unifiers_unify_and_are_idempotent(s in term(3), t in term(3)) {
        if let Some(u) = unify(&s, &t, &Substitution::new()) {
            prop_assert_eq!(u.apply_term(&s), u.apply_term(&t));
            prop_assert_eq!(u.apply_term(&u.apply_term(&s)), u.apply_term(&s));
        }
    }

    /// Any ground unifier factors through the most general one.
    #[test]
    fn unifiers_are_most_general(s in term(3), theta in proptest::collection::vec(ground(2), 3)) {
        let names = ["u", "v", "w"];
        let th = Substitution::from_bindings(
            names.iter().zip(theta).map(|(n, t)| (MetaVar::new(*n, 0), t)),
        ).unwrap();
        let target = th.apply_term(&s);
        let u = unify(&s, &target, &Substitution::new());
        prop_assert!(u.is_some());
        let u = u.unwrap();
        let mut ms = Vec::new();
        metas(&s, &mut ms);
        for m in ms {
            let x = Term::Meta(m);
            prop_assert_eq!(th.apply_term(&u.apply_term(&x)), th.apply_term(&x));
        }
    }

    #[test]
    fn compose_applies_in_order(t in term(3), a in ground(2), b in term(1)) {
        // `b` may mention ?u itself, which no substitution can bind.
        let s1 = Substitution::from_bindings([(MetaVar::new("u", 0), b)]);
        prop_assume!(s1.is_some());
        let s1 = s1.unwrap();
        let s2 = Substitution::from_bindings([(MetaVar::new("v", 0), a)]).unwrap();
        prop_assert_eq!(s1.compose(&s2).apply_term(&t), s2.apply_term(&s1.apply_term(&t)));
    }

    #[test]
    fn unification_is_symmetric_in_success(s in term(2), t in term(2)) {
        let e = Substitution::new();
        prop_assert_eq!(unify(&s, &t, &e).is_some(), unify(&t, &s, &e).is_some());
    }
}
