//! Random formulas, sequents and goal bundles.

use std::collections::BTreeSet;

use ootp_core::logic::{parse_formula, print_sequent, BinOp, Formula, Sequent};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

pub const ATOMS: [&str; 3] = ["P", "Q", "R"];

fn op() -> impl Strategy<Value = BinOp> {
    prop_oneof![
        Just(BinOp::And),
        Just(BinOp::Or),
        Just(BinOp::Imp),
        Just(BinOp::Iff)
    ]
}

/// Propositional formulas over [`ATOMS`] of connective depth at most `depth`.
pub fn prop_formula(depth: u32) -> BoxedStrategy<Formula> {
    let atom = proptest::sample::select(&ATOMS[..]).prop_map(Formula::atom);
    if depth == 0 {
        return atom.boxed();
    }
    let sub = prop_formula(depth - 1);
    prop_oneof![
        1 => atom,
        1 => sub.clone().prop_map(Formula::not),
        4 => (op(), sub.clone(), sub).prop_map(|(o, a, b)| Formula::conn(o, a, b)),
    ]
    .boxed()
}

/// A propositional formula of depth at most 3, sometimes split at its main
/// connective into a sequent with several sides.
pub fn prop_sequent() -> BoxedStrategy<Sequent> {
    (prop_formula(3), any::<bool>())
        .prop_map(|(f, split)| match f {
            Formula::Conn(BinOp::Imp, a, b) if split => Sequent::new(vec![*a], vec![*b]),
            Formula::Conn(BinOp::Or, a, b) if split => Sequent::new(vec![], vec![*a, *b]),
            Formula::Conn(BinOp::And, a, b) if split => {
                Sequent::new(vec![*a, *b], vec![Formula::atom("P")])
            }
            Formula::Not(a) if split => Sequent::new(vec![*a], vec![]),
            f => Sequent::new(vec![], vec![f]),
        })
        .boxed()
}

/// `n` deterministic draws from `s`.
pub fn sample<S: Strategy>(s: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n)
        .map(|_| {
            s.new_tree(&mut runner)
                .expect("strategy never rejects")
                .current()
        })
        .collect()
}

/// `n` distinct propositional sequents, the same on every call.
pub fn propositional_corpus(n: usize) -> Vec<Sequent> {
    let mut runner = TestRunner::deterministic();
    let s = prop_sequent();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let q = s
            .new_tree(&mut runner)
            .expect("strategy never rejects")
            .current();
        if seen.insert(print_sequent(&q)) {
            out.push(q);
        }
    }
    out
}

fn term_text(vars: Vec<String>) -> BoxedStrategy<String> {
    let mut leaves = vec![
        "a".to_string(),
        "b".to_string(),
        "?u".to_string(),
        "?v".to_string(),
    ];
    leaves.extend(vars);
    let leaf = proptest::sample::select(leaves);
    prop_oneof![3 => leaf.clone(), 1 => leaf.prop_map(|t| format!("f({t})"))].boxed()
}

fn fo_text(depth: u32, vars: Vec<String>) -> BoxedStrategy<String> {
    let atom = prop_oneof![
        Just("Q".to_string()),
        term_text(vars.clone()).prop_map(|t| format!("P({t})")),
        (term_text(vars.clone()), term_text(vars.clone())).prop_map(|(s, t)| format!("R({s},{t})")),
    ];
    if depth == 0 {
        return atom.boxed();
    }
    let x = format!("x{depth}");
    let mut inner = vars.clone();
    inner.push(x.clone());
    let sub = fo_text(depth - 1, vars);
    let body = fo_text(depth - 1, inner);
    let y = x.clone();
    prop_oneof![
        2 => atom,
        1 => sub.clone().prop_map(|f| format!("~{f}")),
        3 => (op(), sub.clone(), sub).prop_map(|(o, a, b)| format!("({a} {} {b})", o.symbol())),
        1 => body.clone().prop_map(move |f| format!("(ALL {x}. {f})")),
        1 => body.prop_map(move |f| format!("(EX {y}. {f})")),
    ]
    .boxed()
}

/// First-order formulas over `P/1`, `R/2`, `Q`, constants `a`, `b`, the
/// function `f` and the metavariables `?u`, `?v`.
pub fn fo_formula(depth: u32) -> BoxedStrategy<Formula> {
    fo_text(depth, Vec::new())
        .prop_map(|s| parse_formula(&s).unwrap_or_else(|e| panic!("generated `{s}`: {e}")))
        .boxed()
}

pub fn fo_sequent() -> BoxedStrategy<Sequent> {
    (
        proptest::collection::vec(fo_formula(2), 0..3),
        proptest::collection::vec(fo_formula(2), 1..3),
    )
        .prop_map(|(l, r)| Sequent::new(l, r))
        .boxed()
}

/// One to three goals; metavariables are shared between them.
pub fn bundle() -> BoxedStrategy<Vec<Sequent>> {
    proptest::collection::vec(fo_sequent(), 1..4).boxed()
}
