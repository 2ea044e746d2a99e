use std::time::Instant;

use ootp_core::kernel::Fuel;
use ootp_core::logic::{parse_sequent, Sequent};
use ootp_core::tactics::{depth_tac, prove};
use ootp_testkit::gen::propositional_corpus;
use ootp_testkit::oracle::{check, truth_table, Verdict};
use ootp_testkit::{FO_NON_THEOREMS, FO_THEOREMS};

fn proves(s: &Sequent, depth: u32) -> bool {
    prove(s, &depth_tac(depth), Fuel::default()).is_ok()
}

#[test]
fn depth_12_decides_the_propositional_corpus() {
    let corpus = propositional_corpus(600);
    let start = Instant::now();
    let mut valid = 0;
    for s in &corpus {
        let tt = truth_table(s).unwrap();
        valid += tt as usize;
        assert_eq!(proves(s, 12), tt, "{s}");
    }
    let took = start.elapsed();
    assert!(took.as_secs_f64() < 60.0, "took {took:?}");
    assert!(
        (50..=550).contains(&valid),
        "{valid} valid of {}",
        corpus.len()
    );
}

#[test]
fn depth_15_on_first_order_problems() {
    for s in FO_THEOREMS {
        let q = parse_sequent(s).unwrap();
        let thm = prove(&q, &depth_tac(15), Fuel::default()).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(thm.sequent(), &q);
        assert_eq!(check(thm.sequent()), Verdict::Valid);
    }
    for s in FO_NON_THEOREMS {
        let q = parse_sequent(s).unwrap();
        assert!(!proves(&q, 15), "{s}");
    }
}
