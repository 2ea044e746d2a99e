use ootp_core::kernel::{audit, Fuel};
use ootp_core::logic::{parse_sequent, parse_term};
use ootp_core::simul_defs::{derive_ground, parse_group};
use ootp_core::tactics::{depth_tac, prove};
use ootp_testkit::checks;
use ootp_testkit::gen::propositional_corpus;
use ootp_testkit::{FO_NON_THEOREMS, FO_THEOREMS};

/// The only test in this binary, so the audit log sees nothing else.
#[test]
fn every_certified_sequent_is_valid() {
    audit::enable();
    for s in propositional_corpus(200) {
        let _ = prove(&s, &depth_tac(12), Fuel::default());
    }
    for s in FO_THEOREMS.iter().chain(FO_NON_THEOREMS.iter()) {
        let _ = prove(&parse_sequent(s).unwrap(), &depth_tac(15), Fuel::default());
    }
    let g =
        parse_group("group eo { even(0). even(s(N)) :- odd(N). odd(s(N)) :- even(N). }").unwrap();
    for n in ["0", "s(0)", "s(s(0))", "s(s(s(0)))"] {
        let t = parse_term(n).unwrap();
        let _ = derive_ground(&g, "even", std::slice::from_ref(&t), Fuel::default());
        let _ = derive_ground(&g, "odd", &[t], Fuel::default());
    }
    let _ = checks::replay(50);
    audit::disable();
    let r = checks::soundness(audit::drain());
    assert!(r.ok() && r.distinct > 100 && r.quantified > 10, "{r}");
    println!("{r}");
}
