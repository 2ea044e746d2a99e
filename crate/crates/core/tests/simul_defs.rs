use ootp_core::kernel::Fuel;
use ootp_core::logic::Term;
use ootp_core::simul_defs::{derive_ground, parse_group, DeriveError};
use ootp_testkit::oracle::{check, Verdict};

const EVEN_ODD: &str = "group evenodd { even(0). even(s(N)) :- odd(N). odd(s(N)) :- even(N). }";

fn numeral(n: usize) -> Term {
    (0..n).fold(Term::constant("0"), |t, _| Term::app("s", vec![t]))
}

#[test]
fn parity_decides_derivability() {
    let g = parse_group(EVEN_ODD).unwrap();
    let mut checks = 0;
    for n in 0..=50 {
        for (pred, want) in [("even", n % 2 == 0), ("odd", n % 2 == 1)] {
            let r = derive_ground(&g, pred, &[numeral(n)], Fuel::new(1_000));
            assert_eq!(r.is_ok(), want, "{pred}({n}): {r:?}");
            if !want {
                assert!(matches!(r, Err(DeriveError::NotDerivable(_))), "{r:?}");
            }
            checks += 1;
        }
    }
    assert_eq!(checks, 102);
}

#[test]
fn fuel_lower_bound_is_n() {
    let g = parse_group(EVEN_ODD).unwrap();
    for n in [0usize, 4, 17] {
        let pred = if n % 2 == 0 { "even" } else { "odd" };
        assert!(
            derive_ground(&g, pred, &[numeral(n)], Fuel::new(n as u64)).is_ok(),
            "{n}"
        );
        if n > 0 {
            let r = derive_ground(&g, pred, &[numeral(n)], Fuel::new(n as u64 - 1));
            assert_eq!(r.unwrap_err(), DeriveError::FuelExhausted, "{n}");
        }
    }
}

#[test]
fn derived_theorems_are_valid() {
    let g = parse_group(EVEN_ODD).unwrap();
    for n in 0..6 {
        let pred = if n % 2 == 0 { "even" } else { "odd" };
        let t = derive_ground(&g, pred, &[numeral(n)], Fuel::default()).unwrap();
        assert_eq!(check(t.sequent()), Verdict::Valid, "{}", t.sequent());
    }
}
