use std::time::Instant;

use ootp_core::translate::*;
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|n| Int::from(*n)).collect()
}

#[test]
fn sample_from_origin() {
    let p = parse_imp(SAMPLE_PROGRAM).unwrap();
    let zero = ints(&[0, 0, 0]);
    let expect = Some(ints(&[1, 1, 0]));
    assert_eq!(
        interp_imp(&p, "F", &zero, 1000).unwrap().final_state,
        expect
    );
    assert_eq!(
        interp_oo(&translate_to_oo(&p), "F", &zero, 1000)
            .unwrap()
            .final_state,
        expect
    );
    assert_eq!(
        interp_fun(&translate_to_fun(&p), "F", &zero, 1000)
            .unwrap()
            .final_state,
        expect
    );
}

#[test]
fn full_grid_bisimulation() {
    let p = parse_imp(SAMPLE_PROGRAM).unwrap();
    let start = Instant::now();
    let r = check_equiv(&p, &[(-5, 5); 3], &["F", "G", "H"], 10_000).unwrap();
    let took = start.elapsed();
    assert_eq!(r.cases, 11 * 11 * 11 * 3);
    assert!(r.agrees(), "{r}");
    assert!(took.as_secs_f64() < 10.0, "took {took:?}");
}

#[test]
fn report_is_deterministic() {
    let p = parse_imp(SAMPLE_PROGRAM).unwrap();
    let a = check_equiv(&p, &[(-2, 2); 3], &["F", "H"], 500)
        .unwrap()
        .to_string();
    let b = check_equiv(&p, &[(-2, 2); 3], &["F", "H"], 500)
        .unwrap()
        .to_string();
    assert_eq!(a, b);
}

/// Programs over two variables built from a small statement pool.
fn program() -> impl Strategy<Value = String> {
    let expr = prop_oneof![
        Just("a+1"),
        Just("a-b"),
        Just("b+a+a"),
        Just("0-a"),
        Just("b-2"),
        Just("a+b-b+3"),
    ];
    let assign = (prop_oneof![Just("a"), Just("b")], expr).prop_map(|(v, e)| format!("{v} := {e}"));
    let cond = prop_oneof![
        Just("a < b"),
        Just("a > 0"),
        Just("b = a"),
        Just("b <= 3"),
        Just("a >= b")
    ];
    let tail = (0usize..3, 0usize..4).prop_map(|(l, k)| match k {
        0 => "stop".to_string(),
        _ => format!("goto L{l}"),
    });
    let block = (
        proptest::collection::vec(assign.clone(), 0..3),
        cond,
        tail.clone(),
        tail,
        any::<bool>(),
    )
        .prop_map(|(assigns, c, t1, t2, with_else)| {
            let mut s: Vec<String> = assigns;
            if with_else {
                s.push(format!("if {c} then ({t1}) else ({t2})"));
            } else {
                s.push(format!("if {c} then {t1}"));
                s.push(t2);
            }
            s.join("; ")
        });
    proptest::collection::vec(block, 3).prop_map(|blocks| {
        let mut src = "var a := 0; b := 0;\n".to_string();
        for (i, b) in blocks.iter().enumerate() {
            src.push_str(&format!("L{i}: {b}\n"));
        }
        src
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_programs_bisimulate(src in program()) {
        let p = parse_imp(&src).unwrap();
        let r = check_equiv(&p, &[(-2, 2); 2], &["L0", "L1", "L2"], 60).unwrap();
        prop_assert!(r.agrees(), "{}\n{}", src, r);
    }

    #[test]
    fn fuel_is_monotone(src in program(), a in -3i64..3, b in -3i64..3) {
        let p = parse_imp(&src).unwrap();
        let init = ints(&[a, b]);
        let r = interp_imp(&p, "L0", &init, 40).unwrap();
        prop_assert!(r.steps <= 40);
        if r.status == Status::Terminated {
            prop_assert_eq!(interp_imp(&p, "L0", &init, 400).unwrap(), r.clone());
            let oo = translate_to_oo(&p);
            prop_assert_eq!(interp_oo(&oo, "L0", &init, 400).unwrap(), r);
        }
    }
}

#[test]
fn interpreters_are_pure() {
    let p = parse_imp(SAMPLE_PROGRAM).unwrap();
    let oo = translate_to_oo(&p);
    let fp = translate_to_fun(&p);
    let init = ints(&[2, 0, 3]);
    let first = (
        interp_oo(&oo, "F", &init, 100).unwrap(),
        interp_fun(&fp, "F", &init, 100).unwrap(),
    );
    let again = (
        interp_oo(&oo, "F", &init, 100).unwrap(),
        interp_fun(&fp, "F", &init, 100).unwrap(),
    );
    assert_eq!(first, again);
    assert_eq!(init, ints(&[2, 0, 3]));
    assert_eq!(oo, translate_to_oo(&p));
}

#[test]
fn oo_output_has_no_assignments() {
    let p = parse_imp(SAMPLE_PROGRAM).unwrap();
    let src = emit_oo_source(&translate_to_oo(&p));
    let outside_ctor: Vec<&str> = src
        .lines()
        .filter(|l| !l.trim_start().starts_with("C("))
        .collect();
    assert!(
        outside_ctor
            .iter()
            .all(|l| !l.contains(":=") && !l.contains(" = ")),
        "{src}"
    );
}
