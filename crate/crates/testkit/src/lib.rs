//! Test support: a brute-force semantic oracle, random generators and
//! fixed first-order problem sets.

pub mod checks;
pub mod gen;
pub mod oracle;

/// First-order theorems, each valid over every domain.
pub const FO_THEOREMS: [&str; 12] = [
    "|- (ALL x. P(x)) --> P(a)",
    "|- P(a) --> (EX x. P(x))",
    "|- (ALL x. P(x)) --> (EX x. P(x))",
    "|- (ALL x. P(x) & Q(x)) <-> (ALL x. P(x)) & (ALL x. Q(x))",
    "|- (EX x. P(x) | Q(x)) <-> (EX x. P(x)) | (EX x. Q(x))",
    "|- ~(EX x. P(x)) <-> (ALL x. ~P(x))",
    "|- ~(ALL x. P(x)) <-> (EX x. ~P(x))",
    "|- (EX x. ALL y. R(x,y)) --> (ALL y. EX x. R(x,y))",
    "|- (ALL x. P(x) --> Q(x)) --> (ALL x. P(x)) --> (ALL x. Q(x))",
    "|- EX x. P(x) --> (ALL y. P(y))",
    "|- (ALL x. P(x) --> Q) <-> ((EX x. P(x)) --> Q)",
    "|- (EX x. Q --> P(x)) <-> (Q --> (EX x. P(x)))",
];

/// First-order sequents with a countermodel of size at most 2.
pub const FO_NON_THEOREMS: [&str; 12] = [
    "|- P(a) --> (ALL x. P(x))",
    "|- (EX x. P(x)) --> (ALL x. P(x))",
    "|- (ALL y. EX x. R(x,y)) --> (EX x. ALL y. R(x,y))",
    "|- (EX x. P(x)) & (EX x. Q(x)) --> (EX x. P(x) & Q(x))",
    "|- (ALL x. P(x) | Q(x)) --> (ALL x. P(x)) | (ALL x. Q(x))",
    "|- P(a) --> P(b)",
    "|- (ALL x. P(x) --> Q(x)) --> (EX x. Q(x))",
    "|- (EX x. P(x) --> Q(x)) --> (EX x. P(x)) --> (EX x. Q(x))",
    "|- ALL x. EX y. R(x,y)",
    "|- (ALL x. EX y. R(x,y)) --> (EX y. R(y,y))",
    "|- ~(ALL x. P(x)) --> (ALL x. ~P(x))",
    "|- (EX x. P(x)) --> P(a)",
];

#[cfg(test)]
mod tests {
    use super::*;
    use ootp_core::logic::parse_sequent;
    use oracle::{check, predicate_symbols, Verdict};

    #[test]
    fn fixtures_are_classified_correctly() {
        for s in FO_THEOREMS {
            let q = parse_sequent(s).unwrap();
            assert_eq!(check(&q), Verdict::Valid, "{s}");
            assert!(predicate_symbols(&q) <= 2, "{s}");
        }
        for s in FO_NON_THEOREMS {
            let q = parse_sequent(s).unwrap();
            assert!(
                matches!(check(&q), Verdict::Invalid { domain } if domain <= 2),
                "{s}"
            );
            assert!(predicate_symbols(&q) <= 2, "{s}");
        }
    }

    #[test]
    fn corpus_is_stable_and_distinct() {
        let a = gen::propositional_corpus(50);
        assert_eq!(a, gen::propositional_corpus(50));
        let names: std::collections::BTreeSet<String> = a.iter().map(|s| s.to_string()).collect();
        assert_eq!(names.len(), 50);
        assert!(a.iter().all(oracle::is_propositional));
    }

    #[test]
    fn generated_first_order_formulas_parse() {
        let xs = gen::sample(gen::bundle(), 40);
        assert!(xs.iter().all(|b| (1..4).contains(&b.len())));
    }
}
