use proptest::prelude::*;

use ppz_core::arith::{rat, Rational};
use ppz_core::cohft::phi_degree;
use ppz_core::relations::{
    admissible_a_vectors, assemble_relation, extract_r_coefficients, spans_equal, RMode, RelationError,
};
use ppz_core::strata::{canonical_divisor, DivisorClass};

fn relabel(class: &DivisorClass, sigma: &[usize], g: u32, n: usize) -> DivisorClass {
    let moved = match class {
        DivisorClass::Psi(i) => DivisorClass::Psi(sigma[i - 1]),
        DivisorClass::DeltaSep { h, subset } => DivisorClass::DeltaSep {
            h: *h,
            subset: subset.iter().map(|i| sigma[i - 1]).collect(),
        },
        other => other.clone(),
    };
    canonical_divisor(g, n, &moved).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extracted_span_ignores_global_scale(
        n in 1usize..4, leg in 0usize..3, num in -20i64..20, den in 1i64..20
    ) {
        prop_assume!(num != 0);
        let mut a = vec![0; n];
        a[leg % n] = 1;
        let rel = assemble_relation(1, n, &a, RMode::Symbolic).unwrap();
        let factor: Rational = rat(num, den);
        let plain = extract_r_coefficients(&rel).unwrap();
        let scaled = extract_r_coefficients(&rel.scaled(&factor)).unwrap();
        prop_assert!(spans_equal(&plain, &scaled).unwrap().equal);
    }

    #[test]
    fn genus_one_relations_are_equivariant(
        (n, sigma) in (1usize..5).prop_flat_map(|n| (Just(n), permutation(n))),
        leg in 0usize..4,
        r in 3u32..7,
    ) {
        let mut a = vec![0u32; n];
        a[leg % n] = 1;
        let mut permuted = vec![0u32; n];
        for j in 0..n {
            permuted[sigma[j] - 1] = a[j];
        }
        let base = assemble_relation(1, n, &a, RMode::Numeric(r)).unwrap();
        let moved = assemble_relation(1, n, &permuted, RMode::Numeric(r)).unwrap();
        let relabeled: std::collections::BTreeMap<_, _> = base
            .coefficients
            .iter()
            .map(|(c, v)| (relabel(c, &sigma, 1, n), v.clone()))
            .collect();
        prop_assert_eq!(relabeled, moved.coefficients);
    }

    #[test]
    fn contributions_share_one_phi_exponent(g in 1u32..4, n in 0usize..4, r in 3u32..7) {
        prop_assume!(2 * g as usize + n > 2);
        for a in admissible_a_vectors(g, n, r) {
            let rel = assemble_relation(g, n, &a, RMode::Numeric(r)).unwrap();
            for c in &rel.contributions {
                prop_assert_eq!(&c.phi_exponent, &rel.phi_exponent);
            }
        }
    }

    #[test]
    fn gate_refuses_exactly_when_no_relation_exists(
        g in 1u32..6, a in proptest::collection::vec(0u32..3, 0..4), r in 4u32..7
    ) {
        prop_assume!(2 * g as usize + a.len() > 2);
        let exists = phi_degree(g, 1, &a, r).relation_exists;
        match assemble_relation(g, a.len(), &a, RMode::Numeric(r)) {
            Err(RelationError::DegreeGate { .. }) => prop_assert!(!exists),
            Err(RelationError::UnsupportedGenus(_)) => prop_assert!(exists && g > 3),
            Ok(_) => prop_assert!(exists),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
