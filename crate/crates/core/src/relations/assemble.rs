use std::collections::BTreeMap;

use num_traits::Zero;

use super::{derived::pullback_genus2, Contribution, RMode, Relation, RelationError, Source};
use crate::arith::{int, Matrix, RPoly, Rational};
use crate::cohft::{
    phi_degree, r_inverse_matrix, topological_value, witten_degree, EdgeSeries, PhiExponent,
    RSpinTheory, ScaleFactor,
};
use crate::strata::{contributing_graphs, divisor_class_of, DivisorClass, GraphContribution, StableGraph};

/// Codimension-one part of the reconstructed shifted r-spin class on
/// `M̄_{g,n}` with insertions `a`.
///
/// On `M̄_{2,n}` with `n > 0` and all insertions zero the relation is the
/// pullback of the one on `M̄_2`. Everything else is assembled graph by
/// graph with [`assemble_direct`].
pub fn assemble_relation(g: u32, n: usize, a: &[u32], mode: RMode) -> Result<Relation, RelationError> {
    if g == 2 && n > 0 && a.iter().all(|&x| x == 0) && a.len() == n {
        if let RMode::Numeric(r) = mode {
            gate(g, n, a, r)?;
            let base = assemble_direct(2, 0, &[], mode)?;
            return pullback_genus2(&base, n);
        }
    }
    assemble_direct(g, n, a, mode)
}

fn gate(g: u32, n: usize, a: &[u32], r: u32) -> Result<crate::cohft::PhiDegree, RelationError> {
    let theory = RSpinTheory::new(r)?;
    for &x in a {
        theory.check_index(x)?;
    }
    let d = phi_degree(g, 1, a, r);
    if !d.relation_exists {
        return Err(RelationError::DegreeGate {
            g,
            n,
            r,
            witten_degree: witten_degree(g, a, r),
            d_times_rminus1: d.d_times_rminus1,
        });
    }
    if !(1..=3).contains(&g) {
        return Err(RelationError::UnsupportedGenus(g));
    }
    Ok(d)
}

/// The decorated stable-graph sum truncated to codimension one, on any
/// supported `M̄_{g,n}`.
///
/// Each graph contributes the contraction of its vertex, leg and edge
/// tensors. The `1/|Aut Γ|` of the graph sum cancels against the degree of
/// the gluing map onto its boundary divisor, so the contraction is the
/// coefficient of the divisor class itself.
pub fn assemble_direct(g: u32, n: usize, a: &[u32], mode: RMode) -> Result<Relation, RelationError> {
    if a.len() != n {
        return Err(RelationError::ArityMismatch { expected: n, got: a.len() });
    }
    match mode {
        RMode::Numeric(r) => {
            gate(g, n, a, r)?;
            assemble_numeric(g, n, a, r, &contributing_graphs(g, n)?)
        }
        RMode::Symbolic => assemble_symbolic(g, n, a),
    }
}

fn assemble_numeric(g: u32, n: usize, a: &[u32], r: u32, graphs: &[GraphContribution]) -> Result<Relation, RelationError> {
    let d = gate(g, n, a, r)?;
    let theory = RSpinTheory::new(r)?;
    let inv1 = r_inverse_matrix(1, &theory).pop().expect("order-one coefficient");
    let edge = EdgeSeries::new(&theory, 0)?;
    let c00 = edge.coeff(0, 0).expect("constant edge term");
    let expected_phi = PhiExponent::for_graph(&[g], 0, a, 1);

    let mut contributions = Vec::new();
    for item in graphs {
        let graph = &item.graph;
        let genera: Vec<u32> = graph.vertices.iter().map(|v| v.genus).collect();
        let phi = PhiExponent::for_graph(&genera, graph.edges.len(), a, 1);
        let mut push = |class: DivisorClass, value: Rational| -> Result<(), RelationError> {
            if phi != expected_phi {
                return Err(RelationError::PhiIncoherent {
                    class: class.to_string(),
                    expected: expected_phi.to_string(),
                    found: phi.to_string(),
                });
            }
            contributions.push(Contribution {
                graph: graph.clone(),
                class,
                automorphism_order: item.automorphism_order,
                value: RPoly::constant(value),
                phi_exponent: phi.clone(),
            });
            Ok(())
        };
        match (graph.edges.len(), graph.dilaton_count()) {
            (0, 0) => {
                for i in 1..=n {
                    let value = psi_leg(g, a, i, &inv1, &theory)?;
                    push(divisor_class_of(graph, Some(i))?, value)?;
                }
            }
            (0, 1) => push(divisor_class_of(graph, None)?, dilaton(g, a, &inv1, &theory)?)?,
            (1, 0) => {
                let value = edge_term(graph, a, c00, &theory)?;
                push(divisor_class_of(graph, None)?, value)?;
            }
            _ => unreachable!("budget admits at most one edge or dilaton leg"),
        }
    }

    let mut relation = Relation::from_coefficients(
        g,
        n,
        a.to_vec(),
        RMode::Numeric(r),
        Source::Assembled,
        contributions.iter().map(|c| (c.class.clone(), c.value.clone())),
    );
    relation.phi_exponent = expected_phi;
    relation.scale = ScaleFactor {
        power_m: 1,
        sign: 1,
        r_power: g - 1,
    };
    relation.phi_integral = d.integral;
    relation.contributions = contributions;
    Ok(relation)
}

/// `Σ_b (R^{-1}_1)^b_{a_i} ω_g(a_1, …, b, …, a_n)` for `ψ_i`.
fn psi_leg(g: u32, a: &[u32], leg: usize, inv1: &Matrix<Rational>, theory: &RSpinTheory) -> Result<Rational, RelationError> {
    let mut total = Rational::zero();
    let mut ins = a.to_vec();
    for b in 0..theory.dim() {
        let coeff = inv1.get(b, a[leg - 1] as usize);
        if coeff.is_zero() {
            continue;
        }
        ins[leg - 1] = b as u32;
        total += coeff * topological_value(g, &ins, theory)?.0;
    }
    Ok(total)
}

/// The dilaton leg carries `-(R^{-1}_1 𝟙) ψ²`, which pushes forward to κ₁.
fn dilaton(g: u32, a: &[u32], inv1: &Matrix<Rational>, theory: &RSpinTheory) -> Result<Rational, RelationError> {
    let mut total = Rational::zero();
    let mut ins = a.to_vec();
    ins.push(0);
    for b in 0..theory.dim() {
        let coeff = inv1.get(b, 0);
        if coeff.is_zero() {
            continue;
        }
        *ins.last_mut().expect("dilaton slot") = b as u32;
        total -= coeff * topological_value(g, &ins, theory)?.0;
    }
    Ok(total)
}

/// `Σ_{p,q} c_{00}^{pq} ω(v_0; …, p) ω(v_1; …, q)`, or `ω(v; …, p, q)` for a loop.
fn edge_term(graph: &StableGraph, a: &[u32], c00: &Matrix<Rational>, theory: &RSpinTheory) -> Result<Rational, RelationError> {
    let inserts = |v: usize| -> Vec<u32> { graph.vertices[v].markings.iter().map(|&i| a[i - 1]).collect() };
    let (u, v) = graph.edges[0];
    let mut total = Rational::zero();
    for p in 0..theory.dim() {
        for q in 0..theory.dim() {
            let c = c00.get(p, q);
            if c.is_zero() {
                continue;
            }
            let value = if u == v {
                let mut ins = inserts(u);
                ins.extend([p as u32, q as u32]);
                topological_value(graph.vertices[u].genus, &ins, theory)?.0
            } else {
                let mut left = inserts(u);
                left.push(p as u32);
                let mut right = inserts(v);
                right.push(q as u32);
                topological_value(graph.vertices[u].genus, &left, theory)?.0
                    * topological_value(graph.vertices[v].genus, &right, theory)?.0
            };
            total += c * value;
        }
    }
    Ok(total)
}

/// Values of `r` used to interpolate a symbolic relation: enough for the
/// degree bound `g + 2` plus two consistency checks.
pub fn symbolic_samples(g: u32) -> Vec<u32> {
    (3..3 + g + 5).collect()
}

/// Only genus one with `Σ a_i = 1` has the same nonvanishing pattern for
/// every `r ≥ 3` (`d = -1` throughout), so only there is a single
/// polynomial in `r` meaningful.
fn assemble_symbolic(g: u32, n: usize, a: &[u32]) -> Result<Relation, RelationError> {
    let sum: u32 = a.iter().sum();
    if g != 1 || sum != 1 {
        return Err(RelationError::SymbolicUnsupported { g, sum });
    }
    let degree_bound = g as usize + 2;
    let graphs = contributing_graphs(g, n)?;
    let samples: Vec<(u32, Relation)> = symbolic_samples(g)
        .into_iter()
        .map(|r| Ok((r, assemble_numeric(g, n, a, r, &graphs)?)))
        .collect::<Result<_, RelationError>>()?;
    let template = &samples[0].1;
    let mut contributions = Vec::with_capacity(template.contributions.len());
    for (idx, c) in template.contributions.iter().enumerate() {
        let points: Vec<(Rational, Rational)> = samples
            .iter()
            .map(|(r, rel)| {
                let other = &rel.contributions[idx];
                debug_assert_eq!(other.class, c.class);
                (int(i64::from(*r)), other.value.as_constant().expect("numeric sample"))
            })
            .collect();
        contributions.push(Contribution {
            value: RPoly::interpolate(&points, degree_bound)?,
            ..c.clone()
        });
    }
    let mut by_class: BTreeMap<DivisorClass, RPoly> = BTreeMap::new();
    for c in &contributions {
        let e = by_class.entry(c.class.clone()).or_insert_with(RPoly::zero);
        *e = &*e + &c.value;
    }
    let mut relation = Relation::from_coefficients(g, n, a.to_vec(), RMode::Symbolic, Source::Assembled, by_class);
    relation.phi_exponent = template.phi_exponent.clone();
    relation.scale = template.scale;
    relation.phi_integral = true;
    relation.contributions = contributions;
    Ok(relation)
}

/// Insertion vectors on `M̄_{g,n}` whose relation exists and has integral
/// φ-degree, in lexicographic order. For genus one these are exactly the
/// `n` unit vectors.
pub fn admissible_a_vectors(g: u32, n: usize, r: u32) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, n: usize, r: u32, budget: i64, g: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            let d = phi_degree(g, 1, prefix, r);
            if d.relation_exists && d.integral {
                out.push(prefix.clone());
            }
            return;
        }
        let used: i64 = prefix.iter().map(|&x| i64::from(x)).sum();
        for x in 0..=r - 2 {
            if used + i64::from(x) > budget {
                break;
            }
            prefix.push(x);
            extend(prefix, n, r, budget, g, out);
            prefix.pop();
        }
    }
    // Σ a < r - (g-1)(r-2)
    let budget = i64::from(r) - (i64::from(g) - 1) * (i64::from(r) - 2) - 1;
    let mut out = Vec::new();
    if budget >= 0 {
        extend(&mut Vec::new(), n, r, budget, g, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::cohft::p1_closed_form;

    fn sep(h: u32, s: &[usize]) -> DivisorClass {
        DivisorClass::DeltaSep { h, subset: s.to_vec() }
    }

    fn c(v: Rational) -> RPoly {
        RPoly::constant(v)
    }

    #[test]
    fn genus_one_two_points_at_r3() {
        let rel = assemble_relation(1, 2, &[1, 0], RMode::Numeric(3)).unwrap();
        let twelfth = |k: i64| c(rat(k, 12));
        assert_eq!(rel.coefficient(&DivisorClass::Psi(1)), twelfth(7));
        assert_eq!(rel.coefficient(&DivisorClass::Psi(2)), twelfth(-5));
        assert_eq!(rel.coefficient(&DivisorClass::Kappa1), twelfth(5));
        assert_eq!(rel.coefficient(&sep(0, &[1, 2])), twelfth(-7));
        assert_eq!(rel.coefficient(&DivisorClass::DeltaIrr), twelfth(-1));
        assert!(rel.phi_integral);
        assert_eq!(rel.contributions.len(), 5);
    }

    #[test]
    fn genus_one_two_points_symbolic_matches_display() {
        let rel = assemble_relation(1, 2, &[1, 0], RMode::Symbolic).unwrap();
        let r1 = RPoly::linear(1);
        let p1 = |a: u32| -> RPoly {
            // ½a(r-1-a) - (2r-1)(r-2)/24 as a polynomial
            let half = rat(1, 2) * int(i64::from(a));
            &RPoly::linear(1 + i64::from(a)).scale(&half)
                - &(&RPoly::from_ints(&[-1, 2]) * &RPoly::linear(2)).scale(&rat(1, 24))
        };
        assert_eq!(rel.coefficient(&DivisorClass::Psi(1)), &r1 * &p1(1));
        assert_eq!(rel.coefficient(&DivisorClass::Psi(2)), &r1 * &p1(0));
        assert_eq!(rel.coefficient(&DivisorClass::Kappa1), -(&r1 * &p1(0)));
        assert_eq!(rel.coefficient(&sep(0, &[1, 2])), -(&r1 * &p1(1)));
        assert_eq!(
            rel.coefficient(&DivisorClass::DeltaIrr),
            -RPoly::from_ints(&[2, -3, 1]).scale(&rat(1, 24))
        );
        for r in 3..9u32 {
            assert_eq!(p1(1).eval(&int(i64::from(r))), p1_closed_form(1, r));
        }
    }

    #[test]
    fn genus_two_at_r3() {
        let rel = assemble_relation(2, 0, &[], RMode::Numeric(3)).unwrap();
        let v = rel.primitive_integers(&crate::strata::divisor_generators(2, 0).unwrap()).unwrap();
        let v: Vec<i64> = v.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(v, vec![5, -1, -7]);
        assert_eq!(rel.scale.r_power, 1);
    }

    #[test]
    fn genus_three_vanishes_termwise() {
        let rel = assemble_relation(3, 0, &[], RMode::Numeric(3)).unwrap();
        assert!(rel.is_zero());
        assert!(!rel.phi_integral);
        assert!(!rel.contributions.is_empty());
        assert!(rel.contributions.iter().all(|c| c.value.is_zero()));
    }

    #[test]
    fn genus_four_is_gated() {
        match assemble_relation(4, 0, &[], RMode::Numeric(3)) {
            Err(RelationError::DegreeGate { witten_degree, d_times_rminus1, .. }) => {
                assert_eq!(witten_degree, int(1));
                assert_eq!(d_times_rminus1, 0);
            }
            other => panic!("expected the degree gate, got {other:?}"),
        }
        assert!(matches!(
            assemble_relation(1, 3, &[1, 1, 1], RMode::Numeric(3)),
            Err(RelationError::DegreeGate { .. })
        ));
    }

    #[test]
    fn gate_agrees_with_phi_degree() {
        for r in 3..6 {
            for g in 1..=4u32 {
                for a in [vec![0], vec![1], vec![0, 0], vec![1, 1]] {
                    let exists = phi_degree(g, 1, &a, r).relation_exists;
                    let result = assemble_relation(g, a.len(), &a, RMode::Numeric(r));
                    let gated = matches!(result, Err(RelationError::DegreeGate { .. }));
                    assert_eq!(gated, !exists, "g={g} a={a:?} r={r}");
                }
            }
        }
    }

    #[test]
    fn symbolic_is_restricted() {
        assert!(matches!(
            assemble_relation(2, 0, &[], RMode::Symbolic),
            Err(RelationError::SymbolicUnsupported { .. })
        ));
        assert!(assemble_relation(1, 2, &[0, 0], RMode::Symbolic).is_err());
    }

    #[test]
    fn admissible_vectors() {
        assert_eq!(admissible_a_vectors(1, 3, 3), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(admissible_a_vectors(1, 2, 5).len(), 2);
        assert_eq!(admissible_a_vectors(2, 2, 3), vec![vec![0, 0]]);
        assert!(admissible_a_vectors(3, 0, 3).is_empty());
        assert!(admissible_a_vectors(4, 0, 3).is_empty());
    }

    #[test]
    fn direct_assembly_on_m2n_matches_pullback() {
        for n in 1..=3 {
            let a = vec![0; n];
            let direct = assemble_direct(2, n, &a, RMode::Numeric(3)).unwrap();
            let pulled = assemble_relation(2, n, &a, RMode::Numeric(3)).unwrap();
            assert_eq!(direct.coefficients, pulled.coefficients, "n = {n}");
        }
    }
}
