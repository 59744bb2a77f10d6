use std::collections::BTreeSet;

use super::{assemble::admissible_a_vectors, assemble_relation, RMode, Relation, RelationError, RelationSet, Source};
use crate::arith::{int, RPoly};
use crate::strata::{canonical_divisor, DivisorClass};

/// One relation per power of `r` with a nonzero coefficient vector, taken
/// from the content-normalized symbolic relation and made primitive.
pub fn extract_r_coefficients(rel: &Relation) -> Result<RelationSet, RelationError> {
    if rel.mode != RMode::Symbolic {
        return Err(RelationError::NotSymbolic);
    }
    let normalized = rel.content_normalized();
    let top = normalized
        .coefficients
        .values()
        .filter_map(RPoly::degree)
        .max()
        .unwrap_or(0);
    let mut set = RelationSet::new(rel.g, rel.n)?;
    for power in (0..=top).rev() {
        let component = Relation::from_coefficients(
            rel.g,
            rel.n,
            rel.a.clone(),
            RMode::Symbolic,
            Source::Extracted { power },
            normalized
                .coefficients
                .iter()
                .map(|(k, p)| (k.clone(), RPoly::constant(p.coeff(power)))),
        );
        if component.is_zero() {
            continue;
        }
        let prim = component.primitive_integers(&set.generators)?;
        let mut out = Relation::from_coefficients(
            rel.g,
            rel.n,
            rel.a.clone(),
            RMode::Symbolic,
            Source::Extracted { power },
            set.generators
                .iter()
                .cloned()
                .zip(prim.into_iter().map(|v| RPoly::constant(v.into()))),
        );
        out.phi_exponent = rel.phi_exponent.clone();
        set.push(out)?;
    }
    Ok(set)
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1 << n)).map(move |mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
}

/// Pulls a relation in `κ₁, δ_irr, δ₁` on `M̄_2` back along the map
/// forgetting `n` points:
///
/// ```text
/// π*κ₁ = κ₁ - Σ ψ_i + Σ_{|I| ≥ 2} δ_{0,I},   π*δ_irr = δ_irr,   π*δ₁ = Σ_S δ_{1,S}
/// ```
///
/// The first follows from Mumford's `λ₁ = (κ₁ - Σψ + δ)/12` on every
/// `M̄_{2,n}` together with `π*λ₁ = λ₁`; the last sum runs over unordered
/// splittings `{S, S^c}` of the markings.
pub fn pullback_genus2(rel: &Relation, n: usize) -> Result<Relation, RelationError> {
    let delta1 = DivisorClass::DeltaSep { h: 1, subset: vec![] };
    let allowed = [DivisorClass::Kappa1, DivisorClass::DeltaIrr, delta1.clone()];
    if rel.g != 2 || rel.n != 0 {
        return Err(RelationError::WrongSourceBasis(format!("a relation on M_{{{},{}}}", rel.g, rel.n)));
    }
    if let Some(bad) = rel.coefficients.keys().find(|c| !allowed.contains(c)) {
        return Err(RelationError::WrongSourceBasis(bad.to_string()));
    }
    let kappa = rel.coefficient(&DivisorClass::Kappa1);
    let irr = rel.coefficient(&DivisorClass::DeltaIrr);
    let d1 = rel.coefficient(&delta1);

    let mut terms = vec![(DivisorClass::Kappa1, kappa.clone()), (DivisorClass::DeltaIrr, irr)];
    for i in 1..=n {
        terms.push((DivisorClass::Psi(i), -kappa.clone()));
    }
    let mut genus_one_splits = BTreeSet::new();
    for s in subsets(n) {
        if s.len() >= 2 {
            terms.push((DivisorClass::DeltaSep { h: 0, subset: s.clone() }, kappa.clone()));
        }
        genus_one_splits.insert(canonical_divisor(2, n, &DivisorClass::DeltaSep { h: 1, subset: s })?);
    }
    for class in genus_one_splits {
        terms.push((class, d1.clone()));
    }
    let mut out = Relation::from_coefficients(2, n, vec![0; n], rel.mode, Source::Pullback, terms);
    out.phi_exponent = rel.phi_exponent.clone();
    out.scale = rel.scale;
    out.phi_integral = rel.phi_integral;
    Ok(out)
}

/// The classical relations in `H²(M̄_{g,n})`.
///
/// Genus one: `12ψ_i = δ_irr + 12 Σ_{J ∋ i} δ_{0,J}` for each `i`, and
/// `κ₁ = Σψ_i - Σ_J δ_{0,J}`. Genus two: `5κ₁ = 7δ₁ + δ_irr` pulled back.
/// Genus three: none beyond the identifications built into the basis.
pub fn ac_relations(g: u32, n: usize) -> Result<RelationSet, RelationError> {
    let mut set = RelationSet::new(g, n)?;
    let k = |v: i64| RPoly::constant(int(v));
    match g {
        1 => {
            let sep_subsets: Vec<Vec<usize>> = subsets(n).filter(|s| s.len() >= 2).collect();
            for i in 1..=n {
                let mut terms = vec![(DivisorClass::Psi(i), k(12)), (DivisorClass::DeltaIrr, k(-1))];
                for s in sep_subsets.iter().filter(|s| s.contains(&i)) {
                    terms.push((DivisorClass::DeltaSep { h: 0, subset: s.clone() }, k(-12)));
                }
                set.push(Relation::from_coefficients(1, n, vec![], RMode::Symbolic, Source::Reference, terms))?;
            }
            let mut terms = vec![(DivisorClass::Kappa1, k(1))];
            for i in 1..=n {
                terms.push((DivisorClass::Psi(i), k(-1)));
            }
            for s in &sep_subsets {
                terms.push((DivisorClass::DeltaSep { h: 0, subset: s.clone() }, k(1)));
            }
            set.push(Relation::from_coefficients(1, n, vec![], RMode::Symbolic, Source::Reference, terms))?;
        }
        2 => {
            let base = Relation::from_coefficients(
                2,
                0,
                vec![],
                RMode::Symbolic,
                Source::Reference,
                [
                    (DivisorClass::Kappa1, k(5)),
                    (DivisorClass::DeltaSep { h: 1, subset: vec![] }, k(-7)),
                    (DivisorClass::DeltaIrr, k(-1)),
                ],
            );
            let mut pulled = pullback_genus2(&base, n)?;
            pulled.source = Source::Reference;
            set.push(pulled)?;
        }
        3 => {}
        _ => return Err(RelationError::UnsupportedGenus(g)),
    }
    Ok(set)
}

/// All relations the shifted r-spin theory produces on `M̄_{g,n}` at `r`:
/// the numeric relation for every admissible insertion vector and, in
/// genus one, every per-power-of-r component of the symbolic relations.
/// Zero relations are dropped.
pub fn ppz_relation_set(g: u32, n: usize, r: u32) -> Result<RelationSet, RelationError> {
    if !(1..=3).contains(&g) {
        return Err(RelationError::UnsupportedGenus(g));
    }
    let mut set = RelationSet::new(g, n)?;
    for a in admissible_a_vectors(g, n, r) {
        let rel = assemble_relation(g, n, &a, RMode::Numeric(r))?;
        if !rel.is_zero() {
            set.push(rel)?;
        }
        if g == 1 {
            let symbolic = assemble_relation(g, n, &a, RMode::Symbolic)?;
            for part in extract_r_coefficients(&symbolic)?.relations {
                set.push(part)?;
            }
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::spans_equal;
    use crate::strata::divisor_generators;

    fn ints(rel: &Relation, basis: &[DivisorClass]) -> Vec<i64> {
        rel.primitive_integers(basis)
            .unwrap()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn extraction_for_two_points() {
        // one insertion vector alone misses ψ₁ = ψ₂; both together give everything
        let first = extract_r_coefficients(&assemble_relation(1, 2, &[1, 0], RMode::Symbolic).unwrap()).unwrap();
        assert_eq!(first.relations.len(), 4);
        assert_eq!(first.rank().unwrap(), 2);
        let mut set = first.clone();
        let second = extract_r_coefficients(&assemble_relation(1, 2, &[0, 1], RMode::Symbolic).unwrap()).unwrap();
        set.relations.extend(second.relations);
        let ac = ac_relations(1, 2).unwrap();
        assert!(spans_equal(&set, &ac).unwrap().equal);
        assert_eq!(set.rank().unwrap(), 3);
        assert!(extract_r_coefficients(&assemble_relation(1, 2, &[1, 0], RMode::Numeric(3)).unwrap()).is_err());
    }

    #[test]
    fn pullback_examples() {
        let base = assemble_relation(2, 0, &[], RMode::Numeric(3)).unwrap();
        assert_eq!(pullback_genus2(&base, 0).unwrap().coefficients, base.coefficients);
        let pulled = pullback_genus2(&base, 2).unwrap();
        let basis = divisor_generators(2, 2).unwrap();
        // psi_1 psi_2 kappa delta_irr delta_{0,{1,2}} delta_{1,{}} delta_{1,{1}}
        let names: Vec<String> = basis.iter().map(ToString::to_string).collect();
        assert_eq!(
            names,
            ["psi_1", "psi_2", "kappa_1", "delta_irr", "delta_{0,{1,2}}", "delta_{1,{}}", "delta_{1,{1}}"]
        );
        assert_eq!(ints(&pulled, &basis), vec![5, 5, -5, 1, -5, 7, 7]);
        let zero = Relation::from_coefficients(2, 0, vec![], RMode::Numeric(3), Source::Assembled, []);
        assert!(pullback_genus2(&zero, 3).unwrap().is_zero());
        let wrong = assemble_relation(1, 2, &[1, 0], RMode::Numeric(3)).unwrap();
        assert!(pullback_genus2(&wrong, 2).is_err());
    }

    #[test]
    fn reference_sets() {
        assert_eq!(ac_relations(1, 2).unwrap().relations.len(), 3);
        assert_eq!(ac_relations(2, 0).unwrap().relations.len(), 1);
        assert!(ac_relations(3, 0).unwrap().relations.is_empty());
        assert!(ac_relations(4, 0).is_err());
    }

    #[test]
    fn ppz_matches_reference_in_small_cases() {
        for (g, n) in [(1, 1), (1, 2), (1, 3), (2, 0), (2, 2), (3, 0)] {
            let ppz = ppz_relation_set(g, n, 3).unwrap();
            let ac = ac_relations(g, n).unwrap();
            assert!(spans_equal(&ppz, &ac).unwrap().equal, "g={g} n={n}");
        }
    }
}
