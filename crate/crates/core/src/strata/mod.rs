//! Divisor classes on `M̄_{g,n}` and the decorated stable graphs that feed
//! a codimension-one relation.

mod divisor;
mod graph;

pub use divisor::{canonical_divisor, divisor_generators, DivisorClass};
pub use graph::{divisor_class_of, enumerate_stable_graphs, StableGraph, Vertex};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("(g, n) = ({g}, {n}) is unstable")]
    Unstable { g: u32, n: usize },
    #[error("genus {0} is not supported here")]
    UnsupportedGenus(u32),
    #[error("marking {index} is outside 1..={n}")]
    InvalidMarking { index: usize, n: usize },
    #[error("{0} is not a stable boundary divisor")]
    UnstableDivisor(String),
    #[error("graph does not have codimension one")]
    CodimensionNotOne,
    #[error("cannot parse divisor class {0:?}")]
    Parse(String),
}

/// A graph that can contribute in codimension one, with the number of
/// ψ-powers still to be placed on its legs and half-edges after the edges
/// and the minimal order of each dilaton leg are accounted for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphContribution {
    pub graph: StableGraph,
    pub automorphism_order: u64,
    pub psi_budget: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcludedGraph {
    pub graph: StableGraph,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub contributing: Vec<GraphContribution>,
    pub excluded: Vec<ExcludedGraph>,
}

/// Target codimension of the relations assembled here.
pub const CODIMENSION: u32 = 1;

/// Every stable graph with `edges + dilatons ≤ 2`, split by whether its
/// minimal codimension (one per edge, one per dilaton leg, since a dilaton
/// leg starts at `ψ²` and pushes forward to `κ_{≥1}`) fits in codimension one.
pub fn enumerate_contributing_graphs(g: u32, n: usize) -> Result<Enumeration, StrataError> {
    enumerate_up_to(g, n, CODIMENSION as usize + 1)
}

/// The contributing part of [`enumerate_contributing_graphs`] alone,
/// without building the excluded graphs.
pub fn contributing_graphs(g: u32, n: usize) -> Result<Vec<GraphContribution>, StrataError> {
    Ok(enumerate_up_to(g, n, CODIMENSION as usize)?.contributing)
}

fn enumerate_up_to(g: u32, n: usize, horizon: usize) -> Result<Enumeration, StrataError> {
    if !(1..=3).contains(&g) {
        return Err(StrataError::UnsupportedGenus(g));
    }
    if 2 * g as usize + n <= 2 {
        return Err(StrataError::Unstable { g, n });
    }
    let mut contributing = Vec::new();
    let mut excluded = Vec::new();
    for edges in 0..=horizon {
        for dilatons in 0..=horizon - edges {
            for graph in enumerate_stable_graphs(g, n, edges, dilatons) {
                let minimal = (edges + dilatons) as u32;
                if minimal == 0 && n == 0 {
                    continue;
                }
                if minimal > CODIMENSION {
                    excluded.push(ExcludedGraph {
                        reason: format!(
                            "minimal codimension {minimal} ({edges} edges, {dilatons} dilaton legs) exceeds {CODIMENSION}"
                        ),
                        graph,
                    });
                } else {
                    contributing.push(GraphContribution {
                        automorphism_order: graph.automorphism_order(),
                        psi_budget: CODIMENSION - minimal,
                        graph,
                    });
                }
            }
        }
    }
    Ok(Enumeration {
        contributing,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    #[test]
    fn genus_one_two_points() {
        let e = enumerate_contributing_graphs(1, 2).unwrap();
        assert_eq!(e.contributing.len(), 4);
        // one leg-choice each for the two ψ placements on the smooth graph
        let terms: u32 = e
            .contributing
            .iter()
            .map(|c| if c.psi_budget == 1 { 2 } else { 1 })
            .sum();
        assert_eq!(terms, 5);
        let loop_graph = e
            .contributing
            .iter()
            .find(|c| c.graph.edges.len() == 1 && c.graph.is_loop(0))
            .unwrap();
        assert_eq!(loop_graph.automorphism_order, 2);
        assert!(!e.excluded.is_empty());
        assert!(e.excluded.iter().all(|x| x.graph.edges.len() + x.graph.dilaton_count() == 2));
    }

    #[test]
    fn genus_two_no_points() {
        let e = enumerate_contributing_graphs(2, 0).unwrap();
        assert_eq!(e.contributing.len(), 3);
        let classes: Vec<DivisorClass> = e
            .contributing
            .iter()
            .map(|c| divisor_class_of(&c.graph, None).unwrap())
            .collect();
        assert!(classes.contains(&DivisorClass::Kappa1));
        assert!(classes.contains(&DivisorClass::DeltaIrr));
        assert!(classes.contains(&DivisorClass::DeltaSep { h: 1, subset: vec![] }));
    }

    #[test]
    fn unsupported_inputs() {
        assert!(enumerate_contributing_graphs(4, 0).is_err());
        assert!(enumerate_contributing_graphs(1, 0).is_err());
    }

    /// Independent oracle: one-edge graphs from partitions of genus and
    /// markings, filtered by stability.
    fn brute_force_one_edge(g: u32, n: usize) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        if g >= 1 && 2 * (g as usize - 1) + n + 2 > 2 {
            *out.entry("delta_irr".to_string()).or_insert(0) += 1;
        }
        let mut seen = std::collections::BTreeSet::new();
        for h in 0..=g {
            for mask in 0u32..(1 << n) {
                let s: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                let c: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 0).collect();
                let stable = |genus: u32, k: usize| 2 * genus as usize + k + 1 > 2;
                if !stable(h, s.len()) || !stable(g - h, c.len()) {
                    continue;
                }
                let key = if (h, &s) <= (g - h, &c) { (h, s.clone(), c.clone()) } else { (g - h, c.clone(), s.clone()) };
                if seen.insert(key.clone()) {
                    *out.entry(format!("sep {} {:?} {:?}", key.0, key.1, key.2)).or_insert(0) += 1;
                }
            }
        }
        out
    }

    #[test]
    fn one_edge_graphs_match_brute_force() {
        for n in 1..=3 {
            let e = enumerate_contributing_graphs(1, n).unwrap();
            let mut ours = BTreeMap::new();
            for c in e.contributing.iter().filter(|c| c.graph.edges.len() == 1) {
                let key = if c.graph.is_loop(0) {
                    "delta_irr".to_string()
                } else {
                    let (a, b) = (&c.graph.vertices[0], &c.graph.vertices[1]);
                    let (x, y) = if (a.genus, &a.markings) <= (b.genus, &b.markings) { (a, b) } else { (b, a) };
                    format!("sep {} {:?} {:?}", x.genus, x.markings, y.markings)
                };
                *ours.entry(key).or_insert(0) += 1;
            }
            assert_eq!(ours, brute_force_one_edge(1, n), "n = {n}");
        }
    }
}
