use std::collections::BTreeMap;

use super::divisor::{canonical_divisor, DivisorClass};
use super::StrataError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub genus: u32,
    /// Sorted marking labels in `1..=n`.
    pub markings: Vec<usize>,
    /// Extra legs that are pushed forward (dilaton leaves).
    pub dilatons: usize,
}

/// A dual graph. Edge `e = (u, v)` owns half-edges `2e` (at `u`) and
/// `2e + 1` (at `v`); a loop has `u = v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StableGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

impl StableGraph {
    pub fn smooth(genus: u32, n: usize, dilatons: usize) -> Self {
        Self {
            vertices: vec![Vertex {
                genus,
                markings: (1..=n).collect(),
                dilatons,
            }],
            edges: Vec::new(),
        }
    }

    pub fn marking_count(&self) -> usize {
        self.vertices.iter().map(|v| v.markings.len()).sum()
    }

    pub fn dilaton_count(&self) -> usize {
        self.vertices.iter().map(|v| v.dilatons).sum()
    }

    /// Vertex carrying each half-edge.
    pub fn half_edge_vertex(&self, half: usize) -> usize {
        let (u, v) = self.edges[half / 2];
        if half.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    pub fn half_edges(&self, vertex: usize) -> Vec<usize> {
        (0..2 * self.edges.len())
            .filter(|&h| self.half_edge_vertex(h) == vertex)
            .collect()
    }

    /// Markings, half-edges and dilaton legs at `vertex`.
    pub fn valence(&self, vertex: usize) -> usize {
        let v = &self.vertices[vertex];
        v.markings.len() + v.dilatons + self.half_edges(vertex).len()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn first_betti(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// `Σ g(v) + h^1(Γ)`, assuming connectivity.
    pub fn genus(&self) -> u32 {
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + self.first_betti() as u32
    }

    pub fn is_stable(&self) -> bool {
        (0..self.vertices.len()).all(|v| 2 * self.vertices[v].genus as usize + self.valence(v) > 2)
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (u, v) = self.edges[edge];
        u == v
    }

    /// Brute force over vertex permutations and half-edge bijections that
    /// preserve genera, markings and incidence, times `Π k_v!` for the
    /// interchangeable dilaton legs.
    pub fn automorphism_order(&self) -> u64 {
        let nv = self.vertices.len();
        let ne = self.edges.len();
        let mut count = 0u64;
        for sigma in permutations(nv) {
            if (0..nv).any(|v| {
                let (a, b) = (&self.vertices[v], &self.vertices[sigma[v]]);
                a != b
            }) {
                continue;
            }
            for pi in permutations(ne) {
                for flips in 0u32..(1 << ne) {
                    let ok = (0..ne).all(|e| {
                        let (u, v) = self.edges[e];
                        let (x, y) = self.edges[pi[e]];
                        let (x, y) = if flips >> e & 1 == 1 { (y, x) } else { (x, y) };
                        sigma[u] == x && sigma[v] == y
                    });
                    if ok {
                        count += 1;
                    }
                }
            }
        }
        let legs: u64 = self.vertices.iter().map(|v| factorial(v.dilatons)).product();
        count * legs
    }

    /// Isomorphism-invariant key for graphs with labeled markings.
    pub fn canonical_key(&self) -> (Vec<Vertex>, Vec<(usize, usize)>) {
        let nv = self.vertices.len();
        permutations(nv)
            .into_iter()
            .map(|sigma| {
                let mut verts = vec![self.vertices[0].clone(); nv];
                for (v, &s) in sigma.iter().enumerate() {
                    verts[s] = self.vertices[v].clone();
                }
                let mut edges: Vec<(usize, usize)> = self
                    .edges
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (sigma[u], sigma[v]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                edges.sort_unstable();
                (verts, edges)
            })
            .min()
            .expect("at least one permutation")
    }
}

type CanonicalKey = (Vec<Vertex>, Vec<(usize, usize)>);

/// Ways a connected graph with `edges` edges, `dilatons` dilaton legs and
/// `n` markings can have total genus `g`, up to isomorphism.
pub fn enumerate_stable_graphs(g: u32, n: usize, edges: usize, dilatons: usize) -> Vec<StableGraph> {
    let mut found: BTreeMap<CanonicalKey, StableGraph> = BTreeMap::new();
    for nv in 1..=edges + 1 {
        let betti = edges + 1 - nv;
        if betti as u32 > g {
            continue;
        }
        let vertex_genus_total = g - betti as u32;
        let pairs: Vec<(usize, usize)> = (0..nv)
            .flat_map(|u| (u..nv).map(move |v| (u, v)))
            .collect();
        for edge_set in multisets(pairs.len(), edges) {
            let edge_list: Vec<(usize, usize)> = edge_set.iter().map(|&i| pairs[i]).collect();
            for genera in compositions(vertex_genus_total, nv) {
                for dil in compositions(dilatons as u32, nv) {
                    for assignment in 0..nv.pow(n as u32) {
                        let mut markings = vec![Vec::new(); nv];
                        let mut code = assignment;
                        for i in 1..=n {
                            markings[code % nv].push(i);
                            code /= nv;
                        }
                        let graph = StableGraph {
                            vertices: (0..nv)
                                .map(|v| Vertex {
                                    genus: genera[v],
                                    markings: markings[v].clone(),
                                    dilatons: dil[v] as usize,
                                })
                                .collect(),
                            edges: edge_list.clone(),
                        };
                        if graph.is_connected() && graph.is_stable() {
                            found.entry(graph.canonical_key()).or_insert(graph);
                        }
                    }
                }
            }
        }
    }
    found.into_values().collect()
}

fn multisets(kinds: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(kinds, size - 1) {
        let start = rest.last().copied().unwrap_or(0);
        for k in start..kinds {
            let mut v = rest.clone();
            v.push(k);
            out.push(v);
        }
    }
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// The divisor class a codimension-one graph pushes forward to. A smooth
/// graph maps to `κ₁` when it carries a dilaton leg and to `ψ_leg` when a
/// marking is given.
pub fn divisor_class_of(graph: &StableGraph, psi_leg: Option<usize>) -> Result<DivisorClass, StrataError> {
    let g = graph.genus();
    let n = graph.marking_count();
    let class = match (graph.edges.len(), graph.dilaton_count(), psi_leg) {
        (0, 1, None) => DivisorClass::Kappa1,
        (0, 0, Some(i)) => DivisorClass::Psi(i),
        (1, 0, None) if graph.is_loop(0) => DivisorClass::DeltaIrr,
        (1, 0, None) => {
            let v = &graph.vertices[graph.edges[0].0];
            DivisorClass::DeltaSep {
                h: v.genus,
                subset: v.markings.clone(),
            }
        }
        _ => return Err(StrataError::CodimensionNotOne),
    };
    canonical_divisor(g, n, &class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertex(genus: u32, markings: &[usize]) -> Vertex {
        Vertex {
            genus,
            markings: markings.to_vec(),
            dilatons: 0,
        }
    }

    #[test]
    fn loop_has_two_automorphisms() {
        let g = StableGraph {
            vertices: vec![vertex(0, &[1, 2])],
            edges: vec![(0, 0)],
        };
        assert_eq!(g.automorphism_order(), 2);
        assert_eq!(g.genus(), 1);
        assert_eq!(divisor_class_of(&g, None).unwrap(), DivisorClass::DeltaIrr);
    }

    #[test]
    fn symmetric_separating_graph() {
        let g = StableGraph {
            vertices: vec![vertex(1, &[]), vertex(1, &[])],
            edges: vec![(0, 1)],
        };
        assert_eq!(g.automorphism_order(), 2);
        assert_eq!(
            divisor_class_of(&g, None).unwrap(),
            DivisorClass::DeltaSep { h: 1, subset: vec![] }
        );
        let asym = StableGraph {
            vertices: vec![vertex(1, &[]), vertex(0, &[1, 2])],
            edges: vec![(0, 1)],
        };
        assert_eq!(asym.automorphism_order(), 1);
        assert_eq!(
            divisor_class_of(&asym, None).unwrap(),
            DivisorClass::DeltaSep { h: 0, subset: vec![1, 2] }
        );
    }

    #[test]
    fn banana_and_double_loop() {
        let banana = StableGraph {
            vertices: vec![vertex(0, &[1]), vertex(0, &[2])],
            edges: vec![(0, 1), (0, 1)],
        };
        assert_eq!(banana.automorphism_order(), 2);
        let double_loop = StableGraph {
            vertices: vec![vertex(0, &[1])],
            edges: vec![(0, 0), (0, 0)],
        };
        // swap the loops, flip each loop
        assert_eq!(double_loop.automorphism_order(), 8);
        let two_dilatons = StableGraph::smooth(1, 1, 2);
        assert_eq!(two_dilatons.automorphism_order(), 2);
    }

    #[test]
    fn smooth_classes() {
        let s = StableGraph::smooth(2, 1, 1);
        assert_eq!(divisor_class_of(&s, None).unwrap(), DivisorClass::Kappa1);
        let s = StableGraph::smooth(2, 1, 0);
        assert_eq!(divisor_class_of(&s, Some(1)).unwrap(), DivisorClass::Psi(1));
        assert!(divisor_class_of(&s, None).is_err());
    }

    #[test]
    fn enumeration_genus_formula_and_stability() {
        for g in 1..=3 {
            for n in 0..=3 {
                for e in 0..=2 {
                    for k in 0..=2 {
                        for graph in enumerate_stable_graphs(g, n, e, k) {
                            assert!(graph.is_connected() && graph.is_stable());
                            assert_eq!(graph.genus(), g);
                            assert_eq!(graph.marking_count(), n);
                            assert_eq!(graph.edges.len(), e);
                            assert_eq!(graph.dilaton_count(), k);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_edge_counts() {
        assert_eq!(enumerate_stable_graphs(1, 2, 1, 0).len(), 2);
        assert_eq!(enumerate_stable_graphs(2, 0, 1, 0).len(), 2);
        // a genus-0 vertex with two loops; a looped genus-0 vertex on a genus-1 vertex
        assert_eq!(enumerate_stable_graphs(2, 0, 2, 0).len(), 2);
    }
}
