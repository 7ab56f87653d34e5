//! The unit graph of a ring spec: vertices are ring elements, two distinct
//! vertices are adjacent iff their sum is a unit. Canonical construction
//! plus the graph invariants the verification pipeline compares against
//! closed forms.

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingSpec};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::VecDeque;
use std::fmt;
use std::io::Write;

/// Default cap on vertex count for graph construction (~5e7 pair tests).
pub const DEFAULT_VERTEX_BUDGET: usize = 10_000;

/// A path length or cycle length that may be infinite (disconnected graph,
/// acyclic graph).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Distance;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Distance, E> {
                Ok(Distance::Finite(v as usize))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Distance, E> {
                if v == "inf" {
                    Ok(Distance::Infinite)
                } else {
                    Err(E::custom(format!("expected \"inf\", got {v:?}")))
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Everything the pipeline measures on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInvariants {
    pub connected: bool,
    pub diameter: Distance,
    pub girth: Distance,
    pub bipartite: bool,
    pub min_degree: usize,
    pub max_degree: usize,
    pub edge_count: usize,
    pub edge_connectivity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    /// Per-vertex degrees in vertex order.
    pub degrees: Vec<usize>,
}

/// Closed-form edge count: `(V - 1) * Phi / 2` when every modulus is odd,
/// else `V * Phi / 2`, where `V = prod n_i` and `Phi = prod phi(n_i)`.
pub fn expected_edge_count(spec: &RingSpec) -> u64 {
    let v = spec.cardinality() as u128;
    let phi = spec.phi_product() as u128;
    let doubled = if spec.all_moduli_odd() { (v - 1) * phi } else { v * phi };
    u64::try_from(doubled / 2).expect("edge count fits u64")
}

/// The unit graph `G(R)`. Vertices are in lexicographic residue-tuple
/// order, the edge list is lexicographic `(i, j)` with `i < j`, and
/// neighbor lists are sorted, so every run produces the same object.
#[derive(Debug, Clone)]
pub struct UnitGraph {
    spec: RingSpec,
    vertices: Vec<RingElement>,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl UnitGraph {
    pub fn build(spec: &RingSpec) -> Result<Self> {
        Self::build_with_budget(spec, DEFAULT_VERTEX_BUDGET)
    }

    pub fn build_with_budget(spec: &RingSpec, vertex_budget: usize) -> Result<Self> {
        let n = spec.cardinality();
        if n > vertex_budget as u64 {
            return Err(Error::Resource(format!(
                "{n} vertices exceed the budget of {vertex_budget}"
            )));
        }
        let n = n as usize;
        let vertices: Vec<RingElement> = spec.elements().collect();
        let tables = spec.unit_tables();
        let moduli = spec.moduli();
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            let a = vertices[i].residues();
            for j in (i + 1)..n {
                let b = vertices[j].residues();
                let adjacent = (0..moduli.len())
                    .all(|t| tables[t][((a[t] + b[t]) % moduli[t]) as usize]);
                if adjacent {
                    edges.push((i as u32, j as u32));
                    adj[i].push(j as u32);
                    adj[j].push(i as u32);
                }
            }
        }
        Ok(UnitGraph { spec: spec.clone(), vertices, edges, adj })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[RingElement] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    fn bfs_distances(&self, start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &u in &self.adj[x] {
                let u = u as usize;
                if dist[u] == usize::MAX {
                    dist[u] = dist[x] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// Max over all pairs of shortest-path length; infinite if disconnected.
    pub fn diameter(&self) -> Distance {
        let mut max = 0usize;
        for v in 0..self.vertex_count() {
            let dist = self.bfs_distances(v);
            for &d in &dist {
                if d == usize::MAX {
                    return Distance::Infinite;
                }
                max = max.max(d);
            }
        }
        Distance::Finite(max)
    }

    /// Length of the shortest cycle, by BFS from every vertex tracking the
    /// first non-tree edge closure; infinite for forests.
    pub fn girth(&self) -> Distance {
        let n = self.vertex_count();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for start in 0..n {
            dist.fill(usize::MAX);
            parent.fill(u32::MAX);
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                // No closure through x can beat the current best past this depth.
                if best != usize::MAX && 2 * dist[x] >= best {
                    continue;
                }
                for &u in &self.adj[x] {
                    let u = u as usize;
                    if dist[u] == usize::MAX {
                        dist[u] = dist[x] + 1;
                        parent[u] = x as u32;
                        queue.push_back(u);
                    } else if u as u32 != parent[x] {
                        best = best.min(dist[x] + dist[u] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Distance::Infinite
        } else {
            Distance::Finite(best)
        }
    }

    /// A 2-coloring when one exists (per component, color of the BFS root
    /// is 0), else None.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &u in &self.adj[x] {
                    let u = u as usize;
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[x];
                        queue.push_back(u);
                    } else if color[u] == color[x] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let min = degrees.iter().copied().min().unwrap_or(0);
        let max = degrees.iter().copied().max().unwrap_or(0);
        DegreeStats { min, max, degrees }
    }

    /// Exact edge connectivity: a global minimum edge cut separates vertex 0
    /// from some other vertex, so the minimum over all unit-capacity
    /// max-flows from 0 suffices. Disconnected and single-vertex graphs
    /// report 0.
    pub fn edge_connectivity(&self) -> usize {
        let n = self.vertex_count();
        if n <= 1 || !self.is_connected() {
            return 0;
        }
        let mut flow = Dinic::new(n, &self.edges);
        // Whitney: the answer is at most the minimum degree, so every run
        // can stop once it reaches the best cut seen so far.
        let mut best = self.degree_stats().min;
        for t in 1..n {
            flow.reset();
            best = best.min(flow.max_flow(0, t, best));
            if best == 0 {
                break;
            }
        }
        best
    }

    pub fn analyze(&self) -> GraphInvariants {
        let stats = self.degree_stats();
        let inv = GraphInvariants {
            connected: self.is_connected(),
            diameter: self.diameter(),
            girth: self.girth(),
            bipartite: self.is_bipartite(),
            min_degree: stats.min,
            max_degree: stats.max,
            edge_count: self.edge_count(),
            edge_connectivity: self.edge_connectivity(),
        };
        debug_assert!(inv.edge_connectivity <= inv.min_degree);
        inv
    }

    /// Edge-list text: header `p <vertices> <edges>`, then one `i j` line
    /// per edge in canonical order.
    pub fn write_edge_list<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "p {} {}", self.vertex_count(), self.edge_count())?;
        for &(i, j) in &self.edges {
            writeln!(w, "{i} {j}")?;
        }
        Ok(())
    }
}

/// Dinic max-flow on the unit-capacity residual graph; rebuilt capacities
/// per target via `reset`.
struct Dinic {
    to: Vec<u32>,
    cap: Vec<u8>,
    head: Vec<Vec<u32>>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut to = Vec::with_capacity(edges.len() * 2);
        let mut head = vec![Vec::new(); n];
        for &(u, v) in edges {
            head[u as usize].push(to.len() as u32);
            to.push(v);
            head[v as usize].push(to.len() as u32);
            to.push(u);
        }
        let cap = vec![1; to.len()];
        Dinic { to, cap, head, level: vec![0; n], iter: vec![0; n] }
    }

    fn reset(&mut self) {
        self.cap.fill(1);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.head[x] {
                let y = self.to[a as usize] as usize;
                if self.cap[a as usize] > 0 && self.level[y] == u32::MAX {
                    self.level[y] = self.level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, x: usize, t: usize) -> bool {
        if x == t {
            return true;
        }
        while self.iter[x] < self.head[x].len() {
            let a = self.head[x][self.iter[x]] as usize;
            let y = self.to[a] as usize;
            if self.cap[a] > 0 && self.level[y] == self.level[x] + 1 && self.dfs(y, t) {
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                return true;
            }
            self.iter[x] += 1;
        }
        false
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.bfs(s, t) {
            self.iter.fill(0);
            while flow < limit && self.dfs(s, t) {
                flow += 1;
            }
        }
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(moduli: &[u64]) -> UnitGraph {
        UnitGraph::build(&RingSpec::new(moduli.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn z6_edge_set_is_exact() {
        let g = graph(&[6]);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edges(), &[(0, 1), (0, 5), (1, 4), (2, 3), (2, 5), (3, 4)]);
    }

    #[test]
    fn z1_is_a_single_vertex() {
        let g = graph(&[1]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        let inv = g.analyze();
        assert!(inv.connected);
        assert_eq!(inv.diameter, Distance::Finite(0));
        assert_eq!(inv.girth, Distance::Infinite);
        assert!(inv.bipartite);
        assert_eq!((inv.min_degree, inv.max_degree), (0, 0));
        assert_eq!(inv.edge_connectivity, 0);
    }

    #[test]
    fn direct_sum_matches_single_modulus_size() {
        let g = graph(&[3, 2]);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn edge_counts_match_closed_form_up_to_60() {
        for n in 1..=60 {
            let spec = RingSpec::new(vec![n]).unwrap();
            let g = UnitGraph::build(&spec).unwrap();
            assert_eq!(g.edge_count() as u64, expected_edge_count(&spec), "n={n}");
        }
        // Direct sums, including non-coprime moduli.
        for moduli in [vec![9u64, 5], vec![4, 3], vec![2, 2], vec![3, 3], vec![2, 2, 3]] {
            let spec = RingSpec::new(moduli.clone()).unwrap();
            let g = UnitGraph::build(&spec).unwrap();
            assert_eq!(g.edge_count() as u64, expected_edge_count(&spec), "{moduli:?}");
        }
    }

    #[test]
    fn expected_edge_count_examples() {
        assert_eq!(expected_edge_count(&RingSpec::new(vec![15]).unwrap()), 56);
        assert_eq!(expected_edge_count(&RingSpec::new(vec![9, 5]).unwrap()), 528);
        assert_eq!(expected_edge_count(&RingSpec::new(vec![4, 3]).unwrap()), 24);
    }

    #[test]
    fn connectivity_examples() {
        assert!(graph(&[6]).is_connected());
        assert!(graph(&[1]).is_connected());
        assert!(graph(&[15]).is_connected());
        // Z_2 (+) Z_2 is a perfect matching on 4 vertices: disconnected.
        let g = graph(&[2, 2]);
        assert!(!g.is_connected());
        assert_eq!(g.diameter(), Distance::Infinite);
        assert_eq!(g.edge_connectivity(), 0);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(graph(&[5]).diameter(), Distance::Finite(2));
        assert_eq!(graph(&[1]).diameter(), Distance::Finite(0));
        assert_eq!(graph(&[6]).diameter(), Distance::Finite(3));
        assert_eq!(graph(&[12]).diameter(), Distance::Finite(3));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(graph(&[5]).girth(), Distance::Finite(3));
        assert_eq!(graph(&[6]).girth(), Distance::Finite(6));
        assert_eq!(graph(&[2]).girth(), Distance::Infinite);
        assert_eq!(graph(&[12]).girth(), Distance::Finite(4));
    }

    #[test]
    fn bipartite_examples() {
        let g6 = graph(&[6]);
        let coloring = g6.bipartition().expect("Z_6 is bipartite");
        for &(i, j) in g6.edges() {
            assert_ne!(coloring[i as usize], coloring[j as usize]);
        }
        // The parity of the (single) even coordinate splits the classes.
        for (v, elem) in g6.vertices().iter().enumerate() {
            assert_eq!(coloring[v] == coloring[0], elem.residues()[0] % 2 == 0);
        }
        assert!(!graph(&[5]).is_bipartite());
        assert!(graph(&[4]).is_bipartite());
    }

    #[test]
    fn degree_examples() {
        let s9 = graph(&[9]).degree_stats();
        assert_eq!((s9.min, s9.max), (5, 6));
        let s12 = graph(&[12]).degree_stats();
        assert_eq!((s12.min, s12.max), (4, 4));
        let s1 = graph(&[1]).degree_stats();
        assert_eq!((s1.min, s1.max), (0, 0));
        let s5 = graph(&[5]).degree_stats();
        assert_eq!(s5.degrees, vec![4, 3, 3, 3, 3]);
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(graph(&[9]).edge_connectivity(), 5);
        assert_eq!(graph(&[6]).edge_connectivity(), 2);
        assert_eq!(graph(&[2]).edge_connectivity(), 1);
    }

    #[test]
    fn analyze_z15() {
        let inv = graph(&[15]).analyze();
        assert_eq!(
            inv,
            GraphInvariants {
                connected: true,
                diameter: Distance::Finite(2),
                girth: Distance::Finite(3),
                bipartite: false,
                min_degree: 7,
                max_degree: 8,
                edge_count: 56,
                edge_connectivity: 7,
            }
        );
    }

    #[test]
    fn analyze_z12() {
        let inv = graph(&[12]).analyze();
        assert_eq!(
            inv,
            GraphInvariants {
                connected: true,
                diameter: Distance::Finite(3),
                girth: Distance::Finite(4),
                bipartite: true,
                min_degree: 4,
                max_degree: 4,
                edge_count: 24,
                edge_connectivity: 4,
            }
        );
    }

    #[test]
    fn adjacency_is_symmetric_and_loop_free() {
        for moduli in [vec![8u64], vec![9, 2], vec![3, 3], vec![2, 2, 5], vec![1, 6]] {
            let g = graph(&moduli);
            for v in 0..g.vertex_count() {
                for &u in g.neighbors(v) {
                    assert_ne!(u as usize, v, "loop at {v} in {moduli:?}");
                    assert!(g.neighbors(u as usize).contains(&(v as u32)));
                }
            }
            let stats = g.degree_stats();
            assert!(g.edge_connectivity() <= stats.min, "Whitney violated for {moduli:?}");
        }
    }

    #[test]
    fn vertex_budget_is_enforced() {
        let spec = RingSpec::new(vec![101]).unwrap();
        assert!(UnitGraph::build_with_budget(&spec, 100).is_err());
        assert!(UnitGraph::build_with_budget(&spec, 101).is_ok());
    }

    #[test]
    fn edge_list_export_format() {
        let mut out = Vec::new();
        graph(&[6]).write_edge_list(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "p 6 6\n0 1\n0 5\n1 4\n2 3\n2 5\n3 4\n");
    }

    #[test]
    fn distance_serde_roundtrip() {
        for d in [Distance::Finite(7), Distance::Infinite] {
            let json = serde_json::to_string(&d).unwrap();
            let back: Distance = serde_json::from_str(&json).unwrap();
            assert_eq!(back, d);
        }
        assert_eq!(serde_json::to_string(&Distance::Infinite).unwrap(), "\"inf\"");
    }
}
