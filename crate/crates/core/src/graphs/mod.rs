//! Finite simple graphs on `1..=n` stored as adjacency bit masks.
//!
//! Every set-valued result (covers, cliques, components) is returned in the
//! canonical order `(cardinality, mask)`, which keeps golden outputs stable.

mod io;
mod iso;

pub use io::GraphJson;
pub use iso::{are_isomorphic, canonical_form, CanonicalForm, MAX_ISO_VERTICES};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the 0-based positions of the set bits of `mask`, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub(crate) fn sort_canonical(sets: &mut [u64]) {
    sets.sort_unstable_by_key(|&m| (m.count_ones(), m));
}

/// A set of vertices, stored as a bit mask (vertex `v` ↦ bit `v - 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// Builds a set from 1-based vertex labels. Labels must lie in `1..=64`.
    pub fn from_vertices(vertices: &[usize]) -> Self {
        VertexSet(vertices.iter().fold(0, |m, &v| {
            assert!((1..=64).contains(&v), "vertex label {v} out of range");
            m | bit(v - 1)
        }))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=64).contains(&v) && self.0 & bit(v - 1) != 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// 1-based labels in ascending order.
    pub fn vertices(self) -> Vec<usize> {
        bits(self.0).map(|v| v + 1).collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = v.iter().find(|&&x| !(1..=64).contains(&x)) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(VertexSet::from_vertices(&v))
    }
}

/// A simple undirected graph on the vertex set `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// An induced subgraph together with the original labels of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `labels[k]` is the original label of vertex `k + 1`.
    pub labels: Vec<usize>,
}

impl Graph {
    pub const MAX_VERTICES: usize = 64;

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > Self::MAX_VERTICES {
            return Err(Error::SizeGuard {
                what: "vertex count",
                got: n,
                limit: Self::MAX_VERTICES,
            });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 1-based edges. Loops and repeated edges are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.check_vertex(i)?;
            g.check_vertex(j)?;
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            if g.has_edge(i, j) {
                return Err(Error::DuplicateEdge(i.min(j), i.max(j)));
            }
            g.adj[i - 1] |= bit(j - 1);
            g.adj[j - 1] |= bit(i - 1);
        }
        Ok(g)
    }

    /// Internal constructor from 0-based adjacency masks. Caller guarantees
    /// symmetry and the absence of loops.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= 64);
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(i, &m)| m & bit(i) == 0 && bits(m).all(|j| adj[j] & bit(i) != 0)));
        Graph { n: adj.len(), adj }
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = low_mask(n);
        for (v, m) in g.adj.iter_mut().enumerate() {
            *m = all & !bit(v);
        }
        Ok(g)
    }

    /// The path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The cycle `1 - 2 - ... - n - 1`, `n ≥ 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        Graph::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based adjacency masks.
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.adj[i - 1] & bit(j - 1) != 0
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v - 1])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as 1-based pairs `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in bits(self.adj[i] & !low_mask(i + 1)) {
                out.push((i + 1, j + 1));
            }
        }
        out
    }

    /// Edges as 2-element masks, 0-based.
    pub(crate) fn edge_masks(&self) -> Vec<u64> {
        self.edges()
            .into_iter()
            .map(|(i, j)| bit(i - 1) | bit(j - 1))
            .collect()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.adj[v - 1] == 0).collect()
    }

    /// Errors with the first isolated vertex, if any.
    pub fn require_no_isolated(&self) -> Result<()> {
        match self.isolated_vertices().first() {
            Some(&v) => Err(Error::IsolatedVertex(v)),
            None => Ok(()),
        }
    }

    fn component_of(&self, start: usize) -> u64 {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Graphs with at most one vertex count as connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_of(0) == self.vertex_mask()
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component_of(rest.trailing_zeros() as usize);
            out.push(c);
            rest &= !c;
        }
        sort_canonical(&mut out);
        out.into_iter().map(VertexSet).collect()
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        Graph::from_adjacency(
            self.adj
                .iter()
                .enumerate()
                .map(|(v, &m)| all & !m & !bit(v))
                .collect(),
        )
    }

    /// The subgraph induced on `w`; vertex `k + 1` of the result is the
    /// `k`-th smallest element of `w`.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<Subgraph> {
        if w.mask() & !self.vertex_mask() != 0 {
            let v = bits(w.mask() & !self.vertex_mask()).next().unwrap() + 1;
            return Err(Error::InvalidVertex { vertex: v, n: self.n });
        }
        let labels = w.vertices();
        let adj = labels
            .iter()
            .map(|&v| {
                let row = self.adj[v - 1];
                labels
                    .iter()
                    .enumerate()
                    .filter(|(_, &u)| row & bit(u - 1) != 0)
                    .fold(0u64, |m, (k, _)| m | bit(k))
            })
            .collect();
        Ok(Subgraph {
            graph: Graph::from_adjacency(adj),
            labels,
        })
    }

    /// Relabels vertices: vertex `v` becomes `perm[v - 1]` (1-based).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = 0u64;
        for &p in perm {
            if p == 0 || p > self.n || seen & bit(p - 1) != 0 {
                return Err(Error::InvalidArgument("relabeling is not a permutation".into()));
            }
            seen |= bit(p - 1);
        }
        if perm.len() != self.n {
            return Err(Error::InvalidArgument("relabeling has the wrong length".into()));
        }
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            for u in bits(self.adj[v]) {
                adj[perm[v] - 1] |= bit(perm[u] - 1);
            }
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// All maximal cliques (facets of the clique complex), canonical order.
    pub fn clique_complex_facets(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if self.n > 0 {
            bron_kerbosch(&self.adj, 0, self.vertex_mask(), 0, &mut out);
        }
        sort_canonical(&mut out);
        out.into_iter().map(VertexSet).collect()
    }

    /// All maximal independent sets, canonical order.
    pub fn maximal_independent_sets(&self) -> Vec<VertexSet> {
        self.complement().clique_complex_facets()
    }

    /// All inclusion-minimal vertex covers, canonical order. These are the
    /// complements of the maximal independent sets.
    pub fn minimal_vertex_covers(&self) -> Vec<VertexSet> {
        let all = self.vertex_mask();
        let mut out: Vec<u64> = self
            .maximal_independent_sets()
            .into_iter()
            .map(|d| all & !d.mask())
            .collect();
        sort_canonical(&mut out);
        out.into_iter().map(VertexSet).collect()
    }

    /// Size of a maximum independent set.
    pub fn independence_number(&self) -> usize {
        self.maximal_independent_sets()
            .iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(0)
    }

    /// A 2-colouring `(V1, V2)` if one exists. In each component the smallest
    /// vertex lands in `V1`.
    pub fn is_bipartite(&self) -> Option<(VertexSet, VertexSet)> {
        let mut side = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for u in bits(self.adj[v]) {
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        stack.push(u);
                    } else if side[u] == side[v] {
                        return None;
                    }
                }
            }
        }
        let (mut a, mut b) = (0u64, 0u64);
        for (v, &s) in side.iter().enumerate() {
            if s == 0 {
                a |= bit(v);
            } else {
                b |= bit(v);
            }
        }
        Some((VertexSet(a), VertexSet(b)))
    }

    /// A perfect elimination ordering (1-based) if the graph is chordal.
    ///
    /// Maximum cardinality search visits vertices; the reverse of the visit
    /// order is a perfect elimination ordering exactly when the graph is
    /// chordal, which is then verified directly.
    pub fn is_chordal(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut weight = vec![0usize; n];
        let mut numbered = 0u64;
        let mut visit = Vec::with_capacity(n);
        for _ in 0..n {
            let v = bits(self.vertex_mask() & !numbered)
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .unwrap();
            visit.push(v);
            numbered |= bit(v);
            for u in bits(self.adj[v] & !numbered) {
                weight[u] += 1;
            }
        }
        visit.reverse();
        let mut pos = vec![0usize; n];
        for (p, &v) in visit.iter().enumerate() {
            pos[v] = p;
        }
        for &v in &visit {
            let later: u64 = bits(self.adj[v])
                .filter(|&u| pos[u] > pos[v])
                .fold(0, |m, u| m | bit(u));
            if let Some(first) = bits(later).min_by_key(|&u| pos[u]) {
                let rest = later & !bit(first);
                if rest & !self.adj[first] != 0 {
                    return None;
                }
            }
        }
        Some(visit.into_iter().map(|v| v + 1).collect())
    }

    /// `G^{(i)}`: the complement of the subgraph induced on `N(i)`.
    pub fn neighborhood_complement(&self, i: usize) -> Result<Subgraph> {
        self.check_vertex(i)?;
        if self.degree(i) == 0 {
            return Err(Error::IsolatedVertex(i));
        }
        let sub = self.induced_subgraph(self.neighbors(i))?;
        Ok(Subgraph {
            graph: sub.graph.complement(),
            labels: sub.labels,
        })
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .unwrap();
    for v in bits(p & !adj[pivot]) {
        bron_kerbosch(adj, r | bit(v), p & adj[v], x & adj[v], out);
        p &= !bit(v);
        x |= bit(v);
    }
}

/// A tree on `1..=m`: connected with exactly `m - 1` edges.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Tree {
    graph: Graph,
}

impl Tree {
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.n() == 0 || !graph.is_connected() || graph.edge_count() + 1 != graph.n() {
            return Err(Error::NotTree);
        }
        Ok(Tree { graph })
    }

    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Tree::new(Graph::from_edges(m, edges)?)
    }

    /// The star with centre 1 and leaves `2..=m`.
    pub fn star(m: usize) -> Result<Self> {
        let edges: Vec<_> = (2..=m).map(|j| (1, j)).collect();
        Tree::from_edges(m, &edges)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn m(&self) -> usize {
        self.graph.n()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges()
    }
}

impl TryFrom<GraphJson> for Tree {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        Tree::new(Graph::try_from(j)?)
    }
}

impl From<Tree> for GraphJson {
    fn from(t: Tree) -> Self {
        t.graph.into()
    }
}
