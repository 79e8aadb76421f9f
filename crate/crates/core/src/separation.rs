//! Separation and inseparability of edge ideals, linear syzygy graphs,
//! relation trees and inseparable models.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generic::{generic_graph, generic_ideal, BinomialRow, GenericGraph, RelationMatrix};
use crate::graphs::{bit, bits, Graph, Tree, VertexSet};
use crate::ideals::{SquarefreeIdeal, VariableUniverse};
use crate::resolutions::FieldSpec;

/// First vertex `i` whose `G^{(i)}` is disconnected, if any.
pub fn separability_witness(g: &Graph) -> Result<Option<usize>> {
    g.require_no_isolated()?;
    for i in 1..=g.n() {
        if !g.neighborhood_complement(i)?.graph.is_connected() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `G` is inseparable iff every `G^{(i)}` is connected.
pub fn is_inseparable(g: &Graph) -> Result<bool> {
    Ok(separability_witness(g)?.is_none())
}

/// A split of vertex `i` of `base`: `separated` lives on `1..=n+1` and the
/// new vertex `n + 1` is identified with `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCandidate {
    pub base: Graph,
    pub vertex: usize,
    pub separated: Graph,
}

impl SeparationCandidate {
    /// Moves the edges from `vertex` to the neighbours in `moved` onto the
    /// new vertex.
    pub fn split(base: &Graph, vertex: usize, moved: VertexSet) -> Result<Self> {
        base.check_vertex(vertex)?;
        if !moved.is_subset(base.neighbors(vertex)) {
            return Err(Error::InvalidCandidate(format!(
                "moved set {:?} is not inside N({vertex})",
                moved.vertices()
            )));
        }
        let n = base.n();
        let new = n + 1;
        let edges: Vec<(usize, usize)> = base
            .edges()
            .into_iter()
            .map(|(a, b)| {
                if a == vertex && moved.contains(b) {
                    (b, new)
                } else if b == vertex && moved.contains(a) {
                    (a, new)
                } else {
                    (a, b)
                }
            })
            .collect();
        Ok(SeparationCandidate {
            base: base.clone(),
            vertex,
            separated: Graph::from_edges(new, &edges)?,
        })
    }

    /// The vertex standing for the new variable.
    pub fn new_vertex(&self) -> usize {
        self.base.n() + 1
    }
}

/// Decides conditions (i)-(iii) of a separation. Condition (iii) holds iff
/// no minimal vertex cover of `separated` contains both `i` and `i'`: a
/// linear binomial lies in a monomial prime only if both its variables do.
pub fn validate_separation(c: &SeparationCandidate) -> Result<bool> {
    let n = c.base.n();
    if c.separated.n() != n + 1 {
        return Err(Error::InvalidCandidate(format!(
            "separated graph has {} vertices, expected {}",
            c.separated.n(),
            n + 1
        )));
    }
    c.base.check_vertex(c.vertex)?;
    let (i, y) = (c.vertex - 1, n);
    let mut image = Vec::new();
    for e in c.separated.edge_masks() {
        let m = if e & bit(y) != 0 { (e & !bit(y)) | bit(i) } else { e };
        if m.count_ones() != 2 {
            return Err(Error::InvalidCandidate(format!(
                "edge {{{}, {}}} collapses under the identification",
                c.vertex,
                n + 1
            )));
        }
        image.push(m);
    }
    image.sort_unstable();
    image.dedup();
    let mut base_edges = c.base.edge_masks();
    base_edges.sort_unstable();
    if image != base_edges {
        return Ok(false);
    }
    if c.separated.degree(c.vertex) == 0 || c.separated.degree(n + 1) == 0 {
        return Ok(false);
    }
    let both = bit(i) | bit(y);
    Ok(c
        .separated
        .minimal_vertex_covers()
        .iter()
        .all(|cover| cover.mask() & both != both))
}

/// Every split of every vertex of degree at least 2 into a proper nonempty
/// part moved to the new vertex; the smallest neighbour always stays, so
/// each unordered split appears once.
pub fn separation_candidates(g: &Graph) -> Result<Vec<SeparationCandidate>> {
    let mut out = Vec::new();
    for i in 1..=g.n() {
        let nb = g.neighbors(i).mask();
        if nb.count_ones() < 2 {
            continue;
        }
        let rest = nb & (nb - 1);
        let mut sub = rest;
        while sub != 0 {
            out.push(SeparationCandidate::split(g, i, VertexSet::from_mask(sub))?);
            sub = (sub - 1) & rest;
        }
    }
    Ok(out)
}

/// A validated separation found by exhaustive candidate search.
pub fn find_separation(g: &Graph) -> Result<Option<SeparationCandidate>> {
    for c in separation_candidates(g)? {
        if validate_separation(&c)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// An edge `{a, b}` of the linear syzygy graph with `x_{var_a} u_a =
/// x_{var_b} u_b`; all indices 1-based and `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SyzygyEdge {
    pub a: usize,
    pub b: usize,
    pub var_a: usize,
    pub var_b: usize,
}

/// Generators joined when their lcm has degree one more than theirs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSyzygyGraph {
    pub m: usize,
    pub edges: Vec<SyzygyEdge>,
}

impl LinearSyzygyGraph {
    pub fn graph(&self) -> Result<Graph> {
        let e: Vec<_> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        Graph::from_edges(self.m, &e)
    }
}

pub fn linear_syzygy_graph(j: &SquarefreeIdeal) -> Result<LinearSyzygyGraph> {
    if j.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if j.single_degree().is_none() {
        return Err(Error::MixedDegrees);
    }
    let g = j.generators();
    let mut edges = Vec::new();
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            let (only_a, only_b) = (g[a] & !g[b], g[b] & !g[a]);
            if only_a.count_ones() == 1 {
                edges.push(SyzygyEdge {
                    a: a + 1,
                    b: b + 1,
                    var_a: only_b.trailing_zeros() as usize + 1,
                    var_b: only_a.trailing_zeros() as usize + 1,
                });
            }
        }
    }
    Ok(LinearSyzygyGraph { m: g.len(), edges })
}

/// A relation tree on the generator indices with its relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTree {
    pub tree: Tree,
    pub matrix: RelationMatrix,
}

fn matrix_of(j: &SquarefreeIdeal, edges: &[SyzygyEdge]) -> Result<RelationMatrix> {
    let rows = edges
        .iter()
        .map(|e| BinomialRow {
            col_a: e.a,
            var_a: e.var_a,
            col_b: e.b,
            var_b: e.var_b,
        })
        .collect();
    RelationMatrix::new(j.len(), j.universe().clone(), rows)
}

/// The `j`-th maximal minor is `±u_j` for every `j`.
fn minors_match(matrix: &RelationMatrix, j: &SquarefreeIdeal) -> bool {
    matrix
        .maximal_minors()
        .iter()
        .zip(j.generators())
        .all(|(p, &u)| match p.as_signed_monomial() {
            Some((_, vars)) => {
                let mask = vars.iter().fold(0u64, |m, &v| m | bit(v - 1));
                mask == u && vars.len() == u.count_ones() as usize
            }
            None => false,
        })
}

/// Spanning trees of the syzygy graph in lexicographic order of their
/// sorted edge-index lists; `visit` returns `false` to stop.
fn spanning_trees(m: usize, edges: &[SyzygyEdge], visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn find(parent: &[usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    fn go(
        m: usize,
        edges: &[SyzygyEdge],
        start: usize,
        parent: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() + 1 == m {
            return visit(chosen);
        }
        if edges.len() - start < m - 1 - chosen.len() {
            return true;
        }
        for k in start..edges.len() {
            let (ra, rb) = (find(parent, edges[k].a - 1), find(parent, edges[k].b - 1));
            if ra == rb {
                continue;
            }
            parent[rb] = ra;
            chosen.push(k);
            let go_on = go(m, edges, k + 1, parent, chosen, visit);
            chosen.pop();
            parent[rb] = rb;
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut parent: Vec<usize> = (0..m).collect();
    go(m, edges, 0, &mut parent, &mut Vec::new(), visit);
}

fn search_relation_trees(
    j: &SquarefreeIdeal,
    mut accept: impl FnMut(RelationTree) -> bool,
) -> Result<()> {
    let syz = linear_syzygy_graph(j)?;
    let mut err = None;
    spanning_trees(syz.m, &syz.edges, &mut |chosen| {
        let picked: Vec<SyzygyEdge> = chosen.iter().map(|&k| syz.edges[k]).collect();
        let built = matrix_of(j, &picked).and_then(|matrix| {
            let tree = matrix.relation_tree()?;
            Ok(RelationTree { tree, matrix })
        });
        match built {
            Ok(rt) if minors_match(&rt.matrix, j) => accept(rt),
            Ok(_) => true,
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    err.map_or(Ok(()), Err)
}

/// All relation trees of `J`: spanning trees of the linear syzygy graph
/// whose binomial rows have the generators of `J` as maximal minors.
pub fn relation_trees(j: &SquarefreeIdeal) -> Result<Vec<RelationTree>> {
    let mut out = Vec::new();
    search_relation_trees(j, |rt| {
        out.push(rt);
        true
    })?;
    if out.is_empty() {
        return Err(Error::NoRelationTree);
    }
    Ok(out)
}

/// The relation tree with the lexicographically smallest edge list.
pub fn first_relation_tree(j: &SquarefreeIdeal) -> Result<RelationTree> {
    let mut found = None;
    search_relation_trees(j, |rt| {
        found = Some(rt);
        false
    })?;
    found.ok_or(Error::NoRelationTree)
}

/// `G_T` for a relation tree of `I_G^∨` and the substitution that
/// specializes it back to `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InseparableModel {
    pub tree: Tree,
    pub relation: RelationMatrix,
    pub generic: GenericGraph,
    /// `substitution[v - 1]` is the vertex of `G` that the pair variable of
    /// vertex `v` of `G_T` maps to.
    pub substitution: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    tree: Tree,
    graph: serde_json::Value,
    substitution: Vec<(String, String)>,
}

impl InseparableModel {
    /// `(pair variable, original variable)` names.
    pub fn substitution_names(&self, target: &VariableUniverse) -> Vec<(String, String)> {
        self.substitution
            .iter()
            .enumerate()
            .map(|(k, &v)| (self.generic.universe.name(k + 1).to_string(), target.name(v).to_string()))
            .collect()
    }

    pub fn to_json_value(&self, target: &VariableUniverse) -> serde_json::Value {
        serde_json::to_value(ModelJson {
            tree: self.tree.clone(),
            graph: self.generic.to_json_value(),
            substitution: self.substitution_names(target),
        })
        .expect("model serializes")
    }

    /// Whether distinct pair variables go to distinct vertices.
    pub fn is_injective(&self) -> bool {
        let mut seen = 0u64;
        self.substitution.iter().all(|&v| {
            let fresh = seen & bit(v - 1) == 0;
            seen |= bit(v - 1);
            fresh
        })
    }
}

fn require_bicm(g: &Graph) -> Result<()> {
    if !crate::bicm::certify_bicm(g, FieldSpec::RATIONALS)?.verdict {
        return Err(Error::NotBiCm);
    }
    Ok(())
}

/// The inseparable model built from the lexicographically first relation
/// tree of `I_G^∨`.
pub fn inseparable_model(g: &Graph) -> Result<InseparableModel> {
    require_bicm(g)?;
    let dual = SquarefreeIdeal::edge_ideal(g)?.alexander_dual()?;
    let rt = first_relation_tree(&dual)?;
    model_from_relation_tree(g, &rt)
}

/// The model attached to a given relation tree of `I_G^∨`, verified by
/// specializing `I_{G_T}` back to `I_G`.
pub fn model_from_relation_tree(g: &Graph, rt: &RelationTree) -> Result<InseparableModel> {
    let generic = generic_graph(&rt.tree)?;
    let mut substitution = vec![0usize; generic.pairs.len()];
    for r in rt.matrix.rows() {
        let lookup = |p: (usize, usize)| generic.pairs.binary_search(&p).expect("tree edge pair");
        substitution[lookup((r.col_a, r.col_b))] = r.var_a;
        substitution[lookup((r.col_b, r.col_a))] = r.var_b;
    }
    let model = InseparableModel {
        tree: rt.tree.clone(),
        relation: rt.matrix.clone(),
        generic,
        substitution,
    };
    let target = VariableUniverse::indexed(g.n())?;
    let map: Vec<usize> = model.substitution.iter().map(|&v| v - 1).collect();
    let image = model
        .generic
        .edge_ideal()?
        .substitute(&target, &map)
        .map_err(|e| Error::Inconsistent(format!("model does not specialize: {e}")))?;
    if image != SquarefreeIdeal::edge_ideal(g)? {
        return Err(Error::Inconsistent(format!(
            "I_(G_T) specializes to {} instead of I_G",
            image.to_text()
        )));
    }
    Ok(model)
}

/// Applies the model's substitution to `J_T` and compares with `I_G^∨`.
pub fn dual_specialization_check(g: &Graph) -> Result<bool> {
    let model = inseparable_model(g)?;
    let target = VariableUniverse::indexed(g.n())?;
    let map: Vec<usize> = model.substitution.iter().map(|&v| v - 1).collect();
    let image = match generic_ideal(&model.tree)?.substitute(&target, &map) {
        Ok(i) => i,
        Err(_) => return Ok(false),
    };
    Ok(image == SquarefreeIdeal::edge_ideal(g)?.alexander_dual()?)
}

/// Variables that occur more than once among the entries of a relation
/// matrix.
pub fn repeated_variables(matrix: &RelationMatrix) -> Vec<usize> {
    let mut seen = 0u64;
    let mut twice = 0u64;
    for r in matrix.rows() {
        for v in [r.var_a, r.var_b] {
            twice |= seen & bit(v - 1);
            seen |= bit(v - 1);
        }
    }
    bits(twice).map(|v| v + 1).collect()
}
