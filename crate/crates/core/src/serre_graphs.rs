//! Graphs with edge inversion, their edge boundary map, and rough Cayley
//! graphs of a group relative to a compact open subgroup.
//!
//! A graph has vertices `0..n` and edges `0..m`; every edge `e` has an
//! origin `o(e)`, a terminus `t(e)` and a reverse `ē` with `ē ≠ e`,
//! `ē̄ = e`, `o(ē) = t(e)`. The positive orientation `E⁺` keeps the edge
//! with the smaller id of each pair.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::group::{Element, FiniteGroup};
use crate::ratlin::{rank, rat, RationalMatrix};

pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {edge} references vertex {vertex}, but there are {num_vertices} vertices")]
    VertexOutOfRange { edge: EdgeId, vertex: usize, num_vertices: usize },
    #[error("edge {edge} has reverse {bar}, which is not an edge")]
    BarOutOfRange { edge: EdgeId, bar: EdgeId },
    #[error("edge {0} is its own reverse")]
    FixedEdge(EdgeId),
    #[error("reversal is not an involution at edge {0}")]
    NotInvolution(EdgeId),
    #[error("edge {0}: the terminus of the reverse edge differs from the origin")]
    EndpointMismatch(EdgeId),
    #[error("generating set is not closed under inverses")]
    NotSymmetric,
    #[error("generator at position {0} lies in the compact open subgroup")]
    GeneratorInO(usize),
}

/// A finite graph with origin, terminus and fixed-point-free edge reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreGraph {
    num_vertices: usize,
    origin: Vec<usize>,
    terminus: Vec<usize>,
    bar: Vec<EdgeId>,
}

/// Numerical invariants read off the edge boundary map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphInvariants {
    /// `dim ker ∂`, the cycle rank.
    pub h1_dim: usize,
    /// `dim coker ∂`.
    pub components: usize,
    pub is_tree: bool,
}

impl SerreGraph {
    /// `edges[e] = (o(e), t(e), ē)`.
    pub fn new(num_vertices: usize, edges: &[(usize, usize, EdgeId)]) -> Result<Self, GraphError> {
        let m = edges.len();
        for (e, &(o, t, b)) in edges.iter().enumerate() {
            for vertex in [o, t] {
                if vertex >= num_vertices {
                    return Err(GraphError::VertexOutOfRange { edge: e, vertex, num_vertices });
                }
            }
            if b >= m {
                return Err(GraphError::BarOutOfRange { edge: e, bar: b });
            }
            if b == e {
                return Err(GraphError::FixedEdge(e));
            }
            if edges[b].2 != e {
                return Err(GraphError::NotInvolution(e));
            }
            if edges[b].1 != o || edges[b].0 != t {
                return Err(GraphError::EndpointMismatch(e));
            }
        }
        Ok(Self {
            num_vertices,
            origin: edges.iter().map(|x| x.0).collect(),
            terminus: edges.iter().map(|x| x.1).collect(),
            bar: edges.iter().map(|x| x.2).collect(),
        })
    }

    /// Geometric edge `k = (a, b)` becomes edge `2k: a → b` and `2k + 1: b → a`.
    pub fn from_geometric_edges(num_vertices: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .flat_map(|(k, &(a, b))| [(a, b, 2 * k + 1), (b, a, 2 * k)])
            .collect();
        Self::new(num_vertices, &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self, e: EdgeId) -> usize {
        self.origin[e]
    }

    pub fn terminus(&self, e: EdgeId) -> usize {
        self.terminus[e]
    }

    pub fn bar(&self, e: EdgeId) -> EdgeId {
        self.bar[e]
    }

    /// `(o(e), t(e), ē)` for every edge, as accepted by [`Self::new`].
    pub fn edge_triples(&self) -> Vec<(usize, usize, EdgeId)> {
        (0..self.num_edges())
            .map(|e| (self.origin[e], self.terminus[e], self.bar[e]))
            .collect()
    }

    /// `E⁺`: the smaller id of each reversal pair, increasing.
    pub fn positive_edges(&self) -> Vec<EdgeId> {
        (0..self.num_edges()).filter(|&e| e < self.bar[e]).collect()
    }

    /// Edges with origin `v`, increasing.
    pub fn out_edges(&self, v: usize) -> Vec<EdgeId> {
        (0..self.num_edges()).filter(|&e| self.origin[e] == v).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.origin.iter().filter(|&&o| o == v).count()
    }

    /// No two edges share the same `(o, t)` pair.
    pub fn is_combinatorial(&self) -> bool {
        let mut seen = BTreeSet::new();
        (0..self.num_edges()).all(|e| seen.insert((self.origin[e], self.terminus[e])))
    }

    /// Matrix of `∂(e̲) = t(e) − o(e)` from `Q[E̲]` (basis `E⁺`) to `Q[V]`.
    pub fn edge_boundary(&self) -> RationalMatrix {
        let mut triples = Vec::new();
        for (col, e) in self.positive_edges().into_iter().enumerate() {
            triples.push((self.terminus[e], col, rat(1)));
            triples.push((self.origin[e], col, rat(-1)));
        }
        let cols = self.num_edges() / 2;
        RationalMatrix::from_triples(self.num_vertices, cols, triples).expect("indices in range")
    }

    pub fn invariants(&self) -> GraphInvariants {
        graph_invariants(self)
    }

    /// Connected component label of each vertex, numbered by first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.num_vertices];
        let mut next = 0;
        for start in 0..self.num_vertices {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue: VecDeque<usize> = [start].into_iter().collect();
            while let Some(v) = queue.pop_front() {
                for e in self.out_edges(v) {
                    let w = self.terminus[e];
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }
}

pub fn edge_boundary(graph: &SerreGraph) -> RationalMatrix {
    graph.edge_boundary()
}

/// Cycle rank, component count and the tree criterion, from the rank of ∂.
pub fn graph_invariants(graph: &SerreGraph) -> GraphInvariants {
    let r = rank(&graph.edge_boundary());
    let h1_dim = graph.num_edges() / 2 - r;
    let components = graph.num_vertices() - r;
    GraphInvariants {
        h1_dim,
        components,
        is_tree: h1_dim == 0 && components == 1,
    }
}

/// A group `G` with a distinguished compact open subgroup `O`, accessed
/// through canonical forms.
pub trait GroupOracle {
    type Elem: Clone + Ord + Debug;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem;
    fn inverse(&self, g: &Self::Elem) -> Self::Elem;
    /// Canonical representative of `gO`; constant on cosets and idempotent.
    fn coset_canon(&self, g: &Self::Elem) -> Self::Elem;
    fn in_o(&self, g: &Self::Elem) -> bool;
    /// The elements of `O` (finite: `G` is discrete at this scale).
    fn subgroup_elements(&self) -> Vec<Self::Elem>;
}

/// An oracle whose group is finite and can be enumerated.
pub trait FiniteGroupOracle: GroupOracle {
    fn elements(&self) -> Vec<Self::Elem>;
}

/// `Z` with `O = {0}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegerOracle;

impl GroupOracle for IntegerOracle {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn multiply(&self, g: &i64, h: &i64) -> i64 {
        g + h
    }

    fn inverse(&self, g: &i64) -> i64 {
        -g
    }

    fn coset_canon(&self, g: &i64) -> i64 {
        *g
    }

    fn in_o(&self, g: &i64) -> bool {
        *g == 0
    }

    fn subgroup_elements(&self) -> Vec<i64> {
        vec![0]
    }
}

/// A finite group given by its table, with `O` a subgroup; the canonical
/// coset representative is the least element of `gO`.
#[derive(Clone, Debug)]
pub struct TableOracle {
    group: FiniteGroup,
    subgroup: Vec<Element>,
    in_subgroup: Vec<bool>,
}

impl TableOracle {
    /// `O = ⟨subgroup_gens⟩`.
    pub fn new(group: FiniteGroup, subgroup_gens: &[Element]) -> Self {
        let subgroup = group.generated_subgroup(subgroup_gens);
        let mut in_subgroup = vec![false; group.order()];
        for &h in &subgroup {
            in_subgroup[h] = true;
        }
        Self { group, subgroup, in_subgroup }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}

impl GroupOracle for TableOracle {
    type Elem = Element;

    fn identity(&self) -> Element {
        self.group.identity()
    }

    fn multiply(&self, g: &Element, h: &Element) -> Element {
        self.group.mul(*g, *h)
    }

    fn inverse(&self, g: &Element) -> Element {
        self.group.inv(*g)
    }

    fn coset_canon(&self, g: &Element) -> Element {
        self.subgroup
            .iter()
            .map(|&h| self.group.mul(*g, h))
            .min()
            .expect("subgroup contains the identity")
    }

    fn in_o(&self, g: &Element) -> bool {
        self.in_subgroup[*g]
    }

    fn subgroup_elements(&self) -> Vec<Element> {
        self.subgroup.clone()
    }
}

impl FiniteGroupOracle for TableOracle {
    fn elements(&self) -> Vec<Element> {
        self.group.elements().collect()
    }
}

/// A ball in `Γ(G, S, O)` around the base coset `O`.
#[derive(Clone, Debug)]
pub struct RoughCayleyBall<E> {
    /// Induced subgraph on the ball; vertex `i` is the coset `cosets[i] O`.
    pub graph: SerreGraph,
    pub cosets: Vec<E>,
    /// Graph distance from the base coset.
    pub distance: Vec<usize>,
}

fn check_generators<O: GroupOracle>(oracle: &O, gens: &[O::Elem]) -> Result<(), GraphError> {
    if let Some(pos) = gens.iter().position(|s| oracle.in_o(s)) {
        return Err(GraphError::GeneratorInO(pos));
    }
    let set: BTreeSet<&O::Elem> = gens.iter().collect();
    if gens.iter().any(|s| !set.contains(&oracle.inverse(s))) {
        return Err(GraphError::NotSymmetric);
    }
    Ok(())
}

/// Canonical representatives of the neighbours `gωsO` of `gO`.
fn coset_neighbours<O: GroupOracle>(
    oracle: &O,
    omega: &[O::Elem],
    g: &O::Elem,
    gens: &[O::Elem],
) -> BTreeSet<O::Elem> {
    let mut out = BTreeSet::new();
    for w in omega {
        let gw = oracle.multiply(g, w);
        for s in gens {
            out.insert(oracle.coset_canon(&oracle.multiply(&gw, s)));
        }
    }
    out
}

/// Breadth-first ball of the given radius in the rough Cayley graph, with
/// edges `(gO, gsO)` deduplicated as vertex pairs (the graph is combinatorial).
pub fn rough_cayley_ball<O: GroupOracle>(
    oracle: &O,
    gens: &[O::Elem],
    radius: usize,
) -> Result<RoughCayleyBall<O::Elem>, GraphError> {
    check_generators(oracle, gens)?;
    let omega = oracle.subgroup_elements();
    let base = oracle.coset_canon(&oracle.identity());
    let mut index: BTreeMap<O::Elem, usize> = BTreeMap::new();
    index.insert(base.clone(), 0);
    let mut cosets = vec![base];
    let mut distance = vec![0usize];
    let mut neighbours: Vec<BTreeSet<O::Elem>> = Vec::new();
    let mut next = 0;
    while next < cosets.len() {
        let nbrs = coset_neighbours(oracle, &omega, &cosets[next], gens);
        if distance[next] < radius {
            for c in &nbrs {
                if !index.contains_key(c) {
                    index.insert(c.clone(), cosets.len());
                    cosets.push(c.clone());
                    distance.push(distance[next] + 1);
                }
            }
        }
        neighbours.push(nbrs);
        next += 1;
    }
    let mut pairs = BTreeSet::new();
    for (u, nbrs) in neighbours.iter().enumerate() {
        for c in nbrs {
            if let Some(&v) = index.get(c) {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    let graph = SerreGraph::from_geometric_edges(cosets.len(), &pairs).expect("ball edges are well formed");
    Ok(RoughCayleyBall { graph, cosets, distance })
}

/// `Σ_{s ∈ S} |OsO / O|`, an upper bound for every vertex degree.
pub fn local_degree_bound<O: GroupOracle>(oracle: &O, gens: &[O::Elem]) -> usize {
    let omega = oracle.subgroup_elements();
    gens.iter()
        .map(|s| {
            omega
                .iter()
                .map(|w| oracle.coset_canon(&oracle.multiply(w, s)))
                .collect::<BTreeSet<_>>()
                .len()
        })
        .sum()
}

/// The whole rough Cayley graph of a finite group: the connected component
/// of the base coset, together with all remaining cosets.
pub fn full_rough_cayley_graph<O: FiniteGroupOracle>(
    oracle: &O,
    gens: &[O::Elem],
) -> Result<RoughCayleyBall<O::Elem>, GraphError> {
    check_generators(oracle, gens)?;
    let omega = oracle.subgroup_elements();
    let all: BTreeSet<O::Elem> = oracle.elements().iter().map(|g| oracle.coset_canon(g)).collect();
    let base = oracle.coset_canon(&oracle.identity());
    // Base coset first, then the rest in canonical order.
    let mut cosets = vec![base.clone()];
    cosets.extend(all.into_iter().filter(|c| *c != base));
    let index: BTreeMap<O::Elem, usize> = cosets.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut pairs = BTreeSet::new();
    for (u, c) in cosets.iter().enumerate() {
        for n in coset_neighbours(oracle, &omega, c, gens) {
            let v = index[&n];
            pairs.insert((u.min(v), u.max(v)));
        }
    }
    let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    let graph = SerreGraph::from_geometric_edges(cosets.len(), &pairs).expect("edges are well formed");
    let mut distance = vec![usize::MAX; cosets.len()];
    distance[0] = 0;
    let mut queue: VecDeque<usize> = [0].into_iter().collect();
    while let Some(v) = queue.pop_front() {
        for e in graph.out_edges(v) {
            let w = graph.terminus(e);
            if distance[w] == usize::MAX {
                distance[w] = distance[v] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(RoughCayleyBall { graph, cosets, distance })
}

/// Both sides of the compact generation criterion for a finite group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationWitness {
    pub connected: bool,
    pub generates: bool,
}

pub fn generation_witness<O: FiniteGroupOracle>(
    oracle: &O,
    gens: &[O::Elem],
) -> Result<GenerationWitness, GraphError> {
    let full = full_rough_cayley_graph(oracle, gens)?;
    let connected = graph_invariants(&full.graph).components == 1;
    let mut span: BTreeSet<O::Elem> = BTreeSet::new();
    span.insert(oracle.identity());
    let mut frontier = vec![oracle.identity()];
    let step: Vec<O::Elem> = oracle.subgroup_elements().into_iter().chain(gens.iter().cloned()).collect();
    while let Some(g) = frontier.pop() {
        for s in &step {
            let h = oracle.multiply(&g, s);
            if span.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    let generates = span.len() == oracle.elements().len();
    Ok(GenerationWitness { connected, generates })
}

/// Whether `Γ(G, S, O)` is connected exactly when `⟨O, S⟩ = G`.
pub fn connectivity_equals_generation<O: FiniteGroupOracle>(
    oracle: &O,
    gens: &[O::Elem],
) -> Result<bool, GraphError> {
    let w = generation_witness(oracle, gens)?;
    Ok(w.connected == w.generates)
}
