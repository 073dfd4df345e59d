//! Finite graphs of finite groups and their fundamental groups.
//!
//! Conventions: every directed edge `e` carries an injective homomorphism
//! `ι_e : A_e → A_{t(e)}`, with `A_e = A_ē`. In the fundamental group
//! `e ι_e(a) e⁻¹ = ι_ē(a)` and `ē = e⁻¹`. A path word
//! `g_0 e_1 g_1 ⋯ e_n g_n` has `g_0 ∈ A_{start}` and `g_i ∈ A_{t(e_i)}`; its
//! normal form writes each `g_{i-1}` as `r · ι_{ē_i}(a)` with `r` in a fixed
//! transversal of `A_{o(e_i)} / ι_{ē_i}(A_{e_i})` and pushes `ι_{ē_i}(a)`
//! across `e_i`. The transversal picks the identity on the trivial coset and
//! the least element elsewhere.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::euler::{HaarValue, IndexTable, ResolutionDescription};
use crate::group::{Element, FiniteGroup, GroupError};
use crate::ratlin::{rank, Rational, RationalMatrix};
use crate::serre_graphs::{EdgeId, GraphError, SerreGraph};

/// Label of the trivial subgroup, the base of Euler characteristics of
/// discrete groups.
pub const TRIVIAL_BASE: &str = "1";

/// Default cap on the number of vertices of a Bass–Serre ball.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GogError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected {expected} {what}, got {got}")]
    Count { what: &'static str, expected: usize, got: usize },
    #[error("embedding along edge {0} is not a homomorphism")]
    NotHomomorphism(EdgeId),
    #[error("embedding along edge {0} is not injective")]
    NotInjective(EdgeId),
    #[error("embedding along edge {edge}: {source}")]
    BadImages { edge: EdgeId, source: GroupError },
    #[error("the underlying graph is disconnected")]
    Disconnected,
    #[error("the underlying graph has no vertices")]
    Empty,
    #[error("the fundamental group is not unimodular")]
    NotUnimodular,
    #[error("index along edge {0} must be positive")]
    ZeroIndex(EdgeId),
    #[error("word is not a path: {0}")]
    NotAPath(String),
    #[error("Bass–Serre ball exceeds {0} vertices")]
    BallTooLarge(usize),
    #[error("representation violates the relation {0}")]
    RelationViolated(String),
    #[error("matrix for {0} is not invertible")]
    NotInvertible(String),
    #[error("representation matrix for {what} has shape {rows}x{cols}, expected {dim}x{dim}")]
    BadMatrix { what: String, rows: usize, cols: usize, dim: usize },
}

/// Group data for one geometric edge, listed in `E⁺` order.
#[derive(Clone, Debug)]
pub struct EdgeGroupData {
    pub group: FiniteGroup,
    /// Images of the generators of `group` under `ι_e`, `e ∈ E⁺`.
    pub into_terminus: Vec<Element>,
    /// Images under `ι_ē`, landing in `A_{o(e)}`.
    pub into_origin: Vec<Element>,
}

/// A validated finite graph of finite groups.
#[derive(Clone, Debug)]
pub struct GraphOfFiniteGroups {
    graph: SerreGraph,
    vertex_groups: Vec<FiniteGroup>,
    edge_groups: Vec<FiniteGroup>,
    /// Directed edge → position of its geometric edge in `E⁺`.
    geometric: Vec<usize>,
    /// Directed edge `e` → full element map of `ι_e`.
    embeddings: Vec<Vec<Element>>,
}

impl GraphOfFiniteGroups {
    pub fn new(
        graph: SerreGraph,
        vertex_groups: Vec<FiniteGroup>,
        edges: Vec<EdgeGroupData>,
    ) -> Result<Self, GogError> {
        if graph.num_vertices() == 0 {
            return Err(GogError::Empty);
        }
        if vertex_groups.len() != graph.num_vertices() {
            return Err(GogError::Count {
                what: "vertex groups",
                expected: graph.num_vertices(),
                got: vertex_groups.len(),
            });
        }
        let positive = graph.positive_edges();
        if edges.len() != positive.len() {
            return Err(GogError::Count {
                what: "edge groups",
                expected: positive.len(),
                got: edges.len(),
            });
        }
        let mut geometric = vec![0; graph.num_edges()];
        let mut embeddings = vec![Vec::new(); graph.num_edges()];
        for (k, (&e, data)) in positive.iter().zip(&edges).enumerate() {
            let eb = graph.bar(e);
            geometric[e] = k;
            geometric[eb] = k;
            for (edge, images) in [(e, &data.into_terminus), (eb, &data.into_origin)] {
                let target = &vertex_groups[graph.terminus(edge)];
                let map = data
                    .group
                    .extend_homomorphism(target, images)
                    .map_err(|err| match err {
                        GroupError::NotHomomorphism => GogError::NotHomomorphism(edge),
                        source => GogError::BadImages { edge, source },
                    })?;
                let mut seen = vec![false; target.order()];
                for &x in &map {
                    if core::mem::replace(&mut seen[x], true) {
                        return Err(GogError::NotInjective(edge));
                    }
                }
                embeddings[edge] = map;
            }
        }
        if graph.invariants().components != 1 {
            return Err(GogError::Disconnected);
        }
        Ok(Self {
            graph,
            vertex_groups,
            edge_groups: edges.into_iter().map(|d| d.group).collect(),
            geometric,
            embeddings,
        })
    }

    pub fn graph(&self) -> &SerreGraph {
        &self.graph
    }

    pub fn vertex_group(&self, v: usize) -> &FiniteGroup {
        &self.vertex_groups[v]
    }

    /// `A_e` for a directed edge `e`.
    pub fn edge_group(&self, e: EdgeId) -> &FiniteGroup {
        &self.edge_groups[self.geometric[e]]
    }

    /// `ι_e` as a full element map `A_e → A_{t(e)}`.
    pub fn embedding(&self, e: EdgeId) -> &[Element] {
        &self.embeddings[e]
    }

    /// `|A_{t(e)} : ι_e(A_e)|` for every directed edge.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.graph.num_edges())
            .map(|e| self.vertex_groups[self.graph.terminus(e)].order() / self.edge_group(e).order())
            .collect()
    }

    /// The same graph with only the index data retained.
    pub fn indexed_graph(&self) -> IndexedGraph {
        IndexedGraph::new(self.graph.clone(), self.indices().into_iter().map(BigInt::from).collect())
            .expect("indices of a valid graph of groups are positive and the graph is connected")
    }

    pub fn unimodularity_check(&self) -> bool {
        self.indexed_graph().is_unimodular()
    }

    /// `(Σ_v 1/|A_v| − Σ_{E⁺} 1/|A_e|) · μ_{1}`.
    pub fn euler_characteristic(&self) -> Result<HaarValue, GogError> {
        if !self.unimodularity_check() {
            return Err(GogError::NotUnimodular);
        }
        let mut c = Rational::zero();
        for g in &self.vertex_groups {
            c += Rational::new(1.into(), g.order().into());
        }
        for g in &self.edge_groups {
            c -= Rational::new(1.into(), g.order().into());
        }
        Ok(HaarValue::new(c, TRIVIAL_BASE))
    }

    /// The permutation resolution of `Q` coming from the action on the
    /// Bass–Serre tree: vertex stabilizers in degree 0, edge stabilizers in
    /// degree 1, with volumes relative to the trivial subgroup.
    pub fn bass_serre_resolution(&self) -> ResolutionDescription {
        let mut table = IndexTable::with_base(TRIVIAL_BASE);
        let vertex_labels: Vec<String> = (0..self.vertex_groups.len()).map(|v| format!("A_v{v}")).collect();
        let edge_labels: Vec<String> = self.graph.positive_edges().iter().map(|e| format!("A_e{e}")).collect();
        for (label, g) in vertex_labels.iter().zip(&self.vertex_groups) {
            table
                .insert_index(TRIVIAL_BASE, label, &BigInt::from(g.order()))
                .expect("base is known");
        }
        for (label, g) in edge_labels.iter().zip(&self.edge_groups) {
            table
                .insert_index(TRIVIAL_BASE, label, &BigInt::from(g.order()))
                .expect("base is known");
        }
        ResolutionDescription {
            base: TRIVIAL_BASE.into(),
            degrees: vec![vertex_labels, edge_labels],
            table,
        }
    }

    /// A maximal subtree, as the set of directed edges (both orientations)
    /// found by breadth-first search from vertex 0 in edge-id order.
    pub fn maximal_tree(&self) -> Vec<bool> {
        let mut in_tree = vec![false; self.graph.num_edges()];
        let mut seen = vec![false; self.graph.num_vertices()];
        seen[0] = true;
        let mut queue: VecDeque<usize> = [0].into_iter().collect();
        while let Some(v) = queue.pop_front() {
            for e in self.graph.out_edges(v) {
                let w = self.graph.terminus(e);
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    in_tree[self.graph.bar(e)] = true;
                    queue.push_back(w);
                }
            }
        }
        in_tree
    }

    pub fn fundamental_group(&self, base: usize) -> FundamentalGroup<'_> {
        FundamentalGroup::new(self, base)
    }
}

/// A graph of profinite groups recorded only through the indices
/// `|A_{t(e)} : ι_e(A_e)|`, which is all that unimodularity and the Euler
/// characteristic depend on.
#[derive(Clone, Debug)]
pub struct IndexedGraph {
    graph: SerreGraph,
    index: Vec<BigInt>,
}

impl IndexedGraph {
    pub fn new(graph: SerreGraph, index: Vec<BigInt>) -> Result<Self, GogError> {
        if graph.num_vertices() == 0 {
            return Err(GogError::Empty);
        }
        if index.len() != graph.num_edges() {
            return Err(GogError::Count {
                what: "edge indices",
                expected: graph.num_edges(),
                got: index.len(),
            });
        }
        if let Some(e) = index.iter().position(|i| *i <= BigInt::zero()) {
            return Err(GogError::ZeroIndex(e));
        }
        if graph.invariants().components != 1 {
            return Err(GogError::Disconnected);
        }
        Ok(Self { graph, index })
    }

    pub fn graph(&self) -> &SerreGraph {
        &self.graph
    }

    pub fn index(&self, e: EdgeId) -> &BigInt {
        &self.index[e]
    }

    /// Vertex-group volumes with `vol(A_0) = 1`, if they exist.
    ///
    /// `vol(A_e) = vol(A_{t(e)}) / |A_{t(e)} : ι_e(A_e)|` must be the same
    /// from both ends; this is solvable exactly when the modular function
    /// is trivial on every cycle.
    pub fn vertex_volumes(&self) -> Option<Vec<Rational>> {
        let g = &self.graph;
        let mut vol: Vec<Option<Rational>> = vec![None; g.num_vertices()];
        vol[0] = Some(Rational::from_integer(1.into()));
        let mut queue: VecDeque<usize> = [0].into_iter().collect();
        while let Some(v) = queue.pop_front() {
            let vv = vol[v].clone().expect("queued vertices have volumes");
            for e in g.out_edges(v) {
                let w = g.terminus(e);
                // vol(A_w) / idx(e) = vol(A_v) / idx(ē)
                let want = vv.clone() * Rational::from_integer(self.index[e].clone())
                    / Rational::from_integer(self.index[g.bar(e)].clone());
                match &vol[w] {
                    None => {
                        vol[w] = Some(want);
                        queue.push_back(w);
                    }
                    Some(have) if *have != want => return None,
                    Some(_) => {}
                }
            }
        }
        vol.into_iter().collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.vertex_volumes().is_some()
    }

    /// `Σ_v μ_{A_v} − Σ_{E⁺} μ_{A_e}` over `μ_{A_e}` for the first positive
    /// edge (labelled `base_label`), or over `μ_{A_0}` if there are no edges.
    pub fn euler_characteristic(&self, base_label: &str) -> Result<HaarValue, GogError> {
        let vol = self.vertex_volumes().ok_or(GogError::NotUnimodular)?;
        let g = &self.graph;
        let edge_vol = |e: EdgeId| vol[g.terminus(e)].clone() / Rational::from_integer(self.index[e].clone());
        let positive = g.positive_edges();
        let base_vol = positive.first().map_or_else(|| vol[0].clone(), |&e| edge_vol(e));
        // c·μ_U = c · vol(base)/vol(U) · μ_base
        let mut c = Rational::zero();
        for v in &vol {
            c += base_vol.clone() / v;
        }
        for &e in &positive {
            c -= base_vol.clone() / edge_vol(e);
        }
        Ok(HaarValue::new(c, base_label))
    }
}

/// `χ(Aut(T_{d+1})°)` over `μ_{G_e}`: the group is the amalgam of two vertex
/// stabilizers over an edge stabilizer, each of index `d + 1`.
pub fn aut_tree_chi(d: u64) -> HaarValue {
    assert!(d >= 1, "tree valency d + 1 needs d >= 1");
    let graph = SerreGraph::from_geometric_edges(2, &[(0, 1)]).expect("one edge");
    let idx = BigInt::from(d + 1);
    IndexedGraph::new(graph, vec![idx.clone(), idx])
        .and_then(|g| g.euler_characteristic("G_e"))
        .expect("a tree is unimodular")
}

/// `g_0 e_1 g_1 ⋯ e_n g_n`, stored as `steps = [(g_0, e_1), …, (g_{n-1}, e_n)]`
/// and `tail = g_n`. Closed words at the base vertex are elements of `π₁`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiWord {
    pub start: usize,
    pub steps: Vec<(Element, EdgeId)>,
    pub tail: Element,
}

impl PiWord {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Word arithmetic in `π₁(A, Λ, v₀)` through path-word normal forms.
#[derive(Clone, Debug)]
pub struct FundamentalGroup<'a> {
    gog: &'a GraphOfFiniteGroups,
    base: usize,
    /// `split[e][g] = (r, a)` with `g = r · ι_ē(a)` in `A_{o(e)}`.
    split: Vec<Vec<(Element, Element)>>,
    /// `preimage[e][x] = a` if `x = ι_e(a)`.
    preimage: Vec<Vec<Option<Element>>>,
}

impl<'a> FundamentalGroup<'a> {
    fn new(gog: &'a GraphOfFiniteGroups, base: usize) -> Self {
        let g = &gog.graph;
        let preimage: Vec<Vec<Option<Element>>> = (0..g.num_edges())
            .map(|e| {
                let mut pre = vec![None; gog.vertex_groups[g.terminus(e)].order()];
                for (a, &x) in gog.embeddings[e].iter().enumerate() {
                    pre[x] = Some(a);
                }
                pre
            })
            .collect();
        let split = (0..g.num_edges())
            .map(|e| {
                let eb = g.bar(e);
                let av = &gog.vertex_groups[g.origin(e)];
                let image = &gog.embeddings[eb];
                av.elements()
                    .map(|x| {
                        let coset = image.iter().map(|&h| av.mul(x, h));
                        let r = if preimage[eb][x].is_some() {
                            av.identity()
                        } else {
                            coset.min().expect("nonempty coset")
                        };
                        let a = preimage[eb][av.mul(av.inv(r), x)].expect("r⁻¹x lies in the image");
                        (r, a)
                    })
                    .collect()
            })
            .collect();
        Self {
            gog,
            base,
            split,
            preimage,
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn identity(&self) -> PiWord {
        PiWord {
            start: self.base,
            steps: Vec::new(),
            tail: self.gog.vertex_groups[self.base].identity(),
        }
    }

    fn end_vertex(&self, w: &PiWord) -> usize {
        w.steps.last().map_or(w.start, |&(_, e)| self.gog.graph.terminus(e))
    }

    /// Checks that consecutive letters match up and groups are respected.
    pub fn check_path(&self, w: &PiWord) -> Result<(), GogError> {
        let g = &self.gog.graph;
        if w.start >= g.num_vertices() {
            return Err(GogError::NotAPath(format!("start vertex {} out of range", w.start)));
        }
        let mut at = w.start;
        for (i, &(x, e)) in w.steps.iter().enumerate() {
            if e >= g.num_edges() || g.origin(e) != at {
                return Err(GogError::NotAPath(format!("letter {i} does not start at vertex {at}")));
            }
            if x >= self.gog.vertex_groups[at].order() {
                return Err(GogError::NotAPath(format!("element {x} not in the group at vertex {at}")));
            }
            at = g.terminus(e);
        }
        if w.tail >= self.gog.vertex_groups[at].order() {
            return Err(GogError::NotAPath(format!("tail {} not in the group at vertex {at}", w.tail)));
        }
        Ok(())
    }

    /// Appends `e g` to a word already in normal form.
    fn push(&self, w: &mut PiWord, e: EdgeId, g: Element) {
        let gr = &self.gog.graph;
        if let Some(&(r_prev, e_prev)) = w.steps.last() {
            if e == gr.bar(e_prev) {
                if let Some(a) = self.preimage[e_prev][w.tail] {
                    // e_prev ι_{e_prev}(a) ē_prev = ι_{ē_prev}(a)
                    w.steps.pop();
                    let av = &self.gog.vertex_groups[gr.origin(e_prev)];
                    let folded = av.mul(r_prev, self.gog.embeddings[e][a]);
                    w.tail = av.mul(folded, g);
                    return;
                }
            }
        }
        let (r, a) = self.split[e][w.tail];
        let at = &self.gog.vertex_groups[gr.terminus(e)];
        w.steps.push((r, e));
        w.tail = at.mul(self.gog.embeddings[e][a], g);
    }

    /// Normal form of a path word.
    pub fn normalize(&self, w: &PiWord) -> Result<PiWord, GogError> {
        self.check_path(w)?;
        let Some((&(g0, _), _)) = w.steps.split_first() else {
            return Ok(w.clone());
        };
        let mut out = PiWord {
            start: w.start,
            steps: Vec::new(),
            tail: g0,
        };
        for (i, &(_, e)) in w.steps.iter().enumerate() {
            let g = w.steps.get(i + 1).map_or(w.tail, |s| s.0);
            self.push(&mut out, e, g);
        }
        Ok(out)
    }

    /// Product of a path ending at `v` with a path starting at `v`.
    pub fn mul(&self, x: &PiWord, y: &PiWord) -> Result<PiWord, GogError> {
        let x = self.normalize(x)?;
        self.check_path(y)?;
        let v = self.end_vertex(&x);
        if y.start != v {
            return Err(GogError::NotAPath(format!("cannot append a path at {} to one ending at {v}", y.start)));
        }
        let av = &self.gog.vertex_groups[v];
        let mut out = x;
        let Some((&(h0, _), _)) = y.steps.split_first() else {
            out.tail = av.mul(out.tail, y.tail);
            return Ok(out);
        };
        out.tail = av.mul(out.tail, h0);
        for (i, &(_, e)) in y.steps.iter().enumerate() {
            let g = y.steps.get(i + 1).map_or(y.tail, |s| s.0);
            self.push(&mut out, e, g);
        }
        Ok(out)
    }

    /// `(g_0 e_1 ⋯ e_n g_n)⁻¹ = g_n⁻¹ ē_n ⋯ ē_1 g_0⁻¹`, normalized.
    pub fn inverse(&self, w: &PiWord) -> Result<PiWord, GogError> {
        self.check_path(w)?;
        let g = &self.gog.graph;
        let groups = &self.gog.vertex_groups;
        let n = w.steps.len();
        if n == 0 {
            return Ok(PiWord {
                start: w.start,
                steps: Vec::new(),
                tail: groups[w.start].inv(w.tail),
            });
        }
        let elem = |i: usize| if i == n { w.tail } else { w.steps[i].0 };
        let edge = |i: usize| w.steps[i - 1].1;
        let end = g.terminus(edge(n));
        let mut steps = Vec::with_capacity(n);
        for i in (1..=n).rev() {
            let vertex = g.terminus(edge(i));
            steps.push((groups[vertex].inv(elem(i)), g.bar(edge(i))));
        }
        let raw = PiWord {
            start: end,
            steps,
            tail: groups[w.start].inv(elem(0)),
        };
        self.normalize(&raw)
    }

    pub fn is_identity(&self, w: &PiWord) -> Result<bool, GogError> {
        let n = self.normalize(w)?;
        Ok(n.steps.is_empty() && n.tail == self.gog.vertex_groups[n.start].identity())
    }

    /// Ball of the given radius around the base vertex of the Bass–Serre
    /// tree. Vertex `i` is the coset `words[i] · A_{vertex[i]}`.
    pub fn bass_serre_ball(&self, radius: usize) -> Result<BassSerreBall, GogError> {
        self.bass_serre_ball_capped(radius, DEFAULT_BALL_CAP)
    }

    pub fn bass_serre_ball_capped(&self, radius: usize, cap: usize) -> Result<BassSerreBall, GogError> {
        let gog = self.gog;
        let g = &gog.graph;
        // For each directed edge, the transversal of A_{o(e)} / ι_ē(A_e).
        let reps: Vec<Vec<Element>> = (0..g.num_edges())
            .map(|e| {
                let mut r: Vec<Element> = self.split[e].iter().map(|&(r, _)| r).collect();
                r.sort_unstable();
                r.dedup();
                // Identity first so the trivial coset is child 0.
                let id = gog.vertex_groups[g.origin(e)].identity();
                r.retain(|&x| x != id);
                r.insert(0, id);
                r
            })
            .collect();
        let mut words: Vec<Vec<(Element, EdgeId)>> = vec![Vec::new()];
        let mut vertex = vec![self.base];
        let mut depth = vec![0usize];
        let mut pairs = Vec::new();
        let mut next = 0;
        while next < words.len() {
            if depth[next] < radius {
                let w = vertex[next];
                let last = words[next].last().map(|&(_, e)| e);
                for e in g.out_edges(w) {
                    for &r in &reps[e] {
                        let backtrack = last == Some(g.bar(e)) && r == gog.vertex_groups[w].identity();
                        if backtrack {
                            continue;
                        }
                        if words.len() >= cap {
                            return Err(GogError::BallTooLarge(cap));
                        }
                        let mut child = words[next].clone();
                        child.push((r, e));
                        pairs.push((next, words.len()));
                        words.push(child);
                        vertex.push(g.terminus(e));
                        depth.push(depth[next] + 1);
                    }
                }
            }
            next += 1;
        }
        let graph = SerreGraph::from_geometric_edges(words.len(), &pairs)?;
        Ok(BassSerreBall {
            graph,
            words,
            vertex,
            depth,
        })
    }
}

/// A ball in the Bass–Serre tree.
#[derive(Clone, Debug)]
pub struct BassSerreBall {
    pub graph: SerreGraph,
    /// Reduced word leading to each tree vertex.
    pub words: Vec<Vec<(Element, EdgeId)>>,
    /// Vertex of `Λ` each tree vertex lies over.
    pub vertex: Vec<usize>,
    pub depth: Vec<usize>,
}

/// `Σ_{e : o(e) = v} |A_v : ι_ē(A_e)|`, the valency of tree vertices over `v`.
pub fn tree_degree(gog: &GraphOfFiniteGroups, v: usize) -> usize {
    let g = gog.graph();
    g.out_edges(v)
        .into_iter()
        .map(|e| gog.vertex_group(v).order() / gog.edge_group(e).order())
        .sum()
}

/// A finite-dimensional rational representation of `π₁(A, Λ, Ξ)`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub dim: usize,
    /// Per vertex, matrices for the generators of `A_v`.
    pub vertex_generators: Vec<Vec<RationalMatrix>>,
    /// Per `E⁺` edge, the matrix of its letter; tree edges must be the identity.
    pub edge_letters: Vec<RationalMatrix>,
}

/// A validated representation with every group element's matrix.
#[derive(Clone, Debug)]
pub struct CheckedRepresentation {
    dim: usize,
    vertex_elements: Vec<Vec<RationalMatrix>>,
    /// Indexed by directed edge; `ρ(ē) = ρ(e)⁻¹`.
    letters: Vec<RationalMatrix>,
}

impl CheckedRepresentation {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_element(&self, v: usize, g: Element) -> &RationalMatrix {
        &self.vertex_elements[v][g]
    }

    pub fn letter(&self, e: EdgeId) -> &RationalMatrix {
        &self.letters[e]
    }
}

fn check_shape(m: &RationalMatrix, dim: usize, what: impl FnOnce() -> String) -> Result<(), GogError> {
    if m.rows() != dim || m.cols() != dim {
        return Err(GogError::BadMatrix {
            what: what(),
            rows: m.rows(),
            cols: m.cols(),
            dim,
        });
    }
    Ok(())
}

impl GraphOfFiniteGroups {
    /// Checks the defining relations of `π₁(A, Λ, Ξ)` on `rep`: each `A_v`
    /// acts through a homomorphism, tree letters act trivially, and
    /// `ρ(e) ρ(ι_e(a)) ρ(e)⁻¹ = ρ(ι_ē(a))` for the generators `a` of `A_e`.
    pub fn check_representation(&self, rep: &Representation) -> Result<CheckedRepresentation, GogError> {
        let g = &self.graph;
        let dim = rep.dim;
        if rep.vertex_generators.len() != g.num_vertices() {
            return Err(GogError::Count {
                what: "vertex generator lists",
                expected: g.num_vertices(),
                got: rep.vertex_generators.len(),
            });
        }
        let positive = g.positive_edges();
        if rep.edge_letters.len() != positive.len() {
            return Err(GogError::Count {
                what: "edge letters",
                expected: positive.len(),
                got: rep.edge_letters.len(),
            });
        }
        let identity = RationalMatrix::identity(dim);
        let mut vertex_elements = Vec::with_capacity(g.num_vertices());
        for (v, mats) in rep.vertex_generators.iter().enumerate() {
            let av = &self.vertex_groups[v];
            if mats.len() != av.generators().len() {
                return Err(GogError::Count {
                    what: "generator matrices",
                    expected: av.generators().len(),
                    got: mats.len(),
                });
            }
            for (i, m) in mats.iter().enumerate() {
                check_shape(m, dim, || format!("generator {i} at vertex {v}"))?;
                if m.inverse().is_none() {
                    return Err(GogError::NotInvertible(format!("generator {i} at vertex {v}")));
                }
            }
            let mut image: Vec<Option<RationalMatrix>> = vec![None; av.order()];
            image[av.identity()] = Some(identity.clone());
            let mut queue: VecDeque<Element> = [av.identity()].into_iter().collect();
            while let Some(x) = queue.pop_front() {
                let mx = image[x].clone().expect("queued elements are mapped");
                for (&s, ms) in av.generators().iter().zip(mats) {
                    let y = av.mul(x, s);
                    let my = mx.mul(ms).expect("square matrices");
                    match &image[y] {
                        None => {
                            image[y] = Some(my);
                            queue.push_back(y);
                        }
                        Some(have) if *have != my => {
                            return Err(GogError::RelationViolated(format!(
                                "multiplication table of the group at vertex {v}"
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
            vertex_elements.push(image.into_iter().map(|m| m.expect("generators span")).collect::<Vec<_>>());
        }
        let tree = self.maximal_tree();
        let mut letters = vec![identity.clone(); g.num_edges()];
        for (&e, m) in positive.iter().zip(&rep.edge_letters) {
            check_shape(m, dim, || format!("letter of edge {e}"))?;
            let inv = m
                .inverse()
                .ok_or_else(|| GogError::NotInvertible(format!("letter of edge {e}")))?;
            if tree[e] && *m != identity {
                return Err(GogError::RelationViolated(format!("edge {e} lies in the maximal tree, so it acts trivially")));
            }
            letters[e] = m.clone();
            letters[g.bar(e)] = inv;
        }
        for &e in &positive {
            let eb = g.bar(e);
            let ae = self.edge_group(e);
            for &a in ae.generators() {
                let inner = &vertex_elements[g.terminus(e)][self.embeddings[e][a]];
                let outer = &vertex_elements[g.origin(e)][self.embeddings[eb][a]];
                let conj = letters[e]
                    .mul(inner)
                    .and_then(|x| x.mul(&letters[eb]))
                    .expect("square matrices");
                if conj != *outer {
                    return Err(GogError::RelationViolated(format!(
                        "e ι_e(a) e⁻¹ = ι_ē(a) for edge {e} and generator {a}"
                    )));
                }
            }
        }
        Ok(CheckedRepresentation {
            dim,
            vertex_elements,
            letters,
        })
    }

    /// `(dim dH⁰, dim dH¹)` of `π₁` with coefficients in `rep`, from the
    /// action on the Bass–Serre tree:
    /// `⊕_v M^{A_v} → ⊕_{e ∈ E⁺} M^{ι_ē(A_e)}`, `m ↦ ρ(e) m_{t(e)} − m_{o(e)}`.
    pub fn tree_action_cohomology(&self, rep: &Representation) -> Result<(usize, usize), GogError> {
        let checked = self.check_representation(rep)?;
        let g = &self.graph;
        let dim = checked.dim;
        let identity = RationalMatrix::identity(dim);
        let fixed_basis = |mats: Vec<&RationalMatrix>| -> Vec<Vec<Rational>> {
            if mats.is_empty() {
                return (0..dim)
                    .map(|i| (0..dim).map(|j| Rational::from_integer(BigInt::from(u8::from(i == j)))).collect())
                    .collect();
            }
            let blocks: Vec<RationalMatrix> = mats.iter().map(|m| m.sub(&identity).expect("square")).collect();
            RationalMatrix::vstack(dim, &blocks).expect("same width").kernel_basis()
        };
        let vertex_fixed: Vec<Vec<Vec<Rational>>> = (0..g.num_vertices())
            .map(|v| {
                let av = &self.vertex_groups[v];
                fixed_basis(av.generators().iter().map(|&s| checked.vertex_element(v, s)).collect())
            })
            .collect();
        let positive = g.positive_edges();
        let mut edge_dim_total = 0;
        for &e in &positive {
            let eb = g.bar(e);
            let mats = self
                .edge_group(e)
                .generators()
                .iter()
                .map(|&a| checked.vertex_element(g.origin(e), self.embeddings[eb][a]))
                .collect();
            edge_dim_total += fixed_basis(mats).len();
        }
        // Columns: basis of ⊕_v M^{A_v}; rows: ⊕_{E⁺} M (the image lands in
        // the fixed subspaces, so the rank is unaffected).
        let mut vertex_offset = Vec::new();
        let mut total_cols = 0;
        for basis in &vertex_fixed {
            vertex_offset.push(total_cols);
            total_cols += basis.len();
        }
        let mut triples = Vec::new();
        for (k, &e) in positive.iter().enumerate() {
            let (o, t) = (g.origin(e), g.terminus(e));
            for (j, b) in vertex_fixed[t].iter().enumerate() {
                let image = checked.letter(e).mul_vec(b).expect("dims match");
                for (i, x) in image.into_iter().enumerate() {
                    triples.push((k * dim + i, vertex_offset[t] + j, x));
                }
            }
            for (j, b) in vertex_fixed[o].iter().enumerate() {
                for (i, x) in b.iter().enumerate() {
                    triples.push((k * dim + i, vertex_offset[o] + j, -x.clone()));
                }
            }
        }
        let delta =
            RationalMatrix::from_triples(positive.len() * dim, total_cols, triples).expect("indices in range");
        let r = rank(&delta);
        Ok((total_cols - r, edge_dim_total - r))
    }
}

/// Builds a graph of groups from geometric edges
/// `(o, t, A_e, ι_e generator images, ι_ē generator images)`.
pub fn build(
    vertices: Vec<FiniteGroup>,
    edges: Vec<(usize, usize, FiniteGroup, Vec<Element>, Vec<Element>)>,
) -> Result<GraphOfFiniteGroups, GogError> {
    let pairs: Vec<(usize, usize)> = edges.iter().map(|x| (x.0, x.1)).collect();
    let graph = SerreGraph::from_geometric_edges(vertices.len(), &pairs)?;
    let data = edges
        .into_iter()
        .map(|(_, _, group, into_terminus, into_origin)| EdgeGroupData {
            group,
            into_terminus,
            into_origin,
        })
        .collect();
    GraphOfFiniteGroups::new(graph, vertices, data)
}
