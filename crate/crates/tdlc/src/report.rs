//! Report types printed by the CLI. Every report round-trips through JSON;
//! exact rationals and big integers are carried as decimal strings.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use tdlc_core::euler::HaarValue;

/// A report renders either as JSON or as a plain-text table.
pub trait Report: Serialize {
    fn table(&self) -> String;
}

/// Output format of a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    #[default]
    Json,
}

pub fn render<R: Report>(report: &R, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => report.table(),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// `dims[k]` is the dimension in degree `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    /// `homology`, `compact_cohomology` or `relative_cohomology`.
    pub kind: String,
    pub dims: Vec<usize>,
    pub euler_characteristic: i64,
}

impl Report for BettiReport {
    fn table(&self) -> String {
        let mut out = format!("{}\n degree  dim\n", self.kind);
        for (k, d) in self.dims.iter().enumerate() {
            let _ = writeln!(out, " {k:>6}  {d}");
        }
        let _ = writeln!(out, "euler characteristic: {}", self.euler_characteristic);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: usize,
    pub geometric_edges: usize,
    pub components: usize,
    pub h1_dim: usize,
    pub is_tree: bool,
    pub component_labels: Vec<usize>,
}

impl Report for GraphReport {
    fn table(&self) -> String {
        format!(
            "vertices         {}\nedges            {} ({} geometric)\ncomponents       {}\nh1 dimension     {}\ntree             {}\n",
            self.vertices, self.edges, self.geometric_edges, self.components, self.h1_dim, self.is_tree
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoughCayleyReport {
    /// Canonical representative (least element) of each coset in the graph.
    pub cosets: Vec<usize>,
    pub geometric_edges: usize,
    /// `None` for the full graph.
    pub radius: Option<usize>,
    pub connected: bool,
    pub generates: bool,
    pub criterion_holds: bool,
    pub max_degree: usize,
    pub degree_bound: usize,
}

impl Report for RoughCayleyReport {
    fn table(&self) -> String {
        let radius = self.radius.map_or_else(|| "full".to_string(), |r| r.to_string());
        format!(
            "cosets           {}\ngeometric edges  {}\nradius           {radius}\nconnected        {}\n<O, S> = G       {}\ncriterion holds  {}\nmax degree       {} (bound {})\n",
            self.cosets.len(), self.geometric_edges, self.connected, self.generates, self.criterion_holds, self.max_degree, self.degree_bound
        )
    }
}

/// `coefficient · μ_base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaarReport {
    pub coefficient: String,
    pub base: String,
    pub rendered: String,
}

impl From<&HaarValue> for HaarReport {
    fn from(h: &HaarValue) -> Self {
        Self {
            coefficient: h.coeff.to_string(),
            base: h.base.clone(),
            rendered: h.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallReport {
    pub radius: usize,
    pub vertices: usize,
    pub geometric_edges: usize,
    pub is_tree: bool,
    /// Vertex of the underlying graph each tree vertex lies over.
    pub over: Vec<usize>,
    pub depth: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCohomologyReport {
    pub h0: usize,
    pub h1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GogReport {
    pub vertices: usize,
    pub geometric_edges: usize,
    /// `|A_{t(e)} : ι_e(A_e)|` for every directed edge.
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unimodular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<HaarReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<TreeCohomologyReport>,
}

impl Report for GogReport {
    fn table(&self) -> String {
        let mut out = format!(
            "vertices         {}\ngeometric edges  {}\nindices          {}\n",
            self.vertices,
            self.geometric_edges,
            join(&self.indices)
        );
        if let Some(u) = self.unimodular {
            let _ = writeln!(out, "unimodular       {u}");
        }
        if let Some(chi) = &self.chi {
            let _ = writeln!(out, "chi              {}", chi.rendered);
        }
        if let Some(b) = &self.ball {
            let _ = writeln!(out, "ball radius {}   {} vertices, {} edges, tree {}", b.radius, b.vertices, b.geometric_edges, b.is_tree);
        }
        if let Some(c) = &self.cohomology {
            let _ = writeln!(out, "H^0, H^1         {}, {}", c.h0, c.h1);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub nodes: Vec<usize>,
    /// Finite type of the component, `None` if its parabolic is infinite.
    pub finite_type: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottReport {
    pub degree: usize,
    pub finite_nodes: Vec<usize>,
    /// Coefficients of `p_W(t) / ∏ (1 − t^{m_i})`.
    pub series: Vec<String>,
    /// Number of affine Weyl group elements of each length.
    pub counts: Vec<u64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltSumReportOut {
    pub q: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub finite_nodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterReport {
    pub rank: usize,
    pub finite: bool,
    pub components: Vec<ComponentReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poincare: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bott: Option<BottReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub altsum: Option<AltSumReportOut>,
}

impl Report for CoxeterReport {
    fn table(&self) -> String {
        let mut out = format!("rank             {}\nfinite           {}\n", self.rank, self.finite);
        for c in &self.components {
            let _ = writeln!(out, "component {:<6} {}", join(&c.nodes), c.finite_type.as_deref().unwrap_or("infinite"));
        }
        if let Some(p) = &self.poincare {
            let _ = writeln!(out, "poincare         {}", join(p));
        }
        if let Some(m) = &self.exponents {
            let _ = writeln!(out, "exponents        {}", join(m));
        }
        if let Some(b) = &self.bott {
            let _ = writeln!(out, "bott series      {}\naffine counts    {}\nbott holds       {}", join(&b.series), join(&b.counts), b.holds);
        }
        if let Some(a) = &self.altsum {
            let _ = writeln!(out, "altsum at q={}   lhs {} rhs {} holds {}", a.q, a.lhs, a.rhs, a.holds);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DavisRow {
    pub t: Vec<usize>,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DavisReport {
    pub cd: usize,
    pub duality: bool,
    /// `all` or `nonempty`.
    pub t_range: String,
    pub table: Vec<DavisRow>,
}

impl Report for DavisReport {
    fn table(&self) -> String {
        let mut out = format!("cd_Q(W) = {}, rational duality group: {}\n T             dims of H^k(K, K^(S-T))\n", self.cd, self.duality);
        for row in &self.table {
            let t = format!("{{{}}}", row.t.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            let _ = writeln!(out, " {t:<13} {}", join(&row.dims));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChevalleyReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub q: i64,
    /// `closed_form` or `parahoric_sum`.
    pub method: String,
    pub coefficient: String,
    pub base: String,
    pub rendered: String,
}

impl Report for ChevalleyReport {
    fn table(&self) -> String {
        format!("chi({}, q = {}) = {}   [{}]\n", self.cartan_type, self.q, self.rendered, self.method)
    }
}
