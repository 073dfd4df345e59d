//! JSON input formats and their conversion into core types.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tdlc_core::coxeter::{CartanMatrix, CoxeterLabel, CoxeterSystem};
use tdlc_core::graphs_of_groups::{build, GraphOfFiniteGroups, Representation};
use tdlc_core::group::FiniteGroup;
use tdlc_core::serre_graphs::SerreGraph;
use tdlc_core::simplicial::SimplicialComplex;
use tdlc_core::{Rational, RationalMatrix};

use crate::CliError;

/// Reads and parses a JSON file; a missing or unreadable file is an input error.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

/// `{"vertices": [...], "maximal_simplices": [[...], ...]}`; the downward
/// closure is generated on load and listed vertices may be isolated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default)]
    pub vertices: Vec<usize>,
    pub maximal_simplices: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn to_complex(&self) -> Result<SimplicialComplex, CliError> {
        let mut generators = Vec::with_capacity(self.vertices.len() + self.maximal_simplices.len());
        for s in &self.maximal_simplices {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.len() {
                return Err(CliError::invalid(format!("simplex {s:?} repeats a vertex")));
            }
            if s.is_empty() {
                return Err(CliError::invalid("empty maximal simplex"));
            }
            generators.push(sorted);
        }
        generators.extend(self.vertices.iter().map(|&v| vec![v]));
        Ok(SimplicialComplex::generated_by(generators)?)
    }
}

/// One directed edge of a Serre graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: usize,
    pub o: u64,
    pub t: u64,
    pub bar: usize,
}

/// `{"vertices": [...], "edges": [{"id", "o", "t", "bar"}]}`; vertex labels
/// are arbitrary distinct integers, edge ids a permutation of `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<u64>,
    pub edges: Vec<EdgeRecord>,
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<SerreGraph, CliError> {
        let mut index = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            if index.insert(v, i).is_some() {
                return Err(CliError::invalid(format!("vertex {v} listed twice")));
            }
        }
        let lookup = |v: u64| index.get(&v).copied().ok_or_else(|| CliError::invalid(format!("unknown vertex {v}")));
        let m = self.edges.len();
        let mut triples = vec![None; m];
        for e in &self.edges {
            if e.id >= m || triples[e.id].is_some() {
                return Err(CliError::invalid(format!("edge ids must be a permutation of 0..{m}; bad id {}", e.id)));
            }
            triples[e.id] = Some((lookup(e.o)?, lookup(e.t)?, e.bar));
        }
        let triples: Vec<_> = triples.into_iter().map(|t| t.expect("every id filled")).collect();
        Ok(SerreGraph::new(self.vertices.len(), &triples)?)
    }

    pub fn from_graph(g: &SerreGraph) -> Self {
        Self {
            vertices: (0..g.num_vertices() as u64).collect(),
            edges: g
                .edge_triples()
                .into_iter()
                .enumerate()
                .map(|(id, (o, t, bar))| EdgeRecord { id, o: o as u64, t: t as u64, bar })
                .collect(),
        }
    }
}

/// A finite group: a preset name (`"C3"`, `"S3"`, `"D4"`, `"V4"`, ...), or
/// a multiplication table over `0..n` with optional generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Preset {
        preset: String,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn to_group(&self) -> Result<FiniteGroup, CliError> {
        Ok(match self {
            Self::Name(name) | Self::Preset { preset: name } => FiniteGroup::preset(name)?,
            Self::Table { table, generators } => {
                let g = FiniteGroup::from_table(table)?;
                match generators {
                    Some(gens) => g.with_generators(gens.clone())?,
                    None => g,
                }
            }
        })
    }
}

/// `{"group", "subgroup", "generators"}`: the rough Cayley graph of `G`
/// relative to `O = ⟨subgroup⟩` and `S = generators ∪ generators⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoughCayleyFile {
    pub group: GroupSpec,
    #[serde(default)]
    pub subgroup: Vec<usize>,
    pub generators: Vec<usize>,
}

/// A geometric edge `(o, t)` with group `A_e` and the images of its
/// generators in `A_t` and `A_o`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GogEdge {
    pub o: usize,
    pub t: usize,
    pub group: GroupSpec,
    pub into_terminus: Vec<usize>,
    pub into_origin: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GogFile {
    pub vertices: Vec<GroupSpec>,
    pub edges: Vec<GogEdge>,
}

impl GogFile {
    pub fn to_gog(&self) -> Result<GraphOfFiniteGroups, CliError> {
        let vertices = self.vertices.iter().map(GroupSpec::to_group).collect::<Result<Vec<_>, _>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| Ok((e.o, e.t, e.group.to_group()?, e.into_terminus.clone(), e.into_origin.clone())))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(build(vertices, edges)?)
    }
}

/// An exact rational entry: a JSON integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Int(i64),
    Text(String),
}

impl RationalSpec {
    pub fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            Self::Int(n) => Ok(Rational::from_integer((*n).into())),
            Self::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim().parse::<Rational>().map_err(|_| CliError::invalid(format!("not a rational number: {s:?}")))
}

fn to_matrix(dim: usize, rows: &[Vec<RationalSpec>]) -> Result<RationalMatrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(RationalSpec::to_rational).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != dim {
        return Err(CliError::invalid(format!("matrix has {} rows, expected {dim}", rows.len())));
    }
    Ok(RationalMatrix::from_rows(dim, &rows)?)
}

/// `{"dim", "vertex_generators": [[M, ...], ...], "edge_letters": [M, ...]}`:
/// images of the generators of each `A_v` and of each positive edge letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub dim: usize,
    pub vertex_generators: Vec<Vec<Vec<Vec<RationalSpec>>>>,
    pub edge_letters: Vec<Vec<Vec<RationalSpec>>>,
}

impl RepFile {
    pub fn to_representation(&self) -> Result<Representation, CliError> {
        Ok(Representation {
            dim: self.dim,
            vertex_generators: self
                .vertex_generators
                .iter()
                .map(|gens| gens.iter().map(|m| to_matrix(self.dim, m)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?,
            edge_letters: self.edge_letters.iter().map(|m| to_matrix(self.dim, m)).collect::<Result<Vec<_>, _>>()?,
        })
    }
}

/// A Coxeter label: a positive integer or `"inf"` / `"∞"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelSpec {
    Finite(u32),
    Token(String),
}

impl LabelSpec {
    fn to_label(&self) -> Result<CoxeterLabel, CliError> {
        match self {
            Self::Finite(m) => Ok(CoxeterLabel::Finite(*m)),
            Self::Token(t) if t == "inf" || t == "∞" => Ok(CoxeterLabel::Infinity),
            Self::Token(t) => Err(CliError::invalid(format!("bad Coxeter label {t:?}"))),
        }
    }
}

/// A Coxeter matrix `{"size", "m"}`, a Cartan matrix `{"cartan"}`, or a
/// named Cartan type `{"preset": "affine A2"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoxeterFile {
    Matrix { size: usize, m: Vec<Vec<LabelSpec>> },
    Cartan { cartan: Vec<Vec<i64>> },
    Preset { preset: String },
}

impl CoxeterFile {
    /// The integer Cartan matrix, if the input carries one.
    pub fn cartan(&self) -> Result<Option<CartanMatrix>, CliError> {
        Ok(match self {
            Self::Matrix { .. } => None,
            Self::Cartan { cartan } => Some(CartanMatrix::new(cartan.clone())?),
            Self::Preset { preset } => Some(CartanMatrix::preset(preset)?),
        })
    }

    pub fn system(&self) -> Result<CoxeterSystem, CliError> {
        match self {
            Self::Matrix { size, m } => {
                if m.len() != *size || m.iter().any(|r| r.len() != *size) {
                    return Err(CliError::invalid(format!("\"m\" must be {size}x{size}")));
                }
                let rows = m
                    .iter()
                    .map(|r| r.iter().map(LabelSpec::to_label).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(CoxeterSystem::new(rows)?)
            }
            _ => Ok(self.cartan()?.expect("Cartan inputs").coxeter_system()),
        }
    }
}
