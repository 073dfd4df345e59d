//! Finite simplicial complexes and their rational (co)chain complexes.
//!
//! Simplices are stored as strictly increasing vertex lists, so every sign
//! below is the parity of a sort. `C_q` has the increasing-vertex simplices
//! of `Σ_q` as basis, in lexicographic order.

mod signed;
mod window;

pub use signed::{adjoint, OrientedSimplex, SignedSet, SignedSetError};
pub use window::{ball_sphere_growth, BallWindow, PathWindow, PointWindow, RegularTreeWindow};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::ratlin::{self, rat, RatLinError, RationalMatrix};

pub type VertexId = usize;
pub type Simplex = Vec<VertexId>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialError {
    #[error("simplex {simplex:?} is present but its face {missing_face:?} is not")]
    NotClosed {
        simplex: Simplex,
        missing_face: Simplex,
    },
    #[error("the empty set is not a simplex")]
    EmptySimplex,
    #[error("degree {degree} is outside the admissible range for this complex")]
    DegreeOutOfRange { degree: usize },
    #[error("simplex {simplex:?} of the subcomplex is not in the ambient complex")]
    NotSubcomplex { simplex: Simplex },
    #[error(transparent)]
    Linear(#[from] RatLinError),
}

/// A finite, downward closed family of nonempty vertex sets, graded by
/// dimension (`Σ_q` = simplices with `q + 1` vertices).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    graded: Vec<Vec<Simplex>>,
    index: Vec<BTreeMap<Simplex, usize>>,
}

fn canonical(mut s: Simplex) -> Result<Simplex, SimplicialError> {
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(SimplicialError::EmptySimplex);
    }
    Ok(s)
}

/// Checks downward closure of a family of simplices. Each simplex is read as
/// a vertex set.
pub fn validate<I>(simplices: I) -> Result<(), SimplicialError>
where
    I: IntoIterator<Item = Simplex>,
{
    let set = simplices
        .into_iter()
        .map(canonical)
        .collect::<Result<BTreeSet<_>, _>>()?;
    for s in &set {
        if s.len() < 2 {
            continue;
        }
        for j in 0..s.len() {
            let mut face = s.clone();
            face.remove(j);
            if !set.contains(&face) {
                return Err(SimplicialError::NotClosed {
                    simplex: s.clone(),
                    missing_face: face,
                });
            }
        }
    }
    Ok(())
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a complex from its full list of simplices, which must already
    /// be downward closed.
    pub fn new<I>(simplices: I) -> Result<Self, SimplicialError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let set = simplices
            .into_iter()
            .map(canonical)
            .collect::<Result<BTreeSet<_>, _>>()?;
        validate(set.iter().cloned())?;
        Ok(Self::from_closed_set(set))
    }

    /// The complex generated by `maximal`: every nonempty subset of a listed
    /// simplex is added.
    pub fn generated_by<I>(maximal: I) -> Result<Self, SimplicialError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut set = BTreeSet::new();
        for s in maximal {
            let s = canonical(s)?;
            if s.len() > 63 {
                return Err(SimplicialError::DegreeOutOfRange { degree: s.len() - 1 });
            }
            if set.contains(&s) {
                continue;
            }
            for mask in 1u64..(1u64 << s.len()) {
                let face: Simplex = (0..s.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| s[i])
                    .collect();
                set.insert(face);
            }
        }
        Ok(Self::from_closed_set(set))
    }

    /// `Σ[X]`: all nonempty subsets of `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        Self::generated_by([(0..n).collect::<Vec<_>>()]).expect("full simplex is valid")
    }

    fn from_closed_set(set: BTreeSet<Simplex>) -> Self {
        let mut graded: Vec<Vec<Simplex>> = Vec::new();
        for s in set {
            let q = s.len() - 1;
            if graded.len() <= q {
                graded.resize_with(q + 1, Vec::new);
            }
            graded[q].push(s);
        }
        let index = graded
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        Self { graded, index }
    }

    pub fn validate(&self) -> Result<(), SimplicialError> {
        validate(self.iter().cloned())
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.graded.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.graded.is_empty()
    }

    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.graded.get(q).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    pub fn num_simplices(&self) -> usize {
        self.graded.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.graded.iter().flatten()
    }

    /// Position of `s` (sorted) in the basis of `C_{|s|-1}`.
    pub fn index_of(&self, s: &[VertexId]) -> Option<usize> {
        let q = s.len().checked_sub(1)?;
        self.index.get(q)?.get(s).copied()
    }

    pub fn contains(&self, s: &[VertexId]) -> bool {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.index_of(&sorted).is_some()
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.iter().all(|s| other.index_of(s).is_some())
    }

    /// `Σ_q (-1)^q |Σ_q|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.graded
            .iter()
            .enumerate()
            .map(|(q, l)| if q % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Subcomplex of simplices all of whose vertices satisfy `keep`.
    pub fn full_subcomplex<F: Fn(VertexId) -> bool>(&self, keep: F) -> Self {
        let set: BTreeSet<Simplex> = self
            .iter()
            .filter(|s| s.iter().all(|&v| keep(v)))
            .cloned()
            .collect();
        Self::from_closed_set(set)
    }

    /// Union of subcomplexes (all assumed to share the vertex naming).
    pub fn union<'a, I: IntoIterator<Item = &'a SimplicialComplex>>(parts: I) -> Self {
        let set: BTreeSet<Simplex> = parts.into_iter().flat_map(|p| p.iter().cloned()).collect();
        Self::from_closed_set(set)
    }

    /// Matrix of `∂_q : C_q -> C_{q-1}`, `∂(x_0 ∧ .. ∧ x_q) = Σ_j (-1)^j (.. x̂_j ..)`.
    pub fn boundary_matrix(&self, q: usize) -> Result<RationalMatrix, SimplicialError> {
        match self.dim() {
            Some(d) if q >= 1 && q <= d => {}
            _ => return Err(SimplicialError::DegreeOutOfRange { degree: q }),
        }
        let mut triples = Vec::new();
        for (col, s) in self.simplices(q).iter().enumerate() {
            for j in 0..s.len() {
                let mut face = s.clone();
                face.remove(j);
                let row = self.index[q - 1][&face];
                let sign = if j % 2 == 0 { 1 } else { -1 };
                triples.push((row, col, rat(sign)));
            }
        }
        Ok(RationalMatrix::from_triples(
            self.count(q - 1),
            self.count(q),
            triples,
        )?)
    }

    /// Matrix of the compactly supported coboundary `ð^q : C^q_c -> C^{q+1}_c`,
    /// assembled from the cofaces `A ∪ {z}`, `z ∈ I_Σ(A)`, with the sign of
    /// moving `z` in front of `A` into sorted position. Columns use the
    /// representative basis `+A*` (for `q = 0` that of the doubled set `±x`).
    pub fn compact_coboundary_matrix(&self, q: usize) -> Result<RationalMatrix, SimplicialError> {
        let d = self
            .dim()
            .filter(|&d| q <= d)
            .ok_or(SimplicialError::DegreeOutOfRange { degree: q })?;
        let rows = if q == d { 0 } else { self.count(q + 1) };
        if rows == 0 {
            return Ok(RationalMatrix::zeros(0, self.count(q)));
        }
        let vertices = self.vertices();
        let mut triples = Vec::new();
        for (col, a) in self.simplices(q).iter().enumerate() {
            for &z in &vertices {
                if a.binary_search(&z).is_ok() {
                    continue;
                }
                let pos = a.partition_point(|&x| x < z);
                let mut b = a.clone();
                b.insert(pos, z);
                if let Some(&row) = self.index[q + 1].get(&b) {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    triples.push((row, col, rat(sign)));
                }
            }
        }
        Ok(RationalMatrix::from_triples(rows, self.count(q), triples)?)
    }

    /// `dim H_q(|Σ|; Q)` for `q = 0..=dim Σ`.
    pub fn homology(&self) -> Result<Vec<usize>, SimplicialError> {
        let Some(d) = self.dim() else {
            return Ok(Vec::new());
        };
        let mut maps = Vec::with_capacity(d + 1);
        maps.push(RationalMatrix::zeros(0, self.count(0)));
        for q in 1..=d {
            maps.push(self.boundary_matrix(q)?);
        }
        Ok(ratlin::homology_dims(&maps)?)
    }

    /// `dim H^q_c(|Σ|; Q)` from the finitely supported cochain complex.
    pub fn compact_cohomology(&self) -> Result<Vec<usize>, SimplicialError> {
        let Some(d) = self.dim() else {
            return Ok(Vec::new());
        };
        let maps = (0..=d)
            .map(|q| self.compact_coboundary_matrix(q))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ratlin::cohomology_dims(&maps)?)
    }
}

/// `dim H^q(K, L; Q)` for `q = 0..=dim K`, from the cochains supported on
/// simplices of `K` outside `L`.
pub fn relative_cohomology(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
) -> Result<Vec<usize>, SimplicialError> {
    if let Some(s) = l.iter().find(|s| k.index_of(s).is_none()) {
        return Err(SimplicialError::NotSubcomplex { simplex: s.clone() });
    }
    let Some(d) = k.dim() else {
        return Ok(Vec::new());
    };
    // Relative basis in each degree: positions in K's basis not hit by L.
    let keep: Vec<Vec<Option<usize>>> = (0..=d)
        .map(|q| {
            let mut next = 0;
            k.simplices(q)
                .iter()
                .map(|s| {
                    if l.index_of(s).is_some() {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = keep
        .iter()
        .map(|v| v.iter().filter(|x| x.is_some()).count())
        .collect();
    let mut maps = Vec::with_capacity(d + 1);
    for q in 0..=d {
        let full = k.compact_coboundary_matrix(q)?;
        let rows = if q == d { 0 } else { sizes[q + 1] };
        let triples = full.iter().filter_map(|(i, j, v)| {
            let r = keep[q + 1][i]?;
            let c = keep[q][j]?;
            Some((r, c, v.clone()))
        });
        maps.push(RationalMatrix::from_triples(rows, sizes[q], triples)?);
    }
    Ok(ratlin::cohomology_dims(&maps)?)
}
