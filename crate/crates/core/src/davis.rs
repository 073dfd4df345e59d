//! Davis chambers of Coxeter systems and the rational duality verdict.
//!
//! The chamber `K` is the order complex of the poset of spherical subsets
//! of `S` (including `∅`), the mirror `K_s` its full subcomplex on the
//! subsets containing `s`. For each spherical `T` the relative cohomology
//! `H^*(K, K^{S−T}; Q)`, `K^{S−T} = ∪_{s ∉ T} K_s`, is a summand of the
//! compactly supported cohomology of the Davis complex; `cd_Q(W)` is the top
//! degree in which some summand is nonzero, and `W` is a rational duality
//! group exactly when all nonzero summands sit in one degree.

use alloc::vec;
use alloc::vec::Vec;

use crate::coxeter::CoxeterSystem;
use crate::simplicial::{relative_cohomology, SimplicialComplex, SimplicialError};

/// Default cap on the number of spherical subsets.
pub const DEFAULT_POSET_CAP: usize = 4096;

/// Generators beyond this count do not fit the subset masks.
pub const MAX_GENERATORS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DavisError {
    #[error("W is finite, so cd_Q(W) = 0")]
    WFinite,
    #[error("more than {0} spherical subsets")]
    PosetTooLarge(usize),
    #[error("at most {MAX_GENERATORS} generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// Which spherical subsets `T` index the table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TRange {
    /// Every spherical `T`, including `∅`.
    #[default]
    All,
    /// Only `T ≠ ∅`; drops the `H^*(K, ∪_s K_s)` summand.
    NonemptyOnly,
}

/// Spherical subsets as bit masks, sorted by `(size, mask)`, so every
/// strict inclusion goes from a smaller to a larger index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalPoset {
    rank: usize,
    masks: Vec<u64>,
}

impl SphericalPoset {
    pub fn new(c: &CoxeterSystem, cap: usize) -> Result<Self, DavisError> {
        let n = c.rank();
        if n > MAX_GENERATORS {
            return Err(DavisError::TooManyGenerators(n));
        }
        let mut masks = vec![0u64];
        let mut layer = vec![0u64];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &m in &layer {
                let lowest_new = if m == 0 { 0 } else { 64 - m.leading_zeros() as usize };
                for s in lowest_new..n {
                    let grown = m | 1 << s;
                    if c.is_spherical(&members(grown)) {
                        next.push(grown);
                    }
                }
            }
            next.sort_unstable();
            masks.extend_from_slice(&next);
            if masks.len() > cap {
                return Err(DavisError::PosetTooLarge(cap));
            }
            layer = next;
        }
        Ok(Self { rank: n, masks })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn subset(&self, i: usize) -> Vec<usize> {
        members(self.masks[i])
    }

    /// Whether `S` itself is spherical.
    pub fn is_finite(&self) -> bool {
        let full = if self.rank == 64 { u64::MAX } else { (1u64 << self.rank) - 1 };
        self.masks.last() == Some(&full)
    }
}

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// The chamber `K` and its mirrors.
#[derive(Clone, Debug)]
pub struct DavisChamber {
    poset: SphericalPoset,
    complex: SimplicialComplex,
    mirrors: Vec<SimplicialComplex>,
}

impl DavisChamber {
    /// Requires `W` infinite.
    pub fn build(c: &CoxeterSystem) -> Result<Self, DavisError> {
        let chamber = Self::build_any(c, DEFAULT_POSET_CAP)?;
        if chamber.poset.is_finite() {
            return Err(DavisError::WFinite);
        }
        Ok(chamber)
    }

    /// Builds the chamber for any `W`, finite or not.
    pub fn build_any(c: &CoxeterSystem, cap: usize) -> Result<Self, DavisError> {
        let poset = SphericalPoset::new(c, cap)?;
        let masks = poset.masks();
        let below = |a: usize, b: usize| masks[a] != masks[b] && masks[a] & masks[b] == masks[a];
        // Chains as increasing index lists, grown by depth-first extension.
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..masks.len()).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains are nonempty");
            for j in last + 1..masks.len() {
                if below(last, j) {
                    let mut longer = chain.clone();
                    longer.push(j);
                    stack.push(longer);
                }
            }
            chains.push(chain);
        }
        let complex = SimplicialComplex::new(chains)?;
        let mirrors = (0..c.rank())
            .map(|s| complex.full_subcomplex(|v| masks[v] >> s & 1 == 1))
            .collect();
        Ok(Self { poset, complex, mirrors })
    }

    pub fn poset(&self) -> &SphericalPoset {
        &self.poset
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn mirror(&self, s: usize) -> &SimplicialComplex {
        &self.mirrors[s]
    }

    /// `K^{S−T} = ∪_{s ∉ T} K_s` for `T` given by its poset index.
    pub fn complement_mirrors(&self, t: usize) -> SimplicialComplex {
        let mask = self.poset.masks[t];
        SimplicialComplex::union((0..self.poset.rank).filter(|&s| mask >> s & 1 == 0).map(|s| &self.mirrors[s]))
    }

    /// `dim H^k(K, K^{S−T}; Q)` for `k = 0..=dim K`.
    pub fn relative_entry(&self, t: usize) -> Result<Vec<usize>, DavisError> {
        let mut dims = relative_cohomology(&self.complex, &self.complement_mirrors(t))?;
        dims.resize(self.complex.dim().map_or(0, |d| d + 1), 0);
        Ok(dims)
    }

    /// Poset indices of the `T` included by `range`.
    pub fn t_indices(&self, range: TRange) -> Vec<usize> {
        let start = match range {
            TRange::All => 0,
            TRange::NonemptyOnly => 1,
        };
        (start..self.poset.len()).collect()
    }

    pub fn relative_table(&self, range: TRange) -> Result<DualityVerdict, DavisError> {
        let entries = self
            .t_indices(range)
            .into_iter()
            .map(|t| {
                Ok(TableEntry {
                    t: self.poset.subset(t),
                    dims: self.relative_entry(t)?,
                })
            })
            .collect::<Result<Vec<_>, DavisError>>()?;
        Ok(DualityVerdict::from_entries(entries))
    }
}

/// `dim H^k(K, K^{S−T}; Q)` for one `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub t: Vec<usize>,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityVerdict {
    pub cd: usize,
    pub is_duality: bool,
    pub table: Vec<TableEntry>,
}

impl DualityVerdict {
    /// `cd` is the top degree of a nonzero entry (`0` if there is none);
    /// duality holds when every nonzero entry sits in degree `cd`.
    pub fn from_entries(table: Vec<TableEntry>) -> Self {
        let nonzero_degrees = || {
            table
                .iter()
                .flat_map(|e| e.dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(k, _)| k))
        };
        let cd = nonzero_degrees().max().unwrap_or(0);
        let is_duality = nonzero_degrees().all(|k| k == cd);
        Self { cd, is_duality, table }
    }

    /// The verdict for finite `W`: `K` is a cone on `S`, the only nonzero
    /// entry is `H^0(K, ∅) = Q` at `T = S`.
    pub fn finite(rank: usize) -> Self {
        Self::from_entries(vec![TableEntry {
            t: (0..rank).collect(),
            dims: vec![1],
        }])
    }
}

/// `cd_Q(W)` and the duality verdict, with the finite case short-circuited.
pub fn duality_verdict(c: &CoxeterSystem, range: TRange) -> Result<DualityVerdict, DavisError> {
    if c.is_finite() {
        return Ok(DualityVerdict::finite(c.rank()));
    }
    DavisChamber::build(c)?.relative_table(range)
}

/// For a Kac–Moody group over a local field with Weyl group `W`, the
/// rational cohomological dimension and duality property of the group agree
/// with those of `W`.
pub fn kac_moody_verdict(weyl: &CoxeterSystem) -> Result<DualityVerdict, DavisError> {
    if weyl.is_finite() {
        return Err(DavisError::WFinite);
    }
    duality_verdict(weyl, TRange::All)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanMatrix;

    fn sys(rows: &[Vec<u32>]) -> CoxeterSystem {
        CoxeterSystem::from_u32(rows).unwrap()
    }

    #[test]
    fn infinite_dihedral() {
        let c = sys(&[vec![1, 0], vec![0, 1]]);
        let ch = DavisChamber::build(&c).unwrap();
        assert_eq!(ch.poset().masks(), &[0, 1, 2]);
        assert_eq!(ch.complex().count(0), 3);
        assert_eq!(ch.complex().count(1), 2);
        assert_eq!(ch.mirror(0).num_simplices(), 1);
        let v = ch.relative_table(TRange::All).unwrap();
        assert_eq!((v.cd, v.is_duality), (1, true));
        assert_eq!(v.table[0].dims, vec![0, 1]);
        assert!(v.table[1..].iter().all(|e| e.dims.iter().all(|&d| d == 0)));
        let strict = ch.relative_table(TRange::NonemptyOnly).unwrap();
        assert_eq!(strict.cd, 0);
    }

    #[test]
    fn affine_a2() {
        let c = CartanMatrix::preset("~A2").unwrap().coxeter_system();
        let ch = DavisChamber::build(&c).unwrap();
        assert_eq!(ch.poset().len(), 7);
        assert_eq!(ch.complex().dim(), Some(2));
        let v = kac_moody_verdict(&c).unwrap();
        assert_eq!((v.cd, v.is_duality), (2, true));
    }

    #[test]
    fn triangle_plus_free_generator() {
        // Generators 0, 2, 3 form an affine A2 triangle; 1 is free.
        let c = sys(&[
            vec![1, 0, 3, 3],
            vec![0, 1, 0, 0],
            vec![3, 0, 1, 3],
            vec![3, 0, 3, 1],
        ]);
        let ch = DavisChamber::build(&c).unwrap();
        assert_eq!(ch.poset().len(), 8);
        assert_eq!(ch.complex().dim(), Some(2));
        let v = ch.relative_table(TRange::All).unwrap();
        assert_eq!((v.cd, v.is_duality), (2, false));
    }

    #[test]
    fn product_of_lines() {
        let c = sys(&[
            vec![1, 0, 2, 2],
            vec![0, 1, 2, 2],
            vec![2, 2, 1, 0],
            vec![2, 2, 0, 1],
        ]);
        let v = duality_verdict(&c, TRange::All).unwrap();
        assert_eq!((v.cd, v.is_duality), (2, true));
    }

    #[test]
    fn finite_short_circuit_matches_machinery() {
        let c = CartanMatrix::preset("A3").unwrap().coxeter_system();
        assert_eq!(DavisChamber::build(&c).unwrap_err(), DavisError::WFinite);
        let v = duality_verdict(&c, TRange::All).unwrap();
        assert_eq!((v.cd, v.is_duality), (0, true));
        let full = DavisChamber::build_any(&c, DEFAULT_POSET_CAP)
            .unwrap()
            .relative_table(TRange::All)
            .unwrap();
        assert_eq!((full.cd, full.is_duality), (0, true));
        for e in &full.table {
            assert!(e.dims.iter().skip(1).all(|&d| d == 0));
        }
    }
}
