//! Euler–Poincaré characteristics valued in rational multiples of
//! normalized Haar measures.
//!
//! `μ_O` is the Haar measure with `μ_O(O) = 1`. All such measures are
//! proportional: for `O ≤ U` of finite index, `μ_O = |U : O| · μ_U`. An
//! [`IndexTable`] records the volume of each labelled subgroup under one
//! fixed reference measure, which is all that rescaling needs.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coxeter::{CartanMatrix, CoxeterError};
use crate::poly::IntPolynomial;
use crate::ratlin::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EulerError {
    #[error("no index is known for subgroup {0:?}")]
    UnknownIndex(String),
    #[error("values over different bases {0:?} and {1:?}")]
    BaseMismatch(String, String),
    #[error("index must be a positive integer, got {0}")]
    BadIndex(String),
    #[error("diagram with {0} node(s) is not an affine diagram")]
    DegenerateDiagram(usize),
    #[error("q must be at least 2, got {0}")]
    BadQ(i64),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// `coeff · μ_base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaarValue {
    pub coeff: Rational,
    pub base: String,
}

impl HaarValue {
    pub fn new(coeff: Rational, base: impl Into<String>) -> Self {
        Self {
            coeff,
            base: base.into(),
        }
    }

    pub fn zero(base: impl Into<String>) -> Self {
        Self::new(Rational::zero(), base)
    }

    pub fn add(&self, other: &Self) -> Result<Self, EulerError> {
        if self.base != other.base {
            return Err(EulerError::BaseMismatch(self.base.clone(), other.base.clone()));
        }
        Ok(Self::new(&self.coeff + &other.coeff, self.base.clone()))
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.coeff.clone(), self.base.clone())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(&self.coeff * factor, self.base.clone())
    }

    /// The same measure written over `μ_target`.
    pub fn rebase(&self, table: &IndexTable, target: &str) -> Result<Self, EulerError> {
        // c·μ_U = c · vol(V)/vol(U) · μ_V
        let from = table.volume(&self.base)?;
        let to = table.volume(target)?;
        Ok(Self::new(&self.coeff * to / from, target))
    }

    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }
}

impl fmt::Display for HaarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·μ_{}", self.coeff, self.base)
    }
}

/// Volumes of labelled compact open subgroups under a common reference measure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexTable {
    volumes: BTreeMap<String, Rational>,
}

impl IndexTable {
    /// A table whose reference measure is `μ_base`.
    pub fn with_base(base: impl Into<String>) -> Self {
        let mut volumes = BTreeMap::new();
        volumes.insert(base.into(), Rational::one());
        Self { volumes }
    }

    pub fn set_volume(&mut self, label: impl Into<String>, volume: Rational) -> Result<(), EulerError> {
        if !volume.is_positive() {
            return Err(EulerError::BadIndex(volume.to_string()));
        }
        self.volumes.insert(label.into(), volume);
        Ok(())
    }

    /// Records `sub ≤ sup` with `|sup : sub| = index`; one of the two must
    /// already be known.
    pub fn insert_index(&mut self, sub: &str, sup: &str, index: &BigInt) -> Result<(), EulerError> {
        if !index.is_positive() {
            return Err(EulerError::BadIndex(index.to_string()));
        }
        let idx = Rational::from_integer(index.clone());
        match (self.volumes.get(sub).cloned(), self.volumes.get(sup).cloned()) {
            (_, Some(v)) => {
                self.volumes.insert(sub.to_string(), v / idx);
            }
            (Some(v), None) => {
                self.volumes.insert(sup.to_string(), v * idx);
            }
            (None, None) => return Err(EulerError::UnknownIndex(sub.to_string())),
        }
        Ok(())
    }

    pub fn volume(&self, label: &str) -> Result<Rational, EulerError> {
        self.volumes
            .get(label)
            .cloned()
            .ok_or_else(|| EulerError::UnknownIndex(label.to_string()))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.volumes.keys().map(String::as_str)
    }
}

/// The rank of the permutation module `Q[G/O]`, which is `μ_O`.
pub fn hs_rank_permutation(label: &str) -> HaarValue {
    HaarValue::new(Rational::one(), label)
}

/// A finite resolution by permutation modules: `degrees[k]` lists the
/// subgroups `O_{k,j}` with `P_k = ⊕_j Q[G/O_{k,j}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionDescription {
    pub base: String,
    pub degrees: Vec<Vec<String>>,
    pub table: IndexTable,
}

/// `χ = Σ_k (−1)^k Σ_j μ_{O_{k,j}}`, over the resolution's base.
pub fn chi_from_resolution(res: &ResolutionDescription) -> Result<HaarValue, EulerError> {
    let mut total = HaarValue::zero(res.base.clone());
    for (k, labels) in res.degrees.iter().enumerate() {
        for label in labels {
            let term = hs_rank_permutation(label).rebase(&res.table, &res.base)?;
            total = if k % 2 == 0 { total.add(&term)? } else { total.add(&term.neg())? };
        }
    }
    Ok(total)
}

/// Value of `p` at the integer `q`, as a rational.
fn eval_at(p: &IntPolynomial, q: i64) -> Rational {
    Rational::from_integer(p.eval_int(&BigInt::from(q)))
}

/// `χ = ∏_i (1 − q^{m_i}) / p_W(q) · μ_Iw` for the group of points of a
/// simply connected Chevalley group with finite Weyl group `W`.
///
/// This is `1 / p_W̃(q)`; its sign is `(−1)^{rank}`.
pub fn chevalley_chi(finite: &CartanMatrix, q: i64) -> Result<HaarValue, EulerError> {
    if q < 2 {
        return Err(EulerError::BadQ(q));
    }
    let p = finite.poincare_poly()?;
    let exps = crate::coxeter::exponents(&p)?;
    let mut num = Rational::one();
    for m in exps {
        num *= rat(1) - Rational::from_integer(BigInt::from(q).pow(m as u32));
    }
    Ok(HaarValue::new(num / eval_at(&p, q), "Iw"))
}

/// `Σ_{I ⊊ Δ̃} (−1)^{n − |I|} / p_{W(I)}(q) · μ_Iw`: the alternating sum over
/// the faces of a chamber, each parahoric having index `p_{W(I)}(q)` over `Iw`.
pub fn chi_via_parahoric_sum(affine: &CartanMatrix, q: i64) -> Result<HaarValue, EulerError> {
    let size = affine.rank();
    if size < 2 {
        return Err(EulerError::DegenerateDiagram(size));
    }
    if q < 2 {
        return Err(EulerError::BadQ(q));
    }
    let n = size - 1;
    let mut total = Rational::zero();
    for mask in 0u64..(1u64 << size) - 1 {
        let subset: Vec<usize> = (0..size).filter(|&i| mask >> i & 1 == 1).collect();
        let p = affine.principal_submatrix(&subset).poincare_poly()?;
        let term = Rational::one() / eval_at(&p, q);
        if (n - subset.len()).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(HaarValue::new(total, "Iw"))
}
