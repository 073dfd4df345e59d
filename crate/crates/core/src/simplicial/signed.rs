use alloc::vec::Vec;

use crate::ratlin::{Rational, RationalMatrix};
use num_traits::Zero;

use super::{Simplex, SimplicialComplex, VertexId};

/// `sign · x_0 ∧ .. ∧ x_q` with strictly increasing `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedSimplex {
    vertices: Simplex,
    sign: i8,
}

impl OrientedSimplex {
    /// The wedge of `vertices` in the given order, brought into canonical
    /// form. Returns `None` when a vertex repeats (the wedge vanishes).
    pub fn from_wedge(vertices: &[VertexId]) -> Option<Self> {
        let mut v = vertices.to_vec();
        let mut sign = 1i8;
        // Insertion sort, counting transpositions.
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) || v.is_empty() {
            return None;
        }
        Some(Self { vertices: v, sign })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn negated(&self) -> Self {
        Self {
            vertices: self.vertices.clone(),
            sign: -self.sign,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignedSetError {
    #[error("bar is not an involution at element {0}")]
    NotInvolution(usize),
    #[error("element {0} is fixed by bar")]
    FixedPoint(usize),
}

/// A set `{0, .., n-1}` with a fixed-point-free involution `x ↦ x̄`.
///
/// `Q[X̲]` is `Q[X]` modulo `x + x̄`; its basis is the orbit
/// representatives (the smaller element of each pair), and `x̄` maps to
/// minus the class of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSet {
    bar: Vec<usize>,
    rep_index: Vec<usize>,
}

impl SignedSet {
    pub fn new(bar: Vec<usize>) -> Result<Self, SignedSetError> {
        for (x, &y) in bar.iter().enumerate() {
            if y == x {
                return Err(SignedSetError::FixedPoint(x));
            }
            if bar.get(y) != Some(&x) {
                return Err(SignedSetError::NotInvolution(x));
            }
        }
        let mut rep_index = Vec::with_capacity(bar.len());
        let mut next = 0;
        let mut assigned: Vec<Option<usize>> = alloc::vec![None; bar.len()];
        for x in 0..bar.len() {
            let r = x.min(bar[x]);
            let idx = *assigned[r].get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            rep_index.push(idx);
        }
        Ok(Self { bar, rep_index })
    }

    /// `{±x_i}`: element `2i` is `+x_i`, element `2i + 1` is `-x_i`.
    pub fn doubled(n: usize) -> Self {
        let bar = (0..2 * n).map(|x| x ^ 1).collect();
        Self::new(bar).expect("pairing x <-> x^1 is a free involution")
    }

    pub fn len(&self) -> usize {
        self.bar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bar.is_empty()
    }

    pub fn bar(&self, x: usize) -> usize {
        self.bar[x]
    }

    /// Number of orbits, i.e. `dim Q[X̲]`.
    pub fn rank(&self) -> usize {
        self.bar.len() / 2
    }

    /// Image of `x` in `Q[X̲]`: `(basis index, ±1)`.
    pub fn class(&self, x: usize) -> (usize, i8) {
        let sign = if x < self.bar[x] { 1 } else { -1 };
        (self.rep_index[x], sign)
    }

    /// `x*(y)`: `1` if `y = x`, `-1` if `y = x̄`, else `0`.
    pub fn dual_eval(&self, x: usize, y: usize) -> i8 {
        if y == x {
            1
        } else if y == self.bar[x] {
            -1
        } else {
            0
        }
    }

    /// `⟨c, x⟩` for a covector `c` given in the dual representative basis.
    pub fn pair(&self, covector: &[Rational], x: usize) -> Rational {
        let (i, s) = self.class(x);
        if s > 0 {
            covector[i].clone()
        } else {
            -covector[i].clone()
        }
    }

    /// Image of `x` as a vector in the representative basis.
    pub fn vector(&self, x: usize) -> Vec<Rational> {
        let mut v = alloc::vec![Rational::zero(); self.rank()];
        let (i, s) = self.class(x);
        v[i] = Rational::from_integer(s.into());
        v
    }
}

/// Adjoint `ψ* : Q[Y̲*] -> Q[X̲*]` of a map `ψ : Q[X̲] -> Q[Y̲]` written in
/// representative bases: `ψ*(y̲*) = Σ_{x ∈ csupp(ψ, y)} λ_y(x) x̲*`.
pub fn adjoint(psi: &RationalMatrix) -> RationalMatrix {
    // csupp(ψ, y) is the support of row y, so the coefficients of ψ*(y̲*)
    // are that row read as a column.
    let triples: Vec<_> = psi.iter().map(|(y, x, v)| (x, y, v.clone())).collect();
    RationalMatrix::from_triples(psi.cols(), psi.rows(), triples).expect("indices in range")
}

impl SimplicialComplex {
    /// `Σ̃_q` (or `Σ̃_0^±` for `q = 0`) as a signed set: element `2i` is the
    /// canonical orientation of the `i`-th simplex, `2i + 1` its negative.
    pub fn oriented_simplices(&self, q: usize) -> SignedSet {
        SignedSet::doubled(self.count(q))
    }

    /// Oriented simplex named by element `x` of [`Self::oriented_simplices`].
    pub fn oriented(&self, q: usize, x: usize) -> OrientedSimplex {
        let s = OrientedSimplex::from_wedge(&self.simplices(q)[x / 2]).expect("simplex");
        if x.is_multiple_of(2) {
            s
        } else {
            s.negated()
        }
    }
}
