//! Sparse matrices over `Q` and the exact elimination behind every rank,
//! kernel and (co)homology computation in the crate.
//!
//! Matrices are immutable once built. Elimination copies the rows into a
//! private workspace and runs Gauss–Jordan with a Markowitz pivot rule
//! (smallest `(row_nnz - 1) * (col_nnz - 1)` among active entries). The rule
//! only affects fill-in; ranks and kernels do not depend on it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Elements of `Q`, always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatLinError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {left_cols} columns against {right_rows} rows")]
    DimensionMismatch { left_cols: usize, right_rows: usize },
    #[error("boundary maps in degrees {degree} and {} do not compose to zero", degree + 1)]
    CompositionNonZero { degree: usize },
}

/// Sparse `rows x cols` matrix with entries in `Q`; absent entries are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| ((i, i), Rational::one())).collect();
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// Builds a matrix from `(row, col, value)` triples. Repeated positions
    /// are summed; zeros are dropped.
    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Result<Self, RatLinError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut entries: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (row, col, value) in triples {
            if row >= rows || col >= cols {
                return Err(RatLinError::IndexOutOfRange {
                    row,
                    col,
                    rows,
                    cols,
                });
            }
            *entries.entry((row, col)).or_insert_with(Rational::zero) += value;
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Dense integer rows; every row must have `cols` entries.
    pub fn from_int_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self, RatLinError> {
        let mut triples = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(RatLinError::DimensionMismatch {
                    left_cols: cols,
                    right_rows: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    triples.push((i, j, rat(v)));
                }
            }
        }
        Self::from_triples(rows.len(), cols, triples)
    }

    /// Dense rational rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self, RatLinError> {
        let mut triples = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(RatLinError::DimensionMismatch {
                    left_cols: cols,
                    right_rows: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                triples.push((i, j, v.clone()));
            }
        }
        Self::from_triples(rows.len(), cols, triples)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut dense = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (i, j, v) in self.iter() {
            dense[i][j] = v.clone();
        }
        dense
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), v)| ((j, i), v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|(&k, v)| (k, v * factor))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RatLinError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(RatLinError::DimensionMismatch {
                left_cols: self.cols,
                right_rows: other.cols,
            });
        }
        let triples = self
            .iter()
            .chain(other.iter())
            .map(|(i, j, v)| (i, j, v.clone()));
        Self::from_triples(self.rows, self.cols, triples)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RatLinError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, RatLinError> {
        if self.cols != other.rows {
            return Err(RatLinError::DimensionMismatch {
                left_cols: self.cols,
                right_rows: other.rows,
            });
        }
        let mut other_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (k, j, v) in other.iter() {
            other_rows[k].push((j, v));
        }
        let mut triples = Vec::new();
        for (i, k, a) in self.iter() {
            for &(j, b) in &other_rows[k] {
                triples.push((i, j, a * b));
            }
        }
        Self::from_triples(self.rows, other.cols, triples)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, RatLinError> {
        if v.len() != self.cols {
            return Err(RatLinError::DimensionMismatch {
                left_cols: self.cols,
                right_rows: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (i, j, a) in self.iter() {
            out[i] += a * &v[j];
        }
        Ok(out)
    }

    /// Stacks `blocks` on top of each other; all must share the column count.
    pub fn vstack(cols: usize, blocks: &[RationalMatrix]) -> Result<Self, RatLinError> {
        let mut triples = Vec::new();
        let mut offset = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(RatLinError::DimensionMismatch {
                    left_cols: cols,
                    right_rows: b.cols,
                });
            }
            triples.extend(b.iter().map(|(i, j, v)| (i + offset, j, v.clone())));
            offset += b.rows;
        }
        Self::from_triples(offset, cols, triples)
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self, RatLinError> {
        let mut triples = Vec::new();
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(RatLinError::DimensionMismatch {
                    left_cols: rows,
                    right_rows: c.len(),
                });
            }
            triples.extend(c.iter().enumerate().map(|(i, v)| (i, j, v.clone())));
        }
        Self::from_triples(rows, columns.len(), triples)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        kernel_basis(self)
    }

    /// Two-sided inverse, or `None` when the matrix is not square or singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        // Row-reduce [A | I]; A is invertible iff every pivot lands in the left block.
        let mut triples: Vec<(usize, usize, Rational)> =
            self.iter().map(|(i, j, v)| (i, j, v.clone())).collect();
        triples.extend((0..n).map(|i| (i, n + i, Rational::one())));
        let augmented = Self::from_triples(n, 2 * n, triples).ok()?;
        let red = RowReduction::new(&augmented, Some(n));
        if red.pivots.len() != n || red.pivots.iter().any(|&(_, c)| c >= n) {
            return None;
        }
        let mut out = Vec::new();
        for &(r, c) in &red.pivots {
            for (&j, v) in red.rows[r].range(n..) {
                out.push((c, j - n, v.clone()));
            }
        }
        Self::from_triples(n, n, out).ok()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            write!(f, "  ")?;
            for v in row {
                write!(f, "{v:>5} ")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of a private copy of a matrix.
struct RowReduction {
    rows: Vec<BTreeMap<usize, Rational>>,
    /// `(row, col)` for each pivot, in the order found.
    pivots: Vec<(usize, usize)>,
}

impl RowReduction {
    /// `pivot_cols` restricts pivot search to columns `< pivot_cols`.
    fn new(m: &RationalMatrix, pivot_cols: Option<usize>) -> Self {
        let limit = pivot_cols.unwrap_or(m.cols);
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); m.rows];
        for (i, j, v) in m.iter() {
            rows[i].insert(j, v.clone());
        }
        let mut active: BTreeSet<usize> = (0..m.rows).filter(|&i| !rows[i].is_empty()).collect();
        let mut pivots = Vec::new();

        loop {
            // Column counts over active rows, restricted to eligible columns.
            let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
            for &i in &active {
                for &j in rows[i].range(..limit).map(|(j, _)| j) {
                    *col_count.entry(j).or_insert(0) += 1;
                }
            }
            if col_count.is_empty() {
                break;
            }
            let mut best: Option<(usize, usize, usize)> = None;
            for &i in &active {
                let r = rows[i].len() - 1;
                for &j in rows[i].range(..limit).map(|(j, _)| j) {
                    let cost = r * (col_count[&j] - 1);
                    let better = match best {
                        None => true,
                        Some((c, bj, bi)) => (cost, j, i) < (c, bj, bi),
                    };
                    if better {
                        best = Some((cost, j, i));
                    }
                }
            }
            let (_, pc, pr) = best.expect("nonempty column set has a pivot");
            active.remove(&pr);

            let inv = rows[pr][&pc].recip();
            for v in rows[pr].values_mut() {
                *v *= &inv;
            }
            let pivot_row = core::mem::take(&mut rows[pr]);
            for (i, row) in rows.iter_mut().enumerate() {
                if i == pr {
                    continue;
                }
                let Some(factor) = row.get(&pc).cloned() else {
                    continue;
                };
                for (&j, v) in &pivot_row {
                    let e = row.entry(j).or_insert_with(Rational::zero);
                    *e -= &factor * v;
                    if e.is_zero() {
                        row.remove(&j);
                    }
                }
            }
            rows[pr] = pivot_row;
            pivots.push((pr, pc));
            active.retain(|&i| !rows[i].is_empty());
        }
        Self { rows, pivots }
    }
}

/// Rank over `Q`.
pub fn rank(m: &RationalMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    RowReduction::new(m, None).pivots.len()
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let red = RowReduction::new(m, None);
    let mut pivot_of_col: BTreeMap<usize, usize> = BTreeMap::new();
    for &(r, c) in &red.pivots {
        pivot_of_col.insert(c, r);
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_of_col.contains_key(c)) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (&c, &r) in &pivot_of_col {
            if let Some(x) = red.rows[r].get(&free) {
                v[c] = -x.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Dimensions of `H_q = ker d_q / im d_{q+1}` for a chain complex given by
/// `boundaries[q] : C_q -> C_{q-1}`. The `q = 0` map is usually `0 x dim C_0`.
pub fn homology_dims(boundaries: &[RationalMatrix]) -> Result<Vec<usize>, RatLinError> {
    for q in 0..boundaries.len().saturating_sub(1) {
        let (lower, upper) = (&boundaries[q], &boundaries[q + 1]);
        if lower.cols() != upper.rows() {
            return Err(RatLinError::DimensionMismatch {
                left_cols: lower.cols(),
                right_rows: upper.rows(),
            });
        }
        if !lower.mul(upper)?.is_zero() {
            return Err(RatLinError::CompositionNonZero { degree: q });
        }
    }
    let ranks: Vec<usize> = boundaries.iter().map(rank).collect();
    Ok((0..boundaries.len())
        .map(|q| {
            let next = ranks.get(q + 1).copied().unwrap_or(0);
            boundaries[q].cols() - ranks[q] - next
        })
        .collect())
}

/// Dimensions of `H^q` for a cochain complex `coboundaries[q] : C^q -> C^{q+1}`.
pub fn cohomology_dims(coboundaries: &[RationalMatrix]) -> Result<Vec<usize>, RatLinError> {
    for q in 0..coboundaries.len().saturating_sub(1) {
        let (lower, upper) = (&coboundaries[q], &coboundaries[q + 1]);
        if lower.rows() != upper.cols() {
            return Err(RatLinError::DimensionMismatch {
                left_cols: upper.cols(),
                right_rows: lower.rows(),
            });
        }
        if !upper.mul(lower)?.is_zero() {
            return Err(RatLinError::CompositionNonZero { degree: q });
        }
    }
    let ranks: Vec<usize> = coboundaries.iter().map(rank).collect();
    Ok((0..coboundaries.len())
        .map(|q| {
            let prev = if q == 0 { 0 } else { ranks[q - 1] };
            coboundaries[q].cols() - ranks[q] - prev
        })
        .collect())
}

/// Scales a nonzero rational vector to a primitive integer vector whose
/// first nonzero entry is positive. Handy for comparing kernel vectors.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| if x.is_negative() { -BigInt::one() } else { BigInt::one() })
        .unwrap_or_else(BigInt::one);
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> RationalMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        RationalMatrix::from_int_rows(cols, &rows).unwrap()
    }

    fn triangle_d1() -> RationalMatrix {
        // Edges {0,1},{0,2},{1,2} in columns; vertices in rows.
        m(3, &[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]])
    }

    #[test]
    fn rank_of_zero_identity_and_triangle() {
        assert_eq!(rank(&RationalMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&triangle_d1()), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RationalMatrix::identity(2)).is_empty());

        let k = kernel_basis(&m(2, &[&[1, -1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(primitive(&k[0]), vec![BigInt::from(1), BigInt::from(1)]);

        let d1 = triangle_d1();
        let k = kernel_basis(&d1);
        assert_eq!(k.len(), 1);
        // {0,1} + {1,2} - {0,2} is the fundamental cycle in this basis.
        assert_eq!(
            primitive(&k[0]),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        assert!(d1.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn homology_examples() {
        assert_eq!(homology_dims(&[RationalMatrix::zeros(0, 1)]).unwrap(), vec![1]);
        let d0 = RationalMatrix::zeros(0, 3);
        assert_eq!(homology_dims(&[d0.clone(), triangle_d1()]).unwrap(), vec![1, 1]);
        let d2 = m(1, &[&[1], &[-1], &[1]]);
        assert_eq!(homology_dims(&[d0, triangle_d1(), d2]).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn composition_must_vanish() {
        let bad = m(1, &[&[1], &[0], &[0]]);
        let err = homology_dims(&[RationalMatrix::zeros(0, 3), triangle_d1(), bad]).unwrap_err();
        assert_eq!(err, RatLinError::CompositionNonZero { degree: 1 });
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(3, &[&[2, 1, 0], &[0, 1, 4], &[1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert!(m(2, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn out_of_range_triple_is_rejected() {
        let err = RationalMatrix::from_triples(2, 2, [(2, 0, rat(1))]).unwrap_err();
        assert!(matches!(err, RatLinError::IndexOutOfRange { row: 2, .. }));
    }
}
