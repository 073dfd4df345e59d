//! Coxeter systems and crystallographic Weyl groups.
//!
//! Sphericity is decided from the classification of connected finite
//! Coxeter diagrams, so non-crystallographic labels are fine. Lengths are
//! enumerated only for integer Cartan matrices, where the simple reflections
//! act on the root lattice by `s_i(x)_i = x_i − Σ_j a_ij x_j`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{IntPolynomial, IntSeries};
use crate::ratlin::Rational;

/// Default cap on the number of group elements a length enumeration may visit.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("m[{0}][{1}] != m[{1}][{0}]")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry {0} must be 1")]
    BadDiagonal(usize),
    #[error("off-diagonal label m[{0}][{1}] must be at least 2")]
    LabelTooSmall(usize, usize),
    #[error("Cartan entry ({i}, {j}): {reason}")]
    InvalidCartan { i: usize, j: usize, reason: &'static str },
    #[error("the Coxeter group is infinite")]
    NotFiniteType,
    #[error("enumeration visited more than {0} elements")]
    StateExplosion(usize),
    #[error("integer overflow in the reflection representation")]
    Overflow,
    #[error("polynomial {0} is not a product of t-analogues")]
    NotAProductOfTAnalogues(String),
    #[error("unknown type {0:?}")]
    UnknownPreset(String),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("q must be a rational number greater than 1, got {0}")]
    BadQ(String),
}

/// A Coxeter label `m_st`; `1` only on the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoxeterLabel {
    Finite(u32),
    Infinity,
}

impl CoxeterLabel {
    /// Whether `s` and `t` are joined in the diagram (`m_st ≥ 3`).
    pub fn is_edge(self) -> bool {
        !matches!(self, CoxeterLabel::Finite(m) if m <= 2)
    }
}

impl fmt::Display for CoxeterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterLabel::Finite(m) => write!(f, "{m}"),
            CoxeterLabel::Infinity => write!(f, "inf"),
        }
    }
}

/// Connected finite Coxeter types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral of order `2m`, for `m ∉ {3, 4}` (those are `A2`, `B2`).
    I2(u32),
}

impl FiniteType {
    /// Degrees of the basic invariants; `|W| = ∏ d_i`.
    pub fn degrees(self) -> Vec<u64> {
        match self {
            FiniteType::A(n) => (2..=n as u64 + 1).collect(),
            FiniteType::B(n) => (1..=n as u64).map(|k| 2 * k).collect(),
            FiniteType::D(n) => {
                let mut d: Vec<u64> = (1..n as u64).map(|k| 2 * k).collect();
                d.push(n as u64);
                d.sort_unstable();
                d
            }
            FiniteType::E6 => vec![2, 5, 6, 8, 9, 12],
            FiniteType::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            FiniteType::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            FiniteType::F4 => vec![2, 6, 8, 12],
            FiniteType::H3 => vec![2, 6, 10],
            FiniteType::H4 => vec![2, 12, 20, 30],
            FiniteType::I2(m) => vec![2, m as u64],
        }
    }

    pub fn rank(self) -> usize {
        self.degrees().len()
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => write!(f, "E6"),
            FiniteType::E7 => write!(f, "E7"),
            FiniteType::E8 => write!(f, "E8"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::H3 => write!(f, "H3"),
            FiniteType::H4 => write!(f, "H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// `∏ [d_i]_t`.
pub fn poincare_from_degrees(degrees: &[u64]) -> IntPolynomial {
    degrees
        .iter()
        .fold(IntPolynomial::one(), |acc, &d| acc.mul(&IntPolynomial::t_analogue(d as usize)))
}

/// A Coxeter matrix on generators `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    m: Vec<Vec<CoxeterLabel>>,
}

impl CoxeterSystem {
    pub fn new(m: Vec<Vec<CoxeterLabel>>) -> Result<Self, CoxeterError> {
        let n = m.len();
        if m.iter().any(|row| row.len() != n) {
            return Err(CoxeterError::NotSquare);
        }
        for i in 0..n {
            if m[i][i] != CoxeterLabel::Finite(1) {
                return Err(CoxeterError::BadDiagonal(i));
            }
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(CoxeterError::NotSymmetric(i, j));
                }
                if i != j && matches!(m[i][j], CoxeterLabel::Finite(x) if x < 2) {
                    return Err(CoxeterError::LabelTooSmall(i, j));
                }
            }
        }
        Ok(Self { m })
    }

    /// Entries `0` stand for `∞`.
    pub fn from_u32(rows: &[Vec<u32>]) -> Result<Self, CoxeterError> {
        Self::new(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| if x == 0 { CoxeterLabel::Infinity } else { CoxeterLabel::Finite(x) })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn label(&self, s: usize, t: usize) -> CoxeterLabel {
        self.m[s][t]
    }

    pub fn matrix(&self) -> &[Vec<CoxeterLabel>] {
        &self.m
    }

    /// Connected components of the diagram restricted to `subset`, each sorted.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &set {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                for &t in &set {
                    if t != s && self.m[s][t].is_edge() && seen.insert(t) {
                        comp.push(t);
                        stack.push(t);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Finite type of a connected subdiagram, or `None` if `W_T` is infinite.
    pub fn classify_component(&self, comp: &[usize]) -> Option<FiniteType> {
        let n = comp.len();
        let label = |a: usize, b: usize| self.m[comp[a]][comp[b]];
        match n {
            0 => return None,
            1 => return Some(FiniteType::A(1)),
            2 => {
                return match label(0, 1) {
                    CoxeterLabel::Infinity => None,
                    CoxeterLabel::Finite(3) => Some(FiniteType::A(2)),
                    CoxeterLabel::Finite(4) => Some(FiniteType::B(2)),
                    CoxeterLabel::Finite(m) => Some(FiniteType::I2(m)),
                }
            }
            _ => {}
        }
        let mut adj = vec![Vec::new(); n];
        let mut heavy = Vec::new();
        let mut num_edges = 0;
        for a in 0..n {
            for b in a + 1..n {
                match label(a, b) {
                    CoxeterLabel::Infinity => return None,
                    CoxeterLabel::Finite(m) if m >= 3 => {
                        adj[a].push(b);
                        adj[b].push(a);
                        num_edges += 1;
                        if m > 3 {
                            heavy.push((a, b, m));
                        }
                    }
                    _ => {}
                }
            }
        }
        if num_edges != n - 1 {
            return None;
        }
        let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
        if branch.is_empty() {
            let ends: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
            let mut order = vec![ends[0]];
            while order.len() < n {
                let last = *order.last().unwrap();
                let prev = if order.len() >= 2 { Some(order[order.len() - 2]) } else { None };
                let next = adj[last].iter().copied().find(|&x| Some(x) != prev).unwrap();
                order.push(next);
            }
            return match heavy.as_slice() {
                [] => Some(FiniteType::A(n)),
                [(a, b, m)] => {
                    let pos = |v: usize| order.iter().position(|&x| x == v).unwrap();
                    let (pa, pb) = (pos(*a).min(pos(*b)), pos(*a).max(pos(*b)));
                    let at_end = pa == 0 || pb == n - 1;
                    match (*m, at_end, n) {
                        (4, true, _) => Some(FiniteType::B(n)),
                        (4, false, 4) => Some(FiniteType::F4),
                        (5, true, 3) => Some(FiniteType::H3),
                        (5, true, 4) => Some(FiniteType::H4),
                        _ => None,
                    }
                }
                _ => None,
            };
        }
        if branch.len() > 1 || !heavy.is_empty() || adj[branch[0]].len() > 3 {
            return None;
        }
        let center = branch[0];
        let mut arms: Vec<usize> = adj[center]
            .iter()
            .map(|&first| {
                let (mut prev, mut cur, mut len) = (center, first, 1);
                while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                len
            })
            .collect();
        arms.sort_unstable();
        match (arms[0], arms[1], arms[2]) {
            (1, 1, k) => Some(FiniteType::D(k + 3)),
            (1, 2, 2) => Some(FiniteType::E6),
            (1, 2, 3) => Some(FiniteType::E7),
            (1, 2, 4) => Some(FiniteType::E8),
            _ => None,
        }
    }

    /// Finite types of the components of `subset`, or `None` if `W_T` is infinite.
    pub fn finite_types(&self, subset: &[usize]) -> Option<Vec<FiniteType>> {
        self.components(subset)
            .iter()
            .map(|c| self.classify_component(c))
            .collect()
    }

    pub fn is_spherical(&self, subset: &[usize]) -> bool {
        self.finite_types(subset).is_some()
    }

    pub fn is_finite(&self) -> bool {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.is_spherical(&all)
    }

    /// `p_{W_T}(t)` from the classification data.
    pub fn poincare_poly_of(&self, subset: &[usize]) -> Result<IntPolynomial, CoxeterError> {
        let types = self.finite_types(subset).ok_or(CoxeterError::NotFiniteType)?;
        let degrees: Vec<u64> = types.iter().flat_map(|t| t.degrees()).collect();
        Ok(poincare_from_degrees(&degrees))
    }
}

/// A generalized Cartan matrix: `a_ii = 2`, `a_ij ≤ 0`, `a_ij = 0 ⟺ a_ji = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self, CoxeterError> {
        let n = a.len();
        if a.iter().any(|r| r.len() != n) {
            return Err(CoxeterError::NotSquare);
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(CoxeterError::InvalidCartan { i, j: i, reason: "diagonal entry must be 2" });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 {
                    return Err(CoxeterError::InvalidCartan { i, j, reason: "off-diagonal entry must be non-positive" });
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(CoxeterError::InvalidCartan { i, j, reason: "zero pattern must be symmetric" });
                }
            }
        }
        Ok(Self { a })
    }

    /// Finite types `A1.., B2.., C2.., D4.., E6-8, F4, G2`; affine types with a
    /// prefix `affine `, `~` or suffix `~`: `A1.., B3.., C2.., D4.., E6-8, F4, G2`.
    pub fn preset(name: &str) -> Result<Self, CoxeterError> {
        let unknown = || CoxeterError::UnknownPreset(name.to_string());
        let trimmed = name.trim();
        let (affine, core) = if let Some(rest) = trimmed.strip_prefix("affine") {
            (true, rest.trim())
        } else if let Some(rest) = trimmed.strip_prefix('~') {
            (true, rest.trim())
        } else if let Some(rest) = trimmed.strip_suffix('~') {
            (true, rest.trim())
        } else {
            (false, trimmed)
        };
        let mut chars = core.chars();
        let letter = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
        let a = if affine {
            affine_cartan(letter, n)
        } else {
            finite_cartan(letter, n)
        }
        .ok_or_else(unknown)?;
        Self::new(a)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self {
            a: idx.iter().map(|&i| idx.iter().map(|&j| self.a[i][j]).collect()).collect(),
        }
    }

    /// `a_ij a_ji = 0, 1, 2, 3` gives `m_ij = 2, 3, 4, 6`; larger products give `∞`.
    pub fn coxeter_system(&self) -> CoxeterSystem {
        let n = self.rank();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            return CoxeterLabel::Finite(1);
                        }
                        match self.a[i][j] * self.a[j][i] {
                            0 => CoxeterLabel::Finite(2),
                            1 => CoxeterLabel::Finite(3),
                            2 => CoxeterLabel::Finite(4),
                            3 => CoxeterLabel::Finite(6),
                            _ => CoxeterLabel::Infinity,
                        }
                    })
                    .collect()
            })
            .collect();
        CoxeterSystem { m }
    }

    pub fn is_finite_type(&self) -> bool {
        self.coxeter_system().is_finite()
    }

    /// Number of Weyl group elements of each length `0..=max_len`, truncated
    /// after the last nonempty length.
    pub fn enumerate_by_length(&self, max_len: usize) -> Result<Vec<u64>, CoxeterError> {
        self.enumerate_by_length_capped(max_len, DEFAULT_STATE_CAP)
    }

    pub fn enumerate_by_length_capped(&self, max_len: usize, cap: usize) -> Result<Vec<u64>, CoxeterError> {
        let n = self.rank();
        let identity: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
        let mut counts = vec![1u64];
        let mut visited = 1usize;
        let mut previous: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut current: BTreeSet<Vec<i64>> = [identity].into_iter().collect();
        // ℓ(ws) = ℓ(w) ± 1, so new elements can only collide with the two
        // neighbouring layers.
        while counts.len() <= max_len {
            let mut next = BTreeSet::new();
            for w in &current {
                for i in 0..n {
                    let sw = self.reflect(i, w)?;
                    if !previous.contains(&sw) && !current.contains(&sw) && next.insert(sw) {
                        visited += 1;
                        if visited > cap {
                            return Err(CoxeterError::StateExplosion(cap));
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            counts.push(next.len() as u64);
            previous = core::mem::replace(&mut current, next);
        }
        Ok(counts)
    }

    /// `s_i · w` for `w` an `n × n` row-major matrix on the simple-root basis.
    fn reflect(&self, i: usize, w: &[i64]) -> Result<Vec<i64>, CoxeterError> {
        let n = self.rank();
        let mut out = w.to_vec();
        for col in 0..n {
            let mut acc = w[i * n + col];
            for j in 0..n {
                let term = self.a[i][j].checked_mul(w[j * n + col]).ok_or(CoxeterError::Overflow)?;
                acc = acc.checked_sub(term).ok_or(CoxeterError::Overflow)?;
            }
            out[i * n + col] = acc;
        }
        Ok(out)
    }

    /// `p_W(t) = Σ_w t^{ℓ(w)}` by full enumeration; the type must be finite.
    pub fn poincare_poly(&self) -> Result<IntPolynomial, CoxeterError> {
        if !self.is_finite_type() {
            return Err(CoxeterError::NotFiniteType);
        }
        let counts = self.enumerate_by_length(usize::MAX)?;
        Ok(IntPolynomial::new(counts.into_iter().map(BigInt::from).collect()))
    }
}

fn path(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

fn join(a: &mut [Vec<i64>], i: usize, j: usize) {
    a[i][j] = -1;
    a[j][i] = -1;
}

fn unjoin(a: &mut [Vec<i64>], i: usize, j: usize) {
    a[i][j] = 0;
    a[j][i] = 0;
}

/// Star with a centre and arms of the given lengths.
fn star(arms: &[usize]) -> Vec<Vec<i64>> {
    let n = 1 + arms.iter().sum::<usize>();
    let mut a = path(n);
    for i in 0..n - 1 {
        unjoin(&mut a, i, i + 1);
    }
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            join(&mut a, prev, next);
            prev = next;
            next += 1;
        }
    }
    a
}

fn finite_cartan(letter: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let a = match (letter, n) {
        ('A', n) if n >= 1 => path(n),
        ('B', n) if n >= 2 => {
            let mut a = path(n);
            a[n - 2][n - 1] = -2;
            a
        }
        ('C', n) if n >= 2 => {
            let mut a = path(n);
            a[n - 1][n - 2] = -2;
            a
        }
        ('D', n) if n >= 4 => {
            let mut a = path(n);
            unjoin(&mut a, n - 2, n - 1);
            join(&mut a, n - 3, n - 1);
            a
        }
        ('E', 6) => star(&[1, 2, 2]),
        ('E', 7) => star(&[1, 2, 3]),
        ('E', 8) => star(&[1, 2, 4]),
        ('F', 4) => {
            let mut a = path(4);
            a[1][2] = -2;
            a
        }
        ('G', 2) => vec![vec![2, -1], vec![-3, 2]],
        _ => return None,
    };
    Some(a)
}

fn affine_cartan(letter: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let a = match (letter, n) {
        ('A', 1) => vec![vec![2, -2], vec![-2, 2]],
        ('A', n) if n >= 2 => {
            let mut a = path(n + 1);
            join(&mut a, 0, n);
            a
        }
        ('B', n) if n >= 3 => {
            let mut a = path(n + 1);
            unjoin(&mut a, 0, 1);
            join(&mut a, 0, 2);
            a[n - 1][n] = -2;
            a
        }
        ('C', n) if n >= 2 => {
            let mut a = path(n + 1);
            a[1][0] = -2;
            a[n - 1][n] = -2;
            a
        }
        ('D', n) if n >= 4 => {
            let mut a = path(n + 1);
            unjoin(&mut a, 0, 1);
            join(&mut a, 0, 2);
            unjoin(&mut a, n - 1, n);
            join(&mut a, n - 2, n);
            a
        }
        ('E', 6) => star(&[2, 2, 2]),
        ('E', 7) => star(&[1, 3, 3]),
        ('E', 8) => star(&[1, 2, 5]),
        ('F', 4) => {
            let mut a = path(5);
            a[2][3] = -2;
            a
        }
        ('G', 2) => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -3, 2]],
        _ => return None,
    };
    Some(a)
}

/// Exponents `m_i` with `p = ∏ [m_i + 1]_t`, increasing.
///
/// The largest `d` with `[d]_t | p` is always the largest degree, so
/// dividing greedily from the top recovers the multiset.
pub fn exponents(p: &IntPolynomial) -> Result<Vec<usize>, CoxeterError> {
    let fail = || CoxeterError::NotAProductOfTAnalogues(p.to_string());
    let mut rest = p.clone();
    let mut degrees = Vec::new();
    while rest.degree().ok_or_else(fail)? > 0 {
        let top = rest.degree().unwrap() + 1;
        let (d, q) = (2..=top)
            .rev()
            .find_map(|d| rest.div_exact_monic(&IntPolynomial::t_analogue(d)).map(|q| (d, q)))
            .ok_or_else(fail)?;
        degrees.push(d as u64);
        rest = q;
    }
    if !rest.coeff(0).is_one() {
        return Err(fail());
    }
    if poincare_from_degrees(&degrees) != *p {
        return Err(fail());
    }
    let mut m: Vec<usize> = degrees.into_iter().map(|d| d as usize - 1).collect();
    m.sort_unstable();
    Ok(m)
}

/// `p_W(t) / ∏ (1 − t^{m_i})`, truncated after degree `precision`.
pub fn bott_series(finite: &CartanMatrix, precision: usize) -> Result<IntSeries, CoxeterError> {
    let p = finite.poincare_poly()?;
    let mut series = IntSeries::from_poly(&p, precision);
    for m in exponents(&p)? {
        series = series.mul(&IntSeries::geometric(m, precision));
    }
    Ok(series)
}

/// Compares the Bott series of `finite` with the length counts of `affine`
/// up to degree `n`.
pub fn bott_check(finite: &CartanMatrix, affine: &CartanMatrix, n: usize) -> Result<bool, CoxeterError> {
    let lhs = bott_series(finite, n)?;
    let counts = affine.enumerate_by_length(n)?;
    Ok((0..=n).all(|k| lhs.coeffs()[k] == BigInt::from(counts.get(k).copied().unwrap_or(0))))
}

/// Both sides of the parahoric alternating-sum identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltSumReport {
    /// `Σ_{I ⊊ S} (−1)^{|I|−1} / p_{W(I)}(q)`.
    pub lhs: Rational,
    /// `(−1)^{|S|} / p_W̃(q)` with `p_W̃(q) = p_W(q) / ∏ (1 − q^{m_i})`.
    pub rhs: Rational,
    pub holds: bool,
    /// Nodes of the finite Weyl group `W` used for `p_W̃`.
    pub finite_nodes: Vec<usize>,
}

/// The finite Weyl group of an affine diagram: the proper maximal parabolic
/// of largest order (obtained by deleting a special node).
pub fn special_parabolic(affine: &CartanMatrix) -> Result<Vec<usize>, CoxeterError> {
    let n = affine.rank();
    let sys = affine.coxeter_system();
    let mut best: Option<(BigInt, Vec<usize>)> = None;
    for drop in 0..n {
        let nodes: Vec<usize> = (0..n).filter(|&i| i != drop).collect();
        let order = sys.poincare_poly_of(&nodes)?.eval_int(&BigInt::one());
        if best.as_ref().is_none_or(|(o, _)| order > *o) {
            best = Some((order, nodes));
        }
    }
    best.map(|(_, nodes)| nodes).ok_or(CoxeterError::NotFiniteType)
}

/// `p_W̃(q)` for an affine diagram, from the special parabolic and its
/// exponents; `q > 1`.
pub fn affine_poincare_value(affine: &CartanMatrix, q: &Rational) -> Result<Rational, CoxeterError> {
    if *q <= Rational::one() {
        return Err(CoxeterError::BadQ(q.to_string()));
    }
    let nodes = special_parabolic(affine)?;
    let p = affine.principal_submatrix(&nodes).poincare_poly()?;
    let mut den = Rational::one();
    for m in exponents(&p)? {
        den *= Rational::one() - num_traits::pow(q.clone(), m);
    }
    Ok(p.eval(q) / den)
}

/// Requires `q > 1`, so that no Poincaré polynomial vanishes at `q`.
pub fn alternating_sum_identity(affine: &CartanMatrix, q: &Rational) -> Result<AltSumReport, CoxeterError> {
    if *q <= Rational::one() {
        return Err(CoxeterError::BadQ(q.to_string()));
    }
    let size = affine.rank();
    if size < 2 {
        return Err(CoxeterError::NotFiniteType);
    }
    let mut lhs = Rational::zero();
    for mask in 0u64..(1u64 << size) - 1 {
        let subset: Vec<usize> = (0..size).filter(|&i| mask >> i & 1 == 1).collect();
        let p = affine.principal_submatrix(&subset).poincare_poly()?;
        let term = Rational::one() / p.eval(q);
        if subset.len() % 2 == 1 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let pw = affine_poincare_value(affine, q)?;
    let sign = if size.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let rhs = sign / pw;
    Ok(AltSumReport {
        holds: lhs == rhs,
        lhs,
        rhs,
        finite_nodes: special_parabolic(affine)?,
    })
}
