//! Finite groups given by multiplication tables, with a few named presets.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub type Element = usize;

/// Associativity is checked exhaustively up to this order.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("multiplication table is not square (row {row} has {len} entries, expected {order})")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table entry {0} is not an element")]
    EntryOutOfRange(usize),
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(Element),
    #[error("({0} * {1}) * {2} != {0} * ({1} * {2})")]
    NotAssociative(Element, Element, Element),
    #[error("empty group")]
    Empty,
    #[error("unknown group preset {0:?}")]
    UnknownPreset(String),
    #[error("generator images do not extend to a homomorphism")]
    NotHomomorphism,
    #[error("expected {expected} generator images, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("elements {0:?} do not form a subgroup")]
    NotSubgroup(Vec<Element>),
}

/// A finite group on the elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Element>,
    inv: Vec<Element>,
    identity: Element,
    generators: Vec<Element>,
}

impl FiniteGroup {
    /// Validates the group axioms on `table[a][b] = a * b`.
    pub fn from_table(rows: &[Vec<Element>]) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    order,
                });
            }
            if let Some(&bad) = r.iter().find(|&&x| x >= order) {
                return Err(GroupError::EntryOutOfRange(bad));
            }
            table.extend_from_slice(r);
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] == a && table[a * order + e] == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = Vec::with_capacity(order);
        for a in 0..order {
            let b = (0..order)
                .find(|&b| table[a * order + b] == identity && table[b * order + a] == identity)
                .ok_or(GroupError::NoInverse(a))?;
            inv.push(b);
        }
        if order <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b];
                    for c in 0..order {
                        let bc = table[b * order + c];
                        if table[ab * order + c] != table[a * order + bc] {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        }
        let mut g = Self {
            order,
            table,
            inv,
            identity,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Replaces the generating set used to extend homomorphisms.
    pub fn with_generators(mut self, generators: Vec<Element>) -> Result<Self, GroupError> {
        if let Some(&bad) = generators.iter().find(|&&x| x >= self.order) {
            return Err(GroupError::EntryOutOfRange(bad));
        }
        if self.generated_subgroup(&generators).len() != self.order {
            return Err(GroupError::NotSubgroup(generators));
        }
        self.generators = generators;
        Ok(self)
    }

    fn greedy_generators(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<Element> = [self.identity].into_iter().collect();
        for g in 0..self.order {
            if !span.contains(&g) {
                gens.push(g);
                span = self.generated_subgroup(&gens).into_iter().collect();
            }
        }
        gens
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n` as `Z/n` with generator `1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order zero");
        let rows: Vec<Vec<Element>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let g = Self::from_table(&rows).expect("Z/n is a group");
        let gens = if n == 1 { Vec::new() } else { vec![1] };
        g.with_generators(gens).expect("1 generates Z/n")
    }

    /// Dihedral group of order `2n`: element `k` is `r^k`, `n + k` is `r^k s`.
    /// Generators: `r = 1`, `s = n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral group needs n >= 1");
        let elem = |rot: usize, refl: bool| if refl { n + rot % n } else { rot % n };
        let rows: Vec<Vec<Element>> = (0..2 * n)
            .map(|a| {
                let (ra, fa) = (a % n, a >= n);
                (0..2 * n)
                    .map(|b| {
                        let (rb, fb) = (b % n, b >= n);
                        // r^a s^fa r^b s^fb = r^(a ± b) s^(fa xor fb)
                        let rot = if fa { ra + n - rb } else { ra + rb };
                        elem(rot, fa ^ fb)
                    })
                    .collect()
            })
            .collect();
        let g = Self::from_table(&rows).expect("dihedral table is a group");
        let gens = if n == 1 { vec![1] } else { vec![1, n] };
        g.with_generators(gens).expect("r and s generate")
    }

    /// Symmetric group on `n <= 6` letters; elements are permutations in
    /// lexicographic order, so `0` is the identity.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=6).contains(&n), "symmetric preset supports 1..=6 letters");
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let rows: Vec<Vec<Element>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (a * b)(i) = a(b(i))
                        let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        let g = Self::from_table(&rows).expect("composition table is a group");
        if n <= 1 {
            return g;
        }
        let mut transposition: Vec<usize> = (0..n).collect();
        transposition.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let gens = if n == 2 {
            vec![index(&transposition)]
        } else {
            vec![index(&transposition), index(&cycle)]
        };
        g.with_generators(gens).expect("transposition and n-cycle generate")
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let n = a.order * b.order;
        let split = |x: usize| (x / b.order, x % b.order);
        let rows: Vec<Vec<Element>> = (0..n)
            .map(|x| {
                let (xa, xb) = split(x);
                (0..n)
                    .map(|y| {
                        let (ya, yb) = split(y);
                        a.mul(xa, ya) * b.order + b.mul(xb, yb)
                    })
                    .collect()
            })
            .collect();
        let g = Self::from_table(&rows).expect("product of groups");
        let gens = a
            .generators
            .iter()
            .map(|&x| x * b.order + b.identity)
            .chain(b.generators.iter().map(|&y| a.identity * b.order + y))
            .collect();
        g.with_generators(gens).expect("factor generators generate")
    }

    /// `C<n>`, `D<n>` (order `2n`), `S<n>`, `V4`, `1` / `trivial`.
    pub fn preset(name: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::UnknownPreset(String::from(name));
        let trimmed = name.trim();
        match trimmed {
            "1" | "trivial" | "C1" => return Ok(Self::trivial()),
            "V4" => return Ok(Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))),
            _ => {}
        }
        let (kind, rest) = trimmed.split_at(trimmed.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
        let n: usize = rest.parse().map_err(|_| unknown())?;
        match kind {
            "C" | "Z" if (1..=4096).contains(&n) => Ok(Self::cyclic(n)),
            "D" if (1..=2048).contains(&n) => Ok(Self::dihedral(n)),
            "S" if (1..=6).contains(&n) => Ok(Self::symmetric(n)),
            _ => Err(unknown()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn elements(&self) -> core::ops::Range<Element> {
        0..self.order
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: Element) -> Element {
        self.inv[a]
    }

    /// Multiplication table rows, as accepted by [`Self::from_table`].
    pub fn table_rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    /// Sorted elements of `⟨gens⟩`.
    pub fn generated_subgroup(&self, gens: &[Element]) -> Vec<Element> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue: VecDeque<Element> = [self.identity].into_iter().collect();
        while let Some(g) = queue.pop_front() {
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        (0..self.order).filter(|&g| seen[g]).collect()
    }

    pub fn is_subgroup(&self, elems: &[Element]) -> bool {
        let set: BTreeSet<Element> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| {
                a < self.order && set.contains(&self.inv(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b)))
            })
    }

    /// Extends generator images to a map `self -> target`; fails if the
    /// images are inconsistent with the relations of `self`.
    pub fn extend_homomorphism(
        &self,
        target: &FiniteGroup,
        images: &[Element],
    ) -> Result<Vec<Element>, GroupError> {
        if images.len() != self.generators.len() {
            return Err(GroupError::GeneratorCount {
                expected: self.generators.len(),
                got: images.len(),
            });
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= target.order) {
            return Err(GroupError::EntryOutOfRange(bad));
        }
        let mut map: Vec<Option<Element>> = vec![None; self.order];
        map[self.identity] = Some(target.identity);
        let mut queue: VecDeque<Element> = [self.identity].into_iter().collect();
        while let Some(g) = queue.pop_front() {
            let fg = map[g].expect("queued elements are mapped");
            for (&s, &fs) in self.generators.iter().zip(images) {
                let h = self.mul(g, s);
                let fh = target.mul(fg, fs);
                match map[h] {
                    None => {
                        map[h] = Some(fh);
                        queue.push_back(h);
                    }
                    Some(existing) if existing != fh => return Err(GroupError::NotHomomorphism),
                    Some(_) => {}
                }
            }
        }
        Ok(map.into_iter().map(|x| x.expect("generators span the group")).collect())
    }

    /// Whether the full element map `phi` is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, phi: &[Element]) -> bool {
        phi.len() == self.order
            && phi.iter().all(|&x| x < target.order)
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| phi[self.mul(a, b)] == target.mul(phi[a], phi[b]))
            })
    }

    pub fn describe(&self) -> String {
        format!("group of order {}", self.order)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}
