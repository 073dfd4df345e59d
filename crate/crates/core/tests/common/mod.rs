//! Brute-force oracles and random instance generators shared by the
//! integration tests. Nothing here calls the elimination code under test.

#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdlc_core::coxeter::CartanMatrix;
use tdlc_core::graphs_of_groups::{build, GraphOfFiniteGroups, Representation};
use tdlc_core::group::FiniteGroup;
use tdlc_core::{Rational, RationalMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank by plain dense row reduction, first nonzero pivot.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone() * &inv;
                for j in c..cols {
                    let d = f.clone() * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn dense(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.to_dense()
}

/// Random downward-closed family on `n` vertices, generated by a few random
/// maximal simplices of dimension at most `max_dim`.
pub fn random_maximal_simplices(rng: &mut impl Rng, n: usize, max_dim: usize) -> Vec<Vec<usize>> {
    let count = rng.gen_range(1..=6);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=(max_dim + 1).min(n));
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(rng);
            v.truncate(size);
            v.sort_unstable();
            v
        })
        .collect()
}

/// Simplices of dimension `q` of the complex generated by `maximal`, listed
/// independently of the library.
pub fn faces_of_dim(maximal: &[Vec<usize>], q: usize) -> Vec<Vec<usize>> {
    let mut out = std::collections::BTreeSet::new();
    for s in maximal {
        for mask in 1u32..(1 << s.len()) {
            if mask.count_ones() as usize == q + 1 {
                out.insert((0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect::<Vec<_>>());
            }
        }
    }
    out.into_iter().collect()
}

/// Betti numbers from dense boundary matrices built here.
pub fn betti_oracle(maximal: &[Vec<usize>]) -> Vec<usize> {
    let top = maximal.iter().map(|s| s.len()).max().unwrap_or(0);
    if top == 0 {
        return Vec::new();
    }
    let levels: Vec<Vec<Vec<usize>>> = (0..top).map(|q| faces_of_dim(maximal, q)).collect();
    let ranks: Vec<usize> = (0..top)
        .map(|q| {
            if q == 0 {
                return 0;
            }
            let rows: Vec<Vec<Rational>> = levels[q - 1]
                .iter()
                .map(|face| {
                    levels[q]
                        .iter()
                        .map(|s| match (0..s.len()).find(|&j| {
                            let mut f = s.clone();
                            f.remove(j);
                            f == *face
                        }) {
                            Some(j) if j % 2 == 0 => Rational::one(),
                            Some(_) => -Rational::one(),
                            None => Rational::zero(),
                        })
                        .collect()
                })
                .collect();
            dense_rank(&rows)
        })
        .collect();
    (0..top)
        .map(|q| levels[q].len() - ranks[q] - ranks.get(q + 1).copied().unwrap_or(0))
        .collect()
}

/// Union-find connectivity and acyclicity of a multigraph with loops.
pub fn forest_oracle(n: usize, pairs: &[(usize, usize)]) -> (usize, bool) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut acyclic = true;
    let mut components = n;
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            acyclic = false;
        } else {
            parent[ra] = rb;
            components -= 1;
        }
    }
    (components, acyclic)
}

pub fn random_pairs(rng: &mut impl Rng, n: usize, max_edges: usize) -> Vec<(usize, usize)> {
    let m = rng.gen_range(0..=max_edges);
    (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
}

/// A small zoo of finite groups with orders up to 120.
pub fn random_group(rng: &mut impl Rng) -> FiniteGroup {
    match rng.gen_range(0..7) {
        0 => FiniteGroup::cyclic(rng.gen_range(1..=12)),
        1 => FiniteGroup::dihedral(rng.gen_range(2..=10)),
        2 => FiniteGroup::symmetric(rng.gen_range(2..=4)),
        3 => FiniteGroup::symmetric(5),
        4 => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::dihedral(rng.gen_range(2..=6))),
        5 => FiniteGroup::direct_product(&FiniteGroup::cyclic(rng.gen_range(2..=4)), &FiniteGroup::cyclic(rng.gen_range(2..=6))),
        _ => FiniteGroup::preset("V4").unwrap(),
    }
}

/// Dense product of two square rational matrices given as rows.
pub fn dense_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Random Coxeter matrix with labels in `{2, 3, 4, 6, ∞}`; `0` encodes `∞`.
pub fn random_coxeter_matrix(rng: &mut impl Rng, n: usize) -> Vec<Vec<u32>> {
    let mut m = vec![vec![1u32; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let label = [2, 2, 2, 3, 3, 4, 6, 0][rng.gen_range(0..8)];
            m[i][j] = label;
            m[j][i] = label;
        }
    }
    m
}

/// Crystallographic Cartan matrix with the given Coxeter matrix; `∞` is
/// realized by the affine `A1` block.
pub fn cartan_of(m: &[Vec<u32>]) -> CartanMatrix {
    let n = m.len();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        for j in i + 1..n {
            let (x, y) = match m[i][j] {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-1, -2),
                6 => (-1, -3),
                _ => (-2, -2),
            };
            a[i][j] = x;
            a[j][i] = y;
        }
    }
    CartanMatrix::new(a).unwrap()
}

/// Spherical subsets as masks, decided by enumerating the parabolic
/// subgroup in the Cartan realization (rank ≤ 4: finite means at most
/// 1152 elements).
pub fn spherical_masks_oracle(m: &[Vec<u32>]) -> Vec<u64> {
    let n = m.len();
    assert!(n <= 4);
    let cart = cartan_of(m);
    (0u64..1 << n)
        .filter(|&mask| {
            let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            matches!(cart.principal_submatrix(&subset).enumerate_by_length_capped(30, 2_000), Ok(c) if c.len() <= 25)
        })
        .collect()
}

/// All chains of a poset of masks ordered by strict inclusion, as sorted
/// lists of positions in `masks`.
pub fn order_complex_oracle(masks: &[u64]) -> Vec<Vec<usize>> {
    fn extend(masks: &[u64], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(chain.clone());
        let last = *chain.last().unwrap();
        for j in 0..masks.len() {
            if masks[j] != masks[last] && masks[j] & masks[last] == masks[last] && j > last {
                chain.push(j);
                extend(masks, chain, out);
                chain.pop();
            }
        }
    }
    let mut order: Vec<usize> = (0..masks.len()).collect();
    order.sort_by_key(|&i| (masks[i].count_ones(), masks[i]));
    let sorted: Vec<u64> = order.iter().map(|&i| masks[i]).collect();
    let mut out = Vec::new();
    for i in 0..sorted.len() {
        extend(&sorted, &mut vec![i], &mut out);
    }
    out
}

/// `dim H^k(K, L; Q)` for `L ⊆ K` given as simplex lists, from the dense
/// quotient chain complex `C(K)/C(L)`.
pub fn relative_betti_oracle(k: &[Vec<usize>], l: &[Vec<usize>]) -> Vec<usize> {
    let top = k.iter().map(Vec::len).max().unwrap_or(0);
    let cells: Vec<Vec<Vec<usize>>> = (1..=top)
        .map(|len| {
            let mut c: Vec<Vec<usize>> = k.iter().filter(|s| s.len() == len && !l.contains(s)).cloned().collect();
            c.sort();
            c
        })
        .collect();
    // ∂_q : C_q → C_{q−1} on relative cells, as dense rows indexed by C_{q−1}.
    let rank_boundary = |q: usize| -> usize {
        if q == 0 || q >= cells.len() {
            return 0;
        }
        let rows: Vec<Vec<Rational>> = cells[q - 1]
            .iter()
            .map(|face| {
                cells[q]
                    .iter()
                    .map(|s| match (0..s.len()).find(|&i| {
                        let mut f = s.clone();
                        f.remove(i);
                        f == *face
                    }) {
                        Some(i) if i % 2 == 0 => Rational::one(),
                        Some(_) => -Rational::one(),
                        None => Rational::zero(),
                    })
                    .collect()
            })
            .collect();
        dense_rank(&rows)
    };
    (0..cells.len()).map(|q| cells[q].len() - rank_boundary(q) - rank_boundary(q + 1)).collect()
}

pub fn small_group(r: &mut impl Rng) -> FiniteGroup {
    match r.gen_range(0..5) {
        0 => FiniteGroup::cyclic(r.gen_range(1..=6)),
        1 => FiniteGroup::dihedral(r.gen_range(2..=4)),
        2 => FiniteGroup::symmetric(3),
        3 => FiniteGroup::preset("V4").unwrap(),
        _ => FiniteGroup::cyclic(1),
    }
}

pub fn element_order(g: &FiniteGroup, x: usize) -> usize {
    let mut k = 1;
    let mut y = x;
    while y != g.identity() {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// Edge group `C_k` embedded through elements of order `k` at both ends.
pub fn random_edge(r: &mut impl Rng, a: &FiniteGroup, b: &FiniteGroup) -> (FiniteGroup, Vec<usize>, Vec<usize>) {
    if r.gen_bool(0.3) {
        return (FiniteGroup::cyclic(1), vec![], vec![]);
    }
    let x = r.gen_range(0..b.order());
    let k = element_order(b, x);
    let candidates: Vec<usize> = a.elements().filter(|&y| element_order(a, y) == k).collect();
    if k == 1 || candidates.is_empty() {
        return (FiniteGroup::cyclic(1), vec![], vec![]);
    }
    let y = candidates[r.gen_range(0..candidates.len())];
    (FiniteGroup::cyclic(k), vec![x], vec![y])
}

/// Random connected graph of small finite groups: a random spanning tree
/// plus a few extra edges and loops.
pub fn random_gog(r: &mut impl Rng, max_vertices: usize) -> GraphOfFiniteGroups {
    let n = r.gen_range(1..=max_vertices);
    let groups: Vec<FiniteGroup> = (0..n).map(|_| small_group(r)).collect();
    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((r.gen_range(0..v), v));
    }
    for _ in 0..r.gen_range(0..=2) {
        pairs.push((r.gen_range(0..n), r.gen_range(0..n)));
    }
    let edges = pairs
        .into_iter()
        .map(|(o, t)| {
            let (g, into_t, into_o) = random_edge(r, &groups[o], &groups[t]);
            (o, t, g, into_t, into_o)
        })
        .collect();
    build(groups, edges).unwrap()
}

/// Euler characteristic recomputed after repeatedly contracting non-loop
/// edges whose embedding into the terminus is onto; returns the value and
/// whether the contracted graph is a single vertex without edges.
pub fn collapsed_chi(g: &GraphOfFiniteGroups) -> (Rational, bool) {
    let graph = g.graph();
    let mut vertices: Vec<Option<usize>> = (0..graph.num_vertices()).map(|v| Some(g.vertex_group(v).order())).collect();
    let mut rep: Vec<usize> = (0..graph.num_vertices()).collect();
    let mut edges: Vec<(usize, usize, usize)> = graph
        .positive_edges()
        .into_iter()
        .map(|e| (graph.origin(e), graph.terminus(e), g.edge_group(e).order()))
        .collect();
    let find = |rep: &Vec<usize>, mut v: usize| {
        while rep[v] != v {
            v = rep[v];
        }
        v
    };
    loop {
        let pick = edges.iter().find_map(|&(o, t, ae)| {
            let (o, t) = (find(&rep, o), find(&rep, t));
            if o == t {
                None
            } else if vertices[t] == Some(ae) {
                Some((o, t, ae))
            } else if vertices[o] == Some(ae) {
                Some((t, o, ae))
            } else {
                None
            }
        });
        let Some((keep, drop, ae)) = pick else { break };
        let i = edges.iter().position(|&(o, t, a)| a == ae && {
            let (o, t) = (find(&rep, o), find(&rep, t));
            (o, t) == (keep, drop) || (o, t) == (drop, keep)
        });
        edges.remove(i.unwrap());
        vertices[drop] = None;
        rep[drop] = keep;
    }
    let mut chi = Rational::zero();
    for order in vertices.iter().flatten() {
        chi += Rational::new((1).into(), (*order).into());
    }
    for &(_, _, ae) in &edges {
        chi -= Rational::new((1).into(), ae.into());
    }
    let single = vertices.iter().flatten().count() == 1 && edges.is_empty();
    (chi, single)
}

pub fn trivial_rep(g: &GraphOfFiniteGroups) -> Representation {
    let one = RationalMatrix::identity(1);
    Representation {
        dim: 1,
        vertex_generators: (0..g.graph().num_vertices())
            .map(|v| vec![one.clone(); g.vertex_group(v).generators().len()])
            .collect(),
        edge_letters: vec![one; g.graph().positive_edges().len()],
    }
}
