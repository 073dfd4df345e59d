//! Finite windows into infinite locally finite complexes.
//!
//! `H^q_c(X)` is the colimit of `H^q(X, X ∖ B)` over finite subcomplexes
//! `B`. For a graph-like `X` and a combinatorial ball `B_R`, excision turns
//! `H^q(X, X ∖ B_R)` into `H^q(B_R, ∂B_R)` with `∂B_R` the frontier, so a
//! window is the pair `(B_R, ∂B_R)`.

use alloc::vec;
use alloc::vec::Vec;

use super::{relative_cohomology, SimplicialComplex, SimplicialError};

pub trait BallWindow {
    /// The ball of the given radius and its frontier subcomplex.
    fn window(
        &self,
        radius: usize,
    ) -> Result<(SimplicialComplex, SimplicialComplex), SimplicialError>;
}

impl<F> BallWindow for F
where
    F: Fn(usize) -> Result<(SimplicialComplex, SimplicialComplex), SimplicialError>,
{
    fn window(
        &self,
        radius: usize,
    ) -> Result<(SimplicialComplex, SimplicialComplex), SimplicialError> {
        self(radius)
    }
}

/// `dim H^q(B_R, ∂B_R)` for each requested radius.
pub fn ball_sphere_growth<W: BallWindow + ?Sized>(
    builder: &W,
    radii: &[usize],
) -> Result<Vec<Vec<usize>>, SimplicialError> {
    radii
        .iter()
        .map(|&r| {
            let (ball, frontier) = builder.window(r)?;
            relative_cohomology(&ball, &frontier)
        })
        .collect()
}

/// The real line triangulated by the integers; `B_R = [-R, R]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PathWindow;

impl BallWindow for PathWindow {
    fn window(
        &self,
        radius: usize,
    ) -> Result<(SimplicialComplex, SimplicialComplex), SimplicialError> {
        let n = 2 * radius + 1;
        if n == 1 {
            return Ok((SimplicialComplex::full(1), SimplicialComplex::full(1)));
        }
        let ball = SimplicialComplex::generated_by((0..n - 1).map(|i| vec![i, i + 1]))?;
        let frontier = SimplicialComplex::new([vec![0], vec![n - 1]])?;
        Ok((ball, frontier))
    }
}

/// A single point: every ball is the whole (compact) space, the frontier is empty.
#[derive(Clone, Copy, Debug, Default)]
pub struct PointWindow;

impl BallWindow for PointWindow {
    fn window(
        &self,
        _radius: usize,
    ) -> Result<(SimplicialComplex, SimplicialComplex), SimplicialError> {
        Ok((SimplicialComplex::full(1), SimplicialComplex::empty()))
    }
}

/// The `degree`-regular tree; vertices are numbered in breadth-first order
/// from the root, the frontier is the sphere of radius `R`.
#[derive(Clone, Copy, Debug)]
pub struct RegularTreeWindow {
    pub degree: usize,
}

impl BallWindow for RegularTreeWindow {
    fn window(
        &self,
        radius: usize,
    ) -> Result<(SimplicialComplex, SimplicialComplex), SimplicialError> {
        let mut edges = Vec::new();
        let mut layer = vec![0usize];
        let mut next_id = 1;
        for depth in 0..radius {
            let children_each = if depth == 0 {
                self.degree
            } else {
                self.degree.saturating_sub(1)
            };
            let mut next_layer = Vec::new();
            for &v in &layer {
                for _ in 0..children_each {
                    edges.push(vec![v, next_id]);
                    next_layer.push(next_id);
                    next_id += 1;
                }
            }
            layer = next_layer;
        }
        let ball = if edges.is_empty() {
            SimplicialComplex::full(1)
        } else {
            SimplicialComplex::generated_by(edges)?
        };
        let frontier = SimplicialComplex::new(layer.into_iter().map(|v| vec![v]))?;
        Ok((ball, frontier))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_has_one_class_in_degree_one() {
        let dims = ball_sphere_growth(&PathWindow, &[1, 2, 3, 5]).unwrap();
        for d in dims {
            assert_eq!(d, vec![0, 1]);
        }
    }

    #[test]
    fn point_is_compact() {
        let dims = ball_sphere_growth(&PointWindow, &[0, 4]).unwrap();
        assert_eq!(dims, vec![vec![1], vec![1]]);
    }

    #[test]
    fn trivalent_tree_counts() {
        let dims = ball_sphere_growth(&RegularTreeWindow { degree: 3 }, &[1, 2, 3]).unwrap();
        assert_eq!(dims, vec![vec![0, 2], vec![0, 5], vec![0, 11]]);
    }

    #[test]
    fn closures_are_windows() {
        let w = |r: usize| PathWindow.window(r + 1);
        assert_eq!(ball_sphere_growth(&w, &[0]).unwrap(), vec![vec![0, 1]]);
    }
}
