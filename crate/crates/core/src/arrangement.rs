//! 2×2 minors of the generic matrix and the arrangements they cut out.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::graphs::Graph;
use crate::polyring::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("minor indices must satisfy 1 <= i < j <= n, got ({i}, {j}) with n = {n}")]
    BadMinor { i: usize, j: usize, n: usize },
    #[error("Plücker residual needs column indices i < j < k < l <= n, got {0:?} with n = {1}")]
    BadQuadruple([usize; 4], usize),
    #[error("the graph has no edges, so there is no divisor")]
    NoEdges,
}

/// `Δ_ij = x_i y_j − x_j y_i` in the ring with `n` columns.
pub fn minor(i: usize, j: usize, n: usize) -> Result<Polynomial, ArrangementError> {
    if i == 0 || i >= j || j > n {
        return Err(ArrangementError::BadMinor { i, j, n });
    }
    let ring = Ring::new(n);
    Ok(&(&ring.x(i) * &ring.y(j)) - &(&ring.x(j) * &ring.y(i)))
}

/// `Δ_ik Δ_jl − Δ_ij Δ_kl − Δ_il Δ_jk`, identically zero.
pub fn plucker_residual(
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    n: usize,
) -> Result<Polynomial, ArrangementError> {
    if !(i >= 1 && i < j && j < k && k < l && l <= n) {
        return Err(ArrangementError::BadQuadruple([i, j, k, l], n));
    }
    let d = |a, b| minor(a, b, n).expect("checked");
    Ok(&(&(&d(i, k) * &d(j, l)) - &(&d(i, j) * &d(k, l))) - &(&d(i, l) * &d(j, k)))
}

/// The union of the hypersurfaces `V(Δ_ij)` over the edges of a graph.
#[derive(Debug)]
pub struct Arrangement {
    graph: Graph,
    defining: OnceLock<Polynomial>,
}

impl Clone for Arrangement {
    fn clone(&self) -> Self {
        let defining = OnceLock::new();
        if let Some(p) = self.defining.get() {
            let _ = defining.set(p.clone());
        }
        Arrangement {
            graph: self.graph.clone(),
            defining,
        }
    }
}

impl Arrangement {
    pub fn new(graph: Graph) -> Self {
        Arrangement {
            graph,
            defining: OnceLock::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::new(Graph::complete(n))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.n())
    }

    /// The minors `(i, j, Δ_ij)` for each edge, in edge order.
    pub fn minors(&self) -> Vec<((usize, usize), Polynomial)> {
        self.graph
            .edges()
            .map(|(i, j)| {
                (
                    (i, j),
                    minor(i, j, self.n()).expect("graph edges are valid"),
                )
            })
            .collect()
    }

    /// Total degree of the defining polynomial, `2·|edges|`.
    pub fn degree(&self) -> u32 {
        2 * self.graph.edge_count() as u32
    }

    /// `f = ∏ Δ_ij` over the edges, computed once and cached.
    pub fn defining_poly(&self) -> Result<&Polynomial, ArrangementError> {
        if self.graph.edge_count() == 0 {
            return Err(ArrangementError::NoEdges);
        }
        Ok(self.defining.get_or_init(|| {
            self.minors()
                .into_iter()
                .fold(self.ring().one(), |acc, (_, d)| &acc * &d)
        }))
    }

    /// `f` evaluated at a dense point (x1, y1, x2, y2, ...) as a product of
    /// evaluated minors, without expanding `f`.
    pub fn eval_defining(&self, point: &[BigInt]) -> BigInt {
        let col = |i: usize| (&point[2 * (i - 1)], &point[2 * (i - 1) + 1]);
        self.graph.edges().fold(BigInt::one(), |acc, (i, j)| {
            let ((xi, yi), (xj, yj)) = (col(i), col(j));
            acc * (xi * yj - xj * yi)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::VarId;
    use std::collections::HashMap;

    #[test]
    fn minor_examples() {
        let ring = Ring::new(4);
        assert_eq!(
            minor(1, 2, 4).unwrap(),
            ring.parse("x1*y2 - x2*y1").unwrap()
        );
        let d = minor(1, 2, 4).unwrap();
        let same: HashMap<VarId, BigInt> = [
            (VarId::x(1), 3),
            (VarId::y(1), -2),
            (VarId::x(2), 3),
            (VarId::y(2), -2),
        ]
        .into_iter()
        .map(|(v, c)| (v, BigInt::from(c)))
        .collect();
        assert_eq!(d.eval(&same).unwrap(), BigInt::from(0));
        let id: HashMap<VarId, BigInt> = [
            (VarId::x(2), 1),
            (VarId::y(2), 0),
            (VarId::x(4), 0),
            (VarId::y(4), 1),
        ]
        .into_iter()
        .map(|(v, c)| (v, BigInt::from(c)))
        .collect();
        assert_eq!(minor(2, 4, 4).unwrap().eval(&id).unwrap(), BigInt::from(1));
    }

    #[test]
    fn reversed_minor_is_an_error() {
        assert!(minor(2, 1, 3).is_err());
        assert!(minor(2, 2, 3).is_err());
        assert!(minor(0, 1, 3).is_err());
        assert!(minor(1, 4, 3).is_err());
    }

    #[test]
    fn defining_poly_examples() {
        let single = Arrangement::new(Graph::new(2, [(1, 2)]).unwrap());
        assert_eq!(single.defining_poly().unwrap(), &minor(1, 2, 2).unwrap());

        let k3 = Arrangement::complete(3);
        let f = k3.defining_poly().unwrap();
        let expected =
            &(&minor(1, 2, 3).unwrap() * &minor(1, 3, 3).unwrap()) * &minor(2, 3, 3).unwrap();
        assert_eq!(f, &expected);
        assert_eq!(f.degree(), Some(6));

        let path = Arrangement::new(Graph::path(3));
        let f = path.defining_poly().unwrap();
        assert_eq!(f, &(&minor(1, 2, 3).unwrap() * &minor(2, 3, 3).unwrap()));
        assert_eq!(f.degree(), Some(4));

        assert_eq!(
            Arrangement::new(Graph::empty(3)).defining_poly(),
            Err(ArrangementError::NoEdges)
        );
    }

    #[test]
    fn plucker_examples() {
        assert!(plucker_residual(1, 2, 3, 4, 4).unwrap().is_zero());
        assert!(plucker_residual(1, 2, 3, 5, 5).unwrap().is_zero());
        assert!(plucker_residual(2, 3, 4, 6, 6).unwrap().is_zero());
        assert!(plucker_residual(1, 3, 2, 4, 4).is_err());
        assert!(plucker_residual(1, 2, 3, 5, 4).is_err());
    }

    #[test]
    fn eval_defining_matches_expansion() {
        let a = Arrangement::complete(4);
        let pt: Vec<BigInt> = [3, -1, 4, 1, -5, 9, 2, 6]
            .into_iter()
            .map(BigInt::from)
            .collect();
        assert_eq!(
            a.eval_defining(&pt),
            a.defining_poly().unwrap().eval_dense(&pt).unwrap()
        );
    }
}
