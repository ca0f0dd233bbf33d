//! Poincaré polynomials of complements `C^{2n} \ V(f_G)` for chordal graphs,
//! kept in factored form, and the homotopy-group report.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{chordal_build_order, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("the complete-graph formula needs n >= 2, got {0}")]
    TooSmall(usize),
    #[error("graph is not chordal; chordless cycle {0:?}")]
    NotChordal(Vec<usize>),
    #[error(transparent)]
    Graph(GraphError),
    #[error("bad Poincaré JSON: {0}")]
    Json(String),
}

impl From<GraphError> for TopologyError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotChordal(c) => TopologyError::NotChordal(c),
            other => TopologyError::Graph(other),
        }
    }
}

/// Univariate integer polynomial in `t`; `coeffs[k]` multiplies `t^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `1 + b·t`.
    pub fn linear(b: u64) -> Self {
        Self::new(vec![BigInt::one(), BigInt::from(b)])
    }

    /// `1 + t^3`.
    pub fn cubic() -> Self {
        Self::from_i64s(&[1, 0, 0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return UniPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        (0..k).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, "-")?,
                (false, false) => write!(f, "+")?,
                (true, false) => {}
            }
            first = false;
            let coef = if abs.is_one() && k > 0 {
                String::new()
            } else {
                abs.to_string()
            };
            match k {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A product of factors with multiplicities. Equality compares expansions.
#[derive(Debug, Clone, Default)]
pub struct FactoredUniPoly {
    factors: Vec<(UniPoly, u32)>,
}

impl FactoredUniPoly {
    pub fn one() -> Self {
        Self::default()
    }

    /// Multiplies in `factor^mult`; trivial factors are dropped and equal
    /// factors merged.
    pub fn push(&mut self, factor: UniPoly, mult: u32) {
        if mult == 0 || factor.is_one() {
            return;
        }
        match self.factors.iter_mut().find(|(f, _)| *f == factor) {
            Some((_, m)) => *m += mult,
            None => {
                self.factors.push((factor, mult));
                // Higher degree first, then by coefficients: (1+t^3)(1+t)(1+2t)...
                self.factors
                    .sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
            }
        }
    }

    pub fn times(mut self, other: &FactoredUniPoly) -> FactoredUniPoly {
        for (f, m) in &other.factors {
            self.push(f.clone(), *m);
        }
        self
    }

    pub fn factors(&self) -> &[(UniPoly, u32)] {
        &self.factors
    }

    pub fn expand(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    /// Number of degree-one factors, counted with multiplicity.
    pub fn linear_term_count(&self) -> u32 {
        self.factors
            .iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(_, m)| m)
            .sum()
    }

    pub fn cubic_present(&self) -> bool {
        self.factors.iter().any(|(f, _)| *f == UniPoly::cubic())
    }

    pub fn to_json(&self) -> PoincareJson {
        let nums = |p: &UniPoly| p.coeffs().iter().map(big_to_number).collect();
        PoincareJson {
            factored: self.factors.iter().map(|(f, m)| (nums(f), *m)).collect(),
            expanded: nums(&self.expand()),
            linear_term_count: self.linear_term_count(),
            cubic_present: self.cubic_present(),
        }
    }

    pub fn from_json(j: &PoincareJson) -> Result<Self, TopologyError> {
        let mut out = FactoredUniPoly::one();
        for (coeffs, m) in &j.factored {
            let cs = coeffs
                .iter()
                .map(number_to_big)
                .collect::<Result<Vec<_>, _>>()?;
            out.push(UniPoly::new(cs), *m);
        }
        let expanded = j
            .expanded
            .iter()
            .map(number_to_big)
            .collect::<Result<Vec<_>, _>>()?;
        if UniPoly::new(expanded) != out.expand() {
            return Err(TopologyError::Json(
                "expanded form disagrees with factors".into(),
            ));
        }
        Ok(out)
    }
}

impl PartialEq for FactoredUniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.expand() == other.expand()
    }
}

impl fmt::Display for FactoredUniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (p, m) in &self.factors {
            if *m == 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})^{m}")?;
            }
        }
        Ok(())
    }
}

/// Wire form of a factored Poincaré polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoincareJson {
    pub factored: Vec<(Vec<serde_json::Number>, u32)>,
    pub expanded: Vec<serde_json::Number>,
    pub linear_term_count: u32,
    pub cubic_present: bool,
}

fn big_to_number(b: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&b.to_string()).expect("integers are valid JSON numbers")
}

fn number_to_big(n: &serde_json::Number) -> Result<BigInt, TopologyError> {
    n.to_string()
        .parse()
        .map_err(|_| TopologyError::Json(format!("'{n}' is not an integer")))
}

/// `∏ (1 + b_i t)` for a free arrangement with basis degrees `b_i`.
pub fn terao_poincare(degrees: &[u64]) -> FactoredUniPoly {
    let mut p = FactoredUniPoly::one();
    for &b in degrees {
        p.push(UniPoly::linear(b), 1);
    }
    p
}

/// `(1+t^3)(1+t)^(n−1) ∏_{k=1}^{n−2} (1+kt)` for the complete graph.
pub fn poincare_complete(n: usize) -> Result<FactoredUniPoly, TopologyError> {
    if n < 2 {
        return Err(TopologyError::TooSmall(n));
    }
    let mut p = FactoredUniPoly::one();
    p.push(UniPoly::cubic(), 1);
    p.push(UniPoly::linear(1), (n - 1) as u32);
    for k in 1..=n - 2 {
        p.push(UniPoly::linear(k as u64), 1);
    }
    Ok(p)
}

/// Poincaré polynomial of the complement for a chordal graph, built one
/// column at a time along [`chordal_build_order`].
///
/// The first edge of a component contributes `GL(2)`: `(1+t^3)(1+t)`. Each
/// later vertex with `d` earlier neighbours adds a fibre `C^2` minus `d`
/// lines through the origin: `(1+t)(1+(d−1)t)`. Isolated vertices add `1`.
pub fn poincare_chordal(g: &Graph) -> Result<FactoredUniPoly, TopologyError> {
    let build = chordal_build_order(g)?;
    let mut p = FactoredUniPoly::one();
    for (k, &d) in build.earlier.iter().enumerate() {
        if d == 0 {
            continue;
        }
        // Components are contiguous in the build order and each starts at a
        // vertex with no earlier neighbours.
        if build.earlier[k - 1] == 0 {
            debug_assert_eq!(d, 1);
            p.push(UniPoly::cubic(), 1);
            p.push(UniPoly::linear(1), 1);
        } else {
            p.push(UniPoly::linear(1), 1);
            p.push(UniPoly::linear(d as u64 - 1), 1);
        }
    }
    Ok(p)
}

/// Betti numbers: the coefficients of the expansion.
pub fn betti(p: &FactoredUniPoly) -> Vec<BigInt> {
    p.expand().coeffs().to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub pi1: String,
    pub pi2: String,
    pub pi_i_for_i_ge_3: String,
}

/// Homotopy groups of the complement; only available for chordal graphs.
pub fn homotopy_report(g: &Graph) -> Result<HomotopyReport, TopologyError> {
    chordal_build_order(g)?;
    Ok(HomotopyReport {
        pi1: "extension data only, not computed".into(),
        pi2: "0".into(),
        pi_i_for_i_ge_3: "isomorphic to pi_i(S^3)".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn product(factors: &[(UniPoly, u32)]) -> FactoredUniPoly {
        let mut p = FactoredUniPoly::one();
        for (f, m) in factors {
            p.push(f.clone(), *m);
        }
        p
    }

    #[test]
    fn terao_examples() {
        assert_eq!(betti(&terao_poincare(&[])), ints(&[1]));
        let n = 5;
        let fiber = terao_poincare(&[1, n - 1]);
        assert_eq!(
            fiber.expand(),
            UniPoly::linear(1).mul(&UniPoly::linear(n - 1))
        );
        assert_eq!(terao_poincare(&[1, 1, 1]).to_string(), "(1+t)^3");
        assert_eq!(terao_poincare(&[0]).to_string(), "1");
    }

    #[test]
    fn complete_examples() {
        let p2 = poincare_complete(2).unwrap();
        assert_eq!(p2.to_string(), "(1+t^3)(1+t)");
        assert_eq!(
            p2.factors(),
            &[(UniPoly::cubic(), 1), (UniPoly::linear(1), 1)]
        );
        let p4 = poincare_complete(4).unwrap();
        assert_eq!(p4.to_string(), "(1+t^3)(1+t)^4(1+2t)");
        let p3 = poincare_complete(3).unwrap();
        assert_eq!(
            p3,
            product(&[(UniPoly::cubic(), 1), (UniPoly::linear(1), 3)])
        );
        assert_eq!(poincare_complete(1), Err(TopologyError::TooSmall(1)));
    }

    #[test]
    fn chordal_examples() {
        for n in 2..=8 {
            assert_eq!(
                poincare_chordal(&Graph::complete(n)).unwrap(),
                poincare_complete(n).unwrap()
            );
        }
        assert_eq!(
            poincare_chordal(&Graph::path(3)).unwrap().to_string(),
            "(1+t^3)(1+t)^2"
        );
        let edge = Graph::new(2, [(1, 2)]).unwrap();
        assert_eq!(poincare_chordal(&edge).unwrap().to_string(), "(1+t^3)(1+t)");
        assert!(matches!(
            poincare_chordal(&Graph::cycle(4)),
            Err(TopologyError::NotChordal(_))
        ));
    }

    #[test]
    fn isolated_vertices_contribute_one() {
        assert!(poincare_chordal(&Graph::empty(3))
            .unwrap()
            .expand()
            .is_one());
        let g = Graph::new(4, [(2, 4)]).unwrap();
        assert_eq!(poincare_chordal(&g).unwrap(), poincare_complete(2).unwrap());
    }

    #[test]
    fn betti_examples() {
        assert_eq!(
            betti(&poincare_complete(2).unwrap()),
            ints(&[1, 1, 0, 1, 1])
        );
        assert_eq!(betti(&FactoredUniPoly::one()), ints(&[1]));
        assert_eq!(betti(&poincare_complete(4).unwrap())[1], BigInt::from(6));
    }

    #[test]
    fn linear_and_cubic_counts() {
        let p = poincare_complete(4).unwrap();
        assert_eq!(p.linear_term_count(), 5);
        assert!(p.cubic_present());
        assert!(!terao_poincare(&[1, 2]).cubic_present());
    }

    #[test]
    fn homotopy_examples() {
        let r = homotopy_report(&Graph::complete(4)).unwrap();
        assert_eq!(r.pi2, "0");
        assert_eq!(homotopy_report(&Graph::path(5)).unwrap(), r);
        assert!(matches!(
            homotopy_report(&Graph::cycle(4)),
            Err(TopologyError::NotChordal(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = poincare_complete(6).unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: PoincareJson = serde_json::from_str(&text).unwrap();
        assert_eq!(FactoredUniPoly::from_json(&back).unwrap(), p);
        assert!(
            text.starts_with(r#"{"factored":[[[1,0,0,1],1],[[1,1],6],[[1,2],1]"#),
            "{text}"
        );
    }

    #[test]
    fn json_rejects_inconsistent_expansion() {
        let mut j = poincare_complete(3).unwrap().to_json();
        j.expanded.pop();
        assert!(FactoredUniPoly::from_json(&j).is_err());
    }

    #[test]
    fn display_unipoly() {
        assert_eq!(UniPoly::from_i64s(&[1, -2, 0, 3]).to_string(), "1-2t+3t^3");
        assert_eq!(UniPoly::new(vec![]).to_string(), "0");
    }
}
