//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients over the coordinate ring of the generic 2×n matrix,
//! `Z[x1..xn, y1..yn]`.
//!
//! Terms are kept sorted in descending graded reverse-lexicographic order
//! with no zero coefficients, so structural equality is polynomial equality.

mod monomial;
pub mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

pub use monomial::{Monomial, VarId, VarKind};
pub use parse::{parse_expr, Expr, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient mismatch: {0} columns vs {1} columns")]
    AmbientMismatch(usize, usize),
    #[error("variable {var} out of range for a ring with {n} columns")]
    VarOutOfRange { var: VarId, n: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no value assigned to variable {0}")]
    Unassigned(VarId),
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { got: usize, expected: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("derivation symbol {0} is not allowed in a polynomial")]
    UnexpectedPartial(String),
}

/// The polynomial ring `Z[x1..xn, y1..yn]` for a fixed column count `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    n: usize,
}

impl Ring {
    pub fn new(n: usize) -> Self {
        Ring { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    pub fn check_var(&self, v: VarId) -> Result<(), PolyError> {
        if v.index == 0 || v.index > self.n {
            Err(PolyError::VarOutOfRange { var: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn var(&self, v: VarId) -> Result<Polynomial, PolyError> {
        self.check_var(v)?;
        Ok(Polynomial {
            n: self.n,
            terms: vec![(Monomial::var(v, self.n), BigInt::one())],
        })
    }

    /// `x_i`; panics if `i` is not a column of this ring.
    pub fn x(&self, i: usize) -> Polynomial {
        self.var(VarId::x(i)).expect("column index out of range")
    }

    /// `y_i`; panics if `i` is not a column of this ring.
    pub fn y(&self, i: usize) -> Polynomial {
        self.var(VarId::y(i)).expect("column index out of range")
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.n)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(BigInt::one(), self.n)
    }

    pub fn constant(&self, c: impl Into<BigInt>) -> Polynomial {
        Polynomial::constant(c.into(), self.n)
    }

    /// All 2n variables in ring order x1, y1, x2, y2, ...
    pub fn variables(&self) -> impl Iterator<Item = VarId> {
        (0..self.nvars()).map(VarId::from_slot)
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial, PolyError> {
        let e = parse_expr(src)?;
        self.eval_expr(&e)
    }

    pub fn eval_expr(&self, e: &Expr) -> Result<Polynomial, PolyError> {
        Ok(match e {
            Expr::Int(k) => self.constant(k.clone()),
            Expr::Var(v) => self.var(*v)?,
            Expr::Partial(v) => return Err(PolyError::UnexpectedPartial(format!("d/d{v}"))),
            Expr::Neg(a) => -&self.eval_expr(a)?,
            Expr::Add(a, b) => &self.eval_expr(a)? + &self.eval_expr(b)?,
            Expr::Sub(a, b) => &self.eval_expr(a)? - &self.eval_expr(b)?,
            Expr::Mul(a, b) => &self.eval_expr(a)? * &self.eval_expr(b)?,
            Expr::Pow(a, k) => self.eval_expr(a)?.pow(*k),
        })
    }

    /// Random polynomial in the given variables: up to `max_terms` terms of
    /// total degree at most `max_degree`, coefficients in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        vars: &[VarId],
        max_degree: u32,
        max_terms: usize,
        bound: i64,
    ) -> Polynomial {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        let nterms = rng.gen_range(0..=max_terms);
        for _ in 0..nterms {
            let deg = rng.gen_range(0..=max_degree);
            let mut m = Monomial::one(self.n);
            for _ in 0..deg {
                if vars.is_empty() {
                    break;
                }
                let v = vars[rng.gen_range(0..vars.len())];
                m = m.mul(&Monomial::var(v, self.n));
            }
            let c = BigInt::from(rng.gen_range(-bound..=bound));
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Polynomial::from_map(self.n, acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    /// Descending canonical order, nonzero coefficients only.
    terms: Vec<(Monomial, BigInt)>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: BigInt, n: usize) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(n), c)]
        };
        Polynomial { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(n, acc)
    }

    fn from_map(n: usize, acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { n, terms }
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.n)
    }

    /// Number of matrix columns of the ambient ring.
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    /// Total degree; `None` for the zero polynomial (degree −∞).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        use std::cmp::Ordering::*;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &BigInt| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial {
            n: self.n,
            terms: out,
        }
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.n));
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Ok(Self::from_map(self.n, acc))
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        // Multiplying by a monomial preserves the term order.
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::constant(BigInt::one(), self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `p / d` over the integers, or `Ok(None)` when `d` does
    /// not divide `p` in `Z[x, y]`.
    ///
    /// Runs multivariate division by the single divisor `d` in the canonical
    /// term order; any term that the leading term of `d` cannot absorb (or a
    /// coefficient that does not divide) would end up in the remainder.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
        self.check(d)?;
        let (lm, lc) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Some(Polynomial::zero(self.n)));
        }
        if let Some(c) = d.as_constant() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, a) in &self.terms {
                let (q, r) = a.div_rem(&c);
                if !r.is_zero() {
                    return Ok(None);
                }
                terms.push((m.clone(), q));
            }
            return Ok(Some(Polynomial { n: self.n, terms }));
        }
        if self.degree() < d.degree() {
            return Ok(None);
        }
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let Some(qm) = m.div(lm) else {
                return Ok(None);
            };
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Ok(None);
            }
            for (dm, dc) in d.terms.iter().skip(1) {
                let key = dm.mul(&qm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Ok(Some(Polynomial {
            n: self.n,
            terms: quot,
        }))
    }

    pub fn partial_derivative(&self, v: VarId) -> Polynomial {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(v) {
                *acc.entry(lowered).or_insert_with(BigInt::zero) += c * BigInt::from(e);
            }
        }
        Self::from_map(self.n, acc)
    }

    /// Evaluates at a point given per variable. Variables that do not occur
    /// in `self` need not be assigned.
    pub fn eval(&self, point: &HashMap<VarId, BigInt>) -> Result<BigInt, PolyError> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.support() {
                let value = point.get(&v).ok_or(PolyError::Unassigned(v))?;
                t *= value.pow(u32::from(e));
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluates at a dense point in ring order x1, y1, x2, y2, ...
    pub fn eval_dense(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != 2 * self.n {
            return Err(PolyError::PointLength {
                got: point.len(),
                expected: 2 * self.n,
            });
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= point[s].pow(u32::from(e));
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Replaces each variable `v` by `map(v)`; all images must share the ambient.
    pub fn substitute(&self, map: impl Fn(VarId) -> Polynomial) -> Polynomial {
        let ring = self.ring();
        let images: Vec<Polynomial> = ring.variables().map(&map).collect();
        let mut out = match images.first() {
            Some(p) => Polynomial::zero(p.n),
            None => Polynomial::zero(self.n),
        };
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), out.n);
            for (s, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[s].pow(u32::from(e));
                }
            }
            out = &out + &t;
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on ambient mismatch; use the `try_` method to handle it.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial ambient mismatch")
            }
        }

        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: usize) -> Ring {
        Ring::new(n)
    }

    fn delta(ring: Ring, i: usize, j: usize) -> Polynomial {
        &(&ring.x(i) * &ring.y(j)) - &(&ring.x(j) * &ring.y(i))
    }

    #[test]
    fn add_examples() {
        let ring = r(2);
        let t = &ring.x(1) * &ring.y(2);
        assert!((&t + &(-&t)).is_zero());
        assert_eq!(&t + &ring.zero(), t);
        let sum = &delta(ring, 1, 2) + &(&ring.x(2) * &ring.y(1));
        assert_eq!(sum, t);
    }

    #[test]
    fn mul_examples() {
        let ring = r(2);
        let p = delta(ring, 1, 2);
        assert_eq!(&p * &ring.one(), p);
        assert!((&p * &ring.zero()).is_zero());
        let q = &(&ring.x(1) * &ring.y(2)) + &(&ring.x(2) * &ring.y(1));
        let expected = ring.parse("x1^2*y2^2 - x2^2*y1^2").unwrap();
        assert_eq!(&p * &q, expected);
    }

    #[test]
    fn exact_div_examples() {
        let ring = r(3);
        let d12 = delta(ring, 1, 2);
        let d13 = delta(ring, 1, 3);
        assert_eq!(ring.zero().exact_div(&d12).unwrap(), Some(ring.zero()));
        assert_eq!((&d12 * &d13).exact_div(&d12).unwrap(), Some(d13));
        let x1y2 = &ring.x(1) * &ring.y(2);
        assert_eq!(x1y2.exact_div(&d12).unwrap(), None);
        assert_eq!(d12.exact_div(&ring.zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn exact_div_requires_integral_content() {
        let ring = r(1);
        let p = ring.parse("3*x1 + 3").unwrap();
        let d = ring.parse("2*x1 + 2").unwrap();
        assert_eq!(p.exact_div(&d).unwrap(), None);
        let p = ring.parse("4*x1 + 4").unwrap();
        assert_eq!(p.exact_div(&d).unwrap(), Some(ring.constant(2)));
        assert_eq!(p.exact_div(&ring.constant(3)).unwrap(), None);
    }

    #[test]
    fn partial_examples() {
        let ring = r(2);
        assert_eq!(delta(ring, 1, 2).partial_derivative(VarId::y(2)), ring.x(1));
        assert!(ring.constant(7).partial_derivative(VarId::x(1)).is_zero());
        let sq = ring.x(1).pow(2);
        assert_eq!(
            sq.partial_derivative(VarId::x(1)),
            ring.x(1).scale(&BigInt::from(2))
        );
    }

    #[test]
    fn eval_examples() {
        let ring = r(2);
        let d = delta(ring, 1, 2);
        let pt = |x1: i64, y1: i64, x2: i64, y2: i64| -> HashMap<VarId, BigInt> {
            [
                (VarId::x(1), x1),
                (VarId::y(1), y1),
                (VarId::x(2), x2),
                (VarId::y(2), y2),
            ]
            .into_iter()
            .map(|(v, c)| (v, BigInt::from(c)))
            .collect()
        };
        assert_eq!(d.eval(&pt(1, 0, 0, 1)).unwrap(), BigInt::from(1));
        assert_eq!(ring.zero().eval(&HashMap::new()).unwrap(), BigInt::zero());
        assert_eq!(d.eval(&pt(2, 7, 5, 3)).unwrap(), BigInt::from(-29));
        assert!(matches!(
            d.eval(&HashMap::new()),
            Err(PolyError::Unassigned(_))
        ));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = r(2).x(1);
        let b = r(3).x(1);
        assert_eq!(a.try_add(&b), Err(PolyError::AmbientMismatch(2, 3)));
        assert_eq!(a.try_mul(&b), Err(PolyError::AmbientMismatch(2, 3)));
        assert!(a.exact_div(&b).is_err());
    }

    #[test]
    fn degree_of_zero_is_distinct() {
        let ring = r(2);
        assert_eq!(ring.zero().degree(), None);
        assert_eq!(ring.one().degree(), Some(0));
        assert_eq!(delta(ring, 1, 2).degree(), Some(2));
    }

    #[test]
    fn display_and_parse_agree() {
        let ring = r(3);
        let p = ring.parse("-(x1 - 2*y3)^3 + 5*x2*y1 - 1").unwrap();
        let text = p.to_string();
        assert_eq!(ring.parse(&text).unwrap(), p);
        assert_eq!(delta(ring, 1, 2).to_string(), "-y1*x2 + x1*y2");
        assert_eq!(ring.zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_out_of_range_and_partials() {
        let ring = r(2);
        assert!(matches!(
            ring.parse("x3"),
            Err(PolyError::VarOutOfRange { .. })
        ));
        assert!(matches!(
            ring.parse("x1*d/dx1"),
            Err(PolyError::UnexpectedPartial(_))
        ));
    }

    #[test]
    fn random_is_seed_deterministic() {
        let ring = r(3);
        let vars: Vec<_> = ring.variables().collect();
        let a = ring.random(&mut ChaCha8Rng::seed_from_u64(9), &vars, 4, 6, 5);
        let b = ring.random(&mut ChaCha8Rng::seed_from_u64(9), &vars, 4, 6, 5);
        assert_eq!(a, b);
    }

    fn arb_poly(ring: Ring) -> impl Strategy<Value = Polynomial> {
        any::<u64>().prop_map(move |seed| {
            let vars: Vec<_> = ring.variables().collect();
            ring.random(&mut ChaCha8Rng::seed_from_u64(seed), &vars, 4, 5, 9)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn ring_axioms(p in arb_poly(r(3)), q in arb_poly(r(3)), s in arb_poly(r(3))) {
            prop_assert_eq!(&(&p + &q) + &s, &p + &(&q + &s));
            prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        }

        #[test]
        fn exact_div_inverts_mul(p in arb_poly(r(3)), d in arb_poly(r(3))) {
            prop_assume!(!d.is_zero());
            let prod = &p * &d;
            prop_assert_eq!(prod.exact_div(&d).unwrap(), Some(p));
        }

        #[test]
        fn partials_commute(p in arb_poly(r(3)), a in 0usize..6, b in 0usize..6) {
            let (u, v) = (VarId::from_slot(a), VarId::from_slot(b));
            prop_assert_eq!(
                p.partial_derivative(u).partial_derivative(v),
                p.partial_derivative(v).partial_derivative(u)
            );
        }

        #[test]
        fn eval_is_a_homomorphism(
            p in arb_poly(r(3)),
            q in arb_poly(r(3)),
            pt in proptest::collection::vec(-50i64..50, 6),
        ) {
            let pt: Vec<BigInt> = pt.into_iter().map(BigInt::from).collect();
            let e = |x: &Polynomial| x.eval_dense(&pt).unwrap();
            prop_assert_eq!(e(&(&p * &q)), e(&p) * e(&q));
            prop_assert_eq!(e(&(&p + &q)), e(&p) + e(&q));
        }

        #[test]
        fn display_round_trips(p in arb_poly(r(3))) {
            prop_assert_eq!(r(3).parse(&p.to_string()).unwrap(), p);
        }
    }
}
