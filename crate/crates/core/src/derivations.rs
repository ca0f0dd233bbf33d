//! Logarithmic derivations of determinantal arrangements.
//!
//! A derivation `θ = Σ g_i ∂/∂x_i + h_i ∂/∂y_i` is logarithmic along
//! `V(f)` when `θ(f)` lies in the principal ideal `(f)`. Saito's criterion
//! says that `2n` logarithmic derivations form a free basis exactly when the
//! determinant of their coefficient matrix is a nonzero constant times `f`.

use std::borrow::Cow;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::{minor, Arrangement, ArrangementError};
use crate::polymatrix::{det_integer, k_subsets, MatrixError, PolyMatrix};
use crate::polyring::{parse_expr, Expr, ParseError, PolyError, Polynomial, Ring, VarId, VarKind};

/// Default number of sample points for randomized Saito checks.
pub const DEFAULT_SAMPLE_POINTS: usize = 32;
/// Sample coordinates are drawn uniformly from `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 1_000_000;
const RESAMPLE_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("expected {expected} derivations, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("derivation has {got} coefficients per row, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("the divisor polynomial is zero")]
    ZeroDivisor,
    #[error("the explicit basis needs n >= 3, got {0}")]
    TooFewColumns(usize),
    #[error("a_(m,k) needs n >= 4, 4 <= k <= n and 0 <= m <= n-4; got m={m}, k={k}, n={n}")]
    BadCoefficientIndex { m: usize, k: usize, n: usize },
    #[error("randomized check needs homogeneous derivations; derivation {0} is not")]
    NotHomogeneous(usize),
    #[error("all {0} sampled points lie on the divisor after resampling")]
    AllSamplesOnDivisor(usize),
    #[error("randomized check needs at least one sample point")]
    NoSamples,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: Ring,
    xcoeffs: Vec<Polynomial>,
    ycoeffs: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(
        ring: Ring,
        xcoeffs: Vec<Polynomial>,
        ycoeffs: Vec<Polynomial>,
    ) -> Result<Self, DerivationError> {
        for v in [&xcoeffs, &ycoeffs] {
            if v.len() != ring.n() {
                return Err(DerivationError::Shape {
                    expected: ring.n(),
                    got: v.len(),
                });
            }
        }
        if let Some(p) = xcoeffs
            .iter()
            .chain(&ycoeffs)
            .find(|p| p.ambient() != ring.n())
        {
            return Err(PolyError::AmbientMismatch(ring.n(), p.ambient()).into());
        }
        Ok(Derivation {
            ring,
            xcoeffs,
            ycoeffs,
        })
    }

    pub fn zero(ring: Ring) -> Self {
        Derivation {
            ring,
            xcoeffs: vec![ring.zero(); ring.n()],
            ycoeffs: vec![ring.zero(); ring.n()],
        }
    }

    /// The coordinate vector field `∂/∂v`.
    pub fn partial(ring: Ring, v: VarId) -> Result<Self, DerivationError> {
        ring.check_var(v)?;
        Ok(Self::zero(ring).with_coeff(v, ring.one()))
    }

    /// The Euler field `Σ x_i ∂/∂x_i + y_i ∂/∂y_i`.
    pub fn euler(ring: Ring) -> Self {
        let mut d = Self::zero(ring);
        for v in ring.variables() {
            d = d.with_coeff(v, ring.var(v).expect("ring variable"));
        }
        d
    }

    fn with_coeff(mut self, v: VarId, p: Polynomial) -> Self {
        let slot = v.index - 1;
        match v.kind {
            VarKind::X => self.xcoeffs[slot] = p,
            VarKind::Y => self.ycoeffs[slot] = p,
        }
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Coefficient of `∂/∂v`.
    pub fn coeff(&self, v: VarId) -> &Polynomial {
        match v.kind {
            VarKind::X => &self.xcoeffs[v.index - 1],
            VarKind::Y => &self.ycoeffs[v.index - 1],
        }
    }

    pub fn xcoeffs(&self) -> &[Polynomial] {
        &self.xcoeffs
    }

    pub fn ycoeffs(&self) -> &[Polynomial] {
        &self.ycoeffs
    }

    fn coeffs(&self) -> impl Iterator<Item = (VarId, &Polynomial)> {
        self.ring.variables().map(move |v| (v, self.coeff(v)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().all(|(_, p)| p.is_zero())
    }

    /// Largest coefficient degree; `None` for the zero derivation.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs().filter_map(|(_, p)| p.degree()).max()
    }

    /// The common degree of all coefficients when they are homogeneous of one
    /// degree; `None` otherwise or for the zero derivation.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (_, p) in self.coeffs() {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return None;
            }
            match (deg, p.degree()) {
                (None, d) => deg = d,
                (Some(a), Some(b)) if a != b => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn try_add(&self, other: &Derivation) -> Result<Derivation, DerivationError> {
        self.zip_with(other, Polynomial::try_add)
    }

    pub fn try_sub(&self, other: &Derivation) -> Result<Derivation, DerivationError> {
        self.zip_with(other, Polynomial::try_sub)
    }

    fn zip_with(
        &self,
        other: &Derivation,
        op: impl Fn(&Polynomial, &Polynomial) -> Result<Polynomial, PolyError>,
    ) -> Result<Derivation, DerivationError> {
        if self.ring != other.ring {
            return Err(PolyError::AmbientMismatch(self.ring.n(), other.ring.n()).into());
        }
        let xs = self
            .xcoeffs
            .iter()
            .zip(&other.xcoeffs)
            .map(|(a, b)| op(a, b))
            .collect::<Result<_, _>>()?;
        let ys = self
            .ycoeffs
            .iter()
            .zip(&other.ycoeffs)
            .map(|(a, b)| op(a, b))
            .collect::<Result<_, _>>()?;
        Ok(Derivation {
            ring: self.ring,
            xcoeffs: xs,
            ycoeffs: ys,
        })
    }

    /// `p · θ`.
    pub fn scaled(&self, p: &Polynomial) -> Result<Derivation, DerivationError> {
        let mul = |v: &Vec<Polynomial>| {
            v.iter()
                .map(|c| p.try_mul(c))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(Derivation {
            ring: self.ring,
            xcoeffs: mul(&self.xcoeffs)?,
            ycoeffs: mul(&self.ycoeffs)?,
        })
    }

    pub fn neg(&self) -> Derivation {
        Derivation {
            ring: self.ring,
            xcoeffs: self.xcoeffs.iter().map(|p| -p).collect(),
            ycoeffs: self.ycoeffs.iter().map(|p| -p).collect(),
        }
    }

    /// `θ(p) = Σ g_i ∂p/∂x_i + h_i ∂p/∂y_i`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, DerivationError> {
        if p.ambient() != self.ring.n() {
            return Err(PolyError::AmbientMismatch(self.ring.n(), p.ambient()).into());
        }
        let mut acc = self.ring.zero();
        for (v, g) in self.coeffs() {
            if g.is_zero() || !p.contains_var(v) {
                continue;
            }
            acc = &acc + &(g * &p.partial_derivative(v));
        }
        Ok(acc)
    }

    /// Parses one derivation such as `x1*d/dy1 + (x2 - y2)*d/dx3`.
    pub fn parse(ring: Ring, src: &str) -> Result<Derivation, DerivationError> {
        let e = parse_expr(src).map_err(|e| DerivationError::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        match eval_mixed(ring, &e)? {
            Mixed::Der(d) => Ok(d),
            Mixed::Poly(p) if p.is_zero() => Ok(Derivation::zero(ring)),
            Mixed::Poly(_) => Err(DerivationError::Parse {
                line: 1,
                message: "expression has no d/dx or d/dy factor".into(),
            }),
        }
    }
}

enum Mixed {
    Poly(Polynomial),
    Der(Derivation),
}

fn mixed_err(message: &str) -> DerivationError {
    DerivationError::Parse {
        line: 1,
        message: message.into(),
    }
}

fn eval_mixed(ring: Ring, e: &Expr) -> Result<Mixed, DerivationError> {
    use Mixed::*;
    Ok(match e {
        Expr::Int(_) | Expr::Var(_) => Poly(ring.eval_expr(e)?),
        Expr::Partial(v) => Der(Derivation::partial(ring, *v)?),
        Expr::Neg(a) => match eval_mixed(ring, a)? {
            Poly(p) => Poly(-p),
            Der(d) => Der(d.neg()),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sub = matches!(e, Expr::Sub(..));
            match (eval_mixed(ring, a)?, eval_mixed(ring, b)?) {
                (Poly(p), Poly(q)) => Poly(if sub { &p - &q } else { &p + &q }),
                (Der(d), Der(f)) => Der(if sub { d.try_sub(&f)? } else { d.try_add(&f)? }),
                _ => return Err(mixed_err("cannot add a polynomial to a derivation")),
            }
        }
        Expr::Mul(a, b) => match (eval_mixed(ring, a)?, eval_mixed(ring, b)?) {
            (Poly(p), Poly(q)) => Poly(&p * &q),
            (Poly(p), Der(d)) | (Der(d), Poly(p)) => Der(d.scaled(&p)?),
            (Der(_), Der(_)) => return Err(mixed_err("product of two derivations")),
        },
        Expr::Pow(a, k) => match eval_mixed(ring, a)? {
            Poly(p) => Poly(p.pow(*k)),
            Der(_) => return Err(mixed_err("power of a derivation")),
        },
    })
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, p) in self.coeffs() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if p.is_one() {
                write!(f, "d/d{v}")?;
            } else {
                write!(f, "({p})*d/d{v}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A derivation read from a fixture file, with its optional `label:` prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDerivation {
    pub label: String,
    pub derivation: Derivation,
}

/// Parses a derivation file: one derivation per line, optionally prefixed by
/// `label:`; blank lines and `#` comments are skipped.
pub fn parse_derivation_file(
    ring: Ring,
    text: &str,
) -> Result<Vec<LabeledDerivation>, DerivationError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (label, body) = match line.split_once(':') {
            Some((l, b)) => (l.trim().to_string(), b),
            None => (format!("line{}", k + 1), line),
        };
        let derivation = Derivation::parse(ring, body).map_err(|e| match e {
            DerivationError::Parse { message, .. } => DerivationError::Parse {
                line: k + 1,
                message,
            },
            other => DerivationError::Parse {
                line: k + 1,
                message: other.to_string(),
            },
        })?;
        out.push(LabeledDerivation { label, derivation });
    }
    Ok(out)
}

impl From<ParseError> for DerivationError {
    fn from(e: ParseError) -> Self {
        DerivationError::Parse {
            line: 1,
            message: e.to_string(),
        }
    }
}

/// `θ(f) / f` when `θ` is logarithmic along `V(f)`, otherwise `None`.
pub fn log_quotient(d: &Derivation, f: &Polynomial) -> Result<Option<Polynomial>, DerivationError> {
    if f.is_zero() {
        return Err(DerivationError::ZeroDivisor);
    }
    Ok(d.apply(f)?.exact_div(f)?)
}

pub fn is_logarithmic(d: &Derivation, f: &Polynomial) -> Result<bool, DerivationError> {
    Ok(log_quotient(d, f)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMembership {
    pub edge: (usize, usize),
    /// `θ(Δ_ij) / Δ_ij`, or `None` when `θ(Δ_ij) ∉ (Δ_ij)`.
    pub quotient: Option<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentwiseReport {
    pub edges: Vec<EdgeMembership>,
}

impl ComponentwiseReport {
    pub fn all_pass(&self) -> bool {
        self.edges.iter().all(|e| e.quotient.is_some())
    }

    pub fn failures(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .filter(|e| e.quotient.is_none())
            .map(|e| e.edge)
    }

    /// `θ(f)/f` for `f = ∏ Δ_ij`: by the Leibniz rule the sum of the
    /// per-edge quotients. `None` unless every edge passes.
    pub fn product_quotient(&self) -> Option<Polynomial> {
        let mut it = self.edges.iter();
        let first = it.next()?.quotient.clone()?;
        it.try_fold(first, |acc, e| Some(&acc + e.quotient.as_ref()?))
    }
}

/// Checks `θ(Δ_ij) ∈ (Δ_ij)` edge by edge.
pub fn is_logarithmic_componentwise(
    d: &Derivation,
    a: &Arrangement,
) -> Result<ComponentwiseReport, DerivationError> {
    if a.ring() != d.ring() {
        return Err(PolyError::AmbientMismatch(d.ring().n(), a.n()).into());
    }
    if a.graph().edge_count() == 0 {
        return Err(ArrangementError::NoEdges.into());
    }
    let edges = a
        .minors()
        .into_par_iter()
        .map(|(edge, delta)| {
            Ok(EdgeMembership {
                edge,
                quotient: log_quotient(d, &delta)?,
            })
        })
        .collect::<Result<Vec<_>, DerivationError>>()?;
    Ok(ComponentwiseReport { edges })
}

/// `a_(m,k)`: the sum over `m`-subsets `S` of `T_k = {4..n} \ {k}` of
/// `∏_{s∈S} x_s · ∏_{t∈T_k\S} y_t`.
pub fn a_coeff(m: usize, k: usize, n: usize) -> Result<Polynomial, DerivationError> {
    if n < 4 || k < 4 || k > n || m > n - 4 {
        return Err(DerivationError::BadCoefficientIndex { m, k, n });
    }
    let ring = Ring::new(n);
    let rest: Vec<usize> = (4..=n).filter(|&t| t != k).collect();
    let mut acc = ring.zero();
    for chosen in k_subsets(rest.len(), m) {
        let mut term = ring.one();
        for (pos, &t) in rest.iter().enumerate() {
            let factor = if chosen.contains(&pos) {
                ring.x(t)
            } else {
                ring.y(t)
            };
            term = &term * &factor;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The explicit basis of `Der(−log f)` for `f = ∏_{i<j} Δ_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdBasis {
    pub n: usize,
    /// `Σ x_k ∂/∂y_k`
    pub alpha: Derivation,
    /// `Σ y_k ∂/∂x_k`
    pub beta: Derivation,
    /// `Σ y_k ∂/∂y_k`
    pub gamma: Derivation,
    /// `θ_k = x_k ∂/∂x_k + y_k ∂/∂y_k`, k = 1..n
    pub theta: Vec<Derivation>,
    /// `φ_m = Σ_{k≥4} a_(m,k) Δ_2k Δ_3k (x_1 ∂/∂x_k + y_1 ∂/∂y_k)`, m = 0..n−4
    pub phi: Vec<Derivation>,
}

impl StdBasis {
    /// Saito column order: β, α, γ, θ_1..θ_n, φ_0..φ_(n−4).
    pub fn saito_order(&self) -> Vec<Derivation> {
        let mut v = vec![self.beta.clone(), self.alpha.clone(), self.gamma.clone()];
        v.extend(self.theta.iter().cloned());
        v.extend(self.phi.iter().cloned());
        v
    }

    /// Labels matching [`StdBasis::saito_order`].
    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = ["beta", "alpha", "gamma"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        v.extend((1..=self.n).map(|k| format!("theta{k}")));
        v.extend((0..self.phi.len()).map(|m| format!("phi{m}")));
        v
    }

    pub fn labeled(&self) -> Vec<LabeledDerivation> {
        self.labels()
            .into_iter()
            .zip(self.saito_order())
            .map(|(label, derivation)| LabeledDerivation { label, derivation })
            .collect()
    }
}

pub fn std_basis(n: usize) -> Result<StdBasis, DerivationError> {
    if n < 3 {
        return Err(DerivationError::TooFewColumns(n));
    }
    let ring = Ring::new(n);
    let mut alpha = Derivation::zero(ring);
    let mut beta = Derivation::zero(ring);
    let mut gamma = Derivation::zero(ring);
    let mut theta = Vec::with_capacity(n);
    for k in 1..=n {
        alpha = alpha.with_coeff(VarId::y(k), ring.x(k));
        beta = beta.with_coeff(VarId::x(k), ring.y(k));
        gamma = gamma.with_coeff(VarId::y(k), ring.y(k));
        theta.push(
            Derivation::zero(ring)
                .with_coeff(VarId::x(k), ring.x(k))
                .with_coeff(VarId::y(k), ring.y(k)),
        );
    }
    let mut phi = Vec::with_capacity(n.saturating_sub(3));
    if n >= 4 {
        let weights: Vec<Polynomial> = (4..=n)
            .map(|k| Ok(&minor(2, k, n)? * &minor(3, k, n)?))
            .collect::<Result<_, ArrangementError>>()?;
        for m in 0..=n - 4 {
            let mut d = Derivation::zero(ring);
            for (k, w) in (4..=n).zip(&weights) {
                let c = &a_coeff(m, k, n)? * w;
                d = d
                    .with_coeff(VarId::x(k), &c * &ring.x(1))
                    .with_coeff(VarId::y(k), &c * &ring.y(1));
            }
            phi.push(d);
        }
    }
    Ok(StdBasis {
        n,
        alpha,
        beta,
        gamma,
        theta,
        phi,
    })
}

/// Coefficient matrix: row `i` holds the `∂/∂x_i` coefficients, row `n+i`
/// the `∂/∂y_i` coefficients, column `j` is derivation `j`.
pub fn saito_matrix(ds: &[Derivation]) -> Result<PolyMatrix, DerivationError> {
    let ring = ds
        .first()
        .map(Derivation::ring)
        .ok_or(DerivationError::WrongCount {
            expected: 0,
            got: 0,
        })?;
    let n = ring.n();
    if ds.len() != 2 * n {
        return Err(DerivationError::WrongCount {
            expected: 2 * n,
            got: ds.len(),
        });
    }
    if let Some(d) = ds.iter().find(|d| d.ring() != ring) {
        return Err(PolyError::AmbientMismatch(n, d.ring().n()).into());
    }
    let mut m = PolyMatrix::zeros(ring, 2 * n, 2 * n);
    for (j, d) in ds.iter().enumerate() {
        for i in 0..n {
            m.set(i, j, d.xcoeffs[i].clone())?;
            m.set(n + i, j, d.ycoeffs[i].clone())?;
        }
    }
    Ok(m)
}

/// Something that can play the role of `f` in Saito's criterion.
pub trait Divisor: Sync {
    fn ring(&self) -> Ring;
    /// Total degree of `f`; `None` when `f = 0`.
    fn degree(&self) -> Option<u32>;
    fn expanded(&self) -> Result<Cow<'_, Polynomial>, DerivationError>;
    fn eval_dense(&self, point: &[BigInt]) -> BigInt;
}

impl Divisor for Polynomial {
    fn ring(&self) -> Ring {
        Polynomial::ring(self)
    }

    fn degree(&self) -> Option<u32> {
        Polynomial::degree(self)
    }

    fn expanded(&self) -> Result<Cow<'_, Polynomial>, DerivationError> {
        Ok(Cow::Borrowed(self))
    }

    fn eval_dense(&self, point: &[BigInt]) -> BigInt {
        Polynomial::eval_dense(self, point).expect("point sized for the ring")
    }
}

/// Randomized checks evaluate `f` as a product of minors, never expanding it.
impl Divisor for Arrangement {
    fn ring(&self) -> Ring {
        Arrangement::ring(self)
    }

    fn degree(&self) -> Option<u32> {
        (self.graph().edge_count() > 0).then(|| Arrangement::degree(self))
    }

    fn expanded(&self) -> Result<Cow<'_, Polynomial>, DerivationError> {
        Ok(Cow::Borrowed(self.defining_poly()?))
    }

    fn eval_dense(&self, point: &[BigInt]) -> BigInt {
        self.eval_defining(point)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaitoMode {
    Symbolic,
    Randomized { points: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SaitoMethod {
    Symbolic,
    Randomized {
        points: usize,
        seed: u64,
        /// Upper bound on the probability that a non-basis is reported as a
        /// basis (Schwartz–Zippel).
        failure_bound: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailReason {
    ZeroDeterminant,
    DegreeMismatch { det: u32, f: u32 },
    NotConstantMultiple,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailReason::ZeroDeterminant => write!(f, "determinant is zero"),
            FailReason::DegreeMismatch { det, f: fd } => {
                write!(f, "deg(det) = {det} but deg(f) = {fd}")
            }
            FailReason::NotConstantMultiple => {
                write!(f, "determinant is not a constant multiple of f")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SaitoVerdict {
    /// `c_den · det = c_num · f` with `c_num ≠ 0`, `c_den > 0`, coprime.
    Basis {
        c_num: BigInt,
        c_den: BigInt,
    },
    Fails(FailReason),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaitoReport {
    /// The exact determinant; only computed in symbolic mode.
    pub determinant: Option<Polynomial>,
    /// Degree of the determinant (structural in randomized mode).
    pub det_degree: Option<u32>,
    pub f_degree: u32,
    pub verdict: SaitoVerdict,
    pub method: SaitoMethod,
}

impl SaitoReport {
    pub fn is_basis(&self) -> bool {
        matches!(self.verdict, SaitoVerdict::Basis { .. })
    }

    /// `|c|` as a reduced fraction `(numerator, denominator)`.
    pub fn abs_c(&self) -> Option<(BigInt, BigInt)> {
        match &self.verdict {
            SaitoVerdict::Basis { c_num, c_den } => Some((c_num.abs(), c_den.clone())),
            SaitoVerdict::Fails(_) => None,
        }
    }
}

fn reduced(num: BigInt, den: BigInt) -> (BigInt, BigInt) {
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

/// Saito's criterion for `ds` against `f`.
///
/// Symbolic mode computes the determinant exactly. Randomized mode checks the
/// degree structurally (each derivation homogeneous, degrees summing to
/// `deg f`), then compares `det` and `f` up to one global constant at random
/// integer points, drawn with a ChaCha8 stream seeded by `seed`.
pub fn saito_check<F: Divisor + ?Sized>(
    ds: &[Derivation],
    f: &F,
    mode: SaitoMode,
) -> Result<SaitoReport, DerivationError> {
    let ring = f.ring();
    if ds.len() != 2 * ring.n() {
        return Err(DerivationError::WrongCount {
            expected: 2 * ring.n(),
            got: ds.len(),
        });
    }
    let f_degree = f.degree().ok_or(DerivationError::ZeroDivisor)?;
    let matrix = saito_matrix(ds)?;
    if matrix.ring() != ring {
        return Err(PolyError::AmbientMismatch(ring.n(), matrix.ring().n()).into());
    }
    match mode {
        SaitoMode::Symbolic => symbolic(&matrix, f, f_degree),
        SaitoMode::Randomized { points, seed } => {
            randomized(ds, &matrix, f, f_degree, points, seed)
        }
    }
}

fn symbolic<F: Divisor + ?Sized>(
    matrix: &PolyMatrix,
    f: &F,
    f_degree: u32,
) -> Result<SaitoReport, DerivationError> {
    let det = matrix.det_bareiss()?;
    let det_degree = det.degree();
    let verdict = match det_degree {
        None => SaitoVerdict::Fails(FailReason::ZeroDeterminant),
        Some(d) if d != f_degree => SaitoVerdict::Fails(FailReason::DegreeMismatch {
            det: d,
            f: f_degree,
        }),
        Some(_) => {
            let f = f.expanded()?;
            let (_, lc_f) = f.leading_term().expect("nonzero f");
            // lc(f)·det / f = lc(f)·c is a constant exactly when det = c·f.
            match det.scale(lc_f).exact_div(&f)?.and_then(|q| q.as_constant()) {
                Some(q) if !q.is_zero() => {
                    let (c_num, c_den) = reduced(q, lc_f.clone());
                    SaitoVerdict::Basis { c_num, c_den }
                }
                _ => SaitoVerdict::Fails(FailReason::NotConstantMultiple),
            }
        }
    };
    Ok(SaitoReport {
        determinant: Some(det),
        det_degree,
        f_degree,
        verdict,
        method: SaitoMethod::Symbolic,
    })
}

fn randomized<F: Divisor + ?Sized>(
    ds: &[Derivation],
    matrix: &PolyMatrix,
    f: &F,
    f_degree: u32,
    points: usize,
    seed: u64,
) -> Result<SaitoReport, DerivationError> {
    if points == 0 {
        return Err(DerivationError::NoSamples);
    }
    let size = 2.0 * SAMPLE_BOUND as f64 + 1.0;
    let failure_bound = (f64::from(f_degree) / size)
        .powi(points as i32 - 1)
        .min(1.0);
    let method = SaitoMethod::Randomized {
        points,
        seed,
        failure_bound,
    };
    let report = |det_degree, verdict| SaitoReport {
        determinant: None,
        det_degree,
        f_degree,
        verdict,
        method: method.clone(),
    };

    if ds.iter().any(Derivation::is_zero) {
        return Ok(report(
            None,
            SaitoVerdict::Fails(FailReason::ZeroDeterminant),
        ));
    }
    let mut det_degree = 0;
    for (j, d) in ds.iter().enumerate() {
        det_degree += d
            .homogeneous_degree()
            .ok_or(DerivationError::NotHomogeneous(j))?;
    }
    if det_degree != f_degree {
        return Ok(report(
            Some(det_degree),
            SaitoVerdict::Fails(FailReason::DegreeMismatch {
                det: det_degree,
                f: f_degree,
            }),
        ));
    }

    let nvars = f.ring().nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESAMPLE_ATTEMPTS {
        let sample: Vec<Vec<BigInt>> = (0..points)
            .map(|_| {
                (0..nvars)
                    .map(|_| BigInt::from(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
                    .collect()
            })
            .collect();
        let values = sample
            .par_iter()
            .map(|pt| Ok((det_integer(&matrix.eval_dense(pt)?), f.eval_dense(pt))))
            .collect::<Result<Vec<_>, DerivationError>>()?;
        let Some((det0, f0)) = values.iter().find(|(_, fv)| !fv.is_zero()) else {
            continue;
        };
        if det0.is_zero() {
            return Ok(report(
                Some(det_degree),
                SaitoVerdict::Fails(FailReason::NotConstantMultiple),
            ));
        }
        let (c_num, c_den) = reduced(det0.clone(), f0.clone());
        let consistent = values.iter().all(|(dv, fv)| &c_den * dv == &c_num * fv);
        let verdict = if consistent {
            SaitoVerdict::Basis { c_num, c_den }
        } else {
            SaitoVerdict::Fails(FailReason::NotConstantMultiple)
        };
        return Ok(report(Some(det_degree), verdict));
    }
    Err(DerivationError::AllSamplesOnDivisor(points))
}
