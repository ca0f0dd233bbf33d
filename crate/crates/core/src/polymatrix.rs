//! Dense matrices of polynomials and their exact determinants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polyring::{PolyError, Polynomial, Ring, VarId};

/// Largest dimension accepted by [`PolyMatrix::det_cofactor`].
pub const COFACTOR_MAX_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("cofactor expansion limited to dimension {max}, got {dim}")]
    TooLarge { dim: usize, max: usize },
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("block precondition violated: {0}")]
    Block(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    ring: Ring,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    /// Builds a matrix from row-major entries sharing one ambient ring.
    pub fn new(
        ring: Ring,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(p) = entries.iter().find(|p| p.ambient() != ring.n()) {
            return Err(PolyError::AmbientMismatch(ring.n(), p.ambient()).into());
        }
        Ok(PolyMatrix {
            rows,
            cols,
            ring,
            entries,
        })
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(MatrixError::Shape {
                expected: nrows * ncols,
                got: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(ring, nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            ring,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn diagonal(ring: Ring, diag: Vec<Polynomial>) -> Result<Self, MatrixError> {
        let k = diag.len();
        let mut m = Self::zeros(ring, k, k);
        for (i, p) in diag.into_iter().enumerate() {
            m.set(i, i, p)?;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) -> Result<(), MatrixError> {
        if p.ambient() != self.ring.n() {
            return Err(PolyError::AmbientMismatch(self.ring.n(), p.ambient()).into());
        }
        self.entries[r * self.cols + c] = p;
        Ok(())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Shape {
                expected: self.cols,
                got: other.rows,
            });
        }
        if self.ring != other.ring {
            return Err(PolyError::AmbientMismatch(self.ring.n(), other.ring.n()).into());
        }
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.entries[r * other.cols + c] = acc;
            }
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Shape {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(PolyMatrix {
            entries,
            ..self.clone()
        })
    }

    /// Integer matrix obtained by evaluating every entry at a dense point.
    pub fn eval_dense(&self, point: &[BigInt]) -> Result<Vec<Vec<BigInt>>, MatrixError> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c).eval_dense(point).map_err(Into::into))
                    .collect()
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division `(p·a − b·c) / prev_pivot` is exact over the integral
    /// domain `Z[x, y]`.
    pub fn det_bareiss(&self) -> Result<Polynomial, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(self.ring.one());
        }
        let mut a: Vec<Vec<Polynomial>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = self.ring.one();
        for k in 0..n - 1 {
            // Cheapest structurally nonzero pivot in column k.
            let pivot_row = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].len());
            let Some(p) = pivot_row else {
                // Cofactor expansion along an all-zero column is the empty sum.
                return Ok(self.ring.zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let pivot = &pivot_row[k];
            for row in bottom.iter_mut() {
                let lead = std::mem::replace(&mut row[k], self.ring.zero());
                for j in k + 1..n {
                    let mut num = pivot * &row[j];
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        num = &num - &(&lead * &pivot_row[j]);
                    }
                    row[j] = if prev.is_one() {
                        num
                    } else {
                        num.exact_div(&prev)?
                            .expect("Bareiss division is exact over an integral domain")
                    };
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Determinant by Laplace expansion, expanding along the sparsest row.
    pub fn det_cofactor(&self) -> Result<Polynomial, MatrixError> {
        let n = self.require_square()?;
        if n > COFACTOR_MAX_DIM {
            return Err(MatrixError::TooLarge {
                dim: n,
                max: COFACTOR_MAX_DIM,
            });
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..n).collect();
        Ok(self.laplace(&rows, &cols))
    }

    fn laplace(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        match rows.len() {
            0 => return self.ring.one(),
            1 => return self.get(rows[0], cols[0]).clone(),
            _ => {}
        }
        let (ri, &r) = rows
            .iter()
            .enumerate()
            .max_by_key(|(_, &r)| cols.iter().filter(|&&c| self.get(r, c).is_zero()).count())
            .expect("nonempty");
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let mut acc = self.ring.zero();
        for (ci, &c) in cols.iter().enumerate() {
            let entry = self.get(r, c);
            if entry.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.laplace(&sub_rows, &sub_cols);
            let term = entry * &minor;
            acc = if (ri + ci) % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    /// Assembles `[[a1, a2], [a3, a4]]` from four k×k blocks.
    pub fn assemble_blocks(
        a1: &PolyMatrix,
        a2: &PolyMatrix,
        a3: &PolyMatrix,
        a4: &PolyMatrix,
    ) -> Result<PolyMatrix, MatrixError> {
        let k = block_size(a1, a2, a3, a4)?;
        let mut m = Self::zeros(a1.ring, 2 * k, 2 * k);
        for r in 0..k {
            for c in 0..k {
                m.set(r, c, a1.get(r, c).clone())?;
                m.set(r, c + k, a2.get(r, c).clone())?;
                m.set(r + k, c, a3.get(r, c).clone())?;
                m.set(r + k, c + k, a4.get(r, c).clone())?;
            }
        }
        Ok(m)
    }

    /// Determinant of the block matrix `[[a1, a2], [a3, a4]]` with `a1`, `a3`
    /// diagonal, computed as `det(a1·a4 − a3·a2)`.
    pub fn det_block_diag(
        a1: &PolyMatrix,
        a2: &PolyMatrix,
        a3: &PolyMatrix,
        a4: &PolyMatrix,
    ) -> Result<Polynomial, MatrixError> {
        let k = block_size(a1, a2, a3, a4)?;
        for (name, m) in [("a1", a1), ("a3", a3)] {
            if !m.is_diagonal() {
                return Err(MatrixError::Block(format!("{name} is not diagonal")));
            }
            if (0..k).any(|i| m.get(i, i).is_zero()) {
                return Err(MatrixError::Block(format!(
                    "{name} has a zero diagonal entry"
                )));
            }
        }
        let reduced = a1.try_mul(a4)?.try_sub(&a3.try_mul(a2)?)?;
        reduced.det_bareiss()
    }
}

fn block_size(
    a1: &PolyMatrix,
    a2: &PolyMatrix,
    a3: &PolyMatrix,
    a4: &PolyMatrix,
) -> Result<usize, MatrixError> {
    let k = a1.require_square()?;
    for m in [a2, a3, a4] {
        if m.require_square()? != k {
            return Err(MatrixError::Block(
                "blocks must be square of equal size".into(),
            ));
        }
        if m.ring != a1.ring {
            return Err(PolyError::AmbientMismatch(a1.ring.n(), m.ring.n()).into());
        }
    }
    Ok(k)
}

/// Determinant of an integer matrix by Bareiss elimination.
pub fn det_integer(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Elementary symmetric polynomial of degree `k` in the variables
/// `z_s = x_s` for `s ∈ {i..n} \ {j}`; the empty sum convention gives `1` at
/// `k = 0`.
pub fn sym_poly(i: usize, j: usize, k: usize, n: usize) -> Result<Polynomial, MatrixError> {
    if i == 0 || i > j || j > n || k > n - i {
        return Err(MatrixError::Index(format!(
            "s(i={i}, j={j}, k={k}) with n={n}"
        )));
    }
    let ring = Ring::new(n);
    let pool: Vec<usize> = (i..=n).filter(|&s| s != j).collect();
    let mut acc = ring.zero();
    for subset in k_subsets(pool.len(), k) {
        let mut term = ring.one();
        for idx in subset {
            term = &term * &ring.x(pool[idx]);
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The `(n+1−i)×(n+1−i)` matrix with rows `j ∈ [i, n]`, columns
/// `k ∈ [0, n−i]`, and entries `sym_poly(i, j, k, n)`.
pub fn lemma31_matrix(i: usize, n: usize) -> Result<PolyMatrix, MatrixError> {
    if i == 0 || i > n {
        return Err(MatrixError::Index(format!("i={i} with n={n}")));
    }
    let dim = n + 1 - i;
    let mut entries = Vec::with_capacity(dim * dim);
    for j in i..=n {
        for k in 0..dim {
            entries.push(sym_poly(i, j, k, n)?);
        }
    }
    PolyMatrix::new(Ring::new(n), dim, dim, entries)
}

/// All `k`-element subsets of `0..len`, lexicographic.
pub(crate) fn k_subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..len {
            if len - s < k - cur.len() {
                break;
            }
            cur.push(s);
            go(s + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= len {
        go(0, len, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// `z_s` as used by the symmetric-polynomial matrices.
pub fn z(ring: Ring, s: usize) -> Polynomial {
    ring.var(VarId::x(s)).expect("z index out of range")
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
