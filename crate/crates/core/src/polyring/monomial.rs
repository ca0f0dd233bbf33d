use std::cmp::Ordering;
use std::fmt;

/// Which row of the generic matrix a variable lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    X,
    Y,
}

/// A coordinate `x_i` or `y_i` of the generic 2×n matrix, with `index` 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarId {
    pub kind: VarKind,
    pub index: usize,
}

impl VarId {
    pub const fn x(index: usize) -> Self {
        VarId {
            kind: VarKind::X,
            index,
        }
    }

    pub const fn y(index: usize) -> Self {
        VarId {
            kind: VarKind::Y,
            index,
        }
    }

    /// Position in a dense exponent vector: x1, y1, x2, y2, ...
    pub(crate) fn slot(self) -> usize {
        debug_assert!(self.index >= 1);
        2 * (self.index - 1)
            + match self.kind {
                VarKind::X => 0,
                VarKind::Y => 1,
            }
    }

    pub(crate) fn from_slot(slot: usize) -> Self {
        let index = slot / 2 + 1;
        if slot.is_multiple_of(2) {
            VarId::x(index)
        } else {
            VarId::y(index)
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::X => write!(f, "x{}", self.index),
            VarKind::Y => write!(f, "y{}", self.index),
        }
    }
}

/// Power product over the 2n ring variables, stored as a dense exponent
/// vector indexed by [`VarId::slot`]. Zero entries mean the variable is absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; 2 * n].into_boxed_slice(),
        }
    }

    pub fn var(v: VarId, n: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[v.slot()] = 1;
        m
    }

    pub fn exponent(&self, v: VarId) -> u16 {
        self.exps.get(v.slot()).copied().unwrap_or(0)
    }

    pub(crate) fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Variables with nonzero exponent, in ring order.
    pub fn support(&self) -> impl Iterator<Item = (VarId, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| (VarId::from_slot(s), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            exps: exps.into_boxed_slice(),
        })
    }

    /// Returns the exponent of `v` and the monomial with `v` lowered by one.
    pub(crate) fn lower(&self, v: VarId) -> Option<(u16, Monomial)> {
        let s = v.slot();
        let e = *self.exps.get(s)?;
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[s] -= 1;
        Some((e, Monomial { exps }))
    }
}

/// Graded reverse-lexicographic order with x1 < y1 < x2 < y2 < ...
///
/// Among monomials of equal degree, the one with the smaller exponent in the
/// smallest variable where they differ is the larger.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            if a != b {
                return b.cmp(a);
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: usize, vars: &[(VarId, u16)]) -> Monomial {
        let mut m = Monomial::one(n);
        for &(v, e) in vars {
            m.exps[v.slot()] = e;
        }
        m
    }

    #[test]
    fn grevlex_degree_first() {
        let a = mono(2, &[(VarId::x(1), 2)]);
        let b = mono(2, &[(VarId::y(2), 1)]);
        assert!(a > b);
    }

    #[test]
    fn grevlex_ties_broken_by_smallest_variable() {
        // x1*y2 carries x1, the smallest variable, so it is the smaller one.
        let a = mono(2, &[(VarId::x(1), 1), (VarId::y(2), 1)]);
        let b = mono(2, &[(VarId::x(2), 1), (VarId::y(1), 1)]);
        assert!(a < b);
        let y2sq = mono(2, &[(VarId::y(2), 2)]);
        let x2y2 = mono(2, &[(VarId::x(2), 1), (VarId::y(2), 1)]);
        assert!(y2sq > x2y2);
    }

    #[test]
    fn slots_round_trip() {
        for s in 0..10 {
            assert_eq!(VarId::from_slot(s).slot(), s);
        }
        assert_eq!(VarId::x(3).slot(), 4);
        assert_eq!(VarId::y(3).slot(), 5);
    }

    #[test]
    fn div_and_mul() {
        let a = mono(2, &[(VarId::x(1), 2), (VarId::y(2), 1)]);
        let b = mono(2, &[(VarId::x(1), 1)]);
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert!(b.div(&a).is_none());
    }
}
