use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A monomial `x^a` as its tuple of non-negative integer exponents.
///
/// The length of the tuple is the ambient dimension `d`. Ordering is
/// lexicographic on the coordinates, which fixes the canonical generator
/// order of [`crate::MonomialIdeal`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(coords: Vec<u64>) -> Self {
        ExponentVector(coords)
    }

    /// The exponent vector of 1 (all zeros).
    pub fn zero(dim: usize) -> Self {
        ExponentVector(alloc::vec![0; dim])
    }

    /// `x_i` in ambient dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = alloc::vec![0; dim];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }

    /// Componentwise sum, i.e. the product of the monomials.
    pub fn add(&self, other: &Self) -> Result<Self> {
        other.check_dim(self.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Componentwise truncated difference `max(a - b, 0)`, the generator
    /// map of monomial colons.
    pub fn sub_clamped(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    /// Componentwise maximum, i.e. the lcm of the monomials.
    pub fn max(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// True iff `x^self` divides `x^other` (componentwise `<=`).
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Scalar multiple `n * a`, the exponent of `(x^a)^n`.
    pub fn scale(&self, n: u64) -> Result<Self> {
        self.0
            .iter()
            .map(|a| a.checked_mul(n).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Exponents clamped to 0/1: the radical of the principal ideal.
    pub fn support_indicator(&self) -> Self {
        ExponentVector(self.0.iter().map(|&e| e.min(1)).collect())
    }

    /// Indices of the variables actually appearing.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn total_degree(&self) -> Result<u64> {
        self.0.iter().try_fold(0u64, |acc, &e| acc.checked_add(e).ok_or(Error::Overflow))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divides_is_componentwise() {
        let a = ExponentVector::new(vec![2, 0]);
        let b = ExponentVector::new(vec![2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
    }

    #[test]
    fn add_overflow_is_an_error() {
        let a = ExponentVector::new(vec![u64::MAX]);
        let b = ExponentVector::new(vec![1]);
        assert_eq!(a.add(&b), Err(Error::Overflow));
    }

    #[test]
    fn sub_clamped_truncates() {
        let a = ExponentVector::new(vec![2, 0]);
        let b = ExponentVector::new(vec![1, 3]);
        assert_eq!(a.sub_clamped(&b), ExponentVector::new(vec![1, 0]));
    }
}
