use std::collections::BTreeMap;

use num_traits::Zero;

use super::rational::Rational;
use super::LinalgError;

/// Sparse vector of exact rationals. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector {
    dim: usize,
    entries: BTreeMap<usize, Rational>,
}

impl RationalVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// Unit vector `e_index`.
    pub fn unit(dim: usize, index: usize) -> Result<Self, LinalgError> {
        let mut v = Self::zeros(dim);
        v.set(index, Rational::from_integer(1.into()))?;
        Ok(v)
    }

    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Result<Self, LinalgError> {
        let mut v = Self::zeros(dim);
        for (i, q) in entries {
            let sum = v.get(i) + q;
            v.set(i, sum)?;
        }
        Ok(v)
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(i, q)| (i, q.clone()))
            .collect();
        Self {
            dim: values.len(),
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Rational {
        self.entries.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, index: usize, value: Rational) -> Result<(), LinalgError> {
        if index >= self.dim {
            return Err(LinalgError::IndexOutOfRange {
                index,
                dim: self.dim,
            });
        }
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
        Ok(())
    }

    /// Nonzero entries in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(&i, q)| (i, q))
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, q) in self.iter() {
            out[i] = q.clone();
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.dim);
        }
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&i, q)| (i, q * factor))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.axpy(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.axpy(other, true)
    }

    fn axpy(&self, other: &Self, negate: bool) -> Result<Self, LinalgError> {
        check_dims(self.dim, other.dim)?;
        let mut out = self.clone();
        for (&i, b) in &other.entries {
            let a = out.get(i);
            out.set(i, if negate { a - b } else { a + b })?;
        }
        Ok(out)
    }

    pub fn dot(&self, other: &Self) -> Result<Rational, LinalgError> {
        check_dims(self.dim, other.dim)?;
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small
            .entries
            .iter()
            .filter_map(|(i, a)| large.entries.get(i).map(|b| a * b))
            .fold(Rational::zero(), |acc, x| acc + x))
    }

    /// Returns `c` with `self = c * other` when `other` is nonzero and the two
    /// vectors are exactly proportional; `Some(0)` when `self` is zero.
    pub fn proportionality_to(&self, other: &Self) -> Option<Rational> {
        if self.dim != other.dim || other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.nnz() != other.nnz() {
            return None;
        }
        let (&i0, b0) = other.entries.iter().next()?;
        let c = self.entries.get(&i0)? / b0;
        let matches = other
            .entries
            .iter()
            .all(|(i, b)| self.entries.get(i) == Some(&(b * &c)));
        matches.then_some(c)
    }
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<(), LinalgError> {
    if left != right {
        return Err(LinalgError::DimensionMismatch { left, right });
    }
    Ok(())
}
