use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::rational::{common_denominator, render, Rational};
use super::vector::{check_dims, RationalVector};
use super::LinalgError;

type Row = Vec<(usize, Rational)>;

/// `q · den` as an integer; `den` must be a multiple of the denominator of `q`.
fn scaled_numer(q: &Rational, den: &BigInt) -> BigInt {
    q.numer() * (den / q.denom())
}

/// Square sparse matrix with exact rational entries.
///
/// Storage is row-major with each row sorted by column and free of zeros, so
/// the derived `PartialEq` is exact entrywise equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OperatorMatrix {
    dim: usize,
    rows: Vec<Row>,
}

impl OperatorMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            rows: (0..dim).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        Self {
            dim: values.len(),
            rows: values
                .iter()
                .enumerate()
                .map(|(i, q)| {
                    if q.is_zero() {
                        Vec::new()
                    } else {
                        vec![(i, q.clone())]
                    }
                })
                .collect(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triples. Repeated positions are
    /// summed; positions that cancel to zero are dropped.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self, LinalgError> {
        let mut rows: Vec<Row> = vec![Vec::new(); dim];
        for (r, c, q) in entries {
            for index in [r, c] {
                if index >= dim {
                    return Err(LinalgError::IndexOutOfRange { index, dim });
                }
            }
            rows[r].push((c, q));
        }
        for row in &mut rows {
            *row = normalize_row(std::mem::take(row));
        }
        Ok(Self { dim, rows })
    }

    /// Builds a matrix from dense rows, which must form a square array.
    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut out = Self::zero(dim);
        for (r, row) in rows.iter().enumerate() {
            check_dims(dim, row.len())?;
            out.rows[r] = row
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(|(c, q)| (c, q.clone()))
                .collect();
        }
        Ok(out)
    }

    /// Convenience constructor from small integer arrays.
    pub fn from_integer_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        Self::from_dense(&dense)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.rows
            .get(row)
            .and_then(|r| r.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| r[k].1.clone()))
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries of row `r`, sorted by column.
    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.rows[r]
    }

    /// All nonzero entries in `(row, col)` ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, q)| (r, *c, q)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.dim]; self.dim];
        for (r, c, q) in self.iter() {
            out[r][c] = q.clone();
        }
        out
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Row> = vec![Vec::new(); self.dim];
        for (r, c, q) in self.iter() {
            rows[c].push((r, q.clone()));
        }
        Self {
            dim: self.dim,
            rows,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(c, q)| (*c, q * factor)).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(c, q)| (*c, -q)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Result<Self, LinalgError> {
        check_dims(self.dim, other.dim)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(a, b, negate))
            .collect();
        Ok(Self {
            dim: self.dim,
            rows,
        })
    }

    /// `Σ coeffs[k] · terms[k]`; all terms must share `dim`.
    pub fn linear_combination(
        dim: usize,
        coeffs: &[Rational],
        terms: &[&OperatorMatrix],
    ) -> Result<Self, LinalgError> {
        check_dims(coeffs.len(), terms.len())?;
        let mut out = Self::zero(dim);
        for (c, m) in coeffs.iter().zip(terms) {
            if !c.is_zero() {
                out = out.add(&m.scale(c))?;
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        check_dims(self.dim, other.dim)?;
        let dim = self.dim;
        // Products are accumulated over integer numerators and reduced once
        // per output entry.
        let other_den = common_denominator(other.rows.iter().flatten().map(|(_, q)| q));
        let other_int: Vec<Vec<(usize, BigInt)>> = other
            .rows
            .iter()
            .map(|row| row.iter().map(|(j, q)| (*j, scaled_numer(q, &other_den))).collect())
            .collect();
        let rows = self
            .rows
            .par_iter()
            .map_init(
                || (vec![BigInt::zero(); dim], vec![false; dim], Vec::new()),
                |(acc, seen, touched), row| {
                    let row_den = common_denominator(row.iter().map(|(_, q)| q));
                    for (k, a) in row {
                        let a = scaled_numer(a, &row_den);
                        for (j, b) in &other_int[*k] {
                            if !seen[*j] {
                                seen[*j] = true;
                                touched.push(*j);
                            }
                            acc[*j] += &a * b;
                        }
                    }
                    touched.sort_unstable();
                    let den = &row_den * &other_den;
                    let mut out = Vec::with_capacity(touched.len());
                    for j in touched.drain(..) {
                        seen[j] = false;
                        let num = std::mem::take(&mut acc[j]);
                        if !num.is_zero() {
                            out.push((j, Rational::new(num, den.clone())));
                        }
                    }
                    out
                },
            )
            .collect();
        Ok(Self { dim, rows })
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, LinalgError> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Kronecker product with `self` as the outer (block) factor.
    pub fn kron(&self, other: &Self) -> Self {
        let inner = other.dim;
        let dim = self.dim * inner;
        let mut rows = Vec::with_capacity(dim);
        for a_row in &self.rows {
            for b_row in &other.rows {
                let mut row = Vec::with_capacity(a_row.len() * b_row.len());
                for (ca, a) in a_row {
                    for (cb, b) in b_row {
                        row.push((ca * inner + cb, a * b));
                    }
                }
                rows.push(row);
            }
        }
        Self { dim, rows }
    }

    pub fn pow(&self, exponent: u32) -> Result<Self, LinalgError> {
        let mut out = Self::identity(self.dim);
        for _ in 0..exponent {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// Matrix–vector product `self · v`.
    pub fn apply(&self, v: &RationalVector) -> Result<RationalVector, LinalgError> {
        check_dims(self.dim, v.dim())?;
        let dense = v.to_dense();
        let values: Vec<Rational> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !dense[*c].is_zero())
                    .fold(Rational::zero(), |acc, (c, q)| acc + q * &dense[*c])
            })
            .collect();
        Ok(RationalVector::from_dense(&values))
    }

    /// Returns `c` with `self = c · other`, if `other` is nonzero and the two
    /// are exactly proportional (`Some(0)` when `self` is zero).
    pub fn proportionality_to(&self, other: &Self) -> Option<Rational> {
        if self.dim != other.dim || other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let (r0, c0, b0) = other.iter().next()?;
        let c = self.get(r0, c0) / b0;
        if c.is_zero() {
            return None;
        }
        (*self == other.scale(&c)).then_some(c)
    }

    /// First entry (in `(row, col)` order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((self.dim.min(other.dim), 0));
        }
        let diff = self.sub(other).ok()?;
        let first = diff.iter().next().map(|(r, c, _)| (r, c));
        first
    }

    /// Flattens to a sparse vector of length `dim²` in row-major order.
    pub fn flatten(&self) -> RationalVector {
        RationalVector::from_entries(
            self.dim * self.dim,
            self.iter().map(|(r, c, q)| (r * self.dim + c, q.clone())),
        )
        .expect("flattened index is in range")
    }
}

fn normalize_row(mut row: Row) -> Row {
    row.sort_by_key(|(c, _)| *c);
    let mut out: Row = Vec::with_capacity(row.len());
    for (c, q) in row {
        match out.last_mut() {
            Some((last, acc)) if *last == c => *acc += q,
            _ => out.push((c, q)),
        }
    }
    out.retain(|(_, q)| !q.is_zero());
    out
}

fn merge_rows(a: &Row, b: &Row, negate: bool) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let q = if negate { -&b[j].1 } else { b[j].1.clone() };
            out.push((b[j].0, q));
            j += 1;
        } else {
            let q = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            if !q.is_zero() {
                out.push((a[i].0, q));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorMatrix(dim={}, nnz={})", self.dim, self.nnz())?;
        if self.dim <= 9 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|q| q.to_string()).collect();
                write!(f, "\n  [{}]", cells.join(", "))?;
            }
        } else {
            for (r, c, q) in self.iter().take(12) {
                write!(f, "\n  ({r}, {c}) = {}", render(q))?;
            }
        }
        Ok(())
    }
}
