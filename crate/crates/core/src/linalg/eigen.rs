//! Exact rational eigen-decomposition of small matrices.
//!
//! The characteristic polynomial comes from the Faddeev–LeVerrier recurrence.
//! Its rational roots are found without factoring any integer: after clearing
//! denominators, a rational root `p/q` in lowest terms must have `q` dividing
//! the leading coefficient `L`, so two distinct candidate roots are at least
//! `1/L²` apart. Each real root is isolated with a Sturm sequence, bisected
//! until its bracket is narrower than that, and the simplest rational in the
//! bracket is tested exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::elimination::kernel_basis;
use super::matrix::OperatorMatrix;
use super::rational::{common_denominator, Rational};
use super::vector::RationalVector;
use super::LinalgError;

/// Largest matrix accepted by [`rational_eigenpairs`].
pub const MAX_EIGEN_DIM: usize = 8;

/// Polynomial coefficients in ascending degree, without trailing zeros.
pub type Poly = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenpair {
    pub value: Rational,
    /// Canonical kernel basis of `m − value·I`.
    pub vectors: Vec<RationalVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenDecomposition {
    pub dim: usize,
    /// Rational eigenvalues in ascending order.
    pub pairs: Vec<Eigenpair>,
}

impl EigenDecomposition {
    pub fn eigenvector_count(&self) -> usize {
        self.pairs.iter().map(|p| p.vectors.len()).sum()
    }

    /// True when the rational eigenvectors span the whole space.
    pub fn is_complete(&self) -> bool {
        self.eigenvector_count() == self.dim
    }

    pub fn ensure_complete(self) -> Result<Self, LinalgError> {
        if self.is_complete() {
            Ok(self)
        } else {
            Err(LinalgError::IncompleteEigenbasis {
                found: self.eigenvector_count(),
                dim: self.dim,
            })
        }
    }
}

pub fn rational_eigenpairs(m: &OperatorMatrix) -> Result<EigenDecomposition, LinalgError> {
    let poly = characteristic_polynomial(m)?;
    let pairs = rational_roots(&poly)
        .into_iter()
        .map(|value| {
            let shifted = m
                .sub(&OperatorMatrix::identity(m.dim()).scale(&value))
                .expect("same dimension");
            Eigenpair {
                vectors: kernel_basis(&shifted),
                value,
            }
        })
        .collect();
    Ok(EigenDecomposition {
        dim: m.dim(),
        pairs,
    })
}

/// `det(x·I − m)` as ascending coefficients (monic, degree `dim`).
pub fn characteristic_polynomial(m: &OperatorMatrix) -> Result<Poly, LinalgError> {
    let n = m.dim();
    if n > MAX_EIGEN_DIM {
        return Err(LinalgError::TooLarge {
            dim: n,
            max: MAX_EIGEN_DIM,
        });
    }
    let a = m.to_dense();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut acc = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // acc ← a·acc + c_{n−k+1}·I
        let mut next = dense_mul(&a, &acc);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        acc = next;
        let prod = dense_mul(&a, &acc);
        let trace = (0..n).fold(Rational::zero(), |t, i| t + &prod[i][i]);
        coeffs[n - k] = -trace / Rational::from_integer(BigInt::from(k));
    }
    Ok(coeffs)
}

fn dense_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter(|&k| !a[i][k].is_zero() && !b[k][j].is_zero())
                        .fold(Rational::zero(), |s, k| s + &a[i][k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

/// Distinct rational roots of `poly`, ascending. The zero polynomial has none
/// by convention.
pub fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let mut p = trim(poly.to_vec());
    if degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    if p[0].is_zero() {
        roots.push(Rational::zero());
        while p[0].is_zero() {
            p.remove(0);
        }
    }
    let mut q = square_free(&p);
    'outer: loop {
        match degree(&q) {
            None | Some(0) => break,
            Some(1) => {
                roots.push(-&q[0] / &q[1]);
                break;
            }
            Some(_) => {}
        }
        let chain = sturm_chain(&q);
        let bound = cauchy_bound(&q);
        let mut stack = vec![(-bound.clone(), bound)];
        let mut isolated = Vec::new();
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
            match count {
                0 => {}
                1 => isolated.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / Rational::from_integer(2.into());
                    if eval(&q, &mid).is_zero() {
                        roots.push(mid.clone());
                        q = deflate(&q, &mid);
                        continue 'outer;
                    }
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        let max_width = separation_width(&q);
        for (lo, hi) in isolated {
            if let Some(r) = refine_to_rational(&q, lo, hi, &max_width) {
                roots.push(r);
            }
        }
        break;
    }
    roots.sort();
    roots
}

fn refine_to_rational(
    q: &[Rational],
    mut lo: Rational,
    mut hi: Rational,
    max_width: &Rational,
) -> Option<Rational> {
    let two = Rational::from_integer(2.into());
    let lo_sign = eval(q, &lo).signum();
    while &(&hi - &lo) >= max_width {
        let mid = (&lo + &hi) / &two;
        let value = eval(q, &mid);
        if value.is_zero() {
            return Some(mid);
        }
        if value.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let candidate = simplest_between(&lo, &hi);
    eval(q, &candidate).is_zero().then_some(candidate)
}

/// `1 / (2 L²)` where `L` is the leading coefficient of the primitive integer
/// multiple of `q`.
fn separation_width(q: &[Rational]) -> Rational {
    let lcm = common_denominator(q);
    let ints: Vec<BigInt> = q.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let lead = (ints.last().expect("nonzero polynomial") / content).abs();
    Rational::new(BigInt::one(), BigInt::from(2) * &lead * &lead)
}

/// The rational with the smallest denominator in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let floor = lo.floor();
    if &floor == lo {
        return floor;
    }
    let next = &floor + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &floor).recip(), &(lo - &floor).recip());
    floor + inner.recip()
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[Rational]) -> Poly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect()
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let mut rem = trim(a.to_vec());
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &b[db];
        for (i, c) in b.iter().enumerate() {
            rem[dr - db + i] -= &factor * c;
        }
        quot[dr - db] = factor;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while degree(&y).is_some() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn square_free(p: &[Rational]) -> Poly {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        return trim(p.to_vec());
    }
    divrem(p, &g).0
}

/// Divides by `(x − root)`; `root` must be a root.
fn deflate(p: &[Rational], root: &Rational) -> Poly {
    let divisor = vec![-root.clone(), Rational::one()];
    divrem(p, &divisor).0
}

fn sturm_chain(p: &[Rational]) -> Vec<Poly> {
    let mut chain = vec![trim(p.to_vec()), trim(derivative(p))];
    loop {
        let n = chain.len();
        if degree(&chain[n - 1]).is_none() {
            chain.pop();
            break;
        }
        let (_, r) = divrem(&chain[n - 2], &chain[n - 1]);
        if degree(&r).is_none() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn sign_changes(chain: &[Poly], x: &Rational) -> i64 {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// Strict upper bound on the absolute value of every root.
fn cauchy_bound(p: &[Rational]) -> Rational {
    let d = degree(p).expect("nonconstant polynomial");
    let lead = p[d].abs();
    let max = p[..d]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    (max + Rational::one()).ceil() + Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{int, ratio};

    fn poly_from_roots(roots: &[Rational]) -> Poly {
        roots.iter().fold(vec![int(1)], |acc, r| {
            let mut out = vec![int(0); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                out[i + 1] += c;
                out[i] -= c * r;
            }
            out
        })
    }

    #[test]
    fn diagonal_matrix() {
        let m = OperatorMatrix::diagonal(&[int(1), int(2), int(3)]);
        let eig = rational_eigenpairs(&m).unwrap();
        assert!(eig.is_complete());
        let values: Vec<_> = eig.pairs.iter().map(|p| p.value.clone()).collect();
        assert_eq!(values, vec![int(1), int(2), int(3)]);
        for (k, pair) in eig.pairs.iter().enumerate() {
            assert_eq!(pair.vectors, vec![RationalVector::unit(3, k).unwrap()]);
        }
    }

    #[test]
    fn swap_matrix() {
        let m = OperatorMatrix::from_integer_rows(&[[0, 1], [1, 0]]).unwrap();
        let eig = rational_eigenpairs(&m).unwrap();
        assert_eq!(eig.pairs[0].value, int(-1));
        assert_eq!(eig.pairs[1].value, int(1));
        let minus = RationalVector::from_dense(&[int(1), int(-1)]);
        let plus = RationalVector::from_dense(&[int(1), int(1)]);
        assert!(eig.pairs[0].vectors[0].proportionality_to(&minus).is_some());
        assert!(eig.pairs[1].vectors[0].proportionality_to(&plus).is_some());
    }

    #[test]
    fn jordan_block_is_reported_defective() {
        let m = OperatorMatrix::from_integer_rows(&[[2, 1], [0, 2]]).unwrap();
        let eig = rational_eigenpairs(&m).unwrap();
        assert_eq!(eig.pairs.len(), 1);
        assert_eq!(eig.pairs[0].value, int(2));
        assert_eq!(eig.pairs[0].vectors.len(), 1);
        assert!(!eig.is_complete());
        assert_eq!(
            eig.ensure_complete().unwrap_err(),
            LinalgError::IncompleteEigenbasis { found: 1, dim: 2 }
        );
    }

    #[test]
    fn irrational_roots_are_skipped() {
        // x² − 2 has no rational roots; (x − 1/3)(x² − 2)
        let p = vec![ratio(2, 3), int(-2), ratio(-1, 3), int(1)];
        assert_eq!(rational_roots(&p), vec![ratio(1, 3)]);
        let rot = OperatorMatrix::from_integer_rows(&[[0, 2], [1, 0]]).unwrap();
        assert!(rational_eigenpairs(&rot).unwrap().pairs.is_empty());
    }

    #[test]
    fn roots_with_large_denominators() {
        let roots = vec![
            Rational::new(
                "105625140496014730841477".parse().unwrap(),
                "7703529626668586930816688".parse().unwrap(),
            ),
            ratio(-1, 186624),
            ratio(-1, 186623),
            int(0),
            int(7),
        ];
        let mut p = poly_from_roots(&roots);
        // repeated root
        p = {
            let extra = poly_from_roots(&[int(7)]);
            let mut out = vec![int(0); p.len() + 1];
            for (i, a) in p.iter().enumerate() {
                for (j, b) in extra.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            out
        };
        let mut expected = roots.clone();
        expected.sort();
        assert_eq!(rational_roots(&p), expected);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(2, 3)), ratio(1, 2));
        assert_eq!(simplest_between(&ratio(-2, 3), &ratio(-1, 3)), ratio(-1, 2));
        assert_eq!(simplest_between(&ratio(-1, 3), &ratio(2, 3)), int(0));
        assert_eq!(simplest_between(&ratio(31, 10), &ratio(32, 10)), ratio(16, 5));
        assert_eq!(simplest_between(&ratio(5, 2), &ratio(7, 2)), int(3));
    }

    #[test]
    fn oversized_input_is_rejected() {
        let m = OperatorMatrix::identity(MAX_EIGEN_DIM + 1);
        assert!(matches!(
            characteristic_polynomial(&m),
            Err(LinalgError::TooLarge { .. })
        ));
    }
}
