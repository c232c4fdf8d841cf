//! Motzkin paths, unrestricted paths, and their state vectors.
//!
//! A path of length `n` is a word over `u` (up), `f` (flat) and `d` (down).
//! The word `ℓ₁…ℓₙ` labels the basis ket `|ℓ₁…ℓₙ⟩`, whose index is the
//! big-endian base-3 number with digits `u = 0`, `f = 1`, `d = 2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::linalg::{Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path length must be at least 1")]
    EmptyLength,
    #[error("target height {height} is unreachable in {n} steps")]
    UnreachableHeight { n: usize, height: i64 },
    #[error("invalid step letter `{0}` (expected u, f or d)")]
    InvalidStep(char),
    #[error("cannot build a state from an empty path set")]
    EmptySet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Flat,
    Down,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::Up, Step::Flat, Step::Down];

    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Flat => 0,
            Step::Down => -1,
        }
    }

    /// Local basis index: `u = 0`, `f = 1`, `d = 2`.
    pub fn digit(self) -> usize {
        self as usize
    }

    pub fn from_digit(digit: usize) -> Option<Step> {
        Self::ALL.get(digit).copied()
    }

    pub fn letter(self) -> char {
        match self {
            Step::Up => 'u',
            Step::Flat => 'f',
            Step::Down => 'd',
        }
    }

    pub fn from_letter(c: char) -> Result<Step, PathError> {
        match c {
            'u' => Ok(Step::Up),
            'f' => Ok(Step::Flat),
            'd' => Ok(Step::Down),
            other => Err(PathError::InvalidStep(other)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    steps: Vec<Step>,
}

impl Path {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Height after each prefix, starting from 0 (length `len + 1`).
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut h = 0;
        out.push(h);
        for s in &self.steps {
            h += s.delta();
            out.push(h);
        }
        out
    }

    pub fn final_height(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    pub fn is_motzkin(&self) -> bool {
        self.final_height() == 0 && self.heights().iter().all(|&h| h >= 0)
    }

    /// Index of `|ℓ₁…ℓₙ⟩` in the `3ⁿ` basis.
    pub fn basis_index(&self) -> usize {
        self.steps.iter().fold(0, |acc, s| acc * 3 + s.digit())
    }

    /// Inverse of [`Path::basis_index`].
    pub fn from_basis_index(n: usize, mut index: usize) -> Path {
        let mut steps = vec![Step::Flat; n];
        for slot in steps.iter_mut().rev() {
            *slot = Step::from_digit(index % 3).expect("digit below 3");
            index /= 3;
        }
        Path { steps }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

impl FromStr for Path {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(Step::from_letter)
            .collect::<Result<Vec<_>, _>>()
            .map(Path::new)
    }
}

/// Paths of a common length ending at a common height, in lexicographic
/// order with `u < f < d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSet {
    pub n: usize,
    pub target_height: i64,
    pub paths: BTreeSet<Path>,
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> + '_ {
        self.paths.iter()
    }

    pub fn words(&self) -> Vec<String> {
        self.paths.iter().map(Path::to_string).collect()
    }
}

fn enumerate(n: usize, target: i64, keep_nonnegative: bool) -> BTreeSet<Path> {
    fn walk(
        remaining: usize,
        height: i64,
        target: i64,
        floor: bool,
        prefix: &mut Vec<Step>,
        out: &mut BTreeSet<Path>,
    ) {
        if remaining == 0 {
            if height == target {
                out.insert(Path::new(prefix.clone()));
            }
            return;
        }
        for step in Step::ALL {
            let h = height + step.delta();
            if floor && h < 0 {
                continue;
            }
            // the rest of the walk must still be able to reach the target
            if (target - h).unsigned_abs() as usize > remaining - 1 {
                continue;
            }
            prefix.push(step);
            walk(remaining - 1, h, target, floor, prefix, out);
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    walk(n, 0, target, keep_nonnegative, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All Motzkin paths of length `n`.
pub fn enumerate_motzkin(n: usize) -> Result<PathSet, PathError> {
    if n == 0 {
        return Err(PathError::EmptyLength);
    }
    Ok(PathSet {
        n,
        target_height: 0,
        paths: enumerate(n, 0, true),
    })
}

/// All step sequences of length `n` ending at height `sz`, with no floor.
pub fn enumerate_free_paths(n: usize, sz: i64) -> Result<PathSet, PathError> {
    if n == 0 {
        return Err(PathError::EmptyLength);
    }
    if sz.unsigned_abs() as usize > n {
        return Err(PathError::UnreachableHeight { n, height: sz });
    }
    Ok(PathSet {
        n,
        target_height: sz,
        paths: enumerate(n, sz, false),
    })
}

/// Coefficient of `x^k` in `(x⁻¹ + 1 + x)ⁿ`, by repeated polynomial
/// multiplication. Zero outside `|k| ≤ n`.
pub fn trinomial(n: usize, k: i64) -> BigUint {
    if k.unsigned_abs() as usize > n {
        return BigUint::default();
    }
    // coeffs[i] is the coefficient of x^(i − degree)
    let mut coeffs = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::default(); coeffs.len() + 2];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
            next[i + 2] += c;
        }
        coeffs = next;
    }
    coeffs[(k + n as i64) as usize].clone()
}

/// `M_n` via `M_n = M_{n−1} + Σ_{k=0}^{n−2} M_k M_{n−2−k}` with `M_0 = 1`.
pub fn motzkin_number(n: usize) -> Result<BigUint, PathError> {
    if n == 0 {
        return Err(PathError::EmptyLength);
    }
    let mut m: Vec<BigUint> = vec![BigUint::one(), BigUint::one()];
    for len in 2..=n {
        let mut next = m[len - 1].clone();
        for k in 0..=len - 2 {
            next += &m[k] * &m[len - 2 - k];
        }
        m.push(next);
    }
    Ok(m[n].clone())
}

/// Sum of the basis kets labeled by the paths of `ps`.
pub fn state_from_paths(ps: &PathSet) -> Result<RationalVector, PathError> {
    if ps.is_empty() {
        return Err(PathError::EmptySet);
    }
    let dim = 3usize.pow(ps.n as u32);
    let one = Rational::one();
    Ok(RationalVector::from_entries(dim, ps.iter().map(|p| (p.basis_index(), one.clone())))
        .expect("path index below 3^n"))
}

/// Ground-state candidates `|v_sz⟩` for `sz = −n..=n`, ascending in `sz`.
pub fn free_path_states(n: usize) -> Result<Vec<(i64, RationalVector)>, PathError> {
    let n_i = n as i64;
    (-n_i..=n_i)
        .map(|sz| Ok((sz, state_from_paths(&enumerate_free_paths(n, sz)?)?)))
        .collect()
}
