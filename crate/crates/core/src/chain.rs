//! Operators of the spin-1 Motzkin chain on `(ℂ³)^{⊗n}`.
//!
//! Sites are numbered from 1. Two-site operators use the 9×9 layout in which
//! the first factor selects the 3×3 block and the second factor the entry
//! inside it, matching [`OperatorMatrix::kron`].

use num_traits::One;
use thiserror::Error;

use crate::linalg::rational::{int, ratio};
use crate::linalg::{LinalgError, OperatorMatrix, Rational};

/// Largest Hilbert-space dimension built by default (`3⁶`).
pub const DEFAULT_DIM_CAP: usize = 729;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("chain length {0} is below the minimum of 2")]
    TooShort(usize),
    #[error("chain length {n} gives dimension 3^{n}, above the cap of {cap}")]
    ExceedsCap { n: usize, cap: usize },
    #[error("site {site} is outside 1..={max}")]
    SiteOutOfRange { site: usize, max: usize },
    #[error("local operator must be 3x3, got dimension {0}")]
    NotLocal(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Number of sites, validated against the dimension cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainSize(usize);

impl ChainSize {
    pub fn new(n: usize) -> Result<Self, ChainError> {
        Self::with_dim_cap(n, DEFAULT_DIM_CAP)
    }

    pub fn with_dim_cap(n: usize, cap: usize) -> Result<Self, ChainError> {
        if n < 2 {
            return Err(ChainError::TooShort(n));
        }
        match 3usize.checked_pow(n as u32) {
            Some(dim) if dim <= cap => Ok(Self(n)),
            _ => Err(ChainError::ExceedsCap { n, cap }),
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// `3ⁿ`.
    pub fn dim(self) -> usize {
        3usize.pow(self.0 as u32)
    }
}

/// A 3×3 single-site operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalOperator(OperatorMatrix);

impl LocalOperator {
    pub fn new(m: OperatorMatrix) -> Result<Self, ChainError> {
        if m.dim() != 3 {
            return Err(ChainError::NotLocal(m.dim()));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(OperatorMatrix::identity(3))
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.0
    }
}

/// `(s⁺, s⁻, s^z)` with 0/1 entries for the ladder matrices.
pub fn spin_matrices() -> (LocalOperator, LocalOperator, LocalOperator) {
    let plus = OperatorMatrix::from_integer_rows(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        .expect("3x3 literal");
    let minus = plus.transpose();
    let z = OperatorMatrix::diagonal(&[int(1), int(0), int(-1)]);
    (LocalOperator(plus), LocalOperator(minus), LocalOperator(z))
}

/// `I^{⊗(site−1)} ⊗ op ⊗ I^{⊗(n−site)}`.
pub fn local_embed(op: &LocalOperator, site: usize, n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    embed(op.matrix(), 1, site, n)
}

/// Embeds a 9×9 operator on sites `(site, site + 1)`.
pub fn embed_pair(op: &OperatorMatrix, site: usize, n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    if op.dim() != 9 {
        return Err(LinalgError::DimensionMismatch {
            left: op.dim(),
            right: 9,
        }
        .into());
    }
    embed(op, 2, site, n)
}

fn embed(op: &OperatorMatrix, width: usize, site: usize, n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    let max = n.get() + 1 - width;
    if site == 0 || site > max {
        return Err(ChainError::SiteOutOfRange { site, max });
    }
    let left = OperatorMatrix::identity(3usize.pow(site as u32 - 1));
    let right = OperatorMatrix::identity(3usize.pow((n.get() + 1 - width - site) as u32));
    Ok(left.kron(op).kron(&right))
}

fn ket(word: &str) -> usize {
    word.chars()
        .map(|c| match c {
            'u' => 0,
            'f' => 1,
            'd' => 2,
            _ => unreachable!("fixed literal"),
        })
        .fold(0, |acc, d| acc * 3 + d)
}

/// `½ (|a⟩ − |b⟩)(⟨a| − ⟨b|)` on two sites.
fn half_difference_projector(a: &str, b: &str) -> OperatorMatrix {
    let (ia, ib) = (ket(a), ket(b));
    let half = ratio(1, 2);
    OperatorMatrix::from_entries(
        9,
        [
            (ia, ia, half.clone()),
            (ib, ib, half.clone()),
            (ia, ib, -half.clone()),
            (ib, ia, -half),
        ],
    )
    .expect("two-site index")
}

/// The rank-1 projectors `(U, D, F)`.
pub fn projector_udf() -> (OperatorMatrix, OperatorMatrix, OperatorMatrix) {
    (
        half_difference_projector("uf", "fu"),
        half_difference_projector("df", "fd"),
        half_difference_projector("ud", "ff"),
    )
}

/// `Π = U + D + F`.
pub fn projector_pi() -> OperatorMatrix {
    let (u, d, f) = projector_udf();
    u.add(&d).and_then(|m| m.add(&f)).expect("9x9 operands")
}

/// The swap `|ab⟩ ↦ |ba⟩` on `ℂ³ ⊗ ℂ³`.
pub fn permutation_p() -> OperatorMatrix {
    OperatorMatrix::from_entries(
        9,
        (0..3).flat_map(|a| (0..3).map(move |b| (b * 3 + a, a * 3 + b, Rational::one()))),
    )
    .expect("two-site index")
}

/// `P_{i,i+1}`.
pub fn transposition(i: usize, n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    embed_pair(&permutation_p(), i, n)
}

/// `Π_{i,i+1}`.
pub fn edge_term(i: usize, n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    embed_pair(&projector_pi(), i, n)
}

/// `C = P_{1,2} P_{2,3} ⋯ P_{n−1,n}`, moving the content of site `i` to
/// site `i + 1` (and site `n` to site 1).
pub fn cyclic_shift(n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    let mut c = OperatorMatrix::identity(n.dim());
    for i in 1..n.get() {
        c = c.matmul(&transposition(i, n)?)?;
    }
    Ok(c)
}

/// `Π_{n,1}` as `P_{n−1,n}⋯P_{1,2} Π_{1,2} P_{1,2}⋯P_{n−1,n}`.
pub fn wrap_term(n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    let mut out = edge_term(1, n)?;
    for i in 1..n.get() {
        let p = transposition(i, n)?;
        out = p.matmul(&out)?.matmul(&p)?;
    }
    Ok(out)
}

/// `Π_{n,1}` by direct index arithmetic: `Π` with its first factor on site
/// `n` and its second on site 1.
pub fn wrap_term_direct(n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    let pi = projector_pi();
    let sites = n.get();
    let dim = n.dim();
    let stride_last = 1;
    let stride_first = 3usize.pow(sites as u32 - 1);
    let mut entries = Vec::new();
    for col in 0..dim {
        let first = col / stride_first;
        let last = (col / stride_last) % 3;
        let middle = col - first * stride_first - last * stride_last;
        let pair_col = last * 3 + first;
        for r9 in 0..9 {
            let q = pi.get(r9, pair_col);
            if q == Rational::default() {
                continue;
            }
            let (new_last, new_first) = (r9 / 3, r9 % 3);
            let row = middle + new_first * stride_first + new_last * stride_last;
            entries.push((row, col, q));
        }
    }
    Ok(OperatorMatrix::from_entries(dim, entries)?)
}

/// `S^z = Σ_j s^z_j`.
pub fn total_sz(n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    let (_, _, z) = spin_matrices();
    let mut out = OperatorMatrix::zero(n.dim());
    for j in 1..=n.get() {
        out = out.add(&local_embed(&z, j, n)?)?;
    }
    Ok(out)
}

/// `Σ_{i<n} Π_{i,i+1} + |d⟩⟨d|₁ + |u⟩⟨u|ₙ`.
pub fn h_open(n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    let mut h = OperatorMatrix::zero(n.dim());
    for i in 1..n.get() {
        h = h.add(&edge_term(i, n)?)?;
    }
    let down = LocalOperator(OperatorMatrix::diagonal(&[int(0), int(0), int(1)]));
    let up = LocalOperator(OperatorMatrix::diagonal(&[int(1), int(0), int(0)]));
    h = h.add(&local_embed(&down, 1, n)?)?;
    h = h.add(&local_embed(&up, n.get(), n)?)?;
    Ok(h)
}

/// The local terms of the periodic Hamiltonian: edges `1..n−1`, then the wrap.
pub fn periodic_terms(n: ChainSize) -> Result<Vec<OperatorMatrix>, ChainError> {
    let mut terms = (1..n.get())
        .map(|i| edge_term(i, n))
        .collect::<Result<Vec<_>, _>>()?;
    terms.push(wrap_term(n)?);
    Ok(terms)
}

/// `Σ_{i<n} Π_{i,i+1} + Π_{n,1}`.
pub fn h_periodic(n: ChainSize) -> Result<OperatorMatrix, ChainError> {
    let mut h = OperatorMatrix::zero(n.dim());
    for term in periodic_terms(n)? {
        h = h.add(&term)?;
    }
    Ok(h)
}
