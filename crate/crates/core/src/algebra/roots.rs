//! Chevalley generators, the Cartan matrix and the Serre relations.
//!
//! Roots are the joint eigenvectors of `ad(T_k^z)` on `span{T_k^+}`. Each
//! generator is kept unnormalized: `e'_i = Σ_k c_k T_k^+`, `f'_i = Σ_k c_k T_k^-`
//! with `c_1 = 1`. The normalized generators are `e_i = ρ_i e'_i`,
//! `f_i = ρ_i f'_i`, `h_i = ρ_i² [e'_i, f'_i]`; only `ρ_i²` is stored, and every
//! relation below is checked in a form that depends on `ρ_i²` alone.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::tower::TripleTower;
use super::AlgebraError;
use crate::chain::ChainSize;
use crate::linalg::elimination::vector_rank;
use crate::linalg::rational::{int, is_integer, render, to_i64};
use crate::linalg::{
    rational_eigenpairs, solve_in_span, solve_in_span_vectors, OperatorMatrix, Rational, RationalVector,
    SpanSolution,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients on `T_1^+, …, T_n^+`; the first is 1.
    pub coeffs: Vec<Rational>,
    /// Eigenvalues of `ad(T_k^z)` on `e'`.
    pub weights: Vec<Rational>,
    /// `ρ²`.
    pub rho_sq: Rational,
    /// `e'`, unnormalized.
    pub e: OperatorMatrix,
    /// `f'`, unnormalized.
    pub f: OperatorMatrix,
    /// `h = ρ² [e', f']`.
    pub h: OperatorMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyBasis {
    pub n: ChainSize,
    /// Roots in canonical order.
    pub roots: Vec<Root>,
    pub cartan: Vec<Vec<i64>>,
    /// `ordering[i]` is the position of canonical root `i` in the
    /// eigenvalue order produced by the diagonalization.
    pub ordering: Vec<usize>,
}

/// The Cartan matrix of `C_n`: tridiagonal with `−2` at `(n, n−1)`.
pub fn canonical_cn(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    if n >= 2 {
        a[n - 1][n - 2] = -2;
    }
    a
}

pub fn is_canonical_cn(a: &[Vec<i64>]) -> bool {
    a == canonical_cn(a.len())
}

/// Matrix of `ad(z)` on `span(basis)`: column `j` holds the coordinates of
/// `[z, basis[j]]`.
fn adjoint_matrix(
    z: &OperatorMatrix,
    basis: &[&OperatorMatrix],
    k: usize,
) -> Result<OperatorMatrix, AlgebraError> {
    let n = basis.len();
    let columns: Vec<Result<Vec<Rational>, AlgebraError>> = basis
        .par_iter()
        .enumerate()
        .map(|(j, b)| match solve_in_span(&z.commutator(b)?, basis)? {
            SpanSolution::Unique(x) => Ok(x),
            _ => Err(AlgebraError::ClosureFailure { k: k + 1, j: j + 1 }),
        })
        .collect();
    let mut entries = Vec::new();
    for (j, col) in columns.into_iter().enumerate() {
        for (i, q) in col?.into_iter().enumerate() {
            entries.push((i, j, q));
        }
    }
    Ok(OperatorMatrix::from_entries(n, entries)?)
}

struct JointSpace {
    weights: Vec<Rational>,
    basis: Vec<RationalVector>,
}

/// Splits `space` into eigenspaces of `m` (which must preserve it), in
/// ascending eigenvalue order.
fn refine(space: JointSpace, m: &OperatorMatrix, k: usize) -> Result<Vec<JointSpace>, AlgebraError> {
    let not_diag = || AlgebraError::NotDiagonalizable { k: k + 1 };
    if let [v] = &space.basis[..] {
        let value = m.apply(v)?.proportionality_to(v).ok_or_else(not_diag)?;
        let mut weights = space.weights;
        weights.push(value);
        return Ok(vec![JointSpace {
            weights,
            basis: space.basis,
        }]);
    }
    let d = space.basis.len();
    let mut entries = Vec::new();
    for (j, b) in space.basis.iter().enumerate() {
        let x = solve_in_span_vectors(&m.apply(b)?, &space.basis)?
            .unique()
            .ok_or_else(not_diag)?;
        entries.extend(x.into_iter().enumerate().map(|(i, q)| (i, j, q)));
    }
    let restricted = OperatorMatrix::from_entries(d, entries)?;
    let eig = rational_eigenpairs(&restricted)?;
    if !eig.is_complete() {
        return Err(not_diag());
    }
    let mut out = Vec::with_capacity(eig.pairs.len());
    for pair in eig.pairs {
        let basis = pair
            .vectors
            .iter()
            .map(|u| {
                u.iter().try_fold(RationalVector::zeros(m.dim()), |acc, (i, q)| {
                    acc.add(&space.basis[i].scale(q))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut weights = space.weights.clone();
        weights.push(pair.value);
        out.push(JointSpace { weights, basis });
    }
    Ok(out)
}

/// Extracts the simple roots, their normalizations and the Cartan matrix, and
/// orders the roots so that the Cartan matrix has canonical `C_n` form.
pub fn extract_roots(tower: &TripleTower) -> Result<ChevalleyBasis, AlgebraError> {
    let n = tower.levels.len();
    let plus = tower.plus();
    let minus = tower.minus();
    let flat: Vec<_> = plus.iter().map(|m| m.flatten()).collect();
    let rank = vector_rank(&flat);
    if rank != n {
        return Err(AlgebraError::RankMismatch { rank, expected: n });
    }

    let adjoints = tower
        .z()
        .iter()
        .enumerate()
        .map(|(k, z)| adjoint_matrix(z, &plus, k))
        .collect::<Result<Vec<_>, _>>()?;

    let identity = (0..n)
        .map(|i| RationalVector::unit(n, i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut spaces = vec![JointSpace {
        weights: Vec::new(),
        basis: identity,
    }];
    for (k, m) in adjoints.iter().enumerate() {
        let mut next = Vec::new();
        for space in spaces {
            next.extend(refine(space, m, k)?);
        }
        spaces = next;
    }

    let dim = tower.levels[0].plus.dim();
    let mut coeffs_list = Vec::with_capacity(spaces.len());
    let mut weights_list = Vec::with_capacity(spaces.len());
    for (i, space) in spaces.into_iter().enumerate() {
        let [v] = &space.basis[..] else {
            return Err(AlgebraError::DegenerateRoot {
                dim: space.basis.len(),
            });
        };
        let lead = v.get(0);
        if lead.is_zero() {
            return Err(AlgebraError::ZeroLeadingCoefficient { root: i + 1 });
        }
        let scaled = v.scale(&lead.recip());
        coeffs_list.push(scaled.to_dense());
        weights_list.push(space.weights);
    }

    let e: Vec<OperatorMatrix> = coeffs_list
        .iter()
        .map(|c| OperatorMatrix::linear_combination(dim, c, &plus))
        .collect::<Result<_, _>>()?;
    let f: Vec<OperatorMatrix> = coeffs_list
        .iter()
        .map(|c| OperatorMatrix::linear_combination(dim, c, &minus))
        .collect::<Result<_, _>>()?;

    let off_diagonal: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).filter(|(i, j)| i != j).collect();
    let bad = off_diagonal
        .par_iter()
        .find_first(|&&(i, j)| !matches!(e[i].commutator(&f[j]), Ok(c) if c.is_zero()));
    if let Some(&(i, j)) = bad {
        return Err(AlgebraError::CrossCommutator { i: i + 1, j: j + 1 });
    }

    let h_prime: Vec<OperatorMatrix> = e
        .par_iter()
        .zip(&f)
        .map(|(ei, fi)| ei.commutator(fi))
        .collect::<Result<_, _>>()?;

    // μ[i][j] with [h'_i, e'_j] = μ_ij e'_j
    let mu: Vec<Vec<Rational>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    h_prime[i]
                        .commutator(&e[j])?
                        .proportionality_to(&e[j])
                        .ok_or(AlgebraError::NonScalarAction { i: i + 1, j: j + 1 })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let mut rho_sq = Vec::with_capacity(n);
    for (i, row) in mu.iter().enumerate() {
        let lambda = &row[i];
        if !lambda.is_positive() {
            return Err(AlgebraError::NonPositiveScale {
                root: i + 1,
                lambda: render(lambda),
            });
        }
        rho_sq.push(int(2) / lambda);
    }

    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let value = &rho_sq[i] * &mu[i][j];
            cartan[i][j] = match (is_integer(&value), to_i64(&value)) {
                (true, Some(v)) => v,
                _ => {
                    return Err(AlgebraError::NonIntegerCartan {
                        i: i + 1,
                        j: j + 1,
                        value: render(&value),
                    })
                }
            };
        }
    }

    let target = canonical_cn(n);
    let ordering = (0..n)
        .permutations(n)
        .find(|sigma| (0..n).all(|a| (0..n).all(|b| cartan[sigma[a]][sigma[b]] == target[a][b])))
        .ok_or_else(|| AlgebraError::NotTypeC {
            cartan: cartan.clone(),
        })?;

    let mut slots: Vec<Option<Root>> = (0..n)
        .map(|i| {
            Some(Root {
                coeffs: coeffs_list[i].clone(),
                weights: weights_list[i].clone(),
                h: h_prime[i].scale(&rho_sq[i]),
                rho_sq: rho_sq[i].clone(),
                e: e[i].clone(),
                f: f[i].clone(),
            })
        })
        .collect();
    let roots = ordering
        .iter()
        .map(|&i| slots[i].take().expect("permutation"))
        .collect();
    Ok(ChevalleyBasis {
        n: tower.n,
        roots,
        cartan: target,
        ordering,
    })
}

/// The Cartan matrix in canonical order, checked against `C_n`.
pub fn cartan_matrix(cb: &ChevalleyBasis) -> Result<Vec<Vec<i64>>, AlgebraError> {
    if is_canonical_cn(&cb.cartan) {
        Ok(cb.cartan.clone())
    } else {
        Err(AlgebraError::NotTypeC {
            cartan: cb.cartan.clone(),
        })
    }
}

/// One checked relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Copy)]
enum Relation {
    HH(usize, usize),
    EFDiagonal(usize),
    EFCross(usize, usize),
    HE(usize, usize),
    HF(usize, usize),
    AdE(usize, usize),
    AdF(usize, usize),
}

fn ad_power(x: &OperatorMatrix, y: &OperatorMatrix, times: i64) -> OperatorMatrix {
    (0..times).fold(y.clone(), |acc, _| x.commutator(&acc).expect("same dimension"))
}

impl Relation {
    fn describe(self, a: &[Vec<i64>]) -> String {
        let (i, j) = match self {
            Relation::HH(i, j)
            | Relation::EFCross(i, j)
            | Relation::HE(i, j)
            | Relation::HF(i, j)
            | Relation::AdE(i, j)
            | Relation::AdF(i, j) => (i, j),
            Relation::EFDiagonal(i) => (i, i),
        };
        let a_ij = a[i][j];
        let (i, j) = (i + 1, j + 1);
        match self {
            Relation::HH(..) => format!("[h{i},h{j}]=0"),
            Relation::EFDiagonal(_) => format!("[e{i},f{i}]=h{i}"),
            Relation::EFCross(..) => format!("[e{i},f{j}]=0"),
            Relation::HE(..) => format!("[h{i},e{j}]={a_ij}e{j}"),
            Relation::HF(..) => format!("[h{i},f{j}]={}f{j}", -a_ij),
            Relation::AdE(..) => format!("(ad e{i})^{} e{j}=0", 1 - a_ij),
            Relation::AdF(..) => format!("(ad f{i})^{} f{j}=0", 1 - a_ij),
        }
    }

    fn holds(self, cb: &ChevalleyBasis) -> bool {
        let r = &cb.roots;
        let a = |i: usize, j: usize| int(cb.cartan[i][j]);
        match self {
            Relation::HH(i, j) => r[i].h.commutator(&r[j].h).is_ok_and(|c| c.is_zero()),
            Relation::EFDiagonal(i) => r[i]
                .e
                .commutator(&r[i].f)
                .is_ok_and(|c| c.scale(&r[i].rho_sq) == r[i].h),
            Relation::EFCross(i, j) => r[i].e.commutator(&r[j].f).is_ok_and(|c| c.is_zero()),
            Relation::HE(i, j) => r[i].h.commutator(&r[j].e).is_ok_and(|c| c == r[j].e.scale(&a(i, j))),
            Relation::HF(i, j) => r[i]
                .h
                .commutator(&r[j].f)
                .is_ok_and(|c| c == r[j].f.scale(&-a(i, j))),
            Relation::AdE(i, j) => ad_power(&r[i].e, &r[j].e, 1 - cb.cartan[i][j]).is_zero(),
            Relation::AdF(i, j) => ad_power(&r[i].f, &r[j].f, 1 - cb.cartan[i][j]).is_zero(),
        }
    }
}

/// Checks every Serre relation for the basis, in a fixed order.
pub fn verify_serre(cb: &ChevalleyBasis) -> Vec<SerreCheck> {
    let n = cb.roots.len();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relations.push(Relation::HH(i, j));
        }
    }
    for i in 0..n {
        relations.push(Relation::EFDiagonal(i));
    }
    for (i, j) in (0..n).cartesian_product(0..n) {
        if i != j {
            relations.push(Relation::EFCross(i, j));
        }
    }
    for (i, j) in (0..n).cartesian_product(0..n) {
        relations.push(Relation::HE(i, j));
        relations.push(Relation::HF(i, j));
    }
    for (i, j) in (0..n).cartesian_product(0..n) {
        if i != j {
            relations.push(Relation::AdE(i, j));
            relations.push(Relation::AdF(i, j));
        }
    }
    relations
        .par_iter()
        .map(|&rel| SerreCheck {
            relation: rel.describe(&cb.cartan),
            holds: rel.holds(cb),
        })
        .collect()
}

impl ChevalleyBasis {
    pub fn e(&self) -> Vec<&OperatorMatrix> {
        self.roots.iter().map(|r| &r.e).collect()
    }

    pub fn f(&self) -> Vec<&OperatorMatrix> {
        self.roots.iter().map(|r| &r.f).collect()
    }

    pub fn h(&self) -> Vec<&OperatorMatrix> {
        self.roots.iter().map(|r| &r.h).collect()
    }
}

impl Root {
    /// Returns `s` with `e' = s · m` when `s > 0`.
    pub fn positive_multiple_of(&self, m: &OperatorMatrix) -> Option<Rational> {
        self.e.proportionality_to(m).filter(|s| s.is_positive())
    }

    /// True when `ρ e' = κ m` for the given `κ² > 0` (with `ρ, κ > 0`).
    pub fn normalized_equals(&self, m: &OperatorMatrix, kappa_sq: &Rational) -> bool {
        match self.positive_multiple_of(m) {
            Some(s) => &s * &s * &self.rho_sq == *kappa_sq,
            None => false,
        }
    }

    pub fn leading_is_one(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one())
    }
}
