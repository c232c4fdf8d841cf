//! Exact kernels, ranks and linear solves.
//!
//! Everything funnels into [`nullspace`], which splits the column set into
//! connected blocks (columns sharing a nonzero row), clears denominators row by
//! row and runs fraction-free (Bareiss) elimination on each block. The
//! returned kernel basis is the canonical one read off the reduced echelon
//! form: one vector per non-pivot column `f`, with a 1 at `f`, zeros at the
//! other non-pivot columns, ordered by `f`. Because the pivot set of a block
//! diagonal matrix is the union of the blocks' pivot sets, the block split
//! does not change the result.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::matrix::OperatorMatrix;
use super::rational::{common_denominator, Rational};
use super::vector::{check_dims, RationalVector};
use super::LinalgError;

/// Result of expressing a target as a combination of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanSolution {
    /// The basis is independent and the target lies in its span.
    Unique(Vec<Rational>),
    /// The target lies in the span but the basis is dependent; the payload is
    /// the solution with every free coefficient set to zero.
    NonUnique(Vec<Rational>),
    NotInSpan,
}

impl SpanSolution {
    pub fn unique(self) -> Option<Vec<Rational>> {
        match self {
            SpanSolution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Nullspace {
    pub rank: usize,
    pub basis: Vec<RationalVector>,
}

/// Right null space of a sparse rectangular system with `ncols` unknowns.
pub fn nullspace(ncols: usize, rows: &[Vec<(usize, Rational)>]) -> Nullspace {
    let blocks = column_blocks(ncols, rows);
    let solved: Vec<(usize, Vec<(usize, RationalVector)>)> = blocks
        .par_iter()
        .map(|block| solve_block(ncols, rows, block))
        .collect();
    let rank = solved.iter().map(|(r, _)| r).sum();
    let mut tagged: Vec<(usize, RationalVector)> =
        solved.into_iter().flat_map(|(_, b)| b).collect();
    tagged.sort_by_key(|(free, _)| *free);
    Nullspace {
        rank,
        basis: tagged.into_iter().map(|(_, v)| v).collect(),
    }
}

/// Basis of the right null space of a square matrix.
pub fn kernel_basis(m: &OperatorMatrix) -> Vec<RationalVector> {
    nullspace(m.dim(), &matrix_rows(m)).basis
}

pub fn rank(m: &OperatorMatrix) -> usize {
    nullspace(m.dim(), &matrix_rows(m)).rank
}

/// Rank of a list of vectors of a common dimension.
pub fn vector_rank(vectors: &[RationalVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<(usize, Rational)>> = vectors
        .iter()
        .map(|v| v.iter().map(|(i, q)| (i, q.clone())).collect())
        .collect();
    nullspace(vectors[0].dim(), &rows).rank
}

/// Solves `target = Σ x_k basis[k]` for vectors.
pub fn solve_in_span_vectors(
    target: &RationalVector,
    basis: &[RationalVector],
) -> Result<SpanSolution, LinalgError> {
    for b in basis {
        check_dims(target.dim(), b.dim())?;
    }
    let k = basis.len();
    // one equation per coordinate: Σ x_j b_j[p] − t[p] = 0, unknowns (x, 1)
    let mut equations: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (j, b) in basis.iter().enumerate() {
        for (p, q) in b.iter() {
            equations.entry(p).or_default().push((j, q.clone()));
        }
    }
    for (p, q) in target.iter() {
        equations.entry(p).or_default().push((k, -q));
    }
    let rows: Vec<Vec<(usize, Rational)>> = equations.into_values().collect();
    let ns = nullspace(k + 1, &rows);
    let through_target = ns.basis.iter().find(|v| !v.get(k).is_zero());
    let Some(v) = through_target else {
        return Ok(SpanSolution::NotInSpan);
    };
    let t = v.get(k);
    let x: Vec<Rational> = (0..k).map(|j| v.get(j) / &t).collect();
    if ns.basis.len() > 1 {
        Ok(SpanSolution::NonUnique(x))
    } else {
        Ok(SpanSolution::Unique(x))
    }
}

/// Solves `target = Σ x_k basis[k]` over matrices, treating each matrix as a
/// vector of its `dim²` entries.
pub fn solve_in_span(
    target: &OperatorMatrix,
    basis: &[&OperatorMatrix],
) -> Result<SpanSolution, LinalgError> {
    for b in basis {
        check_dims(target.dim(), b.dim())?;
    }
    let flat: Vec<RationalVector> = basis.iter().map(|b| b.flatten()).collect();
    solve_in_span_vectors(&target.flatten(), &flat)
}

fn matrix_rows(m: &OperatorMatrix) -> Vec<Vec<(usize, Rational)>> {
    (0..m.dim()).map(|r| m.row(r).to_vec()).collect()
}

struct Block {
    columns: Vec<usize>,
    rows: Vec<usize>,
}

fn column_blocks(ncols: usize, rows: &[Vec<(usize, Rational)>]) -> Vec<Block> {
    let mut parent: Vec<usize> = (0..ncols).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for row in rows {
        if let Some(&(first, _)) = row.first() {
            for &(c, _) in &row[1..] {
                let (ra, rb) = (find(&mut parent, first), find(&mut parent, c));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }

    let mut by_root: BTreeMap<usize, Block> = BTreeMap::new();
    for c in 0..ncols {
        let root = find(&mut parent, c);
        by_root
            .entry(root)
            .or_insert_with(|| Block {
                columns: Vec::new(),
                rows: Vec::new(),
            })
            .columns
            .push(c);
    }
    for (r, row) in rows.iter().enumerate() {
        if let Some(&(first, _)) = row.first() {
            let root = find(&mut parent, first);
            by_root.get_mut(&root).expect("block exists").rows.push(r);
        }
    }
    by_root.into_values().collect()
}

fn solve_block(
    ncols: usize,
    rows: &[Vec<(usize, Rational)>],
    block: &Block,
) -> (usize, Vec<(usize, RationalVector)>) {
    let width = block.columns.len();
    let local: BTreeMap<usize, usize> = block
        .columns
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let mut mat: Vec<Vec<BigInt>> = block
        .rows
        .iter()
        .map(|&r| integer_row(&rows[r], width, &local))
        .collect();
    let pivots = bareiss_echelon(&mut mat, width);

    let mut is_pivot = vec![false; width];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let basis = (0..width)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let x = back_substitute(&mat, &pivots, width, f);
            let v = RationalVector::from_entries(
                ncols,
                x.into_iter()
                    .enumerate()
                    .map(|(i, q)| (block.columns[i], q)),
            )
            .expect("block column is in range");
            (block.columns[f], v)
        })
        .collect();
    (pivots.len(), basis)
}

fn integer_row(
    row: &[(usize, Rational)],
    width: usize,
    local: &BTreeMap<usize, usize>,
) -> Vec<BigInt> {
    let lcm = common_denominator(row.iter().map(|(_, q)| q));
    let mut out = vec![BigInt::zero(); width];
    for (c, q) in row {
        out[local[c]] = q.numer() * (&lcm / q.denom());
    }
    let g = out.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut out {
            *x /= &g;
        }
    }
    out
}

/// Fraction-free forward elimination in place. Pivot for each column is the
/// first remaining row with a nonzero entry. Returns `(row, col)` pivots.
fn bareiss_echelon(mat: &mut [Vec<BigInt>], width: usize) -> Vec<(usize, usize)> {
    let nrows = mat.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..width {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let (head, tail) = mat.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        tail.par_iter_mut().for_each(|row| {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..width {
                let a = &row[j];
                let b = &pivot_row[j];
                if a.is_zero() && (b.is_zero() || factor.is_zero()) {
                    continue;
                }
                let num = &pivot * a - &factor * b;
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        });
        prev = pivot;
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

fn back_substitute(
    mat: &[Vec<BigInt>],
    pivots: &[(usize, usize)],
    width: usize,
    free: usize,
) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); width];
    x[free] = Rational::one();
    for &(r, c) in pivots.iter().rev() {
        let row = &mat[r];
        let s = (c + 1..width)
            .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
            .fold(Rational::zero(), |acc, j| {
                acc + Rational::from_integer(row[j].clone()) * &x[j]
            });
        if !s.is_zero() {
            x[c] = -s / Rational::from_integer(row[c].clone());
        }
    }
    x
}
