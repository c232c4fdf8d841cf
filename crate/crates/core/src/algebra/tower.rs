//! The tower of triples `T_{k+1}^± = ±[T_k^z, T_k^±]`, `T_k^z = [T_k^+, T_k^-]`.

use rayon::prelude::*;

use super::ladder::LadderPair;
use super::{AlgebraError, Sign};
use crate::chain::ChainSize;
use crate::linalg::elimination::vector_rank;
use crate::linalg::{solve_in_span, OperatorMatrix, Rational, SpanSolution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub plus: OperatorMatrix,
    pub minus: OperatorMatrix,
    pub z: OperatorMatrix,
}

impl Triple {
    fn from_ladders(plus: OperatorMatrix, minus: OperatorMatrix) -> Result<Self, AlgebraError> {
        let z = plus.commutator(&minus)?;
        Ok(Self { plus, minus, z })
    }

    fn next(&self) -> Result<Self, AlgebraError> {
        let plus = self.z.commutator(&self.plus)?;
        let minus = self.z.commutator(&self.minus)?.neg();
        Self::from_ladders(plus, minus)
    }

    pub fn get(&self, sign: Sign) -> &OperatorMatrix {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTower {
    pub n: ChainSize,
    /// Levels `1..=n`; level 1 is `(Σ⁺, Σ⁻, Σ^z)`.
    pub levels: Vec<Triple>,
    /// Coefficients of `T_{n+1}^z` in `T_1^z, …, T_n^z`.
    pub extra_z_coeffs: Vec<Rational>,
}

impl TripleTower {
    pub fn plus(&self) -> Vec<&OperatorMatrix> {
        self.levels.iter().map(|t| &t.plus).collect()
    }

    pub fn minus(&self) -> Vec<&OperatorMatrix> {
        self.levels.iter().map(|t| &t.minus).collect()
    }

    pub fn z(&self) -> Vec<&OperatorMatrix> {
        self.levels.iter().map(|t| &t.z).collect()
    }
}

/// Builds `n` levels, checks that the `T^z` commute and span an
/// `n`-dimensional space, and that level `n + 1` adds nothing new.
pub fn build_tower(lp: &LadderPair) -> Result<TripleTower, AlgebraError> {
    let n = lp.n.get();
    let mut levels = vec![Triple::from_ladders(lp.plus.clone(), lp.minus.clone())?];
    while levels.len() <= n {
        let next = levels.last().expect("nonempty").next()?;
        levels.push(next);
    }
    let extra = levels.pop().expect("n + 1 levels");

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let failures: Vec<(usize, usize)> = pairs
        .par_iter()
        .filter_map(|&(i, j)| match levels[i].z.commutator(&levels[j].z) {
            Ok(c) if c.is_zero() => None,
            _ => Some((i, j)),
        })
        .collect();
    if let Some(&(i, j)) = failures.first() {
        return Err(AlgebraError::NotAbelian { i: i + 1, j: j + 1 });
    }

    let flat: Vec<_> = levels.iter().map(|t| t.z.flatten()).collect();
    let rank = vector_rank(&flat);
    if rank != n {
        return Err(AlgebraError::RankMismatch { rank, expected: n });
    }
    let zs: Vec<&OperatorMatrix> = levels.iter().map(|t| &t.z).collect();
    let extra_z_coeffs = match solve_in_span(&extra.z, &zs)? {
        SpanSolution::Unique(x) => x,
        _ => return Err(AlgebraError::ExtraLevelOutsideSpan { level: n + 1, n }),
    };
    Ok(TripleTower {
        n: lp.n,
        levels,
        extra_z_coeffs,
    })
}
