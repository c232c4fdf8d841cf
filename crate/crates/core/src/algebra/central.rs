//! The central element `p = S^z + Σ x_k T_k^z` and the expansion
//! `S^z = p + Σ α_i h_i`.

use rayon::prelude::*;

use super::roots::ChevalleyBasis;
use super::tower::TripleTower;
use super::AlgebraError;
use crate::chain::ChainSize;
use crate::linalg::{solve_in_span, OperatorMatrix, Rational, SpanSolution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralDecomposition {
    pub n: ChainSize,
    pub p: OperatorMatrix,
    /// `x_k` in `p = S^z + Σ x_k T_k^z`.
    pub tower_coeffs: Vec<Rational>,
    /// `α_i` in `S^z = p + Σ α_i h_i`.
    pub alpha: Vec<Rational>,
}

/// Returns the first operator in `named` that does not commute with `p`.
pub fn first_non_commuting<'a>(
    p: &OperatorMatrix,
    named: &'a [(String, &OperatorMatrix)],
) -> Option<&'a str> {
    named
        .par_iter()
        .find_first(|(_, m)| !matches!(p.commutator(m), Ok(c) if c.is_zero()))
        .map(|(name, _)| name.as_str())
}

/// Solves `[S^z + Σ x_k T_k^z, T_1^+] = 0`, checks that the resulting `p`
/// commutes with the whole tower and every generator, and expands `S^z − p`
/// in the `h_i`.
pub fn central_element(
    tower: &TripleTower,
    cb: &ChevalleyBasis,
    sz_op: &OperatorMatrix,
) -> Result<CentralDecomposition, AlgebraError> {
    let sigma_plus = &tower.levels[0].plus;
    let target = sz_op.commutator(sigma_plus)?.neg();
    let images: Vec<OperatorMatrix> = tower
        .levels
        .par_iter()
        .map(|t| t.z.commutator(sigma_plus))
        .collect::<Result<_, _>>()?;
    let image_refs: Vec<&OperatorMatrix> = images.iter().collect();
    let tower_coeffs = match solve_in_span(&target, &image_refs)? {
        SpanSolution::Unique(x) => x,
        SpanSolution::NonUnique(_) => return Err(AlgebraError::CentralElementNotUnique),
        SpanSolution::NotInSpan => return Err(AlgebraError::NoCentralElement),
    };
    let correction = OperatorMatrix::linear_combination(sz_op.dim(), &tower_coeffs, &tower.z())?;
    let p = sz_op.add(&correction)?;

    let mut named: Vec<(String, &OperatorMatrix)> = Vec::new();
    for (k, t) in tower.levels.iter().enumerate() {
        named.push((format!("T{}+", k + 1), &t.plus));
        named.push((format!("T{}-", k + 1), &t.minus));
    }
    for (i, r) in cb.roots.iter().enumerate() {
        named.push((format!("e{}", i + 1), &r.e));
        named.push((format!("f{}", i + 1), &r.f));
        named.push((format!("h{}", i + 1), &r.h));
    }
    if let Some(name) = first_non_commuting(&p, &named) {
        return Err(AlgebraError::NotCentral(name.to_string()));
    }

    let rest = sz_op.sub(&p)?;
    let alpha = match solve_in_span(&rest, &cb.h())? {
        SpanSolution::Unique(x) => x,
        SpanSolution::NonUnique(_) => return Err(AlgebraError::DecompositionNotUnique),
        SpanSolution::NotInSpan => return Err(AlgebraError::DecompositionFailed),
    };
    Ok(CentralDecomposition {
        n: tower.n,
        p,
        tower_coeffs,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_tower, extract_roots, sigma_sum};
    use crate::chain::total_sz;
    use crate::linalg::rational::{int, ratio};

    #[test]
    fn two_site_decomposition() {
        let n = ChainSize::new(2).unwrap();
        let tower = build_tower(&sigma_sum(n).unwrap()).unwrap();
        let cb = extract_roots(&tower).unwrap();
        let d = central_element(&tower, &cb, &total_sz(n).unwrap()).unwrap();
        assert_eq!(d.tower_coeffs, [ratio(-7, 6), ratio(1, 24)]);
        assert_eq!(d.alpha, [int(2), ratio(3, 2)]);
        assert_eq!(d.p.get(1, 1), ratio(1, 2));
        assert_eq!(d.p.get(5, 7), ratio(1, 2));
        assert_eq!(d.p.nnz(), 8);
    }
}
