//! Raising and lowering operators `Σ±`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;

use super::{AlgebraError, Sign};
use crate::chain::{local_embed, spin_matrices, ChainSize, LocalOperator};
use crate::linalg::{OperatorMatrix, Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderPair {
    pub n: ChainSize,
    pub plus: OperatorMatrix,
    pub minus: OperatorMatrix,
    /// Number of `r`-tuples contributing to `Σ⁺`.
    pub term_count: usize,
}

impl LadderPair {
    pub fn get(&self, sign: Sign) -> &OperatorMatrix {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn minus_is_transpose(&self) -> bool {
        self.minus == self.plus.transpose()
    }

    /// True when every stored entry of `Σ⁺` and `Σ⁻` equals 1.
    pub fn entries_are_binary(&self) -> bool {
        let one = Rational::from_integer(1.into());
        self.plus.iter().chain(self.minus.iter()).all(|(_, _, q)| *q == one)
    }

    /// Smallest `k` with `(Σ⁺)^k = 0`, searched up to `limit`.
    pub fn nilpotency_degree(&self, limit: u32) -> Option<u32> {
        let mut power = OperatorMatrix::identity(self.plus.dim());
        for k in 1..=limit {
            power = power.matmul(&self.plus).expect("square operands");
            if power.is_zero() {
                return Some(k);
            }
        }
        None
    }
}

/// `s^r` for `r ∈ {−2, …, 2}` with `s^{±2} = (s^±)²`.
fn local_power(r: i64, sign: Sign) -> LocalOperator {
    let (plus, minus, _) = spin_matrices();
    let (up, down) = match sign {
        Sign::Plus => (plus, minus),
        Sign::Minus => (minus, plus),
    };
    let m = match r {
        0 => return LocalOperator::identity(),
        1 => up.matrix().clone(),
        2 => up.matrix().pow(2).expect("3x3"),
        -1 => down.matrix().clone(),
        -2 => down.matrix().pow(2).expect("3x3"),
        _ => unreachable!("exponent outside -2..=2"),
    };
    LocalOperator::new(m).expect("3x3")
}

fn sum_for(n: ChainSize, sign: Sign) -> Result<(OperatorMatrix, usize), AlgebraError> {
    let sites = n.get();
    let local: Vec<Vec<OperatorMatrix>> = (1..=sites)
        .map(|site| {
            (-2..=2)
                .map(|r| local_embed(&local_power(r, sign), site, n))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let mut total = OperatorMatrix::zero(n.dim());
    let mut count = 0;
    for r in (0..sites).map(|_| -2i64..=2).multi_cartesian_product() {
        if r.iter().sum::<i64>() != 1 {
            continue;
        }
        count += 1;
        let mut term = OperatorMatrix::identity(n.dim());
        for (site, &ri) in r.iter().enumerate() {
            if ri != 0 {
                term = term.matmul(&local[site][(ri + 2) as usize])?;
            }
        }
        total = total.add(&term)?;
    }
    Ok((total, count))
}

/// `Σ± = Σ s₁^{r₁}⋯s_n^{r_n}` over `r ∈ {−2,…,2}ⁿ` with `Σ r = ±1`.
pub fn sigma_sum(n: ChainSize) -> Result<LadderPair, AlgebraError> {
    let (plus, term_count) = sum_for(n, Sign::Plus)?;
    let (minus, _) = sum_for(n, Sign::Minus)?;
    Ok(LadderPair {
        n,
        plus,
        minus,
        term_count,
    })
}

/// Coefficient of `λ⁻¹` in `∏ᵢ (λ⁻²(s_i^±)² + λ⁻¹s_i^± + I + λs_i^∓ + λ²(s_i^∓)²)`.
fn residue_for(n: ChainSize, sign: Sign) -> OperatorMatrix {
    let sites = n.get() as i64;
    let factor: Vec<(i64, OperatorMatrix)> = (-2..=2)
        .map(|power| (power, local_power(-power, sign).matrix().clone()))
        .collect();
    let mut poly: BTreeMap<i64, OperatorMatrix> = BTreeMap::from([(0, OperatorMatrix::identity(1))]);
    for done in 1..=sites {
        let remaining = sites - done;
        let mut next: BTreeMap<i64, OperatorMatrix> = BTreeMap::new();
        for (e, a) in &poly {
            for (p, b) in &factor {
                let power = e + p;
                // later factors shift the exponent by at most 2 each
                if (power + 1).abs() > 2 * remaining {
                    continue;
                }
                let term = a.kron(b);
                let slot = next.entry(power).or_insert_with(|| OperatorMatrix::zero(term.dim()));
                *slot = slot.add(&term).expect("equal dimensions");
            }
        }
        poly = next;
    }
    poly.remove(&-1).unwrap_or_else(|| OperatorMatrix::zero(n.dim()))
}

/// Number of `r ∈ {−2,…,2}ⁿ` with `Σ r = 1`, as the coefficient of `x` in
/// `(x⁻² + x⁻¹ + 1 + x + x²)ⁿ`.
pub fn term_count(n: usize) -> u64 {
    let mut coeffs = vec![1u64];
    for _ in 0..n {
        let mut next = vec![0u64; coeffs.len() + 4];
        for (i, c) in coeffs.iter().enumerate() {
            for d in 0..5 {
                next[i + d] += c;
            }
        }
        coeffs = next;
    }
    // index 2n corresponds to x⁰
    coeffs[2 * n + 1]
}

/// `Σ±` via the residue formula.
pub fn sigma_residue(n: ChainSize) -> Result<LadderPair, AlgebraError> {
    Ok(LadderPair {
        n,
        plus: residue_for(n, Sign::Plus),
        minus: residue_for(n, Sign::Minus),
        term_count: term_count(n.get()) as usize,
    })
}

/// Ladder constants `c±(s)` with `Σ±·v_s = c±(s)·v_{s±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LadderConstants {
    pub plus: BTreeMap<i64, Rational>,
    pub minus: BTreeMap<i64, Rational>,
}

/// Checks the action of `Σ±` on the ground states `v_s` (`s = −n..n`) and
/// returns the constants.
pub fn ladder_action(
    lp: &LadderPair,
    ground_states: &BTreeMap<i64, RationalVector>,
) -> Result<LadderConstants, AlgebraError> {
    let n = lp.n.get() as i64;
    let state = |s: i64| ground_states.get(&s).ok_or(AlgebraError::MissingState(s));
    let mut out = LadderConstants::default();
    for sign in [Sign::Plus, Sign::Minus] {
        let op = lp.get(sign);
        for sz in -n..=n {
            let image = op.apply(state(sz)?)?;
            let target = sz + sign.step();
            if target.abs() > n {
                if !image.is_zero() {
                    return Err(AlgebraError::EdgeNotAnnihilated { sign, sz });
                }
                continue;
            }
            let c = image
                .proportionality_to(state(target)?)
                .ok_or(AlgebraError::NotProportional { sign, sz, target })?;
            if c.is_zero() {
                return Err(AlgebraError::ZeroLadderConstant { sign, sz });
            }
            match sign {
                Sign::Plus => out.plus.insert(sz, c),
                Sign::Minus => out.minus.insert(sz, c),
            };
        }
    }
    Ok(out)
}
