//! End-to-end checks of the ground-state and symmetry-algebra claims, collected
//! into a serializable report.
//!
//! Stages run in the fixed order `theorem1 → c1 → c2 → c3 → c4`. Requesting a
//! stage pulls in every stage before it; a stage whose predecessor failed is
//! reported as `SKIPPED`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::reference::reference_values;
use crate::algebra::{
    build_tower, central_element, extract_roots, is_canonical_cn, ladder_action, sigma_residue, sigma_sum,
    verify_serre, ChevalleyBasis, LadderPair, SerreCheck, TripleTower,
};
use crate::chain::{cyclic_shift, h_open, h_periodic, periodic_terms, total_sz, ChainSize};
use crate::linalg::elimination::vector_rank;
use crate::linalg::rational::{int, is_integer, render};
use crate::linalg::{kernel_basis, OperatorMatrix, Rational};
use crate::paths::{enumerate_motzkin, free_path_states, state_from_paths, trinomial};

/// Default largest chain length for the algebra stages (`c3`, `c4`).
pub const DEFAULT_ALGEBRA_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Theorem1,
    C1,
    C2,
    C3,
    C4,
}

impl Stage {
    pub const ALL: [Stage; 5] = [Stage::Theorem1, Stage::C1, Stage::C2, Stage::C3, Stage::C4];

    /// The stage this one consumes, if any.
    pub fn dependency(self) -> Option<Stage> {
        match self {
            Stage::Theorem1 => None,
            Stage::C1 => Some(Stage::Theorem1),
            Stage::C2 => Some(Stage::C1),
            Stage::C3 => Some(Stage::C2),
            Stage::C4 => Some(Stage::C3),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Stage::Theorem1 => "theorem1",
            Stage::C1 => "c1",
            Stage::C2 => "c2",
            Stage::C3 => "c3",
            Stage::C4 => "c4",
        }
    }

    fn uses_algebra_cap(self) -> bool {
        matches!(self, Stage::C3 | Stage::C4)
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|stage| stage.name() == s)
            .ok_or_else(|| format!("unknown stage `{s}` (expected theorem1, c1, c2, c3, c4 or all)"))
    }
}

/// Requested stages closed under dependencies.
pub fn with_dependencies(requested: &BTreeSet<Stage>) -> BTreeSet<Stage> {
    let mut out = BTreeSet::new();
    for &stage in requested {
        let mut cur = Some(stage);
        while let Some(s) = cur {
            out.insert(s);
            cur = s.dependency();
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One report section: a status, an optional failure witness or skip reason,
/// and the stage's computed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section<T> {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub data: Option<T>,
}

impl<T> Section<T> {
    fn skipped(note: impl Into<String>) -> Self {
        Self {
            status: Status::Skipped,
            witness: None,
            note: Some(note.into()),
            data: None,
        }
    }

    fn failed(witness: impl Into<String>, data: Option<T>) -> Self {
        Self {
            status: Status::Fail,
            witness: Some(witness.into()),
            note: None,
            data,
        }
    }

    /// `PASS` when `failures` is empty, otherwise `FAIL` with the first one.
    fn judged(failures: Vec<String>, data: T) -> Self {
        match failures.into_iter().next() {
            None => Self {
                status: Status::Pass,
                witness: None,
                note: None,
                data: Some(data),
            },
            Some(w) => Self::failed(w, Some(data)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1 {
    pub kernel_dim: usize,
    pub motzkin_paths: usize,
    pub kernel_components: usize,
    pub matches_motzkin_state: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundState {
    pub sz: i64,
    pub norm: String,
    pub trinomial: String,
    pub in_kernel: bool,
    pub sz_eigenvalue: bool,
    pub cyclic_invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture1 {
    pub kernel_dim: usize,
    pub expected_dim: usize,
    pub states: Vec<GroundState>,
    pub states_span_kernel: bool,
    pub frustration_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture2 {
    pub term_count: usize,
    pub sum_equals_residue: bool,
    pub binary_entries: bool,
    pub minus_is_transpose: bool,
    pub commutes_with_hamiltonian: bool,
    pub sz_raises_and_lowers: bool,
    pub nilpotency_degree: Option<u32>,
    pub ladder_plus: BTreeMap<i64, String>,
    pub ladder_minus: BTreeMap<i64, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootReport {
    /// Coefficients on the tower levels, leading 1 included.
    pub coeffs: Vec<String>,
    pub rho_sq: String,
    pub weights: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture3 {
    pub rank: usize,
    pub extra_level_coeffs: Vec<String>,
    pub roots: Vec<RootReport>,
    pub ordering: Vec<usize>,
    pub cartan: Vec<Vec<i64>>,
    pub canonical_cn: bool,
    pub serre: Vec<SerreCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_coeffs_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_rho_sq_match: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture4 {
    pub tower_coeffs: Vec<String>,
    pub alpha: Vec<String>,
    pub alpha_positive: bool,
    pub alpha_integer: bool,
    pub commutes_with_hamiltonian: bool,
    pub commutes_with_shift: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_alpha_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_tower_coeffs_match: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sections {
    pub theorem1: Section<Theorem1>,
    pub conjecture1: Section<Conjecture1>,
    pub conjecture2: Section<Conjecture2>,
    pub conjecture3: Section<Conjecture3>,
    pub conjecture4: Section<Conjecture4>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub n: usize,
    pub version: String,
    pub timestamp: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub meta: Meta,
    pub sections: Sections,
    /// Wall-clock milliseconds per executed stage.
    pub timing: BTreeMap<Stage, u64>,
}

impl ConjectureReport {
    pub fn statuses(&self) -> [(Stage, Status); 5] {
        let s = &self.sections;
        [
            (Stage::Theorem1, s.theorem1.status),
            (Stage::C1, s.conjecture1.status),
            (Stage::C2, s.conjecture2.status),
            (Stage::C3, s.conjecture3.status),
            (Stage::C4, s.conjecture4.status),
        ]
    }

    pub fn status(&self, stage: Stage) -> Status {
        self.statuses()[stage as usize].1
    }

    pub fn any_failed(&self) -> bool {
        self.statuses().iter().any(|(_, s)| *s == Status::Fail)
    }

    /// The report with wall-clock data removed, for reproducibility checks.
    pub fn without_volatile(&self) -> Self {
        let mut out = self.clone();
        out.meta.timestamp.clear();
        out.timing.clear();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub algebra_cap: usize,
    pub timestamp: String,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            algebra_cap: DEFAULT_ALGEBRA_CAP,
            timestamp: String::new(),
        }
    }
}

fn renders(values: &[Rational]) -> Vec<String> {
    values.iter().map(render).collect()
}

fn big(n: num_bigint::BigUint) -> Rational {
    Rational::from_integer(n.into())
}

fn commutes(a: &OperatorMatrix, b: &OperatorMatrix) -> bool {
    a.commutator(b).is_ok_and(|c| c.is_zero())
}

pub fn verify_theorem1(n: ChainSize) -> Section<Theorem1> {
    let run = || -> Result<Section<Theorem1>, String> {
        let h = h_open(n).map_err(|e| e.to_string())?;
        let kernel = kernel_basis(&h);
        let paths = enumerate_motzkin(n.get()).map_err(|e| e.to_string())?;
        let motzkin = state_from_paths(&paths).map_err(|e| e.to_string())?;
        let matches = match &kernel[..] {
            [v] => v.proportionality_to(&motzkin).is_some_and(|c| c.is_positive()),
            _ => false,
        };
        let data = Theorem1 {
            kernel_dim: kernel.len(),
            motzkin_paths: paths.len(),
            kernel_components: kernel.first().map_or(0, |v| v.nnz()),
            matches_motzkin_state: matches,
        };
        let mut failures = Vec::new();
        if kernel.len() != 1 {
            failures.push(format!("kernel dimension {}, expected 1", kernel.len()));
        } else if !matches {
            failures.push("kernel vector is not a positive multiple of the Motzkin state".into());
        }
        Ok(Section::judged(failures, data))
    };
    run().unwrap_or_else(|e| Section::failed(e, None))
}

pub fn verify_conjecture1(n: ChainSize) -> Section<Conjecture1> {
    let run = || -> Result<Section<Conjecture1>, String> {
        let h = h_periodic(n).map_err(|e| e.to_string())?;
        let terms = periodic_terms(n).map_err(|e| e.to_string())?;
        let c = cyclic_shift(n).map_err(|e| e.to_string())?;
        let sz_op = total_sz(n).map_err(|e| e.to_string())?;
        let kernel = kernel_basis(&h);
        let ground = free_path_states(n.get()).map_err(|e| e.to_string())?;

        let states: Vec<GroundState> = ground
            .par_iter()
            .map(|(sz, v)| {
                let norm = v.dot(v).expect("same dimension");
                GroundState {
                    sz: *sz,
                    norm: render(&norm),
                    trinomial: render(&big(trinomial(n.get(), *sz))),
                    in_kernel: h.apply(v).is_ok_and(|w| w.is_zero()),
                    sz_eigenvalue: sz_op.apply(v).is_ok_and(|w| w == v.scale(&int(*sz))),
                    cyclic_invariant: c.apply(v).is_ok_and(|w| w == *v),
                }
            })
            .collect();
        let vectors: Vec<_> = ground.iter().map(|(_, v)| v.clone()).collect();
        let expected_dim = 2 * n.get() + 1;
        let spans = states.iter().all(|s| s.in_kernel)
            && vector_rank(&vectors) == kernel.len()
            && vectors.len() == kernel.len();
        let frustration_free = kernel
            .par_iter()
            .all(|v| terms.iter().all(|t| t.apply(v).is_ok_and(|w| w.is_zero())));

        let mut failures = Vec::new();
        if kernel.len() != expected_dim {
            failures.push(format!("kernel dimension {}, expected {expected_dim}", kernel.len()));
        }
        for s in &states {
            if !s.in_kernel {
                failures.push(format!("path state v({}) is not annihilated by H", s.sz));
            }
            if !s.sz_eigenvalue {
                failures.push(format!("path state v({}) is not an S^z eigenvector", s.sz));
            }
            if !s.cyclic_invariant {
                failures.push(format!("path state v({}) is not fixed by C", s.sz));
            }
            if s.norm != s.trinomial {
                failures.push(format!("norm of v({}) is {}, expected {}", s.sz, s.norm, s.trinomial));
            }
        }
        if !spans {
            failures.push("path states do not span the kernel".into());
        }
        if !frustration_free {
            failures.push("a kernel vector is not annihilated by every local term".into());
        }
        Ok(Section::judged(
            failures,
            Conjecture1 {
                kernel_dim: kernel.len(),
                expected_dim,
                states,
                states_span_kernel: spans,
                frustration_free,
            },
        ))
    };
    run().unwrap_or_else(|e| Section::failed(e, None))
}

/// Known numbers of terms in `Σ⁺` for `n = 1..=5`.
const PUBLISHED_TERM_COUNTS: [usize; 5] = [1, 4, 18, 80, 365];

fn conjecture2_with(n: ChainSize) -> Result<(Section<Conjecture2>, Option<LadderPair>), String> {
    let lp = sigma_sum(n).map_err(|e| e.to_string())?;
    let residue = sigma_residue(n).map_err(|e| e.to_string())?;
    let h = h_periodic(n).map_err(|e| e.to_string())?;
    let sz_op = total_sz(n).map_err(|e| e.to_string())?;
    let states: BTreeMap<i64, _> = free_path_states(n.get())
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();

    let sum_equals_residue = lp.plus == residue.plus && lp.minus == residue.minus;
    let commutes_with_h = commutes(&lp.plus, &h) && commutes(&lp.minus, &h);
    let sz_relation = sz_op.commutator(&lp.plus).is_ok_and(|c| c == lp.plus)
        && sz_op.commutator(&lp.minus).is_ok_and(|c| c == lp.minus.neg());
    let expected_degree = 2 * n.get() as u32 + 1;
    let degree = lp.nilpotency_degree(expected_degree);
    let ladder = ladder_action(&lp, &states);

    let mut failures = Vec::new();
    if !sum_equals_residue {
        let at = lp.plus.first_difference(&residue.plus);
        failures.push(format!("sum and residue formulas differ at {at:?}"));
    }
    if !lp.entries_are_binary() {
        failures.push("Σ± has an entry other than 0 or 1".into());
    }
    if !lp.minus_is_transpose() {
        failures.push("Σ⁻ is not the transpose of Σ⁺".into());
    }
    if let Some(&expected) = PUBLISHED_TERM_COUNTS.get(n.get() - 1) {
        if lp.term_count != expected || residue.term_count != expected {
            failures.push(format!("term count {}, expected {expected}", lp.term_count));
        }
    }
    if !commutes_with_h {
        failures.push("[Σ±, H] ≠ 0".into());
    }
    if !sz_relation {
        failures.push("[S^z, Σ±] ≠ ±Σ±".into());
    }
    if degree != Some(expected_degree) {
        failures.push(format!("nilpotency degree {degree:?}, expected {expected_degree}"));
    }
    let (ladder_plus, ladder_minus) = match &ladder {
        Ok(c) => (
            c.plus.iter().map(|(k, v)| (*k, render(v))).collect(),
            c.minus.iter().map(|(k, v)| (*k, render(v))).collect(),
        ),
        Err(e) => {
            failures.push(e.to_string());
            Default::default()
        }
    };
    let data = Conjecture2 {
        term_count: lp.term_count,
        sum_equals_residue,
        binary_entries: lp.entries_are_binary(),
        minus_is_transpose: lp.minus_is_transpose(),
        commutes_with_hamiltonian: commutes_with_h,
        sz_raises_and_lowers: sz_relation,
        nilpotency_degree: degree,
        ladder_plus,
        ladder_minus,
    };
    let ok = failures.is_empty();
    Ok((Section::judged(failures, data), ok.then_some(lp)))
}

pub fn verify_conjecture2(n: ChainSize) -> Section<Conjecture2> {
    conjecture2_with(n).map_or_else(|e| Section::failed(e, None), |(s, _)| s)
}

fn conjecture3_with(lp: &LadderPair) -> (Section<Conjecture3>, Option<(TripleTower, ChevalleyBasis)>) {
    let tower = match build_tower(lp) {
        Ok(t) => t,
        Err(e) => return (Section::failed(e.to_string(), None), None),
    };
    let cb = match extract_roots(&tower) {
        Ok(cb) => cb,
        Err(e) => return (Section::failed(e.to_string(), None), None),
    };
    let serre = verify_serre(&cb);
    let reference = reference_values(cb.n.get());
    let coeffs_match = reference.as_ref().map(|r| {
        cb.roots
            .iter()
            .zip(&r.coeffs)
            .all(|(root, published)| root.coeffs[1..] == published[..])
    });
    let rho_match = reference.as_ref().map(|r| {
        cb.roots
            .iter()
            .zip(&r.rho_sq)
            .all(|(root, published)| root.rho_sq == *published)
    });

    let mut failures = Vec::new();
    if !is_canonical_cn(&cb.cartan) {
        failures.push(format!("Cartan matrix {:?} is not canonical C_n", cb.cartan));
    }
    if let Some(bad) = serre.iter().find(|c| !c.holds) {
        failures.push(format!("Serre relation {} fails", bad.relation));
    }
    if coeffs_match == Some(false) {
        failures.push("root coefficients differ from the published values".into());
    }
    if rho_match == Some(false) {
        failures.push("ρ² differs from the published values".into());
    }
    let data = Conjecture3 {
        rank: tower.levels.len(),
        extra_level_coeffs: renders(&tower.extra_z_coeffs),
        roots: cb
            .roots
            .iter()
            .map(|r| RootReport {
                coeffs: renders(&r.coeffs),
                rho_sq: render(&r.rho_sq),
                weights: renders(&r.weights),
            })
            .collect(),
        ordering: cb.ordering.clone(),
        cartan: cb.cartan.clone(),
        canonical_cn: is_canonical_cn(&cb.cartan),
        serre,
        published_coeffs_match: coeffs_match,
        published_rho_sq_match: rho_match,
    };
    let ok = failures.is_empty();
    (Section::judged(failures, data), ok.then_some((tower, cb)))
}

pub fn verify_conjecture3(n: ChainSize) -> Section<Conjecture3> {
    match sigma_sum(n) {
        Ok(lp) => conjecture3_with(&lp).0,
        Err(e) => Section::failed(e.to_string(), None),
    }
}

fn conjecture4_with(tower: &TripleTower, cb: &ChevalleyBasis) -> Section<Conjecture4> {
    let n = tower.n;
    let run = || -> Result<Section<Conjecture4>, String> {
        let sz_op = total_sz(n).map_err(|e| e.to_string())?;
        let d = central_element(tower, cb, &sz_op).map_err(|e| e.to_string())?;
        let h = h_periodic(n).map_err(|e| e.to_string())?;
        let c = cyclic_shift(n).map_err(|e| e.to_string())?;
        let with_h = commutes(&d.p, &h);
        let with_c = commutes(&d.p, &c);
        let reference = reference_values(n.get());
        let alpha_match = reference.as_ref().map(|r| r.alpha == d.alpha);
        let tower_match = reference
            .as_ref()
            .and_then(|r| r.tower_coeffs.as_ref())
            .map(|x| *x == d.tower_coeffs);
        let alpha_positive = d.alpha.iter().all(|a| a.is_positive());
        let alpha_integer = d.alpha.iter().all(is_integer);

        let mut failures = Vec::new();
        if !with_h {
            failures.push("p does not commute with H".into());
        }
        if !with_c {
            failures.push("p does not commute with C".into());
        }
        if alpha_match == Some(false) {
            failures.push(format!("α = {:?} differs from the published values", renders(&d.alpha)));
        }
        if n.get() >= 3 && !alpha_positive {
            failures.push(format!("α = {:?} is not positive", renders(&d.alpha)));
        }
        let note = (tower_match == Some(false))
            .then(|| "tower coefficients differ from the published ones; the computed solution is unique and central".to_string());
        let mut section = Section::judged(
            failures,
            Conjecture4 {
                tower_coeffs: renders(&d.tower_coeffs),
                alpha: renders(&d.alpha),
                alpha_positive,
                alpha_integer,
                commutes_with_hamiltonian: with_h,
                commutes_with_shift: with_c,
                published_alpha_match: alpha_match,
                published_tower_coeffs_match: tower_match,
            },
        );
        section.note = note;
        Ok(section)
    };
    run().unwrap_or_else(|e| Section::failed(e, None))
}

pub fn verify_conjecture4(n: ChainSize) -> Section<Conjecture4> {
    let lp = match sigma_sum(n) {
        Ok(lp) => lp,
        Err(e) => return Section::failed(e.to_string(), None),
    };
    match conjecture3_with(&lp) {
        (_, Some((tower, cb))) => conjecture4_with(&tower, &cb),
        (s, None) => Section::skipped(format!(
            "conjecture3 did not pass: {}",
            s.witness.unwrap_or_default()
        )),
    }
}

fn timed<T>(timing: &mut BTreeMap<Stage, u64>, stage: Stage, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timing.insert(stage, start.elapsed().as_millis() as u64);
    out
}

/// Runs the requested stages (and their dependencies) in order.
pub fn full_report(n: ChainSize, stages: &BTreeSet<Stage>, options: &VerifyOptions) -> ConjectureReport {
    let run = with_dependencies(stages);
    let mut timing = BTreeMap::new();
    let not_requested = || "not requested".to_string();
    let blocked = |dep: Stage| format!("{dep} did not pass");
    let over_cap = || {
        format!(
            "n = {} exceeds the algebra cap of {}",
            n.get(),
            options.algebra_cap
        )
    };
    let gate = |stage: Stage, upstream: Status| -> Option<String> {
        if !run.contains(&stage) {
            Some(not_requested())
        } else if stage.uses_algebra_cap() && n.get() > options.algebra_cap {
            Some(over_cap())
        } else if upstream != Status::Pass {
            stage.dependency().map(blocked)
        } else {
            None
        }
    };

    let theorem1 = match gate(Stage::Theorem1, Status::Pass) {
        Some(note) => Section::skipped(note),
        None => timed(&mut timing, Stage::Theorem1, || verify_theorem1(n)),
    };
    let conjecture1 = match gate(Stage::C1, theorem1.status) {
        Some(note) => Section::skipped(note),
        None => timed(&mut timing, Stage::C1, || verify_conjecture1(n)),
    };
    let (conjecture2, ladder) = match gate(Stage::C2, conjecture1.status) {
        Some(note) => (Section::skipped(note), None),
        None => timed(&mut timing, Stage::C2, || {
            conjecture2_with(n).unwrap_or_else(|e| (Section::failed(e, None), None))
        }),
    };
    let (conjecture3, algebra) = match (gate(Stage::C3, conjecture2.status), &ladder) {
        (None, Some(lp)) => timed(&mut timing, Stage::C3, || conjecture3_with(lp)),
        (None, None) => (Section::skipped(blocked(Stage::C2)), None),
        (Some(note), _) => (Section::skipped(note), None),
    };
    let conjecture4 = match (gate(Stage::C4, conjecture3.status), &algebra) {
        (None, Some((tower, cb))) => timed(&mut timing, Stage::C4, || conjecture4_with(tower, cb)),
        (None, None) => Section::skipped(blocked(Stage::C3)),
        (Some(note), _) => Section::skipped(note),
    };

    ConjectureReport {
        meta: Meta {
            n: n.get(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: options.timestamp.clone(),
        },
        sections: Sections {
            theorem1,
            conjecture1,
            conjecture2,
            conjecture3,
            conjecture4,
        },
        timing,
    }
}
