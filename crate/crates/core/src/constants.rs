//! Certified-lower-bound estimators for the basis constants (suppression
//! unconditionality, democracy, quasi-greedy, greedy, almost-greedy) and the
//! property constants ((A), (Q), (Q*)), plus instance-level verifiers for the
//! averaging and sup-lemma inequalities.
//!
//! Every estimate is a lower bound realized by an explicit witness
//! configuration; upper bounds are claimed only where the enumerated family
//! is exhaustive for the symmetry at hand.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{d_m_capped, d_star_m_capped, sigma_m_capped, Caps};
use crate::greedy::{greedy_residual, greedy_sum};
use crate::space::{indicator, project, CoeffVector, SignedSet, SpaceSpec};

/// Perturbation used to steer greedy tie resolution toward a designated set.
pub const TIE_DELTA: f64 = 1e-6;
/// Denominators at or below this are segregated, never divided.
pub const DENOM_CUTOFF: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstantName {
    #[serde(rename = "K_su")]
    KSu,
    Democracy,
    QuasiGreedy,
    Greedy,
    AlmostGreedy,
    PropA,
    PropQ,
    PropQstar,
    ResidualVsDStar,
    ResidualVsD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    Grid,
    Random,
}

/// Extremal configuration realizing a ratio; re-evaluation must reproduce the
/// reported lower bound.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    Projection { x: CoeffVector, set: Vec<u32> },
    Democracy { a: Vec<u32>, b: Vec<u32> },
    GreedySum { x: CoeffVector, m: usize },
    GreedyResidual { x: CoeffVector, m: usize },
    GreedyVsSigma { x: CoeffVector, m: usize },
    GreedyVsDStar { x: CoeffVector, m: usize },
    GreedyVsD { x: CoeffVector, m: usize },
    AlmostGreedy { x: CoeffVector, m: usize },
    PropA { x: CoeffVector, a: SignedSet, b: SignedSet },
    PropQ { x: CoeffVector, y: CoeffVector, a: Vec<u32>, b: Vec<u32> },
    PropQstar { x: CoeffVector, z: CoeffVector, y: CoeffVector },
}

impl Witness {
    /// Recomputes the ratio this witness claims.
    pub fn reevaluate(&self, space: &SpaceSpec, scope: u32, caps: &Caps) -> Result<f64> {
        let div = |num: f64, den: f64| -> Result<f64> {
            if den <= DENOM_CUTOFF {
                return Err(Error::PreconditionViolated("witness denominator vanished".into()));
            }
            Ok(num / den)
        };
        match self {
            Witness::None => Err(Error::EmptyFamily),
            Witness::Projection { x, set } => {
                div(space.norm(&project(x, set))?, space.norm(x)?)
            }
            Witness::Democracy { a, b } => {
                div(space.norm(&indicator(a)?)?, space.norm(&indicator(b)?)?)
            }
            Witness::GreedySum { x, m } => div(space.norm(&greedy_sum(x, *m))?, space.norm(x)?),
            Witness::GreedyResidual { x, m } => {
                div(space.norm(&greedy_residual(x, *m))?, space.norm(x)?)
            }
            Witness::GreedyVsSigma { x, m } => div(
                space.norm(&greedy_residual(x, *m))?,
                sigma_m_capped(space, x, *m, scope, caps)?.value,
            ),
            Witness::GreedyVsDStar { x, m } => div(
                space.norm(&greedy_residual(x, *m))?,
                d_star_m_capped(space, x, *m, scope, caps)?.value,
            ),
            Witness::GreedyVsD { x, m } => div(
                space.norm(&greedy_residual(x, *m))?,
                d_m_capped(space, x, *m, scope, caps)?.value,
            ),
            Witness::AlmostGreedy { x, m } => div(
                space.norm(&greedy_residual(x, *m))?,
                best_projection_residual(space, x, *m)?,
            ),
            Witness::PropA { x, a, b } => div(
                space.norm(&x.add(&a.indicator())?)?,
                space.norm(&x.add(&b.indicator())?)?,
            ),
            Witness::PropQ { x, y, a, b } => div(
                space.norm(&x.add(&indicator(a)?)?)?,
                space.norm(&x.add(y)?.add(&indicator(b)?)?)?,
            ),
            Witness::PropQstar { x, z, y } => {
                div(space.norm(&x.add(z)?)?, space.norm(&x.add(y)?)?)
            }
        }
    }
}

/// Enumeration metadata attached to an estimate.
#[derive(Clone, Debug, Serialize)]
pub struct EstimateScope {
    pub universe: u32,
    pub max_set_size: usize,
    pub random_samples: usize,
    pub rng_seed: u64,
    pub configurations: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantEstimate {
    pub name: ConstantName,
    pub lower_bound: f64,
    pub witness: Witness,
    pub scope: EstimateScope,
    pub method: Method,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Deterministic configuration family: coefficient grids over subsets of a
/// finite universe, a few structured sequences, and seeded random vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InstanceFamily {
    pub universe: u32,
    pub x_grid: Vec<f64>,
    pub y_grid: Vec<f64>,
    pub max_set_size: usize,
    pub random_samples: usize,
    pub rng_seed: u64,
}

impl Default for InstanceFamily {
    fn default() -> Self {
        InstanceFamily {
            universe: 8,
            x_grid: vec![1.0, -1.0, 0.5, -0.5],
            y_grid: vec![1.0, -1.0, 0.5, -0.5, 2.0, -2.0],
            max_set_size: 3,
            random_samples: 1000,
            rng_seed: 42,
        }
    }
}

impl InstanceFamily {
    pub fn with_universe(universe: u32) -> Self {
        InstanceFamily {
            universe,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.universe == 0 || self.max_set_size == 0 {
            return Err(Error::EmptyFamily);
        }
        Ok(())
    }

    fn indices(&self) -> Vec<u32> {
        (1..=self.universe).collect()
    }

    /// Nonempty subsets of the universe up to `k` elements.
    fn subsets_upto(&self, k: usize) -> Vec<Vec<u32>> {
        let idx = self.indices();
        (1..=k.min(idx.len()))
            .flat_map(|s| idx.iter().copied().combinations(s))
            .collect()
    }

    fn perturbed_grid(&self) -> Vec<f64> {
        let mut vals = self.x_grid.clone();
        vals.push(1.0 + TIE_DELTA);
        vals.push(-(1.0 + TIE_DELTA));
        vals
    }

    /// Grid vectors: coefficient assignments from the (tie-perturbed) grid on
    /// supports up to `max_set_size`.
    pub fn grid_vectors(&self) -> Vec<CoeffVector> {
        let vals = self.perturbed_grid();
        let mut out = Vec::new();
        for set in self.subsets_upto(self.max_set_size) {
            for assignment in std::iter::repeat(vals.iter().copied())
                .take(set.len())
                .multi_cartesian_product()
            {
                let x = CoeffVector::from_pairs(set.iter().copied().zip(assignment))
                    .expect("grid values are finite and nonzero");
                out.push(x);
            }
        }
        out
    }

    /// Prefix indicators and (tie-perturbed) alternating-sign sequences; these
    /// are the extremal shapes for conditional-basis controls.
    pub fn structured_vectors(&self) -> Vec<CoeffVector> {
        let mut out = Vec::new();
        for k in 1..=self.universe {
            let prefix: Vec<(u32, f64)> = (1..=k).map(|i| (i, 1.0)).collect();
            let alternating: Vec<(u32, f64)> = (1..=k)
                .map(|i| (i, if i % 2 == 1 { 1.0 } else { -1.0 }))
                .collect();
            let odd_up: Vec<(u32, f64)> = alternating
                .iter()
                .map(|&(i, c)| (i, if i % 2 == 1 { c * (1.0 + TIE_DELTA) } else { c }))
                .collect();
            let even_up: Vec<(u32, f64)> = alternating
                .iter()
                .map(|&(i, c)| (i, if i % 2 == 0 { c * (1.0 + TIE_DELTA) } else { c }))
                .collect();
            for pairs in [prefix, alternating, odd_up, even_up] {
                out.push(CoeffVector::from_pairs(pairs).expect("structured values are valid"));
            }
        }
        out
    }

    /// Seeded random vectors over the universe.
    pub fn random_vectors(&self) -> Vec<CoeffVector> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        let mut out = Vec::with_capacity(self.random_samples);
        for _ in 0..self.random_samples {
            let size = rng.gen_range(1..=self.universe.min(6)) as usize;
            let mut idx = self.indices();
            for i in (1..idx.len()).rev() {
                idx.swap(i, rng.gen_range(0..=i));
            }
            idx.truncate(size);
            idx.sort_unstable();
            let pairs: Vec<(u32, f64)> = idx
                .into_iter()
                .map(|i| {
                    let mut c = 0.0f64;
                    while c.abs() < 0.05 {
                        c = rng.gen_range(-2.0..2.0);
                    }
                    (i, c)
                })
                .collect();
            out.push(CoeffVector::from_pairs(pairs).expect("random values are valid"));
        }
        out
    }

    /// All test vectors: grid + structured + random.
    pub fn test_vectors(&self) -> Vec<CoeffVector> {
        let mut out = self.grid_vectors();
        out.extend(self.structured_vectors());
        out.extend(self.random_vectors());
        out
    }

    fn method(&self) -> Method {
        if self.random_samples > 0 {
            Method::Random
        } else {
            Method::Grid
        }
    }

    fn estimate_scope(&self, configurations: u64) -> EstimateScope {
        EstimateScope {
            universe: self.universe,
            max_set_size: self.max_set_size,
            random_samples: self.random_samples,
            rng_seed: self.rng_seed,
            configurations,
        }
    }
}

/// Running maximum with a deterministic first-wins tie rule: enumeration
/// order is deterministic and updates are strictly greater-than.
struct MaxTracker {
    value: f64,
    witness: Witness,
    count: u64,
}

impl MaxTracker {
    fn new() -> Self {
        MaxTracker {
            value: f64::NEG_INFINITY,
            witness: Witness::None,
            count: 0,
        }
    }

    fn offer(&mut self, num: f64, den: f64, witness: impl FnOnce() -> Witness) -> bool {
        if den <= DENOM_CUTOFF {
            return false;
        }
        self.count += 1;
        let ratio = num / den;
        if ratio > self.value {
            self.value = ratio;
            self.witness = witness();
        }
        true
    }

    fn finish(
        self,
        name: ConstantName,
        family: &InstanceFamily,
        method: Method,
        notes: Vec<String>,
    ) -> Result<ConstantEstimate> {
        if self.count == 0 {
            return Err(Error::EmptyFamily);
        }
        Ok(ConstantEstimate {
            name,
            lower_bound: self.value,
            witness: self.witness,
            scope: family.estimate_scope(self.count),
            method,
            notes,
        })
    }
}

fn all_subsets(indices: &[u32]) -> Vec<Vec<u32>> {
    (0..=indices.len())
        .flat_map(|s| indices.iter().copied().combinations(s))
        .collect()
}

fn sign_patterns(set: &[u32]) -> Vec<SignedSet> {
    let k = set.len();
    (0u64..(1 << k))
        .map(|mask| {
            SignedSet::new(set.iter().enumerate().map(|(j, &i)| {
                (i, if (mask >> j) & 1 == 1 { -1 } else { 1 })
            }))
            .expect("valid signs")
        })
        .collect()
}

/// Suppression-unconditionality constant: max of `||P_A x|| / ||x||` over the
/// family and all subsets of `supp(x)`.
pub fn estimate_k_su(space: &SpaceSpec, family: &InstanceFamily) -> Result<ConstantEstimate> {
    family.validate()?;
    let mut tracker = MaxTracker::new();
    for x in family.test_vectors() {
        let nx = space.norm(&x)?;
        for set in all_subsets(&x.support_vec()) {
            let np = space.norm(&project(&x, &set))?;
            tracker.offer(np, nx, || Witness::Projection {
                x: x.clone(),
                set: set.clone(),
            });
        }
    }
    tracker.finish(ConstantName::KSu, family, family.method(), vec![])
}

/// Democracy constant: max of `||1_A|| / ||1_B||` over equal-cardinality
/// pairs within the universe (A and B need not be disjoint).
pub fn estimate_democracy(space: &SpaceSpec, family: &InstanceFamily) -> Result<ConstantEstimate> {
    family.validate()?;
    let idx = family.indices();
    let mut tracker = MaxTracker::new();
    for k in 1..=family.max_set_size.min(idx.len()) {
        let sets: Vec<Vec<u32>> = idx.iter().copied().combinations(k).collect();
        for a in &sets {
            let na = space.norm(&indicator(a)?)?;
            for b in &sets {
                let nb = space.norm(&indicator(b)?)?;
                tracker.offer(na, nb, || Witness::Democracy {
                    a: a.clone(),
                    b: b.clone(),
                });
            }
        }
    }
    tracker.finish(ConstantName::Democracy, family, Method::Exhaustive, vec![])
}

/// Quasi-greedy estimate with the two suprema reported separately.
#[derive(Clone, Debug, Serialize)]
pub struct QuasiGreedyEstimate {
    pub estimate: ConstantEstimate,
    pub residual_ratio_sup: f64,
    pub greedy_sum_ratio_sup: f64,
}

/// Quasi-greedy constant: max over x and m of `||x - G_m x|| / ||x||` and
/// `||G_m x|| / ||x||`.
pub fn estimate_quasi_greedy(
    space: &SpaceSpec,
    family: &InstanceFamily,
) -> Result<QuasiGreedyEstimate> {
    family.validate()?;
    let mut residual = MaxTracker::new();
    let mut sum = MaxTracker::new();
    for x in family.test_vectors() {
        let nx = space.norm(&x)?;
        for m in 0..=x.support_size() {
            residual.offer(space.norm(&greedy_residual(&x, m))?, nx, || {
                Witness::GreedyResidual { x: x.clone(), m }
            });
            sum.offer(space.norm(&greedy_sum(&x, m))?, nx, || Witness::GreedySum {
                x: x.clone(),
                m,
            });
        }
    }
    let residual_sup = residual.value;
    let sum_sup = sum.value;
    let combined = if residual.value >= sum.value { residual } else { sum };
    let estimate = combined.finish(
        ConstantName::QuasiGreedy,
        family,
        family.method(),
        vec![format!(
            "residual ratio sup {residual_sup:.12}, greedy-sum ratio sup {sum_sup:.12}"
        )],
    )?;
    Ok(QuasiGreedyEstimate {
        estimate,
        residual_ratio_sup: residual_sup,
        greedy_sum_ratio_sup: sum_sup,
    })
}

/// Vectors an enumeration-heavy estimator can afford on a non-decoupled norm.
fn reduced_vectors(family: &InstanceFamily, cap: usize) -> Vec<CoeffVector> {
    let mut out = family.structured_vectors();
    let grid = family.grid_vectors();
    let stride = (grid.len() / cap.max(1)).max(1);
    out.extend(grid.into_iter().step_by(stride));
    let mut trimmed = InstanceFamily {
        random_samples: family.random_samples.min(50),
        ..family.clone()
    };
    trimmed.rng_seed = family.rng_seed;
    out.extend(trimmed.random_vectors());
    out
}

/// Greedy constant: max of `||x - G_m x|| / sigma_m(x)` over the family, with
/// the sigma oracle evaluated within `scope`.
pub fn estimate_greedy_constant(
    space: &SpaceSpec,
    family: &InstanceFamily,
    scope: u32,
) -> Result<ConstantEstimate> {
    family.validate()?;
    let caps = Caps::default();
    let vectors = if space.is_decoupled() {
        family.test_vectors()
    } else {
        reduced_vectors(family, 200)
    };
    let max_m = if space.is_decoupled() { usize::MAX } else { 3 };
    let mut tracker = MaxTracker::new();
    let mut notes = Vec::new();
    for x in vectors {
        for m in 1..=x.support_size().min(max_m) {
            let sigma = sigma_m_capped(space, &x, m, scope, &caps)?.value;
            let res = space.norm(&greedy_residual(&x, m))?;
            if sigma <= DENOM_CUTOFF {
                if res > DENOM_CUTOFF {
                    notes.push(format!(
                        "unbounded-witness: sigma_{m} vanished but residual is {res:.3e} for x={:?}",
                        Vec::<(u32, f64)>::from(x.clone())
                    ));
                }
                continue;
            }
            tracker.offer(res, sigma, || Witness::GreedyVsSigma { x: x.clone(), m });
        }
    }
    tracker.finish(ConstantName::Greedy, family, family.method(), notes)
}

/// Residual-to-D* and residual-to-D constants (conditions (ii)/(iii) of the
/// equivalence chain).
pub fn estimate_d_variant_constants(
    space: &SpaceSpec,
    family: &InstanceFamily,
    scope: u32,
) -> Result<(ConstantEstimate, ConstantEstimate)> {
    family.validate()?;
    let caps = Caps::default();
    let vectors = reduced_vectors(family, if space.is_symmetric() { 400 } else { 100 });
    let max_m = if space.is_symmetric() { 4 } else { 3 };
    let mut star = MaxTracker::new();
    let mut plain = MaxTracker::new();
    for x in vectors {
        for m in 1..=x.support_size().min(max_m) {
            let res = space.norm(&greedy_residual(&x, m))?;
            let ds = d_star_m_capped(space, &x, m, scope, &caps)?.value;
            star.offer(res, ds, || Witness::GreedyVsDStar { x: x.clone(), m });
            let d = d_m_capped(space, &x, m, scope, &caps)?.value;
            plain.offer(res, d, || Witness::GreedyVsD { x: x.clone(), m });
        }
    }
    Ok((
        star.finish(ConstantName::ResidualVsDStar, family, family.method(), vec![])?,
        plain.finish(ConstantName::ResidualVsD, family, family.method(), vec![])?,
    ))
}

/// Best coordinate-projection residual `inf { ||x - P_A x|| : |A| = m }`.
fn best_projection_residual(space: &SpaceSpec, x: &CoeffVector, m: usize) -> Result<f64> {
    if space.is_decoupled() {
        return space.norm(&greedy_residual(x, m));
    }
    // off-support indices contribute nothing, so only A ∩ supp(x) matters
    let supp = x.support_vec();
    let mut best = f64::INFINITY;
    for s in 0..=m.min(supp.len()) {
        for set in supp.iter().copied().combinations(s) {
            best = best.min(space.norm(&x.sub(&project(x, &set))?)?);
        }
    }
    Ok(best)
}

/// Almost-greedy constant: `||x - G_m x|| / inf_{|A| = m} ||x - P_A x||`.
pub fn estimate_almost_greedy(
    space: &SpaceSpec,
    family: &InstanceFamily,
) -> Result<ConstantEstimate> {
    family.validate()?;
    let mut tracker = MaxTracker::new();
    for x in family.test_vectors() {
        for m in 1..x.support_size() {
            let res = space.norm(&greedy_residual(&x, m))?;
            let best = best_projection_residual(space, &x, m)?;
            tracker.offer(res, best, || Witness::AlmostGreedy { x: x.clone(), m });
        }
    }
    tracker.finish(ConstantName::AlmostGreedy, family, family.method(), vec![])
}

const PROP_X_SUPPORT_MAX: usize = 2;

/// Grid vectors on a given index pool with `sup |coefficient| <= 1`,
/// including the empty vector.
fn bounded_grid_vectors(family: &InstanceFamily, pool: &[u32], max_support: usize) -> Vec<CoeffVector> {
    let vals: Vec<f64> = family
        .x_grid
        .iter()
        .copied()
        .filter(|v| v.abs() <= 1.0)
        .collect();
    let mut out = vec![CoeffVector::empty()];
    for s in 1..=max_support.min(pool.len()) {
        for set in pool.iter().copied().combinations(s) {
            for assignment in std::iter::repeat(vals.iter().copied())
                .take(s)
                .multi_cartesian_product()
            {
                out.push(
                    CoeffVector::from_pairs(set.iter().copied().zip(assignment))
                        .expect("grid values are valid"),
                );
            }
        }
    }
    out
}

fn grid_vectors_on(vals: &[f64], pool: &[u32], max_support: usize) -> Vec<CoeffVector> {
    let mut out = vec![CoeffVector::empty()];
    for s in 1..=max_support.min(pool.len()) {
        for set in pool.iter().copied().combinations(s) {
            for assignment in std::iter::repeat(vals.iter().copied())
                .take(s)
                .multi_cartesian_product()
            {
                out.push(
                    CoeffVector::from_pairs(set.iter().copied().zip(assignment))
                        .expect("grid values are valid"),
                );
            }
        }
    }
    out
}

/// Disjoint equal-cardinality pairs `(A, B)` with `|A| = |B| = k <= kmax`,
/// including the empty pair.
fn disjoint_pairs(indices: &[u32], kmax: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = vec![(vec![], vec![])];
    for k in 1..=kmax.min(indices.len() / 2) {
        for a in indices.iter().copied().combinations(k) {
            let rest: Vec<u32> = indices.iter().copied().filter(|i| !a.contains(i)).collect();
            for b in rest.iter().copied().combinations(k) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

/// Property (A) constant via its two-sided-indicator reformulation:
/// max of `||x + 1_{eps A}|| / ||x + 1_{eps' B}||`.
pub fn estimate_prop_a(space: &SpaceSpec, family: &InstanceFamily) -> Result<ConstantEstimate> {
    family.validate()?;
    let idx = family.indices();
    let mut tracker = MaxTracker::new();
    for (a, b) in disjoint_pairs(&idx, family.max_set_size) {
        let pool: Vec<u32> = idx
            .iter()
            .copied()
            .filter(|i| !a.contains(i) && !b.contains(i))
            .collect();
        let xs = bounded_grid_vectors(family, &pool, PROP_X_SUPPORT_MAX);
        for ea in sign_patterns(&a) {
            let ia = ea.indicator();
            for eb in sign_patterns(&b) {
                let ib = eb.indicator();
                for x in &xs {
                    let num = space.norm(&x.add(&ia)?)?;
                    let den = space.norm(&x.add(&ib)?)?;
                    tracker.offer(num, den, || Witness::PropA {
                        x: x.clone(),
                        a: ea.clone(),
                        b: eb.clone(),
                    });
                }
            }
        }
    }
    tracker.finish(ConstantName::PropA, family, Method::Exhaustive, vec![])
}

/// Property (Q) constant: max of `||x + 1_A|| / ||x + y + 1_B||` over disjoint
/// equal-size A, B and disjointly supported x, y off A ∪ B.
pub fn estimate_prop_q(space: &SpaceSpec, family: &InstanceFamily) -> Result<ConstantEstimate> {
    family.validate()?;
    let idx = family.indices();
    let mut tracker = MaxTracker::new();
    for (a, b) in disjoint_pairs(&idx, family.max_set_size) {
        let pool: Vec<u32> = idx
            .iter()
            .copied()
            .filter(|i| !a.contains(i) && !b.contains(i))
            .collect();
        let ia = indicator(&a)?;
        let ib = indicator(&b)?;
        let xs = bounded_grid_vectors(family, &pool, PROP_X_SUPPORT_MAX);
        for x in &xs {
            let num = space.norm(&x.add(&ia)?)?;
            let ypool: Vec<u32> = pool.iter().copied().filter(|&i| x.get(i) == 0.0).collect();
            for y in grid_vectors_on(&family.y_grid, &ypool, PROP_X_SUPPORT_MAX) {
                let den = space.norm(&x.add(&y)?.add(&ib)?)?;
                tracker.offer(num, den, || Witness::PropQ {
                    x: x.clone(),
                    y: y.clone(),
                    a: a.clone(),
                    b: b.clone(),
                });
            }
        }
    }
    tracker.finish(ConstantName::PropQ, family, Method::Exhaustive, vec![])
}

/// Membership in Gamma_z: disjoint from z, with at least `|supp(z)|`
/// unit-magnitude coefficients. Gamma_0 is everything (disjointness is
/// vacuous for z = 0).
pub fn in_gamma(z: &CoeffVector, y: &CoeffVector) -> bool {
    if z.is_empty() {
        return true;
    }
    if !z.disjoint_from(y) {
        return false;
    }
    let units = y.iter().filter(|&(_, c)| c.abs() == 1.0).count();
    z.support_size() <= units
}

/// Property (Q*) constant: max of `||x + z|| / ||x + y||` over pairwise
/// disjoint x, z, y with bounded sup-norms and y in Gamma_z. The enumeration
/// embeds the full Property (A) configuration family (z, y signed
/// indicators), so the (Q*) bound dominates the (A) bound by construction.
pub fn estimate_prop_qstar(space: &SpaceSpec, family: &InstanceFamily) -> Result<ConstantEstimate> {
    family.validate()?;
    let idx = family.indices();
    let mut tracker = MaxTracker::new();

    // signed-indicator configurations (the Property (A) family embedded)
    for (a, b) in disjoint_pairs(&idx, family.max_set_size) {
        let pool: Vec<u32> = idx
            .iter()
            .copied()
            .filter(|i| !a.contains(i) && !b.contains(i))
            .collect();
        let xs = bounded_grid_vectors(family, &pool, PROP_X_SUPPORT_MAX);
        for ea in sign_patterns(&a) {
            let z = ea.indicator();
            for eb in sign_patterns(&b) {
                let y = eb.indicator();
                for x in &xs {
                    let num = space.norm(&x.add(&z)?)?;
                    let den = space.norm(&x.add(&y)?)?;
                    tracker.offer(num, den, || Witness::PropQstar {
                        x: x.clone(),
                        z: z.clone(),
                        y: y.clone(),
                    });
                }
            }
        }
    }

    // general grid configurations with Gamma-membership computed literally
    let zs = bounded_grid_vectors(family, &idx, PROP_X_SUPPORT_MAX);
    for z in &zs {
        let zpool: Vec<u32> = idx.iter().copied().filter(|&i| z.get(i) == 0.0).collect();
        for y in grid_vectors_on(&family.y_grid, &zpool, PROP_X_SUPPORT_MAX) {
            if !in_gamma(z, &y) {
                continue;
            }
            let xpool: Vec<u32> = zpool
                .iter()
                .copied()
                .filter(|&i| y.get(i) == 0.0)
                .collect();
            for x in bounded_grid_vectors(family, &xpool, 1) {
                let num = space.norm(&x.add(z)?)?;
                let den = space.norm(&x.add(&y)?)?;
                tracker.offer(num, den, || Witness::PropQstar {
                    x: x.clone(),
                    z: z.clone(),
                    y: y.clone(),
                });
            }
        }
    }
    tracker.finish(ConstantName::PropQstar, family, Method::Exhaustive, vec![])
}

/// The three suprema of the sup-lemma: subsets, sign patterns, and the
/// sampled unit ball of coefficients on A.
#[derive(Clone, Debug, Serialize)]
pub struct SupLemmaReport {
    pub i1: f64,
    pub i2: f64,
    pub i3_max_sample: f64,
    pub i1_le_i2: bool,
    pub i3_le_i2: bool,
    pub i2_le_3i1: bool,
}

impl SupLemmaReport {
    pub fn pass(&self) -> bool {
        self.i1_le_i2 && self.i3_le_i2 && self.i2_le_3i1
    }
}

/// Checks `I1 <= I2`, sampled `I3 <= I2 + tol` and `I2 <= 3 I1` for
/// `I1 = max_{B ⊆ A} ||x + 1_B||`, `I2 = max_eps ||x + 1_{eps A}||`,
/// `I3 = sup {||x + u|| : supp(u) = A, sup|u| <= 1}` (sampled).
pub fn verify_sup_lemma(
    space: &SpaceSpec,
    x: &CoeffVector,
    set: &[u32],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<SupLemmaReport> {
    if set.iter().any(|&i| x.get(i) != 0.0) {
        return Err(Error::DisjointnessViolated(
            "A must be disjoint from supp(x)".into(),
        ));
    }
    let mut i1 = f64::NEG_INFINITY;
    for b in all_subsets(set) {
        i1 = i1.max(space.norm(&x.add(&indicator(&b)?)?)?);
    }
    let mut i2 = f64::NEG_INFINITY;
    for eps in sign_patterns(set) {
        i2 = i2.max(space.norm(&x.add(&eps.indicator())?)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut i3 = f64::NEG_INFINITY;
    for _ in 0..samples {
        let u = CoeffVector::from_pairs(
            set.iter().map(|&i| (i, rng.gen_range(-1.0..1.0))),
        )?;
        i3 = i3.max(space.norm(&x.add(&u)?)?);
    }
    if set.is_empty() {
        i3 = i1;
    }
    Ok(SupLemmaReport {
        i1,
        i2,
        i3_max_sample: i3,
        i1_le_i2: i1 <= i2 + tol,
        i3_le_i2: i3 <= i2 + tol,
        i2_le_3i1: i2 <= 3.0 * i1 + tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AveragingReport {
    pub lhs: f64,
    pub bound: f64,
    pub pass: bool,
}

/// The averaging inequality: `||P_B x + t 1_{eps A}|| <= K_su ||x||` with
/// `eps` the signs of x on A and `t <= min |x_n|` over A.
pub fn verify_averaging_inequality(
    space: &SpaceSpec,
    x: &CoeffVector,
    a: &[u32],
    b: &[u32],
    t: f64,
    k_su_bound: f64,
    tol: f64,
) -> Result<AveragingReport> {
    if a.iter().any(|i| b.contains(i)) {
        return Err(Error::PreconditionViolated("A and B overlap".into()));
    }
    if a.iter().any(|&i| x.get(i) == 0.0) || b.iter().any(|&i| x.get(i) == 0.0) {
        return Err(Error::PreconditionViolated(
            "A and B must lie inside supp(x)".into(),
        ));
    }
    let t_max = a
        .iter()
        .map(|&i| x.get(i).abs())
        .fold(f64::INFINITY, f64::min);
    if t > t_max + tol {
        return Err(Error::PreconditionViolated(format!(
            "t = {t} exceeds min |x_n| on A = {t_max}"
        )));
    }
    let eps = CoeffVector::from_pairs(a.iter().map(|&i| (i, t * x.get(i).signum())))?;
    let lhs = space.norm(&project(x, b).add(&eps)?)?;
    let bound = k_su_bound * space.norm(x)?;
    Ok(AveragingReport {
        lhs,
        bound,
        pass: lhs <= bound + tol,
    })
}

/// Outcome of running every estimator on one space/family, with the exact-case
/// assertion for unweighted lp.
#[derive(Clone, Debug, Serialize)]
pub struct HarnessReport {
    pub estimates: Vec<ConstantEstimate>,
    pub quasi_greedy_residual_sup: f64,
    pub quasi_greedy_sum_sup: f64,
    pub exact_case: Option<ExactCaseReport>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactCaseReport {
    pub pass: bool,
    pub deviations: Vec<(String, f64)>,
}

impl HarnessReport {
    pub fn estimate(&self, name: ConstantName) -> Option<&ConstantEstimate> {
        self.estimates.iter().find(|e| e.name == name)
    }
}

/// Runs all estimators. For unweighted lp spaces the exact chain
/// `C_g = C_Q* = C_Q = K_su = D = 1` is asserted within `tol`; for other
/// spaces only a consistency report is emitted, since estimates certify
/// lower bounds.
pub fn theorem_harness(
    space: &SpaceSpec,
    family: &InstanceFamily,
    scope: u32,
    tol: f64,
) -> Result<HarnessReport> {
    let k_su = estimate_k_su(space, family)?;
    let democracy = estimate_democracy(space, family)?;
    let qg = estimate_quasi_greedy(space, family)?;
    let greedy = estimate_greedy_constant(space, family, scope)?;
    let almost = estimate_almost_greedy(space, family)?;
    let prop_a = estimate_prop_a(space, family)?;
    let prop_q = estimate_prop_q(space, family)?;
    let prop_qstar = estimate_prop_qstar(space, family)?;
    let (vs_dstar, vs_d) = estimate_d_variant_constants(space, family, scope)?;

    let mut notes = Vec::new();
    if prop_qstar.lower_bound + tol < prop_a.lower_bound {
        notes.push(format!(
            "inconsistency: PropQstar bound {} below PropA bound {}",
            prop_qstar.lower_bound, prop_a.lower_bound
        ));
    }
    if greedy.lower_bound > 1.0 + tol && democracy.lower_bound <= 1.0 + tol && k_su.lower_bound <= 1.0 + tol {
        notes.push("greedy bound exceeds both democracy and suppression bounds".into());
    }
    if democracy.lower_bound > 1.0 + tol || k_su.lower_bound > 1.0 + tol {
        notes.push(format!(
            "non-greedy signals: democracy >= {}, K_su >= {}",
            democracy.lower_bound, k_su.lower_bound
        ));
    }

    let exact_case = if matches!(space, SpaceSpec::Lp { .. }) {
        let named = [
            ("Greedy", greedy.lower_bound),
            ("PropQstar", prop_qstar.lower_bound),
            ("PropQ", prop_q.lower_bound),
            ("K_su", k_su.lower_bound),
            ("Democracy", democracy.lower_bound),
        ];
        let deviations: Vec<(String, f64)> = named
            .iter()
            .map(|&(n, v)| (n.to_string(), v - 1.0))
            .collect();
        let pass = deviations.iter().all(|(_, d)| d.abs() <= tol);
        Some(ExactCaseReport { pass, deviations })
    } else {
        None
    };

    Ok(HarnessReport {
        estimates: vec![
            k_su,
            democracy,
            qg.estimate,
            greedy,
            almost,
            prop_a,
            prop_q,
            prop_qstar,
            vs_dstar,
            vs_d,
        ],
        quasi_greedy_residual_sup: qg.residual_ratio_sup,
        quasi_greedy_sum_sup: qg.greedy_sum_ratio_sup,
        exact_case,
        notes,
    })
}
