//! The reference oracles: sigma_m, D_m and D*_m by exact enumeration over a
//! finite index scope, with a bracketed ternary search as the one-dimensional
//! convex minimizer.
//!
//! The infimum over infinite index sets is reduced to a finite `scope`
//! (indices `1..=scope`). For symmetric norms (unweighted Lp, Hilbert) the
//! norm depends on a candidate set `A` only through `A ∩ supp(x)` and
//! `|A \ supp(x)|`, so sets differing off-support are collapsed to one
//! canonical representative; weighted and conditional norms enumerate the
//! scope literally, subject to the enumeration caps.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::{project, CoeffVector, SpaceSpec};

/// Absolute interval width at which the ternary search stops.
const ALPHA_TOL: f64 = 1e-12;
const MAX_EXPANSIONS: usize = 200;
const MAX_TERNARY_ITERS: usize = 2000;
/// Relative-improvement stop for the cyclic coordinate search.
const COORD_REL_TOL: f64 = 1e-10;
const MAX_COORD_SWEEPS: usize = 200;

/// Enumeration caps; exceeding them is an error, never silent sampling.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Largest scope admitted for literal (non-collapsed) subset enumeration.
    pub max_scope: u32,
    /// Largest number of line searches a single call may perform.
    pub max_configs: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_scope: 24,
            max_configs: 10_000_000,
        }
    }
}

/// Result of one functional evaluation, with the witness that realizes it.
#[derive(Clone, Debug, Serialize)]
pub struct FunctionalResult {
    pub value: f64,
    pub witness_set: Vec<u32>,
    /// Sign pattern aligned with `witness_set` (D*_m only).
    pub witness_signs: Option<Vec<i8>>,
    pub witness_alpha: f64,
    /// Best coefficients on the witness set (sigma_m only).
    pub witness_coeffs: Option<CoeffVector>,
    pub enumeration_count: u64,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Minimizes a convex function on an expanding bracket, then by ternary
/// search down to an interval of width `ALPHA_TOL`.
pub(crate) fn minimize_1d<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    for i in 0..=MAX_EXPANSIONS {
        let fmid = f(0.5 * (lo + hi));
        let mut expanded = false;
        if flo <= fmid {
            lo -= hi - lo;
            flo = f(lo);
            expanded = true;
        }
        if fhi <= fmid {
            hi += hi - lo;
            fhi = f(hi);
            expanded = true;
        }
        if !expanded {
            break;
        }
        if i == MAX_EXPANSIONS {
            return Err(Error::ConvergenceFailure);
        }
    }
    let mut iters = 0;
    while hi - lo > ALPHA_TOL {
        let third = (hi - lo) / 3.0;
        let m1 = lo + third;
        let m2 = hi - third;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
        iters += 1;
        if iters > MAX_TERNARY_ITERS {
            return Err(Error::ConvergenceFailure);
        }
    }
    let alpha = 0.5 * (lo + hi);
    Ok((alpha, f(alpha)))
}

/// Allocation-free evaluator for `alpha -> ||x - alpha * dir||`.
struct LineObjective<'a> {
    space: &'a SpaceSpec,
    /// `(x_i, d_i, w_i)` over the merged support, sorted by index.
    terms: Vec<(f64, f64, f64)>,
}

impl<'a> LineObjective<'a> {
    fn build(space: &'a SpaceSpec, x: &CoeffVector, dir: &CoeffVector) -> Result<Self> {
        let mut idxs: Vec<u32> = x.support().chain(dir.support()).collect();
        idxs.sort_unstable();
        idxs.dedup();
        let mut terms = Vec::with_capacity(idxs.len());
        for i in idxs {
            terms.push((x.get(i), dir.get(i), space.weight(i)?));
        }
        Ok(LineObjective { space, terms })
    }

    fn eval(&self, alpha: f64) -> f64 {
        match self.space {
            SpaceSpec::Lp { p } if p.is_infinite() => self
                .terms
                .iter()
                .fold(0.0_f64, |acc, &(x, d, _)| acc.max((x - alpha * d).abs())),
            SpaceSpec::Lp { p } => self
                .terms
                .iter()
                .map(|&(x, d, _)| (x - alpha * d).abs().powf(*p))
                .sum::<f64>()
                .powf(1.0 / *p),
            SpaceSpec::WeightedLp { p, .. } => self
                .terms
                .iter()
                .map(|&(x, d, w)| w * (x - alpha * d).abs().powf(*p))
                .sum::<f64>()
                .powf(1.0 / *p),
            SpaceSpec::Hilbert => self
                .terms
                .iter()
                .map(|&(x, d, _)| {
                    let t = x - alpha * d;
                    t * t
                })
                .sum::<f64>()
                .sqrt(),
            SpaceSpec::SummingC0 => {
                let mut partial = 0.0;
                let mut best = 0.0_f64;
                for &(x, d, _) in &self.terms {
                    partial += x - alpha * d;
                    best = best.max(partial.abs());
                }
                best
            }
        }
    }
}

/// Distance from `x` to the line spanned by `dir`, together with a
/// minimizing coefficient.
pub fn line_distance(space: &SpaceSpec, x: &CoeffVector, dir: &CoeffVector) -> Result<(f64, f64)> {
    if dir.is_empty() {
        return Err(Error::ZeroDirection);
    }
    let obj = LineObjective::build(space, x, dir)?;
    if space.is_hilbert() {
        // orthogonal projection in closed form
        let (mut dot, mut dd) = (0.0, 0.0);
        for &(xi, di, _) in &obj.terms {
            dot += xi * di;
            dd += di * di;
        }
        let alpha = dot / dd;
        return Ok((obj.eval(alpha), alpha));
    }
    let bracket = x.sup_norm() + 1.0;
    let (alpha, value) = minimize_1d(|a| obj.eval(a), -bracket, bracket)?;
    Ok((value, alpha))
}

fn check_scope(x: &CoeffVector, m: usize, scope: u32) -> Result<()> {
    if let Some(max) = x.max_index() {
        if max > scope {
            return Err(Error::ScopeTooSmall(format!(
                "supp(x) reaches index {max} but scope is {scope}"
            )));
        }
    }
    if m as u64 > u64::from(scope) {
        return Err(Error::ScopeTooSmall(format!("m = {m} exceeds scope {scope}")));
    }
    Ok(())
}

/// Indices in `1..=scope` outside `supp`, smallest first, at most `count`.
fn off_support_indices(supp: &[u32], scope: u32, count: usize) -> Vec<u32> {
    let in_supp: std::collections::BTreeSet<u32> = supp.iter().copied().collect();
    (1..=scope)
        .filter(|i| !in_supp.contains(i))
        .take(count)
        .collect()
}

/// Best m-term approximation error sigma_m over sets `A ⊆ 1..=scope`.
pub fn sigma_m(space: &SpaceSpec, x: &CoeffVector, m: usize, scope: u32) -> Result<FunctionalResult> {
    sigma_m_capped(space, x, m, scope, &Caps::default())
}

pub fn sigma_m_capped(
    space: &SpaceSpec,
    x: &CoeffVector,
    m: usize,
    scope: u32,
    caps: &Caps,
) -> Result<FunctionalResult> {
    check_scope(x, m, scope)?;
    if space.is_decoupled() {
        return sigma_decoupled(space, x, m);
    }
    sigma_coordinate_search(space, x, m, scope, caps)
}

/// For decoupled norms the best m-term approximation is the restriction of x
/// to the m coordinates carrying the most norm mass.
fn sigma_decoupled(space: &SpaceSpec, x: &CoeffVector, m: usize) -> Result<FunctionalResult> {
    let mut mass: Vec<(u32, f64)> = Vec::with_capacity(x.support_size());
    for (i, c) in x.iter() {
        let contribution = match space {
            SpaceSpec::Lp { p } if p.is_infinite() => c.abs(),
            SpaceSpec::Lp { p } => c.abs().powf(*p),
            SpaceSpec::WeightedLp { p, .. } => space.weight(i)? * c.abs().powf(*p),
            SpaceSpec::Hilbert => c * c,
            SpaceSpec::SummingC0 => unreachable!("not decoupled"),
        };
        mass.push((i, contribution));
    }
    mass.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut set: Vec<u32> = mass.iter().take(m).map(|&(i, _)| i).collect();
    set.sort_unstable();
    let kept = project(x, &set);
    let value = space.norm(&x.sub(&kept)?)?;
    Ok(FunctionalResult {
        value,
        witness_set: set,
        witness_signs: None,
        witness_alpha: 0.0,
        witness_coeffs: Some(kept),
        enumeration_count: 1,
    })
}

/// Cyclic coordinate search for non-decoupled norms: for each candidate set,
/// every coordinate is solved by the one-dimensional ternary search,
/// multi-started from 0, from `P_A(x)` and from the best signed-line point.
/// The result is an upper bound on the true infimum over the scope.
fn sigma_coordinate_search(
    space: &SpaceSpec,
    x: &CoeffVector,
    m: usize,
    scope: u32,
    caps: &Caps,
) -> Result<FunctionalResult> {
    if m == 0 {
        return Ok(FunctionalResult {
            value: space.norm(x)?,
            witness_set: vec![],
            witness_signs: None,
            witness_alpha: 0.0,
            witness_coeffs: Some(CoeffVector::empty()),
            enumeration_count: 1,
        });
    }
    if scope > caps.max_scope {
        return Err(Error::CapExceeded(format!(
            "scope {scope} exceeds cap {}",
            caps.max_scope
        )));
    }
    let combis = binomial(u64::from(scope), m as u64);
    let configs = combis.saturating_mul(1 << (m - 1).min(62));
    if configs > caps.max_configs {
        return Err(Error::CapExceeded(format!(
            "C({scope},{m}) * 2^{} = {configs} exceeds cap {}",
            m - 1,
            caps.max_configs
        )));
    }
    let mut best: Option<FunctionalResult> = None;
    let mut count: u64 = 0;
    for set in (1..=scope).combinations(m) {
        // best multiple of a signed indicator on this set (a feasible start
        // that keeps sigma below the D* value for the same set)
        let mut line_best: Option<(f64, f64, u64)> = None; // (value, alpha, signmask)
        for mask in 0u64..(1 << (m - 1)) {
            let dir = CoeffVector::from_pairs(set.iter().enumerate().map(|(j, &i)| {
                let s = if j > 0 && (mask >> (j - 1)) & 1 == 1 { -1.0 } else { 1.0 };
                (i, s)
            }))?;
            let (value, alpha) = line_distance(space, x, &dir)?;
            count += 1;
            if line_best.map_or(true, |(v, _, _)| value < v) {
                line_best = Some((value, alpha, mask));
            }
        }
        let (line_value, line_alpha, line_mask) = line_best.unwrap();
        let mut starts: Vec<Vec<f64>> = vec![
            vec![0.0; m],
            set.iter().map(|&i| x.get(i)).collect(),
            set.iter()
                .enumerate()
                .map(|(j, &i)| {
                    let s = if j > 0 && (line_mask >> (j - 1)) & 1 == 1 { -1.0 } else { 1.0 };
                    let _ = i;
                    line_alpha * s
                })
                .collect(),
        ];
        starts.dedup();
        let mut set_best = (line_value, starts[0].clone());
        for start in starts {
            let (value, coeffs) = descend(space, x, &set, start)?;
            count += 1;
            if value < set_best.0 {
                set_best = (value, coeffs);
            }
        }
        let improved = best.as_ref().map_or(true, |b| set_best.0 < b.value);
        if improved {
            let coeffs = CoeffVector::from_pairs(
                set.iter().copied().zip(set_best.1.iter().copied()),
            )?;
            best = Some(FunctionalResult {
                value: set_best.0,
                witness_set: set.clone(),
                witness_signs: None,
                witness_alpha: 0.0,
                witness_coeffs: Some(coeffs),
                enumeration_count: 0,
            });
        }
    }
    let mut result = best.ok_or_else(|| Error::ScopeTooSmall("no candidate set".into()))?;
    result.enumeration_count = count;
    Ok(result)
}

/// One multi-sweep cyclic coordinate descent run on
/// `c -> ||x - sum_j c_j e_{set[j]}||`.
fn descend(
    space: &SpaceSpec,
    x: &CoeffVector,
    set: &[u32],
    mut coeffs: Vec<f64>,
) -> Result<(f64, Vec<f64>)> {
    let eval = |c: &[f64]| -> Result<f64> {
        let approx = CoeffVector::from_pairs(set.iter().copied().zip(c.iter().copied()))?;
        space.norm(&x.sub(&approx)?)
    };
    let mut value = eval(&coeffs)?;
    for _ in 0..MAX_COORD_SWEEPS {
        let before = value;
        for j in 0..set.len() {
            let held = coeffs.clone();
            let bracket = x.sup_norm() + held[j].abs() + 1.0;
            let (cj, _) = minimize_1d(
                |t| {
                    let mut c = held.clone();
                    c[j] = t;
                    eval(&c).unwrap_or(f64::INFINITY)
                },
                -bracket,
                bracket,
            )?;
            coeffs[j] = cj;
            value = eval(&coeffs)?;
        }
        if before - value <= COORD_REL_TOL * (1.0 + before.abs()) {
            break;
        }
    }
    Ok((value, coeffs))
}

/// D_m: min over `|A| = m`, `A ⊆ 1..=scope` of the distance to `[1_A]`.
pub fn d_m(space: &SpaceSpec, x: &CoeffVector, m: usize, scope: u32) -> Result<FunctionalResult> {
    d_capped(space, x, m, scope, &Caps::default(), false)
}

/// D*_m: as D_m, with the infimum also over sign patterns on `A`. The global
/// sign symmetry is quotiented by fixing the sign of one index to +1.
pub fn d_star_m(
    space: &SpaceSpec,
    x: &CoeffVector,
    m: usize,
    scope: u32,
) -> Result<FunctionalResult> {
    d_capped(space, x, m, scope, &Caps::default(), true)
}

pub fn d_m_capped(
    space: &SpaceSpec,
    x: &CoeffVector,
    m: usize,
    scope: u32,
    caps: &Caps,
) -> Result<FunctionalResult> {
    d_capped(space, x, m, scope, caps, false)
}

pub fn d_star_m_capped(
    space: &SpaceSpec,
    x: &CoeffVector,
    m: usize,
    scope: u32,
    caps: &Caps,
) -> Result<FunctionalResult> {
    d_capped(space, x, m, scope, caps, true)
}

fn d_capped(
    space: &SpaceSpec,
    x: &CoeffVector,
    m: usize,
    scope: u32,
    caps: &Caps,
    signed: bool,
) -> Result<FunctionalResult> {
    if m == 0 {
        return Err(Error::DomainError("D_m requires m >= 1".into()));
    }
    check_scope(x, m, scope)?;
    if space.is_symmetric() {
        d_symmetric(space, x, m, scope, caps, signed)
    } else {
        d_literal(space, x, m, scope, caps, signed)
    }
}

struct Best {
    result: Option<FunctionalResult>,
}

impl Best {
    fn new() -> Self {
        Best { result: None }
    }

    fn offer(
        &mut self,
        value: f64,
        alpha: f64,
        set: &[u32],
        signs: Option<&[i8]>,
    ) {
        if self.result.as_ref().map_or(true, |b| value < b.value) {
            self.result = Some(FunctionalResult {
                value,
                witness_set: set.to_vec(),
                witness_signs: signs.map(|s| s.to_vec()),
                witness_alpha: alpha,
                witness_coeffs: None,
                enumeration_count: 0,
            });
        }
    }
}

/// Collapsed enumeration for permutation/sign symmetric norms: only the
/// intersection with `supp(x)` and the number of off-support indices matter,
/// and off-support signs are fixed to +1.
fn d_symmetric(
    space: &SpaceSpec,
    x: &CoeffVector,
    m: usize,
    scope: u32,
    caps: &Caps,
    signed: bool,
) -> Result<FunctionalResult> {
    let supp = x.support_vec();
    let n = supp.len();
    let off_avail = scope as usize - n;
    let s_min = m.saturating_sub(off_avail);
    let s_max = m.min(n);
    let mut planned: u64 = 0;
    for s in s_min..=s_max {
        let signs = if !signed {
            1
        } else if s == 0 {
            1
        } else if s < m {
            1u64 << s.min(62)
        } else {
            1u64 << (s - 1).min(62)
        };
        planned = planned.saturating_add(binomial(n as u64, s as u64).saturating_mul(signs));
    }
    if planned > caps.max_configs {
        return Err(Error::CapExceeded(format!(
            "{planned} collapsed configurations exceed cap {}",
            caps.max_configs
        )));
    }
    let off = off_support_indices(&supp, scope, m.saturating_sub(s_min));
    let mut best = Best::new();
    let mut count: u64 = 0;
    for s in s_min..=s_max {
        let pad = &off[..m - s];
        for chosen in supp.iter().copied().combinations(s) {
            let mut set: Vec<u32> = chosen.iter().copied().chain(pad.iter().copied()).collect();
            set.sort_unstable();
            let sign_bits = if !signed || s == 0 {
                0
            } else if s < m {
                s // off-support part is the +1 representative of each class
            } else {
                s - 1 // quotient: smallest chosen index pinned to +1
            };
            for mask in 0u64..(1u64 << sign_bits) {
                let mut signs: Vec<i8> = vec![1; set.len()];
                if signed && s > 0 {
                    let free = if s < m { &chosen[..] } else { &chosen[1..] };
                    for (bit, &idx) in free.iter().enumerate() {
                        if (mask >> bit) & 1 == 1 {
                            let pos = set.iter().position(|&i| i == idx).unwrap();
                            signs[pos] = -1;
                        }
                    }
                }
                let dir = CoeffVector::from_pairs(
                    set.iter()
                        .zip(signs.iter())
                        .map(|(&i, &s)| (i, f64::from(s))),
                )?;
                let (value, alpha) = line_distance(space, x, &dir)?;
                count += 1;
                best.offer(value, alpha, &set, signed.then_some(&signs[..]));
            }
        }
    }
    let mut result = best
        .result
        .ok_or_else(|| Error::ScopeTooSmall("no candidate set".into()))?;
    result.enumeration_count = count;
    Ok(result)
}

/// Literal subset enumeration over the scope, for norms that are not
/// coordinate symmetric (weighted Lp, summing-type).
fn d_literal(
    space: &SpaceSpec,
    x: &CoeffVector,
    m: usize,
    scope: u32,
    caps: &Caps,
    signed: bool,
) -> Result<FunctionalResult> {
    if scope > caps.max_scope {
        return Err(Error::CapExceeded(format!(
            "scope {scope} exceeds cap {}",
            caps.max_scope
        )));
    }
    let sign_count: u64 = if signed { 1 << (m - 1).min(62) } else { 1 };
    let planned = binomial(u64::from(scope), m as u64).saturating_mul(sign_count);
    if planned > caps.max_configs {
        return Err(Error::CapExceeded(format!(
            "{planned} configurations exceed cap {}",
            caps.max_configs
        )));
    }
    let mut best = Best::new();
    let mut count: u64 = 0;
    for set in (1..=scope).combinations(m) {
        for mask in 0u64..sign_count {
            let signs: Vec<i8> = (0..m)
                .map(|j| {
                    if j > 0 && (mask >> (j - 1)) & 1 == 1 {
                        -1
                    } else {
                        1
                    }
                })
                .collect();
            let dir = CoeffVector::from_pairs(
                set.iter()
                    .zip(signs.iter())
                    .map(|(&i, &s)| (i, f64::from(s))),
            )?;
            let (value, alpha) = line_distance(space, x, &dir)?;
            count += 1;
            best.offer(value, alpha, &set, signed.then_some(&signs[..]));
        }
    }
    let mut result = best
        .result
        .ok_or_else(|| Error::ScopeTooSmall("no candidate set".into()))?;
    result.enumeration_count = count;
    Ok(result)
}

/// Hilbert closed form: `D_m(x) = sqrt(||x||^2 - sup{<x, 1_A>^2 : |A| = m}/m)`
/// (and the signed variant with `1_{eps A}`), with the supremum realized
/// exactly over the zero-padded scope.
pub fn hilbert_d_closed(x: &CoeffVector, m: usize, signed: bool) -> f64 {
    assert!(m >= 1, "hilbert_d_closed requires m >= 1");
    let norm_sq: f64 = x.iter().map(|(_, c)| c * c).sum();
    let sup = if signed {
        // sum of the m largest |coefficients|, padded with zeros
        let mut mags: Vec<f64> = x.iter().map(|(_, c)| c.abs()).collect();
        mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
        mags.iter().take(m).sum::<f64>()
    } else {
        // padding with zero coordinates lets |A| fall short of m on either side
        let mut vals: Vec<f64> = x.iter().map(|(_, c)| c).collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let pos: f64 = vals.iter().take(m).filter(|&&v| v > 0.0).sum();
        let neg: f64 = vals.iter().rev().take(m).filter(|&&v| v < 0.0).sum();
        pos.max(neg.abs())
    };
    (norm_sq - sup * sup / m as f64).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::indicator;
    use approx::assert_abs_diff_eq;

    fn v(values: &[f64]) -> CoeffVector {
        CoeffVector::from_dense(values).unwrap()
    }

    #[test]
    fn line_distance_examples() {
        // closed-form projection alpha = <x,dir>/||dir||^2 = 5/2
        let x = v(&[3.0, 2.0, 1.0]);
        let dir = indicator(&[1, 2]).unwrap();
        let (dist, alpha) = line_distance(&SpaceSpec::Hilbert, &x, &dir).unwrap();
        // value-based search locates the argmin only to ~sqrt(machine eps)
        assert_abs_diff_eq!(alpha, 2.5, epsilon = 1e-6);
        assert_abs_diff_eq!(dist, 1.5f64.sqrt(), epsilon = 1e-9);

        // x = c * dir
        let d2 = v(&[2.0, -1.0]);
        let x2 = d2.scale(3.5).unwrap();
        let (dist, alpha) = line_distance(&SpaceSpec::lp(1.0).unwrap(), &x2, &d2).unwrap();
        assert_abs_diff_eq!(dist, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(alpha, 3.5, epsilon = 1e-9);

        // orthogonal coordinates
        let e1 = indicator(&[1]).unwrap();
        let e2 = CoeffVector::from_pairs([(2, 1.0)]).unwrap();
        let (dist, alpha) = line_distance(&SpaceSpec::lp(2.0).unwrap(), &e1, &e2).unwrap();
        assert_abs_diff_eq!(dist, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(alpha, 0.0, epsilon = 1e-6);

        assert_eq!(
            line_distance(&SpaceSpec::Hilbert, &x, &CoeffVector::empty()),
            Err(Error::ZeroDirection)
        );
    }

    #[test]
    fn line_distance_sign_symmetry() {
        let x = v(&[3.0, -1.0, 0.5]);
        let dir = v(&[1.0, 1.0]);
        let neg = dir.scale(-1.0).unwrap();
        for space in [SpaceSpec::lp(1.5).unwrap(), SpaceSpec::SummingC0] {
            let (val, alpha) = line_distance(&space, &x, &dir).unwrap();
            let (nval, nalpha) = line_distance(&space, &x, &neg).unwrap();
            assert_abs_diff_eq!(val, nval, epsilon = 1e-9);
            assert_abs_diff_eq!(alpha, -nalpha, epsilon = 1e-6);
        }
    }

    #[test]
    fn sigma_examples() {
        let x = v(&[3.0, 2.0, 1.0]);
        let l2 = SpaceSpec::lp(2.0).unwrap();
        let r = sigma_m(&l2, &x, 1, 8).unwrap();
        assert_abs_diff_eq!(r.value, 5f64.sqrt(), epsilon = 1e-12);
        assert_eq!(r.witness_set, vec![1]);

        for space in [l2, SpaceSpec::SummingC0] {
            let r = sigma_m(&space, &x, 4, 8).unwrap();
            assert_abs_diff_eq!(r.value, 0.0, epsilon = 1e-9);
        }

        let l1 = SpaceSpec::lp(1.0).unwrap();
        let r = sigma_m(&l1, &x, 2, 8).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-12);
        assert_eq!(r.witness_set, vec![1, 2]);
    }

    #[test]
    fn sigma_scope_errors() {
        let x = v(&[1.0, 2.0]);
        assert!(matches!(
            sigma_m(&SpaceSpec::Hilbert, &x, 3, 1),
            Err(Error::ScopeTooSmall(_))
        ));
        assert!(matches!(
            sigma_m_capped(&SpaceSpec::SummingC0, &x, 2, 30, &Caps::default()),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn d_m_examples() {
        let l2 = SpaceSpec::lp(2.0).unwrap();
        let b4 = indicator(&[1, 2, 3, 4]).unwrap();
        let r = d_m(&l2, &b4, 2, 12).unwrap();
        assert_abs_diff_eq!(r.value, 2f64.sqrt(), epsilon = 1e-9);

        let b2 = indicator(&[1, 2]).unwrap();
        let r = d_m(&l2, &b2, 4, 12).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-9);

        let x = v(&[3.0, 2.0, 1.0]);
        let r = d_m(&SpaceSpec::Hilbert, &x, 2, 10).unwrap();
        assert_abs_diff_eq!(r.value, 1.5f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn d_star_examples() {
        let l2 = SpaceSpec::lp(2.0).unwrap();
        let b4 = indicator(&[1, 2, 3, 4]).unwrap();
        let r = d_star_m(&l2, &b4, 2, 12).unwrap();
        assert_abs_diff_eq!(r.value, 2f64.sqrt(), epsilon = 1e-9);

        let x = v(&[3.0, 2.0, 1.0]);
        let r = d_star_m(&SpaceSpec::Hilbert, &x, 2, 10).unwrap();
        assert_abs_diff_eq!(r.value, 1.5f64.sqrt(), epsilon = 1e-9);
        assert_eq!(r.witness_signs.as_deref(), Some(&[1, 1][..]));

        // x is itself a signed indicator
        let pm = v(&[1.0, -1.0]);
        let r = d_star_m(&l2, &pm, 2, 6).unwrap();
        assert_abs_diff_eq!(r.value, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn witness_reevaluates_to_value() {
        let x = v(&[1.5, -0.25, 2.0, 0.75]);
        for space in [
            SpaceSpec::lp(1.0).unwrap(),
            SpaceSpec::lp(3.0).unwrap(),
            SpaceSpec::Hilbert,
        ] {
            for m in 1..=3 {
                let r = d_star_m(&space, &x, m, 10).unwrap();
                let dir = CoeffVector::from_pairs(
                    r.witness_set
                        .iter()
                        .zip(r.witness_signs.as_ref().unwrap().iter())
                        .map(|(&i, &s)| (i, f64::from(s))),
                )
                .unwrap();
                let moved = x.sub(&dir.scale(r.witness_alpha).unwrap()).unwrap();
                assert_abs_diff_eq!(space.norm(&moved).unwrap(), r.value, epsilon = 1e-9);
                assert!(r.value <= space.norm(&x).unwrap() + 1e-9);
            }
        }
    }

    #[test]
    fn hilbert_closed_examples() {
        let x = v(&[3.0, 2.0, 1.0]);
        assert_abs_diff_eq!(
            hilbert_d_closed(&x, 2, false),
            (14.0f64 - 25.0 / 2.0).sqrt(),
            epsilon = 1e-12
        );
        let e1 = indicator(&[1]).unwrap();
        assert_abs_diff_eq!(hilbert_d_closed(&e1, 1, false), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hilbert_d_closed(&v(&[1.0, 1.0]), 1, false), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hilbert_closed_matches_oracle() {
        let x = v(&[2.0, -1.0, 0.5, -0.25]);
        for m in 1..=6 {
            let cf = hilbert_d_closed(&x, m, false);
            let or = d_m(&SpaceSpec::Hilbert, &x, m, 12).unwrap().value;
            assert_abs_diff_eq!(cf, or, epsilon = 1e-8);
            let cf = hilbert_d_closed(&x, m, true);
            let or = d_star_m(&SpaceSpec::Hilbert, &x, m, 12).unwrap().value;
            assert_abs_diff_eq!(cf, or, epsilon = 1e-8);
        }
    }

    #[test]
    fn chain_inequality_spot() {
        let x = v(&[1.0, -2.0, 0.5]);
        for space in [
            SpaceSpec::lp(1.0).unwrap(),
            SpaceSpec::lp(2.5).unwrap(),
            SpaceSpec::Hilbert,
            SpaceSpec::SummingC0,
        ] {
            for m in 1..=3 {
                let s = sigma_m(&space, &x, m, 6).unwrap().value;
                let ds = d_star_m(&space, &x, m, 6).unwrap().value;
                let d = d_m(&space, &x, m, 6).unwrap().value;
                let n = space.norm(&x).unwrap();
                assert!(s <= ds + 1e-9, "{space:?} m={m}: sigma {s} > D* {ds}");
                assert!(ds <= d + 1e-9, "{space:?} m={m}: D* {ds} > D {d}");
                assert!(d <= n + 1e-9, "{space:?} m={m}: D {d} > norm {n}");
            }
        }
    }
}
