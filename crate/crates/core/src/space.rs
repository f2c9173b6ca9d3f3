//! Coefficient-vector model and the norm families every other module operates on.
//!
//! Vectors are finitely supported coefficient sequences with respect to a fixed
//! basis, stored sparsely as `index -> coefficient` with explicit zeros
//! normalized away at construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute/relative tolerance for functional comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Finitely supported coefficient sequence. Keys are 1-based basis indices;
/// every stored coefficient is nonzero and finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, f64)>", into = "Vec<(u32, f64)>")]
pub struct CoeffVector {
    entries: BTreeMap<u32, f64>,
}

impl CoeffVector {
    pub fn empty() -> Self {
        CoeffVector {
            entries: BTreeMap::new(),
        }
    }

    /// Builds a vector from `(index, coefficient)` pairs. Zero coefficients are
    /// dropped; non-finite coefficients and duplicate or zero indices are
    /// rejected.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, f64)>,
    {
        let mut entries = BTreeMap::new();
        for (idx, c) in pairs {
            if idx == 0 {
                return Err(Error::InvalidVector("indices are 1-based".into()));
            }
            if !c.is_finite() {
                return Err(Error::InvalidVector(format!(
                    "non-finite coefficient {c} at index {idx}"
                )));
            }
            if c == 0.0 {
                continue;
            }
            if entries.insert(idx, c).is_some() {
                return Err(Error::InvalidVector(format!("duplicate index {idx}")));
            }
        }
        Ok(CoeffVector { entries })
    }

    /// Dense constructor: `values[i]` becomes the coefficient at index `i + 1`.
    pub fn from_dense(values: &[f64]) -> Result<Self> {
        Self::from_pairs(
            values
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as u32 + 1, v)),
        )
    }

    pub fn get(&self, idx: u32) -> f64 {
        self.entries.get(&idx).copied().unwrap_or(0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.keys().copied()
    }

    pub fn support_vec(&self) -> Vec<u32> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.entries.iter().map(|(&i, &c)| (i, c))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.entries.keys().next_back().copied()
    }

    /// `max |coefficient|`, 0 for the empty vector.
    pub fn sup_norm(&self) -> f64 {
        self.entries
            .values()
            .fold(0.0_f64, |acc, c| acc.max(c.abs()))
    }

    pub fn scale(&self, lambda: f64) -> Result<Self> {
        Self::from_pairs(self.iter().map(|(i, c)| (i, lambda * c)))
    }

    pub fn add(&self, other: &CoeffVector) -> Result<Self> {
        let mut entries: BTreeMap<u32, f64> = self.entries.clone();
        for (i, c) in other.iter() {
            *entries.entry(i).or_insert(0.0) += c;
        }
        Self::from_pairs(entries)
    }

    pub fn sub(&self, other: &CoeffVector) -> Result<Self> {
        self.add(&other.scale(-1.0)?)
    }

    /// Supports are disjoint.
    pub fn disjoint_from(&self, other: &CoeffVector) -> bool {
        self.support().all(|i| other.get(i) == 0.0)
    }
}

impl TryFrom<Vec<(u32, f64)>> for CoeffVector {
    type Error = Error;
    fn try_from(pairs: Vec<(u32, f64)>) -> Result<Self> {
        CoeffVector::from_pairs(pairs)
    }
}

impl From<CoeffVector> for Vec<(u32, f64)> {
    fn from(x: CoeffVector) -> Self {
        x.iter().collect()
    }
}

/// Coordinate projection `P_A(x)`: restriction of `x` to the index set `A`.
pub fn project(x: &CoeffVector, set: &[u32]) -> CoeffVector {
    let keep: std::collections::BTreeSet<u32> = set.iter().copied().collect();
    CoeffVector {
        entries: x
            .entries
            .iter()
            .filter(|(i, _)| keep.contains(i))
            .map(|(&i, &c)| (i, c))
            .collect(),
    }
}

/// Finite index set with a sign pattern; the vector form is `1_{eps A}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, i8)>", into = "Vec<(u32, i8)>")]
pub struct SignedSet {
    signs: BTreeMap<u32, i8>,
}

impl SignedSet {
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, i8)>,
    {
        let mut signs = BTreeMap::new();
        for (idx, s) in pairs {
            if idx == 0 {
                return Err(Error::InvalidVector("indices are 1-based".into()));
            }
            if s != 1 && s != -1 {
                return Err(Error::InvalidVector(format!("sign must be +/-1, got {s}")));
            }
            if signs.insert(idx, s).is_some() {
                return Err(Error::InvalidVector(format!("duplicate index {idx}")));
            }
        }
        Ok(SignedSet { signs })
    }

    /// All-positive signs on `indices`.
    pub fn positive(indices: &[u32]) -> Result<Self> {
        Self::new(indices.iter().map(|&i| (i, 1)))
    }

    pub fn indices(&self) -> Vec<u32> {
        self.signs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, idx: u32) -> Option<i8> {
        self.signs.get(&idx).copied()
    }

    /// `1_{eps A}` as a coefficient vector.
    pub fn indicator(&self) -> CoeffVector {
        CoeffVector {
            entries: self
                .signs
                .iter()
                .map(|(&i, &s)| (i, f64::from(s)))
                .collect(),
        }
    }
}

impl TryFrom<Vec<(u32, i8)>> for SignedSet {
    type Error = Error;
    fn try_from(pairs: Vec<(u32, i8)>) -> Result<Self> {
        SignedSet::new(pairs)
    }
}

impl From<SignedSet> for Vec<(u32, i8)> {
    fn from(s: SignedSet) -> Self {
        s.signs.iter().map(|(&i, &sg)| (i, sg)).collect()
    }
}

/// Unsigned indicator `1_A`.
pub fn indicator(set: &[u32]) -> Result<CoeffVector> {
    CoeffVector::from_pairs(set.iter().map(|&i| (i, 1.0)))
}

/// Normed sequence-space descriptor. Norms are defined directly on basis
/// coefficients; `SummingC0` takes the c0-norm of the partial sums, a
/// conditional-basis negative control.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Lp { p: f64 },
    WeightedLp { p: f64, weights: Vec<f64> },
    Hilbert,
    SummingC0,
}

impl SpaceSpec {
    pub fn lp(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::DomainError(format!("lp exponent must be >= 1, got {p}")));
        }
        Ok(SpaceSpec::Lp { p })
    }

    pub fn weighted_lp(p: f64, weights: Vec<f64>) -> Result<Self> {
        if p.is_nan() || p < 1.0 || p.is_infinite() {
            return Err(Error::DomainError(format!(
                "weighted lp exponent must be finite and >= 1, got {p}"
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::IncompleteSpec(
                "weights must be strictly positive and finite".into(),
            ));
        }
        Ok(SpaceSpec::WeightedLp { p, weights })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceSpec::Lp { p } => {
                SpaceSpec::lp(*p)?;
            }
            SpaceSpec::WeightedLp { p, weights } => {
                SpaceSpec::weighted_lp(*p, weights.clone())?;
            }
            SpaceSpec::Hilbert | SpaceSpec::SummingC0 => {}
        }
        Ok(())
    }

    /// Weight at a 1-based index, for `WeightedLp`.
    pub(crate) fn weight(&self, idx: u32) -> Result<f64> {
        match self {
            SpaceSpec::WeightedLp { weights, .. } => weights
                .get(idx as usize - 1)
                .copied()
                .ok_or_else(|| Error::IncompleteSpec(format!("no weight for index {idx}"))),
            _ => Ok(1.0),
        }
    }

    /// Coordinate restriction is the nearest point of the coordinate subspace.
    pub fn is_decoupled(&self) -> bool {
        !matches!(self, SpaceSpec::SummingC0)
    }

    /// Norm invariant under permutations and sign changes of the coefficients.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SpaceSpec::Lp { .. } | SpaceSpec::Hilbert)
    }

    pub fn is_hilbert(&self) -> bool {
        matches!(self, SpaceSpec::Hilbert)
    }

    /// Evaluates the norm of `x` in this space.
    pub fn norm(&self, x: &CoeffVector) -> Result<f64> {
        match self {
            SpaceSpec::Lp { p } => {
                SpaceSpec::lp(*p)?;
                if p.is_infinite() {
                    Ok(x.sup_norm())
                } else {
                    Ok(x.iter()
                        .map(|(_, c)| c.abs().powf(*p))
                        .sum::<f64>()
                        .powf(1.0 / *p))
                }
            }
            SpaceSpec::WeightedLp { p, .. } => {
                self.validate()?;
                let mut total = 0.0;
                for (i, c) in x.iter() {
                    total += self.weight(i)? * c.abs().powf(*p);
                }
                Ok(total.powf(1.0 / *p))
            }
            SpaceSpec::Hilbert => Ok(x.iter().map(|(_, c)| c * c).sum::<f64>().sqrt()),
            SpaceSpec::SummingC0 => {
                let mut partial = 0.0;
                let mut best = 0.0_f64;
                for (_, c) in x.iter() {
                    partial += c;
                    best = best.max(partial.abs());
                }
                Ok(best)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn v(values: &[f64]) -> CoeffVector {
        CoeffVector::from_dense(values).unwrap()
    }

    #[test]
    fn norm_examples() {
        let l2 = SpaceSpec::lp(2.0).unwrap();
        assert_abs_diff_eq!(l2.norm(&v(&[3.0, 2.0, 1.0])).unwrap(), 14f64.sqrt());
        let l1 = SpaceSpec::lp(1.0).unwrap();
        assert_abs_diff_eq!(l1.norm(&v(&[1.0, -1.0, 1.0])).unwrap(), 3.0);
        // partial sums 1, 0
        assert_abs_diff_eq!(SpaceSpec::SummingC0.norm(&v(&[1.0, -1.0])).unwrap(), 1.0);
        assert_abs_diff_eq!(l2.norm(&CoeffVector::empty()).unwrap(), 0.0);
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            CoeffVector::from_pairs([(1, f64::NAN)]),
            Err(Error::InvalidVector(_))
        ));
        assert!(matches!(
            CoeffVector::from_pairs([(1, f64::INFINITY)]),
            Err(Error::InvalidVector(_))
        ));
        let w = SpaceSpec::weighted_lp(1.0, vec![1.0, 0.5]).unwrap();
        assert!(matches!(
            w.norm(&v(&[1.0, 1.0, 1.0])),
            Err(Error::IncompleteSpec(_))
        ));
        assert!(SpaceSpec::weighted_lp(1.0, vec![1.0, 0.0]).is_err());
        assert!(SpaceSpec::lp(0.5).is_err());
    }

    #[test]
    fn zeros_are_normalized_away() {
        let x = CoeffVector::from_pairs([(2, 3.0), (4, 2.0), (7, 0.0)]).unwrap();
        assert_eq!(x.support_vec(), vec![2, 4]);
        assert_eq!(x.get(7), 0.0);
        assert_eq!(x.sup_norm(), 3.0);
    }

    #[test]
    fn projection_examples() {
        let x = v(&[3.0, 2.0, 1.0]);
        assert_eq!(project(&x, &[1, 3]).support_vec(), vec![1, 3]);
        assert!(project(&x, &[]).is_empty());
        assert!(project(&x, &[4]).is_empty());
    }

    #[test]
    fn indicator_examples() {
        let a = SignedSet::new([(1, 1), (2, -1)]).unwrap();
        assert_eq!(a.indicator(), v(&[1.0, -1.0]));
        assert!(SignedSet::new([]).unwrap().indicator().is_empty());
        let e3 = SignedSet::new([(3, 1)]).unwrap();
        assert_eq!(e3.indicator().get(3), 1.0);
        assert_eq!(e3.indicator().support_size(), 1);
    }

    #[test]
    fn p_infinity_is_sup_norm() {
        let linf = SpaceSpec::lp(f64::INFINITY).unwrap();
        assert_abs_diff_eq!(linf.norm(&v(&[3.0, -5.0, 1.0])).unwrap(), 5.0);
    }

    #[test]
    fn summing_c0_violates_suppression() {
        // conditional-basis control: a projection can grow the norm
        let space = SpaceSpec::SummingC0;
        let x = v(&[1.0, -1.0, 1.0, -1.0]);
        let px = project(&x, &[1, 3]);
        assert!(space.norm(&px).unwrap() > space.norm(&x).unwrap());
    }

    fn test_spaces() -> Vec<SpaceSpec> {
        vec![
            SpaceSpec::lp(1.0).unwrap(),
            SpaceSpec::lp(2.0).unwrap(),
            SpaceSpec::lp(3.5).unwrap(),
            SpaceSpec::lp(f64::INFINITY).unwrap(),
            SpaceSpec::weighted_lp(1.5, (0..10).map(|k| 0.5f64.powi(k)).collect()).unwrap(),
            SpaceSpec::Hilbert,
            SpaceSpec::SummingC0,
        ]
    }

    fn small_vec() -> impl Strategy<Value = CoeffVector> {
        proptest::collection::vec(-5.0..5.0f64, 0..6)
            .prop_map(|vals| CoeffVector::from_dense(&vals).unwrap())
    }

    proptest! {
        #[test]
        fn triangle_inequality(x in small_vec(), y in small_vec()) {
            for space in test_spaces() {
                let lhs = space.norm(&x.add(&y).unwrap()).unwrap();
                let rhs = space.norm(&x).unwrap() + space.norm(&y).unwrap();
                prop_assert!(lhs <= rhs + 1e-9, "{space:?}: {lhs} > {rhs}");
            }
        }

        #[test]
        fn absolute_homogeneity(x in small_vec(), lam in prop_oneof![Just(-3.0), Just(-0.5), Just(0.0), Just(0.5), Just(2.0)]) {
            for space in test_spaces() {
                let lhs = space.norm(&x.scale(lam).unwrap()).unwrap();
                let rhs = lam.abs() * space.norm(&x).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
            }
        }

        #[test]
        fn lp_suppression_one(x in small_vec(), mask in proptest::collection::vec(any::<bool>(), 6)) {
            let set: Vec<u32> = x.support().filter(|&i| mask[(i - 1) as usize]).collect();
            let px = project(&x, &set);
            for space in test_spaces() {
                if space.is_decoupled() {
                    prop_assert!(space.norm(&px).unwrap() <= space.norm(&x).unwrap() + 1e-12);
                }
            }
        }

        #[test]
        fn hilbert_matches_l2(x in small_vec()) {
            let h = SpaceSpec::Hilbert.norm(&x).unwrap();
            let l2 = SpaceSpec::lp(2.0).unwrap().norm(&x).unwrap();
            prop_assert!((h - l2).abs() <= 1e-12 * (1.0 + l2));
        }

        #[test]
        fn norm_zero_iff_empty(x in small_vec()) {
            for space in test_spaces() {
                let n = space.norm(&x).unwrap();
                if x.is_empty() {
                    prop_assert_eq!(n, 0.0);
                } else if !matches!(space, SpaceSpec::SummingC0) {
                    prop_assert!(n > 0.0);
                }
            }
        }
    }
}
