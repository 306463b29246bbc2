use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Chain, RankedPoset};

/// A function `P -> N_0`, stored by element id of a [`RankedPoset`].
///
/// Because ids follow `(rank, label)`, the derived `Ord` is the canonical
/// lexicographic order used for every listing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightFunction(pub Vec<u64>);

impl WeightFunction {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn from_chain(rp: &RankedPoset, chain: &Chain) -> Self {
        let mut f = Self::zero(rp.len());
        for &x in chain.elements() {
            f.0[x] += 1;
        }
        f
    }

    /// Build from a label map. Every element must be present.
    pub fn from_labels(rp: &RankedPoset, values: &BTreeMap<String, u64>) -> Result<Self> {
        for label in values.keys() {
            if rp.id(label).is_none() {
                return Err(Error::UnknownLabel(label.clone()));
            }
        }
        rp.labels()
            .iter()
            .map(|l| values.get(l).copied().ok_or_else(|| Error::MissingWeight(l.clone())))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// Values given in canonical element order.
    pub fn from_values(rp: &RankedPoset, values: Vec<u64>) -> Result<Self> {
        if values.len() != rp.len() {
            return Err(Error::WeightLength {
                expected: rp.len(),
                got: values.len(),
            });
        }
        Ok(Self(values))
    }

    pub fn to_labels(&self, rp: &RankedPoset) -> BTreeMap<String, u64> {
        rp.labels().iter().cloned().zip(self.0.iter().copied()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, x: usize) -> u64 {
        self.0[x]
    }

    /// `f(A)` for a set of ids.
    pub fn sum_over(&self, ids: impl IntoIterator<Item = usize>) -> u64 {
        ids.into_iter().map(|x| self.0[x]).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    /// `self - other`, if it stays nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&v| v > 0)
    }

    pub fn display<'a>(&'a self, rp: &'a RankedPoset) -> impl fmt::Display + 'a {
        DisplayWeights { f: self, rp }
    }
}

struct DisplayWeights<'a> {
    f: &'a WeightFunction,
    rp: &'a RankedPoset,
}

impl fmt::Display for DisplayWeights<'_> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "(")?;
        for (x, v) in self.f.0.iter().enumerate() {
            if x > 0 {
                write!(fm, ", ")?;
            }
            write!(fm, "{}:{}", self.rp.label(x), v)?;
        }
        write!(fm, ")")
    }
}
