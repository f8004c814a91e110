use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly increasing list of column indices into a dictionary.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AtomSet(Vec<usize>);

impl AtomSet {
    /// Builds a set from indices in any order. Duplicates and indices
    /// outside `0..n_atoms` are rejected.
    pub fn new(indices: impl IntoIterator<Item = usize>, n_atoms: usize) -> Result<Self> {
        let set = Self::from_unsorted(indices.into_iter().collect())?;
        if let Some(&last) = set.0.last() {
            if last >= n_atoms {
                return Err(Error::InvalidAtomSet(format!(
                    "index {last} out of range for {n_atoms} atoms"
                )));
            }
        }
        Ok(set)
    }

    fn from_unsorted(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidAtomSet(format!("duplicate index {}", w[0])));
        }
        Ok(Self(indices))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn range(r: Range<usize>) -> Self {
        Self(r.collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut v: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        AtomSet(v)
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.iter().filter(|&j| other.contains(j)).collect())
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.iter().filter(|&j| !other.contains(j)).collect())
    }

    /// `|self ∩ other|`.
    pub fn overlap(&self, other: &AtomSet) -> usize {
        self.iter().filter(|&j| other.contains(j)).count()
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.overlap(other) == 0
    }

    pub fn complement(&self, n_atoms: usize) -> AtomSet {
        AtomSet((0..n_atoms).filter(|&j| !self.contains(j)).collect())
    }

    /// All subsets of `0..n` with exactly `k` elements, in lexicographic order.
    pub fn all_of_size(n: usize, k: usize) -> impl Iterator<Item = AtomSet> {
        let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
        std::iter::from_fn(move || {
            let out = current.clone()?;
            // advance to the next combination
            let next = {
                let mut c = out.clone();
                let mut i = k;
                loop {
                    if i == 0 {
                        break None;
                    }
                    i -= 1;
                    if c[i] < n - k + i {
                        c[i] += 1;
                        for j in i + 1..k {
                            c[j] = c[j - 1] + 1;
                        }
                        break Some(c);
                    }
                }
            };
            current = next;
            Some(AtomSet(out))
        })
    }
}

impl TryFrom<Vec<usize>> for AtomSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::from_unsorted(v)
    }
}

impl From<AtomSet> for Vec<usize> {
    fn from(s: AtomSet) -> Self {
        s.0
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}
