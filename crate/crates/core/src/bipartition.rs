//! Cuts `S | S̄` of N subsystems, and the canonical enumeration that the
//! pyramid measures range over.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GmeError, Result};

/// A nonempty proper subset `S` of `{1, …, n}` (1-based, strictly increasing).
///
/// Any such subset is accepted; [`Bipartition::canonical`] maps it to the
/// representative used by [`canonical_bipartitions`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    n: usize,
    subset: Vec<usize>,
}

impl Bipartition {
    pub fn new(n: usize, subset: impl Into<Vec<usize>>) -> Result<Self> {
        let mut subset = subset.into();
        subset.sort_unstable();
        if n < 2 {
            return Err(GmeError::InvalidBipartition(format!(
                "need at least 2 parties, got {n}"
            )));
        }
        if subset.is_empty() || subset.len() >= n {
            return Err(GmeError::InvalidBipartition(format!(
                "subset {subset:?} is not a nonempty proper subset of 1..={n}"
            )));
        }
        if subset.windows(2).any(|w| w[0] == w[1]) {
            return Err(GmeError::InvalidBipartition(format!(
                "subset {subset:?} repeats an index"
            )));
        }
        if let Some(&bad) = subset.iter().find(|&&i| i == 0 || i > n) {
            return Err(GmeError::SiteOutOfRange { index: bad, n });
        }
        Ok(Self { n, subset })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn len(&self) -> usize {
        self.subset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: usize) -> bool {
        self.subset.binary_search(&index).is_ok()
    }

    /// `{1..n} \ S`, sorted.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.contains(*i)).collect()
    }

    /// The same cut seen from the other side.
    pub fn flipped(&self) -> Bipartition {
        Bipartition {
            n: self.n,
            subset: self.complement(),
        }
    }

    /// Canonical sides have at most `n/2` elements, and half-size sides contain 1.
    pub fn is_canonical(&self) -> bool {
        let k = self.subset.len();
        2 * k < self.n || (2 * k == self.n && self.subset[0] == 1)
    }

    pub fn canonical(&self) -> Bipartition {
        if self.is_canonical() {
            self.clone()
        } else {
            self.flipped()
        }
    }

    /// Comma-joined indices, e.g. `1,3`.
    pub fn key(&self) -> String {
        self.subset
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`Bipartition::key`].
    pub fn from_key(n: usize, key: &str) -> Result<Self> {
        let subset = key
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| GmeError::InvalidBipartition(format!("bad index `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, subset)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Canonical cuts of `n` parties, grouped by `|S|` from 1 to `⌊n/2⌋`.
///
/// Group `k` holds all `C(n,k)` subsets for `k < n/2`, and the `C(n,n/2)/2`
/// subsets containing index 1 for `k = n/2`. Each group is in lexicographic
/// order; `2^{n-1} - 1` cuts in total.
pub fn canonical_bipartitions(n: usize) -> Result<Vec<Vec<Bipartition>>> {
    if n < 2 {
        return Err(GmeError::InvalidBipartition(format!(
            "need at least 2 parties, got {n}"
        )));
    }
    Ok((1..=n / 2)
        .map(|k| {
            combinations(n, k)
                .into_iter()
                .map(|subset| Bipartition { n, subset })
                .filter(Bipartition::is_canonical)
                .collect()
        })
        .collect())
}

/// All canonical cuts flattened, smallest groups first.
pub fn canonical_cuts(n: usize) -> Result<Vec<Bipartition>> {
    Ok(canonical_bipartitions(n)?.into_iter().flatten().collect())
}

/// Lexicographically ordered `k`-subsets of `{1..n}`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        // Rightmost slot that can still advance.
        let Some(pos) = (0..k).rev().find(|&i| current[i] < n - (k - 1 - i)) else {
            return out;
        };
        current[pos] += 1;
        for i in pos + 1..k {
            current[i] = current[i - 1] + 1;
        }
    }
}
