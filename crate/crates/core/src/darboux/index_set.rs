use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Ordered set of virtual-state degrees `D = {d_1, ..., d_M}`.
///
/// Strict sets are sorted, distinct and positive. Raw sets keep their order
/// and may contain 0, for permutation and `d_M = 0` checks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn empty() -> Self {
        Self {
            indices: Vec::new(),
        }
    }

    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidIndexSet("indices must be positive".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "{indices:?} is not strictly increasing"
            )));
        }
        Ok(Self { indices })
    }

    pub fn raw(indices: Vec<usize>) -> Result<Self> {
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "{indices:?} has repeated entries"
            )));
        }
        Ok(Self { indices })
    }

    /// Parses `"1,3,5"`, `"{1,3,5}"` or an empty set, in strict mode.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        if body.is_empty() {
            return Ok(Self::empty());
        }
        let indices = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidIndexSet(format!("cannot parse {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn m(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `l_D = sum d_j - M(M-1)/2`, the degree of `Xi_D`.
    pub fn ell(&self) -> i64 {
        let m = self.indices.len() as i64;
        self.indices.iter().map(|&d| d as i64).sum::<i64>() - m * (m - 1) / 2
    }

    pub fn max(&self) -> usize {
        self.indices.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
