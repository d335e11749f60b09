//! Finite strategy spaces with subsets addressed by bitmask.

use thiserror::Error;

/// Maximum number of points in a space. Capacity tables hold one entry per
/// subset, so 24 points cap a table at 2^24 entries.
pub const MAX_POINTS: usize = 24;

/// Subset of a [`FiniteSpace`], encoded as a bitmask: bit `i` is set exactly
/// when point `i` belongs to the subset.
pub type Mask = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("a space needs between 1 and {MAX_POINTS} points, got {0}")]
    BadSize(usize),
    #[error("labels must be nonempty and pairwise distinct (offending label {0:?})")]
    BadLabel(String),
}

/// A labeled finite set of pure strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Self, SpaceError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_POINTS {
            return Err(SpaceError::BadSize(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || labels[..i].iter().any(|prev| prev == l) {
                return Err(SpaceError::BadLabel(l.clone()));
            }
        }
        Ok(FiniteSpace { labels })
    }

    /// Space with generated labels `s0`, `s1`, ...
    pub fn of_size(n: usize) -> Result<Self, SpaceError> {
        Self::new((0..n).map(|i| format!("s{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, point: usize) -> &str {
        &self.labels[point]
    }

    /// Iterator over point indices.
    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.labels.len()
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1 << self.labels.len()
    }

    /// Bitmask of the whole space.
    pub fn full_mask(&self) -> Mask {
        self.subset_count() - 1
    }

    pub fn singleton(&self, point: usize) -> Mask {
        debug_assert!(point < self.len());
        1 << point
    }

    /// Human-readable rendering of a subset, e.g. `{a,b}`.
    pub fn describe(&self, mask: Mask) -> String {
        let inside: Vec<&str> = self
            .points()
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.labels[i].as_str())
            .collect();
        format!("{{{}}}", inside.join(","))
    }
}

/// Iterator over the points of a mask.
pub fn mask_points(mask: Mask) -> impl Iterator<Item = usize> {
    (0..MAX_POINTS).filter(move |i| mask & (1 << i) != 0)
}
