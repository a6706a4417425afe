//! Discretization of the membership axis.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shared discretization of the membership axis alpha in [0, 1].
///
/// Levels are strictly increasing, start at exactly 0 and end at exactly 1.
/// The grid is reference-counted internally, so clones are cheap and every
/// fuzzy number built on the same grid shares one level array.
#[derive(Debug, Clone)]
pub struct AlphaGrid {
    levels: Arc<Vec<f64>>,
}

impl AlphaGrid {
    /// Uniform grid with `n` levels: 0, 1/(n-1), ..., 1.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 levels, got {n}")));
        }
        let last = (n - 1) as f64;
        let levels = (0..n).map(|i| i as f64 / last).collect();
        Ok(Self { levels: Arc::new(levels) })
    }

    /// Grid from an explicit level list.
    pub fn from_levels(levels: Vec<f64>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 levels, got {}",
                levels.len()
            )));
        }
        if levels[0] != 0.0 {
            return Err(Error::InvalidGrid(format!("first level must be 0, got {}", levels[0])));
        }
        if *levels.last().unwrap() != 1.0 {
            return Err(Error::InvalidGrid(format!(
                "last level must be 1, got {}",
                levels.last().unwrap()
            )));
        }
        for w in levels.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidGrid(format!(
                    "levels must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { levels: Arc::new(levels) })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid grid always has at least two levels
    }

    /// Grids are interchangeable when their level arrays are equal.
    pub fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.levels, &other.levels) || *self.levels == *other.levels
    }
}

impl PartialEq for AlphaGrid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Serialize for AlphaGrid {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.levels.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlphaGrid {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let levels = Vec::<f64>::deserialize(deserializer)?;
        AlphaGrid::from_levels(levels).map_err(serde::de::Error::custom)
    }
}
