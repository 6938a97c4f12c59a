//! Upward-closed ("non-perforated") subsemigroups of `ℤ^m_{≥0}`, stored as
//! their finite antichain of origins (minimal elements).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NpError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a generator set must be non-empty")]
    Empty,
}

pub type LatticePoint = Vec<u64>;

/// `a ≤ b` coordinatewise.
pub fn dominated_by(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OriginSet {
    dimension: usize,
    origins: BTreeSet<LatticePoint>,
}

impl OriginSet {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Origins in lexicographic order.
    pub fn origins(&self) -> Vec<LatticePoint> {
        self.origins.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.origins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origins.is_empty()
    }

    fn check(&self, p: &[u64]) -> Result<(), NpError> {
        if p.len() != self.dimension {
            return Err(NpError::DimensionMismatch { expected: self.dimension, found: p.len() });
        }
        Ok(())
    }

    pub fn member(&self, p: &[u64]) -> Result<bool, NpError> {
        self.check(p)?;
        Ok(self.origins.iter().any(|o| dominated_by(o, p)))
    }

    pub fn is_antichain(&self) -> bool {
        self.origins
            .iter()
            .all(|a| self.origins.iter().all(|b| a == b || !dominated_by(a, b)))
    }

    pub fn intersect(&self, other: &OriginSet) -> Result<OriginSet, NpError> {
        same_dim(self, other)?;
        let joins = self.origins.iter().flat_map(|x| {
            other.origins.iter().map(move |y| x.iter().zip(y).map(|(a, b)| *a.max(b)).collect::<Vec<u64>>())
        });
        Ok(minimal(self.dimension, joins))
    }

    pub fn union(&self, other: &OriginSet) -> Result<OriginSet, NpError> {
        same_dim(self, other)?;
        Ok(minimal(self.dimension, self.origins.iter().chain(other.origins.iter()).cloned()))
    }
}

fn same_dim(a: &OriginSet, b: &OriginSet) -> Result<(), NpError> {
    if a.dimension != b.dimension {
        return Err(NpError::DimensionMismatch { expected: a.dimension, found: b.dimension });
    }
    Ok(())
}

fn minimal(dimension: usize, points: impl IntoIterator<Item = LatticePoint>) -> OriginSet {
    let all: BTreeSet<LatticePoint> = points.into_iter().collect();
    let origins = all
        .iter()
        .filter(|p| !all.iter().any(|q| q != *p && dominated_by(q, p)))
        .cloned()
        .collect();
    OriginSet { dimension, origins }
}

/// Origins of the union of the cones `g + ℤ^m_{≥0}` over the generators.
pub fn origins(generators: &[LatticePoint]) -> Result<OriginSet, NpError> {
    let first = generators.first().ok_or(NpError::Empty)?;
    let dimension = first.len();
    for g in generators {
        if g.len() != dimension {
            return Err(NpError::DimensionMismatch { expected: dimension, found: g.len() });
        }
    }
    Ok(minimal(dimension, generators.iter().cloned()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[&[u64]]) -> OriginSet {
        origins(&points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn origin_examples() {
        assert_eq!(set(&[&[1, 0], &[2, 1], &[0, 2]]).origins(), vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(set(&[&[2, 0], &[0, 3], &[1, 1]]).len(), 3);
        assert_eq!(set(&[&[0, 0, 0]]).origins(), vec![vec![0, 0, 0]]);
        assert!(matches!(origins(&[vec![1], vec![1, 2]]), Err(NpError::DimensionMismatch { .. })));
        assert!(matches!(origins(&[]), Err(NpError::Empty)));
    }

    #[test]
    fn membership() {
        let s = set(&[&[1, 1]]);
        assert!(s.member(&[3, 1]).unwrap());
        assert!(!s.member(&[0, 5]).unwrap());
        assert!(!set(&[&[1, 0], &[0, 2]]).member(&[0, 1]).unwrap());
        assert!(s.member(&[1]).is_err());
    }

    #[test]
    fn lattice_operations() {
        assert_eq!(set(&[&[1, 0]]).intersect(&set(&[&[0, 1]])).unwrap().origins(), vec![vec![1, 1]]);
        assert_eq!(set(&[&[1, 0]]).union(&set(&[&[2, 0]])).unwrap().origins(), vec![vec![1, 0]]);
        let i = set(&[&[2, 0], &[0, 2]]).intersect(&set(&[&[1, 1]])).unwrap();
        assert_eq!(i.origins(), vec![vec![1, 2], vec![2, 1]]);
        assert!(set(&[&[1]]).union(&set(&[&[1, 1]])).is_err());
    }
}
