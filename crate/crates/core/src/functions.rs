//! Collision functions derived from the lines of an affine plane.
//!
//! A plane of order n yields n² functions {0,…,n} → {1,…,n}, one per
//! non-vertical line: the value at 0 names the line's parallel class and the
//! value at a ≥ 1 records where the line crosses the a-th vertical. Any two
//! distinct functions in the family agree at exactly one input, which is the
//! combinatorial fact that turns them into an orthonormal measurement basis.

use crate::designs::{IncidenceDesign, Resolution};
use crate::error::{Error, Result};

/// A total function {0,…,n} → {1,…,n} stored as a value table, optionally
/// labeled with the (class, line) it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionFunction {
    values: Vec<usize>,
    provenance: Option<(usize, usize)>,
}

impl CollisionFunction {
    /// Builds a function from its value table over inputs 0..=n.
    pub fn new(values: Vec<usize>) -> Result<CollisionFunction> {
        let n = values.len().saturating_sub(1);
        if n == 0 || values.iter().any(|&v| v < 1 || v > n) {
            return Err(Error::BadArtifact(format!(
                "function table {values:?} is not a map from {{0..{n}}} to {{1..{n}}}"
            )));
        }
        Ok(CollisionFunction { values, provenance: None })
    }

    /// Number of inputs minus one: the function maps {0,…,n} → {1,…,n}.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, input: usize) -> usize {
        self.values[input]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// (class index, line position) when derived from a plane.
    pub fn provenance(&self) -> Option<(usize, usize)> {
        self.provenance
    }

    /// The collision set Δ = { x | f(x) = g(x) }.
    pub fn collision_set(&self, other: &CollisionFunction) -> Result<Vec<usize>> {
        if self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch(self.values.len(), other.values.len()));
        }
        Ok((0..self.values.len())
            .filter(|&x| self.values[x] == other.values[x])
            .collect())
    }
}

/// Derives the n² collision functions of an affine plane of order n.
///
/// Requires the resolution produced by [`crate::designs::affine_plane`]:
/// class 0 must be the verticals ℓ_x = {(x, y) | y}, in x order, with point
/// (x, y) at index x·n + y. Functions are emitted in (class, line) order.
pub fn functions_from_plane(
    plane: &IncidenceDesign,
    res: &Resolution,
) -> Result<Vec<CollisionFunction>> {
    let n = plane.params().k;
    if plane.params().lambda != 1 || plane.v() != n * n || res.class_count() != n + 1 {
        return Err(Error::BadArtifact("design is not an affine plane".into()));
    }
    for (x, &block) in res.classes()[0].iter().enumerate() {
        let expected: Vec<usize> = (x * n..(x + 1) * n).collect();
        if plane.block(block) != expected {
            return Err(Error::MissingVerticalClass);
        }
    }

    let mut out = Vec::with_capacity(n * n);
    for (class, lines) in res.classes().iter().enumerate().skip(1) {
        for (pos, &line) in lines.iter().enumerate() {
            let mut values = vec![class];
            for a in 1..=n {
                // the line meets vertical x = a−1 in exactly one point
                let y = plane
                    .block(line)
                    .iter()
                    .find(|&&p| p / n == a - 1)
                    .map(|&p| p % n)
                    .ok_or(Error::MissingVerticalClass)?;
                values.push(y + 1);
            }
            out.push(CollisionFunction { values, provenance: Some((class, pos)) });
        }
    }
    Ok(out)
}

/// Every function {0,…,n} → {1,…,n} as a value table, in lexicographic
/// order. There are n^(n+1) of them; used for exhaustive formula checks.
pub fn all_functions(n: usize) -> Vec<CollisionFunction> {
    let count = n.pow(n as u32 + 1);
    (0..count)
        .map(|code| {
            let mut c = code;
            let values = (0..=n)
                .map(|_| {
                    let v = c % n + 1;
                    c /= n;
                    v
                })
                .collect();
            CollisionFunction { values, provenance: None }
        })
        .collect()
}
