//! Arithmetic foundations: finite fields, complex vectors, and subspace counts.

mod cvec;
mod field;

pub use cvec::{maximally_entangled, ComplexVec};
pub use field::{FieldElement, FiniteField};

use crate::error::{Error, Result};

/// Gaussian binomial coefficient: the number of d-dimensional subspaces of
/// an m-dimensional vector space over a field with q elements.
///
/// Computed exactly through the integer recurrence
/// `[m d] = [m−1 d−1] + q^d · [m−1 d]`.
pub fn gaussian_binomial(m: i64, d: i64, q: u64) -> Result<u128> {
    if d < 0 || d > m {
        return Err(Error::BinomialRange { m, d });
    }
    let (m, d) = (m as usize, d as usize);
    // table[j] holds [i j] while i grows from 0 to m
    let mut table = vec![0u128; d + 1];
    table[0] = 1;
    for _ in 1..=m {
        for j in (1..=d).rev() {
            let mut pow = 1u128;
            for _ in 0..j {
                pow *= q as u128;
            }
            table[j] = table[j - 1] + pow * table[j];
        }
    }
    Ok(table[d])
}
