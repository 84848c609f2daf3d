//! Dense complex vectors with bra-ket conventions.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dense vector over the complex numbers.
///
/// The inner product is conjugate-linear in the *first* argument, so
/// `u.inner(&v)` is ⟨u|v⟩. Equality testing is tolerance-based.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVec {
    entries: Vec<Complex64>,
}

impl ComplexVec {
    pub fn new(entries: Vec<Complex64>) -> Self {
        debug_assert!(entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        ComplexVec { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexVec { entries: vec![Complex64::ZERO; dim] }
    }

    /// The standard basis vector e_i.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[i] = Complex64::ONE;
        v
    }

    /// Builds a vector from real amplitudes.
    pub fn from_reals(entries: &[f64]) -> Self {
        ComplexVec { entries: entries.iter().map(|&re| Complex64::new(re, 0.0)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    /// ⟨self|other⟩ = Σ conj(self_j) · other_j.
    pub fn inner(&self, other: &ComplexVec) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ComplexVec {
        ComplexVec { entries: self.entries.iter().map(|z| z.conj()).collect() }
    }

    /// Kronecker product, row-major: entry `i·dim(other) + j` is `self_i · other_j`.
    pub fn tensor(&self, other: &ComplexVec) -> ComplexVec {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        ComplexVec { entries }
    }

    pub fn scale(&self, c: Complex64) -> ComplexVec {
        ComplexVec { entries: self.entries.iter().map(|z| z * c).collect() }
    }

    pub fn add(&self, other: &ComplexVec) -> Result<ComplexVec> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(ComplexVec {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ComplexVec) -> Result<ComplexVec> {
        self.add(&other.scale(-Complex64::ONE))
    }

    /// Rescales to unit norm.
    pub fn normalized(&self) -> ComplexVec {
        self.scale(Complex64::new(1.0 / self.norm(), 0.0))
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_deviation(&self, other: &ComplexVec) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise equality within `tol`.
    pub fn approx_eq(&self, other: &ComplexVec, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_deviation(other) < tol
    }

    /// Equality up to a global phase: |⟨self|other⟩| ≈ ‖self‖·‖other‖ ≈ 1.
    pub fn matches_up_to_phase(&self, other: &ComplexVec, tol: f64) -> bool {
        self.dim() == other.dim()
            && (self.inner(other).unwrap().norm() - 1.0).abs() < tol
    }
}

/// The maximally entangled state (1/√n) Σ_j e_j ⊗ e_j in dimension n².
///
/// Summing v_b ⊗ conj(v_b) over any orthonormal basis {v_b} of Cⁿ yields
/// this same vector, which is what makes it a basis-independent resource.
pub fn maximally_entangled(n: usize) -> ComplexVec {
    let mut v = ComplexVec::zeros(n * n);
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    for j in 0..n {
        v.entries[j * n + j] = amp;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TOL;

    #[test]
    fn unit_basis_inner_products() {
        let e0 = ComplexVec::basis(2, 0);
        let e1 = ComplexVec::basis(2, 1);
        assert_eq!(e0.inner(&e0).unwrap(), Complex64::ONE);
        assert_eq!(e0.inner(&e1).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn inner_is_conjugate_linear_in_first_slot() {
        let u = ComplexVec::new(vec![Complex64::new(0.0, 1.0), Complex64::ZERO]);
        let v = ComplexVec::basis(2, 0);
        // ⟨iu|v⟩ = -i⟨u|v⟩ convention: ⟨(i,0)|(1,0)⟩ = conj(i)·1 = -i
        assert_eq!(u.inner(&v).unwrap(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn conjugation_is_entrywise_involution() {
        let v = ComplexVec::new(vec![Complex64::new(0.0, 1.0), Complex64::ZERO]);
        assert_eq!(v.conj().entry(0), Complex64::new(0.0, -1.0));
        assert!(v.conj().conj().approx_eq(&v, TOL));
        let r = ComplexVec::from_reals(&[0.25, -3.0]);
        assert!(r.conj().approx_eq(&r, TOL));
    }

    #[test]
    fn tensor_index_convention() {
        let e0 = ComplexVec::basis(2, 0);
        let e1 = ComplexVec::basis(2, 1);
        assert!(e0.tensor(&e0).approx_eq(&ComplexVec::basis(4, 0), TOL));
        assert!(e1.tensor(&e0).approx_eq(&ComplexVec::basis(4, 2), TOL));
    }

    #[test]
    fn tensor_associativity_flattens() {
        let u = ComplexVec::new(vec![Complex64::new(1.0, 2.0), Complex64::new(0.5, -1.0)]);
        let v = ComplexVec::new(vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 3.0)]);
        let w = ComplexVec::new(vec![Complex64::new(2.0, 2.0), Complex64::new(1.0, 0.0)]);
        let left = u.tensor(&v).tensor(&w);
        let right = u.tensor(&v.tensor(&w));
        assert_eq!(left.entries(), right.entries());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let u = ComplexVec::zeros(2);
        let v = ComplexVec::zeros(3);
        assert!(matches!(u.inner(&v), Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn entangled_state_is_unit_norm() {
        for n in [2, 3, 5, 9] {
            let phi = maximally_entangled(n);
            assert!((phi.norm() - 1.0).abs() < TOL);
        }
    }
}
