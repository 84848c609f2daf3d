//! Complete families of q+1 mutually unbiased bases of C^q.
//!
//! Basis 0 is always the computational basis. For q = 2 the family is the
//! σ_z, σ_x, σ_y eigenbasis triple. For odd prime powers basis a holds the
//! vectors with entries ω_p^tr(α·x² + β·x)/√q over the field elements x,
//! where α enumerates the quadratic coefficient (a = q giving α = 0, the
//! Fourier-type basis) and β the linear one. Even prime powers above 2 are
//! not supported.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::algebra::{ComplexVec, FiniteField};
use crate::error::{Error, Result};

/// q+1 mutually unbiased orthonormal bases of C^q.
#[derive(Debug, Clone)]
pub struct MubFamily {
    q: usize,
    bases: Vec<Vec<ComplexVec>>,
}

/// Worst deviations found while checking a family.
#[derive(Debug, Clone, Copy)]
pub struct MubReport {
    /// max |⟨v_{a,b}|v_{a,b'}⟩ − δ_{b,b'}| over same-basis pairs
    pub orthonormality_deviation: f64,
    /// max ||⟨v_{a,b}|v_{a',b'}⟩|² − 1/q| over cross-basis pairs
    pub unbiasedness_deviation: f64,
    /// (a, b, a', b') attaining the worst deviation
    pub worst_pair: (usize, usize, usize, usize),
}

impl MubReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.orthonormality_deviation < tol && self.unbiasedness_deviation < tol
    }
}

impl MubFamily {
    /// Builds the canonical family for a supported dimension.
    pub fn build(q: u64) -> Result<MubFamily> {
        if q == 2 {
            return Ok(MubFamily { q: 2, bases: qubit_bases() });
        }
        let field = FiniteField::from_order(q)?;
        if field.characteristic() == 2 {
            return Err(Error::UnsupportedMubDimension(q));
        }
        let n = q as usize;
        let p = field.characteristic();
        let omega = |t: u64| Complex64::from_polar(1.0, TAU * t as f64 / p as f64);
        let amp = 1.0 / (n as f64).sqrt();
        let elems = field.elements();

        let mut bases = Vec::with_capacity(n + 1);
        bases.push((0..n).map(|j| ComplexVec::basis(n, j)).collect::<Vec<_>>());
        for a in 1..=n {
            let alpha = &elems[a % n];
            let mut basis = Vec::with_capacity(n);
            for beta in &elems {
                let entries = elems
                    .iter()
                    .map(|x| {
                        let quad = alpha.mul(x)?.mul(x)?;
                        let lin = beta.mul(x)?;
                        Ok(omega(quad.add(&lin)?.trace()) * amp)
                    })
                    .collect::<Result<Vec<_>>>()?;
                basis.push(ComplexVec::new(entries));
            }
            bases.push(basis);
        }
        Ok(MubFamily { q: n, bases })
    }

    pub fn from_bases(q: usize, bases: Vec<Vec<ComplexVec>>) -> Result<MubFamily> {
        if bases.len() != q + 1 || bases.iter().any(|b| b.len() != q || b.iter().any(|v| v.dim() != q)) {
            return Err(Error::WrongBasisCount { expected: q + 1, got: bases.len(), dim: q });
        }
        Ok(MubFamily { q, bases })
    }

    /// Dimension q (the family holds q+1 bases).
    pub fn dim(&self) -> usize {
        self.q
    }

    pub fn bases(&self) -> &[Vec<ComplexVec>] {
        &self.bases
    }

    pub fn vector(&self, a: usize, b: usize) -> &ComplexVec {
        &self.bases[a][b]
    }

    /// Measures worst-case orthonormality and unbiasedness deviations.
    pub fn verify(&self) -> MubReport {
        let q = self.q as f64;
        let mut report = MubReport {
            orthonormality_deviation: 0.0,
            unbiasedness_deviation: 0.0,
            worst_pair: (0, 0, 0, 0),
        };
        let mut overall = 0.0f64;
        for (a, basis) in self.bases.iter().enumerate() {
            for (b, u) in basis.iter().enumerate() {
                for (a2, basis2) in self.bases.iter().enumerate().skip(a) {
                    for (b2, w) in basis2.iter().enumerate() {
                        if a == a2 && b2 < b {
                            continue;
                        }
                        let ip = u.inner(w).unwrap();
                        let dev = if a == a2 {
                            let expected = if b == b2 { 1.0 } else { 0.0 };
                            let dev = (ip - expected).norm();
                            report.orthonormality_deviation =
                                report.orthonormality_deviation.max(dev);
                            dev
                        } else {
                            let dev = (ip.norm_sqr() - 1.0 / q).abs();
                            report.unbiasedness_deviation =
                                report.unbiasedness_deviation.max(dev);
                            dev
                        };
                        if dev > overall {
                            overall = dev;
                            report.worst_pair = (a, b, a2, b2);
                        }
                    }
                }
            }
        }
        report
    }

    /// The entangled resource state (1/√q) Σ_b v_{a,b} ⊗ conj(v_{a,b})
    /// assembled from basis `a`.
    pub fn entangled_state(&self, a: usize) -> ComplexVec {
        let amp = Complex64::new(1.0 / (self.q as f64).sqrt(), 0.0);
        let mut sum = ComplexVec::zeros(self.q * self.q);
        for v in &self.bases[a] {
            sum = sum.add(&v.tensor(&v.conj()).scale(amp)).unwrap();
        }
        sum
    }
}

/// σ_z, σ_x, σ_y eigenbases of C².
fn qubit_bases() -> Vec<Vec<ComplexVec>> {
    let s = 1.0 / 2f64.sqrt();
    let i = Complex64::I;
    vec![
        vec![ComplexVec::basis(2, 0), ComplexVec::basis(2, 1)],
        vec![
            ComplexVec::from_reals(&[s, s]),
            ComplexVec::from_reals(&[s, -s]),
        ],
        vec![
            ComplexVec::new(vec![Complex64::new(s, 0.0), i * s]),
            ComplexVec::new(vec![Complex64::new(s, 0.0), -i * s]),
        ],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::maximally_entangled;
    use crate::TOL;

    #[test]
    fn qubit_family_is_the_pauli_triple() {
        let fam = MubFamily::build(2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!(fam.vector(0, 0).approx_eq(&ComplexVec::basis(2, 0), TOL));
        assert!(fam.vector(1, 0).approx_eq(&ComplexVec::from_reals(&[s, s]), TOL));
        assert!(fam.vector(1, 1).approx_eq(&ComplexVec::from_reals(&[s, -s]), TOL));
        assert!(fam
            .vector(2, 0)
            .approx_eq(&ComplexVec::new(vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)]), TOL));
        let report = fam.verify();
        assert!(report.passes(1e-12), "{report:?}");
        // cross-basis overlap 1/2 exactly
        let ip = fam.vector(0, 0).inner(fam.vector(1, 0)).unwrap();
        assert!((ip.norm_sqr() - 0.5).abs() < TOL);
    }

    #[test]
    fn prime_dimensions_verify() {
        for q in [3u64, 5, 7, 11, 13] {
            let fam = MubFamily::build(q).unwrap();
            assert_eq!(fam.bases().len(), q as usize + 1);
            let report = fam.verify();
            assert!(report.passes(1e-12), "q={q}: {report:?}");
        }
    }

    #[test]
    fn prime_power_dimensions_verify() {
        for q in [9u64, 25, 27, 49] {
            let fam = MubFamily::build(q).unwrap();
            let report = fam.verify();
            assert!(report.passes(TOL), "q={q}: {report:?}");
        }
    }

    #[test]
    fn dimension_81_spot_check() {
        let fam = MubFamily::build(81).unwrap();
        assert_eq!(fam.bases().len(), 82);
        for a in [0usize, 1, 40, 81] {
            for b in [0usize, 1, 80] {
                let u = fam.vector(a, b);
                assert!((u.norm() - 1.0).abs() < TOL);
                for b2 in 0..81 {
                    if b2 != b {
                        assert!(u.inner(fam.vector(a, b2)).unwrap().norm() < TOL);
                    }
                }
                for a2 in [0usize, 2, 41] {
                    if a == a2 {
                        continue;
                    }
                    let ip = u.inner(fam.vector(a2, b)).unwrap();
                    assert!((ip.norm_sqr() - 1.0 / 81.0).abs() < TOL);
                }
            }
        }
    }

    #[test]
    fn even_prime_powers_are_rejected() {
        assert_eq!(MubFamily::build(4).unwrap_err(), Error::UnsupportedMubDimension(4));
        assert_eq!(MubFamily::build(8).unwrap_err(), Error::UnsupportedMubDimension(8));
        assert!(MubFamily::build(6).is_err());
    }

    #[test]
    fn duplicated_basis_fails_verification() {
        let fam = MubFamily::build(3).unwrap();
        let mut bases = fam.bases().to_vec();
        bases[1] = bases[0].clone();
        let broken = MubFamily::from_bases(3, bases).unwrap();
        let report = broken.verify();
        assert!(!report.passes(TOL));
        assert_eq!((report.worst_pair.0, report.worst_pair.2), (0, 1));
    }

    #[test]
    fn entangled_state_is_basis_independent() {
        for q in [2u64, 3, 5, 7, 9] {
            let fam = MubFamily::build(q).unwrap();
            let reference = maximally_entangled(q as usize);
            for a in 0..fam.bases().len() {
                let phi = fam.entangled_state(a);
                assert!(
                    phi.approx_eq(&reference, TOL),
                    "q={q}, basis {a}: max deviation {}",
                    phi.max_deviation(&reference)
                );
            }
        }
    }
}
