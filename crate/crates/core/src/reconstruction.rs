//! Measurement bases that pin the returned block down to an incident point.
//!
//! Two constructions: the function-indexed basis ψ_f = −φ + γ_f over a MUB
//! family, and the point-indexed basis ψ_p = −α·Σ_{B∈C}|B⟩ + β·Σ_{B∋p}|B⟩
//! over any realization of an affine design, with α = (r−1)√k/v and
//! β = 1/√k. Both are orthonormal, and an outcome has nonzero amplitude on a
//! returned block vector exactly when it is incident with that block.

use num_complex::Complex64;

use crate::algebra::{maximally_entangled, ComplexVec};
use crate::error::{Error, Result};
use crate::functions::CollisionFunction;
use crate::mub::MubFamily;
use crate::realization::Realization;
use crate::TOL;

/// What the basis outcomes mean.
#[derive(Debug, Clone)]
pub enum BasisIndex {
    /// Outcome i is the design point i.
    Points(usize),
    /// Outcome i is the i-th collision function.
    Functions(Vec<CollisionFunction>),
}

/// An orthonormal basis whose outcomes identify points or functions.
#[derive(Debug, Clone)]
pub struct ReconstructionBasis {
    vectors: Vec<ComplexVec>,
    index: BasisIndex,
    /// Coefficients of the point construction, when applicable.
    coefficients: Option<(f64, f64)>,
}

/// Magnitude table of ⟨ψ_i|B⟩ over every (outcome, block) pair.
#[derive(Debug, Clone)]
pub struct SupportReport {
    pub magnitudes: Vec<Vec<f64>>,
    /// The common nonzero magnitude 1/√k.
    pub expected_magnitude: f64,
    pub max_deviation: f64,
}

/// Largest deviation of a Gram matrix from the identity.
fn gram_deviation(vectors: &[ComplexVec]) -> (f64, (usize, usize)) {
    let mut worst = (0.0f64, (0, 0));
    for i in 0..vectors.len() {
        for j in i..vectors.len() {
            let expected = if i == j { Complex64::ONE } else { Complex64::ZERO };
            let dev = (vectors[i].inner(&vectors[j]).unwrap() - expected).norm();
            if dev > worst.0 {
                worst = (dev, (i, j));
            }
        }
    }
    worst
}

/// ψ_f = −φ + (1/√n) Σ_{a=0}^{n} v_{a,f(a)} ⊗ conj(v_{a,f(a)}) for any
/// function f : {0,…,n} → {1,…,n}, not necessarily from a one-collision
/// family.
pub fn psi_vector(mubs: &MubFamily, f: &CollisionFunction) -> Result<ComplexVec> {
    let n = mubs.dim();
    if f.n() != n {
        return Err(Error::DimensionMismatch(f.n(), n));
    }
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    // φ from the computational basis; identical for every basis of the family
    let mut psi = maximally_entangled(n).scale(-Complex64::ONE);
    for a in 0..=n {
        let v = mubs.vector(a, f.value(a) - 1);
        psi = psi.add(&v.tensor(&v.conj()).scale(amp))?;
    }
    Ok(psi)
}

/// Numerically computes ⟨ψ_f|ψ_g⟩ and checks it against the collision
/// formula (|Δ_{f,g}| − 1)/n, which holds for arbitrary function pairs.
pub fn inner_product_formula_check(
    mubs: &MubFamily,
    f: &CollisionFunction,
    g: &CollisionFunction,
) -> Result<Complex64> {
    let computed = psi_vector(mubs, f)?.inner(&psi_vector(mubs, g)?)?;
    let delta = f.collision_set(g)?.len();
    let formula = (delta as f64 - 1.0) / mubs.dim() as f64;
    if (computed - Complex64::new(formula, 0.0)).norm() >= TOL {
        return Err(Error::ParameterRelation {
            relation: format!(
                "⟨ψ_f|ψ_g⟩ = {computed} but (|Δ|−1)/n = {formula} for |Δ| = {delta}"
            ),
        });
    }
    Ok(computed)
}

/// The function-indexed orthonormal basis of C^(n²) built from a verified
/// one-collision family of n² functions.
pub fn psi_function_basis(
    mubs: &MubFamily,
    fs: &[CollisionFunction],
) -> Result<ReconstructionBasis> {
    let n = mubs.dim();
    if fs.len() != n * n {
        return Err(Error::WrongFunctionCount { expected: n * n, got: fs.len() });
    }
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            let delta = fs[i].collision_set(&fs[j])?.len();
            if delta != 1 {
                return Err(Error::CollisionCount { pair: (i, j), got: delta });
            }
        }
    }
    let vectors = fs
        .iter()
        .map(|f| psi_vector(mubs, f))
        .collect::<Result<Vec<_>>>()?;
    let (dev, pair) = gram_deviation(&vectors);
    if dev >= TOL {
        return Err(Error::NotOrthonormal { pair, deviation: dev });
    }
    Ok(ReconstructionBasis {
        vectors,
        index: BasisIndex::Functions(fs.to_vec()),
        coefficients: None,
    })
}

/// Raw point vectors −α·Σ_{B∈C}|B⟩ + β·Σ_{B∋p}|B⟩ for arbitrary
/// coefficients; the orthonormal basis uses [`point_coefficients`].
pub fn point_vectors(real: &Realization, class: usize, alpha: f64, beta: f64) -> Result<Vec<ComplexVec>> {
    let class_sum = real.class_sum(class)?;
    let neg_alpha = Complex64::new(-alpha, 0.0);
    let beta = Complex64::new(beta, 0.0);
    (0..real.design().v())
        .map(|p| {
            let mut psi = class_sum.scale(neg_alpha);
            for (bi, block) in real.design().blocks().iter().enumerate() {
                if block.binary_search(&p).is_ok() {
                    psi = psi.add(&real.vector(bi).scale(beta))?;
                }
            }
            Ok(psi)
        })
        .collect()
}

/// The canonical coefficients α = (r−1)√k/v and β = 1/√k.
pub fn point_coefficients(real: &Realization) -> (f64, f64) {
    let params = real.design().params();
    let sqrt_k = (params.k as f64).sqrt();
    ((params.r as f64 - 1.0) * sqrt_k / params.v as f64, 1.0 / sqrt_k)
}

/// The point-indexed orthonormal basis of C^v associated with a realization.
///
/// The class sum is the same vector for every parallel class, so `class`
/// cannot change the output; it is a parameter so that the independence can
/// be exercised rather than assumed.
pub fn psi_point_basis(real: &Realization, class: usize) -> Result<ReconstructionBasis> {
    let (alpha, beta) = point_coefficients(real);
    let vectors = point_vectors(real, class, alpha, beta)?;
    let (dev, pair) = gram_deviation(&vectors);
    if dev >= TOL {
        return Err(Error::NotOrthonormal { pair, deviation: dev });
    }
    Ok(ReconstructionBasis {
        vectors,
        index: BasisIndex::Points(real.design().v()),
        coefficients: Some((alpha, beta)),
    })
}

impl ReconstructionBasis {
    /// Wraps externally supplied vectors after re-checking orthonormality.
    pub fn from_parts(
        vectors: Vec<ComplexVec>,
        index: BasisIndex,
        coefficients: Option<(f64, f64)>,
    ) -> Result<ReconstructionBasis> {
        let (dev, pair) = gram_deviation(&vectors);
        if dev >= TOL {
            return Err(Error::NotOrthonormal { pair, deviation: dev });
        }
        Ok(ReconstructionBasis { vectors, index, coefficients })
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[ComplexVec] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &ComplexVec {
        &self.vectors[i]
    }

    pub fn index(&self) -> &BasisIndex {
        &self.index
    }

    /// (α, β) when built by the point construction.
    pub fn coefficients(&self) -> Option<(f64, f64)> {
        self.coefficients
    }

    /// Whether outcome `i` is incident with `block`: point membership for
    /// point bases, f(a) = b for function bases (a the block's class, b its
    /// one-based position).
    pub fn incident(&self, i: usize, real: &Realization, block: usize) -> bool {
        match &self.index {
            BasisIndex::Points(_) => real.design().block_contains(block, i),
            BasisIndex::Functions(fs) => {
                let class = real.resolution().class_of(block).expect("block in resolution");
                let pos = real.resolution().position_in_class(block).expect("block in resolution");
                fs[i].value(class) == pos + 1
            }
        }
    }

    /// Tabulates |⟨ψ_i|B⟩| over all outcomes and blocks and enforces the
    /// support pattern: magnitude 1/√k on incident pairs, zero otherwise.
    pub fn extraction_support(&self, real: &Realization) -> Result<SupportReport> {
        if self.dim() != real.dim() {
            return Err(Error::DimensionMismatch(self.dim(), real.dim()));
        }
        let expected = 1.0 / (real.design().params().k as f64).sqrt();
        let mut magnitudes = Vec::with_capacity(self.len());
        let mut max_deviation = 0.0f64;
        for i in 0..self.len() {
            let mut row = Vec::with_capacity(real.vectors().len());
            for block in 0..real.vectors().len() {
                let mag = self.vectors[i].inner(real.vector(block))?.norm();
                let dev = if self.incident(i, real, block) {
                    (mag - expected).abs()
                } else {
                    mag
                };
                if dev >= TOL {
                    return Err(Error::SupportPattern { index: i, block, value: mag });
                }
                max_deviation = max_deviation.max(dev);
                row.push(mag);
            }
            magnitudes.push(row);
        }
        Ok(SupportReport { magnitudes, expected_magnitude: expected, max_deviation })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{affine_plane, hadamard_design, sylvester_hadamard};
    use crate::functions::{all_functions, functions_from_plane};

    fn plane_basis(q: u64) -> (MubFamily, Vec<CollisionFunction>, ReconstructionBasis) {
        let (plane, res) = affine_plane(q).unwrap();
        let fs = functions_from_plane(&plane, &res).unwrap();
        let mubs = MubFamily::build(q).unwrap();
        let basis = psi_function_basis(&mubs, &fs).unwrap();
        (mubs, fs, basis)
    }

    #[test]
    fn order2_probability_table() {
        let (mubs, _, basis) = plane_basis(2);
        // the returned state after the third basis (a = 2) yields outcome 1
        let v = mubs.vector(2, 0);
        let state = v.tensor(&v.conj());
        let probs: Vec<f64> = basis
            .vectors()
            .iter()
            .map(|psi| psi.inner(&state).unwrap().norm_sqr())
            .collect();
        let expected = [0.5, 0.0, 0.0, 0.5];
        for (got, want) in probs.iter().zip(expected) {
            assert!((got - want).abs() < TOL, "probs {probs:?}");
        }
    }

    #[test]
    fn collision_formula_examples() {
        let mubs = MubFamily::build(2).unwrap();
        let f = CollisionFunction::new(vec![1, 1, 1]).unwrap();
        let g = CollisionFunction::new(vec![2, 2, 2]).unwrap();
        // |Δ| = 3 with itself: (3−1)/2 = 1
        let same = inner_product_formula_check(&mubs, &f, &f).unwrap();
        assert!((same - Complex64::ONE).norm() < TOL);
        // |Δ| = 0: −1/2
        let disjoint = inner_product_formula_check(&mubs, &f, &g).unwrap();
        assert!((disjoint - Complex64::new(-0.5, 0.0)).norm() < TOL);
        // |Δ| = 1: orthogonal
        let h = CollisionFunction::new(vec![1, 2, 2]).unwrap();
        let orth = inner_product_formula_check(&mubs, &f, &h).unwrap();
        assert!(orth.norm() < TOL);
    }

    #[test]
    fn collision_formula_holds_for_all_pairs_n2() {
        let mubs = MubFamily::build(2).unwrap();
        let fs = all_functions(2);
        for f in &fs {
            for g in &fs {
                inner_product_formula_check(&mubs, f, g).unwrap();
            }
        }
    }

    #[test]
    fn function_bases_are_orthonormal() {
        for q in [2u64, 3, 5] {
            let (_, fs, basis) = plane_basis(q);
            assert_eq!(basis.len(), fs.len());
            let (dev, _) = gram_deviation(basis.vectors());
            assert!(dev < TOL, "q={q}");
        }
    }

    #[test]
    fn function_basis_rejects_bad_families() {
        let mubs = MubFamily::build(2).unwrap();
        let fs = vec![CollisionFunction::new(vec![1, 1, 1]).unwrap(); 4];
        assert!(matches!(
            psi_function_basis(&mubs, &fs).unwrap_err(),
            Error::CollisionCount { .. }
        ));
        let too_few = vec![CollisionFunction::new(vec![1, 1, 1]).unwrap()];
        assert!(matches!(
            psi_function_basis(&mubs, &too_few).unwrap_err(),
            Error::WrongFunctionCount { .. }
        ));
    }

    #[test]
    fn h8_point_basis_coefficients() {
        let real = Realization::hadamard8();
        let basis = psi_point_basis(&real, 0).unwrap();
        let (alpha, beta) = basis.coefficients().unwrap();
        assert!((alpha - 1.5).abs() < TOL);
        assert!((beta - 0.5).abs() < TOL);
        assert_eq!(basis.len(), 8);
    }

    #[test]
    fn point_basis_is_class_independent() {
        let real = Realization::hadamard8();
        let reference = psi_point_basis(&real, 0).unwrap();
        for class in 1..real.resolution().class_count() {
            let other = psi_point_basis(&real, class).unwrap();
            for (a, b) in reference.vectors().iter().zip(other.vectors()) {
                assert!(a.approx_eq(b, TOL));
            }
        }
    }

    #[test]
    fn point_bases_orthonormal_for_incidence_realizations() {
        for q in [2u64, 3, 4, 5] {
            let (design, res) = affine_plane(q).unwrap();
            let real = Realization::incidence(design, res).unwrap();
            let basis = psi_point_basis(&real, 0).unwrap();
            assert_eq!(basis.len(), real.design().v());
        }
        for k in [2u32, 3, 4] {
            let (design, res) = hadamard_design(&sylvester_hadamard(k).unwrap()).unwrap();
            let real = Realization::incidence(design, res).unwrap();
            psi_point_basis(&real, 0).unwrap();
        }
    }

    #[test]
    fn support_pattern_h8() {
        let real = Realization::hadamard8();
        let basis = psi_point_basis(&real, 0).unwrap();
        let support = basis.extraction_support(&real).unwrap();
        // k = 4: incident magnitude 1/√4 = 1/2, so probability 1/4
        assert!((support.expected_magnitude - 0.5).abs() < TOL);
        for block in 0..real.vectors().len() {
            let incident: Vec<usize> = (0..8)
                .filter(|&p| real.design().block_contains(block, p))
                .collect();
            assert_eq!(incident.len(), 4);
            let total: f64 = (0..8)
                .map(|p| support.magnitudes[p][block].powi(2))
                .sum();
            assert!((total - 1.0).abs() < TOL, "completeness on block {block}");
        }
    }

    #[test]
    fn support_pattern_function_basis() {
        let (mubs, fs, basis) = plane_basis(2);
        let (plane, res) = affine_plane(2).unwrap();
        let real = Realization::from_mub(plane, res, mubs).unwrap();
        let support = basis.extraction_support(&real).unwrap();
        // k = n = 2: incident magnitude 1/√2
        assert!((support.expected_magnitude - 1.0 / 2f64.sqrt()).abs() < TOL);
        // each block sees exactly n incident functions
        for block in 0..real.vectors().len() {
            let incident = (0..fs.len())
                .filter(|&i| basis.incident(i, &real, block))
                .count();
            assert_eq!(incident, 2);
        }
    }

    #[test]
    fn point_and_function_bases_agree_for_order2() {
        let (mubs, _, fbasis) = plane_basis(2);
        let (plane, res) = affine_plane(2).unwrap();
        let real = Realization::from_mub(plane, res, mubs).unwrap();
        let pbasis = psi_point_basis(&real, 0).unwrap();
        // match each point vector to a function vector by maximal overlap
        let mut matched = [false; 4];
        for psi_p in pbasis.vectors() {
            let mut best = (0usize, 0.0f64);
            for (j, psi_f) in fbasis.vectors().iter().enumerate() {
                let overlap = psi_p.inner(psi_f).unwrap().norm();
                if overlap > best.1 {
                    best = (j, overlap);
                }
            }
            assert!((best.1 - 1.0).abs() < TOL, "no matching function vector");
            assert!(psi_p.approx_eq(&fbasis.vectors()[best.0], TOL), "entrywise match");
            assert!(!matched[best.0]);
            matched[best.0] = true;
        }
    }

    /// The larger root (r+1)√k/v also solves the orthonormality system, but
    /// it inverts the support pattern: amplitudes vanish exactly on incident
    /// pairs, which makes it useless for reconstruction.
    #[test]
    fn plus_root_is_orthonormal_but_inverts_support() {
        let real = Realization::hadamard8();
        let params = real.design().params();
        let alpha_plus = (params.r as f64 + 1.0) * (params.k as f64).sqrt() / params.v as f64;
        let beta = 1.0 / (params.k as f64).sqrt();
        let vectors = point_vectors(&real, 0, alpha_plus, beta).unwrap();
        let (dev, _) = gram_deviation(&vectors);
        assert!(dev < TOL, "plus root still yields an orthonormal basis");
        for (p, psi) in vectors.iter().enumerate() {
            for block in 0..real.vectors().len() {
                let mag = psi.inner(real.vector(block)).unwrap().norm();
                if real.design().block_contains(block, p) {
                    assert!(mag < TOL, "incident amplitude should vanish for the plus root");
                } else {
                    assert!(mag > 0.1, "non-incident amplitude should be bounded away from 0");
                }
            }
        }
    }
}
