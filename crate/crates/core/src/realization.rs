//! Vector systems realizing a design in Hilbert space.
//!
//! A realization assigns one unit vector |B⟩ per block so that parallel
//! blocks map to orthogonal vectors while nonparallel blocks meet at the
//! exact angle ⟨B|C⟩ = k/v. Three constructions are provided: normalized
//! incidence vectors, MUB tensor vectors for affine planes, and the explicit
//! three-qubit system for the (8,14,7,4,3) Hadamard design.

use num_complex::Complex64;

use crate::algebra::ComplexVec;
use crate::designs::{hadamard_design, sylvester_hadamard, IncidenceDesign, Resolution};
use crate::error::{Error, Result};
use crate::mub::MubFamily;
use crate::TOL;

/// How the block vectors were produced; carries whatever extra structure
/// the physical measurement models need.
#[derive(Debug, Clone)]
pub enum RealizationKind {
    /// |B⟩ = incidence vector of B, scaled by 1/√k.
    Incidence,
    /// |ℓ_{a,b}⟩ = v_{a,b} ⊗ conj(v_{a,b}) from a MUB family.
    MubTensor(MubFamily),
    /// The hard-coded three-qubit system on the Hadamard design of order 8.
    ThreeQubit,
    /// Loaded from an external artifact; only the abstract model applies.
    External,
}

/// A design, a resolution, and one unit vector per block satisfying the
/// parallel/nonparallel angle constraints.
#[derive(Debug, Clone)]
pub struct Realization {
    design: IncidenceDesign,
    resolution: Resolution,
    vectors: Vec<ComplexVec>,
    kind: RealizationKind,
}

/// Worst angle deviation over all block pairs.
#[derive(Debug, Clone, Copy)]
pub struct RealizationReport {
    pub max_deviation: f64,
    pub worst_pair: (usize, usize),
}

impl RealizationReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation < tol
    }
}

impl Realization {
    /// Normalized incidence vectors in C^v. Requires an affine resolvable
    /// design; otherwise nonparallel angles would not be constant.
    pub fn incidence(design: IncidenceDesign, resolution: Resolution) -> Result<Realization> {
        let report = design.affine_resolvable_check(&resolution)?;
        if !report.all_hold() {
            return Err(Error::ParameterRelation {
                relation: "affine parameter relations fail; design admits no realization".into(),
            });
        }
        let v = design.v();
        let amp = 1.0 / (design.params().k as f64).sqrt();
        let vectors = design
            .blocks()
            .iter()
            .map(|block| {
                let mut entries = vec![0.0; v];
                for &p in block {
                    entries[p] = amp;
                }
                ComplexVec::from_reals(&entries)
            })
            .collect();
        Ok(Realization { design, resolution, vectors, kind: RealizationKind::Incidence })
    }

    /// MUB tensor realization of an affine plane of order n in C^(n²):
    /// the b-th line of class a maps to v_{a,b} ⊗ conj(v_{a,b}), with the
    /// vertical class 0 tied to the computational basis.
    pub fn from_mub(
        plane: IncidenceDesign,
        resolution: Resolution,
        mubs: MubFamily,
    ) -> Result<Realization> {
        let n = plane.params().k;
        if mubs.dim() != n {
            return Err(Error::DimensionMismatch(mubs.dim(), n));
        }
        if plane.v() != n * n || resolution.class_count() != n + 1 {
            return Err(Error::BadArtifact("design is not an affine plane".into()));
        }
        let mut vectors = vec![ComplexVec::zeros(n * n); plane.blocks().len()];
        for (a, class) in resolution.classes().iter().enumerate() {
            for (b, &block) in class.iter().enumerate() {
                let v = mubs.vector(a, b);
                vectors[block] = v.tensor(&v.conj());
            }
        }
        Ok(Realization { design: plane, resolution, vectors, kind: RealizationKind::MubTensor(mubs) })
    }

    /// The explicit three-qubit realization of the (8,14,7,4,3) design.
    /// Qubit 1 is the leftmost tensor factor, so |abc⟩ sits at index 4a+2b+c.
    pub fn hadamard8() -> Realization {
        let (design, resolution) = hadamard_design(&sylvester_hadamard(3).unwrap()).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let q = 1.0 / (2.0 * 2f64.sqrt());
        let pair = |i: usize, j: usize| {
            let mut entries = vec![0.0; 8];
            entries[i] = h;
            entries[j] = h;
            ComplexVec::from_reals(&entries)
        };
        let full = |signs: [(f64, f64); 8]| {
            ComplexVec::new(
                signs
                    .iter()
                    .map(|&(re, im)| Complex64::new(re * q, im * q))
                    .collect(),
            )
        };
        let o = (1.0, 0.0);
        let m = (-1.0, 0.0);
        let pi = (0.0, 1.0);
        let mi = (0.0, -1.0);
        let vectors = vec![
            pair(0, 3),                                    // B1+ = (|000⟩+|011⟩)/√2
            pair(5, 6),                                    // B1- = (|101⟩+|110⟩)/√2
            pair(0, 5),                                    // B2+
            pair(3, 6),                                    // B2-
            pair(0, 6),                                    // B3+
            pair(3, 5),                                    // B3-
            full([o, o, o, o, o, o, o, o]),                // B4+
            full([o, m, m, o, m, o, o, m]),                // B4-
            full([o, mi, mi, o, pi, o, o, pi]),            // B5+
            full([o, pi, pi, o, mi, o, o, mi]),            // B5-
            full([o, mi, pi, o, mi, o, o, pi]),            // B6+
            full([o, pi, mi, o, pi, o, o, mi]),            // B6-
            full([o, pi, mi, o, mi, o, o, pi]),            // B7+
            full([o, mi, pi, o, pi, o, o, mi]),            // B7-
        ];
        Realization { design, resolution, vectors, kind: RealizationKind::ThreeQubit }
    }

    /// Wraps externally supplied block vectors after checking the angle
    /// constraints against the design.
    pub fn from_vectors(
        design: IncidenceDesign,
        resolution: Resolution,
        vectors: Vec<ComplexVec>,
    ) -> Result<Realization> {
        resolution.validate(&design)?;
        if vectors.len() != design.blocks().len() {
            return Err(Error::DimensionMismatch(vectors.len(), design.blocks().len()));
        }
        let real = Realization { design, resolution, vectors, kind: RealizationKind::External };
        let report = real.verify();
        if !report.passes(TOL) {
            return Err(Error::AngleConstraint {
                pair: report.worst_pair,
                expected: real.design.params().k as f64 / real.design.v() as f64,
                deviation: report.max_deviation,
            });
        }
        Ok(real)
    }

    pub fn design(&self) -> &IncidenceDesign {
        &self.design
    }

    pub fn resolution(&self) -> &Resolution {
        &self.resolution
    }

    /// Ambient Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn vectors(&self) -> &[ComplexVec] {
        &self.vectors
    }

    pub fn vector(&self, block: usize) -> &ComplexVec {
        &self.vectors[block]
    }

    pub fn kind(&self) -> &RealizationKind {
        &self.kind
    }

    /// Checks ⟨B|C⟩ = δ_{B,C} for parallel and exactly k/v for nonparallel
    /// pairs; reports the worst deviation and where it occurs.
    pub fn verify(&self) -> RealizationReport {
        let class_of = self.resolution.class_of_blocks(self.vectors.len());
        let angle = self.design.params().k as f64 / self.design.v() as f64;
        let mut report = RealizationReport { max_deviation: 0.0, worst_pair: (0, 0) };
        for i in 0..self.vectors.len() {
            for j in i..self.vectors.len() {
                let expected = if class_of[i] == class_of[j] {
                    if i == j {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    angle
                };
                let dev = (self.vectors[i].inner(&self.vectors[j]).unwrap()
                    - Complex64::new(expected, 0.0))
                .norm();
                if dev > report.max_deviation {
                    report.max_deviation = dev;
                    report.worst_pair = (i, j);
                }
            }
        }
        report
    }

    /// Σ_{B ∈ class} |B⟩, the unnormalized class sum.
    pub fn class_sum(&self, class: usize) -> Result<ComplexVec> {
        let classes = self.resolution.classes();
        if class >= classes.len() {
            return Err(Error::ClassOutOfRange(class, classes.len()));
        }
        let mut sum = ComplexVec::zeros(self.dim());
        for &b in &classes[class] {
            sum = sum.add(&self.vectors[b])?;
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::affine_plane;

    #[test]
    fn incidence_realization_of_the_order2_plane() {
        let (design, res) = affine_plane(2).unwrap();
        let real = Realization::incidence(design, res).unwrap();
        assert_eq!(real.dim(), 4);
        assert_eq!(real.vectors().len(), 6);
        // nonparallel: k/v = 2/4
        let ip = real.vector(0).inner(real.vector(2)).unwrap();
        assert!((ip - Complex64::new(0.5, 0.0)).norm() < TOL);
        // parallel: disjoint supports
        assert!(real.vector(0).inner(real.vector(1)).unwrap().norm() < TOL);
        assert!(real.verify().passes(TOL));
    }

    #[test]
    fn incidence_realization_of_h8() {
        let (design, res) = hadamard_design(&sylvester_hadamard(3).unwrap()).unwrap();
        let real = Realization::incidence(design, res).unwrap();
        assert_eq!(real.dim(), 8);
        assert_eq!(real.vectors().len(), 14);
        let ip = real.vector(0).inner(real.vector(2)).unwrap();
        assert!((ip - Complex64::new(0.5, 0.0)).norm() < TOL);
        assert!(real.verify().passes(TOL));
    }

    #[test]
    fn incidence_rejects_non_affine_designs() {
        // 1-factorization of K6 is resolvable but not affine
        let mut blocks = Vec::new();
        let mut classes = Vec::new();
        for round in 0..5usize {
            let others: Vec<usize> = (0..5).map(|i| (round + i) % 5).collect();
            let class_start = blocks.len();
            blocks.push(vec![5, others[0]]);
            blocks.push(vec![others[1], others[4]]);
            blocks.push(vec![others[2], others[3]]);
            classes.push(vec![class_start, class_start + 1, class_start + 2]);
        }
        let design = IncidenceDesign::verify(6, &blocks).unwrap();
        let res = Resolution::new(classes);
        assert!(Realization::incidence(design, res).is_err());
    }

    #[test]
    fn mub_realization_angles() {
        for q in [2u64, 3] {
            let n = q as usize;
            let (plane, res) = affine_plane(q).unwrap();
            let mubs = MubFamily::build(q).unwrap();
            let real = Realization::from_mub(plane, res, mubs).unwrap();
            assert_eq!(real.dim(), n * n);
            let report = real.verify();
            assert!(report.passes(TOL), "q={q}: {report:?}");
        }
    }

    #[test]
    fn mub_realization_rejects_mismatched_dimension() {
        let (plane, res) = affine_plane(3).unwrap();
        let mubs = MubFamily::build(2).unwrap();
        assert!(Realization::from_mub(plane, res, mubs).is_err());
    }

    #[test]
    fn hadamard8_realization_satisfies_all_angles() {
        let real = Realization::hadamard8();
        for v in real.vectors() {
            assert!((v.norm() - 1.0).abs() < TOL);
        }
        // parallel pairs vanish
        assert!(real.vector(6).inner(real.vector(7)).unwrap().norm() < TOL); // ⟨B4+|B4-⟩
        // nonparallel pairs equal 1/2 exactly
        let ip = real.vector(0).inner(real.vector(8)).unwrap(); // ⟨B1+|B5+⟩
        assert!((ip - Complex64::new(0.5, 0.0)).norm() < TOL);
        let report = real.verify();
        assert!(report.passes(TOL), "{report:?}");
    }

    #[test]
    fn sign_flip_breaks_the_angle_constraint() {
        let mut real = Realization::hadamard8();
        real.vectors[0] = real.vectors[0].scale(-Complex64::ONE);
        let report = real.verify();
        // ⟨B1+|B2+⟩ becomes −1/2 ≠ 1/2
        assert!(!report.passes(TOL));
        assert!(report.max_deviation > 0.9);
    }

    #[test]
    fn class_sums_agree_across_classes() {
        let real = Realization::hadamard8();
        let first = real.class_sum(0).unwrap();
        for c in 1..real.resolution().class_count() {
            let other = real.class_sum(c).unwrap();
            assert!(first.approx_eq(&other, TOL), "class {c} diverges");
        }
        // and the normalized sum is the advertised three-qubit state
        let phi = first.normalized();
        let expected = ComplexVec::from_reals(&[0.5, 0.0, 0.0, 0.5, 0.0, 0.5, 0.5, 0.0]);
        assert!(phi.approx_eq(&expected, TOL));
    }

    #[test]
    fn normalized_class_sums_have_unit_mutual_overlap() {
        let configs: Vec<Realization> = vec![
            Realization::incidence(affine_plane(3).unwrap().0, affine_plane(3).unwrap().1).unwrap(),
            Realization::from_mub(
                affine_plane(3).unwrap().0,
                affine_plane(3).unwrap().1,
                MubFamily::build(3).unwrap(),
            )
            .unwrap(),
            Realization::hadamard8(),
        ];
        for real in &configs {
            for c1 in 0..real.resolution().class_count() {
                for c2 in 0..real.resolution().class_count() {
                    let phi1 = real.class_sum(c1).unwrap().normalized();
                    let phi2 = real.class_sum(c2).unwrap().normalized();
                    let ip = phi1.inner(&phi2).unwrap();
                    assert!((ip - Complex64::ONE).norm() < TOL);
                }
            }
        }
    }
}
