//! JSON wire formats for designs, MUB families, realizations, and bases.
//!
//! Complex entries are `[re, im]` pairs. Every `*_from_json` re-verifies the
//! parsed object, so a round-trip through these functions cannot smuggle in
//! an invalid artifact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::ComplexVec;
use crate::designs::{DesignParams, IncidenceDesign, Resolution};
use crate::error::{Error, Result};
use crate::mub::MubFamily;
use crate::realization::Realization;
use crate::reconstruction::{BasisIndex, ReconstructionBasis};
use crate::TOL;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsJson {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

impl From<DesignParams> for ParamsJson {
    fn from(p: DesignParams) -> Self {
        ParamsJson { v: p.v, b: p.b, r: p.r, k: p.k, lambda: p.lambda }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignJson {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsJson>,
    /// One-indexed (x, y) labels for the points of an affine plane, in
    /// point-index order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_xy: Option<Vec<[u64; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MubJson {
    pub q: usize,
    pub bases: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealizationJson {
    #[serde(flatten)]
    pub design: DesignJson,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisJson {
    #[serde(flatten)]
    pub design: DesignJson,
    pub vectors: Vec<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// First element is the index kind, "point" or "function"; the rest are
    /// the outcome labels (point numbers or function value tables).
    pub index: Vec<serde_json::Value>,
}

fn encode_vec(v: &ComplexVec) -> Vec<[f64; 2]> {
    v.entries().iter().map(|z| [z.re, z.im]).collect()
}

fn decode_vec(entries: &[[f64; 2]]) -> ComplexVec {
    ComplexVec::new(entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
}

/// Serializable form of a verified design, optionally with its resolution
/// and plane point labels.
pub fn design_json(
    design: &IncidenceDesign,
    res: Option<&Resolution>,
    plane_order: Option<u64>,
) -> DesignJson {
    let points_xy = plane_order.map(|q| {
        (0..design.v() as u64)
            .map(|p| [p / q + 1, p % q + 1])
            .collect()
    });
    DesignJson {
        v: design.v(),
        blocks: design.blocks().to_vec(),
        classes: res.map(|r| r.classes().to_vec()),
        params: Some(design.params().into()),
        points_xy,
    }
}

/// Parses and re-verifies a design; the resolution is validated when present.
pub fn design_from_json(raw: &str) -> Result<(IncidenceDesign, Option<Resolution>)> {
    let parsed: DesignJson =
        serde_json::from_str(raw).map_err(|e| Error::BadArtifact(e.to_string()))?;
    let design = IncidenceDesign::verify(parsed.v, &parsed.blocks)?;
    if let Some(params) = parsed.params {
        let derived = design.params();
        if (params.v, params.b, params.r, params.k, params.lambda)
            != (derived.v, derived.b, derived.r, derived.k, derived.lambda)
        {
            return Err(Error::BadArtifact(format!(
                "declared parameters ({},{},{},{},{}) disagree with derived ({},{},{},{},{})",
                params.v, params.b, params.r, params.k, params.lambda,
                derived.v, derived.b, derived.r, derived.k, derived.lambda
            )));
        }
    }
    let res = match parsed.classes {
        Some(classes) => {
            let res = Resolution::new(classes);
            res.validate(&design)?;
            Some(res)
        }
        None => None,
    };
    Ok((design, res))
}

pub fn mub_json(fam: &MubFamily) -> MubJson {
    MubJson {
        q: fam.dim(),
        bases: fam
            .bases()
            .iter()
            .map(|basis| basis.iter().map(encode_vec).collect())
            .collect(),
    }
}

/// Parses a MUB family and re-checks orthonormality and unbiasedness.
pub fn mub_from_json(raw: &str) -> Result<MubFamily> {
    let parsed: MubJson =
        serde_json::from_str(raw).map_err(|e| Error::BadArtifact(e.to_string()))?;
    let bases: Vec<Vec<ComplexVec>> = parsed
        .bases
        .iter()
        .map(|basis| basis.iter().map(|v| decode_vec(v)).collect())
        .collect();
    let fam = MubFamily::from_bases(parsed.q, bases)?;
    let report = fam.verify();
    if !report.passes(TOL) {
        return Err(Error::BadArtifact(format!(
            "family fails verification: orthonormality {:.3e}, unbiasedness {:.3e} at {:?}",
            report.orthonormality_deviation, report.unbiasedness_deviation, report.worst_pair
        )));
    }
    Ok(fam)
}

pub fn realization_json(real: &Realization, plane_order: Option<u64>) -> RealizationJson {
    RealizationJson {
        design: design_json(real.design(), Some(real.resolution()), plane_order),
        vectors: real.vectors().iter().map(encode_vec).collect(),
    }
}

/// Parses a realization and re-checks the angle constraints.
pub fn realization_from_json(raw: &str) -> Result<Realization> {
    let parsed: RealizationJson =
        serde_json::from_str(raw).map_err(|e| Error::BadArtifact(e.to_string()))?;
    let design = IncidenceDesign::verify(parsed.design.v, &parsed.design.blocks)?;
    let classes = parsed
        .design
        .classes
        .ok_or_else(|| Error::BadArtifact("realization artifact lacks classes".into()))?;
    let vectors = parsed.vectors.iter().map(|v| decode_vec(v)).collect();
    Realization::from_vectors(design, Resolution::new(classes), vectors)
}

pub fn basis_json(
    basis: &ReconstructionBasis,
    real: &Realization,
    plane_order: Option<u64>,
) -> BasisJson {
    let mut index: Vec<serde_json::Value> = Vec::with_capacity(basis.len() + 1);
    match basis.index() {
        BasisIndex::Points(v) => {
            index.push("point".into());
            for p in 0..*v {
                index.push(p.into());
            }
        }
        BasisIndex::Functions(fs) => {
            index.push("function".into());
            for f in fs {
                index.push(f.values().to_vec().into());
            }
        }
    }
    BasisJson {
        design: design_json(real.design(), Some(real.resolution()), plane_order),
        vectors: basis.vectors().iter().map(encode_vec).collect(),
        alpha: basis.coefficients().map(|c| c.0),
        beta: basis.coefficients().map(|c| c.1),
        index,
    }
}

/// Parses a reconstruction basis and re-checks orthonormality.
pub fn basis_from_json(raw: &str) -> Result<ReconstructionBasis> {
    let parsed: BasisJson =
        serde_json::from_str(raw).map_err(|e| Error::BadArtifact(e.to_string()))?;
    let vectors: Vec<ComplexVec> = parsed.vectors.iter().map(|v| decode_vec(v)).collect();
    let kind = parsed
        .index
        .first()
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::BadArtifact("basis index must start with a kind tag".into()))?;
    let index = match kind {
        "point" => BasisIndex::Points(parsed.index.len() - 1),
        "function" => {
            let fs = parsed.index[1..]
                .iter()
                .map(|label| {
                    let values: Vec<usize> = serde_json::from_value(label.clone())
                        .map_err(|e| Error::BadArtifact(e.to_string()))?;
                    crate::functions::CollisionFunction::new(values)
                })
                .collect::<Result<Vec<_>>>()?;
            BasisIndex::Functions(fs)
        }
        other => {
            return Err(Error::BadArtifact(format!("unknown basis index kind {other:?}")));
        }
    };
    let coefficients = parsed.alpha.zip(parsed.beta);
    ReconstructionBasis::from_parts(vectors, index, coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{affine_plane, hadamard_design, sylvester_hadamard};
    use crate::functions::functions_from_plane;
    use crate::reconstruction::{psi_function_basis, psi_point_basis};

    #[test]
    fn design_round_trip() {
        let (design, res) = affine_plane(3).unwrap();
        let emitted = serde_json::to_string(&design_json(&design, Some(&res), Some(3))).unwrap();
        let (parsed, parsed_res) = design_from_json(&emitted).unwrap();
        assert_eq!(parsed, design);
        assert_eq!(parsed_res.unwrap(), res);
    }

    #[test]
    fn plane_points_carry_xy_labels() {
        let (design, res) = affine_plane(2).unwrap();
        let j = design_json(&design, Some(&res), Some(2));
        assert_eq!(j.points_xy.unwrap(), vec![[1, 1], [1, 2], [2, 1], [2, 2]]);
    }

    #[test]
    fn tampered_params_are_rejected() {
        let (design, res) = affine_plane(2).unwrap();
        let mut j = design_json(&design, Some(&res), None);
        j.params.as_mut().unwrap().lambda = 2;
        let raw = serde_json::to_string(&j).unwrap();
        assert!(matches!(design_from_json(&raw), Err(Error::BadArtifact(_))));
    }

    #[test]
    fn mub_round_trip() {
        let fam = MubFamily::build(3).unwrap();
        let raw = serde_json::to_string(&mub_json(&fam)).unwrap();
        let parsed = mub_from_json(&raw).unwrap();
        assert_eq!(parsed.dim(), 3);
        assert!(parsed.verify().passes(TOL));
    }

    #[test]
    fn corrupted_mub_fails_verification() {
        let fam = MubFamily::build(2).unwrap();
        let mut j = mub_json(&fam);
        j.bases[1][0][0] = [1.0, 0.0];
        let raw = serde_json::to_string(&j).unwrap();
        assert!(matches!(mub_from_json(&raw), Err(Error::BadArtifact(_))));
    }

    #[test]
    fn realization_round_trip() {
        let real = Realization::hadamard8();
        let raw = serde_json::to_string(&realization_json(&real, None)).unwrap();
        let parsed = realization_from_json(&raw).unwrap();
        assert!(parsed.verify().passes(TOL));
        assert_eq!(parsed.design(), real.design());
    }

    #[test]
    fn point_basis_round_trip() {
        let (design, res) = hadamard_design(&sylvester_hadamard(3).unwrap()).unwrap();
        let real = Realization::incidence(design, res).unwrap();
        let basis = psi_point_basis(&real, 0).unwrap();
        let j = basis_json(&basis, &real, None);
        assert_eq!(j.index[0], serde_json::Value::from("point"));
        assert!((j.alpha.unwrap() - 1.5).abs() < TOL);
        let raw = serde_json::to_string(&j).unwrap();
        let parsed = basis_from_json(&raw).unwrap();
        assert_eq!(parsed.len(), 8);
        assert_eq!(parsed.coefficients(), basis.coefficients());
    }

    #[test]
    fn function_basis_round_trip() {
        let (plane, res) = affine_plane(2).unwrap();
        let fs = functions_from_plane(&plane, &res).unwrap();
        let mubs = MubFamily::build(2).unwrap();
        let basis = psi_function_basis(&mubs, &fs).unwrap();
        let real = Realization::from_mub(plane, res, mubs).unwrap();
        let raw = serde_json::to_string(&basis_json(&basis, &real, Some(2))).unwrap();
        let parsed = basis_from_json(&raw).unwrap();
        match parsed.index() {
            BasisIndex::Functions(parsed_fs) => {
                assert_eq!(parsed_fs.len(), 4);
                assert_eq!(parsed_fs[0].values(), &[1, 1, 1]);
            }
            _ => panic!("expected function index"),
        }
    }

    #[test]
    fn corrupted_basis_vectors_are_rejected() {
        let real = Realization::hadamard8();
        let basis = psi_point_basis(&real, 0).unwrap();
        let mut j = basis_json(&basis, &real, None);
        j.vectors[0][0] = [0.9, 0.1];
        let raw = serde_json::to_string(&j).unwrap();
        assert!(matches!(basis_from_json(&raw), Err(Error::NotOrthonormal { .. })));
    }
}
