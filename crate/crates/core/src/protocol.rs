//! The retrodiction game, end to end.
//!
//! One side prepares the entangled resource state, the other collapses it by
//! measuring — abstractly onto a block of a parallel class, or physically by
//! measuring one tensor factor in a MUB, or a single qubit of the three-qubit
//! system. The preparer then measures in a reconstruction basis, learns an
//! incident point (or function), and once the parallel class is revealed
//! names the unique block of that class through the point. Exhaustive
//! enumeration confirms the prediction is correct on every branch.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::ComplexVec;
use crate::error::{Error, Result};
use crate::realization::{Realization, RealizationKind};
use crate::reconstruction::ReconstructionBasis;
use crate::TOL;

/// Which measurement family the measuring side uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KingModelKind {
    /// Collapse onto a block vector of a chosen parallel class.
    Abstract,
    /// Measure the first tensor factor of Cⁿ⊗Cⁿ in one of the n+1 MUBs.
    MubFactor,
    /// Measure one qubit of the three-qubit system in one of three bases.
    QubitLocal,
}

/// Single-qubit measurement bases of the three-qubit model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalBasis {
    #[serde(rename = "s")]
    Standard,
    #[serde(rename = "h")]
    Hadamard,
    #[serde(rename = "u")]
    Unbiased,
}

/// A concrete measurement choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KingMeasurement {
    Abstract { class: usize },
    MubFactor { basis: usize },
    QubitLocal { qubit: usize, basis: LocalBasis },
}

/// One possible result of the measuring side's projection.
#[derive(Debug, Clone)]
pub struct KingOutcome {
    pub block: usize,
    /// Raw outcome bit for single-qubit measurements.
    pub raw: Option<u8>,
    pub probability: f64,
    pub post_state: ComplexVec,
}

/// A full game record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Transcript {
    pub seed: u64,
    pub model: KingMeasurement,
    pub king_class: usize,
    pub king_block: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub king_raw: Option<u8>,
    pub alice_index: usize,
    pub predicted_block: usize,
    pub success: bool,
}

/// One incorrect branch found by exhaustive verification.
#[derive(Debug, Clone)]
pub struct BranchFailure {
    pub measurement: KingMeasurement,
    pub king_block: usize,
    pub alice_index: usize,
    pub predicted_block: usize,
}

/// Result of sweeping every measurement, outcome, and observation.
#[derive(Debug, Clone)]
pub struct ExhaustiveReport {
    /// Number of (measurement, collapse, observation) triples examined.
    pub branches: usize,
    pub failures: Vec<BranchFailure>,
}

impl ExhaustiveReport {
    pub fn all_correct(&self) -> bool {
        self.failures.is_empty()
    }
}

impl KingMeasurement {
    /// The parallel class this measurement reveals.
    pub fn revealed_class(&self) -> usize {
        match *self {
            KingMeasurement::Abstract { class } => class,
            KingMeasurement::MubFactor { basis } => basis,
            KingMeasurement::QubitLocal { qubit, basis } => match basis {
                LocalBasis::Standard => qubit - 1,
                LocalBasis::Hadamard => 3,
                LocalBasis::Unbiased => 3 + qubit,
            },
        }
    }
}

/// The prepared state: normalized sum of the block vectors of one parallel
/// class. The same vector for every class of the realization.
pub fn prepare(real: &Realization, class: usize) -> Result<ComplexVec> {
    Ok(real.class_sum(class)?.normalized())
}

/// All measurement choices available to a model over a realization.
pub fn enumerate_measurements(
    kind: KingModelKind,
    real: &Realization,
) -> Result<Vec<KingMeasurement>> {
    match kind {
        KingModelKind::Abstract => Ok((0..real.resolution().class_count())
            .map(|class| KingMeasurement::Abstract { class })
            .collect()),
        KingModelKind::MubFactor => match real.kind() {
            RealizationKind::MubTensor(mubs) => Ok((0..=mubs.dim())
                .map(|basis| KingMeasurement::MubFactor { basis })
                .collect()),
            _ => Err(Error::ModelMismatch("a MUB tensor realization".into())),
        },
        KingModelKind::QubitLocal => match real.kind() {
            RealizationKind::ThreeQubit => {
                let mut out = Vec::with_capacity(9);
                for qubit in 1..=3 {
                    for basis in [LocalBasis::Standard, LocalBasis::Hadamard, LocalBasis::Unbiased] {
                        out.push(KingMeasurement::QubitLocal { qubit, basis });
                    }
                }
                Ok(out)
            }
            _ => Err(Error::ModelMismatch("the three-qubit realization".into())),
        },
    }
}

fn projector(basis: LocalBasis, outcome: u8) -> [[Complex64; 2]; 2] {
    let h = Complex64::new(0.5, 0.0);
    let i = Complex64::new(0.0, 0.5);
    let one = Complex64::ONE;
    let zero = Complex64::ZERO;
    let sign = if outcome == 0 { 1.0 } else { -1.0 };
    match basis {
        LocalBasis::Standard => {
            if outcome == 0 {
                [[one, zero], [zero, zero]]
            } else {
                [[zero, zero], [zero, one]]
            }
        }
        LocalBasis::Hadamard => [[h, h * sign], [h * sign, h]],
        LocalBasis::Unbiased => [[h, -i * sign], [i * sign, h]],
    }
}

/// Applies a 2×2 operator to one qubit of a state on three qubits.
/// Qubit 1 is the leftmost tensor factor (most significant index bit).
fn apply_single_qubit(state: &ComplexVec, qubit: usize, m: [[Complex64; 2]; 2]) -> ComplexVec {
    let shift = 3 - qubit;
    let entries = (0..state.dim())
        .map(|idx| {
            let bit = (idx >> shift) & 1;
            let lo = idx & !(1 << shift);
            let hi = idx | (1 << shift);
            m[bit][0] * state.entry(lo) + m[bit][1] * state.entry(hi)
        })
        .collect();
    ComplexVec::new(entries)
}

/// All outcomes of a measurement with probability above tolerance, each with
/// its collapsed state. Probabilities must sum to 1.
pub fn king_outcomes(
    state: &ComplexVec,
    real: &Realization,
    measurement: KingMeasurement,
) -> Result<Vec<KingOutcome>> {
    let outcomes = match measurement {
        KingMeasurement::Abstract { class } => {
            let classes = real.resolution().classes();
            if class >= classes.len() {
                return Err(Error::ClassOutOfRange(class, classes.len()));
            }
            classes[class]
                .iter()
                .map(|&block| {
                    let amplitude = real.vector(block).inner(state)?;
                    Ok(KingOutcome {
                        block,
                        raw: None,
                        probability: amplitude.norm_sqr(),
                        post_state: real.vector(block).clone(),
                    })
                })
                .filter(|outcome| {
                    outcome.as_ref().map(|o| o.probability >= TOL).unwrap_or(true)
                })
                .collect::<Result<Vec<_>>>()?
        }
        KingMeasurement::MubFactor { basis } => {
            let RealizationKind::MubTensor(mubs) = real.kind() else {
                return Err(Error::ModelMismatch("a MUB tensor realization".into()));
            };
            let n = mubs.dim();
            if basis > n {
                return Err(Error::ClassOutOfRange(basis, n + 1));
            }
            if state.dim() != n * n {
                return Err(Error::DimensionMismatch(state.dim(), n * n));
            }
            let mut outcomes = Vec::with_capacity(n);
            for b in 0..n {
                let v = mubs.vector(basis, b);
                // (|v⟩⟨v| ⊗ I) state
                let mut entries = vec![Complex64::ZERO; n * n];
                for j in 0..n {
                    let overlap: Complex64 =
                        (0..n).map(|i| v.entry(i).conj() * state.entry(i * n + j)).sum();
                    for i in 0..n {
                        entries[i * n + j] = v.entry(i) * overlap;
                    }
                }
                let projected = ComplexVec::new(entries);
                let probability = projected.norm().powi(2);
                if probability < TOL {
                    continue;
                }
                let post_state = projected.normalized();
                let block = real.resolution().classes()[basis][b];
                if !post_state.matches_up_to_phase(real.vector(block), TOL) {
                    return Err(Error::UnmatchedPostState);
                }
                outcomes.push(KingOutcome { block, raw: None, probability, post_state });
            }
            outcomes
        }
        KingMeasurement::QubitLocal { qubit, basis } => {
            if !matches!(real.kind(), RealizationKind::ThreeQubit) {
                return Err(Error::ModelMismatch("the three-qubit realization".into()));
            }
            if !(1..=3).contains(&qubit) {
                return Err(Error::ClassOutOfRange(qubit, 3));
            }
            let mut outcomes = Vec::with_capacity(2);
            for raw in 0u8..2 {
                let projected = apply_single_qubit(state, qubit, projector(basis, raw));
                let probability = projected.norm().powi(2);
                if probability < TOL {
                    continue;
                }
                let post_state = projected.normalized();
                let block = real
                    .vectors()
                    .iter()
                    .position(|b| post_state.matches_up_to_phase(b, TOL))
                    .ok_or(Error::UnmatchedPostState)?;
                outcomes.push(KingOutcome { block, raw: Some(raw), probability, post_state });
            }
            outcomes
        }
    };
    let total: f64 = outcomes.iter().map(|o| o.probability).sum();
    if (total - 1.0).abs() >= TOL {
        return Err(Error::ProbabilityLeak(total));
    }
    Ok(outcomes)
}

/// Outcome probabilities of measuring `state` in the reconstruction basis;
/// entries below tolerance are pruned. Probabilities must sum to 1.
pub fn alice_outcomes(
    state: &ComplexVec,
    basis: &ReconstructionBasis,
) -> Result<Vec<(usize, f64)>> {
    if state.dim() != basis.dim() {
        return Err(Error::DimensionMismatch(state.dim(), basis.dim()));
    }
    let probs: Vec<f64> = basis
        .vectors()
        .iter()
        .map(|psi| Ok(psi.inner(state)?.norm_sqr()))
        .collect::<Result<Vec<_>>>()?;
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() >= TOL {
        return Err(Error::ProbabilityLeak(total));
    }
    Ok(probs
        .into_iter()
        .enumerate()
        .filter(|&(_, p)| p >= TOL)
        .collect())
}

/// Names the block of the revealed class that the observation pins down:
/// for point outcomes the unique class block through the point, for
/// function outcomes the block at position f(class) within the class.
pub fn predict(
    basis: &ReconstructionBasis,
    observed: usize,
    revealed_class: usize,
    real: &Realization,
) -> Result<usize> {
    let classes = real.resolution().classes();
    if revealed_class >= classes.len() {
        return Err(Error::ClassOutOfRange(revealed_class, classes.len()));
    }
    match basis.index() {
        crate::reconstruction::BasisIndex::Points(_) => classes[revealed_class]
            .iter()
            .copied()
            .find(|&b| real.design().block_contains(b, observed))
            .ok_or(Error::NotResolvable),
        crate::reconstruction::BasisIndex::Functions(fs) => {
            let value = fs[observed].value(revealed_class);
            Ok(classes[revealed_class][value - 1])
        }
    }
}

fn sample_index<R: Rng>(rng: &mut R, probabilities: &[f64]) -> usize {
    let x: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &p) in probabilities.iter().enumerate() {
        acc += p;
        if x < acc {
            return i;
        }
    }
    probabilities.len() - 1
}

/// Plays one seeded game: uniformly random measurement choice, Born-rule
/// sampling on both sides, prediction, and verdict.
pub fn run_game(
    real: &Realization,
    basis: &ReconstructionBasis,
    kind: KingModelKind,
    seed: u64,
) -> Result<Transcript> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let measurements = enumerate_measurements(kind, real)?;
    let measurement = measurements[rng.random_range(0..measurements.len())];

    let state = prepare(real, 0)?;
    let outcomes = king_outcomes(&state, real, measurement)?;
    let king_probs: Vec<f64> = outcomes.iter().map(|o| o.probability).collect();
    let outcome = &outcomes[sample_index(&mut rng, &king_probs)];

    let observations = alice_outcomes(&outcome.post_state, basis)?;
    let alice_probs: Vec<f64> = observations.iter().map(|&(_, p)| p).collect();
    let (alice_index, _) = observations[sample_index(&mut rng, &alice_probs)];

    let revealed = measurement.revealed_class();
    let predicted_block = predict(basis, alice_index, revealed, real)?;
    Ok(Transcript {
        seed,
        model: measurement,
        king_class: revealed,
        king_block: outcome.block,
        king_raw: outcome.raw,
        alice_index,
        predicted_block,
        success: predicted_block == outcome.block,
    })
}

/// Sweeps every measurement choice, every collapse with positive
/// probability, and every observation with positive probability, checking
/// that the observation is incident with the collapsed block and that the
/// prediction names that block.
pub fn verify_exhaustive(
    real: &Realization,
    basis: &ReconstructionBasis,
    kind: KingModelKind,
) -> Result<ExhaustiveReport> {
    let mut branches = 0;
    let mut failures = Vec::new();
    for measurement in enumerate_measurements(kind, real)? {
        let state = prepare(real, 0)?;
        let revealed = measurement.revealed_class();
        for outcome in king_outcomes(&state, real, measurement)? {
            for (alice_index, _) in alice_outcomes(&outcome.post_state, basis)? {
                branches += 1;
                let predicted_block = predict(basis, alice_index, revealed, real)?;
                let incident = basis.incident(alice_index, real, outcome.block);
                if predicted_block != outcome.block || !incident {
                    failures.push(BranchFailure {
                        measurement,
                        king_block: outcome.block,
                        alice_index,
                        predicted_block,
                    });
                }
            }
        }
    }
    Ok(ExhaustiveReport { branches, failures })
}
