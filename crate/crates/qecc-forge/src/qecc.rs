//! Code candidates, the combinatorial verifier, certificates and the
//! matrix-level distance oracle.
//!
//! A candidate is a Boolean function `f` of `k` variables plus a `k x 2k`
//! binary matrix `A` and a claimed distance `d`.  The verifier certifies
//! the candidate as a `((k, M, d))` code, with `M` the weight of `f`, by
//! checking:
//!
//! 1. `d` does not exceed the ceiling `ceil((k+3)/2)` (no code on `k`
//!    qubits encoding at least one state can do better);
//! 2. the rows of `A` are independent and pairwise symplectic-orthogonal,
//!    so the projector construction applies;
//! 3. every nonzero error vector `w` of symplectic weight `< d` maps to a
//!    nonzero index `A*w` that lies in the disjoint-support shift set of
//!    `f`.
//!
//! Condition 3 is exactly the statement that `P_f E P_f = 0` for each
//! such error `E`: conjugating the projector by `E` shifts the function
//! by `A * swap_halves(w)`, and a shift index in the set makes the
//! shifted support disjoint from the original.  The matrix-level
//! [`distance_oracle`] re-derives the same conclusion from the dense
//! projector alone and is therefore an independent cross-check.

use crate::boolfn::BooleanFunction;
use crate::exactmat::ExactMatrix;
use crate::pauli::{PauliElement, MAX_DENSE_K};
use crate::projlogic::{ProjLogicError, ProjectorFamily};
use crate::symplectic::{enumerate_errors, BinVector2k, SympError, SymplecticMatrix};
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use std::fmt;

/// Largest claimed distance admissible on `k` qubits: `ceil((k+3)/2)`.
pub fn distance_ceiling(k: u32) -> u32 {
    (k + 3).div_ceil(2)
}

/// Errors from assembling a candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateError {
    /// Function arity differs from the qubit count.
    VariableCount { m: u32, k: u32 },
    /// Matrix slot count differs from the qubit count.
    MatrixSize { matrix_k: u32, k: u32 },
    /// Claimed distance below 2 certifies nothing.
    DistanceTooSmall { d: u32 },
    /// The zero function spans no code space.
    EmptyFunction,
}

impl fmt::Display for CandidateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateError::VariableCount { m, k } => {
                write!(f, "function has {m} variables but the code is on {k} qubits")
            }
            CandidateError::MatrixSize { matrix_k, k } => {
                write!(f, "matrix is for {matrix_k} qubits but the code is on {k} qubits")
            }
            CandidateError::DistanceTooSmall { d } => {
                write!(f, "claimed distance {d} is below 2")
            }
            CandidateError::EmptyFunction => write!(f, "function has empty support"),
        }
    }
}

impl std::error::Error for CandidateError {}

/// A `((k, M, d))` code candidate: function, matrix and claimed distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeCandidate {
    name: Option<String>,
    k: u32,
    d: u32,
    f: BooleanFunction,
    a: SymplecticMatrix,
}

impl CodeCandidate {
    pub fn new(
        k: u32,
        d: u32,
        f: BooleanFunction,
        a: SymplecticMatrix,
        name: Option<String>,
    ) -> Result<Self, CandidateError> {
        if f.m() != k {
            return Err(CandidateError::VariableCount { m: f.m(), k });
        }
        if a.k() != k {
            return Err(CandidateError::MatrixSize { matrix_k: a.k(), k });
        }
        if d < 2 {
            return Err(CandidateError::DistanceTooSmall { d });
        }
        if f.weight() == 0 {
            return Err(CandidateError::EmptyFunction);
        }
        Ok(CodeCandidate { name, k, d, f, a })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Dimension `M` of the claimed code space.
    pub fn weight(&self) -> usize {
        self.f.weight()
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.f
    }

    pub fn matrix(&self) -> &SymplecticMatrix {
        &self.a
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Same candidate with a different claimed distance.
    pub fn with_distance(&self, d: u32) -> Result<CodeCandidate, CandidateError> {
        CodeCandidate::new(self.k, d, self.f.clone(), self.a.clone(), self.name.clone())
    }

    /// The projector family `P_1 .. P_k` of the candidate: generator `P_j`
    /// is built from row `k + 1 - j` of the matrix, so that shifting the
    /// function's bit `j - 1` tracks conjugation toggling generator `P_j`.
    pub fn projector_family(&self) -> Result<ProjectorFamily, ProjLogicError> {
        let mut rows = self.a.rows().to_vec();
        rows.reverse();
        ProjectorFamily::new(rows)
    }

    /// Dense projector of the candidate (exact, `k <= 12`).
    pub fn build_projector(&self) -> Result<ExactMatrix, ProjLogicError> {
        self.projector_family()?.eval(&self.f)
    }

    /// Shift index induced on the function when the projector is
    /// conjugated by the error `E_w`.
    ///
    /// Conjugation toggles generator `P_j` exactly when `E_w` anticommutes
    /// with it, and anticommutation pairs the X half of `w` against the
    /// Z half of the generator row and vice versa — hence the half swap
    /// before applying the matrix.
    pub fn conjugation_shift(&self, w: &BinVector2k) -> u32 {
        self.a.mat_vec(&w.swap_halves())
    }

    /// Checks `E_w P_f E_w == P_(f shifted by conjugation_shift(w))` on
    /// dense matrices.  Holds for every `w`; exposed as a testable
    /// correspondence between matrix conjugation and function shifts.
    pub fn conjugation_check(&self, w: &BinVector2k) -> Result<bool, ProjLogicError> {
        if w.k() != self.k {
            return Err(ProjLogicError::ArityMismatch { family: self.k as usize, function: w.k() });
        }
        let family = self.projector_family()?;
        let p = family.eval(&self.f)?;
        let e = PauliElement::from_vec(*w).to_matrix()?;
        let lhs = &(&e * &p) * &e;
        let shifted = self
            .f
            .shift(self.conjugation_shift(w))
            .expect("matrix image is always an admissible shift index");
        let rhs = family.eval(&shifted)?;
        Ok(lhs == rhs)
    }

    /// Runs the verifier, stopping at the first failure.
    pub fn verify(&self) -> Result<CodeCertificate, FailureReport> {
        self.verify_impl(false)
    }

    /// Runs the verifier and reports every failure.
    pub fn verify_all(&self) -> Result<CodeCertificate, FailureReport> {
        self.verify_impl(true)
    }

    fn verify_impl(&self, all: bool) -> Result<CodeCertificate, FailureReport> {
        let max = distance_ceiling(self.k);
        if self.d > max {
            return Err(FailureReport {
                failures: vec![CheckFailure::DistanceCeiling { d: self.d, max }],
                checked: 0,
            });
        }
        if let Some(reason) = self.structural_defect() {
            return Err(FailureReport {
                failures: vec![CheckFailure::Structural { reason }],
                checked: 0,
            });
        }
        let cset = self.f.cset();
        let errors: Vec<BinVector2k> = enumerate_errors(self.k, self.d - 1)
            .expect("2 <= d <= ceiling implies a valid weight bound")
            .collect();
        let records: Vec<TranscriptRecord> = errors
            .par_iter()
            .map(|w| {
                let image = self.a.mat_vec(w);
                let ok = image != 0 && cset.contains(image);
                TranscriptRecord { w: *w, image, ok }
            })
            .collect();
        let checked = records.len() as u64;
        let mut failures = Vec::new();
        for r in &records {
            if !r.ok {
                failures.push(if r.image == 0 {
                    CheckFailure::ZeroImage { w: r.w }
                } else {
                    CheckFailure::ImageNotInShiftSet { w: r.w, image: r.image }
                });
                if !all {
                    break;
                }
            }
        }
        if !failures.is_empty() {
            return Err(FailureReport { failures, checked });
        }
        let stabilizers = self.stabilizer_rows().map(|rows| {
            rows.iter().map(|r| PauliElement::from_vec(*r).to_string()).collect()
        });
        Ok(CodeCertificate {
            additive: stabilizers.is_some(),
            stabilizers,
            weight: self.f.weight(),
            transcript: Transcript { records },
            candidate: self.clone(),
        })
    }

    fn structural_defect(&self) -> Option<String> {
        let rows = self.a.rows();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if rows[i].symplectic_product(&rows[j]) != 0 {
                    return Some(format!("rows {} and {} anticommute", i + 1, j + 1));
                }
            }
        }
        if !self.a.rows_lagrangian() {
            return Some("rows are linearly dependent".to_string());
        }
        None
    }

    /// Rows whose phase-flip generators stabilize the code space, present
    /// exactly when the function is a monomial: variable `i` of the
    /// monomial selects matrix row `k + 1 - i`.
    fn stabilizer_rows(&self) -> Option<Vec<BinVector2k>> {
        let vars = self.f.is_monomial()?;
        let mut rows: Vec<u32> = vars.iter().map(|i| self.k + 1 - i).collect();
        rows.sort_unstable();
        Some(rows.into_iter().map(|j| self.a.row(j)).collect())
    }

    /// Splits the candidate into stabilizer generators when the function
    /// is a monomial; the generators are checked against the dense
    /// projector when the qubit count allows it.
    pub fn extract_stabilizers(&self) -> Result<StabilizerExtraction, ProjLogicError> {
        let Some(rows) = self.stabilizer_rows() else {
            return Ok(StabilizerExtraction::NonAdditive);
        };
        let generators: Vec<PauliElement> =
            rows.iter().map(|r| PauliElement::from_vec(*r)).collect();
        let strings = generators.iter().map(|g| g.to_string()).collect();
        let matrix_checked = if self.k <= MAX_DENSE_K {
            let p = self.build_projector()?;
            for g in &generators {
                let e = g.to_matrix()?;
                if &e * &p != p {
                    return Err(ProjLogicError::BadFamily);
                }
            }
            true
        } else {
            false
        };
        Ok(StabilizerExtraction::Additive { rows, generators, strings, matrix_checked })
    }
}

/// Result of splitting a candidate into stabilizer generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilizerExtraction {
    /// The function is a monomial; the listed generators fix every code
    /// state.  `matrix_checked` records whether `E P_f = P_f` was
    /// confirmed densely.
    Additive {
        rows: Vec<BinVector2k>,
        generators: Vec<PauliElement>,
        strings: Vec<String>,
        matrix_checked: bool,
    },
    /// The function is not a monomial; no stabilizer splitting exists on
    /// this route.
    NonAdditive,
}

#[derive(Serialize, Deserialize)]
struct CandidateWire {
    k: u32,
    d: u32,
    f_support: Vec<u32>,
    #[serde(rename = "A_f")]
    a_f: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl Serialize for CodeCandidate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CandidateWire {
            k: self.k,
            d: self.d,
            f_support: self.f.support(),
            a_f: self.a.row_strings(),
            name: self.name.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CodeCandidate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = CandidateWire::deserialize(deserializer)?;
        let f = BooleanFunction::from_support(wire.k, &wire.f_support)
            .map_err(D::Error::custom)?;
        let a = SymplecticMatrix::from_row_strings(wire.k, &wire.a_f)
            .map_err(D::Error::custom)?;
        CodeCandidate::new(wire.k, wire.d, f, a, wire.name).map_err(D::Error::custom)
    }
}

/// One verified error pattern: its matrix image and whether the image is
/// a nonzero member of the shift set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptRecord {
    pub w: BinVector2k,
    pub image: u32,
    pub ok: bool,
}

/// The full list of checked error patterns in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    records: Vec<TranscriptRecord>,
}

impl Transcript {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[TranscriptRecord] {
        &self.records
    }

    /// SHA-256 over the canonical line rendering of all records.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for r in &self.records {
            hasher.update(format!("{} {} {}\n", r.w, r.image, u8::from(r.ok)));
        }
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// A verified `((k, M, d))` code.
#[derive(Debug, Clone)]
pub struct CodeCertificate {
    candidate: CodeCandidate,
    weight: usize,
    additive: bool,
    stabilizers: Option<Vec<String>>,
    transcript: Transcript,
}

impl CodeCertificate {
    pub fn candidate(&self) -> &CodeCandidate {
        &self.candidate
    }

    pub fn k(&self) -> u32 {
        self.candidate.k
    }

    pub fn d(&self) -> u32 {
        self.candidate.d
    }

    /// Dimension `M` of the code space.
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// True when the function is a monomial and the code is a stabilizer
    /// code on this route.
    pub fn additive(&self) -> bool {
        self.additive
    }

    pub fn stabilizers(&self) -> Option<&[String]> {
        self.stabilizers.as_deref()
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }
}

#[derive(Serialize)]
struct TranscriptWire {
    checked: u64,
    digest: String,
}

#[derive(Serialize)]
struct CertificateWire<'a> {
    verified: bool,
    #[serde(flatten)]
    candidate: &'a CodeCandidate,
    #[serde(rename = "M")]
    weight: usize,
    additive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    stabilizers: Option<&'a [String]>,
    transcript: TranscriptWire,
}

impl Serialize for CodeCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CertificateWire {
            verified: true,
            candidate: &self.candidate,
            weight: self.weight,
            additive: self.additive,
            stabilizers: self.stabilizers.as_deref(),
            transcript: TranscriptWire {
                checked: self.transcript.len() as u64,
                digest: self.transcript.digest(),
            },
        }
        .serialize(serializer)
    }
}

/// A single verifier failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckFailure {
    /// Claimed distance exceeds the ceiling; rejected before enumeration.
    DistanceCeiling { d: u32, max: u32 },
    /// Matrix rows unfit for the projector construction.
    Structural { reason: String },
    /// An admissible error maps to shift index zero (it commutes with the
    /// whole generator set but is not detected).
    ZeroImage {
        #[serde(serialize_with = "vec_as_string")]
        w: BinVector2k,
    },
    /// An admissible error maps to a shift index outside the function's
    /// disjoint-support set.
    ImageNotInShiftSet {
        #[serde(serialize_with = "vec_as_string")]
        w: BinVector2k,
        image: u32,
    },
}

fn vec_as_string<S: Serializer>(v: &BinVector2k, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckFailure::DistanceCeiling { d, max } => {
                write!(f, "claimed distance {d} exceeds the ceiling {max}")
            }
            CheckFailure::Structural { reason } => write!(f, "structural defect: {reason}"),
            CheckFailure::ZeroImage { w } => write!(f, "error {w} has shift index 0"),
            CheckFailure::ImageNotInShiftSet { w, image } => {
                write!(f, "error {w} has shift index {image} outside the shift set")
            }
        }
    }
}

/// Verification outcome when a candidate is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureReport {
    pub failures: Vec<CheckFailure>,
    /// Number of error patterns whose images were computed.
    pub checked: u64,
}

impl fmt::Display for FailureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "not a valid code ({} checked, {} failure(s)):", self.checked, self.failures.len())?;
        for failure in &self.failures {
            writeln!(f, "  {failure}")?;
        }
        Ok(())
    }
}

/// Errors from the matrix-level distance oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// Matrix dimension is not `2^k` for the stated `k`.
    DimMismatch { dim: usize, k: u32 },
    /// Input is not Hermitian idempotent.
    NotAProjector,
    /// Bad error-weight bound.
    Symp(SympError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::DimMismatch { dim, k } => {
                write!(f, "matrix dimension {dim} does not match 2^{k}")
            }
            OracleError::NotAProjector => write!(f, "matrix is not a Hermitian projector"),
            OracleError::Symp(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Outcome of the matrix-level error sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    /// True when `P E P = 0` for every checked error.
    pub passed: bool,
    /// First error (canonical order) with `P E P != 0`, if any.
    pub first_violation: Option<BinVector2k>,
    pub checked: u64,
}

impl Serialize for DistanceReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            passed: bool,
            checked: u64,
            #[serde(skip_serializing_if = "Option::is_none")]
            first_violation: Option<&'a str>,
        }
        let shown = self.first_violation.map(|w| w.to_string());
        Wire { passed: self.passed, checked: self.checked, first_violation: shown.as_deref() }
            .serialize(serializer)
    }
}

/// Sweeps all errors of symplectic weight `<= dmax` against a dense
/// projector and reports whether `P E P = 0` throughout.  This certifies
/// distance `dmax + 1` directly from the matrix, with no reference to the
/// combinatorial route.
pub fn distance_oracle(
    p: &ExactMatrix,
    k: u32,
    dmax: u32,
) -> Result<DistanceReport, OracleError> {
    if k < 1 || k > MAX_DENSE_K || p.dim() != 1usize << k {
        return Err(OracleError::DimMismatch { dim: p.dim(), k });
    }
    if !p.is_hermitian() || !p.is_idempotent() {
        return Err(OracleError::NotAProjector);
    }
    let errors: Vec<BinVector2k> =
        enumerate_errors(k, dmax).map_err(OracleError::Symp)?.collect();
    let flags: Vec<bool> = errors
        .par_iter()
        .map(|w| {
            let e = PauliElement::from_vec(*w)
                .to_matrix()
                .expect("k is within the dense cap");
            (&(p * &e) * p).is_zero()
        })
        .collect();
    let first_violation = errors
        .iter()
        .zip(&flags)
        .find(|(_, &ok)| !ok)
        .map(|(w, _)| *w);
    Ok(DistanceReport {
        passed: first_violation.is_none(),
        first_violation,
        checked: errors.len() as u64,
    })
}
