//! Operator (subsystem) codes: a verified monomial code split into
//! stabilizer, gauge and logical sectors.
//!
//! Starting from a `k x 2k` matrix `A` with admissible rows and the
//! monomial on the top `k - s` variables, the code space is the range of
//! the function's projector and has dimension `2^s`.  Completing the rows
//! `Z'_j = row j of A` with partners `X'_j` (same orthogonality pattern,
//! `X'_i` anticommuting exactly with `Z'_i`) splits the `2^s` encoded
//! qubits into
//!
//! * stabilizer generators `Z'_1 .. Z'_(k-s)` fixing every code state,
//! * gauge pairs `(X'_j, Z'_j)` for `j = k-s+1 .. k-t`, acting on
//!   qubits that carry no protected information, and
//! * logical pairs `(X'_j, Z'_j)` for `j = k-t+1 .. k`, acting on the
//!   `t` protected qubits.
//!
//! [`OqecCode::certify`] re-checks the split: the Gram pattern of the
//! completed rows, cross-sector commutation, and — densely, for small
//! `k` — that the stabilizer generators fix the projector, that gauge
//! and logical operators preserve it, and that gauge action commutes
//! with logical action on the code space.

use crate::boolfn::BooleanFunction;
use crate::pauli::PauliElement;
use crate::qecc::{CandidateError, CodeCandidate, CodeCertificate, FailureReport};
use crate::symplectic::{symplectic_complete, BinVector2k, SympError, SymplecticMatrix};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// Largest qubit count for which certification also runs dense matrix
/// checks.
pub const MAX_MATRIX_CERT_K: u32 = 6;

/// Errors from assembling a subsystem code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OqecError {
    /// Need `0 <= t <= s <= k - 1`.
    SubsystemSplit { k: u32, s: u32, t: u32 },
    Candidate(CandidateError),
    /// The underlying candidate failed verification.
    VerifyFailed(FailureReport),
    /// Row completion failed (rows not independent / not orthogonal).
    Completion(SympError),
}

impl fmt::Display for OqecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OqecError::SubsystemSplit { k, s, t } => {
                write!(f, "need 0 <= t <= s <= k-1, got k={k}, s={s}, t={t}")
            }
            OqecError::Candidate(e) => write!(f, "{e}"),
            OqecError::VerifyFailed(report) => write!(f, "{report}"),
            OqecError::Completion(e) => write!(f, "row completion failed: {e}"),
        }
    }
}

impl std::error::Error for OqecError {}

impl From<CandidateError> for OqecError {
    fn from(e: CandidateError) -> Self {
        OqecError::Candidate(e)
    }
}

/// A certified subsystem code `((k, s, t, d))`: `2^s`-dimensional code
/// space, `t` protected qubits, `s - t` gauge qubits.
#[derive(Debug, Clone)]
pub struct OqecCode {
    k: u32,
    s: u32,
    t: u32,
    z_rows: Vec<BinVector2k>,
    x_rows: Vec<BinVector2k>,
    certificate: CodeCertificate,
}

/// Builds and verifies a subsystem code from the matrix `A`.
///
/// The function is fixed to the monomial on the top `k - s` variables,
/// so the code space has dimension `2^s`; `d` is the claimed distance of
/// the underlying code and is verified before the split is formed.
pub fn build_oqec(
    k: u32,
    s: u32,
    t: u32,
    d: u32,
    a: SymplecticMatrix,
    name: Option<String>,
) -> Result<OqecCode, OqecError> {
    if t > s || s >= k {
        return Err(OqecError::SubsystemSplit { k, s, t });
    }
    let monomial = (s + 1..=k)
        .map(|i| format!("v{i}"))
        .collect::<Vec<_>>()
        .join("*");
    let f = BooleanFunction::from_anf(k, &monomial)
        .expect("monomial on the top variables is well-formed");
    let candidate = CodeCandidate::new(k, d, f, a, name)?;
    let certificate = candidate.verify().map_err(OqecError::VerifyFailed)?;
    let z_rows = certificate.candidate().matrix().rows().to_vec();
    let x_rows = symplectic_complete(&z_rows).map_err(OqecError::Completion)?;
    Ok(OqecCode { k, s, t, z_rows, x_rows, certificate })
}

impl OqecCode {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of encoded qubits (code dimension is `2^s`).
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Number of protected (logical) qubits.
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn d(&self) -> u32 {
        self.certificate.d()
    }

    /// Certificate of the underlying `((k, 2^s, d))` code.
    pub fn certificate(&self) -> &CodeCertificate {
        &self.certificate
    }

    pub fn z_row(&self, j: u32) -> BinVector2k {
        self.z_rows[j as usize - 1]
    }

    pub fn x_row(&self, j: u32) -> BinVector2k {
        self.x_rows[j as usize - 1]
    }

    /// Stabilizer generators: phase-flip side of pairs `1 .. k-s`.
    pub fn stabilizer_generators(&self) -> Vec<PauliElement> {
        (1..=self.k - self.s).map(|j| PauliElement::from_vec(self.z_row(j))).collect()
    }

    /// Gauge pairs `(X'_j, Z'_j)` for `j = k-s+1 .. k-t`.
    pub fn gauge_pairs(&self) -> Vec<(PauliElement, PauliElement)> {
        (self.k - self.s + 1..=self.k - self.t)
            .map(|j| (PauliElement::from_vec(self.x_row(j)), PauliElement::from_vec(self.z_row(j))))
            .collect()
    }

    /// Logical pairs `(X'_j, Z'_j)` for `j = k-t+1 .. k`.
    pub fn logical_pairs(&self) -> Vec<(PauliElement, PauliElement)> {
        (self.k - self.t + 1..=self.k)
            .map(|j| (PauliElement::from_vec(self.x_row(j)), PauliElement::from_vec(self.z_row(j))))
            .collect()
    }

    /// Re-checks the sector split from scratch.
    pub fn certify(&self) -> OqecReport {
        let k = self.k as usize;
        let mut gram_ok = true;
        for i in 0..k {
            for j in 0..k {
                let zz = self.z_rows[i].symplectic_product(&self.z_rows[j]);
                let xx = self.x_rows[i].symplectic_product(&self.x_rows[j]);
                let xz = self.x_rows[i].symplectic_product(&self.z_rows[j]);
                let want = u8::from(i == j);
                if zz != 0 || xx != 0 || xz != want {
                    gram_ok = false;
                }
            }
        }

        // Cross-sector commutation at the group level: everything outside
        // a pair commutes; within a gauge or logical pair the two members
        // anticommute.
        let boundary_s = (self.k - self.s) as usize; // pairs below: stabilizer
        let boundary_t = (self.k - self.t) as usize; // pairs above: logical
        let mut sector_commutation_ok = true;
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                // All distinct-index products must vanish (already in the
                // Gram pattern); additionally the stabilizer side must
                // commute with both members of every later pair.
                if i < boundary_s
                    && (self.z_rows[i].symplectic_product(&self.x_rows[j]) != 0
                        || self.z_rows[i].symplectic_product(&self.z_rows[j]) != 0)
                {
                    sector_commutation_ok = false;
                }
            }
        }
        // Gauge vs logical, all four member combinations.
        for g in boundary_s..boundary_t {
            for l in boundary_t..k {
                let pairs = [
                    (self.x_rows[g], self.x_rows[l]),
                    (self.x_rows[g], self.z_rows[l]),
                    (self.z_rows[g], self.x_rows[l]),
                    (self.z_rows[g], self.z_rows[l]),
                ];
                if pairs.iter().any(|(a, b)| a.symplectic_product(b) != 0) {
                    sector_commutation_ok = false;
                }
            }
        }

        let matrix = (self.k <= MAX_MATRIX_CERT_K).then(|| self.matrix_checks());

        let mut notes = Vec::new();
        if self.t == 0 {
            notes.push("t = 0: no protected qubits, every encoded qubit is gauge".to_string());
        }
        if self.t == self.s {
            notes.push("t = s: no gauge qubits, the split is a plain stabilizer code".to_string());
        }
        if self.k > MAX_MATRIX_CERT_K {
            notes.push(format!(
                "k > {MAX_MATRIX_CERT_K}: dense matrix checks skipped, sector checks are combinatorial only"
            ));
        }

        OqecReport { gram_ok, sector_commutation_ok, matrix, notes }
    }

    fn matrix_checks(&self) -> MatrixChecks {
        let p = self
            .certificate
            .candidate()
            .build_projector()
            .expect("certified candidates build projectors within the dense cap");

        // The stabilizer product projector must equal the function's.
        let dim = p.dim();
        let mut p_s = crate::exactmat::ExactMatrix::identity(dim);
        for g in self.stabilizer_generators() {
            let e = g.to_matrix().expect("within dense cap");
            p_s = (&(&p_s + &(&p_s * &e))).div_pow2(1);
        }
        let projector_match = p_s == p;

        let stabilizer_fixes = self.stabilizer_generators().iter().all(|g| {
            let e = g.to_matrix().expect("within dense cap");
            &e * &p == p
        });

        let sector_rows: Vec<PauliElement> = self
            .gauge_pairs()
            .into_iter()
            .chain(self.logical_pairs())
            .flat_map(|(x, z)| [x, z])
            .collect();
        let sectors_preserve = sector_rows.iter().all(|g| {
            let e = g.to_matrix().expect("within dense cap");
            &e * &p == &p * &e
        });

        let gauge_ops: Vec<_> = self.gauge_pairs().into_iter().flat_map(|(x, z)| [x, z]).collect();
        let logical_ops: Vec<_> =
            self.logical_pairs().into_iter().flat_map(|(x, z)| [x, z]).collect();
        let mut commutant_ok = true;
        for g in &gauge_ops {
            let ge = g.to_matrix().expect("within dense cap");
            let gp = &ge * &p;
            for l in &logical_ops {
                let le = l.to_matrix().expect("within dense cap");
                let lp = &le * &p;
                if &gp * &lp != &lp * &gp {
                    commutant_ok = false;
                }
            }
        }

        MatrixChecks { projector_match, stabilizer_fixes, sectors_preserve, commutant_ok }
    }
}

/// Dense-matrix certification results (small `k` only).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixChecks {
    /// Product of stabilizer projectors equals the function's projector.
    pub projector_match: bool,
    /// Every stabilizer generator fixes the projector: `E P = P`.
    pub stabilizer_fixes: bool,
    /// Gauge and logical operators commute with the projector.
    pub sectors_preserve: bool,
    /// Gauge action and logical action commute on the code space.
    pub commutant_ok: bool,
}

/// Certification results for a subsystem code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OqecReport {
    /// Completed rows have the standard pairing pattern.
    pub gram_ok: bool,
    /// Stabilizer/gauge/logical sectors commute as required.
    pub sector_commutation_ok: bool,
    /// Dense checks, present when `k` is small enough.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixChecks>,
    pub notes: Vec<String>,
}

impl OqecReport {
    pub fn passed(&self) -> bool {
        self.gram_ok
            && self.sector_commutation_ok
            && self.matrix.as_ref().map_or(true, |m| {
                m.projector_match && m.stabilizer_fixes && m.sectors_preserve && m.commutant_ok
            })
    }
}

impl Serialize for OqecCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pair_strings = |pairs: Vec<(PauliElement, PauliElement)>| -> Vec<[String; 2]> {
            pairs.into_iter().map(|(x, z)| [x.to_string(), z.to_string()]).collect()
        };
        let mut st = serializer.serialize_struct("OqecCode", 9)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("d", &self.certificate.d())?;
        st.serialize_field(
            "A_f",
            &self.z_rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        )?;
        st.serialize_field(
            "x_rows",
            &self.x_rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        )?;
        st.serialize_field(
            "stabilizer",
            &self.stabilizer_generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        )?;
        st.serialize_field("gauge_pairs", &pair_strings(self.gauge_pairs()))?;
        st.serialize_field("logical_pairs", &pair_strings(self.logical_pairs()))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::{make, FamilySpec};

    fn additive_matrix(m: u32) -> SymplecticMatrix {
        make(&FamilySpec::Additive2m { m }).unwrap().matrix().clone()
    }

    fn laflamme_matrix() -> SymplecticMatrix {
        make(&FamilySpec::Laflamme523).unwrap().matrix().clone()
    }

    #[test]
    fn four_qubit_subsystem_code_certifies() {
        let code = build_oqec(4, 2, 2, 2, additive_matrix(2), Some("demo".into())).unwrap();
        assert_eq!(code.certificate().weight(), 4);
        assert_eq!(code.stabilizer_generators().len(), 2);
        assert_eq!(code.gauge_pairs().len(), 0);
        assert_eq!(code.logical_pairs().len(), 2);
        let report = code.certify();
        assert!(report.gram_ok);
        assert!(report.sector_commutation_ok);
        let m = report.matrix.as_ref().expect("k=4 runs dense checks");
        assert!(m.projector_match);
        assert!(m.stabilizer_fixes);
        assert!(m.sectors_preserve);
        assert!(m.commutant_ok);
        assert!(report.passed());
        assert!(report.notes.iter().any(|n| n.contains("t = s")));
    }

    #[test]
    fn gauge_sector_appears_between_t_and_s() {
        let code = build_oqec(4, 2, 1, 2, additive_matrix(2), None).unwrap();
        assert_eq!(code.stabilizer_generators().len(), 2);
        assert_eq!(code.gauge_pairs().len(), 1);
        assert_eq!(code.logical_pairs().len(), 1);
        assert!(code.certify().passed());

        let all_gauge = build_oqec(4, 2, 0, 2, additive_matrix(2), None).unwrap();
        assert_eq!(all_gauge.gauge_pairs().len(), 2);
        assert_eq!(all_gauge.logical_pairs().len(), 0);
        let report = all_gauge.certify();
        assert!(report.passed());
        assert!(report.notes.iter().any(|n| n.contains("t = 0")));
    }

    #[test]
    fn five_qubit_code_as_subsystem_code() {
        // The distance-3 code on five qubits encodes one qubit: s = 1.
        for t in [0u32, 1] {
            let code = build_oqec(5, 1, t, 3, laflamme_matrix(), None).unwrap();
            assert_eq!(code.stabilizer_generators().len(), 4);
            assert_eq!(code.gauge_pairs().len() as u32, 1 - t);
            assert_eq!(code.logical_pairs().len() as u32, t);
            assert!(code.certify().passed(), "t = {t}");
        }
    }

    #[test]
    fn stabilizer_strings_match_certificate() {
        let code = build_oqec(5, 1, 1, 3, laflamme_matrix(), None).unwrap();
        let strings: Vec<String> =
            code.stabilizer_generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(strings, vec!["ZXXZI", "IZXXZ", "ZIZXX", "XZIZX"]);
        assert_eq!(
            code.certificate().stabilizers().unwrap(),
            strings.as_slice()
        );
    }

    #[test]
    fn split_bounds_are_enforced() {
        assert!(matches!(
            build_oqec(4, 2, 3, 2, additive_matrix(2), None),
            Err(OqecError::SubsystemSplit { .. })
        ));
        assert!(matches!(
            build_oqec(4, 4, 0, 2, additive_matrix(2), None),
            Err(OqecError::SubsystemSplit { .. })
        ));
    }

    #[test]
    fn verification_failures_propagate() {
        // Claimed distance 3 does not hold for the additive matrix family.
        assert!(matches!(
            build_oqec(4, 2, 2, 3, additive_matrix(2), None),
            Err(OqecError::VerifyFailed(_))
        ));
        // Distance beyond the ceiling is rejected without enumeration.
        match build_oqec(4, 2, 2, 5, additive_matrix(2), None) {
            Err(OqecError::VerifyFailed(report)) => assert_eq!(report.checked, 0),
            other => panic!("expected verify failure, got {other:?}"),
        }
    }

    #[test]
    fn completed_rows_pair_up() {
        let code = build_oqec(4, 2, 1, 2, additive_matrix(2), None).unwrap();
        for i in 1..=4u32 {
            for j in 1..=4u32 {
                assert_eq!(code.z_row(i).symplectic_product(&code.z_row(j)), 0);
                assert_eq!(code.x_row(i).symplectic_product(&code.x_row(j)), 0);
                assert_eq!(
                    code.x_row(i).symplectic_product(&code.z_row(j)),
                    u8::from(i == j)
                );
            }
        }
    }

    #[test]
    fn json_shape() {
        let code = build_oqec(4, 2, 1, 2, additive_matrix(2), None).unwrap();
        let value = serde_json::to_value(&code).unwrap();
        assert_eq!(value["k"], 4);
        assert_eq!(value["s"], 2);
        assert_eq!(value["t"], 1);
        assert_eq!(value["d"], 2);
        assert_eq!(value["A_f"].as_array().unwrap().len(), 4);
        assert_eq!(value["x_rows"].as_array().unwrap().len(), 4);
        assert_eq!(value["stabilizer"].as_array().unwrap().len(), 2);
        assert_eq!(value["gauge_pairs"].as_array().unwrap().len(), 1);
        assert_eq!(value["logical_pairs"].as_array().unwrap().len(), 1);
        let report = serde_json::to_value(code.certify()).unwrap();
        assert_eq!(report["gram_ok"], true);
        assert_eq!(report["matrix"]["projector_match"], true);
    }
}
