//! Built-in code families and the extension / shrinking transforms.
//!
//! Each family constructor assembles the function and matrix of a
//! candidate and cross-checks the construction against its claimed
//! dimension (and, when cheap enough, its claimed shift set) before
//! handing it out; verification of the distance claim stays with the
//! caller via [`CodeCandidate::verify`].
//!
//! * `additive_2m`: a `((2m, 2^(2m-2), 2))` stabilizer code for `m >= 2`
//!   from the monomial on the top two variables;
//! * `nonadditive_2m`: a `((2m, 2^(2m-2), 2))` code for `m >= 3` whose
//!   function is not a monomial on any generator relabeling;
//! * `rains_5_6_2`: the `((5, 6, 2))` code, optimal dimension at `k = 5`,
//!   `d = 2`;
//! * `rains_ext_2m1`: a `((2m+1, 3*2^(2m-3), 2))` family for `m >= 3`
//!   extending the `((5, 6, 2))` support pattern to odd qubit counts;
//! * `laflamme_5_2_3`: the `((5, 2, 3))` code, the smallest code that
//!   corrects one arbitrary error.
//!
//! [`extend_k2`] turns any verified distance-2 code into a code on two
//! more qubits with four times the dimension; [`shrink_m`] drops one
//! support point, trading dimension for nothing (the shift set can only
//! grow), so the result verifies at the same distance.

use crate::boolfn::BooleanFunction;
use crate::qecc::{CandidateError, CodeCandidate, CodeCertificate};
use crate::symplectic::SymplecticMatrix;
use std::fmt;

/// Errors from family construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    UnknownFamily { name: String },
    MissingParameter { family: &'static str },
    ParameterOutOfRange { family: &'static str, m: u32, min: u32, max: u32 },
    /// The assembled candidate contradicts the family's claims; this is a
    /// library defect, surfaced rather than hidden.
    ClaimMismatch { family: String, detail: String },
    Candidate(CandidateError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::UnknownFamily { name } => write!(f, "unknown family {name:?}"),
            FamilyError::MissingParameter { family } => {
                write!(f, "family {family} needs the parameter m")
            }
            FamilyError::ParameterOutOfRange { family, m, min, max } => {
                write!(f, "family {family} needs {min} <= m <= {max}, got {m}")
            }
            FamilyError::ClaimMismatch { family, detail } => {
                write!(f, "family {family} failed its own claims: {detail}")
            }
            FamilyError::Candidate(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FamilyError {}

impl From<CandidateError> for FamilyError {
    fn from(e: CandidateError) -> Self {
        FamilyError::Candidate(e)
    }
}

/// Selects one of the built-in families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Additive2m { m: u32 },
    Nonadditive2m { m: u32 },
    Rains562,
    RainsExt2m1 { m: u32 },
    Laflamme523,
}

impl FamilySpec {
    /// Resolves a family name (as used by the command line) plus an
    /// optional parameter.
    pub fn parse(name: &str, m: Option<u32>) -> Result<FamilySpec, FamilyError> {
        let need = |family: &'static str| m.ok_or(FamilyError::MissingParameter { family });
        match name {
            "additive_2m" => Ok(FamilySpec::Additive2m { m: need("additive_2m")? }),
            "nonadditive_2m" => Ok(FamilySpec::Nonadditive2m { m: need("nonadditive_2m")? }),
            "rains_5_6_2" => Ok(FamilySpec::Rains562),
            "rains_ext_2m1" => Ok(FamilySpec::RainsExt2m1 { m: need("rains_ext_2m1")? }),
            "laflamme_5_2_3" => Ok(FamilySpec::Laflamme523),
            _ => Err(FamilyError::UnknownFamily { name: name.to_string() }),
        }
    }

    /// All family names accepted by [`FamilySpec::parse`].
    pub fn names() -> &'static [&'static str] {
        &["additive_2m", "nonadditive_2m", "rains_5_6_2", "rains_ext_2m1", "laflamme_5_2_3"]
    }
}

/// Builds the candidate for a family selection.
pub fn make(spec: &FamilySpec) -> Result<CodeCandidate, FamilyError> {
    match *spec {
        FamilySpec::Additive2m { m } => additive_2m(m),
        FamilySpec::Nonadditive2m { m } => nonadditive_2m(m),
        FamilySpec::Rains562 => rains_5_6_2(),
        FamilySpec::RainsExt2m1 { m } => rains_ext_2m1(m),
        FamilySpec::Laflamme523 => laflamme_5_2_3(),
    }
}

fn check_range(family: &'static str, m: u32, min: u32, max: u32) -> Result<(), FamilyError> {
    if m < min || m > max {
        return Err(FamilyError::ParameterOutOfRange { family, m, min, max });
    }
    Ok(())
}

fn claim(family: &str, ok: bool, detail: &str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::ClaimMismatch { family: family.to_string(), detail: detail.to_string() })
    }
}

/// Z-half columns shared by the `additive_2m` and `nonadditive_2m`
/// families: `[2^(k-1) + 2^(k-2) - 1, 2^(k-1) + 2^(k-2-j) (j = 1..k-2),
/// 2^(k-1)]`.
fn paired_z_columns(k: u32) -> Vec<u32> {
    let top = 1u32 << (k - 1);
    let mut cols = Vec::with_capacity(k as usize);
    cols.push(top + (1 << (k - 2)) - 1);
    for j in 1..=k - 2 {
        cols.push(top + (1 << (k - 2 - j)));
    }
    cols.push(top);
    cols
}

fn additive_2m(m: u32) -> Result<CodeCandidate, FamilyError> {
    check_range("additive_2m", m, 2, 12)?;
    let k = 2 * m;
    let name = format!("additive_2m(m={m})");
    let f = BooleanFunction::from_anf(k, &format!("v{k}*v{}", k - 1))
        .expect("monomial on the top two variables is well-formed");
    let mut cols = vec![1u32 << (k - 2); k as usize];
    cols.extend(paired_z_columns(k));
    let a = SymplecticMatrix::from_columns(k, &cols)
        .expect("column count and width match by construction");
    claim(&name, f.weight() == 1usize << (k - 2), "dimension is 2^(k-2)")?;
    if m <= 6 {
        // Shift set claim: exactly the indices with a set bit among the
        // top two, i.e. 2^(k-2) .. 2^k - 1.
        let expected: Vec<u32> = (1u32 << (k - 2)..1u32 << k).collect();
        claim(&name, f.cset().elements() == expected, "shift set is [2^(k-2), 2^k)")?;
    }
    Ok(CodeCandidate::new(k, 2, f, a, Some(name))?)
}

/// Expression with the same support blocks as the non-monomial family:
/// top three variables set; top two set, third clear and some lower
/// variable set (picked out by its highest set position); and the single
/// point with only the second-from-top variable clear.
fn nonadditive_expression(k: u32) -> String {
    let mut terms = vec![format!("v{k}*v{}*v{}", k - 1, k - 2)];
    for j in (1..=k - 3).rev() {
        let mut t = format!("v{k}*v{}*~v{}", k - 1, k - 2);
        for u in (j + 1..=k - 3).rev() {
            t.push_str(&format!("*~v{u}"));
        }
        t.push_str(&format!("*v{j}"));
        terms.push(t);
    }
    let mut last = format!("v{k}*~v{}", k - 1);
    for u in (1..=k - 2).rev() {
        last.push_str(&format!("*v{u}"));
    }
    terms.push(last);
    terms.join(" ^ ")
}

fn nonadditive_2m(m: u32) -> Result<CodeCandidate, FamilyError> {
    check_range("nonadditive_2m", m, 3, 12)?;
    let k = 2 * m;
    let name = format!("nonadditive_2m(m={m})");
    let f = BooleanFunction::from_anf(k, &nonadditive_expression(k))
        .expect("the family expression is well-formed");
    let mut cols = vec![(1u32 << (k - 1)) - 1; k as usize];
    cols.extend(paired_z_columns(k));
    let a = SymplecticMatrix::from_columns(k, &cols)
        .expect("column count and width match by construction");
    claim(&name, f.weight() == 1usize << (k - 2), "dimension is 2^(k-2)")?;
    claim(&name, f.is_monomial().is_none(), "function is not a monomial")?;
    if m <= 6 {
        // Shift set claim: 2^(k-1) - 1 together with [2^(k-1), 2^k).
        let expected: Vec<u32> = std::iter::once((1u32 << (k - 1)) - 1)
            .chain(1u32 << (k - 1)..1u32 << k)
            .collect();
        claim(&name, f.cset().elements() == expected, "shift set is {2^(k-1)-1} + [2^(k-1), 2^k)")?;
    }
    Ok(CodeCandidate::new(k, 2, f, a, Some(name))?)
}

const RAINS_SHIFT_SET: [u32; 16] =
    [1, 3, 4, 6, 8, 11, 12, 14, 17, 19, 21, 22, 24, 26, 28, 31];

fn rains_5_6_2() -> Result<CodeCandidate, FamilyError> {
    let name = "rains_5_6_2";
    let f = BooleanFunction::from_anf(
        5,
        "v1v2v3 ^ v3v4v5 ^ v2v3v4 ^ v1v2v5 ^ v1v4v5 ^ v2v3v4v5",
    )
    .expect("fixed expression is well-formed");
    let a = SymplecticMatrix::from_columns(5, &[6, 12, 24, 17, 3, 14, 31, 28, 26, 22])
        .expect("fixed columns are well-formed");
    claim(name, f.weight() == 6, "dimension is 6")?;
    claim(name, f.cset().elements() == RAINS_SHIFT_SET, "shift set has the fixed 16 indices")?;
    Ok(CodeCandidate::new(5, 2, f, a, Some(name.to_string()))?)
}

fn rains_ext_2m1(m: u32) -> Result<CodeCandidate, FamilyError> {
    check_range("rains_ext_2m1", m, 3, 11)?;
    let k = 2 * m + 1;
    let name = format!("rains_ext_2m1(m={m})");
    let base = rains_5_6_2()?;
    let base_f = base.function().clone();
    let mut support = Vec::with_capacity(6usize << (k - 5));
    for v in 0..1u32 << k {
        if base_f.value(v & 31) {
            support.push(v);
        }
    }
    let f = BooleanFunction::from_support(k, &support)
        .expect("support entries are within range and sorted");
    let mut cols = vec![6, 12, 24, 17];
    cols.extend(std::iter::repeat(3).take(k as usize - 4));
    cols.extend([14, 31, 28, 26, (1u32 << k) - 10]);
    for j in 5..=k - 1 {
        cols.push((1u32 << j) + 22);
    }
    let a = SymplecticMatrix::from_columns(k, &cols)
        .expect("column count and width match by construction");
    claim(&name, f.weight() == 6usize << (k - 5), "dimension is 6 * 2^(k-5)")?;
    if m <= 5 {
        // Shift set claim: any upper bits over a base shift-set index.
        let expected: Vec<u32> = (0..1u32 << (k - 5))
            .flat_map(|b| RAINS_SHIFT_SET.iter().map(move |&a| (b << 5) | a))
            .collect();
        claim(&name, f.cset().elements() == expected, "shift set replicates the base one")?;
    }
    Ok(CodeCandidate::new(k, 2, f, a, Some(name))?)
}

fn laflamme_5_2_3() -> Result<CodeCandidate, FamilyError> {
    let name = "laflamme_5_2_3";
    let f = BooleanFunction::from_anf(5, "v2v3v4v5").expect("fixed expression is well-formed");
    let rows: Vec<String> = ["01100|10010", "00110|01001", "00011|10100", "10001|01010", "00100|10001"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let a = SymplecticMatrix::from_row_strings(5, &rows).expect("fixed rows are well-formed");
    claim(name, f.weight() == 2, "dimension is 2")?;
    Ok(CodeCandidate::new(5, 3, f, a, Some(name.to_string()))?)
}

/// Errors from the two-qubit extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendError {
    /// The extension construction is specific to distance 2.
    DistanceNotTwo { d: u32 },
    /// The extended code would exceed the supported qubit count.
    TooManyQubits { k: u32 },
}

impl fmt::Display for ExtendError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendError::DistanceNotTwo { d } => {
                write!(f, "extension needs a verified distance-2 code, got distance {d}")
            }
            ExtendError::TooManyQubits { k } => {
                write!(f, "extended code on {k} qubits exceeds the supported range")
            }
        }
    }
}

impl std::error::Error for ExtendError {}

/// Extends a verified `((k, M, 2))` code to a `((k+2, 4M, 2))` candidate.
///
/// The function keeps its truth value on the low `k` variables with the
/// two new variables free (dimension x4); the matrix keeps columns
/// `1..k-1`, repeats column `k` on the three last X slots, and gives the
/// three last Z slots the old Z column `k` offset by the three nonzero
/// patterns of the new index bits.  Taking a certificate as input makes
/// "already verified" a type-level precondition.
pub fn extend_k2(cert: &CodeCertificate) -> Result<CodeCandidate, ExtendError> {
    let c = cert.candidate();
    if c.d() != 2 {
        return Err(ExtendError::DistanceNotTwo { d: c.d() });
    }
    let k = c.k();
    let k2 = k + 2;
    if k2 > crate::boolfn::MAX_VARS || k2 > crate::symplectic::MAX_K {
        return Err(ExtendError::TooManyQubits { k: k2 });
    }
    let mut support = Vec::with_capacity(4 * c.weight());
    for b in 0u32..4 {
        for &s in &c.function().support() {
            support.push((b << k) | s);
        }
    }
    support.sort_unstable();
    let f = BooleanFunction::from_support(k2, &support)
        .expect("shifted support entries are within range");
    let old = c.matrix().columns();
    let (x_cols, z_cols) = old.split_at(k as usize);
    let z_last = z_cols[k as usize - 1];
    let mut cols = Vec::with_capacity(2 * k2 as usize);
    cols.extend_from_slice(&x_cols[..k as usize - 1]);
    cols.extend([x_cols[k as usize - 1]; 3]);
    cols.extend_from_slice(&z_cols[..k as usize - 1]);
    cols.extend([(3 << k) | z_last, (1 << k) | z_last, (2 << k) | z_last]);
    let a = SymplecticMatrix::from_columns(k2, &cols)
        .expect("column count and width match by construction");
    let name = c.name().map(|n| format!("{n}+2"));
    Ok(CodeCandidate::new(k2, 2, f, a, name)
        .expect("extension preserves candidate validity"))
}

/// Errors from dropping a support point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShrinkError {
    /// The index to drop is not in the function's support.
    NotInSupport { drop: u32 },
    /// Dropping the last support point would leave no code space.
    WouldEmpty,
}

impl fmt::Display for ShrinkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShrinkError::NotInSupport { drop } => {
                write!(f, "index {drop} is not in the function's support")
            }
            ShrinkError::WouldEmpty => write!(f, "cannot drop the last support point"),
        }
    }
}

impl std::error::Error for ShrinkError {}

/// Drops one support point from a verified `((k, M, d))` code, giving a
/// `((k, M-1, d))` candidate with the same matrix.  Removing a point can
/// only enlarge the shift set, so the result verifies at the same
/// distance.
pub fn shrink_m(cert: &CodeCertificate, drop: u32) -> Result<CodeCandidate, ShrinkError> {
    let c = cert.candidate();
    if !c.function().value(drop) {
        return Err(ShrinkError::NotInSupport { drop });
    }
    if c.weight() == 1 {
        return Err(ShrinkError::WouldEmpty);
    }
    let support: Vec<u32> =
        c.function().support().into_iter().filter(|&s| s != drop).collect();
    let f = BooleanFunction::from_support(c.k(), &support)
        .expect("remaining support entries are within range");
    let name = c.name().map(|n| format!("{n}-{{{drop}}}"));
    Ok(CodeCandidate::new(c.k(), c.d(), f, c.matrix().clone(), name)
        .expect("shrinking preserves candidate validity"))
}
