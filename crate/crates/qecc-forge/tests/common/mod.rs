//! Shared fixtures and independent oracles for the integration suites.
//!
//! Everything here recomputes results from first principles — set
//! intersections, per-minterm matrix products, rejection sampling — so the
//! library's optimized routines are always checked against a second route.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::Rng;

use qecc_forge::boolfn::BooleanFunction;
use qecc_forge::exactmat::ExactMatrix;
use qecc_forge::pauli::PauliElement;
use qecc_forge::qecc::CodeCandidate;
use qecc_forge::symplectic::{BinVector2k, SymplecticMatrix};

/// The ((5,6,2)) candidate: a weight-6 function on five variables with a
/// sixteen-element shift set, and its ten-column matrix.
pub fn rains_candidate() -> CodeCandidate {
    let f = BooleanFunction::from_anf(
        5,
        "v1v2v3 ^ v3v4v5 ^ v2v3v4 ^ v1v2v5 ^ v1v4v5 ^ v2v3v4v5",
    )
    .unwrap();
    let a = SymplecticMatrix::from_columns(5, &[6, 12, 24, 17, 3, 14, 31, 28, 26, 22]).unwrap();
    CodeCandidate::new(5, 2, f, a, Some("rains_5_6_2".into())).unwrap()
}

/// The shift set printed for the ((5,6,2)) code.
pub const RAINS_SHIFT_SET: [u32; 16] =
    [1, 3, 4, 6, 8, 11, 12, 14, 17, 19, 21, 22, 24, 26, 28, 31];

/// The ((5,2,3)) candidate: `f = v2v3v4v5` with the cyclic five-row matrix.
pub fn laflamme_candidate() -> CodeCandidate {
    let f = BooleanFunction::from_anf(5, "v2*v3*v4*v5").unwrap();
    let rows: Vec<String> =
        ["01100|10010", "00110|01001", "00011|10100", "10001|01010", "00100|10001"]
            .iter()
            .map(|s| s.to_string())
            .collect();
    let a = SymplecticMatrix::from_row_strings(5, &rows).unwrap();
    CodeCandidate::new(5, 3, f, a, Some("laflamme_5_2_3".into())).unwrap()
}

/// The stabilizer strings extracted from the ((5,2,3)) code.
pub const LAFLAMME_STABILIZERS: [&str; 4] = ["ZXXZI", "IZXXZ", "ZIZXX", "XZIZX"];

/// The ((4,4,2)) candidate: `f = v3v4` over the matrix whose two leading
/// rows are the all-Z and all-X operators.
pub fn additive_m2_candidate() -> CodeCandidate {
    let f = BooleanFunction::from_anf(4, "v3*v4").unwrap();
    let rows: Vec<String> = ["0000|1111", "1111|0000", "0000|1100", "0000|1010"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let a = SymplecticMatrix::from_row_strings(4, &rows).unwrap();
    CodeCandidate::new(4, 2, f, a, Some("additive_m2".into())).unwrap()
}

/// Autocorrelation from the definition:
/// `r(a) = sum over v of (-1)^(f(v) xor f(v xor a))`.
pub fn brute_autocorrelation(f: &BooleanFunction) -> Vec<i64> {
    let n = 1u32 << f.m();
    (0..n)
        .map(|a| {
            (0..n).map(|v| if f.value(v) != f.value(v ^ a) { -1i64 } else { 1i64 }).sum()
        })
        .collect()
}

/// Shift-set membership from the definition: `a` qualifies when the
/// supports of `f` and of `f(v xor a)` share no point.
pub fn brute_cset(f: &BooleanFunction) -> Vec<u32> {
    let support: HashSet<u32> = f.support().into_iter().collect();
    if support.is_empty() {
        return Vec::new();
    }
    (1..1u32 << f.m())
        .filter(|&a| support.iter().all(|&v| !support.contains(&(v ^ a))))
        .collect()
}

/// Projector evaluation from first principles: for every support point,
/// multiply out the factor projectors one dense product at a time (no
/// prefix sharing), then sum the minterms.
pub fn minterm_projector(rows: &[BinVector2k], f: &BooleanFunction) -> ExactMatrix {
    let k = f.m();
    assert_eq!(rows.len(), k as usize, "one generator row per variable");
    let dim = 1usize << k;
    let identity = ExactMatrix::identity(dim);
    let factors: Vec<ExactMatrix> = rows
        .iter()
        .map(|row| {
            let e = PauliElement::from_vec(*row).to_matrix().unwrap();
            (&identity + &e).div_pow2(1)
        })
        .collect();
    let mut total = ExactMatrix::zero(dim);
    for v in f.support() {
        let mut term = identity.clone();
        for (j, p) in factors.iter().enumerate() {
            let factor = if (v >> j) & 1 == 1 { p.clone() } else { &identity - p };
            term = &term * &factor;
        }
        total = &total + &term;
    }
    total
}

/// Inserts `v` into a GF(2) echelon basis; returns false when `v` already
/// lies in the span.
pub fn gf2_extend_basis(basis: &mut Vec<u64>, mut v: u64) -> bool {
    for &b in basis.iter() {
        let lead = 1u64 << (63 - b.leading_zeros());
        if v & lead != 0 {
            v ^= b;
        }
    }
    if v == 0 {
        return false;
    }
    basis.push(v);
    basis.sort_unstable_by(|a, b| b.cmp(a));
    true
}

/// `k` independent, pairwise symplectic-orthogonal rows found by rejection
/// sampling; every valid generator family arises with positive probability.
pub fn random_lagrangian_rows(k: u32, rng: &mut impl Rng) -> Vec<BinVector2k> {
    let mut rows: Vec<BinVector2k> = Vec::with_capacity(k as usize);
    let mut basis: Vec<u64> = Vec::new();
    while rows.len() < k as usize {
        let bits = rng.gen_range(1..1u64 << (2 * k));
        let candidate = BinVector2k::new(k, bits);
        if rows.iter().any(|r| r.symplectic_product(&candidate) != 0) {
            continue;
        }
        if !gf2_extend_basis(&mut basis, bits) {
            continue;
        }
        rows.push(candidate);
    }
    rows
}

/// A uniformly random weight-`weight` function on `m` variables
/// (Floyd's subset-sampling algorithm).
pub fn random_function(m: u32, weight: usize, rng: &mut impl Rng) -> BooleanFunction {
    let n = 1u32 << m;
    assert!(weight as u32 <= n, "weight exceeds the truth-table size");
    let mut chosen = BTreeSet::new();
    for j in (n - weight as u32)..n {
        let t = rng.gen_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let support: Vec<u32> = chosen.into_iter().collect();
    BooleanFunction::from_support(m, &support).unwrap()
}

/// The `2k` column values of a matrix, row 1 as the most significant bit —
/// the exact inverse of building the matrix from columns.
pub fn matrix_columns(a: &SymplecticMatrix) -> Vec<u32> {
    let k = a.k();
    (0..2 * k)
        .map(|idx| {
            a.rows()
                .iter()
                .enumerate()
                .fold(0u32, |acc, (j, row)| acc | (u32::from(row.get(idx + 1)) << (k - 1 - j as u32)))
        })
        .collect()
}
