//! Binary symplectic linear algebra over GF(2).
//!
//! A `k`-qubit Pauli operator (up to phase) is a binary vector
//! `(a_1..a_k | b_1..b_k)` of length `2k`: `a_i = 1` flips qubit `i`,
//! `b_i = 1` applies a sign on qubit `i`.  Two operators commute exactly
//! when the symplectic product `a.b' + a'.b (mod 2)` of their vectors
//! vanishes, so code construction and verification reduce to GF(2) linear
//! algebra on these vectors: ranks, Lagrangian (independent, pairwise
//! orthogonal) row sets, images `A w^T`, and completion of a Lagrangian set
//! to a full symplectic basis.
//!
//! Vectors are packed into a `u64`: position `i` (1-based) is stored in bit
//! `i - 1`, the X half in bits `0..k` and the Z half in bits `k..2k`.  The
//! text form prints positions left to right (`"00110|01111"`), matching how
//! the rows of a generator matrix are written out.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest supported number of qubit slots (`2k` bits must fit in a word
/// with room to spare; this also matches the Boolean-function variable cap).
pub const MAX_K: u32 = 24;

/// Errors from constructing or parsing symplectic data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SympError {
    KOutOfRange { k: u32 },
    /// A row string has the wrong number of `0`/`1` characters.
    RowLength { expected: usize, got: usize },
    BadChar { ch: char, pos: usize },
    /// A `|` separator appears anywhere other than between the two halves.
    MisplacedSeparator { pos: usize },
    WrongRowCount { expected: usize, got: usize },
    WrongColumnCount { expected: usize, got: usize },
    ColumnOutOfRange { column: u32, k: u32 },
    /// `dmax` outside `1..=k`.
    DmaxOutOfRange { dmax: u32, k: u32 },
    /// Completion requires `k` independent, pairwise-orthogonal rows.
    NotLagrangian,
}

impl fmt::Display for SympError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SympError::KOutOfRange { k } => {
                write!(f, "qubit count {k} is outside 1..={MAX_K}")
            }
            SympError::RowLength { expected, got } => {
                write!(f, "row needs {expected} binary digits, got {got}")
            }
            SympError::BadChar { ch, pos } => {
                write!(f, "unexpected character {ch:?} at position {pos}")
            }
            SympError::MisplacedSeparator { pos } => {
                write!(f, "separator '|' at position {pos} does not split the halves")
            }
            SympError::WrongRowCount { expected, got } => {
                write!(f, "expected {expected} rows, got {got}")
            }
            SympError::WrongColumnCount { expected, got } => {
                write!(f, "expected {expected} columns, got {got}")
            }
            SympError::ColumnOutOfRange { column, k } => {
                write!(f, "column value {column} does not fit in {k} bits")
            }
            SympError::DmaxOutOfRange { dmax, k } => {
                write!(f, "weight bound {dmax} is outside 1..={k}")
            }
            SympError::NotLagrangian => {
                write!(f, "rows are not independent and pairwise symplectic-orthogonal")
            }
        }
    }
}

impl std::error::Error for SympError {}

/// A binary vector `(a | b)` of length `2k` describing a `k`-qubit Pauli
/// operator up to phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinVector2k {
    k: u32,
    bits: u64,
}

impl BinVector2k {
    /// Builds a vector from its packed bits (position `i` in bit `i - 1`).
    pub fn new(k: u32, bits: u64) -> Self {
        assert!(k >= 1 && k <= MAX_K, "qubit count {k} out of range");
        assert!(bits >> (2 * k) == 0, "bits beyond position {}", 2 * k);
        BinVector2k { k, bits }
    }

    /// Builds a vector from its X half `a` and Z half `b`; bit `i - 1` of
    /// each half is the coefficient for qubit `i`.
    pub fn from_halves(k: u32, a: u32, b: u32) -> Self {
        assert!(k >= 1 && k <= MAX_K, "qubit count {k} out of range");
        let mask = (1u64 << k) - 1;
        assert!(a as u64 <= mask && b as u64 <= mask, "half does not fit in {k} bits");
        BinVector2k { k, bits: (a as u64) | ((b as u64) << k) }
    }

    pub fn zero(k: u32) -> Self {
        BinVector2k::new(k, 0)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// The X half `a` (bit `i - 1` = `a_i`).
    pub fn x_half(&self) -> u32 {
        (self.bits & ((1u64 << self.k) - 1)) as u32
    }

    /// The Z half `b` (bit `i - 1` = `b_i`).
    pub fn z_half(&self) -> u32 {
        (self.bits >> self.k) as u32
    }

    /// Coefficient at 1-based position `i` in `1..=2k`.
    pub fn get(&self, i: u32) -> u8 {
        assert!(i >= 1 && i <= 2 * self.k, "position {i} out of range");
        ((self.bits >> (i - 1)) & 1) as u8
    }

    /// Symplectic product `a.b' + a'.b (mod 2)`; zero exactly when the two
    /// operators commute.
    pub fn symplectic_product(&self, other: &BinVector2k) -> u8 {
        assert_eq!(self.k, other.k, "symplectic product across different k");
        let ab = (self.x_half() & other.z_half()).count_ones();
        let ba = (self.z_half() & other.x_half()).count_ones();
        ((ab + ba) & 1) as u8
    }

    /// Number of qubit slots the operator touches (`a_i = 1` or `b_i = 1`).
    pub fn symplectic_weight(&self) -> u32 {
        (self.x_half() | self.z_half()).count_ones()
    }

    /// Exchanges the X and Z halves: `(a | b) -> (b | a)`.
    pub fn swap_halves(&self) -> BinVector2k {
        BinVector2k::from_halves(self.k, self.z_half(), self.x_half())
    }

    /// Sort key for the canonical error order: ascending symplectic weight,
    /// then lexicographic on the pattern read from position 1 (so the key's
    /// second component is the bit-reversed word).
    pub fn canonical_key(&self) -> (u32, u64) {
        (self.symplectic_weight(), self.bits.reverse_bits() >> (64 - 2 * self.k))
    }

    /// Parses `"0110|1000"` (the `|` between the halves is optional).
    pub fn parse(k: u32, s: &str) -> Result<Self, SympError> {
        if k < 1 || k > MAX_K {
            return Err(SympError::KOutOfRange { k });
        }
        let mut bits = 0u64;
        let mut idx = 0usize; // number of binary digits consumed
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' | '1' => {
                    if idx >= 2 * k as usize {
                        return Err(SympError::RowLength {
                            expected: 2 * k as usize,
                            got: s.chars().filter(|c| *c == '0' || *c == '1').count(),
                        });
                    }
                    if ch == '1' {
                        bits |= 1u64 << idx;
                    }
                    idx += 1;
                }
                '|' => {
                    if idx != k as usize {
                        return Err(SympError::MisplacedSeparator { pos });
                    }
                }
                c if c.is_whitespace() => {}
                c => return Err(SympError::BadChar { ch: c, pos }),
            }
        }
        if idx != 2 * k as usize {
            return Err(SympError::RowLength { expected: 2 * k as usize, got: idx });
        }
        Ok(BinVector2k { k, bits })
    }
}

impl std::ops::BitXor for BinVector2k {
    type Output = BinVector2k;
    fn bitxor(self, rhs: BinVector2k) -> BinVector2k {
        assert_eq!(self.k, rhs.k, "xor across different k");
        BinVector2k { k: self.k, bits: self.bits ^ rhs.bits }
    }
}

impl fmt::Display for BinVector2k {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=2 * self.k {
            if i == self.k + 1 {
                write!(f, "|")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinVector2k {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// GF(2) rank of a set of bit-vectors (each packed into a `u64`).
pub fn gf2_rank(words: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut w in words {
        for b in &basis {
            w = w.min(w ^ b);
        }
        if w != 0 {
            basis.push(w);
            // Keep the basis reduced so `min(w, w^b)` stays monotone.
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// True when the rows are independent and pairwise symplectic-orthogonal.
pub fn is_lagrangian(rows: &[BinVector2k]) -> bool {
    for (i, r) in rows.iter().enumerate() {
        for s in &rows[..i] {
            if r.symplectic_product(s) != 0 {
                return false;
            }
        }
    }
    gf2_rank(rows.iter().map(|r| r.bits())) == rows.len()
}

/// Completes a Lagrangian set `Z_1..Z_k` to a full symplectic basis: returns
/// `X_1..X_k` with `X_i . X_j = Z_i . Z_j = 0` and `X_i . Z_j = delta_ij`
/// (all products symplectic).  The construction is deterministic: a fixed
/// pivot order in the linear solve, then orthogonalization against the
/// already-fixed rows.
pub fn symplectic_complete(z_rows: &[BinVector2k]) -> Result<Vec<BinVector2k>, SympError> {
    if z_rows.is_empty() {
        return Ok(Vec::new());
    }
    let k = z_rows[0].k();
    if z_rows.len() != k as usize || !is_lagrangian(z_rows) {
        return Err(SympError::NotLagrangian);
    }

    // u . Z_l (symplectic) = u & swap(Z_l) (standard dot), so solving
    // M u^T = e_j with M rows swap(Z_l) yields the dual vector for slot j.
    // Reduce M once with tracked row operations, then read off a particular
    // solution for each unit right-hand side.
    let n = 2 * k as usize;
    let mut lhs: Vec<u64> = z_rows.iter().map(|z| z.swap_halves().bits()).collect();
    let mut ops: Vec<u64> = (0..z_rows.len()).map(|r| 1u64 << r).collect();
    let mut pivot_of_row: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for col in 0..n {
        let Some(row) = (next..lhs.len()).find(|&r| (lhs[r] >> col) & 1 == 1) else {
            continue;
        };
        lhs.swap(next, row);
        ops.swap(next, row);
        for r in 0..lhs.len() {
            if r != next && (lhs[r] >> col) & 1 == 1 {
                lhs[r] ^= lhs[next];
                ops[r] ^= ops[next];
            }
        }
        pivot_of_row.push(col);
        next += 1;
        if next == lhs.len() {
            break;
        }
    }
    debug_assert_eq!(next, k as usize, "Lagrangian rows must have full rank");

    let mut x_rows: Vec<BinVector2k> = Vec::with_capacity(k as usize);
    for j in 0..k as usize {
        let mut bits = 0u64;
        for (r, &col) in pivot_of_row.iter().enumerate() {
            if (ops[r] >> j) & 1 == 1 {
                bits |= 1u64 << col;
            }
        }
        let mut x = BinVector2k::new(k, bits);
        // Adding Z_l flips the product with X_l and nothing else, so this
        // pass zeroes the products with the already-fixed X rows.
        for l in 0..j {
            if x.symplectic_product(&x_rows[l]) == 1 {
                x = x ^ z_rows[l];
            }
        }
        x_rows.push(x);
    }

    for (i, x) in x_rows.iter().enumerate() {
        for (j, z) in z_rows.iter().enumerate() {
            debug_assert_eq!(x.symplectic_product(z), u8::from(i == j));
        }
        for other in &x_rows[..i] {
            debug_assert_eq!(x.symplectic_product(other), 0);
        }
    }
    Ok(x_rows)
}

/// Total number of nonzero error vectors of symplectic weight `<= dmax`:
/// `sum_j C(k, j) * 3^j`.
pub fn error_count(k: u32, dmax: u32) -> u64 {
    let mut total = 0u64;
    for j in 1..=dmax.min(k) {
        let mut c = 1u64;
        for t in 0..j as u64 {
            c = c * (k as u64 - t) / (t + 1);
        }
        total += c * 3u64.pow(j);
    }
    total
}

/// Enumerates all nonzero vectors of symplectic weight `<= dmax` in the
/// canonical order: ascending weight, then lexicographic on the bit pattern
/// read from position 1.
pub fn enumerate_errors(k: u32, dmax: u32) -> Result<ErrorEnumeration, SympError> {
    if k < 1 || k > MAX_K {
        return Err(SympError::KOutOfRange { k });
    }
    if dmax < 1 || dmax > k {
        return Err(SympError::DmaxOutOfRange { dmax, k });
    }
    Ok(ErrorEnumeration { k, dmax, weight: 0, batch: Vec::new(), next: 0 })
}

/// Iterator over weight-bounded error vectors; weight classes are generated
/// one at a time and sorted by the canonical key.
pub struct ErrorEnumeration {
    k: u32,
    dmax: u32,
    weight: u32,
    batch: Vec<BinVector2k>,
    next: usize,
}

impl ErrorEnumeration {
    fn fill_weight_class(&mut self) {
        self.batch.clear();
        self.next = 0;
        let k = self.k;
        let j = self.weight as usize;
        // All j-subsets of the k slots, each slot taking X, Z or Y.
        let mut slots: Vec<u32> = (0..j as u32).collect();
        loop {
            let mut pattern = vec![0u8; j]; // 0 = X, 1 = Z, 2 = Y
            loop {
                let mut a = 0u32;
                let mut b = 0u32;
                for (t, &slot) in slots.iter().enumerate() {
                    match pattern[t] {
                        0 => a |= 1 << slot,
                        1 => b |= 1 << slot,
                        _ => {
                            a |= 1 << slot;
                            b |= 1 << slot;
                        }
                    }
                }
                self.batch.push(BinVector2k::from_halves(k, a, b));
                // Next ternary pattern.
                let mut t = 0;
                loop {
                    if t == j {
                        break;
                    }
                    pattern[t] += 1;
                    if pattern[t] < 3 {
                        break;
                    }
                    pattern[t] = 0;
                    t += 1;
                }
                if t == j {
                    break;
                }
            }
            // Next slot combination in lexicographic order.
            let mut t = j;
            loop {
                if t == 0 {
                    return self.batch.sort_unstable_by_key(|v| v.canonical_key());
                }
                t -= 1;
                if slots[t] + 1 <= k - (j - t) as u32 {
                    slots[t] += 1;
                    for u in t + 1..j {
                        slots[u] = slots[u - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

impl Iterator for ErrorEnumeration {
    type Item = BinVector2k;

    fn next(&mut self) -> Option<BinVector2k> {
        while self.next >= self.batch.len() {
            if self.weight >= self.dmax {
                return None;
            }
            self.weight += 1;
            self.fill_weight_class();
        }
        let v = self.batch[self.next];
        self.next += 1;
        Some(v)
    }
}

/// A `k x 2k` binary matrix whose rows generate the code and whose columns
/// are read as `k`-bit integers with row 1 as the most significant bit.
#[derive(Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    k: u32,
    rows: Vec<BinVector2k>,
}

#[derive(Serialize, Deserialize)]
struct SymplecticWire {
    k: u32,
    rows: Vec<String>,
}

impl SymplecticMatrix {
    pub fn from_rows(rows: Vec<BinVector2k>) -> Result<Self, SympError> {
        let Some(first) = rows.first() else {
            return Err(SympError::WrongRowCount { expected: 1, got: 0 });
        };
        let k = first.k();
        if rows.len() != k as usize {
            return Err(SympError::WrongRowCount { expected: k as usize, got: rows.len() });
        }
        Ok(SymplecticMatrix { k, rows })
    }

    /// Builds the matrix from its `2k` column values `x_1..x_k,
    /// x_{k+1}..x_{2k}`, each a `k`-bit integer with row 1 as MSB.
    pub fn from_columns(k: u32, cols: &[u32]) -> Result<Self, SympError> {
        if k < 1 || k > MAX_K {
            return Err(SympError::KOutOfRange { k });
        }
        if cols.len() != 2 * k as usize {
            return Err(SympError::WrongColumnCount { expected: 2 * k as usize, got: cols.len() });
        }
        for &c in cols {
            if c >> k != 0 {
                return Err(SympError::ColumnOutOfRange { column: c, k });
            }
        }
        let mut rows = Vec::with_capacity(k as usize);
        for j in 1..=k {
            let mut bits = 0u64;
            for (idx, &c) in cols.iter().enumerate() {
                if (c >> (k - j)) & 1 == 1 {
                    bits |= 1u64 << idx;
                }
            }
            rows.push(BinVector2k::new(k, bits));
        }
        Ok(SymplecticMatrix { k, rows })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Row `j`, 1-based.
    pub fn row(&self, j: u32) -> BinVector2k {
        assert!(j >= 1 && j <= self.k, "row index {j} out of range");
        self.rows[(j - 1) as usize]
    }

    pub fn rows(&self) -> &[BinVector2k] {
        &self.rows
    }

    /// Column `i` (1-based, `1..=2k`) as a `k`-bit integer, row 1 = MSB.
    pub fn column(&self, i: u32) -> u32 {
        assert!(i >= 1 && i <= 2 * self.k, "column index {i} out of range");
        let mut v = 0u32;
        for j in 1..=self.k {
            v |= (self.rows[(j - 1) as usize].get(i) as u32) << (self.k - j);
        }
        v
    }

    /// All `2k` column values in order.
    pub fn columns(&self) -> Vec<u32> {
        (1..=2 * self.k).map(|i| self.column(i)).collect()
    }

    /// The image `A w^T` as a `k`-bit integer (row 1 = MSB): bit for row `j`
    /// is the GF(2) dot product of row `j` with `w`.
    pub fn mat_vec(&self, w: &BinVector2k) -> u32 {
        assert_eq!(w.k(), self.k, "vector length mismatch");
        let mut s = 0u32;
        for (r, row) in self.rows.iter().enumerate() {
            let bit = (row.bits() & w.bits()).count_ones() & 1;
            s |= bit << (self.k - 1 - r as u32);
        }
        s
    }

    /// True when the rows form a Lagrangian set (independent, pairwise
    /// symplectic-orthogonal).
    pub fn rows_lagrangian(&self) -> bool {
        is_lagrangian(&self.rows)
    }

    /// Parses `k` lines of `2k` binary digits (optional `|` separator).
    pub fn from_text(k: u32, text: &str) -> Result<Self, SympError> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.len() != k as usize {
            return Err(SympError::WrongRowCount { expected: k as usize, got: lines.len() });
        }
        let rows = lines
            .iter()
            .map(|l| BinVector2k::parse(k, l))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymplecticMatrix { k, rows })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }

    /// Row strings ("a|b" form), e.g. for embedding in a JSON bundle.
    pub fn row_strings(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.to_string()).collect()
    }

    pub fn from_row_strings(k: u32, rows: &[String]) -> Result<Self, SympError> {
        if rows.len() != k as usize {
            return Err(SympError::WrongRowCount { expected: k as usize, got: rows.len() });
        }
        let rows = rows
            .iter()
            .map(|l| BinVector2k::parse(k, l))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymplecticMatrix { k, rows })
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymplecticMatrix(k={})", self.k)
    }
}

impl Serialize for SymplecticMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SymplecticWire { k: self.k, rows: self.row_strings() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymplecticMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = SymplecticWire::deserialize(deserializer)?;
        SymplecticMatrix::from_row_strings(wire.k, &wire.rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: u32, s: &str) -> BinVector2k {
        BinVector2k::parse(k, s).unwrap()
    }

    /// The ((5,6,2)) generator matrix used as a fixture throughout.
    pub(crate) fn rains_matrix() -> SymplecticMatrix {
        SymplecticMatrix::from_columns(5, &[6, 12, 24, 17, 3, 14, 31, 28, 26, 22]).unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        let w = v(5, "00110|01111");
        assert_eq!(w.to_string(), "00110|01111");
        assert_eq!(BinVector2k::parse(5, "0011001111").unwrap(), w);
        assert_eq!(w.x_half(), 0b01100); // positions 3 and 4 set
        assert_eq!(w.z_half(), 0b11110);
        assert_eq!(w.get(1), 0);
        assert_eq!(w.get(3), 1);
    }

    #[test]
    fn parse_rejects_malformed_rows() {
        assert!(matches!(BinVector2k::parse(2, "01|0"), Err(SympError::RowLength { .. })));
        assert!(matches!(BinVector2k::parse(2, "01x0"), Err(SympError::BadChar { .. })));
        assert!(matches!(
            BinVector2k::parse(2, "0|100"),
            Err(SympError::MisplacedSeparator { .. })
        ));
    }

    #[test]
    fn symplectic_product_detects_anticommutation() {
        // Single-slot X and Z anticommute; X and X commute.
        let x = v(1, "1|0");
        let z = v(1, "0|1");
        let y = v(1, "1|1");
        assert_eq!(x.symplectic_product(&z), 1);
        assert_eq!(x.symplectic_product(&x), 0);
        assert_eq!(x.symplectic_product(&y), 1);
        assert_eq!(z.symplectic_product(&y), 1);
        // Disjoint slots always commute.
        let xi = v(2, "10|00");
        let iz = v(2, "00|01");
        assert_eq!(xi.symplectic_product(&iz), 0);
    }

    #[test]
    fn symplectic_weight_counts_touched_slots() {
        assert_eq!(v(2, "10|01").symplectic_weight(), 2);
        assert_eq!(v(2, "10|10").symplectic_weight(), 1);
        assert_eq!(v(2, "00|00").symplectic_weight(), 0);
    }

    #[test]
    fn swap_halves_exchanges_x_and_z() {
        let w = v(3, "110|001");
        assert_eq!(w.swap_halves(), v(3, "001|110"));
        assert_eq!(w.swap_halves().swap_halves(), w);
    }

    #[test]
    fn rank_and_lagrangian() {
        assert_eq!(gf2_rank([0b101u64, 0b011, 0b110]), 2);
        assert_eq!(gf2_rank([0b101u64, 0b011, 0b111]), 3);
        let a = rains_matrix();
        assert!(a.rows_lagrangian());
        // Perturbing one row breaks orthogonality.
        let mut rows = a.rows().to_vec();
        rows[0] = rows[0] ^ v(5, "00000|00001");
        assert!(!is_lagrangian(&rows));
        // A dependent set is not Lagrangian either.
        let dep = vec![v(2, "10|00"), v(2, "01|00"), v(2, "11|00")];
        assert!(!is_lagrangian(&dep[..]));
    }

    #[test]
    fn columns_read_msb_first() {
        let a = rains_matrix();
        assert_eq!(a.columns(), vec![6, 12, 24, 17, 3, 14, 31, 28, 26, 22]);
        assert_eq!(a.row(1).to_string(), "00110|01111");
        // Round trip through text.
        let b = SymplecticMatrix::from_text(5, &a.to_text()).unwrap();
        assert_eq!(b, a);
    }

    #[test]
    fn mat_vec_reads_single_columns() {
        let a = rains_matrix();
        // A single X on slot 3 picks out column 3; a single Z on slot 2
        // picks out column k + 2.
        assert_eq!(a.mat_vec(&v(5, "00100|00000")), 24);
        assert_eq!(a.mat_vec(&v(5, "00000|01000")), 31);
        // Images add over GF(2).
        assert_eq!(a.mat_vec(&v(5, "00100|01000")), 24 ^ 31);
    }

    #[test]
    fn error_count_matches_formula() {
        assert_eq!(error_count(5, 1), 15);
        assert_eq!(error_count(5, 2), 105);
        assert_eq!(error_count(1, 1), 3);
        assert_eq!(error_count(7, 1), 21);
    }

    #[test]
    fn enumeration_order_is_weight_then_lexicographic() {
        let errs: Vec<String> = enumerate_errors(1, 1).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(errs, ["0|1", "1|0", "1|1"]);
        let errs2: Vec<BinVector2k> = enumerate_errors(2, 2).unwrap().collect();
        assert_eq!(errs2.len() as u64, error_count(2, 2));
        // Weights never decrease, and keys strictly increase inside a class.
        let mut prev: Option<(u32, u64)> = None;
        for w in &errs2 {
            let key = w.canonical_key();
            if let Some(p) = prev {
                assert!(key > p, "enumeration out of order: {p:?} then {key:?}");
            }
            prev = Some(key);
        }
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        for k in 1..=3u32 {
            for dmax in 1..=k {
                let fast: Vec<u64> =
                    enumerate_errors(k, dmax).unwrap().map(|w| w.bits()).collect();
                let mut slow: Vec<BinVector2k> = (1..1u64 << (2 * k))
                    .map(|bits| BinVector2k::new(k, bits))
                    .filter(|w| w.symplectic_weight() <= dmax)
                    .collect();
                slow.sort_unstable_by_key(|w| w.canonical_key());
                assert_eq!(fast, slow.iter().map(|w| w.bits()).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn enumeration_rejects_bad_bounds() {
        assert!(matches!(enumerate_errors(3, 0), Err(SympError::DmaxOutOfRange { .. })));
        assert!(matches!(enumerate_errors(3, 4), Err(SympError::DmaxOutOfRange { .. })));
    }

    #[test]
    fn completion_of_standard_z_rows() {
        // Z rows e_{k+j} complete to X rows e_j.
        let k = 3;
        let z: Vec<BinVector2k> =
            (0..k).map(|j| BinVector2k::new(k, 1u64 << (k + j))).collect();
        let x = symplectic_complete(&z).unwrap();
        for (j, xj) in x.iter().enumerate() {
            assert_eq!(xj.bits(), 1u64 << j);
        }
    }

    #[test]
    fn completion_satisfies_gram_conditions() {
        let a = rains_matrix();
        let x = symplectic_complete(a.rows()).unwrap();
        for (i, xi) in x.iter().enumerate() {
            for (j, zj) in a.rows().iter().enumerate() {
                assert_eq!(xi.symplectic_product(zj), u8::from(i == j));
            }
            for xj in &x[..i] {
                assert_eq!(xi.symplectic_product(xj), 0);
            }
        }
    }

    #[test]
    fn completion_rejects_non_lagrangian_input() {
        let bad = vec![v(1, "1|0")]; // fine: k = 1, one row, X alone is Lagrangian
        assert!(symplectic_complete(&bad).is_ok());
        let worse = vec![v(2, "10|00"), v(2, "00|01")]; // X1 and Z1... slots differ
        // X on slot 1 and Z on slot 2 are orthogonal and independent, so this
        // is Lagrangian; a genuinely bad set anticommutes:
        assert!(symplectic_complete(&worse).is_ok());
        let anti = vec![v(2, "10|00"), v(2, "00|10")];
        assert_eq!(symplectic_complete(&anti), Err(SympError::NotLagrangian));
    }

    #[test]
    fn matrix_wire_round_trip() {
        let a = rains_matrix();
        let json = serde_json::to_string(&a).unwrap();
        let b: SymplecticMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(b, a);
    }
}
