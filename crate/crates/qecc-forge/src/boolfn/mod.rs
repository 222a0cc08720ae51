//! Boolean functions of `m` variables as packed truth vectors.
//!
//! A function `f : {0,1}^m -> {0,1}` is stored as its truth vector
//! `(y_0, .., y_{2^m - 1})` with `y_v = f(v)`; the point `v` encodes the
//! variable assignment through `v = sum_i v_i 2^{i-1}`, so variable `v_1`
//! is the least significant bit of the index and `v_m` the most
//! significant.  The module computes the three quantities the code
//! machinery is built on:
//!
//! * the autocorrelation `r(a) = sum_v (-1)^{f(v) + f(v XOR a)}`,
//!   via a fast transform that agrees exactly with the defining double
//!   loop;
//! * the complementary index set `Cset_f = { a : f and the shifted
//!   function f(. XOR a) have disjoint support }`, the ground truth being
//!   the disjoint-support test itself;
//! * the algebraic normal form (XOR of AND-monomials), via the binary
//!   Möbius transform, used to recognize the monomial functions that yield
//!   stabilizer codes.

mod anf;

pub use anf::{AnfPolynomial, ParseAnfError};

use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest supported variable count; truth vectors stay small enough for
/// exhaustive scans (`2^24` bits = 2 MiB).
pub const MAX_VARS: u32 = 24;

/// Errors from constructing Boolean functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoolFnError {
    MOutOfRange { m: u32 },
    IndexOutOfRange { index: u32, m: u32 },
    DuplicateIndex { index: u32 },
    /// Hex truth vector has the wrong digit count for `m`.
    HexLength { expected: usize, got: usize },
    HexChar { ch: char, pos: usize },
    /// Hex digits carry bits at or above `2^m`.
    HexExcessBits,
    /// Expression references `vN` with `N` outside `1..=m`.
    UnknownVariable { var: u32, m: u32 },
    Parse(ParseAnfError),
}

impl fmt::Display for BoolFnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolFnError::MOutOfRange { m } => {
                write!(f, "variable count {m} is outside 1..={MAX_VARS}")
            }
            BoolFnError::IndexOutOfRange { index, m } => {
                write!(f, "index {index} does not fit in {m} variables")
            }
            BoolFnError::DuplicateIndex { index } => {
                write!(f, "support index {index} appears more than once")
            }
            BoolFnError::HexLength { expected, got } => {
                write!(f, "truth vector needs {expected} hex digits, got {got}")
            }
            BoolFnError::HexChar { ch, pos } => {
                write!(f, "invalid hex digit {ch:?} at position {pos}")
            }
            BoolFnError::HexExcessBits => write!(f, "hex truth vector has bits beyond 2^m"),
            BoolFnError::UnknownVariable { var, m } => {
                write!(f, "variable v{var} is outside v1..=v{m}")
            }
            BoolFnError::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BoolFnError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            BoolFnError::Parse(e) => Some(e),
            _ => None,
        }
    }
}

impl From<ParseAnfError> for BoolFnError {
    fn from(e: ParseAnfError) -> Self {
        BoolFnError::Parse(e)
    }
}

/// A Boolean function of `m` variables as a packed truth vector with a
/// cached weight.
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    m: u32,
    words: Vec<u64>,
    weight: usize,
}

#[derive(Serialize, Deserialize)]
struct SupportWire {
    m: u32,
    support: Vec<u32>,
}

fn word_count(m: u32) -> usize {
    if m >= 6 {
        1usize << (m - 6)
    } else {
        1
    }
}

impl BooleanFunction {
    fn from_words(m: u32, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(m));
        debug_assert!(m >= 6 || words[0] >> (1u32 << m) == 0);
        let weight = words.iter().map(|w| w.count_ones() as usize).sum();
        BooleanFunction { m, words, weight }
    }

    /// The identically-zero function.
    pub fn zero(m: u32) -> Result<Self, BoolFnError> {
        if m < 1 || m > MAX_VARS {
            return Err(BoolFnError::MOutOfRange { m });
        }
        Ok(BooleanFunction::from_words(m, vec![0; word_count(m)]))
    }

    /// Builds a function from the set of points where it is 1.
    pub fn from_support(m: u32, support: &[u32]) -> Result<Self, BoolFnError> {
        let mut f = BooleanFunction::zero(m)?;
        for &v in support {
            if v >> m != 0 {
                return Err(BoolFnError::IndexOutOfRange { index: v, m });
            }
            let (w, b) = (v as usize >> 6, v & 63);
            if (f.words[w] >> b) & 1 == 1 {
                return Err(BoolFnError::DuplicateIndex { index: v });
            }
            f.words[w] |= 1u64 << b;
        }
        f.weight = support.len();
        Ok(f)
    }

    /// Parses an XOR-of-monomials expression such as
    /// `"v1*v2 ^ ~v3*v4 ^ 1"` (see [`AnfPolynomial`] for the grammar) and
    /// evaluates it into a truth vector.
    pub fn from_anf(m: u32, expr: &str) -> Result<Self, BoolFnError> {
        if m < 1 || m > MAX_VARS {
            return Err(BoolFnError::MOutOfRange { m });
        }
        let terms = anf::parse_expression(expr)?;
        let mut f = BooleanFunction::zero(m)?;
        let full = (1u32 << m) - 1;
        let var_mask = |vars: &[u32]| -> Result<u32, BoolFnError> {
            let mut mask = 0u32;
            for &var in vars {
                if var == 0 || var > m {
                    return Err(BoolFnError::UnknownVariable { var, m });
                }
                mask |= 1 << (var - 1);
            }
            Ok(mask)
        };
        for term in terms {
            match term {
                anf::Term::Zero => {}
                anf::Term::One => {
                    for v in 0..=full {
                        f.flip(v);
                    }
                }
                anf::Term::Product { pos, neg } => {
                    let pos = var_mask(&pos)?;
                    let neg = var_mask(&neg)?;
                    if pos & neg != 0 {
                        continue; // v and ~v in one term: identically false
                    }
                    // The term is 1 exactly on {pos | s : s subset of free}.
                    let free = full & !(pos | neg);
                    let mut s = free;
                    loop {
                        f.flip(pos | s);
                        if s == 0 {
                            break;
                        }
                        s = (s - 1) & free;
                    }
                }
            }
        }
        f.weight = f.words.iter().map(|w| w.count_ones() as usize).sum();
        Ok(f)
    }

    /// Parses the hex truth-vector form: `ceil(2^m / 4)` hex digits, the
    /// most significant digit of the string carrying the top indices
    /// (`y_{2^m - 1}` first).
    pub fn from_hex(m: u32, s: &str) -> Result<Self, BoolFnError> {
        if m < 1 || m > MAX_VARS {
            return Err(BoolFnError::MOutOfRange { m });
        }
        let expected = usize::max(1, (1usize << m) / 4);
        let s = s.trim();
        if s.len() != expected {
            return Err(BoolFnError::HexLength { expected, got: s.len() });
        }
        let mut words = vec![0u64; word_count(m)];
        for (pos, ch) in s.chars().enumerate() {
            let digit = ch.to_digit(16).ok_or(BoolFnError::HexChar { ch, pos })? as u64;
            // Digit at string position `pos` covers bits starting at
            // 4 * (expected - 1 - pos).
            let bit = 4 * (expected - 1 - pos);
            words[bit >> 6] |= digit << (bit & 63);
        }
        if m == 1 && words[0] >> 2 != 0 {
            return Err(BoolFnError::HexExcessBits);
        }
        Ok(BooleanFunction::from_words(m, words))
    }

    /// Hex truth-vector form (lowercase, fixed width, index-descending).
    pub fn to_hex(&self) -> String {
        let digits = usize::max(1, (1usize << self.m) / 4);
        let mut out = String::with_capacity(digits);
        for pos in 0..digits {
            let bit = 4 * (digits - 1 - pos);
            let nib = (self.words[bit >> 6] >> (bit & 63)) & 0xf;
            out.push(char::from_digit(nib as u32, 16).unwrap());
        }
        out
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of points where the function is 1.
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn value(&self, v: u32) -> bool {
        assert!(v >> self.m == 0, "point {v} outside 2^{} truth vector", self.m);
        (self.words[v as usize >> 6] >> (v & 63)) & 1 == 1
    }

    fn flip(&mut self, v: u32) {
        self.words[v as usize >> 6] ^= 1u64 << (v & 63);
    }

    /// The support as an ascending index list.
    pub fn support(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.weight);
        for (i, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                out.push((i as u32) * 64 + bits.trailing_zeros());
                bits &= bits - 1;
            }
        }
        out
    }

    /// The shifted function `g(v) = f(v XOR a)`.
    pub fn shift(&self, a: u32) -> Result<BooleanFunction, BoolFnError> {
        if a >> self.m != 0 {
            return Err(BoolFnError::IndexOutOfRange { index: a, m: self.m });
        }
        let mut words = self.words.clone();
        // XOR-shift by each set bit of `a`; bit j >= 6 permutes whole
        // words, bit j < 6 swaps halves inside every word.
        for j in 0..self.m {
            if (a >> j) & 1 == 0 {
                continue;
            }
            if j >= 6 {
                let stride = 1usize << (j - 6);
                for i in 0..words.len() {
                    if i & stride == 0 {
                        words.swap(i, i | stride);
                    }
                }
            } else {
                let s = 1u32 << j;
                let mask = match j {
                    0 => 0x5555_5555_5555_5555u64,
                    1 => 0x3333_3333_3333_3333,
                    2 => 0x0f0f_0f0f_0f0f_0f0f,
                    3 => 0x00ff_00ff_00ff_00ff,
                    4 => 0x0000_ffff_0000_ffff,
                    _ => 0x0000_0000_ffff_ffff,
                };
                for w in &mut words {
                    *w = ((*w & mask) << s) | ((*w >> s) & mask);
                }
            }
        }
        Ok(BooleanFunction { m: self.m, words, weight: self.weight })
    }

    /// The autocorrelation spectrum, computed with a Walsh–Hadamard
    /// transform: `r = WHT(WHT(t)^2) / 2^m` for `t_v = (-1)^{f(v)}`.
    /// Partial sums of the signed squares are bounded by their total
    /// `2^{2m} <= 2^48`, so the `i64` lanes cannot overflow under the
    /// [`MAX_VARS`] cap.
    pub fn autocorrelation(&self) -> Autocorrelation {
        let n = 1usize << self.m;
        let mut t: Vec<i64> = (0..n as u32).map(|v| if self.value(v) { -1 } else { 1 }).collect();
        wht(&mut t);
        for x in &mut t {
            *x *= *x;
        }
        wht(&mut t);
        for x in &mut t {
            *x >>= self.m;
        }
        Autocorrelation { m: self.m, values: t }
    }

    /// The complementary index set `{ a : support(f) and support(f(. XOR a))
    /// are disjoint }`, by the disjoint-support test itself.
    pub fn cset(&self) -> ComplementarySet {
        let n = 1u32 << self.m;
        let mut elements = Vec::new();
        let mut mask = vec![0u64; word_count(self.m)];
        let support = self.support();
        // A support larger than half the space always overlaps its shift.
        if self.weight <= (1usize << self.m) / 2 {
            for a in 0..n {
                if support.iter().all(|&s| !self.value(s ^ a)) {
                    elements.push(a);
                    mask[a as usize >> 6] |= 1u64 << (a & 63);
                }
            }
        }
        ComplementarySet { m: self.m, elements, mask }
    }

    /// The algebraic normal form, by the binary Möbius transform.
    pub fn anf(&self) -> AnfPolynomial {
        let mut words = self.words.clone();
        moebius(self.m, &mut words);
        let helper = BooleanFunction::from_words(self.m, words);
        AnfPolynomial::from_masks(self.m, helper.support())
    }

    /// `Some(variables)` when the ANF is a single monomial
    /// `v_{i_1} * .. * v_{i_r}` (the constant 1 counts, with an empty
    /// list); such functions generate stabilizer codes.
    pub fn is_monomial(&self) -> Option<Vec<u32>> {
        self.anf().as_monomial()
    }
}

/// In-place unnormalized Walsh–Hadamard transform.
fn wht(data: &mut [i64]) {
    let n = data.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (x, y) = (data[i], data[i + h]);
                data[i] = x + y;
                data[i + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// In-place binary Möbius transform on a packed truth vector (involution).
fn moebius(m: u32, words: &mut [u64]) {
    for j in 0..m {
        if j >= 6 {
            let stride = 1usize << (j - 6);
            for i in 0..words.len() {
                if i & stride != 0 {
                    words[i] ^= words[i ^ stride];
                }
            }
        } else {
            let s = 1u32 << j;
            let mask = match j {
                0 => 0x5555_5555_5555_5555u64,
                1 => 0x3333_3333_3333_3333,
                2 => 0x0f0f_0f0f_0f0f_0f0f,
                3 => 0x00ff_00ff_00ff_00ff,
                4 => 0x0000_ffff_0000_ffff,
                _ => 0x0000_0000_ffff_ffff,
            };
            for w in words.iter_mut() {
                *w ^= (*w & mask) << s;
            }
        }
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(m={}, weight={})", self.m, self.weight)
    }
}

impl Serialize for BooleanFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SupportWire { m: self.m, support: self.support() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BooleanFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = SupportWire::deserialize(deserializer)?;
        BooleanFunction::from_support(wire.m, &wire.support).map_err(serde::de::Error::custom)
    }
}

/// The autocorrelation spectrum `r(a)` of a Boolean function.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Autocorrelation {
    m: u32,
    values: Vec<i64>,
}

impl Autocorrelation {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self, a: u32) -> i64 {
        self.values[a as usize]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// The complementary index set of a Boolean function, with both a sorted
/// element list and a bitset for O(1) membership.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplementarySet {
    m: u32,
    elements: Vec<u32>,
    mask: Vec<u64>,
}

impl ComplementarySet {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: u32) -> bool {
        if a >> self.m != 0 {
            return false;
        }
        (self.mask[a as usize >> 6] >> (a & 63)) & 1 == 1
    }

    /// Ascending element list.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }
}
