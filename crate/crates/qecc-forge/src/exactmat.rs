//! Exact dense matrices over the Gaussian dyadic rationals.
//!
//! Every matrix produced by this crate — Pauli operators, the projectors
//! `(I + E)/2` and anything built from them by sums and products — has
//! entries of the form `(a + b*i) / 2^p` with integer `a`, `b`.  A matrix is
//! stored as Gaussian-integer numerators over a single shared power-of-two
//! denominator, kept in canonical form (minimal `p`), so equality of
//! matrices is plain structural equality and the idempotence and
//! Hermiticity checks are exact, with no tolerances anywhere.
//!
//! Arithmetic is checked: numerators live in `i64`, products accumulate in
//! `i128`, and any overflow aborts with a panic instead of wrapping.  In
//! the intended regime (dimension `2^k` with `k <= 12`, entries produced by
//! projector algebra) numerators stay far below these limits.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest supported matrix dimension (`2^12`); callers that build matrices
/// from `k`-qubit operators must keep `k <= 12`.
pub const MAX_DIM: usize = 1 << 12;

const OVERFLOW_MSG: &str = "exact matrix arithmetic overflowed its 64-bit numerators";

/// A Gaussian integer `re + im*i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// Complex conjugate.
    pub fn conj(self) -> Self {
        GaussInt { re: self.re, im: self.im.checked_neg().expect(OVERFLOW_MSG) }
    }

    fn is_even(self) -> bool {
        self.re % 2 == 0 && self.im % 2 == 0
    }

    fn halve(self) -> Self {
        GaussInt { re: self.re / 2, im: self.im / 2 }
    }

    fn shl(self, p: u32) -> Self {
        let lift = |x: i64| {
            x.checked_shl(p)
                .filter(|&y| y >> p == x)
                .expect(OVERFLOW_MSG)
        };
        GaussInt { re: lift(self.re), im: lift(self.im) }
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re.checked_add(rhs.re).expect(OVERFLOW_MSG),
            im: self.im.checked_add(rhs.im).expect(OVERFLOW_MSG),
        }
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re.checked_sub(rhs.re).expect(OVERFLOW_MSG),
            im: self.im.checked_sub(rhs.im).expect(OVERFLOW_MSG),
        }
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, d) = (rhs.re as i128, rhs.im as i128);
        let re = a * c - b * d;
        let im = a * d + b * c;
        GaussInt {
            re: i64::try_from(re).ok().expect(OVERFLOW_MSG),
            im: i64::try_from(im).ok().expect(OVERFLOW_MSG),
        }
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: self.re.checked_neg().expect(OVERFLOW_MSG),
            im: self.im.checked_neg().expect(OVERFLOW_MSG),
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: i64| match im {
            1 => "i".to_string(),
            -1 => "-i".to_string(),
            v => format!("{v}i"),
        };
        match (self.re, self.im) {
            (0, 0) => write!(f, "0"),
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{}", im_part(im)),
            (re, im) if im < 0 => write!(f, "{re}-{}", im_part(-im).trim_start_matches('-')),
            (re, im) => write!(f, "{re}+{}", im_part(im)),
        }
    }
}

/// A Gaussian dyadic rational `num / 2^log2den` in canonical form
/// (`log2den` minimal), e.g. the trace of an [`ExactMatrix`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GaussScalar {
    num: GaussInt,
    log2den: u32,
}

impl GaussScalar {
    pub fn new(num: GaussInt, log2den: u32) -> Self {
        let mut s = GaussScalar { num, log2den };
        while s.log2den > 0 && s.num.is_even() {
            s.num = s.num.halve();
            s.log2den -= 1;
        }
        if s.num.is_zero() {
            s.log2den = 0;
        }
        s
    }

    pub fn from_integer(n: i64) -> Self {
        GaussScalar::new(GaussInt::new(n, 0), 0)
    }

    pub fn num(&self) -> GaussInt {
        self.num
    }

    pub fn log2den(&self) -> u32 {
        self.log2den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The scalar as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        (self.log2den == 0 && self.num.im == 0).then_some(self.num.re)
    }
}

impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2den == 0 {
            return write!(f, "{}", self.num);
        }
        let den = 1u64 << self.log2den;
        if self.num.re != 0 && self.num.im != 0 {
            write!(f, "({})/{den}", self.num)
        } else {
            write!(f, "{}/{den}", self.num)
        }
    }
}

/// Errors from matrix construction and deserialization.
///
/// Arithmetic on mismatched dimensions and numerator overflow are treated
/// as programming errors and panic; only malformed input data surfaces as a
/// `MatrixError`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// Entry list length does not equal `dim * dim`.
    WrongLength { dim: usize, expected: usize, got: usize },
    /// Dimension exceeds [`MAX_DIM`] or is zero.
    BadDimension { dim: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::WrongLength { dim, expected, got } => write!(
                f,
                "matrix of dimension {dim} needs {expected} entries, got {got}"
            ),
            MatrixError::BadDimension { dim } => {
                write!(f, "matrix dimension {dim} is outside 1..={MAX_DIM}")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

/// A square matrix of Gaussian-integer numerators over a shared
/// power-of-two denominator, always held in canonical (minimal
/// denominator) form.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    log2den: u32,
    entries: Vec<GaussInt>, // row-major
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    dim: usize,
    log2den: u32,
    entries: Vec<[i64; 2]>,
}

impl ExactMatrix {
    /// The zero matrix.
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= MAX_DIM, "matrix dimension {dim} out of range");
        ExactMatrix { dim, log2den: 0, entries: vec![GaussInt::ZERO; dim * dim] }
    }

    /// The identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = ExactMatrix::zero(dim);
        for r in 0..dim {
            m.entries[r * dim + r] = GaussInt::ONE;
        }
        m
    }

    /// Builds a matrix from row-major numerators over `1/2^log2den` and
    /// puts it in canonical form.
    pub fn from_entries(
        dim: usize,
        log2den: u32,
        entries: Vec<GaussInt>,
    ) -> Result<Self, MatrixError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(MatrixError::BadDimension { dim });
        }
        if entries.len() != dim * dim {
            return Err(MatrixError::WrongLength {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let mut m = ExactMatrix { dim, log2den, entries };
        m.canonicalize();
        Ok(m)
    }

    fn canonicalize(&mut self) {
        while self.log2den > 0 && self.entries.iter().all(|e| e.is_even()) {
            for e in &mut self.entries {
                *e = e.halve();
            }
            self.log2den -= 1;
        }
        if self.entries.iter().all(|e| e.is_zero()) {
            self.log2den = 0;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The canonical denominator exponent `p` in `num / 2^p`.
    pub fn log2den(&self) -> u32 {
        self.log2den
    }

    /// Numerator of entry `(r, c)` over the canonical denominator.
    pub fn entry(&self, r: usize, c: usize) -> GaussInt {
        self.entries[r * self.dim + c]
    }

    fn assert_same_dim(&self, other: &ExactMatrix) {
        assert_eq!(
            self.dim, other.dim,
            "matrix dimension mismatch: {} vs {}",
            self.dim, other.dim
        );
    }

    /// Numerators of both operands lifted to a common denominator.
    fn aligned(&self, other: &ExactMatrix) -> (u32, Vec<GaussInt>, Vec<GaussInt>) {
        let p = self.log2den.max(other.log2den);
        let lift = |m: &ExactMatrix| -> Vec<GaussInt> {
            let shift = p - m.log2den;
            m.entries.iter().map(|e| e.shl(shift)).collect()
        };
        (p, lift(self), lift(other))
    }

    /// Multiplies every entry by a Gaussian integer.
    pub fn scale(&self, s: GaussInt) -> ExactMatrix {
        let entries = self.entries.iter().map(|&e| e * s).collect();
        let mut m = ExactMatrix { dim: self.dim, log2den: self.log2den, entries };
        m.canonicalize();
        m
    }

    /// Divides the matrix by `2^p`.
    pub fn div_pow2(&self, p: u32) -> ExactMatrix {
        let mut m = self.clone();
        m.log2den = m.log2den.checked_add(p).expect(OVERFLOW_MSG);
        m.canonicalize();
        m
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ExactMatrix {
        let mut entries = vec![GaussInt::ZERO; self.dim * self.dim];
        for r in 0..self.dim {
            for c in 0..self.dim {
                entries[c * self.dim + r] = self.entries[r * self.dim + c].conj();
            }
        }
        ExactMatrix { dim: self.dim, log2den: self.log2den, entries }
    }

    pub fn trace(&self) -> GaussScalar {
        let mut t = GaussInt::ZERO;
        for r in 0..self.dim {
            t = t + self.entries[r * self.dim + r];
        }
        GaussScalar::new(t, self.log2den)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Exact test for `M = M^dagger`.
    pub fn is_hermitian(&self) -> bool {
        for r in 0..self.dim {
            for c in r..self.dim {
                if self.entries[r * self.dim + c] != self.entries[c * self.dim + r].conj() {
                    return false;
                }
            }
        }
        true
    }

    /// Exact test for `M * M = M`.
    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    pub fn to_json(&self) -> String {
        let wire = MatrixWire {
            dim: self.dim,
            log2den: self.log2den,
            entries: self.entries.iter().map(|e| [e.re, e.im]).collect(),
        };
        serde_json::to_string(&wire).expect("matrix serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let wire: MatrixWire = serde_json::from_str(s).map_err(|e| e.to_string())?;
        let entries = wire.entries.iter().map(|&[re, im]| GaussInt::new(re, im)).collect();
        ExactMatrix::from_entries(wire.dim, wire.log2den, entries).map_err(|e| e.to_string())
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.assert_same_dim(rhs);
        let (p, a, b) = self.aligned(rhs);
        let entries = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        let mut m = ExactMatrix { dim: self.dim, log2den: p, entries };
        m.canonicalize();
        m
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.assert_same_dim(rhs);
        let (p, a, b) = self.aligned(rhs);
        let entries = a.into_iter().zip(b).map(|(x, y)| x - y).collect();
        let mut m = ExactMatrix { dim: self.dim, log2den: p, entries };
        m.canonicalize();
        m
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        use rayon::prelude::*;

        self.assert_same_dim(rhs);
        let n = self.dim;
        let mut entries = vec![GaussInt::ZERO; n * n];
        // The i128 accumulators cannot overflow from i64 products alone; the
        // checked adds guard pathological inputs.
        entries
            .par_chunks_mut(n)
            .enumerate()
            .for_each(|(r, out_row)| {
                let a_row = &self.entries[r * n..(r + 1) * n];
                for (c, out) in out_row.iter_mut().enumerate() {
                    let mut re: i128 = 0;
                    let mut im: i128 = 0;
                    for (t, &a) in a_row.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let b = rhs.entries[t * n + c];
                        let (ar, ai) = (a.re as i128, a.im as i128);
                        let (br, bi) = (b.re as i128, b.im as i128);
                        re = re.checked_add(ar * br - ai * bi).expect(OVERFLOW_MSG);
                        im = im.checked_add(ar * bi + ai * br).expect(OVERFLOW_MSG);
                    }
                    *out = GaussInt {
                        re: i64::try_from(re).ok().expect(OVERFLOW_MSG),
                        im: i64::try_from(im).ok().expect(OVERFLOW_MSG),
                    };
                }
            });
        let mut m = ExactMatrix {
            dim: n,
            log2den: self.log2den.checked_add(rhs.log2den).expect(OVERFLOW_MSG),
            entries,
        };
        m.canonicalize();
        m
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(GaussInt::new(-1, 0))
    }
}

impl fmt::Display for ExactMatrix {
    /// Human-readable grid: an optional `1/2^p *` scale line followed by the
    /// integer numerators, column-aligned.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2den > 0 {
            writeln!(f, "1/{} *", 1u128 << self.log2den)?;
        }
        let rendered: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = rendered.iter().map(|s| s.len()).max().unwrap_or(1);
        for r in 0..self.dim {
            write!(f, "[")?;
            for c in 0..self.dim {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", rendered[r * self.dim + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix(dim={}, log2den={})", self.dim, self.log2den)
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixWire {
            dim: self.dim,
            log2den: self.log2den,
            entries: self.entries.iter().map(|e| [e.re, e.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        let entries = wire.entries.iter().map(|&[re, im]| GaussInt::new(re, im)).collect();
        ExactMatrix::from_entries(wire.dim, wire.log2den, entries)
            .map_err(serde::de::Error::custom)
    }
}
