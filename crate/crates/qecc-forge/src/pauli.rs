//! The `k`-qubit Pauli group with exact phase tracking.
//!
//! A group element is a phase `i^t` together with a binary vector
//! `(a | b)`: the operator is the tensor product whose `i`-th factor
//! (qubit 1 leftmost, i.e. most significant) is `I`, `X`, `Z` or `Y`
//! according to `(a_i, b_i)` = (0,0), (1,0), (0,1), (1,1).  The `Y` here
//! is the Hermitian involution `[[0, i], [-i, 0]]`, so every phase-free
//! element squares to the identity exactly.
//!
//! Products follow the group law
//! `E_(a,b) E_(a',b') = (-1)^{b.a'} i^{a.b' + a'.b} E_(a+a', b+b')`
//! where the exponent of `i` is the *integer* sum of the two dot
//! products — reducing it mod 2 would corrupt the sign table.  Two
//! elements commute exactly when the symplectic product of their vectors
//! vanishes.

use crate::exactmat::{ExactMatrix, GaussInt};
use crate::symplectic::BinVector2k;
use std::fmt;

/// Dense matrices are only materialized up to this many qubits
/// (`2^12 = 4096` dimensions).
pub const MAX_DENSE_K: u32 = 12;

/// Errors from Pauli parsing and dense conversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PauliError {
    /// String is empty or has no operator letters.
    Empty,
    /// Phase prefix is not one of `+1`, `-1`, `+i`, `-i`.
    BadPhase,
    BadLetter { ch: char, pos: usize },
    /// Too many qubits for a string or vector.
    KOutOfRange { k: usize },
    /// Dense matrix request beyond [`MAX_DENSE_K`] qubits.
    MatrixTooLarge { k: u32 },
}

impl fmt::Display for PauliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PauliError::Empty => write!(f, "empty operator string"),
            PauliError::BadPhase => write!(f, "phase prefix must be +1, -1, +i or -i"),
            PauliError::BadLetter { ch, pos } => {
                write!(f, "invalid operator letter {ch:?} at position {pos}")
            }
            PauliError::KOutOfRange { k } => {
                write!(f, "{k} qubits is outside the supported range")
            }
            PauliError::MatrixTooLarge { k } => {
                write!(f, "dense matrices are limited to {MAX_DENSE_K} qubits, got {k}")
            }
        }
    }
}

impl std::error::Error for PauliError {}

/// A fourth root of unity `i^t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_i_exponent(e: u32) -> Phase {
        Phase((e % 4) as u8)
    }

    /// The exponent `t` in `i^t`, in `0..4`.
    pub fn i_exponent(&self) -> u8 {
        self.0
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    pub fn gauss(&self) -> GaussInt {
        match self.0 {
            0 => GaussInt::ONE,
            1 => GaussInt::I,
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn parse(s: &str) -> Result<Phase, PauliError> {
        match s {
            "+1" | "" => Ok(Phase::ONE),
            "+i" => Ok(Phase::I),
            "-1" => Ok(Phase::MINUS_ONE),
            "-i" => Ok(Phase::MINUS_I),
            _ => Err(PauliError::BadPhase),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

/// A Pauli group element: a phase times the operator described by a
/// binary symplectic vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliElement {
    phase: Phase,
    vec: BinVector2k,
}

impl PauliElement {
    pub fn identity(k: u32) -> Self {
        PauliElement { phase: Phase::ONE, vec: BinVector2k::zero(k) }
    }

    /// The phase-free element `E_(a|b)`.
    pub fn from_vec(vec: BinVector2k) -> Self {
        PauliElement { phase: Phase::ONE, vec }
    }

    pub fn new(phase: Phase, vec: BinVector2k) -> Self {
        PauliElement { phase, vec }
    }

    pub fn k(&self) -> u32 {
        self.vec.k()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn vec(&self) -> BinVector2k {
        self.vec
    }

    /// Group product, with the sign bookkeeping done on integers.
    pub fn mul(&self, rhs: &PauliElement) -> PauliElement {
        let (a1, b1) = (self.vec.x_half(), self.vec.z_half());
        let (a2, b2) = (rhs.vec.x_half(), rhs.vec.z_half());
        // Per slot the phase-free element is i^(a AND b) Z^b X^a, so the
        // product picks up i from each factor's own Y slots, a sign from
        // commuting X^a1 past Z^b2, and gives back i for each Y slot of
        // the result.
        let own = (a1 & b1).count_ones() + (a2 & b2).count_ones();
        let swap = 2 * (a1 & b2).count_ones();
        let result_y = ((a1 ^ a2) & (b1 ^ b2)).count_ones();
        let exponent = (own + swap + 3 * result_y) % 4;
        let phase = self
            .phase
            .mul(rhs.phase)
            .mul(Phase::from_i_exponent(exponent));
        PauliElement { phase, vec: self.vec ^ rhs.vec }
    }

    pub fn commutes(&self, rhs: &PauliElement) -> bool {
        self.vec.symplectic_product(&rhs.vec) == 0
    }

    /// Conjugate transpose: the operator part is Hermitian, so only the
    /// phase conjugates.
    pub fn dagger(&self) -> PauliElement {
        PauliElement { phase: self.phase.conj(), vec: self.vec }
    }

    /// Dense form as an exact matrix (one `i^t` entry per row/column).
    pub fn to_matrix(&self) -> Result<ExactMatrix, PauliError> {
        let k = self.vec.k();
        if k > MAX_DENSE_K {
            return Err(PauliError::MatrixTooLarge { k });
        }
        let dim = 1usize << k;
        // Qubit i occupies basis-index bit k - i (qubit 1 most significant).
        let mut flip = 0usize;
        for i in 1..=k {
            if (self.vec.x_half() >> (i - 1)) & 1 == 1 {
                flip |= 1 << (k - i);
            }
        }
        let mut entries = vec![GaussInt::ZERO; dim * dim];
        for c in 0..dim {
            let r = c ^ flip;
            let mut e = self.phase.i_exponent() as u32;
            for i in 1..=k {
                let q = ((c >> (k - i)) & 1) as u32;
                let a = (self.vec.x_half() >> (i - 1)) & 1;
                let b = (self.vec.z_half() >> (i - 1)) & 1;
                match (a, b) {
                    (0, 1) => e += 2 * q,
                    (1, 1) => e += 3 + 2 * q,
                    _ => {}
                }
            }
            entries[r * dim + c] = Phase::from_i_exponent(e).gauss();
        }
        Ok(ExactMatrix::from_entries(dim, 0, entries).expect("dimensions are consistent"))
    }

    /// Parses `"ZXXZI"` with an optional `+1`/`-1`/`+i`/`-i` prefix;
    /// letter `j` acts on qubit `j` (leftmost letter = qubit 1).
    pub fn parse(s: &str) -> Result<PauliElement, PauliError> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix('+').or(s.strip_prefix('-')) {
            if rest.is_empty() {
                return Err(PauliError::BadPhase);
            }
            (Phase::parse(&s[..2])?, &s[2..])
        } else {
            (Phase::ONE, s)
        };
        if body.is_empty() {
            return Err(PauliError::Empty);
        }
        let k = body.chars().count();
        if k > crate::symplectic::MAX_K as usize {
            return Err(PauliError::KOutOfRange { k });
        }
        let mut a = 0u32;
        let mut b = 0u32;
        for (idx, ch) in body.chars().enumerate() {
            let bit = 1u32 << idx;
            match ch.to_ascii_uppercase() {
                'I' => {}
                'X' => a |= bit,
                'Z' => b |= bit,
                'Y' => {
                    a |= bit;
                    b |= bit;
                }
                _ => return Err(PauliError::BadLetter { ch, pos: idx }),
            }
        }
        Ok(PauliElement { phase, vec: BinVector2k::from_halves(k as u32, a, b) })
    }
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != Phase::ONE {
            write!(f, "{}", self.phase)?;
        }
        for i in 1..=self.vec.k() {
            let a = (self.vec.x_half() >> (i - 1)) & 1;
            let b = (self.vec.z_half() >> (i - 1)) & 1;
            f.write_str(match (a, b) {
                (0, 0) => "I",
                (1, 0) => "X",
                (0, 1) => "Z",
                _ => "Y",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.phase, {
            let mut s = String::new();
            for i in 1..=self.vec.k() {
                let a = (self.vec.x_half() >> (i - 1)) & 1;
                let b = (self.vec.z_half() >> (i - 1)) & 1;
                s.push(match (a, b) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (0, 1) => 'Z',
                    _ => 'Y',
                });
            }
            s
        })
    }
}
