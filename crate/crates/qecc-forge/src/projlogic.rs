//! Projector logic: Boolean operations on commuting projectors and the
//! evaluation of a Boolean function into a projector.
//!
//! A family of generator projectors `P_i = (I + E_{y_i}) / 2` is valid
//! when the rows `y_i` are independent and pairwise symplectic-orthogonal;
//! the generators then commute, and every pattern of generators and their
//! complements multiplies out to a rank-one minterm projector.  A Boolean
//! function `f` of as many variables as there are generators evaluates to
//!
//! ```text
//! P_f = sum over v in support(f) of  prod_j  P_j^(bit j-1 of v)
//! ```
//!
//! with `P^1 = P` and `P^0 = I - P`: the orthogonal minterm expansion.
//! The trace of `P_f` equals the weight of `f` because each minterm has
//! trace 1.
//!
//! For commuting projectors `P`, `Q` the Boolean connectives are realized
//! exactly by [`meet`] (`PQ`), [`xor`] (`P + Q - 2PQ`), [`join`]
//! (`P + Q - PQ`) and [`tilde`] (`I - P`); the binary operations require
//! commuting inputs and all of them require idempotent inputs.

use crate::boolfn::BooleanFunction;
use crate::exactmat::ExactMatrix;
use crate::pauli::{PauliElement, PauliError};
use crate::symplectic::{is_lagrangian, BinVector2k};
use rayon::prelude::*;
use std::fmt;

/// Errors from projector-logic operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjLogicError {
    /// Family rows are not independent and pairwise symplectic-orthogonal.
    BadFamily,
    /// Family needs a dense representation beyond the qubit cap.
    DenseCap { k: u32 },
    /// Function variable count does not match the generator count.
    ArityMismatch { family: usize, function: u32 },
    /// A logic operand is not a projector.
    NotIdempotent,
    /// Binary logic operands do not commute.
    NonCommuting,
}

impl fmt::Display for ProjLogicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjLogicError::BadFamily => {
                write!(f, "generator rows must be independent and pairwise symplectic-orthogonal")
            }
            ProjLogicError::DenseCap { k } => {
                write!(f, "projector families are limited to {} qubits, got {k}", crate::pauli::MAX_DENSE_K)
            }
            ProjLogicError::ArityMismatch { family, function } => {
                write!(f, "family has {family} generators but the function uses {function} variables")
            }
            ProjLogicError::NotIdempotent => write!(f, "operand is not idempotent"),
            ProjLogicError::NonCommuting => write!(f, "operands do not commute"),
        }
    }
}

impl std::error::Error for ProjLogicError {}

impl From<PauliError> for ProjLogicError {
    fn from(e: PauliError) -> Self {
        match e {
            PauliError::MatrixTooLarge { k } => ProjLogicError::DenseCap { k },
            _ => ProjLogicError::BadFamily,
        }
    }
}

/// A family of commuting generator projectors `P_i = (I + E_{y_i}) / 2`
/// built from independent, pairwise symplectic-orthogonal rows.
pub struct ProjectorFamily {
    k: u32,
    rows: Vec<BinVector2k>,
    gens: Vec<ExactMatrix>,   // P_i
    cogens: Vec<ExactMatrix>, // I - P_i
}

impl ProjectorFamily {
    /// Builds the family; `rows[i - 1]` is the row of generator `P_i`.
    pub fn new(rows: Vec<BinVector2k>) -> Result<Self, ProjLogicError> {
        if rows.is_empty() || !is_lagrangian(&rows) {
            return Err(ProjLogicError::BadFamily);
        }
        let k = rows[0].k();
        let dim = match 1usize.checked_shl(k) {
            Some(d) if k <= crate::pauli::MAX_DENSE_K => d,
            _ => return Err(ProjLogicError::DenseCap { k }),
        };
        let identity = ExactMatrix::identity(dim);
        let mut gens = Vec::with_capacity(rows.len());
        let mut cogens = Vec::with_capacity(rows.len());
        for row in &rows {
            let e = PauliElement::from_vec(*row).to_matrix()?;
            let p = (&identity + &e).div_pow2(1);
            cogens.push(&identity - &p);
            gens.push(p);
        }
        Ok(ProjectorFamily { k, rows, gens, cogens })
    }

    /// Ambient qubit count.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of generators (the arity functions must match).
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one generator
    }

    /// Generator `P_i`, 1-based.
    pub fn generator(&self, i: usize) -> &ExactMatrix {
        &self.gens[i - 1]
    }

    /// Row of generator `P_i`, 1-based.
    pub fn generator_row(&self, i: usize) -> BinVector2k {
        self.rows[i - 1]
    }

    pub fn dim(&self) -> usize {
        1usize << self.k
    }

    /// Evaluates `f` into a projector by the orthogonal minterm sum.
    ///
    /// Support points are processed in ascending order with the factors
    /// multiplied top variable first, so consecutive points share partial
    /// products for their common leading bits; chunks of the support are
    /// summed in parallel (exact integer sums are order-independent).
    pub fn eval(&self, f: &BooleanFunction) -> Result<ExactMatrix, ProjLogicError> {
        let n = self.gens.len();
        if f.m() as usize != n {
            return Err(ProjLogicError::ArityMismatch { family: n, function: f.m() });
        }
        let support = f.support();
        if support.is_empty() {
            return Ok(ExactMatrix::zero(self.dim()));
        }
        let chunk = support.len().div_ceil(4 * rayon::current_num_threads()).max(8);
        let total = support
            .par_chunks(chunk)
            .map(|points| self.minterm_sum(points))
            .reduce_with(|a, b| &a + &b)
            .expect("support is nonempty");
        Ok(total)
    }

    /// Sum of minterm projectors over ascending support points, sharing
    /// partial products across common leading bits.
    fn minterm_sum(&self, points: &[u32]) -> ExactMatrix {
        let n = self.gens.len();
        let mut sum = ExactMatrix::zero(self.dim());
        // stack[t] = product of the factors for variables n, n-1, .., n-t.
        let mut stack: Vec<ExactMatrix> = Vec::with_capacity(n);
        let mut prev: Option<u32> = None;
        for &v in points {
            let keep = match prev {
                None => 0,
                Some(p) => {
                    // Factors above the highest differing bit are reusable.
                    let h = 31 - (v ^ p).leading_zeros(); // v > p, so v ^ p != 0
                    (n - 1 - h as usize).min(stack.len())
                }
            };
            stack.truncate(keep);
            while stack.len() < n {
                let j = n - stack.len(); // variable index, 1-based
                let factor = if (v >> (j - 1)) & 1 == 1 {
                    &self.gens[j - 1]
                } else {
                    &self.cogens[j - 1]
                };
                let next = match stack.last() {
                    None => factor.clone(),
                    Some(acc) => acc * factor,
                };
                stack.push(next);
            }
            sum = &sum + stack.last().expect("n >= 1 factors");
            prev = Some(v);
        }
        sum
    }
}

impl fmt::Debug for ProjectorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectorFamily(k={}, generators={})", self.k, self.gens.len())
    }
}

fn require_projector(p: &ExactMatrix) -> Result<(), ProjLogicError> {
    if p.is_idempotent() {
        Ok(())
    } else {
        Err(ProjLogicError::NotIdempotent)
    }
}

fn require_commuting(p: &ExactMatrix, q: &ExactMatrix) -> Result<ExactMatrix, ProjLogicError> {
    require_projector(p)?;
    require_projector(q)?;
    let pq = p * q;
    if pq != q * p {
        return Err(ProjLogicError::NonCommuting);
    }
    Ok(pq)
}

/// Conjunction of commuting projectors: `P AND Q = PQ`.
pub fn meet(p: &ExactMatrix, q: &ExactMatrix) -> Result<ExactMatrix, ProjLogicError> {
    require_commuting(p, q)
}

/// Symmetric difference of commuting projectors: `P XOR Q = P + Q - 2PQ`.
pub fn xor(p: &ExactMatrix, q: &ExactMatrix) -> Result<ExactMatrix, ProjLogicError> {
    let pq = require_commuting(p, q)?;
    Ok(&(&(p + q) - &pq) - &pq)
}

/// Disjunction of commuting projectors: `P OR Q = P + Q - PQ`.
pub fn join(p: &ExactMatrix, q: &ExactMatrix) -> Result<ExactMatrix, ProjLogicError> {
    let pq = require_commuting(p, q)?;
    Ok(&(p + q) - &pq)
}

/// Complement: `NOT P = I - P`.
pub fn tilde(p: &ExactMatrix) -> Result<ExactMatrix, ProjLogicError> {
    require_projector(p)?;
    Ok(&ExactMatrix::identity(p.dim()) - p)
}
