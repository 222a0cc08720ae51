//! Exact construction and verification of quantum error-correcting codes
//! from Boolean functions.
//!
//! A Boolean function of `k` variables together with a `k x 2k` binary
//! matrix whose rows are independent and pairwise symplectic-orthogonal
//! determines a projector on `k` qubits.  The code subspace is the range
//! of that projector; correctability of all errors below a target
//! distance reduces to a purely combinatorial check: each low-weight
//! error pattern must map through the matrix to a nonzero index in the
//! function's disjoint-support shift set.
//!
//! The crate provides:
//!
//! * [`boolfn`] — truth-table functions, algebraic normal form,
//!   autocorrelation and the disjoint-support shift set;
//! * [`symplectic`] — binary symplectic vectors, matrices, rank and
//!   completion over GF(2), and canonical error enumeration;
//! * [`exactmat`] — exact dense matrices over Gaussian integers scaled
//!   by powers of two (no floating point anywhere);
//! * [`pauli`] — the finite matrix group generated by bit/phase flips,
//!   with exact phases and dense realizations;
//! * [`projlogic`] — Boolean logic on commuting projectors and the
//!   minterm evaluation of a function into a projector;
//! * [`qecc`] — code candidates, the combinatorial verifier, certificates,
//!   the matrix-level distance oracle and stabilizer extraction;
//! * [`codebook`] — constructors for the built-in code families and the
//!   extension/shrinking transforms;
//! * [`oqec`] — operator (subsystem) codes split into stabilizer, gauge
//!   and logical sectors, with certification;
//! * [`search`] — budgeted backtracking search for code matrices over a
//!   function's shift set.

pub mod boolfn;
pub mod cli;
pub mod codebook;
pub mod exactmat;
pub mod oqec;
pub mod pauli;
pub mod projlogic;
pub mod qecc;
pub mod search;
pub mod symplectic;

pub use boolfn::BooleanFunction;
pub use exactmat::{ExactMatrix, GaussInt, GaussScalar};
pub use pauli::PauliElement;
pub use projlogic::ProjectorFamily;
pub use symplectic::{BinVector2k, SymplecticMatrix};
