//! Budgeted backtracking search for code matrices over a function's
//! shift set.
//!
//! For a fixed function `f` (with shift set `C`) and target distance
//! `d`, the engine assigns the matrix columns slot by slot in the order
//! `x_1, z_1, x_2, z_2, ..`, drawing every column from `C`.  As soon as
//! a value lands, every error pattern it completes (patterns confined to
//! assigned slots, at most `d - 1` slots wide) must have its image in
//! `C`; since `0` is never in a shift set, this covers the nonzero
//! requirement too.  Two sound prunes cut the tree:
//!
//! * the assigned columns must still be able to span `GF(2)^k` (the
//!   final matrix needs full row rank), and
//! * the running row-orthogonality defect `S = sum_i (x_i z_i^T XOR
//!   z_i x_i^T)` gains rank at most 2 per remaining slot, so
//!   `rank(S) <= 2 * remaining` is necessary.
//!
//! The search space is partitioned by the choice of `x_1`, each
//! partition gets an equal share of the node budget, partitions run in
//! parallel and their results merge in partition order — output is
//! deterministic for any thread count.  A node is one attempted value at
//! one position.  Solutions are re-verified through the standard
//! verification path before being emitted as certificates.

use crate::boolfn::{BooleanFunction, ComplementarySet, MAX_VARS};
use crate::qecc::{distance_ceiling, CodeCandidate, CodeCertificate};
use crate::symplectic::{gf2_rank, SymplecticMatrix, MAX_K};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use std::fmt;

/// How much of the space to explore per function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first solution in canonical order.
    First,
    /// Explore everything; report how many solutions exist.
    Count,
    /// Explore everything; report every solution.
    Exhaustive,
}

/// Where candidate functions come from.
#[derive(Debug, Clone)]
pub enum FunctionSource {
    /// Search columns for this one function.
    Given(BooleanFunction),
    /// Enumerate weight-`M` functions: monomial supports first (top
    /// variables first), then all remaining supports in ascending order.
    Enumerate { max_functions: Option<u64> },
    /// Sample supports uniformly with a seeded generator.
    Random { seed: u64, tries: u64 },
}

/// Full search specification.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub k: u32,
    /// Required function weight (code dimension).
    pub weight: usize,
    pub d: u32,
    pub mode: SearchMode,
    /// Node budget per function; a node is one attempted value.
    pub budget: u64,
    pub source: FunctionSource,
    /// Rank-based pruning (sound; disable only to cross-check).
    pub prune: bool,
    /// Require `x_1 <= x_2 <= ..` (ties broken on the z side).  Safe for
    /// existence questions only, so it is honored in First mode and
    /// ignored otherwise.
    pub symmetry_break: bool,
}

impl SearchSpec {
    /// Sensible defaults: first solution, a million nodes, both prunes.
    pub fn first(k: u32, weight: usize, d: u32, source: FunctionSource) -> SearchSpec {
        SearchSpec {
            k,
            weight,
            d,
            mode: SearchMode::First,
            budget: 1_000_000,
            source,
            prune: true,
            symmetry_break: true,
        }
    }
}

/// Errors from a malformed specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    BadSpec { reason: String },
    /// Rejected immediately: no code on `k` qubits has such a distance.
    DistanceBeyondCeiling { d: u32, max: u32 },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::BadSpec { reason } => write!(f, "bad search spec: {reason}"),
            SearchError::DistanceBeyondCeiling { d, max } => {
                write!(f, "distance {d} exceeds the ceiling {max}; nothing to search")
            }
        }
    }
}

impl std::error::Error for SearchError {}

/// Search outcome.
#[derive(Debug, Clone)]
pub struct SearchSummary {
    /// Re-verified codes, in discovery order.
    pub certificates: Vec<CodeCertificate>,
    pub functions_tried: u64,
    /// Nodes spent across all attempted functions.
    pub nodes_used: u64,
    /// True when the reported outcome is definitive for the explored
    /// sources: nothing was cut off by the budget, and (for enumeration)
    /// the function stream was drained.
    pub complete: bool,
}

/// Runs the search.
pub fn search_codes(spec: &SearchSpec) -> Result<SearchSummary, SearchError> {
    validate(spec)?;
    let symmetry = spec.symmetry_break && spec.mode == SearchMode::First;
    let mut stream = FunctionStream::new(spec)?;
    let mut certificates = Vec::new();
    let mut functions_tried = 0u64;
    let mut nodes_used = 0u64;
    let mut complete = true;
    const CHUNK: usize = 64;
    'outer: loop {
        let mut chunk = Vec::with_capacity(CHUNK);
        while chunk.len() < CHUNK {
            match stream.next() {
                Some(f) => chunk.push(f),
                None => break,
            }
        }
        if chunk.is_empty() {
            break;
        }
        let outcomes: Vec<FunctionOutcome> = chunk
            .par_iter()
            .map(|f| search_function(f, spec, symmetry))
            .collect();
        for (f, outcome) in chunk.iter().zip(outcomes) {
            functions_tried += 1;
            nodes_used += outcome.nodes;
            if !outcome.exhausted {
                complete = false;
            }
            for cols in &outcome.solutions {
                certificates.push(reverify(f, spec, cols));
            }
            if spec.mode == SearchMode::First && !certificates.is_empty() {
                break 'outer;
            }
        }
    }
    Ok(SearchSummary { certificates, functions_tried, nodes_used, complete })
}

fn validate(spec: &SearchSpec) -> Result<(), SearchError> {
    let k = spec.k;
    if k < 1 || k > MAX_K || k > MAX_VARS {
        return Err(SearchError::BadSpec { reason: format!("k = {k} out of range") });
    }
    if spec.weight < 1 || spec.weight > 1usize << k {
        return Err(SearchError::BadSpec {
            reason: format!("weight {} out of range for k = {k}", spec.weight),
        });
    }
    if spec.d < 2 {
        return Err(SearchError::BadSpec { reason: format!("distance {} below 2", spec.d) });
    }
    let max = distance_ceiling(k);
    if spec.d > max {
        return Err(SearchError::DistanceBeyondCeiling { d: spec.d, max });
    }
    if let FunctionSource::Given(f) = &spec.source {
        if f.m() != k {
            return Err(SearchError::BadSpec {
                reason: format!("function has {} variables, expected {k}", f.m()),
            });
        }
        if f.weight() != spec.weight {
            return Err(SearchError::BadSpec {
                reason: format!("function weight {} differs from spec weight {}", f.weight(), spec.weight),
            });
        }
    }
    Ok(())
}

fn reverify(f: &BooleanFunction, spec: &SearchSpec, cols: &[u32]) -> CodeCertificate {
    let a = SymplecticMatrix::from_columns(spec.k, cols)
        .expect("search emits well-formed column lists");
    let candidate = CodeCandidate::new(spec.k, spec.d, f.clone(), a, None)
        .expect("search emits well-formed candidates");
    candidate
        .verify()
        .expect("internal error: a search solution failed independent re-verification")
}

struct FunctionOutcome {
    solutions: Vec<Vec<u32>>,
    nodes: u64,
    exhausted: bool,
}

/// Searches all column assignments for one function.
fn search_function(f: &BooleanFunction, spec: &SearchSpec, symmetry: bool) -> FunctionOutcome {
    let cset = f.cset();
    let domain: Vec<u32> = cset.elements().to_vec();
    if domain.is_empty() {
        // No admissible columns at all: exhaustively empty at zero cost.
        return FunctionOutcome { solutions: Vec::new(), nodes: 0, exhausted: true };
    }
    let parts = domain.len() as u64;
    let base = spec.budget / parts;
    let extra = spec.budget % parts;
    let outcomes: Vec<FunctionOutcome> = (0..domain.len())
        .into_par_iter()
        .map(|idx| {
            let budget = base + u64::from((idx as u64) < extra);
            let mut engine = Engine {
                k: spec.k as usize,
                d: spec.d,
                cset: &cset,
                domain: &domain,
                first_only: spec.mode == SearchMode::First,
                symmetry,
                prune: spec.prune,
                budget,
                nodes: 0,
                over_budget: false,
                stop: false,
                cols: vec![0; 2 * spec.k as usize],
                sym: vec![0; spec.k as usize],
                basis: Vec::with_capacity(spec.k as usize),
                solutions: Vec::new(),
            };
            engine.assign(0, domain[idx]);
            FunctionOutcome {
                solutions: engine.solutions,
                nodes: engine.nodes,
                exhausted: !engine.over_budget,
            }
        })
        .collect();
    let mut solutions = Vec::new();
    let mut nodes = 0;
    let mut exhausted = true;
    for o in outcomes {
        nodes += o.nodes;
        exhausted &= o.exhausted;
        solutions.extend(o.solutions);
        if spec.mode == SearchMode::First && !solutions.is_empty() {
            solutions.truncate(1);
            // Later partitions were still explored (parallel), but the
            // first partition with a solution wins deterministically.
            break;
        }
    }
    FunctionOutcome { solutions, nodes, exhausted }
}

struct Engine<'a> {
    k: usize,
    d: u32,
    cset: &'a ComplementarySet,
    domain: &'a [u32],
    first_only: bool,
    symmetry: bool,
    prune: bool,
    budget: u64,
    nodes: u64,
    over_budget: bool,
    stop: bool,
    /// Position-indexed columns: `cols[i]` is `x_(i+1)`, `cols[k+i]` is
    /// `z_(i+1)`.
    cols: Vec<u32>,
    /// Row-orthogonality defect, one `k`-bit mask per row.
    sym: Vec<u32>,
    /// Reduced basis of assigned column values, descending.
    basis: Vec<u32>,
    solutions: Vec<Vec<u32>>,
}

impl<'a> Engine<'a> {
    /// Attempts `val` at position `p` (0-based interleaved order); when
    /// the value passes every check the state is expanded — that is the
    /// unit the node budget counts.
    fn assign(&mut self, p: usize, val: u32) {
        if self.stop || self.over_budget {
            return;
        }
        let slot = p / 2;
        let is_x = p % 2 == 0;
        if self.symmetry && slot > 0 {
            if is_x && val < self.cols[slot - 1] {
                return;
            }
            if !is_x && self.cols[slot] == self.cols[slot - 1] && val < self.cols[self.k + slot - 1]
            {
                return;
            }
        }
        if !self.images_ok(slot, is_x, val) {
            return;
        }
        let pos = if is_x { slot } else { self.k + slot };
        self.cols[pos] = val;
        let inserted = self.basis_insert(val);
        if self.prune {
            let remaining = 2 * self.k - p - 1;
            if self.basis.len() + remaining < self.k {
                self.basis_undo(inserted);
                return;
            }
        }
        if !is_x {
            self.sym_toggle(slot);
            if self.prune {
                let remaining_slots = self.k - 1 - slot;
                if gf2_rank(self.sym.iter().map(|&w| w as u64)) > 2 * remaining_slots {
                    self.sym_toggle(slot);
                    self.basis_undo(inserted);
                    return;
                }
            }
        }
        // The assignment survived every check: expand it.
        self.nodes += 1;
        if self.nodes > self.budget {
            self.over_budget = true;
        } else if p + 1 == 2 * self.k {
            if self.basis.len() == self.k && self.sym.iter().all(|&w| w == 0) {
                self.solutions.push(self.cols.clone());
                if self.first_only {
                    self.stop = true;
                }
            }
        } else {
            for i in 0..self.domain.len() {
                let next = self.domain[i];
                self.assign(p + 1, next);
                if self.stop || self.over_budget {
                    break;
                }
            }
        }
        if !is_x {
            self.sym_toggle(slot);
        }
        self.basis_undo(inserted);
    }

    /// Checks every error pattern newly completed by this assignment:
    /// patterns whose highest slot is `slot`, with this value as that
    /// slot's X (or Z / Y once the z side lands), extended by up to
    /// `d - 2` lower slots in every letter combination.  Membership in
    /// the shift set is the whole test; zero is never a member.
    fn images_ok(&self, slot: usize, is_x: bool, val: u32) -> bool {
        if is_x {
            self.extend_ok(val, slot, self.d - 2)
        } else {
            let x = self.cols[slot];
            self.extend_ok(val, slot, self.d - 2) && self.extend_ok(x ^ val, slot, self.d - 2)
        }
    }

    fn extend_ok(&self, image: u32, limit: usize, remaining: u32) -> bool {
        if !self.cset.contains(image) {
            return false;
        }
        if remaining == 0 {
            return true;
        }
        for t in (0..limit).rev() {
            let x = self.cols[t];
            let z = self.cols[self.k + t];
            for letter in [x, z, x ^ z] {
                if !self.extend_ok(image ^ letter, t, remaining - 1) {
                    return false;
                }
            }
        }
        true
    }

    fn basis_insert(&mut self, val: u32) -> Option<usize> {
        let mut v = val;
        for &b in &self.basis {
            v = v.min(v ^ b);
        }
        if v == 0 {
            return None;
        }
        let pos = self.basis.partition_point(|&b| b > v);
        self.basis.insert(pos, v);
        Some(pos)
    }

    fn basis_undo(&mut self, inserted: Option<usize>) {
        if let Some(pos) = inserted {
            self.basis.remove(pos);
        }
    }

    fn sym_toggle(&mut self, slot: usize) {
        let x = self.cols[slot];
        let z = self.cols[self.k + slot];
        for r in 0..self.k {
            let bit = 1u32 << (self.k - 1 - r);
            if x & bit != 0 {
                self.sym[r] ^= z;
            }
            if z & bit != 0 {
                self.sym[r] ^= x;
            }
        }
    }
}

/// Lazily yields candidate functions for the configured source.
struct FunctionStream {
    k: u32,
    weight: usize,
    yielded: u64,
    inner: StreamInner,
}

enum StreamInner {
    Given(Option<BooleanFunction>),
    Enumerate {
        max_functions: Option<u64>,
        monomials: std::vec::IntoIter<BooleanFunction>,
        combo: Option<Vec<u32>>,
    },
    Random { rng: ChaCha20Rng, remaining: u64 },
}

impl FunctionStream {
    fn new(spec: &SearchSpec) -> Result<FunctionStream, SearchError> {
        let inner = match &spec.source {
            FunctionSource::Given(f) => StreamInner::Given(Some(f.clone())),
            FunctionSource::Enumerate { max_functions } => {
                let monomials = monomial_functions(spec.k, spec.weight).into_iter();
                let combo = Some((0..spec.weight as u32).collect());
                StreamInner::Enumerate { max_functions: *max_functions, monomials, combo }
            }
            FunctionSource::Random { seed, tries } => StreamInner::Random {
                rng: ChaCha20Rng::seed_from_u64(*seed),
                remaining: *tries,
            },
        };
        Ok(FunctionStream { k: spec.k, weight: spec.weight, yielded: 0, inner })
    }

    fn next(&mut self) -> Option<BooleanFunction> {
        let k = self.k;
        let weight = self.weight;
        let f = match &mut self.inner {
            StreamInner::Given(slot) => slot.take(),
            StreamInner::Enumerate { max_functions, monomials, combo } => {
                if let Some(cap) = *max_functions {
                    if self.yielded >= cap {
                        return None;
                    }
                }
                loop {
                    if let Some(f) = monomials.next() {
                        break Some(f);
                    }
                    let slots = combo.as_mut()?;
                    let support: Vec<u32> = slots.clone();
                    let next_exists = advance_combination(slots, 1u32 << k);
                    if !next_exists {
                        *combo = None;
                    }
                    let f = BooleanFunction::from_support(k, &support)
                        .expect("combination entries are in range");
                    // Monomial supports were already yielded in phase one.
                    if weight.is_power_of_two() && f.is_monomial().is_some() {
                        continue;
                    }
                    break Some(f);
                }
            }
            StreamInner::Random { rng, remaining } => {
                if *remaining == 0 {
                    None
                } else {
                    *remaining -= 1;
                    Some(random_function(rng, k, weight))
                }
            }
        };
        if f.is_some() {
            self.yielded += 1;
        }
        f
    }
}

/// All monomial functions of the given weight, top variables first.
fn monomial_functions(k: u32, weight: usize) -> Vec<BooleanFunction> {
    if !weight.is_power_of_two() {
        return Vec::new();
    }
    let free = weight.trailing_zeros(); // weight = 2^free
    let fixed = k - free; // monomial on `fixed` variables
    let mut masks: Vec<u32> = Vec::new();
    let full = 1u32 << k;
    for mask in 0..full {
        if mask.count_ones() == fixed {
            masks.push(mask);
        }
    }
    masks.sort_unstable_by(|a, b| b.cmp(a));
    masks
        .into_iter()
        .map(|mask| {
            let support: Vec<u32> = (0..full).filter(|v| v & mask == mask).collect();
            BooleanFunction::from_support(k, &support).expect("support entries are in range")
        })
        .collect()
}

/// Advances a sorted combination over `0..total`; false when done.
fn advance_combination(slots: &mut [u32], total: u32) -> bool {
    let j = slots.len();
    let mut t = j;
    loop {
        if t == 0 {
            return false;
        }
        t -= 1;
        if slots[t] + 1 <= total - (j - t) as u32 {
            slots[t] += 1;
            for u in t + 1..j {
                slots[u] = slots[u - 1] + 1;
            }
            return true;
        }
    }
}

fn random_function(rng: &mut ChaCha20Rng, k: u32, weight: usize) -> BooleanFunction {
    let total = 1usize << k;
    let invert = weight > total / 2;
    let pick = if invert { total - weight } else { weight };
    let mut chosen = std::collections::HashSet::with_capacity(pick);
    while chosen.len() < pick {
        chosen.insert(rng.gen_range(0..total as u32));
    }
    let support: Vec<u32> = if invert {
        (0..total as u32).filter(|v| !chosen.contains(v)).collect()
    } else {
        let mut s: Vec<u32> = chosen.into_iter().collect();
        s.sort_unstable();
        s
    };
    BooleanFunction::from_support(k, &support).expect("sampled support is in range")
}
