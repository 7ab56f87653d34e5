//! Linear codes generated by unit-graph incidence matrices over F_q,
//! their duals, exact minimum-distance computation under an evaluation
//! budget, and a single-error syndrome decoder.

use crate::error::{Error, Result};
use crate::gf::GfMatrix;
use crate::graph::UnitGraph;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;

/// Default cap on codeword/candidate evaluations for minimum-distance
/// search. Beyond it the distance is reported as unknown, never guessed.
pub const DEFAULT_DISTANCE_BUDGET: u64 = 1 << 24;

/// Minimum distance of a code: exactly computed, out of budget, or
/// meaningless (zero-dimensional code).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDistance {
    Known(usize),
    Unknown,
    Undefined,
}

impl MinDistance {
    pub fn known(self) -> Option<usize> {
        match self {
            MinDistance::Known(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for MinDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDistance::Known(d) => write!(f, "{d}"),
            MinDistance::Unknown => write!(f, "unknown"),
            MinDistance::Undefined => write!(f, "undefined"),
        }
    }
}

impl Serialize for MinDistance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MinDistance::Known(d) => s.serialize_u64(*d as u64),
            MinDistance::Unknown => s.serialize_str("unknown"),
            MinDistance::Undefined => s.serialize_str("undefined"),
        }
    }
}

impl<'de> Deserialize<'de> for MinDistance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = MinDistance;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a weight, \"unknown\", or \"undefined\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<MinDistance, E> {
                Ok(MinDistance::Known(v as usize))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<MinDistance, E> {
                match v {
                    "unknown" => Ok(MinDistance::Unknown),
                    "undefined" => Ok(MinDistance::Undefined),
                    other => Err(E::custom(format!("bad distance {other:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// `[length, dimension, min_distance]` plus the standard capability bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub length: usize,
    pub dimension: usize,
    pub min_distance: MinDistance,
}

/// Error-detection and -correction capability: `(d - 1, floor((d-1)/2))`.
/// Undefined exactly when the distance is.
pub fn error_capabilities(params: &CodeParams) -> Result<(usize, usize)> {
    match params.min_distance {
        MinDistance::Known(d) => Ok((d - 1, (d - 1) / 2)),
        other => Err(Error::Domain(format!(
            "capabilities require a known distance, have {other}"
        ))),
    }
}

/// A linear code held as its canonical RREF generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    generator: GfMatrix,
    distance: MinDistance,
}

impl LinearCode {
    pub fn q(&self) -> u8 {
        self.generator.q()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn distance(&self) -> MinDistance {
        self.distance
    }

    pub fn generator(&self) -> &GfMatrix {
        &self.generator
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            length: self.length(),
            dimension: self.dimension(),
            min_distance: self.distance,
        }
    }

    /// Encode a message of `dimension` symbols.
    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.dimension() {
            return Err(Error::Domain(format!(
                "message length {} vs dimension {}",
                message.len(),
                self.dimension()
            )));
        }
        let q = self.q() as u32;
        let mut word = vec![0u8; self.length()];
        for (coeff, row) in message.iter().zip(self.generator.row_iter()) {
            if *coeff == 0 {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w = ((*w as u32 + *coeff as u32 * g as u32) % q) as u8;
            }
        }
        Ok(word)
    }
}

/// The `|V| x |E|` incidence matrix of a unit graph over F_q: column `e`
/// has 1-entries exactly at the endpoints of edge `e`.
pub fn incidence_matrix(g: &UnitGraph, q: u8) -> Result<GfMatrix> {
    let mut h = GfMatrix::zeros(q, g.vertex_count(), g.edge_count())?;
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        h.set(i as usize, e, 1);
        h.set(j as usize, e, 1);
    }
    Ok(h)
}

/// The code spanned by the rows of the incidence matrix. The minimum
/// distance is exact whenever a search strategy fits `budget`, else
/// unknown.
pub fn code_from_incidence(g: &UnitGraph, q: u8, budget: u64) -> Result<LinearCode> {
    let h = incidence_matrix(g, q)?;
    let (rref, pivots) = h.rref();
    let k = pivots.len();
    let rows: Vec<Vec<u8>> = (0..k).map(|i| rref.row(i).to_vec()).collect();
    let generator = GfMatrix::from_rows(q, h.cols(), rows)?;
    let distance = if k == 0 {
        MinDistance::Undefined
    } else if enumeration_fits(q, k, budget) {
        enumerate_min_weight(&generator)
    } else {
        min_weight_by_support_search(&generator.null_space_basis(), budget)
    };
    Ok(LinearCode { generator, distance })
}

/// The dual code: generator is the RREF'd null-space basis; the distance
/// uses codeword enumeration when the dual dimension fits the budget and
/// otherwise an increasing-weight search checked against the primal
/// generator.
pub fn dual_code(c: &LinearCode, budget: u64) -> LinearCode {
    let nb = c.generator.null_space_basis();
    let (generator, _) = nb.rref();
    debug_assert_eq!(generator.rows(), c.length() - c.dimension());
    let distance = dual_distance(c, budget);
    LinearCode { generator, distance }
}

/// Dual `[dimension, distance]` without materializing the dual generator
/// (the dual of a length-E code can have thousands of generator rows; the
/// verification sweep only needs its parameters).
pub fn dual_params(c: &LinearCode, budget: u64) -> (usize, MinDistance) {
    (c.length() - c.dimension(), dual_distance(c, budget))
}

fn dual_distance(c: &LinearCode, budget: u64) -> MinDistance {
    let dual_dim = c.length() - c.dimension();
    if dual_dim == 0 {
        return MinDistance::Undefined;
    }
    if enumeration_fits(c.q(), dual_dim, budget) {
        // Any basis spans the same codewords; skip the RREF.
        enumerate_min_weight(&c.generator.null_space_basis())
    } else {
        min_weight_by_support_search(&c.generator, budget)
    }
}

fn enumeration_fits(q: u8, k: usize, budget: u64) -> bool {
    let mut total = 1u128;
    for _ in 0..k {
        total = total.saturating_mul(q as u128);
        if total > budget as u128 + 1 {
            return false;
        }
    }
    total - 1 <= budget as u128
}

/// Exact minimum nonzero weight by iterating all `q^k - 1` codewords of
/// the row space; `Unknown` when that exceeds the budget.
pub fn min_weight_exhaustive(gen: &GfMatrix, budget: u64) -> MinDistance {
    if gen.rows() == 0 {
        return MinDistance::Undefined;
    }
    if !enumeration_fits(gen.q(), gen.rows(), budget) {
        return MinDistance::Unknown;
    }
    enumerate_min_weight(gen)
}

/// Odometer walk over all messages: each step adds one generator row per
/// carried digit, so the work per codeword is O(length).
fn enumerate_min_weight(gen: &GfMatrix) -> MinDistance {
    let q = gen.q();
    let k = gen.rows();
    let len = gen.cols();
    let total: u128 = (q as u128).pow(k as u32);
    let mut digits = vec![0u8; k];
    let mut word = vec![0u8; len];
    let mut best = usize::MAX;
    for _ in 1..total {
        let mut i = 0;
        loop {
            add_row(&mut word, gen.row(i), q);
            digits[i] += 1;
            if digits[i] == q {
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        let w = word.iter().filter(|&&e| e != 0).count();
        if w < best {
            best = w;
            if best == 1 {
                break;
            }
        }
    }
    MinDistance::Known(best)
}

fn add_row(word: &mut [u8], row: &[u8], q: u8) {
    for (w, &r) in word.iter_mut().zip(row) {
        let s = *w as u16 + r as u16;
        *w = if s >= q as u16 { (s - q as u16) as u8 } else { s as u8 };
    }
}

fn binomial(n: usize, w: usize) -> u128 {
    let mut acc = 1u128;
    for t in 0..w {
        acc = acc.saturating_mul((n - t) as u128) / (t + 1) as u128;
        if acc > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    acc
}

/// Exact minimum weight of `{x : parity * x = 0}` by increasing-weight
/// candidate search: supports of size w, first coefficient normalized
/// to 1. Stops with `Unknown` once a weight level would blow the budget;
/// any value it does return is exact because all lighter candidates were
/// exhausted first.
fn min_weight_by_support_search(parity: &GfMatrix, budget: u64) -> MinDistance {
    let q = parity.q();
    let len = parity.cols();
    let checks = parity.rows();
    let cols = parity.transpose();
    let mut spent: u128 = 0;

    // Weight 1: a zero column of the parity matrix.
    spent += len as u128;
    if (0..len).any(|i| cols.row(i).iter().all(|&e| e == 0)) {
        return MinDistance::Known(1);
    }

    // Weight 2: two dependent columns, found by normalizing each column so
    // its first nonzero entry is 1 and hashing.
    spent += len as u128;
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    for i in 0..len {
        let col = cols.row(i);
        let lead = col.iter().copied().find(|&e| e != 0).expect("no zero columns here");
        let inv = crate::gf::field_inv(lead, q);
        let normalized: Vec<u8> =
            col.iter().map(|&e| ((e as u16 * inv as u16) % q as u16) as u8).collect();
        if seen.insert(normalized, ()).is_some() {
            return MinDistance::Known(2);
        }
    }

    for w in 3..=len {
        let nominal = binomial(len, w).saturating_mul((q as u128 - 1).pow(w as u32 - 1));
        if spent.saturating_add(nominal) > budget as u128 {
            return MinDistance::Unknown;
        }
        spent += nominal;
        let mut coeffs = vec![1u8; w];
        let found = each_combination(len, w, |support| {
            coeffs.fill(1);
            loop {
                if in_null_space(&cols, checks, support, &coeffs, q) {
                    return true;
                }
                // Advance the coefficient odometer over positions 1..w.
                let mut t = 1;
                loop {
                    if t >= w {
                        return false;
                    }
                    coeffs[t] += 1;
                    if coeffs[t] == q {
                        coeffs[t] = 1;
                        t += 1;
                    } else {
                        break;
                    }
                }
            }
        });
        if found {
            return MinDistance::Known(w);
        }
    }
    // Nonzero codes always have some weight <= len; reaching here means the
    // null space is trivial.
    MinDistance::Undefined
}

fn in_null_space(cols: &GfMatrix, checks: usize, support: &[usize], coeffs: &[u8], q: u8) -> bool {
    for j in 0..checks {
        let mut s = 0u32;
        for (t, &i) in support.iter().enumerate() {
            s += coeffs[t] as u32 * cols.row(i)[j] as u32;
        }
        if s % q as u32 != 0 {
            return false;
        }
    }
    true
}

/// Visits all w-subsets of `0..n` in lexicographic order until the
/// callback returns true.
fn each_combination(n: usize, w: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if w > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = w;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - w {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..w {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Outcome of a decode attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeFlag {
    /// Zero syndrome: the received word is already a codeword.
    Clean,
    /// One symbol was repaired.
    Corrected,
    /// No single-error pattern explains the syndrome.
    Uncorrectable,
}

/// Syndrome decoder over the full table of single-error patterns.
pub struct SingleErrorDecoder {
    parity: GfMatrix,
    table: HashMap<Vec<u8>, (usize, u8)>,
}

impl SingleErrorDecoder {
    /// Requires a known distance with single-error-correction capability
    /// (d >= 3), which also guarantees the syndrome table is collision-free.
    pub fn new(code: &LinearCode) -> Result<Self> {
        let (_, correct) = error_capabilities(&code.params())?;
        if correct < 1 {
            return Err(Error::Domain(format!(
                "distance {} cannot correct single errors",
                code.distance
            )));
        }
        let parity = code.generator.null_space_basis();
        let q = parity.q();
        let mut table = HashMap::new();
        for pos in 0..parity.cols() {
            for coeff in 1..q {
                let mut e = vec![0u8; parity.cols()];
                e[pos] = coeff;
                let syndrome = parity.mul_vec(&e).expect("lengths match");
                let prev = table.insert(syndrome, (pos, coeff));
                debug_assert!(prev.is_none(), "syndrome collision with d >= 3");
            }
        }
        Ok(SingleErrorDecoder { parity, table })
    }

    /// Repairs up to one symbol. Returns the corrected word and what
    /// happened; `Uncorrectable` leaves the word untouched.
    pub fn decode(&self, received: &[u8]) -> Result<(Vec<u8>, DecodeFlag)> {
        let syndrome = self.parity.mul_vec(received)?;
        if syndrome.iter().all(|&s| s == 0) {
            return Ok((received.to_vec(), DecodeFlag::Clean));
        }
        match self.table.get(&syndrome) {
            Some(&(pos, coeff)) => {
                let q = self.parity.q();
                let mut word = received.to_vec();
                word[pos] = ((word[pos] as u16 + (q - coeff) as u16) % q as u16) as u8;
                Ok((word, DecodeFlag::Corrected))
            }
            None => Ok((received.to_vec(), DecodeFlag::Uncorrectable)),
        }
    }
}
