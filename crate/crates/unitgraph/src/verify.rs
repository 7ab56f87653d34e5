//! Per-n verification: measured graph and code values against the
//! closed-form predictions, verdict classification, range sweeps with CSV
//! output, and the CRT adjacency-isomorphism check.

use crate::codes::{code_from_incidence, dual_params, CodeParams, MinDistance};
use crate::error::{Error, Result};
use crate::graph::{expected_edge_count, Distance, GraphInvariants, UnitGraph};
use crate::ring::{crt_decompose, euler_phi, gcd, is_prime, RingSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;

/// Per-claim status. `Unverified` means the check ran out of budget, which
/// is never counted as a failure; `Mismatch` requires both a predicted and
/// a measured value, present and unequal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    Unverified,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Unverified => "unverified",
            Verdict::NotApplicable => "not-applicable",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub conj1: Verdict,
    pub conj2: Verdict,
    pub thm_edges: Verdict,
    pub thm_lambda: Verdict,
    pub dual_d: Verdict,
}

impl Verdicts {
    pub fn mismatch_count(&self) -> usize {
        [self.conj1, self.conj2, self.thm_edges, self.thm_lambda, self.dual_d]
            .iter()
            .filter(|&&v| v == Verdict::Mismatch)
            .count()
    }
}

/// Closed-form values applicable to this n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicted {
    pub edges: u64,
    pub diameter_bound: usize,
    pub edge_connectivity: Option<u64>,
    pub code: Option<CodeParams>,
    pub dual: Option<CodeParams>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measured {
    pub code: Option<CodeParams>,
    pub dual: Option<CodeParams>,
}

/// Everything the harness measures and predicts for one n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub n: u64,
    /// Prime-power factors of n, ascending by prime; empty for n = 1.
    pub factorization: Vec<u64>,
    /// Field the code was built over: 2 when n is odd, the chosen odd
    /// prime when n is even.
    pub q: u8,
    pub vertices: u64,
    pub graph: GraphInvariants,
    pub predicted: Predicted,
    pub measured: Measured,
    pub verdicts: Verdicts,
}

fn require_odd_prime(q: u8) -> Result<()> {
    if q < 3 || q % 2 == 0 || !is_prime(q as u64) {
        return Err(Error::Domain(format!("q must be an odd prime, got {q}")));
    }
    Ok(())
}

/// Diameter bound claimed for n: 2 when 2 is a unit mod n (n odd), else 3.
fn diameter_bound(n: u64) -> usize {
    if n % 2 == 1 {
        2
    } else {
        3
    }
}

fn predicted_code_pair(n: u64) -> (CodeParams, CodeParams) {
    let phi = euler_phi(n).expect("n >= 2");
    let (length, d) = if n % 2 == 1 {
        (((n - 1) * phi / 2) as usize, (phi - 1) as usize)
    } else {
        ((n * phi / 2) as usize, phi as usize)
    };
    let dim = (n - 1) as usize;
    let code = CodeParams { length, dimension: dim, min_distance: MinDistance::Known(d) };
    let dual_d = if n % 2 == 1 { 3 } else { 4 };
    let dual = CodeParams {
        length,
        dimension: length - dim,
        min_distance: MinDistance::Known(dual_d),
    };
    (code, dual)
}

/// Compare a measured parameter triple against a fully-known prediction.
fn compare_params(predicted: &CodeParams, measured: &CodeParams) -> Verdict {
    if predicted.length != measured.length || predicted.dimension != measured.dimension {
        return Verdict::Mismatch;
    }
    match measured.min_distance {
        MinDistance::Known(d) => {
            if MinDistance::Known(d) == predicted.min_distance {
                Verdict::Match
            } else {
                Verdict::Mismatch
            }
        }
        MinDistance::Unknown => Verdict::Unverified,
        MinDistance::Undefined => Verdict::Mismatch,
    }
}

/// Connectivity plus the parity-appropriate diameter bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conjecture1Check {
    pub connected: bool,
    pub bound: usize,
    pub diameter: Distance,
    pub verdict: Verdict,
}

pub fn verify_conjecture1(n: u64) -> Result<Conjecture1Check> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let g = UnitGraph::build(&RingSpec::new(vec![n])?)?;
    let connected = g.is_connected();
    let diameter = g.diameter();
    let bound = diameter_bound(n);
    let verdict = match diameter {
        Distance::Finite(d) if connected && d <= bound => Verdict::Match,
        _ => Verdict::Mismatch,
    };
    Ok(Conjecture1Check { connected, bound, diameter, verdict })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamComparison {
    pub predicted: CodeParams,
    pub measured: CodeParams,
    pub verdict: Verdict,
}

/// Measured code parameters against the conjectured closed form:
/// binary `[(n-1)phi/2, n-1, phi-1]` for odd n, q-ary `[n phi/2, n-1, phi]`
/// for even n.
pub fn verify_conjecture2(n: u64, q: u8, budget: u64) -> Result<ParamComparison> {
    if n < 2 {
        return Err(Error::Domain("conjectured code parameters need n >= 2".into()));
    }
    require_odd_prime(q)?;
    let used_q = if n % 2 == 1 { 2 } else { q };
    let g = UnitGraph::build(&RingSpec::new(vec![n])?)?;
    let code = code_from_incidence(&g, used_q, budget)?;
    let (predicted, _) = predicted_code_pair(n);
    let measured = code.params();
    Ok(ParamComparison { predicted, measured, verdict: compare_params(&predicted, &measured) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeTheoremCheck {
    pub code: ParamComparison,
    pub dual: ParamComparison,
    /// Verdict for the dual minimum-distance clause alone (3 for odd n,
    /// 4 for even n); `NotApplicable` when the dual is zero-dimensional.
    pub dual_d: Verdict,
}

/// Measured code and dual parameters against the closed forms for n's
/// factorization class (all odd prime powers, or odd prime powers plus
/// one power of two).
pub fn verify_code_theorems(n: u64, q: u8, budget: u64) -> Result<CodeTheoremCheck> {
    if n < 2 {
        return Err(Error::Domain("code theorems need n >= 2".into()));
    }
    require_odd_prime(q)?;
    let used_q = if n % 2 == 1 { 2 } else { q };
    let g = UnitGraph::build(&RingSpec::new(vec![n])?)?;
    let code = code_from_incidence(&g, used_q, budget)?;
    let (pred_code, pred_dual) = predicted_code_pair(n);
    let measured_code = code.params();
    let (dual_dim, dual_d) = dual_params(&code, budget);
    let measured_dual =
        CodeParams { length: code.length(), dimension: dual_dim, min_distance: dual_d };
    let dual_d_verdict = if dual_dim == 0 {
        Verdict::NotApplicable
    } else {
        match dual_d {
            MinDistance::Known(d) if MinDistance::Known(d) == pred_dual.min_distance => {
                Verdict::Match
            }
            MinDistance::Known(_) => Verdict::Mismatch,
            MinDistance::Unknown => Verdict::Unverified,
            MinDistance::Undefined => Verdict::Mismatch,
        }
    };
    Ok(CodeTheoremCheck {
        code: ParamComparison {
            predicted: pred_code,
            measured: measured_code,
            verdict: compare_params(&pred_code, &measured_code),
        },
        dual: ParamComparison {
            predicted: pred_dual,
            measured: measured_dual,
            verdict: if dual_dim == 0 {
                Verdict::NotApplicable
            } else {
                compare_params(&pred_dual, &measured_dual)
            },
        },
        dual_d: dual_d_verdict,
    })
}

/// True iff x -> (x mod p1^k1, ...) is a bijection that carries the
/// adjacency of G(Z_n) exactly onto the adjacency of the decomposed direct
/// sum, checked over all pairs.
pub fn crt_isomorphism_check(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::Domain("crt check needs n >= 2".into()));
    }
    if n > crate::graph::DEFAULT_VERTEX_BUDGET as u64 {
        return Err(Error::Resource(format!("n = {n} exceeds the vertex budget")));
    }
    let spec = crt_decompose(n)?;
    let moduli = spec.moduli().to_vec();
    let tables = RingSpec::new(moduli.clone())?;
    let tables = tables.unit_tables();

    // Bijectivity via the mixed-radix index of each image.
    let mut seen = vec![false; n as usize];
    for x in 0..n {
        let idx = spec.index_of(&crate::ring::crt_map(x, n)?) as usize;
        if seen[idx] {
            return Ok(false);
        }
        seen[idx] = true;
    }

    // Edge-for-edge agreement: x + y a unit mod n iff componentwise unit.
    for x in 0..n {
        for y in (x + 1)..n {
            let s = (x + y) % n;
            let direct = gcd(s, n) == 1;
            let mapped = moduli
                .iter()
                .zip(&tables)
                .all(|(&m, table)| table[(s % m) as usize]);
            if direct != mapped {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Builds the full report for one n. `q` is the odd prime used for even n
/// (odd n always uses the binary code).
pub fn report(n: u64, q: u8, budget: u64) -> Result<Report> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    require_odd_prime(q)?;
    let spec = RingSpec::new(vec![n])?;
    let g = UnitGraph::build(&spec)?;
    let graph = g.analyze();
    let factorization: Vec<u64> =
        if n == 1 { Vec::new() } else { crt_decompose(n)?.moduli().to_vec() };
    let used_q = if n % 2 == 1 { 2 } else { q };

    let predicted_edges = expected_edge_count(&spec);
    let bound = diameter_bound(n);
    let (predicted_lambda, predicted_code, predicted_dual) = if n == 1 {
        (None, None, None)
    } else {
        let phi = euler_phi(n)?;
        let lambda = if n % 2 == 1 { phi - 1 } else { phi };
        let (c, d) = predicted_code_pair(n);
        (Some(lambda), Some(c), Some(d))
    };

    let (measured_code, measured_dual) = if n == 1 {
        (None, None)
    } else {
        let code = code_from_incidence(&g, used_q, budget)?;
        let (dual_dim, dual_d) = dual_params(&code, budget);
        let dual =
            CodeParams { length: code.length(), dimension: dual_dim, min_distance: dual_d };
        (Some(code.params()), Some(dual))
    };

    let conj1 = match graph.diameter {
        Distance::Finite(d) if graph.connected && d <= bound => Verdict::Match,
        _ => Verdict::Mismatch,
    };
    let thm_edges =
        if graph.edge_count as u64 == predicted_edges { Verdict::Match } else { Verdict::Mismatch };
    let thm_lambda = match predicted_lambda {
        None => Verdict::NotApplicable,
        Some(l) => {
            if graph.edge_connectivity as u64 == l {
                Verdict::Match
            } else {
                Verdict::Mismatch
            }
        }
    };
    let conj2 = match (&predicted_code, &measured_code) {
        (Some(p), Some(m)) => compare_params(p, m),
        _ => Verdict::NotApplicable,
    };
    let dual_d = match (&predicted_dual, &measured_dual) {
        (Some(p), Some(m)) if m.dimension > 0 => match m.min_distance {
            MinDistance::Known(d) => {
                if MinDistance::Known(d) == p.min_distance {
                    Verdict::Match
                } else {
                    Verdict::Mismatch
                }
            }
            MinDistance::Unknown => Verdict::Unverified,
            MinDistance::Undefined => Verdict::Mismatch,
        },
        _ => Verdict::NotApplicable,
    };

    Ok(Report {
        n,
        factorization,
        q: used_q,
        vertices: spec.cardinality(),
        graph,
        predicted: Predicted {
            edges: predicted_edges,
            diameter_bound: bound,
            edge_connectivity: predicted_lambda,
            code: predicted_code,
            dual: predicted_dual,
        },
        measured: Measured { code: measured_code, dual: measured_dual },
        verdicts: Verdicts { conj1, conj2, thm_edges, thm_lambda, dual_d },
    })
}

impl Report {
    /// JSON with lexicographically sorted keys, stable across runs.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value prints");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad report JSON: {e}")))
    }

    /// Human-readable table.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let fact = factorization_string(self.n, &self.factorization);
        s.push_str(&format!("n = {} = {}   (q = {})\n", self.n, fact, self.q));
        s.push_str(&format!(
            "graph     vertices={} edges={} connected={} diameter={} girth={} bipartite={}\n",
            self.vertices,
            self.graph.edge_count,
            self.graph.connected,
            self.graph.diameter,
            self.graph.girth,
            self.graph.bipartite
        ));
        s.push_str(&format!(
            "          min_degree={} max_degree={} edge_connectivity={}\n",
            self.graph.min_degree, self.graph.max_degree, self.graph.edge_connectivity
        ));
        s.push_str(&format!(
            "expected  edges={} diameter<={} edge_connectivity={}\n",
            self.predicted.edges,
            self.predicted.diameter_bound,
            self.predicted
                .edge_connectivity
                .map_or("n/a".to_string(), |l| l.to_string())
        ));
        let fmt_params = |p: &Option<CodeParams>| match p {
            Some(p) => format!("[{}, {}, {}]", p.length, p.dimension, p.min_distance),
            None => "not-applicable".to_string(),
        };
        s.push_str(&format!(
            "code      measured {}  expected {}\n",
            fmt_params(&self.measured.code),
            fmt_params(&self.predicted.code)
        ));
        s.push_str(&format!(
            "dual      measured {}  expected {}\n",
            fmt_params(&self.measured.dual),
            fmt_params(&self.predicted.dual)
        ));
        s.push_str(&format!(
            "verdicts  conj1={} conj2={} edges={} lambda={} dual_d={}\n",
            self.verdicts.conj1,
            self.verdicts.conj2,
            self.verdicts.thm_edges,
            self.verdicts.thm_lambda,
            self.verdicts.dual_d
        ));
        s
    }

    pub fn csv_row(&self) -> String {
        let opt = |field: Option<String>| field.unwrap_or_else(|| "na".to_string());
        let code = self.measured.code.as_ref();
        let dual = self.measured.dual.as_ref();
        [
            self.n.to_string(),
            factorization_string(self.n, &self.factorization),
            self.q.to_string(),
            self.vertices.to_string(),
            self.graph.edge_count.to_string(),
            self.graph.connected.to_string(),
            self.graph.diameter.to_string(),
            self.graph.girth.to_string(),
            self.graph.bipartite.to_string(),
            self.graph.min_degree.to_string(),
            self.graph.edge_connectivity.to_string(),
            opt(code.map(|c| c.length.to_string())),
            opt(code.map(|c| c.dimension.to_string())),
            opt(code.map(|c| c.min_distance.to_string())),
            opt(dual.map(|d| d.dimension.to_string())),
            opt(dual.map(|d| d.min_distance.to_string())),
            self.verdicts.conj1.to_string(),
            self.verdicts.conj2.to_string(),
            self.verdicts.thm_edges.to_string(),
            self.verdicts.thm_lambda.to_string(),
            self.verdicts.dual_d.to_string(),
        ]
        .join(",")
    }
}

/// `12 -> "2^2*3"`, `7 -> "7"`, `1 -> "1"`. No commas, so cells never need
/// CSV quoting.
pub fn factorization_string(n: u64, prime_powers: &[u64]) -> String {
    if n == 1 {
        return "1".to_string();
    }
    prime_powers
        .iter()
        .map(|&pp| {
            let (p, k) = crate::ring::factorize(pp)[0];
            if k == 1 {
                p.to_string()
            } else {
                format!("{p}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub const CSV_HEADER: &str = "n,factorization,q,vertices,edges,connected,diameter,girth,\
bipartite,min_degree,edge_connectivity,code_len,code_dim,code_d,dual_dim,dual_d,\
verdict_conj1,verdict_conj2,verdict_thm_edges,verdict_thm_lambda,verdict_dual_d";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSummary {
    pub rows: usize,
    pub mismatches: usize,
}

/// One CSV row per n in `[from, to]`, ascending; n values are analyzed in
/// parallel but written in order, so the output is byte-identical across
/// runs and thread counts.
pub fn sweep<W: Write>(from: u64, to: u64, q: u8, budget: u64, out: &mut W) -> Result<SweepSummary> {
    if from == 0 || from > to {
        return Err(Error::Domain(format!("bad sweep range {from}..{to}")));
    }
    require_odd_prime(q)?;
    let reports: Vec<Result<Report>> =
        (from..=to).into_par_iter().map(|n| report(n, q, budget)).collect();
    writeln!(out, "{CSV_HEADER}")?;
    let mut mismatches = 0usize;
    let mut rows = 0usize;
    for r in reports {
        let r = r?;
        mismatches += r.verdicts.mismatch_count();
        writeln!(out, "{}", r.csv_row())?;
        rows += 1;
    }
    Ok(SweepSummary { rows, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u64 = crate::codes::DEFAULT_DISTANCE_BUDGET;

    #[test]
    fn conjecture1_examples() {
        let c = verify_conjecture1(15).unwrap();
        assert_eq!((c.connected, c.bound, c.diameter), (true, 2, Distance::Finite(2)));
        assert_eq!(c.verdict, Verdict::Match);

        let c = verify_conjecture1(12).unwrap();
        assert_eq!((c.bound, c.diameter), (3, Distance::Finite(3)));
        assert_eq!(c.verdict, Verdict::Match);

        let c = verify_conjecture1(2).unwrap();
        assert_eq!((c.bound, c.diameter), (3, Distance::Finite(1)));
        assert_eq!(c.verdict, Verdict::Match);

        let c = verify_conjecture1(1).unwrap();
        assert_eq!((c.bound, c.diameter), (2, Distance::Finite(0)));
        assert_eq!(c.verdict, Verdict::Match);
    }

    #[test]
    fn conjecture2_examples() {
        let c = verify_conjecture2(9, 3, BUDGET).unwrap();
        assert_eq!(c.predicted.length, 24);
        assert_eq!(c.predicted.dimension, 8);
        assert_eq!(c.predicted.min_distance, MinDistance::Known(5));
        assert_eq!(c.measured, c.predicted);
        assert_eq!(c.verdict, Verdict::Match);

        let c = verify_conjecture2(10, 3, BUDGET).unwrap();
        assert_eq!(
            c.measured,
            CodeParams { length: 20, dimension: 9, min_distance: MinDistance::Known(4) }
        );
        assert_eq!(c.verdict, Verdict::Match);

        let c = verify_conjecture2(6, 3, BUDGET).unwrap();
        assert_eq!(c.predicted.length, 6);
        assert_eq!(c.predicted.dimension, 5);
        assert_eq!(c.predicted.min_distance, MinDistance::Known(2));
        assert_eq!(c.verdict, compare_params(&c.predicted, &c.measured));
    }

    #[test]
    fn code_theorems_examples() {
        let c = verify_code_theorems(15, 3, BUDGET).unwrap();
        assert_eq!(
            c.dual.measured,
            CodeParams { length: 56, dimension: 42, min_distance: MinDistance::Known(3) }
        );
        assert_eq!(c.dual.verdict, Verdict::Match);
        assert_eq!(c.dual_d, Verdict::Match);

        let c = verify_code_theorems(12, 3, BUDGET).unwrap();
        assert_eq!(c.dual.predicted.dimension, 13);
        assert_eq!(c.dual.measured.min_distance, MinDistance::Known(4));
        assert_eq!(c.dual_d, Verdict::Match);

        let c = verify_code_theorems(7, 3, BUDGET).unwrap();
        assert_eq!(
            c.code.predicted,
            CodeParams { length: 18, dimension: 6, min_distance: MinDistance::Known(5) }
        );
        assert_eq!(c.code.verdict, compare_params(&c.code.predicted, &c.code.measured));

        // The hexagon boundary case: measured dual distance 6 vs claimed 4.
        let c = verify_code_theorems(6, 3, BUDGET).unwrap();
        assert_eq!(c.dual.measured.min_distance, MinDistance::Known(6));
        assert_eq!(c.dual_d, Verdict::Mismatch);

        // Zero-dimensional dual at n = 3.
        let c = verify_code_theorems(3, 3, BUDGET).unwrap();
        assert_eq!(c.dual.measured.dimension, 0);
        assert_eq!(c.dual_d, Verdict::NotApplicable);
    }

    #[test]
    fn crt_isomorphism_examples() {
        assert!(crt_isomorphism_check(12).unwrap());
        assert!(crt_isomorphism_check(7).unwrap());
        assert!(crt_isomorphism_check(90).unwrap());
        assert!(crt_isomorphism_check(1).is_err());
    }

    #[test]
    fn report_n15() {
        let r = report(15, 3, BUDGET).unwrap();
        assert_eq!(r.q, 2);
        assert_eq!(r.factorization, vec![3, 5]);
        assert_eq!(r.graph.diameter, Distance::Finite(2));
        assert_eq!(r.graph.girth, Distance::Finite(3));
        assert_eq!(
            r.measured.code.unwrap(),
            CodeParams { length: 56, dimension: 14, min_distance: MinDistance::Known(7) }
        );
        assert_eq!(
            r.measured.dual.unwrap(),
            CodeParams { length: 56, dimension: 42, min_distance: MinDistance::Known(3) }
        );
        assert_eq!(r.verdicts.mismatch_count(), 0);
    }

    #[test]
    fn report_n1_is_degenerate() {
        let r = report(1, 3, BUDGET).unwrap();
        assert_eq!(r.factorization, Vec::<u64>::new());
        assert!(r.measured.code.is_none());
        assert_eq!(r.verdicts.conj2, Verdict::NotApplicable);
        assert_eq!(r.verdicts.thm_lambda, Verdict::NotApplicable);
        assert_eq!(r.verdicts.dual_d, Verdict::NotApplicable);
        assert_eq!(r.verdicts.conj1, Verdict::Match);
        assert_eq!(r.verdicts.thm_edges, Verdict::Match);
    }

    #[test]
    fn report_n6_flags_the_dual_distance() {
        let r = report(6, 3, BUDGET).unwrap();
        assert_eq!(r.graph.girth, Distance::Finite(6));
        assert_eq!(
            r.measured.dual.unwrap(),
            CodeParams { length: 6, dimension: 1, min_distance: MinDistance::Known(6) }
        );
        assert_eq!(r.verdicts.dual_d, Verdict::Mismatch);
        assert!(r.verdicts.mismatch_count() > 0);
        let text = r.to_text();
        assert!(text.contains("mismatch"), "text report must surface the deviation:\n{text}");
    }

    #[test]
    fn report_json_roundtrip_and_sorted_keys() {
        for n in [1u64, 6, 15] {
            let r = report(n, 3, BUDGET).unwrap();
            let json = r.to_json();
            assert_eq!(Report::from_json(&json).unwrap(), r);
        }
        let json = report(15, 3, BUDGET).unwrap().to_json();
        let f = json.find("\"factorization\"").unwrap();
        let g = json.find("\"graph\"").unwrap();
        let m = json.find("\"measured\"").unwrap();
        let n = json.find("\"n\"").unwrap();
        assert!(f < g && g < m && m < n, "top-level keys must be sorted");
    }

    #[test]
    fn sweep_is_deterministic_and_consistent_with_report() {
        let mut a = Vec::new();
        let s1 = sweep(2, 30, 3, BUDGET, &mut a).unwrap();
        let mut b = Vec::new();
        let s2 = sweep(2, 30, 3, BUDGET, &mut b).unwrap();
        assert_eq!(a, b);
        assert_eq!(s1, s2);
        assert_eq!(s1.rows, 29);

        let text = String::from_utf8(a).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        for line in text.lines().skip(1) {
            let verdict_conj1 = line.split(',').nth(16).unwrap();
            assert_eq!(verdict_conj1, "match", "row: {line}");
        }

        let mut single = Vec::new();
        sweep(15, 15, 3, BUDGET, &mut single).unwrap();
        let single = String::from_utf8(single).unwrap();
        let row = single.lines().nth(1).unwrap();
        assert_eq!(row, report(15, 3, BUDGET).unwrap().csv_row());
    }

    #[test]
    fn sweep_rejects_bad_ranges_and_even_q() {
        let mut out = Vec::new();
        assert!(sweep(5, 2, 3, BUDGET, &mut out).is_err());
        assert!(sweep(0, 2, 3, BUDGET, &mut out).is_err());
        assert!(sweep(2, 5, 2, BUDGET, &mut out).is_err());
        assert!(sweep(2, 5, 9, BUDGET, &mut out).is_err());
    }

    #[test]
    fn tight_budget_yields_unverified_not_fabricated() {
        // With a tiny budget the distances come back unknown and the d
        // verdicts degrade to unverified, never to invented matches.
        let r = report(15, 3, 10).unwrap();
        let code = r.measured.code.unwrap();
        assert_eq!(code.min_distance, MinDistance::Unknown);
        assert_eq!(r.verdicts.conj2, Verdict::Unverified);
        assert_eq!(r.verdicts.dual_d, Verdict::Unverified);
        assert_eq!(r.verdicts.mismatch_count(), 0);
    }

    #[test]
    fn factorization_strings() {
        assert_eq!(factorization_string(12, &[4, 3]), "2^2*3");
        assert_eq!(factorization_string(7, &[7]), "7");
        assert_eq!(factorization_string(90, &[2, 9, 5]), "2*3^2*5");
        assert_eq!(factorization_string(1, &[]), "1");
    }
}
