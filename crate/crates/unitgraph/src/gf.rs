//! Dense row-major matrices over a prime field F_q: reduction to RREF,
//! rank, null space, row-space membership, and the shared matrix text
//! format.

use crate::error::{Error, Result};
use crate::ring::is_prime;
use std::fmt::Write as _;

fn check_prime(q: u8) -> Result<()> {
    if is_prime(q as u64) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{q} is not prime")))
    }
}

/// Inverse of `a` mod prime `q` by extended Euclid.
pub fn field_inv(a: u8, q: u8) -> u8 {
    debug_assert!(a % q != 0, "zero has no inverse");
    let (q_i, a_i) = (q as i32, (a % q) as i32);
    let (mut r0, mut r1) = (q_i, a_i);
    let (mut t0, mut t1) = (0i32, 1i32);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(q_i) as u8
}

/// A `rows x cols` matrix over F_q, entries in `[0, q)`. Zero rows are
/// allowed (generator of a zero-dimensional code).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfMatrix {
    q: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GfMatrix {
    pub fn zeros(q: u8, rows: usize, cols: usize) -> Result<Self> {
        check_prime(q)?;
        Ok(GfMatrix { q, rows, cols, data: vec![0; rows * cols] })
    }

    /// Builds from row-major entries, reducing each mod q.
    pub fn from_entries(q: u8, rows: usize, cols: usize, entries: &[u64]) -> Result<Self> {
        check_prime(q)?;
        if entries.len() != rows * cols {
            return Err(Error::Domain(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let data = entries.iter().map(|&e| (e % q as u64) as u8).collect();
        Ok(GfMatrix { q, rows, cols, data })
    }

    pub fn from_rows(q: u8, cols: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        check_prime(q)?;
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::Domain("ragged rows".into()));
            }
            data.extend(r.iter().map(|&e| e % q));
        }
        Ok(GfMatrix { q, rows: n, cols, data })
    }

    pub fn identity(q: u8, n: usize) -> Result<Self> {
        let mut m = Self::zeros(q, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.q;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u8]> {
        self.data.chunks_exact(self.cols.max(1)).take(self.rows)
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut data = vec![0u8; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        GfMatrix { q: self.q, rows: self.cols, cols: self.rows, data }
    }

    /// `self * x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[u8]) -> Result<Vec<u8>> {
        if x.len() != self.cols {
            return Err(Error::Domain(format!(
                "vector length {} vs {} columns",
                x.len(),
                self.cols
            )));
        }
        let q = self.q as u32;
        Ok(self
            .row_iter()
            .map(|row| {
                let s = row
                    .iter()
                    .zip(x)
                    .fold(0u32, |acc, (&a, &b)| (acc + a as u32 * b as u32) % q);
                s as u8
            })
            .collect())
    }

    /// Reduced row echelon form plus the strictly increasing pivot columns.
    /// Pivot choice is the first nonzero entry in column order, so the
    /// result is deterministic.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let mut m = self.clone();
        let q = m.q as u16;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..m.cols {
                    m.data.swap(pr * m.cols + k, r * m.cols + k);
                }
            }
            let inv = field_inv(m.get(r, c), m.q) as u16;
            for k in c..m.cols {
                let v = m.get(r, k) as u16;
                m.data[r * m.cols + k] = ((v * inv) % q) as u8;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u16;
                if f == 0 {
                    continue;
                }
                for k in c..m.cols {
                    let v = m.get(i, k) as u16;
                    let sub = (f * m.get(r, k) as u16) % q;
                    m.data[i * m.cols + k] = ((v + q - sub) % q) as u8;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : self * x = 0}`, one row per free column of the
    /// RREF, free columns ascending. Row count is `cols - rank`.
    pub fn null_space_basis(&self) -> GfMatrix {
        let (r, pivots) = self.rref();
        let q = self.q as u16;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut data = Vec::with_capacity(free.len() * self.cols);
        for &f in &free {
            let mut v = vec![0u8; self.cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let e = r.get(i, f) as u16;
                v[pc] = ((q - e) % q) as u8;
            }
            data.extend(v);
        }
        GfMatrix { q: self.q, rows: free.len(), cols: self.cols, data }
    }

    /// True iff `v` is an F_q-combination of the rows of `self`.
    pub fn row_space_contains(&self, v: &[u8]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::Domain(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        let (r, pivots) = self.rref();
        let q = self.q as u16;
        let mut rem: Vec<u8> = v.iter().map(|&e| e % self.q).collect();
        for (i, &pc) in pivots.iter().enumerate() {
            let f = rem[pc] as u16;
            if f == 0 {
                continue;
            }
            for k in pc..self.cols {
                let sub = (f * r.get(i, k) as u16) % q;
                rem[k] = ((rem[k] as u16 + q - sub) % q) as u8;
            }
        }
        Ok(rem.iter().all(|&e| e == 0))
    }

    /// Shared text format: header `rows cols q`, then one space-separated
    /// row per line. Round-trips bit-exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {} {}", self.rows, self.cols, self.q).unwrap();
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let hdr: Vec<&str> = header.split_whitespace().collect();
        if hdr.len() != 3 {
            return Err(Error::Parse("header must be `rows cols q`".into()));
        }
        let rows: usize = hdr[0].parse().map_err(|_| Error::Parse("bad row count".into()))?;
        let cols: usize = hdr[1].parse().map_err(|_| Error::Parse("bad col count".into()))?;
        let q: u8 = hdr[2].parse().map_err(|_| Error::Parse("bad modulus".into()))?;
        check_prime(q)?;
        let mut data = Vec::with_capacity(rows * cols);
        for (i, line) in lines.enumerate() {
            if i >= rows {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(Error::Parse(format!("more than {rows} rows")));
            }
            for tok in line.split_whitespace() {
                let e: u8 = tok.parse().map_err(|_| Error::Parse(format!("bad entry `{tok}`")))?;
                if e >= q {
                    return Err(Error::Parse(format!("entry {e} not reduced mod {q}")));
                }
                data.push(e);
            }
            if data.len() != (i + 1) * cols {
                return Err(Error::Parse(format!("row {i} does not have {cols} entries")));
            }
        }
        if data.len() != rows * cols {
            return Err(Error::Parse("fewer rows than the header promises".into()));
        }
        Ok(GfMatrix { q, rows, cols, data })
    }
}
