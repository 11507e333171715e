//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are `u64` masks. A reduced basis keeps one vector per pivot,
//! where the pivot is the highest set bit, and no vector has a bit set at
//! another vector's pivot.

use std::fmt;

use crate::error::{Error, Result};

#[inline]
pub fn pivot(v: u64) -> u32 {
    debug_assert!(v != 0);
    63 - v.leading_zeros()
}

/// Reduced row-echelon basis of the span of `vectors`, ordered by
/// increasing pivot.
pub fn rref(vectors: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut r = v;
        for &b in &basis {
            if r >> pivot(b) & 1 == 1 {
                r ^= b;
            }
        }
        if r == 0 {
            continue;
        }
        let p = pivot(r);
        for b in basis.iter_mut() {
            if *b >> p & 1 == 1 {
                *b ^= r;
            }
        }
        basis.push(r);
    }
    basis.sort_unstable_by_key(|&b| pivot(b));
    basis
}

pub fn rank(vectors: &[u64]) -> usize {
    rref(vectors).len()
}

/// True iff `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[u64], v: u64) -> bool {
    let basis = rref(vectors);
    let mut r = v;
    for &b in &basis {
        if r >> pivot(b) & 1 == 1 {
            r ^= b;
        }
    }
    r == 0
}

/// All `2^k` combinations of `basis`, in Gray-code order starting at 0.
pub fn span(basis: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(1usize << basis.len());
    let mut cur = 0u64;
    out.push(cur);
    for i in 1u64..(1u64 << basis.len()) {
        cur ^= basis[i.trailing_zeros() as usize];
        out.push(cur);
    }
    out
}

/// A dense `rows x cols` matrix over GF(2); row `r` is a `cols`-bit mask
/// with column `c` at bit `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: Vec<u64>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn new(cols: usize, rows: Vec<u64>) -> Result<Self> {
        if cols > 63 {
            return Err(Error::CapExceeded {
                what: "matrix columns",
                value: cols,
                cap: 63,
            });
        }
        if let Some(bad) = rows.iter().find(|&&r| r >> cols != 0) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: pivot(*bad) as usize + 1,
            });
        }
        Ok(Self { rows, cols })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![0; rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| 1u64 << i).collect(),
            cols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    /// Image of column `c` as an `nrows`-bit mask.
    pub fn column(&self, c: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &row)| acc | (row >> c & 1) << r)
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows.len()
    }

    /// Parse `n` rows of space-separated bits; every row must have
    /// `cols` entries.
    pub fn parse(text: &str, cols: usize) -> Result<Self> {
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut row = 0u64;
            let mut count = 0;
            for tok in line.split_whitespace() {
                match tok {
                    "0" => {}
                    "1" => row |= 1u64 << count,
                    _ => {
                        return Err(Error::Parse {
                            line: idx + 1,
                            msg: format!("`{tok}` is not a bit"),
                        })
                    }
                }
                count += 1;
                if count > 63 {
                    break;
                }
            }
            if count != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: count,
                });
            }
            rows.push(row);
        }
        Self::new(cols, rows)
    }

    /// Enumerate every `rows x cols` matrix in increasing row-major order.
    pub fn all(rows: usize, cols: usize) -> impl Iterator<Item = Gf2Matrix> {
        let total_bits = rows * cols;
        assert!(total_bits < 64, "matrix enumeration too large");
        (0u64..1u64 << total_bits).map(move |code| {
            let mask = (1u64 << cols) - 1;
            let data = (0..rows).map(|r| code >> (r * cols) & mask).collect();
            Gf2Matrix { rows: data, cols }
        })
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &row in &self.rows {
            let bits: Vec<&str> = (0..self.cols)
                .map(|c| if row >> c & 1 == 1 { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", bits.join(" "))?;
        }
        Ok(())
    }
}
