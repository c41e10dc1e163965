//! Arithmetic in a prime field `F_p` with `p < 2^63`, and the row reductions built on it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// An odd prime modulus below `2^63`; elements are canonical residues `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: MERSENNE_61 }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || p >= 1 << 63 || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// Determinant of a square matrix given row-major with side `size`.
    pub fn det(self, mut m: Vec<u64>, size: usize) -> u64 {
        let mut det = 1;
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| m[r * size + col] != 0) else {
                return 0;
            };
            if piv != col {
                for c in 0..size {
                    m.swap(piv * size + c, col * size + c);
                }
                det = self.neg(det);
            }
            let pv = m[col * size + col];
            det = self.mul(det, pv);
            let inv = self.inv(pv);
            for r in col + 1..size {
                let factor = self.mul(m[r * size + col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..size {
                    let v = self.mul(factor, m[col * size + c]);
                    m[r * size + c] = self.sub(m[r * size + c], v);
                }
            }
        }
        det
    }

    /// Rank of a matrix given as rows.
    pub fn rank(self, rows: &[Vec<u64>]) -> usize {
        let mut basis = Echelon::new(self);
        rows.iter().filter(|r| basis.insert((*r).clone())).count()
    }
}

/// Incrementally built echelon basis; each stored row has a distinct pivot normalized to 1.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Self { field, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `row` to the basis if it is independent of the stored rows; reports independence.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let f = self.field;
        // Stored rows vanish on the pivots of rows stored before them, so one pass in
        // insertion order clears every pivot column of `row`.
        for (pivot, b) in &self.rows {
            let c = row[*pivot];
            if c == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(b).skip(*pivot) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let Some(pivot) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(row[pivot]);
        for x in row.iter_mut().skip(pivot) {
            *x = f.mul(*x, inv);
        }
        self.rows.push((pivot, row));
        true
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Rank over the rationals of an integer matrix by fraction-free elimination.
///
/// Returns `None` if an intermediate value overflows `i128`.
pub fn rational_rank(rows: &[Vec<i64>]) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pv = m[rank][col];
        for r in rank + 1..m.len() {
            let lead = m[r][col];
            for c in col..cols {
                let v = pv.checked_mul(m[r][c])?.checked_sub(lead.checked_mul(m[rank][c])?)?;
                // Bareiss: the division by the previous pivot is exact.
                m[r][c] = v / prev;
            }
        }
        prev = pv;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}
