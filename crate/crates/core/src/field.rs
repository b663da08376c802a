//! Arithmetic and row reduction over prime fields `F_p`.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A prime modulus. Construction checks primality once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(Fp { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduces `rows` in place to reduced row echelon form, dropping zero
    /// rows. Returns the pivot column of each remaining row.
    pub fn rref(self, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
        let width = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..width {
            let Some(found) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, found);
            let scale = self.inv(rows[rank][col]);
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, scale);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let factor = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(factor, y));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        pivots
    }

    /// Basis of `{x : row . x = 0 for every row}` in `F_p^width`.
    pub fn nullspace(self, rows: &[Vec<u32>], width: usize) -> Vec<Vec<u32>> {
        let mut reduced: Vec<Vec<u32>> = rows.to_vec();
        let pivots = self.rref(&mut reduced);
        let mut is_pivot = vec![false; width];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..width).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; width];
            v[free] = 1;
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = self.sub(0, row[free]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}
