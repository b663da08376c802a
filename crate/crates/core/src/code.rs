//! Explicit codes over leveled alphabets and the storage-code verifier.
//!
//! A symbol is a `level`-tuple of base-`q` digits packed into one integer,
//! most significant digit first, so the symbol alphabet is `[q^level]`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use crate::field::Fp;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    q: u32,
    level: u32,
    n: usize,
    /// Row-major symbols, `n` per word, words sorted and distinct.
    symbols: Vec<u32>,
}

/// Rate `log_{q^level} |C| / n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RateValue {
    /// Present when `|C|` is an integer power of `q`.
    pub exact: Option<Rational>,
    pub approx: f64,
    /// Logarithm base, the symbol alphabet size `q^level`.
    pub base: u64,
}

/// Vertices whose recoverability is checked.
#[derive(Clone, Copy, Debug)]
pub enum Scope<'a> {
    All,
    Subset(&'a [usize]),
}

/// Two codewords that agree on `N(v)` yet differ at `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub v: usize,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

pub(crate) fn alphabet_size(q: u32, level: u32) -> Result<u64> {
    if q < 2 || level == 0 {
        return Err(Error::InvalidCode(alloc::format!(
            "q = {q}, level = {level}"
        )));
    }
    (q as u64)
        .checked_pow(level)
        .filter(|&a| a <= u32::MAX as u64)
        .ok_or_else(|| Error::InvalidCode(alloc::format!("alphabet {q}^{level} too large")))
}

impl Code {
    /// Builds a code from words of packed symbols. Duplicates collapse.
    pub fn new(q: u32, level: u32, n: usize, words: Vec<Vec<u32>>) -> Result<Self> {
        let alphabet = alphabet_size(q, level)?;
        if words.is_empty() {
            return Err(Error::InvalidCode("a code needs at least one word".into()));
        }
        let mut words = words;
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: w.len(),
                });
            }
            if let Some(&s) = w.iter().find(|&&s| s as u64 >= alphabet) {
                return Err(Error::InvalidCode(alloc::format!(
                    "symbol {s} outside alphabet of size {alphabet}"
                )));
            }
        }
        words.sort_unstable();
        words.dedup();
        Ok(Code {
            q,
            level,
            n,
            symbols: words.concat(),
        })
    }

    /// Builds a code from words given as `n * level` base-`q` digits each.
    pub fn from_digit_words(q: u32, level: u32, n: usize, words: &[Vec<u32>]) -> Result<Self> {
        alphabet_size(q, level)?;
        let width = n * level as usize;
        let mut packed = Vec::with_capacity(words.len());
        for w in words {
            if w.len() != width {
                return Err(Error::LengthMismatch {
                    expected: width,
                    got: w.len(),
                });
            }
            if let Some(&d) = w.iter().find(|&&d| d >= q) {
                return Err(Error::InvalidCode(alloc::format!(
                    "digit {d} outside [{q}]"
                )));
            }
            packed.push(
                w.chunks(level as usize)
                    .map(|c| pack_digits(q, c))
                    .collect(),
            );
        }
        Code::new(q, level, n, packed)
    }

    /// Internal constructor for already sorted, distinct, validated words.
    pub(crate) fn from_sorted_symbols(q: u32, level: u32, n: usize, symbols: Vec<u32>) -> Self {
        debug_assert!(n == 0 || symbols.len().is_multiple_of(n));
        Code {
            q,
            level,
            n,
            symbols,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> u64 {
        (self.q as u64).pow(self.level)
    }

    pub fn len(&self) -> usize {
        self.symbols.len().checked_div(self.n).unwrap_or(1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn word(&self, i: usize) -> &[u32] {
        &self.symbols[i * self.n..(i + 1) * self.n]
    }

    pub fn words(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.len()).map(move |i| self.word(i))
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        self.find(word).is_some()
    }

    fn find(&self, word: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.word(mid).cmp(word) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Digits of a word, `level` per symbol.
    pub fn word_digits(&self, i: usize) -> Vec<u32> {
        self.word(i)
            .iter()
            .flat_map(|&s| unpack_digits(self.q, self.level, s))
            .collect()
    }

    pub fn rate(&self) -> RateValue {
        rate_from_count(self.q, self.level, self.n, self.len() as u128)
    }

    /// Subcode agreeing with `values` on `positions`.
    pub fn puncture_fix(&self, positions: &[usize], values: &[u32]) -> Result<Code> {
        if positions.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: positions.len(),
                got: values.len(),
            });
        }
        if let Some(&p) = positions.iter().find(|&&p| p >= self.n) {
            return Err(Error::NoSuchVertex {
                vertex: p,
                n: self.n,
            });
        }
        let mut symbols = Vec::new();
        for w in self.words() {
            if positions.iter().zip(values).all(|(&p, &v)| w[p] == v) {
                symbols.extend_from_slice(w);
            }
        }
        if symbols.is_empty() {
            return Err(Error::EmptySubcode);
        }
        Ok(Code::from_sorted_symbols(
            self.q, self.level, self.n, symbols,
        ))
    }

    /// Checks that every symbol at a scoped vertex is determined by the
    /// symbols on its out-neighbors. The witness is the lexicographically
    /// smallest `(v, x, y)` over the sorted word list.
    pub fn verify(&self, g: &Graph, scope: Scope<'_>) -> Result<Verdict> {
        if g.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: g.n(),
            });
        }
        let mut vertices: Vec<usize> = match scope {
            Scope::All => (0..self.n).collect(),
            Scope::Subset(s) => s.to_vec(),
        };
        vertices.sort_unstable();
        vertices.dedup();
        for &v in &vertices {
            g.check_vertex(v)?;
        }
        let bits = 32 - (self.alphabet() as u32 - 1).leading_zeros();
        for v in vertices {
            if let Some((x, y)) = self.conflict_at(g.out_neighbors(v), v, bits) {
                return Ok(Verdict::Fail(Witness {
                    v,
                    x: self.word(x).to_vec(),
                    y: self.word(y).to_vec(),
                }));
            }
        }
        Ok(Verdict::Pass)
    }

    /// Smallest word index pair `(x, y)` with equal restriction to
    /// `neighbors` and different symbol at `v`.
    fn conflict_at(&self, neighbors: &[usize], v: usize, bits: u32) -> Option<(usize, usize)> {
        let count = self.len();
        let mut order: Vec<usize> = (0..count).collect();
        if neighbors.len() as u32 * bits <= 128 {
            let keys: Vec<u128> = (0..count)
                .map(|i| {
                    let w = self.word(i);
                    neighbors
                        .iter()
                        .fold(0u128, |acc, &u| (acc << bits) | w[u] as u128)
                })
                .collect();
            order.sort_unstable_by_key(|&i| (keys[i], i));
            first_conflict(&order, |a, b| keys[a] == keys[b], |i| self.word(i)[v])
        } else {
            let restrict = |i: usize| neighbors.iter().map(move |&u| self.word(i)[u]);
            order.sort_unstable_by(|&a, &b| restrict(a).cmp(restrict(b)).then(a.cmp(&b)));
            first_conflict(
                &order,
                |a, b| restrict(a).eq(restrict(b)),
                |i| self.word(i)[v],
            )
        }
    }
}

/// Given indices grouped by key (ascending index within a group), returns
/// the smallest index whose group is not constant at `value`, paired with the
/// first group member taking a different value.
fn first_conflict(
    order: &[usize],
    same_group: impl Fn(usize, usize) -> bool,
    value: impl Fn(usize) -> u32,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && same_group(order[start], order[end]) {
            end += 1;
        }
        let group = &order[start..end];
        let x = group[0];
        if best.is_none_or(|(bx, _)| x < bx) {
            let vx = value(x);
            if let Some(&y) = group.iter().find(|&&y| value(y) != vx) {
                best = Some((x, y));
            }
        }
        start = end;
    }
    best
}

pub fn pack_digits(q: u32, digits: &[u32]) -> u32 {
    digits.iter().fold(0, |acc, &d| acc * q + d)
}

pub fn unpack_digits(q: u32, level: u32, mut symbol: u32) -> Vec<u32> {
    let mut digits = vec![0; level as usize];
    for d in digits.iter_mut().rev() {
        *d = symbol % q;
        symbol /= q;
    }
    digits
}

/// `log_{q^level}(count) / n`, exact when `count` is a power of `q`.
pub fn rate_from_count(q: u32, level: u32, n: usize, count: u128) -> RateValue {
    let base = (q as u64).pow(level);
    let mut exponent = 0u32;
    let mut rest = count;
    while rest > 1 && rest.is_multiple_of(q as u128) {
        rest /= q as u128;
        exponent += 1;
    }
    let denom = n as u64 * level as u64;
    let exact = (rest == 1 && denom > 0)
        .then(|| Rational::new(BigInt::from(exponent), BigInt::from(denom)));
    let approx = if denom == 0 {
        0.0
    } else {
        libm::log(count as f64) / libm::log(q as f64) / denom as f64
    };
    RateValue {
        exact,
        approx,
        base,
    }
}

/// Rate `dimension / (n * level)` of a code with `q^dimension` words.
pub fn rate_from_dimension(q: u32, level: u32, n: usize, dimension: usize) -> RateValue {
    let denom = n as u64 * level as u64;
    let exact = Rational::new(BigInt::from(dimension as u64), BigInt::from(denom.max(1)));
    RateValue {
        approx: crate::rational::to_f64(&exact),
        exact: Some(exact),
        base: (q as u64).pow(level),
    }
}

/// All words of `F_q^n` orthogonal to every row.
pub fn code_from_parity(q: u32, n: usize, rows: &[Vec<u32>]) -> Result<Code> {
    code_from_parity_with(q, n, rows, &Limits::default())
}

pub fn code_from_parity_with(q: u32, n: usize, rows: &[Vec<u32>], limits: &Limits) -> Result<Code> {
    let f = Fp::new(q)?;
    for row in rows {
        if row.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: row.len(),
            });
        }
    }
    let space = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > limits.parity_space {
        return Err(Error::CapExceeded {
            what: "parity enumeration",
            size: space,
            cap: limits.parity_space,
        });
    }
    let rows: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| c % q).collect())
        .collect();
    let basis = f.nullspace(&rows, n);
    Ok(span(f, n, &basis))
}

/// All `F_p`-combinations of `basis`, as a level-1 code.
pub(crate) fn span(f: Fp, n: usize, basis: &[Vec<u32>]) -> Code {
    let q = f.p();
    let mut words: Vec<Vec<u32>> = vec![vec![0; n]];
    for b in basis {
        let mut next = Vec::with_capacity(words.len() * q as usize);
        for w in &words {
            for c in 0..q {
                next.push(
                    w.iter()
                        .zip(b)
                        .map(|(&x, &y)| f.add(x, f.mul(c, y)))
                        .collect(),
                );
            }
        }
        words = next;
    }
    words.sort_unstable();
    words.dedup();
    Code::from_sorted_symbols(q, 1, n, words.concat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn binary(words: &[&str]) -> Code {
        let words: Vec<Vec<u32>> = words
            .iter()
            .map(|w| w.bytes().map(|b| (b - b'0') as u32).collect())
            .collect();
        Code::new(2, 1, words_len(&words), words).unwrap()
    }

    fn words_len(words: &[Vec<u32>]) -> usize {
        words[0].len()
    }

    #[test]
    fn parity_code_on_triangle() {
        let c = binary(&["000", "011", "101", "110"]);
        assert_eq!(
            c.verify(&Graph::complete(3), Scope::All).unwrap(),
            Verdict::Pass
        );
        assert_eq!(c.rate().exact, Some(ratio(2, 3)));
    }

    #[test]
    fn edge_failure_witness() {
        let c = binary(&["00", "01"]);
        assert_eq!(
            c.verify(&Graph::complete(2), Scope::All).unwrap(),
            Verdict::Fail(Witness {
                v: 1,
                x: vec![0, 0],
                y: vec![0, 1]
            })
        );
    }

    #[test]
    fn repetition_on_path() {
        let c = binary(&["000", "111"]);
        assert!(c.verify(&Graph::path(3), Scope::All).unwrap().passed());
        assert!(c.verify(&Graph::path(4), Scope::All).is_err());
    }

    #[test]
    fn rates() {
        let single = binary(&["0101"]);
        assert_eq!(single.rate().exact, Some(ratio(0, 1)));
        let three = binary(&["00", "01", "10"]);
        assert_eq!(three.rate().exact, None);
        assert!((three.rate().approx - libm::log2(3.0) / 2.0).abs() < 1e-12);
        assert_eq!(rate_from_count(2, 2, 5, 32).exact, Some(ratio(1, 2)));
    }

    #[test]
    fn parity_enumeration() {
        let c = code_from_parity(3, 3, &[vec![1, 1, 1]]).unwrap();
        assert_eq!(c.len(), 9);
        for w in [[0, 0, 0], [0, 1, 2], [1, 2, 0]] {
            assert!(c.contains(&w));
        }
        assert_eq!(
            code_from_parity(2, 3, &[vec![1, 1, 1]]).unwrap(),
            binary(&["000", "011", "101", "110"])
        );
        assert_eq!(
            code_from_parity(2, 2, &[vec![1, 0], vec![0, 1]]).unwrap(),
            binary(&["00"])
        );
        assert!(matches!(
            code_from_parity(2, 25, &[]),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(code_from_parity(4, 2, &[]), Err(Error::NotPrime(4)));
    }

    #[test]
    fn pinning() {
        let c = binary(&["000", "011", "101", "110"]);
        assert_eq!(c.puncture_fix(&[0], &[0]).unwrap(), binary(&["000", "011"]));
        let single = binary(&["000"]);
        assert_eq!(single.puncture_fix(&[0], &[1]), Err(Error::EmptySubcode));
        assert!(matches!(
            c.puncture_fix(&[0], &[]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn digits_round_trip() {
        for s in 0..27 {
            assert_eq!(pack_digits(3, &unpack_digits(3, 3, s)), s);
        }
        assert_eq!(unpack_digits(3, 2, 5), vec![1, 2]);
        let c = Code::from_digit_words(3, 2, 1, &[vec![1, 2]]).unwrap();
        assert_eq!(c.word(0), &[5]);
        assert_eq!(c.word_digits(0), vec![1, 2]);
    }
}
