//! GF(2) primitives: packed bit vectors, rank, span enumeration, binomial
//! coefficients, Krawtchouk polynomials and the MacWilliams transform.
//!
//! A [`BitVec`] is a column vector over GF(2) with 1 to 32 coordinates packed
//! into one machine word. Coordinate 1 is the most significant bit of the
//! packed value, so the integer order of packed values equals the
//! lexicographic order of coordinate strings.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_WIDTH: u32 = 32;

/// Largest generator count for [`enumerate_span`]: spans are walked
/// exhaustively, so 2^r elements must stay enumerable at desk scale.
pub const MAX_SPAN_RANK: usize = 26;

/// Largest vector length supported by the binomial table and everything
/// built on it (Krawtchouk values, MacWilliams transforms).
pub const MAX_BINOMIAL_N: usize = 64;

/// Column vector over GF(2), width 1..=32, coordinate 1 = most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    width: u8,
    bits: u32,
}

impl BitVec {
    pub fn new(width: u32, bits: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::domain(format!(
                "width must be in 1..={MAX_WIDTH}, got {width}"
            )));
        }
        if width < 32 && bits >> width != 0 {
            return Err(Error::domain(format!(
                "value {bits:#b} does not fit in width {width}"
            )));
        }
        Ok(BitVec {
            width: width as u8,
            bits,
        })
    }

    pub fn zero(width: u32) -> Result<Self> {
        Self::new(width, 0)
    }

    /// Standard basis vector with a single 1 at `coord` (1-based).
    pub fn unit(width: u32, coord: u32) -> Result<Self> {
        if coord == 0 || coord > width {
            return Err(Error::domain(format!(
                "coordinate {coord} out of range 1..={width}"
            )));
        }
        Self::new(width, 1 << (width - coord))
    }

    /// Parses a coordinate string such as `"101"` (coordinate 1 first).
    pub fn parse(s: &str) -> Result<Self> {
        let width = s.len();
        if width == 0 || width as u32 > MAX_WIDTH {
            return Err(Error::domain(format!(
                "coordinate string length must be in 1..={MAX_WIDTH}, got {width}"
            )));
        }
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                other => {
                    return Err(Error::domain(format!(
                        "invalid character {other:?} at position {} in column string",
                        i + 1
                    )))
                }
            }
        }
        Self::new(width as u32, bits)
    }

    pub fn width(&self) -> u32 {
        self.width as u32
    }

    /// Packed value; coordinate 1 is the most significant of `width` bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate `i` (1-based).
    pub fn coord(&self, i: u32) -> bool {
        debug_assert!(i >= 1 && i <= self.width());
        self.bits >> (self.width() - i) & 1 == 1
    }

    /// Hamming weight.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Appends a new last coordinate, increasing the width by one.
    pub fn append_coord(&self, bit: bool) -> Result<Self> {
        Self::new(self.width() + 1, self.bits << 1 | bit as u32)
    }
}

impl std::ops::BitXor for BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: BitVec) -> BitVec {
        assert_eq!(self.width, rhs.width, "xor of vectors with unequal widths");
        BitVec {
            width: self.width,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.width() {
            write!(f, "{}", self.coord(i) as u8)?;
        }
        Ok(())
    }
}

impl serde::Serialize for BitVec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn common_width(vectors: &[BitVec]) -> Result<u32> {
    let mut width = None;
    for (i, v) in vectors.iter().enumerate() {
        match width {
            None => width = Some(v.width()),
            Some(w) if w != v.width() => {
                return Err(Error::domain(format!(
                    "vector {} has width {}, expected {}",
                    i,
                    v.width(),
                    w
                )))
            }
            Some(_) => {}
        }
    }
    width.ok_or_else(|| Error::domain("at least one vector required"))
}

/// Rank of the set of vectors, by Gaussian elimination on packed words.
///
/// The empty set has rank 0; mixed widths are rejected.
pub fn rank(vectors: &[BitVec]) -> Result<u32> {
    if vectors.is_empty() {
        return Ok(0);
    }
    common_width(vectors)?;
    let mut pivots: Vec<u32> = Vec::new();
    for v in vectors {
        let mut x = v.bits();
        for &p in &pivots {
            if x ^ p < x {
                x ^= p;
            }
        }
        if x != 0 {
            pivots.push(x);
            pivots.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    Ok(pivots.len() as u32)
}

/// Iterator over the span of a set of generators, produced by a
/// binary-reflected Gray walk: element 0 is the zero vector and each step
/// toggles the generator indexed by the number of trailing ones of the step
/// counter. With independent generators each span element appears exactly
/// once; dependent generators yield repeats.
pub struct SpanIter {
    gens: Vec<BitVec>,
    current: BitVec,
    step: u64,
    total: u64,
}

impl Iterator for SpanIter {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.step == self.total {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current = self.current ^ self.gens[flip];
        }
        self.step += 1;
        Some(self.current)
    }
}

impl ExactSizeIterator for SpanIter {
    fn len(&self) -> usize {
        (self.total - self.step) as usize
    }
}

/// Enumerates the 2^r span elements of `generators` in Gray order.
///
/// Rejects more than [`MAX_SPAN_RANK`] generators.
pub fn enumerate_span(generators: &[BitVec]) -> Result<SpanIter> {
    let width = common_width(generators)?;
    if generators.len() > MAX_SPAN_RANK {
        return Err(Error::SizeLimit {
            what: "span generators",
            cap: MAX_SPAN_RANK as u64,
            actual: generators.len() as u64,
        });
    }
    Ok(SpanIter {
        gens: generators.to_vec(),
        current: BitVec::zero(width)?,
        step: 0,
        total: 1u64 << generators.len(),
    })
}

fn pascal() -> &'static Vec<Vec<i128>> {
    static TABLE: OnceLock<Vec<Vec<i128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![vec![1i128]];
        for n in 1..=MAX_BINOMIAL_N {
            let prev = &t[n - 1];
            let mut row = vec![1i128; n + 1];
            for k in 1..n {
                row[k] = prev[k - 1] + prev[k];
            }
            t.push(row);
        }
        t
    })
}

/// Binomial coefficient C(n, k) for n <= 64, zero outside 0 <= k <= n.
pub fn binomial(n: usize, k: usize) -> Result<i128> {
    if n > MAX_BINOMIAL_N {
        return Err(Error::SizeLimit {
            what: "binomial n",
            cap: MAX_BINOMIAL_N as u64,
            actual: n as u64,
        });
    }
    Ok(if k > n { 0 } else { pascal()[n][k] })
}

/// Krawtchouk polynomial value K_j(x; n) = sum_s (-1)^s C(x,s) C(n-x, j-s),
/// computed exactly in integers.
pub fn krawtchouk(n: usize, j: usize, x: usize) -> Result<i128> {
    if n > MAX_BINOMIAL_N {
        return Err(Error::SizeLimit {
            what: "krawtchouk n",
            cap: MAX_BINOMIAL_N as u64,
            actual: n as u64,
        });
    }
    if j > n || x > n {
        return Err(Error::domain(format!(
            "krawtchouk arguments j = {j}, x = {x} must lie in 0..={n}"
        )));
    }
    let mut acc = 0i128;
    for s in 0..=j.min(x) {
        let term = binomial(x, s)? * binomial(n - x, j - s)?;
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Weight distribution of a length-n binary code: `counts[w]` words of
/// Hamming weight w, for w = 0..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    length: usize,
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn new(length: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != length + 1 {
            return Err(Error::domain(format!(
                "expected {} weight counts for length {length}, got {}",
                length + 1,
                counts.len()
            )));
        }
        Ok(WeightDistribution { length, counts })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts[weight]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Weight distribution of the dual of a linear code with the given weight
/// distribution and dimension, via the MacWilliams identity
/// B_j = 2^(-dim) * sum_i A_i K_j(i; n).
///
/// Rejects distributions that cannot come from a linear code (A_0 != 1,
/// total != 2^dim, or a transform entry that is negative or non-integral).
pub fn macwilliams_dual(weights: &WeightDistribution, code_dim: u32) -> Result<WeightDistribution> {
    let n = weights.length();
    if n > MAX_BINOMIAL_N {
        return Err(Error::SizeLimit {
            what: "code length",
            cap: MAX_BINOMIAL_N as u64,
            actual: n as u64,
        });
    }
    if code_dim as usize > n {
        return Err(Error::domain(format!(
            "code dimension {code_dim} exceeds length {n}"
        )));
    }
    if weights.count(0) != 1 {
        return Err(Error::inconsistent(format!(
            "a linear code contains the zero word exactly once, got A_0 = {}",
            weights.count(0)
        )));
    }
    let size = 1i128 << code_dim;
    if weights.total() as i128 != size {
        return Err(Error::inconsistent(format!(
            "weight counts total {} but a dimension-{code_dim} code has {size} words",
            weights.total()
        )));
    }
    let mut dual = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = 0i128;
        for i in 0..=n {
            let a = weights.count(i) as i128;
            if a != 0 {
                acc += a * krawtchouk(n, j, i)?;
            }
        }
        if acc < 0 || acc % size != 0 {
            return Err(Error::inconsistent(format!(
                "MacWilliams transform entry {j} is {acc}/{size}, not a nonnegative integer"
            )));
        }
        dual.push((acc / size) as u64);
    }
    WeightDistribution::new(n, dual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    #[test]
    fn bitvec_layout_puts_coordinate_one_first() {
        let v = bv("100");
        assert_eq!(v.bits(), 0b100);
        assert!(v.coord(1));
        assert!(!v.coord(2));
        assert!(!v.coord(3));
        assert_eq!(v.to_string(), "100");
        assert_eq!(v.weight(), 1);
    }

    #[test]
    fn bitvec_integer_order_matches_string_order() {
        let mut vals = [bv("110"), bv("001"), bv("100"), bv("011")];
        vals.sort();
        let strings: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
        assert_eq!(strings, ["001", "011", "100", "110"]);
    }

    #[test]
    fn bitvec_rejects_bad_input() {
        assert!(BitVec::new(0, 0).is_err());
        assert!(BitVec::new(33, 0).is_err());
        assert!(BitVec::new(3, 0b1000).is_err());
        assert!(BitVec::parse("10a").is_err());
        assert!(BitVec::parse("").is_err());
    }

    #[test]
    fn bitvec_unit_and_append() {
        assert_eq!(BitVec::unit(4, 1).unwrap().bits(), 0b1000);
        assert_eq!(BitVec::unit(4, 4).unwrap().bits(), 0b0001);
        assert_eq!(bv("10").append_coord(true).unwrap(), bv("101"));
        assert_eq!(bv("10").append_coord(false).unwrap(), bv("100"));
    }

    #[test]
    fn rank_of_unit_vectors() {
        assert_eq!(rank(&[bv("10"), bv("01")]).unwrap(), 2);
    }

    #[test]
    fn rank_sees_dependence() {
        // 101 ^ 011 = 110, so only two of the three are independent.
        assert_eq!(rank(&[bv("101"), bv("011"), bv("110")]).unwrap(), 2);
    }

    #[test]
    fn rank_edge_cases() {
        assert_eq!(rank(&[]).unwrap(), 0);
        assert_eq!(rank(&[bv("000")]).unwrap(), 0);
        assert!(rank(&[bv("10"), bv("100")]).is_err());
    }

    #[test]
    fn span_of_two_generators() {
        let elems: Vec<BitVec> = enumerate_span(&[bv("101"), bv("011")]).unwrap().collect();
        assert_eq!(elems.len(), 4);
        assert_eq!(elems[0], bv("000"));
        let mut sorted = elems.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, vec![bv("000"), bv("011"), bv("101"), bv("110")]);
    }

    #[test]
    fn span_size_cap() {
        let gens: Vec<BitVec> = (1..=27).map(|i| BitVec::unit(32, i).unwrap()).collect();
        assert!(matches!(
            enumerate_span(&gens),
            Err(Error::SizeLimit { .. })
        ));
        assert_eq!(enumerate_span(&gens[..26]).unwrap().len(), 1 << 26);
    }

    #[test]
    fn binomial_table() {
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(6, 2).unwrap(), 15);
        assert_eq!(binomial(10, 3).unwrap(), 120);
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
        assert_eq!(binomial(5, 9).unwrap(), 0);
        assert!(binomial(65, 1).is_err());
    }

    #[test]
    fn krawtchouk_degree_zero_and_one() {
        for x in 0..=6 {
            assert_eq!(krawtchouk(6, 0, x).unwrap(), 1);
            assert_eq!(krawtchouk(6, 1, x).unwrap(), 6 - 2 * x as i128);
        }
    }

    #[test]
    fn krawtchouk_at_zero_is_binomial() {
        for n in [3usize, 8, 20] {
            for j in 0..=n {
                assert_eq!(krawtchouk(n, j, 0).unwrap(), binomial(n, j).unwrap());
            }
        }
    }

    #[test]
    fn krawtchouk_domain() {
        assert!(krawtchouk(4, 5, 0).is_err());
        assert!(krawtchouk(4, 0, 5).is_err());
    }

    #[test]
    fn krawtchouk_orthogonality() {
        // sum_x C(n,x) K_j(x) K_l(x) = 2^n C(n,j) [j = l]
        for n in 1..=8usize {
            for j in 0..=n {
                for l in 0..=n {
                    let mut acc = 0i128;
                    for x in 0..=n {
                        acc += binomial(n, x).unwrap()
                            * krawtchouk(n, j, x).unwrap()
                            * krawtchouk(n, l, x).unwrap();
                    }
                    let expected = if j == l {
                        (1i128 << n) * binomial(n, j).unwrap()
                    } else {
                        0
                    };
                    assert_eq!(acc, expected, "n = {n}, j = {j}, l = {l}");
                }
            }
        }
    }

    #[test]
    fn macwilliams_repetition_code() {
        // Dual of the length-3 repetition code is the even-weight code.
        let rep = WeightDistribution::new(3, vec![1, 0, 0, 1]).unwrap();
        let dual = macwilliams_dual(&rep, 1).unwrap();
        assert_eq!(dual.counts(), &[1, 0, 3, 0]);
        // And back: the transform is an involution.
        let back = macwilliams_dual(&dual, 2).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn macwilliams_rejects_non_code_distributions() {
        let bad = WeightDistribution::new(3, vec![1, 0, 2, 1]).unwrap();
        assert!(matches!(
            macwilliams_dual(&bad, 2),
            Err(Error::Inconsistent(_))
        ));
        let wrong_total = WeightDistribution::new(3, vec![1, 1, 1, 0]).unwrap();
        assert!(matches!(
            macwilliams_dual(&wrong_total, 2),
            Err(Error::Inconsistent(_))
        ));
        let no_zero_word = WeightDistribution::new(2, vec![0, 2, 2]).unwrap();
        assert!(matches!(
            macwilliams_dual(&no_zero_word, 2),
            Err(Error::Inconsistent(_))
        ));
    }
}
