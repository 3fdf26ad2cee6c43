//! Regular two-level fractional factorial designs in column form.
//!
//! A design with k independent run-index bits is the set of its n distinct
//! nonzero GF(2) column vectors of width k; the run matrix has N = 2^k rows
//! and entry (-1)^<r, c> for run r and column c. Defining words are the
//! subsets of columns that XOR to zero; the wordlength pattern counts them
//! by size. Two routes compute it: direct enumeration of the defining-word
//! code, and a MacWilliams transform of the column code's weight
//! distribution. They are cross-checked in the test suite and must never be
//! merged.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf2::{self, BitVec, WeightDistribution};

/// Caps on exhaustive routes. Word enumeration visits 2^p defining words,
/// the code route visits 2^rank codewords, run expansion materialises 2^k
/// rows, and the alias profile materialises 2^k - 1 cosets.
pub const MAX_DIRECT_WORDS_LOG2: u32 = 26;
pub const MAX_CODE_RANK: u32 = 26;
pub const MAX_EXPAND_K: u32 = 16;
pub const MAX_PROFILE_K: u32 = 20;
pub const MAX_ORACLE_K: u32 = 12;
pub const MAX_ORACLE_T: u32 = 8;

/// A regular two-level design: distinct nonzero columns of equal width.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct RegularDesign {
    k: u32,
    columns: Vec<BitVec>,
}

impl RegularDesign {
    /// Validates width consistency, capacity, and the resolution >= III
    /// prerequisites: no zero column (resolution II failure), no duplicate
    /// pair (resolution III failure).
    pub fn from_columns(columns: Vec<BitVec>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::domain("a design needs at least one column"));
        }
        let k = columns[0].width();
        for (i, c) in columns.iter().enumerate() {
            if c.width() != k {
                return Err(Error::domain(format!(
                    "column {} has width {}, expected {}",
                    i + 1,
                    c.width(),
                    k
                )));
            }
        }
        let max = if k == 32 {
            u32::MAX as u64
        } else {
            (1u64 << k) - 1
        };
        if columns.len() as u64 > max {
            return Err(Error::Capacity {
                n: columns.len(),
                k,
                max,
            });
        }
        let mut seen: HashMap<u32, usize> = HashMap::new();
        for (i, c) in columns.iter().enumerate() {
            if c.is_zero() {
                return Err(Error::ZeroColumn { index: i + 1 });
            }
            if let Some(&first) = seen.get(&c.bits()) {
                return Err(Error::DuplicateColumn {
                    first,
                    second: i + 1,
                });
            }
            seen.insert(c.bits(), i + 1);
        }
        Ok(RegularDesign { k, columns })
    }

    /// Convenience constructor from coordinate strings such as `"1010"`.
    pub fn from_strings(columns: &[&str]) -> Result<Self> {
        let cols: Result<Vec<BitVec>> = columns.iter().map(|s| BitVec::parse(s)).collect();
        Self::from_columns(cols?)
    }

    /// Builds a design from `n_basic` basic factors followed by one added
    /// factor per generator word; a word is the 1-based index set of the
    /// basic factors whose product defines the added factor.
    pub fn from_generator_words(n_basic: u32, words: &[Vec<u32>]) -> Result<Self> {
        if n_basic == 0 || n_basic > gf2::MAX_WIDTH {
            return Err(Error::domain(format!(
                "number of basic factors must be in 1..={}, got {n_basic}",
                gf2::MAX_WIDTH
            )));
        }
        let mut columns: Vec<BitVec> = (1..=n_basic)
            .map(|i| BitVec::unit(n_basic, i))
            .collect::<Result<_>>()?;
        for (w, word) in words.iter().enumerate() {
            if word.is_empty() {
                return Err(Error::domain(format!("generator word {} is empty", w + 1)));
            }
            let mut col = BitVec::zero(n_basic)?;
            for &i in word {
                if i == 0 || i > n_basic {
                    return Err(Error::domain(format!(
                        "generator word {} refers to basic factor {i}, out of 1..={n_basic}",
                        w + 1
                    )));
                }
                if col.coord(i) {
                    return Err(Error::domain(format!(
                        "generator word {} repeats basic factor {i}",
                        w + 1
                    )));
                }
                col = col ^ BitVec::unit(n_basic, i)?;
            }
            columns.push(col);
        }
        Self::from_columns(columns)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// Run count N = 2^k.
    pub fn n_runs(&self) -> u64 {
        1u64 << self.k
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> BitVec {
        self.columns[i]
    }

    pub fn rank(&self) -> u32 {
        gf2::rank(&self.columns).expect("validated columns share a width")
    }

    /// Number of added factors p = n - rank; the design has 2^p - 1
    /// nontrivial defining words.
    pub fn p(&self) -> u32 {
        self.n() as u32 - self.rank()
    }

    pub fn contains_column(&self, v: BitVec) -> bool {
        self.columns.contains(&v)
    }
}

/// Shortest defining wordlength, or `Full` for an unreplicated full
/// factorial (no defining words at all).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Resolution {
    Finite(u32),
    Full,
}

impl Resolution {
    pub fn at_least(&self, r: u32) -> bool {
        match self {
            Resolution::Finite(v) => *v >= r,
            Resolution::Full => true,
        }
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            Resolution::Finite(v) => Some(*v),
            Resolution::Full => None,
        }
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resolution::Finite(v) => write!(f, "{v}"),
            Resolution::Full => write!(f, "full"),
        }
    }
}

impl serde::Serialize for Resolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Resolution::Finite(v) => s.serialize_u32(*v),
            Resolution::Full => s.serialize_str("full"),
        }
    }
}

/// Wordlength pattern B_1..B_n, stored to full length n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct WordlengthPattern(Vec<u64>);

impl WordlengthPattern {
    pub fn new(counts: Vec<u64>) -> Self {
        WordlengthPattern(counts)
    }

    /// B_i (1-based); zero beyond the stored length.
    pub fn b(&self, i: usize) -> u64 {
        if i >= 1 && i <= self.0.len() {
            self.0[i - 1]
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&b| b > 0).map(|i| i + 1)
    }
}

/// Defining words as n-bit masks: basis of the null space of the column
/// matrix. Only valid while n <= 64; callers must cap first.
fn defining_word_basis(d: &RegularDesign) -> Vec<u64> {
    debug_assert!(d.n() <= 64);
    let mut pivots: Vec<(u32, u32, u64)> = Vec::new(); // (leading bit, value, mask)
    let mut basis = Vec::new();
    for (j, c) in d.columns().iter().enumerate() {
        let mut v = c.bits();
        let mut mask = 1u64 << j;
        for &(lead, value, pmask) in &pivots {
            if v >> lead & 1 == 1 {
                v ^= value;
                mask ^= pmask;
            }
        }
        if v == 0 {
            basis.push(mask);
        } else {
            pivots.push((31 - v.leading_zeros(), v, mask));
            pivots.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
        }
    }
    basis
}

/// Wordlength pattern by exhaustive enumeration of all 2^p defining words.
pub fn wordlength_pattern_direct(d: &RegularDesign) -> Result<WordlengthPattern> {
    let p = d.p();
    if p > MAX_DIRECT_WORDS_LOG2 {
        return Err(Error::SizeLimit {
            what: "added factors p for direct word enumeration",
            cap: MAX_DIRECT_WORDS_LOG2 as u64,
            actual: p as u64,
        });
    }
    // p <= 26 and rank <= 32 bound n = p + rank <= 58, so u64 masks suffice.
    let basis = defining_word_basis(d);
    debug_assert_eq!(basis.len(), p as usize);
    let mut counts = vec![0u64; d.n()];
    let mut word = 0u64;
    for step in 1u64..1 << p {
        word ^= basis[step.trailing_zeros() as usize];
        counts[word.count_ones() as usize - 1] += 1;
    }
    Ok(WordlengthPattern::new(counts))
}

/// Weight distribution of the column code: the length-n code spanned by the
/// k coordinate rows of the column matrix. Its dual is the defining-word
/// code.
fn column_code_weights(d: &RegularDesign) -> Result<(WeightDistribution, u32)> {
    let n = d.n();
    if n > gf2::MAX_BINOMIAL_N {
        return Err(Error::SizeLimit {
            what: "columns n for the code route",
            cap: gf2::MAX_BINOMIAL_N as u64,
            actual: n as u64,
        });
    }
    let mut generators: Vec<u64> = Vec::new();
    for i in 1..=d.k() {
        let mut row = 0u64;
        for (j, c) in d.columns().iter().enumerate() {
            if c.coord(i) {
                row |= 1 << j;
            }
        }
        // Keep only independent rows.
        let mut v = row;
        for &g in &generators {
            let reduced = v ^ g;
            if reduced < v {
                v = reduced;
            }
        }
        if v != 0 {
            generators.push(v);
            generators.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let rank = generators.len() as u32;
    if rank > MAX_CODE_RANK {
        return Err(Error::SizeLimit {
            what: "rank for the code route",
            cap: MAX_CODE_RANK as u64,
            actual: rank as u64,
        });
    }
    let mut counts = vec![0u64; n + 1];
    counts[0] = 1;
    let mut word = 0u64;
    for step in 1u64..1 << rank {
        word ^= generators[step.trailing_zeros() as usize];
        counts[word.count_ones() as usize] += 1;
    }
    Ok((WeightDistribution::new(n, counts)?, rank))
}

/// Wordlength pattern via the MacWilliams transform of the column code's
/// weight distribution.
pub fn wordlength_pattern_fast(d: &RegularDesign) -> Result<WordlengthPattern> {
    let (weights, rank) = column_code_weights(d)?;
    let dual = gf2::macwilliams_dual(&weights, rank)?;
    debug_assert_eq!(dual.count(0), 1);
    Ok(WordlengthPattern::new(dual.counts()[1..].to_vec()))
}

/// Wordlength pattern by whichever exhaustive route fits the design's size;
/// both routes agree wherever both apply.
pub fn wordlength_pattern(d: &RegularDesign) -> Result<WordlengthPattern> {
    if d.n() <= gf2::MAX_BINOMIAL_N && d.rank() <= MAX_CODE_RANK {
        wordlength_pattern_fast(d)
    } else {
        wordlength_pattern_direct(d)
    }
}

/// Resolution: the shortest defining wordlength, `Full` when p = 0.
///
/// Falls back to direct short-word detection when the design is too large
/// for either wordlength route but still has a word of length <= 4.
pub fn resolution(d: &RegularDesign) -> Result<Resolution> {
    if d.p() == 0 {
        return Ok(Resolution::Full);
    }
    match wordlength_pattern(d) {
        Ok(wlp) => Ok(Resolution::Finite(
            wlp.first_nonzero()
                .expect("p > 0 design has defining words") as u32,
        )),
        Err(Error::SizeLimit { .. }) => {
            // Columns are distinct and nonzero, so the shortest possible
            // word has length 3: a pair XOR that is itself a column.
            let have: std::collections::HashSet<u32> =
                d.columns().iter().map(|c| c.bits()).collect();
            let mut pair_seen = std::collections::HashSet::new();
            let mut res4 = false;
            for (a, b) in d.columns().iter().tuple_combinations() {
                let x = (*a ^ *b).bits();
                if have.contains(&x) {
                    return Ok(Resolution::Finite(3));
                }
                if !pair_seen.insert(x) {
                    res4 = true;
                }
            }
            if res4 {
                return Ok(Resolution::Finite(4));
            }
            Err(Error::SizeLimit {
                what: "resolution beyond 4 for an oversized design",
                cap: 4,
                actual: d.n() as u64,
            })
        }
        Err(e) => Err(e),
    }
}

/// Orthogonal-array strength: resolution - 1, or n for a full factorial.
pub fn oa_strength(d: &RegularDesign) -> Result<u32> {
    match resolution(d)? {
        Resolution::Full => Ok(d.n() as u32),
        Resolution::Finite(r) => Ok(r - 1),
    }
}

/// Two-factor-interaction alias structure of a full-rank design: for every
/// nonzero v the count m(v) of unordered column pairs whose XOR is v, with
/// main-effect cosets (v itself a column) kept apart from the rest.
#[derive(Debug, Clone)]
pub struct AliasProfile {
    k: u32,
    n: usize,
    m: Vec<u32>,     // index v - 1
    main: Vec<bool>, // index v - 1
}

impl AliasProfile {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total alias sets g = 2^k - 1.
    pub fn g(&self) -> u64 {
        (1u64 << self.k) - 1
    }

    /// Non-main-effect alias sets f = g - n.
    pub fn f(&self) -> u64 {
        self.g() - self.n as u64
    }

    pub fn m_of(&self, v: BitVec) -> u32 {
        assert_eq!(v.width(), self.k);
        assert!(!v.is_zero());
        self.m[v.bits() as usize - 1]
    }

    pub fn has_main_effect(&self, v: BitVec) -> bool {
        assert_eq!(v.width(), self.k);
        assert!(!v.is_zero());
        self.main[v.bits() as usize - 1]
    }

    /// m-values of all f non-main-effect sets, sorted ascending.
    pub fn non_main_m(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.m.len())
            .filter(|&i| !self.main[i])
            .map(|i| self.m[i])
            .collect();
        out.sort_unstable();
        out
    }

    /// m-values of all n main-effect sets, sorted ascending.
    pub fn main_m(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.m.len())
            .filter(|&i| self.main[i])
            .map(|i| self.m[i])
            .collect();
        out.sort_unstable();
        out
    }

    pub fn sum_m(&self) -> u64 {
        self.m.iter().map(|&x| x as u64).sum()
    }

    pub fn sum_m_squared(&self) -> u64 {
        self.m.iter().map(|&x| x as u64 * x as u64).sum()
    }

    pub fn sum_m_squared_non_main(&self) -> u64 {
        (0..self.m.len())
            .filter(|&i| !self.main[i])
            .map(|i| self.m[i] as u64 * self.m[i] as u64)
            .sum()
    }
}

/// Builds the alias profile; requires full rank so that cosets are indexed
/// by all of GF(2)^k \ {0}.
pub fn alias_profile(d: &RegularDesign) -> Result<AliasProfile> {
    if d.k() > MAX_PROFILE_K {
        return Err(Error::SizeLimit {
            what: "k for alias profiles",
            cap: MAX_PROFILE_K as u64,
            actual: d.k() as u64,
        });
    }
    let rank = d.rank();
    if rank < d.k() {
        return Err(Error::ReducedRank { rank, k: d.k() });
    }
    let size = (1usize << d.k()) - 1;
    let mut m = vec![0u32; size];
    let mut main = vec![false; size];
    for c in d.columns() {
        main[c.bits() as usize - 1] = true;
    }
    for (a, b) in d.columns().iter().tuple_combinations() {
        m[(*a ^ *b).bits() as usize - 1] += 1;
    }
    Ok(AliasProfile {
        k: d.k(),
        n: d.n(),
        m,
        main,
    })
}

/// B_3 and B_4 from the alias profile:
/// B_3 = (C(n,2) - sum of non-main m) / 3,
/// B_4 = (sum of all m^2 - C(n,2)) / 6.
pub fn b3_b4_from_profile(profile: &AliasProfile) -> Result<(u64, u64)> {
    let n = profile.n() as u64;
    let pairs = n * (n - 1) / 2;
    let non_main_sum: u64 = profile.non_main_m().iter().map(|&x| x as u64).sum();
    if non_main_sum > pairs || !(pairs - non_main_sum).is_multiple_of(3) {
        return Err(Error::inconsistent(format!(
            "C(n,2) - sum m = {pairs} - {non_main_sum} is not a nonnegative multiple of 3"
        )));
    }
    let sq = profile.sum_m_squared();
    if sq < pairs || !(sq - pairs).is_multiple_of(6) {
        return Err(Error::inconsistent(format!(
            "sum m^2 - C(n,2) = {sq} - {pairs} is not a nonnegative multiple of 6"
        )));
    }
    Ok(((pairs - non_main_sum) / 3, (sq - pairs) / 6))
}

/// True iff every odd-length wordlength count is zero. Computed by the
/// equivalent rank test: the design is even exactly when some row
/// combination of the column matrix is the all-ones vector, i.e. all
/// columns lie in a common affine hyperplane.
pub fn is_even(d: &RegularDesign) -> Result<bool> {
    let n = d.n();
    let words = n.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for i in 1..=d.k() {
        let mut row = vec![0u64; words];
        for (j, c) in d.columns().iter().enumerate() {
            if c.coord(i) {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        rows.push(row);
    }
    let mut target = vec![0u64; words];
    for j in 0..n {
        target[j / 64] |= 1 << (j % 64);
    }
    // Eliminate: reduce target by pivot rows.
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    for row in rows {
        let mut v = row;
        for (lead, pivot) in &pivots {
            if v[lead / 64] >> (lead % 64) & 1 == 1 {
                for (w, p) in v.iter_mut().zip(pivot) {
                    *w ^= p;
                }
            }
        }
        if let Some(lead) = first_set_bit(&v) {
            pivots.push((lead, v));
            pivots.sort_unstable_by_key(|(l, _)| *l);
        }
    }
    let mut v = target;
    for (lead, pivot) in &pivots {
        if v[lead / 64] >> (lead % 64) & 1 == 1 {
            for (w, p) in v.iter_mut().zip(pivot) {
                *w ^= p;
            }
        }
    }
    Ok(v.iter().all(|&w| w == 0))
}

fn first_set_bit(v: &[u64]) -> Option<usize> {
    for (i, &w) in v.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

/// Expanded +-1 run matrix, rows in run-index order 0..N-1 where run r has
/// binary digits r_1..r_k with r_1 most significant.
#[derive(Debug, Clone)]
pub struct RunMatrix {
    runs: usize,
    factors: usize,
    data: Vec<i8>,
}

impl RunMatrix {
    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn get(&self, run: usize, factor: usize) -> i8 {
        self.data[run * self.factors + factor]
    }

    pub fn row(&self, run: usize) -> &[i8] {
        &self.data[run * self.factors..(run + 1) * self.factors]
    }

    /// Sign mask of one factor: bit r set iff the entry at run r is -1.
    pub fn column_sign_mask(&self, factor: usize) -> Vec<u64> {
        let mut mask = vec![0u64; self.runs.div_ceil(64)];
        for r in 0..self.runs {
            if self.get(r, factor) < 0 {
                mask[r / 64] |= 1 << (r % 64);
            }
        }
        mask
    }
}

/// Materialises the run matrix; capped at k <= 16 (65536 runs).
pub fn expand_runs(d: &RegularDesign) -> Result<RunMatrix> {
    if d.k() > MAX_EXPAND_K {
        return Err(Error::SizeLimit {
            what: "k for run expansion",
            cap: MAX_EXPAND_K as u64,
            actual: d.k() as u64,
        });
    }
    let runs = 1usize << d.k();
    let factors = d.n();
    let mut data = Vec::with_capacity(runs * factors);
    for r in 0..runs as u32 {
        for c in d.columns() {
            let parity = (r & c.bits()).count_ones() & 1;
            data.push(if parity == 0 { 1 } else { -1 });
        }
    }
    Ok(RunMatrix {
        runs,
        factors,
        data,
    })
}

/// Checks strength t against the expanded run matrix: every projection onto
/// t factors shows each of the 2^t sign patterns equally often. Vacuously
/// true for t = 0 or t > n.
pub fn strength_oracle(d: &RegularDesign, t: u32) -> Result<bool> {
    if d.k() > MAX_ORACLE_K {
        return Err(Error::SizeLimit {
            what: "k for the strength oracle",
            cap: MAX_ORACLE_K as u64,
            actual: d.k() as u64,
        });
    }
    if t > MAX_ORACLE_T {
        return Err(Error::SizeLimit {
            what: "t for the strength oracle",
            cap: MAX_ORACLE_T as u64,
            actual: t as u64,
        });
    }
    if t == 0 || t as usize > d.n() {
        return Ok(true);
    }
    let matrix = expand_runs(d)?;
    let runs = matrix.runs();
    let expected = (runs >> t) as u32;
    if expected == 0 {
        return Ok(false); // more sign patterns than runs
    }
    let t = t as usize;
    for combo in (0..d.n()).combinations(t) {
        let mut counts = vec![0u32; 1 << t];
        for r in 0..runs {
            let mut pattern = 0usize;
            for &c in &combo {
                pattern = pattern << 1 | (matrix.get(r, c) < 0) as usize;
            }
            counts[pattern] += 1;
        }
        if counts.iter().any(|&c| c != expected) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rewrites a rank-r design on r coordinates: columns become coordinate
/// vectors relative to the first maximal independent subset of columns.
/// Linear relations among columns, and hence the wordlength pattern, are
/// unchanged. Full-rank designs are returned as-is.
pub fn reembed(d: &RegularDesign) -> Result<RegularDesign> {
    let r = d.rank();
    if r == d.k() {
        return Ok(d.clone());
    }
    // Echelon basis over the chosen pivot columns, tagged with the
    // combination of pivot columns that produced each row.
    let mut echelon: Vec<(u32, u32, u32)> = Vec::new(); // (lead, value, combo)
    let mut basis_count = 0u32;
    let mut new_columns = Vec::with_capacity(d.n());
    for c in d.columns() {
        let mut v = c.bits();
        let mut combo = 0u32;
        for &(lead, value, tag) in &echelon {
            if v >> lead & 1 == 1 {
                v ^= value;
                combo ^= tag;
            }
        }
        if v != 0 {
            basis_count += 1;
            let tag = 1u32 << (r - basis_count); // coordinate basis_count = MSB side
            echelon.push((31 - v.leading_zeros(), v, combo ^ tag));
            echelon.sort_unstable_by_key(|e| std::cmp::Reverse(e.0));
            new_columns.push(BitVec::new(r, tag)?);
        } else {
            new_columns.push(BitVec::new(r, combo)?);
        }
    }
    RegularDesign::from_columns(new_columns)
}
