//! Maximality testing, exact isomorphism via canonical forms under
//! invertible GF(2) row transformations, and fingerprint pre-filtering.
//!
//! Two designs are isomorphic when some invertible k x k transform maps one
//! column set onto the other. For k <= 5 the full transform group is small
//! enough to scan (|GL(5,2)| = 9,999,360), so canonical forms are exact.
//! Beyond that, fingerprints separate most designs and an explicit
//! transform search settles the rest within a node budget.

use std::collections::HashSet;

use itertools::Itertools;

use crate::design::{
    alias_profile, reembed, resolution, wordlength_pattern, RegularDesign, WordlengthPattern,
};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Largest k for exact orbit minimization.
pub const MAX_CANONICAL_K: u32 = 5;

/// Default node budget for the transform search behind k >= 6 verdicts.
pub const ISO_SEARCH_BUDGET: u64 = 5_000_000;

/// Outcome of [`is_maximal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalityReport {
    /// Ground truth from the definitional criterion: no column can be
    /// appended without dropping below resolution IV.
    pub is_maximal: bool,
    /// When not maximal, the smallest appendable column (as an integer).
    pub witness: Option<BitVec>,
    /// Whether the alias-profile criterion (all non-main-effect m > 0)
    /// agreed with the definitional one.
    pub criterion_agreement: bool,
}

/// Checks maximality of a full-rank resolution >= IV design with two
/// independent criteria: (A) every non-main-effect alias set has m > 0,
/// and (B) every nonzero vector is a column or an XOR of two columns.
/// B is definitional and decides; A's agreement is reported.
pub fn is_maximal(d: &RegularDesign) -> Result<MaximalityReport> {
    let profile = alias_profile(d)?; // also enforces full rank and the k cap
    if !resolution(d)?.at_least(4) {
        return Err(Error::ResolutionTooLow { required: 4 });
    }
    let k = d.k();
    let size = 1u64 << k;
    let mut covered = vec![0u64; (size as usize).div_ceil(64)];
    let mut cover = |v: u32| covered[v as usize / 64] |= 1 << (v % 64);
    for c in d.columns() {
        cover(c.bits());
    }
    for (a, b) in d.columns().iter().tuple_combinations() {
        cover((*a ^ *b).bits());
    }
    let mut witness = None;
    for v in 1..size {
        if covered[v as usize / 64] >> (v % 64) & 1 == 0 {
            witness = Some(BitVec::new(k, v as u32)?);
            break;
        }
    }
    let b_ok = witness.is_none();
    let a_ok = profile.non_main_m().iter().all(|&m| m > 0);
    Ok(MaximalityReport {
        is_maximal: b_ok,
        witness,
        criterion_agreement: a_ok == b_ok,
    })
}

/// Lexicographically least sorted column set over the design's orbit under
/// invertible row transformations. Exact and deterministic for k <= 5.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct CanonicalForm {
    pub k: u32,
    pub columns: Vec<BitVec>,
}

/// Walks every invertible k x k transform, presenting each as a lookup
/// table from packed value to packed image. The table is built
/// incrementally from basis images, so a full scan costs little more than
/// |GL(k,2)| table suffix updates.
fn scan_invertible<F: FnMut(&[u32])>(k: u32, leaf: &mut F) {
    let total = 1u32 << k;
    let mut table = vec![0u32; total as usize];
    rec_invertible(k, total, 0, 1, &mut table, leaf);
}

fn rec_invertible<F: FnMut(&[u32])>(
    k: u32,
    total: u32,
    depth: u32,
    span: u32,
    table: &mut [u32],
    leaf: &mut F,
) {
    if depth == k {
        leaf(table);
        return;
    }
    let block = 1u32 << depth;
    for img in 1..total {
        if span >> img & 1 == 1 {
            continue; // dependent on earlier basis images
        }
        for v in 0..block {
            table[(block + v) as usize] = table[v as usize] ^ img;
        }
        let mut new_span = span;
        let mut rest = span;
        while rest != 0 {
            let s = rest.trailing_zeros();
            rest &= rest - 1;
            new_span |= 1 << (s ^ img);
        }
        rec_invertible(k, total, depth + 1, new_span, table, leaf);
    }
}

/// Compares two equal-size column sets packed as value bitmasks in sorted
/// lexicographic order: the set containing the smallest differing value
/// comes first.
fn mask_precedes(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    diff != 0 && a >> diff.trailing_zeros() & 1 == 1
}

/// Exact canonical form by full orbit scan; k <= 5, full rank required.
pub fn canonical_form(d: &RegularDesign) -> Result<CanonicalForm> {
    let k = d.k();
    if k > MAX_CANONICAL_K {
        return Err(Error::SizeLimit {
            what: "k for exact canonicalization (use fingerprints beyond)",
            cap: MAX_CANONICAL_K as u64,
            actual: k as u64,
        });
    }
    let rank = d.rank();
    if rank < k {
        return Err(Error::ReducedRank { rank, k });
    }
    let cols: Vec<u32> = d.columns().iter().map(|c| c.bits()).collect();
    let mut best: Option<u32> = None;
    scan_invertible(k, &mut |table| {
        let mut mask = 0u32;
        for &c in &cols {
            mask |= 1 << table[c as usize];
        }
        match best {
            None => best = Some(mask),
            Some(b) => {
                if mask_precedes(mask, b) {
                    best = Some(mask);
                }
            }
        }
    });
    let mut mask = best.expect("GL(k,2) is nonempty");
    let mut columns = Vec::with_capacity(d.n());
    while mask != 0 {
        let v = mask.trailing_zeros();
        mask &= mask - 1;
        columns.push(BitVec::new(k, v)?);
    }
    Ok(CanonicalForm { k, columns })
}

pub(crate) enum TransformSearch {
    Found,
    NotFound,
    BudgetExhausted,
}

/// Searches for an invertible transform mapping the column set of `d1` onto
/// that of `d2` by assigning images (drawn from d2's columns) to a pivot
/// column basis of d1, pruning whenever a determined column image leaves
/// d2's column set. Exhausting the search space without a hit disproves
/// isomorphism; only a budget stop is inconclusive.
pub(crate) fn find_transform(
    d1: &RegularDesign,
    d2: &RegularDesign,
    budget: u64,
) -> TransformSearch {
    if d1.k() != d2.k() || d1.n() != d2.n() {
        return TransformSearch::NotFound;
    }
    let k = d1.k() as usize;

    // Pivot basis of d1 and each column's representation over it.
    let mut echelon: Vec<(u32, u32, u32)> = Vec::new(); // (lead, value, pivot combo)
    let mut reps: Vec<u32> = Vec::with_capacity(d1.n());
    let mut pivot_count = 0u32;
    for c in d1.columns() {
        let mut v = c.bits();
        let mut combo = 0u32;
        for &(lead, value, tag) in &echelon {
            if v >> lead & 1 == 1 {
                v ^= value;
                combo ^= tag;
            }
        }
        if v != 0 {
            let tag = 1u32 << pivot_count;
            pivot_count += 1;
            echelon.push((31 - v.leading_zeros(), v, combo ^ tag));
            echelon.sort_unstable_by_key(|e| std::cmp::Reverse(e.0));
            reps.push(tag);
        } else {
            reps.push(combo);
        }
    }
    debug_assert_eq!(pivot_count as usize, k, "full-rank inputs expected");

    // Columns that become determined once pivot image `level` is chosen.
    let mut by_level: Vec<Vec<u32>> = vec![Vec::new(); k];
    for &rep in &reps {
        by_level[31 - rep.leading_zeros() as usize].push(rep);
    }

    let targets: Vec<u32> = d2.columns().iter().map(|c| c.bits()).collect();
    let target_set: HashSet<u32> = targets.iter().copied().collect();

    struct Search<'a> {
        by_level: &'a [Vec<u32>],
        targets: &'a [u32],
        target_set: &'a HashSet<u32>,
        images: Vec<u32>,
        nodes: u64,
        budget: u64,
    }

    enum Outcome {
        Found,
        NotFound,
        Stop,
    }

    impl Search<'_> {
        fn rec(&mut self, level: usize, span: &mut HashSet<u32>) -> Outcome {
            if level == self.by_level.len() {
                return Outcome::Found;
            }
            for &cand in self.targets {
                if span.contains(&cand) {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Outcome::Stop;
                }
                self.images.push(cand);
                let ok = self.by_level[level].iter().all(|&rep| {
                    let mut img = 0u32;
                    let mut r = rep;
                    while r != 0 {
                        let i = r.trailing_zeros() as usize;
                        r &= r - 1;
                        img ^= self.images[i];
                    }
                    self.target_set.contains(&img)
                });
                if ok {
                    let added: Vec<u32> = span
                        .iter()
                        .map(|&s| s ^ cand)
                        .filter(|v| !span.contains(v))
                        .collect();
                    for &v in &added {
                        span.insert(v);
                    }
                    match self.rec(level + 1, span) {
                        Outcome::NotFound => {}
                        done => return done,
                    }
                    for v in added {
                        span.remove(&v);
                    }
                }
                self.images.pop();
            }
            Outcome::NotFound
        }
    }

    let mut search = Search {
        by_level: &by_level,
        targets: &targets,
        target_set: &target_set,
        images: Vec::with_capacity(k),
        nodes: 0,
        budget,
    };
    let mut span = HashSet::from([0u32]);
    match search.rec(0, &mut span) {
        Outcome::Found => TransformSearch::Found,
        Outcome::NotFound => TransformSearch::NotFound,
        Outcome::Stop => TransformSearch::BudgetExhausted,
    }
}

/// Isomorphism verdict; `Unknown` only occurs for k >= 6 when the
/// transform search hits its budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Unknown,
}

/// Decides isomorphism of two full-rank designs: fingerprint filter first,
/// then exact canonical forms for k <= 5, otherwise a budgeted transform
/// search. Mismatched (k, n) is simply not isomorphic.
pub fn are_isomorphic(d1: &RegularDesign, d2: &RegularDesign) -> Result<IsoVerdict> {
    for d in [d1, d2] {
        let rank = d.rank();
        if rank < d.k() {
            return Err(Error::ReducedRank { rank, k: d.k() });
        }
    }
    if d1.k() != d2.k() || d1.n() != d2.n() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if fingerprint(d1)? != fingerprint(d2)? {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if d1.k() <= MAX_CANONICAL_K {
        return Ok(if canonical_form(d1)? == canonical_form(d2)? {
            IsoVerdict::Isomorphic
        } else {
            IsoVerdict::NotIsomorphic
        });
    }
    Ok(match find_transform(d1, d2, ISO_SEARCH_BUDGET) {
        TransformSearch::Found => IsoVerdict::Isomorphic,
        TransformSearch::NotFound => IsoVerdict::NotIsomorphic,
        TransformSearch::BudgetExhausted => IsoVerdict::Unknown,
    })
}

/// Isomorphism-invariant digest: run count, factor count, wordlength
/// pattern, and the sorted alias m-multisets split by main effect status.
/// Reduced-rank designs are re-embedded first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct DesignFingerprint {
    pub runs: u64,
    pub n: usize,
    pub wlp: WordlengthPattern,
    pub m_non_main: Vec<u32>,
    pub m_main: Vec<u32>,
}

impl DesignFingerprint {
    /// Stable FNV-1a digest of the fingerprint contents, for display.
    pub fn hash_hex(&self) -> String {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut feed = |x: u64| {
            for byte in x.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(self.runs);
        feed(self.n as u64);
        feed(u64::MAX);
        for &b in self.wlp.counts() {
            feed(b);
        }
        feed(u64::MAX);
        for &m in &self.m_non_main {
            feed(m as u64);
        }
        feed(u64::MAX);
        for &m in &self.m_main {
            feed(m as u64);
        }
        format!("{h:016x}")
    }
}

pub fn fingerprint(d: &RegularDesign) -> Result<DesignFingerprint> {
    let embedded;
    let d = if d.rank() < d.k() {
        embedded = reembed(d)?;
        &embedded
    } else {
        d
    };
    let wlp = wordlength_pattern(d)?;
    let profile = alias_profile(d)?;
    Ok(DesignFingerprint {
        runs: d.n_runs(),
        n: d.n(),
        wlp,
        m_non_main: profile.non_main_m(),
        m_main: profile.main_m(),
    })
}
