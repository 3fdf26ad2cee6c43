//! Exhaustive enumeration of maximal designs at small widths,
//! minimum-aberration projection search, grouped deletion bookkeeping for
//! projections of the 5N/16 family, and verifiers for the structural
//! identities (doubling transforms, the projection-bound inequality) used
//! throughout the crate.

use std::cmp::Ordering;
use std::collections::HashSet;

use itertools::Itertools;

use crate::analyze::{
    canonical_form, find_transform, fingerprint, is_maximal, CanonicalForm, DesignFingerprint,
    TransformSearch, ISO_SEARCH_BUDGET, MAX_CANONICAL_K,
};
use crate::construct::{
    double, family_5n16, predicted_double_alias_multisets, predicted_double_wlp, project_drop,
};
use crate::design::{
    alias_profile, reembed, resolution, wordlength_pattern, RegularDesign, Resolution,
    WordlengthPattern,
};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Default cap on states a search may visit before it refuses to run.
pub const DEFAULT_VISIT_BUDGET: u64 = 100_000_000;

/// Largest family exponent t for the group-symmetry-reduced projection
/// search (subsets of each 2^t-element group are enumerated as bitmasks).
pub const MAX_XSTAR_T: u32 = 4;

/// Largest t accepted by [`DeletionSpec`].
pub const MAX_DELETION_T: u32 = 16;

/// Largest t accepted by [`verify_thm41_inequality`] (keeps the exact
/// cross-multiplied comparison comfortably inside i128).
pub const MAX_INEQUALITY_T: u32 = 20;

/// Visit budget, overridable through the `FRACFAC_BUDGET` environment
/// variable.
pub fn visit_budget() -> u64 {
    std::env::var("FRACFAC_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_VISIT_BUDGET)
}

/// All isomorphism classes of maximal resolution >= IV designs of width k
/// with n in [n_min, n_max], sorted by (n, canonical form).
///
/// Backtracks over column sets in ascending integer order. A partial set
/// is extended only by values that are neither columns nor pair-XORs
/// (which would create a length-3 word); a set covering every nonzero
/// value is complete and cannot grow further. Since every maximal design
/// has full rank, each class has a member containing the whole standard
/// basis, so branches that skip past an unchosen unit vector are
/// redundant and pruned.
pub fn enumerate_maximal(k: u32, n_min: usize, n_max: usize) -> Result<Vec<CanonicalForm>> {
    if k > MAX_CANONICAL_K {
        return Err(Error::SizeLimit {
            what: "k for maximal-design enumeration",
            cap: MAX_CANONICAL_K as u64,
            actual: k as u64,
        });
    }
    if k == 0 {
        return Err(Error::domain("width k must be at least 1"));
    }
    let cap_bound = 1usize << (k - 1);
    if n_min < k as usize || n_max > cap_bound || n_min > n_max {
        return Err(Error::domain(format!(
            "n range [{n_min}, {n_max}] must lie within [{k}, {cap_bound}]"
        )));
    }
    let total = 1u32 << k;
    let full_cover = if total == 32 {
        u32::MAX ^ 1
    } else {
        ((1u32 << total) - 1) ^ 1
    };
    let mut state = Census {
        k,
        total,
        full_cover,
        n_min,
        n_max,
        chosen: Vec::with_capacity(n_max),
        reps: Vec::new(),
    };
    state.extend(1, 0)?;
    let mut classes: Vec<(usize, CanonicalForm)> = state
        .reps
        .into_iter()
        .map(|(_, d)| Ok((d.n(), canonical_form(&d)?)))
        .collect::<Result<_>>()?;
    classes.sort();
    Ok(classes.into_iter().map(|(_, form)| form).collect())
}

struct Census {
    k: u32,
    total: u32,
    full_cover: u32,
    n_min: usize,
    n_max: usize,
    chosen: Vec<u32>,
    reps: Vec<(DesignFingerprint, RegularDesign)>,
}

impl Census {
    fn extend(&mut self, start: u32, covered: u32) -> Result<()> {
        if covered == self.full_cover {
            if self.chosen.len() >= self.n_min {
                self.record()?;
            }
            return Ok(());
        }
        if self.chosen.len() == self.n_max {
            return Ok(());
        }
        for c in start..self.total {
            if covered >> c & 1 == 0 {
                let mut next = covered | 1 << c;
                for &x in &self.chosen {
                    next |= 1 << (x ^ c);
                }
                self.chosen.push(c);
                self.extend(c + 1, next)?;
                self.chosen.pop();
            }
            if c.is_power_of_two() {
                break; // basis vector: sets not containing it are redundant
            }
        }
        Ok(())
    }

    fn record(&mut self) -> Result<()> {
        let cols: Vec<BitVec> = self
            .chosen
            .iter()
            .map(|&c| BitVec::new(self.k, c))
            .collect::<Result<_>>()?;
        let d = RegularDesign::from_columns(cols)?;
        let report = is_maximal(&d)?;
        if !report.is_maximal || !report.criterion_agreement {
            return Err(Error::inconsistent(
                "complete cover disagreed with the maximality check",
            ));
        }
        let f = fingerprint(&d)?;
        for (rf, rd) in &self.reps {
            if *rf != f {
                continue;
            }
            match find_transform(&d, rd, ISO_SEARCH_BUDGET) {
                TransformSearch::Found => return Ok(()),
                TransformSearch::NotFound => {}
                TransformSearch::BudgetExhausted => {
                    if canonical_form(&d)? == canonical_form(rd)? {
                        return Ok(());
                    }
                }
            }
        }
        self.reps.push((f, d));
        Ok(())
    }
}

/// Result of a minimum-aberration projection search.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SearchReport {
    /// Human-readable record of what was searched and how.
    pub parameters: String,
    /// Lexicographically minimal wordlength pattern over the visited space.
    pub best_wlp: WordlengthPattern,
    /// All optima; reduced to isomorphism classes when deduplication is on
    /// (fingerprint-distinct beyond the exact-isomorphism width cap).
    pub winners: Vec<RegularDesign>,
    /// Number of candidates scored.
    pub visited: u64,
    /// Whether more than one candidate achieved the best pattern.
    pub ties: bool,
}

/// Lexicographic aberration comparison of wordlength patterns; the shorter
/// pattern is zero-padded. Less means less aberration (better).
pub fn ma_compare(w1: &WordlengthPattern, w2: &WordlengthPattern) -> Ordering {
    let len = w1.counts().len().max(w2.counts().len());
    for i in 0..len {
        let a = w1.counts().get(i).copied().unwrap_or(0);
        let b = w2.counts().get(i).copied().unwrap_or(0);
        match a.cmp(&b) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

/// Exact C(n, k) saturating at u128::MAX, for budget checks only.
fn subset_count(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut res: u128 = 1;
    for i in 1..=k {
        res = match res.checked_mul((n - k + i) as u128) {
            Some(v) => v / i as u128, // exact: prefix products are binomials
            None => return u128::MAX,
        };
    }
    res
}

/// Scores every n-column subset of `base` by wordlength pattern and
/// reports the minimum-aberration projections, using the budget from
/// [`visit_budget`]. When C(n_base, n) exceeds the budget and `base` is
/// (columnwise) a member of the 5N/16 doubling family, the search falls
/// back to an exact group-symmetry reduction; winners are then class
/// representatives of the group-permutation action.
pub fn ma_projection_search(base: &RegularDesign, n: usize, dedupe: bool) -> Result<SearchReport> {
    ma_projection_search_with_budget(base, n, dedupe, visit_budget())
}

/// [`ma_projection_search`] with an explicit visit budget.
pub fn ma_projection_search_with_budget(
    base: &RegularDesign,
    n: usize,
    dedupe: bool,
    budget: u64,
) -> Result<SearchReport> {
    if n == 0 || n > base.n() {
        return Err(Error::domain(format!(
            "projection size {n} must be in 1..={}",
            base.n()
        )));
    }
    let needed = subset_count(base.n() as u64, n as u64);
    if needed > budget as u128 {
        if let Some(t) = matches_5n16_family(base) {
            return xstar_reduced_search(base, t, n, dedupe, budget);
        }
        return Err(Error::Budget {
            needed: u64::try_from(needed).unwrap_or(u64::MAX),
            budget,
            hint: "; the group-symmetry reduction applies only to 5N/16 family bases".into(),
        });
    }

    let mut best: Option<WordlengthPattern> = None;
    let mut winners: Vec<Vec<usize>> = Vec::new();
    let mut visited = 0u64;
    for combo in (0..base.n()).combinations(n) {
        visited += 1;
        let d = RegularDesign::from_columns(combo.iter().map(|&i| base.column(i)).collect())?;
        let w = wordlength_pattern(&d)?;
        match &best {
            None => {
                best = Some(w);
                winners.push(combo);
            }
            Some(b) => match ma_compare(&w, b) {
                Ordering::Less => {
                    best = Some(w);
                    winners.clear();
                    winners.push(combo);
                }
                Ordering::Equal => winners.push(combo),
                Ordering::Greater => {}
            },
        }
    }
    let ties = winners.len() > 1;
    let mut winner_designs: Vec<RegularDesign> = winners
        .into_iter()
        .map(|combo| {
            RegularDesign::from_columns(combo.into_iter().map(|i| base.column(i)).collect())
        })
        .collect::<Result<_>>()?;
    if dedupe {
        winner_designs = reduce_to_classes(winner_designs)?;
    }
    Ok(SearchReport {
        parameters: format!(
            "ma-projection exhaustive base_n={} n={n} dedupe={dedupe}",
            base.n()
        ),
        best_wlp: best.expect("at least one subset was scored"),
        winners: winner_designs,
        visited,
        ties,
    })
}

/// Collapses a list of designs to representatives of isomorphism classes:
/// fingerprint buckets first, then an exact transform search (with a
/// canonical-form fallback) inside each bucket. Beyond the exact width
/// cap, equal fingerprints are treated as one class.
fn reduce_to_classes(cands: Vec<RegularDesign>) -> Result<Vec<RegularDesign>> {
    struct Rep {
        f: DesignFingerprint,
        embedded: RegularDesign,
        original: RegularDesign,
    }
    let mut reps: Vec<Rep> = Vec::new();
    'outer: for d in cands {
        let f = fingerprint(&d)?;
        let e = reembed(&d)?;
        for rep in &reps {
            if rep.f != f {
                continue;
            }
            if e.k() > MAX_CANONICAL_K {
                continue 'outer;
            }
            match find_transform(&e, &rep.embedded, ISO_SEARCH_BUDGET) {
                TransformSearch::Found => continue 'outer,
                TransformSearch::NotFound => {}
                TransformSearch::BudgetExhausted => {
                    if canonical_form(&e)? == canonical_form(&rep.embedded)? {
                        continue 'outer;
                    }
                }
            }
        }
        reps.push(Rep {
            f,
            embedded: e,
            original: d,
        });
    }
    Ok(reps.into_iter().map(|r| r.original).collect())
}

/// Returns t when `base`'s column set equals family_5n16(t)'s exactly.
fn matches_5n16_family(base: &RegularDesign) -> Option<u32> {
    let k = base.k();
    if k < 4 {
        return None;
    }
    let t = k - 4;
    if t > 27 || base.n() != 5usize << t {
        return None;
    }
    let fam = family_5n16(t).ok()?;
    let mut a: Vec<u32> = base.columns().iter().map(|c| c.bits()).collect();
    let mut b: Vec<u32> = fam.columns().iter().map(|c| c.bits()).collect();
    a.sort_unstable();
    b.sort_unstable();
    (a == b).then_some(t)
}

/// Projection search over family_5n16(t) reduced by the interchangeability
/// of the five generating groups: deletions are enumerated as
/// non-increasing 5-tuples of per-group index subsets, one representative
/// per group-permutation class. Group permutations are automorphisms of
/// the family (the five base columns sum to zero, so any permutation of
/// them is linear), hence class members project to isomorphic designs and
/// the reduction is exact for aberration ranking.
fn xstar_reduced_search(
    base: &RegularDesign,
    t: u32,
    n: usize,
    dedupe: bool,
    budget: u64,
) -> Result<SearchReport> {
    if t > MAX_XSTAR_T {
        return Err(Error::Budget {
            needed: u64::MAX,
            budget,
            hint: format!("; the group-symmetry reduction supports t <= {MAX_XSTAR_T}"),
        });
    }
    let block = 1usize << t;
    let u = base.n() - n;
    let fam = family_5n16(t)?;
    let mut search = XstarSearch {
        base,
        fam: &fam,
        block,
        budget,
        masks: Vec::with_capacity(5),
        best: None,
        winners: Vec::new(),
        visited: 0,
        raw_winner_count: 0,
    };
    search.extend(0, (1u32 << block) - 1, u)?;
    let ties = search.raw_winner_count > 1;
    let mut winners = search.winners;
    if dedupe {
        winners = reduce_to_classes(winners)?;
    }
    Ok(SearchReport {
        parameters: format!(
            "ma-projection xstar-reduced t={t} base_n={} n={n} dedupe={dedupe} \
             (winners are group-symmetry class representatives)",
            base.n()
        ),
        best_wlp: search.best.expect("at least one deletion class was scored"),
        winners,
        visited: search.visited,
        ties,
    })
}

struct XstarSearch<'a> {
    base: &'a RegularDesign,
    fam: &'a RegularDesign,
    block: usize,
    budget: u64,
    masks: Vec<u32>,
    best: Option<WordlengthPattern>,
    winners: Vec<RegularDesign>,
    visited: u64,
    raw_winner_count: u64,
}

impl XstarSearch<'_> {
    fn extend(&mut self, group: usize, max_mask: u32, remaining: usize) -> Result<()> {
        if group == 5 {
            if remaining == 0 {
                self.score()?;
            }
            return Ok(());
        }
        let groups_left = 4 - group;
        let mut mask = max_mask;
        loop {
            let c = mask.count_ones() as usize;
            if c <= remaining && remaining - c <= groups_left * self.block {
                self.masks.push(mask);
                self.extend(group + 1, mask, remaining - c)?;
                self.masks.pop();
            }
            if mask == 0 {
                return Ok(());
            }
            mask -= 1;
        }
    }

    fn score(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::Budget {
                needed: self.visited,
                budget: self.budget,
                hint: "; even the group-symmetry reduction exceeds the budget".into(),
            });
        }
        let mut deleted: HashSet<u32> = HashSet::new();
        for (g, &mask) in self.masks.iter().enumerate() {
            let mut m = mask;
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                deleted.insert(self.fam.column(j * 5 + g).bits());
            }
        }
        let cols: Vec<BitVec> = self
            .base
            .columns()
            .iter()
            .copied()
            .filter(|c| !deleted.contains(&c.bits()))
            .collect();
        let d = RegularDesign::from_columns(cols)?;
        let w = wordlength_pattern(&d)?;
        match &self.best {
            None => {
                self.best = Some(w);
                self.winners.push(d);
                self.raw_winner_count = 1;
            }
            Some(b) => match ma_compare(&w, b) {
                Ordering::Less => {
                    self.best = Some(w);
                    self.winners.clear();
                    self.winners.push(d);
                    self.raw_winner_count = 1;
                }
                Ordering::Equal => {
                    self.winners.push(d);
                    self.raw_winner_count += 1;
                }
                Ordering::Greater => {}
            },
        }
        Ok(())
    }
}

/// A deletion of factors from family_5n16(t), recorded per generating
/// group: group g in 0..5 loses the factors whose t-bit block-index
/// vectors appear in `deleted[g]`. The factor with index vector j in group
/// g sits at column j·5 + g of the family's column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionSpec {
    t: u32,
    deleted: [Vec<BitVec>; 5],
}

impl DeletionSpec {
    pub fn new(t: u32, mut deleted: [Vec<BitVec>; 5]) -> Result<Self> {
        if t == 0 {
            return Err(Error::domain("deletion bookkeeping needs t >= 1"));
        }
        if t > MAX_DELETION_T {
            return Err(Error::SizeLimit {
                what: "t for deletion bookkeeping",
                cap: MAX_DELETION_T as u64,
                actual: t as u64,
            });
        }
        for (g, set) in deleted.iter_mut().enumerate() {
            for v in set.iter() {
                if v.width() != t {
                    return Err(Error::domain(format!(
                        "group {g}: index vector {v} has width {}, expected {t}",
                        v.width()
                    )));
                }
            }
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::domain(format!(
                    "group {g}: an index vector is deleted twice"
                )));
            }
        }
        Ok(DeletionSpec { t, deleted })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Total number of deleted factors u.
    pub fn u(&self) -> usize {
        self.deleted.iter().map(Vec::len).sum()
    }

    pub fn group(&self, g: usize) -> &[BitVec] {
        &self.deleted[g]
    }

    /// Deleted positions in the family's column order, ascending.
    pub fn deleted_column_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .deleted
            .iter()
            .enumerate()
            .flat_map(|(g, set)| set.iter().map(move |j| j.bits() as usize * 5 + g))
            .collect();
        out.sort_unstable();
        out
    }
}

/// The design a deletion stands for: family_5n16(t) minus the deleted
/// columns.
pub fn deletion_projection(spec: &DeletionSpec) -> Result<RegularDesign> {
    let fam = family_5n16(spec.t())?;
    let drop = spec.deleted_column_indices();
    if drop.len() == fam.n() {
        return Err(Error::domain("every factor was deleted"));
    }
    project_drop(&fam, &drop)
}

/// Alias-set sizes of a deletion-projection of family_5n16(t), computed
/// from the deletion bookkeeping alone. The non-main-effect alias sets of
/// the family split into 10·2^t between-group sets (one per unordered
/// group pair {X, Y} and offset vector k, holding interactions X^i Y^j
/// with i XOR j = k) and 2^t − 1 within-group sets (offset k != 0, holding
/// X^i X^j with i XOR j = k, pooled over the five groups). After deleting
/// n_X indices per group, the surviving counts are
///
///   between {X,Y}, offset k:  2^t − n_X − n_Y + n^k_{X,Y}
///   within, offset k:         5·2^(t−1) − u + Σ_X n^k_{X,X}
///
/// where n^k counts deleted pairs at offset k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedAliasIndex {
    t: u32,
    between: Vec<u64>,
    within: Vec<u64>,
}

impl GroupedAliasIndex {
    pub fn for_spec(spec: &DeletionSpec) -> Self {
        let t = spec.t();
        let block = 1usize << t;
        let u = spec.u() as i64;
        let counts: Vec<i64> = (0..5).map(|g| spec.group(g).len() as i64).collect();

        let mut between = Vec::with_capacity(10 * block);
        for (x, y) in (0..5).tuple_combinations() {
            let base = block as i64 - counts[x] - counts[y];
            let mut nk = vec![0i64; block];
            for i in spec.group(x) {
                for j in spec.group(y) {
                    nk[(i.bits() ^ j.bits()) as usize] += 1;
                }
            }
            for offset in nk {
                let m = base + offset;
                debug_assert!(m >= 0, "surviving pair counts are nonnegative");
                between.push(m as u64);
            }
        }

        let wbase = 5 * (block as i64 / 2) - u;
        let mut nkk = vec![0i64; block];
        for g in 0..5 {
            for (i, j) in spec.group(g).iter().tuple_combinations() {
                nkk[(i.bits() ^ j.bits()) as usize] += 1;
            }
        }
        let within = nkk[1..]
            .iter()
            .map(|&offset| {
                let m = wbase + offset;
                debug_assert!(m >= 0, "surviving pair counts are nonnegative");
                m as u64
            })
            .collect();
        GroupedAliasIndex { t, between, within }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// m of each between-group set, pair-major: entry p·2^t + k for the
    /// p-th unordered group pair (lexicographic) and offset k.
    pub fn between(&self) -> &[u64] {
        &self.between
    }

    /// m of each within-group set, entry k − 1 for offset k = 1..2^t.
    pub fn within(&self) -> &[u64] {
        &self.within
    }

    pub fn sum_m_squared(&self) -> u128 {
        self.between
            .iter()
            .chain(self.within.iter())
            .map(|&m| (m as u128) * (m as u128))
            .sum()
    }
}

/// Sum of squared alias-set sizes over the non-main-effect sets of the
/// deletion-projection — the quantity a minimum-aberration projection of
/// the family must minimize (it determines B_4 for these
/// resolution >= IV projections).
pub fn deletion_objective(spec: &DeletionSpec) -> u128 {
    GroupedAliasIndex::for_spec(spec).sum_m_squared()
}

/// One (t, u) instance of the projection-bound comparison: rhs_42 bounds
/// Σ m² from above for a projection of the 5N/16 family after u
/// deletions, rhs_43 = C(5·2^t − u, 2)² / (2^(t+3) − 1) bounds it from
/// below for any competing projection of the saturated design; `holds`
/// records the strict inequality rhs_42 < rhs_43.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct InequalityWitness {
    pub t: u32,
    pub u: u64,
    pub a: i128,
    pub b: i128,
    pub rhs_42: i128,
    pub rhs_43_num: i128,
    pub rhs_43_den: i128,
    pub holds: bool,
}

/// Exact check of the bound inequality for every t in [t_min, t_max] and
/// every u with 0 <= u <= 2^(t−1), where a and b are defined by
/// u(u+1)/2 = a·2^(t−1) + b with 0 <= b < 2^(t−1). The comparison
/// cross-multiplies in i128; no floating point. Each pair also self-checks
/// the pair-counting identity C(u,2) + u(2^t − u) = (2u − a)·2^(t−1) − b.
pub fn verify_thm41_inequality(t_min: u32, t_max: u32) -> Result<Vec<InequalityWitness>> {
    if t_min < 2 {
        return Err(Error::domain(
            "t_min must be at least 2; smaller run sizes are settled by direct enumeration",
        ));
    }
    if t_max > MAX_INEQUALITY_T {
        return Err(Error::SizeLimit {
            what: "t for the inequality check",
            cap: MAX_INEQUALITY_T as u64,
            actual: t_max as u64,
        });
    }
    if t_min > t_max {
        return Err(Error::domain(format!("empty t range [{t_min}, {t_max}]")));
    }
    let mut out = Vec::new();
    for t in t_min..=t_max {
        let pow: i128 = 1i128 << t;
        let half = pow / 2;
        for u in 0..=half {
            let tri = u * (u + 1) / 2;
            let a = tri / half;
            let b = tri % half;
            let pairs_lost = u * (u - 1) / 2 + u * (pow - u);
            if pairs_lost != (2 * u - a) * half - b {
                return Err(Error::inconsistent(format!(
                    "pair-count identity failed at t = {t}, u = {u}"
                )));
            }
            let rhs_42 = 4 * pow * (pow - u) * (pow - u)
                + 6 * pow * pow * pow
                + (4 * half + b) * (4 * half + b)
                + (pow - 2 * u + a - 1) * (5 * half) * (5 * half)
                + (2 * u - a - 1) * (4 * half) * (4 * half);
            let m = 5 * pow - u;
            let c2 = m * (m - 1) / 2;
            let (num, den) = (c2 * c2, (pow << 3) - 1);
            out.push(InequalityWitness {
                t,
                u: u as u64,
                a,
                b,
                rhs_42,
                rhs_43_num: num,
                rhs_43_den: den,
                holds: rhs_42 * den < num,
            });
        }
    }
    Ok(out)
}

/// The double of a resolution >= IV design with n >= 2 has resolution
/// exactly 4.
pub fn verify_thm21(d: &RegularDesign) -> Result<bool> {
    if d.n() < 2 {
        return Err(Error::domain("the exact-resolution claim needs n >= 2"));
    }
    if !resolution(d)?.at_least(4) {
        return Err(Error::ResolutionTooLow { required: 4 });
    }
    Ok(resolution(&double(d)?)? == Resolution::Finite(4))
}

/// The double's alias-set size multisets (split main/non-main) match the
/// prediction from the original profile, and f and g follow x -> 2x + 1.
pub fn verify_thm22(d: &RegularDesign) -> Result<bool> {
    let profile = alias_profile(d)?;
    let (pred_non_main, pred_main) = predicted_double_alias_multisets(&profile);
    let doubled_profile = alias_profile(&double(d)?)?;
    Ok(doubled_profile.non_main_m() == pred_non_main
        && doubled_profile.main_m() == pred_main
        && doubled_profile.g() == 2 * profile.g() + 1
        && doubled_profile.f() == 2 * profile.f() + 1)
}

/// The double's wordlength pattern matches the three-branch transform of
/// the original pattern, entrywise.
pub fn verify_thm23(d: &RegularDesign) -> Result<bool> {
    let predicted = predicted_double_wlp(&wordlength_pattern(d)?, d.n())?;
    let actual = wordlength_pattern(&double(d)?)?;
    Ok(predicted == actual)
}

/// Doubling preserves the aberration ordering of two same-size designs,
/// including ties.
pub fn verify_cor24(d1: &RegularDesign, d2: &RegularDesign) -> Result<bool> {
    if d1.n() != d2.n() {
        return Err(Error::domain(
            "aberration comparison needs designs with the same number of factors",
        ));
    }
    let before = ma_compare(&wordlength_pattern(d1)?, &wordlength_pattern(d2)?);
    let after = ma_compare(
        &wordlength_pattern(&double(d1)?)?,
        &wordlength_pattern(&double(d2)?)?,
    );
    Ok(before == after)
}

/// The two maximality criteria (alias-profile and definitional coverage)
/// agree on d.
pub fn verify_thm32(d: &RegularDesign) -> Result<bool> {
    Ok(is_maximal(d)?.criterion_agreement)
}

/// A design is maximal exactly when its double is.
pub fn verify_thm33(d: &RegularDesign) -> Result<bool> {
    let before = is_maximal(d)?;
    let after = is_maximal(&double(d)?)?;
    Ok(before.is_maximal == after.is_maximal)
}
