//! Column-form constructions: doubling, projection, foldover, and the named
//! design families, plus the closed-form predictions for how doubling
//! transforms wordlength patterns and alias profiles.

use crate::design::{AliasProfile, RegularDesign, WordlengthPattern};
use crate::error::{Error, Result};
use crate::gf2::{binomial, BitVec};

/// Widest design the saturated constructors will materialise (2^20 - 1
/// columns is already far past desk scale).
pub const MAX_SATURATED_K: u32 = 20;

/// The double of a design: each column c yields the plus column [c; 0] and
/// the minus column [c; 1], with the new coordinate appended last. Output
/// order is all plus columns in input order, then all minus columns.
///
/// In run-matrix terms the double is [X X; X -X]: run 2s + b of the double
/// carries row s of block b, so sorting runs by their last index bit
/// recovers the block form.
pub fn double(d: &RegularDesign) -> Result<RegularDesign> {
    if d.k() > 31 {
        return Err(Error::SizeLimit {
            what: "k for doubling",
            cap: 31,
            actual: d.k() as u64,
        });
    }
    let mut columns = Vec::with_capacity(2 * d.n());
    for c in d.columns() {
        columns.push(c.append_coord(false)?);
    }
    for c in d.columns() {
        columns.push(c.append_coord(true)?);
    }
    RegularDesign::from_columns(columns)
}

/// t successive doublings; t = 0 is the identity.
pub fn double_n(d: &RegularDesign, t: u32) -> Result<RegularDesign> {
    if d.k() + t > 31 {
        return Err(Error::SizeLimit {
            what: "k + t for repeated doubling",
            cap: 31,
            actual: (d.k() + t) as u64,
        });
    }
    let mut out = d.clone();
    for _ in 0..t {
        out = double(&out)?;
    }
    Ok(out)
}

/// Projection onto a subset of factors, keeping the ambient k. `keep` holds
/// 0-based column indices; order within the projection follows the input
/// design.
pub fn project(d: &RegularDesign, keep: &[usize]) -> Result<RegularDesign> {
    if keep.is_empty() {
        return Err(Error::domain("projection needs at least one column"));
    }
    let mut idx = keep.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if let Some(&bad) = idx.iter().find(|&&i| i >= d.n()) {
        return Err(Error::domain(format!(
            "column index {bad} out of range 0..{}",
            d.n()
        )));
    }
    RegularDesign::from_columns(idx.iter().map(|&i| d.column(i)).collect())
}

/// Complement projection: drops the listed 0-based columns.
pub fn project_drop(d: &RegularDesign, drop: &[usize]) -> Result<RegularDesign> {
    if let Some(&bad) = drop.iter().find(|&&i| i >= d.n()) {
        return Err(Error::domain(format!(
            "column index {bad} out of range 0..{}",
            d.n()
        )));
    }
    let keep: Vec<usize> = (0..d.n()).filter(|i| !drop.contains(i)).collect();
    project(d, &keep)
}

/// Foldover [X; -X]: every column gains a last coordinate 1; with
/// `add_new_factor` the block indicator column (0, ..., 0, 1) is appended
/// last. All odd-length defining words vanish, so a resolution-III input
/// folds to resolution >= IV.
pub fn foldover(d: &RegularDesign, add_new_factor: bool) -> Result<RegularDesign> {
    if d.k() > 31 {
        return Err(Error::SizeLimit {
            what: "k for foldover",
            cap: 31,
            actual: d.k() as u64,
        });
    }
    let mut columns = Vec::with_capacity(d.n() + 1);
    for c in d.columns() {
        columns.push(c.append_coord(true)?);
    }
    if add_new_factor {
        columns.push(BitVec::new(d.k() + 1, 1)?);
    }
    RegularDesign::from_columns(columns)
}

/// Full 2^k factorial: the standard basis columns.
pub fn full_factorial(k: u32) -> Result<RegularDesign> {
    if k == 0 {
        return Err(Error::domain("full factorial needs k >= 1"));
    }
    if k > 32 {
        return Err(Error::domain(format!("k must be at most 32, got {k}")));
    }
    RegularDesign::from_columns((1..=k).map(|i| BitVec::unit(k, i)).collect::<Result<_>>()?)
}

fn check_saturated_k(k: u32, min: u32) -> Result<()> {
    if k < min {
        return Err(Error::domain(format!(
            "saturated construction needs k >= {min}, got {k}"
        )));
    }
    if k > MAX_SATURATED_K {
        return Err(Error::SizeLimit {
            what: "k for saturated constructions",
            cap: MAX_SATURATED_K as u64,
            actual: k as u64,
        });
    }
    Ok(())
}

/// Saturated resolution-III design: all 2^k - 1 nonzero columns, ascending.
pub fn saturated_res3(k: u32) -> Result<RegularDesign> {
    check_saturated_k(k, 2)?;
    RegularDesign::from_columns(
        (1..1u64 << k)
            .map(|v| BitVec::new(k, v as u32))
            .collect::<Result<_>>()?,
    )
}

/// Saturated resolution-IV design with n = N/2: all 2^(k-1) columns whose
/// first coordinate is 1, ascending. Even, resolution IV, maximal.
pub fn saturated_res4(k: u32) -> Result<RegularDesign> {
    check_saturated_k(k, 3)?;
    RegularDesign::from_columns(
        (1u64 << (k - 1)..1u64 << k)
            .map(|v| BitVec::new(k, v as u32))
            .collect::<Result<_>>()?,
    )
}

/// The 16-run resolution-V half fraction: basic factors A..D and E = ABCD.
pub fn design_2_5_1() -> RegularDesign {
    RegularDesign::from_generator_words(4, &[vec![1, 2, 3, 4]]).expect("fixed generator is valid")
}

/// The unique (up to isomorphism) 32-run maximal resolution-IV design with
/// 9 factors. The columns are frozen output of `search::enumerate_maximal`;
/// a regeneration test re-runs the enumeration and compares canonical
/// forms.
pub fn design_2_9_4() -> RegularDesign {
    RegularDesign::from_strings(DESIGN_2_9_4_COLUMNS).expect("frozen columns are valid")
}

/// Frozen enumeration output backing [`design_2_9_4`]: the canonical
/// representative of the single 9-factor class found by
/// `enumerate_maximal(5, 9, 9)`.
const DESIGN_2_9_4_COLUMNS: &[&str] = &[
    "00001", "00010", "00100", "00111", "01000", "01011", "01101", "10000", "11110",
];

/// Maximal family with n = 5N/16: t-fold double of the 2^{5-1}.
pub fn family_5n16(t: u32) -> Result<RegularDesign> {
    double_n(&design_2_5_1(), t)
}

/// Maximal family with n = 9N/32: t-fold double of the 32-run 9-factor
/// maximal design.
pub fn family_9n32(t: u32) -> Result<RegularDesign> {
    double_n(&design_2_9_4(), t)
}

/// Predicted wordlength pattern of double(d) from the pattern of d, for a
/// design of resolution >= III with n columns. Each length-j count of the
/// double collects words of length j - 2s of the original combined with s
/// minus-block sign pairs:
///
///   odd j:            sum_s B_{j-2s} C(n-j+2s, s) 2^(j-2s-1), s <= (j-1)/2
///   even j, j/2 odd:  same sum with s <= j/2 - 1
///   even j, j/2 even: same sum with s <= j/2 - 1, plus C(n, j/2)
///
/// (all further capped at s <= n; the extra term counts words formed
/// entirely from plus/minus pairs).
pub fn predicted_double_wlp(wlp: &WordlengthPattern, n: usize) -> Result<WordlengthPattern> {
    let mut out = vec![0u64; 2 * n];
    for j in 1..=2 * n {
        let (s_max, extra) = if j % 2 == 1 {
            ((j - 1) / 2, 0)
        } else if (j / 2) % 2 == 0 {
            (j / 2 - 1, binomial(n, j / 2)?)
        } else {
            (j / 2 - 1, 0)
        };
        let mut acc: i128 = extra;
        for s in 0..=s_max.min(n) {
            let len = j - 2 * s;
            let b = wlp.b(len) as i128;
            if b == 0 {
                continue;
            }
            // len <= n here since B beyond n is zero, so the top index
            // n - j + 2s = n - len is nonnegative.
            let c = binomial(n - len, s)?;
            acc += b * c * (1i128 << (len - 1));
        }
        out[j - 1] = u64::try_from(acc).expect("wordlength counts are nonnegative");
    }
    Ok(WordlengthPattern::new(out))
}

/// Predicted alias-set size multisets of double(d) from the profile of d:
/// every alias set splits into two copies with doubled m, and one new
/// non-main-effect set collects the n plus-minus interactions of identical
/// base factors. Returns (non-main multiset, main multiset), sorted.
pub fn predicted_double_alias_multisets(profile: &AliasProfile) -> (Vec<u32>, Vec<u32>) {
    let mut non_main = Vec::with_capacity(2 * profile.non_main_m().len() + 1);
    for m in profile.non_main_m() {
        non_main.push(2 * m);
        non_main.push(2 * m);
    }
    non_main.push(profile.n() as u32);
    non_main.sort_unstable();
    let mut main = Vec::with_capacity(2 * profile.main_m().len());
    for m in profile.main_m() {
        main.push(2 * m);
        main.push(2 * m);
    }
    main.sort_unstable();
    (non_main, main)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{
        alias_profile, expand_runs, is_even, resolution, wordlength_pattern,
        wordlength_pattern_direct, Resolution,
    };

    #[test]
    fn double_of_the_two_factor_factorial() {
        let d = double(&full_factorial(2).unwrap()).unwrap();
        assert_eq!(d.k(), 3);
        assert_eq!(d.n(), 4);
        let wlp = wordlength_pattern(&d).unwrap();
        assert_eq!(wlp.counts(), &[0, 0, 0, 1]);
    }

    #[test]
    fn double_of_the_half_fraction() {
        let d = double(&design_2_5_1()).unwrap();
        assert_eq!((d.k(), d.n()), (5, 10));
        let wlp = wordlength_pattern(&d).unwrap();
        assert_eq!(wlp.b(3), 0);
        assert_eq!(wlp.b(4), 10);
        assert_eq!(wlp.counts(), &[0, 0, 0, 10, 16, 0, 0, 5, 0, 0]);
    }

    #[test]
    fn double_keeps_column_order() {
        let d = RegularDesign::from_strings(&["10", "11"]).unwrap();
        let dd = double(&d).unwrap();
        let strings: Vec<String> = dd.columns().iter().map(|c| c.to_string()).collect();
        assert_eq!(strings, ["100", "110", "101", "111"]);
    }

    #[test]
    fn double_run_matrix_interleaves_the_blocks() {
        let d = RegularDesign::from_strings(&["100", "010", "001", "111"]).unwrap();
        let x = expand_runs(&d).unwrap();
        let xx = expand_runs(&double(&d).unwrap()).unwrap();
        let n = d.n();
        for s in 0..x.runs() {
            for j in 0..n {
                assert_eq!(xx.get(2 * s, j), x.get(s, j));
                assert_eq!(xx.get(2 * s, n + j), x.get(s, j));
                assert_eq!(xx.get(2 * s + 1, j), x.get(s, j));
                assert_eq!(xx.get(2 * s + 1, n + j), -x.get(s, j));
            }
        }
    }

    #[test]
    fn double_n_composes() {
        let d = design_2_5_1();
        assert_eq!(double_n(&d, 0).unwrap(), d);
        let twice = double_n(&d, 2).unwrap();
        assert_eq!(twice, double(&double(&d).unwrap()).unwrap());
        assert_eq!((twice.k(), twice.n()), (6, 20));
        let wide = full_factorial(30).unwrap();
        assert!(double_n(&wide, 2).is_err());
    }

    #[test]
    fn project_keeps_design_order() {
        let d = design_2_5_1();
        let p = project(&d, &[4, 0, 2]).unwrap();
        let strings: Vec<String> = p.columns().iter().map(|c| c.to_string()).collect();
        assert_eq!(strings, ["1000", "0010", "1111"]);
        assert_eq!(project(&d, &[0, 1, 2, 3, 4]).unwrap(), d);
        assert!(project(&d, &[]).is_err());
        assert!(project(&d, &[5]).is_err());
        assert_eq!(
            project_drop(&d, &[1, 3]).unwrap(),
            project(&d, &[0, 2, 4]).unwrap()
        );
    }

    #[test]
    fn deleting_one_factor_from_the_double() {
        // Dropping one 10-factor column leaves the 9-factor, 32-run design
        // with alias multiset {0, 1 x 8, 2 x 12, 4} and B_4 = 6.
        let d = double(&design_2_5_1()).unwrap();
        let p = project_drop(&d, &[0]).unwrap();
        let profile = alias_profile(&p).unwrap();
        let mut expected = vec![0u32];
        expected.extend([1; 8]);
        expected.extend([2; 12]);
        expected.push(4);
        assert_eq!(profile.non_main_m(), expected);
        let wlp = wordlength_pattern(&p).unwrap();
        assert_eq!(wlp.b(3), 0);
        assert_eq!(wlp.b(4), 6);
    }

    #[test]
    fn foldover_of_the_saturated_resolution_iii() {
        let folded = foldover(&saturated_res3(3).unwrap(), true).unwrap();
        assert_eq!((folded.k(), folded.n()), (4, 8));
        assert_eq!(resolution(&folded).unwrap(), Resolution::Finite(4));
        assert!(is_even(&folded).unwrap());
    }

    #[test]
    fn foldover_without_new_factor_keeps_even_words() {
        let folded = foldover(&saturated_res3(3).unwrap(), false).unwrap();
        let wlp = wordlength_pattern(&folded).unwrap();
        assert_eq!(wlp.counts(), &[0, 0, 0, 7, 0, 0, 0]);
    }

    #[test]
    fn foldover_of_a_single_factor() {
        let d = RegularDesign::from_strings(&["1"]).unwrap();
        let folded = foldover(&d, false).unwrap();
        assert_eq!((folded.k(), folded.n()), (2, 1));
        let re = crate::design::reembed(&folded).unwrap();
        assert_eq!(re, RegularDesign::from_strings(&["1"]).unwrap());
        assert_eq!(crate::design::oa_strength(&re).unwrap(), 1);
    }

    #[test]
    fn named_constructors() {
        let ff = full_factorial(3).unwrap();
        assert_eq!(ff.n(), 3);
        assert_eq!(resolution(&ff).unwrap(), Resolution::Full);

        let s3 = saturated_res3(3).unwrap();
        assert_eq!(s3.n(), 7);
        assert_eq!(resolution(&s3).unwrap(), Resolution::Finite(3));
        assert_eq!(wordlength_pattern(&s3).unwrap().b(3), 7);

        let s4 = saturated_res4(4).unwrap();
        assert_eq!(s4.n(), 8);
        assert_eq!(resolution(&s4).unwrap(), Resolution::Finite(4));
        assert!(is_even(&s4).unwrap());

        assert!(full_factorial(0).is_err());
        assert!(saturated_res3(1).is_err());
        assert!(saturated_res4(2).is_err());
        assert!(saturated_res4(30).is_err());
    }

    #[test]
    fn half_fraction_family_dimensions() {
        assert_eq!(family_5n16(0).unwrap(), design_2_5_1());
        assert_eq!(resolution(&design_2_5_1()).unwrap(), Resolution::Finite(5));
        for t in 0..=2 {
            let f = family_5n16(t).unwrap();
            assert_eq!(f.n(), 5 << t);
            assert_eq!(f.n_runs(), 16 << t);
        }
    }

    #[test]
    fn predicted_wlp_of_doubles_matches_enumeration() {
        for d in [
            full_factorial(2).unwrap(),
            full_factorial(3).unwrap(),
            design_2_5_1(),
            saturated_res3(3).unwrap(),
            saturated_res4(4).unwrap(),
        ] {
            let predicted = predicted_double_wlp(&wordlength_pattern(&d).unwrap(), d.n()).unwrap();
            let actual = wordlength_pattern_direct(&double(&d).unwrap()).unwrap();
            assert_eq!(predicted, actual, "double of n = {}", d.n());
        }
    }

    #[test]
    fn predicted_wlp_specializations() {
        // B*_3 = 4 B_3 and B*_4 = 8 B_4 + C(n, 2).
        let d = saturated_res3(3).unwrap();
        let wlp = wordlength_pattern(&d).unwrap();
        let predicted = predicted_double_wlp(&wlp, d.n()).unwrap();
        assert_eq!(predicted.b(3), 4 * wlp.b(3));
        assert_eq!(predicted.b(4), 8 * wlp.b(4) + 21);
    }

    #[test]
    fn frozen_9_factor_design_regenerates() {
        let classes = crate::search::enumerate_maximal(5, 9, 9).unwrap();
        assert_eq!(classes.len(), 1);
        let d = design_2_9_4();
        assert_eq!((d.k(), d.n(), d.p()), (5, 9, 4));
        assert_eq!(classes[0], crate::analyze::canonical_form(&d).unwrap());
        let report = crate::analyze::is_maximal(&d).unwrap();
        assert!(report.is_maximal && report.criterion_agreement);
        assert_eq!(resolution(&d).unwrap(), Resolution::Finite(4));
    }

    #[test]
    fn family_9n32_dimensions() {
        for t in 0..=1 {
            let f = family_9n32(t).unwrap();
            assert_eq!(f.n(), 9 << t);
            assert_eq!(f.n_runs(), 32 << t);
        }
    }

    #[test]
    fn predicted_alias_multisets_of_the_half_fraction_double() {
        let d = RegularDesign::from_strings(&["100", "010", "001", "111"]).unwrap();
        let profile = alias_profile(&d).unwrap();
        let (non_main, main) = predicted_double_alias_multisets(&profile);
        assert_eq!(non_main, vec![4, 4, 4, 4, 4, 4, 4]);
        assert_eq!(main, vec![0; 8]);
        let doubled = alias_profile(&double(&d).unwrap()).unwrap();
        assert_eq!(doubled.non_main_m(), non_main);
        assert_eq!(doubled.main_m(), main);
    }
}
