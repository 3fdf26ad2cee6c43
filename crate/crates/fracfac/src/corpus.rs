//! Built-in design corpus backing the verification commands and the
//! integration tests: every named small construction plus 50
//! pseudo-random designs drawn from a fixed-seed generator, so all builds
//! and all test runs see exactly the same designs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::construct::{
    design_2_5_1, family_5n16, family_9n32, full_factorial, saturated_res3, saturated_res4,
};
use crate::design::RegularDesign;
use crate::gf2::BitVec;

/// Seed of the corpus generator. Changing it changes every random corpus
/// member, so it is part of the crate's compatibility surface.
pub const CORPUS_SEED: u64 = 0xFAC_FAC;

/// Random members with unconstrained resolution: (k, n, how many).
/// Columns are the k unit vectors plus n - k further distinct values, so
/// the designs are full rank with p = n - k added factors.
const GENERAL_SHAPES: &[(u32, usize, usize)] = &[(4, 7, 9), (5, 9, 8), (6, 10, 8)];

/// Random resolution >= IV members: (k, n, how many). Columns are sampled
/// from the saturated resolution-IV design of the same width (resampled
/// until full rank), so all defining words are even.
const EVEN_SHAPES: &[(u32, usize, usize)] = &[(5, 8, 9), (6, 9, 8), (6, 12, 8)];

/// The full corpus, in a fixed order: named constructions first, then the
/// seeded random designs. The repeated (k, n) shapes exist so that
/// pairwise comparisons (same run and factor counts) have plenty of
/// material.
pub fn corpus() -> Vec<(String, RegularDesign)> {
    let mut out: Vec<(String, RegularDesign)> = Vec::with_capacity(67);
    for k in 1..=4 {
        out.push((
            format!("full-k{k}"),
            full_factorial(k).expect("fixed k is in range"),
        ));
    }
    out.push((
        "half-2_4_1".into(),
        RegularDesign::from_generator_words(3, &[vec![1, 2, 3]]).expect("fixed generator"),
    ));
    out.push(("half-2_5_1".into(), design_2_5_1()));
    for k in 2..=5 {
        out.push((
            format!("sat3-k{k}"),
            saturated_res3(k).expect("fixed k is in range"),
        ));
    }
    for k in 3..=5 {
        out.push((
            format!("sat4-k{k}"),
            saturated_res4(k).expect("fixed k is in range"),
        ));
    }
    for t in 1..=2 {
        out.push((
            format!("5n16-t{t}"),
            family_5n16(t).expect("fixed t is in range"),
        ));
    }
    for t in 0..=1 {
        out.push((
            format!("9n32-t{t}"),
            family_9n32(t).expect("fixed t is in range"),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for &(k, n, count) in GENERAL_SHAPES {
        for i in 0..count {
            out.push((
                format!("rand-g-k{k}n{n}-{i}"),
                random_general(&mut rng, k, n),
            ));
        }
    }
    for &(k, n, count) in EVEN_SHAPES {
        for i in 0..count {
            out.push((format!("rand-e-k{k}n{n}-{i}"), random_even(&mut rng, k, n)));
        }
    }
    out
}

/// Unit columns plus n - k further distinct nonzero values.
fn random_general(rng: &mut ChaCha8Rng, k: u32, n: usize) -> RegularDesign {
    let mut cols: Vec<BitVec> = (1..=k)
        .map(|i| BitVec::unit(k, i).expect("coordinate in range"))
        .collect();
    let pool: Vec<u32> = (1..1u32 << k).filter(|v| !v.is_power_of_two()).collect();
    let extras = pool.choose_multiple(rng, n - k as usize);
    cols.extend(extras.map(|&v| BitVec::new(k, v).expect("value in range")));
    RegularDesign::from_columns(cols).expect("distinct nonzero columns")
}

/// Full-rank n-column subset of the saturated resolution-IV design.
fn random_even(rng: &mut ChaCha8Rng, k: u32, n: usize) -> RegularDesign {
    let base = saturated_res4(k).expect("fixed k is in range");
    loop {
        let cols: Vec<BitVec> = base.columns().choose_multiple(rng, n).copied().collect();
        let d = RegularDesign::from_columns(cols).expect("distinct nonzero columns");
        if d.rank() == k {
            return d;
        }
    }
}
