//! Command-line interface: construct, analyze, search, and verify
//! commands over the `fracfac v1` design file format.
//!
//! Exit codes: 0 success, 1 a verify law found counterexamples, 2
//! unusable input (arguments or file parsing), 3 violated design
//! invariants, 4 exceeded size caps, 5 exceeded search budgets.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analyze::{fingerprint, is_maximal};
use crate::construct::{
    double_n, family_5n16, family_9n32, foldover, full_factorial, project, project_drop,
    saturated_res3, saturated_res4,
};
use crate::corpus::{corpus, CORPUS_SEED};
use crate::design::{
    alias_profile, b3_b4_from_profile, is_even, oa_strength, reembed, resolution,
    wordlength_pattern, RegularDesign, Resolution, WordlengthPattern,
};
use crate::error::{Error, Result};
use crate::format;
use crate::gf2::BitVec;
use crate::search::{
    deletion_objective, deletion_projection, enumerate_maximal, ma_projection_search, verify_cor24,
    verify_thm21, verify_thm22, verify_thm23, verify_thm32, verify_thm33, verify_thm41_inequality,
    DeletionSpec,
};

#[derive(Parser)]
#[command(
    name = "fracfac",
    version,
    about = "Regular two-level fractional factorial designs: construct, analyze, search, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report sizes, resolution, wordlength pattern, and alias structure
    Analyze {
        /// Design file in the v1 format
        file: PathBuf,
        /// Emit the analysis as JSON instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Double a design (run matrix [X X; X -X]) one or more times
    Double {
        file: PathBuf,
        /// How many times to double
        #[arg(long, default_value_t = 1)]
        times: u32,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Restrict a design to a subset of its factors
    Project {
        file: PathBuf,
        /// 1-based factor numbers to keep (comma separated)
        #[arg(long, value_delimiter = ',', conflicts_with = "drop")]
        keep: Vec<usize>,
        /// 1-based factor numbers to drop (comma separated)
        #[arg(long, value_delimiter = ',')]
        drop: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Stack a design over its mirror image
    Foldover {
        file: PathBuf,
        /// Also append the plus/minus block indicator as a new factor
        #[arg(long)]
        add_factor: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write one of the built-in constructions
    Family {
        /// Which construction: 5N16, 9N32, sat3, sat4, full
        #[arg(long)]
        name: FamilyName,
        /// Width parameter for sat3, sat4, full
        #[arg(long)]
        k: Option<u32>,
        /// Doubling count for the 5N16 and 9N32 families
        #[arg(long)]
        t: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive searches; reports are printed as JSON
    Search {
        #[command(subcommand)]
        what: SearchCmd,
    },
    /// Check a structural identity on the built-in corpus or one design
    Verify {
        /// Which law to check
        #[arg(long)]
        law: Law,
        /// Run only on this design file (laws that take a design)
        #[arg(long)]
        design: Option<PathBuf>,
        /// Largest t for the inequality law
        #[arg(long, default_value_t = 12)]
        t_max: u32,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// All isomorphism classes of maximal designs of width k
    Maximal {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Minimum-aberration n-factor projections of a base design
    MaProjection {
        /// Base design file
        #[arg(long)]
        base: PathBuf,
        /// Projection size
        #[arg(long)]
        n: usize,
        /// Collapse winners to isomorphism classes
        #[arg(long)]
        dedupe: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    #[value(name = "5N16")]
    F5n16,
    #[value(name = "9N32")]
    F9n32,
    Sat3,
    Sat4,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Law {
    #[value(name = "thm2.1")]
    Thm21,
    #[value(name = "thm2.2")]
    Thm22,
    #[value(name = "thm2.3")]
    Thm23,
    #[value(name = "cor2.4")]
    Cor24,
    #[value(name = "thm3.2")]
    Thm32,
    #[value(name = "thm3.3")]
    Thm33,
    #[value(name = "cor3.6")]
    Cor36,
    #[value(name = "thm4.1-ineq")]
    Thm41Ineq,
    #[value(name = "eq4-objective")]
    Eq4Objective,
}

/// Parses arguments from the environment, runs the command, and returns
/// the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Analyze { file, json } => cmd_analyze(&file, json),
        Command::Double {
            file,
            times,
            output,
        } => {
            let d = read_design(&file)?;
            write_design(&double_n(&d, times)?, output.as_deref())
        }
        Command::Project {
            file,
            keep,
            drop,
            output,
        } => {
            let d = read_design(&file)?;
            let out = match (keep.is_empty(), drop.is_empty()) {
                (false, true) => project(&d, &to_zero_based(&keep)?)?,
                (true, false) => project_drop(&d, &to_zero_based(&drop)?)?,
                _ => {
                    return Err(Error::domain(
                        "exactly one of --keep and --drop must be given",
                    ))
                }
            };
            write_design(&out, output.as_deref())
        }
        Command::Foldover {
            file,
            add_factor,
            output,
        } => {
            let d = read_design(&file)?;
            write_design(&foldover(&d, add_factor)?, output.as_deref())
        }
        Command::Family { name, k, t, output } => {
            let d = build_family(name, k, t)?;
            write_design(&d, output.as_deref())
        }
        Command::Search { what } => cmd_search(what),
        Command::Verify { law, design, t_max } => cmd_verify(law, design.as_deref(), t_max),
    }
}

fn read_design(path: &Path) -> Result<RegularDesign> {
    format::parse(&fs::read_to_string(path)?)
}

fn to_zero_based(indices: &[usize]) -> Result<Vec<usize>> {
    indices
        .iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Error::domain("factors are numbered from 1"))
        })
        .collect()
}

/// Writes the v1 file to `output` (stdout when absent) and prints a
/// one-line N/n/resolution summary; the summary goes to stderr when the
/// design itself occupies stdout.
fn write_design(d: &RegularDesign, output: Option<&Path>) -> Result<i32> {
    let text = format::serialize(d);
    let summary = format!("N={} n={} resolution={}", d.n_runs(), d.n(), resolution(d)?);
    match output {
        Some(path) => {
            fs::write(path, text)?;
            println!("{} -> {}", summary, path.display());
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

fn build_family(name: FamilyName, k: Option<u32>, t: Option<u32>) -> Result<RegularDesign> {
    let need_k = || k.ok_or_else(|| Error::domain("this construction takes --k"));
    let need_t = || t.ok_or_else(|| Error::domain("this family takes --t"));
    match name {
        FamilyName::F5n16 => family_5n16(need_t()?),
        FamilyName::F9n32 => family_9n32(need_t()?),
        FamilyName::Sat3 => saturated_res3(need_k()?),
        FamilyName::Sat4 => saturated_res4(need_k()?),
        FamilyName::Full => full_factorial(need_k()?),
    }
}

/// Everything the analyze command reports about one design. The alias
/// quantities come from the design re-embedded to full rank (same words,
/// same pattern); the identities tying B3/B4 to the alias profile are
/// re-checked at assembly time.
#[derive(serde::Serialize)]
struct AnalysisDocument {
    #[serde(rename = "N")]
    runs: u64,
    n: usize,
    p: u32,
    resolution: Resolution,
    strength: u32,
    wlp: WordlengthPattern,
    g: u64,
    f: u64,
    m_multiset_main: Vec<u32>,
    m_multiset_nonmain: Vec<u32>,
    is_even: bool,
    /// None when resolution < IV (maximality is then undefined).
    is_maximal: Option<bool>,
    #[serde(rename = "fingerprint-hash")]
    fingerprint_hash: String,
}

fn analysis_document(d: &RegularDesign) -> Result<AnalysisDocument> {
    let wlp = wordlength_pattern(d)?;
    let res = resolution(d)?;
    let embedded = reembed(d)?;
    let profile = alias_profile(&embedded)?;
    let (b3, b4) = b3_b4_from_profile(&profile)?;
    if b3 != wlp.b(3) || b4 != wlp.b(4) {
        return Err(Error::inconsistent(format!(
            "alias profile gives (B3, B4) = ({b3}, {b4}) but the pattern says ({}, {})",
            wlp.b(3),
            wlp.b(4)
        )));
    }
    let maximal = if res.at_least(4) {
        Some(is_maximal(&embedded)?.is_maximal)
    } else {
        None
    };
    Ok(AnalysisDocument {
        runs: d.n_runs(),
        n: d.n(),
        p: d.p(),
        resolution: res,
        strength: oa_strength(d)?,
        wlp,
        g: profile.g(),
        f: profile.f(),
        m_multiset_main: profile.main_m(),
        m_multiset_nonmain: profile.non_main_m(),
        is_even: is_even(d)?,
        is_maximal: maximal,
        fingerprint_hash: fingerprint(d)?.hash_hex(),
    })
}

fn render_multiset(values: &[u32]) -> String {
    if values.is_empty() {
        return "-".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let j = values[i..].iter().take_while(|&&v| v == values[i]).count();
        parts.push(format!("{} x{}", values[i], j));
        i += j;
    }
    parts.join(", ")
}

fn cmd_analyze(file: &Path, json: bool) -> Result<i32> {
    let d = read_design(file)?;
    let doc = analysis_document(&d)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("document serializes")
        );
        return Ok(0);
    }
    println!("N:            {}", doc.runs);
    println!("n:            {}", doc.n);
    println!("p:            {}", doc.p);
    println!("resolution:   {}", doc.resolution);
    println!("strength:     {}", doc.strength);
    println!(
        "wlp:          {}",
        doc.wlp
            .counts()
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    println!("g:            {}", doc.g);
    println!("f:            {}", doc.f);
    println!("m (main):     {}", render_multiset(&doc.m_multiset_main));
    println!("m (non-main): {}", render_multiset(&doc.m_multiset_nonmain));
    println!("even:         {}", doc.is_even);
    match doc.is_maximal {
        Some(v) => println!("maximal:      {v}"),
        None => println!("maximal:      n/a (resolution below IV)"),
    }
    println!("fingerprint:  {}", doc.fingerprint_hash);
    Ok(0)
}

fn cmd_search(what: SearchCmd) -> Result<i32> {
    match what {
        SearchCmd::Maximal { k, n_min, n_max } => {
            let classes = enumerate_maximal(k, n_min, n_max)?;
            let doc = serde_json::json!({
                "k": k,
                "n_min": n_min,
                "n_max": n_max,
                "count": classes.len(),
                "classes": classes,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("report serializes")
            );
        }
        SearchCmd::MaProjection { base, n, dedupe } => {
            let base = read_design(&base)?;
            let report = ma_projection_search(&base, n, dedupe)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
    }
    Ok(0)
}

/// Tallies per-case verify results and renders the one-line outcomes.
struct Tally {
    law: &'static str,
    pass: u32,
    fail: u32,
    skip: u32,
}

impl Tally {
    fn new(law: &'static str) -> Self {
        Tally {
            law,
            pass: 0,
            fail: 0,
            skip: 0,
        }
    }

    fn case(&mut self, name: &str, ok: bool) {
        if ok {
            self.pass += 1;
            println!("ok {} {}", self.law, name);
        } else {
            self.fail += 1;
            println!("FAIL {} {}", self.law, name);
        }
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.skip += 1;
        println!("skip {} {} ({})", self.law, name, why);
    }

    fn finish(self) -> Result<i32> {
        println!(
            "{}: {} passed, {} failed, {} skipped",
            self.law, self.pass, self.fail, self.skip
        );
        if self.pass + self.fail == 0 {
            return Err(Error::domain("no applicable cases"));
        }
        Ok(if self.fail == 0 { 0 } else { 1 })
    }
}

fn verify_designs(design: Option<&Path>) -> Result<Vec<(String, RegularDesign)>> {
    match design {
        Some(path) => Ok(vec![(path.display().to_string(), read_design(path)?)]),
        None => Ok(corpus()),
    }
}

fn corpus_only(law: &str, design: Option<&Path>) -> Result<()> {
    if design.is_some() {
        return Err(Error::domain(format!(
            "law {law} is parametric and does not take --design"
        )));
    }
    Ok(())
}

fn cmd_verify(law: Law, design: Option<&Path>, t_max: u32) -> Result<i32> {
    match law {
        Law::Thm21 => {
            let mut tally = Tally::new("thm2.1");
            for (name, d) in verify_designs(design)? {
                if d.n() < 2 || !resolution(&d)?.at_least(4) {
                    tally.skip(&name, "needs resolution >= IV and n >= 2");
                    continue;
                }
                tally.case(&name, verify_thm21(&d)?);
            }
            tally.finish()
        }
        Law::Thm22 => {
            let mut tally = Tally::new("thm2.2");
            for (name, d) in verify_designs(design)? {
                if d.rank() < d.k() {
                    tally.skip(&name, "needs full rank");
                    continue;
                }
                tally.case(&name, verify_thm22(&d)?);
            }
            tally.finish()
        }
        Law::Thm23 => {
            let mut tally = Tally::new("thm2.3");
            for (name, d) in verify_designs(design)? {
                tally.case(&name, verify_thm23(&d)?);
            }
            tally.finish()
        }
        Law::Cor24 => {
            corpus_only("cor2.4", design)?;
            let mut tally = Tally::new("cor2.4");
            let designs = corpus();
            for i in 0..designs.len() {
                for j in i + 1..designs.len() {
                    let (a, b) = (&designs[i], &designs[j]);
                    if a.1.k() == b.1.k() && a.1.n() == b.1.n() {
                        let name = format!("{}/{}", a.0, b.0);
                        tally.case(&name, verify_cor24(&a.1, &b.1)?);
                    }
                }
            }
            tally.finish()
        }
        Law::Thm32 => {
            let mut tally = Tally::new("thm3.2");
            for (name, d) in verify_designs(design)? {
                if d.rank() < d.k() || !resolution(&d)?.at_least(4) {
                    tally.skip(&name, "needs full rank and resolution >= IV");
                    continue;
                }
                tally.case(&name, verify_thm32(&d)?);
            }
            tally.finish()
        }
        Law::Thm33 => {
            let mut tally = Tally::new("thm3.3");
            for (name, d) in verify_designs(design)? {
                if d.rank() < d.k() || !resolution(&d)?.at_least(4) {
                    tally.skip(&name, "needs full rank and resolution >= IV");
                    continue;
                }
                tally.case(&name, verify_thm33(&d)?);
            }
            tally.finish()
        }
        Law::Cor36 => {
            corpus_only("cor3.6", design)?;
            let mut tally = Tally::new("cor3.6");
            // No maximal class exists strictly between 5N/16 and N/2
            // factors at N = 32, so every resolution-IV design there is a
            // projection of the saturated one.
            let classes = enumerate_maximal(5, 11, 15)?;
            tally.case("no-class-in-(10,16)", classes.is_empty());
            tally.finish()
        }
        Law::Thm41Ineq => {
            corpus_only("thm4.1-ineq", design)?;
            let mut tally = Tally::new("thm4.1-ineq");
            for t in 2..=t_max.max(2) {
                let witnesses = verify_thm41_inequality(t, t)?;
                let ok = witnesses.iter().all(|w| w.holds);
                tally.case(&format!("t={t} ({} values of u)", witnesses.len()), ok);
            }
            tally.finish()
        }
        Law::Eq4Objective => {
            corpus_only("eq4-objective", design)?;
            let mut tally = Tally::new("eq4-objective");
            let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0xE4);
            for i in 0..200 {
                let t = 1 + (i % 3) as u32;
                let total = 5 << t;
                let u = rng.gen_range(0..total);
                let indices: Vec<usize> = (0..total).collect();
                let picked = indices.choose_multiple(&mut rng, u).copied();
                let mut groups: [Vec<BitVec>; 5] = Default::default();
                for idx in picked {
                    groups[idx % 5].push(BitVec::new(t, (idx / 5) as u32)?);
                }
                let spec = DeletionSpec::new(t, groups)?;
                let proj = deletion_projection(&spec)?;
                let profile = alias_profile(&reembed(&proj)?)?;
                let ok = deletion_objective(&spec) == profile.sum_m_squared_non_main() as u128;
                tally.case(&format!("case-{i} t={t} u={u}"), ok);
            }
            tally.finish()
        }
    }
}
