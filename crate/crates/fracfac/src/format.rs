//! The `fracfac v1` design file format.
//!
//! ```text
//! fracfac v1
//! k 4
//! n 5
//! cols 1000 0100 0010 0001 1111
//! ```
//!
//! Line 1 is the header. After it, `#` lines and blank lines are ignored,
//! and the `k`, `n` and `cols` directives must appear in that order. Each
//! column is a k-character string over {0,1} with coordinate 1 first.
//! Parsing tolerates extra whitespace; serialization always emits the
//! canonical single-space form above, so files round-trip bit-exactly.

use crate::design::RegularDesign;
use crate::error::{Error, Result};
use crate::gf2::BitVec;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Tokens of a line with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses a v1 design file. Structural problems yield [`Error::Parse`] with
/// line and column; a well-formed file describing an invalid design (zero or
/// duplicate columns) yields the corresponding invariant error instead.
pub fn parse(input: &str) -> Result<RegularDesign> {
    let mut lines = input.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty input, expected `fracfac v1` header"))?;
    let header_tokens: Vec<&str> = tokens(header).iter().map(|&(_, t)| t).collect();
    if header_tokens != ["fracfac", "v1"] {
        return Err(parse_err(1, 1, "expected `fracfac v1` header"));
    }

    let directives: Vec<(usize, &str)> = lines
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect();

    let total_lines = input.lines().count();
    let directive = |i: usize, name: &str| -> Result<(usize, Vec<(usize, &str)>)> {
        let (idx, line) = directives
            .get(i)
            .ok_or_else(|| parse_err(total_lines + 1, 1, format!("missing `{name}` directive")))?;
        let toks = tokens(line);
        if toks[0].1 != name {
            return Err(parse_err(
                idx + 1,
                toks[0].0,
                format!("expected `{name}` directive, found `{}`", toks[0].1),
            ));
        }
        Ok((idx + 1, toks))
    };

    let (k_line, k_tokens) = directive(0, "k")?;
    if k_tokens.len() != 2 {
        return Err(parse_err(k_line, 1, "`k` takes exactly one value"));
    }
    let k: u32 = k_tokens[1]
        .1
        .parse()
        .map_err(|_| parse_err(k_line, k_tokens[1].0, "`k` must be an integer"))?;
    if k == 0 || k > 32 {
        return Err(parse_err(
            k_line,
            k_tokens[1].0,
            format!("`k` must be in 1..=32, got {k}"),
        ));
    }

    let (n_line, n_tokens) = directive(1, "n")?;
    if n_tokens.len() != 2 {
        return Err(parse_err(n_line, 1, "`n` takes exactly one value"));
    }
    let n: usize = n_tokens[1]
        .1
        .parse()
        .map_err(|_| parse_err(n_line, n_tokens[1].0, "`n` must be an integer"))?;

    let (cols_line, cols_tokens) = directive(2, "cols")?;
    let col_tokens = &cols_tokens[1..];
    if col_tokens.len() != n {
        return Err(parse_err(
            cols_line,
            1,
            format!("`cols` lists {} columns but n = {n}", col_tokens.len()),
        ));
    }
    let mut columns = Vec::with_capacity(n);
    for &(col_pos, s) in col_tokens {
        if s.len() != k as usize {
            return Err(parse_err(
                cols_line,
                col_pos,
                format!("column `{s}` has {} characters, expected k = {k}", s.len()),
            ));
        }
        let v = BitVec::parse(s).map_err(|e| parse_err(cols_line, col_pos, e.to_string()))?;
        columns.push(v);
    }

    if let Some((idx, line)) = directives.get(3) {
        return Err(parse_err(
            idx + 1,
            1,
            format!("unexpected content after `cols`: `{}`", line.trim()),
        ));
    }

    RegularDesign::from_columns(columns)
}

/// Serializes a design in the canonical v1 form.
pub fn serialize(d: &RegularDesign) -> String {
    let cols: Vec<String> = d.columns().iter().map(|c| c.to_string()).collect();
    format!(
        "fracfac v1\nk {}\nn {}\ncols {}\n",
        d.k(),
        d.n(),
        cols.join(" ")
    )
}
