//! Known van der Waerden numbers as a text table.
//!
//! One entry per line, `colors length value trust`, where `length` is a
//! progression length `N` or a grid `side^dim`, and `trust` is `verified`
//! (recomputed by the exact search in the test suite) or `external` (from
//! the literature, never asserted on). `#` starts a comment.
//!
//! ```text
//! 2 3 9 verified
//! 2 5 178 external
//! ```

use std::str::FromStr;

use num_bigint::BigUint;
use slanted_rain_core::vdw::{KnownValues, Trust, VdwKey};

/// The table shipped with the tool.
pub const BUNDLED: &str = include_str!("../data/vdw_known.txt");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct TableError {
    pub line: usize,
    pub message: String,
}

pub fn bundled() -> KnownValues {
    parse_table(BUNDLED).expect("bundled table parses")
}

pub fn parse_table(text: &str) -> Result<KnownValues, TableError> {
    let mut table = KnownValues::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| TableError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [colors, length, value, trust] = tokens[..] else {
            return Err(err(format!("expected 4 fields, found {}", tokens.len())));
        };
        let colors: u32 = colors.parse().map_err(|_| err(format!("bad color count {colors:?}")))?;
        let big = |s: &str| BigUint::from_str(s).map_err(|_| err(format!("bad integer {s:?}")));
        let key = match length.split_once('^') {
            Some((side, dim)) => VdwKey::Grid {
                colors,
                dim: dim.parse().map_err(|_| err(format!("bad grid dimension {dim:?}")))?,
                side: big(side)?,
            },
            None => VdwKey::Ap { colors, length: big(length)? },
        };
        let trust = match trust {
            "verified" => Trust::Verified,
            "external" => Trust::External,
            other => return Err(err(format!("trust must be verified or external, found {other:?}"))),
        };
        table.insert(key, big(value)?, trust);
    }
    Ok(table)
}

pub fn render_table(table: &KnownValues) -> String {
    let mut out = String::new();
    for (key, entry) in table.iter() {
        let (colors, length) = match key {
            VdwKey::Ap { colors, length } => (colors, length.to_string()),
            VdwKey::Grid { colors, dim, side } => (colors, format!("{side}^{dim}")),
        };
        let trust = match entry.trust {
            Trust::Verified => "verified",
            Trust::External => "external",
        };
        out.push_str(&format!("{colors} {length} {} {trust}\n", entry.value));
    }
    out
}
