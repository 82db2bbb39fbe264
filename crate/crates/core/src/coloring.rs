//! Pure colouring oracles over rational points.
//!
//! Spec grammar, one line:
//!
//! ```text
//! const:<h>:<color>
//! hash:<h>:<seed>                       seed decimal or 0x-hex
//! mod:<h>:<M>:<table-path>:<default>
//! banded:<h>:<axis>:<rules-path>:<default>
//! ```
//!
//! Table file lines are `<n>/<d> <n>/<d> ... <color>`: one residue pair per
//! coordinate (numerator and denominator reduced mod `M`), then the colour.
//! Rules file lines are `<q> <q> ... -> <color>`: a set of rational values of
//! the chosen axis and the colour they receive. Blank lines and `#` comments
//! are ignored in both.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::affine::DiagonalAffineMap;
use crate::error::Error;
use crate::rational::{Point, Rational};

/// Anything that assigns one of `colors()` colours to every point.
pub trait Coloring {
    fn colors(&self) -> u32;
    fn color_at(&self, p: &Point) -> Result<u32, Error>;
}

/// Residue table for the `mod` kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueTable {
    pub source: String,
    pub entries: BTreeMap<Vec<(u64, u64)>, u32>,
}

impl ResidueTable {
    /// Number of coordinates the keys describe, if the table is non-empty.
    pub fn dim(&self) -> Option<usize> {
        self.entries.keys().next().map(Vec::len)
    }
}

/// Height rules for the `banded` kind; the first matching rule wins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandRules {
    pub source: String,
    pub rules: Vec<(BTreeSet<Rational>, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringSpec {
    Constant { colors: u32, color: u32 },
    SeededHash { colors: u32, seed: u64 },
    ModularTable { colors: u32, modulus: u64, table: ResidueTable, default: u32 },
    Banded { colors: u32, axis: usize, rules: BandRules, default: u32 },
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Injective byte encoding of a point. Per coordinate: sign byte (`0x00`
/// non-negative, `0x01` negative), 4-byte big-endian length and big-endian
/// magnitude of the numerator, then length and magnitude of the denominator.
/// Coordinates are separated by `0xFF`.
pub fn canonical_bytes(p: &Point) -> Vec<u8> {
    let mut out = Vec::new();
    for (i, c) in p.coords().iter().enumerate() {
        if i > 0 {
            out.push(0xFF);
        }
        out.push(if c.numer().sign() == Sign::Minus { 0x01 } else { 0x00 });
        for part in [c.numer(), c.denom()] {
            let bytes = part.magnitude().to_bytes_be();
            out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
            out.extend_from_slice(&bytes);
        }
    }
    out
}

/// FNV-1a 64 with the seed folded into the offset basis.
pub fn fnv1a_seeded(bytes: &[u8], seed: u64) -> u64 {
    bytes.iter().fold(FNV_OFFSET ^ seed, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

/// SplitMix64 output mix.
pub fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn hash_color(p: &Point, seed: u64, colors: u32) -> u32 {
    (splitmix64_mix(fnv1a_seeded(&canonical_bytes(p), seed)) % u64::from(colors)) as u32
}

fn residue(v: &BigInt, m: u64) -> u64 {
    v.mod_floor(&BigInt::from(m)).to_u64().expect("residue below modulus")
}

impl ColoringSpec {
    pub fn constant(colors: u32, color: u32) -> Result<Self, Error> {
        let s = ColoringSpec::Constant { colors, color };
        s.validate()?;
        Ok(s)
    }

    pub fn seeded_hash(colors: u32, seed: u64) -> Result<Self, Error> {
        let s = ColoringSpec::SeededHash { colors, seed };
        s.validate()?;
        Ok(s)
    }

    pub fn banded(colors: u32, axis: usize, rules: BandRules, default: u32) -> Result<Self, Error> {
        let s = ColoringSpec::Banded { colors, axis, rules, default };
        s.validate()?;
        Ok(s)
    }

    pub fn modular(colors: u32, modulus: u64, table: ResidueTable, default: u32) -> Result<Self, Error> {
        let s = ColoringSpec::ModularTable { colors, modulus, table, default };
        s.validate()?;
        Ok(s)
    }

    pub fn num_colors(&self) -> u32 {
        match self {
            ColoringSpec::Constant { colors, .. }
            | ColoringSpec::SeededHash { colors, .. }
            | ColoringSpec::ModularTable { colors, .. }
            | ColoringSpec::Banded { colors, .. } => *colors,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let h = self.num_colors();
        if h == 0 {
            return Err(Error::Invalid("number of colors must be at least 1".into()));
        }
        let check = |c: u32| {
            if c < h {
                Ok(())
            } else {
                Err(Error::ColorOutOfRange { color: c, colors: h })
            }
        };
        match self {
            ColoringSpec::Constant { color, .. } => check(*color),
            ColoringSpec::SeededHash { .. } => Ok(()),
            ColoringSpec::ModularTable { modulus, table, default, .. } => {
                if *modulus == 0 {
                    return Err(Error::Invalid("modulus must be at least 1".into()));
                }
                check(*default)?;
                let dim = table.dim();
                for (key, &c) in &table.entries {
                    check(c)?;
                    if Some(key.len()) != dim {
                        return Err(Error::Invalid("table keys differ in dimension".into()));
                    }
                    if key.iter().any(|&(n, d)| n >= *modulus || d >= *modulus) {
                        return Err(Error::Invalid(alloc::format!("residue key {key:?} not reduced mod {modulus}")));
                    }
                }
                Ok(())
            }
            ColoringSpec::Banded { rules, default, .. } => {
                check(*default)?;
                rules.rules.iter().try_for_each(|(_, c)| check(*c))
            }
        }
    }
}

impl Coloring for ColoringSpec {
    fn colors(&self) -> u32 {
        self.num_colors()
    }

    fn color_at(&self, p: &Point) -> Result<u32, Error> {
        match self {
            ColoringSpec::Constant { color, .. } => Ok(*color),
            ColoringSpec::SeededHash { colors, seed } => Ok(hash_color(p, *seed, *colors)),
            ColoringSpec::ModularTable { modulus, table, default, .. } => {
                if let Some(dim) = table.dim() {
                    p.check_dim(dim)?;
                }
                let key: Vec<(u64, u64)> = p
                    .coords()
                    .iter()
                    .map(|c| (residue(c.numer(), *modulus), residue(c.denom(), *modulus)))
                    .collect();
                Ok(table.entries.get(&key).copied().unwrap_or(*default))
            }
            ColoringSpec::Banded { axis, rules, default, .. } => {
                if *axis >= p.dim() {
                    return Err(Error::DimensionMismatch { expected: axis + 1, got: p.dim() });
                }
                let v = p.coord(*axis);
                Ok(rules
                    .rules
                    .iter()
                    .find(|(set, _)| set.contains(v))
                    .map(|(_, c)| *c)
                    .unwrap_or(*default))
            }
        }
    }
}

impl fmt::Display for ColoringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringSpec::Constant { colors, color } => write!(f, "const:{colors}:{color}"),
            ColoringSpec::SeededHash { colors, seed } => write!(f, "hash:{colors}:{seed:#x}"),
            ColoringSpec::ModularTable { colors, modulus, table, default } => {
                write!(f, "mod:{colors}:{modulus}:{}:{default}", table.source)
            }
            ColoringSpec::Banded { colors, axis, rules, default } => {
                write!(f, "banded:{colors}:{axis}:{}:{default}", rules.source)
            }
        }
    }
}

/// The colouring `q -> inner(map(q))`.
pub struct Pullback<'a, C: Coloring + ?Sized> {
    inner: &'a C,
    map: DiagonalAffineMap,
}

impl<'a, C: Coloring + ?Sized> Pullback<'a, C> {
    pub fn new(inner: &'a C, map: DiagonalAffineMap) -> Self {
        Pullback { inner, map }
    }
}

impl<C: Coloring + ?Sized> Coloring for Pullback<'_, C> {
    fn colors(&self) -> u32 {
        self.inner.colors()
    }

    fn color_at(&self, p: &Point) -> Result<u32, Error> {
        self.inner.color_at(&self.map.apply(p)?)
    }
}

/// Supplies the contents of table and rules files named in a spec.
pub trait SourceLoader {
    fn load(&self, path: &str) -> Result<String, String>;
}

/// Loader for contexts without files; `mod` and `banded` specs fail.
pub struct NoFiles;

impl SourceLoader for NoFiles {
    fn load(&self, path: &str) -> Result<String, String> {
        Err(alloc::format!("cannot read {path:?}: no file access"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {position}")]
pub struct SpecError {
    pub position: usize,
    pub message: String,
}

fn spec_err(position: usize, message: impl Into<String>) -> SpecError {
    SpecError { position, message: message.into() }
}

/// `text` split on `:` with the byte offset of each field.
fn fields(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == ':' {
            out.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &text[start..]));
    out
}

fn parse_u32(field: (usize, &str), what: &str) -> Result<u32, SpecError> {
    field.1.trim().parse().map_err(|_| spec_err(field.0, alloc::format!("expected {what}, found {:?}", field.1)))
}

fn parse_seed(field: (usize, &str)) -> Result<u64, SpecError> {
    let s = field.1.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| spec_err(field.0, alloc::format!("expected 64-bit seed, found {s:?}")))
}

/// Parses a one-line colouring spec, reading referenced files through `loader`.
pub fn parse_spec_with(text: &str, loader: &dyn SourceLoader) -> Result<ColoringSpec, SpecError> {
    let text = text.trim();
    let f = fields(text);
    let kind = f[0].1;
    let want = |n: usize| -> Result<(), SpecError> {
        if f.len() == n {
            Ok(())
        } else {
            Err(spec_err(text.len(), alloc::format!("{kind} spec takes {} fields, found {}", n - 1, f.len() - 1)))
        }
    };
    // Paths may themselves contain ':'; the path is everything between the
    // fixed leading fields and the trailing default.
    type Field<'a> = (usize, &'a str);
    let path_and_default = |lead: usize| -> Result<((usize, String), Field<'_>), SpecError> {
        if f.len() < lead + 2 {
            return Err(spec_err(text.len(), alloc::format!("{kind} spec is missing fields")));
        }
        let last = f[f.len() - 1];
        let path_start = f[lead].0;
        let path = text[path_start..last.0 - 1].to_string();
        Ok(((path_start, path), last))
    };
    let colors = |i: usize| -> Result<u32, SpecError> {
        let h = parse_u32(*f.get(i).ok_or_else(|| spec_err(text.len(), "missing color count"))?, "color count")?;
        if h == 0 {
            return Err(spec_err(f[i].0, "number of colors must be at least 1"));
        }
        Ok(h)
    };
    let validated = |s: ColoringSpec, at: usize| s.validate().map(|_| s).map_err(|e| spec_err(at, e.to_string()));
    match kind {
        "const" => {
            want(3)?;
            let h = colors(1)?;
            let color = parse_u32(f[2], "color")?;
            validated(ColoringSpec::Constant { colors: h, color }, f[2].0)
        }
        "hash" => {
            want(3)?;
            let h = colors(1)?;
            validated(ColoringSpec::SeededHash { colors: h, seed: parse_seed(f[2])? }, f[2].0)
        }
        "mod" => {
            let h = colors(1)?;
            let mf = *f.get(2).ok_or_else(|| spec_err(text.len(), "missing modulus"))?;
            let modulus: u64 = mf.1.trim().parse().map_err(|_| spec_err(mf.0, "expected modulus"))?;
            if modulus == 0 {
                return Err(spec_err(mf.0, "modulus must be at least 1"));
            }
            let ((at, path), df) = path_and_default(3)?;
            let default = parse_u32(df, "default color")?;
            let body = loader.load(&path).map_err(|e| spec_err(at, e))?;
            let entries = parse_residue_table(&body, modulus).map_err(|(line, msg)| {
                spec_err(at, alloc::format!("{path}:{line}: {msg}"))
            })?;
            let table = ResidueTable { source: path, entries };
            validated(ColoringSpec::ModularTable { colors: h, modulus, table, default }, at)
        }
        "banded" => {
            let h = colors(1)?;
            let af = *f.get(2).ok_or_else(|| spec_err(text.len(), "missing axis"))?;
            let axis: usize = af.1.trim().parse().map_err(|_| spec_err(af.0, "expected axis index"))?;
            let ((at, path), df) = path_and_default(3)?;
            let default = parse_u32(df, "default color")?;
            let body = loader.load(&path).map_err(|e| spec_err(at, e))?;
            let rules = parse_band_rules(&body).map_err(|(line, msg)| {
                spec_err(at, alloc::format!("{path}:{line}: {msg}"))
            })?;
            let rules = BandRules { source: path, rules };
            validated(ColoringSpec::Banded { colors: h, axis, rules, default }, at)
        }
        other => Err(spec_err(0, alloc::format!("unknown coloring kind {other:?}"))),
    }
}

/// Parses a spec that does not reference files.
pub fn parse_spec(text: &str) -> Result<ColoringSpec, SpecError> {
    parse_spec_with(text, &NoFiles)
}

fn content_lines(body: &str) -> impl Iterator<Item = (usize, &str)> {
    body.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// A 1-based line number and message.
pub type LineError = (usize, String);

/// Per-coordinate residue pairs to colour.
pub type ResidueEntries = BTreeMap<Vec<(u64, u64)>, u32>;

/// Residue table text to entries; errors carry the 1-based line number.
pub fn parse_residue_table(body: &str, modulus: u64) -> Result<ResidueEntries, LineError> {
    let mut entries = BTreeMap::new();
    for (line, text) in content_lines(body) {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let (color, keys) = tokens.split_last().expect("non-empty line");
        let color: u32 = color.parse().map_err(|_| (line, alloc::format!("bad color {color:?}")))?;
        if keys.is_empty() {
            return Err((line, "entry needs at least one residue pair".into()));
        }
        let key = keys
            .iter()
            .map(|k| {
                let (n, d) = k.split_once('/').ok_or((line, alloc::format!("bad residue pair {k:?}")))?;
                let n: u64 = n.parse().map_err(|_| (line, alloc::format!("bad residue {n:?}")))?;
                let d: u64 = d.parse().map_err(|_| (line, alloc::format!("bad residue {d:?}")))?;
                if n >= modulus || d >= modulus {
                    return Err((line, alloc::format!("residue pair {k} not below modulus {modulus}")));
                }
                Ok((n, d))
            })
            .collect::<Result<Vec<_>, _>>()?;
        entries.insert(key, color);
    }
    Ok(entries)
}

/// Band rules text to rules; errors carry the 1-based line number.
pub fn parse_band_rules(body: &str) -> Result<Vec<(BTreeSet<Rational>, u32)>, LineError> {
    content_lines(body)
        .map(|(line, text)| {
            let (values, color) = text.split_once("->").ok_or((line, "expected `<values> -> <color>`".into()))?;
            let color: u32 = color.trim().parse().map_err(|_| (line, alloc::format!("bad color {color:?}")))?;
            let set = values
                .split_whitespace()
                .map(|v| v.parse::<Rational>().map_err(|e| (line, e.to_string())))
                .collect::<Result<BTreeSet<_>, _>>()?;
            if set.is_empty() {
                return Err((line, "rule has no values".into()));
            }
            Ok((set, color))
        })
        .collect()
}

pub fn render_band_rules(rules: &[(BTreeSet<Rational>, u32)]) -> String {
    let mut out = String::new();
    for (set, color) in rules {
        let vals: Vec<String> = set.iter().map(ToString::to_string).collect();
        out.push_str(&vals.join(" "));
        out.push_str(&alloc::format!(" -> {color}\n"));
    }
    out
}
