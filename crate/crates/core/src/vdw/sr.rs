//! The rain-length recursion
//!
//! ```text
//! SR(1) = 2,  SR(2) = vdW_2(5),  SR(h) = vdW_h(f(SR(h-1)))
//! SR_n(1) = 2,  SR_n(h) = vdW_h(M_{n-1}(F_n(SR_n(h-1))))
//! ```
//!
//! kept as an expression tree. Values are computed only where every van der
//! Waerden number involved is known.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::rain::factorial;

/// Largest argument to `!` that evaluation will expand.
pub const FACTORIAL_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SrExpr {
    Literal(BigUint),
    /// `vdW_colors(N)` for progressions.
    VdW { colors: u32, arg: Box<SrExpr> },
    /// `vdW_colors(M_dim(side))` for the cube grid `{0..side}^dim`.
    VdWGrid { colors: u32, dim: u32, arg: Box<SrExpr> },
    /// `f(x) = x! x + 1`.
    FApply(Box<SrExpr>),
    /// `F_n(x) = ((x-1)^(n-1) + 1)! x + 1`.
    FnApply { dim: u32, arg: Box<SrExpr> },
}

impl SrExpr {
    pub fn literal(v: u64) -> Self {
        SrExpr::Literal(BigUint::from(v))
    }

    /// Rewrites the n-dimensional node kinds into their planar forms where
    /// they coincide (`M_1` grids, `F_2`) and folds `f`/`F_n` of literals.
    pub fn normalize(&self) -> SrExpr {
        match self {
            SrExpr::Literal(v) => SrExpr::Literal(v.clone()),
            SrExpr::VdW { colors, arg } => SrExpr::VdW { colors: *colors, arg: Box::new(arg.normalize()) },
            SrExpr::VdWGrid { colors, dim: 1, arg } => {
                SrExpr::VdW { colors: *colors, arg: Box::new(arg.normalize()) }
            }
            SrExpr::VdWGrid { colors, dim, arg } => {
                SrExpr::VdWGrid { colors: *colors, dim: *dim, arg: Box::new(arg.normalize()) }
            }
            SrExpr::FApply(arg) | SrExpr::FnApply { dim: 2, arg } => fold(SrExpr::FApply(Box::new(arg.normalize()))),
            SrExpr::FnApply { dim, arg } => fold(SrExpr::FnApply { dim: *dim, arg: Box::new(arg.normalize()) }),
        }
    }
}

fn fold(e: SrExpr) -> SrExpr {
    let folded = match &e {
        SrExpr::FApply(a) => match a.as_ref() {
            SrExpr::Literal(v) => f_big(v).ok(),
            _ => None,
        },
        SrExpr::FnApply { dim, arg } => match arg.as_ref() {
            SrExpr::Literal(v) => big_f_nd(*dim, v).ok(),
            _ => None,
        },
        _ => None,
    };
    folded.map(SrExpr::Literal).unwrap_or(e)
}

impl fmt::Display for SrExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrExpr::Literal(v) => write!(f, "{v}"),
            SrExpr::VdW { colors, arg } => write!(f, "vdW_{colors}({arg})"),
            SrExpr::VdWGrid { colors, dim, arg } => write!(f, "vdW_{colors}(M_{dim}({arg}))"),
            SrExpr::FApply(arg) => write!(f, "f({arg})"),
            SrExpr::FnApply { dim, arg } => write!(f, "F_{dim}({arg})"),
        }
    }
}

/// Planar recursion `SR(h)`.
pub fn sr_expr(h: u32) -> SrExpr {
    match h {
        0 | 1 => SrExpr::literal(2),
        2 => SrExpr::VdW { colors: 2, arg: Box::new(SrExpr::literal(5)) },
        _ => SrExpr::VdW { colors: h, arg: Box::new(SrExpr::FApply(Box::new(sr_expr(h - 1)))) },
    }
}

/// n-dimensional recursion `SR_n(h)`.
pub fn sr_n_expr(n: u32, h: u32) -> SrExpr {
    if h <= 1 {
        return SrExpr::literal(2);
    }
    SrExpr::VdWGrid {
        colors: h,
        dim: n - 1,
        arg: Box::new(SrExpr::FnApply { dim: n, arg: Box::new(sr_n_expr(n, h - 1)) }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trust {
    /// Recomputed by the exact search in the test suite.
    Verified,
    /// Taken from the literature; used as configuration only.
    External,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VdwKey {
    Ap { colors: u32, length: BigUint },
    Grid { colors: u32, dim: u32, side: BigUint },
}

impl fmt::Display for VdwKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VdwKey::Ap { colors, length } => write!(f, "vdW_{colors}({length})"),
            VdwKey::Grid { colors, dim, side } => write!(f, "vdW_{colors}(M_{dim}({side}))"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownEntry {
    pub value: BigUint,
    pub trust: Trust,
}

/// Table of known van der Waerden numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnownValues {
    entries: BTreeMap<VdwKey, KnownEntry>,
}

impl KnownValues {
    pub fn new() -> Self {
        KnownValues::default()
    }

    pub fn insert(&mut self, key: VdwKey, value: BigUint, trust: Trust) {
        self.entries.insert(key, KnownEntry { value, trust });
    }

    pub fn insert_ap(&mut self, colors: u32, length: u64, value: u64, trust: Trust) {
        self.insert(VdwKey::Ap { colors, length: length.into() }, value.into(), trust);
    }

    pub fn get(&self, key: &VdwKey) -> Option<&KnownEntry> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VdwKey, &KnownEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Why an expression has no value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalGap {
    Missing(VdwKey),
    /// A factorial argument above [`FACTORIAL_LIMIT`].
    TooLarge(BigUint),
    /// `F_n(0)` or a non-positive dimension.
    Undefined,
}

fn checked_factorial(arg: &BigUint) -> Result<BigUint, EvalGap> {
    match arg.to_u64() {
        Some(a) if a <= FACTORIAL_LIMIT => Ok(factorial(a)),
        _ => Err(EvalGap::TooLarge(arg.clone())),
    }
}

fn f_big(v: &BigUint) -> Result<BigUint, EvalGap> {
    Ok(checked_factorial(v)? * v + 1u32)
}

fn big_f_nd(n: u32, v: &BigUint) -> Result<BigUint, EvalGap> {
    if v.is_zero() || n < 2 {
        return Err(EvalGap::Undefined);
    }
    let arg = (v - 1u32).pow(n - 1) + 1u32;
    Ok(checked_factorial(&arg)? * v + 1u32)
}

fn lookup(table: &KnownValues, key: VdwKey) -> Result<BigUint, EvalGap> {
    table.get(&key).map(|e| e.value.clone()).ok_or(EvalGap::Missing(key))
}

/// Bottom-up evaluation. Closed forms `vdW_1(N) = N`, `vdW_h(1) = 1` and
/// `vdW_h(2) = h + 1` are applied directly; everything else comes from `table`.
pub fn eval_expr_detailed(e: &SrExpr, table: &KnownValues) -> Result<BigUint, EvalGap> {
    match e {
        SrExpr::Literal(v) => Ok(v.clone()),
        SrExpr::FApply(arg) => f_big(&eval_expr_detailed(arg, table)?),
        SrExpr::FnApply { dim, arg } => big_f_nd(*dim, &eval_expr_detailed(arg, table)?),
        SrExpr::VdW { colors, arg } => {
            let n = eval_expr_detailed(arg, table)?;
            if *colors == 1 || n <= BigUint::one() {
                Ok(n)
            } else if n == BigUint::from(2u32) {
                Ok(BigUint::from(*colors) + 1u32)
            } else {
                lookup(table, VdwKey::Ap { colors: *colors, length: n })
            }
        }
        SrExpr::VdWGrid { colors, dim, arg } => {
            if *dim == 0 {
                return Err(EvalGap::Undefined);
            }
            if *dim == 1 {
                return eval_expr_detailed(&SrExpr::VdW { colors: *colors, arg: arg.clone() }, table);
            }
            let side = eval_expr_detailed(arg, table)?;
            if *colors == 1 || side <= BigUint::one() {
                Ok(side)
            } else {
                lookup(table, VdwKey::Grid { colors: *colors, dim: *dim, side })
            }
        }
    }
}

/// Value of `e`, or `None` when some required number is unknown or too large.
pub fn eval_expr(e: &SrExpr, table: &KnownValues) -> Option<BigUint> {
    eval_expr_detailed(e, table).ok()
}
