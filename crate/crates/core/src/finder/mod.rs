//! Certificate-producing search for monochromatic standard simplices.

mod brute;
mod certificate;
mod search;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use brute::{brute_force_unit_simplices, brute_force_with_limit};
pub use certificate::{verify_certificate, Certificate, RainRecord, Rejection, TraceStep, Witness};

use crate::affine::DiagonalAffineMap;
use crate::budget::{default_clock, Clock, SearchBudget};
use crate::coloring::{ColoringSpec, Pullback};
use crate::error::Error;
use crate::rational::Rational;
use crate::vdw::KnownValues;
use search::{ambient_schedule, Engine, Family, Stop, Strategy};

/// The budget dimension that ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    BaseLength,
    Depth,
    Queries,
    Time,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Limit::BaseLength => "max base length",
            Limit::Depth => "max recursion depth",
            Limit::Queries => "max oracle queries",
            Limit::Time => "time limit",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    /// Nothing found within the budget; `trace` is the deepest path explored.
    #[error("budget exhausted ({limit}) after {} trace steps", trace.len())]
    BudgetExhausted { limit: Limit, trace: Vec<TraceStep> },
    /// Proof-faithful mode cannot run with the known values or budget.
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Invalid(#[from] Error),
    /// The search produced a certificate that failed verification. A bug.
    #[error("internal error, certificate rejected: {0}")]
    Internal(Rejection),
}

#[derive(Clone, Debug, Default)]
pub struct FinderOptions<'a> {
    pub budget: SearchBudget,
    /// Run with the exact theorem lengths taken from this table.
    pub faithful: Option<&'a KnownValues>,
    /// Offset of the ambient base along the height axis.
    pub shift: i64,
}

impl<'a> FinderOptions<'a> {
    pub fn new(budget: SearchBudget) -> Self {
        FinderOptions { budget, faithful: None, shift: 0 }
    }
}

/// A monochromatic standard triangle with leg product 1.
pub fn find_unit_triangle(spec: &ColoringSpec, budget: &SearchBudget) -> Result<Certificate, SearchError> {
    find_unit_simplex(spec, 2, budget)
}

/// A monochromatic standard `n`-simplex with edge product 1.
pub fn find_unit_simplex(spec: &ColoringSpec, n: usize, budget: &SearchBudget) -> Result<Certificate, SearchError> {
    find_scaled(spec, n, &Rational::one(), budget)
}

/// A monochromatic standard `n`-simplex with edge product `target`.
pub fn find_scaled(
    spec: &ColoringSpec,
    n: usize,
    target: &Rational,
    budget: &SearchBudget,
) -> Result<Certificate, SearchError> {
    find_with(spec, n, target, &FinderOptions::new(budget.clone()), &default_clock())
}

/// Edge product of a right triangle with area `area`.
pub fn product_for_area(area: &Rational) -> Rational {
    area * &Rational::integer(2)
}

/// Edge product of the standard `n`-simplex with volume `volume`, in the
/// convention where the unit simplex has volume `1/n`.
pub fn product_for_volume(n: usize, volume: &Rational) -> Rational {
    volume * &Rational::from(n)
}

/// The general entry point. Searches for a unit simplex under the colouring
/// pulled back along `x_0 -> target * x_0`, then stretches the result, so
/// the certificate's trace is in the pulled-back coordinates.
pub fn find_with(
    spec: &ColoringSpec,
    n: usize,
    target: &Rational,
    opts: &FinderOptions<'_>,
    clock: &dyn Clock,
) -> Result<Certificate, SearchError> {
    if n < 2 {
        return Err(Error::Invalid(alloc::format!("simplex dimension must be at least 2, got {n}")).into());
    }
    if !target.is_positive() {
        return Err(Error::NotPositive { what: "target product", value: target.clone() }.into());
    }
    spec.validate()?;
    opts.budget.validate()?;

    let family = if n == 2 { Family::Planar } else { Family::Spatial(n) };
    let mut scale = alloc::vec![Rational::one(); n];
    scale[0] = target.clone();
    let stretch = DiagonalAffineMap::scaling(scale)?;
    let pulled = Pullback::new(spec, stretch.clone());

    let (strategy, lengths) = match opts.faithful {
        None => (Strategy::Deepening, ambient_schedule(opts.budget.max_base_len)),
        Some(table) => {
            let sr = family
                .theorem_lengths(spec.num_colors(), table)
                .map_err(|e| SearchError::Refused(alloc::format!("{e}")))?;
            let top = *sr.last().expect("at least one colour");
            if top > opts.budget.max_base_len {
                return Err(SearchError::Refused(alloc::format!(
                    "theorem length {top} exceeds max base length {}",
                    opts.budget.max_base_len
                )));
            }
            (Strategy::Faithful(sr), alloc::vec![top])
        }
    };

    let mut engine = Engine::new(&pulled, &opts.budget, clock, strategy);
    for len in lengths {
        let ambient = family.ambient(len, opts.shift)?;
        let found = match engine.run(&ambient) {
            Ok(found) => found,
            Err(Stop::Oracle(e)) => return Err(e.into()),
            Err(Stop::Limit(limit)) => {
                return Err(SearchError::BudgetExhausted { limit, trace: engine.partial_trace() })
            }
        };
        if let Some(found) = found {
            let cert = Certificate {
                simplex: stretch.apply_simplex(&found.simplex)?,
                color: found.color,
                spec: spec.clone(),
                target: target.clone(),
                trace: found.trace,
            };
            verify_certificate(&cert).map_err(SearchError::Internal)?;
            return Ok(cert);
        }
    }
    let limit = if engine.depth_cut { Limit::Depth } else { Limit::BaseLength };
    Err(SearchError::BudgetExhausted { limit, trace: engine.partial_trace() })
}

/// Up to `count` distinct certificates, restarting with the ambient base
/// shifted one unit further along the height axis each time. Gives up after
/// `4 * count` restarts.
pub fn find_many(
    spec: &ColoringSpec,
    n: usize,
    target: &Rational,
    opts: &FinderOptions<'_>,
    count: usize,
) -> Result<Vec<Certificate>, SearchError> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut run = opts.clone();
    for i in 0..count.saturating_mul(4) {
        if out.len() == count {
            break;
        }
        run.shift = opts.shift + i as i64;
        let cert = find_with(spec, n, target, &run, &default_clock())?;
        if seen.insert(cert.simplex.clone()) {
            out.push(cert);
        }
    }
    Ok(out)
}
