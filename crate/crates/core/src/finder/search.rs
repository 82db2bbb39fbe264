//! The inductive colour-elimination argument run as a search.
//!
//! At each level the current rain's points use only the `remaining` colours.
//! Find a monochromatic progression (or grid) in its base, stand a rain on
//! it, and scan that rain's apexes for the base colour. A hit closes a unit
//! simplex. Otherwise every apex avoids the base colour, so a sub-rain of the
//! apexes uses one colour fewer and the search recurses into it. With one
//! colour left the whole rain is monochromatic.
//!
//! The theorem-sized rain lengths are far out of reach, so by default the
//! ambient base grows geometrically and each level tries witness sizes in
//! increasing order, every witness in canonical order, until the budget runs
//! out.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::certificate::{RainRecord, TraceStep, Witness};
use super::Limit;
use crate::budget::{Clock, SearchBudget};
use crate::coloring::Coloring;
use crate::error::Error;
use crate::rain::{f_len_nd, Rain2D, RainNd};
use crate::rational::{Point, Rational};
use crate::simplex::StandardSimplex;
use crate::vdw::{eval_expr, sr_expr, sr_n_expr, KnownValues};

/// Smallest length that allows recursion into a sub-rain (`F_n(2) = 5`).
const FIRST_RECURSIVE_TARGET: usize = 5;
const FIRST_AMBIENT_LEN: usize = 8;

pub(crate) enum Stop {
    Limit(Limit),
    Oracle(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Oracle(e)
    }
}

pub(crate) struct Found {
    pub simplex: StandardSimplex,
    pub color: u32,
    pub trace: Vec<TraceStep>,
}

pub(crate) enum Strategy {
    Deepening,
    /// Exact rain lengths `SR(c)` for `c = 1..=h`, index `c - 1`.
    Faithful(Vec<usize>),
}

struct Oracle<'a> {
    coloring: &'a dyn Coloring,
    queries: u64,
    budget: &'a SearchBudget,
    clock: &'a dyn Clock,
}

impl Oracle<'_> {
    fn check_time(&self) -> Result<(), Stop> {
        if self.clock.elapsed() > self.budget.time_limit {
            Err(Stop::Limit(Limit::Time))
        } else {
            Ok(())
        }
    }

    fn color(&mut self, p: &Point) -> Result<u32, Stop> {
        self.queries += 1;
        if self.queries > self.budget.max_queries {
            return Err(Stop::Limit(Limit::Queries));
        }
        if self.queries & 0x3ff == 0 {
            self.check_time()?;
        }
        Ok(self.coloring.color_at(p)?)
    }
}

pub(crate) struct Engine<'a> {
    oracle: Oracle<'a>,
    strategy: Strategy,
    trace: Vec<TraceStep>,
    pub(crate) deepest: Vec<TraceStep>,
    pub(crate) depth_cut: bool,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(
        coloring: &'a dyn Coloring,
        budget: &'a SearchBudget,
        clock: &'a dyn Clock,
        strategy: Strategy,
    ) -> Self {
        Engine {
            oracle: Oracle { coloring, queries: 0, budget, clock },
            strategy,
            trace: Vec::new(),
            deepest: Vec::new(),
            depth_cut: false,
        }
    }

    /// Current path, or the deepest abandoned one if that went further.
    pub(crate) fn partial_trace(&self) -> Vec<TraceStep> {
        if self.trace.len() >= self.deepest.len() {
            self.trace.clone()
        } else {
            self.deepest.clone()
        }
    }

    fn abandon(&mut self, mark: usize) {
        if self.trace.len() > self.deepest.len() {
            self.deepest = self.trace.clone();
        }
        self.trace.truncate(mark);
    }

    /// Searches `ambient` (all of whose points may take any colour).
    pub(crate) fn run(&mut self, ambient: &RainRecord) -> Result<Option<Found>, Stop> {
        let all: Vec<u32> = (0..self.oracle.coloring.colors()).collect();
        self.trace.clear();
        self.trace.push(TraceStep::RainBuilt(ambient.clone()));
        self.level(ambient, &all, 0)
    }

    /// `(witness size, sub-rain length to recurse with)` pairs for a level.
    fn targets(&self, rain: &RainRecord, colors_left: usize) -> Vec<(usize, Option<usize>)> {
        let len = rain.length();
        let n = rain.dim() as u32;
        match &self.strategy {
            Strategy::Faithful(sr) => {
                let sub = sr[colors_left - 2];
                let need = f_len_nd(n, sub as u64).to_usize().unwrap_or(usize::MAX);
                if need <= len {
                    alloc::vec![(need, Some(sub))]
                } else {
                    Vec::new()
                }
            }
            Strategy::Deepening => {
                let mut out: Vec<_> = (2..FIRST_RECURSIVE_TARGET.min(len + 1)).map(|t| (t, None)).collect();
                let mut l = 2u64;
                loop {
                    let need = f_len_nd(n, l);
                    if need > BigUint::from(len) {
                        break;
                    }
                    out.push((need.to_usize().expect("bounded by len"), Some(l as usize)));
                    l += 1;
                }
                out
            }
        }
    }

    fn found(&self, simplex: StandardSimplex, color: u32) -> Found {
        Found { simplex, color, trace: self.trace.clone() }
    }

    fn level(&mut self, rain: &RainRecord, remaining: &[u32], depth: usize) -> Result<Option<Found>, Stop> {
        if let [only] = remaining {
            return Ok(Some(self.found(rain.first_simplex(), *only)));
        }
        if depth >= self.oracle.budget.max_depth {
            self.depth_cut = true;
            return Ok(None);
        }
        let oracle = &mut self.oracle;
        let base = rain.base_cube(|p| oracle.color(p))?;
        let first_only = matches!(self.strategy, Strategy::Faithful(_));
        for (size, recurse) in self.targets(rain, remaining.len()) {
            let witnesses: Vec<Witness> = if first_only {
                rain.witnesses(&base, size).take(1).collect()
            } else {
                rain.witnesses(&base, size).collect()
            };
            for w in witnesses {
                self.oracle.check_time()?;
                let color = w.color();
                if !remaining.contains(&color) {
                    continue;
                }
                let mark = self.trace.len();
                let sub = rain.on_witness(&w)?;
                self.trace.push(TraceStep::WitnessFound(w));
                self.trace.push(TraceStep::RainBuilt(sub.clone()));
                for apex in sub.apex_points() {
                    if self.oracle.color(&apex)? == color {
                        let simplex = sub.apex_simplex(&apex)?;
                        self.trace.push(TraceStep::LayerHit(apex));
                        return Ok(Some(self.found(simplex, color)));
                    }
                }
                if let Some(target) = recurse {
                    let next = sub.subrain(target)?;
                    let rest: Vec<u32> = remaining.iter().copied().filter(|&c| c != color).collect();
                    self.trace.push(TraceStep::Recursed { remaining: rest.clone() });
                    self.trace.push(TraceStep::RainBuilt(next.clone()));
                    if let Some(found) = self.level(&next, &rest, depth + 1)? {
                        return Ok(Some(found));
                    }
                }
                self.abandon(mark);
            }
        }
        Ok(None)
    }
}

/// Which rain family the search runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Family {
    Planar,
    Spatial(usize),
}

impl Family {
    /// Base row / grid of side `len` at offset `shift` along the height axis.
    pub(crate) fn ambient(self, len: usize, shift: i64) -> Result<RainRecord, Error> {
        match self {
            Family::Planar => {
                let origin = Point::new(alloc::vec![Rational::zero(), shift.into()])?;
                Rain2D::unit(origin, len).map(RainRecord::Planar)
            }
            Family::Spatial(n) => {
                let mut coords = alloc::vec![Rational::zero(); n];
                coords[0] = shift.into();
                RainNd::unit(Point::new(coords)?, len).map(RainRecord::Spatial)
            }
        }
    }

    /// Exact rain lengths `SR(c)` for `c = 1..=colors`, if all are known and
    /// fit in memory terms.
    pub(crate) fn theorem_lengths(self, colors: u32, table: &KnownValues) -> Result<Vec<usize>, Error> {
        (1..=colors)
            .map(|c| {
                let expr = match self {
                    Family::Planar => sr_expr(c),
                    Family::Spatial(n) => sr_n_expr(n as u32, c),
                };
                eval_expr(&expr, table)
                    .and_then(|v| v.to_usize())
                    .ok_or_else(|| Error::Invalid(alloc::format!("rain length {expr} is not known")))
            })
            .collect()
    }
}

/// Ambient lengths tried in order: 8, 16, 32, ... capped at `max`.
pub(crate) fn ambient_schedule(max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut len = FIRST_AMBIENT_LEN.min(max);
    loop {
        out.push(len);
        if len >= max {
            return out;
        }
        len = (len * 2).min(max);
    }
}
