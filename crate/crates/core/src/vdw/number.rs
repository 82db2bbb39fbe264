use alloc::vec::Vec;
use core::time::Duration;

use crate::budget::{default_clock, Clock};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VdwBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for VdwBudget {
    fn default() -> Self {
        VdwBudget { max_nodes: 2_000_000_000, time_limit: Duration::from_secs(300) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VdwOutcome {
    /// The search was exhaustive: every colouring of length `value` has a
    /// monochromatic progression and `extremal` (length `value - 1`) has none.
    Exact { value: usize, extremal: Vec<u32>, nodes: u64 },
    /// Budget ran out; the number is at least `lower_bound`, witnessed by `best`.
    Unknown { lower_bound: usize, best: Vec<u32>, nodes: u64 },
}

impl VdwOutcome {
    pub fn exact(&self) -> Option<usize> {
        match self {
            VdwOutcome::Exact { value, .. } => Some(*value),
            VdwOutcome::Unknown { .. } => None,
        }
    }
}

struct Search<'a> {
    colors: u8,
    n: usize,
    seq: Vec<u8>,
    best: Vec<u8>,
    nodes: u64,
    budget: &'a VdwBudget,
    clock: &'a dyn Clock,
    aborted: bool,
}

impl Search<'_> {
    /// Whether colouring position `seq.len()` with `c` closes a monochromatic
    /// `n`-term progression ending there.
    fn closes_progression(&self, c: u8) -> bool {
        let i = self.seq.len();
        if self.n <= 1 {
            return true;
        }
        let span = self.n - 1;
        (1..=i / span).any(|d| (1..=span).all(|j| self.seq[i - j * d] == c))
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes & 0xfff == 0 && self.clock.elapsed() > self.budget.time_limit)
        {
            self.aborted = true;
        }
        !self.aborted
    }

    /// Depth-first over colourings, colours introduced in order so each
    /// colour permutation class is visited once.
    fn extend(&mut self, used: u8) {
        if self.seq.len() > self.best.len() {
            self.best = self.seq.clone();
        }
        let top = self.colors.min(used + 1);
        for c in 0..top {
            if !self.tick() {
                return;
            }
            if !self.closes_progression(c) {
                self.seq.push(c);
                self.extend(used.max(c + 1));
                self.seq.pop();
                if self.aborted {
                    return;
                }
            }
        }
    }
}

/// Least `L` such that every `colors`-colouring of `{0..L}` has a
/// monochromatic `n`-term progression, by exhaustive backtracking.
pub fn vdw_number(colors: u32, n: usize, budget: &VdwBudget) -> Result<VdwOutcome, Error> {
    vdw_number_with(colors, n, budget, &default_clock())
}

pub fn vdw_number_with(
    colors: u32,
    n: usize,
    budget: &VdwBudget,
    clock: &dyn Clock,
) -> Result<VdwOutcome, Error> {
    if colors == 0 || colors > u32::from(u8::MAX) || n == 0 {
        return Err(Error::Invalid(alloc::format!(
            "vdW needs 1 <= colors <= 255 and n >= 1, got colors {colors}, n {n}"
        )));
    }
    let mut s = Search {
        colors: colors as u8,
        n,
        seq: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget,
        clock,
        aborted: false,
    };
    s.extend(0);
    let best: Vec<u32> = s.best.iter().map(|&c| u32::from(c)).collect();
    let value = best.len() + 1;
    Ok(if s.aborted {
        VdwOutcome::Unknown { lower_bound: value, best, nodes: s.nodes }
    } else {
        VdwOutcome::Exact { value, extremal: best, nodes: s.nodes }
    })
}
