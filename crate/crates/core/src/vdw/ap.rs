use core::fmt;

/// A monochromatic progression `start, start + step, ...` of `length` terms
/// inside a coloured sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ApWitness {
    pub start: usize,
    pub step: usize,
    pub length: usize,
    pub color: u32,
}

impl ApWitness {
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.length).map(move |i| self.start + i * self.step)
    }

    /// Re-reads the colours; true iff every term has `self.color`.
    pub fn holds_in(&self, colors: &[u32]) -> bool {
        self.positions().all(|p| colors.get(p) == Some(&self.color))
    }
}

impl fmt::Display for ApWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ap(start {}, step {}, length {}, color {})", self.start, self.step, self.length, self.color)
    }
}

/// Every monochromatic `n`-term progression, start ascending then step
/// ascending. For `n = 1` each position is reported once with step 1.
pub fn mono_aps(colors: &[u32], n: usize) -> impl Iterator<Item = ApWitness> + '_ {
    let len = colors.len();
    (0..len).flat_map(move |start| {
        let color = colors[start];
        let max_step = if n <= 1 { 1 } else { (len - 1 - start) / (n - 1) };
        (1..=max_step).filter_map(move |step| {
            let w = ApWitness { start, step, length: n.max(1), color };
            (n == 0 || w.positions().skip(1).all(|p| colors[p] == color)).then_some(w)
        })
    })
}

/// First monochromatic `n`-term progression in canonical order.
pub fn find_mono_ap(colors: &[u32], n: usize) -> Option<ApWitness> {
    mono_aps(colors, n).next()
}
