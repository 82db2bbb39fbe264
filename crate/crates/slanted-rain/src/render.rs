//! SVG and ASCII pictures of planar rains.
//!
//! Points are placed on an integer grid of figure units: base index `kappa`
//! at `x = kappa * x_unit`, the base at height 0 and layer `k` at
//!
//! ```text
//! level(k) = round(y_unit * 1/(k b))            (half rounds up)
//! level(k) = min(level(k), level(k-1) - min_gap)  going down, k = 2, 3, ...
//! level(k) = max(level(k), level(k+1) + min_gap)  going up from the lowest layer (at least min_gap)
//! ```
//!
//! The first line is the true height scaled; the other two compress the
//! lowest layers, where `1/k` crowds together, so that layers stay at least
//! `min_gap` apart and above the base. The map is strictly decreasing in `k`.
//! With the defaults (`x_unit` 10, `y_unit` 120, `min_gap` 1) the levels of
//! the length-19 rain are 120, 60, 40, 30, 24, 20, 17, 15, 13, 12, 11, 10, 9,
//! 8, 7, 6, 5, 4. SVG output scales figure units by [`PX_PER_UNIT`].

use std::collections::BTreeSet;
use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use slanted_rain_core::rain::Location;
use slanted_rain_core::{Point, Rain2D, Rational};

pub const PX_PER_UNIT: u64 = 5;
const MARGIN_PX: u64 = 20;
const BASE_RADIUS_PX: u64 = 3;
const LAYER_RADIUS_PX: u64 = 2;
const HIGHLIGHT_RADIUS_PX: u64 = 6;
/// Largest rain (in points) that will be drawn.
pub const RENDER_POINT_LIMIT: u128 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Ascii,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderPlan {
    pub rain: Rain2D,
    /// Points to circle; must be drawn points of the rain.
    pub highlight: BTreeSet<Point>,
    pub x_unit: u64,
    pub y_unit: u64,
    pub min_gap: u64,
    /// Draw layers `1..=max_layer` only.
    pub max_layer: Option<usize>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("rain has {count} points, more than the drawing limit {limit}")]
    TooLarge { count: u128, limit: u128 },
    #[error("highlighted point {0} is not a drawn point of the rain")]
    NotDrawn(Point),
    #[error("units must be positive")]
    ZeroUnit,
}

impl RenderPlan {
    pub fn new(rain: Rain2D, format: Format) -> Self {
        RenderPlan { rain, highlight: BTreeSet::new(), x_unit: 10, y_unit: 120, min_gap: 1, max_layer: None, format }
    }

    fn layers(&self) -> usize {
        let all = self.rain.length() - 1;
        self.max_layer.map_or(all, |m| m.min(all))
    }

    /// Figure-unit level of layers `1..=layers()`, index `k - 1`.
    pub fn layer_levels(&self) -> Vec<u64> {
        let n = self.layers();
        let mut levels: Vec<u64> = (1..=n)
            .map(|k| {
                let h = (Rational::from(k) * self.rain.step().clone()).recip().expect("positive");
                round_half_up(&(h * Rational::from(self.y_unit)))
            })
            .collect();
        for i in 1..n {
            levels[i] = levels[i].min(levels[i - 1].saturating_sub(self.min_gap));
        }
        for i in (0..n).rev() {
            let floor = levels.get(i + 1).map_or(self.min_gap, |l| l + self.min_gap);
            levels[i] = levels[i].max(floor);
        }
        levels
    }

    /// Drawn points with their figure-unit positions, in canonical order.
    fn placed(&self) -> Result<Vec<(Point, u64, u64)>, RenderError> {
        if self.x_unit == 0 || self.y_unit == 0 || self.min_gap == 0 {
            return Err(RenderError::ZeroUnit);
        }
        let count = self.rain.point_count();
        if count > RENDER_POINT_LIMIT {
            return Err(RenderError::TooLarge { count, limit: RENDER_POINT_LIMIT });
        }
        let levels = self.layer_levels();
        let mut out = Vec::new();
        for p in self.rain.enumerate_points(RENDER_POINT_LIMIT).expect("count checked") {
            match self.rain.locate(&p).expect("enumerated points are members") {
                Location::Base { kappa } => out.push((p, kappa as u64 * self.x_unit, 0)),
                Location::Layer { k, kappa } if k <= levels.len() => {
                    out.push((p, kappa as u64 * self.x_unit, levels[k - 1]))
                }
                Location::Layer { .. } => {}
            }
        }
        for h in &self.highlight {
            if !out.iter().any(|(p, ..)| p == h) {
                return Err(RenderError::NotDrawn(h.clone()));
            }
        }
        Ok(out)
    }
}

fn round_half_up(r: &Rational) -> u64 {
    let (q, _) = (r.numer() * BigInt::from(2) + r.denom()).div_rem(&(r.denom() * BigInt::from(2)));
    u64::try_from(q).unwrap_or(u64::MAX)
}

pub fn render(plan: &RenderPlan) -> Result<String, RenderError> {
    match plan.format {
        Format::Svg => render_svg(plan),
        Format::Ascii => render_ascii(plan),
    }
}

fn render_svg(plan: &RenderPlan) -> Result<String, RenderError> {
    let placed = plan.placed()?;
    let top = placed.iter().map(|&(_, _, y)| y).max().unwrap_or(0);
    let right = placed.iter().map(|&(_, x, _)| x).max().unwrap_or(0);
    let width = right * PX_PER_UNIT + 2 * MARGIN_PX;
    let height = top * PX_PER_UNIT + 2 * MARGIN_PX;
    let px = |x: u64, y: u64| (MARGIN_PX + x * PX_PER_UNIT, MARGIN_PX + (top - y) * PX_PER_UNIT);

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#).unwrap();
    writeln!(s, "<title>{}</title>", plan.rain).unwrap();
    writeln!(s, r#"<g fill="black">"#).unwrap();
    for (p, x, y) in &placed {
        let (cx, cy) = px(*x, *y);
        let r = if *y == 0 { BASE_RADIUS_PX } else { LAYER_RADIUS_PX };
        writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="{r}"><title>{p}</title></circle>"#).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    if !plan.highlight.is_empty() {
        writeln!(s, r#"<g fill="none" stroke="black" stroke-width="1">"#).unwrap();
        for (p, x, y) in placed.iter().filter(|(p, ..)| plan.highlight.contains(p)) {
            let (cx, cy) = px(*x, *y);
            writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="{HIGHLIGHT_RADIUS_PX}"><title>{p}</title></circle>"#).unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

/// One row per drawn layer, top layer first, base last. Each row starts with
/// the exact height and has one cell per base position: `.` for a point,
/// `o` for a highlighted point.
fn render_ascii(plan: &RenderPlan) -> Result<String, RenderError> {
    let placed = plan.placed()?;
    let len = plan.rain.length();
    let base_y = plan.rain.origin().coord(1).clone();
    let mut rows: Vec<(String, Vec<char>)> = (1..=plan.layers())
        .map(|k| ((&base_y + &plan.rain.layer_height(k)).to_string(), vec![' '; len]))
        .collect();
    rows.push((base_y.to_string(), vec![' '; len]));
    let last = rows.len() - 1;
    for (p, _, _) in &placed {
        let (row, kappa) = match plan.rain.locate(p).expect("drawn points are members") {
            Location::Base { kappa } => (last, kappa),
            Location::Layer { k, kappa } => (k - 1, kappa),
        };
        rows[row].1[kappa] = if plan.highlight.contains(p) { 'o' } else { '.' };
    }
    let label_width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (label, cells) in rows {
        let cells: String = cells.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        let line = format!("{label:>label_width$} | {cells}");
        s.push_str(line.trim_end());
        s.push('\n');
    }
    Ok(s)
}
