use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::rain::lex_indices;

/// Colours on the cube `{0..side}^dim`, stored row-major (last axis fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredCube {
    dim: usize,
    side: usize,
    colors: Vec<u32>,
}

impl ColoredCube {
    pub fn new(dim: usize, side: usize, colors: Vec<u32>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::Invalid("cube dimension must be positive".into()));
        }
        let expected = side
            .checked_pow(dim as u32)
            .ok_or_else(|| Error::Invalid("cube too large".into()))?;
        if colors.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: colors.len() });
        }
        Ok(ColoredCube { dim, side, colors })
    }

    /// Builds the cube by evaluating `color` at every index in lexicographic order.
    pub fn from_fn<E>(dim: usize, side: usize, mut color: impl FnMut(&[usize]) -> Result<u32, E>) -> Result<Self, E> {
        let colors = lex_indices(dim, side).map(|i| color(&i)).collect::<Result<Vec<_>, E>>()?;
        Ok(ColoredCube { dim, side, colors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn get(&self, idx: &[usize]) -> u32 {
        let flat = idx.iter().fold(0usize, |acc, &i| acc * self.side + i);
        self.colors[flat]
    }
}

/// Monochromatic homothet `origin + scale * {0..side}^d` of the cube grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridWitness {
    pub origin: Vec<usize>,
    pub scale: usize,
    pub side: usize,
    pub color: u32,
}

impl GridWitness {
    pub fn points(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        lex_indices(self.origin.len(), self.side)
            .map(move |v| self.origin.iter().zip(v).map(|(o, v)| o + self.scale * v).collect())
    }

    pub fn holds_in(&self, cube: &ColoredCube) -> bool {
        self.origin.len() == cube.dim()
            && self.points().all(|p| p.iter().all(|&c| c < cube.side()) && cube.get(&p) == self.color)
    }
}

impl fmt::Display for GridWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "grid(origin {:?}, scale {}, side {}, color {})",
            self.origin, self.scale, self.side, self.color
        )
    }
}

/// Every monochromatic homothet of `{0..l}^d`: origin lexicographic, then
/// scale ascending (the order of [`super::mono_aps`] when `d = 1`).
pub fn mono_cubes(cube: &ColoredCube, l: usize) -> impl Iterator<Item = GridWitness> + '_ {
    let side = cube.side();
    lex_indices(cube.dim(), side).flat_map(move |origin| {
        let reach = origin.iter().map(|&o| side - 1 - o).min().unwrap_or(0);
        let max_scale = if l <= 1 { 1 } else { reach / (l - 1) };
        let color = cube.get(&origin);
        (1..=max_scale).filter_map(move |scale| {
            let w = GridWitness { origin: origin.clone(), scale, side: l.max(1), color };
            let ok = w.points().all(|p| cube.get(&p) == color);
            ok.then_some(w)
        })
    })
}

pub fn find_mono_cube(cube: &ColoredCube, l: usize) -> Option<GridWitness> {
    mono_cubes(cube, l).next()
}
