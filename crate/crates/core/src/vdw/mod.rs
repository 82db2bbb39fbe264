//! Van der Waerden machinery: monochromatic progressions and grid homothets,
//! exact small van der Waerden numbers, and the symbolic `SR` recursion.

mod ap;
mod grid;
mod number;
mod sr;

pub use ap::{find_mono_ap, mono_aps, ApWitness};
pub use grid::{find_mono_cube, mono_cubes, ColoredCube, GridWitness};
pub use number::{vdw_number, vdw_number_with, VdwBudget, VdwOutcome};
pub use sr::{
    eval_expr, eval_expr_detailed, sr_expr, sr_n_expr, EvalGap, KnownEntry, KnownValues, SrExpr,
    Trust, VdwKey, FACTORIAL_LIMIT,
};
