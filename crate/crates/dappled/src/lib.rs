//! Repairing grid tilings into *dappled* tilings: assignments of tiles to a
//! rectangular grid in which no tile repeats beyond a per-tile bound along a
//! row or column.
//!
//! The crate provides:
//!
//! - a data model for tilings and run-length condition sets ([`grid`],
//!   [`conditions`], [`violation`]),
//! - a linear-time repair sweep turning any tiling into a dappled one while
//!   leaving dappled inputs untouched ([`dapple`]),
//! - a cyclic variant whose outputs stay dappled under periodic repetition
//!   ([`cyclic`]),
//! - exhaustive enumeration and draughtboard constructions for ground truth
//!   and lower bounds ([`oracle`]),
//! - derivation of brick Wang tilings from two-tile dappled tilings
//!   ([`wang`]),
//! - particle advection over a dappled tiling read as a flow field
//!   ([`flow`]),
//! - SVG and PPM rendering ([`render`]).
//!
//! All randomness flows through one seeded generator ([`rng`]), so every
//! operation is reproducible from its inputs and a `u64` seed.

pub mod conditions;
pub mod cyclic;
pub mod dapple;
pub mod flow;
pub mod grid;
pub mod oracle;
pub mod render;
pub mod rng;
pub mod violation;
pub mod wang;

pub use conditions::{parse_conditions, Axis, Bound, BoundGrid, Condition, ConditionSet};
pub use cyclic::{
    border_is_draughtboard, cyclic_violations, dapple_cyclic, dapple_cyclic_p2,
    is_cyclically_dappled, violates_cyclic,
};
pub use dapple::{assert_no_regression, dapple, DappleOptions, DappleTrace, RepairAction};
pub use flow::{FlowField, FlowState, Heading, Particle};
pub use grid::{weight, Cell, Tile, TileSet, Tiling};
pub use oracle::{
    count_draughtboards, draughtboard, enumerate_dappled, EnumerationOptions, EnumerationResult,
};
pub use render::{render_tiling_ppm, render_tiling_svg, render_wang_svg, Palette};
pub use violation::{is_dappled, violates, violations, ViolationReport};
pub use wang::{
    completion_count, is_valid_wang, validate_wang, wang_from_dappled, BrickWangTile, EdgeColor,
    WangReport, WangTiling,
};

/// Errors across the crate. The CLI maps these onto its exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A condition set cannot be used for the requested operation.
    #[error("invalid conditions: {0}")]
    InvalidConditions(String),

    /// A per-cell bound grid does not match the tiling it is applied to.
    #[error("bound grid shape {}x{} does not match {}x{}", got.0, got.1, expected.0, expected.1)]
    MismatchedShapes {
        expected: (usize, usize),
        got: (usize, usize),
    },

    /// Grid extents incompatible with the requested cyclic repair.
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    /// Malformed or out-of-range input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Unparseable input file contents.
    #[error("parse error: {0}")]
    Parse(String),

    /// Enumeration space too large without an explicit override.
    #[error("search space {tiles}^{cells} too large; pass the override to enumerate anyway")]
    SizeLimit { cells: usize, tiles: usize },

    /// Edge quadruple outside the brick Wang tile set.
    #[error("edges ({0}, {1}, {2}, {3}) are not a brick Wang tile", edges[0], edges[1], edges[2], edges[3])]
    NotInWang { edges: [u16; 4] },

    /// A Wang tiling failed validation where a valid one was required.
    #[error("invalid wang tiling: {0}")]
    InvalidWang(String),

    /// Palette does not cover the tile alphabet exactly.
    #[error("palette mismatch: {0}")]
    PaletteMismatch(String),

    /// Particle placed outside the field.
    #[error("position ({x}, {y}) outside the {m}x{n} field")]
    OutOfBounds { x: f64, y: f64, m: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
