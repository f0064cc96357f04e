//! Run-length conditions and condition sets.
//!
//! A condition `(tile, axis, bound)` forbids more than `bound` consecutive
//! copies of `tile` along `axis`: a horizontal condition with bound `p` is
//! violated at `(i, j)` exactly when cells `(i-p, j) ..= (i, j)` all carry
//! the tile. A bound may vary per cell, and an unbounded entry makes the
//! condition vacuous there. A condition set is either plain or cyclic; in
//! the cyclic reading, runs wrap around the grid edges.

use std::fmt;

use serde::Deserialize;

use crate::grid::{Tile, TileSet};
use crate::{Error, Result};

/// Run direction of a condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Horizontal => "H",
            Axis::Vertical => "V",
        })
    }
}

/// Maximum allowed run length; `Unbounded` never triggers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u32),
    Unbounded,
}

impl Bound {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bound::Finite(b) => Some(b),
            Bound::Unbounded => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(b) => write!(f, "{b}"),
            Bound::Unbounded => f.write_str("inf"),
        }
    }
}

/// Per-cell bound overrides, same shape as the tiling they apply to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundGrid {
    m: usize,
    n: usize,
    entries: Vec<Bound>,
}

impl BoundGrid {
    /// Grid from row-major entries.
    pub fn new(m: usize, n: usize, entries: Vec<Bound>) -> Result<Self> {
        if m == 0 || n == 0 || entries.len() != m * n {
            return Err(Error::InvalidConditions(format!(
                "bound grid shape {m}x{n} does not match its {} entries",
                entries.len()
            )));
        }
        Ok(Self { m, n, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Bound {
        assert!(i < self.m && j < self.n);
        self.entries[j * self.m + i]
    }

    pub fn entries(&self) -> &[Bound] {
        &self.entries
    }
}

/// One run-length condition on a single tile and axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub tile: Tile,
    pub axis: Axis,
    pub bound: Bound,
    /// When present, overrides `bound` at every cell.
    pub grid: Option<BoundGrid>,
}

impl Condition {
    pub fn new(tile: Tile, axis: Axis, bound: Bound) -> Self {
        Self {
            tile,
            axis,
            bound,
            grid: None,
        }
    }

    pub fn horizontal(tile: Tile, bound: u32) -> Self {
        Self::new(tile, Axis::Horizontal, Bound::Finite(bound))
    }

    pub fn vertical(tile: Tile, bound: u32) -> Self {
        Self::new(tile, Axis::Vertical, Bound::Finite(bound))
    }

    pub fn with_grid(tile: Tile, axis: Axis, grid: BoundGrid) -> Self {
        Self {
            tile,
            axis,
            bound: Bound::Unbounded,
            grid: Some(grid),
        }
    }

    /// Bound in force at a cell.
    pub fn bound_at(&self, i: usize, j: usize) -> Bound {
        match &self.grid {
            Some(g) => g.get(i, j),
            None => self.bound,
        }
    }

    /// Smallest bound the condition takes anywhere.
    pub fn min_bound(&self) -> Bound {
        match &self.grid {
            Some(g) => g.entries().iter().copied().min().expect("grid non-empty"),
            None => self.bound,
        }
    }

    /// True when the condition can never trigger.
    pub fn is_vacuous(&self) -> bool {
        self.min_bound() == Bound::Unbounded
    }
}

/// Normalized collection of conditions plus the cyclic flag.
///
/// Normalization keeps at most one condition per `(tile, axis)` pair by
/// taking the cell-wise minimum of duplicate bounds, and orders horizontal
/// conditions before vertical ones, each group in first-appearance order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionSet {
    cyclic: bool,
    conditions: Vec<Condition>,
}

impl ConditionSet {
    pub fn new(cyclic: bool, conditions: impl IntoIterator<Item = Condition>) -> Result<Self> {
        let mut merged: Vec<Condition> = Vec::new();
        for cond in conditions {
            validate_bounds(&cond)?;
            if cyclic && cond.grid.is_some() {
                return Err(Error::InvalidConditions(
                    "per-cell bounds are not supported in cyclic condition sets".into(),
                ));
            }
            match merged
                .iter_mut()
                .find(|c| c.tile == cond.tile && c.axis == cond.axis)
            {
                Some(existing) => *existing = merge(existing, &cond)?,
                None => merged.push(cond),
            }
        }
        merged.sort_by_key(|c| matches!(c.axis, Axis::Vertical));
        Ok(Self {
            cyclic,
            conditions: merged,
        })
    }

    pub fn plain(conditions: impl IntoIterator<Item = Condition>) -> Result<Self> {
        Self::new(false, conditions)
    }

    pub fn cyclic_set(conditions: impl IntoIterator<Item = Condition>) -> Result<Self> {
        Self::new(true, conditions)
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn conditions(&self) -> &[Condition] {
        &self.conditions
    }

    /// Condition on a given tile and axis, if any.
    pub fn find(&self, tile: Tile, axis: Axis) -> Option<&Condition> {
        self.conditions
            .iter()
            .find(|c| c.tile == tile && c.axis == axis)
    }

    /// Smallest finite bound across all conditions, if any is finite.
    pub fn min_finite_bound(&self) -> Option<u32> {
        self.conditions
            .iter()
            .filter_map(|c| c.min_bound().finite())
            .min()
    }

    /// Largest finite bound used on an axis, if any.
    pub fn max_finite_bound(&self, axis: Axis) -> Option<u32> {
        self.conditions
            .iter()
            .filter(|c| c.axis == axis)
            .filter_map(|c| match &c.grid {
                Some(g) => g.entries().iter().copied().filter_map(Bound::finite).max(),
                None => c.bound.finite(),
            })
            .max()
    }
}

/// Cell-wise minimum of two conditions on the same tile and axis.
fn merge(a: &Condition, b: &Condition) -> Result<Condition> {
    debug_assert!(a.tile == b.tile && a.axis == b.axis);
    let grid = match (&a.grid, &b.grid) {
        (None, None) => None,
        (Some(g), None) => Some(min_grid(g, |i, j| g.get(i, j).min(b.bound))),
        (None, Some(g)) => Some(min_grid(g, |i, j| g.get(i, j).min(a.bound))),
        (Some(g), Some(h)) => {
            if g.m() != h.m() || g.n() != h.n() {
                return Err(Error::MismatchedShapes {
                    expected: (g.m(), g.n()),
                    got: (h.m(), h.n()),
                });
            }
            Some(min_grid(g, |i, j| g.get(i, j).min(h.get(i, j))))
        }
    };
    Ok(Condition {
        tile: a.tile,
        axis: a.axis,
        bound: a.bound.min(b.bound),
        grid,
    })
}

fn min_grid(shape: &BoundGrid, f: impl Fn(usize, usize) -> Bound) -> BoundGrid {
    let entries = (0..shape.n())
        .flat_map(|j| (0..shape.m()).map(move |i| (i, j)))
        .map(|(i, j)| f(i, j))
        .collect();
    BoundGrid::new(shape.m(), shape.n(), entries).expect("same shape as input grid")
}

fn validate_bounds(cond: &Condition) -> Result<()> {
    let zero = |b: Bound| b == Bound::Finite(0);
    if zero(cond.bound)
        || cond
            .grid
            .iter()
            .any(|g| g.entries().iter().any(|&b| zero(b)))
    {
        return Err(Error::InvalidConditions(format!(
            "bound 0 on tile {} axis {} (bounds start at 1)",
            cond.tile, cond.axis
        )));
    }
    Ok(())
}

// --- JSON wire format -------------------------------------------------------

#[derive(Deserialize)]
struct ConditionsFile {
    tiles: Vec<String>,
    #[serde(default)]
    cyclic: bool,
    conditions: Vec<ConditionWire>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConditionWire {
    tile: String,
    axis: String,
    #[serde(default)]
    bound: Option<BoundWire>,
    #[serde(default)]
    bound_grid: Option<Vec<Vec<BoundWire>>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BoundWire {
    Num(u64),
    Word(String),
}

impl BoundWire {
    fn to_bound(&self) -> Result<Bound> {
        match self {
            BoundWire::Num(v) => {
                let v = u32::try_from(*v)
                    .map_err(|_| Error::Parse(format!("bound {v} out of range")))?;
                Ok(Bound::Finite(v))
            }
            BoundWire::Word(w) if w == "inf" => Ok(Bound::Unbounded),
            BoundWire::Word(w) => Err(Error::Parse(format!(
                "bound must be a number or \"inf\", got {w:?}"
            ))),
        }
    }
}

/// Parse a condition-set JSON document into the alphabet it declares and the
/// normalized condition set.
pub fn parse_conditions(json: &str) -> Result<(TileSet, ConditionSet)> {
    let file: ConditionsFile =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("conditions JSON: {e}")))?;
    let tiles = TileSet::new(file.tiles)?;
    let mut conditions = Vec::with_capacity(file.conditions.len());
    for wire in &file.conditions {
        let tile = tiles.index_of(&wire.tile).ok_or_else(|| {
            Error::Parse(format!("condition tile {:?} not in alphabet", wire.tile))
        })?;
        let axis = match wire.axis.as_str() {
            "H" => Axis::Horizontal,
            "V" => Axis::Vertical,
            other => {
                return Err(Error::Parse(format!(
                    "axis must be \"H\" or \"V\", got {other:?}"
                )))
            }
        };
        let grid = match &wire.bound_grid {
            None => None,
            Some(rows) => {
                let n = rows.len();
                let m = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|r| r.len() != m) {
                    return Err(Error::Parse("ragged bound_grid".into()));
                }
                let mut entries = Vec::with_capacity(m * n);
                for row in rows {
                    for b in row {
                        entries.push(b.to_bound()?);
                    }
                }
                Some(BoundGrid::new(m, n, entries)?)
            }
        };
        let bound = match (&wire.bound, &grid) {
            (Some(b), _) => b.to_bound()?,
            (None, Some(_)) => Bound::Unbounded,
            (None, None) => {
                return Err(Error::Parse(format!(
                    "condition on tile {:?} needs a bound or a bound_grid",
                    wire.tile
                )))
            }
        };
        conditions.push(Condition {
            tile,
            axis,
            bound,
            grid,
        });
    }
    let set = ConditionSet::new(file.cyclic, conditions)?;
    Ok((tiles, set))
}
