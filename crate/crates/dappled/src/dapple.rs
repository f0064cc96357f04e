//! The repair sweep: turn any tiling into a dappled one.
//!
//! Cells are visited in increasing weight `i + j`, ties in increasing `i`.
//! At a violating cell the repair is local: over a two-tile alphabet, first
//! try flipping the cell; if the flip itself violates a condition, overwrite
//! the corner `(i, j)` with the diagonal neighbour's tile and set both of
//! `(i-1, j)` and `(i, j-1)` to its complement. Over larger alphabets the
//! cell takes the smallest tile differing from its left and upper
//! neighbours. No repair introduces a violation at any weight at or below
//! the current one, so one sweep suffices and dappled inputs pass through
//! unchanged.

use serde::Serialize;

use crate::conditions::{Bound, ConditionSet};
use crate::grid::{weight, Cell, Tile, TileSet, Tiling};
use crate::violation::{violates, violations};
use crate::{Error, Result};

/// Knobs for [`dapple`].
#[derive(Debug, Clone)]
pub struct DappleOptions {
    /// Record one trace entry per repair.
    pub record_trace: bool,
    /// After every repair, re-scan and assert that the repair resolved its
    /// cell without regressing any cell of equal or lower weight, and that
    /// the (minimal violating weight, count at that weight) measure strictly
    /// improved. Costs a full scan per repair; meant for tests.
    pub check_steps: bool,
}

impl Default for DappleOptions {
    fn default() -> Self {
        Self {
            record_trace: true,
            check_steps: false,
        }
    }
}

/// One repair applied at a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum RepairAction {
    /// Two-tile alphabet: the cell was flipped to `tile`.
    Flip { tile: Tile },
    /// Two-tile alphabet: the cell took the diagonal neighbour's tile and
    /// the left and upper neighbours took its complement.
    Surgery { diagonal: Tile },
    /// Larger alphabet: the cell took the smallest tile differing from its
    /// left and upper neighbours.
    Choose { tile: Tile },
}

/// Repairs in sweep order: weights never decrease, ties never decrease in
/// column.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DappleTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub cell: Cell,
    #[serde(flatten)]
    pub action: RepairAction,
}

impl DappleTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("serializable trace");
        text.push('\n');
        text
    }
}

/// Repair `f` into a tiling dappled for `set`.
///
/// Every bound must be at least 2 everywhere: with a bound of 1 the corner
/// overwrite can oscillate, so such sets are rejected outright.
pub fn dapple(
    f: &Tiling,
    tiles: &TileSet,
    set: &ConditionSet,
    options: &DappleOptions,
) -> Result<(Tiling, DappleTrace)> {
    validate(f, tiles, set)?;
    let mut g = f.clone();
    let mut trace = DappleTrace::default();
    let (m, n) = (g.m(), g.n());
    for w in 0..=(m + n - 2) {
        let lo = w.saturating_sub(n - 1);
        let hi = w.min(m - 1);
        for i in lo..=hi {
            let j = w - i;
            if violates(&g, (i, j), set).is_none() {
                continue;
            }
            let before = options.check_steps.then(|| g.clone());
            let action = repair(&mut g, (i, j), tiles, set);
            if let Some(before) = &before {
                check_step(before, &g, (i, j), set);
            }
            if options.record_trace {
                trace.steps.push(TraceStep {
                    cell: (i, j),
                    action,
                });
            }
        }
    }
    debug_assert!(violations(&g, set).is_empty());
    Ok((g, trace))
}

fn validate(f: &Tiling, tiles: &TileSet, set: &ConditionSet) -> Result<()> {
    if set.is_cyclic() {
        return Err(Error::InvalidConditions(
            "cyclic condition set passed to the plain repair sweep".into(),
        ));
    }
    for cond in set.conditions() {
        if usize::from(cond.tile) >= tiles.len() {
            return Err(Error::InvalidConditions(format!(
                "condition on tile {} outside the {}-tile alphabet",
                cond.tile,
                tiles.len()
            )));
        }
        if let Bound::Finite(b) = cond.min_bound() {
            if b < 2 {
                return Err(Error::InvalidConditions(format!(
                    "bound {b} on tile {} axis {}: repairs need every bound to be at least 2",
                    cond.tile, cond.axis
                )));
            }
        }
        if let Some(grid) = &cond.grid {
            if grid.m() != f.m() || grid.n() != f.n() {
                return Err(Error::MismatchedShapes {
                    expected: (f.m(), f.n()),
                    got: (grid.m(), grid.n()),
                });
            }
        }
    }
    if f.tile_span() > tiles.len() {
        return Err(Error::InvalidInput(format!(
            "tiling uses tile indices beyond the {}-tile alphabet",
            tiles.len()
        )));
    }
    Ok(())
}

fn repair(g: &mut Tiling, (i, j): Cell, tiles: &TileSet, set: &ConditionSet) -> RepairAction {
    if tiles.len() == 2 {
        let flipped = 1 - g.get(i, j);
        g.set(i, j, flipped);
        if violates(g, (i, j), set).is_none() {
            return RepairAction::Flip { tile: flipped };
        }
        // A failed flip implies crossed runs in both axes, which need
        // i >= 1 and j >= 1 since all bounds are at least 2.
        assert!(
            i >= 1 && j >= 1,
            "internal error: corner overwrite reached at border cell ({i},{j})"
        );
        let diagonal = g.get(i - 1, j - 1);
        g.set(i, j, diagonal);
        g.set(i - 1, j, 1 - diagonal);
        g.set(i, j - 1, 1 - diagonal);
        RepairAction::Surgery { diagonal }
    } else {
        let left = (i > 0).then(|| g.get(i - 1, j));
        let up = (j > 0).then(|| g.get(i, j - 1));
        let tile = (0..tiles.len() as Tile)
            .find(|&t| Some(t) != left && Some(t) != up)
            .expect("three or more tiles always leave a choice");
        g.set(i, j, tile);
        RepairAction::Choose { tile }
    }
}

fn check_step(before: &Tiling, after: &Tiling, cell: Cell, set: &ConditionSet) {
    assert!(
        assert_no_regression(before, after, cell, set),
        "repair at {cell:?} regressed a cell of weight <= {}",
        weight(cell)
    );
    let improved = match (measure(before, set), measure(after, set)) {
        (Some(_), None) => true,
        (Some((w0, c0)), Some((w1, c1))) => w1 > w0 || (w1 == w0 && c1 < c0),
        (None, _) => false,
    };
    assert!(
        improved,
        "repair at {cell:?} did not improve the violation measure"
    );
}

/// Minimal violating weight and the number of violations at it.
fn measure(g: &Tiling, set: &ConditionSet) -> Option<(usize, usize)> {
    let reports = violations(g, set);
    let min = reports.iter().map(|r| weight(r.cell)).min()?;
    let count = reports.iter().filter(|r| weight(r.cell) == min).count();
    Some((min, count))
}

/// True when the repair that turned `before` into `after` at `cell` resolved
/// that cell and introduced no violation at any cell of weight at most
/// `weight(cell)` that was clean in `before`.
pub fn assert_no_regression(
    before: &Tiling,
    after: &Tiling,
    cell: Cell,
    set: &ConditionSet,
) -> bool {
    if violates(after, cell, set).is_some() {
        return false;
    }
    let w = weight(cell);
    for j in 0..after.n() {
        for i in 0..after.m() {
            if weight((i, j)) > w {
                continue;
            }
            if violates(after, (i, j), set).is_some() && violates(before, (i, j), set).is_none() {
                return false;
            }
        }
    }
    true
}
