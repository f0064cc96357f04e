//! Violation detection for plain (non-cyclic) condition sets.
//!
//! Cyclic condition sets have their own checker in [`crate::cyclic`]; the
//! functions here read every condition non-cyclically, with out-of-grid
//! neighbours treated as matching nothing.

use crate::conditions::{Axis, Bound, Condition, ConditionSet};
use crate::grid::{Cell, Tile, Tiling};

/// One detected violation: the run `run_start ..= cell` of `bound + 1`
/// copies of `tile` along `axis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport {
    pub cell: Cell,
    pub tile: Tile,
    pub axis: Axis,
    /// Bound in force at `cell` (finite, or the run could not overflow it).
    pub bound: u32,
    pub run_start: Cell,
}

/// First condition violated at a cell, checking horizontal conditions before
/// vertical ones in the set's normalized order.
pub fn violates(f: &Tiling, cell: Cell, set: &ConditionSet) -> Option<ViolationReport> {
    set.conditions()
        .iter()
        .find_map(|cond| check_condition(f, cell, cond))
}

fn check_condition(f: &Tiling, cell: Cell, cond: &Condition) -> Option<ViolationReport> {
    let (i, j) = cell;
    let Bound::Finite(bound) = cond.bound_at(i, j) else {
        return None;
    };
    if f.get(i, j) != cond.tile {
        return None;
    }
    let b = bound as isize;
    let run_is_full = match cond.axis {
        Axis::Horizontal => {
            (1..=b).all(|k| f.get_signed(i as isize - k, j as isize) == Some(cond.tile))
        }
        Axis::Vertical => {
            (1..=b).all(|k| f.get_signed(i as isize, j as isize - k) == Some(cond.tile))
        }
    };
    run_is_full.then(|| ViolationReport {
        cell,
        tile: cond.tile,
        axis: cond.axis,
        bound,
        run_start: match cond.axis {
            Axis::Horizontal => (i - bound as usize, j),
            Axis::Vertical => (i, j - bound as usize),
        },
    })
}

/// Full row-major scan; the tiling is dappled when the report list is empty.
pub fn violations(f: &Tiling, set: &ConditionSet) -> Vec<ViolationReport> {
    let mut reports = Vec::new();
    for j in 0..f.n() {
        for i in 0..f.m() {
            if let Some(report) = violates(f, (i, j), set) {
                reports.push(report);
            }
        }
    }
    reports
}

/// True when no cell violates any condition of the set, read non-cyclically.
pub fn is_dappled(f: &Tiling, set: &ConditionSet) -> bool {
    (0..f.n()).all(|j| (0..f.m()).all(|i| violates(f, (i, j), set).is_none()))
}
