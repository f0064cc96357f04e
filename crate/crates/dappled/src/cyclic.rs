//! Cyclic (tileable) dappled tilings.
//!
//! In the cyclic reading a run may wrap around the grid edges, so a repaired
//! tiling stays dappled under periodic repetition. The repair cannot simply
//! re-check wrapped runs cell by cell: fixing one seam can re-break the
//! other. Instead the sweep checks, at each cell, a schedule of plain runs
//! chosen so that the seams are protected by the time they are reached:
//!
//! - cells left of a *prefix guard* carry no check for that condition;
//! - the guard cell forbids the row prefix from being monochrome, keeping
//!   the wrap-around seam repairable;
//! - the last cell of the line forbids any run that, joined with the
//!   current monochrome prefix, would exceed the bound across the seam;
//! - every other cell checks the plain run bound.
//!
//! With all bounds at least 3 the guard sits at index `bound - 2` and the
//! sweep repairs any two-tile input. Exactly two conditions of bound 2 (one
//! horizontal, one vertical, on different tiles) are handled by a variant
//! that first rewrites the first two rows and columns into a draughtboard
//! border and then sweeps with the guard shifted to `bound - 1`. Shifting
//! the guard without the border is unsound; a feature-gated demonstration
//! reproduces the failure.

use crate::conditions::{Axis, Bound, ConditionSet};
use crate::dapple::{DappleTrace, RepairAction, TraceStep};
use crate::grid::{Cell, Tile, Tiling};
use crate::violation::ViolationReport;
use crate::{Error, Result};

/// Placement of the prefix guard within the schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeamGuard {
    /// Guard at `bound - 2`; sound for bounds of at least 3.
    Early,
    /// Guard at `bound - 1`; sound only behind a draughtboard border.
    Late,
}

impl SeamGuard {
    fn offset(self) -> u32 {
        match self {
            SeamGuard::Early => 2,
            SeamGuard::Late => 1,
        }
    }
}

/// One plain run check assigned to a cell by the schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EffectiveCondition {
    pub tile: Tile,
    pub axis: Axis,
    pub bound: u32,
}

/// First cyclic violation at a cell: a run of `bound + 1` copies of a tile
/// ending there, indices reduced modulo the grid extents.
pub fn violates_cyclic(f: &Tiling, cell: Cell, set: &ConditionSet) -> Option<ViolationReport> {
    let (i, j) = cell;
    let (m, n) = (f.m() as isize, f.n() as isize);
    for cond in set.conditions() {
        let Bound::Finite(bound) = cond.bound_at(i, j) else {
            continue;
        };
        if f.get(i, j) != cond.tile {
            continue;
        }
        let b = bound as isize;
        let full = match cond.axis {
            Axis::Horizontal => {
                (1..=b).all(|k| f.get_wrapped(i as isize - k, j as isize) == cond.tile)
            }
            Axis::Vertical => {
                (1..=b).all(|k| f.get_wrapped(i as isize, j as isize - k) == cond.tile)
            }
        };
        if full {
            let run_start = match cond.axis {
                Axis::Horizontal => ((i as isize - b).rem_euclid(m) as usize, j),
                Axis::Vertical => (i, (j as isize - b).rem_euclid(n) as usize),
            };
            return Some(ViolationReport {
                cell,
                tile: cond.tile,
                axis: cond.axis,
                bound,
                run_start,
            });
        }
    }
    None
}

/// Full row-major scan under the cyclic reading.
pub fn cyclic_violations(f: &Tiling, set: &ConditionSet) -> Vec<ViolationReport> {
    let mut reports = Vec::new();
    for j in 0..f.n() {
        for i in 0..f.m() {
            if let Some(report) = violates_cyclic(f, (i, j), set) {
                reports.push(report);
            }
        }
    }
    reports
}

/// True when no cell violates any condition under the cyclic reading.
pub fn is_cyclically_dappled(f: &Tiling, set: &ConditionSet) -> bool {
    (0..f.n()).all(|j| (0..f.m()).all(|i| violates_cyclic(f, (i, j), set).is_none()))
}

/// Plain run checks the sweep enforces at `cell`, preserving the set's
/// horizontal-before-vertical order. `checked` asserts the seam invariant:
/// by the time the last cell of a line is visited, the monochrome prefix of
/// the line must be shorter than the guard position.
pub fn schedule_at(
    g: &Tiling,
    cell: Cell,
    set: &ConditionSet,
    guard: SeamGuard,
    checked: bool,
) -> Vec<EffectiveCondition> {
    let (i, j) = cell;
    let mut out = Vec::new();
    for cond in set.conditions() {
        let Bound::Finite(p) = cond.bound else {
            continue;
        };
        let (pos, extent) = match cond.axis {
            Axis::Horizontal => (i, g.m()),
            Axis::Vertical => (j, g.n()),
        };
        let guard_pos = (p - guard.offset()) as usize;
        let bound = if pos < guard_pos {
            continue;
        } else if pos == guard_pos {
            guard_pos as u32
        } else if pos == extent - 1 {
            let line = |k: usize| match cond.axis {
                Axis::Horizontal => g.get(k, j),
                Axis::Vertical => g.get(i, k),
            };
            let k = (0..extent)
                .find(|&k| line(k) != cond.tile)
                .unwrap_or(extent);
            if checked {
                assert!(
                    k <= guard_pos,
                    "seam schedule: monochrome prefix of {k} reached the last cell for bound {p}"
                );
            }
            p.saturating_sub(k as u32)
        } else {
            p
        };
        out.push(EffectiveCondition {
            tile: cond.tile,
            axis: cond.axis,
            bound,
        });
    }
    out
}

/// First scheduled condition violated at a cell, runs read plainly.
fn violates_scheduled(
    g: &Tiling,
    cell: Cell,
    set: &ConditionSet,
    guard: SeamGuard,
    checked: bool,
) -> Option<EffectiveCondition> {
    let (i, j) = cell;
    schedule_at(g, cell, set, guard, checked)
        .into_iter()
        .find(|e| {
            if g.get(i, j) != e.tile {
                return false;
            }
            let b = e.bound as isize;
            match e.axis {
                Axis::Horizontal => {
                    (1..=b).all(|k| g.get_signed(i as isize - k, j as isize) == Some(e.tile))
                }
                Axis::Vertical => {
                    (1..=b).all(|k| g.get_signed(i as isize, j as isize - k) == Some(e.tile))
                }
            }
        })
}

/// Condition shape driving the seam-aware visit order of the bound-2 sweep.
#[derive(Debug, Clone, Copy)]
struct SeamShape {
    h_tile: Tile,
    h_bound: u32,
    v_bound: u32,
}

/// Weight-ordered repair sweep against the scheduled conditions.
///
/// A surgery rewrites its row-above and column-left neighbours, and a
/// bound-1 seam check (possible only under bound-2 conditions) reads exactly
/// the two last cells of its line, so a surgery can silently re-violate an
/// equal-weight cell that was already visited. Both hazards live inside one
/// diagonal: the last-row check at `(i, n-1)` reads `(i, n-2)`, written by a
/// surgery at `(i+1, n-2)`, and the last-column check at `(m-1, j)` reads
/// `(m-2, j)`, written by a surgery at `(m-2, j+1)`. Increasing `i` puts the
/// column-side writer before its check; for bound-2 vertical conditions the
/// diagonal is rotated so the last-row cell comes after its writer too. In
/// the corner diagonal `(m-2, n-1)`, `(m-1, n-2)` the two orders conflict,
/// but the border anchor `g(m-2,0) = g(0,n-2)` makes the hazards mutually
/// exclusive: the row hazard needs a v-tile anchor, the column hazard an
/// h-tile anchor, so the anchor value picks the safe order.
fn scheduled_sweep(
    f: &Tiling,
    set: &ConditionSet,
    guard: SeamGuard,
    checked: bool,
    seam_shape: Option<SeamShape>,
) -> (Tiling, DappleTrace) {
    let mut g = f.clone();
    let mut trace = DappleTrace::default();
    let (m, n) = (g.m(), g.n());
    for w in 0..=(m + n - 2) {
        let lo = w.saturating_sub(n - 1);
        let hi = w.min(m - 1);
        let mut order: Vec<usize> = (lo..=hi).collect();
        if let Some(shape) = seam_shape {
            if shape.v_bound == 2 && w >= n - 1 && hi > lo {
                let anchored_on_h =
                    w == m + n - 3 && shape.h_bound == 2 && g.get(m - 2, 0) == shape.h_tile;
                if !anchored_on_h {
                    order.rotate_left(1);
                }
            }
        }
        for i in order {
            let j = w - i;
            if violates_scheduled(&g, (i, j), set, guard, checked).is_none() {
                continue;
            }
            let flipped = 1 - g.get(i, j);
            g.set(i, j, flipped);
            let action = if violates_scheduled(&g, (i, j), set, guard, checked).is_none() {
                RepairAction::Flip { tile: flipped }
            } else {
                assert!(
                    i >= 1 && j >= 1,
                    "internal error: corner overwrite reached at border cell ({i},{j})"
                );
                let diagonal = g.get(i - 1, j - 1);
                g.set(i, j, diagonal);
                g.set(i - 1, j, 1 - diagonal);
                g.set(i, j - 1, 1 - diagonal);
                RepairAction::Surgery { diagonal }
            };
            trace.steps.push(TraceStep {
                cell: (i, j),
                action,
            });
        }
    }
    (g, trace)
}

fn validate_two_tile(f: &Tiling, set: &ConditionSet) -> Result<()> {
    if !set.is_cyclic() {
        return Err(Error::InvalidConditions(
            "plain condition set passed to the cyclic repair sweep".into(),
        ));
    }
    if f.tile_span() > 2 {
        return Err(Error::InvalidInput(
            "cyclic repair works on two-tile tilings only".into(),
        ));
    }
    if set.conditions().iter().any(|c| c.tile > 1) {
        return Err(Error::InvalidConditions(
            "cyclic repair works on a two-tile alphabet only".into(),
        ));
    }
    Ok(())
}

/// Reject bounds longer than the grid period: a wrapped run is only defined
/// within one revolution.
fn validate_extents(f: &Tiling, set: &ConditionSet) -> Result<()> {
    for cond in set.conditions() {
        if let Bound::Finite(p) = cond.bound {
            let extent = match cond.axis {
                Axis::Horizontal => f.m(),
                Axis::Vertical => f.n(),
            };
            if extent < p as usize + 1 {
                return Err(Error::InvalidShape(format!(
                    "bound {p} on axis {} needs an extent of at least {}, got {extent}",
                    cond.axis,
                    p + 1
                )));
            }
        }
    }
    Ok(())
}

/// The two-condition shape the bound-2 variant accepts: one horizontal and
/// one vertical finite condition on the two different tiles.
fn two_condition_shape(set: &ConditionSet) -> Option<(Tile, u32, Tile, u32)> {
    let live: Vec<_> = set
        .conditions()
        .iter()
        .filter(|c| !c.is_vacuous())
        .collect();
    match live.as_slice() {
        [h, v]
            if h.axis == Axis::Horizontal
                && v.axis == Axis::Vertical
                && h.tile != v.tile
                && h.tile <= 1
                && v.tile <= 1 =>
        {
            Some((
                h.tile,
                h.bound.finite().expect("non-vacuous scalar bound"),
                v.tile,
                v.bound.finite().expect("non-vacuous scalar bound"),
            ))
        }
        _ => None,
    }
}

/// Repair a two-tile tiling into a cyclically dappled one.
///
/// All finite bounds must be at least 3. Sets containing a bound of 2 are
/// routed to [`dapple_cyclic_p2`] when they have the two-condition shape it
/// supports, and rejected otherwise.
pub fn dapple_cyclic(f: &Tiling, set: &ConditionSet) -> Result<(Tiling, DappleTrace)> {
    validate_two_tile(f, set)?;
    let min = set.min_finite_bound();
    match min {
        Some(b) if b < 2 => Err(Error::InvalidConditions(format!(
            "bound {b}: cyclic repairs need every bound to be at least 2"
        ))),
        Some(2) => {
            if two_condition_shape(set).is_some() {
                dapple_cyclic_p2(f, set)
            } else {
                Err(Error::InvalidConditions(
                    "bounds of 2 are only repairable for exactly one horizontal and one \
                     vertical condition on different tiles"
                        .into(),
                ))
            }
        }
        _ => {
            validate_extents(f, set)?;
            let (g, trace) = scheduled_sweep(f, set, SeamGuard::Early, true, None);
            debug_assert!(is_cyclically_dappled(&g, set));
            Ok((g, trace))
        }
    }
}

/// True when the first two rows and columns form a draughtboard border:
/// row 0 disagrees with row 1 cell-wise, column 0 with column 1, cells
/// `(2k, 0)` and `(2k+1, 0)` disagree along the top, `(0, 2l)` and
/// `(0, 2l+1)` down the left, and the anchor cells `(m-2, 0)` and
/// `(0, n-2)` agree.
pub fn border_is_draughtboard(f: &Tiling) -> bool {
    let (m, n) = (f.m(), f.n());
    if m < 4 || n < 4 {
        return false;
    }
    (0..m).all(|i| f.get(i, 0) != f.get(i, 1))
        && (0..n).all(|j| f.get(0, j) != f.get(1, j))
        && (0..m / 2).all(|k| f.get(2 * k, 0) != f.get(2 * k + 1, 0))
        && (0..n / 2).all(|l| f.get(0, 2 * l) != f.get(0, 2 * l + 1))
        && f.get(m - 2, 0) == f.get(0, n - 2)
}

/// Rewrite the first two rows and columns into a draughtboard border with a
/// fixed scan: anchor cells first, then rows 0 and 1 left to right, then
/// columns 0 and 1 top to bottom, flipping the later cell of each
/// disagreeing pair.
fn draughtboard_border_pass(g: &mut Tiling, trace: &mut DappleTrace) {
    let (m, n) = (g.m(), g.n());
    let flip = |g: &mut Tiling, i: usize, j: usize, trace: &mut DappleTrace| {
        let tile = 1 - g.get(i, j);
        g.set(i, j, tile);
        trace.steps.push(TraceStep {
            cell: (i, j),
            action: RepairAction::Flip { tile },
        });
    };
    // Anchors are free cells (even coordinates, never rewritten below), so
    // aligning them first survives the pair scan.
    if g.get(m - 2, 0) != g.get(0, n - 2) {
        flip(g, 0, n - 2, trace);
    }
    for k in 0..m / 2 {
        if g.get(2 * k + 1, 0) == g.get(2 * k, 0) {
            flip(g, 2 * k + 1, 0, trace);
        }
    }
    for i in 0..m {
        if g.get(i, 1) == g.get(i, 0) {
            flip(g, i, 1, trace);
        }
    }
    for l in 0..n / 2 {
        if g.get(0, 2 * l + 1) == g.get(0, 2 * l) {
            flip(g, 0, 2 * l + 1, trace);
        }
    }
    for j in 0..n {
        if g.get(1, j) == g.get(0, j) {
            flip(g, 1, j, trace);
        }
    }
    debug_assert!(border_is_draughtboard(g));
}

/// Repair under exactly one horizontal and one vertical cyclic condition on
/// the two tiles, with bounds as small as 2.
///
/// The first two rows and columns are first rewritten into a draughtboard
/// border; the border pins every line's monochrome prefix below 2, which
/// lets the sweep run with the late seam guard. Grid extents must be even
/// and at least 4: the border pattern only closes up cyclically on even
/// periods.
pub fn dapple_cyclic_p2(f: &Tiling, set: &ConditionSet) -> Result<(Tiling, DappleTrace)> {
    validate_two_tile(f, set)?;
    let Some((h_tile, p, _, q)) = two_condition_shape(set) else {
        return Err(Error::InvalidConditions(
            "the bound-2 cyclic repair needs exactly one horizontal and one vertical \
             condition on different tiles"
                .into(),
        ));
    };
    if p < 2 || q < 2 {
        return Err(Error::InvalidConditions(format!(
            "bounds {p} and {q}: cyclic repairs need every bound to be at least 2"
        )));
    }
    let (m, n) = (f.m(), f.n());
    if m < 4 || n < 4 || m % 2 != 0 || n % 2 != 0 {
        return Err(Error::InvalidShape(format!(
            "the bound-2 cyclic repair needs even extents of at least 4, got {m}x{n}"
        )));
    }
    validate_extents(f, set)?;
    let mut g = f.clone();
    let mut trace = DappleTrace::default();
    draughtboard_border_pass(&mut g, &mut trace);
    let shape = SeamShape {
        h_tile,
        h_bound: p,
        v_bound: q,
    };
    let (g, sweep_trace) = scheduled_sweep(&g, set, SeamGuard::Late, true, Some(shape));
    trace.steps.extend(sweep_trace.steps);
    debug_assert!(is_cyclically_dappled(&g, set));
    debug_assert!(border_is_draughtboard(&g));
    Ok((g, trace))
}

/// Demonstration of why the late seam guard needs the draughtboard border.
#[cfg(feature = "naive-cyclic")]
pub mod naive {
    use super::*;
    use crate::grid::weight;

    /// One repair of the naive sweep and the already-visited cells it broke.
    #[derive(Debug, Clone)]
    pub struct NaiveRepair {
        pub cell: Cell,
        pub action: RepairAction,
        /// Tiling immediately after this repair.
        pub after: Tiling,
        /// Cells of weight at most `weight(cell)` whose scheduled check
        /// fails after this repair but passed before it. The sweep never
        /// revisits them, so these violations survive to the output.
        pub introduced: Vec<(Cell, EffectiveCondition)>,
    }

    /// Outcome of running the seam-guarded sweep with the guard shifted
    /// late but no draughtboard border.
    #[derive(Debug, Clone)]
    pub struct NaiveOutcome {
        pub final_tiling: Tiling,
        pub repairs: Vec<NaiveRepair>,
        /// Cyclic violations remaining in the output.
        pub residual: Vec<ViolationReport>,
    }

    /// Run the unsound variant and report where it breaks. Intended for
    /// tests and diagnostics only.
    pub fn demonstrate_naive_failure(f: &Tiling, set: &ConditionSet) -> Result<NaiveOutcome> {
        validate_two_tile(f, set)?;
        if set.min_finite_bound().is_some_and(|b| b < 2) {
            return Err(Error::InvalidConditions(
                "cyclic repairs need every bound to be at least 2".into(),
            ));
        }
        validate_extents(f, set)?;
        let mut g = f.clone();
        let mut repairs = Vec::new();
        let (m, n) = (g.m(), g.n());
        for w in 0..=(m + n - 2) {
            let lo = w.saturating_sub(n - 1);
            let hi = w.min(m - 1);
            for i in lo..=hi {
                let j = w - i;
                if violates_scheduled(&g, (i, j), set, SeamGuard::Late, false).is_none() {
                    continue;
                }
                let before = g.clone();
                let flipped = 1 - g.get(i, j);
                g.set(i, j, flipped);
                let action =
                    if violates_scheduled(&g, (i, j), set, SeamGuard::Late, false).is_none() {
                        RepairAction::Flip { tile: flipped }
                    } else if i >= 1 && j >= 1 {
                        let diagonal = g.get(i - 1, j - 1);
                        g.set(i, j, diagonal);
                        g.set(i - 1, j, 1 - diagonal);
                        g.set(i, j - 1, 1 - diagonal);
                        RepairAction::Surgery { diagonal }
                    } else {
                        // Keep the failed flip; this variant is allowed to
                        // end badly, that is its purpose.
                        RepairAction::Flip { tile: flipped }
                    };
                let introduced = visited_regressions(&before, &g, (i, j), set);
                repairs.push(NaiveRepair {
                    cell: (i, j),
                    action,
                    after: g.clone(),
                    introduced,
                });
            }
        }
        let residual = cyclic_violations(&g, set);
        Ok(NaiveOutcome {
            final_tiling: g,
            repairs,
            residual,
        })
    }

    fn visited_regressions(
        before: &Tiling,
        after: &Tiling,
        cell: Cell,
        set: &ConditionSet,
    ) -> Vec<(Cell, EffectiveCondition)> {
        let mut out = Vec::new();
        for j in 0..after.n() {
            for i in 0..after.m() {
                if (i, j) == cell || weight((i, j)) > weight(cell) {
                    continue;
                }
                let now = violates_scheduled(after, (i, j), set, SeamGuard::Late, false);
                let was = violates_scheduled(before, (i, j), set, SeamGuard::Late, false);
                if let (Some(e), None) = (now, was) {
                    out.push(((i, j), e));
                }
            }
        }
        out
    }
}
