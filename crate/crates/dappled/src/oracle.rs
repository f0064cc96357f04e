//! Ground-truth utilities: exhaustive enumeration of dappled tilings and
//! the draughtboard family, a closed-form count of the latter, and a
//! seeded draughtboard generator.
//!
//! These exist to pin down expected values for the repair sweeps: the
//! enumerator is a plain backtracking search with no shared logic beyond
//! the violation checkers, so agreement between the two is meaningful.

use crate::conditions::{Axis, Bound, ConditionSet};
use crate::grid::{Tile, TileSet, Tiling};
use crate::violation::violates;
use crate::{Error, Result};
use rand::Rng;

/// Grids whose assignment space exceeds `2^MAX_SPACE_BITS` are refused
/// unless explicitly allowed.
const MAX_SPACE_BITS: f64 = 36.0;

/// Knobs for [`enumerate_dappled`].
#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    /// Lift the assignment-space size guard.
    pub allow_large: bool,
    /// Keep at most this many tilings in the result; `tilings` becomes
    /// `None` once the count passes it.
    pub materialize_limit: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            allow_large: false,
            materialize_limit: 4096,
        }
    }
}

/// Outcome of an exhaustive enumeration.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    /// Number of dappled tilings of the grid.
    pub count: u64,
    /// The tilings themselves, unless more than the materialize limit.
    pub tilings: Option<Vec<Tiling>>,
    /// Number of 2x2 blocks anchored at even coordinates, boundary blocks
    /// included.
    pub blocks: usize,
    /// Number of fully contained 2x2 blocks.
    pub full_blocks: usize,
}

/// Count of 2x2 blocks anchored at even coordinates, partial ones included.
pub fn block_count(m: usize, n: usize) -> usize {
    m.div_ceil(2) * n.div_ceil(2)
}

/// Count of fully contained 2x2 blocks anchored at even coordinates.
pub fn full_block_count(m: usize, n: usize) -> usize {
    (m / 2) * (n / 2)
}

/// Enumerate every tiling of an `m` by `n` grid over the alphabet that is
/// dappled for `set`, read cyclically when the set is cyclic.
///
/// Conditions on tiles outside the alphabet are vacuous. The search
/// refuses assignment spaces larger than 2^36 unless
/// [`EnumerationOptions::allow_large`] is set.
pub fn enumerate_dappled(
    m: usize,
    n: usize,
    tiles: &TileSet,
    set: &ConditionSet,
    options: &EnumerationOptions,
) -> Result<EnumerationResult> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidShape(format!("grid extent {m}x{n} is empty")));
    }
    let bits = (m * n) as f64 * (tiles.len() as f64).log2();
    if bits > MAX_SPACE_BITS && !options.allow_large {
        return Err(Error::SizeLimit {
            cells: m * n,
            tiles: tiles.len(),
        });
    }
    let mut g = Tiling::filled(m, n, 0)?;
    let mut count = 0u64;
    let mut kept = Some(Vec::new());
    search(
        &mut g,
        0,
        tiles,
        set,
        options.materialize_limit,
        &mut count,
        &mut kept,
    );
    Ok(EnumerationResult {
        count,
        tilings: kept,
        blocks: block_count(m, n),
        full_blocks: full_block_count(m, n),
    })
}

/// Depth-first assignment in row-major order. A prefix is pruned as soon
/// as the newest cell completes a forbidden run; wrapped runs are only
/// checked once the cells they cross are all assigned, which happens when
/// a row or column is completed.
fn search(
    g: &mut Tiling,
    index: usize,
    tiles: &TileSet,
    set: &ConditionSet,
    limit: usize,
    count: &mut u64,
    kept: &mut Option<Vec<Tiling>>,
) {
    let (m, n) = (g.m(), g.n());
    if index == m * n {
        *count += 1;
        if let Some(list) = kept {
            if list.len() < limit {
                list.push(g.clone());
            } else {
                *kept = None;
            }
        }
        return;
    }
    let (i, j) = (index % m, index / m);
    for t in 0..tiles.len() as Tile {
        g.set(i, j, t);
        if violates(g, (i, j), set).is_some() {
            continue;
        }
        if set.is_cyclic() && !seam_admissible(g, (i, j), set) {
            continue;
        }
        search(g, index + 1, tiles, set, limit, count, kept);
    }
}

/// Wrapped-run checks that become decidable when `(i, j)` completes a row
/// or column. Only the completed axis is inspected: runs along the other
/// axis would read cells the search has not assigned yet.
fn seam_admissible(g: &Tiling, (i, j): (usize, usize), set: &ConditionSet) -> bool {
    let (m, n) = (g.m(), g.n());
    if i == m - 1 {
        for cond in set
            .conditions()
            .iter()
            .filter(|c| c.axis == Axis::Horizontal)
        {
            let Bound::Finite(b) = cond.bound else {
                continue;
            };
            for k in 0..(b as usize).min(m) {
                if wrapped_run(g, (k, j), cond.tile, Axis::Horizontal, b) {
                    return false;
                }
            }
        }
    }
    if j == n - 1 {
        for cond in set.conditions().iter().filter(|c| c.axis == Axis::Vertical) {
            let Bound::Finite(b) = cond.bound else {
                continue;
            };
            for l in 0..(b as usize).min(n) {
                if wrapped_run(g, (i, l), cond.tile, Axis::Vertical, b) {
                    return false;
                }
            }
        }
    }
    true
}

fn wrapped_run(g: &Tiling, (i, j): (usize, usize), tile: Tile, axis: Axis, bound: u32) -> bool {
    if g.get(i, j) != tile {
        return false;
    }
    let b = bound as isize;
    match axis {
        Axis::Horizontal => (1..=b).all(|s| g.get_wrapped(i as isize - s, j as isize) == tile),
        Axis::Vertical => (1..=b).all(|s| g.get_wrapped(i as isize, j as isize - s) == tile),
    }
}

/// Seeded random draughtboard: in every 2x2 block anchored at even
/// coordinates the diagonal cells share one tile and each off-diagonal
/// cell gets an independent tile differing from it. Any such tiling has
/// no monochrome run longer than 2, so it is dappled for every condition
/// set with bounds of at least 2, cyclically so on even extents.
pub fn draughtboard(m: usize, n: usize, tiles: &TileSet, seed: u64) -> Result<Tiling> {
    let mut g = Tiling::filled(m, n, 0)?;
    let span = tiles.len() as Tile;
    let mut rng = crate::rng::seeded_rng(seed);
    // Blocks in row-major order; draws in a fixed order per block so the
    // output is a pure function of the seed and the extents.
    for l in 0..n.div_ceil(2) {
        for k in 0..m.div_ceil(2) {
            let (i, j) = (2 * k, 2 * l);
            let t = rng.random_range(0..span);
            g.set(i, j, t);
            if i + 1 < m && j + 1 < n {
                g.set(i + 1, j + 1, t);
            }
            if i + 1 < m {
                g.set(i + 1, j, other_than(&mut rng, span, t));
            }
            if j + 1 < n {
                g.set(i, j + 1, other_than(&mut rng, span, t));
            }
        }
    }
    Ok(g)
}

/// Uniform tile different from `avoid`.
fn other_than(rng: &mut impl Rng, span: Tile, avoid: Tile) -> Tile {
    let r = rng.random_range(0..span - 1);
    if r >= avoid {
        r + 1
    } else {
        r
    }
}

/// Number of draughtboards of an `m` by `n` grid over the alphabet.
///
/// A tiling is a draughtboard when every 2x2 block anchored at even
/// coordinates can be completed (where the grid cuts it off) to a block
/// whose off-diagonal cells differ from both diagonal cells. Blocks are
/// disjoint, so the count is a product of per-block factors:
///
/// - full block: `T(T-1)^2` with equal diagonals plus `T(T-1)(T-2)^2`
///   with distinct diagonals;
/// - two cells of a block present: `T(T-1)`;
/// - lone corner cell: `T`.
///
/// The count is at least `T^blocks`, one factor per (partial) block.
pub fn count_draughtboards(m: usize, n: usize, tiles: &TileSet) -> Result<u128> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidShape(format!("grid extent {m}x{n} is empty")));
    }
    let t = tiles.len() as u128;
    let distinct = t.saturating_sub(2);
    let full = t * (t - 1) * (t - 1) + t * (t - 1) * distinct * distinct;
    let pair = t * (t - 1);
    let mut total = 1u128;
    for l in 0..n.div_ceil(2) {
        for k in 0..m.div_ceil(2) {
            let wide = 2 * k + 1 < m;
            let tall = 2 * l + 1 < n;
            let factor = match (wide, tall) {
                (true, true) => full,
                (false, false) => t,
                _ => pair,
            };
            total = total.checked_mul(factor).ok_or(Error::SizeLimit {
                cells: m * n,
                tiles: tiles.len(),
            })?;
        }
    }
    Ok(total)
}
