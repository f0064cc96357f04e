//! Brick Wang tilings derived from two-tile tilings.
//!
//! A brick Wang tile is an edge-colored unit square `(c1, c2, c3, c4)`
//! (left, top, right, bottom) in which exactly one of the two opposite
//! pairs agrees: `c1 = c3` (a horizontal brick course) or `c2 = c4` (a
//! vertical one). A valid tiling makes every shared edge agree in color;
//! the outer boundary is free. Reading each tile's orientation recovers a
//! two-tile tiling, and conversely any two-tile tiling lifts to a valid
//! brick Wang tiling by scanning row-major and inheriting the left and top
//! colors from the already-placed neighbours.

use crate::grid::{Cell, Tile, Tiling};
use crate::rng::GENERATOR_ID;
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Edge color; files index colors `0..C`.
pub type EdgeColor = u16;

/// Edge-colored square. Not every value is a brick Wang tile; see
/// [`BrickWangTile::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BrickWangTile {
    /// Left, top, right, bottom.
    pub edges: [EdgeColor; 4],
}

impl BrickWangTile {
    pub fn new(edges: [EdgeColor; 4]) -> Self {
        Self { edges }
    }

    pub fn left(&self) -> EdgeColor {
        self.edges[0]
    }

    pub fn top(&self) -> EdgeColor {
        self.edges[1]
    }

    pub fn right(&self) -> EdgeColor {
        self.edges[2]
    }

    pub fn bottom(&self) -> EdgeColor {
        self.edges[3]
    }

    /// Tile orientation: 0 when the horizontal pair agrees, 1 when the
    /// vertical pair does. Errors when neither or both agree.
    pub fn classify(&self) -> Result<Tile> {
        let [c1, c2, c3, c4] = self.edges;
        match (c1 == c3, c2 == c4) {
            (true, false) => Ok(0),
            (false, true) => Ok(1),
            _ => Err(Error::NotInWang { edges: self.edges }),
        }
    }
}

/// Row-major grid of edge-colored squares over colors `0..colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WangTiling {
    m: usize,
    n: usize,
    colors: EdgeColor,
    tiles: Vec<BrickWangTile>,
    /// Seed the tiling was generated from, when it was generated.
    seed: Option<u64>,
}

/// Wire format; `C` is the color count.
#[derive(Serialize, Deserialize)]
struct WangFile {
    m: usize,
    n: usize,
    #[serde(rename = "C")]
    colors: EdgeColor,
    tiles: Vec<[EdgeColor; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rng: Option<String>,
}

impl WangTiling {
    pub fn new(m: usize, n: usize, colors: EdgeColor, tiles: Vec<BrickWangTile>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidShape(format!("grid extent {m}x{n} is empty")));
        }
        if colors < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 edge colors, got {colors}"
            )));
        }
        if tiles.len() != m * n {
            return Err(Error::InvalidInput(format!(
                "expected {} tiles for a {m}x{n} grid, got {}",
                m * n,
                tiles.len()
            )));
        }
        if let Some(t) = tiles.iter().find(|t| t.edges.iter().any(|&c| c >= colors)) {
            return Err(Error::InvalidWang(format!(
                "edge colors {:?} out of range for {colors} colors",
                t.edges
            )));
        }
        Ok(Self {
            m,
            n,
            colors,
            tiles,
            seed: None,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> EdgeColor {
        self.colors
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn get(&self, i: usize, j: usize) -> BrickWangTile {
        assert!(
            i < self.m && j < self.n,
            "tile ({i},{j}) outside {}x{} grid",
            self.m,
            self.n
        );
        self.tiles[j * self.m + i]
    }

    pub fn tiles(&self) -> &[BrickWangTile] {
        &self.tiles
    }

    /// Orientation of every tile as a two-tile tiling.
    pub fn to_dappled(&self) -> Result<Tiling> {
        let cells = self
            .tiles
            .iter()
            .map(BrickWangTile::classify)
            .collect::<Result<Vec<_>>>()?;
        Tiling::new(self.m, self.n, cells)
    }

    pub fn to_json(&self) -> String {
        let file = WangFile {
            m: self.m,
            n: self.n,
            colors: self.colors,
            tiles: self.tiles.iter().map(|t| t.edges).collect(),
            seed: self.seed,
            rng: self.seed.map(|_| GENERATOR_ID.to_string()),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("serializable wire struct");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: WangFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("wang json: {e}")))?;
        let tiles = file.tiles.into_iter().map(BrickWangTile::new).collect();
        let mut tiling = Self::new(file.m, file.n, file.colors, tiles)?;
        tiling.seed = file.seed;
        Ok(tiling)
    }
}

/// One disagreeing shared edge between two adjacent tiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjacencyFault {
    /// The cell whose right (or bottom) edge disagrees.
    pub cell: Cell,
    /// Its right or lower neighbour.
    pub neighbour: Cell,
    pub colors: (EdgeColor, EdgeColor),
}

/// Validation outcome: which tiles are outside the brick set and which
/// shared edges disagree.
#[derive(Debug, Clone, Default)]
pub struct WangReport {
    pub tile_faults: Vec<(Cell, [EdgeColor; 4])>,
    pub adjacency_faults: Vec<AdjacencyFault>,
}

impl WangReport {
    pub fn is_valid(&self) -> bool {
        self.tile_faults.is_empty() && self.adjacency_faults.is_empty()
    }
}

/// Check every tile for brick membership and every shared edge for color
/// agreement.
pub fn validate_wang(w: &WangTiling) -> WangReport {
    let mut report = WangReport::default();
    for j in 0..w.n() {
        for i in 0..w.m() {
            let tile = w.get(i, j);
            if tile.classify().is_err() {
                report.tile_faults.push(((i, j), tile.edges));
            }
            if i + 1 < w.m() {
                let right = w.get(i + 1, j);
                if tile.right() != right.left() {
                    report.adjacency_faults.push(AdjacencyFault {
                        cell: (i, j),
                        neighbour: (i + 1, j),
                        colors: (tile.right(), right.left()),
                    });
                }
            }
            if j + 1 < w.n() {
                let below = w.get(i, j + 1);
                if tile.bottom() != below.top() {
                    report.adjacency_faults.push(AdjacencyFault {
                        cell: (i, j),
                        neighbour: (i, j + 1),
                        colors: (tile.bottom(), below.top()),
                    });
                }
            }
        }
    }
    report
}

pub fn is_valid_wang(w: &WangTiling) -> bool {
    validate_wang(w).is_valid()
}

/// Lift a two-tile tiling to a valid brick Wang tiling.
///
/// Cells are visited row-major. Each cell inherits its left color from the
/// left neighbour's right edge and its top color from the upper
/// neighbour's bottom edge (boundary colors are drawn uniformly). A cell
/// carrying tile 0 copies the left color across and draws a bottom color
/// differing from the top; tile 1 mirrors this. Draw order is fixed, so
/// the output is a pure function of the tiling, the color count and the
/// seed.
pub fn wang_from_dappled(f: &Tiling, colors: EdgeColor, seed: u64) -> Result<WangTiling> {
    if colors < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 edge colors, got {colors}"
        )));
    }
    if f.tile_span() > 2 {
        return Err(Error::InvalidInput(
            "brick Wang derivation works on two-tile tilings only".into(),
        ));
    }
    let (m, n) = (f.m(), f.n());
    let mut rng = crate::rng::seeded_rng(seed);
    let mut tiles: Vec<BrickWangTile> = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            let c1 = if i == 0 {
                rng.random_range(0..colors)
            } else {
                tiles[j * m + i - 1].right()
            };
            let c2 = if j == 0 {
                rng.random_range(0..colors)
            } else {
                tiles[(j - 1) * m + i].bottom()
            };
            let (c3, c4) = if f.get(i, j) == 0 {
                (c1, color_other_than(&mut rng, colors, c2))
            } else {
                (color_other_than(&mut rng, colors, c1), c2)
            };
            tiles.push(BrickWangTile::new([c1, c2, c3, c4]));
        }
    }
    let mut w = WangTiling::new(m, n, colors, tiles)?;
    w.seed = Some(seed);
    Ok(w)
}

/// Uniform color different from `avoid`.
fn color_other_than(rng: &mut impl Rng, colors: EdgeColor, avoid: EdgeColor) -> EdgeColor {
    let r = rng.random_range(0..colors - 1);
    if r >= avoid {
        r + 1
    } else {
        r
    }
}

/// Number of brick Wang tiles with a given left and top color: the right
/// or the bottom edge is forced and the other one ranges over the
/// remaining colors, giving `2(colors - 1)`.
pub fn completion_count(colors: EdgeColor) -> u64 {
    2 * (u64::from(colors) - 1)
}
