//! Grid, tile alphabet, and tiling data model.
//!
//! A tiling assigns one tile to every cell of an `m` by `n` grid. Cell
//! `(i, j)` sits in column `i` and row `j`; `(0, 0)` is the top-left corner.
//! Storage is row-major.

use std::fmt::Write as _;

use rand::Rng;

use crate::{Error, Result};

/// Tile index into a [`TileSet`].
pub type Tile = u8;

/// Grid coordinate `(column, row)`.
pub type Cell = (usize, usize);

/// Sum of a cell's coordinates; the repair sweep visits cells in this order.
pub fn weight(cell: Cell) -> usize {
    cell.0 + cell.1
}

/// Ordered alphabet of tile symbols. Tiles are referenced by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSet {
    symbols: Vec<String>,
}

impl TileSet {
    /// Alphabet from distinct symbols, in the given order.
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "tile alphabet needs at least 2 symbols, got {}",
                symbols.len()
            )));
        }
        if symbols.len() > usize::from(Tile::MAX) + 1 {
            return Err(Error::InvalidInput(format!(
                "tile alphabet larger than {} symbols is not supported",
                usize::from(Tile::MAX) + 1
            )));
        }
        for (k, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidInput(format!(
                    "tile symbol {k:?} must be non-empty and free of whitespace"
                )));
            }
            if symbols[..k].contains(s) {
                return Err(Error::InvalidInput(format!("duplicate tile symbol {s:?}")));
            }
        }
        Ok(Self { symbols })
    }

    /// The canonical two-tile alphabet `{"0", "1"}`.
    pub fn binary() -> Self {
        Self::new(["0", "1"]).expect("binary alphabet is valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbol(&self, tile: Tile) -> Option<&str> {
        self.symbols.get(usize::from(tile)).map(String::as_str)
    }

    pub fn index_of(&self, symbol: &str) -> Option<Tile> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|k| k as Tile)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }
}

/// Assignment of one tile per grid cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tiling {
    m: usize,
    n: usize,
    cells: Vec<Tile>,
}

impl Tiling {
    /// Tiling from row-major cell values.
    pub fn new(m: usize, n: usize, cells: Vec<Tile>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(format!("grid extent {m}x{n} is empty")));
        }
        if cells.len() != m * n {
            return Err(Error::InvalidInput(format!(
                "expected {} cells for a {m}x{n} grid, got {}",
                m * n,
                cells.len()
            )));
        }
        Ok(Self { m, n, cells })
    }

    /// Tiling filled with a single tile.
    pub fn filled(m: usize, n: usize, tile: Tile) -> Result<Self> {
        Self::new(m, n, vec![tile; m * n])
    }

    /// Tiling from rows of tile values; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Tile>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        Self::new(m, n, rows.concat())
    }

    /// Uniformly random tiling over the alphabet, deterministic in `seed`.
    pub fn random(m: usize, n: usize, tiles: &TileSet, seed: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(format!("grid extent {m}x{n} is empty")));
        }
        let mut rng = crate::rng::seeded_rng(seed);
        let cells = (0..m * n)
            .map(|_| rng.random_range(0..tiles.len()) as Tile)
            .collect();
        Self::new(m, n, cells)
    }

    /// Columns.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Rows.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Tile] {
        &self.cells
    }

    /// Tile at `(i, j)`.
    ///
    /// # Panics
    /// Panics if the cell is outside the grid.
    pub fn get(&self, i: usize, j: usize) -> Tile {
        assert!(
            i < self.m && j < self.n,
            "cell ({i},{j}) outside {}x{} grid",
            self.m,
            self.n
        );
        self.cells[j * self.m + i]
    }

    /// Tile at signed coordinates; `None` for any out-of-grid index, so a
    /// run check that walks past the boundary never finds a match there.
    pub fn get_signed(&self, i: isize, j: isize) -> Option<Tile> {
        if i < 0 || j < 0 || i as usize >= self.m || j as usize >= self.n {
            None
        } else {
            Some(self.cells[j as usize * self.m + i as usize])
        }
    }

    /// Tile at coordinates reduced modulo the grid extents.
    pub fn get_wrapped(&self, i: isize, j: isize) -> Tile {
        let i = i.rem_euclid(self.m as isize) as usize;
        let j = j.rem_euclid(self.n as isize) as usize;
        self.cells[j * self.m + i]
    }

    pub fn set(&mut self, i: usize, j: usize, tile: Tile) {
        assert!(
            i < self.m && j < self.n,
            "cell ({i},{j}) outside {}x{} grid",
            self.m,
            self.n
        );
        self.cells[j * self.m + i] = tile;
    }

    /// Largest tile index present plus one; lower bound on the alphabet size.
    pub fn tile_span(&self) -> usize {
        self.cells
            .iter()
            .copied()
            .max()
            .map_or(0, |t| usize::from(t) + 1)
    }

    /// Cells in row-major order with their coordinates.
    pub fn enumerate(&self) -> impl Iterator<Item = (Cell, Tile)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, &t)| (((k % self.m), (k / self.m)), t))
    }

    /// `k` by `l` periodic repetition of this tiling.
    pub fn repeat(&self, k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidInput(
                "repetition factors must be positive".into(),
            ));
        }
        let (m, n) = (self.m * k, self.n * l);
        let mut cells = Vec::with_capacity(m * n);
        for j in 0..n {
            for i in 0..m {
                cells.push(self.get(i % self.m, j % self.n));
            }
        }
        Self::new(m, n, cells)
    }

    /// Render in the text format: a `m n` header line, then one line per row
    /// of whitespace-separated tile symbols.
    ///
    /// # Panics
    /// Panics if a cell indexes outside the alphabet.
    pub fn to_text(&self, tiles: &TileSet) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.m, self.n);
        for j in 0..self.n {
            let row: Vec<&str> = (0..self.m)
                .map(|i| tiles.symbol(self.get(i, j)).expect("tile in alphabet"))
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Parse the text format against a known alphabet.
    pub fn parse_with(text: &str, tiles: &TileSet) -> Result<Self> {
        let (m, n, rows) = split_text(text)?;
        let mut cells = Vec::with_capacity(m * n);
        for row in rows {
            for sym in row {
                let tile = tiles
                    .index_of(sym)
                    .ok_or_else(|| Error::Parse(format!("symbol {sym:?} not in tile alphabet")))?;
                cells.push(tile);
            }
        }
        Self::new(m, n, cells)
    }

    /// Parse the text format, inferring the alphabet as the distinct symbols
    /// of the file in lexicographic order.
    pub fn parse(text: &str) -> Result<(TileSet, Self)> {
        let (_, _, rows) = split_text(text)?;
        let mut symbols: Vec<&str> = rows.iter().flatten().copied().collect();
        symbols.sort_unstable();
        symbols.dedup();
        let tiles = if symbols.len() == 1 {
            // A constant tiling still needs a two-symbol alphabet.
            let only = symbols[0];
            let other = if only == "0" { "1" } else { "0" };
            TileSet::new([only, other])?
        } else {
            TileSet::new(symbols)?
        };
        let tiling = Self::parse_with(text, &tiles)?;
        Ok((tiles, tiling))
    }
}

/// Split the text format into header extents and row symbol lists.
/// Lines starting with `#` are comments.
fn split_text(text: &str) -> Result<(usize, usize, Vec<Vec<&str>>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty tiling file".into()))?;
    let mut parts = header.split_whitespace();
    let m: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad header line {header:?}")))?;
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad header line {header:?}")))?;
    if parts.next().is_some() {
        return Err(Error::Parse(format!("bad header line {header:?}")));
    }
    if m == 0 || n == 0 {
        return Err(Error::Parse(format!("empty grid extent {m}x{n}")));
    }
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split_whitespace().collect()).collect();
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} rows, got {}",
            rows.len()
        )));
    }
    for (j, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(Error::Parse(format!(
                "row {j} has {} symbols, expected {m}",
                row.len()
            )));
        }
    }
    Ok((m, n, rows))
}
