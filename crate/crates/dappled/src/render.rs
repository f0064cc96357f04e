//! SVG and PPM rendering for tilings and brick Wang tilings.
//!
//! Tilings render as one filled square per cell, colored through a
//! user-supplied palette keyed by tile symbol. Brick Wang tilings render
//! as a brick wall: each tile draws mortar joints whose positions encode
//! its edge colors, color `c` of `C` sitting at fraction `(c+1)/(C+1)`
//! across the tile. Because adjacent tiles agree on their shared edge
//! color, joints continue seamlessly across tile boundaries.
//!
//! All output is assembled by deterministic string building: the same
//! input always renders to the same bytes.

use crate::grid::{TileSet, Tiling};
use crate::wang::{BrickWangTile, WangTiling};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Side of one rendered cell in SVG user units and PPM pixels.
pub const CELL_UNITS: usize = 32;

/// Tile symbol to color mapping.
#[derive(Debug, Clone, Default)]
pub struct Palette {
    colors: BTreeMap<String, String>,
}

impl Palette {
    pub fn new(colors: BTreeMap<String, String>) -> Self {
        Self { colors }
    }

    /// Parse a JSON object of `{"symbol": "color"}` pairs.
    pub fn parse(text: &str) -> Result<Self> {
        let colors: BTreeMap<String, String> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("palette json: {e}")))?;
        if let Some((symbol, _)) = colors.iter().find(|(_, c)| c.trim().is_empty()) {
            return Err(Error::Parse(format!(
                "palette: empty color for symbol {symbol:?}"
            )));
        }
        Ok(Self { colors })
    }

    pub fn color_for(&self, symbol: &str) -> Option<&str> {
        self.colors.get(symbol).map(String::as_str)
    }

    /// The palette keys must be exactly the tile alphabet.
    pub fn validate_for(&self, tiles: &TileSet) -> Result<()> {
        let missing: Vec<&str> = tiles
            .symbols()
            .filter(|s| !self.colors.contains_key(*s))
            .collect();
        let extra: Vec<&str> = self
            .colors
            .keys()
            .map(String::as_str)
            .filter(|k| tiles.index_of(k).is_none())
            .collect();
        if missing.is_empty() && extra.is_empty() {
            Ok(())
        } else {
            Err(Error::PaletteMismatch(format!(
                "missing symbols {missing:?}, unknown symbols {extra:?}"
            )))
        }
    }
}

fn svg_open(out: &mut String, m: usize, n: usize) {
    let (w, h) = (m * CELL_UNITS, n * CELL_UNITS);
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">"
    )
    .expect("string write");
    writeln!(out, "<!-- dappled m={m} n={n} -->").expect("string write");
}

/// Render a tiling as one colored square per cell.
pub fn render_tiling_svg(f: &Tiling, tiles: &TileSet, palette: &Palette) -> Result<String> {
    if f.tile_span() > tiles.len() {
        return Err(Error::InvalidInput(format!(
            "tiling uses {} tiles but the alphabet has {}",
            f.tile_span(),
            tiles.len()
        )));
    }
    palette.validate_for(tiles)?;
    let mut out = String::new();
    svg_open(&mut out, f.m(), f.n());
    for ((i, j), t) in f.enumerate() {
        let symbol = tiles.symbol(t).expect("span checked against alphabet");
        let color = palette.color_for(symbol).expect("palette validated");
        writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{CELL_UNITS}\" height=\"{CELL_UNITS}\" fill=\"{color}\"/>",
            i * CELL_UNITS,
            j * CELL_UNITS,
        )
        .expect("string write");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Parse `#rrggbb` into RGB bytes.
fn hex_color(color: &str) -> Result<[u8; 3]> {
    let hex = color
        .strip_prefix('#')
        .filter(|h| h.len() == 6 && h.chars().all(|c| c.is_ascii_hexdigit()))
        .ok_or_else(|| Error::Parse(format!("color {color:?} is not #rrggbb")))?;
    let byte = |k: usize| u8::from_str_radix(&hex[2 * k..2 * k + 2], 16).expect("hex digits");
    Ok([byte(0), byte(1), byte(2)])
}

/// Render a tiling as a binary PPM (P6) image, one 32x32 block per cell.
/// Palette colors must be in `#rrggbb` form.
pub fn render_tiling_ppm(f: &Tiling, tiles: &TileSet, palette: &Palette) -> Result<Vec<u8>> {
    if f.tile_span() > tiles.len() {
        return Err(Error::InvalidInput(format!(
            "tiling uses {} tiles but the alphabet has {}",
            f.tile_span(),
            tiles.len()
        )));
    }
    palette.validate_for(tiles)?;
    let rgb = tiles
        .symbols()
        .map(|s| hex_color(palette.color_for(s).expect("palette validated")))
        .collect::<Result<Vec<_>>>()?;
    let (w, h) = (f.m() * CELL_UNITS, f.n() * CELL_UNITS);
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.reserve(w * h * 3);
    for py in 0..h {
        for px in 0..w {
            let color = rgb[f.get(px / CELL_UNITS, py / CELL_UNITS) as usize];
            out.extend_from_slice(&color);
        }
    }
    Ok(out)
}

/// Mortar joint in cell coordinates (one cell spans one unit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub from: (f64, f64),
    pub to: (f64, f64),
}

/// Position of color `c` across a tile edge.
fn edge_fraction(c: u16, colors: u16) -> f64 {
    (f64::from(c) + 1.0) / (f64::from(colors) + 1.0)
}

fn tile_segments(tile: BrickWangTile, colors: u16, i: usize, j: usize) -> Result<[Segment; 3]> {
    let (x, y) = (i as f64, j as f64);
    let [c1, c2, c3, c4] = tile.edges;
    let f = |c| edge_fraction(c, colors);
    Ok(match tile.classify()? {
        0 => {
            // Horizontal course: a bed joint all the way across, with head
            // joints above and below it.
            let bed = y + f(c1);
            [
                Segment {
                    from: (x, bed),
                    to: (x + 1.0, bed),
                },
                Segment {
                    from: (x + f(c2), y),
                    to: (x + f(c2), bed),
                },
                Segment {
                    from: (x + f(c4), bed),
                    to: (x + f(c4), y + 1.0),
                },
            ]
        }
        _ => {
            let bed = x + f(c2);
            [
                Segment {
                    from: (bed, y),
                    to: (bed, y + 1.0),
                },
                Segment {
                    from: (x, y + f(c1)),
                    to: (bed, y + f(c1)),
                },
                Segment {
                    from: (bed, y + f(c3)),
                    to: (x + 1.0, y + f(c3)),
                },
            ]
        }
    })
}

/// Mortar joints of the whole tiling in cell coordinates, three per tile,
/// row-major. Joint endpoints of adjacent tiles meet on the shared edge.
pub fn render_wang_segments(w: &WangTiling) -> Result<Vec<Segment>> {
    let mut segments = Vec::with_capacity(3 * w.m() * w.n());
    for j in 0..w.n() {
        for i in 0..w.m() {
            segments.extend(tile_segments(w.get(i, j), w.colors(), i, j)?);
        }
    }
    Ok(segments)
}

/// Render a brick Wang tiling as a brick wall with mortar joints.
pub fn render_wang_svg(w: &WangTiling) -> Result<String> {
    let segments = render_wang_segments(w)?;
    let mut out = String::new();
    svg_open(&mut out, w.m(), w.n());
    let (width, height) = (w.m() * CELL_UNITS, w.n() * CELL_UNITS);
    writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#a0522d\"/>"
    )
    .expect("string write");
    let scale = CELL_UNITS as f64;
    for s in segments {
        writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#e8e0d2\" \
             stroke-width=\"3\" stroke-linecap=\"square\"/>",
            s.from.0 * scale,
            s.from.1 * scale,
            s.to.0 * scale,
            s.to.1 * scale,
        )
        .expect("string write");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wang::wang_from_dappled;

    fn palette_01() -> Palette {
        Palette::parse(r##"{"0": "#000000", "1": "#ffffff"}"##).unwrap()
    }

    #[test]
    fn tiling_svg_is_deterministic_and_cell_accurate() {
        let f = Tiling::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let tiles = TileSet::binary();
        let svg = render_tiling_svg(&f, &tiles, &palette_01()).unwrap();
        assert_eq!(svg, render_tiling_svg(&f, &tiles, &palette_01()).unwrap());
        assert!(svg.starts_with("<svg "));
        assert!(svg.contains("width=\"64\" height=\"64\""));
        assert!(svg.contains("<rect x=\"0\" y=\"0\" width=\"32\" height=\"32\" fill=\"#000000\"/>"));
        assert!(
            svg.contains("<rect x=\"32\" y=\"0\" width=\"32\" height=\"32\" fill=\"#ffffff\"/>")
        );
        assert!(
            svg.contains("<rect x=\"32\" y=\"32\" width=\"32\" height=\"32\" fill=\"#000000\"/>")
        );
        assert_eq!(svg.matches("<rect").count(), 4);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn palette_must_cover_the_alphabet_exactly() {
        let f = Tiling::from_rows(&[vec![0, 1]]).unwrap();
        let tiles = TileSet::binary();
        let missing = Palette::parse(r##"{"0": "#000000"}"##).unwrap();
        assert!(matches!(
            render_tiling_svg(&f, &tiles, &missing).unwrap_err(),
            Error::PaletteMismatch(_)
        ));
        let extra =
            Palette::parse(r##"{"0": "#000000", "1": "#ffffff", "2": "#ff0000"}"##).unwrap();
        assert!(matches!(
            render_tiling_svg(&f, &tiles, &extra).unwrap_err(),
            Error::PaletteMismatch(_)
        ));
        assert!(matches!(
            Palette::parse("not json").unwrap_err(),
            Error::Parse(_)
        ));
    }

    #[test]
    fn ppm_renders_pixel_blocks() {
        let f = Tiling::from_rows(&[vec![0, 1]]).unwrap();
        let tiles = TileSet::binary();
        let ppm = render_tiling_ppm(&f, &tiles, &palette_01()).unwrap();
        let header = b"P6\n64 32\n255\n";
        assert_eq!(&ppm[..header.len()], header);
        assert_eq!(ppm.len(), header.len() + 64 * 32 * 3);
        // First row: 32 black pixels then 32 white ones.
        let row = &ppm[header.len()..header.len() + 64 * 3];
        assert!(row[..32 * 3].iter().all(|&b| b == 0));
        assert!(row[32 * 3..].iter().all(|&b| b == 255));
    }

    #[test]
    fn ppm_requires_hex_colors() {
        let f = Tiling::from_rows(&[vec![0, 1]]).unwrap();
        let tiles = TileSet::binary();
        let named = Palette::parse(r#"{"0": "black", "1": "white"}"#).unwrap();
        assert!(render_tiling_svg(&f, &tiles, &named).is_ok());
        assert!(matches!(
            render_tiling_ppm(&f, &tiles, &named).unwrap_err(),
            Error::Parse(_)
        ));
    }

    #[test]
    fn horizontal_tile_draws_a_bed_joint_and_two_head_joints() {
        let w = WangTiling::new(1, 1, 3, vec![BrickWangTile::new([0, 1, 0, 2])]).unwrap();
        let segments = render_wang_segments(&w).unwrap();
        assert_eq!(
            segments,
            vec![
                Segment {
                    from: (0.0, 0.25),
                    to: (1.0, 0.25)
                },
                Segment {
                    from: (0.5, 0.0),
                    to: (0.5, 0.25)
                },
                Segment {
                    from: (0.75, 0.25),
                    to: (0.75, 1.0)
                },
            ]
        );
    }

    #[test]
    fn vertical_tile_mirrors_the_geometry() {
        let w = WangTiling::new(1, 1, 3, vec![BrickWangTile::new([1, 0, 2, 0])]).unwrap();
        let segments = render_wang_segments(&w).unwrap();
        assert_eq!(
            segments,
            vec![
                Segment {
                    from: (0.25, 0.0),
                    to: (0.25, 1.0)
                },
                Segment {
                    from: (0.0, 0.5),
                    to: (0.25, 0.5)
                },
                Segment {
                    from: (0.25, 0.75),
                    to: (1.0, 0.75)
                },
            ]
        );
    }

    #[test]
    fn joints_meet_across_every_interior_edge() {
        use std::collections::HashMap;
        let f = crate::oracle::draughtboard(8, 6, &TileSet::binary(), 5).unwrap();
        for seed in 0..10 {
            let w = wang_from_dappled(&f, 4, seed).unwrap();
            let colors = w.colors();
            let segments = render_wang_segments(&w).unwrap();
            // Quantize endpoint coordinates: all are multiples of
            // 1/(colors+1).
            let denom = f64::from(colors + 1);
            let key = |(x, y): (f64, f64)| ((x * denom).round() as i64, (y * denom).round() as i64);
            let mut boundary_hits: HashMap<(i64, i64), usize> = HashMap::new();
            let on_interior = |(x, y): (f64, f64)| {
                let vertical = x == x.round() && x > 0.0 && x < w.m() as f64;
                let horizontal = y == y.round() && y > 0.0 && y < w.n() as f64;
                vertical || horizontal
            };
            for s in &segments {
                for &end in &[s.from, s.to] {
                    if on_interior(end) {
                        *boundary_hits.entry(key(end)).or_default() += 1;
                    }
                }
            }
            for (point, hits) in &boundary_hits {
                assert_eq!(*hits, 2, "seed {seed}: endpoint {point:?} unmatched");
            }
        }
    }

    #[test]
    fn wang_svg_renders_lines_deterministically() {
        let f = crate::oracle::draughtboard(4, 4, &TileSet::binary(), 9).unwrap();
        let w = wang_from_dappled(&f, 3, 1).unwrap();
        let svg = render_wang_svg(&w).unwrap();
        assert_eq!(svg, render_wang_svg(&w).unwrap());
        assert_eq!(svg.matches("<line").count(), 3 * 16);
        assert!(svg.contains("width=\"128\" height=\"128\""));
        let broken = WangTiling::new(1, 1, 2, vec![BrickWangTile::new([0, 0, 0, 0])]).unwrap();
        assert!(matches!(
            render_wang_svg(&broken).unwrap_err(),
            Error::NotInWang { .. }
        ));
    }
}
