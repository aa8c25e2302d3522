//! 2-D occupancy heatmaps.
//!
//! The cube is projected onto two named dimensions: a grid cell is dark iff
//! any fact projects onto it. Output is a plain-text P1 bitmap (bit-exact,
//! golden-file friendly) or an SVG.

use cuborder_core::Cube;

/// Binary occupancy raster. `dark` is row-major; rows follow the first
/// projection dimension, columns the second.
pub struct GridImage {
    pub rows: usize,
    pub cols: usize,
    dark: Vec<bool>,
}

impl GridImage {
    pub fn is_dark(&self, row: usize, col: usize) -> bool {
        self.dark[row * self.cols + col]
    }

    #[cfg(test)]
    pub fn dark_count(&self) -> usize {
        self.dark.iter().filter(|&&d| d).count()
    }

    /// Inclusive (row0, row1, col0, col1) box around the dark cells.
    #[cfg(test)]
    pub fn bounding_box(&self) -> Option<(usize, usize, usize, usize)> {
        let mut bounds: Option<(usize, usize, usize, usize)> = None;
        for row in 0..self.rows {
            for col in 0..self.cols {
                if self.is_dark(row, col) {
                    bounds = Some(match bounds {
                        None => (row, row, col, col),
                        Some((r0, r1, c0, c1)) => {
                            (r0.min(row), r1.max(row), c0.min(col), c1.max(col))
                        }
                    });
                }
            }
        }
        bounds
    }

    /// Plain-text portable bitmap (P1): 1 = dark cell.
    pub fn to_pbm(&self) -> String {
        let mut out = String::with_capacity(self.dark.len() * 2 + 32);
        out.push_str("P1\n");
        out.push_str(&format!("{} {}\n", self.cols, self.rows));
        for row in 0..self.rows {
            let line: Vec<&str> = (0..self.cols)
                .map(|col| if self.is_dark(row, col) { "1" } else { "0" })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_svg(&self) -> String {
        const CELL: usize = 10;
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
            self.cols * CELL,
            self.rows * CELL,
            self.cols,
            self.rows
        ));
        out.push_str(&format!(
            "<rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n",
            self.cols, self.rows
        ));
        for row in 0..self.rows {
            for col in 0..self.cols {
                if self.is_dark(row, col) {
                    out.push_str(&format!(
                        "<rect x=\"{col}\" y=\"{row}\" width=\"1\" height=\"1\" fill=\"#000000\"/>\n"
                    ));
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Projects occupancy onto (row_dim, col_dim).
pub fn project(cube: &Cube, row_dim: usize, col_dim: usize) -> GridImage {
    let shape = cube.shape();
    let rows = shape[row_dim] as usize;
    let cols = shape[col_dim] as usize;
    let mut dark = vec![false; rows * cols];
    for cell in cube.occupancy() {
        let r = cell[row_dim] as usize;
        let c = cell[col_dim] as usize;
        dark[r * cols + c] = true;
    }
    GridImage { rows, cols, dark }
}
