//! Rasterized two-dimensional slices of the coefficient space.
//!
//! Each grid point (a cell center) is a design polynomial `d`; it is classified
//! as inside the LMI set `P^c_m`, stable but outside it, or unstable. Output is
//! CSV or a standalone SVG.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::approx::member_pcm;
use crate::error::{Error, Result};
use crate::polynomial::MonicPolynomial;

/// Window `[x_min, x_max] x [y_min, y_max]` of a slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            x_min: -1.5,
            x_max: 1.5,
            y_min: -1.5,
            y_max: 1.5,
        }
    }
}

/// A 2D slice: two free coefficient indices, the window, the resolution, and
/// values for every other coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub axis_x: usize,
    pub axis_y: usize,
    pub bounds: Bounds,
    pub nx: usize,
    pub ny: usize,
    /// `(index, value)` for every coefficient other than the two axes.
    pub fixed_coords: Vec<(usize, f64)>,
}

impl Default for GridSpec {
    /// `d_0` against `d_1` over `[-1.5, 1.5]^2` at 201 x 201.
    fn default() -> Self {
        Self {
            axis_x: 0,
            axis_y: 1,
            bounds: Bounds::default(),
            nx: 201,
            ny: 201,
            fixed_coords: Vec::new(),
        }
    }
}

impl GridSpec {
    /// Checks the spec against polynomials of the given degree.
    pub fn validate(&self, degree: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGrid(msg));
        if self.axis_x == self.axis_y {
            return bad(format!("both axes are coefficient {}", self.axis_x));
        }
        if self.axis_x >= degree || self.axis_y >= degree {
            return bad(format!(
                "axes ({}, {}) must index coefficients below degree {degree}",
                self.axis_x, self.axis_y
            ));
        }
        let b = &self.bounds;
        if !(b.x_min < b.x_max && b.y_min < b.y_max)
            || ![b.x_min, b.x_max, b.y_min, b.y_max]
                .iter()
                .all(|v| v.is_finite())
        {
            return bad(format!("empty or non-finite window {b:?}"));
        }
        if self.nx == 0 || self.ny == 0 {
            return bad("resolution must be positive".into());
        }
        let mut seen = vec![false; degree];
        seen[self.axis_x] = true;
        seen[self.axis_y] = true;
        for &(k, v) in &self.fixed_coords {
            if k >= degree {
                return bad(format!(
                    "fixed coefficient {k} is out of range for degree {degree}"
                ));
            }
            if seen[k] {
                return bad(format!("coefficient {k} is assigned twice"));
            }
            if !v.is_finite() {
                return bad(format!("fixed coefficient {k} is not finite"));
            }
            seen[k] = true;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return bad(format!("coefficient {k} is neither an axis nor fixed"));
        }
        Ok(())
    }

    /// Abscissa of the center of column `i`.
    pub fn x_at(&self, i: usize) -> f64 {
        let b = &self.bounds;
        b.x_min + (i as f64 + 0.5) * (b.x_max - b.x_min) / self.nx as f64
    }

    /// Ordinate of the center of row `j`, counted from the bottom.
    pub fn y_at(&self, j: usize) -> f64 {
        let b = &self.bounds;
        b.y_min + (j as f64 + 0.5) * (b.y_max - b.y_min) / self.ny as f64
    }

    fn design_coeffs(&self, degree: usize, x: f64, y: f64) -> Vec<f64> {
        let mut d = vec![0.0; degree];
        d[self.axis_x] = x;
        d[self.axis_y] = y;
        for &(k, v) in &self.fixed_coords {
            d[k] = v;
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellClass {
    LmiInner,
    StableOnly,
    Unstable,
}

impl CellClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CellClass::LmiInner => "LMI_INNER",
            CellClass::StableOnly => "STABLE_ONLY",
            CellClass::Unstable => "UNSTABLE",
        }
    }

    pub fn fill(self) -> &'static str {
        match self {
            CellClass::LmiInner => "#808080",
            CellClass::StableOnly => "#d9d9d9",
            CellClass::Unstable => "#ffffff",
        }
    }

    pub fn from_fill(fill: &str) -> Option<Self> {
        [
            CellClass::LmiInner,
            CellClass::StableOnly,
            CellClass::Unstable,
        ]
        .into_iter()
        .find(|c| c.fill().eq_ignore_ascii_case(fill))
    }
}

impl std::str::FromStr for CellClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "LMI_INNER" => Ok(CellClass::LmiInner),
            "STABLE_ONLY" => Ok(CellClass::StableOnly),
            "UNSTABLE" => Ok(CellClass::Unstable),
            other => Err(Error::InvalidGrid(format!("unknown cell class {other:?}"))),
        }
    }
}

/// Classified grid. `cells[j * nx + i]` is the cell in column `i`, row `j`
/// (rows counted from the bottom).
#[derive(Debug, Clone, PartialEq)]
pub struct RegionRaster {
    pub spec: GridSpec,
    pub central: MonicPolynomial,
    pub matrix_order: usize,
    pub cells: Vec<CellClass>,
}

impl RegionRaster {
    pub fn cell(&self, i: usize, j: usize) -> CellClass {
        self.cells[j * self.spec.nx + i]
    }

    pub fn count(&self, class: CellClass) -> usize {
        self.cells.iter().filter(|&&c| c == class).count()
    }

    /// Cell centers with their classes, row by row from the bottom.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, CellClass)> + '_ {
        let nx = self.spec.nx;
        self.cells
            .iter()
            .enumerate()
            .map(move |(idx, &c)| (self.spec.x_at(idx % nx), self.spec.y_at(idx / nx), c))
    }
}

/// Classifies every cell center of `spec` for the central polynomial `c` and
/// matrix order `m`.
///
/// Fails with [`Error::ContainmentViolation`] if any cell is LMI-feasible but
/// unstable.
pub fn rasterize(c: &MonicPolynomial, m: usize, spec: &GridSpec) -> Result<RegionRaster> {
    let n = c.degree();
    if !c.is_schur_stable() {
        return Err(Error::UnstableCentral);
    }
    if m <= n {
        return Err(Error::OrderTooSmall {
            order: m,
            degree: n,
        });
    }
    spec.validate(n)?;

    let cells = (0..spec.nx * spec.ny)
        .into_par_iter()
        .map(|idx| {
            let (x, y) = (spec.x_at(idx % spec.nx), spec.y_at(idx / spec.nx));
            let d = MonicPolynomial::new(spec.design_coeffs(n, x, y))?;
            let stable = d.is_schur_stable();
            if member_pcm(c, &d, m)?.member {
                if !stable {
                    return Err(Error::ContainmentViolation { x, y });
                }
                Ok(CellClass::LmiInner)
            } else if stable {
                Ok(CellClass::StableOnly)
            } else {
                Ok(CellClass::Unstable)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(RegionRaster {
        spec: spec.clone(),
        central: c.clone(),
        matrix_order: m,
        cells,
    })
}

/// Evaluates the two factors of `det P_7` for `c = z^2` at `(d_0, d_1)`:
/// the cubic
/// `-7200 + 5040 d0 + 3528 d0^2 + 4900 d1^2 - 5145 d0 d1^2`
/// and the quartic
/// `6480000 + 4536000 d0 - 9525600 d0^2 - 8820000 d1^2 - 4445280 d0^3
///  + 7717500 d0 d1^2 + 3111696 d0^4 - 4321800 d0^2 d1^2 + 1500625 d1^4`.
pub fn boundary_residuals(d0: f64, d1: f64) -> (f64, f64) {
    let (d0s, d1s) = (d0 * d0, d1 * d1);
    let cubic = -7200.0 + 5040.0 * d0 + 3528.0 * d0s + 4900.0 * d1s - 5145.0 * d0 * d1s;
    let quartic = 6_480_000.0 + 4_536_000.0 * d0
        - 9_525_600.0 * d0s
        - 8_820_000.0 * d1s
        - 4_445_280.0 * d0s * d0
        + 7_717_500.0 * d0 * d1s
        + 3_111_696.0 * d0s * d0s
        - 4_321_800.0 * d0s * d1s
        + 1_500_625.0 * d1s * d1s;
    (cubic, quartic)
}

pub const REGION_CSV_HEADER: &str = "x,y,class";

/// CSV with header `x,y,class`, one row per cell, rows from the bottom.
pub fn emit_csv(r: &RegionRaster) -> String {
    let mut out = String::with_capacity(32 * r.cells.len());
    out.push_str(REGION_CSV_HEADER);
    out.push('\n');
    for (x, y, c) in r.points() {
        let _ = writeln!(out, "{x:?},{y:?},{}", c.as_str());
    }
    out
}

const SVG_LEFT: usize = 80;
const SVG_TOP: usize = 50;
const SVG_BOTTOM: usize = 60;
const SVG_RIGHT: usize = 180;
const SVG_PLOT_PX: usize = 600;

/// Pixel size of one cell in [`emit_svg`] output.
pub fn svg_cell_px(spec: &GridSpec) -> usize {
    (SVG_PLOT_PX / spec.nx.max(spec.ny)).max(1)
}

/// Pixel offset of the plot area's top-left corner in [`emit_svg`] output.
pub fn svg_origin() -> (usize, usize) {
    (SVG_LEFT, SVG_TOP)
}

fn format_coeffs(coeffs: &[f64]) -> String {
    let inner: Vec<String> = coeffs.iter().map(|c| format!("{c}")).collect();
    format!("[{}]", inner.join(", "))
}

/// Standalone SVG with one `rect` per cell (class `cell`), the y axis
/// pointing up, a three-entry legend, axis labels, and a title recording the
/// central polynomial, the matrix order and the fixed coefficients.
pub fn emit_svg(r: &RegionRaster) -> String {
    let spec = &r.spec;
    let cell = svg_cell_px(spec);
    let (plot_w, plot_h) = (spec.nx * cell, spec.ny * cell);
    let width = SVG_LEFT + plot_w + SVG_RIGHT;
    let height = SVG_TOP + plot_h + SVG_BOTTOM;

    let mut out = String::with_capacity(96 * r.cells.len() + 2048);
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" shape-rendering="crispEdges" font-family="sans-serif" font-size="12">"##
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##
    );

    let fixed = if spec.fixed_coords.is_empty() {
        "none".to_string()
    } else {
        spec.fixed_coords
            .iter()
            .map(|(k, v)| format!("d{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(
        out,
        r##"<text x="{}" y="24" font-size="14">c = {} (ascending, monic), m = {}, fixed: {}</text>"##,
        SVG_LEFT,
        format_coeffs(r.central.coeffs()),
        r.matrix_order,
        fixed
    );

    for (idx, class) in r.cells.iter().enumerate() {
        let (i, j) = (idx % spec.nx, idx / spec.nx);
        let x = SVG_LEFT + i * cell;
        let y = SVG_TOP + (spec.ny - 1 - j) * cell;
        let _ = writeln!(
            out,
            r##"<rect class="cell" x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{}"/>"##,
            class.fill()
        );
    }

    let _ = writeln!(
        out,
        r##"<rect x="{SVG_LEFT}" y="{SVG_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#000000"/>"##
    );
    let b = &spec.bounds;
    let bottom = SVG_TOP + plot_h;
    let right = SVG_LEFT + plot_w;
    let _ = writeln!(
        out,
        r##"<text x="{SVG_LEFT}" y="{}" text-anchor="middle">{}</text>"##,
        bottom + 18,
        b.x_min
    );
    let _ = writeln!(
        out,
        r##"<text x="{right}" y="{}" text-anchor="middle">{}</text>"##,
        bottom + 18,
        b.x_max
    );
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{bottom}" text-anchor="end">{}</text>"##,
        SVG_LEFT - 6,
        b.y_min
    );
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{}" text-anchor="end">{}</text>"##,
        SVG_LEFT - 6,
        SVG_TOP + 10,
        b.y_max
    );
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{}" text-anchor="middle" font-size="14">d{}</text>"##,
        SVG_LEFT + plot_w / 2,
        bottom + 40,
        spec.axis_x
    );
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{}" text-anchor="middle" font-size="14" transform="rotate(-90 {} {})">d{}</text>"##,
        SVG_LEFT - 40,
        SVG_TOP + plot_h / 2,
        SVG_LEFT - 40,
        SVG_TOP + plot_h / 2,
        spec.axis_y
    );

    let legend_x = right + 20;
    for (k, class) in [
        CellClass::LmiInner,
        CellClass::StableOnly,
        CellClass::Unstable,
    ]
    .into_iter()
    .enumerate()
    {
        let y = SVG_TOP + 10 + 24 * k;
        let _ = writeln!(
            out,
            r##"<rect class="legend" x="{legend_x}" y="{y}" width="16" height="16" fill="{}" stroke="#000000"/>"##,
            class.fill()
        );
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}">{}</text>"##,
            legend_x + 24,
            y + 13,
            class.as_str()
        );
    }
    out.push_str("</svg>\n");
    out
}
