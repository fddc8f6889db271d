//! Uniform partitions of an interval and piecewise-linear nodal functions.
//!
//! A [`GridFunction`] stores one value per node, including the two boundary
//! nodes, which are always zero. Zero-order integrals use the composite
//! trapezoid rule on nodal values; the p-Dirichlet integral is computed
//! exactly cell by cell since slopes are constant on each cell.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible number of cells.
pub const MIN_CELLS: usize = 4;

/// Uniform grid on `(a, b)` with `n_cells` cells of width `h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    a: f64,
    b: f64,
    n_cells: usize,
    h: f64,
}

impl Grid {
    pub fn new(a: f64, b: f64, n_cells: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidDomain(format!("endpoints must be finite, got ({a}, {b})")));
        }
        if a >= b {
            return Err(Error::InvalidDomain(format!("need a < b, got a = {a}, b = {b}")));
        }
        if n_cells < MIN_CELLS {
            return Err(Error::InvalidDomain(format!(
                "need n_cells >= {MIN_CELLS}, got {n_cells}"
            )));
        }
        Ok(Self { a, b, n_cells, h: (b - a) / n_cells as f64 })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// Number of nodes including both endpoints.
    pub fn n_nodes(&self) -> usize {
        self.n_cells + 1
    }

    pub fn n_interior(&self) -> usize {
        self.n_cells - 1
    }

    /// Coordinate of node `i`.
    pub fn x(&self, i: usize) -> f64 {
        if i == self.n_cells {
            self.b
        } else {
            self.a + i as f64 * self.h
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_nodes()).map(move |i| self.x(i))
    }
}

/// Builds a uniform grid; fails with `invalid-domain` if `a >= b` or `n_cells < 4`.
pub fn make_grid(a: f64, b: f64, n_cells: usize) -> Result<Grid> {
    Grid::new(a, b, n_cells)
}

/// Nodal values of a continuous piecewise-linear function vanishing at both endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    x: f64,
    value: f64,
}

impl GridFunction {
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![0.0; grid.n_nodes()] }
    }

    /// Samples `f` at interior nodes; boundary values are set to zero.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let mut values = vec![0.0; grid.n_nodes()];
        for (i, v) in values.iter_mut().enumerate().take(grid.n_cells).skip(1) {
            *v = f(grid.x(i));
        }
        Self { grid, values }
    }

    /// Wraps a full nodal vector. The boundary entries must be zero.
    pub fn from_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(Error::GridMismatch);
        }
        let last = values[grid.n_cells];
        if values[0] != 0.0 || last != 0.0 {
            return Err(Error::InvalidDomain(format!(
                "boundary values must vanish, got {} and {}",
                values[0], last
            )));
        }
        Ok(Self { grid, values })
    }

    /// Builds a function from its interior values (length `n_cells - 1`).
    pub fn from_interior(grid: Grid, interior: &[f64]) -> Result<Self> {
        if interior.len() != grid.n_interior() {
            return Err(Error::GridMismatch);
        }
        let mut values = Vec::with_capacity(grid.n_nodes());
        values.push(0.0);
        values.extend_from_slice(interior);
        values.push(0.0);
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn interior(&self) -> &[f64] {
        &self.values[1..self.grid.n_cells]
    }

    pub fn interior_mut(&mut self) -> &mut [f64] {
        let n = self.grid.n_cells;
        &mut self.values[1..n]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn ensure_finite(&self, what: &str) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            None => Ok(()),
            Some(i) => Err(Error::NonFinite(format!("{what} has value {} at node {i}", self.values[i]))),
        }
    }

    pub fn ensure_same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Applies `f` to every interior value.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let mut out = self.clone();
        for v in out.interior_mut() {
            *v = f(*v);
        }
        out
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    /// Slope on each cell, `(u[j+1] - u[j]) / h`.
    pub fn slopes(&self) -> Vec<f64> {
        let h = self.grid.h;
        self.values.windows(2).map(|w| (w[1] - w[0]) / h).collect()
    }

    /// Smallest interior value and its node index.
    pub fn interior_min(&self) -> (usize, f64) {
        let mut best = (1, f64::INFINITY);
        for (k, &v) in self.interior().iter().enumerate() {
            if v < best.1 {
                best = (k + 1, v);
            }
        }
        best
    }

    /// Fails with `not-positive` unless every interior value is strictly positive.
    pub fn ensure_positive(&self) -> Result<()> {
        let (node, value) = self.interior_min();
        if value > 0.0 {
            Ok(())
        } else {
            Err(Error::NotPositive { node, value })
        }
    }

    /// Writes `x,value` rows (header included), one per node.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for (i, &value) in self.values.iter().enumerate() {
            w.serialize(CsvRow { x: self.grid.x(i), value })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    /// Reads the format produced by [`GridFunction::write_csv`]. The grid is
    /// reconstructed from the first and last `x` and the row count.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let rows = rdr.deserialize::<CsvRow>().collect::<std::result::Result<Vec<_>, _>>()?;
        if rows.len() < MIN_CELLS + 1 {
            return Err(Error::InvalidDomain(format!("too few rows: {}", rows.len())));
        }
        let grid = Grid::new(rows[0].x, rows[rows.len() - 1].x, rows.len() - 1)?;
        Self::from_values(grid, rows.into_iter().map(|r| r.value).collect())
    }
}

/// Largest absolute nodal value.
pub fn sup_norm(f: &GridFunction) -> Result<f64> {
    f.ensure_finite("sup_norm input")?;
    Ok(f.values.iter().fold(0.0_f64, |m, v| m.max(v.abs())))
}

/// Largest absolute nodal difference between two functions on the same grid.
pub fn sup_distance(f: &GridFunction, g: &GridFunction) -> Result<f64> {
    f.ensure_same_grid(g)?;
    Ok(f.values.iter().zip(&g.values).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())))
}

pub(crate) fn check_norm_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(format!("need p > 1, got {p}")))
    }
}

/// Composite trapezoid approximation of `(∫|f|^p)^{1/p}`.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64> {
    check_norm_exponent(p)?;
    f.ensure_finite("lp_norm input")?;
    Ok(trapezoid(f, |v| v.abs().powf(p)).powf(1.0 / p))
}

/// Exact `(∫|f'|^p)^{1/p}` for the piecewise-linear interpolant.
pub fn w1p_seminorm(f: &GridFunction, p: f64) -> Result<f64> {
    check_norm_exponent(p)?;
    f.ensure_finite("w1p_seminorm input")?;
    let h = f.grid.h;
    let sum: f64 = f.slopes().iter().map(|s| h * s.abs().powf(p)).sum();
    Ok(sum.powf(1.0 / p))
}

/// Trapezoid rule for `∫ g(f(x)) dx` using nodal values.
pub(crate) fn trapezoid(f: &GridFunction, g: impl Fn(f64) -> f64) -> f64 {
    let v = &f.values;
    let n = v.len() - 1;
    let inner: f64 = v[1..n].iter().map(|&x| g(x)).sum();
    f.grid.h * (inner + 0.5 * (g(v[0]) + g(v[n])))
}
