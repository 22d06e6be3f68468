use serde::Serialize;

use crate::FvError;

/// Uniform cell-centred grid on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_cells: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self, FvError> {
        if n_cells < 4 {
            return Err(FvError::Grid(format!("{n_cells} cells, need at least 4")));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(FvError::Grid(format!("bad bounds [{x_min}, {x_max}]")));
        }
        Ok(Self { x_min, x_max, n_cells })
    }

    #[must_use]
    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    #[must_use]
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    #[must_use]
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }
    #[must_use]
    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }
    #[must_use]
    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx()
    }
    #[must_use]
    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|i| self.center(i)).collect()
    }
}
