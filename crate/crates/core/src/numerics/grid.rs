use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum nodes per axis for a usable central-difference stencil.
pub const MIN_NODES: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Centering {
    /// Nodes include both endpoints.
    #[default]
    Vertex,
    /// Nodes at the centres of n equal cells.
    Cell,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub nodes: usize,
}

/// Uniform rectangular grid in 2 or 3 dimensions. A 2D grid lies in the
/// plane z = `plane_z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub axes: Vec<Axis>,
    pub centering: Centering,
    pub plane_z: f64,
}

impl GridSpec {
    pub fn square(lo: f64, hi: f64, nodes: usize) -> Self {
        GridSpec {
            axes: vec![Axis { lo, hi, nodes }; 2],
            centering: Centering::Vertex,
            plane_z: 0.0,
        }
    }

    /// 2D grid with independent extents and node counts per axis.
    pub fn rect(lo: [f64; 2], hi: [f64; 2], nodes: [usize; 2]) -> Self {
        GridSpec {
            axes: (0..2)
                .map(|a| Axis {
                    lo: lo[a],
                    hi: hi[a],
                    nodes: nodes[a],
                })
                .collect(),
            centering: Centering::Vertex,
            plane_z: 0.0,
        }
    }

    pub fn cube(lo: f64, hi: f64, nodes: usize) -> Self {
        GridSpec {
            axes: vec![Axis { lo, hi, nodes }; 3],
            centering: Centering::Vertex,
            plane_z: 0.0,
        }
    }

    pub fn with_centering(mut self, centering: Centering) -> Self {
        self.centering = centering;
        self
    }

    pub fn with_plane_z(mut self, z: f64) -> Self {
        self.plane_z = z;
        self
    }

    pub fn dims(&self) -> usize {
        self.axes.len()
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.axes.len()) {
            return Err(Error::GridTooCoarse(format!(
                "grid must have 2 or 3 axes, got {}",
                self.axes.len()
            )));
        }
        for (i, a) in self.axes.iter().enumerate() {
            if !(a.lo.is_finite() && a.hi.is_finite()) || a.hi <= a.lo {
                return Err(Error::InvalidParameter {
                    name: "grid extent",
                    value: a.hi - a.lo,
                    reason: "upper bound must exceed lower bound",
                });
            }
            if a.nodes < MIN_NODES {
                return Err(Error::GridTooCoarse(format!(
                    "axis {i} has {} nodes, need at least {MIN_NODES}",
                    a.nodes
                )));
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.axes.iter().map(|a| a.nodes).product()
    }

    /// Coordinate of node `i` along `axis`. Vertex grids hit both endpoints
    /// exactly and place the midpoint of a symmetric interval at 0.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        let a = &self.axes[axis];
        let s = match self.centering {
            Centering::Vertex => i as f64 / (a.nodes - 1) as f64,
            Centering::Cell => (i as f64 + 0.5) / a.nodes as f64,
        };
        a.lo * (1.0 - s) + a.hi * s
    }

    pub fn coords(&self, axis: usize) -> Vec<f64> {
        (0..self.axes[axis].nodes)
            .map(|i| self.coord(axis, i))
            .collect()
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        let a = &self.axes[axis];
        match self.centering {
            Centering::Vertex => (a.hi - a.lo) / (a.nodes - 1) as f64,
            Centering::Cell => (a.hi - a.lo) / a.nodes as f64,
        }
    }

    /// Largest spacing over all axes.
    pub fn h(&self) -> f64 {
        (0..self.dims())
            .map(|a| self.spacing(a))
            .fold(0.0, f64::max)
    }

    /// Position of the node with flat index `idx` (x fastest).
    pub fn point(&self, idx: usize) -> [f64; 3] {
        let nx = self.axes[0].nodes;
        let ny = self.axes[1].nodes;
        let i = idx % nx;
        let j = (idx / nx) % ny;
        let z = if self.dims() == 3 {
            self.coord(2, idx / (nx * ny))
        } else {
            self.plane_z
        };
        [self.coord(0, i), self.coord(1, j), z]
    }

    pub fn points(&self) -> Vec<[f64; 3]> {
        (0..self.node_count()).map(|i| self.point(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_grid_hits_endpoints_and_center() {
        let l = 1.0e-8;
        let g = GridSpec::square(-l, l, 201);
        assert_eq!(g.coord(0, 0), -l);
        assert_eq!(g.coord(0, 200), l);
        assert_eq!(g.coord(0, 100), 0.0);
        assert_eq!(g.node_count(), 201 * 201);
        assert_eq!(g.point(201 * 100 + 100), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn cell_grid() {
        let g = GridSpec::square(0.0, 1.0, 10).with_centering(Centering::Cell);
        assert!((g.coord(0, 0) - 0.05).abs() < 1e-15);
        assert!((g.spacing(1) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(GridSpec::square(0.0, 1.0, 8).validate().is_err());
        assert!(GridSpec::square(1.0, 1.0, 9).validate().is_err());
        assert!(GridSpec::cube(0.0, 1.0, 9).validate().is_ok());
        let bad = GridSpec {
            axes: vec![Axis {
                lo: 0.0,
                hi: 1.0,
                nodes: 9,
            }],
            ..GridSpec::square(0.0, 1.0, 9)
        };
        assert!(bad.validate().is_err());
    }
}
