//! CSS codes attached to surfaces: stabilizers, parameters, distance and
//! logical operators.
//!
//! Qubits sit on non-open edges. Each non-open vertex carries an X check on
//! its non-open edges and each face carries a Z check on its non-open edges.

pub mod distance;
pub mod logicals;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2linalg::{rank, BinaryMatrix, BitVector};
use crate::homology::{boundary_maps, h1_dim};
use crate::surface::Surface;

pub use distance::{
    distance_bruteforce_oracle, distance_x, distance_z, BruteForceOutcome, DistanceResult, Method,
    Side, DEFAULT_BUDGET,
};
pub use logicals::{
    logical_basis_boundary_strategy, logical_basis_generic, verify_logical_basis, LogicalBasis,
};

#[derive(Clone, Debug)]
pub struct CssCode {
    pub n: usize,
    pub x_stabilizers: Vec<BitVector>,
    pub z_stabilizers: Vec<BitVector>,
    /// Surface vertex of each X stabilizer.
    pub x_vertices: Vec<usize>,
    /// Surface face of each Z stabilizer.
    pub z_faces: Vec<usize>,
    /// Surface edge of each qubit.
    pub qubit_edges: Vec<usize>,
}

impl CssCode {
    pub fn x_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_rows(self.n, &self.x_stabilizers)
    }

    pub fn z_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_rows(self.n, &self.z_stabilizers)
    }

    /// Pairs `(x, z)` of stabilizer indices with odd overlap. Empty for a valid code.
    pub fn anticommuting_pairs(&self) -> Vec<(usize, usize)> {
        let product = self
            .x_matrix()
            .mul(&self.z_matrix().transpose())
            .expect("stabilizers share the qubit count");
        (0..product.rows())
            .flat_map(|i| product.row_support(i).iter().map(move |&j| (i, j)))
            .collect()
    }

    /// `n − rank(S_X) − rank(S_Z)`.
    pub fn k_from_ranks(&self) -> usize {
        self.n - rank(&self.x_matrix()) - rank(&self.z_matrix())
    }
}

pub fn build_css(s: &Surface) -> CssCode {
    let cx = boundary_maps(s);
    CssCode {
        n: cx.edges.len(),
        x_stabilizers: cx.d1.row_vectors(),
        z_stabilizers: cx.d2.transpose().row_vectors(),
        x_vertices: cx.vertices,
        z_faces: (0..s.face_count()).collect(),
        qubit_edges: cx.edges,
    }
}

/// Number of logical qubits, cross-checked against the stabilizer ranks.
pub fn logical_count(s: &Surface) -> Result<usize> {
    let k = h1_dim(s)?;
    let by_rank = build_css(s).k_from_ranks();
    if k != by_rank {
        return Err(Error::FormulaMismatch {
            formula: k as i64,
            oracle: by_rank as i64,
        });
    }
    Ok(k)
}

/// `k` for a surface whose holes are each entirely closed or entirely open.
pub fn k_uniform(genus: usize, orientable: bool, b_c: usize, b_o: usize) -> usize {
    let handles = if orientable { 2 * genus } else { genus };
    handles + b_c.saturating_sub(1) + b_o.saturating_sub(1)
}

/// `k` for a surface with `b` holes carrying `m > 1` open paths in total.
pub fn k_mixed(genus: usize, orientable: bool, b: usize, m: usize) -> Result<usize> {
    if m <= 1 {
        return Err(Error::OutOfDomain(format!(
            "the mixed-boundary count needs at least two open paths, got {m}; use logical_count"
        )));
    }
    let handles = if orientable { 2 * genus } else { genus };
    Ok(handles + b + m - 2)
}

/// Code parameters reported by analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub dz: Option<usize>,
    pub dx: Option<usize>,
    pub d: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_counts() {
        assert_eq!(k_uniform(0, true, 4, 2), 4);
        assert_eq!(k_uniform(2, true, 2, 3), 7);
        assert_eq!(k_uniform(1, true, 0, 0), 2);
        assert_eq!(k_uniform(1, false, 0, 0), 1);
        assert_eq!(k_uniform(0, true, 1, 0), 0);
    }

    #[test]
    fn mixed_counts() {
        assert_eq!(k_mixed(2, true, 4, 4).unwrap(), 10);
        assert_eq!(k_mixed(0, true, 3, 4).unwrap(), 5);
        for b in 2..6 {
            assert_eq!(k_mixed(0, true, b + 1, b).unwrap(), 2 * b - 1);
        }
        assert!(matches!(k_mixed(0, true, 2, 1), Err(Error::OutOfDomain(_))));
    }
}
