//! The relative chain complex `C2 → C1 → C0` over the non-open cells.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2linalg::{kernel_basis, rank, BinaryMatrix, BitVector, RowEchelon};
use crate::surface::{kappa_no_closed_boundary_edge, kappa_no_open_vertex, Surface};

/// Boundary maps with explicit index maps between cells and matrix coordinates.
///
/// `d2` is `|E̊| × |F|` and `d1` is `|V̊| × |E̊|`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub d2: BinaryMatrix,
    pub d1: BinaryMatrix,
    /// Surface vertex index of each row of `d1`.
    pub vertices: Vec<usize>,
    /// Surface edge index of each column of `d1` (row of `d2`).
    pub edges: Vec<usize>,
    /// Position of each surface edge in `edges`, `None` for open edges.
    pub edge_slot: Vec<Option<usize>>,
    pub vertex_slot: Vec<Option<usize>>,
}

impl ChainComplex {
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Lifts a chain over `E̊` to a support in surface edge indices.
    pub fn to_surface_edges(&self, z: &BitVector) -> Vec<usize> {
        z.iter_support().map(|i| self.edges[i]).collect()
    }

    /// Restricts a set of surface edges to a chain over `E̊`, dropping open edges.
    pub fn from_surface_edges(&self, edges: &[usize]) -> BitVector {
        BitVector::from_support(
            self.edges.len(),
            edges.iter().filter_map(|&e| self.edge_slot[e]),
        )
    }
}

pub fn boundary_maps(s: &Surface) -> ChainComplex {
    let mut edge_slot = vec![None; s.edge_count()];
    let mut edges = Vec::new();
    for (e, slot) in edge_slot.iter_mut().enumerate() {
        if !s.is_open_edge(e) {
            *slot = Some(edges.len());
            edges.push(e);
        }
    }
    let mut vertex_slot = vec![None; s.vertex_count()];
    let mut vertices = Vec::new();
    for (v, slot) in vertex_slot.iter_mut().enumerate() {
        if !s.is_open_vertex(v) {
            *slot = Some(vertices.len());
            vertices.push(v);
        }
    }
    let d2_cols: Vec<Vec<usize>> = s
        .faces()
        .iter()
        .map(|f| f.iter().filter_map(|&e| edge_slot[e]).collect())
        .collect();
    let d2 = BinaryMatrix::from_col_supports(edges.len(), &d2_cols);
    let d1_cols: Vec<Vec<usize>> = edges
        .iter()
        .map(|&e| {
            let edge = s.edge(e);
            [edge.u, edge.v]
                .into_iter()
                .filter_map(|w| vertex_slot[w])
                .collect()
        })
        .collect();
    let d1 = BinaryMatrix::from_col_supports(vertices.len(), &d1_cols);
    ChainComplex {
        d2,
        d1,
        vertices,
        edges,
        edge_slot,
        vertex_slot,
    }
}

/// Dimension of the relative cycle space, `|E̊| − |V̊| + κ`.
///
/// Works on the bare graph; faces are not consulted.
pub fn cycle_space_dim(s: &Surface) -> usize {
    let n_edges = (0..s.edge_count()).filter(|&e| !s.is_open_edge(e)).count();
    let n_vertices = (0..s.vertex_count())
        .filter(|&v| !s.is_open_vertex(v))
        .count();
    n_edges + kappa_no_open_vertex(s) - n_vertices
}

/// The closed-form rank `−|V̊| + |E̊| − |F| + κ_O + κ_C` as a signed value.
pub fn h1_dim_formula(s: &Surface) -> i64 {
    let cx_edges = (0..s.edge_count()).filter(|&e| !s.is_open_edge(e)).count() as i64;
    let cx_vertices = (0..s.vertex_count())
        .filter(|&v| !s.is_open_vertex(v))
        .count() as i64;
    -cx_vertices + cx_edges - s.face_count() as i64
        + kappa_no_open_vertex(s) as i64
        + kappa_no_closed_boundary_edge(s) as i64
}

/// `dim ker d1 − rank d2`.
pub fn h1_dim_oracle(s: &Surface) -> usize {
    let cx = boundary_maps(s);
    h1_dim_of(&cx)
}

pub(crate) fn h1_dim_of(cx: &ChainComplex) -> usize {
    cx.n_edges() - rank(&cx.d1) - rank(&cx.d2)
}

/// Dimension of `H1` relative to the open boundary.
///
/// The closed form is checked against the rank computation; disagreement is
/// a modeling error.
pub fn h1_dim(s: &Surface) -> Result<usize> {
    let formula = h1_dim_formula(s);
    let oracle = h1_dim_oracle(s) as i64;
    if formula != oracle {
        return Err(Error::FormulaMismatch { formula, oracle });
    }
    Ok(oracle as usize)
}

fn check_len(cx: &ChainComplex, z: &BitVector) -> Result<()> {
    if z.len() != cx.n_edges() {
        return Err(Error::DimensionMismatch {
            expected: cx.n_edges(),
            found: z.len(),
        });
    }
    Ok(())
}

/// Whether `z` (indexed over `E̊`) meets every non-open vertex an even number of times.
pub fn is_relative_cycle(s: &Surface, z: &BitVector) -> Result<bool> {
    let cx = boundary_maps(s);
    check_len(&cx, z)?;
    Ok(cx.d1.mul_vec(z)?.is_zero())
}

/// Whether the relative cycle `z` bounds a set of faces.
pub fn is_trivial_cycle(s: &Surface, z: &BitVector) -> Result<bool> {
    let cx = boundary_maps(s);
    check_len(&cx, z)?;
    if !cx.d1.mul_vec(z)?.is_zero() {
        return Err(Error::NotRelativeCycle);
    }
    Ok(RowEchelon::from_matrix(&cx.d2.transpose()).contains(z))
}

/// Representatives of a basis of `ker d1 / im d2`, indexed over `E̊`.
pub fn homology_basis(cx: &ChainComplex) -> Vec<BitVector> {
    let mut span = RowEchelon::from_matrix(&cx.d2.transpose());
    kernel_basis(&cx.d1)
        .into_iter()
        .filter(|z| span.insert(z))
        .collect()
}

/// Summary of the chain complex sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub non_open_vertices: usize,
    pub non_open_edges: usize,
    pub faces: usize,
    pub kappa_no_open_vertex: usize,
    pub kappa_no_closed_boundary_edge: usize,
    pub h1_dim: usize,
}

pub fn summarize(s: &Surface) -> Result<HomologySummary> {
    let cx = boundary_maps(s);
    Ok(HomologySummary {
        non_open_vertices: cx.vertices.len(),
        non_open_edges: cx.edges.len(),
        faces: s.face_count(),
        kappa_no_open_vertex: kappa_no_open_vertex(s),
        kappa_no_closed_boundary_edge: kappa_no_closed_boundary_edge(s),
        h1_dim: h1_dim(s)?,
    })
}
