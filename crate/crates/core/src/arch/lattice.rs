//! Surfaces cut out of the square lattice `Z²` by a set of unit faces.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::Result;
use crate::surface::{Edge, Surface};

/// A lattice edge: `H(x, y)` joins `(x, y)–(x+1, y)`, `V(x, y)` joins `(x, y)–(x, y+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeEdge {
    H(i64, i64),
    V(i64, i64),
}

impl LatticeEdge {
    fn ends(self) -> [(i64, i64); 2] {
        match self {
            LatticeEdge::H(x, y) => [(x, y), (x + 1, y)],
            LatticeEdge::V(x, y) => [(x, y), (x, y + 1)],
        }
    }
}

/// Edges of the unit face with lower-left corner `(i, j)`, counter-clockwise.
pub fn face_edges(i: i64, j: i64) -> [LatticeEdge; 4] {
    [
        LatticeEdge::H(i, j),
        LatticeEdge::V(i + 1, j),
        LatticeEdge::H(i, j + 1),
        LatticeEdge::V(i, j),
    ]
}

/// Builds the surface spanned by `faces` (lower-left corners).
///
/// Vertices are ordered by `(y, x)`, edges by their lower endpoint with
/// horizontal before vertical, faces by `(j, i)`. Coordinates are the lattice
/// positions.
pub fn build_patch(faces: &BTreeSet<(i64, i64)>, open: &HashSet<LatticeEdge>) -> Result<Surface> {
    let mut faces_sorted: Vec<(i64, i64)> = faces.iter().copied().collect();
    faces_sorted.sort_by_key(|&(i, j)| (j, i));
    let mut edge_keys = BTreeSet::new();
    for &(i, j) in &faces_sorted {
        edge_keys.extend(face_edges(i, j));
    }
    let mut points = BTreeSet::new();
    for e in &edge_keys {
        for (x, y) in e.ends() {
            points.insert((y, x));
        }
    }
    let vertex_index: BTreeMap<(i64, i64), usize> = points
        .iter()
        .enumerate()
        .map(|(n, &(y, x))| ((x, y), n))
        .collect();
    let mut edge_list: Vec<LatticeEdge> = edge_keys.into_iter().collect();
    edge_list.sort_by_key(|e| {
        let [(x, y), _] = e.ends();
        (y, x, matches!(e, LatticeEdge::V(..)))
    });
    let edge_index: BTreeMap<LatticeEdge, usize> =
        edge_list.iter().enumerate().map(|(n, &e)| (e, n)).collect();
    let edges = edge_list
        .iter()
        .map(|&e| {
            let [a, b] = e.ends();
            Edge {
                u: vertex_index[&a],
                v: vertex_index[&b],
                open: open.contains(&e),
            }
        })
        .collect();
    let face_lists = faces_sorted
        .iter()
        .map(|&(i, j)| face_edges(i, j).iter().map(|e| edge_index[e]).collect())
        .collect();
    let coords = points.iter().map(|&(y, x)| [x as f64, y as f64]).collect();
    Surface::new(points.len(), edges, face_lists, Some(coords))
}

/// Faces of the `(L × L2)` rotated lattice as `(U, W)` pairs with `U ≡ W (mod 2)`.
pub fn rotated_faces(l: usize, l2: usize) -> Vec<(i64, i64)> {
    let (umax, wmax) = (2 * l as i64 - 2, 2 * l2 as i64 - 2);
    let mut out = Vec::new();
    for u in 0..=umax {
        for w in 0..=wmax {
            if (u - w) % 2 == 0 {
                out.push((u, w));
            }
        }
    }
    out
}

/// Lower-left corner of the rotated-lattice face `(U, W)`.
pub fn rotated_to_square(u: i64, w: i64) -> (i64, i64) {
    ((u - w) / 2, (u + w) / 2)
}
