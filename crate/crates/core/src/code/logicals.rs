//! Symplectic bases of logical operators.

use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use crate::dual::dualize;
use crate::error::{Error, Result};
use crate::f2linalg::{symplectic_pairing, BitVector, RowEchelon};
use crate::homology::{boundary_maps, h1_dim, homology_basis, ChainComplex};
use crate::surface::{BoundaryCycle, Strictness, Surface};

/// Logical pairs over the qubit indexing (`E̊`) of a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalBasis {
    pub method: &'static str,
    /// `(x, z)` with `x_i · z_j = δ_ij`.
    pub pairs: Vec<(BitVector, BitVector)>,
    /// Surface edge of each qubit.
    pub qubit_edges: Vec<usize>,
}

impl LogicalBasis {
    pub fn k(&self) -> usize {
        self.pairs.len()
    }
}

#[derive(Serialize)]
struct PairRepr {
    x: Vec<usize>,
    z: Vec<usize>,
}

#[derive(Serialize)]
struct BasisRepr<'a> {
    method: &'a str,
    k: usize,
    pairs: Vec<PairRepr>,
}

/// Serialized with supports given as surface edge indices.
impl Serialize for LogicalBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let lift = |v: &BitVector| v.iter_support().map(|i| self.qubit_edges[i]).collect();
        BasisRepr {
            method: self.method,
            k: self.k(),
            pairs: self
                .pairs
                .iter()
                .map(|(x, z)| PairRepr {
                    x: lift(x),
                    z: lift(z),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

fn pair_up(
    method: &'static str,
    cx: &ChainComplex,
    zs: &[BitVector],
    xs: &[BitVector],
    k: usize,
) -> Result<LogicalBasis> {
    let pairs = symplectic_pairing(zs, xs)?;
    if pairs.len() != k {
        return Err(Error::RankDeficient {
            achieved: pairs.len(),
            expected: k,
        });
    }
    Ok(LogicalBasis {
        method,
        pairs: pairs.into_iter().map(|(z, x)| (x, z)).collect(),
        qubit_edges: cx.edges.clone(),
    })
}

/// Pairs homology representatives of the surface (Z side) with those of its
/// dual (X side).
pub fn logical_basis_generic(s: &Surface) -> Result<LogicalBasis> {
    let k = h1_dim(s)?;
    let cx = boundary_maps(s);
    let zs = homology_basis(&cx);
    let (dual, corr) = dualize(s)?;
    let dual_cx = boundary_maps(&dual);
    let back = corr.dual_edge_preimage(dual.edge_count());
    let xs: Vec<BitVector> = homology_basis(&dual_cx)
        .iter()
        .map(|x| {
            let edges: Vec<usize> = dual_cx
                .to_surface_edges(x)
                .into_iter()
                .map(|d| back[d].expect("non-open dual edges come from qubits"))
                .collect();
            cx.from_surface_edges(&edges)
        })
        .collect();
    pair_up("generic", &cx, &zs, &xs, k)
}

/// A maximal run of equally flagged edges along a boundary cycle.
#[derive(Clone, Debug)]
struct Run {
    hole: usize,
    edges: Vec<usize>,
}

/// Splits each boundary cycle into its closed runs, and records which holes
/// carry open edges.
fn closed_runs(s: &Surface, cycles: &[BoundaryCycle]) -> (Vec<Run>, Vec<usize>) {
    let mut runs = Vec::new();
    let mut open_holes = Vec::new();
    for (h, c) in cycles.iter().enumerate() {
        let len = c.edges.len();
        let Some(first_open) = c.edges.iter().position(|&e| s.is_open_edge(e)) else {
            runs.push(Run {
                hole: h,
                edges: c.edges.clone(),
            });
            continue;
        };
        open_holes.push(h);
        let mut current: Vec<usize> = Vec::new();
        for step in 1..=len {
            let e = c.edges[(first_open + step) % len];
            if s.is_open_edge(e) {
                if !current.is_empty() {
                    runs.push(Run {
                        hole: h,
                        edges: std::mem::take(&mut current),
                    });
                }
            } else {
                current.push(e);
            }
        }
    }
    (runs, open_holes)
}

/// Shortest path in `(V, E̊)` from any vertex in `from` to any vertex in `to`,
/// as surface edges.
fn primal_path(s: &Surface, from: &[usize], to: &[bool]) -> Option<Vec<usize>> {
    let mut prev = vec![None; s.vertex_count()];
    let mut seen = vec![false; s.vertex_count()];
    let mut queue = VecDeque::new();
    for &v in from {
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        if to[v] {
            let mut path = Vec::new();
            let mut cur = v;
            while let Some((p, e)) = prev[cur] {
                path.push(e);
                cur = p;
            }
            return Some(path);
        }
        for &e in s.vertex_edges(v) {
            if s.is_open_edge(e) {
                continue;
            }
            let w = s.edge(e).other(v);
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    None
}

/// Shortest dual path from a closed boundary edge in `from` to one in `to`,
/// crossing faces through non-open inner edges. Returns the crossed surface
/// edges including both end edges.
fn dual_path(s: &Surface, from: &[usize], to: &[bool]) -> Option<Vec<usize>> {
    let nf = s.face_count();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; nf];
    let mut start_edge = vec![usize::MAX; nf];
    let mut seen = vec![false; nf];
    let mut queue = VecDeque::new();
    for &e in from {
        let f = s.edge_faces(e)[0];
        if !seen[f] {
            seen[f] = true;
            start_edge[f] = e;
            queue.push_back(f);
        }
    }
    while let Some(f) = queue.pop_front() {
        if let Some(&end) = s.face(f).iter().find(|&&e| to[e]) {
            let mut path = vec![end];
            let mut cur = f;
            while let Some((p, e)) = prev[cur] {
                path.push(e);
                cur = p;
            }
            path.push(start_edge[cur]);
            return Some(path);
        }
        for &e in s.face(f) {
            let fs = s.edge_faces(e);
            if fs.len() != 2 || s.is_open_edge(e) {
                continue;
            }
            let g = if fs[0] == f { fs[1] } else { fs[0] };
            if !seen[g] {
                seen[g] = true;
                prev[g] = Some((f, e));
                queue.push_back(g);
            }
        }
    }
    None
}

/// Builds logicals from the boundary structure of a connected genus-0
/// surface: closed boundary paths and connectors between open holes on the
/// Z side, dual paths between closed paths and loops around open holes on
/// the X side.
pub fn logical_basis_boundary_strategy(s: &Surface) -> Result<LogicalBasis> {
    s.ensure_valid(Strictness::ALL)?;
    let (components, _) = s.components(|_| true);
    let cycles = s.boundary_cycles()?;
    let euler = s.vertex_count() as i64 - s.edge_count() as i64 + s.face_count() as i64;
    if components != 1 || euler + cycles.len() as i64 != 2 {
        return Err(Error::UnsupportedTopology(format!(
            "boundary strategy needs a connected genus-0 surface ({components} components, \
             Euler characteristic {euler}, {} boundary cycles)",
            cycles.len()
        )));
    }
    let k = h1_dim(s)?;
    let cx = boundary_maps(s);
    let (runs, open_holes) = closed_runs(s, &cycles);

    let mut zs = Vec::new();
    let mut xs = Vec::new();
    if let Some((last, rest)) = runs.split_last() {
        let mut to = vec![false; s.edge_count()];
        for &e in &last.edges {
            to[e] = true;
        }
        for run in rest {
            zs.push(cx.from_surface_edges(&run.edges));
            let path = dual_path(s, &run.edges, &to).ok_or_else(|| {
                Error::UnsupportedTopology(format!(
                    "no dual path from a closed path of hole {} to hole {}",
                    run.hole, last.hole
                ))
            })?;
            xs.push(cx.from_surface_edges(&path));
        }
    }
    if let Some((&last, rest)) = open_holes.split_last() {
        let open_vertices_of = |h: usize| -> Vec<usize> {
            cycles[h]
                .vertices
                .iter()
                .copied()
                .filter(|&v| s.is_open_vertex(v))
                .collect()
        };
        let mut to = vec![false; s.vertex_count()];
        for v in open_vertices_of(last) {
            to[v] = true;
        }
        for &h in rest {
            let path = primal_path(s, &open_vertices_of(h), &to).ok_or_else(|| {
                Error::UnsupportedTopology(format!("hole {h} is not connected to hole {last}"))
            })?;
            zs.push(cx.from_surface_edges(&path));
            let mut on_hole = vec![false; s.vertex_count()];
            for &v in &cycles[h].vertices {
                on_hole[v] = true;
            }
            let ring: Vec<usize> = (0..s.edge_count())
                .filter(|&e| {
                    let edge = s.edge(e);
                    on_hole[edge.u] != on_hole[edge.v]
                })
                .collect();
            xs.push(cx.from_surface_edges(&ring));
        }
    }
    pair_up("boundary", &cx, &zs, &xs, k)
}

/// Checks a basis against the code of `s`. An empty result means every check passed.
pub fn verify_logical_basis(s: &Surface, basis: &LogicalBasis) -> Vec<String> {
    let mut out = Vec::new();
    let cx = boundary_maps(s);
    match h1_dim(s) {
        Ok(k) if k != basis.k() => out.push(format!("basis has {} pairs, expected {k}", basis.k())),
        Err(e) => out.push(e.to_string()),
        _ => {}
    }
    let z_trivial = RowEchelon::from_matrix(&cx.d2.transpose());
    let x_trivial = RowEchelon::from_matrix(&cx.d1);
    let d2t = cx.d2.transpose();
    for (i, (x, z)) in basis.pairs.iter().enumerate() {
        if x.len() != cx.n_edges() || z.len() != cx.n_edges() {
            out.push(format!("pair {i} has the wrong length"));
            continue;
        }
        if !cx.d1.mul_vec(z).unwrap().is_zero() {
            out.push(format!("z {i} anticommutes with an X stabilizer"));
        } else if z_trivial.contains(z) {
            out.push(format!("z {i} is a product of Z stabilizers"));
        }
        if !d2t.mul_vec(x).unwrap().is_zero() {
            out.push(format!("x {i} anticommutes with a Z stabilizer"));
        } else if x_trivial.contains(x) {
            out.push(format!("x {i} is a product of X stabilizers"));
        }
        for (j, (_, zj)) in basis.pairs.iter().enumerate() {
            if zj.len() == x.len() && x.dot(zj) != (i == j) {
                out.push(format!("pairing of x {i} with z {j} is wrong"));
            }
        }
    }
    out
}
