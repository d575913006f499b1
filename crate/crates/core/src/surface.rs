//! Combinatorial surfaces with open and closed boundaries.
//!
//! A surface is a graph `(V, E)` together with a list of faces, each face a
//! cycle of edges. Edges lying in a single face form the boundary; some of
//! them are flagged open. Open vertices and faces are the boundary cells
//! touching an open edge, everything else on the boundary is closed.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub open: bool,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Self { u, v, open: false }
    }

    pub fn open(u: usize, v: usize) -> Self {
        Self { u, v, open: true }
    }

    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn has(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

/// The neighbourhood of a vertex as an alternating edge/face sequence.
///
/// For a cycle, `faces[i]` lies between `edges[i]` and `edges[(i + 1) % k]`.
/// For a path there is one more edge than faces and the two end edges are the
/// boundary edges at the vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wheel {
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
    pub cyclic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    /// Not on the boundary.
    Inner,
    /// On the boundary, not open.
    Closed,
    Open,
}

impl CellKind {
    pub fn is_boundary(self) -> bool {
        self != CellKind::Inner
    }

    pub fn is_open(self) -> bool {
        self == CellKind::Open
    }
}

/// Boundary classification of every cell.
///
/// The non-open sets (`V̊`, `E̊`, `F̊`) include the closed boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryClassification {
    pub vertices: Vec<CellKind>,
    pub edges: Vec<CellKind>,
    pub faces: Vec<CellKind>,
}

fn select(kinds: &[CellKind], pred: impl Fn(CellKind) -> bool) -> Vec<usize> {
    kinds
        .iter()
        .enumerate()
        .filter(|(_, &k)| pred(k))
        .map(|(i, _)| i)
        .collect()
}

impl BoundaryClassification {
    pub fn boundary_vertices(&self) -> Vec<usize> {
        select(&self.vertices, CellKind::is_boundary)
    }
    pub fn boundary_edges(&self) -> Vec<usize> {
        select(&self.edges, CellKind::is_boundary)
    }
    pub fn boundary_faces(&self) -> Vec<usize> {
        select(&self.faces, CellKind::is_boundary)
    }
    pub fn open_vertices(&self) -> Vec<usize> {
        select(&self.vertices, CellKind::is_open)
    }
    pub fn open_edges(&self) -> Vec<usize> {
        select(&self.edges, CellKind::is_open)
    }
    pub fn open_faces(&self) -> Vec<usize> {
        select(&self.faces, CellKind::is_open)
    }
    pub fn closed_vertices(&self) -> Vec<usize> {
        select(&self.vertices, |k| k == CellKind::Closed)
    }
    pub fn closed_edges(&self) -> Vec<usize> {
        select(&self.edges, |k| k == CellKind::Closed)
    }
    pub fn closed_faces(&self) -> Vec<usize> {
        select(&self.faces, |k| k == CellKind::Closed)
    }
    pub fn non_open_vertices(&self) -> Vec<usize> {
        select(&self.vertices, |k| !k.is_open())
    }
    pub fn non_open_edges(&self) -> Vec<usize> {
        select(&self.edges, |k| !k.is_open())
    }
    pub fn non_open_faces(&self) -> Vec<usize> {
        select(&self.faces, |k| !k.is_open())
    }
    pub fn inner_vertices(&self) -> Vec<usize> {
        select(&self.vertices, |k| k == CellKind::Inner)
    }
    pub fn inner_edges(&self) -> Vec<usize> {
        select(&self.edges, |k| k == CellKind::Inner)
    }
}

/// Opt-in checks on top of the structural invariants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Strictness {
    /// Every edge with two open endpoints must itself be open.
    pub no_distance_one: bool,
    /// The graph has no cycle shorter than 3.
    pub girth3: bool,
}

impl Strictness {
    pub const NONE: Strictness = Strictness {
        no_distance_one: false,
        girth3: false,
    };
    pub const ALL: Strictness = Strictness {
        no_distance_one: true,
        girth3: true,
    };
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
    },
    EdgeOutOfRange {
        face: usize,
        edge: usize,
    },
    CoordsLength {
        expected: usize,
        found: usize,
    },
    Loop {
        edge: usize,
    },
    DuplicateEdge {
        first: usize,
        second: usize,
    },
    RepeatedEdgeInFace {
        face: usize,
        edge: usize,
    },
    FaceNotCycle {
        face: usize,
    },
    FacesShareEdges {
        faces: [usize; 2],
        shared: Vec<usize>,
    },
    EdgeFaceCount {
        edge: usize,
        count: usize,
    },
    OpenEdgeNotOnBoundary {
        edge: usize,
    },
    VertexNeighbourhood {
        vertex: usize,
    },
    IsolatedVertex {
        vertex: usize,
    },
    DistanceOne {
        edge: usize,
    },
    ShortCycle {
        edges: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { edge, vertex } => {
                write!(f, "edge {edge} references missing vertex {vertex}")
            }
            Violation::EdgeOutOfRange { face, edge } => {
                write!(f, "face {face} references missing edge {edge}")
            }
            Violation::CoordsLength { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            Violation::Loop { edge } => write!(f, "edge {edge} is a loop"),
            Violation::DuplicateEdge { first, second } => {
                write!(f, "edges {first} and {second} join the same vertices")
            }
            Violation::RepeatedEdgeInFace { face, edge } => {
                write!(f, "face {face} contains edge {edge} more than once")
            }
            Violation::FaceNotCycle { face } => write!(f, "face {face} is not a single cycle"),
            Violation::FacesShareEdges { faces, shared } => write!(
                f,
                "faces {} and {} share edges {shared:?}",
                faces[0], faces[1]
            ),
            Violation::EdgeFaceCount { edge, count } => {
                write!(f, "edge {edge} lies in {count} faces")
            }
            Violation::OpenEdgeNotOnBoundary { edge } => {
                write!(f, "open edge {edge} is not a boundary edge")
            }
            Violation::VertexNeighbourhood { vertex } => write!(
                f,
                "faces around vertex {vertex} form neither a path nor a cycle"
            ),
            Violation::IsolatedVertex { vertex } => {
                write!(f, "vertex {vertex} lies in no face")
            }
            Violation::DistanceOne { edge } => {
                write!(f, "closed edge {edge} joins two open vertices")
            }
            Violation::ShortCycle { edges } => write!(f, "cycle {edges:?} is shorter than 3"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSurface(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
struct Incidence {
    vertex_edges: Vec<Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
    edge_faces: Vec<Vec<usize>>,
    face_vertices: Vec<Vec<usize>>,
}

/// An immutable cellulated surface.
#[derive(Clone)]
pub struct Surface {
    vertex_count: usize,
    edges: Vec<Edge>,
    faces: Vec<Vec<usize>>,
    coords: Option<Vec<[f64; 2]>>,
    inc: Incidence,
}

impl PartialEq for Surface {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.faces == other.faces
            && self.coords == other.coords
    }
}

impl fmt::Debug for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Surface")
            .field("vertex_count", &self.vertex_count)
            .field("edges", &self.edges.len())
            .field("faces", &self.faces.len())
            .finish()
    }
}

/// Orders a face's edges as a closed walk, or `None` if they do not form one
/// simple cycle. The walk starts at the lowest edge index and continues
/// toward its lower-indexed neighbour.
fn cyclic_order(edges: &[Edge], face: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    if face.len() < 2 {
        return None;
    }
    let mut at: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in face {
        at.entry(edges[e].u).or_default().push(e);
        at.entry(edges[e].v).or_default().push(e);
    }
    if at.values().any(|es| es.len() != 2) || at.len() != face.len() {
        return None;
    }
    let other_at = |w: usize, e: usize| -> usize {
        let es = &at[&w];
        if es[0] == e {
            es[1]
        } else {
            es[0]
        }
    };
    let first = *face.iter().min()?;
    let Edge { u, v, .. } = edges[first];
    let (nu, nv) = (other_at(u, first), other_at(v, first));
    // walk leaves `first` through the vertex it shares with the next edge
    let (mut cur, mut w) = if nu <= nv { (nu, u) } else { (nv, v) };
    let start_vertex = edges[first].other(w);
    let mut order = vec![first];
    let mut verts = vec![start_vertex, w];
    while cur != first {
        if order.len() > face.len() {
            return None;
        }
        order.push(cur);
        w = edges[cur].other(w);
        verts.push(w);
        cur = other_at(w, cur);
    }
    verts.pop();
    (order.len() == face.len()).then_some((order, verts))
}

impl Surface {
    /// Builds a surface, normalizing the edge order inside each face.
    ///
    /// Only index bounds are checked here; call [`Surface::validate`] for the
    /// structural invariants.
    pub fn new(
        vertex_count: usize,
        edges: Vec<Edge>,
        faces: Vec<Vec<usize>>,
        coords: Option<Vec<[f64; 2]>>,
    ) -> Result<Self> {
        let mut report = ValidationReport::default();
        for (i, e) in edges.iter().enumerate() {
            for w in [e.u, e.v] {
                if w >= vertex_count {
                    report
                        .violations
                        .push(Violation::VertexOutOfRange { edge: i, vertex: w });
                }
            }
        }
        for (i, f) in faces.iter().enumerate() {
            for &e in f {
                if e >= edges.len() {
                    report
                        .violations
                        .push(Violation::EdgeOutOfRange { face: i, edge: e });
                }
            }
        }
        if let Some(c) = &coords {
            if c.len() != vertex_count {
                report.violations.push(Violation::CoordsLength {
                    expected: vertex_count,
                    found: c.len(),
                });
            }
        }
        report.into_result()?;

        let mut face_vertices = Vec::with_capacity(faces.len());
        let faces = faces
            .into_iter()
            .map(|f| match cyclic_order(&edges, &f) {
                Some((order, verts)) => {
                    face_vertices.push(verts);
                    order
                }
                None => {
                    let mut sorted = f;
                    sorted.sort_unstable();
                    let mut verts: Vec<usize> = sorted
                        .iter()
                        .flat_map(|&e| [edges[e].u, edges[e].v])
                        .collect();
                    verts.sort_unstable();
                    verts.dedup();
                    face_vertices.push(verts);
                    sorted
                }
            })
            .collect::<Vec<_>>();

        let mut vertex_edges = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            vertex_edges[e.u].push(i);
            if e.v != e.u {
                vertex_edges[e.v].push(i);
            }
        }
        let mut edge_faces = vec![Vec::new(); edges.len()];
        let mut vertex_faces = vec![Vec::new(); vertex_count];
        for (fi, f) in faces.iter().enumerate() {
            for &e in f {
                if edge_faces[e].last() != Some(&fi) {
                    edge_faces[e].push(fi);
                }
            }
            for &w in &face_vertices[fi] {
                vertex_faces[w].push(fi);
            }
        }
        Ok(Self {
            vertex_count,
            edges,
            faces,
            coords,
            inc: Incidence {
                vertex_edges,
                vertex_faces,
                edge_faces,
                face_vertices,
            },
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Edges of face `f` in cyclic order.
    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    /// Vertices of face `f` in the cyclic order matching [`Surface::face`].
    pub fn face_vertices(&self, f: usize) -> &[usize] {
        &self.inc.face_vertices[f]
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    pub fn with_coords(mut self, coords: Option<Vec<[f64; 2]>>) -> Result<Self> {
        if let Some(c) = &coords {
            if c.len() != self.vertex_count {
                return Err(Error::InvalidSurface(ValidationReport {
                    violations: vec![Violation::CoordsLength {
                        expected: self.vertex_count,
                        found: c.len(),
                    }],
                }));
            }
        }
        self.coords = coords;
        Ok(self)
    }

    pub fn vertex_edges(&self, v: usize) -> &[usize] {
        &self.inc.vertex_edges[v]
    }

    pub fn vertex_faces(&self, v: usize) -> &[usize] {
        &self.inc.vertex_faces[v]
    }

    pub fn edge_faces(&self, e: usize) -> &[usize] {
        &self.inc.edge_faces[e]
    }

    pub fn is_open_edge(&self, e: usize) -> bool {
        self.edges[e].open
    }

    pub fn is_open_vertex(&self, v: usize) -> bool {
        self.inc.vertex_edges[v].iter().any(|&e| self.edges[e].open)
    }

    /// The alternating edge/face sequence around `v`, if it is a single path
    /// or cycle.
    pub fn wheel(&self, v: usize) -> Option<Wheel> {
        let edges = &self.inc.vertex_edges[v];
        let faces = &self.inc.vertex_faces[v];
        if faces.is_empty() {
            return None;
        }
        // each face through v holds exactly two edges at v
        let mut face_link: HashMap<usize, [usize; 2]> = HashMap::new();
        for &f in faces {
            let at_v: Vec<usize> = self.faces[f]
                .iter()
                .copied()
                .filter(|&e| self.edges[e].has(v))
                .collect();
            if at_v.len() != 2 {
                return None;
            }
            face_link.insert(f, [at_v[0], at_v[1]]);
        }
        let ends: Vec<usize> = edges
            .iter()
            .copied()
            .filter(|&e| self.inc.edge_faces[e].len() == 1)
            .collect();
        if edges.iter().any(|&e| self.inc.edge_faces[e].is_empty()) {
            return None;
        }
        let cyclic = match ends.len() {
            0 => true,
            2 => false,
            _ => return None,
        };
        let start = if cyclic {
            edges[0]
        } else {
            ends[0].min(ends[1])
        };
        let mut w_edges = vec![start];
        let mut w_faces = Vec::new();
        let mut cur = start;
        let mut prev_face = usize::MAX;
        while let Some(&f) = self.inc.edge_faces[cur].iter().find(|&&f| f != prev_face) {
            if w_faces.contains(&f) {
                break;
            }
            let [a, b] = face_link[&f];
            let next = if a == cur { b } else { a };
            w_faces.push(f);
            prev_face = f;
            if next == start {
                break;
            }
            w_edges.push(next);
            cur = next;
            if !cyclic && self.inc.edge_faces[cur].len() == 1 {
                break;
            }
        }
        let closed_up = cyclic && w_edges.len() == w_faces.len();
        let ok = w_edges.len() == edges.len()
            && w_faces.len() == faces.len()
            && (closed_up || (!cyclic && w_edges.len() == w_faces.len() + 1));
        ok.then_some(Wheel {
            edges: w_edges,
            faces: w_faces,
            cyclic,
        })
    }

    pub fn validate(&self, strict: Strictness) -> ValidationReport {
        let mut out = Vec::new();
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == e.v {
                out.push(Violation::Loop { edge: i });
                continue;
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            if let Some(&first) = pairs.get(&key) {
                out.push(Violation::DuplicateEdge { first, second: i });
            } else {
                pairs.insert(key, i);
            }
        }
        for (fi, f) in self.faces.iter().enumerate() {
            let mut seen = f.clone();
            seen.sort_unstable();
            let mut repeated = false;
            for w in seen.windows(2) {
                if w[0] == w[1] {
                    out.push(Violation::RepeatedEdgeInFace {
                        face: fi,
                        edge: w[0],
                    });
                    repeated = true;
                }
            }
            if !repeated && cyclic_order(&self.edges, f).is_none() {
                out.push(Violation::FaceNotCycle { face: fi });
            }
        }
        let mut shared: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (e, fs) in self.inc.edge_faces.iter().enumerate() {
            for (i, &a) in fs.iter().enumerate() {
                for &b in &fs[i + 1..] {
                    shared.entry((a.min(b), a.max(b))).or_default().push(e);
                }
            }
        }
        let mut multi: Vec<_> = shared.into_iter().filter(|(_, es)| es.len() > 1).collect();
        multi.sort();
        for ((a, b), es) in multi {
            out.push(Violation::FacesShareEdges {
                faces: [a, b],
                shared: es,
            });
        }
        for (e, fs) in self.inc.edge_faces.iter().enumerate() {
            if fs.is_empty() || fs.len() > 2 {
                out.push(Violation::EdgeFaceCount {
                    edge: e,
                    count: fs.len(),
                });
            } else if self.edges[e].open && fs.len() != 1 {
                out.push(Violation::OpenEdgeNotOnBoundary { edge: e });
            }
        }
        for v in 0..self.vertex_count {
            if self.inc.vertex_faces[v].is_empty() {
                out.push(Violation::IsolatedVertex { vertex: v });
            } else if self.wheel(v).is_none() {
                out.push(Violation::VertexNeighbourhood { vertex: v });
            }
        }
        if strict.no_distance_one {
            for (i, e) in self.edges.iter().enumerate() {
                if !e.open && self.is_open_vertex(e.u) && self.is_open_vertex(e.v) {
                    out.push(Violation::DistanceOne { edge: i });
                }
            }
        }
        if strict.girth3 {
            // a cycle of length < 3 in a multigraph is a loop or a parallel pair
            for (i, e) in self.edges.iter().enumerate() {
                if e.u == e.v {
                    out.push(Violation::ShortCycle { edges: vec![i] });
                } else if pairs[&(e.u.min(e.v), e.u.max(e.v))] != i {
                    out.push(Violation::ShortCycle {
                        edges: vec![pairs[&(e.u.min(e.v), e.u.max(e.v))], i],
                    });
                }
            }
        }
        ValidationReport { violations: out }
    }

    /// Fails with the full report unless the surface validates.
    pub fn ensure_valid(&self, strict: Strictness) -> Result<()> {
        self.validate(strict).into_result()
    }

    pub fn classify_boundary(&self) -> BoundaryClassification {
        let edges: Vec<CellKind> = (0..self.edges.len())
            .map(|e| {
                if self.edges[e].open {
                    CellKind::Open
                } else if self.inc.edge_faces[e].len() == 1 {
                    CellKind::Closed
                } else {
                    CellKind::Inner
                }
            })
            .collect();
        let vertices = (0..self.vertex_count)
            .map(|v| {
                let at = &self.inc.vertex_edges[v];
                if at.iter().any(|&e| edges[e] == CellKind::Open) {
                    CellKind::Open
                } else if at.iter().any(|&e| edges[e] == CellKind::Closed) {
                    CellKind::Closed
                } else {
                    CellKind::Inner
                }
            })
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|f| {
                if f.iter().any(|&e| edges[e] == CellKind::Open) {
                    CellKind::Open
                } else if f.iter().any(|&e| edges[e] == CellKind::Closed) {
                    CellKind::Closed
                } else {
                    CellKind::Inner
                }
            })
            .collect();
        BoundaryClassification {
            vertices,
            edges,
            faces,
        }
    }

    /// Component label per vertex for the subgraph keeping edges where `keep` holds.
    pub fn components(&self, keep: impl Fn(usize) -> bool) -> (usize, Vec<usize>) {
        let mut dsu = Dsu::new(self.vertex_count);
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) {
                dsu.union(e.u, e.v);
            }
        }
        dsu.labels()
    }

    /// Boundary cycles as closed walks `(edges, vertices)`, each starting at
    /// its lowest edge index.
    ///
    /// Requires every boundary vertex to meet exactly two boundary edges.
    pub fn boundary_cycles(&self) -> Result<Vec<BoundaryCycle>> {
        let is_bdry = |e: usize| self.inc.edge_faces[e].len() == 1;
        let mut used = vec![false; self.edges.len()];
        let mut cycles = Vec::new();
        for start in 0..self.edges.len() {
            if !is_bdry(start) || used[start] {
                continue;
            }
            let mut edges = vec![start];
            let mut verts = vec![self.edges[start].u];
            used[start] = true;
            let mut w = self.edges[start].v;
            let mut cur = start;
            while w != self.edges[start].u {
                let next: Vec<usize> = self.inc.vertex_edges[w]
                    .iter()
                    .copied()
                    .filter(|&e| e != cur && is_bdry(e))
                    .collect();
                if next.len() != 1 || used[next[0]] {
                    return Err(Error::UnsupportedTopology(format!(
                        "boundary is not a disjoint union of cycles at vertex {w}"
                    )));
                }
                verts.push(w);
                cur = next[0];
                used[cur] = true;
                edges.push(cur);
                w = self.edges[cur].other(w);
            }
            cycles.push(BoundaryCycle {
                edges,
                vertices: verts,
            });
        }
        Ok(cycles)
    }
}

/// A boundary component. `vertices[i]` is the start of `edges[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCycle {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Dense labels `0..count` in order of first appearance.
    pub(crate) fn labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut map = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut count = 0;
        for (x, label) in labels.iter_mut().enumerate() {
            let r = self.find(x);
            if map[r] == usize::MAX {
                map[r] = count;
                count += 1;
            }
            *label = map[r];
        }
        (count, labels)
    }
}

/// Components of `(V, E̊)` containing no open vertex.
pub fn kappa_no_open_vertex(s: &Surface) -> usize {
    let (count, labels) = s.components(|e| !s.is_open_edge(e));
    let mut touched = vec![false; count];
    for v in 0..s.vertex_count() {
        if s.is_open_vertex(v) {
            touched[labels[v]] = true;
        }
    }
    touched.iter().filter(|&&t| !t).count()
}

/// Components of `(V, E)` that carry at least one face and contain no closed
/// boundary edge. Face-free components (isolated vertices) are not counted.
pub fn kappa_no_closed_boundary_edge(s: &Surface) -> usize {
    let (count, labels) = s.components(|_| true);
    let mut has_face = vec![false; count];
    let mut has_closed = vec![false; count];
    for (i, e) in s.edges().iter().enumerate() {
        let c = labels[e.u];
        match s.edge_faces(i).len() {
            0 => {}
            1 if !e.open => {
                has_face[c] = true;
                has_closed[c] = true;
            }
            _ => has_face[c] = true,
        }
    }
    (0..count)
        .filter(|&c| has_face[c] && !has_closed[c])
        .count()
}

/// A failed equivalence of the local boundary characterization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundaryShapeViolation {
    /// Boundary status disagrees with the shape of the face neighbourhood or
    /// with the boundary edge count at the vertex.
    Vertex { vertex: usize },
    /// An edge between two boundary vertices that lies in two faces.
    Chord { edge: usize },
    /// A face touching the boundary only at a vertex.
    CornerFace { face: usize },
}

/// Checks the equivalent characterizations of boundary cells cell by cell.
pub fn boundary_shape_violations(s: &Surface) -> Vec<BoundaryShapeViolation> {
    let cls = s.classify_boundary();
    let mut out = Vec::new();
    for v in 0..s.vertex_count() {
        let on = cls.vertices[v].is_boundary();
        let path = s.wheel(v).map(|w| !w.cyclic).unwrap_or(false);
        let bdry_edges = s
            .vertex_edges(v)
            .iter()
            .filter(|&&e| cls.edges[e].is_boundary())
            .count();
        if on != path || on != (bdry_edges == 2) {
            out.push(BoundaryShapeViolation::Vertex { vertex: v });
        }
    }
    for (i, e) in s.edges().iter().enumerate() {
        let ends = cls.vertices[e.u].is_boundary() && cls.vertices[e.v].is_boundary();
        if cls.edges[i].is_boundary() != ends {
            out.push(BoundaryShapeViolation::Chord { edge: i });
        }
    }
    for f in 0..s.face_count() {
        let touches = s
            .face_vertices(f)
            .iter()
            .any(|&v| cls.vertices[v].is_boundary());
        if cls.faces[f].is_boundary() != touches {
            out.push(BoundaryShapeViolation::CornerFace { face: f });
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct SurfaceFile {
    vertex_count: usize,
    edges: Vec<Edge>,
    faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<[f64; 2]>>,
}

impl Serialize for Surface {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        SurfaceFile {
            vertex_count: self.vertex_count,
            edges: self.edges.clone(),
            faces: self.faces.clone(),
            coords: self.coords.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Surface {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let f = SurfaceFile::deserialize(deserializer)?;
        Surface::new(f.vertex_count, f.edges, f.faces, f.coords).map_err(serde::de::Error::custom)
    }
}

impl Surface {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("surface serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unit square with vertices 0..4 counter-clockwise.
    fn square(open: &[usize]) -> Surface {
        let mut edges = vec![
            Edge::new(0, 1),
            Edge::new(1, 2),
            Edge::new(2, 3),
            Edge::new(3, 0),
        ];
        for &e in open {
            edges[e].open = true;
        }
        Surface::new(4, edges, vec![vec![2, 0, 3, 1]], None).unwrap()
    }

    #[test]
    fn faces_are_normalized() {
        let s = square(&[]);
        assert_eq!(s.face(0), &[0, 1, 2, 3]);
        assert_eq!(s.face_vertices(0), &[0, 1, 2, 3]);
    }

    #[test]
    fn square_classification() {
        let s = square(&[2]);
        assert!(s.validate(Strictness::ALL).is_empty());
        let c = s.classify_boundary();
        assert_eq!(c.open_edges(), vec![2]);
        assert_eq!(c.open_vertices(), vec![2, 3]);
        assert_eq!(c.closed_vertices(), vec![0, 1]);
        assert_eq!(c.open_faces(), vec![0]);
        assert_eq!(c.non_open_edges(), vec![0, 1, 3]);
        assert_eq!(kappa_no_open_vertex(&s), 0);
        assert_eq!(kappa_no_closed_boundary_edge(&s), 0);
    }

    #[test]
    fn corner_wheel_is_a_path() {
        let s = square(&[]);
        let w = s.wheel(0).unwrap();
        assert!(!w.cyclic);
        assert_eq!(w.faces, vec![0]);
        assert_eq!(w.edges, vec![0, 3]);
    }

    #[test]
    fn rejects_bad_faces() {
        let edges = vec![
            Edge::new(0, 1),
            Edge::new(1, 2),
            Edge::new(2, 0),
            Edge::new(2, 3),
        ];
        let s = Surface::new(4, edges, vec![vec![0, 1, 3]], None).unwrap();
        let r = s.validate(Strictness::NONE);
        assert!(r.violations.contains(&Violation::FaceNotCycle { face: 0 }));
        assert!(r
            .violations
            .contains(&Violation::EdgeFaceCount { edge: 2, count: 0 }));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Surface::new(2, vec![Edge::new(0, 2)], vec![], None).is_err());
        assert!(Surface::new(2, vec![Edge::new(0, 1)], vec![vec![1]], None).is_err());
    }

    #[test]
    fn distance_one_edge_is_strict_violation() {
        // two triangles glued along edge 1-2; opening 0-1 and 2-3 makes 1-2 bad
        let edges = vec![
            Edge::open(0, 1),
            Edge::new(1, 2),
            Edge::new(2, 0),
            Edge::open(2, 3),
            Edge::new(3, 1),
        ];
        let s = Surface::new(4, edges, vec![vec![0, 1, 2], vec![1, 3, 4]], None).unwrap();
        assert!(s.validate(Strictness::NONE).is_empty());
        // every vertex touches an open edge, so all three closed edges are flagged
        assert_eq!(
            s.validate(Strictness::ALL).violations,
            vec![
                Violation::DistanceOne { edge: 1 },
                Violation::DistanceOne { edge: 2 },
                Violation::DistanceOne { edge: 4 }
            ]
        );
    }

    #[test]
    fn json_roundtrip_is_stable() {
        let s = square(&[1]);
        let text = s.to_json();
        assert_eq!(
            text,
            r#"{"vertex_count":4,"edges":[{"u":0,"v":1,"open":false},{"u":1,"v":2,"open":true},{"u":2,"v":3,"open":false},{"u":3,"v":0,"open":false}],"faces":[[0,1,2,3]]}"#
        );
        let back = Surface::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn boundary_cycle_of_square() {
        let s = square(&[]);
        let cycles = s.boundary_cycles().unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].edges, vec![0, 1, 2, 3]);
        assert_eq!(cycles[0].vertices, vec![0, 1, 2, 3]);
    }
}
