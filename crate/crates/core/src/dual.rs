//! Dual cellulation with open and closed boundaries exchanged.
//!
//! Cell order in the dual is fixed: vertices are faces then closed boundary
//! edges; edges are inner edges, then closed boundary edges, then one open
//! edge per closed boundary vertex; faces are inner vertices then closed
//! boundary vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{BoundaryClassification, CellKind, Edge, Strictness, Surface, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "kebab-case")]
pub enum LocalDualNode {
    Face(usize),
    BoundaryEdge(usize),
}

/// `F_v` for an inner vertex, or `F̄_v` for a boundary vertex: the faces
/// around `v`, closed up by the two boundary edges at `v` when it lies on
/// the boundary.
pub fn local_dual_cycle(s: &Surface, v: usize) -> Result<Vec<LocalDualNode>> {
    let wheel = s.wheel(v).ok_or_else(|| {
        Error::InvalidSurface(crate::surface::ValidationReport {
            violations: vec![Violation::VertexNeighbourhood { vertex: v }],
        })
    })?;
    let mut out = Vec::with_capacity(wheel.faces.len() + 2);
    if !wheel.cyclic {
        out.push(LocalDualNode::BoundaryEdge(wheel.edges[0]));
    }
    out.extend(wheel.faces.iter().map(|&f| LocalDualNode::Face(f)));
    if !wheel.cyclic {
        out.push(LocalDualNode::BoundaryEdge(*wheel.edges.last().unwrap()));
    }
    Ok(out)
}

/// Index bijections between primal cells and dual cells, as `[primal, dual]` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCorrespondence {
    pub face_to_dual_vertex: Vec<[usize; 2]>,
    pub closed_boundary_edge_to_dual_open_vertex: Vec<[usize; 2]>,
    pub interior_edge_to_dual_edge: Vec<[usize; 2]>,
    pub closed_boundary_vertex_to_dual_open_edge: Vec<[usize; 2]>,
    pub interior_vertex_to_dual_face: Vec<[usize; 2]>,
    pub closed_boundary_vertex_to_dual_open_face: Vec<[usize; 2]>,
}

impl DualCorrespondence {
    /// Dual edge index of each primal edge; `None` for open edges.
    pub fn edge_map(&self, edge_count: usize) -> Vec<Option<usize>> {
        let mut m = vec![None; edge_count];
        for &[e, d] in &self.interior_edge_to_dual_edge {
            m[e] = Some(d);
        }
        m
    }

    /// Primal edge of each dual edge; `None` for open dual edges.
    pub fn dual_edge_preimage(&self, dual_edge_count: usize) -> Vec<Option<usize>> {
        let mut m = vec![None; dual_edge_count];
        for &[e, d] in &self.interior_edge_to_dual_edge {
            m[d] = Some(e);
        }
        m
    }
}

fn centroid(s: &Surface, verts: &[usize]) -> Option<[f64; 2]> {
    let c = s.coords()?;
    let n = verts.len() as f64;
    let (x, y) = verts
        .iter()
        .fold((0.0, 0.0), |(x, y), &v| (x + c[v][0], y + c[v][1]));
    Some([x / n, y / n])
}

/// Builds the dual surface. Requires a strictly valid input.
pub fn dualize(s: &Surface) -> Result<(Surface, DualCorrespondence)> {
    s.ensure_valid(Strictness::ALL)?;
    let cls = s.classify_boundary();
    let mut corr = DualCorrespondence::default();

    let nf = s.face_count();
    let mut edge_vertex = vec![usize::MAX; s.edge_count()];
    let mut coords = s.coords().map(|_| Vec::new());
    for f in 0..nf {
        corr.face_to_dual_vertex.push([f, f]);
        if let Some(c) = coords.as_mut() {
            c.push(centroid(s, s.face_vertices(f)).unwrap());
        }
    }
    let mut vertex_count = nf;
    for e in cls.closed_edges() {
        edge_vertex[e] = vertex_count;
        corr.closed_boundary_edge_to_dual_open_vertex
            .push([e, vertex_count]);
        if let Some(c) = coords.as_mut() {
            let edge = s.edge(e);
            c.push(centroid(s, &[edge.u, edge.v]).unwrap());
        }
        vertex_count += 1;
    }

    let mut edges = Vec::new();
    let mut dual_of_edge = vec![usize::MAX; s.edge_count()];
    for e in cls.inner_edges() {
        let fs = s.edge_faces(e);
        dual_of_edge[e] = edges.len();
        corr.interior_edge_to_dual_edge.push([e, edges.len()]);
        edges.push(Edge::new(fs[0], fs[1]));
    }
    for e in cls.closed_edges() {
        dual_of_edge[e] = edges.len();
        corr.interior_edge_to_dual_edge.push([e, edges.len()]);
        edges.push(Edge::new(edge_vertex[e], s.edge_faces(e)[0]));
    }
    corr.interior_edge_to_dual_edge.sort_unstable();

    let closed_vertices = cls.closed_vertices();
    let mut wheels = Vec::with_capacity(s.vertex_count());
    for v in 0..s.vertex_count() {
        wheels.push(s.wheel(v).expect("validated surface has wheels"));
    }
    let mut open_edge_of_vertex = vec![usize::MAX; s.vertex_count()];
    for &v in &closed_vertices {
        let w = &wheels[v];
        let (a, b) = (w.edges[0], *w.edges.last().unwrap());
        open_edge_of_vertex[v] = edges.len();
        corr.closed_boundary_vertex_to_dual_open_edge
            .push([v, edges.len()]);
        edges.push(Edge::open(edge_vertex[a], edge_vertex[b]));
    }

    let mut faces = Vec::new();
    for v in cls.inner_vertices() {
        corr.interior_vertex_to_dual_face.push([v, faces.len()]);
        faces.push(
            wheels[v]
                .edges
                .iter()
                .map(|&e| dual_of_edge[e])
                .collect::<Vec<_>>(),
        );
    }
    for &v in &closed_vertices {
        corr.closed_boundary_vertex_to_dual_open_face
            .push([v, faces.len()]);
        let mut f: Vec<usize> = wheels[v].edges.iter().map(|&e| dual_of_edge[e]).collect();
        f.push(open_edge_of_vertex[v]);
        faces.push(f);
    }

    let dual = Surface::new(vertex_count, edges, faces, coords)?;
    let report = dual.validate(Strictness::ALL);
    if !report.is_empty() {
        let degenerate = report.violations.iter().any(|v| {
            matches!(
                v,
                Violation::Loop { .. }
                    | Violation::DuplicateEdge { .. }
                    | Violation::ShortCycle { .. }
            )
        });
        let what = if degenerate {
            "dual has a loop or multiple edge; the input girth is too small"
        } else {
            "dual fails validation"
        };
        return Err(Error::DegenerateDual(format!("{what}: {report}")));
    }
    Ok((dual, corr))
}

/// Cell counts per boundary class, used to compare a surface with its dual.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CellCounts {
    pub inner_vertices: usize,
    pub closed_vertices: usize,
    pub open_vertices: usize,
    pub inner_edges: usize,
    pub closed_edges: usize,
    pub open_edges: usize,
    pub inner_faces: usize,
    pub closed_faces: usize,
    pub open_faces: usize,
}

impl CellCounts {
    pub fn of(s: &Surface) -> Self {
        let c = s.classify_boundary();
        let count = |ks: &[CellKind], k: CellKind| ks.iter().filter(|&&x| x == k).count();
        CellCounts {
            inner_vertices: count(&c.vertices, CellKind::Inner),
            closed_vertices: count(&c.vertices, CellKind::Closed),
            open_vertices: count(&c.vertices, CellKind::Open),
            inner_edges: count(&c.edges, CellKind::Inner),
            closed_edges: count(&c.edges, CellKind::Closed),
            open_edges: count(&c.edges, CellKind::Open),
            inner_faces: count(&c.faces, CellKind::Inner),
            closed_faces: count(&c.faces, CellKind::Closed),
            open_faces: count(&c.faces, CellKind::Open),
        }
    }
}

fn check_map(
    name: &str,
    pairs: &[[usize; 2]],
    primal: &[usize],
    dual_kinds: &[CellKind],
    dual_ok: impl Fn(CellKind) -> bool,
    out: &mut Vec<String>,
) {
    let mut lhs: Vec<usize> = pairs.iter().map(|p| p[0]).collect();
    lhs.sort_unstable();
    if lhs != primal {
        out.push(format!(
            "{name}: domain does not match the primal cell class"
        ));
    }
    let mut rhs: Vec<usize> = pairs.iter().map(|p| p[1]).collect();
    rhs.sort_unstable();
    let expected: Vec<usize> = (0..dual_kinds.len())
        .filter(|&i| dual_ok(dual_kinds[i]))
        .collect();
    if rhs != expected {
        out.push(format!("{name}: image does not match the dual cell class"));
    }
}

/// Verifies the six cardinality identities and the bijections behind them.
/// An empty result means every check passed.
pub fn check_correspondences(s: &Surface, d: &Surface, c: &DualCorrespondence) -> Vec<String> {
    let p = s.classify_boundary();
    let q = d.classify_boundary();
    let mut out = Vec::new();
    let identities = [
        ("|F| = |V̊*|", s.face_count(), q.non_open_vertices().len()),
        (
            "|∂_C E| = |∂_O V*|",
            p.closed_edges().len(),
            q.open_vertices().len(),
        ),
        (
            "|E̊| = |E̊*|",
            p.non_open_edges().len(),
            q.non_open_edges().len(),
        ),
        (
            "|∂_C V| = |∂_O E*|",
            p.closed_vertices().len(),
            q.open_edges().len(),
        ),
        (
            "|V \\ ∂V| = |F̊*|",
            p.inner_vertices().len(),
            q.non_open_faces().len(),
        ),
        (
            "|∂_C V| = |∂_O F*|",
            p.closed_vertices().len(),
            q.open_faces().len(),
        ),
    ];
    for (name, a, b) in identities {
        if a != b {
            out.push(format!("{name} fails: {a} != {b}"));
        }
    }
    check_bijections(&p, &q, s, c, &mut out);
    out
}

fn check_bijections(
    p: &BoundaryClassification,
    q: &BoundaryClassification,
    s: &Surface,
    c: &DualCorrespondence,
    out: &mut Vec<String>,
) {
    let faces: Vec<usize> = (0..s.face_count()).collect();
    check_map(
        "face_to_dual_vertex",
        &c.face_to_dual_vertex,
        &faces,
        &q.vertices,
        |k| !k.is_open(),
        out,
    );
    check_map(
        "closed_boundary_edge_to_dual_open_vertex",
        &c.closed_boundary_edge_to_dual_open_vertex,
        &p.closed_edges(),
        &q.vertices,
        CellKind::is_open,
        out,
    );
    check_map(
        "interior_edge_to_dual_edge",
        &c.interior_edge_to_dual_edge,
        &p.non_open_edges(),
        &q.edges,
        |k| !k.is_open(),
        out,
    );
    check_map(
        "closed_boundary_vertex_to_dual_open_edge",
        &c.closed_boundary_vertex_to_dual_open_edge,
        &p.closed_vertices(),
        &q.edges,
        CellKind::is_open,
        out,
    );
    check_map(
        "interior_vertex_to_dual_face",
        &c.interior_vertex_to_dual_face,
        &p.inner_vertices(),
        &q.faces,
        |k| !k.is_open(),
        out,
    );
    check_map(
        "closed_boundary_vertex_to_dual_open_face",
        &c.closed_boundary_vertex_to_dual_open_face,
        &p.closed_vertices(),
        &q.faces,
        CellKind::is_open,
        out,
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Surface {
        let edges = vec![
            Edge::new(0, 1),
            Edge::new(1, 2),
            Edge::new(2, 3),
            Edge::new(3, 0),
        ];
        Surface::new(4, edges, vec![vec![0, 1, 2, 3]], None).unwrap()
    }

    #[test]
    fn corner_vertex_local_cycle() {
        let s = unit_square();
        let c = local_dual_cycle(&s, 0).unwrap();
        assert_eq!(
            c,
            vec![
                LocalDualNode::BoundaryEdge(0),
                LocalDualNode::Face(0),
                LocalDualNode::BoundaryEdge(3)
            ]
        );
    }

    #[test]
    fn dual_of_closed_square() {
        // one dual vertex for the face, four open dual vertices on the edges
        let s = unit_square();
        let (d, c) = dualize(&s).unwrap();
        assert_eq!(d.vertex_count(), 5);
        assert_eq!(d.edge_count(), 8);
        assert_eq!(d.face_count(), 4);
        assert!(check_correspondences(&s, &d, &c).is_empty());
        let cls = d.classify_boundary();
        assert_eq!(cls.open_vertices().len(), 4);
        assert_eq!(cls.open_edges().len(), 4);
    }
}
