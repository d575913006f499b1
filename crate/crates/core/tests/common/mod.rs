#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use homolattice::arch::lattice::{build_patch, LatticeEdge};
use homolattice::arch::{
    gen_diamond_hole, gen_mixed_diamond_hole, gen_plain_square, gen_rotated_square,
    gen_square_hole, gen_torus,
};
use homolattice::{Edge, Strictness, Surface};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub name: String,
    pub surface: Surface,
    /// Passes validation with both strict flags.
    pub strict: bool,
    /// Connected genus-0 surface, so the boundary strategy applies.
    pub planar: bool,
}

fn fixture(name: impl Into<String>, surface: Surface, planar: bool) -> Fixture {
    let strict = surface.validate(Strictness::ALL).is_empty();
    Fixture {
        name: name.into(),
        surface,
        strict,
        planar,
    }
}

fn rect_faces(w: i64, h: i64) -> BTreeSet<(i64, i64)> {
    (0..w).flat_map(|i| (0..h).map(move |j| (i, j))).collect()
}

/// `w × h` rectangle with the left and right sides open.
pub fn open_sides_rectangle(w: i64, h: i64) -> Surface {
    let open = (0..h)
        .flat_map(|j| [LatticeEdge::V(0, j), LatticeEdge::V(w, j)])
        .collect();
    build_patch(&rect_faces(w, h), &open).unwrap()
}

/// 2 × 2 square lattice with the right side open.
pub fn one_open_side() -> Surface {
    let open = (0..2).map(|j| LatticeEdge::V(2, j)).collect();
    build_patch(&rect_faces(2, 2), &open).unwrap()
}

/// Closed edges joining two open vertices: a single column with both long
/// sides open.
pub fn distance_one_strip() -> Surface {
    open_sides_rectangle(1, 3)
}

pub fn cube() -> Surface {
    // bottom square 0..4, top square 4..8
    let edges = vec![
        Edge::new(0, 1),
        Edge::new(1, 2),
        Edge::new(2, 3),
        Edge::new(3, 0),
        Edge::new(4, 5),
        Edge::new(5, 6),
        Edge::new(6, 7),
        Edge::new(7, 4),
        Edge::new(0, 4),
        Edge::new(1, 5),
        Edge::new(2, 6),
        Edge::new(3, 7),
    ];
    let faces = vec![
        vec![0, 1, 2, 3],
        vec![4, 5, 6, 7],
        vec![0, 9, 4, 8],
        vec![1, 10, 5, 9],
        vec![2, 11, 6, 10],
        vec![3, 8, 7, 11],
    ];
    Surface::new(8, edges, faces, None).unwrap()
}

pub fn disjoint_union(a: &Surface, b: &Surface) -> Surface {
    let (nv, ne) = (a.vertex_count(), a.edge_count());
    let mut edges = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|e| Edge {
        u: e.u + nv,
        v: e.v + nv,
        open: e.open,
    }));
    let mut faces = a.faces().to_vec();
    faces.extend(
        b.faces()
            .iter()
            .map(|f| f.iter().map(|&e| e + ne).collect()),
    );
    Surface::new(nv + b.vertex_count(), edges, faces, None).unwrap()
}

/// Plain lattice with single-face holes; `open_holes` lists which of them
/// have their whole boundary open.
pub fn punctured_plane(w: i64, h: i64, holes: &[(i64, i64)], open_holes: &[(i64, i64)]) -> Surface {
    let mut faces = rect_faces(w, h);
    let mut open = HashSet::new();
    for &(i, j) in holes {
        faces.remove(&(i, j));
    }
    for &(i, j) in open_holes {
        faces.remove(&(i, j));
        open.extend(homolattice::arch::lattice::face_edges(i, j));
    }
    build_patch(&faces, &open).unwrap()
}

/// Sphere with four closed and two open boundary cycles.
pub fn six_hole_sphere() -> Surface {
    punctured_plane(12, 3, &[(1, 1), (3, 1), (5, 1)], &[(7, 1), (10, 1)])
}

/// A 2 × 2 hole in a 6 × 6 patch, with the two bottom edges of the hole open.
pub fn single_mixed_hole() -> Surface {
    let mut faces = rect_faces(6, 6);
    for (i, j) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        faces.remove(&(i, j));
    }
    let open = [LatticeEdge::H(2, 2), LatticeEdge::H(3, 2)]
        .into_iter()
        .collect();
    build_patch(&faces, &open).unwrap()
}

/// A 2 × 2 hole whose boundary alternates open, closed, open, closed by side.
pub fn alternating_hole() -> Surface {
    let mut faces = rect_faces(8, 8);
    for (i, j) in [(3, 3), (4, 3), (3, 4), (4, 4)] {
        faces.remove(&(i, j));
    }
    let open = [
        LatticeEdge::H(3, 3),
        LatticeEdge::H(4, 3),
        LatticeEdge::H(3, 5),
        LatticeEdge::H(4, 5),
    ]
    .into_iter()
    .collect();
    build_patch(&faces, &open).unwrap()
}

/// Torus with faces removed; listed faces become holes, the first
/// `open_count` of them with open boundary. Holes must not touch, even at a
/// corner.
pub fn punctured_torus(l: usize, holes: &[usize], open_count: usize) -> Surface {
    let t = gen_torus(l).unwrap();
    let mut edges = t.edges().to_vec();
    for &f in &holes[..open_count] {
        for &e in t.face(f) {
            edges[e].open = true;
        }
    }
    let faces = (0..t.face_count())
        .filter(|f| !holes.contains(f))
        .map(|f| t.face(f).to_vec())
        .collect();
    Surface::new(t.vertex_count(), edges, faces, None).unwrap()
}

/// Path of three closed edges between two open vertices, with no faces.
pub fn open_terminated_path() -> Surface {
    let edges = vec![
        Edge::open(4, 0),
        Edge::new(0, 1),
        Edge::new(1, 2),
        Edge::new(2, 3),
        Edge::open(3, 5),
    ];
    Surface::new(6, edges, vec![], None).unwrap()
}

pub fn all_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for l in 3..=5 {
        out.push(fixture(
            format!("torus L={l}"),
            gen_torus(l).unwrap(),
            false,
        ));
    }
    for (l, l2) in [(1, 1), (2, 2), (3, 2), (4, 3)] {
        out.push(fixture(
            format!("plain {l}x{l2}"),
            gen_plain_square(l, l2).unwrap(),
            true,
        ));
    }
    for (l, l2) in [(1, 1), (2, 2), (2, 3), (3, 4)] {
        out.push(fixture(
            format!("rotated {l}x{l2}"),
            gen_rotated_square(l, l2).unwrap(),
            true,
        ));
    }
    for (h, h2, t) in [
        (1, 1, 1),
        (2, 1, 1),
        (2, 2, 1),
        (1, 1, 2),
        (2, 1, 2),
        (2, 2, 2),
    ] {
        out.push(fixture(
            format!("Sq({h},{h2},{t})"),
            gen_square_hole(h, h2, t).unwrap(),
            true,
        ));
        out.push(fixture(
            format!("D({h},{h2},{t})"),
            gen_diamond_hole(h, h2, t).unwrap(),
            true,
        ));
    }
    for (h, h2) in [(1, 1), (2, 1), (2, 2)] {
        out.push(fixture(
            format!("D4({h},{h2},2)"),
            gen_mixed_diamond_hole(h, h2, 2).unwrap(),
            true,
        ));
    }
    out.push(fixture(
        "open-sides rectangle 4x3",
        open_sides_rectangle(4, 3),
        true,
    ));
    out.push(fixture(
        "open-sides rectangle 2x2",
        open_sides_rectangle(2, 2),
        true,
    ));
    out.push(fixture("2x2 with one open side", one_open_side(), true));
    out.push(fixture("distance-one strip", distance_one_strip(), true));
    out.push(fixture("cube", cube(), true));
    out.push(fixture(
        "two cubes",
        disjoint_union(&cube(), &cube()),
        false,
    ));
    out.push(fixture(
        "sphere with 4 closed and 2 open holes",
        six_hole_sphere(),
        true,
    ));
    out.push(fixture("single mixed hole", single_mixed_hole(), true));
    out.push(fixture("alternating hole", alternating_hole(), true));
    out.push(fixture(
        "torus with 2 open and 2 closed holes",
        punctured_torus(8, &[9, 13, 41, 45], 2),
        false,
    ));
    out
}

/// Random small cellulations: patches of a square grid with some interior
/// edges erased (merging faces) and some boundary edges opened. Candidates
/// that fail validation are discarded.
pub fn random_cellulations(seed: u64, count: usize) -> Vec<Surface> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(s) = random_candidate(&mut rng) {
            if s.validate(Strictness::NONE).is_empty() {
                out.push(s);
            }
        }
    }
    out
}

fn random_candidate(rng: &mut ChaCha8Rng) -> Option<Surface> {
    let (w, h) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let faces: BTreeSet<(i64, i64)> = rect_faces(w, h)
        .into_iter()
        .filter(|_| rng.gen_bool(0.85))
        .collect();
    if faces.is_empty() {
        return None;
    }
    let s = build_patch(&faces, &HashSet::new()).ok()?;
    let mut edges = s.edges().to_vec();
    let mut face_sets: Vec<Option<Vec<usize>>> = s.faces().iter().cloned().map(Some).collect();
    let mut erased = vec![false; edges.len()];
    // merge a few adjacent face pairs across a shared edge
    let mut inner: Vec<usize> = (0..edges.len())
        .filter(|&e| s.edge_faces(e).len() == 2)
        .collect();
    inner.shuffle(rng);
    let mut owner: Vec<usize> = (0..face_sets.len()).collect();
    for &e in inner.iter().take(rng.gen_range(0..=3)) {
        let fs = s.edge_faces(e);
        let (a, b) = (root(&owner, fs[0]), root(&owner, fs[1]));
        if a == b {
            continue;
        }
        let mut merged: Vec<usize> = face_sets[a].take()?;
        merged.extend(face_sets[b].take()?);
        merged.retain(|&x| x != e);
        face_sets[a] = Some(merged);
        owner[b] = a;
        erased[e] = true;
    }
    for (i, e) in edges.iter_mut().enumerate() {
        if !erased[i] && s.edge_faces(i).len() == 1 && rng.gen_bool(0.3) {
            e.open = true;
        }
    }
    // drop erased edges and reindex
    let mut remap = vec![usize::MAX; edges.len()];
    let mut kept = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if !erased[i] {
            remap[i] = kept.len();
            kept.push(*e);
        }
    }
    let faces: Vec<Vec<usize>> = face_sets
        .into_iter()
        .flatten()
        .map(|f| f.into_iter().map(|e| remap[e]).collect())
        .collect();
    let used: BTreeSet<usize> = kept.iter().flat_map(|e| [e.u, e.v]).collect();
    let vmap: std::collections::HashMap<usize, usize> =
        used.iter().enumerate().map(|(n, &v)| (v, n)).collect();
    let kept = kept
        .into_iter()
        .map(|e| Edge {
            u: vmap[&e.u],
            v: vmap[&e.v],
            open: e.open,
        })
        .collect();
    Surface::new(used.len(), kept, faces, None).ok()
}

fn root(owner: &[usize], mut f: usize) -> usize {
    while owner[f] != f {
        f = owner[f];
    }
    f
}
