//! Exact minimum weight of a non-trivial relative cycle.
//!
//! The search runs breadth-first over a cover of the graph whose sheets are
//! indexed by the values of `m = dim H1` cohomology functionals. All open
//! vertices are merged into one terminal so that open-to-open paths become
//! closed walks. A closed walk returning to its base on a non-zero sheet is a
//! non-trivial cycle once reduced mod 2, and the shortest such walk has the
//! minimum weight.

use std::collections::VecDeque;

use serde::Serialize;

use crate::dual::dualize;
use crate::error::{Error, Result};
use crate::f2linalg::{kernel_basis, BitVector, RowEchelon};
use crate::homology::{boundary_maps, h1_dim, ChainComplex};
use crate::surface::Surface;

/// Default cap on `m`; the cover has `2^m` sheets.
pub const DEFAULT_BUDGET: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// Primal lattice, gives `d_Z`.
    Z,
    /// Dual lattice, gives `d_X`.
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact { budget: usize },
    BruteForce { w_max: usize },
}

impl Method {
    pub fn exact() -> Self {
        Method::Exact {
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Exact { .. } => "exact-search",
            Method::BruteForce { .. } => "brute-force",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub d: usize,
    /// Minimum-weight cycle over the primal qubit indexing (`E̊` of the input).
    pub witness: BitVector,
    /// The witness as surface edge indices of the input.
    pub witness_edges: Vec<usize>,
    pub side: Side,
    pub method: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteForceOutcome {
    Found(DistanceResult),
    Exhausted(usize),
}

/// `m` functionals detecting non-trivial homology classes of relative cycles.
///
/// A basis of `ker d2ᵀ` reduced modulo the row span of `d1`, taking the first
/// independent vectors in kernel-basis order.
pub(crate) fn homology_functionals(cx: &ChainComplex) -> Vec<BitVector> {
    let mut span = RowEchelon::from_matrix(&cx.d1);
    kernel_basis(&cx.d2.transpose())
        .into_iter()
        .filter(|u| span.insert(u))
        .collect()
}

struct CoverGraph {
    /// Adjacency `(neighbour, chain index, signature)` per node.
    adj: Vec<Vec<(usize, usize, u32)>>,
}

fn cover_graph(cx: &ChainComplex, s: &Surface, functionals: &[BitVector]) -> CoverGraph {
    let n_inner = cx.vertices.len();
    let terminal = n_inner;
    let mut adj = vec![Vec::new(); n_inner + 1];
    for (j, &e) in cx.edges.iter().enumerate() {
        let edge = s.edge(e);
        let node = |w: usize| cx.vertex_slot[w].unwrap_or(terminal);
        let (a, b) = (node(edge.u), node(edge.v));
        let sig = functionals
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, u)| acc | ((u.get(j) as u32) << i));
        adj[a].push((b, j, sig));
        if a != b {
            adj[b].push((a, j, sig));
        }
    }
    CoverGraph { adj }
}

/// Shortest closed walk with non-zero signature based at `base`, shorter
/// than `bound`. Returns the chain indices along the walk.
fn shortest_from(g: &CoverGraph, sheets: usize, base: usize, bound: usize) -> Option<Vec<usize>> {
    let n = g.adj.len();
    let idx = |v: usize, s: u32| v * sheets + s as usize;
    let mut dist = vec![u32::MAX; n * sheets];
    let mut parent = vec![(usize::MAX, usize::MAX); n * sheets];
    let mut queue = VecDeque::new();
    dist[idx(base, 0)] = 0;
    queue.push_back((base, 0u32));
    while let Some((v, sig)) = queue.pop_front() {
        let dv = dist[idx(v, sig)];
        if dv as usize + 1 >= bound {
            break;
        }
        for &(w, j, esig) in &g.adj[v] {
            let ns = sig ^ esig;
            let k = idx(w, ns);
            if dist[k] != u32::MAX {
                continue;
            }
            dist[k] = dv + 1;
            parent[k] = (idx(v, sig), j);
            if w == base && ns != 0 {
                let mut walk = Vec::new();
                let mut cur = k;
                while cur != idx(base, 0) {
                    let (p, j) = parent[cur];
                    walk.push(j);
                    cur = p;
                }
                return Some(walk);
            }
            queue.push_back((w, ns));
        }
    }
    None
}

fn exact_on(s: &Surface, budget: usize) -> Result<BitVector> {
    let k = h1_dim(s)?;
    if k == 0 {
        return Err(Error::NoLogicals);
    }
    if k > budget || k > 31 {
        return Err(Error::BudgetExceeded {
            needed: k,
            budget: budget.min(31),
        });
    }
    let cx = boundary_maps(s);
    let functionals = homology_functionals(&cx);
    debug_assert_eq!(functionals.len(), k);
    let g = cover_graph(&cx, s, &functionals);
    let sheets = 1usize << k;
    let mut best: Option<Vec<usize>> = None;
    for base in 0..g.adj.len() {
        let bound = best.as_ref().map_or(usize::MAX, Vec::len);
        if let Some(walk) = shortest_from(&g, sheets, base, bound) {
            if walk.len() < bound {
                best = Some(walk);
            }
        }
    }
    let walk = best.expect("a non-trivial class has a representative walk");
    Ok(BitVector::from_support(cx.n_edges(), walk))
}

fn brute_on(s: &Surface, w_max: usize) -> Option<BitVector> {
    let cx = boundary_maps(s);
    let trivial = RowEchelon::from_matrix(&cx.d2.transpose());
    let n = cx.n_edges();
    for w in 1..=w_max.min(n) {
        let mut combo: Vec<usize> = (0..w).collect();
        loop {
            let z = BitVector::from_support(n, combo.iter().copied());
            if cx.d1.mul_vec(&z).expect("length matches").is_zero() && !trivial.contains(&z) {
                return Some(z);
            }
            // next combination in lexicographic order
            let Some(i) = (0..w).rev().find(|&i| combo[i] < n - w + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..w {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    None
}

fn result(s: &Surface, witness: BitVector, side: Side, method: Method) -> DistanceResult {
    let cx = boundary_maps(s);
    DistanceResult {
        d: witness.weight(),
        witness_edges: cx.to_surface_edges(&witness),
        witness,
        side,
        method: method.name(),
    }
}

/// Enumerates edge subsets by increasing weight up to `w_max`.
pub fn distance_bruteforce_oracle(s: &Surface, w_max: usize) -> BruteForceOutcome {
    match brute_on(s, w_max) {
        Some(z) => BruteForceOutcome::Found(result(s, z, Side::Z, Method::BruteForce { w_max })),
        None => BruteForceOutcome::Exhausted(w_max),
    }
}

fn witness_for(s: &Surface, method: Method) -> Result<BitVector> {
    match method {
        Method::Exact { budget } => exact_on(s, budget),
        Method::BruteForce { w_max } => {
            if h1_dim(s)? == 0 {
                return Err(Error::NoLogicals);
            }
            brute_on(s, w_max).ok_or(Error::Exhausted { w_max })
        }
    }
}

/// Minimum weight of a non-trivial relative cycle of the surface.
pub fn distance_z(s: &Surface, method: Method) -> Result<DistanceResult> {
    let z = witness_for(s, method)?;
    Ok(result(s, z, Side::Z, method))
}

/// Minimum weight of a non-trivial relative cycle of the dual, mapped back
/// onto the qubits of `s`.
pub fn distance_x(s: &Surface, method: Method) -> Result<DistanceResult> {
    let (dual, corr) = dualize(s)?;
    let dual_witness = witness_for(&dual, method)?;
    let dual_cx = boundary_maps(&dual);
    let back = corr.dual_edge_preimage(dual.edge_count());
    let primal_edges: Vec<usize> = dual_cx
        .to_surface_edges(&dual_witness)
        .into_iter()
        .map(|d| back[d].expect("non-open dual edges come from qubits"))
        .collect();
    let cx = boundary_maps(s);
    let witness = cx.from_surface_edges(&primal_edges);
    Ok(DistanceResult {
        d: witness.weight(),
        witness_edges: cx.to_surface_edges(&witness),
        witness,
        side: Side::X,
        method: method.name(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Edge;

    fn strip() -> Surface {
        // 1×3 row of squares, left and right sides open
        //  4 - 5 - 6 - 7
        //  |   |   |   |
        //  0 - 1 - 2 - 3
        let edges = vec![
            Edge::new(0, 1),
            Edge::new(1, 2),
            Edge::new(2, 3),
            Edge::new(4, 5),
            Edge::new(5, 6),
            Edge::new(6, 7),
            Edge::open(0, 4),
            Edge::new(1, 5),
            Edge::new(2, 6),
            Edge::open(3, 7),
        ];
        let faces = vec![vec![0, 7, 3, 6], vec![1, 8, 4, 7], vec![2, 9, 5, 8]];
        Surface::new(8, edges, faces, None).unwrap()
    }

    #[test]
    fn strip_distances_match_oracle() {
        let s = strip();
        let dz = distance_z(&s, Method::exact()).unwrap();
        assert_eq!(dz.d, 3);
        match distance_bruteforce_oracle(&s, 6) {
            BruteForceOutcome::Found(r) => assert_eq!(r.d, 3),
            BruteForceOutcome::Exhausted(_) => panic!("strip encodes a qubit"),
        }
        let dx = distance_x(&s, Method::exact()).unwrap();
        assert_eq!(dx.d, 2);
        assert_eq!(
            distance_x(&s, Method::BruteForce { w_max: 4 }).unwrap().d,
            2
        );
    }

    #[test]
    fn budget_is_enforced() {
        let s = strip();
        assert!(matches!(
            distance_z(&s, Method::Exact { budget: 0 }),
            Err(Error::BudgetExceeded {
                needed: 1,
                budget: 0
            })
        ));
    }
}
