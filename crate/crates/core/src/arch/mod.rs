//! Lattice generators and planar hole architectures.
//!
//! Rotated lattices use face coordinates `(U, W)` with `U ≡ W (mod 2)`;
//! faces at Chebyshev distance one in `(U, W)` share an edge. Hole layouts
//! are fixed as follows, with `r = t − 1`:
//!
//! * square holes: `t × t` face blocks at `4t − 1 + a(5t − 1)` in a plain
//!   lattice of side `h(5t − 1) + 4t − 1`;
//! * diamond holes: balls of radius `r` centred at `(M + aS, M + bS)` with
//!   `M = 9r + 3`, `S = 10r + 4` in a rotated lattice of side `h(5r + 2) + 4r + 2`;
//! * mixed diamond holes: the same balls at `(M + aS, M + bS)` with
//!   `S = 4r + 4`, `M = 3r + 2`, side `h(2r + 2) + r + 1`, two opposite
//!   sides opened and the orientation alternating on `(a + b) mod 2`.

pub mod lattice;

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::code::{distance_x, distance_z, logical_count, Method};
use crate::error::{Error, Result};
use crate::surface::{Edge, Strictness, Surface};
use lattice::{build_patch, face_edges, rotated_faces, rotated_to_square};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PlainSquare,
    RotatedSquare,
    Torus,
    SquareHole,
    DiamondHole,
    MixedDiamondHole,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PlainSquare => "plain-square",
            Family::RotatedSquare => "rotated-square",
            Family::Torus => "torus",
            Family::SquareHole => "square-hole",
            Family::DiamondHole => "diamond-hole",
            Family::MixedDiamondHole => "mixed-diamond-hole",
        }
    }

    pub fn is_hole_family(self) -> bool {
        matches!(
            self,
            Family::SquareHole | Family::DiamondHole | Family::MixedDiamondHole
        )
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "plain-square" => Family::PlainSquare,
            "rotated-square" => Family::RotatedSquare,
            "torus" => Family::Torus,
            "square-hole" => Family::SquareHole,
            "diamond-hole" => Family::DiamondHole,
            "mixed-diamond-hole" => Family::MixedDiamondHole,
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, alias = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, alias = "L2", skip_serializing_if = "Option::is_none")]
    pub l2: Option<usize>,
}

impl ArchSpec {
    pub fn holes(family: Family, h: usize, h2: usize, t: usize) -> Self {
        Self {
            family,
            h: Some(h),
            h2: Some(h2),
            t: Some(t),
            l: None,
            l2: None,
        }
    }

    pub fn lattice(family: Family, l: usize, l2: usize) -> Self {
        Self {
            family,
            h: None,
            h2: None,
            t: None,
            l: Some(l),
            l2: Some(l2),
        }
    }

    fn need(value: Option<usize>, name: &str, family: Family) -> Result<usize> {
        value.ok_or_else(|| {
            Error::InvalidParameter(format!("{} needs parameter {name}", family.name()))
        })
    }

    /// `(h, h2, t)` for hole families, with `h2` defaulting to `h`.
    pub fn hole_params(&self) -> Result<(usize, usize, usize)> {
        let h = Self::need(self.h, "h", self.family)?;
        let t = Self::need(self.t, "t", self.family)?;
        Ok((h, self.h2.unwrap_or(h), t))
    }

    /// `(L, L2)` for lattice families, with `L2` defaulting to `L`.
    pub fn lattice_params(&self) -> Result<(usize, usize)> {
        let l = Self::need(self.l, "L", self.family)?;
        Ok((l, self.l2.unwrap_or(l)))
    }

    pub fn generate(&self) -> Result<Surface> {
        match self.family {
            Family::PlainSquare => {
                let (l, l2) = self.lattice_params()?;
                gen_plain_square(l, l2)
            }
            Family::RotatedSquare => {
                let (l, l2) = self.lattice_params()?;
                gen_rotated_square(l, l2)
            }
            Family::Torus => gen_torus(self.lattice_params()?.0),
            Family::SquareHole => {
                let (h, h2, t) = self.hole_params()?;
                gen_square_hole(h, h2, t)
            }
            Family::DiamondHole => {
                let (h, h2, t) = self.hole_params()?;
                gen_diamond_hole(h, h2, t)
            }
            Family::MixedDiamondHole => {
                let (h, h2, t) = self.hole_params()?;
                gen_mixed_diamond_hole(h, h2, t)
            }
        }
    }
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be at least 1"
        )));
    }
    Ok(())
}

fn strict_checked(s: Surface, what: &str) -> Result<Surface> {
    let report = s.validate(Strictness::ALL);
    if !report.is_empty() {
        return Err(Error::FaultyGeneration(format!("{what}: {report}")));
    }
    Ok(s)
}

/// `L × L2` square patch with closed boundary.
pub fn gen_plain_square(l: usize, l2: usize) -> Result<Surface> {
    positive("L", l)?;
    positive("L2", l2)?;
    let faces = (0..l as i64)
        .flat_map(|i| (0..l2 as i64).map(move |j| (i, j)))
        .collect();
    build_patch(&faces, &HashSet::new())
}

/// `L × L2` rotated patch with closed boundary.
///
/// When exactly one side is 1 the patch is a chain of faces meeting at single
/// vertices and does not validate.
pub fn gen_rotated_square(l: usize, l2: usize) -> Result<Surface> {
    positive("L", l)?;
    positive("L2", l2)?;
    let faces = rotated_faces(l, l2)
        .into_iter()
        .map(|(u, w)| rotated_to_square(u, w))
        .collect();
    build_patch(&faces, &HashSet::new())
}

/// Periodic `L × L` lattice. Sizes below 3 produce loops or parallel edges
/// and are rejected with the validation report.
pub fn gen_torus(l: usize) -> Result<Surface> {
    positive("L", l)?;
    let v = |x: usize, y: usize| (y % l) * l + (x % l);
    let mut edges = Vec::with_capacity(2 * l * l);
    for y in 0..l {
        for x in 0..l {
            edges.push(Edge::new(v(x, y), v(x + 1, y)));
            edges.push(Edge::new(v(x, y), v(x, y + 1)));
        }
    }
    let h = |x: usize, y: usize| 2 * v(x, y);
    let vert = |x: usize, y: usize| 2 * v(x, y) + 1;
    let faces = (0..l)
        .flat_map(|y| (0..l).map(move |x| (x, y)))
        .map(|(x, y)| vec![h(x, y), vert(x + 1, y), h(x, y + 1), vert(x, y)])
        .collect();
    let coords = (0..l * l)
        .map(|n| [(n % l) as f64, (n / l) as f64])
        .collect();
    let s = Surface::new(l * l, edges, faces, Some(coords))?;
    s.ensure_valid(Strictness::NONE)?;
    Ok(s)
}

pub fn square_hole_side(h: usize, t: usize) -> usize {
    h * (5 * t - 1) + 4 * t - 1
}

/// Plain lattice punctured by `h × h2` closed `t × t` holes.
pub fn gen_square_hole(h: usize, h2: usize, t: usize) -> Result<Surface> {
    positive("h", h)?;
    positive("h2", h2)?;
    positive("t", t)?;
    let (l, l2) = (square_hole_side(h, t), square_hole_side(h2, t));
    let mut faces: BTreeSet<(i64, i64)> = (0..l as i64)
        .flat_map(|i| (0..l2 as i64).map(move |j| (i, j)))
        .collect();
    for (i0, j0) in square_hole_origins(h, h2, t) {
        for di in 0..t as i64 {
            for dj in 0..t as i64 {
                faces.remove(&(i0 + di, j0 + dj));
            }
        }
    }
    strict_checked(build_patch(&faces, &HashSet::new())?, "square-hole lattice")
}

fn square_hole_origins(h: usize, h2: usize, t: usize) -> Vec<(i64, i64)> {
    let first = 4 * t as i64 - 1;
    let pitch = 5 * t as i64 - 1;
    let mut out = Vec::new();
    for b in 0..h2 as i64 {
        for a in 0..h as i64 {
            out.push((first + a * pitch, first + b * pitch));
        }
    }
    out
}

/// Placement of diamond holes in a rotated lattice.
#[derive(Clone, Copy, Debug)]
struct DiamondLayout {
    /// Ball radius in the face graph.
    r: i64,
    /// Centre of the first hole in both `U` and `W`.
    margin: i64,
    /// Distance between neighbouring centres in `U` and `W`; must be even.
    spacing: i64,
}

impl DiamondLayout {
    fn side(&self, h: usize) -> usize {
        // 2L − 2 = 2·margin + (h − 1)·spacing
        ((2 * self.margin + (h as i64 - 1) * self.spacing + 2) / 2) as usize
    }

    fn centres(&self, h: usize, h2: usize) -> Vec<(usize, usize, i64, i64)> {
        let mut out = Vec::new();
        for b in 0..h2 {
            for a in 0..h {
                out.push((
                    a,
                    b,
                    self.margin + a as i64 * self.spacing,
                    self.margin + b as i64 * self.spacing,
                ));
            }
        }
        out
    }

    fn in_ball(&self, (cu, cw): (i64, i64), (u, w): (i64, i64)) -> bool {
        (u - cu).abs() <= self.r && (w - cw).abs() <= self.r
    }
}

fn diamond_layout(t: usize) -> DiamondLayout {
    let r = t as i64 - 1;
    DiamondLayout {
        r,
        margin: 9 * r + 3,
        spacing: 10 * r + 4,
    }
}

fn mixed_layout(t: usize) -> DiamondLayout {
    let r = t as i64 - 1;
    DiamondLayout {
        r,
        margin: 3 * r + 2,
        spacing: 4 * r + 4,
    }
}

/// Which pair of opposite hole sides is open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OpenSides {
    None,
    /// Sides facing `±W`.
    W,
    /// Sides facing `±U`.
    U,
}

fn punctured_rotated(
    h: usize,
    h2: usize,
    layout: DiamondLayout,
    orientation: impl Fn(usize, usize) -> OpenSides,
) -> Result<Surface> {
    let (l, l2) = (layout.side(h), layout.side(h2));
    let centres = layout.centres(h, h2);
    let mut kept = BTreeSet::new();
    let mut removed_by = std::collections::HashMap::new();
    for (u, w) in rotated_faces(l, l2) {
        match centres
            .iter()
            .position(|&(_, _, cu, cw)| layout.in_ball((cu, cw), (u, w)))
        {
            Some(c) => {
                removed_by.insert((u, w), c);
            }
            None => {
                kept.insert((u, w));
            }
        }
    }
    let mut open = HashSet::new();
    // steps (sU, sW) and the edge of the square face crossed by each step
    let steps: [((i64, i64), usize); 4] = [((1, 1), 2), ((1, -1), 1), ((-1, -1), 0), ((-1, 1), 3)];
    for (&(u, w), &c) in &removed_by {
        let (a, b, cu, cw) = centres[c];
        let sides = orientation(a, b);
        if sides == OpenSides::None {
            continue;
        }
        let (i, j) = rotated_to_square(u, w);
        let edges = face_edges(i, j);
        for ((su, sw), k) in steps {
            if !kept.contains(&(u + su, w + sw)) {
                continue;
            }
            let exit_u = (u + su - cu).abs() > layout.r;
            let exit_w = (w + sw - cw).abs() > layout.r;
            let is_open = matches!(
                (exit_u, exit_w, sides),
                (false, true, OpenSides::W) | (true, false, OpenSides::U)
            );
            if is_open {
                open.insert(edges[k]);
            }
        }
    }
    let faces: BTreeSet<(i64, i64)> = kept.iter().map(|&(u, w)| rotated_to_square(u, w)).collect();
    build_patch(&faces, &open)
}

pub fn diamond_hole_side(h: usize, t: usize) -> usize {
    diamond_layout(t).side(h)
}

/// Rotated lattice punctured by `h × h2` closed diamond holes of perimeter
/// `4(2t − 1)`, spaced so that every hole is at X-distance `4(2t − 1)` from
/// its neighbours and from the outer boundary.
pub fn gen_diamond_hole(h: usize, h2: usize, t: usize) -> Result<Surface> {
    positive("h", h)?;
    positive("h2", h2)?;
    positive("t", t)?;
    let s = punctured_rotated(h, h2, diamond_layout(t), |_, _| OpenSides::None)?;
    strict_checked(s, "diamond-hole lattice")
}

pub fn mixed_diamond_hole_side(h: usize, t: usize) -> usize {
    mixed_layout(t).side(h)
}

/// Diamond holes with two opposite sides open, alternating orientation in a
/// checkerboard. Needs `t ≥ 2` so that the open sides are non-empty.
pub fn gen_mixed_diamond_hole(h: usize, h2: usize, t: usize) -> Result<Surface> {
    gen_mixed_with(h, h2, mixed_layout(t))
}

fn gen_mixed_with(h: usize, h2: usize, layout: DiamondLayout) -> Result<Surface> {
    positive("h", h)?;
    positive("h2", h2)?;
    if layout.r < 1 {
        return Err(Error::InvalidParameter(
            "mixed diamond holes need t >= 2; for t = 1 the open sides are empty".into(),
        ));
    }
    let s = punctured_rotated(h, h2, layout, |a, b| {
        if (a + b) % 2 == 0 {
            OpenSides::W
        } else {
            OpenSides::U
        }
    })?;
    strict_checked(s, "mixed-diamond-hole lattice")
}

/// Closed-form `(n, k, d)` for a family, without building the lattice.
pub fn formula_params(family: Family, h: u64, h2: u64, t: u64) -> Option<(u64, u64, u64)> {
    match family {
        Family::SquareHole => {
            let l = h * (5 * t - 1) + 4 * t - 1;
            let l2 = h2 * (5 * t - 1) + 4 * t - 1;
            let n = 2 * l * l2 + l + l2 - h * h2 * (2 * t * t - 2 * t);
            Some((n, h * h2, 4 * t))
        }
        Family::DiamondHole => {
            let d = 4 * (2 * t - 1);
            let side = |h: u64| h * (t + d / 2) + d / 2;
            let n = 4 * side(h) * side(h2) - 4 * h * h2 * t * t;
            Some((n, h * h2, d))
        }
        Family::MixedDiamondHole => {
            let side = |h: u64| 2 * h * t + t;
            let n = 4 * side(h) * side(h2) - 4 * h * h2 * t * t;
            Some((n, 3 * h * h2 - 1, 2 * t))
        }
        _ => None,
    }
}

/// `n / (k d²)`.
pub fn overhead(n: u64, k: u64, d: u64) -> Result<Ratio<u64>> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidParameter(
            "overhead is undefined when k or d is zero".into(),
        ));
    }
    Ok(Ratio::new(n, k * d * d))
}

fn ratio_string(r: &Ratio<u64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ArchReport {
    pub family: String,
    pub h: Option<usize>,
    pub h2: Option<usize>,
    pub t: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub dz: Option<usize>,
    pub dx: Option<usize>,
    pub d: Option<usize>,
    /// Exact ratio `n / (k d²)` from computed values, e.g. `"7"` or `"112/27"`.
    pub overhead: Option<String>,
    pub overhead_decimal: Option<f64>,
    pub formula_n: Option<u64>,
    pub formula_k: Option<u64>,
    pub formula_d: Option<u64>,
    /// Whether every computed value agrees with its closed form.
    pub matches: bool,
    pub error: Option<String>,
}

fn report_for(spec: &ArchSpec, compute_distance: bool) -> ArchReport {
    let mut rep = ArchReport {
        family: spec.family.name().to_string(),
        h: spec.h,
        h2: spec.h2.or(spec.h),
        t: spec.t,
        ..Default::default()
    };
    if let Err(e) = fill_report(spec, compute_distance, &mut rep) {
        rep.error = Some(e.to_string());
        rep.matches = false;
    }
    rep
}

fn fill_report(spec: &ArchSpec, compute_distance: bool, rep: &mut ArchReport) -> Result<()> {
    let formula = if spec.family.is_hole_family() {
        let (h, h2, t) = spec.hole_params()?;
        formula_params(spec.family, h as u64, h2 as u64, t as u64)
    } else {
        None
    };
    if let Some((n, k, d)) = formula {
        rep.formula_n = Some(n);
        rep.formula_k = Some(k);
        rep.formula_d = Some(d);
    }
    let s = spec.generate()?;
    let n = (0..s.edge_count()).filter(|&e| !s.is_open_edge(e)).count();
    let k = logical_count(&s)?;
    rep.n = Some(n);
    rep.k = Some(k);
    if compute_distance && k > 0 {
        let dz = distance_z(&s, Method::exact())?.d;
        let dx = distance_x(&s, Method::exact())?.d;
        rep.dz = Some(dz);
        rep.dx = Some(dx);
        rep.d = Some(dz.min(dx));
    }
    if let Some(d) = rep.d {
        let r = overhead(n as u64, k as u64, d as u64)?;
        rep.overhead_decimal = Some(*r.numer() as f64 / *r.denom() as f64);
        rep.overhead = Some(ratio_string(&r));
    }
    rep.matches = match formula {
        Some((fn_, fk, fd)) => {
            fn_ == n as u64 && fk == k as u64 && rep.d.is_none_or(|d| d as u64 == fd)
        }
        None => true,
    };
    Ok(())
}

/// One report per spec, in order. Errors are recorded in the row.
pub fn compare_table(specs: &[ArchSpec], compute_distance: bool) -> Vec<ArchReport> {
    specs
        .iter()
        .map(|s| report_for(s, compute_distance))
        .collect()
}

/// Qubits (surface edges) not covered by exactly one region, where a region
/// collects the qubits within X-distance `d / 2` of one boundary cycle.
///
/// The X-distance between edges `e` and `f` is the number of edges on the
/// shortest dual path starting with `e` and ending with `f`.
pub fn perfect_lattice_violations(s: &Surface, d: usize) -> Result<Vec<usize>> {
    let cycles = s.boundary_cycles()?;
    let mut cover = vec![0usize; s.edge_count()];
    for cycle in &cycles {
        let mut dist = vec![usize::MAX; s.edge_count()];
        let mut queue = VecDeque::new();
        for &e in &cycle.edges {
            dist[e] = 1;
            queue.push_back(e);
        }
        while let Some(e) = queue.pop_front() {
            if dist[e] >= d / 2 {
                continue;
            }
            for &f in s.edge_faces(e) {
                for &g in s.face(f) {
                    if dist[g] == usize::MAX {
                        dist[g] = dist[e] + 1;
                        queue.push_back(g);
                    }
                }
            }
        }
        for (e, &de) in dist.iter().enumerate() {
            if de <= d / 2 {
                cover[e] += 1;
            }
        }
    }
    Ok((0..s.edge_count())
        .filter(|&e| !s.is_open_edge(e) && cover[e] != 1)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts() {
        let s = gen_plain_square(7, 5).unwrap();
        assert_eq!(
            (s.vertex_count(), s.edge_count(), s.face_count()),
            (48, 82, 35)
        );
        let r = gen_rotated_square(3, 4).unwrap();
        assert_eq!(
            (r.vertex_count(), r.edge_count(), r.face_count()),
            (31, 48, 18)
        );
        let r = gen_rotated_square(2, 2).unwrap();
        assert_eq!(
            (r.vertex_count(), r.edge_count(), r.face_count()),
            (12, 16, 5)
        );
    }

    #[test]
    fn torus_rejects_small_sizes() {
        assert!(matches!(gen_torus(2), Err(Error::InvalidSurface(_))));
        assert!(gen_torus(3).is_ok());
    }

    #[test]
    fn overhead_values() {
        assert_eq!(overhead(112, 1, 4).unwrap(), Ratio::new(7, 1));
        assert!(overhead(1, 0, 3).is_err());
        assert_eq!(
            formula_params(Family::SquareHole, 1, 1, 1).unwrap(),
            (112, 1, 4)
        );
    }

    #[test]
    fn spec_json_accepts_uppercase_sides() {
        let spec: ArchSpec = serde_json::from_str(r#"{"family":"torus","L":3}"#).unwrap();
        assert_eq!(spec.lattice_params().unwrap(), (3, 3));
    }
}
