//! One-vertex triangulations of closed orientable surfaces.
//!
//! The ambient model is the 4g-gon with boundary word
//! `a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1`, fan-triangulated from corner 0.
//! Polygon sides are numbered `0..4g` counterclockwise, side `s` running from
//! corner `s` to corner `s + 1`. Triangle corners are listed counterclockwise
//! and slot `k` of a triangle runs from corner `k` to corner `k + 1`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::SurfaceError;
use crate::intmat::IntMatrix;

/// Version tag written into every serialized triangulation.
pub const TRIANGULATION_SCHEMA: u32 = 1;

/// One side of a triangle: an undirected edge plus the direction in which the
/// triangle traverses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSlot {
    pub edge: usize,
    /// `true` when the triangle runs against the edge's canonical direction.
    pub reversed: bool,
}

/// A letter of a polygon boundary word: a label and whether it is inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub label: usize,
    pub inverse: bool,
}

/// Triangulated closed surface obtained from a polygon with paired sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub genus: u32,
    /// Number of polygon sides (`4g` for the canonical model).
    pub polygon_sides: usize,
    pub triangles: Vec<[EdgeSlot; 3]>,
    /// Involution on triangle sides, indexed `3 * triangle + slot`.
    pub gluings: Vec<Option<usize>>,
    /// For triangle sides lying on the polygon boundary, the polygon side index.
    pub boundary_side: Vec<Option<usize>>,
    /// Polygon side paired with each polygon side.
    pub side_partner: Vec<usize>,
    /// Undirected edge carried by each polygon side.
    pub side_edge: Vec<usize>,
    pub num_edges: usize,
}

/// Diagnostics produced by [`Triangulation::validate`]. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Edge loops generating first homology together with their pairing matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyBasis {
    /// `cycles[2i]` is `a_(i+1)`, `cycles[2i+1]` is `b_(i+1)`; each cycle is a
    /// single loop edge traversed forwards or backwards.
    pub cycles: Vec<Vec<(usize, bool)>>,
    /// Algebraic intersection numbers of the cycles, read off the cyclic
    /// order of edge ends around the vertex.
    pub pairing: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct TriangulationFile {
    schema_version: u32,
    genus: u32,
    polygon_sides: usize,
    num_edges: usize,
    triangles: Vec<[EdgeSlot; 3]>,
    gluings: Vec<Option<usize>>,
    boundary_side: Vec<Option<usize>>,
    side_partner: Vec<usize>,
    side_edge: Vec<usize>,
}

fn standard_word(genus: u32) -> Vec<Letter> {
    let mut word = Vec::with_capacity(4 * genus as usize);
    for i in 0..genus as usize {
        let (a, b) = (2 * i, 2 * i + 1);
        word.push(Letter { label: a, inverse: false });
        word.push(Letter { label: b, inverse: false });
        word.push(Letter { label: a, inverse: true });
        word.push(Letter { label: b, inverse: true });
    }
    word
}

/// Builds the canonical one-vertex triangulation of the genus-`g` surface.
pub fn build_closed_surface(genus: u32) -> Result<Triangulation, SurfaceError> {
    if genus < 2 {
        return Err(SurfaceError::GenusTooSmall(genus));
    }
    Triangulation::from_polygon_word(genus, &standard_word(genus))
}

impl Triangulation {
    /// Fan-triangulates a polygon whose sides are identified according to
    /// `word`. Every label must occur exactly twice; the word is not otherwise
    /// checked, so invalid gluings surface through [`Triangulation::validate`].
    pub fn from_polygon_word(genus: u32, word: &[Letter]) -> Result<Self, SurfaceError> {
        let n = word.len();
        if n < 3 {
            return Err(SurfaceError::PolygonTooSmall(n));
        }
        let num_labels = word.iter().map(|l| l.label + 1).max().unwrap_or(0);
        let mut occurrences = vec![Vec::new(); num_labels];
        for (s, l) in word.iter().enumerate() {
            occurrences[l.label].push(s);
        }
        let mut side_partner = vec![usize::MAX; n];
        for (label, occ) in occurrences.iter().enumerate() {
            if occ.len() != 2 {
                return Err(SurfaceError::UnpairedLabel(label));
            }
            side_partner[occ[0]] = occ[1];
            side_partner[occ[1]] = occ[0];
        }
        let side_edge: Vec<usize> = word.iter().map(|l| l.label).collect();
        let polygon_slot = |s: usize| EdgeSlot { edge: word[s].label, reversed: word[s].inverse };
        // diagonal from corner 0 to corner k, for k in 2..=n-2
        let diagonal = |k: usize| num_labels + (k - 2);
        let num_edges = num_labels + n.saturating_sub(3);

        let num_tri = n - 2;
        let mut triangles = Vec::with_capacity(num_tri);
        let mut boundary_side = vec![None; 3 * num_tri];
        for t in 0..num_tri {
            let k = t + 1;
            let s0 = if k == 1 {
                boundary_side[3 * t] = Some(0);
                polygon_slot(0)
            } else {
                EdgeSlot { edge: diagonal(k), reversed: false }
            };
            boundary_side[3 * t + 1] = Some(k);
            let s1 = polygon_slot(k);
            let s2 = if k + 1 == n - 1 {
                boundary_side[3 * t + 2] = Some(n - 1);
                polygon_slot(n - 1)
            } else {
                EdgeSlot { edge: diagonal(k + 1), reversed: true }
            };
            triangles.push([s0, s1, s2]);
        }

        let side_position = |s: usize| -> usize {
            if s == 0 {
                0
            } else if s == n - 1 {
                3 * (n - 3) + 2
            } else {
                3 * (s - 1) + 1
            }
        };
        let mut gluings = vec![None; 3 * num_tri];
        for t in 0..num_tri {
            let k = t + 1;
            if k + 1 <= n - 2 {
                // diagonal k+1 is slot 2 of triangle t and slot 0 of triangle t+1
                gluings[3 * t + 2] = Some(3 * (t + 1));
                gluings[3 * (t + 1)] = Some(3 * t + 2);
            }
        }
        for s in 0..n {
            gluings[side_position(s)] = Some(side_position(side_partner[s]));
        }
        Ok(Triangulation {
            genus,
            polygon_sides: n,
            triangles,
            gluings,
            boundary_side,
            side_partner,
            side_edge,
            num_edges,
        })
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn slot(&self, side: usize) -> EdgeSlot {
        self.triangles[side / 3][side % 3]
    }

    /// Number of edge classes of triangle corners; `None` entries in the
    /// gluing are simply not followed.
    pub fn vertex_classes(&self) -> usize {
        let corners = 3 * self.triangles.len();
        let mut uf = UnionFind::new(corners);
        for (side, partner) in self.gluings.iter().enumerate() {
            if let Some(p) = *partner {
                let (t, k) = (side / 3, side % 3);
                let (u, j) = (p / 3, p % 3);
                // orientation-reversing identification
                uf.union(3 * t + k, 3 * u + (j + 1) % 3);
                uf.union(3 * t + (k + 1) % 3, 3 * u + j);
            }
        }
        uf.count()
    }

    /// Lists every violated structural invariant.
    pub fn validate(&self) -> ValidationReport {
        let mut problems = Vec::new();
        let f = self.triangles.len();
        if self.gluings.len() != 3 * f {
            problems.push(format!("gluing table has {} entries for {} triangle sides", self.gluings.len(), 3 * f));
            return ValidationReport { problems };
        }
        let mut incidences = vec![0usize; self.num_edges];
        for tri in &self.triangles {
            for slot in tri {
                if slot.edge >= self.num_edges {
                    problems.push(format!("edge index {} out of range", slot.edge));
                } else {
                    incidences[slot.edge] += 1;
                }
            }
        }
        for (e, &c) in incidences.iter().enumerate() {
            if c != 2 {
                problems.push(format!("edge {e} has {c} incident triangle sides, expected 2"));
            }
        }
        for (side, partner) in self.gluings.iter().enumerate() {
            match *partner {
                None => problems.push(format!("dangling edge side {side} (triangle {}, slot {})", side / 3, side % 3)),
                Some(p) if p >= 3 * f => problems.push(format!("side {side} glued to nonexistent side {p}")),
                Some(p) if p == side => problems.push(format!("side {side} glued to itself")),
                Some(p) => {
                    if self.gluings[p] != Some(side) {
                        problems.push(format!("gluing is not an involution at side {side}"));
                    }
                    let (a, b) = (self.slot(side), self.slot(p));
                    if a.edge != b.edge {
                        problems.push(format!("sides {side} and {p} are glued but carry edges {} and {}", a.edge, b.edge));
                    } else if a.reversed == b.reversed && side < p {
                        problems.push(format!("sides {side} and {p} are glued with matching directions (orientation inconsistent)"));
                    }
                }
            }
        }
        let v = self.vertex_classes();
        if v != 1 {
            problems.push(format!("vertex count {v}, expected 1"));
        }
        let chi = v as i64 - self.num_edges as i64 + f as i64;
        let expected = 2 - 2 * self.genus as i64;
        if chi != expected {
            problems.push(format!("Euler characteristic {chi}, expected {expected}"));
        }
        ValidationReport { problems }
    }

    /// Half-edge ends around the vertex in counterclockwise order. Each entry
    /// is `(edge, at_start)` where `at_start` means the canonical tail.
    pub fn vertex_rotation(&self) -> Result<Vec<(usize, bool)>, SurfaceError> {
        let f = self.triangles.len();
        let total = 3 * f;
        let mut order = Vec::with_capacity(total);
        let mut visited = vec![false; total];
        // the end of a triangle side at its own starting corner
        let start_end = |side: usize| {
            let s = self.slot(side);
            (s.edge, !s.reversed)
        };
        let mut side = 0usize;
        loop {
            if visited[side] {
                break;
            }
            visited[side] = true;
            order.push(start_end(side));
            let (t, k) = (side / 3, side % 3);
            let prev = 3 * t + (k + 2) % 3;
            let partner = self.gluings[prev].ok_or(SurfaceError::Dangling(prev))?;
            side = partner;
        }
        if order.len() != total {
            return Err(SurfaceError::NotOneVertex(order.len(), total));
        }
        Ok(order)
    }

    /// Algebraic intersection of two loop edges traversed in their canonical
    /// directions, from the cyclic order of their ends at the vertex.
    pub fn loop_pairing(&self, x: usize, y: usize, rotation: &[(usize, bool)]) -> i64 {
        if x == y {
            return 0;
        }
        let pos = |e: usize, start: bool| rotation.iter().position(|&r| r == (e, start)).unwrap();
        // a loop leaves along its tail end and comes back along its head end
        let (x_out, x_in) = (pos(x, true), pos(x, false));
        let (y_out, y_in) = (pos(y, true), pos(y, false));
        let n = rotation.len();
        let ccw = |from: usize, to: usize| (to + n - from) % n;
        let (c_in, c_out, x_far) = (ccw(x_in, y_in), ccw(x_in, y_out), ccw(x_in, x_out));
        let y_in_first = c_in < x_far;
        let y_out_first = c_out < x_far;
        if y_in_first == y_out_first {
            0
        } else if y_in_first {
            1
        } else {
            -1
        }
    }

    pub fn homology_basis(&self) -> Result<HomologyBasis, SurfaceError> {
        let rotation = self.vertex_rotation()?;
        let g = self.genus as usize;
        let mut cycles = Vec::with_capacity(2 * g);
        for i in 0..g {
            cycles.push(vec![(2 * i, true)]);
            cycles.push(vec![(2 * i + 1, true)]);
        }
        let signed = |c: &[(usize, bool)]| (c[0].0, if c[0].1 { 1 } else { -1 });
        let mut pairing = IntMatrix::zeros(2 * g, 2 * g);
        for r in 0..2 * g {
            for c in 0..2 * g {
                let (x, sx) = signed(&cycles[r]);
                let (y, sy) = signed(&cycles[c]);
                pairing.set(r, c, sx * sy * self.loop_pairing(x, y, &rotation));
            }
        }
        // orient each b-loop so that <a_i, b_i> = +1
        for i in 0..g {
            if pairing.get(2 * i, 2 * i + 1) < 0 {
                cycles[2 * i + 1][0].1 = false;
                for k in 0..2 * g {
                    let v = pairing.get(2 * i + 1, k);
                    pairing.set(2 * i + 1, k, -v);
                    let w = pairing.get(k, 2 * i + 1);
                    pairing.set(k, 2 * i + 1, -w);
                }
            }
        }
        Ok(HomologyBasis { cycles, pairing })
    }

    pub fn to_json(&self) -> String {
        let file = TriangulationFile {
            schema_version: TRIANGULATION_SCHEMA,
            genus: self.genus,
            polygon_sides: self.polygon_sides,
            num_edges: self.num_edges,
            triangles: self.triangles.clone(),
            gluings: self.gluings.clone(),
            boundary_side: self.boundary_side.clone(),
            side_partner: self.side_partner.clone(),
            side_edge: self.side_edge.clone(),
        };
        serde_json::to_string(&file).expect("triangulation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        let file: TriangulationFile = serde_json::from_str(text).map_err(|e| SurfaceError::Json(e.to_string()))?;
        if file.schema_version != TRIANGULATION_SCHEMA {
            return Err(SurfaceError::Schema(file.schema_version));
        }
        Ok(Triangulation {
            genus: file.genus,
            polygon_sides: file.polygon_sides,
            triangles: file.triangles,
            gluings: file.gluings,
            boundary_side: file.boundary_side,
            side_partner: file.side_partner,
            side_edge: file.side_edge,
            num_edges: file.num_edges,
        })
    }

    /// Short content hash identifying the triangulation in exported files.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        hex::encode(&digest[..8])
    }
}

/// Standard symplectic form with `<a_i, b_i> = 1` in the basis order
/// `a1, b1, a2, b2, ...`.
pub fn standard_symplectic(genus: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j.set(2 * i, 2 * i + 1, 1);
        j.set(2 * i + 1, 2 * i, -1);
    }
    j
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_counts() {
        for (g, f, e) in [(2u32, 6usize, 9usize), (3, 10, 15), (5, 18, 27)] {
            let t = build_closed_surface(g).unwrap();
            assert_eq!(t.num_triangles(), f);
            assert_eq!(t.num_edges, e);
            assert_eq!(t.vertex_classes(), 1);
            assert_eq!(1 - e as i64 + f as i64, 2 - 2 * g as i64);
        }
    }

    #[test]
    fn rejects_small_genus() {
        assert!(matches!(build_closed_surface(1), Err(SurfaceError::GenusTooSmall(1))));
        assert!(build_closed_surface(0).is_err());
    }

    #[test]
    fn builds_validate_clean() {
        for g in 2..=6 {
            let t = build_closed_surface(g).unwrap();
            assert!(t.validate().is_valid(), "g={g}: {:?}", t.validate());
        }
    }

    #[test]
    fn dangling_side_reported() {
        let mut t = build_closed_surface(3).unwrap();
        let p = t.gluings[4].unwrap();
        t.gluings[4] = None;
        t.gluings[p] = None;
        let report = t.validate();
        assert!(report.problems.iter().any(|m| m.contains("dangling edge side")), "{report:?}");
    }

    #[test]
    fn two_vertex_torus_reported() {
        // hexagon a b c a^-1 b^-1 c^-1 is a torus with two vertices
        let l = |label, inverse| Letter { label, inverse };
        let word = [l(0, false), l(1, false), l(2, false), l(0, true), l(1, true), l(2, true)];
        let t = Triangulation::from_polygon_word(1, &word).unwrap();
        assert_eq!(t.vertex_classes(), 2);
        let report = t.validate();
        assert!(report.problems.iter().any(|m| m.contains("vertex count 2")), "{report:?}");
    }

    #[test]
    fn pairing_is_standard() {
        for g in 2..=6usize {
            let t = build_closed_surface(g as u32).unwrap();
            let basis = t.homology_basis().unwrap();
            assert_eq!(basis.cycles.len(), 2 * g);
            assert_eq!(basis.pairing, standard_symplectic(g));
            assert_eq!(basis.pairing.transpose(), basis.pairing.neg());
            assert_eq!(basis.pairing.det(), 1);
        }
    }

    #[test]
    fn symplectic_identities_g3() {
        let j = standard_symplectic(3);
        assert_eq!(j.mul(&j.transpose()), IntMatrix::identity(6));
        assert_eq!(j.get(0, 1), 1);
        assert_eq!(j.get(0, 2), 0);
    }

    #[test]
    fn json_round_trip() {
        let t = build_closed_surface(4).unwrap();
        let back = Triangulation::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.content_hash(), t.content_hash());
        assert_ne!(build_closed_surface(3).unwrap().content_hash(), t.content_hash());
    }
}
