//! Normal arcs of a weight vector on a triangulation: matching conditions,
//! component tracing and complement topology.

use crate::error::CurveError;
use crate::surface::{Triangulation, UnionFind};

/// Arc counts at the three corners of every triangle. Corner `k` sits
/// between slot `k - 1` (ending there) and slot `k` (starting there).
pub fn corner_counts(tri: &Triangulation, weights: &[u32]) -> Result<Vec<[u32; 3]>, CurveError> {
    if weights.len() != tri.num_edges {
        return Err(CurveError::WrongLength { got: weights.len(), expected: tri.num_edges });
    }
    tri.triangles
        .iter()
        .enumerate()
        .map(|(t, slots)| {
            let w = slots.map(|s| weights[s.edge] as i64);
            let mut out = [0u32; 3];
            for k in 0..3 {
                let twice = w[(k + 2) % 3] + w[k] - w[(k + 1) % 3];
                if twice < 0 || twice % 2 != 0 {
                    return Err(CurveError::NotNormal(t));
                }
                out[k] = (twice / 2) as u32;
            }
            Ok(out)
        })
        .collect()
}

/// An arc of a normal curve: triangle, corner, and index counted outwards
/// from the corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub triangle: usize,
    pub corner: usize,
    pub index: u32,
}

/// One traced component: the polygon sides it leaves through, in order,
/// and one of its arcs.
#[derive(Debug, Clone)]
pub struct Component {
    pub letters: Vec<usize>,
    pub arc: Arc,
}

struct Layout<'a> {
    tri: &'a Triangulation,
    weights: &'a [u32],
    corners: Vec<[u32; 3]>,
}

impl<'a> Layout<'a> {
    fn width(&self, side: usize) -> u32 {
        self.weights[self.tri.slot(side).edge]
    }

    /// Other endpoint, inside the same triangle, of the arc through point
    /// `q` of triangle side `side`.
    fn across(&self, side: usize, q: u32) -> ((usize, u32), Arc) {
        let (t, k) = (side / 3, side % 3);
        let n_k = self.corners[t][k];
        if q < n_k {
            let prev = 3 * t + (k + 2) % 3;
            ((prev, self.width(prev) - 1 - q), Arc { triangle: t, corner: k, index: q })
        } else {
            let j = self.width(side) - 1 - q;
            let next = 3 * t + (k + 1) % 3;
            ((next, j), Arc { triangle: t, corner: (k + 1) % 3, index: j })
        }
    }

    fn glue(&self, side: usize, q: u32) -> (usize, u32) {
        let partner = self.tri.gluings[side].expect("validated triangulation");
        (partner, self.width(side) - 1 - q)
    }
}

/// Traces every component of the normal multicurve with the given weights.
pub fn components(tri: &Triangulation, weights: &[u32]) -> Result<Vec<Component>, CurveError> {
    let corners = corner_counts(tri, weights)?;
    let layout = Layout { tri, weights, corners };
    let sides = 3 * tri.triangles.len();
    let mut offset = vec![0usize; sides + 1];
    for s in 0..sides {
        offset[s + 1] = offset[s] + layout.width(s) as usize;
    }
    let mut visited = vec![false; offset[sides]];
    let mut out = Vec::new();
    for side in 0..sides {
        for q in 0..layout.width(side) {
            if visited[offset[side] + q as usize] {
                continue;
            }
            let start = (side, q);
            let mut entry = start;
            let mut letters = Vec::new();
            let mut first_arc = None;
            loop {
                visited[offset[entry.0] + entry.1 as usize] = true;
                let (exit, arc) = layout.across(entry.0, entry.1);
                first_arc.get_or_insert(arc);
                visited[offset[exit.0] + exit.1 as usize] = true;
                if let Some(s) = tri.boundary_side[exit.0] {
                    letters.push(s);
                }
                entry = layout.glue(exit.0, exit.1);
                if entry == start {
                    break;
                }
            }
            out.push(Component { letters, arc: first_arc.expect("nonempty trace") });
        }
    }
    Ok(out)
}

/// Genus and boundary count of one complementary piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Piece {
    pub genus: u32,
    pub boundary_circles: u32,
}

/// Cuts the surface along the normal multicurve and reports its pieces,
/// sorted. `arcs` holds one arc per curve component.
pub fn complement(tri: &Triangulation, weights: &[u32], arcs: &[Arc]) -> Result<Vec<Piece>, CurveError> {
    let corners = corner_counts(tri, weights)?;
    let layout = Layout { tri, weights, corners };
    let num_tri = tri.triangles.len();
    let mut base = vec![0usize; num_tri + 1];
    for t in 0..num_tri {
        base[t + 1] = base[t] + 1 + layout.corners[t].iter().map(|&c| c as usize).sum::<usize>();
    }
    let corner_region = |t: usize, k: usize, j: u32| -> usize {
        let c = &layout.corners[t];
        if j >= c[k] {
            return base[t];
        }
        let before: u32 = c[..k].iter().sum();
        base[t] + 1 + (before + j) as usize
    };
    // segment q of triangle side `side`, counted from the side's first corner
    let segment_region = |side: usize, q: u32| -> usize {
        let (t, k) = (side / 3, side % 3);
        let w = layout.width(side);
        let n_k = layout.corners[t][k];
        if q < n_k {
            corner_region(t, k, q)
        } else if q == n_k {
            base[t]
        } else {
            corner_region(t, (k + 1) % 3, w - q)
        }
    };

    let regions = base[num_tri];
    let mut uf = UnionFind::new(regions);
    for side in 0..3 * num_tri {
        let partner = tri.gluings[side].expect("validated triangulation");
        if side < partner {
            let w = layout.width(side);
            for q in 0..=w {
                uf.union(segment_region(side, q), segment_region(partner, w - q));
            }
        }
    }
    let vertex_regions: Vec<usize> = (0..num_tri).flat_map(|t| (0..3).map(move |k| (t, k))).map(|(t, k)| corner_region(t, k, 0)).collect();
    for w in vertex_regions.windows(2) {
        uf.union(w[0], w[1]);
    }

    let mut roots: Vec<usize> = (0..regions).map(|r| uf.find(r)).collect();
    let mut ids: Vec<usize> = roots.clone();
    ids.sort_unstable();
    ids.dedup();
    for r in roots.iter_mut() {
        *r = ids.binary_search(r).expect("root present");
    }
    let count = ids.len();
    let mut chi = vec![0i64; count];
    for &r in &roots {
        chi[r] += 1;
    }
    for side in 0..3 * num_tri {
        let partner = tri.gluings[side].expect("validated triangulation");
        if side < partner {
            for q in 0..=layout.width(side) {
                chi[roots[segment_region(side, q)]] -= 1;
            }
        }
    }
    chi[roots[vertex_regions[0]]] += 1;
    let mut boundary = vec![0i64; count];
    for arc in arcs {
        let inner = corner_region(arc.triangle, arc.corner, arc.index);
        let outer = corner_region(arc.triangle, arc.corner, arc.index + 1);
        boundary[roots[inner]] += 1;
        boundary[roots[outer]] += 1;
    }
    let mut pieces: Vec<Piece> = (0..count)
        .map(|c| {
            let twice_genus = 2 - boundary[c] - chi[c];
            debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0, "non-integral genus");
            Piece { genus: (twice_genus / 2) as u32, boundary_circles: boundary[c] as u32 }
        })
        .collect();
    pieces.sort_unstable();
    Ok(pieces)
}
