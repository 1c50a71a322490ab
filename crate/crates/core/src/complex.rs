//! Finite pieces of the Torelli geometry and the separating curve complex,
//! induced on a curve inventory.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::Surface;
use crate::error::CurveError;
use crate::inventory::CurveInventory;

/// Pairwise disjointness of inventory curves, as a dense bit matrix.
#[derive(Clone, Debug)]
pub struct DisjointnessTable {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl DisjointnessTable {
    /// Computes every pair. Pairs with nonzero algebraic intersection are
    /// settled without tracing.
    pub fn compute(s: &Surface, inv: &CurveInventory) -> Result<Self, CurveError> {
        let n = inv.len();
        let words = n.div_ceil(64);
        let curves = inv.curves();
        // J h for every curve, so each pair costs one dot product
        let paired: Vec<Vec<i64>> = curves.iter().map(|c| s.intersection_form().mul_vec(c.homology())).collect();
        let rows: Vec<Vec<u64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for j in 0..n {
                    let disjoint = if i == j {
                        true
                    } else if j < i {
                        continue;
                    } else if curves[i].homology().iter().zip(&paired[j]).map(|(a, b)| a * b).sum::<i64>() != 0 {
                        false
                    } else {
                        s.disjoint(&curves[i], &curves[j])?
                    };
                    if disjoint {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                Ok(row)
            })
            .collect::<Result<_, CurveError>>()?;
        let mut bits = vec![0u64; n * words];
        for (i, row) in rows.iter().enumerate() {
            bits[i * words..(i + 1) * words].copy_from_slice(row);
        }
        // mirror the upper triangle
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j / 64] >> (j % 64) & 1 == 1 {
                    bits[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        Ok(DisjointnessTable { n, words, bits })
    }

    /// Table of `n` abstract curves with the given symmetric relation.
    pub fn from_predicate(n: usize, disjoint: impl Fn(usize, usize) -> bool) -> Self {
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if i == j || disjoint(i.min(j), i.max(j)) {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        DisjointnessTable { n, words, bits }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Whether curves `i` and `j` have disjoint representatives; a curve is
    /// disjoint from itself.
    #[inline]
    pub fn disjoint(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }
}

/// A vertex of the Torelli geometry, by inventory indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Vertex {
    Separating(usize),
    /// Constituents in increasing order.
    BoundingPair(usize, usize),
}

impl Vertex {
    pub fn curves(&self) -> Vec<usize> {
        match *self {
            Vertex::Separating(i) => vec![i],
            Vertex::BoundingPair(i, j) => vec![i, j],
        }
    }

    pub fn is_bounding_pair(&self) -> bool {
        matches!(self, Vertex::BoundingPair(..))
    }
}

/// Undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub adj: Vec<Vec<usize>>,
}

/// Component structure of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    /// Component size to number of components of that size.
    pub size_histogram: BTreeMap<usize, usize>,
    /// Diameter of the largest component (first one on ties).
    pub diameter: Option<usize>,
}

impl Graph {
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn bfs(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices are reached");
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Component label of every vertex, numbered by smallest member.
    pub fn connected_components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.len()];
        let mut next = 0;
        for v in 0..self.len() {
            if label[v] != usize::MAX {
                continue;
            }
            label[v] = next;
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// A shortest path from `u` to `v`, both included.
    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.len()];
        prev[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut path = vec![v];
                let mut cur = v;
                while cur != u {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &y in &self.adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Exact diameter of the component containing `start`, by a BFS from
    /// each of its vertices.
    pub fn component_diameter(&self, start: usize) -> usize {
        let members: Vec<usize> = self.bfs(start).iter().enumerate().filter_map(|(v, d)| d.map(|_| v)).collect();
        members
            .par_iter()
            .map(|&v| self.bfs(v).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn report(&self) -> ComponentReport {
        let labels = self.connected_components();
        let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
        let mut sizes = vec![0usize; count];
        for &l in &labels {
            sizes[l] += 1;
        }
        let mut size_histogram = BTreeMap::new();
        for &s in &sizes {
            *size_histogram.entry(s).or_insert(0) += 1;
        }
        let largest = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)));
        let diameter = largest.map(|c| {
            let v = labels.iter().position(|&l| l == c).expect("nonempty component");
            self.component_diameter(v)
        });
        ComponentReport { vertices: self.len(), edges: self.edge_count(), components: count, size_histogram, diameter }
    }
}

/// The Torelli geometry induced on an inventory.
#[derive(Clone, Debug)]
pub struct TorelliGeometryComplex {
    pub vertices: Vec<Vertex>,
    pub graph: Graph,
    /// Vertex triples in increasing order.
    pub marked_triangles: Vec<[usize; 3]>,
}

impl TorelliGeometryComplex {
    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Marked triangles containing vertex `v`.
    pub fn triangles_at(&self, v: usize) -> impl Iterator<Item = &[usize; 3]> {
        self.marked_triangles.iter().filter(move |t| t.contains(&v))
    }
}

/// Whether two vertices span an edge: distinct, and every constituent of
/// one is disjoint from every constituent of the other.
pub fn vertices_adjacent(table: &DisjointnessTable, a: &Vertex, b: &Vertex) -> bool {
    a != b && a.curves().iter().all(|&x| b.curves().iter().all(|&y| table.disjoint(x, y)))
}

/// Bounding pairs among the inventory's nonseparating curves: disjoint,
/// distinct, homologous, and cutting the surface in two.
pub fn bounding_pairs(s: &Surface, inv: &CurveInventory, table: &DisjointnessTable) -> Result<Vec<(usize, usize)>, CurveError> {
    let groups = homology_groups(inv);
    let candidates: Vec<(usize, usize)> = groups
        .values()
        .flat_map(|g| {
            g.iter().enumerate().flat_map(move |(k, &i)| g[k + 1..].iter().map(move |&j| (i, j)))
        })
        .filter(|&(i, j)| table.disjoint(i, j))
        .collect();
    let checked: Vec<Option<(usize, usize)>> = candidates
        .par_iter()
        .map(|&(i, j)| Ok(s.is_bounding_pair(&inv.entries[i].curve, &inv.entries[j].curve)?.then_some((i, j))))
        .collect::<Result<_, CurveError>>()?;
    let mut out: Vec<(usize, usize)> = checked.into_iter().flatten().collect();
    out.sort_unstable();
    Ok(out)
}

/// Nonseparating curves grouped by homology class. Canonical orientations
/// make equal vectors the same as classes equal up to sign.
pub fn homology_groups(inv: &CurveInventory) -> BTreeMap<Vec<i64>, Vec<usize>> {
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, e) in inv.entries.iter().enumerate() {
        if !e.separating {
            groups.entry(e.curve.homology().to_vec()).or_default().push(i);
        }
    }
    groups
}

/// Builds the induced Torelli geometry with its marked triangles.
pub fn build_tg(s: &Surface, inv: &CurveInventory, table: &DisjointnessTable) -> Result<TorelliGeometryComplex, CurveError> {
    let pairs = bounding_pairs(s, inv, table)?;
    let mut vertices: Vec<Vertex> = inv
        .entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.separating)
        .map(|(i, _)| Vertex::Separating(i))
        .collect();
    vertices.extend(pairs.iter().map(|&(i, j)| Vertex::BoundingPair(i, j)));
    vertices.sort_unstable();
    let adj: Vec<Vec<usize>> = (0..vertices.len())
        .into_par_iter()
        .map(|u| (0..vertices.len()).filter(|&v| vertices_adjacent(table, &vertices[u], &vertices[v])).collect())
        .collect();
    let graph = Graph { adj };

    // triples of curves that are pairwise bounding pairs
    let mut partners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(i, j) in &pairs {
        partners.entry(i).or_default().push(j);
    }
    let is_pair = |i: usize, j: usize| pairs.binary_search(&(i.min(j), i.max(j))).is_ok();
    let mut marked_triangles = Vec::new();
    for (&i, js) in &partners {
        for (k, &j) in js.iter().enumerate() {
            for &l in &js[k + 1..] {
                if is_pair(j, l) {
                    let find = |a: usize, b: usize| {
                        let v = Vertex::BoundingPair(a.min(b), a.max(b));
                        vertices.binary_search(&v).expect("bounding pair vertex present")
                    };
                    let mut t = [find(i, j), find(j, l), find(i, l)];
                    t.sort_unstable();
                    marked_triangles.push(t);
                }
            }
        }
    }
    marked_triangles.sort_unstable();
    Ok(TorelliGeometryComplex { vertices, graph, marked_triangles })
}

/// Whether three vertices form a marked triangle: bounding pairs on exactly
/// three pairwise disjoint curve classes, each pair of classes used once.
pub fn detect_marked_triangle(s: &Surface, inv: &CurveInventory, table: &DisjointnessTable, vs: [&Vertex; 3]) -> bool {
    let mut pairs = Vec::with_capacity(3);
    for v in vs {
        match *v {
            Vertex::BoundingPair(i, j) => pairs.push((i, j)),
            Vertex::Separating(_) => return false,
        }
    }
    let mut support: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
    support.sort_unstable();
    support.dedup();
    if support.len() != 3 {
        return false;
    }
    pairs.sort_unstable();
    pairs.dedup();
    if pairs.len() != 3 {
        return false;
    }
    let (a, b, c) = (support[0], support[1], support[2]);
    let all_disjoint = table.disjoint(a, b) && table.disjoint(b, c) && table.disjoint(a, c);
    let nonsep = support.iter().all(|&i| !s.is_separating(&inv.entries[i].curve));
    all_disjoint && nonsep
}

/// The complex of separating curves, or of genus-one separating curves,
/// with disjointness edges.
#[derive(Clone, Debug)]
pub struct SeparatingComplex {
    /// Inventory index of each vertex.
    pub curves: Vec<usize>,
    pub graph: Graph,
    pub genus_one_only: bool,
}

pub fn build_tgs(inv: &CurveInventory, table: &DisjointnessTable, genus_one_only: bool) -> SeparatingComplex {
    let curves: Vec<usize> = inv
        .entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.separating && (!genus_one_only || e.sides.is_some_and(|(h, _)| h == 1)))
        .map(|(i, _)| i)
        .collect();
    let adj = curves
        .par_iter()
        .map(|&i| (0..curves.len()).filter(|&k| curves[k] != i && table.disjoint(i, curves[k])).collect())
        .collect();
    SeparatingComplex { curves, graph: Graph { adj }, genus_one_only }
}

/// Maximal pairwise disjoint systems (maximal cliques of the disjointness
/// graph), optionally only those containing all of `must_contain`. Stops
/// after `limit` systems; the flag reports whether the list is complete.
pub fn max_disjoint_systems(table: &DisjointnessTable, must_contain: &[usize], limit: usize) -> (Vec<Vec<usize>>, bool) {
    let n = table.len();
    let mut r: Vec<usize> = must_contain.to_vec();
    r.sort_unstable();
    r.dedup();
    for (k, &a) in r.iter().enumerate() {
        if r[k + 1..].iter().any(|&b| !table.disjoint(a, b)) {
            return (Vec::new(), true);
        }
    }
    let p: Vec<usize> = (0..n).filter(|&v| !r.contains(&v) && r.iter().all(|&x| table.disjoint(x, v))).collect();
    let mut out = Vec::new();
    let complete = bron_kerbosch(table, &mut r, p, Vec::new(), &mut out, limit);
    (out, complete)
}

fn bron_kerbosch(
    table: &DisjointnessTable,
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> bool {
    if p.is_empty() && x.is_empty() {
        if out.len() >= limit {
            return false;
        }
        let mut system = r.clone();
        system.sort_unstable();
        out.push(system);
        return true;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| v != u && table.disjoint(u, v)).count())
        .expect("p or x nonempty");
    let mut p = p;
    let mut x = x;
    let branch: Vec<usize> = p.iter().copied().filter(|&v| v == pivot || !table.disjoint(pivot, v)).collect();
    for v in branch {
        let np: Vec<usize> = p.iter().copied().filter(|&w| w != v && table.disjoint(v, w)).collect();
        let nx: Vec<usize> = x.iter().copied().filter(|&w| w != v && table.disjoint(v, w)).collect();
        r.push(v);
        let ok = bron_kerbosch(table, r, np, nx, out, limit);
        r.pop();
        if !ok {
            return false;
        }
        p.retain(|&w| w != v);
        x.push(v);
    }
    true
}

/// Size of the largest pairwise disjoint system, by branch and bound.
pub fn largest_disjoint_system(table: &DisjointnessTable) -> Vec<usize> {
    let mut best = Vec::new();
    let mut cur = Vec::new();
    let all: Vec<usize> = (0..table.len()).collect();
    grow_max(table, &mut cur, &all, &mut best, &|c: &[usize]| c.len(), &|c: &[usize], cand: &[usize]| c.len() + cand.len());
    best.sort_unstable();
    best
}

/// Generic clique search maximizing a score that never decreases when a
/// vertex is added; `bound` must dominate the score of every extension.
pub(crate) fn grow_max<S, B>(
    table: &DisjointnessTable,
    cur: &mut Vec<usize>,
    cand: &[usize],
    best: &mut Vec<usize>,
    score: &S,
    bound: &B,
) where
    S: Fn(&[usize]) -> usize,
    B: Fn(&[usize], &[usize]) -> usize,
{
    if score(cur) > score(best) || (best.is_empty() && !cur.is_empty()) {
        *best = cur.clone();
    }
    if cand.is_empty() || bound(cur, cand) <= score(best) {
        return;
    }
    for (k, &v) in cand.iter().enumerate() {
        let rest: Vec<usize> = cand[k + 1..].iter().copied().filter(|&w| table.disjoint(v, w)).collect();
        cur.push(v);
        grow_max(table, cur, &rest, best, score, bound);
        cur.pop();
        if bound(cur, &cand[k + 1..]) <= score(best) {
            return;
        }
    }
}
