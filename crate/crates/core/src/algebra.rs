//! Powers of simple twists over a disjoint curve system as integer
//! exponent vectors, and the rank conditions characterizing them.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{grow_max, DisjointnessTable, TorelliGeometryComplex, Vertex};
use crate::curve::{NormalCurve, Surface};
use crate::error::CurveError;
use crate::intmat::IntMatrix;
use crate::inventory::CurveInventory;
use crate::twist::{word_action, MappingClassWord};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("curves {0} and {1} of the system intersect")]
    NotDisjoint(usize, usize),
    #[error("system repeats curve {0}")]
    Repeated(usize),
    #[error("system has {0} curves, more than 3g-3 = {1}")]
    TooLarge(usize, usize),
    #[error("vectors live on different systems")]
    MixedSystems,
    #[error("vector is not a power of a simple twist on its system")]
    NotSimpleTwist,
}

/// Pairwise disjoint inventory curves, in the given order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointSystem {
    pub classes: Vec<usize>,
}

impl DisjointSystem {
    pub fn new(inv: &CurveInventory, table: &DisjointnessTable, classes: Vec<usize>) -> Result<Self, AlgebraError> {
        for (k, &a) in classes.iter().enumerate() {
            for &b in &classes[k + 1..] {
                if a == b {
                    return Err(AlgebraError::Repeated(a));
                }
                if !table.disjoint(a, b) {
                    return Err(AlgebraError::NotDisjoint(a, b));
                }
            }
        }
        let cap = 3 * inv.provenance.genus as usize - 3;
        if classes.len() > cap {
            return Err(AlgebraError::TooLarge(classes.len(), cap));
        }
        Ok(DisjointSystem { classes })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    fn position(&self, c: usize) -> Option<usize> {
        self.classes.iter().position(|&x| x == c)
    }

    /// Unit vector of every simple twist the system supports: `e_i` for each
    /// separating class, `e_i - e_j` for each homologous nonseparating pair.
    pub fn simple_twists(&self, inv: &CurveInventory) -> Vec<SimpleTwistVector> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            let ci = &inv.entries[self.classes[i]];
            if ci.separating {
                out.push(self.unit(&[(i, 1)]));
                continue;
            }
            for j in i + 1..n {
                let cj = &inv.entries[self.classes[j]];
                if !cj.separating && ci.curve.homology() == cj.curve.homology() {
                    out.push(self.unit(&[(i, 1), (j, -1)]));
                }
            }
        }
        out
    }

    fn unit(&self, entries: &[(usize, i64)]) -> SimpleTwistVector {
        let mut vector = vec![0; self.len()];
        for &(i, v) in entries {
            vector[i] = v;
        }
        SimpleTwistVector { system: self.classes.clone(), vector }
    }

    /// Rank of the group generated by every simple twist on the system.
    pub fn abelian_rank(&self, inv: &CurveInventory) -> usize {
        system_rank(inv, &self.classes)
    }
}

/// `#separating + sum over homology classes of (multiplicity - 1)`, the rank
/// of the lattice spanned by all simple twists on a disjoint system.
fn system_rank(inv: &CurveInventory, classes: &[usize]) -> usize {
    let mut sep = 0;
    let mut groups: BTreeMap<&[i64], usize> = BTreeMap::new();
    for &c in classes {
        let e = &inv.entries[c];
        if e.separating {
            sep += 1;
        } else {
            *groups.entry(e.curve.homology()).or_insert(0) += 1;
        }
    }
    sep + groups.values().map(|k| k - 1).sum::<usize>()
}

/// A power of a simple twist as an exponent vector on a system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleTwistVector {
    pub system: Vec<usize>,
    pub vector: Vec<i64>,
}

impl SimpleTwistVector {
    /// `n` times the twist about separating class `c`.
    pub fn separating(system: &DisjointSystem, c: usize, n: i64) -> Option<Self> {
        let i = system.position(c)?;
        (n != 0).then(|| system.unit(&[(i, n)]))
    }

    /// `n` times the bounding pair map `T_a T_b^-1`.
    pub fn bounding_pair(system: &DisjointSystem, a: usize, b: usize, n: i64) -> Option<Self> {
        let (i, j) = (system.position(a)?, system.position(b)?);
        (n != 0 && i != j).then(|| system.unit(&[(i, n), (j, -n)]))
    }

    /// Inventory indices of the classes with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.system.iter().zip(&self.vector).filter(|(_, &v)| v != 0).map(|(&c, _)| c).collect();
        s.sort_unstable();
        s
    }

    pub fn scaled(&self, n: i64) -> Self {
        SimpleTwistVector { system: self.system.clone(), vector: self.vector.iter().map(|v| v * n).collect() }
    }

    /// Checks the vector has one of the two simple-twist shapes.
    pub fn validate(&self, inv: &CurveInventory) -> Result<(), AlgebraError> {
        let nz: Vec<(usize, i64)> = self.vector.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect();
        let ok = match nz.as_slice() {
            [(i, _)] => inv.entries[self.system[*i]].separating,
            [(i, a), (j, b)] => {
                let (x, y) = (&inv.entries[self.system[*i]], &inv.entries[self.system[*j]]);
                *a == -*b && !x.separating && !y.separating && x.curve.homology() == y.curve.homology()
            }
            _ => false,
        };
        ok.then_some(()).ok_or(AlgebraError::NotSimpleTwist)
    }

    /// The mapping class, as a twist word on inventory curves.
    pub fn word(&self, inv: &CurveInventory) -> MappingClassWord {
        MappingClassWord::from_letters(self.system.iter().zip(&self.vector).map(|(&c, &n)| (inv.entries[c].curve.clone(), n)))
    }
}

/// Rank over the integers of the lattice spanned by the vectors.
pub fn subgroup_rank(vs: &[SimpleTwistVector]) -> Result<usize, AlgebraError> {
    let Some(first) = vs.first() else { return Ok(0) };
    if vs.iter().any(|v| v.system != first.system) {
        return Err(AlgebraError::MixedSystems);
    }
    Ok(IntMatrix::from_rows(&vs.iter().map(|v| v.vector.clone()).collect::<Vec<_>>()).rank())
}

/// Vectors of several twists re-expressed on the union of their supports.
fn on_common_system(parts: &[(&[usize], &[i64])]) -> Vec<SimpleTwistVector> {
    let mut system: Vec<usize> = parts.iter().flat_map(|(s, _)| s.iter().copied()).collect();
    system.sort_unstable();
    system.dedup();
    parts
        .iter()
        .map(|(s, v)| {
            let mut vector = vec![0; system.len()];
            for (c, x) in s.iter().zip(v.iter()) {
                vector[system.binary_search(c).expect("class in union")] += x;
            }
            SimpleTwistVector { system: system.clone(), vector }
        })
        .collect()
}

/// Twist of a TG vertex to the power `n`, as (support, exponents).
fn vertex_twist(v: &Vertex, n: i64) -> (Vec<usize>, Vec<i64>) {
    match *v {
        Vertex::Separating(c) => (vec![c], vec![n]),
        Vertex::BoundingPair(a, b) => (vec![a, b], vec![n, -n]),
    }
}

/// Rank of the group generated by the twists of three pairwise adjacent
/// vertices with the given powers, and of each of its pairs.
pub fn triple_ranks(vs: [&Vertex; 3], powers: [i64; 3]) -> (usize, [usize; 3]) {
    let tw: Vec<(Vec<usize>, Vec<i64>)> = vs.iter().zip(powers).map(|(v, n)| vertex_twist(v, n)).collect();
    let parts: Vec<(&[usize], &[i64])> = tw.iter().map(|(s, v)| (s.as_slice(), v.as_slice())).collect();
    let all = on_common_system(&parts);
    let rank = |idx: &[usize]| subgroup_rank(&idx.iter().map(|&i| all[i].clone()).collect::<Vec<_>>()).expect("one system");
    (rank(&[0, 1, 2]), [rank(&[0, 1]), rank(&[1, 2]), rank(&[0, 2])])
}

/// Whether the triple and each of its pairs generate a rank 2 group.
pub fn verify_marked_triangle_rank(tg: &TorelliGeometryComplex, t: &[usize; 3], powers: [i64; 3]) -> bool {
    let (triple, pairs) = triple_ranks([&tg.vertices[t[0]], &tg.vertices[t[1]], &tg.vertices[t[2]]], powers);
    triple == 2 && pairs.iter().all(|&r| r == 2)
}

/// Two further simple twists `g`, `h` on distinct supports, commuting with
/// `f` and each other, such that `f, g, h` generate a rank 2 group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub g: Vertex,
    pub h: Vertex,
}

/// Exhaustive search for a witness for the twist about vertex `f`. Every
/// disjoint system containing the support of `f` is covered, since
/// commuting twists are exactly those on pairwise adjacent vertices.
pub fn bp_criterion_search(tg: &TorelliGeometryComplex, f: usize) -> Option<Witness> {
    let nb = &tg.graph.adj[f];
    for (k, &g) in nb.iter().enumerate() {
        for &h in &nb[k + 1..] {
            if !tg.graph.has_edge(g, h) {
                continue;
            }
            let (r, _) = triple_ranks([&tg.vertices[f], &tg.vertices[g], &tg.vertices[h]], [1, 1, 1]);
            if r == 2 {
                return Some(Witness { g: tg.vertices[g], h: tg.vertices[h] });
            }
        }
    }
    None
}

/// Largest rank of an abelian group of simple twists over a disjoint system
/// of inventory curves, optionally containing the support of `must_contain`.
/// Returns the rank and a system attaining it.
pub fn max_abelian_rank(inv: &CurveInventory, table: &DisjointnessTable, must_contain: Option<&Vertex>) -> (usize, Vec<usize>) {
    // curves with no disjoint homologous partner never add rank
    let useful: Vec<usize> = (0..inv.len())
        .filter(|&i| {
            let e = &inv.entries[i];
            e.separating
                || (0..inv.len()).any(|j| {
                    j != i
                        && !inv.entries[j].separating
                        && table.disjoint(i, j)
                        && inv.entries[j].curve.homology() == e.curve.homology()
                })
        })
        .collect();
    let mut cur: Vec<usize> = must_contain.map(Vertex::curves).unwrap_or_default();
    let cand: Vec<usize> =
        useful.into_iter().filter(|&v| !cur.contains(&v) && cur.iter().all(|&c| table.disjoint(c, v))).collect();
    let score = |c: &[usize]| system_rank(inv, c);
    let bound = |c: &[usize], rest: &[usize]| system_rank(inv, c) + rest.len();
    let mut best = cur.clone();
    grow_max(table, &mut cur, &cand, &mut best, &score, &bound);
    best.sort_unstable();
    (system_rank(inv, &best), best)
}

/// Checks on a probe set that the twists of a marked triangle satisfy
/// `f g = h` and pairwise commute. Returns the number of probes checked.
pub fn cross_validate_triangle(
    s: &Surface,
    inv: &CurveInventory,
    tg: &TorelliGeometryComplex,
    t: &[usize; 3],
    probes: &[NormalCurve],
) -> Result<bool, CurveError> {
    let (Vertex::BoundingPair(a, b), Vertex::BoundingPair(..), Vertex::BoundingPair(..)) =
        (tg.vertices[t[0]], tg.vertices[t[1]], tg.vertices[t[2]])
    else {
        return Ok(false);
    };
    let mut support: Vec<usize> = t.iter().flat_map(|&v| tg.vertices[v].curves()).collect();
    support.sort_unstable();
    support.dedup();
    let c = *support.iter().find(|&&x| x != a && x != b).expect("three support classes");
    let curve = |i: usize| inv.entries[i].curve.clone();
    let bp = |x: usize, y: usize| MappingClassWord::from_letters([(curve(x), 1), (curve(y), -1)]);
    let (f, g, h) = (bp(a, b), bp(b, c), bp(a, c));
    let fg = f.then(&g);
    let gf = g.then(&f);
    let results: Vec<bool> = probes
        .par_iter()
        .map(|p| Ok(word_action(s, &fg, p)? == word_action(s, &h, p)? && word_action(s, &gf, p)? == word_action(s, &fg, p)?))
        .collect::<Result<_, CurveError>>()?;
    Ok(results.into_iter().all(|x| x))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct P52Report {
    pub genus: u32,
    pub max_abelian_rank: usize,
    pub expected: usize,
    pub attaining_system: Vec<usize>,
    pub systems_over_bound: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct P6Report {
    pub bp_twists_in_triangles: usize,
    pub bp_with_witness: usize,
    pub separating_twists: usize,
    pub separating_with_witness: usize,
    /// Bounding pairs outside every marked triangle, with and without a
    /// witness; not part of the verdict.
    pub other_bp_twists: usize,
    pub other_bp_with_witness: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct P7Report {
    pub marked_triangles: usize,
    pub power_triples: usize,
    pub marked_checks: usize,
    pub marked_passing: usize,
    pub non_marked_sampled: usize,
    pub non_marked_violating: usize,
    pub cross_validated_triangles: usize,
    pub cross_validation_probes: usize,
    pub cross_validation_passing: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropsReport {
    #[serde(rename = "P5.2")]
    pub p5_2: P52Report,
    #[serde(rename = "P6")]
    pub p6: P6Report,
    #[serde(rename = "P7")]
    pub p7: P7Report,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropsOptions {
    pub non_marked_samples: usize,
    pub cross_validate_triangles: usize,
    pub probes: usize,
    pub seed: u64,
}

/// Power triples with entries in `{+-1, +-2, +-3}`.
pub fn power_triples() -> Vec<[i64; 3]> {
    const P: [i64; 6] = [-3, -2, -1, 1, 2, 3];
    P.iter().flat_map(|&a| P.iter().flat_map(move |&b| P.iter().map(move |&c| [a, b, c]))).collect()
}

pub fn p5_2(inv: &CurveInventory, table: &DisjointnessTable) -> P52Report {
    let genus = inv.provenance.genus;
    let (rank, system) = max_abelian_rank(inv, table, None);
    P52Report {
        genus,
        max_abelian_rank: rank,
        expected: 2 * genus as usize - 3,
        attaining_system: system,
        systems_over_bound: usize::from(rank > 2 * genus as usize - 3),
    }
}

pub fn p6(tg: &TorelliGeometryComplex) -> P6Report {
    let in_triangle: std::collections::BTreeSet<usize> = tg.marked_triangles.iter().flatten().copied().collect();
    let found: Vec<bool> = (0..tg.vertices.len()).into_par_iter().map(|v| bp_criterion_search(tg, v).is_some()).collect();
    let mut r = P6Report {
        bp_twists_in_triangles: 0,
        bp_with_witness: 0,
        separating_twists: 0,
        separating_with_witness: 0,
        other_bp_twists: 0,
        other_bp_with_witness: 0,
    };
    for (v, &w) in found.iter().enumerate() {
        let w = usize::from(w);
        if !tg.vertices[v].is_bounding_pair() {
            r.separating_twists += 1;
            r.separating_with_witness += w;
        } else if in_triangle.contains(&v) {
            r.bp_twists_in_triangles += 1;
            r.bp_with_witness += w;
        } else {
            r.other_bp_twists += 1;
            r.other_bp_with_witness += w;
        }
    }
    r
}

pub fn p7(s: &Surface, inv: &CurveInventory, tg: &TorelliGeometryComplex, opts: &PropsOptions) -> Result<P7Report, CurveError> {
    let powers = power_triples();
    let passing: usize = tg
        .marked_triangles
        .par_iter()
        .map(|t| powers.iter().filter(|&&p| verify_marked_triangle_rank(tg, t, p)).count())
        .sum();

    // pairwise adjacent bounding pair triples on at least four classes
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let bps: Vec<usize> = (0..tg.vertices.len()).filter(|&v| tg.vertices[v].is_bounding_pair()).collect();
    let mut triples = Vec::new();
    for &u in &bps {
        let nb: Vec<usize> = tg.graph.adj[u].iter().copied().filter(|&v| v > u && tg.vertices[v].is_bounding_pair()).collect();
        for (k, &v) in nb.iter().enumerate() {
            for &w in &nb[k + 1..] {
                if !tg.graph.has_edge(v, w) {
                    continue;
                }
                let mut support: Vec<usize> = [u, v, w].iter().flat_map(|&x| tg.vertices[x].curves()).collect();
                support.sort_unstable();
                support.dedup();
                if support.len() >= 4 {
                    triples.push([u, v, w]);
                }
            }
        }
    }
    let sampled: Vec<[usize; 3]> = triples.choose_multiple(&mut rng, opts.non_marked_samples).copied().collect();
    let violating = sampled
        .iter()
        .filter(|t| {
            let p = *powers.choose(&mut rng).expect("powers nonempty");
            !verify_marked_triangle_rank(tg, t, p)
        })
        .count();

    // the shortest curves keep the twisted probes short
    let mut probes = inv.curves();
    probes.sort();
    probes.truncate(opts.probes);
    let checked: Vec<[usize; 3]> = tg.marked_triangles.choose_multiple(&mut rng, opts.cross_validate_triangles).copied().collect();
    let mut cross_ok = 0;
    for t in &checked {
        if cross_validate_triangle(s, inv, tg, t, &probes)? {
            cross_ok += 1;
        }
    }
    Ok(P7Report {
        marked_triangles: tg.marked_triangles.len(),
        power_triples: powers.len(),
        marked_checks: tg.marked_triangles.len() * powers.len(),
        marked_passing: passing,
        non_marked_sampled: sampled.len(),
        non_marked_violating: violating,
        cross_validated_triangles: checked.len(),
        cross_validation_probes: probes.len(),
        cross_validation_passing: cross_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SimpleTwistVector {
        SimpleTwistVector { system: (0..xs.len()).collect(), vector: xs.to_vec() }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(subgroup_rank(&[v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[1, 0, -1])]), Ok(2));
        assert_eq!(subgroup_rank(&[v(&[0, 3, 0])]), Ok(1));
        assert_eq!(subgroup_rank(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]), Ok(3));
        assert_eq!(subgroup_rank(&[]), Ok(0));
        let other = SimpleTwistVector { system: vec![5, 6, 7], vector: vec![1, 0, 0] };
        assert_eq!(subgroup_rank(&[v(&[1, 0, 0]), other]), Err(AlgebraError::MixedSystems));
    }

    #[test]
    fn marked_triangle_shape() {
        let t = [Vertex::BoundingPair(0, 1), Vertex::BoundingPair(1, 2), Vertex::BoundingPair(0, 2)];
        for p in power_triples() {
            assert_eq!(triple_ranks([&t[0], &t[1], &t[2]], p), (2, [2, 2, 2]));
        }
        let spread = [Vertex::BoundingPair(0, 1), Vertex::BoundingPair(2, 3), Vertex::BoundingPair(4, 5)];
        assert_eq!(triple_ranks([&spread[0], &spread[1], &spread[2]], [1, 1, 1]).0, 3);
        let sep = [Vertex::Separating(0), Vertex::Separating(1), Vertex::BoundingPair(2, 3)];
        assert_eq!(triple_ranks([&sep[0], &sep[1], &sep[2]], [2, 3, 5]).0, 3);
    }

    #[test]
    fn power_triples_cover_all_signs() {
        let p = power_triples();
        assert_eq!(p.len(), 216);
        assert!(p.iter().all(|t| t.iter().all(|&x| x != 0 && x.abs() <= 3)));
    }
}
