//! Admissible pairs, their decoding to nonseparating curves, and the graph
//! of Type I and Type II moves between them.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{TorelliGeometryComplex, Vertex};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EncodingError {
    #[error("vertex {0} is not a bounding pair")]
    NotBoundingPair(usize),
    #[error("vertex {0} is not a separating curve")]
    NotSeparating(usize),
    #[error("certificate does not determine a single curve")]
    MalformedCertificate,
}

/// `(gamma, delta)` as vertex indices of the ambient complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdmissiblePair {
    pub gamma: usize,
    pub delta: usize,
}

/// A marked triangle `{gamma, gamma_prime, beta}` read as a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Certificate {
    pub gamma_prime: usize,
    pub beta: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovePath {
    pub nodes: Vec<AdmissiblePair>,
    pub moves: Vec<MoveKind>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reachability {
    Found(MovePath),
    /// Every pair reachable from the start was expanded.
    Exhausted { expanded: usize },
    /// The expansion budget ran out first.
    BudgetCut { expanded: usize },
}

/// A complex with its marked triangles indexed by vertex.
pub struct Encoder<'a> {
    pub tg: &'a TorelliGeometryComplex,
    triangles_at: HashMap<usize, Vec<[usize; 3]>>,
    separating: Vec<usize>,
}

impl<'a> Encoder<'a> {
    pub fn new(tg: &'a TorelliGeometryComplex) -> Self {
        let mut triangles_at: HashMap<usize, Vec<[usize; 3]>> = HashMap::new();
        for t in &tg.marked_triangles {
            for &v in t {
                triangles_at.entry(v).or_default().push(*t);
            }
        }
        let separating = (0..tg.vertices.len()).filter(|&v| !tg.vertices[v].is_bounding_pair()).collect();
        Encoder { tg, triangles_at, separating }
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.tg.graph.has_edge(u, v)
    }

    fn certifies(&self, delta: usize, gamma: usize, c: &Certificate) -> bool {
        self.adjacent(delta, c.beta) && !self.adjacent(delta, gamma) && !self.adjacent(delta, c.gamma_prime)
    }

    /// Every marked triangle certifying `(gamma, delta)`, sorted.
    pub fn certify_admissible(&self, gamma: usize, delta: usize) -> Result<Vec<Certificate>, EncodingError> {
        if !self.tg.vertices[gamma].is_bounding_pair() {
            return Err(EncodingError::NotBoundingPair(gamma));
        }
        if self.tg.vertices[delta].is_bounding_pair() {
            return Err(EncodingError::NotSeparating(delta));
        }
        let mut out = Vec::new();
        for t in self.triangles_at.get(&gamma).into_iter().flatten() {
            let others: Vec<usize> = t.iter().copied().filter(|&v| v != gamma).collect();
            for (gp, beta) in [(others[0], others[1]), (others[1], others[0])] {
                let c = Certificate { gamma_prime: gp, beta };
                if self.certifies(delta, gamma, &c) {
                    out.push(c);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn is_admissible(&self, p: &AdmissiblePair) -> bool {
        self.certify_admissible(p.gamma, p.delta).is_ok_and(|c| !c.is_empty())
    }

    /// Inventory index of the constituent of `gamma` missing from `beta`.
    pub fn decode(&self, p: &AdmissiblePair, c: &Certificate) -> Result<usize, EncodingError> {
        let (Vertex::BoundingPair(a, b), Vertex::BoundingPair(x, y)) = (self.tg.vertices[p.gamma], self.tg.vertices[c.beta]) else {
            return Err(EncodingError::MalformedCertificate);
        };
        match ([a, b].map(|v| v == x || v == y), [a, b]) {
            ([false, true], [a, _]) => Ok(a),
            ([true, false], [_, b]) => Ok(b),
            _ => Err(EncodingError::MalformedCertificate),
        }
    }

    /// Decode through the first certificate of an admissible pair.
    pub fn decode_pair(&self, p: &AdmissiblePair) -> Result<usize, EncodingError> {
        let certs = self.certify_admissible(p.gamma, p.delta)?;
        self.decode(p, certs.first().ok_or(EncodingError::MalformedCertificate)?)
    }

    /// `(gamma', delta)` for every certificate, with the same triangle.
    pub fn moves_i(&self, p: &AdmissiblePair) -> Vec<AdmissiblePair> {
        let mut out: Vec<AdmissiblePair> = self
            .certify_admissible(p.gamma, p.delta)
            .unwrap_or_default()
            .iter()
            .map(|c| AdmissiblePair { gamma: c.gamma_prime, delta: p.delta })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `(gamma, delta')` for every `delta' != delta` certified by a triangle
    /// that also certifies `p`.
    pub fn moves_ii(&self, p: &AdmissiblePair) -> Vec<AdmissiblePair> {
        let mut out = Vec::new();
        for c in self.certify_admissible(p.gamma, p.delta).unwrap_or_default() {
            for &d in &self.tg.graph.adj[c.beta] {
                if d != p.delta && !self.tg.vertices[d].is_bounding_pair() && self.certifies(d, p.gamma, &c) {
                    out.push(AdmissiblePair { gamma: p.gamma, delta: d });
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn neighbours(&self, p: &AdmissiblePair) -> Vec<(AdmissiblePair, MoveKind)> {
        let mut out: Vec<_> = self.moves_i(p).into_iter().map(|q| (q, MoveKind::I)).collect();
        out.extend(self.moves_ii(p).into_iter().map(|q| (q, MoveKind::II)));
        out
    }

    /// Shortest move path from `p` to `q` by breadth-first search.
    pub fn move_reachable(&self, p: &AdmissiblePair, q: &AdmissiblePair, budget: usize) -> Reachability {
        let mut prev: HashMap<AdmissiblePair, Option<(AdmissiblePair, MoveKind)>> = HashMap::from([(*p, None)]);
        let mut queue = VecDeque::from([*p]);
        let mut expanded = 0;
        let path_to = |prev: &HashMap<AdmissiblePair, Option<(AdmissiblePair, MoveKind)>>, end: AdmissiblePair| {
            let (mut nodes, mut moves) = (vec![end], Vec::new());
            let mut cur = end;
            while let Some(Some((from, kind))) = prev.get(&cur) {
                nodes.push(*from);
                moves.push(*kind);
                cur = *from;
            }
            nodes.reverse();
            moves.reverse();
            MovePath { nodes, moves }
        };
        if p == q {
            return Reachability::Found(path_to(&prev, *q));
        }
        while let Some(x) = queue.pop_front() {
            if expanded >= budget {
                return Reachability::BudgetCut { expanded };
            }
            expanded += 1;
            for (y, kind) in self.neighbours(&x) {
                if prev.contains_key(&y) {
                    continue;
                }
                prev.insert(y, Some((x, kind)));
                if y == *q {
                    return Reachability::Found(path_to(&prev, y));
                }
                queue.push_back(y);
            }
        }
        Reachability::Exhausted { expanded }
    }

    /// Every admissible pair of the complex, sorted.
    pub fn all_pairs(&self) -> Vec<AdmissiblePair> {
        let mut gammas: Vec<usize> = self.triangles_at.keys().copied().collect();
        gammas.sort_unstable();
        gammas
            .par_iter()
            .flat_map_iter(|&g| {
                self.separating
                    .iter()
                    .map(move |&d| AdmissiblePair { gamma: g, delta: d })
                    .filter(|p| self.is_admissible(p))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Connected components of the whole move graph on `pairs`, as a
    /// component label per pair.
    pub fn move_components(&self, pairs: &[AdmissiblePair]) -> Vec<usize> {
        let index: HashMap<AdmissiblePair, usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let edges: Vec<Vec<usize>> = pairs
            .par_iter()
            .map(|p| self.neighbours(p).iter().filter_map(|(q, _)| index.get(q).copied()).collect())
            .collect();
        let mut label = vec![usize::MAX; pairs.len()];
        let mut next = 0;
        for v in 0..pairs.len() {
            if label[v] != usize::MAX {
                continue;
            }
            label[v] = next;
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &w in &edges[u] {
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
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentOptions {
    pub move_samples: usize,
    pub pair_samples: usize,
    pub budget: usize,
    /// Retries of budget-cut searches, each with ten times the budget.
    pub escalations: u32,
    pub seed: u64,
}

/// Outcome of a same-decode reachability query that found no path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub from: AdmissiblePair,
    pub to: AdmissiblePair,
    /// "inventory" when the start's move component was exhausted, "budget"
    /// when the search was cut.
    pub cause: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EncodingReport {
    pub admissible_pairs: usize,
    pub decode_classes: usize,
    pub moves_sampled: usize,
    pub moves_sound: usize,
    pub soundness_rate: f64,
    pub same_decode_sampled: usize,
    pub same_decode_connected: usize,
    pub completeness_rate: f64,
    pub path_length_histogram: BTreeMap<usize, usize>,
    pub failures: Vec<Failure>,
    pub different_decode_sampled: usize,
    pub different_decode_connected: usize,
    /// Move-graph components, over all admissible pairs, whose pairs do not
    /// share one decode value.
    pub mixed_components: usize,
    pub move_components: usize,
}

/// Soundness, completeness and separation of the encoding on one complex.
pub fn encoding_experiment(enc: &Encoder, opts: &ExperimentOptions) -> Result<EncodingReport, EncodingError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pairs = enc.all_pairs();
    let decodes: Vec<usize> = pairs.par_iter().map(|p| enc.decode_pair(p)).collect::<Result<_, _>>()?;
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &d) in decodes.iter().enumerate() {
        groups.entry(d).or_default().push(i);
    }

    // soundness over sampled move applications
    let mut moves_sampled = 0;
    let mut moves_sound = 0;
    if !pairs.is_empty() {
        for _ in 0..opts.move_samples {
            let i = rng.gen_range(0..pairs.len());
            let out = enc.neighbours(&pairs[i]);
            let Some((q, _)) = out.choose(&mut rng) else { continue };
            moves_sampled += 1;
            if enc.decode_pair(q)? == decodes[i] {
                moves_sound += 1;
            }
        }
    }

    // completeness over sampled same-decode pairs
    let multi: Vec<&Vec<usize>> = groups.values().filter(|g| g.len() > 1).collect();
    let mut same = Vec::new();
    if !multi.is_empty() {
        for _ in 0..opts.pair_samples {
            let g = multi[rng.gen_range(0..multi.len())];
            let picked: Vec<&usize> = g.choose_multiple(&mut rng, 2).collect();
            same.push((pairs[*picked[0]], pairs[*picked[1]]));
        }
    }
    let outcomes: Vec<Reachability> = same
        .par_iter()
        .map(|(p, q)| {
            let mut budget = opts.budget;
            let mut r = enc.move_reachable(p, q, budget);
            for _ in 0..opts.escalations {
                if !matches!(r, Reachability::BudgetCut { .. }) {
                    break;
                }
                budget = budget.saturating_mul(10);
                r = enc.move_reachable(p, q, budget);
            }
            r
        })
        .collect();
    let mut path_length_histogram = BTreeMap::new();
    let mut failures = Vec::new();
    for ((p, q), r) in same.iter().zip(&outcomes) {
        match r {
            Reachability::Found(path) => *path_length_histogram.entry(path.moves.len()).or_insert(0) += 1,
            Reachability::Exhausted { .. } => failures.push(Failure { from: *p, to: *q, cause: "inventory".into() }),
            Reachability::BudgetCut { .. } => failures.push(Failure { from: *p, to: *q, cause: "budget".into() }),
        }
    }

    // separation over the whole finite move graph
    let labels = enc.move_components(&pairs);
    let mut decode_of: BTreeMap<usize, Option<usize>> = BTreeMap::new();
    let mut mixed = std::collections::BTreeSet::new();
    for (i, &l) in labels.iter().enumerate() {
        match decode_of.entry(l).or_insert(Some(decodes[i])) {
            Some(d) if *d != decodes[i] => {
                mixed.insert(l);
            }
            _ => {}
        }
    }
    let mut different_decode_sampled = 0;
    let mut different_decode_connected = 0;
    if groups.len() > 1 {
        for _ in 0..opts.pair_samples {
            let i = rng.gen_range(0..pairs.len());
            let j = rng.gen_range(0..pairs.len());
            if decodes[i] == decodes[j] {
                continue;
            }
            different_decode_sampled += 1;
            if labels[i] == labels[j] {
                different_decode_connected += 1;
            }
        }
    }

    let rate = |a: usize, b: usize| if b == 0 { 1.0 } else { a as f64 / b as f64 };
    Ok(EncodingReport {
        admissible_pairs: pairs.len(),
        decode_classes: groups.len(),
        moves_sampled,
        moves_sound,
        soundness_rate: rate(moves_sound, moves_sampled),
        same_decode_sampled: same.len(),
        same_decode_connected: same.len() - failures.len(),
        completeness_rate: rate(same.len() - failures.len(), same.len()),
        path_length_histogram,
        failures,
        different_decode_sampled,
        different_decode_connected,
        mixed_components: mixed.len(),
        move_components: decode_of.len(),
    })
}
