//! Simple closed curves in canonical form and their intersection theory.
//!
//! A curve is stored through its closed geodesic. The geodesic meets the
//! fan triangulation minimally, so its edge weights are a complete invariant
//! of the isotopy class, and two geodesics realize their geometric
//! intersection number.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{CurveError, SurfaceError};
use crate::hyperbolic::{trace_word, GeometryCache, Trace};
use crate::intmat::{bilinear, IntMatrix};
use crate::normal::{self, Piece};
use crate::surface::{build_closed_surface, HomologyBasis, Triangulation};

/// A triangulated closed surface together with everything curves need.
pub struct Surface {
    tri: Triangulation,
    basis: HomologyBasis,
    hash: Arc<str>,
    geometry: GeometryCache,
    side_inverse: Vec<bool>,
    verts: Vec<[f64; 2]>,
}

impl fmt::Debug for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surface(genus {}, {})", self.tri.genus, self.hash)
    }
}

impl Surface {
    pub fn new(genus: u32) -> Result<Self, SurfaceError> {
        Self::from_triangulation(build_closed_surface(genus)?)
    }

    pub fn from_triangulation(tri: Triangulation) -> Result<Self, SurfaceError> {
        let report = tri.validate();
        if let Some(p) = report.problems.first() {
            return Err(SurfaceError::Json(format!("invalid triangulation: {p}")));
        }
        let basis = tri.homology_basis()?;
        let hash: Arc<str> = tri.content_hash().into();
        let n = tri.polygon_sides;
        let mut side_inverse = vec![false; n];
        for (pos, side) in tri.boundary_side.iter().enumerate() {
            if let Some(s) = side {
                side_inverse[*s] = tri.slot(pos).reversed;
            }
        }
        let geometry = GeometryCache::new(tri.side_partner.clone());
        let verts = geometry.at(128).vertices_f64().to_vec();
        Ok(Surface { tri, basis, hash, geometry, side_inverse, verts })
    }

    pub fn genus(&self) -> u32 {
        self.tri.genus
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn basis(&self) -> &HomologyBasis {
        &self.basis
    }

    pub fn intersection_form(&self) -> &IntMatrix {
        &self.basis.pairing
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn sides(&self) -> usize {
        self.tri.polygon_sides
    }

    pub fn partner(&self, side: usize) -> usize {
        self.tri.side_partner[side]
    }

    fn point_f64(&self, side: usize, u: f64) -> [f64; 2] {
        let n = self.sides();
        let (a, b) = (self.verts[side], self.verts[(side + 1) % n]);
        [a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])]
    }

    /// The curve leaving the polygon through the sides in `letters`, in
    /// canonical form. Fails unless the word describes an essential simple
    /// closed curve.
    pub fn curve_from_word(&self, letters: &[usize]) -> Result<NormalCurve, CurveError> {
        let trace = trace_word(&self.geometry, letters)?;
        let curve = self.from_trace(trace);
        let k = self.self_intersection(&curve)?;
        if k > 0 {
            return Err(CurveError::NotSimple(k));
        }
        Ok(curve)
    }

    /// Canonical form of the curve whose normal coordinates are `weights`.
    /// The weights need not be minimal; the result carries the weights of
    /// the geodesic representative.
    pub fn curve_from_weights(&self, weights: &[u32]) -> Result<NormalCurve, CurveError> {
        let comps = normal::components(&self.tri, weights)?;
        match comps.len() {
            0 => Err(CurveError::Inessential),
            1 => self.curve_from_word(&comps[0].letters),
            k => Err(CurveError::MultipleComponents(k)),
        }
    }

    /// Rebuilds a stored curve, insisting that the stored weights are
    /// already canonical.
    pub fn curve_from_record(&self, record: &CurveRecord) -> Result<NormalCurve, CurveError> {
        if record.surface != *self.hash {
            return Err(CurveError::SurfaceMismatch(record.surface.clone(), self.hash.to_string()));
        }
        let c = self.curve_from_weights(&record.weights)?;
        if c.weights() != record.weights.as_slice() {
            return Err(CurveError::NotCanonical);
        }
        Ok(c)
    }

    fn from_trace(&self, trace: Trace) -> NormalCurve {
        let Trace { mut exits, mut exit_u, mut entry_u, prec, length } = trace;
        let mut homology = self.homology_of_exits(&exits);
        let reverse = match homology.iter().find(|&&v| v != 0) {
            Some(&v) => v < 0,
            None => {
                let rev = self.reversed_exits(&exits);
                min_rotation(&rev).1 < min_rotation(&exits).1
            }
        };
        if reverse {
            // reversed chord j is chord m - 1 - j run backwards
            exits = self.reversed_exits(&exits);
            exit_u.reverse();
            entry_u.reverse();
            std::mem::swap(&mut exit_u, &mut entry_u);
            homology.iter_mut().for_each(|v| *v = -*v);
        }
        let (r, _) = min_rotation(&exits);
        exits.rotate_left(r);
        exit_u.rotate_left(r);
        entry_u.rotate_left(r);
        let exit_f: Vec<f64> = exit_u.iter().map(Float::to_f64).collect();
        let entry_f: Vec<f64> = entry_u.iter().map(Float::to_f64).collect();
        let weights = self.weights_of_exits(&exits);
        let m = exits.len();
        let mut order: Vec<(usize, f64, u32)> = (0..m)
            .flat_map(|k| {
                let entry = (self.partner(exits[(k + m - 1) % m]), entry_f[k], 2 * k as u32);
                [entry, (exits[k], exit_f[k], 2 * k as u32 + 1)]
            })
            .collect();
        order.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let fragile = order.windows(2).any(|w| w[0].0 == w[1].0 && (w[1].1 - w[0].1).abs() <= NEAR);
        NormalCurve {
            surface: self.hash.clone(),
            data: Arc::new(CurveData { weights, exits, exit_u, exit_f, entry_u, entry_f, prec, length, homology, order, fragile }),
        }
    }

    fn reversed_exits(&self, exits: &[usize]) -> Vec<usize> {
        let m = exits.len();
        (0..m).map(|j| self.partner(exits[(2 * m - 2 - j) % m])).collect()
    }

    /// Coordinates `(alpha_1, beta_1, alpha_2, ...)` of the curve's class in
    /// the basis `a_1, b_1, ...`.
    fn homology_of_exits(&self, exits: &[usize]) -> Vec<i64> {
        let labels = 2 * self.tri.genus as usize;
        let mut through = vec![0i64; labels];
        for &s in exits {
            through[self.tri.side_edge[s]] += if self.side_inverse[s] { -1 } else { 1 };
        }
        // algebraic intersection of the curve with each basis cycle
        let with_cycle: Vec<i64> = self
            .basis
            .cycles
            .iter()
            .map(|cyc| cyc.iter().map(|&(e, fwd)| if fwd { through[e] } else { -through[e] }).sum())
            .collect();
        let g = self.tri.genus as usize;
        let mut h = vec![0i64; 2 * g];
        for i in 0..g {
            h[2 * i] = with_cycle[2 * i + 1];
            h[2 * i + 1] = -with_cycle[2 * i];
        }
        h
    }

    fn weights_of_exits(&self, exits: &[usize]) -> Vec<u32> {
        let n = self.sides();
        let labels = 2 * self.tri.genus as usize;
        let mut w = vec![0u32; self.tri.num_edges];
        let m = exits.len();
        for k in 0..m {
            let exit = exits[k];
            let entry = self.partner(exits[(k + m - 1) % m]);
            w[self.tri.side_edge[exit]] += 1;
            let (lo, hi) = (entry.min(exit), entry.max(exit));
            for d in (lo + 1).max(2)..=hi.min(n - 2) {
                w[labels + d - 2] += 1;
            }
        }
        w
    }

    fn check(&self, c: &NormalCurve) -> Result<(), CurveError> {
        if c.surface != self.hash {
            return Err(CurveError::SurfaceMismatch(c.surface.to_string(), self.hash.to_string()));
        }
        Ok(())
    }

    /// Boundary endpoints of the chords of `curves`, sorted along the
    /// polygon boundary. Returns per curve the ranks `[entry, exit]` of
    /// each chord.
    fn chord_ranks(&self, curves: &[&NormalCurve]) -> Result<Vec<Vec<[usize; 2]>>, CurveError> {
        #[derive(Clone, Copy)]
        struct Pt {
            side: usize,
            u: f64,
            curve: usize,
            chord: usize,
            exit: bool,
        }
        let mut pts = Vec::new();
        for (ci, c) in curves.iter().enumerate() {
            let d = &c.data;
            let m = d.exits.len();
            for k in 0..m {
                let prev = (k + m - 1) % m;
                pts.push(Pt { side: self.partner(d.exits[prev]), u: d.entry_f[k], curve: ci, chord: k, exit: false });
                pts.push(Pt { side: d.exits[k], u: d.exit_f[k], curve: ci, chord: k, exit: true });
            }
        }
        let exact = |p: &Pt| -> Float {
            let d = &curves[p.curve].data;
            if p.exit {
                d.exit_u[p.chord].clone()
            } else {
                d.entry_u[p.chord].clone()
            }
        };
        let mut degenerate = false;
        pts.sort_by(|a, b| {
            a.side.cmp(&b.side).then_with(|| {
                if (a.u - b.u).abs() > NEAR {
                    return a.u.partial_cmp(&b.u).expect("finite boundary parameter");
                }
                if (a.curve, a.chord, a.exit) == (b.curve, b.chord, b.exit) {
                    return Ordering::Equal;
                }
                match exact(a).partial_cmp(&exact(b)) {
                    Some(Ordering::Equal) | None => {
                        degenerate = true;
                        Ordering::Equal
                    }
                    Some(o) => o,
                }
            })
        });
        if degenerate {
            return Err(CurveError::Degenerate);
        }
        let mut ranks: Vec<Vec<[usize; 2]>> = curves.iter().map(|c| vec![[0, 0]; c.data.exits.len()]).collect();
        for (r, p) in pts.iter().enumerate() {
            ranks[p.curve][p.chord][usize::from(p.exit)] = r;
        }
        Ok(ranks)
    }

    /// Geometric intersection number of two curves.
    pub fn geometric_intersection(&self, a: &NormalCurve, b: &NormalCurve) -> Result<u64, CurveError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Ok(0);
        }
        let (da, db) = (&a.data, &b.data);
        if !da.fragile && !db.fragile {
            if let Some(n) = merged_crossings(&da.order, &db.order) {
                return Ok(n);
            }
        }
        let ranks = self.chord_ranks(&[a, b])?;
        let total = 2 * (ranks[0].len() + ranks[1].len());
        Ok(count_crossings(&ranks[0], &ranks[1], total))
    }

    /// Whether two curves have disjoint representatives.
    pub fn disjoint(&self, a: &NormalCurve, b: &NormalCurve) -> Result<bool, CurveError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Ok(true);
        }
        let (da, db) = (&a.data, &b.data);
        if !da.fragile && !db.fragile {
            if let Some(d) = merged_noncrossing(&da.order, &db.order) {
                return Ok(d);
            }
        }
        Ok(self.geometric_intersection(a, b)? == 0)
    }

    /// Number of transverse self-crossings of the geodesic.
    pub fn self_intersection(&self, c: &NormalCurve) -> Result<u64, CurveError> {
        let ranks = self.chord_ranks(&[c])?;
        let total = 2 * ranks[0].len();
        Ok(count_crossings(&ranks[0], &ranks[0], total) / 2)
    }

    /// For each chord of `c`, the chords of `t` it crosses, in order along
    /// the chord, with the sign of the crossing: `+1` when `t` passes from
    /// the right of `c` to its left.
    pub(crate) fn crossing_sequence(&self, c: &NormalCurve, t: &NormalCurve) -> Result<Vec<Vec<(usize, i8)>>, CurveError> {
        self.check(c)?;
        self.check(t)?;
        if c == t {
            return Ok(vec![Vec::new(); c.exits().len()]);
        }
        let ranks = self.chord_ranks(&[c, t])?;
        let (cd, td) = (&c.data, &t.data);
        let endpoints = |d: &CurveData, k: usize| -> [[f64; 2]; 2] {
            let m = d.exits.len();
            let prev = (k + m - 1) % m;
            [self.point_f64(self.partner(d.exits[prev]), d.entry_f[k]), self.point_f64(d.exits[k], d.exit_f[k])]
        };
        let cross = |a: [f64; 2], b: [f64; 2]| a[0] * b[1] - a[1] * b[0];
        let sub = |a: [f64; 2], b: [f64; 2]| [a[0] - b[0], a[1] - b[1]];
        let mut out = Vec::with_capacity(ranks[0].len());
        for (i, ri) in ranks[0].iter().enumerate() {
            let (l, r) = (ri[0].min(ri[1]), ri[0].max(ri[1]));
            let [p1, p2] = endpoints(cd, i);
            let mut hits: Vec<(f64, usize, i8)> = Vec::new();
            for (j, rj) in ranks[1].iter().enumerate() {
                let inside = |x: usize| l < x && x < r;
                if inside(rj[0]) == inside(rj[1]) {
                    continue;
                }
                let [q1, q2] = endpoints(td, j);
                let den = cross(sub(p2, p1), sub(q2, q1));
                let lambda = cross(sub(q1, p1), sub(q2, q1)) / den;
                // endpoints interleave, so the sign is read off the boundary order
                let sign = if inside(rj[0]) == (ri[0] < ri[1]) { 1 } else { -1 };
                debug_assert!(den.abs() < 1e-12 || (den > 0.0) == (sign > 0));
                hits.push((lambda, j, sign));
            }
            hits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
            if hits.windows(2).any(|w| (w[1].0 - w[0].0).abs() < 1e-9) {
                self.exact_order(cd, i, td, &mut hits)?;
            }
            out.push(hits.into_iter().map(|(_, j, s)| (j, s)).collect());
        }
        Ok(out)
    }

    fn exact_order(&self, cd: &CurveData, i: usize, td: &CurveData, hits: &mut [(f64, usize, i8)]) -> Result<(), CurveError> {
        let prec = cd.prec.max(td.prec);
        let geom = self.geometry.at(prec);
        let prec = geom.prec;
        let endpoints = |d: &CurveData, k: usize| -> [[Float; 2]; 2] {
            let m = d.exits.len();
            let prev = (k + m - 1) % m;
            [geom.side_point(self.partner(d.exits[prev]), &d.entry_u[k]), geom.side_point(d.exits[k], &d.exit_u[k])]
        };
        let sub = |a: &[Float; 2], b: &[Float; 2]| [Float::with_val(prec, &a[0] - &b[0]), Float::with_val(prec, &a[1] - &b[1])];
        let cross = |a: &[Float; 2], b: &[Float; 2]| Float::with_val(prec, &a[0] * &b[1]) - Float::with_val(prec, &a[1] * &b[0]);
        let [p1, p2] = endpoints(cd, i);
        let dir = sub(&p2, &p1);
        let mut exact: Vec<(Float, usize, i8)> = hits
            .iter()
            .map(|&(_, j, s)| {
                let [q1, q2] = endpoints(td, j);
                let e = sub(&q2, &q1);
                (Float::with_val(prec, cross(&sub(&q1, &p1), &e) / cross(&dir, &e)), j, s)
            })
            .collect();
        exact.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        if exact.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(CurveError::Degenerate);
        }
        for (slot, (lam, j, s)) in hits.iter_mut().zip(exact) {
            *slot = (lam.to_f64(), j, s);
        }
        Ok(())
    }

    /// Signed count of crossings, `+1` where `b` crosses `a` from right to
    /// left. Equals the algebraic intersection of the oriented classes.
    pub fn signed_crossings(&self, a: &OrientedCurve, b: &OrientedCurve) -> Result<i64, CurveError> {
        let seq = self.crossing_sequence(&a.curve, &b.curve)?;
        let total: i64 = seq.iter().flatten().map(|&(_, s)| s as i64).sum();
        let flip = if a.reversed != b.reversed { -1 } else { 1 };
        Ok(flip * total)
    }

    pub fn homology_class(&self, c: &OrientedCurve) -> Vec<i64> {
        let h = &c.curve.data.homology;
        if c.reversed {
            h.iter().map(|v| -v).collect()
        } else {
            h.clone()
        }
    }

    /// Algebraic intersection `<a, b>` of two oriented curves from their
    /// homology classes.
    pub fn algebraic_intersection(&self, a: &OrientedCurve, b: &OrientedCurve) -> i64 {
        bilinear(&self.homology_class(a), &self.basis.pairing, &self.homology_class(b))
    }

    pub fn is_separating(&self, c: &NormalCurve) -> bool {
        c.data.homology.iter().all(|&v| v == 0)
    }

    /// Genus and boundary count of each piece of the surface cut along
    /// pairwise disjoint curves.
    pub fn cut_components(&self, curves: &[NormalCurve]) -> Result<ComplementProfile, CurveError> {
        for c in curves {
            self.check(c)?;
        }
        for (i, a) in curves.iter().enumerate() {
            for b in &curves[i + 1..] {
                if a == b || self.geometric_intersection(a, b)? > 0 {
                    return Err(CurveError::NotDisjoint);
                }
            }
        }
        let mut weights = vec![0u32; self.tri.num_edges];
        for c in curves {
            for (w, x) in weights.iter_mut().zip(c.weights()) {
                *w += x;
            }
        }
        let comps = normal::components(&self.tri, &weights)?;
        if comps.len() != curves.len() {
            return Err(CurveError::MultipleComponents(comps.len()));
        }
        let arcs: Vec<_> = comps.iter().map(|c| c.arc).collect();
        Ok(ComplementProfile { pieces: normal::complement(&self.tri, &weights, &arcs)? })
    }

    /// Genera `(h, g - h)` with `h <= g - h` of the two sides of a
    /// separating curve.
    pub fn separating_genus(&self, c: &NormalCurve) -> Result<(u32, u32), CurveError> {
        if !self.is_separating(c) {
            return Err(CurveError::NotSeparating);
        }
        let profile = self.cut_components(std::slice::from_ref(c))?;
        match profile.pieces.as_slice() {
            [x, y] => Ok((x.genus.min(y.genus), x.genus.max(y.genus))),
            _ => Err(CurveError::NotSeparating),
        }
    }

    /// Whether two curves are disjoint, nonseparating, distinct, and
    /// together cut the surface in two.
    pub fn is_bounding_pair(&self, a: &NormalCurve, b: &NormalCurve) -> Result<bool, CurveError> {
        if a == b || self.is_separating(a) || self.is_separating(b) {
            return Ok(false);
        }
        let (ha, hb) = (&a.data.homology, &b.data.homology);
        let homologous = ha == hb || ha.iter().zip(hb).all(|(x, y)| *x == -*y);
        if !homologous || self.geometric_intersection(a, b)? > 0 {
            return Ok(false);
        }
        Ok(self.cut_components(&[a.clone(), b.clone()])?.pieces.len() == 2)
    }
}

/// Sum over chords of `r` of the chords of `b` with interleaved endpoints.
/// Boundary parameters closer than this are compared exactly.
const NEAR: f64 = 1e-9;

/// Crossing count from two presorted endpoint lists, or `None` when two
/// endpoints are too close to order in f64.
fn merged_crossings(a: &[(usize, f64, u32)], b: &[(usize, f64, u32)]) -> Option<u64> {
    let total = a.len() + b.len();
    let mut ra = vec![[0usize; 2]; a.len() / 2];
    let mut rb = vec![[0usize; 2]; b.len() / 2];
    let (mut i, mut j) = (0, 0);
    for r in 0..total {
        let take_a = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => {
                if x.0 == y.0 && (x.1 - y.1).abs() <= NEAR {
                    return None;
                }
                (x.0, x.1) < (y.0, y.1)
            }
            (Some(_), None) => true,
            _ => false,
        };
        let (code, ranks) = if take_a {
            i += 1;
            (a[i - 1].2, &mut ra)
        } else {
            j += 1;
            (b[j - 1].2, &mut rb)
        };
        ranks[code as usize / 2][code as usize % 2] = r;
    }
    Some(count_crossings(&ra, &rb, total))
}

/// Whether the chords of two presorted endpoint lists are pairwise
/// noncrossing, read as a parenthesis matching around the boundary; `None`
/// on a near tie.
fn merged_noncrossing(a: &[(usize, f64, u32)], b: &[(usize, f64, u32)]) -> Option<bool> {
    let mut open_a = vec![false; a.len() / 2];
    let mut open_b = vec![false; b.len() / 2];
    let mut stack: Vec<(bool, u32)> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => {
                if x.0 == y.0 && (x.1 - y.1).abs() <= NEAR {
                    return None;
                }
                (x.0, x.1) < (y.0, y.1)
            }
            (Some(_), None) => true,
            _ => false,
        };
        let (chord, open) = if take_a {
            i += 1;
            (a[i - 1].2 / 2, &mut open_a)
        } else {
            j += 1;
            (b[j - 1].2 / 2, &mut open_b)
        };
        let seen = &mut open[chord as usize];
        if *seen {
            if stack.pop() != Some((take_a, chord)) {
                return Some(false);
            }
        } else {
            *seen = true;
            stack.push((take_a, chord));
        }
    }
    Some(true)
}

fn count_crossings(r: &[[usize; 2]], b: &[[usize; 2]], total: usize) -> u64 {
    let mut prefix = vec![0i64; total + 1];
    let mut is_b = vec![0i64; total];
    for c in b {
        is_b[c[0]] = 1;
        is_b[c[1]] = 1;
    }
    for i in 0..total {
        prefix[i + 1] = prefix[i] + is_b[i];
    }
    let norm = |c: &[usize; 2]| (c[0].min(c[1]), c[0].max(c[1]));
    let mut rs: Vec<(usize, usize)> = r.iter().map(norm).collect();
    let mut bs: Vec<(usize, usize)> = b.iter().map(norm).collect();
    rs.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    bs.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    let mut tree = Fenwick::new(total);
    let mut next = 0;
    let mut sum = 0i64;
    for &(l, rr) in &rs {
        while next < bs.len() && bs[next].0 > l {
            tree.add(bs[next].1);
            next += 1;
        }
        let endpoints = prefix[rr] - prefix[l + 1];
        let nested = tree.below(rr);
        sum += endpoints - 2 * nested;
    }
    sum as u64
}

struct Fenwick(Vec<i64>);

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick(vec![0; n + 1])
    }

    fn add(&mut self, i: usize) {
        let mut i = i + 1;
        while i < self.0.len() {
            self.0[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Count of added positions strictly below `i`.
    fn below(&self, i: usize) -> i64 {
        let mut i = i;
        let mut s = 0;
        while i > 0 {
            s += self.0[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

/// Start and contents of the lexicographically least rotation.
fn min_rotation(xs: &[usize]) -> (usize, Vec<usize>) {
    let m = xs.len();
    let rot = |r: usize| xs[r..].iter().chain(&xs[..r]).copied().collect::<Vec<_>>();
    let mut best = 0;
    let mut best_seq = rot(0);
    for r in 1..m {
        let cand = rot(r);
        if cand < best_seq {
            best = r;
            best_seq = cand;
        }
    }
    (best, best_seq)
}

struct CurveData {
    weights: Vec<u32>,
    exits: Vec<usize>,
    exit_u: Vec<Float>,
    exit_f: Vec<f64>,
    entry_u: Vec<Float>,
    entry_f: Vec<f64>,
    prec: u32,
    length: f64,
    homology: Vec<i64>,
    /// Chord endpoints `(side, u, 2 * chord + is_exit)` along the boundary.
    order: Vec<(usize, f64, u32)>,
    /// Whether two endpoints of `order` are too close to compare in f64.
    fragile: bool,
}

/// An isotopy class of essential simple closed curves, in canonical
/// orientation. Equality and hashing go through the normal coordinates.
#[derive(Clone)]
pub struct NormalCurve {
    surface: Arc<str>,
    data: Arc<CurveData>,
}

impl NormalCurve {
    pub fn weights(&self) -> &[u32] {
        &self.data.weights
    }

    /// Polygon sides the geodesic leaves through, in canonical orientation.
    pub fn exits(&self) -> &[usize] {
        &self.data.exits
    }

    /// Total weight, the number of edge crossings.
    pub fn complexity(&self) -> u32 {
        self.data.weights.iter().sum()
    }

    pub fn length(&self) -> f64 {
        self.data.length
    }

    pub fn homology(&self) -> &[i64] {
        &self.data.homology
    }

    pub fn surface_hash(&self) -> &str {
        &self.surface
    }

    pub fn oriented(&self) -> OrientedCurve {
        OrientedCurve { curve: self.clone(), reversed: false }
    }

    pub fn record(&self) -> CurveRecord {
        CurveRecord { surface: self.surface.to_string(), weights: self.data.weights.clone() }
    }
}

impl PartialEq for NormalCurve {
    fn eq(&self, other: &Self) -> bool {
        self.surface == other.surface && self.data.weights == other.data.weights
    }
}

impl Eq for NormalCurve {}

impl Hash for NormalCurve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.weights.hash(state);
    }
}

impl Ord for NormalCurve {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |c: &Self| (c.complexity(), c.data.weights.clone());
        key(self).cmp(&key(other)).then_with(|| self.surface.cmp(&other.surface))
    }
}

impl PartialOrd for NormalCurve {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NormalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalCurve{:?}", self.data.weights)
    }
}

/// A curve with a choice of direction relative to its canonical one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedCurve {
    pub curve: NormalCurve,
    pub reversed: bool,
}

impl OrientedCurve {
    pub fn reverse(&self) -> Self {
        OrientedCurve { curve: self.curve.clone(), reversed: !self.reversed }
    }
}

/// Serialized form of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub surface: String,
    pub weights: Vec<u32>,
}

/// Pieces of a cut surface, sorted by genus then boundary count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementProfile {
    pub pieces: Vec<Piece>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fenwick_crossing_count_matches_brute_force() {
        let r = vec![[0, 3], [5, 9]];
        let b = vec![[1, 6], [2, 4], [7, 8]];
        let brute: u64 = r
            .iter()
            .flat_map(|x| b.iter().map(move |y| (x, y)))
            .filter(|(x, y)| {
                let inside = |p: usize| x[0] < p && p < x[1];
                inside(y[0]) != inside(y[1])
            })
            .count() as u64;
        assert_eq!(count_crossings(&r, &b, 10), brute);
        assert_eq!(brute, 3);
    }

    #[test]
    fn min_rotation_picks_least() {
        assert_eq!(min_rotation(&[3, 1, 2, 1, 1]), (3, vec![1, 1, 3, 1, 2]));
    }
}
