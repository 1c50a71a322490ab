//! Hyperbolic realization of the polygon model.
//!
//! The regular 4g-gon with interior angles `pi / 2g` is placed in the Klein
//! disk, where geodesics are straight chords. Side pairings are Lorentz
//! matrices acting on the hyperboloid `x^2 + y^2 - z^2 = -1`. A closed curve
//! given as a word of side exits is straightened to its closed geodesic, whose
//! cutting sequence through the polygon is traced with arbitrary precision.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::CurveError;

type Mat3 = [[Float; 3]; 3];
type Vec3 = [Float; 3];

/// Polygon vertices, side normals and pairings at one working precision.
pub struct PolygonGeometry {
    pub prec: u32,
    verts: Vec<[Float; 2]>,
    edge_vec: Vec<[Float; 2]>,
    edge_len2: Vec<Float>,
    normals: Vec<[Float; 2]>,
    /// `pairing[s]` carries the polygon onto its neighbour across side `s`.
    pairing: Vec<Mat3>,
    inverse: Vec<Mat3>,
    verts_f64: Vec<[f64; 2]>,
}

fn f(prec: u32, v: f64) -> Float {
    Float::with_val(prec, v)
}

fn zero3(prec: u32) -> Mat3 {
    std::array::from_fn(|_| std::array::from_fn(|_| f(prec, 0.0)))
}

fn identity3(prec: u32) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| f(prec, if i == j { 1.0 } else { 0.0 })))
}

fn mat_mul(a: &Mat3, b: &Mat3, prec: u32) -> Mat3 {
    let mut out = zero3(prec);
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Float::with_val(prec, &a[i][0] * &b[0][j]);
            acc += Float::with_val(prec, &a[i][1] * &b[1][j]);
            acc += Float::with_val(prec, &a[i][2] * &b[2][j]);
            out[i][j] = acc;
        }
    }
    out
}

fn mat_vec(a: &Mat3, v: &Vec3, prec: u32) -> Vec3 {
    std::array::from_fn(|i| {
        let mut acc = Float::with_val(prec, &a[i][0] * &v[0]);
        acc += Float::with_val(prec, &a[i][1] * &v[1]);
        acc += Float::with_val(prec, &a[i][2] * &v[2]);
        acc
    })
}

/// Minkowski cross product, orthogonal to both arguments for the form
/// `x0 y0 + x1 y1 - x2 y2`.
fn mcross(x: &Vec3, y: &Vec3, prec: u32) -> Vec3 {
    let c0 = Float::with_val(prec, &x[1] * &y[2]) - Float::with_val(prec, &x[2] * &y[1]);
    let c1 = Float::with_val(prec, &x[2] * &y[0]) - Float::with_val(prec, &x[0] * &y[2]);
    let c2 = Float::with_val(prec, &x[0] * &y[1]) - Float::with_val(prec, &x[1] * &y[0]);
    [c0, c1, -c2]
}

fn columns(a: &Vec3, b: &Vec3, c: &Vec3) -> Mat3 {
    [
        [a[0].clone(), b[0].clone(), c[0].clone()],
        [a[1].clone(), b[1].clone(), c[1].clone()],
        [a[2].clone(), b[2].clone(), c[2].clone()],
    ]
}

fn mat_inverse(m: &Mat3, prec: u32) -> Mat3 {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
        Float::with_val(prec, &m[r0][c0] * &m[r1][c1]) - Float::with_val(prec, &m[r0][c1] * &m[r1][c0])
    };
    // adjugate, transposed cofactors
    let adj: Mat3 = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    let mut det = Float::with_val(prec, &m[0][0] * &adj[0][0]);
    det += Float::with_val(prec, &m[0][1] * &adj[1][0]);
    det += Float::with_val(prec, &m[0][2] * &adj[2][0]);
    std::array::from_fn(|i| std::array::from_fn(|j| Float::with_val(prec, &adj[i][j] / &det)))
}

/// Inverse of a Lorentz matrix: `J M^T J` with `J = diag(1, 1, -1)`.
fn lorentz_inverse(m: &Mat3) -> Mat3 {
    let sign = |i: usize| if i == 2 { -1 } else { 1 };
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let v = m[j][i].clone();
            if sign(i) * sign(j) < 0 {
                -v
            } else {
                v
            }
        })
    })
}

impl PolygonGeometry {
    fn build(partner: &[usize], prec: u32) -> Self {
        let n = partner.len();
        let pi = Float::with_val(prec, Constant::Pi);
        let cot = Float::with_val(prec, &pi / n as u32).cot();
        let cosh_r = Float::with_val(prec, cot.pow(2u32));
        let sinh_r = Float::with_val(prec, cosh_r.clone().pow(2u32) - 1u32).sqrt();
        let tanh_r = Float::with_val(prec, &sinh_r / &cosh_r);
        let angle = |k: usize| Float::with_val(prec, &pi * (2 * k) as u32) / n as u32;
        let hyper: Vec<Vec3> = (0..n)
            .map(|k| {
                let (s, c) = angle(k).sin_cos(f(prec, 0.0));
                [Float::with_val(prec, &sinh_r * &c), Float::with_val(prec, &sinh_r * &s), cosh_r.clone()]
            })
            .collect();
        let pairing: Vec<Mat3> = (0..n)
            .map(|s| {
                let sp = partner[s];
                let (a0, a1) = (&hyper[(sp + 1) % n], &hyper[sp]);
                let (b0, b1) = (&hyper[s], &hyper[(s + 1) % n]);
                let a = columns(a0, a1, &mcross(a0, a1, prec));
                let b = columns(b0, b1, &mcross(b0, b1, prec));
                mat_mul(&b, &mat_inverse(&a, prec), prec)
            })
            .collect();
        // The corners are moved off the symmetric position to a generic lift
        // of the vertex, so that no symmetric geodesic runs through it. Corner
        // k is the image of corner 0 under the deck element gamma[k].
        let mut gamma: Vec<Option<Mat3>> = vec![None; n];
        gamma[0] = Some(identity3(prec));
        while gamma.iter().any(Option::is_none) {
            for side in 0..n {
                let sp = partner[side];
                let (src0, dst0) = ((sp + 1) % n, side);
                let (src1, dst1) = (sp, (side + 1) % n);
                for (src, dst) in [(src0, dst0), (src1, dst1)] {
                    match (&gamma[src], &gamma[dst]) {
                        (Some(g), None) => gamma[dst] = Some(mat_mul(&pairing[side], g, prec)),
                        (None, Some(g)) => gamma[src] = Some(mat_mul(&lorentz_inverse(&pairing[side]), g, prec)),
                        _ => {}
                    }
                }
            }
        }
        let base = {
            let shift = Float::with_val(prec, 1u32 - &tanh_r) * 0.2f64;
            let px = Float::with_val(prec, &tanh_r - Float::with_val(prec, &shift * 0.95f64));
            let py = Float::with_val(prec, &shift * 0.31f64);
            let w = Float::with_val(prec, 1u32 - Float::with_val(prec, px.clone().pow(2u32) + py.clone().pow(2u32))).sqrt();
            [Float::with_val(prec, &px / &w), Float::with_val(prec, &py / &w), Float::with_val(prec, 1u32 / &w)]
        };
        let verts: Vec<[Float; 2]> = gamma
            .iter()
            .map(|g| {
                let h = mat_vec(g.as_ref().expect("all corners reached"), &base, prec);
                [Float::with_val(prec, &h[0] / &h[2]), Float::with_val(prec, &h[1] / &h[2])]
            })
            .collect();
        let edge_vec: Vec<[Float; 2]> = (0..n)
            .map(|s| {
                let t = (s + 1) % n;
                [
                    Float::with_val(prec, &verts[t][0] - &verts[s][0]),
                    Float::with_val(prec, &verts[t][1] - &verts[s][1]),
                ]
            })
            .collect();
        let edge_len2 = edge_vec
            .iter()
            .map(|e| Float::with_val(prec, e[0].clone().pow(2u32) + e[1].clone().pow(2u32)))
            .collect();
        // interior lies to the left of each counterclockwise side
        let normals = edge_vec.iter().map(|e| [-e[1].clone(), e[0].clone()]).collect();
        let inverse = pairing.iter().map(lorentz_inverse).collect();
        let verts_f64 = verts.iter().map(|v| [v[0].to_f64(), v[1].to_f64()]).collect();
        PolygonGeometry { prec, verts, edge_vec, edge_len2, normals, pairing, inverse, verts_f64 }
    }

    pub fn sides(&self) -> usize {
        self.verts.len()
    }

    /// Klein-model coordinates of polygon vertices.
    pub fn vertices_f64(&self) -> &[[f64; 2]] {
        &self.verts_f64
    }

    /// Klein-model point at position `u` along side `side`.
    pub fn side_point(&self, side: usize, u: &Float) -> [Float; 2] {
        let prec = self.prec.max(u.prec());
        [
            Float::with_val(prec, &self.edge_vec[side][0] * u) + &self.verts[side][0],
            Float::with_val(prec, &self.edge_vec[side][1] * u) + &self.verts[side][1],
        ]
    }

    /// Natural log of the largest entry of each pairing matrix.
    pub fn letter_log_norms(&self) -> Vec<f64> {
        self.pairing
            .iter()
            .map(|m| m.iter().flatten().map(|x| x.to_f64().abs()).fold(1.0, f64::max).ln())
            .collect()
    }

    /// Max deviation of `T^t J T` from `J` over all pairings.
    pub fn lorentz_defect(&self) -> f64 {
        let j = |i: usize| if i == 2 { -1.0 } else { 1.0 };
        let mut worst: f64 = 0.0;
        for m in &self.pairing {
            for r in 0..3 {
                for c in 0..3 {
                    let mut acc = f(self.prec, 0.0);
                    for k in 0..3 {
                        acc += Float::with_val(self.prec, &m[k][r] * &m[k][c]) * j(k);
                    }
                    let target = if r == c { j(r) } else { 0.0 };
                    worst = worst.max(Float::with_val(self.prec, acc - target).to_f64().abs());
                }
            }
        }
        worst
    }

    /// Max deviation of `T_s T_s' - I` over paired sides.
    pub fn pairing_defect(&self, partner: &[usize]) -> f64 {
        let mut worst: f64 = 0.0;
        for (s, &sp) in partner.iter().enumerate() {
            let p = mat_mul(&self.pairing[s], &self.pairing[sp], self.prec);
            for r in 0..3 {
                for c in 0..3 {
                    let target = if r == c { 1.0 } else { 0.0 };
                    worst = worst.max(Float::with_val(self.prec, &p[r][c] - target).to_f64().abs());
                }
            }
        }
        worst
    }

    fn word_matrix(&self, letters: &[usize]) -> Mat3 {
        let mut m = zero3(self.prec);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = f(self.prec, 1.0);
        }
        for &l in letters {
            m = mat_mul(&m, &self.pairing[l], self.prec);
        }
        m
    }

    /// Position of the point `p` of side `s` along that side.
    fn side_param(&self, s: usize, p: &[Float; 2], prec: u32) -> Float {
        let rel = [Float::with_val(prec, &p[0] - &self.verts[s][0]), Float::with_val(prec, &p[1] - &self.verts[s][1])];
        let dot = Float::with_val(prec, &rel[0] * &self.edge_vec[s][0]) + Float::with_val(prec, &rel[1] * &self.edge_vec[s][1]);
        dot / &self.edge_len2[s]
    }

    fn side_value(&self, s: usize, p: &[Float; 2], prec: u32) -> Float {
        let dx = Float::with_val(prec, &p[0] - &self.verts[s][0]);
        let dy = Float::with_val(prec, &p[1] - &self.verts[s][1]);
        Float::with_val(prec, &self.normals[s][0] * &dx) + Float::with_val(prec, &self.normals[s][1] * &dy)
    }

    fn apply_inverse_klein(&self, s: usize, p: &[Float; 2], prec: u32) -> [Float; 2] {
        let v = [p[0].clone(), p[1].clone(), f(prec, 1.0)];
        let w = mat_vec(&self.inverse[s], &v, prec);
        [Float::with_val(prec, &w[0] / &w[2]), Float::with_val(prec, &w[1] / &w[2])]
    }
}

/// Per-surface cache of polygon geometry at the precisions requested so far.
pub struct GeometryCache {
    partner: Vec<usize>,
    levels: Mutex<BTreeMap<u32, Arc<PolygonGeometry>>>,
    log_norms: Vec<f64>,
}

impl GeometryCache {
    pub fn new(partner: Vec<usize>) -> Self {
        let base = PolygonGeometry::build(&partner, 128);
        let log_norms = base.letter_log_norms();
        let mut levels = BTreeMap::new();
        levels.insert(128, Arc::new(base));
        GeometryCache { partner, levels: Mutex::new(levels), log_norms }
    }

    /// Geometry at no less than `prec` bits (rounded up to a multiple of 64).
    pub fn at(&self, prec: u32) -> Arc<PolygonGeometry> {
        let prec = prec.max(128).div_ceil(64) * 64;
        let mut levels = self.levels.lock().expect("geometry cache poisoned");
        levels.entry(prec).or_insert_with(|| Arc::new(PolygonGeometry::build(&self.partner, prec))).clone()
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }
}

/// Cutting sequence of a closed geodesic through the polygon.
#[derive(Clone, Debug)]
pub struct Trace {
    /// Side through which each chord leaves the polygon.
    pub exits: Vec<usize>,
    /// Position of each exit point along its side, `0` at the side's first
    /// corner and `1` at its last.
    pub exit_u: Vec<Float>,
    /// Position of each chord's entry point along the side it enters
    /// through. Side pairings are projective, so this is not `1 - u` of the
    /// previous exit.
    pub entry_u: Vec<Float>,
    pub prec: u32,
    /// Hyperbolic length of the closed geodesic.
    pub length: f64,
}

const LN2: f64 = std::f64::consts::LN_2;

/// Bits needed to trace a geodesic of length `len` without losing chords.
fn trace_bits(len: f64) -> u32 {
    // the repelling endpoint loses up to 2 len / ln 2 bits per period
    96 + (4.0 * len / LN2).ceil() as u32
}

/// Straightens the closed curve that exits the polygon through `letters` in
/// order and traces one period of its geodesic.
pub fn trace_word(cache: &GeometryCache, letters: &[usize]) -> Result<Trace, CurveError> {
    let n = cache.partner.len();
    if let Some(&bad) = letters.iter().find(|&&l| l >= n) {
        return Err(CurveError::BadLetter(bad));
    }
    let letters = cyclically_reduce(letters, &cache.partner);
    if letters.is_empty() {
        return Err(CurveError::Inessential);
    }
    let word_len: f64 = letters.iter().map(|&l| cache.log_norms[l]).sum();

    // first pass: enough bits to read off the translation length
    let prec1 = 128 + (word_len / LN2).ceil() as u32;
    let g1 = cache.at(prec1);
    let m1 = g1.word_matrix(&letters);
    let length = translation_length(&m1, g1.prec).ok_or(CurveError::Inessential)?;
    if length < 1e-6 {
        return Err(CurveError::Inessential);
    }

    let bits = trace_bits(length);
    let prec2 = bits + 32 + ((word_len - length).max(0.0) / LN2).ceil() as u32;
    let (gm, m) = if prec2 > g1.prec {
        let g2 = cache.at(prec2);
        let m2 = g2.word_matrix(&letters);
        (g2, m2)
    } else {
        (g1, m1)
    };
    let (p, q) = axis_endpoints(&m, gm.prec)?;
    let geom = cache.at(bits);
    let prec = geom.prec;
    let round = |v: [Float; 2]| [Float::with_val(prec, &v[0]), Float::with_val(prec, &v[1])];
    let (p, q) = reduce_into_polygon(&geom, round(p), round(q))?;

    let tol_bits = 32 + (1.5 * length / LN2).ceil() as i32;
    let tol = Float::with_val(prec, Float::i_exp(1, -tol_bits));
    let vertex_guard = Float::with_val(prec, Float::i_exp(1, -40));
    let max_steps = 20 + (40.0 * length).ceil() as usize;

    let (p0, q0) = (p.clone(), q.clone());
    let (mut p, mut q) = (p, q);
    let mut exits = Vec::new();
    let mut exit_u = Vec::new();
    let mut entry_u = Vec::new();
    loop {
        let (side, u) = exit_through(&geom, &p, &q, prec)?;
        if u < vertex_guard || Float::with_val(prec, 1u32 - &u) < vertex_guard {
            return Err(CurveError::ThroughVertex);
        }
        exits.push(side);
        let landing = geom.apply_inverse_klein(side, &geom.side_point(side, &u), prec);
        entry_u.push(geom.side_param(cache.partner[side], &landing, prec));
        exit_u.push(u);
        p = geom.apply_inverse_klein(side, &p, prec);
        q = geom.apply_inverse_klein(side, &q, prec);
        let dist = |a: &[Float; 2], b: &[Float; 2]| {
            let dx = Float::with_val(prec, &a[0] - &b[0]).abs();
            let dy = Float::with_val(prec, &a[1] - &b[1]).abs();
            dx.max(&dy)
        };
        if dist(&p, &p0) < tol && dist(&q, &q0) < tol {
            break;
        }
        if exits.len() > max_steps {
            return Err(CurveError::TraceDiverged(exits.len()));
        }
    }

    // a proper power closes after a fraction of the word's translation length
    let period = geom.word_matrix(&exits);
    let period_len = translation_length(&period, prec).ok_or(CurveError::Inessential)?;
    if (period_len - length).abs() > 1e-6 * length.max(1.0) {
        return Err(CurveError::NotPrimitive);
    }
    // the entry of chord k is the landing point of exit k - 1
    entry_u.rotate_right(1);
    Ok(Trace { exits, exit_u, entry_u, prec, length })
}

/// Removes adjacent inverse letters, cyclically.
pub fn cyclically_reduce(letters: &[usize], partner: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&partner[l]) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == partner[out[end - 1]] {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

fn translation_length(m: &Mat3, prec: u32) -> Option<f64> {
    let tr = Float::with_val(prec, &m[0][0] + &m[1][1]) + &m[2][2];
    // trace = 1 + 2 cosh(length)
    let c = Float::with_val(prec, tr - 1u32) / 2u32;
    if c <= 1u32 {
        return None;
    }
    Some(c.acosh().to_f64())
}

fn axis_endpoints(m: &Mat3, prec: u32) -> Result<([Float; 2], [Float; 2]), CurveError> {
    let attracting = |m: &Mat3| -> Option<[Float; 2]> {
        let tr = Float::with_val(prec, &m[0][0] + &m[1][1]) + &m[2][2];
        let x = Float::with_val(prec, tr - 1u32);
        let disc = Float::with_val(prec, x.clone().pow(2u32) - 4u32);
        if disc <= 0u32 {
            return None;
        }
        let lambda = Float::with_val(prec, x + disc.sqrt()) / 2u32;
        let lambda_inv = Float::with_val(prec, 1u32 / lambda);
        // (M - I)(M - 1/lambda I) e3 spans the attracting null line
        let mut w: Vec3 = [m[0][2].clone(), m[1][2].clone(), m[2][2].clone()];
        w[2] -= &lambda_inv;
        let mw = mat_vec(m, &w, prec);
        let v: Vec3 = std::array::from_fn(|i| Float::with_val(prec, &mw[i] - &w[i]));
        if v[2].is_zero() {
            return None;
        }
        Some([Float::with_val(prec, &v[0] / &v[2]), Float::with_val(prec, &v[1] / &v[2])])
    };
    let q = attracting(m).ok_or(CurveError::Inessential)?;
    let p = attracting(&lorentz_inverse(m)).ok_or(CurveError::Inessential)?;
    Ok((p, q))
}

/// Moves the geodesic `p -> q` by deck transformations until it meets the
/// polygon, following the point of the geodesic nearest the origin.
fn reduce_into_polygon(
    geom: &PolygonGeometry,
    mut p: [Float; 2],
    mut q: [Float; 2],
) -> Result<([Float; 2], [Float; 2]), CurveError> {
    let prec = geom.prec;
    // in the Klein model the foot of the perpendicular from the origin to a
    // chord of the unit circle is the chord's Euclidean midpoint
    let mut x = [
        Float::with_val(prec, &p[0] + &q[0]) / 2u32,
        Float::with_val(prec, &p[1] + &q[1]) / 2u32,
    ];
    for _ in 0..100_000 {
        let mut worst: Option<(usize, Float)> = None;
        for s in 0..geom.sides() {
            let v = geom.side_value(s, &x, prec);
            if v < 0u32 && worst.as_ref().is_none_or(|(_, w)| v < *w) {
                worst = Some((s, v));
            }
        }
        match worst {
            None => return Ok((p, q)),
            Some((s, _)) => {
                x = geom.apply_inverse_klein(s, &x, prec);
                p = geom.apply_inverse_klein(s, &p, prec);
                q = geom.apply_inverse_klein(s, &q, prec);
            }
        }
    }
    Err(CurveError::TraceDiverged(100_000))
}

/// Side through which the chord `p -> q` leaves the polygon, and the exit
/// point's position along that side.
fn exit_through(geom: &PolygonGeometry, p: &[Float; 2], q: &[Float; 2], prec: u32) -> Result<(usize, Float), CurveError> {
    let d = [Float::with_val(prec, &q[0] - &p[0]), Float::with_val(prec, &q[1] - &p[1])];
    let mut best: Option<(usize, Float)> = None;
    for s in 0..geom.sides() {
        let den = Float::with_val(prec, &geom.normals[s][0] * &d[0]) + Float::with_val(prec, &geom.normals[s][1] * &d[1]);
        if den >= 0u32 {
            continue;
        }
        let num = geom.side_value(s, p, prec);
        let t = Float::with_val(prec, -num / den);
        if best.as_ref().is_none_or(|(_, bt)| t < *bt) {
            best = Some((s, t));
        }
    }
    let (s, t) = best.ok_or(CurveError::Degenerate)?;
    let x = [
        Float::with_val(prec, &d[0] * &t) + &p[0],
        Float::with_val(prec, &d[1] * &t) + &p[1],
    ];
    Ok((s, geom.side_param(s, &x, prec)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partner_g(g: usize) -> Vec<usize> {
        (0..4 * g).map(|s| if s % 4 < 2 { s + 2 } else { s - 2 }).collect()
    }

    #[test]
    fn pairings_are_lorentz_and_paired() {
        for g in 2..=4 {
            let geom = PolygonGeometry::build(&partner_g(g), 256);
            assert!(geom.lorentz_defect() < 1e-60, "g={g}");
            assert!(geom.pairing_defect(&partner_g(g)) < 1e-60, "g={g}");
        }
    }

    #[test]
    fn reduce_cancels_inverse_pairs() {
        let partner = partner_g(2);
        assert_eq!(cyclically_reduce(&[0, 2, 1], &partner), vec![1]);
        assert_eq!(cyclically_reduce(&[0, 1, 3, 2], &partner), Vec::<usize>::new());
        assert_eq!(cyclically_reduce(&[0, 5, 2], &partner), vec![5]);
    }

    #[test]
    fn single_letter_traces_one_chord() {
        let cache = GeometryCache::new(partner_g(3));
        let t = trace_word(&cache, &[1]).unwrap();
        assert_eq!(t.exits.len(), 1);
        assert!(t.length > 0.5);
        let inv = trace_word(&cache, &[3]).unwrap();
        assert!((inv.length - t.length).abs() < 1e-9);
    }

    #[test]
    fn trivial_word_is_inessential() {
        let cache = GeometryCache::new(partner_g(2));
        assert_eq!(trace_word(&cache, &[0, 2]).unwrap_err(), CurveError::Inessential);
        assert_eq!(trace_word(&cache, &[]).unwrap_err(), CurveError::Inessential);
    }

    #[test]
    fn proper_power_detected() {
        let cache = GeometryCache::new(partner_g(2));
        assert_eq!(trace_word(&cache, &[1, 1]).unwrap_err(), CurveError::NotPrimitive);
    }
}
