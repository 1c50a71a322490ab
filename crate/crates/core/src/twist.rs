//! Dehn twists and their products acting on curves and on homology.
//!
//! A word `(t_1, n_1) (t_2, n_2) ... (t_k, n_k)` stands for the product
//! `T_1^n_1 T_2^n_2 ... T_k^n_k` read as a composition of maps, so the last
//! letter acts first. Positive exponents act on homology by
//! `v -> v + <t, v> t`, so `T_a1` sends `b1` to `b1 + a1`.

use serde::{Deserialize, Serialize};

use crate::curve::{NormalCurve, Surface};
use crate::error::CurveError;
use crate::intmat::{bilinear, IntMatrix};

/// `T_t^n (c)`, computed by splicing |n| laps around `t` into `c` at every
/// crossing and straightening the result.
pub fn dehn_twist(s: &Surface, t: &NormalCurve, n: i64, c: &NormalCurve) -> Result<NormalCurve, CurveError> {
    if n == 0 {
        return Err(CurveError::ZeroExponent);
    }
    let crossings = s.crossing_sequence(c, t)?;
    if crossings.iter().all(Vec::is_empty) {
        return Ok(c.clone());
    }
    let (cx, tx) = (c.exits(), t.exits());
    let mt = tx.len();
    let laps = n.unsigned_abs() as usize;
    let mut word = Vec::with_capacity(cx.len() + laps * mt * crossings.iter().map(Vec::len).sum::<usize>());
    for (i, hits) in crossings.iter().enumerate() {
        for &(j, sign) in hits {
            // positive powers follow t in the direction that crosses c from
            // left to right
            let forward = (sign < 0) == (n > 0);
            for _ in 0..laps {
                if forward {
                    word.extend((0..mt).map(|k| tx[(j + k) % mt]));
                } else {
                    word.extend((1..=mt).map(|k| s.partner(tx[(j + mt - k) % mt])));
                }
            }
        }
        word.push(cx[i]);
    }
    s.curve_from_word(&word)
}

/// A formal product of twist powers, kept freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MappingClassWord {
    letters: Vec<(NormalCurve, i64)>,
}

impl MappingClassWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (NormalCurve, i64)>) -> Self {
        let mut w = Self::new();
        for (c, n) in letters {
            w.push(c, n);
        }
        w
    }

    /// Appends a letter, merging with an equal neighbour and dropping zero
    /// exponents.
    pub fn push(&mut self, curve: NormalCurve, n: i64) {
        if n == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == curve {
                last.1 += n;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((curve, n));
    }

    pub fn letters(&self) -> &[(NormalCurve, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product `self * other`.
    pub fn then(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for (c, n) in &other.letters {
            w.push(c.clone(), *n);
        }
        w
    }

    pub fn inverse(&self) -> Self {
        Self::from_letters(self.letters.iter().rev().map(|(c, n)| (c.clone(), -n)))
    }

    /// Serialized form referring to curves by their position in `inventory`.
    pub fn record(&self, surface: &str, inventory: &[NormalCurve]) -> Option<WordRecord> {
        let letters = self
            .letters
            .iter()
            .map(|(c, n)| inventory.iter().position(|x| x == c).map(|i| (i, *n)))
            .collect::<Option<Vec<_>>>()?;
        Some(WordRecord { surface: surface.to_string(), letters })
    }

    pub fn from_record(record: &WordRecord, inventory: &[NormalCurve]) -> Result<Self, CurveError> {
        let mut letters = Vec::with_capacity(record.letters.len());
        for &(i, n) in &record.letters {
            let c = inventory.get(i).ok_or(CurveError::BadLetter(i))?;
            if c.surface_hash() != record.surface {
                return Err(CurveError::SurfaceMismatch(c.surface_hash().to_string(), record.surface.clone()));
            }
            if n == 0 {
                return Err(CurveError::ZeroExponent);
            }
            letters.push((c.clone(), n));
        }
        Ok(Self::from_letters(letters))
    }
}

/// A word as inventory indices and exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordRecord {
    pub surface: String,
    pub letters: Vec<(usize, i64)>,
}

/// Image of `c` under the mapping class `w`.
pub fn word_action(s: &Surface, w: &MappingClassWord, c: &NormalCurve) -> Result<NormalCurve, CurveError> {
    let mut cur = c.clone();
    for (t, n) in w.letters.iter().rev() {
        cur = dehn_twist(s, t, *n, &cur)?;
    }
    Ok(cur)
}

/// Matrix of the transvection `v -> v + n <t, v> t`.
pub fn transvection(s: &Surface, t: &[i64], n: i64) -> IntMatrix {
    let dim = t.len();
    let j = s.intersection_form();
    let mut m = IntMatrix::identity(dim);
    for col in 0..dim {
        let mut e = vec![0i64; dim];
        e[col] = 1;
        let k = n * bilinear(t, j, &e);
        for row in 0..dim {
            m.set(row, col, m.get(row, col) + k * t[row]);
        }
    }
    m
}

/// Action of `w` on first homology in the fixed symplectic basis.
pub fn homology_action(s: &Surface, w: &MappingClassWord) -> IntMatrix {
    let dim = 2 * s.genus() as usize;
    w.letters.iter().fold(IntMatrix::identity(dim), |acc, (t, n)| acc.mul(&transvection(s, t.homology(), *n)))
}

pub fn is_symplectic(s: &Surface, m: &IntMatrix) -> bool {
    let j = s.intersection_form();
    &m.transpose().mul(j).mul(m) == j
}

pub fn is_torelli(s: &Surface, w: &MappingClassWord) -> bool {
    homology_action(s, w).is_identity()
}

/// The bounding pair map `T_a T_b^-1`.
pub fn bp_map(s: &Surface, a: &NormalCurve, b: &NormalCurve) -> Result<MappingClassWord, CurveError> {
    if !s.is_bounding_pair(a, b)? {
        return Err(CurveError::NotBoundingPair(format!("{a:?}, {b:?}")));
    }
    Ok(MappingClassWord::from_letters([(a.clone(), 1), (b.clone(), -1)]))
}
