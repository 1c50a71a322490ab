//! Named curves on the standard surface, given by the polygon sides their
//! geodesics leave through. Handles are numbered from 0.

use crate::curve::{NormalCurve, Surface};
use crate::error::CurveError;

/// Word of `a_i`, which crosses only the `b_i` sides.
pub fn a_word(i: usize) -> Vec<usize> {
    vec![4 * i + 1]
}

/// Word of `b_i`, which crosses only the `a_i` sides.
pub fn b_word(i: usize) -> Vec<usize> {
    vec![4 * i]
}

/// Word of the chain curve between handles `i` and `i + 1`, homologous to
/// `a_i - a_(i+1)` up to sign.
pub fn chain_word(i: usize) -> Vec<usize> {
    vec![4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 7]
}

/// Word of the separating curve cutting off handles `first..=last`.
pub fn block_word(first: usize, last: usize) -> Vec<usize> {
    let mut w = vec![4 * first, 4 * first + 1, 4 * first + 2];
    for h in (first + 1..=last).rev() {
        w.extend([4 * h + 3, 4 * h, 4 * h + 1, 4 * h + 2]);
    }
    w.push(4 * first + 3);
    w
}

/// Word of a curve homologous to `a_i` that together with `a_i` bounds the
/// handles `first..=last`, which must lie after handle `i`.
pub fn bp_partner_word(i: usize, first: usize, last: usize) -> Vec<usize> {
    assert!(i < first && first <= last, "block must follow the handle");
    let mut w = vec![4 * i + 1];
    for h in first..=last {
        w.extend([4 * h, 4 * h + 3, 4 * h + 2, 4 * h + 1]);
    }
    w
}

/// The standard named curves of one surface.
#[derive(Clone, Debug)]
pub struct StandardCurves {
    pub a: Vec<NormalCurve>,
    pub b: Vec<NormalCurve>,
    pub chain: Vec<NormalCurve>,
}

impl StandardCurves {
    pub fn new(s: &Surface) -> Result<Self, CurveError> {
        let g = s.genus() as usize;
        let build = |w: Vec<usize>| s.curve_from_word(&w);
        Ok(StandardCurves {
            a: (0..g).map(|i| build(a_word(i))).collect::<Result<_, _>>()?,
            b: (0..g).map(|i| build(b_word(i))).collect::<Result<_, _>>()?,
            chain: (0..g - 1).map(|i| build(chain_word(i))).collect::<Result<_, _>>()?,
        })
    }

    /// Humphries-style twist generators: every `a_i`, `b_i` and chain curve.
    pub fn generators(&self) -> Vec<NormalCurve> {
        self.a.iter().chain(&self.b).chain(&self.chain).cloned().collect()
    }
}

/// Separating curves around every proper consecutive block of handles.
pub fn block_curves(s: &Surface) -> Result<Vec<NormalCurve>, CurveError> {
    let g = s.genus() as usize;
    let mut out = Vec::new();
    for first in 0..g {
        for last in first..g {
            if first == 0 && last == g - 1 {
                continue;
            }
            let c = s.curve_from_word(&block_word(first, last))?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Curves pairing with some `a_i` to a bounding pair around a later block.
pub fn bp_partners(s: &Surface) -> Result<Vec<NormalCurve>, CurveError> {
    let g = s.genus() as usize;
    let mut out = Vec::new();
    for i in 0..g {
        for first in i + 1..g {
            // the handles outside the block and a_i must keep positive genus
            for last in first..(first + g - 2).min(g) {
                let c = s.curve_from_word(&bp_partner_word(i, first, last))?;
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}
