//! Finite curve inventories grown from seed curves by twisting.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveRecord, NormalCurve, Surface};
use crate::error::CurveError;
use crate::twist::dehn_twist;

pub const INVENTORY_SCHEMA: u32 = 1;

/// How an inventory was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub genus: u32,
    pub seeds: Vec<CurveRecord>,
    pub generators: Vec<CurveRecord>,
    pub depth: u32,
    pub weight_cap: u32,
    pub seed: u64,
    pub max_curves: usize,
    /// False when `max_curves` cut the enumeration short.
    pub exhaustive: bool,
}

/// A curve with its cached invariants.
#[derive(Clone, Debug)]
pub struct Entry {
    pub curve: NormalCurve,
    pub separating: bool,
    /// Genera of the two sides, for separating curves.
    pub sides: Option<(u32, u32)>,
}

#[derive(Clone, Debug)]
pub struct CurveInventory {
    pub surface: String,
    pub entries: Vec<Entry>,
    pub provenance: Provenance,
}

/// Options for [`enumerate_curves`].
#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub depth: u32,
    pub weight_cap: u32,
    pub seed: u64,
    pub max_curves: usize,
}

fn entry(s: &Surface, c: NormalCurve) -> Result<Entry, CurveError> {
    let separating = s.is_separating(&c);
    let sides = if separating { Some(s.separating_genus(&c)?) } else { None };
    Ok(Entry { curve: c, separating, sides })
}

/// Closure of `seeds` under twist words of length at most `depth` in the
/// generators and their inverses, keeping curves of total weight at most
/// the cap. Discovery order is breadth first and independent of threading.
pub fn enumerate_curves(
    s: &Surface,
    seeds: &[NormalCurve],
    generators: &[NormalCurve],
    opts: &EnumerateOptions,
) -> Result<CurveInventory, CurveError> {
    let mut seen: HashSet<NormalCurve> = HashSet::new();
    let mut curves: Vec<NormalCurve> = Vec::new();
    let mut exhaustive = true;
    for c in seeds {
        if c.complexity() <= opts.weight_cap && seen.insert(c.clone()) {
            curves.push(c.clone());
        }
    }
    let mut frontier = curves.clone();
    'levels: for _ in 0..opts.depth {
        let images: Vec<Vec<NormalCurve>> = frontier
            .par_iter()
            .map(|c| {
                let mut out = Vec::new();
                for t in generators {
                    for n in [1, -1] {
                        let img = dehn_twist(s, t, n, c)?;
                        if img.complexity() <= opts.weight_cap {
                            out.push(img);
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, CurveError>>()?;
        let mut next = Vec::new();
        for img in images.into_iter().flatten() {
            if seen.contains(&img) {
                continue;
            }
            if curves.len() >= opts.max_curves {
                exhaustive = false;
                break 'levels;
            }
            seen.insert(img.clone());
            curves.push(img.clone());
            next.push(img);
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let entries = curves.into_par_iter().map(|c| entry(s, c)).collect::<Result<Vec<_>, _>>()?;
    Ok(CurveInventory {
        surface: s.hash().to_string(),
        entries,
        provenance: Provenance {
            genus: s.genus(),
            seeds: seeds.iter().map(NormalCurve::record).collect(),
            generators: generators.iter().map(NormalCurve::record).collect(),
            depth: opts.depth,
            weight_cap: opts.weight_cap,
            seed: opts.seed,
            max_curves: opts.max_curves,
            exhaustive,
        },
    })
}

/// On-disk form of an inventory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryFile {
    pub schema_version: u32,
    pub surface: String,
    pub provenance: Provenance,
    pub curves: Vec<InventoryCurve>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryCurve {
    pub weights: Vec<u32>,
    pub homology: Vec<i64>,
    pub separating: bool,
    pub sides: Option<(u32, u32)>,
}

impl CurveInventory {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn curves(&self) -> Vec<NormalCurve> {
        self.entries.iter().map(|e| e.curve.clone()).collect()
    }

    pub fn index_of(&self, c: &NormalCurve) -> Option<usize> {
        self.entries.iter().position(|e| &e.curve == c)
    }

    /// Inventory made of the given curves, in order, without enumeration.
    pub fn from_curves(s: &Surface, curves: &[NormalCurve]) -> Result<Self, CurveError> {
        enumerate_curves(s, curves, &[], &EnumerateOptions { depth: 0, weight_cap: u32::MAX, seed: 0, max_curves: usize::MAX })
    }

    pub fn to_file(&self) -> InventoryFile {
        InventoryFile {
            schema_version: INVENTORY_SCHEMA,
            surface: self.surface.clone(),
            provenance: self.provenance.clone(),
            curves: self
                .entries
                .iter()
                .map(|e| InventoryCurve {
                    weights: e.curve.weights().to_vec(),
                    homology: e.curve.homology().to_vec(),
                    separating: e.separating,
                    sides: e.sides,
                })
                .collect(),
        }
    }

    /// Rebuilds an inventory from its file. With `verify`, every cached
    /// invariant is recomputed and compared.
    pub fn from_file(s: &Surface, file: &InventoryFile, verify: bool) -> Result<Self, InventoryError> {
        if file.schema_version != INVENTORY_SCHEMA {
            return Err(InventoryError::Schema(file.schema_version));
        }
        if file.surface != s.hash() {
            return Err(InventoryError::Hash { expected: s.hash().to_string(), found: file.surface.clone() });
        }
        let entries = file
            .curves
            .par_iter()
            .enumerate()
            .map(|(i, rec)| {
                let record = CurveRecord { surface: file.surface.clone(), weights: rec.weights.clone() };
                let curve = s.curve_from_record(&record).map_err(|e| InventoryError::Curve(i, e))?;
                let e = if verify {
                    let e = entry(s, curve).map_err(|e| InventoryError::Curve(i, e))?;
                    if e.curve.homology() != rec.homology.as_slice() || e.separating != rec.separating || e.sides != rec.sides {
                        return Err(InventoryError::Stale(i));
                    }
                    e
                } else {
                    Entry { curve, separating: rec.separating, sides: rec.sides }
                };
                Ok(e)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CurveInventory { surface: file.surface.clone(), entries, provenance: file.provenance.clone() })
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InventoryError {
    #[error("unsupported inventory schema version {0}")]
    Schema(u32),
    #[error("inventory belongs to surface {found}, expected {expected}")]
    Hash { expected: String, found: String },
    #[error("curve {0}: {1}")]
    Curve(usize, CurveError),
    #[error("cached invariants of curve {0} do not match recomputation")]
    Stale(usize),
}
