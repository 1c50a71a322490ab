#![allow(dead_code)]

use torelli_core::complex::{build_tg, DisjointnessTable, TorelliGeometryComplex};
use torelli_core::curve::Surface;
use torelli_core::inventory::{enumerate_curves, CurveInventory, EnumerateOptions};
use torelli_core::standard::{block_curves, bp_partners, StandardCurves};

pub struct Fixture {
    pub s: Surface,
    pub inv: CurveInventory,
    pub table: DisjointnessTable,
    pub tg: TorelliGeometryComplex,
}

/// Standard seeds (a, b, chain, blocks, bp-partners) twisted by a, b, chain.
pub fn standard(genus: u32, depth: u32, weight_cap: u32) -> Fixture {
    let s = Surface::new(genus).unwrap();
    let sc = StandardCurves::new(&s).unwrap();
    let mut seeds = sc.generators();
    seeds.extend(block_curves(&s).unwrap());
    seeds.extend(bp_partners(&s).unwrap());
    let opts = EnumerateOptions { depth, weight_cap, seed: 1, max_curves: 1_000_000 };
    let inv = enumerate_curves(&s, &seeds, &sc.generators(), &opts).unwrap();
    let table = DisjointnessTable::compute(&s, &inv).unwrap();
    let tg = build_tg(&s, &inv, &table).unwrap();
    Fixture { s, inv, table, tg }
}
