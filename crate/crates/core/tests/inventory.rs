use torelli_core::curve::Surface;
use torelli_core::inventory::{enumerate_curves, CurveInventory, EnumerateOptions, InventoryError};
use torelli_core::standard::{a_word, b_word, StandardCurves};

fn opts(depth: u32, weight_cap: u32) -> EnumerateOptions {
    EnumerateOptions { depth, weight_cap, seed: 0, max_curves: 100_000 }
}

#[test]
fn depth_zero_keeps_exactly_the_seeds() {
    let s = Surface::new(3).unwrap();
    let sc = StandardCurves::new(&s).unwrap();
    let seeds = sc.generators();
    let inv = enumerate_curves(&s, &seeds, &seeds, &opts(0, 10_000)).unwrap();
    assert_eq!(inv.curves(), seeds);
    assert!(inv.provenance.exhaustive);
}

#[test]
fn one_twist_of_a_meridian() {
    let s = Surface::new(2).unwrap();
    let a = s.curve_from_word(&a_word(0)).unwrap();
    let b = s.curve_from_word(&b_word(0)).unwrap();
    let inv = enumerate_curves(&s, &[a.clone()], &[b.clone()], &opts(1, 10_000)).unwrap();
    assert_eq!(inv.len(), 3);
    assert_eq!(inv.index_of(&a), Some(0));
    for c in &inv.curves()[1..] {
        assert_eq!(s.geometric_intersection(c, &a).unwrap(), 1);
        assert_eq!(s.geometric_intersection(c, &b).unwrap(), 1);
    }
}

#[test]
fn weight_cap_and_truncation() {
    let s = Surface::new(2).unwrap();
    let sc = StandardCurves::new(&s).unwrap();
    let g = sc.generators();
    let inv = enumerate_curves(&s, &g, &g, &opts(2, 40)).unwrap();
    assert!(inv.curves().iter().all(|c| c.complexity() <= 40));
    let cut = enumerate_curves(&s, &g, &g, &EnumerateOptions { max_curves: g.len() + 2, ..opts(2, 40) }).unwrap();
    assert_eq!(cut.len(), g.len() + 2);
    assert!(!cut.provenance.exhaustive);
    assert_eq!(cut.curves()[..], inv.curves()[..cut.len()]);
}

#[test]
fn enumeration_is_deterministic() {
    let s = Surface::new(3).unwrap();
    let sc = StandardCurves::new(&s).unwrap();
    let g = sc.generators();
    let one = enumerate_curves(&s, &g, &g, &opts(1, 150)).unwrap();
    let two = enumerate_curves(&s, &g, &g, &EnumerateOptions { seed: 99, ..opts(1, 150) }).unwrap();
    assert_eq!(one.curves(), two.curves());
    assert_eq!(two.provenance.seed, 99);
}

#[test]
fn file_round_trip() {
    let s = Surface::new(2).unwrap();
    let sc = StandardCurves::new(&s).unwrap();
    let g = sc.generators();
    let inv = enumerate_curves(&s, &g, &g, &opts(1, 200)).unwrap();
    let file = inv.to_file();
    let text = serde_json::to_string(&file).unwrap();
    let back: torelli_core::inventory::InventoryFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back, file);
    for verify in [false, true] {
        let again = CurveInventory::from_file(&s, &back, verify).unwrap();
        assert_eq!(again.curves(), inv.curves());
        assert_eq!(again.to_file(), file);
    }
}

#[test]
fn file_rejections() {
    let s = Surface::new(2).unwrap();
    let sc = StandardCurves::new(&s).unwrap();
    let inv = CurveInventory::from_curves(&s, &sc.generators()).unwrap();
    let file = inv.to_file();

    let other = Surface::new(3).unwrap();
    assert!(matches!(CurveInventory::from_file(&other, &file, false), Err(InventoryError::Hash { .. })));

    let mut stale = file.clone();
    stale.curves[1].separating = true;
    assert!(CurveInventory::from_file(&s, &stale, false).is_ok());
    assert_eq!(CurveInventory::from_file(&s, &stale, true).err(), Some(InventoryError::Stale(1)));

    let mut version = file.clone();
    version.schema_version = 7;
    assert_eq!(CurveInventory::from_file(&s, &version, false).err(), Some(InventoryError::Schema(7)));

    let mut broken = file;
    broken.curves[0].weights[0] += 1;
    assert!(matches!(CurveInventory::from_file(&s, &broken, false), Err(InventoryError::Curve(0, _))));
}
