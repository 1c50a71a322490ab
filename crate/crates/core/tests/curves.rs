use torelli_core::curve::Surface;
use torelli_core::error::CurveError;
use torelli_core::inventory::{enumerate_curves, EnumerateOptions};
use torelli_core::normal::Piece;
use torelli_core::standard::{a_word, b_word, block_word, bp_partner_word, StandardCurves};

fn piece(genus: u32, boundary_circles: u32) -> Piece {
    Piece { genus, boundary_circles }
}

#[test]
fn basis_intersections() {
    let s = Surface::new(3).unwrap();
    let sc = StandardCurves::new(&s).unwrap();
    for i in 0..3 {
        assert_eq!(s.geometric_intersection(&sc.a[i], &sc.a[i]).unwrap(), 0);
        for j in 0..3 {
            let want = u64::from(i == j);
            assert_eq!(s.geometric_intersection(&sc.a[i], &sc.b[j]).unwrap(), want, "a{i} b{j}");
            assert_eq!(s.geometric_intersection(&sc.b[j], &sc.a[i]).unwrap(), want);
        }
    }
}

#[test]
fn basis_homology_classes() {
    let s = Surface::new(2).unwrap();
    let a1 = s.curve_from_word(&a_word(0)).unwrap();
    let b2 = s.curve_from_word(&b_word(1)).unwrap();
    assert_eq!(s.homology_class(&a1.oriented()), vec![1, 0, 0, 0]);
    assert_eq!(s.homology_class(&a1.oriented().reverse()), vec![-1, 0, 0, 0]);
    assert_eq!(s.homology_class(&b2.oriented()), vec![0, 0, 0, 1]);
    assert_eq!(s.algebraic_intersection(&a1.oriented(), &s.curve_from_word(&b_word(0)).unwrap().oriented()), 1);
}

#[test]
fn genus_one_separating_curve() {
    let s = Surface::new(3).unwrap();
    let d = s.curve_from_word(&block_word(0, 0)).unwrap();
    assert!(s.is_separating(&d));
    assert_eq!(s.homology_class(&d.oriented()), vec![0; 6]);
    assert_eq!(s.separating_genus(&d).unwrap(), (1, 2));
    assert_eq!(s.cut_components(&[d]).unwrap().pieces, vec![piece(1, 1), piece(2, 1)]);
}

#[test]
fn separating_genus_at_genus_five() {
    let s = Surface::new(5).unwrap();
    let d = s.curve_from_word(&block_word(0, 1)).unwrap();
    assert_eq!(s.separating_genus(&d).unwrap(), (2, 3));
    let a1 = s.curve_from_word(&a_word(0)).unwrap();
    assert_eq!(s.separating_genus(&a1), Err(CurveError::NotSeparating));
}

#[test]
fn nonseparating_cut() {
    let s = Surface::new(3).unwrap();
    let a1 = s.curve_from_word(&a_word(0)).unwrap();
    assert!(!s.is_separating(&a1));
    assert_eq!(s.cut_components(&[a1]).unwrap().pieces, vec![piece(2, 2)]);
}

#[test]
fn bounding_pair_examples() {
    let s = Surface::new(3).unwrap();
    let a1 = s.curve_from_word(&a_word(0)).unwrap();
    let b1 = s.curve_from_word(&b_word(0)).unwrap();
    let a1p = s.curve_from_word(&bp_partner_word(0, 1, 1)).unwrap();
    assert_eq!(a1p.homology(), a1.homology());
    assert_eq!(s.geometric_intersection(&a1, &a1p).unwrap(), 0);
    assert!(s.is_bounding_pair(&a1, &a1p).unwrap());
    assert!(!s.is_bounding_pair(&a1, &a1).unwrap());
    assert!(!s.is_bounding_pair(&a1, &b1).unwrap());
    assert_eq!(s.cut_components(&[a1, a1p]).unwrap().pieces, vec![piece(1, 2), piece(1, 2)]);
}

#[test]
fn weights_round_trip_and_rejections() {
    let s = Surface::new(2).unwrap();
    let c = s.curve_from_word(&[0, 1, 2, 7]).unwrap();
    assert_eq!(s.curve_from_weights(c.weights()).unwrap(), c);
    assert_eq!(s.curve_from_record(&c.record()).unwrap(), c);
    assert_eq!(s.curve_from_weights(&vec![0; 9]), Err(CurveError::Inessential));
    assert_eq!(s.curve_from_weights(&[1, 0, 0]), Err(CurveError::WrongLength { got: 3, expected: 9 }));
    let mut odd = c.weights().to_vec();
    odd[0] += 1;
    assert!(matches!(s.curve_from_weights(&odd), Err(CurveError::NotNormal(_))));
    let double: Vec<u32> = c.weights().iter().map(|w| 2 * w).collect();
    assert_eq!(s.curve_from_weights(&double), Err(CurveError::MultipleComponents(2)));
    let other = Surface::new(3).unwrap();
    assert!(matches!(other.curve_from_record(&c.record()), Err(CurveError::SurfaceMismatch(..))));
}

#[test]
fn inventory_invariants_agree() {
    let s = Surface::new(3).unwrap();
    let sc = StandardCurves::new(&s).unwrap();
    let mut seeds = sc.generators();
    seeds.push(s.curve_from_word(&block_word(0, 0)).unwrap());
    let opts = EnumerateOptions { depth: 2, weight_cap: 120, seed: 0, max_curves: 10_000 };
    let inv = enumerate_curves(&s, &seeds, &sc.generators(), &opts).unwrap();
    let curves = inv.curves();
    assert!(curves.len() > 30);
    for c in &curves {
        let pieces = s.cut_components(std::slice::from_ref(c)).unwrap().pieces;
        let zero = c.homology().iter().all(|&v| v == 0);
        assert_eq!(s.is_separating(c), zero);
        assert_eq!(s.is_separating(c), pieces.len() == 2);
        let chi: i64 = pieces.iter().map(|p| 2 - 2 * i64::from(p.genus) - i64::from(p.boundary_circles)).sum();
        assert_eq!(chi, 2 - 2 * 3);
    }
    for (k, a) in curves.iter().enumerate() {
        for b in &curves[k..] {
            let i = s.geometric_intersection(a, b).unwrap();
            assert_eq!(i, s.geometric_intersection(b, a).unwrap());
            assert_eq!(i == 0, s.disjoint(a, b).unwrap());
            let alg = s.algebraic_intersection(&a.oriented(), &b.oriented());
            assert!(alg.unsigned_abs() <= i, "{a:?} {b:?}");
            assert_eq!(s.signed_crossings(&a.oriented(), &b.oriented()).unwrap(), alg);
        }
    }
}

#[test]
fn disjoint_system_euler_characteristic() {
    let s = Surface::new(3).unwrap();
    let words = [a_word(0), bp_partner_word(0, 1, 1), a_word(2), block_word(0, 0)];
    let curves: Vec<_> = words.iter().map(|w| s.curve_from_word(w).unwrap()).collect();
    let disjoint: Vec<_> = curves
        .iter()
        .filter(|c| curves.iter().all(|d| s.geometric_intersection(c, d).unwrap() == 0))
        .cloned()
        .collect();
    assert!(disjoint.len() >= 2);
    let pieces = s.cut_components(&disjoint).unwrap().pieces;
    let chi: i64 = pieces.iter().map(|p| 2 - 2 * i64::from(p.genus) - i64::from(p.boundary_circles)).sum();
    assert_eq!(chi, -4);
}

#[test]
fn crossing_curves_cannot_be_cut_together() {
    let s = Surface::new(2).unwrap();
    let a = s.curve_from_word(&a_word(0)).unwrap();
    let b = s.curve_from_word(&b_word(0)).unwrap();
    assert_eq!(s.cut_components(&[a, b]), Err(CurveError::NotDisjoint));
}
