use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torelli_core::curve::{NormalCurve, Surface};
use torelli_core::error::CurveError;
use torelli_core::intmat::IntMatrix;
use torelli_core::inventory::{enumerate_curves, EnumerateOptions};
use torelli_core::standard::{a_word, b_word, block_word, bp_partner_word, StandardCurves};
use torelli_core::twist::{
    bp_map, dehn_twist, homology_action, is_symplectic, is_torelli, transvection, word_action, MappingClassWord,
};

fn small_inventory(s: &Surface) -> Vec<NormalCurve> {
    let sc = StandardCurves::new(s).unwrap();
    let opts = EnumerateOptions { depth: 1, weight_cap: 200, seed: 0, max_curves: 10_000 };
    enumerate_curves(s, &sc.generators(), &sc.generators(), &opts).unwrap().curves()
}

#[test]
fn twist_of_a1_about_b1() {
    let s = Surface::new(2).unwrap();
    let a = s.curve_from_word(&a_word(0)).unwrap();
    let b = s.curve_from_word(&b_word(0)).unwrap();
    for n in [-3, -2, -1, 1, 2, 3] {
        let c = dehn_twist(&s, &b, n, &a).unwrap();
        assert_eq!(s.geometric_intersection(&c, &a).unwrap(), n.unsigned_abs());
    }
}

#[test]
fn positive_twist_adds_the_twisting_class() {
    let s = Surface::new(2).unwrap();
    let a = s.curve_from_word(&a_word(0)).unwrap();
    let b = s.curve_from_word(&b_word(0)).unwrap();
    let tb = dehn_twist(&s, &a, 1, &b).unwrap();
    // b1 + a1 up to the orientation sign
    let h = tb.homology().to_vec();
    assert!(h == vec![1, 1, 0, 0] || h == vec![-1, -1, 0, 0], "{h:?}");
    let m = homology_action(&s, &MappingClassWord::from_letters([(a.clone(), 1)]));
    assert_eq!(m.mul_vec(&[0, 1, 0, 0]), vec![1, 1, 0, 0]);
    assert_eq!(m.mul_vec(&[0, 0, 1, 0]), vec![0, 0, 1, 0]);
}

#[test]
fn disjoint_twist_fixes_curve() {
    let s = Surface::new(3).unwrap();
    let a1 = s.curve_from_word(&a_word(0)).unwrap();
    let b2 = s.curve_from_word(&b_word(1)).unwrap();
    assert_eq!(dehn_twist(&s, &b2, 2, &a1).unwrap(), a1);
    assert_eq!(dehn_twist(&s, &a1, 1, &a1).unwrap(), a1);
    assert_eq!(dehn_twist(&s, &a1, 0, &b2), Err(CurveError::ZeroExponent));
}

#[test]
fn empty_and_cancelling_words() {
    let s = Surface::new(2).unwrap();
    let a = s.curve_from_word(&a_word(0)).unwrap();
    let c = s.curve_from_word(&[0, 1, 2, 7]).unwrap();
    assert_eq!(word_action(&s, &MappingClassWord::new(), &c).unwrap(), c);
    let w = MappingClassWord::from_letters([(a.clone(), 1), (a.clone(), -1)]);
    assert!(w.is_empty());
    assert_eq!(word_action(&s, &w, &c).unwrap(), c);
}

#[test]
fn random_twist_identity_and_round_trip() {
    let s = Surface::new(3).unwrap();
    let inv = small_inventory(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut nontrivial = 0;
    for _ in 0..60 {
        let t = &inv[rng.gen_range(0..inv.len())];
        let c = &inv[rng.gen_range(0..inv.len())];
        let n = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
        let i = s.geometric_intersection(t, c).unwrap();
        let img = dehn_twist(&s, t, n, c).unwrap();
        assert_eq!(s.geometric_intersection(&img, c).unwrap(), n.unsigned_abs() * i * i);
        assert_eq!(dehn_twist(&s, t, -n, &img).unwrap(), *c);
        nontrivial += usize::from(i > 0);
    }
    assert!(nontrivial > 10);
}

#[test]
fn curve_and_homology_actions_agree() {
    let s = Surface::new(3).unwrap();
    let inv = small_inventory(&s);
    let gens = StandardCurves::new(&s).unwrap().generators();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let letters: Vec<(NormalCurve, i64)> =
            (0..3).map(|_| (gens[rng.gen_range(0..gens.len())].clone(), [-1, 1, 2][rng.gen_range(0..3)])).collect();
        let w = MappingClassWord::from_letters(letters);
        let c = &inv[rng.gen_range(0..inv.len())];
        let m = homology_action(&s, &w);
        assert!(is_symplectic(&s, &m));
        let img = word_action(&s, &w, c).unwrap();
        let want = m.mul_vec(c.homology());
        let neg: Vec<i64> = want.iter().map(|v| -v).collect();
        assert!(img.homology() == want.as_slice() || img.homology() == neg.as_slice());
    }
}

#[test]
fn homology_action_is_a_homomorphism() {
    let s = Surface::new(2).unwrap();
    let inv = small_inventory(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut word = || {
        MappingClassWord::from_letters(
            (0..4).map(|_| (inv[rng.gen_range(0..inv.len())].clone(), rng.gen_range(1..3) * if rng.gen() { 1 } else { -1 })),
        )
    };
    for _ in 0..20 {
        let (u, v) = (word(), word());
        assert_eq!(homology_action(&s, &u.then(&v)), homology_action(&s, &u).mul(&homology_action(&s, &v)));
        assert!(homology_action(&s, &u.then(&u.inverse())).is_identity());
    }
}

#[test]
fn torelli_membership_examples() {
    let s = Surface::new(3).unwrap();
    let a1 = s.curve_from_word(&a_word(0)).unwrap();
    let b1 = s.curve_from_word(&b_word(0)).unwrap();
    let d = s.curve_from_word(&block_word(0, 0)).unwrap();
    let a1p = s.curve_from_word(&bp_partner_word(0, 1, 1)).unwrap();
    assert!(is_torelli(&s, &MappingClassWord::from_letters([(d.clone(), 1)])));
    assert!(!is_torelli(&s, &MappingClassWord::from_letters([(a1.clone(), 1)])));
    let f = bp_map(&s, &a1, &a1p).unwrap();
    assert_eq!(f.letters().len(), 2);
    assert!(is_torelli(&s, &f));
    assert!(matches!(bp_map(&s, &a1, &b1), Err(CurveError::NotBoundingPair(_))));
    assert_eq!(transvection(&s, d.homology(), 1), IntMatrix::identity(6));
    // a curve disjoint from both members is fixed
    let a3 = s.curve_from_word(&a_word(2)).unwrap();
    assert_eq!(word_action(&s, &f, &a3).unwrap(), a3);
}

#[test]
fn word_records_round_trip() {
    let s = Surface::new(2).unwrap();
    let inv = small_inventory(&s);
    let w = MappingClassWord::from_letters([(inv[1].clone(), 2), (inv[3].clone(), -1)]);
    let rec = w.record(s.hash(), &inv).unwrap();
    assert_eq!(rec.letters, vec![(1, 2), (3, -1)]);
    assert_eq!(MappingClassWord::from_record(&rec, &inv).unwrap(), w);
}
