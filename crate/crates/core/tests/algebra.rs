mod common;

use torelli_core::algebra::{
    bp_criterion_search, cross_validate_triangle, max_abelian_rank, p5_2, p6, p7, power_triples, subgroup_rank,
    triple_ranks, AlgebraError, DisjointSystem, PropsOptions, SimpleTwistVector,
};
use torelli_core::complex::{max_disjoint_systems, DisjointnessTable, Vertex};
use torelli_core::curve::Surface;
use torelli_core::inventory::CurveInventory;
use torelli_core::standard::{a_word, b_word, block_word, bp_partner_word};
use torelli_core::twist::{is_torelli, word_action};

/// a1, two disjoint homologous copies of it, b1, a genus one separating curve.
fn genus_four_system() -> (Surface, CurveInventory, DisjointnessTable) {
    let s = Surface::new(4).unwrap();
    let words = [a_word(0), bp_partner_word(0, 1, 1), bp_partner_word(0, 1, 2), b_word(0), block_word(3, 3)];
    let curves: Vec<_> = words.iter().map(|w| s.curve_from_word(w).unwrap()).collect();
    let inv = CurveInventory::from_curves(&s, &curves).unwrap();
    let table = DisjointnessTable::compute(&s, &inv).unwrap();
    (s, inv, table)
}

#[test]
fn system_validation() {
    let (_, inv, table) = genus_four_system();
    assert!(DisjointSystem::new(&inv, &table, vec![0, 1, 2, 4]).is_ok());
    assert_eq!(DisjointSystem::new(&inv, &table, vec![0, 3]), Err(AlgebraError::NotDisjoint(0, 3)));
    assert_eq!(DisjointSystem::new(&inv, &table, vec![1, 1]), Err(AlgebraError::Repeated(1)));
    let big = DisjointnessTable::from_predicate(12, |_, _| true);
    let mut fake = inv.clone();
    fake.entries = (0..12).map(|_| inv.entries[0].clone()).collect();
    assert_eq!(DisjointSystem::new(&fake, &big, (0..10).collect()), Err(AlgebraError::TooLarge(10, 9)));
}

#[test]
fn rank_formula_matches_smith_rank() {
    let (_, inv, table) = genus_four_system();
    for classes in [vec![0, 1, 2, 4], vec![0, 1], vec![0], vec![4], vec![2, 4]] {
        let sys = DisjointSystem::new(&inv, &table, classes).unwrap();
        let twists = sys.simple_twists(&inv);
        for t in &twists {
            t.validate(&inv).unwrap();
        }
        assert_eq!(subgroup_rank(&twists).unwrap(), sys.abelian_rank(&inv));
    }
    let sys = DisjointSystem::new(&inv, &table, vec![0, 1, 2, 4]).unwrap();
    assert_eq!(sys.abelian_rank(&inv), 3);
    assert_eq!(sys.simple_twists(&inv).len(), 4);
}

#[test]
fn simple_twist_shapes() {
    let (_, inv, table) = genus_four_system();
    let sys = DisjointSystem::new(&inv, &table, vec![0, 1, 2, 4]).unwrap();
    let d = SimpleTwistVector::separating(&sys, 4, 2).unwrap();
    assert_eq!(d.vector, vec![0, 0, 0, 2]);
    assert_eq!(d.support(), vec![4]);
    assert!(SimpleTwistVector::separating(&sys, 3, 1).is_none());
    assert!(SimpleTwistVector::separating(&sys, 4, 0).is_none());
    let f = SimpleTwistVector::bounding_pair(&sys, 0, 2, -1).unwrap();
    assert_eq!(f.vector, vec![-1, 0, 1, 0]);
    assert!(SimpleTwistVector::bounding_pair(&sys, 0, 0, 1).is_none());
    let bad = SimpleTwistVector { system: sys.classes.clone(), vector: vec![1, 1, 0, 0] };
    assert_eq!(bad.validate(&inv), Err(AlgebraError::NotSimpleTwist));
    assert_eq!(subgroup_rank(&[d.clone(), f.scaled(3)]).unwrap(), 2);
    let other = SimpleTwistVector { system: vec![0, 1], vector: vec![1, -1] };
    assert_eq!(subgroup_rank(&[d, other]), Err(AlgebraError::MixedSystems));
    assert_eq!(subgroup_rank(&[]).unwrap(), 0);
}

#[test]
fn triple_rank_examples() {
    let (a, b, c, d) = (0, 1, 2, 4);
    let t = [Vertex::BoundingPair(a, b), Vertex::BoundingPair(b, c), Vertex::BoundingPair(a, c)];
    for p in power_triples() {
        assert_eq!(triple_ranks([&t[0], &t[1], &t[2]], p), (2, [2, 2, 2]));
    }
    let sep = Vertex::Separating(d);
    assert_eq!(triple_ranks([&t[0], &t[1], &sep], [1, 1, 1]).0, 3);
    let four = Vertex::BoundingPair(c, 7);
    assert_eq!(triple_ranks([&t[0], &t[1], &four], [1, 1, 1]).0, 3);
}

#[test]
fn bounding_pair_maps_multiply_on_curves() {
    let f = common::standard(4, 1, 200);
    let t = f.tg.marked_triangles[0];
    let mut probes = f.inv.curves();
    probes.sort();
    probes.truncate(12);
    assert!(cross_validate_triangle(&f.s, &f.inv, &f.tg, &t, &probes).unwrap());
    // a separating and a bounding pair twist from the triangle fail the relation check
    let sep = (0..f.tg.vertices.len()).find(|&v| !f.tg.vertices[v].is_bounding_pair()).unwrap();
    assert!(!cross_validate_triangle(&f.s, &f.inv, &f.tg, &[sep, t[1], t[2]], &probes).unwrap());
    for v in t {
        let Vertex::BoundingPair(x, y) = f.tg.vertices[v] else { unreachable!() };
        let sys = DisjointSystem::new(&f.inv, &f.table, vec![x, y]).unwrap();
        let w = SimpleTwistVector::bounding_pair(&sys, x, y, 1).unwrap().word(&f.inv);
        assert!(is_torelli(&f.s, &w));
        // disjoint curves are fixed by the map
        for p in &probes {
            let i = f.inv.index_of(p).unwrap();
            if f.table.disjoint(i, x) && f.table.disjoint(i, y) {
                assert_eq!(&word_action(&f.s, &w, p).unwrap(), p);
            }
        }
    }
}

#[test]
fn max_rank_matches_enumerated_systems() {
    let f = common::standard(4, 0, 200);
    let (systems, complete) = max_disjoint_systems(&f.table, &[], 100_000);
    assert!(complete);
    let brute = systems
        .iter()
        .map(|c| DisjointSystem::new(&f.inv, &f.table, c.clone()).unwrap().abelian_rank(&f.inv))
        .max()
        .unwrap();
    let (rank, system) = max_abelian_rank(&f.inv, &f.table, None);
    assert_eq!(rank, brute);
    assert_eq!(DisjointSystem::new(&f.inv, &f.table, system).unwrap().abelian_rank(&f.inv), rank);
}

#[test]
fn genus_four_rank_reports() {
    let f = common::standard(4, 1, 200);
    let r = p5_2(&f.inv, &f.table);
    assert_eq!((r.max_abelian_rank, r.expected, r.systems_over_bound), (5, 5, 0));

    let r = p6(&f.tg);
    assert_eq!(r.bp_with_witness, r.bp_twists_in_triangles);
    assert!(r.bp_twists_in_triangles > 0);
    assert_eq!(r.separating_with_witness, 0);
    assert!(r.separating_twists > 0);
    for (v, kind) in f.tg.vertices.iter().enumerate() {
        if let Some(w) = bp_criterion_search(&f.tg, v) {
            let (g, h) = (f.tg.index_of(&w.g).unwrap(), f.tg.index_of(&w.h).unwrap());
            assert!(f.tg.graph.has_edge(v, g) && f.tg.graph.has_edge(v, h) && f.tg.graph.has_edge(g, h));
            assert_eq!(triple_ranks([kind, &w.g, &w.h], [1, 1, 1]).0, 2);
        }
    }

    let opts = PropsOptions { non_marked_samples: 50, cross_validate_triangles: 2, probes: 10, seed: 4 };
    let r = p7(&f.s, &f.inv, &f.tg, &opts).unwrap();
    assert_eq!(r.marked_checks, 54 * 216);
    assert_eq!(r.marked_passing, r.marked_checks);
    assert_eq!(r.non_marked_violating, r.non_marked_sampled);
    assert_eq!(r.cross_validation_passing, r.cross_validated_triangles);
}

#[test]
fn genus_five_non_marked_triples_violate() {
    let f = common::standard(5, 1, 200);
    let opts = PropsOptions { non_marked_samples: 100, cross_validate_triangles: 1, probes: 10, seed: 9 };
    let r = p7(&f.s, &f.inv, &f.tg, &opts).unwrap();
    assert_eq!(r.non_marked_sampled, 100);
    assert_eq!(r.non_marked_violating, 100);
    assert_eq!(p5_2(&f.inv, &f.table).max_abelian_rank, 7);
}
