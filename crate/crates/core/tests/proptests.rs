use std::sync::OnceLock;

use proptest::prelude::*;
use torelli_core::complex::{max_disjoint_systems, DisjointnessTable, Graph};
use torelli_core::curve::{NormalCurve, Surface};
use torelli_core::intmat::IntMatrix;
use torelli_core::standard::StandardCurves;
use torelli_core::twist::{dehn_twist, homology_action, word_action, MappingClassWord};

struct World {
    s: Surface,
    gens: Vec<NormalCurve>,
}

fn world() -> &'static World {
    static W: OnceLock<World> = OnceLock::new();
    W.get_or_init(|| {
        let s = Surface::new(2).unwrap();
        let gens = StandardCurves::new(&s).unwrap().generators();
        World { s, gens }
    })
}

fn letters() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..5usize, prop::sample::select(vec![-2i64, -1, 1, 2])), 0..4)
}

fn word(ls: &[(usize, i64)]) -> MappingClassWord {
    let w = world();
    MappingClassWord::from_letters(ls.iter().map(|&(i, n)| (w.gens[i].clone(), n)))
}

/// A curve reached from a generator by a short twist word.
fn curve() -> impl Strategy<Value = NormalCurve> {
    (0..5usize, letters()).prop_map(|(i, ls)| {
        let w = world();
        word_action(&w.s, &word(&ls), &w.gens[i]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn weights_round_trip(c in curve()) {
        let s = &world().s;
        prop_assert_eq!(&s.curve_from_weights(c.weights()).unwrap(), &c);
        prop_assert_eq!(s.is_separating(&c), c.homology().iter().all(|&v| v == 0));
    }

    #[test]
    fn intersection_is_symmetric_and_bounds_algebraic(a in curve(), b in curve()) {
        let s = &world().s;
        let i = s.geometric_intersection(&a, &b).unwrap();
        prop_assert_eq!(i, s.geometric_intersection(&b, &a).unwrap());
        prop_assert!(s.algebraic_intersection(&a.oriented(), &b.oriented()).unsigned_abs() <= i);
        prop_assert_eq!(i == 0, s.disjoint(&a, &b).unwrap());
        prop_assert_eq!(s.geometric_intersection(&a, &a).unwrap(), 0);
    }

    #[test]
    fn twist_intersection_identity(t in 0..5usize, n in prop::sample::select(vec![-2i64, -1, 1, 2]), c in curve()) {
        let w = world();
        let t = &w.gens[t];
        let i = w.s.geometric_intersection(t, &c).unwrap();
        let img = dehn_twist(&w.s, t, n, &c).unwrap();
        prop_assert_eq!(w.s.geometric_intersection(&img, &c).unwrap(), n.unsigned_abs() * i * i);
        prop_assert_eq!(w.s.geometric_intersection(&img, t).unwrap(), i);
        prop_assert_eq!(dehn_twist(&w.s, t, -n, &img).unwrap(), c);
    }

    #[test]
    fn words_act_compatibly(u in letters(), v in letters(), c in curve()) {
        let w = world();
        let (u, v) = (word(&u), word(&v));
        let uv = word_action(&w.s, &u.then(&v), &c).unwrap();
        let m = homology_action(&w.s, &u.then(&v));
        let h = m.mul_vec(c.homology());
        let neg: Vec<i64> = h.iter().map(|x| -x).collect();
        prop_assert!(uv.homology() == h.as_slice() || uv.homology() == neg.as_slice());
        prop_assert_eq!(word_action(&w.s, &u.then(&v).then(&v.inverse()).then(&u.inverse()), &c).unwrap(), c);
    }

    #[test]
    fn rank_is_invariant_under_unimodular_rows(
        rows in prop::collection::vec(prop::collection::vec(-4i64..5, 4), 1..5),
        i in 0..4usize, j in 0..4usize, k in -3i64..4,
    ) {
        let m = IntMatrix::from_rows(&rows);
        let mut moved = rows.clone();
        if i < rows.len() && j < rows.len() && i != j {
            for c in 0..4 {
                moved[i][c] += k * rows[j][c];
            }
        }
        let f = m.invariant_factors();
        prop_assert_eq!(IntMatrix::from_rows(&moved).invariant_factors(), f.clone());
        prop_assert_eq!(m.rank(), f.len());
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(f.iter().all(|&x| x > 0));
    }

    #[test]
    fn graph_report_is_consistent(n in 1usize..30, edges in prop::collection::vec((0usize..30, 0usize..30), 0..60)) {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            let (u, v) = (u % n, v % n);
            if u != v && !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let g = Graph { adj };
        let r = g.report();
        prop_assert_eq!(r.size_histogram.iter().map(|(s, k)| s * k).sum::<usize>(), n);
        prop_assert_eq!(r.size_histogram.values().sum::<usize>(), r.components);
        let labels = g.connected_components();
        for u in 0..n {
            for &v in &g.adj[u] {
                prop_assert_eq!(labels[u], labels[v]);
            }
            let reach = g.shortest_path(0, u).is_some();
            prop_assert_eq!(reach, labels[u] == labels[0]);
        }
        prop_assert!(r.edges + r.components >= n);
    }

    #[test]
    fn disjoint_systems_are_maximal_cliques(n in 1usize..12, bits in prop::collection::vec(any::<bool>(), 66)) {
        let key = |i: usize, j: usize| { let (a, b) = (i.min(j), i.max(j)); b * (b - 1) / 2 + a };
        let table = DisjointnessTable::from_predicate(n, |i, j| i != j && bits[key(i, j)]);
        let (systems, complete) = max_disjoint_systems(&table, &[], usize::MAX);
        prop_assert!(complete);
        prop_assert!(!systems.is_empty());
        for sys in &systems {
            for (k, &a) in sys.iter().enumerate() {
                for &b in &sys[k + 1..] {
                    prop_assert!(table.disjoint(a, b));
                }
            }
            let extendable = (0..n).any(|v| !sys.contains(&v) && sys.iter().all(|&a| table.disjoint(a, v)));
            prop_assert!(!extendable);
        }
    }
}
