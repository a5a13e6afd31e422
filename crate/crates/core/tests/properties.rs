use kakimizu::action::{self, GroupAction};
use kakimizu::complex::{FlagComplex, VertexSet};
use kakimizu::cover::{self, ColumnPermutation, GenParams, HeightFamily, HeightFunction};
use kakimizu::dismantle;
use kakimizu::homology::{self, IntegerMatrix};
use kakimizu::io;
use kakimizu::projection::ProjectionStructure;
use num_bigint::BigInt;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = FlagComplex> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let k = pairs.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            FlagComplex::new(n, &edges).unwrap()
        })
    })
}

fn heights(columns: usize) -> impl Strategy<Value = HeightFunction> {
    proptest::collection::vec(0i64..5, columns).prop_map(|v| HeightFunction::normalized(v).unwrap())
}

fn small_family() -> impl Strategy<Value = HeightFamily> {
    (2usize..=4, 1usize..=4, 1i64..=4, any::<u64>())
        .prop_map(|(columns, count, h, seed)| {
            let mut p = GenParams::new(columns, count, h, seed);
            p.max_vertices = 80;
            cover::generate_random(&p)
        })
        .prop_filter_map("closure within cap", Result::ok)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntegerMatrix> {
    proptest::collection::vec(proptest::collection::vec(-6i64..=6, cols), rows)
        .prop_map(|r| IntegerMatrix::from_rows(&r).unwrap())
}

/// Product of elementary integer row operations; determinant ±1.
fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(n);
    for &(i, j, k, negate) in ops {
        let (i, j) = (i % n, j % n);
        let mut e = IntegerMatrix::identity(n);
        if i != j {
            e.set(i, j, BigInt::from(k));
        } else if negate {
            e.set(i, i, BigInt::from(-1));
        }
        m = e.mul(&m).unwrap();
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_distance_is_a_metric(c in graph(9)) {
        let d = c.distance_matrix();
        let n = c.vertex_count();
        for u in 0..n {
            prop_assert_eq!(d.get(u, u), Some(0));
            for v in 0..n {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                for w in 0..n {
                    if let (Some(a), Some(b)) = (d.get(u, v), d.get(v, w)) {
                        prop_assert!(d.get(u, w).is_some_and(|x| x <= a + b));
                    }
                }
            }
        }
    }

    #[test]
    fn cliques_are_closed_under_faces(c in graph(8)) {
        let cliques = c.enumerate_cliques(c.vertex_count()).unwrap();
        for s in &cliques {
            prop_assert!(c.is_clique(s.as_slice()));
            if s.len() > 1 {
                for skip in s.iter() {
                    let face: VertexSet = s.iter().filter(|&v| v != skip).collect();
                    prop_assert!(cliques.contains(&face));
                }
            }
        }
        let largest = cliques.iter().map(VertexSet::len).max().unwrap_or(0);
        prop_assert_eq!(largest, c.clique_number());
    }

    #[test]
    fn boundary_of_boundary_vanishes(c in graph(8)) {
        let top = c.clique_number();
        let ds = homology::boundary_matrices(&c, top).unwrap();
        for pair in ds.windows(2) {
            if pair[0].cols() > 0 && pair[1].cols() > 0 {
                prop_assert!(pair[0].mul(&pair[1]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn dismantlable_graphs_have_trivial_homology(c in graph(8)) {
        if let Some(order) = dismantle::greedy_dismantle(&c) {
            prop_assert!(dismantle::verify_dismantling(&c, &order).unwrap().passed);
            prop_assert!(homology::is_homology_point(&c).unwrap());
        }
    }

    #[test]
    fn smith_form_is_unimodular_invariant(
        m in matrix(3, 4),
        left in proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3, any::<bool>()), 0..6),
        right in proptest::collection::vec((0usize..4, 0usize..4, -3i64..=3, any::<bool>()), 0..6),
    ) {
        let base = homology::smith_normal_form(&m);
        let moved = unimodular(3, &left).mul(&m).unwrap().mul(&unimodular(4, &right)).unwrap();
        let other = homology::smith_normal_form(&moved);
        prop_assert_eq!(&base, &other);
        for w in base.divisors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn distance_and_projection_commute_with_column_permutations(
        f in heights(4), g in heights(4), perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle()
    ) {
        let p = ColumnPermutation(perm);
        let d = cover::kakimizu_distance(&f, &g).unwrap();
        prop_assert_eq!(d.d, cover::kakimizu_distance(&p.apply(&f), &p.apply(&g)).unwrap().d);
        prop_assert_eq!(d.d, cover::kakimizu_distance(&g, &f).unwrap().d);
        if f != g {
            let image = cover::project(&f, &g).unwrap();
            prop_assert_eq!(cover::kakimizu_distance(&image, &g).unwrap().d, 1);
            prop_assert_eq!(cover::kakimizu_distance(&image, &f).unwrap().d, d.d - 1);
            prop_assert_eq!(p.apply(&image), cover::project(&p.apply(&f), &p.apply(&g)).unwrap());
        }
    }

    #[test]
    fn normalization_forgets_translation(v in proptest::collection::vec(-5i64..5, 1..5), shift in -7i64..7) {
        let shifted: Vec<i64> = v.iter().map(|x| x + shift).collect();
        prop_assert_eq!(HeightFunction::normalized(v).unwrap(), HeightFunction::normalized(shifted).unwrap());
    }

    #[test]
    fn model_distance_matches_graph_distance(fam in small_family()) {
        let ps = ProjectionStructure::from_family(&fam).unwrap();
        for u in 0..fam.len() {
            for v in 0..fam.len() {
                let d = cover::kakimizu_distance(fam.member(u), fam.member(v)).unwrap().d;
                prop_assert_eq!(d as usize, ps.dist(u, v));
            }
        }
    }

    #[test]
    fn formats_round_trip(c in graph(9), fam in small_family()) {
        let text = io::serialize_flag_complex(&c);
        let back = io::parse_flag_complex(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(io::serialize_flag_complex(&back), text);

        let text = io::serialize_height_family(&fam);
        let back = io::parse_height_family(&text).unwrap();
        prop_assert_eq!(&back, &fam);
        prop_assert_eq!(io::serialize_height_family(&back), text);

        let ps = ProjectionStructure::from_family(&fam).unwrap();
        let table = io::serialize_projection_table(&ps);
        prop_assert_eq!(io::serialize_projection_table(&io::parse_projection_table(&table).unwrap()), table);
    }

    #[test]
    fn symmetric_families_carry_equivariant_actions(
        columns in 2usize..=4, count in 1usize..=4, h in 1i64..=3, seed in any::<u64>()
    ) {
        let mut perm: Vec<usize> = (0..columns).collect();
        perm.rotate_left(1);
        let mut p = GenParams::new(columns, count, h, seed);
        p.max_vertices = 80;
        if let Ok(fam) = cover::generate_symmetric(&p, &ColumnPermutation(perm.clone())) {
            let a = GroupAction::from_columns(&fam, &[ColumnPermutation(perm)]).unwrap();
            let ps = ProjectionStructure::from_family(&fam).unwrap();
            prop_assert!(action::check_action(&ps, &a).passed);
            let found = action::find_invariant_simplex(&ps, &a, 0).unwrap();
            prop_assert!(a.is_invariant(&found.simplex));
            prop_assert!(ps.complex().is_clique(found.simplex.as_slice()));
        }
    }
}
