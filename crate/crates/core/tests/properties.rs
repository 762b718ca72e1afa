mod common;

use blockinv::bags::{
    bag_inverse, cycle_bag, cycle_cof, cycle_det, first_weight, generic_bag, is_laplacian_like,
    verify_left, verify_right, Bag,
};
use blockinv::blocks::{block_decompose, block_subgraph, submatrix_for_block, BlockDecomposition};
use blockinv::compose::{
    compose_bags, generalized_distance_matrix, ghh_det_cof, invert_distance_matrix, ComposeError,
};
use blockinv::generators::{gen_cactoid, gen_tree, GenSpec, WeightKind};
use blockinv::graph::{distance_matrix, validate_generalized_distance_matrix, Graph};
use blockinv::linalg::{
    adjugate, cofactor_sum, det_bareiss, int, inverse_exact, LinalgError, RMatrix, Rational,
};
use num::{BigInt, Zero};
use proptest::prelude::*;

use common::*;

fn rational(max: i64) -> impl Strategy<Value = Rational> {
    (-max..=max, 1..=max).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn positive(max: i64) -> impl Strategy<Value = Rational> {
    (1..=max, 1..=max).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn square(max_n: usize) -> impl Strategy<Value = RMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(rational(9), n * n).prop_map(move |v| {
            RMatrix::from_rows(v.chunks(n).map(|c| c.to_vec()).collect()).unwrap()
        })
    })
}

fn cycle_weights() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(20), 2..=8)
        .prop_filter("first weight nonzero", |w| !first_weight(w).is_zero())
}

/// Connected undirected skeleton (random tree) plus extra arcs and edges,
/// all with positive weights.
fn random_graph() -> impl Strategy<Value = Graph> {
    (2usize..=7).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|k| (0..k, positive(6))).collect();
        let extras = prop::collection::vec((0..n, 0..n, positive(6), any::<bool>()), 0..=n);
        (Just(n), parents, extras).prop_map(|(n, parents, extras)| {
            let mut g = Graph::new();
            for v in 0..n {
                g.add_vertex(&format!("v{v}"));
            }
            let mut seen = std::collections::BTreeSet::new();
            let mut arc = |g: &mut Graph, a: usize, b: usize, w: Rational| {
                if a != b && seen.insert((a, b)) {
                    g.add_arc(&format!("v{a}"), &format!("v{b}"), w).unwrap();
                }
            };
            for (k, (p, w)) in parents.into_iter().enumerate() {
                arc(&mut g, k + 1, p, w.clone());
                arc(&mut g, p, k + 1, w);
            }
            for (a, b, w, both) in extras {
                arc(&mut g, a, b, w.clone());
                if both {
                    arc(&mut g, b, a, w);
                }
            }
            g
        })
    })
}

fn cactoid(kind: WeightKind) -> impl Strategy<Value = Graph> {
    (any::<u64>(), 1usize..=4, any::<bool>()).prop_map(move |(seed, blocks, zero)| {
        let mut spec = GenSpec::new(seed, blocks, 2, 5, kind);
        spec.allow_zero_lambda = zero;
        gen_cactoid(&spec).unwrap()
    })
}

fn any_cactoid() -> impl Strategy<Value = Graph> {
    prop_oneof![
        cactoid(WeightKind::PositiveRational { bound: 12 }),
        cactoid(WeightKind::SignedRational { bound: 12 }),
        cactoid(WeightKind::Unit),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bareiss_matches_laplace(a in square(5)) {
        prop_assert_eq!(det_bareiss(&a), laplace_det(&a));
    }

    #[test]
    fn adjugate_identity(a in square(5)) {
        let det = det_bareiss(&a);
        let n = a.rows();
        prop_assert_eq!(a.matmul(&adjugate(&a)).unwrap(), RMatrix::identity(n).scalar_mul(&det));
        prop_assert_eq!(cofactor_sum(&a), laplace_cof(&a));
    }

    #[test]
    fn inverse_and_cofactor_relation(a in square(6)) {
        let det = det_bareiss(&a);
        match inverse_exact(&a) {
            Ok(inv) => {
                let id = RMatrix::identity(a.rows());
                prop_assert!(!det.is_zero());
                prop_assert_eq!(inv.matmul(&a).unwrap(), id.clone());
                prop_assert_eq!(a.matmul(&inv).unwrap(), id);
                prop_assert_eq!(cofactor_sum(&a), &det * inv.entry_sum());
            }
            Err(e) => {
                prop_assert_eq!(e, LinalgError::Singular);
                prop_assert!(det.is_zero());
            }
        }
    }

    #[test]
    fn matmul_matches_naive(a in square(4), seed in any::<u64>()) {
        let n = a.rows();
        let b = RMatrix::from_fn(n, n, |i, j| int(((seed >> ((i * n + j) % 60)) & 7) as i64 - 3) / int(1 + (i + j) as i64));
        let naive = RMatrix::from_fn(n, n, |i, j| (0..n).map(|k| &a[(i, k)] * &b[(k, j)]).sum());
        prop_assert_eq!(a.matmul(&b).unwrap(), naive);
    }

    #[test]
    fn csv_round_trip(a in square(5)) {
        prop_assert_eq!(RMatrix::from_csv(&a.to_csv()).unwrap(), a);
    }

    #[test]
    fn cycle_bag_identities(w in cycle_weights()) {
        let bag = cycle_bag(&w).unwrap();
        let d = cycle_matrix_by_paths(&w);
        prop_assert_eq!(&bag.d, &d);
        prop_assert!(failing_identities(&bag, &d).is_empty());
        prop_assert!(verify_left(&bag).is_empty() && verify_right(&bag).is_empty());
        prop_assert!(is_laplacian_like(&bag.l));
        prop_assert_eq!(cycle_det(&w), laplace_or_bareiss(&d));
        prop_assert_eq!(cycle_cof(&w), cofactor_sum(&d));
    }

    #[test]
    fn cycle_distances_match_paths(w in prop::collection::vec(positive(20), 2..=7)) {
        let n = w.len();
        let mut g = Graph::new();
        for (k, wk) in w.iter().enumerate() {
            g.add_arc(&format!("c{k}"), &format!("c{}", (k + 1) % n), wk.clone()).unwrap();
        }
        let d = distance_matrix(&g).unwrap();
        prop_assert!(d.entries_eq(&cycle_matrix_by_paths(&w)));
    }

    #[test]
    fn bag_inverse_and_laplacian_part(w in cycle_weights()) {
        let bag = cycle_bag(&w).unwrap();
        if bag.lambda.is_zero() {
            prop_assert!(det_bareiss(&bag.d).is_zero());
            return Ok(());
        }
        let inv = bag_inverse(&bag).unwrap();
        let id = RMatrix::identity(w.len());
        prop_assert_eq!(inv.matmul(&bag.d).unwrap(), id.clone());
        prop_assert_eq!(bag.d.matmul(&inv).unwrap(), id);
        let ba = RMatrix::outer_product(&bag.beta, &bag.alpha).scalar_mul(&bag.lambda.recip());
        let recovered = ba.sub(&inv).unwrap();
        prop_assert!(is_laplacian_like(&recovered));
        prop_assert_eq!(recovered, bag.l.clone());
    }

    #[test]
    fn forced_parameters_are_unique(w in cycle_weights()) {
        let bag = cycle_bag(&w).unwrap();
        prop_assume!(!bag.lambda.is_zero());
        let forced = generic_bag(&bag.d).unwrap();
        prop_assert!(forced.same_parameters(&bag));
    }

    #[test]
    fn graph_distances(g in random_graph()) {
        let d = distance_matrix(&g).unwrap();
        prop_assert!(d.entries_eq(&relaxation_distances(&g)));
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                for x in 0..n {
                    prop_assert!(d[(u, v)] <= &d[(u, x)] + &d[(x, v)]);
                }
            }
        }
        let dec = block_decompose(&g).unwrap();
        prop_assert!(validate_generalized_distance_matrix(&g, &d, &dec).unwrap().is_valid());
        prop_assert!(generalized_distance_matrix(&g).unwrap().entries_eq(&d));
    }

    #[test]
    fn block_bookkeeping(g in random_graph()) {
        let dec = block_decompose(&g).unwrap();
        let (n, sizes) = dec.structure();
        prop_assert_eq!(sizes.iter().map(|s| s - 1).sum::<usize>(), n - 1);
        prop_assert_eq!(dec.total_block_index(), dec.block_count() - 1);
        for v in 0..n {
            let is_cut = dec.cut_vertices().contains(&v);
            prop_assert_eq!(dec.block_index_set(v).len() >= 2, is_cut);
            prop_assert!(!dec.block_index_set(v).is_empty());
        }
        let d = distance_matrix(&g).unwrap();
        for i in 0..dec.block_count() {
            let inner = distance_matrix(&block_subgraph(&g, &dec, i)).unwrap();
            prop_assert!(submatrix_for_block(&d, &dec, i).unwrap().entries_eq(&inner));
        }
    }

    #[test]
    fn decomposition_ignores_vertex_order(g in random_graph(), salt in any::<u64>()) {
        let h = permuted(&g, &scramble(g.vertex_count(), salt));
        prop_assert_eq!(block_decompose(&g).unwrap().canonical_form(), block_decompose(&h).unwrap().canonical_form());
    }

    #[test]
    fn generic_blocks_invert(g in random_graph()) {
        let d = distance_matrix(&g).unwrap();
        match invert_distance_matrix(&g) {
            Ok(res) => {
                prop_assert!(res.verdict.both());
                prop_assert_eq!(&res.det, &det_bareiss(&d));
                prop_assert_eq!(&res.cof, &cofactor_sum(&d));
                match &res.inverse {
                    Some(inv) => prop_assert!(inv.entries_eq(&inverse_exact(&d).unwrap())),
                    None => prop_assert!(det_bareiss(&d).is_zero()),
                }
            }
            // some block has a singular distance matrix or jᵀD⁻¹j = 0
            Err(ComposeError::BlockNotExpressible { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn cactoid_composition(g in any_cactoid()) {
        let d = cactoid_matrix_by_paths(&g);
        prop_assert!(generalized_distance_matrix(&g).unwrap().entries_eq(&d));
        let res = invert_distance_matrix(&g).unwrap();
        prop_assert!(res.bag.d.entries_eq(&d));
        prop_assert!(failing_identities(&res.bag, &d).is_empty());
        prop_assert!(is_laplacian_like(&res.bag.l));
        let lambda_sum: Rational = res.per_block.iter().map(|b| &b.lambda).sum();
        prop_assert_eq!(&res.lambda_total, &lambda_sum);
        prop_assert_eq!(&res.det, &(&res.lambda_total * &res.cof));
        prop_assert_eq!(&res.det, &det_bareiss(&d));
        prop_assert_eq!(&res.cof, &cofactor_sum(&d));
        match &res.inverse {
            Some(inv) => prop_assert!(inv.entries_eq(&inverse_exact(&d).unwrap())),
            None => prop_assert!(det_bareiss(&d).is_zero()),
        }
    }

    #[test]
    fn ghh_matches_oracle_on_blocks(g in any_cactoid()) {
        let d = cactoid_matrix_by_paths(&g);
        let dec = block_decompose(&g).unwrap();
        let subs: Vec<RMatrix> = (0..dec.block_count()).map(|i| submatrix_for_block(&d, &dec, i).unwrap()).collect();
        let dets: Vec<Rational> = subs.iter().map(det_bareiss).collect();
        let cofs: Vec<Rational> = subs.iter().map(cofactor_sum).collect();
        prop_assert_eq!(ghh_det_cof(&dets, &cofs), (det_bareiss(&d), cofactor_sum(&d)));
    }

    #[test]
    fn composition_ignores_block_order(g in any_cactoid(), salt in any::<u64>()) {
        let res = invert_distance_matrix(&g).unwrap();
        let dec = &res.decomposition;
        let order = scramble(dec.block_count(), salt);
        let shuffled = BlockDecomposition::from_blocks(
            dec.vertex_names().to_vec(),
            order.iter().map(|&i| dec.block(i).to_vec()).collect(),
        ).unwrap();
        let bags: Vec<Bag> = order.iter().map(|&i| res.per_block[i].bag.clone()).collect();
        prop_assert_eq!(compose_bags(&shuffled, &bags).unwrap(), res.bag.clone());
    }

    #[test]
    fn edge_list_round_trip(g in any_cactoid()) {
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(generalized_distance_matrix(&back).unwrap(), generalized_distance_matrix(&g).unwrap());
        let json = Graph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(json.to_edge_list(), g.to_edge_list());
    }

    #[test]
    fn trees_have_rank_one_remainder(n in 2usize..=9, seed in any::<u64>()) {
        let t = gen_tree(n, seed).unwrap();
        let res = invert_distance_matrix(&t).unwrap();
        prop_assert!(is_laplacian_like(&res.bag.l));
        let rest = res.inverse.unwrap().add(&res.bag.l).unwrap();
        prop_assert!(blockinv::linalg::rank(&rest) == 1);
    }
}

fn laplace_or_bareiss(d: &RMatrix) -> Rational {
    if d.rows() <= 6 {
        laplace_det(d)
    } else {
        det_bareiss(d)
    }
}
