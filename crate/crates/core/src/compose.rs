//! Composing per-block bags into a bag for the whole graph.
//!
//! Given a bag `Bᵢ = (Dᵢ, λᵢ, αᵢ, βᵢ, Lᵢ)` for every block, the composed bag
//! over all `n` vertices is
//!
//! ```text
//! λ   = Σᵢ λᵢ
//! α_v = Σ_{i ∈ Bl(v)} (αᵢ)_v - bi(v) + 1        (β likewise)
//! L   = Σᵢ L̂ᵢ                                   (Lᵢ zero-padded to n x n)
//! ```
//!
//! and `D` is the generalized distance matrix assembled from the `Dᵢ` by
//! additivity through cut vertices. If every block bag is left (right)
//! expressible, so is the composition, and `λ ≠ 0` yields
//! `D⁻¹ = -L + (1/λ) β αᵀ` no matter which individual `λᵢ` vanish.

use num::{One, Zero};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::bags::{
    self, cycle_bag, cycle_cof, cycle_det, cycle_distance_matrix, first_weight, generic_bag,
    second_weight, verify, Bag, BagError, BagVerdict,
};
use crate::blocks::{
    block_decompose, block_subgraph, cycle_block, submatrix_for_block, BlockDecomposition,
    BlockError, CycleBlock,
};
use crate::graph::{distance_matrix, Graph, GraphError};
use crate::linalg::{
    cofactor_sum, det_bareiss, format_rational, int, pow, sign_pow, RMatrix, Rational,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComposeError {
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected {expected} block bags, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("bag {block} is not labeled by the vertices of block {block}")]
    LabelMismatch { block: usize },
    #[error("block {block} matrix has order {found}, block has {expected} vertices")]
    BlockOrder {
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("block {block} has no bag with nonzero lambda: {reason}")]
    BlockNotExpressible { block: usize, reason: BagError },
    #[error("block {block} is not a directed cycle")]
    NotCactoid { block: usize },
    #[error("block {block} has first weight zero")]
    FirstWeightZero { block: usize },
    #[error("distances inside block {block} differ from distances in the whole graph")]
    BlockNotIsometric { block: usize },
    #[error("inverse check failed: {0}")]
    IdentityFailure(String),
}

/// Whole-graph `D` from per-block matrices by `D_uv = D_ux + D_xv` along the
/// unique chain of blocks between `u` and `v`.
///
/// `block_matrices[i]` is indexed in the vertex order of block `i`.
pub fn assemble_generalized_distance(
    dec: &BlockDecomposition,
    block_matrices: &[RMatrix],
) -> Result<RMatrix, ComposeError> {
    let r = dec.block_count();
    if block_matrices.len() != r {
        return Err(ComposeError::ArityMismatch {
            expected: r,
            found: block_matrices.len(),
        });
    }
    for (i, m) in block_matrices.iter().enumerate() {
        if !m.is_square() || m.rows() != dec.block(i).len() {
            return Err(ComposeError::BlockOrder {
                block: i,
                expected: dec.block(i).len(),
                found: m.rows(),
            });
        }
    }

    let n = dec.vertex_count();
    let mut d = RMatrix::zeros(n, n);
    for u in 0..n {
        // (vertex reached, block we arrived through)
        let mut stack = vec![(u, None)];
        while let Some((x, via)) = stack.pop() {
            let ux = d[(u, x)].clone();
            for &b in dec.block_index_set(x) {
                if Some(b) == via {
                    continue;
                }
                let px = dec.position_in_block(b, x).expect("x in block");
                for (pv, &v) in dec.block(b).iter().enumerate() {
                    if v == x {
                        continue;
                    }
                    d[(u, v)] = &ux + &block_matrices[b][(px, pv)];
                    if dec.block_index(v) > 1 {
                        stack.push((v, Some(b)));
                    }
                }
            }
        }
    }
    Ok(d.with_labels(dec.vertex_names().to_vec()).expect("square"))
}

/// The composition bag of `block_bags` over `dec`.
///
/// Labeled bags are aligned to their block's vertex order by label;
/// unlabeled bags are taken to be in block order already.
pub fn compose_bags(dec: &BlockDecomposition, block_bags: &[Bag]) -> Result<Bag, ComposeError> {
    let r = dec.block_count();
    if block_bags.len() != r {
        return Err(ComposeError::ArityMismatch {
            expected: r,
            found: block_bags.len(),
        });
    }
    let aligned: Vec<Bag> = block_bags
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let names = dec.block_names(i);
            match b.labels() {
                Some(_) => b
                    .aligned_to(&names)
                    .ok_or(ComposeError::LabelMismatch { block: i }),
                None if b.order() == names.len() => Ok(b.clone()),
                None => Err(ComposeError::LabelMismatch { block: i }),
            }
        })
        .collect::<Result<_, _>>()?;

    let n = dec.vertex_count();
    let mats: Vec<RMatrix> = aligned
        .iter()
        .map(|b| b.d.clone().without_labels())
        .collect();
    let d = assemble_generalized_distance(dec, &mats)?;

    let lambda: Rational = aligned.iter().map(|b| &b.lambda).sum();
    let mut alpha = vec![Rational::one(); n];
    let mut beta = vec![Rational::one(); n];
    let mut l = RMatrix::zeros(n, n);
    for (i, b) in aligned.iter().enumerate() {
        let block = dec.block(i);
        for (p, &v) in block.iter().enumerate() {
            alpha[v] += &b.alpha[p] - Rational::one();
            beta[v] += &b.beta[p] - Rational::one();
            for (q, &w) in block.iter().enumerate() {
                l[(v, w)] += &b.l[(p, q)];
            }
        }
    }
    let l = l.with_labels(dec.vertex_names().to_vec()).expect("square");
    Ok(Bag::new(d, lambda, alpha, beta, l).expect("consistent orders"))
}

/// Graham-Hoffman-Hosoya composition, division-free:
/// `cof = Πᵢ cofᵢ` and `det = Σᵢ detᵢ Π_{j≠i} cofⱼ`.
pub fn ghh_det_cof(block_dets: &[Rational], block_cofs: &[Rational]) -> (Rational, Rational) {
    assert_eq!(block_dets.len(), block_cofs.len(), "aligned block lists");
    assert!(!block_dets.is_empty(), "at least one block");
    let cof: Rational = block_cofs.iter().product();
    let det = (0..block_dets.len())
        .map(|i| {
            block_cofs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(block_dets[i].clone(), |acc, (_, c)| acc * c)
        })
        .sum();
    (det, cof)
}

/// `(-1)^(n-1) 2^(n-2) (n-1)`, the determinant of the distance matrix of any
/// tree on `n ≥ 2` vertices.
pub fn graham_pollak_det(n: usize) -> Rational {
    assert!(n >= 2, "a tree needs at least two vertices");
    sign_pow(n - 1) * pow(&int(2), n - 2) * int(n as i64 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CactoidDet {
    #[serde(with = "crate::linalg::rational::serde_rational")]
    pub det: Rational,
    #[serde(with = "crate::linalg::rational::serde_rational")]
    pub cof: Rational,
    #[serde(with = "crate::linalg::rational::serde_rational")]
    pub lambda: Rational,
}

/// Closed forms for a weighted cactoid digraph with blocks of sizes `nᵢ`
/// and first weights `wᵢ ≠ 0`:
/// `cof = (-1)^(n-1) Πᵢ wᵢ^(nᵢ-1)` and `det = λ cof` with
/// `λ = Σᵢ wᵢ⁽²⁾ / wᵢ`.
pub fn cactoid_det(g: &Graph) -> Result<CactoidDet, ComposeError> {
    let dec = block_decompose(g)?;
    let cycles = cactoid_cycles(g, &dec)?;
    cactoid_det_from_cycles(dec.vertex_count(), &cycles)
}

fn cactoid_cycles(g: &Graph, dec: &BlockDecomposition) -> Result<Vec<CycleBlock>, ComposeError> {
    (0..dec.block_count())
        .map(|i| cycle_block(g, dec, i).ok_or(ComposeError::NotCactoid { block: i }))
        .collect()
}

fn cactoid_det_from_cycles(n: usize, cycles: &[CycleBlock]) -> Result<CactoidDet, ComposeError> {
    let mut cof = sign_pow(n - 1);
    let mut lambda = Rational::zero();
    for (i, c) in cycles.iter().enumerate() {
        let w = first_weight(&c.weights);
        if w.is_zero() {
            return Err(ComposeError::FirstWeightZero { block: i });
        }
        cof *= pow(&w, c.weights.len() - 1);
        lambda += second_weight(&c.weights) / w;
    }
    Ok(CactoidDet {
        det: &lambda * &cof,
        cof,
        lambda,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BagKind {
    /// Closed-form natural bag of a weighted directed cycle.
    Cycle,
    /// Parameters forced from the block's inverse.
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub index: usize,
    pub vertices: Vec<String>,
    pub kind: BagKind,
    pub lambda: Rational,
    pub verdict: BagVerdict,
    pub det: Rational,
    pub cof: Rational,
    pub bag: Bag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionResult {
    pub decomposition: BlockDecomposition,
    pub per_block: Vec<BlockReport>,
    pub bag: Bag,
    pub verdict: BagVerdict,
    pub lambda_total: Rational,
    pub invertible: bool,
    pub inverse: Option<RMatrix>,
    pub det: Rational,
    pub cof: Rational,
}

impl CompositionResult {
    pub fn to_json_value(&self) -> serde_json::Value {
        let (n, sizes) = self.decomposition.structure();
        let blocks: Vec<serde_json::Value> = self
            .per_block
            .iter()
            .map(|b| {
                json!({
                    "index": b.index,
                    "vertices": b.vertices,
                    "kind": b.kind,
                    "lambda": format_rational(&b.lambda),
                    "lambda_zero": b.lambda.is_zero(),
                    "det": format_rational(&b.det),
                    "cof": format_rational(&b.cof),
                    "left_ok": b.verdict.left_ok,
                    "right_ok": b.verdict.right_ok,
                })
            })
            .collect();
        json!({
            "structure": [n, sizes],
            "labels": self.decomposition.vertex_names(),
            "blocks": blocks,
            "lambda": format_rational(&self.lambda_total),
            "det": format_rational(&self.det),
            "cof": format_rational(&self.cof),
            "left_ok": self.verdict.left_ok,
            "right_ok": self.verdict.right_ok,
            "failures": self.verdict.failures,
            "invertible": self.invertible,
            "inverse": self.inverse,
            "alpha": self.bag.alpha.iter().map(format_rational).collect::<Vec<_>>(),
            "beta": self.bag.beta.iter().map(format_rational).collect::<Vec<_>>(),
            "L": self.bag.l,
        })
    }
}

/// Block matrices, in block vertex order, read off the graph: forward walk
/// sums for directed cycles (valid for any weights), shortest paths inside
/// the block otherwise (positive weights required).
fn block_distance_matrices(
    g: &Graph,
    dec: &BlockDecomposition,
) -> Result<Vec<(RMatrix, Option<CycleBlock>)>, ComposeError> {
    (0..dec.block_count())
        .map(|i| match cycle_block(g, dec, i) {
            Some(c) => {
                let in_cycle_order = cycle_distance_matrix(&c.weights);
                // reorder from walk order to block order
                let pos: Vec<usize> = dec
                    .block(i)
                    .iter()
                    .map(|v| c.order.iter().position(|o| o == v).expect("same vertices"))
                    .collect();
                let m = in_cycle_order.principal_submatrix(&pos).expect("in range");
                Ok((m, Some(c)))
            }
            None => {
                let sub = block_subgraph(g, dec, i);
                Ok((distance_matrix(&sub)?.without_labels(), None))
            }
        })
        .collect()
}

/// The generalized distance matrix of `g`: block distances glued through
/// cut vertices. Equals the shortest-path distance matrix for positive
/// weights; for signed weights on cactoid blocks it is the only meaningful
/// distance matrix.
pub fn generalized_distance_matrix(g: &Graph) -> Result<RMatrix, ComposeError> {
    let dec = block_decompose(g)?;
    let mats: Vec<RMatrix> = block_distance_matrices(g, &dec)?
        .into_iter()
        .map(|(m, _)| m)
        .collect();
    assemble_generalized_distance(&dec, &mats)
}

/// Decomposes `g`, builds a bag per block, composes them and, when the
/// composed `λ` is nonzero, returns `D⁻¹ = -L + (1/λ) β αᵀ` (checked
/// against `D` on both sides).
///
/// Blocks that are directed cycles use the closed-form natural bag; other
/// blocks use [`generic_bag`]. With positive weights the result is checked
/// against the graph's shortest-path distance matrix; otherwise `D` is the
/// block-assembled generalized distance matrix. A zero composed `λ` is not
/// an error: the result simply has no inverse.
pub fn invert_distance_matrix(g: &Graph) -> Result<CompositionResult, ComposeError> {
    let dec = block_decompose(g)?;
    let block_mats = block_distance_matrices(g, &dec)?;

    let mut reports = Vec::with_capacity(dec.block_count());
    for (i, (m, cycle)) in block_mats.iter().enumerate() {
        let names = dec.block_names(i);
        let closed_form = cycle.as_ref().and_then(|c| {
            let walk_names: Vec<String> = c.order.iter().map(|&v| g.name(v).to_string()).collect();
            let bag = cycle_bag(&c.weights).ok()?.with_labels(walk_names).ok()?;
            Some((
                bag.aligned_to(&names)?,
                cycle_det(&c.weights),
                cycle_cof(&c.weights),
            ))
        });
        let (kind, bag, det, cof) = match closed_form {
            Some((bag, det, cof)) => (BagKind::Cycle, bag, det, cof),
            None => {
                let labeled = m.clone().with_labels(names.clone()).expect("square");
                let bag = generic_bag(&labeled)
                    .map_err(|reason| ComposeError::BlockNotExpressible { block: i, reason })?;
                (BagKind::Generic, bag, det_bareiss(m), cofactor_sum(m))
            }
        };
        reports.push(BlockReport {
            index: i,
            vertices: names,
            kind,
            lambda: bag.lambda.clone(),
            verdict: verify(&bag),
            det,
            cof,
            bag,
        });
    }

    let bags: Vec<Bag> = reports.iter().map(|r| r.bag.clone()).collect();
    let composed = compose_bags(&dec, &bags)?;

    if g.has_positive_weights() {
        let d = distance_matrix(g)?;
        if !d.entries_eq(&composed.d) {
            let block = (0..dec.block_count())
                .find(|&i| {
                    submatrix_for_block(&d, &dec, i)
                        .map(|s| !s.entries_eq(&block_mats[i].0))
                        .unwrap_or(true)
                })
                .unwrap_or(0);
            return Err(ComposeError::BlockNotIsometric { block });
        }
    }

    let verdict = verify(&composed);
    let lambda_total = composed.lambda.clone();
    let inverse = if lambda_total.is_zero() {
        None
    } else {
        let inv = bags::inverse_formula(&composed);
        let id = RMatrix::identity(dec.vertex_count());
        let left = inv
            .matmul(&composed.d)
            .map_err(|e| ComposeError::IdentityFailure(e.to_string()))?;
        let right = composed
            .d
            .matmul(&inv)
            .map_err(|e| ComposeError::IdentityFailure(e.to_string()))?;
        if !left.entries_eq(&id) || !right.entries_eq(&id) {
            return Err(ComposeError::IdentityFailure(
                "-L + (1/lambda) beta alpha^T is not the inverse of D".into(),
            ));
        }
        Some(inv)
    };

    let dets: Vec<Rational> = reports.iter().map(|r| r.det.clone()).collect();
    let cofs: Vec<Rational> = reports.iter().map(|r| r.cof.clone()).collect();
    let (det, cof) = ghh_det_cof(&dets, &cofs);

    Ok(CompositionResult {
        decomposition: dec,
        per_block: reports,
        invertible: inverse.is_some(),
        bag: composed,
        verdict,
        lambda_total,
        inverse,
        det,
        cof,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bags::is_laplacian_like;
    use crate::linalg::{inverse_exact, ratio};

    fn g(text: &str) -> Graph {
        Graph::parse_edge_list(text).unwrap()
    }

    fn two_triangles() -> Graph {
        g("x -> a\na -> b\nb -> x\nx -> c\nc -> d\nd -> x\n")
    }

    #[test]
    fn single_block_composition_is_identity() {
        let c = g("a -> b 2\nb -> c 3\nc -> a 1/2\n");
        let dec = block_decompose(&c).unwrap();
        let bag = cycle_bag(&[int(2), int(3), ratio(1, 2)])
            .unwrap()
            .with_labels(dec.block_names(0))
            .unwrap();
        let composed = compose_bags(&dec, std::slice::from_ref(&bag)).unwrap();
        assert_eq!(composed, bag);
    }

    #[test]
    fn two_triangles_by_hand() {
        let tt = two_triangles();
        let dec = block_decompose(&tt).unwrap();
        let res = invert_distance_matrix(&tt).unwrap();
        assert_eq!(res.lambda_total, int(2));
        let x = tt.vertex_index("x").unwrap();
        for v in 0..5 {
            let expected = if v == x { ratio(-1, 3) } else { ratio(1, 3) };
            assert_eq!(res.bag.alpha[v], expected);
            assert_eq!(res.bag.beta[v], expected);
        }
        assert!(res.verdict.both());
        assert_eq!(
            res.inverse.unwrap(),
            inverse_exact(&distance_matrix(&tt).unwrap()).unwrap()
        );
        assert_eq!((res.det.clone(), res.cof.clone()), (int(162), int(81)));
        assert_eq!(dec.structure(), res.decomposition.structure());
    }

    #[test]
    fn path_tree_composition() {
        let p3 = g("a -- b\nb -- c\n");
        let res = invert_distance_matrix(&p3).unwrap();
        assert_eq!(res.lambda_total, int(1));
        assert_eq!(res.bag.beta, vec![ratio(1, 2), int(0), ratio(1, 2)]);
        let forced = generic_bag(&distance_matrix(&p3).unwrap()).unwrap();
        assert_eq!(forced.beta, res.bag.beta);
        assert_eq!((res.det, res.cof), (int(4), int(4)));
    }

    #[test]
    fn unit_five_cycle_inverse() {
        let c5 = g("a -> b\nb -> c\nc -> d\nd -> e\ne -> a\n");
        let res = invert_distance_matrix(&c5).unwrap();
        assert_eq!(res.lambda_total, int(2));
        assert_eq!(res.bag.beta, vec![ratio(1, 5); 5]);
        assert_eq!(res.per_block[0].kind, BagKind::Cycle);
        assert!(is_laplacian_like(&res.bag.l));
        let d = distance_matrix(&c5).unwrap();
        assert_eq!(res.inverse.unwrap(), inverse_exact(&d).unwrap());
    }

    #[test]
    fn singular_block_rescued_by_neighbour() {
        // λ = 0 triangle glued to a unit 2-cycle at x
        let graph = g("x -> a 1\na -> b 1\nb -> x -1/2\nx -- y 1\n");
        let res = invert_distance_matrix(&graph).unwrap();
        let zero_block = res
            .per_block
            .iter()
            .find(|b| b.vertices.len() == 3)
            .unwrap();
        assert_eq!(zero_block.lambda, int(0));
        assert_eq!(res.lambda_total, ratio(1, 2));
        assert!(res.invertible);
        let d = generalized_distance_matrix(&graph).unwrap();
        assert_eq!(res.bag.d, d);
        assert_eq!(res.inverse.unwrap(), inverse_exact(&d).unwrap());
    }

    #[test]
    fn lambda_sum_zero_is_not_invertible() {
        // λ = -1/2 triangle (weights 1, 1, -4/5) plus unit 2-cycle (λ = 1/2)
        let graph = g("x -> a 1\na -> b 1\nb -> x -4/5\nx -- y 1\n");
        let res = invert_distance_matrix(&graph).unwrap();
        assert_eq!(res.lambda_total, int(0));
        assert!(!res.invertible);
        assert!(res.inverse.is_none());
        assert_eq!(res.det, int(0));
        assert!(res.verdict.both());
        assert_eq!(det_bareiss(&res.bag.d), int(0));
    }

    #[test]
    fn generic_blocks_compose_with_cycles() {
        // K3 (undirected triangle, not a directed cycle) glued to a 2-cycle
        let graph = g("a -- b\nb -- c\nc -- a\nc -> d 2\nd -> c 3\n");
        let res = invert_distance_matrix(&graph).unwrap();
        let kinds: Vec<BagKind> = res.per_block.iter().map(|b| b.kind).collect();
        assert!(kinds.contains(&BagKind::Generic) && kinds.contains(&BagKind::Cycle));
        assert!(res.verdict.both());
        let d = distance_matrix(&graph).unwrap();
        assert_eq!(res.inverse.unwrap(), inverse_exact(&d).unwrap());
        assert_eq!(res.det, det_bareiss(&d));
        assert_eq!(res.cof, cofactor_sum(&d));
    }

    #[test]
    fn compose_checks_arity_and_labels() {
        let tt = two_triangles();
        let dec = block_decompose(&tt).unwrap();
        let unit = cycle_bag(&[int(1), int(1), int(1)]).unwrap();
        assert_eq!(
            compose_bags(&dec, std::slice::from_ref(&unit)),
            Err(ComposeError::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
        let wrong = unit
            .clone()
            .with_labels(vec!["x".into(), "a".into(), "zz".into()])
            .unwrap();
        assert_eq!(
            compose_bags(&dec, &[wrong, unit.clone()]),
            Err(ComposeError::LabelMismatch { block: 0 })
        );
        let two = cycle_bag(&[int(1), int(1)]).unwrap();
        assert_eq!(
            compose_bags(&dec, &[two, unit]),
            Err(ComposeError::LabelMismatch { block: 0 })
        );
    }

    #[test]
    fn ghh_examples() {
        assert_eq!(ghh_det_cof(&[int(9)], &[int(9)]), (int(9), int(9)));
        assert_eq!(
            ghh_det_cof(&[int(9), int(9)], &[int(9), int(9)]),
            (int(162), int(81))
        );
        assert_eq!(
            ghh_det_cof(&[int(-1), int(-1)], &[int(-2), int(-2)]),
            (int(4), int(4))
        );
        // a zero cofactor does not break the division-free form
        assert_eq!(
            ghh_det_cof(&[int(3), int(5)], &[int(0), int(2)]),
            (int(6), int(0))
        );
    }

    #[test]
    fn cactoid_det_examples() {
        let c3 = g("a -> b\nb -> c\nc -> a\n");
        let r = cactoid_det(&c3).unwrap();
        assert_eq!((r.det, r.cof), (int(9), int(9)));

        let r = cactoid_det(&two_triangles()).unwrap();
        assert_eq!((r.det, r.cof, r.lambda), (int(162), int(81), int(2)));

        let star = g("c -- a\nc -- b\nc -- d\n");
        let r = cactoid_det(&star).unwrap();
        assert_eq!(r.lambda, ratio(3, 2));
        assert_eq!(r.det, int(-12));
        assert_eq!(r.det, graham_pollak_det(4));

        let k3 = g("a -- b\nb -- c\nc -- a\n");
        assert_eq!(cactoid_det(&k3), Err(ComposeError::NotCactoid { block: 0 }));
        let zero = g("a -> b 1\nb -> a -1\n");
        assert_eq!(
            cactoid_det(&zero),
            Err(ComposeError::FirstWeightZero { block: 0 })
        );
    }

    #[test]
    fn graham_pollak_values() {
        assert_eq!(graham_pollak_det(2), int(-1));
        assert_eq!(graham_pollak_det(3), int(4));
        assert_eq!(graham_pollak_det(5), int(32));
        assert_eq!(graham_pollak_det(6), int(-80));
    }

    #[test]
    fn assembly_matches_shortest_paths() {
        let graph = g("a -> b 2\nb -> a 1/3\nb -> c 1\nc -> d 4\nd -> b 1/2\nd -- e 7\n");
        let d = distance_matrix(&graph).unwrap();
        assert_eq!(generalized_distance_matrix(&graph).unwrap(), d);
    }

    #[test]
    fn json_report_fields() {
        let res = invert_distance_matrix(&g("a -> b\nb -> c\nc -> a\n")).unwrap();
        let v = res.to_json_value();
        assert_eq!(v["structure"], json!([3, [3]]));
        assert_eq!(v["lambda"], "1");
        assert_eq!(v["det"], "9");
        assert_eq!(v["invertible"], true);
        assert_eq!(v["inverse"][0], json!(["-2/9", "4/9", "1/9"]));
    }
}
