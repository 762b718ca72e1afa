//! Reference computations that share no code with the library: Laplace
//! expansion for determinants, walk enumeration for distances, and plain
//! matrix products for the bag conditions.

#![allow(dead_code)]

use blockinv::graph::Graph;
use blockinv::linalg::{int, RMatrix, Rational};
use blockinv::Bag;
use num::{One, Zero};

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(a: &RMatrix) -> Rational {
    let n = a.rows();
    let rows: Vec<Vec<Rational>> = a.to_rows();
    let cols: Vec<usize> = (0..n).collect();
    laplace(&rows, 0, &cols)
}

fn laplace(rows: &[Vec<Rational>], r: usize, cols: &[usize]) -> Rational {
    if cols.is_empty() {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for (k, &c) in cols.iter().enumerate() {
        if rows[r][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &rows[r][c] * laplace(rows, r + 1, &rest);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `cof(A)`: the sum of all `n²` cofactors, each from its own minor.
pub fn laplace_cof(a: &RMatrix) -> Rational {
    let n = a.rows();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            let minor = RMatrix::from_fn(n - 1, n - 1, |r, c| {
                a[(r + usize::from(r >= i), c + usize::from(c >= j))].clone()
            });
            let d = laplace_det(&minor);
            if (i + j) % 2 == 0 {
                acc += d;
            } else {
                acc -= d;
            }
        }
    }
    acc
}

/// Distance matrix of the directed cycle `0 -> 1 -> … -> n-1 -> 0` by
/// adding up the arcs of each forward path one at a time.
pub fn cycle_matrix_by_paths(weights: &[Rational]) -> RMatrix {
    let n = weights.len();
    RMatrix::from_fn(n, n, |i, j| {
        let mut total = Rational::zero();
        let mut at = i;
        while at != j {
            total += &weights[at];
            at = (at + 1) % n;
        }
        total
    })
}

/// Distances in a cactoid digraph by enumerating simple directed paths:
/// between any two vertices there is exactly one, and its weight is the
/// (generalized) distance. Panics if a pair has zero or several paths.
pub fn cactoid_matrix_by_paths(g: &Graph) -> RMatrix {
    let n = g.vertex_count();
    let mut out: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for a in g.arcs() {
        out[a.from].push((a.to, a.weight.clone()));
    }
    let mut d = RMatrix::zeros(n, n);
    for u in 0..n {
        let mut found: Vec<Option<Rational>> = vec![None; n];
        let mut on_path = vec![false; n];
        walk(&out, u, Rational::zero(), &mut on_path, &mut found);
        for v in 0..n {
            d[(u, v)] = found[v].clone().expect("every vertex reachable");
        }
    }
    d.with_labels(g.names().to_vec()).unwrap()
}

fn walk(
    out: &[Vec<(usize, Rational)>],
    at: usize,
    so_far: Rational,
    on_path: &mut [bool],
    found: &mut [Option<Rational>],
) {
    assert!(found[at].is_none(), "two simple paths reach vertex {at}");
    found[at] = Some(so_far.clone());
    on_path[at] = true;
    for (next, w) in &out[at] {
        if !on_path[*next] {
            walk(out, *next, &so_far + w, on_path, found);
        }
    }
    on_path[at] = false;
}

/// Shortest-path distances by repeated relaxation over the arc list
/// (positive weights).
pub fn relaxation_distances(g: &Graph) -> RMatrix {
    let n = g.vertex_count();
    let mut best: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (u, row) in best.iter_mut().enumerate() {
        row[u] = Some(Rational::zero());
    }
    for row in best.iter_mut() {
        for _ in 0..n {
            for a in g.arcs() {
                if let Some(du) = row[a.from].clone() {
                    let cand = du + &a.weight;
                    if row[a.to].as_ref().is_none_or(|cur| &cand < cur) {
                        row[a.to] = Some(cand);
                    }
                }
            }
        }
    }
    RMatrix::from_fn(n, n, |u, v| best[u][v].clone().expect("strongly connected"))
}

pub fn ones(n: usize) -> Vec<Rational> {
    vec![int(1); n]
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mul(a: &RMatrix, b: &RMatrix) -> RMatrix {
    RMatrix::from_fn(a.rows(), b.cols(), |i, j| dot(a.row(i), &b.col(j)))
}

/// The eight bag identities, each computed with explicit products;
/// returns the names of the ones that fail.
pub fn failing_identities(b: &Bag, w: &RMatrix) -> Vec<&'static str> {
    let n = w.rows();
    let j = ones(n);
    let id = RMatrix::identity(n);
    let lambda_row = RMatrix::from_fn(1, n, |_, _| b.lambda.clone());
    let alpha_row = RMatrix::from_fn(1, n, |_, c| b.alpha[c].clone());
    let beta_col = RMatrix::from_fn(n, 1, |r, _| b.beta[r].clone());
    let j_col = RMatrix::from_fn(n, 1, |_, _| int(1));
    let j_row = RMatrix::from_fn(1, n, |_, _| int(1));
    let zero_col = RMatrix::zeros(n, 1);
    let zero_row = RMatrix::zeros(1, n);
    let l = b.l.clone().without_labels();
    let w = w.clone().without_labels();

    let checks: [(&str, bool); 8] = [
        ("alpha^T j = 1", dot(&b.alpha, &j) == int(1)),
        ("L j = 0", mul(&l, &j_col) == zero_col),
        ("alpha^T W = lambda j^T", mul(&alpha_row, &w) == lambda_row),
        (
            "L W + I = beta j^T",
            mul(&l, &w).add(&id).unwrap() == mul(&beta_col, &j_row),
        ),
        ("j^T beta = 1", dot(&j, &b.beta) == int(1)),
        ("j^T L = 0", mul(&j_row, &l) == zero_row),
        (
            "W beta = lambda j",
            mul(&w, &beta_col) == lambda_row.transpose(),
        ),
        (
            "W L + I = j alpha^T",
            mul(&w, &l).add(&id).unwrap() == mul(&j_col, &alpha_row),
        ),
    ];
    checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| *name)
        .collect()
}

/// `-L + (1/λ) β αᵀ` with explicit loops.
pub fn bag_inverse_by_hand(b: &Bag) -> RMatrix {
    let n = b.order();
    RMatrix::from_fn(n, n, |i, j| {
        -&b.l[(i, j)] + &b.beta[i] * &b.alpha[j] / &b.lambda
    })
}

/// Rebuilds `g` with vertices inserted in the order `perm` and arcs in
/// reverse order. Names are kept, so the graph is the same up to
/// relabelling of indices.
pub fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let mut h = Graph::new();
    for &v in perm {
        h.add_vertex(g.name(v));
    }
    for a in g.arcs().iter().rev() {
        h.add_arc(g.name(a.from), g.name(a.to), a.weight.clone())
            .unwrap();
    }
    h
}

/// Deterministic shuffle of `0..n` by a linear congruential step, enough to
/// scramble vertex order without pulling a RNG into the test oracles.
pub fn scramble(n: usize, salt: u64) -> Vec<usize> {
    let mut keys: Vec<(u64, usize)> = (0..n)
        .map(|i| {
            let x = (i as u64 + 1)
                .wrapping_mul(6364136223846793005)
                .wrapping_add(salt.wrapping_mul(1442695040888963407));
            (x ^ (x >> 29), i)
        })
        .collect();
    keys.sort();
    keys.into_iter().map(|(_, i)| i).collect()
}
