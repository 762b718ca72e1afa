//! Seeded random instances: weighted cactoid digraphs, trees and cycle
//! weight vectors.
//!
//! Every generator owns its RNG (ChaCha8 seeded from the given `u64`), so
//! output is a pure function of the arguments. Vertices are named `v0`,
//! `v1`, … in creation order.

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bags::{first_weight, second_weight};
use crate::graph::Graph;
use crate::linalg::{int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// Every arc weighs one.
    Unit,
    /// `p/q` with `1 ≤ p, q ≤ bound`.
    PositiveRational { bound: u32 },
    /// `±p/q` with `1 ≤ p, q ≤ bound`.
    SignedRational { bound: u32 },
}

impl WeightKind {
    fn bound(&self) -> Option<u32> {
        match *self {
            WeightKind::Unit => None,
            WeightKind::PositiveRational { bound } | WeightKind::SignedRational { bound } => {
                Some(bound)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    pub block_count: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub weight_kind: WeightKind,
    /// Force one block to have second weight zero (so its `λᵢ = 0`) while
    /// keeping its first weight nonzero. The block gets length at least 3
    /// and its last arc weight is solved for, so it is generally negative.
    pub allow_zero_lambda: bool,
}

impl GenSpec {
    pub fn new(
        seed: u64,
        block_count: usize,
        min_len: usize,
        max_len: usize,
        weight_kind: WeightKind,
    ) -> Self {
        GenSpec {
            seed,
            block_count,
            min_len,
            max_len,
            weight_kind,
            allow_zero_lambda: false,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: &str| Err(GenError::InvalidSpec(m.to_string()));
        if self.block_count == 0 {
            return bad("block_count must be positive");
        }
        if self.min_len < 2 {
            return bad("cycle length must be at least 2");
        }
        if self.min_len > self.max_len {
            return bad("min_len exceeds max_len");
        }
        if self.weight_kind.bound() == Some(0) {
            return bad("weight bound must be at least 1");
        }
        if self.allow_zero_lambda && self.max_len < 3 {
            return bad("a zero-lambda block needs cycle length at least 3");
        }
        Ok(())
    }
}

fn sample_weight(rng: &mut ChaCha8Rng, kind: WeightKind) -> Rational {
    match kind {
        WeightKind::Unit => int(1),
        WeightKind::PositiveRational { bound } => {
            let p = rng.random_range(1..=bound as i64);
            let q = rng.random_range(1..=bound as i64);
            Rational::new(BigInt::from(p), BigInt::from(q))
        }
        WeightKind::SignedRational { bound } => {
            let p = rng.random_range(1..=bound as i64);
            let q = rng.random_range(1..=bound as i64);
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            Rational::new(BigInt::from(sign * p), BigInt::from(q))
        }
    }
}

/// Cycle weights with nonzero first weight, resampling on collision.
fn sample_cycle(rng: &mut ChaCha8Rng, len: usize, kind: WeightKind) -> Vec<Rational> {
    loop {
        let w: Vec<Rational> = (0..len).map(|_| sample_weight(rng, kind)).collect();
        if !first_weight(&w).is_zero() {
            return w;
        }
    }
}

/// Cycle weights with `w ≠ 0` and `w⁽²⁾ = 0`: the first `len - 1` weights
/// are sampled, then the last one is `x = -S₂'/S'` where `S'` and `S₂'`
/// are the first and second weights of the sampled prefix, because
/// `w⁽²⁾ = S₂' + x S'`.
fn sample_zero_lambda_cycle(rng: &mut ChaCha8Rng, len: usize, kind: WeightKind) -> Vec<Rational> {
    assert!(len >= 3);
    loop {
        let mut w: Vec<Rational> = (0..len - 1).map(|_| sample_weight(rng, kind)).collect();
        let s = first_weight(&w);
        if s.is_zero() {
            continue;
        }
        let x = -second_weight(&w) / &s;
        if x.is_zero() || (&s + &x).is_zero() {
            continue;
        }
        w.push(x);
        return w;
    }
}

/// `len` cycle weights of the given kind with nonzero sum.
pub fn gen_cycle_weights(len: usize, kind: WeightKind, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_cycle(&mut rng, len, kind)
}

/// `len ≥ 3` cycle weights with nonzero first weight and zero second
/// weight.
pub fn gen_zero_lambda_weights(len: usize, kind: WeightKind, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_zero_lambda_cycle(&mut rng, len, kind)
}

fn add_cycle(g: &mut Graph, anchor: Option<usize>, weights: Vec<Rational>) -> Vec<usize> {
    let mut verts = Vec::with_capacity(weights.len());
    match anchor {
        Some(a) => verts.push(a),
        None => verts.push(g.add_vertex("v0")),
    }
    while verts.len() < weights.len() {
        let name = format!("v{}", g.vertex_count());
        verts.push(g.add_vertex(&name));
    }
    let n = verts.len();
    for (k, w) in weights.into_iter().enumerate() {
        let from = g.name(verts[k]).to_string();
        let to = g.name(verts[(k + 1) % n]).to_string();
        g.add_arc(&from, &to, w).expect("fresh vertices");
    }
    verts
}

/// A weighted cactoid digraph: `block_count` directed cycles, each new one
/// attached at a uniformly chosen existing vertex.
pub fn gen_cactoid(spec: &GenSpec) -> Result<Graph, GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let zero_block = spec
        .allow_zero_lambda
        .then(|| rng.random_range(0..spec.block_count));

    let mut g = Graph::new();
    for b in 0..spec.block_count {
        let anchor = (b > 0).then(|| rng.random_range(0..g.vertex_count()));
        let weights = if Some(b) == zero_block {
            let len = rng.random_range(spec.min_len.max(3)..=spec.max_len);
            sample_zero_lambda_cycle(&mut rng, len, spec.weight_kind)
        } else {
            let len = rng.random_range(spec.min_len..=spec.max_len);
            sample_cycle(&mut rng, len, spec.weight_kind)
        };
        add_cycle(&mut g, anchor, weights);
    }
    Ok(g)
}

/// A random tree on `n ≥ 2` vertices, vertex `k` joined to a uniformly
/// chosen earlier vertex, every edge a unit 2-cycle.
pub fn gen_tree(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 2 {
        return Err(GenError::InvalidSpec(
            "a tree needs at least two vertices".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    g.add_vertex("v0");
    for k in 1..n {
        let parent = format!("v{}", rng.random_range(0..k));
        g.add_edge(&parent, &format!("v{k}"), int(1))
            .expect("fresh vertex");
    }
    Ok(g)
}
