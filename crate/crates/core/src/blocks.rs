//! Cut vertices and block decomposition.
//!
//! A vertex `x` is a cut vertex when removing it disconnects the underlying
//! undirected graph. For a strongly connected digraph every piece obtained by
//! splitting at `x` (a component of `G - x` together with `x`) is again
//! strongly connected, so the recursion below only ever sees distance
//! well-defined graphs.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_distance_well_defined, Graph};
use crate::linalg::{RMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("block decomposition needs at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("block index {index} out of range ({count} blocks)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("matrix of order {found} does not match {expected} vertices")]
    OrderMismatch { expected: usize, found: usize },
    #[error("invalid block list: {0}")]
    InvalidBlocks(String),
}

/// Blocks, cut vertices and block index sets of a graph.
///
/// Vertices are referred to by their index in the source graph. Each block
/// lists its vertices in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    names: Vec<String>,
    blocks: Vec<Vec<usize>>,
    cut_vertices: Vec<usize>,
    block_index_sets: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    /// Builds a decomposition from an explicit block list, keeping the block
    /// order as given.
    ///
    /// The blocks must cover every vertex, have at least two vertices each,
    /// pairwise share at most one vertex, and satisfy `n - 1 = Σ (nᵢ - 1)`.
    pub fn from_blocks(names: Vec<String>, blocks: Vec<Vec<usize>>) -> Result<Self, BlockError> {
        let n = names.len();
        let invalid = |m: String| Err(BlockError::InvalidBlocks(m));
        if blocks.is_empty() {
            return invalid("no blocks".into());
        }
        let mut sets = vec![Vec::new(); n];
        let mut canonical = Vec::with_capacity(blocks.len());
        for (i, block) in blocks.into_iter().enumerate() {
            let mut b = block;
            b.sort_unstable();
            b.dedup();
            if b.len() < 2 {
                return invalid(format!("block {i} has fewer than two vertices"));
            }
            if let Some(&v) = b.iter().find(|&&v| v >= n) {
                return invalid(format!("block {i} names vertex {v} of {n}"));
            }
            for &v in &b {
                sets[v].push(i);
            }
            canonical.push(b);
        }
        if let Some(v) = sets.iter().position(Vec::is_empty) {
            return invalid(format!("vertex {:?} is in no block", names[v]));
        }
        for i in 0..canonical.len() {
            for j in i + 1..canonical.len() {
                let shared = canonical[i]
                    .iter()
                    .filter(|v| canonical[j].binary_search(v).is_ok())
                    .count();
                if shared > 1 {
                    return invalid(format!("blocks {i} and {j} share {shared} vertices"));
                }
            }
        }
        let total: usize = canonical.iter().map(|b| b.len() - 1).sum();
        if total != n - 1 {
            return invalid(format!("sum of (n_i - 1) is {total}, expected {}", n - 1));
        }
        let cut_vertices = (0..n).filter(|&v| sets[v].len() >= 2).collect();
        Ok(BlockDecomposition {
            names,
            blocks: canonical,
            cut_vertices,
            block_index_sets: sets,
        })
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_names(&self, i: usize) -> Vec<String> {
        self.blocks[i]
            .iter()
            .map(|&v| self.names[v].clone())
            .collect()
    }

    pub fn cut_vertices(&self) -> &[usize] {
        &self.cut_vertices
    }

    /// `Bl_G(v)`: indices of the blocks containing `v`.
    pub fn block_index_set(&self, v: usize) -> &[usize] {
        &self.block_index_sets[v]
    }

    /// `bi_G(v)`.
    pub fn block_index(&self, v: usize) -> usize {
        self.block_index_sets[v].len()
    }

    /// `bi(G) = Σ_v (bi_G(v) - 1)`.
    pub fn total_block_index(&self) -> usize {
        self.block_index_sets.iter().map(|s| s.len() - 1).sum()
    }

    /// Structure parameters `(n; n₁, …, n_r)`.
    pub fn structure(&self) -> (usize, Vec<usize>) {
        (self.names.len(), self.blocks.iter().map(Vec::len).collect())
    }

    /// Blocks as sorted name lists, sorted; equal for decompositions of the
    /// same graph regardless of vertex or block order.
    pub fn canonical_form(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = (0..self.blocks.len())
            .map(|i| {
                let mut b = self.block_names(i);
                b.sort();
                b
            })
            .collect();
        out.sort();
        out
    }

    /// Position of vertex `v` inside block `i`.
    pub fn position_in_block(&self, i: usize, v: usize) -> Option<usize> {
        self.blocks[i].binary_search(&v).ok()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let (n, sizes) = self.structure();
        let report = DecompositionJson {
            structure: (n, sizes),
            blocks: (0..self.blocks.len())
                .map(|i| self.block_names(i))
                .collect(),
            cut_vertices: self
                .cut_vertices
                .iter()
                .map(|&v| self.names[v].clone())
                .collect(),
            block_index_sets: self
                .names
                .iter()
                .cloned()
                .zip(self.block_index_sets.iter().cloned())
                .collect(),
            block_index: self.total_block_index(),
        };
        serde_json::to_value(report).expect("decomposition json")
    }
}

#[derive(Serialize)]
struct DecompositionJson {
    structure: (usize, Vec<usize>),
    blocks: Vec<Vec<String>>,
    cut_vertices: Vec<String>,
    block_index_sets: BTreeMap<String, Vec<usize>>,
    block_index: usize,
}

fn require_well_defined(g: &Graph) -> Result<(), BlockError> {
    if g.vertex_count() < 2 {
        return Err(BlockError::TooFewVertices(g.vertex_count()));
    }
    if !is_distance_well_defined(g) {
        return Err(BlockError::NotStronglyConnected);
    }
    Ok(())
}

/// Whether removing `x` from the subgraph induced by `keep` leaves more than
/// one weak component.
fn separates(g: &Graph, keep: &[bool], x: usize) -> bool {
    let mut rest = keep.to_vec();
    rest[x] = false;
    g.weak_components_on(&rest).1 > 1
}

/// Cut vertices, by brute force: delete each vertex and re-check
/// connectivity.
pub fn cut_vertices(g: &Graph) -> Result<Vec<usize>, BlockError> {
    require_well_defined(g)?;
    let keep = vec![true; g.vertex_count()];
    Ok((0..g.vertex_count())
        .filter(|&x| separates(g, &keep, x))
        .collect())
}

/// Recursive splitting at cut vertices until no piece has one.
///
/// Blocks come back canonicalized: vertex lists sorted and the block list
/// sorted lexicographically.
pub fn block_decompose(g: &Graph) -> Result<BlockDecomposition, BlockError> {
    require_well_defined(g)?;
    let n = g.vertex_count();
    let mut blocks = Vec::new();
    let mut pending = vec![(0..n).collect::<Vec<usize>>()];
    while let Some(piece) = pending.pop() {
        let mut keep = vec![false; n];
        for &v in &piece {
            keep[v] = true;
        }
        let cut = if piece.len() > 2 {
            piece.iter().copied().find(|&x| separates(g, &keep, x))
        } else {
            None
        };
        match cut {
            None => blocks.push(piece),
            Some(x) => {
                keep[x] = false;
                let (comp, count) = g.weak_components_on(&keep);
                for c in 0..count {
                    let mut part: Vec<usize> = piece
                        .iter()
                        .copied()
                        .filter(|&v| comp[v] == Some(c))
                        .collect();
                    part.push(x);
                    pending.push(part);
                }
            }
        }
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    BlockDecomposition::from_blocks(g.names().to_vec(), blocks)
}

/// `sub(M; G, Gᵢ)`: rows and columns of `m` restricted to block `i`,
/// labeled by the block's vertex names.
pub fn submatrix_for_block(
    m: &RMatrix,
    dec: &BlockDecomposition,
    i: usize,
) -> Result<RMatrix, BlockError> {
    if i >= dec.block_count() {
        return Err(BlockError::IndexOutOfRange {
            index: i,
            count: dec.block_count(),
        });
    }
    if !m.is_square() || m.rows() != dec.vertex_count() {
        return Err(BlockError::OrderMismatch {
            expected: dec.vertex_count(),
            found: m.rows(),
        });
    }
    let sub = m
        .principal_submatrix(dec.block(i))
        .expect("block vertices are in range");
    Ok(sub
        .without_labels()
        .with_labels(dec.block_names(i))
        .expect("square"))
}

/// The subgraph induced by block `i`, with vertices in block order.
pub fn block_subgraph(g: &Graph, dec: &BlockDecomposition, i: usize) -> Graph {
    let block = dec.block(i);
    let mut sub = Graph::new();
    for &v in block {
        sub.add_vertex(g.name(v));
    }
    for a in g.arcs() {
        if block.binary_search(&a.from).is_ok() && block.binary_search(&a.to).is_ok() {
            sub.add_arc(g.name(a.from), g.name(a.to), a.weight.clone())
                .expect("arcs of a simple digraph");
        }
    }
    sub
}

/// A weighted directed cycle read off a block: `order[k] -> order[k+1]`
/// carries `weights[k]`, indices taken mod the cycle length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBlock {
    pub order: Vec<usize>,
    pub weights: Vec<Rational>,
}

/// Recognizes block `i` as a directed cycle: inside the block every vertex
/// has in-degree and out-degree one. The walk starts at the block's
/// smallest vertex.
pub fn cycle_block(g: &Graph, dec: &BlockDecomposition, i: usize) -> Option<CycleBlock> {
    let block = dec.block(i);
    let inside = |v: usize| block.binary_search(&v).is_ok();
    let mut succ = vec![None; g.vertex_count()];
    let mut indeg = vec![0usize; g.vertex_count()];
    for a in g.arcs().iter().filter(|a| inside(a.from) && inside(a.to)) {
        if succ[a.from].is_some() {
            return None;
        }
        succ[a.from] = Some((a.to, a.weight.clone()));
        indeg[a.to] += 1;
    }
    if block.iter().any(|&v| indeg[v] != 1 || succ[v].is_none()) {
        return None;
    }
    let mut order = Vec::with_capacity(block.len());
    let mut weights = Vec::with_capacity(block.len());
    let mut v = block[0];
    loop {
        order.push(v);
        let (next, w) = succ[v].clone().expect("checked");
        weights.push(w);
        v = next;
        if v == block[0] {
            break;
        }
        if order.len() > block.len() {
            return None;
        }
    }
    (order.len() == block.len()).then_some(CycleBlock { order, weights })
}
