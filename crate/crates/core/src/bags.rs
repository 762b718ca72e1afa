//! Bags `(D, λ, α, β, L)` and the modified Laplacian-expressible conditions.
//!
//! A bag is *left* expressible when
//!
//! ```text
//! αᵀj = 1,  Lj = 0,  αᵀD = λjᵀ,  LD + I = βjᵀ
//! ```
//!
//! and *right* expressible when
//!
//! ```text
//! jᵀβ = 1,  jᵀL = 0,  Dβ = λj,  DL + I = jαᵀ.
//! ```
//!
//! Either way, `λ ≠ 0` gives `D⁻¹ = -L + (1/λ) β αᵀ`.

use std::fmt;

use num::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{
    self, det_bareiss, format_rational, inverse_exact, max_abs_entry, pow, sign_pow, LinalgError,
    RMatrix, Rational,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BagError {
    #[error("bag parts disagree in size: {0}")]
    Shape(String),
    #[error("lambda is zero; the inverse formula does not apply")]
    LambdaZero,
    #[error("bag satisfies neither the left nor the right conditions")]
    NotExpressible,
    #[error("cycle needs at least two arcs, got {0}")]
    CycleTooShort(usize),
    #[error("first weight of the cycle is zero")]
    FirstWeightZero,
    #[error("matrix is singular")]
    Singular,
    #[error("jᵀD⁻¹j = 0, so no bag with nonzero lambda exists")]
    ZeroRowSumInverse,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bag {
    pub d: RMatrix,
    pub lambda: Rational,
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub l: RMatrix,
}

impl Bag {
    pub fn new(
        d: RMatrix,
        lambda: Rational,
        alpha: Vec<Rational>,
        beta: Vec<Rational>,
        l: RMatrix,
    ) -> Result<Self, BagError> {
        let n = d.rows();
        if !d.is_square() || !l.is_square() || l.rows() != n || alpha.len() != n || beta.len() != n
        {
            return Err(BagError::Shape(format!(
                "D {}x{}, L {}x{}, alpha {}, beta {}",
                d.rows(),
                d.cols(),
                l.rows(),
                l.cols(),
                alpha.len(),
                beta.len()
            )));
        }
        if let (Some(a), Some(b)) = (d.labels(), l.labels()) {
            if a != b {
                return Err(BagError::Shape("D and L carry different labels".into()));
            }
        }
        Ok(Bag {
            d,
            lambda,
            alpha,
            beta,
            l,
        })
    }

    pub fn order(&self) -> usize {
        self.d.rows()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.d.labels()
    }

    /// Attaches vertex labels to both `D` and `L`.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, BagError> {
        self.d = self.d.without_labels().with_labels(labels.clone())?;
        self.l = self.l.without_labels().with_labels(labels)?;
        Ok(self)
    }

    /// The same bag with rows, columns and vector entries permuted so that
    /// the labels read `target`. Simultaneous permutation preserves every
    /// left and right condition. `None` when the labels are missing or are
    /// not a permutation of `target`.
    pub fn aligned_to(&self, target: &[String]) -> Option<Bag> {
        let labels = self.labels()?;
        if labels.len() != target.len() {
            return None;
        }
        let perm: Vec<usize> = target
            .iter()
            .map(|t| labels.iter().position(|l| l == t))
            .collect::<Option<_>>()?;
        let d = self.d.principal_submatrix(&perm).ok()?;
        let l = self.l.principal_submatrix(&perm).ok()?;
        let pick = |v: &[Rational]| perm.iter().map(|&k| v[k].clone()).collect();
        Some(Bag {
            d,
            lambda: self.lambda.clone(),
            alpha: pick(&self.alpha),
            beta: pick(&self.beta),
            l,
        })
    }

    /// Same parameters, ignoring labels.
    pub fn same_parameters(&self, other: &Bag) -> bool {
        self.d.entries_eq(&other.d)
            && self.lambda == other.lambda
            && self.alpha == other.alpha
            && self.beta == other.beta
            && self.l.entries_eq(&other.l)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(BagJson {
            lambda: format_rational(&self.lambda),
            alpha: self.alpha.iter().map(format_rational).collect(),
            beta: self.beta.iter().map(format_rational).collect(),
            l: &self.l,
            d: &self.d,
            labels: self.labels().map(<[String]>::to_vec),
        })
        .expect("bag json")
    }
}

#[derive(Serialize)]
struct BagJson<'a> {
    lambda: String,
    alpha: Vec<String>,
    beta: Vec<String>,
    #[serde(rename = "L")]
    l: &'a RMatrix,
    #[serde(rename = "D")]
    d: &'a RMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    #[serde(rename = "alpha^T j = 1")]
    AlphaSumsToOne,
    #[serde(rename = "L j = 0")]
    LRowSumsZero,
    #[serde(rename = "alpha^T D = lambda j^T")]
    AlphaTimesD,
    #[serde(rename = "L D + I = beta j^T")]
    LTimesDPlusI,
    #[serde(rename = "j^T beta = 1")]
    BetaSumsToOne,
    #[serde(rename = "j^T L = 0")]
    LColSumsZero,
    #[serde(rename = "D beta = lambda j")]
    DTimesBeta,
    #[serde(rename = "D L + I = j alpha^T")]
    DTimesLPlusI,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("condition name");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

/// One failed condition with its largest residual entry (`lhs - rhs`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    pub condition: Condition,
    pub row: usize,
    pub col: usize,
    #[serde(with = "linalg::rational::serde_rational")]
    pub residual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BagVerdict {
    pub left_ok: bool,
    pub right_ok: bool,
    pub failures: Vec<ConditionFailure>,
}

impl BagVerdict {
    pub fn both(&self) -> bool {
        self.left_ok && self.right_ok
    }
}

fn record(cond: Condition, residual: &RMatrix, out: &mut Vec<ConditionFailure>) {
    if let Some((row, col, r)) = max_abs_entry(residual) {
        out.push(ConditionFailure {
            condition: cond,
            row,
            col,
            residual: r,
        });
    }
}

fn scalar_residual(cond: Condition, lhs: Rational, out: &mut Vec<ConditionFailure>) {
    let r = lhs - Rational::one();
    if !r.is_zero() {
        out.push(ConditionFailure {
            condition: cond,
            row: 0,
            col: 0,
            residual: r,
        });
    }
}

/// Failures among the four left conditions; empty means left expressible.
pub fn verify_left(b: &Bag) -> Vec<ConditionFailure> {
    let n = b.order();
    let ones = vec![Rational::one(); n];
    let mut out = Vec::new();

    scalar_residual(Condition::AlphaSumsToOne, linalg::sum(&b.alpha), &mut out);

    let lj = b.l.matvec(&ones).expect("square");
    record(Condition::LRowSumsZero, &RMatrix::column(&lj), &mut out);

    let at_d = b.d.vecmat(&b.alpha).expect("square");
    let r: Vec<Rational> = at_d.iter().map(|x| x - &b.lambda).collect();
    record(
        Condition::AlphaTimesD,
        &RMatrix::column(&r).transpose(),
        &mut out,
    );

    let lhs =
        b.l.matmul(&b.d)
            .expect("square")
            .add(&RMatrix::identity(n))
            .expect("square");
    let rhs = RMatrix::outer_product(&b.beta, &ones);
    record(
        Condition::LTimesDPlusI,
        &lhs.sub(&rhs).expect("square"),
        &mut out,
    );
    out
}

/// Failures among the four right conditions; empty means right expressible.
pub fn verify_right(b: &Bag) -> Vec<ConditionFailure> {
    let n = b.order();
    let ones = vec![Rational::one(); n];
    let mut out = Vec::new();

    scalar_residual(Condition::BetaSumsToOne, linalg::sum(&b.beta), &mut out);

    let jl = b.l.vecmat(&ones).expect("square");
    record(
        Condition::LColSumsZero,
        &RMatrix::column(&jl).transpose(),
        &mut out,
    );

    let d_beta = b.d.matvec(&b.beta).expect("square");
    let r: Vec<Rational> = d_beta.iter().map(|x| x - &b.lambda).collect();
    record(Condition::DTimesBeta, &RMatrix::column(&r), &mut out);

    let lhs =
        b.d.matmul(&b.l)
            .expect("square")
            .add(&RMatrix::identity(n))
            .expect("square");
    let rhs = RMatrix::outer_product(&ones, &b.alpha);
    record(
        Condition::DTimesLPlusI,
        &lhs.sub(&rhs).expect("square"),
        &mut out,
    );
    out
}

/// Evaluates both sides.
pub fn verify(b: &Bag) -> BagVerdict {
    let left = verify_left(b);
    let right = verify_right(b);
    BagVerdict {
        left_ok: left.is_empty(),
        right_ok: right.is_empty(),
        failures: left.into_iter().chain(right).collect(),
    }
}

/// `-L + (1/λ) β αᵀ`, the inverse of `D` for an expressible bag with `λ ≠ 0`.
pub fn bag_inverse(b: &Bag) -> Result<RMatrix, BagError> {
    if b.lambda.is_zero() {
        return Err(BagError::LambdaZero);
    }
    if !verify_left(b).is_empty() && !verify_right(b).is_empty() {
        return Err(BagError::NotExpressible);
    }
    Ok(inverse_formula(b))
}

/// The inverse formula without any checks. Requires `λ ≠ 0`.
pub(crate) fn inverse_formula(b: &Bag) -> RMatrix {
    let rank_one = RMatrix::outer_product(&b.beta, &b.alpha).scalar_mul(&b.lambda.recip());
    let inv = rank_one.sub(&b.l).expect("square");
    match b.labels() {
        Some(l) => inv
            .without_labels()
            .with_labels(l.to_vec())
            .expect("square"),
        None => inv,
    }
}

/// All row sums and all column sums vanish.
pub fn is_laplacian_like(l: &RMatrix) -> bool {
    l.is_square()
        && (0..l.rows()).all(|i| l.row(i).iter().sum::<Rational>().is_zero())
        && (0..l.cols()).all(|j| l.col(j).iter().sum::<Rational>().is_zero())
}

/// The cyclic permutation matrix with `p[i][i+1 mod n] = 1`.
pub fn cyclic_permutation(n: usize) -> RMatrix {
    RMatrix::from_fn(n, n, |i, j| {
        if j == (i + 1) % n {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Sum of the arc weights of a cycle.
pub fn first_weight(weights: &[Rational]) -> Rational {
    weights.iter().sum()
}

/// Sum of `wᵢ wⱼ` over unordered pairs `i < j`.
pub fn second_weight(weights: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    let mut prefix = Rational::zero();
    for w in weights {
        acc += &prefix * w;
        prefix += w;
    }
    acc
}

/// Distance matrix of the weighted directed cycle `0 -> 1 -> … -> n-1 -> 0`
/// where arc `k -> k+1` has weight `weights[k]`: entry `(i, j)` is the weight
/// of the forward walk from `i` to `j`. Valid for signed weights too.
pub fn cycle_distance_matrix(weights: &[Rational]) -> RMatrix {
    let n = weights.len();
    let mut d = RMatrix::zeros(n, n);
    for i in 0..n {
        let mut acc = Rational::zero();
        for step in 1..n {
            acc += &weights[(i + step - 1) % n];
            d[(i, (i + step) % n)] = acc.clone();
        }
    }
    d
}

/// The natural bag of a weighted directed cycle:
///
/// ```text
/// λ = w⁽²⁾ / w
/// α = (1/w) [w_{n-1}, w_0, …, w_{n-2}]
/// β = (1/w) [w_0, w_1, …, w_{n-1}]
/// L = (1/w) (I - P)
/// ```
///
/// with first weight `w` and second weight `w⁽²⁾`. Both left and right
/// conditions hold whenever `w ≠ 0`, including when `λ = 0`.
pub fn cycle_bag(weights: &[Rational]) -> Result<Bag, BagError> {
    let n = weights.len();
    if n < 2 {
        return Err(BagError::CycleTooShort(n));
    }
    let w = first_weight(weights);
    if w.is_zero() {
        return Err(BagError::FirstWeightZero);
    }
    let inv_w = w.recip();
    let lambda = second_weight(weights) * &inv_w;
    let alpha = (0..n).map(|i| &weights[(i + n - 1) % n] * &inv_w).collect();
    let beta = weights.iter().map(|x| x * &inv_w).collect();
    let l = RMatrix::identity(n)
        .sub(&cyclic_permutation(n))?
        .scalar_mul(&inv_w);
    Bag::new(cycle_distance_matrix(weights), lambda, alpha, beta, l)
}

/// `det D(wCₙ) = (-1)^(n-1) w^(n-2) w⁽²⁾`.
pub fn cycle_det(weights: &[Rational]) -> Rational {
    let n = weights.len();
    assert!(n >= 2, "cycle needs at least two arcs");
    sign_pow(n - 1) * pow(&first_weight(weights), n - 2) * second_weight(weights)
}

/// `cof D(wCₙ) = (-1)^(n-1) w^(n-1)`.
pub fn cycle_cof(weights: &[Rational]) -> Rational {
    let n = weights.len();
    assert!(n >= 2, "cycle needs at least two arcs");
    sign_pow(n - 1) * pow(&first_weight(weights), n - 1)
}

/// The unique bag with `λ ≠ 0` for an invertible `D`.
///
/// With `s = jᵀD⁻¹j ≠ 0` the conditions force `λ = 1/s`, `αᵀ = λ jᵀD⁻¹`,
/// `β = λ D⁻¹j` and `L = -D⁻¹ + (1/λ) β αᵀ`; the result satisfies both the
/// left and right conditions.
pub fn generic_bag(d: &RMatrix) -> Result<Bag, BagError> {
    let inv = match inverse_exact(d) {
        Ok(inv) => inv,
        Err(LinalgError::Singular) => return Err(BagError::Singular),
        Err(e) => return Err(e.into()),
    };
    let n = d.rows();
    let ones = vec![Rational::one(); n];
    let inv_j = inv.matvec(&ones)?;
    let s = linalg::sum(&inv_j);
    if s.is_zero() {
        return Err(BagError::ZeroRowSumInverse);
    }
    let lambda = s.recip();
    let alpha: Vec<Rational> = inv.vecmat(&ones)?.iter().map(|x| x * &lambda).collect();
    let beta: Vec<Rational> = inv_j.iter().map(|x| x * &lambda).collect();
    let l = RMatrix::outer_product(&beta, &alpha)
        .scalar_mul(&s)
        .sub(&inv)?;
    let l = match d.labels() {
        Some(lb) => l.without_labels().with_labels(lb.to_vec())?,
        None => l.without_labels(),
    };
    Bag::new(d.clone(), lambda, alpha, beta, l)
}

/// Class membership of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// `det D ≠ 0`.
    pub in_dmi: bool,
    /// A left bag with `λ ≠ 0` and `jᵀβ = 1` exists.
    pub in_lap_exp_left: bool,
    /// A right bag with `λ ≠ 0` and `αᵀj = 1` exists.
    pub in_lap_exp_right: bool,
}

/// Decides membership via [`generic_bag`]: for invertible `D` the
/// parameters of any qualifying bag are forced, so a bag exists iff
/// `jᵀD⁻¹j ≠ 0`, and the forced bag satisfies both sides at once.
pub fn classify(d: &RMatrix) -> Classification {
    if !d.is_square() {
        return Classification {
            in_dmi: false,
            in_lap_exp_left: false,
            in_lap_exp_right: false,
        };
    }
    let in_dmi = !det_bareiss(d).is_zero();
    let (left, right) = match generic_bag(d) {
        Ok(b) => {
            let v = verify(&b);
            (v.left_ok, v.right_ok)
        }
        Err(_) => (false, false),
    };
    Classification {
        in_dmi,
        in_lap_exp_left: left,
        in_lap_exp_right: right,
    }
}
