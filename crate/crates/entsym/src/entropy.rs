//! Floating-point entropy semantics: the extended H on ℝ, Shannon, joint,
//! conditional entropy, mutual information, and the functional identities.
//!
//! Distributions and joint tables store exact rationals (so that symbolic
//! decompositions are exact); all entropies are evaluated in f64 with a
//! caller-chosen logarithm base. The default base is e.

use num_traits::{One, Zero};

use crate::exact::Rat;
use crate::symbols::{j_symbol, rat_to_f64, JExpr};
use crate::{Error, Result};

/// How far an input must stay from a singular locus (p = 0, 1, q, ...)
/// before a residual is computed. Closer than this, floating-point
/// cancellation dominates the result.
pub const SINGULAR_GUARD: f64 = 1e-9;

/// Tolerance on Σp = 1 for distributions and tables.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Validation mode for probability data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Every probability in the open interval (0,1).
    Strict,
    /// Probabilities in [0,1]; zero entries allowed.
    Lenient,
}

/// A finite probability distribution with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    probs: Vec<Rat>,
}

impl Distribution {
    pub fn new(probs: Vec<Rat>, mode: Mode) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Input("empty distribution".into()));
        }
        for p in &probs {
            let ok = match mode {
                Mode::Strict => p > &Rat::zero() && p < &Rat::one(),
                Mode::Lenient => p >= &Rat::zero() && p <= &Rat::one(),
            };
            if !ok {
                return Err(Error::Input(format!("probability {p} out of range")));
            }
        }
        let sum: Rat = probs.iter().sum();
        if (rat_to_f64(&sum) - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Input(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(Distribution { probs })
    }

    pub fn probs(&self) -> &[Rat] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Joint probability table: rows are X outcomes, columns are Y outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointTable {
    rows: usize,
    cols: usize,
    p: Vec<Rat>, // row-major
}

impl JointTable {
    pub fn new(rows: usize, cols: usize, p: Vec<Rat>) -> Result<Self> {
        if rows == 0 || cols == 0 || p.len() != rows * cols {
            return Err(Error::Input(format!(
                "table shape {rows}x{cols} does not match {} entries",
                p.len()
            )));
        }
        if p.iter().any(|x| x < &Rat::zero()) {
            return Err(Error::Input("negative table entry".into()));
        }
        let sum: Rat = p.iter().sum();
        if (rat_to_f64(&sum) - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Input(format!("table entries sum to {sum}, not 1")));
        }
        Ok(JointTable { rows, cols, p })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.p[i * self.cols + j]
    }

    /// Marginal distribution of X (sum over columns).
    pub fn row_marginals(&self) -> Vec<Rat> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rat::zero(), |acc, j| acc + self.get(i, j)))
            .collect()
    }

    /// Marginal distribution of Y (sum over rows).
    pub fn col_marginals(&self) -> Vec<Rat> {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(Rat::zero(), |acc, i| acc + self.get(i, j)))
            .collect()
    }
}

/// Which variable of a [`JointTable`] is being conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// X, the row variable.
    X,
    /// Y, the column variable.
    Y,
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.abs().ln()
    }
}

/// Extended entropy H(p) = −p·log|p| − (1−p)·log|1−p|, with H(0) = H(1) = 0.
/// Total and continuous on ℝ.
pub fn h_extended(p: f64, base: f64) -> f64 {
    if p == 0.0 || p == 1.0 {
        return 0.0;
    }
    (-xlogx(p) - xlogx(1.0 - p)) / base.ln()
}

/// Shannon entropy −Σ pᵢ log pᵢ, with 0·log 0 = 0.
pub fn shannon(d: &Distribution, base: f64) -> f64 {
    // `+ 0.0` normalizes −0.0 from a point mass
    -d.probs.iter().map(|p| xlogx(rat_to_f64(p))).sum::<f64>() / base.ln() + 0.0
}

/// Residual of the four-term functional equation
/// H(p) − H(q) + p·H(q/p) + (1−p)·H((1−q)/(1−p)); theoretically zero.
pub fn four_term_residual(p: f64, q: f64, base: f64) -> Result<f64> {
    if p.abs() < SINGULAR_GUARD || (p - 1.0).abs() < SINGULAR_GUARD || (p - q).abs() < SINGULAR_GUARD
    {
        return Err(Error::Domain(format!("(p,q) = ({p},{q}) too close to a singular locus")));
    }
    Ok(h_extended(p, base) - h_extended(q, base)
        + p * h_extended(q / p, base)
        + (1.0 - p) * h_extended((1.0 - q) / (1.0 - p), base))
}

/// Chain decomposition H(p₁..pₙ) = Σⱼ ⟨Σ_{i<j} pᵢ, pⱼ⟩ as an exact [`JExpr`]
/// with n−1 terms.
pub fn chain_decompose(d: &Distribution) -> Result<JExpr> {
    if d.len() < 2 {
        return Err(Error::Input("chain decomposition needs n ≥ 2".into()));
    }
    let mut acc = JExpr::zero();
    let mut prefix = d.probs[0].clone();
    for p in &d.probs[1..] {
        acc = acc + j_symbol(prefix.clone(), p.clone());
        prefix += p;
    }
    Ok(acc)
}

/// Joint entropy −ΣΣ p_{ij} log p_{ij}.
pub fn joint_entropy(t: &JointTable, base: f64) -> f64 {
    -t.p.iter().map(|p| xlogx(rat_to_f64(p))).sum::<f64>() / base.ln()
}

/// Symbolic decomposition of the joint entropy: a chain down each column,
/// plus the chain over column sums. For a 2×2 table this is exactly
/// ⟨p₁₁,p₂₁⟩ + ⟨p₁₂,p₂₂⟩ + ⟨p₁₁+p₂₁, p₁₂+p₂₂⟩.
pub fn joint_decompose(t: &JointTable) -> JExpr {
    let mut acc = JExpr::zero();
    for j in 0..t.cols {
        let mut prefix = t.get(0, j).clone();
        for i in 1..t.rows {
            acc = acc + j_symbol(prefix.clone(), t.get(i, j).clone());
            prefix += t.get(i, j);
        }
    }
    let col_sums = t.col_marginals();
    let mut prefix = col_sums[0].clone();
    for c in &col_sums[1..] {
        acc = acc + j_symbol(prefix.clone(), c.clone());
        prefix += c;
    }
    acc
}

fn marginal_entropy(marginals: &[Rat], base: f64) -> f64 {
    -marginals.iter().map(|p| xlogx(rat_to_f64(p))).sum::<f64>() / base.ln()
}

/// Conditional entropy via the chain rule: H(X|Y) = H(X,Y) − H(Y), and
/// symmetrically for `given = X`.
pub fn conditional_entropy(t: &JointTable, given: Axis, base: f64) -> Result<f64> {
    let marginals = match given {
        Axis::X => t.row_marginals(),
        Axis::Y => t.col_marginals(),
    };
    if marginals.iter().any(|m| m.is_zero()) {
        return Err(Error::Domain("zero marginal on the conditioning axis".into()));
    }
    Ok(joint_entropy(t, base) - marginal_entropy(&marginals, base))
}

/// Conditional entropy from the double-sum definition
/// −ΣΣ P(x,y) log P(x|y); used to cross-check the chain-rule form.
pub fn conditional_entropy_direct(t: &JointTable, given: Axis, base: f64) -> Result<f64> {
    let mut acc = 0.0;
    for i in 0..t.rows {
        for j in 0..t.cols {
            let joint = rat_to_f64(t.get(i, j));
            if joint == 0.0 {
                continue;
            }
            let marginal = match given {
                Axis::X => rat_to_f64(&t.row_marginals()[i]),
                Axis::Y => rat_to_f64(&t.col_marginals()[j]),
            };
            if marginal == 0.0 {
                return Err(Error::Domain("zero marginal on the conditioning axis".into()));
            }
            acc -= joint * (joint / marginal).ln();
        }
    }
    Ok(acc / base.ln())
}

/// Mutual information I(X;Y) = H(X) + H(Y) − H(X,Y).
pub fn mutual_information(t: &JointTable, base: f64) -> Result<f64> {
    Ok(mutual_information_all(t, base)?[0])
}

/// The three equivalent expressions for I(X;Y), in order:
/// H(X)+H(Y)−H(X,Y), H(X)−H(X|Y), H(X,Y)−H(X|Y)−H(Y|X).
pub fn mutual_information_all(t: &JointTable, base: f64) -> Result<[f64; 3]> {
    let hx = marginal_entropy(&t.row_marginals(), base);
    let hy = marginal_entropy(&t.col_marginals(), base);
    let hxy = joint_entropy(t, base);
    let hx_given_y = conditional_entropy(t, Axis::Y, base)?;
    let hy_given_x = conditional_entropy(t, Axis::X, base)?;
    Ok([
        hx + hy - hxy,
        hx - hx_given_y,
        hxy - hx_given_y - hy_given_x,
    ])
}

/// Residuals of the vertex-symmetry identities
/// (1−q)H((p−q)/(1−q)) = (p−1)H((q−1)/(p−1)) = (p−1)H((p−q)/(p−1)).
/// Returns the two pairwise differences and the common value.
pub fn defect_symmetry_residuals(p: f64, q: f64, base: f64) -> Result<(f64, f64, f64)> {
    if (p - 1.0).abs() < SINGULAR_GUARD
        || (q - 1.0).abs() < SINGULAR_GUARD
        || (p - q).abs() < SINGULAR_GUARD
    {
        return Err(Error::Domain(format!("(p,q) = ({p},{q}) too close to a singular locus")));
    }
    let a = (1.0 - q) * h_extended((p - q) / (1.0 - q), base);
    let b = (p - 1.0) * h_extended((q - 1.0) / (p - 1.0), base);
    let c = (p - 1.0) * h_extended((p - q) / (p - 1.0), base);
    Ok((a - b, b - c, a))
}
