//! Layered planar diagram calculus for additive/multiplicative strand
//! networks.
//!
//! A diagram is a bottom boundary (a list of strand states) and an ordered
//! list of slices, one generator per slice. The one-generator-per-slice model
//! makes "multiplicative strands to the left" well defined, so the weight
//! ω(p) of an additive vertex is computable by a linear scan.
//!
//! Conventions:
//! - All additive strands read upward. A downward segment of a free-form
//!   picture is expressed by choosing `Merge` (+) or `Split` (−) explicitly,
//!   and an orientation dot negates the transported value.
//! - A multiplicative strand with conorm `L` contributes its weight `c` when
//!   an additive vertex is moved leftward past it; conorm `R` contributes
//!   `c⁻¹`. A red dot (`RDot`) inverts the weight and flips the conorm.
//! - `MScale{c}` is a horizontal multiplicative line: it rescales every
//!   additive label, and its factor multiplies the weight of every vertex
//!   in an earlier slice.
//! - 0-labeled additive strands are ordinary strands; they contribute
//!   ⟨·,0⟩ = 0 at any vertex, so "0-lines can be erased" holds as a theorem.

mod dsl;

pub use dsl::parse_diagram;

use std::fmt;

use num_traits::{One, Zero};

use crate::entropy::{Distribution, JointTable};
use crate::exact::Rat;
use crate::symbols::{eval_entropy_real, j_symbol, j_to_beta, BetaExpr, JExpr};
use crate::{Error, Result};

/// Conormal co-orientation of a multiplicative strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conorm {
    L,
    R,
}

impl Conorm {
    fn flip(self) -> Conorm {
        match self {
            Conorm::L => Conorm::R,
            Conorm::R => Conorm::L,
        }
    }
}

/// State of one strand at a horizontal cut through the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrandState {
    /// Additive strand carrying a value in k.
    Add(Rat),
    /// Multiplicative strand carrying a unit in k* and a conorm.
    Mult { weight: Rat, conorm: Conorm },
}

impl fmt::Display for StrandState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrandState::Add(v) => write!(f, "add({v})"),
            StrandState::Mult { weight, conorm } => {
                let c = match conorm {
                    Conorm::L => "L",
                    Conorm::R => "R",
                };
                write!(f, "mult({weight}, conorm={c})")
            }
        }
    }
}

/// One elementary slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// Merge additive strands at pos, pos+1 into their sum; vertex +⟨a,b⟩.
    Merge { pos: usize },
    /// Split the additive strand at pos into (left, v−left); vertex −⟨a,b⟩.
    Split { pos: usize, left: Rat },
    /// Merge multiplicative strands at pos, pos+1 (conorms must match).
    MMerge { pos: usize },
    /// Virtual crossing of strands pos, pos+1.
    VCross { pos: usize },
    /// Orientation dot: negate the additive value at pos.
    Dot { pos: usize },
    /// Red dot: invert the multiplicative weight at pos and flip its conorm.
    RDot { pos: usize },
    /// Horizontal multiplicative line: rescale every additive value by c ≠ 0.
    MScale { factor: Rat },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Merge { pos } => write!(f, "merge @{pos}"),
            Generator::Split { pos, left } => write!(f, "split @{pos} left={left}"),
            Generator::MMerge { pos } => write!(f, "mmerge @{pos}"),
            Generator::VCross { pos } => write!(f, "vcross @{pos}"),
            Generator::Dot { pos } => write!(f, "dot @{pos}"),
            Generator::RDot { pos } => write!(f, "rdot @{pos}"),
            Generator::MScale { factor } => write!(f, "mscale {factor}"),
        }
    }
}

/// A layered planar diagram: named bottom boundary plus slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub name: String,
    pub inputs: Vec<StrandState>,
    pub slices: Vec<Generator>,
}

impl fmt::Display for Diagram {
    /// Prints the diagram back out in DSL syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "diagram \"{}\"", self.name)?;
        write!(f, "inputs:")?;
        for s in &self.inputs {
            write!(f, " {s}")?;
        }
        writeln!(f)?;
        for g in &self.slices {
            writeln!(f, "{g}")?;
        }
        write!(f, "end")
    }
}

/// Result of evaluating a diagram.
#[derive(Debug, Clone)]
pub struct EvalResult {
    pub invariant: JExpr,
    pub outputs: Vec<StrandState>,
    /// `j_to_beta` of the invariant; present in wall mode.
    pub wall_defects: Option<BetaExpr>,
    pub entropy_base: f64,
    pub entropy_value: f64,
}

impl EvalResult {
    pub fn to_json(&self) -> serde_json::Value {
        let outputs: Vec<String> = self.outputs.iter().map(|s| s.to_string()).collect();
        let mut v = serde_json::json!({
            "invariant": self.invariant.to_json(),
            "outputs": outputs,
            "entropy": {"base": self.entropy_base, "value": self.entropy_value},
        });
        if let Some(w) = &self.wall_defects {
            v["wall_defects"] = w.to_json();
        }
        v
    }
}

fn prop_err(slice: usize, msg: impl Into<String>) -> Error {
    Error::Propagation { slice, msg: msg.into() }
}

fn apply_slice(slice_idx: usize, cur: &[StrandState], g: &Generator) -> Result<Vec<StrandState>> {
    let mut next = cur.to_vec();
    let need = |pos: usize, width: usize| -> Result<()> {
        if pos + width > cur.len() {
            Err(prop_err(
                slice_idx,
                format!("position {pos} out of range for {} strands", cur.len()),
            ))
        } else {
            Ok(())
        }
    };
    match g {
        Generator::Merge { pos } => {
            need(*pos, 2)?;
            match (&cur[*pos], &cur[*pos + 1]) {
                (StrandState::Add(a), StrandState::Add(b)) => {
                    next.splice(*pos..*pos + 2, [StrandState::Add(a + b)]);
                }
                _ => return Err(prop_err(slice_idx, "merge needs two additive strands")),
            }
        }
        Generator::Split { pos, left } => {
            need(*pos, 1)?;
            match &cur[*pos] {
                StrandState::Add(v) => {
                    let right = v - left;
                    next.splice(
                        *pos..*pos + 1,
                        [StrandState::Add(left.clone()), StrandState::Add(right)],
                    );
                }
                _ => return Err(prop_err(slice_idx, "split needs an additive strand")),
            }
        }
        Generator::MMerge { pos } => {
            need(*pos, 2)?;
            match (&cur[*pos], &cur[*pos + 1]) {
                (
                    StrandState::Mult { weight: c1, conorm: k1 },
                    StrandState::Mult { weight: c2, conorm: k2 },
                ) => {
                    if k1 != k2 {
                        return Err(prop_err(slice_idx, "mmerge conorm mismatch"));
                    }
                    next.splice(
                        *pos..*pos + 2,
                        [StrandState::Mult { weight: c1 * c2, conorm: *k1 }],
                    );
                }
                _ => return Err(prop_err(slice_idx, "mmerge needs two multiplicative strands")),
            }
        }
        Generator::VCross { pos } => {
            need(*pos, 2)?;
            let (l, r) = (cur[*pos].clone(), cur[*pos + 1].clone());
            let (new_l, new_r) = match (l, r) {
                // additive strand moves leftward past the multiplicative one
                (StrandState::Mult { weight, conorm }, StrandState::Add(a)) => {
                    let a = match conorm {
                        Conorm::L => &weight * &a,
                        Conorm::R => &a / &weight,
                    };
                    (StrandState::Add(a), StrandState::Mult { weight, conorm })
                }
                // additive strand moves rightward: inverse rescaling
                (StrandState::Add(a), StrandState::Mult { weight, conorm }) => {
                    let a = match conorm {
                        Conorm::L => &a / &weight,
                        Conorm::R => &weight * &a,
                    };
                    (StrandState::Mult { weight, conorm }, StrandState::Add(a))
                }
                (l, r) => (r, l),
            };
            next[*pos] = new_l;
            next[*pos + 1] = new_r;
        }
        Generator::Dot { pos } => {
            need(*pos, 1)?;
            match &cur[*pos] {
                StrandState::Add(a) => next[*pos] = StrandState::Add(-a),
                _ => return Err(prop_err(slice_idx, "dot needs an additive strand")),
            }
        }
        Generator::RDot { pos } => {
            need(*pos, 1)?;
            match &cur[*pos] {
                StrandState::Mult { weight, conorm } => {
                    next[*pos] = StrandState::Mult {
                        weight: weight.recip(),
                        conorm: conorm.flip(),
                    }
                }
                _ => return Err(prop_err(slice_idx, "rdot needs a multiplicative strand")),
            }
        }
        Generator::MScale { factor } => {
            if factor.is_zero() {
                return Err(prop_err(slice_idx, "mscale factor must be nonzero"));
            }
            for s in next.iter_mut() {
                if let StrandState::Add(a) = s {
                    *a *= factor;
                }
            }
        }
    }
    Ok(next)
}

/// Propagate strand states through every slice. Entry 0 is the bottom
/// boundary; the last entry is the top boundary.
pub fn propagate(d: &Diagram) -> Result<Vec<Vec<StrandState>>> {
    for s in &d.inputs {
        if let StrandState::Mult { weight, .. } = s {
            if weight.is_zero() {
                return Err(Error::Input("multiplicative strand with weight 0".into()));
            }
        }
    }
    let mut history = vec![d.inputs.clone()];
    for (i, g) in d.slices.iter().enumerate() {
        let next = apply_slice(i, history.last().unwrap(), g)?;
        history.push(next);
    }
    Ok(history)
}

// Weight picked up by moving an additive vertex at `pos` far to the left
// through the strand list `cur`.
fn omega_left(cur: &[StrandState], pos: usize) -> Rat {
    let mut w = Rat::one();
    for s in &cur[..pos] {
        if let StrandState::Mult { weight, conorm } = s {
            match conorm {
                Conorm::L => w *= weight,
                Conorm::R => w /= weight,
            }
        }
    }
    w
}

/// The boundary invariant ȷ: Σ over additive vertices of s·ω·⟨a,b⟩, with
/// s = +1 for merges, −1 for splits, and ω the product of multiplicative
/// weights to the left of the vertex times every later `MScale` factor.
pub fn jmath(d: &Diagram) -> Result<JExpr> {
    let history = propagate(d)?;
    // suffix products of MScale factors
    let mut scale_after = vec![Rat::one(); d.slices.len() + 1];
    for i in (0..d.slices.len()).rev() {
        scale_after[i] = match &d.slices[i] {
            Generator::MScale { factor } => &scale_after[i + 1] * factor,
            _ => scale_after[i + 1].clone(),
        };
    }
    let mut acc = JExpr::zero();
    for (i, g) in d.slices.iter().enumerate() {
        let cur = &history[i];
        let contribution = match g {
            Generator::Merge { pos } => {
                let (a, b) = match (&cur[*pos], &cur[*pos + 1]) {
                    (StrandState::Add(a), StrandState::Add(b)) => (a.clone(), b.clone()),
                    _ => unreachable!("checked by propagate"),
                };
                let omega = omega_left(cur, *pos) * &scale_after[i + 1];
                j_symbol(a, b) * omega
            }
            Generator::Split { pos, left } => {
                let v = match &cur[*pos] {
                    StrandState::Add(v) => v.clone(),
                    _ => unreachable!("checked by propagate"),
                };
                let omega = omega_left(cur, *pos) * &scale_after[i + 1];
                -(j_symbol(left.clone(), &v - left) * omega)
            }
            _ => continue,
        };
        acc = acc + contribution;
    }
    Ok(acc)
}

/// Boundary-wall absorption: every additive vertex becomes a floating β
/// defect; equals `j_to_beta(jmath(d))`.
pub fn wall_absorb(d: &Diagram) -> Result<BetaExpr> {
    Ok(j_to_beta(&jmath(d)?))
}

/// The (bottom, top) boundary strand lists.
pub fn boundary_signature(d: &Diagram) -> Result<(Vec<StrandState>, Vec<StrandState>)> {
    let history = propagate(d)?;
    Ok((history.first().unwrap().clone(), history.last().unwrap().clone()))
}

/// Full evaluation for reporting.
pub fn evaluate(d: &Diagram, base: f64, wall: bool) -> Result<EvalResult> {
    let invariant = jmath(d)?;
    let (_, outputs) = boundary_signature(d)?;
    let wall_defects = if wall { Some(j_to_beta(&invariant)) } else { None };
    let entropy_value = eval_entropy_real(&invariant, base);
    Ok(EvalResult {
        invariant,
        outputs,
        wall_defects,
        entropy_base: base,
        entropy_value,
    })
}

/// Left-to-right chain of merges over additive labels.
pub fn build_chain_merge(labels: &[Rat]) -> Result<Diagram> {
    if labels.is_empty() {
        return Err(Error::Input("chain merge needs at least one label".into()));
    }
    let inputs = labels.iter().cloned().map(StrandState::Add).collect();
    let slices = (1..labels.len()).map(|_| Generator::Merge { pos: 0 }).collect();
    Ok(Diagram { name: "chain-merge".into(), inputs, slices })
}

/// Chain merge over a distribution's probabilities.
pub fn build_chain_merge_dist(d: &Distribution) -> Result<Diagram> {
    build_chain_merge(d.probs())
}

/// Merge tree over additive labels. `shape` lists the merge position taken
/// at each step; for n labels there must be n−1 positions, each valid for
/// the shrinking strand list.
pub fn build_merge_tree(labels: &[Rat], shape: &[usize]) -> Result<Diagram> {
    if labels.is_empty() || shape.len() + 1 != labels.len() {
        return Err(Error::Input(format!(
            "merge tree over {} labels needs {} merge positions, got {}",
            labels.len(),
            labels.len().saturating_sub(1),
            shape.len()
        )));
    }
    let mut width = labels.len();
    for &pos in shape {
        if pos + 1 >= width {
            return Err(Error::Input(format!(
                "merge position {pos} invalid with {width} strands"
            )));
        }
        width -= 1;
    }
    let inputs = labels.iter().cloned().map(StrandState::Add).collect();
    let slices = shape.iter().map(|&pos| Generator::Merge { pos }).collect();
    Ok(Diagram { name: "merge-tree".into(), inputs, slices })
}

/// How a joint table's entries are grouped into chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    /// Chain each column, then chain the column sums. For a 2×2 table the
    /// invariant is ⟨p₁₁,p₂₁⟩ + ⟨p₁₂,p₂₂⟩ + ⟨p₁₁+p₂₁, p₁₂+p₂₂⟩.
    ByCols,
    /// Chain each row, then chain the row sums.
    ByRows,
}

/// Grid diagram for a joint table: one merge chain per group, then a chain
/// over the group sums. With `ByCols` its invariant equals
/// [`crate::entropy::joint_decompose`] termwise.
pub fn build_joint_grid(t: &JointTable, grouping: Grouping) -> Diagram {
    let (groups, group_len): (usize, usize) = match grouping {
        Grouping::ByCols => (t.cols(), t.rows()),
        Grouping::ByRows => (t.rows(), t.cols()),
    };
    let mut inputs = Vec::with_capacity(groups * group_len);
    for g in 0..groups {
        for k in 0..group_len {
            let v = match grouping {
                Grouping::ByCols => t.get(k, g),
                Grouping::ByRows => t.get(g, k),
            };
            inputs.push(StrandState::Add(v.clone()));
        }
    }
    let mut slices = Vec::new();
    for g in 0..groups {
        // group g sits at positions g..g+group_len once groups 0..g are merged
        for _ in 1..group_len {
            slices.push(Generator::Merge { pos: g });
        }
    }
    for _ in 1..groups {
        slices.push(Generator::Merge { pos: 0 });
    }
    Diagram { name: "joint-grid".into(), inputs, slices }
}
