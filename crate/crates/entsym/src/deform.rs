//! The 5-term dilogarithm over dual numbers and its exact linearization to
//! the 4-term infinitesimal dilogarithm.
//!
//! Quotient elements of TP(k) are represented directly in β(k): collect the
//! t-coefficients per base point and divide by a(1−a). This bakes in exactly
//! the additivity relations of the N_k subgroup and nothing else, so the
//! quotient groups are never materialized.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::exact::{dual_bracket, star_action, DualNumber, Rat};
use crate::symbols::{beta_term, BetaExpr};
use crate::{Error, Result};

/// Formal combination of dilogarithm symbols {z} over the dual numbers.
/// Rationals embed as dual numbers with zero t-part.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PExpr {
    terms: Vec<(Rat, DualNumber)>,
}

impl PExpr {
    pub fn zero() -> Self {
        PExpr::default()
    }

    /// Append coeff·{z}. The five-term constructors validate invertibility
    /// of z and 1−z before calling this.
    pub fn push(&mut self, coeff: Rat, z: DualNumber) {
        if !coeff.is_zero() {
            self.terms.push((coeff, z));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &DualNumber)> {
        self.terms.iter().map(|(c, z)| (c, z))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(c, z)| {
                json!({"c": c.to_string(), "re": z.re.to_string(), "eps": z.eps.to_string()})
            })
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for PExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, z)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{{{z}}}")?;
        }
        Ok(())
    }
}

fn check_admissible(which: &str, z: &DualNumber) -> Result<()> {
    if z.re.is_zero() {
        return Err(Error::Domain(format!("{which} argument {z} is not invertible")));
    }
    if z.re.is_one() {
        return Err(Error::Domain(format!(
            "{which} argument {z} has non-invertible 1−z"
        )));
    }
    Ok(())
}

/// The 5-term combination
/// {z₁} − {z₂} + {z₂/z₁} − {(1−z₂)/(1−z₁)} + {(1−z₂)z₁/((1−z₁)z₂)},
/// with all five arguments computed exactly in k[t]/(t²).
pub fn five_term(z1: &DualNumber, z2: &DualNumber) -> Result<PExpr> {
    let one = DualNumber::one();
    check_admissible("first", z1)?;
    check_admissible("second", z2)?;
    let third = z2.div(z1)?;
    check_admissible("third", &third)?;
    let fourth = (one.clone() - z2.clone()).div(&(one.clone() - z1.clone()))?;
    check_admissible("fourth", &fourth)?;
    let fifth = ((one.clone() - z2.clone()) * z1.clone())
        .div(&((one - z1.clone()) * z2.clone()))?;
    check_admissible("fifth", &fifth)?;
    let mut e = PExpr::zero();
    e.push(Rat::one(), z1.clone());
    e.push(-Rat::one(), z2.clone());
    e.push(Rat::one(), third);
    e.push(-Rat::one(), fourth);
    e.push(Rat::one(), fifth);
    Ok(e)
}

fn check_flat(name: &str, a: &Rat) -> Result<()> {
    if a.is_zero() || a.is_one() {
        return Err(Error::Domain(format!("{name} must avoid {{0,1}}, got {a}")));
    }
    Ok(())
}

/// The 5-term combination at z₁ = ⟨a⟩, z₂ = ⟨b⟩.
pub fn five_term_dual(a: &Rat, b: &Rat) -> Result<PExpr> {
    check_flat("a", a)?;
    check_flat("b", b)?;
    if a == b {
        return Err(Error::Domain("five-term needs a ≠ b".into()));
    }
    five_term(&dual_bracket(a)?, &dual_bracket(b)?)
}

/// Collapse a dual-number symbol expression into β(k):
/// {c+dt} contributes (d/(c(1−c)))·[c]; symbols with zero t-part vanish.
pub fn linearize(e: &PExpr) -> Result<BetaExpr> {
    let mut out = BetaExpr::zero();
    for (coeff, z) in e.terms() {
        if z.eps.is_zero() {
            continue;
        }
        if z.re.is_zero() || z.re.is_one() {
            return Err(Error::Domain(format!(
                "cannot linearize {{{z}}}: base point in {{0,1}} with nonzero t-part"
            )));
        }
        let denom = &z.re * (Rat::one() - &z.re);
        out.push(coeff * &z.eps / denom, z.re.clone())?;
    }
    Ok(out)
}

/// The 4-term element [a] − [b] + a[b/a] + (1−a)[(1−b)/(1−a)].
pub fn four_term_element(a: &Rat, b: &Rat) -> Result<BetaExpr> {
    check_flat("a", a)?;
    check_flat("b", b)?;
    if a == b {
        return Err(Error::Domain("four-term element needs a ≠ b".into()));
    }
    let one = Rat::one();
    let e = beta_term(one.clone(), a.clone())?
        - beta_term(one.clone(), b.clone())?
        + beta_term(a.clone(), b / a)?
        + beta_term(&one - a, (&one - b) / (&one - a))?;
    Ok(e)
}

/// Linearize the dual 5-term at (a,b). Equals [`four_term_element`] termwise
/// and is zero in β(ℚ).
pub fn deform_five_term(a: &Rat, b: &Rat) -> Result<BetaExpr> {
    linearize(&five_term_dual(a, b)?)
}

/// Section σ({a+bε}) = {a+bε} − {a}, represented canonically in β(k) as
/// (b/(a(1−a)))·[a].
pub fn sigma_section(a: &Rat, b: &Rat) -> Result<BetaExpr> {
    check_flat("a", a)?;
    if b.is_zero() {
        return Ok(BetaExpr::zero());
    }
    let denom = a * (Rat::one() - a);
    beta_term(b / denom, a.clone())
}

/// Exact verification of the four dual-number lemmas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualLemmaReport {
    /// ⟨b⟩/⟨a⟩ = a ∗ ⟨b/a⟩
    pub quot: bool,
    /// (1−⟨b⟩)/(1−⟨a⟩) = (a−1) ∗ ⟨(1−b)/(1−a)⟩
    pub diff_quot: bool,
    /// 1−⟨a⟩⁻¹ = (1−a⁻¹)(1−t)
    pub add_mult_inv: bool,
    /// (1−⟨b⟩⁻¹)/(1−⟨a⟩⁻¹) = (1−b⁻¹)/(1−a⁻¹)
    pub quot_inv: bool,
}

impl DualLemmaReport {
    pub fn all_pass(&self) -> bool {
        self.quot && self.diff_quot && self.add_mult_inv && self.quot_inv
    }

    pub fn to_json(&self) -> Value {
        json!({
            "quot": self.quot,
            "diff_quot": self.diff_quot,
            "add_mult_inv": self.add_mult_inv,
            "quot_inv": self.quot_inv,
        })
    }
}

/// Check the four dual-number lemmas at (a,b) by exact equality.
pub fn check_dual_lemmas(a: &Rat, b: &Rat) -> Result<DualLemmaReport> {
    check_flat("a", a)?;
    check_flat("b", b)?;
    if a == b {
        return Err(Error::Domain("lemma check needs a ≠ b".into()));
    }
    let one = Rat::one();
    let ba = dual_bracket(a)?;
    let bb = dual_bracket(b)?;
    let d_one = DualNumber::one();

    let quot = bb.div(&ba)? == star_action(a, &dual_bracket(&(b / a))?)?;

    let lhs = (d_one.clone() - bb.clone()).div(&(d_one.clone() - ba.clone()))?;
    let rhs = star_action(&(a - &one), &dual_bracket(&((&one - b) / (&one - a)))?)?;
    let diff_quot = lhs == rhs;

    let lhs = d_one.clone() - ba.inv()?;
    let rhs = DualNumber::from_rat(&one - a.recip()) * DualNumber::new(one.clone(), -one.clone());
    let add_mult_inv = lhs == rhs;

    let lhs = (d_one.clone() - bb.inv()?).div(&(d_one - ba.inv()?))?;
    let rhs = DualNumber::from_rat((&one - b.recip()) / (&one - a.recip()));
    let quot_inv = lhs == rhs;

    Ok(DualLemmaReport { quot, diff_quot, add_mult_inv, quot_inv })
}
