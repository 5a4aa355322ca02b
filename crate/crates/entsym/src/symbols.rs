//! Formal linear combinations ⟨a,b⟩ and [a], the maps between them, and the
//! canonical form in ℚ*⊗ℚ that decides zero exactly.
//!
//! Zero-decision is delegated entirely to the prime-indexed canonical form:
//! no rewriting over the raw relations is attempted. The map D into ℚ*⊗ℚ is
//! injective, so an empty canonical form certifies zero; "nonzero" verdicts
//! are unconditional.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::exact::{factorize, Rat};
use crate::{Error, Result};

/// Element of J(k): finite combination of symbols ⟨a,b⟩ with rational
/// coefficients. Terms with a = 0, b = 0, or a + b = 0 are dropped on
/// construction (they are zero in J(k)).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JExpr {
    terms: BTreeMap<(Rat, Rat), Rat>,
}

/// Element of β(k): finite combination of symbols [a], a ≠ 0. Terms with
/// a = 1 are dropped ([1] = 0).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BetaExpr {
    terms: BTreeMap<Rat, Rat>,
}

/// Canonical form of an element of ℚ*⊗_ℤℚ as a finitely supported
/// prime → rational map. The element is zero iff the map is empty.
///
/// Signs vanish in the tensor: 2·((−1)⊗x) = 1⊗x = 0 and the group is
/// torsion-free, so (−1)⊗x = 0 and factorization signs are discarded.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorCanonical {
    coeffs: BTreeMap<u64, Rat>,
}

/// Formal image of μ in k⁺∧_ℤk⁺. Output only: over ℚ the wedge collapses,
/// so no equality semantics are attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgePair {
    pub first: Rat,
    pub second: Rat,
}

impl JExpr {
    pub fn zero() -> Self {
        JExpr::default()
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate (coeff, a, b) triples.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat, &Rat)> {
        self.terms.iter().map(|((a, b), c)| (c, a, b))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, coeff: Rat, a: Rat, b: Rat) {
        if coeff.is_zero() || a.is_zero() || b.is_zero() || (&a + &b).is_zero() {
            return;
        }
        let key = (a, b);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(c, a, b)| json!({"c": c.to_string(), "a": a.to_string(), "b": b.to_string()}))
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for JExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, a, b)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "⟨{a},{b}⟩")?;
            } else {
                write!(f, "{c}·⟨{a},{b}⟩")?;
            }
        }
        Ok(())
    }
}

/// Single symbol ⟨a,b⟩, normalized.
pub fn j_symbol(a: Rat, b: Rat) -> JExpr {
    let mut e = JExpr::zero();
    e.push(Rat::one(), a, b);
    e
}

impl Add for JExpr {
    type Output = JExpr;
    fn add(mut self, rhs: JExpr) -> JExpr {
        for ((a, b), c) in rhs.terms {
            self.push(c, a, b);
        }
        self
    }
}

impl Sub for JExpr {
    type Output = JExpr;
    fn sub(self, rhs: JExpr) -> JExpr {
        self + (-rhs)
    }
}

impl Neg for JExpr {
    type Output = JExpr;
    fn neg(mut self) -> JExpr {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul<Rat> for JExpr {
    type Output = JExpr;
    fn mul(mut self, rhs: Rat) -> JExpr {
        if rhs.is_zero() {
            return JExpr::zero();
        }
        for c in self.terms.values_mut() {
            *c *= &rhs;
        }
        self
    }
}

impl BetaExpr {
    pub fn zero() -> Self {
        BetaExpr::default()
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate (coeff, a) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter().map(|(a, c)| (c, a))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn push_unchecked(&mut self, coeff: Rat, a: Rat) {
        if coeff.is_zero() || a.is_one() {
            return;
        }
        let entry = self.terms.entry(a.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }

    /// Add `coeff·[a]`. The argument must be invertible: a ≠ 0.
    pub fn push(&mut self, coeff: Rat, a: Rat) -> Result<()> {
        if a.is_zero() {
            return Err(Error::Domain("β symbol [0] is undefined".into()));
        }
        self.push_unchecked(coeff, a);
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(c, a)| json!({"c": c.to_string(), "a": a.to_string()}))
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for BetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, a)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "[{a}]")?;
            } else {
                write!(f, "{c}·[{a}]")?;
            }
        }
        Ok(())
    }
}

/// Single symbol coeff·[a]; errors on a = 0.
pub fn beta_term(coeff: Rat, a: Rat) -> Result<BetaExpr> {
    let mut e = BetaExpr::zero();
    e.push(coeff, a)?;
    Ok(e)
}

impl Add for BetaExpr {
    type Output = BetaExpr;
    fn add(mut self, rhs: BetaExpr) -> BetaExpr {
        for (a, c) in rhs.terms {
            self.push_unchecked(c, a);
        }
        self
    }
}

impl Sub for BetaExpr {
    type Output = BetaExpr;
    fn sub(self, rhs: BetaExpr) -> BetaExpr {
        self + (-rhs)
    }
}

impl Neg for BetaExpr {
    type Output = BetaExpr;
    fn neg(mut self) -> BetaExpr {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul<Rat> for BetaExpr {
    type Output = BetaExpr;
    fn mul(mut self, rhs: Rat) -> BetaExpr {
        if rhs.is_zero() {
            return BetaExpr::zero();
        }
        for c in self.terms.values_mut() {
            *c *= &rhs;
        }
        self
    }
}

/// Isomorphism J(k) → β(k): ⟨a,b⟩ ↦ (a+b)[a/(a+b)]. Terms with a+b = 0
/// are already gone from a normalized [`JExpr`], and resulting [1] terms
/// (b = 0) cannot occur either, so the image is total.
pub fn j_to_beta(e: &JExpr) -> BetaExpr {
    let mut out = BetaExpr::zero();
    for (c, a, b) in e.terms() {
        let sum = a + b;
        out.push_unchecked(c * &sum, a / &sum);
    }
    out
}

/// Isomorphism β(k) → J(k): [a] ↦ ⟨a, 1−a⟩.
pub fn beta_to_j(e: &BetaExpr) -> JExpr {
    let mut out = JExpr::zero();
    for (c, a) in e.terms() {
        out.push(c.clone(), a.clone(), Rat::one() - a);
    }
    out
}

impl TensorCanonical {
    pub fn zero() -> Self {
        TensorCanonical::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, Rat> {
        &self.coeffs
    }

    /// Add x⊗y. The sign of x is discarded; y = 0 contributes nothing.
    pub fn add_tensor(&mut self, x: &Rat, y: &Rat) -> Result<()> {
        if y.is_zero() {
            return Ok(());
        }
        if x.is_zero() {
            return Err(Error::Domain("tensor 0⊗y is undefined".into()));
        }
        let sig = factorize(x)?;
        for (p, e) in sig.exponents {
            let entry = self.coeffs.entry(p).or_insert_with(Rat::zero);
            *entry += crate::exact::int(e) * y;
            if entry.is_zero() {
                self.coeffs.remove(&p);
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let primes: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(p, c)| (p.to_string(), Value::String(c.to_string())))
            .collect();
        json!({ "primes": primes })
    }
}

/// Injective map D: β(ℚ) → ℚ*⊗ℚ, the exact zero-oracle:
/// D(c[a]) = a⊗(ca) + (1−a)⊗(c(1−a)).
pub fn d_map(e: &BetaExpr) -> Result<TensorCanonical> {
    let mut out = TensorCanonical::zero();
    for (c, a) in e.terms() {
        // a = 1 is dropped at construction and a = 0 rejected, so both
        // tensor slots are well-formed here.
        let one_minus = Rat::one() - a;
        out.add_tensor(a, &(c * a))?;
        out.add_tensor(&one_minus, &(c * &one_minus))?;
    }
    Ok(out)
}

/// χ = D ∘ (J→β), in closed form χ(⟨a,b⟩) = (a/(a+b))⊗a + (b/(a+b))⊗b.
pub fn chi(e: &JExpr) -> Result<TensorCanonical> {
    let mut out = TensorCanonical::zero();
    for (c, a, b) in e.terms() {
        let sum = a + b;
        out.add_tensor(&(a / &sum), &(c * a))?;
        out.add_tensor(&(b / &sum), &(c * b))?;
    }
    Ok(out)
}

/// True iff `e` is zero in J(ℚ).
pub fn is_zero(e: &JExpr) -> Result<bool> {
    Ok(chi(e)?.is_zero())
}

/// True iff `e` is zero in β(ℚ).
pub fn is_zero_beta(e: &BetaExpr) -> Result<bool> {
    Ok(d_map(e)?.is_zero())
}

/// Real-entropy semantics: Σ coeff·(a+b)·H(a/(a+b)) with logs in `base`.
pub fn eval_entropy_real(e: &JExpr, base: f64) -> f64 {
    let mut acc = 0.0;
    for (c, a, b) in e.terms() {
        let sum = a + b;
        let p = rat_to_f64(a) / rat_to_f64(&sum);
        acc += rat_to_f64(c) * rat_to_f64(&sum) * crate::entropy::h_extended(p, base);
    }
    acc
}

/// Convert an exact rational to the nearest `f64`.
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back through the string form for extreme values
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// μ({a+bε}−{a}) = b/a ∧ b/(1−a), returned as the formal pair only.
pub fn mu(a: &Rat, b: &Rat) -> Result<WedgePair> {
    if a.is_zero() || a.is_one() {
        return Err(Error::Domain(format!("μ requires a ∉ {{0,1}}, got {a}")));
    }
    Ok(WedgePair {
        first: b / a,
        second: b / (Rat::one() - a),
    })
}

/// ρ({a+bε}−{a}) = a⊗(b/(1−a)) + (1−a)⊗(b/a), in canonical form.
pub fn rho(a: &Rat, b: &Rat) -> Result<TensorCanonical> {
    if a.is_zero() || a.is_one() {
        return Err(Error::Domain(format!("ρ requires a ∉ {{0,1}}, got {a}")));
    }
    let one_minus = Rat::one() - a;
    let mut out = TensorCanonical::zero();
    out.add_tensor(a, &(b / &one_minus))?;
    out.add_tensor(&one_minus, &(b / a))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn j_symbol_normalization() {
        assert!(j_symbol(int(3), int(-3)).is_structurally_zero());
        assert!(j_symbol(int(5), int(0)).is_structurally_zero());
        let e = j_symbol(rat(1, 2), rat(1, 4));
        assert_eq!(e.len(), 1);
        let (c, a, b) = e.terms().next().unwrap();
        assert_eq!((c, a, b), (&int(1), &rat(1, 2), &rat(1, 4)));
    }

    #[test]
    fn j_to_beta_examples() {
        // ⟨1/3, 2/3⟩ → [1/3]
        let e = j_to_beta(&j_symbol(rat(1, 3), rat(2, 3)));
        assert_eq!(e, beta_term(int(1), rat(1, 3)).unwrap());
        // ⟨2,−2⟩ → 0
        assert!(j_to_beta(&j_symbol(int(2), int(-2))).is_structurally_zero());
        // ⟨1,1⟩ → 2[1/2]
        let e = j_to_beta(&j_symbol(int(1), int(1)));
        assert_eq!(e, beta_term(int(2), rat(1, 2)).unwrap());
    }

    #[test]
    fn beta_to_j_examples() {
        assert_eq!(
            beta_to_j(&beta_term(int(1), rat(1, 3)).unwrap()),
            j_symbol(rat(1, 3), rat(2, 3))
        );
        assert_eq!(
            beta_to_j(&beta_term(int(2), rat(1, 2)).unwrap()),
            j_symbol(rat(1, 2), rat(1, 2)) * int(2)
        );
    }

    #[test]
    fn d_map_examples() {
        // [2] → {2: 2}
        let t = d_map(&beta_term(int(1), int(2)).unwrap()).unwrap();
        assert_eq!(t.coeffs().get(&2), Some(&int(2)));
        assert_eq!(t.coeffs().len(), 1);
        // [1/2] → {2: −1}
        let t = d_map(&beta_term(int(1), rat(1, 2)).unwrap()).unwrap();
        assert_eq!(t.coeffs().get(&2), Some(&int(-1)));
        assert_eq!(t.coeffs().len(), 1);
    }

    #[test]
    fn four_term_beta_cancels_at_2_4() {
        // [2]−[4]+2[2]−[3] is the 4-term element at (a,b) = (2,4)
        let e = beta_term(int(1), int(2)).unwrap()
            - beta_term(int(1), int(4)).unwrap()
            + beta_term(int(2), int(2)).unwrap()
            - beta_term(int(1), int(3)).unwrap();
        assert!(is_zero_beta(&e).unwrap());
        assert!(!is_zero_beta(&beta_term(int(1), int(2)).unwrap()).unwrap());
    }

    #[test]
    fn chi_cocycle_and_scaling_instances() {
        // ⟨a,b+c⟩+⟨b,c⟩−⟨a+b,c⟩−⟨a,b⟩ at (1,2,3)
        let (a, b, c) = (int(1), int(2), int(3));
        let e = j_symbol(a.clone(), &b + &c) + j_symbol(b.clone(), c.clone())
            - j_symbol(&a + &b, c.clone())
            - j_symbol(a.clone(), b.clone());
        assert!(is_zero(&e).unwrap());

        // ⟨ca,cb⟩ − c⟨a,b⟩ at (3,1,2)
        let e = j_symbol(int(3), int(6)) - j_symbol(int(1), int(2)) * int(3);
        assert!(is_zero(&e).unwrap());

        // symmetry difference at (3,5)
        let e = j_symbol(int(3), int(5)) - j_symbol(int(5), int(3));
        assert!(is_zero(&e).unwrap());
    }

    #[test]
    fn chi_is_structurally_symmetric() {
        let x = chi(&j_symbol(rat(3, 7), rat(-5, 11))).unwrap();
        let y = chi(&j_symbol(rat(-5, 11), rat(3, 7))).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn eval_entropy_examples() {
        let e = j_symbol(int(1), int(1));
        assert!((eval_entropy_real(&e, std::f64::consts::E) - 2.0 * 2f64.ln()).abs() < 1e-12);
        let e = j_symbol(rat(1, 3), rat(2, 3));
        assert!((eval_entropy_real(&e, 2.0) - 0.9182958340544896).abs() < 1e-12);
        assert_eq!(eval_entropy_real(&JExpr::zero(), 2.0), 0.0);
    }

    #[test]
    fn mu_and_rho_examples() {
        let w = mu(&int(2), &int(4)).unwrap();
        assert_eq!((w.first, w.second), (int(2), int(-4)));
        let w = mu(&rat(1, 2), &int(1)).unwrap();
        assert_eq!((w.first, w.second), (int(2), int(2)));
        assert!(mu(&int(1), &int(1)).is_err());

        // ρ(φ([2])) = d_map([2]); φ([a]) has b = a(1−a)
        let t = rho(&int(2), &int(-2)).unwrap();
        assert_eq!(t, d_map(&beta_term(int(1), int(2)).unwrap()).unwrap());
        let t = rho(&rat(1, 2), &rat(1, 4)).unwrap();
        assert_eq!(t, d_map(&beta_term(int(1), rat(1, 2)).unwrap()).unwrap());
        // bilinearity: b = 0 gives the zero tensor
        assert!(rho(&int(2), &int(0)).unwrap().is_zero());
    }

    #[test]
    fn beta_degenerate_argument_is_hard_error() {
        assert!(beta_term(int(1), int(0)).is_err());
        // [1] is silently zero per the defining relation
        assert!(beta_term(int(1), int(1)).unwrap().is_structurally_zero());
    }
}
