//! Exact arithmetic: rationals, dual numbers, prime factorization.
//!
//! The scalar field is ℚ throughout. Rationals are [`num_rational::BigRational`],
//! which keeps values reduced with a positive denominator, so equality is
//! structural. [`DualNumber`] is the ring k[t]/(t²).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Rat = num_rational::BigRational;

/// `n/d` as a [`Rat`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a [`Rat`].
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse `p`, `-p`, or `p/q` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Input(format!("malformed rational `{s}`"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Input(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(num, den))
}

/// Parse a number as an exact rational: `p`, `p/q`, or a decimal like
/// `0.25` (read exactly as 25/100).
pub fn parse_number(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let bad = || Error::Input(format!("malformed number `{s}`"));
        let (neg, int_part) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part),
        };
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || frac_part.is_empty()
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let r = Rat::new(digits, scale);
        Ok(if neg { -r } else { r })
    } else {
        parse_rat(s)
    }
}

/// Element a + bt of k[t]/(t²).
///
/// The same type houses the ε of k[ε] and the t of k₂: both are square-zero
/// and the two deformation arguments are parallel.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualNumber {
    pub re: Rat,
    pub eps: Rat,
}

impl DualNumber {
    pub fn new(re: Rat, eps: Rat) -> Self {
        DualNumber { re, eps }
    }

    pub fn from_rat(re: Rat) -> Self {
        DualNumber { re, eps: Rat::zero() }
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.eps.is_zero()
    }

    /// Multiplicative inverse: (a+bt)⁻¹ = a⁻¹ − a⁻²·b·t. Defined iff re ≠ 0.
    pub fn inv(&self) -> Result<DualNumber> {
        if self.re.is_zero() {
            return Err(Error::Domain("dual number with re = 0 is not invertible".into()));
        }
        let re_inv = self.re.recip();
        let eps = -(&re_inv * &re_inv * &self.eps);
        Ok(DualNumber { re: re_inv, eps })
    }

    /// Division; errors when the divisor is not invertible.
    pub fn div(&self, rhs: &DualNumber) -> Result<DualNumber> {
        Ok(self.clone() * rhs.inv()?)
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}t", self.re, self.eps)
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, rhs: DualNumber) -> DualNumber {
        DualNumber { re: self.re + rhs.re, eps: self.eps + rhs.eps }
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, rhs: DualNumber) -> DualNumber {
        DualNumber { re: self.re - rhs.re, eps: self.eps - rhs.eps }
    }
}

impl Neg for DualNumber {
    type Output = DualNumber;
    fn neg(self) -> DualNumber {
        DualNumber { re: -self.re, eps: -self.eps }
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    // (a+bt)(c+dt) = ac + (ad+bc)t since t² = 0.
    fn mul(self, rhs: DualNumber) -> DualNumber {
        let re = &self.re * &rhs.re;
        let eps = &self.re * &rhs.eps + &self.eps * &rhs.re;
        DualNumber { re, eps }
    }
}

/// ⟨a⟩ := a + a(1−a)t, defined for a ∉ {0, 1}. Always invertible,
/// with ⟨a⟩⁻¹ = a⁻¹(1 − (1−a)t).
pub fn dual_bracket(a: &Rat) -> Result<DualNumber> {
    if a.is_zero() || a.is_one() {
        return Err(Error::Domain(format!("⟨a⟩ requires a ∉ {{0,1}}, got {a}")));
    }
    let eps = a * (Rat::one() - a);
    Ok(DualNumber { re: a.clone(), eps })
}

/// Inverse of a dual number (free function form of [`DualNumber::inv`]).
pub fn dual_inv(d: &DualNumber) -> Result<DualNumber> {
    d.inv()
}

/// Action of k* on dual numbers: λ∗(b₀+b₁t) = b₀ + λb₁t.
pub fn star_action(lambda: &Rat, d: &DualNumber) -> Result<DualNumber> {
    if lambda.is_zero() {
        return Err(Error::Domain("star action requires λ ≠ 0".into()));
    }
    Ok(DualNumber { re: d.re.clone(), eps: lambda * &d.eps })
}

/// Signed prime factorization of a nonzero rational: sign·∏ p^e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSignature {
    pub sign: i8,
    /// prime → exponent; no zero entries.
    pub exponents: BTreeMap<u64, i64>,
}

impl PrimeSignature {
    /// Rebuild the rational sign·∏ p^e.
    pub fn reconstruct(&self) -> Rat {
        let mut out = if self.sign >= 0 { Rat::one() } else { -Rat::one() };
        for (&p, &e) in &self.exponents {
            let pk = Rat::from_integer(BigInt::from(p));
            if e >= 0 {
                for _ in 0..e {
                    out *= &pk;
                }
            } else {
                for _ in 0..(-e) {
                    out /= &pk;
                }
            }
        }
        out
    }
}

const SIEVE_LIMIT: u64 = 1_000_000;

static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let n = SIEVE_LIMIT as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
});

// Factor a positive integer by trial division over the cached sieve.
// A remainder above the sieve limit but below limit² must itself be prime.
fn factor_uint(mut n: BigUint, acc: &mut BTreeMap<u64, i64>, dir: i64) -> Result<()> {
    for &p in SMALL_PRIMES.iter() {
        if n.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        while (&n % &pb).is_zero() {
            n /= &pb;
            *acc.entry(p).or_insert(0) += dir;
        }
    }
    if !n.is_one() {
        match n.to_u64() {
            Some(p) if p < SIEVE_LIMIT * SIEVE_LIMIT => {
                *acc.entry(p).or_insert(0) += dir;
            }
            _ => {
                return Err(Error::Domain(format!(
                    "factor {n} exceeds the trial-division range"
                )))
            }
        }
    }
    Ok(())
}

/// Exact prime factorization of a nonzero rational.
pub fn factorize(q: &Rat) -> Result<PrimeSignature> {
    if q.is_zero() {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    let sign = if q.is_negative() { -1 } else { 1 };
    let mut exponents = BTreeMap::new();
    factor_uint(q.numer().abs().to_biguint().unwrap(), &mut exponents, 1)?;
    factor_uint(q.denom().abs().to_biguint().unwrap(), &mut exponents, -1)?;
    exponents.retain(|_, e| *e != 0);
    Ok(PrimeSignature { sign, exponents })
}
