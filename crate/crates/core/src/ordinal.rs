//! Countable ordinals below ε₀ in hereditary Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `ω^e₁·c₁ + ⋯ + ω^eₖ·cₖ` with strictly
//! decreasing exponents (themselves ordinals) and positive coefficients.
//! Construction always yields the canonical form, so derived structural
//! equality coincides with ordinal equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

mod parse;

pub use parse::ParseOrdinalError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("operation requires a positive ordinal")]
    Zero,
    #[error("coefficient overflow: result exceeds the representable range")]
    Overflow,
    #[error("terms are not in Cantor normal form: {0}")]
    NotCanonical(String),
}

/// One summand `ω^exponent · coefficient` of a Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: Ordinal,
    coefficient: u64,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> u64 {
        self.coefficient
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    pub fn nat(n: u64) -> Self {
        Ordinal::monomial(Ordinal::zero(), n)
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal::monomial(exponent, 1)
    }

    /// `ω^exponent · coefficient`; a zero coefficient gives 0.
    pub fn monomial(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, which must
    /// already be in Cantor normal form.
    pub fn from_terms<I>(terms: I) -> Result<Self, OrdinalError>
    where
        I: IntoIterator<Item = (Ordinal, u64)>,
    {
        let mut out: Vec<Term> = Vec::new();
        for (exponent, coefficient) in terms {
            if coefficient == 0 {
                return Err(OrdinalError::NotCanonical(format!(
                    "zero coefficient on w^({exponent})"
                )));
            }
            if let Some(last) = out.last() {
                if exponent >= last.exponent {
                    return Err(OrdinalError::NotCanonical(format!(
                        "exponent {exponent} does not decrease after {}",
                        last.exponent
                    )));
                }
            }
            out.push(Term {
                exponent,
                coefficient,
            });
        }
        Ok(Ordinal { terms: out })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    /// The coefficient of `ω^0`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => t.coefficient,
            _ => 0,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    /// Nonzero and not a successor.
    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    pub fn leading_coefficient(&self) -> Option<u64> {
        self.terms.first().map(|t| t.coefficient)
    }

    /// Coefficient of `ω^exponent` in the normal form (0 when absent).
    pub fn coefficient_of(&self, exponent: &Ordinal) -> u64 {
        self.terms
            .iter()
            .find(|t| &t.exponent == exponent)
            .map_or(0, |t| t.coefficient)
    }

    /// The infinite part: every term except the `ω^0` one.
    pub fn without_finite_part(&self) -> Ordinal {
        let terms = self
            .terms
            .iter()
            .filter(|t| !t.exponent.is_zero())
            .cloned()
            .collect();
        Ordinal { terms }
    }

    pub fn checked_add(&self, rhs: &Ordinal) -> Option<Ordinal> {
        let Some(head) = rhs.terms.first() else {
            return Some(self.clone());
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut merged = head.clone();
        for t in &self.terms {
            match t.exponent.cmp(&head.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    merged.coefficient = t.coefficient.checked_add(head.coefficient)?;
                }
                Ordering::Less => break,
            }
        }
        terms.push(merged);
        terms.extend(rhs.terms[1..].iter().cloned());
        Some(Ordinal { terms })
    }

    /// `self · ω^exponent · coefficient`
    fn checked_mul_term(&self, exponent: &Ordinal, coefficient: u64) -> Option<Ordinal> {
        let Some(head) = self.terms.first() else {
            return Some(Ordinal::zero());
        };
        if exponent.is_zero() {
            let mut terms = self.terms.clone();
            terms[0].coefficient = head.coefficient.checked_mul(coefficient)?;
            Some(Ordinal { terms })
        } else {
            let exp = head.exponent.checked_add(exponent)?;
            Some(Ordinal::monomial(exp, coefficient))
        }
    }

    /// Ordinal product `self · rhs`: `rhs` copies of `self` laid end to end.
    pub fn checked_mul(&self, rhs: &Ordinal) -> Option<Ordinal> {
        let mut acc = Ordinal::zero();
        for t in &rhs.terms {
            let part = self.checked_mul_term(&t.exponent, t.coefficient)?;
            acc = acc.checked_add(&part)?;
        }
        Some(acc)
    }

    fn checked_pow_nat(&self, mut n: u64) -> Option<Ordinal> {
        if let Some(k) = self.as_nat() {
            return u32::try_from(n)
                .ok()
                .and_then(|n| k.checked_pow(n))
                .map(Ordinal::nat)
                .or_else(|| (k <= 1).then(|| Ordinal::nat(k)));
        }
        let mut base = self.clone();
        let mut acc = Ordinal::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Some(acc)
    }

    /// Ordinal exponentiation `self^rhs`.
    ///
    /// The result is always below ε₀; the only failure is a coefficient that
    /// does not fit in `u64`.
    pub fn pow(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if rhs.is_zero() {
            return Ok(Ordinal::one());
        }
        if self.is_zero() {
            return Ok(Ordinal::zero());
        }
        if *self == Ordinal::one() {
            return Ok(Ordinal::one());
        }
        let limit_part = rhs.without_finite_part();
        let head = if limit_part.is_zero() {
            Ordinal::one()
        } else if self.is_finite() {
            // n^(ω·γ) = ω^γ for finite n ≥ 2
            Ordinal::omega_pow(limit_part.div_omega())
        } else {
            let lead = self.terms[0].exponent.clone();
            Ordinal::omega_pow(
                lead.checked_mul(&limit_part)
                    .ok_or(OrdinalError::Overflow)?,
            )
        };
        let tail = self
            .checked_pow_nat(rhs.finite_part())
            .ok_or(OrdinalError::Overflow)?;
        head.checked_mul(&tail).ok_or(OrdinalError::Overflow)
    }

    /// For `self = ω·γ` (no finite part), returns γ.
    fn div_omega(&self) -> Ordinal {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let exponent = match t.exponent.as_nat() {
                    Some(k) => Ordinal::nat(k - 1),
                    None => t.exponent.clone(),
                };
                Term {
                    exponent,
                    coefficient: t.coefficient,
                }
            })
            .collect();
        Ordinal { terms }
    }

    /// Left subtraction: the unique `r` with `smaller + r = self`.
    ///
    /// Requires `smaller <= self`.
    pub(crate) fn left_sub(&self, smaller: &Ordinal) -> Ordinal {
        debug_assert!(smaller <= self);
        for (i, t) in self.terms.iter().enumerate() {
            match smaller.terms.get(i) {
                Some(s) if s == t => continue,
                Some(s) if s.exponent == t.exponent => {
                    let mut terms = vec![Term {
                        exponent: t.exponent.clone(),
                        coefficient: t.coefficient - s.coefficient,
                    }];
                    terms.extend(self.terms[i + 1..].iter().cloned());
                    return Ordinal { terms };
                }
                _ => {
                    return Ordinal {
                        terms: self.terms[i..].to_vec(),
                    }
                }
            }
        }
        Ordinal::zero()
    }

    /// True iff the normal form is a single `ω^δ` with coefficient 1.
    ///
    /// For positive ordinals this is additive indecomposability; by
    /// convention `1 = ω^0` counts as indecomposable.
    pub fn is_indecomposable(&self) -> Result<bool, OrdinalError> {
        match self.terms.as_slice() {
            [] => Err(OrdinalError::Zero),
            [t] => Ok(t.coefficient == 1),
            _ => Ok(false),
        }
    }

    /// Writes a positive `d` uniquely as `gamma + r` with `gamma` a limit
    /// ordinal or 1 and `r` finite.
    pub fn split_exponent(&self) -> Result<(Ordinal, u64), OrdinalError> {
        if self.is_zero() {
            return Err(OrdinalError::Zero);
        }
        match self.as_nat() {
            Some(n) => Ok((Ordinal::one(), n - 1)),
            None => Ok((self.without_finite_part(), self.finite_part())),
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then(a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        self.checked_add(rhs).expect("ordinal coefficient overflow")
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

impl Mul for &Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: &Ordinal) -> Ordinal {
        self.checked_mul(rhs).expect("ordinal coefficient overflow")
    }
}

impl Mul for Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: Ordinal) -> Ordinal {
        &self * &rhs
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            if t.exponent == Ordinal::one() {
                f.write_str("w")?;
            } else {
                write!(f, "w^({})", t.exponent)?;
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = ParseOrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare() {
        assert_eq!(Ordinal::zero().cmp(&Ordinal::omega()), Ordering::Less);
        assert_eq!(o("w+1").cmp(&o("w")), Ordering::Greater);
        assert_eq!(o("w^3*2+w").cmp(&o("w^3*2+w")), Ordering::Equal);
        assert!(o("w^(w)") > o("w^100*7+3"));
        assert!(o("w^(w+1)") > o("w^(w)*9"));
    }

    #[test]
    fn addition() {
        assert_eq!(o("1") + o("w"), o("w"));
        assert_eq!(o("w") + o("w^2"), o("w^2"));
        assert_eq!(o("w^2*3") + o("w^2+w"), o("w^2*4+w"));
        assert_eq!(o("w+1") + o("w"), o("w*2"));
        assert_eq!(o("w") + o("1"), o("w+1"));
        assert_eq!(o("w^2+w+5") + Ordinal::zero(), o("w^2+w+5"));
    }

    #[test]
    fn multiplication() {
        assert_eq!(o("w") * Ordinal::zero(), Ordinal::zero());
        assert_eq!(o("w^2") * o("w"), o("w^3"));
        assert_eq!(o("2") * o("w"), o("w"));
        assert_eq!(o("w") * o("2"), o("w*2"));
        assert_eq!(o("w+1") * o("2"), o("w*2+1"));
        assert_eq!(o("w+1") * o("w"), o("w^2"));
        assert_eq!(o("w+1") * o("w+1"), o("w^2+w+1"));
        assert_eq!(o("3") * o("4"), o("12"));
    }

    #[test]
    fn exponentiation() {
        let w = Ordinal::omega();
        assert_eq!(w.pow(&Ordinal::zero()).unwrap(), Ordinal::one());
        assert_eq!(w.pow(&w).unwrap(), o("w^(w)"));
        assert_eq!(o("2").pow(&w).unwrap(), w);
        assert_eq!(o("2").pow(&o("w+3")).unwrap(), o("w*8"));
        assert_eq!(o("2").pow(&o("w*2")).unwrap(), o("w^2"));
        assert_eq!(o("2").pow(&o("w^2")).unwrap(), o("w^(w)"));
        assert_eq!(o("w+1").pow(&o("2")).unwrap(), o("w^2+w+1"));
        assert_eq!(o("w+1").pow(&w).unwrap(), o("w^(w)"));
        assert_eq!(o("w^2").pow(&o("w+1")).unwrap(), o("w^(w+2)"));
        assert_eq!(Ordinal::zero().pow(&w).unwrap(), Ordinal::zero());
        assert_eq!(Ordinal::one().pow(&o("w^(w)")).unwrap(), Ordinal::one());
        assert_eq!(o("3").pow(&o("4")).unwrap(), o("81"));
    }

    /// Finite exponents against repeated multiplication; limit exponents
    /// against suprema: for finite `a ≥ 2` the powers `a^(λ+n) = a^λ·a^n`
    /// are cofinal in `a^λ·ω`.
    #[test]
    fn pow_against_products_and_suprema() {
        let bases = ["2", "3", "w", "w+1", "w*2+5", "w^2*3+w", "w^(w)+1"];
        for a in bases.map(o) {
            let mut product = Ordinal::one();
            for n in 0..5u64 {
                assert_eq!(a.pow(&Ordinal::nat(n)).unwrap(), product, "{a}^{n}");
                product = &product * &a;
            }
        }
        for a in 2..6u64 {
            let a = Ordinal::nat(a);
            for lambda in ["0", "w", "w*3", "w^2", "w^(w)"].map(o) {
                let base = a.pow(&lambda).unwrap();
                let sup = &base * &Ordinal::omega();
                let limit = &lambda + &Ordinal::omega();
                assert_eq!(a.pow(&limit).unwrap(), sup, "{a}^({limit})");
                for n in 0..20 {
                    assert!(a.pow(&(&lambda + &Ordinal::nat(n))).unwrap() < sup);
                }
            }
        }
    }

    #[test]
    fn pow_overflow_is_reported() {
        assert_eq!(o("2").pow(&o("64")), Err(OrdinalError::Overflow));
        assert_eq!(o("2").pow(&o("w+64")), Err(OrdinalError::Overflow));
    }

    #[test]
    fn indecomposable() {
        assert_eq!(o("w^2").is_indecomposable(), Ok(true));
        assert_eq!(o("w^2+w").is_indecomposable(), Ok(false));
        assert_eq!(o("3").is_indecomposable(), Ok(false));
        assert_eq!(o("1").is_indecomposable(), Ok(true));
        assert_eq!(o("w*2").is_indecomposable(), Ok(false));
        assert_eq!(Ordinal::zero().is_indecomposable(), Err(OrdinalError::Zero));
    }

    #[test]
    fn split() {
        assert_eq!(o("5").split_exponent(), Ok((o("1"), 4)));
        assert_eq!(o("1").split_exponent(), Ok((o("1"), 0)));
        assert_eq!(o("w").split_exponent(), Ok((o("w"), 0)));
        assert_eq!(o("w*2+3").split_exponent(), Ok((o("w*2"), 3)));
        assert_eq!(Ordinal::zero().split_exponent(), Err(OrdinalError::Zero));
    }

    #[test]
    fn left_subtraction() {
        assert_eq!(o("w*2+3").left_sub(&o("w")), o("w+3"));
        assert_eq!(o("w*2+3").left_sub(&o("5")), o("w*2+3"));
        assert_eq!(o("w^2").left_sub(&o("w*7+1")), o("w^2"));
        assert_eq!(o("w^2+w").left_sub(&o("w^2+w")), Ordinal::zero());
    }

    #[test]
    fn from_terms_rejects_non_canonical() {
        assert!(Ordinal::from_terms([(o("1"), 1), (o("2"), 1)]).is_err());
        assert!(Ordinal::from_terms([(o("1"), 0)]).is_err());
        assert_eq!(
            Ordinal::from_terms([(o("2"), 3), (o("0"), 1)]).unwrap(),
            o("w^2*3+1")
        );
    }

    #[test]
    fn classification_helpers() {
        assert!(o("w*2").is_limit());
        assert!(o("w+1").is_successor());
        assert!(!Ordinal::zero().is_limit());
        assert_eq!(o("w^3+w+4").without_finite_part(), o("w^3+w"));
        assert_eq!(o("w^3*2+w").coefficient_of(&o("3")), 2);
    }
}
