//! Laurent polynomials in `q^{1/2}` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Z[q^{±1/2}]`, stored as a map from half-exponent to coefficient.
///
/// The key `k` stands for `q^{k/2}`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QScalar {
    terms: BTreeMap<i64, i64>,
}

impl QScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * q^{half_exp/2}`.
    pub fn monomial(coeff: i64, half_exp: i64) -> Self {
        let mut s = Self::zero();
        if coeff != 0 {
            s.terms.insert(half_exp, coeff);
        }
        s
    }

    /// `q^{half_exp/2}`.
    pub fn q_half(half_exp: i64) -> Self {
        Self::monomial(1, half_exp)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a scalar from `(half_exp, coeff)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut s = Self::zero();
        for (e, c) in pairs {
            s.add_term(e, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn add_term(&mut self, half_exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(half_exp).or_insert(0);
        *entry = entry.checked_add(coeff).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&half_exp);
        }
    }

    /// Iterates `(half_exp, coeff)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `q^{half_exp/2}`.
    pub fn shift(&self, half_exp: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + half_exp, c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, &x)| (e, x.checked_mul(c).expect("coefficient overflow")))
                .collect(),
        }
    }

    /// Substitutes `q^{1/2} -> q^{m/2}` termwise (exponent scaling by `m`).
    pub fn scale_exponents(&self, m: i64) -> Self {
        Self::from_pairs(self.terms.iter().map(|(&e, &c)| (e * m, c)))
    }

    /// Bar involution `q^{1/2} -> q^{-1/2}`.
    pub fn bar(&self) -> Self {
        self.scale_exponents(-1)
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// The single term `(half_exp, coeff)` if this is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, &c)| (e, c))
        } else {
            None
        }
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of `q^{half_exp/2}`.
    pub fn coeff(&self, half_exp: i64) -> i64 {
        self.terms.get(&half_exp).copied().unwrap_or(0)
    }

    /// Returns `self^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Quantum integer style helper: `q^{a/2} + q^{-a/2}`.
    pub fn sym(a: i64) -> Self {
        Self::from_pairs([(a, 1), (-a, 1)])
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.terms {
            if !first {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            if e == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if a != 1 {
                write!(f, "{a}*")?;
            }
            if e % 2 == 0 {
                write!(f, "q^{}", e / 2)?;
            } else {
                write!(f, "q^({}/2)", e)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QScalar {
    type Output = QScalar;
    fn add(mut self, rhs: QScalar) -> QScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QScalar {
    type Output = QScalar;
    fn sub(mut self, rhs: QScalar) -> QScalar {
        self -= &rhs;
        self
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.scale(-1)
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.scale(-1)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        let mut out = QScalar::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl Mul for QScalar {
    type Output = QScalar;
    fn mul(self, rhs: QScalar) -> QScalar {
        &self * &rhs
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[i64; 2]> = self.terms.iter().map(|(&e, &c)| [e, c]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<[i64; 2]> = Vec::deserialize(d)?;
        Ok(QScalar::from_pairs(pairs.into_iter().map(|[e, c]| (e, c))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_arith() {
        let a = QScalar::from_pairs([(2, 1), (-2, 1)]);
        let b = &a * &a;
        assert_eq!(b, QScalar::from_pairs([(4, 1), (0, 2), (-4, 1)]));
        assert_eq!(format!("{}", QScalar::from_pairs([(1, -2), (0, 3)])), "3 - 2*q^(1/2)");
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn v_substitution_scales_by_minus_four() {
        // v = q^{-2}: v^1 has half exponent -4.
        let v = QScalar::q_half(1).scale_exponents(-4);
        assert_eq!(v, QScalar::q_half(-4));
    }
}
