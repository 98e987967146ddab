//! Based quantum tori over skew-symmetric lattices.
//!
//! A torus element is a finite sum `Σ c_λ B_λ` with `c_λ ∈ Z[q^{±1/2}]` and
//! product `B_λ B_μ = q^{ω(λ,μ)/2} B_{λ+μ}`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::QScalar;

/// A lattice `Z^rank` with labelled basis and an integral skew-symmetric form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewLattice {
    pub labels: Vec<String>,
    pub form: Vec<Vec<i64>>,
}

impl SkewLattice {
    pub fn new(labels: Vec<String>, form: Vec<Vec<i64>>) -> Result<Self> {
        let n = labels.len();
        if form.len() != n || form.iter().any(|r| r.len() != n) {
            return Err(Error::Input("form dimensions do not match labels".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if form[i][j] != -form[j][i] {
                    return Err(Error::Input(format!("form is not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { labels, form })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// `ω(λ, μ)`.
    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.form[i];
            for (j, &bj) in b.iter().enumerate() {
                s += ai * row[j] * bj;
            }
        }
        s
    }

    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn zero_vector(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }
}

/// A sparse element of a based quantum torus.
#[derive(Clone, PartialEq, Eq)]
pub struct TorusElement {
    lattice: Arc<SkewLattice>,
    terms: BTreeMap<Vec<i64>, QScalar>,
}

impl TorusElement {
    pub fn zero(lattice: &Arc<SkewLattice>) -> Self {
        Self { lattice: lattice.clone(), terms: BTreeMap::new() }
    }

    pub fn one(lattice: &Arc<SkewLattice>) -> Self {
        Self::monomial(lattice, lattice.zero_vector())
    }

    /// `B_λ`.
    pub fn monomial(lattice: &Arc<SkewLattice>, exps: Vec<i64>) -> Self {
        Self::term(lattice, exps, QScalar::one())
    }

    /// `c · B_λ`.
    pub fn term(lattice: &Arc<SkewLattice>, exps: Vec<i64>, c: QScalar) -> Self {
        assert_eq!(exps.len(), lattice.rank(), "lattice vector has wrong length");
        let mut t = Self::zero(lattice);
        if !c.is_zero() {
            t.terms.insert(exps, c);
        }
        t
    }

    pub fn scalar(lattice: &Arc<SkewLattice>, c: QScalar) -> Self {
        Self::term(lattice, lattice.zero_vector(), c)
    }

    pub fn lattice(&self) -> &Arc<SkewLattice> {
        &self.lattice
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &QScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i64]) -> QScalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.lattice, &other.lattice) || *self.lattice == *other.lattice {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    /// Bilinear product; errors when the lattices differ.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out: BTreeMap<Vec<i64>, QScalar> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let w = self.lattice.pair(a, b);
                let key: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let c = (ca * cb).shift(w);
                let e = out.entry(key).or_default();
                *e += &c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(Self { lattice: self.lattice.clone(), terms: out })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero(&self.lattice);
        for (k, v) in &self.terms {
            let p = v * c;
            if !p.is_zero() {
                out.terms.insert(k.clone(), p);
            }
        }
        out
    }

    /// Multiplies every coefficient by `q^{h/2}`.
    pub fn shift(&self, h: i64) -> Self {
        Self {
            lattice: self.lattice.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.shift(h))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.lattice);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single term `c·B_λ` with `c = ±q^{k/2}`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        let (e, coeff) = c.as_monomial()?;
        if coeff.abs() != 1 {
            return None;
        }
        let neg: Vec<i64> = k.iter().map(|x| -x).collect();
        Some(Self::term(&self.lattice, neg, QScalar::monomial(coeff, -e)))
    }

    /// Reinterprets the same coefficients and exponents over another lattice of equal rank.
    pub fn with_lattice(&self, lattice: &Arc<SkewLattice>) -> Self {
        assert_eq!(lattice.rank(), self.lattice.rank());
        Self { lattice: lattice.clone(), terms: self.terms.clone() }
    }

    /// Applies a map on exponents and coefficients termwise, summing collisions.
    pub fn map_terms<F>(&self, lattice: &Arc<SkewLattice>, mut f: F) -> Self
    where
        F: FnMut(&[i64], &QScalar) -> (Vec<i64>, QScalar),
    {
        let mut out = Self::zero(lattice);
        for (k, v) in &self.terms {
            let (k2, v2) = f(k, v);
            out.add_term(k2, &v2);
        }
        out
    }

    /// The exponent of the single term, if this is `B_λ` with coefficient one.
    pub fn as_unit_monomial(&self) -> Option<&Vec<i64>> {
        if self.terms.len() == 1 {
            let (k, v) = self.terms.iter().next()?;
            if v.is_one() {
                return Some(k);
            }
        }
        None
    }

    /// True when every coefficient has nonnegative integer coefficients.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(QScalar::is_nonnegative)
    }
}

/// `B_{λ₁+⋯+λ_k}`: the Weyl normalized product of monomials.
pub fn weyl_product(lattice: &Arc<SkewLattice>, monomials: &[Vec<i64>]) -> TorusElement {
    let mut s = lattice.zero_vector();
    for m in monomials {
        assert_eq!(m.len(), s.len(), "lattice vector has wrong length");
        for (a, b) in s.iter_mut().zip(m) {
            *a += b;
        }
    }
    TorusElement::monomial(lattice, s)
}

/// Chebyshev polynomial kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChebyshevKind {
    /// `T_0 = 2, T_1 = x`.
    First,
    /// `S_0 = 1, S_1 = x`.
    Second,
}

/// Integer coefficients of a Chebyshev polynomial, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChebyshevPoly {
    pub kind: ChebyshevKind,
    pub degree: usize,
    pub coeffs: Vec<i64>,
}

impl ChebyshevPoly {
    pub fn new(kind: ChebyshevKind, degree: usize) -> Self {
        let p0: Vec<i64> = match kind {
            ChebyshevKind::First => vec![2],
            ChebyshevKind::Second => vec![1],
        };
        let p1 = vec![0, 1];
        if degree == 0 {
            return Self { kind, degree, coeffs: p0 };
        }
        let (mut a, mut b) = (p0, p1);
        for _ in 1..degree {
            let mut c = vec![0; b.len() + 1];
            for (i, &x) in b.iter().enumerate() {
                c[i + 1] += x;
            }
            for (i, &x) in a.iter().enumerate() {
                c[i] -= x;
            }
            a = b;
            b = c;
        }
        Self { kind, degree, coeffs: b }
    }

    /// Evaluates the polynomial at a torus element.
    pub fn eval(&self, x: &TorusElement) -> TorusElement {
        let lat = x.lattice().clone();
        let mut acc = TorusElement::zero(&lat);
        for &c in self.coeffs.iter().rev() {
            acc = &acc * x;
            acc = &acc + &TorusElement::scalar(&lat, QScalar::constant(c));
        }
        acc
    }
}

/// Evaluates `T_n(x)` or `S_n(x)` through the three-term recurrence.
pub fn chebyshev_eval(kind: ChebyshevKind, n: i64, x: &TorusElement) -> Result<TorusElement> {
    if n < 0 {
        return Err(Error::Input(format!("negative Chebyshev degree {n}")));
    }
    let lat = x.lattice().clone();
    let p0 = match kind {
        ChebyshevKind::First => TorusElement::scalar(&lat, QScalar::constant(2)),
        ChebyshevKind::Second => TorusElement::one(&lat),
    };
    if n == 0 {
        return Ok(p0);
    }
    let (mut a, mut b) = (p0, x.clone());
    for _ in 1..n {
        let c = &(x * &b) - &a;
        a = b;
        b = c;
    }
    Ok(b)
}

/// Finds the exponent `m` with every term equal to `m` plus a cone element, and rescales
/// so that the coefficient at `m` is exactly one.
///
/// `cone` maps a difference of exponents to `true` when it lies in the positive cone.
pub fn pointed_normalize_by<F>(x: &TorusElement, cone: F) -> Result<(TorusElement, Vec<i64>)>
where
    F: Fn(&[i64]) -> bool,
{
    if x.is_zero() {
        return Err(Error::NotPointed("zero element".into()));
    }
    let keys: Vec<&Vec<i64>> = x.terms.keys().collect();
    let mut found = None;
    for cand in &keys {
        let ok = keys.iter().all(|k| {
            let d: Vec<i64> = k.iter().zip(cand.iter()).map(|(a, b)| a - b).collect();
            cone(&d)
        });
        if ok {
            found = Some((*cand).clone());
            break;
        }
    }
    let m = found.ok_or_else(|| Error::NotPointed("no lowest term".into()))?;
    let c = x.coeff(&m);
    let (e, coeff) = c
        .as_monomial()
        .ok_or_else(|| Error::NotPointed(format!("lowest coefficient {c} is not a q-power")))?;
    if coeff != 1 {
        return Err(Error::NotPointed(format!("lowest coefficient {c} is not a q-power")));
    }
    Ok((x.shift(-e), m))
}

/// Pointed normalization with respect to the basis directions `positive`.
pub fn pointed_normalize(x: &TorusElement, positive: &[usize]) -> Result<(TorusElement, Vec<i64>)> {
    pointed_normalize_by(x, |d| {
        d.iter().enumerate().all(|(i, &v)| v == 0 || (v > 0 && positive.contains(&i)))
    })
}

impl<'a> Mul<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        self.try_mul(rhs).expect("lattice mismatch")
    }
}

impl<'a> Add<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn add(self, rhs: &TorusElement) -> TorusElement {
        self.try_add(rhs).expect("lattice mismatch")
    }
}

impl<'a> Sub<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        self.try_add(&-rhs).expect("lattice mismatch")
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        self.scale(&QScalar::constant(-1))
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({v})B{k:?}")?;
        }
        Ok(())
    }
}

/// JSON form of a torus element.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TorusJson {
    pub lattice: SkewLattice,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coords: Vec<i64>,
    pub scalar: QScalar,
}

impl TorusElement {
    pub fn to_json(&self) -> TorusJson {
        TorusJson {
            lattice: (*self.lattice).clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| TermJson { coords: k.clone(), scalar: v.clone() })
                .collect(),
        }
    }

    pub fn from_json(j: &TorusJson) -> Result<Self> {
        let lat = Arc::new(SkewLattice::new(j.lattice.labels.clone(), j.lattice.form.clone())?);
        let mut out = Self::zero(&lat);
        for t in &j.terms {
            if t.coords.len() != lat.rank() {
                return Err(Error::Input("term length does not match lattice rank".into()));
            }
            out.add_term(t.coords.clone(), &t.scalar);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat2(w: i64) -> Arc<SkewLattice> {
        Arc::new(SkewLattice::new(vec!["1".into(), "2".into()], vec![vec![0, w], vec![-w, 0]]).unwrap())
    }

    #[test]
    fn basic_product() {
        let l = lat2(1);
        let p = &TorusElement::monomial(&l, vec![1, 0]) * &TorusElement::monomial(&l, vec![0, 1]);
        assert_eq!(p, TorusElement::term(&l, vec![1, 1], QScalar::q_half(1)));
    }

    #[test]
    fn binomial_square() {
        let l = lat2(2);
        let x = &TorusElement::monomial(&l, vec![1, 0]) + &TorusElement::monomial(&l, vec![0, 1]);
        let sq = &x * &x;
        let mut want = TorusElement::monomial(&l, vec![2, 0]);
        want.add_term(vec![0, 2], &QScalar::one());
        want.add_term(vec![1, 1], &QScalar::from_pairs([(2, 1), (-2, 1)]));
        assert_eq!(sq, want);
    }

    #[test]
    fn chebyshev_coeffs() {
        assert_eq!(ChebyshevPoly::new(ChebyshevKind::First, 2).coeffs, vec![-2, 0, 1]);
        assert_eq!(ChebyshevPoly::new(ChebyshevKind::Second, 2).coeffs, vec![-1, 0, 1]);
        assert_eq!(ChebyshevPoly::new(ChebyshevKind::First, 3).coeffs, vec![0, -3, 0, 1]);
    }

    #[test]
    fn pointed_examples() {
        let l = lat2(1);
        let x = TorusElement::term(&l, vec![1, 2], QScalar::q_half(6));
        let (y, m) = pointed_normalize(&x, &[0]).unwrap();
        assert_eq!(m, vec![1, 2]);
        assert_eq!(y, TorusElement::monomial(&l, vec![1, 2]));
        let mut z = TorusElement::term(&l, vec![0, 0], QScalar::q_half(1));
        z.add_term(vec![1, 0], &QScalar::q_half(3));
        let (y, m) = pointed_normalize(&z, &[0]).unwrap();
        assert_eq!(m, vec![0, 0]);
        assert_eq!(y.coeff(&[1, 0]), QScalar::q_half(2));
        assert!(pointed_normalize(&z, &[1]).is_err());
    }
}
