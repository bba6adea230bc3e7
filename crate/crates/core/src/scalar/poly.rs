//! Bivariate polynomials in `s` and `h` with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::polyh::UniPoly;

/// Exponent pair `s^s * h^h`.
///
/// Ordered degree-lexicographically with `s` before `h`: total degree first,
/// then the `s` exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub s: u32,
    pub h: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { s: 0, h: 0 };

    pub fn new(s: u32, h: u32) -> Self {
        Monomial { s, h }
    }

    pub fn degree(&self) -> u32 {
        self.s + self.h
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.s <= other.s && self.h <= other.h
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.s + other.s, self.h + other.h)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.s - other.s, self.h - other.h)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.s.cmp(&other.s))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `s`, `h`. No zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn s() -> Self {
        Poly::term(BigRational::one(), Monomial::new(1, 0))
    }

    pub fn h() -> Self {
        Poly::term(BigRational::one(), Monomial::new(0, 1))
    }

    /// Builds a polynomial from `(coefficient, s exponent, h exponent)` triples.
    pub fn from_terms<I: IntoIterator<Item = (i64, u32, u32)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (c, s, h) in it {
            p.add_term(rat(c), Monomial::new(s, h));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::ONE)
                .is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::ONE)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn s_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.s).max().unwrap_or(0)
    }

    pub fn h_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.h).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, c: BigRational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), *m);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(-c.clone(), *m);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn mul_term(&self, c: &BigRational, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        if d.num_terms() == 1 {
            if self.terms.keys().all(|m| dm.divides(m)) {
                let inv = dc.recip();
                return Some(Poly {
                    terms: self
                        .terms
                        .iter()
                        .map(|(m, c)| (m.div(dm), c * &inv))
                        .collect(),
                });
            }
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.div(dm);
            let qc = rc / dc;
            rem = rem.sub(&d.mul_term(&qc, &qm));
            quot.add_term(qc, qm);
        }
        Some(quot)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |acc, m| Monomial::new(acc.s.min(m.s), acc.h.min(m.h)))
    }

    pub fn shift_down(&self, m: &Monomial) -> Poly {
        if *m == Monomial::ONE {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.div(m), c.clone())).collect(),
        }
    }

    /// Substitutes `s := 1`, leaving a polynomial in `h`.
    pub fn at_s_one(&self) -> UniPoly {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (m, c) in &self.terms {
            let k = m.h as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            coeffs[k] += c;
        }
        UniPoly::from_vec(coeffs)
    }

    /// Substitutes `h := 0`.
    pub fn at_h_zero(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.h == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Divides by `(s - 1)` via synthetic division in `s` over `Q[h]`.
    /// Returns `None` when `s = 1` is not a root.
    pub fn div_s_minus_one(&self) -> Option<Poly> {
        if !self.at_s_one().is_zero() {
            return None;
        }
        // Group by h exponent: each slice is a univariate polynomial in s.
        let mut by_h: BTreeMap<u32, Vec<BigRational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = by_h.entry(m.h).or_default();
            let k = m.s as usize;
            if v.len() <= k {
                v.resize(k + 1, BigRational::zero());
            }
            v[k] = c.clone();
        }
        let mut out = Poly::zero();
        for (hexp, coeffs) in by_h {
            // coefficients a_0..a_d; quotient b_{d-1}..b_0 with b_{k-1} = a_k + b_k
            let d = coeffs.len() - 1;
            let mut carry = BigRational::zero();
            for k in (1..=d).rev() {
                carry += &coeffs[k];
                out.add_term(carry.clone(), Monomial::new(k as u32 - 1, hexp));
            }
        }
        Some(out)
    }

    pub fn is_h_free(&self) -> bool {
        self.terms.keys().all(|m| m.h == 0)
    }

    pub fn is_s_free(&self) -> bool {
        self.terms.keys().all(|m| m.s == 0)
    }

    /// Evaluates at rational points.
    pub fn eval(&self, s: &BigRational, h: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            acc += c * num_traits::pow(s.clone(), m.s as usize) * num_traits::pow(h.clone(), m.h as usize);
        }
        acc
    }
}

pub(crate) fn fmt_rat_coeff(
    f: &mut fmt::Formatter<'_>,
    c: &BigRational,
    first: bool,
    has_monomial: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if !has_monomial {
        return write!(f, "{a}");
    }
    if !a.is_one() {
        write!(f, "{a}*")?;
    }
    Ok(())
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut parts = Vec::new();
    match m.s {
        0 => {}
        1 => parts.push("s".to_string()),
        k => parts.push(format!("s^{k}")),
    }
    match m.h {
        0 => {}
        1 => parts.push("h".to_string()),
        k => parts.push(format!("h^{k}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let has_mono = *m != Monomial::ONE;
            fmt_rat_coeff(f, c, i == 0, has_mono)?;
            if has_mono {
                fmt_monomial(f, m)?;
            }
        }
        Ok(())
    }
}
