//! Exact scalars for the deformation parameters.
//!
//! [`ScalarQH`] is an element of `Q(s, h)(sqrt2)` where `s` is the square root
//! of the standard deformation parameter (`q = s^2`) and `h` the Jordanian one.
//! Half-integer powers of `q` are therefore Laurent monomials in `s`.
//! [`PolyH`] is the polynomial-in-`h` image of the `q -> 1` limit.
//!
//! There is no multivariate GCD. Results are kept small by removing monomial
//! content and trying exact division by the denominator and by the few
//! cyclotomic factors in `s` that the constructions produce; equality is
//! decided by cross-multiplication.

mod frac;
mod poly;
mod polyh;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

pub use frac::Frac;
pub use poly::{Monomial, Poly};
pub use polyh::{substitute_h_zero, PolyH, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = 1 (after cancelling {order_hint} factor(s) of s - 1)")]
    Pole { order_hint: usize },
    #[error("limit at q = 1 is not polynomial in h: residual denominator {0}")]
    NonPolynomial(String),
}

/// Minimal ring interface shared by [`ScalarQH`] and [`PolyH`], so dense
/// matrices can be generic over their entries.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_i64(n: i64) -> Self;
}

impl Ring for PolyH {
    fn zero() -> Self {
        PolyH::zero()
    }
    fn one() -> Self {
        PolyH::one()
    }
    fn is_zero(&self) -> bool {
        PolyH::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn from_i64(n: i64) -> Self {
        PolyH::int(n)
    }
}

/// Exact element of `Q(s, h)` extended by `sqrt2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarQH {
    rat: Frac,
    rad: Option<Frac>,
}

impl ScalarQH {
    pub fn zero() -> Self {
        ScalarQH::from_frac(Frac::zero())
    }

    pub fn one() -> Self {
        ScalarQH::from_frac(Frac::one())
    }

    pub fn int(n: i64) -> Self {
        ScalarQH::from_poly(Poly::from_terms([(n, 0, 0)]))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ScalarQH::from_poly(Poly::constant(BigRational::new(n.into(), d.into())))
    }

    pub fn from_frac(rat: Frac) -> Self {
        ScalarQH { rat, rad: None }
    }

    pub fn from_poly(p: Poly) -> Self {
        ScalarQH::from_frac(Frac::from_poly(p))
    }

    pub fn from_parts(rat: Frac, rad: Frac) -> Self {
        let rad = if rad.is_zero() { None } else { Some(rad) };
        ScalarQH { rat, rad }
    }

    pub fn s() -> Self {
        ScalarQH::from_poly(Poly::s())
    }

    pub fn h() -> Self {
        ScalarQH::from_poly(Poly::h())
    }

    pub fn sqrt2() -> Self {
        ScalarQH::from_parts(Frac::zero(), Frac::one())
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i32) -> Self {
        let m = Poly::term(BigRational::one(), Monomial::new(k.unsigned_abs(), 0));
        if k >= 0 {
            ScalarQH::from_poly(m)
        } else {
            ScalarQH::from_frac(Frac::new(Poly::one(), m).expect("nonzero monomial"))
        }
    }

    /// `q = s^2`.
    pub fn q() -> Self {
        ScalarQH::s_pow(2)
    }

    pub fn q_inv() -> Self {
        ScalarQH::s_pow(-2)
    }

    /// Contraction parameter `h / (q - 1) = h / (s^2 - 1)`.
    pub fn eta() -> Self {
        let den = Poly::from_terms([(1, 2, 0), (-1, 0, 0)]);
        ScalarQH::from_frac(Frac::new(Poly::h(), den).expect("nonzero"))
    }

    pub fn from_polyh(p: &PolyH) -> Self {
        ScalarQH::from_parts(
            Frac::from_poly(p.rat.to_poly()),
            Frac::from_poly(p.rad.to_poly()),
        )
    }

    pub fn rational_part(&self) -> &Frac {
        &self.rat
    }

    pub fn radical_part(&self) -> Option<&Frac> {
        self.rad.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.rad.is_none() && self.rat.is_polynomial() && self.rat.num().is_one()
    }

    /// Size measure used for pivot selection.
    pub fn complexity(&self) -> usize {
        let part = |f: &Frac| f.num().num_terms() + f.den().num_terms();
        part(&self.rat) + self.rad.as_ref().map_or(0, part)
    }

    fn rad_or_zero(&self) -> Frac {
        self.rad.clone().unwrap_or_else(Frac::zero)
    }

    pub fn add(&self, o: &ScalarQH) -> ScalarQH {
        let rad = match (&self.rad, &o.rad) {
            (None, None) => return ScalarQH::from_frac(self.rat.add(&o.rat)),
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (Some(a), Some(b)) => a.add(b),
        };
        ScalarQH::from_parts(self.rat.add(&o.rat), rad)
    }

    pub fn neg(&self) -> ScalarQH {
        ScalarQH {
            rat: self.rat.neg(),
            rad: self.rad.as_ref().map(Frac::neg),
        }
    }

    pub fn sub(&self, o: &ScalarQH) -> ScalarQH {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ScalarQH) -> ScalarQH {
        if self.rad.is_none() && o.rad.is_none() {
            return ScalarQH::from_frac(self.rat.mul(&o.rat));
        }
        let (a, b) = (&self.rat, self.rad_or_zero());
        let (c, d) = (&o.rat, o.rad_or_zero());
        let two = BigRational::from_integer(2.into());
        let rat = a.mul(c).add(&b.mul(&d).scale(&two));
        let rad = a.mul(&d).add(&b.mul(c));
        ScalarQH::from_parts(rat, rad)
    }

    pub fn recip(&self) -> Result<ScalarQH, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match &self.rad {
            None => Ok(ScalarQH::from_frac(self.rat.recip()?)),
            Some(b) => {
                // 1/(a + b r) = (a - b r)/(a^2 - 2 b^2); the norm is nonzero
                // because sqrt2 is irrational over Q(s, h).
                let two = BigRational::from_integer(2.into());
                let norm = self.rat.mul(&self.rat).sub(&b.mul(b).scale(&two));
                let inv = norm.recip()?;
                Ok(ScalarQH::from_parts(self.rat.mul(&inv), b.neg().mul(&inv)))
            }
        }
    }

    pub fn div(&self, o: &ScalarQH) -> Result<ScalarQH, ScalarError> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, e: u32) -> ScalarQH {
        (0..e).fold(ScalarQH::one(), |acc, _| acc.mul(self))
    }

    /// Exact `q -> 1` limit, see [`limit_q_to_1`].
    pub fn limit_q_to_1(&self) -> Result<PolyH, ScalarError> {
        let rat = self.rat.limit_s_one()?;
        let rad = match &self.rad {
            Some(r) => r.limit_s_one()?,
            None => UniPoly::zero(),
        };
        Ok(PolyH::new(rat, rad))
    }

    pub fn at_h_zero(&self) -> Result<ScalarQH, ScalarError> {
        Ok(ScalarQH::from_parts(
            self.rat.at_h_zero()?,
            self.rad_or_zero().at_h_zero()?,
        ))
    }

    /// The value as a polynomial in `h`, when it is one.
    pub fn to_polyh(&self) -> Option<PolyH> {
        let rat = self.rat.to_unipoly()?;
        let rad = match &self.rad {
            Some(r) => r.to_unipoly()?,
            None => UniPoly::zero(),
        };
        Some(PolyH::new(rat, rad))
    }
}

/// Entrywise `q -> 1` limit.
///
/// Cancels common `(s - 1)` factors of numerator and denominator while both
/// vanish at `s = 1`, then evaluates. Fails with [`ScalarError::Pole`] when the
/// denominator still vanishes, and [`ScalarError::NonPolynomial`] when it
/// retains a dependence on `h`.
pub fn limit_q_to_1(a: &ScalarQH) -> Result<PolyH, ScalarError> {
    a.limit_q_to_1()
}

impl Ring for ScalarQH {
    fn zero() -> Self {
        ScalarQH::zero()
    }
    fn one() -> Self {
        ScalarQH::one()
    }
    fn is_zero(&self) -> bool {
        ScalarQH::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn from_i64(n: i64) -> Self {
        ScalarQH::int(n)
    }
}

impl fmt::Display for ScalarQH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rad {
            None => write!(f, "{}", self.rat),
            Some(r) if self.rat.is_zero() => write!(f, "sqrt2*({r})"),
            Some(r) => write!(f, "{} + sqrt2*({r})", self.rat),
        }
    }
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                <$t>::add(self, o)
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                <$t>::sub(self, o)
            }
        }
        impl Mul for &$t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                <$t>::mul(self, o)
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::neg(self)
            }
        }
    };
}

forward_ops!(ScalarQH);
forward_ops!(PolyH);

impl Div for &ScalarQH {
    type Output = Result<ScalarQH, ScalarError>;
    fn div(self, o: &ScalarQH) -> Self::Output {
        ScalarQH::div(self, o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(t: &[(i64, u32, u32)]) -> ScalarQH {
        ScalarQH::from_poly(Poly::from_terms(t.iter().copied()))
    }

    fn frac(n: &[(i64, u32, u32)], d: &[(i64, u32, u32)]) -> ScalarQH {
        ScalarQH::from_frac(
            Frac::new(
                Poly::from_terms(n.iter().copied()),
                Poly::from_terms(d.iter().copied()),
            )
            .unwrap(),
        )
    }

    fn hpoly(c: &[i64]) -> PolyH {
        PolyH::from(UniPoly::from_i64(c))
    }

    #[test]
    fn product_of_linear_factors() {
        let a = p(&[(1, 1, 0), (-1, 0, 0)]);
        let b = p(&[(1, 1, 0), (1, 0, 0)]);
        assert_eq!(&a * &b, p(&[(1, 2, 0), (-1, 0, 0)]));
    }

    #[test]
    fn q_minus_q_inverse_additive_identity() {
        let d = &ScalarQH::q() - &ScalarQH::q_inv();
        assert_eq!(d, frac(&[(1, 4, 0), (-1, 0, 0)], &[(1, 2, 0)]));
        assert_eq!(&d + &ScalarQH::zero(), d);
    }

    #[test]
    fn eta_cancellation() {
        let e = &ScalarQH::eta() * &p(&[(1, 2, 0), (-1, 0, 0)]);
        assert_eq!(e, ScalarQH::h());
        assert!(e.rational_part().is_polynomial());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            ScalarQH::one().div(&ScalarQH::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn limit_examples() {
        let a = frac(&[(1, 2, 0), (-1, 0, 0)], &[(1, 1, 0), (-1, 0, 0)]);
        assert_eq!(limit_q_to_1(&a), Ok(PolyH::int(2)));
        assert!(matches!(
            limit_q_to_1(&ScalarQH::eta()),
            Err(ScalarError::Pole { .. })
        ));
        // h (s - 1) / (s^2 - 1) built without pre-simplification
        let b = &ScalarQH::eta() * &p(&[(1, 1, 0), (-1, 0, 0)]);
        assert_eq!(limit_q_to_1(&b), Ok(PolyH::ratio(1, 2).mul(&PolyH::h())));
    }

    #[test]
    fn limit_rejects_h_in_denominator() {
        let a = frac(&[(1, 0, 0)], &[(1, 0, 1), (1, 0, 0)]);
        assert!(matches!(
            limit_q_to_1(&a),
            Err(ScalarError::NonPolynomial(_))
        ));
    }

    #[test]
    fn rendering_matches_wire_format() {
        let n = Poly::term(BigRational::new((-1).into(), 2.into()), Monomial::new(3, 1))
            .add(&Poly::s());
        let d = Poly::from_terms([(1, 2, 0), (-1, 0, 0)]);
        let x = ScalarQH::from_frac(Frac::new(n, d).unwrap());
        assert_eq!(x.to_string(), "(-1/2*s^3*h + s)/(s^2 - 1)");
        assert_eq!(ScalarQH::eta().to_string(), "h/(s^2 - 1)");
        assert_eq!(ScalarQH::s_pow(-1).to_string(), "1/s");
        let r = &ScalarQH::sqrt2() * &ScalarQH::h();
        assert_eq!(r.add(&ScalarQH::one()).to_string(), "1 + sqrt2*(h)");
    }

    #[test]
    fn radical_inverse() {
        let x = &ScalarQH::one() + &ScalarQH::sqrt2();
        let y = x.recip().unwrap();
        assert_eq!(&x * &y, ScalarQH::one());
        assert_eq!(&ScalarQH::sqrt2() * &ScalarQH::sqrt2(), ScalarQH::int(2));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-3i64..=3, 0u32..3, 0u32..2), 1..4).prop_map(Poly::from_terms)
    }

    fn arb_scalar() -> impl Strategy<Value = ScalarQH> {
        (arb_poly(), arb_poly(), any::<bool>()).prop_map(|(n, d, with_rad)| {
            let d = if d.is_zero() { Poly::one() } else { d };
            let f = Frac::new(n.clone(), d).unwrap();
            if with_rad {
                ScalarQH::from_parts(f, Frac::from_poly(n))
            } else {
                ScalarQH::from_frac(f)
            }
        })
    }

    fn arb_polyh() -> impl Strategy<Value = PolyH> {
        prop::collection::vec(-3i64..=3, 0..4).prop_map(|c| hpoly(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), ScalarQH::one());
            }
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn limit_is_evaluation_on_polynomials(n in arb_poly()) {
            let x = ScalarQH::from_poly(n.clone());
            prop_assert_eq!(limit_q_to_1(&x).unwrap(), PolyH::from(n.at_s_one()));
        }

        #[test]
        fn limit_is_a_ring_map(
            a in arb_polyh(), b in arb_polyh(), k in 0u32..3, j in 0u32..3,
        ) {
            // inputs with removable singularities: a (s^2-1)^k / (s-1)^k
            let lift = |p: &PolyH, e: u32| {
                let up = Poly::from_terms([(1, 2, 0), (-1, 0, 0)]).pow(e);
                let down = Poly::from_terms([(1, 1, 0), (-1, 0, 0)]).pow(e);
                ScalarQH::from_frac(Frac::new(p.rat.to_poly().mul(&up), down).unwrap())
            };
            let x = lift(&a, k);
            let y = lift(&b, j);
            let lx = limit_q_to_1(&x).unwrap();
            let ly = limit_q_to_1(&y).unwrap();
            prop_assert_eq!(limit_q_to_1(&(&x + &y)).unwrap(), lx.add(&ly));
            prop_assert_eq!(limit_q_to_1(&(&x * &y)).unwrap(), lx.mul(&ly));
        }
    }
}
