//! Polynomials in `h` alone, the target of the `q -> 1` limit.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{fmt_rat_coeff, rat, Monomial, Poly};

/// Dense univariate polynomial in `h`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::from_vec(vec![c])
    }

    pub fn h() -> Self {
        UniPoly::from_vec(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_vec(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::from_vec(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_vec((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_vec((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> UniPoly {
        UniPoly::from_vec(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_vec(out)
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            p.add_term(c.clone(), Monomial::new(0, k as u32));
        }
        p
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            fmt_rat_coeff(f, c, first, k > 0)?;
            match k {
                0 => {}
                1 => write!(f, "h")?,
                _ => write!(f, "h^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Polynomial in `h` with an optional `sqrt(2)` part: `rat + rad * sqrt2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyH {
    pub rat: UniPoly,
    pub rad: UniPoly,
}

impl PolyH {
    pub fn zero() -> Self {
        PolyH::default()
    }

    pub fn one() -> Self {
        PolyH::from(UniPoly::one())
    }

    pub fn h() -> Self {
        PolyH::from(UniPoly::h())
    }

    pub fn int(n: i64) -> Self {
        PolyH::from(UniPoly::from_i64(&[n]))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        PolyH::from(UniPoly::constant(BigRational::new(n.into(), d.into())))
    }

    pub fn sqrt2() -> Self {
        PolyH {
            rat: UniPoly::zero(),
            rad: UniPoly::one(),
        }
    }

    /// `1/sqrt(2) = sqrt(2)/2`.
    pub fn inv_sqrt2() -> Self {
        PolyH {
            rat: UniPoly::zero(),
            rad: UniPoly::constant(BigRational::new(1.into(), 2.into())),
        }
    }

    pub fn new(rat: UniPoly, rad: UniPoly) -> Self {
        PolyH { rat, rad }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.rad.is_zero()
    }

    pub fn has_radical(&self) -> bool {
        !self.rad.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        match (self.rat.degree(), self.rad.degree()) {
            (None, d) | (d, None) => d,
            (Some(a), Some(b)) => Some(a.max(b)),
        }
    }

    pub fn add(&self, o: &PolyH) -> PolyH {
        PolyH::new(self.rat.add(&o.rat), self.rad.add(&o.rad))
    }

    pub fn sub(&self, o: &PolyH) -> PolyH {
        PolyH::new(self.rat.sub(&o.rat), self.rad.sub(&o.rad))
    }

    pub fn neg(&self) -> PolyH {
        PolyH::new(self.rat.neg(), self.rad.neg())
    }

    pub fn mul(&self, o: &PolyH) -> PolyH {
        if self.rad.is_zero() && o.rad.is_zero() {
            return PolyH::from(self.rat.mul(&o.rat));
        }
        let two = rat(2);
        let rat_part = self
            .rat
            .mul(&o.rat)
            .add(&self.rad.mul(&o.rad).scale(&two));
        let rad_part = self.rat.mul(&o.rad).add(&self.rad.mul(&o.rat));
        PolyH::new(rat_part, rad_part)
    }

    pub fn pow(&self, e: u32) -> PolyH {
        (0..e).fold(PolyH::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, k: &BigRational) -> PolyH {
        PolyH::new(self.rat.scale(k), self.rad.scale(k))
    }

    /// Constant term, keeping the radical part.
    pub fn at_h_zero(&self) -> PolyH {
        PolyH::new(
            UniPoly::constant(self.rat.constant_term()),
            UniPoly::constant(self.rad.constant_term()),
        )
    }
}

impl From<UniPoly> for PolyH {
    fn from(rat: UniPoly) -> Self {
        PolyH {
            rat,
            rad: UniPoly::zero(),
        }
    }
}

impl fmt::Display for PolyH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.rad.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "sqrt2*({})", self.rad),
            (false, false) => write!(f, "{} + sqrt2*({})", self.rat, self.rad),
        }
    }
}

/// Returns the constant term of `p`, radical part preserved.
pub fn substitute_h_zero(p: &PolyH) -> PolyH {
    p.at_h_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term_examples() {
        let p = PolyH::from(UniPoly::from_i64(&[1, 3, 1]));
        assert_eq!(substitute_h_zero(&p), PolyH::one());
        assert_eq!(substitute_h_zero(&PolyH::zero()), PolyH::zero());
        let r = PolyH::new(UniPoly::zero(), UniPoly::from_i64(&[1, 1]));
        assert_eq!(substitute_h_zero(&r), PolyH::sqrt2());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(PolyH::sqrt2().mul(&PolyH::sqrt2()), PolyH::int(2));
        assert_eq!(PolyH::inv_sqrt2().mul(&PolyH::sqrt2()), PolyH::one());
    }

    #[test]
    fn rendering() {
        assert_eq!(UniPoly::from_i64(&[1, 3, 1]).to_string(), "h^2 + 3*h + 1");
        assert_eq!(UniPoly::from_i64(&[0, -1]).to_string(), "-h");
        let r = PolyH::new(UniPoly::from_i64(&[1]), UniPoly::from_i64(&[0, 2]));
        assert_eq!(r.to_string(), "1 + sqrt2*(2*h)");
    }
}
