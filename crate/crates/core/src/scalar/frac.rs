//! Rational functions `num / den` over `Q[s, h]`.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Monomial, Poly};
use super::polyh::UniPoly;
use super::ScalarError;

/// Factors tried for cancellation after every operation. Denominators built
/// from `q = s^2` and the contraction parameter are products of these.
fn trial_factors() -> &'static [Poly] {
    static F: OnceLock<Vec<Poly>> = OnceLock::new();
    F.get_or_init(|| {
        vec![
            Poly::from_terms([(1, 1, 0), (-1, 0, 0)]),
            Poly::from_terms([(1, 1, 0), (1, 0, 0)]),
            Poly::from_terms([(1, 2, 0), (1, 0, 0)]),
        ]
    })
}

#[derive(Clone, Debug)]
pub struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    pub fn zero() -> Self {
        Frac {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Frac::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Frac {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Frac { num, den }.canonical())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn canonical(mut self) -> Self {
        if self.num.is_zero() {
            return Frac::zero();
        }
        if self.den.is_one() {
            return self;
        }
        let cn = self.num.monomial_content();
        let cd = self.den.monomial_content();
        let common = Monomial::new(cn.s.min(cd.s), cn.h.min(cd.h));
        if common != Monomial::ONE {
            self.num = self.num.shift_down(&common);
            self.den = self.den.shift_down(&common);
        }
        if !self.den.is_constant() {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = Poly::one();
                return self;
            }
            for f in trial_factors() {
                while self.den.num_terms() > 1 {
                    match (self.num.div_exact(f), self.den.div_exact(f)) {
                        (Some(n), Some(d)) => {
                            self.num = n;
                            self.den = d;
                        }
                        _ => break,
                    }
                }
            }
        }
        let lead = self
            .den
            .leading()
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Frac {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            }
            .canonical();
        }
        if let Some(k) = self.den.div_exact(&o.den) {
            return Frac {
                num: self.num.add(&o.num.mul(&k)),
                den: self.den.clone(),
            }
            .canonical();
        }
        if let Some(k) = o.den.div_exact(&self.den) {
            return Frac {
                num: self.num.mul(&k).add(&o.num),
                den: o.den.clone(),
            }
            .canonical();
        }
        Frac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .canonical()
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        if self.is_zero() || o.is_zero() {
            return Frac::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Frac::from_poly(self.num.mul(&o.num));
        }
        Frac {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
        .canonical()
    }

    pub fn recip(&self) -> Result<Frac, ScalarError> {
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Frac) -> Result<Frac, ScalarError> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn scale(&self, k: &BigRational) -> Frac {
        Frac {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
        .canonical()
    }

    /// Limit at `s -> 1`; cancels `(s - 1)` factors first.
    pub fn limit_s_one(&self) -> Result<UniPoly, ScalarError> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut cancelled = 0usize;
        while den.at_s_one().is_zero() {
            match num.div_s_minus_one() {
                Some(n) => {
                    num = n;
                    den = den.div_s_minus_one().expect("root checked");
                    cancelled += 1;
                }
                None => {
                    return Err(ScalarError::Pole {
                        order_hint: cancelled,
                    })
                }
            }
        }
        let d = den.at_s_one();
        if d.degree() != Some(0) {
            return Err(ScalarError::NonPolynomial(format!("{den}")));
        }
        let inv = d.constant_term().recip();
        Ok(num.at_s_one().scale(&inv))
    }

    pub fn at_h_zero(&self) -> Result<Frac, ScalarError> {
        Frac::new(self.num.at_h_zero(), self.den.at_h_zero())
    }

    pub fn to_unipoly(&self) -> Option<UniPoly> {
        if !self.den.is_constant() || !self.num.is_s_free() {
            return None;
        }
        let inv = self.den.constant_term().recip();
        Some(self.num.at_s_one().scale(&inv))
    }

    pub fn eval(&self, s: &BigRational, h: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(s, h);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(s, h) / d)
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Eq for Frac {}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.num_terms() > 1 || !self.den.leading().is_some_and(|(_, c)| c.is_one()) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
