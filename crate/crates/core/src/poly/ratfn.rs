use std::fmt;

use num_traits::{One, Zero};

use super::{gcd, MPoly};
use crate::error::{Error, Result};
use crate::scalars::Field;

/// Quotient of two polynomials. After [`RatFn::reduce`] numerator and
/// denominator are coprime and the denominator's graded-lex leading
/// coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn<F> {
    num: MPoly<F>,
    den: MPoly<F>,
}

impl<F: Field> RatFn<F> {
    pub fn new(num: MPoly<F>, den: MPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn { num, den })
    }

    /// Reduced form of `num / den`.
    pub fn reduced(num: MPoly<F>, den: MPoly<F>) -> Result<Self> {
        Self::new(num, den)?.reduce()
    }

    pub fn num(&self) -> &MPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &MPoly<F> {
        &self.den
    }

    pub fn reduce(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Ok(RatFn { num: MPoly::zero(), den: MPoly::one() });
        }
        let g = gcd(&self.num, &self.den)?;
        let num = self.num.div_exact(&g).ok_or(Error::GcdCertificate)?;
        let den = self.den.div_exact(&g).ok_or(Error::GcdCertificate)?;
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        let inv = lc.inverse().expect("nonzero");
        Ok(RatFn { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        RatFn::reduced(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        RatFn::reduced(&self.num * &o.num, &self.den * &o.den)
    }

    /// Evaluates; `None` where the denominator vanishes.
    pub fn eval(&self, values: &[(&str, F)]) -> Result<Option<F>> {
        let d = self.den.eval(values)?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.num.eval(values)? / d))
    }
}

impl<F: Field> fmt::Display for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
