use num_traits::Zero;

use super::{ExactDiv, MPoly};
use crate::error::{Error, Result};
use crate::scalars::{Field, Ring};

/// Homogeneous form of degree `d` in two variables `(u, v)`:
/// `sum_i coeffs[i] * u^(d-i) * v^i`.
///
/// Coefficients may themselves be polynomials in further parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> BinaryForm<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `a*u + b*v`.
    pub fn linear(a: R, b: R) -> Self {
        BinaryForm { coeffs: vec![a, b] }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn eval(&self, u: &R, v: &R) -> R {
        let d = self.degree();
        let mut acc = R::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut t = c.clone();
            for _ in 0..d - i {
                t = t * u.clone();
            }
            for _ in 0..i {
                t = t * v.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// For a linear form `a*u + b*v`, its root `(u : v) = (b : -a)`.
    pub fn linear_root(&self) -> Option<(R, R)> {
        if self.degree() != 1 || self.is_zero() {
            return None;
        }
        Some((self.coeffs[1].clone(), -self.coeffs[0].clone()))
    }
}

impl<R: Ring + ExactDiv> BinaryForm<R> {
    /// Quotient `Q` with `self = l * Q`, for a linear form `l`.
    ///
    /// Fails with [`Error::NotARoot`] when the remainder is nonzero.
    pub fn exact_divide(&self, l: &BinaryForm<R>) -> Result<BinaryForm<R>> {
        if l.degree() != 1 || l.is_zero() {
            return Err(Error::InvalidInput("divisor must be a nonzero linear form".into()));
        }
        let d = self.degree();
        if d == 0 {
            return if self.is_zero() { Ok(self.clone()) } else { Err(Error::NotARoot) };
        }
        let (a, b) = (&l.coeffs[0], &l.coeffs[1]);
        let f = &self.coeffs;
        let mut q: Vec<R> = Vec::with_capacity(d);
        if !a.is_zero() {
            // f_i = a q_i + b q_{i-1}
            for i in 0..d {
                let mut t = f[i].clone();
                if i > 0 {
                    t = t - b.clone() * q[i - 1].clone();
                }
                q.push(t.exact_div(a).ok_or(Error::NotARoot)?);
            }
            if f[d] != b.clone() * q[d - 1].clone() {
                return Err(Error::NotARoot);
            }
        } else {
            // l = b v: f_0 must vanish and q_i = f_{i+1} / b
            if !f[0].is_zero() {
                return Err(Error::NotARoot);
            }
            for fi in &f[1..] {
                q.push(fi.exact_div(b).ok_or(Error::NotARoot)?);
            }
        }
        Ok(BinaryForm { coeffs: q })
    }
}

impl<F: Field> BinaryForm<MPoly<F>> {
    /// Collects a polynomial homogeneous of degree `d` in `(u, v)`.
    pub fn from_poly(p: &MPoly<F>, u: &str, v: &str, d: usize) -> Result<Self> {
        let by_u = p.coefficients_in(u);
        if by_u.len() > d + 1 {
            return Err(Error::InvalidInput(format!("degree in {u} exceeds {d}")));
        }
        let mut coeffs = vec![MPoly::zero(); d + 1];
        for (k, cu) in by_u.into_iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            let by_v = cu.coefficients_in(v);
            for (j, cv) in by_v.into_iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                if k + j != d {
                    return Err(Error::InvalidInput(format!("not homogeneous of degree {d} in ({u}, {v})")));
                }
                coeffs[d - k] = cv;
            }
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn to_poly(&self, u: &str, v: &str) -> MPoly<F> {
        let d = self.degree() as u32;
        let mut acc = MPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let i = i as u32;
            acc = acc + c.shift(u, d - i).shift(v, i);
        }
        acc
    }

    /// Constant coefficients, if every coefficient is constant.
    pub fn to_constant(&self) -> Option<BinaryForm<F>> {
        let coeffs = self.coeffs.iter().map(MPoly::constant_value).collect::<Option<Vec<F>>>()?;
        Some(BinaryForm { coeffs })
    }
}
