//! Exact scalar fields: the rationals and quadratic extensions `Q(w)`.
//!
//! All geometry and polynomial code is generic over [`Field`]; the two
//! concrete instances are [`Rational`] and [`Scalar`]. `Scalar` is the closed
//! union of rationals and elements of a quadratic extension, and mixed
//! operations promote the rational operand into the ambient extension.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Commutative ring with identity. Blanket-implemented; polynomials and
/// field elements both qualify.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// An exact field of characteristic zero, possibly carrying a conjugation.
pub trait Field: Ring + Eq + fmt::Display + Div<Output = Self> {
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
    /// `Some` iff the element lies in the rational subfield.
    fn to_rational(&self) -> Option<Rational>;
    /// The nontrivial automorphism of a quadratic extension; identity on `Q`.
    fn conjugate(&self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn conjugate(&self) -> Self {
        self.clone()
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn is_rational_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    &(&sn * &sn) == n && &(&sd * &sd) == d
}

/// Minimal polynomial `x^2 - p*x - q` of the extension generator, so that
/// `w^2 = p*w + q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinPoly {
    p: Rational,
    q: Rational,
}

impl MinPoly {
    /// Fails unless `x^2 - p x - q` is irreducible over `Q`.
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        let disc = &p * &p + Rational::from_integer(4.into()) * &q;
        if is_rational_square(&disc) {
            return Err(Error::ReducibleMinPoly { p: p.to_string(), q: q.to_string() });
        }
        Ok(MinPoly { p, q })
    }

    /// From the coefficients of the monic polynomial `x^2 + a x + b`.
    pub fn from_monic(a: Rational, b: Rational) -> Result<Self> {
        MinPoly::new(-a, -b)
    }

    /// `x^2 + x + 1`, generated by a primitive cube root of unity.
    pub fn omega() -> Self {
        MinPoly { p: rat_int(-1), q: rat_int(-1) }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Coefficients `[1, a, b]` of the monic polynomial `x^2 + a x + b`.
    pub fn monic_coeffs(&self) -> [Rational; 3] {
        [Rational::one(), -self.p.clone(), -self.q.clone()]
    }
}

impl fmt::Display for MinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [_, a, b] = self.monic_coeffs();
        write!(f, "w^2")?;
        for (c, mono) in [(a, "*w"), (b, "")] {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if abs.is_one() && !mono.is_empty() {
                write!(f, " {sign} w")?;
            } else {
                write!(f, " {sign} {abs}{mono}")?;
            }
        }
        Ok(())
    }
}

/// `base + ext * w` in the extension defined by `ctx`.
#[derive(Clone, Debug)]
pub struct QuadExt {
    base: Rational,
    ext: Rational,
    ctx: Arc<MinPoly>,
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.ext == other.ext && same_ctx(&self.ctx, &other.ctx)
    }
}
impl Eq for QuadExt {}

fn same_ctx(a: &Arc<MinPoly>, b: &Arc<MinPoly>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl QuadExt {
    pub fn new(base: Rational, ext: Rational, ctx: Arc<MinPoly>) -> Self {
        QuadExt { base, ext, ctx }
    }

    pub fn generator(ctx: Arc<MinPoly>) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), ctx)
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn ext(&self) -> &Rational {
        &self.ext
    }

    pub fn context(&self) -> &Arc<MinPoly> {
        &self.ctx
    }

    fn check(&self, other: &QuadExt) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, o: &QuadExt) -> Result<QuadExt> {
        self.check(o)?;
        Ok(QuadExt::new(&self.base + &o.base, &self.ext + &o.ext, self.ctx.clone()))
    }

    pub fn try_sub(&self, o: &QuadExt) -> Result<QuadExt> {
        self.check(o)?;
        Ok(QuadExt::new(&self.base - &o.base, &self.ext - &o.ext, self.ctx.clone()))
    }

    pub fn try_mul(&self, o: &QuadExt) -> Result<QuadExt> {
        self.check(o)?;
        let bb = &self.ext * &o.ext;
        let base = &self.base * &o.base + &bb * &self.ctx.q;
        let ext = &self.base * &o.ext + &self.ext * &o.base + &bb * &self.ctx.p;
        Ok(QuadExt::new(base, ext, self.ctx.clone()))
    }

    pub fn try_div(&self, o: &QuadExt) -> Result<QuadExt> {
        self.check(o)?;
        let inv = o.inverse().ok_or(Error::DivisionByZero)?;
        self.try_mul(&inv)
    }

    /// `w -> p - w`, the other root of the minimal polynomial.
    pub fn conjugate(&self) -> QuadExt {
        QuadExt::new(&self.base + &self.ext * &self.ctx.p, -self.ext.clone(), self.ctx.clone())
    }

    /// `a * conjugate(a)`, always rational.
    pub fn norm(&self) -> Rational {
        &self.base * &self.base + &self.base * &self.ext * &self.ctx.p - &self.ext * &self.ext * &self.ctx.q
    }

    /// `a + conjugate(a)`.
    pub fn trace(&self) -> Rational {
        Rational::from_integer(2.into()) * &self.base + &self.ext * &self.ctx.p
    }

    pub fn inverse(&self) -> Option<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadExt::new(c.base / &n, c.ext / &n, self.ctx.clone()))
    }

    pub fn is_rational(&self) -> (bool, Option<Rational>) {
        if self.ext.is_zero() {
            (true, Some(self.base.clone()))
        } else {
            (false, None)
        }
    }
}

/// An exact field element: a rational, or an irrational element of a
/// quadratic extension. Values are canonical: an extension element whose
/// `w`-part vanishes is stored as `Rat`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(Rational),
    Quad(QuadExt),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Rat(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::Rat(rat(n, d))
    }

    pub fn generator(ctx: &Arc<MinPoly>) -> Self {
        Scalar::Quad(QuadExt::generator(ctx.clone()))
    }

    /// `base + ext * w`, canonicalized.
    pub fn from_parts(base: Rational, ext: Rational, ctx: &Arc<MinPoly>) -> Self {
        Scalar::from(QuadExt::new(base, ext, ctx.clone()))
    }

    pub fn context(&self) -> Option<&Arc<MinPoly>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Quad(q) => Some(q.context()),
        }
    }

    /// `(base, ext)` with `ext = 0` for rationals.
    pub fn parts(&self) -> (Rational, Rational) {
        match self {
            Scalar::Rat(r) => (r.clone(), Rational::zero()),
            Scalar::Quad(q) => (q.base.clone(), q.ext.clone()),
        }
    }

    fn lift(r: &Rational, ctx: &Arc<MinPoly>) -> QuadExt {
        QuadExt::new(r.clone(), Rational::zero(), ctx.clone())
    }

    fn binop(
        &self,
        o: &Scalar,
        rr: impl Fn(&Rational, &Rational) -> Result<Rational>,
        qq: impl Fn(&QuadExt, &QuadExt) -> Result<QuadExt>,
    ) -> Result<Scalar> {
        Ok(match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(rr(a, b)?),
            (Scalar::Rat(a), Scalar::Quad(b)) => Scalar::from(qq(&Self::lift(a, &b.ctx), b)?),
            (Scalar::Quad(a), Scalar::Rat(b)) => Scalar::from(qq(a, &Self::lift(b, &a.ctx))?),
            (Scalar::Quad(a), Scalar::Quad(b)) => Scalar::from(qq(a, b)?),
        })
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar> {
        self.binop(o, |a, b| Ok(a + b), QuadExt::try_add)
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.binop(o, |a, b| Ok(a - b), QuadExt::try_sub)
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar> {
        self.binop(o, |a, b| Ok(a * b), QuadExt::try_mul)
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.binop(o, |a, b| Ok(a / b), QuadExt::try_div)
    }

    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Quad(q) => Scalar::from(q.conjugate()),
        }
    }

    /// `a * conjugate(a)`.
    pub fn norm(&self) -> Rational {
        match self {
            Scalar::Rat(r) => r * r,
            Scalar::Quad(q) => q.norm(),
        }
    }

    pub fn is_rational(&self) -> (bool, Option<Rational>) {
        match self {
            Scalar::Rat(r) => (true, Some(r.clone())),
            Scalar::Quad(_) => (false, None),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl From<QuadExt> for Scalar {
    fn from(q: QuadExt) -> Self {
        if q.ext.is_zero() {
            Scalar::Rat(q.base)
        } else {
            Scalar::Quad(q)
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

// Operator impls panic on mixed extensions; use the `try_*` methods where the
// operands come from untrusted input.
impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        self.try_add(&o).expect("scalar addition across different extensions")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self.try_sub(&o).expect("scalar subtraction across different extensions")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.try_mul(&o).expect("scalar multiplication across different extensions")
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        self.try_div(&o).expect("scalar division failed")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad(q) => Scalar::Quad(QuadExt::new(-q.base, -q.ext, q.ctx)),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rat(Rational::one())
    }
}

impl Field for Scalar {
    fn inverse(&self) -> Option<Self> {
        match self {
            Scalar::Rat(r) => Field::inverse(r).map(Scalar::Rat),
            Scalar::Quad(q) => q.inverse().map(Scalar::from),
        }
    }
    fn from_rational(r: Rational) -> Self {
        Scalar::Rat(r)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.is_rational().1
    }
    fn conjugate(&self) -> Self {
        Scalar::conjugate(self)
    }
}

impl fmt::Display for Scalar {
    /// `3`, `-1/2`, `w`, `-2*w`, `1/2 + 3*w`, `-1 - w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Quad(q) => {
                let ext_abs = q.ext.abs();
                let ext_str = if ext_abs.is_one() { "w".to_string() } else { format!("{ext_abs}*w") };
                if q.base.is_zero() {
                    let sign = if q.ext.is_negative() { "-" } else { "" };
                    write!(f, "{sign}{ext_str}")
                } else {
                    let sign = if q.ext.is_negative() { "-" } else { "+" };
                    write!(f, "{} {sign} {ext_str}", q.base)
                }
            }
        }
    }
}
