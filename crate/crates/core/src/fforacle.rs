//! Brute-force finite-field oracle: reduce forms modulo a small prime,
//! enumerate every line of P^3(F_p) on a cubic surface, count transversals,
//! and scan for singular points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::projgeom::{ProjLine, ProjPoint};
use crate::scalars::{MinPoly, Rational, Scalar};

pub const X_VARS: [&str; 4] = ["x0", "x1", "x2", "x3"];

/// The prime field `F_p` as a runtime modulus; elements are `u64` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(Fp { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.p)).then(|| self.pow(a, self.p - 2))
    }

    pub fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    pub fn from_rational(&self, r: &Rational) -> Result<u64> {
        let d = self.inv(self.from_int(r.denom())).ok_or(Error::BadPrime(self.p))?;
        Ok(self.mul(self.from_int(r.numer()), d))
    }

    /// Roots of `x^2 - p x - q` in `F_p`, smallest first.
    pub fn minpoly_roots(&self, m: &MinPoly) -> Result<[u64; 2]> {
        let (mp, mq) = (self.from_rational(m.p())?, self.from_rational(m.q())?);
        let roots: Vec<u64> =
            (0..self.p).filter(|&x| self.sub(self.sub(self.mul(x, x), self.mul(mp, x)), mq) == 0).collect();
        match roots.len() {
            2 => Ok([roots[0], roots[1]]),
            1 => Err(Error::BadReduction(format!("minimal polynomial has a double root mod {}", self.p))),
            _ => Err(Error::NonSplitPrime(self.p)),
        }
    }

    /// Image of a field element, sending the extension generator to `alpha`.
    pub fn reduce_scalar(&self, s: &Scalar, alpha: Option<u64>) -> Result<u64> {
        let (a, b) = s.parts();
        let a = self.from_rational(&a)?;
        if b.is_zero() {
            return Ok(a);
        }
        let alpha = alpha.ok_or(Error::NonSplitPrime(self.p))?;
        Ok(self.add(a, self.mul(self.from_rational(&b)?, alpha)))
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// The embedding data for reducing values of one number field mod `p`.
#[derive(Clone, Copy, Debug)]
pub struct Reduction {
    pub field: Fp,
    pub alpha: Option<u64>,
}

impl Reduction {
    /// Picks the `root_index`-th root of the minimal polynomial (0 or 1), if any.
    pub fn new(p: u64, minpoly: Option<&MinPoly>, root_index: usize) -> Result<Self> {
        let field = Fp::new(p)?;
        let alpha = match minpoly {
            Some(m) => Some(field.minpoly_roots(m)?[root_index.min(1)]),
            None => None,
        };
        Ok(Reduction { field, alpha })
    }

    pub fn scalar(&self, s: &Scalar) -> Result<u64> {
        self.field.reduce_scalar(s, self.alpha)
    }

    pub fn point(&self, x: &ProjPoint<Scalar>) -> Result<[u64; 4]> {
        let c = x.coords();
        let r = [self.scalar(&c[0])?, self.scalar(&c[1])?, self.scalar(&c[2])?, self.scalar(&c[3])?];
        if r.iter().all(|&v| v == 0) {
            return Err(Error::BadReduction(format!("point reduces to zero mod {}", self.field.p)));
        }
        Ok(r)
    }

    pub fn line(&self, l: &ProjLine<Scalar>) -> Result<FpLine> {
        let (a, b) = l.points();
        FpLine::from_points(&self.field, self.point(a)?, self.point(b)?)
            .ok_or_else(|| Error::BadReduction(format!("spanning points become dependent mod {}", self.field.p)))
    }

    pub fn poly(&self, f: &MPoly<Scalar>, vars: &[&str]) -> Result<FpPoly> {
        FpPoly::reduce(f, self, vars)
    }
}

/// A polynomial over `F_p` with a fixed variable order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    field: Fp,
    terms: Vec<(Vec<u32>, u64)>,
    nvars: usize,
}

impl FpPoly {
    fn reduce(f: &MPoly<Scalar>, red: &Reduction, vars: &[&str]) -> Result<Self> {
        let idx: Vec<usize> = f
            .vars()
            .iter()
            .map(|v| {
                vars.iter().position(|w| w == v).ok_or_else(|| Error::InvalidInput(format!("unexpected variable {v}")))
            })
            .collect::<Result<_>>()?;
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let c = red.scalar(c)?;
            if c == 0 {
                continue;
            }
            let mut e = vec![0; vars.len()];
            for (k, &d) in m.exponents().iter().enumerate() {
                e[idx[k]] = d;
            }
            terms.push((e, c));
        }
        Ok(FpPoly { field: red.field, terms, nvars: vars.len() })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        assert_eq!(x.len(), self.nvars, "arity");
        let f = &self.field;
        self.terms.iter().fold(0, |acc, (e, c)| {
            let t = e.iter().zip(x).fold(*c, |t, (&d, &xi)| f.mul(t, f.pow(xi, d as u64)));
            f.add(acc, t)
        })
    }

    pub fn derivative(&self, var: usize) -> FpPoly {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .filter_map(|(e, c)| {
                let c = f.mul(*c, e[var] as u64 % f.p);
                let mut e = e.clone();
                e[var] -= 1;
                (c != 0).then_some((e, c))
            })
            .collect();
        FpPoly { field: self.field, terms, nvars: self.nvars }
    }

    /// Coefficients of the binary form `f(u a + v b)`, `coeffs[i]` on
    /// `u^(d-i) v^i`, for a homogeneous form of degree `d` in four variables.
    pub fn restrict(&self, a: &[u64; 4], b: &[u64; 4], degree: usize) -> Vec<u64> {
        let f = &self.field;
        let mut out = vec![0; degree + 1];
        for (e, c) in &self.terms {
            // product of (a_k u + b_k v)^e_k, as coefficient vectors in v-degree
            let mut acc = vec![*c];
            for k in 0..4 {
                for _ in 0..e[k] {
                    let mut next = vec![0; acc.len() + 1];
                    for (i, &t) in acc.iter().enumerate() {
                        next[i] = f.add(next[i], f.mul(t, a[k]));
                        next[i + 1] = f.add(next[i + 1], f.mul(t, b[k]));
                    }
                    acc = next;
                }
            }
            for (i, t) in acc.into_iter().enumerate() {
                out[i] = f.add(out[i], t);
            }
        }
        out
    }
}

/// A line of P^3(F_p) in canonical form: the reduced row echelon basis of
/// its 2-dimensional subspace.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpLine {
    rows: [[u64; 4]; 2],
}

impl FpLine {
    pub fn from_points(f: &Fp, a: [u64; 4], b: [u64; 4]) -> Option<Self> {
        let mut m = [a, b];
        let mut r = 0;
        for c in 0..4 {
            if r == 2 {
                break;
            }
            let Some(p) = (r..2).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(m[r][c]).expect("nonzero pivot");
            m[r] = m[r].map(|x| f.mul(x, inv));
            for i in 0..2 {
                if i != r && m[i][c] != 0 {
                    let k = m[i][c];
                    for j in 0..4 {
                        m[i][j] = f.sub(m[i][j], f.mul(k, m[r][j]));
                    }
                }
            }
            r += 1;
        }
        (r == 2).then_some(FpLine { rows: m })
    }

    pub fn rows(&self) -> &[[u64; 4]; 2] {
        &self.rows
    }

    pub fn plucker(&self, f: &Fp) -> [u64; 6] {
        let [a, b] = &self.rows;
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].map(|(i, j)| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])))
    }

    pub fn meets(&self, o: &FpLine, f: &Fp) -> bool {
        let (p, q) = (self.plucker(f), o.plucker(f));
        let terms = [(0, 5), (1, 4), (2, 3), (5, 0), (4, 1), (3, 2)];
        let signs = [false, true, false, false, true, false];
        terms.iter().zip(signs).fold(0, |acc, (&(i, j), neg)| {
            let t = f.mul(p[i], q[j]);
            if neg {
                f.sub(acc, t)
            } else {
                f.add(acc, t)
            }
        }) == 0
    }
}

/// Every line of P^3(F_p), enumerated by pivot pattern of the 2x4 echelon
/// form; each line appears exactly once.
pub fn all_lines(f: &Fp) -> Vec<FpLine> {
    let p = f.p;
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            // free entries: row 0 at columns > i except j; row 1 at columns > j
            let free0: Vec<usize> = (i + 1..4).filter(|&c| c != j).collect();
            let free1: Vec<usize> = (j + 1..4).collect();
            let n = free0.len() + free1.len();
            for code in 0..p.pow(n as u32) {
                let mut rest = code;
                let mut rows = [[0u64; 4]; 2];
                rows[0][i] = 1;
                rows[1][j] = 1;
                for &c in &free0 {
                    rows[0][c] = rest % p;
                    rest /= p;
                }
                for &c in &free1 {
                    rows[1][c] = rest % p;
                    rest /= p;
                }
                out.push(FpLine { rows });
            }
        }
    }
    out
}

/// All points of P^3(F_p), normalized with first nonzero coordinate 1.
pub fn all_points(f: &Fp) -> Vec<[u64; 4]> {
    let p = f.p;
    let mut out = Vec::new();
    for lead in 0..4 {
        let n = 3 - lead;
        for code in 0..p.pow(n as u32) {
            let mut x = [0u64; 4];
            x[lead] = 1;
            let mut rest = code;
            for c in x.iter_mut().skip(lead + 1) {
                *c = rest % p;
                rest /= p;
            }
            out.push(x);
        }
    }
    out
}

/// Lines of a cubic surface over `F_p`, sorted canonically.
#[derive(Clone, Debug)]
pub struct FpLineSet {
    pub prime: u64,
    pub lines: Vec<FpLine>,
}

impl FpLineSet {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn contains(&self, l: &FpLine) -> bool {
        self.lines.binary_search(l).is_ok()
    }

    /// Number of lines in the set meeting both `l1` and `l2`.
    pub fn count_transversals(&self, l1: &FpLine, l2: &FpLine) -> Result<usize> {
        let f = Fp::new(self.prime)?;
        if l1.meets(l2, &f) {
            return Err(Error::BadReduction(format!("lines are not skew mod {}", self.prime)));
        }
        Ok(self.lines.iter().filter(|l| l.meets(l1, &f) && l.meets(l2, &f)).count())
    }

    pub fn transversals(&self, l1: &FpLine, l2: &FpLine) -> Result<Vec<FpLine>> {
        let f = Fp::new(self.prime)?;
        if l1.meets(l2, &f) {
            return Err(Error::BadReduction(format!("lines are not skew mod {}", self.prime)));
        }
        Ok(self.lines.iter().filter(|l| l.meets(l1, &f) && l.meets(l2, &f)).cloned().collect())
    }
}

pub fn enumerate_lines(form: &FpPoly) -> FpLineSet {
    let f = form.field;
    let mut lines: Vec<FpLine> = all_lines(&f)
        .into_iter()
        .filter(|l| form.restrict(&l.rows[0], &l.rows[1], 3).iter().all(|&c| c == 0))
        .collect();
    lines.sort();
    FpLineSet { prime: f.p, lines }
}

/// Oracle result for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub prime: u64,
    pub lines: usize,
    pub transversals: Option<usize>,
}

/// Reduces the surface (and optionally a skew pair) mod `p` and counts lines.
pub fn line_report(
    form: &MPoly<Scalar>,
    minpoly: Option<&MinPoly>,
    pair: Option<(&ProjLine<Scalar>, &ProjLine<Scalar>)>,
    p: u64,
) -> Result<OracleReport> {
    let red = Reduction::new(p, minpoly, 0)?;
    let fp = red.poly(form, &X_VARS)?;
    if fp.is_zero() {
        return Err(Error::BadReduction(format!("form vanishes mod {p}")));
    }
    let set = enumerate_lines(&fp);
    let transversals = match pair {
        Some((l1, l2)) => Some(set.count_transversals(&red.line(l1)?, &red.line(l2)?)?),
        None => None,
    };
    Ok(OracleReport { prime: p, lines: set.len(), transversals })
}

/// The smallest `count` primes above 3 and at most `bound` modulo which the
/// minimal polynomial splits and the form reduces without denominators.
pub fn good_primes(form: &MPoly<Scalar>, minpoly: Option<&MinPoly>, count: usize, bound: u64) -> Vec<u64> {
    (5..=bound)
        .filter(|&p| is_prime(p))
        .filter(|&p| {
            Reduction::new(p, minpoly, 0).and_then(|r| r.poly(form, &X_VARS)).map(|f| !f.is_zero()).unwrap_or(false)
        })
        .take(count)
        .collect()
}

/// A point of P^3(F_p) where the form and its gradient vanish, if any.
pub fn singular_point(form: &FpPoly) -> Option<[u64; 4]> {
    let grad: Vec<FpPoly> = (0..4).map(|i| form.derivative(i)).collect();
    all_points(&form.field).into_iter().find(|x| form.eval(x) == 0 && grad.iter().all(|g| g.eval(x) == 0))
}
