//! Multivariate GCD by content/primitive-part recursion over a subresultant
//! remainder sequence, with a randomized coprimality certificate.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MPoly;
use crate::error::{Error, Result};
use crate::scalars::Field;

const MAX_VARS: usize = 3;
const CERT_SEED: u64 = 0x05ee_d6cd;
const CERT_TRIES: usize = 6;

/// Greatest common divisor, normalized to leading coefficient 1.
///
/// Supports at most three variables; homogeneous trivariate inputs are
/// dehomogenized in their first variable, reduced to the bivariate case and
/// rehomogenized. The result is checked: both cofactors must be exact and
/// coprime under random specialization.
pub fn gcd<F: Field>(p: &MPoly<F>, q: &MPoly<F>) -> Result<MPoly<F>> {
    if p.is_zero() {
        return Ok(q.monic());
    }
    if q.is_zero() {
        return Ok(p.monic());
    }
    let vars = p.merged_vars(q);
    if vars.len() > MAX_VARS {
        return Err(Error::Unsupported(format!("gcd in {} variables", vars.len())));
    }
    let g = if vars.len() == MAX_VARS && p.is_homogeneous() && q.is_homogeneous() {
        homogeneous_gcd(p, q, &vars[0])
    } else {
        gcd_rec(p, q)
    }
    .monic();
    certify(p, q, &g)?;
    Ok(g)
}

/// GCD of a list; the empty list gives zero.
pub fn gcd_many<F: Field>(ps: &[MPoly<F>]) -> Result<MPoly<F>> {
    let mut g = MPoly::zero();
    for p in ps {
        g = gcd(&g, p)?;
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    Ok(g)
}

fn homogeneous_gcd<F: Field>(p: &MPoly<F>, q: &MPoly<F>, h: &str) -> MPoly<F> {
    let k = p.min_degree_in(h).min(q.min_degree_in(h));
    let one = [(h, F::one())];
    let dp = p.substitute_values(&one);
    let dq = q.substitute_values(&one);
    let g = gcd_rec(&dp, &dq);
    let d = g.total_degree().unwrap_or(0);
    g.homogenize(h, d).shift(h, k)
}

/// GCD of two polynomials whose variables are all treated recursively.
fn gcd_rec<F: Field>(p: &MPoly<F>, q: &MPoly<F>) -> MPoly<F> {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one();
    }
    let vars = p.merged_vars(q);
    let x = vars[0].clone();
    let cp = content(p, &x);
    let cq = content(q, &x);
    let c = gcd_rec(&cp, &cq);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    if pp.degree_in(&x) == 0 || qq.degree_in(&x) == 0 {
        return c;
    }
    let s = subresultant(&pp.coefficients_in(&x), &qq.coefficients_in(&x));
    let g = MPoly::from_coefficients_in(&x, &s);
    let g = g.div_exact(&content(&g, &x)).expect("content divides");
    (&c * &g).monic()
}

/// GCD of the coefficients with respect to `x`.
fn content<F: Field>(p: &MPoly<F>, x: &str) -> MPoly<F> {
    let mut g = MPoly::zero();
    for c in p.coefficients_in(x) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return MPoly::one();
        }
    }
    g.monic()
}

type Uni<F> = Vec<MPoly<F>>;

fn trim<F: Field>(mut a: Uni<F>) -> Uni<F> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn deg<F: Field>(a: &Uni<F>) -> usize {
    a.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem<F: Field>(a: &Uni<F>, b: &Uni<F>) -> Uni<F> {
    let db = deg(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Uni<F> = r.iter().map(|c| lb * c).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(&lr * bc);
        }
        r = trim(next);
        e -= 1;
    }
    let f = lb.pow(e as u32);
    r.iter().map(|c| &f * c).collect()
}

/// Last nonzero element of the subresultant PRS of two primitive polynomials.
fn subresultant<F: Field>(a: &Uni<F>, b: &Uni<F>) -> Uni<F> {
    let (mut a, mut b) = if a.len() >= b.len() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    let mut g = MPoly::<F>::one();
    let mut h = MPoly::<F>::one();
    loop {
        let d = deg(&a) - deg(&b);
        let r = trim(prem(&a, &b));
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![MPoly::one()];
        }
        let divisor = &g * &h.pow(d as u32);
        a = b;
        b = r.iter().map(|c| c.div_exact(&divisor).expect("subresultant division is exact")).collect();
        g = a[deg(&a)].clone();
        h = match d {
            0 => h,
            1 => g.clone(),
            _ => g.pow(d as u32).div_exact(&h.pow(d as u32 - 1)).expect("exact"),
        };
    }
}

/// Euclidean GCD of dense univariate polynomials (ascending coefficients),
/// normalized monic. Empty means zero.
pub fn univariate_gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    fn strip<F: Field>(mut v: Vec<F>) -> Vec<F> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }
    let mut a = strip(a.to_vec());
    let mut b = strip(b.to_vec());
    while !b.is_empty() {
        let lb = b.last().unwrap().inverse().unwrap();
        while a.len() >= b.len() {
            let f = a.last().unwrap().clone() * lb.clone();
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                a[i + shift] = a[i + shift].clone() - f.clone() * bc.clone();
            }
            a = strip(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(l) = a.last().cloned() {
        let inv = l.inverse().unwrap();
        a.iter_mut().for_each(|c| *c = c.clone() * inv.clone());
    }
    a
}

/// Checks that `g` divides both inputs and that the cofactors share no
/// factor of positive degree in any variable.
fn certify<F: Field>(p: &MPoly<F>, q: &MPoly<F>, g: &MPoly<F>) -> Result<()> {
    if g.is_zero() {
        return if p.is_zero() && q.is_zero() { Ok(()) } else { Err(Error::GcdCertificate) };
    }
    let a = p.div_exact(g).ok_or(Error::GcdCertificate)?;
    let b = q.div_exact(g).ok_or(Error::GcdCertificate)?;
    if a.is_zero() || b.is_zero() {
        // gcd(p, 0) = p: the nonzero cofactor must be a unit
        let other = if a.is_zero() { &b } else { &a };
        return if other.is_constant() { Ok(()) } else { Err(Error::GcdCertificate) };
    }
    if coprime_by_specialization(&a, &b) {
        Ok(())
    } else {
        Err(Error::GcdCertificate)
    }
}

/// Randomized coprimality certificate: for every variable in which both
/// polynomials have positive degree, some specialization of the remaining
/// variables that preserves both degrees yields coprime univariate images.
pub(crate) fn coprime_by_specialization<F: Field>(a: &MPoly<F>, b: &MPoly<F>) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(CERT_SEED);
    let vars = a.merged_vars(b);
    'vars: for x in &vars {
        let (da, db) = (a.degree_in(x), b.degree_in(x));
        if da == 0 || db == 0 {
            continue;
        }
        let others: Vec<&String> = vars.iter().filter(|v| *v != x).collect();
        for _ in 0..CERT_TRIES {
            let point: Vec<(&str, F)> =
                others.iter().map(|v| (v.as_str(), F::from_int(rng.gen_range(-97..=97)))).collect();
            let sa = a.substitute_values(&point);
            let sb = b.substitute_values(&point);
            if sa.degree_in(x) != da || sb.degree_in(x) != db {
                continue;
            }
            let ua: Vec<F> = sa.coefficients_in(x).iter().map(|c| c.constant_value().unwrap()).collect();
            let ub: Vec<F> = sb.coefficients_in(x).iter().map(|c| c.constant_value().unwrap()).collect();
            if univariate_gcd(&ua, &ub).len() == 1 {
                continue 'vars;
            }
        }
        return false;
    }
    true
}

/// GCD of bihomogeneous forms in two groups of two variables each
/// (`[u0, u1]`, `[v0, v1]`), computed by dehomogenizing both groups.
pub fn gcd_bihomogeneous<F: Field>(ps: &[MPoly<F>], u: [&str; 2], v: [&str; 2]) -> Result<MPoly<F>> {
    let nonzero: Vec<&MPoly<F>> = ps.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(MPoly::zero());
    }
    let ku = nonzero.iter().map(|p| p.min_degree_in(u[0])).min().unwrap();
    let kv = nonzero.iter().map(|p| p.min_degree_in(v[0])).min().unwrap();
    let dehom: Vec<MPoly<F>> =
        nonzero.iter().map(|p| p.substitute_values(&[(u[0], F::one()), (v[0], F::one())])).collect();
    let g = gcd_many(&dehom)?;
    // rebihomogenize
    let du = g.degree_in(u[1]);
    let dv = g.degree_in(v[1]);
    let mut acc = MPoly::zero();
    for (m, c) in g.terms() {
        let t = MPoly::build(g.vars.clone(), [(m.exponents().to_vec(), c.clone())]);
        let eu = t.degree_in(u[1]);
        let ev = t.degree_in(v[1]);
        acc = acc + t.shift(u[0], du - eu).shift(v[0], dv - ev);
    }
    Ok(acc.shift(u[0], ku).shift(v[0], kv).monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{MinPoly, Rational, Scalar};
    use std::sync::Arc;

    type P = MPoly<Scalar>;

    fn v(n: &str) -> P {
        P::var(n)
    }
    fn c(n: i64) -> P {
        P::constant(Scalar::int(n))
    }

    #[test]
    fn gcd_of_squares() {
        let (a, b) = (v("y1"), v("y2"));
        let p = &a.pow(2) - &b.pow(2);
        let q = a.pow(2) + c(2) * a.clone() * b.clone() + b.pow(2);
        assert_eq!(gcd(&p, &q).unwrap(), &a + &b);
    }

    #[test]
    fn gcd_with_zero_is_normalized_input() {
        let p = c(3) * v("y1") + c(6);
        assert_eq!(gcd(&p, &P::zero()).unwrap(), v("y1") + c(2));
    }

    #[test]
    fn homogeneous_trivariate_path() {
        let l = v("y0") + c(2) * v("y1") - v("y2");
        let a = v("y0").pow(2) + v("y1") * v("y2");
        let b = v("y0") * v("y2") - c(3) * v("y1").pow(2);
        let g = gcd(&(&l * &a).shift("y0", 1), &(&l * &b).shift("y0", 2)).unwrap();
        assert_eq!(g, (&l * &v("y0")).monic());
    }

    #[test]
    fn non_homogeneous_trivariate() {
        let l = v("y0") * v("y1") + v("y2") + c(1);
        let a = v("y0") + c(5);
        let b = v("y2").pow(2) - v("y1");
        assert_eq!(gcd(&(&l * &a), &(&l * &b)).unwrap(), l.monic());
    }

    #[test]
    fn extension_coefficients() {
        let ctx = Arc::new(MinPoly::omega());
        let w = P::constant(Scalar::generator(&ctx));
        let l = v("y1") - &w * &v("y2");
        let a = v("y1") + c(1);
        let b = v("y1") - v("y2").pow(2);
        assert_eq!(gcd(&(&l * &a), &(&l * &b)).unwrap(), l);
    }

    #[test]
    fn rejects_four_variables() {
        let p = v("a") + v("b") + v("c") + v("d");
        assert!(matches!(gcd(&p, &p), Err(Error::Unsupported(_))));
    }

    #[test]
    fn univariate_over_rationals() {
        let r = |n: i64| Rational::from_integer(n.into());
        // (x-1)(x-2) and (x-1)(x+3)
        let g = univariate_gcd(&[r(2), r(-3), r(1)], &[r(-3), r(2), r(1)]);
        assert_eq!(g, vec![r(-1), r(1)]);
    }

    #[test]
    fn bihomogeneous_common_factor() {
        let f = v("u0") * v("v1") - v("u1") * v("v0");
        let a = v("u0").pow(2) * v("v0") + v("u1").pow(2) * v("v1");
        let b = v("u0") * v("u1") * v("v1") + c(2) * v("u1").pow(2) * v("v0");
        let g = gcd_bihomogeneous(&[&f * &a, &f * &b], ["u0", "u1"], ["v0", "v1"]).unwrap();
        assert_eq!(g, f.monic());
    }

    #[test]
    fn certificate_rejects_wrong_gcd() {
        let (a, b) = (v("y1"), v("y2"));
        let p = &a.pow(2) - &b.pow(2);
        let q = &(&a + &b) * &(&a + &c(3));
        assert!(certify(&p, &q, &P::one()).is_err());
        assert!(certify(&p, &q, &(&a + &b)).is_ok());
    }
}
