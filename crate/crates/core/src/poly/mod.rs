//! Sparse multivariate polynomials with named variables over an exact field.

mod binary;
mod gcd;
mod ratfn;

pub use binary::BinaryForm;
pub use gcd::{gcd, gcd_bihomogeneous, gcd_many, univariate_gcd};
pub use ratfn::RatFn;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{Field, Rational, Scalar};

/// Division that succeeds only when the quotient is exact.
pub trait ExactDiv: Sized {
    fn exact_div(&self, d: &Self) -> Option<Self>;
}

impl ExactDiv for Rational {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        Field::inverse(d).map(|i| self * i)
    }
}

impl ExactDiv for Scalar {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.try_div(d).ok()
    }
}

/// Canonical variable order: alphabetic prefix, then numeric suffix
/// (`u0 < u1 < v0 < x0 < x1 < ... < x10 < y0`). Earlier variables are
/// larger in the graded-lex term order.
pub fn var_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let idx = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (pre, num) = s.split_at(idx);
        (pre, num.parse().ok())
    }
    let (pa, na) = split(a);
    let (pb, nb) = split(b);
    pa.cmp(pb).then(na.cmp(&nb)).then(a.cmp(b))
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in named variables.
///
/// The variable list always holds exactly the variables that occur, in
/// canonical order, and no coefficient is stored as zero; structural equality
/// is therefore mathematical equality. Operands with different variable sets
/// are merged by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<F> {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MPoly<F> {
    /// Builds from `(exponents, coefficient)` pairs over `vars` (any order,
    /// duplicates allowed), combining like terms.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, F)>,
    {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::build(names, terms)
    }

    fn build<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, F)>,
    {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&a, &b| var_cmp(&vars[a], &vars[b]));
        let mut sorted_vars: Vec<String> = order.iter().map(|&i| vars[i].clone()).collect();
        // merge duplicate names
        let mut target = vec![0usize; vars.len()];
        let mut uniq: Vec<String> = Vec::new();
        for (pos, &i) in order.iter().enumerate() {
            if uniq.last() != Some(&sorted_vars[pos]) {
                uniq.push(sorted_vars[pos].clone());
            }
            target[i] = uniq.len() - 1;
        }
        sorted_vars = uniq;
        let mut map: BTreeMap<Monomial, F> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent arity mismatch");
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; sorted_vars.len()];
            for (i, x) in exps.into_iter().enumerate() {
                e[target[i]] += x;
            }
            accumulate(&mut map, Monomial(e), c);
        }
        MPoly { vars: sorted_vars, terms: map }.pruned()
    }

    fn pruned(mut self) -> Self {
        let n = self.vars.len();
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return self;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c))
            .collect();
        MPoly { vars, terms }
    }

    pub fn var(name: &str) -> Self {
        Self::from_terms(&[name], [(vec![1], F::one())])
    }

    pub fn constant(c: F) -> Self {
        Self::from_terms(&[], [(vec![], c)])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter().rev()
    }

    pub fn constant_value(&self) -> Option<F> {
        if self.terms.is_empty() {
            Some(F::zero())
        } else if self.vars.is_empty() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Smallest exponent of `var` over all terms (0 if absent).
    pub fn min_degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0),
            None => 0,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Total degree restricted to the given variables, for every term.
    pub fn partial_degrees(&self, group: &[&str]) -> Vec<u32> {
        let idx: Vec<usize> = group.iter().filter_map(|v| self.var_index(v)).collect();
        self.terms.keys().map(|m| idx.iter().map(|&i| m.0[i]).sum()).collect()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Divides by the graded-lex leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Re-expresses exponents over `target`, which must contain every variable.
    fn remap(&self, target: &[String]) -> BTreeMap<Monomial, F> {
        if self.vars == target {
            return self.terms.clone();
        }
        let pos: Vec<usize> =
            self.vars.iter().map(|v| target.iter().position(|t| t == v).expect("variable missing in target")).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[pos[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn merged_vars(&self, other: &Self) -> Vec<String> {
        if self.vars == other.vars {
            return self.vars.clone();
        }
        let mut v: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        v.sort_by(|a, b| var_cmp(a, b));
        v.dedup();
        v
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect();
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let g = f(c);
                (!g.is_zero()).then(|| (m.clone(), g))
            })
            .collect();
        MPoly { vars: self.vars.clone(), terms }.pruned()
    }

    pub fn conjugate(&self) -> Self {
        self.map_coeffs(|c| c.conjugate())
    }

    /// True iff every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    pub fn derivative(&self, var: &str) -> Self {
        let Some(i) = self.var_index(var) else {
            return Self::zero();
        };
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (e, c.clone() * F::from_int(k as i64))
        });
        Self::build(self.vars.clone(), terms)
    }

    /// Replaces each bound variable by its image; unbound variables pass
    /// through unchanged.
    pub fn substitute(&self, bindings: &BTreeMap<String, MPoly<F>>) -> Self {
        if self.vars.iter().all(|v| !bindings.contains_key(v)) {
            return self.clone();
        }
        let images: Vec<MPoly<F>> =
            self.vars.iter().map(|v| bindings.get(v).cloned().unwrap_or_else(|| Self::var(v))).collect();
        let mut powers: Vec<Vec<MPoly<F>>> = images.iter().map(|p| vec![Self::one(), p.clone()]).collect();
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes constants for the named variables.
    pub fn substitute_values(&self, values: &[(&str, F)]) -> Self {
        let bindings = values.iter().map(|(n, v)| (n.to_string(), Self::constant(v.clone()))).collect();
        self.substitute(&bindings)
    }

    /// Evaluates at a full assignment; errors if some variable is unbound.
    pub fn eval(&self, values: &[(&str, F)]) -> Result<F> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                values
                    .iter()
                    .position(|(n, _)| n == v)
                    .ok_or_else(|| Error::InvalidInput(format!("no value for variable {v}")))
            })
            .collect::<Result<_>>()?;
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * values[idx[i]].1.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// `[c0, c1, ..., cd]` with `self = sum ci * var^i`; no `ci` mentions `var`.
    pub fn coefficients_in(&self, var: &str) -> Vec<MPoly<F>> {
        let Some(i) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Vec<u32>, F)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            buckets[k].push((e, c.clone()));
        }
        buckets.into_iter().map(|b| Self::build(self.vars.clone(), b)).collect()
    }

    /// Inverse of [`MPoly::coefficients_in`].
    pub fn from_coefficients_in(var: &str, coeffs: &[MPoly<F>]) -> Self {
        let x = Self::var(var);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Exact division in graded-lex order; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inverse()?));
        }
        let vars = self.merged_vars(d);
        let dt = d.remap(&vars);
        let (dlm, dlc) = dt.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let dinv = dlc.inverse()?;
        let mut rem = self.remap(&vars);
        let mut quot: Vec<(Vec<u32>, F)> = Vec::new();
        while let Some((rlm, rlc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !dlm.divides(&rlm) {
                return None;
            }
            let qm: Vec<u32> = rlm.0.iter().zip(&dlm.0).map(|(a, b)| a - b).collect();
            let qc = rlc * dinv.clone();
            for (m, c) in &dt {
                let e = Monomial(m.0.iter().zip(&qm).map(|(a, b)| a + b).collect());
                accumulate(&mut rem, e, -(c.clone() * qc.clone()));
            }
            quot.push((qm, qc));
        }
        Some(Self::build(vars, quot))
    }

    /// Product of `x^k` with the polynomial, for a variable name.
    pub fn shift(&self, var: &str, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        self * &Self::var(var).pow(k)
    }

    /// Homogenizes to the given total degree with `var`.
    pub fn homogenize(&self, var: &str, degree: u32) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let t = Self::build(self.vars.clone(), [(m.0.clone(), c.clone())]);
            acc = acc + t.shift(var, degree - m.degree());
        }
        acc
    }
}

fn accumulate<F: Field>(map: &mut BTreeMap<Monomial, F>, m: Monomial, c: F) {
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<F: Field> MPoly<F> {
    fn add_ref(&self, other: &Self, negate: bool) -> Self {
        let vars = self.merged_vars(other);
        let mut terms = self.remap(&vars);
        for (m, c) in other.remap(&vars) {
            accumulate(&mut terms, m, if negate { -c } else { c });
        }
        MPoly { vars, terms }.pruned()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let vars = self.merged_vars(other);
        let a = self.remap(&vars);
        let b = other.remap(&vars);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let e = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                accumulate(&mut terms, e, ca.clone() * cb.clone());
            }
        }
        MPoly { vars, terms }.pruned()
    }
}

impl<F: Field> Zero for MPoly<F> {
    fn zero() -> Self {
        MPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for MPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<'a, F: Field> Add<&'a MPoly<F>> for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, o: &MPoly<F>) -> MPoly<F> {
        self.add_ref(o, false)
    }
}

impl<'a, F: Field> Sub<&'a MPoly<F>> for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, o: &MPoly<F>) -> MPoly<F> {
        self.add_ref(o, true)
    }
}

impl<'a, F: Field> Mul<&'a MPoly<F>> for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, o: &MPoly<F>) -> MPoly<F> {
        self.mul_ref(o)
    }
}

impl<F: Field> Add for MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, o: MPoly<F>) -> MPoly<F> {
        self.add_ref(&o, false)
    }
}

impl<F: Field> Sub for MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, o: MPoly<F>) -> MPoly<F> {
        self.add_ref(&o, true)
    }
}

impl<F: Field> Mul for MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, o: MPoly<F>) -> MPoly<F> {
        self.mul_ref(&o)
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        MPoly { vars: self.vars, terms }
    }
}

impl<F: Field> ExactDiv for MPoly<F> {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
}

/// Splits a rendered coefficient into (negative, body, needs parentheses).
fn split_sign(s: &str) -> (bool, &str, bool) {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let compound = body.contains(" + ") || body.contains(" - ");
    if compound {
        (false, s, true)
    } else {
        (neg, body, false)
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    /// Canonical rendering: descending graded-lex, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let rendered = c.to_string();
            let (neg, body, compound) = split_sign(&rendered);
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
                    .collect();
            let mono = mono.join("*");
            match (k == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let coeff = if compound { format!("({body})") } else { body.to_string() };
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}
