//! Cubic surfaces: containment of lines, restriction to lines, gradient,
//! the linear space of cubics through a triple of lines, and a heuristic
//! finite-field smoothness screen.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fforacle::{singular_point, Reduction, X_VARS};
use crate::linalg;
use crate::poly::{BinaryForm, MPoly};
use crate::projgeom::{ProjLine, ProjPoint};
use crate::scalars::{Field, Scalar};

/// Names of the two binary-form variables used while restricting.
const LINE_VARS: [&str; 2] = ["s_", "t_"];

#[derive(Clone, Debug, PartialEq)]
pub struct CubicSurface<F> {
    form: MPoly<F>,
}

impl<F: Field> CubicSurface<F> {
    pub fn new(form: MPoly<F>) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::NotCubic("zero form".into()));
        }
        if let Some(v) = form.vars().iter().find(|v| !X_VARS.contains(&v.as_str())) {
            return Err(Error::NotCubic(format!("unexpected variable {v}")));
        }
        if !form.is_homogeneous() || form.total_degree() != Some(3) {
            return Err(Error::NotCubic(format!("{form} is not homogeneous of degree 3")));
        }
        Ok(CubicSurface { form })
    }

    pub fn form(&self) -> &MPoly<F> {
        &self.form
    }

    pub fn eval(&self, x: &ProjPoint<F>) -> F {
        let c = x.coords();
        let vals: Vec<(&str, F)> = X_VARS.iter().zip(c).map(|(v, c)| (*v, c.clone())).collect();
        self.form.substitute_values(&vals).constant_value().unwrap_or_else(F::zero)
    }

    /// `f` evaluated at a point with polynomial coordinates.
    pub fn compose(&self, x: &ProjPoint<MPoly<F>>) -> MPoly<F> {
        let bindings: BTreeMap<String, MPoly<F>> =
            X_VARS.iter().zip(x.coords()).map(|(v, c)| (v.to_string(), c.clone())).collect();
        self.form.substitute(&bindings)
    }

    pub fn gradient(&self) -> [MPoly<F>; 4] {
        X_VARS.map(|v| self.form.derivative(v))
    }

    /// `f(u a + v b)` as a binary cubic whose coefficients are polynomials in
    /// the line's parameters.
    pub fn restrict_to_sym_line(&self, l: &ProjLine<MPoly<F>>) -> BinaryForm<MPoly<F>> {
        let (a, b) = l.points();
        let (s, t) = (MPoly::var(LINE_VARS[0]), MPoly::var(LINE_VARS[1]));
        let x = ProjPoint::combine(&s, a, &t, b).expect("generic combination is nonzero");
        BinaryForm::from_poly(&self.compose(&x), LINE_VARS[0], LINE_VARS[1], 3).expect("cubic restriction")
    }

    pub fn restrict_to_line(&self, l: &ProjLine<F>) -> BinaryForm<F> {
        self.restrict_to_sym_line(&l.lift()).to_constant().expect("numeric line")
    }

    pub fn contains_line(&self, l: &ProjLine<F>) -> bool {
        self.restrict_to_line(l).is_zero()
    }

    pub fn conjugate(&self) -> Self {
        CubicSurface { form: self.form.conjugate() }
    }

    pub fn is_rational(&self) -> bool {
        self.form.is_rational()
    }

    pub fn scale(&self, c: &F) -> Result<Self> {
        CubicSurface::new(self.form.scale(c))
    }
}

/// Two skew lines and a third line meeting both.
#[derive(Clone, Debug)]
pub struct LineTriple<F> {
    pub l1: ProjLine<F>,
    pub l2: ProjLine<F>,
    pub m: Option<ProjLine<F>>,
}

impl<F: Field> LineTriple<F> {
    pub fn new(l1: ProjLine<F>, l2: ProjLine<F>, m: Option<ProjLine<F>>) -> Result<Self> {
        if l1.meets(&l2) {
            return Err(Error::InvalidInput("lines l1 and l2 are not skew".into()));
        }
        if let Some(m) = &m {
            if !m.meets(&l1) || !m.meets(&l2) {
                return Err(Error::InvalidInput("line m must meet both l1 and l2".into()));
            }
        }
        Ok(LineTriple { l1, l2, m })
    }

    /// True iff conjugation swaps `l1` and `l2` and fixes `m`.
    pub fn is_conjugate_stable(&self) -> bool {
        !self.l1.is_rational()
            && self.l1.conjugate().same_line(&self.l2)
            && self.m.as_ref().is_none_or(ProjLine::is_rational)
    }

    /// Both lines rational, or a conjugate-stable pair.
    pub fn is_real(&self) -> bool {
        (self.l1.is_rational() && self.l2.is_rational() && self.m.as_ref().is_none_or(ProjLine::is_rational))
            || self.is_conjugate_stable()
    }

    pub fn lines(&self) -> Vec<&ProjLine<F>> {
        [Some(&self.l1), Some(&self.l2), self.m.as_ref()].into_iter().flatten().collect()
    }
}

/// The cubic monomials in x0..x3, in descending graded-lex order.
pub fn cubic_monomials<F: Field>() -> Vec<MPoly<F>> {
    let mut out = Vec::with_capacity(20);
    for a in (0..=3u32).rev() {
        for b in (0..=3 - a).rev() {
            for c in (0..=3 - a - b).rev() {
                let d = 3 - a - b - c;
                out.push(MPoly::from_terms(&X_VARS, [(vec![a, b, c, d], F::one())]));
            }
        }
    }
    out
}

/// A basis of the space of cubic forms containing the lines of a triple.
#[derive(Clone, Debug)]
pub struct CubicSpace<F> {
    pub basis: Vec<MPoly<F>>,
    /// Rank of the 12 x 20 (or 8 x 20 without `m`) condition matrix.
    pub rank: usize,
}

impl<F: Field> CubicSpace<F> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `sum c_i B_i`.
    pub fn combine(&self, coeffs: &[F]) -> MPoly<F> {
        self.basis.iter().zip(coeffs).fold(MPoly::zero(), |acc, (b, c)| acc + b.scale(c))
    }
}

/// The matrix of linear conditions on the 20 cubic coefficients: four rows per
/// line, the coefficient vector of the restricted binary cubic.
pub fn line_conditions<F: Field>(lines: &[&ProjLine<F>]) -> Vec<Vec<F>> {
    let monos = cubic_monomials::<F>();
    let mut rows = Vec::new();
    for l in lines {
        let restricted: Vec<BinaryForm<F>> =
            monos.iter().map(|m| CubicSurface { form: m.clone() }.restrict_to_line(l)).collect();
        for k in 0..4 {
            rows.push(restricted.iter().map(|r| r.coeffs()[k].clone()).collect());
        }
    }
    rows
}

/// Solves for all cubics containing the lines of the triple. For a
/// conjugate-stable triple the basis is rebased over the rationals.
pub fn cubic_space<F: Field>(triple: &LineTriple<F>) -> CubicSpace<F> {
    let rows = line_conditions(&triple.lines());
    let rank = linalg::rank(&rows);
    let mut kernel = linalg::kernel(&rows, 20);
    if triple.is_conjugate_stable() {
        kernel = rational_span(&kernel);
    }
    let monos = cubic_monomials::<F>();
    let basis =
        kernel.iter().map(|v| monos.iter().zip(v).fold(MPoly::zero(), |acc, (m, c)| acc + m.scale(c))).collect();
    CubicSpace { basis, rank }
}

/// For a conjugation-stable subspace spanned by `vs`, a rational basis:
/// `v + conj(v)` and `t v + conj(t v)` for an irrational `t` span the same
/// space, since `v = (conj(t) tr(v) - tr(t v)) / (conj(t) - t)`.
fn rational_span<F: Field>(vs: &[Vec<F>]) -> Vec<Vec<F>> {
    let Some(t) = vs.iter().flatten().find(|c| !c.is_rational()).cloned() else {
        return vs.to_vec();
    };
    let tr = |v: &Vec<F>| -> Vec<F> { v.iter().map(|c| c.clone() + c.conjugate()).collect() };
    let mut cands = Vec::new();
    for v in vs {
        cands.push(tr(v));
        cands.push(tr(&v.iter().map(|c| c.clone() * t.clone()).collect()));
    }
    linalg::independent_subset(&cands)
}

/// Outcome of the finite-field singularity scan. Passing is evidence, not
/// proof, of smoothness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub primes: Vec<u64>,
    /// First prime with a singular point, and that point.
    pub singular: Option<(u64, [u64; 4])>,
}

impl SmoothnessReport {
    pub fn passed(&self) -> bool {
        self.singular.is_none()
    }

    pub fn summary(&self) -> String {
        match self.singular {
            Some((p, x)) => format!("singular point found mod {p} at ({}:{}:{}:{})", x[0], x[1], x[2], x[3]),
            None => format!("no singular point mod any tested prime {:?} (heuristic)", self.primes),
        }
    }
}

/// Scans `S(F_p)` for points where the gradient vanishes, over every good
/// prime among `primes`. Bad primes are skipped.
pub fn smoothness_screen(s: &CubicSurface<Scalar>, primes: &[u64]) -> Result<SmoothnessReport> {
    let minpoly = s.form.terms().find_map(|(_, c)| c.context().cloned());
    let mut used = Vec::new();
    for &p in primes {
        if p <= 3 {
            continue;
        }
        let Ok(red) = Reduction::new(p, minpoly.as_deref(), 0) else {
            continue;
        };
        let Ok(fp) = red.poly(&s.form, &X_VARS) else {
            continue;
        };
        if fp.is_zero() {
            continue;
        }
        used.push(p);
        if let Some(x) = singular_point(&fp) {
            return Ok(SmoothnessReport { primes: used, singular: Some((p, x)) });
        }
    }
    if used.is_empty() {
        return Err(Error::NoGoodPrime);
    }
    Ok(SmoothnessReport { primes: used, singular: None })
}

/// Euler's relation `sum x_i df/dx_i = 3 f`, as a sanity identity.
pub fn euler_defect<F: Field>(s: &CubicSurface<F>) -> MPoly<F> {
    let g = s.gradient();
    let lhs = X_VARS.iter().zip(g.iter()).fold(MPoly::zero(), |acc, (v, d)| acc + MPoly::var(v) * d.clone());
    lhs - s.form.scale(&F::from_int(3))
}

impl<F: Field> From<CubicSurface<F>> for MPoly<F> {
    fn from(s: CubicSurface<F>) -> Self {
        s.form
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat_int, MinPoly, Rational};
    use proptest::prelude::*;
    use std::sync::Arc;

    type P = MPoly<Scalar>;

    fn x(i: usize) -> P {
        P::var(X_VARS[i])
    }
    fn fermat() -> CubicSurface<Scalar> {
        CubicSurface::new((0..4).map(|i| x(i).pow(3)).fold(P::zero(), |a, b| a + b)).unwrap()
    }
    fn pt(c: [Scalar; 4]) -> ProjPoint<Scalar> {
        ProjPoint::new(c).unwrap()
    }
    fn ipt(c: [i64; 4]) -> ProjPoint<Scalar> {
        pt(c.map(Scalar::int))
    }
    fn w() -> Scalar {
        Scalar::generator(&Arc::new(MinPoly::omega()))
    }
    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    /// (l1, l2, m) on the Fermat cubic, homogenized with x0.
    fn fermat_triple() -> LineTriple<Scalar> {
        let (w, w2) = (w(), w() * w());
        let l1 = ProjLine::new(pt([s(1), -w2.clone(), s(0), s(0)]), pt([s(0), s(0), -w.clone(), s(1)])).unwrap();
        let l2 = ProjLine::new(pt([s(1), -w, s(0), s(0)]), pt([s(0), s(0), -w2, s(1)])).unwrap();
        let m = ProjLine::new(ipt([1, 0, -1, 0]), ipt([0, -1, 0, 1])).unwrap();
        LineTriple::new(l1, l2, Some(m)).unwrap()
    }

    #[test]
    fn rejects_non_cubics() {
        assert!(matches!(CubicSurface::new(x(0).pow(2)), Err(Error::NotCubic(_))));
        assert!(matches!(CubicSurface::new(x(0).pow(3) + x(1)), Err(Error::NotCubic(_))));
        assert!(matches!(CubicSurface::new(P::var("y1").pow(3)), Err(Error::NotCubic(_))));
        assert!(matches!(CubicSurface::<Scalar>::new(P::zero()), Err(Error::NotCubic(_))));
    }

    #[test]
    fn fermat_contains_its_triple() {
        let f = fermat();
        let t = fermat_triple();
        for l in t.lines() {
            assert!(f.contains_line(l));
            assert!(f.contains_line(&l.reversed()));
        }
        assert!(!f.contains_line(&ProjLine::new(ipt([1, 0, 0, 0]), ipt([0, 1, 0, 0])).unwrap()));
        assert!(t.is_conjugate_stable() && t.is_real());
    }

    #[test]
    fn restriction_examples() {
        let g = CubicSurface::new(x(0).pow(3) + x(1).pow(3)).unwrap();
        let l = ProjLine::new(ipt([1, 0, 0, 0]), ipt([0, 1, 0, 0])).unwrap();
        assert_eq!(g.restrict_to_line(&l).coeffs(), &[s(1), s(0), s(0), s(1)]);
    }

    #[test]
    fn gradient_and_euler() {
        let f = fermat();
        let g = f.gradient();
        for i in 0..4 {
            assert_eq!(g[i], x(i).pow(2).scale(&s(3)));
        }
        assert!(euler_defect(&f).is_zero());
        let cone = CubicSurface::new(x(0) * x(1) * x(2)).unwrap();
        let at = [(X_VARS[0], s(0)), (X_VARS[1], s(0)), (X_VARS[2], s(0)), (X_VARS[3], s(1))];
        for d in cone.gradient() {
            assert_eq!(d.eval(&at).unwrap(), s(0));
        }
    }

    #[test]
    fn fermat_lies_in_its_cubic_space() {
        let t = fermat_triple();
        let space = cubic_space(&t);
        assert_eq!(space.dimension(), 20 - space.rank);
        for b in &space.basis {
            assert!(b.is_rational());
            let c = CubicSurface::new(b.clone()).unwrap();
            for l in t.lines() {
                assert!(c.contains_line(l));
            }
        }
        let mut rows: Vec<Vec<Scalar>> = space.basis.iter().map(coeff_vector).collect();
        let r = linalg::rank(&rows);
        rows.push(coeff_vector(fermat().form()));
        assert_eq!(linalg::rank(&rows), r);
    }

    fn coeff_vector(f: &P) -> Vec<Scalar> {
        let monos = cubic_monomials::<Scalar>();
        let at = |m: &P| {
            let (mono, _) = m.terms().next().unwrap();
            f.terms().find(|(mm, _)| *mm == mono).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
        };
        monos.iter().map(at).collect()
    }

    #[test]
    fn smoothness_examples() {
        let r = smoothness_screen(&fermat(), &[7]).unwrap();
        assert!(r.passed());
        let cone = CubicSurface::new(x(0) * x(1) * x(2)).unwrap();
        let r = smoothness_screen(&cone, &[7]).unwrap();
        assert!(!r.passed());
        let cayley =
            CubicSurface::new(x(1) * x(2) * x(3) + x(0) * x(2) * x(3) + x(0) * x(1) * x(3) + x(0) * x(1) * x(2))
                .unwrap();
        assert!(!smoothness_screen(&cayley, &[7, 11]).unwrap().passed());
        assert_eq!(smoothness_screen(&fermat(), &[2, 3]), Err(Error::NoGoodPrime));
    }

    #[test]
    fn non_skew_triple_rejected() {
        let a = ProjLine::new(ipt([1, 0, 0, 0]), ipt([0, 1, 0, 0])).unwrap();
        let b = ProjLine::new(ipt([1, 0, 0, 0]), ipt([0, 0, 1, 0])).unwrap();
        assert!(matches!(LineTriple::new(a, b, None), Err(Error::InvalidInput(_))));
    }

    fn arb_form() -> impl Strategy<Value = P> {
        proptest::collection::vec(-3i64..4, 20)
            .prop_map(|cs| cubic_monomials::<Scalar>().iter().zip(cs).fold(P::zero(), |a, (m, c)| a + m.scale(&s(c))))
    }

    proptest! {
        #[test]
        fn restriction_is_linear(f in arb_form(), g in arb_form(), a in proptest::array::uniform4(-3i64..4), b in proptest::array::uniform4(-3i64..4)) {
            prop_assume!(!f.is_zero() && !g.is_zero() && !(f.clone() + g.clone()).is_zero());
            let (Ok(pa), Ok(pb)) = (ProjPoint::new(a.map(s)), ProjPoint::new(b.map(s))) else { return Ok(()); };
            let Ok(l) = ProjLine::new(pa, pb) else { return Ok(()); };
            let rf = CubicSurface::new(f.clone()).unwrap().restrict_to_line(&l);
            let rg = CubicSurface::new(g.clone()).unwrap().restrict_to_line(&l);
            let rs = CubicSurface::new(f + g).unwrap().restrict_to_line(&l);
            let sum: Vec<Scalar> = rf.coeffs().iter().zip(rg.coeffs()).map(|(x, y)| x.clone() + y.clone()).collect();
            prop_assert_eq!(rs.coeffs(), &sum[..]);
        }

        #[test]
        fn containment_invariant_under_scaling(k in 1i64..5, u in -3i64..4, v in 1i64..4) {
            let f = fermat();
            let t = fermat_triple();
            let scaled = f.scale(&Scalar::from(Rational::from(rat_int(k)))).unwrap();
            let m = t.m.unwrap();
            let (a, b) = m.points();
            let a2 = ProjPoint::combine(&s(v), a, &s(u), b).unwrap();
            let moved = ProjLine::new(a2, b.clone()).unwrap();
            prop_assert!(scaled.contains_line(&moved));
        }
    }
}
