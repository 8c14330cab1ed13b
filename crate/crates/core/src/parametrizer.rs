//! The transversal-line parametrization of a cubic surface through two skew
//! lines, its factor maps, the biquadratic variant and verification.
//!
//! A point `x` of the plane `H` determines the unique line through `x`
//! meeting `l1` and `l2`; that line meets the surface in a third point `q_x`.
//! The map `x -> q_x` is computed symbolically over the chart
//! `x = y0 A + y1 B + y2 C` of `H`, removing the two known intersection points
//! by exact division of the restricted binary cubic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{gcd_bihomogeneous, gcd_many, BinaryForm, MPoly, RatFn};
use crate::projgeom::{transversal, ProjLine, ProjPlane, ProjPoint};
use crate::scalars::Field;
use crate::surface::{CubicSurface, LineTriple};

pub const Y_VARS: [&str; 3] = ["y0", "y1", "y2"];
pub const U_VARS: [&str; 2] = ["u0", "u1"];
pub const V_VARS: [&str; 2] = ["v0", "v1"];

const SAMPLE_SEED: u64 = 0x7a11_5eed;

/// A plane with three points spanning it; parameters `(y0 : y1 : y2)` map to
/// `y0 A + y1 B + y2 C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart<F> {
    pub plane: ProjPlane<F>,
    pub basis: [ProjPoint<F>; 3],
}

impl<F: Field> Chart<F> {
    pub fn new(plane: ProjPlane<F>, basis: [ProjPoint<F>; 3]) -> Result<Self> {
        if let Some(i) = basis.iter().position(|p| !plane.contains(p)) {
            return Err(Error::InvalidInput(format!("chart point {i} is not on the plane")));
        }
        let rows: Vec<Vec<F>> = basis.iter().map(|p| p.coords().to_vec()).collect();
        if linalg::rank(&rows) != 3 {
            return Err(Error::InvalidInput("chart points do not span the plane".into()));
        }
        Ok(Chart { plane, basis })
    }

    /// Chart with the given first two points (a line in the plane) completed
    /// by the first coordinate point of the plane off that line, or else by
    /// the first point `h_j e_i - h_i e_j` off it.
    pub fn through_line(plane: ProjPlane<F>, a: ProjPoint<F>, b: ProjPoint<F>) -> Result<Self> {
        let line = ProjLine::new(a.clone(), b.clone())?;
        let h = plane.coeffs().clone();
        let e = |i: usize| unit_point::<F>(i);
        let mut cands: Vec<ProjPoint<F>> = (0..4).filter(|&i| h[i].is_zero()).map(e).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                let c: [F; 4] = std::array::from_fn(|k| {
                    if k == i {
                        h[j].clone()
                    } else if k == j {
                        -h[i].clone()
                    } else {
                        F::zero()
                    }
                });
                if let Ok(p) = ProjPoint::new(c) {
                    cands.push(p);
                }
            }
        }
        let c = cands
            .into_iter()
            .find(|p| !line.contains_point(p))
            .ok_or_else(|| Error::DegenerateChart("no chart point off the line".into()))?;
        Chart::new(plane, [a, b, c])
    }

    /// Chart from the kernel basis of the plane equation.
    pub fn of_plane(plane: ProjPlane<F>) -> Result<Self> {
        let k = linalg::kernel(&[plane.coeffs().to_vec()], 4);
        let pts: Vec<ProjPoint<F>> = k
            .into_iter()
            .map(|v| ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]))
            .collect::<Result<_>>()?;
        let [a, b, c]: [ProjPoint<F>; 3] = pts.try_into().map_err(|_| Error::DegenerateChart("plane".into()))?;
        Chart::new(plane, [a, b, c])
    }

    /// `y0 A + y1 B + y2 C` with symbolic `y`.
    pub fn symbolic_point(&self) -> ProjPoint<MPoly<F>> {
        let y: Vec<MPoly<F>> = Y_VARS.iter().map(|v| MPoly::var(v)).collect();
        self.combine_poly(&y)
    }

    fn combine_poly(&self, y: &[MPoly<F>]) -> ProjPoint<MPoly<F>> {
        let coords: [MPoly<F>; 4] =
            std::array::from_fn(|i| (0..3).fold(MPoly::zero(), |acc, k| acc + y[k].scale(&self.basis[k].coords()[i])));
        ProjPoint::new(coords).expect("independent chart basis")
    }

    pub fn point_at(&self, y: &[F; 3]) -> Option<ProjPoint<F>> {
        let coords: [F; 4] = std::array::from_fn(|i| {
            (0..3).fold(F::zero(), |acc, k| acc + y[k].clone() * self.basis[k].coords()[i].clone())
        });
        ProjPoint::new(coords).ok()
    }
}

fn unit_point<F: Field>(i: usize) -> ProjPoint<F> {
    ProjPoint::new(std::array::from_fn(|k| if k == i { F::one() } else { F::zero() })).expect("unit")
}

/// Validated input of the engine.
#[derive(Clone, Debug)]
pub struct ParamInput<F> {
    pub surface: CubicSurface<F>,
    pub triple: LineTriple<F>,
    pub chart: Chart<F>,
}

impl<F: Field> ParamInput<F> {
    /// Checks the line invariants and fixes the chart: the explicit chart if
    /// given, else a chart of the explicit plane, else [`choose_plane`].
    pub fn new(
        surface: CubicSurface<F>,
        triple: LineTriple<F>,
        plane: Option<ProjPlane<F>>,
        chart: Option<[ProjPoint<F>; 3]>,
    ) -> Result<Self> {
        for (name, l) in [("l1", &triple.l1), ("l2", &triple.l2)] {
            if !surface.contains_line(l) {
                return Err(Error::InputNotOnSurface(name.into()));
            }
        }
        if let Some(m) = &triple.m {
            if !surface.contains_line(m) {
                return Err(Error::InputNotOnSurface("m".into()));
            }
        }
        if !triple.is_real() {
            return Err(Error::InvalidInput("l1 and l2 must both be rational or be conjugate to each other".into()));
        }
        let plane = match (plane, &chart) {
            (Some(p), _) => Some(p),
            (None, Some(c)) => Some(plane_of(c)?),
            (None, None) => None,
        };
        let chart = match (plane, chart) {
            (Some(p), Some(c)) => Chart::new(p, c)?,
            (Some(p), None) => match &triple.m {
                Some(m) if p.contains_line(m) => {
                    let (a, b) = m.points();
                    Chart::through_line(p, a.clone(), b.clone())?
                }
                _ => Chart::of_plane(p)?,
            },
            (None, None) => {
                let m = triple
                    .m
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInput("either the line m or a plane is required".into()))?;
                choose_plane(&triple.l1, &triple.l2, m)?
            }
            (None, Some(_)) => unreachable!(),
        };
        let h = &chart.plane;
        if !h.is_rational() {
            return Err(Error::InvalidInput("the plane must be defined over the rationals".into()));
        }
        for (name, l) in [("l1", &triple.l1), ("l2", &triple.l2)] {
            if h.contains_line(l) {
                return Err(Error::InvalidInput(format!("the plane contains {name}")));
            }
        }
        Ok(ParamInput { surface, triple, chart })
    }
}

fn plane_of<F: Field>(pts: &[ProjPoint<F>; 3]) -> Result<ProjPlane<F>> {
    let rows: Vec<Vec<F>> = pts.iter().map(|p| p.coords().to_vec()).collect();
    let k = linalg::kernel(&rows, 4);
    if k.len() != 1 {
        return Err(Error::InvalidInput("chart points do not span a plane".into()));
    }
    ProjPlane::new([k[0][0].clone(), k[0][1].clone(), k[0][2].clone(), k[0][3].clone()])
}

/// Candidate planes in a fixed order: `x_i = 0`, then `x_i + x_j`, `x_i - x_j`.
fn candidate_planes<F: Field>() -> Vec<ProjPlane<F>> {
    let unit = |i: usize| -> [F; 4] { std::array::from_fn(|k| if k == i { F::one() } else { F::zero() }) };
    let mut out: Vec<ProjPlane<F>> = (0..4).map(|i| ProjPlane::new(unit(i)).unwrap()).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            for sign in [F::one(), -F::one()] {
                let mut c = unit(i);
                c[j] = sign;
                out.push(ProjPlane::new(c).unwrap());
            }
        }
    }
    out
}

/// A rational plane through `m` containing neither `l1` nor `l2`, with a chart
/// whose first two points span `m`. Scans a fixed candidate list, then the
/// pencil of planes through `m` by increasing height.
pub fn choose_plane<F: Field>(l1: &ProjLine<F>, l2: &ProjLine<F>, m: &ProjLine<F>) -> Result<Chart<F>> {
    if !m.meets(l1) || !m.meets(l2) {
        return Err(Error::InvalidInput("line m must meet both l1 and l2".into()));
    }
    let ok = |h: &ProjPlane<F>| h.contains_line(m) && !h.contains_line(l1) && !h.contains_line(l2) && h.is_rational();
    let (a, b) = m.points();
    if let Some(h) = candidate_planes().into_iter().find(|h| ok(h)) {
        return Chart::through_line(h, a.clone(), b.clone());
    }
    let rows = vec![a.coords().to_vec(), b.coords().to_vec()];
    let mut pencil = rational_pair(linalg::kernel(&rows, 4));
    for v in pencil.iter_mut() {
        scale_to_rational(v);
    }
    for height in 0i64.. {
        for (s, t) in [(height, 1), (-height, 1), (1, height), (1, -height)] {
            let c: [F; 4] =
                std::array::from_fn(|i| F::from_int(s) * pencil[0][i].clone() + F::from_int(t) * pencil[1][i].clone());
            if let Ok(h) = ProjPlane::new(c) {
                if ok(&h) {
                    return Chart::through_line(h, a.clone(), b.clone());
                }
            }
        }
    }
    unreachable!("the pencil through m has at most two excluded planes")
}

/// For a conjugation-stable 2-dimensional space, a spanning pair of rational
/// vectors (traces), falling back to the input when it is already rational.
fn rational_pair<F: Field>(k: Vec<Vec<F>>) -> Vec<Vec<F>> {
    if k.iter().flatten().all(Field::is_rational) {
        return k;
    }
    let t = k.iter().flatten().find(|c| !c.is_rational()).unwrap().clone();
    let mut cands = Vec::new();
    for v in &k {
        cands.push(v.iter().map(|c| c.clone() + c.conjugate()).collect::<Vec<F>>());
        cands.push(v.iter().map(|c| (c.clone() * t.clone()) + (c.clone() * t.clone()).conjugate()).collect());
    }
    linalg::independent_subset(&cands)
}

fn scale_to_rational<F: Field>(v: &mut [F]) {
    if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
        let inv = lead.inverse().unwrap();
        for c in v.iter_mut() {
            *c = c.clone() * inv.clone();
        }
    }
}

/// The parametrization `Φ = (Φ0 : Φ1 : Φ2 : Φ3)` in `(y0, y1, y2)`.
#[derive(Clone, Debug)]
pub struct ParamResult<F> {
    pub phi: [MPoly<F>; 4],
    pub degree: u32,
    pub chart: Chart<F>,
    pub l1: ProjLine<F>,
    pub l2: ProjLine<F>,
    /// Common factor removed from the unreduced forms (monic).
    pub gcd_removed: MPoly<F>,
}

impl<F: Field> ParamResult<F> {
    pub fn point(&self) -> ProjPoint<MPoly<F>> {
        ProjPoint::new(self.phi.clone()).expect("nonzero parametrization")
    }

    /// `Φ(y)`, or `None` at a base point.
    pub fn eval(&self, y: &[F; 3]) -> Option<ProjPoint<F>> {
        let vals: Vec<(&str, F)> = Y_VARS.iter().zip(y).map(|(v, c)| (*v, c.clone())).collect();
        let c: Vec<F> = self.phi.iter().map(|p| p.eval(&vals).expect("y variables only")).collect();
        ProjPoint::new([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]).ok()
    }

    pub fn is_rational(&self) -> bool {
        self.phi.iter().all(MPoly::is_rational)
    }

    /// The affine view `x_i = Φ_i / Φ_0` at `y0 = 1`, each reduced with monic
    /// denominator.
    pub fn affine(&self) -> Result<[RatFn<F>; 3]> {
        let one = [(Y_VARS[0], F::one())];
        let d = self.phi[0].substitute_values(&one);
        if d.is_zero() {
            return Err(Error::DegenerateChart("Φ0 vanishes on the affine chart".into()));
        }
        let r = |i: usize| RatFn::reduced(self.phi[i].substitute_values(&one), d.clone());
        Ok([r(1)?, r(2)?, r(3)?])
    }
}

/// Where `plane(x, l2)` meets `l1` and `plane(x, l1)` meets `l2`, as
/// coordinates on each line.
pub struct Phi1<R> {
    pub on_l1: ProjPoint<R>,
    pub on_l2: ProjPoint<R>,
    pub coords_l1: (R, R),
    pub coords_l2: (R, R),
}

/// `Φ1(x) = (l_x ∩ l1, l_x ∩ l2)` for a numeric point of the plane.
pub fn phi1<F: Field>(x: &ProjPoint<F>, input: &ParamInput<F>) -> Result<Phi1<F>> {
    if !input.chart.plane.contains(x) {
        return Err(Error::InvalidInput("point is not on the plane".into()));
    }
    let t = transversal(x, &input.triple.l1, &input.triple.l2)?;
    Ok(Phi1 { on_l1: t.on_l1, on_l2: t.on_l2, coords_l1: t.coords_on_l1, coords_l2: t.coords_on_l2 })
}

/// `Φ1` at a symbolic point.
pub fn phi1_symbolic<F: Field>(x: &ProjPoint<MPoly<F>>, input: &ParamInput<F>) -> Result<Phi1<MPoly<F>>> {
    let t = transversal(x, &input.triple.l1.lift(), &input.triple.l2.lift())
        .map_err(|_| Error::DegenerateChart("symbolic point lies on l1 or l2".into()))?;
    Ok(Phi1 { on_l1: t.on_l1, on_l2: t.on_l2, coords_l1: t.coords_on_l1, coords_l2: t.coords_on_l2 })
}

/// The third intersection of the line `span{p, q}` with the surface, for
/// points `p, q` on the surface with polynomial coordinates: `c1 p - c0 q`,
/// where `c0 s + c1 t` is what is left of `f(s p + t q)` after dividing out
/// `t` and `s`.
pub fn third_point<F: Field>(
    surface: &CubicSurface<F>,
    p: &ProjPoint<MPoly<F>>,
    q: &ProjPoint<MPoly<F>>,
) -> Result<[MPoly<F>; 4]> {
    let line = ProjLine::new(p.clone(), q.clone()).map_err(|_| Error::DegenerateChart("chord collapses".into()))?;
    let cubic = surface.restrict_to_sym_line(&line);
    let lin = cubic
        .exact_divide(&BinaryForm::linear(MPoly::zero(), MPoly::one()))
        .and_then(|r| r.exact_divide(&BinaryForm::linear(MPoly::one(), MPoly::zero())))
        .map_err(|_| Error::InputNotOnSurface("marked intersection point".into()))?;
    let (c0, c1) = (&lin.coeffs()[0], &lin.coeffs()[1]);
    let out: [MPoly<F>; 4] = std::array::from_fn(|i| c1 * &p.coords()[i] - c0 * &q.coords()[i]);
    if out.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateChart("the chord lies in the surface identically".into()));
    }
    Ok(out)
}

/// Runs the construction over the input chart.
pub fn parametrize<F: Field>(input: &ParamInput<F>) -> Result<ParamResult<F>> {
    let x = input.chart.symbolic_point();
    let p1 = phi1_symbolic(&x, input)?;
    let raw = third_point(&input.surface, &p1.on_l1, &p1.on_l2)?;
    let g = gcd_many(&raw)?;
    let mut phi: [MPoly<F>; 4] = raw.clone();
    if !g.is_constant() {
        for c in phi.iter_mut() {
            *c = c.div_exact(&g).ok_or(Error::GcdCertificate)?;
        }
    }
    normalize(&mut phi);
    let degree = phi.iter().filter_map(MPoly::total_degree).max().unwrap_or(0);
    Ok(ParamResult {
        phi,
        degree,
        chart: input.chart.clone(),
        l1: input.triple.l1.clone(),
        l2: input.triple.l2.clone(),
        gcd_removed: g,
    })
}

/// Scales so that the leading coefficient of the first nonzero form is 1.
fn normalize<F: Field>(phi: &mut [MPoly<F>]) {
    let lc = phi.iter().find(|p| !p.is_zero()).and_then(|p| p.leading_coeff()).cloned();
    if let Some(inv) = lc.and_then(|c| c.inverse()) {
        for p in phi.iter_mut() {
            *p = p.scale(&inv);
        }
    }
}

/// The map `P1 x P1 -> S` through chords `span{u, v}` with `u ∈ l1`, `v ∈ l2`.
#[derive(Clone, Debug)]
pub struct BiquadResult<F> {
    pub phi2: [MPoly<F>; 4],
    pub bidegree: (u32, u32),
    pub gcd_removed: MPoly<F>,
}

impl<F: Field> BiquadResult<F> {
    pub fn eval(&self, u: &(F, F), v: &(F, F)) -> Option<ProjPoint<F>> {
        let vals =
            [(U_VARS[0], u.0.clone()), (U_VARS[1], u.1.clone()), (V_VARS[0], v.0.clone()), (V_VARS[1], v.1.clone())];
        let c: Vec<F> = self.phi2.iter().map(|p| p.eval(&vals).expect("u, v only")).collect();
        ProjPoint::new([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]).ok()
    }
}

/// `Φ2(u, v)`, the third point of the chord through `u0 P1 + u1 Q1` and
/// `v0 P2 + v1 Q2`. Requires both lines rational.
pub fn biquadratic<F: Field>(input: &ParamInput<F>) -> Result<BiquadResult<F>> {
    let (l1, l2) = (&input.triple.l1, &input.triple.l2);
    if !l1.is_rational() || !l2.is_rational() {
        return Err(Error::InvalidInput("the biquadratic map needs both lines rational".into()));
    }
    let along = |l: &ProjLine<F>, vars: [&str; 2]| {
        let lifted = l.lift();
        let (a, b) = lifted.points();
        ProjPoint::combine(&MPoly::var(vars[0]), a, &MPoly::var(vars[1]), b).expect("nonzero")
    };
    let u = along(l1, U_VARS);
    let v = along(l2, V_VARS);
    let raw = third_point(&input.surface, &u, &v)?;
    let g = gcd_bihomogeneous(&raw, U_VARS, V_VARS)?;
    let mut phi2 = raw;
    if !g.is_constant() {
        for c in phi2.iter_mut() {
            *c = c.div_exact(&g).ok_or(Error::GcdCertificate)?;
        }
    }
    normalize(&mut phi2);
    let bideg = |vars: [&str; 2]| {
        phi2.iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.partial_degrees(&vars).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    };
    let bidegree = (bideg(U_VARS), bideg(V_VARS));
    Ok(BiquadResult { phi2, bidegree, gcd_removed: g })
}

/// The point where a line meets a plane not containing it.
pub fn line_meet_plane<F: Field>(l: &ProjLine<F>, h: &ProjPlane<F>) -> Option<ProjPoint<F>> {
    let (a, b) = l.points();
    ProjPoint::combine(&h.eval(b), a, &-h.eval(a), b)
}

/// True iff the plane contains one of the transversals of `l1, l2` lying on
/// the surface. Such a line meets `l1` and `l2` inside the plane, so it can
/// only be the line through `l1 ∩ H` and `l2 ∩ H`.
pub fn plane_contains_transversal<F: Field>(
    surface: &CubicSurface<F>,
    l1: &ProjLine<F>,
    l2: &ProjLine<F>,
    h: &ProjPlane<F>,
) -> bool {
    let (Some(p1), Some(p2)) = (line_meet_plane(l1, h), line_meet_plane(l2, h)) else {
        return false;
    };
    ProjLine::new(p1, p2).is_ok_and(|l| surface.contains_line(&l))
}

/// Degree of `Φ` after removing common factors: 3 when the plane contains a
/// transversal on the surface, 4 otherwise.
pub fn predicted_degree<F: Field>(
    surface: &CubicSurface<F>,
    l1: &ProjLine<F>,
    l2: &ProjLine<F>,
    h: &ProjPlane<F>,
) -> u32 {
    if plane_contains_transversal(surface, l1, l2, h) {
        3
    } else {
        4
    }
}

/// Outcome of [`verify`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct VerifyReport {
    pub identity_ok: bool,
    pub gcd_unit: bool,
    pub degree: u32,
    pub predicted_degree: u32,
    pub degree_ok: bool,
    /// `"Q"` or the defining polynomial of the extension.
    pub field_of_definition: String,
    pub descent_ok: bool,
    pub injective_sample_ok: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            ("identity", self.identity_ok),
            ("gcd", self.gcd_unit),
            ("degree", self.degree_ok),
            ("descent", self.descent_ok),
            ("injectivity", self.injective_sample_ok),
        ];
        checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::Verification(self.failures().join(", ")))
        }
    }
}

/// Re-checks a parametrization against its surface: the identity `f(Φ) = 0`,
/// coprimality, the degree law, rationality when the line pair is real, and
/// injectivity on 25 seeded random parameter points.
pub fn verify<F: Field>(result: &ParamResult<F>, surface: &CubicSurface<F>) -> VerifyReport {
    let identity_ok = result.phi.iter().any(|p| !p.is_zero()) && surface.compose(&result.point()).is_zero();
    let gcd_unit = gcd_many(&result.phi).is_ok_and(|g| g.is_constant());
    let degree = result.phi.iter().filter_map(MPoly::total_degree).max().unwrap_or(0);
    let homogeneous =
        result.phi.iter().all(|p| p.is_zero() || (p.is_homogeneous() && p.total_degree() == Some(degree)));
    let predicted = predicted_degree(surface, &result.l1, &result.l2, &result.chart.plane);
    let rational = result.is_rational();
    let field_of_definition = if rational {
        "Q".to_string()
    } else {
        result
            .phi
            .iter()
            .flat_map(|p| p.terms().map(|(_, c)| c.clone()))
            .find(|c| !c.is_rational())
            .map(|c| extension_name(&c))
            .unwrap_or_else(|| "Q".into())
    };
    let real_pair = (result.l1.is_rational() && result.l2.is_rational())
        || (!result.l1.is_rational() && result.l1.conjugate().same_line(&result.l2));
    VerifyReport {
        identity_ok,
        gcd_unit,
        degree,
        predicted_degree: predicted,
        degree_ok: homogeneous && degree == predicted,
        field_of_definition,
        descent_ok: !real_pair || rational,
        injective_sample_ok: injective_sample(result, 25),
    }
}

fn extension_name<F: Field>(c: &F) -> String {
    format!("Q({c})")
}

/// Distinct parameter points map to distinct image points.
pub fn injective_sample<F: Field>(result: &ParamResult<F>, n: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut images: Vec<ProjPoint<F>> = Vec::new();
    let mut params: Vec<(i64, i64)> = Vec::new();
    let mut tries = 0;
    while images.len() < n {
        tries += 1;
        if tries > 50 * n {
            return false;
        }
        let (a, b) = (rng.gen_range(-40i64..=40), rng.gen_range(-40i64..=40));
        if params.contains(&(a, b)) {
            continue;
        }
        let Some(img) = result.eval(&[F::one(), F::from_int(a), F::from_int(b)]) else {
            continue;
        };
        if images.iter().any(|p| p.same_point(&img)) {
            return false;
        }
        params.push((a, b));
        images.push(img);
    }
    true
}

/// `Φ` restricted to the line of the chart through parameter points `p`, `q`
/// (in `y` coordinates), as forms in `(t0, t1)`.
pub fn restrict_to_chart_line<F: Field>(phi: &[MPoly<F>; 4], p: &[F; 3], q: &[F; 3]) -> [MPoly<F>; 4] {
    let (t0, t1) = (MPoly::var("t0"), MPoly::var("t1"));
    let bindings: BTreeMap<String, MPoly<F>> =
        Y_VARS.iter().enumerate().map(|(k, v)| (v.to_string(), t0.scale(&p[k]) + t1.scale(&q[k]))).collect();
    std::array::from_fn(|i| phi[i].substitute(&bindings))
}

/// True iff the four forms define a constant map to projective space, i.e.
/// they are proportional to a constant vector (and not all zero).
pub fn is_constant_map<F: Field>(forms: &[MPoly<F>]) -> bool {
    // a coefficient vector of some monomial where the forms are not all zero
    let Some(reference) = forms.iter().find(|p| !p.is_zero()).and_then(|p| p.leading_term()).map(|(m, _)| m.clone())
    else {
        return false;
    };
    let c: Vec<F> = forms
        .iter()
        .map(|p| p.terms().find(|(m, _)| **m == reference).map(|(_, c)| c.clone()).unwrap_or_else(F::zero))
        .collect();
    (0..forms.len()).all(|i| (i + 1..forms.len()).all(|j| (forms[i].scale(&c[j]) - forms[j].scale(&c[i])).is_zero()))
}

/// Parameters of two points spanning `m` in the chart, if the plane contains
/// `m` and the chart's first two points span it.
pub fn chart_params_of_line<F: Field>(chart: &Chart<F>, m: &ProjLine<F>) -> Option<([F; 3], [F; 3])> {
    let (a, b) = m.points();
    Some((chart_coords(chart, a)?, chart_coords(chart, b)?))
}

/// `y` with `y0 A + y1 B + y2 C = x`, for `x` on the plane.
pub fn chart_coords<F: Field>(chart: &Chart<F>, x: &ProjPoint<F>) -> Option<[F; 3]> {
    // solve the 4x3 system [A B C] y = x
    let rows: Vec<Vec<F>> = (0..4)
        .map(|i| {
            let mut r: Vec<F> = chart.basis.iter().map(|p| p.coords()[i].clone()).collect();
            r.push(-x.coords()[i].clone());
            r
        })
        .collect();
    let k = linalg::kernel(&rows, 4);
    let v = k.into_iter().find(|v| !v[3].is_zero())?;
    let inv = v[3].inverse()?;
    Some([v[0].clone() * inv.clone(), v[1].clone() * inv.clone(), v[2].clone() * inv])
}

/// Seeded random small integer parameter triples with `y0 = 1`.
pub fn sample_params<F: Field>(seed: u64, n: usize, range: i64) -> Vec<[F; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| [F::one(), F::from_int(rng.gen_range(-range..=range)), F::from_int(rng.gen_range(-range..=range))])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fforacle::X_VARS;
    use crate::scalars::{MinPoly, Scalar};
    use std::sync::Arc;

    type P = MPoly<Scalar>;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }
    fn pt(c: [Scalar; 4]) -> ProjPoint<Scalar> {
        ProjPoint::new(c).unwrap()
    }
    fn ipt(c: [i64; 4]) -> ProjPoint<Scalar> {
        pt(c.map(s))
    }
    fn x(i: usize) -> P {
        P::var(X_VARS[i])
    }
    fn fermat() -> CubicSurface<Scalar> {
        CubicSurface::new((0..4).map(|i| x(i).pow(3)).fold(P::zero(), |a, b| a + b)).unwrap()
    }
    fn fermat_triple() -> LineTriple<Scalar> {
        let w = Scalar::generator(&Arc::new(MinPoly::omega()));
        let w2 = w.clone() * w.clone();
        let l1 = ProjLine::new(pt([s(1), -w2.clone(), s(0), s(0)]), pt([s(0), s(0), -w.clone(), s(1)])).unwrap();
        let l2 = ProjLine::new(pt([s(1), -w, s(0), s(0)]), pt([s(0), s(0), -w2, s(1)])).unwrap();
        let m = ProjLine::new(ipt([1, 0, -1, 0]), ipt([0, -1, 0, 1])).unwrap();
        LineTriple::new(l1, l2, Some(m)).unwrap()
    }

    #[test]
    fn fermat_plane_choice() {
        let t = fermat_triple();
        let chart = choose_plane(&t.l1, &t.l2, t.m.as_ref().unwrap()).unwrap();
        assert!(chart.plane.same_plane(&ProjPlane::new([s(1), s(0), s(1), s(0)]).unwrap()));
        assert!(chart.basis[2].same_point(&ipt([0, 1, 0, 0])));
    }

    #[test]
    fn fermat_default_chart_is_cubic_and_rational() {
        let input = ParamInput::new(fermat(), fermat_triple(), None, None).unwrap();
        let r = parametrize(&input).unwrap();
        assert_eq!(r.degree, 3);
        assert!(r.is_rational());
        let rep = verify(&r, &input.surface);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.field_of_definition, "Q");
    }

    #[test]
    fn fermat_explicit_chart_origin() {
        let chart = [ipt([1, 0, -1, 0]), ipt([0, 1, 0, 0]), ipt([0, 0, 0, 1])];
        let input = ParamInput::new(fermat(), fermat_triple(), None, Some(chart)).unwrap();
        let r = parametrize(&input).unwrap();
        let img = r.eval(&[s(1), s(0), s(0)]).unwrap();
        assert!(img.same_point(&ipt([1, 0, -1, 0])));
    }

    #[test]
    fn symmetric_phi1() {
        let l1 = ProjLine::new(ipt([1, 0, 0, 0]), ipt([0, 1, 0, 0])).unwrap();
        let l2 = ProjLine::new(ipt([0, 0, 1, 0]), ipt([0, 0, 0, 1])).unwrap();
        let f = CubicSurface::new(x(0) * x(2) * (x(0) - x(3)) + x(1) * x(3) * (x(1) + x(2))).unwrap();
        let triple = LineTriple::new(l1, l2, None).unwrap();
        let h = ProjPlane::new([s(1), s(-1), s(1), s(-1)]).unwrap();
        let input = ParamInput::new(f, triple, Some(h), None).unwrap();
        let r = phi1(&ipt([1, 1, 1, 1]), &input).unwrap();
        assert!(r.on_l1.same_point(&ipt([1, 1, 0, 0])));
        assert!(r.on_l2.same_point(&ipt([0, 0, 1, 1])));
    }

    #[test]
    fn tampered_identity_fails() {
        let input = ParamInput::new(fermat(), fermat_triple(), None, None).unwrap();
        let mut r = parametrize(&input).unwrap();
        r.phi[1] = r.phi[1].clone() + P::var("y1").pow(3);
        assert!(!verify(&r, &input.surface).identity_ok);
    }

    #[test]
    fn constant_map_detection() {
        let y = P::var("t0");
        assert!(is_constant_map(&[y.clone(), y.scale(&s(2)), P::zero(), y.scale(&s(-1))]));
        assert!(!is_constant_map(&[y.clone(), P::var("t1"), P::zero(), P::zero()]));
        assert!(!is_constant_map(&[P::zero(), P::zero()]));
    }

    #[test]
    fn chart_coordinates_roundtrip() {
        let chart = Chart::of_plane(ProjPlane::new([s(1), s(2), s(-1), s(3)]).unwrap()).unwrap();
        let y = [s(2), s(-3), s(5)];
        let p = chart.point_at(&y).unwrap();
        let back = chart_coords(&chart, &p).unwrap();
        assert!(chart.point_at(&back).unwrap().same_point(&p));
        assert_eq!(back, y);
    }
}
