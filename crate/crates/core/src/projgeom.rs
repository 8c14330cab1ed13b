//! Projective geometry of P^3: points, planes, lines with Plücker
//! coordinates, and the transversal through a point to two skew lines.
//!
//! Every type is generic over a [`Ring`] so that the same code runs on
//! numeric coordinates and on polynomial coordinates (symbolic points whose
//! entries are linear forms in chart parameters). "Zero" then means the zero
//! polynomial, so incidence checks on symbolic data are identities.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::scalars::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint<R> {
    coords: [R; 4],
}

impl<R: Ring> ProjPoint<R> {
    pub fn new(coords: [R; 4]) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("projective point with all coordinates zero".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[R; 4] {
        &self.coords
    }

    /// Equality up to scale: all 2x2 minors of the coordinate pair vanish.
    pub fn same_point(&self, o: &Self) -> bool {
        (0..4).all(|i| {
            (i + 1..4).all(|j| {
                (self.coords[i].clone() * o.coords[j].clone() - self.coords[j].clone() * o.coords[i].clone()).is_zero()
            })
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ProjPoint<S> {
        ProjPoint { coords: self.coords.clone().map(|c| f(&c)) }
    }

    /// `s * a + t * b`; `None` if the combination vanishes.
    pub fn combine(s: &R, a: &Self, t: &R, b: &Self) -> Option<Self> {
        let coords: [R; 4] = std::array::from_fn(|i| s.clone() * a.coords[i].clone() + t.clone() * b.coords[i].clone());
        ProjPoint::new(coords).ok()
    }
}

impl<F: Field> ProjPoint<F> {
    /// Scaled so the first nonzero coordinate is 1.
    pub fn normalized(&self) -> Self {
        let lead = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero point").clone();
        let inv = lead.inverse().expect("nonzero");
        self.map(|c| c.clone() * inv.clone())
    }

    pub fn conjugate(&self) -> Self {
        self.map(Field::conjugate)
    }

    /// True iff the point is defined over the rationals.
    pub fn is_rational(&self) -> bool {
        self.normalized().coords.iter().all(Field::is_rational)
    }

    pub fn lift(&self) -> ProjPoint<MPoly<F>> {
        self.map(|c| MPoly::constant(c.clone()))
    }
}

/// A plane `sum h_i x_i = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjPlane<R> {
    coeffs: [R; 4],
}

impl<R: Ring> ProjPlane<R> {
    pub fn new(coeffs: [R; 4]) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("plane with all coefficients zero".into()));
        }
        Ok(ProjPlane { coeffs })
    }

    pub fn coeffs(&self) -> &[R; 4] {
        &self.coeffs
    }

    pub fn eval(&self, x: &ProjPoint<R>) -> R {
        (0..4).fold(R::zero(), |acc, i| acc + self.coeffs[i].clone() * x.coords[i].clone())
    }

    pub fn contains(&self, x: &ProjPoint<R>) -> bool {
        self.eval(x).is_zero()
    }

    pub fn contains_line(&self, l: &ProjLine<R>) -> bool {
        self.contains(&l.a) && self.contains(&l.b)
    }

    pub fn same_plane(&self, o: &Self) -> bool {
        ProjPoint { coords: self.coeffs.clone() }.same_point(&ProjPoint { coords: o.coeffs.clone() })
    }
}

impl<F: Field> ProjPlane<F> {
    pub fn lift(&self) -> ProjPlane<MPoly<F>> {
        ProjPlane { coeffs: self.coeffs.clone().map(MPoly::constant) }
    }

    pub fn is_rational(&self) -> bool {
        ProjPoint { coords: self.coeffs.clone() }.is_rational()
    }
}

/// A line spanned by two points. Plücker coordinates
/// `(p01, p02, p03, p12, p13, p23)` with `pij = a_i b_j - a_j b_i` are
/// computed once at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjLine<R> {
    a: ProjPoint<R>,
    b: ProjPoint<R>,
    plucker: [R; 6],
}

const PLUCKER_INDEX: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl<R: Ring> ProjLine<R> {
    pub fn new(a: ProjPoint<R>, b: ProjPoint<R>) -> Result<Self> {
        let plucker = plucker_of(&a, &b);
        if plucker.iter().all(Zero::is_zero) {
            return Err(Error::DegenerateLine);
        }
        Ok(ProjLine { a, b, plucker })
    }

    pub fn points(&self) -> (&ProjPoint<R>, &ProjPoint<R>) {
        (&self.a, &self.b)
    }

    pub fn plucker(&self) -> &[R; 6] {
        &self.plucker
    }

    /// Bilinear Plücker pairing; zero iff the lines meet.
    pub fn pairing(&self, o: &Self) -> R {
        plucker_pairing(&self.plucker, &o.plucker)
    }

    pub fn meets(&self, o: &Self) -> bool {
        self.pairing(o).is_zero()
    }

    pub fn contains_point(&self, x: &ProjPoint<R>) -> bool {
        cofactor_plane(&self.a, &self.b, x).iter().all(Zero::is_zero)
    }

    pub fn same_line(&self, o: &Self) -> bool {
        self.contains_point(&o.a) && self.contains_point(&o.b)
    }

    /// `u * a + v * b`.
    pub fn point_at(&self, u: &R, v: &R) -> Option<ProjPoint<R>> {
        ProjPoint::combine(u, &self.a, v, &self.b)
    }

    pub fn reversed(&self) -> Self {
        ProjLine::new(self.b.clone(), self.a.clone()).expect("same line")
    }
}

impl<F: Field> ProjLine<F> {
    pub fn lift(&self) -> ProjLine<MPoly<F>> {
        ProjLine::new(self.a.lift(), self.b.lift()).expect("lifting preserves distinctness")
    }

    pub fn conjugate(&self) -> Self {
        ProjLine::new(self.a.conjugate(), self.b.conjugate()).expect("conjugation preserves distinctness")
    }

    /// True iff the line (as a set) is defined over the rationals.
    pub fn is_rational(&self) -> bool {
        let lead = self.plucker.iter().find(|c| !c.is_zero()).expect("nonzero plucker").inverse().expect("nonzero");
        self.plucker.iter().all(|c| (c.clone() * lead.clone()).is_rational())
    }

    /// Coordinates `(u, v)` with `x = u * a + v * b`, if `x` is on the line.
    pub fn coords_of(&self, x: &ProjPoint<F>) -> Option<(F, F)> {
        if !self.contains_point(x) {
            return None;
        }
        // pick a pair of coordinates where (a, b) is invertible
        for &(i, j) in &PLUCKER_INDEX {
            let det = self.a.coords[i].clone() * self.b.coords[j].clone()
                - self.a.coords[j].clone() * self.b.coords[i].clone();
            if det.is_zero() {
                continue;
            }
            let (xi, xj) = (x.coords[i].clone(), x.coords[j].clone());
            let u = (xi.clone() * self.b.coords[j].clone() - xj.clone() * self.b.coords[i].clone()) / det.clone();
            let v = (self.a.coords[i].clone() * xj - self.a.coords[j].clone() * xi) / det;
            return Some((u, v));
        }
        None
    }
}

fn plucker_of<R: Ring>(a: &ProjPoint<R>, b: &ProjPoint<R>) -> [R; 6] {
    PLUCKER_INDEX.map(|(i, j)| a.coords[i].clone() * b.coords[j].clone() - a.coords[j].clone() * b.coords[i].clone())
}

/// `p01 q23 - p02 q13 + p03 q12 + p23 q01 - p13 q02 + p12 q03`.
pub fn plucker_pairing<R: Ring>(p: &[R; 6], q: &[R; 6]) -> R {
    p[0].clone() * q[5].clone() - p[1].clone() * q[4].clone()
        + p[2].clone() * q[3].clone()
        + p[5].clone() * q[0].clone()
        - p[4].clone() * q[1].clone()
        + p[3].clone() * q[2].clone()
}

/// `p01 p23 - p02 p13 + p03 p12`, zero for every line.
pub fn plucker_quadric<R: Ring>(p: &[R; 6]) -> R {
    p[0].clone() * p[5].clone() - p[1].clone() * p[4].clone() + p[2].clone() * p[3].clone()
}

fn det3<R: Ring>(m: [[&R; 3]; 3]) -> R {
    m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
}

/// Signed 3x3 minors of the 3x4 matrix with rows `x, a, b`: the coefficients
/// of the plane through the three points (all zero iff they are collinear).
fn cofactor_plane<R: Ring>(a: &ProjPoint<R>, b: &ProjPoint<R>, x: &ProjPoint<R>) -> [R; 4] {
    let rows = [&x.coords, &a.coords, &b.coords];
    std::array::from_fn(|i| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != i).collect();
        let m = std::array::from_fn(|r| std::array::from_fn(|k| &rows[r][cols[k]]));
        let d = det3(m);
        if i % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

/// The unique plane containing `x` and `l`.
pub fn plane_through<R: Ring>(x: &ProjPoint<R>, l: &ProjLine<R>) -> Result<ProjPlane<R>> {
    ProjPlane::new(cofactor_plane(&l.a, &l.b, x)).map_err(|_| Error::DegenerateSpan)
}

/// The line of intersection of two distinct planes.
pub fn meet_planes<F: Field>(h1: &ProjPlane<F>, h2: &ProjPlane<F>) -> Result<ProjLine<F>> {
    let rows = vec![h1.coeffs.to_vec(), h2.coeffs.to_vec()];
    let k = crate::linalg::kernel(&rows, 4);
    if k.len() != 2 {
        return Err(Error::SamePlane);
    }
    let p = |v: &Vec<F>| ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]);
    ProjLine::new(p(&k[0])?, p(&k[1])?)
}

/// The transversal through `x` to two skew lines, with its two marked
/// intersection points.
#[derive(Clone, Debug)]
pub struct Transversal<R> {
    pub line: ProjLine<R>,
    /// `line ∩ l1`, as `coords_on_l1.0 * a1 + coords_on_l1.1 * b1`.
    pub on_l1: ProjPoint<R>,
    pub on_l2: ProjPoint<R>,
    pub coords_on_l1: (R, R),
    pub coords_on_l2: (R, R),
}

/// Computes `plane(x, l1) ∩ plane(x, l2)` without solving: the point of `l1`
/// on `plane(x, l2)` is `h2(b1) a1 - h2(a1) b1`, and symmetrically for `l2`.
/// With polynomial coordinates the outputs are polynomial of the same degree
/// as `x`.
pub fn transversal<R: Ring>(x: &ProjPoint<R>, l1: &ProjLine<R>, l2: &ProjLine<R>) -> Result<Transversal<R>> {
    let h1 = plane_through(x, l1).map_err(|_| Error::DegenerateTransversal)?;
    let h2 = plane_through(x, l2).map_err(|_| Error::DegenerateTransversal)?;
    let c1 = (h2.eval(&l1.b), -h2.eval(&l1.a));
    let c2 = (h1.eval(&l2.b), -h1.eval(&l2.a));
    let on_l1 = ProjPoint::combine(&c1.0, &l1.a, &c1.1, &l1.b).ok_or(Error::DegenerateTransversal)?;
    let on_l2 = ProjPoint::combine(&c2.0, &l2.a, &c2.1, &l2.b).ok_or(Error::DegenerateTransversal)?;
    let line = ProjLine::new(on_l1.clone(), on_l2.clone()).map_err(|_| Error::DegenerateTransversal)?;
    Ok(Transversal { line, on_l1, on_l2, coords_on_l1: c1, coords_on_l2: c2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;
    use num_traits::One;
    use proptest::prelude::*;

    fn pt(c: [i64; 4]) -> ProjPoint<Scalar> {
        ProjPoint::new(c.map(Scalar::int)).unwrap()
    }
    fn line(a: [i64; 4], b: [i64; 4]) -> ProjLine<Scalar> {
        ProjLine::new(pt(a), pt(b)).unwrap()
    }
    fn plane(c: [i64; 4]) -> ProjPlane<Scalar> {
        ProjPlane::new(c.map(Scalar::int)).unwrap()
    }
    const E0: [i64; 4] = [1, 0, 0, 0];
    const E1: [i64; 4] = [0, 1, 0, 0];
    const E2: [i64; 4] = [0, 0, 1, 0];
    const E3: [i64; 4] = [0, 0, 0, 1];

    #[test]
    fn plucker_examples() {
        let l = line(E0, E1);
        assert_eq!(l.plucker(), &[1, 0, 0, 0, 0, 0].map(Scalar::int));
        assert_eq!(l.reversed().plucker(), &[-1, 0, 0, 0, 0, 0].map(Scalar::int));
        let l2 = line(E0, [1, 1, 0, 0]);
        assert!(l.same_line(&l2));
        assert_eq!(ProjLine::new(pt(E0), pt([2, 0, 0, 0])), Err(Error::DegenerateLine));
    }

    #[test]
    fn meeting_and_skew() {
        assert!(line(E0, E1).meets(&line(E0, E2)));
        let a = line(E0, E1);
        let b = line(E2, E3);
        assert_eq!(a.pairing(&b), Scalar::one());
        assert!(!a.meets(&b));
    }

    #[test]
    fn plane_through_examples() {
        let l = line(E0, E1);
        assert!(plane_through(&pt([1, 1, 1, 1]), &l).unwrap().same_plane(&plane([0, 0, 1, -1])));
        assert!(plane_through(&pt(E2), &l).unwrap().same_plane(&plane([0, 0, 0, 1])));
        assert!(plane_through(&pt(E3), &l).unwrap().same_plane(&plane([0, 0, 1, 0])));
        assert_eq!(plane_through(&pt([3, 5, 0, 0]), &l), Err(Error::DegenerateSpan));
    }

    #[test]
    fn meet_planes_examples() {
        let l = meet_planes(&plane([0, 0, 1, -1]), &plane([1, -1, 0, 0])).unwrap();
        assert!(l.same_line(&line([1, 1, 0, 0], [0, 0, 1, 1])));
        let l = meet_planes(&plane([0, 0, 0, 1]), &plane([0, 0, 1, 0])).unwrap();
        assert!(l.same_line(&line(E0, E1)));
        assert_eq!(meet_planes(&plane([1, 2, 0, 0]), &plane([2, 4, 0, 0])), Err(Error::SamePlane));
    }

    #[test]
    fn symmetric_transversal() {
        let t = transversal(&pt([1, 1, 1, 1]), &line(E0, E1), &line(E2, E3)).unwrap();
        assert!(t.line.same_line(&line([1, 1, 0, 0], [0, 0, 1, 1])));
        assert!(t.on_l1.same_point(&pt([1, 1, 0, 0])));
        assert!(t.on_l2.same_point(&pt([0, 0, 1, 1])));
        assert!(t.line.meets(&line(E0, E1)) && t.line.meets(&line(E2, E3)));
    }

    #[test]
    fn transversal_degenerate_on_line() {
        assert_eq!(
            transversal(&pt([1, 2, 0, 0]), &line(E0, E1), &line(E2, E3)).err(),
            Some(Error::DegenerateTransversal)
        );
    }

    #[test]
    fn symbolic_transversal_meets_both() {
        type P = MPoly<Scalar>;
        let y = |n: &str| P::var(n);
        let x = ProjPoint::new([y("y0"), y("y1"), y("y0") + y("y2"), y("y1") - y("y2")]).unwrap();
        let l1 = line(E0, [0, 1, 1, 0]).lift();
        let l2 = line(E2, [1, 0, 0, 1]).lift();
        let t = transversal(&x, &l1, &l2).unwrap();
        assert!(t.line.meets(&l1) && t.line.meets(&l2));
        assert!(t.line.contains_point(&x));
        assert!(plucker_quadric(t.line.plucker()).is_zero());
    }

    fn arb_pt() -> impl Strategy<Value = ProjPoint<Scalar>> {
        proptest::array::uniform4(-6i64..7).prop_filter("nonzero", |c| c.iter().any(|&x| x != 0)).prop_map(pt)
    }

    proptest! {
        #[test]
        fn plucker_quadric_vanishes(a in arb_pt(), b in arb_pt()) {
            if let Ok(l) = ProjLine::new(a, b) {
                prop_assert!(plucker_quadric(l.plucker()).is_zero());
                prop_assert!(l.meets(&l));
            }
        }

        #[test]
        fn meets_is_symmetric(a in arb_pt(), b in arb_pt(), c in arb_pt(), d in arb_pt()) {
            if let (Ok(l), Ok(m)) = (ProjLine::new(a, b), ProjLine::new(c, d)) {
                prop_assert_eq!(l.meets(&m), m.meets(&l));
            }
        }

        #[test]
        fn transversal_is_unique(x in arb_pt(), s in -5i64..6, t in -5i64..6) {
            let l1 = line(E0, [0, 1, 2, 0]);
            let l2 = line(E2, [1, 0, -1, 1]);
            prop_assume!(!l1.contains_point(&x) && !l2.contains_point(&x));
            let tr = transversal(&x, &l1, &l2).unwrap();
            prop_assert!(tr.line.contains_point(&x));
            prop_assert!(tr.line.meets(&l1) && tr.line.meets(&l2));
            // a line through x and another point of l1 misses l2 unless it is the transversal
            if let Some(a) = l1.point_at(&Scalar::int(s), &Scalar::int(t)) {
                if let Ok(cand) = ProjLine::new(x.clone(), a.clone()) {
                    prop_assert_eq!(cand.meets(&l2), a.same_point(&tr.on_l1));
                }
            }
            // planes through x meet in a line through x
            let h1 = plane_through(&x, &l1).unwrap();
            let h2 = plane_through(&x, &l2).unwrap();
            prop_assert!(meet_planes(&h1, &h2).unwrap().contains_point(&x));
        }
    }
}
