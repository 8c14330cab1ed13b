//! Random surfaces through line triples, shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use cubicpar::projgeom::{ProjLine, ProjPoint};
use cubicpar::surface::{cubic_space, smoothness_screen, CubicSurface, LineTriple};
use cubicpar::{MinPoly, Point, Scalar, Surface, Triple};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

pub fn pt(c: [i64; 4]) -> Point {
    ProjPoint::new(c.map(s)).unwrap()
}

pub fn omega() -> Arc<MinPoly> {
    Arc::new(MinPoly::omega())
}

fn small(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-4..=4)
}

/// `m = (t,0,0)`, `l1 = (a + b1 t, b2 t, b3 t)`, `l2 = (c + d1 t, d2 t, d3 t)`
/// with random small integers, homogenized with `x0`.
pub fn normal_form_triple(rng: &mut ChaCha8Rng) -> Triple {
    loop {
        let mut r = || small(rng);
        let m = ProjLine::new(pt([1, 0, 0, 0]), pt([0, 1, 0, 0])).unwrap();
        let Ok(l1) = ProjLine::new(pt([1, r(), 0, 0]), pt([0, r(), r(), r()])) else { continue };
        let Ok(l2) = ProjLine::new(pt([1, r(), 0, 0]), pt([0, r(), r(), r()])) else { continue };
        if let Ok(t) = LineTriple::new(l1, l2, Some(m)) {
            return t;
        }
    }
}

/// A rational `m` with `l1` over `Q(w)` and `l2` its conjugate.
pub fn omega_triple(rng: &mut ChaCha8Rng) -> Triple {
    let w = Scalar::generator(&omega());
    loop {
        let mut q = || s(small(rng)) + w.clone() * s(small(rng));
        let a = q();
        let b = [q(), q(), q()];
        let m = ProjLine::new(pt([1, 0, 0, 0]), pt([0, 1, 0, 0])).unwrap();
        let Ok(p) = ProjPoint::new([s(0), b[0].clone(), b[1].clone(), b[2].clone()]) else { continue };
        let Ok(l1) = ProjLine::new(ProjPoint::new([s(1), a, s(0), s(0)]).unwrap(), p) else { continue };
        if l1.is_rational() {
            continue;
        }
        let l2 = l1.conjugate();
        if let Ok(t) = LineTriple::new(l1, l2, Some(m)) {
            if t.is_conjugate_stable() {
                return t;
            }
        }
    }
}

/// A random member of the space of cubics through the triple that passes
/// the finite-field smoothness screen. `None` when a handful of draws all
/// look singular, which happens when the triple degenerates mod a screening
/// prime.
pub fn random_surface(rng: &mut ChaCha8Rng, t: &Triple) -> Option<Surface> {
    let space = cubic_space(t);
    for _ in 0..8 {
        let c: Vec<Scalar> = (0..space.dimension()).map(|_| s(rng.gen_range(-9..=9))).collect();
        let Ok(surface) = CubicSurface::new(space.combine(&c)) else { continue };
        if smoothness_screen(&surface, &[7, 11, 13]).is_ok_and(|r| r.passed()) {
            return Some(surface);
        }
    }
    None
}

/// A normal-form triple (or a conjugate-stable one over `Q(w)`) with a
/// screened surface containing it.
pub fn random_case(rng: &mut ChaCha8Rng, conjugate_pair: bool) -> (Triple, Surface) {
    loop {
        let t = if conjugate_pair { omega_triple(rng) } else { normal_form_triple(rng) };
        if let Some(surface) = random_surface(rng, &t) {
            return (t, surface);
        }
    }
}
