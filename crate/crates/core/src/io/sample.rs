//! Evaluating a parametrization on a rational grid of the affine chart.

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::parametrizer::ParamResult;
use crate::scalars::{Field, Rational, Scalar};
use crate::surface::CubicSurface;

/// One grid point `(1 : y1 : y2)` and its image in affine coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleRow {
    pub y: [Rational; 2],
    pub x: [Rational; 3],
}

impl SampleRow {
    pub fn floats(&self) -> [f64; 3] {
        self.x.clone().map(|c| c.to_f64().unwrap_or(f64::NAN))
    }
}

/// `n` equally spaced values from `-range` to `range`; `[0]` when `n == 1`.
pub fn grid_values(n: usize, range: i64) -> Vec<Rational> {
    if n <= 1 {
        return vec![Rational::zero(); n];
    }
    let d = (n - 1) as i64;
    (0..n as i64).map(|i| Rational::new((range * (2 * i - d)).into(), d.into())).collect()
}

/// Evaluates `Φ` on the `n × n` grid, row-major in `y1` then `y2`. Base
/// points and points with `x0 = 0` are skipped. Every emitted point is
/// checked to lie on `surface` before it is returned.
pub fn sample_grid(
    result: &ParamResult<Scalar>,
    surface: &CubicSurface<Scalar>,
    n: usize,
    range: i64,
) -> Result<Vec<SampleRow>> {
    let vals = grid_values(n, range);
    let mut rows = Vec::new();
    for a in &vals {
        for b in &vals {
            let y = [Scalar::one(), Scalar::from_rational(a.clone()), Scalar::from_rational(b.clone())];
            let Some(p) = result.eval(&y) else { continue };
            if !surface.eval(&p).is_zero() {
                return Err(Error::Verification(format!("Φ(1, {a}, {b}) is not on the surface")));
            }
            let c = p.coords();
            if c[0].is_zero() {
                continue;
            }
            let mut x = [Rational::zero(), Rational::zero(), Rational::zero()];
            for i in 0..3 {
                x[i] = (c[i + 1].clone() / c[0].clone())
                    .to_rational()
                    .ok_or_else(|| Error::Unsupported("sample point is not rational".into()))?;
            }
            rows.push(SampleRow { y: [a.clone(), b.clone()], x });
        }
    }
    Ok(rows)
}
