//! Exact rational parametrization of cubic surfaces through a pair of skew
//! lines.
//!
//! The core is generic over an exact [`scalars::Field`]; the aliases below fix
//! it to [`Scalar`], the rationals or a quadratic extension chosen at runtime.

pub mod error;
pub mod fforacle;
pub mod io;
pub mod linalg;
pub mod parametrizer;
pub mod poly;
pub mod projgeom;
pub mod scalars;
pub mod surface;

pub use error::{Error, Result};
pub use scalars::{MinPoly, Rational, Scalar};

pub type Poly = poly::MPoly<Scalar>;
pub type QPoly = poly::MPoly<Rational>;
pub type Point = projgeom::ProjPoint<Scalar>;
pub type SymPoint = projgeom::ProjPoint<Poly>;
pub type Line = projgeom::ProjLine<Scalar>;
pub type SymLine = projgeom::ProjLine<Poly>;
pub type Plane = projgeom::ProjPlane<Scalar>;
pub type Surface = surface::CubicSurface<Scalar>;
pub type Triple = surface::LineTriple<Scalar>;
pub type Input = parametrizer::ParamInput<Scalar>;
pub type Parametrization = parametrizer::ParamResult<Scalar>;
