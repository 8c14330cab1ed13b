//! JSON problem files and parametrization files.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::expr::{parse_poly, parse_scalar, Symbols};
use crate::error::{Error, Result};
use crate::fforacle::X_VARS;
use crate::parametrizer::{Chart, ParamInput, ParamResult, VerifyReport, Y_VARS};
use crate::poly::MPoly;
use crate::projgeom::{ProjLine, ProjPlane, ProjPoint};
use crate::scalars::{rat_int, MinPoly, Scalar};
use crate::surface::{CubicSurface, LineTriple};

type PointText = [String; 4];
type LineText = [PointText; 2];

/// On-disk problem description.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    /// `[1, a, b]` for the extension generator root of `w^2 + a w + b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<String>,
    #[serde(default)]
    pub lines: BTreeMap<String, LineText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane: Option<String>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
    /// Three points spanning the plane, in parameter order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<[PointText; 3]>,
}

/// A parsed and validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub field: Option<Arc<MinPoly>>,
    pub surface: Option<CubicSurface<Scalar>>,
    pub lines: BTreeMap<String, ProjLine<Scalar>>,
    pub plane: Option<ProjPlane<Scalar>>,
    pub primes: Vec<u64>,
    pub chart: Option<[ProjPoint<Scalar>; 3]>,
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

pub fn field_from_monic(c: [i64; 3]) -> Result<Arc<MinPoly>> {
    if c[0] != 1 {
        return Err(Error::Format("field polynomial must be monic: [1, a, b]".into()));
    }
    Ok(Arc::new(MinPoly::from_monic(rat_int(c[1]), rat_int(c[2]))?))
}

fn field_to_monic(m: &MinPoly) -> Result<[i64; 3]> {
    let [one, a, b] = m.monic_coeffs();
    let int = |r: &crate::scalars::Rational| -> Result<i64> {
        (r.is_integer())
            .then(|| i64::try_from(r.to_integer()).ok())
            .flatten()
            .ok_or_else(|| Error::Unsupported("non-integral minimal polynomial".into()))
    };
    Ok([int(&one)?, int(&a)?, int(&b)?])
}

pub fn parse_point(p: &PointText, field: Option<&Arc<MinPoly>>) -> Result<ProjPoint<Scalar>> {
    let c = [
        parse_scalar(&p[0], field)?,
        parse_scalar(&p[1], field)?,
        parse_scalar(&p[2], field)?,
        parse_scalar(&p[3], field)?,
    ];
    ProjPoint::new(c)
}

pub fn parse_line(l: &LineText, field: Option<&Arc<MinPoly>>) -> Result<ProjLine<Scalar>> {
    ProjLine::new(parse_point(&l[0], field)?, parse_point(&l[1], field)?)
}

/// A linear form in `x0..x3`.
pub fn parse_plane(text: &str, field: Option<&Arc<MinPoly>>) -> Result<ProjPlane<Scalar>> {
    let p = parse_poly(text, &Symbols::new(&X_VARS, field.cloned()))?;
    if !p.is_homogeneous() || p.total_degree() != Some(1) {
        return Err(Error::InvalidInput(format!("plane '{text}' is not a nonzero linear form")));
    }
    let coeff = |v: &str| p.derivative(v).constant_value().expect("linear");
    ProjPlane::new(X_VARS.map(coeff))
}

pub fn render_point(p: &ProjPoint<Scalar>) -> PointText {
    p.coords().clone().map(|c| c.to_string())
}

pub fn render_line(l: &ProjLine<Scalar>) -> LineText {
    let (a, b) = l.points();
    [render_point(a), render_point(b)]
}

pub fn render_plane(h: &ProjPlane<Scalar>) -> String {
    X_VARS.iter().zip(h.coeffs()).fold(MPoly::zero(), |acc, (v, c)| acc + MPoly::var(v).scale(c)).to_string()
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn load(&self) -> Result<Problem> {
        let field = self.field.map(field_from_monic).transpose()?;
        let f = field.as_ref();
        let surface = match &self.surface {
            Some(s) => Some(CubicSurface::new(parse_poly(s, &Symbols::new(&X_VARS, field.clone()))?)?),
            None => None,
        };
        let lines = self.lines.iter().map(|(k, l)| Ok((k.clone(), parse_line(l, f)?))).collect::<Result<_>>()?;
        let plane = self.plane.as_deref().map(|p| parse_plane(p, f)).transpose()?;
        let chart = match &self.options.chart {
            Some(c) => Some([parse_point(&c[0], f)?, parse_point(&c[1], f)?, parse_point(&c[2], f)?]),
            None => None,
        };
        Ok(Problem { field, surface, lines, plane, primes: self.options.primes.clone(), chart })
    }
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Self> {
        ProblemFile::from_json(text)?.load()
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&read_text(path)?)
    }

    pub fn surface(&self) -> Result<&CubicSurface<Scalar>> {
        self.surface.as_ref().ok_or_else(|| Error::InvalidInput("the problem has no surface".into()))
    }

    pub fn line(&self, name: &str) -> Result<&ProjLine<Scalar>> {
        self.lines.get(name).ok_or_else(|| Error::InvalidInput(format!("missing line {name}")))
    }

    pub fn triple(&self) -> Result<LineTriple<Scalar>> {
        LineTriple::new(self.line("l1")?.clone(), self.line("l2")?.clone(), self.lines.get("m").cloned())
    }

    /// Engine input; `plane` overrides the file's plane (and drops its chart).
    pub fn param_input(&self, plane: Option<ProjPlane<Scalar>>) -> Result<ParamInput<Scalar>> {
        let surface = self.surface()?.clone();
        let triple = self.triple()?;
        match plane {
            Some(h) => ParamInput::new(surface, triple, Some(h), None),
            None => ParamInput::new(surface, triple, self.plane.clone(), self.chart.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineComponent {
    pub num: String,
    pub den: String,
}

/// On-disk parametrization with its verification report.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<[i64; 3]>,
    pub surface: String,
    pub variables: Vec<String>,
    pub phi: [String; 4],
    pub degree: u32,
    pub field_of_definition: String,
    pub plane: String,
    pub chart: [PointText; 3],
    pub l1: LineText,
    pub l2: LineText,
    pub gcd_removed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<BTreeMap<String, AffineComponent>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifyReport>,
}

impl ParamFile {
    pub fn new(
        result: &ParamResult<Scalar>,
        surface: &CubicSurface<Scalar>,
        field: Option<&Arc<MinPoly>>,
        report: Option<VerifyReport>,
    ) -> Result<Self> {
        let affine = result.affine().ok().map(|a| {
            a.iter()
                .enumerate()
                .map(|(i, r)| {
                    (format!("x{}", i + 1), AffineComponent { num: r.num().to_string(), den: r.den().to_string() })
                })
                .collect()
        });
        let field_of_definition = match &report {
            Some(r) => r.field_of_definition.clone(),
            None if result.is_rational() => "Q".into(),
            None => "extension".into(),
        };
        Ok(ParamFile {
            field: field.map(|m| field_to_monic(m)).transpose()?,
            surface: surface.form().to_string(),
            variables: Y_VARS.iter().map(|v| v.to_string()).collect(),
            phi: result.phi.clone().map(|p| p.to_string()),
            degree: result.degree,
            field_of_definition,
            plane: render_plane(&result.chart.plane),
            chart: result.chart.basis.clone().map(|p| render_point(&p)),
            l1: render_line(&result.l1),
            l2: render_line(&result.l2),
            gcd_removed: result.gcd_removed.to_string(),
            affine,
            verification: report,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&read_text(path)?)
    }

    pub fn minpoly(&self) -> Result<Option<Arc<MinPoly>>> {
        self.field.map(field_from_monic).transpose()
    }

    /// Rebuilds the parametrization and its surface.
    pub fn load(&self) -> Result<(ParamResult<Scalar>, CubicSurface<Scalar>)> {
        let field = self.minpoly()?;
        let f = field.as_ref();
        let surface = CubicSurface::new(parse_poly(&self.surface, &Symbols::new(&X_VARS, field.clone()))?)?;
        let ysym = Symbols::new(&Y_VARS, field.clone());
        let phi = [
            parse_poly(&self.phi[0], &ysym)?,
            parse_poly(&self.phi[1], &ysym)?,
            parse_poly(&self.phi[2], &ysym)?,
            parse_poly(&self.phi[3], &ysym)?,
        ];
        if phi.iter().all(MPoly::is_zero) {
            return Err(Error::InvalidInput("all four forms are zero".into()));
        }
        let degree = phi.iter().filter_map(MPoly::total_degree).max().unwrap_or(0);
        let chart = Chart::new(
            parse_plane(&self.plane, f)?,
            [parse_point(&self.chart[0], f)?, parse_point(&self.chart[1], f)?, parse_point(&self.chart[2], f)?],
        )?;
        let result = ParamResult {
            phi,
            degree,
            chart,
            l1: parse_line(&self.l1, f)?,
            l2: parse_line(&self.l2, f)?,
            gcd_removed: parse_poly(&self.gcd_removed, &ysym)?,
        };
        Ok((result, surface))
    }
}

/// The affine view `x_i = num / den` at `y0 = 1`, one line per coordinate.
pub fn affine_text(result: &ParamResult<Scalar>) -> Result<String> {
    let a = result.affine()?;
    Ok(a.iter().enumerate().map(|(i, r)| format!("x{} = {}\n", i + 1, r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FERMAT: &str = r#"{
        "field": [1, 1, 1],
        "surface": "x0^3 + x1^3 + x2^3 + x3^3",
        "lines": {
            "l1": [["1", "-w^2", "0", "0"], ["0", "0", "-w", "1"]],
            "l2": [["1", "-w", "0", "0"], ["0", "0", "-w^2", "1"]],
            "m": [["1", "0", "-1", "0"], ["0", "-1", "0", "1"]]
        },
        "plane": "x0 + x2",
        "options": {"primes": [7, 13], "chart": [["1", "0", "-1", "0"], ["0", "1", "0", "0"], ["0", "0", "0", "1"]]}
    }"#;

    #[test]
    fn loads_fermat_problem() {
        let p = Problem::from_json(FERMAT).unwrap();
        assert_eq!(p.primes, vec![7, 13]);
        let input = p.param_input(None).unwrap();
        assert!(input.triple.is_conjugate_stable());
        assert_eq!(render_plane(&input.chart.plane), "x0 + x2");
    }

    #[test]
    fn param_file_roundtrip() {
        let p = Problem::from_json(FERMAT).unwrap();
        let input = p.param_input(None).unwrap();
        let r = crate::parametrizer::parametrize(&input).unwrap();
        let file = ParamFile::new(&r, &input.surface, p.field.as_ref(), None).unwrap();
        let back = ParamFile::from_json(&file.to_json()).unwrap();
        let (r2, s2) = back.load().unwrap();
        assert_eq!(r2.phi, r.phi);
        assert_eq!(&s2, &input.surface);
        assert_eq!(back.to_json(), file.to_json());
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(Problem::from_json("{"), Err(Error::Format(_))));
        assert!(matches!(Problem::from_json(r#"{"bogus": 1}"#), Err(Error::Format(_))));
        assert!(matches!(Problem::from_json(r#"{"field": [2, 1, 1]}"#), Err(Error::Format(_))));
        assert!(matches!(Problem::from_json(r#"{"field": [1, 0, -1]}"#), Err(Error::ReducibleMinPoly { .. })));
        assert!(matches!(Problem::from_json(r#"{"surface": "x0^3 +"}"#), Err(Error::Syntax { .. })));
        assert!(matches!(Problem::from_json(r#"{"surface": "x0^2"}"#), Err(Error::NotCubic(_))));
        assert!(matches!(Problem::from_json(r#"{"plane": "x0*x1"}"#), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn non_skew_pair_rejected() {
        let text = r#"{
            "surface": "x0*x1*x2",
            "lines": {"l1": [["1","0","0","0"],["0","1","0","0"]], "l2": [["1","0","0","0"],["0","0","0","1"]]},
            "plane": "x2"
        }"#;
        let err = Problem::from_json(text).unwrap().param_input(None).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
