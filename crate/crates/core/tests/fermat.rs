mod common;

use common::{fixture, pt, s};
use cubicpar::fforacle::{line_report, Reduction, X_VARS};
use cubicpar::io::{affine_text, parse_poly, Problem, Symbols};
use cubicpar::parametrizer::{parametrize, verify, Y_VARS};
use cubicpar::poly::RatFn;
use cubicpar::Parametrization;

fn fermat() -> (Problem, Parametrization) {
    let problem = Problem::from_path(&fixture("fermat.json")).unwrap();
    let result = parametrize(&problem.param_input(None).unwrap()).unwrap();
    (problem, result)
}

fn golden() -> String {
    std::fs::read_to_string(fixture("fermat_affine.txt")).unwrap()
}

#[test]
fn affine_formulas_match_golden_file() {
    let (_, result) = fermat();
    assert_eq!(affine_text(&result).unwrap(), golden());
}

/// The formulas as usually printed, typed in by hand with a shared
/// denominator and overall signs, reduce to the golden file.
#[test]
fn hand_transcribed_formulas_reduce_to_golden_file() {
    let den = "y1^3-2*y1^2-y1^2*y2+3*y1+2*y1*y2+y2^2*y1-3-3*y2-2*y2^2";
    let nums = [
        "-(y1^3-2*y1^2-y1^2*y2+3*y1+2*y1*y2+y2^2*y1+y2^2)",
        "2*y1^2+y1^2*y2-y2^2*y1-2*y1*y2-3*y1+3+3*y2+y2^3+2*y2^2",
        "-(y1^2*y2-y1^2-2*y1*y2-y2^2*y1+y2^3+2*y2^2+3*y2)",
    ];
    let sym = Symbols::new(&["y1", "y2"], None);
    let d = parse_poly(den, &sym).unwrap();
    let text: String = nums
        .iter()
        .enumerate()
        .map(|(i, n)| format!("x{} = {}\n", i + 1, RatFn::reduced(parse_poly(n, &sym).unwrap(), d.clone()).unwrap()))
        .collect();
    assert_eq!(text, golden());
}

#[test]
fn verification_passes_and_common_factor_is_recorded() {
    let (problem, result) = fermat();
    let report = verify(&result, problem.surface().unwrap());
    assert!(report.passed(), "{:?}", report.failures());
    assert_eq!(result.degree, 3);
    assert_eq!(report.field_of_definition, "Q");
    assert_eq!(result.gcd_removed.to_string(), "y1 + y2");
}

#[test]
fn chart_origin_maps_to_the_first_chart_point() {
    let (_, result) = fermat();
    let x = result.eval(&[s(1), s(0), s(0)]).unwrap();
    assert!(x.same_point(&pt([1, 0, -1, 0])));
}

#[test]
fn line_counts_over_small_primes() {
    let (problem, _) = fermat();
    let form = problem.surface().unwrap().form();
    let pair = Some((problem.line("l1").unwrap(), problem.line("l2").unwrap()));
    for p in [7, 13] {
        let r = line_report(form, problem.field.as_deref(), pair, p).unwrap();
        assert_eq!((r.lines, r.transversals), (27, Some(5)), "p = {p}");
    }
    // w does not exist mod 5, so only the rational reduction is possible.
    // Cubing is a bijection on F_5, leaving x_i = -x_j, x_k = -x_l: 3 lines.
    assert!(line_report(form, problem.field.as_deref(), pair, 5).is_err());
    assert_eq!(line_report(form, None, None, 5).unwrap().lines, 3);
}

#[test]
fn reduction_of_phi_lands_on_the_reduced_surface() {
    let (problem, result) = fermat();
    for p in [7u64, 13] {
        let red = Reduction::new(p, problem.field.as_deref(), 0).unwrap();
        let f = red.poly(problem.surface().unwrap().form(), &X_VARS).unwrap();
        let phi: Vec<_> = result.phi.iter().map(|q| red.poly(q, &Y_VARS).unwrap()).collect();
        for a in 0..p {
            for b in 0..p {
                for c in [0, 1] {
                    let x: Vec<u64> = phi.iter().map(|q| q.eval(&[c, a, b])).collect();
                    assert_eq!(f.eval(&x), 0, "p = {p}, y = ({c}, {a}, {b})");
                }
            }
        }
    }
}
