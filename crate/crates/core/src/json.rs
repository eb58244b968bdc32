//! Wire formats.
//!
//! Matrix JSON: `{"n": 3, "mode": "float", "rows": [[[re,im],...],...]}`,
//! row-major to match the vectorization; rational mode encodes each
//! component as a string, `[["p/q","r/s"],...]`.
//!
//! Polynomial JSON: `{"mode":"float","coeffs":[[re,im],...]}` lowest degree
//! first; the leading coefficient is included for general polynomials and
//! omitted (implicitly 1) for monic ones.
//!
//! Output is emitted by hand so it is byte-deterministic: stable field
//! ordering and floats at 17 significant digits.

use crate::diagnosis::{DiagnosisReport, EigenEntry};
use crate::error::Error;
use crate::matrix::{Matrix, Vector};
use crate::minpoly::MinPolyResult;
use crate::poly::{MonicPoly, Poly};
use crate::scalar::{parse_rational, GaussRational, Scalar};
use crate::sweep::{ExceptionalPoint, GridSample};
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::Value;

/// Fixed float formatting: 17 significant digits, always with an exponent,
/// so equal inputs produce identical bytes. Negative zero is canonicalized.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn fmt_complex(z: &Complex64) -> String {
    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
}

/// A parsed matrix in either scalar mode.
pub enum AnyMatrix {
    Float(Matrix<Complex64>),
    Rational(Matrix<GaussRational>),
}

pub fn matrix_to_json<S: Scalar>(m: &Matrix<S>) -> String {
    let rows: Vec<String> = m
        .rows()
        .map(|row| {
            let entries: Vec<String> = row.iter().map(Scalar::json_entry).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("{{\"n\":{},\"mode\":\"{}\",\"rows\":[{}]}}", m.dim(), S::MODE, rows.join(","))
}

pub fn monic_to_json<S: Scalar>(p: &MonicPoly<S>) -> String {
    let coeffs: Vec<String> = p.low_coeffs().iter().map(Scalar::json_entry).collect();
    format!("{{\"mode\":\"{}\",\"coeffs\":[{}]}}", S::MODE, coeffs.join(","))
}

pub fn poly_to_json<S: Scalar>(p: &Poly<S>) -> String {
    let coeffs: Vec<String> = p.coeffs().iter().map(Scalar::json_entry).collect();
    format!("{{\"mode\":\"{}\",\"coeffs\":[{}]}}", S::MODE, coeffs.join(","))
}

pub fn minpoly_result_to_json<S: Scalar>(r: &MinPolyResult<S>) -> String {
    let residuals: Vec<String> = r.residuals.iter().map(|&x| fmt_f64(x)).collect();
    let combination: Vec<String> = r.combination.iter().map(Scalar::json_entry).collect();
    format!(
        "{{\"minpoly\":{},\"dependence_degree\":{},\"residuals\":[{}],\"combination\":[{}]}}",
        monic_to_json(&r.minimal),
        r.dependence_degree,
        residuals.join(","),
        combination.join(",")
    )
}

fn vector_to_json(v: &Vector<Complex64>) -> String {
    let parts: Vec<String> = v.iter().map(fmt_complex).collect();
    format!("[{}]", parts.join(","))
}

fn eigen_entry_to_json(e: &EigenEntry) -> String {
    let vectors: Vec<String> = e.eigenvectors.iter().map(vector_to_json).collect();
    format!(
        "{{\"value\":{},\"minpoly_multiplicity\":{},\"geometric_multiplicity\":{},\"eigenvectors\":[{}]}}",
        fmt_complex(&e.value),
        e.minpoly_multiplicity,
        e.geometric_multiplicity,
        vectors.join(",")
    )
}

pub fn report_to_json<S: Scalar>(r: &DiagnosisReport<S>) -> String {
    let entries: Vec<String> = r.eigen_entries.iter().map(eigen_entry_to_json).collect();
    let flags: Vec<String> = r.condition_flags.iter().map(|f| format!("\"{f}\"")).collect();
    format!(
        "{{\"diagonalizable\":{},\"minpoly\":{},\"gcd_with_derivative\":{},\"eigen_entries\":[{}],\"condition_flags\":[{}]}}",
        r.diagonalizable,
        monic_to_json(&r.minpoly),
        monic_to_json(&r.gcd_with_derivative),
        entries.join(","),
        flags.join(",")
    )
}

pub fn exceptional_points_to_json(points: &[ExceptionalPoint]) -> String {
    let items: Vec<String> = points
        .iter()
        .map(|p| {
            format!(
                "{{\"parameter\":{},\"bracket\":[{},{}],\"coalescing_value\":{},\"gcd_degree_at_point\":{},\"report\":{}}}",
                fmt_f64(p.parameter),
                fmt_f64(p.bracket.0),
                fmt_f64(p.bracket.1),
                fmt_complex(&p.coalescing_value),
                p.gcd_degree_at_point,
                report_to_json(&p.report)
            )
        })
        .collect();
    format!("[{}]", items.join(","))
}

/// CSV of the sweep grid: `parameter,discriminant_re,discriminant_im,gcd_degree`.
pub fn grid_to_csv(samples: &[GridSample]) -> String {
    let mut out = String::from("parameter,discriminant_re,discriminant_im,gcd_degree\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(s.parameter),
            fmt_f64(s.discriminant.re),
            fmt_f64(s.discriminant.im),
            s.gcd_degree
        ));
    }
    out
}

/// Parse a matrix payload in either mode.
pub fn parse_matrix(text: &str) -> Result<AnyMatrix, Error> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = value.as_object().ok_or_else(|| Error::Parse("matrix must be an object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))? as usize;
    let mode = obj
        .get("mode")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing string field \"mode\"".into()))?;
    let rows = obj
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field \"rows\"".into()))?;
    if rows.len() != n {
        return Err(Error::Parse(format!("expected {n} rows, got {}", rows.len())));
    }
    match mode {
        "float" => {
            let mut data = Vec::with_capacity(n);
            for row in rows {
                data.push(parse_row(row, n, parse_float_entry)?);
            }
            Ok(AnyMatrix::Float(Matrix::from_rows(data)?))
        }
        "rational" => {
            let mut data = Vec::with_capacity(n);
            for row in rows {
                data.push(parse_row(row, n, parse_rational_entry)?);
            }
            Ok(AnyMatrix::Rational(Matrix::from_rows(data)?))
        }
        other => Err(Error::Parse(format!("unknown mode {other:?}"))),
    }
}

fn parse_row<S>(
    row: &Value,
    n: usize,
    entry: fn(&Value) -> Result<S, Error>,
) -> Result<Vec<S>, Error> {
    let items = row.as_array().ok_or_else(|| Error::Parse("row must be an array".into()))?;
    if items.len() != n {
        return Err(Error::Parse(format!("expected {n} entries per row, got {}", items.len())));
    }
    items.iter().map(entry).collect()
}

fn parse_float_entry(v: &Value) -> Result<Complex64, Error> {
    let pair = v.as_array().ok_or_else(|| Error::Parse("entry must be [re, im]".into()))?;
    if pair.len() != 2 {
        return Err(Error::Parse("entry must have exactly two components".into()));
    }
    let re = pair[0].as_f64().ok_or_else(|| Error::Parse("non-numeric real part".into()))?;
    let im = pair[1].as_f64().ok_or_else(|| Error::Parse("non-numeric imaginary part".into()))?;
    Ok(Complex64::new(re, im))
}

fn parse_rational_entry(v: &Value) -> Result<GaussRational, Error> {
    let pair = v.as_array().ok_or_else(|| Error::Parse("entry must be [re, im]".into()))?;
    if pair.len() != 2 {
        return Err(Error::Parse("entry must have exactly two components".into()));
    }
    let part = |x: &Value| -> Result<BigRational, Error> {
        match x {
            Value::String(s) => parse_rational(s),
            Value::Number(num) => {
                let f = num.as_f64().ok_or_else(|| Error::Parse("bad number".into()))?;
                if !f.is_finite() {
                    return Err(Error::Parse("non-finite number".into()));
                }
                BigRational::from_float(f).ok_or_else(|| Error::Parse("bad number".into()))
            }
            _ => Err(Error::Parse("rational entry must be a string or number".into())),
        }
    };
    Ok(GaussRational::new(part(&pair[0])?, part(&pair[1])?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn float_matrix_roundtrip() {
        let m = Matrix::from_rows(vec![
            vec![c(0.0, 1.5), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, -1.5)],
        ])
        .unwrap();
        let text = matrix_to_json(&m);
        match parse_matrix(&text).unwrap() {
            AnyMatrix::Float(back) => assert_eq!(back, m),
            _ => panic!("mode drifted"),
        }
    }

    #[test]
    fn rational_matrix_roundtrip() {
        let g = GaussRational::from_ratios(1, 2, -3, 4);
        let m = Matrix::from_rows(vec![
            vec![g.clone(), GaussRational::from_ints(0, 0)],
            vec![GaussRational::from_ints(2, 0), g],
        ])
        .unwrap();
        let text = matrix_to_json(&m);
        assert!(text.contains("\"mode\":\"rational\""));
        assert!(text.contains("\"1/2\""));
        match parse_matrix(&text).unwrap() {
            AnyMatrix::Rational(back) => assert_eq!(back, m),
            _ => panic!("mode drifted"),
        }
    }

    #[test]
    fn emission_is_deterministic() {
        let m = Matrix::from_rows(vec![
            vec![c(1.0 / 3.0, 0.0), c(0.1, 0.2)],
            vec![c(-0.1, 0.0), c(2f64.sqrt(), 0.0)],
        ])
        .unwrap();
        assert_eq!(matrix_to_json(&m), matrix_to_json(&m));
        // 17 significant digits round-trip doubles exactly.
        let text = matrix_to_json(&m);
        match parse_matrix(&text).unwrap() {
            AnyMatrix::Float(back) => assert_eq!(back, m),
            _ => panic!("mode drifted"),
        }
    }

    #[test]
    fn malformed_payloads_error() {
        assert!(parse_matrix("{").is_err());
        assert!(parse_matrix("{\"n\":2,\"mode\":\"float\",\"rows\":[]}").is_err());
        assert!(parse_matrix("{\"n\":1,\"mode\":\"imaginary\",\"rows\":[[[0,0]]]}").is_err());
        assert!(parse_matrix("{\"n\":1,\"mode\":\"float\",\"rows\":[[[0]]]}").is_err());
        assert!(parse_matrix("{\"n\":1,\"mode\":\"rational\",\"rows\":[[[\"1/0\",\"0\"]]]}").is_err());
    }

    #[test]
    fn rational_entries_accept_numbers_exactly() {
        let text = "{\"n\":1,\"mode\":\"rational\",\"rows\":[[[0.5,-0.25]]]}";
        match parse_matrix(text).unwrap() {
            AnyMatrix::Rational(m) => {
                assert_eq!(*m.at(0, 0), GaussRational::from_ratios(1, 2, -1, 4));
            }
            _ => panic!("mode drifted"),
        }
    }
}
