//! Text, JSON and CSV formats.
//!
//! Inline polynomials are written `w,x,y,z;w,x,y,z;…` with the index of each
//! quaternion equal to its power. A quaternion given as a single number is
//! real, so `1;0,1,0,0` is `1 + X·i`.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::ProfileRow;
use crate::harmonics::zonal_table;
use crate::poly::QPolynomial;
use crate::quaternion::Quaternion;

fn number(s: &str) -> Result<f64> {
    let t = s.trim();
    let v: f64 = t.parse().map_err(|_| Error::Parse(format!("not a number: {t:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse(format!("non-finite value: {t:?}")))
    }
}

/// Parses `w,x,y,z` or a single real number.
pub fn parse_quaternion(s: &str) -> Result<Quaternion> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [r] => Ok(Quaternion::real(number(r)?)),
        [w, x, y, z] => Ok(Quaternion::new(number(w)?, number(x)?, number(y)?, number(z)?)),
        _ => Err(Error::Parse(format!("expected 1 or 4 components, got {} in {s:?}", parts.len()))),
    }
}

/// Parses the inline coefficient grammar.
pub fn parse_inline(s: &str) -> Result<QPolynomial> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let coeffs = s.split(';').map(parse_quaternion).collect::<Result<Vec<_>>>()?;
    Ok(QPolynomial::new(coeffs))
}

pub fn poly_from_json(s: &str) -> Result<QPolynomial> {
    Ok(serde_json::from_str(s)?)
}

pub fn poly_to_json(p: &QPolynomial) -> String {
    serde_json::to_string(p).expect("polynomials serialize")
}

/// Reads a polynomial from a JSON file, a JSON literal or the inline grammar.
pub fn read_poly(arg: &str) -> Result<QPolynomial> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        return poly_from_json(trimmed);
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let t = text.trim();
        return if t.starts_with('{') { poly_from_json(t) } else { parse_inline(t) };
    }
    parse_inline(arg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub k: usize,
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub fn coeff_rows(p: &QPolynomial) -> Vec<CoeffRow> {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| CoeffRow { k, w: c.w, x: c.x, y: c.y, z: c.z })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZonalRow {
    pub k: usize,
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub value: f64,
}

/// `Z̃_k(x)` for `k = 0..=max_k` at every point, point-major.
pub fn zonal_rows(max_k: usize, points: &[Quaternion]) -> Vec<ZonalRow> {
    points
        .iter()
        .flat_map(|&x| {
            zonal_table(max_k, x)
                .into_iter()
                .enumerate()
                .map(move |(k, value)| ZonalRow { k, x0: x.w, x1: x.x, x2: x.y, x3: x.z, value })
        })
        .collect()
}

/// Writes serializable rows as CSV with a header line.
pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_coeffs_csv<W: Write>(out: W, p: &QPolynomial) -> Result<()> {
    write_csv(out, &coeff_rows(p))
}

pub fn write_profile_csv<W: Write>(out: W, rows: &[ProfileRow]) -> Result<()> {
    write_csv(out, rows)
}

/// Six significant digits, switching to exponent form outside `[1e-4, 1e6)`.
pub fn fmt6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{v:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn fmt6_quaternion(q: Quaternion) -> String {
    format!("{} {} {} {}", fmt6(q.w), fmt6(q.x), fmt6(q.y), fmt6(q.z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::{cubic_ijk, poly_strategy};
    use proptest::prelude::*;

    #[test]
    fn inline_grammar() {
        let p = parse_inline("1;0,1,0,0").unwrap();
        assert_eq!(p.coeffs(), &[Quaternion::ONE, Quaternion::I]);
        assert_eq!(p.eval(Quaternion::I), Quaternion::ZERO);
        assert_eq!(parse_quaternion(" 1, -2.5 ,0,1e-3").unwrap(), Quaternion::new(1.0, -2.5, 0.0, 1e-3));
    }

    #[test]
    fn inline_errors() {
        for bad in ["", "1,2", "1;a", "1,2,3,4,5", "nan", "1;inf,0,0,0"] {
            assert!(matches!(parse_inline(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn json_errors() {
        assert!(matches!(poly_from_json(r#"{"coeffs":[[1,2,3]]}"#), Err(Error::Parse(_))));
        assert!(matches!(poly_from_json(r#"{"coeffs":[1]}"#), Err(Error::Parse(_))));
        assert!(matches!(read_poly("{not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_literal_and_file() {
        let p = cubic_ijk();
        let s = poly_to_json(&p);
        assert_eq!(s, r#"{"coeffs":[[1.0,0.0,0.0,0.0],[0.0,1.0,-1.0,1.0],[0.0,-1.0,-1.0,-1.0],[1.0,0.0,0.0,0.0]]}"#);
        assert_eq!(read_poly(&s).unwrap(), p);
        let path = std::env::temp_dir().join(format!("qbernstein-io-{}.json", std::process::id()));
        std::fs::write(&path, &s).unwrap();
        assert_eq!(read_poly(path.to_str().unwrap()).unwrap(), p);
        std::fs::remove_file(path).unwrap();
    }

    #[test]
    fn coefficient_csv() {
        let mut buf = Vec::new();
        write_coeffs_csv(&mut buf, &cubic_ijk()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,w,x,y,z\n0,1.0,0.0,0.0,0.0\n1,0.0,1.0,-1.0,1.0\n"), "{text}");
        assert_eq!(read_csv::<CoeffRow>(&text).unwrap(), coeff_rows(&cubic_ijk()));
    }

    #[test]
    fn zonal_csv() {
        let rows = zonal_rows(2, &[Quaternion::new(0.5, 0.5, 0.5, 0.5)]);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].value, 1.0);
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("k,x0,x1,x2,x3,value\n"));
    }

    #[test]
    fn profile_csv_header() {
        let rows = crate::extremal::modulus_profile(&cubic_ijk(), 3);
        let mut buf = Vec::new();
        write_profile_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("alpha,slice_max,slice_min\n"));
    }

    #[test]
    fn six_digits() {
        assert_eq!(fmt6(4.701234567), "4.70123");
        assert_eq!(fmt6(-0.559816), "-0.559816");
        assert_eq!(fmt6(123456.7), "123457");
        assert_eq!(fmt6(1.0e-7), "1.00000e-7");
        assert_eq!(fmt6(0.0), "0");
    }

    proptest! {
        #[test]
        fn json_roundtrip_is_bit_exact(p in poly_strategy(6)) {
            let back = poly_from_json(&poly_to_json(&p)).unwrap();
            for (a, b) in back.coeffs().iter().zip(p.coeffs()) {
                prop_assert_eq!(a.to_array().map(f64::to_bits), b.to_array().map(f64::to_bits));
            }
        }

        #[test]
        fn inline_roundtrip(p in poly_strategy(6)) {
            let s: Vec<String> = p.coeffs().iter().map(|c| format!("{},{},{},{}", c.w, c.x, c.y, c.z)).collect();
            prop_assert_eq!(parse_inline(&s.join(";")).unwrap(), p);
        }
    }
}
