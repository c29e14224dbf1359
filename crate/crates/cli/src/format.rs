//! Plain-text number formatting shared by the CSV writers.

use cliffsphere_core::multivector::Multivector;
use serde::Serialize;

/// 17 significant digits, exponent form. Independent of locale.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sci_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".to_string(), sci)
}

pub fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> Vec<u8> {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out.into_bytes()
}

pub fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z but got {s:?}"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(parts) {
        *slot = p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("{p:?} is not finite"));
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub blade: String,
    pub coeff: f64,
}

pub fn terms(x: &Multivector) -> Vec<Term> {
    x.terms()
        .map(|(b, c)| Term {
            blade: b.to_string(),
            coeff: c,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci_has_seventeen_digits() {
        assert_eq!(sci(-0.5), "-5.0000000000000000e-1");
        assert_eq!(sci(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(sci_opt(None), "nan");
    }

    #[test]
    fn vectors_parse() {
        assert_eq!(parse_vec3("1, 0,-2.5"), Ok([1.0, 0.0, -2.5]));
        assert!(parse_vec3("1,0").is_err());
        assert!(parse_vec3("1,0,x").is_err());
        assert!(parse_vec3("1,0,inf").is_err());
    }
}
