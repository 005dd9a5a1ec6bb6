//! JSON/CSV encodings. Complex numbers are written as `[re, im]` pairs.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matcore::{c64, CMatrix};

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn matrix_to_pairs(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect()).collect()
}

pub fn pairs_to_matrix(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Input("ragged matrix rows".into()));
    }
    if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Input("non-finite matrix entry".into()));
    }
    Ok(CMatrix::from_fn(r, c, |i, j| c64(rows[i][j][0], rows[i][j][1])))
}

/// `#[serde(with = "crate::io::cmat")]` for [`CMatrix`] fields.
pub mod cmat {
    use super::*;

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_pairs(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CMatrix, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        pairs_to_matrix(&rows).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "crate::io::cvec")]` for lists of complex numbers.
pub mod cvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|z| pair(*z)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Complex64>, D::Error> {
        let v: Vec<[f64; 2]> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|p| c64(p[0], p[1])).collect())
    }
}

/// `#[serde(with = "crate::io::cnum")]` for a single complex number.
pub mod cnum {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        pair(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
        let p: [f64; 2] = <[f64; 2]>::deserialize(d)?;
        Ok(c64(p[0], p[1]))
    }
}

/// Format a real with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Serialize to pretty JSON with every float rendered by [`fmt_real`].
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Input(e.to_string()))?;
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    Ok(out)
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&fmt_real(n.as_f64().unwrap_or(f64::NAN)));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap_or_default()),
        Value::Array(items) => {
            let flat = items.iter().all(|x| !x.is_array() && !x.is_object());
            if flat {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, indent, out);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    write_value(x, indent + 1, out);
                    if i + 1 < items.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).unwrap_or_default());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = CMatrix::from_fn(2, 3, |i, j| c64(i as f64, -(j as f64) / 3.0));
        let back = pairs_to_matrix(&matrix_to_pairs(&m)).unwrap();
        assert_eq!(m, back);
        assert!(pairs_to_matrix(&[vec![[1.0, 0.0]], vec![]]).is_err());
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI * 1e-300, -2.5e17] {
            let s = fmt_real(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        let json = to_json(&serde_json::json!({"a": [0.1, 2], "b": null})).unwrap();
        assert!(json.contains("1.0000000000000001e-1"));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["a"][1], 2);
    }
}
