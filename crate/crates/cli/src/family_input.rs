//! JSON input for `family`:
//!
//! ```json
//! { "sections": [[[1, 1]], [[], [0, 1]]], "trunc_t": 6, "trunc_x": 6 }
//! ```
//!
//! `sections[k][i][j]` is the coefficient of `t^i x^j` in section `k`, an
//! integer or a `"p/q"` string. `trunc_t`, `trunc_x`, `bundle_degree` and
//! `genus` are optional.

use serde_json::Value;
use weierstrass_limits::exact::parse_scalar;
use weierstrass_limits::family_limits::FamilySections;
use weierstrass_limits::BigQ;

use crate::CliError;

type Grid = Vec<Vec<BigQ>>;

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyInput {
    pub grids: Vec<Grid>,
    pub trunc_t: Option<usize>,
    pub trunc_x: Option<usize>,
    pub bundle_degree: Option<usize>,
    pub genus: Option<usize>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Usage(format!("family input: {}", msg.into()))
}

fn coefficient(v: &Value) -> Result<BigQ, CliError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigQ::from_integer(i.into())),
            None => Err(bad(format!("{n} is not an integer; write rationals as \"p/q\""))),
        },
        Value::String(s) => parse_scalar(s).map_err(|e| bad(e.to_string())),
        other => Err(bad(format!("unexpected coefficient {other}"))),
    }
}

fn opt_usize(v: &Value, key: &str) -> Result<Option<usize>, CliError> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x.as_u64().map(|n| Some(n as usize)).ok_or_else(|| bad(format!("{key} must be a nonnegative integer"))),
    }
}

pub fn parse(text: &str) -> Result<FamilyInput, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let secs = v.get("sections").and_then(Value::as_array).ok_or_else(|| bad("missing \"sections\" array"))?;
    if secs.is_empty() {
        return Err(bad("no sections"));
    }
    let grids = secs
        .iter()
        .map(|s| {
            s.as_array()
                .ok_or_else(|| bad("each section is an array of t-rows"))?
                .iter()
                .map(|row| {
                    row.as_array().ok_or_else(|| bad("each t-row is an array of x-coefficients"))?.iter().map(coefficient).collect()
                })
                .collect::<Result<Grid, CliError>>()
        })
        .collect::<Result<Vec<Grid>, CliError>>()?;
    Ok(FamilyInput {
        grids,
        trunc_t: opt_usize(&v, "trunc_t")?,
        trunc_x: opt_usize(&v, "trunc_x")?,
        bundle_degree: opt_usize(&v, "bundle_degree")?,
        genus: opt_usize(&v, "genus")?,
    })
}

impl FamilyInput {
    /// Smallest truncation that holds every given coefficient.
    pub fn min_trunc(&self) -> (usize, usize) {
        let t = self.grids.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let x = self.grids.iter().flat_map(|g| g.iter().map(Vec::len)).max().unwrap_or(0).max(1);
        (t, x)
    }

    /// Truncations from `--trunc`, the file, or a default with room for
    /// one division by `t` per section.
    pub fn build(&self, trunc: Option<usize>) -> Result<FamilySections<BigQ>, CliError> {
        let (mt, mx) = self.min_trunc();
        let n = self.grids.len();
        let (tt, tx) = match trunc {
            Some(k) => {
                if k < mt.max(mx) {
                    return Err(CliError::Usage(format!("--trunc {k} is below the minimum {} for this input", mt.max(mx))));
                }
                (k, k)
            }
            None => (self.trunc_t.unwrap_or(mt + n + 1), self.trunc_x.unwrap_or(mx + n)),
        };
        if tt < mt || tx < mx {
            return Err(CliError::Usage(format!("truncation ({tt}, {tx}) is below the input size ({mt}, {mx})")));
        }
        let fs = FamilySections::from_polys(&self.grids, tt, tx)?;
        Ok(match (self.bundle_degree, self.genus) {
            (None, None) => fs,
            (d, g) => {
                let d = d.unwrap_or(tx - 1);
                fs.with_degree(d, g.unwrap_or(0))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        let f = parse(r#"{"sections": [[[1, "1/2"]], [[], [0, 1]]], "trunc_t": 5}"#).unwrap();
        assert_eq!(f.grids[0][0][1], BigQ::new(1.into(), 2.into()));
        assert_eq!(f.trunc_t, Some(5));
        assert_eq!(f.min_trunc(), (2, 2));
    }

    #[test]
    fn rejects_floats_and_short_truncations() {
        assert!(parse(r#"{"sections": [[[1.5]]]}"#).is_err());
        let f = parse(r#"{"sections": [[[1, 2, 3]]]}"#).unwrap();
        assert!(f.build(Some(2)).is_err());
        assert!(f.build(Some(3)).is_ok());
    }
}
