//! `crflat-series-v1` JSON encoding.
//!
//! ```json
//! { "format": "crflat-series-v1", "vars": ["z1","z1b","z2","z2b"], "order": 4,
//!   "terms": [ { "exp": [1,1,0,0], "re": 1.0, "im": 0.0 } ] }
//! ```
//!
//! Terms are written in graded-lexicographic order and zero coefficients are
//! omitted, so writing is canonical and byte-stable.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{HoloSeries, Monomial, Series, C64, ORDER_CAP};
use crate::error::{Error, Result};

pub const SERIES_FORMAT: &str = "crflat-series-v1";
pub const VARS: [&str; 4] = ["z1", "z1b", "z2", "z2b"];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermEntry {
    pub exp: [u32; 4],
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesFile {
    pub format: String,
    pub vars: Vec<String>,
    pub order: u32,
    pub terms: Vec<TermEntry>,
}

/// A coefficient of `z2^exp` in holomorphic data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HoloTerm {
    pub exp: u32,
    pub re: f64,
    pub im: f64,
}

impl From<&Series> for SeriesFile {
    fn from(s: &Series) -> Self {
        SeriesFile {
            format: SERIES_FORMAT.to_string(),
            vars: VARS.iter().map(|v| v.to_string()).collect(),
            order: s.order(),
            terms: s
                .terms()
                .map(|(m, c)| TermEntry {
                    exp: m.0,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesFile> for Series {
    type Error = Error;

    fn try_from(f: SeriesFile) -> Result<Series> {
        if f.format != SERIES_FORMAT {
            return Err(Error::Format(format!(
                "expected format {SERIES_FORMAT:?}, found {:?}",
                f.format
            )));
        }
        if f.vars != VARS {
            return Err(Error::Format(format!("unexpected vars {:?}", f.vars)));
        }
        if f.order > ORDER_CAP {
            return Err(Error::Format(format!(
                "order {} exceeds the cap {ORDER_CAP}",
                f.order
            )));
        }
        let mut seen = HashSet::new();
        let mut terms = Vec::with_capacity(f.terms.len());
        for t in f.terms {
            let m = Monomial(t.exp);
            if m.degree() > f.order {
                return Err(Error::Format(format!(
                    "term {m} has degree above the declared order {}",
                    f.order
                )));
            }
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(Error::Format(format!("non-finite coefficient for {m}")));
            }
            if !seen.insert(m) {
                return Err(Error::Format(format!("duplicate term {m}")));
            }
            terms.push((m, C64::new(t.re, t.im)));
        }
        Ok(Series::from_terms(terms, f.order))
    }
}

pub fn to_json(s: &Series) -> String {
    let mut out = serde_json::to_string_pretty(&SeriesFile::from(s)).expect("serializable");
    out.push('\n');
    out
}

pub fn from_json(text: &str) -> Result<Series> {
    let f: SeriesFile = serde_json::from_str(text)?;
    Series::try_from(f)
}

pub fn read_series(path: &Path) -> Result<Series> {
    from_json(&std::fs::read_to_string(path)?)
}

pub fn write_series(path: &Path, s: &Series) -> Result<()> {
    std::fs::write(path, to_json(s))?;
    Ok(())
}

pub fn holo_from_terms(terms: &[HoloTerm]) -> Result<HoloSeries> {
    let mut coeffs = Vec::new();
    let mut seen = HashSet::new();
    for t in terms {
        if t.exp > ORDER_CAP {
            return Err(Error::Format(format!("exponent {} exceeds the cap", t.exp)));
        }
        if !seen.insert(t.exp) {
            return Err(Error::Format(format!("duplicate exponent {}", t.exp)));
        }
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::Format(format!(
                "non-finite coefficient for z2^{}",
                t.exp
            )));
        }
        let e = t.exp as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, C64::new(0.0, 0.0));
        }
        coeffs[e] = C64::new(t.re, t.im);
    }
    Ok(HoloSeries::polynomial(coeffs))
}

pub fn holo_to_terms(h: &HoloSeries) -> Vec<HoloTerm> {
    h.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() != 0.0)
        .map(|(e, c)| HoloTerm {
            exp: e as u32,
            re: c.re,
            im: c.im,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_roundtrip() {
        let s = Series::from_terms(
            [
                (Monomial::new(0, 0, 1, 1), C64::new(0.1, -1.0 / 3.0)),
                (
                    Monomial::new(1, 1, 0, 0),
                    C64::new(std::f64::consts::PI, 0.0),
                ),
            ],
            4,
        );
        let text = to_json(&s);
        let back = from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(to_json(&back), text);
        let file: SeriesFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file.terms[0].exp, [0, 0, 1, 1]);
        assert_eq!(file.terms[1].exp, [1, 1, 0, 0]);
    }

    #[test]
    fn rejects_bad_files() {
        let wrong_format = r#"{"format":"x","vars":["z1","z1b","z2","z2b"],"order":2,"terms":[]}"#;
        assert!(matches!(from_json(wrong_format), Err(Error::Format(_))));
        let too_high = r#"{"format":"crflat-series-v1","vars":["z1","z1b","z2","z2b"],"order":1,
            "terms":[{"exp":[1,1,0,0],"re":1.0,"im":0.0}]}"#;
        assert!(matches!(from_json(too_high), Err(Error::Format(_))));
        assert!(matches!(from_json("not json"), Err(Error::Format(_))));
    }
}
