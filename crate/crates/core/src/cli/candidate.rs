//! JSON form of an [`EmbeddingCandidate`]: each entry is
//! `["re_num", "re_den", "im_num", "im_den"]` as decimal integer strings.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedcheck::EmbeddingCandidate;
use crate::exactmat::{GaussMatrix, GaussRational};
use crate::hermsym::SuPQShape;

pub type Entry = [String; 4];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateFile {
    pub p: usize,
    pub f_u: Vec<Vec<Entry>>,
    pub f_v: Vec<Vec<Entry>>,
    pub f_w: Vec<Vec<Entry>>,
}

#[derive(Debug, Error)]
pub enum CandidateError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    /// Well-formed file whose matrices are not in `su(p,p)`.
    #[error("{0}")]
    Membership(crate::Error),
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> CandidateError {
    CandidateError::Field { field: field.into(), message: message.into() }
}

fn parse_int(s: &str, field: &str) -> Result<BigInt, CandidateError> {
    s.trim().parse::<BigInt>().map_err(|_| field_err(field, format!("{s:?} is not a decimal integer")))
}

fn parse_entry(e: &Entry, field: &str) -> Result<GaussRational, CandidateError> {
    let [rn, rd, im_n, im_d] = e;
    let part = |num: &str, den: &str, which: &str| -> Result<BigRational, CandidateError> {
        let den = parse_int(den, field)?;
        if den.is_zero() {
            return Err(field_err(field, format!("zero {which} denominator")));
        }
        Ok(BigRational::new(parse_int(num, field)?, den))
    };
    Ok(GaussRational::new(part(rn, rd, "real")?, part(im_n, im_d, "imaginary")?))
}

fn parse_matrix(rows: &[Vec<Entry>], n: usize, name: &str) -> Result<GaussMatrix, CandidateError> {
    if rows.len() != n {
        return Err(field_err(name, format!("{} rows, expected {n}", rows.len())));
    }
    let mut out = GaussMatrix::zeros(n, n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(field_err(format!("{name}[{r}]"), format!("{} entries, expected {n}", row.len())));
        }
        for (c, e) in row.iter().enumerate() {
            out.set(r, c, parse_entry(e, &format!("{name}[{r}][{c}]"))?);
        }
    }
    Ok(out)
}

fn entry_of(z: &GaussRational) -> Entry {
    [z.re.numer().to_string(), z.re.denom().to_string(), z.im.numer().to_string(), z.im.denom().to_string()]
}

fn rows_of(m: &GaussMatrix) -> Vec<Vec<Entry>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| entry_of(m.get(r, c))).collect()).collect()
}

impl CandidateFile {
    pub fn parse(text: &str) -> Result<Self, CandidateError> {
        serde_json::from_str(text).map_err(|e| CandidateError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn read(path: &Path) -> Result<Self, CandidateError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CandidateError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn from_candidate(c: &EmbeddingCandidate) -> Self {
        Self { p: c.shape().p(), f_u: rows_of(&c.f_u), f_v: rows_of(&c.f_v), f_w: rows_of(&c.f_w) }
    }

    /// Parsed matrices, before the `su(p,p)` membership test.
    pub fn matrices(&self) -> Result<(SuPQShape, [GaussMatrix; 3]), CandidateError> {
        let shape = SuPQShape::new(self.p).map_err(|e| field_err("p", e.to_string()))?;
        let n = shape.dim();
        Ok((shape, [parse_matrix(&self.f_u, n, "f_u")?, parse_matrix(&self.f_v, n, "f_v")?, parse_matrix(&self.f_w, n, "f_w")?]))
    }

    pub fn to_candidate(&self) -> Result<EmbeddingCandidate, CandidateError> {
        let (shape, [f_u, f_v, f_w]) = self.matrices()?;
        EmbeddingCandidate::new(shape, f_u, f_v, f_w).map_err(CandidateError::Membership)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("candidate files serialize");
        s.push('\n');
        s
    }
}
