//! Twist-system spec files.
//!
//! A spec file is TOML:
//!
//! ```toml
//! format = 1
//! dim = 2
//! parameter = "q"      # optional; required before `q` may appear
//! max_degree = 4       # optional
//! B = ["1 2 2 1 = q^1", "2 1 1 2 = q^-1", "1 1 1 1 = 1", "2 2 2 2 = 1"]
//! Btilde = ["..."]
//! C = ["..."]
//! ```
//!
//! Each entry `"i j k l = coefficient"` sets one matrix element; missing
//! entries are zero. `preset = "boson"` may replace the three lists.
//! Coefficients use the scalar grammar (`2`, `-1/2`, `q^-1`, `(q^2-1)/(q+3)`).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::grammar::parse_scalar;
use crate::twist::{Entry, Preset, TwistSystem};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    format: Option<Spanned<u32>>,
    dim: Spanned<i64>,
    parameter: Option<Spanned<String>>,
    max_degree: Option<Spanned<i64>>,
    preset: Option<Spanned<String>>,
    #[serde(rename = "B")]
    b: Option<Spanned<Vec<Spanned<String>>>>,
    #[serde(rename = "Btilde")]
    btilde: Option<Spanned<Vec<Spanned<String>>>>,
    #[serde(rename = "C")]
    c: Option<Spanned<Vec<Spanned<String>>>>,
}

/// Errors located in a spec file (1-based line and column).
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn locate(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn at(src: &str, offset: usize, message: impl Into<String>) -> SpecError {
    let (line, column) = locate(src, offset);
    SpecError {
        line,
        column,
        message: message.into(),
    }
}

fn at_span(src: &str, span: Range<usize>, message: impl Into<String>) -> SpecError {
    at(src, span.start, message)
}

/// Parsed contents of a spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub dim: usize,
    pub uses_q: bool,
    pub max_degree: Option<usize>,
    pub preset: Option<Preset>,
    pub b: Vec<Entry>,
    pub btilde: Vec<Entry>,
    pub c: Vec<Entry>,
}

const TABLES: [&str; 3] = ["B", "Btilde", "C"];

fn parse_entries(
    src: &str,
    name: &'static str,
    list: Option<Spanned<Vec<Spanned<String>>>>,
    dim: usize,
    uses_q: bool,
) -> std::result::Result<Vec<Entry>, SpecError> {
    let Some(list) = list else { return Ok(Vec::new()) };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (n, item) in list.into_inner().into_iter().enumerate() {
        let span = item.span();
        // column of the first character inside the quotes
        let body_at = span.start + 1;
        let text = item.into_inner();
        let who = format!("{name} entry {}", n + 1);
        let Some((lhs, rhs)) = text.split_once('=') else {
            return Err(at(src, body_at, format!("{who}: expected `i j k l = coefficient`")));
        };
        let mut idx: Vec<(usize, &str)> = Vec::new();
        let mut start = None;
        for (b, ch) in lhs.char_indices().chain([(lhs.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(b),
                (true, Some(a)) => {
                    idx.push((a, &lhs[a..b]));
                    start = None;
                }
                _ => {}
            }
        }
        if idx.len() != 4 {
            return Err(at(src, body_at, format!("{who}: expected four indices before `=`, found {}", idx.len())));
        }
        let mut ijkl = [0usize; 4];
        for (slot, &(off, tok)) in idx.iter().enumerate() {
            let v: usize = tok
                .parse()
                .map_err(|_| at(src, body_at + off, format!("{who}: `{tok}` is not an index")))?;
            if v == 0 || v > dim {
                return Err(at(src, body_at + off, format!("{who}: index {v} out of range 1..={dim}")));
            }
            ijkl[slot] = v;
        }
        if !seen.insert(ijkl) {
            return Err(at(src, body_at, format!("{who}: duplicate entry {ijkl:?}")));
        }
        let rhs_at = body_at + lhs.len() + 1;
        let coeff = parse_scalar(rhs, uses_q).map_err(|e| match e {
            Error::Parse { column, message } => {
                at(src, rhs_at + rhs.char_indices().nth(column - 1).map_or(rhs.len(), |(b, _)| b), format!("{who}: {message}"))
            }
            other => at(src, rhs_at, format!("{who}: {other}")),
        })?;
        out.push((ijkl, coeff));
    }
    Ok(out)
}

impl SpecFile {
    pub fn parse(src: &str) -> std::result::Result<SpecFile, SpecError> {
        let raw: Raw = toml::from_str(src).map_err(|e| {
            let off = e.span().map_or(0, |s| s.start);
            at(src, off, e.message().trim().to_string())
        })?;
        if let Some(f) = &raw.format {
            if *f.get_ref() != FORMAT_VERSION {
                return Err(at_span(src, f.span(), format!("unsupported format version {}", f.get_ref())));
            }
        }
        let dim = *raw.dim.get_ref();
        if !(1..=255).contains(&dim) {
            return Err(at_span(src, raw.dim.span(), "dim must be between 1 and 255"));
        }
        let dim = dim as usize;
        let max_degree = match &raw.max_degree {
            None => None,
            Some(m) if *m.get_ref() >= 1 => Some(*m.get_ref() as usize),
            Some(m) => return Err(at_span(src, m.span(), "max_degree must be at least 1")),
        };
        let mut uses_q = match &raw.parameter {
            None => false,
            Some(p) if p.get_ref() == "q" => true,
            Some(p) => return Err(at_span(src, p.span(), "the only supported parameter is \"q\"")),
        };
        if let Some(p) = &raw.preset {
            let preset: Preset = p.get_ref().parse().map_err(|e: Error| at_span(src, p.span(), e.to_string()))?;
            for (name, list) in TABLES.iter().zip([&raw.b, &raw.btilde, &raw.c]) {
                if let Some(l) = list {
                    return Err(at_span(src, l.span(), format!("`{name}` cannot be combined with `preset`")));
                }
            }
            uses_q |= preset.uses_q();
            let ts = TwistSystem::preset(preset, dim).map_err(|e| at_span(src, p.span(), e.to_string()))?;
            return Ok(SpecFile {
                preset: Some(preset),
                max_degree,
                ..SpecFile::from_twist_system(&ts, uses_q, None)
            });
        }
        Ok(SpecFile {
            dim,
            uses_q,
            max_degree,
            preset: None,
            b: parse_entries(src, "B", raw.b, dim, uses_q)?,
            btilde: parse_entries(src, "Btilde", raw.btilde, dim, uses_q)?,
            c: parse_entries(src, "C", raw.c, dim, uses_q)?,
        })
    }

    pub fn twist_system(&self) -> Result<TwistSystem> {
        TwistSystem::new(self.dim, self.b.clone(), self.btilde.clone(), self.c.clone())
    }

    pub fn from_twist_system(ts: &TwistSystem, uses_q: bool, max_degree: Option<usize>) -> SpecFile {
        SpecFile {
            dim: ts.dim(),
            uses_q: uses_q || ts.is_symbolic(),
            max_degree,
            preset: None,
            b: ts.b().entries(),
            btilde: ts.btilde().entries(),
            c: ts.c().entries(),
        }
    }

    pub fn from_preset(p: Preset, dim: usize) -> Result<SpecFile> {
        Ok(SpecFile::from_twist_system(&TwistSystem::preset(p, dim)?, p.uses_q(), None))
    }

    /// Deterministic serialization with explicit entry lists.
    pub fn write(&self, comment: Option<&str>) -> String {
        let mut s = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                let _ = writeln!(s, "# {line}");
            }
        }
        let _ = writeln!(s, "format = {FORMAT_VERSION}");
        let _ = writeln!(s, "dim = {}", self.dim);
        if self.uses_q {
            let _ = writeln!(s, "parameter = \"q\"");
        }
        if let Some(m) = self.max_degree {
            let _ = writeln!(s, "max_degree = {m}");
        }
        for (name, list) in TABLES.iter().zip([&self.b, &self.btilde, &self.c]) {
            if list.is_empty() {
                let _ = writeln!(s, "{name} = []");
                continue;
            }
            let _ = writeln!(s, "{name} = [");
            let mut sorted: Vec<&Entry> = list.iter().collect();
            sorted.sort_by_key(|a| a.0);
            for ([i, j, k, l], v) in sorted {
                let _ = writeln!(s, "  \"{i} {j} {k} {l} = {}\",", v);
            }
            let _ = writeln!(s, "]");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn preset_round_trip() {
        for p in Preset::ALL {
            let spec = SpecFile::from_preset(p, 2).unwrap();
            let text = spec.write(Some("generated"));
            let back = SpecFile::parse(&text).unwrap();
            assert_eq!(back.write(Some("generated")), text);
            assert_eq!(back.twist_system().unwrap(), TwistSystem::preset(p, 2).unwrap());
        }
    }

    #[test]
    fn boson_file_has_flip_entries() {
        let text = SpecFile::from_preset(Preset::Boson, 2).unwrap().write(None);
        assert_eq!(text.matches("\"1 2 2 1 = 1\"").count(), 3);
        let q = SpecFile::from_preset(Preset::QDeform, 2).unwrap().write(None);
        assert!(q.contains("\"1 2 2 1 = q^1\""));
        assert!(q.contains("\"1 2 2 1 = q^-1\""));
    }

    #[test]
    fn preset_shortcut() {
        let spec = SpecFile::parse("dim = 3\npreset = \"fermion\"\nmax_degree = 5\n").unwrap();
        assert_eq!(spec.max_degree, Some(5));
        assert_eq!(spec.twist_system().unwrap(), TwistSystem::preset(Preset::Fermion, 3).unwrap());
        let e = SpecFile::parse("dim = 2\npreset = \"boson\"\nB = []\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 5));
    }

    #[test]
    fn positioned_errors() {
        let e = SpecFile::parse("dim = 2\nB = [\"1 1 1 1 = 2 +\"]\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 20));
        let e = SpecFile::parse("dim = 2\nB = [\"1 3 1 1 = 2\"]\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 9));
        assert!(e.message.contains("B entry 1"));
        let e = SpecFile::parse("dim = 2\nC = [\"1 1 1 1 = q\"]\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 17));
        let e = SpecFile::parse("dim = 2\nbogus = 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = SpecFile::parse("dim = 2\nB = [\"1 1 1 1 = 1\", \"1 1 1 1 = 2\"]\n").unwrap_err();
        assert!(e.message.contains("duplicate"));
        assert!(SpecFile::parse("dim = 0\n").is_err());
        assert!(SpecFile::parse("dim = 2\npreset = \"anyon\"\n").is_err());
    }

    #[test]
    fn rational_function_coefficients_round_trip() {
        let v = Scalar::parse("(q^2-1)/(q^3+2)").unwrap();
        let ts = TwistSystem::new(1, [([1, 1, 1, 1], v)], [], []).unwrap();
        let spec = SpecFile::from_twist_system(&ts, true, Some(3));
        let back = SpecFile::parse(&spec.write(None)).unwrap();
        assert_eq!(back, spec);
    }
}
