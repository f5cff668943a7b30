//! Text formats.
//!
//! LUT: line 1 is the field record `p n c_0 .. c_n`, line 2 holds the q table
//! entries. BIV: line 1 is the half-field record, lines 2 and 3 the G and H
//! tables indexed by pair code `x * p^m + y`.

use std::path::Path;
use std::sync::Arc;

use super::{BivariateMap, MapTable};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec, DEFAULT_TABLE_CAP};

fn join(t: &[Elem]) -> String {
    let mut s = String::with_capacity(t.len() * 4);
    for (i, v) in t.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&v.to_string());
    }
    s
}

fn parse_row(line: &str) -> Result<Vec<Elem>> {
    line.split_whitespace()
        .map(|tok| tok.parse::<Elem>().map_err(|_| Error::Parse(format!("bad table entry `{}`", tok))))
        .collect()
}

fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}

pub fn write_lut(m: &MapTable) -> String {
    format!("{}\n{}\n", m.field(), join(m.table()))
}

pub fn parse_lut(text: &str) -> Result<MapTable> {
    parse_lut_with_cap(text, DEFAULT_TABLE_CAP)
}

pub fn parse_lut_with_cap(text: &str, cap: usize) -> Result<MapTable> {
    let mut it = lines(text);
    let header = it.next().ok_or_else(|| Error::Parse("missing field record".into()))?;
    let field = FieldSpec::parse_record_with_cap(header, cap)?;
    let table = parse_row(it.next().ok_or_else(|| Error::Parse("missing table line".into()))?)?;
    if it.next().is_some() {
        return Err(Error::Parse("unexpected content after the table line".into()));
    }
    MapTable::new(field, table)
}

pub fn read_lut(path: &Path, cap: usize) -> Result<MapTable> {
    parse_lut_with_cap(&std::fs::read_to_string(path)?, cap)
}

pub fn write_biv(bv: &BivariateMap) -> String {
    format!("{}\n{}\n{}\n", bv.half(), join(bv.g_table()), join(bv.h_table()))
}

pub fn parse_biv(text: &str, cap: usize) -> Result<BivariateMap> {
    let mut it = lines(text);
    let header = it.next().ok_or_else(|| Error::Parse("missing half-field record".into()))?;
    let half: Arc<FieldSpec> = FieldSpec::parse_record_with_cap(header, cap)?;
    let g = parse_row(it.next().ok_or_else(|| Error::Parse("missing G line".into()))?)?;
    let h = parse_row(it.next().ok_or_else(|| Error::Parse("missing H line".into()))?)?;
    if it.next().is_some() {
        return Err(Error::Parse("unexpected content after the H line".into()));
    }
    BivariateMap::new(half, g, h)
}

pub fn read_biv(path: &Path, cap: usize) -> Result<BivariateMap> {
    parse_biv(&std::fs::read_to_string(path)?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lut_round_trip() {
        let f = FieldSpec::build(3, 2, None).unwrap();
        let m = MapTable::from_expression(f, "x^2 + 1").unwrap();
        let text = write_lut(&m);
        assert_eq!(text.lines().count(), 2);
        assert_eq!(parse_lut(&text).unwrap(), m);
    }

    #[test]
    fn lut_explicit_text() {
        let m = parse_lut("2 2 1 1 1\n0 1 3 2\n").unwrap();
        assert_eq!(m.table(), &[0, 1, 3, 2]);
        assert!(parse_lut("2 2 1 1 1\n0 1 3\n").is_err());
        assert!(parse_lut("2 2 1 1 1\n0 1 3 x\n").is_err());
        assert!(parse_lut("2 2 1 1 1\n").is_err());
        assert!(parse_lut("2 2 1 1 1\n0 1 2 3\n0\n").is_err());
        // x^2 + 1 is reducible over F_2
        assert!(parse_lut("2 2 1 0 1\n0 1 2 3\n").is_err());
    }

    #[test]
    fn biv_round_trip() {
        let half = FieldSpec::binary(2).unwrap();
        let h = half.clone();
        let bv = BivariateMap::from_fn(half, move |x, y| (h.mul(x, y), h.add(x, y)));
        assert_eq!(parse_biv(&write_biv(&bv), DEFAULT_TABLE_CAP).unwrap(), bv);
    }
}
