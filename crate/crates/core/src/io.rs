//! The `.tri` text format.
//!
//! One face per line as space-separated positive labels; `#` starts a comment line.
//! A file may hold several entries separated by blank lines, each optionally opened by a
//! `name: <string>` header. Surfaces use three labels per line; other complexes may list
//! maximal faces of any size.

use std::fmt::Write as _;
use std::path::Path;

use crate::complex::{build_complex, SimplicialComplex};
use crate::error::{Error, Result};

/// One entry of a `.tri` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriEntry {
    pub name: Option<String>,
    /// First line of the entry, 1-based.
    pub line: usize,
    pub faces: Vec<Vec<i64>>,
}

impl TriEntry {
    pub fn complex(&self) -> Result<SimplicialComplex> {
        build_complex(&self.faces).map_err(|e| Error::Parse { line: self.line, message: e.to_string() })
    }
}

pub fn parse_tri(text: &str) -> Result<Vec<TriEntry>> {
    let mut entries = Vec::new();
    let mut cur: Option<TriEntry> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            entries.extend(cur.take().filter(|e| !e.faces.is_empty()));
            continue;
        }
        let entry = cur.get_or_insert_with(|| TriEntry { name: None, line: line_no, faces: Vec::new() });
        if let Some(name) = line.strip_prefix("name:") {
            if !entry.faces.is_empty() || entry.name.is_some() {
                return Err(Error::Parse { line: line_no, message: "name header must open an entry".into() });
            }
            entry.name = Some(name.trim().to_string());
            continue;
        }
        let face = line
            .split_whitespace()
            .map(|tok| match tok.parse::<i64>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::Parse { line: line_no, message: format!("expected a positive label, found '{tok}'") }),
            })
            .collect::<Result<Vec<_>>>()?;
        entry.faces.push(face);
    }
    entries.extend(cur.filter(|e| !e.faces.is_empty()));
    Ok(entries)
}

pub fn read_tri_file(path: &Path) -> Result<Vec<TriEntry>> {
    parse_tri(&std::fs::read_to_string(path)?)
}

/// Reads a file holding exactly one complex.
pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    let entries = read_tri_file(path)?;
    match entries.as_slice() {
        [one] => one.complex(),
        [] => Err(Error::Parse { line: 1, message: "no faces".into() }),
        [_, second, ..] => Err(Error::Parse { line: second.line, message: "expected a single entry".into() }),
    }
}

/// Writes entries in the format [`parse_tri`] reads.
pub fn write_tri<'a, I>(entries: I) -> String
where
    I: IntoIterator<Item = (Option<&'a str>, &'a [[u32; 3]])>,
{
    let mut out = String::new();
    for (i, (name, tris)) in entries.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if let Some(name) = name {
            let _ = writeln!(out, "name: {name}");
        }
        for t in tris {
            let _ = writeln!(out, "{} {} {}", t[0], t[1], t[2]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_entry_round_trip() {
        let text = "# two entries\nname: first\n1 2 3\n1 2 4\n\n\nname: second\n5 6 7\n";
        let entries = parse_tri(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].name.as_deref(), Some("first"));
        assert_eq!(entries[1].faces, vec![vec![5, 6, 7]]);
        assert_eq!(entries[1].complex().unwrap().f_vector(), vec![3, 3, 1]);
        let a = [[1, 2, 3], [1, 2, 4]];
        let b = [[5, 6, 7]];
        let written = write_tri([(Some("first"), &a[..]), (Some("second"), &b[..])]);
        let again = parse_tri(&written).unwrap();
        assert_eq!(again.iter().map(|e| e.faces.clone()).collect::<Vec<_>>(), entries.iter().map(|e| e.faces.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse_tri("1 2 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_tri("1 2 3\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_tri("1 2 3\nname: late\n"), Err(Error::Parse { line: 2, .. })));
        let dup = parse_tri("1 1 2\n").unwrap();
        assert!(dup[0].complex().is_err());
    }
}
