//! Named corpus of small permutation groups.
//!
//! Each group is stored in the group-spec text format under `data/catalog/`,
//! with a JSON-lines manifest recording its expected order and class tags.
//! Files are embedded at build time and parsed on first use.

use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

const MANIFEST: &str = include_str!("../data/catalog/manifest.jsonl");

const FILES: &[(&str, &str)] = &[
    ("C2.grp", include_str!("../data/catalog/C2.grp")),
    ("C3.grp", include_str!("../data/catalog/C3.grp")),
    ("C4.grp", include_str!("../data/catalog/C4.grp")),
    ("C5.grp", include_str!("../data/catalog/C5.grp")),
    ("C6.grp", include_str!("../data/catalog/C6.grp")),
    ("C7.grp", include_str!("../data/catalog/C7.grp")),
    ("C8.grp", include_str!("../data/catalog/C8.grp")),
    ("C9.grp", include_str!("../data/catalog/C9.grp")),
    ("C10.grp", include_str!("../data/catalog/C10.grp")),
    ("C11.grp", include_str!("../data/catalog/C11.grp")),
    ("C12.grp", include_str!("../data/catalog/C12.grp")),
    ("D6.grp", include_str!("../data/catalog/D6.grp")),
    ("D8.grp", include_str!("../data/catalog/D8.grp")),
    ("D10.grp", include_str!("../data/catalog/D10.grp")),
    ("D12.grp", include_str!("../data/catalog/D12.grp")),
    ("D14.grp", include_str!("../data/catalog/D14.grp")),
    ("D16.grp", include_str!("../data/catalog/D16.grp")),
    ("D18.grp", include_str!("../data/catalog/D18.grp")),
    ("D54.grp", include_str!("../data/catalog/D54.grp")),
    ("D162.grp", include_str!("../data/catalog/D162.grp")),
    ("Klein.grp", include_str!("../data/catalog/Klein.grp")),
    ("Q8.grp", include_str!("../data/catalog/Q8.grp")),
    ("SL23.grp", include_str!("../data/catalog/SL23.grp")),
    ("S3.grp", include_str!("../data/catalog/S3.grp")),
    ("S4.grp", include_str!("../data/catalog/S4.grp")),
    ("S5.grp", include_str!("../data/catalog/S5.grp")),
    ("S6.grp", include_str!("../data/catalog/S6.grp")),
    ("S7.grp", include_str!("../data/catalog/S7.grp")),
    ("A4.grp", include_str!("../data/catalog/A4.grp")),
    ("A5.grp", include_str!("../data/catalog/A5.grp")),
    ("A6.grp", include_str!("../data/catalog/A6.grp")),
    ("A7.grp", include_str!("../data/catalog/A7.grp")),
    ("PSL27.grp", include_str!("../data/catalog/PSL27.grp")),
    ("C3xA5.grp", include_str!("../data/catalog/C3xA5.grp")),
    ("S3xA5.grp", include_str!("../data/catalog/S3xA5.grp")),
    ("Q8xS3.grp", include_str!("../data/catalog/Q8xS3.grp")),
    ("S3xC2.grp", include_str!("../data/catalog/S3xC2.grp")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    pub soluble: bool,
    pub nilpotent: bool,
    pub abelian: bool,
    pub simple: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub file: String,
    pub expected_order: u64,
    pub tags: Tags,
}

impl CatalogEntry {
    pub fn source(&self) -> &'static str {
        FILES
            .iter()
            .find(|(f, _)| *f == self.file)
            .map(|(_, s)| *s)
            .unwrap_or_else(|| panic!("catalog file {} not embedded", self.file))
    }

    pub fn load(&self) -> Result<FiniteGroup> {
        let (degree, gens) = parse_group_spec(self.source())?;
        let g = FiniteGroup::from_generators(degree, gens)?.with_name(self.name.clone());
        if g.order() != &BigUint::from(self.expected_order) {
            return Err(Error::Precondition(format!(
                "catalog group {} has order {}, manifest says {}",
                self.name,
                g.order(),
                self.expected_order
            )));
        }
        Ok(g)
    }
}

pub fn entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        MANIFEST
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).expect("valid catalog manifest"))
            .collect()
    })
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    entries()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn load(name: &str) -> Result<FiniteGroup> {
    entry(name)?.load()
}

/// Entries whose expected order is at most `max_order`, in manifest order.
pub fn up_to_order(max_order: u64) -> impl Iterator<Item = &'static CatalogEntry> {
    entries().iter().filter(move |e| e.expected_order <= max_order)
}

/// Parses the group-spec text format: a `degree N` line followed by one
/// generator per line in 1-indexed cycle notation. Blank lines and lines
/// starting with `#` are skipped. Errors carry 1-based line numbers.
pub fn parse_group_spec(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = n + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let value = line
                    .strip_prefix("degree")
                    .map(str::trim)
                    .and_then(|v| v.parse::<usize>().ok())
                    .filter(|&d| d > 0)
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        message: format!("expected `degree N` with N > 0, found `{line}`"),
                    })?;
                degree = Some(value);
            }
            Some(d) => {
                let p = Permutation::parse(d, line).map_err(|e| Error::Parse {
                    line: lineno,
                    message: match e {
                        Error::Parse { message, .. } => message,
                        other => other.to_string(),
                    },
                })?;
                gens.push(p);
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing `degree N` line".into(),
    })?;
    Ok((degree, gens))
}

pub fn format_group_spec(group: &FiniteGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
