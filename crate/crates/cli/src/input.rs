//! Group description files.
//!
//! One JSON document per file:
//!
//! ```text
//! {"kind":"cayley","name":"C2","table":[[0,1],[1,0]]}
//! {"kind":"perm","name":"S3","degree":3,"generators":[[1,0,2],[1,2,0]]}
//! {"kind":"abelian-presentation","name":"fib","generators":2,"relations":[],"automorphism":[[0,1],[1,1]]}
//! ```
//!
//! Element and point numbers are 0-based. Relations are columns of length
//! `generators`; the automorphism is a matrix acting on column vectors.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use grpoly_core::abelian::{FgAbelianAutomorphism, FgAbelianGroup, IntMatrix};
use grpoly_core::error::Error as CoreError;
use grpoly_core::group::{build_group, FiniteGroup, GroupSpec, DEFAULT_ELEMENT_CAP};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawFile {
    Cayley {
        name: Option<String>,
        table: Vec<Vec<usize>>,
    },
    Perm {
        name: Option<String>,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    AbelianPresentation {
        name: Option<String>,
        generators: usize,
        #[serde(default)]
        relations: Vec<Vec<i64>>,
        #[serde(default)]
        automorphism: Option<Vec<Vec<i64>>>,
    },
}

/// A problem with an input file; `field` names the offending entry when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub source: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, ":{l}:{c}")?;
        }
        if let Some(field) = &self.field {
            write!(f, ": field `{field}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum GroupInput {
    Finite(Arc<FiniteGroup>),
    Abelian {
        group: FgAbelianGroup,
        automorphism: Option<FgAbelianAutomorphism>,
    },
}

/// A validated group description together with the document it came from.
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub name: String,
    pub kind: String,
    pub input: GroupInput,
    pub document: Value,
}

impl GroupFile {
    pub fn finite(&self) -> Option<&Arc<FiniteGroup>> {
        match &self.input {
            GroupInput::Finite(g) => Some(g),
            GroupInput::Abelian { .. } => None,
        }
    }
}

pub fn read_group_file(path: &Path) -> Result<GroupFile, InputError> {
    let source = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError {
        source: source.clone(),
        line: None,
        column: None,
        field: None,
        message: e.to_string(),
    })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("group");
    parse_group_file(&text, &source, stem)
}

/// Parses and validates one group document. `default_name` is used when the
/// document has no `name`.
pub fn parse_group_file(text: &str, source: &str, default_name: &str) -> Result<GroupFile, InputError> {
    let err = |field: Option<&str>, message: String| InputError {
        source: source.to_string(),
        line: None,
        column: None,
        field: field.map(str::to_string),
        message,
    };
    let syntax = |e: serde_json::Error| InputError {
        source: source.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
        field: None,
        message: e.to_string(),
    };
    let document: Value = serde_json::from_str(text).map_err(syntax)?;
    let raw: RawFile = serde_json::from_str(text).map_err(syntax)?;
    let name_or = |n: Option<String>| n.unwrap_or_else(|| default_name.to_string());
    let core = |field: &str, e: CoreError| err(Some(field), e.to_string());
    match raw {
        RawFile::Cayley { name, table } => {
            let name = name_or(name);
            let g = build_group(&name, &GroupSpec::Table(table), DEFAULT_ELEMENT_CAP)
                .map_err(|e| core("table", e))?;
            Ok(GroupFile {
                name,
                kind: "cayley".into(),
                input: GroupInput::Finite(Arc::new(g)),
                document,
            })
        }
        RawFile::Perm {
            name,
            degree,
            generators,
        } => {
            let name = name_or(name);
            for (i, g) in generators.iter().enumerate() {
                if g.len() != degree {
                    return Err(err(
                        Some(&format!("generators[{i}]")),
                        format!("has {} images, expected degree {degree}", g.len()),
                    ));
                }
            }
            let g = build_group(
                &name,
                &GroupSpec::Permutations { degree, generators },
                DEFAULT_ELEMENT_CAP,
            )
            .map_err(|e| core("generators", e))?;
            Ok(GroupFile {
                name,
                kind: "perm".into(),
                input: GroupInput::Finite(Arc::new(g)),
                document,
            })
        }
        RawFile::AbelianPresentation {
            name,
            generators,
            relations,
            automorphism,
        } => {
            let name = name_or(name);
            for (i, col) in relations.iter().enumerate() {
                if col.len() != generators {
                    return Err(err(
                        Some(&format!("relations[{i}]")),
                        format!("has length {}, expected {generators}", col.len()),
                    ));
                }
            }
            let columns: Vec<Vec<BigInt>> = relations
                .iter()
                .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let rel = IntMatrix::from_columns(generators, &columns).map_err(|e| core("relations", e))?;
            let group = FgAbelianGroup::new(generators, rel).map_err(|e| core("relations", e))?;
            let automorphism = match automorphism {
                None => None,
                Some(rows) => {
                    if rows.len() != generators || rows.iter().any(|r| r.len() != generators) {
                        return Err(err(
                            Some("automorphism"),
                            format!("expected a {generators}x{generators} matrix"),
                        ));
                    }
                    let m = IntMatrix::from_rows(&rows).map_err(|e| core("automorphism", e))?;
                    Some(group.check_automorphism(m).map_err(|e| core("automorphism", e))?)
                }
            };
            Ok(GroupFile {
                name,
                kind: "abelian-presentation".into(),
                input: GroupInput::Abelian {
                    group,
                    automorphism,
                },
                document,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<GroupFile, InputError> {
        parse_group_file(text, "<test>", "g")
    }

    #[test]
    fn spec_examples() {
        let c2 = parse(r#"{"kind":"cayley","name":"C2","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(c2.finite().unwrap().order(), 2);
        let s3 = parse(r#"{"kind":"perm","name":"S3","degree":3,"generators":[[1,0,2],[1,2,0]]}"#).unwrap();
        assert_eq!(s3.finite().unwrap().order(), 6);
        let bad = parse(r#"{"kind":"cayley","table":[[1,0],[0,1]]}"#).unwrap_err();
        assert_eq!(bad.field.as_deref(), Some("table"));
        assert!(bad.message.contains("identity"), "{bad}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse("{\"kind\":\"cayley\",\n \"table\": [[0,1],[1,0]\n}").unwrap_err();
        assert_eq!(e.line, Some(3));
        assert!(e.column.is_some());
        let e = parse(r#"{"kind":"cayley","name":"x"}"#).unwrap_err();
        assert!(e.message.contains("table"), "{e}");
        let e = parse(r#"{"kind":"ring","table":[[0]]}"#).unwrap_err();
        assert!(e.message.contains("ring"), "{e}");
    }

    #[test]
    fn validation_errors() {
        let e = parse(r#"{"kind":"cayley","table":[[0,1],[0,1]]}"#).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("table"));
        let e = parse(r#"{"kind":"perm","degree":3,"generators":[[1,0]]}"#).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("generators[0]"));
        let e = parse(r#"{"kind":"perm","degree":3,"generators":[[1,1,0]]}"#).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("generators"));
        let e = parse(r#"{"kind":"abelian-presentation","generators":2,"automorphism":[[2,0],[0,1]]}"#)
            .unwrap_err();
        assert_eq!(e.field.as_deref(), Some("automorphism"));
        let e = parse(r#"{"kind":"abelian-presentation","generators":2,"relations":[[1]]}"#).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("relations[0]"));
    }

    #[test]
    fn abelian_presentation() {
        let f = parse(r#"{"kind":"abelian-presentation","generators":1,"relations":[[6]],"automorphism":[[5]]}"#)
            .unwrap();
        match f.input {
            GroupInput::Abelian { group, automorphism } => {
                assert_eq!(group.torsion_invariants().len(), 1);
                assert!(automorphism.is_some());
            }
            _ => panic!("expected abelian input"),
        }
        assert_eq!(f.name, "g");
    }
}
