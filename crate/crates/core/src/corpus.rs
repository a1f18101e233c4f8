//! Line-oriented group corpus format.
//!
//! ```text
//! # comments and blank lines are ignored
//! GROUP <id> DEG <d> [NAME <name>] [ORDER <n>] [SOURCE <source>]
//! GEN <i1> <i2> ... <id>
//! END
//! ```
//!
//! Images are 1-based; entry `j` of a `GEN` line is the image of point `j`.
//! Identifiers, names and sources are single whitespace-free tokens.

use std::collections::HashSet;
use std::fmt;
use std::io::BufRead;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{PermutationGroup, DEFAULT_CAP};
use crate::permutation::Permutation;

#[derive(Debug, Clone)]
pub struct GroupRecord {
    pub id: String,
    pub name: Option<String>,
    pub expected_order: Option<u64>,
    pub source: String,
    /// Line of the `GROUP` header.
    pub line: usize,
    pub group: PermutationGroup,
}

impl GroupRecord {
    pub fn new(id: impl Into<String>, group: PermutationGroup, source: impl Into<String>) -> Self {
        GroupRecord {
            id: id.into(),
            name: None,
            expected_order: None,
            source: source.into(),
            line: 0,
            group,
        }
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }

    /// Order known without enumerating, if declared.
    pub fn known_order(&self) -> Option<u64> {
        if self.group.is_materialized() {
            self.group.order().ok()
        } else {
            self.expected_order
        }
    }
}

impl fmt::Display for GroupRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GROUP {} DEG {}", self.id, self.degree())?;
        if let Some(name) = &self.name {
            write!(f, " NAME {name}")?;
        }
        if let Some(order) = self.expected_order {
            write!(f, " ORDER {order}")?;
        }
        writeln!(f, " SOURCE {}", self.source)?;
        for g in self.generators() {
            let images: Vec<String> = g.images().iter().map(usize::to_string).collect();
            writeln!(f, "GEN {}", images.join(" "))?;
        }
        writeln!(f, "END")
    }
}

#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Enumeration cap attached to every parsed group.
    pub cap: usize,
    /// Enumerate groups with a declared `ORDER` and reject mismatches.
    /// Groups over the cap are left unchecked.
    pub verify_orders: bool,
    /// Source recorded for groups without a `SOURCE` field.
    pub default_source: String,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            cap: DEFAULT_CAP,
            verify_orders: true,
            default_source: "unspecified".to_string(),
        }
    }
}

struct Pending {
    id: String,
    degree: usize,
    name: Option<String>,
    expected_order: Option<u64>,
    source: Option<String>,
    line: usize,
    generators: Vec<Permutation>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(char::is_whitespace)
}

fn parse_header(fields: &[&str], line: usize) -> Result<Pending> {
    let id = fields
        .get(1)
        .ok_or_else(|| parse_err(line, "GROUP without an id"))?
        .to_string();
    let mut pending = Pending {
        id,
        degree: 0,
        name: None,
        expected_order: None,
        source: None,
        line,
        generators: Vec::new(),
    };
    let mut degree = None;
    let mut rest = fields[2..].iter();
    while let Some(&key) = rest.next() {
        let value = *rest
            .next()
            .ok_or_else(|| parse_err(line, format!("{key} without a value")))?;
        let number = || -> Result<u64> {
            value
                .parse()
                .map_err(|_| parse_err(line, format!("{key} value {value:?} is not a number")))
        };
        let dup = |set: bool| -> Result<()> {
            if set {
                Err(parse_err(line, format!("{key} given twice")))
            } else {
                Ok(())
            }
        };
        match key {
            "DEG" => {
                dup(degree.is_some())?;
                degree = Some(number()? as usize);
            }
            "NAME" => {
                dup(pending.name.is_some())?;
                pending.name = Some(value.to_string());
            }
            "ORDER" => {
                dup(pending.expected_order.is_some())?;
                let o = number()?;
                if o == 0 {
                    return Err(parse_err(line, "ORDER must be positive"));
                }
                pending.expected_order = Some(o);
            }
            "SOURCE" => {
                dup(pending.source.is_some())?;
                pending.source = Some(value.to_string());
            }
            other => return Err(parse_err(line, format!("unknown GROUP field {other:?}"))),
        }
    }
    pending.degree = degree.ok_or_else(|| parse_err(line, "GROUP without DEG"))?;
    if pending.degree > crate::permutation::MAX_DEGREE {
        return Err(parse_err(line, format!("degree {} is too large", pending.degree)));
    }
    Ok(pending)
}

fn finish(pending: Pending, options: &ParseOptions) -> Result<GroupRecord> {
    let line = pending.line;
    let group = PermutationGroup::new(pending.degree, pending.generators)
        .map_err(|e| parse_err(line, e.to_string()))?
        .with_cap(options.cap);
    if let (true, Some(expected)) = (options.verify_orders, pending.expected_order) {
        match group.order() {
            Ok(actual) if actual != expected => {
                return Err(parse_err(
                    line,
                    format!("group {} has order {actual}, declared {expected}", pending.id),
                ))
            }
            Ok(_) | Err(Error::CapExceeded { .. }) => {}
            Err(e) => return Err(parse_err(line, e.to_string())),
        }
    }
    Ok(GroupRecord {
        id: pending.id,
        name: pending.name,
        expected_order: pending.expected_order,
        source: pending.source.unwrap_or_else(|| options.default_source.clone()),
        line,
        group,
    })
}

pub fn parse_corpus(input: impl BufRead) -> Result<Vec<GroupRecord>> {
    parse_corpus_with(input, &ParseOptions::default())
}

pub fn parse_corpus_with(input: impl BufRead, options: &ParseOptions) -> Result<Vec<GroupRecord>> {
    let mut records = Vec::new();
    let mut ids = HashSet::new();
    let mut pending: Option<Pending> = None;
    let mut last_line = 0;
    for (idx, text) in input.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let text = text.map_err(|e| parse_err(line, format!("read error: {e}")))?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        match fields[0] {
            "GROUP" => {
                if let Some(open) = &pending {
                    return Err(parse_err(line, format!("GROUP {} is missing END", open.id)));
                }
                let header = parse_header(&fields, line)?;
                if !ids.insert(header.id.clone()) {
                    return Err(parse_err(line, format!("duplicate id {}", header.id)));
                }
                pending = Some(header);
            }
            "GEN" => {
                let open = pending
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "GEN outside a GROUP block"))?;
                let images = fields[1..]
                    .iter()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| parse_err(line, "GEN entries must be positive integers"))?;
                if images.len() != open.degree {
                    return Err(parse_err(
                        line,
                        format!("GEN has {} entries, expected {}", images.len(), open.degree),
                    ));
                }
                let perm = Permutation::from_images(&images).map_err(|e| parse_err(line, e.to_string()))?;
                open.generators.push(perm);
            }
            "END" => {
                let open = pending.take().ok_or_else(|| parse_err(line, "END without GROUP"))?;
                records.push(finish(open, options)?);
            }
            other => return Err(parse_err(line, format!("unknown keyword {other:?}"))),
        }
    }
    if let Some(open) = pending {
        return Err(parse_err(last_line, format!("GROUP {} is missing END", open.id)));
    }
    Ok(records)
}

/// Reads and concatenates several corpus files; ids must be unique across all of them.
pub fn load_corpus_files<P: AsRef<std::path::Path>>(paths: &[P], options: &ParseOptions) -> Result<Vec<GroupRecord>> {
    let mut all = Vec::new();
    let mut ids = HashSet::new();
    for path in paths {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| Error::invalid(format!("cannot open {}: {e}", path.display())))?;
        let records = parse_corpus_with(std::io::BufReader::new(file), options).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })?;
        for r in records {
            if !ids.insert(r.id.clone()) {
                return Err(Error::invalid(format!("duplicate id {} in {}", r.id, path.display())));
            }
            all.push(r);
        }
    }
    Ok(all)
}

pub fn serialize_corpus(records: &[GroupRecord]) -> String {
    records.iter().map(|r| r.to_string()).collect()
}

/// SHA-256 of the serialized corpus, as `sha256:<hex>`.
pub fn corpus_digest(records: &[GroupRecord]) -> String {
    let digest = Sha256::digest(serialize_corpus(records).as_bytes());
    format!("sha256:{}", hex::encode(digest))
}

pub(crate) fn check_token(kind: &str, value: &str) -> Result<()> {
    if valid_token(value) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{kind} {value:?} must be a non-empty token without whitespace")))
    }
}

/// Record for a group built in-process, validated so that it serializes cleanly.
pub fn record_for(id: &str, name: Option<&str>, source: &str, group: PermutationGroup) -> Result<GroupRecord> {
    check_token("id", id)?;
    check_token("source", source)?;
    if let Some(n) = name {
        check_token("name", n)?;
    }
    let order = group.order()?;
    Ok(GroupRecord {
        id: id.to_string(),
        name: name.map(str::to_string),
        expected_order: Some(order),
        source: source.to_string(),
        line: 0,
        group,
    })
}
