//! Canonical corpus file: one JSON object with the keys `focal_author`,
//! `home_institution`, `home_country`, `focal_pubs`, `citing_pubs` and
//! `edges`. Raw `doc_type` labels are reassigned through the alias table on
//! load; unknown keys are rejected at every level.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde_json::Value;

use super::validate::{Issue, IssueKind};
use super::{Corpus, DocTypeAliases, PublicationRecord};
use crate::error::{Error, Result};

const TOP_LEVEL_KEYS: [&str; 6] = [
    "focal_author",
    "home_institution",
    "home_country",
    "focal_pubs",
    "citing_pubs",
    "edges",
];

/// A parsed corpus plus the non-fatal issues found while reading it.
#[derive(Debug, Clone)]
pub struct LoadedCorpus {
    pub corpus: Corpus,
    pub issues: Vec<Issue>,
}

pub fn load_corpus(path: &Path) -> Result<Corpus> {
    load_corpus_with(path, &DocTypeAliases::default()).map(|l| l.corpus)
}

pub fn load_corpus_with(path: &Path, aliases: &DocTypeAliases) -> Result<LoadedCorpus> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&text, aliases)
}

/// Loads a corpus where only `focal_pubs` is mandatory (peer and master
/// publication lists).
pub fn load_publication_list(path: &Path, aliases: &DocTypeAliases) -> Result<LoadedCorpus> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_with(&text, aliases, &["focal_pubs"])
}

pub fn parse_corpus(text: &str, aliases: &DocTypeAliases) -> Result<LoadedCorpus> {
    parse_with(text, aliases, &TOP_LEVEL_KEYS)
}

fn parse_with(text: &str, aliases: &DocTypeAliases, required: &[&str]) -> Result<LoadedCorpus> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {}, column {}", e.line(), e.column()), e)
    })?;
    let Value::Object(mut top) = value else {
        return Err(Error::parse("top level", "expected a JSON object"));
    };
    if let Some(unknown) = top.keys().find(|k| !TOP_LEVEL_KEYS.contains(&k.as_str())) {
        return Err(Error::parse("top level", format!("unknown key `{unknown}`")));
    }
    for key in required {
        if !top.contains_key(*key) {
            return Err(Error::parse("top level", format!("missing key `{key}`")));
        }
    }

    let mut issues = Vec::new();
    let focal_pubs = parse_records(top.remove("focal_pubs"), "focal_pubs", aliases, &mut issues)?;
    let citing_pubs = parse_records(top.remove("citing_pubs"), "citing_pubs", aliases, &mut issues)?;
    let edges = match top.remove("edges") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => items
            .into_iter()
            .enumerate()
            .map(|(i, v)| serde_json::from_value(v).map_err(|e| Error::parse(format!("edges[{i}]"), e)))
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(Error::parse("edges", "expected an array")),
    };
    let focal_author = match top.remove("focal_author") {
        Some(v) => serde_json::from_value(v).map_err(|e| Error::parse("focal_author", e))?,
        None => super::AuthorRef::new(""),
    };
    let string_field = |top: &mut serde_json::Map<String, Value>, key: &str| -> Result<String> {
        match top.remove(key) {
            None | Some(Value::Null) => Ok(String::new()),
            Some(Value::String(s)) => Ok(s),
            Some(_) => Err(Error::parse(key, "expected a string")),
        }
    };
    let home_institution = string_field(&mut top, "home_institution")?;
    let home_country = string_field(&mut top, "home_country")?;

    let mut corpus = Corpus {
        focal_author,
        home_institution,
        home_country,
        focal_pubs,
        citing_pubs,
        edges,
    };
    corpus.refresh_author_keys();
    check_structure(&corpus)?;
    Ok(LoadedCorpus { corpus, issues })
}

fn parse_records(
    value: Option<Value>,
    section: &str,
    aliases: &DocTypeAliases,
    issues: &mut Vec<Issue>,
) -> Result<Vec<PublicationRecord>> {
    let items = match value {
        None | Some(Value::Null) => return Ok(Vec::new()),
        Some(Value::Array(items)) => items,
        Some(_) => return Err(Error::parse(section, "expected an array")),
    };
    items
        .into_iter()
        .enumerate()
        .map(|(i, mut item)| {
            let id = item
                .get("id")
                .and_then(Value::as_str)
                .unwrap_or("?")
                .to_string();
            let locator = format!("{section}[{i}] (id={id})");
            if let Some(raw) = item.get("doc_type").and_then(Value::as_str).map(str::to_string) {
                let resolved = aliases.resolve(&raw);
                if !resolved.unmapped.is_empty() {
                    issues.push(Issue::new(
                        IssueKind::UnmappedDocType,
                        Some(&id),
                        format!(
                            "unmapped doc type id={id} ({}) -> {}",
                            resolved.unmapped.join("; "),
                            resolved.doc_type
                        ),
                    ));
                }
                item["doc_type"] = Value::String(resolved.doc_type.name().to_string());
            }
            serde_json::from_value(item).map_err(|e| Error::parse(locator, e))
        })
        .collect()
}

/// Fatal invariants: the corpus cannot be analysed when any of these fail.
pub fn check_structure(corpus: &Corpus) -> Result<()> {
    if corpus.focal_pubs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let all = || corpus.focal_pubs.iter().chain(&corpus.citing_pubs);

    let empty: Vec<String> = all()
        .enumerate()
        .filter(|(_, p)| p.id.trim().is_empty())
        .map(|(i, _)| format!("#{i}"))
        .collect();
    if !empty.is_empty() {
        return invalid("empty record id", empty);
    }

    let mut seen: HashMap<&str, usize> = HashMap::new();
    for p in all() {
        *seen.entry(p.id.as_str()).or_default() += 1;
    }
    let mut dups: Vec<String> = seen
        .iter()
        .filter(|(_, &n)| n > 1)
        .map(|(id, _)| id.to_string())
        .collect();
    if !dups.is_empty() {
        dups.sort();
        return invalid("duplicate record id", dups);
    }

    let no_authors: Vec<String> = all()
        .filter(|p| p.authors.is_empty())
        .map(|p| p.id.clone())
        .collect();
    if !no_authors.is_empty() {
        return invalid("record without authors", no_authors);
    }

    let bad_corresponding: Vec<String> = all()
        .filter(|p| p.corresponding_author_index.is_some_and(|i| i >= p.authors.len()))
        .map(|p| p.id.clone())
        .collect();
    if !bad_corresponding.is_empty() {
        return invalid("corresponding author index out of range", bad_corresponding);
    }

    let focal_ids: HashSet<&str> = corpus.focal_pubs.iter().map(|p| p.id.as_str()).collect();
    let all_ids: HashSet<&str> = all().map(|p| p.id.as_str()).collect();
    let mut edge_seen = HashSet::new();
    let mut self_loops = Vec::new();
    let mut duplicates = Vec::new();
    for e in &corpus.edges {
        if !focal_ids.contains(e.cited_id.as_str()) {
            return Err(Error::DanglingEdge(e.cited_id.clone()));
        }
        if !all_ids.contains(e.citing_id.as_str()) {
            return Err(Error::DanglingEdge(e.citing_id.clone()));
        }
        if e.citing_id == e.cited_id {
            self_loops.push(e.cited_id.clone());
        }
        if !edge_seen.insert((e.citing_id.as_str(), e.cited_id.as_str())) {
            duplicates.push(format!("{}->{}", e.citing_id, e.cited_id));
        }
    }
    if !self_loops.is_empty() {
        return invalid("edge cites itself", self_loops);
    }
    if !duplicates.is_empty() {
        return invalid("duplicate edge", duplicates);
    }
    Ok(())
}

fn invalid(message: &str, ids: Vec<String>) -> Result<()> {
    Err(Error::Invalid {
        message: message.to_string(),
        ids,
    })
}

/// Canonical serialization; parsing it back yields an identical corpus.
pub fn to_canonical_json(corpus: &Corpus) -> String {
    serde_json::to_string_pretty(corpus).expect("corpus serializes")
}
