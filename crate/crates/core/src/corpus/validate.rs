use std::fmt;

use chrono::Datelike;
use serde::{Deserialize, Serialize};

use super::country::is_valid_country;
use super::Corpus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IssueKind {
    YearOutOfRange,
    CitedCountMismatch,
    ReferenceYear,
    CountryCode,
    MultipleFocalAuthors,
    UnmappedDocType,
    MissingCitationCount,
    MissingBaseline,
    AmbiguousMatch,
}

/// Non-fatal finding about the input data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Issue {
    pub kind: IssueKind,
    pub record_id: Option<String>,
    pub message: String,
}

impl Issue {
    pub fn new(kind: IssueKind, record_id: Option<&str>, message: impl Into<String>) -> Self {
        Issue {
            kind,
            record_id: record_id.map(str::to_string),
            message: message.into(),
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone)]
pub struct ValidationOptions {
    pub min_year: i32,
    pub current_year: i32,
    /// Source whose `times_cited` is compared with the edge count. Without
    /// one, only records carrying a single source are checked.
    pub primary_source: Option<String>,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            min_year: 1900,
            current_year: chrono::Utc::now().year(),
            primary_source: None,
        }
    }
}

pub fn validate_corpus(corpus: &Corpus) -> Vec<Issue> {
    validate_corpus_with(corpus, &ValidationOptions::default())
}

pub fn validate_corpus_with(corpus: &Corpus, opts: &ValidationOptions) -> Vec<Issue> {
    let mut issues = Vec::new();
    let edge_counts = corpus.edge_counts();

    for p in corpus.focal_pubs.iter().chain(&corpus.citing_pubs) {
        let id = Some(p.id.as_str());
        if p.year < opts.min_year || p.year > opts.current_year {
            issues.push(Issue::new(
                IssueKind::YearOutOfRange,
                id,
                format!("year out of range id={} ({})", p.id, p.year),
            ));
        }
        for r in &p.references {
            if r.year.is_some_and(|y| y > p.year + 1) {
                issues.push(Issue::new(
                    IssueKind::ReferenceYear,
                    id,
                    format!(
                        "reference newer than citing record id={} ({} > {})",
                        p.id,
                        r.year.unwrap_or_default(),
                        p.year + 1
                    ),
                ));
            }
        }
        for a in &p.affiliations {
            if !is_valid_country(&a.country) {
                issues.push(Issue::new(
                    IssueKind::CountryCode,
                    id,
                    format!("invalid country code id={} ({:?})", p.id, a.country),
                ));
            }
        }
        if p.authors.iter().filter(|a| a.is_focal).count() > 1 {
            issues.push(Issue::new(
                IssueKind::MultipleFocalAuthors,
                id,
                format!("more than one focal author id={}", p.id),
            ));
        }
    }

    if !corpus.edges.is_empty() {
        for p in &corpus.focal_pubs {
            let reported = match &opts.primary_source {
                Some(source) => p.citations(source),
                None if p.times_cited.len() == 1 => p.times_cited.values().next().copied(),
                None => None,
            };
            let Some(reported) = reported else { continue };
            let derived = edge_counts.get(p.id.as_str()).copied().unwrap_or(0);
            if reported != derived {
                issues.push(Issue::new(
                    IssueKind::CitedCountMismatch,
                    Some(&p.id),
                    format!("cited-count mismatch id={} ({} vs {})", p.id, reported, derived),
                ));
            }
        }
    }
    issues
}
