use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Standard document-type groups publications are reassigned to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DocType {
    Monograph,
    BookChapter,
    JournalArticle,
    Review,
    ProceedingsPaper,
    /// Conference contributions, including meeting abstracts and talks.
    Conference,
    BookReview,
    EditedVolume,
    Report,
    Patent,
    Other,
}

impl DocType {
    pub const ALL: [DocType; 11] = [
        DocType::Monograph,
        DocType::BookChapter,
        DocType::JournalArticle,
        DocType::Review,
        DocType::ProceedingsPaper,
        DocType::Conference,
        DocType::BookReview,
        DocType::EditedVolume,
        DocType::Report,
        DocType::Patent,
        DocType::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DocType::Monograph => "Monograph",
            DocType::BookChapter => "BookChapter",
            DocType::JournalArticle => "JournalArticle",
            DocType::Review => "Review",
            DocType::ProceedingsPaper => "ProceedingsPaper",
            DocType::Conference => "Conference",
            DocType::BookReview => "BookReview",
            DocType::EditedVolume => "EditedVolume",
            DocType::Report => "Report",
            DocType::Patent => "Patent",
            DocType::Other => "Other",
        }
    }

    /// Articles, reviews and proceedings papers.
    pub fn is_citable(self) -> bool {
        matches!(
            self,
            DocType::JournalArticle | DocType::Review | DocType::ProceedingsPaper
        )
    }

    /// Position in the resolution order for multi-valued raw types; lower
    /// wins.
    fn precedence(self) -> u8 {
        match self {
            DocType::Patent => 0,
            DocType::Monograph => 1,
            DocType::EditedVolume => 2,
            DocType::ProceedingsPaper => 3,
            DocType::Review => 4,
            DocType::JournalArticle => 5,
            DocType::BookChapter => 6,
            DocType::BookReview => 7,
            DocType::Conference => 8,
            DocType::Report => 9,
            DocType::Other => 10,
        }
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DocType {
    type Err = Error;

    /// Parses a canonical variant name (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        DocType::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::parse("doc type", format!("unknown doc type `{s}`")))
    }
}

/// Outcome of resolving a raw document-type string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved {
    pub doc_type: DocType,
    /// Raw components that had no alias entry.
    pub unmapped: Vec<String>,
}

/// Alias table mapping raw database/author document-type labels onto
/// [`DocType`] groups.
#[derive(Debug, Clone)]
pub struct DocTypeAliases {
    map: HashMap<String, DocType>,
}

const DEFAULT_ALIASES: &[(&str, DocType)] = &[
    ("article", DocType::JournalArticle),
    ("journal article", DocType::JournalArticle),
    ("research article", DocType::JournalArticle),
    ("letter", DocType::JournalArticle),
    ("note", DocType::JournalArticle),
    ("short survey", DocType::Review),
    ("review", DocType::Review),
    ("review article", DocType::Review),
    ("proceedings paper", DocType::ProceedingsPaper),
    ("conference paper", DocType::ProceedingsPaper),
    ("conference proceedings", DocType::ProceedingsPaper),
    ("meeting abstract", DocType::Conference),
    ("conference abstract", DocType::Conference),
    ("conference", DocType::Conference),
    ("talk", DocType::Conference),
    ("presentation", DocType::Conference),
    ("poster", DocType::Conference),
    ("lecture", DocType::Conference),
    ("book", DocType::Monograph),
    ("monograph", DocType::Monograph),
    ("book chapter", DocType::BookChapter),
    ("chapter", DocType::BookChapter),
    ("book section", DocType::BookChapter),
    ("book review", DocType::BookReview),
    ("edited book", DocType::EditedVolume),
    ("edited volume", DocType::EditedVolume),
    ("journal issue", DocType::EditedVolume),
    ("special issue", DocType::EditedVolume),
    ("report", DocType::Report),
    ("technical report", DocType::Report),
    ("working paper", DocType::Report),
    ("discussion paper", DocType::Report),
    ("patent", DocType::Patent),
    ("editorial", DocType::Other),
    ("editorial material", DocType::Other),
    ("miscellaneous", DocType::Other),
    ("misc", DocType::Other),
    ("other", DocType::Other),
];

fn alias_key(raw: &str) -> String {
    crate::text::collapse_whitespace(&raw.to_lowercase())
}

impl Default for DocTypeAliases {
    fn default() -> Self {
        let mut map: HashMap<String, DocType> = DEFAULT_ALIASES
            .iter()
            .map(|(raw, d)| (alias_key(raw), *d))
            .collect();
        for d in DocType::ALL {
            map.insert(alias_key(d.name()), d);
        }
        DocTypeAliases { map }
    }
}

impl DocTypeAliases {
    /// Default table extended (and overridden) by a `raw,canonical` CSV.
    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::default().with_csv(&text)
    }

    pub fn with_csv(mut self, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        for (i, row) in reader.records().enumerate() {
            let line = i + 2;
            let row = row.map_err(|e| Error::parse(format!("alias table line {line}"), e))?;
            if row.len() != 2 {
                return Err(Error::parse(
                    format!("alias table line {line}"),
                    "expected two columns `raw,canonical`",
                ));
            }
            let canonical: DocType = row[1]
                .parse()
                .map_err(|_| Error::parse(format!("alias table line {line}"), format!("unknown doc type `{}`", &row[1])))?;
            self.map.insert(alias_key(&row[0]), canonical);
        }
        Ok(self)
    }

    pub fn insert(&mut self, raw: &str, doc_type: DocType) {
        self.map.insert(alias_key(raw), doc_type);
    }

    /// Resolves a raw label. `;`-separated labels are looked up one by one
    /// and the highest-precedence match wins; unmapped components are
    /// reported and, when nothing matches, the result is [`DocType::Other`].
    pub fn resolve(&self, raw: &str) -> Resolved {
        let mut best: Option<DocType> = None;
        let mut unmapped = Vec::new();
        for part in raw.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            match self.map.get(&alias_key(part)) {
                Some(&d) => {
                    if best.is_none_or(|b| d.precedence() < b.precedence()) {
                        best = Some(d);
                    }
                }
                None => unmapped.push(part.to_string()),
            }
        }
        if best.is_none() && unmapped.is_empty() {
            unmapped.push(raw.to_string());
        }
        Resolved {
            doc_type: best.unwrap_or(DocType::Other),
            unmapped,
        }
    }

    pub fn normalize(&self, raw: &str) -> DocType {
        self.resolve(raw).doc_type
    }
}

/// Maps a raw label with the default alias table.
pub fn normalize_doc_type(raw: &str) -> DocType {
    DocTypeAliases::default().normalize(raw)
}
