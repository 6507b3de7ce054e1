use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::DocType;
use crate::text;

/// One scholarly output of the researcher or of a citing author.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublicationRecord {
    pub id: String,
    /// Native identifiers per source (`"doi"`, `"wos"`, `"scopus"`, ...).
    #[serde(default)]
    pub source_ids: BTreeMap<String, String>,
    pub title: String,
    #[serde(default, rename = "abstract")]
    pub abstract_text: Option<String>,
    pub year: i32,
    pub doc_type: DocType,
    #[serde(default)]
    pub language: String,
    pub authors: Vec<AuthorRef>,
    #[serde(default)]
    pub corresponding_author_index: Option<usize>,
    #[serde(default)]
    pub affiliations: Vec<Affiliation>,
    #[serde(default)]
    pub venue_id: Option<String>,
    #[serde(default)]
    pub venue_name: String,
    #[serde(default)]
    pub open_access: bool,
    #[serde(default)]
    pub funders: Vec<String>,
    #[serde(default)]
    pub keywords: Vec<String>,
    /// Citation count reported by each source.
    #[serde(default)]
    pub times_cited: BTreeMap<String, u64>,
    #[serde(default)]
    pub references: Vec<CitedReference>,
}

impl PublicationRecord {
    pub fn doi(&self) -> Option<String> {
        self.source_ids
            .get("doi")
            .map(|d| text::normalize_doi(d))
            .filter(|d| !d.is_empty())
    }

    pub fn citations(&self, source: &str) -> Option<u64> {
        self.times_cited.get(source).copied()
    }

    pub fn is_english(&self) -> bool {
        let lang = self.language.trim().to_ascii_lowercase();
        lang == "en" || lang == "eng" || lang == "english" || lang.starts_with("en-")
    }

    /// Position of the focal author in the author list: an author flagged
    /// `is_focal`, otherwise the first author identical to `focal`.
    pub fn focal_index(&self, focal: &AuthorRef) -> Option<usize> {
        self.authors
            .iter()
            .position(|a| a.is_focal)
            .or_else(|| self.authors.iter().position(|a| a.same_person(focal)))
    }

    /// Whether the two records share at least one author identity.
    pub fn shares_author_with(&self, other: &PublicationRecord) -> bool {
        self.authors
            .iter()
            .any(|a| other.authors.iter().any(|b| a.same_person(b)))
    }

    pub fn in_years(&self, start: i32, end: i32) -> bool {
        (start..=end).contains(&self.year)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuthorRef {
    pub display_name: String,
    /// `"surname, initials"`; always recomputed from `display_name` on load.
    #[serde(default)]
    pub normalized_key: String,
    #[serde(default)]
    pub orcid: Option<String>,
    #[serde(default)]
    pub is_focal: bool,
}

impl AuthorRef {
    pub fn new(display_name: &str) -> Self {
        AuthorRef {
            display_name: display_name.to_string(),
            normalized_key: text::author_key(display_name),
            orcid: None,
            is_focal: false,
        }
    }

    pub fn with_orcid(mut self, orcid: &str) -> Self {
        self.orcid = Some(orcid.to_string());
        self
    }

    pub fn focal(mut self) -> Self {
        self.is_focal = true;
        self
    }

    fn orcid_key(&self) -> Option<String> {
        self.orcid.as_deref().map(|o| {
            let o = o.trim();
            let o = o
                .strip_prefix("https://orcid.org/")
                .or_else(|| o.strip_prefix("http://orcid.org/"))
                .unwrap_or(o);
            o.to_ascii_uppercase()
        })
    }

    /// Author identity: ORCID equality when both carry one, otherwise
    /// normalized-key equality.
    pub fn same_person(&self, other: &AuthorRef) -> bool {
        match (self.orcid_key(), other.orcid_key()) {
            (Some(a), Some(b)) => a == b,
            _ => self.normalized_key == other.normalized_key,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub enum Sector {
    #[default]
    Academic,
    Industry,
    Government,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Affiliation {
    pub institution: String,
    /// ISO 3166 alpha-2 code.
    pub country: String,
    #[serde(default)]
    pub sector: Sector,
    #[serde(default)]
    pub is_home: bool,
}

impl Affiliation {
    pub fn new(institution: &str, country: &str) -> Self {
        Affiliation {
            institution: institution.to_string(),
            country: country.to_string(),
            sector: Sector::Academic,
            is_home: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub enum RefType {
    Journal,
    Book,
    Proceedings,
    Other,
    #[default]
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CitedReference {
    pub raw: String,
    #[serde(default)]
    pub year: Option<i32>,
    #[serde(default)]
    pub source_name: Option<String>,
    #[serde(default)]
    pub ref_type: RefType,
    #[serde(default)]
    pub matched_pub_id: Option<String>,
}

impl CitedReference {
    pub fn new(raw: &str) -> Self {
        CitedReference {
            raw: raw.to_string(),
            year: None,
            source_name: None,
            ref_type: RefType::Unknown,
            matched_pub_id: None,
        }
    }

    /// Identity used when comparing references across publications: the
    /// matched publication id when known, otherwise the normalized raw
    /// string.
    pub fn identity(&self) -> String {
        match &self.matched_pub_id {
            Some(id) if !id.is_empty() => format!("id:{id}"),
            _ => text::normalize_title(&self.raw),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CitationEdge {
    pub citing_id: String,
    pub cited_id: String,
}

impl CitationEdge {
    pub fn new(citing: &str, cited: &str) -> Self {
        CitationEdge {
            citing_id: citing.to_string(),
            cited_id: cited.to_string(),
        }
    }
}

/// The researcher's publications together with the documents citing them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub focal_author: AuthorRef,
    #[serde(default)]
    pub home_institution: String,
    #[serde(default)]
    pub home_country: String,
    pub focal_pubs: Vec<PublicationRecord>,
    #[serde(default)]
    pub citing_pubs: Vec<PublicationRecord>,
    #[serde(default)]
    pub edges: Vec<CitationEdge>,
}

impl Corpus {
    pub fn new(focal_author: AuthorRef, home_institution: &str, home_country: &str) -> Self {
        Corpus {
            focal_author,
            home_institution: home_institution.to_string(),
            home_country: home_country.to_string(),
            focal_pubs: Vec::new(),
            citing_pubs: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Lookup over focal and citing records (focal wins on id clash).
    pub fn index(&self) -> HashMap<&str, &PublicationRecord> {
        let mut map: HashMap<&str, &PublicationRecord> = self
            .citing_pubs
            .iter()
            .map(|p| (p.id.as_str(), p))
            .collect();
        map.extend(self.focal_pubs.iter().map(|p| (p.id.as_str(), p)));
        map
    }

    /// Number of citation edges pointing at each focal record.
    pub fn edge_counts(&self) -> HashMap<&str, u64> {
        let mut counts: HashMap<&str, u64> = HashMap::new();
        for e in &self.edges {
            *counts.entry(e.cited_id.as_str()).or_default() += 1;
        }
        counts
    }

    /// All sources carrying citation counts, in name order.
    pub fn citation_sources(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .focal_pubs
            .iter()
            .flat_map(|p| p.times_cited.keys().cloned())
            .collect();
        names.sort();
        names.dedup();
        names
    }

    /// Whether an affiliation belongs to the home institution.
    pub fn is_home(&self, aff: &Affiliation) -> bool {
        aff.is_home
            || (!self.home_institution.is_empty()
                && text::normalize_label(&aff.institution)
                    == text::normalize_label(&self.home_institution))
    }

    /// Recomputes every `normalized_key` from its display name.
    pub fn refresh_author_keys(&mut self) {
        self.focal_author.normalized_key = text::author_key(&self.focal_author.display_name);
        for p in self.focal_pubs.iter_mut().chain(self.citing_pubs.iter_mut()) {
            for a in &mut p.authors {
                a.normalized_key = text::author_key(&a.display_name);
            }
        }
    }
}
