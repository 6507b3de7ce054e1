//! Canonical data model, corpus file loading, document-type reassignment,
//! publication-list matching and data validation.

mod country;
mod doctype;
mod io;
mod matching;
mod model;
mod validate;

pub use country::is_valid_country;
pub use doctype::{normalize_doc_type, DocType, DocTypeAliases, Resolved};
pub use io::{
    check_structure, load_corpus, load_corpus_with, load_publication_list, parse_corpus,
    to_canonical_json, LoadedCorpus,
};
pub use matching::{match_publication_list, source_coverage, CoverageResult};
pub use model::{
    Affiliation, AuthorRef, CitationEdge, CitedReference, Corpus, PublicationRecord, RefType,
    Sector,
};
pub use validate::{validate_corpus, validate_corpus_with, Issue, IssueKind, ValidationOptions};
