#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use bibprofile::corpus::{Affiliation, AuthorRef, Corpus, DocType, PublicationRecord};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn record(id: &str, year: i32) -> PublicationRecord {
    PublicationRecord {
        id: id.to_string(),
        source_ids: BTreeMap::new(),
        title: format!("Title {id}"),
        abstract_text: None,
        year,
        doc_type: DocType::JournalArticle,
        language: "en".into(),
        authors: vec![AuthorRef::new("Doe, Jane").focal()],
        corresponding_author_index: None,
        affiliations: vec![Affiliation::new("University of Innsbruck", "AT")],
        venue_id: None,
        venue_name: String::new(),
        open_access: false,
        funders: vec![],
        keywords: vec![],
        times_cited: BTreeMap::new(),
        references: vec![],
    }
}

pub fn corpus(pubs: Vec<PublicationRecord>) -> Corpus {
    let mut c = Corpus::new(AuthorRef::new("Doe, Jane"), "University of Innsbruck", "AT");
    c.focal_pubs = pubs;
    c
}
