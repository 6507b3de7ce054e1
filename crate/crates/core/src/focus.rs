//! Term extraction, relevance selection, co-occurrence maps and subject
//! category spread.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::baselines::JournalMetricsTable;
use crate::corpus::PublicationRecord;
use crate::error::{Error, Result};
use crate::indicators::{pub_categories, Citations};
use crate::networks::{Graph, GraphBuilder};
use crate::scalar::Scalar;
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermSource {
    #[default]
    TitleAbstract,
    Keywords,
}

const MAX_NGRAM: usize = 3;

const ENGLISH_STOPWORDS: &str = "a about above across after again against all almost also although always am among an and another any are around as at
be became because been before being below between both but by can cannot could did do does doing done down during each either else
even ever every few for from further had has have having he her here hers herself him himself his how however i if in into is it its
itself just least less may me might more most much must my myself neither no nor not of off often on once one only or other our ours
ourselves out over own per rather same several she should since so some such than that the their theirs them themselves then there
these they this those though through thus to too toward towards under until up upon us using very via was we were what when where
whether which while who whom whose why will with within without would yet you your yours yourself yourselves";

/// Tokens removed before n-gram formation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stoplist(BTreeSet<String>);

impl Default for Stoplist {
    fn default() -> Self {
        Stoplist::parse(&ENGLISH_STOPWORDS.split_whitespace().collect::<Vec<_>>().join("\n"))
    }
}

impl Stoplist {
    /// One token per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        Stoplist(
            text.lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .map(text::fold)
                .collect(),
        )
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Stoplist::parse(&text))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.0.contains(token)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TermStats<S: Scalar> {
    pub term: String,
    /// Number of publications containing the term.
    pub occurrences: usize,
    /// Mean citation count of those publications.
    pub relevance: S,
    pub selected: bool,
    /// Ids of the containing publications, sorted.
    pub publications: Vec<String>,
}

/// Distinct terms of one publication.
pub fn publication_terms(p: &PublicationRecord, source: TermSource, stoplist: &Stoplist) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    match source {
        TermSource::Keywords => {
            for k in &p.keywords {
                let k = text::normalize_title(k);
                if !k.is_empty() {
                    out.insert(k);
                }
            }
        }
        TermSource::TitleAbstract => {
            let fields = std::iter::once(p.title.as_str()).chain(p.abstract_text.as_deref());
            for field in fields {
                for clause in field.split(|c: char| ".,;:!?()[]{}\"".contains(c)) {
                    ngrams(clause, stoplist, &mut out);
                }
            }
        }
    }
    out
}

fn ngrams(clause: &str, stoplist: &Stoplist, out: &mut BTreeSet<String>) {
    let folded = text::fold(clause);
    let mut run: Vec<&str> = Vec::new();
    let mut flush = |run: &mut Vec<&str>| {
        for i in 0..run.len() {
            for n in 1..=MAX_NGRAM.min(run.len() - i) {
                out.insert(run[i..i + n].join(" "));
            }
        }
        run.clear();
    };
    for tok in folded.split(|c: char| !c.is_alphanumeric()).filter(|t| !t.is_empty()) {
        if stoplist.contains(tok) {
            flush(&mut run);
        } else {
            run.push(tok);
        }
    }
    flush(&mut run);
}

/// All terms of the publications, sorted alphabetically, with publication
/// level occurrence counts and mean-citation relevance.
pub fn extract_terms<S: Scalar>(
    pubs: &[&PublicationRecord],
    source: TermSource,
    stoplist: &Stoplist,
    citations: &Citations,
) -> Vec<TermStats<S>> {
    let mut by_term: BTreeMap<String, BTreeMap<&str, u64>> = BTreeMap::new();
    for p in pubs {
        let c = citations.count(p);
        for t in publication_terms(p, source, stoplist) {
            by_term.entry(t).or_default().insert(&p.id, c);
        }
    }
    by_term
        .into_iter()
        .map(|(term, containing)| {
            let total: u64 = containing.values().sum();
            let n = containing.len();
            TermStats {
                term,
                occurrences: n,
                relevance: S::from_u64(total).unwrap_or_else(S::infinity) / S::of_count(n),
                selected: false,
                publications: containing.keys().map(|s| s.to_string()).collect(),
            }
        })
        .collect()
}

/// Keeps the `ceil(keep_fraction * N)` most relevant of the `N` terms
/// reaching `min_occurrences`. Ties go to more occurrences, then to the
/// alphabetically first term.
pub fn select_terms<S: Scalar>(terms: &[TermStats<S>], min_occurrences: usize, keep_fraction: f64) -> Vec<TermStats<S>> {
    let mut passing: Vec<TermStats<S>> = terms
        .iter()
        .filter(|t| t.occurrences >= min_occurrences.max(1))
        .cloned()
        .collect();
    passing.sort_by(|a, b| {
        b.relevance
            .partial_cmp(&a.relevance)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.occurrences.cmp(&a.occurrences))
            .then_with(|| a.term.cmp(&b.term))
    });
    let keep = keep_count(passing.len(), keep_fraction);
    passing.truncate(keep);
    for t in &mut passing {
        t.selected = true;
    }
    passing
}

fn keep_count(n: usize, fraction: f64) -> usize {
    let fraction = fraction.clamp(0.0, 1.0);
    // 0.6 * 10 is 6.000000000000001 in binary
    let k = (fraction * n as f64 - 1e-9).ceil();
    (k.max(0.0) as usize).min(n)
}

/// Node per term weighted by occurrences; edge weight is the number of
/// publications containing both terms.
pub fn term_cooccurrence_map<S: Scalar>(selected: &[TermStats<S>]) -> Graph<S> {
    let mut b = GraphBuilder::new("term_cooccurrence");
    let mut by_pub: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for t in selected {
        b.add_node(&t.term, &t.term, S::of_count(t.occurrences));
        for p in &t.publications {
            by_pub.entry(p).or_default().push(&t.term);
        }
    }
    for terms in by_pub.values() {
        b.add_clique(terms, S::one());
    }
    b.build()
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct InterdisciplinarityProfile {
    /// Publications per subject category; a publication counts once for
    /// every category of its venue.
    pub category_counts: BTreeMap<String, usize>,
    pub distinct_categories: usize,
    pub unclassified: usize,
    pub unclassified_ids: Vec<String>,
}

pub fn interdisciplinarity<S: Scalar>(
    pubs: &[&PublicationRecord],
    metrics: Option<&JournalMetricsTable<S>>,
) -> InterdisciplinarityProfile {
    let mut out = InterdisciplinarityProfile::default();
    for p in pubs {
        let cats = metrics.map(|m| pub_categories(p, m)).unwrap_or_default();
        if cats.is_empty() {
            out.unclassified += 1;
            out.unclassified_ids.push(p.id.clone());
        }
        for c in cats {
            *out.category_counts.entry(c).or_default() += 1;
        }
    }
    out.distinct_categories = out.category_counts.len();
    out
}
