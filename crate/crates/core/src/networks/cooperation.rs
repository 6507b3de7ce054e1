use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder};
use crate::baselines::{BaselineTable, JournalMetricsTable};
use crate::corpus::{Corpus, PublicationRecord, Sector};
use crate::indicators::{normalized_impact, Citations, CountShare};
use crate::scalar::{ratio, Scalar};
use crate::text;
use crate::window::Window;

fn country_key(country: &str) -> String {
    country.trim().to_ascii_uppercase()
}

fn window_pubs(corpus: &Corpus, window: Option<Window>) -> impl Iterator<Item = &PublicationRecord> {
    corpus
        .focal_pubs
        .iter()
        .filter(move |p| window.is_none_or(|w| w.contains(p.year)))
}

/// Authors as nodes (weight = publications), edges weighted by joint
/// publications. Authors are identified by normalized key.
pub fn coauthor_network<S: Scalar>(corpus: &Corpus, window: Option<Window>) -> Graph<S> {
    let mut b = GraphBuilder::new("coauthors");
    for p in window_pubs(corpus, window) {
        let mut seen = BTreeMap::new();
        for a in &p.authors {
            seen.entry(a.normalized_key.as_str()).or_insert(a.display_name.as_str());
        }
        for (k, name) in &seen {
            b.add_node(k, name, S::one());
        }
        let keys: Vec<&str> = seen.keys().copied().collect();
        b.add_clique(&keys, S::one());
    }
    b.build()
}

fn country_graph<'p, S: Scalar>(name: &str, pubs: impl Iterator<Item = &'p PublicationRecord>) -> Graph<S> {
    let mut b = GraphBuilder::new(name);
    for p in pubs {
        let countries: BTreeSet<String> = p
            .affiliations
            .iter()
            .map(|a| country_key(&a.country))
            .filter(|c| !c.is_empty())
            .collect();
        for c in &countries {
            b.add_node(c, c, S::one());
        }
        let keys: Vec<&str> = countries.iter().map(String::as_str).collect();
        b.add_clique(&keys, S::one());
    }
    b.build()
}

pub fn country_copub_network<S: Scalar>(corpus: &Corpus, window: Option<Window>) -> Graph<S> {
    country_graph("countries", window_pubs(corpus, window))
}

pub fn citing_country_network<S: Scalar>(corpus: &Corpus) -> Graph<S> {
    country_graph("citing_countries", corpus.citing_pubs.iter())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CollaborationClass {
    International,
    National,
    Domestic,
}

/// International if any affiliation lies outside the home country, else
/// national if at least two distinct domestic institutions appear, else
/// domestic. Publications without affiliations are not classified.
pub fn classify_collaboration(corpus: &Corpus, p: &PublicationRecord) -> Option<CollaborationClass> {
    if p.affiliations.is_empty() {
        return None;
    }
    let home = country_key(&corpus.home_country);
    let foreign = p.affiliations.iter().any(|a| {
        let c = country_key(&a.country);
        !c.is_empty() && !home.is_empty() && c != home
    });
    if foreign {
        return Some(CollaborationClass::International);
    }
    let institutions: BTreeSet<String> = p
        .affiliations
        .iter()
        .map(|a| {
            if corpus.is_home(a) {
                "\u{0}home".to_string()
            } else {
                text::normalize_label(&a.institution)
            }
        })
        .collect();
    Some(if institutions.len() >= 2 {
        CollaborationClass::National
    } else {
        CollaborationClass::Domestic
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct WindowShares<S: Scalar> {
    pub window: Window,
    pub classified: usize,
    pub unclassified: usize,
    pub international: CountShare<S>,
    pub national: CountShare<S>,
    pub domestic: CountShare<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CollaborationShares<S: Scalar> {
    pub windows: Vec<WindowShares<S>>,
}

pub fn collaboration_shares<S: Scalar>(corpus: &Corpus, windows: &[Window]) -> CollaborationShares<S> {
    let windows = windows
        .iter()
        .map(|&w| {
            let mut counts: BTreeMap<CollaborationClass, usize> = BTreeMap::new();
            let mut unclassified = 0;
            for p in window_pubs(corpus, Some(w)) {
                match classify_collaboration(corpus, p) {
                    Some(c) => *counts.entry(c).or_default() += 1,
                    None => unclassified += 1,
                }
            }
            let classified: usize = counts.values().sum();
            let share = |c| CountShare::of(counts.get(&c).copied().unwrap_or(0), classified);
            WindowShares {
                window: w,
                classified,
                unclassified,
                international: share(CollaborationClass::International),
                national: share(CollaborationClass::National),
                domestic: share(CollaborationClass::Domestic),
            }
        })
        .collect();
    CollaborationShares { windows }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CooperationRow<S: Scalar> {
    pub institution: String,
    pub country: String,
    pub copubs: CountShare<S>,
    pub citations: u64,
    /// Absent without baselines or when no shared publication has one.
    pub cnci: Option<S>,
    pub top10_pct: Option<S>,
    pub top1_pct: Option<S>,
    pub intl_pct: S,
    pub industry_pct: S,
}

/// One row per external institution on the given publications, sorted by
/// shared publications, then citations, then name.
pub fn institution_cooperation_table<S: Scalar>(
    corpus: &Corpus,
    pubs: &[&PublicationRecord],
    citations: &Citations,
    tables: Option<(&JournalMetricsTable<S>, &BaselineTable<S>)>,
) -> Vec<CooperationRow<S>> {
    struct Acc<'p> {
        name: String,
        country: String,
        pubs: Vec<&'p PublicationRecord>,
    }
    let mut by_inst: BTreeMap<String, Acc> = BTreeMap::new();
    for p in pubs {
        let mut on_pub = BTreeSet::new();
        for a in p.affiliations.iter().filter(|a| !corpus.is_home(a)) {
            let key = text::normalize_label(&a.institution);
            if key.is_empty() || !on_pub.insert(key.clone()) {
                continue;
            }
            by_inst
                .entry(key)
                .or_insert_with(|| Acc {
                    name: text::collapse_whitespace(&a.institution),
                    country: country_key(&a.country),
                    pubs: Vec::new(),
                })
                .pubs
                .push(p);
        }
    }
    let mut rows: Vec<CooperationRow<S>> = by_inst
        .into_values()
        .map(|acc| {
            let shared = acc.pubs.len();
            let normalized = tables.map(|(m, b)| normalized_impact(&acc.pubs, citations, m, b).0);
            let covered = normalized.as_ref().filter(|n| n.covered > 0);
            let intl = acc
                .pubs
                .iter()
                .filter(|p| classify_collaboration(corpus, p) == Some(CollaborationClass::International))
                .count();
            let industry = acc
                .pubs
                .iter()
                .filter(|p| p.affiliations.iter().any(|a| a.sector == Sector::Industry))
                .count();
            CooperationRow {
                institution: acc.name,
                country: acc.country,
                copubs: CountShare::of(shared, pubs.len()),
                citations: acc.pubs.iter().map(|p| citations.count(p)).sum(),
                cnci: covered.map(|n| n.cnci_mean),
                top10_pct: covered.map(|n| n.top10.percent),
                top1_pct: covered.map(|n| n.top1.percent),
                intl_pct: ratio(intl, shared),
                industry_pct: ratio(industry, shared),
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        b.copubs
            .count
            .cmp(&a.copubs.count)
            .then(b.citations.cmp(&a.citations))
            .then_with(|| a.institution.cmp(&b.institution))
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tests_support::{corpus_with, record};
    use crate::corpus::{Affiliation, AuthorRef};

    fn with_affs(id: &str, affs: &[(&str, &str)]) -> PublicationRecord {
        let mut r = record(id, 2020);
        r.affiliations = affs.iter().map(|(i, c)| Affiliation::new(i, c)).collect();
        r
    }

    const HOME: (&str, &str) = ("University of Innsbruck", "AT");

    #[test]
    fn coauthor_pairs() {
        let mut a = record("a", 2020);
        a.authors = vec![AuthorRef::new("Doe, Jane"), AuthorRef::new("Roe, Rick")];
        let b = a.clone();
        let mut c = record("c", 2020);
        c.authors = vec![AuthorRef::new("Doe, Jane"), AuthorRef::new("Roe, Rick"), AuthorRef::new("Poe, Edgar")];
        let mut corpus = corpus_with(vec![a, b]);
        corpus.focal_pubs[1].id = "b".into();
        corpus.refresh_author_keys();
        let g = coauthor_network::<f64>(&corpus, None);
        assert_eq!(g.edge_weight("doe, j", "roe, r"), Some(2.0));

        let mut three = corpus_with(vec![c]);
        three.refresh_author_keys();
        let g = coauthor_network::<f64>(&three, None);
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges.iter().all(|e| e.weight == 1.0));

        let solo = corpus_with(vec![record("s", 2020)]);
        let g = coauthor_network::<f64>(&solo, None);
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn country_pairs() {
        let c = corpus_with(vec![
            with_affs("1", &[HOME, ("TU Munich", "DE")]),
            with_affs("2", &[HOME, ("TU Munich", "DE")]),
            with_affs("3", &[HOME, ("LMU", "de")]),
            with_affs("4", &[HOME, ("LMU", "DE"), ("MIT", "US")]),
        ]);
        let g = country_copub_network::<f64>(&c, None);
        assert_eq!(g.edge_weight("AT", "DE"), Some(4.0));
        assert_eq!(g.edge_weight("DE", "US"), Some(1.0));
        assert_eq!(g.node("AT").unwrap().weight, 4.0);
        let home_only = corpus_with(vec![with_affs("1", &[HOME])]);
        let g = country_copub_network::<f64>(&home_only, None);
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn citing_countries() {
        let mut c = corpus_with(vec![record("f", 2020)]);
        assert_eq!(citing_country_network::<f64>(&c).node_count(), 0);
        c.citing_pubs.push(with_affs("x", &[("Sorbonne", "FR")]));
        let g = citing_country_network::<f64>(&c);
        assert_eq!(g.nodes.len(), 1);
        assert_eq!(g.nodes[0].weight, 1.0);
    }

    #[test]
    fn shares_partition() {
        let mut pubs = Vec::new();
        for i in 0..5 {
            pubs.push(with_affs(&format!("i{i}"), &[HOME, ("ETH", "CH")]));
        }
        for i in 0..3 {
            pubs.push(with_affs(&format!("n{i}"), &[HOME, ("TU Graz", "AT")]));
        }
        for i in 0..2 {
            pubs.push(with_affs(&format!("d{i}"), &[HOME]));
        }
        let c = corpus_with(pubs);
        let s = collaboration_shares::<f64>(&c, &[Window::new(2011, 2020).unwrap()]);
        let w = &s.windows[0];
        assert_eq!(
            (w.international.percent, w.national.percent, w.domestic.percent),
            (0.5, 0.3, 0.2)
        );
    }

    #[test]
    fn international_takes_precedence() {
        let c = corpus_with(vec![]);
        let p = with_affs("x", &[HOME, ("TU Graz", "AT"), ("ETH", "CH")]);
        assert_eq!(classify_collaboration(&c, &p), Some(CollaborationClass::International));
    }

    #[test]
    fn cooperation_rows() {
        let mut pubs = Vec::new();
        for i in 0..10 {
            let mut affs = vec![HOME];
            if i < 4 {
                affs.push(("ETH", "CH"));
            }
            if i == 9 {
                affs.push(("Siemens", "AT"));
            }
            let mut r = with_affs(&format!("p{i}"), &affs);
            r.times_cited.insert("wos".into(), i as u64);
            if i == 9 {
                r.affiliations[1].sector = Sector::Industry;
            }
            pubs.push(r);
        }
        let c = corpus_with(pubs);
        let refs: Vec<&PublicationRecord> = c.focal_pubs.iter().collect();
        let rows = institution_cooperation_table::<f64>(&c, &refs, &Citations::new(&c, "wos"), None);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].institution, "ETH");
        assert_eq!((rows[0].copubs.count, rows[0].copubs.percent), (4, 0.4));
        assert_eq!(rows[0].citations, 6);
        assert_eq!(rows[0].intl_pct, 1.0);
        assert_eq!(rows[1].industry_pct, 1.0);
        assert!(rows[0].cnci.is_none());

        let alone = corpus_with(vec![with_affs("x", &[HOME])]);
        let refs: Vec<&PublicationRecord> = alone.focal_pubs.iter().collect();
        assert!(institution_cooperation_table::<f64>(&alone, &refs, &Citations::new(&alone, "wos"), None).is_empty());
    }
}
