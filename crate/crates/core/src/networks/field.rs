use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder};
use crate::baselines::{BaselineTable, EditionPolicy, JournalMetricsTable, Metric, QuartileLookup, TopJournalList};
use crate::corpus::{Issue, PublicationRecord};
use crate::indicators::{normalized_impact, Citations, CountShare, NormalizedImpact, QuartileDistribution};
use crate::scalar::Scalar;
use crate::text;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CitingDocsProfile<S: Scalar> {
    pub citing_publications: usize,
    pub quartile_distribution: QuartileDistribution,
    pub q1_share: S,
    /// Citing documents in each top-journal list.
    pub top_list_shares: BTreeMap<String, CountShare<S>>,
    pub normalized: Option<NormalizedImpact<S>>,
}

/// Venue standing and normalized impact of the citing documents, using the
/// counts they report for `source`.
pub fn citing_docs_profile<S: Scalar>(
    citing: &[&PublicationRecord],
    metrics: &JournalMetricsTable<S>,
    metric: Metric,
    policy: EditionPolicy,
    baselines: Option<&BaselineTable<S>>,
    top_lists: &[TopJournalList],
    source: &str,
) -> (CitingDocsProfile<S>, Vec<Issue>) {
    let lookup = QuartileLookup::new(metrics, metric, policy);
    let distribution = QuartileDistribution::of(citing.iter().copied(), &lookup);
    let top_list_shares = top_lists
        .iter()
        .map(|l| {
            let n = citing
                .iter()
                .filter(|p| p.venue_id.as_deref().is_some_and(|v| l.contains(v)))
                .count();
            (l.name.clone(), CountShare::of(n, citing.len()))
        })
        .collect();
    let mut issues = Vec::new();
    let normalized = baselines.map(|b| {
        let (n, found) = normalized_impact(citing, &Citations::reported_only(source), metrics, b);
        issues.extend(found);
        n
    });
    (
        CitingDocsProfile {
            citing_publications: citing.len(),
            q1_share: distribution.q1_share(),
            quartile_distribution: distribution,
            top_list_shares,
            normalized,
        },
        issues,
    )
}

/// Distinct reference identities of a publication.
pub fn reference_set(p: &PublicationRecord) -> BTreeSet<String> {
    p.references.iter().map(|r| r.identity()).filter(|r| !r.is_empty()).collect()
}

/// Publications linked by the number of references they share.
pub fn bibliographic_coupling<S: Scalar>(pubs: &[&PublicationRecord]) -> Graph<S> {
    let mut b = GraphBuilder::new("bibliographic_coupling");
    let mut holders: BTreeMap<String, Vec<&str>> = BTreeMap::new();
    for p in pubs {
        b.add_node(&p.id, &p.title, S::one());
        for r in reference_set(p) {
            holders.entry(r).or_default().push(&p.id);
        }
    }
    for ids in holders.values() {
        b.add_clique(ids, S::one());
    }
    b.build()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedActor {
    pub key: String,
    pub label: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedPublication {
    pub id: String,
    pub title: String,
    pub year: i32,
    pub citations: u64,
    pub top10: Option<bool>,
    pub top1: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyActors {
    pub authors: Vec<RankedActor>,
    pub institutions: Vec<RankedActor>,
    pub funders: Vec<RankedActor>,
    pub publications: Vec<RankedPublication>,
}

fn rank(counts: BTreeMap<String, (String, usize)>) -> Vec<RankedActor> {
    let mut out: Vec<RankedActor> = counts
        .into_iter()
        .map(|(key, (label, count))| RankedActor { key, label, count })
        .collect();
    out.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| a.label.cmp(&b.label))
            .then_with(|| a.key.cmp(&b.key))
    });
    out
}

fn tally<'p>(acc: &mut BTreeMap<String, (String, usize)>, items: impl Iterator<Item = (String, &'p str)>) {
    let mut seen = BTreeSet::new();
    for (key, label) in items {
        if key.is_empty() || !seen.insert(key.clone()) {
            continue;
        }
        acc.entry(key).or_insert_with(|| (label.trim().to_string(), 0)).1 += 1;
    }
}

/// Publication-count rankings of authors, institutions and funders (ties
/// alphabetical), and a citation ranking of the publications with top
/// percentile flags when tables are given.
pub fn key_actors<S: Scalar>(
    pubs: &[&PublicationRecord],
    citations: &Citations,
    tables: Option<(&JournalMetricsTable<S>, &BaselineTable<S>)>,
) -> KeyActors {
    let mut authors = BTreeMap::new();
    let mut institutions = BTreeMap::new();
    let mut funders = BTreeMap::new();
    for p in pubs {
        tally(
            &mut authors,
            p.authors.iter().map(|a| (a.normalized_key.clone(), a.display_name.as_str())),
        );
        tally(
            &mut institutions,
            p.affiliations
                .iter()
                .map(|a| (text::normalize_label(&a.institution), a.institution.as_str())),
        );
        tally(
            &mut funders,
            p.funders.iter().map(|f| (text::normalize_label(f), f.as_str())),
        );
    }
    let flags: BTreeMap<String, (bool, bool)> = tables
        .map(|(m, b)| {
            normalized_impact(pubs, citations, m, b)
                .0
                .scores
                .into_iter()
                .map(|s| (s.id, (s.top10, s.top1)))
                .collect()
        })
        .unwrap_or_default();
    let mut publications: Vec<RankedPublication> = pubs
        .iter()
        .map(|p| RankedPublication {
            id: p.id.clone(),
            title: p.title.clone(),
            year: p.year,
            citations: citations.count(p),
            top10: flags.get(&p.id).map(|f| f.0),
            top1: flags.get(&p.id).map(|f| f.1),
        })
        .collect();
    publications.sort_by(|a, b| b.citations.cmp(&a.citations).then_with(|| a.id.cmp(&b.id)));
    KeyActors {
        authors: rank(authors),
        institutions: rank(institutions),
        funders: rank(funders),
        publications,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::JournalMetricRow;
    use crate::corpus::tests_support::{corpus_with, record};
    use crate::corpus::{AuthorRef, CitedReference};

    fn with_refs(id: &str, refs: &[&str]) -> PublicationRecord {
        let mut r = record(id, 2020);
        r.references = refs.iter().map(|s| CitedReference::new(s)).collect();
        r
    }

    #[test]
    fn coupling_counts_shared_references() {
        let a = with_refs("a", &["Smith 2001, Nature", "Jones 1999", "Lee 2010", "Only A"]);
        let b = with_refs("b", &["smith 2001 nature", "Jones 1999.", "Lee 2010", "Only B"]);
        let c = with_refs("c", &["Nothing shared"]);
        let d = with_refs("d", &[]);
        let g = bibliographic_coupling::<f64>(&[&a, &b, &c, &d]);
        assert_eq!(g.edge_weight("a", "b"), Some(3.0));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.node_count(), 4);
    }

    #[test]
    fn matched_ids_define_identity() {
        let mut a = with_refs("a", &["garbled"]);
        a.references[0].matched_pub_id = Some("p1".into());
        let mut b = with_refs("b", &["other spelling"]);
        b.references[0].matched_pub_id = Some("p1".into());
        let g = bibliographic_coupling::<f64>(&[&a, &b]);
        assert_eq!(g.edge_weight("a", "b"), Some(1.0));
    }

    #[test]
    fn author_ranking() {
        let mut pubs = Vec::new();
        for i in 0..5 {
            let mut r = record(&format!("p{i}"), 2020);
            r.authors = vec![AuthorRef::new("Alpha, A")];
            if i < 3 {
                r.authors.push(AuthorRef::new("Beta, B"));
                r.authors.push(AuthorRef::new("Beta, B"));
            }
            if i >= 2 {
                r.authors.push(AuthorRef::new("Gamma, C"));
            }
            pubs.push(r);
        }
        let mut c = corpus_with(pubs);
        c.refresh_author_keys();
        let refs: Vec<&PublicationRecord> = c.focal_pubs.iter().collect();
        let k = key_actors::<f64>(&refs, &Citations::new(&c, "wos"), None);
        let got: Vec<(&str, usize)> = k.authors.iter().map(|a| (a.label.as_str(), a.count)).collect();
        assert_eq!(got, [("Alpha, A", 5), ("Beta, B", 3), ("Gamma, C", 3)]);
        assert_eq!(k.institutions[0].count, 5);
        assert!(k.publications.iter().all(|p| p.top10.is_none()));
    }

    #[test]
    fn citing_venues_without_id_are_unranked() {
        let m = JournalMetricsTable::<f64>::new(vec![JournalMetricRow {
            journal_id: "J".into(),
            edition_year: 2020,
            metric: Metric::IF,
            value: 3.0,
            categories: vec!["A".into()],
        }])
        .unwrap();
        let mut x = record("x", 2020);
        x.venue_id = Some("J".into());
        let y = record("y", 2020);
        let (p, issues) =
            citing_docs_profile(&[&x, &y], &m, Metric::IF, EditionPolicy::Latest, None, &[], "wos");
        assert_eq!(p.quartile_distribution.q1, 1);
        assert_eq!(p.quartile_distribution.unranked, 1);
        assert_eq!(p.q1_share, 0.5);
        assert!(issues.is_empty());
        let (all_q1, _) = citing_docs_profile(&[&x], &m, Metric::IF, EditionPolicy::Latest, None, &[], "wos");
        assert_eq!(all_q1.q1_share, 1.0);
    }
}
