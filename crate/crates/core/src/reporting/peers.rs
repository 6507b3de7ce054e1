use serde::{Deserialize, Serialize};

use super::Tables;
use crate::baselines::QuartileLookup;
use crate::config::Config;
use crate::corpus::{Corpus, PublicationRecord};
use crate::error::{Error, Result};
use crate::focus::{extract_terms, select_terms};
use crate::indicators::{impact_profile, Citations, ImpactSettings, QuartileDistribution, Scope};
use crate::knowledge::{peer_reference_comparison, venue_overlap, PeerReferenceComparison};
use crate::scalar::Scalar;
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PartyProfile<S: Scalar> {
    pub name: String,
    pub publications: usize,
    pub quartile_distribution: Option<QuartileDistribution>,
    pub q1_share: Option<S>,
    pub total_citations: u64,
    pub h_index: usize,
    pub g_index: usize,
    pub cnci_mean: Option<S>,
    pub top10: Option<usize>,
    pub top1: Option<usize>,
    pub venue_overlap_ratio: S,
    /// Selected focus terms, most relevant first.
    pub focus_terms: Vec<String>,
}

/// Peer value minus focal value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PeerDelta<S: Scalar> {
    pub peer: String,
    pub publications: i64,
    pub total_citations: i64,
    pub h_index: i64,
    pub g_index: i64,
    pub q1_share: Option<S>,
    pub cnci_mean: Option<S>,
    pub venue_overlap_ratio: S,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PeerComparison<S: Scalar> {
    pub window: Window,
    pub focal: PartyProfile<S>,
    pub peers: Vec<PartyProfile<S>>,
    pub deltas: Vec<PeerDelta<S>>,
    pub references: Vec<PeerReferenceComparison>,
}

fn windowed(corpus: &Corpus, window: Window) -> Corpus {
    let mut c = corpus.clone();
    c.focal_pubs.retain(|p| window.contains(p.year));
    c
}

fn party<S: Scalar>(name: &str, corpus: &Corpus, tables: &Tables<S>, config: &Config, window: Window) -> PartyProfile<S> {
    let source = config.primary_source(corpus);
    let citations = Citations::new(corpus, &source);
    let settings = ImpactSettings {
        i_thresholds: config.i_thresholds(),
        reference_year: window.end,
        selfcite_usual_max: config.selfcite.usual_max,
        std_dev: false,
    };
    let (impact, _) = impact_profile(corpus, tables.both(), &citations, &settings, Scope::AllItems);
    let pubs: Vec<&PublicationRecord> = corpus.focal_pubs.iter().collect();
    let distribution = tables.metrics.as_ref().map(|m| {
        let lookup = QuartileLookup::new(m, config.visibility.metric, config.visibility.policy());
        QuartileDistribution::of(pubs.iter().copied().filter(|p| p.venue_id.is_some()), &lookup)
    });
    let terms = extract_terms::<S>(&pubs, config.focus.source, &tables.stoplist, &citations);
    let selected = select_terms(&terms, config.focus.min_occurrences, config.focus.keep_fraction);
    PartyProfile {
        name: name.to_string(),
        publications: pubs.len(),
        q1_share: distribution.map(|d| d.q1_share()),
        quartile_distribution: distribution,
        total_citations: impact.total_citations,
        h_index: impact.h_index,
        g_index: impact.g_index,
        cnci_mean: impact.normalized.as_ref().map(|n| n.cnci_mean),
        top10: impact.normalized.as_ref().map(|n| n.top10.count),
        top1: impact.normalized.as_ref().map(|n| n.top1.count),
        venue_overlap_ratio: venue_overlap(&pubs, config.knowledge.top_n).overlap_ratio,
        focus_terms: selected.into_iter().map(|t| t.term).collect(),
    }
}

fn diff<S: Scalar>(a: Option<S>, b: Option<S>) -> Option<S> {
    a.zip(b).map(|(a, b)| a - b)
}

/// Profiles the focal researcher and every peer over the same window and
/// settings. Peers keep their input order.
pub fn compare_peers<S: Scalar>(
    focal: &Corpus,
    peers: &[(String, Corpus)],
    tables: &Tables<S>,
    config: &Config,
    window: Window,
) -> Result<PeerComparison<S>> {
    if peers.is_empty() {
        return Err(Error::Config("peer comparison needs at least one peer".into()));
    }
    let focal_w = windowed(focal, window);
    let peers_w: Vec<(String, Corpus)> = peers.iter().map(|(n, c)| (n.clone(), windowed(c, window))).collect();
    let me = party("focal", &focal_w, tables, config, window);
    let others: Vec<PartyProfile<S>> = peers_w
        .iter()
        .map(|(n, c)| party(n, c, tables, config, window))
        .collect();
    let deltas = others
        .iter()
        .map(|p| PeerDelta {
            peer: p.name.clone(),
            publications: p.publications as i64 - me.publications as i64,
            total_citations: p.total_citations as i64 - me.total_citations as i64,
            h_index: p.h_index as i64 - me.h_index as i64,
            g_index: p.g_index as i64 - me.g_index as i64,
            q1_share: diff(p.q1_share, me.q1_share),
            cnci_mean: diff(p.cnci_mean, me.cnci_mean),
            venue_overlap_ratio: p.venue_overlap_ratio - me.venue_overlap_ratio,
        })
        .collect();
    let focal_pubs: Vec<&PublicationRecord> = focal_w.focal_pubs.iter().collect();
    let peer_pubs: Vec<(String, Vec<&PublicationRecord>)> = peers_w
        .iter()
        .map(|(n, c)| (n.clone(), c.focal_pubs.iter().collect()))
        .collect();
    Ok(PeerComparison {
        window,
        references: peer_reference_comparison(&focal_pubs, &peer_pubs, config.knowledge.top_n),
        focal: me,
        peers: others,
        deltas,
    })
}
