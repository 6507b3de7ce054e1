use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    g_index, h_index, i_index, m_quotient, normalized_impact, self_citation_rate, Citations,
    CountShare, NormalizedImpact, Scope, SelfCitation,
};
use crate::baselines::{BaselineTable, JournalMetricsTable};
use crate::corpus::{Corpus, Issue, PublicationRecord};
use crate::scalar::{std_dev, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct ImpactSettings {
    pub i_thresholds: Vec<u64>,
    /// Year the m-quotient career length runs to.
    pub reference_year: i32,
    pub selfcite_usual_max: f64,
    pub std_dev: bool,
}

/// Raw citation indicators computed from one source's counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SourceIndices<S: Scalar> {
    pub publications_with_count: usize,
    pub total_citations: u64,
    pub cited: CountShare<S>,
    pub h_index: usize,
    pub g_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ImpactProfile<S: Scalar> {
    pub scope: Scope,
    pub primary_source: String,
    pub publications: usize,
    pub total_citations: u64,
    pub max_citations: u64,
    pub mean_citations: S,
    /// Only when requested.
    pub std_dev_citations: Option<S>,
    pub cited: CountShare<S>,
    /// Headline citation rate.
    pub citations_per_cited_doc: S,
    pub h_index: usize,
    pub g_index: usize,
    pub first_pub_year: Option<i32>,
    pub m_quotient: S,
    pub i_indices: BTreeMap<u64, usize>,
    pub self_citation: SelfCitation<S>,
    /// CNCI and top-percentile results; absent without field baselines.
    pub normalized: Option<NormalizedImpact<S>>,
    pub per_source: BTreeMap<String, SourceIndices<S>>,
}

pub fn impact_profile<S: Scalar>(
    corpus: &Corpus,
    tables: Option<(&JournalMetricsTable<S>, &BaselineTable<S>)>,
    citations: &Citations,
    settings: &ImpactSettings,
    scope: Scope,
) -> (ImpactProfile<S>, Vec<Issue>) {
    let pubs: Vec<&PublicationRecord> = corpus.focal_pubs.iter().filter(|p| scope.includes(p)).collect();
    let counts: Vec<u64> = pubs.iter().map(|p| citations.count(p)).collect();
    let mut issues = citations.missing(pubs.iter().copied());

    let n = pubs.len();
    let total: u64 = counts.iter().sum();
    let cited = counts.iter().filter(|&&c| c > 0).count();
    let h = h_index(&counts);
    let first_pub_year = pubs.iter().map(|p| p.year).min();
    let as_scalar: Vec<S> = counts
        .iter()
        .map(|&c| S::from_u64(c).unwrap_or_else(S::infinity))
        .collect();
    let total_s = S::from_u64(total).unwrap_or_else(S::infinity);

    let normalized = tables.map(|(metrics, baselines)| {
        let (n, found) = normalized_impact(&pubs, citations, metrics, baselines);
        issues.extend(found);
        n
    });

    let mut per_source = BTreeMap::new();
    for source in corpus.citation_sources() {
        let src_counts: Vec<u64> = pubs.iter().filter_map(|p| p.citations(&source)).collect();
        per_source.insert(
            source,
            SourceIndices {
                publications_with_count: src_counts.len(),
                total_citations: src_counts.iter().sum(),
                cited: CountShare::of(src_counts.iter().filter(|&&c| c > 0).count(), src_counts.len()),
                h_index: h_index(&src_counts),
                g_index: g_index(&src_counts),
            },
        );
    }

    let profile = ImpactProfile {
        scope,
        primary_source: citations.source().to_string(),
        publications: n,
        total_citations: total,
        max_citations: counts.iter().copied().max().unwrap_or(0),
        mean_citations: if n == 0 { S::zero() } else { total_s / S::of_count(n) },
        std_dev_citations: if settings.std_dev { std_dev(&as_scalar) } else { None },
        cited: CountShare::of(cited, n),
        citations_per_cited_doc: if cited == 0 { S::zero() } else { total_s / S::of_count(cited) },
        h_index: h,
        g_index: g_index(&counts),
        first_pub_year,
        m_quotient: first_pub_year
            .map(|y| m_quotient(h, y, settings.reference_year.max(y)))
            .unwrap_or_else(S::zero),
        i_indices: settings
            .i_thresholds
            .iter()
            .map(|&t| (t, i_index(&counts, t)))
            .collect(),
        self_citation: self_citation_rate(corpus, scope, settings.selfcite_usual_max),
        normalized,
        per_source,
    };
    (profile, issues)
}
