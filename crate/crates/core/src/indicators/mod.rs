//! Activity, co-authorship, funding, visibility and impact indicators.

mod activity;
mod coauthor;
mod funding;
mod impact;
mod indices;
mod normalized;
mod selfcite;
mod visibility;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use activity::{activity_profile, ActivityProfile, YearCounts};
pub use coauthor::{coauthor_profile, CoauthorProfile, CoauthorSettings, CoauthorWindowStats, Dependence};
pub use funding::{funding_profile, FundingProfile};
pub use impact::{impact_profile, ImpactProfile, ImpactSettings, SourceIndices};
pub use indices::{g_index, h_index, i_index, m_quotient};
pub use normalized::{cnci, normalized_impact, pub_categories, NormalizedImpact, PubScore};
pub use selfcite::{self_citation_rate, SelfCitation, SelfCitationFlag};
pub use visibility::{
    visibility_profile, JournalRow, QuartileDistribution, VisibilityProfile, VisibilitySettings,
};

use crate::corpus::{Corpus, Issue, IssueKind, PublicationRecord};
use crate::scalar::{ratio, Scalar};

/// A count together with its share of some total.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CountShare<S: Scalar> {
    pub count: usize,
    pub percent: S,
}

impl<S: Scalar> CountShare<S> {
    pub fn of(count: usize, total: usize) -> Self {
        CountShare {
            count,
            percent: ratio(count, total),
        }
    }
}

/// Which publications an impact analysis covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scope {
    /// Articles, reviews and proceedings papers.
    CitableItems,
    AllItems,
}

impl Scope {
    pub fn includes(self, p: &PublicationRecord) -> bool {
        match self {
            Scope::CitableItems => p.doc_type.is_citable(),
            Scope::AllItems => true,
        }
    }
}

/// Citation counts from one source, falling back to the number of citation
/// edges for records that carry no count for that source.
pub struct Citations<'a> {
    source: String,
    edge_counts: HashMap<&'a str, u64>,
    has_edges: bool,
}

impl<'a> Citations<'a> {
    pub fn new(corpus: &'a Corpus, source: &str) -> Self {
        Citations {
            source: source.to_string(),
            edge_counts: corpus.edge_counts(),
            has_edges: !corpus.edges.is_empty(),
        }
    }

    /// Counts without edge fallback (for citing documents and peers).
    pub fn reported_only(source: &str) -> Self {
        Citations {
            source: source.to_string(),
            edge_counts: HashMap::new(),
            has_edges: false,
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn count(&self, p: &PublicationRecord) -> u64 {
        p.citations(&self.source)
            .unwrap_or_else(|| self.edge_counts.get(p.id.as_str()).copied().unwrap_or(0))
    }

    /// One issue per record lacking a count for the source.
    pub fn missing<'p>(&self, pubs: impl IntoIterator<Item = &'p PublicationRecord>) -> Vec<Issue> {
        pubs.into_iter()
            .filter(|p| p.citations(&self.source).is_none())
            .map(|p| {
                let how = if self.has_edges {
                    format!("using edge count {}", self.count(p))
                } else {
                    "counted as 0".to_string()
                };
                Issue::new(
                    IssueKind::MissingCitationCount,
                    Some(&p.id),
                    format!("no {} citation count id={} ({how})", self.source, p.id),
                )
            })
            .collect()
    }
}
