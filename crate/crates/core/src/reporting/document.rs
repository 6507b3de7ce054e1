use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::baselines::{EditionPolicy, Metric};
use crate::config::Config;
use crate::corpus::{CoverageResult, Issue};
use crate::focus::{InterdisciplinarityProfile, TermSource, TermStats};
use crate::indicators::{
    ActivityProfile, CoauthorProfile, CountShare, FundingProfile, ImpactProfile, JournalRow, SelfCitationFlag,
    VisibilityProfile,
};
use crate::knowledge::{ReferenceStats, VenueOverlap};
use crate::networks::{CitingDocsProfile, CollaborationShares, CooperationRow, Graph, RankedActor, WindowShares};
use crate::scalar::Scalar;
use crate::window::Window;

pub const MASKED_TIMESTAMP: &str = "<masked>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SectionKind {
    Methodology,
    Coverage,
    Activity,
    AffiliationFunding,
    Coauthorship,
    Visibility,
    Impact,
    CitingAnalysis,
    Cooperation,
    ReferenceAnalysis,
    ResearchFocus,
    Summary,
    Annex,
}

impl SectionKind {
    pub const ALL: [SectionKind; 13] = [
        SectionKind::Methodology,
        SectionKind::Coverage,
        SectionKind::Activity,
        SectionKind::AffiliationFunding,
        SectionKind::Coauthorship,
        SectionKind::Visibility,
        SectionKind::Impact,
        SectionKind::CitingAnalysis,
        SectionKind::Cooperation,
        SectionKind::ReferenceAnalysis,
        SectionKind::ResearchFocus,
        SectionKind::Summary,
        SectionKind::Annex,
    ];

    pub fn title(self) -> &'static str {
        match self {
            SectionKind::Methodology => "Methodology",
            SectionKind::Coverage => "Coverage",
            SectionKind::Activity => "Publication activity",
            SectionKind::AffiliationFunding => "Affiliations and funding",
            SectionKind::Coauthorship => "Co-authorship",
            SectionKind::Visibility => "Visibility",
            SectionKind::Impact => "Citation impact",
            SectionKind::CitingAnalysis => "Citing documents",
            SectionKind::Cooperation => "Cooperation",
            SectionKind::ReferenceAnalysis => "Cited references",
            SectionKind::ResearchFocus => "Research focus",
            SectionKind::Summary => "Summary",
            SectionKind::Annex => "Annex",
        }
    }
}

/// A report section: `payload` is `None` when the section is switched off.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section<T> {
    pub enabled: bool,
    pub payload: Option<T>,
    pub notes: Vec<String>,
}

impl<T> Section<T> {
    pub fn off() -> Self {
        Section {
            enabled: false,
            payload: None,
            notes: vec!["section disabled in configuration".into()],
        }
    }

    pub fn on(payload: T, notes: Vec<String>) -> Self {
        Section {
            enabled: true,
            payload: Some(payload),
            notes,
        }
    }

    pub fn get(&self) -> Option<&T> {
        self.payload.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub report_id: String,
    pub researcher: String,
    /// SHA-256 of the canonical corpus JSON.
    pub corpus_hash: String,
    pub generated_at: String,
    pub engine_version: String,
    pub config: Config,
}

/// Where a graph was written, with its size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct GraphRef<S: Scalar> {
    pub name: String,
    /// File name without extension; `.dot` or `.graphml` is appended.
    pub file_stem: String,
    pub nodes: usize,
    pub edges: usize,
    pub density: S,
}

impl<S: Scalar> GraphRef<S> {
    pub fn of(report_id: &str, g: &Graph<S>) -> Self {
        GraphRef {
            name: g.name.clone(),
            file_stem: format!("{report_id}.{}", g.name),
            nodes: g.node_count(),
            edges: g.edge_count(),
            density: g.density(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Methodology {
    pub window: Window,
    pub primary_source: String,
    pub citation_sources: Vec<String>,
    pub metric: Metric,
    pub edition_policy: EditionPolicy,
    pub i_thresholds: Vec<u64>,
    pub self_citation_usual_max: f64,
    pub term_source: TermSource,
    pub term_min_occurrences: usize,
    pub term_keep_fraction: f64,
    /// Field names reported in the summary, in order.
    pub summary_fields: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AffiliationFunding<S: Scalar> {
    pub publications: usize,
    pub home_affiliated: CountShare<S>,
    pub institutions: Vec<RankedActor>,
    pub funding: FundingProfile<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Coauthorship<S: Scalar> {
    pub profile: CoauthorProfile<S>,
    pub network: GraphRef<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ImpactSection<S: Scalar> {
    pub citable_items: ImpactProfile<S>,
    pub all_items: ImpactProfile<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CitingAnalysis<S: Scalar> {
    pub profile: CitingDocsProfile<S>,
    pub citing_countries: GraphRef<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Cooperation<S: Scalar> {
    pub shares: CollaborationShares<S>,
    /// External institutions in total (the table is truncated).
    pub institutions: usize,
    pub table: Vec<CooperationRow<S>>,
    pub countries: GraphRef<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ReferenceAnalysis<S: Scalar> {
    pub stats: ReferenceStats<S>,
    pub venue_overlap: VenueOverlap<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ResearchFocus<S: Scalar> {
    pub candidate_terms: usize,
    pub threshold_terms: usize,
    pub selected: Vec<TermStats<S>>,
    pub interdisciplinarity: InterdisciplinarityProfile,
    pub term_map: GraphRef<S>,
}

/// Headline numbers, each copied from a section payload (absent when that
/// section is off).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Summary<S: Scalar> {
    pub window: Window,
    /// Window publications (activity).
    pub publications: Option<usize>,
    pub citable_publications: Option<usize>,
    /// All items (impact).
    pub total_citations: Option<u64>,
    pub h_index: Option<usize>,
    pub g_index: Option<usize>,
    /// Citable items (impact).
    pub cnci_mean: Option<S>,
    pub top10: Option<usize>,
    pub top1: Option<usize>,
    /// Window share (visibility).
    pub q1_share: Option<S>,
    /// Whole window (cooperation).
    pub collaboration: Option<WindowShares<S>>,
    pub self_citation_rate: Option<S>,
    pub self_citation_flag: Option<SelfCitationFlag>,
}

pub(crate) const SUMMARY_FIELDS: [&str; 12] = [
    "publications",
    "citable_publications",
    "total_citations",
    "h_index",
    "g_index",
    "cnci_mean",
    "top10",
    "top1",
    "q1_share",
    "collaboration",
    "self_citation_rate",
    "self_citation_flag",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Annex<S: Scalar> {
    pub journal_table: Vec<JournalRow<S>>,
    pub cooperation_table: Vec<CooperationRow<S>>,
    /// Per source, publications without an identifier from it.
    pub unmatched: BTreeMap<String, Vec<String>>,
    /// Publications left out of the normalized indicators.
    pub excluded_ids: Vec<String>,
    /// Every warning raised while loading and analysing, sorted.
    pub warnings: Vec<Issue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ReportDocument<S: Scalar> {
    pub metadata: Metadata,
    pub methodology: Section<Methodology>,
    pub coverage: Section<Vec<CoverageResult<S>>>,
    pub activity: Section<ActivityProfile<S>>,
    pub affiliation_funding: Section<AffiliationFunding<S>>,
    pub coauthorship: Section<Coauthorship<S>>,
    pub visibility: Section<VisibilityProfile<S>>,
    pub impact: Section<ImpactSection<S>>,
    pub citing_analysis: Section<CitingAnalysis<S>>,
    pub cooperation: Section<Cooperation<S>>,
    pub reference_analysis: Section<ReferenceAnalysis<S>>,
    pub research_focus: Section<ResearchFocus<S>>,
    pub summary: Section<Summary<S>>,
    pub annex: Section<Annex<S>>,
}

impl<S: Scalar> ReportDocument<S> {
    pub fn mask_timestamp(&mut self) {
        self.metadata.generated_at = MASKED_TIMESTAMP.to_string();
    }

    /// Graph references in section order.
    pub fn graph_refs(&self) -> Vec<&GraphRef<S>> {
        let mut out = Vec::new();
        if let Some(c) = self.coauthorship.get() {
            out.push(&c.network);
        }
        if let Some(c) = self.citing_analysis.get() {
            out.push(&c.citing_countries);
        }
        if let Some(c) = self.cooperation.get() {
            out.push(&c.countries);
        }
        if let Some(f) = self.research_focus.get() {
            out.push(&f.term_map);
        }
        out
    }
}
