//! Report assembly, rendering and peer comparison.

mod build;
mod document;
mod interview;
mod peers;
mod render;
mod tables;

pub use build::{build_report, corpus_hash, evolution_windows, BuildOptions, Report};
pub use document::{
    AffiliationFunding, Annex, CitingAnalysis, Coauthorship, Cooperation, GraphRef, ImpactSection, Metadata,
    Methodology, ReferenceAnalysis, ReportDocument, ResearchFocus, Section, SectionKind, Summary,
    MASKED_TIMESTAMP,
};
pub use interview::{interview_template, INTERVIEW_QUESTIONS};
pub use peers::{compare_peers, PartyProfile, PeerComparison, PeerDelta};
pub use render::{markdown, parse_structured, render, ReportFormat};
pub use tables::Tables;
