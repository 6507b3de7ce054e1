//! Individual bibliometric profiles of researchers.
//!
//! A [`corpus::Corpus`] holds the researcher's publications, the documents
//! citing them and the citation links. Journal metrics and field baselines
//! ([`baselines`]) turn it into activity, visibility and impact indicators
//! ([`indicators`]), co-operation graphs ([`networks`]), cited-reference
//! statistics ([`knowledge`]) and term maps ([`focus`]); [`reporting`]
//! assembles them into one document.
//!
//! Real-valued results are generic over [`scalar::Scalar`] (`f32` or
//! `f64`); the aliases below fix `f64`.

pub mod baselines;
pub mod config;
pub mod corpus;
pub mod error;
pub mod focus;
pub mod indicators;
pub mod knowledge;
pub mod networks;
pub mod reporting;
pub mod scalar;
pub mod text;
pub mod window;

pub use config::Config;
pub use corpus::{Corpus, PublicationRecord};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use window::Window;

pub type Real = f64;
pub type Graph = networks::Graph<Real>;
pub type JournalMetricsTable = baselines::JournalMetricsTable<Real>;
pub type BaselineTable = baselines::BaselineTable<Real>;
pub type Tables = reporting::Tables<Real>;
pub type Report = reporting::Report<Real>;
pub type ReportDocument = reporting::ReportDocument<Real>;
pub type PeerComparison = reporting::PeerComparison<Real>;
pub type ImpactProfile = indicators::ImpactProfile<Real>;
pub type VisibilityProfile = indicators::VisibilityProfile<Real>;
pub type CoverageResult = corpus::CoverageResult<Real>;
pub type TermStats = focus::TermStats<Real>;
