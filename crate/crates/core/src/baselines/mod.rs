//! Journal impact tables, quartile ranking, and the field baselines behind
//! normalized citation indicators.

mod baseline;
mod metrics;
mod quartile;

pub use baseline::{expected_citations, percentile_flags, BaselineRow, BaselineTable, PercentileFlags};
pub use metrics::{JournalMetricRow, JournalMetricsTable, Metric, TopJournalList};
pub use quartile::{
    best_quartile, category_median, quartile_of, EditionPolicy, JournalStanding, Quartile,
    QuartileAssignment, QuartileLookup,
};
