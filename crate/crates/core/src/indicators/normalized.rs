use serde::{Deserialize, Serialize};

use super::{Citations, CountShare};
use crate::baselines::{expected_citations, percentile_flags, BaselineTable, JournalMetricsTable};
use crate::corpus::{DocType, Issue, IssueKind, PublicationRecord};
use crate::error::{Error, Result};
use crate::scalar::{mean, Scalar};

/// Subject categories of the publication's venue (empty when the venue is
/// not in the metrics table).
pub fn pub_categories<S: Scalar>(p: &PublicationRecord, metrics: &JournalMetricsTable<S>) -> Vec<String> {
    p.venue_id
        .as_deref()
        .map(|v| metrics.categories_of(v))
        .unwrap_or_default()
}

/// Citations relative to the expected citations of the publication's
/// categories, year and document type.
pub fn cnci<S: Scalar>(
    categories: &[String],
    pub_year: i32,
    doc_type: DocType,
    citations: u64,
    baselines: &BaselineTable<S>,
) -> Result<S> {
    let expected = expected_citations(categories, pub_year, doc_type, baselines)?;
    if expected <= S::zero() {
        return Err(Error::InvalidTable {
            table: "baselines".into(),
            message: format!(
                "zero expected citations for {} {} {}",
                categories.join(";"),
                pub_year,
                doc_type
            ),
        });
    }
    let c = S::from_u64(citations).unwrap_or_else(S::infinity);
    Ok(c / expected)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PubScore<S: Scalar> {
    pub id: String,
    pub citations: u64,
    pub cnci: S,
    pub top10: bool,
    pub top1: bool,
}

/// CNCI and top-percentile results over a publication set. Publications
/// without baseline rows are excluded from every denominator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct NormalizedImpact<S: Scalar> {
    pub publications: usize,
    pub covered: usize,
    pub cnci_mean: S,
    pub top10: CountShare<S>,
    pub top1: CountShare<S>,
    pub excluded_ids: Vec<String>,
    pub scores: Vec<PubScore<S>>,
}

pub fn normalized_impact<S: Scalar>(
    pubs: &[&PublicationRecord],
    citations: &Citations,
    metrics: &JournalMetricsTable<S>,
    baselines: &BaselineTable<S>,
) -> (NormalizedImpact<S>, Vec<Issue>) {
    let mut scores = Vec::new();
    let mut excluded_ids = Vec::new();
    let mut issues = Vec::new();
    for p in pubs {
        let cats = pub_categories(p, metrics);
        let count = citations.count(p);
        let scored = cnci(&cats, p.year, p.doc_type, count, baselines).and_then(|value| {
            let flags = percentile_flags(count, &cats, p.year, p.doc_type, baselines)?;
            Ok(PubScore {
                id: p.id.clone(),
                citations: count,
                cnci: value,
                top10: flags.top10,
                top1: flags.top1,
            })
        });
        match scored {
            Ok(s) => scores.push(s),
            Err(e) => {
                let why = match e {
                    Error::NoCategories => "venue has no subject category".to_string(),
                    other => other.to_string(),
                };
                issues.push(Issue::new(
                    IssueKind::MissingBaseline,
                    Some(&p.id),
                    format!("excluded from CNCI id={}: {why}", p.id),
                ));
                excluded_ids.push(p.id.clone());
            }
        }
    }
    let covered = scores.len();
    let values: Vec<S> = scores.iter().map(|s| s.cnci).collect();
    let top10 = scores.iter().filter(|s| s.top10).count();
    let top1 = scores.iter().filter(|s| s.top1).count();
    (
        NormalizedImpact {
            publications: pubs.len(),
            covered,
            cnci_mean: mean(&values).unwrap_or_else(S::zero),
            top10: CountShare::of(top10, covered),
            top1: CountShare::of(top1, covered),
            excluded_ids,
            scores,
        },
        issues,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{BaselineRow, JournalMetricRow, Metric};
    use crate::corpus::tests_support::record;

    fn tables() -> (JournalMetricsTable<f64>, BaselineTable<f64>) {
        let m = JournalMetricsTable::new(vec![JournalMetricRow {
            journal_id: "J".into(),
            edition_year: 2020,
            metric: Metric::IF,
            value: 2.0,
            categories: vec!["A".into(), "B".into()],
        }])
        .unwrap();
        let row = |c: &str, e: f64| BaselineRow {
            category: c.into(),
            pub_year: 2015,
            doc_type: DocType::JournalArticle,
            expected_citations: e,
            p90: 10.0,
            p99: 30.0,
        };
        (m, BaselineTable::new(vec![row("A", 4.0), row("B", 6.0)]).unwrap())
    }

    #[test]
    fn ratio_against_expectation() {
        let (_, b) = tables();
        let cats = vec!["A".to_string(), "B".to_string()];
        assert_eq!(cnci(&cats, 2015, DocType::JournalArticle, 5, &b).unwrap(), 1.0);
        assert_eq!(cnci(&cats, 2015, DocType::JournalArticle, 10, &b).unwrap(), 2.0);
        assert_eq!(cnci(&cats, 2015, DocType::JournalArticle, 0, &b).unwrap(), 0.0);
        assert!(cnci(&cats, 2015, DocType::Review, 0, &b).is_err());
    }

    #[test]
    fn missing_baselines_are_excluded_not_zeroed() {
        let (m, b) = tables();
        let mut a = record("a", 2015);
        a.venue_id = Some("J".into());
        a.times_cited.insert("wos".into(), 15);
        let mut x = record("x", 2016);
        x.venue_id = Some("J".into());
        let nv = record("nv", 2015);
        let c = Citations::reported_only("wos");
        let (n, issues) = normalized_impact(&[&a, &x, &nv], &c, &m, &b);
        assert_eq!(n.covered, 1);
        assert_eq!(n.cnci_mean, 3.0);
        assert_eq!(n.excluded_ids, vec!["x", "nv"]);
        assert_eq!(issues.len(), 2);
        assert_eq!((n.top10.count, n.top10.percent), (1, 1.0));
    }
}
