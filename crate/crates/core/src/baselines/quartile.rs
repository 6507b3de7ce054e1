use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{JournalMetricsTable, Metric};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quartile {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Quartile {
    pub const ALL: [Quartile; 4] = [Quartile::Q1, Quartile::Q2, Quartile::Q3, Quartile::Q4];

    /// Band of a 1-based rank in a category of `size`: `Qk` holds the ranks
    /// up to `ceil(k * size / 4)`. Equal to `ceil(4 * rank / size)` whenever
    /// `size` is a multiple of four; a lone journal is `Q1`.
    pub fn from_rank(rank: usize, size: usize) -> Quartile {
        assert!(rank >= 1 && rank <= size, "rank {rank} outside 1..={size}");
        match 4 * (rank - 1) / size + 1 {
            1 => Quartile::Q1,
            2 => Quartile::Q2,
            3 => Quartile::Q3,
            _ => Quartile::Q4,
        }
    }
}

impl fmt::Display for Quartile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A journal's rank band within one category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuartileAssignment {
    pub journal_id: String,
    pub category: String,
    pub metric: Metric,
    pub edition_year: i32,
    pub rank: usize,
    pub category_size: usize,
    pub quartile: Quartile,
}

impl QuartileAssignment {
    /// Orders by quartile, then by `rank / size`, then category name.
    fn better_than(&self, other: &Self) -> Ordering {
        self.quartile
            .cmp(&other.quartile)
            .then_with(|| (self.rank * other.category_size).cmp(&(other.rank * self.category_size)))
            .then_with(|| self.category.cmp(&other.category))
    }
}

/// Ranks the journal inside `category` by metric value, descending. Tied
/// journals share the best rank of their block.
pub fn quartile_of<S: Scalar>(
    journal_id: &str,
    category: &str,
    metric: Metric,
    edition_year: i32,
    table: &JournalMetricsTable<S>,
) -> Result<QuartileAssignment> {
    if !table.editions(metric).contains(&edition_year) {
        return Err(Error::UnknownEdition {
            metric: metric.to_string(),
            edition: edition_year,
        });
    }
    let members = table.category_members(category, metric, edition_year);
    let own = members
        .iter()
        .find(|r| r.journal_id == journal_id)
        .ok_or_else(|| Error::JournalNotInCategory {
            journal: journal_id.to_string(),
            category: category.to_string(),
        })?;
    let rank = 1 + members.iter().filter(|r| r.value > own.value).count();
    Ok(QuartileAssignment {
        journal_id: journal_id.to_string(),
        category: category.to_string(),
        metric,
        edition_year,
        rank,
        category_size: members.len(),
        quartile: Quartile::from_rank(rank, members.len()),
    })
}

/// Best quartile over every category the journal is assigned to.
pub fn best_quartile<S: Scalar>(
    journal_id: &str,
    metric: Metric,
    edition_year: i32,
    table: &JournalMetricsTable<S>,
) -> Result<QuartileAssignment> {
    let row = table
        .row(journal_id, metric, edition_year)
        .ok_or_else(|| Error::UnknownJournal(journal_id.to_string()))?;
    let mut best: Option<QuartileAssignment> = None;
    for category in &row.categories {
        let qa = quartile_of(journal_id, category, metric, edition_year, table)?;
        if best.as_ref().is_none_or(|b| qa.better_than(b) == Ordering::Less) {
            best = Some(qa);
        }
    }
    best.ok_or_else(|| Error::UnknownJournal(journal_id.to_string()))
}

/// Median metric value in a category edition.
pub fn category_median<S: Scalar>(
    category: &str,
    metric: Metric,
    edition_year: i32,
    table: &JournalMetricsTable<S>,
) -> Option<S> {
    let values: Vec<S> = table
        .category_members(category, metric, edition_year)
        .iter()
        .map(|r| r.value)
        .collect();
    crate::scalar::median(&values)
}

/// Which journal-metrics edition a publication is judged by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EditionPolicy {
    /// The most recent edition for every publication year.
    #[default]
    Latest,
    /// One explicitly chosen edition for every publication year.
    Fixed(i32),
    /// The edition matching the publication year.
    PublicationYear,
    /// Per-journal mean value across all editions.
    MeanOfEditions,
}

/// Resolved journal standing for a publication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct JournalStanding<S: Scalar> {
    pub assignment: QuartileAssignment,
    pub value: S,
    /// Median value of the category behind the best quartile.
    pub category_median: Option<S>,
}

/// Quartile lookups under a fixed metric and edition policy.
pub struct QuartileLookup<'a, S: Scalar> {
    table: std::borrow::Cow<'a, JournalMetricsTable<S>>,
    metric: Metric,
    policy: EditionPolicy,
    latest: Option<i32>,
}

impl<'a, S: Scalar> QuartileLookup<'a, S> {
    pub fn new(table: &'a JournalMetricsTable<S>, metric: Metric, policy: EditionPolicy) -> Self {
        let table = match policy {
            EditionPolicy::MeanOfEditions => std::borrow::Cow::Owned(
                table
                    .mean_over_editions(metric)
                    .expect("per-journal means of a valid table form a valid table"),
            ),
            _ => std::borrow::Cow::Borrowed(table),
        };
        let latest = table.latest_edition(metric);
        QuartileLookup {
            table,
            metric,
            policy,
            latest,
        }
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn edition_for(&self, pub_year: i32) -> Option<i32> {
        match self.policy {
            EditionPolicy::Latest | EditionPolicy::MeanOfEditions => self.latest,
            EditionPolicy::Fixed(y) => Some(y),
            EditionPolicy::PublicationYear => Some(pub_year),
        }
    }

    /// `None` when the journal is not ranked in the applicable edition.
    pub fn standing(&self, journal_id: &str, pub_year: i32) -> Option<JournalStanding<S>> {
        let edition = self.edition_for(pub_year)?;
        let assignment = best_quartile(journal_id, self.metric, edition, &self.table).ok()?;
        let value = self.table.row(journal_id, self.metric, edition)?.value;
        let category_median = category_median(&assignment.category, self.metric, edition, &self.table);
        Some(JournalStanding {
            assignment,
            value,
            category_median,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::JournalMetricRow;

    fn table(rows: &[(&str, f64, &[&str])]) -> JournalMetricsTable<f64> {
        JournalMetricsTable::new(
            rows.iter()
                .map(|(id, v, cats)| JournalMetricRow {
                    journal_id: id.to_string(),
                    edition_year: 2020,
                    metric: Metric::IF,
                    value: *v,
                    categories: cats.iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn eight_journal_category() {
        let values = [9.0, 7.5, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0];
        let rows: Vec<(String, f64)> = values
            .iter()
            .enumerate()
            .map(|(i, v)| (format!("J{i}"), *v))
            .collect();
        let t = table(
            &rows.iter().map(|(id, v)| (id.as_str(), *v, &["C"][..])).collect::<Vec<_>>(),
        );
        // Oracle: sort values descending and enumerate.
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let second = sorted.iter().position(|v| *v == 7.5).unwrap() + 1;
        let qa = quartile_of("J1", "C", Metric::IF, 2020, &t).unwrap();
        assert_eq!((qa.rank, qa.category_size), (second, 8));
        assert_eq!(qa.quartile, Quartile::Q1);
        let fifth = quartile_of("J4", "C", Metric::IF, 2020, &t).unwrap();
        assert_eq!((fifth.rank, fifth.quartile), (5, Quartile::Q3));
        let labels: Vec<Quartile> = (0..8)
            .map(|i| quartile_of(&format!("J{i}"), "C", Metric::IF, 2020, &t).unwrap().quartile)
            .collect();
        use Quartile::*;
        assert_eq!(labels, vec![Q1, Q1, Q2, Q2, Q3, Q3, Q4, Q4]);
    }

    #[test]
    fn singleton_category() {
        let t = table(&[("J", 0.1, &["Solo"])]);
        let qa = quartile_of("J", "Solo", Metric::IF, 2020, &t).unwrap();
        assert_eq!((qa.rank, qa.quartile), (1, Quartile::Q1));
    }

    #[test]
    fn ties_share_best_rank() {
        let t = table(&[("A", 5.0, &["C"]), ("B", 3.0, &["C"]), ("D", 3.0, &["C"]), ("E", 1.0, &["C"])]);
        assert_eq!(quartile_of("B", "C", Metric::IF, 2020, &t).unwrap().rank, 2);
        assert_eq!(quartile_of("D", "C", Metric::IF, 2020, &t).unwrap().rank, 2);
        assert_eq!(quartile_of("E", "C", Metric::IF, 2020, &t).unwrap().rank, 4);
    }

    #[test]
    fn errors() {
        let t = table(&[("A", 5.0, &["C"]), ("B", 1.0, &["D"])]);
        assert!(matches!(
            quartile_of("A", "D", Metric::IF, 2020, &t),
            Err(Error::JournalNotInCategory { .. })
        ));
        assert!(matches!(
            quartile_of("A", "C", Metric::IF, 2019, &t),
            Err(Error::UnknownEdition { .. })
        ));
        assert!(matches!(
            best_quartile("Z", Metric::IF, 2020, &t),
            Err(Error::UnknownJournal(_))
        ));
    }

    #[test]
    fn best_quartile_picks_minimum() {
        // X is 3rd of 4 in "Big" (Q3) and 1st of 2 in "Small" (Q1)... and
        // 2nd of 4 in "Mid" (Q2).
        let t = table(&[
            ("X", 5.0, &["Big", "Small", "Mid"]),
            ("B1", 9.0, &["Big"]),
            ("B2", 8.0, &["Big", "Mid"]),
            ("B3", 1.0, &["Big", "Mid"]),
            ("S1", 4.0, &["Small"]),
            ("M1", 0.5, &["Mid"]),
        ]);
        let best = best_quartile("X", Metric::IF, 2020, &t).unwrap();
        assert_eq!((best.category.as_str(), best.quartile), ("Small", Quartile::Q1));
        for c in ["Big", "Small", "Mid"] {
            assert!(best.quartile <= quartile_of("X", c, Metric::IF, 2020, &t).unwrap().quartile);
        }
    }

    #[test]
    fn best_quartile_tie_breaks_on_ratio() {
        // "P": rank 6 of 20 (0.30, Q2). "Q": rank 9 of 20 (0.45, Q2).
        let mut rows: Vec<(String, f64, Vec<&str>)> = vec![("X".into(), 50.0, vec!["P", "Q"])];
        for i in 0..19 {
            let v = if i < 5 { 100.0 + i as f64 } else { 10.0 - i as f64 * 0.1 };
            rows.push((format!("p{i}"), v, vec!["P"]));
        }
        for i in 0..19 {
            let v = if i < 8 { 100.0 + i as f64 } else { 10.0 - i as f64 * 0.1 };
            rows.push((format!("q{i}"), v, vec!["Q"]));
        }
        let t = table(
            &rows.iter().map(|(id, v, c)| (id.as_str(), *v, c.as_slice())).collect::<Vec<_>>(),
        );
        let p = quartile_of("X", "P", Metric::IF, 2020, &t).unwrap();
        let q = quartile_of("X", "Q", Metric::IF, 2020, &t).unwrap();
        assert_eq!((p.rank, p.category_size, p.quartile), (6, 20, Quartile::Q2));
        assert_eq!((q.rank, q.category_size, q.quartile), (9, 20, Quartile::Q2));
        assert_eq!(best_quartile("X", Metric::IF, 2020, &t).unwrap().category, "P");
    }

    #[test]
    fn lookup_policies() {
        let mk = |year, v| JournalMetricRow {
            journal_id: "J".to_string(),
            edition_year: year,
            metric: Metric::IF,
            value: v,
            categories: vec!["C".into()],
        };
        let other = |year, v| JournalMetricRow {
            journal_id: "K".to_string(),
            edition_year: year,
            metric: Metric::IF,
            value: v,
            categories: vec!["C".into()],
        };
        let t = JournalMetricsTable::<f64>::new(vec![mk(2018, 1.0), mk(2020, 4.0), other(2018, 2.0), other(2020, 3.0)]).unwrap();
        let latest = QuartileLookup::new(&t, Metric::IF, EditionPolicy::Latest);
        assert_eq!(latest.standing("J", 2010).unwrap().assignment.rank, 1);
        let by_year = QuartileLookup::new(&t, Metric::IF, EditionPolicy::PublicationYear);
        assert_eq!(by_year.standing("J", 2018).unwrap().assignment.rank, 2);
        assert!(by_year.standing("J", 2019).is_none());
        let mean = QuartileLookup::new(&t, Metric::IF, EditionPolicy::MeanOfEditions);
        let s = mean.standing("J", 2000).unwrap();
        assert_eq!((s.value, s.assignment.rank), (2.5, 1));
        assert_eq!(s.category_median, Some(2.5));
    }
}
