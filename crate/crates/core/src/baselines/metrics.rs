use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Journal impact measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Metric {
    /// Two-year impact factor.
    IF,
    IF5,
    /// Article Influence Score.
    AIS,
    SJR,
    SNIP,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::IF => "IF",
            Metric::IF5 => "IF5",
            Metric::AIS => "AIS",
            Metric::SJR => "SJR",
            Metric::SNIP => "SNIP",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Metric::IF, Metric::IF5, Metric::AIS, Metric::SJR, Metric::SNIP]
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown metric `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct JournalMetricRow<S: Scalar> {
    pub journal_id: String,
    pub edition_year: i32,
    pub metric: Metric,
    pub value: S,
    pub categories: Vec<String>,
}

/// Journal impact values per edition, with subject-category assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct JournalMetricsTable<S: Scalar> {
    rows: Vec<JournalMetricRow<S>>,
    index: HashMap<(String, i32, Metric), usize>,
}

impl<S: Scalar> JournalMetricsTable<S> {
    /// Builds the table, enforcing unique `(journal, edition, metric)` keys,
    /// non-negative values and non-empty category lists.
    pub fn new(rows: Vec<JournalMetricRow<S>>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, r) in rows.iter().enumerate() {
            let bad = |message: String| Error::InvalidTable {
                table: "journal metrics".into(),
                message,
            };
            if !(r.value >= S::zero()) {
                return Err(bad(format!("negative value for {} ({})", r.journal_id, r.edition_year)));
            }
            if r.categories.is_empty() {
                return Err(bad(format!("no categories for {} ({})", r.journal_id, r.edition_year)));
            }
            let key = (r.journal_id.clone(), r.edition_year, r.metric);
            if index.insert(key, i).is_some() {
                return Err(bad(format!(
                    "duplicate row {} {} {}",
                    r.journal_id, r.edition_year, r.metric
                )));
            }
        }
        Ok(JournalMetricsTable { rows, index })
    }

    /// Parses `journal_id,edition_year,metric,value,categories` with
    /// `;`-separated categories.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let loc = format!("journal metrics line {}", i + 2);
            let rec = rec.map_err(|e| Error::parse(&loc, e))?;
            if rec.len() != 5 {
                return Err(Error::parse(&loc, "expected 5 columns"));
            }
            rows.push(JournalMetricRow {
                journal_id: rec[0].to_string(),
                edition_year: rec[1].parse().map_err(|e| Error::parse(&loc, e))?,
                metric: rec[2].parse().map_err(|e: Error| Error::parse(&loc, e))?,
                value: rec[3]
                    .parse()
                    .map_err(|_| Error::parse(&loc, format!("bad value `{}`", &rec[3])))?,
                categories: rec[4]
                    .split(';')
                    .map(str::trim)
                    .filter(|c| !c.is_empty())
                    .map(str::to_string)
                    .collect(),
            });
        }
        Self::new(rows)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_str(&text)
    }

    pub fn rows(&self) -> &[JournalMetricRow<S>] {
        &self.rows
    }

    pub fn row(&self, journal_id: &str, metric: Metric, edition: i32) -> Option<&JournalMetricRow<S>> {
        self.index
            .get(&(journal_id.to_string(), edition, metric))
            .map(|&i| &self.rows[i])
    }

    /// Edition years with data for `metric`, ascending.
    pub fn editions(&self, metric: Metric) -> Vec<i32> {
        let set: BTreeSet<i32> = self
            .rows
            .iter()
            .filter(|r| r.metric == metric)
            .map(|r| r.edition_year)
            .collect();
        set.into_iter().collect()
    }

    pub fn latest_edition(&self, metric: Metric) -> Option<i32> {
        self.editions(metric).last().copied()
    }

    /// Rows of `category` for one metric and edition.
    pub fn category_members(&self, category: &str, metric: Metric, edition: i32) -> Vec<&JournalMetricRow<S>> {
        self.rows
            .iter()
            .filter(|r| r.metric == metric && r.edition_year == edition)
            .filter(|r| r.categories.iter().any(|c| c == category))
            .collect()
    }

    /// Every category the journal is assigned to in any row, sorted.
    pub fn categories_of(&self, journal_id: &str) -> Vec<String> {
        let set: BTreeSet<&String> = self
            .rows
            .iter()
            .filter(|r| r.journal_id == journal_id)
            .flat_map(|r| &r.categories)
            .collect();
        set.into_iter().cloned().collect()
    }

    pub fn contains_journal(&self, journal_id: &str) -> bool {
        self.rows.iter().any(|r| r.journal_id == journal_id)
    }

    /// Collapses all editions of `metric` into one synthetic edition (the
    /// latest year) whose values are per-journal means across editions and
    /// whose categories come from each journal's most recent row.
    pub fn mean_over_editions(&self, metric: Metric) -> Result<Self> {
        let Some(latest) = self.latest_edition(metric) else {
            return Self::new(Vec::new());
        };
        let mut acc: HashMap<&str, (S, usize, i32, &Vec<String>)> = HashMap::new();
        for r in self.rows.iter().filter(|r| r.metric == metric) {
            let e = acc
                .entry(r.journal_id.as_str())
                .or_insert((S::zero(), 0, i32::MIN, &r.categories));
            e.0 += r.value;
            e.1 += 1;
            if r.edition_year > e.2 {
                e.2 = r.edition_year;
                e.3 = &r.categories;
            }
        }
        let mut rows: Vec<JournalMetricRow<S>> = acc
            .into_iter()
            .map(|(id, (sum, n, _, cats))| JournalMetricRow {
                journal_id: id.to_string(),
                edition_year: latest,
                metric,
                value: sum / S::of_count(n),
                categories: cats.clone(),
            })
            .collect();
        rows.sort_by(|a, b| a.journal_id.cmp(&b.journal_id));
        Self::new(rows)
    }
}

/// A self-compiled list of highly reputed journals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopJournalList {
    pub name: String,
    pub journal_ids: BTreeSet<String>,
}

impl TopJournalList {
    /// One journal id per line; `#` starts a comment.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let journal_ids: BTreeSet<String> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect();
        if journal_ids.is_empty() {
            return Err(Error::InvalidTable {
                table: format!("top-journal list {name}"),
                message: "list is empty".into(),
            });
        }
        Ok(TopJournalList {
            name: name.to_string(),
            journal_ids,
        })
    }

    /// Reads a list file; its name is the file stem.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::parse(&name, &text)
    }

    pub fn contains(&self, journal_id: &str) -> bool {
        self.journal_ids.contains(journal_id)
    }
}
