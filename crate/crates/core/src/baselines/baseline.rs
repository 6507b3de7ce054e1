use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{DocType, DocTypeAliases};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Reference values for one `(category, publication year, doc type)` class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BaselineRow<S: Scalar> {
    pub category: String,
    pub pub_year: i32,
    pub doc_type: DocType,
    pub expected_citations: S,
    /// Citations needed to reach the top 10% of the class.
    pub p90: S,
    /// Citations needed to reach the top 1% of the class.
    pub p99: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineTable<S: Scalar> {
    rows: Vec<BaselineRow<S>>,
    index: HashMap<(String, i32, DocType), usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PercentileFlags {
    pub top10: bool,
    pub top1: bool,
}

impl<S: Scalar> BaselineTable<S> {
    pub fn new(rows: Vec<BaselineRow<S>>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, r) in rows.iter().enumerate() {
            let bad = |message: String| Error::InvalidTable {
                table: "baselines".into(),
                message,
            };
            if !(r.expected_citations >= S::zero() && r.p90 >= S::zero() && r.p99 >= r.p90) {
                return Err(bad(format!(
                    "row {} {} {} violates 0 <= p90 <= p99 or has negative expectation",
                    r.category, r.pub_year, r.doc_type
                )));
            }
            if index
                .insert((r.category.clone(), r.pub_year, r.doc_type), i)
                .is_some()
            {
                return Err(bad(format!(
                    "duplicate row {} {} {}",
                    r.category, r.pub_year, r.doc_type
                )));
            }
        }
        Ok(BaselineTable { rows, index })
    }

    /// Parses `category,pub_year,doc_type,expected,p90,p99`. Doc types go
    /// through the default alias table.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let aliases = DocTypeAliases::default();
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let loc = format!("baselines line {}", i + 2);
            let rec = rec.map_err(|e| Error::parse(&loc, e))?;
            if rec.len() != 6 {
                return Err(Error::parse(&loc, "expected 6 columns"));
            }
            let num = |col: usize| -> Result<S> {
                rec[col]
                    .parse()
                    .map_err(|_| Error::parse(&loc, format!("bad number `{}`", &rec[col])))
            };
            let resolved = aliases.resolve(&rec[2]);
            if !resolved.unmapped.is_empty() {
                return Err(Error::parse(&loc, format!("unknown doc type `{}`", &rec[2])));
            }
            rows.push(BaselineRow {
                category: rec[0].to_string(),
                pub_year: rec[1].parse().map_err(|e| Error::parse(&loc, e))?,
                doc_type: resolved.doc_type,
                expected_citations: num(3)?,
                p90: num(4)?,
                p99: num(5)?,
            });
        }
        Self::new(rows)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_str(&text)
    }

    pub fn rows(&self) -> &[BaselineRow<S>] {
        &self.rows
    }

    pub fn get(&self, category: &str, pub_year: i32, doc_type: DocType) -> Result<&BaselineRow<S>> {
        self.index
            .get(&(category.to_string(), pub_year, doc_type))
            .map(|&i| &self.rows[i])
            .ok_or_else(|| Error::MissingBaseline {
                category: category.to_string(),
                year: pub_year,
                doc_type: doc_type.to_string(),
            })
    }

    fn rows_for(&self, categories: &[String], pub_year: i32, doc_type: DocType) -> Result<Vec<&BaselineRow<S>>> {
        if categories.is_empty() {
            return Err(Error::NoCategories);
        }
        categories
            .iter()
            .map(|c| self.get(c, pub_year, doc_type))
            .collect()
    }
}

/// Mean expected citations over the categories (fractional counting for
/// journals in several categories).
pub fn expected_citations<S: Scalar>(
    categories: &[String],
    pub_year: i32,
    doc_type: DocType,
    table: &BaselineTable<S>,
) -> Result<S> {
    let rows = table.rows_for(categories, pub_year, doc_type)?;
    let sum = rows
        .iter()
        .fold(S::zero(), |acc, r| acc + r.expected_citations);
    Ok(sum / S::of_count(rows.len()))
}

/// Top-10% and top-1% membership against the most favourable (lowest)
/// category threshold.
pub fn percentile_flags<S: Scalar>(
    citations: u64,
    categories: &[String],
    pub_year: i32,
    doc_type: DocType,
    table: &BaselineTable<S>,
) -> Result<PercentileFlags> {
    let rows = table.rows_for(categories, pub_year, doc_type)?;
    let min = |f: fn(&BaselineRow<S>) -> S| {
        rows.iter()
            .map(|r| f(r))
            .fold(S::infinity(), |a, b| a.min(b))
    };
    let c = S::from_u64(citations).unwrap_or_else(S::infinity);
    let top1 = c >= min(|r| r.p99);
    let top10 = top1 || c >= min(|r| r.p90);
    Ok(PercentileFlags { top10, top1 })
}
