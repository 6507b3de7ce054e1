use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, DocType};
use crate::scalar::{ols_slope, Scalar};
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct YearCounts {
    pub total: usize,
    pub citable: usize,
    pub by_type: BTreeMap<DocType, usize>,
}

impl YearCounts {
    fn add(&mut self, doc_type: DocType) {
        self.total += 1;
        if doc_type.is_citable() {
            self.citable += 1;
        }
        *self.by_type.entry(doc_type).or_default() += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ActivityProfile<S: Scalar> {
    pub window: Window,
    /// One entry for every year of the window, zeros included.
    pub per_year_counts: BTreeMap<i32, YearCounts>,
    pub window_totals: YearCounts,
    /// Least-squares slope of the yearly totals, in publications per year.
    pub trend_slope: S,
    pub citable_trend_slope: S,
    /// Publications before the window.
    pub earlier_count: usize,
    /// Publications after the window (the running, incomplete year).
    pub current_incomplete_year_count: usize,
}

pub fn activity_profile<S: Scalar>(corpus: &Corpus, window: Window) -> ActivityProfile<S> {
    let mut per_year: BTreeMap<i32, YearCounts> =
        window.years().map(|y| (y, YearCounts::default())).collect();
    let mut totals = YearCounts::default();
    let (mut earlier, mut later) = (0, 0);
    for p in &corpus.focal_pubs {
        if p.year < window.start {
            earlier += 1;
        } else if p.year > window.end {
            later += 1;
        } else {
            per_year.entry(p.year).or_default().add(p.doc_type);
            totals.add(p.doc_type);
        }
    }
    let xs: Vec<S> = window.years().map(|y| S::of_count((y - window.start) as usize)).collect();
    let series = |f: fn(&YearCounts) -> usize| -> Vec<S> {
        per_year.values().map(|c| S::of_count(f(c))).collect()
    };
    let trend_slope = ols_slope(&xs, &series(|c| c.total));
    let citable_trend_slope = ols_slope(&xs, &series(|c| c.citable));
    ActivityProfile {
        window,
        per_year_counts: per_year,
        window_totals: totals,
        trend_slope,
        citable_trend_slope,
        earlier_count: earlier,
        current_incomplete_year_count: later,
    }
}
