use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Citations, CountShare};
use crate::baselines::{EditionPolicy, JournalMetricsTable, Metric, Quartile, QuartileLookup, TopJournalList};
use crate::corpus::{source_coverage, Corpus, CoverageResult, PublicationRecord};
use crate::scalar::{ratio, Scalar};
use crate::window::Window;

#[derive(Debug, Clone, PartialEq)]
pub struct VisibilitySettings {
    pub window: Window,
    pub metric: Metric,
    pub policy: EditionPolicy,
}

/// Publications per quartile; `unranked` holds venues missing from the
/// metrics table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QuartileDistribution {
    pub q1: usize,
    pub q2: usize,
    pub q3: usize,
    pub q4: usize,
    pub unranked: usize,
}

impl QuartileDistribution {
    pub fn add(&mut self, q: Option<Quartile>) {
        match q {
            Some(Quartile::Q1) => self.q1 += 1,
            Some(Quartile::Q2) => self.q2 += 1,
            Some(Quartile::Q3) => self.q3 += 1,
            Some(Quartile::Q4) => self.q4 += 1,
            None => self.unranked += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.q1 + self.q2 + self.q3 + self.q4 + self.unranked
    }

    pub fn q1_share<S: Scalar>(&self) -> S {
        ratio(self.q1, self.total())
    }

    pub fn merged(&self, other: &Self) -> Self {
        QuartileDistribution {
            q1: self.q1 + other.q1,
            q2: self.q2 + other.q2,
            q3: self.q3 + other.q3,
            q4: self.q4 + other.q4,
            unranked: self.unranked + other.unranked,
        }
    }

    /// Best quartile of each publication's venue; publications without a
    /// venue count as unranked.
    pub fn of<'p, S: Scalar>(
        pubs: impl IntoIterator<Item = &'p PublicationRecord>,
        lookup: &QuartileLookup<S>,
    ) -> Self {
        let mut d = QuartileDistribution::default();
        for p in pubs {
            d.add(
                p.venue_id
                    .as_deref()
                    .and_then(|v| lookup.standing(v, p.year))
                    .map(|s| s.assignment.quartile),
            );
        }
        d
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct JournalRow<S: Scalar> {
    pub journal_id: String,
    pub venue_name: String,
    pub items: usize,
    pub citations: u64,
    pub metric_value: Option<S>,
    pub quartile: Option<Quartile>,
    /// Category behind the best quartile.
    pub category: Option<String>,
    pub category_median: Option<S>,
    pub above_category_median: Option<bool>,
    pub top_lists: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct VisibilityProfile<S: Scalar> {
    pub window: Window,
    pub metric: Metric,
    pub edition_policy: EditionPolicy,
    pub coverage: Vec<CoverageResult<S>>,
    pub publications: usize,
    pub english: CountShare<S>,
    pub open_access: CountShare<S>,
    /// Window publications without a venue identifier (not in the
    /// distributions).
    pub without_venue: usize,
    pub quartile_distribution: QuartileDistribution,
    pub first_half: Option<(Window, QuartileDistribution)>,
    pub second_half: (Window, QuartileDistribution),
    pub q1_share: S,
    pub journal_table: Vec<JournalRow<S>>,
    pub top_list_counts: BTreeMap<String, usize>,
}

pub fn visibility_profile<S: Scalar>(
    corpus: &Corpus,
    metrics: &JournalMetricsTable<S>,
    settings: &VisibilitySettings,
    top_lists: &[TopJournalList],
    citations: &Citations,
) -> VisibilityProfile<S> {
    let window = settings.window;
    let lookup = QuartileLookup::new(metrics, settings.metric, settings.policy);
    let in_window: Vec<&PublicationRecord> =
        corpus.focal_pubs.iter().filter(|p| window.contains(p.year)).collect();
    let with_venue: Vec<&PublicationRecord> =
        in_window.iter().copied().filter(|p| p.venue_id.is_some()).collect();
    let n = in_window.len();

    let distribution = QuartileDistribution::of(with_venue.iter().copied(), &lookup);
    let (first, second) = window.halves();
    let half = |w: Window| {
        (
            w,
            QuartileDistribution::of(with_venue.iter().copied().filter(|p| w.contains(p.year)), &lookup),
        )
    };

    let mut journals: BTreeMap<&str, (usize, u64, &str)> = BTreeMap::new();
    for p in &with_venue {
        let e = journals
            .entry(p.venue_id.as_deref().unwrap_or_default())
            .or_insert((0, 0, p.venue_name.as_str()));
        e.0 += 1;
        e.1 += citations.count(p);
    }
    let mut journal_table: Vec<JournalRow<S>> = journals
        .into_iter()
        .map(|(id, (items, cites, name))| {
            let standing = lookup.standing(id, window.end);
            JournalRow {
                journal_id: id.to_string(),
                venue_name: name.to_string(),
                items,
                citations: cites,
                metric_value: standing.as_ref().map(|s| s.value),
                quartile: standing.as_ref().map(|s| s.assignment.quartile),
                category: standing.as_ref().map(|s| s.assignment.category.clone()),
                category_median: standing.as_ref().and_then(|s| s.category_median),
                above_category_median: standing
                    .as_ref()
                    .and_then(|s| s.category_median.map(|m| s.value > m)),
                top_lists: top_lists
                    .iter()
                    .filter(|l| l.contains(id))
                    .map(|l| l.name.clone())
                    .collect(),
            }
        })
        .collect();
    journal_table.sort_by(|a, b| {
        b.items
            .cmp(&a.items)
            .then(b.citations.cmp(&a.citations))
            .then_with(|| a.journal_id.cmp(&b.journal_id))
    });

    let top_list_counts = top_lists
        .iter()
        .map(|l| {
            let count = with_venue
                .iter()
                .filter(|p| p.venue_id.as_deref().is_some_and(|v| l.contains(v)))
                .count();
            (l.name.clone(), count)
        })
        .collect();

    VisibilityProfile {
        window,
        metric: settings.metric,
        edition_policy: settings.policy,
        coverage: source_coverage(&corpus.focal_pubs),
        publications: n,
        english: CountShare::of(in_window.iter().filter(|p| p.is_english()).count(), n),
        open_access: CountShare::of(in_window.iter().filter(|p| p.open_access).count(), n),
        without_venue: n - with_venue.len(),
        q1_share: distribution.q1_share(),
        quartile_distribution: distribution,
        first_half: first.map(half),
        second_half: half(second),
        journal_table,
        top_list_counts,
    }
}
