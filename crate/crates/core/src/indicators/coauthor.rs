use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CountShare;
use crate::corpus::{Corpus, PublicationRecord};
use crate::scalar::{mean, median, ratio, Scalar};
use crate::window::Window;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoauthorSettings {
    pub dependence_flag_min: f64,
    pub alphabetical_suppress_min: f64,
}

impl Default for CoauthorSettings {
    fn default() -> Self {
        CoauthorSettings {
            dependence_flag_min: 0.75,
            alphabetical_suppress_min: 0.80,
        }
    }
}

/// Co-author statistics over one period (`window` is `None` for the whole
/// corpus).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CoauthorWindowStats<S: Scalar> {
    pub window: Option<Window>,
    pub publications: usize,
    pub mean_coauthors: S,
    pub median_coauthors: S,
    pub max_coauthors: usize,
    pub distinct_coauthors: usize,
    pub single_authored: CountShare<S>,
    pub first: CountShare<S>,
    pub last: CountShare<S>,
    pub corresponding: CountShare<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Dependence<S: Scalar> {
    /// Normalized key of the most frequent co-author.
    pub coauthor_key: Option<String>,
    pub coauthor_name: Option<String>,
    pub shared: usize,
    pub shared_percent: S,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CoauthorProfile<S: Scalar> {
    pub overall: CoauthorWindowStats<S>,
    pub windows: Vec<CoauthorWindowStats<S>>,
    pub dependence: Dependence<S>,
    /// Share of multi-author publications whose author list is in
    /// alphabetical order.
    pub alphabetical_share: S,
    pub multi_author_publications: usize,
    /// Author order looks alphabetical; first/last roles carry no meaning.
    pub suppress_role_interpretation: bool,
}

/// Roles of the focal author on one publication.
fn roles(p: &PublicationRecord, corpus: &Corpus) -> (bool, bool, bool) {
    let Some(i) = p.focal_index(&corpus.focal_author) else {
        return (false, false, false);
    };
    let n = p.authors.len();
    let first = i == 0;
    let last = i == n - 1;
    let corresponding = match p.corresponding_author_index {
        Some(c) => c == i,
        None => n == 1,
    };
    (first, last, corresponding)
}

fn is_focal_author(corpus: &Corpus, a: &crate::corpus::AuthorRef) -> bool {
    a.is_focal || a.same_person(&corpus.focal_author)
}

fn window_stats<S: Scalar>(corpus: &Corpus, window: Option<Window>) -> CoauthorWindowStats<S> {
    let pubs: Vec<&PublicationRecord> = corpus
        .focal_pubs
        .iter()
        .filter(|p| window.is_none_or(|w| w.contains(p.year)))
        .collect();
    let n = pubs.len();
    let counts: Vec<S> = pubs
        .iter()
        .map(|p| S::of_count(p.authors.len().saturating_sub(1)))
        .collect();
    let mut coauthors: Vec<&str> = pubs
        .iter()
        .flat_map(|p| p.authors.iter())
        .filter(|a| !is_focal_author(corpus, a))
        .map(|a| a.normalized_key.as_str())
        .collect();
    coauthors.sort_unstable();
    coauthors.dedup();
    let (mut first, mut last, mut corr) = (0, 0, 0);
    for p in &pubs {
        let (f, l, c) = roles(p, corpus);
        first += usize::from(f);
        last += usize::from(l);
        corr += usize::from(c);
    }
    CoauthorWindowStats {
        window,
        publications: n,
        mean_coauthors: mean(&counts).unwrap_or_else(S::zero),
        median_coauthors: median(&counts).unwrap_or_else(S::zero),
        max_coauthors: pubs
            .iter()
            .map(|p| p.authors.len().saturating_sub(1))
            .max()
            .unwrap_or(0),
        distinct_coauthors: coauthors.len(),
        single_authored: CountShare::of(pubs.iter().filter(|p| p.authors.len() == 1).count(), n),
        first: CountShare::of(first, n),
        last: CountShare::of(last, n),
        corresponding: CountShare::of(corr, n),
    }
}

pub fn coauthor_profile<S: Scalar>(
    corpus: &Corpus,
    windows: &[Window],
    settings: &CoauthorSettings,
) -> CoauthorProfile<S> {
    let total = corpus.focal_pubs.len();

    let mut shared: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for p in &corpus.focal_pubs {
        let mut keys: Vec<(&str, &str)> = p
            .authors
            .iter()
            .filter(|a| !is_focal_author(corpus, a))
            .map(|a| (a.normalized_key.as_str(), a.display_name.as_str()))
            .collect();
        keys.sort_unstable();
        keys.dedup_by_key(|k| k.0);
        for (key, name) in keys {
            shared.entry(key).or_insert((0, name)).0 += 1;
        }
    }
    // BTreeMap iteration is alphabetical, so the first maximum wins ties.
    let top = shared
        .iter()
        .fold(None::<(&str, usize, &str)>, |best, (&k, &(n, name))| match best {
            Some((_, bn, _)) if bn >= n => best,
            _ => Some((k, n, name)),
        });
    let dependence = match top {
        Some((key, n, name)) => {
            let share: S = ratio(n, total);
            Dependence {
                coauthor_key: Some(key.to_string()),
                coauthor_name: Some(name.to_string()),
                shared: n,
                shared_percent: share,
                flagged: share > S::of_f64(settings.dependence_flag_min),
            }
        }
        None => Dependence {
            coauthor_key: None,
            coauthor_name: None,
            shared: 0,
            shared_percent: S::zero(),
            flagged: false,
        },
    };

    let multi: Vec<&PublicationRecord> =
        corpus.focal_pubs.iter().filter(|p| p.authors.len() > 1).collect();
    let alphabetical = multi
        .iter()
        .filter(|p| p.authors.windows(2).all(|w| w[0].normalized_key <= w[1].normalized_key))
        .count();
    let alphabetical_share: S = ratio(alphabetical, multi.len());

    CoauthorProfile {
        overall: window_stats(corpus, None),
        windows: windows.iter().map(|w| window_stats(corpus, Some(*w))).collect(),
        dependence,
        alphabetical_share,
        multi_author_publications: multi.len(),
        suppress_role_interpretation: !multi.is_empty()
            && alphabetical_share >= S::of_f64(settings.alphabetical_suppress_min),
    }
}
