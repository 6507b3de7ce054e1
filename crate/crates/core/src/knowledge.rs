//! Cited-reference analysis: composition, age, most cited sources and
//! overlap with the researcher's own venues and with peers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{PublicationRecord, RefType};
use crate::scalar::{median, ratio, Scalar};
use crate::text;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedName {
    pub name: String,
    pub count: usize,
}

fn ranked(counts: BTreeMap<String, (String, usize)>) -> Vec<RankedName> {
    let mut out: Vec<RankedName> = counts
        .into_values()
        .map(|(name, count)| RankedName { name, count })
        .collect();
    out.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.name.cmp(&b.name)));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ReferenceStats<S: Scalar> {
    pub total_refs: usize,
    pub type_shares: BTreeMap<RefType, S>,
    /// References per publication year of the reference.
    pub year_histogram: BTreeMap<i32, usize>,
    /// References without a year (kept in the total only).
    pub undated: usize,
    /// Median of citing year minus reference year; absent without dated
    /// references.
    pub median_age: Option<S>,
    pub field_half_life: Option<S>,
    pub older_than_field: Option<bool>,
    pub source_ranking: Vec<RankedName>,
}

pub fn reference_stats<S: Scalar>(pubs: &[&PublicationRecord], field_half_life: Option<f64>) -> ReferenceStats<S> {
    let mut total = 0;
    let mut by_type: BTreeMap<RefType, usize> = BTreeMap::new();
    let mut hist = BTreeMap::new();
    let mut ages = Vec::new();
    let mut undated = 0;
    let mut sources = BTreeMap::new();
    for p in pubs {
        for r in &p.references {
            total += 1;
            *by_type.entry(r.ref_type).or_default() += 1;
            match r.year {
                Some(y) => {
                    *hist.entry(y).or_default() += 1;
                    // Preprints of the following year would give negative ages.
                    ages.push(S::of_count((p.year - y).max(0) as usize));
                }
                None => undated += 1,
            }
            if let Some(s) = r.source_name.as_deref() {
                let key = text::normalize_title(s);
                if !key.is_empty() {
                    sources
                        .entry(key)
                        .or_insert_with(|| (text::collapse_whitespace(s), 0))
                        .1 += 1;
                }
            }
        }
    }
    let median_age = median(&ages);
    let half_life = field_half_life.map(S::of_f64);
    ReferenceStats {
        total_refs: total,
        type_shares: by_type.into_iter().map(|(t, n)| (t, ratio(n, total))).collect(),
        year_histogram: hist,
        undated,
        median_age,
        field_half_life: half_life,
        older_than_field: median_age.zip(half_life).map(|(m, h)| m > h),
        source_ranking: ranked(sources),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct VenueOverlap<S: Scalar> {
    /// Normalized names of the venues the publications appeared in.
    pub publishing_venues: BTreeSet<String>,
    /// The most frequently cited sources, most cited first.
    pub top_cited_venues: Vec<RankedName>,
    pub overlap: BTreeSet<String>,
    /// Overlap size over the number of top cited venues.
    pub overlap_ratio: S,
}

pub fn venue_overlap<S: Scalar>(pubs: &[&PublicationRecord], top_n: usize) -> VenueOverlap<S> {
    let publishing: BTreeSet<String> = pubs
        .iter()
        .map(|p| text::normalize_title(&p.venue_name))
        .filter(|v| !v.is_empty())
        .collect();
    let mut sources = BTreeMap::new();
    for r in pubs.iter().flat_map(|p| &p.references) {
        if let Some(s) = r.source_name.as_deref() {
            let key = text::normalize_title(s);
            if !key.is_empty() {
                sources.entry(key.clone()).or_insert_with(|| (key, 0)).1 += 1;
            }
        }
    }
    let mut top = ranked(sources);
    top.truncate(top_n.max(1));
    let overlap: BTreeSet<String> = top
        .iter()
        .filter(|v| publishing.contains(&v.name))
        .map(|v| v.name.clone())
        .collect();
    VenueOverlap {
        overlap_ratio: ratio(overlap.len(), top.len()),
        publishing_venues: publishing,
        top_cited_venues: top,
        overlap,
    }
}

/// The `top_n` references cited by most publications (ties by identity).
pub fn most_cited_references(pubs: &[&PublicationRecord], top_n: usize) -> Vec<RankedName> {
    let mut counts: BTreeMap<String, (String, usize)> = BTreeMap::new();
    for p in pubs {
        let distinct: BTreeSet<String> = p.references.iter().map(|r| r.identity()).collect();
        for id in distinct.into_iter().filter(|i| !i.is_empty()) {
            counts.entry(id.clone()).or_insert_with(|| (id, 0)).1 += 1;
        }
    }
    let mut out = ranked(counts);
    out.truncate(top_n);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeerReferenceComparison {
    pub peer: String,
    pub focal_top: Vec<RankedName>,
    pub peer_top: Vec<RankedName>,
    pub intersection: Vec<String>,
    pub focal_only: Vec<String>,
    pub peer_only: Vec<String>,
}

/// Compares the most cited references of the focal set with those of each
/// peer, in peer order.
pub fn peer_reference_comparison(
    focal: &[&PublicationRecord],
    peers: &[(String, Vec<&PublicationRecord>)],
    top_n: usize,
) -> Vec<PeerReferenceComparison> {
    let focal_top = most_cited_references(focal, top_n);
    let focal_set: BTreeSet<String> = focal_top.iter().map(|r| r.name.clone()).collect();
    peers
        .iter()
        .map(|(name, pubs)| {
            let peer_top = most_cited_references(pubs, top_n);
            let peer_set: BTreeSet<String> = peer_top.iter().map(|r| r.name.clone()).collect();
            PeerReferenceComparison {
                peer: name.clone(),
                intersection: focal_set.intersection(&peer_set).cloned().collect(),
                focal_only: focal_set.difference(&peer_set).cloned().collect(),
                peer_only: peer_set.difference(&focal_set).cloned().collect(),
                focal_top: focal_top.clone(),
                peer_top,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tests_support::record;
    use crate::corpus::CitedReference;

    fn cited(raw: &str, year: Option<i32>, source: Option<&str>, t: RefType) -> CitedReference {
        CitedReference {
            year,
            source_name: source.map(String::from),
            ref_type: t,
            ..CitedReference::new(raw)
        }
    }

    #[test]
    fn empty_references() {
        let p = record("a", 2020);
        let s = reference_stats::<f64>(&[&p], Some(8.0));
        assert_eq!(s.total_refs, 0);
        assert!(s.year_histogram.is_empty());
        assert!(s.median_age.is_none());
        assert!(s.older_than_field.is_none());
        let v = venue_overlap::<f64>(&[&p], 10);
        assert_eq!(v.overlap_ratio, 0.0);
    }

    #[test]
    fn median_age_and_undated() {
        let mut p = record("a", 2020);
        p.references = [2019, 2018, 2017, 2016, 1920]
            .iter()
            .map(|&y| cited(&format!("r{y}"), Some(y), None, RefType::Journal))
            .collect();
        p.references.push(cited("no year", None, None, RefType::Journal));
        let s = reference_stats::<f64>(&[&p], Some(2.5));
        assert_eq!(s.median_age, Some(3.0));
        assert_eq!((s.total_refs, s.undated), (6, 1));
        assert_eq!(s.type_shares, BTreeMap::from([(RefType::Journal, 1.0)]));
        assert_eq!(s.older_than_field, Some(true));
        assert_eq!(s.year_histogram.values().sum::<usize>(), 5);
    }

    #[test]
    fn source_ranking_and_overlap() {
        let mut p = record("a", 2020);
        p.venue_name = "Scientometrics".into();
        let mut q = record("b", 2020);
        q.venue_name = "Research Policy".into();
        let names = ["Scientometrics", "Scientometrics", "Nature", "Nature", "Research Policy", "Cell"];
        p.references = names
            .iter()
            .enumerate()
            .map(|(i, n)| cited(&format!("r{i}"), None, Some(n), RefType::Journal))
            .collect();
        let s = reference_stats::<f64>(&[&p, &q], None);
        assert_eq!(s.source_ranking[0], RankedName { name: "Nature".into(), count: 2 });
        assert_eq!(s.source_ranking[1].name, "Scientometrics");

        let v = venue_overlap::<f64>(&[&p, &q], 2);
        assert_eq!(v.overlap, BTreeSet::from(["scientometrics".to_string()]));
        assert_eq!(v.overlap_ratio, 0.5);
        let v = venue_overlap::<f64>(&[&p, &q], 10);
        assert_eq!(v.overlap.len(), 2);
        assert_eq!(v.overlap_ratio, 0.5);
    }

    #[test]
    fn peer_identity_and_disjoint() {
        let mut f = record("f", 2020);
        f.references = (0..5).map(|i| CitedReference::new(&format!("Ref {i}"))).collect();
        let same = f.clone();
        let mut other = record("o", 2020);
        other.references = (0..5).map(|i| CitedReference::new(&format!("Other {i}"))).collect();
        let cmp = peer_reference_comparison(
            &[&f],
            &[("same".into(), vec![&same]), ("other".into(), vec![&other])],
            5,
        );
        assert_eq!(cmp[0].intersection.len(), 5);
        assert!(cmp[0].focal_only.is_empty() && cmp[0].peer_only.is_empty());
        assert!(cmp[1].intersection.is_empty());
        assert_eq!(cmp[1].focal_only.len(), 5);
    }
}
