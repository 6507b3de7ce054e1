use serde::{Deserialize, Serialize};

use super::validate::{Issue, IssueKind};
use super::PublicationRecord;
use crate::scalar::{ratio, Scalar};
use crate::text::normalize_title;

/// Share of a master publication list found in one database export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CoverageResult<S: Scalar> {
    pub source_name: String,
    pub total_master: usize,
    pub matched: usize,
    pub percent: S,
    pub unmatched_ids: Vec<String>,
    /// `(master id, export id)` pairs in master order.
    pub pairs: Vec<(String, String)>,
    pub warnings: Vec<Issue>,
}

struct Candidate<'a> {
    record: &'a PublicationRecord,
    doi: Option<String>,
    title: String,
}

impl<'a> Candidate<'a> {
    fn new(record: &'a PublicationRecord) -> Self {
        Candidate {
            record,
            doi: record.doi(),
            title: normalize_title(&record.title),
        }
    }
}

/// Matches the researcher's list against an export.
///
/// Two passes: equal DOI first, then equal normalized title with a year
/// difference of at most one (only when the two records do not carry
/// different DOIs). Matching is one-to-one; among several candidates the
/// smallest export id wins and the ambiguity is reported.
pub fn match_publication_list<S: Scalar>(
    master: &[PublicationRecord],
    export: &[PublicationRecord],
    source_name: &str,
) -> CoverageResult<S> {
    let masters: Vec<Candidate> = master.iter().map(Candidate::new).collect();
    let exports: Vec<Candidate> = export.iter().map(Candidate::new).collect();
    let mut master_match: Vec<Option<usize>> = vec![None; masters.len()];
    let mut export_used = vec![false; exports.len()];
    let mut warnings = Vec::new();

    let by_doi = |m: &Candidate, e: &Candidate| m.doi.is_some() && m.doi == e.doi;
    let by_title = |m: &Candidate, e: &Candidate| {
        let conflicting_doi = matches!((&m.doi, &e.doi), (Some(a), Some(b)) if a != b);
        !conflicting_doi
            && !m.title.is_empty()
            && m.title == e.title
            && (m.record.year - e.record.year).abs() <= 1
    };
    let passes: [&dyn Fn(&Candidate, &Candidate) -> bool; 2] = [&by_doi, &by_title];

    for rule in passes {
        for (mi, m) in masters.iter().enumerate() {
            if master_match[mi].is_some() {
                continue;
            }
            let mut candidates: Vec<usize> = exports
                .iter()
                .enumerate()
                .filter(|(ei, e)| !export_used[*ei] && rule(m, e))
                .map(|(ei, _)| ei)
                .collect();
            if candidates.is_empty() {
                continue;
            }
            candidates.sort_by(|&a, &b| exports[a].record.id.cmp(&exports[b].record.id).then(a.cmp(&b)));
            if candidates.len() > 1 {
                let ids: Vec<&str> = candidates.iter().map(|&c| exports[c].record.id.as_str()).collect();
                warnings.push(Issue::new(
                    IssueKind::AmbiguousMatch,
                    Some(&m.record.id),
                    format!(
                        "ambiguous match id={} in {source_name}: {}",
                        m.record.id,
                        ids.join(", ")
                    ),
                ));
            }
            let chosen = candidates[0];
            export_used[chosen] = true;
            master_match[mi] = Some(chosen);
        }
    }

    let matched = master_match.iter().filter(|m| m.is_some()).count();
    CoverageResult {
        source_name: source_name.to_string(),
        total_master: master.len(),
        matched,
        percent: ratio(matched, master.len()),
        unmatched_ids: masters
            .iter()
            .zip(&master_match)
            .filter(|(_, m)| m.is_none())
            .map(|(c, _)| c.record.id.clone())
            .collect(),
        pairs: masters
            .iter()
            .zip(&master_match)
            .filter_map(|(c, m)| m.map(|e| (c.record.id.clone(), exports[e].record.id.clone())))
            .collect(),
        warnings,
    }
}

/// Per-source coverage of the focal publications, judged by the presence of
/// a native identifier for that source (`doi` is not a source).
pub fn source_coverage<S: Scalar>(pubs: &[PublicationRecord]) -> Vec<CoverageResult<S>> {
    let mut sources: Vec<&str> = pubs
        .iter()
        .flat_map(|p| p.source_ids.keys().map(String::as_str))
        .filter(|s| *s != "doi")
        .collect();
    sources.sort_unstable();
    sources.dedup();
    sources
        .into_iter()
        .map(|source| {
            let unmatched_ids: Vec<String> = pubs
                .iter()
                .filter(|p| !p.source_ids.contains_key(source))
                .map(|p| p.id.clone())
                .collect();
            let matched = pubs.len() - unmatched_ids.len();
            CoverageResult {
                source_name: source.to_string(),
                total_master: pubs.len(),
                matched,
                percent: ratio(matched, pubs.len()),
                unmatched_ids,
                pairs: Vec::new(),
                warnings: Vec::new(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tests_support::record;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn with_doi(id: &str, doi: &str, title: &str, year: i32) -> PublicationRecord {
        let mut r = record(id, year);
        r.title = title.to_string();
        r.source_ids.insert("doi".into(), doi.into());
        r
    }

    #[test]
    fn identical_lists_fully_covered() {
        let list: Vec<_> = (0..10)
            .map(|i| with_doi(&format!("m{i}"), &format!("10.1/{i}"), &format!("T {i}"), 2010))
            .collect();
        let c = match_publication_list::<f64>(&list, &list, "wos");
        assert_eq!(c.matched, 10);
        assert_eq!(c.percent, 1.0);
        assert!(c.unmatched_ids.is_empty());
    }

    #[test]
    fn doi_overlap_matches_set_intersection() {
        let master: Vec<_> = (0..10)
            .map(|i| with_doi(&format!("m{i}"), &format!("10.1/{i}"), &format!("master {i}"), 2010))
            .collect();
        let export: Vec<_> = (3..13)
            .map(|i| with_doi(&format!("e{i}"), &format!("https://doi.org/10.1/{i}"), &format!("export {i}"), 2010))
            .collect();
        let a: HashSet<String> = master.iter().filter_map(|r| r.doi()).collect();
        let b: HashSet<String> = export.iter().filter_map(|r| r.doi()).collect();
        let oracle = a.intersection(&b).count();
        assert_eq!(oracle, 7);
        let c = match_publication_list::<f64>(&master, &export, "scopus");
        assert_eq!(c.matched, oracle);
        assert!((c.percent - 0.7).abs() < 1e-12);
        assert_eq!(c.unmatched_ids, vec!["m0", "m1", "m2"]);
    }

    #[test]
    fn empty_master() {
        let c = match_publication_list::<f64>(&[], &[record("e", 2000)], "wos");
        assert_eq!((c.matched, c.total_master, c.percent), (0, 0, 0.0));
    }

    #[test]
    fn title_fallback_with_year_tolerance() {
        let mut m = record("m", 2010);
        m.title = "Über Graphs: A Study".into();
        let mut near = record("e1", 2011);
        near.title = "uber graphs a study".into();
        let mut far = record("e0", 2013);
        far.title = "Uber graphs, a study".into();
        let c = match_publication_list::<f64>(&[m.clone()], &[far.clone()], "gs");
        assert_eq!(c.matched, 0);
        let c = match_publication_list::<f64>(&[m], &[far, near], "gs");
        assert_eq!(c.pairs, vec![("m".to_string(), "e1".to_string())]);
    }

    #[test]
    fn ambiguity_takes_smallest_export_id() {
        let mut m = record("m", 2010);
        m.title = "Same".into();
        let mut e2 = record("e2", 2010);
        e2.title = "Same".into();
        let mut e1 = record("e1", 2010);
        e1.title = "same".into();
        let c = match_publication_list::<f64>(&[m], &[e2, e1], "wos");
        assert_eq!(c.pairs[0].1, "e1");
        assert_eq!(c.warnings.len(), 1);
    }

    #[test]
    fn different_dois_block_title_match() {
        let m = with_doi("m", "10.1/a", "Same", 2010);
        let e = with_doi("e", "10.1/b", "Same", 2010);
        assert_eq!(match_publication_list::<f64>(&[m], &[e], "wos").matched, 0);
    }

    #[test]
    fn source_coverage_counts_native_ids() {
        let mut a = record("a", 2010);
        a.source_ids.insert("wos".into(), "WOS:1".into());
        a.source_ids.insert("doi".into(), "10.1/a".into());
        let b = record("b", 2011);
        let cov = source_coverage::<f64>(&[a, b]);
        assert_eq!(cov.len(), 1);
        assert_eq!(cov[0].source_name, "wos");
        assert_eq!(cov[0].percent, 0.5);
        assert_eq!(cov[0].unmatched_ids, vec!["b"]);
    }

    fn doi_lists() -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
        (
            proptest::collection::btree_set(0u8..40, 0..15),
            proptest::collection::btree_set(0u8..40, 0..15),
        )
            .prop_map(|(a, b)| (a.into_iter().collect(), b.into_iter().collect()))
    }

    fn build(prefix: &str, dois: &[u8]) -> Vec<PublicationRecord> {
        dois.iter()
            .map(|d| with_doi(&format!("{prefix}{d}"), &format!("10.9/{d}"), &format!("{prefix} t{d}"), 2000))
            .collect()
    }

    proptest! {
        #[test]
        fn matching_count_symmetric((a, b) in doi_lists()) {
            let (ra, rb) = (build("a", &a), build("b", &b));
            let ab = match_publication_list::<f64>(&ra, &rb, "x").matched;
            let ba = match_publication_list::<f64>(&rb, &ra, "x").matched;
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn adding_export_never_decreases((a, b) in doi_lists(), extra in 0u8..40) {
            let (ra, mut rb) = (build("a", &a), build("b", &b));
            let before = match_publication_list::<f64>(&ra, &rb, "x").matched;
            rb.extend(build("z", &[extra]));
            let after = match_publication_list::<f64>(&ra, &rb, "x").matched;
            prop_assert!(after >= before);
        }
    }
}
