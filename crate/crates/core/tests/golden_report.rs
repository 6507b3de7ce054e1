use std::path::{Path, PathBuf};

use bibprofile::corpus::load_corpus_with;
use bibprofile::indicators::SelfCitationFlag;
use bibprofile::reporting::{build_report, parse_structured, render, BuildOptions, ReportFormat};
use bibprofile::{Config, Tables};
use serde_json::Value;

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden")
}

fn options() -> BuildOptions {
    BuildOptions {
        current_year: 2024,
        generated_at: "2024-01-01T00:00:00Z".into(),
        prior_warnings: vec![],
    }
}

fn build() -> bibprofile::Report {
    let config = Config::from_path(&dir().join("config.toml")).unwrap();
    let tables = Tables::load(&config).unwrap();
    let corpus = load_corpus_with(&dir().join("corpus.json"), &tables.aliases).unwrap().corpus;
    build_report(&corpus, &tables, &config, &options()).unwrap()
}

fn expected() -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir().join("expected_summary.json")).unwrap()).unwrap()
}

#[test]
fn summary_matches_hand_computed_values() {
    let r = build();
    let s = r.document.summary.get().unwrap();
    let e = expected();
    let n = |k: &str| e[k].as_u64().unwrap() as usize;
    assert_eq!(s.publications, Some(n("publications")));
    assert_eq!(s.citable_publications, Some(n("citable_publications")));
    assert_eq!(s.total_citations, Some(n("total_citations") as u64));
    assert_eq!(s.h_index, Some(n("h_index")));
    assert_eq!(s.g_index, Some(n("g_index")));
    let cnci = e["cnci_sum"].as_f64().unwrap() / n("cnci_covered") as f64;
    assert!((s.cnci_mean.unwrap() - cnci).abs() < 1e-12);
    assert_eq!(s.top10, Some(n("top10")));
    assert_eq!(s.top1, Some(n("top1")));
    assert!((s.q1_share.unwrap() - n("q1") as f64 / n("ranked_or_unranked_with_venue") as f64).abs() < 1e-12);
    let c = s.collaboration.as_ref().unwrap();
    assert_eq!(c.classified, n("classified"));
    assert_eq!(
        (c.international.count, c.national.count, c.domestic.count),
        (n("international"), n("national"), n("domestic"))
    );
    assert!((s.self_citation_rate.unwrap() - n("self_edges") as f64 / n("edges") as f64).abs() < 1e-12);
    assert_eq!(s.self_citation_flag, Some(SelfCitationFlag::Usual));
}

#[test]
fn summary_equals_section_fields() {
    let d = build().document;
    let s = d.summary.get().unwrap();
    let impact = d.impact.get().unwrap();
    assert_eq!(s.h_index, Some(impact.all_items.h_index));
    assert_eq!(s.cnci_mean, impact.citable_items.normalized.as_ref().map(|n| n.cnci_mean));
    assert_eq!(s.q1_share, Some(d.visibility.get().unwrap().q1_share));
    assert_eq!(s.publications, Some(d.activity.get().unwrap().window_totals.total));
}

#[test]
fn structured_output_round_trips() {
    let d = build().document;
    let bytes = render(&d, ReportFormat::Structured);
    let back = parse_structured::<f64>(&bytes).unwrap();
    assert_eq!(back, d);
    assert_eq!(render(&back, ReportFormat::Structured), bytes);
}

#[test]
fn markdown_matches_golden_file() {
    let mut d = build().document;
    d.mask_timestamp();
    let md = String::from_utf8(render(&d, ReportFormat::Markdown)).unwrap();
    let path = dir().join("report.md");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &md).unwrap();
    }
    assert_eq!(md, std::fs::read_to_string(path).unwrap());
}
