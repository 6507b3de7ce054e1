mod common;

use bibprofile::reporting::{self, build_report, BuildOptions};
use bibprofile::Config;
use common::fixture;

#[test]
fn f32_report_agrees_with_f64() {
    let config = Config::from_path(&fixture("golden/config.toml")).unwrap();
    let corpus = bibprofile::corpus::load_corpus(&fixture("golden/corpus.json")).unwrap();
    let options = BuildOptions {
        current_year: 2024,
        generated_at: String::new(),
        prior_warnings: vec![],
    };
    let t32: reporting::Tables<f32> = reporting::Tables::load(&config).unwrap();
    let t64: reporting::Tables<f64> = reporting::Tables::load(&config).unwrap();
    let r32 = build_report(&corpus, &t32, &config, &options).unwrap().document;
    let r64 = build_report(&corpus, &t64, &config, &options).unwrap().document;
    let (s32, s64) = (r32.summary.get().unwrap(), r64.summary.get().unwrap());
    assert_eq!(s32.h_index, s64.h_index);
    assert_eq!(s32.top10, s64.top10);
    let (c32, c64) = (s32.cnci_mean.unwrap() as f64, s64.cnci_mean.unwrap());
    assert!((c32 - c64).abs() < 1e-5 * c64, "{c32} vs {c64}");
    assert!((s32.q1_share.unwrap() as f64 - s64.q1_share.unwrap()).abs() < 1e-6);
}
