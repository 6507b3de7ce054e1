//! Acceptance criteria. Runs without the libtest harness so the PASS/FAIL
//! line of every criterion is always printed; exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use bibprofile::baselines::{
    best_quartile, quartile_of, BaselineRow, BaselineTable, JournalMetricRow, JournalMetricsTable, Metric, Quartile,
};
use bibprofile::corpus::{load_corpus_with, Affiliation, AuthorRef, CitationEdge, CitedReference, DocType};
use bibprofile::focus::{extract_terms, select_terms, term_cooccurrence_map, Stoplist, TermSource};
use bibprofile::indicators::{
    g_index, h_index, i_index, normalized_impact, self_citation_rate, Citations, Scope, SelfCitationFlag,
};
use bibprofile::networks::{
    bibliographic_coupling, citing_country_network, collaboration_shares, country_copub_network, export_graph,
    reference_set, GraphFormat,
};
use bibprofile::reporting::{build_report, parse_structured, render, BuildOptions, ReportFormat};
use bibprofile::{Config, PublicationRecord, Tables, Window};
use common::{corpus, fixture, record};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    check(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn brute_h(c: &[u64]) -> usize {
    (0..=c.len())
        .filter(|&h| c.iter().filter(|&&x| x >= h as u64).count() >= h)
        .max()
        .unwrap()
}

fn brute_g(c: &[u64]) -> usize {
    let mut sorted = c.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    (0..=c.len())
        .filter(|&g| sorted[..g].iter().sum::<u64>() >= (g * g) as u64)
        .max()
        .unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..1000 {
        let n = rng.gen_range(0..=50);
        let c: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=200)).collect();
        let (h, g) = (h_index(&c), g_index(&c));
        check(h == brute_h(&c), || format!("case {case}: h {h} vs {}", brute_h(&c)))?;
        check(g == brute_g(&c), || format!("case {case}: g {g} vs {}", brute_g(&c)))?;
        check(g >= h, || format!("case {case}: g {g} < h {h}"))?;
        for t in [1, 10, 50, 100] {
            let want = c.iter().filter(|&&x| x >= t).count();
            check(i_index(&c, t) == want, || format!("case {case}: i{t}"))?;
        }
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("1000 multisets, {t:?}"))
}

fn metric_row(j: &str, value: f64, cats: &[&str]) -> JournalMetricRow<f64> {
    JournalMetricRow {
        journal_id: j.into(),
        edition_year: 2020,
        metric: Metric::IF,
        value,
        categories: cats.iter().map(|s| s.to_string()).collect(),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for n in 1..=40usize {
        // Category "main" holds n journals with distinct values; every third
        // journal also sits in a smaller category "side".
        let rows: Vec<_> = (0..n)
            .map(|i| {
                let cats: &[&str] = if i % 3 == 0 { &["main", "side"] } else { &["main"] };
                metric_row(&format!("j{i:02}"), (n - i) as f64, cats)
            })
            .collect();
        let table = JournalMetricsTable::new(rows).map_err(|e| e.to_string())?;
        let mut band_sizes = [0usize; 4];
        for i in 0..n {
            let j = format!("j{i:02}");
            let qa = quartile_of(&j, "main", Metric::IF, 2020, &table).map_err(|e| e.to_string())?;
            let r = qa.rank;
            check(r == i + 1, || format!("N={n}: rank of {j} is {r}"))?;
            let k = qa.quartile as usize + 1;
            band_sizes[k - 1] += 1;
            let upper = (k * n).div_ceil(4);
            let lower = ((k - 1) * n).div_ceil(4);
            check(r <= upper && r > lower, || {
                format!("N={n} r={r}: {:?} outside ranks {}..={upper}", qa.quartile, lower + 1)
            })?;
            if n % 4 == 0 {
                check(k == (4 * r).div_ceil(n), || format!("N={n} r={r}: {k} vs ceil(4r/N)"))?;
            }
            let best = best_quartile(&j, Metric::IF, 2020, &table).map_err(|e| e.to_string())?;
            for cat in &table.categories_of(&j) {
                let q = quartile_of(&j, cat, Metric::IF, 2020, &table).map_err(|e| e.to_string())?;
                check(best.quartile <= q.quartile, || format!("N={n} {j}: best above {cat}"))?;
            }
        }
        for (k, size) in band_sizes.iter().enumerate() {
            let want = ((k + 1) * n).div_ceil(4) - (k * n).div_ceil(4);
            check(*size == want, || format!("N={n}: Q{} holds {size}, expected {want}", k + 1))?;
        }
        check(n != 1 || band_sizes[0] == 1, || "singleton not Q1".into())?;
        let _ = Quartile::ALL;
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("N = 1..40, bands end at ceil(kN/4), {t:?}"))
}

fn criterion_3() -> Outcome {
    let cats = ["A", "B", "C"];
    let expected = |cat: &str, year: i32, dt: DocType| -> f64 {
        let base = match cat {
            "A" => 4.0,
            "B" => 8.0,
            _ => 12.0,
        };
        base + (year - 2010) as f64 * 2.0 + if dt == DocType::Review { 10.0 } else { 0.0 }
    };
    let mut rows = Vec::new();
    for c in cats {
        for y in 2010..2020 {
            for dt in [DocType::JournalArticle, DocType::Review, DocType::ProceedingsPaper] {
                let e = expected(c, y, dt);
                rows.push(BaselineRow {
                    category: c.into(),
                    pub_year: y,
                    doc_type: dt,
                    expected_citations: e,
                    p90: e * 3.0,
                    p99: e * 10.0,
                });
            }
        }
    }
    let baselines = BaselineTable::new(rows).map_err(|e| e.to_string())?;
    let metrics = JournalMetricsTable::new(vec![
        metric_row("JA", 1.0, &["A"]),
        metric_row("JB", 2.0, &["B"]),
        metric_row("JAC", 3.0, &["A", "C"]),
    ])
    .map_err(|e| e.to_string())?;
    let mut pubs = Vec::new();
    for i in 0..60 {
        let mut r = record(&format!("p{i}"), 2010 + i % 10);
        r.doc_type = [DocType::JournalArticle, DocType::Review, DocType::ProceedingsPaper][i as usize % 3];
        let (venue, vcats): (&str, &[&str]) = match i % 3 {
            0 => ("JA", &["A"]),
            1 => ("JB", &["B"]),
            _ => ("JAC", &["A", "C"]),
        };
        r.venue_id = Some(venue.into());
        let e: f64 = vcats.iter().map(|c| expected(c, r.year, r.doc_type)).sum::<f64>() / vcats.len() as f64;
        r.times_cited.insert("wos".into(), e as u64);
        pubs.push(r);
    }
    let c = corpus(pubs);
    let refs: Vec<&PublicationRecord> = c.focal_pubs.iter().collect();
    let (n, issues) = normalized_impact(&refs, &Citations::new(&c, "wos"), &metrics, &baselines);
    check(issues.is_empty() && n.covered == 60, || format!("{} covered, {issues:?}", n.covered))?;
    check((n.cnci_mean - 1.0).abs() <= 1e-12, || format!("set CNCI {}", n.cnci_mean))?;
    for s in &n.scores {
        check(s.cnci == 1.0, || format!("{} has CNCI {}", s.id, s.cnci))?;
    }
    Ok(format!("60 publications, set CNCI {}", n.cnci_mean))
}

fn criterion_4() -> Outcome {
    let mut pubs: Vec<PublicationRecord> = (0..10).map(|i| record(&format!("f{i}"), 2018)).collect();
    for p in &mut pubs {
        p.authors = vec![AuthorRef::new("Doe, Jane").with_orcid("0000-0001-0000-0001").focal()];
    }
    let mut c = corpus(pubs);
    for i in 0..10 {
        let mut citing = record(&format!("c{i}"), 2020);
        citing.authors = if i < 3 {
            vec![AuthorRef::new("Other, Ann"), AuthorRef::new("Doe, J.").with_orcid("0000-0001-0000-0001")]
        } else {
            vec![AuthorRef::new(&format!("Stranger{i}, Bob"))]
        };
        c.citing_pubs.push(citing);
        c.edges.push(CitationEdge::new(&format!("c{i}"), &format!("f{i}")));
    }
    let with = self_citation_rate::<f64>(&c, Scope::AllItems, 0.20);
    check(with.rate == 0.30 && with.flag == SelfCitationFlag::Elevated, || format!("{with:?}"))?;
    for p in c.citing_pubs.iter_mut().take(3) {
        p.authors = vec![AuthorRef::new("Other, Ann")];
    }
    let without = self_citation_rate::<f64>(&c, Scope::AllItems, 0.20);
    check(without.rate == 0.0 && without.flag == SelfCitationFlag::Usual, || format!("{without:?}"))?;
    Ok("3/10 -> 0.30 elevated, 0/10 -> 0.00 usual".into())
}

fn golden() -> Result<(Config, Tables, bibprofile::Corpus), String> {
    let config = Config::from_path(&fixture("golden/config.toml")).map_err(|e| e.to_string())?;
    let tables = Tables::load(&config).map_err(|e| e.to_string())?;
    let corpus = load_corpus_with(&fixture("golden/corpus.json"), &tables.aliases)
        .map_err(|e| e.to_string())?
        .corpus;
    Ok((config, tables, corpus))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let countries = ["AT", "AT", "AT", "DE", "US"];
    let institutions = ["University of Innsbruck", "TU Graz", "Uni Linz"];
    let window = Window::new(2010, 2019).unwrap();
    let mut nonempty = 0;
    for case in 0..500 {
        let n = rng.gen_range(0..20);
        let pubs = (0..n)
            .map(|i| {
                let mut r = record(&format!("p{i}"), rng.gen_range(2008..2022));
                r.affiliations = (0..rng.gen_range(0..4))
                    .map(|_| {
                        let c = countries[rng.gen_range(0..countries.len())];
                        Affiliation::new(institutions[rng.gen_range(0..institutions.len())], c)
                    })
                    .collect();
                r
            })
            .collect();
        let c = corpus(pubs);
        let (first, second) = window.halves();
        let mut ws = vec![second, window];
        ws.extend(first);
        for w in collaboration_shares::<f64>(&c, &ws).windows {
            if w.classified == 0 {
                continue;
            }
            nonempty += 1;
            let sum = w.international.percent + w.national.percent + w.domestic.percent;
            check((sum - 1.0).abs() <= 1e-9, || format!("case {case} {}: sum {sum}", w.window))?;
        }
    }
    let (config, _, corpus) = golden()?;
    let w = config.window(2024).map_err(|e| e.to_string())?;
    let citing = citing_country_network::<f64>(&corpus);
    let coop = country_copub_network::<f64>(&corpus, Some(w));
    check(citing.node_count() > coop.node_count(), || {
        format!("citing {} nodes vs cooperation {}", citing.node_count(), coop.node_count())
    })?;
    Ok(format!(
        "{nonempty} classified windows sum to 1; citing graph {} nodes > cooperation graph {}",
        citing.node_count(),
        coop.node_count()
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let stop = Stoplist::parse("");
    for case in 0..200 {
        let n = rng.gen_range(0..=15);
        let pubs: Vec<PublicationRecord> = (0..n)
            .map(|i| {
                let mut r = record(&format!("p{i:02}"), 2020);
                r.references = (0..rng.gen_range(0..=30))
                    .map(|_| {
                        let mut cr = CitedReference::new(&format!("Ref {}", rng.gen_range(0..40)));
                        if rng.gen_bool(0.2) {
                            cr.matched_pub_id = Some(format!("m{}", rng.gen_range(0..10)));
                        }
                        cr
                    })
                    .collect();
                r.keywords = (0..rng.gen_range(0..=30)).map(|_| format!("kw{}", rng.gen_range(0..25))).collect();
                r
            })
            .collect();
        let refs: Vec<&PublicationRecord> = pubs.iter().collect();

        let g = bibliographic_coupling::<f64>(&refs);
        let sets: Vec<BTreeSet<String>> = pubs.iter().map(reference_set).collect();
        for a in 0..n {
            for b in a + 1..n {
                let want = sets[a].intersection(&sets[b]).count();
                let got = g.edge_weight(&pubs[a].id, &pubs[b].id).unwrap_or(0.0);
                check(got == want as f64, || format!("case {case}: coupling {a}-{b} {got} vs {want}"))?;
            }
        }

        let c = corpus(pubs.clone());
        let terms = extract_terms::<f64>(&refs, TermSource::Keywords, &stop, &Citations::new(&c, "wos"));
        let selected = select_terms(&terms, 1, 1.0);
        let map = term_cooccurrence_map(&selected);
        let kw: Vec<BTreeSet<&str>> = pubs.iter().map(|p| p.keywords.iter().map(String::as_str).collect()).collect();
        let vocab: BTreeSet<&str> = kw.iter().flatten().copied().collect();
        check(map.node_count() == vocab.len(), || format!("case {case}: {} term nodes", map.node_count()))?;
        let vocab: Vec<&str> = vocab.into_iter().collect();
        for (i, x) in vocab.iter().enumerate() {
            let occ = kw.iter().filter(|s| s.contains(x)).count();
            check(map.node(x).map(|n| n.weight) == Some(occ as f64), || format!("case {case}: weight of {x}"))?;
            for y in &vocab[i + 1..] {
                let want = kw.iter().filter(|s| s.contains(x) && s.contains(y)).count();
                let got = map.edge_weight(x, y).unwrap_or(0.0);
                check(got == want as f64, || format!("case {case}: {x}-{y} {got} vs {want}"))?;
            }
        }
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("200 corpora, {t:?}"))
}

fn run_report() -> Result<(Vec<u8>, Vec<Vec<u8>>, bibprofile::ReportDocument), String> {
    let (config, tables, corpus) = golden()?;
    let report = build_report(&corpus, &tables, &config, &BuildOptions::now()).map_err(|e| e.to_string())?;
    let mut doc = report.document;
    doc.mask_timestamp();
    let graphs = report
        .graphs
        .iter()
        .flat_map(|g| [export_graph(g, GraphFormat::Dot), export_graph(g, GraphFormat::GraphMl)])
        .collect();
    Ok((render(&doc, ReportFormat::Structured), graphs, doc))
}

fn criterion_7() -> Outcome {
    let (a, ga, doc) = run_report()?;
    let (b, gb, _) = run_report()?;
    check(a == b, || "structured output differs between runs".into())?;
    check(ga == gb, || "graph files differ between runs".into())?;
    let back = parse_structured::<f64>(&a).map_err(|e| e.to_string())?;
    check(back == doc, || "parsed report differs from the in-memory report".into())?;
    Ok(format!("{} bytes and {} graph files identical; round trip ok", a.len(), ga.len()))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let (_, _, doc) = run_report()?;
    let e: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(fixture("golden/expected_summary.json")).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let n = |k: &str| e[k].as_u64().unwrap_or(u64::MAX) as usize;
    let s = doc.summary.get().ok_or("summary missing")?;
    let mut wrong = Vec::new();
    let mut eq = |name: &str, got: Option<usize>, want: usize| {
        if got != Some(want) {
            wrong.push(format!("{name}: {got:?} vs {want}"));
        }
    };
    eq("publications", s.publications, n("publications"));
    eq("citable", s.citable_publications, n("citable_publications"));
    eq("citations", s.total_citations.map(|x| x as usize), n("total_citations"));
    eq("h", s.h_index, n("h_index"));
    eq("g", s.g_index, n("g_index"));
    eq("top10", s.top10, n("top10"));
    eq("top1", s.top1, n("top1"));
    let c = s.collaboration.as_ref();
    eq("international", c.map(|c| c.international.count), n("international"));
    eq("national", c.map(|c| c.national.count), n("national"));
    eq("domestic", c.map(|c| c.domestic.count), n("domestic"));
    let close = |got: Option<f64>, want: f64| got.is_some_and(|g| (g - want).abs() < 1e-12);
    if !close(s.cnci_mean, e["cnci_sum"].as_f64().unwrap_or(f64::NAN) / n("cnci_covered") as f64) {
        wrong.push(format!("cnci {:?}", s.cnci_mean));
    }
    if !close(s.q1_share, n("q1") as f64 / n("ranked_or_unranked_with_venue") as f64) {
        wrong.push(format!("q1 share {:?}", s.q1_share));
    }
    if !close(s.self_citation_rate, n("self_edges") as f64 / n("edges") as f64) {
        wrong.push(format!("self-citation rate {:?}", s.self_citation_rate));
    }
    if s.self_citation_flag.map(|f| format!("{f:?}")).as_deref() != e["self_citation_flag"].as_str() {
        wrong.push(format!("self-citation flag {:?}", s.self_citation_flag));
    }
    check(wrong.is_empty(), || wrong.join("; "))?;
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("every summary number matches, {t:?}"))
}

fn main() -> std::process::ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("index oracles", criterion_1),
        ("quartile partition", criterion_2),
        ("normalization identity", criterion_3),
        ("self-citation control", criterion_4),
        ("collaboration partition", criterion_5),
        ("coupling and co-occurrence oracles", criterion_6),
        ("determinism", criterion_7),
        ("golden report", criterion_8),
    ];
    let mut failed = BTreeMap::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name} ({why})", i + 1);
                failed.insert(i + 1, why);
            }
        }
    }
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
