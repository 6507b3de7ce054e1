use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::document::*;
use crate::baselines::Quartile;
use crate::error::{Error, Result};
use crate::indicators::{CountShare, ImpactProfile, QuartileDistribution};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    /// Pretty JSON with fields in declaration order.
    #[default]
    Structured,
    Markdown,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Structured => "json",
            ReportFormat::Markdown => "md",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "structured" | "json" => Ok(ReportFormat::Structured),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(Error::UnsupportedFormat(s.to_string())),
        }
    }
}

pub fn render<S: Scalar>(doc: &ReportDocument<S>, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Structured => {
            let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Markdown => markdown(doc).into_bytes(),
    }
}

pub fn parse_structured<S: Scalar>(bytes: &[u8]) -> Result<ReportDocument<S>> {
    serde_json::from_slice(bytes).map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e))
}

fn num<S: Scalar>(x: S) -> String {
    format!("{:.2}", x.as_f64())
}

fn pct<S: Scalar>(x: S) -> String {
    format!("{:.1}%", 100.0 * x.as_f64())
}

fn share<S: Scalar>(c: &CountShare<S>) -> String {
    format!("{} ({})", c.count, pct(c.percent))
}

fn opt<T, F: Fn(&T) -> String>(x: &Option<T>, f: F) -> String {
    x.as_ref().map(f).unwrap_or_else(|| "n/a".into())
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn table(out: &mut String, head: &[&str], rows: impl IntoIterator<Item = Vec<String>>) {
    let _ = writeln!(out, "| {} |", head.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(head.len()));
    for r in rows {
        let r: Vec<String> = r.iter().map(|c| cell(c)).collect();
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
    out.push('\n');
}

fn graph_line<S: Scalar>(out: &mut String, g: &GraphRef<S>) {
    let _ = writeln!(
        out,
        "Graph `{}`: {} nodes, {} edges, density {} (files `{}.dot`, `{}.graphml`).\n",
        g.name,
        g.nodes,
        g.edges,
        num(g.density),
        g.file_stem,
        g.file_stem
    );
}

fn quartile_row(label: &str, d: &QuartileDistribution) -> Vec<String> {
    vec![
        label.to_string(),
        d.q1.to_string(),
        d.q2.to_string(),
        d.q3.to_string(),
        d.q4.to_string(),
        d.unranked.to_string(),
    ]
}

fn impact_rows<S: Scalar>(label: &str, p: &ImpactProfile<S>) -> Vec<String> {
    let n = p.normalized.as_ref();
    vec![
        label.to_string(),
        p.publications.to_string(),
        p.total_citations.to_string(),
        share(&p.cited),
        num(p.citations_per_cited_doc),
        p.h_index.to_string(),
        p.g_index.to_string(),
        num(p.m_quotient),
        opt(&n.map(|n| n.cnci_mean), |v| num(*v)),
        opt(&n.map(|n| n.top10), share),
        opt(&n.map(|n| n.top1), share),
    ]
}

fn section_head<T>(out: &mut String, kind: SectionKind, s: &Section<T>) -> bool {
    let _ = writeln!(out, "## {}\n", kind.title());
    if s.payload.is_none() {
        out.push_str("_Not included in this report._\n\n");
    }
    for n in &s.notes {
        let _ = writeln!(out, "> {n}");
    }
    if !s.notes.is_empty() {
        out.push('\n');
    }
    s.payload.is_some()
}

fn quartile_name(q: &Option<Quartile>) -> String {
    opt(q, |q| format!("{q:?}"))
}

pub fn markdown<S: Scalar>(doc: &ReportDocument<S>) -> String {
    let mut o = String::new();
    let m = &doc.metadata;
    let _ = writeln!(o, "# Bibliometric report: {}\n", m.researcher);
    let _ = writeln!(o, "- Report id: `{}`", m.report_id);
    let _ = writeln!(o, "- Corpus SHA-256: `{}`", m.corpus_hash);
    let _ = writeln!(o, "- Generated: {}", m.generated_at);
    let _ = writeln!(o, "- Engine version: {}\n", m.engine_version);

    if section_head(&mut o, SectionKind::Methodology, &doc.methodology) {
        let x = doc.methodology.get().unwrap();
        let _ = writeln!(o, "- Window: {}", x.window);
        let _ = writeln!(o, "- Primary citation source: {}", x.primary_source);
        let _ = writeln!(o, "- Citation sources in corpus: {}", x.citation_sources.join(", "));
        let _ = writeln!(o, "- Journal metric: {} ({:?} edition)", x.metric, x.edition_policy);
        let thresholds: Vec<String> = x.i_thresholds.iter().map(|t| format!("i{t}")).collect();
        let _ = writeln!(o, "- Citation thresholds: {}", thresholds.join(", "));
        let _ = writeln!(o, "- Usual self-citation rate: up to {}", pct(x.self_citation_usual_max));
        let _ = writeln!(
            o,
            "- Terms: {:?}, at least {} occurrences, top {} by relevance",
            x.term_source,
            x.term_min_occurrences,
            pct(x.term_keep_fraction)
        );
        let _ = writeln!(o, "- Summary fields: {}\n", x.summary_fields.join(", "));
    }

    if section_head(&mut o, SectionKind::Coverage, &doc.coverage) {
        table(
            &mut o,
            &["Source", "Indexed", "Publications", "Share"],
            doc.coverage.get().unwrap().iter().map(|c| {
                vec![c.source_name.clone(), c.matched.to_string(), c.total_master.to_string(), pct(c.percent)]
            }),
        );
    }

    if section_head(&mut o, SectionKind::Activity, &doc.activity) {
        let a = doc.activity.get().unwrap();
        table(
            &mut o,
            &["Year", "Publications", "Citable"],
            a.per_year_counts
                .iter()
                .map(|(y, c)| vec![y.to_string(), c.total.to_string(), c.citable.to_string()]),
        );
        let _ = writeln!(
            o,
            "Window total {} ({} citable), trend {} per year, {} earlier publications.\n",
            a.window_totals.total,
            a.window_totals.citable,
            num(a.trend_slope),
            a.earlier_count
        );
    }

    if section_head(&mut o, SectionKind::AffiliationFunding, &doc.affiliation_funding) {
        let a = doc.affiliation_funding.get().unwrap();
        let _ = writeln!(o, "Home institution on {} publications.\n", share(&a.home_affiliated));
        table(
            &mut o,
            &["Institution", "Publications"],
            a.institutions.iter().map(|r| vec![r.label.clone(), r.count.to_string()]),
        );
        let _ = writeln!(o, "Funded publications: {}.\n", share(&a.funding.funded));
        table(
            &mut o,
            &["Funder", "Publications"],
            a.funding.funder_ranking.iter().map(|(f, n)| vec![f.clone(), n.to_string()]),
        );
    }

    if section_head(&mut o, SectionKind::Coauthorship, &doc.coauthorship) {
        let c = doc.coauthorship.get().unwrap();
        let p = &c.profile;
        let mut rows = vec![&p.overall];
        rows.extend(p.windows.iter());
        table(
            &mut o,
            &["Period", "Publications", "Mean co-authors", "Median", "Max", "Single", "First", "Last", "Corresponding"],
            rows.into_iter().map(|w| {
                vec![
                    opt(&w.window, |w| w.to_string()).replace("n/a", "all"),
                    w.publications.to_string(),
                    num(w.mean_coauthors),
                    num(w.median_coauthors),
                    w.max_coauthors.to_string(),
                    share(&w.single_authored),
                    share(&w.first),
                    share(&w.last),
                    share(&w.corresponding),
                ]
            }),
        );
        let d = &p.dependence;
        let _ = writeln!(
            o,
            "Most frequent co-author: {} on {} publications ({}).\n",
            d.coauthor_name.clone().unwrap_or_else(|| "none".into()),
            d.shared,
            pct(d.shared_percent)
        );
        let _ = writeln!(o, "Alphabetical author order: {}.\n", pct(p.alphabetical_share));
        graph_line(&mut o, &c.network);
    }

    if section_head(&mut o, SectionKind::Visibility, &doc.visibility) {
        let v = doc.visibility.get().unwrap();
        let _ = writeln!(
            o,
            "{} publications, English {}, open access {}.\n",
            v.publications,
            share(&v.english),
            share(&v.open_access)
        );
        let mut rows = vec![quartile_row(&v.window.to_string(), &v.quartile_distribution)];
        if let Some((w, d)) = &v.first_half {
            rows.push(quartile_row(&w.to_string(), d));
        }
        rows.push(quartile_row(&v.second_half.0.to_string(), &v.second_half.1));
        table(&mut o, &["Period", "Q1", "Q2", "Q3", "Q4", "Unranked"], rows);
        let _ = writeln!(o, "Q1 share: {}.\n", pct(v.q1_share));
        table(
            &mut o,
            &["Journal", "Items", "Citations", "Metric", "Quartile", "Category", "Above median", "Lists"],
            v.journal_table.iter().map(|j| {
                vec![
                    if j.venue_name.is_empty() { j.journal_id.clone() } else { j.venue_name.clone() },
                    j.items.to_string(),
                    j.citations.to_string(),
                    opt(&j.metric_value, |x| num(*x)),
                    quartile_name(&j.quartile),
                    opt(&j.category, |c| c.clone()),
                    opt(&j.above_category_median, |b| if *b { "yes" } else { "no" }.to_string()),
                    j.top_lists.join(", "),
                ]
            }),
        );
    }

    if section_head(&mut o, SectionKind::Impact, &doc.impact) {
        let i = doc.impact.get().unwrap();
        table(
            &mut o,
            &["Scope", "Publications", "Citations", "Cited", "Cites per cited", "h", "g", "m", "CNCI", "Top 10%", "Top 1%"],
            vec![
                impact_rows("Citable items", &i.citable_items),
                impact_rows("All items", &i.all_items),
            ],
        );
        let ii: Vec<String> = i
            .all_items
            .i_indices
            .iter()
            .map(|(t, n)| format!("i{t} = {n}"))
            .collect();
        let _ = writeln!(o, "{}.\n", ii.join(", "));
        let s = &i.all_items.self_citation;
        let _ = writeln!(
            o,
            "Self-citations: {} of {} citation links ({}, {:?}).\n",
            s.self_edges,
            s.edges,
            pct(s.rate),
            s.flag
        );
    }

    if section_head(&mut o, SectionKind::CitingAnalysis, &doc.citing_analysis) {
        let c = doc.citing_analysis.get().unwrap();
        let p = &c.profile;
        let _ = writeln!(o, "{} citing documents.\n", p.citing_publications);
        table(
            &mut o,
            &["", "Q1", "Q2", "Q3", "Q4", "Unranked"],
            vec![quartile_row("Citing venues", &p.quartile_distribution)],
        );
        for (list, s) in &p.top_list_shares {
            let _ = writeln!(o, "- In {list}: {}", share(s));
        }
        if let Some(n) = &p.normalized {
            let _ = writeln!(
                o,
                "\nCNCI {}, top 10% {}, top 1% {} ({} of {} covered).\n",
                num(n.cnci_mean),
                share(&n.top10),
                share(&n.top1),
                n.covered,
                n.publications
            );
        }
        graph_line(&mut o, &c.citing_countries);
    }

    if section_head(&mut o, SectionKind::Cooperation, &doc.cooperation) {
        let c = doc.cooperation.get().unwrap();
        table(
            &mut o,
            &["Period", "Classified", "International", "National", "Domestic"],
            c.shares.windows.iter().map(|w| {
                vec![
                    w.window.to_string(),
                    w.classified.to_string(),
                    share(&w.international),
                    share(&w.national),
                    share(&w.domestic),
                ]
            }),
        );
        table(
            &mut o,
            &["Institution", "Country", "Shared", "Citations", "CNCI", "Top 10%", "Top 1%", "Intl", "Industry"],
            c.table.iter().map(|r| {
                vec![
                    r.institution.clone(),
                    r.country.clone(),
                    share(&r.copubs),
                    r.citations.to_string(),
                    opt(&r.cnci, |x| num(*x)),
                    opt(&r.top10_pct, |x| pct(*x)),
                    opt(&r.top1_pct, |x| pct(*x)),
                    pct(r.intl_pct),
                    pct(r.industry_pct),
                ]
            }),
        );
        graph_line(&mut o, &c.countries);
    }

    if section_head(&mut o, SectionKind::ReferenceAnalysis, &doc.reference_analysis) {
        let r = doc.reference_analysis.get().unwrap();
        let s = &r.stats;
        let _ = writeln!(o, "{} cited references, {} without year.\n", s.total_refs, s.undated);
        for (t, v) in &s.type_shares {
            let _ = writeln!(o, "- {t:?}: {}", pct(*v));
        }
        let _ = writeln!(
            o,
            "\nMedian age {} years (field half-life {}).\n",
            opt(&s.median_age, |x| num(*x)),
            opt(&s.field_half_life, |x| num(*x))
        );
        table(
            &mut o,
            &["Year", "References"],
            s.year_histogram.iter().map(|(y, n)| vec![y.to_string(), n.to_string()]),
        );
        table(
            &mut o,
            &["Cited source", "References", "Also a publishing venue"],
            r.venue_overlap.top_cited_venues.iter().map(|v| {
                vec![
                    v.name.clone(),
                    v.count.to_string(),
                    if r.venue_overlap.overlap.contains(&v.name) { "yes" } else { "no" }.into(),
                ]
            }),
        );
        let _ = writeln!(o, "Overlap ratio {}.\n", pct(r.venue_overlap.overlap_ratio));
    }

    if section_head(&mut o, SectionKind::ResearchFocus, &doc.research_focus) {
        let f = doc.research_focus.get().unwrap();
        let _ = writeln!(
            o,
            "{} terms, {} above the occurrence threshold, {} selected.\n",
            f.candidate_terms,
            f.threshold_terms,
            f.selected.len()
        );
        table(
            &mut o,
            &["Term", "Occurrences", "Relevance"],
            f.selected
                .iter()
                .map(|t| vec![t.term.clone(), t.occurrences.to_string(), num(t.relevance)]),
        );
        let i = &f.interdisciplinarity;
        table(
            &mut o,
            &["Subject category", "Publications"],
            i.category_counts
                .iter()
                .map(|(c, n)| vec![c.clone(), n.to_string()])
                .chain(std::iter::once(vec!["Unclassified".into(), i.unclassified.to_string()])),
        );
        graph_line(&mut o, &f.term_map);
    }

    if section_head(&mut o, SectionKind::Summary, &doc.summary) {
        let s = doc.summary.get().unwrap();
        let c = s.collaboration.as_ref();
        let rows = vec![
            ("Window", s.window.to_string()),
            ("Publications", opt(&s.publications, |x| x.to_string())),
            ("Citable publications", opt(&s.citable_publications, |x| x.to_string())),
            ("Citations", opt(&s.total_citations, |x| x.to_string())),
            ("h-index", opt(&s.h_index, |x| x.to_string())),
            ("g-index", opt(&s.g_index, |x| x.to_string())),
            ("CNCI", opt(&s.cnci_mean, |x| num(*x))),
            ("Top 10%", opt(&s.top10, |x| x.to_string())),
            ("Top 1%", opt(&s.top1, |x| x.to_string())),
            ("Q1 share", opt(&s.q1_share, |x| pct(*x))),
            ("International", opt(&c.map(|c| c.international.percent), |x| pct(*x))),
            ("National", opt(&c.map(|c| c.national.percent), |x| pct(*x))),
            ("Domestic", opt(&c.map(|c| c.domestic.percent), |x| pct(*x))),
            ("Self-citation rate", opt(&s.self_citation_rate, |x| pct(*x))),
            ("Self-citation level", opt(&s.self_citation_flag, |f| format!("{f:?}"))),
        ];
        table(
            &mut o,
            &["Indicator", "Value"],
            rows.into_iter().map(|(k, v)| vec![k.to_string(), v]),
        );
    }

    if section_head(&mut o, SectionKind::Annex, &doc.annex) {
        let a = doc.annex.get().unwrap();
        let _ = writeln!(
            o,
            "{} journals and {} cooperating institutions are listed in the structured report.\n",
            a.journal_table.len(),
            a.cooperation_table.len()
        );
        for (source, ids) in &a.unmatched {
            if !ids.is_empty() {
                let _ = writeln!(o, "- Not in {source}: {}", ids.join(", "));
            }
        }
        if !a.excluded_ids.is_empty() {
            let _ = writeln!(o, "- Without baseline: {}", a.excluded_ids.join(", "));
        }
        let _ = writeln!(o, "\n### Warnings ({})\n", a.warnings.len());
        for w in &a.warnings {
            let _ = writeln!(o, "- {w}");
        }
        o.push('\n');
    }
    o
}
