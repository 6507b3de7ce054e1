use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use super::document::*;
use super::Tables;
use crate::config::Config;
use crate::corpus::{source_coverage, to_canonical_json, Corpus, Issue, PublicationRecord};
use crate::error::Result;
use crate::focus::{extract_terms, interdisciplinarity, select_terms, term_cooccurrence_map};
use crate::indicators::{
    activity_profile, coauthor_profile, funding_profile, impact_profile, visibility_profile, Citations,
    CoauthorSettings, CountShare, ImpactSettings, Scope, VisibilitySettings,
};
use crate::knowledge::{reference_stats, venue_overlap};
use crate::networks::{
    citing_country_network, citing_docs_profile, coauthor_network, collaboration_shares, country_copub_network,
    institution_cooperation_table, key_actors, Graph,
};
use crate::scalar::Scalar;
use crate::window::Window;

#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Decides the default window when the configuration sets none.
    pub current_year: i32,
    pub generated_at: String,
    /// Warnings from loading and validation, carried into the annex.
    pub prior_warnings: Vec<Issue>,
}

impl BuildOptions {
    pub fn now() -> Self {
        use chrono::Datelike;
        let now = chrono::Utc::now();
        BuildOptions {
            current_year: now.year(),
            generated_at: now.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            prior_warnings: Vec::new(),
        }
    }
}

/// A report document and the graphs it refers to.
#[derive(Debug, Clone, PartialEq)]
pub struct Report<S: Scalar> {
    pub document: ReportDocument<S>,
    pub graphs: Vec<Graph<S>>,
}

pub fn corpus_hash(corpus: &Corpus) -> String {
    hex::encode(Sha256::digest(to_canonical_json(corpus).as_bytes()))
}

/// Windows used for time evolution: the two halves of the window (when it
/// spans at least two years) followed by the whole window.
pub fn evolution_windows(window: Window) -> Vec<Window> {
    let (first, second) = window.halves();
    match first {
        Some(f) => vec![f, second, window],
        None => vec![window],
    }
}

pub fn build_report<S: Scalar>(
    corpus: &Corpus,
    tables: &Tables<S>,
    config: &Config,
    options: &BuildOptions,
) -> Result<Report<S>> {
    let window = config.window(options.current_year)?;
    let on = &config.sections;
    let id = config.report_id.as_str();

    // Check table requirements before any computation.
    if on.visibility.0 {
        tables.require_metrics("visibility")?;
    }
    if on.impact.0 {
        tables.require_both("impact")?;
    }
    if on.citing_analysis.0 {
        tables.require_both("citing analysis")?;
    }
    if on.cooperation.0 {
        tables.require_both("cooperation")?;
    }

    let primary = config.primary_source(corpus);
    let citations = Citations::new(corpus, &primary);
    let in_window: Vec<&PublicationRecord> = corpus.focal_pubs.iter().filter(|p| window.contains(p.year)).collect();
    let windows = evolution_windows(window);
    let mut warnings: Vec<Issue> = options.prior_warnings.clone();
    let mut graphs = Vec::new();

    let methodology = if on.methodology.0 {
        Section::on(
            Methodology {
                window,
                primary_source: primary.clone(),
                citation_sources: corpus.citation_sources(),
                metric: config.visibility.metric,
                edition_policy: config.visibility.policy(),
                i_thresholds: config.i_thresholds(),
                self_citation_usual_max: config.selfcite.usual_max,
                term_source: config.focus.source,
                term_min_occurrences: config.focus.min_occurrences,
                term_keep_fraction: config.focus.keep_fraction,
                summary_fields: SUMMARY_FIELDS.iter().map(|s| s.to_string()).collect(),
            },
            vec![
                "Citation counts come from the primary source; records without a count fall back to the number of citation links in the corpus.".into(),
                "Normalized indicators cover citable items (articles, reviews, proceedings papers) whose venue has a baseline row.".into(),
                "Quartiles rank journals by the metric within each subject category; the best category counts.".into(),
                "Term relevance is the mean citation count of the publications containing the term.".into(),
                "Self-citations stay in all citation counts; their rate is reported as a control value.".into(),
            ],
        )
    } else {
        Section::off()
    };

    let coverage_rows = source_coverage::<S>(
        &in_window.iter().map(|p| (*p).clone()).collect::<Vec<_>>(),
    );
    let unmatched: BTreeMap<String, Vec<String>> = coverage_rows
        .iter()
        .map(|c| (c.source_name.clone(), c.unmatched_ids.clone()))
        .collect();
    let coverage = if on.coverage.0 {
        Section::on(coverage_rows, vec![])
    } else {
        Section::off()
    };

    let activity = if on.activity.0 {
        let a = activity_profile::<S>(corpus, window);
        let mut notes = vec![];
        if a.current_incomplete_year_count > 0 {
            notes.push(format!(
                "{} publications after the window are not counted",
                a.current_incomplete_year_count
            ));
        }
        Section::on(a, notes)
    } else {
        Section::off()
    };

    let affiliation_funding = if on.affiliation_funding.0 {
        let home = in_window
            .iter()
            .filter(|p| p.affiliations.iter().any(|a| corpus.is_home(a)))
            .count();
        let actors = key_actors::<S>(&in_window, &citations, None);
        Section::on(
            AffiliationFunding {
                publications: in_window.len(),
                home_affiliated: CountShare::of(home, in_window.len()),
                institutions: actors.institutions,
                funding: funding_profile(corpus, window),
            },
            vec![],
        )
    } else {
        Section::off()
    };

    let coauthorship = if on.coauthorship.0 {
        let settings = CoauthorSettings {
            dependence_flag_min: config.dependence.flag_min,
            alphabetical_suppress_min: config.alphabetical.suppress_min,
        };
        let profile = coauthor_profile::<S>(corpus, &windows, &settings);
        let g = coauthor_network::<S>(corpus, Some(window));
        let network = GraphRef::of(id, &g);
        graphs.push(g);
        let mut notes = vec![];
        if profile.suppress_role_interpretation {
            notes.push("author lists are mostly alphabetical; author positions are not interpreted".into());
        }
        if profile.dependence.flagged {
            notes.push("one co-author appears on most publications".into());
        }
        Section::on(Coauthorship { profile, network }, notes)
    } else {
        Section::off()
    };

    let mut journal_table = Vec::new();
    let visibility = if on.visibility.0 {
        let metrics = tables.require_metrics("visibility")?;
        let v = visibility_profile(
            corpus,
            metrics,
            &VisibilitySettings {
                window,
                metric: config.visibility.metric,
                policy: config.visibility.policy(),
            },
            &tables.top_lists,
            &citations,
        );
        journal_table = v.journal_table.clone();
        let mut notes = vec![];
        if v.without_venue > 0 {
            notes.push(format!("{} publications have no venue and are not ranked", v.without_venue));
        }
        Section::on(v, notes)
    } else {
        Section::off()
    };

    let mut excluded_ids = Vec::new();
    let impact = if on.impact.0 {
        let both = tables.require_both("impact")?;
        let settings = ImpactSettings {
            i_thresholds: config.i_thresholds(),
            reference_year: window.end,
            selfcite_usual_max: config.selfcite.usual_max,
            std_dev: config.impact.std_dev,
        };
        let (citable, w1) = impact_profile(corpus, Some(both), &citations, &settings, Scope::CitableItems);
        let (all, w2) = impact_profile(corpus, Some(both), &citations, &settings, Scope::AllItems);
        warnings.extend(w1);
        warnings.extend(w2);
        if let Some(n) = &citable.normalized {
            excluded_ids = n.excluded_ids.clone();
        }
        Section::on(
            ImpactSection {
                citable_items: citable,
                all_items: all,
            },
            vec!["impact covers the whole publication list; the m-quotient runs to the window end".into()],
        )
    } else {
        Section::off()
    };

    let citing_analysis = if on.citing_analysis.0 {
        let (metrics, baselines) = tables.require_both("citing analysis")?;
        let citing: Vec<&PublicationRecord> = corpus.citing_pubs.iter().collect();
        let (profile, w) = citing_docs_profile(
            &citing,
            metrics,
            config.visibility.metric,
            config.visibility.policy(),
            Some(baselines),
            &tables.top_lists,
            &primary,
        );
        warnings.extend(w);
        let g = citing_country_network::<S>(corpus);
        let citing_countries = GraphRef::of(id, &g);
        graphs.push(g);
        Section::on(CitingAnalysis { profile, citing_countries }, vec![])
    } else {
        Section::off()
    };

    let mut cooperation_table = Vec::new();
    let cooperation = if on.cooperation.0 {
        let both = tables.require_both("cooperation")?;
        let shares = collaboration_shares::<S>(corpus, &windows);
        let rows = institution_cooperation_table(corpus, &in_window, &citations, Some(both));
        cooperation_table = rows.clone();
        let institutions = rows.len();
        let mut table = rows;
        table.truncate(config.cooperation.max_rows);
        let g = country_copub_network::<S>(corpus, Some(window));
        let countries = GraphRef::of(id, &g);
        graphs.push(g);
        let mut notes = vec![];
        if institutions > table.len() {
            notes.push(format!("{} of {institutions} institutions shown; the annex lists all", table.len()));
        }
        Section::on(
            Cooperation {
                shares,
                institutions,
                table,
                countries,
            },
            notes,
        )
    } else {
        Section::off()
    };

    let reference_analysis = if on.reference_analysis.0 {
        Section::on(
            ReferenceAnalysis {
                stats: reference_stats(&in_window, config.knowledge.field_half_life),
                venue_overlap: venue_overlap(&in_window, config.knowledge.top_n),
            },
            vec![],
        )
    } else {
        Section::off()
    };

    let research_focus = if on.research_focus.0 {
        let terms = extract_terms::<S>(&in_window, config.focus.source, &tables.stoplist, &citations);
        let threshold_terms = terms
            .iter()
            .filter(|t| t.occurrences >= config.focus.min_occurrences)
            .count();
        let selected = select_terms(&terms, config.focus.min_occurrences, config.focus.keep_fraction);
        let g = term_cooccurrence_map(&selected);
        let term_map = GraphRef::of(id, &g);
        graphs.push(g);
        Section::on(
            ResearchFocus {
                candidate_terms: terms.len(),
                threshold_terms,
                selected,
                interdisciplinarity: interdisciplinarity(&in_window, tables.metrics.as_ref()),
                term_map,
            },
            vec![],
        )
    } else {
        Section::off()
    };

    let summary = Summary {
        window,
        publications: activity.get().map(|a| a.window_totals.total),
        citable_publications: activity.get().map(|a| a.window_totals.citable),
        total_citations: impact.get().map(|i| i.all_items.total_citations),
        h_index: impact.get().map(|i| i.all_items.h_index),
        g_index: impact.get().map(|i| i.all_items.g_index),
        cnci_mean: impact
            .get()
            .and_then(|i| i.citable_items.normalized.as_ref())
            .map(|n| n.cnci_mean),
        top10: impact
            .get()
            .and_then(|i| i.citable_items.normalized.as_ref())
            .map(|n| n.top10.count),
        top1: impact
            .get()
            .and_then(|i| i.citable_items.normalized.as_ref())
            .map(|n| n.top1.count),
        q1_share: visibility.get().map(|v| v.q1_share),
        collaboration: cooperation.get().and_then(|c| c.shares.windows.last().cloned()),
        self_citation_rate: impact.get().map(|i| i.all_items.self_citation.rate),
        self_citation_flag: impact.get().map(|i| i.all_items.self_citation.flag),
    };

    warnings.sort();
    warnings.dedup();
    let annex = Annex {
        journal_table,
        cooperation_table,
        unmatched,
        excluded_ids,
        warnings,
    };

    let document = ReportDocument {
        metadata: Metadata {
            report_id: config.report_id.clone(),
            researcher: config
                .researcher
                .clone()
                .unwrap_or_else(|| corpus.focal_author.display_name.clone()),
            corpus_hash: corpus_hash(corpus),
            generated_at: options.generated_at.clone(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
        },
        methodology,
        coverage,
        activity,
        affiliation_funding,
        coauthorship,
        visibility,
        impact,
        citing_analysis,
        cooperation,
        reference_analysis,
        research_focus,
        summary: Section::on(summary, vec![]),
        annex: Section::on(annex, vec![]),
    };
    Ok(Report { document, graphs })
}
