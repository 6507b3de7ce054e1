use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use bibprofile::corpus::{
    load_corpus_with, load_publication_list, match_publication_list, validate_corpus_with, Issue, LoadedCorpus,
    ValidationOptions,
};
use bibprofile::focus::{extract_terms, interdisciplinarity, select_terms, term_cooccurrence_map};
use bibprofile::indicators::Citations;
use bibprofile::networks::{
    bibliographic_coupling, citing_country_network, coauthor_network, country_copub_network, export_graph,
    key_actors, GraphFormat,
};
use bibprofile::reporting::{
    build_report, compare_peers, interview_template, render, BuildOptions, GraphRef, ReportFormat, ResearchFocus,
};
use bibprofile::{Config, CoverageResult, Graph, PublicationRecord, Tables};
use clap::{Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "bibprofile", version, about = "Individual bibliometric profiles from a publication corpus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a corpus file and list data issues.
    Validate {
        corpus: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Exit with status 1 when any issue is found.
        #[arg(long)]
        strict: bool,
    },
    /// Share of a master publication list found in a database export.
    Coverage {
        master: PathBuf,
        export: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full report plus its graphs in both formats.
    Report {
        corpus: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "structured")]
        format: ReportFormat,
    },
    /// Co-author, country and term graphs.
    Graphs {
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "dot")]
        format: GraphFormat,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Term selection and co-occurrence map.
    Focus {
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Compare the researcher with one or more peers.
    Compare {
        corpus: PathBuf,
        #[arg(long = "peer", required = true, num_args = 1..)]
        peers: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Key actors and bibliographic coupling of a field corpus.
    Field {
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Write the preparatory interview questionnaire.
    InterviewTemplate {
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure with the process exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<bibprofile::Error> for Failure {
    fn from(e: bibprofile::Error) -> Self {
        let code = if e.is_configuration() { 2 } else { 1 };
        Failure { code, error: e.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

type Outcome = Result<(), Failure>;

fn config_failure(e: bibprofile::Error) -> Failure {
    Failure { code: 2, error: e.into() }
}

fn load_config(path: Option<&Path>) -> Result<(Config, Tables), Failure> {
    let config = match path {
        Some(p) => Config::from_path(p).map_err(config_failure)?,
        None => Config::default(),
    };
    let tables = Tables::load(&config)?;
    Ok((config, tables))
}

fn load(path: &Path, tables: &Tables) -> Result<LoadedCorpus, Failure> {
    Ok(load_corpus_with(path, &tables.aliases)?)
}

fn write(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, Failure> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    println!("{}", path.display());
    Ok(path)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| anyhow!(e))?;
    text.push('\n');
    write(dir, name, text.as_bytes())
}

fn write_graph(dir: &Path, id: &str, g: &Graph, format: GraphFormat) -> Result<PathBuf, Failure> {
    write(dir, &format!("{id}.{}.{}", g.name, format.extension()), &export_graph(g, format))
}

fn print_issues(issues: &[Issue]) {
    for i in issues {
        let id = i.record_id.as_deref().unwrap_or("-");
        eprintln!("warning: {:?} [{id}] {}", i.kind, i.message);
    }
}

fn validation_issues(loaded: &LoadedCorpus, config: &Config, current_year: i32) -> Vec<Issue> {
    let opts = ValidationOptions {
        current_year,
        primary_source: Some(config.primary_source(&loaded.corpus)),
        ..ValidationOptions::default()
    };
    let mut issues = loaded.issues.clone();
    issues.extend(validate_corpus_with(&loaded.corpus, &opts));
    issues
}

fn validate(corpus: &Path, config: Option<&Path>, strict: bool) -> Outcome {
    let (config, tables) = load_config(config)?;
    let loaded = load(corpus, &tables)?;
    let issues = validation_issues(&loaded, &config, BuildOptions::now().current_year);
    print_issues(&issues);
    let c = &loaded.corpus;
    println!(
        "{}: {} focal publications, {} citing publications, {} citation links, {} issues",
        corpus.display(),
        c.focal_pubs.len(),
        c.citing_pubs.len(),
        c.edges.len(),
        issues.len()
    );
    if strict && !issues.is_empty() {
        return Err(Failure {
            code: 1,
            error: anyhow!("{} validation issues", issues.len()),
        });
    }
    Ok(())
}

fn coverage(master: &Path, export: &Path, source: &str, out: Option<&Path>) -> Outcome {
    let aliases = Default::default();
    let master = load_publication_list(master, &aliases)?;
    let export = load_publication_list(export, &aliases)?;
    let result: CoverageResult =
        match_publication_list(&master.corpus.focal_pubs, &export.corpus.focal_pubs, source);
    print_issues(&result.warnings);
    println!(
        "{source}: {} of {} matched ({:.1}%)",
        result.matched,
        result.total_master,
        result.percent * 100.0
    );
    for id in &result.unmatched_ids {
        println!("unmatched: {id}");
    }
    if let Some(dir) = out {
        write_json(dir, &format!("coverage.{source}.json"), &result)?;
    }
    Ok(())
}

fn report(corpus: &Path, config: &Path, out: &Path, format: ReportFormat) -> Outcome {
    let (config, tables) = load_config(Some(config))?;
    let loaded = load(corpus, &tables)?;
    let mut options = BuildOptions::now();
    options.prior_warnings = validation_issues(&loaded, &config, options.current_year);
    let report = build_report(&loaded.corpus, &tables, &config, &options)?;
    let id = &config.report_id;
    write(out, &format!("{id}.{}", format.extension()), &render(&report.document, format))?;
    for g in &report.graphs {
        for f in [GraphFormat::Dot, GraphFormat::GraphMl] {
            write_graph(out, id, g, f)?;
        }
    }
    Ok(())
}

fn graphs(corpus: &Path, out: &Path, format: GraphFormat, config: Option<&Path>) -> Outcome {
    let (config, tables) = load_config(config)?;
    let corpus = load(corpus, &tables)?.corpus;
    let window = config.window(BuildOptions::now().current_year)?;
    let citations = Citations::new(&corpus, &config.primary_source(&corpus));
    let in_window: Vec<&PublicationRecord> = corpus.focal_pubs.iter().filter(|p| window.contains(p.year)).collect();
    let terms = extract_terms(&in_window, config.focus.source, &tables.stoplist, &citations);
    let selected = select_terms(&terms, config.focus.min_occurrences, config.focus.keep_fraction);
    let all: [Graph; 4] = [
        coauthor_network(&corpus, Some(window)),
        citing_country_network(&corpus),
        country_copub_network(&corpus, Some(window)),
        term_cooccurrence_map(&selected),
    ];
    for g in &all {
        write_graph(out, &config.report_id, g, format)?;
    }
    Ok(())
}

fn focus(corpus: &Path, out: &Path, config: Option<&Path>) -> Outcome {
    let (config, tables) = load_config(config)?;
    let corpus = load(corpus, &tables)?.corpus;
    let window = config.window(BuildOptions::now().current_year)?;
    let citations = Citations::new(&corpus, &config.primary_source(&corpus));
    let in_window: Vec<&PublicationRecord> = corpus.focal_pubs.iter().filter(|p| window.contains(p.year)).collect();
    let terms = extract_terms(&in_window, config.focus.source, &tables.stoplist, &citations);
    let selected = select_terms(&terms, config.focus.min_occurrences, config.focus.keep_fraction);
    let map = term_cooccurrence_map(&selected);
    let id = &config.report_id;
    let payload: ResearchFocus<f64> = ResearchFocus {
        candidate_terms: terms.len(),
        threshold_terms: terms
            .iter()
            .filter(|t| t.occurrences >= config.focus.min_occurrences)
            .count(),
        selected,
        interdisciplinarity: interdisciplinarity(&in_window, tables.metrics.as_ref()),
        term_map: GraphRef::of(id, &map),
    };
    write_json(out, &format!("{id}.focus.json"), &payload)?;
    for f in [GraphFormat::Dot, GraphFormat::GraphMl] {
        write_graph(out, id, &map, f)?;
    }
    Ok(())
}

fn compare(corpus: &Path, peers: &[PathBuf], out: &Path, config: Option<&Path>) -> Outcome {
    let (config, tables) = load_config(config)?;
    let focal = load(corpus, &tables)?.corpus;
    let mut parties = Vec::new();
    for path in peers {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        parties.push((name, load_publication_list(path, &tables.aliases)?.corpus));
    }
    let window = config.window(BuildOptions::now().current_year)?;
    let comparison = compare_peers(&focal, &parties, &tables, &config, window)?;
    write_json(out, &format!("{}.peers.json", config.report_id), &comparison)?;
    Ok(())
}

fn field(corpus: &Path, out: &Path, config: Option<&Path>) -> Outcome {
    let (config, tables) = load_config(config)?;
    let corpus = load(corpus, &tables)?.corpus;
    let citations = Citations::new(&corpus, &config.primary_source(&corpus));
    let pubs: Vec<&PublicationRecord> = corpus.focal_pubs.iter().collect();
    let id = &config.report_id;
    write_json(out, &format!("{id}.key_actors.json"), &key_actors(&pubs, &citations, tables.both()))?;
    let coupling: Graph = bibliographic_coupling(&pubs);
    for f in [GraphFormat::Dot, GraphFormat::GraphMl] {
        write_graph(out, id, &coupling, f)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { corpus, config, strict } => validate(&corpus, config.as_deref(), strict),
        Command::Coverage {
            master,
            export,
            source,
            out,
        } => coverage(&master, &export, &source, out.as_deref()),
        Command::Report {
            corpus,
            config,
            out,
            format,
        } => report(&corpus, &config, &out, format),
        Command::Graphs {
            corpus,
            out,
            format,
            config,
        } => graphs(&corpus, &out, format, config.as_deref()),
        Command::Focus { corpus, out, config } => focus(&corpus, &out, config.as_deref()),
        Command::Compare {
            corpus,
            peers,
            out,
            config,
        } => compare(&corpus, &peers, &out, config.as_deref()),
        Command::Field { corpus, out, config } => field(&corpus, &out, config.as_deref()),
        Command::InterviewTemplate { out } => {
            if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(&out, interview_template()).with_context(|| format!("writing {}", out.display()))?;
            println!("{}", out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
