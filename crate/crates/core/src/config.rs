//! Analysis configuration, read from a TOML file.
//!
//! ```toml
//! report_id = "doe-2024"
//! [window]
//! start = 2013
//! end = 2022
//! [citation]
//! primary_source = "wos"
//! [sections]
//! citing_analysis = "off"
//! ```

use std::path::{Path, PathBuf};

use chrono::Datelike;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::baselines::{EditionPolicy, Metric};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::focus::TermSource;
use crate::window::Window;

pub const DEFAULT_I_THRESHOLDS: [u64; 3] = [10, 50, 100];
/// Fields with low expected citation counts only use the two lower
/// thresholds.
pub const SOCIAL_SCIENCE_I_THRESHOLDS: [u64; 2] = [10, 50];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    #[default]
    Standard,
    SocialSciences,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub report_id: String,
    /// Researcher name printed in the report; defaults to the focal author.
    pub researcher: Option<String>,
    pub preset: Preset,
    pub window: WindowConfig,
    /// Citation thresholds for i-indices; the preset decides when unset.
    pub i_thresholds: Option<Vec<u64>>,
    pub visibility: VisibilityConfig,
    pub citation: CitationConfig,
    pub selfcite: SelfCiteConfig,
    pub dependence: DependenceConfig,
    pub alphabetical: AlphabeticalConfig,
    pub impact: ImpactConfig,
    pub cooperation: CooperationConfig,
    pub focus: FocusConfig,
    pub knowledge: KnowledgeConfig,
    pub sections: Sections,
    pub tables: TablePaths,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            report_id: "report".into(),
            researcher: None,
            preset: Preset::Standard,
            window: WindowConfig::default(),
            i_thresholds: None,
            visibility: VisibilityConfig::default(),
            citation: CitationConfig::default(),
            selfcite: SelfCiteConfig::default(),
            dependence: DependenceConfig::default(),
            alphabetical: AlphabeticalConfig::default(),
            impact: ImpactConfig::default(),
            cooperation: CooperationConfig::default(),
            focus: FocusConfig::default(),
            knowledge: KnowledgeConfig::default(),
            sections: Sections::default(),
            tables: TablePaths::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowConfig {
    pub start: Option<i32>,
    pub end: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VisibilityConfig {
    pub metric: Metric,
    /// Pins one edition for every publication; overrides `edition_policy`.
    pub edition_year: Option<i32>,
    pub edition_policy: EditionPolicy,
}

impl Default for VisibilityConfig {
    fn default() -> Self {
        VisibilityConfig {
            metric: Metric::IF,
            edition_year: None,
            edition_policy: EditionPolicy::Latest,
        }
    }
}

impl VisibilityConfig {
    pub fn policy(&self) -> EditionPolicy {
        match self.edition_year {
            Some(y) => EditionPolicy::Fixed(y),
            None => self.edition_policy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CitationConfig {
    /// Source whose counts feed the indices. Defaults to the first of
    /// `sources`, else the alphabetically first source in the corpus.
    pub primary_source: Option<String>,
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SelfCiteConfig {
    pub usual_max: f64,
}

impl Default for SelfCiteConfig {
    fn default() -> Self {
        SelfCiteConfig { usual_max: 0.20 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DependenceConfig {
    pub flag_min: f64,
}

impl Default for DependenceConfig {
    fn default() -> Self {
        DependenceConfig { flag_min: 0.75 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlphabeticalConfig {
    pub suppress_min: f64,
}

impl Default for AlphabeticalConfig {
    fn default() -> Self {
        AlphabeticalConfig { suppress_min: 0.80 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ImpactConfig {
    /// Also report the standard deviation of citation counts.
    pub std_dev: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CooperationConfig {
    pub max_rows: usize,
}

impl Default for CooperationConfig {
    fn default() -> Self {
        CooperationConfig { max_rows: 50 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FocusConfig {
    pub min_occurrences: usize,
    pub keep_fraction: f64,
    pub source: TermSource,
    /// Replaces the built-in English stoplist.
    pub stoplist: Option<PathBuf>,
}

impl Default for FocusConfig {
    fn default() -> Self {
        FocusConfig {
            min_occurrences: 2,
            keep_fraction: 0.6,
            source: TermSource::TitleAbstract,
            stoplist: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KnowledgeConfig {
    /// Cited half-life of the field, in years.
    pub field_half_life: Option<f64>,
    pub top_n: usize,
}

impl Default for KnowledgeConfig {
    fn default() -> Self {
        KnowledgeConfig {
            field_half_life: None,
            top_n: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TablePaths {
    pub metrics: Option<PathBuf>,
    pub baselines: Option<PathBuf>,
    pub top_lists: Vec<PathBuf>,
    pub doc_type_aliases: Option<PathBuf>,
}

/// `on`/`off` switch (booleans accepted too).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Toggle(pub bool);

impl Default for Toggle {
    fn default() -> Self {
        Toggle(true)
    }
}

impl Serialize for Toggle {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_str(if self.0 { "on" } else { "off" })
    }
}

impl<'de> Deserialize<'de> for Toggle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Bool(bool),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Bool(b) => Ok(Toggle(b)),
            Raw::Str(s) => match s.to_ascii_lowercase().as_str() {
                "on" => Ok(Toggle(true)),
                "off" => Ok(Toggle(false)),
                other => Err(serde::de::Error::custom(format!("expected on/off, got `{other}`"))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Sections {
    pub methodology: Toggle,
    pub coverage: Toggle,
    pub activity: Toggle,
    pub affiliation_funding: Toggle,
    pub coauthorship: Toggle,
    pub visibility: Toggle,
    pub impact: Toggle,
    pub citing_analysis: Toggle,
    pub cooperation: Toggle,
    pub reference_analysis: Toggle,
    pub research_focus: Toggle,
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.check()?;
        Ok(config)
    }

    /// Reads a config file; relative table paths resolve against its
    /// directory.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::from_toml_str(&text)?;
        if let Some(dir) = path.parent() {
            config.resolve_paths(dir);
        }
        Ok(config)
    }

    pub fn resolve_paths(&mut self, dir: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        let t = &mut self.tables;
        t.metrics.iter_mut().for_each(fix);
        t.baselines.iter_mut().for_each(fix);
        t.doc_type_aliases.iter_mut().for_each(fix);
        t.top_lists.iter_mut().for_each(fix);
        self.focus.stoplist.iter_mut().for_each(fix);
    }

    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.focus.keep_fraction > 0.0 && self.focus.keep_fraction <= 1.0) {
            return bad("focus.keep_fraction must be in (0, 1]");
        }
        if self.focus.min_occurrences < 1 {
            return bad("focus.min_occurrences must be at least 1");
        }
        if self.i_thresholds.as_ref().is_some_and(|t| t.contains(&0)) {
            return bad("i_thresholds must be at least 1");
        }
        if self.knowledge.top_n < 1 {
            return bad("knowledge.top_n must be at least 1");
        }
        if let (Some(s), Some(e)) = (self.window.start, self.window.end) {
            Window::new(s, e)?;
        }
        Ok(())
    }

    pub fn i_thresholds(&self) -> Vec<u64> {
        match (&self.i_thresholds, self.preset) {
            (Some(t), _) => t.clone(),
            (None, Preset::Standard) => DEFAULT_I_THRESHOLDS.to_vec(),
            (None, Preset::SocialSciences) => SOCIAL_SCIENCE_I_THRESHOLDS.to_vec(),
        }
    }

    /// Evaluation window: the configured years, or the ten complete years
    /// before `current_year`.
    pub fn window(&self, current_year: i32) -> Result<Window> {
        let end = self.window.end.unwrap_or(current_year - 1);
        let start = self.window.start.unwrap_or(end - 9);
        Window::new(start, end)
    }

    pub fn window_now(&self) -> Result<Window> {
        self.window(chrono::Utc::now().year())
    }

    pub fn primary_source(&self, corpus: &Corpus) -> String {
        self.citation
            .primary_source
            .clone()
            .or_else(|| self.citation.sources.first().cloned())
            .or_else(|| corpus.citation_sources().into_iter().next())
            .unwrap_or_else(|| "wos".to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = Config::from_toml_str("").unwrap();
        assert_eq!(c.i_thresholds(), vec![10, 50, 100]);
        assert_eq!(c.selfcite.usual_max, 0.20);
        assert_eq!(c.dependence.flag_min, 0.75);
        assert_eq!(c.alphabetical.suppress_min, 0.80);
        assert_eq!(c.focus.keep_fraction, 0.6);
        assert_eq!(c.focus.min_occurrences, 2);
        assert_eq!(c.cooperation.max_rows, 50);
        assert_eq!(c.window(2025).unwrap(), Window { start: 2015, end: 2024 });
        assert!(c.sections.impact.0);
    }

    #[test]
    fn parses_keys() {
        let c = Config::from_toml_str(
            r#"
            preset = "social_sciences"
            [window]
            start = 2010
            end = 2019
            [visibility]
            metric = "SJR"
            edition_year = 2018
            [citation]
            primary_source = "scopus"
            [sections]
            citing_analysis = "off"
            impact = true
            "#,
        )
        .unwrap();
        assert_eq!(c.i_thresholds(), vec![10, 50]);
        assert_eq!(c.visibility.metric, Metric::SJR);
        assert_eq!(c.visibility.policy(), EditionPolicy::Fixed(2018));
        assert!(!c.sections.citing_analysis.0);
        assert!(c.sections.impact.0);
        assert_eq!(c.window(2030).unwrap().start, 2010);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Config::from_toml_str("[focus]\nkeep_fraction = 0.0").is_err());
        assert!(Config::from_toml_str("[sections]\nimpact = \"maybe\"").is_err());
        assert!(Config::from_toml_str("unknown = 1").is_err());
        assert!(Config::from_toml_str("[window]\nstart = 2020\nend = 2010").is_err());
    }
}
