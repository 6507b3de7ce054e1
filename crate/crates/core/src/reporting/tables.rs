use std::path::Path;

use crate::baselines::{BaselineTable, JournalMetricsTable, TopJournalList};
use crate::config::Config;
use crate::corpus::DocTypeAliases;
use crate::error::{Error, Result};
use crate::focus::Stoplist;
use crate::scalar::Scalar;

/// Reference tables a report draws on. Metrics and baselines are optional;
/// sections needing them fail when they are absent.
#[derive(Debug, Clone, Default)]
pub struct Tables<S: Scalar> {
    pub metrics: Option<JournalMetricsTable<S>>,
    pub baselines: Option<BaselineTable<S>>,
    pub top_lists: Vec<TopJournalList>,
    pub aliases: DocTypeAliases,
    pub stoplist: Stoplist,
}

fn must_exist(path: &Path, what: &str) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::MissingTable(format!("{what} table {}", path.display())))
    }
}

impl<S: Scalar> Tables<S> {
    /// Loads every table named in the configuration.
    pub fn load(config: &Config) -> Result<Self> {
        let t = &config.tables;
        let metrics = match &t.metrics {
            Some(p) => {
                must_exist(p, "metrics")?;
                Some(JournalMetricsTable::from_csv_path(p)?)
            }
            None => None,
        };
        let baselines = match &t.baselines {
            Some(p) => {
                must_exist(p, "baselines")?;
                Some(BaselineTable::from_csv_path(p)?)
            }
            None => None,
        };
        let mut top_lists = Vec::new();
        for p in &t.top_lists {
            must_exist(p, "top-journal")?;
            top_lists.push(TopJournalList::from_path(p)?);
        }
        let aliases = match &t.doc_type_aliases {
            Some(p) => {
                must_exist(p, "document-type alias")?;
                DocTypeAliases::from_csv_path(p)?
            }
            None => DocTypeAliases::default(),
        };
        let stoplist = match &config.focus.stoplist {
            Some(p) => {
                must_exist(p, "stoplist")?;
                Stoplist::from_path(p)?
            }
            None => Stoplist::default(),
        };
        Ok(Tables {
            metrics,
            baselines,
            top_lists,
            aliases,
            stoplist,
        })
    }

    pub fn both(&self) -> Option<(&JournalMetricsTable<S>, &BaselineTable<S>)> {
        self.metrics.as_ref().zip(self.baselines.as_ref())
    }

    pub(crate) fn require_metrics(&self, section: &str) -> Result<&JournalMetricsTable<S>> {
        self.metrics
            .as_ref()
            .ok_or_else(|| Error::MissingTable(format!("metrics (required by the {section} section)")))
    }

    pub(crate) fn require_both(&self, section: &str) -> Result<(&JournalMetricsTable<S>, &BaselineTable<S>)> {
        let m = self.require_metrics(section)?;
        let b = self
            .baselines
            .as_ref()
            .ok_or_else(|| Error::MissingTable(format!("baselines (required by the {section} section)")))?;
        Ok((m, b))
    }
}
