use serde::{Deserialize, Serialize};

use super::Scope;
use crate::corpus::Corpus;
use crate::scalar::{ratio, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelfCitationFlag {
    Usual,
    Elevated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SelfCitation<S: Scalar> {
    pub edges: usize,
    pub self_edges: usize,
    pub rate: S,
    pub flag: SelfCitationFlag,
}

/// Share of citation edges whose citing and cited records share an author.
/// Rates up to `usual_max` are flagged usual.
pub fn self_citation_rate<S: Scalar>(corpus: &Corpus, scope: Scope, usual_max: f64) -> SelfCitation<S> {
    let index = corpus.index();
    let mut edges = 0;
    let mut self_edges = 0;
    for e in &corpus.edges {
        let (Some(citing), Some(cited)) = (index.get(e.citing_id.as_str()), index.get(e.cited_id.as_str())) else {
            continue;
        };
        if !scope.includes(cited) {
            continue;
        }
        edges += 1;
        if citing.shares_author_with(cited) {
            self_edges += 1;
        }
    }
    let rate: S = ratio(self_edges, edges);
    SelfCitation {
        edges,
        self_edges,
        rate,
        flag: if rate <= S::of_f64(usual_max) {
            SelfCitationFlag::Usual
        } else {
            SelfCitationFlag::Elevated
        },
    }
}
