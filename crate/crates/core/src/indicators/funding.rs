use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CountShare;
use crate::corpus::Corpus;
use crate::scalar::Scalar;
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct FundingProfile<S: Scalar> {
    pub window: Window,
    pub funded: CountShare<S>,
    /// Funders by number of acknowledging publications, then name.
    pub funder_ranking: Vec<(String, usize)>,
}

pub fn funding_profile<S: Scalar>(corpus: &Corpus, window: Window) -> FundingProfile<S> {
    let pubs: Vec<_> = corpus.focal_pubs.iter().filter(|p| window.contains(p.year)).collect();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut funded = 0;
    for p in &pubs {
        let mut names: Vec<&str> = p.funders.iter().map(|f| f.trim()).filter(|f| !f.is_empty()).collect();
        names.sort_unstable();
        names.dedup();
        if !names.is_empty() {
            funded += 1;
        }
        for n in names {
            *counts.entry(n).or_default() += 1;
        }
    }
    let mut funder_ranking: Vec<(String, usize)> =
        counts.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    funder_ranking.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    FundingProfile {
        window,
        funded: CountShare::of(funded, pubs.len()),
        funder_ranking,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tests_support::{corpus_with, record};

    fn w() -> Window {
        Window::new(2000, 2020).unwrap()
    }

    #[test]
    fn no_funders() {
        let c = corpus_with(vec![record("a", 2010)]);
        let f = funding_profile::<f64>(&c, w());
        assert_eq!((f.funded.count, f.funded.percent), (0, 0.0));
        assert!(f.funder_ranking.is_empty());
    }

    #[test]
    fn share_and_tied_ranking() {
        let mut pubs: Vec<_> = (0..10).map(|i| record(&format!("p{i}"), 2010)).collect();
        for (i, p) in pubs.iter_mut().enumerate().take(6) {
            p.funders = vec![if i % 2 == 0 { "FWF" } else { "ERC" }.to_string()];
        }
        let f = funding_profile::<f64>(&corpus_with(pubs), w());
        assert_eq!(f.funded.count, 6);
        assert!((f.funded.percent - 0.6).abs() < 1e-12);
        assert_eq!(f.funder_ranking, vec![("ERC".to_string(), 3), ("FWF".to_string(), 3)]);
    }
}
