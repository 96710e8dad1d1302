//! Named verification checks, one per acceptance criterion, behind a common
//! trait. The CLI `verify` subcommand and the acceptance test suite both run
//! them through this registry; selectors match either the check id or its
//! lemma tag (`3.1`, `2.5`, `5.2`, `hanoi`, ...), or `all`.
//!
//! All thresholds, case lists, seeds and probe bounds are pinned here so
//! runs are reproducible.

mod engel_checks;
mod orbit_checks;
mod soundness_checks;
mod wreath_checks;

use std::time::Instant;

use crate::error::Result;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub pass: bool,
    pub details: Vec<String>,
    pub elapsed_ms: u128,
}

pub trait LemmaCheck: Sync {
    /// Stable machine name, e.g. `liebeck-formula`.
    fn id(&self) -> &'static str;
    /// Selector tag grouping checks by source result, e.g. `3.1`.
    fn lemma(&self) -> &'static str;
    /// Acceptance criterion number (1-based).
    fn criterion(&self) -> usize;
    fn title(&self) -> &'static str;
    /// Wall-clock bound in seconds, where the criterion states one.
    fn time_limit_secs(&self) -> Option<u64> {
        None
    }
    fn run(&self) -> CheckOutcome;
}

pub fn registry() -> Vec<Box<dyn LemmaCheck>> {
    vec![
        Box::new(wreath_checks::LiebeckFormula),
        Box::new(wreath_checks::MixedPrime),
        Box::new(wreath_checks::OrderGrowth),
        Box::new(orbit_checks::WreathEmbedding),
        Box::new(orbit_checks::OrbitLaws),
        Box::new(orbit_checks::HanoiInfiniteOrder),
        Box::new(orbit_checks::IteratedWreath),
        Box::new(engel_checks::FormulaClosedForm),
        Box::new(engel_checks::GgsDisplays),
        Box::new(engel_checks::GgsNonEngel),
        Box::new(engel_checks::RightEngelWitness),
        Box::new(wreath_checks::CommLowerBound),
        Box::new(soundness_checks::WordProblemSoundness),
        Box::new(soundness_checks::EngelSurvey),
    ]
}

/// Checks matching a selector: `all`, a check id, or a lemma tag.
pub fn select(selector: &str) -> Vec<Box<dyn LemmaCheck>> {
    registry()
        .into_iter()
        .filter(|c| selector == "all" || c.id() == selector || c.lemma() == selector)
        .collect()
}

pub(crate) fn run_body(
    limit_secs: Option<u64>,
    body: impl FnOnce(&mut Vec<String>) -> Result<bool>,
) -> CheckOutcome {
    let start = Instant::now();
    let mut details = vec![];
    let mut pass = match body(&mut details) {
        Ok(p) => p,
        Err(e) => {
            details.push(format!("error: {}", e));
            false
        }
    };
    let elapsed = start.elapsed();
    if let Some(secs) = limit_secs {
        if elapsed.as_secs_f64() > secs as f64 {
            details.push(format!(
                "time limit {}s exceeded ({:.1}s)",
                secs,
                elapsed.as_secs_f64()
            ));
            pass = false;
        }
    }
    CheckOutcome {
        pass,
        details,
        elapsed_ms: elapsed.as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete_and_selectors_work() {
        let all = registry();
        assert_eq!(all.len(), 14);
        let mut criteria: Vec<usize> = all.iter().map(|c| c.criterion()).collect();
        criteria.sort_unstable();
        assert_eq!(criteria, (1..=14).collect::<Vec<_>>());
        assert_eq!(select("3.1").len(), 2);
        assert_eq!(select("5.2").len(), 2);
        assert_eq!(select("liebeck-formula").len(), 1);
        assert_eq!(select("all").len(), 14);
        assert!(select("nope").is_empty());
    }
}
