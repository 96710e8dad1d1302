//! The word-problem soundness sweep and the Engel-set survey evidence.

use super::{run_body, CheckOutcome, LemmaCheck};
use crate::autom::{GroupDef, Letter, Word};
use crate::catalog;
use crate::engel::{left_engel_survey, EngelVerdict, SurveyParams};
use crate::tree::Vertex;
use crate::truncation::{is_identity_table, Truncator};
use crate::wordprob::{OrderPolicy, OrderResult, Solver, TrivialityVerdict};

/// All generator strings of length 1..=max (exponent-one letters).
fn generator_strings(group: &std::sync::Arc<GroupDef>, max_len: usize) -> Vec<Word> {
    let gens = group.generators().len();
    let mut out = vec![];
    let mut seq = vec![0usize; 0];
    loop {
        // increment the odometer
        let mut k = 0;
        loop {
            if k == seq.len() {
                seq.push(0);
                break;
            }
            seq[k] += 1;
            if seq[k] < gens {
                break;
            }
            seq[k] = 0;
            k += 1;
        }
        if seq.len() > max_len {
            break;
        }
        let letters: Vec<Letter> = seq
            .iter()
            .map(|&g| Letter::new(g, Vertex::root(), 1))
            .collect();
        out.push(Word::from_letters(
            group.clone(),
            group.tree().clone(),
            letters,
        ));
    }
    out
}

/// Criterion 13: is_trivial agrees with the depth-8 truncation oracle on all
/// generator strings of length <= 6 over Grigorchuk and Gupta-Sidki-3.
pub struct WordProblemSoundness;

const ORACLE_DEPTH: usize = 8;

impl LemmaCheck for WordProblemSoundness {
    fn id(&self) -> &'static str {
        "word-problem-soundness"
    }
    fn lemma(&self) -> &'static str {
        "soundness"
    }
    fn criterion(&self) -> usize {
        13
    }
    fn title(&self) -> &'static str {
        "is_trivial vs depth-8 truncation oracle on all words of length <= 6"
    }
    fn time_limit_secs(&self) -> Option<u64> {
        Some(300)
    }
    fn run(&self) -> CheckOutcome {
        run_body(self.time_limit_secs(), |details| {
            let mut disagreements = 0usize;
            let mut total = 0usize;
            let mut witness_checks = 0usize;
            for group in [catalog::grigorchuk()?, catalog::gupta_sidki(3)?] {
                let words = generator_strings(&group, 6);
                let mut solver = Solver::default();
                let mut truncator = Truncator::new(&group, ORACLE_DEPTH)?;
                for w in &words {
                    total += 1;
                    let verdict = solver.is_trivial(w);
                    let table_trivial = is_identity_table(&truncator.word_table(w)?);
                    let agree = match &verdict {
                        TrivialityVerdict::Trivial => table_trivial,
                        TrivialityVerdict::Nontrivial(_) => !table_trivial,
                        TrivialityVerdict::UndecidedAtBound => false,
                    };
                    if !agree {
                        disagreements += 1;
                        details.push(format!(
                            "disagreement on {} ({:?} vs oracle trivial={})",
                            w, verdict, table_trivial
                        ));
                    }
                    // witness soundness on a sample
                    if witness_checks < 50 {
                        if let TrivialityVerdict::Nontrivial(v) = &verdict {
                            witness_checks += 1;
                            if w.label(v)?.is_identity() {
                                disagreements += 1;
                                details.push(format!("witness {} of {} is not moved", v, w));
                            }
                        }
                    }
                }
            }
            details.push(format!(
                "{} words checked against the depth-{} oracle, {} disagreements, {} witnesses verified",
                total, ORACLE_DEPTH, disagreements, witness_checks
            ));
            Ok(disagreements == 0)
        })
    }
}

/// Criterion 14: survey evidence consistent with the known Engel sets:
/// Grigorchuk candidates of certified order > 2 all survive, and the
/// Gupta-Sidki-3 candidates a, b, ab survive.
pub struct EngelSurvey;

impl LemmaCheck for EngelSurvey {
    fn id(&self) -> &'static str {
        "engel-survey"
    }
    fn lemma(&self) -> &'static str {
        "engel-survey"
    }
    fn criterion(&self) -> usize {
        14
    }
    fn title(&self) -> &'static str {
        "left-Engel survey: Grigorchuk (len 3) and Gupta-Sidki-3 (len 2)"
    }
    fn run(&self) -> CheckOutcome {
        run_body(None, |details| {
            let mut pass = true;

            // Grigorchuk: every candidate of certified order > 2 must have a
            // SurvivesTo witness
            let grig = catalog::grigorchuk()?;
            let mut solver = Solver::default();
            let params = SurveyParams {
                word_length: 3,
                max_k: 8,
                order_policy: OrderPolicy::with_max_level(14),
            };
            let reports = left_engel_survey(&grig, &params, &mut solver)?;
            let mut uncertified = 0usize;
            let mut order_gt2 = 0usize;
            let mut missing_witness = 0usize;
            let mut vanish_samples = 0usize;
            for r in &reports {
                match r.order.as_ref() {
                    Some(OrderResult::Finite {
                        m,
                        certified: true,
                    }) => {
                        if *m > 2 {
                            order_gt2 += 1;
                            if r.summary.counterexample.is_none() {
                                missing_witness += 1;
                                details.push(format!("no survivor witness for {} (order {})", r.x, m));
                            }
                        } else {
                            // spot-check soundness of vanish entries on involutions
                            for probe in &r.probes {
                                if vanish_samples >= 20 {
                                    break;
                                }
                                if let EngelVerdict::VanishesAt(n) = probe.verdict {
                                    if n >= 1 {
                                        vanish_samples += 1;
                                        let c = crate::engel::engel_commutator(&probe.g, &r.x, n)?;
                                        let prev =
                                            crate::engel::engel_commutator(&probe.g, &r.x, n - 1)?;
                                        if !solver.is_trivial(&c).is_trivial()
                                            || !solver.is_trivial(&prev).is_nontrivial()
                                        {
                                            details.push(format!(
                                                "unsound vanish record: [{},_{} {}]",
                                                probe.g, n, r.x
                                            ));
                                            pass = false;
                                        }
                                    }
                                }
                            }
                        }
                    }
                    _ => {
                        uncertified += 1;
                        details.push(format!("order not certified for {}", r.x));
                    }
                }
            }
            details.push(format!(
                "Grigorchuk: {} candidates, {} of certified order > 2 ({} missing witnesses), {} uncertified orders, {} vanish records re-verified",
                reports.len(),
                order_gt2,
                missing_witness,
                uncertified,
                vanish_samples
            ));
            pass &= missing_witness == 0 && uncertified == 0 && order_gt2 > 0;

            // Gupta-Sidki-3: a, b, ab must each get a survivor witness
            let gs = catalog::gupta_sidki(3)?;
            let mut solver = Solver::default();
            let params = SurveyParams {
                word_length: 2,
                max_k: 8,
                order_policy: OrderPolicy::with_max_level(12),
            };
            let reports = left_engel_survey(&gs, &params, &mut solver)?;
            for target in ["a", "b", "ab"] {
                let report = reports.iter().find(|r| format!("{}", r.x) == target);
                match report {
                    Some(r) if r.summary.counterexample.is_some() => {
                        details.push(format!(
                            "Gupta-Sidki-3: {} survives to k=8 against {}",
                            target,
                            r.summary.counterexample.as_ref().expect("just checked")
                        ));
                    }
                    Some(_) => {
                        details.push(format!("Gupta-Sidki-3: no witness for {}", target));
                        pass = false;
                    }
                    None => {
                        details.push(format!("Gupta-Sidki-3: candidate {} not surveyed", target));
                        pass = false;
                    }
                }
            }
            Ok(pass)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_strings_counts() {
        let g = catalog::gupta_sidki(3).unwrap();
        // 2 + 4 + 8 + ... + 64 = 126 strings over {a, b}
        assert_eq!(generator_strings(&g, 6).len(), 126);
    }
}
