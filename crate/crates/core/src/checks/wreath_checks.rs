//! Checks backed by the finite cyclic wreath-product oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{run_body, CheckOutcome, LemmaCheck};
use crate::engel::liebeck_degree;
use crate::wreathlab::{
    brute_engel_degree, brute_is_left_engel, comm_lower_bound_check, engel_coefficients,
    verify_order_growth, BruteDegree, CyclicWreath, LeftEngelCheck,
};

/// Criterion 1: the Engel-degree formula matches brute force on all listed
/// p-power cases.
pub struct LiebeckFormula;

const LIEBECK_CASES: [(u64, u64, u64); 7] = [
    (2, 2, 2),
    (2, 2, 4),
    (2, 4, 2),
    (2, 4, 4),
    (3, 3, 3),
    (3, 3, 9),
    (3, 9, 3),
];

impl LemmaCheck for LiebeckFormula {
    fn id(&self) -> &'static str {
        "liebeck-formula"
    }
    fn lemma(&self) -> &'static str {
        "3.1"
    }
    fn criterion(&self) -> usize {
        1
    }
    fn title(&self) -> &'static str {
        "Engel-degree formula vs brute force in C_q wr C_m"
    }
    fn time_limit_secs(&self) -> Option<u64> {
        Some(30)
    }
    fn run(&self) -> CheckOutcome {
        run_body(self.time_limit_secs(), |details| {
            let mut pass = true;
            for (p, m, q) in LIEBECK_CASES {
                let expected = liebeck_degree(p, m, q)?;
                let w = CyclicWreath::new(q, m)?;
                let got = brute_engel_degree(&w, &w.top(), &w.base_gen(), 64)?;
                let ok = got == BruteDegree::Degree(expected as u32);
                details.push(format!(
                    "p={} |x|={} |y|={}: formula {} brute {:?} {}",
                    p,
                    m,
                    q,
                    expected,
                    got,
                    if ok { "ok" } else { "MISMATCH" }
                ));
                pass &= ok;
            }
            Ok(pass)
        })
    }
}

/// Criterion 2: mixed primes preclude the left Engel property for the top
/// generator, with an explicit witness.
pub struct MixedPrime;

impl LemmaCheck for MixedPrime {
    fn id(&self) -> &'static str {
        "mixed-prime"
    }
    fn lemma(&self) -> &'static str {
        "3.1"
    }
    fn criterion(&self) -> usize {
        2
    }
    fn title(&self) -> &'static str {
        "top generator not left Engel in C_3 wr C_2 and C_2 wr C_3"
    }
    fn time_limit_secs(&self) -> Option<u64> {
        Some(5)
    }
    fn run(&self) -> CheckOutcome {
        run_body(self.time_limit_secs(), |details| {
            let mut pass = true;
            for (q, n) in [(3u64, 2u64), (2, 3)] {
                let w = CyclicWreath::new(q, n)?;
                match brute_is_left_engel(&w, &w.top())? {
                    LeftEngelCheck::Witness(g) => {
                        details.push(format!(
                            "C_{} wr C_{}: witness base={:?} top={}",
                            q,
                            n,
                            g.base(),
                            g.top()
                        ));
                    }
                    LeftEngelCheck::LeftEngel => {
                        details.push(format!("C_{} wr C_{}: unexpectedly left Engel", q, n));
                        pass = false;
                    }
                }
            }
            Ok(pass)
        })
    }
}

/// Criterion 3: |xg| > |x| for all 2 <= q, n <= 9.
pub struct OrderGrowth;

impl LemmaCheck for OrderGrowth {
    fn id(&self) -> &'static str {
        "order-growth"
    }
    fn lemma(&self) -> &'static str {
        "3.2"
    }
    fn criterion(&self) -> usize {
        3
    }
    fn title(&self) -> &'static str {
        "|x(y,1,...,1)| > |x| in C_q wr C_n for all 2 <= q,n <= 9"
    }
    fn time_limit_secs(&self) -> Option<u64> {
        Some(60)
    }
    fn run(&self) -> CheckOutcome {
        run_body(self.time_limit_secs(), |details| {
            let mut failures = 0;
            for q in 2..=9u64 {
                for n in 2..=9u64 {
                    let w = CyclicWreath::new(q, n)?;
                    if !verify_order_growth(&w)? {
                        details.push(format!("violation at q={} n={}", q, n));
                        failures += 1;
                    }
                }
            }
            details.push(format!("64 pairs checked, {} violations", failures));
            Ok(failures == 0)
        })
    }
}

/// Criterion 12: the commutator lower-bound display and the coefficient
/// recursion.
pub struct CommLowerBound;

impl LemmaCheck for CommLowerBound {
    fn id(&self) -> &'static str {
        "lemma-3.4"
    }
    fn lemma(&self) -> &'static str {
        "3.4"
    }
    fn criterion(&self) -> usize {
        12
    }
    fn title(&self) -> &'static str {
        "commutator lower bound and coefficient recursion"
    }
    fn run(&self) -> CheckOutcome {
        run_body(None, |details| {
            let mut pass = true;
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0012);
            for n in [2u64, 3, 4] {
                for q in [2u64, 3] {
                    let w = CyclicWreath::new(q, n)?;
                    let plain = comm_lower_bound_check(&w, &w.top(), 64)?;
                    let base: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
                    let mixed = w.element(base.clone(), 1)?;
                    let with_base = comm_lower_bound_check(&w, &mixed, 64)?;
                    details.push(format!(
                        "Y=C_{} X=C_{}: w=x {} / w=({:?})x {}",
                        q,
                        n,
                        if plain { "ok" } else { "FAIL" },
                        base,
                        if with_base { "ok" } else { "FAIL" }
                    ));
                    pass &= plain && with_base;
                }
            }
            for n in 2..=8 {
                let table = engel_coefficients(n, 50)?;
                let ok = table.claim_b_all();
                let sums_ok = (1..=50).all(|k| table.rows[k].iter().sum::<i128>() == 0);
                details.push(format!(
                    "coefficients n={}: claim (b) for k<=50 {}, telescoping sums {}",
                    n,
                    if ok { "holds" } else { "FAILS" },
                    if sums_ok { "vanish" } else { "unexpected" }
                ));
                pass &= ok && sums_ok;
            }
            Ok(pass)
        })
    }
}
