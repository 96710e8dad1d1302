//! Checks for the orbit laws, the wreath embedding, the Hanoi infinite-order
//! certificate, and the iterated-wreath construction.

use std::collections::BTreeMap;
use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{run_body, CheckOutcome, LemmaCheck};
use crate::autom::{Letter, Word};
use crate::catalog;
use crate::error::{Error, Result};
use crate::orbitlab::{self, infinite_order_certificate};
use crate::perm::Permutation;
use crate::tree::{level_vertices, DegreeSequence, Vertex};
use crate::truncation::{self, Truncator};
use crate::util::lcm;
use crate::wordprob::{OrderPolicy, OrderResult, Solver};
use crate::wreathlab::verify_wreath_embedding;

fn random_word(group: &std::sync::Arc<crate::autom::GroupDef>, rng: &mut ChaCha8Rng) -> Word {
    let syllables = rng.gen_range(1..=4);
    let mut letters: Vec<Letter> = vec![];
    let mut last = usize::MAX;
    for _ in 0..syllables {
        let mut gen = rng.gen_range(0..group.generators().len());
        while gen == last {
            gen = rng.gen_range(0..group.generators().len());
        }
        last = gen;
        let exp = match group.generators()[gen].declared_order {
            Some(m) => rng.gen_range(1..m as i64),
            None => *[1i64, -1].choose(rng).expect("non-empty"),
        };
        letters.push(Letter::new(gen, Vertex::root(), exp));
    }
    Word::from_letters(group.clone(), group.tree().clone(), letters)
}

/// Criterion 5: parent orbit lengths divide child orbit lengths, and the
/// order-mod-level chain is a divisibility chain, on 500 random words.
pub struct OrbitLaws;

impl LemmaCheck for OrbitLaws {
    fn id(&self) -> &'static str {
        "orbit-laws"
    }
    fn lemma(&self) -> &'static str {
        "2.2"
    }
    fn criterion(&self) -> usize {
        5
    }
    fn title(&self) -> &'static str {
        "orbit divisibility and order-mod-level chain on 500 random words"
    }
    fn run(&self) -> CheckOutcome {
        run_body(None, |details| {
            let groups = [catalog::grigorchuk()?, catalog::gupta_sidki(3)?, catalog::hanoi()?];
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
            let mut violations = 0usize;
            for t in 0..500 {
                let group = &groups[t % groups.len()];
                let w = random_word(group, &mut rng);
                let mut prev_len: HashMap<Vertex, u64> = HashMap::new();
                prev_len.insert(Vertex::root(), 1);
                let mut prev_lcm = 1u64;
                for level in 1..=5usize {
                    let orbits = orbitlab::orbits_at_level(&w, level)?;
                    let mut cur_len = HashMap::new();
                    let mut cur_lcm = 1u64;
                    for o in &orbits {
                        cur_lcm = lcm(cur_lcm, o.len());
                        for v in &o.vertices {
                            cur_len.insert(v.clone(), o.len());
                        }
                    }
                    for (v, len) in &cur_len {
                        let parent = v.parent().expect("level >= 1");
                        let plen = prev_len[&parent];
                        if len % plen != 0 {
                            violations += 1;
                            details.push(format!(
                                "divisibility violated: word {} vertex {} ({} vs parent {})",
                                w, v, len, plen
                            ));
                        }
                    }
                    if cur_lcm % prev_lcm != 0 {
                        violations += 1;
                        details.push(format!(
                            "order chain violated: word {} level {} ({} vs {})",
                            w, level, cur_lcm, prev_lcm
                        ));
                    }
                    prev_len = cur_len;
                    prev_lcm = cur_lcm;
                }
            }
            details.push(format!("500 words to level 5, {} violations", violations));
            Ok(violations == 0)
        })
    }
}

/// Criterion 6: the Hanoi element ab is infinite-order with certificate
/// (s=3, v=[2]) and order 3^n modulo level n.
pub struct HanoiInfiniteOrder;

impl LemmaCheck for HanoiInfiniteOrder {
    fn id(&self) -> &'static str {
        "hanoi-infinite-order"
    }
    fn lemma(&self) -> &'static str {
        "hanoi"
    }
    fn criterion(&self) -> usize {
        6
    }
    fn title(&self) -> &'static str {
        "Hanoi ab: certificate (s=3, v=[2]) and order 3^n mod level n"
    }
    fn time_limit_secs(&self) -> Option<u64> {
        Some(30)
    }
    fn run(&self) -> CheckOutcome {
        run_body(self.time_limit_secs(), |details| {
            let h = catalog::hanoi()?;
            let ab = h.parse_word("ab")?;
            let mut solver = Solver::default();
            let mut pass = true;
            let cert = infinite_order_certificate(&ab, 6, &mut solver)?;
            match &cert {
                Some(c) if c.s == 3 && c.v == Vertex::new(vec![2]) => {
                    details.push(format!("certificate s={} v={}", c.s, c.v));
                }
                other => {
                    details.push(format!("unexpected certificate {:?}", other));
                    pass = false;
                }
            }
            for n in 1..=6usize {
                let s = orbitlab::order_mod_level(&ab, n)?;
                let expected = 3u64.pow(n as u32);
                details.push(format!("order mod level {}: {} (expect {})", n, s, expected));
                pass &= s == expected;
            }
            match solver.order(&ab, &OrderPolicy::default())? {
                OrderResult::Infinite { certificate } => {
                    pass &= certificate.s == 3 && certificate.v == Vertex::new(vec![2]);
                    details.push("order() reports infinite with the same certificate".into());
                }
                other => {
                    details.push(format!("order() returned {:?}", other));
                    pass = false;
                }
            }
            Ok(pass)
        })
    }
}

/// Criterion 7: orbit of v_n has length exactly l_1 ... l_n for random
/// nested-label chains.
pub struct IteratedWreath;

impl LemmaCheck for IteratedWreath {
    fn id(&self) -> &'static str {
        "iterated-wreath"
    }
    fn lemma(&self) -> &'static str {
        "iterated-wreath"
    }
    fn criterion(&self) -> usize {
        7
    }
    fn title(&self) -> &'static str {
        "nested-label construction: orbit lengths multiply along the chain"
    }
    fn run(&self) -> CheckOutcome {
        run_body(None, |details| {
            let t3 = DegreeSequence::constant(3);
            let perms: Vec<Permutation> = ["(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"]
                .iter()
                .map(|s| Permutation::parse(3, s).expect("valid cycles"))
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0007);
            let mut pass = true;
            let mut seen_lengths = (false, false);
            for chain_no in 0..10 {
                let mut chain: Vec<(Permutation, Vertex)> = vec![];
                let mut stops: Vec<(Vertex, u64)> = vec![]; // (v_n, expected length)
                let mut v = Vertex::root();
                let mut expected = 1u64;
                for _ in 0..5 {
                    let perm = perms.choose(&mut rng).expect("non-empty").clone();
                    chain.push((perm.clone(), v.clone()));
                    let moved: Vec<u32> = (1..=3).filter(|&c| perm.apply(c) != c).collect();
                    let child = *moved.choose(&mut rng).expect("non-trivial perm");
                    let mut l = 1u64;
                    let mut cur = perm.apply(child);
                    while cur != child {
                        l += 1;
                        cur = perm.apply(cur);
                    }
                    match l {
                        2 => seen_lengths.0 = true,
                        3 => seen_lengths.1 = true,
                        _ => {}
                    }
                    expected *= l;
                    v = v.child(child);
                    stops.push((v.clone(), expected));
                }
                let f = catalog::iterated_wreath_infinite_order(&t3, &chain)?;
                for (n, (vn, exp)) in stops.iter().enumerate() {
                    let got = orbitlab::orbit(&f, vn)?.len();
                    if got != *exp {
                        details.push(format!(
                            "chain {}: orbit of v_{} has length {} (expect {})",
                            chain_no,
                            n + 1,
                            got,
                            exp
                        ));
                        pass = false;
                    }
                }
                details.push(format!(
                    "chain {}: lengths verified up to level 5 (product {})",
                    chain_no, expected
                ));
            }
            if !(seen_lengths.0 && seen_lengths.1) {
                details.push("random chains did not mix cycle lengths 2 and 3".into());
                pass = false;
            }
            Ok(pass)
        })
    }
}

/// Criterion 4: the wreath-embedding order |<g,f>| = |g|^m * m on generated
/// finitary instances over T_2 / T_3 truncations, including D_8.
pub struct WreathEmbedding;

struct Instance {
    tree: u32,
    f_labels: BTreeMap<Vertex, Permutation>,
    g_labels: BTreeMap<Vertex, Permutation>,
    v: Vertex,
    depth: usize,
    note: &'static str,
}

fn instances() -> Result<Vec<Instance>> {
    let mut out = vec![];
    let rooted = |d: u32, text: &str| -> Result<BTreeMap<Vertex, Permutation>> {
        let mut m = BTreeMap::new();
        m.insert(Vertex::root(), Permutation::parse(d, text)?);
        Ok(m)
    };
    let single = |d: u32, v: &Vertex, text: &str| -> Result<BTreeMap<Vertex, Permutation>> {
        let mut m = BTreeMap::new();
        m.insert(v.clone(), Permutation::parse(d, text)?);
        Ok(m)
    };
    let v1 = Vertex::new(vec![1]);
    let v11 = Vertex::new(vec![1, 1]);
    let v12 = Vertex::new(vec![1, 2]);

    // T_2 family around f = rooted (1 2), m = 2
    for (g_at, note) in [(&v1, "D8"), (&v11, "g one level deeper"), (&v12, "g at [1,2]")] {
        out.push(Instance {
            tree: 2,
            f_labels: rooted(2, "(1 2)")?,
            g_labels: single(2, g_at, "(1 2)")?,
            v: v1.clone(),
            depth: 3,
            note,
        });
    }
    // g supported on two vertices of one subtree
    let mut g2 = single(2, &v11, "(1 2)")?;
    g2.insert(v12.clone(), Permutation::parse(2, "(1 2)")?);
    out.push(Instance {
        tree: 2,
        f_labels: rooted(2, "(1 2)")?,
        g_labels: g2,
        v: v1.clone(),
        depth: 3,
        note: "g = (swap, swap) below [1]",
    });
    // g of order 4 (labels at [1] and [1,1])
    let mut g4 = single(2, &v1, "(1 2)")?;
    g4.insert(v11.clone(), Permutation::parse(2, "(1 2)")?);
    out.push(Instance {
        tree: 2,
        f_labels: rooted(2, "(1 2)")?,
        g_labels: g4.clone(),
        v: v1.clone(),
        depth: 3,
        note: "|g| = 4",
    });
    // f of order 4: labels at root and [1]; regular orbit at level 2
    let mut f4 = rooted(2, "(1 2)")?;
    f4.insert(v1.clone(), Permutation::parse(2, "(1 2)")?);
    out.push(Instance {
        tree: 2,
        f_labels: f4,
        g_labels: single(2, &v11, "(1 2)")?,
        v: v11.clone(),
        depth: 4,
        note: "|f| = 4, v on level 2",
    });
    // degenerate g = identity
    out.push(Instance {
        tree: 2,
        f_labels: rooted(2, "(1 2)")?,
        g_labels: BTreeMap::new(),
        v: v1.clone(),
        depth: 3,
        note: "degenerate g = 1",
    });

    // T_3 families
    for f_text in ["(1 2 3)", "(1 3 2)", "(1 2)", "(1 3)"] {
        for g_at in [&v1, &v11] {
            for g_text in ["(1 2)", "(1 2 3)"] {
                out.push(Instance {
                    tree: 3,
                    f_labels: rooted(3, f_text)?,
                    g_labels: single(3, g_at, g_text)?,
                    v: v1.clone(),
                    depth: 3,
                    note: "T_3 generated",
                });
            }
        }
    }
    Ok(out)
}

impl LemmaCheck for WreathEmbedding {
    fn id(&self) -> &'static str {
        "wreath-embedding"
    }
    fn lemma(&self) -> &'static str {
        "2.5"
    }
    fn criterion(&self) -> usize {
        4
    }
    fn title(&self) -> &'static str {
        "<g,f> is the regular wreath product <g> wr <f> on finite truncations"
    }
    fn time_limit_secs(&self) -> Option<u64> {
        Some(60)
    }
    fn run(&self) -> CheckOutcome {
        run_body(self.time_limit_secs(), |details| {
            let mut pass = true;
            let all = instances()?;
            details.push(format!("{} instances", all.len()));
            if all.len() < 20 {
                details.push("fewer than 20 instances".into());
                pass = false;
            }
            for inst in &all {
                let seq = DegreeSequence::constant(inst.tree);
                let group = catalog::finitary_group(
                    &seq,
                    vec![
                        ("f", inst.f_labels.clone()),
                        ("g", inst.g_labels.clone()),
                    ],
                )?;
                let f = group.gen_word("f")?;
                let g = group.gen_word("g")?;
                let mut solver = Solver::default();
                let ok = verify_wreath_embedding(&f, &g, &inst.v, inst.depth, &mut solver)?;
                if !ok {
                    details.push(format!("order mismatch: {}", inst.note));
                    pass = false;
                }
                if inst.note == "D8" {
                    let mut tr = Truncator::new(&group, inst.depth)?;
                    let tables = vec![tr.word_table(&f)?, tr.word_table(&g)?];
                    let order = truncation::generated_order(&tables, truncation::ENUM_CAP)?;
                    details.push(format!("D8 instance: |<g,f>| = {}", order));
                    if order != 8 {
                        pass = false;
                    }
                }
            }
            // sanity: finitary orders certified; L_1 enumeration intact
            let t2 = DegreeSequence::constant(2);
            if level_vertices(&t2, 1).len() != 2 {
                return Err(Error::Unsupported("level enumeration broken".into()));
            }
            Ok(pass)
        })
    }
}
