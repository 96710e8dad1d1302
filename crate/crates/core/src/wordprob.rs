//! The word problem: triviality, equality, and element orders.
//!
//! Triviality uses the coinductive reading: an automorphism is trivial iff
//! every iterated section has identity root label. The closure of a word
//! under first-level sections is explored breadth-first with memoization on
//! normal forms, which makes the check finite for contracting inputs and for
//! finitary elements; a configurable budget turns pathological inputs into
//! `UndecidedAtBound` instead of divergence.

use std::collections::{HashMap, HashSet};

use crate::autom::Word;
use crate::error::Result;
use crate::orbitlab;
use crate::tree::Vertex;

/// Outcome of a triviality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivialityVerdict {
    /// Certified trivial: the whole section closure has identity root labels.
    Trivial,
    /// Certified non-trivial; the vertex carries a non-identity label.
    Nontrivial(Vertex),
    /// Closure exceeded the budget before a decision.
    UndecidedAtBound,
}

impl TrivialityVerdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TrivialityVerdict::Trivial)
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, TrivialityVerdict::Nontrivial(_))
    }
}

/// Result of an order computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderResult {
    /// `certified` requires lcm stabilization and certified triviality of w^m;
    /// stabilization alone is reported uncertified.
    Finite { m: u64, certified: bool },
    /// Order of the action on the deepest level reached.
    LowerBound { bound: u64 },
    /// Self-reproduction certificate (see `orbitlab`).
    Infinite {
        certificate: orbitlab::InfiniteOrderCertificate,
    },
}

impl OrderResult {
    pub fn certified_finite(&self) -> Option<u64> {
        match self {
            OrderResult::Finite { m, certified: true } => Some(*m),
            _ => None,
        }
    }
}

/// Policy for `order`: how deep to scan levels, how large an order to chase,
/// and how many consecutive equal levels count as stabilization.
#[derive(Debug, Clone)]
pub struct OrderPolicy {
    pub max_level: usize,
    pub max_power: u64,
    pub stability_window: usize,
}

impl Default for OrderPolicy {
    fn default() -> Self {
        OrderPolicy {
            max_level: 6,
            max_power: 1 << 20,
            stability_window: 3,
        }
    }
}

impl OrderPolicy {
    pub fn with_max_level(max_level: usize) -> Self {
        OrderPolicy {
            max_level,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
enum Cached {
    Trivial,
    /// Relative witness vertex. Sound, but a cached witness may differ from
    /// the breadth-first-least one when earlier queries populated the cache.
    Nontrivial(Vertex),
}

const CACHE_MAX_SYLLABLES: usize = 256;

/// Word-problem solver with a verdict cache shared across queries.
pub struct Solver {
    budget: usize,
    cache: HashMap<Word, Cached>,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::with_budget(1_000_000)
    }
}

impl Solver {
    pub fn with_budget(budget: usize) -> Self {
        Solver {
            budget,
            cache: HashMap::new(),
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn cache_insert(&mut self, w: &Word, verdict: Cached) {
        if w.syllable_len() <= CACHE_MAX_SYLLABLES {
            self.cache.insert(w.clone(), verdict);
        }
    }

    /// Triviality by memoized section closure, breadth-first. The witness of
    /// a fresh `Nontrivial` is the least vertex (by level, then path) whose
    /// label is not the identity.
    pub fn is_trivial(&mut self, w: &Word) -> TrivialityVerdict {
        if w.is_identity_word() {
            return TrivialityVerdict::Trivial;
        }
        match self.cache.get(w) {
            Some(Cached::Trivial) => return TrivialityVerdict::Trivial,
            Some(Cached::Nontrivial(v)) => return TrivialityVerdict::Nontrivial(v.clone()),
            None => {}
        }

        let mut explored: HashSet<Word> = HashSet::new();
        // (vertex, section word) pairs, lex-ordered within each layer
        let mut frontier: Vec<(Vertex, Word)> = vec![(Vertex::root(), w.clone())];
        // (vertex, word) for reconstructing the witness path when caching
        let mut trail: Vec<(Vertex, Word)> = vec![];
        // least witness implied so far by cache hits
        let mut pending: Option<Vertex> = None;
        explored.insert(w.clone());

        let mut level = 0usize;
        loop {
            if let Some(p) = &pending {
                if p.level() < level {
                    let witness = p.clone();
                    self.record_nontrivial(w, &trail, &witness);
                    return TrivialityVerdict::Nontrivial(witness);
                }
            }
            // root labels of this layer, in lex vertex order
            let mut found: Option<Vertex> = None;
            for (v, word) in &frontier {
                let label = word
                    .label(&Vertex::root())
                    .expect("root label always valid");
                if !label.is_identity() {
                    found = Some(v.clone());
                    break;
                }
            }
            let best = match (found, &pending) {
                (Some(f), Some(p)) if p.level() == level => Some(f.min(p.clone())),
                (Some(f), _) => Some(f),
                (None, Some(p)) if p.level() == level => Some(p.clone()),
                (None, _) => None,
            };
            if let Some(witness) = best {
                self.record_nontrivial(w, &trail, &witness);
                return TrivialityVerdict::Nontrivial(witness);
            }

            // expand one layer
            let mut next = vec![];
            for (v, word) in &frontier {
                trail.push((v.clone(), word.clone()));
                let degree = word.tree().degree_at(1);
                for i in 1..=degree {
                    let child = v.child(i);
                    let sec = word
                        .section(&Vertex::new(vec![i]))
                        .expect("first-level section always valid");
                    if sec.is_identity_word() {
                        continue;
                    }
                    match self.cache.get(&sec) {
                        Some(Cached::Trivial) => continue,
                        Some(Cached::Nontrivial(rel)) => {
                            let candidate = child.join(rel);
                            pending = Some(match pending.take() {
                                Some(p) => p.min(candidate),
                                None => candidate,
                            });
                            continue;
                        }
                        None => {}
                    }
                    if explored.contains(&sec) {
                        continue;
                    }
                    if explored.len() >= self.budget {
                        // sound evidence beats an inconclusive answer
                        if let Some(p) = pending {
                            self.record_nontrivial(w, &trail, &p);
                            return TrivialityVerdict::Nontrivial(p);
                        }
                        return TrivialityVerdict::UndecidedAtBound;
                    }
                    explored.insert(sec.clone());
                    next.push((child, sec));
                }
            }
            frontier = next;
            level += 1;

            if frontier.is_empty() {
                match pending {
                    Some(p) => {
                        self.record_nontrivial(w, &trail, &p);
                        return TrivialityVerdict::Nontrivial(p);
                    }
                    None => {
                        // every word in the closure has identity root label
                        for word in explored {
                            self.cache_insert(&word, Cached::Trivial);
                        }
                        return TrivialityVerdict::Trivial;
                    }
                }
            }
        }
    }

    // Cache the root word and the words along the witness path, each with the
    // witness rebased to its own subtree.
    fn record_nontrivial(&mut self, w: &Word, trail: &[(Vertex, Word)], witness: &Vertex) {
        self.cache_insert(w, Cached::Nontrivial(witness.clone()));
        for (v, word) in trail {
            if let Some(rel) = witness.strip_prefix(v) {
                self.cache_insert(word, Cached::Nontrivial(rel));
            }
        }
    }

    /// Equality as triviality of `w1·w2⁻¹`.
    pub fn equal(&mut self, w1: &Word, w2: &Word) -> Result<TrivialityVerdict> {
        let diff = w1.multiply(&w2.inverse())?;
        Ok(self.is_trivial(&diff))
    }

    /// Order of the automorphism under the given policy: scans order-mod-level
    /// values, certifies on stabilization, and falls back to the
    /// self-reproduction certificate and to lower bounds.
    pub fn order(&mut self, w: &Word, policy: &OrderPolicy) -> Result<OrderResult> {
        if w.is_identity_word() {
            return Ok(OrderResult::Finite {
                m: 1,
                certified: true,
            });
        }
        let mut chain: Vec<u64> = vec![];
        let mut uncertified: Option<u64> = None;
        for n in 1..=policy.max_level {
            let s = orbitlab::order_mod_level(w, n)?;
            if s > policy.max_power {
                return Ok(OrderResult::LowerBound { bound: s });
            }
            chain.push(s);
            let window = policy.stability_window;
            if chain.len() >= window && chain[chain.len() - window..].iter().all(|&x| x == s) {
                match self.is_trivial(&w.power(s as i64)) {
                    TrivialityVerdict::Trivial => {
                        return Ok(OrderResult::Finite {
                            m: s,
                            certified: true,
                        });
                    }
                    TrivialityVerdict::Nontrivial(_) => {
                        // order strictly exceeds s; keep scanning
                        uncertified = None;
                    }
                    TrivialityVerdict::UndecidedAtBound => {
                        uncertified = Some(s);
                    }
                }
            }
        }
        if let Some(cert) = orbitlab::infinite_order_certificate(w, policy.max_level, self)? {
            return Ok(OrderResult::Infinite { certificate: cert });
        }
        match uncertified {
            Some(m) => Ok(OrderResult::Finite {
                m,
                certified: false,
            }),
            None => Ok(OrderResult::LowerBound {
                bound: *chain.last().expect("max_level >= 1"),
            }),
        }
    }
}

/// One-shot triviality with a fresh default solver.
pub fn is_trivial(w: &Word) -> TrivialityVerdict {
    Solver::default().is_trivial(w)
}

/// One-shot equality with a fresh default solver.
pub fn equal(w1: &Word, w2: &Word) -> Result<TrivialityVerdict> {
    Solver::default().equal(w1, w2)
}

/// One-shot order with a fresh default solver.
pub fn order(w: &Word, policy: &OrderPolicy) -> Result<OrderResult> {
    Solver::default().order(w, policy)
}
