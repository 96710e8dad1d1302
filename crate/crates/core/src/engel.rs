//! Iterated Engel commutators and the Engel-condition machinery: degree
//! probing, the cyclic-wreath degree formula, the psi closed form for
//! [y,_k x], the right-Engel witness construction, the GGS commutator
//! displays and non-Engel recursion, and the left-Engel survey harness.

use std::sync::Arc;

use crate::autom::{in_rigid_stabilizer, GroupDef, Letter, RistVerdict, Word};
use crate::catalog;
use crate::error::{Error, Result};
use crate::orbitlab::Orbit;
use crate::perm::Permutation;
use crate::reduce;
use crate::tree::Vertex;
use crate::util::{inv_mod, is_prime, log_exact};
use crate::wordprob::{OrderPolicy, OrderResult, Solver};

/// Probe outcome for the Engel condition on one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngelVerdict {
    /// [g,_n x] certified trivial and [g,_{n-1} x] certified non-trivial:
    /// the Engel degree of x on g is exactly n.
    VanishesAt(u32),
    /// [g,_N x] certified non-trivial at the probe bound N.
    SurvivesTo(u32),
    /// Some triviality test hit the budget before a decision.
    Undecided,
}

#[derive(Debug, Clone)]
pub struct EngelProbe {
    pub g: Word,
    pub verdict: EngelVerdict,
}

#[derive(Debug, Clone)]
pub struct EngelSummary {
    pub all_vanish: bool,
    pub counterexample: Option<Word>,
    pub max_degree_seen: Option<u32>,
}

/// Engel evidence about one candidate x: outcomes of [g,_n x] over probes g.
#[derive(Debug, Clone)]
pub struct EngelReport {
    pub x: Word,
    pub order: Option<OrderResult>,
    pub probes: Vec<EngelProbe>,
    pub summary: EngelSummary,
}

/// The n-fold left-normed commutator [g,_n x]; [g,_0 x] = g.
pub fn engel_commutator(g: &Word, x: &Word, n: u32) -> Result<Word> {
    let mut cur = g.clone();
    for _ in 0..n {
        cur = cur.commutator(x)?;
    }
    Ok(cur)
}

/// Least n <= max_n with [g,_n x] certified trivial, the survival bound, or
/// Undecided when a budget interferes with "least".
pub fn engel_degree(g: &Word, x: &Word, max_n: u32, solver: &mut Solver) -> Result<EngelVerdict> {
    let mut undecided_seen = false;
    let mut cur = g.clone();
    let mut last_nontrivial = false;
    match solver.is_trivial(&cur) {
        crate::wordprob::TrivialityVerdict::Trivial => return Ok(EngelVerdict::VanishesAt(0)),
        crate::wordprob::TrivialityVerdict::Nontrivial(_) => last_nontrivial = true,
        crate::wordprob::TrivialityVerdict::UndecidedAtBound => undecided_seen = true,
    }
    for n in 1..=max_n {
        cur = cur.commutator(x)?;
        match solver.is_trivial(&cur) {
            crate::wordprob::TrivialityVerdict::Trivial => {
                return Ok(if undecided_seen {
                    EngelVerdict::Undecided
                } else {
                    EngelVerdict::VanishesAt(n)
                });
            }
            crate::wordprob::TrivialityVerdict::Nontrivial(_) => last_nontrivial = true,
            crate::wordprob::TrivialityVerdict::UndecidedAtBound => {
                undecided_seen = true;
                last_nontrivial = false;
            }
        }
    }
    Ok(if last_nontrivial {
        EngelVerdict::SurvivesTo(max_n)
    } else {
        EngelVerdict::Undecided
    })
}

/// Engel degree of the top generator x on g = (y,1,...,1) in C_q ≀ C_m for
/// finite p-groups: |x| + (1/p)(log_p |y| - 1)(p-1)|x|, exact integer
/// arithmetic. `m = |x|`, `q = |y|`, both powers of p with m, q >= p.
pub fn liebeck_degree(p: u64, m: u64, q: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{} is not prime", p)));
    }
    let a = log_exact(p, m).filter(|&a| a >= 1).ok_or_else(|| {
        Error::Precondition(format!("m = {} is not a positive power of {}", m, p))
    })?;
    let b = log_exact(p, q).filter(|&b| b >= 1).ok_or_else(|| {
        Error::Precondition(format!("q = {} is not a positive power of {}", q, p))
    })?;
    let _ = a;
    Ok(m + (b as u64 - 1) * (p - 1) * (m / p))
}

/// The closed form for psi([y,_k x]) when y = a·z with a the rooted standard
/// d-cycle, z ∈ St(1), and x ∈ St(1): coordinate i is
/// [(x_{i-1}^{-1})^{z_i}, _{k-1} x_i]^{x_i} (indices mod d). Computed from
/// the right-hand side, not by iterating the commutator.
pub fn engel_formula_psi(y: &Word, x: &Word, k: u32) -> Result<Vec<Word>> {
    if k < 2 {
        return Err(Error::Precondition("the closed form needs k >= 2".into()));
    }
    let d = y.tree().degree_at(1);
    if y.label(&Vertex::root())? != Permutation::standard_cycle(d) {
        return Err(Error::Precondition(
            "y must have the standard cycle (1 2 ... d) as root label".into(),
        ));
    }
    if !x.stabilizes_level(1)? {
        return Err(Error::NotInStabilizer(1));
    }
    let section = |w: &Word, i: u32| w.section(&Vertex::new(vec![i]));
    let mut out = Vec::with_capacity(d as usize);
    for i in 1..=d {
        let prev = if i == 1 { d } else { i - 1 };
        let x_i = section(x, i)?;
        let x_prev = section(x, prev)?;
        // z = a^{-1} y has sections z_i = y_{sigma^{-1}(i)} = y_{i-1}
        let z_i = section(y, prev)?;
        let base = x_prev.inverse().conjugate(&z_i)?;
        let comm = engel_commutator(&base, &x_i, k - 1)?;
        out.push(comm.conjugate(&x_i)?);
    }
    Ok(out)
}

/// Parameters for the right-Engel witness construction.
#[derive(Debug, Clone)]
pub struct RightEngelParams {
    /// A non-trivial f-orbit (reduction happens at this orbit, in its
    /// iteration order).
    pub orbit: Orbit,
    /// Elements of Rist(orbit.base) whose sections at the base form a
    /// non-Engel pair (a, b) = (psi_v(r1), psi_v(r2)).
    pub r1: Word,
    pub r2: Word,
    pub max_k: u32,
    pub rist_depth: usize,
}

/// Build the witness x = r1·(r2^{-1})^{y^{-1}} over the reduced tree at the
/// orbit, where y is the induced automorphism, and certify [y,_k x] != 1 for
/// 2 <= k <= max_k together with the first-coordinate identity
/// psi([y,_k x])_1 = [b,_{k-1} a]^a. Evidence that f is not right Engel.
pub fn right_engel_witness(
    f: &Word,
    params: &RightEngelParams,
    solver: &mut Solver,
) -> Result<EngelReport> {
    let o = &params.orbit;
    if o.is_trivial() {
        return Err(Error::Precondition("the orbit is trivial".into()));
    }
    for (name, r) in [("r1", &params.r1), ("r2", &params.r2)] {
        match in_rigid_stabilizer(r, &o.base, params.rist_depth, solver)? {
            RistVerdict::YesCertified => {}
            other => {
                return Err(Error::Precondition(format!(
                    "{} not certified in Rist({}): {:?}",
                    name, o.base, other
                )))
            }
        }
    }
    // the component pair: must be non-Engel out to the probe bound
    let a = params.r1.section(&o.base)?;
    let b = params.r2.section(&o.base)?;
    for k in 1..=params.max_k {
        if !solver.is_trivial(&engel_commutator(&b, &a, k)?).is_nontrivial() {
            return Err(Error::Precondition(format!(
                "no non-Engel pair supplied: [b,_{} a] not certified non-trivial",
                k
            )));
        }
    }

    let rt = reduce::reduced_tree(f.tree(), o.vertices.clone())?;
    let h = reduce::induce_group(&rt, &[("y", f), ("r1", &params.r1), ("r2", &params.r2)])?;
    let y = h.gen_word("y")?;
    let r1 = h.gen_word("r1")?;
    let r2 = h.gen_word("r2")?;
    let d = o.len() as u32;
    if y.label(&Vertex::root())? != Permutation::standard_cycle(d) {
        return Err(Error::Precondition(
            "induced root label is not the standard cycle".into(),
        ));
    }
    let x = r1.multiply(&r2.inverse().conjugate(&y.inverse())?)?;

    // psi(x) = (a, 1, ..., 1, (b^{-1})^{z_1^{-1}}) with z_1 = y_d
    let a_ind = r1.section(&Vertex::new(vec![1]))?;
    let b_ind = r2.section(&Vertex::new(vec![1]))?;
    let z1 = y.section(&Vertex::new(vec![d]))?;
    let expected_last = b_ind.inverse().conjugate(&z1.inverse())?;
    if !solver
        .equal(&x.section(&Vertex::new(vec![1]))?, &a_ind)?
        .is_trivial()
    {
        return Err(Error::Precondition("psi(x) coordinate 1 mismatch".into()));
    }
    for i in 2..d {
        if !solver
            .is_trivial(&x.section(&Vertex::new(vec![i]))?)
            .is_trivial()
        {
            return Err(Error::Precondition(format!(
                "psi(x) coordinate {} not trivial",
                i
            )));
        }
    }
    if !solver
        .equal(&x.section(&Vertex::new(vec![d]))?, &expected_last)?
        .is_trivial()
    {
        return Err(Error::Precondition("psi(x) last coordinate mismatch".into()));
    }

    for k in 2..=params.max_k {
        let c = engel_commutator(&y, &x, k)?;
        if !solver.is_trivial(&c).is_nontrivial() {
            return Err(Error::Precondition(format!(
                "[y,_{} x] not certified non-trivial",
                k
            )));
        }
        let first = c.section(&Vertex::new(vec![1]))?;
        let target = engel_commutator(&b_ind, &a_ind, k - 1)?.conjugate(&a_ind)?;
        if !solver.equal(&first, &target)?.is_trivial() {
            return Err(Error::Precondition(format!(
                "psi([y,_{} x]) coordinate 1 differs from [b,_{} a]^a",
                k,
                k - 1
            )));
        }
    }

    Ok(EngelReport {
        x: x.clone(),
        order: None,
        probes: vec![EngelProbe {
            g: y,
            verdict: EngelVerdict::SurvivesTo(params.max_k),
        }],
        summary: EngelSummary {
            all_vanish: false,
            counterexample: Some(x),
            max_degree_seen: None,
        },
    })
}

/// Defining vector of a GGS group: p odd prime, e = (e_1,...,e_{p-1}) over
/// F_p, not all zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GGSVector {
    p: u64,
    e: Vec<u64>,
}

impl GGSVector {
    pub fn new(p: u64, raw: &[i64]) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::Precondition(format!("{} is not an odd prime", p)));
        }
        if raw.len() != (p - 1) as usize {
            return Err(Error::Precondition(format!(
                "vector length {} != p-1 = {}",
                raw.len(),
                p - 1
            )));
        }
        let e: Vec<u64> = raw.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        if e.iter().all(|&x| x == 0) {
            return Err(Error::Precondition("zero vector".into()));
        }
        Ok(GGSVector { p, e })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// e_k, 1-based.
    pub fn entry(&self, k: usize) -> u64 {
        self.e[k - 1]
    }

    pub fn entries(&self) -> &[u64] {
        &self.e
    }

    pub fn is_constant(&self) -> bool {
        self.e.iter().all(|&x| x == self.e[0])
    }

    /// e_i = e_{p-i} for all i.
    pub fn is_symmetric(&self) -> bool {
        (1..self.p as usize).all(|i| self.entry(i) == self.entry(self.p as usize - i))
    }

    /// Sum of entries zero in F_p (the torsion case).
    pub fn is_periodic(&self) -> bool {
        self.e.iter().sum::<u64>() % self.p == 0
    }

    pub fn group(&self) -> Result<Arc<GroupDef>> {
        let raw: Vec<i64> = self.e.iter().map(|&x| x as i64).collect();
        catalog::ggs(self.p, &[raw])
    }
}

/// The first-level decompositions of [b,a] and [b,a,a] as explicit exponent
/// words, each coordinate verified against the directly computed section.
#[derive(Debug, Clone)]
pub struct GgsPsi {
    pub psi_ba: Vec<Word>,
    pub psi_baa: Vec<Word>,
    /// Least i with e_i - 2e_{i+1} + e_{i+2} != 0 in F_p, with the
    /// corresponding coordinate (i+2) of psi([b,a,a]); None iff the second
    /// differences all vanish (in particular for constant vectors).
    pub middle_nonzero: Option<(usize, usize)>,
}

pub fn ggs_commutator_psi(v: &GGSVector, solver: &mut Solver) -> Result<GgsPsi> {
    let p = v.p() as usize;
    let group = v.group()?;
    let a = group.gen_word("a")?;
    let b = group.gen_word("b")?;
    let word = |sylls: &[(&str, i64)]| group.word(sylls);
    let e = |k: usize| v.entry(k) as i64;

    // psi([b,a]) = (a^{-e_1} b, a^{e_1-e_2}, ..., a^{e_{p-2}-e_{p-1}}, b^{-1} a^{e_{p-1}})
    let mut psi_ba = Vec::with_capacity(p);
    psi_ba.push(word(&[("a", -e(1)), ("b", 1)])?);
    for i in 2..p {
        psi_ba.push(word(&[("a", e(i - 1) - e(i))])?);
    }
    psi_ba.push(word(&[("b", -1), ("a", e(p - 1))])?);

    // psi([b,a,a]) = (b^{-1}a^{e_1}b^{-1}a^{e_{p-1}}, a^{-2e_1+e_2}b,
    //                a^{e_1-2e_2+e_3}, ..., a^{e_{p-3}-2e_{p-2}+e_{p-1}},
    //                a^{-e_{p-1}}ba^{e_{p-2}-e_{p-1}})
    let mut psi_baa = Vec::with_capacity(p);
    psi_baa.push(word(&[("b", -1), ("a", e(1)), ("b", -1), ("a", e(p - 1))])?);
    psi_baa.push(word(&[("a", -2 * e(1) + e(2)), ("b", 1)])?);
    for i in 3..p {
        psi_baa.push(word(&[("a", e(i - 2) - 2 * e(i - 1) + e(i))])?);
    }
    psi_baa.push(word(&[("a", -e(p - 1)), ("b", 1), ("a", e(p - 2) - e(p - 1))])?);

    let comm_ba = b.commutator(&a)?;
    let comm_baa = comm_ba.commutator(&a)?;
    for (i, expected) in psi_ba.iter().enumerate() {
        let sec = comm_ba.section(&Vertex::new(vec![i as u32 + 1]))?;
        if !solver.equal(&sec, expected)?.is_trivial() {
            return Err(Error::Precondition(format!(
                "psi([b,a]) coordinate {} mismatch",
                i + 1
            )));
        }
    }
    for (i, expected) in psi_baa.iter().enumerate() {
        let sec = comm_baa.section(&Vertex::new(vec![i as u32 + 1]))?;
        if !solver.equal(&sec, expected)?.is_trivial() {
            return Err(Error::Precondition(format!(
                "psi([b,a,a]) coordinate {} mismatch",
                i + 1
            )));
        }
    }

    let pp = v.p();
    let middle_nonzero = (1..=p.saturating_sub(3)).find_map(|i| {
        let second_diff =
            (v.entry(i) + 2 * (pp - v.entry(i + 1)) % pp + v.entry(i + 2)) % pp;
        (second_diff != 0).then_some((i, i + 2))
    });

    Ok(GgsPsi {
        psi_ba,
        psi_baa,
        middle_nonzero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgsBranch {
    /// Non-symmetric vector: projections of [b,a].
    Comm2,
    /// Symmetric vector: projections of [b,a,a].
    Comm3,
}

#[derive(Debug, Clone)]
pub struct GgsProjection {
    pub vertex: Vertex,
    pub branch: GgsBranch,
    /// The two verified projections: a non-zero power of a, and a word with
    /// a b-syllable — together they generate the group.
    pub generators_found: bool,
}

/// Find a first-level vertex v with psi_v-projections of the commutator
/// subgroup generating the whole group: psi_v([b,a]) = a^{e_i-e_{i+1}} and
/// psi_v([b,a]^{a^i}) = a^{-e_1}b for non-symmetric vectors (and the [b,a,a]
/// analogue for symmetric ones). Errors on constant vectors, which the
/// argument excludes.
pub fn ggs_level_one_projection_check(
    v: &GGSVector,
    solver: &mut Solver,
) -> Result<GgsProjection> {
    if v.is_constant() {
        return Err(Error::Precondition(
            "constant defining vector: excluded case".into(),
        ));
    }
    let p = v.p() as usize;
    let pp = v.p();
    let group = v.group()?;
    let a = group.gen_word("a")?;
    let b = group.gen_word("b")?;
    let word = |sylls: &[(&str, i64)]| group.word(sylls);
    let e = |k: usize| v.entry(k) as i64;

    let (branch, i, vertex, comm, target1) = if !v.is_symmetric() {
        let i = (1..=p - 2)
            .find(|&i| v.entry(i) != v.entry(i + 1))
            .expect("non-constant vector has adjacent difference");
        let comm = b.commutator(&a)?;
        let target1 = word(&[("a", e(i) - e(i + 1))])?;
        (GgsBranch::Comm2, i, Vertex::new(vec![i as u32 + 1]), comm, target1)
    } else {
        let i = (1..=p - 3)
            .find(|&i| (v.entry(i) + 2 * (pp - v.entry(i + 1)) % pp + v.entry(i + 2)) % pp != 0)
            .ok_or_else(|| {
                Error::Precondition(
                    "symmetric vector with vanishing second differences is constant".into(),
                )
            })?;
        let comm = b.commutator(&a)?.commutator(&a)?;
        let target1 = word(&[("a", e(i) - 2 * e(i + 1) + e(i + 2))])?;
        (GgsBranch::Comm3, i, Vertex::new(vec![i as u32 + 2]), comm, target1)
    };

    let proj1 = comm.section(&vertex)?;
    if !solver.equal(&proj1, &target1)?.is_trivial() {
        return Err(Error::Precondition("first projection mismatch".into()));
    }
    let conj = comm.conjugate(&a.power(i as i64))?;
    let proj2 = conj.section(&vertex)?;
    let target2 = match branch {
        GgsBranch::Comm2 => word(&[("a", -e(1)), ("b", 1)])?,
        GgsBranch::Comm3 => word(&[("a", -2 * e(1) + e(2)), ("b", 1)])?,
    };
    if !solver.equal(&proj2, &target2)?.is_trivial() {
        return Err(Error::Precondition("second projection mismatch".into()));
    }
    // a non-zero power of a (i was chosen so) plus a word with a b-syllable
    // generate the group
    Ok(GgsProjection {
        vertex,
        branch,
        generators_found: true,
    })
}

/// The non-Engel recursion in a GGS group: pick i with e_{p-i} != 0 and
/// λ = -i·e_{p-i}^{-1}, so that psi((b^{-λ})^{a^i}) ends in a^i; then the
/// last coordinate of psi([a^i, b^λ,_k b^λ]^{b^{-λ}}) equals
/// [a^i, b^λ,_{k-1} b^λ], and no iterated commutator can vanish. Certifies
/// the commutators non-trivial for k <= max_k.
pub fn ggs_non_engel_witness(
    v: &GGSVector,
    max_k: u32,
    solver: &mut Solver,
) -> Result<EngelReport> {
    let p = v.p();
    let group = v.group()?;
    let a = group.gen_word("a")?;
    let b = group.gen_word("b")?;

    let i = (1..p)
        .find(|&i| v.entry((p - i) as usize) != 0)
        .expect("vector is not all zero");
    let lambda = (p - i) % p * inv_mod(v.entry((p - i) as usize), p) % p;
    debug_assert_ne!(lambda, 0);
    let gi = a.power(i as i64);
    let x = b.power(lambda as i64);

    // psi((b^{-λ})^{a^i}) = (*, ..., *, a^i)
    let w = x.inverse().conjugate(&gi)?;
    let last = w.section(&Vertex::new(vec![p as u32]))?;
    if !solver.equal(&last, &gi)?.is_trivial() {
        return Err(Error::Precondition(
            "psi identity last coordinate mismatch".into(),
        ));
    }

    for k in 2..=max_k {
        let ck = engel_commutator(&gi, &x, k)?;
        let lhs = ck.conjugate(&x.inverse())?;
        let last = lhs.section(&Vertex::new(vec![p as u32]))?;
        let prev = engel_commutator(&gi, &x, k - 1)?;
        if !solver.equal(&last, &prev)?.is_trivial() {
            return Err(Error::Precondition(format!(
                "recursion mismatch at k = {}",
                k
            )));
        }
    }
    for k in 1..=max_k {
        if !solver.is_trivial(&engel_commutator(&gi, &x, k)?).is_nontrivial() {
            return Err(Error::Precondition(format!(
                "[a^i,_{} b^λ] not certified non-trivial",
                k
            )));
        }
    }

    Ok(EngelReport {
        x: x.clone(),
        order: Some(solver.order(&x, &OrderPolicy::default())?),
        probes: vec![EngelProbe {
            g: gi.clone(),
            verdict: EngelVerdict::SurvivesTo(max_k),
        }],
        summary: EngelSummary {
            all_vanish: false,
            counterexample: Some(gi),
            max_degree_seen: None,
        },
    })
}

/// Parameters for the left-Engel survey.
#[derive(Debug, Clone)]
pub struct SurveyParams {
    /// Syllable-length bound for candidates and probes.
    pub word_length: usize,
    pub max_k: u32,
    pub order_policy: OrderPolicy,
}

impl Default for SurveyParams {
    fn default() -> Self {
        SurveyParams {
            word_length: 3,
            max_k: 8,
            order_policy: OrderPolicy::with_max_level(12),
        }
    }
}

/// Enumerate the distinct non-empty reduced words of bounded syllable
/// length: adjacent syllables use distinct generators, exponents run over
/// the canonical range of each generator.
pub fn enumerate_words(group: &Arc<GroupDef>, max_syllables: usize) -> Vec<Word> {
    let exp_range = |gen: usize| -> Vec<i64> {
        match group.generators()[gen].declared_order {
            Some(m) => (1..m as i64).collect(),
            None => vec![1, -1],
        }
    };
    let mut out = vec![];
    let mut stack: Vec<Letter> = vec![];
    fn extend(
        group: &Arc<GroupDef>,
        exp_range: &dyn Fn(usize) -> Vec<i64>,
        stack: &mut Vec<Letter>,
        out: &mut Vec<Word>,
        remaining: usize,
    ) {
        if remaining == 0 {
            return;
        }
        for gen in 0..group.generators().len() {
            if stack.last().map(|l| l.gen) == Some(gen) {
                continue;
            }
            for exp in exp_range(gen) {
                stack.push(Letter::new(gen, Vertex::root(), exp));
                out.push(Word::from_letters(
                    group.clone(),
                    group.tree().clone(),
                    stack.clone(),
                ));
                extend(group, exp_range, stack, out, remaining - 1);
                stack.pop();
            }
        }
    }
    extend(group, &exp_range, &mut stack, &mut out, max_syllables);
    out
}

/// Probe every candidate x of bounded length against every probe g of the
/// same length bound, classifying x by certified order and Engel evidence.
pub fn left_engel_survey(
    group: &Arc<GroupDef>,
    params: &SurveyParams,
    solver: &mut Solver,
) -> Result<Vec<EngelReport>> {
    let candidates = enumerate_words(group, params.word_length);
    let mut reports = Vec::with_capacity(candidates.len());
    for x in &candidates {
        let order = solver.order(x, &params.order_policy)?;
        let mut probes = Vec::with_capacity(candidates.len());
        let mut all_vanish = true;
        let mut counterexample = None;
        let mut max_degree_seen = None;
        for g in &candidates {
            let verdict = engel_degree(g, x, params.max_k, solver)?;
            match verdict {
                EngelVerdict::VanishesAt(n) => {
                    max_degree_seen = Some(max_degree_seen.unwrap_or(0).max(n));
                }
                EngelVerdict::SurvivesTo(_) => {
                    all_vanish = false;
                    if counterexample.is_none() {
                        counterexample = Some(g.clone());
                    }
                }
                EngelVerdict::Undecided => {
                    all_vanish = false;
                }
            }
            probes.push(EngelProbe {
                g: g.clone(),
                verdict,
            });
        }
        reports.push(EngelReport {
            x: x.clone(),
            order: Some(order),
            probes,
            summary: EngelSummary {
                all_vanish,
                counterexample,
                max_degree_seen,
            },
        });
    }
    Ok(reports)
}
