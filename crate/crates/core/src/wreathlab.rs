//! Exact finite regular wreath products C_q ≀ C_n as brute-force oracles.
//!
//! Elements are (base tuple, top exponent) with base entries written
//! additively mod q. The top generator x conjugates the base coordinates
//! forward along the cycle (1 2 ... n): (y,1,...,1)^x = (1,y,1,...,1), which
//! fixes the multiplication rule base_i' = base_i + other_{i+t}.

use std::collections::HashSet;

use crate::autom::{in_rigid_stabilizer, RistVerdict, Word};
use crate::error::{Error, Result};
use crate::orbitlab;
use crate::tree::Vertex;
use crate::truncation::{self, Truncator};
use crate::wordprob::{OrderPolicy, Solver};

/// Regular wreath product Y ≀ X of cyclic groups, |Y| = q (base), |X| = n (top).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicWreath {
    q: u64,
    n: u64,
}

/// Element (base tuple, top); carries q so group mismatches are detectable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    q: u64,
    base: Vec<u64>,
    top: u64,
}

impl CyclicWreath {
    pub fn new(q: u64, n: u64) -> Result<Self> {
        if q < 2 || n < 2 {
            return Err(Error::Precondition(
                "wreath factors must have order >= 2".into(),
            ));
        }
        Ok(CyclicWreath { q, n })
    }

    pub fn base_order(&self) -> u64 {
        self.q
    }

    pub fn top_order(&self) -> u64 {
        self.n
    }

    /// q^n * n, if it fits.
    pub fn order(&self) -> Option<u128> {
        let mut size: u128 = 1;
        for _ in 0..self.n {
            size = size.checked_mul(self.q as u128)?;
        }
        size.checked_mul(self.n as u128)
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            q: self.q,
            base: vec![0; self.n as usize],
            top: 0,
        }
    }

    /// The top generator x.
    pub fn top(&self) -> WreathElement {
        WreathElement {
            q: self.q,
            base: vec![0; self.n as usize],
            top: 1,
        }
    }

    /// g = (y, 1, ..., 1) with y the base generator.
    pub fn base_gen(&self) -> WreathElement {
        let mut base = vec![0; self.n as usize];
        base[0] = 1;
        WreathElement {
            q: self.q,
            base,
            top: 0,
        }
    }

    pub fn element(&self, base: Vec<u64>, top: u64) -> Result<WreathElement> {
        if base.len() != self.n as usize {
            return Err(Error::MixedGroups);
        }
        Ok(WreathElement {
            q: self.q,
            base: base.into_iter().map(|b| b % self.q).collect(),
            top: top % self.n,
        })
    }

    fn check(&self, e: &WreathElement) -> Result<()> {
        if e.q != self.q || e.base.len() != self.n as usize {
            return Err(Error::MixedGroups);
        }
        Ok(())
    }

    pub fn mul(&self, a: &WreathElement, b: &WreathElement) -> Result<WreathElement> {
        self.check(a)?;
        self.check(b)?;
        let n = self.n as usize;
        let t = a.top as usize;
        let base = (0..n)
            .map(|i| (a.base[i] + b.base[(i + t) % n]) % self.q)
            .collect();
        Ok(WreathElement {
            q: self.q,
            base,
            top: (a.top + b.top) % self.n,
        })
    }

    pub fn inv(&self, a: &WreathElement) -> Result<WreathElement> {
        self.check(a)?;
        let n = self.n as usize;
        let t = a.top as usize;
        let base = (0..n)
            .map(|i| (self.q - a.base[(i + n - t) % n]) % self.q)
            .collect();
        Ok(WreathElement {
            q: self.q,
            base,
            top: (self.n - a.top) % self.n,
        })
    }

    /// [a, b] = a⁻¹ b⁻¹ a b.
    pub fn comm(&self, a: &WreathElement, b: &WreathElement) -> Result<WreathElement> {
        let mut r = self.inv(a)?;
        r = self.mul(&r, &self.inv(b)?)?;
        r = self.mul(&r, a)?;
        self.mul(&r, b)
    }

    pub fn pow(&self, a: &WreathElement, e: u64) -> Result<WreathElement> {
        let mut r = self.identity();
        for _ in 0..e {
            r = self.mul(&r, a)?;
        }
        Ok(r)
    }

    /// Order by iteration.
    pub fn element_order(&self, a: &WreathElement) -> Result<u64> {
        let mut cur = a.clone();
        let mut k = 1u64;
        while !cur.is_identity() {
            cur = self.mul(&cur, a)?;
            k += 1;
        }
        Ok(k)
    }

    /// All elements, top-major then mixed-radix base order; capped.
    pub fn elements(&self) -> Result<Vec<WreathElement>> {
        let size = self
            .order()
            .filter(|&s| s <= truncation::ENUM_CAP as u128)
            .ok_or(Error::CapExceeded {
                cap: truncation::ENUM_CAP,
                seen: usize::MAX,
            })? as usize;
        let n = self.n as usize;
        let mut out = Vec::with_capacity(size);
        for top in 0..self.n {
            let mut base = vec![0u64; n];
            loop {
                out.push(WreathElement {
                    q: self.q,
                    base: base.clone(),
                    top,
                });
                let mut k = 0;
                while k < n {
                    base[k] += 1;
                    if base[k] < self.q {
                        break;
                    }
                    base[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        Ok(out)
    }
}

impl WreathElement {
    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn top(&self) -> u64 {
        self.top
    }

    pub fn is_identity(&self) -> bool {
        self.top == 0 && self.base.iter().all(|&b| b == 0)
    }
}

/// Outcome of a brute-force Engel degree computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteDegree {
    Degree(u32),
    SurvivesTo(u32),
}

/// Least n with [g,_n x] = 1 by direct iteration, up to max_n.
pub fn brute_engel_degree(
    w: &CyclicWreath,
    x: &WreathElement,
    g: &WreathElement,
    max_n: u32,
) -> Result<BruteDegree> {
    let mut cur = g.clone();
    if cur.is_identity() {
        return Ok(BruteDegree::Degree(0));
    }
    for n in 1..=max_n {
        cur = w.comm(&cur, x)?;
        if cur.is_identity() {
            return Ok(BruteDegree::Degree(n));
        }
    }
    Ok(BruteDegree::SurvivesTo(max_n))
}

/// Exhaustive left-Engel test for x over the whole group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeftEngelCheck {
    LeftEngel,
    /// g on which the commutator sequence cycles without reaching 1.
    Witness(WreathElement),
}

pub fn brute_is_left_engel(w: &CyclicWreath, x: &WreathElement) -> Result<LeftEngelCheck> {
    for g in w.elements()? {
        let mut seen: HashSet<WreathElement> = HashSet::new();
        let mut cur = g.clone();
        loop {
            if cur.is_identity() {
                break;
            }
            if !seen.insert(cur.clone()) {
                // the deterministic sequence entered a cycle avoiding 1
                return Ok(LeftEngelCheck::Witness(g));
            }
            cur = w.comm(&cur, x)?;
        }
    }
    Ok(LeftEngelCheck::LeftEngel)
}

/// |x·g| > |x| for x the top generator and g = (y,1,...,1).
pub fn verify_order_growth(w: &CyclicWreath) -> Result<bool> {
    let xg = w.mul(&w.top(), &w.base_gen())?;
    Ok(w.element_order(&xg)? > w.top_order())
}

/// Check the commutator lower bound: with w = (y_1,...,y_n)x (top exponent
/// 1) and g = (y,1,...,1), the iterated commutators fill the base forward,
///   [g,_i w] = (y^(±1), *, ..., *, y, 1, ..., 1)
/// with the y in position i+1, so [g,_{n-1} w] ≠ 1 and the Engel degree of w
/// on g is at least n.
pub fn comm_lower_bound_check(wr: &CyclicWreath, w: &WreathElement, max_d: u32) -> Result<bool> {
    if w.top() != 1 {
        return Err(Error::Precondition(
            "the displayed commutator form needs top exponent 1".into(),
        ));
    }
    let n = wr.top_order() as usize;
    let q = wr.base_order();
    let g = wr.base_gen();
    let mut cur = g.clone();
    for i in 1..n {
        cur = wr.comm(&cur, w)?;
        let expected_first = if i % 2 == 0 { 1 } else { q - 1 };
        if cur.top() != 0 || cur.base[0] != expected_first || cur.base[i] != 1 {
            return Ok(false);
        }
        if cur.base[i + 1..].iter().any(|&b| b != 0) {
            return Ok(false);
        }
    }
    if n >= 2 && cur.is_identity() {
        return Ok(false); // [g,_{n-1} w] must be non-trivial
    }
    match brute_engel_degree(wr, w, &g, max_d)? {
        BruteDegree::Degree(d) => Ok(d as usize >= n),
        BruteDegree::SurvivesTo(reached) => Ok(reached as usize >= n),
    }
}

/// Coefficient table m_{k,i} from the commutator recursion
/// m_{k,i} = m_{k-1,i-1} - m_{k-1,i} (cyclic index, m_{k,0} = m_{k,n}),
/// with m_{0,1} = 1 and m_{0,i} = 0 otherwise.
#[derive(Debug, Clone)]
pub struct EngelCoefficients {
    pub n: usize,
    /// rows k = 0..=k_max, row k holds m_{k,1..n} (0-based storage)
    pub rows: Vec<Vec<i128>>,
}

impl EngelCoefficients {
    /// Claim (b): some cyclically adjacent pair of entries differs, i.e. the
    /// row is not constant.
    pub fn claim_b_holds(&self, k: usize) -> bool {
        let row = &self.rows[k];
        (0..self.n).any(|j| row[j] != row[(j + self.n - 1) % self.n])
    }

    pub fn claim_b_all(&self) -> bool {
        (0..self.rows.len()).all(|k| self.claim_b_holds(k))
    }
}

pub fn engel_coefficients(n: usize, k_max: usize) -> Result<EngelCoefficients> {
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    let mut rows = Vec::with_capacity(k_max + 1);
    let mut row = vec![0i128; n];
    row[0] = 1;
    rows.push(row.clone());
    for _ in 1..=k_max {
        let prev = &rows[rows.len() - 1];
        let next: Vec<i128> = (0..n)
            .map(|j| {
                prev[(j + n - 1) % n]
                    .checked_sub(prev[j])
                    .ok_or(Error::Precondition("coefficient overflow".into()))
            })
            .collect::<Result<_>>()?;
        rows.push(next);
    }
    Ok(EngelCoefficients { n, rows })
}

/// Verify the wreath embedding ⟨g, f⟩ ≅ ⟨g⟩ ≀ ⟨f⟩ on a finite truncation:
/// the generated subgroup of the depth-`depth` action must have order
/// |g|^m · m, where m = |f| is witnessed by a regular orbit at `v` and g lies
/// in Rist(v). All preconditions are certified or the check errors out.
pub fn verify_wreath_embedding(
    f: &Word,
    g: &Word,
    v: &Vertex,
    depth: usize,
    solver: &mut Solver,
) -> Result<bool> {
    let m = certified_order(f, solver)?;
    let orb = orbitlab::orbit(f, v)?;
    if orb.len() != m {
        return Err(Error::Precondition(format!(
            "orbit of {} has length {}, not |f| = {}",
            v,
            orb.len(),
            m
        )));
    }
    match in_rigid_stabilizer(g, v, depth, solver)? {
        RistVerdict::YesCertified => {}
        other => {
            return Err(Error::Precondition(format!(
                "g is not certified in Rist({}): {:?}",
                v, other
            )))
        }
    }
    let q = certified_order(g, solver)?;
    // faithfulness of the truncation: supports must fit above the cut
    for (name, w) in [("f", f), ("g", g)] {
        match w.finitary_support() {
            Some(s) if s <= depth => {}
            Some(s) => {
                return Err(Error::Precondition(format!(
                    "{} has support {} beyond truncation depth {}",
                    name, s, depth
                )))
            }
            None => {
                return Err(Error::Precondition(format!(
                    "cannot certify a faithful truncation for non-finitary {}",
                    name
                )))
            }
        }
    }
    let mut truncator = Truncator::new(f.group(), depth)?;
    let tables = vec![truncator.word_table(f)?, truncator.word_table(g)?];
    let generated = truncation::generated_order(&tables, truncation::ENUM_CAP)? as u128;
    let mut expected: u128 = 1;
    for _ in 0..m {
        expected = expected
            .checked_mul(q as u128)
            .ok_or(Error::Precondition("expected order overflows".into()))?;
    }
    expected = expected
        .checked_mul(m as u128)
        .ok_or(Error::Precondition("expected order overflows".into()))?;
    Ok(generated == expected)
}

fn certified_order(w: &Word, solver: &mut Solver) -> Result<u64> {
    if let Some(m) = orbitlab::finitary_order(w)? {
        return Ok(m);
    }
    match solver.order(w, &OrderPolicy::default())? {
        crate::wordprob::OrderResult::Finite {
            m,
            certified: true,
        } => Ok(m),
        other => Err(Error::Precondition(format!(
            "order not certified finite: {:?}",
            other
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_operations() {
        let w = CyclicWreath::new(3, 4).unwrap();
        let x = w.top();
        let g = w.base_gen();
        let e = w.mul(&x, &g).unwrap();
        assert!(w.mul(&e, &w.inv(&e).unwrap()).unwrap().is_identity());
        assert!(w.comm(&e, &e).unwrap().is_identity());
        assert_eq!(w.order(), Some(3u128.pow(4) * 4));
    }

    #[test]
    fn conjugation_shifts_forward() {
        // (y,1,...,1)^x = (1,y,1,...,1): the top generator acts as (1 2 ... n)
        let w = CyclicWreath::new(5, 3).unwrap();
        let x = w.top();
        let g = w.base_gen();
        let conj = w.mul(&w.mul(&w.inv(&x).unwrap(), &g).unwrap(), &x).unwrap();
        assert_eq!(conj.base(), &[0, 1, 0]);
        assert_eq!(conj.top(), 0);
    }

    #[test]
    fn engel_degree_examples() {
        // C_2 ≀ C_2: degree 2 on (y,1)
        let w = CyclicWreath::new(2, 2).unwrap();
        let d = brute_engel_degree(&w, &w.top(), &w.base_gen(), 10).unwrap();
        assert_eq!(d, BruteDegree::Degree(2));
        // [g,_1 x] = (y,y)
        let c1 = w.comm(&w.base_gen(), &w.top()).unwrap();
        assert_eq!(c1.base(), &[1, 1]);
        assert_eq!(c1.top(), 0);

        // C_9 ≀ C_3: degree 5 (matches the Engel-degree formula at p=3, m=3, q=9)
        let w = CyclicWreath::new(9, 3).unwrap();
        let d = brute_engel_degree(&w, &w.top(), &w.base_gen(), 32).unwrap();
        assert_eq!(d, BruteDegree::Degree(5));

        // identity has degree 0
        let d = brute_engel_degree(&w, &w.top(), &w.identity(), 10).unwrap();
        assert_eq!(d, BruteDegree::Degree(0));
    }

    #[test]
    fn mixed_primes_are_not_engel() {
        let w = CyclicWreath::new(3, 2).unwrap();
        assert!(matches!(
            brute_is_left_engel(&w, &w.top()).unwrap(),
            LeftEngelCheck::Witness(_)
        ));
        let w = CyclicWreath::new(2, 3).unwrap();
        assert!(matches!(
            brute_is_left_engel(&w, &w.top()).unwrap(),
            LeftEngelCheck::Witness(_)
        ));
        // p-group case is nilpotent, hence Engel
        let w = CyclicWreath::new(2, 2).unwrap();
        assert_eq!(
            brute_is_left_engel(&w, &w.top()).unwrap(),
            LeftEngelCheck::LeftEngel
        );
        // x = identity is vacuously left Engel
        let w = CyclicWreath::new(3, 2).unwrap();
        assert_eq!(
            brute_is_left_engel(&w, &w.identity()).unwrap(),
            LeftEngelCheck::LeftEngel
        );
    }

    #[test]
    fn order_growth_examples() {
        let w = CyclicWreath::new(2, 2).unwrap();
        let xg = w.mul(&w.top(), &w.base_gen()).unwrap();
        assert_eq!(w.element_order(&xg).unwrap(), 4);
        assert!(verify_order_growth(&w).unwrap());

        let w = CyclicWreath::new(3, 3).unwrap();
        let xg = w.mul(&w.top(), &w.base_gen()).unwrap();
        assert_eq!(w.element_order(&xg).unwrap(), 9);
        assert!(verify_order_growth(&w).unwrap());
    }

    #[test]
    fn comm_lower_bound_display() {
        // Y=C_2, X=C_3, w = x: [g,_2 w] = (y, *, y)
        let w = CyclicWreath::new(2, 3).unwrap();
        let g = w.base_gen();
        let mut c = g.clone();
        c = w.comm(&c, &w.top()).unwrap();
        c = w.comm(&c, &w.top()).unwrap();
        assert_eq!(c.base()[0], 1);
        assert_eq!(c.base()[2], 1);
        assert!(comm_lower_bound_check(&w, &w.top(), 64).unwrap());
        // top exponent != 1 is excluded
        let w2 = w.element(vec![0, 0, 0], 2).unwrap();
        assert!(comm_lower_bound_check(&w, &w2, 64).is_err());
    }

    #[test]
    fn coefficient_recursion() {
        let table = engel_coefficients(2, 5).unwrap();
        assert_eq!(table.rows[0], vec![1, 0]);
        // m_{1,1} = m_{0,0} - m_{0,1} = 0 - 1 = -1; m_{1,2} = 1 - 0 = 1
        assert_eq!(table.rows[1], vec![-1, 1]);
        assert!(table.claim_b_all());
        // row sums telescope to zero for k >= 1
        for k in 1..=5 {
            assert_eq!(table.rows[k].iter().sum::<i128>(), 0);
        }
    }
}
