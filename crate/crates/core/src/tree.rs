//! Vertex addressing and degree-sequence bookkeeping for spherically
//! homogeneous rooted trees.
//!
//! A tree is described by an eventually periodic sequence of branching
//! degrees: vertices at level n-1 have `degree_at(n)` children each.
//! Vertices are finite paths of 1-based child indices.

use std::fmt;

use crate::error::{Error, Result};

/// Eventually periodic sequence of branching degrees.
///
/// `degree_at(n)` (1-based) reads the preperiod first and then cycles
/// through the period. Constructors canonicalize, so structural equality
/// coincides with levelwise equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl DegreeSequence {
    pub fn new(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        for &d in preperiod.iter().chain(period.iter()) {
            if d < 2 {
                return Err(Error::InvalidDegree(d));
            }
        }
        let mut seq = DegreeSequence { preperiod, period };
        seq.canonicalize();
        Ok(seq)
    }

    /// The d-adic tree: every level has degree `d`.
    pub fn constant(d: u32) -> Self {
        DegreeSequence::new(vec![], vec![d]).expect("constant degree must be >= 2")
    }

    pub fn is_constant(&self) -> bool {
        self.preperiod.is_empty() && self.period.len() == 1
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    // Reduce the period to its primitive rotation class and absorb preperiod
    // entries that merely repeat the periodic tail. After this, semantically
    // equal sequences are structurally equal.
    fn canonicalize(&mut self) {
        let n = self.period.len();
        for len in 1..n {
            if n % len == 0 && (0..n).all(|i| self.period[i] == self.period[i % len]) {
                self.period.truncate(len);
                break;
            }
        }
        while let Some(&last) = self.preperiod.last() {
            if last == *self.period.last().expect("period non-empty") {
                self.preperiod.pop();
                self.period.rotate_right(1);
            } else {
                break;
            }
        }
    }

    /// Branching degree at `level` (1-based: children of the root count as level 1).
    pub fn degree_at(&self, level: usize) -> u32 {
        assert!(level >= 1, "levels are 1-based");
        if level <= self.preperiod.len() {
            self.preperiod[level - 1]
        } else {
            self.period[(level - self.preperiod.len() - 1) % self.period.len()]
        }
    }

    /// Erase the first `n` terms: `shift(s, n).degree_at(k) == s.degree_at(k + n)`.
    pub fn shift(&self, n: usize) -> DegreeSequence {
        if n <= self.preperiod.len() {
            let mut seq = DegreeSequence {
                preperiod: self.preperiod[n..].to_vec(),
                period: self.period.clone(),
            };
            seq.canonicalize();
            seq
        } else {
            let rot = (n - self.preperiod.len()) % self.period.len();
            let mut period = self.period.clone();
            period.rotate_left(rot);
            let mut seq = DegreeSequence {
                preperiod: vec![],
                period,
            };
            seq.canonicalize();
            seq
        }
    }

    /// Number of vertices on the given level.
    pub fn level_size(&self, level: usize) -> usize {
        (1..=level).map(|k| self.degree_at(k) as usize).product()
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            write!(f, "{}", self.period[0])
        } else {
            let pre: Vec<String> = self.preperiod.iter().map(|d| d.to_string()).collect();
            let per: Vec<String> = self.period.iter().map(|d| d.to_string()).collect();
            write!(f, "preperiod=[{}] period=[{}]", pre.join(","), per.join(","))
        }
    }
}

/// A vertex of the tree: a finite path of 1-based child indices.
/// The empty path is the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vertex {
    path: Vec<u32>,
}

impl Vertex {
    pub fn root() -> Self {
        Vertex { path: vec![] }
    }

    pub fn new(path: Vec<u32>) -> Self {
        Vertex { path }
    }

    pub fn path(&self) -> &[u32] {
        &self.path
    }

    pub fn level(&self) -> usize {
        self.path.len()
    }

    pub fn is_root(&self) -> bool {
        self.path.is_empty()
    }

    pub fn parent(&self) -> Option<Vertex> {
        if self.path.is_empty() {
            None
        } else {
            Some(Vertex::new(self.path[..self.path.len() - 1].to_vec()))
        }
    }

    pub fn child(&self, index: u32) -> Vertex {
        let mut path = self.path.clone();
        path.push(index);
        Vertex { path }
    }

    /// Concatenate paths: the vertex `self`·`below` (used when moving between
    /// a tree and the subtree hanging from `self`).
    pub fn join(&self, below: &Vertex) -> Vertex {
        let mut path = self.path.clone();
        path.extend_from_slice(&below.path);
        Vertex { path }
    }

    /// Strip `prefix` from the front, giving the address inside the subtree
    /// rooted at `prefix`. None if `self` does not lie under `prefix`.
    pub fn strip_prefix(&self, prefix: &Vertex) -> Option<Vertex> {
        if self.path.len() < prefix.path.len() {
            return None;
        }
        if self.path[..prefix.path.len()] == prefix.path[..] {
            Some(Vertex::new(self.path[prefix.path.len()..].to_vec()))
        } else {
            None
        }
    }

    /// Whether `self` lies in the subtree rooted at `v` (v itself included).
    pub fn is_under(&self, v: &Vertex) -> bool {
        self.strip_prefix(v).is_some()
    }

    /// Validity against a degree sequence: entry at depth k must lie in
    /// 1..=degree_at(k).
    pub fn validate(&self, seq: &DegreeSequence) -> Result<()> {
        for (k, &entry) in self.path.iter().enumerate() {
            let d = seq.degree_at(k + 1);
            if entry < 1 || entry > d {
                return Err(Error::InvalidVertex {
                    vertex: self.clone(),
                    reason: format!("index {} at depth {} exceeds degree {}", entry, k + 1, d),
                });
            }
        }
        Ok(())
    }
}

// Vertices are ordered by (level, path): shallower vertices come first.
impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.path
            .len()
            .cmp(&other.path.len())
            .then_with(|| self.path.cmp(&other.path))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", entries.join(","))
    }
}

/// Children of `v`, in index order.
pub fn children(seq: &DegreeSequence, v: &Vertex) -> Result<Vec<Vertex>> {
    v.validate(seq)?;
    let d = seq.degree_at(v.level() + 1);
    Ok((1..=d).map(|i| v.child(i)).collect())
}

/// All vertices on `level`, in lexicographic order.
pub fn level_vertices(seq: &DegreeSequence, level: usize) -> Vec<Vertex> {
    let mut out = vec![Vertex::root()];
    for k in 1..=level {
        let d = seq.degree_at(k);
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for v in &out {
            for i in 1..=d {
                next.push(v.child(i));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_at_examples() {
        let constant = DegreeSequence::constant(3);
        assert_eq!(constant.degree_at(5), 3);

        let seq = DegreeSequence::new(vec![2], vec![3, 4]).unwrap();
        assert_eq!(seq.degree_at(1), 2);
        // Periodic extension after the preperiod: 2, 3, 4, 3, 4, ...
        assert_eq!(seq.degree_at(2), 3);
        assert_eq!(seq.degree_at(3), 4);
        assert_eq!(seq.degree_at(4), 3);
        assert_eq!(seq.degree_at(5), 4);
    }

    #[test]
    fn shift_examples() {
        let constant = DegreeSequence::constant(3);
        assert_eq!(constant.shift(7), constant);

        let seq = DegreeSequence::new(vec![2], vec![3]).unwrap();
        assert_eq!(seq.shift(1), DegreeSequence::constant(3));

        let seq = DegreeSequence::new(vec![2, 5], vec![3, 4]).unwrap();
        let shifted = seq.shift(3);
        assert_eq!(shifted, DegreeSequence::new(vec![], vec![4, 3]).unwrap());
        for k in 1..=20 {
            assert_eq!(shifted.degree_at(k), seq.degree_at(k + 3));
        }
    }

    #[test]
    fn shift_composes() {
        let seq = DegreeSequence::new(vec![2, 5, 2], vec![3, 4, 6]).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let lhs = seq.shift(a).shift(b);
                let rhs = seq.shift(a + b);
                for k in 1..=20 {
                    assert_eq!(lhs.degree_at(k), rhs.degree_at(k));
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn canonical_equality() {
        // preperiod [3], period [3] is the constant sequence 3.
        let a = DegreeSequence::new(vec![3], vec![3]).unwrap();
        assert_eq!(a, DegreeSequence::constant(3));
        // period [3,4,3,4] reduces to [3,4].
        let b = DegreeSequence::new(vec![], vec![3, 4, 3, 4]).unwrap();
        assert_eq!(b, DegreeSequence::new(vec![], vec![3, 4]).unwrap());
    }

    #[test]
    fn children_examples() {
        let t3 = DegreeSequence::constant(3);
        let kids = children(&t3, &Vertex::root()).unwrap();
        assert_eq!(
            kids,
            vec![
                Vertex::new(vec![1]),
                Vertex::new(vec![2]),
                Vertex::new(vec![3])
            ]
        );

        let t2 = DegreeSequence::constant(2);
        let kids = children(&t2, &Vertex::new(vec![2])).unwrap();
        assert_eq!(kids, vec![Vertex::new(vec![2, 1]), Vertex::new(vec![2, 2])]);

        let seq = DegreeSequence::new(vec![3], vec![2]).unwrap();
        let kids = children(&seq, &Vertex::new(vec![1, 2])).unwrap();
        assert_eq!(
            kids,
            vec![Vertex::new(vec![1, 2, 1]), Vertex::new(vec![1, 2, 2])]
        );
        for (i, kid) in kids.iter().enumerate() {
            assert_eq!(kid.parent().unwrap(), Vertex::new(vec![1, 2]));
            assert_eq!(kid.level(), 3);
            let _ = i;
        }
    }

    #[test]
    fn invalid_vertex_rejected() {
        let t2 = DegreeSequence::constant(2);
        assert!(Vertex::new(vec![3]).validate(&t2).is_err());
        assert!(children(&t2, &Vertex::new(vec![1, 5])).is_err());
    }

    #[test]
    fn vertex_order_is_level_then_lex() {
        let mut vs = vec![
            Vertex::new(vec![1, 1]),
            Vertex::new(vec![2]),
            Vertex::root(),
            Vertex::new(vec![1, 2]),
            Vertex::new(vec![1]),
        ];
        vs.sort();
        assert_eq!(
            vs,
            vec![
                Vertex::root(),
                Vertex::new(vec![1]),
                Vertex::new(vec![2]),
                Vertex::new(vec![1, 1]),
                Vertex::new(vec![1, 2]),
            ]
        );
    }
}
