//! Finite truncations: automorphisms as permutations of the level-D vertices.
//!
//! Tables are built from the generator definitions alone (recursing on the
//! wreath recursion, or walking label functions), not from the word-level
//! apply/label/section calculus — so they double as an independent oracle
//! for the word problem. An automorphism acts trivially on the first D
//! levels iff its leaf table is the identity.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::autom::{GenKind, GroupDef, Word};
use crate::error::{Error, Result};
use crate::tree::{DegreeSequence, Vertex};

/// Cap on subgroup enumeration size.
pub const ENUM_CAP: usize = 10_000_000;

pub fn leaf_count(tree: &DegreeSequence, depth: usize) -> usize {
    tree.level_size(depth)
}

/// Table builder for one group, memoizing per-generator tables by depth.
pub struct Truncator<'a> {
    group: &'a GroupDef,
    depth: usize,
    rec_cache: HashMap<(usize, usize), Vec<u32>>,
}

impl<'a> Truncator<'a> {
    pub fn new(group: &'a GroupDef, depth: usize) -> Result<Self> {
        let n = leaf_count(group.tree(), depth);
        if n > ENUM_CAP {
            return Err(Error::CapExceeded {
                cap: ENUM_CAP,
                seen: n,
            });
        }
        Ok(Truncator {
            group,
            depth,
            rec_cache: HashMap::new(),
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Permutation table of a word on the level-`depth` vertices, indexed in
    /// lexicographic vertex order.
    pub fn word_table(&mut self, w: &Word) -> Result<Vec<u32>> {
        if *w.tree() != *self.group.tree() {
            return Err(Error::MixedGroups);
        }
        let n = leaf_count(self.group.tree(), self.depth);
        let mut table: Vec<u32> = (0..n as u32).collect();
        for l in w.letters() {
            let gen_table = self.letter_table(l.gen, &l.base)?;
            let step = power_table(&gen_table, l.exp);
            table = compose(&table, &step);
        }
        Ok(table)
    }

    fn letter_table(&mut self, gen: usize, base: &Vertex) -> Result<Vec<u32>> {
        match &self.group.gen(gen).kind {
            GenKind::Recursive { .. } => {
                debug_assert!(base.is_root());
                Ok(self.rec_table(gen, self.depth))
            }
            GenKind::Label(elem) => {
                // walk the labels leaf by leaf
                let tree = self.group.tree().shift(base.level());
                let n = leaf_count(&tree, self.depth);
                let mut table = vec![0u32; n];
                let mut path = vec![1u32; self.depth];
                for idx in 0..n {
                    decode(&tree, self.depth, idx, &mut path);
                    let mut image = Vec::with_capacity(self.depth);
                    for (k, &entry) in path.iter().enumerate() {
                        let prefix = base.join(&Vertex::new(path[..k].to_vec()));
                        let degree = tree.degree_at(k + 1);
                        image.push(elem.label(&prefix, degree).apply(entry));
                    }
                    table[idx] = encode(&tree, &image) as u32;
                }
                Ok(table)
            }
        }
    }

    // Table of a recursive generator: root permutation on the top coordinate,
    // section-word tables on the rest. Constant tree, so every depth shares
    // the leaf layout.
    fn rec_table(&mut self, gen: usize, depth: usize) -> Vec<u32> {
        if let Some(t) = self.rec_cache.get(&(gen, depth)) {
            return t.clone();
        }
        let d = self.group.tree().degree_at(1) as usize;
        let table = if depth == 0 {
            vec![0u32]
        } else {
            let GenKind::Recursive {
                root_perm,
                sections,
            } = &self.group.gen(gen).kind
            else {
                unreachable!()
            };
            let root_perm = root_perm.clone();
            let sections = sections.clone();
            let stride = leaf_count(self.group.tree(), depth - 1);
            let mut table = vec![0u32; d * stride];
            for i in 1..=d as u32 {
                let sub = self.raw_word_table(&sections[(i - 1) as usize], depth - 1);
                let j = root_perm.apply(i);
                let src = (i as usize - 1) * stride;
                let dst = (j as usize - 1) * stride;
                for r in 0..stride {
                    table[src + r] = (dst + sub[r] as usize) as u32;
                }
            }
            table
        };
        self.rec_cache.insert((gen, depth), table.clone());
        table
    }

    fn raw_word_table(&mut self, letters: &[(usize, i64)], depth: usize) -> Vec<u32> {
        let n = leaf_count(self.group.tree(), depth);
        let mut table: Vec<u32> = (0..n as u32).collect();
        for &(gen, exp) in letters {
            let g = self.rec_table(gen, depth);
            table = compose(&table, &power_table(&g, exp));
        }
        table
    }
}

// Mixed-radix decode matching `encode`: most significant coordinate first,
// so index order is lexicographic vertex order.
fn decode(tree: &DegreeSequence, depth: usize, idx: usize, path: &mut [u32]) {
    let mut rem = idx;
    for k in (0..depth).rev() {
        let d = tree.degree_at(k + 1) as usize;
        path[k] = (rem % d) as u32 + 1;
        rem /= d;
    }
}

fn encode(tree: &DegreeSequence, path: &[u32]) -> usize {
    let mut idx = 0usize;
    for (k, &entry) in path.iter().enumerate() {
        idx = idx * tree.degree_at(k + 1) as usize + (entry as usize - 1);
    }
    idx
}

/// Left-to-right composition of tables: `(a then b)[i] = b[a[i]]`.
pub fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn invert(a: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len()];
    for (i, &img) in a.iter().enumerate() {
        out[img as usize] = i as u32;
    }
    out
}

pub fn is_identity_table(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(i, &img)| i as u32 == img)
}

fn power_table(a: &[u32], exp: i64) -> Vec<u32> {
    let base = if exp >= 0 { a.to_vec() } else { invert(a) };
    let mut out: Vec<u32> = (0..a.len() as u32).collect();
    for _ in 0..exp.unsigned_abs() {
        out = compose(&out, &base);
    }
    out
}

/// Size of the subgroup generated by the given tables (breadth-first
/// closure), capped.
pub fn generated_order(generators: &[Vec<u32>], cap: usize) -> Result<usize> {
    let n = generators.first().map_or(0, |g| g.len());
    let mut gens: Vec<Vec<u32>> = vec![];
    for g in generators {
        if g.len() != n {
            return Err(Error::MixedGroups);
        }
        gens.push(g.clone());
        gens.push(invert(g));
    }
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    queue.push_back(identity);
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let next = compose(&cur, g);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        cap,
                        seen: seen.len(),
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}
