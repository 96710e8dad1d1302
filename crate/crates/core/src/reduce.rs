//! Reduced trees R(V) and the restriction homomorphism from setwise
//! stabilizers of V into Aut R(V).
//!
//! R(V) attaches the subtrees at the vertices of V (all on one level) to a
//! common root, in the given vertex order. Induced elements are
//! label-function words: the root label is the permutation of V induced by
//! the element, and deeper labels are copied from the source tree.

use std::sync::Arc;

use crate::autom::{GroupBuilder, GroupDef, LabelElem, Word};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tree::{DegreeSequence, Vertex};

#[derive(Debug, Clone)]
pub struct ReducedTree {
    source: DegreeSequence,
    level: usize,
    roots: Vec<Vertex>,
    induced: DegreeSequence,
    identity_reduction: bool,
}

impl ReducedTree {
    pub fn source(&self) -> &DegreeSequence {
        &self.source
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    pub fn induced_seq(&self) -> &DegreeSequence {
        &self.induced
    }

    /// V = {root}: the reduction is the whole tree.
    pub fn is_identity_reduction(&self) -> bool {
        self.identity_reduction
    }

    /// Source vertex corresponding to a reduced-tree vertex.
    pub fn source_vertex(&self, v: &Vertex) -> Result<Vertex> {
        if self.identity_reduction {
            return Ok(v.clone());
        }
        v.validate(&self.induced)?;
        if v.is_root() {
            return Err(Error::Unsupported(
                "the reduced root has no single source vertex".into(),
            ));
        }
        let i = v.path()[0] as usize;
        let rest = Vertex::new(v.path()[1..].to_vec());
        Ok(self.roots[i - 1].join(&rest))
    }
}

/// Build the reduced tree of `seq` at `roots` (non-empty, distinct, one
/// level, in the given order). `{root}` is the identity reduction; other
/// singletons are rejected, since a degree-1 root falls outside the
/// spherically homogeneous setting and the paper's machinery only reduces at
/// non-trivial orbits.
pub fn reduced_tree(seq: &DegreeSequence, roots: Vec<Vertex>) -> Result<ReducedTree> {
    if roots.is_empty() {
        return Err(Error::Precondition("empty vertex set".into()));
    }
    if roots.len() == 1 && roots[0].is_root() {
        return Ok(ReducedTree {
            source: seq.clone(),
            level: 0,
            roots,
            induced: seq.clone(),
            identity_reduction: true,
        });
    }
    let level = roots[0].level();
    for v in &roots {
        v.validate(seq)?;
        if v.level() != level {
            return Err(Error::Precondition(format!(
                "vertices on mixed levels: {} vs {}",
                roots[0], v
            )));
        }
    }
    for (i, v) in roots.iter().enumerate() {
        if roots[..i].contains(v) {
            return Err(Error::Precondition(format!("duplicate vertex {}", v)));
        }
    }
    if roots.len() == 1 {
        return Err(Error::Unsupported(
            "singleton reduction would give a degree-1 root".into(),
        ));
    }
    let shifted = seq.shift(level);
    let mut preperiod = vec![roots.len() as u32];
    preperiod.extend_from_slice(shifted.preperiod());
    let induced = DegreeSequence::new(preperiod, shifted.period().to_vec())?;
    Ok(ReducedTree {
        source: seq.clone(),
        level,
        roots,
        induced,
        identity_reduction: false,
    })
}

fn induced_root_perm(f: &Word, rt: &ReducedTree) -> Result<Permutation> {
    let k = rt.roots().len();
    let mut images = vec![0u32; k];
    for (i, v) in rt.roots().iter().enumerate() {
        let img = f.apply(v)?;
        let j = rt
            .roots()
            .iter()
            .position(|w| *w == img)
            .ok_or_else(|| Error::Precondition(format!("{} does not stabilize V: {} maps outside", f, v)))?;
        images[i] = j as u32;
    }
    Permutation::from_images(images)
}

fn induced_label_elem(f: &Word, rt: &ReducedTree) -> Result<LabelElem> {
    let root_label = induced_root_perm(f, rt)?;
    let word = f.clone();
    let roots = rt.roots().to_vec();
    let support = f
        .finitary_support()
        .map(|s| 1 + s.saturating_sub(rt.level()));
    Ok(LabelElem::from_fn(
        move |v: &Vertex| {
            if v.is_root() {
                return root_label.clone();
            }
            let i = v.path()[0] as usize;
            let rest = Vertex::new(v.path()[1..].to_vec());
            let src = roots[i - 1].join(&rest);
            word.label(&src).expect("induced label at valid vertex")
        },
        support,
    ))
}

/// Group over the reduced tree whose generators are the induced images of
/// the named source elements (each must stabilize V setwise). Inducing
/// several elements into one group keeps their images composable.
pub fn induce_group(rt: &ReducedTree, elements: &[(&str, &Word)]) -> Result<Arc<GroupDef>> {
    let mut builder = GroupBuilder::new(rt.induced_seq().clone());
    for (name, f) in elements {
        builder = builder.label(name, induced_label_elem(f, rt)?);
    }
    builder.build()
}

/// The induced automorphism of the reduced tree, as a single-generator word.
/// The identity reduction returns the element itself.
pub fn induce(f: &Word, rt: &ReducedTree) -> Result<Word> {
    if rt.is_identity_reduction() {
        induced_root_perm(f, rt)?; // still enforces the stabilizer precondition
        return Ok(f.clone());
    }
    let group = induce_group(rt, &[("f", f)])?;
    group.gen_word("f")
}
