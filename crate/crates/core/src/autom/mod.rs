//! Tree automorphisms as words over wreath-recursive generators.
//!
//! A [`GroupDef`] owns a tree and a named list of generators, each either
//! `Recursive` (root permutation plus one section word per child, the
//! "(g_1,...,g_d) sigma" shorthand) or `Label` (a computable portrait).
//! Elements are [`Word`]s over the generators. Composition is left-to-right:
//! `fg` means "f then g", so `(fg)(v) = g(f(v))` and `(fg)_v = f_v g_{f(v)}`.

mod word;

pub use word::{in_rigid_stabilizer, Letter, Portrait, RistVerdict, Word};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tree::{DegreeSequence, Vertex};

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// A computable-portrait automorphism: vertex -> label.
///
/// `support` is an upper bound on the number of levels carrying non-identity
/// labels (labels at level >= support are identity); `None` means unknown,
/// in which case all word-problem verdicts on it are depth-bounded.
#[derive(Clone)]
pub struct LabelElem {
    fun: Arc<dyn Fn(&Vertex) -> Permutation + Send + Sync>,
    support: Option<usize>,
}

impl LabelElem {
    pub fn from_fn<F>(fun: F, support: Option<usize>) -> Self
    where
        F: Fn(&Vertex) -> Permutation + Send + Sync + 'static,
    {
        LabelElem {
            fun: Arc::new(fun),
            support,
        }
    }

    /// Finitary automorphism from an explicit finite label map.
    /// Identity labels in the map are ignored.
    pub fn finitary(tree: &DegreeSequence, labels: BTreeMap<Vertex, Permutation>) -> Result<Self> {
        let mut support = 0;
        for (v, p) in &labels {
            v.validate(tree)?;
            let expected = tree.degree_at(v.level() + 1);
            if p.degree() != expected {
                return Err(Error::Unsupported(format!(
                    "label at {} has degree {}, expected {}",
                    v,
                    p.degree(),
                    expected
                )));
            }
            if !p.is_identity() {
                support = support.max(v.level() + 1);
            }
        }
        let map = Arc::new(labels);
        Ok(LabelElem {
            fun: Arc::new(move |v: &Vertex| {
                map.get(v)
                    .cloned()
                    .unwrap_or_else(|| Permutation::identity(0))
            }),
            support: Some(support),
        })
    }

    pub fn support(&self) -> Option<usize> {
        self.support
    }

    pub(crate) fn label(&self, v: &Vertex, degree: u32) -> Permutation {
        if let Some(s) = self.support {
            if v.level() >= s {
                return Permutation::identity(degree);
            }
        }
        let p = (self.fun)(v);
        if p.degree() == 0 {
            // sparse map convention: absent entry means identity
            Permutation::identity(degree)
        } else {
            debug_assert_eq!(p.degree(), degree, "label function degree mismatch at {v}");
            p
        }
    }
}

impl fmt::Debug for LabelElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabelElem {{ support: {:?} }}", self.support)
    }
}

#[derive(Debug, Clone)]
pub enum GenKind {
    /// Wreath recursion: root permutation and one section word per child,
    /// sections given as resolved (generator index, exponent) letters.
    Recursive {
        root_perm: Permutation,
        sections: Vec<Vec<(usize, i64)>>,
    },
    /// Computable portrait.
    Label(LabelElem),
}

#[derive(Debug, Clone)]
pub struct GenDef {
    pub name: String,
    pub kind: GenKind,
    pub declared_order: Option<u64>,
}

/// A group of tree automorphisms given by a finite generating set.
#[derive(Debug)]
pub struct GroupDef {
    id: u64,
    name: Option<String>,
    tree: DegreeSequence,
    gens: Vec<GenDef>,
    contraction_hint: bool,
}

impl GroupDef {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn tree(&self) -> &DegreeSequence {
        &self.tree
    }

    pub fn contraction_hint(&self) -> bool {
        self.contraction_hint
    }

    pub fn generators(&self) -> &[GenDef] {
        &self.gens
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.gens.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub(crate) fn gen(&self, idx: usize) -> &GenDef {
        &self.gens[idx]
    }

    /// Canonical exponent for a generator: reduced into [0, order) when an
    /// order is declared; unchanged otherwise.
    pub(crate) fn reduce_exp(&self, gen: usize, exp: i64) -> i64 {
        match self.gens[gen].declared_order {
            Some(m) => exp.rem_euclid(m as i64),
            None => exp,
        }
    }

    /// The identity element.
    pub fn identity(self: &Arc<Self>) -> Word {
        Word::from_letters(self.clone(), self.tree.clone(), vec![])
    }

    /// Single-generator word.
    pub fn gen_word(self: &Arc<Self>, name: &str) -> Result<Word> {
        self.word(&[(name, 1)])
    }

    /// Word from (generator name, exponent) syllables.
    pub fn word(self: &Arc<Self>, syllables: &[(&str, i64)]) -> Result<Word> {
        let mut letters = Vec::with_capacity(syllables.len());
        for &(name, exp) in syllables {
            let idx = self
                .gen_index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            letters.push(Letter::new(idx, Vertex::root(), exp));
        }
        Ok(Word::from_letters(self.clone(), self.tree.clone(), letters))
    }

    /// Parse a word like `"ab^-1(cb)^2"` over this group's generators.
    /// Generator names use longest match; `*` and whitespace separate
    /// factors; `1` is the identity.
    pub fn parse_word(self: &Arc<Self>, text: &str) -> Result<Word> {
        word::parse_word(self, text)
    }
}

/// Builder with two-pass name resolution (section words may reference
/// generators declared later, as in the Grigorchuk recursion b = (a, c)).
pub struct GroupBuilder {
    name: Option<String>,
    tree: DegreeSequence,
    gens: Vec<(String, SpecKind, Option<u64>)>,
    contraction_hint: bool,
}

enum SpecKind {
    Recursive {
        root_perm: Permutation,
        sections: Vec<Vec<(String, i64)>>,
    },
    Rooted(Permutation),
    Label(LabelElem),
}

impl GroupBuilder {
    pub fn new(tree: DegreeSequence) -> Self {
        GroupBuilder {
            name: None,
            tree,
            gens: vec![],
            contraction_hint: false,
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn contraction_hint(mut self, hint: bool) -> Self {
        self.contraction_hint = hint;
        self
    }

    /// Rooted automorphism: root permutation, identity sections.
    pub fn rooted(mut self, name: &str, perm: Permutation) -> Self {
        self.gens
            .push((name.to_string(), SpecKind::Rooted(perm), None));
        self
    }

    pub fn recursive(
        mut self,
        name: &str,
        root_perm: Permutation,
        sections: Vec<Vec<(String, i64)>>,
    ) -> Self {
        self.gens.push((
            name.to_string(),
            SpecKind::Recursive {
                root_perm,
                sections,
            },
            None,
        ));
        self
    }

    pub fn label(mut self, name: &str, elem: LabelElem) -> Self {
        self.gens.push((name.to_string(), SpecKind::Label(elem), None));
        self
    }

    pub fn declare_order(mut self, name: &str, order: u64) -> Self {
        for gen in &mut self.gens {
            if gen.0 == name {
                gen.2 = Some(order);
            }
        }
        self
    }

    pub fn build(self) -> Result<Arc<GroupDef>> {
        let names: Vec<String> = self.gens.iter().map(|g| g.0.clone()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Unsupported(format!("duplicate generator `{}`", n)));
            }
        }
        let d1 = self.tree.degree_at(1);
        let mut gens = Vec::with_capacity(self.gens.len());
        for (name, kind, declared_order) in self.gens {
            let kind = match kind {
                SpecKind::Label(elem) => GenKind::Label(elem),
                SpecKind::Rooted(perm) => {
                    Self::check_recursive_shape(&self.tree, &name, &perm, d1 as usize)?;
                    GenKind::Recursive {
                        root_perm: perm,
                        sections: vec![vec![]; d1 as usize],
                    }
                }
                SpecKind::Recursive {
                    root_perm,
                    sections,
                } => {
                    Self::check_recursive_shape(&self.tree, &name, &root_perm, sections.len())?;
                    if sections.len() != d1 as usize {
                        return Err(Error::ArityMismatch {
                            name,
                            expected: d1 as usize,
                            got: sections.len(),
                        });
                    }
                    let resolved = sections
                        .into_iter()
                        .map(|sec| {
                            sec.into_iter()
                                .map(|(g, e)| {
                                    names
                                        .iter()
                                        .position(|n| *n == g)
                                        .map(|idx| (idx, e))
                                        .ok_or(Error::UnknownGenerator(g))
                                })
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    GenKind::Recursive {
                        root_perm,
                        sections: resolved,
                    }
                }
            };
            gens.push(GenDef {
                name,
                kind,
                declared_order,
            });
        }
        Ok(Arc::new(GroupDef {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            name: self.name,
            tree: self.tree,
            gens,
            contraction_hint: self.contraction_hint,
        }))
    }

    fn check_recursive_shape(
        tree: &DegreeSequence,
        name: &str,
        root_perm: &Permutation,
        sections: usize,
    ) -> Result<()> {
        if !tree.is_constant() {
            return Err(Error::NonConstantRecursive);
        }
        let d1 = tree.degree_at(1);
        if root_perm.degree() != d1 {
            return Err(Error::ArityMismatch {
                name: name.to_string(),
                expected: d1 as usize,
                got: root_perm.degree() as usize,
            });
        }
        if sections != d1 as usize {
            return Err(Error::ArityMismatch {
                name: name.to_string(),
                expected: d1 as usize,
                got: sections,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_rejects_bad_arity() {
        let t3 = DegreeSequence::constant(3);
        let err = GroupBuilder::new(t3)
            .recursive(
                "g",
                Permutation::identity(3),
                vec![vec![], vec![]], // only 2 sections on T_3
            )
            .build();
        assert!(matches!(err, Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn builder_rejects_unknown_section_generator() {
        let t2 = DegreeSequence::constant(2);
        let err = GroupBuilder::new(t2)
            .recursive(
                "g",
                Permutation::identity(2),
                vec![vec![("h".into(), 1)], vec![]],
            )
            .build();
        assert!(matches!(err, Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn builder_rejects_recursive_on_nonconstant_tree() {
        let seq = DegreeSequence::new(vec![2], vec![3]).unwrap();
        let err = GroupBuilder::new(seq)
            .rooted("a", Permutation::identity(2))
            .build();
        assert!(matches!(err, Err(Error::NonConstantRecursive)));
    }
}
