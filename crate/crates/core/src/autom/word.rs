//! Words over a [`GroupDef`] and the portrait calculus on them:
//! apply, label, section, portraits, stabilizers, psi_n.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tree::{level_vertices, DegreeSequence, Vertex};

use super::{GenKind, GroupDef};

/// One syllable of a word: generator, section base, exponent.
///
/// For `Recursive` generators the base is always the root. A `Label`
/// generator letter with base `u` denotes the section of that generator at
/// `u` — the automorphism `w ↦ label(u·w)` of the shifted tree. Sections and
/// inverses of such letters stay in this form, which keeps every word
/// operation closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub(crate) gen: usize,
    pub(crate) base: Vertex,
    pub(crate) exp: i64,
}

impl Letter {
    pub(crate) fn new(gen: usize, base: Vertex, exp: i64) -> Self {
        Letter { gen, base, exp }
    }
}

/// A reduced word: adjacent letters have distinct (generator, base) pairs and
/// exponents are canonical modulo declared generator orders.
///
/// `tree` is the tree the word acts on — the group's tree for ordinary
/// elements, a shifted tree for sections.
#[derive(Clone)]
pub struct Word {
    group: Arc<GroupDef>,
    tree: DegreeSequence,
    letters: Vec<Letter>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.group.id() == other.group.id()
            && self.tree == other.tree
            && self.letters == other.letters
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.id().hash(state);
        self.letters.hash(state);
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let multi_char = self
            .group
            .generators()
            .iter()
            .any(|g| g.name.chars().count() > 1);
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 && multi_char {
                write!(f, "*")?;
            }
            write!(f, "{}", self.group.gen(l.gen).name)?;
            if !l.base.is_root() {
                write!(f, "@{}", l.base)?;
            }
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

impl Word {
    pub(crate) fn from_letters(
        group: Arc<GroupDef>,
        tree: DegreeSequence,
        letters: Vec<Letter>,
    ) -> Word {
        let letters = normalize(&group, letters);
        Word {
            group,
            tree,
            letters,
        }
    }

    pub fn group(&self) -> &Arc<GroupDef> {
        &self.group
    }

    pub fn tree(&self) -> &DegreeSequence {
        &self.tree
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Empty normal form. (Non-empty words may still be trivial as
    /// automorphisms — that is the word problem, see `wordprob`.)
    pub fn is_identity_word(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn syllable_len(&self) -> usize {
        self.letters.len()
    }

    /// Upper bound on the number of levels with non-identity labels, when
    /// every letter has one (finitary elements). None for recursive letters
    /// or label functions without a declared support.
    pub fn finitary_support(&self) -> Option<usize> {
        let mut support = 0usize;
        for l in &self.letters {
            match &self.group.gen(l.gen).kind {
                GenKind::Label(elem) => {
                    let s = elem.support()?;
                    support = support.max(s.saturating_sub(l.base.level()));
                }
                GenKind::Recursive { .. } => return None,
            }
        }
        Some(support)
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.group.id() != other.group.id() || self.tree != other.tree {
            return Err(Error::MixedGroups);
        }
        Ok(())
    }

    /// `self` then `other`.
    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(Word::from_letters(
            self.group.clone(),
            self.tree.clone(),
            letters,
        ))
    }

    pub fn inverse(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter::new(l.gen, l.base.clone(), -l.exp))
            .collect();
        Word::from_letters(self.group.clone(), self.tree.clone(), letters)
    }

    pub fn power(&self, e: i64) -> Word {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut letters = Vec::with_capacity(base.letters.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend(base.letters.iter().cloned());
        }
        Word::from_letters(self.group.clone(), self.tree.clone(), letters)
    }

    /// `g⁻¹·self·g`.
    pub fn conjugate(&self, g: &Word) -> Result<Word> {
        g.inverse().multiply(self)?.multiply(g)
    }

    /// `[self, g] = self⁻¹ g⁻¹ self g`.
    pub fn commutator(&self, g: &Word) -> Result<Word> {
        self.inverse()
            .multiply(&g.inverse())?
            .multiply(self)?
            .multiply(g)
    }

    /// Image of `v` under the automorphism.
    pub fn apply(&self, v: &Vertex) -> Result<Vertex> {
        v.validate(&self.tree)?;
        let mut cur = v.clone();
        for unit in self.units() {
            cur = unit_apply(&self.group, &self.tree, &unit, &cur);
        }
        Ok(cur)
    }

    /// The label at `v`: how children of `v` map onto children of the image.
    pub fn label(&self, v: &Vertex) -> Result<Permutation> {
        v.validate(&self.tree)?;
        let degree = self.tree.degree_at(v.level() + 1);
        let mut perm = Permutation::identity(degree);
        let mut cur = v.clone();
        for unit in self.units() {
            perm = perm.then(&unit_label(&self.group, &self.tree, &unit, &cur));
            cur = unit_apply(&self.group, &self.tree, &unit, &cur);
        }
        Ok(perm)
    }

    /// The section at `v`, a word acting on the shifted tree:
    /// `(fg)_v = f_v g_{f(v)}` letter by letter with vertex tracking.
    pub fn section(&self, v: &Vertex) -> Result<Word> {
        v.validate(&self.tree)?;
        let mut out = vec![];
        let mut cur = v.clone();
        for unit in self.units() {
            unit_section(&self.group, &self.tree, &unit, &cur, &mut out);
            cur = unit_apply(&self.group, &self.tree, &unit, &cur);
        }
        Ok(Word::from_letters(
            self.group.clone(),
            self.tree.shift(v.level()),
            out,
        ))
    }

    /// All labels above `depth` (levels 0..depth-1), identity labels omitted.
    pub fn portrait(&self, depth: usize) -> Result<Portrait> {
        assert!(depth >= 1, "portrait depth must be >= 1");
        let mut labels = BTreeMap::new();
        for level in 0..depth {
            for v in level_vertices(&self.tree, level) {
                let p = self.label(&v)?;
                if !p.is_identity() {
                    labels.insert(v, p);
                }
            }
        }
        Ok(Portrait { depth, labels })
    }

    /// Whether the word fixes every vertex of level `n`.
    pub fn stabilizes_level(&self, n: usize) -> Result<bool> {
        for v in level_vertices(&self.tree, n) {
            if self.apply(&v)? != v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sections at all level-n vertices in lexicographic order; errors unless
    /// the word is in St(n).
    pub fn psi_n(&self, n: usize) -> Result<Vec<Word>> {
        if !self.stabilizes_level(n)? {
            return Err(Error::NotInStabilizer(n));
        }
        level_vertices(&self.tree, n)
            .iter()
            .map(|v| self.section(v))
            .collect()
    }

    /// psi_1, the first-level decomposition.
    pub fn psi(&self) -> Result<Vec<Word>> {
        self.psi_n(1)
    }

    fn units(&self) -> impl Iterator<Item = Unit> + '_ {
        self.letters.iter().flat_map(|l| {
            let inv = l.exp < 0;
            std::iter::repeat(Unit {
                gen: l.gen,
                base: l.base.clone(),
                inv,
            })
            .take(l.exp.unsigned_abs() as usize)
        })
    }
}

#[derive(Clone)]
struct Unit {
    gen: usize,
    base: Vertex,
    inv: bool,
}

fn normalize(group: &GroupDef, letters: Vec<Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        // sections of a finitary element below its support are the identity
        if let GenKind::Label(elem) = &group.gen(l.gen).kind {
            if let Some(s) = elem.support() {
                if l.base.level() >= s {
                    continue;
                }
            }
        }
        if let Some(top) = stack.last_mut() {
            if top.gen == l.gen && top.base == l.base {
                top.exp = group.reduce_exp(l.gen, top.exp + l.exp);
                if top.exp == 0 {
                    stack.pop();
                }
                continue;
            }
        }
        let exp = group.reduce_exp(l.gen, l.exp);
        if exp != 0 {
            stack.push(Letter::new(l.gen, l.base.clone(), exp));
        }
    }
    stack
}

// --- the single-generator calculus -----------------------------------------
//
// f = (f_1,...,f_d)σ acts by f(i·w) = σ(i)·f_i(w), hence
//   f⁻¹(i·w) = σ⁻¹(i)·f_{σ⁻¹(i)}⁻¹(w)
//   label(f⁻¹, v) = label(f, f⁻¹(v))⁻¹
//   (f⁻¹)_v = (f_{f⁻¹(v)})⁻¹
// A Label-generator section at base u has labels w ↦ label(u·w), so its
// section at v is the same generator at base u·v.

fn unit_apply(group: &GroupDef, tree: &DegreeSequence, unit: &Unit, v: &Vertex) -> Vertex {
    match &group.gen(unit.gen).kind {
        GenKind::Recursive { .. } => {
            rec_apply_units(group, unit.gen, unit.inv, v)
        }
        GenKind::Label(elem) => {
            let mut path = Vec::with_capacity(v.level());
            if !unit.inv {
                for (k, &entry) in v.path().iter().enumerate() {
                    let prefix = unit.base.join(&Vertex::new(v.path()[..k].to_vec()));
                    let degree = tree.degree_at(k + 1);
                    path.push(elem.label(&prefix, degree).apply(entry));
                }
            } else {
                let mut built: Vec<u32> = vec![];
                for (k, &entry) in v.path().iter().enumerate() {
                    let prefix = unit.base.join(&Vertex::new(built.clone()));
                    let degree = tree.degree_at(k + 1);
                    built.push(elem.label(&prefix, degree).inverse().apply(entry));
                }
                path = built;
            }
            Vertex::new(path)
        }
    }
}

fn rec_apply_units(group: &GroupDef, gen: usize, inv: bool, v: &Vertex) -> Vertex {
    if v.is_root() {
        return v.clone();
    }
    let GenKind::Recursive {
        root_perm,
        sections,
    } = &group.gen(gen).kind
    else {
        unreachable!()
    };
    let head = v.path()[0];
    let tail = Vertex::new(v.path()[1..].to_vec());
    if !inv {
        let j = root_perm.apply(head);
        let tail2 = raw_apply(group, &sections[(head - 1) as usize], false, &tail);
        prepend(j, tail2)
    } else {
        let j = root_perm.inverse().apply(head);
        let tail2 = raw_apply(group, &sections[(j - 1) as usize], true, &tail);
        prepend(j, tail2)
    }
}

fn prepend(head: u32, tail: Vertex) -> Vertex {
    let mut path = Vec::with_capacity(tail.level() + 1);
    path.push(head);
    path.extend_from_slice(tail.path());
    Vertex::new(path)
}

/// Apply a raw section word (or its inverse) of a recursive generator.
/// Recursive generators live on constant trees, so no tree tracking needed.
fn raw_apply(group: &GroupDef, letters: &[(usize, i64)], invert_word: bool, v: &Vertex) -> Vertex {
    let mut cur = v.clone();
    if !invert_word {
        for &(gen, exp) in letters {
            let inv = exp < 0;
            for _ in 0..exp.unsigned_abs() {
                cur = rec_apply_units(group, gen, inv, &cur);
            }
        }
    } else {
        for &(gen, exp) in letters.iter().rev() {
            let inv = exp >= 0;
            for _ in 0..exp.unsigned_abs() {
                cur = rec_apply_units(group, gen, inv, &cur);
            }
        }
    }
    cur
}

fn unit_label(group: &GroupDef, tree: &DegreeSequence, unit: &Unit, v: &Vertex) -> Permutation {
    let degree = tree.degree_at(v.level() + 1);
    match &group.gen(unit.gen).kind {
        GenKind::Recursive { .. } => {
            if !unit.inv {
                rec_label(group, unit.gen, v, degree)
            } else {
                let u = rec_apply_units(group, unit.gen, true, v);
                rec_label(group, unit.gen, &u, degree).inverse()
            }
        }
        GenKind::Label(elem) => {
            if !unit.inv {
                elem.label(&unit.base.join(v), degree)
            } else {
                let u = unit_apply(group, tree, unit, v);
                elem.label(&unit.base.join(&u), degree).inverse()
            }
        }
    }
}

fn rec_label(group: &GroupDef, gen: usize, v: &Vertex, degree: u32) -> Permutation {
    let GenKind::Recursive {
        root_perm,
        sections,
    } = &group.gen(gen).kind
    else {
        unreachable!()
    };
    if v.is_root() {
        return root_perm.clone();
    }
    let head = v.path()[0];
    let tail = Vertex::new(v.path()[1..].to_vec());
    raw_label(group, &sections[(head - 1) as usize], &tail, degree)
}

fn raw_label(group: &GroupDef, letters: &[(usize, i64)], v: &Vertex, degree: u32) -> Permutation {
    let mut perm = Permutation::identity(degree);
    let mut cur = v.clone();
    for &(gen, exp) in letters {
        let inv = exp < 0;
        for _ in 0..exp.unsigned_abs() {
            if !inv {
                perm = perm.then(&rec_label(group, gen, &cur, degree));
                cur = rec_apply_units(group, gen, false, &cur);
            } else {
                let u = rec_apply_units(group, gen, true, &cur);
                perm = perm.then(&rec_label(group, gen, &u, degree).inverse());
                cur = u;
            }
        }
    }
    perm
}

fn unit_section(
    group: &GroupDef,
    tree: &DegreeSequence,
    unit: &Unit,
    v: &Vertex,
    out: &mut Vec<Letter>,
) {
    if v.is_root() {
        out.push(Letter::new(
            unit.gen,
            unit.base.clone(),
            if unit.inv { -1 } else { 1 },
        ));
        return;
    }
    match &group.gen(unit.gen).kind {
        GenKind::Recursive { .. } => {
            if !unit.inv {
                rec_section(group, unit.gen, v, out);
            } else {
                let u = rec_apply_units(group, unit.gen, true, v);
                let mut sub = vec![];
                rec_section(group, unit.gen, &u, &mut sub);
                for l in sub.into_iter().rev() {
                    out.push(Letter::new(l.gen, l.base, -l.exp));
                }
            }
        }
        GenKind::Label(_) => {
            if !unit.inv {
                out.push(Letter::new(unit.gen, unit.base.join(v), 1));
            } else {
                let u = unit_apply(group, tree, unit, v);
                out.push(Letter::new(unit.gen, unit.base.join(&u), -1));
            }
        }
    }
}

fn rec_section(group: &GroupDef, gen: usize, v: &Vertex, out: &mut Vec<Letter>) {
    if v.is_root() {
        out.push(Letter::new(gen, Vertex::root(), 1));
        return;
    }
    let GenKind::Recursive { sections, .. } = &group.gen(gen).kind else {
        unreachable!()
    };
    let head = v.path()[0];
    let tail = Vertex::new(v.path()[1..].to_vec());
    raw_section(group, &sections[(head - 1) as usize], &tail, out);
}

fn raw_section(group: &GroupDef, letters: &[(usize, i64)], v: &Vertex, out: &mut Vec<Letter>) {
    let mut cur = v.clone();
    for &(gen, exp) in letters {
        let inv = exp < 0;
        for _ in 0..exp.unsigned_abs() {
            if !inv {
                rec_section(group, gen, &cur, out);
                cur = rec_apply_units(group, gen, false, &cur);
            } else {
                let u = rec_apply_units(group, gen, true, &cur);
                let mut sub = vec![];
                rec_section(group, gen, &u, &mut sub);
                for l in sub.into_iter().rev() {
                    out.push(Letter::new(l.gen, l.base, -l.exp));
                }
                cur = u;
            }
        }
    }
}

/// Portrait of a word above a fixed depth: labels at levels 0..depth-1,
/// identity labels omitted. Two words with equal depth-D portraits act
/// identically on levels <= D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portrait {
    depth: usize,
    labels: BTreeMap<Vertex, Permutation>,
}

impl Portrait {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, Permutation> {
        &self.labels
    }

    pub fn label(&self, v: &Vertex, degree: u32) -> Permutation {
        self.labels
            .get(v)
            .cloned()
            .unwrap_or_else(|| Permutation::identity(degree))
    }

    pub fn is_identity(&self) -> bool {
        self.labels.is_empty()
    }

    /// Action on a vertex of level <= depth, read off the labels.
    pub fn apply(&self, v: &Vertex) -> Vertex {
        assert!(v.level() <= self.depth);
        let mut path = Vec::with_capacity(v.level());
        for (k, &entry) in v.path().iter().enumerate() {
            let prefix = Vertex::new(v.path()[..k].to_vec());
            match self.labels.get(&prefix) {
                Some(p) => path.push(p.apply(entry)),
                None => path.push(entry),
            }
        }
        Vertex::new(path)
    }
}

/// Verdict for rigid-stabilizer membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RistVerdict {
    /// Support is provably confined to the subtree at the vertex.
    YesCertified,
    /// No non-identity label found outside the subtree down to this depth.
    YesUpToDepth(usize),
    /// A vertex outside the subtree carries a non-identity label.
    No { witness: Vertex },
}

/// Does `w` lie in Rist(v)? Membership is equivalent to all labels at
/// vertices outside the subtree T_v being identity: labels at levels above
/// `v` are checked exactly, sections at the siblings of `v` go through the
/// word problem for certification.
pub fn in_rigid_stabilizer(
    w: &Word,
    v: &Vertex,
    depth: usize,
    solver: &mut crate::wordprob::Solver,
) -> Result<RistVerdict> {
    v.validate(w.tree())?;
    if v.is_root() {
        return Ok(RistVerdict::YesCertified);
    }
    let n = v.level();
    // Labels strictly above level n are all outside T_v; check them exactly.
    for level in 0..n {
        for u in level_vertices(w.tree(), level) {
            if !w.label(&u)?.is_identity() {
                return Ok(RistVerdict::No { witness: u });
            }
        }
    }
    // w now fixes levels <= n pointwise; certify sections at the other
    // level-n vertices.
    let mut all_certified = true;
    for u in level_vertices(w.tree(), n) {
        if u == *v {
            continue;
        }
        let sec = w.section(&u)?;
        match solver.is_trivial(&sec) {
            crate::wordprob::TrivialityVerdict::Trivial => {}
            crate::wordprob::TrivialityVerdict::Nontrivial(rel) => {
                return Ok(RistVerdict::No {
                    witness: u.join(&rel),
                });
            }
            crate::wordprob::TrivialityVerdict::UndecidedAtBound => {
                all_certified = false;
            }
        }
    }
    if all_certified {
        return Ok(RistVerdict::YesCertified);
    }
    // Fall back to a depth-bounded label scan outside T_v.
    for level in n..=depth {
        for u in level_vertices(w.tree(), level) {
            if u.is_under(v) {
                continue;
            }
            if !w.label(&u)?.is_identity() {
                return Ok(RistVerdict::No { witness: u });
            }
        }
    }
    Ok(RistVerdict::YesUpToDepth(depth))
}

// --- word parsing -----------------------------------------------------------

pub(super) fn parse_word(group: &Arc<GroupDef>, text: &str) -> Result<Word> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let letters = parse_seq(group, &chars, &mut pos, 0)?;
    if pos != chars.len() {
        return Err(Error::Parse {
            line: 1,
            msg: format!("unexpected `{}` in word", chars[pos]),
        });
    }
    Ok(Word::from_letters(
        group.clone(),
        group.tree().clone(),
        letters,
    ))
}

fn parse_seq(
    group: &Arc<GroupDef>,
    chars: &[char],
    pos: &mut usize,
    depth: usize,
) -> Result<Vec<Letter>> {
    let mut out: Vec<Letter> = vec![];
    loop {
        while *pos < chars.len() && (chars[*pos].is_whitespace() || chars[*pos] == '*') {
            *pos += 1;
        }
        if *pos >= chars.len() {
            break;
        }
        let c = chars[*pos];
        if c == ')' {
            if depth == 0 {
                return Err(Error::Parse {
                    line: 1,
                    msg: "unbalanced `)`".into(),
                });
            }
            break;
        }
        let factor: Vec<Letter> = if c == '(' {
            *pos += 1;
            let inner = parse_seq(group, chars, pos, depth + 1)?;
            if *pos >= chars.len() || chars[*pos] != ')' {
                return Err(Error::Parse {
                    line: 1,
                    msg: "missing `)`".into(),
                });
            }
            *pos += 1;
            inner
        } else if c == '1' {
            *pos += 1;
            vec![]
        } else {
            // longest-match generator name
            let rest: String = chars[*pos..].iter().collect();
            let mut best: Option<(usize, usize)> = None; // (gen index, name len)
            for (idx, g) in group.generators().iter().enumerate() {
                if rest.starts_with(&g.name) {
                    let len = g.name.chars().count();
                    if best.map_or(true, |(_, blen)| len > blen) {
                        best = Some((idx, len));
                    }
                }
            }
            let (idx, len) = best.ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("no generator matches at `{}`", rest),
            })?;
            *pos += len;
            vec![Letter::new(idx, Vertex::root(), 1)]
        };
        // optional exponent
        let exp = if *pos < chars.len() && chars[*pos] == '^' {
            *pos += 1;
            let mut num = String::new();
            if *pos < chars.len() && chars[*pos] == '-' {
                num.push('-');
                *pos += 1;
            }
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                num.push(chars[*pos]);
                *pos += 1;
            }
            num.parse::<i64>().map_err(|_| Error::Parse {
                line: 1,
                msg: "bad exponent".into(),
            })?
        } else {
            1
        };
        if exp >= 0 {
            for _ in 0..exp {
                out.extend(factor.iter().cloned());
            }
        } else {
            for _ in 0..(-exp) {
                for l in factor.iter().rev() {
                    out.push(Letter::new(l.gen, l.base.clone(), -l.exp));
                }
            }
        }
    }
    Ok(out)
}
