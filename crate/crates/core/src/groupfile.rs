//! Line-oriented group definition files.
//!
//! ```text
//! # Hanoi Tower group
//! tree 3
//! gen a = (1, 1, a) (1 2)
//! gen b = (1, b, 1) (1 3)
//! gen c = (c, 1, 1) (2 3)
//! order a = 2
//! order b = 2
//! order c = 2
//! ```
//!
//! `tree` takes either a constant degree or `preperiod=[...] period=[...]`.
//! A generator is `rooted <cycles>` or a section tuple followed by a root
//! permutation in cycle notation (`()` for the identity). Declared orders
//! are verified through the word problem at load time.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::autom::{GenKind, GroupBuilder, GroupDef};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tree::DegreeSequence;
use crate::wordprob::Solver;

pub fn parse_group_file(text: &str) -> Result<Arc<GroupDef>> {
    let mut tree: Option<(DegreeSequence, usize)> = None;
    let mut gens: Vec<(String, String, usize)> = vec![]; // name, body, line
    let mut orders: BTreeMap<String, (u64, usize)> = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("tree") {
            if tree.is_some() {
                return Err(Error::Parse {
                    line,
                    msg: "duplicate tree declaration".into(),
                });
            }
            tree = Some((parse_tree_spec(rest.trim(), line)?, line));
        } else if let Some(rest) = content.strip_prefix("gen ") {
            let (name, body) = split_equals(rest, line)?;
            if !is_valid_name(&name) {
                return Err(Error::Parse {
                    line,
                    msg: format!("invalid generator name `{}`", name),
                });
            }
            if gens.iter().any(|(n, _, _)| *n == name) {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate generator `{}`", name),
                });
            }
            gens.push((name, body, line));
        } else if let Some(rest) = content.strip_prefix("order ") {
            let (name, body) = split_equals(rest, line)?;
            let value: u64 = body.trim().parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad order `{}`", body),
            })?;
            if value == 0 {
                return Err(Error::Parse {
                    line,
                    msg: "order must be positive".into(),
                });
            }
            orders.insert(name, (value, line));
        } else {
            return Err(Error::Parse {
                line,
                msg: format!("unrecognized directive `{}`", content),
            });
        }
    }

    let (tree, _) = tree.ok_or(Error::Parse {
        line: 0,
        msg: "missing `tree` declaration".into(),
    })?;
    if gens.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no generators declared".into(),
        });
    }
    let names: Vec<String> = gens.iter().map(|(n, _, _)| n.clone()).collect();
    let d1 = tree.degree_at(1);

    let mut builder = GroupBuilder::new(tree.clone());
    for (name, body, line) in &gens {
        let body = body.trim();
        if let Some(cycles) = body.strip_prefix("rooted") {
            let perm = Permutation::parse(d1, cycles.trim()).map_err(|e| Error::Parse {
                line: *line,
                msg: e.to_string(),
            })?;
            builder = builder.rooted(name, perm);
        } else if body.starts_with('(') {
            let (sections_src, perm_src) = split_sections(body, *line)?;
            let sections = sections_src
                .iter()
                .map(|src| tokenize_word(&names, src, *line))
                .collect::<Result<Vec<_>>>()?;
            if sections.len() != d1 as usize {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!(
                        "generator `{}` has {} sections, tree degree is {}",
                        name,
                        sections.len(),
                        d1
                    ),
                });
            }
            let perm = Permutation::parse(d1, perm_src.trim()).map_err(|e| Error::Parse {
                line: *line,
                msg: e.to_string(),
            })?;
            builder = builder.recursive(name, perm, sections);
        } else {
            return Err(Error::Parse {
                line: *line,
                msg: format!("generator body must be `rooted ...` or `(...) ...`, got `{}`", body),
            });
        }
    }
    for (name, (value, line)) in &orders {
        if !names.contains(name) {
            return Err(Error::Parse {
                line: *line,
                msg: format!("order declared for unknown generator `{}`", name),
            });
        }
        let _ = value;
    }

    let unverified = builder.build().map_err(parse_error_passthrough)?;
    // verify declared orders before trusting them for exponent reduction
    let mut solver = Solver::default();
    for (name, (value, line)) in &orders {
        let g = unverified.gen_word(name)?;
        if !solver.is_trivial(&g.power(*value as i64)).is_trivial() {
            return Err(Error::Parse {
                line: *line,
                msg: format!("could not certify {}^{} = 1", name, value),
            });
        }
    }

    // rebuild with the verified orders declared
    let mut builder = GroupBuilder::new(tree);
    for (name, _, _) in &gens {
        let idx = unverified.gen_index(name).expect("just built");
        match &unverified.generators()[idx].kind {
            GenKind::Recursive {
                root_perm,
                sections,
            } => {
                let named: Vec<Vec<(String, i64)>> = sections
                    .iter()
                    .map(|sec| {
                        sec.iter()
                            .map(|&(g, e)| (unverified.generators()[g].name.clone(), e))
                            .collect()
                    })
                    .collect();
                builder = builder.recursive(name, root_perm.clone(), named);
            }
            GenKind::Label(_) => unreachable!("files declare recursive generators only"),
        }
    }
    for (name, (value, _)) in &orders {
        builder = builder.declare_order(name, *value);
    }
    builder.build()
}

fn parse_error_passthrough(e: Error) -> Error {
    match e {
        Error::ArityMismatch { name, expected, got } => Error::Parse {
            line: 0,
            msg: format!("generator `{}`: expected {} sections, got {}", name, expected, got),
        },
        other => other,
    }
}

fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !name.chars().next().unwrap().is_ascii_digit()
}

fn split_equals(rest: &str, line: usize) -> Result<(String, String)> {
    let eq = rest.find('=').ok_or(Error::Parse {
        line,
        msg: "expected `=`".into(),
    })?;
    Ok((
        rest[..eq].trim().to_string(),
        rest[eq + 1..].trim().to_string(),
    ))
}

fn parse_tree_spec(spec: &str, line: usize) -> Result<DegreeSequence> {
    if let Ok(d) = spec.parse::<u32>() {
        if d < 2 {
            return Err(Error::Parse {
                line,
                msg: format!("tree degree {} < 2", d),
            });
        }
        return Ok(DegreeSequence::constant(d));
    }
    let mut preperiod = None;
    let mut period = None;
    for part in spec.split_whitespace() {
        if let Some(v) = part.strip_prefix("preperiod=") {
            preperiod = Some(parse_int_list(v, line)?);
        } else if let Some(v) = part.strip_prefix("period=") {
            period = Some(parse_int_list(v, line)?);
        } else {
            return Err(Error::Parse {
                line,
                msg: format!("bad tree attribute `{}`", part),
            });
        }
    }
    DegreeSequence::new(
        preperiod.unwrap_or_default(),
        period.ok_or(Error::Parse {
            line,
            msg: "tree needs `period=[...]`".into(),
        })?,
    )
    .map_err(|e| Error::Parse {
        line,
        msg: e.to_string(),
    })
}

fn parse_int_list(v: &str, line: usize) -> Result<Vec<u32>> {
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(Error::Parse {
            line,
            msg: format!("expected `[...]`, got `{}`", v),
        })?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|s| {
            s.trim().parse::<u32>().map_err(|_| Error::Parse {
                line,
                msg: format!("bad list entry `{}`", s),
            })
        })
        .collect()
}

/// Split `(w1, ..., wd) <cycles>` into section sources and the cycle text.
/// Commas split only at nesting depth 1, so section words may contain
/// parenthesized factors.
fn split_sections(body: &str, line: usize) -> Result<(Vec<String>, String)> {
    let bytes: Vec<char> = body.chars().collect();
    debug_assert_eq!(bytes[0], '(');
    let mut depth = 0usize;
    let mut sections = vec![];
    let mut cur = String::new();
    let mut end = None;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            '(' => {
                depth += 1;
                if depth > 1 {
                    cur.push(c);
                }
            }
            ')' => {
                depth = depth.checked_sub(1).ok_or(Error::Parse {
                    line,
                    msg: "unbalanced `)`".into(),
                })?;
                if depth == 0 {
                    sections.push(cur.trim().to_string());
                    end = Some(i);
                    break;
                }
                cur.push(c);
            }
            ',' if depth == 1 => {
                sections.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => {
                if depth >= 1 {
                    cur.push(c);
                }
            }
        }
    }
    let end = end.ok_or(Error::Parse {
        line,
        msg: "unbalanced `(`".into(),
    })?;
    let rest: String = bytes[end + 1..].iter().collect();
    let rest = rest.trim().to_string();
    if rest.is_empty() {
        return Err(Error::Parse {
            line,
            msg: "missing root permutation (use `()` for the identity)".into(),
        });
    }
    Ok((sections, rest))
}

/// Tokenize a section word over the declared generator names (longest
/// match), with `^` exponents, parenthesized factors, `1` for the identity.
fn tokenize_word(names: &[String], text: &str, line: usize) -> Result<Vec<(String, i64)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let letters = tokenize_seq(names, &chars, &mut pos, 0, line)?;
    if pos != chars.len() {
        return Err(Error::Parse {
            line,
            msg: format!("unexpected `{}` in word `{}`", chars[pos], text),
        });
    }
    Ok(letters)
}

fn tokenize_seq(
    names: &[String],
    chars: &[char],
    pos: &mut usize,
    depth: usize,
    line: usize,
) -> Result<Vec<(String, i64)>> {
    let mut out: Vec<(String, i64)> = vec![];
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
                    line,
                    msg: "unbalanced `)` in word".into(),
                });
            }
            break;
        }
        let factor: Vec<(String, i64)> = if c == '(' {
            *pos += 1;
            let inner = tokenize_seq(names, chars, pos, depth + 1, line)?;
            if *pos >= chars.len() || chars[*pos] != ')' {
                return Err(Error::Parse {
                    line,
                    msg: "missing `)` in word".into(),
                });
            }
            *pos += 1;
            inner
        } else if c == '1' {
            *pos += 1;
            vec![]
        } else {
            let rest: String = chars[*pos..].iter().collect();
            let best = names
                .iter()
                .filter(|n| rest.starts_with(n.as_str()))
                .max_by_key(|n| n.len())
                .ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("unknown generator at `{}`", rest),
                })?;
            *pos += best.chars().count();
            vec![(best.clone(), 1)]
        };
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
                line,
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
                for (n, e) in factor.iter().rev() {
                    out.push((n.clone(), -e));
                }
            }
        }
    }
    Ok(out)
}

/// Emit a group as a definition file. Only recursive-generator groups are
/// representable; parsing the output reproduces the same definition.
pub fn format_group_file(group: &GroupDef) -> Result<String> {
    let mut out = String::new();
    if let Some(name) = group.name() {
        out.push_str(&format!("# {}\n", name));
    }
    let tree = group.tree();
    if tree.is_constant() {
        out.push_str(&format!("tree {}\n", tree.degree_at(1)));
    } else {
        out.push_str(&format!("tree {}\n", tree));
    }
    let multi_char = group
        .generators()
        .iter()
        .any(|g| g.name.chars().count() > 1);
    for gen in group.generators() {
        match &gen.kind {
            GenKind::Label(_) => {
                return Err(Error::Unsupported(
                    "label-function generators have no file representation".into(),
                ))
            }
            GenKind::Recursive {
                root_perm,
                sections,
            } => {
                if sections.iter().all(|s| s.is_empty()) {
                    out.push_str(&format!("gen {} = rooted {}\n", gen.name, root_perm));
                } else {
                    let parts: Vec<String> = sections
                        .iter()
                        .map(|sec| {
                            if sec.is_empty() {
                                "1".to_string()
                            } else {
                                sec.iter()
                                    .map(|&(g, e)| {
                                        let name = &group.generators()[g].name;
                                        if e == 1 {
                                            name.clone()
                                        } else {
                                            format!("{}^{}", name, e)
                                        }
                                    })
                                    .collect::<Vec<_>>()
                                    .join(if multi_char { "*" } else { "" })
                            }
                        })
                        .collect();
                    out.push_str(&format!(
                        "gen {} = ({}) {}\n",
                        gen.name,
                        parts.join(", "),
                        root_perm
                    ));
                }
            }
        }
    }
    for gen in group.generators() {
        if let Some(m) = gen.declared_order {
            out.push_str(&format!("order {} = {}\n", gen.name, m));
        }
    }
    Ok(out)
}

/// Structural equality of group definitions (names, tree, recursions,
/// declared orders) — the round-trip invariant for the file format.
pub fn same_definition(a: &GroupDef, b: &GroupDef) -> bool {
    if a.tree() != b.tree() || a.generators().len() != b.generators().len() {
        return false;
    }
    a.generators().iter().zip(b.generators()).all(|(x, y)| {
        if x.name != y.name || x.declared_order != y.declared_order {
            return false;
        }
        match (&x.kind, &y.kind) {
            (
                GenKind::Recursive {
                    root_perm: p1,
                    sections: s1,
                },
                GenKind::Recursive {
                    root_perm: p2,
                    sections: s2,
                },
            ) => p1 == p2 && s1 == s2,
            _ => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn parses_hanoi_and_roundtrips() {
        let text = "\
# Hanoi Tower group
tree 3
gen a = (1, 1, a) (1 2)
gen b = (1, b, 1) (1 3)
gen c = (c, 1, 1) (2 3)
order a = 2
order b = 2
order c = 2
";
        let parsed = parse_group_file(text).unwrap();
        let reference = catalog::hanoi().unwrap();
        assert!(same_definition(&parsed, &reference));
        let emitted = format_group_file(&parsed).unwrap();
        let reparsed = parse_group_file(&emitted).unwrap();
        assert!(same_definition(&parsed, &reparsed));
    }

    #[test]
    fn parses_minimal_rooted() {
        let g = parse_group_file("tree 2\ngen a = rooted (1 2)\n").unwrap();
        assert_eq!(g.generator_names(), vec!["a"]);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let err = parse_group_file("tree 3\ngen g = (1, 1) ()\n");
        assert!(err.is_err());
    }

    #[test]
    fn wrong_declared_order_is_rejected() {
        // the rooted swap has order 2, not 3
        let err = parse_group_file("tree 2\ngen a = rooted (1 2)\norder a = 3\n");
        assert!(matches!(err, Err(Error::Parse { .. })));
    }

    #[test]
    fn unknown_generator_reference_carries_line() {
        let err = parse_group_file("tree 2\ngen g = (h, 1) ()\n");
        match err {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn eventually_periodic_tree_spec() {
        let g = parse_group_file(
            "tree preperiod=[2] period=[3,4]\ngen f = rooted (1 2)\n",
        );
        // recursive generators need constant trees; rooted counts as recursive
        assert!(g.is_err());
    }
}
