//! Finite permutations with the paper-facing cycle notation "(1 2 3)".
//!
//! Composition is left-to-right throughout the crate: `(p.then(q))(i) = q(p(i))`.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of {1, ..., d}, stored 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: u32) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// From 0-based image list; must be a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &img in &images {
            if (img as usize) >= d || seen[img as usize] {
                return Err(Error::Unsupported(format!(
                    "not a permutation: images {:?}",
                    images
                )));
            }
            seen[img as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// From disjoint cycles in 1-based notation, e.g. `&[vec![1,2], vec![3,4,5]]`.
    pub fn from_cycles(degree: u32, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree).collect();
        let mut touched = vec![false; degree as usize];
        for cycle in cycles {
            for (k, &entry) in cycle.iter().enumerate() {
                if entry < 1 || entry > degree {
                    return Err(Error::Unsupported(format!(
                        "cycle entry {} out of range 1..={}",
                        entry, degree
                    )));
                }
                if touched[(entry - 1) as usize] {
                    return Err(Error::Unsupported(format!(
                        "cycles are not disjoint at {}",
                        entry
                    )));
                }
                touched[(entry - 1) as usize] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[(entry - 1) as usize] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parse cycle notation: `"(1 2)(3 4 5)"`, `"()"` for the identity.
    pub fn parse(degree: u32, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<u32>> = vec![];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Unsupported("empty permutation".into()));
        }
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::Unsupported(format!(
                    "expected '(' in permutation: {}",
                    text
                )));
            }
            let close = rest.find(')').ok_or_else(|| {
                Error::Unsupported(format!("unbalanced parenthesis in permutation: {}", text))
            })?;
            let inner = &rest[1..close];
            let entries: Vec<u32> = inner
                .split(|c: char| c == ' ' || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>().map_err(|_| {
                        Error::Unsupported(format!("bad cycle entry `{}` in {}", s, text))
                    })
                })
                .collect::<Result<_>>()?;
            if !entries.is_empty() {
                cycles.push(entries);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: u32) -> u32 {
        self.images[(point - 1) as usize] + 1
    }

    /// `self` then `other` (left-to-right composition).
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    pub fn power(&self, e: i64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        for _ in 0..e.unsigned_abs() {
            result = result.then(&base);
        }
        result
    }

    /// Disjoint cycles (1-based), fixed points omitted, each cycle led by its
    /// least element, cycles sorted by leader.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let d = self.images.len();
        let mut seen = vec![false; d];
        let mut out = vec![];
        for start in 0..d {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32 + 1];
            seen[start] = true;
            let mut cur = self.images[start] as usize;
            while cur != start {
                seen[cur] = true;
                cycle.push(cur as u32 + 1);
                cur = self.images[cur] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| crate::util::lcm(acc, c.len() as u64))
    }

    /// Orbit lengths of all points, including fixed points.
    pub fn cycle_lengths(&self) -> Vec<u64> {
        let mut fixed = self.images.len();
        let mut lengths: Vec<u64> = vec![];
        for c in self.cycles() {
            fixed -= c.len();
            lengths.push(c.len() as u64);
        }
        lengths.extend(std::iter::repeat(1).take(fixed));
        lengths.sort_unstable();
        lengths
    }

    /// The standard cycle (1 2 ... d).
    pub fn standard_cycle(degree: u32) -> Permutation {
        Permutation {
            images: (0..degree).map(|i| (i + 1) % degree).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let entries: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", entries.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_left_to_right() {
        // (1 2) then (1 3): 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
        let p = Permutation::parse(3, "(1 2)").unwrap();
        let q = Permutation::parse(3, "(1 3)").unwrap();
        let pq = p.then(&q);
        assert_eq!(pq, Permutation::parse(3, "(1 2 3)").unwrap());
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for text in ["(1 2)", "(1 2 3)", "(1 2)(3 4 5)", "()"] {
            let p = Permutation::parse(5, text).unwrap();
            let q = Permutation::parse(5, &p.to_string()).unwrap();
            assert_eq!(p, q);
        }
        assert!(Permutation::parse(3, "(1 4)").is_err());
        assert!(Permutation::parse(3, "(1 2)(2 3)").is_err());
    }

    #[test]
    fn inverse_and_order() {
        let p = Permutation::parse(5, "(1 2)(3 4 5)").unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_lengths(), vec![2, 3]);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn standard_cycle_maps_forward() {
        let c = Permutation::standard_cycle(4);
        assert_eq!(c.apply(1), 2);
        assert_eq!(c.apply(4), 1);
        assert_eq!(c, Permutation::parse(4, "(1 2 3 4)").unwrap());
    }
}
