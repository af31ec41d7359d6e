//! Permutations on `{1, ..., n}` written in cycle notation.
//!
//! Products compose left to right: `p * q` applies `p` first, then `q`.
//! Adjacent cycles in a literal such as `(12)(34)` multiply in the same order.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation stored as 0-based images with trailing fixed points trimmed,
/// so equal permutations compare and hash equal regardless of degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity() -> Self {
        Perm(Vec::new())
    }

    /// Builds from 0-based images; `images` must be a bijection of `0..len`.
    pub fn from_images(mut images: Vec<u16>) -> Self {
        while let Some(&last) = images.last() {
            if last as usize == images.len() - 1 {
                images.pop();
            } else {
                break;
            }
        }
        Perm(images)
    }

    pub fn cycle(points: &[u16]) -> Self {
        let max = points.iter().copied().max().unwrap_or(0) as usize;
        let mut images: Vec<u16> = (0..=max as u16).collect();
        for (i, &p) in points.iter().enumerate() {
            images[p as usize] = points[(i + 1) % points.len()];
        }
        Perm::from_images(images)
    }

    /// Smallest degree on which this permutation acts nontrivially.
    pub fn support_degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.0.get(point as usize).copied().unwrap_or(point)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        let n = self.0.len().max(other.0.len());
        let images = (0..n as u16).map(|i| other.apply(self.apply(i))).collect();
        Perm::from_images(images)
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Perm(images)
    }

    pub fn is_odd(&self) -> bool {
        let parity: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        parity % 2 == 1
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u16];
            seen[start] = true;
            let mut next = self.0[start];
            while next as usize != start {
                seen[next as usize] = true;
                cycle.push(next);
                next = self.0[next as usize];
            }
            out.push(cycle);
        }
        out
    }

    /// Parses one or more adjacent cycles such as `(12)(34)` or `(1,10,3)`.
    /// Points are 1-based. Digits are single points unless commas are present.
    pub fn parse(text: &str) -> Result<Perm> {
        let (perm, used) = Perm::parse_prefix(text)?;
        if used != text.len() {
            return Err(Error::Parse(format!("trailing text after permutation in {text:?}")));
        }
        Ok(perm)
    }

    /// Parses adjacent cycles at the start of `text`; returns the permutation and bytes consumed.
    pub fn parse_prefix(text: &str) -> Result<(Perm, usize)> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut result = Perm::identity();
        let mut any = false;
        while pos < bytes.len() && bytes[pos] == b'(' {
            let close = text[pos..]
                .find(')')
                .map(|i| pos + i)
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let inner = &text[pos + 1..close];
            result = result.mul(&Perm::cycle(&parse_cycle_points(inner)?));
            pos = close + 1;
            any = true;
        }
        if !any {
            return Err(Error::Parse(format!("expected a cycle in {text:?}")));
        }
        Ok((result, pos))
    }
}

fn parse_cycle_points(inner: &str) -> Result<Vec<u16>> {
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let points: Vec<u16> = if inner.contains(',') {
        inner
            .split(',')
            .map(|s| s.trim().parse::<u16>().map_err(|_| Error::Parse(format!("bad cycle point {s:?}"))))
            .collect::<Result<_>>()?
    } else {
        inner
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_digit(10).map(|d| d as u16).ok_or_else(|| Error::Parse(format!("bad cycle point {c:?}"))))
            .collect::<Result<_>>()?
    };
    let mut sorted = points.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != points.len() || points.contains(&0) {
        return Err(Error::Parse(format!("invalid cycle ({inner})")));
    }
    Ok(points.into_iter().map(|p| p - 1).collect())
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let commas = self.0.len() > 9;
        for cycle in cycles {
            let points: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
            if commas {
                write!(f, "({})", points.join(","))?;
            } else {
                write!(f, "({})", points.concat())?;
            }
        }
        Ok(())
    }
}

/// True if `text` is written entirely as cycle literals.
pub fn is_cycle_literal(text: &str) -> bool {
    text.starts_with('(') && Perm::parse(text).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composes_left_to_right() {
        let a = Perm::parse("(12)").unwrap();
        let b = Perm::parse("(13)").unwrap();
        // 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
        assert_eq!(a.mul(&b), Perm::parse("(123)").unwrap());
        assert_eq!(Perm::parse("(12)(13)").unwrap(), Perm::parse("(123)").unwrap());
    }

    #[test]
    fn display_round_trips() {
        for text in ["(12)(34)", "(12345)", "(1,10,3)(2,11)", "()"] {
            let p = if text == "()" { Perm::identity() } else { Perm::parse(text).unwrap() };
            assert_eq!(Perm::parse(&p.to_string()).unwrap_or_default(), p);
        }
        assert_eq!(Perm::parse("(14)(32)").unwrap().to_string(), "(14)(23)");
    }

    #[test]
    fn inverse_and_parity() {
        let p = Perm::parse("(1234)").unwrap();
        assert!(p.mul(&p.inverse()).is_identity());
        assert!(p.is_odd());
        assert!(!Perm::parse("(123)").unwrap().is_odd());
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(Perm::parse("(11)").is_err());
        assert!(Perm::parse("(1a)").is_err());
        assert!(Perm::parse("(0,1)").is_err());
    }
}
