//! Generator words: `a1*theta1`, `y^2`, `x^-1`, `a(1234)`, `c^3d`.
//!
//! Names match by longest prefix against the group's bindings, so juxtaposition
//! needs no separator. `(…)` reads a permutation literal; `1` is the identity.

use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::perm::Perm;

pub(crate) fn eval(group: &Group, word: &str) -> Result<Elem> {
    let mut bindings = group.bindings();
    bindings.retain(|(name, _)| !name.starts_with('('));
    bindings.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    let mut acc = group.identity();
    let mut rest = word.trim();
    while !rest.is_empty() {
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() || c == '*' || c == '·' {
            rest = &rest[c.len_utf8()..];
            continue;
        }
        let (mut x, used) = if c == '(' {
            let (p, used) = Perm::parse_prefix(rest)?;
            let x = group.resolve_perm(&p).ok_or_else(|| Error::UnknownGenerator(rest[..used].to_string()))?;
            (x, used)
        } else if c == '1' {
            (group.identity(), 1)
        } else if let Some((name, e)) = bindings.iter().find(|(name, _)| rest.starts_with(name.as_str())) {
            (*e, name.len())
        } else {
            let token: String = rest.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
            return Err(Error::UnknownGenerator(if token.is_empty() { rest.to_string() } else { token }));
        };
        rest = &rest[used..];
        if let Some(after) = rest.strip_prefix('^') {
            let after = after.trim_start();
            let (inner, skip) = match after.strip_prefix('(') {
                Some(p) => {
                    let close = p.find(')').ok_or_else(|| Error::Parse(format!("bad exponent in {word:?}")))?;
                    (&p[..close], close + 2)
                }
                None => {
                    let len = after
                        .char_indices()
                        .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
                        .count();
                    (&after[..len], len)
                }
            };
            let k: i64 = inner.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {word:?}")))?;
            x = group.pow(x, k);
            rest = &after[skip..];
        }
        acc = group.mul(acc, x);
    }
    Ok(acc)
}

fn push_runs(out: &mut Vec<String>, names: &[String], indices: &[u32]) {
    let mut i = 0;
    while i < indices.len() {
        let mut j = i;
        while j < indices.len() && indices[j] == indices[i] {
            j += 1;
        }
        let name = &names[indices[i] as usize];
        if j - i == 1 {
            out.push(name.clone());
        } else {
            out.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
}

pub(crate) fn format(group: &Group, x: Elem) -> String {
    let mut parts = Vec::new();
    match group {
        Group::Table(t) => match t.word_indices(x as u32) {
            Some(idx) => push_runs(&mut parts, t.names(), &idx),
            None => return format!("<element {x}>"),
        },
        Group::Twisted(t) => {
            let names = t.names();
            let mut offset = 0;
            for (c, comp) in t.components().iter().enumerate() {
                let k = comp.gens().len();
                let v = t.coord(x, c);
                if v != 0 {
                    match comp.word_indices(v) {
                        Some(idx) => push_runs(&mut parts, &names[offset..offset + k], &idx),
                        None => return format!("<element {x}>"),
                    }
                }
                offset += k;
            }
            let d = t.d_part(x);
            for (b, name) in t.d_names().iter().enumerate() {
                if d >> b & 1 == 1 {
                    parts.push(name.clone());
                }
            }
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
