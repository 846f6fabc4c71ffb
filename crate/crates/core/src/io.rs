//! Line-oriented group files:
//!
//! ```text
//! # comment
//! name S4
//! degree 4
//! perm (1,2)
//! perm (1 2 3 4)
//! expect order 24
//! expect rank 2
//! ```
//!
//! Cycles use 1-based points separated by commas or whitespace.

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::subgroup::ranks;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub expected_order: Option<u64>,
    pub expected_rank: Option<usize>,
}

impl GroupFile {
    pub fn from_group(name: Option<String>, g: &PermutationGroup) -> Self {
        GroupFile {
            name,
            degree: g.degree(),
            generators: g.generators().to_vec(),
            expected_order: Some(g.order()),
            expected_rank: None,
        }
    }

    /// The generated group, after checking the expected annotations.
    pub fn group(&self) -> Result<PermutationGroup> {
        let g = PermutationGroup::from_generators(self.degree, &self.generators)?;
        if let Some(o) = self.expected_order {
            if g.order() != o {
                return Err(Error::Precondition(format!("expected order {o}, generated order {}", g.order())));
            }
        }
        if let Some(r) = self.expected_rank {
            let actual = ranks(&g)?.rank;
            if actual != r {
                return Err(Error::Precondition(format!("expected rank {r}, computed rank {actual}")));
            }
        }
        Ok(g)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Parses cycle notation starting at 1-based `column` of `line`.
fn parse_cycles(text: &str, degree: usize, line: usize, column: usize) -> Result<Permutation> {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let col = |byte: usize| column + text[..byte].chars().count();
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '(' {
            return Err(err(line, col(pos), format!("expected `(`, found `{c}`")));
        }
        i += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            while i < chars.len() && (chars[i].1.is_whitespace() || chars[i].1 == ',') {
                i += 1;
            }
            let Some(&(pos, c)) = chars.get(i) else {
                return Err(err(line, col(text.len()), "unterminated cycle"));
            };
            if c == ')' {
                i += 1;
                break;
            }
            if !c.is_ascii_digit() {
                return Err(err(line, col(pos), format!("unexpected `{c}` in cycle")));
            }
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |&(b, _)| b);
            let digits = &text[pos..end];
            let pt: usize = digits.parse().map_err(|_| err(line, col(pos), "point out of range"))?;
            if pt == 0 || pt > degree {
                return Err(err(line, col(chars[start].0), format!("point {pt} outside 1..{degree}")));
            }
            if used[pt - 1] {
                return Err(err(line, col(pos), format!("point {pt} repeated")));
            }
            used[pt - 1] = true;
            cycle.push(pt - 1);
        }
        for (k, &pt) in cycle.iter().enumerate() {
            images[pt] = cycle[(k + 1) % cycle.len()] as u32;
        }
    }
    Permutation::from_images(images)
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let mut file = GroupFile { name: None, degree: 0, generators: Vec::new(), expected_order: None, expected_rank: None };
    let mut have_degree = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap();
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_column = indent + keyword.chars().count() + 2;
        let number = |s: &str| -> Result<u64> {
            s.trim().parse().map_err(|_| err(line, rest_column, format!("expected a number, found `{}`", s.trim())))
        };
        match keyword {
            "name" => file.name = Some(rest.trim().to_string()),
            "degree" => {
                if have_degree {
                    return Err(err(line, indent + 1, "degree given twice"));
                }
                if !file.generators.is_empty() {
                    return Err(err(line, indent + 1, "degree must precede the generators"));
                }
                file.degree = number(rest)? as usize;
                have_degree = true;
            }
            "perm" => {
                if !have_degree {
                    return Err(err(line, indent + 1, "perm before degree"));
                }
                file.generators.push(parse_cycles(rest, file.degree, line, rest_column)?);
            }
            "expect" => {
                let rest = rest.trim_start();
                let (what, value) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                match what {
                    "order" => file.expected_order = Some(number(value)?),
                    "rank" => file.expected_rank = Some(number(value)? as usize),
                    _ => return Err(err(line, rest_column, format!("unknown expectation `{what}`"))),
                }
            }
            _ => return Err(err(line, indent + 1, format!("unknown keyword `{keyword}`"))),
        }
    }
    if !have_degree {
        return Err(err(text.lines().count().max(1), 1, "missing degree line"));
    }
    Ok(file)
}

/// Canonical text: name, degree, one `perm` line per generator in comma
/// notation, then the expectations.
pub fn serialize_group_file(file: &GroupFile) -> String {
    let mut out = String::new();
    if let Some(name) = &file.name {
        out.push_str(&format!("name {name}\n"));
    }
    out.push_str(&format!("degree {}\n", file.degree));
    for g in &file.generators {
        out.push_str(&format!("perm {g}\n"));
    }
    if let Some(o) = file.expected_order {
        out.push_str(&format!("expect order {o}\n"));
    }
    if let Some(r) = file.expected_rank {
        out.push_str(&format!("expect rank {r}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_file() {
        let f = parse_group_file("degree 4\nperm (1 2)\nperm (1 2 3 4)\nexpect order 24").unwrap();
        assert_eq!(f.group().unwrap().order(), 24);
        assert_eq!(serialize_group_file(&f), "degree 4\nperm (1,2)\nperm (1,2,3,4)\nexpect order 24\n");
    }

    #[test]
    fn repeated_point_is_located() {
        let e = parse_group_file("degree 3\nperm (1 2)(2 3)").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, column: 12, message: "point 2 repeated".into() });
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_group_file("perm (1,2)"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_group_file("degree 3\nperm (1,4)"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_group_file("degree 3\nperm (1,2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_group_file("degree x"), Err(Error::Parse { line: 1, column: 8, .. })));
        assert!(matches!(parse_group_file("degree 3\nfoo"), Err(Error::Parse { line: 2, column: 1, .. })));
        let bad_order = parse_group_file("degree 3\nperm (1,2,3)\nexpect order 6").unwrap();
        assert!(matches!(bad_order.group(), Err(Error::Precondition(_))));
    }
}
