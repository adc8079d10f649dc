//! Line-oriented text format for contact semilattices.
//!
//! ```text
//! # comment
//! elements 0 a b c 1
//! zero 0
//! le 0 a            # or: join a b = 1
//! contact a b       # or: contact overlap
//! top 1             # optional
//! ```
//!
//! Order declarations are closed reflexively and transitively; join
//! declarations must cover every pair of distinct nonzero elements (joins
//! with 0 and with the element itself are implied). Contact pairs are
//! closed symmetrically.

use std::fmt::Write as _;
use std::path::Path;

use crate::contact::{overlap_contact, ContactRelation, ContactSemilattice};
use crate::error::{Error, Result};
use crate::order::JoinSemilattice;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::StructureParse {
        line,
        message: message.into(),
    }
}

enum Contact {
    Unset,
    Overlap,
    Pairs(Vec<(usize, usize)>),
}

pub fn parse_structure(text: &str) -> Result<ContactSemilattice> {
    let mut names: Option<Vec<String>> = None;
    let mut zero: Option<usize> = None;
    let mut top: Option<usize> = None;
    let mut le: Vec<(usize, usize)> = Vec::new();
    let mut joins: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut contact = Contact::Unset;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, args)) = words.split_first() else {
            continue;
        };
        if keyword == "elements" {
            if names.is_some() {
                return Err(parse_error(line, "duplicate `elements` line"));
            }
            if args.is_empty() {
                return Err(parse_error(line, "`elements` needs at least one name"));
            }
            let list: Vec<String> = args.iter().map(|s| s.to_string()).collect();
            if let Some(dup) = list.iter().enumerate().find(|(k, n)| list[..*k].contains(n)) {
                return Err(parse_error(line, format!("duplicate element `{}`", dup.1)));
            }
            names = Some(list);
            continue;
        }
        let Some(known) = names.as_ref() else {
            return Err(parse_error(line, format!("`{keyword}` before `elements`")));
        };
        let index = |name: &str| {
            known
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| parse_error(line, format!("unknown element `{name}`")))
        };
        match (keyword, args) {
            ("zero", [z]) => {
                if zero.is_some() {
                    return Err(parse_error(line, "duplicate `zero` line"));
                }
                zero = Some(index(z)?);
            }
            ("top", [t]) => {
                if top.is_some() {
                    return Err(parse_error(line, "duplicate `top` line"));
                }
                top = Some(index(t)?);
            }
            ("le", [a, b]) => {
                if !joins.is_empty() {
                    return Err(parse_error(line, "cannot mix `le` and `join` declarations"));
                }
                le.push((index(a)?, index(b)?));
            }
            ("join", [a, b, "=", c]) => {
                if !le.is_empty() {
                    return Err(parse_error(line, "cannot mix `le` and `join` declarations"));
                }
                joins.push((index(a)?, index(b)?, index(c)?, line));
            }
            ("contact", ["overlap"]) => match contact {
                Contact::Unset => contact = Contact::Overlap,
                _ => return Err(parse_error(line, "`contact overlap` must be the only contact line")),
            },
            ("contact", [a, b]) => {
                let pair = (index(a)?, index(b)?);
                match &mut contact {
                    Contact::Unset => contact = Contact::Pairs(vec![pair]),
                    Contact::Pairs(pairs) => pairs.push(pair),
                    Contact::Overlap => {
                        return Err(parse_error(line, "`contact overlap` must be the only contact line"))
                    }
                }
            }
            ("zero" | "top" | "le" | "join" | "contact", _) => {
                let usage = match keyword {
                    "zero" => "zero <name>",
                    "top" => "top <name>",
                    "le" => "le <a> <b>",
                    "join" => "join <a> <b> = <c>",
                    _ => "contact <a> <b> | contact overlap",
                };
                return Err(parse_error(line, format!("expected `{usage}`")));
            }
            _ => return Err(parse_error(line, format!("unknown keyword `{keyword}`"))),
        }
    }

    let names = names.ok_or_else(|| parse_error(0, "missing `elements` line"))?;
    let zero = zero.ok_or_else(|| parse_error(0, "missing `zero` line"))?;
    let n = names.len();
    let lattice = if joins.is_empty() {
        JoinSemilattice::from_order(names, zero, le)?
    } else {
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        for a in 0..n {
            table[a * n + a] = Some(a);
            table[zero * n + a] = Some(a);
            table[a * n + zero] = Some(a);
        }
        for &(a, b, c, line) in &joins {
            for (x, y) in [(a, b), (b, a)] {
                match table[x * n + y] {
                    Some(prev) if prev != c => {
                        return Err(parse_error(
                            line,
                            format!(
                                "join of `{}` and `{}` already determined as `{}`",
                                names[a], names[b], names[prev]
                            ),
                        ))
                    }
                    _ => table[x * n + y] = Some(c),
                }
            }
        }
        if let Some(k) = table.iter().position(Option::is_none) {
            return Err(Error::MalformedTable(format!(
                "join of `{}` and `{}` is not declared",
                names[k / n],
                names[k % n]
            )));
        }
        JoinSemilattice::from_table(names, zero, table.into_iter().flatten().collect())?
    };
    if let Some(t) = top {
        if t != lattice.top() {
            return Err(Error::TopNotGreatest(lattice.name(t).into_owned()));
        }
    }
    let relation = match contact {
        Contact::Overlap => overlap_contact(&lattice),
        Contact::Pairs(pairs) => ContactRelation::from_pairs(n, pairs),
        Contact::Unset => ContactRelation::empty(n),
    };
    ContactSemilattice::new(lattice, relation)
}

pub fn load_structure(path: impl AsRef<Path>) -> Result<ContactSemilattice> {
    parse_structure(&std::fs::read_to_string(path)?)
}

/// Prints the order as covering pairs and the contact as explicit pairs
/// (or `contact overlap` when it is exactly the overlap relation).
pub fn print_structure(cs: &ContactSemilattice) -> String {
    let s = cs.lattice();
    let name = |a: usize| s.name(a).into_owned();
    let mut out = String::new();
    let _ = writeln!(out, "elements {}", s.names().join(" "));
    let _ = writeln!(out, "zero {}", name(s.zero()));
    for a in s.elements() {
        for b in s.upper_covers(a) {
            let _ = writeln!(out, "le {} {}", name(a), name(b));
        }
    }
    if cs.is_overlap() {
        let _ = writeln!(out, "contact overlap");
    } else {
        for (a, b) in cs.contact().pairs() {
            let _ = writeln!(out, "contact {} {}", name(a), name(b));
        }
    }
    let _ = writeln!(out, "top {}", name(s.top()));
    out
}
