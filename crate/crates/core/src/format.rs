//! Plain-text block format for spherical systems.
//!
//! ```text
//! system
//!   roots B4
//!   sp a4
//!   sigma a1+a2, a3+a4
//!   apair d+ a1 1 0       # zero or more
//! end
//! ```
//!
//! `-` stands for an empty `sp` or `sigma`; `#` starts a comment. Printing
//! always produces the canonical form, so `print(parse(print(s))) == print(s)`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::rootkit::{LatticeVector, RootSet, RootSystem};
use crate::system::{ARecord, SphericalSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Writes an integer combination of simple roots, e.g. `a1+2*a3-a4`.
pub fn format_vector(v: &LatticeVector) -> String {
    let mut s = String::new();
    for (i, c) in v.terms() {
        let name = RootSystem::root_name(i);
        match c {
            1 if s.is_empty() => s.push_str(&name),
            1 => write!(s, "+{name}").unwrap(),
            -1 => write!(s, "-{name}").unwrap(),
            c if c > 0 && !s.is_empty() => write!(s, "+{c}*{name}").unwrap(),
            c => write!(s, "{c}*{name}").unwrap(),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn format_roots(set: RootSet) -> String {
    if set.is_empty() {
        "-".into()
    } else {
        set.iter()
            .map(RootSystem::root_name)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Canonical block for one system.
pub fn print_system(sys: &SphericalSystem) -> String {
    let mut out = String::from("system\n");
    writeln!(out, "  roots {}", sys.root_system()).unwrap();
    writeln!(out, "  sp {}", format_roots(sys.sp())).unwrap();
    if sys.sigma().is_empty() {
        out.push_str("  sigma -\n");
    } else {
        let parts: Vec<String> = sys.sigma().iter().map(format_vector).collect();
        writeln!(out, "  sigma {}", parts.join(", ")).unwrap();
    }
    for rec in sys.apart() {
        write!(out, "  apair {} {}", rec.name, format_roots(rec.moved_by)).unwrap();
        for x in &rec.row {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

pub fn print_systems(systems: &[SphericalSystem]) -> String {
    systems
        .iter()
        .map(print_system)
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_root(token: &str, rank: usize, line: usize) -> Result<usize, ParseError> {
    let idx = token
        .strip_prefix('a')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| i >= 1);
    match idx {
        Some(i) if i <= rank => Ok(i - 1),
        Some(_) => err(line, format!("unknown root {token}")),
        None => err(line, format!("malformed root name `{token}`")),
    }
}

pub fn parse_root_list(text: &str, rank: usize, line: usize) -> Result<RootSet, ParseError> {
    let text = text.trim();
    if text == "-" || text.is_empty() {
        return Ok(RootSet::EMPTY);
    }
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_root(t, rank, line))
        .collect()
}

/// Parses `a1+2*a3-a4` (spaces ignored, `2a3` also accepted).
pub fn parse_vector(text: &str, rank: usize, line: usize) -> Result<LatticeVector, ParseError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return err(line, "empty combination");
    }
    let mut v = LatticeVector::zero(rank);
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if !first {
            return err(line, format!("expected `+` or `-` in `{s}`"));
        }
        first = false;
        let end = rest[1..].find(['+', '-']).map_or(rest.len(), |p| p + 1);
        let term = &rest[..end];
        rest = &rest[end..];
        let (coeff, name) = match term.find('a') {
            Some(p) => {
                let c = term[..p].trim_end_matches('*');
                let c = if c.is_empty() {
                    1
                } else {
                    c.parse::<i64>().map_err(|_| ParseError {
                        line,
                        message: format!("bad coefficient in `{term}`"),
                    })?
                };
                (c, &term[p..])
            }
            None => return err(line, format!("malformed term `{term}`")),
        };
        let i = parse_root(name, rank, line)?;
        v.0[i] += sign * coeff;
    }
    Ok(v)
}

/// Parses every block in `text`.
pub fn parse_systems(text: &str) -> Result<Vec<SphericalSystem>, ParseError> {
    let mut out = Vec::new();
    let mut cur: Option<Block> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(char::is_whitespace)
            .map_or((content, ""), |(k, r)| (k, r.trim()));
        match (key, cur.as_mut()) {
            ("system", None) => cur = Some(Block::new(line)),
            ("system", Some(_)) => return err(line, "`system` inside an unfinished block"),
            ("end", Some(_)) => out.push(cur.take().unwrap().finish(line)?),
            ("end", None) => return err(line, "`end` without `system`"),
            (_, None) => return err(line, format!("expected `system`, found `{key}`")),
            ("roots", Some(b)) => {
                if b.rs.is_some() {
                    return err(line, "duplicate `roots`");
                }
                b.rs = Some(RootSystem::parse(rest).map_err(|e| ParseError {
                    line,
                    message: e.to_string(),
                })?);
            }
            ("sp", Some(b)) => {
                let rs = b.need_rs(line)?;
                b.sp = Some(parse_root_list(rest, rs.rank(), line)?);
            }
            ("sigma", Some(b)) => {
                let rank = b.need_rs(line)?.rank();
                if b.sigma.is_some() {
                    return err(line, "duplicate `sigma`");
                }
                let list = if rest == "-" || rest.is_empty() {
                    Vec::new()
                } else {
                    rest.split(',')
                        .map(|t| {
                            let v = parse_vector(t, rank, line)?;
                            if v.is_zero() || !v.is_nonnegative() {
                                return err(
                                    line,
                                    format!("`{}` is not a positive combination", t.trim()),
                                );
                            }
                            Ok(v)
                        })
                        .collect::<Result<Vec<_>, _>>()?
                };
                b.sigma = Some((list, line));
            }
            ("apair", Some(b)) => {
                let rank = b.need_rs(line)?.rank();
                let mut toks = rest.split_whitespace();
                let name = toks.next().ok_or(ParseError {
                    line,
                    message: "apair needs a name".into(),
                })?;
                let moved = toks.next().ok_or(ParseError {
                    line,
                    message: "apair needs a list of moving roots".into(),
                })?;
                let moved_by = parse_root_list(moved, rank, line)?;
                let row = toks
                    .flat_map(|t| t.split(','))
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<i64>().map_err(|_| ParseError {
                            line,
                            message: format!("bad row value `{t}`"),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                b.apart.push((
                    ARecord {
                        name: name.to_string(),
                        moved_by,
                        row,
                    },
                    line,
                ));
            }
            (other, Some(_)) => return err(line, format!("unknown keyword `{other}`")),
        }
    }
    if let Some(b) = cur {
        return err(b.start, "block not closed by `end`");
    }
    Ok(out)
}

/// Parses exactly one block.
pub fn parse_system(text: &str) -> Result<SphericalSystem, ParseError> {
    let mut all = parse_systems(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => err(1, "no `system` block found"),
        n => err(1, format!("expected one system, found {n}")),
    }
}

struct Block {
    start: usize,
    rs: Option<RootSystem>,
    sp: Option<RootSet>,
    sigma: Option<(Vec<LatticeVector>, usize)>,
    apart: Vec<(ARecord, usize)>,
}

impl Block {
    fn new(start: usize) -> Self {
        Block {
            start,
            rs: None,
            sp: None,
            sigma: None,
            apart: Vec::new(),
        }
    }

    fn need_rs(&self, line: usize) -> Result<&RootSystem, ParseError> {
        self.rs.as_ref().ok_or(ParseError {
            line,
            message: "`roots` must come first".into(),
        })
    }

    fn finish(self, line: usize) -> Result<SphericalSystem, ParseError> {
        let rs = self.rs.ok_or(ParseError {
            line: self.start,
            message: "missing `roots`".into(),
        })?;
        let (sigma, _) = self.sigma.unwrap_or((Vec::new(), line));
        let simple: Vec<usize> = sigma
            .iter()
            .filter_map(|g| {
                let t = g.terms();
                (t.len() == 1 && t[0].1 == 1).then_some(t[0].0)
            })
            .collect();
        let mut apart = Vec::new();
        for (rec, l) in self.apart {
            if rec.row.len() != sigma.len() {
                return err(
                    l,
                    format!(
                        "record `{}` has {} values for {} spherical roots",
                        rec.name,
                        rec.row.len(),
                        sigma.len()
                    ),
                );
            }
            if rec.moved_by.is_empty() {
                return err(l, format!("record `{}` is moved by no root", rec.name));
            }
            if let Some(a) = rec.moved_by.iter().find(|a| !simple.contains(a)) {
                return err(
                    l,
                    format!(
                        "record `{}` is moved by {}, which is not a simple spherical root",
                        rec.name,
                        RootSystem::root_name(a)
                    ),
                );
            }
            apart.push(rec);
        }
        SphericalSystem::new(rs, self.sp.unwrap_or_default(), sigma, apart).map_err(|e| {
            ParseError {
                line,
                message: e.to_string(),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIX_B4: &str = "system\n  roots B4\n  sp a4\n  sigma a1+a2, a3+a4\nend\n";

    #[test]
    fn round_trip() {
        let s = parse_system(FIX_B4).unwrap();
        assert_eq!(print_system(&s), FIX_B4);
        assert_eq!(parse_system(&print_system(&s)).unwrap(), s);
    }

    #[test]
    fn vectors() {
        assert_eq!(
            parse_vector("2*a1 + a3", 3, 1).unwrap(),
            LatticeVector(vec![2, 0, 1])
        );
        assert_eq!(
            parse_vector("2a1-a2", 3, 1).unwrap(),
            LatticeVector(vec![2, -1, 0])
        );
        assert_eq!(format_vector(&LatticeVector(vec![2, -1, 0])), "2*a1-a2");
        assert_eq!(format_vector(&LatticeVector(vec![0, 1, 3])), "a2+3*a3");
        assert!(parse_vector("a1+a5", 4, 3).is_err());
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_system("system\n roots B4\n sigma a1+a5\nend").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("unknown root a5"));
        let e = parse_system("system\n roots A1\n sigma -\n apair d a1\nend").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(parse_system("garbage").is_err());
    }

    #[test]
    fn comments_and_several_blocks() {
        let text = "# two\nsystem\n roots A1\n sp -\n sigma a1\n apair d+ a1 1\n apair d- a1 1\nend\n\nsystem\n roots A1\n sp a1\nend\n";
        let all = parse_systems(text).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].apart().len(), 2);
        assert_eq!(parse_systems(&print_systems(&all)).unwrap(), all);
    }
}
