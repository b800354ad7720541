//! Line-oriented poset files and the compact shorthand used on the command
//! line.
//!
//! ```text
//! # a 3-element "V": 0 below 1 and 2
//! poset vee 3
//! cov 0 1
//! cov 0 2
//! ```
//!
//! Structured shorthands fit on the header line: `poset grid 2 2`,
//! `poset boolean 4`, `poset chain 5`, `poset s2k 3`. Element indices in
//! `cov i j` lines are 0-based and mean `i` is covered by `j`.

use std::path::Path;

use super::Poset;
use crate::error::{Error, Result};

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got {tok:?}")))
}

fn structured(kind: &str, args: &[usize]) -> Result<Option<Poset>> {
    let one = || -> Result<usize> {
        match args {
            [k] => Ok(*k),
            _ => Err(Error::invalid(format!("{kind} takes exactly one size"))),
        }
    };
    let p = match kind {
        "grid" => Poset::grid(args)?,
        "chain" => {
            let k = one()?;
            if k == 0 {
                return Err(Error::invalid("chain needs at least one element"));
            }
            Poset::chain(k)
        }
        "antichain" => {
            let k = one()?;
            if k == 0 {
                return Err(Error::invalid("antichain needs at least one element"));
            }
            Poset::antichain(k)
        }
        "boolean" => Poset::boolean(one()?)?,
        "s2k" => Poset::s2k(one()?)?,
        "diamond" if args.is_empty() => Poset::diamond().with_name("diamond"),
        _ => return Ok(None),
    };
    Ok(Some(p))
}

/// Parses the file format described in the module docs.
pub fn parse_poset_text(text: &str) -> Result<Poset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty poset file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"poset") || toks.len() < 2 {
        return Err(Error::parse(hline, "expected `poset <name> <n>`"));
    }
    let args: Vec<usize> = toks[2..]
        .iter()
        .map(|t| parse_usize(t, hline))
        .collect::<Result<_>>()?;
    if let Some(p) = structured(toks[1], &args)? {
        if let Some((l, _)) = lines.next() {
            return Err(Error::parse(l, "structured poset takes no relation lines"));
        }
        return Ok(p);
    }
    let [n] = args[..] else {
        return Err(Error::parse(hline, "expected `poset <name> <n>`"));
    };
    let mut rel = Vec::new();
    for (l, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[..] {
            ["cov", a, b] => rel.push((parse_usize(a, l)?, parse_usize(b, l)?)),
            _ => return Err(Error::parse(l, format!("expected `cov <i> <j>`, got {line:?}"))),
        }
    }
    Poset::from_relations(toks[1], n, &rel)
}

/// Serializes as a header plus the covering relation.
pub fn poset_to_text(p: &Poset) -> String {
    let name: String = p
        .name()
        .chars()
        .map(|c| if c.is_whitespace() { '_' } else { c })
        .collect();
    let mut out = format!("poset {} {}\n", name, p.len());
    for (x, y) in p.covers() {
        out.push_str(&format!("cov {x} {y}\n"));
    }
    out
}

/// Parses `grid:AxBx...`, `chain:N`, `antichain:N`, `boolean:N`, `s2k:K`,
/// `diamond`, or `@path` (a poset file).
pub fn parse_poset_spec(spec: &str) -> Result<Poset> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(Path::new(path))?;
        return parse_poset_text(&text);
    }
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let args: Vec<usize> = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split('x')
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::invalid(format!("malformed poset spec {spec:?}")))
            })
            .collect::<Result<_>>()?
    };
    match structured(kind, &args)? {
        Some(p) => Ok(p),
        None => Err(Error::invalid(format!("unknown poset spec {spec:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Order;

    #[test]
    fn shorthand_headers() {
        assert_eq!(parse_poset_text("poset grid 2 2").unwrap().len(), 4);
        assert_eq!(parse_poset_text("poset boolean 4").unwrap().len(), 16);
        assert_eq!(parse_poset_text("poset chain 5").unwrap().len(), 5);
        assert_eq!(parse_poset_text("poset s2k 3").unwrap().len(), 6);
    }

    #[test]
    fn explicit_file_round_trips() {
        let text = "# vee\nposet vee 3\ncov 0 1\ncov 0 2\n";
        let p = parse_poset_text(text).unwrap();
        assert!(p.leq(0, 2) && !p.comparable(1, 2));
        let again = parse_poset_text(&poset_to_text(&p)).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn spec_grammar() {
        assert_eq!(parse_poset_spec("grid:2x3").unwrap().len(), 6);
        assert_eq!(parse_poset_spec("diamond").unwrap().len(), 4);
        assert_eq!(parse_poset_spec("chain:3").unwrap().name(), "chain:3");
        assert!(parse_poset_spec("grid:2xq").is_err());
        assert!(parse_poset_spec("blob:3").is_err());
        assert!(parse_poset_spec("chain:0").is_err());
    }

    #[test]
    fn bad_lines_report_position() {
        match parse_poset_text("poset p 2\ncov 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
