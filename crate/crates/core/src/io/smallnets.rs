use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::smallnet::{Shape, SmallNet, SmallNetSet};
use crate::taxa::{TaxaSet, Taxon, RESERVED_CHARS};

/// Result of reading a small-net file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmallNetFile {
    pub set: SmallNetSet,
    /// Duplicate lines and pairs of different items on one leaf set.
    pub warnings: Vec<String>,
}

/// Reads one small net per line.
///
/// Blank lines and lines starting with `#` are skipped. A line
/// `taxa: a,b,c` declares taxa that need not appear in any item.
pub fn parse_smallnets(text: &str) -> Result<SmallNetFile, ParseError> {
    let mut set = SmallNetSet::new();
    let mut warnings = Vec::new();
    let mut first_line: HashMap<SmallNet, usize> = HashMap::new();
    let mut by_leaves: HashMap<TaxaSet, (usize, SmallNet)> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.starts_with('#') {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        let body = raw.trim();
        if body.is_empty() {
            continue;
        }
        let col = raw[..indent].chars().count() + 1;
        if let Some(rest) = body.strip_prefix("taxa:") {
            let rest_col = col + "taxa:".len();
            for name in rest.split(',') {
                let name = name.trim();
                if name.is_empty() {
                    continue;
                }
                let t = Taxon::new(name)
                    .map_err(|e| ParseError::new(line, rest_col, e.to_string()))?;
                set.add_taxon(t);
            }
            continue;
        }
        let sn = parse_smallnet_item(body, line, col)?;
        if let Some(&prev) = first_line.get(&sn) {
            warnings.push(format!("line {line}: {sn} repeats line {prev}"));
            continue;
        }
        first_line.insert(sn.clone(), line);
        match by_leaves.get(&sn.taxa()) {
            Some((prev, other)) => warnings.push(format!(
                "line {line}: {sn} conflicts with {other} on line {prev}"
            )),
            None => {
                by_leaves.insert(sn.taxa(), (line, sn.clone()));
            }
        }
        set.insert(sn);
    }
    Ok(SmallNetFile { set, warnings })
}

/// Writes the `taxa:` header followed by the items in sorted order.
pub fn serialize_smallnets(ts: &SmallNetSet) -> String {
    let names: Vec<&str> = ts.taxa().iter().map(Taxon::as_str).collect();
    let mut out = format!("taxa: {}\n", names.join(","));
    for sn in ts {
        writeln!(out, "{sn}").unwrap();
    }
    out
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
    line: usize,
    col0: usize,
}

impl Cursor<'_> {
    fn col(&self) -> usize {
        self.col0 + self.pos
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        let from = self.chars.get(start).map_or(self.text.len(), |&(b, _)| b);
        let to = self.chars.get(self.pos).map_or(self.text.len(), |&(b, _)| b);
        &self.text[from..to]
    }
}

/// Parses a single item such as `T1(a,b;c)`. `line` and `col` locate the
/// first character of `s` for error messages.
pub(crate) fn parse_smallnet_item(s: &str, line: usize, col: usize) -> Result<SmallNet, ParseError> {
    let mut c = Cursor {
        chars: s.char_indices().collect(),
        pos: 0,
        text: s,
        line,
        col0: col,
    };
    c.skip_ws();
    let name_col = c.col();
    let name = c.take_while(|ch| ch.is_ascii_alphanumeric()).to_string();
    let shape: Shape = name
        .parse()
        .map_err(|_| ParseError::new(line, name_col, format!("unknown small-net shape {name:?}")))?;
    c.skip_ws();
    if c.peek() != Some('(') {
        return Err(c.err("expected '('"));
    }
    c.pos += 1;

    let mut slots = Vec::new();
    let mut seps = Vec::new();
    loop {
        c.skip_ws();
        let tcol = c.col();
        let name = c
            .take_while(|ch| !ch.is_whitespace() && !RESERVED_CHARS.contains(&ch))
            .to_string();
        if name.is_empty() {
            return Err(c.err("expected a taxon name"));
        }
        slots.push(Taxon::new(&name).map_err(|e| ParseError::new(line, tcol, e.to_string()))?);
        c.skip_ws();
        match c.peek() {
            Some(')') => {
                c.pos += 1;
                break;
            }
            Some(sep @ (',' | ';')) => {
                seps.push((sep, c.col()));
                c.pos += 1;
            }
            _ => return Err(c.err("expected ',', ';' or ')'")),
        }
    }
    c.skip_ws();
    if c.peek().is_some() {
        return Err(c.err("unexpected text after ')'"));
    }
    if slots.len() != shape.arity() {
        return Err(ParseError::new(
            line,
            name_col,
            format!("{shape} takes {} taxa, got {}", shape.arity(), slots.len()),
        ));
    }
    for (&(got, at), &want) in seps.iter().zip(shape.separators()) {
        if got != want {
            return Err(ParseError::new(line, at, format!("expected '{want}' in {shape}")));
        }
    }
    SmallNet::new(shape, slots).map_err(|e| ParseError::new(line, name_col, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxa::{taxa, taxon};

    #[test]
    fn items() {
        let a: SmallNet = "T1(a,b;c)".parse().unwrap();
        let b: SmallNet = "T1(b,a;c)".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.slots(), &[taxon("a"), taxon("b"), taxon("c")]);
        let x: SmallNet = "S2(x;y;z)".parse().unwrap();
        let y: SmallNet = " S2( y ; x ; z ) ".parse().unwrap();
        assert_ne!(x, y);
        assert_eq!(y.to_string(), "S2(y;x;z)");
    }

    #[test]
    fn item_errors_have_columns() {
        let e = "T1(a;b;c)".parse::<SmallNet>().unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = "Q(a,b)".parse::<SmallNet>().unwrap_err();
        assert_eq!(e.column, 1);
        let e = "T(a,)".parse::<SmallNet>().unwrap_err();
        assert_eq!(e.column, 5);
        assert!("T(a,a)".parse::<SmallNet>().is_err());
        assert!("T(a,b) x".parse::<SmallNet>().is_err());
        assert!("N(a;b;c)".parse::<SmallNet>().is_err());
    }

    #[test]
    fn file_round_trip() {
        let text = "# comment\ntaxa: a,b,c,d\n\nT1(b,a;c)\nN(a;d)\nT1(a,b;c)\nN(d;a)\n";
        let f = parse_smallnets(text).unwrap();
        assert_eq!(f.set.len(), 3);
        assert_eq!(f.set.taxa(), &taxa(["a", "b", "c", "d"]));
        assert_eq!(f.warnings.len(), 2);
        let out = serialize_smallnets(&f.set);
        assert_eq!(out, "taxa: a,b,c,d\nN(a;d)\nN(d;a)\nT1(a,b;c)\n");
        assert_eq!(parse_smallnets(&out).unwrap().set, f.set);
    }

    #[test]
    fn file_errors_report_line() {
        let e = parse_smallnets("T(a,b)\n  T(a,\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
    }
}
