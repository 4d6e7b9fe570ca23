use std::collections::HashMap;

use crate::error::ParseError;
use crate::network::{validate, CodeTable, Network};
use crate::taxa::{Taxon, RESERVED_CHARS};

/// Extended Newick text for a valid network, terminated by `;`.
///
/// Children of tree vertices are ordered by canonical code. At each cycle
/// the side with more pendant subnetworks (then the smaller code) is written
/// first and carries the reticulation subtree as `(...)#Hk`; the other side
/// refers to it as `#Hk`. Reticulations are numbered from 1 in order of
/// appearance, so equivalent networks serialize identically.
pub fn serialize_network(net: &Network) -> String {
    let table = CodeTable::new(net, |t| t.as_str().to_string());
    let mut w = Writer {
        net,
        table: &table,
        hybrid: HashMap::new(),
        out: String::new(),
    };
    w.subtree(net.root());
    w.out.push(';');
    w.out
}

struct Writer<'a> {
    net: &'a Network,
    table: &'a CodeTable,
    hybrid: HashMap<usize, usize>,
    out: String,
}

impl Writer<'_> {
    fn subtree(&mut self, v: usize) {
        let net = self.net;
        if let Some(t) = net.label(v) {
            self.out.push_str(t.as_str());
            return;
        }
        if net.is_reticulation(v) {
            let k = self.hybrid.len() + 1;
            self.hybrid.insert(v, k);
            self.out.push('(');
            self.subtree(net.children(v)[0]);
            self.out.push_str(&format!(")#H{k}"));
            return;
        }
        if let Some(ci) = self.table.cycle_at[v] {
            let c = &self.table.cycles[ci];
            let side_code = |s: usize| {
                (0..c.sides[s].len())
                    .map(|i| self.table.codes[c.pendant(net, s, i)].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let key = |s: usize| (std::cmp::Reverse(c.sides[s].len()), side_code(s));
            let (first, second) = if key(0) <= key(1) { (0, 1) } else { (1, 0) };
            let (sides, ret) = (c.sides.clone(), c.reticulation);
            let pendants: Vec<Vec<usize>> = [first, second]
                .iter()
                .map(|&s| (0..sides[s].len()).map(|i| c.pendant(net, s, i)).collect())
                .collect();
            self.out.push('(');
            self.side(&pendants[0], ret);
            self.out.push(',');
            self.side(&pendants[1], ret);
            self.out.push(')');
            return;
        }
        let mut cs = net.children(v).to_vec();
        cs.sort_by(|&a, &b| self.table.codes[a].cmp(&self.table.codes[b]));
        self.out.push('(');
        for (i, &c) in cs.iter().enumerate() {
            if i > 0 {
                self.out.push(',');
            }
            self.subtree(c);
        }
        self.out.push(')');
    }

    /// A chain of side vertices ending in the reticulation.
    fn side(&mut self, pendants: &[usize], ret: usize) {
        match pendants.split_first() {
            None => self.reticulation(ret),
            Some((&p, rest)) => {
                self.out.push('(');
                self.subtree(p);
                self.out.push(',');
                self.side(rest, ret);
                self.out.push(')');
            }
        }
    }

    fn reticulation(&mut self, ret: usize) {
        match self.hybrid.get(&ret) {
            Some(k) => self.out.push_str(&format!("#H{k}")),
            None => self.subtree(ret),
        }
    }
}

/// Parses one extended Newick network. Internal node names are ignored; a
/// leaf written as `name#Hk` is read as a reticulation above leaf `name`.
pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    parse_line(text, 1)
}

/// Parses one network per nonempty line; lines starting with `#` are
/// skipped.
pub fn parse_networks(text: &str) -> Result<Vec<Network>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| parse_line(l, i + 1))
        .collect()
}

fn parse_line(text: &str, line: usize) -> Result<Network, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line,
        children: Vec::new(),
        labels: Vec::new(),
        hybrids: HashMap::new(),
    };
    p.skip_ws();
    let root = p.subtree()?;
    p.skip_ws();
    if p.peek() != Some(';') {
        return Err(p.err("expected ';'"));
    }
    p.pos += 1;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.err("unexpected text after ';'"));
    }
    let mut ks: Vec<_> = p.hybrids.iter().collect();
    ks.sort_by_key(|(k, _)| **k);
    for (k, h) in ks {
        if !h.defined {
            return Err(ParseError::new(line, 1, format!("#H{k} has no subtree")));
        }
    }
    let mut arcs = Vec::new();
    for (u, cs) in p.children.iter().enumerate() {
        arcs.extend(cs.iter().map(|&c| (u, c)));
    }
    let labels: Vec<(usize, Taxon)> = p
        .labels
        .iter()
        .enumerate()
        .filter_map(|(v, l)| l.clone().map(|t| (v, t)))
        .collect();
    let net = Network::from_arcs(p.children.len(), &arcs, labels)
        .map_err(|e| ParseError::new(line, 1, e.to_string()))?;
    let report = validate(&net);
    if !report.is_valid() {
        return Err(ParseError::new(line, 1, format!("invalid network: {report}")));
    }
    debug_assert_eq!(net.root(), root);
    Ok(net)
}

struct Hybrid {
    vertex: usize,
    defined: bool,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    children: Vec<Vec<usize>>,
    labels: Vec<Option<Taxon>>,
    hybrids: HashMap<u32, Hybrid>,
}

impl Parser {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.pos + 1, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn vertex(&mut self) -> usize {
        self.children.push(Vec::new());
        self.labels.push(None);
        self.children.len() - 1
    }

    fn name(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || RESERVED_CHARS.contains(&c) {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }

    /// Parses an optional `#H<digits>` suffix.
    fn hybrid_tag(&mut self) -> Result<Option<u32>, ParseError> {
        if self.peek() != Some('#') {
            return Ok(None);
        }
        let start = self.pos;
        self.pos += 1;
        if self.peek() != Some('H') {
            return Err(self.err("expected 'H' after '#'"));
        }
        self.pos += 1;
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        digits
            .parse()
            .map(Some)
            .map_err(|_| ParseError::new(self.line, start + 1, "malformed hybrid tag"))
    }

    fn subtree(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut kids = Vec::new();
        let parenthesized = self.peek() == Some('(');
        if parenthesized {
            self.pos += 1;
            loop {
                kids.push(self.subtree()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
        }
        self.skip_ws();
        let name = self.name();
        let tag = self.hybrid_tag()?;

        let Some(k) = tag else {
            if parenthesized {
                let v = self.vertex();
                self.children[v] = kids;
                return Ok(v);
            }
            if name.is_empty() {
                return Err(self.err("expected a subtree"));
            }
            let t = Taxon::new(&name).map_err(|e| ParseError::new(self.line, start + 1, e.to_string()))?;
            let v = self.vertex();
            self.labels[v] = Some(t);
            return Ok(v);
        };

        let v = match self.hybrids.get(&k) {
            Some(h) => h.vertex,
            None => {
                let v = self.vertex();
                self.hybrids.insert(k, Hybrid { vertex: v, defined: false });
                v
            }
        };
        if !parenthesized && !name.is_empty() {
            let t = Taxon::new(&name).map_err(|e| ParseError::new(self.line, start + 1, e.to_string()))?;
            let leaf = self.vertex();
            self.labels[leaf] = Some(t);
            kids.push(leaf);
        }
        if !kids.is_empty() {
            let h = self.hybrids.get_mut(&k).unwrap();
            if h.defined {
                return Err(ParseError::new(self.line, start + 1, format!("#H{k} defined twice")));
            }
            h.defined = true;
            self.children[v] = kids;
        }
        Ok(v)
    }
}
