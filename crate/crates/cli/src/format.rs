//! Line-oriented text formats for lattices and digraphs.
//!
//! ```text
//! lattice benzene
//! elements: 0 a b b' a' 1
//! cover: 0 a          # a covers 0
//! ortho: a a'         # a' is the orthocomplement of a
//! ```
//!
//! ```text
//! digraph two_loops
//! vertices: x y
//! edge: x x
//! g: x y
//! ```
//!
//! Everything after `#` is a comment. Labels are whitespace-free tokens.
//! Bounds are inferred; optional `bottom:` and `top:` lines must agree with
//! them. Loops in a digraph are never added implicitly.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use orthodual_core::digraph::Digraph;
use orthodual_core::lattice::{Lattice, LatticeError, OrthoLattice};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{source}{}", cite(.lines))]
    Lattice { source: LatticeError, lines: Vec<usize> },
    #[error("input has no orthocomplement (no `ortho:` lines)")]
    MissingOrtho,
}

fn cite(lines: &[usize]) -> String {
    match lines {
        [] => String::new(),
        [l] => format!(" (line {l})"),
        ls => format!(" (lines {})", ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")),
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A token with its 1-based position.
#[derive(Debug, Clone)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// One `key: value…` line, or the header line (key empty).
#[derive(Debug)]
struct Line<'a> {
    number: usize,
    key: Tok<'a>,
    args: Vec<Tok<'a>>,
}

fn tokenize(line: &str, number: usize) -> Vec<Tok<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain([(line.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Tok {
                    text: &line[s..i],
                    line: number,
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let mut toks = tokenize(l, i + 1);
            if toks.is_empty() {
                return None;
            }
            let key = toks.remove(0);
            Some(Line { number: i + 1, key, args: toks })
        })
        .collect()
}

/// Splits the header `KIND NAME` off the remaining lines.
fn header<'a>(ls: &'a [Line<'a>], kind: &str) -> Result<(String, &'a [Line<'a>]), FormatError> {
    let Some((first, rest)) = ls.split_first() else {
        return Err(parse_err(1, 1, format!("empty input; expected `{kind} NAME`")));
    };
    if first.key.text != kind {
        return Err(parse_err(first.number, first.key.column, format!("expected `{kind} NAME`, found `{}`", first.key.text)));
    }
    match first.args.as_slice() {
        [name] => Ok((name.text.to_string(), rest)),
        [] => Err(parse_err(first.number, first.key.column + kind.len(), "missing name")),
        [_, extra, ..] => Err(parse_err(extra.line, extra.column, "name must be a single token")),
    }
}

/// Resolves labels declared on a `elements:`/`vertices:` line.
struct Names<'a> {
    labels: Vec<String>,
    index: HashMap<&'a str, usize>,
}

impl<'a> Names<'a> {
    fn declare(ls: &'a [Line<'a>], key: &str) -> Result<Names<'a>, FormatError> {
        let mut decl = ls.iter().filter(|l| l.key.text == key);
        let Some(d) = decl.next() else {
            let at = ls.first().map_or(1, |l| l.number);
            return Err(parse_err(at, 1, format!("missing `{key}` line")));
        };
        if let Some(again) = decl.next() {
            return Err(parse_err(again.number, again.key.column, format!("`{key}` declared twice")));
        }
        let mut index = HashMap::new();
        let mut labels = Vec::new();
        for t in &d.args {
            if index.insert(t.text, labels.len()).is_some() {
                return Err(parse_err(t.line, t.column, format!("duplicate label `{}`", t.text)));
            }
            labels.push(t.text.to_string());
        }
        Ok(Names { labels, index })
    }

    fn get(&self, t: &Tok<'_>) -> Result<usize, FormatError> {
        self.index
            .get(t.text)
            .copied()
            .ok_or_else(|| parse_err(t.line, t.column, format!("unknown label `{}`", t.text)))
    }

    fn pair(&self, l: &Line<'_>) -> Result<(usize, usize), FormatError> {
        match l.args.as_slice() {
            [a, b] => Ok((self.get(a)?, self.get(b)?)),
            _ => Err(parse_err(l.number, l.key.column, format!("`{}` takes exactly two labels", l.key.text))),
        }
    }

    fn single(&self, l: &Line<'_>) -> Result<usize, FormatError> {
        match l.args.as_slice() {
            [a] => self.get(a),
            _ => Err(parse_err(l.number, l.key.column, format!("`{}` takes exactly one label", l.key.text))),
        }
    }
}

fn unknown_key(l: &Line<'_>, allowed: &[&str]) -> FormatError {
    parse_err(
        l.number,
        l.key.column,
        format!("unknown directive `{}`; expected one of {}", l.key.text, allowed.join(", ")),
    )
}

/// A parsed lattice file. `ortho` is present iff the file has `ortho:` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFile {
    pub name: String,
    pub lattice: Lattice,
    pub ortho: Option<OrthoLattice>,
}

impl LatticeFile {
    pub fn require_ortho(&self) -> Result<&OrthoLattice, FormatError> {
        self.ortho.as_ref().ok_or(FormatError::MissingOrtho)
    }

    pub fn ortho_map(&self) -> Option<&[usize]> {
        self.ortho.as_ref().map(|o| o.ortho_map())
    }
}

const LATTICE_KEYS: [&str; 5] = ["elements:", "cover:", "ortho:", "bottom:", "top:"];

pub fn parse_lattice(text: &str) -> Result<LatticeFile, FormatError> {
    let all = lines(text);
    let (name, rest) = header(&all, "lattice")?;
    let names = Names::declare(rest, "elements:")?;
    let mut covers = Vec::new();
    let mut cover_lines = Vec::new();
    let mut orthos = Vec::new();
    let mut ortho_lines = Vec::new();
    let mut bounds = Vec::new();
    for l in rest {
        match l.key.text {
            "elements:" => {}
            "cover:" => {
                covers.push(names.pair(l)?);
                cover_lines.push(l.number);
            }
            "ortho:" => {
                orthos.push(names.pair(l)?);
                ortho_lines.push(l.number);
            }
            "bottom:" | "top:" => bounds.push((l.key.text == "top:", names.single(l)?, l.number)),
            _ => return Err(unknown_key(l, &LATTICE_KEYS)),
        }
    }
    let lattice = Lattice::from_index_covers(names.labels.clone(), &covers).map_err(|e| {
        let lines = match &e {
            LatticeError::NotAPoset { a, .. } => cycle_lines(&covers, &cover_lines, names.index[a.as_str()]),
            _ => Vec::new(),
        };
        FormatError::Lattice { source: e, lines }
    })?;
    for (is_top, x, line) in bounds {
        let want = if is_top { lattice.top() } else { lattice.bottom() };
        if x != want {
            return Err(parse_err(
                line,
                1,
                format!(
                    "declared {} `{}` but the order has `{}`",
                    if is_top { "top" } else { "bottom" },
                    lattice.name(x),
                    lattice.name(want)
                ),
            ));
        }
    }
    let ortho = if orthos.is_empty() {
        None
    } else {
        Some(OrthoLattice::attach_indices(lattice.clone(), &orthos).map_err(|e| {
            let lines = ortho_blame(&e, &orthos, &ortho_lines, &lattice);
            FormatError::Lattice { source: e, lines }
        })?)
    };
    Ok(LatticeFile { name, lattice, ortho })
}

/// Lines of the cover pairs lying on a cycle through `start`.
fn cycle_lines(covers: &[(usize, usize)], lines: &[usize], start: usize) -> Vec<usize> {
    let reach = |from: usize| {
        let mut seen = vec![from];
        let mut i = 0;
        while i < seen.len() {
            let x = seen[i];
            for &(a, b) in covers {
                if a == x && !seen.contains(&b) {
                    seen.push(b);
                }
            }
            i += 1;
        }
        seen
    };
    let fwd = reach(start);
    let on_cycle = |x: usize| fwd.contains(&x) && reach(x).contains(&start);
    covers
        .iter()
        .zip(lines)
        .filter(|((a, b), _)| on_cycle(*a) && on_cycle(*b))
        .map(|(_, &l)| l)
        .collect()
}

/// Lines of `ortho:` pairs mentioning the elements an ortho error names.
fn ortho_blame(e: &LatticeError, pairs: &[(usize, usize)], lines: &[usize], l: &Lattice) -> Vec<usize> {
    let named: Vec<usize> = match e {
        LatticeError::NotInvolutive(a) | LatticeError::ComplementLawFails(a) => l.index_of(a).into_iter().collect(),
        LatticeError::DeMorganFails(a, b) => l.index_of(a).into_iter().chain(l.index_of(b)).collect(),
        _ => Vec::new(),
    };
    pairs
        .iter()
        .zip(lines)
        .filter(|((a, b), _)| named.contains(a) || named.contains(b))
        .map(|(_, &n)| n)
        .collect()
}

/// Renders covers in index order and one `ortho:` line per pair `{a, a′}`.
pub fn render_lattice(name: &str, lattice: &Lattice, ortho: Option<&[usize]>) -> String {
    let mut s = String::new();
    writeln!(s, "lattice {name}").unwrap();
    writeln!(s, "elements: {}", lattice.names().join(" ")).unwrap();
    for (a, b) in lattice.cover_pairs() {
        writeln!(s, "cover: {} {}", lattice.name(a), lattice.name(b)).unwrap();
    }
    if let Some(o) = ortho {
        for a in lattice.elements().filter(|&a| a <= o[a]) {
            writeln!(s, "ortho: {} {}", lattice.name(a), lattice.name(o[a])).unwrap();
        }
    }
    s
}

pub fn render_lattice_file(f: &LatticeFile) -> String {
    render_lattice(&f.name, &f.lattice, f.ortho_map())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphFile {
    pub name: String,
    pub graph: Digraph,
}

const DIGRAPH_KEYS: [&str; 3] = ["vertices:", "edge:", "g:"];

/// Parses a digraph file. `g:` lines, if any, must define `g` on every
/// vertex exactly once.
pub fn parse_digraph(text: &str) -> Result<DigraphFile, FormatError> {
    let all = lines(text);
    let (name, rest) = header(&all, "digraph")?;
    let names = Names::declare(rest, "vertices:")?;
    let n = names.labels.len();
    let mut graph = Digraph::new(names.labels.clone());
    let mut g: Vec<Option<usize>> = vec![None; n];
    let mut any_g = false;
    for l in rest {
        match l.key.text {
            "vertices:" => {}
            "edge:" => {
                let (x, y) = names.pair(l)?;
                graph.set_edge(x, y, true);
            }
            "g:" => {
                let (x, y) = names.pair(l)?;
                if g[x].is_some() {
                    return Err(parse_err(l.number, l.args[0].column, format!("g already defined at `{}`", names.labels[x])));
                }
                g[x] = Some(y);
                any_g = true;
            }
            _ => return Err(unknown_key(l, &DIGRAPH_KEYS)),
        }
    }
    if any_g {
        if let Some(x) = g.iter().position(Option::is_none) {
            let last = rest.last().map_or(1, |l| l.number);
            return Err(parse_err(last, 1, format!("g is not defined at `{}`", names.labels[x])));
        }
        graph = graph.with_g(g.into_iter().map(Option::unwrap).collect());
    }
    Ok(DigraphFile { name, graph })
}

pub fn render_digraph(name: &str, g: &Digraph) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {name}").unwrap();
    writeln!(s, "vertices: {}", g.labels().join(" ")).unwrap();
    for (x, y) in g.edges() {
        writeln!(s, "edge: {} {}", g.label(x), g.label(y)).unwrap();
    }
    if let Some(gm) = g.g() {
        for (x, &y) in gm.iter().enumerate() {
            writeln!(s, "g: {} {}", g.label(x), g.label(y)).unwrap();
        }
    }
    s
}

/// Either kind of input file, told apart by its header word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Lattice(Box<LatticeFile>),
    Digraph(DigraphFile),
}

pub fn parse_any(text: &str) -> Result<Input, FormatError> {
    let first = lines(text).into_iter().next();
    match first.as_ref().map(|l| l.key.text) {
        Some("digraph") => parse_digraph(text).map(Input::Digraph),
        Some("lattice") => parse_lattice(text).map(|f| Input::Lattice(Box::new(f))),
        Some(other) => {
            let l = first.as_ref().unwrap();
            Err(parse_err(l.number, l.key.column, format!("expected `lattice` or `digraph`, found `{other}`")))
        }
        None => Err(parse_err(1, 1, "empty input")),
    }
}

impl fmt::Display for LatticeFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_lattice_file(self))
    }
}
