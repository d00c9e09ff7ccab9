//! Command dispatch. Exit codes: 0 when every executed check holds, 1 when
//! some check fails, 2 on unreadable or invalid input.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use orthodual_core::axioms::{check_all, AxiomReport, Half, Outcome, Subject, Witness};
use orthodual_core::digraph::{Digraph, Topology};
use orthodual_core::dual::{build_dual, build_lattice_dual, DualSpace};
use orthodual_core::family::Family;
use orthodual_core::lattice::{check_lattice_law, check_law, product, Lattice, Law, LawReport, OrthoLattice};
use orthodual_core::mpm::{enumerate_mpms, lattice_of, neg_map, Method, MpmLattice};
use orthodual_core::roundtrip::{check_dual_iso, check_lattice_primal_iso, check_primal_iso, evaluation_map, RoundtripError};

use crate::dot::{edges_table, export_dot, DotOptions};
use crate::format::{parse_any, render_lattice, FormatError, Input, LatticeFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "orthodual", version, about = "Dual digraph spaces of finite (ortho)lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a lattice or digraph file and verify its structure
    Validate { file: PathBuf },
    /// Check the orthomodular, modular and distributive laws
    Laws {
        file: PathBuf,
        /// Check only this law (orthomodular, modular, distributive)
        #[arg(long)]
        law: Option<String>,
    },
    /// Build the dual digraph of a lattice
    Dual {
        file: PathBuf,
        /// Write the dual as Graphviz DOT
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Leave E-loops out of the DOT output
        #[arg(long)]
        no_loops: bool,
        /// Print the edge relation as a 0/1 matrix
        #[arg(long)]
        edges_table: bool,
    },
    /// Check every axiom on a digraph or on the dual of a lattice
    Axioms { file: PathBuf },
    /// List the maximal partial E-preserving maps
    Mpms {
        file: PathBuf,
        /// Use the brute-force scan instead of concept enumeration
        #[arg(long)]
        oracle: bool,
    },
    /// Print the lattice of maximal partial maps as a lattice file
    Reconstruct { file: PathBuf },
    /// Verify both representation isomorphisms
    Roundtrip { file: PathBuf },
    /// Write a lattice from a named family, e.g. `mo 3` or `mo 2 x boolean 4`
    Gen {
        #[arg(required = true, num_args = 1..)]
        factors: Vec<String>,
        /// Output path; standard output when absent
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// An error that ends the command with exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Family(#[from] orthodual_core::family::FamilyError),
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn print(&mut self, s: &str) {
        // a closed pipe is not worth a panic
        let _ = self.out.write_all(s.as_bytes());
    }
}

fn read_input(path: &Path) -> Result<Input, InputError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io { path: p.clone(), source })?;
    parse_any(&text).map_err(|source| InputError::Format { path: p, source })
}

fn read_lattice(path: &Path) -> Result<LatticeFile, InputError> {
    match read_input(path)? {
        Input::Lattice(f) => Ok(*f),
        Input::Digraph(_) => Err(InputError::Usage(format!("{}: expected a lattice file", path.display()))),
    }
}

fn missing_ortho(path: &Path) -> InputError {
    InputError::Format {
        path: path.display().to_string(),
        source: FormatError::MissingOrtho,
    }
}

/// Parses arguments and runs; usage errors go to `err` with exit code 2.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli.command, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            code
        }
    }
}

pub fn run(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut ctx = Ctx { out };
    let r = match cmd {
        Command::Validate { file } => validate(&mut ctx, &file),
        Command::Laws { file, law } => laws(&mut ctx, &file, law.as_deref()),
        Command::Dual {
            file,
            dot,
            no_loops,
            edges_table,
        } => dual(&mut ctx, &file, dot.as_deref(), no_loops, edges_table),
        Command::Axioms { file } => axioms(&mut ctx, &file),
        Command::Mpms { file, oracle } => mpms(&mut ctx, &file, oracle),
        Command::Reconstruct { file } => reconstruct(&mut ctx, &file),
        Command::Roundtrip { file } => roundtrip(&mut ctx, &file),
        Command::Gen { factors, output } => gen(&mut ctx, &factors, output.as_deref()),
    };
    match r {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn validate(ctx: &mut Ctx<'_>, path: &Path) -> Result<i32, InputError> {
    match read_input(path)? {
        Input::Lattice(f) => {
            let kind = if f.ortho.is_some() { "ortholattice" } else { "lattice" };
            ctx.print(&format!(
                "ok: {kind} {} with {} elements, bottom {}, top {}\n",
                f.name,
                f.lattice.len(),
                f.lattice.name(f.lattice.bottom()),
                f.lattice.name(f.lattice.top())
            ));
        }
        Input::Digraph(f) => {
            let g = &f.graph;
            ctx.print(&format!(
                "ok: digraph {} with {} vertices, {} edges, {}\n",
                f.name,
                g.len(),
                g.edge_count(),
                if g.g().is_some() { "g-map present" } else { "no g-map" }
            ));
        }
    }
    Ok(EXIT_OK)
}

fn law_line(l: &Lattice, r: &LawReport) -> String {
    match &r.witness {
        None => format!("{:<13} holds\n", r.law.name()),
        Some(w) => {
            let names: Vec<&str> = w.iter().map(|&a| l.name(a)).collect();
            format!("{:<13} FAILS at ({})\n", r.law.name(), names.join(", "))
        }
    }
}

fn laws(ctx: &mut Ctx<'_>, path: &Path, only: Option<&str>) -> Result<i32, InputError> {
    let f = read_lattice(path)?;
    let wanted: Vec<Law> = match only {
        None => Law::ALL.to_vec(),
        Some(name) => vec![Law::ALL
            .into_iter()
            .find(|l| l.name() == name)
            .ok_or_else(|| InputError::Usage(format!("unknown law `{name}`")))?],
    };
    let mut ok = true;
    for law in wanted {
        let r = match &f.ortho {
            Some(ol) => Some(check_law(ol, law)),
            None if law == Law::Orthomodular && only.is_some() => return Err(missing_ortho(path)),
            None => check_lattice_law(&f.lattice, law),
        };
        match r {
            Some(r) => {
                ok &= r.holds;
                ctx.print(&law_line(&f.lattice, &r));
            }
            None => ctx.print(&format!("{:<13} not checked (no orthocomplement)\n", law.name())),
        }
    }
    Ok(verdict(ok))
}

fn dual_of(f: &LatticeFile) -> DualSpace {
    match &f.ortho {
        Some(ol) => build_dual(ol).expect("g of a valid ortholattice lands on maximal pairs"),
        None => build_lattice_dual(&f.lattice),
    }
}

fn dual(ctx: &mut Ctx<'_>, path: &Path, dot: Option<&Path>, no_loops: bool, table: bool) -> Result<i32, InputError> {
    let f = read_lattice(path)?;
    let d = dual_of(&f);
    let g = d.graph();
    let mut s = format!("dual of {}: {} vertices, {} edges", f.name, d.len(), g.edge_count());
    if let Some(gm) = g.g() {
        let fixed = gm.iter().enumerate().filter(|&(x, &y)| x == y).count();
        write!(s, ", {fixed} fixed by g").unwrap();
    }
    writeln!(s, ", {} isolated loops", d.isolated_loops().len()).unwrap();
    writeln!(s, "vertices: {}", g.labels().join(" ")).unwrap();
    ctx.print(&s);
    if table {
        ctx.print(&edges_table(g));
    }
    if let Some(p) = dot {
        let text = export_dot(&f.name, g, DotOptions { no_loops });
        std::fs::write(p, text).map_err(|source| InputError::Io {
            path: p.display().to_string(),
            source,
        })?;
    }
    Ok(EXIT_OK)
}

fn witness_text(g: &Digraph, lattice: Option<&Lattice>, w: &Witness) -> String {
    let v = |x: usize| g.label(x).to_string();
    match *w {
        Witness::Vertex(x) => format!("vertex {}", v(x)),
        Witness::Pair(x, y) => format!("pair ({}, {})", v(x), v(y)),
        Witness::MpmPair(i, j, h) => format!(
            "MPMs m{i}, m{j}, {} polar",
            match h {
                Half::One => "right",
                Half::Zero => "left",
            }
        ),
        Witness::Subbasic { from_mpms: true, index } => {
            let side = if index % 2 == 0 { "1" } else { "0" };
            format!("closed set m{}^-1({side})", index / 2)
        }
        Witness::Subbasic { from_mpms: false, index } => format!("subbasic closed set #{index}"),
        Witness::Element(a, h) => {
            let name = lattice.map_or_else(|| a.to_string(), |l| l.name(a).to_string());
            match h {
                Half::One => format!("element {name} (W side)"),
                Half::Zero => format!("element {name} (V side)"),
            }
        }
    }
}

/// The report as text, one line per axiom.
pub fn render_report(r: &AxiomReport, g: &Digraph, lattice: Option<&Lattice>) -> String {
    let mut s = String::new();
    for e in &r.entries {
        let status = match &e.outcome {
            Outcome::Holds => "holds".to_string(),
            Outcome::Violated(w) => format!("FAILS at {}", witness_text(g, lattice, w)),
            Outcome::NotChecked(why) => format!("not checked ({why})"),
        };
        writeln!(s, "{:<22} {status}", e.axiom.name()).unwrap();
    }
    s
}

fn axioms(ctx: &mut Ctx<'_>, path: &Path) -> Result<i32, InputError> {
    let (r, text) = match read_input(path)? {
        Input::Lattice(f) => {
            let d = dual_of(&f);
            let t = d.topology();
            let m = enumerate_mpms(d.graph(), Method::Galois).expect("concept enumeration has no size limit");
            let r = check_all(&Subject::new(d.graph(), &t).with_mpms(&m).with_dual(&d));
            let text = render_report(&r, d.graph(), Some(&f.lattice));
            (r, text)
        }
        Input::Digraph(f) => {
            let t = Topology::Discrete;
            let m = enumerate_mpms(&f.graph, Method::Galois).expect("concept enumeration has no size limit");
            let r = check_all(&Subject::new(&f.graph, &t).with_mpms(&m));
            let text = render_report(&r, &f.graph, None);
            (r, text)
        }
    };
    ctx.print(&text);
    Ok(verdict(r.all_hold()))
}

fn graph_of(input: &Input) -> (String, Digraph) {
    match input {
        Input::Lattice(f) => (f.name.clone(), dual_of(f).graph().clone()),
        Input::Digraph(f) => (f.name.clone(), f.graph.clone()),
    }
}

fn set_text(g: &Digraph, s: &orthodual_core::bitset::BitSet) -> String {
    let names: Vec<&str> = s.iter().map(|x| g.label(x)).collect();
    format!("{{{}}}", names.join(", "))
}

fn mpms(ctx: &mut Ctx<'_>, path: &Path, oracle: bool) -> Result<i32, InputError> {
    let input = read_input(path)?;
    let (_, g) = graph_of(&input);
    let method = if oracle { Method::Brute } else { Method::Galois };
    let ms = enumerate_mpms(&g, method).map_err(|e| InputError::Usage(e.to_string()))?;
    let mut s = format!("{} maximal partial maps\n", ms.len());
    for (i, p) in ms.iter().enumerate() {
        writeln!(s, "m{i}: 1 on {}, 0 on {}", set_text(&g, &p.one), set_text(&g, &p.zero)).unwrap();
    }
    ctx.print(&s);
    Ok(EXIT_OK)
}

/// MPM lattice of `g` with `¬` when `g` has a g-map.
fn reconstructed(g: &Digraph) -> Result<(MpmLattice, Option<Vec<usize>>), String> {
    let ml = lattice_of(enumerate_mpms(g, Method::Galois).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let neg = match g.g() {
        Some(_) => {
            let n = neg_map(g, &ml).map_err(|e| e.to_string())?;
            OrthoLattice::new(ml.lattice().clone(), n.clone()).map_err(|e| e.to_string())?;
            Some(n)
        }
        None => None,
    };
    Ok((ml, neg))
}

fn reconstruct(ctx: &mut Ctx<'_>, path: &Path) -> Result<i32, InputError> {
    let input = read_input(path)?;
    let (name, g) = graph_of(&input);
    let (ml, neg) = match reconstructed(&g) {
        Ok(x) => x,
        Err(e) => {
            ctx.print(&format!("reconstruction fails: {e}\n"));
            return Ok(EXIT_CHECK_FAILED);
        }
    };
    let mut names: Vec<String> = ml.lattice().names().to_vec();
    if let Input::Lattice(f) = &input {
        // name each map after the element it evaluates
        let d = dual_of(f);
        for a in f.lattice.elements() {
            if let Some(i) = ml.index_of(&evaluation_map(&d, a)) {
                names[i] = f.lattice.name(a).to_string();
            }
        }
    }
    let up = ml.lattice().elements().map(|a| ml.lattice().up_set(a).clone()).collect();
    let relabelled = Lattice::from_up_sets(names, up).expect("same order as before");
    ctx.print(&render_lattice(&format!("{name}_reconstructed"), &relabelled, neg.as_deref()));
    Ok(EXIT_OK)
}

fn iso_line(r: &Result<orthodual_core::roundtrip::IsoCertificate, RoundtripError>) -> String {
    match r {
        Ok(_) => "OK".into(),
        Err(e) => format!("FAILS ({e})"),
    }
}

fn roundtrip(ctx: &mut Ctx<'_>, path: &Path) -> Result<i32, InputError> {
    match read_input(path)? {
        Input::Lattice(f) => {
            let d = dual_of(&f);
            let primal = match &f.ortho {
                Some(ol) => check_primal_iso(ol),
                None => check_lattice_primal_iso(&f.lattice),
            };
            let n_mpms = enumerate_mpms(d.graph(), Method::Galois).map(|m| m.len()).unwrap_or(0);
            let dual = check_dual_iso(d.graph(), &d.topology());
            ctx.print(&format!(
                "|dual|={}, |MPMs|={}, primal iso {}, dual iso {}\n",
                d.len(),
                n_mpms,
                iso_line(&primal),
                iso_line(&dual)
            ));
            Ok(verdict(primal.is_ok() && dual.is_ok()))
        }
        Input::Digraph(f) => {
            let n_mpms = enumerate_mpms(&f.graph, Method::Galois).map(|m| m.len()).unwrap_or(0);
            let dual = check_dual_iso(&f.graph, &Topology::Discrete);
            ctx.print(&format!("|X|={}, |MPMs|={}, dual iso {}\n", f.graph.len(), n_mpms, iso_line(&dual)));
            Ok(verdict(dual.is_ok()))
        }
    }
}

/// Parses `NAME [PARAM…] [x NAME [PARAM…]]…` into families.
fn parse_factors(factors: &[String]) -> Result<Vec<Family>, InputError> {
    let mut out = Vec::new();
    for part in factors.split(|w| w == "x") {
        let Some((name, params)) = part.split_first() else {
            return Err(InputError::Usage("empty factor in product".into()));
        };
        let params: Vec<usize> = params
            .iter()
            .map(|p| p.parse().map_err(|_| InputError::Usage(format!("`{p}` is not a number"))))
            .collect::<Result<_, _>>()?;
        out.push(Family::parse(name, &params)?);
    }
    Ok(out)
}

fn family_tag(f: &Family) -> String {
    match f {
        Family::Boolean(k) => format!("boolean{k}"),
        Family::Mo(k) => format!("mo{k}"),
        Family::Benzene => "benzene".into(),
        Family::TwoChain => "two_chain".into(),
    }
}

fn gen(ctx: &mut Ctx<'_>, factors: &[String], output: Option<&Path>) -> Result<i32, InputError> {
    let fams = parse_factors(factors)?;
    let ol = fams
        .iter()
        .map(Family::generate)
        .reduce(|a, b| product(&a, &b))
        .expect("at least one factor");
    let name = fams.iter().map(family_tag).collect::<Vec<_>>().join("_x_");
    let text = render_lattice(&name, ol.lattice(), Some(ol.ortho_map()));
    match output {
        Some(p) => std::fs::write(p, text).map_err(|source| InputError::Io {
            path: p.display().to_string(),
            source,
        })?,
        None => ctx.print(&text),
    }
    Ok(EXIT_OK)
}
