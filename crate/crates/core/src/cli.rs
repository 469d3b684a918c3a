//! Command-line front end. [`run`] never prints; it returns the exit code
//! and both output streams so it can be tested directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::catalog::{Catalog, CatalogFilter, Record};
use crate::error::{Error, Result};
use crate::lattice::{build_diagram, fold_check, to_cartan, BilinearLattice, DiagramSpec, IntMatrix};
use crate::mckay::{build_group, check_prime, identify_affine, mckay_matrix, select_prime, slodowy_matrix, GroupSpec};
use crate::verify::{render_json, render_text, run_all, SuiteReport, VerifyConfig};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "monodromy", version, about = "Poincare series and Coxeter monodromy of surface singularities")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog records.
    List {
        /// all, ambient, boundary, mckay, a class (simple, parabolic,
        /// exceptional, bimodal, hyperbolic) or ambient-<class>.
        #[arg(long, default_value = "all")]
        class: String,
    },
    /// Show one catalog record.
    Show { name: String },
    /// Poincare series of an ambient (or of the ambient of a boundary singularity).
    Poincare { name: String },
    /// Coxeter characteristic polynomial of a named diagram, e.g. E6, affineA(3), T(2,3,7).
    Charpoly {
        diagram: String,
        /// Reflection order as comma separated 1-based vertices.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Fold a lattice with involution read from a JSON file.
    Fold {
        #[arg(long)]
        input: PathBuf,
    },
    /// McKay matrix of a group, or Slodowy matrix of a normal subgroup.
    Mckay {
        /// C<m>, BD<k>, BT, BO or BI.
        #[arg(long)]
        group: GroupSpec,
        /// Normal subgroup whose representations are restricted from the group.
        #[arg(long)]
        subgroup: Option<GroupSpec>,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Run the verification suite.
    Verify {
        /// Every check.
        #[arg(long)]
        all: bool,
        /// Only checks whose id starts with one of these prefixes.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 6)]
        nmax: u64,
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyConfig::default().random_trees)]
        random_trees: usize,
        /// Prime for the group checks (default: chosen per group, 1201 first).
        #[arg(long)]
        prime: Option<u64>,
        /// Print witnesses of passing checks too.
        #[arg(long)]
        verbose: bool,
        /// Record wall-clock runtimes (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

/// Custom lattice file; all indices are 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub gram: IntMatrix,
    #[serde(default)]
    pub order: Option<Vec<usize>>,
    #[serde(default)]
    pub involution: Vec<[usize; 2]>,
}

impl LatticeFile {
    pub fn to_lattice(&self) -> Result<BilinearLattice> {
        let n = self.gram.len();
        let zero_based = |i: usize| {
            if i == 0 || i > n {
                Err(Error::InvalidLattice(format!("index {i} out of range 1..={n}")))
            } else {
                Ok(i - 1)
            }
        };
        let order = match &self.order {
            Some(o) => o.iter().map(|&i| zero_based(i)).collect::<Result<Vec<_>>>()?,
            None => (0..n).collect(),
        };
        let mut sigma: Vec<usize> = (0..n).collect();
        for &[a, b] in &self.involution {
            let (a, b) = (zero_based(a)?, zero_based(b)?);
            if sigma[a] != a || sigma[b] != b {
                return Err(Error::NotAnInvolution(format!("vertex listed twice in pair ({}, {})", a + 1, b + 1)));
            }
            sigma[a] = b;
            sigma[b] = a;
        }
        BilinearLattice::new(self.gram.clone(), order, Some(sigma))
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn json_out(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn matrix_text(m: &IntMatrix, indent: &str) -> String {
    let width = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut s = String::new();
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        let _ = writeln!(s, "{indent}{}", cells.join(" "));
    }
    s
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn triple(v: &Option<Vec<u64>>) -> String {
    match v {
        Some(t) => format!("({})", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        None => "-".into(),
    }
}

fn record_line(r: &Record) -> String {
    match r {
        Record::Ambient(a) => format!(
            "{:<8} ambient   {:<20} weights ({},{},{}; {})  p_X = {}",
            a.name,
            a.class,
            a.weights[0],
            a.weights[1],
            a.weights[2],
            a.degree,
            a.poincare()
        ),
        Record::Boundary(b) => format!(
            "{:<8} boundary  {:<20} ambient {:<6} phi = {}  psi = {}",
            b.name,
            b.class,
            b.ambient,
            b.phi_f,
            opt(&b.psi_f)
        ),
        Record::Correspondence(c) => format!(
            "{:<8} mckay     {} < {}  ambient {}  phi_R = {}  psi_R = {}",
            c.root_system, c.g_spec, c.h_spec, c.ambient, c.phi_r, c.psi_r
        ),
    }
}

fn record_text(r: &Record) -> String {
    let mut s = String::new();
    match r {
        Record::Ambient(a) => {
            let _ = writeln!(s, "name: {}", a.name);
            let _ = writeln!(s, "kind: ambient");
            let _ = writeln!(s, "class: {}", a.class);
            let _ = writeln!(s, "weights: ({}, {}, {})", a.weights[0], a.weights[1], a.weights[2]);
            let _ = writeln!(s, "degree: {}", a.degree);
            let _ = writeln!(s, "p_X: {}", a.poincare());
            let _ = writeln!(s, "dolgachev: {}", triple(&a.dolgachev));
            let _ = writeln!(s, "gabrielov: {}", triple(&a.gabrielov));
            let _ = writeln!(s, "arnold_dual: {}", opt(&a.arnold_dual));
        }
        Record::Boundary(b) => {
            let _ = writeln!(s, "name: {}", b.name);
            let _ = writeln!(s, "kind: boundary");
            let _ = writeln!(s, "class: {}", b.class);
            let _ = writeln!(s, "ambient: {}", b.ambient);
            let _ = writeln!(s, "p_X: {}", b.p_x);
            let _ = writeln!(s, "phi_fbar: {}", b.phi_f);
            let _ = writeln!(s, "psi_fbar: {}", opt(&b.psi_f));
            let _ = writeln!(s, "lagrange_dual: {}", b.lagrange_dual);
        }
        Record::Correspondence(c) => {
            let _ = writeln!(s, "root_system: {}", c.root_system);
            let _ = writeln!(s, "G: {}", c.g_spec);
            let _ = writeln!(s, "H: {}", c.h_spec);
            let _ = writeln!(s, "ambient: {}", c.ambient);
            let _ = writeln!(s, "p_X: {}", c.p_x);
            let _ = writeln!(s, "phi_R: {}", c.phi_r);
            let _ = writeln!(s, "psi_R: {}", c.psi_r);
        }
    }
    s
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let catalog = Catalog::standard();
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::List { class } => {
            let filter: CatalogFilter = class.parse()?;
            if json {
                return Ok(Outcome::ok(format!("{}\n", catalog.export_json(filter))));
            }
            let mut s = String::new();
            for r in catalog.list(filter) {
                let _ = writeln!(s, "{}", record_line(&r).trim_end());
            }
            Ok(Outcome::ok(s))
        }
        Command::Show { name } => {
            let r = catalog.lookup(name)?;
            Ok(Outcome::ok(if json { json_out(&r) } else { record_text(&r) }))
        }
        Command::Poincare { name } => {
            let p = catalog.poincare_named(name)?;
            Ok(Outcome::ok(if json {
                json_out(&json!({"name": name, "p_X": p}))
            } else {
                format!("{p}\n")
            }))
        }
        Command::Charpoly { diagram, order } => {
            let spec: DiagramSpec = diagram.parse()?;
            let mut c = build_diagram(&spec)?;
            if let Some(o) = order {
                let o = o
                    .iter()
                    .map(|&i| i.checked_sub(1).ok_or_else(|| Error::InvalidSpec("order is 1-based".into())))
                    .collect::<Result<Vec<_>>>()?;
                c = c.with_order(o)?;
            }
            let poly = c.coxeter_polynomial()?;
            let frame = c.coxeter_frame()?;
            let order1: Vec<usize> = c.order().iter().map(|i| i + 1).collect();
            Ok(Outcome::ok(if json {
                json_out(&json!({
                    "diagram": spec.to_string(),
                    "cartan": c.matrix(),
                    "order": order1,
                    "charpoly": poly.to_string(),
                    "frame": frame,
                }))
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "diagram: {spec}");
                let _ = writeln!(s, "order: {order1:?}");
                let _ = writeln!(s, "charpoly: {poly}");
                let _ = writeln!(s, "frame: {frame}");
                s
            }))
        }
        Command::Fold { input } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
            let file: LatticeFile = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let outcome = fold_check(&file.to_lattice()?)?;
            let folded = &outcome.fold.folded;
            let cartan = to_cartan(folded)?;
            let frame = cartan.coxeter_frame()?;
            let reps: Vec<usize> = outcome.fold.representatives.iter().map(|i| i + 1).collect();
            let fixed: Vec<usize> = outcome.fold.fixed.iter().map(|i| i + 1).collect();
            Ok(Outcome::ok(if json {
                json_out(&json!({
                    "folded_gram": folded.gram(),
                    "cartan": cartan.matrix(),
                    "frame": frame,
                    "representatives": reps,
                    "fixed": fixed,
                    "phi_X": outcome.phi_x.to_string(),
                    "phi_1": outcome.phi_1.to_string(),
                    "phi_fbar": outcome.phi_f.to_string(),
                    "phi_X = phi_1 * phi_fbar": outcome.holds,
                }))
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "folded gram:");
                s.push_str(&matrix_text(folded.gram(), "  "));
                let _ = writeln!(s, "cartan:");
                s.push_str(&matrix_text(cartan.matrix(), "  "));
                let _ = writeln!(s, "representatives: {reps:?}");
                let _ = writeln!(s, "fixed: {fixed:?}");
                let _ = writeln!(s, "phi_X: {}", outcome.phi_x);
                let _ = writeln!(s, "phi_1: {}", outcome.phi_1);
                let _ = writeln!(s, "phi_X = phi_1 * phi_fbar: {}", outcome.holds);
                let _ = writeln!(s, "frame: {frame}");
                s
            }))
        }
        Command::Mckay { group, subgroup, prime } => {
            let specs: Vec<GroupSpec> = std::iter::once(*group).chain(*subgroup).collect();
            let p = match prime {
                Some(p) => {
                    check_prime(*p, &specs)?;
                    *p
                }
                None => select_prime(&specs),
            };
            let g = build_group(*group, p)?;
            let r = match subgroup {
                Some(h) => slodowy_matrix(&g, &build_group(*h, p)?)?,
                None => mckay_matrix(&g)?,
            };
            let id = identify_affine(&r.c);
            let affine = id.as_ref().map(|i| i.diagram.to_string());
            Ok(Outcome::ok(if json {
                json_out(&json!({
                    "group": group.to_string(),
                    "subgroup": subgroup.map(|h| h.to_string()),
                    "prime": p,
                    "dims": r.dims,
                    "B": r.b,
                    "C": r.c,
                    "affine": affine,
                    "transposed": id.as_ref().map(|i| i.transposed),
                    "permutation": id.as_ref().map(|i| i.permutation.clone()),
                }))
            } else {
                let mut s = String::new();
                match subgroup {
                    Some(h) => {
                        let _ = writeln!(s, "group: {group} restricted to {h}");
                    }
                    None => {
                        let _ = writeln!(s, "group: {group}");
                    }
                }
                let _ = writeln!(s, "prime: {p}");
                let _ = writeln!(s, "dims: {:?}", r.dims);
                let _ = writeln!(s, "B:");
                s.push_str(&matrix_text(&r.b, "  "));
                let _ = writeln!(s, "C:");
                s.push_str(&matrix_text(&r.c, "  "));
                match &id {
                    Some(i) => {
                        let t = if i.transposed { " (transposed)" } else { "" };
                        let _ = writeln!(s, "affine: {}{t}", i.diagram);
                        let _ = writeln!(s, "permutation: {:?}", i.permutation);
                    }
                    None => {
                        let _ = writeln!(s, "affine: none");
                    }
                }
                s
            }))
        }
        Command::Verify { all, only, nmax, seed, random_trees, prime, verbose, timings } => {
            if !*all && only.is_empty() {
                return Ok(Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: "error: verify needs --all or --only <prefix>\n".into(),
                });
            }
            let config =
                VerifyConfig { nmax: *nmax, random_trees: *random_trees, seed: *seed, prime: *prime, timings: *timings };
            let mut suite = run_all(&config, &catalog);
            if !*all {
                let reports = suite.reports.into_iter().filter(|r| only.iter().any(|p| r.id.starts_with(p))).collect();
                suite = SuiteReport::from_reports(reports);
            }
            let out = if json { format!("{}\n", render_json(&suite)) } else { render_text(&suite, *verbose) };
            Ok(Outcome { code: if suite.failed > 0 { 1 } else { 0 }, stdout: out, stderr: String::new() })
        }
    }
}
