//! Command-line front end. Every subcommand prints either canonical JSON
//! (sorted keys) or a plain-text summary; exit status is 0 on success, 1 when
//! a check fails, 2 on bad input and 3 when a budget is exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::branch::{germ_invariants, semigroup_and_delta, GermSpec, Provenance};
use crate::divide::{
    generate_grid_divide, generate_line_arrangement_divide, intersection_form, validate, Divide, DynkinGraph,
    GeneratedDivide,
};
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, Lattice, DEFAULT_ENUMERATION_BUDGET};
use crate::monodromy::{sp_fullness_evidence, symplectic_quotient, SignConvention};
use crate::report::{decompose_with_budget, homology_limit_report, to_canonical_json};
use crate::strata::{class_sum, curve_component_count, Strata};

/// Largest branch count for which `classes` lists every subset.
const SUBSET_LISTING_MAX_BRANCHES: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "acampo", version, about = "Divides, vanishing cycles, monodromy and partition strata of plane curve germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// `d` real lines through the origin; params: d
    Lines,
    /// `x^p - y^q` from Chebyshev polynomials; params: p,q
    Grid,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// delta, mu, semigroups and intersection numbers of a germ
    Invariants {
        #[arg(long)]
        germ: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare a divide with its germ (exit 1 on mismatch)
    DivideCheck {
        #[arg(long)]
        germ: PathBuf,
        #[arg(long)]
        divide: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Dynkin diagram of the distinguished basis
    Dynkin {
        #[arg(long)]
        divide: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Radical, symplectic quotient and mod-p irreducibility evidence
    Monodromy {
        #[arg(long)]
        divide: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7])]
        primes: Vec<u64>,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Invariant classes c_i and c_I with their heights
    Classes {
        #[arg(long)]
        germ: PathBuf,
        #[arg(long)]
        divide: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Heights, |V/n| and multiplicities for every nontrivial partition
    Strata {
        #[arg(long)]
        germ: PathBuf,
        #[arg(long)]
        divide: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Summands of the direct image over the n-th cover
    Decompose {
        #[arg(long)]
        germ: PathBuf,
        #[arg(long)]
        divide: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Symbolic homology of the local compactified Jacobian
    Limit {
        #[arg(long)]
        germ: PathBuf,
        #[arg(long)]
        divide: PathBuf,
        /// Highest homological degree (default 2 delta)
        #[arg(long)]
        max_degree: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write a germ and a divide for a standard family
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<u64>,
        /// Write `<kind>-<params>.germ.json` and `.divide.json` here instead of printing
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// Runs the program on `argv` (program name first) and returns the exit status.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let stderr = io::stderr();
    let mut err = stderr.lock();
    run(argv, &mut out, &mut err)
}

/// [`cli_main`] with explicit output streams.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn load_germ(path: &Path) -> Result<GermSpec> {
    GermSpec::from_json(&read(path)?)
}

fn load_divide(path: &Path) -> Result<Divide> {
    Divide::from_json(&read(path)?)
}

fn emit<T: Serialize>(value: &T, format: Format, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => to_canonical_json(value),
        Format::Text => {
            let mut s = text();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i).iter().map(|x| x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)).collect(),
                )
            })
            .collect(),
    )
}

fn execute(command: Command) -> Result<(String, i32)> {
    match command {
        Command::Invariants { germ, format } => invariants(&load_germ(&germ)?, format).map(|s| (s, 0)),
        Command::DivideCheck { germ, divide, format } => {
            let report = validate(&load_divide(&divide)?, &load_germ(&germ)?)?;
            let code = if report.passed { 0 } else { 1 };
            Ok((emit(&report, format, || report.to_string()), code))
        }
        Command::Dynkin { divide, format } => {
            let g = DynkinGraph::from_lattice(&intersection_form(&load_divide(&divide)?));
            Ok((
                match format {
                    GraphFormat::Dot => g.to_dot(),
                    GraphFormat::Json => {
                        let mut s = g.to_json();
                        s.push('\n');
                        s
                    }
                },
                0,
            ))
        }
        Command::Monodromy { divide, primes, sign, format } => {
            let sign = match sign {
                SignArg::Plus => SignConvention::Plus,
                SignArg::Minus => SignConvention::Minus,
            };
            monodromy(&load_divide(&divide)?, &primes, sign, format).map(|s| (s, 0))
        }
        Command::Classes { germ, divide, format } => classes(&load_germ(&germ)?, &load_divide(&divide)?, format),
        Command::Strata { germ, divide, n, budget, format } => {
            strata(&load_germ(&germ)?, &load_divide(&divide)?, n, budget, format).map(|s| (s, 0))
        }
        Command::Decompose { germ, divide, n, budget, format } => {
            let d = decompose_with_budget(&load_germ(&germ)?, &load_divide(&divide)?, n, budget)?;
            let code = if d.consistency.passed { 0 } else { 1 };
            Ok((emit(&d, format, || d.to_string()), code))
        }
        Command::Limit { germ, divide, max_degree, format } => {
            let l = homology_limit_report(&load_germ(&germ)?, &load_divide(&divide)?, max_degree)?;
            Ok((emit(&l, format, || l.to_string()), 0))
        }
        Command::Generate { kind, params, out_dir } => generate(kind, &params, out_dir.as_deref()).map(|s| (s, 0)),
    }
}

fn invariants(germ: &GermSpec, format: Format) -> Result<String> {
    let inv = germ_invariants(germ)?;
    let mut branches = Vec::new();
    for b in germ.branches() {
        let sg = semigroup_and_delta(&b.characteristic)?;
        branches.push(json!({
            "id": b.id,
            "characteristic": b.characteristic,
            "semigroup_generators": sg.generators,
            "conductor": sg.conductor,
            "delta": sg.delta,
        }));
    }
    let r = germ.branch_count();
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            if let Some(e) = germ.intersection(i, j) {
                pairs.push(json!({"branches": [i + 1, j + 1], "value": e.value, "provenance": e.provenance}));
            }
        }
    }
    let value = json!({
        "r": inv.r,
        "delta": inv.delta,
        "mu": inv.mu,
        "tau_hint": inv.tau_hint,
        "branches": branches,
        "intersections": pairs,
    });
    Ok(emit(&value, format, || {
        let mut s = format!("{}\n", inv);
        for b in &branches {
            let _ = writeln!(
                s,
                "branch {}: characteristic {}, semigroup {}, conductor {}, delta {}",
                b["id"], b["characteristic"], b["semigroup_generators"], b["conductor"], b["delta"]
            );
        }
        for i in 0..r {
            for j in i + 1..r {
                if let Some(e) = germ.intersection(i, j) {
                    let how = if e.provenance == Provenance::Computed { " (computed)" } else { "" };
                    let _ = writeln!(s, "C({},{}) = {}{}", i + 1, j + 1, e.value, how);
                }
            }
        }
        s
    }))
}

fn monodromy(divide: &Divide, primes: &[u64], sign: SignConvention, format: Format) -> Result<String> {
    let lat = intersection_form(divide);
    let sq = symplectic_quotient(&lat, sign);
    let evidence = if sq.quotient_rank >= 2 { Some(sp_fullness_evidence(&sq, primes)?) } else { None };
    let basis: Vec<String> = lat.basis().iter().map(ToString::to_string).collect();
    let value = json!({
        "sign": sign,
        "basis": basis,
        "intersection_form": matrix_json(lat.form()),
        "mu": lat.rank(),
        "radical_rank": sq.radical.rank(),
        "quotient_rank": sq.quotient_rank,
        "induced_form": matrix_json(&sq.induced_form),
        "induced_form_determinant": sq.form_determinant().to_string(),
        "pfaffian_abs": sq.pfaffian_abs().map(|p| p.to_string()),
        "evidence": evidence,
    });
    Ok(emit(&value, format, || {
        let mut s = format!(
            "mu = {}, radical rank = {}, symplectic quotient rank = {}, det = {}\n",
            lat.rank(),
            sq.radical.rank(),
            sq.quotient_rank,
            sq.form_determinant()
        );
        match &evidence {
            None => s.push_str("quotient too small for irreducibility evidence\n"),
            Some(ev) => {
                for p in &ev.primes {
                    let _ = writeln!(
                        s,
                        "p = {}: {} ({:?}), transvections {}, form preserved {}, nondegenerate {}",
                        p.prime,
                        if p.irreducible { "irreducible" } else { "reducible" },
                        p.method,
                        p.generators_are_transvections,
                        p.form_preserved,
                        p.form_nondegenerate
                    );
                }
            }
        }
        s
    }))
}

fn classes(germ: &GermSpec, divide: &Divide, format: Format) -> Result<(String, i32)> {
    let s = Strata::new(germ, divide)?;
    let r = germ.branch_count();
    let vectors: Vec<_> = s.classes.classes.iter().map(|c| c.to_cycle_vector(&s.lattice)).collect();
    let span = Lattice::from_vectors(s.lattice.rank(), &vectors)?;
    let radical = crate::monodromy::radical(&s.lattice);
    let span_equals_radical = span == radical;

    let mut subsets = Vec::new();
    if r <= SUBSET_LISTING_MAX_BRANCHES {
        for mask in 1u32..(1 << r) - 1 {
            let set = (1..=r).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
            subsets.push(class_sum(&s.classes, &set, &s.c_matrix)?);
        }
    }
    let heights_agree = subsets.iter().all(|c| c.height == c.formula_height);
    let atomic: Vec<Value> = s
        .classes
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "branch": i + 1,
                "coefficients": c.coefficients,
                "expression": c.expression(),
                "height": c.height,
                "formula_height": c.formula_height,
            })
        })
        .collect();
    let subset_json: Vec<Value> = subsets
        .iter()
        .map(|c| json!({"subset": c.subset, "expression": c.expression(), "height": c.height, "formula_height": c.formula_height}))
        .collect();
    let value = json!({
        "classes": atomic,
        "subsets": subset_json,
        "radical_rank": radical.rank(),
        "span_equals_radical": span_equals_radical,
        "heights_agree": heights_agree,
    });
    let code = if span_equals_radical && heights_agree { 0 } else { 1 };
    let text = emit(&value, format, || {
        let mut t = String::new();
        for (i, c) in s.classes.classes.iter().enumerate() {
            let _ = writeln!(t, "c{} = {}  (height {})", i + 1, c.expression(), c.height);
        }
        for c in &subsets {
            let set: Vec<String> = c.subset.iter().map(ToString::to_string).collect();
            let _ = writeln!(t, "c{{{}}} = {}  (height {}, crossing sum {})", set.join(","), c.expression(), c.height, c.formula_height);
        }
        let _ = writeln!(t, "radical rank {}, spanned by the classes: {}", radical.rank(), span_equals_radical);
        t
    });
    Ok((text, code))
}

fn strata(germ: &GermSpec, divide: &Divide, n: u64, budget: u64, format: Format) -> Result<String> {
    let s = Strata::new(germ, divide)?;
    let mut rows = Vec::new();
    let mut lines = String::new();
    for rec in s.nontrivial() {
        let m = s.multiplicity(rec, n, budget)?;
        let order = curve_component_count(rec, n)?;
        let _ = write!(lines, "{}  h = {}", rec.partition, rec.height);
        if rec.ordered_height != rec.height {
            let _ = write!(lines, " (ordered sum {})", rec.ordered_height);
        }
        let _ = writeln!(lines, ", rank {}, |V/n| = {}, multiplicity {}", rec.rank, order, m.value);
        rows.push(json!({
            "partition": rec.partition,
            "height": rec.height,
            "formula_height": rec.formula_height,
            "ordered_height": rec.ordered_height,
            "support": rec.support,
            "rank": rec.rank,
            "quotient_order": order.to_u64().map_or_else(|| Value::String(order.to_string()), Value::from),
            "multiplicity": m,
        }));
    }
    let value = json!({"n": n, "strata": rows});
    Ok(emit(&value, format, || format!("n = {}\n{}", n, lines)))
}

fn generate(kind: Kind, params: &[u64], out_dir: Option<&Path>) -> Result<String> {
    let (stem, g): (String, GeneratedDivide) = match (kind, params) {
        (Kind::Lines, [d]) => {
            let d = usize::try_from(*d).map_err(|_| Error::Parse(format!("line count {} is too large", d)))?;
            (format!("lines-{}", d), generate_line_arrangement_divide(d)?)
        }
        (Kind::Grid, [p, q]) => (format!("grid-{}-{}", p, q), generate_grid_divide(*p, *q)?),
        (Kind::Lines, _) => return Err(Error::Parse("--kind lines takes one parameter: the number of lines".into())),
        (Kind::Grid, _) => return Err(Error::Parse("--kind grid takes two parameters: p,q".into())),
    };
    let germ = to_canonical_json(&g.germ.to_file());
    let divide = to_canonical_json(&g.divide.to_file());
    match out_dir {
        None => Ok(to_canonical_json(&json!({"germ": g.germ.to_file(), "divide": g.divide.to_file()}))),
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let gp = dir.join(format!("{}.germ.json", stem));
            let dp = dir.join(format!("{}.divide.json", stem));
            fs::write(&gp, germ)?;
            fs::write(&dp, divide)?;
            Ok(format!("{}\n{}\n", gp.display(), dp.display()))
        }
    }
}
