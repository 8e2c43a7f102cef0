//! Command-line front end for the `torprod` library.
//!
//! Exit codes: 0 on success, 1 when validation fails, a computation is
//! refused or a bundled example mismatches, 2 for usage and parse errors.

pub mod document;
pub mod examples;
pub mod render;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use torprod::exactalg::CoefficientRing;
use torprod::torcohomology::{compare_products, ProductKind, TorTable};
use torprod::toricmorphism::{hat_tor_phi, omega, tor_phi, ChainMaps, InducedMap};

use document::{InputDocument, MorphismDocument, ParsedInput};

#[derive(Parser, Debug)]
#[command(name = "torprod", version, about = "Exact Tor of face rings and maps induced by toric morphisms")]
pub struct Cli {
    /// Worker threads for block computations (default: all cores).
    #[arg(long, env = "TORPROD_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Table,
    Structured,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Coefficients {
    /// Coefficient ring: q, z or zmod:P for a prime P.
    #[arg(long, default_value = "q", value_parser = parse_ring)]
    pub coeffs: CoefficientRing,
    /// Largest total degree to compute (default: vertices + lattice rank).
    #[arg(long)]
    pub max_total_degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check characteristic data, and optionally a morphism from it to TARGET.
    Validate {
        input: PathBuf,
        #[arg(long, requires = "target")]
        morphism: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Bigraded Tor table.
    Tor {
        input: PathBuf,
        #[command(flatten)]
        coeffs: Coefficients,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Product tables on the generators.
    Mult {
        input: PathBuf,
        #[command(flatten)]
        coeffs: Coefficients,
        #[arg(long, conflicts_with = "untwisted")]
        twisted: bool,
        #[arg(long)]
        untwisted: bool,
        /// List the generator pairs on which the two products differ.
        #[arg(long)]
        compare: bool,
    },
    /// Maps induced in cohomology by a toric morphism SOURCE → TARGET.
    Map {
        source: PathBuf,
        target: PathBuf,
        morphism: PathBuf,
        #[command(flatten)]
        coeffs: Coefficients,
        #[arg(long, conflicts_with_all = ["untwisted", "both"])]
        twisted: bool,
        #[arg(long, conflicts_with = "both")]
        untwisted: bool,
        #[arg(long)]
        both: bool,
        /// Print the twisting terms of the morphism.
        #[arg(long)]
        show_hatq: bool,
    },
    /// The automorphism carrying twisted products to untwisted ones.
    Omega {
        input: PathBuf,
        #[command(flatten)]
        coeffs: Coefficients,
    },
    /// Run a bundled example: cstar2-p1, basis-change, power-map:R,
    /// diagonal, omega, cox-ideal.
    Example { name: String },
}

fn parse_ring(s: &str) -> Result<CoefficientRing, String> {
    match s {
        "q" | "Q" => Ok(CoefficientRing::Rationals),
        "z" | "Z" => Ok(CoefficientRing::Integers),
        _ => {
            let p = s.strip_prefix("zmod:").ok_or(format!("unknown coefficient ring {s:?}"))?;
            let p: u64 = p.parse().map_err(|_| format!("bad modulus {p:?}"))?;
            CoefficientRing::mod_prime(p).map_err(|e| e.to_string())
        }
    }
}

/// A failed command: `Usage` exits with 2, `Domain` with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Standard output and exit code of a completed command.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn read_input(path: &Path) -> Result<ParsedInput, CliError> {
    let text = read(path)?;
    InputDocument::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn validated(input: &ParsedInput) -> Result<(), CliError> {
    let report = input.data.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::Domain(format!("{}: {report}", input.name)))
    }
}

fn table(input: &ParsedInput, c: &Coefficients) -> TorTable {
    TorTable::compute(input.data.clone(), c.coeffs, c.max_total_degree)
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { input, morphism, target } => {
            let src = read_input(input)?;
            let mut out = String::new();
            let report = src.data.validate();
            let _ = writeln!(out, "{}: {report}", src.name);
            let mut ok = report.is_valid();
            if let (Some(m), Some(t)) = (morphism, target) {
                let tgt = read_input(t)?;
                let doc =
                    MorphismDocument::parse(&read(m)?).map_err(|e| CliError::Usage(format!("{}: {e}", m.display())))?;
                let phi = doc.resolve(&src, &tgt).map_err(|e| CliError::Usage(format!("{}: {e}", m.display())))?;
                let tr = tgt.data.validate();
                let mr = phi.validate();
                let _ = writeln!(out, "{}: {tr}", tgt.name);
                let _ = writeln!(out, "morphism {} -> {}: {mr}", src.name, tgt.name);
                ok &= tr.is_valid() && mr.is_valid();
            }
            Ok(Outcome { stdout: out, code: if ok { 0 } else { 1 } })
        }
        Command::Tor { input, coeffs, format } => {
            let src = read_input(input)?;
            validated(&src)?;
            let t = table(&src, coeffs);
            Ok(Outcome::ok(match format {
                Format::Table => format!("{}\n{}", render::tor_grid(&t), render::degree_summary(&t)),
                Format::Structured => render::structured(InputDocument::from_data(&src.name, &src.data), &t),
            }))
        }
        Command::Mult { input, coeffs, twisted: _, untwisted, compare } => {
            let src = read_input(input)?;
            validated(&src)?;
            let t = table(&src, coeffs);
            let mut out = render::generator_list(&t);
            out.push('\n');
            if *compare {
                let tw = t.product_table(ProductKind::Twisted).map_err(domain)?;
                let un = t.product_table(ProductKind::Untwisted).map_err(domain)?;
                let diff = compare_products(&tw, &un);
                if diff.is_empty() {
                    out.push_str("twisted and untwisted products agree\n");
                }
                // the reversed pair differs by a sign
                for d in diff.into_iter().filter(|d| d.left <= d.right) {
                    let _ = writeln!(
                        out,
                        "{} * {}: twisted {}, untwisted {}",
                        render::generator_label(d.left.0, d.left.1),
                        render::generator_label(d.right.0, d.right.1),
                        render::class(&d.twisted),
                        render::class(&d.untwisted)
                    );
                }
            } else {
                let kind = if *untwisted { ProductKind::Untwisted } else { ProductKind::Twisted };
                let op = if *untwisted { "." } else { "*" };
                let products = t.product_table(kind).map_err(domain)?;
                for ((l, r), c) in &products.entries {
                    let _ = writeln!(
                        out,
                        "{} {op} {} = {}",
                        render::generator_label(l.0, l.1),
                        render::generator_label(r.0, r.1),
                        render::class(c)
                    );
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::Map { source, target, morphism, coeffs, twisted, untwisted, both, show_hatq } => {
            let src = read_input(source)?;
            let tgt = read_input(target)?;
            validated(&src)?;
            validated(&tgt)?;
            let doc = MorphismDocument::parse(&read(morphism)?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", morphism.display())))?;
            let phi = doc.resolve(&src, &tgt).map_err(|e| CliError::Usage(format!("{}: {e}", morphism.display())))?;
            let report = phi.validate();
            if !report.is_valid() {
                return Err(CliError::Domain(format!("morphism: {report}")));
            }
            let maps = ChainMaps::new(phi, coeffs.coeffs).map_err(domain)?;
            let dom = TorTable::for_complex(
                maps.target_complex().clone(),
                coeffs.max_total_degree.unwrap_or_else(|| torprod::torcohomology::default_max_total_degree(&tgt.data)),
            );
            let cod = TorTable::for_complex(
                maps.source_complex().clone(),
                coeffs.max_total_degree.unwrap_or_else(|| torprod::torcohomology::default_max_total_degree(&src.data)),
            );
            let mut out = String::new();
            if *show_hatq {
                let f = maps.source_complex().face_ring();
                let q = maps.hat_q();
                for i in 0..q.rank() {
                    for j in 0..i {
                        let _ = writeln!(out, "hat q[{},{}] = {}", i + 1, j + 1, f.format(q.get(i, j)));
                    }
                }
                out.push('\n');
            }
            let _ = writeln!(out, "domain ({}):\n{}", tgt.name, render::generator_list(&dom));
            let _ = writeln!(out, "codomain ({}):\n{}", src.name, render::generator_list(&cod));
            let plain = *untwisted || *both || !*twisted;
            let hat = *twisted || *both;
            let mut emit = |title: &str, m: InducedMap| {
                let _ = writeln!(out, "{title}:");
                for (d, mat) in &m.matrices {
                    let _ = writeln!(out, " degree {d}:");
                    out.push_str(&render::matrix(mat));
                }
            };
            if plain {
                emit("Tor(phi)", tor_phi(&maps, &dom, &cod).map_err(domain)?);
            }
            if hat {
                emit("hat Tor(phi)", hat_tor_phi(&maps, &dom, &cod).map_err(domain)?);
            }
            Ok(Outcome::ok(out))
        }
        Command::Omega { input, coeffs } => {
            let src = read_input(input)?;
            validated(&src)?;
            let t = table(&src, coeffs);
            let om = omega(&t).map_err(domain)?;
            let mut out = render::generator_list(&t);
            out.push('\n');
            for (d, m) in &om.matrices {
                let _ = writeln!(out, "Omega* in degree {d}:");
                out.push_str(&render::matrix(m));
            }
            let tw = t.product_table(ProductKind::Twisted).map_err(domain)?;
            let mut failures = 0;
            for ((l, r), prod) in &tw.entries {
                let x = om.apply(&t, &t.basis_class(l.0, l.1));
                let y = om.apply(&t, &t.basis_class(r.0, r.1));
                let rhs = t.multiply(ProductKind::Untwisted, &x, &y).map_err(domain)?;
                if om.apply(&t, prod) != rhs {
                    failures += 1;
                }
            }
            let _ = writeln!(
                out,
                "Omega*(x*y) = Omega*(x).Omega*(y) on {} generator pairs: {}",
                tw.entries.len(),
                if failures == 0 { "ok" } else { "FAILED" }
            );
            Ok(Outcome { stdout: out, code: if failures == 0 { 0 } else { 1 } })
        }
        Command::Example { name } => examples::run(name),
    }
}

/// Parses arguments, configures the thread pool and runs the command.
pub fn run<I, T>(args: I) -> (Outcome, String)
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
                (Outcome { stdout: text, code }, String::new())
            } else {
                (Outcome { stdout: String::new(), code }, text)
            };
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build();
    let result = match pool {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Err(CliError::Usage(e.to_string())),
    };
    match result {
        Ok(o) => (o, String::new()),
        Err(e) => (Outcome { stdout: String::new(), code: e.exit_code() }, format!("error: {}\n", e.message())),
    }
}
