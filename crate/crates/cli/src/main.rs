//! `exshift`: exterior algebraic shifting from the command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exshift_core::catalog::{self, build_tables, enumerate_with, shipped_irreducibles, table_facts, TableStore};
use exshift_core::critical::{critical_regions, RegionSearch};
use exshift_core::{
    betti_numbers, io, shift_complex, verify_surface, EngineConfig, Error, PrimeField, ShiftResult, SimplicialComplex,
    SurfaceShifter, SurfaceTriangulation, Topology, MERSENNE_61,
};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(name = "exshift", version, about = "Exterior algebraic shifting of simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the shifted complex of the input.
    Shift(ShiftArgs),
    /// Run the surface algorithm and the generic engine and compare them.
    Verify(ShiftArgs),
    /// List the critical regions cut out by loops of length at most six.
    Regions(InputArgs),
    /// Catalog and table operations.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Topology, f-vector, primality and Betti numbers of the input.
    Info(InputArgs),
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Enumerate triangulations by vertex splits and store their shifts.
    Build(BuildArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Generic,
    Surface,
    Auto,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input in the .tri format.
    input: PathBuf,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct EngineArgs {
    /// Seed of the first specialization; defaults to a hash of the input.
    #[arg(long, env = "SHIFT_SEED")]
    seed: Option<u64>,
    /// Prime modulus of the field.
    #[arg(long, default_value_t = MERSENNE_61)]
    modulus: u64,
    /// Fresh seeds used to confirm an uncertified dimension.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    seeds: u64,
}

#[derive(Args, Debug)]
struct ShiftArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Only report this dimension.
    #[arg(long)]
    dim: Option<usize>,
    #[command(flatten)]
    engine: EngineArgs,
    /// Table store consulted for small cases.
    #[arg(long)]
    catalog_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// torus, rp2 or klein.
    #[arg(long)]
    surface: Topology,
    #[arg(long)]
    max_n: usize,
    #[arg(long)]
    catalog_dir: PathBuf,
    /// Irreducible seeds in the .tri format instead of the shipped list.
    #[arg(long)]
    irreducibles: Option<PathBuf>,
    /// Keep only critically irreducible triangulations on the last level.
    #[arg(long)]
    critically_irreducible_last: bool,
    #[command(flatten)]
    engine: EngineArgs,
    /// Print the table facts as JSON.
    #[arg(long)]
    json: bool,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedTopology { .. } => 2,
            Error::TheoremContract(_) | Error::CorankMismatch { .. } | Error::SeedDisagreement(_) => 4,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Shift(args) => shift(&args),
        Command::Verify(args) => verify(&args),
        Command::Regions(args) => regions(&args),
        Command::Catalog(CatalogCommand::Build(args)) => catalog_build(&args),
        Command::Info(args) => info(&args),
    };
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, message }) => {
            eprintln!("exshift: {message}");
            ExitCode::from(code)
        }
    }
}

fn read_input(path: &Path) -> Result<(SimplicialComplex, Vec<u8>), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure { code: 1, message: "input is not UTF-8".into() })?;
    let entries = io::parse_tri(&text)?;
    let complex = match entries.as_slice() {
        [one] => one.complex()?,
        [] => return Err(Failure { code: 1, message: "input has no faces".into() }),
        _ => return Err(Failure { code: 1, message: "input must hold a single complex".into() }),
    };
    Ok((complex, bytes))
}

fn engine_config(args: &EngineArgs, input: &[u8]) -> Result<EngineConfig, Failure> {
    let seed = args.seed.unwrap_or_else(|| {
        let digest = Sha256::digest(input);
        u64::from_be_bytes(digest[..8].try_into().expect("8 bytes"))
    });
    Ok(EngineConfig {
        field: PrimeField::new(args.modulus)?,
        seed,
        confirm_seeds: args.seeds as usize,
        ..EngineConfig::default()
    })
}

fn is_surface_topology(t: Topology) -> bool {
    matches!(t, Topology::Torus | Topology::ProjectivePlane | Topology::KleinBottle)
}

fn load_tables(dir: Option<&Path>, surface: Topology) -> Result<Option<TableStore>, Failure> {
    match dir {
        Some(d) if d.join(catalog::surface_slug(surface)).join("index.json").exists() => Ok(Some(TableStore::load(d, surface)?)),
        _ => Ok(None),
    }
}

fn shift(args: &ShiftArgs) -> CliResult {
    let (complex, bytes) = read_input(&args.input.input)?;
    let config = engine_config(&args.engine, &bytes)?;
    let surface = SurfaceTriangulation::new(complex.clone()).ok();
    let use_surface = match args.method {
        Method::Generic => false,
        Method::Auto => surface.as_ref().is_some_and(|s| is_surface_topology(s.topology())),
        Method::Surface => match &surface {
            Some(s) if is_surface_topology(s.topology()) => true,
            Some(s) => return Err(Failure { code: 2, message: format!("no surface algorithm for the {}", s.topology()) }),
            None => return Err(Failure { code: 2, message: "input is not a closed surface".into() }),
        },
    };
    let result = if let (true, Some(s)) = (use_surface, &surface) {
        let tables = load_tables(args.catalog_dir.as_deref(), s.topology())?;
        let mut shifter = SurfaceShifter::new(config);
        if let Some(t) = &tables {
            shifter = shifter.with_tables(t);
        }
        shifter.shift(s)?
    } else {
        shift_complex(&complex, &config)?
    };
    if let Some(d) = args.dim {
        if d >= result.faces_by_dim.len() {
            return Err(Failure { code: 1, message: format!("dimension {d} exceeds the complex's {}", result.faces_by_dim.len() - 1) });
        }
    }
    if args.input.json {
        return Ok(json_line(&restrict(result, args.dim)));
    }
    Ok(render(&result, args.dim, if use_surface { "surface" } else { "generic" }))
}

fn restrict(mut r: ShiftResult, dim: Option<usize>) -> ShiftResult {
    if let Some(d) = dim {
        for (i, faces) in r.faces_by_dim.iter_mut().enumerate() {
            if i != d {
                faces.clear();
            }
        }
    }
    r
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn render(r: &ShiftResult, dim: Option<usize>, method: &str) -> String {
    let maximal = r.maximal_faces();
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, method = {method}, f-vector = {:?}", r.n, r.f_vector());
    for (d, faces) in r.faces_by_dim.iter().enumerate() {
        if dim.is_some_and(|want| want != d) {
            continue;
        }
        let _ = writeln!(out, "dimension {d}: {} faces, {}", faces.len(), r.certified_by_dim[d]);
        for f in faces {
            let label: Vec<String> = f.iter().map(u32::to_string).collect();
            let mark = if maximal.contains(f) { " *" } else { "" };
            let _ = writeln!(out, "  {}{mark}", label.join(" "));
        }
    }
    out
}

fn verify(args: &ShiftArgs) -> CliResult {
    let (complex, bytes) = read_input(&args.input.input)?;
    let config = engine_config(&args.engine, &bytes)?;
    let s = SurfaceTriangulation::new(complex).map_err(|_| Failure { code: 2, message: "input is not a closed surface".into() })?;
    if !is_surface_topology(s.topology()) {
        return Err(Failure { code: 2, message: format!("no surface algorithm for the {}", s.topology()) });
    }
    let tables = load_tables(args.catalog_dir.as_deref(), s.topology())?;
    let mut shifter = SurfaceShifter::new(config);
    if let Some(t) = &tables {
        shifter = shifter.with_tables(t);
    }
    let v = verify_surface(&s, &shifter, &config)?;
    let out = if args.input.json {
        json_line(&v)
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "surface: {:?}", v.surface.maximal_faces());
        let _ = writeln!(out, "generic: {:?} ({})", v.generic.maximal_faces(), cert_summary(&v.generic));
        let _ = writeln!(out, "{}", if v.agree { "match" } else { "MISMATCH" });
        out
    };
    if v.agree {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure { code: 3, message: "surface and generic results differ".into() })
    }
}

fn cert_summary(r: &ShiftResult) -> String {
    r.certified_by_dim.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn regions(args: &InputArgs) -> CliResult {
    let (complex, _) = read_input(&args.input)?;
    let s = SurfaceTriangulation::new(complex)?;
    let reports = critical_regions(&s, RegionSearch::for_topology(s.topology()));
    if args.json {
        return Ok(json_line(&reports));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{} critical regions", reports.len());
    for r in &reports {
        let _ = writeln!(
            out,
            "loop {:?}: {} with b = {}, {} internal vertices, {} internal edges, {}{}",
            r.cycle,
            r.shape,
            r.boundary_count,
            r.internal_vertex_count,
            r.internal_edge_count,
            if r.is_irreducible { "irreducible" } else { "reducible" },
            if r.is_combinatorial { "" } else { " (randomized-critical)" },
        );
    }
    Ok(out)
}

fn info(args: &InputArgs) -> CliResult {
    let (complex, _) = read_input(&args.input)?;
    let betti = betti_numbers(&complex, 1_000_003)?;
    let surface = SurfaceTriangulation::new(complex.clone()).ok();
    let topology = surface.as_ref().map(|s| s.topology().to_string());
    let prime = surface.as_ref().map(SurfaceTriangulation::is_prime);
    let irreducible = surface.as_ref().map(SurfaceTriangulation::is_irreducible);
    if args.json {
        let value = serde_json::json!({
            "n": complex.n(),
            "f_vector": complex.f_vector(),
            "topology": topology,
            "euler_characteristic": complex.euler_characteristic(),
            "prime": prime,
            "irreducible": irreducible,
            "betti": betti,
        });
        return Ok(json_line(&value));
    }
    let mut out = String::new();
    let _ = writeln!(out, "n = {}", complex.n());
    let _ = writeln!(out, "f-vector = {:?}", complex.f_vector());
    let _ = writeln!(out, "euler characteristic = {}", complex.euler_characteristic());
    let _ = writeln!(out, "topology = {}", topology.as_deref().unwrap_or("not a closed surface"));
    if let (Some(p), Some(i)) = (prime, irreducible) {
        let _ = writeln!(out, "prime = {p}, irreducible = {i}");
    }
    let _ = writeln!(out, "betti = {betti:?}");
    Ok(out)
}

fn catalog_build(args: &BuildArgs) -> CliResult {
    if !is_surface_topology(args.surface) {
        return Err(Failure { code: 2, message: format!("no catalog for the {}", args.surface) });
    }
    let seeds = match &args.irreducibles {
        Some(path) => catalog::load_catalog(args.surface, path, true)?,
        None => shipped_irreducibles(args.surface)?,
    };
    let config = engine_config(&args.engine, catalog::surface_slug(args.surface).as_bytes())?;
    std::fs::create_dir_all(&args.catalog_dir).map_err(|e| Failure { code: 1, message: e.to_string() })?;
    let checkpoint = args.catalog_dir.join(format!("{}-frontier.json", catalog::surface_slug(args.surface)));
    let keep_all = |_: &SurfaceTriangulation| true;
    let keep_ci = |k: &SurfaceTriangulation| exshift_core::critical::find_reducible_critical_region(k).is_none();
    let keep: &dyn Fn(&SurfaceTriangulation) -> bool = if args.critically_irreducible_last { &keep_ci } else { &keep_all };
    let mut entries = enumerate_with(args.surface, &seeds, args.max_n, Some(&checkpoint), keep)?;
    let store = build_tables(&mut entries, &config)?;
    store.save(&args.catalog_dir, args.surface)?;
    let facts = table_facts(&entries);
    if let Some(v) = facts.violations.first() {
        return Err(Failure { code: 4, message: format!("{} table fact violations, first: {v}", facts.violations.len()) });
    }
    if args.json {
        return Ok(json_line(&facts));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{} entries stored under {}", store.len(), args.catalog_dir.display());
    let _ = writeln!(out, "classes: {:?}", facts.classes);
    let _ = writeln!(out, "non-prefix results: {}", facts.non_prefix.len());
    let _ = writeln!(out, "large critically irreducible entries checked: {}", facts.large_prefix_checked);
    Ok(out)
}
