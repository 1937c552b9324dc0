//! Argument parsing and the four subcommands.
//!
//! Exit codes: 0 success (and every compared degree matched), 2 input or
//! validation error, 3 resource cap reached, 4 mathematical mismatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{value_parser, Arg, ArgAction, ArgMatches, Command};
use num_rational::BigRational;
use rips_kunneth_core::flag::{build_flag_complex, chain_complex, Limits};
use rips_kunneth_core::homology::HomologyCalculator;
use rips_kunneth_core::kunneth::{Clock, KunnethReport, KunnethVerifier, PredictionSource, Theory};
use rips_kunneth_core::{
    max_metric_product, relation_equals, relation_from_metric, strong_product, tensor_chain_complex,
    torus_closed_form, Coefficients, Graph, Threshold, ThresholdMode,
};
use serde_json::{json, Value};

use crate::formats::{format_rational, parse_rational, write_complex, write_distance_matrix, write_edge_list, FormatError};
use crate::recipe::{RecipeError, Space, SpaceRecipe};
use crate::report::{group_json, prediction_json, Format, Report, WallClock};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

pub const ENV_MAX_SIMPLICES: &str = "RIPS_KUNNETH_MAX_SIMPLICES";
pub const ENV_MAX_ENTRIES: &str = "RIPS_KUNNETH_MAX_ENTRIES";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Input(String),
    #[error("resource cap reached: {0}")]
    Resource(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Clap(e) if !e.use_stderr() => EXIT_OK,
            Self::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        }
    }
}

impl From<rips_kunneth_core::Error> for CliError {
    fn from(e: rips_kunneth_core::Error) -> Self {
        match e {
            rips_kunneth_core::Error::ResourceLimit(m) => Self::Resource(m),
            e => Self::Input(e.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Invalid(core) => core.into(),
            e => Self::Input(e.to_string()),
        }
    }
}

impl From<RecipeError> for CliError {
    fn from(e: RecipeError) -> Self {
        match e {
            RecipeError::Format(f) => f.into(),
            e => Self::Input(e.to_string()),
        }
    }
}

/// A rendered report, where it should go, and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub destination: Option<PathBuf>,
    pub exit_code: i32,
}

const RECIPES: [&str; 8] = ["cycle", "complete", "power-cycle", "circle", "rp2", "random", "edges", "metric"];

fn with_common_args(cmd: Command) -> Command {
    let count = || value_parser!(usize);
    cmd.next_help_heading("Spaces (in command-line order)")
        .arg(Arg::new("cycle").long("cycle").value_name("N").value_parser(count()).action(ArgAction::Append).help("n-cycle C_n"))
        .arg(Arg::new("complete").long("complete").value_name("N").value_parser(count()).action(ArgAction::Append).help("complete graph K_n"))
        .arg(
            Arg::new("power-cycle")
                .long("power-cycle")
                .value_names(["N", "K"])
                .num_args(2)
                .value_parser(count())
                .action(ArgAction::Append)
                .help("n points on a circle, each joined to k neighbours per side"),
        )
        .arg(Arg::new("circle").long("circle").value_name("N").value_parser(count()).action(ArgAction::Append).help("n equally spaced points on the unit-circumference circle (metric)"))
        .arg(
            Arg::new("rp2")
                .long("rp2")
                .num_args(0)
                .default_missing_value("rp2")
                .action(ArgAction::Append)
                .help("barycentric subdivision of the six-vertex projective plane"),
        )
        .arg(
            Arg::new("random")
                .long("random")
                .value_names(["N", "P", "SEED"])
                .num_args(3)
                .action(ArgAction::Append)
                .help("Erdős–Rényi G(n, p) from a seeded ChaCha8 stream"),
        )
        .arg(Arg::new("edges").long("edges").value_name("PATH").value_parser(value_parser!(PathBuf)).action(ArgAction::Append).help("edge-list file"))
        .arg(Arg::new("metric").long("metric").value_name("PATH").value_parser(value_parser!(PathBuf)).action(ArgAction::Append).help("distance-matrix file (metric)"))
        .next_help_heading("Options")
        .arg(Arg::new("threshold").long("threshold").value_name("R").help("scale for metric spaces, as p/q or a finite decimal"))
        .arg(Arg::new("mode").long("mode").value_parser(["closed", "open"]).default_value("closed").help("d ≤ r (closed) or d < r (open)"))
        .arg(Arg::new("max-q").long("max-q").value_name("Q").value_parser(count()).help("highest degree to report"))
        .arg(Arg::new("coeff").long("coeff").value_name("RING").default_value("z").help("z, q, or f<p> for a prime p"))
        .arg(Arg::new("format").long("format").value_parser(["json", "tsv"]).default_value("json"))
        .arg(Arg::new("output").long("output").short('o').value_name("PATH").value_parser(value_parser!(PathBuf)).help("write the report here instead of stdout"))
        .arg(
            Arg::new("max-simplices")
                .long("max-simplices")
                .env(ENV_MAX_SIMPLICES)
                .value_parser(value_parser!(u64).range(1..))
                .help("cap on simplices (or cells) in any one complex"),
        )
        .arg(
            Arg::new("max-entries")
                .long("max-entries")
                .env(ENV_MAX_ENTRIES)
                .value_parser(value_parser!(u64).range(1..))
                .help("cap on stored boundary-matrix entries in a tensor complex"),
        )
        .arg(Arg::new("no-timings").long("no-timings").action(ArgAction::SetTrue).help("report every timing as 0 so output is byte-stable"))
        .arg(Arg::new("verbose").short('v').long("verbose").action(ArgAction::Count))
}

pub fn command() -> Command {
    Command::new("rips-kunneth")
        .about("Exact homology of flag complexes and Künneth checks for their products")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .subcommand(with_common_args(
            Command::new("homology")
                .about("Homology (or cohomology) of one flag complex")
                .arg(Arg::new("cohomology").long("cohomology").action(ArgAction::SetTrue))
                .arg(Arg::new("export-complex").long("export-complex").value_name("PATH").value_parser(value_parser!(PathBuf)).help("dump simplices and boundary matrices as text")),
        ))
        .subcommand(with_common_args(
            Command::new("product")
                .about("Strong product of two graphs, or thresholded max-metric product of two metric spaces")
                .arg(Arg::new("emit").long("emit").value_name("PATH").value_parser(value_parser!(PathBuf)).help("write the product as an edge list (or distance matrix)")),
        ))
        .subcommand(with_common_args(
            Command::new("kunneth")
                .about("Compare computed product (co)homology with the Künneth prediction degree by degree")
                .arg(Arg::new("algebraic").long("algebraic").action(ArgAction::SetTrue).help("use the tensor product of the factor chain complexes"))
                .arg(Arg::new("cohomology").long("cohomology").action(ArgAction::SetTrue))
                .arg(
                    Arg::new("flip-sign")
                        .long("flip-sign")
                        .value_name("Q")
                        .value_parser(value_parser!(usize))
                        .help("negate one entry of ∂_Q in the tensor complex (falsification check)"),
                ),
        ))
        .subcommand(with_common_args(
            Command::new("torus-table")
                .about("Closed-form homology of the two-scale torus, optionally against a computation")
                .arg(Arg::new("l").long("l").value_parser(value_parser!(usize)).required(true))
                .arg(Arg::new("lp").long("lp").value_parser(value_parser!(usize)).required(true))
                .arg(Arg::new("check").long("check").action(ArgAction::SetTrue).help("require two space recipes and compare")),
        ))
}

/// Everything shared by the subcommands.
struct Common {
    recipes: Vec<SpaceRecipe>,
    threshold: Option<Threshold>,
    max_q: Option<usize>,
    coefficients: Coefficients,
    format: Format,
    output: Option<PathBuf>,
    limits: Limits,
    clock: WallClock,
    verbose: u8,
}

impl Common {
    fn from_matches(m: &ArgMatches) -> Result<Self, CliError> {
        let mode = match m.get_one::<String>("mode").map(String::as_str) {
            Some("open") => ThresholdMode::Open,
            _ => ThresholdMode::Closed,
        };
        let threshold = m
            .get_one::<String>("threshold")
            .map(|s| -> Result<Threshold, CliError> {
                let v = parse_rational(s).map_err(|e| CliError::Input(format!("--threshold: {e}")))?;
                Ok(Threshold::new(v, mode)?)
            })
            .transpose()?;
        let defaults = Limits::default();
        let cap = |id: &str, d: usize| m.get_one::<u64>(id).map_or(d, |&v| usize::try_from(v).unwrap_or(usize::MAX));
        Ok(Self {
            recipes: recipes(m)?,
            threshold,
            max_q: m.get_one::<usize>("max-q").copied(),
            coefficients: parse_coefficients(m.get_one::<String>("coeff").expect("has default"))?,
            format: if m.get_one::<String>("format").map(String::as_str) == Some("tsv") { Format::Tsv } else { Format::Json },
            output: m.get_one::<PathBuf>("output").cloned(),
            limits: Limits {
                max_simplices: cap("max-simplices", defaults.max_simplices),
                max_matrix_entries: cap("max-entries", defaults.max_matrix_entries),
            },
            clock: WallClock::new(!m.get_flag("no-timings")),
            verbose: m.get_count("verbose"),
        })
    }

    fn log(&self, msg: impl FnOnce() -> String) {
        if self.verbose > 0 {
            eprintln!("rips-kunneth: {}", msg());
        }
    }

    fn config(&self, command: &str) -> serde_json::Map<String, Value> {
        let mut c = serde_json::Map::new();
        c.insert("command".into(), command.into());
        c.insert("recipes".into(), self.recipes.iter().map(|r| Value::from(r.to_string())).collect());
        c.insert(
            "threshold".into(),
            match &self.threshold {
                Some(t) => json!({
                    "value": format_rational(t.value()),
                    "mode": if t.mode() == ThresholdMode::Open { "open" } else { "closed" },
                }),
                None => Value::Null,
            },
        );
        c.insert("max_q".into(), self.max_q.into());
        c.insert("coefficients".into(), self.coefficients.to_string().into());
        c.insert("format".into(), if self.format == Format::Tsv { "tsv" } else { "json" }.into());
        c.insert("max_simplices".into(), self.limits.max_simplices.into());
        c.insert("max_matrix_entries".into(), self.limits.max_matrix_entries.into());
        c
    }

    fn exactly(&self, n: usize, command: &str) -> Result<(), CliError> {
        if self.recipes.len() != n {
            let want = if n == 1 { "exactly one space" } else { "exactly two spaces" };
            return Err(CliError::Input(format!("{command} needs {want}, got {}", self.recipes.len())));
        }
        Ok(())
    }

    fn graph(&self, i: usize) -> Result<Graph, CliError> {
        let r = &self.recipes[i];
        self.log(|| format!("building {r}"));
        Ok(r.graph(self.threshold.as_ref())?)
    }

    fn outcome(&self, report: &Report, exit_code: i32) -> Outcome {
        Outcome { output: report.render(self.format), destination: self.output.clone(), exit_code }
    }
}

pub fn parse_coefficients(s: &str) -> Result<Coefficients, CliError> {
    match s {
        "z" => Ok(Coefficients::Integers),
        "q" => Ok(Coefficients::Rationals),
        _ => {
            let p = s
                .strip_prefix('f')
                .and_then(|p| p.parse::<u32>().ok())
                .ok_or_else(|| CliError::Input(format!("--coeff: expected z, q or f<prime>, got {s:?}")))?;
            Ok(Coefficients::prime(p)?)
        }
    }
}

/// Recipes in the order they appeared on the command line.
fn recipes(m: &ArgMatches) -> Result<Vec<SpaceRecipe>, CliError> {
    let mut found: Vec<(usize, SpaceRecipe)> = Vec::new();
    for id in RECIPES {
        let Some(indices) = m.indices_of(id) else { continue };
        let indices: Vec<usize> = indices.collect();
        match id {
            "cycle" | "complete" | "circle" => {
                for (&n, &i) in m.get_many::<usize>(id).into_iter().flatten().zip(&indices) {
                    let r = match id {
                        "cycle" => SpaceRecipe::Cycle(n),
                        "complete" => SpaceRecipe::Complete(n),
                        _ => SpaceRecipe::Circle(n),
                    };
                    found.push((i, r));
                }
            }
            "power-cycle" => {
                let vals: Vec<usize> = m.get_many::<usize>(id).into_iter().flatten().copied().collect();
                for (v, i) in vals.chunks(2).zip(indices.chunks(2)) {
                    found.push((i[0], SpaceRecipe::PowerCycle(v[0], v[1])));
                }
            }
            "rp2" => found.extend(indices.iter().map(|&i| (i, SpaceRecipe::Rp2))),
            "random" => {
                let vals: Vec<&String> = m.get_many::<String>(id).into_iter().flatten().collect();
                for (v, i) in vals.chunks(3).zip(indices.chunks(3)) {
                    let bad = |what: &str| CliError::Input(format!("--random: bad {what} in {v:?}"));
                    let n = v[0].parse().map_err(|_| bad("vertex count"))?;
                    let p: BigRational = parse_rational(v[1]).map_err(|_| bad("probability"))?;
                    let seed = v[2].parse().map_err(|_| bad("seed"))?;
                    found.push((i[0], SpaceRecipe::Random { n, p, seed }));
                }
            }
            _ => {
                for (path, &i) in m.get_many::<PathBuf>(id).into_iter().flatten().zip(&indices) {
                    let r = if id == "edges" {
                        SpaceRecipe::EdgeList(path.clone())
                    } else {
                        SpaceRecipe::DistanceMatrix(path.clone())
                    };
                    found.push((i, r));
                }
            }
        }
    }
    found.sort_by_key(|(i, _)| *i);
    Ok(found.into_iter().map(|(_, r)| r).collect())
}

fn graph_summary(recipe: &SpaceRecipe, g: &Graph) -> serde_json::Map<String, Value> {
    let mut s = serde_json::Map::new();
    s.insert("recipe".into(), recipe.to_string().into());
    s.insert("vertices".into(), g.vertex_count().into());
    s.insert("edges".into(), g.edge_count().into());
    s
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = command().try_get_matches_from(args)?;
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let common = Common::from_matches(sub)?;
    match name {
        "homology" => cmd_homology(&common, sub),
        "product" => cmd_product(&common, sub),
        "kunneth" => cmd_kunneth(&common, sub),
        "torus-table" => cmd_torus_table(&common, sub),
        _ => unreachable!("unknown subcommand {name}"),
    }
}

fn cmd_homology(c: &Common, m: &ArgMatches) -> Result<Outcome, CliError> {
    c.exactly(1, "homology")?;
    let max_q = c.max_q.unwrap_or(2);
    let cohomology = m.get_flag("cohomology");
    let g = c.graph(0)?;
    let t0 = c.clock.micros();
    let k = build_flag_complex(&g, max_q + 1, &c.limits)?;
    let complex = chain_complex(&k);
    let built = c.clock.micros() - t0;
    c.log(|| format!("flag complex f-vector {:?}", k.f_vector()));
    if let Some(path) = m.get_one::<PathBuf>("export-complex") {
        write_file(path, &write_complex(&k))?;
    }

    let mut config = c.config("homology");
    config.insert("theory".into(), if cohomology { "cohomology" } else { "homology" }.into());
    config.insert("dimension_cap".into(), (max_q + 1).into());
    let mut space = graph_summary(&c.recipes[0], &g);
    space.insert("f_vector".into(), json!(k.f_vector()));
    space.insert("truncated".into(), k.is_truncated().into());
    let mut report = Report::new(Value::Object(config), vec![Value::Object(space)]);

    let mut calc = HomologyCalculator::new(&complex, c.coefficients);
    for q in 0..=max_q {
        let start = c.clock.micros();
        let group = if cohomology { calc.cohomology(q)? } else { calc.homology(q)? };
        c.log(|| format!("degree {q}: {group}"));
        let mut row = json!({ "q": q });
        merge(&mut row, group_json(&group));
        row["micros"] = (c.clock.micros() - start).into();
        report.push_degree(row);
    }
    report.time("build_micros", built);
    report.time("total_micros", c.clock.micros() - t0);
    Ok(c.outcome(&report, EXIT_OK))
}

fn cmd_product(c: &Common, m: &ArgMatches) -> Result<Outcome, CliError> {
    c.exactly(2, "product")?;
    let max_q = c.max_q.unwrap_or(2);
    let t0 = c.clock.micros();
    let mut report_extra = serde_json::Map::new();
    let mut exit = EXIT_OK;
    let (spaces, product, emitted) = match (c.recipes[0].realize()?, c.recipes[1].realize()?) {
        (Space::Metric(a), Space::Metric(b)) => {
            let t = c.threshold.as_ref().ok_or_else(|| CliError::Input("metric product needs --threshold".into()))?;
            let mm = max_metric_product(&a, &b)?;
            let g = relation_from_metric(&mm, t);
            let (ga, gb) = (relation_from_metric(&a, t), relation_from_metric(&b, t));
            let agrees = relation_equals(&g, &strong_product(&ga, &gb)?)?;
            if !agrees {
                exit = EXIT_MISMATCH;
            }
            report_extra.insert("construction".into(), "max_metric".into());
            report_extra.insert("agrees_with_strong_product".into(), agrees.into());
            let spaces = vec![graph_summary(&c.recipes[0], &ga), graph_summary(&c.recipes[1], &gb)];
            (spaces, g, write_distance_matrix(&mm))
        }
        _ => {
            let (ga, gb) = (c.graph(0)?, c.graph(1)?);
            let g = strong_product(&ga, &gb)?;
            report_extra.insert("construction".into(), "strong".into());
            let spaces = vec![graph_summary(&c.recipes[0], &ga), graph_summary(&c.recipes[1], &gb)];
            let text = write_edge_list(&g);
            (spaces, g, text)
        }
    };
    if let Some(path) = m.get_one::<PathBuf>("emit") {
        write_file(path, &emitted)?;
    }
    let k = build_flag_complex(&product, max_q, &c.limits)?;
    let mut summary = serde_json::Map::new();
    summary.insert("vertices".into(), product.vertex_count().into());
    summary.insert("edges".into(), product.edge_count().into());
    summary.insert("f_vector".into(), json!(k.f_vector()));
    summary.extend(report_extra);

    let mut config = c.config("product");
    config.insert("dimension_cap".into(), max_q.into());
    let mut report = Report::new(Value::Object(config), spaces.into_iter().map(Value::Object).collect());
    report.set("product", Value::Object(summary));
    for q in 0..=max_q {
        report.push_degree(json!({ "q": q, "simplices": k.count(q) }));
    }
    report.time("total_micros", c.clock.micros() - t0);
    Ok(c.outcome(&report, exit))
}

fn degree_row(d: &rips_kunneth_core::kunneth::DegreeComparison) -> Value {
    let mut row = json!({ "q": d.q });
    match &d.computed {
        Some(g) => merge(&mut row, group_json(g)),
        None => merge(&mut row, json!({ "rank": null, "torsion": null })),
    }
    row["predicted"] = d.predicted.as_ref().map_or(Value::Null, prediction_json);
    row["match"] = d.matches().map_or(Value::Null, Value::from);
    row["micros"] = d.micros.into();
    row
}

fn cmd_kunneth(c: &Common, m: &ArgMatches) -> Result<Outcome, CliError> {
    c.exactly(2, "kunneth")?;
    let max_q = c.max_q.unwrap_or(2);
    let theory = if m.get_flag("cohomology") { Theory::Cohomology } else { Theory::Homology };
    let flip = m.get_one::<usize>("flip-sign").copied();
    let algebraic = m.get_flag("algebraic") || flip.is_some();
    let verifier = KunnethVerifier::new(max_q, c.coefficients, theory).with_limits(c.limits).with_clock(&c.clock);
    let (g, h) = (c.graph(0)?, c.graph(1)?);
    let t0 = c.clock.micros();

    let kr: KunnethReport = if algebraic {
        let ca = chain_complex(&build_flag_complex(&g, max_q + 1, &c.limits)?);
        let cb = chain_complex(&build_flag_complex(&h, max_q + 1, &c.limits)?);
        match flip {
            None => verifier.verify_algebraic(&ca, &cb)?,
            Some(q) => {
                let mut product = tensor_chain_complex(&ca, &cb, max_q + 1, &c.limits)?;
                let col = product
                    .boundary(q)
                    .and_then(|d| (0..d.cols()).find(|&j| !d.column(j).is_empty()))
                    .ok_or_else(|| CliError::Input(format!("--flip-sign {q}: the tensor complex has no entry in ∂_{q}")))?;
                product.negate_boundary_entry(q, col, 0);
                c.log(|| format!("negated entry 0 of column {col} of ∂_{q}"));
                let factors = [verifier.graded_groups(&ca)?, verifier.graded_groups(&cb)?];
                let mut r = verifier.verify_against(&product, factors, PredictionSource::Computed)?;
                r.factor_dims = [ca.dims().to_vec(), cb.dims().to_vec()];
                r
            }
        }
    } else {
        verifier.verify_graph_product(&g, &h)?
    };

    let mut config = c.config("kunneth");
    config.insert("theory".into(), if theory == Theory::Cohomology { "cohomology" } else { "homology" }.into());
    config.insert("construction".into(), if algebraic { "tensor" } else { "strong_product" }.into());
    config.insert("flip_sign".into(), flip.into());
    config.insert("dimension_cap".into(), kr.dimension_cap.into());
    let spaces = [(&c.recipes[0], &g, &kr.factor_dims[0]), (&c.recipes[1], &h, &kr.factor_dims[1])]
        .into_iter()
        .map(|(r, g, dims)| {
            let mut s = graph_summary(r, g);
            s.insert("f_vector".into(), json!(dims));
            Value::Object(s)
        })
        .collect();
    let mut report = Report::new(Value::Object(config), spaces);
    let mismatched: Vec<usize> = kr.mismatched_degrees().collect();
    report.set("product", json!({ "dims": kr.product_dims }));
    report.set("complex_valid", kr.complex_valid.into());
    report.set("resource_limited", kr.resource_limited.into());
    report.set("all_match", (kr.all_match() && kr.complex_valid).into());
    report.set("mismatched_degrees", json!(mismatched));
    for d in &kr.degrees {
        c.log(|| format!("degree {}: computed {:?}, match {:?}", d.q, d.computed, d.matches()));
        report.push_degree(degree_row(d));
    }
    report.time("total_micros", c.clock.micros() - t0);

    let exit = if !mismatched.is_empty() || !kr.complex_valid {
        EXIT_MISMATCH
    } else if kr.resource_limited {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    };
    Ok(c.outcome(&report, exit))
}

fn cmd_torus_table(c: &Common, m: &ArgMatches) -> Result<Outcome, CliError> {
    let l = *m.get_one::<usize>("l").expect("required");
    let lp = *m.get_one::<usize>("lp").expect("required");
    let max_q = c.max_q.unwrap_or(2 * (l + lp + 1));
    let check = m.get_flag("check");
    if check || !c.recipes.is_empty() {
        c.exactly(2, "torus-table with a comparison")?;
    }
    let t0 = c.clock.micros();

    let mut config = c.config("torus-table");
    config.insert("l".into(), l.into());
    config.insert("lp".into(), lp.into());
    if !c.recipes.is_empty() {
        config.insert("dimension_cap".into(), (max_q + 1).into());
    }
    let computed = if c.recipes.is_empty() {
        None
    } else {
        let (g, h) = (c.graph(0)?, c.graph(1)?);
        let v = KunnethVerifier::new(max_q, Coefficients::Integers, Theory::Homology)
            .with_limits(c.limits)
            .with_clock(&c.clock);
        Some((v.verify_graph_product(&g, &h)?, g, h))
    };
    let spaces = match &computed {
        Some((_, g, h)) => vec![Value::Object(graph_summary(&c.recipes[0], g)), Value::Object(graph_summary(&c.recipes[1], h))],
        None => Vec::new(),
    };
    let mut report = Report::new(Value::Object(config), spaces);

    let mut exit = EXIT_OK;
    for q in 0..=max_q {
        let table = torus_closed_form(l, lp, q);
        let mut row = json!({ "q": q });
        merge(&mut row, group_json(&table));
        if let Some((kr, _, _)) = &computed {
            let got = kr.computed(q);
            row["computed"] = got.map_or(Value::Null, group_json);
            row["match"] = got.map_or(Value::Null, |g| Value::from(*g == table));
            if got.is_some_and(|g| *g != table) {
                exit = EXIT_MISMATCH;
            }
        }
        report.push_degree(row);
    }
    if let Some((kr, _, _)) = &computed {
        if exit == EXIT_OK && kr.resource_limited {
            exit = EXIT_RESOURCE;
        }
        report.set("all_match", (exit == EXIT_OK).into());
    }
    report.time("total_micros", c.clock.micros() - t0);
    Ok(c.outcome(&report, exit))
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Runs the CLI end to end: writes the report, prints errors, and returns
/// the exit code.
pub fn execute<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run(args) {
        Ok(out) => {
            let written = match &out.destination {
                Some(path) => write_file(path, &out.output),
                None => {
                    print!("{}", out.output);
                    Ok(())
                }
            };
            match written {
                Ok(()) => out.exit_code,
                Err(e) => {
                    eprintln!("rips-kunneth: {e}");
                    e.exit_code()
                }
            }
        }
        Err(CliError::Clap(e)) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            code
        }
        Err(e) => {
            eprintln!("rips-kunneth: {e}");
            e.exit_code()
        }
    }
}
