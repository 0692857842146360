use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use levalg::artinian::{bar_graph_partition, ArtinianAlgebra};
use levalg::betti::{betti_table_artinian, betti_table_stable, BettiTable};
use levalg::checks::{run_criterion, CheckConfig, CheckContext, CRITERIA};
use levalg::points::{configuration, ConfigurationKind, PointSet};
use levalg::ring::{parse_ideal, GradedIdeal, Ring};
use levalg::rng::{rng_from_seed, sub_seed};
use levalg::strata::{
    series_data, series_dimensions, strata_census, verify_partition_construction, CensusTarget,
    Family, Witness,
};
use levalg::tangent::{tangent_dim_artinian, tangent_dim_points};
use levalg::{Error, PrimeField};

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

#[derive(Parser)]
#[command(
    name = "levalg",
    version,
    about = "Exact computations with graded Artinian level algebras over GF(p)"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Prime modulus.
    #[arg(long, global = true, env = "LEVALG_PRIME", default_value_t = 32003)]
    prime: u64,
    /// Seed; required by every randomized command.
    #[arg(long, global = true, env = "LEVALG_SEED")]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Where an algebra or ideal comes from. Exactly one source is used.
#[derive(Args, Clone)]
struct Source {
    /// Comma-separated homogeneous generators, optionally `+ m^t`.
    #[arg(long, conflicts_with_all = ["witness", "points", "file", "family"])]
    ideal: Option<String>,
    /// Number of variables for `--ideal`.
    #[arg(long, default_value_t = 3)]
    vars: usize,
    /// Named witness, e.g. H1_A3.
    #[arg(long, conflicts_with_all = ["points", "file", "family"])]
    witness: Option<Witness>,
    /// Named point configuration, e.g. T1_Da.
    #[arg(long, conflicts_with_all = ["file", "family"])]
    points: Option<ConfigurationKind>,
    /// Point file (`p=<prime> dim=<2|3>` header, one point per line).
    #[arg(long, conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Deformation family member, with `--t`.
    #[arg(long)]
    family: Option<Family>,
    /// Family parameter, a field element.
    #[arg(long, default_value_t = 1)]
    t: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function of a quotient or of a point set.
    Hilbert {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Graded Betti table.
    Betti {
        #[command(flatten)]
        source: Source,
        /// Degree probed when the quotient is not Artinian.
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
    },
    /// Socle dimensions by degree.
    Socle {
        #[command(flatten)]
        source: Source,
    },
    /// Level test and Cohen-Macaulay type.
    Level {
        #[command(flatten)]
        source: Source,
    },
    /// Jordan types of random linear forms against the bar-graph partition.
    Lefschetz {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Tangent dimension at a point set (Hilbert scheme) or Artinian algebra.
    Tangent {
        #[command(flatten)]
        source: Source,
        /// First truncation degree for point ideals.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Build or read a point configuration and report its h-vector.
    Points {
        #[command(flatten)]
        source: Source,
    },
    /// Betti-strata census for H1 or H2.
    Census {
        #[arg(long, default_value = "H1")]
        target: CensusTarget,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Members of a one-parameter family and their Betti tables.
    Deform {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        t: u64,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
    },
    /// Closed forms for H(c); with `--a`, the stratum and component
    /// dimensions, and with `--construct` the point-partition pipeline.
    Series {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, requires = "a")]
        construct: bool,
    },
    /// Generators and Hilbert function of a named witness.
    Witness {
        #[arg(long)]
        witness: Witness,
    },
    /// Run the acceptance criteria.
    PaperCheck {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Include the larger partition constructions.
        #[arg(long)]
        slow: bool,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidArgument(_)
            | Error::InvalidPrime(_)
            | Error::UnknownName(_) => Failure::Usage(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// A finished report: JSON is canonical, text and CSV are renderings.
struct Report {
    json: Value,
    text: String,
    csv: Option<String>,
    passed: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            csv: None,
            passed: true,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => format!(
                "{}\n",
                serde_json::to_string_pretty(&self.json).expect("json")
            ),
            Format::Csv => self.csv.clone().unwrap_or_else(|| flat_csv(&self.json)),
        }
    }
}

/// `key,value` lines for a JSON object; nested keys are dot-joined and
/// scalar arrays are space-separated.
fn flat_csv(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let cells: Vec<String> = a.iter().map(scalar).collect();
                out.push_str(&format!("{prefix},{}\n", cells.join(" ")));
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), x, out);
                }
            }
            _ => out.push_str(&format!("{prefix},{}\n", scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::from("key,value\n");
    walk("", v, &mut out);
    out
}

fn betti_csv(t: &BettiTable) -> String {
    let mut out = String::from("row");
    for i in 0..t.totals().len() {
        out.push_str(&format!(",{i}"));
    }
    out.push('\n');
    let line = |label: String, v: &[usize]| {
        let cells: Vec<String> = v.iter().map(usize::to_string).collect();
        format!("{label},{}\n", cells.join(","))
    };
    out.push_str(&line("total".into(), &t.totals()));
    for (d, row) in t.display_rows().iter().enumerate() {
        out.push_str(&line(d.to_string(), row));
    }
    out
}

fn seq_csv(label: &str, v: &[usize]) -> String {
    let mut out = format!("degree,{label}\n");
    for (d, x) in v.iter().enumerate() {
        out.push_str(&format!("{d},{x}\n"));
    }
    out
}

struct Ctx {
    field: PrimeField,
    seed: Option<u64>,
}

impl Ctx {
    fn seed(&self, why: &str) -> CliResult<u64> {
        self.seed
            .ok_or_else(|| Failure::Usage(format!("--seed (or LEVALG_SEED) is required for {why}")))
    }
}

enum Loaded {
    Ideal(GradedIdeal, String),
    Points(PointSet, String),
}

impl Source {
    fn load(&self, ctx: &Ctx) -> CliResult<Loaded> {
        if let Some(text) = &self.ideal {
            let ring = Ring::new(self.vars, ctx.field);
            return Ok(Loaded::Ideal(parse_ideal(ring, text)?, text.clone()));
        }
        if let Some(w) = self.witness {
            let seed = if w.is_seeded() {
                ctx.seed(&format!("witness {w}"))?
            } else {
                0
            };
            return Ok(Loaded::Ideal(w.ideal(ctx.field, seed)?, w.name().into()));
        }
        if let Some(kind) = self.points {
            let seed = ctx.seed(&format!("configuration {kind}"))?;
            return Ok(Loaded::Points(
                configuration(kind, ctx.field, seed)?,
                kind.name().into(),
            ));
        }
        if let Some(path) = &self.file {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let z: PointSet = text.parse()?;
            if z.field() != ctx.field {
                return Err(Failure::Usage(format!(
                    "point file is over GF({}), not GF({})",
                    z.field().modulus(),
                    ctx.field.modulus()
                )));
            }
            return Ok(Loaded::Points(z, path.display().to_string()));
        }
        if let Some(fam) = self.family {
            let seed = if fam == Family::H2 {
                ctx.seed("the H2 family")?
            } else {
                0
            };
            let label = format!("{fam} t={}", ctx.field.reduce(self.t));
            return Ok(Loaded::Ideal(fam.member(ctx.field, self.t, seed)?, label));
        }
        Err(Failure::Usage(
            "give one of --ideal, --witness, --points, --file, --family".into(),
        ))
    }

    fn ideal(&self, ctx: &Ctx) -> CliResult<(GradedIdeal, String)> {
        match self.load(ctx)? {
            Loaded::Ideal(i, label) => Ok((i, label)),
            Loaded::Points(z, label) => Ok((z.ideal_auto()?, label)),
        }
    }

    /// The Artinian algebra of the source; point sets are reduced by a
    /// random linear form.
    fn artinian(&self, ctx: &Ctx) -> CliResult<(ArtinianAlgebra, String)> {
        match self.load(ctx)? {
            Loaded::Ideal(i, label) => Ok((ArtinianAlgebra::from_ideal(&i)?, label)),
            Loaded::Points(z, label) => {
                let seed = sub_seed(ctx.seed("a random Artinian reduction")?, 1);
                Ok((
                    z.random_reduction(&mut rng_from_seed(seed))?,
                    format!("{label} reduced"),
                ))
            }
        }
    }
}

fn hilbert(ctx: &Ctx, source: &Source, max_degree: Option<usize>) -> CliResult<Report> {
    match source.load(ctx)? {
        Loaded::Points(z, label) => {
            let dmax = max_degree.unwrap_or(z.stabilization_degree() + 1);
            let t = z.hilbert_function(dmax).values;
            let h = z.h_vector();
            let text = format!("{label}: {} points\nT = {t:?}\nh = {h:?}\n", z.len());
            Ok(Report::new(
                json!({"source": label, "points": z.len(), "T": t, "h_vector": h}),
                text,
            )
            .with_csv(seq_csv("T", &t)))
        }
        Loaded::Ideal(i, label) => {
            let h = match max_degree {
                Some(d) => i.hilbert_function(d).values,
                None => match ArtinianAlgebra::from_ideal(&i) {
                    Ok(a) => a.hilbert_values(),
                    Err(Error::NotArtinian(_)) => i.hilbert_function(10).values,
                    Err(e) => return Err(e.into()),
                },
            };
            let text = format!("{label}\nH = {h:?}\n");
            Ok(Report::new(json!({"source": label, "H": h}), text).with_csv(seq_csv("H", &h)))
        }
    }
}

fn betti(ctx: &Ctx, source: &Source, probe: usize) -> CliResult<Report> {
    let (ideal, label) = source.ideal(ctx)?;
    let (table, h) = match betti_table_artinian(&ideal) {
        Ok(t) => (t, ArtinianAlgebra::from_ideal(&ideal)?.hilbert_values()),
        Err(Error::NotArtinian(_)) => {
            let (t, k) = betti_table_stable(&ideal, probe)?;
            (t, ideal.hilbert_function(k).values)
        }
        Err(e) => return Err(e.into()),
    };
    let text = format!("{label}\nH = {h:?}\n{}", table.render());
    Ok(Report::new(
        json!({"source": label, "H": h, "betti": table.to_json(), "totals": table.totals()}),
        text,
    )
    .with_csv(betti_csv(&table)))
}

fn socle(ctx: &Ctx, source: &Source) -> CliResult<Report> {
    let (a, label) = source.artinian(ctx)?;
    let s = a.socle();
    let text = format!("{label}\nsocle dims = {:?}, total {}\n", s.dims, s.total());
    Ok(Report::new(
        json!({"source": label, "socle": s.dims, "total": s.total()}),
        text,
    )
    .with_csv(seq_csv("socle", &s.dims)))
}

fn level(ctx: &Ctx, source: &Source) -> CliResult<Report> {
    let (a, label) = source.artinian(ctx)?;
    let l = a.level_type();
    let text = format!(
        "{label}\nlevel: {}, type {}, socle degree {}\n",
        l.is_level, l.cm_type, l.socle_degree
    );
    Ok(Report::new(
        json!({"source": label, "H": a.hilbert_values(), "level": l.is_level,
               "type": l.cm_type, "socle_degree": l.socle_degree}),
        text,
    ))
}

fn lefschetz(ctx: &Ctx, source: &Source, samples: usize) -> CliResult<Report> {
    let seed = ctx.seed("random linear forms")?;
    let (a, label) = source.artinian(ctx)?;
    let rep = a.strong_lefschetz(samples, &mut rng_from_seed(sub_seed(seed, 2)));
    let bar = bar_graph_partition(&a.hilbert_values());
    let samples: Vec<String> = rep.samples.iter().map(ToString::to_string).collect();
    let text = format!(
        "{label}\nbar graph   {bar}\ngeneric     {}\nsamples     {}\nstrong Lefschetz: {}\n",
        rep.generic,
        samples.join(" "),
        rep.strong_lefschetz
    );
    Ok(Report::new(
        json!({"source": label, "H": a.hilbert_values(), "bar_graph": bar.parts,
               "generic": rep.generic.parts, "samples": samples,
               "strong_lefschetz": rep.strong_lefschetz}),
        text,
    ))
}

fn tangent(ctx: &Ctx, source: &Source, dstart: Option<usize>) -> CliResult<Report> {
    let (report, label, kind) = match source.load(ctx)? {
        Loaded::Points(z, label) => (
            tangent_dim_points(&z.ideal_auto()?, dstart)?,
            label,
            "points",
        ),
        Loaded::Ideal(i, label) => match ArtinianAlgebra::from_ideal(&i) {
            Ok(a) => (tangent_dim_artinian(&a), label, "artinian"),
            Err(Error::NotArtinian(_)) => (tangent_dim_points(&i, dstart)?, label, "saturated"),
            Err(e) => return Err(e.into()),
        },
    };
    let text = format!(
        "{label}\ntangent dimension {} ({kind}, D = {}, stabilized {})\n",
        report.dimension, report.truncation_degree, report.stabilized
    );
    Ok(Report::new(
        json!({"source": label, "kind": kind, "tangent": report}),
        text,
    ))
}

fn points(ctx: &Ctx, source: &Source) -> CliResult<Report> {
    let Loaded::Points(z, label) = source.load(ctx)? else {
        return Err(Failure::Usage("points needs --points or --file".into()));
    };
    let h = z.h_vector();
    let t = z.hilbert_function(z.stabilization_degree() + 1).values;
    let text = format!(
        "# {label}: {} points in P{}\n# h = {h:?}\n# T = {t:?}\n{}",
        z.len(),
        z.ambient_dim(),
        z.to_file_string()
    );
    Ok(Report::new(
        json!({"source": label, "dim": z.ambient_dim(), "h_vector": h, "T": t,
               "points": z.points()}),
        text,
    )
    .with_csv(z.to_file_string()))
}

fn census(ctx: &Ctx, target: CensusTarget, samples: usize) -> CliResult<Report> {
    let seed = ctx.seed("the census")?;
    let c = strata_census(target, target.strategies(), samples, ctx.field, seed)?;
    Ok(Report::new(c.to_json(), c.render()))
}

fn deform(ctx: &Ctx, family: Family, t: u64, probe: usize) -> CliResult<Report> {
    let seed = if family == Family::H2 {
        ctx.seed("the H2 family")?
    } else {
        0
    };
    let ideal = family.member(ctx.field, t, seed)?;
    let w = family.limit_witness(ctx.field, seed)?;
    let contains = ideal.contains(&w)?;
    let (table, k) = betti_table_stable(&ideal, probe)?;
    let h = ideal.hilbert_function(k).values;
    let t = ctx.field.reduce(t);
    let text = format!(
        "{family} at t = {t}\n{}\nH = {h:?}\ncontains limit form: {contains}\n{}",
        ideal.render(),
        table.render()
    );
    Ok(Report::new(
        json!({"family": family.name(), "t": t, "H": h, "contains_limit_form": contains,
               "betti": table.to_json(), "totals": table.totals()}),
        text,
    )
    .with_csv(betti_csv(&table)))
}

fn series(ctx: &Ctx, c: u64, a: Option<u64>, construct: bool) -> CliResult<Report> {
    let data = series_data(c)?;
    let mut json = serde_json::to_value(&data).expect("json");
    let mut text = format!(
        "H({c}) = {:?}\nalpha = {:.6}{}\nminimal admissible a = {}\ncomponent count = {}\n",
        data.hilbert,
        data.alpha,
        if data.alpha_integral {
            " (integral)"
        } else {
            ""
        },
        data.min_gcd_degree,
        data.component_count
    );
    for d in &data.dimensions {
        let comp = d.component.map_or("-".to_string(), |v| v.to_string());
        text.push_str(&format!(
            "  a = {}: stratum {}, component {comp}\n",
            d.a, d.stratum
        ));
    }
    let mut passed = true;
    if let Some(a) = a {
        let d = series_dimensions(c, a)?;
        json["selected"] = serde_json::to_value(d).expect("json");
        if construct {
            let seed = ctx.seed("the partition construction")?;
            let r = verify_partition_construction(c, a, ctx.field, seed)?;
            text.push_str(&format!(
                "construction (c, a) = ({c}, {a}): N = {}, parts {:?}, H = {:?}, matches {}\n",
                r.n, r.part_sizes, r.hilbert, r.matches
            ));
            passed = r.matches;
            json["construction"] = serde_json::to_value(r).expect("json");
        }
    }
    let mut rep = Report::new(json, text);
    rep.passed = passed;
    Ok(rep)
}

fn witness(ctx: &Ctx, w: Witness) -> CliResult<Report> {
    let seed = if w.is_seeded() {
        ctx.seed(&format!("witness {w}"))?
    } else {
        0
    };
    let ideal = w.ideal(ctx.field, seed)?;
    let a = ArtinianAlgebra::from_ideal(&ideal)?;
    let h = a.hilbert_values();
    let gens: Vec<String> = ideal
        .render()
        .trim_start_matches("ideal: ")
        .split(", ")
        .map(String::from)
        .collect();
    let text = format!("{w}\n{}\nH = {h:?}\n", ideal.render());
    Ok(Report::new(
        json!({"witness": w.name(), "generators": gens, "H": h}),
        text,
    ))
}

fn paper_check(ctx: &Ctx, samples: usize, slow: bool, only: Option<usize>) -> CliResult<Report> {
    let seed = ctx.seed("the acceptance checks")?;
    let mut cfg = CheckConfig::new(ctx.field, seed);
    cfg.samples = samples;
    cfg.slow = slow;
    let ids: Vec<usize> = match only {
        Some(id) if (1..=CRITERIA.len()).contains(&id) => vec![id],
        Some(id) => return Err(Failure::Usage(format!("no criterion {id}"))),
        None => (1..=CRITERIA.len()).collect(),
    };
    let mut check_ctx = CheckContext::default();
    let mut text = String::new();
    let mut outcomes = Vec::new();
    for id in ids {
        let o = run_criterion(id, &cfg, &mut check_ctx);
        text.push_str(&o.line());
        text.push('\n');
        for d in &o.details {
            text.push_str(&format!("        {d}\n"));
        }
        outcomes.push(o);
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let n_pass = outcomes.iter().filter(|o| o.passed).count();
    text.push_str(&format!("{n_pass}/{} criteria passed\n", outcomes.len()));
    let csv = std::iter::once("id,title,passed,seconds\n".to_string())
        .chain(outcomes.iter().map(|o| {
            format!(
                "{},{},{},{:.3}\n",
                o.id,
                o.title,
                o.passed,
                o.elapsed.as_secs_f64()
            )
        }))
        .collect();
    let mut rep = Report::new(json!({"passed": passed, "criteria": outcomes}), text).with_csv(csv);
    rep.passed = passed;
    Ok(rep)
}

fn run(cli: Cli) -> CliResult<Report> {
    let field = PrimeField::new(cli.global.prime)?;
    let ctx = Ctx {
        field,
        seed: cli.global.seed,
    };
    match cli.command {
        Command::Hilbert { source, max_degree } => hilbert(&ctx, &source, max_degree),
        Command::Betti { source, max_degree } => betti(&ctx, &source, max_degree),
        Command::Socle { source } => socle(&ctx, &source),
        Command::Level { source } => level(&ctx, &source),
        Command::Lefschetz { source, samples } => lefschetz(&ctx, &source, samples),
        Command::Tangent { source, max_degree } => tangent(&ctx, &source, max_degree),
        Command::Points { source } => points(&ctx, &source),
        Command::Census { target, samples } => census(&ctx, target, samples),
        Command::Deform {
            family,
            t,
            max_degree,
        } => deform(&ctx, family, t, max_degree),
        Command::Series { c, a, construct } => series(&ctx, c, a, construct),
        Command::Witness { witness: w } => witness(&ctx, w),
        Command::PaperCheck {
            samples,
            slow,
            only,
        } => paper_check(&ctx, samples, slow, only),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let format = cli.global.format;
    let out = cli.global.out.clone();
    match run(cli) {
        Ok(report) => {
            let body = report.render(format);
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(FAILURE);
                    }
                }
                None => print!("{body}"),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FAILURE)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Computation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(FAILURE)
        }
    }
}
