use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use oplab::approx::check_approximation;
use oplab::duality::Duality;
use oplab::enriched::{is_enriched_functor, EnrichedCategory, EnrichedFunctor};
use oplab::json::{self, LoadError, RawGraph};
use oplab::labels::LabelSet;
use oplab::module::{ModuleLattice, Side};
use oplab::operad::{check_operad_axioms, OperadTag};
use oplab::pairing::{check_pairing, pairing};
use oplab::presheaf::{pushforward, Presheaf, PresheafSpace};
use oplab::report::{Check, SuiteReport};
use oplab::suites;
use serde_json::{json, Value};

mod report;

use report::{emit, Format, Report};

#[derive(Parser)]
#[command(name = "oplab", version, about = "Labeled-graph operads and enriched presheaf checks")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Zero the timing field so identical runs print identical bytes.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Graph,
    Morphism,
    Simplex,
    Quantale,
    Module,
    Category,
    Presheaf,
    Copresheaf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tag {
    Assoc,
    AssocPointed,
    Lm,
    Rm,
}

impl From<Tag> for OperadTag {
    fn from(t: Tag) -> Self {
        match t {
            Tag::Assoc => OperadTag::AssocS,
            Tag::AssocPointed => OperadTag::AssocSPointed,
            Tag::Lm => OperadTag::LMS,
            Tag::Rm => OperadTag::RMS,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the validator for one artifact file.
    Validate { kind: Kind, path: PathBuf },
    /// Check the operad axioms on all graphs up to a size.
    CheckOperad {
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        #[arg(long, default_value_t = 2)]
        max_edges: usize,
        #[arg(long, value_enum, default_value_t = Tag::Assoc)]
        tag: Tag,
    },
    /// Check that Cut and LCut are strong approximations.
    CheckApproximation {
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// Pair two graph files, or sweep the path identities.
    Pairing {
        #[arg(long, requires = "right")]
        left: Option<PathBuf>,
        #[arg(long, requires = "left")]
        right: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "a,b")]
        labels: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "c,d")]
        other: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        max_edges: usize,
    },
    /// free_presheaf(x,m) ≤ F ⟺ m ≤ F(x), for one presheaf or all of them.
    Yoneda {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        presheaf: Option<PathBuf>,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Decompose presheaves as joins of free presheaves.
    Density {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        presheaf: Option<PathBuf>,
    },
    /// Check the module-map / copresheaf bijection.
    Duality {
        #[arg(long)]
        category: PathBuf,
        /// A right module file; defaults to the base acting on itself.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Join and meet the given presheaves, or sweep all families.
    Colimit {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        presheaf: Vec<PathBuf>,
    },
    /// Push a presheaf along an enriched functor, or sweep all of them.
    Pushforward {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        presheaf: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SpaceArgs {
    #[arg(long)]
    category: Option<PathBuf>,
    /// A left module file; defaults to the base acting on itself.
    #[arg(long)]
    module: Option<PathBuf>,
}

enum Failure {
    Load(LoadError),
    Core(oplab::Error),
    Usage(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Load(e)
    }
}

impl From<oplab::Error> for Failure {
    fn from(e: oplab::Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Load(e) => write!(f, "{e}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(e) => write!(f, "{e}"),
        }
    }
}

struct Outcome {
    report: SuiteReport,
    result: Option<Value>,
}

impl From<SuiteReport> for Outcome {
    fn from(report: SuiteReport) -> Self {
        Outcome { report, result: None }
    }
}

type Run = Result<Outcome, Failure>;

fn labels(names: &[String]) -> Result<LabelSet, Failure> {
    Ok(LabelSet::unpointed(names.iter().map(|s| s.trim().to_string()))?)
}

fn module_or_self(path: Option<&Path>, c: &EnrichedCategory, side: Side) -> Result<ModuleLattice, Failure> {
    match path {
        Some(p) => Ok(json::load_module(p)?),
        None => Ok(ModuleLattice::regular(c.base().clone(), side)),
    }
}

fn space(args: &SpaceArgs, presheaf: Option<&Path>) -> Result<(PresheafSpace, Option<Presheaf>), Failure> {
    if let Some(p) = presheaf {
        let (space, f) = json::load_presheaf(p)?;
        if args.category.is_some() || args.module.is_some() {
            return Err(Failure::Usage("--presheaf brings its own category and module".into()));
        }
        return Ok((space, Some(f)));
    }
    let Some(c) = &args.category else {
        return Err(Failure::Usage("give --category or --presheaf".into()));
    };
    let c = json::load_category(c)?;
    let m = module_or_self(args.module.as_deref(), &c, Side::Left)?;
    Ok((PresheafSpace::new(c, m)?, None))
}

fn values(space: &PresheafSpace, f: &Presheaf) -> Value {
    json!(json::presheaf_values(space, f))
}

fn validate(kind: Kind, path: &Path) -> Run {
    let name = kind.to_possible_value().unwrap().get_name().to_string();
    Ok(json::validate_file(&name, path)?.into())
}

fn run_pairing(left: &Path, right: &Path) -> Run {
    let pointed = |path: &Path| -> Result<_, Failure> {
        let g = json::read::<RawGraph>(path)?.to_graph()?;
        Ok(g.with_labels(g.labels().with_pointed(true))?)
    };
    let g = pairing(&pointed(left)?, &pointed(right)?)?;
    let mut report = SuiteReport::new();
    report.push(Check::pass("left modular", 1));
    report.push(Check::pass("right modular", 1));
    Ok(Outcome {
        report,
        result: Some(serde_json::to_value(RawGraph::from_graph(&g)).unwrap()),
    })
}

fn yoneda(args: &SpaceArgs, presheaf: Option<&Path>, exhaustive: bool) -> Run {
    let (space, f) = space(args, presheaf)?;
    match (f, exhaustive) {
        (None, false) => Err(Failure::Usage("give --presheaf or --exhaustive".into())),
        (Some(_), true) => Err(Failure::Usage("--exhaustive sweeps every presheaf; drop --presheaf".into())),
        (None, true) => Ok(suites::yoneda_suite(&space)?.into()),
        (Some(f), false) => {
            let c = space.category();
            let m = space.module();
            let mut fails = None;
            let mut cases = 0;
            for x in 0..c.len() {
                for v in m.elements() {
                    cases += 1;
                    if !space.yoneda_check(x, v, &f)?.holds() && fails.is_none() {
                        fails = Some(format!("X={}, m={}", c.object_name(x), m.name(v)));
                    }
                }
            }
            let mut report = SuiteReport::new();
            report.push(Check::from_witness("Yoneda biconditional", cases, fails));
            Ok(report.into())
        }
    }
}

fn density(args: &SpaceArgs, presheaf: Option<&Path>) -> Run {
    let (space, f) = space(args, presheaf)?;
    let Some(f) = f else {
        return Ok(suites::density_suite(&space)?.into());
    };
    let d = space.density_decompose(&f);
    let mut report = SuiteReport::new();
    report.push(Check::from_witness(
        "density",
        1,
        (!d.holds).then(|| space.describe(&f)),
    ));
    let c = space.category();
    let components: serde_json::Map<String, Value> = (0..c.len())
        .map(|x| (c.object_name(x).to_string(), values(&space, &d.components[x])))
        .collect();
    Ok(Outcome {
        report,
        result: Some(json!({ "components": components, "join": values(&space, &d.join) })),
    })
}

fn duality(category: &Path, target: Option<&Path>) -> Run {
    let c = json::load_category(category)?;
    let n = module_or_self(target, &c, Side::Right)?;
    let d = Duality::new(c, n)?;
    let report = d.check_bijection()?;
    let maps = d.enumerate_module_maps().len();
    Ok(Outcome {
        report,
        result: Some(json!({ "module_maps": maps, "presheaves": d.lattice().len() })),
    })
}

fn colimit(args: &SpaceArgs, presheaves: &[PathBuf]) -> Run {
    if presheaves.is_empty() {
        let (space, _) = space(args, None)?;
        return Ok(suites::colimit_suite(&space)?.into());
    }
    if args.category.is_some() || args.module.is_some() {
        return Err(Failure::Usage("--presheaf brings its own category and module".into()));
    }
    let mut loaded = Vec::new();
    for p in presheaves {
        loaded.push(json::load_presheaf(p)?);
    }
    let space = loaded[0].0.clone();
    if loaded.iter().any(|(s, _)| *s != space) {
        return Err(Failure::Usage("presheaves live over different categories or modules".into()));
    }
    let fs: Vec<&Presheaf> = loaded.iter().map(|(_, f)| f).collect();
    let join = space.join_presheaves(fs.iter().copied());
    let meet = space.meet_presheaves(fs.iter().copied());
    let mut report = SuiteReport::new();
    for (name, g) in [("join validates", &join), ("meet validates", &meet)] {
        let r = space.validate_presheaf(g.values());
        report.push(Check::from_witness(name, 1, r.first_failure().and_then(|c| c.witness.clone())));
    }
    Ok(Outcome {
        report,
        result: Some(json!({ "join": values(&space, &join), "meet": values(&space, &meet) })),
    })
}

fn run_pushforward(source: &Path, target: &Path, module: Option<&Path>, presheaf: Option<&Path>) -> Run {
    let phi = EnrichedFunctor {
        source: json::load_category(source)?,
        target: json::load_category(target)?,
    };
    let functor = is_enriched_functor(&phi)?;
    if !functor.passed() {
        return Ok(functor.into());
    }
    let m = module_or_self(module, &phi.source, Side::Left)?;
    let Some(p) = presheaf else {
        let mut report = functor;
        report.extend(suites::functoriality_suite(&phi, &m)?);
        return Ok(report.into());
    };
    let (space, f) = json::load_presheaf(p)?;
    if *space.category() != phi.source || *space.module() != m {
        return Err(Failure::Usage("the presheaf does not live over --source and --module".into()));
    }
    let g = pushforward(&phi, &m, &f)?;
    let target = PresheafSpace::new(phi.target.clone(), m)?;
    let mut report = functor;
    report.push(Check::pass("pushforward validates", 1));
    Ok(Outcome {
        report,
        result: Some(values(&target, &g)),
    })
}

fn dispatch(command: &Command) -> Run {
    match command {
        Command::Validate { kind, path } => validate(*kind, path),
        Command::CheckOperad { labels: l, max_edges, tag } => {
            Ok(check_operad_axioms((*tag).into(), &labels(l)?, *max_edges).into())
        }
        Command::CheckApproximation { labels: l, max_dim } => Ok(check_approximation(&labels(l)?, *max_dim)?.into()),
        Command::Pairing {
            left: Some(left),
            right: Some(right),
            ..
        } => run_pairing(left, right),
        Command::Pairing {
            labels: l,
            other,
            max_len,
            max_edges,
            ..
        } => Ok(check_pairing(&labels(l)?, &labels(other)?, *max_len, *max_edges).into()),
        Command::Yoneda {
            space,
            presheaf,
            exhaustive,
        } => yoneda(space, presheaf.as_deref(), *exhaustive),
        Command::Density { space, presheaf } => density(space, presheaf.as_deref()),
        Command::Duality { category, target } => duality(category, target.as_deref()),
        Command::Colimit { space, presheaf } => colimit(space, presheaf),
        Command::Pushforward {
            source,
            target,
            module,
            presheaf,
        } => run_pushforward(source, target, module.as_deref(), presheaf.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = dispatch(&cli.command);
    let timing_ms = if cli.deterministic {
        0
    } else {
        start.elapsed().as_millis() as u64
    };
    let report = match outcome {
        Ok(o) => Report::finished(o.report, o.result, timing_ms),
        Err(e) => Report::error(e.to_string(), timing_ms),
    };
    print!("{}", emit(&report, cli.format));
    ExitCode::from(report.exit_code())
}
