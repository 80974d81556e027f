//! `hassett`: evaluate divisor classes, apply morphisms and run the identity
//! checks from the command line.
//!
//! Exit status: 0 on success, 1 if a verification failed, 2 on usage, parse
//! or domain errors.

mod json;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hassett_core::class::normal_form;
use hassett_core::expr::parse_class;
use hassett_core::generator::enumerate_generators;
use hassett_core::grid::{GridConfig, DEFAULT_SEED, SEED_ENV};
use hassett_core::lcm::{delta_class, delta_pushforward};
use hassett_core::morphisms::{
    CoincidentBoundaryMap, ForgetfulMap, IrreducibleBoundaryMap, NodalBoundaryMap, ReductionMap,
};
use hassett_core::rational::{parse_rational, parse_rational_list};
use hassett_core::suite::{self, Identity};
use hassett_core::{consistency, lcm};
use hassett_core::{make_space, Error, Marks, ModuliSpace, RelationSet, VerificationReport};

use json::{ClassJson, PairJson, ReportJson, SpaceJson, Summary};

#[derive(Parser)]
#[command(
    name = "hassett",
    version,
    about = "Exact divisor class calculus on moduli of weighted pointed stable curves"
)]
struct Cli {
    /// Emit a versioned JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpaceArgs {
    /// Genus
    #[arg(long)]
    g: u32,
    /// Comma-separated weights, e.g. 1/2,1/2,1 (empty for none)
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    weights: String,
}

impl SpaceArgs {
    fn space(&self) -> Result<ModuliSpace, Error> {
        make_space(self.g, parse_rational_list(&self.weights)?)
    }
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Genera of the grid, comma-separated
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
    genera: Vec<u32>,
    /// Numbers of markings, comma-separated
    #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1, 2, 3, 4, 5])]
    sizes: Vec<usize>,
    /// Weight samples per (g, n)
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Reduction maps per (g, n) for round-trip checks
    #[arg(long, default_value_t = 50)]
    maps: usize,
    /// Reduction chains per (g, n) for functoriality checks
    #[arg(long, default_value_t = 30)]
    chains: usize,
    /// Sampler seed
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl GridArgs {
    fn config(&self) -> GridConfig {
        GridConfig {
            genera: self.genera.clone(),
            sizes: self.sizes.clone(),
            samples: self.samples,
            maps: self.maps,
            chains: self.chains,
            seed: self.seed,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum MapKind {
    /// Push-forward along a reduction M(g, from) -> M(g, to)
    ReducePush,
    /// Pull-back along a reduction M(g, from) -> M(g, to)
    ReducePull,
    /// Pull-back along the map forgetting an appended marking of weight --new-weight
    ForgetPull,
    /// Restriction to the nodal divisor --stratum
    Eta,
    /// Restriction to the irreducible boundary
    Xi,
    /// Restriction to the locus where the markings of --subset coincide
    Chi,
}

#[derive(Subcommand)]
enum Command {
    /// List the generators of a space
    Generators(SpaceArgs),
    /// Parse a class and print its normal form
    Eval {
        #[command(flatten)]
        space: SpaceArgs,
        /// Class expression, e.g. "kappa - 12*lambda + Dnod"
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Extra relation imposed on top of Mumford's (repeatable)
        #[arg(long, allow_hyphen_values = true)]
        relation: Vec<String>,
    },
    /// Apply a morphism to a class
    Map {
        kind: MapKind,
        /// Genus
        #[arg(long)]
        g: u32,
        /// Ambient weights (eta, xi, chi, and the target of forget-pull)
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Source weights of a reduction
        #[arg(long)]
        from: Option<String>,
        /// Target weights of a reduction
        #[arg(long)]
        to: Option<String>,
        /// Weight of the marking added by forget-pull
        #[arg(long)]
        new_weight: Option<String>,
        /// Nodal stratum "j;{i,...}" for eta
        #[arg(long)]
        stratum: Option<String>,
        /// Subset "{i,...}" for chi
        #[arg(long)]
        subset: Option<String>,
        /// Class expression on the space the morphism pulls back from or pushes out of
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Delta_A on M(g, (1,...,1)) and its push-forward to M(g, A)
    Delta(SpaceArgs),
    /// Check a named identity (or all) on one space or over the grid
    Verify {
        /// Identity name or "all"
        identity: String,
        /// Genus of a single space to check; the grid is used when omitted
        #[arg(long)]
        g: Option<u32>,
        /// Weights of the single space, e.g. 1/2,1/2,1
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Nodal stratum "j;{i,...}" (nodal)
        #[arg(long)]
        stratum: Option<String>,
        /// Subset "{i,...}" (coincident)
        #[arg(long)]
        subset: Option<String>,
        /// tau (step1)
        #[arg(long)]
        tau: Option<String>,
        /// Source weights (round-trip, functoriality)
        #[arg(long)]
        from: Option<String>,
        /// Middle weights (functoriality)
        #[arg(long)]
        via: Option<String>,
        /// Target weights (round-trip, functoriality)
        #[arg(long)]
        to: Option<String>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// List the spaces of a seeded grid
    Grid(GridArgs),
}

/// A failed command: usage/domain errors exit 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(msg.into())
}

fn parse_subset(text: &str, n: usize) -> Result<Marks, Error> {
    let body = text.trim().trim_start_matches('{').trim_end_matches('}');
    let ix = if body.trim().is_empty() {
        Vec::new()
    } else {
        body.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    Marks::from_indices(&ix, n)
}

fn parse_stratum(text: &str, n: usize) -> Result<(u32, Marks), Error> {
    let (j, marks) = text.split_once(';').ok_or_else(|| {
        Error::Parse(format!(
            "stratum must look like \"j;{{i,...}}\", got {text:?}"
        ))
    })?;
    let j = j
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad genus {j:?} in stratum {text:?}")))?;
    Ok((j, parse_subset(marks, n)?))
}

fn require<'a>(value: &'a Option<String>, flag: &str, what: &str) -> Result<&'a str, Failure> {
    value
        .as_deref()
        .ok_or_else(|| usage(format!("{what} needs --{flag}")))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Generators(args) => generators(&args.space()?, cli.json),
        Command::Eval {
            space,
            class,
            relation,
        } => eval(&space.space()?, &class, &relation, cli.json),
        Command::Map {
            kind,
            g,
            weights,
            from,
            to,
            new_weight,
            stratum,
            subset,
            class,
        } => {
            let opts = MapOpts {
                g,
                weights,
                from,
                to,
                new_weight,
                stratum,
                subset,
                class,
            };
            map(kind, &opts, cli.json)
        }
        Command::Delta(args) => delta(&args.space()?, cli.json),
        Command::Verify {
            identity,
            g,
            weights,
            stratum,
            subset,
            tau,
            from,
            via,
            to,
            grid,
        } => {
            let opts = VerifyOpts {
                g,
                weights,
                stratum,
                subset,
                tau,
                from,
                via,
                to,
            };
            verify(&identity, &opts, &grid, cli.json)
        }
        Command::Grid(args) => grid(&args, cli.json),
    }
}

fn generators(space: &ModuliSpace, as_json: bool) -> Outcome {
    let gens: Vec<String> = enumerate_generators(space)
        .iter()
        .map(|g| g.to_string())
        .collect();
    if as_json {
        #[derive(Serialize)]
        struct Body {
            space: SpaceJson,
            generators: Vec<String>,
        }
        json::print(
            "generators",
            Body {
                space: space.into(),
                generators: gens,
            },
        );
    } else {
        println!("{space}: {} generators", gens.len());
        for g in gens {
            println!("  {g}");
        }
    }
    Ok(true)
}

fn eval(space: &ModuliSpace, text: &str, relations: &[String], as_json: bool) -> Outcome {
    let class = parse_class(space, text)?;
    let nf = if relations.is_empty() {
        normal_form(&class)
    } else {
        let mut set = RelationSet::new(space);
        for r in relations {
            set.insert(&parse_class(space, r)?)?;
        }
        set.normal_form(&class)?
    };
    if as_json {
        #[derive(Serialize)]
        struct Body {
            input: ClassJson,
            normal_form: ClassJson,
        }
        json::print(
            "eval",
            Body {
                input: (&class).into(),
                normal_form: (&nf).into(),
            },
        );
    } else {
        println!("{space}");
        println!("  input:       {class}");
        println!("  normal form: {nf}");
    }
    Ok(true)
}

struct MapOpts {
    g: u32,
    weights: Option<String>,
    from: Option<String>,
    to: Option<String>,
    new_weight: Option<String>,
    stratum: Option<String>,
    subset: Option<String>,
    class: String,
}

enum MapOutput {
    Single(hassett_core::DivisorClass),
    Pair(hassett_core::morphisms::PairClass),
}

fn map(kind: MapKind, o: &MapOpts, as_json: bool) -> Outcome {
    let weighted = |flag: &Option<String>, name: &str| -> Result<ModuliSpace, Failure> {
        let w = require(flag, name, "this morphism")?;
        Ok(make_space(o.g, parse_rational_list(w)?)?)
    };
    let (name, input, output) = match kind {
        MapKind::ReducePush | MapKind::ReducePull => {
            let f = ReductionMap::new(&weighted(&o.from, "from")?, &weighted(&o.to, "to")?)?;
            if matches!(kind, MapKind::ReducePush) {
                let c = parse_class(f.source(), &o.class)?;
                let out = f.pushforward(&c)?;
                ("reduce-push", c, MapOutput::Single(out))
            } else {
                let c = parse_class(f.target(), &o.class)?;
                let out = f.pullback(&c)?;
                ("reduce-pull", c, MapOutput::Single(out))
            }
        }
        MapKind::ForgetPull => {
            let target = weighted(&o.weights, "weights")?;
            let a_p = parse_rational(require(&o.new_weight, "new-weight", "forget-pull")?)?;
            let f = ForgetfulMap::adding(&target, a_p)?;
            let c = parse_class(f.target(), &o.class)?;
            let out = f.pullback(&c)?;
            ("forget-pull", c, MapOutput::Single(out))
        }
        MapKind::Eta => {
            let s = weighted(&o.weights, "weights")?;
            let (j, marks) = parse_stratum(require(&o.stratum, "stratum", "eta")?, s.n())?;
            let eta = NodalBoundaryMap::new(&s, j, marks)?;
            let c = parse_class(&s, &o.class)?;
            let out = eta.pullback(&c)?;
            ("eta", c, MapOutput::Pair(out))
        }
        MapKind::Xi => {
            let s = weighted(&o.weights, "weights")?;
            let xi = IrreducibleBoundaryMap::new(&s)?;
            let c = parse_class(&s, &o.class)?;
            let out = xi.pullback(&c)?;
            ("xi", c, MapOutput::Single(out))
        }
        MapKind::Chi => {
            let s = weighted(&o.weights, "weights")?;
            let marks = parse_subset(require(&o.subset, "subset", "chi")?, s.n())?;
            let chi = CoincidentBoundaryMap::new(&s, marks)?;
            let c = parse_class(&s, &o.class)?;
            let out = chi.pullback(&c)?;
            ("chi", c, MapOutput::Single(out))
        }
    };
    if as_json {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Out {
            Single(ClassJson),
            Pair(PairJson),
        }
        #[derive(Serialize)]
        struct Body {
            map: &'static str,
            input: ClassJson,
            output: Out,
        }
        let output = match &output {
            MapOutput::Single(c) => Out::Single(c.into()),
            MapOutput::Pair(p) => Out::Pair(p.into()),
        };
        json::print(
            "map",
            Body {
                map: name,
                input: (&input).into(),
                output,
            },
        );
    } else {
        println!("{name}: {input}  on {}", input.space());
        match output {
            MapOutput::Single(c) => println!("  -> {c}  on {}", c.space()),
            MapOutput::Pair(p) => {
                println!("  -> pi1^*: {}  on {}", p.left, p.left.space());
                println!("     pi2^*: {}  on {}", p.right, p.right.space());
            }
        }
    }
    Ok(true)
}

fn delta(space: &ModuliSpace, as_json: bool) -> Outcome {
    let d = delta_class(space);
    let push = delta_pushforward(space);
    if as_json {
        #[derive(Serialize)]
        struct Body {
            space: SpaceJson,
            delta: ClassJson,
            pushforward: ClassJson,
        }
        json::print(
            "delta",
            Body {
                space: space.into(),
                delta: (&d).into(),
                pushforward: (&push).into(),
            },
        );
    } else {
        println!("{space}");
        println!("  Delta on {}: {d}", d.space());
        println!("  push-forward:  {push}");
    }
    Ok(true)
}

struct VerifyOpts {
    g: Option<u32>,
    weights: Option<String>,
    stratum: Option<String>,
    subset: Option<String>,
    tau: Option<String>,
    from: Option<String>,
    via: Option<String>,
    to: Option<String>,
}

fn verify_single(id: Identity, o: &VerifyOpts) -> Result<Vec<VerificationReport>, Failure> {
    let g = o.g.expect("single-space mode");
    let space_of =
        |w: &str| -> Result<ModuliSpace, Failure> { Ok(make_space(g, parse_rational_list(w)?)?) };
    match id {
        Identity::RoundTrip => {
            let a = space_of(require(&o.from, "from", "round-trip")?)?;
            let b = space_of(require(&o.to, "to", "round-trip")?)?;
            return Ok(vec![consistency::verify_round_trip(&a, &b)?]);
        }
        Identity::Functoriality => {
            let a = space_of(require(&o.from, "from", "functoriality")?)?;
            let b = space_of(require(&o.via, "via", "functoriality")?)?;
            let c = space_of(require(&o.to, "to", "functoriality")?)?;
            return Ok(vec![consistency::verify_functoriality(&a, &b, &c)?]);
        }
        _ => {}
    }
    let space = space_of(o.weights.as_deref().unwrap_or(""))?;
    Ok(match id {
        Identity::Nodal if o.stratum.is_some() => {
            let (j, m) = parse_stratum(o.stratum.as_deref().unwrap(), space.n())?;
            vec![lcm::verify_nodal_restriction(&space, j, m)?]
        }
        Identity::Coincident if o.subset.is_some() => {
            let m = parse_subset(o.subset.as_deref().unwrap(), space.n())?;
            vec![lcm::verify_coincident_restriction(&space, m)?]
        }
        Identity::Step1 if o.tau.is_some() => {
            let tau = parse_rational(o.tau.as_deref().unwrap())?;
            vec![lcm::verify_step1(&space, &tau)?]
        }
        Identity::Irr => vec![lcm::verify_irr_restriction(&space)?],
        _ => suite::verify_space(id, &space)?,
    })
}

fn verify(name: &str, o: &VerifyOpts, grid_args: &GridArgs, as_json: bool) -> Outcome {
    let ids: Vec<Identity> = if name == "all" {
        Identity::ALL.to_vec()
    } else {
        vec![name.parse()?]
    };
    let single = o.g.is_some();
    if !single
        && (o.weights.is_some() || o.stratum.is_some() || o.subset.is_some() || o.tau.is_some())
    {
        return Err(usage("--weights, --stratum, --subset and --tau need --g"));
    }
    let cfg = grid_args.config();
    let mut reports = Vec::new();
    for id in ids {
        if single {
            if name == "all" && !id.is_per_space() {
                continue;
            }
            reports.extend(verify_single(id, o)?);
        } else {
            reports.extend(suite::verify_grid(id, &cfg)?);
        }
    }
    let ok = reports.iter().all(|r| r.passed);
    if as_json {
        #[derive(Serialize)]
        struct Body {
            #[serde(skip_serializing_if = "Option::is_none")]
            seed: Option<u64>,
            passed: bool,
            summary: Summary,
            reports: Vec<ReportJson>,
        }
        json::print(
            "verify",
            Body {
                seed: (!single).then_some(cfg.seed),
                passed: ok,
                summary: Summary::of(&reports),
                reports: reports.iter().map(ReportJson::from).collect(),
            },
        );
    } else {
        let summary = Summary::of(&reports);
        for r in reports.iter().filter(|r| !r.passed || single) {
            println!("{r}");
        }
        println!(
            "{} of {} checks passed{}",
            summary.passed,
            summary.total,
            if single {
                String::new()
            } else {
                format!(" (seed {})", cfg.seed)
            }
        );
    }
    Ok(ok)
}

fn grid(args: &GridArgs, as_json: bool) -> Outcome {
    let cfg = args.config();
    let spaces = cfg.spaces();
    if as_json {
        #[derive(Serialize)]
        struct Body {
            seed: u64,
            spaces: Vec<SpaceJson>,
        }
        json::print(
            "grid",
            Body {
                seed: cfg.seed,
                spaces: spaces.iter().map(SpaceJson::from).collect(),
            },
        );
    } else {
        for s in &spaces {
            println!("{s}");
        }
        println!("{} spaces (seed {})", spaces.len(), cfg.seed);
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
