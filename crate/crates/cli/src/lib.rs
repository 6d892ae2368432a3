//! Command-line frontend: argument parsing, dispatch and artifact output.

pub mod config;
pub mod input;
pub mod render;
pub mod selftest;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use lambdakit::freelie::{self, PowerKind};
use lambdakit::hopf::{self, RestrictedLie, SignRule, UrPresentation};
use lambdakit::koszul::{self, ExtMethod, Koszul};
use lambdakit::lambda::{self, LambdaAlgebra};
use lambdakit::steenrod::{self, Strategy, UnstableFlavor};
use lambdakit::twisted::{tp_divmod, Side};
use lambdakit::{Error, FPModule, Flavor, Result, SteenrodAlgebra};

use config::{config_hash, ConfigFile, Format, Overrides, RunConfig};
use render::Metadata;

#[derive(Parser, Debug)]
#[command(name = "lambdakit", version, about = "Exact computations with restricted Lie algebras, Steenrod and lambda algebras")]
pub struct Cli {
    /// JSON config file with defaults for the global options.
    #[arg(long, env = "LAMBDAKIT_CONFIG", global = true)]
    pub config: Option<PathBuf>,
    /// Prime characteristic.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Degree of the coefficient field over F_p.
    #[arg(long, global = true)]
    pub ext_degree: Option<usize>,
    /// Monic modulus coefficients, constant term first.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The homogenized Steenrod algebra.
    #[command(subcommand)]
    Steenrod(SteenrodCmd),
    /// The lambda algebra.
    #[command(subcommand)]
    Lambda(LambdaCmd),
    /// Koszul complexes and Ext charts.
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Simplicial free restricted Lie algebras.
    #[command(subcommand)]
    Freelie(FreelieCmd),
    /// Modules over the twisted polynomial ring.
    #[command(subcommand)]
    Twisted(TwistedCmd),
    /// Restricted Lie algebras, enveloping algebras and bar complexes.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Run the acceptance checks and print a pass/fail table.
    Selftest {
        /// Smaller ranges.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyArg {
    Leftmost,
    Rightmost,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Leftmost => Strategy::Leftmost,
            StrategyArg::Rightmost => Strategy::Rightmost,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum SteenrodCmd {
    /// Reduce a word of generator indices to admissible form.
    Normalize {
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<u32>,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
    },
    /// Admissible monomials of internal degree t and length s.
    Basis {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        s: usize,
    },
    /// Dimensions of the free unstable algebra on a class of degree l.
    Unstable {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        max_degree: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum LambdaCmd {
    /// Reduce a word of generator codes to admissible form.
    Normalize {
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<u32>,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
    },
    /// Admissible monomials of internal degree m and length s.
    Basis {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ComplexArgs {
    /// Sphere dimension: W = Σ^l k.
    #[arg(long, conflicts_with = "w")]
    pub l: Option<u32>,
    /// Graded W as degree:multiplicity pairs, e.g. 1:1,3:2.
    #[arg(long, value_delimiter = ',')]
    pub w: Option<Vec<String>>,
    #[arg(long, default_value = "hat")]
    pub flavor: String,
    #[arg(long, default_value_t = 4)]
    pub max_s: usize,
    #[arg(long, default_value_t = 14)]
    pub max_t: u32,
}

impl ComplexArgs {
    fn graded(&self) -> Result<BTreeMap<u32, usize>> {
        match (&self.l, &self.w) {
            (Some(l), None) => Ok(koszul::sphere(*l)),
            (None, Some(pairs)) => parse_graded(pairs),
            _ => Err(Error::Invalid("give --l or --w".into())),
        }
    }

    fn flavor(&self) -> Result<Flavor> {
        self.flavor.parse()
    }

    fn params(&self) -> Result<serde_json::Value> {
        Ok(json!({
            "W": self.graded()?,
            "flavor": self.flavor()?.name(),
            "max_s": self.max_s,
            "max_t": self.max_t,
        }))
    }
}

fn parse_graded(pairs: &[String]) -> Result<BTreeMap<u32, usize>> {
    let mut w = BTreeMap::new();
    for pair in pairs {
        let (d, n) = pair.split_once(':').ok_or_else(|| Error::Invalid(format!("expected degree:multiplicity, got {pair}")))?;
        let d: u32 = d.trim().parse().map_err(|_| Error::Invalid(format!("bad degree in {pair}")))?;
        let n: usize = n.trim().parse().map_err(|_| Error::Invalid(format!("bad multiplicity in {pair}")))?;
        if d == 0 {
            return Err(Error::Invalid("W must sit in positive degrees".into()));
        }
        if n > 0 {
            *w.entry(d).or_insert(0) += n;
        }
    }
    Ok(w)
}

#[derive(Subcommand, Debug)]
pub enum ExtCmd {
    /// Ext chart from the closed form, the Koszul resolution, or both.
    Chart {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// Check d² = 0 and acyclicity of the Koszul complex.
    Verify {
        #[command(flatten)]
        complex: ComplexArgs,
    },
    /// Quadratic duality between the Steenrod side and the Koszul dual.
    Duality {
        #[arg(long, default_value_t = 12)]
        bound: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OracleMethod {
    Auto,
    Lyndon,
    Generic,
}

#[derive(Subcommand, Debug)]
pub enum FreelieCmd {
    /// π_* of the Lie power L^r_n(Γ(Σ^l k)) from the simplicial model.
    Oracle {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_stem: usize,
        #[arg(long, value_enum, default_value = "auto")]
        method: OracleMethod,
    },
    /// Homotopy chart predicted by the degenerate spectral sequence.
    Chart {
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 2)]
        max_s: usize,
        #[arg(long, default_value_t = 4)]
        max_stem: u32,
    },
    /// Curtis splitting and connectivity for V = Γ(Σ^l k).
    Curtis {
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        max_stem: usize,
    },
    /// Hilton–Milnor dimension count for V1 = Σ^{l1} k, V2 = Σ^{l2} k.
    HiltonMilnor {
        #[arg(long, default_value_t = 1)]
        l1: u32,
        #[arg(long, default_value_t = 1)]
        l2: u32,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
pub enum TwistedCmd {
    /// Euclidean division f = q g + r (left) or f = g q + r (right).
    Divide {
        /// Coefficients as JSON, ξ^0 first; each an integer or a coefficient list.
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Diagonal normal form of a presented module.
    Normal {
        #[arg(long)]
        module: PathBuf,
    },
    /// Derived ξ-adic completion at truncation n.
    Complete {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 12)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Fixture {
    Heisenberg,
    Sl2,
    Sl2Wrong,
    Truncated,
}

#[derive(Args, Debug, Clone)]
pub struct LieSource {
    /// Restricted Lie algebra as JSON.
    #[arg(long, conflicts_with = "fixture")]
    pub input: Option<PathBuf>,
    /// Built-in example over F_p.
    #[arg(long, value_enum)]
    pub fixture: Option<Fixture>,
}

impl LieSource {
    fn load(&self, cfg: &RunConfig) -> Result<RestrictedLie> {
        match (&self.input, self.fixture) {
            (Some(path), None) => input::read_json::<input::LieSpec>(path)?.build(),
            (None, Some(f)) => {
                let k = cfg.field()?;
                match f {
                    Fixture::Heisenberg => RestrictedLie::heisenberg(k),
                    Fixture::Sl2 => {
                        let h = vec![k.zero(), k.zero(), k.one()];
                        RestrictedLie::sl2(k, h)
                    }
                    Fixture::Sl2Wrong => {
                        let h = vec![k.zero(); 3];
                        RestrictedLie::sl2(k, h)
                    }
                    Fixture::Truncated => {
                        let xi = vec![vec![k.zero()]];
                        RestrictedLie::abelian(k, Some(vec![1]), xi)
                    }
                }
            }
            _ => Err(Error::Invalid("give --input or --fixture".into())),
        }
    }

    fn params(&self) -> serde_json::Value {
        json!({ "input": self.input, "fixture": self.fixture.map(|f| format!("{f:?}")) })
    }
}

#[derive(Subcommand, Debug)]
pub enum HopfCmd {
    /// Check the Lie and p-operation axioms.
    Validate {
        #[command(flatten)]
        source: LieSource,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dimensions of Sym^tr of a graded space.
    Symtr {
        /// Weights of basis vectors.
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        #[arg(long, default_value_t = 12)]
        bound: u32,
        /// Odd-weight generators exterior at odd p.
        #[arg(long)]
        koszul_signs: bool,
    },
    /// U^r dimensions by rewriting, compared with Sym^tr.
    Pbw {
        #[command(flatten)]
        source: LieSource,
        #[arg(long, default_value_t = 12)]
        bound: u32,
    },
    /// Tor over U^r from the normalized bar complex.
    Bartor {
        #[command(flatten)]
        source: LieSource,
        #[arg(long, default_value_t = 4)]
        max_s: usize,
        #[arg(long, default_value_t = 8)]
        bound: u32,
    },
    /// Bar-complex Tor of U^r(trivξ M) against the exterior algebra on M/ξM.
    Abelian {
        #[arg(long, default_value_t = 1)]
        free: usize,
        /// Orders v of torsion summands k{ξ}/ξ^v.
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        max_s: usize,
        #[arg(long, default_value_t = 10)]
        bound: u32,
    },
    /// Is a finite coalgebra truncated?
    Coalgebra {
        #[arg(long)]
        input: PathBuf,
    },
}

/// What a command produced, plus whether an invariant failed.
pub struct Outcome {
    pub text: String,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failure: None }
    }
    fn checked(text: String, passes: bool, what: &str) -> Self {
        Outcome { text, failure: (!passes).then(|| what.to_string()) }
    }
}

/// Process exit codes.
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invalid(_) => EXIT_USAGE,
        Error::Budget(_) | Error::NotStabilized(_) => EXIT_BUDGET,
        Error::Invariant(_) => EXIT_INVARIANT,
    }
}

pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let file = cli.config.as_deref().map(ConfigFile::load).transpose()?;
    let flags = Overrides {
        p: cli.p,
        ext_degree: cli.ext_degree,
        ext_modulus: cli.modulus.clone(),
        format: cli.format,
        output: cli.output.clone(),
        threads: cli.threads,
    };
    RunConfig::resolve(file.as_ref(), &flags)
}

fn json_only(cfg: &RunConfig) -> Result<()> {
    match cfg.format {
        Format::Json => Ok(()),
        f => Err(Error::Invalid(format!("{f:?} output is only available for ext chart"))),
    }
}

fn emit<T: Serialize>(cfg: &RunConfig, command: &str, params: serde_json::Value, body: &T) -> Result<String> {
    json_only(cfg)?;
    Ok(render::json(&Metadata::new(command, config_hash(cfg, command, &params)), body))
}

fn steenrod_label(p: u32, word: &[u32]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&i| {
            if p == 2 {
                format!("Sq{i}")
            } else {
                let (a, e) = steenrod::decode(p, i);
                if e == 1 {
                    format!("βP{a}")
                } else {
                    format!("P{a}")
                }
            }
        })
        .collect()
}

#[derive(Serialize)]
struct Term {
    monomial: Vec<u32>,
    label: String,
    coeff: u32,
}

#[derive(Serialize)]
struct Normalized {
    p: u32,
    word: Vec<u32>,
    entries: Vec<Term>,
}

/// Run a parsed command and render its artifact.
pub fn run(cli: &Cli, cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.p;
    match &cli.command {
        Command::Steenrod(cmd) => {
            let a = SteenrodAlgebra::new(p)?;
            match cmd {
                SteenrodCmd::Normalize { word, strategy } => {
                    let comb = a.normalize_fp(word, (*strategy).into())?;
                    let entries = comb
                        .into_iter()
                        .map(|(m, c)| Term { label: steenrod_label(p, &m), monomial: m, coeff: c })
                        .collect();
                    let body = Normalized { p, word: word.clone(), entries };
                    emit(cfg, "steenrod normalize", json!({ "word": word, "strategy": format!("{strategy:?}") }), &body).map(Outcome::ok)
                }
                SteenrodCmd::Basis { t, s } => {
                    let basis: Vec<_> = a.admissible_basis(*t, *s).into_iter().map(|w| json!({ "label": steenrod_label(p, &w), "word": w })).collect();
                    let body = json!({ "p": p, "t": t, "s": s, "dim": basis.len(), "basis": basis });
                    emit(cfg, "steenrod basis", json!({ "t": t, "s": s }), &body).map(Outcome::ok)
                }
                SteenrodCmd::Unstable { l, max_degree } => {
                    let dims = a.unstable_algebra_dims(*l, *max_degree)?;
                    let gens = a.unstable_basis(*l, UnstableFlavor::AlgebraGenerator, *max_degree)?;
                    let gens: Vec<_> = gens.iter().map(|g| json!({ "label": steenrod_label(p, &g.word), "degree": g.degree() })).collect();
                    let body = json!({ "p": p, "l": l, "dims": dims, "generators": gens });
                    emit(cfg, "steenrod unstable", json!({ "l": l, "max_degree": max_degree }), &body).map(Outcome::ok)
                }
            }
        }
        Command::Lambda(cmd) => {
            let a = LambdaAlgebra::new(p)?;
            match cmd {
                LambdaCmd::Normalize { word, strategy } => {
                    let comb = a.normalize_fp(word, (*strategy).into())?;
                    let entries = comb
                        .into_iter()
                        .map(|(m, c)| Term { label: lambda::LambdaMonomial::new(m.clone()).label(p), monomial: m, coeff: c })
                        .collect();
                    let body = Normalized { p, word: word.clone(), entries };
                    emit(cfg, "lambda normalize", json!({ "word": word, "strategy": format!("{strategy:?}") }), &body).map(Outcome::ok)
                }
                LambdaCmd::Basis { m, s } => {
                    let basis: Vec<_> = a.admissible_basis(*m, *s).into_iter().map(|y| json!({ "label": y.label(p), "codes": y.codes })).collect();
                    let body = json!({ "p": p, "m": m, "s": s, "dim": basis.len(), "basis": basis });
                    emit(cfg, "lambda basis", json!({ "m": m, "s": s }), &body).map(Outcome::ok)
                }
            }
        }
        Command::Ext(cmd) => {
            let k = Koszul::new(p)?;
            match cmd {
                ExtCmd::Chart { complex, method } => {
                    let m: ExtMethod = method.parse()?;
                    let chart = koszul::ext_chart(&k, &complex.graded()?, complex.flavor()?, complex.max_s, complex.max_t, m)?;
                    let mut params = complex.params()?;
                    params["method"] = json!(method);
                    let meta = Metadata::new("ext chart", config_hash(cfg, "ext chart", &params));
                    let text = match cfg.format {
                        Format::Json => render::json(&meta, &chart),
                        Format::Csv => render::ext_csv(&chart)?,
                        Format::Svg => render::ext_svg(&chart),
                    };
                    Ok(Outcome::ok(text))
                }
                ExtCmd::Verify { complex } => {
                    let c = koszul::KoszulComplex::build(&k, &complex.graded()?, complex.flavor()?, complex.max_s, complex.max_t)?;
                    let report = c.verify();
                    let passes = report.passes();
                    let text = emit(cfg, "ext verify", complex.params()?, &report)?;
                    Ok(Outcome::checked(text, passes, "Koszul complex check failed"))
                }
                ExtCmd::Duality { bound } => {
                    let report = k.quadratic_duality_check(*bound)?;
                    let passes = report.passes();
                    let text = emit(cfg, "ext duality", json!({ "bound": bound }), &report)?;
                    Ok(Outcome::checked(text, passes, "quadratic duality failed"))
                }
            }
        }
        Command::Freelie(cmd) => match cmd {
            FreelieCmd::Oracle { l, n, max_stem, method } => {
                let v = freelie::sphere_model(p, *l, max_stem + 1);
                let dims = match method {
                    OracleMethod::Auto => freelie::homotopy_oracle(&v, *n, *max_stem)?,
                    OracleMethod::Lyndon => freelie::homotopy_lyndon(&v, *n, *max_stem, PowerKind::Invariants)?,
                    OracleMethod::Generic => freelie::homotopy_generic(&v, *n, *max_stem)?,
                };
                let body = json!({ "p": p, "l": l, "n": n, "homotopy": dims });
                emit(cfg, "freelie oracle", json!({ "l": l, "n": n, "max_stem": max_stem, "method": format!("{method:?}") }), &body).map(Outcome::ok)
            }
            FreelieCmd::Chart { l, max_s, max_stem } => {
                let chart = freelie::homotopy_closed_form(p, *l, *max_s, *max_stem)?;
                emit(cfg, "freelie chart", json!({ "l": l, "max_s": max_s, "max_stem": max_stem }), &chart).map(Outcome::ok)
            }
            FreelieCmd::Curtis { l, n, max_stem } => {
                let v = freelie::sphere_model(p, *l, *max_stem + 1);
                let report = freelie::curtis_split_check(&v, *n, *max_stem)?;
                let passes = report.passes();
                let text = emit(cfg, "freelie curtis", json!({ "l": l, "n": n, "max_stem": max_stem }), &report)?;
                Ok(Outcome::checked(text, passes, "Curtis splitting or connectivity failed"))
            }
            FreelieCmd::HiltonMilnor { l1, l2, max_degree } => {
                let report = freelie::hilton_milnor_dims(p, &koszul::sphere(*l1), &koszul::sphere(*l2), *max_degree)?;
                let passes = report.passes();
                let text = emit(cfg, "freelie hilton-milnor", json!({ "l1": l1, "l2": l2, "max_degree": max_degree }), &report)?;
                Ok(Outcome::checked(text, passes, "Hilton-Milnor count differs"))
            }
        },
        Command::Twisted(cmd) => match cmd {
            TwistedCmd::Divide { f, g, side } => {
                let k = cfg.field()?;
                let parse = |s: &str| -> Result<_> {
                    let spec: Vec<input::ElementSpec> = serde_json::from_str(s).map_err(|e| Error::Invalid(format!("{s}: {e}")))?;
                    input::parse_poly(&k, &spec)
                };
                let (fp, gp) = (parse(f)?, parse(g)?);
                let s = match side {
                    SideArg::Left => Side::Left,
                    SideArg::Right => Side::Right,
                };
                let (q, r) = tp_divmod(&k, &fp, &gp, s)?;
                let body = json!({
                    "f": fp.format(&k), "g": gp.format(&k), "side": format!("{side:?}").to_lowercase(),
                    "q": q.format(&k), "r": r.format(&k),
                    "q_coeffs": q.to_json_coeffs(&k), "r_coeffs": r.to_json_coeffs(&k),
                });
                emit(cfg, "twisted divide", json!({ "f": f, "g": g, "side": format!("{side:?}") }), &body).map(Outcome::ok)
            }
            TwistedCmd::Normal { module } => {
                let m: FPModule = input::read_json::<input::ModuleSpec>(module)?.build()?;
                let nf = m.normal_form();
                let k = m.field();
                let body = json!({
                    "free_rank": nf.free_rank,
                    "diagonal": nf.diagonal.iter().map(|d| d.format(k)).collect::<Vec<_>>(),
                    "torsion_orders": nf.torsion_orders(),
                    "derived_complete": m.is_derived_complete(),
                });
                emit(cfg, "twisted normal", json!({ "module": module }), &body).map(Outcome::ok)
            }
            TwistedCmd::Complete { module, n } => {
                let m: FPModule = input::read_json::<input::ModuleSpec>(module)?.build()?;
                let result = m.derived_completion(*n)?;
                let passes = result.l1_is_zero();
                let text = emit(cfg, "twisted complete", json!({ "module": module, "n": n }), &result)?;
                Ok(Outcome::checked(text, passes, "L1 is nonzero for a finitely presented module"))
            }
        },
        Command::Hopf(cmd) => match cmd {
            HopfCmd::Validate { source, samples, seed } => {
                let lie = source.load(cfg)?;
                let report = lie.validate(*samples, *seed);
                let passes = report.passes();
                let witness = report.failures.first().map(|f| format!("{}: {}", f.axiom, f.witness));
                let mut params = source.params();
                params["samples"] = json!(samples);
                params["seed"] = json!(seed);
                let text = emit(cfg, "hopf validate", params, &report)?;
                Ok(Outcome { text, failure: (!passes).then(|| witness.unwrap_or_default()) })
            }
            HopfCmd::Symtr { weights, bound, koszul_signs } => {
                let mut graded = BTreeMap::new();
                for &w in weights {
                    *graded.entry(w).or_insert(0) += 1;
                }
                let rule = if *koszul_signs { SignRule::Koszul } else { SignRule::Plain };
                let dims = hopf::symtr_dims(p, &graded, *bound, rule);
                let body = json!({ "p": p, "weights": weights, "dims": dims });
                emit(cfg, "hopf symtr", json!({ "weights": weights, "bound": bound, "koszul_signs": koszul_signs }), &body).map(Outcome::ok)
            }
            HopfCmd::Pbw { source, bound } => {
                let report = hopf::pbw_check(&source.load(cfg)?, *bound)?;
                let passes = report.passes();
                let mut params = source.params();
                params["bound"] = json!(bound);
                let text = emit(cfg, "hopf pbw", params, &report)?;
                Ok(Outcome::checked(text, passes, "U^r and Sym^tr dimensions differ"))
            }
            HopfCmd::Bartor { source, max_s, bound } => {
                let u = UrPresentation::new(source.load(cfg)?, *bound)?;
                let tor = hopf::bar_tor(&u, *max_s)?;
                let mut params = source.params();
                params["max_s"] = json!(max_s);
                params["bound"] = json!(bound);
                emit(cfg, "hopf bartor", params, &json!({ "p": p, "tor": tor })).map(Outcome::ok)
            }
            HopfCmd::Abelian { free, torsion, max_s, bound } => {
                let m = FPModule::from_diagonal(cfg.field()?, *free, torsion);
                let report = hopf::abelian_homology_check(&m, *max_s, *bound)?;
                let body = json!({ "matches_exterior": report.matches_exterior(), "tor": report.tor, "exterior": report.exterior });
                emit(cfg, "hopf abelian", json!({ "free": free, "torsion": torsion, "max_s": max_s, "bound": bound }), &body).map(Outcome::ok)
            }
            HopfCmd::Coalgebra { input } => {
                let c = input::read_coalgebra(input)?;
                let truncated = hopf::truncated_coalgebra_check(&c)?;
                emit(cfg, "hopf coalgebra", json!({ "input": input }), &json!({ "truncated": truncated })).map(Outcome::ok)
            }
        },
        Command::Selftest { quick } => {
            let rows = selftest::run_all(*quick);
            let passes = rows.iter().all(|r| r.pass);
            Ok(Outcome::checked(selftest::table(&rows), passes, "selftest failed"))
        }
    }
}
