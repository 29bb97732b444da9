//! `ncfield`: JSON front end to the ncfield library.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncfield::cluster::{congruence_level_p, render_laurent, Seed};
use ncfield::codec::{self, AnyModule};
use ncfield::drinfeld::{is_isogeny_generic, is_isogeny_special, GenericModule, SpecialModule};
use ncfield::funcfield::{roots_in_extension, FFElement, FieldTower};
use ncfield::functor::{self, CertifySpec, LiftSpec, Mode, RMData};
use ncfield::lattice::{decimal_ball, detect_minpoly};
use ncfield::nctorus::{certify_real_multiplication, scaled_relations, SOmm, ThetaMatrix};
use ncfield::numeric::{Complex, Real};
use ncfield::{text, Error};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ncfield", version, about = "Drinfeld modules, cluster seeds and noncommutative tori, with JSON output")]
struct Cli {
    /// Decimal digits for numeric results.
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,
    /// Highest extension level searched for roots.
    #[arg(long = "max-level", global = true, default_value_t = 12)]
    max_level: u32,
    /// Degree bound for integer-relation detection.
    #[arg(long, global = true, default_value_t = 6)]
    deg: u32,
    /// Coefficient height bound for integer-relation detection.
    #[arg(long, global = true, default_value = "1000000")]
    height: BigInt,
    /// Exit with status 2 when a certification finds nothing.
    #[arg(long = "require-certificate", global = true)]
    require_certificate: bool,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite fields F_{q^m}.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Twisted polynomials.
    #[command(subcommand)]
    Ore(OreCmd),
    /// Drinfeld modules.
    #[command(subcommand)]
    Drinfeld(DrinfeldCmd),
    /// Cluster seeds and mutation.
    #[command(subcommand)]
    Cluster(ClusterCmd),
    /// Noncommutative tori.
    #[command(subcommand)]
    Torus(TorusCmd),
    /// Real multiplication data and generators.
    #[command(subcommand)]
    Functor(FunctorCmd),
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Describe F_{q^m}: modulus, size, generator.
    Make {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Roots of a polynomial in x with coefficients in F_{q^m}.
    Roots {
        #[arg(long)]
        q: String,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
}

#[derive(Args)]
struct OreDomain {
    #[arg(long)]
    q: String,
    /// Coefficients in F_{q^m} at this level; omitted means k = F_q(T).
    #[arg(long)]
    level: Option<u32>,
}

#[derive(Subcommand)]
enum OreCmd {
    /// Product f·g.
    Mul {
        #[command(flatten)]
        dom: OreDomain,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Additive evaluation f(x) over F_{q^m}.
    Eval {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long)]
        f: String,
        #[arg(long)]
        x: String,
    },
}

#[derive(Args, Clone)]
struct ModuleArgs {
    /// Module descriptor file.
    #[arg(long, conflicts_with_all = ["q", "rho_t"])]
    module: Option<PathBuf>,
    /// Constant field as "p^e" or "p".
    #[arg(long)]
    q: Option<String>,
    /// ρ_T as an expression in T, g and t (t = τ_p).
    #[arg(long = "rho-t")]
    rho_t: Option<String>,
    /// γ(T) in F_{q^m}; omitted means the generic carrier k.
    #[arg(long = "gamma-t")]
    gamma_t: Option<String>,
    /// Carrier level m.
    #[arg(long, default_value_t = 1)]
    level: u32,
}

#[derive(Subcommand)]
enum DrinfeldCmd {
    /// ρ_a.
    Rho {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        a: String,
    },
    /// Torsion Λ[a] over a special carrier.
    Torsion {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        a: String,
    },
    /// Frobenius matrix on Λ[a] over A/aA.
    Frobenius {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        a: String,
    },
    /// Morphism and isogeny test for f: ρ → ρ̃.
    Morphism {
        #[command(flatten)]
        m: ModuleArgs,
        /// ρ̃_T, over the same carrier.
        #[arg(long = "target-rho-t")]
        target_rho_t: String,
        #[arg(long)]
        f: String,
    },
}

#[derive(Args)]
struct SeedArgs {
    /// Seed file ({"B": ..., "vars"?: ..., "history"?: ...}).
    #[arg(long)]
    seed: PathBuf,
    /// Mutation word, 1-based directions.
    #[arg(long, value_delimiter = ',')]
    word: Vec<usize>,
}

#[derive(Subcommand)]
enum ClusterCmd {
    /// Apply a mutation word.
    Mutate {
        #[command(flatten)]
        s: SeedArgs,
    },
    /// Laurent expansions of cluster variables.
    Laurent {
        #[command(flatten)]
        s: SeedArgs,
        /// Enumerate every cluster variable within this many mutations.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Which cluster variables have every Laurent coefficient divisible by p.
    Congruence {
        #[command(flatten)]
        s: SeedArgs,
        #[arg(long)]
        p: BigInt,
    },
    /// Exchange matrix of a triangulated surface.
    Triangulate {
        #[arg(long)]
        triangulation: PathBuf,
    },
}

#[derive(Args)]
struct AlphaArgs {
    /// α_1, …, α_{m−1} as decimals.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "rm")]
    alphas: Vec<String>,
    /// Take α from an RM data file.
    #[arg(long)]
    rm: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TorusCmd {
    /// Tridiagonal Θ from α.
    Build {
        #[command(flatten)]
        al: AlphaArgs,
    },
    /// Θ′ = (AΘ + B)(CΘ + D)⁻¹.
    Act {
        #[arg(long)]
        theta: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// Membership in SO(m,m|Z), by block identities and by the quadratic form.
    Check {
        #[arg(long, conflicts_with = "random")]
        element: Option<PathBuf>,
        /// Check this many random elements instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Relation constants t·e^(2πiα_k).
    Scale {
        #[command(flatten)]
        al: AlphaArgs,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
    },
    /// Integer-relation certification of each α_k.
    RmCertify {
        #[command(flatten)]
        al: AlphaArgs,
    },
}

#[derive(Args)]
struct RmSource {
    /// Monic integer polynomial in x.
    #[arg(long, conflicts_with_all = ["rm", "a"])]
    minpoly: Option<String>,
    /// RM data file.
    #[arg(long, conflicts_with = "a")]
    rm: Option<PathBuf>,
    #[command(flatten)]
    m: ModuleArgs,
    /// a ∈ A for the Drinfeld path.
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value_t = 2)]
    t0: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Complex,
    Real,
}

#[derive(Subcommand)]
enum FunctorCmd {
    /// ρ_a(z) − z lifted to Z[z].
    Lift {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 2)]
        t0: i64,
    },
    /// RM data: companion matrix, ε and α.
    Map {
        #[command(flatten)]
        src: RmSource,
    },
    /// Generator values.
    Generators {
        #[command(flatten)]
        src: RmSource,
        #[arg(long, value_enum, default_value = "complex")]
        mode: ModeArg,
        /// Run integer-relation detection on every value.
        #[arg(long)]
        certify: bool,
    },
    /// log(ε)·e^(2πiα_k).
    TorsionImage {
        #[command(flatten)]
        src: RmSource,
    },
    /// Minimal polynomial of a decimal value.
    Detect {
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        /// Imaginary part.
        #[arg(long, allow_hyphen_values = true)]
        im: Option<String>,
    },
}

/// Failure with its exit status.
struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IncompleteTorsion | Error::PrecisionExhausted(_) => 2,
            _ => 1,
        };
        Fail { code, msg: e.to_string() }
    }
}

fn input(msg: impl Into<String>) -> Fail {
    Fail { code: 1, msg: msg.into() }
}

type Out = Result<(Value, bool), Fail>;

fn read_json(path: &PathBuf) -> Result<Value, Fail> {
    let s = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn tower(q: &str) -> Result<FieldTower, Fail> {
    Ok(FieldTower::parse(q)?)
}

fn load_module(m: &ModuleArgs) -> Result<AnyModule, Fail> {
    if let Some(path) = &m.module {
        return Ok(codec::module_from_json(&read_json(path)?)?);
    }
    let (Some(q), Some(rho)) = (&m.q, &m.rho_t) else {
        return Err(input("give --module FILE, or --q and --rho-t"));
    };
    let t = tower(q)?;
    let gamma = m.gamma_t.as_ref().map(|g| text::parse_field(&t, m.level, g)).transpose()?;
    Ok(codec::build_module(&t, gamma.as_ref(), &json!(rho))?)
}

fn special(m: &AnyModule) -> Result<&SpecialModule, Fail> {
    match m {
        AnyModule::Special(d) => Ok(d),
        AnyModule::Generic(_) => Err(input("this verb needs a special carrier (--gamma-t)")),
    }
}

fn ff_list(xs: &[FFElement]) -> Value {
    Value::Array(xs.iter().map(codec::ff_to_json).collect())
}

fn run_field(cli: &Cli, cmd: &FieldCmd) -> Out {
    match cmd {
        FieldCmd::Make { q, level } => {
            let t = tower(q)?;
            let size = t.size(*level).ok_or_else(|| input(format!("F_{{q^{level}}} is too large")))?;
            Ok((
                json!({
                    "q": t.spec_string(),
                    "level": level,
                    "size": size,
                    "modulus": t.modulus(*level),
                    "generator": codec::ff_to_json(&t.generator(*level)),
                }),
                true,
            ))
        }
        FieldCmd::Roots { q, poly, level } => {
            let t = tower(q)?;
            let f = text::parse_upoly(&t, *level, poly)?;
            let r = roots_in_extension(&f, cli.max_level.max(*level))?;
            let roots: Vec<Value> =
                r.roots.iter().map(|(x, m)| json!({"root": codec::ff_to_json(x), "multiplicity": m})).collect();
            Ok((
                json!({"roots": roots, "level": r.level, "complete": r.complete, "count": r.count_with_multiplicity()}),
                r.complete,
            ))
        }
    }
}

fn run_ore(cmd: &OreCmd) -> Out {
    match cmd {
        OreCmd::Mul { dom, f, g } => {
            let t = tower(&dom.q)?;
            let v = match dom.level {
                None => {
                    let p = text::parse_ore_k(&t, f)?.mul(&text::parse_ore_k(&t, g)?)?;
                    json!({"product": codec::ore_k_to_json(&p), "text": p.to_string()})
                }
                Some(l) => {
                    let p = text::parse_ore_field(&t, l, f)?.mul(&text::parse_ore_field(&t, l, g)?)?;
                    json!({"product": codec::ore_f_to_json(&p), "text": p.to_string()})
                }
            };
            Ok((v, true))
        }
        OreCmd::Eval { q, level, f, x } => {
            let t = tower(q)?;
            let fp = text::parse_ore_field(&t, *level, f)?;
            let xv = text::parse_field(&t, *level, x)?;
            let y = fp.eval(&xv)?;
            Ok((json!({"value": codec::ff_to_json(&y), "text": y.to_string()}), true))
        }
    }
}

fn run_drinfeld(cli: &Cli, cmd: &DrinfeldCmd) -> Out {
    match cmd {
        DrinfeldCmd::Rho { m, a } => {
            let d = load_module(m)?;
            let a = text::parse_apoly(d.tower(), a)?;
            let (rho, txt) = match &d {
                AnyModule::Generic(g) => {
                    let r = g.rho_of(&a);
                    (codec::ore_k_to_json(&r), r.to_string())
                }
                AnyModule::Special(s) => {
                    let r = s.rho_of(&a);
                    (codec::ore_f_to_json(&r), r.to_string())
                }
            };
            Ok((json!({"module": codec::module_to_json(&d), "a": a.to_string(), "rhoA": rho, "text": txt}), true))
        }
        DrinfeldCmd::Torsion { m, a } => {
            let d = load_module(m)?;
            let s = special(&d)?;
            let a = text::parse_apoly(d.tower(), a)?;
            let tm = s.torsion(&a, cli.max_level)?;
            let mut v = codec::torsion_to_json(&tm);
            v["predicted"] = match s.torsion_count_predict(&a) {
                Ok(n) => json!(n.to_string()),
                Err(_) => Value::Null,
            };
            v["free"] = json!(tm.is_free());
            let complete = tm.complete;
            Ok((v, complete))
        }
        DrinfeldCmd::Frobenius { m, a } => {
            let d = load_module(m)?;
            let s = special(&d)?;
            let a = text::parse_apoly(d.tower(), a)?;
            let tm = s.torsion(&a, cli.max_level)?;
            let f = tm.frobenius_matrix()?;
            let mut v = codec::frobenius_to_json(&f);
            v["det"] = json!(f.det().to_string());
            v["invertible"] = json!(f.is_invertible());
            v["order"] = f.order(1 << 16).map_or(Value::Null, |o| json!(o));
            Ok((v, true))
        }
        DrinfeldCmd::Morphism { m, target_rho_t, f } => {
            let d = load_module(m)?;
            let v = match &d {
                AnyModule::Generic(src) => {
                    let dst = GenericModule::new(text::parse_ore_k(d.tower(), target_rho_t)?)?;
                    let fp = text::parse_ore_k(d.tower(), f)?;
                    let morph = GenericModule::is_morphism(&fp, src, &dst)?;
                    let (iso, kernel) = is_isogeny_generic(&fp, src, &dst)?;
                    json!({
                        "is_morphism": morph,
                        "is_isogeny": iso,
                        "kernel": kernel.map(|k| json!({"poly": codec::ore_k_to_json(&k.poly), "complete": k.complete})),
                    })
                }
                AnyModule::Special(src) => {
                    let target = codec::build_module(d.tower(), Some(&src.gamma_t()), &json!(target_rho_t))?;
                    let dst = special(&target)?;
                    let fp = text::parse_ore_field(d.tower(), src.level(), f)?;
                    let morph = SpecialModule::is_morphism(&fp, src, dst)?;
                    let (iso, kernel) = is_isogeny_special(&fp, src, dst, cli.max_level)?;
                    json!({
                        "is_morphism": morph,
                        "is_isogeny": iso,
                        "kernel": kernel.map(|k| json!({
                            "poly": codec::ore_f_to_json(&k.poly),
                            "roots": k.roots.as_deref().map(ff_list),
                            "complete": k.complete,
                        })),
                    })
                }
            };
            Ok((v, true))
        }
    }
}

fn load_seed(s: &SeedArgs) -> Result<Seed, Fail> {
    let seed = codec::seed_from_json(&read_json(&s.seed)?)?;
    Ok(seed.mutate_word(&s.word)?)
}

fn run_cluster(cmd: &ClusterCmd) -> Out {
    match cmd {
        ClusterCmd::Mutate { s } => Ok((codec::seed_to_json(&load_seed(s)?), true)),
        ClusterCmd::Laurent { s, depth } => {
            let seed = load_seed(s)?;
            let vars = match depth {
                Some(k) => seed.cluster_variables(*k)?,
                None => seed.vars.clone(),
            };
            let mut all = true;
            let list: Vec<Value> = vars
                .iter()
                .map(|v| match v.laurent() {
                    Some(l) => json!({"var": v.to_string(), "laurent": render_laurent(&l), "terms": codec::laurent_to_json(&l)}),
                    None => {
                        all = false;
                        json!({"var": v.to_string(), "laurent": null})
                    }
                })
                .collect();
            Ok((json!({"count": list.len(), "variables": list, "all_laurent": all}), true))
        }
        ClusterCmd::Congruence { s, p } => {
            let seed = load_seed(s)?;
            let list = seed
                .vars
                .iter()
                .map(|v| Ok(json!({"var": v.to_string(), "divisible": congruence_level_p(v, p)?})))
                .collect::<Result<Vec<_>, Error>>()?;
            Ok((json!({"p": p.to_string(), "variables": list}), true))
        }
        ClusterCmd::Triangulate { triangulation } => {
            let spec = codec::surface_from_json(&read_json(triangulation)?)?;
            let arcs = spec.interior_arcs()?;
            let b = spec.exchange_matrix()?;
            let seed = Seed::initial(b.clone());
            Ok((json!({"interior_arcs": arcs, "B": b.rows(), "seed": codec::seed_to_json(&seed)}), true))
        }
    }
}

fn load_alphas(al: &AlphaArgs, precision: u32) -> Result<Vec<Real>, Fail> {
    if let Some(path) = &al.rm {
        let rm = codec::rm_from_json(&read_json(path)?)?;
        return Ok(rm.alphas);
    }
    if al.alphas.is_empty() {
        return Err(input("give --alphas or --rm"));
    }
    Ok(al.alphas.iter().map(|s| decimal_ball(s.trim(), precision)).collect::<Result<_, _>>()?)
}

fn run_torus(cli: &Cli, cmd: &TorusCmd) -> Out {
    match cmd {
        TorusCmd::Build { al } => {
            let alphas = load_alphas(al, cli.precision)?;
            Ok((codec::theta_to_json(&ThetaMatrix::tridiagonal(&alphas)?), true))
        }
        TorusCmd::Act { theta, element } => {
            let th = codec::theta_from_json(&read_json(theta)?)?;
            let g = codec::somm_from_json(&read_json(element)?)?;
            if !g.check() {
                return Err(input("element is not in SO(m,m|Z)"));
            }
            Ok((codec::theta_to_json(&g.act(&th, cli.precision)?), true))
        }
        TorusCmd::Check { element, random, m, seed } => {
            let elements = match (element, random) {
                (Some(path), _) => vec![codec::somm_from_json(&read_json(path)?)?],
                (None, Some(n)) => {
                    if *m < 1 {
                        return Err(input("--m must be positive"));
                    }
                    let mut rng = rand::rngs::StdRng::seed_from_u64(*seed);
                    (0..*n).map(|_| SOmm::random(*m, 6, &mut rng)).collect()
                }
                (None, None) => return Err(input("give --element or --random")),
            };
            let list: Vec<Value> = elements
                .iter()
                .map(|g| {
                    json!({
                        "element": codec::somm_to_json(g),
                        "somm_check": g.check(),
                        "quadratic_form_check": g.preserves_form(),
                    })
                })
                .collect();
            let agree = elements.iter().all(|g| g.check() == g.preserves_form());
            Ok((json!({"results": list, "agree": agree}), true))
        }
        TorusCmd::Scale { al, t } => {
            let alphas = load_alphas(al, cli.precision)?;
            let t = decimal_ball(t, cli.precision)?;
            let rc = scaled_relations(&alphas, &t, cli.precision)?;
            Ok((
                json!({
                    "t": codec::real_to_json(&rc.t),
                    "alphas": rc.alphas.iter().map(codec::real_to_json).collect::<Vec<_>>(),
                    "values": rc.values.iter().map(codec::complex_to_json).collect::<Vec<_>>(),
                }),
                true,
            ))
        }
        TorusCmd::RmCertify { al } => {
            let alphas = load_alphas(al, cli.precision)?;
            let found = certify_real_multiplication(&alphas, cli.deg, &cli.height, cli.precision)?;
            let ok = found.iter().all(Option::is_some);
            let list: Vec<Value> = found.iter().map(|p| p.as_ref().map_or(Value::Null, codec::intpoly_to_json)).collect();
            Ok((json!({"certified": list, "all_certified": ok}), ok || !cli.require_certificate))
        }
    }
}

fn load_rm(cli: &Cli, src: &RmSource) -> Result<RMData, Fail> {
    if let Some(p) = &src.minpoly {
        return Ok(functor::functor_map_poly(&text::parse_intpoly(p)?, cli.precision)?);
    }
    if let Some(path) = &src.rm {
        return Ok(codec::rm_from_json(&read_json(path)?)?);
    }
    let Some(a) = &src.a else {
        return Err(input("give --minpoly, --rm, or a module with --a"));
    };
    let d = load_module(&src.m)?;
    let spec = LiftSpec::new(text::parse_apoly(d.tower(), a)?, src.t0)?;
    Ok(match &d {
        AnyModule::Generic(g) => functor::functor_map_generic(g, &spec, cli.precision)?,
        AnyModule::Special(s) => functor::functor_map_special(s, &spec, cli.precision)?,
    })
}

fn run_functor(cli: &Cli, cmd: &FunctorCmd) -> Out {
    match cmd {
        FunctorCmd::Lift { m, a, t0 } => {
            let d = load_module(m)?;
            let spec = LiftSpec::new(text::parse_apoly(d.tower(), a)?, *t0)?;
            let p = match &d {
                AnyModule::Generic(g) => functor::lift_to_intpoly(g, &spec)?,
                AnyModule::Special(s) => functor::lift_to_intpoly(s, &spec)?,
            };
            Ok((json!({"poly": codec::intpoly_to_json(&p), "text": p.to_string()}), true))
        }
        FunctorCmd::Map { src } => Ok((codec::rm_to_json(&load_rm(cli, src)?), true)),
        FunctorCmd::Generators { src, mode, certify } => {
            let rm = load_rm(cli, src)?;
            let mode = match mode {
                ModeArg::Complex => Mode::Complex,
                ModeArg::Real => Mode::Real,
            };
            let spec = CertifySpec { degree_bound: cli.deg, height_bound: cli.height.clone() };
            let want = *certify || cli.require_certificate;
            let g = functor::generators(&rm, mode, cli.precision, want.then_some(&spec))?;
            let ok = g.certified.as_ref().is_none_or(|c| c.iter().all(Option::is_some));
            Ok((codec::generators_to_json(&g), ok || !cli.require_certificate))
        }
        FunctorCmd::TorsionImage { src } => {
            let rm = load_rm(cli, src)?;
            let vals = functor::torsion_image(&rm, cli.precision)?;
            Ok((json!({"values": vals.iter().map(codec::complex_to_json).collect::<Vec<_>>()}), true))
        }
        FunctorCmd::Detect { value, im } => {
            let re = decimal_ball(value, cli.precision)?;
            let z = match im {
                Some(s) => Complex::new(re, decimal_ball(s, cli.precision)?),
                None => Complex::real(re),
            };
            let found = detect_minpoly(&z, cli.precision, cli.deg, &cli.height)?;
            let ok = found.is_some();
            let v = match found {
                Some(d) => json!({
                    "poly": codec::intpoly_to_json(&d.poly),
                    "text": d.poly.to_string(),
                    "residual": format!("{:.3e}", d.residual.to_f64().unwrap_or(f64::INFINITY)),
                }),
                None => json!({"poly": null}),
            };
            Ok((v, ok || !cli.require_certificate))
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("NCFIELD_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        // a second initialisation only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: &Cli) -> Out {
    if cli.precision == 0 || cli.max_level == 0 || cli.deg == 0 || cli.height <= BigInt::from(0) {
        return Err(input("--precision, --max-level, --deg and --height must be positive"));
    }
    match &cli.cmd {
        Command::Field(c) => run_field(cli, c),
        Command::Ore(c) => run_ore(c),
        Command::Drinfeld(c) => run_drinfeld(cli, c),
        Command::Cluster(c) => run_cluster(c),
        Command::Torus(c) => run_torus(cli, c),
        Command::Functor(c) => run_functor(cli, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok((v, complete)) => {
            let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialise");
            s.push('\n');
            let written = match &cli.out {
                Some(path) => fs::write(path, s).map_err(|e| e.to_string()),
                None => std::io::stdout().write_all(s.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if complete {
                ExitCode::SUCCESS
            } else {
                eprintln!("incomplete: see the \"complete\" or certification fields");
                ExitCode::from(2)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
