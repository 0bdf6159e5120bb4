use std::fmt::Write as _;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nilclose::automata::{self, RationalExpression, WordAutomaton};
use nilclose::closures::{self, Closures, PrimeSet};
use nilclose::monoids::{self, Certificate, FiniteMonoid};
use nilclose::oracle::{self, Catalog};
use nilclose::stallings::{Subgroup, SubgroupIndex};
use nilclose::{Alphabet, Error, Limits};

#[derive(Parser)]
#[command(name = "nilclose", version, about = "Closures of rational subsets of free groups in pro-p, pro-nilpotent and profinite topologies")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Cap on automaton states in determinizations and products.
    #[arg(long, global = true)]
    max_states: Option<usize>,

    /// Cap on the size of an overgroup lattice.
    #[arg(long, global = true)]
    max_overgroups: Option<usize>,

    /// Catalog file of nilpotent groups (JSON) used by `pseudonorm`.
    #[arg(long, global = true)]
    catalog: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Stallings graph, basis, rank and index of a subgroup.
    Stallings {
        #[arg(long)]
        alphabet: String,
        /// Comma-separated generators, e.g. "aa,b".
        generators: String,
    },
    /// All overgroups (quotients of the Stallings graph).
    Overgroups {
        #[arg(long)]
        alphabet: String,
        generators: String,
    },
    /// Primes p for which the subgroup is closed in the pro-p topology.
    PrimesClosed {
        #[arg(long)]
        alphabet: String,
        generators: String,
    },
    /// Closure of a subgroup in the pro-p topology.
    Pclosure {
        #[arg(short = 'p', long = "prime")]
        prime: u64,
        #[arg(long)]
        alphabet: String,
        generators: String,
    },
    /// Closures in the pro-nilpotent topology.
    Nilclosure {
        #[command(subcommand)]
        target: NilTarget,
    },
    /// Closures in other topologies.
    Closure {
        #[command(subcommand)]
        target: ClosureTarget,
    },
    /// Catalog-bounded pseudonorm of a word.
    Pseudonorm {
        #[arg(long)]
        alphabet: String,
        word: String,
        /// Largest group order in the generated catalog (ignored with --catalog).
        #[arg(long, default_value_t = 16)]
        max_order: usize,
    },
    /// Finite monoid algorithms.
    Monoid {
        #[command(subcommand)]
        action: MonoidAction,
    },
    /// Nilpotent group catalogs.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum NilTarget {
    /// Pro-nilpotent closure of a finitely generated subgroup.
    Subgroup {
        #[arg(long)]
        alphabet: String,
        generators: String,
    },
    /// Pro-nilpotent closure of a product; factors are separated by ";".
    Product {
        #[arg(long)]
        alphabet: String,
        #[arg(required = true, allow_hyphen_values = true)]
        factors: Vec<String>,
    },
    /// Pro-nilpotent closure of a rational subset.
    Rational {
        #[arg(long)]
        alphabet: Option<String>,
        /// Rational expression, e.g. "(aa|b)*|(a|bbb)*".
        expression: Option<String>,
        /// Read an automaton (JSON) instead of an expression; "-" for stdin.
        #[arg(long, conflicts_with = "expression")]
        automaton: Option<String>,
    },
}

#[derive(Subcommand)]
enum ClosureTarget {
    /// Profinite closure of a rational subset, as a normal form.
    Profinite {
        #[arg(long)]
        alphabet: String,
        expression: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    JStarGnil,
    JMalcevGnil,
}

#[derive(Subcommand)]
enum MonoidAction {
    /// Green's J-classes, regular elements and block-group status.
    Analyze {
        /// Monoid JSON file, "-" for stdin.
        file: String,
        #[arg(long, value_enum)]
        check: Option<Check>,
    },
    /// The G_nil-kernel.
    Kernel {
        file: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Writes the catalog of nilpotent groups up to an order.
    Generate {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
    },
}

enum CliError {
    Usage(String),
    Cap(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => CliError::Cap(e.to_string()),
            Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_input(path: &str) -> CliResult<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn raw(s: &str) -> Value {
    serde_json::from_str(s).expect("library emits valid json")
}

struct Ctx {
    format: Format,
    limits: Limits,
    catalog: Option<String>,
}

impl Ctx {
    fn engine(&self) -> Closures {
        Closures::new(self.limits)
    }

    fn no_dot(&self, what: &str) -> CliResult<()> {
        if self.format == Format::Dot {
            return Err(CliError::Usage(format!("--format dot is not available for {what}")));
        }
        Ok(())
    }

    fn subgroup(&self, alphabet: &str, generators: &str) -> CliResult<Subgroup> {
        let a = Alphabet::parse(alphabet)?;
        Ok(Subgroup::parse(&a, generators)?)
    }

    fn subgroup_text(h: &Subgroup) -> String {
        let a = h.alphabet();
        let gens: Vec<String> = h.basis().iter().map(|b| a.display(b.letters())).collect();
        format!("<{}>", gens.join(","))
    }

    fn subgroup_json(h: &Subgroup) -> Value {
        let a = h.alphabet();
        let basis: Vec<String> = h.basis().iter().map(|b| a.display(b.letters())).collect();
        json!({ "basis": basis, "graph": raw(&h.to_json()) })
    }

    fn language(&self, a: &WordAutomaton, label: &str) -> CliResult<String> {
        Ok(match self.format {
            Format::Dot => a.to_dot(),
            Format::Json => {
                let universal = automata::is_universal(a, &self.limits)?;
                pretty(&json!({
                    "result": label,
                    "empty": automata::is_empty(a),
                    "universal": universal,
                    "automaton": raw(&a.to_json()),
                }))
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "{label}");
                let _ = writeln!(out, "states: {}", a.num_states());
                let _ = writeln!(out, "empty: {}", automata::is_empty(a));
                let _ = writeln!(out, "universal: {}", automata::is_universal(a, &self.limits)?);
                let sample: Vec<String> =
                    a.words_up_to(3).iter().take(12).map(|w| a.alphabet().display(w.letters())).collect();
                let _ = writeln!(out, "words of length <= 3: {}", sample.join(" "));
                out
            }
        })
    }

    fn primes(&self, p: &PrimeSet) -> String {
        match self.format {
            Format::Json => pretty(&json!(p)),
            _ => format!("{p}\n"),
        }
    }
}

/// Splits positional arguments into factors at ";" tokens; adjacent
/// arguments within one factor are joined as extra generators.
fn split_factors(args: &[String]) -> Vec<String> {
    let mut factors = vec![String::new()];
    for arg in args {
        for (i, piece) in arg.split(';').enumerate() {
            if i > 0 {
                factors.push(String::new());
            }
            let cur = factors.last_mut().expect("nonempty");
            if !piece.trim().is_empty() {
                if !cur.is_empty() {
                    cur.push(',');
                }
                cur.push_str(piece.trim());
            }
        }
    }
    factors
}

fn run(cli: Cli) -> CliResult<String> {
    let mut limits = Limits::default();
    if let Some(n) = cli.max_states {
        limits.max_states = n;
    }
    if let Some(n) = cli.max_overgroups {
        limits.max_overgroups = n;
    }
    let ctx = Ctx { format: cli.format, limits, catalog: cli.catalog };
    match cli.command {
        Command::Stallings { alphabet, generators } => {
            let h = ctx.subgroup(&alphabet, &generators)?;
            let report = h.report(&ctx.limits)?;
            let index = match report.index {
                SubgroupIndex::Finite(n) => json!(n),
                SubgroupIndex::Infinite => json!("infinite"),
            };
            Ok(match ctx.format {
                Format::Dot => h.to_dot(),
                Format::Json => {
                    let mut v = Ctx::subgroup_json(&h);
                    v["rank"] = json!(report.rank);
                    v["index"] = index;
                    pretty(&v)
                }
                Format::Text => {
                    let a = h.alphabet();
                    let mut out = String::new();
                    let _ = writeln!(out, "vertices: {}", h.num_vertices());
                    for (p, l, q) in h.graph().positive_edges() {
                        let _ = writeln!(out, "  {p} -{}-> {q}", a.letter_char(l));
                    }
                    let basis: Vec<String> = report.basis.iter().map(|b| a.display(b.letters())).collect();
                    let _ = writeln!(out, "basis: {}", basis.join(", "));
                    let _ = writeln!(out, "rank: {}", report.rank);
                    let _ = writeln!(out, "index: {}", index.to_string().trim_matches('"'));
                    out
                }
            })
        }
        Command::Overgroups { alphabet, generators } => {
            ctx.no_dot("overgroups")?;
            let h = ctx.subgroup(&alphabet, &generators)?;
            let all = h.overgroups(&ctx.limits)?;
            Ok(match ctx.format {
                Format::Json => pretty(&Value::Array(all.iter().map(Ctx::subgroup_json).collect())),
                _ => {
                    let mut out = format!("{} overgroups\n", all.len());
                    for s in &all {
                        let _ = writeln!(out, "{}", Ctx::subgroup_text(s));
                    }
                    out
                }
            })
        }
        Command::PrimesClosed { alphabet, generators } => {
            ctx.no_dot("primes-closed")?;
            let h = ctx.subgroup(&alphabet, &generators)?;
            Ok(ctx.primes(&ctx.engine().primes_closed(&h)?))
        }
        Command::Pclosure { prime, alphabet, generators } => {
            let h = ctx.subgroup(&alphabet, &generators)?;
            let c = ctx.engine().p_closure(&h, prime)?;
            Ok(match ctx.format {
                Format::Dot => c.to_dot(),
                Format::Json => pretty(&Ctx::subgroup_json(&c)),
                Format::Text => format!("{}\n", Ctx::subgroup_text(&c)),
            })
        }
        Command::Nilclosure { target } => match target {
            NilTarget::Subgroup { alphabet, generators } => {
                let h = ctx.subgroup(&alphabet, &generators)?;
                let c = ctx.engine().nil_closure_subgroup(&h)?;
                Ok(match ctx.format {
                    Format::Dot => c.to_dot(),
                    Format::Json => pretty(&Ctx::subgroup_json(&c)),
                    Format::Text => format!("{}\nclosed: {}\n", Ctx::subgroup_text(&c), c == h),
                })
            }
            NilTarget::Product { alphabet, factors } => {
                let a = Alphabet::parse(&alphabet)?;
                let hs = split_factors(&factors)
                    .iter()
                    .map(|f| Subgroup::parse(&a, f))
                    .collect::<Result<Vec<_>, _>>()?;
                let c = ctx.engine().nil_closure_product(&hs)?;
                ctx.language(&c, "nil-closure of the product")
            }
            NilTarget::Rational { alphabet, expression, automaton } => {
                let engine = ctx.engine();
                let c = match (automaton, expression) {
                    (Some(path), _) => engine.nil_closure_automaton(&WordAutomaton::from_json(&read_input(&path)?)?)?,
                    (None, Some(e)) => {
                        let alphabet =
                            alphabet.ok_or_else(|| CliError::Usage("--alphabet is required with an expression".into()))?;
                        let a = Alphabet::parse(&alphabet)?;
                        engine.nil_closure_rational(&RationalExpression::parse(&e, &a)?, &a)?
                    }
                    (None, None) => return Err(CliError::Usage("give an expression or --automaton".into())),
                };
                ctx.language(&c, "nil-closure of the rational subset")
            }
        },
        Command::Closure { target: ClosureTarget::Profinite { alphabet, expression } } => {
            let a = Alphabet::parse(&alphabet)?;
            let nf = closures::pro_g_closure(&RationalExpression::parse(&expression, &a)?, &a)?;
            Ok(match ctx.format {
                Format::Json => pretty(&raw(&nf.to_json())),
                Format::Dot => closures::nf_to_automaton(&nf, &ctx.limits)?.to_dot(),
                Format::Text => format!("{}\n", nf.display()),
            })
        }
        Command::Pseudonorm { alphabet, word, max_order } => {
            ctx.no_dot("pseudonorm")?;
            let a = Alphabet::parse(&alphabet)?;
            let g = a.parse_reduced(&word)?;
            let catalog = match &ctx.catalog {
                Some(path) => Catalog::from_json(&read_input(path)?)?,
                None => oracle::nilpotent_catalog(max_order),
            };
            let n = closures::pseudonorm(&a, &g, &catalog, &ctx.limits)?;
            let witness = n.witness.as_ref().map(|(gi, phi)| {
                let group = &catalog.groups[*gi];
                let images: serde_json::Map<String, Value> = a
                    .names()
                    .iter()
                    .zip(&phi.images)
                    .map(|(c, &x)| (c.to_string(), json!(group.table().name(x))))
                    .collect();
                (group.name().to_string(), images)
            });
            Ok(match ctx.format {
                Format::Json => pretty(&json!({
                    "norm": n.norm.to_string(),
                    "value": n.norm.value(),
                    "witness": witness.map(|(g, images)| json!({ "group": g, "images": images })),
                })),
                _ => {
                    let mut out = format!("{}\n", n.norm);
                    if let Some((g, images)) = witness {
                        let assignment: Vec<String> =
                            images.iter().map(|(k, v)| format!("{k}->{}", v.as_str().unwrap_or_default())).collect();
                        let _ = writeln!(out, "witness: {g} with {}", assignment.join(", "));
                    }
                    out
                }
            })
        }
        Command::Monoid { action } => {
            ctx.no_dot("monoid")?;
            match action {
                MonoidAction::Analyze { file, check } => monoid_analyze(&ctx, &file, check),
                MonoidAction::Kernel { file } => {
                    let m = FiniteMonoid::from_json(&read_input(&file)?)?;
                    let k = monoids::gnil_kernel(&ctx.engine(), &m)?;
                    let names: Vec<String> = k.iter().map(|x| m.name(x)).collect();
                    Ok(match ctx.format {
                        Format::Json => pretty(&json!({ "kernel": names, "indices": k.to_vec() })),
                        _ => format!("{{{}}}\n", names.join(", ")),
                    })
                }
            }
        }
        Command::Catalog { action: CatalogAction::Generate { max_order } } => {
            if max_order == 0 {
                return Err(CliError::Usage("--max-order must be at least 1".into()));
            }
            Ok(oracle::nilpotent_catalog(max_order).to_json() + "\n")
        }
    }
}

fn monoid_analyze(ctx: &Ctx, file: &str, check: Option<Check>) -> CliResult<String> {
    let m = FiniteMonoid::from_json(&read_input(file)?)?;
    let r = monoids::analyze_structure(&m);
    let names = |xs: &[usize]| xs.iter().map(|&x| m.name(x)).collect::<Vec<_>>();
    let mut v = json!({
        "size": m.size(),
        "j_classes": r.j_classes.iter().map(|c| names(c)).collect::<Vec<_>>(),
        "is_j_trivial": r.is_j_trivial,
        "regulars": names(&r.regulars.to_vec()),
        "is_block_group": r.is_block_group,
        "is_group": r.is_group,
        "is_nilpotent_group": r.is_nilpotent_group,
    });
    let mut text = String::new();
    let _ = writeln!(text, "size: {}", m.size());
    let classes: Vec<String> = r.j_classes.iter().map(|c| format!("{{{}}}", names(c).join(", "))).collect();
    let _ = writeln!(text, "J-classes: {}", classes.join(" "));
    let _ = writeln!(text, "J-trivial: {}", r.is_j_trivial);
    let _ = writeln!(text, "regular: {{{}}}", names(&r.regulars.to_vec()).join(", "));
    let _ = writeln!(text, "block group: {}", r.is_block_group);
    let _ = writeln!(text, "group: {}", r.is_group);
    let _ = writeln!(text, "nilpotent group: {}", r.is_nilpotent_group);
    let engine = ctx.engine();
    match check {
        None => {}
        Some(Check::JStarGnil) => {
            let rep = monoids::in_j_star_gnil(&engine, &m)?;
            let (cert_json, cert_text) = match &rep.certificate {
                Certificate::None => (Value::Null, String::new()),
                Certificate::NotBlockGroup { element, inverses } => (
                    json!({ "not_block_group": m.name(*element), "inverses": names(inverses) }),
                    format!("not a block group: {} has inverses {}", m.name(*element), names(inverses).join(", ")),
                ),
                Certificate::FailingPair { alpha, beta } => (
                    json!({ "alpha": m.name(*alpha), "beta": m.name(*beta) }),
                    format!("pointlike pair (alpha, beta) = ({}, {}) violates aa'bb' = ab'", m.name(*alpha), m.name(*beta)),
                ),
            };
            v["j_star_gnil"] = json!({ "member": rep.member, "certificate": cert_json });
            let _ = writeln!(text, "J*Gnil: {}", rep.member);
            if !cert_text.is_empty() {
                let _ = writeln!(text, "certificate: {cert_text}");
            }
        }
        Some(Check::JMalcevGnil) => {
            let member = monoids::in_j_malcev_gnil(&engine, &m)?;
            v["j_malcev_gnil"] = json!(member);
            let _ = writeln!(text, "J m Gnil: {member}");
        }
    }
    Ok(match ctx.format {
        Format::Json => pretty(&v),
        _ => text,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_split_on_semicolons() {
        let s = |v: &[&str]| split_factors(&v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        assert_eq!(s(&["aa,b", ";", "a,bbb"]), vec!["aa,b", "a,bbb"]);
        assert_eq!(s(&["aa,b;a,bbb"]), vec!["aa,b", "a,bbb"]);
        assert_eq!(s(&["aa", "b", ";", "a"]), vec!["aa,b", "a"]);
    }
}
