use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use matcomp::cofree::hopf_transport;
use matcomp::lyndon::{cfl_factorize, is_lyndon, lyndon_transport, rewrite_in_generators};
use matcomp::text::{parse_composition, parse_monomial, parse_word};
use matcomp::{cmp_connected, limits, Alphabet, Product};
use matcomp_cli::{eval_element, eval_str, run_suite, CliError, Suite, Value};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "matcomp", version, about = "Exact computation with matrix compositions")]
struct Cli {
    /// Alphabet size d; letters are 1..=d.
    #[arg(long, global = true, env = "MATCOMP_ALPHABET", default_value_t = 4)]
    alphabet: usize,
    /// Cap on the index tuples a single enumeration may visit.
    #[arg(long, global = true, default_value_t = limits::DEFAULT_MAX_TERMS)]
    max_terms: u64,
    /// Seed for the verification suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    /// Graded lexicographic order of block words.
    Grlex,
    /// Order on connected compositions.
    Connected,
    /// Degree-lexicographic order on monomials.
    Deglex,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression, e.g. "phi([1;2])" or "[1] sh2 [2]".
    Eval { expr: String },
    /// Write an element as a polynomial in the Lyndon generators.
    Rewrite {
        #[arg(long, value_parser = parse_product)]
        product: Product,
        expr: String,
    },
    /// Carry an element from one product to another.
    Transport {
        #[arg(long, value_parser = parse_product)]
        from: Product,
        #[arg(long, value_parser = parse_product)]
        to: Product,
        /// Use the Hopf isomorphism through Log/Exp instead of the Lyndon
        /// algebra isomorphism.
        #[arg(long)]
        hopf: bool,
        expr: String,
    },
    /// Run property suites; exits 0 iff every property passes.
    Verify {
        #[arg(default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Compare two compositions (or monomials with --order deglex).
    OrderCmp {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = Order::Grlex)]
        order: Order,
    },
    /// Lyndon test and Chen-Fox-Lyndon factorization of a word such as "[2][1][2]".
    Lyndon {
        word: String,
        #[arg(long)]
        cfl: bool,
        #[arg(long)]
        check: bool,
    },
}

fn parse_product(s: &str) -> Result<Product, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

enum Output {
    Done { text: String, json: serde_json::Value },
    Verdict { text: String, json: serde_json::Value, ok: bool },
}

fn to_json(x: &impl Serialize) -> serde_json::Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let d = Alphabet::new(cli.alphabet)?;
    let value = |v: Value| Output::Done {
        text: v.to_string(),
        json: to_json(&v.report()),
    };
    Ok(match &cli.command {
        Command::Eval { expr } => value(eval_str(expr, d)?),
        Command::Rewrite { product, expr } => {
            let poly = rewrite_in_generators(*product, &eval_element(expr, d)?)?;
            let terms: Vec<_> = poly
                .sorted_terms()
                .into_iter()
                .map(|(g, k)| {
                    let factors: Vec<String> = g.factors().iter().map(ToString::to_string).collect();
                    json!({ "coefficient": k.to_string(), "generators": factors })
                })
                .collect();
            Output::Done {
                text: poly.to_string(),
                json: json!({ "product": product.token(), "text": poly.to_string(), "terms": terms }),
            }
        }
        Command::Transport { from, to, hopf, expr } => {
            let x = eval_element(expr, d)?;
            let y = if *hopf { hopf_transport(*from, *to, &x)? } else { lyndon_transport(*from, *to, &x)? };
            value(Value::Element(y))
        }
        Command::Verify { suite, max_degree, samples } => {
            let report = run_suite(*suite, d, *max_degree, *samples, cli.seed);
            Output::Verdict {
                text: report.to_string(),
                json: to_json(&report),
                ok: report.all_passed(),
            }
        }
        Command::OrderCmp { left, right, order } => {
            let ord = match order {
                Order::Deglex => parse_monomial(left, d)?.cmp_deglex(&parse_monomial(right, d)?)?,
                Order::Grlex => parse_composition(left, d)?.cmp(&parse_composition(right, d)?),
                Order::Connected => cmp_connected(&parse_composition(left, d)?, &parse_composition(right, d)?)?,
            };
            let symbol = match ord {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            let name = order.to_possible_value().expect("no skipped variants").get_name().to_string();
            Output::Done {
                text: format!("{} {symbol} {}", left.trim(), right.trim()),
                json: json!({ "order": name, "left": left.trim(), "right": right.trim(), "result": symbol }),
            }
        }
        Command::Lyndon { word, cfl, check } => {
            let w = parse_word(word, d)?;
            let both = !cfl && !check;
            let mut lines = Vec::new();
            let mut out = json!({ "word": w.to_string() });
            if *check || both {
                lines.push(format!("lyndon: {}", if is_lyndon(&w) { "yes" } else { "no" }));
                out["lyndon"] = json!(is_lyndon(&w));
            }
            if *cfl || both {
                let factors: Vec<String> = cfl_factorize(&w)?.iter().map(ToString::to_string).collect();
                lines.push(format!("cfl: {}", factors.join(" | ")));
                out["cfl"] = json!(factors);
            }
            Output::Done {
                text: lines.join("\n"),
                json: out,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    limits::set_max_terms(cli.max_terms);
    let (text, json, ok) = match run(&cli) {
        Ok(Output::Done { text, json }) => (text, json, true),
        Ok(Output::Verdict { text, json, ok }) => (text, json, ok),
        Err(e) => {
            if cli.format == Format::Json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("valid json")),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
