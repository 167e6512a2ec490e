use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hlvkit::hlv::{dim_moduli, hlv_H, hlv_kernel, poincare_polynomial, springer_count, CurveData, ParabolicData};
use hlvkit::macdonald::{hall_littlewood, macdonald_htilde};
use hlvkit::partitions::Partition;
use hlvkit::seriesalg::{classify_polynomial, special_fiber_type, TSMatrix};
use hlvkit::verify::{run_suite, Suite};
use hlvkit::Error;

const EXIT_DOMAIN: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "hlvkit",
    version,
    about = "Exact Macdonald polynomials, HLV kernels and finite-field checks"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Modified Macdonald polynomial H̃_λ[X; q, t] in the monomial basis.
    Macdonald {
        #[arg(long)]
        lambda: String,
    },
    /// Hall-Littlewood polynomial H_λ[X; q] = H̃_λ[X; q, 0].
    HallLittlewood {
        #[arg(long)]
        lambda: String,
    },
    /// The kernel Ω_{g,k} through T^tmax, with σ_i symbolic.
    Kernel {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        punctures: usize,
        #[arg(long = "tmax", alias = "Tmax", default_value_t = 2)]
        tmax: usize,
    },
    /// ℍ_{g,k} = (q−1)(1−t) pLog Ω_{g,k} through T^tmax.
    Hlog {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        punctures: usize,
        #[arg(long = "tmax", alias = "Tmax", default_value_t = 2)]
        tmax: usize,
    },
    /// Poincaré polynomial in s = q^{1/2} of a generic parabolic character variety.
    Poincare {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        rank: usize,
        /// Multiplicities per puncture, e.g. "1,1;1,1;1,1".
        #[arg(long, default_value = "")]
        mults: String,
    },
    /// Springer count (H̃_λ / ∏(1 − t^l q^{−a−1}), h_μ) as a t-series.
    Springer {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long = "tmax", alias = "Tmax", default_value_t = 2)]
        tmax: usize,
    },
    /// Straighten a nilpotent matrix over F_p[[x]], e.g. "0,x;0,0 @p=2,m=4".
    Classify {
        #[arg(long)]
        matrix: String,
    },
    /// Run a verification suite against the finite-field oracles.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        max: Option<usize>,
    },
}

enum Failure {
    Domain(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn emit(json_mode: bool, text: String, value: Value) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let js = cli.json;
    match cli.cmd {
        Cmd::Macdonald { lambda } => {
            let l = Partition::parse(&lambda)?;
            let f = macdonald_htilde(&l)?;
            emit(js, f.to_text(), json!({"lambda": l.parts(), "htilde": f.to_json()}));
        }
        Cmd::HallLittlewood { lambda } => {
            let l = Partition::parse(&lambda)?;
            let f = hall_littlewood(&l)?;
            emit(
                js,
                f.to_text(),
                json!({"lambda": l.parts(), "hall_littlewood": f.to_json()}),
            );
        }
        Cmd::Kernel { genus, punctures, tmax } => {
            let s = hlv_kernel(&CurveData::symbolic(genus, punctures)?, tmax)?;
            emit(
                js,
                s.to_string(),
                json!({"genus": genus, "punctures": punctures, "tmax": tmax, "kernel": s.to_json()}),
            );
        }
        Cmd::Hlog { genus, punctures, tmax } => {
            let s = hlv_H(&CurveData::symbolic(genus, punctures)?, tmax)?;
            emit(
                js,
                s.to_string(),
                json!({"genus": genus, "punctures": punctures, "tmax": tmax, "hlog": s.to_json()}),
            );
        }
        Cmd::Poincare { genus, rank, mults } => {
            let pd = ParabolicData::parse(rank, &mults)?;
            let dim = dim_moduli(genus, &pd)?;
            let poly = poincare_polynomial(genus, &pd)?;
            emit(
                js,
                poly.to_text(),
                json!({"genus": genus, "rank": rank, "mults": pd.mults, "dim": dim, "poincare": poly.to_json(), "text": poly.to_text()}),
            );
        }
        Cmd::Springer { lambda, mu, tmax } => {
            let l = Partition::parse(&lambda)?;
            let m = Partition::parse(&mu)?;
            let c = springer_count(&l, &m, tmax)?;
            let text: Vec<String> = c
                .iter()
                .enumerate()
                .map(|(d, x)| format!("t^{d}: {}", x.to_text()))
                .collect();
            let value = json!({
                "lambda": l.parts(),
                "mu": m.parts(),
                "coefficients": c.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            });
            emit(js, text.join("\n"), value);
        }
        Cmd::Classify { matrix } => {
            let theta = TSMatrix::parse(&matrix)?;
            let c = classify_polynomial(&theta)?;
            let special = special_fiber_type(&theta)?;
            let text = format!(
                "type: {}\ndegree: {}\nspecial fibre type: {}\nnondegenerate: {}\nworking precision: {}\ng: {}",
                c.lambda.bracketed(),
                c.d,
                special.bracketed(),
                c.is_nondegenerate(),
                c.working_precision,
                c.g.to_text()
            );
            let value = json!({
                "type": c.lambda.parts(),
                "degree": c.d,
                "special_fibre_type": special.parts(),
                "nondegenerate": c.is_nondegenerate(),
                "working_precision": c.working_precision,
                "checked_precision": c.precision,
                "poles": c.poles,
                "g": c.g.to_text(),
            });
            emit(js, text, value);
        }
        Cmd::Verify { suite, p, max } => {
            let rep = run_suite(Suite::parse(&suite)?, p, max)?;
            emit(js, rep.to_string().trim_end().to_string(), rep.to_json());
            if !rep.passed() {
                return Err(Failure::Mismatch(format!("{} check(s) failed", rep.failures().count())));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("HLVKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
