use std::path::Path;
use std::process::ExitCode;

use wavegrow::commands::{
    cmd_dichotomy, cmd_fit, cmd_lemma_check, cmd_pipeline, cmd_simulate, cmd_stability,
    cmd_verify_identity, resolve_out_dir, CmdError, LemmaArgs,
};
use wavegrow::config::load_config;

const USAGE: &str = "\
wavegrow <subcommand> [options]

subcommands:
  simulate         march the solver, stream the norm series to CSV
  dichotomy        linear vs nonlinear growth over an (amplitude, omega) sweep
  pipeline         X2 recurrence-envelope pipeline at fixed window boundaries
  stability        continuous dependence under shrinking perturbations
  fit              growth-model fit of a column in an existing series CSV
  lemma-check      certified polynomial envelope for recurrence parameters
  verify-identity  energy-balance residuals at dt and dt/2

options:
  --config <path>  run configuration file (all subcommands except lemma-check)
  --out <dir>      output run directory (overrides output.dir)
  --seed <n>       override the config seed
  --gamma <x> --c <x> --y <x> --alpha0 <x> --n-max <n>
                   lemma-check parameters

exit codes: 0 ok, 2 configuration error, 3 numerical failure, 4 io error";

struct Args {
    subcommand: String,
    config: Option<String>,
    out: Option<String>,
    seed: Option<u64>,
    gamma: Option<f64>,
    c: Option<f64>,
    y: Option<f64>,
    alpha0: Option<f64>,
    n_max: usize,
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    if argv.is_empty() {
        return Err("missing subcommand".into());
    }
    let mut args = Args {
        subcommand: argv[0].clone(),
        config: None,
        out: None,
        seed: None,
        gamma: None,
        c: None,
        y: None,
        alpha0: None,
        n_max: 10_000,
    };
    let mut i = 1;
    while i < argv.len() {
        let flag = argv[i].as_str();
        let value = argv
            .get(i + 1)
            .ok_or_else(|| format!("{flag} needs a value"))?;
        match flag {
            "--config" => args.config = Some(value.clone()),
            "--out" => args.out = Some(value.clone()),
            "--seed" => {
                args.seed = Some(value.parse().map_err(|_| format!("bad --seed `{value}`"))?)
            }
            "--gamma" => {
                args.gamma = Some(
                    value
                        .parse()
                        .map_err(|_| format!("bad --gamma `{value}`"))?,
                )
            }
            "--c" => args.c = Some(value.parse().map_err(|_| format!("bad --c `{value}`"))?),
            "--y" => args.y = Some(value.parse().map_err(|_| format!("bad --y `{value}`"))?),
            "--alpha0" => {
                args.alpha0 = Some(
                    value
                        .parse()
                        .map_err(|_| format!("bad --alpha0 `{value}`"))?,
                )
            }
            "--n-max" => {
                args.n_max = value
                    .parse()
                    .map_err(|_| format!("bad --n-max `{value}`"))?
            }
            _ => return Err(format!("unknown option `{flag}`")),
        }
        i += 2;
    }
    Ok(args)
}

fn run(args: &Args) -> Result<(), CmdError> {
    if args.subcommand == "lemma-check" {
        let gamma = args.gamma.ok_or_else(|| usage_err("--gamma is required"))?;
        let c = args.c.ok_or_else(|| usage_err("--c is required"))?;
        return cmd_lemma_check(&LemmaArgs {
            gamma,
            c,
            y: args.y.unwrap_or(0.0),
            alpha0: args.alpha0.unwrap_or(0.0),
            n_max: args.n_max,
        });
    }

    let config_path = args
        .config
        .as_ref()
        .ok_or_else(|| usage_err("--config is required"))?;
    let mut cfg = match load_config(Path::new(config_path)) {
        Ok(Ok(cfg)) => cfg,
        Ok(Err(errors)) => return Err(CmdError::Config(errors)),
        Err(e) => return Err(CmdError::Io(format!("{config_path}: {e}"))),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let out = resolve_out_dir(&cfg, args.out.as_deref());

    match args.subcommand.as_str() {
        "simulate" => cmd_simulate(&cfg, &out, None),
        "dichotomy" => cmd_dichotomy(&cfg, &out),
        "pipeline" => cmd_pipeline(&cfg, &out),
        "stability" => cmd_stability(&cfg, &out),
        "fit" => cmd_fit(&cfg, &out),
        "verify-identity" => cmd_verify_identity(&cfg, &out),
        other => Err(usage_err(&format!("unknown subcommand `{other}`"))),
    }
}

fn usage_err(msg: &str) -> CmdError {
    CmdError::Config(vec![wavegrow::config::ConfigError {
        path: "(usage)".into(),
        message: msg.into(),
    }])
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let args = match parse_args(&argv) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}\n\n{USAGE}");
            return ExitCode::from(2);
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            e.print();
            ExitCode::from(e.exit_code())
        }
    }
}
